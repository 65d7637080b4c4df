//! Root data for the dual groups and exact evaluation of irreducible
//! characters via the Weyl character formula.
//!
//! Weights of the similitude spin groups `GSpin_{2n}(C)` live on an
//! extended lattice with basis `eps_0, eps_1, ..., eps_n` so that half-spin
//! weights are integral vectors: the fundamental weights lift as
//! `w_i = eps_1 + ... + eps_i` for `i <= n-2`,
//! `w_{n-1} = eps_0 + eps_1 + ... + eps_{n-1}` and
//! `w_n = eps_0 + eps_1 + ... + eps_n`. The Weyl group acts integrally on
//! this lattice, so every character value is a Laurent monomial
//! combination of the stored generator values.

use crate::exactring::{rat, rat_int, rat_pow, ExactScalar, Rat};
use num::{One, Signed, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::{BTreeMap, BTreeSet};

#[derive(Debug, thiserror::Error)]
pub enum CharError {
    #[error("group mismatch: weight for {0:?}, point for {1:?}")]
    GroupMismatch(GroupType, GroupType),
    #[error("singular point (vanishing Weyl denominator); regenerate the point or use the multiplicity path")]
    SingularPoint,
    #[error("constraint system unsatisfiable: {0}")]
    Unsatisfiable(String),
}

/// Dual-side group types (plus `Sp` for similitude-one evaluations).
#[derive(Clone, Copy, PartialEq, Eq, Debug, serde::Serialize)]
pub enum GroupType {
    /// `GL_n(C)`
    Gl(usize),
    /// `Sp_{2n}(C)`, parameter is `n`
    Sp(usize),
    /// `GSp_{2n}(C)`, parameter is `n`
    GSp(usize),
    /// `Spin_{2n}(C)` (trivial similitude), parameter is `n >= 3`
    SpinD(usize),
    /// `GSpin_{2n}(C)`, parameter is `n >= 3`
    GSpinD(usize),
}

impl GroupType {
    pub fn rank(&self) -> usize {
        match *self {
            GroupType::Gl(n) | GroupType::Sp(n) | GroupType::GSp(n) => n,
            GroupType::SpinD(n) | GroupType::GSpinD(n) => n,
        }
    }

    fn is_d_type(&self) -> bool {
        matches!(self, GroupType::SpinD(_) | GroupType::GSpinD(_))
    }
}

/// Dominant weight of a dual group.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HighestWeight {
    pub group: GroupType,
    /// Partition coordinates for `Gl`/`Sp`/`GSp` (weakly decreasing; `Gl`
    /// may carry negative trailing entries). For D types these are the
    /// extended lattice coordinates `(c_1, ..., c_n)`.
    pub coords: Vec<i64>,
    /// `GSp`: the similitude exponent `k_0`. D types: the `eps_0`
    /// coordinate `c_0`. Unused (zero) for `Gl`/`Sp`.
    pub twist: i64,
}

impl HighestWeight {
    pub fn gl(n: usize, coords: Vec<i64>) -> Self {
        assert_eq!(coords.len(), n);
        assert!(coords.windows(2).all(|w| w[0] >= w[1]), "not dominant");
        HighestWeight {
            group: GroupType::Gl(n),
            coords,
            twist: 0,
        }
    }

    pub fn sp(n: usize, coords: Vec<i64>) -> Self {
        assert_eq!(coords.len(), n);
        assert!(
            coords.windows(2).all(|w| w[0] >= w[1]) && *coords.last().unwrap() >= 0,
            "not a partition"
        );
        HighestWeight {
            group: GroupType::Sp(n),
            coords,
            twist: 0,
        }
    }

    pub fn gsp(n: usize, coords: Vec<i64>, k0: i64) -> Self {
        let mut w = Self::sp(n, coords);
        w.group = GroupType::GSp(n);
        w.twist = k0;
        w
    }

    /// D-type weight from fundamental-weight coefficients
    /// `(k_1, ..., k_n)`.
    pub fn spin_from_fundamental(group: GroupType, k: &[i64]) -> Self {
        let n = group.rank();
        assert!(group.is_d_type() && k.len() == n && k.iter().all(|&v| v >= 0));
        let mut c = vec![0i64; n];
        let mut c0 = 0i64;
        for (i, &ki) in k.iter().enumerate() {
            let idx = i + 1; // fundamental weight w_idx
            if idx <= n - 2 {
                for cj in c.iter_mut().take(idx) {
                    *cj += ki;
                }
            } else if idx == n - 1 {
                c0 += ki;
                for cj in c.iter_mut().take(n - 1) {
                    *cj += ki;
                }
            } else {
                c0 += ki;
                for cj in c.iter_mut() {
                    *cj += ki;
                }
            }
        }
        HighestWeight {
            group,
            coords: c,
            twist: c0,
        }
    }

    /// D-type weight directly from extended lattice coordinates.
    pub fn spin_from_lattice(group: GroupType, c0: i64, c: Vec<i64>) -> Self {
        assert!(group.is_d_type() && c.len() == group.rank());
        let w = HighestWeight {
            group,
            coords: c,
            twist: c0,
        };
        assert!(w.is_dominant(), "lattice weight is not dominant");
        w
    }

    /// Pairings with the simple coroots.
    pub fn is_dominant(&self) -> bool {
        let n = self.group.rank();
        match self.group {
            GroupType::Gl(_) => self.coords.windows(2).all(|w| w[0] >= w[1]),
            GroupType::Sp(_) | GroupType::GSp(_) => {
                self.coords.windows(2).all(|w| w[0] >= w[1]) && self.coords[n - 1] >= 0
            }
            GroupType::SpinD(_) | GroupType::GSpinD(_) => {
                let c = &self.coords;
                let c0 = self.twist;
                let chain = c.windows(2).all(|w| w[0] >= w[1]);
                chain && c[n - 2] + c[n - 1] - c0 >= 0
            }
        }
    }

    pub fn coord_sum(&self) -> i64 {
        self.coords.iter().sum()
    }

    /// Fundamental-weight coefficients of a D-type weight.
    pub fn fundamental_coeffs(&self) -> Vec<i64> {
        let n = self.group.rank();
        assert!(self.group.is_d_type());
        let c = &self.coords;
        let c0 = self.twist;
        let mut k = vec![0i64; n];
        for i in 0..n - 1 {
            k[i] = c[i] - c[i + 1];
        }
        k[n - 1] = c[n - 2] + c[n - 1] - c0;
        k
    }
}

/// Exact rational torus point of a dual group. Eigenvalue data is stored
/// on a fixed lattice basis so all character values are exact rationals.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum SatakePoint {
    Gl {
        alphas: Vec<Rat>,
    },
    /// Similitude-one symplectic point: eigenvalues `z_i, z_i^{-1}`.
    Sp {
        z: Vec<Rat>,
    },
    /// `sigma^2` is the similitude; eigenvalues are `z_i, sigma^2/z_i`.
    GSp {
        sigma: Rat,
        z: Vec<Rat>,
    },
    /// Values on the extended D lattice generators `eps_0; eps_1..eps_n`.
    SpinD {
        g0: Rat,
        g: Vec<Rat>,
    },
}

impl SatakePoint {
    pub fn group(&self, group: GroupType) -> bool {
        let n = group.rank();
        match (self, group) {
            (SatakePoint::Gl { alphas }, GroupType::Gl(_)) => alphas.len() == n,
            (SatakePoint::Sp { z }, GroupType::Sp(_)) => z.len() == n,
            (SatakePoint::GSp { z, .. }, GroupType::GSp(_) | GroupType::Sp(_)) => z.len() == n,
            (SatakePoint::SpinD { g, .. }, GroupType::SpinD(_) | GroupType::GSpinD(_)) => {
                g.len() == n
            }
            _ => false,
        }
    }

    /// Central character value at the uniformizer: `prod alpha_i` for
    /// `GL_n`, the similitude `sigma^2` for `GSp`, and
    /// `g0^2 * prod g_i` for D types.
    pub fn central_value(&self) -> Rat {
        match self {
            SatakePoint::Gl { alphas } => alphas.iter().product(),
            SatakePoint::Sp { .. } => Rat::one(),
            SatakePoint::GSp { sigma, .. } => sigma * sigma,
            SatakePoint::SpinD { g0, g } => {
                let p: Rat = g.iter().product();
                g0 * g0 * p
            }
        }
    }

    pub fn similitude(&self) -> Rat {
        match self {
            SatakePoint::GSp { sigma, .. } => sigma * sigma,
            _ => self.central_value(),
        }
    }
}

fn det(mut m: Vec<Vec<Rat>>) -> Rat {
    let n = m.len();
    let mut sign = Rat::one();
    let mut detv = Rat::one();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !m[r][col].is_zero());
        let pr = match pivot {
            Some(p) => p,
            None => return Rat::zero(),
        };
        if pr != col {
            m.swap(pr, col);
            sign = -sign;
        }
        let pv = m[col][col].clone();
        detv *= &pv;
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let f = &m[r][col] / &pv;
            for c in col..n {
                let sub = &f * &m[col][c];
                m[r][c] -= sub;
            }
        }
    }
    detv * sign
}

fn gl_char_ratio(lambda: &[i64], alphas: &[Rat]) -> Option<Rat> {
    let n = alphas.len();
    let num: Vec<Vec<Rat>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| rat_pow(&alphas[i], lambda[j] + (n - 1 - j) as i64))
                .collect()
        })
        .collect();
    let den: Vec<Vec<Rat>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| rat_pow(&alphas[i], (n - 1 - j) as i64))
                .collect()
        })
        .collect();
    let d = det(den);
    if d.is_zero() {
        return None;
    }
    Some(det(num) / d)
}

fn sp_char_ratio(lambda: &[i64], z: &[Rat]) -> Option<Rat> {
    let n = z.len();
    let ell = |j: usize| lambda[j] + (n - j) as i64;
    let m = |j: usize| (n - j) as i64;
    let num: Vec<Vec<Rat>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| rat_pow(&z[i], ell(j)) - rat_pow(&z[i], -ell(j)))
                .collect()
        })
        .collect();
    let den: Vec<Vec<Rat>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| rat_pow(&z[i], m(j)) - rat_pow(&z[i], -m(j)))
                .collect()
        })
        .collect();
    let d = det(den);
    if d.is_zero() {
        return None;
    }
    Some(det(num) / d)
}

/// Signed permutations with an even number of sign flips, i.e. `W(D_n)`,
/// acting on the extended lattice coordinates.
struct WeylD {
    perms: Vec<(Vec<usize>, bool)>, // permutation with its sign
}

impl WeylD {
    fn new(n: usize) -> Self {
        let mut perms = Vec::new();
        let mut idx: Vec<usize> = (0..n).collect();
        permute_collect(&mut idx, 0, &mut perms);
        WeylD { perms }
    }
}

fn permute_collect(idx: &mut Vec<usize>, k: usize, out: &mut Vec<(Vec<usize>, bool)>) {
    let n = idx.len();
    if k == n {
        let sign = perm_sign(idx);
        out.push((idx.clone(), sign));
        return;
    }
    for i in k..n {
        idx.swap(k, i);
        permute_collect(idx, k + 1, out);
        idx.swap(k, i);
    }
}

fn perm_sign(p: &[usize]) -> bool {
    let mut seen = vec![false; p.len()];
    let mut even = true;
    for i in 0..p.len() {
        if seen[i] {
            continue;
        }
        let mut j = i;
        let mut len = 0;
        while !seen[j] {
            seen[j] = true;
            j = p[j];
            len += 1;
        }
        if len % 2 == 0 {
            even = !even;
        }
    }
    even
}

/// `sum_w sgn(w) pt^{w(c0; c)}` over `W(D_n)`.
fn d_alternating_sum(c0: i64, c: &[i64], g0: &Rat, g: &[Rat]) -> Rat {
    let n = c.len();
    let weyl = WeylD::new(n);
    let mut total = Rat::zero();
    let g0c0 = rat_pow(g0, c0);
    // iterate over sign masks with an even number of flips
    for (perm, psign) in &weyl.perms {
        for mask in 0u32..(1 << n) {
            if mask.count_ones() % 2 != 0 {
                continue;
            }
            let mut term = g0c0.clone();
            for i in 0..n {
                // coordinate at position i after acting by (perm, mask)
                let src = perm[i];
                let ci = if mask & (1 << i) != 0 {
                    c0 - c[src]
                } else {
                    c[src]
                };
                term *= rat_pow(&g[i], ci);
            }
            if *psign {
                total += term;
            } else {
                total -= term;
            }
        }
    }
    total
}

fn d_char_ratio(c0: i64, c: &[i64], g0: &Rat, g: &[Rat]) -> Option<Rat> {
    let n = c.len();
    let rho: Vec<i64> = (0..n).map(|i| (n - 1 - i) as i64).collect();
    let num_wt: Vec<i64> = c.iter().zip(&rho).map(|(a, b)| a + b).collect();
    let den = d_alternating_sum(0, &rho, g0, g);
    if den.is_zero() {
        return None;
    }
    Some(d_alternating_sum(c0, &num_wt, g0, g) / den)
}

// ---------------------------------------------------------------------
// Freudenthal multiplicities (fallback at singular points; also the
// independent weight-expansion oracle used by tests).
// ---------------------------------------------------------------------

/// Simple Lie-type tag for the multiplicity computation, acting on
/// rational coordinate vectors with the standard bilinear form.
#[derive(Clone, Copy, PartialEq, Eq)]
enum SimpleType {
    A,
    C,
    D,
}

fn positive_roots(ty: SimpleType, n: usize) -> Vec<Vec<Rat>> {
    let mut roots = Vec::new();
    let e = |i: usize, s: i64| {
        let mut v = vec![Rat::zero(); n];
        v[i] = rat_int(s);
        v
    };
    let add = |a: &[Rat], b: &[Rat]| -> Vec<Rat> {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    };
    for i in 0..n {
        for j in i + 1..n {
            roots.push(add(&e(i, 1), &e(j, -1)));
            if ty != SimpleType::A {
                roots.push(add(&e(i, 1), &e(j, 1)));
            }
        }
        if ty == SimpleType::C {
            roots.push(e(i, 2));
        }
    }
    roots
}

fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn rho_vec(ty: SimpleType, n: usize) -> Vec<Rat> {
    let roots = positive_roots(ty, n);
    let mut rho = vec![Rat::zero(); n];
    for r in &roots {
        for i in 0..n {
            rho[i] += &r[i];
        }
    }
    for v in rho.iter_mut() {
        *v /= rat_int(2);
    }
    rho
}

/// Map a weight to its dominant Weyl-chamber representative.
fn dominant_rep(ty: SimpleType, w: &[Rat]) -> Vec<Rat> {
    let mut v = w.to_vec();
    match ty {
        SimpleType::A => {
            v.sort_by(|a, b| b.cmp(a));
        }
        SimpleType::C => {
            for x in v.iter_mut() {
                if x.is_negative() {
                    *x = -x.clone();
                }
            }
            v.sort_by(|a, b| b.cmp(a));
        }
        SimpleType::D => {
            let mut flips = 0;
            for x in v.iter_mut() {
                if x.is_negative() {
                    *x = -x.clone();
                    flips += 1;
                }
            }
            v.sort_by(|a, b| b.cmp(a));
            if flips % 2 == 1 {
                let last = v.len() - 1;
                v[last] = -v[last].clone();
                v.sort_by(|a, b| b.cmp(a));
            }
        }
    }
    v
}

fn is_dominant_vec(ty: SimpleType, v: &[Rat]) -> bool {
    let n = v.len();
    let chain = v.windows(2).all(|w| w[0] >= w[1]);
    match ty {
        SimpleType::A => chain,
        SimpleType::C => chain && !v[n - 1].is_negative(),
        SimpleType::D => chain && !(&v[n - 2] + &v[n - 1]).is_negative(),
    }
}

/// Exact test for `lambda - mu` lying in the nonnegative integer span of
/// the simple roots of the given type.
fn below_in_root_order(ty: SimpleType, lambda: &[Rat], mu: &[Rat]) -> bool {
    let n = lambda.len();
    let diff: Vec<Rat> = lambda.iter().zip(mu).map(|(a, b)| a - b).collect();
    if diff.iter().any(|d| !d.is_integer()) {
        return false;
    }
    let mut partial = Vec::with_capacity(n);
    let mut acc = Rat::zero();
    for d in &diff {
        acc += d;
        partial.push(acc.clone());
    }
    match ty {
        // simple roots e_i - e_{i+1}: coefficients are the partial sums
        SimpleType::A => {
            partial.iter().take(n - 1).all(|p| !p.is_negative()) && partial[n - 1].is_zero()
        }
        // e_i - e_{i+1} plus 2 e_n: a_n = S_n / 2
        SimpleType::C => {
            partial.iter().take(n - 1).all(|p| !p.is_negative())
                && !partial[n - 1].is_negative()
                && (&partial[n - 1] / rat_int(2)).is_integer()
        }
        // e_i - e_{i+1} plus e_{n-1} + e_n:
        //   a_k = S_k for k <= n-2, a_n = S_n / 2, a_{n-1} = S_n / 2 - d_n
        SimpleType::D => {
            let half = &partial[n - 1] / rat_int(2);
            partial.iter().take(n - 2).all(|p| !p.is_negative())
                && !partial[n - 1].is_negative()
                && half.is_integer()
                && !(half - &diff[n - 1]).is_negative()
        }
    }
}

/// All dominant vectors below `lambda` in the root order (these are
/// exactly the dominant weights of the module, by saturation).
fn dominant_weights_below(ty: SimpleType, lambda: &[Rat]) -> Vec<Vec<Rat>> {
    let n = lambda.len();
    let mut out = Vec::new();
    // coordinates of any weight lie in the convex hull of the Weyl orbit
    // of lambda: between min and max of the (signed) lambda coordinates
    let top = lambda[0].clone();
    let bottom = match ty {
        SimpleType::A => lambda[n - 1].clone(),
        SimpleType::C | SimpleType::D => -top.clone(),
    };
    let mut current: Vec<Rat> = Vec::with_capacity(n);
    fn rec(
        ty: SimpleType,
        lambda: &[Rat],
        current: &mut Vec<Rat>,
        top: &Rat,
        bottom: &Rat,
        out: &mut Vec<Vec<Rat>>,
    ) {
        let n = lambda.len();
        let i = current.len();
        if i == n {
            if is_dominant_vec(ty, current) && below_in_root_order(ty, lambda, current) {
                out.push(current.clone());
            }
            return;
        }
        // walk down from the previous coordinate (dominance chain) in
        // integer steps inside the lambda_i + Z coset
        let hi = if i == 0 {
            top.clone()
        } else {
            current[i - 1].clone()
        };
        let mut v = hi.clone();
        let frac = (&lambda[i] - &v).fract();
        v += frac.clone();
        if v > hi {
            v -= Rat::one();
        }
        while v >= *bottom {
            // partial-sum prune, valid for positions before the branch node
            let prune = match ty {
                SimpleType::A | SimpleType::C => i + 1 <= n - 1,
                SimpleType::D => i + 1 <= n - 2,
            };
            let mut fine = true;
            if prune {
                let s: Rat = lambda.iter().take(i + 1).sum::<Rat>()
                    - current.iter().sum::<Rat>()
                    - v.clone();
                fine = !s.is_negative();
            }
            if fine {
                current.push(v.clone());
                rec(ty, lambda, current, top, bottom, out);
                current.pop();
            }
            v -= Rat::one();
        }
    }
    rec(ty, lambda, &mut current, &top, &bottom, &mut out);
    out
}

/// Dominant weights of the irreducible module with highest weight
/// `lambda`, with multiplicities (Freudenthal's recursion).
fn freudenthal(ty: SimpleType, lambda: &[Rat]) -> BTreeMap<Vec<Rat>, i64> {
    let n = lambda.len();
    let roots = positive_roots(ty, n);
    let rho = rho_vec(ty, n);
    let lam_rho: Vec<Rat> = lambda.iter().zip(&rho).map(|(a, b)| a + b).collect();
    let norm_lam = dot(&lam_rho, &lam_rho);
    let mut weights = dominant_weights_below(ty, lambda);
    weights.sort_by_key(|w| {
        let h: Rat = w.iter().zip(lambda).map(|(a, b)| b - a).sum();
        (h * rat_int(2)).to_integer()
    });
    let mut mult: BTreeMap<Vec<Rat>, i64> = BTreeMap::new();
    for w in weights.iter() {
        if w == lambda {
            mult.insert(w.clone(), 1);
            continue;
        }
        let mut rhs = Rat::zero();
        for r in &roots {
            // the alpha-string through a weight is contiguous: stop at the
            // first multiplicity-zero point above w
            let mut k = 1i64;
            loop {
                let shifted: Vec<Rat> =
                    w.iter().zip(r).map(|(a, b)| a + b * rat_int(k)).collect();
                let dom = dominant_rep(ty, &shifted);
                let m = mult.get(&dom).copied().unwrap_or(0);
                if m == 0 {
                    break;
                }
                rhs += rat_int(m) * dot(&shifted, r);
                k += 1;
            }
        }
        let w_rho: Vec<Rat> = w.iter().zip(&rho).map(|(a, b)| a + b).collect();
        let denom = &norm_lam - dot(&w_rho, &w_rho);
        assert!(!denom.is_zero(), "Freudenthal denominator vanished");
        let m = rat_int(2) * rhs / denom;
        assert!(m.is_integer(), "non-integral weight multiplicity");
        let m: i64 = m.to_integer().try_into().unwrap();
        if m > 0 {
            mult.insert(w.clone(), m);
        }
    }
    mult
}

/// Full Weyl orbit of a weight vector, by closure under simple reflections.
fn weyl_orbit(ty: SimpleType, w: &[Rat]) -> BTreeSet<Vec<Rat>> {
    let n = w.len();
    let mut orbit: BTreeSet<Vec<Rat>> = BTreeSet::new();
    let mut stack = vec![w.to_vec()];
    orbit.insert(w.to_vec());
    while let Some(v) = stack.pop() {
        let mut images: Vec<Vec<Rat>> = Vec::new();
        for i in 0..n - 1 {
            let mut im = v.clone();
            im.swap(i, i + 1);
            images.push(im);
        }
        match ty {
            SimpleType::A => {}
            SimpleType::C => {
                let mut im = v.clone();
                im[n - 1] = -im[n - 1].clone();
                images.push(im);
            }
            SimpleType::D => {
                let mut im = v.clone();
                let (a, b) = (im[n - 2].clone(), im[n - 1].clone());
                im[n - 2] = -b;
                im[n - 1] = -a;
                images.push(im);
            }
        }
        for im in images {
            if orbit.insert(im.clone()) {
                stack.push(im);
            }
        }
    }
    orbit
}

/// Character by explicit weight-multiplicity expansion. Total on all
/// points; used when the ratio form degenerates and as a test oracle.
pub fn char_by_weight_expansion(weight: &HighestWeight, point: &SatakePoint) -> Rat {
    match (weight.group, point) {
        (GroupType::Gl(_), SatakePoint::Gl { alphas }) => {
            let lam: Vec<Rat> = weight.coords.iter().map(|&v| rat_int(v)).collect();
            let mults = freudenthal(SimpleType::A, &lam);
            let mut total = Rat::zero();
            for (w, m) in &mults {
                for o in weyl_orbit(SimpleType::A, w) {
                    let mut term = rat_int(*m);
                    for (a, e) in alphas.iter().zip(&o) {
                        term *= rat_pow(a, e.to_integer().try_into().unwrap());
                    }
                    total += term;
                }
            }
            total
        }
        (GroupType::Sp(_), _) | (GroupType::GSp(_), _) => {
            let (sigma, z) = match point {
                SatakePoint::Sp { z } => (Rat::one(), z.clone()),
                SatakePoint::GSp { sigma, z } => (sigma.clone(), z.clone()),
                _ => panic!("point type mismatch"),
            };
            let zbar: Vec<Rat> = z.iter().map(|zi| zi / &sigma).collect();
            let lam: Vec<Rat> = weight.coords.iter().map(|&v| rat_int(v)).collect();
            let mults = freudenthal(SimpleType::C, &lam);
            let mut total = Rat::zero();
            for (w, m) in &mults {
                for o in weyl_orbit(SimpleType::C, w) {
                    let mut term = rat_int(*m);
                    for (zi, e) in zbar.iter().zip(&o) {
                        term *= rat_pow(zi, e.to_integer().try_into().unwrap());
                    }
                    total += term;
                }
            }
            total * rat_pow(&sigma, weight.twist)
        }
        (GroupType::SpinD(_) | GroupType::GSpinD(_), SatakePoint::SpinD { g0, g }) => {
            // weights of the module all share the eps_0 coordinate c0;
            // their y-shadows y_i = c_i - c0/2 form a type-D module
            let n = weight.coords.len();
            let c0 = weight.twist;
            let half_c0 = rat(c0, 2);
            let y: Vec<Rat> = weight
                .coords
                .iter()
                .map(|&ci| rat_int(ci) - &half_c0)
                .collect();
            let mults = freudenthal(SimpleType::D, &y);
            let mut total = Rat::zero();
            for (w, m) in &mults {
                for o in weyl_orbit(SimpleType::D, w) {
                    // back to lattice coordinates: c_i = y_i + c0/2
                    let mut term = rat_int(*m) * rat_pow(g0, c0);
                    let mut ok = true;
                    for i in 0..n {
                        let ci = &o[i] + &half_c0;
                        if !ci.is_integer() {
                            ok = false;
                            break;
                        }
                        term *= rat_pow(&g[i], ci.to_integer().try_into().unwrap());
                    }
                    assert!(ok, "weight left the integral lattice");
                    total += term;
                }
            }
            total
        }
        _ => panic!("point type mismatch"),
    }
}

/// Exact character value by the Weyl character formula (ratio of
/// alternating sums) at regular points, with the weight-multiplicity
/// expansion as the fallback at singular points.
pub fn weyl_character(weight: &HighestWeight, point: &SatakePoint) -> Result<ExactScalar, CharError> {
    if !point.group(weight.group) {
        let pg = match point {
            SatakePoint::Gl { alphas } => GroupType::Gl(alphas.len()),
            SatakePoint::Sp { z } => GroupType::Sp(z.len()),
            SatakePoint::GSp { z, .. } => GroupType::GSp(z.len()),
            SatakePoint::SpinD { g, .. } => GroupType::GSpinD(g.len()),
        };
        return Err(CharError::GroupMismatch(weight.group, pg));
    }
    let val = match (weight.group, point) {
        (GroupType::Gl(_), SatakePoint::Gl { alphas }) => gl_char_ratio(&weight.coords, alphas),
        (GroupType::Sp(_), SatakePoint::Sp { z }) => sp_char_ratio(&weight.coords, z),
        (GroupType::Sp(_), SatakePoint::GSp { sigma, z })
        | (GroupType::GSp(_), SatakePoint::GSp { sigma, z }) => {
            let zbar: Vec<Rat> = z.iter().map(|zi| zi / sigma).collect();
            sp_char_ratio(&weight.coords, &zbar).map(|v| v * rat_pow(sigma, weight.twist))
        }
        (GroupType::GSp(_), SatakePoint::Sp { z }) => sp_char_ratio(&weight.coords, z),
        (GroupType::SpinD(_) | GroupType::GSpinD(_), SatakePoint::SpinD { g0, g }) => {
            d_char_ratio(weight.twist, &weight.coords, g0, g)
        }
        _ => unreachable!(),
    };
    let v = match val {
        Some(v) => v,
        None => {
            if weight.group.rank() > 5 {
                return Err(CharError::SingularPoint);
            }
            char_by_weight_expansion(weight, point)
        }
    };
    Ok(ExactScalar::from_rat(v))
}

/// Dimension of the irreducible module (Weyl dimension formula).
pub fn weyl_dimension(weight: &HighestWeight) -> i64 {
    let n = weight.group.rank();
    let (ty, lam): (SimpleType, Vec<Rat>) = match weight.group {
        GroupType::Gl(_) => (
            SimpleType::A,
            weight.coords.iter().map(|&v| rat_int(v)).collect(),
        ),
        GroupType::Sp(_) | GroupType::GSp(_) => (
            SimpleType::C,
            weight.coords.iter().map(|&v| rat_int(v)).collect(),
        ),
        GroupType::SpinD(_) | GroupType::GSpinD(_) => {
            let half_c0 = rat(weight.twist, 2);
            (
                SimpleType::D,
                weight.coords.iter().map(|&c| rat_int(c) - &half_c0).collect(),
            )
        }
    };
    let rho = rho_vec(ty, n);
    let roots = positive_roots(ty, n);
    let mut num = Rat::one();
    let mut den = Rat::one();
    let lam_rho: Vec<Rat> = lam.iter().zip(&rho).map(|(a, b)| a + b).collect();
    for r in &roots {
        num *= dot(&lam_rho, r);
        den *= dot(&rho, r);
    }
    let d = num / den;
    assert!(d.is_integer(), "Weyl dimension must be an integer");
    d.to_integer().try_into().unwrap()
}

/// All dominant weights with coordinate sum at most `bound`, in a
/// deterministic order. For D types these are fundamental-coefficient
/// vectors with coefficient sum at most `bound`.
pub fn dominant_weights_up_to(group: GroupType, bound: i64) -> Vec<HighestWeight> {
    assert!(bound >= 0);
    let n = group.rank();
    let mut out = Vec::new();
    match group {
        GroupType::Gl(_) | GroupType::Sp(_) | GroupType::GSp(_) => {
            let mut stack: Vec<Vec<i64>> = vec![Vec::new()];
            let mut parts = Vec::new();
            while let Some(p) = stack.pop() {
                if p.len() == n {
                    parts.push(p);
                    continue;
                }
                let hi = if p.is_empty() {
                    bound
                } else {
                    (*p.last().unwrap()).min(bound - p.iter().sum::<i64>())
                };
                for v in 0..=hi {
                    let mut q = p.clone();
                    q.push(v);
                    stack.push(q);
                }
            }
            parts.sort();
            for p in parts {
                out.push(match group {
                    GroupType::Gl(_) => HighestWeight::gl(n, p),
                    GroupType::Sp(_) => HighestWeight::sp(n, p),
                    GroupType::GSp(_) => {
                        let k0 = p.iter().sum();
                        HighestWeight::gsp(n, p, k0)
                    }
                    _ => unreachable!(),
                });
            }
        }
        GroupType::SpinD(_) | GroupType::GSpinD(_) => {
            let mut tuples = vec![vec![]];
            for _ in 0..n {
                let mut next = Vec::new();
                for t in &tuples {
                    let used: i64 = t.iter().sum();
                    for v in 0..=(bound - used) {
                        let mut q = t.clone();
                        q.push(v);
                        next.push(q);
                    }
                }
                tuples = next;
            }
            tuples.sort();
            for t in tuples {
                out.push(HighestWeight::spin_from_fundamental(group, &t));
            }
        }
    }
    out
}

/// Extra conditions imposed on a generated Satake point.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SatakeConstraint {
    None,
    /// `GSp`: force the similitude square root to 1. D types: force the
    /// central value to 1.
    TrivialCentral,
}

fn small_nonzero(rng: &mut ChaCha8Rng) -> Rat {
    let num = rng.gen_range(1..=13i64);
    let den = rng.gen_range(1..=13i64);
    let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
    rat(sign * num, den)
}

fn gl_regular(alphas: &[Rat]) -> bool {
    for i in 0..alphas.len() {
        for j in i + 1..alphas.len() {
            if alphas[i] == alphas[j] {
                return false;
            }
        }
    }
    true
}

fn sp_regular(z: &[Rat]) -> bool {
    let one = Rat::one();
    for i in 0..z.len() {
        if z[i] == one || z[i] == -one.clone() {
            return false;
        }
        for j in 0..z.len() {
            if i != j && (z[i] == z[j] || z[i].clone() * z[j].clone() == one) {
                return false;
            }
        }
    }
    true
}

fn d_regular(g0: &Rat, g: &[Rat]) -> bool {
    for i in 0..g.len() {
        for j in 0..g.len() {
            if i != j {
                if g[i] == g[j] {
                    return false;
                }
                if &(g[i].clone() * g[j].clone()) == g0 {
                    return false;
                }
            }
        }
    }
    true
}

/// Seeded, reproducible point with small-height nonzero distinct rational
/// data satisfying the constraint.
pub fn random_satake(group: GroupType, constraint: SatakeConstraint, seed: u64) -> SatakePoint {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = group.rank();
    for _ in 0..10_000 {
        match group {
            GroupType::Gl(_) => {
                let alphas: Vec<Rat> = (0..n).map(|_| small_nonzero(&mut rng)).collect();
                if gl_regular(&alphas) {
                    return SatakePoint::Gl { alphas };
                }
            }
            GroupType::Sp(_) => {
                let z: Vec<Rat> = (0..n).map(|_| small_nonzero(&mut rng)).collect();
                if sp_regular(&z) {
                    return SatakePoint::Sp { z };
                }
            }
            GroupType::GSp(_) => {
                let sigma = if constraint == SatakeConstraint::TrivialCentral {
                    Rat::one()
                } else {
                    small_nonzero(&mut rng)
                };
                let z: Vec<Rat> = (0..n).map(|_| small_nonzero(&mut rng)).collect();
                let zbar: Vec<Rat> = z.iter().map(|zi| zi / &sigma).collect();
                if sp_regular(&zbar) {
                    return SatakePoint::GSp { sigma, z };
                }
            }
            GroupType::SpinD(_) | GroupType::GSpinD(_) => {
                let (g0, g) = if constraint == SatakeConstraint::TrivialCentral {
                    // use squares so the central equation g0^2 prod g = 1
                    // has a rational solution
                    let d: Vec<Rat> = (0..n).map(|_| small_nonzero(&mut rng)).collect();
                    let g: Vec<Rat> = d.iter().map(|x| x * x).collect();
                    let prod: Rat = d.iter().product();
                    (prod.recip(), g)
                } else {
                    let g: Vec<Rat> = (0..n).map(|_| small_nonzero(&mut rng)).collect();
                    (small_nonzero(&mut rng), g)
                };
                if d_regular(&g0, &g) {
                    return SatakePoint::SpinD { g0, g };
                }
            }
        }
    }
    panic!("failed to generate a regular Satake point after 10000 attempts");
}

/// Joint generation with the central-character relation
/// `omega(first) * omega(second) = 1`, solved on the GL side.
pub fn random_satake_pair_central_one(
    first: GroupType,
    second_gl: usize,
    seed: u64,
) -> Result<(SatakePoint, SatakePoint), CharError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e3779b97f4a7c15);
    let p1 = random_satake(first, SatakeConstraint::None, seed);
    let omega1 = p1.central_value();
    if omega1.is_zero() {
        return Err(CharError::Unsatisfiable("zero central value".into()));
    }
    for _ in 0..10_000 {
        let mut alphas: Vec<Rat> = (0..second_gl - 1).map(|_| small_nonzero(&mut rng)).collect();
        let partial: Rat = alphas.iter().product();
        let last = (omega1.clone() * partial).recip();
        alphas.push(last);
        if gl_regular(&alphas) {
            let p2 = SatakePoint::Gl { alphas };
            debug_assert!((p1.central_value() * p2.central_value()).is_one());
            return Ok((p1, p2));
        }
    }
    Err(CharError::Unsatisfiable(
        "could not satisfy the central relation with distinct eigenvalues".into(),
    ))
}

/// All-ones point of a group (singular for ratio evaluation).
pub fn all_ones_point(group: GroupType) -> SatakePoint {
    let n = group.rank();
    match group {
        GroupType::Gl(_) => SatakePoint::Gl {
            alphas: vec![Rat::one(); n],
        },
        GroupType::Sp(_) => SatakePoint::Sp {
            z: vec![Rat::one(); n],
        },
        GroupType::GSp(_) => SatakePoint::GSp {
            sigma: Rat::one(),
            z: vec![Rat::one(); n],
        },
        GroupType::SpinD(_) | GroupType::GSpinD(_) => SatakePoint::SpinD {
            g0: Rat::one(),
            g: vec![Rat::one(); n],
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gl2_standard_trace() {
        let w = HighestWeight::gl(2, vec![1, 0]);
        let p = SatakePoint::Gl {
            alphas: vec![rat_int(2), rat_int(3)],
        };
        assert_eq!(
            weyl_character(&w, &p).unwrap(),
            ExactScalar::from_rat(rat_int(5))
        );
    }

    #[test]
    fn gl2_determinant_weight() {
        let w = HighestWeight::gl(2, vec![1, 1]);
        let p = SatakePoint::Gl {
            alphas: vec![rat_int(2), rat_int(3)],
        };
        assert_eq!(
            weyl_character(&w, &p).unwrap(),
            ExactScalar::from_rat(rat_int(6))
        );
    }

    #[test]
    fn sp4_five_dim_weight_sum() {
        // fundamental weight (1,1) of Sp_4 is the 5-dimensional module
        // with weights {±e1±e2... } -- actually {±(e1+e2), ±(e1-e2), 0}
        let w = HighestWeight::sp(2, vec![1, 1]);
        let z = vec![rat_int(2), rat_int(3)];
        let p = SatakePoint::Sp { z: z.clone() };
        // independent weight enumeration oracle
        let oracle = {
            let pairs = [(1i64, 1i64), (1, -1), (-1, 1), (-1, -1), (0, 0)];
            let mut s = Rat::zero();
            for (a, b) in pairs {
                s += rat_pow(&z[0], a) * rat_pow(&z[1], b);
            }
            s
        };
        assert_eq!(
            weyl_character(&w, &p).unwrap(),
            ExactScalar::from_rat(oracle)
        );
    }

    #[test]
    fn dims_small() {
        assert_eq!(weyl_dimension(&HighestWeight::gl(3, vec![0, 0, 0])), 1);
        assert_eq!(weyl_dimension(&HighestWeight::sp(2, vec![1, 0])), 4);
        let spin8 = HighestWeight::spin_from_fundamental(GroupType::SpinD(4), &[0, 0, 0, 1]);
        assert_eq!(weyl_dimension(&spin8), 8);
        let spin10 = HighestWeight::spin_from_fundamental(GroupType::GSpinD(5), &[0, 0, 0, 0, 1]);
        assert_eq!(weyl_dimension(&spin10), 16);
    }

    #[test]
    fn dominant_enumeration_counts() {
        let gl2 = dominant_weights_up_to(GroupType::Gl(2), 1);
        assert_eq!(
            gl2.iter().map(|w| w.coords.clone()).collect::<Vec<_>>(),
            vec![vec![0, 0], vec![1, 0]]
        );
        let sp4 = dominant_weights_up_to(GroupType::Sp(2), 0);
        assert_eq!(sp4.len(), 1);
        // brute-force partition oracle for GL(3), bound 2
        let gl3 = dominant_weights_up_to(GroupType::Gl(3), 2);
        let mut oracle = Vec::new();
        for a in 0..=2i64 {
            for b in 0..=a {
                for c in 0..=b {
                    if a + b + c <= 2 {
                        oracle.push(vec![a, b, c]);
                    }
                }
            }
        }
        oracle.sort();
        assert_eq!(
            gl3.iter().map(|w| w.coords.clone()).collect::<Vec<_>>(),
            oracle
        );
    }

    #[test]
    fn character_at_all_ones_is_dimension() {
        for group in [
            GroupType::Gl(3),
            GroupType::Sp(2),
            GroupType::GSp(2),
            GroupType::SpinD(4),
            GroupType::GSpinD(4),
        ] {
            let ones = all_ones_point(group);
            for w in dominant_weights_up_to(group, 3) {
                let dim = weyl_dimension(&w);
                let ch = weyl_character(&w, &ones).unwrap();
                assert_eq!(
                    ch,
                    ExactScalar::from_rat(rat_int(dim)),
                    "dimension mismatch for {:?}",
                    w
                );
            }
        }
    }

    #[test]
    fn ratio_matches_weight_expansion() {
        for (group, seed) in [
            (GroupType::Gl(3), 11u64),
            (GroupType::Sp(2), 12),
            (GroupType::GSp(2), 13),
            (GroupType::SpinD(4), 14),
            (GroupType::GSpinD(4), 15),
        ] {
            let p = random_satake(group, SatakeConstraint::None, seed);
            for w in dominant_weights_up_to(group, 3) {
                let ratio = weyl_character(&w, &p).unwrap();
                let expanded = char_by_weight_expansion(&w, &p);
                assert_eq!(
                    ratio,
                    ExactScalar::from_rat(expanded),
                    "mismatch for {:?} at seed {}",
                    w,
                    seed
                );
            }
        }
    }

    #[test]
    fn gsp_twist_law() {
        let p = random_satake(GroupType::GSp(2), SatakeConstraint::None, 21);
        let w0 = HighestWeight::gsp(2, vec![2, 1], 3);
        let w2 = HighestWeight::gsp(2, vec![2, 1], 5);
        let mu = ExactScalar::from_rat(p.similitude());
        assert_eq!(
            weyl_character(&w2, &p).unwrap(),
            weyl_character(&w0, &p).unwrap().mul(&mu)
        );
    }

    #[test]
    fn weyl_invariance_sampled() {
        // GL: permuting eigenvalues fixes the character
        let w = HighestWeight::gl(3, vec![3, 1, 0]);
        if let SatakePoint::Gl { alphas } = random_satake(GroupType::Gl(3), SatakeConstraint::None, 5)
        {
            let p1 = SatakePoint::Gl {
                alphas: alphas.clone(),
            };
            let mut sw = alphas.clone();
            sw.swap(0, 2);
            let p2 = SatakePoint::Gl { alphas: sw };
            assert_eq!(
                weyl_character(&w, &p1).unwrap(),
                weyl_character(&w, &p2).unwrap()
            );
        }
        // Sp: inverting an eigenvalue fixes the character
        let w = HighestWeight::sp(2, vec![2, 1]);
        if let SatakePoint::Sp { z } = random_satake(GroupType::Sp(2), SatakeConstraint::None, 6) {
            let p1 = SatakePoint::Sp { z: z.clone() };
            let mut zz = z.clone();
            zz[0] = zz[0].recip();
            let p2 = SatakePoint::Sp { z: zz };
            assert_eq!(
                weyl_character(&w, &p1).unwrap(),
                weyl_character(&w, &p2).unwrap()
            );
        }
        // D type: the pair flip acts on points by inverting two entries
        // and absorbing their product into the similitude generator
        let w = HighestWeight::spin_from_fundamental(GroupType::GSpinD(4), &[1, 0, 1, 0]);
        if let SatakePoint::SpinD { g0, g } =
            random_satake(GroupType::GSpinD(4), SatakeConstraint::None, 7)
        {
            let p1 = SatakePoint::SpinD {
                g0: g0.clone(),
                g: g.clone(),
            };
            let mut gg = g.clone();
            gg[0] = g[1].recip();
            gg[1] = g[0].recip();
            let p2 = SatakePoint::SpinD {
                g0: &g0 * &g[0] * &g[1],
                g: gg,
            };
            assert_eq!(
                weyl_character(&w, &p1).unwrap(),
                weyl_character(&w, &p2).unwrap()
            );
        }
    }

    #[test]
    fn central_pair_constraint_holds() {
        let (p1, p2) = random_satake_pair_central_one(GroupType::GSp(2), 3, 42).unwrap();
        assert!((p1.central_value() * p2.central_value()).is_one());
    }
}
