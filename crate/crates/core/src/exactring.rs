//! Exact coefficient arithmetic.
//!
//! Everything downstream computes over three carriers:
//! - [`ExactScalar`]: Laurent polynomials in one symbol `u` (standing for
//!   `q^{1/2}`) with exact rational coefficients,
//! - [`BiSeries`]: truncated formal series in the half-power variables
//!   `x = q^{-s/2}` and `y = q^{-w/2}` with `ExactScalar` coefficients,
//! - [`LaurentPoly`]: the untruncated finite carrier over the full
//!   `(u, x, y)` half-grid, allowing negative `x`/`y` exponents.
//!
//! The half grid makes every exponent that occurs integral: exponents such
//! as `(s+w)/2` or `9/2` land on integer powers of `u`, `x`, `y`.

use num::{BigInt, BigRational, One, Zero};
use std::collections::BTreeMap;
use std::fmt;

pub type Rat = BigRational;

/// Convenience constructor for small rationals.
pub fn rat(n: i64, d: i64) -> Rat {
    assert!(d != 0, "zero denominator");
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from(BigInt::from(n))
}

/// Exact power with integer exponent; `b` must be nonzero for negative `e`.
pub fn rat_pow(b: &Rat, e: i64) -> Rat {
    if e == 0 {
        return Rat::one();
    }
    let mut base = if e < 0 {
        assert!(!b.is_zero(), "negative power of zero");
        b.recip()
    } else {
        b.clone()
    };
    let mut e = e.unsigned_abs();
    let mut acc = Rat::one();
    while e > 0 {
        if e & 1 == 1 {
            acc *= &base;
        }
        e >>= 1;
        if e > 0 {
            base = &base * &base;
        }
    }
    acc
}

/// Laurent polynomial in `u` with rational coefficients. No zero
/// coefficients are stored.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct ExactScalar {
    coeffs: BTreeMap<i64, Rat>,
}

impl ExactScalar {
    pub fn zero() -> Self {
        ExactScalar::default()
    }

    pub fn one() -> Self {
        ExactScalar::from_rat(Rat::one())
    }

    pub fn from_rat(r: Rat) -> Self {
        let mut s = ExactScalar::default();
        if !r.is_zero() {
            s.coeffs.insert(0, r);
        }
        s
    }

    /// `c * u^e`.
    pub fn monomial(c: Rat, e: i64) -> Self {
        let mut s = ExactScalar::default();
        if !c.is_zero() {
            s.coeffs.insert(e, c);
        }
        s
    }

    pub fn u_power(e: i64) -> Self {
        Self::monomial(Rat::one(), e)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs.get(&0).map_or(false, |c| c.is_one())
    }

    pub fn coeff(&self, e: i64) -> Rat {
        self.coeffs.get(&e).cloned().unwrap_or_else(Rat::zero)
    }

    /// The rational value when this scalar is a constant (no `u`).
    pub fn as_rat(&self) -> Option<Rat> {
        if self.is_zero() {
            return Some(Rat::zero());
        }
        if self.coeffs.len() == 1 {
            if let Some(c) = self.coeffs.get(&0) {
                return Some(c.clone());
            }
        }
        None
    }

    pub fn terms(&self) -> impl Iterator<Item = (&i64, &Rat)> {
        self.coeffs.iter()
    }

    fn insert_add(&mut self, e: i64, c: &Rat) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(e).or_insert_with(Rat::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&e);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.coeffs {
            out.insert_add(*e, c);
        }
        out
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for c in out.coeffs.values_mut() {
            *c = -c.clone();
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = ExactScalar::default();
        for (e1, c1) in &self.coeffs {
            for (e2, c2) in &other.coeffs {
                out.insert_add(e1 + e2, &(c1 * c2));
            }
        }
        out
    }

    pub fn mul_rat(&self, r: &Rat) -> Self {
        if r.is_zero() {
            return ExactScalar::zero();
        }
        let mut out = self.clone();
        for c in out.coeffs.values_mut() {
            *c *= r;
        }
        out
    }

    /// Multiply by `u^e`.
    pub fn shift_u(&self, e: i64) -> Self {
        let mut out = ExactScalar::default();
        for (k, c) in &self.coeffs {
            out.coeffs.insert(k + e, c.clone());
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = ExactScalar::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }
}

impl fmt::Debug for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", render_scalar(self))
    }
}

/// Canonical text form, sorted by u-exponent.
pub fn render_scalar(s: &ExactScalar) -> String {
    if s.is_zero() {
        return "0".to_string();
    }
    let mut parts = Vec::new();
    for (e, c) in s.terms() {
        let mut t = String::new();
        if c.is_one() && *e != 0 {
        } else if *c == -Rat::one() && *e != 0 {
            t.push('-');
        } else {
            t.push_str(&c.to_string());
            if *e != 0 {
                t.push('*');
            }
        }
        if *e != 0 {
            t.push('u');
            if *e != 1 {
                t.push_str(&format!("^{}", e));
            }
        }
        parts.push(t);
    }
    parts.join(" + ")
}

/// Truncation box for [`BiSeries`]: monomials `x^a y^b` with
/// `0 <= a <= x` and `0 <= b <= y` are kept.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct SeriesBox {
    pub x: i64,
    pub y: i64,
}

impl SeriesBox {
    pub fn new(x: i64, y: i64) -> Self {
        assert!(x >= 0 && y >= 0, "truncation box must be nonnegative");
        SeriesBox { x, y }
    }

    pub fn contains(&self, xe: i64, ye: i64) -> bool {
        xe >= 0 && ye >= 0 && xe <= self.x && ye <= self.y
    }
}

/// Truncated bivariate series over [`ExactScalar`]. All stored exponents
/// lie inside the box; arithmetic discards monomials beyond it exactly.
#[derive(Clone, PartialEq, Eq)]
pub struct BiSeries {
    bx: SeriesBox,
    coeffs: BTreeMap<(i64, i64), ExactScalar>,
}

impl BiSeries {
    pub fn zero(bx: SeriesBox) -> Self {
        BiSeries {
            bx,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one(bx: SeriesBox) -> Self {
        let mut s = BiSeries::zero(bx);
        s.coeffs.insert((0, 0), ExactScalar::one());
        s
    }

    pub fn monomial(bx: SeriesBox, c: ExactScalar, xe: i64, ye: i64) -> Self {
        let mut s = BiSeries::zero(bx);
        s.add_term(c, xe, ye);
        s
    }

    pub fn series_box(&self) -> SeriesBox {
        self.bx
    }

    pub fn coeff(&self, xe: i64, ye: i64) -> ExactScalar {
        self.coeffs
            .get(&(xe, ye))
            .cloned()
            .unwrap_or_else(ExactScalar::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(i64, i64), &ExactScalar)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Add `c * x^xe * y^ye`, silently discarding monomials beyond the
    /// box. Negative exponents are a caller bug.
    pub fn add_term(&mut self, c: ExactScalar, xe: i64, ye: i64) {
        assert!(xe >= 0 && ye >= 0, "negative exponent in BiSeries");
        if c.is_zero() || xe > self.bx.x || ye > self.bx.y {
            return;
        }
        let entry = self
            .coeffs
            .entry((xe, ye))
            .or_insert_with(ExactScalar::zero);
        *entry = entry.add(&c);
        if entry.is_zero() {
            self.coeffs.remove(&(xe, ye));
        }
    }

    fn check_box(&self, other: &Self) {
        assert!(
            self.bx == other.bx,
            "mismatched truncation boxes: {:?} vs {:?}",
            self.bx,
            other.bx
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_box(other);
        let mut out = self.clone();
        for ((xe, ye), c) in &other.coeffs {
            out.add_term(c.clone(), *xe, *ye);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.check_box(other);
        let mut out = self.clone();
        for ((xe, ye), c) in &other.coeffs {
            out.add_term(c.neg(), *xe, *ye);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_box(other);
        let mut out = BiSeries::zero(self.bx);
        for ((x1, y1), c1) in &self.coeffs {
            for ((x2, y2), c2) in &other.coeffs {
                let (xe, ye) = (x1 + x2, y1 + y2);
                if xe > self.bx.x || ye > self.bx.y {
                    continue;
                }
                out.add_term(c1.mul(c2), xe, ye);
            }
        }
        out
    }

    pub fn mul_scalar(&self, s: &ExactScalar) -> Self {
        let mut out = BiSeries::zero(self.bx);
        for ((xe, ye), c) in &self.coeffs {
            out.add_term(c.mul(s), *xe, *ye);
        }
        out
    }

    /// First monomial (in `(x, y)` order) where the two series differ,
    /// together with both coefficients.
    pub fn first_mismatch(&self, other: &Self) -> Option<((i64, i64), ExactScalar, ExactScalar)> {
        self.check_box(other);
        let mut keys: Vec<(i64, i64)> = self.coeffs.keys().chain(other.coeffs.keys()).cloned().collect();
        keys.sort();
        keys.dedup();
        for k in keys {
            let a = self.coeff(k.0, k.1);
            let b = other.coeff(k.0, k.1);
            if a != b {
                return Some((k, a, b));
            }
        }
        None
    }

    /// True when every monomial with a nonzero coefficient has both
    /// exponents even.
    pub fn even_support(&self) -> bool {
        self.coeffs.keys().all(|(xe, ye)| xe % 2 == 0 && ye % 2 == 0)
    }

    /// Restrict to a smaller box (used by the monotone-truncation tests).
    pub fn truncate_to(&self, bx: SeriesBox) -> Self {
        assert!(bx.x <= self.bx.x && bx.y <= self.bx.y);
        let mut out = BiSeries::zero(bx);
        for ((xe, ye), c) in &self.coeffs {
            out.add_term(c.clone(), *xe, *ye);
        }
        out
    }
}

impl fmt::Debug for BiSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", render_series(self))
    }
}

/// Canonical text rendering, sorted by `(x-exp, y-exp, u-exp)`.
pub fn render_series(s: &BiSeries) -> String {
    if s.is_zero() {
        return "0".to_string();
    }
    let mut parts = Vec::new();
    for ((xe, ye), c) in s.terms() {
        let coeff = render_scalar(c);
        let needs_paren = c.terms().count() > 1;
        let mut t = if needs_paren {
            format!("({})", coeff)
        } else {
            coeff
        };
        if *xe != 0 {
            t.push_str(&format!("*x^{}", xe));
        }
        if *ye != 0 {
            t.push_str(&format!("*y^{}", ye));
        }
        parts.push(t);
    }
    parts.join(" + ")
}

/// Geometric expansion of `(1 - c * x^xe * y^ye)^{-1}` truncated to the
/// box. The monomial must have a strictly positive exponent so that the
/// expansion terminates.
pub fn geom_inverse(c: &ExactScalar, xe: i64, ye: i64, bx: SeriesBox) -> BiSeries {
    assert!(
        xe >= 0 && ye >= 0 && (xe > 0 || ye > 0),
        "geometric series requires a strictly positive monomial"
    );
    let mut out = BiSeries::one(bx);
    if c.is_zero() {
        return out;
    }
    let mut pow = ExactScalar::one();
    let mut r: i64 = 1;
    while (xe == 0 || r * xe <= bx.x) && (ye == 0 || r * ye <= bx.y) {
        if xe == 0 && r * ye > bx.y {
            break;
        }
        if ye == 0 && r * xe > bx.x {
            break;
        }
        pow = pow.mul(c);
        out.add_term(pow.clone(), r * xe, r * ye);
        r += 1;
    }
    out
}

/// Finite Laurent carrier over the `(u, x, y)` half-grid; exponents may be
/// negative. Used for G-function values and per-lattice-point terms before
/// the nonnegativity assertion folds them into a [`BiSeries`].
#[derive(Clone, PartialEq, Eq, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<(i64, i64), ExactScalar>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        Self::monomial(ExactScalar::one(), 0, 0)
    }

    pub fn monomial(c: ExactScalar, xe: i64, ye: i64) -> Self {
        let mut p = LaurentPoly::default();
        p.add_term(c, xe, ye);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, c: ExactScalar, xe: i64, ye: i64) {
        if c.is_zero() {
            return;
        }
        let entry = self
            .terms
            .entry((xe, ye))
            .or_insert_with(ExactScalar::zero);
        *entry = entry.add(&c);
        if entry.is_zero() {
            self.terms.remove(&(xe, ye));
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for ((xe, ye), c) in &other.terms {
            out.add_term(c.clone(), *xe, *ye);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = LaurentPoly::default();
        for ((x1, y1), c1) in &self.terms {
            for ((x2, y2), c2) in &other.terms {
                out.add_term(c1.mul(c2), x1 + x2, y1 + y2);
            }
        }
        out
    }

    pub fn mul_scalar(&self, s: &ExactScalar) -> Self {
        let mut out = LaurentPoly::default();
        for ((xe, ye), c) in &self.terms {
            out.add_term(c.mul(s), *xe, *ye);
        }
        out
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(i64, i64), &ExactScalar)> {
        self.terms.iter()
    }

    /// Fold into a truncated series. Any term with a negative exponent is
    /// an assembly error upstream.
    pub fn into_series(&self, bx: SeriesBox) -> Result<BiSeries, String> {
        let mut out = BiSeries::zero(bx);
        for ((xe, ye), c) in &self.terms {
            if *xe < 0 || *ye < 0 {
                return Err(format!(
                    "negative combined exponent x^{} y^{} with coefficient {}",
                    xe,
                    ye,
                    render_scalar(c)
                ));
            }
            out.add_term(c.clone(), *xe, *ye);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scalar_u_times_u() {
        let u = ExactScalar::u_power(1);
        assert_eq!(u.mul(&u), ExactScalar::u_power(2));
    }

    #[test]
    fn scalar_difference_of_squares() {
        let one = ExactScalar::one();
        let u = ExactScalar::u_power(1);
        let lhs = one.add(&u).mul(&one.sub(&u));
        assert_eq!(lhs, one.sub(&u.mul(&u)));
    }

    #[test]
    fn scalar_like_terms() {
        let a = ExactScalar::monomial(rat(3, 2), -1);
        let b = ExactScalar::monomial(rat(1, 2), -1);
        assert_eq!(a.add(&b), ExactScalar::monomial(rat_int(2), -1));
    }

    #[test]
    fn series_product_truncates() {
        let bx = SeriesBox::new(4, 0);
        let one = BiSeries::one(bx);
        let x2 = BiSeries::monomial(bx, ExactScalar::one(), 2, 0);
        let lhs = one.add(&x2).mul(&one.sub(&x2));
        let expect = one.sub(&BiSeries::monomial(bx, ExactScalar::one(), 4, 0));
        assert_eq!(lhs, expect);
    }

    #[test]
    fn series_mul_identity() {
        let bx = SeriesBox::new(3, 2);
        let mut a = BiSeries::one(bx);
        a.add_term(ExactScalar::monomial(rat(5, 7), 2), 1, 2);
        a.add_term(ExactScalar::u_power(-3), 3, 0);
        assert_eq!(a.mul(&BiSeries::one(bx)), a);
    }

    #[test]
    fn series_distributivity_box22() {
        let bx = SeriesBox::new(2, 2);
        let alpha = ExactScalar::from_rat(rat(2, 3));
        let beta = ExactScalar::from_rat(rat(-5, 1));
        let mut a = BiSeries::one(bx);
        a.add_term(alpha.clone(), 2, 0);
        let mut b = BiSeries::one(bx);
        b.add_term(beta.clone(), 0, 2);
        let prod = a.mul(&b);
        let mut expect = BiSeries::one(bx);
        expect.add_term(alpha.clone(), 2, 0);
        expect.add_term(beta.clone(), 0, 2);
        expect.add_term(alpha.mul(&beta), 2, 2);
        assert_eq!(prod, expect);
    }

    #[test]
    fn geom_basic() {
        let bx = SeriesBox::new(6, 0);
        let alpha = ExactScalar::from_rat(rat(3, 5));
        let g = geom_inverse(&alpha, 2, 0, bx);
        let mut expect = BiSeries::one(bx);
        expect.add_term(alpha.clone(), 2, 0);
        expect.add_term(alpha.pow(2), 4, 0);
        expect.add_term(alpha.pow(3), 6, 0);
        assert_eq!(g, expect);
    }

    #[test]
    fn geom_zero_coeff() {
        let bx = SeriesBox::new(6, 0);
        assert_eq!(
            geom_inverse(&ExactScalar::zero(), 2, 0, bx),
            BiSeries::one(bx)
        );
    }

    #[test]
    fn geom_mixed_monomial() {
        let bx = SeriesBox::new(4, 4);
        let two = ExactScalar::from_rat(rat_int(2));
        let g = geom_inverse(&two, 2, 2, bx);
        let mut expect = BiSeries::one(bx);
        expect.add_term(two.clone(), 2, 2);
        expect.add_term(ExactScalar::from_rat(rat_int(4)), 4, 4);
        assert_eq!(g, expect);
    }

    #[test]
    fn geom_times_one_minus_recovers_one() {
        let bx = SeriesBox::new(8, 6);
        let c = ExactScalar::monomial(rat(-7, 3), 1);
        let g = geom_inverse(&c, 2, 2, bx);
        let mut lin = BiSeries::one(bx);
        lin.add_term(c.neg(), 2, 2);
        assert_eq!(g.mul(&lin), BiSeries::one(bx));
    }

    #[test]
    fn laurent_negative_exponent_rejected() {
        let p = LaurentPoly::monomial(ExactScalar::one(), -2, 0);
        assert!(p.into_series(SeriesBox::new(4, 4)).is_err());
    }
}
