//! Local L-factors as truncated series: the direct product over
//! representation weights, and the character-sum expansions that the
//! identity suite compares them against.

use crate::exactring::{geom_inverse, rat_pow, BiSeries, ExactScalar, Rat, SeriesBox};
use crate::rootchar::{weyl_character, GroupType, HighestWeight, SatakePoint};
use num::One;

/// Which series variable an L-factor expands in (`X = x^2` or `Y = y^2`).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SeriesVar {
    X,
    Y,
}

impl SeriesVar {
    pub fn monomial_exps(&self) -> (i64, i64) {
        match self {
            SeriesVar::X => (2, 0),
            SeriesVar::Y => (0, 2),
        }
    }
}

/// A representation of a dual group (or product of two), given by the
/// point it evaluates against.
#[derive(Clone, Debug)]
pub enum DualRep {
    /// Standard representation, optionally twisted by the value of an
    /// unramified character at the uniformizer.
    Std { group: GroupType, twist: Rat },
    /// The half-spin representation with highest weight `w_n` of
    /// `Spin/GSpin_{2n}(C)`.
    HalfSpin { group: GroupType },
    /// Tensor of two representations evaluated at a pair of points.
    Tensor(Box<DualRep>, Box<DualRep>),
}

impl DualRep {
    pub fn std(group: GroupType) -> Self {
        DualRep::Std {
            group,
            twist: Rat::one(),
        }
    }

    pub fn std_twisted(group: GroupType, twist: Rat) -> Self {
        DualRep::Std { group, twist }
    }

    pub fn half_spin(group: GroupType) -> Self {
        DualRep::HalfSpin { group }
    }

    pub fn tensor(a: DualRep, b: DualRep) -> Self {
        DualRep::Tensor(Box::new(a), Box::new(b))
    }

    /// Number of points this representation consumes from the bundle.
    fn arity(&self) -> usize {
        match self {
            DualRep::Std { .. } | DualRep::HalfSpin { .. } => 1,
            DualRep::Tensor(a, b) => a.arity() + b.arity(),
        }
    }
}

/// The multiset of weight values of the representation at the given
/// points, one rational per weight; the cardinality is the dimension.
pub fn rep_weights(rep: &DualRep, points: &[&SatakePoint]) -> Vec<Rat> {
    assert_eq!(points.len(), rep.arity(), "wrong number of points");
    match rep {
        DualRep::Std { group, twist } => {
            let vals = std_weight_values(*group, points[0]);
            vals.into_iter().map(|v| v * twist).collect()
        }
        DualRep::HalfSpin { group } => half_spin_values(*group, points[0]),
        DualRep::Tensor(a, b) => {
            let na = a.arity();
            let va = rep_weights(a, &points[..na]);
            let vb = rep_weights(b, &points[na..]);
            let mut out = Vec::with_capacity(va.len() * vb.len());
            for x in &va {
                for y in &vb {
                    out.push(x * y);
                }
            }
            out
        }
    }
}

fn std_weight_values(group: GroupType, point: &SatakePoint) -> Vec<Rat> {
    assert!(point.group(group), "point/group mismatch");
    match (group, point) {
        (GroupType::Gl(_), SatakePoint::Gl { alphas }) => alphas.clone(),
        (GroupType::Sp(_) | GroupType::GSp(_), SatakePoint::GSp { sigma, z }) => {
            let mu = sigma * sigma;
            let mut out = z.clone();
            out.extend(z.iter().map(|zi| &mu / zi));
            out
        }
        (GroupType::Sp(_), SatakePoint::Sp { z }) => {
            let mut out = z.clone();
            out.extend(z.iter().map(|zi| zi.recip()));
            out
        }
        // the standard representation factors through the special
        // orthogonal quotient: weights are +-eps_i
        (GroupType::SpinD(_) | GroupType::GSpinD(_), SatakePoint::SpinD { g, .. }) => {
            let mut out = g.clone();
            out.extend(g.iter().map(|gi| gi.recip()));
            out
        }
        _ => panic!("point/group mismatch"),
    }
}

fn half_spin_values(group: GroupType, point: &SatakePoint) -> Vec<Rat> {
    let n = group.rank();
    match point {
        SatakePoint::SpinD { g0, g } => {
            assert_eq!(g.len(), n);
            // weights (1; d_1, ..., d_n), d in {0,1}^n with an even number
            // of zeros; value g0 * prod_{d_i = 1} g_i
            let mut out = Vec::with_capacity(1 << (n - 1));
            for mask in 0u32..(1 << n) {
                let zeros = n as u32 - mask.count_ones();
                if zeros % 2 != 0 {
                    continue;
                }
                let mut v = g0.clone();
                for (i, gi) in g.iter().enumerate() {
                    if mask & (1 << i) != 0 {
                        v *= gi;
                    }
                }
                out.push(v);
            }
            out
        }
        _ => panic!("half-spin weights need a D-type point"),
    }
}

/// `prod_w (1 - w(points) * var)^{-1}` truncated to the box.
pub fn l_factor(rep: &DualRep, points: &[&SatakePoint], var: SeriesVar, bx: SeriesBox) -> BiSeries {
    let (xe, ye) = var.monomial_exps();
    let mut out = BiSeries::one(bx);
    for w in rep_weights(rep, points) {
        let f = geom_inverse(&ExactScalar::from_rat(w), xe, ye, bx);
        out = out.mul(&f);
    }
    out
}

/// The five character-sum expansions compared against L-factor products.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CauchyCase {
    /// `L(s, tau_n x pi_2)`, `n >= 2`
    A,
    /// `L(s, tau_2 x pi_m)`, `m >= 4`
    B,
    /// `L(s, tau_n x pi_3)`, `n >= 2` (six indices; the last vanishes
    /// identically for `n = 2`)
    C,
    /// `L(s, sigma_4, std) L(w, sigma_4, Spin)` with zeta prefactors
    D,
    /// `L(s, sigma_5, Spin)`
    E,
}

fn char_gsp(n: usize, coords: Vec<i64>, k0: i64, pt: &SatakePoint) -> Rat {
    let w = HighestWeight::gsp(n, coords, k0);
    weyl_character(&w, pt).unwrap().as_rat().unwrap()
}

fn char_gl(n: usize, coords: Vec<i64>, pt: &SatakePoint) -> Rat {
    let w = HighestWeight::gl(n, coords);
    weyl_character(&w, pt).unwrap().as_rat().unwrap()
}

fn char_spin_fund(n: usize, k: &[i64], pt: &SatakePoint) -> Rat {
    let w = HighestWeight::spin_from_fundamental(GroupType::GSpinD(n), k);
    weyl_character(&w, pt).unwrap().as_rat().unwrap()
}

fn pad(mut v: Vec<i64>, n: usize) -> Vec<i64> {
    v.resize(n, 0);
    v
}

/// The truncated character sum for the given case. `points` carries the
/// Satake data in the order the case consumes it.
pub fn cauchy_rhs(case: CauchyCase, points: &[&SatakePoint], ranks: &[usize], bx: SeriesBox) -> BiSeries {
    let mut out = BiSeries::zero(bx);
    let xcap = bx.x / 2; // the X = x^2 exponent cap
    match case {
        CauchyCase::A => {
            let n = ranks[0];
            let tau = points[0];
            let pi = points[1];
            let omega = tau.similitude() * pi.central_value();
            for m1 in 0..=xcap {
                for m2 in 0..=(xcap - m1) / 2 {
                    for m3 in 0..=(xcap - m1 - 2 * m2) / 2 {
                        let e = m1 + 2 * m2 + 2 * m3;
                        let c = rat_pow(&omega, m3)
                            * char_gl(2, vec![m1 + m2, m2], pi)
                            * char_gsp(n, pad(vec![m1 + m2, m2], n), m1 + 2 * m2, tau);
                        out.add_term(ExactScalar::from_rat(c), 2 * e, 0);
                    }
                }
            }
        }
        CauchyCase::B => {
            let m = ranks[0];
            let tau = points[0];
            let pi = points[1];
            assert!(m >= 4);
            for n1 in 0..=xcap {
                for n2 in 0..=(xcap - n1) / 2 {
                    for n3 in 0..=(xcap - n1 - 2 * n2) / 3 {
                        for n4 in 0..=(xcap - n1 - 2 * n2 - 3 * n3) / 2 {
                            for n5 in 0..=(xcap - n1 - 2 * n2 - 3 * n3 - 2 * n4) / 4 {
                                for n6 in
                                    0..=(xcap - n1 - 2 * n2 - 3 * n3 - 2 * n4 - 4 * n5) / 4
                                {
                                    let e = n1 + 2 * n2 + 3 * n3 + 2 * n4 + 4 * n5 + 4 * n6;
                                    let c = char_gsp(
                                        2,
                                        vec![n1 + n2 + n3 + n5, n2 + n5],
                                        e,
                                        tau,
                                    ) * char_gl(
                                        m,
                                        pad(
                                            vec![
                                                n1 + n2 + n3 + n4 + 2 * n5 + n6,
                                                n2 + n3 + n4 + n5 + n6,
                                                n3 + n5 + n6,
                                                n6,
                                            ],
                                            m,
                                        ),
                                        pi,
                                    );
                                    out.add_term(ExactScalar::from_rat(c), 2 * e, 0);
                                }
                            }
                        }
                    }
                }
            }
        }
        CauchyCase::C => {
            let n = ranks[0];
            let tau = points[0];
            let pi = points[1];
            let om_pi = pi.central_value();
            let om_tau = tau.similitude();
            for n1 in 0..=xcap {
                for n2 in 0..=(xcap - n1) / 2 {
                    for n3 in 0..=(xcap - n1 - 2 * n2) / 2 {
                        for n4 in 0..=(xcap - n1 - 2 * n2 - 2 * n3) / 3 {
                            for n5 in 0..=(xcap - n1 - 2 * n2 - 2 * n3 - 3 * n4) / 4 {
                                let rem = xcap - n1 - 2 * n2 - 2 * n3 - 3 * n4 - 4 * n5;
                                let n6cap = if n == 2 { 0 } else { rem / 3 };
                                for n6 in 0..=n6cap {
                                    let e =
                                        n1 + 2 * n2 + 2 * n3 + 3 * n4 + 4 * n5 + 3 * n6;
                                    let c = rat_pow(&om_pi, n4 + n5 + n6)
                                        * rat_pow(&om_tau, n3 + n4 + n5)
                                        * char_gl(3, vec![n1 + n2 + n3 + n5, n2 + n3, 0], pi)
                                        * char_gsp(
                                            n,
                                            pad(
                                                vec![
                                                    n1 + n2 + n4 + n5 + n6,
                                                    n2 + n5 + n6,
                                                    n6,
                                                ],
                                                n,
                                            ),
                                            n1 + 2 * n2 + n4 + 2 * n5 + 3 * n6,
                                            tau,
                                        );
                                    out.add_term(ExactScalar::from_rat(c), 2 * e, 0);
                                }
                            }
                        }
                    }
                }
            }
        }
        CauchyCase::D => {
            let sigma = points[0];
            let ycap = bx.y / 2;
            let mut sum = BiSeries::zero(bx);
            for n1 in 0..=xcap {
                for n3 in 0..=(xcap - n1) {
                    for n2 in 0..=(ycap - n3).max(0) {
                        if n2 + n3 > ycap {
                            continue;
                        }
                        let c = char_spin_fund(4, &[n1, 0, n3, n2], sigma);
                        sum.add_term(
                            ExactScalar::from_rat(c),
                            2 * (n1 + n3),
                            2 * (n2 + n3),
                        );
                    }
                }
            }
            let zs = geom_inverse(&ExactScalar::one(), 4, 0, bx);
            let zw = geom_inverse(&ExactScalar::one(), 0, 4, bx);
            out = zs.mul(&zw).mul(&sum);
        }
        CauchyCase::E => {
            let sigma = points[0];
            let omega = sigma.central_value();
            for n1 in 0..=xcap {
                for n2 in 0..=(xcap - n1) / 2 {
                    let e = n1 + 2 * n2;
                    let c = rat_pow(&omega, n2) * char_spin_fund(5, &[n2, 0, 0, 0, n1], sigma);
                    out.add_term(ExactScalar::from_rat(c), 2 * e, 0);
                }
            }
        }
    }
    out
}

/// The L-factor product that each Cauchy case expands (the left side of
/// the identity).
pub fn cauchy_lhs(case: CauchyCase, points: &[&SatakePoint], ranks: &[usize], bx: SeriesBox) -> BiSeries {
    match case {
        CauchyCase::A => {
            let n = ranks[0];
            let rep = DualRep::tensor(DualRep::std(GroupType::GSp(n)), DualRep::std(GroupType::Gl(2)));
            l_factor(&rep, &[points[0], points[1]], SeriesVar::X, bx)
        }
        CauchyCase::B => {
            let m = ranks[0];
            let rep = DualRep::tensor(DualRep::std(GroupType::GSp(2)), DualRep::std(GroupType::Gl(m)));
            l_factor(&rep, &[points[0], points[1]], SeriesVar::X, bx)
        }
        CauchyCase::C => {
            let n = ranks[0];
            let rep = DualRep::tensor(DualRep::std(GroupType::GSp(n)), DualRep::std(GroupType::Gl(3)));
            l_factor(&rep, &[points[0], points[1]], SeriesVar::X, bx)
        }
        CauchyCase::D => {
            let std = l_factor(
                &DualRep::std(GroupType::SpinD(4)),
                &[points[0]],
                SeriesVar::X,
                bx,
            );
            let spin = l_factor(
                &DualRep::half_spin(GroupType::SpinD(4)),
                &[points[0]],
                SeriesVar::Y,
                bx,
            );
            std.mul(&spin)
        }
        CauchyCase::E => l_factor(
            &DualRep::half_spin(GroupType::GSpinD(5)),
            &[points[0]],
            SeriesVar::X,
            bx,
        ),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactring::rat;
    use crate::rootchar::{random_satake, SatakeConstraint};

    #[test]
    fn gl1_std_factor() {
        let bx = SeriesBox::new(4, 0);
        let p = SatakePoint::Gl {
            alphas: vec![rat(3, 2)],
        };
        let f = l_factor(&DualRep::std(GroupType::Gl(1)), &[&p], SeriesVar::X, bx);
        let mut expect = BiSeries::one(bx);
        expect.add_term(ExactScalar::from_rat(rat(3, 2)), 2, 0);
        expect.add_term(ExactScalar::from_rat(rat(9, 4)), 4, 0);
        assert_eq!(f, expect);
    }

    #[test]
    fn tensor_gl1_gl1_geometric() {
        let bx = SeriesBox::new(6, 0);
        let p = SatakePoint::Gl {
            alphas: vec![rat(2, 1)],
        };
        let q = SatakePoint::Gl {
            alphas: vec![rat(5, 3)],
        };
        let rep = DualRep::tensor(DualRep::std(GroupType::Gl(1)), DualRep::std(GroupType::Gl(1)));
        let f = l_factor(&rep, &[&p, &q], SeriesVar::X, bx);
        let g = geom_inverse(&ExactScalar::from_rat(rat(10, 3)), 2, 0, bx);
        assert_eq!(f, g);
    }

    #[test]
    fn std_gsp4_weights() {
        let p = random_satake(GroupType::GSp(2), SatakeConstraint::None, 1);
        let w = rep_weights(&DualRep::std(GroupType::GSp(2)), &[&p]);
        assert_eq!(w.len(), 4);
        if let SatakePoint::GSp { sigma, z } = &p {
            let mu = sigma * sigma;
            assert!(w.contains(&z[0]));
            assert!(w.contains(&(&mu / &z[1])));
        }
    }

    #[test]
    fn spin8_has_eight_weights() {
        let p = random_satake(GroupType::SpinD(4), SatakeConstraint::None, 2);
        let w = rep_weights(&DualRep::half_spin(GroupType::SpinD(4)), &[&p]);
        assert_eq!(w.len(), 8);
    }

    #[test]
    fn tensor_x2_coefficient_is_weight_sum() {
        let bx = SeriesBox::new(2, 0);
        let tau = random_satake(GroupType::GSp(2), SatakeConstraint::None, 3);
        let pi = random_satake(GroupType::Gl(2), SatakeConstraint::None, 4);
        let rep = DualRep::tensor(DualRep::std(GroupType::GSp(2)), DualRep::std(GroupType::Gl(2)));
        let f = l_factor(&rep, &[&tau, &pi], SeriesVar::X, bx);
        let total: Rat = rep_weights(&rep, &[&tau, &pi]).into_iter().sum();
        assert_eq!(f.coeff(2, 0), ExactScalar::from_rat(total));
    }

    #[test]
    fn even_support_always() {
        let bx = SeriesBox::new(6, 6);
        let p = random_satake(GroupType::GSpinD(4), SatakeConstraint::None, 5);
        let f = l_factor(&DualRep::half_spin(GroupType::GSpinD(4)), &[&p], SeriesVar::Y, bx);
        assert!(f.even_support());
    }

    #[test]
    fn weight_order_independence() {
        // the product over weights is a multiset product: reversing the
        // weight order gives the same series
        let bx = SeriesBox::new(6, 0);
        let p = random_satake(GroupType::Gl(3), SatakeConstraint::None, 8);
        let weights = rep_weights(&DualRep::std(GroupType::Gl(3)), &[&p]);
        let mut fwd = BiSeries::one(bx);
        for w in &weights {
            fwd = fwd.mul(&geom_inverse(&ExactScalar::from_rat(w.clone()), 2, 0, bx));
        }
        let mut rev = BiSeries::one(bx);
        for w in weights.iter().rev() {
            rev = rev.mul(&geom_inverse(&ExactScalar::from_rat(w.clone()), 2, 0, bx));
        }
        assert_eq!(fwd, rev);
    }

    #[test]
    fn cauchy_a_low_degree_terms() {
        let bx = SeriesBox::new(2, 0);
        let tau = random_satake(GroupType::GSp(2), SatakeConstraint::None, 10);
        let pi = random_satake(GroupType::Gl(2), SatakeConstraint::None, 11);
        let rhs = cauchy_rhs(CauchyCase::A, &[&tau, &pi], &[2], bx);
        assert!(rhs.coeff(0, 0).is_one());
        // X-degree-1 term comes from (m1, m2, m3) = (1, 0, 0)
        let expect = char_gl(2, vec![1, 0], &pi) * char_gsp(2, vec![1, 0], 1, &tau);
        assert_eq!(rhs.coeff(2, 0), ExactScalar::from_rat(expect));
    }
}
