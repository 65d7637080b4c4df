//! Standalone verifiers: the G-function closed form, the two character
//! product identities, and the Cauchy-type series identities.
//!
//! Every check is exact, coefficient by coefficient.

use crate::exactring::{rat_pow, ExactScalar, LaurentPoly, Rat, SeriesBox};
use crate::lfactor::{cauchy_lhs, cauchy_rhs, CauchyCase};
use crate::report::{IdentityReport, Mismatch};
use crate::rootchar::{
    random_satake, weyl_character, GroupType, HighestWeight, SatakeConstraint, SatakePoint,
};
use num::{One, Zero};

fn char_value(w: &HighestWeight, p: &SatakePoint) -> Rat {
    weyl_character(w, p).unwrap().as_rat().unwrap()
}

/// `chi(kbar) chi(jbar) = sum_t chi(max+t, min-t, 0, ...)` for `GL_n`.
pub fn check_schur_gl(n: usize, k: i64, j: i64, point: &SatakePoint) -> IdentityReport {
    let rb = IdentityReport::new("schur-gl")
        .param("n", n)
        .param("k", k)
        .param("j", j);
    let bar = |v: i64| {
        let mut c = vec![0i64; n];
        c[0] = v;
        HighestWeight::gl(n, c)
    };
    let lhs = char_value(&bar(k), point) * char_value(&bar(j), point);
    let (hi, lo) = (k.max(j), k.min(j));
    let mut rhs = Rat::zero();
    for t in 0..=lo {
        let mut c = vec![0i64; n];
        c[0] = hi + t;
        c[1] = lo - t;
        rhs += char_value(&HighestWeight::gl(n, c), point);
    }
    if lhs == rhs {
        rb.pass()
    } else {
        rb.fail(Mismatch {
            monomial: "1".into(),
            left: lhs.to_string(),
            right: rhs.to_string(),
        })
    }
}

/// `chi(kbar) chi(jbar) = chi(k-1 bar) chi(j-1 bar) + sum_p chi(k+j-p, p)`
/// for `Sp_{2n}` at the similitude-normalized point.
pub fn check_schur_sp(n: usize, k: i64, j: i64, point: &SatakePoint) -> IdentityReport {
    assert!(n >= 2 && k >= 1 && j >= 1);
    let rb = IdentityReport::new("schur-sp")
        .param("n", n)
        .param("k", k)
        .param("j", j);
    // normalize to the similitude-one point
    let norm = match point {
        SatakePoint::GSp { sigma, z } => SatakePoint::Sp {
            z: z.iter().map(|zi| zi / sigma).collect(),
        },
        other => other.clone(),
    };
    let bar = |v: i64| {
        let mut c = vec![0i64; n];
        c[0] = v;
        HighestWeight::sp(n, c)
    };
    let lhs = char_value(&bar(k), &norm) * char_value(&bar(j), &norm);
    let mut rhs = char_value(&bar(k - 1), &norm) * char_value(&bar(j - 1), &norm);
    for p in 0..=k.min(j) {
        let mut c = vec![0i64; n];
        c[0] = k + j - p;
        c[1] = p;
        rhs += char_value(&HighestWeight::sp(n, c), &norm);
    }
    if lhs == rhs {
        rb.pass()
    } else {
        rb.fail(Mismatch {
            monomial: "1".into(),
            left: lhs.to_string(),
            right: rhs.to_string(),
        })
    }
}

/// One term of a G-function value: `coeff * u^{u_exp} * S^{s_exp}` where
/// `S = q^{-s0}` in the G-function's own complex parameter `s0`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GTerm {
    pub coeff: Rat,
    pub u_exp: i64,
    pub s_exp: i64,
}

/// The closed form: `|a|^{1-s} chi^{-1}(a) sum_{r=0}^{ord}
/// (chi(varpi) q^{1-2s})^r` for `ord(a) >= 0`, zero otherwise.
pub fn g_function(ord_a: i64, chi: &Rat) -> Vec<GTerm> {
    assert!(!chi.is_zero());
    if ord_a < 0 {
        return Vec::new();
    }
    (0..=ord_a)
        .map(|r| GTerm {
            coeff: rat_pow(chi, r - ord_a),
            u_exp: 2 * (r - ord_a),
            s_exp: 2 * r - ord_a,
        })
        .collect()
}

/// The proof's intermediate form `|a|^s sum_k (q^{-1+2s} chi^{-1})^k`.
fn g_intermediate(ord_a: i64, chi: &Rat) -> Vec<GTerm> {
    if ord_a < 0 {
        return Vec::new();
    }
    (0..=ord_a)
        .map(|k| GTerm {
            coeff: rat_pow(chi, -k),
            u_exp: -2 * k,
            s_exp: ord_a - 2 * k,
        })
        .collect()
}

fn canon(mut v: Vec<GTerm>) -> Vec<GTerm> {
    v.sort_by_key(|t| (t.s_exp, t.u_exp));
    v
}

/// Substitute the caller's parameter `s0 = (w - s + 1)/2` so that
/// `S = q^{-s0} = x^{-1} y u^{-1}` on the half grid.
pub fn g_to_laurent(terms: &[GTerm]) -> LaurentPoly {
    let mut out = LaurentPoly::zero();
    for t in terms {
        out.add_term(
            ExactScalar::monomial(t.coeff.clone(), t.u_exp - t.s_exp),
            -t.s_exp,
            t.s_exp,
        );
    }
    out
}

/// Closed form against the intermediate form, for all orders up to
/// `ord_max`; also asserts the term count `ord + 1`.
pub fn check_g_equivalence(ord_max: i64, chi: &Rat) -> IdentityReport {
    let rb = IdentityReport::new("g-function")
        .param("ord_max", ord_max)
        .param("chi", chi);
    for ord in 0..=ord_max {
        let closed = canon(g_function(ord, chi));
        let inter = canon(g_intermediate(ord, chi));
        if closed.len() as i64 != ord + 1 {
            return rb.fail(Mismatch {
                monomial: format!("ord={}", ord),
                left: format!("{} terms", closed.len()),
                right: format!("{} terms", ord + 1),
            });
        }
        if closed != inter {
            return rb.fail(Mismatch {
                monomial: format!("ord={}", ord),
                left: format!("{:?}", closed),
                right: format!("{:?}", inter),
            });
        }
    }
    rb.pass()
}

fn points_for_case(case: CauchyCase, ranks: &[usize], seed: u64) -> Vec<SatakePoint> {
    match case {
        CauchyCase::A => vec![
            random_satake(GroupType::GSp(ranks[0]), SatakeConstraint::None, seed),
            random_satake(GroupType::Gl(2), SatakeConstraint::None, seed.wrapping_add(1)),
        ],
        CauchyCase::B => vec![
            random_satake(GroupType::GSp(2), SatakeConstraint::None, seed),
            random_satake(GroupType::Gl(ranks[0]), SatakeConstraint::None, seed.wrapping_add(1)),
        ],
        CauchyCase::C => vec![
            random_satake(GroupType::GSp(ranks[0]), SatakeConstraint::None, seed),
            random_satake(GroupType::Gl(3), SatakeConstraint::None, seed.wrapping_add(1)),
        ],
        CauchyCase::D => vec![random_satake(
            GroupType::SpinD(4),
            SatakeConstraint::TrivialCentral,
            seed,
        )],
        CauchyCase::E => vec![random_satake(
            GroupType::GSpinD(5),
            SatakeConstraint::None,
            seed,
        )],
    }
}

/// Cauchy-type identity: the L-factor product equals the character sum,
/// exactly to the box, for each seeded point.
pub fn check_cauchy(
    case: CauchyCase,
    ranks: &[usize],
    bx: SeriesBox,
    trials: u32,
    seed: u64,
) -> IdentityReport {
    let rb = IdentityReport::new(format!("cauchy-{:?}", case).to_lowercase())
        .param("ranks", format!("{:?}", ranks))
        .param("box", format!("({},{})", bx.x, bx.y))
        .param("trials", trials)
        .param("seed", seed);
    for t in 0..trials {
        let s = seed.wrapping_add(1000 * t as u64);
        let pts = points_for_case(case, ranks, s);
        let refs: Vec<&SatakePoint> = pts.iter().collect();
        let lhs = cauchy_lhs(case, &refs, ranks, bx);
        let rhs = cauchy_rhs(case, &refs, ranks, bx);
        if let Some((mono, l, r)) = lhs.first_mismatch(&rhs) {
            return rb.param("failing_trial", t).fail(Mismatch {
                monomial: format!("x^{} y^{}", mono.0, mono.1),
                left: crate::exactring::render_scalar(&l),
                right: crate::exactring::render_scalar(&r),
            });
        }
        if !lhs.even_support() {
            return rb.param("failing_trial", t).fail(Mismatch {
                monomial: "odd support".into(),
                left: "lhs".into(),
                right: "even support expected".into(),
            });
        }
    }
    rb.pass()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactring::{rat, rat_int};

    #[test]
    fn schur_gl_n2_k1_j1() {
        // (a1 + a2)^2 = chi(2,0) + chi(1,1)
        let p = SatakePoint::Gl {
            alphas: vec![rat_int(2), rat_int(3)],
        };
        assert!(check_schur_gl(2, 1, 1, &p).pass);
    }

    #[test]
    fn schur_gl_k0_collapses() {
        let p = random_satake(GroupType::Gl(3), SatakeConstraint::None, 77);
        assert!(check_schur_gl(3, 0, 4, &p).pass);
    }

    #[test]
    fn schur_gl_oracle_point() {
        let p = SatakePoint::Gl {
            alphas: vec![rat_int(2), rat_int(3), rat_int(5)],
        };
        // independent weight-expansion oracle for chi(2,0,0) * chi(1,0,0)
        let lhs = {
            let h2 = |a: &Rat, b: &Rat, c: &Rat| {
                // complete homogeneous of degree 2
                a * a + b * b + c * c + a * b + a * c + b * c
            };
            let (a, b, c) = (rat_int(2), rat_int(3), rat_int(5));
            h2(&a, &b, &c) * (a.clone() + b.clone() + c.clone())
        };
        let rhs = char_value(&HighestWeight::gl(3, vec![3, 0, 0]), &p)
            + char_value(&HighestWeight::gl(3, vec![2, 1, 0]), &p);
        assert_eq!(lhs, rhs);
        assert!(check_schur_gl(3, 2, 1, &p).pass);
    }

    #[test]
    fn schur_sp_n2_k1_j1() {
        // chi(1,0)^2 = 1 + chi(2,0) + chi(1,1)
        let p = random_satake(GroupType::Sp(2), SatakeConstraint::None, 5);
        assert!(check_schur_sp(2, 1, 1, &p).pass);
        let (lhs, rhs) = {
            let bar = |v| HighestWeight::sp(2, vec![v, 0]);
            let lhs = char_value(&bar(1), &p) * char_value(&bar(1), &p);
            let rhs = Rat::one()
                + char_value(&HighestWeight::sp(2, vec![2, 0]), &p)
                + char_value(&HighestWeight::sp(2, vec![1, 1]), &p);
            (lhs, rhs)
        };
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn schur_sp_rectangle() {
        let p = random_satake(GroupType::GSp(3), SatakeConstraint::None, 23);
        for k in 1..=3 {
            for j in 1..=3 {
                assert!(check_schur_sp(3, k, j, &p).pass, "failed at ({},{})", k, j);
            }
        }
    }

    #[test]
    fn g_function_unit_and_vanishing() {
        let chi = rat(7, 3);
        let g0 = g_function(0, &chi);
        assert_eq!(g0.len(), 1);
        assert!(g0[0].coeff.is_one() && g0[0].u_exp == 0 && g0[0].s_exp == 0);
        assert!(g_function(-1, &chi).is_empty());
    }

    #[test]
    fn g_function_ord1_shape() {
        // q^{-(1-s)} chi^{-1} (1 + chi q^{1-2s}): terms u^{-2} S^{-1} chi^{-1}
        // and S^{+1}
        let chi = rat(7, 3);
        let g = canon(g_function(1, &chi));
        assert_eq!(
            g,
            vec![
                GTerm {
                    coeff: chi.recip(),
                    u_exp: -2,
                    s_exp: -1
                },
                GTerm {
                    coeff: Rat::one(),
                    u_exp: 0,
                    s_exp: 1
                },
            ]
        );
    }

    #[test]
    fn g_equivalence_to_ord_10() {
        assert!(check_g_equivalence(10, &rat(7, 3)).pass);
        assert!(check_g_equivalence(10, &rat(-2, 5)).pass);
        assert!(check_g_equivalence(10, &rat_int(1)).pass);
    }

    #[test]
    fn cauchy_a_small_box() {
        let r = check_cauchy(CauchyCase::A, &[2], SeriesBox::new(6, 0), 2, 42);
        assert!(r.pass, "{:?}", r.mismatch);
    }

    #[test]
    fn cauchy_e_small_box() {
        let r = check_cauchy(CauchyCase::E, &[], SeriesBox::new(6, 0), 1, 7);
        assert!(r.pass, "{:?}", r.mismatch);
    }

    #[test]
    fn cauchy_d_small_box() {
        let r = check_cauchy(CauchyCase::D, &[], SeriesBox::new(4, 4), 1, 9);
        assert!(r.pass, "{:?}", r.mismatch);
    }
}
