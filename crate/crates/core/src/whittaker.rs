//! Casselman-Shalika-Shintani evaluation of normalized unramified
//! Whittaker functions at dominant torus elements.
//!
//! The value at a dominant element is a Borel modulus factor
//! `delta_B^{1/2}` (a pure power of `u = q^{1/2}`) times a dual-group
//! character at the Satake point. Non-dominant elements evaluate to zero.
//!
//! Torus dictionaries:
//! - `GL_n(F)`: diagonal valuations are the weight coordinates.
//! - `GSpin_{2n+1}(F)`: torus elements `e_0^*(a_0) e_1^*(a_1) ... ` carry
//!   the weight `(ord a_1, ..., ord a_n)` with similitude twist
//!   `sum ord a_i`; the central `e_0^*` direction acts through the
//!   central character, i.e. the similitude value of the `GSp_{2n}(C)`
//!   Satake point.
//! - `GSp_4(F)` diagonals convert to `GSpin_5(F)` coordinates through the
//!   embedding of `G(SL_2 x SL_2)` into `GSp_4`: for
//!   `t = diag(t_1, t_2, t_3, t_4)` one has `a_0 = t_4`,
//!   `a_1 = t_2 / t_4`, `a_2 = t_3 / t_4`.
//! - `GSO_{2n}(F)` diagonals are read off as the integral cocharacter
//!   `(ord lambda; ord u_1, ..., ord u_n)` on the extended dual lattice;
//!   central directions and `omega`-twists come out automatically.

use crate::exactring::{ExactScalar, Rat};
use crate::rootchar::{weyl_character, GroupType, HighestWeight, SatakePoint};


#[derive(Debug, thiserror::Error)]
pub enum WhittakerError {
    #[error("point does not belong to the dual group of {0:?}")]
    GroupMismatch(PadicGroup),
    #[error("diagonal is not in the torus of {0:?}: {1}")]
    NotInTorus(PadicGroup, String),
    #[error(transparent)]
    Char(#[from] crate::rootchar::CharError),
}

/// The p-adic groups whose unramified Whittaker functions we evaluate.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PadicGroup {
    /// `GL_n(F)`
    Gl(usize),
    /// `GSpin_{2n+1}(F)`; parameter is `n`
    GSpinOdd(usize),
    /// `GSO_{2n}(F)`; parameter is `n`
    GSOEven(usize),
}

/// Valuation vector of a torus element in the paper's coordinates.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Cocharacter {
    pub group: PadicGroup,
    /// `GL_n`: diagonal valuations. `GSpin_{2n+1}`: the `e_i^*` exponents.
    /// `GSO_{2n}`: valuations of `u_1, ..., u_n`.
    pub exps: Vec<i64>,
    /// `GSpin_{2n+1}`: the central `e_0^*` exponent. `GSO_{2n}`: the
    /// valuation of the similitude. Unused for `GL_n`.
    pub central: i64,
}

impl Cocharacter {
    pub fn gl(exps: Vec<i64>) -> Self {
        Cocharacter {
            group: PadicGroup::Gl(exps.len()),
            exps,
            central: 0,
        }
    }

    pub fn gspin_odd(n: usize, mut exps: Vec<i64>, central: i64) -> Self {
        assert!(exps.len() <= n);
        exps.resize(n, 0);
        Cocharacter {
            group: PadicGroup::GSpinOdd(n),
            exps,
            central,
        }
    }

    /// Diagonal `GSp_4(F)` element by valuations `(t_1, t_2, t_3, t_4)`,
    /// converted to `GSpin_5(F)` torus coordinates.
    pub fn gsp4_diag(t: [i64; 4]) -> Result<Self, WhittakerError> {
        if t[0] + t[3] != t[1] + t[2] {
            return Err(WhittakerError::NotInTorus(
                PadicGroup::GSpinOdd(2),
                format!("similitude mismatch in {:?}", t),
            ));
        }
        Ok(Cocharacter {
            group: PadicGroup::GSpinOdd(2),
            exps: vec![t[1] - t[3], t[2] - t[3]],
            central: t[3],
        })
    }

    /// Diagonal `GSO_{2n}(F)` element by the valuations of all `2n`
    /// entries; checks the torus shape `t_i t_{2n+1-i} = lambda`.
    pub fn gso_diag(n: usize, ords: &[i64]) -> Result<Self, WhittakerError> {
        assert_eq!(ords.len(), 2 * n);
        let lambda = ords[0] + ords[2 * n - 1];
        for i in 0..n {
            if ords[i] + ords[2 * n - 1 - i] != lambda {
                return Err(WhittakerError::NotInTorus(
                    PadicGroup::GSOEven(n),
                    format!("entries {:?} do not satisfy the torus shape", ords),
                ));
            }
        }
        Ok(Cocharacter {
            group: PadicGroup::GSOEven(n),
            exps: ords[..n].to_vec(),
            central: lambda,
        })
    }

    /// The element `t_{(k_1, ..., k_n)}` built from simple-root
    /// valuations (all nonnegative for dominant elements).
    pub fn gso_from_root_valuations(n: usize, k: &[i64]) -> Self {
        assert_eq!(k.len(), n);
        // u_i = prod_{j >= i} alpha_j-contributions; the last two entries
        // come from the fork: u_{n-1} = k_{n-1}? derived via the standard
        // fundamental coweights; easiest is to solve backwards:
        //   k_i = u_i - u_{i+1} (i < n-1), k_{n-1} = u_{n-1} - u_n,
        //   k_n = u_{n-1} + u_n - lambda
        // with the normalization u_n = k_n, lambda = chosen so the last
        // equation holds with u_n free; we pin u_n and lambda to match
        // the displayed elements: u_n = k_n, lambda = k_{n-1} + k_n.
        let mut u = vec![0i64; n];
        u[n - 1] = k[n - 1];
        u[n - 2] = k[n - 2] + k[n - 1];
        for i in (0..n.saturating_sub(2)).rev() {
            u[i] = u[i + 1] + k[i];
        }
        let lambda = k[n - 2] + k[n - 1];
        Cocharacter {
            group: PadicGroup::GSOEven(n),
            exps: u,
            central: lambda,
        }
    }
}

/// Valuations of the simple roots at the torus element.
fn simple_root_valuations(c: &Cocharacter) -> Vec<i64> {
    match c.group {
        PadicGroup::Gl(n) => (0..n - 1).map(|i| c.exps[i] - c.exps[i + 1]).collect(),
        PadicGroup::GSpinOdd(n) => {
            let mut v: Vec<i64> = (0..n - 1).map(|i| c.exps[i] - c.exps[i + 1]).collect();
            v.push(c.exps[n - 1]);
            v
        }
        PadicGroup::GSOEven(n) => {
            let mut v: Vec<i64> = (0..n - 1).map(|i| c.exps[i] - c.exps[i + 1]).collect();
            v.push(c.exps[n - 2] + c.exps[n - 1] - c.central);
            v
        }
    }
}

/// `|alpha(t)| <= 1` for every simple root.
pub fn is_dominant(c: &Cocharacter) -> bool {
    simple_root_valuations(c).iter().all(|&v| v >= 0)
}

/// `delta_B^{1/2}` as a pure power of `u`: `u^{-<2 rho, c>}`.
pub fn delta_half(c: &Cocharacter) -> ExactScalar {
    ExactScalar::u_power(-two_rho_pairing(c))
}

fn two_rho_pairing(c: &Cocharacter) -> i64 {
    match c.group {
        PadicGroup::Gl(n) => {
            let n = n as i64;
            c.exps
                .iter()
                .enumerate()
                .map(|(i, &k)| (n - 1 - 2 * i as i64) * k)
                .sum()
        }
        PadicGroup::GSpinOdd(n) => {
            let n = n as i64;
            c.exps
                .iter()
                .enumerate()
                .map(|(i, &k)| (2 * (n - 1 - i as i64) + 1) * k)
                .sum()
        }
        PadicGroup::GSOEven(n) => {
            let n64 = n as i64;
            let from_u: i64 = c
                .exps
                .iter()
                .enumerate()
                .map(|(i, &k)| 2 * (n64 - 1 - i as i64) * k)
                .sum();
            from_u - n64 * (n64 - 1) / 2 * c.central
        }
    }
}

/// Casselman-Shalika value of the normalized unramified Whittaker
/// function at the torus element `c`, as a Laurent polynomial in `u`.
pub fn cs_value(c: &Cocharacter, point: &SatakePoint) -> Result<ExactScalar, WhittakerError> {
    if !is_dominant(c) {
        return Ok(ExactScalar::zero());
    }
    let dh = delta_half(c);
    match c.group {
        PadicGroup::Gl(n) => {
            let w = HighestWeight::gl(n, c.exps.clone());
            if !point.group(GroupType::Gl(n)) {
                return Err(WhittakerError::GroupMismatch(c.group));
            }
            let ch = weyl_character(&w, point)?;
            Ok(dh.mul(&ch))
        }
        PadicGroup::GSpinOdd(n) => {
            if !point.group(GroupType::GSp(n)) {
                return Err(WhittakerError::GroupMismatch(c.group));
            }
            let k0: i64 = c.exps.iter().sum();
            let w = HighestWeight::gsp(n, c.exps.clone(), k0);
            let ch = weyl_character(&w, point)?;
            let omega = point.similitude();
            let central = ExactScalar::from_rat(crate::exactring::rat_pow(&omega, c.central));
            Ok(dh.mul(&ch).mul(&central))
        }
        PadicGroup::GSOEven(n) => {
            if !point.group(GroupType::GSpinD(n)) {
                return Err(WhittakerError::GroupMismatch(c.group));
            }
            let w = HighestWeight::spin_from_lattice(
                GroupType::GSpinD(n),
                c.central,
                c.exps.clone(),
            );
            let ch = weyl_character(&w, point)?;
            Ok(dh.mul(&ch))
        }
    }
}

/// `omega(varpi)` of the representation attached to the point: the value
/// the central direction contributes per unit of central valuation.
pub fn central_character_value(point: &SatakePoint) -> Rat {
    point.central_value()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactring::{rat_int, render_scalar};
    use crate::rootchar::{random_satake, SatakeConstraint};

    #[test]
    fn dominance_examples() {
        assert!(is_dominant(&Cocharacter::gl(vec![2, 1, 0])));
        assert!(!is_dominant(&Cocharacter::gl(vec![0, 1])));
        // GSpin_5 with k = (1,1): simple roots e1-e2 and e2
        assert!(is_dominant(&Cocharacter::gspin_odd(2, vec![1, 1], 0)));
        assert!(!is_dominant(&Cocharacter::gspin_odd(2, vec![0, 1], 0)));
    }

    #[test]
    fn delta_half_examples() {
        let z = Cocharacter::gl(vec![0, 0, 0]);
        assert!(delta_half(&z).is_one());
        assert_eq!(
            delta_half(&Cocharacter::gl(vec![1, 0])),
            ExactScalar::u_power(-1)
        );
        // 2 rho of SO_5 is (3, 1)
        assert_eq!(
            delta_half(&Cocharacter::gspin_odd(2, vec![1, 0], 0)),
            ExactScalar::u_power(-3)
        );
    }

    #[test]
    fn cs_gl2_values() {
        let p = SatakePoint::Gl {
            alphas: vec![rat_int(2), rat_int(3)],
        };
        let v0 = cs_value(&Cocharacter::gl(vec![0, 0]), &p).unwrap();
        assert!(v0.is_one());
        let v = cs_value(&Cocharacter::gl(vec![1, 0]), &p).unwrap();
        assert_eq!(render_scalar(&v), "5*u^-1");
        let z = cs_value(&Cocharacter::gl(vec![0, 1]), &p).unwrap();
        assert!(z.is_zero());
    }

    #[test]
    fn vanishing_quantified_small() {
        let p = random_satake(GroupType::Gl(3), SatakeConstraint::None, 3);
        for a in -3i64..=3 {
            for b in -3i64..=3 {
                for c in -3i64..=3 {
                    let coc = Cocharacter::gl(vec![a, b, c]);
                    let v = cs_value(&coc, &p).unwrap();
                    assert_eq!(v.is_zero(), !(a >= b && b >= c), "at {:?}", (a, b, c));
                }
            }
        }
    }

    #[test]
    fn central_exponent_factors_out() {
        let p = random_satake(GroupType::GSp(2), SatakeConstraint::None, 9);
        let omega = p.similitude();
        for k0 in [-2i64, 1, 3] {
            let with = cs_value(&Cocharacter::gspin_odd(2, vec![2, 1], k0), &p).unwrap();
            let without = cs_value(&Cocharacter::gspin_odd(2, vec![2, 1], 0), &p).unwrap();
            let scale = ExactScalar::from_rat(crate::exactring::rat_pow(&omega, k0));
            assert_eq!(with, without.mul(&scale));
        }
    }

    #[test]
    fn gl_shift_by_center() {
        let p = random_satake(GroupType::Gl(3), SatakeConstraint::None, 17);
        let omega = p.central_value();
        let base = cs_value(&Cocharacter::gl(vec![2, 1, 0]), &p).unwrap();
        let shifted = cs_value(&Cocharacter::gl(vec![3, 2, 1]), &p).unwrap();
        assert_eq!(shifted, base.mul(&ExactScalar::from_rat(omega)));
    }

    #[test]
    fn gsp4_dictionary_round_trip() {
        // diag(a0 a1 a2, a0 a1, a0 a2, a0) recovers (a1, a2; a0)
        let c = Cocharacter::gsp4_diag([6, 4, 3, 1]).unwrap();
        assert_eq!(c.exps, vec![3, 2]);
        assert_eq!(c.central, 1);
        assert!(Cocharacter::gsp4_diag([1, 1, 0, 1]).is_err());
    }

    #[test]
    fn gso_diag_round_trip() {
        // t_{(k1..k4)} for GSO_8 from the simple-root valuations
        let c = Cocharacter::gso_from_root_valuations(4, &[2, 1, 1, 3]);
        assert_eq!(c.exps, vec![7, 5, 4, 3]);
        assert_eq!(c.central, 4);
        let ords: Vec<i64> = vec![7, 5, 4, 3, 1, 0, -1, -3];
        let c2 = Cocharacter::gso_diag(4, &ords).unwrap();
        assert_eq!(c2, c);
        assert!(is_dominant(&c));
    }
}
