//! Hypotheses of the central limit and Donsker theorems.

use serde::{Deserialize, Serialize};

use super::classify::{DecayShape, MomentOrder};
use crate::dependence::DependenceFamily;
use crate::error::{Error, Result};
use crate::scalar::Field;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CltCondition<T> {
    pub threshold: T,
    pub satisfied: bool,
}

fn check_m<T: Field>(m: &T) -> Result<()> {
    if m.clone() > T::int(2) {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("moment order m = {m:?} must exceed 2")))
    }
}

/// `4 + 2/(m−2)`.
fn lambda_threshold<T: Field>(m: &T) -> T {
    T::int(4) + T::int(2) / (m.clone() - T::int(2))
}

/// Decay exponent threshold of the central limit theorem:
/// `κ > 2 + 1/(m−2)` or `λ > 4 + 2/(m−2)`, strictly.
pub fn clt_condition<T: Field>(
    m: &T,
    family: DependenceFamily,
    decay_exp: &T,
) -> Result<CltCondition<T>> {
    check_m(m)?;
    let threshold = match family {
        DependenceFamily::Kappa => T::int(2) + T::one() / (m.clone() - T::int(2)),
        DependenceFamily::Lambda => lambda_threshold(m),
        other => {
            return Err(Error::Unsupported(format!(
                "no central limit condition for {other}-dependence"
            )))
        }
    };
    let satisfied = decay_exp.clone() > threshold;
    Ok(CltCondition {
        threshold,
        satisfied,
    })
}

/// Requirement for the empirical process of a Bernoulli shift to converge.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "case", rename_all = "snake_case")]
pub enum DonskerRequirement<T> {
    /// Geometric weights and inputs: no exponent test.
    Always,
    /// The input decay exponent must exceed `required_a`.
    InputExponent { required_a: T },
    /// The shift exponent must exceed `required_b`; the input exponent is free.
    ShiftExponent { b: T, required_b: T },
}

impl<T: Field> DonskerRequirement<T> {
    pub fn required_a(&self) -> Option<&T> {
        match self {
            DonskerRequirement::InputExponent { required_a } => Some(required_a),
            _ => None,
        }
    }

    pub fn satisfied(&self, decay_a: &T) -> bool {
        match self {
            DonskerRequirement::Always => true,
            DonskerRequirement::InputExponent { required_a } => decay_a.clone() > required_a.clone(),
            DonskerRequirement::ShiftExponent { b, required_b } => b.clone() > required_b.clone(),
        }
    }
}

/// Case-matched Donsker requirement for `X_t = H(Y_{t−·})` with λ-dependent
/// inputs.
pub fn donsker_condition<T: Field>(
    ell: &T,
    b_exp: &T,
    m: &T,
    m_prime: &MomentOrder<T>,
    b_kind: DecayShape,
    input_kind: DecayShape,
) -> Result<DonskerRequirement<T>> {
    check_m(m)?;
    let zero = T::zero();
    let one = T::one();
    let two = T::int(2);
    if ell.clone() < zero {
        return Err(Error::InvalidParameter("ell must be nonnegative".into()));
    }
    if !(b_exp.clone() > zero.clone()) {
        return Err(Error::InvalidParameter("shift exponent b must be positive".into()));
    }
    if let Some(mp) = m_prime.finite() {
        let need = (ell.clone() + one.clone()) * m.clone();
        if mp.clone() < need {
            return Err(Error::InsufficientMoments(format!(
                "m' = {mp:?} is below (ell+1)*m = {need:?}"
            )));
        }
        if !(mp.clone() > one.clone() + ell.clone()) {
            return Err(Error::InsufficientMoments("m' must exceed 1 + ell".into()));
        }
    }
    let base = lambda_threshold(m);
    let b = b_exp.clone();
    let inv_ratio = || T::one() / m_prime.lambda_ratio(ell);
    let req = match (b_kind, input_kind) {
        (DecayShape::Geometric, DecayShape::Geometric) => DonskerRequirement::Always,
        (DecayShape::Riemannian, DecayShape::Riemannian) => {
            if *ell == zero {
                if !(b.clone() > one.clone()) {
                    return Err(Error::InvalidParameter("ell = 0 needs b > 1".into()));
                }
                DonskerRequirement::InputExponent {
                    required_a: (one.clone() + b.clone()) / (b - one) * base,
                }
            } else {
                if !(b.clone() > two.clone()) {
                    return Err(Error::InvalidParameter("ell > 0 needs b > 2".into()));
                }
                DonskerRequirement::InputExponent {
                    required_a: b.clone() / (b - two) * inv_ratio() * base,
                }
            }
        }
        (DecayShape::Geometric, DecayShape::Riemannian) => DonskerRequirement::InputExponent {
            required_a: inv_ratio() * base,
        },
        (DecayShape::Riemannian, DecayShape::Geometric) => {
            let required_b =
                (T::int(6) * m.clone() - T::int(10)) / (m.clone() - two);
            DonskerRequirement::ShiftExponent { b, required_b }
        }
    };
    Ok(req)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Ratio;

    type Q = Ratio<i64>;

    fn q(n: i64) -> Q {
        Q::from_integer(n)
    }

    #[test]
    fn clt_thresholds() {
        let c = clt_condition(&q(4), DependenceFamily::Kappa, &q(3)).unwrap();
        assert_eq!(c.threshold, Q::new(5, 2));
        assert!(c.satisfied);
        let c = clt_condition(&q(4), DependenceFamily::Lambda, &q(5)).unwrap();
        assert_eq!(c.threshold, q(5));
        assert!(!c.satisfied);
        let c = clt_condition(&1e12f64, DependenceFamily::Kappa, &3.0).unwrap();
        assert!((c.threshold - 2.0).abs() < 1e-9);
        assert!(clt_condition(&q(2), DependenceFamily::Kappa, &q(3)).is_err());
        assert!(clt_condition(&q(3), DependenceFamily::Eta, &q(3)).is_err());
    }

    #[test]
    fn donsker_cases() {
        let r = donsker_condition(
            &q(0),
            &q(3),
            &q(4),
            &MomentOrder::Infinite,
            DecayShape::Riemannian,
            DecayShape::Riemannian,
        )
        .unwrap();
        assert_eq!(r.required_a(), Some(&q(10)));
        assert!(!r.satisfied(&q(10)));
        assert!(r.satisfied(&Q::new(21, 2)));

        let r = donsker_condition(
            &q(0),
            &q(1),
            &q(4),
            &MomentOrder::Finite(q(4)),
            DecayShape::Geometric,
            DecayShape::Geometric,
        )
        .unwrap();
        assert!(r.satisfied(&Q::new(1, 1000)));

        let r = donsker_condition(
            &q(0),
            &q(9),
            &q(3),
            &MomentOrder::Infinite,
            DecayShape::Riemannian,
            DecayShape::Geometric,
        )
        .unwrap();
        assert_eq!(
            r,
            DonskerRequirement::ShiftExponent {
                b: q(9),
                required_b: q(8)
            }
        );
        assert!(r.satisfied(&q(0)));

        // ℓ = 1, b = 4, m = 4, m' = 8: 4/2 · 8/6 · 5
        let r = donsker_condition(
            &q(1),
            &q(4),
            &q(4),
            &MomentOrder::Finite(q(8)),
            DecayShape::Riemannian,
            DecayShape::Riemannian,
        )
        .unwrap();
        assert_eq!(r.required_a(), Some(&Q::new(40, 3)));

        let r = donsker_condition(
            &q(1),
            &q(4),
            &q(4),
            &MomentOrder::Finite(q(8)),
            DecayShape::Geometric,
            DecayShape::Riemannian,
        )
        .unwrap();
        assert_eq!(r.required_a(), Some(&Q::new(20, 3)));
    }

    #[test]
    fn donsker_preconditions() {
        let low_b = donsker_condition(
            &q(1),
            &q(2),
            &q(4),
            &MomentOrder::Infinite,
            DecayShape::Riemannian,
            DecayShape::Riemannian,
        );
        assert!(low_b.is_err());
        let low_moment = donsker_condition(
            &q(1),
            &q(4),
            &q(4),
            &MomentOrder::Finite(q(7)),
            DecayShape::Riemannian,
            DecayShape::Riemannian,
        );
        assert!(matches!(low_moment, Err(Error::InsufficientMoments(_))));
    }
}
