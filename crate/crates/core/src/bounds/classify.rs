//! Closed-form decay envelopes for Bernoulli shifts of dependent inputs.

use serde::{Deserialize, Serialize};

use crate::dependence::DependenceFamily;
use crate::error::{Error, Result};
use crate::scalar::{Field, Real};

/// Shape of a decay hypothesis: `C e^{−b|j|}` or `C(|j|+1)^{−b}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DecayShape {
    Geometric,
    Riemannian,
}

/// Moment order that may be infinite (bounded variables).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MomentOrder<T> {
    Finite(T),
    Infinite,
}

impl<T: Field> MomentOrder<T> {
    pub fn finite(&self) -> Option<&T> {
        match self {
            MomentOrder::Finite(v) => Some(v),
            MomentOrder::Infinite => None,
        }
    }

    /// `(m'−1−ℓ)/(m'−1+ℓ)`, equal to 1 at `m' = ∞`.
    pub fn lambda_ratio(&self, ell: &T) -> T {
        match self {
            MomentOrder::Finite(mp) => {
                let d = mp.clone() - T::one();
                (d.clone() - ell.clone()) / (d + ell.clone())
            }
            MomentOrder::Infinite => T::one(),
        }
    }

    /// `(m'−1−ℓ)/(m'−1)`, equal to 1 at `m' = ∞`.
    pub fn eta_ratio(&self, ell: &T) -> T {
        match self {
            MomentOrder::Finite(mp) => {
                let d = mp.clone() - T::one();
                (d.clone() - ell.clone()) / d
            }
            MomentOrder::Infinite => T::one(),
        }
    }

    /// `(m'−2)/(m'−1)`, equal to 1 at `m' = ∞`.
    fn centered_ratio(&self) -> T {
        match self {
            MomentOrder::Finite(mp) => (mp.clone() - T::int(2)) / (mp.clone() - T::one()),
            MomentOrder::Infinite => T::one(),
        }
    }

    /// `ℓ/(m'−1)`, zero at `m' = ∞`.
    fn growth_ratio(&self, ell: &T) -> T {
        match self {
            MomentOrder::Finite(mp) => ell.clone() / (mp.clone() - T::one()),
            MomentOrder::Infinite => T::zero(),
        }
    }
}

/// `k^{power}·log^{log_power} k·e^{−exp_rate·k}`, up to a constant.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Envelope<T> {
    pub power: T,
    pub log_power: T,
    pub exp_rate: T,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EnvelopeBase {
    Power,
    Exponential,
    Mixed,
}

impl<T: Field> Envelope<T> {
    pub fn power(p: T) -> Self {
        Envelope {
            power: p,
            log_power: T::zero(),
            exp_rate: T::zero(),
        }
    }

    pub fn base(&self) -> EnvelopeBase {
        let no_log = self.log_power == T::zero();
        if self.exp_rate == T::zero() && no_log {
            EnvelopeBase::Power
        } else if self.power == T::zero() && no_log {
            EnvelopeBase::Exponential
        } else {
            EnvelopeBase::Mixed
        }
    }

    /// Polynomial decay exponent `−power` for envelopes without an
    /// exponential factor.
    pub fn decay_exponent(&self) -> Option<T> {
        if self.exp_rate == T::zero() {
            Some(T::zero() - self.power.clone())
        } else {
            None
        }
    }
}

impl<T: Real> Envelope<T> {
    pub fn eval(&self, k: T) -> T {
        k.powf(self.power) * k.ln().powf(self.log_power) * (-self.exp_rate * k).exp()
    }
}

/// Envelope for `λ(k)` or `η(k)` of `X_t = H(Y_{t−·})` given the shape of
/// the shift weights `b_j`, the shape of the input coefficients, the growth
/// exponent `ℓ` and the input moment order `m'`.
///
/// In the geometric/geometric λ case the printed rate mixes in the η rate
/// of the input; here the input rate itself is used.
pub fn classify_decay<T: Field>(
    b_kind: DecayShape,
    input_kind: DecayShape,
    family: DependenceFamily,
    b_exp: &T,
    input_exp: &T,
    ell: &T,
    m_prime: &MomentOrder<T>,
) -> Result<Envelope<T>> {
    let zero = T::zero();
    let one = T::one();
    let two = T::int(2);
    if !(b_exp.clone() > zero.clone() && input_exp.clone() > zero.clone()) {
        return Err(Error::InvalidParameter("decay exponents must be positive".into()));
    }
    if ell.clone() < zero {
        return Err(Error::InvalidParameter("ell must be nonnegative".into()));
    }
    let lambda = match family {
        DependenceFamily::Lambda => true,
        DependenceFamily::Eta => false,
        other => {
            return Err(Error::Unsupported(format!(
                "no decay envelopes for {other}-dependence"
            )))
        }
    };
    if let Some(mp) = m_prime.finite() {
        if !(mp.clone() > one.clone() + ell.clone()) {
            return Err(Error::InsufficientMoments(format!(
                "m' = {mp:?} must exceed 1 + ell"
            )));
        }
        if !lambda && !(mp.clone() > two.clone()) {
            return Err(Error::InsufficientMoments("eta envelopes need m' > 2".into()));
        }
    }
    if b_kind == DecayShape::Riemannian && !(b_exp.clone() > two.clone()) {
        return Err(Error::InvalidParameter(
            "riemannian shift weights need b > 2".into(),
        ));
    }
    let b = b_exp.clone();
    let a = input_exp.clone();
    let neg = |x: T| T::zero() - x;
    let env = match (b_kind, input_kind, lambda) {
        (DecayShape::Riemannian, DecayShape::Riemannian, true) => Envelope::power(neg(
            a * (one.clone() - two.clone() / b) * m_prime.lambda_ratio(ell),
        )),
        (DecayShape::Riemannian, DecayShape::Riemannian, false) => {
            let factor = match m_prime {
                MomentOrder::Finite(mp) => {
                    let d = mp.clone() - one.clone();
                    let denom = (b.clone() - one.clone()) * d - ell.clone();
                    if !(denom > zero) {
                        return Err(Error::InvalidParameter(
                            "(b-1)(m'-1) - ell must be positive".into(),
                        ));
                    }
                    (b.clone() - two.clone()) * (mp.clone() - two.clone()) / denom
                }
                MomentOrder::Infinite => (b.clone() - two.clone()) / (b.clone() - one.clone()),
            };
            Envelope::power(neg(a * factor))
        }
        (DecayShape::Geometric, DecayShape::Geometric, true) => {
            let rate = match m_prime {
                MomentOrder::Finite(mp) => {
                    let d = mp.clone() - one.clone();
                    let top = d.clone() - ell.clone();
                    b.clone() * top.clone()
                        / (b.clone() * (d + ell.clone()) + two.clone() * a.clone() * top)
                }
                MomentOrder::Infinite => b.clone() / (b.clone() + two.clone() * a.clone()),
            };
            Envelope {
                power: two,
                log_power: zero,
                exp_rate: a * rate,
            }
        }
        (DecayShape::Geometric, DecayShape::Geometric, false) => {
            let rate = match m_prime {
                MomentOrder::Finite(mp) => {
                    let c = mp.clone() - two.clone();
                    b.clone() * c.clone()
                        / (b.clone() * (mp.clone() - one.clone()) + two.clone() * a.clone() * c)
                }
                MomentOrder::Infinite => b.clone() / (b.clone() + two.clone() * a.clone()),
            };
            Envelope {
                power: m_prime.eta_ratio(ell),
                log_power: zero,
                exp_rate: a * rate,
            }
        }
        (DecayShape::Geometric, DecayShape::Riemannian, true) => Envelope {
            power: neg(a * m_prime.lambda_ratio(ell)),
            log_power: two,
            exp_rate: zero,
        },
        (DecayShape::Geometric, DecayShape::Riemannian, false) => Envelope {
            power: neg(a * m_prime.centered_ratio()),
            log_power: one.clone() + m_prime.growth_ratio(ell),
            exp_rate: zero,
        },
        (DecayShape::Riemannian, DecayShape::Geometric, _) => Envelope::power(two - b),
    };
    Ok(env)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Ratio;

    type Q = Ratio<i64>;

    fn q(n: i64, d: i64) -> Q {
        Q::new(n, d)
    }

    #[test]
    fn riemannian_limits() {
        let env = classify_decay(
            DecayShape::Riemannian,
            DecayShape::Riemannian,
            DependenceFamily::Lambda,
            &q(4, 1),
            &q(2, 1),
            &q(1, 1),
            &MomentOrder::Infinite,
        )
        .unwrap();
        assert_eq!(env.decay_exponent(), Some(q(1, 1)));
        assert_eq!(env.base(), EnvelopeBase::Power);

        // ℓ = 1, m' = 5: λ(1 − 2/b)·3/5
        let env = classify_decay(
            DecayShape::Riemannian,
            DecayShape::Riemannian,
            DependenceFamily::Lambda,
            &q(4, 1),
            &q(2, 1),
            &q(1, 1),
            &MomentOrder::Finite(q(5, 1)),
        )
        .unwrap();
        assert_eq!(env.decay_exponent(), Some(q(3, 5)));
    }

    #[test]
    fn riemannian_shift_geometric_input() {
        for fam in [DependenceFamily::Lambda, DependenceFamily::Eta] {
            let env = classify_decay(
                DecayShape::Riemannian,
                DecayShape::Geometric,
                fam,
                &q(5, 1),
                &q(1, 2),
                &q(0, 1),
                &MomentOrder::Finite(q(4, 1)),
            )
            .unwrap();
            assert_eq!(env, Envelope::power(q(-3, 1)));
        }
    }

    #[test]
    fn mixed_and_exponential_shapes() {
        let env = classify_decay(
            DecayShape::Geometric,
            DecayShape::Riemannian,
            DependenceFamily::Lambda,
            &q(1, 1),
            &q(3, 1),
            &q(0, 1),
            &MomentOrder::Infinite,
        )
        .unwrap();
        assert_eq!(env.power, q(-3, 1));
        assert_eq!(env.log_power, q(2, 1));
        assert_eq!(env.base(), EnvelopeBase::Mixed);

        let env = classify_decay(
            DecayShape::Geometric,
            DecayShape::Geometric,
            DependenceFamily::Lambda,
            &q(2, 1),
            &q(1, 1),
            &q(0, 1),
            &MomentOrder::Infinite,
        )
        .unwrap();
        assert_eq!(env.power, q(2, 1));
        assert_eq!(env.exp_rate, q(1, 2));

        let env = classify_decay(
            DecayShape::Geometric,
            DecayShape::Geometric,
            DependenceFamily::Eta,
            &q(2, 1),
            &q(1, 1),
            &q(1, 1),
            &MomentOrder::Finite(q(3, 1)),
        )
        .unwrap();
        // power (3−1−1)/(3−1), rate 1·2·1/(2·2 + 2·1·1)
        assert_eq!(env.power, q(1, 2));
        assert_eq!(env.exp_rate, q(1, 3));
    }

    #[test]
    fn eta_riemannian_limit() {
        let env = classify_decay(
            DecayShape::Riemannian,
            DecayShape::Riemannian,
            DependenceFamily::Eta,
            &q(3, 1),
            &q(2, 1),
            &q(0, 1),
            &MomentOrder::Infinite,
        )
        .unwrap();
        assert_eq!(env.decay_exponent(), Some(q(1, 1)));
    }

    #[test]
    fn rejections() {
        let err = classify_decay(
            DecayShape::Riemannian,
            DecayShape::Riemannian,
            DependenceFamily::Lambda,
            &q(2, 1),
            &q(2, 1),
            &q(0, 1),
            &MomentOrder::Infinite,
        );
        assert!(err.is_err());
        let err = classify_decay(
            DecayShape::Geometric,
            DecayShape::Geometric,
            DependenceFamily::Kappa,
            &q(2, 1),
            &q(2, 1),
            &q(0, 1),
            &MomentOrder::Infinite,
        );
        assert!(matches!(err, Err(Error::Unsupported(_))));
    }

    #[test]
    fn converges_to_input_rate_for_large_moments() {
        for mp in [1e3f64, 1e6, 1e9] {
            let env = classify_decay(
                DecayShape::Riemannian,
                DecayShape::Riemannian,
                DependenceFamily::Lambda,
                &6.0,
                &3.0,
                &1.0,
                &MomentOrder::Finite(mp),
            )
            .unwrap();
            let target = 3.0 * (1.0 - 2.0 / 6.0);
            assert!((env.decay_exponent().unwrap() - target).abs() < 10.0 / mp);
        }
    }
}
