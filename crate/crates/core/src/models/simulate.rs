//! Path generation.
//!
//! A [`ProcessSpec`] is first resolved into a [`PreparedProcess`]: windows
//! are truncated, contraction constants checked, burn-in and Picard depths
//! fixed, and model constants (the absolute-value centering) estimated.
//! Paths are then drawn from a [`Substream`], so the same prepared process
//! can feed any number of replicates in parallel.

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::innovation::{InnovationSampler, InnovationSpec};
use super::spec::{Input, Model, MomentCheck, ProcessSpec};
use super::volterra::{Chaos, InducedShift};
use super::window::CoeffWindow;
use crate::error::{invalid, Error, Result};
use crate::rng::Substream;

/// Target bias for default burn-in and Picard depth.
pub const FORGETTING_TOL: f64 = 1e-10;

const LANE_INPUT: u64 = 1;
const LANE_INNOVATION: u64 = 2;
const CENTERING_STREAM: u64 = u64::MAX;

/// A generated path together with its provenance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SamplePath {
    pub values: Vec<f64>,
    pub spec_digest: String,
    #[serde(with = "crate::seed")]
    pub seed: u64,
    pub stream: u64,
    /// Reported approximation error: L¹ truncation error for filters,
    /// sup-norm Picard error for the non-causal LARCH model.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error_bound: Option<f64>,
}

impl SamplePath {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

#[derive(Debug, Clone)]
enum PreparedInput {
    Innovation(InnovationSpec, InnovationSampler),
    Process(Box<PreparedProcess>),
}

#[derive(Debug, Clone)]
enum Kind {
    Iid(InnovationSampler),
    Linear {
        window: CoeffWindow,
        input: PreparedInput,
    },
    LinearAbs {
        window: CoeffWindow,
        input: PreparedInput,
        centering: f64,
        centering_se: f64,
    },
    LarchCausal {
        intercept: f64,
        coeffs: Vec<f64>,
        sampler: InnovationSampler,
        burn_in: usize,
    },
    LarchNoncausal {
        intercept: f64,
        window: CoeffWindow,
        sampler: InnovationSampler,
        iters: usize,
    },
    Volterra {
        chaos: Chaos,
        input: PreparedInput,
    },
    MarkovAr {
        coefficient: f64,
        sampler: InnovationSampler,
        burn_in: usize,
    },
}

/// A validated, ready-to-sample model.
#[derive(Debug, Clone)]
pub struct PreparedProcess {
    spec: ProcessSpec,
    digest: String,
    kind: Kind,
    contraction: Option<f64>,
    error_bound: Option<f64>,
}

/// Smallest `B ≥ 1` with `Λ^B ≤ tol`.
pub fn forgetting_steps(contraction: f64, tol: f64) -> usize {
    if contraction <= 0.0 {
        return 1;
    }
    let b = (tol.ln() / contraction.ln()).ceil();
    (b as usize).max(1)
}

/// `Λ = ‖ξ₀‖_m Σ_{j≥1} |a_j|` for the causal LARCH recursion.
pub fn larch_causal_contraction(
    coeffs: &CoeffWindow,
    innovation: &InnovationSpec,
    moment_order: f64,
) -> Result<f64> {
    let norm = innovation.norm(moment_order).ok_or_else(|| {
        Error::InsufficientMoments(format!("innovation has no moment of order {moment_order}"))
    })?;
    Ok(norm * coeffs.l1_norm())
}

/// `Λ = ‖ξ₀‖_∞ Σ_{j≠0} |a_j|` for the non-causal LARCH recursion.
pub fn larch_noncausal_contraction(coeffs: &CoeffWindow, innovation: &InnovationSpec) -> Result<f64> {
    let sup = innovation
        .sup_norm()
        .ok_or_else(|| Error::InvalidParameter("non-causal LARCH needs bounded innovations".into()))?;
    Ok(sup * coeffs.l1_norm())
}

/// Sup-norm distance after `iters` Picard steps: `Λ^N |a| ‖ξ‖_∞ / (1 − Λ)`.
pub fn picard_error_bound(contraction: f64, iters: usize, intercept: f64, sup_norm: f64) -> f64 {
    contraction.powi(iters as i32) * intercept.abs() * sup_norm / (1.0 - contraction)
}

impl PreparedInput {
    fn prepare(input: &Input) -> Result<Self> {
        Ok(match input {
            Input::Innovation(spec) => PreparedInput::Innovation(*spec, spec.sampler()?),
            Input::Process(spec) => PreparedInput::Process(Box::new(PreparedProcess::new(spec)?)),
        })
    }

    fn generate(&self, len: usize, sub: &Substream) -> Vec<f64> {
        match self {
            PreparedInput::Innovation(_, sampler) => {
                let mut rng = sub.rng();
                let mut out = vec![0.0; len];
                sampler.fill(&mut rng, &mut out);
                out
            }
            PreparedInput::Process(p) => p.generate(len, sub),
        }
    }

    /// `E|Y₀|` when known in closed form.
    fn mean_abs(&self) -> Option<f64> {
        match self {
            PreparedInput::Innovation(spec, _) => spec.abs_moment(1.0),
            PreparedInput::Process(_) => None,
        }
    }

    /// Largest moment order available from the input, if known.
    fn moment_sup(&self) -> Option<f64> {
        match self {
            PreparedInput::Innovation(spec, _) => Some(spec.moment_sup()),
            PreparedInput::Process(_) => None,
        }
    }
}

fn check_volterra_moments(chaos: &Chaos, input: &PreparedInput, check: &MomentCheck) -> Result<()> {
    if !(check.m > 0.0) {
        return invalid("declared moment order m must be positive");
    }
    let k = chaos.order().max(1) as f64;
    let needed = k * check.m;
    let available = match (check.m_prime, input.moment_sup()) {
        (Some(mp), _) => {
            if mp >= needed {
                return Ok(());
            }
            mp
        }
        (None, Some(sup)) => {
            if sup.is_infinite() || needed < sup {
                return Ok(());
            }
            sup
        }
        (None, None) => {
            return Err(Error::InsufficientMoments(
                "input moment order m' must be declared for process inputs".into(),
            ))
        }
    };
    Err(Error::InsufficientMoments(format!(
        "input moment order {available} below (l+1)*m = {needed}"
    )))
}

impl PreparedProcess {
    pub fn new(spec: &ProcessSpec) -> Result<Self> {
        let mut contraction = None;
        let mut error_bound = None;
        let kind = match &spec.model {
            Model::Iid { innovation } => Kind::Iid(innovation.sampler()?),
            Model::Linear {
                coefficients,
                input,
            } => {
                let window = coefficients.resolve(false)?;
                let input = PreparedInput::prepare(input)?;
                if let Some(mean_abs) = input.mean_abs() {
                    error_bound = Some(window.truncated_tail() * mean_abs);
                }
                Kind::Linear { window, input }
            }
            Model::LinearAbs {
                coefficients,
                input,
                centering_mc,
            } => {
                if *centering_mc < 10_000 {
                    return invalid("centering_mc must be at least 10^4");
                }
                let window = coefficients.resolve(false)?;
                let input = PreparedInput::prepare(input)?;
                if let Some(mean_abs) = input.mean_abs() {
                    error_bound = Some(window.truncated_tail() * mean_abs);
                }
                let sub = Substream::new(spec.seed, CENTERING_STREAM);
                let (centering, centering_se) =
                    estimate_abs_centering(&window, &input, *centering_mc, &sub);
                Kind::LinearAbs {
                    window,
                    input,
                    centering,
                    centering_se,
                }
            }
            Model::LarchCausal {
                intercept,
                coefficients,
                innovation,
                burn_in,
                moment_order,
            } => {
                let window = coefficients.resolve(false)?;
                if window.start() < 1 {
                    return invalid("causal LARCH coefficients must start at lag 1");
                }
                let lambda = larch_causal_contraction(&window, innovation, *moment_order)?;
                if lambda >= 1.0 {
                    return Err(Error::ContractionViolated(lambda));
                }
                contraction = Some(lambda);
                let burn_in = match burn_in {
                    Some(0) => return invalid("burn_in must be at least 1"),
                    Some(b) => *b,
                    None => forgetting_steps(lambda, FORGETTING_TOL),
                };
                let coeffs = (1..=window.end()).map(|j| window.get(j)).collect();
                Kind::LarchCausal {
                    intercept: *intercept,
                    coeffs,
                    sampler: innovation.sampler()?,
                    burn_in,
                }
            }
            Model::LarchNoncausal {
                intercept,
                coefficients,
                innovation,
                picard_iters,
            } => {
                let window = coefficients.resolve(true)?;
                if window.get(0) != 0.0 {
                    return invalid("non-causal LARCH excludes lag 0");
                }
                let lambda = larch_noncausal_contraction(&window, innovation)?;
                if lambda >= 1.0 {
                    return Err(Error::ContractionViolated(lambda));
                }
                contraction = Some(lambda);
                let iters = match picard_iters {
                    Some(0) => return invalid("picard_iters must be at least 1"),
                    Some(n) => *n,
                    None => {
                        if lambda == 0.0 {
                            1
                        } else {
                            forgetting_steps(lambda, FORGETTING_TOL * (1.0 - lambda))
                        }
                    }
                };
                let sup = innovation.sup_norm().unwrap_or(f64::INFINITY);
                error_bound = Some(picard_error_bound(lambda, iters, *intercept, sup));
                Kind::LarchNoncausal {
                    intercept: *intercept,
                    window,
                    sampler: innovation.sampler()?,
                    iters,
                }
            }
            Model::Volterra {
                chaos,
                input,
                lag_window,
                moment_check,
            } => {
                let chaos = Chaos::new(chaos.clone(), *lag_window)?;
                let input = PreparedInput::prepare(input)?;
                if let Some(check) = moment_check {
                    check_volterra_moments(&chaos, &input, check)?;
                }
                Kind::Volterra { chaos, input }
            }
            Model::MarkovAr {
                coefficient,
                innovation,
                burn_in,
            } => {
                if !(coefficient.abs() < 1.0) {
                    return Err(Error::ContractionViolated(coefficient.abs()));
                }
                contraction = Some(coefficient.abs());
                let burn_in = match burn_in {
                    Some(0) => return invalid("burn_in must be at least 1"),
                    Some(b) => *b,
                    None => (10.0 / (1.0 - coefficient.abs())).ceil() as usize,
                };
                Kind::MarkovAr {
                    coefficient: *coefficient,
                    sampler: innovation.sampler()?,
                    burn_in,
                }
            }
        };
        Ok(PreparedProcess {
            digest: spec.digest(),
            spec: spec.clone(),
            kind,
            contraction,
            error_bound,
        })
    }

    pub fn spec(&self) -> &ProcessSpec {
        &self.spec
    }

    pub fn digest(&self) -> &str {
        &self.digest
    }

    /// Contraction constant Λ (or |a| for AR(1)) when the model has one.
    pub fn contraction(&self) -> Option<f64> {
        self.contraction
    }

    /// Static approximation error bound (truncation or Picard).
    pub fn error_bound(&self) -> Option<f64> {
        self.error_bound
    }

    pub fn burn_in(&self) -> Option<usize> {
        match &self.kind {
            Kind::LarchCausal { burn_in, .. } | Kind::MarkovAr { burn_in, .. } => Some(*burn_in),
            _ => None,
        }
    }

    pub fn picard_iters(&self) -> Option<usize> {
        match &self.kind {
            Kind::LarchNoncausal { iters, .. } => Some(*iters),
            _ => None,
        }
    }

    /// Centering constant and its Monte Carlo standard error (absolute-value model).
    pub fn centering(&self) -> Option<(f64, f64)> {
        match &self.kind {
            Kind::LinearAbs {
                centering,
                centering_se,
                ..
            } => Some((*centering, *centering_se)),
            _ => None,
        }
    }

    /// Resolved coefficient window of filter-type models.
    pub fn window(&self) -> Option<&CoeffWindow> {
        match &self.kind {
            Kind::Linear { window, .. }
            | Kind::LinearAbs { window, .. }
            | Kind::LarchNoncausal { window, .. } => Some(window),
            _ => None,
        }
    }

    /// `b_s`, `ℓ`, `L` of a Volterra model.
    pub fn induced_shift(&self) -> Option<InducedShift> {
        match &self.kind {
            Kind::Volterra { chaos, .. } => Some(chaos.induced_shift()),
            _ => None,
        }
    }

    /// Analytic long-run variance `Σ_k Cov(X₀, X_k)` when the model has a
    /// closed form.
    pub fn analytic_long_run_variance(&self) -> Option<f64> {
        match &self.spec.model {
            Model::Iid { innovation } => innovation.variance(),
            Model::Linear { .. } => {
                let Kind::Linear { window, input } = &self.kind else {
                    return None;
                };
                let s = window.sum();
                input_long_run_variance(input).map(|v| v * s * s)
            }
            Model::LarchCausal {
                intercept,
                innovation,
                ..
            } => {
                // martingale differences: σ² = Var(Y) = a² Eξ² / (1 − Eξ² Σ a_j²)
                let Kind::LarchCausal { coeffs, .. } = &self.kind else {
                    return None;
                };
                let v = innovation.variance()?;
                let sq: f64 = coeffs.iter().map(|a| a * a).sum();
                let denom = 1.0 - v * sq;
                (denom > 0.0).then(|| intercept * intercept * v / denom)
            }
            Model::MarkovAr {
                coefficient,
                innovation,
                ..
            } => innovation
                .variance()
                .map(|v| v / ((1.0 - coefficient) * (1.0 - coefficient))),
            Model::Volterra { .. } => {
                let Kind::Volterra { chaos, input } = &self.kind else {
                    return None;
                };
                if chaos.order() != 1 {
                    return None;
                }
                let s: f64 = chaos.terms().iter().map(|t| t.coeff).sum();
                input_long_run_variance(input).map(|v| v * s * s)
            }
            Model::LinearAbs { .. } | Model::LarchNoncausal { .. } => None,
        }
    }

    /// Draws a path of length `n` from `sub`.
    pub fn generate(&self, n: usize, sub: &Substream) -> Vec<f64> {
        match &self.kind {
            Kind::Iid(sampler) => {
                let mut rng = sub.rng();
                let mut out = vec![0.0; n];
                sampler.fill(&mut rng, &mut out);
                out
            }
            Kind::Linear { window, input } => {
                let y = input.generate(n + window.span(), &sub.child(LANE_INPUT));
                linear_filter(window, &y, n).expect("input sized to window")
            }
            Kind::LinearAbs {
                window,
                input,
                centering,
                ..
            } => {
                let y = input.generate(n + window.span(), &sub.child(LANE_INPUT));
                let mut x = linear_filter(window, &y, n).expect("input sized to window");
                for v in &mut x {
                    *v = v.abs() - centering;
                }
                x
            }
            Kind::LarchCausal {
                intercept,
                coeffs,
                sampler,
                burn_in,
            } => larch_causal_recursion(
                *intercept,
                coeffs,
                sampler,
                n,
                *burn_in,
                &mut sub.child(LANE_INNOVATION).rng(),
            ),
            Kind::LarchNoncausal {
                intercept,
                window,
                sampler,
                iters,
            } => larch_noncausal_picard(
                *intercept,
                window,
                sampler,
                n,
                *iters,
                &mut sub.child(LANE_INNOVATION).rng(),
            ),
            Kind::Volterra { chaos, input } => {
                let y = input.generate(n + 2 * chaos.lag_window(), &sub.child(LANE_INPUT));
                chaos.apply(&y, n).expect("input sized to lag window")
            }
            Kind::MarkovAr {
                coefficient,
                sampler,
                burn_in,
            } => {
                let mut rng = sub.child(LANE_INNOVATION).rng();
                let mut y = 0.0;
                for _ in 0..*burn_in {
                    y = coefficient * y + sampler.draw(&mut rng);
                }
                let mut out = Vec::with_capacity(n);
                for _ in 0..n {
                    y = coefficient * y + sampler.draw(&mut rng);
                    out.push(y);
                }
                out
            }
        }
    }

    pub fn sample_path(&self, n: usize, sub: &Substream) -> SamplePath {
        SamplePath {
            values: self.generate(n, sub),
            spec_digest: self.digest.clone(),
            seed: self.spec.seed,
            stream: sub.stream(),
            error_bound: self.error_bound,
        }
    }
}

fn input_long_run_variance(input: &PreparedInput) -> Option<f64> {
    match input {
        PreparedInput::Innovation(spec, _) => spec.variance(),
        PreparedInput::Process(p) => p.analytic_long_run_variance(),
    }
}

/// `E|Σ α_i Y_{−i}|` by Monte Carlo: fresh windows for iid inputs, one long
/// independent path for process inputs. Returns `(mean, standard error)`.
fn estimate_abs_centering(
    window: &CoeffWindow,
    input: &PreparedInput,
    draws: usize,
    sub: &Substream,
) -> (f64, f64) {
    let values: Vec<f64> = match input {
        PreparedInput::Innovation(_, sampler) => {
            let mut rng = sub.rng();
            let coeffs = window.values();
            (0..draws)
                .map(|_| {
                    coeffs
                        .iter()
                        .map(|a| a * sampler.draw(&mut rng))
                        .sum::<f64>()
                        .abs()
                })
                .collect()
        }
        PreparedInput::Process(p) => {
            let y = p.generate(draws + window.span(), &sub.child(LANE_INPUT));
            linear_filter(window, &y, draws)
                .expect("input sized to window")
                .into_iter()
                .map(f64::abs)
                .collect()
        }
    };
    let n = values.len() as f64;
    let mean = crate::empirics::compensated_sum(values.iter().copied()) / n;
    let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}

/// `X_t = Σ_i α_i Y_{t−i}` for `t = 0..n`, where `input[t + window.end()]`
/// holds `Y_t`; the input must hold `n + span` values.
pub fn linear_filter(window: &CoeffWindow, input: &[f64], n: usize) -> Result<Vec<f64>> {
    let span = window.span();
    let needed = n + span;
    if input.len() < needed {
        return Err(Error::InputTooShort {
            needed,
            available: input.len(),
        });
    }
    let coeffs = window.values();
    let out = (0..n)
        .map(|t| {
            // lag start + k reads input[t + span - k]
            let slice = &input[t..=t + span];
            coeffs
                .iter()
                .zip(slice.iter().rev())
                .map(|(a, y)| a * y)
                .sum()
        })
        .collect();
    Ok(out)
}

fn larch_causal_recursion<R: Rng>(
    intercept: f64,
    coeffs: &[f64],
    sampler: &InnovationSampler,
    n: usize,
    burn_in: usize,
    rng: &mut R,
) -> Vec<f64> {
    let total = burn_in + n;
    let mut y = Vec::with_capacity(total);
    for t in 0..total {
        let mut vol = intercept;
        for (j, a) in coeffs.iter().enumerate() {
            let lag = j + 1;
            if lag > t {
                break;
            }
            vol += a * y[t - lag];
        }
        y.push(sampler.draw(rng) * vol);
    }
    y.split_off(burn_in)
}

fn larch_noncausal_picard<R: Rng>(
    intercept: f64,
    window: &CoeffWindow,
    sampler: &InnovationSampler,
    n: usize,
    iters: usize,
    rng: &mut R,
) -> Vec<f64> {
    let reach = window.start().unsigned_abs().max(window.end().unsigned_abs()) as usize;
    // after N sweeps Y_t depends on ξ within N·reach of t
    let pad = iters * reach;
    let len = n + 2 * pad;
    // core first, then the padding outward, so ξ_t does not depend on the depth
    let mut xi = vec![0.0; len];
    sampler.fill(rng, &mut xi[pad..pad + n]);
    for d in 1..=pad {
        xi[pad - d] = sampler.draw(rng);
        xi[pad + n - 1 + d] = sampler.draw(rng);
    }
    let lags: Vec<(i64, f64)> = window.iter().filter(|&(j, a)| j != 0 && a != 0.0).collect();
    let mut cur = vec![0.0; len];
    let mut next = vec![0.0; len];
    for _ in 0..iters {
        for t in 0..len {
            let mut vol = intercept;
            for &(j, a) in &lags {
                let s = t as i64 - j;
                if s >= 0 && (s as usize) < len {
                    vol += a * cur[s as usize];
                }
            }
            next[t] = xi[t] * vol;
        }
        std::mem::swap(&mut cur, &mut next);
    }
    cur[pad..pad + n].to_vec()
}

/// Simulates `n` values of `spec` from its own seed (stream 0).
pub fn simulate(spec: &ProcessSpec, n: usize) -> Result<SamplePath> {
    if n == 0 {
        return invalid("path length must be at least 1");
    }
    let prepared = PreparedProcess::new(spec)?;
    Ok(prepared.sample_path(n, &Substream::new(spec.seed, 0)))
}

/// `n` iid draws of a centered innovation.
pub fn simulate_iid(innovation: InnovationSpec, n: usize, seed: u64) -> Result<SamplePath> {
    simulate(&ProcessSpec::iid(innovation, seed), n)
}
