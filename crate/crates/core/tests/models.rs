use weakdep::empirics::{autocovariance, mean, replicate_prepared};
use weakdep::models::{
    picard_error_bound, simulate, simulate_iid, ChaosTerm, CoeffSpec, Input, InnovationSpec,
    Model, PreparedProcess, ProcessSpec, Sidedness,
};
use weakdep::rng::Substream;
use weakdep::{DecayLaw, Error};

const GAUSS: InnovationSpec = InnovationSpec::Gaussian { sd: 1.0 };

/// Standard error of the mean of a weakly dependent series by batch means.
fn batch_se(values: &[f64]) -> f64 {
    let batches = 64;
    let len = values.len() / batches;
    let means: Vec<f64> = values.chunks_exact(len).map(mean).collect();
    let m = mean(&means);
    let var = means.iter().map(|x| (x - m).powi(2)).sum::<f64>() / (means.len() - 1) as f64;
    (var / means.len() as f64).sqrt()
}

fn explicit(start: i64, values: Vec<f64>) -> CoeffSpec {
    CoeffSpec::Explicit { start, values }
}

fn two_sided_geometric() -> CoeffSpec {
    CoeffSpec::Law {
        law: DecayLaw::geometric(1.0, std::f64::consts::LN_2).unwrap(),
        sides: Sidedness::TwoSided,
        tolerance: 1e-10,
    }
}

fn linear(coefficients: CoeffSpec, input: Input, seed: u64) -> ProcessSpec {
    ProcessSpec::new(
        Model::Linear {
            coefficients,
            input,
        },
        seed,
    )
}

fn larch_causal(intercept: f64, coeffs: Vec<f64>, innovation: InnovationSpec) -> ProcessSpec {
    ProcessSpec::new(
        Model::LarchCausal {
            intercept,
            coefficients: explicit(1, coeffs),
            innovation,
            burn_in: None,
            moment_order: 2.0,
        },
        3,
    )
}

fn larch_noncausal(coeffs: Vec<f64>, innovation: InnovationSpec, iters: Option<usize>) -> ProcessSpec {
    let half = (coeffs.len() / 2) as i64;
    ProcessSpec::new(
        Model::LarchNoncausal {
            intercept: 1.0,
            coefficients: explicit(-half, coeffs),
            innovation,
            picard_iters: iters,
        },
        5,
    )
}

fn markov(a: f64) -> ProcessSpec {
    ProcessSpec::new(
        Model::MarkovAr {
            coefficient: a,
            innovation: GAUSS,
            burn_in: None,
        },
        11,
    )
}

fn volterra(chaos: Vec<ChaosTerm>, lag_window: usize, input: Input) -> ProcessSpec {
    ProcessSpec::new(
        Model::Volterra {
            chaos,
            input,
            lag_window,
            moment_check: None,
        },
        13,
    )
}

#[test]
fn iid_draws() {
    let p = simulate_iid(InnovationSpec::Rademacher, 4, 99).unwrap();
    assert!(p.values.iter().all(|v| *v == 1.0 || *v == -1.0));
    let n = 100_000;
    let p = simulate_iid(GAUSS, n, 1).unwrap();
    assert!(mean(&p.values).abs() < 5.0 / (n as f64).sqrt());
    assert_eq!(p.values, simulate_iid(GAUSS, n, 1).unwrap().values);
    assert_ne!(p.values, simulate_iid(GAUSS, n, 2).unwrap().values);
    assert!(simulate_iid(InnovationSpec::Gaussian { sd: -1.0 }, 3, 0).is_err());
    assert!(simulate_iid(GAUSS, 0, 0).is_err());
}

#[test]
fn linear_identity_and_zero() {
    let iid = ProcessSpec::iid(GAUSS, 7);
    let spec = linear(explicit(0, vec![1.0]), Input::Process(Box::new(iid.clone())), 7);
    let x = PreparedProcess::new(&spec).unwrap();
    let y = PreparedProcess::new(&iid).unwrap();
    let sub = Substream::new(1, 2);
    // the filter draws its input from lane 1 of its substream
    assert_eq!(x.generate(500, &sub), y.generate(500, &sub.child(1)));

    let zero = linear(explicit(-2, vec![0.0; 5]), Input::Innovation(GAUSS), 7);
    assert!(simulate(&zero, 100).unwrap().values.iter().all(|v| *v == 0.0));
}

#[test]
fn linear_variance_matches_series() {
    let spec = linear(two_sided_geometric(), Input::Innovation(GAUSS), 21);
    let p = simulate(&spec, 1 << 18).unwrap();
    let sq: Vec<f64> = p.values.iter().map(|v| v * v).collect();
    let v = mean(&sq);
    assert!((v - 5.0 / 3.0).abs() < 3.0 * batch_se(&sq), "variance {v}");
    assert!(p.error_bound.unwrap() < 1e-8);
}

#[test]
fn absolute_value_centering() {
    let spec = ProcessSpec::new(
        Model::LinearAbs {
            coefficients: explicit(0, vec![1.0]),
            input: Input::Innovation(GAUSS),
            centering_mc: 100_000,
        },
        17,
    );
    let x = PreparedProcess::new(&spec).unwrap();
    let (c, se) = x.centering().unwrap();
    let truth = (2.0 / std::f64::consts::PI).sqrt();
    assert!((c - truth).abs() < 3.0 * se, "centering {c} ± {se}");
    let path = simulate(&spec, 100_000).unwrap().values;
    assert!(mean(&path).abs() < 4.0 * batch_se(&path) + 3.0 * se);

    let zero = ProcessSpec::new(
        Model::LinearAbs {
            coefficients: explicit(0, vec![0.0, 0.0]),
            input: Input::Innovation(GAUSS),
            centering_mc: 10_000,
        },
        17,
    );
    assert!(simulate(&zero, 50).unwrap().values.iter().all(|v| *v == 0.0));

    let small = ProcessSpec::new(
        Model::LinearAbs {
            coefficients: explicit(0, vec![1.0]),
            input: Input::Innovation(GAUSS),
            centering_mc: 100,
        },
        17,
    );
    assert!(PreparedProcess::new(&small).is_err());
}

#[test]
fn causal_larch() {
    let flat = simulate(&larch_causal(0.7, vec![0.0, 0.0], InnovationSpec::Rademacher), 200).unwrap();
    assert!(flat.values.iter().all(|v| (v.abs() - 0.7).abs() < 1e-15));

    let spec = larch_causal(1.0, vec![0.5], GAUSS);
    let p = simulate(&spec, 1 << 18).unwrap().values;
    let sq: Vec<f64> = p.iter().map(|v| v * v).collect();
    let v = mean(&sq);
    assert!((v - 4.0 / 3.0).abs() < 3.0 * batch_se(&sq), "variance {v}");
    assert!(mean(&p).abs() < 4.0 * batch_se(&p));
    let prepared = PreparedProcess::new(&spec).unwrap();
    assert!((prepared.analytic_long_run_variance().unwrap() - 4.0 / 3.0).abs() < 1e-12);
}

#[test]
fn noncausal_larch() {
    let flat = PreparedProcess::new(&larch_noncausal(vec![0.0, 0.0, 0.0], InnovationSpec::Rademacher, None)).unwrap();
    assert_eq!(flat.picard_iters(), Some(1));
    let p = flat.generate(100, &Substream::new(0, 0));
    assert!(p.iter().all(|v| v.abs() == 1.0));
    let more = PreparedProcess::new(&larch_noncausal(vec![0.0, 0.0, 0.0], InnovationSpec::Rademacher, Some(5))).unwrap();
    assert_eq!(more.generate(100, &Substream::new(0, 0)), p);

    let unif = InnovationSpec::Uniform { half_width: 1.0 };
    let spec = larch_noncausal(vec![0.1, 0.15, 0.0, 0.15, 0.1], unif, None);
    let path = simulate(&spec, 1 << 16).unwrap();
    assert!(mean(&path.values).abs() < 4.0 * batch_se(&path.values));
    assert!(path.error_bound.unwrap() <= 1e-10);

    for n in 1..20 {
        let a = picard_error_bound(0.5, n, 1.0, 1.0);
        let b = picard_error_bound(0.5, n + 1, 1.0, 1.0);
        assert!((b / a - 0.5).abs() < 1e-15);
    }
}

#[test]
fn contraction_refusal_is_sharp() {
    let rad = InnovationSpec::Rademacher;
    assert!(matches!(
        PreparedProcess::new(&larch_causal(1.0, vec![0.5, 0.5], rad)),
        Err(Error::ContractionViolated(l)) if l == 1.0
    ));
    let ok = PreparedProcess::new(&larch_causal(1.0, vec![0.5, 0.499], rad)).unwrap();
    assert!(ok.contraction().unwrap() < 1.0);

    assert!(matches!(
        PreparedProcess::new(&larch_noncausal(vec![0.5, 0.0, 0.5], rad, None)),
        Err(Error::ContractionViolated(_))
    ));
    let ok = PreparedProcess::new(&larch_noncausal(vec![0.5, 0.0, 0.49], rad, None)).unwrap();
    assert!(ok.error_bound().unwrap().is_finite());
    assert!(PreparedProcess::new(&larch_noncausal(vec![0.1, 0.0, 0.1], GAUSS, None)).is_err());

    assert!(matches!(
        PreparedProcess::new(&markov(1.0)),
        Err(Error::ContractionViolated(_))
    ));
}

#[test]
fn volterra_reduces_to_linear() {
    let input = Input::Process(Box::new(markov(0.3)));
    let coeffs = vec![0.25, -0.5, 1.0, 0.5, 0.125];
    let lin = linear(explicit(-2, coeffs.clone()), input.clone(), 1);
    let chaos = coeffs
        .iter()
        .enumerate()
        .map(|(k, &c)| ChaosTerm {
            lags: vec![k as i64 - 2],
            coeff: c,
        })
        .collect();
    let vol = volterra(chaos, 2, input);
    let sub = Substream::for_replicate(9, 1000, 3);
    let a = PreparedProcess::new(&lin).unwrap().generate(1000, &sub);
    let b = PreparedProcess::new(&vol).unwrap().generate(1000, &sub);
    for (x, y) in a.iter().zip(&b) {
        assert!((x - y).abs() <= 1e-14 * (1.0 + x.abs()));
    }
}

#[test]
fn volterra_square_and_constant() {
    let sq = volterra(
        vec![ChaosTerm {
            lags: vec![0, 0],
            coeff: 1.0,
        }],
        0,
        Input::Innovation(GAUSS),
    );
    let p = simulate(&sq, 100_000).unwrap().values;
    assert!((mean(&p) - 1.0).abs() < 3.0 * batch_se(&p));

    let c = volterra(
        vec![ChaosTerm {
            lags: vec![],
            coeff: 5.0,
        }],
        3,
        Input::Innovation(GAUSS),
    );
    assert!(simulate(&c, 64).unwrap().values.iter().all(|v| *v == 5.0));

    let prepared = PreparedProcess::new(&sq).unwrap();
    let shift = prepared.induced_shift().unwrap();
    assert_eq!(shift.ell, 1.0);
    assert_eq!(shift.b_at(0), 2.0);
}

#[test]
fn volterra_moment_check() {
    let make = |m_prime| {
        ProcessSpec::new(
            Model::Volterra {
                chaos: vec![ChaosTerm {
                    lags: vec![0, 1],
                    coeff: 1.0,
                }],
                input: Input::Innovation(InnovationSpec::Student { dof: 5.0 }),
                lag_window: 1,
                moment_check: Some(weakdep::models::MomentCheck {
                    m: 2.2,
                    m_prime,
                }),
            },
            0,
        )
    };
    // Student(5) has moments below 5 only; (ℓ+1)m = 4.4
    assert!(PreparedProcess::new(&make(None)).is_ok());
    assert!(PreparedProcess::new(&make(Some(4.0))).is_err());
}

#[test]
fn ar_variance_and_autocorrelation() {
    let n = 1 << 18;
    let p = simulate(&markov(0.5), n).unwrap().values;
    let sq: Vec<f64> = p.iter().map(|v| v * v).collect();
    assert!((mean(&sq) - 4.0 / 3.0).abs() < 3.0 * batch_se(&sq));
    let rho = autocovariance(&p, 1).unwrap() / autocovariance(&p, 0).unwrap();
    // Bartlett: Var ρ̂₁ ≈ (1 − ρ²)/n
    assert!((rho - 0.5).abs() < 3.0 * (0.75 / n as f64).sqrt(), "rho {rho}");

    let white = simulate(&markov(0.0), n).unwrap().values;
    let rho0 = autocovariance(&white, 1).unwrap() / autocovariance(&white, 0).unwrap();
    assert!(rho0.abs() < 3.0 / (n as f64).sqrt());
}

#[test]
fn stationarity_halves() {
    let n = 1 << 16;
    let specs = vec![
        ProcessSpec::iid(GAUSS, 1),
        linear(two_sided_geometric(), Input::Innovation(GAUSS), 2),
        ProcessSpec::new(
            Model::LinearAbs {
                coefficients: two_sided_geometric(),
                input: Input::Innovation(GAUSS),
                centering_mc: 20_000,
            },
            3,
        ),
        larch_causal(1.0, vec![0.4, 0.2], GAUSS),
        larch_noncausal(vec![0.2, 0.0, 0.3], InnovationSpec::Uniform { half_width: 1.0 }, None),
        volterra(
            vec![
                ChaosTerm { lags: vec![0], coeff: 1.0 },
                ChaosTerm { lags: vec![-1, 1], coeff: 0.5 },
            ],
            1,
            Input::Process(Box::new(markov(0.4))),
        ),
        markov(0.6),
    ];
    for spec in specs {
        let p = simulate(&spec, n).unwrap().values;
        let (a, b) = p.split_at(n / 2);
        let se = (batch_se(a).powi(2) + batch_se(b).powi(2)).sqrt();
        assert!(
            (mean(a) - mean(b)).abs() < 5.0 * se,
            "{} mean drift",
            spec.family_name()
        );
        let ma = mean(a);
        let mb = mean(b);
        let sa: Vec<f64> = a.iter().map(|v| (v - ma).powi(2)).collect();
        let sb: Vec<f64> = b.iter().map(|v| (v - mb).powi(2)).collect();
        let se = (batch_se(&sa).powi(2) + batch_se(&sb).powi(2)).sqrt();
        assert!(
            (mean(&sa) - mean(&sb)).abs() < 5.0 * se,
            "{} variance drift",
            spec.family_name()
        );
    }
}

#[test]
fn replicates_ignore_thread_count() {
    let spec = linear(
        two_sided_geometric(),
        Input::Process(Box::new(larch_causal(1.0, vec![0.3], InnovationSpec::Rademacher))),
        4,
    );
    let prepared = PreparedProcess::new(&spec).unwrap();
    let run = |threads| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| replicate_prepared(&prepared, 256, 64, 77).unwrap())
    };
    let one = run(1);
    let many = run(4);
    assert_eq!(one.values, many.values);
    assert_eq!(one.substreams, 0..64);
}

#[test]
fn paths_are_reproducible() {
    let spec = larch_noncausal(vec![0.2, 0.0, 0.3], InnovationSpec::Uniform { half_width: 1.0 }, None);
    let a = simulate(&spec, 1000).unwrap();
    let b = simulate(&spec, 1000).unwrap();
    assert_eq!(a, b);
    assert_eq!(a.spec_digest, spec.digest());
}
