//! Self-test suites cross-checking the analytic formulas against the
//! numerical pipeline. The CLI `verify` subcommand runs them all and reports
//! machine-readable counts; failures carry a description of the worst case.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::closed_form::{a_expr3, eigvals_from_discriminant, max_symmetric_power, rho3_entries};
use crate::ggm::ggm;
use crate::optimizer::FSPoint;
use crate::tensor::{apply_unitary, evolve, partial_trace, HermitianMatrix, PureState};
use crate::zoo::{
    diag_random, diag_single_phase, dm_hamiltonian, haar_from_rng, haar_random,
    heisenberg_hamiltonian, seeded_rng, u_dm, u_dm_h, u_lambda, u_w, und_even, und_odd, InnerGate,
    LayerParity, OmegaVariant,
};

const PI: f64 = std::f64::consts::PI;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CheckSuite {
    pub name: String,
    pub checks: usize,
    pub failures: Vec<String>,
}

impl CheckSuite {
    fn new(name: &str) -> Self {
        Self {
            name: name.to_string(),
            checks: 0,
            failures: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(describe());
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerifyReport {
    pub suites: Vec<CheckSuite>,
    pub total_checks: usize,
    pub total_failures: usize,
    pub passed: bool,
}

impl VerifyReport {
    fn from_suites(suites: Vec<CheckSuite>) -> Self {
        let total_checks = suites.iter().map(|s| s.checks).sum();
        let total_failures = suites.iter().map(|s| s.failures.len()).sum();
        Self {
            passed: total_failures == 0,
            suites,
            total_checks,
            total_failures,
        }
    }
}

/// Runs every suite with deterministic sampling from `seed`.
pub fn run_all(seed: u64) -> VerifyReport {
    VerifyReport::from_suites(vec![
        suite_rho3_vs_partial_trace(1000, seed),
        suite_eigvals_vs_numeric_with(a_expr3, 1000, seed),
        suite_closed_form_evenness(64),
        suite_ggm_known_states(seed),
        suite_tensor_invariants(seed),
        suite_zoo_invariants(seed),
    ])
}

/// Machine check of the single-site reduction formulas against the numeric
/// partial trace, over random angles.
pub fn suite_rho3_vs_partial_trace(samples: usize, seed: u64) -> CheckSuite {
    let mut suite = CheckSuite::new("rho3-entries-vs-partial-trace");
    let mut rng = seeded_rng(seed, 101);
    for _ in 0..samples {
        let thetas = [
            rng.random_range(0.0..PI),
            rng.random_range(0.0..PI),
            rng.random_range(0.0..PI),
        ];
        let phi = rng.random_range(0.0..2.0 * PI);
        let unitary = diag_single_phase(3, phi).expect("n = 3");
        let point = FSPoint::new(thetas.to_vec(), vec![0.0; 3]).expect("angles in range");
        let out = apply_unitary(&unitary, &point.to_state()).expect("dims match");
        for site in 1..=3 {
            let analytic = rho3_entries(site, thetas, phi).expect("valid site");
            let numeric = partial_trace(&out, &[site]).expect("valid cut");
            let diff = (analytic.to_matrix() - numeric.entries()).norm();
            suite.check(diff <= 1e-12, || {
                format!("site {site} thetas {thetas:?} phi {phi}: entry defect {diff:.3e}")
            });
        }
    }
    suite
}

/// Closed-form eigenvalues against the numeric spectrum, with the
/// `A`-polynomial injectable so a transcription bug is detectable.
pub fn suite_eigvals_vs_numeric_with(
    a_fn: impl Fn(f64, f64) -> f64,
    samples: usize,
    seed: u64,
) -> CheckSuite {
    let mut suite = CheckSuite::new("eigvals3-vs-numeric-spectrum");
    let mut rng = seeded_rng(seed, 102);
    for _ in 0..samples {
        let theta = rng.random_range(0.0..PI);
        let phi = rng.random_range(0.0..2.0 * PI);
        let eig_pair = match eigvals_from_discriminant(a_fn(theta, phi)) {
            Ok(pair) => pair,
            Err(err) => {
                suite.check(false, || format!("theta {theta} phi {phi}: {err}"));
                continue;
            }
        };
        let unitary = diag_single_phase(3, phi).expect("n = 3");
        let point = FSPoint::new(vec![theta; 3], vec![0.0; 3]).expect("angles in range");
        let out = apply_unitary(&unitary, &point.to_state()).expect("dims match");
        let numeric = partial_trace(&out, &[1]).expect("valid cut").eigenvalues();
        let diff = (eig_pair.0 - numeric[0]).abs().max((eig_pair.1 - numeric[1]).abs());
        suite.check(diff <= 1e-10, || {
            format!("theta {theta} phi {phi}: eigenvalue defect {diff:.3e}")
        });
    }
    suite
}

/// The maximized closed form is an even function of phi.
pub fn suite_closed_form_evenness(grid: usize) -> CheckSuite {
    let mut suite = CheckSuite::new("closed-form-even-in-phi");
    for k in 0..grid {
        let phi = 2.0 * PI * k as f64 / grid as f64;
        let (_, forward) = max_symmetric_power(phi);
        let (_, backward) = max_symmetric_power(2.0 * PI - phi);
        suite.check((forward - backward).abs() <= 1e-10, || {
            format!(
                "phi {phi}: max power {forward} vs {backward} at 2pi - phi"
            )
        });
    }
    suite
}

/// GGM of states with known values.
pub fn suite_ggm_known_states(seed: u64) -> CheckSuite {
    let mut suite = CheckSuite::new("ggm-known-states");
    for n in 3..=6 {
        let value = ggm(&PureState::ghz(n).expect("n >= 2")).expect("n >= 2").value;
        suite.check((value - 0.5).abs() <= 1e-10, || {
            format!("ghz {n}: ggm = {value}")
        });
    }
    let w = ggm(&PureState::w_state(3).expect("n >= 2")).expect("n >= 2").value;
    suite.check((w - 1.0 / 3.0).abs() <= 1e-10, || format!("w3: ggm = {w}"));
    let mut rng = seeded_rng(seed, 103);
    for _ in 0..100 {
        let n = rng.random_range(2..=5usize);
        let point = FSPoint::random(&mut rng, n);
        let value = ggm(&point.to_state()).expect("n >= 2").value;
        suite.check(value.abs() <= 1e-10, || {
            format!("product state on {n} qubits: ggm = {value:.3e}")
        });
    }
    suite
}

/// Structural invariants of the tensor layer on random inputs.
pub fn suite_tensor_invariants(seed: u64) -> CheckSuite {
    let mut suite = CheckSuite::new("tensor-invariants");
    let mut rng = seeded_rng(seed, 104);

    for _ in 0..50 {
        let n = rng.random_range(2..=5usize);
        let state = PureState::random(n, &mut rng);
        let unitary = haar_from_rng(1 << n, &mut rng);
        let out = apply_unitary(&unitary, &state).expect("dims match");
        suite.check((out.norm() - 1.0).abs() <= 1e-12, || {
            format!("norm defect {:.3e} on {n} qubits", (out.norm() - 1.0).abs())
        });

        // Schmidt symmetry: complementary cuts share their nonzero spectrum.
        let cut_size = rng.random_range(1..n);
        let mut keep: Vec<usize> = (1..=n).collect();
        for _ in 0..(n - cut_size) {
            let at = rng.random_range(0..keep.len());
            keep.remove(at);
        }
        let comp: Vec<usize> = (1..=n).filter(|q| !keep.contains(q)).collect();
        let eigs_keep = partial_trace(&state, &keep).expect("valid cut").eigenvalues();
        let eigs_comp = partial_trace(&state, &comp).expect("valid cut").eigenvalues();
        let shared = eigs_keep.len().min(eigs_comp.len());
        let mut defect: f64 = 0.0;
        for k in 0..shared {
            defect = defect.max((eigs_keep[k] - eigs_comp[k]).abs());
        }
        for &rest in eigs_keep.iter().skip(shared).chain(eigs_comp.iter().skip(shared)) {
            defect = defect.max(rest.abs());
        }
        suite.check(defect <= 1e-10, || {
            format!("schmidt symmetry defect {defect:.3e} for keep {keep:?}")
        });
    }

    // Spectral exponential group law on random Hermitian generators.
    for _ in 0..20 {
        let dim = 1usize << rng.random_range(1..=3usize);
        let raw = haar_from_rng(dim, &mut rng);
        let h = HermitianMatrix::new(raw.entries() + raw.entries().adjoint())
            .expect("sum with adjoint is Hermitian");
        let t1 = rng.random_range(-2.0..2.0);
        let t2 = rng.random_range(-2.0..2.0);
        let lhs = evolve(&h, t1).entries() * evolve(&h, t2).entries();
        let rhs = evolve(&h, t1 + t2);
        let diff = (lhs - rhs.entries()).norm();
        suite.check(diff <= 1e-10, || {
            format!("group law defect {diff:.3e} at dim {dim}")
        });
    }

    // Product states have maximal eigenvalue 1 across every cut.
    for _ in 0..20 {
        let n = rng.random_range(2..=5usize);
        let point = FSPoint::random(&mut rng, n);
        let state = point.to_state();
        let cut = vec![rng.random_range(1..=n)];
        let max_eig = partial_trace(&state, &cut).expect("valid cut").max_eigenvalue();
        suite.check((max_eig - 1.0).abs() <= 1e-12, || {
            format!("product cut eigenvalue {max_eig} on {n} qubits")
        });
    }
    suite
}

/// Every zoo constructor satisfies its operator invariant.
pub fn suite_zoo_invariants(seed: u64) -> CheckSuite {
    let mut suite = CheckSuite::new("zoo-invariants");
    let mut rng = seeded_rng(seed, 105);
    let defect_of = |u: &crate::tensor::UnitaryMatrix| u.unitarity_defect();

    let lambda = rng.random_range(0.0..2.0 * PI);
    let t = rng.random_range(0.0..PI);
    let phi = rng.random_range(0.0..2.0 * PI);

    let constructions: Vec<(String, crate::error::Result<crate::tensor::UnitaryMatrix>)> = vec![
        ("diag-phase".into(), diag_single_phase(3, phi)),
        ("diag-random".into(), diag_random(4, seed)),
        ("u-lambda".into(), Ok(u_lambda(lambda))),
        ("nd-even".into(), und_even(4, lambda)),
        ("u-w".into(), Ok(u_w())),
        (
            "nd-odd-uw".into(),
            und_odd(3, lambda, &InnerGate::UwExact { omega: OmegaVariant::Paper }),
        ),
        (
            "nd-odd-haar".into(),
            und_odd(5, lambda, &InnerGate::HaarSeed { seed }),
        ),
        ("dm".into(), u_dm(4, t)),
        ("dm-h".into(), u_dm_h(3, t)),
        ("haar".into(), haar_random(8, seed)),
    ];
    for (name, result) in constructions {
        match result {
            Ok(u) => {
                let defect = defect_of(&u);
                suite.check(defect <= 1e-10, || {
                    format!("{name}: unitarity defect {defect:.3e}")
                });
            }
            Err(err) => suite.check(false, || format!("{name}: construction failed: {err}")),
        }
    }

    for parity in [LayerParity::Odd, LayerParity::Even] {
        for n in [3usize, 4, 5] {
            if parity.bonds(n).is_empty() {
                continue;
            }
            let dm = dm_hamiltonian(n, parity).expect("bonds exist");
            suite.check(dm.trace().norm() <= 1e-14, || {
                format!("dm n={n} {}: trace {}", parity.name(), dm.trace())
            });
            let heis = heisenberg_hamiltonian(n, parity).expect("bonds exist");
            let herm_defect = (heis.entries() - heis.entries().adjoint()).norm();
            suite.check(herm_defect <= 1e-14, || {
                format!("heisenberg n={n} {}: defect {herm_defect:.3e}", parity.name())
            });
        }
    }
    suite
}
