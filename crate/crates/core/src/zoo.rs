//! Constructors for every unitary family under study: diagonal families,
//! the layered even/odd non-diagonal constructions, DM and Heisenberg
//! evolutions, and Haar-random unitaries.
//!
//! All bonds use open boundary conditions: pairs `(i, i+1)` with `i <= N-1`.
//! Every seeded constructor owns a ChaCha8 stream derived from its seed, so
//! calls are pure given `(spec, seed)`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::brickwork::{build_circuit_unitary, CircuitSpec};
use crate::error::{Error, Result};
use crate::tensor::{
    c, embed_two_qubit_gate, evolve, pauli_string, pauli_x, pauli_y, pauli_z, C64, CMatrix,
    CVector, HermitianMatrix, UnitaryMatrix,
};

/// Name of the PRNG backing every seeded constructor, recorded in output
/// metadata so seed -> stream stays pinned.
pub const PRNG_ALGORITHM: &str = "chacha8";

/// Fresh deterministic generator for `(seed, stream)`.
pub fn seeded_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Selects the bonds `(i, i+1)` with `i` odd or `i` even.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LayerParity {
    Odd,
    Even,
}

impl LayerParity {
    /// Open-boundary bonds of this parity on `num_qubits` sites.
    pub fn bonds(self, num_qubits: usize) -> Vec<(usize, usize)> {
        let start = match self {
            LayerParity::Odd => 1,
            LayerParity::Even => 2,
        };
        (start..num_qubits)
            .step_by(2)
            .map(|i| (i, i + 1))
            .collect()
    }

    pub fn name(self) -> &'static str {
        match self {
            LayerParity::Odd => "odd",
            LayerParity::Even => "even",
        }
    }
}

/// Phase convention for the `u_w` basis states.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OmegaVariant {
    /// omega = e^{i pi} = -1, as written in the construction.
    #[default]
    Paper,
    /// omega = e^{2 pi i / 3}; kept for sensitivity studies. The resulting
    /// image basis is not orthonormal, so construction reports the defect.
    CubeRoot,
}

/// Inner two-qubit gate of the odd construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum InnerGate {
    UwExact {
        #[serde(default)]
        omega: OmegaVariant,
    },
    HaarSeed {
        seed: u64,
    },
}

impl Default for InnerGate {
    fn default() -> Self {
        InnerGate::UwExact {
            omega: OmegaVariant::Paper,
        }
    }
}

/// Serializable identifier for every unitary in the zoo; the CLI's
/// unitary-selection schema.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum UnitarySpec {
    DiagPhase { n: usize, phi: f64 },
    DiagRandom { n: usize, seed: u64 },
    NdEven { n: usize, lambda: f64 },
    NdOdd { n: usize, lambda: f64, inner: InnerGate },
    Dm { n: usize, t: f64 },
    DmH { n: usize, t: f64 },
    Haar { dim: usize, seed: u64 },
    Brickwork { circuit: CircuitSpec },
}

impl UnitarySpec {
    pub fn build(&self) -> Result<UnitaryMatrix> {
        match self {
            UnitarySpec::DiagPhase { n, phi } => diag_single_phase(*n, *phi),
            UnitarySpec::DiagRandom { n, seed } => diag_random(*n, *seed),
            UnitarySpec::NdEven { n, lambda } => und_even(*n, *lambda),
            UnitarySpec::NdOdd { n, lambda, inner } => und_odd(*n, *lambda, inner),
            UnitarySpec::Dm { n, t } => u_dm(*n, *t),
            UnitarySpec::DmH { n, t } => u_dm_h(*n, *t),
            UnitarySpec::Haar { dim, seed } => haar_random(*dim, *seed),
            UnitarySpec::Brickwork { circuit } => build_circuit_unitary(circuit),
        }
    }

    /// Dimension of the built operator.
    pub fn dim(&self) -> usize {
        match self {
            UnitarySpec::DiagPhase { n, .. }
            | UnitarySpec::DiagRandom { n, .. }
            | UnitarySpec::NdEven { n, .. }
            | UnitarySpec::NdOdd { n, .. }
            | UnitarySpec::Dm { n, .. }
            | UnitarySpec::DmH { n, .. } => 1usize << n,
            UnitarySpec::Haar { dim, .. } => *dim,
            UnitarySpec::Brickwork { circuit } => 1usize << circuit.num_qubits,
        }
    }
}

fn require_min_qubits(n: usize, min: usize) -> Result<()> {
    if n < min {
        return Err(Error::TooFewQubits {
            num_qubits: n,
            min,
        });
    }
    Ok(())
}

/// diag(1, .., 1, e^{i phi}) on `n` qubits.
pub fn diag_single_phase(n: usize, phi: f64) -> Result<UnitaryMatrix> {
    require_min_qubits(n, 2)?;
    let dim = 1usize << n;
    let mut entries = CMatrix::identity(dim, dim);
    entries[(dim - 1, dim - 1)] = c(0.0, phi).exp();
    UnitaryMatrix::new(entries)
}

/// diag(e^{i phi_1}, .., e^{i phi_2^n}) with phases drawn Normal(0, 1).
pub fn diag_random(n: usize, seed: u64) -> Result<UnitaryMatrix> {
    require_min_qubits(n, 2)?;
    let dim = 1usize << n;
    let mut rng = seeded_rng(seed, 0);
    let mut entries = CMatrix::zeros(dim, dim);
    for k in 0..dim {
        let phi: f64 = rng.sample(StandardNormal);
        entries[(k, k)] = c(0.0, phi).exp();
    }
    UnitaryMatrix::new(entries)
}

/// Two-qubit bond gate
/// `|00><00| + |11><11| + cos l (|01><01| + |10><10|) + sin l (|01><10| - |10><01|)`.
pub fn u_lambda(lambda: f64) -> UnitaryMatrix {
    let (s, co) = lambda.sin_cos();
    let z = c(0.0, 0.0);
    let one = c(1.0, 0.0);
    let entries = CMatrix::from_row_slice(
        4,
        4,
        &[
            one,
            z,
            z,
            z,
            z,
            c(co, 0.0),
            c(s, 0.0),
            z,
            z,
            c(-s, 0.0),
            c(co, 0.0),
            z,
            z,
            z,
            z,
            one,
        ],
    );
    UnitaryMatrix::new(entries).expect("rotation block is unitary")
}

pub(crate) fn layer_of_gate(gate: &UnitaryMatrix, parity: LayerParity, n: usize) -> Result<CMatrix> {
    let bonds = parity.bonds(n);
    if bonds.is_empty() {
        return Err(Error::NoBondsForParity {
            parity: parity.name(),
            num_qubits: n,
        });
    }
    let dim = 1usize << n;
    let mut layer = CMatrix::identity(dim, dim);
    for (i, j) in bonds {
        let embedded = embed_two_qubit_gate(gate, i, j, n)?;
        layer = embedded.entries() * layer;
    }
    Ok(layer)
}

/// Even-qubit non-diagonal construction: odd layer times even layer of
/// `u_lambda` bonds. Applied to a state, the even layer acts first.
pub fn und_even(n: usize, lambda: f64) -> Result<UnitaryMatrix> {
    if n % 2 != 0 {
        return Err(Error::ParityMismatch {
            kind: "nd-even",
            expected: "even",
            num_qubits: n,
        });
    }
    require_min_qubits(n, 4)?;
    let gate = u_lambda(lambda);
    let odd = layer_of_gate(&gate, LayerParity::Odd, n)?;
    let even = layer_of_gate(&gate, LayerParity::Even, n)?;
    UnitaryMatrix::new(odd * even)
}

fn qubit_pair_state(first: &CVector, second: &CVector) -> CVector {
    first.kronecker(second)
}

/// Orthogonal companion of a real single-qubit state `a|0> + b|1>`:
/// `-b|0> + a|1>`.
fn orthogonal_real(v: &CVector) -> CVector {
    CVector::from_vec(vec![-v[1], v[0]])
}

/// The fixed two-qubit gate of the odd construction, paper phase convention.
pub fn u_w() -> UnitaryMatrix {
    u_w_with_omega(OmegaVariant::Paper).expect("paper omega yields an orthonormal image basis")
}

/// `u_w` under a chosen omega. The cube-root variant does not produce an
/// orthonormal image basis, so it fails the unitarity invariant; the error
/// carries the measured defect.
pub fn u_w_with_omega(variant: OmegaVariant) -> Result<UnitaryMatrix> {
    let omega = match variant {
        OmegaVariant::Paper => c(0.0, std::f64::consts::PI).exp(),
        OmegaVariant::CubeRoot => c(0.0, 2.0 * std::f64::consts::PI / 3.0).exp(),
    };
    let omega2 = omega * omega;
    let half = c(0.5, 0.0);
    let root3_half = c(3f64.sqrt() / 2.0, 0.0);
    let beta = CVector::from_vec(vec![-half, root3_half]);
    let gamma = CVector::from_vec(vec![-half, -root3_half]);
    let beta_t = orthogonal_real(&beta);
    let gamma_t = orthogonal_real(&gamma);

    let ket0 = CVector::from_vec(vec![c(1.0, 0.0), c(0.0, 0.0)]);
    let ket1 = CVector::from_vec(vec![c(0.0, 0.0), c(1.0, 0.0)]);
    let inv_sqrt2 = c(std::f64::consts::FRAC_1_SQRT_2, 0.0);

    let w01 = (qubit_pair_state(&gamma, &ket1) * omega2 + qubit_pair_state(&beta, &ket0) * omega)
        * inv_sqrt2;
    let w00 = (qubit_pair_state(&gamma, &ket1) + qubit_pair_state(&beta, &ket0)) * inv_sqrt2;
    let w10 = (qubit_pair_state(&gamma_t, &ket1) + qubit_pair_state(&beta_t, &ket0)) * inv_sqrt2;
    let w11 = (qubit_pair_state(&gamma_t, &ket1) * omega2
        + qubit_pair_state(&beta_t, &ket0) * omega)
        * inv_sqrt2;

    let mut entries = CMatrix::zeros(4, 4);
    entries.set_column(0, &(w00 * c(0.0, -1.0)));
    entries.set_column(1, &w01);
    entries.set_column(2, &w10);
    entries.set_column(3, &w11);
    UnitaryMatrix::new(entries)
}

/// Odd-qubit non-diagonal construction on `n = 2m + 1` sites:
/// odd and even `u_lambda` layers restricted to the first `2m` sites, with
/// the inner gate on sites `(n-1, n)` acting first.
pub fn und_odd(n: usize, lambda: f64, inner: &InnerGate) -> Result<UnitaryMatrix> {
    if n % 2 != 1 {
        return Err(Error::ParityMismatch {
            kind: "nd-odd",
            expected: "odd",
            num_qubits: n,
        });
    }
    require_min_qubits(n, 3)?;
    let m = (n - 1) / 2;
    let gate = u_lambda(lambda);
    let inner_gate = match inner {
        InnerGate::UwExact { omega } => u_w_with_omega(*omega)?,
        InnerGate::HaarSeed { seed } => haar_random(4, *seed)?,
    };
    let mut entries = embed_two_qubit_gate(&inner_gate, 2 * m, 2 * m + 1, n)?
        .entries()
        .clone();
    for i in (2..2 * m).step_by(2) {
        let embedded = embed_two_qubit_gate(&gate, i, i + 1, n)?;
        entries = embedded.entries() * entries;
    }
    for i in (1..=2 * m - 1).step_by(2) {
        let embedded = embed_two_qubit_gate(&gate, i, i + 1, n)?;
        entries = embedded.entries() * entries;
    }
    UnitaryMatrix::new(entries)
}

/// Dzyaloshinskii-Moriya Hamiltonian
/// `1/2 sum_{i in parity} (sy_i sx_{i+1} - sx_i sy_{i+1})`.
pub fn dm_hamiltonian(n: usize, parity: LayerParity) -> Result<HermitianMatrix> {
    require_min_qubits(n, 2)?;
    let bonds = parity.bonds(n);
    if bonds.is_empty() {
        return Err(Error::NoBondsForParity {
            parity: parity.name(),
            num_qubits: n,
        });
    }
    let dim = 1usize << n;
    let mut h = CMatrix::zeros(dim, dim);
    for (i, j) in bonds {
        h += pauli_string(n, &[(i, pauli_y()), (j, pauli_x())])?;
        h -= pauli_string(n, &[(i, pauli_x()), (j, pauli_y())])?;
    }
    HermitianMatrix::new(h.scale(0.5))
}

/// Isotropic Heisenberg Hamiltonian
/// `sum_{i in parity} (sx_i sx_{i+1} + sy_i sy_{i+1} + sz_i sz_{i+1})`.
pub fn heisenberg_hamiltonian(n: usize, parity: LayerParity) -> Result<HermitianMatrix> {
    require_min_qubits(n, 2)?;
    let bonds = parity.bonds(n);
    if bonds.is_empty() {
        return Err(Error::NoBondsForParity {
            parity: parity.name(),
            num_qubits: n,
        });
    }
    let dim = 1usize << n;
    let mut h = CMatrix::zeros(dim, dim);
    for (i, j) in bonds {
        h += pauli_string(n, &[(i, pauli_x()), (j, pauli_x())])?;
        h += pauli_string(n, &[(i, pauli_y()), (j, pauli_y())])?;
        h += pauli_string(n, &[(i, pauli_z()), (j, pauli_z())])?;
    }
    HermitianMatrix::new(h)
}

/// `exp(-i H_DM^odd t) exp(-i H_DM^even t)` on an even number of qubits;
/// the even factor acts first on states.
pub fn u_dm(n: usize, t: f64) -> Result<UnitaryMatrix> {
    if n % 2 != 0 {
        return Err(Error::ParityMismatch {
            kind: "dm",
            expected: "even",
            num_qubits: n,
        });
    }
    require_min_qubits(n, 4)?;
    let odd = evolve(&dm_hamiltonian(n, LayerParity::Odd)?, t);
    let even = evolve(&dm_hamiltonian(n, LayerParity::Even)?, t);
    UnitaryMatrix::new(odd.entries() * even.entries())
}

/// `exp(-i H_DM^odd t) exp(-i H_H^even t)` on an odd number of qubits;
/// the Heisenberg factor acts first on states.
pub fn u_dm_h(n: usize, t: f64) -> Result<UnitaryMatrix> {
    if n % 2 != 1 {
        return Err(Error::ParityMismatch {
            kind: "dm-h",
            expected: "odd",
            num_qubits: n,
        });
    }
    require_min_qubits(n, 3)?;
    let dm = evolve(&dm_hamiltonian(n, LayerParity::Odd)?, t);
    let heis = evolve(&heisenberg_hamiltonian(n, LayerParity::Even)?, t);
    UnitaryMatrix::new(dm.entries() * heis.entries())
}

/// Haar-random unitary from a seeded stream. See [`haar_from_rng`].
pub fn haar_random(dim: usize, seed: u64) -> Result<UnitaryMatrix> {
    if dim < 2 {
        return Err(Error::NotQubitDimension { dim });
    }
    let mut rng = seeded_rng(seed, 0);
    Ok(haar_from_rng(dim, &mut rng))
}

/// QR of a complex Ginibre matrix with the R-diagonal phase correction
/// `Q <- Q diag(r_kk / |r_kk|)`, which makes the draw Haar-distributed.
pub fn haar_from_rng<R: Rng>(dim: usize, rng: &mut R) -> UnitaryMatrix {
    let ginibre = CMatrix::from_fn(dim, dim, |_, _| {
        c(rng.sample(StandardNormal), rng.sample(StandardNormal))
    });
    let qr = ginibre.qr();
    let r_diag: Vec<C64> = (0..dim).map(|k| qr.r()[(k, k)]).collect();
    let mut q = qr.q();
    for (k, rkk) in r_diag.iter().enumerate() {
        let norm = rkk.norm();
        let phase = if norm > 0.0 { rkk / norm } else { c(1.0, 0.0) };
        let mut col = q.column_mut(k);
        col *= phase;
    }
    UnitaryMatrix::new(q).expect("phase-corrected QR factor is unitary")
}


#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use crate::tensor::{apply_unitary, hermitian_eigenvalues, pauli_string, PureState};

    const PI: f64 = std::f64::consts::PI;

    #[test]
    fn diag_phase_at_zero_is_identity() {
        let u = diag_single_phase(3, 0.0).unwrap();
        assert!((u.entries() - CMatrix::identity(8, 8)).norm() < 1e-15);
    }

    #[test]
    fn diag_phase_at_pi_is_ccz() {
        let u = diag_single_phase(3, PI).unwrap();
        for k in 0..8 {
            let expected = if k == 7 { -1.0 } else { 1.0 };
            assert_abs_diff_eq!(u.entries()[(k, k)].re, expected, epsilon = 1e-15);
            assert_abs_diff_eq!(u.entries()[(k, k)].im, 0.0, epsilon = 1e-15);
        }
    }

    #[test]
    fn diag_phase_quarter_turn_on_two_qubits() {
        let u = diag_single_phase(2, PI / 2.0).unwrap();
        assert_abs_diff_eq!(u.entries()[(3, 3)].im, 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(u.entries()[(3, 3)].re, 0.0, epsilon = 1e-15);
    }

    #[test]
    fn diag_random_entries_have_unit_modulus_and_are_reproducible() {
        let u1 = diag_random(3, 99).unwrap();
        let u2 = diag_random(3, 99).unwrap();
        assert_eq!(u1.entries(), u2.entries());
        for k in 0..8 {
            assert_abs_diff_eq!(u1.entries()[(k, k)].norm(), 1.0, epsilon = 1e-14);
        }
        let other = diag_random(3, 100).unwrap();
        assert_ne!(u1.entries(), other.entries());
    }

    #[test]
    fn gaussian_phase_sampler_has_near_zero_mean() {
        use rand_distr::StandardNormal;
        let mut rng = seeded_rng(2024, 0);
        let samples = 100_000;
        let mean: f64 =
            (0..samples).map(|_| rng.sample::<f64, _>(StandardNormal)).sum::<f64>()
                / samples as f64;
        assert!(mean.abs() <= 0.02, "sample mean {mean}");
    }

    #[test]
    fn u_lambda_at_zero_is_identity() {
        assert!((u_lambda(0.0).entries() - CMatrix::identity(4, 4)).norm() < 1e-15);
    }

    #[test]
    fn u_lambda_at_half_pi_swaps_with_sign() {
        let u = u_lambda(PI / 2.0);
        let out01 = apply_unitary(
            &crate::tensor::UnitaryMatrix::new(u.entries().clone()).unwrap(),
            &PureState::basis_state(2, 0b01),
        )
        .unwrap();
        assert_abs_diff_eq!(out01.amps()[0b10].re, -1.0, epsilon = 1e-15);
        let out10 = apply_unitary(&u, &PureState::basis_state(2, 0b10)).unwrap();
        assert_abs_diff_eq!(out10.amps()[0b01].re, 1.0, epsilon = 1e-15);
    }

    #[test]
    fn u_lambda_adjoint_is_negated_angle() {
        let lambda = 1.234;
        let diff = u_lambda(lambda).adjoint().entries() - u_lambda(-lambda).entries();
        assert!(diff.norm() < 1e-15);
    }

    #[test]
    fn embedded_u_lambda_half_pi_moves_basis_state() {
        // Direct substitution at lambda = pi/2: the (2,3) bond sees |01>,
        // which maps to -|10>, so |001> goes to -|010>.
        let gate = u_lambda(PI / 2.0);
        let embedded = embed_two_qubit_gate(&gate, 2, 3, 3).unwrap();
        let out = apply_unitary(&embedded, &PureState::basis_state(3, 0b001)).unwrap();
        assert_abs_diff_eq!(out.amps()[0b010].re, -1.0, epsilon = 1e-15);
    }

    #[test]
    fn und_even_at_zero_is_identity() {
        let u = und_even(4, 0.0).unwrap();
        assert!((u.entries() - CMatrix::identity(16, 16)).norm() < 1e-15);
    }

    #[test]
    fn und_even_is_unitary() {
        let u = und_even(4, 0.7).unwrap();
        assert!(u.unitarity_defect() < 1e-12);
    }

    #[test]
    fn und_even_at_half_pi_maps_basis_to_basis() {
        // Layer-by-layer composition at lambda = pi/2: |0101> passes the even
        // bond (2,3) as |10> -> |01| giving |0011>, then both odd bonds see
        // fixed points. Result: +|0011>.
        let u = und_even(4, PI / 2.0).unwrap();
        let out = apply_unitary(&u, &PureState::basis_state(4, 0b0101)).unwrap();
        assert_abs_diff_eq!(out.amps()[0b0011].re, 1.0, epsilon = 1e-14);
    }

    #[test]
    fn und_even_rejects_odd_or_small_counts() {
        assert!(matches!(
            und_even(3, 0.3),
            Err(Error::ParityMismatch { .. })
        ));
        assert!(matches!(und_even(2, 0.3), Err(Error::TooFewQubits { .. })));
    }

    #[test]
    fn und_even_adjoint_reverses_layers_with_negated_angle() {
        let n = 4;
        let lambda = 0.9;
        let adjoint = und_even(n, lambda).unwrap().adjoint();
        let gate = u_lambda(-lambda);
        let odd = layer_of_gate(&gate, LayerParity::Odd, n).unwrap();
        let even = layer_of_gate(&gate, LayerParity::Even, n).unwrap();
        let reversed = even * odd;
        assert!((adjoint.entries() - reversed).norm() < 1e-12);
    }

    #[test]
    fn u_w_is_unitary_with_expected_first_column() {
        let u = u_w();
        assert!(u.unitarity_defect() < 1e-12);
        // column |00> is -i w00 with w00 = (-1/2, -1/2, sqrt3/2, -sqrt3/2)/sqrt2
        let inv = 1.0 / (2.0 * 2f64.sqrt());
        let root3 = 3f64.sqrt();
        let expected = [
            c(0.0, inv),
            c(0.0, inv),
            c(0.0, -root3 * inv),
            c(0.0, root3 * inv),
        ];
        for (row, want) in expected.iter().enumerate() {
            assert!((u.entries()[(row, 0)] - want).norm() < 1e-14);
        }
    }

    #[test]
    fn u_w_image_basis_is_orthonormal() {
        // <w00|w01> = (omega + omega^2)/2 = 0 at omega = -1; all other pairs
        // vanish through <beta|beta_t> = <gamma|gamma_t> = 0.
        let u = u_w();
        let gram = u.entries().adjoint() * u.entries();
        assert!((gram - CMatrix::identity(4, 4)).norm() < 1e-12);
    }

    #[test]
    fn u_w_cube_root_variant_is_not_unitary() {
        match u_w_with_omega(OmegaVariant::CubeRoot) {
            Err(Error::NotUnitary { defect }) => assert!(defect > 0.1),
            other => panic!("expected a unitarity failure, got {other:?}"),
        }
    }

    #[test]
    fn und_odd_at_zero_lambda_is_embedded_inner_gate() {
        let u = und_odd(3, 0.0, &InnerGate::default()).unwrap();
        let expected = embed_two_qubit_gate(&u_w(), 2, 3, 3).unwrap();
        assert!((u.entries() - expected.entries()).norm() < 1e-14);
    }

    #[test]
    fn und_odd_is_unitary_for_random_angles() {
        let mut rng = seeded_rng(31, 0);
        for _ in 0..5 {
            let lambda = rng.random_range(0.0..2.0 * PI);
            let u = und_odd(3, lambda, &InnerGate::default()).unwrap();
            assert!(u.unitarity_defect() < 1e-12);
            let u5 = und_odd(5, lambda, &InnerGate::HaarSeed { seed: 4 }).unwrap();
            assert!(u5.unitarity_defect() < 1e-12);
        }
    }

    #[test]
    fn und_odd_haar_inner_is_reproducible() {
        let a = und_odd(3, 0.4, &InnerGate::HaarSeed { seed: 12 }).unwrap();
        let b = und_odd(3, 0.4, &InnerGate::HaarSeed { seed: 12 }).unwrap();
        assert_eq!(a.entries(), b.entries());
    }

    #[test]
    fn und_odd_rejects_even_counts() {
        assert!(matches!(
            und_odd(4, 0.3, &InnerGate::default()),
            Err(Error::ParityMismatch { .. })
        ));
    }

    #[test]
    fn dm_two_site_matches_pauli_expression() {
        let h = dm_hamiltonian(2, LayerParity::Odd).unwrap();
        let expected =
            (crate::tensor::kron(&pauli_y(), &pauli_x()) - crate::tensor::kron(&pauli_x(), &pauli_y()))
                .scale(0.5);
        assert!((h.entries() - expected).norm() < 1e-15);
    }

    #[test]
    fn dm_hamiltonians_are_traceless() {
        for (n, parity) in [(2, LayerParity::Odd), (4, LayerParity::Odd), (4, LayerParity::Even), (5, LayerParity::Even)] {
            let h = dm_hamiltonian(n, parity).unwrap();
            assert!(h.trace().norm() < 1e-14);
        }
    }

    #[test]
    fn dm_two_site_spectrum() {
        let h = dm_hamiltonian(2, LayerParity::Odd).unwrap();
        let eigs = hermitian_eigenvalues(&h);
        let expected = [1.0, 0.0, 0.0, -1.0];
        for (got, want) in eigs.iter().zip(expected) {
            assert_abs_diff_eq!(*got, want, epsilon = 1e-12);
        }
    }

    #[test]
    fn dm_rejects_missing_bonds() {
        assert!(matches!(
            dm_hamiltonian(2, LayerParity::Even),
            Err(Error::NoBondsForParity { .. })
        ));
    }

    #[test]
    fn heisenberg_two_site_spectrum() {
        assert!(matches!(
            heisenberg_hamiltonian(2, LayerParity::Even),
            Err(Error::NoBondsForParity { .. })
        ));
        let h = heisenberg_hamiltonian(2, LayerParity::Odd).unwrap();
        let eigs = hermitian_eigenvalues(&h);
        let expected = [1.0, 1.0, 1.0, -3.0];
        for (got, want) in eigs.iter().zip(expected) {
            assert_abs_diff_eq!(*got, want, epsilon = 1e-12);
        }
    }

    #[test]
    fn heisenberg_three_site_even_acts_on_last_bond() {
        let h = heisenberg_hamiltonian(3, LayerParity::Even).unwrap();
        let expected = pauli_string(3, &[(2, pauli_x()), (3, pauli_x())]).unwrap()
            + pauli_string(3, &[(2, pauli_y()), (3, pauli_y())]).unwrap()
            + pauli_string(3, &[(2, pauli_z()), (3, pauli_z())]).unwrap();
        assert!((h.entries() - expected).norm() < 1e-15);
    }

    #[test]
    fn hamiltonian_support_locality() {
        // conjugation by sigma_z on a site outside all bonds leaves H fixed
        let h = dm_hamiltonian(3, LayerParity::Odd).unwrap();
        let z3 = pauli_string(3, &[(3, pauli_z())]).unwrap();
        let conjugated = &z3 * h.entries() * &z3;
        assert!((conjugated - h.entries()).norm() < 1e-14);
    }

    #[test]
    fn u_dm_basics() {
        let u = u_dm(4, 0.0).unwrap();
        assert!((u.entries() - CMatrix::identity(16, 16)).norm() < 1e-12);
        let u = u_dm(4, 0.8).unwrap();
        assert!(u.unitarity_defect() < 1e-10);
        assert!(matches!(u_dm(3, 0.5), Err(Error::ParityMismatch { .. })));
    }

    #[test]
    fn dm_layer_hamiltonians_do_not_commute() {
        let odd = dm_hamiltonian(4, LayerParity::Odd).unwrap();
        let even = dm_hamiltonian(4, LayerParity::Even).unwrap();
        let commutator = odd.entries() * even.entries() - even.entries() * odd.entries();
        assert!(commutator.norm() > 0.1);
    }

    #[test]
    fn u_dm_h_basics() {
        let u = u_dm_h(3, 0.0).unwrap();
        assert!((u.entries() - CMatrix::identity(8, 8)).norm() < 1e-12);
        let u = u_dm_h(3, 1.1).unwrap();
        assert!(u.unitarity_defect() < 1e-10);
        assert!(matches!(u_dm_h(4, 0.5), Err(Error::ParityMismatch { .. })));
    }

    #[test]
    fn dm_heisenberg_layers_do_not_commute() {
        let dm = dm_hamiltonian(3, LayerParity::Odd).unwrap();
        let heis = heisenberg_hamiltonian(3, LayerParity::Even).unwrap();
        let commutator = dm.entries() * heis.entries() - heis.entries() * dm.entries();
        assert!(commutator.norm() > 0.1);
    }

    #[test]
    fn haar_random_is_unitary_and_reproducible() {
        let a = haar_random(8, 5).unwrap();
        assert!(a.unitarity_defect() < 1e-10);
        let b = haar_random(8, 5).unwrap();
        assert_eq!(a.entries(), b.entries());
        assert_ne!(a.entries(), haar_random(8, 6).unwrap().entries());
    }

    #[test]
    fn haar_trace_moment_matches_theory() {
        // E |tr U|^2 = 1 under the Haar measure.
        let draws = 10_000;
        let mut rng = seeded_rng(77, 0);
        let mean: f64 = (0..draws)
            .map(|_| haar_from_rng(8, &mut rng).entries().trace().norm_sqr())
            .sum::<f64>()
            / draws as f64;
        assert!((mean - 1.0).abs() <= 0.05, "mean |tr U|^2 = {mean}");
    }

    #[test]
    fn diagonal_unitaries_commute() {
        let d1 = diag_single_phase(3, 1.1).unwrap();
        let d2 = diag_random(3, 8).unwrap();
        let commutator = d1.entries() * d2.entries() - d2.entries() * d1.entries();
        assert!(commutator.norm() <= 1e-12);
    }

    #[test]
    fn unitary_spec_builds_and_serializes() {
        let spec = UnitarySpec::NdOdd {
            n: 3,
            lambda: 1.2,
            inner: InnerGate::HaarSeed { seed: 3 },
        };
        let json = serde_json::to_string(&spec).unwrap();
        assert!(json.contains("\"kind\":\"nd-odd\""));
        let back: UnitarySpec = serde_json::from_str(&json).unwrap();
        assert_eq!(spec, back);
        assert_eq!(spec.dim(), 8);
        assert!(spec.build().unwrap().unitarity_defect() < 1e-12);

        let parsed: UnitarySpec =
            serde_json::from_str(r#"{"kind":"diag-phase","n":3,"phi":3.14159}"#).unwrap();
        assert_eq!(parsed.dim(), 8);
    }
}
