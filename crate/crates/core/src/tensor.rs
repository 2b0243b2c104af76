//! Dense complex linear algebra for multiqubit states and operators.
//!
//! Conventions used across the crate:
//! - qubit indices are 1-based, `1..=N`;
//! - basis index `i` encodes the bitstring `i1 i2 .. iN` big-endian, so
//!   qubit 1 is the most significant bit;
//! - states are column vectors and operators act as `U * psi`, so in a
//!   matrix product the rightmost factor acts first.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type C64 = Complex64;
pub type CMatrix = DMatrix<C64>;
pub type CVector = DVector<C64>;

/// Tolerance for state normalization.
pub const NORM_TOL: f64 = 1e-12;
/// Tolerance for the unitarity defect ||U U† - I||_F.
pub const UNITARY_TOL: f64 = 1e-10;
/// Tolerance for the Hermiticity defect ||H - H†||_F.
pub const HERMITIAN_TOL: f64 = 1e-12;
/// Asymmetry up to this bound is silently symmetrized away; beyond it the
/// input is rejected as non-Hermitian.
pub const SYMMETRIZE_TOL: f64 = 1e-10;

/// Default cap on qubit counts accepted by the front ends (dense storage).
pub const DEFAULT_MAX_QUBITS: usize = 12;

pub(crate) fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn is_power_of_two_dim(dim: usize) -> bool {
    dim >= 2 && dim.is_power_of_two()
}

/// Number of qubits for a power-of-two dimension.
pub fn qubits_for_dim(dim: usize) -> Result<usize> {
    if !is_power_of_two_dim(dim) {
        return Err(Error::NotQubitDimension { dim });
    }
    Ok(dim.trailing_zeros() as usize)
}

fn frobenius_distance(a: &CMatrix, b: &CMatrix) -> f64 {
    (a - b).norm()
}

// ---------------------------------------------------------------------------
// Pure states
// ---------------------------------------------------------------------------

/// A normalized pure state of `num_qubits` qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    num_qubits: usize,
    amps: CVector,
}

impl PureState {
    /// Validates length `2^num_qubits` and normalization within [`NORM_TOL`].
    pub fn new(num_qubits: usize, amps: CVector) -> Result<Self> {
        if num_qubits == 0 || amps.len() != 1usize << num_qubits {
            return Err(Error::BadAmplitudeLength {
                len: amps.len(),
                num_qubits,
            });
        }
        let norm_sq: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
        let defect = (norm_sq.sqrt() - 1.0).abs();
        if defect > NORM_TOL {
            return Err(Error::NotNormalized { defect });
        }
        Ok(Self { num_qubits, amps })
    }

    /// Computational basis state |index⟩.
    pub fn basis_state(num_qubits: usize, index: usize) -> Self {
        let dim = 1usize << num_qubits;
        assert!(index < dim, "basis index out of range");
        let mut amps = CVector::zeros(dim);
        amps[index] = c(1.0, 0.0);
        Self { num_qubits, amps }
    }

    /// Product of single-qubit states, site 1 first (most significant).
    pub fn from_qubit_states(qubits: &[(C64, C64)]) -> Result<Self> {
        if qubits.is_empty() {
            return Err(Error::TooFewQubits {
                num_qubits: 0,
                min: 1,
            });
        }
        let mut amps = CVector::from_element(1, c(1.0, 0.0));
        for &(a0, a1) in qubits {
            let single = CVector::from_vec(vec![a0, a1]);
            amps = amps.kronecker(&single);
        }
        Self::new(qubits.len(), amps)
    }

    /// (|0..0⟩ + |1..1⟩)/√2.
    pub fn ghz(num_qubits: usize) -> Result<Self> {
        if num_qubits < 2 {
            return Err(Error::TooFewQubits { num_qubits, min: 2 });
        }
        let dim = 1usize << num_qubits;
        let mut amps = CVector::zeros(dim);
        let x = c(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        amps[0] = x;
        amps[dim - 1] = x;
        Ok(Self { num_qubits, amps })
    }

    /// Equal superposition of all single-excitation basis states.
    pub fn w_state(num_qubits: usize) -> Result<Self> {
        if num_qubits < 2 {
            return Err(Error::TooFewQubits { num_qubits, min: 2 });
        }
        let dim = 1usize << num_qubits;
        let mut amps = CVector::zeros(dim);
        let x = c(1.0 / (num_qubits as f64).sqrt(), 0.0);
        for q in 1..=num_qubits {
            amps[1usize << (num_qubits - q)] = x;
        }
        Ok(Self { num_qubits, amps })
    }

    /// Haar-distributed random pure state: a normalized complex Gaussian
    /// vector.
    pub fn random<R: rand::Rng>(num_qubits: usize, rng: &mut R) -> Self {
        use rand_distr::StandardNormal;
        let dim = 1usize << num_qubits;
        let mut amps = CVector::from_fn(dim, |_, _| {
            c(rng.sample(StandardNormal), rng.sample(StandardNormal))
        });
        let norm = amps.norm();
        amps /= c(norm, 0.0);
        Self { num_qubits, amps }
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amps(&self) -> &CVector {
        &self.amps
    }

    pub fn norm(&self) -> f64 {
        self.amps.norm()
    }

    /// ⟨self|other⟩.
    pub fn inner(&self, other: &Self) -> C64 {
        self.amps.dotc(&other.amps)
    }
}

// ---------------------------------------------------------------------------
// Operators
// ---------------------------------------------------------------------------

/// Wire format for complex matrices: rows of `[re, im]` pairs. Deserializing
/// through it re-validates the target type's invariant.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WireMatrix(pub Vec<Vec<[f64; 2]>>);

impl WireMatrix {
    fn to_cmatrix(&self) -> Result<CMatrix> {
        let rows = self.0.len();
        let cols = self.0.first().map(|r| r.len()).unwrap_or(0);
        if rows == 0 || self.0.iter().any(|r| r.len() != cols) {
            return Err(Error::NotSquare { rows, cols });
        }
        Ok(CMatrix::from_fn(rows, cols, |i, j| {
            c(self.0[i][j][0], self.0[i][j][1])
        }))
    }

    fn from_cmatrix(m: &CMatrix) -> Self {
        Self(
            (0..m.nrows())
                .map(|i| (0..m.ncols()).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect())
                .collect(),
        )
    }
}

/// A dense matrix verified unitary at construction.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "WireMatrix", into = "WireMatrix")]
pub struct UnitaryMatrix {
    entries: CMatrix,
}

impl TryFrom<WireMatrix> for UnitaryMatrix {
    type Error = Error;
    fn try_from(wire: WireMatrix) -> Result<Self> {
        UnitaryMatrix::new(wire.to_cmatrix()?)
    }
}

impl From<UnitaryMatrix> for WireMatrix {
    fn from(m: UnitaryMatrix) -> Self {
        WireMatrix::from_cmatrix(m.entries())
    }
}

impl UnitaryMatrix {
    /// Validates squareness and `U U† = I` within [`UNITARY_TOL`].
    pub fn new(entries: CMatrix) -> Result<Self> {
        if entries.nrows() != entries.ncols() {
            return Err(Error::NotSquare {
                rows: entries.nrows(),
                cols: entries.ncols(),
            });
        }
        let dim = entries.nrows();
        let gram = &entries * entries.adjoint();
        let defect = frobenius_distance(&gram, &CMatrix::identity(dim, dim));
        if defect > UNITARY_TOL {
            return Err(Error::NotUnitary { defect });
        }
        Ok(Self { entries })
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            entries: CMatrix::identity(dim, dim),
        }
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    /// Qubit count when the dimension is a power of two >= 2.
    pub fn num_qubits(&self) -> Result<usize> {
        qubits_for_dim(self.dim())
    }

    pub fn entries(&self) -> &CMatrix {
        &self.entries
    }

    /// U†, unitary by construction.
    pub fn adjoint(&self) -> Self {
        Self {
            entries: self.entries.adjoint(),
        }
    }

    pub fn unitarity_defect(&self) -> f64 {
        let dim = self.dim();
        let gram = &self.entries * self.entries.adjoint();
        frobenius_distance(&gram, &CMatrix::identity(dim, dim))
    }

    /// Whether every off-diagonal entry is negligible.
    pub fn is_diagonal(&self, tol: f64) -> bool {
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                if i != j && self.entries[(i, j)].norm() > tol {
                    return false;
                }
            }
        }
        true
    }
}

/// A dense matrix verified (and stored exactly) Hermitian.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "WireMatrix", into = "WireMatrix")]
pub struct HermitianMatrix {
    entries: CMatrix,
}

impl TryFrom<WireMatrix> for HermitianMatrix {
    type Error = Error;
    fn try_from(wire: WireMatrix) -> Result<Self> {
        HermitianMatrix::new(wire.to_cmatrix()?)
    }
}

impl From<HermitianMatrix> for WireMatrix {
    fn from(m: HermitianMatrix) -> Self {
        WireMatrix::from_cmatrix(m.entries())
    }
}

impl HermitianMatrix {
    /// Asymmetry within [`SYMMETRIZE_TOL`] is absorbed by `H <- (H + H†)/2`;
    /// anything larger is rejected.
    pub fn new(entries: CMatrix) -> Result<Self> {
        if entries.nrows() != entries.ncols() {
            return Err(Error::NotSquare {
                rows: entries.nrows(),
                cols: entries.ncols(),
            });
        }
        let defect = frobenius_distance(&entries, &entries.adjoint());
        if defect > SYMMETRIZE_TOL {
            return Err(Error::NotHermitian { defect });
        }
        let symmetrized = (&entries + entries.adjoint()).scale(0.5);
        Ok(Self {
            entries: symmetrized,
        })
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entries(&self) -> &CMatrix {
        &self.entries
    }

    pub fn trace(&self) -> C64 {
        self.entries.trace()
    }
}

/// A reduced density matrix: Hermitian, unit trace.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    entries: CMatrix,
}

impl DensityMatrix {
    /// Full validation: Hermitian within [`HERMITIAN_TOL`], trace one within
    /// [`HERMITIAN_TOL`], eigenvalues >= -1e-10.
    pub fn new(entries: CMatrix) -> Result<Self> {
        if entries.nrows() != entries.ncols() {
            return Err(Error::NotSquare {
                rows: entries.nrows(),
                cols: entries.ncols(),
            });
        }
        let herm_defect = frobenius_distance(&entries, &entries.adjoint());
        if herm_defect > HERMITIAN_TOL {
            return Err(Error::NotDensityMatrix {
                reason: format!("Hermiticity defect {herm_defect:.3e}"),
            });
        }
        let tr = entries.trace();
        if (tr - c(1.0, 0.0)).norm() > HERMITIAN_TOL {
            return Err(Error::NotDensityMatrix {
                reason: format!("trace = {tr}"),
            });
        }
        let symmetrized = (&entries + entries.adjoint()).scale(0.5);
        let min_eig = hermitian_eigs_raw(&symmetrized)
            .into_iter()
            .last()
            .unwrap_or(0.0);
        if min_eig < -1e-10 {
            return Err(Error::NotDensityMatrix {
                reason: format!("negative eigenvalue {min_eig:.3e}"),
            });
        }
        Ok(Self {
            entries: symmetrized,
        })
    }

    /// Construction path for partial traces: Hermitian and unit trace hold by
    /// construction up to roundoff, so only cheap checks run here.
    fn from_partial_trace(entries: CMatrix) -> Self {
        let symmetrized = (&entries + entries.adjoint()).scale(0.5);
        debug_assert!((symmetrized.trace().re - 1.0).abs() < 1e-9);
        Self {
            entries: symmetrized,
        }
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entries(&self) -> &CMatrix {
        &self.entries
    }

    pub fn trace(&self) -> C64 {
        self.entries.trace()
    }

    /// Real eigenvalues in descending order.
    pub fn eigenvalues(&self) -> Vec<f64> {
        hermitian_eigs_raw(&self.entries)
    }

    pub fn max_eigenvalue(&self) -> f64 {
        max_hermitian_eigenvalue(&self.entries)
    }
}

// ---------------------------------------------------------------------------
// Pauli matrices
// ---------------------------------------------------------------------------

pub fn identity2() -> CMatrix {
    CMatrix::identity(2, 2)
}

pub fn pauli_x() -> CMatrix {
    CMatrix::from_row_slice(2, 2, &[c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)])
}

pub fn pauli_y() -> CMatrix {
    CMatrix::from_row_slice(2, 2, &[c(0.0, 0.0), c(0.0, -1.0), c(0.0, 1.0), c(0.0, 0.0)])
}

pub fn pauli_z() -> CMatrix {
    CMatrix::from_row_slice(2, 2, &[c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(-1.0, 0.0)])
}

// ---------------------------------------------------------------------------
// Operations
// ---------------------------------------------------------------------------

/// Kronecker product; the left factor owns the more significant bits.
pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.kronecker(b)
}

/// Operator with `op` at the 1-based `sites` (in order) and identity elsewhere.
pub fn pauli_string(num_qubits: usize, factors: &[(usize, CMatrix)]) -> Result<CMatrix> {
    for (site, m) in factors {
        if *site < 1 || *site > num_qubits {
            return Err(Error::SiteOutOfRange {
                site: *site,
                num_qubits,
            });
        }
        if m.nrows() != 2 || m.ncols() != 2 {
            return Err(Error::BadGateDimension {
                dim: m.nrows(),
                expected: 2,
            });
        }
    }
    let mut result = CMatrix::identity(1, 1);
    for site in 1..=num_qubits {
        let factor = factors
            .iter()
            .find(|(s, _)| *s == site)
            .map(|(_, m)| m.clone())
            .unwrap_or_else(identity2);
        result = result.kronecker(&factor);
    }
    Ok(result)
}

/// Embeds a two-qubit gate on the ordered pair `(i, j)`, `1 <= i < j <= N`,
/// with qubit `i` on the gate's more significant wire.
pub fn embed_two_qubit_gate(
    gate: &UnitaryMatrix,
    i: usize,
    j: usize,
    num_qubits: usize,
) -> Result<UnitaryMatrix> {
    if gate.dim() != 4 {
        return Err(Error::BadGateDimension {
            dim: gate.dim(),
            expected: 4,
        });
    }
    if i < 1 || i > num_qubits {
        return Err(Error::SiteOutOfRange {
            site: i,
            num_qubits,
        });
    }
    if j < 1 || j > num_qubits {
        return Err(Error::SiteOutOfRange {
            site: j,
            num_qubits,
        });
    }
    if i >= j {
        return Err(Error::BadSitePair { i, j });
    }
    let dim = 1usize << num_qubits;
    let shift_i = num_qubits - i;
    let shift_j = num_qubits - j;
    let mask = (1usize << shift_i) | (1usize << shift_j);
    let g = gate.entries();
    let mut entries = CMatrix::zeros(dim, dim);
    for col in 0..dim {
        let bi = (col >> shift_i) & 1;
        let bj = (col >> shift_j) & 1;
        let gate_in = (bi << 1) | bj;
        let base = col & !mask;
        for gate_out in 0..4 {
            let amp = g[(gate_out, gate_in)];
            if amp.norm_sqr() == 0.0 {
                continue;
            }
            let row = base | ((gate_out >> 1) << shift_i) | ((gate_out & 1) << shift_j);
            entries[(row, col)] = amp;
        }
    }
    // Unitary by construction: a permutation-conjugated g ⊗ I.
    Ok(UnitaryMatrix { entries })
}

/// `U * psi`; preserves the norm by unitarity.
pub fn apply_unitary(u: &UnitaryMatrix, s: &PureState) -> Result<PureState> {
    if u.dim() != s.dim() {
        return Err(Error::DimensionMismatch {
            op_dim: u.dim(),
            state_dim: s.dim(),
        });
    }
    let amps = u.entries() * s.amps();
    PureState::new(s.num_qubits(), amps)
}

fn validate_keep(keep: &[usize], num_qubits: usize) -> Result<()> {
    let bad = || Error::BadKeepSet {
        keep: keep.to_vec(),
        num_qubits,
    };
    if keep.is_empty() || keep.len() >= num_qubits {
        return Err(bad());
    }
    for (pos, &site) in keep.iter().enumerate() {
        if site < 1 || site > num_qubits {
            return Err(bad());
        }
        if pos > 0 && keep[pos - 1] >= site {
            return Err(bad());
        }
    }
    Ok(())
}

/// Tr over the complement of `keep` (sorted, nonempty, strict subset).
pub fn partial_trace(s: &PureState, keep: &[usize]) -> Result<DensityMatrix> {
    let n = s.num_qubits();
    validate_keep(keep, n)?;
    let comp: Vec<usize> = (1..=n).filter(|q| !keep.contains(q)).collect();
    let l = keep.len();
    let m = comp.len();
    let keep_dim = 1usize << l;
    let comp_dim = 1usize << m;

    // Lookup tables from sub-indices to their scattered full-index bits.
    let keep_map: Vec<usize> = (0..keep_dim)
        .map(|a| {
            (0..l)
                .map(|p| ((a >> (l - 1 - p)) & 1) << (n - keep[p]))
                .sum()
        })
        .collect();
    let comp_map: Vec<usize> = (0..comp_dim)
        .map(|cidx| {
            (0..m)
                .map(|p| ((cidx >> (m - 1 - p)) & 1) << (n - comp[p]))
                .sum()
        })
        .collect();

    let amps = s.amps();
    let mut rho = CMatrix::zeros(keep_dim, keep_dim);
    let mut slice = vec![c(0.0, 0.0); keep_dim];
    for &cbits in &comp_map {
        for (a, &abits) in keep_map.iter().enumerate() {
            slice[a] = amps[abits | cbits];
        }
        for a in 0..keep_dim {
            let va = slice[a];
            if va.norm_sqr() == 0.0 {
                continue;
            }
            for b in 0..keep_dim {
                rho[(a, b)] += va * slice[b].conj();
            }
        }
    }
    Ok(DensityMatrix::from_partial_trace(rho))
}

/// Eigenvalues of a Hermitian matrix, descending. `Sum = trace` to roundoff.
pub fn hermitian_eigenvalues(h: &HermitianMatrix) -> Vec<f64> {
    hermitian_eigs_raw(h.entries())
}

/// Internal eigensolver on raw storage assumed Hermitian.
pub(crate) fn hermitian_eigs_raw(m: &CMatrix) -> Vec<f64> {
    let dim = m.nrows();
    let mut eigs: Vec<f64> = match dim {
        1 => vec![m[(0, 0)].re],
        2 => {
            let (lo, hi) = eig2(m);
            vec![lo, hi]
        }
        _ => nalgebra::SymmetricEigen::new(m.clone())
            .eigenvalues
            .iter()
            .copied()
            .collect(),
    };
    eigs.sort_by(|a, b| b.partial_cmp(a).expect("real eigenvalues"));
    eigs
}

/// Closed-form 2x2 Hermitian spectrum (ascending pair).
#[inline]
fn eig2(m: &CMatrix) -> (f64, f64) {
    let a = m[(0, 0)].re;
    let d = m[(1, 1)].re;
    let b = m[(0, 1)];
    let mean = 0.5 * (a + d);
    let radius = (0.25 * (a - d) * (a - d) + b.norm_sqr()).sqrt();
    (mean - radius, mean + radius)
}

/// Largest eigenvalue of a Hermitian matrix given as raw storage.
pub(crate) fn max_hermitian_eigenvalue(m: &CMatrix) -> f64 {
    match m.nrows() {
        1 => m[(0, 0)].re,
        2 => eig2(m).1,
        _ => nalgebra::SymmetricEigen::new(m.clone())
            .eigenvalues
            .iter()
            .fold(f64::NEG_INFINITY, |acc, &x| acc.max(x)),
    }
}

/// Direction of the generated phase in [`hermitian_expm`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    /// exp(-i H t)
    Plus,
    /// exp(+i H t)
    Minus,
}

/// `exp(sign * (-i) * H * t)` via the spectral decomposition of `H`.
pub fn hermitian_expm(h: &HermitianMatrix, t: f64, sign: Sign) -> UnitaryMatrix {
    let factor = match sign {
        Sign::Plus => -1.0,
        Sign::Minus => 1.0,
    };
    let eig = nalgebra::SymmetricEigen::new(h.entries().clone());
    let phases: Vec<C64> = eig
        .eigenvalues
        .iter()
        .map(|&e| (c(0.0, factor * e * t)).exp())
        .collect();
    let v = &eig.eigenvectors;
    let mut scaled = v.clone();
    for (k, phase) in phases.iter().enumerate() {
        let mut col = scaled.column_mut(k);
        col *= *phase;
    }
    let entries = scaled * v.adjoint();
    UnitaryMatrix::new(entries).expect("spectral exponential of a Hermitian matrix is unitary")
}

/// Shorthand for time evolution `exp(-i H t)`.
pub fn evolve(h: &HermitianMatrix, t: f64) -> UnitaryMatrix {
    hermitian_expm(h, t, Sign::Plus)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn frac_1_sqrt2() -> C64 {
        c(std::f64::consts::FRAC_1_SQRT_2, 0.0)
    }

    #[test]
    fn kron_of_identities_is_identity() {
        let result = kron(&identity2(), &identity2());
        assert_eq!(result, CMatrix::identity(4, 4));
    }

    #[test]
    fn kron_of_pauli_z_pair_is_diagonal_signs() {
        let result = kron(&pauli_z(), &pauli_z());
        let expected = CMatrix::from_diagonal(&CVector::from_vec(vec![
            c(1.0, 0.0),
            c(-1.0, 0.0),
            c(-1.0, 0.0),
            c(1.0, 0.0),
        ]));
        assert!((result - expected).norm() < 1e-15);
    }

    #[test]
    fn kron_pauli_x_pauli_y_corner_entry() {
        // Hand expansion of the 2x2 blocks: entry (0, 3) = x_{01} * y_{01} = -i.
        let result = kron(&pauli_x(), &pauli_y());
        assert_abs_diff_eq!(result[(0, 3)].re, 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(result[(0, 3)].im, -1.0, epsilon = 1e-15);
    }

    #[test]
    fn embed_identity_gate_gives_identity() {
        let embedded = embed_two_qubit_gate(&UnitaryMatrix::identity(4), 1, 2, 3).unwrap();
        assert!((embedded.entries() - CMatrix::identity(8, 8)).norm() < 1e-15);
    }

    #[test]
    fn embed_swap_exchanges_basis_states() {
        let mut swap = CMatrix::zeros(4, 4);
        swap[(0, 0)] = c(1.0, 0.0);
        swap[(1, 2)] = c(1.0, 0.0);
        swap[(2, 1)] = c(1.0, 0.0);
        swap[(3, 3)] = c(1.0, 0.0);
        let gate = UnitaryMatrix::new(swap).unwrap();
        let embedded = embed_two_qubit_gate(&gate, 1, 2, 2).unwrap();
        let out = apply_unitary(&embedded, &PureState::basis_state(2, 0b01)).unwrap();
        assert_abs_diff_eq!(out.amps()[0b10].re, 1.0, epsilon = 1e-15);
    }

    #[test]
    fn embed_on_nonadjacent_pair_acts_through_middle_qubit() {
        // CZ on sites (1, 3) of three qubits: phase only when both are 1.
        let cz = UnitaryMatrix::new(CMatrix::from_diagonal(&CVector::from_vec(vec![
            c(1.0, 0.0),
            c(1.0, 0.0),
            c(1.0, 0.0),
            c(-1.0, 0.0),
        ])))
        .unwrap();
        let embedded = embed_two_qubit_gate(&cz, 1, 3, 3).unwrap();
        for index in 0..8 {
            let out = apply_unitary(&embedded, &PureState::basis_state(3, index)).unwrap();
            let expected = if index & 0b101 == 0b101 { -1.0 } else { 1.0 };
            assert_abs_diff_eq!(out.amps()[index].re, expected, epsilon = 1e-15);
        }
    }

    #[test]
    fn embed_rejects_bad_sites() {
        let gate = UnitaryMatrix::identity(4);
        assert!(matches!(
            embed_two_qubit_gate(&gate, 2, 2, 3),
            Err(Error::BadSitePair { .. })
        ));
        assert!(matches!(
            embed_two_qubit_gate(&gate, 1, 4, 3),
            Err(Error::SiteOutOfRange { .. })
        ));
    }

    #[test]
    fn apply_identity_returns_same_state() {
        let state = PureState::ghz(3).unwrap();
        let out = apply_unitary(&UnitaryMatrix::identity(8), &state).unwrap();
        assert!((out.amps() - state.amps()).norm() < 1e-15);
    }

    #[test]
    fn apply_cnot_creates_bell_state() {
        let mut cnot = CMatrix::zeros(4, 4);
        cnot[(0, 0)] = c(1.0, 0.0);
        cnot[(1, 1)] = c(1.0, 0.0);
        cnot[(2, 3)] = c(1.0, 0.0);
        cnot[(3, 2)] = c(1.0, 0.0);
        let gate = embed_two_qubit_gate(&UnitaryMatrix::new(cnot).unwrap(), 1, 2, 2).unwrap();
        let plus_zero = PureState::new(
            2,
            CVector::from_vec(vec![frac_1_sqrt2(), c(0.0, 0.0), frac_1_sqrt2(), c(0.0, 0.0)]),
        )
        .unwrap();
        let out = apply_unitary(&gate, &plus_zero).unwrap();
        let bell = PureState::ghz(2).unwrap();
        assert!((out.amps() - bell.amps()).norm() < 1e-14);
    }

    #[test]
    fn apply_rejects_dimension_mismatch() {
        let state = PureState::ghz(2).unwrap();
        assert!(matches!(
            apply_unitary(&UnitaryMatrix::identity(8), &state),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn partial_trace_of_product_state_is_pure() {
        let rho = partial_trace(&PureState::basis_state(3, 0), &[1]).unwrap();
        assert_abs_diff_eq!(rho.entries()[(0, 0)].re, 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(rho.entries()[(1, 1)].re, 0.0, epsilon = 1e-15);
    }

    #[test]
    fn partial_trace_of_ghz_is_maximally_mixed() {
        let rho = partial_trace(&PureState::ghz(3).unwrap(), &[1]).unwrap();
        assert!((rho.entries() - CMatrix::identity(2, 2).scale(0.5)).norm() < 1e-14);
    }

    #[test]
    fn partial_trace_of_w3_single_site() {
        let rho = partial_trace(&PureState::w_state(3).unwrap(), &[1]).unwrap();
        assert_abs_diff_eq!(rho.entries()[(0, 0)].re, 2.0 / 3.0, epsilon = 1e-14);
        assert_abs_diff_eq!(rho.entries()[(1, 1)].re, 1.0 / 3.0, epsilon = 1e-14);
        assert_abs_diff_eq!(rho.entries()[(0, 1)].norm(), 0.0, epsilon = 1e-14);
    }

    #[test]
    fn partial_trace_rejects_empty_or_full_keep() {
        let state = PureState::ghz(3).unwrap();
        assert!(matches!(
            partial_trace(&state, &[]),
            Err(Error::BadKeepSet { .. })
        ));
        assert!(matches!(
            partial_trace(&state, &[1, 2, 3]),
            Err(Error::BadKeepSet { .. })
        ));
    }

    #[test]
    fn eigenvalues_of_known_matrices() {
        let half_mixed = HermitianMatrix::new(CMatrix::identity(2, 2).scale(0.5)).unwrap();
        assert_eq!(hermitian_eigenvalues(&half_mixed), vec![0.5, 0.5]);

        let x = HermitianMatrix::new(pauli_x()).unwrap();
        let eigs = hermitian_eigenvalues(&x);
        assert_abs_diff_eq!(eigs[0], 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(eigs[1], -1.0, epsilon = 1e-14);

        let diag = HermitianMatrix::new(CMatrix::from_diagonal(&CVector::from_vec(vec![
            c(2.0 / 3.0, 0.0),
            c(1.0 / 3.0, 0.0),
        ])))
        .unwrap();
        let eigs = hermitian_eigenvalues(&diag);
        assert_abs_diff_eq!(eigs[0], 2.0 / 3.0, epsilon = 1e-14);
        assert_abs_diff_eq!(eigs[1], 1.0 / 3.0, epsilon = 1e-14);
    }

    #[test]
    fn eigenvalue_sum_matches_trace_on_larger_matrix() {
        let mut rng = crate::zoo::seeded_rng(7, 0);
        let u = crate::zoo::haar_from_rng(8, &mut rng);
        let h = HermitianMatrix::new(u.entries() + u.entries().adjoint()).unwrap();
        let eigs = hermitian_eigenvalues(&h);
        let sum: f64 = eigs.iter().sum();
        assert_abs_diff_eq!(sum, h.trace().re, epsilon = 1e-10);
    }

    #[test]
    fn hermitian_constructor_symmetrizes_small_asymmetry_and_rejects_large() {
        let mut near = pauli_x();
        near[(0, 1)] += c(0.0, 5e-11);
        let h = HermitianMatrix::new(near).unwrap();
        assert!((h.entries() - h.entries().adjoint()).norm() == 0.0);

        let mut far = pauli_x();
        far[(0, 1)] += c(0.0, 1e-6);
        assert!(matches!(
            HermitianMatrix::new(far),
            Err(Error::NotHermitian { .. })
        ));
    }

    #[test]
    fn expm_of_pauli_z_is_diagonal_phases() {
        let h = HermitianMatrix::new(pauli_z()).unwrap();
        let t = 0.7;
        let u = hermitian_expm(&h, t, Sign::Plus);
        let expected = CMatrix::from_diagonal(&CVector::from_vec(vec![
            c(0.0, -t).exp(),
            c(0.0, t).exp(),
        ]));
        assert!((u.entries() - expected).norm() < 1e-14);
    }

    #[test]
    fn expm_at_time_zero_is_identity() {
        let h = HermitianMatrix::new(pauli_x() + pauli_z()).unwrap();
        let u = hermitian_expm(&h, 0.0, Sign::Plus);
        assert!((u.entries() - CMatrix::identity(2, 2)).norm() < 1e-14);
    }

    #[test]
    fn expm_group_inverse() {
        let h = HermitianMatrix::new(pauli_x() + pauli_y().scale(0.3)).unwrap();
        let forward = hermitian_expm(&h, 1.3, Sign::Plus);
        let backward = hermitian_expm(&h, -1.3, Sign::Plus);
        let product = forward.entries() * backward.entries();
        assert!((product - CMatrix::identity(2, 2)).norm() < 1e-10);
    }

    #[test]
    fn expm_sign_minus_is_adjoint_of_plus() {
        let h = HermitianMatrix::new(pauli_y()).unwrap();
        let plus = hermitian_expm(&h, 0.9, Sign::Plus);
        let minus = hermitian_expm(&h, 0.9, Sign::Minus);
        assert!((plus.adjoint().entries() - minus.entries()).norm() < 1e-12);
    }

    #[test]
    fn pure_state_validation() {
        assert!(matches!(
            PureState::new(2, CVector::zeros(3)),
            Err(Error::BadAmplitudeLength { .. })
        ));
        let unnormalized = CVector::from_vec(vec![c(1.0, 0.0), c(1.0, 0.0)]);
        assert!(matches!(
            PureState::new(1, unnormalized),
            Err(Error::NotNormalized { .. })
        ));
    }

    #[test]
    fn unitary_validation_rejects_non_unitary() {
        let m = CMatrix::identity(2, 2).scale(2.0);
        assert!(matches!(
            UnitaryMatrix::new(m),
            Err(Error::NotUnitary { .. })
        ));
    }

    #[test]
    fn density_matrix_validation() {
        let good = CMatrix::identity(2, 2).scale(0.5);
        assert!(DensityMatrix::new(good).is_ok());
        let bad_trace = CMatrix::identity(2, 2);
        assert!(matches!(
            DensityMatrix::new(bad_trace),
            Err(Error::NotDensityMatrix { .. })
        ));
        let negative = CMatrix::from_diagonal(&CVector::from_vec(vec![
            c(1.5, 0.0),
            c(-0.5, 0.0),
        ]));
        assert!(matches!(
            DensityMatrix::new(negative),
            Err(Error::NotDensityMatrix { .. })
        ));
    }

    #[test]
    fn wire_matrix_round_trip_preserves_unitary() {
        let u = crate::zoo::haar_random(4, 11).unwrap();
        let json = serde_json::to_string(&u).unwrap();
        let back: UnitaryMatrix = serde_json::from_str(&json).unwrap();
        assert!((u.entries() - back.entries()).norm() < 1e-12);
    }

    #[test]
    fn wire_matrix_rejects_non_unitary_payload() {
        let json = "[[[2.0,0.0],[0.0,0.0]],[[0.0,0.0],[2.0,0.0]]]";
        assert!(serde_json::from_str::<UnitaryMatrix>(json).is_err());
    }
}
