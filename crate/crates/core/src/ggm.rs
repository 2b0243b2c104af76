//! Generalized geometric measure of pure multiqubit states.
//!
//! For a pure state the measure is `1 - max` over the largest eigenvalues of
//! every reduced density matrix of up to half the sites. Schmidt symmetry
//! makes the complementary cuts redundant, so only subsets of size
//! `1..=N/2` are enumerated, and at exactly half size the subsets containing
//! site 1 canonically represent the cut.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tensor::{partial_trace, PureState};

/// A kept subset of sites identifying a bipartition.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Bipartition {
    keep: Vec<usize>,
}

impl Bipartition {
    /// Validates indices in `1..=num_qubits`, strictly increasing, with size
    /// `1..=N/2`, and the site-1 canonicalization at exactly half size.
    pub fn new(keep: Vec<usize>, num_qubits: usize) -> Result<Self> {
        let bad = || Error::BadKeepSet {
            keep: keep.clone(),
            num_qubits,
        };
        if keep.is_empty() || 2 * keep.len() > num_qubits {
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
        if 2 * keep.len() == num_qubits && keep[0] != 1 {
            return Err(bad());
        }
        Ok(Self { keep })
    }

    pub fn keep(&self) -> &[usize] {
        &self.keep
    }

    pub fn len(&self) -> usize {
        self.keep.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keep.is_empty()
    }
}

/// All bipartitions of sizes `1..=floor(N/2)` in (size, lexicographic) order.
pub fn enumerate_bipartitions(num_qubits: usize) -> Result<Vec<Bipartition>> {
    if num_qubits < 2 {
        return Err(Error::TooFewQubits { num_qubits, min: 2 });
    }
    let mut cuts = Vec::new();
    for size in 1..=(num_qubits / 2) {
        let half = 2 * size == num_qubits;
        let mut subset: Vec<usize> = (1..=size).collect();
        loop {
            if !half || subset[0] == 1 {
                cuts.push(Bipartition {
                    keep: subset.clone(),
                });
            }
            // next combination in lexicographic order
            let mut pos = size;
            while pos > 0 && subset[pos - 1] == num_qubits - (size - pos) {
                pos -= 1;
            }
            if pos == 0 {
                break;
            }
            subset[pos - 1] += 1;
            for p in pos..size {
                subset[p] = subset[p - 1] + 1;
            }
        }
    }
    Ok(cuts)
}

/// Result of a GGM evaluation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GgmResult {
    /// `1 - max_eigenvalue`, in `[0, 1/2]` for qubit systems.
    pub value: f64,
    /// The cut achieving the maximal eigenvalue (lexicographic tie-break).
    pub argmax_cut: Bipartition,
    /// The largest reduced-density-matrix eigenvalue over all cuts.
    pub max_eigenvalue: f64,
}

/// GGM of a pure state with the maximizing cut.
///
/// Every cut is evaluated eagerly; ties in the argmax are broken by
/// lexicographic order of the kept index set, so the result does not depend
/// on evaluation order.
pub fn ggm(state: &PureState) -> Result<GgmResult> {
    let cuts = enumerate_bipartitions(state.num_qubits())?;
    let mut best: Option<(f64, &Bipartition)> = None;
    for cut in &cuts {
        let rho = partial_trace(state, cut.keep())?;
        let eig = rho.max_eigenvalue();
        best = match best {
            None => Some((eig, cut)),
            Some((best_eig, best_cut)) => {
                if eig > best_eig || (eig == best_eig && cut.keep() < best_cut.keep()) {
                    Some((eig, cut))
                } else {
                    Some((best_eig, best_cut))
                }
            }
        };
    }
    let (max_eigenvalue, argmax_cut) = best.expect("at least one bipartition exists for N >= 2");
    Ok(GgmResult {
        value: 1.0 - max_eigenvalue,
        argmax_cut: argmax_cut.clone(),
        max_eigenvalue,
    })
}
