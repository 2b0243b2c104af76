//! Analytic formulas for the three-qubit single-phase diagonal family:
//! reduced-density-matrix entries, the trigonometric `A` polynomial, its
//! eigenvalues, and the stationarity conditions. These serve as ground-truth
//! oracles for the numerical pipeline.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Entries of the single-site reduction `[[a, b], [b*, c]]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rho3Entries {
    pub a: f64,
    pub b: Complex64,
    pub c: f64,
}

impl Rho3Entries {
    pub fn to_matrix(self) -> nalgebra::DMatrix<Complex64> {
        nalgebra::DMatrix::from_row_slice(
            2,
            2,
            &[
                Complex64::new(self.a, 0.0),
                self.b,
                self.b.conj(),
                Complex64::new(self.c, 0.0),
            ],
        )
    }
}

fn check_theta_range(thetas: &[f64]) -> Result<()> {
    for &t in thetas {
        if !(0.0..=std::f64::consts::PI).contains(&t) {
            return Err(Error::BadAngles {
                reason: format!("theta = {t} outside [0, pi]"),
            });
        }
    }
    Ok(())
}

/// Single-site reduction of `U_{d,phi} |psi(theta, xi=0)>` for site `i` in
/// {1, 2, 3}: `a = cos^2(t_i/2)`, `c = sin^2(t_i/2)` and
/// `b = cos(t_i/2) sin(t_i/2) (cos^2(t_j/2) + sin^2(t_j/2)(cos^2(t_k/2)
///  + e^{-i phi} sin^2(t_k/2)))` with `{j, k}` the other two sites.
pub fn rho3_entries(site: usize, thetas: [f64; 3], phi: f64) -> Result<Rho3Entries> {
    if !(1..=3).contains(&site) {
        return Err(Error::SiteOutOfRange {
            site,
            num_qubits: 3,
        });
    }
    check_theta_range(&thetas)?;
    let others: [usize; 2] = match site {
        1 => [2, 3],
        2 => [1, 3],
        _ => [1, 2],
    };
    let half = |s: usize| thetas[s - 1] / 2.0;
    let cos2 = |s: usize| half(s).cos().powi(2);
    let sin2 = |s: usize| half(s).sin().powi(2);
    let (j, k) = (others[0], others[1]);
    let inner = Complex64::new(cos2(k), 0.0)
        + Complex64::new(0.0, -phi).exp() * Complex64::new(sin2(k), 0.0);
    let bracket = Complex64::new(cos2(j), 0.0) + Complex64::new(sin2(j), 0.0) * inner;
    let b = Complex64::new(half(site).cos() * half(site).sin(), 0.0) * bracket;
    Ok(Rho3Entries {
        a: cos2(site),
        b,
        c: sin2(site),
    })
}

/// The trigonometric polynomial `A(theta, phi)` of the symmetric optimum,
/// evaluated exactly as written:
/// `218 + 16 cos t + 49 cos 2t - 24 cos 3t - 10 cos 4t + 8 cos 5t - cos 6t
///  - 1024 cos^4(t/2) (-3 + cos t) cos phi sin^6(t/2)`.
pub fn a_expr3(theta: f64, phi: f64) -> f64 {
    218.0 + 16.0 * theta.cos() + 49.0 * (2.0 * theta).cos() - 24.0 * (3.0 * theta).cos()
        - 10.0 * (4.0 * theta).cos()
        + 8.0 * (5.0 * theta).cos()
        - (6.0 * theta).cos()
        - 1024.0
            * (theta / 2.0).cos().powi(4)
            * (-3.0 + theta.cos())
            * phi.cos()
            * (theta / 2.0).sin().powi(6)
}

/// Eigenvalue pair from a discriminant value: `1/2 +- sqrt(A)/32`.
/// Values below `-1e-10` signal a transcription bug; tiny negatives clamp.
pub(crate) fn eigvals_from_discriminant(a: f64) -> Result<(f64, f64)> {
    if a < -1e-10 {
        return Err(Error::NegativeDiscriminant { value: a });
    }
    let root = a.max(0.0).sqrt() / 32.0;
    Ok((0.5 + root, 0.5 - root))
}

/// `(lambda_+, lambda_-) = 1/2 +- sqrt(A)/32` for the shared angle `theta`.
pub fn eigvals3(theta: f64, phi: f64) -> Result<(f64, f64)> {
    check_theta_range(&[theta])?;
    eigvals_from_discriminant(a_expr3(theta, phi))
}

/// Whether all three cyclic stationarity conditions
/// `1 + cos t_{i+1} + cos t_{i+2} - cos t_{i+1} cos t_{i+2} = 0`
/// hold within `1e-8`.
pub fn stationarity_check(thetas: [f64; 3]) -> bool {
    (0..3).all(|i| {
        let c1 = thetas[(i + 1) % 3].cos();
        let c2 = thetas[(i + 2) % 3].cos();
        (1.0 + c1 + c2 - c1 * c2).abs() <= 1e-8
    })
}

/// Maximizes `1/2 - sqrt(A(theta, phi))/32` over `theta` in `[0, pi]` by a
/// dense grid plus golden-section refinement. Returns `(theta*, power)`.
pub fn max_symmetric_power(phi: f64) -> (f64, f64) {
    const GRID: usize = 10_000;
    let pi = std::f64::consts::PI;
    let power = |theta: f64| 0.5 - a_expr3(theta, phi).max(0.0).sqrt() / 32.0;

    let mut best_k = 0;
    let mut best_val = f64::NEG_INFINITY;
    for k in 0..=GRID {
        let theta = pi * k as f64 / GRID as f64;
        let v = power(theta);
        if v > best_val {
            best_val = v;
            best_k = k;
        }
    }
    let lo = pi * best_k.saturating_sub(1) as f64 / GRID as f64;
    let hi = pi * (best_k + 1).min(GRID) as f64 / GRID as f64;
    let (theta, value) = golden_section_max(power, lo, hi, 1e-12);
    if value >= best_val {
        (theta, value)
    } else {
        (pi * best_k as f64 / GRID as f64, best_val)
    }
}

fn golden_section_max(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> (f64, f64) {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    while (b - a).abs() > tol {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    let mid = 0.5 * (a + b);
    (mid, f(mid))
}
