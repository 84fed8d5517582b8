//! Matrix functions and structural helpers: `|T|`, `P^alpha`, Hermitian parts, blocks.

use crate::error::{LinalgError, Result};
use crate::linalg::eigen::{check_hermitian, herm_eig, herm_eig_unchecked, HermEigen};
use crate::linalg::matrix::{ComplexMatrix, C64, I};
use crate::linalg::svd::svd;

/// Eigenvalues of a PSD input below `-PSD_NEG_REL_TOL * (1 + |P|)` reject the input.
pub const PSD_NEG_REL_TOL: f64 = 1e-9;

/// Eigenvalues at or below `PSD_ZERO_REL * lambda_max` count as exact zeros when powering.
pub const PSD_ZERO_REL: f64 = 1e-13;

/// The PSD square root of `T* T`.
pub fn matrix_abs(t: &ComplexMatrix) -> Result<ComplexMatrix> {
    Ok(svd(t)?.right_function(|s| s))
}

/// `P^alpha` for a PSD matrix `P` and `alpha >= 0`.
///
/// Slightly negative eigenvalues are clamped to zero and `0^0 := 0`, so `P^0` is the
/// orthogonal projection onto the range of `P`.
pub fn matrix_power_psd(p: &ComplexMatrix, alpha: f64) -> Result<ComplexMatrix> {
    if !(alpha >= 0.0) || !alpha.is_finite() {
        return Err(LinalgError::AlphaOutOfRange(alpha));
    }
    check_hermitian(p)?;
    let eig = herm_eig_unchecked(p)?;
    psd_power_from_eigen(&eig, alpha)
}

pub(crate) fn psd_power_from_eigen(eig: &HermEigen, alpha: f64) -> Result<ComplexMatrix> {
    let lmax = eig.max().max(0.0);
    let min = eig.min();
    // |P| = max |lambda|
    let norm = lmax.max(-min);
    if min < -PSD_NEG_REL_TOL * (1.0 + norm) {
        return Err(LinalgError::NotPsd { min_eig: min });
    }
    let zero = PSD_ZERO_REL * lmax;
    Ok(eig.apply_fn(|l| {
        if l <= zero || l <= 0.0 {
            0.0
        } else if alpha == 1.0 {
            l
        } else {
            l.powf(alpha)
        }
    }))
}

/// `(Re T, Im T) = ((T + T*)/2, (T - T*)/(2i))`.
pub fn re_im_parts(t: &ComplexMatrix) -> Result<(ComplexMatrix, ComplexMatrix)> {
    let n = t.ensure_square()?;
    let re = ComplexMatrix::from_fn(n, n, |i, j| (t[(i, j)] + t[(j, i)].conj()) * 0.5);
    let im = ComplexMatrix::from_fn(n, n, |i, j| (t[(i, j)] - t[(j, i)].conj()) / (2.0 * I));
    Ok((re, im))
}

/// Hermitian part of `e^{i theta} T`.
pub fn rotated_real_part(t: &ComplexMatrix, theta: f64) -> ComplexMatrix {
    let n = t.rows();
    let e = C64::from_polar(1.0, theta);
    ComplexMatrix::from_fn(n, n, |i, j| (e * t[(i, j)] + (e * t[(j, i)]).conj()) * 0.5)
}

/// Positive and negative parts `S = S+ - S-` of a Hermitian matrix.
pub fn pos_neg_parts(s: &ComplexMatrix) -> Result<(ComplexMatrix, ComplexMatrix)> {
    let eig = herm_eig(s)?;
    Ok((eig.apply_fn(|l| l.max(0.0)), eig.apply_fn(|l| (-l).max(0.0))))
}

/// Assembles `[[A, C*], [C, B]]` from its four blocks.
///
/// `A` is `n x n`, `B` is `m x m`, `C` is `m x n` and `Cstar` is `n x m`.
pub fn block2(
    a: &ComplexMatrix,
    c_star: &ComplexMatrix,
    c: &ComplexMatrix,
    b: &ComplexMatrix,
) -> Result<ComplexMatrix> {
    let n = a.ensure_square()?;
    let m = b.ensure_square()?;
    if c.shape() != (m, n) || c_star.shape() != (n, m) {
        return Err(LinalgError::DimensionMismatch(format!(
            "blocks A {n}x{n}, B {m}x{m} need C {m}x{n} and C* {n}x{m}, got C {:?} and C* {:?}",
            c.shape(),
            c_star.shape()
        )));
    }
    Ok(ComplexMatrix::from_fn(n + m, n + m, |i, j| match (i < n, j < n) {
        (true, true) => a[(i, j)],
        (true, false) => c_star[(i, j - n)],
        (false, true) => c[(i - n, j)],
        (false, false) => b[(i - n, j - n)],
    }))
}

/// Splits an `(n+m) x (n+m)` matrix into `(A, C*, C, B)` with `A` of size `n`.
pub fn split_block2(
    t: &ComplexMatrix,
    n: usize,
) -> Result<(ComplexMatrix, ComplexMatrix, ComplexMatrix, ComplexMatrix)> {
    let total = t.ensure_square()?;
    if n == 0 || n >= total {
        return Err(LinalgError::DimensionMismatch(format!(
            "cannot split a {total}x{total} matrix at {n}"
        )));
    }
    let m = total - n;
    Ok((
        t.submatrix(0, 0, n, n),
        t.submatrix(0, n, n, m),
        t.submatrix(n, 0, m, n),
        t.submatrix(n, n, m, m),
    ))
}

/// `[[0, X], [Y, 0]]` for `X` of shape `n x m` and `Y` of shape `m x n`.
pub fn off_diagonal_block(x: &ComplexMatrix, y: &ComplexMatrix) -> Result<ComplexMatrix> {
    let (n, m) = x.shape();
    if y.shape() != (m, n) {
        return Err(LinalgError::DimensionMismatch(format!(
            "off-diagonal blocks {:?} and {:?} are not transposed shapes",
            x.shape(),
            y.shape()
        )));
    }
    let zn = ComplexMatrix::zeros(n, n);
    let zm = ComplexMatrix::zeros(m, m);
    block2(&zn, x, y, &zm)
}

/// Spectral norm of `[[a, conj(c)], [c, b]]` in closed form, valid when `a + b >= 0`.
pub fn herm2_closed_norm(a: f64, b: f64, c: C64) -> Result<f64> {
    if a + b < 0.0 {
        return Err(LinalgError::HypothesisViolated(format!(
            "closed-form 2x2 norm needs a + b >= 0, got {}",
            a + b
        )));
    }
    Ok((a + b + ((a - b).powi(2) + 4.0 * c.norm_sqr()).sqrt()) / 2.0)
}

/// Smallest eigenvalue of a Hermitian matrix.
pub fn min_eigenvalue(h: &ComplexMatrix) -> Result<f64> {
    Ok(herm_eig(h)?.min())
}

/// Convenience wrapper returning `|T|` and `|T*|` from one SVD.
pub fn abs_pair(t: &ComplexMatrix) -> Result<(ComplexMatrix, ComplexMatrix)> {
    let f = svd(t)?;
    Ok((f.right_function(|s| s), f.left_function(|s| s)))
}
