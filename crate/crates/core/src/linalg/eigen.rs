//! Cyclic complex Jacobi eigensolver for Hermitian matrices.

use crate::error::{LinalgError, Result};
use crate::linalg::matrix::{ComplexMatrix, C64};

/// Sweep cap for the cyclic Jacobi iteration.
pub const MAX_SWEEPS: usize = 100;

/// Convergence threshold on off-diagonal Frobenius mass, relative to `|H|_F`.
pub const OFF_DIAGONAL_REL_TOL: f64 = 1e-14;

/// Relative asymmetry accepted by [`herm_eig`] before symmetrizing.
pub const HERMITIAN_REL_TOL: f64 = 1e-12;

/// Eigen-decomposition `H = V diag(values) V*` of a Hermitian matrix.
#[derive(Debug, Clone)]
pub struct HermEigen {
    /// Real eigenvalues in ascending order.
    pub values: Vec<f64>,
    /// Unitary matrix whose columns are the matching eigenvectors.
    pub vectors: ComplexMatrix,
}

impl HermEigen {
    pub fn dim(&self) -> usize {
        self.values.len()
    }

    pub fn min(&self) -> f64 {
        self.values[0]
    }

    pub fn max(&self) -> f64 {
        self.values[self.values.len() - 1]
    }

    pub fn vector(&self, k: usize) -> Vec<C64> {
        self.vectors.column(k)
    }

    /// `V f(Λ) V*`.
    pub fn apply_fn(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix {
        let n = self.dim();
        let fv: Vec<f64> = self.values.iter().map(|&l| f(l)).collect();
        let v = &self.vectors;
        let mut out = ComplexMatrix::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                let mut s = C64::new(0.0, 0.0);
                for k in 0..n {
                    if fv[k] != 0.0 {
                        s += v[(i, k)] * v[(j, k)].conj() * fv[k];
                    }
                }
                out[(i, j)] = s;
                out[(j, i)] = s.conj();
            }
            out[(i, i)] = C64::new(out[(i, i)].re, 0.0);
        }
        out
    }

    pub fn reconstruct(&self) -> ComplexMatrix {
        self.apply_fn(|l| l)
    }
}

/// Eigen-decomposition of a Hermitian matrix.
///
/// The input is checked against `|H - H*|_F <= 1e-12 (1 + |H|_F)` and then replaced
/// by its exact Hermitian part before iterating.
pub fn herm_eig(h: &ComplexMatrix) -> Result<HermEigen> {
    check_hermitian(h)?;
    jacobi(h, true).map(|(values, vectors)| HermEigen {
        values,
        vectors: vectors.expect("vectors requested"),
    })
}

/// Eigenvalues only (ascending), with the same Hermitian check as [`herm_eig`].
pub fn herm_eigenvalues(h: &ComplexMatrix) -> Result<Vec<f64>> {
    check_hermitian(h)?;
    jacobi(h, false).map(|(values, _)| values)
}

/// Eigen-decomposition of the Hermitian part of `h`, without the asymmetry check.
///
/// For internally constructed matrices that are Hermitian up to rounding.
pub(crate) fn herm_eig_unchecked(h: &ComplexMatrix) -> Result<HermEigen> {
    jacobi(h, true).map(|(values, vectors)| HermEigen {
        values,
        vectors: vectors.expect("vectors requested"),
    })
}

/// Largest eigenvalue of the Hermitian part of `h`.
pub(crate) fn lambda_max_unchecked(h: &ComplexMatrix) -> Result<f64> {
    match h.rows() {
        1 => Ok(h[(0, 0)].re),
        2 => {
            let a = h[(0, 0)].re;
            let d = h[(1, 1)].re;
            let b = (h[(1, 0)] + h[(0, 1)].conj()) * 0.5;
            let half = 0.5 * (a - d);
            Ok(0.5 * (a + d) + half.hypot(b.norm()))
        }
        _ => jacobi(h, false).map(|(values, _)| values[values.len() - 1]),
    }
}

pub(crate) fn check_hermitian(h: &ComplexMatrix) -> Result<usize> {
    let n = h.ensure_square()?;
    let asymmetry = h.hermitian_defect();
    let allowed = HERMITIAN_REL_TOL * (1.0 + h.frobenius_norm());
    if asymmetry > allowed {
        return Err(LinalgError::NotHermitian { asymmetry, allowed });
    }
    Ok(n)
}

fn off_diagonal_mass(a: &[C64], n: usize) -> f64 {
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[i * n + j].norm_sqr();
            }
        }
    }
    s.sqrt()
}

fn jacobi(h: &ComplexMatrix, want_vectors: bool) -> Result<(Vec<f64>, Option<ComplexMatrix>)> {
    let n = h.ensure_square()?;
    let sym = h.symmetrized();
    let mut a: Vec<C64> = sym.as_slice().to_vec();
    let mut v: Option<Vec<C64>> = want_vectors.then(|| ComplexMatrix::identity(n).as_slice().to_vec());

    let scale = sym.frobenius_norm();
    let threshold = OFF_DIAGONAL_REL_TOL * scale;
    let mut converged = scale == 0.0;
    let mut sweeps = 0;
    while !converged {
        if off_diagonal_mass(&a, n) <= threshold {
            converged = true;
            break;
        }
        if sweeps == MAX_SWEEPS {
            break;
        }
        sweeps += 1;
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, v.as_deref_mut(), n, p, q);
            }
        }
    }
    if !converged {
        return Err(LinalgError::NoConvergence {
            sweeps,
            off: off_diagonal_mass(&a, n),
        });
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[i * n + i].re.total_cmp(&a[j * n + j].re));
    let values: Vec<f64> = order.iter().map(|&k| a[k * n + k].re).collect();
    let vectors = v.map(|v| {
        ComplexMatrix::from_fn(n, n, |i, j| v[i * n + order[j]])
    });
    Ok((values, vectors))
}

/// One unitary rotation in the `(p, q)` plane that annihilates `a[p][q]`.
///
/// The rotation is `J = D R` with `D = diag(1, conj(e))` turning the pivot real and
/// `R` the classical real symmetric Schur rotation.
fn rotate(a: &mut [C64], v: Option<&mut [C64]>, n: usize, p: usize, q: usize) {
    let apq = a[p * n + q];
    let g = apq.norm();
    if g == 0.0 {
        return;
    }
    let e = apq / g;
    let app = a[p * n + p].re;
    let aqq = a[q * n + q].re;
    let tau = (aqq - app) / (2.0 * g);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;
    let ec = e.conj();

    // A <- A J
    for k in 0..n {
        let akp = a[k * n + p];
        let akq = a[k * n + q];
        a[k * n + p] = akp * c - akq * ec * s;
        a[k * n + q] = akp * s + akq * ec * c;
    }
    // A <- J* A
    for k in 0..n {
        let apk = a[p * n + k];
        let aqk = a[q * n + k];
        a[p * n + k] = apk * c - aqk * e * s;
        a[q * n + k] = apk * s + aqk * e * c;
    }
    a[p * n + q] = C64::new(0.0, 0.0);
    a[q * n + p] = C64::new(0.0, 0.0);
    a[p * n + p] = C64::new(app - t * g, 0.0);
    a[q * n + q] = C64::new(aqq + t * g, 0.0);

    if let Some(v) = v {
        for k in 0..n {
            let vkp = v[k * n + p];
            let vkq = v[k * n + q];
            v[k * n + p] = vkp * c - vkq * ec * s;
            v[k * n + q] = vkp * s + vkq * ec * c;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::matrix::c64;

    fn unitarity_defect(v: &ComplexMatrix) -> f64 {
        (&v.adjoint() * v).frobenius_distance(&ComplexMatrix::identity(v.rows()))
    }

    #[test]
    fn diagonal_input() {
        let h = ComplexMatrix::from_real_diag(&[2.0, -1.0]);
        let e = herm_eig(&h).unwrap();
        assert_eq!(e.values, vec![-1.0, 2.0]);
        // columns are a permutation of the identity
        assert_eq!(e.vectors[(1, 0)].norm(), 1.0);
        assert_eq!(e.vectors[(0, 1)].norm(), 1.0);
    }

    #[test]
    fn pauli_x() {
        let h = ComplexMatrix::from_real_rows(&[[0.0, 1.0], [1.0, 0.0]]);
        let e = herm_eig(&h).unwrap();
        assert!((e.values[0] + 1.0).abs() < 1e-15);
        assert!((e.values[1] - 1.0).abs() < 1e-15);
        assert!(unitarity_defect(&e.vectors) < 1e-14);
    }

    #[test]
    fn complex_hermitian_reconstruction() {
        let h = ComplexMatrix::from_rows(&[
            [c64(2.0, 0.0), c64(1.0, -1.0), c64(0.0, 0.5)],
            [c64(1.0, 1.0), c64(-3.0, 0.0), c64(2.0, 0.0)],
            [c64(0.0, -0.5), c64(2.0, 0.0), c64(0.25, 0.0)],
        ]);
        let e = herm_eig(&h).unwrap();
        assert!(e.values.windows(2).all(|w| w[0] <= w[1]));
        assert!(unitarity_defect(&e.vectors) <= 1e-12 * 3.0);
        assert!(e.reconstruct().frobenius_distance(&h) <= 1e-11 * (1.0 + h.frobenius_norm()));
        let tr: f64 = e.values.iter().sum();
        assert!((tr - h.trace().re).abs() < 1e-13);
    }

    #[test]
    fn rejects_non_hermitian() {
        let h = ComplexMatrix::from_real_rows(&[[0.0, 1.0], [0.0, 0.0]]);
        assert!(matches!(herm_eig(&h), Err(LinalgError::NotHermitian { .. })));
        let r = ComplexMatrix::zeros(2, 3);
        assert!(matches!(herm_eig(&r), Err(LinalgError::NotSquare { .. })));
    }

    #[test]
    fn zero_matrix_and_scalar() {
        let e = herm_eig(&ComplexMatrix::zeros(3, 3)).unwrap();
        assert_eq!(e.values, vec![0.0; 3]);
        let e = herm_eig(&ComplexMatrix::from_real_diag(&[-4.5])).unwrap();
        assert_eq!(e.values, vec![-4.5]);
    }

    #[test]
    fn lambda_max_fast_paths_agree_with_jacobi() {
        let h = ComplexMatrix::from_rows(&[
            [c64(1.5, 0.0), c64(0.3, 2.0)],
            [c64(0.3, -2.0), c64(-0.7, 0.0)],
        ]);
        let full = herm_eig(&h).unwrap().max();
        assert!((lambda_max_unchecked(&h).unwrap() - full).abs() < 1e-14);
    }
}
