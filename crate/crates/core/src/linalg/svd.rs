//! Thin singular value decomposition through the Hermitian eigenproblem of `T* T`.
//!
//! Right vectors come from the Jacobi decomposition of `T* T`; each singular value is
//! then recomputed as `|T v|`, which keeps tiny singular values accurate to roughly
//! machine precision times `|T|` instead of its square root. Left vectors are
//! `T v / sigma` for singular values above the rank cutoff; the remaining columns are
//! completed to an orthonormal set by Gram-Schmidt.

use crate::error::Result;
use crate::linalg::eigen::herm_eig_unchecked;
use crate::linalg::matrix::{inner, vec_norm, ComplexMatrix, C64};

/// Singular values at or below `RANK_CUTOFF * sigma_max` are treated as zero.
pub const RANK_CUTOFF: f64 = 1e-10;

/// `T = W diag(sigmas) V*` with `k = min(rows, cols)` columns in `W` and `V`.
#[derive(Debug, Clone)]
pub struct SvdFactors {
    pub left: ComplexMatrix,
    /// Descending, non-negative.
    pub sigmas: Vec<f64>,
    pub right: ComplexMatrix,
}

impl SvdFactors {
    pub fn sigma_max(&self) -> f64 {
        self.sigmas.first().copied().unwrap_or(0.0)
    }

    /// Number of singular values above the rank cutoff.
    pub fn rank(&self) -> usize {
        let cut = RANK_CUTOFF * self.sigma_max();
        self.sigmas.iter().filter(|&&s| s > cut && s > 0.0).count()
    }

    /// `W diag(f(sigma)) V*`.
    pub fn compose(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix {
        let d: Vec<f64> = self.sigmas.iter().map(|&s| f(s)).collect();
        scaled_outer(&self.left, &d, &self.right)
    }

    pub fn reconstruct(&self) -> ComplexMatrix {
        self.compose(|s| s)
    }

    /// `V diag(f(sigma)) V*`, a function of `|T|`.
    pub fn right_function(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix {
        let d: Vec<f64> = self.sigmas.iter().map(|&s| f(s)).collect();
        hermitian_from(&self.right, &d)
    }

    /// `W diag(f(sigma)) W*`, a function of `|T*|`.
    pub fn left_function(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix {
        let d: Vec<f64> = self.sigmas.iter().map(|&s| f(s)).collect();
        hermitian_from(&self.left, &d)
    }

    /// `f` applied to the nonzero singular values, zero on the numerical null space.
    pub fn on_range(&self, f: impl Fn(f64) -> f64) -> impl Fn(f64) -> f64 {
        let cut = RANK_CUTOFF * self.sigma_max();
        move |s| if s > cut && s > 0.0 { f(s) } else { 0.0 }
    }
}

/// `X diag(d) Y*`.
pub(crate) fn scaled_outer(x: &ComplexMatrix, d: &[f64], y: &ComplexMatrix) -> ComplexMatrix {
    let (n, m) = (x.rows(), y.rows());
    let mut out = ComplexMatrix::zeros(n, m);
    for (k, &dk) in d.iter().enumerate() {
        if dk == 0.0 {
            continue;
        }
        for i in 0..n {
            let xi = x[(i, k)] * dk;
            for j in 0..m {
                out[(i, j)] += xi * y[(j, k)].conj();
            }
        }
    }
    out
}

fn hermitian_from(x: &ComplexMatrix, d: &[f64]) -> ComplexMatrix {
    let mut h = scaled_outer(x, d, x);
    let n = h.rows();
    for i in 0..n {
        h[(i, i)] = C64::new(h[(i, i)].re, 0.0);
        for j in (i + 1)..n {
            let z = (h[(i, j)] + h[(j, i)].conj()) * 0.5;
            h[(i, j)] = z;
            h[(j, i)] = z.conj();
        }
    }
    h
}

/// Thin SVD of an arbitrary matrix.
pub fn svd(t: &ComplexMatrix) -> Result<SvdFactors> {
    let (n, m) = t.shape();
    let k = n.min(m);
    let gram = &t.adjoint() * t;
    let eig = herm_eig_unchecked(&gram)?;

    // Top-k right vectors, ordered by |T v| descending.
    let mut cols: Vec<(f64, Vec<C64>, Vec<C64>)> = (0..m)
        .rev()
        .take(k)
        .map(|j| {
            let v = eig.vector(j);
            let tv = t.mul_vec(&v);
            (vec_norm(&tv), v, tv)
        })
        .collect();
    cols.sort_by(|a, b| b.0.total_cmp(&a.0));

    let sigma_max = cols.first().map(|c| c.0).unwrap_or(0.0);
    let cut = RANK_CUTOFF * sigma_max;

    let mut left: Vec<Option<Vec<C64>>> = vec![None; k];
    let mut accepted: Vec<Vec<C64>> = Vec::with_capacity(k);
    for (idx, (sigma, _, tv)) in cols.iter().enumerate() {
        if *sigma > cut && *sigma > 0.0 {
            let mut w: Vec<C64> = tv.iter().map(|z| z / *sigma).collect();
            orthogonalize(&mut w, &accepted);
            let norm = vec_norm(&w);
            if norm > 0.5 {
                let w: Vec<C64> = w.iter().map(|z| z / norm).collect();
                accepted.push(w.clone());
                left[idx] = Some(w);
            }
        }
    }
    // Complete the columns tied to (numerically) zero singular values.
    for (idx, slot) in left.iter_mut().enumerate() {
        if slot.is_none() {
            let (sigma, _, tv) = &cols[idx];
            let start = if *sigma > 0.0 {
                tv.iter().map(|z| z / *sigma).collect()
            } else {
                vec![C64::new(0.0, 0.0); n]
            };
            let w = complete_basis_vector(start, &accepted, n);
            accepted.push(w.clone());
            *slot = Some(w);
        }
    }
    let left: Vec<Vec<C64>> = left.into_iter().map(|w| w.expect("filled")).collect();

    let sigmas: Vec<f64> = cols.iter().map(|c| c.0).collect();
    let mut w_mat = ComplexMatrix::zeros(n, k);
    let mut v_mat = ComplexMatrix::zeros(m, k);
    for j in 0..k {
        w_mat.set_column(j, &left[j]);
        v_mat.set_column(j, &cols[j].1);
    }
    Ok(SvdFactors {
        left: w_mat,
        sigmas,
        right: v_mat,
    })
}

/// Modified Gram-Schmidt, applied twice.
fn orthogonalize(w: &mut [C64], basis: &[Vec<C64>]) {
    for _ in 0..2 {
        for b in basis {
            let proj = inner(w, b);
            for (wi, bi) in w.iter_mut().zip(b) {
                *wi -= proj * bi;
            }
        }
    }
}

fn complete_basis_vector(start: Vec<C64>, basis: &[Vec<C64>], n: usize) -> Vec<C64> {
    let mut candidates = vec![start];
    for e in 0..n {
        let mut v = vec![C64::new(0.0, 0.0); n];
        v[e] = C64::new(1.0, 0.0);
        candidates.push(v);
    }
    for mut c in candidates {
        orthogonalize(&mut c, basis);
        let norm = vec_norm(&c);
        if norm > 1e-3 {
            return c.iter().map(|z| z / norm).collect();
        }
    }
    unreachable!("an orthonormal set of fewer than n vectors always has a completion")
}

/// Largest singular value.
pub fn spectral_norm(t: &ComplexMatrix) -> f64 {
    // |T|^2 is the top eigenvalue of the smaller Gram matrix.
    let g = if t.rows() <= t.cols() {
        t * &t.adjoint()
    } else {
        &t.adjoint() * t
    };
    match crate::linalg::eigen::lambda_max_unchecked(&g) {
        Ok(l) => l.max(0.0).sqrt(),
        Err(_) => svd(t).map(|f| f.sigma_max()).unwrap_or(f64::NAN),
    }
}
