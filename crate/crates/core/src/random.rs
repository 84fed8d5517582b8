//! Seeded random matrices and vectors.
//!
//! Every stream is a ChaCha8 generator keyed by a 64-bit seed with a 64-bit stream
//! index, so trial `k` of a campaign draws from `stream(seed, k)` no matter in which
//! order trials are executed.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::linalg::matrix::{normalized, ComplexMatrix, C64};

pub type StreamRng = ChaCha8Rng;

/// Independent, reproducible stream `index` under `seed`.
pub fn stream(seed: u64, index: u64) -> StreamRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Standard complex normal: real and imaginary parts i.i.d. N(0, 1/2).
pub fn complex_normal<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    C64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

pub fn gaussian_matrix<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> ComplexMatrix {
    ComplexMatrix::from_fn(rows, cols, |_, _| complex_normal(rng))
}

/// Entries uniform in the closed unit disc.
pub fn unit_disc_matrix<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> ComplexMatrix {
    ComplexMatrix::from_fn(rows, cols, |_, _| {
        let r = rng.random::<f64>().sqrt();
        let phi = rng.random::<f64>() * std::f64::consts::TAU;
        C64::from_polar(r, phi)
    })
}

/// Uniformly distributed unit vector in `C^n`.
pub fn unit_vector<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<C64> {
    loop {
        let v: Vec<C64> = (0..n).map(|_| complex_normal(rng)).collect();
        if let Some(u) = normalized(&v) {
            return u;
        }
    }
}

pub fn hermitian<R: Rng + ?Sized>(n: usize, rng: &mut R) -> ComplexMatrix {
    let g = gaussian_matrix(n, n, rng);
    (&g + &g.adjoint()).scale_real(0.5)
}

/// `G* G` for a square Gaussian `G`; positive definite with probability one.
pub fn psd<R: Rng + ?Sized>(n: usize, rng: &mut R) -> ComplexMatrix {
    let g = gaussian_matrix(n, n, rng);
    (&g.adjoint() * &g).symmetrized()
}

/// Haar-distributed unitary from Gram-Schmidt on a Gaussian matrix.
pub fn unitary<R: Rng + ?Sized>(n: usize, rng: &mut R) -> ComplexMatrix {
    let g = gaussian_matrix(n, n, rng);
    let mut q = ComplexMatrix::zeros(n, n);
    let mut basis: Vec<Vec<C64>> = Vec::with_capacity(n);
    for j in 0..n {
        let mut v = g.column(j);
        for _ in 0..2 {
            for b in &basis {
                let p = crate::linalg::matrix::inner(&v, b);
                for (vi, bi) in v.iter_mut().zip(b) {
                    *vi -= p * bi;
                }
            }
        }
        let v = normalized(&v).expect("Gaussian columns are independent");
        q.set_column(j, &v);
        basis.push(v);
    }
    q
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn streams_are_reproducible_and_distinct() {
        let a = gaussian_matrix(2, 2, &mut stream(42, 0));
        let b = gaussian_matrix(2, 2, &mut stream(42, 0));
        let c = gaussian_matrix(2, 2, &mut stream(42, 1));
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn unitary_is_unitary() {
        let q = unitary(5, &mut stream(7, 3));
        let d = (&q.adjoint() * &q).frobenius_distance(&ComplexMatrix::identity(5));
        assert!(d < 1e-13);
    }

    #[test]
    fn unit_disc_entries_bounded() {
        let m = unit_disc_matrix(6, 6, &mut stream(1, 1));
        assert!(m.max_abs() <= 1.0);
    }
}
