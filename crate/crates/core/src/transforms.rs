//! Polar decomposition, the generalized polar decomposition `T = U |T|^alpha`, and the
//! Aluthge transform.
//!
//! All factors come from one thin SVD `T = W S V*`. The standard polar factor is the
//! partial isometry `W V*` restricted to the numerical range of `|T|` (columns whose
//! singular value is at most `1e-10 * sigma_max` are dropped), so it vanishes on the
//! null space of `T` rather than being extended to a unitary.

use crate::error::{LinalgError, Result};
use crate::linalg::funcs::{matrix_abs, matrix_power_psd};
use crate::linalg::matrix::ComplexMatrix;
use crate::linalg::svd::{scaled_outer, svd, SvdFactors};

/// `T = u * absT^alpha`.
#[derive(Debug, Clone)]
pub struct PolarFactors {
    pub u: ComplexMatrix,
    pub abs_t: ComplexMatrix,
    pub alpha: f64,
}

impl PolarFactors {
    /// Frobenius residual of `u * absT^alpha - T`.
    pub fn reconstruction_residual(&self, t: &ComplexMatrix) -> Result<f64> {
        let p = matrix_power_psd(&self.abs_t, self.alpha)?;
        Ok((&self.u * &p).frobenius_distance(t))
    }
}

#[derive(Debug, Clone)]
pub struct AluthgeResult {
    /// `|T|^{1/2} U |T|^{1/2}`.
    pub tilde: ComplexMatrix,
    pub polar: PolarFactors,
}

/// Partial isometry `W V*` over the numerically nonzero singular values; any shape.
pub fn partial_isometry(f: &SvdFactors) -> ComplexMatrix {
    let g = f.on_range(|_| 1.0);
    let d: Vec<f64> = f.sigmas.iter().map(|&s| g(s)).collect();
    scaled_outer(&f.left, &d, &f.right)
}

/// Polar factors of an arbitrary (possibly rectangular) matrix, `alpha = 1`.
pub fn polar_any(t: &ComplexMatrix) -> Result<PolarFactors> {
    let f = svd(t)?;
    Ok(PolarFactors {
        u: partial_isometry(&f),
        abs_t: f.right_function(|s| s),
        alpha: 1.0,
    })
}

/// Standard polar decomposition `T = U |T|` of a square matrix.
pub fn polar(t: &ComplexMatrix) -> Result<PolarFactors> {
    t.ensure_square()?;
    polar_any(t)
}

/// Generalized polar decomposition `T = U_alpha |T|^alpha` with `U_alpha = W S^{1-alpha} V*`.
pub fn generalized_polar(t: &ComplexMatrix, alpha: f64) -> Result<PolarFactors> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(LinalgError::AlphaOutOfRange(alpha));
    }
    t.ensure_square()?;
    let f = svd(t)?;
    Ok(PolarFactors {
        u: f.compose(f.on_range(|s| s.powf(1.0 - alpha))),
        abs_t: f.right_function(|s| s),
        alpha,
    })
}

/// Aluthge transform `|T|^{1/2} U |T|^{1/2}`.
pub fn aluthge(t: &ComplexMatrix) -> Result<AluthgeResult> {
    t.ensure_square()?;
    let f = svd(t)?;
    let u = partial_isometry(&f);
    let half = f.right_function(f.on_range(f64::sqrt));
    let tilde = &(&half * &u) * &half;
    Ok(AluthgeResult {
        tilde,
        polar: PolarFactors {
            u,
            abs_t: f.right_function(|s| s),
            alpha: 1.0,
        },
    })
}

/// Residuals of the three generalized-polar identities, each computed through
/// eigen-decompositions of `|T|` and `|T*|` independent of the factor's construction.
#[derive(Debug, Clone)]
pub struct GeneralizedPolarResiduals {
    /// `|U |T|^a - T|_F`
    pub factor: f64,
    /// `|U* |T*|^a - T*|_F`
    pub adjoint_factor: f64,
    /// `|U* U - |T|^{2(1-a)}|_F`
    pub gram_right: f64,
    /// `|U U* - |T*|^{2(1-a)}|_F`
    pub gram_left: f64,
    /// `(beta, |U |T|^beta - |T*|^beta U|_F)`
    pub intertwining: Vec<(f64, f64)>,
}

impl GeneralizedPolarResiduals {
    pub fn max(&self) -> f64 {
        self.intertwining
            .iter()
            .map(|&(_, r)| r)
            .chain([self.factor, self.adjoint_factor, self.gram_right, self.gram_left])
            .fold(0.0, f64::max)
    }
}

pub fn generalized_polar_residuals(
    t: &ComplexMatrix,
    factors: &PolarFactors,
    betas: &[f64],
) -> Result<GeneralizedPolarResiduals> {
    let alpha = factors.alpha;
    let abs_t = matrix_abs(t)?;
    let abs_t_star = matrix_abs(&t.adjoint())?;
    let u = &factors.u;
    let u_star = u.adjoint();
    let pow = |p: &ComplexMatrix, e: f64| matrix_power_psd(p, e);

    let factor = (u * &pow(&abs_t, alpha)?).frobenius_distance(t);
    let adjoint_factor = (&u_star * &pow(&abs_t_star, alpha)?).frobenius_distance(&t.adjoint());
    let gram_right = (&u_star * u).frobenius_distance(&pow(&abs_t, 2.0 * (1.0 - alpha))?);
    let gram_left = (u * &u_star).frobenius_distance(&pow(&abs_t_star, 2.0 * (1.0 - alpha))?);
    let mut intertwining = Vec::with_capacity(betas.len());
    for &beta in betas {
        let lhs = u * &pow(&abs_t, beta)?;
        let rhs = &pow(&abs_t_star, beta)? * u;
        intertwining.push((beta, lhs.frobenius_distance(&rhs)));
    }
    Ok(GeneralizedPolarResiduals {
        factor,
        adjoint_factor,
        gram_right,
        gram_left,
        intertwining,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::matrix::{c64, C64};
    use crate::linalg::svd::spectral_norm;

    fn jordan() -> ComplexMatrix {
        ComplexMatrix::from_real_rows(&[[0.0, 1.0], [0.0, 0.0]])
    }

    #[test]
    fn polar_of_unitary() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let q = ComplexMatrix::from_rows(&[[c64(s, 0.0), c64(0.0, s)], [c64(0.0, s), c64(s, 0.0)]]);
        let p = polar(&q).unwrap();
        assert!(p.u.max_abs_diff(&q) < 1e-14);
        assert!(p.abs_t.max_abs_diff(&ComplexMatrix::identity(2)) < 1e-14);
    }

    #[test]
    fn polar_of_rank_one() {
        let p = polar(&jordan()).unwrap();
        assert!(p.u.max_abs_diff(&jordan()) < 1e-15);
        assert!(p.abs_t.max_abs_diff(&ComplexMatrix::from_real_diag(&[0.0, 1.0])) < 1e-15);
        // U*U is the projection onto range |T|
        let uu = &p.u.adjoint() * &p.u;
        assert!(uu.max_abs_diff(&ComplexMatrix::from_real_diag(&[0.0, 1.0])) < 1e-15);
        assert!(polar(&ComplexMatrix::zeros(2, 3)).is_err());
    }

    #[test]
    fn generalized_polar_scalar_and_diagonal() {
        let t = ComplexMatrix::from_real_diag(&[4.0]);
        let g = generalized_polar(&t, 0.5).unwrap();
        assert!((g.u[(0, 0)] - c64(2.0, 0.0)).norm() < 1e-14);
        assert!(g.reconstruction_residual(&t).unwrap() < 1e-14);

        let d = ComplexMatrix::from_real_diag(&[9.0, 0.25, 2.0]);
        for alpha in [0.1, 0.5, 0.9] {
            let g = generalized_polar(&d, alpha).unwrap();
            let expected = ComplexMatrix::from_real_diag(&[
                9f64.powf(1.0 - alpha),
                0.25f64.powf(1.0 - alpha),
                2f64.powf(1.0 - alpha),
            ]);
            assert!(g.u.max_abs_diff(&expected) < 1e-13);
        }
        assert!(matches!(generalized_polar(&d, 1.0), Err(LinalgError::AlphaOutOfRange(_))));
        assert!(matches!(generalized_polar(&d, 0.0), Err(LinalgError::AlphaOutOfRange(_))));
    }

    #[test]
    fn generalized_polar_identities_on_fixed_matrix() {
        let t = ComplexMatrix::from_rows(&[
            [c64(1.0, 0.5), c64(-2.0, 0.0), c64(0.3, 1.0)],
            [c64(0.0, 2.0), c64(1.5, -1.0), c64(0.0, 0.0)],
            [c64(-1.0, 0.0), c64(0.25, 0.25), c64(2.0, 0.0)],
        ]);
        let g = generalized_polar(&t, 0.3).unwrap();
        let r = generalized_polar_residuals(&t, &g, &[0.5, 1.0, 2.0]).unwrap();
        let scale = 1.0 + spectral_norm(&t).powi(2);
        assert!(r.max() <= 1e-9 * scale, "{r:?}");
    }

    #[test]
    fn aluthge_of_normal_and_nilpotent() {
        let t = ComplexMatrix::from_diag(&[c64(0.0, 1.0), c64(2.0, 0.0)]);
        let a = aluthge(&t).unwrap();
        assert!(a.tilde.max_abs_diff(&t) < 1e-14);

        let a = aluthge(&jordan()).unwrap();
        assert!(a.tilde.max_abs() < 1e-15);
    }

    #[test]
    fn aluthge_of_reference_matrix() {
        let t = ComplexMatrix::from_real_rows(&[[1.0, -2.0], [2.0, -3.0]]);
        let a = aluthge(&t).unwrap();
        let half = matrix_power_psd(&a.polar.abs_t, 0.5).unwrap();
        let rebuilt = &(&half * &a.polar.u) * &half;
        assert!(rebuilt.frobenius_distance(&a.tilde) <= 1e-10 * (1.0 + spectral_norm(&t)));
        // trace and determinant are preserved by the Aluthge transform
        assert!((a.tilde.trace() - t.trace()).norm() < 1e-12);
        let det = |m: &ComplexMatrix| -> C64 { m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)] };
        assert!((det(&a.tilde) - det(&t)).norm() < 1e-12);
    }
}
