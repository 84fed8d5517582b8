//! Numerical radius `w(T) = sup_{|x|=1} |<Tx, x>|`.
//!
//! The primary method maximizes `f(theta) = lambda_max(Re(e^{i theta} T))` over the
//! circle: a uniform grid locates candidate peaks, and golden-section search refines
//! the best few brackets. Since `f(theta + pi) = -lambda_min(Re(e^{i theta} T))`, the
//! supremum of `f` equals `sup_theta |Re(e^{i theta} T)|`, which is `w(T)`.
//!
//! [`rayleigh_radius`] is an independent lower-bound oracle built from random starts
//! and monotone ascent on `|<Tx, x>|`.

use std::f64::consts::TAU;

use crate::error::{LinalgError, Result};
use crate::linalg::eigen::{herm_eig_unchecked, lambda_max_unchecked};
use crate::linalg::funcs::{off_diagonal_block, rotated_real_part};
use crate::linalg::matrix::{vec_norm, ComplexMatrix, C64};
use crate::linalg::svd::spectral_norm;
use crate::random;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepConfig {
    pub grid_points: usize,
    pub refine_iters: usize,
    pub top_k: usize,
    pub tol: f64,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            grid_points: 720,
            refine_iters: 60,
            top_k: 5,
            tol: 1e-11,
        }
    }
}

impl SweepConfig {
    pub fn validate(&self) -> Result<()> {
        if self.grid_points < 8 {
            return Err(LinalgError::InvalidConfig(format!(
                "grid_points must be at least 8, got {}",
                self.grid_points
            )));
        }
        if !(self.tol > 0.0) {
            return Err(LinalgError::InvalidConfig(format!("tol must be positive, got {}", self.tol)));
        }
        if self.top_k == 0 {
            return Err(LinalgError::InvalidConfig("top_k must be at least 1".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct SweepResult {
    pub omega: f64,
    /// Maximizing angle in `[0, 2 pi)`.
    pub theta_star: f64,
    /// Unit vector with `|<T x, x>| ~= omega`.
    pub witness: Vec<C64>,
}

/// `lambda_max(Re(e^{i theta} T))`.
pub fn f_theta(t: &ComplexMatrix, theta: f64) -> Result<f64> {
    t.ensure_square()?;
    lambda_max_unchecked(&rotated_real_part(t, theta))
}

/// Grid-plus-golden-section maximization of a `2 pi`-periodic function.
///
/// Returns `(argmax in [0, 2 pi), max)`.
pub(crate) fn maximize_periodic(
    mut f: impl FnMut(f64) -> Result<f64>,
    cfg: &SweepConfig,
) -> Result<(f64, f64)> {
    cfg.validate()?;
    let n = cfg.grid_points;
    let h = TAU / n as f64;
    let mut grid = Vec::with_capacity(n);
    for i in 0..n {
        grid.push(f(i as f64 * h)?);
    }

    let mut peaks: Vec<usize> = (0..n)
        .filter(|&i| {
            let prev = grid[(i + n - 1) % n];
            let next = grid[(i + 1) % n];
            grid[i] >= prev && grid[i] >= next
        })
        .collect();
    // Stable: ties keep index order.
    peaks.sort_by(|&a, &b| grid[b].total_cmp(&grid[a]));
    peaks.truncate(cfg.top_k);

    let (mut best_theta, mut best) = (0.0, f64::NEG_INFINITY);
    for (i, &v) in grid.iter().enumerate() {
        if v > best {
            best = v;
            best_theta = i as f64 * h;
        }
    }
    for &i in &peaks {
        let centre = i as f64 * h;
        let (theta, value) = golden_section_max(&mut f, centre - h, centre + h, cfg)?;
        if value > best {
            best = value;
            best_theta = theta;
        }
    }
    Ok((best_theta.rem_euclid(TAU), best))
}

const INV_PHI: f64 = 0.618_033_988_749_894_8;

fn golden_section_max(
    f: &mut impl FnMut(f64) -> Result<f64>,
    mut a: f64,
    mut b: f64,
    cfg: &SweepConfig,
) -> Result<(f64, f64)> {
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = f(x1)?;
    let mut f2 = f(x2)?;
    for _ in 0..cfg.refine_iters {
        if b - a <= cfg.tol {
            break;
        }
        if f1 < f2 {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = f(x2)?;
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = f(x1)?;
        }
    }
    Ok(if f1 >= f2 { (x1, f1) } else { (x2, f2) })
}

/// Rotates `v` so that its largest-modulus component is real and positive.
fn fix_phase(v: &mut [C64]) {
    if let Some(&pivot) = v.iter().max_by(|a, b| a.norm().total_cmp(&b.norm())) {
        if pivot.norm() > 0.0 {
            let phase = pivot.conj() / pivot.norm();
            for z in v.iter_mut() {
                *z *= phase;
            }
        }
    }
}

/// Numerical radius by the angular sweep.
pub fn numerical_radius(t: &ComplexMatrix, cfg: &SweepConfig) -> Result<SweepResult> {
    t.ensure_square()?;
    let (theta_star, omega) = maximize_periodic(|th| lambda_max_unchecked(&rotated_real_part(t, th)), cfg)?;
    let eig = herm_eig_unchecked(&rotated_real_part(t, theta_star))?;
    let mut witness = eig.vector(eig.dim() - 1);
    fix_phase(&mut witness);
    Ok(SweepResult {
        omega: omega.max(0.0),
        theta_star,
        witness,
    })
}

/// Numerical radius with the default sweep configuration.
pub fn omega(t: &ComplexMatrix) -> Result<f64> {
    numerical_radius(t, &SweepConfig::default()).map(|r| r.omega)
}

const ASCENT_MAX_ITERS: usize = 2000;

/// Lower bound on `w(T)` from `trials` random unit starts, each improved by the
/// monotone ascent `x <- top eigenvector of Re(e^{i phi} T)` with `phi = -arg <Tx, x>`.
pub fn rayleigh_radius(t: &ComplexMatrix, trials: usize, seed: u64) -> Result<(f64, Vec<C64>)> {
    let n = t.ensure_square()?;
    if trials == 0 {
        return Err(LinalgError::InvalidConfig("trials must be at least 1".into()));
    }
    let mut best = (f64::NEG_INFINITY, Vec::new());
    for trial in 0..trials {
        let mut rng = random::stream(seed, trial as u64);
        let mut x = random::unit_vector(n, &mut rng);
        let mut z = t.quad_form(&x);
        for _ in 0..ASCENT_MAX_ITERS {
            let phi = if z.norm() > 0.0 { -z.arg() } else { 0.0 };
            let eig = herm_eig_unchecked(&rotated_real_part(t, phi))?;
            let y = eig.vector(n - 1);
            let zy = t.quad_form(&y);
            if zy.norm() <= z.norm() {
                break;
            }
            let gain = zy.norm() - z.norm();
            let dphi = (zy * z.conj()).arg().abs();
            x = y;
            z = zy;
            if gain <= 1e-16 * (1.0 + z.norm()) && dphi < 1e-13 {
                break;
            }
        }
        if z.norm() > best.0 {
            best = (z.norm(), x);
        }
    }
    let (value, mut x) = best;
    fix_phase(&mut x);
    Ok((value, x))
}

/// Both sides of `2 w([[0, X], [Y*, 0]]) = sup_theta |X + e^{i theta} Y|`.
#[derive(Debug, Clone)]
pub struct OffDiagRadius {
    /// `w` of the assembled block matrix.
    pub omega: f64,
    /// `sup_theta |X + e^{i theta} Y| / 2`.
    pub half_sup_norm: f64,
    pub theta_star: f64,
}

impl OffDiagRadius {
    pub fn discrepancy(&self) -> f64 {
        (self.omega - self.half_sup_norm).abs()
    }
}

pub fn off_diag_radius(x: &ComplexMatrix, y: &ComplexMatrix, cfg: &SweepConfig) -> Result<OffDiagRadius> {
    if x.shape() != y.shape() {
        return Err(LinalgError::DimensionMismatch(format!(
            "X is {:?} but Y is {:?}",
            x.shape(),
            y.shape()
        )));
    }
    let block = off_diagonal_block(x, &y.adjoint())?;
    let omega = numerical_radius(&block, cfg)?.omega;
    let (theta_star, sup) = maximize_periodic(
        |th| {
            let e = C64::from_polar(1.0, th);
            Ok(spectral_norm(&(x + &y.scale(e))))
        },
        cfg,
    )?;
    Ok(OffDiagRadius {
        omega,
        half_sup_norm: 0.5 * sup,
        theta_star,
    })
}

/// `|<T x, x>|` for a unit vector, as a convenience for checking witnesses.
pub fn witness_value(t: &ComplexMatrix, x: &[C64]) -> f64 {
    let n = vec_norm(x);
    t.quad_form(x).norm() / (n * n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::matrix::c64;

    fn cfg() -> SweepConfig {
        SweepConfig::default()
    }

    #[test]
    fn f_theta_examples() {
        let h = ComplexMatrix::from_real_rows(&[[2.0, 1.0], [1.0, 3.0]]);
        let lmax = (5.0 + 5f64.sqrt()) / 2.0;
        assert!((f_theta(&h, 0.0).unwrap() - lmax).abs() < 1e-14);
        let j = ComplexMatrix::from_real_rows(&[[0.0, 1.0], [0.0, 0.0]]);
        for th in [0.0, 0.7, 2.0, 5.5] {
            assert!((f_theta(&j, th).unwrap() - 0.5).abs() < 1e-15);
        }
    }

    #[test]
    fn paper_table_radii() {
        let t = ComplexMatrix::from_real_rows(&[[0.0, 2.0], [6.0, 0.0]]);
        assert!((numerical_radius(&t, &cfg()).unwrap().omega - 4.0).abs() < 1e-9);
        let t = ComplexMatrix::from_real_rows(&[[2.0, 1.0], [2.0, 9.0]]);
        assert!((numerical_radius(&t, &cfg()).unwrap().omega - 9.30789).abs() < 5e-4);
        let t = ComplexMatrix::from_rows(&[[c64(5.0, 7.0), c64(9.0, 6.0)], [c64(0.0, 5.0), c64(10.0, 3.0)]]);
        let r = numerical_radius(&t, &cfg()).unwrap();
        assert!((r.omega - 16.4629).abs() < 5e-3);
        assert!(witness_value(&t, &r.witness) >= r.omega - 1e-8 * (1.0 + r.omega));
        assert!(spectral_norm(&t) >= r.omega);
    }

    #[test]
    fn rayleigh_examples() {
        let d = ComplexMatrix::from_diag(&[c64(1.0, 0.0), c64(0.0, 1.0)]);
        let (w, _) = rayleigh_radius(&d, 8, 3).unwrap();
        assert!((w - 1.0).abs() < 1e-9);
        let j = ComplexMatrix::from_real_rows(&[[0.0, 1.0], [0.0, 0.0]]);
        let (w, _) = rayleigh_radius(&j, 8, 3).unwrap();
        assert!((w - 0.5).abs() < 1e-6);
        assert!(rayleigh_radius(&j, 0, 3).is_err());
    }

    #[test]
    fn off_diagonal_examples() {
        let one = ComplexMatrix::identity(1);
        let r = off_diag_radius(&one, &one, &cfg()).unwrap();
        assert!((r.omega - 1.0).abs() < 1e-12);
        assert!((r.half_sup_norm - 1.0).abs() < 1e-12);

        let x = ComplexMatrix::from_rows(&[[c64(1.0, 2.0), c64(0.0, -1.0)], [c64(3.0, 0.0), c64(0.5, 0.5)]]);
        let r = off_diag_radius(&x, &ComplexMatrix::zeros(2, 2), &cfg()).unwrap();
        assert!((r.omega - spectral_norm(&x) / 2.0).abs() < 1e-9);
        assert!(r.discrepancy() < 1e-9);
        assert!(off_diag_radius(&x, &ComplexMatrix::zeros(2, 1), &cfg()).is_err());
    }

    #[test]
    fn config_validation() {
        let bad = SweepConfig { grid_points: 4, ..SweepConfig::default() };
        assert!(bad.validate().is_err());
        let bad = SweepConfig { tol: 0.0, ..SweepConfig::default() };
        assert!(bad.validate().is_err());
        assert!(numerical_radius(&ComplexMatrix::zeros(2, 3), &cfg()).is_err());
    }

    #[test]
    fn zero_matrix_has_zero_radius() {
        let r = numerical_radius(&ComplexMatrix::zeros(3, 3), &cfg()).unwrap();
        assert_eq!(r.omega, 0.0);
    }
}
