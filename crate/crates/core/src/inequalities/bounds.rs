//! Numerical-radius upper bounds built from `|T|`, `|T*|`, the Cartesian parts of `T`
//! and its Aluthge transform.

use std::cell::OnceCell;

use crate::error::{LinalgError, Result};
use crate::inequalities::report::BoundReport;
use crate::linalg::funcs::{abs_pair, block2, re_im_parts};
use crate::linalg::matrix::{ComplexMatrix, I};
use crate::linalg::svd::spectral_norm;
use crate::radius::{numerical_radius, SweepConfig};
use crate::transforms::aluthge;

/// Quantities of one square `T` shared by the bound families, with the numerical radii
/// evaluated on first use.
pub struct Derived<'a> {
    pub t: &'a ComplexMatrix,
    pub cfg: SweepConfig,
    pub abs_t: ComplexMatrix,
    pub abs_t_star: ComplexMatrix,
    pub re: ComplexMatrix,
    pub im: ComplexMatrix,
    /// `(|T| - |T*|) / 2`
    pub half_diff: ComplexMatrix,
    /// `|| |T| + |T*| ||`
    pub sum_norm: f64,
    /// `|| |T| - |T*| ||`
    pub diff_norm: f64,
    omega_t: OnceCell<f64>,
    norm_t: OnceCell<f64>,
    // indexed by [re/im][+/-]
    mixed: [[OnceCell<f64>; 2]; 2],
}

impl<'a> Derived<'a> {
    pub fn new(t: &'a ComplexMatrix, cfg: &SweepConfig) -> Result<Self> {
        t.ensure_square()?;
        cfg.validate()?;
        let (abs_t, abs_t_star) = abs_pair(t)?;
        let (re, im) = re_im_parts(t)?;
        let sum = &abs_t + &abs_t_star;
        let diff = &abs_t - &abs_t_star;
        Ok(Self {
            t,
            cfg: *cfg,
            sum_norm: spectral_norm(&sum),
            diff_norm: spectral_norm(&diff),
            half_diff: diff.scale_real(0.5),
            abs_t,
            abs_t_star,
            re,
            im,
            omega_t: OnceCell::new(),
            norm_t: OnceCell::new(),
            mixed: Default::default(),
        })
    }

    fn radius(&self, m: &ComplexMatrix) -> Result<f64> {
        Ok(numerical_radius(m, &self.cfg)?.omega)
    }

    fn cached(&self, cell: &OnceCell<f64>, f: impl FnOnce() -> Result<f64>) -> Result<f64> {
        if let Some(v) = cell.get() {
            return Ok(*v);
        }
        let v = f()?;
        Ok(*cell.get_or_init(|| v))
    }

    pub fn omega_t(&self) -> Result<f64> {
        self.cached(&self.omega_t, || self.radius(self.t))
    }

    pub fn norm_t(&self) -> f64 {
        *self.norm_t.get_or_init(|| spectral_norm(self.t))
    }

    /// `omega((|T| - |T*|)/2 + sign * i * P)` with `P = Re T` or `Im T`.
    pub fn mixed_radius(&self, use_im: bool, sign: f64) -> Result<f64> {
        let (p, idx) = if use_im { (&self.im, 1) } else { (&self.re, 0) };
        let s = usize::from(sign < 0.0);
        self.cached(&self.mixed[idx][s], || {
            self.radius(&(&self.half_diff + &p.scale(I * sign)))
        })
    }

    /// `|| |T| + |T*| || / 2`
    pub fn kittaneh(&self) -> f64 {
        0.5 * self.sum_norm
    }

    /// `(|| |T|+|T*| || + sqrt(|| |T|-|T*| ||^2 + 4 omega(T)^2)) / 4`
    pub fn beta1(&self) -> Result<f64> {
        let w = self.omega_t()?;
        Ok(0.25 * (self.sum_norm + (self.diff_norm.powi(2) + 4.0 * w * w).sqrt()))
    }

    /// `(||T|| + omega(T)) / 2`
    pub fn beta2(&self) -> Result<f64> {
        Ok(0.5 * (self.norm_t() + self.omega_t()?))
    }

    /// `|| |T| - |T*| || <= || |T| + |T*| ||`
    pub fn abs_difference_report(&self) -> BoundReport {
        BoundReport::with_default_tol("thm7: || |T|-|T*| || <= || |T|+|T*| ||", self.diff_norm, self.sum_norm)
    }
}

fn part_label(use_im: bool) -> &'static str {
    if use_im {
        "Im"
    } else {
        "Re"
    }
}

fn sign_label(sign: f64) -> char {
    if sign < 0.0 {
        '-'
    } else {
        '+'
    }
}

/// Upper bounds `omega((|T|-|T*|)/2 +- i P) <= || |T|+|T*| || / 2` for `P` in
/// `{Re T, Im T}`, the lower bounds `||P|| <= omega(...)`, and the norm comparison of
/// `|T| - |T*|` with `|T| + |T*|`.
pub fn thm7_reports(d: &Derived) -> Result<Vec<BoundReport>> {
    let mut out = Vec::with_capacity(9);
    for use_im in [false, true] {
        let p_norm = spectral_norm(if use_im { &d.im } else { &d.re });
        for sign in [1.0, -1.0] {
            let w = d.mixed_radius(use_im, sign)?;
            let label = format!("w(D{}i{}T)", sign_label(sign), part_label(use_im));
            out.push(BoundReport::with_default_tol(format!("thm7: {label} <= K"), w, d.kittaneh()));
            out.push(BoundReport::with_default_tol(
                format!("thm7: ||{}T|| <= {label}", part_label(use_im)),
                p_norm,
                w,
            ));
        }
    }
    out.push(d.abs_difference_report());
    Ok(out)
}

/// `omega((|T| - |T*|)/2 + i Re T)`, the quantity compared with `omega(T)`.
pub fn thm7_quantity(t: &ComplexMatrix, cfg: &SweepConfig) -> Result<f64> {
    Derived::new(t, cfg)?.mixed_radius(false, 1.0)
}

/// The two block radii bounded by `max(|| |A|+|B| ||, || |A*|+|B*| ||)`.
pub fn eq14_values(a: &ComplexMatrix, b: &ComplexMatrix, cfg: &SweepConfig) -> Result<(f64, f64, f64)> {
    let n = a.ensure_square()?;
    if b.shape() != (n, n) {
        return Err(LinalgError::DimensionMismatch(format!(
            "A is {n}x{n} but B is {}x{}",
            b.rows(),
            b.cols()
        )));
    }
    let (abs_a, abs_a_star) = abs_pair(a)?;
    let (abs_b, abs_b_star) = abs_pair(b)?;
    let top = &abs_b_star - &abs_a_star;
    let bottom = &abs_a - &abs_b;
    let amb = a - b;
    let block = |c: &ComplexMatrix| -> Result<f64> {
        // [[top, c], [-c*, bottom]]
        let m = block2(&top, c, &(-&c.adjoint()), &bottom)?;
        Ok(numerical_radius(&m, cfg)?.omega)
    };
    let alpha1 = block(&amb)?;
    let alpha2 = block(&(-&amb))?;
    let rhs = spectral_norm(&(&abs_a + &abs_b)).max(spectral_norm(&(&abs_a_star + &abs_b_star)));
    Ok((alpha1, alpha2, rhs))
}

pub fn eq14_report(a: &ComplexMatrix, b: &ComplexMatrix, cfg: &SweepConfig) -> Result<BoundReport> {
    let (a1, a2, rhs) = eq14_values(a, b, cfg)?;
    Ok(BoundReport::with_default_tol("eq14: max(a1, a2) <= max norm sums", a1.max(a2), rhs))
}

/// `omega(T) <= || |T|+|T*| ||/4 + sqrt(omega(T)^2 + || |T|-|T*| ||^2/4)/2`, and the
/// bound `omega(T) <= || |T|+|T*| ||/2` it is compared with.
pub fn newbound_reports(d: &Derived) -> Result<(BoundReport, BoundReport)> {
    let w = d.omega_t()?;
    let new = d.beta1()?;
    Ok((
        BoundReport::with_default_tol("newbound: w(T) <= new bound", w, new),
        BoundReport::with_default_tol("newbound: w(T) <= K", w, d.kittaneh()),
    ))
}

/// `omega((|T|-|T*|)/2 +- i P) <= beta1` and `<= beta2` for `P` in `{Im T, Re T}`, and
/// the comparison `beta1 <= beta2`.
///
/// The comparison fails for some matrices of size three and larger.
pub fn beta_reports(d: &Derived) -> Result<Vec<BoundReport>> {
    let beta1 = d.beta1()?;
    let beta2 = d.beta2()?;
    let mut out = Vec::with_capacity(5);
    for use_im in [true, false] {
        let lhs = d.mixed_radius(use_im, 1.0)?.max(d.mixed_radius(use_im, -1.0)?);
        let label = format!("beta: w(D+-i{}T)", part_label(use_im));
        out.push(BoundReport::with_default_tol(format!("{label} <= beta1"), lhs, beta1));
        out.push(BoundReport::with_default_tol(format!("{label} <= beta2"), lhs, beta2));
    }
    out.push(BoundReport::with_default_tol("beta: beta1 <= beta2", beta1, beta2));
    Ok(out)
}

/// Values of the Aluthge-transform bounds for one matrix.
#[derive(Debug, Clone)]
pub struct AluthgeBounds {
    pub omega: f64,
    pub l1: f64,
    pub l2: f64,
    /// `|| |T|+|T*| || / 2`
    pub kittaneh: f64,
    /// `(||T|| + omega(T~)) / 2`
    pub yamazaki: f64,
    /// `(||T|| + omega(T)) / 2`
    pub beta2: f64,
    pub reports: Vec<BoundReport>,
}

/// `omega(T) <= L1`, `omega(T) <= L2` and `omega(T) <= (||T|| + omega(T~))/2`.
pub fn aluthge_reports(d: &Derived) -> Result<AluthgeBounds> {
    let t = d.t;
    let tilde = aluthge(t)?.tilde;
    let tilde_star = tilde.adjoint();
    let abs_sq = &t.adjoint() * t;
    let m = &abs_sq + &(&(&tilde_star * &tilde) + &(&tilde * &tilde_star)).scale_real(0.25);
    let m_norm = spectral_norm(&m);
    let k = &(&d.abs_t * &tilde) + &(&tilde * &d.abs_t);
    let radius = |x: &ComplexMatrix| -> Result<f64> { Ok(numerical_radius(x, &d.cfg)?.omega) };

    let n = t.rows();
    let zero = ComplexMatrix::zeros(n, n);
    let lower = (&tilde_star * &tilde_star).scale_real(0.5);
    let block = block2(&zero, &k, &lower, &zero)?;
    let l1 = 0.5 * (m_norm + 2.0 * radius(&block)?).sqrt();
    let l2 = 0.5 * (m_norm + radius(&k)? + 0.5 * radius(&(&tilde * &tilde))?).sqrt();

    let omega = d.omega_t()?;
    let yamazaki = 0.5 * (d.norm_t() + radius(&tilde)?);
    let reports = vec![
        BoundReport::with_default_tol("aluthge: w(T) <= L1", omega, l1),
        BoundReport::with_default_tol("aluthge: w(T) <= L2", omega, l2),
        BoundReport::with_default_tol("aluthge: w(T) <= (||T|| + w(T~))/2", omega, yamazaki),
    ];
    Ok(AluthgeBounds {
        omega,
        l1,
        l2,
        kittaneh: d.kittaneh(),
        yamazaki,
        beta2: d.beta2()?,
        reports,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::matrix::c64;
    use approx::assert_abs_diff_eq;

    fn cfg() -> SweepConfig {
        SweepConfig::default()
    }

    #[test]
    fn thm7_on_hermitian_is_tight() {
        let t = ComplexMatrix::from_rows(&[[c64(2.0, 0.0), c64(1.0, -1.0)], [c64(1.0, 1.0), c64(-3.0, 0.0)]]);
        let d = Derived::new(&t, &cfg()).unwrap();
        let norm = spectral_norm(&t);
        assert_abs_diff_eq!(d.mixed_radius(false, 1.0).unwrap(), norm, epsilon = 1e-10);
        assert_abs_diff_eq!(d.kittaneh(), norm, epsilon = 1e-10);
        for r in thm7_reports(&d).unwrap() {
            assert!(r.holds, "{r:?}");
        }
    }

    #[test]
    fn thm7_reference_rows() {
        let t = ComplexMatrix::from_rows(&[[c64(5.0, 7.0), c64(9.0, 6.0)], [c64(0.0, 5.0), c64(10.0, 3.0)]]);
        assert_abs_diff_eq!(thm7_quantity(&t, &cfg()).unwrap(), 12.67204, epsilon = 1e-4);
        let t = ComplexMatrix::from_rows(&[[c64(8.0, 9.0), c64(6.0, 4.0)], [c64(3.0, 1.0), c64(8.0, 0.0)]]);
        assert_abs_diff_eq!(thm7_quantity(&t, &cfg()).unwrap(), 12.74342, epsilon = 1e-4);
    }

    #[test]
    fn eq14_equal_blocks_vanish() {
        let a = ComplexMatrix::from_rows(&[[c64(1.0, 2.0), c64(0.5, 0.0)], [c64(-1.0, 1.0), c64(0.0, -1.0)]]);
        let (a1, a2, rhs) = eq14_values(&a, &a, &cfg()).unwrap();
        assert!(a1.abs() < 1e-12 && a2.abs() < 1e-12);
        assert!(rhs > 0.0);
        assert!(eq14_report(&a, &ComplexMatrix::zeros(3, 3), &cfg()).is_err());
    }

    #[test]
    fn eq14_with_zero_block() {
        let a = ComplexMatrix::from_rows(&[[c64(1.0, 2.0), c64(0.5, 0.0)], [c64(-1.0, 1.0), c64(0.0, -1.0)]]);
        let r = eq14_report(&a, &ComplexMatrix::zeros(2, 2), &cfg()).unwrap();
        assert!(r.holds);
        let (abs_a, abs_a_star) = abs_pair(&a).unwrap();
        let expected = spectral_norm(&abs_a).max(spectral_norm(&abs_a_star));
        assert_abs_diff_eq!(r.rhs, expected, epsilon = 1e-12);
    }

    #[test]
    fn newbound_reference_rows() {
        let cases = [
            ([[2.0, 1.0], [2.0, 9.0]], 9.307887, 9.314599, 9.314929),
            ([[5.0, 7.0], [0.0, 6.0]], 9.035534, 9.367377, 9.501996),
            ([[0.0, 0.0], [9.0, 10.0]], 11.726812, 12.143695, 11.726812),
            ([[0.0, 2.0], [6.0, 0.0]], 4.0, 4.236068, 4.0),
        ];
        for (rows, w, new, k) in cases {
            let t = ComplexMatrix::from_real_rows(&rows);
            let d = Derived::new(&t, &cfg()).unwrap();
            let (r1, r2) = newbound_reports(&d).unwrap();
            assert_abs_diff_eq!(r1.lhs, w, epsilon = 1e-5);
            assert_abs_diff_eq!(r1.rhs, new, epsilon = 1e-5);
            assert_abs_diff_eq!(r2.rhs, k, epsilon = 1e-5);
            assert!(r1.holds && r2.holds);
        }
    }

    #[test]
    fn beta_chain_on_jordan_block() {
        let t = ComplexMatrix::from_real_rows(&[[0.0, 1.0], [0.0, 0.0]]);
        let d = Derived::new(&t, &cfg()).unwrap();
        assert_abs_diff_eq!(d.beta1().unwrap(), 0.25 * (1.0 + 2f64.sqrt()), epsilon = 1e-10);
        assert_abs_diff_eq!(d.beta2().unwrap(), 0.75, epsilon = 1e-10);
        for r in beta_reports(&d).unwrap() {
            assert!(r.holds, "{r:?}");
        }
    }

    #[test]
    fn beta1_can_exceed_beta2() {
        let t = ComplexMatrix::from_rows(&[
            [c64(10.0, 6.0), c64(3.0, 7.0), c64(9.0, 2.0)],
            [c64(2.0, 4.0), c64(8.0, 0.0), c64(8.0, 9.0)],
            [c64(9.0, 3.0), c64(9.0, 0.0), c64(8.0, 6.0)],
        ]);
        let d = Derived::new(&t, &cfg()).unwrap();
        let (b1, b2) = (d.beta1().unwrap(), d.beta2().unwrap());
        assert_abs_diff_eq!(b1, 25.959505, epsilon = 1e-5);
        assert_abs_diff_eq!(b2, 25.858423, epsilon = 1e-5);
        let reports = beta_reports(&d).unwrap();
        let (chain, rest): (Vec<_>, Vec<_>) = reports.iter().partition(|r| r.name == "beta: beta1 <= beta2");
        assert!(!chain[0].holds);
        assert!(rest.iter().all(|r| r.holds));
    }

    #[test]
    fn aluthge_reference_rows() {
        let cases = [
            ([[1.0, -2.0], [2.0, -3.0]], 3.117883, 3.065248, 3.130495, 3.065248),
            ([[10.0, 10.0], [5.0, 0.0]], 14.027163, 14.028690, 14.013878, 14.132151),
            ([[6.0, 7.0], [10.0, 7.0]], 15.015918, 15.016448, 15.014693, 15.033526),
        ];
        for (rows, l1, l2, k, y) in cases {
            let t = ComplexMatrix::from_real_rows(&rows);
            let d = Derived::new(&t, &cfg()).unwrap();
            let b = aluthge_reports(&d).unwrap();
            assert_abs_diff_eq!(b.l1, l1, epsilon = 1e-5);
            assert_abs_diff_eq!(b.l2, l2, epsilon = 1e-5);
            assert_abs_diff_eq!(b.kittaneh, k, epsilon = 1e-5);
            assert_abs_diff_eq!(b.yamazaki, y, epsilon = 1e-5);
            assert!(b.reports.iter().all(|r| r.holds));
        }
    }
}
