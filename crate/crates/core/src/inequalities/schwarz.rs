//! The weighted mixed Schwarz inequality
//! `|<Tx, y>|^2 <= <|T|^a x, x> <|T*|^{2-a} y, y>` for `a` in `[0, 2]`, and the 2x2
//! Gram-type matrices assembled from `<|T|x, x>`, `<Tx, x>`, `<|T*|x, x>`.

use crate::error::{LinalgError, Result};
use crate::inequalities::report::BoundReport;
use crate::linalg::funcs::{matrix_abs, matrix_power_psd};
use crate::linalg::matrix::{inner, vec_norm, ComplexMatrix, C64, I};

/// Checks one instance of the weighted mixed Schwarz inequality.
///
/// `T` is `n x m`, `x` has length `m` and `y` length `n`. At `alpha = 0` (resp. `2`)
/// the factor `|T|^0` (resp. `|T*|^0`) is the projection onto its range.
pub fn mixed_schwarz(t: &ComplexMatrix, x: &[C64], y: &[C64], alpha: f64) -> Result<BoundReport> {
    if !(0.0..=2.0).contains(&alpha) {
        return Err(LinalgError::AlphaOutOfRange(alpha));
    }
    let (n, m) = t.shape();
    if x.len() != m || y.len() != n {
        return Err(LinalgError::DimensionMismatch(format!(
            "T is {n}x{m} but x has length {} and y has length {}",
            x.len(),
            y.len()
        )));
    }
    let right = matrix_power_psd(&matrix_abs(t)?, alpha)?;
    let left = matrix_power_psd(&matrix_abs(&t.adjoint())?, 2.0 - alpha)?;
    let lhs = inner(&t.mul_vec(x), y).norm_sqr();
    let rhs = right.quad_form(x).re.max(0.0) * left.quad_form(y).re.max(0.0);
    Ok(BoundReport::with_default_tol(format!("mixed-schwarz(alpha={alpha})"), lhs, rhs)
        .witness_vector("x", x)
        .witness_vector("y", y))
}

/// The three 2x2 matrices built from one vector `x`.
///
/// `a = [[<|T|x,x>, <Tx,x>], [<T*x,x>, <|T*|x,x>]]`; `b` and `c` are its conjugates by
/// the fixed unitaries `[[i, 1], [-i, 1]] / sqrt 2` and `[[1, -1], [1, 1]] / sqrt 2`.
#[derive(Debug, Clone)]
pub struct SchwarzGram {
    pub a: ComplexMatrix,
    pub b: ComplexMatrix,
    pub c: ComplexMatrix,
}

pub fn conjugator_b() -> ComplexMatrix {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    ComplexMatrix::from_rows(&[[I * s, C64::new(s, 0.0)], [-I * s, C64::new(s, 0.0)]])
}

pub fn conjugator_c() -> ComplexMatrix {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    ComplexMatrix::from_real_rows(&[[s, -s], [s, s]])
}

pub fn schwarz_gram(t: &ComplexMatrix, x: &[C64]) -> Result<SchwarzGram> {
    let n = t.ensure_square()?;
    if x.len() != n {
        return Err(LinalgError::DimensionMismatch(format!(
            "T is {n}x{n} but x has length {}",
            x.len()
        )));
    }
    if vec_norm(x) == 0.0 {
        return Err(LinalgError::ZeroVector);
    }
    let abs_t = matrix_abs(t)?;
    let abs_t_star = matrix_abs(&t.adjoint())?;
    let txx = t.quad_form(x);
    let a = ComplexMatrix::from_rows(&[
        [C64::new(abs_t.quad_form(x).re, 0.0), txx],
        [txx.conj(), C64::new(abs_t_star.quad_form(x).re, 0.0)],
    ]);
    let conj = |l: ComplexMatrix| &(&l * &a) * &l.adjoint();
    Ok(SchwarzGram {
        b: conj(conjugator_b()),
        c: conj(conjugator_c()),
        a,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::eigen::herm_eigenvalues;
    use crate::linalg::funcs::re_im_parts;
    use crate::linalg::matrix::c64;

    #[test]
    fn identity_is_equality_case() {
        let t = ComplexMatrix::identity(2);
        let x = [c64(0.6, 0.0), c64(0.0, 0.8)];
        let r = mixed_schwarz(&t, &x, &x, 1.0).unwrap();
        assert!((r.lhs - 1.0).abs() < 1e-14 && (r.rhs - 1.0).abs() < 1e-14);
        assert!(r.slack.abs() < 1e-14);
    }

    #[test]
    fn alpha_two_is_cauchy_schwarz() {
        let t = ComplexMatrix::from_rows(&[[c64(1.0, 2.0), c64(0.0, 1.0)], [c64(-1.0, 0.0), c64(3.0, -1.0)]]);
        let x = [c64(0.3, 0.1), c64(-0.7, 0.2)];
        let y = [c64(0.5, -0.5), c64(0.1, 0.9)];
        let r = mixed_schwarz(&t, &x, &y, 2.0).unwrap();
        let tx = t.mul_vec(&x);
        let expected = vec_norm(&tx).powi(2) * vec_norm(&y).powi(2);
        assert!((r.rhs - expected).abs() < 1e-12 * expected);
        assert!(r.holds);
    }

    #[test]
    fn alpha_out_of_range() {
        let t = ComplexMatrix::identity(1);
        let x = [c64(1.0, 0.0)];
        assert!(matches!(mixed_schwarz(&t, &x, &x, 2.5), Err(LinalgError::AlphaOutOfRange(_))));
        assert!(matches!(mixed_schwarz(&t, &x, &x, -0.1), Err(LinalgError::AlphaOutOfRange(_))));
    }

    #[test]
    fn gram_of_psd_eigenvector() {
        let t = ComplexMatrix::from_real_rows(&[[2.0, 1.0], [1.0, 2.0]]);
        let x = [c64(1.0, 0.0), c64(1.0, 0.0)]; // eigenvalue 3, |x|^2 = 2
        let g = schwarz_gram(&t, &x).unwrap();
        let expected = ComplexMatrix::from_real_rows(&[[6.0, 6.0], [6.0, 6.0]]);
        assert!(g.a.max_abs_diff(&expected) < 1e-13);
    }

    #[test]
    fn gram_of_nilpotent() {
        let t = ComplexMatrix::from_real_rows(&[[0.0, 1.0], [0.0, 0.0]]);
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let g = schwarz_gram(&t, &[c64(s, 0.0), c64(s, 0.0)]).unwrap();
        let expected = ComplexMatrix::from_real_rows(&[[0.5, 0.5], [0.5, 0.5]]);
        assert!(g.a.max_abs_diff(&expected) < 1e-15);
        assert!(matches!(
            schwarz_gram(&t, &[c64(0.0, 0.0), c64(0.0, 0.0)]),
            Err(LinalgError::ZeroVector)
        ));
    }

    /// The conjugated matrices agree entrywise with their closed forms in terms of
    /// `Re T`, `Im T`, `|T|` and `|T*|`.
    #[test]
    fn conjugates_match_explicit_entries() {
        let t = ComplexMatrix::from_rows(&[
            [c64(1.0, 0.5), c64(-2.0, 0.0), c64(0.3, 1.0)],
            [c64(0.0, 2.0), c64(1.5, -1.0), c64(0.0, 0.0)],
            [c64(-1.0, 0.0), c64(0.25, 0.25), c64(2.0, 0.0)],
        ]);
        let x = [c64(0.2, -0.4), c64(1.0, 0.3), c64(-0.5, 0.0)];
        let g = schwarz_gram(&t, &x).unwrap();

        let abs_t = matrix_abs(&t).unwrap();
        let abs_ts = matrix_abs(&t.adjoint()).unwrap();
        let (re, im) = re_im_parts(&t).unwrap();
        let sum = (&abs_t + &abs_ts).scale_real(0.5);
        let diff_ts_t = (&abs_ts - &abs_t).scale_real(0.5);
        let diff_t_ts = (&abs_t - &abs_ts).scale_real(0.5);
        let q = |m: &ComplexMatrix| m.quad_form(&x);

        let b_explicit = ComplexMatrix::from_rows(&[
            [q(&(&sum - &im)), q(&(&diff_ts_t + &re.scale(I)))],
            [q(&(&diff_ts_t - &re.scale(I))), q(&(&sum + &im))],
        ]);
        assert!(g.b.max_abs_diff(&b_explicit) < 1e-12, "{:?}\n{:?}", g.b, b_explicit);

        let c_explicit = ComplexMatrix::from_rows(&[
            [q(&(&sum - &re)), q(&(&diff_t_ts + &im.scale(I)))],
            [q(&(&diff_t_ts - &im.scale(I))), q(&(&sum + &re))],
        ]);
        assert!(g.c.max_abs_diff(&c_explicit) < 1e-12, "{:?}\n{:?}", g.c, c_explicit);

        let ea = herm_eigenvalues(&g.a).unwrap();
        let eb = herm_eigenvalues(&g.b.symmetrized()).unwrap();
        assert!(ea[0] >= -1e-12);
        assert!((ea[0] - eb[0]).abs() < 1e-10 && (ea[1] - eb[1]).abs() < 1e-10);
    }
}
