//! Positivity of `T = [[A, C*], [C, B]]` and the statements built on it: the
//! characterization through `|<Cu, v>|^2 <= <Au, u> <Bv, v>`, the majorization
//! equivalence `TT* <= SS*  <=>  |T* x| <= |S* x|`, `|C| <= |T| / 2`, and the
//! conditional bound `|T| <= |A + U* B U|`.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{LinalgError, Result};
use crate::inequalities::report::{default_tol, BoundReport};
use crate::linalg::eigen::{check_hermitian, herm_eig_unchecked, HermEigen};
use crate::linalg::funcs::block2;
use crate::linalg::matrix::{normalized, vec_norm, ComplexMatrix, C64};
use crate::linalg::svd::spectral_norm;
use crate::random;
use crate::transforms::polar_any;

/// Steps of alternating ascent on the condition-(ii) ratio.
pub const RATIO_ASCENT_STEPS: usize = 20;

/// Sampled pairs that seed the alternating ascent.
const ASCENT_SEEDS: usize = 3;

/// Power-iteration steps used to ascend `|T* x|^2 - |S* x|^2`.
const MAJORIZATION_ASCENT_STEPS: usize = 500;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PositivityVerdict {
    /// `min_eig >= -tol_psd`.
    pub is_psd: bool,
    /// Smallest eigenvalue of the assembled block matrix.
    pub min_eig: f64,
    /// Smallest eigenvalue of `B - C (A + eps I)^{-1} C*` when `A` is PSD; otherwise the
    /// (negative) smallest eigenvalue of `A`.
    pub schur_residual: f64,
    /// Largest observed `|<Cu, v>|^2 / (|<Au, u>| |<Bv, v>|)`; `0/0 -> 0`, `x/0 -> inf`.
    pub condition_ii_max_ratio: f64,
    pub sampled_pairs: usize,
    /// Both diagonal blocks PSD within `tol_psd`.
    pub blocks_psd: bool,
    /// `1e-9 * (1 + |T|)`.
    pub tol_psd: f64,
}

impl PositivityVerdict {
    /// Condition (ii) as observed: PSD diagonal blocks and ratio at most `1 + slack`.
    pub fn condition_ii_holds(&self, slack: f64) -> bool {
        self.blocks_psd && self.condition_ii_max_ratio <= 1.0 + slack
    }

    /// Some check other than the eigenvalue test flags the block as not PSD.
    pub fn negativity_detected(&self, slack: f64) -> bool {
        !self.condition_ii_holds(slack) || self.schur_residual < -self.tol_psd
    }
}

/// Precomputed `(P_+ + eps I)^{-1}` for the ascent steps.
fn regularized_inverse(eig: &HermEigen, eps: f64) -> ComplexMatrix {
    eig.apply_fn(|l| 1.0 / (l.max(0.0) + eps))
}

struct RatioProblem<'a> {
    a: &'a ComplexMatrix,
    b: &'a ComplexMatrix,
    c: &'a ComplexMatrix,
    degenerate: f64,
}

impl RatioProblem<'_> {
    fn ratio(&self, u: &[C64], v: &[C64]) -> f64 {
        let num = crate::linalg::matrix::inner(&self.c.mul_vec(u), v).norm_sqr();
        let den = self.a.quad_form(u).re.abs() * self.b.quad_form(v).re.abs();
        if den < self.degenerate {
            if num < self.degenerate {
                0.0
            } else {
                f64::INFINITY
            }
        } else {
            num / den
        }
    }
}

/// Checks positivity of `[[A, C*], [C, B]]` by its spectrum and by both characterizations.
///
/// `samples` random unit pairs `(u, v)` are drawn (default `10 (n+m)^2`); the best three
/// are refined by [`RATIO_ASCENT_STEPS`] rounds of alternating maximization.
pub fn block_positivity(
    a: &ComplexMatrix,
    b: &ComplexMatrix,
    c: &ComplexMatrix,
    samples: Option<usize>,
    seed: u64,
) -> Result<PositivityVerdict> {
    check_hermitian(a)?;
    check_hermitian(b)?;
    let a = a.symmetrized();
    let b = b.symmetrized();
    let t = block2(&a, &c.adjoint(), c, &b)?;
    let (n, m) = (a.rows(), b.rows());

    let t_eig = herm_eig_unchecked(&t)?;
    let t_norm = t_eig.max().abs().max(t_eig.min().abs());
    let tol_psd = 1e-9 * (1.0 + t_norm);
    let min_eig = t_eig.min();

    let a_eig = herm_eig_unchecked(&a)?;
    let b_eig = herm_eig_unchecked(&b)?;
    let blocks_psd = a_eig.min() >= -tol_psd && b_eig.min() >= -tol_psd;

    let a_norm = a_eig.max().abs().max(a_eig.min().abs());
    let schur_residual = if a_eig.min() >= -tol_psd {
        let eps = 1e-8 * (1.0 + a_norm);
        let a_inv = regularized_inverse(&a_eig, eps);
        let schur = &b - &(&(c * &a_inv) * &c.adjoint());
        herm_eig_unchecked(&schur)?.min()
    } else {
        a_eig.min()
    };

    let scale = 1.0 + t_norm;
    let problem = RatioProblem {
        a: &a,
        b: &b,
        c,
        degenerate: 1e-14 * scale * scale,
    };
    let count = samples.unwrap_or(10 * (n + m) * (n + m)).max(1);
    let mut rng = random::stream(seed, 0);
    let mut seeds: Vec<(f64, Vec<C64>, Vec<C64>)> = Vec::with_capacity(count);
    let mut max_ratio: f64 = 0.0;
    for _ in 0..count {
        let u = random::unit_vector(n, &mut rng);
        let v = random::unit_vector(m, &mut rng);
        let r = problem.ratio(&u, &v);
        max_ratio = max_ratio.max(r);
        seeds.push((r, u, v));
    }
    seeds.sort_by(|x, y| y.0.total_cmp(&x.0));
    seeds.truncate(ASCENT_SEEDS);

    let eps = 1e-10 * scale;
    let a_inv = regularized_inverse(&a_eig, eps);
    let b_inv = regularized_inverse(&b_eig, eps);
    for (_, mut u, mut v) in seeds {
        for _ in 0..RATIO_ASCENT_STEPS {
            // For fixed u the maximizer over v is B^{-1} C u, and symmetrically for u.
            if let Some(nv) = normalized(&b_inv.mul_vec(&c.mul_vec(&u))) {
                v = nv;
            }
            max_ratio = max_ratio.max(problem.ratio(&u, &v));
            if let Some(nu) = normalized(&a_inv.mul_vec(&c.adjoint_mul_vec(&v))) {
                u = nu;
            }
            max_ratio = max_ratio.max(problem.ratio(&u, &v));
        }
    }

    Ok(PositivityVerdict {
        is_psd: min_eig >= -tol_psd,
        min_eig,
        schur_residual,
        condition_ii_max_ratio: max_ratio,
        sampled_pairs: count,
        blocks_psd,
        tol_psd,
    })
}

/// Both directions of `TT* <= SS*  <=>  |T* x| <= |S* x| for all x`.
#[derive(Debug, Clone)]
pub struct MajorizationCheck {
    /// Smallest eigenvalue of `SS* - TT*`.
    pub operator_min_eig: f64,
    /// Largest observed `|T* x|^2 - |S* x|^2` over unit `x`.
    pub vector_max_gap: f64,
    /// Operator inequality implies the vector inequality.
    pub forward: BoundReport,
    /// Vector inequality implies the operator inequality.
    pub backward: BoundReport,
}

pub fn majorization_equiv(
    t: &ComplexMatrix,
    s: &ComplexMatrix,
    samples: Option<usize>,
    seed: u64,
) -> Result<MajorizationCheck> {
    if t.rows() != s.rows() {
        return Err(LinalgError::DimensionMismatch(format!(
            "T has {} rows but S has {}",
            t.rows(),
            s.rows()
        )));
    }
    let n = t.rows();
    let norm = spectral_norm(t).max(spectral_norm(s));
    let scale = 1.0 + norm * norm;

    let diff = &(s * &s.adjoint()) - &(t * &t.adjoint());
    let operator_min_eig = herm_eig_unchecked(&diff)?.min();

    let gap_sq = |x: &[C64]| {
        let tx = vec_norm(&t.adjoint_mul_vec(x));
        let sx = vec_norm(&s.adjoint_mul_vec(x));
        (tx * tx - sx * sx, tx - sx)
    };

    let count = samples.unwrap_or(10 * n * n).max(1);
    let mut rng = random::stream(seed, 0);
    let mut best_x = random::unit_vector(n, &mut rng);
    let (mut max_gap_sq, mut max_gap) = gap_sq(&best_x);
    for _ in 1..count {
        let x = random::unit_vector(n, &mut rng);
        let (g2, g) = gap_sq(&x);
        max_gap = max_gap.max(g);
        if g2 > max_gap_sq {
            max_gap_sq = g2;
            best_x = x;
        }
    }
    // Shifted power iteration on TT* - SS*, applied without forming the matrix.
    let shift = 2.0 * norm * norm;
    let mut x = best_x;
    for _ in 0..MAJORIZATION_ASCENT_STEPS {
        let tt = t.mul_vec(&t.adjoint_mul_vec(&x));
        let ss = s.mul_vec(&s.adjoint_mul_vec(&x));
        let y: Vec<C64> = (0..n).map(|i| tt[i] - ss[i] + x[i] * shift).collect();
        let Some(y) = normalized(&y) else { break };
        x = y;
        let (g2, g) = gap_sq(&x);
        max_gap_sq = max_gap_sq.max(g2);
        max_gap = max_gap.max(g);
    }

    let tol_op = 1e-9 * scale;
    let tol_vec = 1e-9 * (1.0 + norm);
    let forward = if operator_min_eig >= -tol_op {
        BoundReport::new("majorization (i)=>(ii)", max_gap, 0.0, tol_vec)
    } else {
        BoundReport::vacuous("majorization (i)=>(ii)")
    };
    let backward = if max_gap_sq <= tol_op {
        BoundReport::new("majorization (ii)=>(i)", -operator_min_eig, 0.0, 1e-7 * scale)
    } else {
        BoundReport::vacuous("majorization (ii)=>(i)")
    };
    Ok(MajorizationCheck {
        operator_min_eig,
        vector_max_gap: max_gap_sq,
        forward,
        backward,
    })
}

/// `|C| <= |T| / 2` for a PSD block matrix.
pub fn prop6_report(a: &ComplexMatrix, b: &ComplexMatrix, c: &ComplexMatrix) -> Result<BoundReport> {
    let t = block2(a, &c.adjoint(), c, b)?;
    let eig = herm_eig_unchecked(&t)?;
    let t_norm = eig.max().abs().max(eig.min().abs());
    if eig.min() < -1e-9 * (1.0 + t_norm) {
        return Err(LinalgError::NotPsd { min_eig: eig.min() });
    }
    Ok(BoundReport::with_default_tol(
        "prop6: |C| <= |T|/2",
        spectral_norm(c),
        0.5 * t_norm,
    ))
}

/// Which hypothesis of the conditional block-norm bound failed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Prop5Unmet {
    NotPositive { min_eig: f64 },
    NotContraction { norm: f64 },
    PolarResidual { residual: f64 },
    RangeCondition { residual: f64 },
}

#[derive(Debug, Clone)]
pub enum Prop5Outcome {
    Report {
        report: BoundReport,
        /// `|U* C - |C||`, expected to vanish for a contraction with `C = U|C|`.
        adjoint_identity_residual: f64,
        adjoint_identity_ok: bool,
    },
    HypothesisUnmet(Prop5Unmet),
}

/// `|T| <= |A + U* B U|` with `U` the polar factor of `C`, when `T >= 0`, `U` is a
/// contraction, `C = U|C|` and `UU* B = B`.
pub fn prop5_report(a: &ComplexMatrix, b: &ComplexMatrix, c: &ComplexMatrix) -> Result<Prop5Outcome> {
    let t = block2(a, &c.adjoint(), c, b)?;
    let eig = herm_eig_unchecked(&t)?;
    let t_norm = eig.max().abs().max(eig.min().abs());
    let scale = 1.0 + t_norm;
    if eig.min() < -1e-9 * scale {
        return Ok(Prop5Outcome::HypothesisUnmet(Prop5Unmet::NotPositive { min_eig: eig.min() }));
    }
    let pf = polar_any(c)?;
    let u = &pf.u;
    let u_norm = spectral_norm(u);
    if u_norm > 1.0 + 1e-9 {
        return Ok(Prop5Outcome::HypothesisUnmet(Prop5Unmet::NotContraction { norm: u_norm }));
    }
    let residual = spectral_norm(&(&(u * &pf.abs_t) - c));
    if residual > 1e-9 * scale {
        return Ok(Prop5Outcome::HypothesisUnmet(Prop5Unmet::PolarResidual { residual }));
    }
    let uu_b = &(u * &u.adjoint()) * b;
    let residual = spectral_norm(&(&uu_b - b));
    if residual > 1e-7 * scale {
        return Ok(Prop5Outcome::HypothesisUnmet(Prop5Unmet::RangeCondition { residual }));
    }
    let adjoint_identity_residual = spectral_norm(&(&(&u.adjoint() * c) - &pf.abs_t));
    let rhs = spectral_norm(&(a + &(&(&u.adjoint() * b) * u)));
    let report = BoundReport::new("prop5: |T| <= |A + U*BU|", t_norm, rhs, default_tol(rhs))
        .witness_matrix("U", u.clone());
    Ok(Prop5Outcome::Report {
        report,
        adjoint_identity_residual,
        adjoint_identity_ok: adjoint_identity_residual <= 1e-8 * scale,
    })
}

/// Splits a random Gram matrix `G* G` of size `n + m` into PSD block inputs `(A, B, C)`.
pub fn gram_blocks<R: Rng + ?Sized>(
    n: usize,
    m: usize,
    rng: &mut R,
) -> (ComplexMatrix, ComplexMatrix, ComplexMatrix) {
    let t = random::psd(n + m, rng);
    (
        t.submatrix(0, 0, n, n),
        t.submatrix(n, n, m, m),
        t.submatrix(n, 0, m, n),
    )
}
