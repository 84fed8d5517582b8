//! Search for matrices with `omega((|T|-|T*|)/2 + i Re T) > omega(T)`.
//!
//! The slack `omega(T) - omega((|T|-|T*|)/2 + i Re T)` is positively homogeneous, so
//! candidates are ranked by `slack / ||T||`. The best candidates of the ensemble are
//! refined by random perturbations whose step shrinks after every rejected move.

use serde::Serialize;

use crate::error::Result;
use crate::harness::ensemble::EnsembleSpec;
use crate::harness::tables::comparison_matrices;
use crate::inequalities::bounds::Derived;
use crate::linalg::matrix::ComplexMatrix;
use crate::linalg::svd::spectral_norm;
use crate::radius::SweepConfig;
use crate::random;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchConfig {
    /// Candidates kept for refinement.
    pub retain: usize,
    pub perturbations: usize,
    /// Initial step as a fraction of `||T||`.
    pub step: f64,
    pub decay: f64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            retain: 10,
            perturbations: 50,
            step: 0.1,
            decay: 0.7,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ConjectureResult {
    pub min_slack: f64,
    /// `min_slack / (1 + ||argmin||)`.
    pub relative_slack: f64,
    pub argmin_matrix: ComplexMatrix,
    /// Matrices evaluated, including perturbations.
    pub trials: usize,
    pub violated: bool,
    /// Slack of each of the five published comparison matrices.
    pub reference_slacks: Vec<f64>,
}

/// `omega(T) - omega((|T|-|T*|)/2 + i Re T)`.
pub fn conjecture_slack(t: &ComplexMatrix, cfg: &SweepConfig) -> Result<f64> {
    let d = Derived::new(t, cfg)?;
    Ok(d.omega_t()? - d.mixed_radius(false, 1.0)?)
}

fn normalized_slack(slack: f64, t: &ComplexMatrix) -> f64 {
    let n = spectral_norm(t);
    if n > 0.0 {
        slack / n
    } else {
        0.0
    }
}

/// `violated` iff the smallest slack is below `-1e-7 (1 + ||T||)`.
pub fn conjecture_search(spec: &EnsembleSpec, search: &SearchConfig, cfg: &SweepConfig) -> Result<ConjectureResult> {
    spec.validate()?;
    cfg.validate()?;
    let mut evaluated = 0;
    // (normalized slack, slack, matrix), best first
    let mut kept: Vec<(f64, f64, ComplexMatrix)> = Vec::with_capacity(search.retain + 1);
    for index in 0..spec.count {
        let (t, _) = spec.trial(index);
        let slack = conjecture_slack(&t, cfg)?;
        evaluated += 1;
        let key = normalized_slack(slack, &t);
        if kept.len() < search.retain.max(1) || key < kept.last().map_or(f64::INFINITY, |k| k.0) {
            let pos = kept.partition_point(|k| k.0 <= key);
            kept.insert(pos, (key, slack, t));
            kept.truncate(search.retain.max(1));
        }
    }

    for (c, cand) in kept.iter_mut().enumerate() {
        let mut rng = random::stream(spec.seed, (1 << 48) | c as u64);
        let mut step = search.step * spectral_norm(&cand.2);
        for _ in 0..search.perturbations {
            if step == 0.0 {
                break;
            }
            let g = random::gaussian_matrix(cand.2.rows(), cand.2.cols(), &mut rng);
            let g = g.scale_real(step / g.frobenius_norm().max(f64::MIN_POSITIVE));
            let trial = &cand.2 + &g;
            let slack = conjecture_slack(&trial, cfg)?;
            evaluated += 1;
            let key = normalized_slack(slack, &trial);
            if key < cand.0 {
                *cand = (key, slack, trial);
            } else {
                step *= search.decay;
            }
        }
    }
    kept.sort_by(|a, b| a.0.total_cmp(&b.0));
    let (_, min_slack, argmin) = kept.swap_remove(0);
    let scale = 1.0 + spectral_norm(&argmin);

    let reference_slacks = comparison_matrices()
        .iter()
        .map(|(t, _)| conjecture_slack(t, cfg))
        .collect::<Result<Vec<_>>>()?;

    Ok(ConjectureResult {
        min_slack,
        relative_slack: min_slack / scale,
        violated: min_slack < -1e-7 * scale,
        argmin_matrix: argmin,
        trials: evaluated,
        reference_slacks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::ensemble::EnsembleKind;
    use crate::linalg::matrix::c64;

    #[test]
    fn hermitian_is_on_the_boundary() {
        let t = ComplexMatrix::from_rows(&[[c64(2.0, 0.0), c64(1.0, -1.0)], [c64(1.0, 1.0), c64(-3.0, 0.0)]]);
        assert!(conjecture_slack(&t, &SweepConfig::default()).unwrap().abs() < 1e-9);
    }

    #[test]
    fn reference_slack_first_row() {
        let (t, printed) = &comparison_matrices()[0];
        let s = conjecture_slack(t, &SweepConfig::default()).unwrap();
        assert!((s - (printed[1] - printed[0])).abs() < 5e-3);
    }

    #[test]
    fn small_search_is_deterministic() {
        let spec = EnsembleSpec::new(EnsembleKind::IntegerComplex, 2, 40, 3);
        let search = SearchConfig {
            retain: 3,
            perturbations: 10,
            ..SearchConfig::default()
        };
        let cfg = SweepConfig::default();
        let a = conjecture_search(&spec, &search, &cfg).unwrap();
        let b = conjecture_search(&spec, &search, &cfg).unwrap();
        assert_eq!(a.min_slack, b.min_slack);
        assert_eq!(a.argmin_matrix, b.argmin_matrix);
        assert_eq!(a.trials, 40 + 30);
        assert!(!a.violated);
        assert_eq!(a.reference_slacks.len(), 5);
    }
}
