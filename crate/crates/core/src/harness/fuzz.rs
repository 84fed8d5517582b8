//! Randomized campaigns over the inequality registry.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::Serialize;

use crate::error::{LinalgError, Result};
use crate::harness::ensemble::EnsembleSpec;
use crate::inequalities::bounds::{
    aluthge_reports, beta_reports, eq14_report, newbound_reports, thm7_reports, Derived,
};
use crate::inequalities::positivity::{
    block_positivity, majorization_equiv, prop5_report, prop6_report, Prop5Outcome,
};
use crate::inequalities::report::{default_tol, BoundReport};
use crate::inequalities::schwarz::{mixed_schwarz, schwarz_gram};
use crate::linalg::funcs::min_eigenvalue;
use crate::linalg::matrix::{c64, ComplexMatrix, C64};
use crate::linalg::svd::spectral_norm;
use crate::radius::{off_diag_radius, SweepConfig};
use crate::random::{self, StreamRng};
use crate::transforms::{generalized_polar, generalized_polar_residuals};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Thm7,
    Eq14,
    Newbound,
    Beta,
    Aluthge,
    MixedSchwarz,
    SchwarzGram,
    Prop6,
    Prop5,
    Majorization,
    Positivity,
    GenPolar,
    Hirzallah,
}

impl Suite {
    pub const ALL: [Suite; 13] = [
        Suite::Thm7,
        Suite::Eq14,
        Suite::Newbound,
        Suite::Beta,
        Suite::Aluthge,
        Suite::MixedSchwarz,
        Suite::SchwarzGram,
        Suite::Prop6,
        Suite::Prop5,
        Suite::Majorization,
        Suite::Positivity,
        Suite::GenPolar,
        Suite::Hirzallah,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Thm7 => "thm7",
            Suite::Eq14 => "eq14",
            Suite::Newbound => "newbound",
            Suite::Beta => "beta",
            Suite::Aluthge => "aluthge",
            Suite::MixedSchwarz => "mixed-schwarz",
            Suite::SchwarzGram => "schwarz-gram",
            Suite::Prop6 => "prop6",
            Suite::Prop5 => "prop5",
            Suite::Majorization => "majorization",
            Suite::Positivity => "positivity",
            Suite::GenPolar => "gen-polar",
            Suite::Hirzallah => "hirzallah",
        }
    }

    fn id(self) -> u64 {
        Self::ALL.iter().position(|&s| s == self).unwrap_or(0) as u64
    }

    /// Parses a comma-separated list; `all` selects every suite.
    pub fn parse_list(s: &str) -> Result<Vec<Suite>> {
        let mut out = Vec::new();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            if part == "all" {
                out.extend(Self::ALL);
            } else {
                out.push(part.parse()?);
            }
        }
        if out.is_empty() {
            return Err(LinalgError::UnknownSuite(s.to_string()));
        }
        out.sort();
        out.dedup();
        Ok(out)
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = LinalgError;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| LinalgError::UnknownSuite(s.to_string()))
    }
}

/// Reports of one trial of one suite.
#[derive(Debug, Clone, Default)]
pub struct TrialOutcome {
    pub reports: Vec<BoundReport>,
    /// Conditional statements whose hypotheses failed, with the reason.
    pub unmet: Vec<String>,
}

/// Weights of the mixed Schwarz grid.
pub fn alpha_grid() -> Vec<f64> {
    (0..=8).map(|k| 0.25 * k as f64).collect()
}

/// Auxiliary stream of `suite` at trial `index`, disjoint from the trial streams.
fn aux_rng(spec: &EnsembleSpec, suite: Suite, index: usize) -> StreamRng {
    random::stream(spec.seed, ((suite.id() + 1) << 40) | index as u64)
}

/// PSD block inputs `(T*T, S*S, S*T)` from the Gram matrix of `[T S]`.
fn gram_of_pair(t: &ComplexMatrix, s: &ComplexMatrix) -> (ComplexMatrix, ComplexMatrix, ComplexMatrix) {
    let ts = t.adjoint();
    let ss = s.adjoint();
    (
        (&ts * t).symmetrized(),
        (&ss * s).symmetrized(),
        &ss * t,
    )
}

/// Runs trial `index` of `suite`.
pub fn run_trial(suite: Suite, spec: &EnsembleSpec, index: usize, cfg: &SweepConfig) -> Result<TrialOutcome> {
    let (t, _) = spec.trial(index);
    let n = t.rows();
    let mut rng = aux_rng(spec, suite, index);
    let mut out = TrialOutcome::default();
    let witness = |r: BoundReport, m: &ComplexMatrix| {
        if r.holds {
            r
        } else {
            r.witness_matrix("T", m.clone())
        }
    };
    match suite {
        Suite::Thm7 => {
            let d = Derived::new(&t, cfg)?;
            out.reports.extend(thm7_reports(&d)?.into_iter().map(|r| witness(r, &t)));
        }
        Suite::Eq14 => {
            let b = spec.sample(n, n, &mut rng);
            let r = eq14_report(&t, &b, cfg)?;
            out.reports.push(if r.holds { r } else { r.witness_matrix("A", t.clone()).witness_matrix("B", b) });
        }
        Suite::Newbound => {
            let d = Derived::new(&t, cfg)?;
            let (a, b) = newbound_reports(&d)?;
            out.reports.push(witness(a, &t));
            out.reports.push(witness(b, &t));
        }
        Suite::Beta => {
            let d = Derived::new(&t, cfg)?;
            out.reports.extend(beta_reports(&d)?.into_iter().map(|r| witness(r, &t)));
        }
        Suite::Aluthge => {
            let d = Derived::new(&t, cfg)?;
            out.reports.extend(aluthge_reports(&d)?.reports.into_iter().map(|r| witness(r, &t)));
        }
        Suite::MixedSchwarz => {
            let x = random::unit_vector(n, &mut rng);
            let y = random::unit_vector(n, &mut rng);
            for alpha in alpha_grid() {
                out.reports.push(witness(mixed_schwarz(&t, &x, &y, alpha)?, &t));
            }
        }
        Suite::SchwarzGram => {
            let x = random::unit_vector(n, &mut rng);
            let g = schwarz_gram(&t, &x)?;
            let tol = 1e-9 * (1.0 + spectral_norm(&t));
            for (label, m) in [("A", &g.a), ("B", &g.b), ("C", &g.c)] {
                let min = min_eigenvalue(&m.symmetrized())?;
                out.reports.push(witness(
                    BoundReport::new(format!("schwarz-gram: {label}(x) >= 0"), -min, 0.0, tol),
                    &t,
                ));
            }
            let ea = crate::linalg::eigen::herm_eigenvalues(&g.a.symmetrized())?;
            let mut gap: f64 = 0.0;
            for m in [&g.b, &g.c] {
                let e = crate::linalg::eigen::herm_eigenvalues(&m.symmetrized())?;
                gap = ea.iter().zip(&e).map(|(p, q)| (p - q).abs()).fold(gap, f64::max);
            }
            out.reports.push(witness(
                BoundReport::new("schwarz-gram: unitary conjugates share eigenvalues", gap, 0.0, 1e-10),
                &t,
            ));
        }
        Suite::Prop6 => {
            let s = spec.sample(n, n, &mut rng);
            let (a, b, c) = gram_of_pair(&t, &s);
            out.reports.push(witness(prop6_report(&a, &b, &c)?, &t));
        }
        Suite::Prop5 => {
            let s = spec.sample(n, n, &mut rng);
            let (a, b, c) = gram_of_pair(&t, &s);
            match prop5_report(&a, &b, &c)? {
                Prop5Outcome::Report { report, .. } => out.reports.push(witness(report, &t)),
                Prop5Outcome::HypothesisUnmet(reason) => out.unmet.push(format!("{reason:?}")),
            }
        }
        Suite::Majorization => {
            let s = spec.sample(n, n + 1, &mut rng);
            // Even trials compare S D with S for a diagonal contraction D; odd trials
            // compare two unrelated matrices.
            let other = if index % 2 == 0 {
                let d: Vec<C64> = (0..n + 1).map(|_| c64(rng.random::<f64>(), 0.0)).collect();
                &s * &ComplexMatrix::from_diag(&d)
            } else {
                spec.sample(n, n + 1, &mut rng)
            };
            let m = majorization_equiv(&other, &s, None, index as u64)?;
            for r in [m.forward, m.backward] {
                out.reports.push(if r.holds {
                    r
                } else {
                    r.witness_matrix("T", other.clone()).witness_matrix("S", s.clone())
                });
            }
        }
        Suite::Positivity => {
            let s = spec.sample(n, n, &mut rng);
            let (a, b, c) = gram_of_pair(&t, &s);
            if index % 2 == 0 {
                let v = block_positivity(&a, &b, &c, None, index as u64)?;
                out.reports.push(BoundReport::new(
                    "positivity: T >= 0 gives ratio <= 1",
                    v.condition_ii_max_ratio,
                    1.0,
                    default_tol(1.0),
                ));
                out.reports.push(BoundReport::new(
                    "positivity: T >= 0 gives Schur complement >= 0",
                    -v.schur_residual,
                    0.0,
                    v.tol_psd,
                ));
            } else {
                // Inflating the coupling of a Gram block breaks positivity.
                let c = c.scale_real(3.0);
                let v = block_positivity(&a, &b, &c, None, index as u64)?;
                let scale = 1.0 + v.min_eig.abs().max(spectral_norm(&a)).max(spectral_norm(&b));
                if v.min_eig < -1e-4 * scale {
                    let margin = if v.blocks_psd {
                        (v.condition_ii_max_ratio - 1.0).max(-v.schur_residual / scale)
                    } else {
                        1.0
                    };
                    out.reports.push(BoundReport::new(
                        "positivity: T not >= 0 is detected",
                        -margin.min(1.0),
                        0.0,
                        0.0,
                    ));
                } else {
                    out.unmet.push("block not sufficiently negative".into());
                }
            }
        }
        Suite::GenPolar => {
            let alpha = rng.random_range(0.05..0.95);
            let g = generalized_polar(&t, alpha)?;
            let res = generalized_polar_residuals(&t, &g, &[0.5, 1.0, 2.0])?;
            let norm = spectral_norm(&t);
            let scale = 1.0 + norm * norm;
            out.reports.push(witness(
                BoundReport::new(format!("gen-polar: identities (alpha={alpha:.4})"), res.max(), 0.0, 1e-9 * scale),
                &t,
            ));
        }
        Suite::Hirzallah => {
            let y = spec.sample(n, n, &mut rng);
            let r = off_diag_radius(&t, &y, cfg)?;
            let scale = 1.0 + spectral_norm(&t) + spectral_norm(&y);
            out.reports.push(witness(
                BoundReport::new("hirzallah: 2w([[0,X],[Y*,0]]) = sup |X + e^it Y|", r.discrepancy(), 0.0, 1e-8 * scale),
                &t,
            ));
        }
    }
    Ok(out)
}

/// Retained failing reports per suite.
pub const MAX_RECORDED_FAILURES: usize = 20;

#[derive(Debug, Clone, Serialize)]
pub struct Failure {
    pub trial: usize,
    pub report: BoundReport,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteSummary {
    pub suite: Suite,
    pub trials: usize,
    pub reports: usize,
    pub violations: usize,
    pub vacuous: usize,
    pub hypothesis_unmet: usize,
    /// Smallest `slack / (1 + |rhs|)` over non-vacuous reports.
    pub worst_relative_slack: f64,
    pub worst_report: Option<String>,
    pub failures: Vec<Failure>,
}

impl SuiteSummary {
    fn new(suite: Suite) -> Self {
        Self {
            suite,
            trials: 0,
            reports: 0,
            violations: 0,
            vacuous: 0,
            hypothesis_unmet: 0,
            worst_relative_slack: f64::INFINITY,
            worst_report: None,
            failures: Vec::new(),
        }
    }

    fn absorb(&mut self, trial: usize, outcome: TrialOutcome) {
        self.trials += 1;
        self.hypothesis_unmet += outcome.unmet.len();
        for r in outcome.reports {
            self.reports += 1;
            if r.vacuous {
                self.vacuous += 1;
                continue;
            }
            let rel = r.relative_slack();
            if rel < self.worst_relative_slack {
                self.worst_relative_slack = rel;
                self.worst_report = Some(r.name.clone());
            }
            if !r.holds {
                self.violations += 1;
                if self.failures.len() < MAX_RECORDED_FAILURES {
                    self.failures.push(Failure { trial, report: r });
                }
            }
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FuzzSummary {
    pub spec: EnsembleSpec,
    pub suites: Vec<SuiteSummary>,
}

impl FuzzSummary {
    pub fn violations(&self) -> usize {
        self.suites.iter().map(|s| s.violations).sum()
    }
}

/// Runs every suite over every trial of the ensemble.
pub fn fuzz(suites: &[Suite], spec: &EnsembleSpec, cfg: &SweepConfig) -> Result<FuzzSummary> {
    spec.validate()?;
    cfg.validate()?;
    let mut summaries = Vec::with_capacity(suites.len());
    for &suite in suites {
        let mut summary = SuiteSummary::new(suite);
        for index in 0..spec.count {
            summary.absorb(index, run_trial(suite, spec, index, cfg)?);
        }
        summaries.push(summary);
    }
    Ok(FuzzSummary {
        spec: spec.clone(),
        suites: summaries,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::ensemble::EnsembleKind;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert_eq!(Suite::parse_list("beta, thm7,beta").unwrap(), vec![Suite::Thm7, Suite::Beta]);
        assert_eq!(Suite::parse_list("all").unwrap().len(), Suite::ALL.len());
        assert!(matches!(Suite::parse_list("nope"), Err(LinalgError::UnknownSuite(_))));
        assert!(Suite::parse_list("").is_err());
    }

    #[test]
    fn alpha_grid_endpoints() {
        let g = alpha_grid();
        assert_eq!(g.len(), 9);
        assert_eq!(g[0], 0.0);
        assert_eq!(g[8], 2.0);
    }

    #[test]
    fn small_campaign_has_no_violations() {
        let spec = EnsembleSpec::new(EnsembleKind::IntegerComplex, 3, 6, 1).with_vary_dim(true);
        // beta1 <= beta2 has counterexamples from size three on
        let suites: Vec<Suite> = Suite::ALL.into_iter().filter(|&s| s != Suite::Beta).collect();
        let summary = fuzz(&suites, &spec, &SweepConfig::default()).unwrap();
        for s in &summary.suites {
            assert_eq!(s.violations, 0, "{s:?}");
            assert_eq!(s.trials, 6);
        }
    }

    #[test]
    fn trials_are_reproducible() {
        let spec = EnsembleSpec::new(EnsembleKind::GaussianComplex, 3, 4, 5);
        let cfg = SweepConfig::default();
        let a = run_trial(Suite::MixedSchwarz, &spec, 2, &cfg).unwrap();
        let b = run_trial(Suite::MixedSchwarz, &spec, 2, &cfg).unwrap();
        assert_eq!(a.reports, b.reports);
    }
}
