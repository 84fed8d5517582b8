//! Seeded random-matrix ensembles.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{LinalgError, Result};
use crate::linalg::matrix::{ComplexMatrix, C64};
use crate::random::{self, StreamRng};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EnsembleKind {
    /// Real and imaginary parts independent uniform integers in `int_range`.
    IntegerComplex,
    /// Uniform integers in `int_range`, zero imaginary part.
    IntegerReal,
    /// Standard complex normal entries.
    GaussianComplex,
    /// `G* G` for a Gaussian `G`.
    GramPsdBlock,
    /// Entries uniform in the unit disc.
    UnitDisc,
}

impl EnsembleKind {
    pub const ALL: [EnsembleKind; 5] = [
        EnsembleKind::IntegerComplex,
        EnsembleKind::IntegerReal,
        EnsembleKind::GaussianComplex,
        EnsembleKind::GramPsdBlock,
        EnsembleKind::UnitDisc,
    ];

    pub fn name(self) -> &'static str {
        match self {
            EnsembleKind::IntegerComplex => "integer-complex",
            EnsembleKind::IntegerReal => "integer-real",
            EnsembleKind::GaussianComplex => "gaussian-complex",
            EnsembleKind::GramPsdBlock => "gram-psd-block",
            EnsembleKind::UnitDisc => "unit-disc",
        }
    }
}

impl fmt::Display for EnsembleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for EnsembleKind {
    type Err = LinalgError;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| LinalgError::InvalidSpec(format!("unknown ensemble kind `{s}`")))
    }
}

/// A reproducible family of `count` square matrices.
///
/// Trial `k` draws everything from its own stream, so the `k`-th matrix does not depend
/// on how many other trials are generated or in which order. With `vary_dim` the size
/// of trial `k` is drawn uniformly from `1..=dim`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnsembleSpec {
    pub kind: EnsembleKind,
    pub dim: usize,
    pub count: usize,
    pub seed: u64,
    pub int_range: (i64, i64),
    #[serde(default)]
    pub vary_dim: bool,
}

impl EnsembleSpec {
    pub fn new(kind: EnsembleKind, dim: usize, count: usize, seed: u64) -> Self {
        Self {
            kind,
            dim,
            count,
            seed,
            int_range: (0, 10),
            vary_dim: false,
        }
    }

    pub fn with_vary_dim(mut self, vary: bool) -> Self {
        self.vary_dim = vary;
        self
    }

    pub fn with_int_range(mut self, lo: i64, hi: i64) -> Self {
        self.int_range = (lo, hi);
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.count == 0 {
            return Err(LinalgError::InvalidSpec("count must be at least 1".into()));
        }
        if self.dim == 0 {
            return Err(LinalgError::InvalidSpec("dim must be at least 1".into()));
        }
        let (lo, hi) = self.int_range;
        if lo > hi {
            return Err(LinalgError::InvalidSpec(format!("empty integer range [{lo}, {hi}]")));
        }
        Ok(())
    }

    /// The stream owned by trial `index`.
    pub fn trial_rng(&self, index: usize) -> StreamRng {
        random::stream(self.seed, index as u64)
    }

    /// Size of trial `index`, drawn from its stream when `vary_dim` is set.
    pub fn trial_dim(&self, rng: &mut StreamRng) -> usize {
        if self.vary_dim {
            rng.random_range(1..=self.dim)
        } else {
            self.dim
        }
    }

    /// One `rows x cols` sample of this ensemble's distribution.
    pub fn sample<R: Rng + ?Sized>(&self, rows: usize, cols: usize, rng: &mut R) -> ComplexMatrix {
        let (lo, hi) = self.int_range;
        match self.kind {
            EnsembleKind::IntegerComplex => ComplexMatrix::from_fn(rows, cols, |_, _| {
                let re = rng.random_range(lo..=hi) as f64;
                let im = rng.random_range(lo..=hi) as f64;
                C64::new(re, im)
            }),
            EnsembleKind::IntegerReal => {
                ComplexMatrix::from_fn(rows, cols, |_, _| C64::new(rng.random_range(lo..=hi) as f64, 0.0))
            }
            EnsembleKind::GaussianComplex => random::gaussian_matrix(rows, cols, rng),
            EnsembleKind::GramPsdBlock => {
                let g = random::gaussian_matrix(rows.max(cols), cols, rng);
                (&g.adjoint() * &g).symmetrized().submatrix(0, 0, rows.min(cols), cols)
            }
            EnsembleKind::UnitDisc => random::unit_disc_matrix(rows, cols, rng),
        }
    }

    /// Trial `index`: its matrix together with the stream positioned after the draw, for
    /// any auxiliary samples the trial needs.
    pub fn trial(&self, index: usize) -> (ComplexMatrix, StreamRng) {
        let mut rng = self.trial_rng(index);
        let n = self.trial_dim(&mut rng);
        let t = self.sample(n, n, &mut rng);
        (t, rng)
    }

    pub fn generate(&self) -> Result<Vec<ComplexMatrix>> {
        self.validate()?;
        Ok((0..self.count).map(|k| self.trial(k).0).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_for_fixed_seed() {
        let spec = EnsembleSpec::new(EnsembleKind::IntegerComplex, 2, 1, 42);
        assert_eq!(spec.generate().unwrap(), spec.generate().unwrap());
        let other = EnsembleSpec::new(EnsembleKind::IntegerComplex, 2, 1, 43);
        assert_ne!(spec.generate().unwrap(), other.generate().unwrap());
    }

    #[test]
    fn trials_are_order_independent() {
        let spec = EnsembleSpec::new(EnsembleKind::GaussianComplex, 3, 5, 7).with_vary_dim(true);
        let all = spec.generate().unwrap();
        assert_eq!(spec.trial(3).0, all[3]);
    }

    #[test]
    fn degenerate_integer_range_gives_zero() {
        let spec = EnsembleSpec::new(EnsembleKind::IntegerComplex, 3, 2, 1).with_int_range(0, 0);
        for m in spec.generate().unwrap() {
            assert_eq!(m.max_abs(), 0.0);
        }
    }

    #[test]
    fn integer_entries_have_mean_five() {
        let spec = EnsembleSpec::new(EnsembleKind::IntegerComplex, 2, 1000, 9);
        let mut sum = C64::new(0.0, 0.0);
        for m in spec.generate().unwrap() {
            for z in m.as_slice() {
                assert_eq!(z.re.fract(), 0.0);
                assert!((0.0..=10.0).contains(&z.re) && (0.0..=10.0).contains(&z.im));
                sum += z;
            }
        }
        let mean = sum / 4000.0;
        assert!((mean.re - 5.0).abs() < 0.3 && (mean.im - 5.0).abs() < 0.3, "{mean}");
    }

    #[test]
    fn gram_kind_is_psd() {
        let spec = EnsembleSpec::new(EnsembleKind::GramPsdBlock, 4, 3, 2);
        for m in spec.generate().unwrap() {
            assert!(crate::linalg::funcs::min_eigenvalue(&m).unwrap() > -1e-12);
        }
    }

    #[test]
    fn invalid_specs() {
        let base = EnsembleSpec::new(EnsembleKind::UnitDisc, 2, 1, 0);
        let mut s = base.clone();
        s.count = 0;
        assert!(matches!(s.generate(), Err(LinalgError::InvalidSpec(_))));
        let mut s = base.clone();
        s.dim = 0;
        assert!(s.validate().is_err());
        assert!(base.with_int_range(3, 1).validate().is_err());
        assert!("integer-complex".parse::<EnsembleKind>().is_ok());
        assert!("cauchy".parse::<EnsembleKind>().is_err());
    }
}
