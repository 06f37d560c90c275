//! Resource caps for exhaustive enumeration.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Limits that keep exhaustive sweeps within seconds-to-minutes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct Caps {
    /// Largest ring whose axioms are checked triple by triple.
    pub axiom: usize,
    /// Largest ring that is built into tables and analyzed.
    pub analysis: usize,
    /// Largest |M2(R;s)| that may be enumerated.
    pub enumeration: u64,
    /// Largest base ring for which unit-list similarity search runs.
    pub similarity: usize,
    /// Largest number of (matrix, matrix) pairs swept exhaustively; above
    /// this, pair checks are sampled.
    pub pairs: u64,
    /// Largest lifted matrix ring swept exhaustively by the power-series checks.
    pub lift_exhaustive: u64,
    pub sample_size: usize,
    pub seed: u64,
    pub series_precision: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            axiom: 256,
            analysis: 4096,
            enumeration: 1 << 20,
            similarity: 16,
            pairs: 1 << 26,
            lift_exhaustive: 4096,
            sample_size: 2000,
            seed: 0,
            series_precision: 3,
        }
    }
}

impl Caps {
    /// Applies overrides of the form `key=value,key=value`.
    ///
    /// Keys: `axiom`, `analysis`, `enumeration`, `similarity`, `pairs`,
    /// `lift`, `sample`, `seed`, `precision`.
    pub fn with_overrides(mut self, overrides: &str) -> Result<Self> {
        for item in overrides
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
        {
            let (key, value) = item
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("cap override {item:?} is not key=value")))?;
            let value: u64 = value.trim().parse().map_err(|_| {
                Error::Parse(format!("cap {key:?} has non-integer value {value:?}"))
            })?;
            match key.trim() {
                "axiom" => self.axiom = value as usize,
                "analysis" => self.analysis = value as usize,
                "enumeration" => self.enumeration = value,
                "similarity" => self.similarity = value as usize,
                "pairs" => self.pairs = value,
                "lift" => self.lift_exhaustive = value,
                "sample" => self.sample_size = value as usize,
                "seed" => self.seed = value,
                "precision" => self.series_precision = value as usize,
                other => return Err(Error::Parse(format!("unknown cap {other:?}"))),
            }
        }
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("axiom", self.axiom as u64),
            ("analysis", self.analysis as u64),
            ("enumeration", self.enumeration),
            ("similarity", self.similarity as u64),
            ("pairs", self.pairs),
            ("lift", self.lift_exhaustive),
            ("sample", self.sample_size as u64),
            ("precision", self.series_precision as u64),
        ];
        for (name, v) in positive {
            if v == 0 {
                return Err(Error::Parse(format!("cap {name} must be positive")));
            }
        }
        Ok(())
    }
}
