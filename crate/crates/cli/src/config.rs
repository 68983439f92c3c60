use std::collections::BTreeMap;
use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;

use serde::{Serialize, Serializer};

/// Seed for randomized sweeps when `--seed` is not given.
pub const DEFAULT_SEED: u64 = 0x5eed;

/// Inclusive shift range written `a..b`, e.g. `-6..6`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ShiftRange {
    pub lo: i64,
    pub hi: i64,
}

impl ShiftRange {
    pub fn range(&self) -> RangeInclusive<i64> {
        self.lo..=self.hi
    }
}

impl FromStr for ShiftRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (lo, hi) = s
            .split_once("..")
            .ok_or_else(|| format!("expected `a..b`, got `{s}`"))?;
        let hi = hi.strip_prefix('=').unwrap_or(hi);
        let lo: i64 = lo
            .trim()
            .parse()
            .map_err(|_| format!("bad lower shift `{lo}`"))?;
        let hi: i64 = hi
            .trim()
            .parse()
            .map_err(|_| format!("bad upper shift `{hi}`"))?;
        if lo > hi {
            return Err(format!("empty shift range {lo}..{hi}"));
        }
        Ok(ShiftRange { lo, hi })
    }
}

impl fmt::Display for ShiftRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.lo, self.hi)
    }
}

impl Serialize for ShiftRange {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        [self.lo, self.hi].serialize(s)
    }
}

/// Everything needed to replay a run; embedded in every report.
#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub subcommand: String,
    pub inputs: Vec<String>,
    pub horizon: Option<u64>,
    pub eps: Option<f64>,
    pub max_period: Option<u64>,
    pub shifts: Option<ShiftRange>,
    pub prime_cap: Option<u64>,
    pub out: Option<String>,
    pub seed: u64,
    /// Subcommand-specific settings.
    pub options: BTreeMap<String, serde_json::Value>,
}

impl RunConfig {
    pub fn new(subcommand: &str, seed: u64) -> Self {
        RunConfig {
            subcommand: subcommand.to_string(),
            inputs: Vec::new(),
            horizon: None,
            eps: None,
            max_period: None,
            shifts: None,
            prime_cap: None,
            out: None,
            seed,
            options: BTreeMap::new(),
        }
    }

    pub fn option(mut self, key: &str, value: impl Serialize) -> Self {
        self.options.insert(
            key.to_string(),
            serde_json::to_value(value).expect("plain values serialize"),
        );
        self
    }
}

/// Positive-value parsers for clap.
pub fn positive_u64(s: &str) -> Result<u64, String> {
    match s.parse::<u64>() {
        Ok(0) => Err("must be at least 1".into()),
        Ok(v) => Ok(v),
        Err(e) => Err(e.to_string()),
    }
}

pub fn positive_f64(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(v) if v > 0.0 && v.is_finite() => Ok(v),
        Ok(v) => Err(format!("{v} is not a positive finite number")),
        Err(e) => Err(e.to_string()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shift_ranges() {
        assert_eq!("-6..6".parse(), Ok(ShiftRange { lo: -6, hi: 6 }));
        assert_eq!("0..=3".parse(), Ok(ShiftRange { lo: 0, hi: 3 }));
        assert!("3..1".parse::<ShiftRange>().is_err());
        assert!("3".parse::<ShiftRange>().is_err());
    }

    #[test]
    fn positive_parsers() {
        assert!(positive_u64("0").is_err());
        assert_eq!(positive_u64("5"), Ok(5));
        assert!(positive_f64("-0.1").is_err());
        assert!(positive_f64("NaN").is_err());
    }
}
