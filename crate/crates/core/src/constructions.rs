//! A recurrence sequence built from finite IP blocks that is not piecewise
//! syndetic.
//!
//! Block `i` is `origin_i + t_i + FS(generators_i)`, where `FS` is the set of
//! finite subset sums. The first origin is 0 and each later origin is the
//! largest element of the previous block, so blocks never interleave:
//! `max(block_i) < min(block_{i+1})`.
//!
//! Default generators are arithmetic: block `i` uses `s_i·{1, …, i+1}` where
//! `s_i` is the `i`-th prime at or above `base`. Every block is then a run of
//! consecutive multiples of `s_i`, so all gaps are at least `base`, and once
//! `i(i+1)/2 ≥ m` a block meets every residue class modulo any `m` coprime
//! to `s_i`.

use std::ops::RangeInclusive;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::intsets::{finite_ip, piecewise_syndetic_certificate, IpError, Window, WindowError};
use crate::permpoly::is_prime;
use crate::recurrence::{r_sequence_cyclic, shift_order, RecurrenceError};
use crate::verdict::{Status, Verdict};

pub const DEFAULT_BASE: u64 = 23;
pub const DEFAULT_BLOCKS: usize = 30;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("invalid schedule: {0}")]
    Schedule(String),
    #[error(transparent)]
    Ip(#[from] IpError),
    #[error("block {0} overflows u64")]
    Overflow(usize),
}

/// `1, 2, 1, 2, 3, 1, 2, 3, 4, …`: every natural appears infinitely often.
pub fn default_shifts(count: usize) -> Vec<u64> {
    (2u64..).flat_map(|top| 1..=top).take(count).collect()
}

/// Shift values and generators for each block.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IPBlockSchedule {
    t: Vec<u64>,
    generators: Vec<Vec<u64>>,
}

impl IPBlockSchedule {
    pub fn default_with_blocks(block_count: usize) -> Result<Self, ConstructionError> {
        let k: Vec<usize> = (2..block_count + 2).collect();
        Self::from_counts(default_shifts(block_count), &k, DEFAULT_BASE)
    }

    /// Arithmetic generators `s_i·{1, …, k_i}` with `s_i` the `i`-th prime
    /// at or above `base`.
    pub fn from_counts(t: Vec<u64>, k: &[usize], base: u64) -> Result<Self, ConstructionError> {
        if t.len() != k.len() {
            return Err(ConstructionError::Schedule(format!(
                "{} shift values for {} generator counts",
                t.len(),
                k.len()
            )));
        }
        let mut step = base.max(2);
        let mut generators = Vec::with_capacity(k.len());
        for &count in k {
            while !is_prime(step) {
                step += 1;
            }
            let block = (1..=count as u64)
                .map(|j| step.checked_mul(j))
                .collect::<Option<Vec<u64>>>()
                .ok_or(ConstructionError::Overflow(generators.len() + 1))?;
            generators.push(block);
            step += 1;
        }
        Self::explicit(t, generators)
    }

    pub fn explicit(t: Vec<u64>, generators: Vec<Vec<u64>>) -> Result<Self, ConstructionError> {
        if t.is_empty() {
            return Err(ConstructionError::Schedule(
                "at least one block is required".into(),
            ));
        }
        if t.len() != generators.len() {
            return Err(ConstructionError::Schedule(format!(
                "{} shift values for {} generator lists",
                t.len(),
                generators.len()
            )));
        }
        for (i, pair) in generators.windows(2).enumerate() {
            if pair[1].len() <= pair[0].len() {
                return Err(ConstructionError::Schedule(format!(
                    "generator counts must strictly increase; block {} has {} after {}",
                    i + 2,
                    pair[1].len(),
                    pair[0].len()
                )));
            }
        }
        if generators[0].is_empty() {
            return Err(ConstructionError::Schedule(
                "block 1 has no generators".into(),
            ));
        }
        Ok(IPBlockSchedule { t, generators })
    }

    pub fn block_count(&self) -> usize {
        self.t.len()
    }

    pub fn shifts(&self) -> &[u64] {
        &self.t
    }

    pub fn generators(&self) -> &[Vec<u64>] {
        &self.generators
    }

    /// Values in `1..=max_shift` that never occur as a block shift.
    pub fn missing_shifts(&self, max_shift: u64) -> Vec<u64> {
        (1..=max_shift).filter(|v| !self.t.contains(v)).collect()
    }
}

/// JSON form accepted by the command line: `{"t": [...], "k": [...],
/// "base": ...}` or `{"t": [...], "generators": [[...], ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScheduleSpec {
    pub t: Vec<u64>,
    #[serde(default)]
    pub k: Option<Vec<usize>>,
    #[serde(default)]
    pub base: Option<u64>,
    #[serde(default)]
    pub generators: Option<Vec<Vec<u64>>>,
}

impl ScheduleSpec {
    pub fn from_json(text: &str) -> Result<Self, ConstructionError> {
        serde_json::from_str(text).map_err(|e| ConstructionError::Schedule(e.to_string()))
    }

    pub fn into_schedule(self) -> Result<IPBlockSchedule, ConstructionError> {
        match (self.k, self.generators) {
            (Some(_), Some(_)) => Err(ConstructionError::Schedule(
                "give either `k` or `generators`, not both".into(),
            )),
            (None, Some(generators)) => IPBlockSchedule::explicit(self.t, generators),
            (Some(k), None) => {
                IPBlockSchedule::from_counts(self.t, &k, self.base.unwrap_or(DEFAULT_BASE))
            }
            (None, None) => {
                let k: Vec<usize> = (2..self.t.len() + 2).collect();
                IPBlockSchedule::from_counts(self.t, &k, self.base.unwrap_or(DEFAULT_BASE))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockRecord {
    /// 1-based.
    pub index: usize,
    pub t: u64,
    pub origin: u64,
    pub generators: Vec<u64>,
    pub min: u64,
    pub max: u64,
}

impl BlockRecord {
    pub fn offset(&self) -> u64 {
        self.origin + self.t
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExampleSequence {
    pub window: Window,
    pub blocks: Vec<BlockRecord>,
}

impl ExampleSequence {
    /// `max(block_i) < min(block_{i+1})` for every consecutive pair.
    pub fn spacing_law_holds(&self) -> bool {
        self.blocks.windows(2).all(|b| b[0].max < b[1].min)
    }

    /// Each block, cut out of the window by its recorded range, equals
    /// `FS(generators) + offset`.
    pub fn blocks_match_subset_sums(&self) -> bool {
        self.blocks.iter().all(|b| {
            let Ok(fs) = finite_ip(&b.generators) else {
                return false;
            };
            let expected: Vec<u64> = fs.iter().map(|x| x + b.offset()).collect();
            self.window.restrict(b.min, b.max).elements() == expected.as_slice()
        })
    }
}

pub fn build_example_sequence(
    schedule: &IPBlockSchedule,
) -> Result<ExampleSequence, ConstructionError> {
    let mut elements = Vec::new();
    let mut blocks = Vec::with_capacity(schedule.block_count());
    let mut origin = 0u64;
    for (i, (&t, generators)) in schedule.t.iter().zip(&schedule.generators).enumerate() {
        let index = i + 1;
        let fs = finite_ip(generators)?;
        let offset = origin
            .checked_add(t)
            .ok_or(ConstructionError::Overflow(index))?;
        let first = elements.len();
        for x in fs.iter() {
            elements.push(
                x.checked_add(offset)
                    .ok_or(ConstructionError::Overflow(index))?,
            );
        }
        let (min, max) = (elements[first], *elements.last().expect("FS is non-empty"));
        if let Some(prev) = blocks.last().map(|b: &BlockRecord| b.max) {
            if min <= prev {
                return Err(ConstructionError::Schedule(format!(
                    "block {index} starts at {min}, not after block {i} ending at {prev}"
                )));
            }
        }
        blocks.push(BlockRecord {
            index,
            t,
            origin,
            generators: generators.clone(),
            min,
            max,
        });
        origin = max;
    }
    let horizon = *elements.last().expect("at least one block");
    let window = Window::new(elements, horizon).expect("blocks are ascending and disjoint");
    Ok(ExampleSequence { window, blocks })
}

/// Holds when no interval of `block_length` is `gap_bound`-syndetic, i.e.
/// the window shows no sign of piecewise syndeticity at these parameters.
pub fn verify_not_pws(
    a: &Window,
    gap_bound: u64,
    block_length: u64,
) -> Result<Verdict, WindowError> {
    let cert = piecewise_syndetic_certificate(a, gap_bound, block_length)?;
    Ok(match cert.status {
        Status::Holds => Verdict {
            status: Status::Fails,
            ..cert
        },
        Status::Fails => Verdict {
            status: Status::Holds,
            ..cert
        },
        Status::Inconclusive => cert,
    })
}

/// Every shift `a + n`, `n` in `shifts`, meets every residue class modulo
/// every `m ≤ max_period`. Fails with `(m, r)` for the first failing shift
/// in [`shift_order`]; the shift is named in the note.
pub fn verify_shifted_recurrence(
    a: &Window,
    max_period: u64,
    shifts: RangeInclusive<i64>,
) -> Result<Verdict, RecurrenceError> {
    let order = shift_order(&shifts);
    if order.is_empty() {
        return Ok(Verdict::inconclusive("empty shift range"));
    }
    for n in order {
        let report = r_sequence_cyclic(&a.shifted(n), max_period)?;
        if report.verdict.is_fails() {
            let v = report.verdict;
            let note = format!("shift {n}: {}", v.note);
            return Ok(v.with_note(note));
        }
    }
    Ok(Verdict::holds(None).with_note(format!(
        "every shift in [{}, {}] meets every residue mod m <= {max_period}",
        shifts.start(),
        shifts.end()
    )))
}

/// Least positive subset sum of the block generators divisible by `m`.
pub fn block_multiple_of(generators: &[u64], m: u64) -> Option<u64> {
    let fs = finite_ip(generators).ok()?;
    let found = fs.iter().find(|x| x % m == 0);
    found
}
