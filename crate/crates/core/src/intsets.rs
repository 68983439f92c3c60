//! Finite-window combinatorics on subsets of the naturals.
//!
//! A [`Window`] is the only representation of a set used in this crate: the
//! strictly ascending elements observed in `[0, horizon]`. All classifiers
//! answer questions about the window, never about the infinite set it was
//! cut from.

use std::collections::BTreeSet;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::verdict::{Verdict, Witness};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WindowError {
    #[error("elements not strictly ascending: {prev} followed by {next}")]
    NotAscending { prev: u64, next: u64 },
    #[error("element {element} exceeds horizon {horizon}")]
    BeyondHorizon { element: u64, horizon: u64 },
    #[error("invalid parameter: {0}")]
    Parameter(String),
}

/// Strictly ascending naturals observed on `[0, horizon]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Window {
    elements: Vec<u64>,
    horizon: u64,
}

impl Window {
    pub fn new(elements: Vec<u64>, horizon: u64) -> Result<Self, WindowError> {
        for pair in elements.windows(2) {
            if pair[0] >= pair[1] {
                return Err(WindowError::NotAscending {
                    prev: pair[0],
                    next: pair[1],
                });
            }
        }
        if let Some(&last) = elements.last() {
            if last > horizon {
                return Err(WindowError::BeyondHorizon {
                    element: last,
                    horizon,
                });
            }
        }
        Ok(Window { elements, horizon })
    }

    pub fn empty(horizon: u64) -> Self {
        Window {
            elements: Vec::new(),
            horizon,
        }
    }

    /// Sorts and deduplicates; elements beyond the horizon are dropped.
    pub fn from_unsorted<I: IntoIterator<Item = u64>>(items: I, horizon: u64) -> Self {
        let set: BTreeSet<u64> = items.into_iter().filter(|&x| x <= horizon).collect();
        Window {
            elements: set.into_iter().collect(),
            horizon,
        }
    }

    /// `{n ∈ [0, horizon] : keep(n)}`.
    pub fn from_predicate(horizon: u64, mut keep: impl FnMut(u64) -> bool) -> Self {
        Window {
            elements: (0..=horizon).filter(|&n| keep(n)).collect(),
            horizon,
        }
    }

    /// `[lo, hi]` observed on `[0, horizon]`.
    pub fn interval(lo: u64, hi: u64, horizon: u64) -> Self {
        let hi = hi.min(horizon);
        let elements = if lo > hi {
            Vec::new()
        } else {
            (lo..=hi).collect()
        };
        Window { elements, horizon }
    }

    pub fn elements(&self) -> &[u64] {
        &self.elements
    }

    pub fn horizon(&self) -> u64 {
        self.horizon
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, n: u64) -> bool {
        self.elements.binary_search(&n).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        self.elements.iter().copied()
    }

    /// `(w + shift) ∩ [0, horizon]`. Elements pushed below 0 or past the
    /// horizon are dropped.
    pub fn shifted(&self, shift: i64) -> Window {
        let horizon = self.horizon as i128;
        let elements = self
            .elements
            .iter()
            .map(|&x| x as i128 + shift as i128)
            .filter(|&x| x >= 0 && x <= horizon)
            .map(|x| x as u64)
            .collect();
        Window {
            elements,
            horizon: self.horizon,
        }
    }

    /// Keeps the elements inside `[lo, hi]`; the horizon is unchanged.
    pub fn restrict(&self, lo: u64, hi: u64) -> Window {
        let start = self.elements.partition_point(|&x| x < lo);
        let end = self.elements.partition_point(|&x| x <= hi);
        Window {
            elements: self.elements[start..end.max(start)].to_vec(),
            horizon: self.horizon,
        }
    }

    /// Re-observes the window with a different horizon, dropping elements
    /// beyond it.
    pub fn with_horizon(&self, horizon: u64) -> Window {
        let end = self.elements.partition_point(|&x| x <= horizon);
        Window {
            elements: self.elements[..end].to_vec(),
            horizon,
        }
    }

    pub fn is_subset_of(&self, other: &Window) -> bool {
        self.elements.iter().all(|&x| other.contains(x))
    }

    /// Maximal empty runs as `(start, length)`, including the stretch before
    /// the first element and the one after the last.
    pub fn empty_runs(&self) -> Vec<(u64, u64)> {
        let mut runs = Vec::new();
        let mut next = 0u64;
        for &x in &self.elements {
            if x > next {
                runs.push((next, x - next));
            }
            next = x + 1;
        }
        if next <= self.horizon {
            runs.push((next, self.horizon - next + 1));
        }
        runs
    }
}

/// Every interval of `gap_bound` consecutive integers in `[0, horizon]`
/// meets the window. Fails with the left end of the first empty interval.
pub fn is_syndetic(w: &Window, gap_bound: u64) -> Result<Verdict, WindowError> {
    if gap_bound == 0 {
        return Err(WindowError::Parameter(
            "gap_bound must be at least 1".into(),
        ));
    }
    for (start, len) in w.empty_runs() {
        if len >= gap_bound {
            return Ok(Verdict::fails(Witness::Nat(start)).with_note(format!(
                "[{start}, {}] contains no element",
                start + gap_bound - 1
            )));
        }
    }
    Ok(Verdict::holds(None).with_note(format!(
        "every {gap_bound}-interval of [0, {}] meets the window",
        w.horizon
    )))
}

/// The window contains `run_length` consecutive integers. Holds with the
/// start of the first such run; fails with `(start, length)` of the longest
/// run seen.
pub fn is_thick(w: &Window, run_length: u64) -> Result<Verdict, WindowError> {
    if run_length == 0 {
        return Err(WindowError::Parameter(
            "run_length must be at least 1".into(),
        ));
    }
    let mut best = (0u64, 0u64);
    let mut i = 0;
    let xs = w.elements();
    while i < xs.len() {
        let start = xs[i];
        let mut j = i;
        while j + 1 < xs.len() && xs[j + 1] == xs[j] + 1 {
            j += 1;
        }
        let len = (j - i + 1) as u64;
        if len >= run_length {
            return Ok(Verdict::holds(Some(Witness::Nat(start))));
        }
        if len > best.1 {
            best = (start, len);
        }
        i = j + 1;
    }
    Ok(Verdict::fails(Witness::Pair(best.0, best.1))
        .with_note(format!("longest run has length {}", best.1)))
}

/// Searches for an interval `I` of length `block_length` inside
/// `[0, horizon]` on which the window is `gap_bound`-syndetic, i.e. `I`
/// contains no `gap_bound` consecutive non-elements.
///
/// Holds with the leftmost such start. Fails with `(start, length)` of the
/// longest admissible stretch, which is shorter than `block_length`.
pub fn piecewise_syndetic_certificate(
    w: &Window,
    gap_bound: u64,
    block_length: u64,
) -> Result<Verdict, WindowError> {
    if gap_bound == 0 {
        return Err(WindowError::Parameter(
            "gap_bound must be at least 1".into(),
        ));
    }
    if block_length < gap_bound {
        return Err(WindowError::Parameter(format!(
            "block_length {block_length} is smaller than gap_bound {gap_bound}"
        )));
    }
    // An admissible interval may overlap a long empty run in at most
    // gap_bound - 1 points, so admissible stretches sit between consecutive
    // long runs, extended gap_bound - 1 points into each of them.
    let g = gap_bound as i128;
    let horizon = w.horizon() as i128;
    let mut lo: i128 = 0;
    let mut best = (0i128, -1i128);
    let mut stretches = Vec::new();
    for (start, len) in w.empty_runs() {
        if len < gap_bound {
            continue;
        }
        let run_lo = start as i128;
        let run_hi = run_lo + len as i128 - 1;
        let hi = (run_lo + g - 2).min(horizon);
        stretches.push((lo, hi));
        lo = (run_hi - g + 2).max(0);
    }
    stretches.push((lo, horizon));

    for (lo, hi) in stretches {
        let len = hi - lo + 1;
        if len >= block_length as i128 {
            return Ok(
                Verdict::holds(Some(Witness::Nat(lo as u64))).with_note(format!(
                    "[{lo}, {}] is {gap_bound}-syndetic",
                    lo + block_length as i128 - 1
                )),
            );
        }
        if len > best.1 - best.0 + 1 {
            best = (lo, hi);
        }
    }
    let best_len = (best.1 - best.0 + 1).max(0) as u64;
    Ok(Verdict::fails(Witness::Pair(best.0.max(0) as u64, best_len)).with_note(format!(
        "no interval of length {block_length} is {gap_bound}-syndetic; longest admissible stretch has length {best_len}"
    )))
}

/// Positive differences `{s - s' : s > s'}`; 0 is excluded. The horizon is
/// kept.
pub fn difference_set(w: &Window) -> Window {
    let n = w.len() as u128;
    let words = w.horizon() as u128 / 64 + 1;
    if n * n / 2 <= n * words {
        difference_set_pairwise(w)
    } else {
        difference_set_bitset(w)
    }
}

fn difference_set_pairwise(w: &Window) -> Window {
    let xs = w.elements();
    let mut diffs = Vec::with_capacity(xs.len() * xs.len().saturating_sub(1) / 2);
    for (i, &hi) in xs.iter().enumerate() {
        for &lo in &xs[..i] {
            diffs.push(hi - lo);
        }
    }
    diffs.sort_unstable();
    diffs.dedup();
    Window {
        elements: diffs,
        horizon: w.horizon(),
    }
}

fn difference_set_bitset(w: &Window) -> Window {
    let nbits = w.horizon() as usize + 1;
    let nwords = nbits.div_ceil(64);
    let mut set = vec![0u64; nwords];
    for &x in w.elements() {
        set[x as usize / 64] |= 1 << (x % 64);
    }
    let mut diff = vec![0u64; nwords];
    for &s in w.elements() {
        // diff |= set >> s
        let word_shift = s as usize / 64;
        let bit_shift = s % 64;
        for i in 0..nwords - word_shift {
            let lo = set[i + word_shift] >> bit_shift;
            let hi = if bit_shift > 0 && i + word_shift + 1 < nwords {
                set[i + word_shift + 1] << (64 - bit_shift)
            } else {
                0
            };
            diff[i] |= lo | hi;
        }
    }
    diff[0] &= !1;
    let mut elements = Vec::new();
    for (i, &word) in diff.iter().enumerate() {
        let mut word = word;
        while word != 0 {
            let bit = word.trailing_zeros() as u64;
            elements.push(i as u64 * 64 + bit);
            word &= word - 1;
        }
    }
    Window {
        elements,
        horizon: w.horizon(),
    }
}

/// Looks for `x ∈ a ∩ (shift + d)`. Holds with the least such `x`; fails
/// with `min(a.horizon, d.horizon)` to record how far the search went.
pub fn shifted_hit(a: &Window, d: &Window, shift: i64) -> Verdict {
    let hit = a.iter().find(|&x| {
        let y = x as i128 - shift as i128;
        y >= 0 && y <= d.horizon() as i128 && d.contains(y as u64)
    });
    match hit {
        Some(x) => Verdict::holds(Some(Witness::Nat(x))),
        None => Verdict::fails(Witness::Nat(a.horizon().min(d.horizon())))
            .with_note(format!("a ∩ ({shift} + d) is empty on the window")),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IpError {
    #[error("generator list is empty")]
    NoGenerators,
    #[error("generators must be at least 1")]
    ZeroGenerator,
    #[error("sum of generators overflows u64")]
    Overflow,
}

/// All sums of nonempty sub-multisets of `generators`, sorted and
/// deduplicated. The horizon is the total sum.
pub fn finite_ip(generators: &[u64]) -> Result<Window, IpError> {
    if generators.is_empty() {
        return Err(IpError::NoGenerators);
    }
    if generators.contains(&0) {
        return Err(IpError::ZeroGenerator);
    }
    let total = generators
        .iter()
        .try_fold(0u64, |acc, &g| acc.checked_add(g))
        .ok_or(IpError::Overflow)?;

    // Dense table when it stays small, otherwise merge sorted sum lists.
    if total <= 1 << 24 {
        let mut reach = vec![false; total as usize + 1];
        reach[0] = true;
        let mut top = 0usize;
        for &g in generators {
            let g = g as usize;
            for s in (0..=top).rev() {
                if reach[s] {
                    reach[s + g] = true;
                }
            }
            top += g;
        }
        let elements = (1..=total).filter(|&s| reach[s as usize]).collect();
        return Ok(Window {
            elements,
            horizon: total,
        });
    }
    let mut sums: BTreeSet<u64> = BTreeSet::new();
    for &g in generators {
        let shifted: Vec<u64> = sums.iter().map(|&s| s + g).collect();
        sums.insert(g);
        sums.extend(shifted);
    }
    Ok(Window {
        elements: sums.into_iter().collect(),
        horizon: total,
    })
}

/// `max |w ∩ I| / interval_length` over intervals `I ⊆ [0, horizon]` of the
/// given length.
pub fn banach_density_estimate(
    w: &Window,
    interval_length: u64,
) -> Result<Ratio<u64>, WindowError> {
    if interval_length == 0 || interval_length > w.horizon() {
        return Err(WindowError::Parameter(format!(
            "interval_length must lie in [1, {}]",
            w.horizon()
        )));
    }
    let xs = w.elements();
    let last_start = w.horizon() + 1 - interval_length;
    let mut best = 0usize;
    // An optimal interval can always be slid right until it starts at an
    // element, unless it would leave [0, horizon].
    for (i, &x) in xs.iter().enumerate() {
        let start = x.min(last_start);
        let end = start + interval_length - 1;
        let lo = if start == x {
            i
        } else {
            xs.partition_point(|&y| y < start)
        };
        let hi = xs.partition_point(|&y| y <= end);
        best = best.max(hi - lo);
    }
    Ok(Ratio::new(best as u64, interval_length))
}
