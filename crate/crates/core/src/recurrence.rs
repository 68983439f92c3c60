//! Window-bounded recurrence and R-sequence tests.
//!
//! Every finite minimal system is a single cycle, so "all minimal systems
//! with at most `M` points" is exactly the family `Z/m`, `m ≤ M`. On that
//! family density of `{T^n x : n ∈ A}` is residue coverage of `A mod m`, and
//! the tests here are exact. On rotations and the skew product the tests are
//! numeric: density is checked against an ε-grid cover and every verdict is
//! guarded by the floating-point error budget of the closed-form orbits.

use std::collections::HashMap;
use std::ops::RangeInclusive;

use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::intsets::{difference_set, shifted_hit, Window, WindowError};
use crate::systems::{
    empty_cells, eps_dense, frac_mul, wrap, Angle, RotationSystem, State, System, SystemError,
};
use crate::verdict::{Status, Verdict, Witness};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RecurrenceError {
    #[error(transparent)]
    System(#[from] SystemError),
    #[error(transparent)]
    Window(#[from] WindowError),
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error("residue {residue} mod {modulus} is never hit")]
    ResidueMissing { modulus: u64, residue: u64 },
    #[error("frequency 0 gives the constant function; its average is trivially 1")]
    ZeroFrequency,
}

/// `N(x, U) ∩ [1, horizon]` together with the cell and start it was
/// computed from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReturnTimesResult {
    pub times: Window,
    pub cell: u64,
    pub start: State,
}

pub fn return_times(
    sys: &System,
    start: &State,
    cover: &crate::systems::GridCover,
    cell: u64,
    horizon: u64,
) -> Result<ReturnTimesResult, RecurrenceError> {
    if horizon == 0 {
        return Err(RecurrenceError::Parameter(
            "horizon must be at least 1".into(),
        ));
    }
    sys.check_cover(cover)?;
    if cover.cell_count().is_some_and(|c| cell >= c) {
        return Err(RecurrenceError::Parameter(format!(
            "cell {cell} is not in the cover"
        )));
    }
    let mut times = Vec::new();
    for n in 1..=horizon {
        let state = sys.iterate(start, n)?;
        if sys.cell_of(cover, &state)? == cell {
            times.push(n);
        }
    }
    Ok(ReturnTimesResult {
        times: Window::new(times, horizon)?,
        cell,
        start: start.clone(),
    })
}

/// Per-system line of an [`RSequenceReport`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SystemEntry {
    pub system: String,
    pub verdict: Verdict,
    /// Number of residues (cyclic) or cells (metric) that were hit.
    pub covered: u64,
    /// Total number of residues or cells.
    pub cells: u64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub start: Option<State>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RSequenceReport {
    pub family: String,
    pub verdict: Verdict,
    pub per_system: Vec<SystemEntry>,
}

fn residue_coverage(a: &Window, m: u64) -> Vec<bool> {
    let mut hit = vec![false; m as usize];
    let mut missing = m;
    for x in a.iter() {
        let r = (x % m) as usize;
        if !hit[r] {
            hit[r] = true;
            missing -= 1;
            if missing == 0 {
                break;
            }
        }
    }
    hit
}

/// Exact R-sequence test on the cyclic family `Z/m`, `m ≤ max_period`:
/// holds iff `A mod m` covers every residue for every such `m`. Fails with
/// `(m, residue)` for the least `m` and least missing residue.
pub fn r_sequence_cyclic(a: &Window, max_period: u64) -> Result<RSequenceReport, RecurrenceError> {
    if max_period == 0 {
        return Err(RecurrenceError::Parameter(
            "max_period must be at least 1".into(),
        ));
    }
    let mut per_system = Vec::with_capacity(max_period as usize);
    let mut first_failure = None;
    for m in 1..=max_period {
        let hit = residue_coverage(a, m);
        let covered = hit.iter().filter(|h| **h).count() as u64;
        let verdict = match hit.iter().position(|h| !*h) {
            None => Verdict::holds(None),
            Some(r) => {
                let r = r as u64;
                first_failure.get_or_insert((m, r));
                Verdict::fails(Witness::Pair(m, r))
                    .with_note(format!("{} of {m} residues hit", covered))
            }
        };
        per_system.push(SystemEntry {
            system: format!("cyclic:{m}"),
            verdict,
            covered,
            cells: m,
            start: None,
        });
    }
    let scope = format!("on window [0, {}] with {} elements", a.horizon(), a.len());
    let verdict = match first_failure {
        None => Verdict::holds(None)
            .with_note(format!("every residue mod m ≤ {max_period} is hit {scope}")),
        Some((m, r)) => Verdict::fails(Witness::Pair(m, r))
            .with_note(format!("residue {r} mod {m} is never hit {scope}")),
    };
    Ok(RSequenceReport {
        family: format!("cyclic:<={max_period}"),
        verdict,
        per_system,
    })
}

fn budget_verdict(sys: &System, a: &Window, eps: f64) -> Option<Verdict> {
    let max_time = a.iter().last().unwrap_or(0);
    let err = sys.float_error(max_time);
    (err > eps / 10.0).then(|| {
        Verdict::inconclusive(format!(
            "floating-point error {err:.3e} at time {max_time} exceeds ε/10 = {:.3e}",
            eps / 10.0
        ))
    })
}

fn check_eps(eps: f64, start_resolution: f64) -> Result<(), RecurrenceError> {
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(RecurrenceError::Parameter(format!(
            "ε = {eps} must be positive"
        )));
    }
    if !(start_resolution > 0.0 && start_resolution.is_finite()) {
        return Err(RecurrenceError::Parameter(format!(
            "start grid resolution {start_resolution} must be positive"
        )));
    }
    Ok(())
}

/// Numeric R-sequence test on one system: searches the start grid in
/// lexicographic order for a point whose orbit along `a` visits every cell
/// of the ε-cover.
pub fn r_sequence_metric(
    a: &Window,
    sys: &System,
    eps: f64,
    start_resolution: f64,
) -> Result<RSequenceReport, RecurrenceError> {
    check_eps(eps, start_resolution)?;
    let family = format!("{sys} eps={eps}");
    let scope = format!(
        "window [0, {}] with {} elements, ε = {eps}",
        a.horizon(),
        a.len()
    );
    let cover = sys.cover(eps)?;
    let cells = cover.cell_count().unwrap_or(u64::MAX);
    if let Some(v) = budget_verdict(sys, a, eps) {
        let note = format!("{}; {scope}", v.note);
        let v = v.with_note(note);
        return Ok(RSequenceReport {
            family,
            verdict: v.clone(),
            per_system: vec![SystemEntry {
                system: sys.to_string(),
                verdict: v,
                covered: 0,
                cells,
                start: None,
            }],
        });
    }
    let starts = sys.start_grid(start_resolution)?;
    let mut best: Option<(usize, u64, u64)> = None;
    for (idx, start) in starts.iter().enumerate() {
        let orbit = sys.orbit_along(start, a)?;
        let (empty, first_empty) = empty_cells(sys, &orbit, &cover)?;
        match first_empty {
            None => {
                let verdict = Verdict::holds(Some(Witness::Nat(idx as u64)))
                    .with_note(format!("orbit of start {start} is ε-dense; {scope}"));
                return Ok(RSequenceReport {
                    family,
                    verdict: verdict.clone(),
                    per_system: vec![SystemEntry {
                        system: sys.to_string(),
                        verdict,
                        covered: cells,
                        cells,
                        start: Some(start.clone()),
                    }],
                });
            }
            Some(cell) => {
                if best.is_none_or(|(_, e, _)| empty < e) {
                    best = Some((idx, empty, cell));
                }
            }
        }
    }
    let (idx, empty, cell) =
        best.ok_or_else(|| RecurrenceError::Parameter("start grid is empty".into()))?;
    let verdict = Verdict::fails(Witness::Pair(idx as u64, cell)).with_note(format!(
        "best start {} leaves {empty} of {cells} cells empty (first: {cell}); {scope}",
        starts[idx]
    ));
    Ok(RSequenceReport {
        family,
        verdict: verdict.clone(),
        per_system: vec![SystemEntry {
            system: sys.to_string(),
            verdict,
            covered: cells - empty,
            cells,
            start: Some(starts[idx].clone()),
        }],
    })
}

/// Holds iff some grid start `x` has a positive `n ∈ a` with
/// `d(T^n x, x) < eps`; the witness is `(start index, n)`. On failure the
/// witness is the closest approach found.
pub fn birkhoff_window_test(
    a: &Window,
    sys: &System,
    eps: f64,
    start_resolution: f64,
) -> Result<Verdict, RecurrenceError> {
    check_eps(eps, start_resolution)?;
    if let Some(v) = budget_verdict(sys, a, eps) {
        return Ok(v);
    }
    let times: Vec<u64> = a.iter().filter(|&n| n > 0).collect();
    if times.is_empty() {
        return Ok(Verdict::fails(Witness::Pair(0, 0)).with_note("window has no positive times"));
    }
    let starts = sys.start_grid(start_resolution)?;
    let mut closest: Option<(f64, usize, u64)> = None;
    for (idx, x) in starts.iter().enumerate() {
        for &n in &times {
            let d = sys.distance(&sys.iterate(x, n)?, x)?;
            if d < eps {
                return Ok(Verdict::holds(Some(Witness::Pair(idx as u64, n)))
                    .with_note(format!("d(T^{n} x, x) = {d:.3e} < {eps} for x = {x}")));
            }
            if closest.is_none_or(|(c, _, _)| d < c) {
                closest = Some((d, idx, n));
            }
        }
    }
    let (d, idx, n) = closest.expect("times and starts are nonempty");
    Ok(
        Verdict::fails(Witness::Pair(idx as u64, n)).with_note(format!(
            "closest return d(T^{n} x, x) = {d:.3e} ≥ {eps} for x = {}",
            starts[idx]
        )),
    )
}

/// Shifts of `range` ordered by distance from 0, negative first on ties.
pub fn shift_order(range: &RangeInclusive<i64>) -> Vec<i64> {
    let mut shifts: Vec<i64> = range.clone().collect();
    shifts.sort_by_key(|&n| (n.unsigned_abs(), n));
    shifts
}

/// Applies `tester` to `(a + n) ∩ [0, horizon]` for every shift `n` and
/// holds iff every shifted window passes. Fails with the first failing
/// shift in [`shift_order`].
pub fn shift_family_test<E>(
    a: &Window,
    shifts: RangeInclusive<i64>,
    mut tester: impl FnMut(&Window) -> Result<Verdict, E>,
) -> Result<Verdict, E> {
    let order = shift_order(&shifts);
    if order.is_empty() {
        return Ok(Verdict::inconclusive("empty shift range"));
    }
    let mut inconclusive = None;
    for n in order {
        let v = tester(&a.shifted(n))?;
        match v.status {
            Status::Fails => {
                let inner = v.witness.map(|w| format!(" [{w}]")).unwrap_or_default();
                return Ok(Verdict::fails(Witness::Int(n))
                    .with_note(format!("shift {n} fails{inner}: {}", v.note)));
            }
            Status::Inconclusive => {
                inconclusive.get_or_insert((n, v.note));
            }
            Status::Holds => {}
        }
    }
    Ok(match inconclusive {
        Some((n, note)) => Verdict::inconclusive(format!("shift {n} inconclusive: {note}")),
        None => Verdict::holds(None).with_note(format!(
            "all shifts in [{}, {}] pass",
            shifts.start(),
            shifts.end()
        )),
    })
}

/// The three cyclic-family predicates for one period.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrosscheckRow {
    pub m: u64,
    /// `A mod m` covers `Z/m`.
    pub coverage: bool,
    /// `(A + n) ∩ N(U, U) ≠ ∅` for every shift and singleton `U`.
    pub shifted_returns: bool,
    /// `(A + n) ∩ (S − S) ≠ ∅` for every shift and `S = mN + r`.
    pub shifted_differences: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub failing_shift: Option<i64>,
}

impl CrosscheckRow {
    pub fn agrees(&self) -> bool {
        self.coverage == self.shifted_returns && self.coverage == self.shifted_differences
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CrosscheckOutcome {
    pub verdict: Verdict,
    pub rows: Vec<CrosscheckRow>,
}

/// Evaluates three equivalent characterisations of R-sequences on the
/// cyclic family by independent routes:
///
/// 1. residue coverage of `A mod m`;
/// 2. shifted hitting of the return-time sets `N(U, U)`, computed by
///    iterating `Z/m`;
/// 3. shifted hitting of `S − S` for the syndetic sets `S = mN + r`,
///    computed with [`difference_set`] and [`shifted_hit`].
///
/// Any disagreement is an implementation bug. To keep the finite horizon
/// from producing spurious misses, all predicates read the interior
/// `[margin, horizon − margin]` of the window with
/// `margin = max|shift| + max_period`.
///
/// Return-time and difference sets depend only on `(m, r, horizon)`; they
/// are computed once in [`CyclicCrosscheck::new`] and shared across calls.
#[derive(Debug, Clone)]
pub struct CyclicCrosscheck {
    horizon: u64,
    max_period: u64,
    returns: HashMap<(u64, u64), Window>,
    differences: HashMap<(u64, u64), Window>,
}

impl CyclicCrosscheck {
    pub fn new(horizon: u64, max_period: u64) -> Result<Self, RecurrenceError> {
        if max_period == 0 || horizon == 0 {
            return Err(RecurrenceError::Parameter(
                "horizon and max_period must be positive".into(),
            ));
        }
        let mut returns = HashMap::new();
        let mut differences = HashMap::new();
        for m in 1..=max_period {
            let sys = System::cyclic(m)?;
            let cover = sys.cover(1.0)?;
            for u in 0..m {
                let rt = return_times(&sys, &State::Residue(u), &cover, u, horizon)?;
                returns.insert((m, u), rt.times);
                let s = Window::from_predicate(horizon, |x| x % m == u);
                differences.insert((m, u), difference_set(&s));
            }
        }
        Ok(CyclicCrosscheck {
            horizon,
            max_period,
            returns,
            differences,
        })
    }

    pub fn horizon(&self) -> u64 {
        self.horizon
    }

    pub fn max_period(&self) -> u64 {
        self.max_period
    }

    pub fn check(
        &self,
        a: &Window,
        shifts: RangeInclusive<i64>,
    ) -> Result<CrosscheckOutcome, RecurrenceError> {
        if a.horizon() != self.horizon {
            return Err(RecurrenceError::Parameter(format!(
                "window horizon {} differs from prepared horizon {}",
                a.horizon(),
                self.horizon
            )));
        }
        let order = shift_order(&shifts);
        if (order.len() as u64) < self.max_period {
            return Ok(CrosscheckOutcome {
                verdict: Verdict::inconclusive(format!(
                    "shift range has {} values; at least {} are needed to reach every residue",
                    order.len(),
                    self.max_period
                )),
                rows: Vec::new(),
            });
        }
        let reach = shifts
            .start()
            .unsigned_abs()
            .max(shifts.end().unsigned_abs());
        let margin = reach + self.max_period;
        if self.horizon < 2 * margin {
            return Ok(CrosscheckOutcome {
                verdict: Verdict::inconclusive(format!(
                    "horizon {} leaves no interior with margin {margin}",
                    self.horizon
                )),
                rows: Vec::new(),
            });
        }
        let interior = a.restrict(margin, self.horizon - margin);

        let mut rows = Vec::with_capacity(self.max_period as usize);
        for m in 1..=self.max_period {
            let coverage = residue_coverage(&interior, m).iter().all(|h| *h);

            let mut failing_shift = None;
            let shifted_returns = order.iter().all(|&n| {
                let ok = (0..m).all(|u| {
                    let times = &self.returns[&(m, u)];
                    interior.iter().any(|x| {
                        let t = x as i128 + n as i128;
                        t >= 1 && t <= self.horizon as i128 && times.contains(t as u64)
                    })
                });
                if !ok {
                    failing_shift = Some(n);
                }
                ok
            });

            let shifted_differences = order.iter().all(|&n| {
                let ok = (0..m).all(|r| {
                    let diffs = &self.differences[&(m, r)];
                    shifted_hit(&interior, diffs, -n).is_holds()
                });
                if !ok && failing_shift.is_none() {
                    failing_shift = Some(n);
                }
                ok
            });

            rows.push(CrosscheckRow {
                m,
                coverage,
                shifted_returns,
                shifted_differences,
                failing_shift,
            });
        }

        let verdict = match rows.iter().find(|r| !r.agrees()) {
            Some(r) => Verdict::fails(Witness::Nat(r.m)).with_note(format!(
                "predicates disagree at m = {}: coverage {}, shifted returns {}, shifted differences {}",
                r.m, r.coverage, r.shifted_returns, r.shifted_differences
            )),
            None => {
                let summary = match rows.iter().find(|r| !r.coverage) {
                    Some(r) => format!(
                        "all three fail together first at m = {}{}",
                        r.m,
                        r.failing_shift
                            .map(|n| format!(", shift {n}"))
                            .unwrap_or_default()
                    ),
                    None => format!("all three hold for every m ≤ {}", self.max_period),
                };
                Verdict::holds(None).with_note(format!("predicates agree; {summary}"))
            }
        };
        Ok(CrosscheckOutcome { verdict, rows })
    }
}

pub fn cyclic_crosscheck(
    a: &Window,
    max_period: u64,
    shifts: RangeInclusive<i64>,
) -> Result<CrosscheckOutcome, RecurrenceError> {
    CyclicCrosscheck::new(a.horizon(), max_period)?.check(a, shifts)
}

/// Parameters for a seeded crosscheck sweep over random windows.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepParams {
    pub seed: u64,
    pub windows: usize,
    pub horizon: u64,
    pub max_period: u64,
    pub shifts: (i64, i64),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepOutcome {
    pub params: SweepParams,
    pub checked: usize,
    pub agreements: usize,
    /// Windows on which all three predicates hold for every m.
    pub all_hold: usize,
    /// Indices of windows whose predicates disagree.
    pub disagreements: Vec<usize>,
    pub inconclusive: Vec<usize>,
}

/// Random windows with varied density. Every third window is confined to a
/// random subset of residues mod a random modulus, so that failing
/// instances are common.
pub fn random_windows(seed: u64, count: usize, horizon: u64) -> Vec<Window> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| {
            let density = 10f64.powf(rng.gen_range(-2.5..-0.05));
            let restriction = if i % 3 == 2 {
                let q = rng.gen_range(2..=12u64);
                let allowed: Vec<bool> = (0..q).map(|_| rng.gen_bool(0.6)).collect();
                Some((q, allowed))
            } else {
                None
            };
            Window::from_predicate(horizon, |n| {
                let keep = rng.gen_bool(density);
                keep && restriction
                    .as_ref()
                    .is_none_or(|(q, allowed)| allowed[(n % q) as usize])
            })
        })
        .collect()
}

pub fn crosscheck_sweep(params: &SweepParams) -> Result<SweepOutcome, RecurrenceError> {
    let windows = random_windows(params.seed, params.windows, params.horizon);
    let checker = CyclicCrosscheck::new(params.horizon, params.max_period)?;
    let shifts = params.shifts.0..=params.shifts.1;
    let outcomes: Vec<CrosscheckOutcome> = windows
        .par_iter()
        .map(|w| checker.check(w, shifts.clone()))
        .collect::<Result<_, _>>()?;
    let mut out = SweepOutcome {
        params: params.clone(),
        checked: outcomes.len(),
        agreements: 0,
        all_hold: 0,
        disagreements: Vec::new(),
        inconclusive: Vec::new(),
    };
    for (i, o) in outcomes.iter().enumerate() {
        match o.verdict.status {
            Status::Holds => {
                out.agreements += 1;
                if o.rows.iter().all(|r| r.coverage) {
                    out.all_hold += 1;
                }
            }
            Status::Fails => out.disagreements.push(i),
            Status::Inconclusive => out.inconclusive.push(i),
        }
    }
    Ok(out)
}

/// A least-cardinality `B ⊆ a` whose residues cover `Z/m`: the least
/// element of each residue class.
pub fn finite_subcover(a: &Window, m: u64) -> Result<Window, RecurrenceError> {
    if m == 0 {
        return Err(RecurrenceError::Parameter("m must be at least 1".into()));
    }
    let mut first: Vec<Option<u64>> = vec![None; m as usize];
    for x in a.iter() {
        first[(x % m) as usize].get_or_insert(x);
    }
    if let Some(r) = first.iter().position(Option::is_none) {
        return Err(RecurrenceError::ResidueMissing {
            modulus: m,
            residue: r as u64,
        });
    }
    let mut b: Vec<u64> = first.into_iter().flatten().collect();
    b.sort_unstable();
    Ok(Window::new(b, a.horizon())?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductTransitivity {
    pub m: u64,
    pub n: u64,
    /// `gcd(m, n) = 1`.
    pub transitive: bool,
    /// Size of the orbit of `(0, 0)`, found by stepping.
    pub orbit_size: u64,
    /// The orbit is all of `Z/m × Z/n` exactly when the gcd says so.
    pub consistent: bool,
}

pub fn product_transitive_finite(m: u64, n: u64) -> Result<ProductTransitivity, RecurrenceError> {
    let sys = System::product(System::cyclic(m)?, System::cyclic(n)?);
    let origin = sys.origin();
    let mut state = sys.step(&origin)?;
    let mut orbit_size = 1u64;
    while state != origin {
        state = sys.step(&state)?;
        orbit_size += 1;
    }
    let transitive = m.gcd(&n) == 1;
    let full = orbit_size == m * n;
    Ok(ProductTransitivity {
        m,
        n,
        transitive,
        orbit_size,
        consistent: transitive == full,
    })
}

/// `|(1/N) Σ_{i ≤ N} e^{2πik(start + a_i α)}|` for every prefix length `N`
/// of `a`.
pub fn cesaro_average_along(
    a: &Window,
    rotation: &RotationSystem,
    frequency: i64,
    start: f64,
) -> Result<Vec<f64>, RecurrenceError> {
    if frequency == 0 {
        return Err(RecurrenceError::ZeroFrequency);
    }
    if rotation.dimension() != 1 {
        return Err(RecurrenceError::Parameter(
            "Cesàro averages are computed on the circle only".into(),
        ));
    }
    let angle = &rotation.angles()[0];
    let k = frequency.unsigned_abs();
    let start = wrap(start);
    let (mut re, mut im) = (0.0f64, 0.0f64);
    let mut out = Vec::with_capacity(a.len());
    for (i, n) in a.iter().enumerate() {
        let x = wrap(start + angle.times(n));
        let mut phase = frac_mul(k, x);
        if frequency < 0 {
            phase = wrap(-phase);
        }
        let theta = std::f64::consts::TAU * phase;
        re += theta.cos();
        im += theta.sin();
        out.push(re.hypot(im) / (i + 1) as f64);
    }
    Ok(out)
}

/// Closed form of the Cesàro magnitude along `[1, n]`:
/// `|sin(πnkα)| / (n |sin(πkα)|)`, or 1 when `kα` is an integer.
pub fn geometric_cesaro_magnitude(angle: &Angle, frequency: i64, n: u64) -> f64 {
    if n == 0 {
        return 0.0;
    }
    let k = frequency.unsigned_abs();
    let beta = angle.times(k);
    if beta == 0.0 {
        return 1.0;
    }
    let nb = match n.checked_mul(k) {
        Some(nk) => angle.times(nk),
        None => frac_mul(n, beta),
    };
    let pi = std::f64::consts::PI;
    ((pi * nb).sin() / (pi * beta).sin()).abs() / n as f64
}

/// Runs `eps_dense` on `Z/m` along `a` from 0, the dynamical route to the
/// residue-coverage answer of [`r_sequence_cyclic`].
pub fn cyclic_density_verdict(a: &Window, m: u64) -> Result<Verdict, RecurrenceError> {
    let sys = System::cyclic(m)?;
    let orbit = sys.orbit_along(&State::Residue(0), a)?;
    Ok(eps_dense(&sys, &orbit, &sys.cover(1.0)?)?)
}
