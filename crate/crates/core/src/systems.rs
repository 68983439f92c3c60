//! Catalog of dynamical systems with closed-form orbits.
//!
//! Finite systems (cycles, truncated odometers) are exact. Rotations and the
//! skew product use `f64` arithmetic on the torus `[0,1)^d`; every time `n`
//! is reduced with an error-free product so that `frac(n·α)` stays accurate
//! to a few ulps independently of `n`.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::intsets::Window;
use crate::verdict::{Verdict, Witness};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SystemError {
    #[error("invalid system parameter: {0}")]
    Parameter(String),
    #[error("state {state} does not belong to {system}")]
    StateMismatch { system: String, state: String },
    #[error("cover of resolution {resolution} does not belong to {system}")]
    CoverMismatch { system: String, resolution: f64 },
    #[error("cannot parse system spec `{0}`")]
    Parse(String),
    #[error("state space of {0} is too large to enumerate")]
    TooLarge(String),
}

/// `frac(n·x)` for `x ∈ [0,1)`, using an fma to recover the rounding error
/// of the product.
pub fn frac_mul(n: u64, x: f64) -> f64 {
    if n == 0 || x == 0.0 {
        return 0.0;
    }
    if n >= 1 << 53 {
        // n = hi·2^32 + lo, and 2^32·x is exact.
        let hi = n >> 32;
        let lo = n & 0xffff_ffff;
        let scaled = x * 4_294_967_296.0;
        let scaled = scaled - scaled.floor();
        return wrap(frac_mul(hi, scaled) + frac_mul(lo, x));
    }
    let nf = n as f64;
    let p = nf * x;
    let err = nf.mul_add(x, -p);
    wrap((p - p.floor()) + err)
}

/// `frac(n·x)` for 128-bit times.
fn frac_mul_wide(n: u128, x: f64) -> f64 {
    if n < 1 << 64 {
        return frac_mul(n as u64, x);
    }
    let hi = (n >> 64) as u64;
    let lo = n as u64;
    // 2^64·x is exact; split it into two 32-bit scalings to stay in range.
    let s = x * 4_294_967_296.0;
    let s = s - s.floor();
    let s = s * 4_294_967_296.0;
    let s = s - s.floor();
    wrap(frac_mul(hi, s) + frac_mul(lo, x))
}

/// Reduces into `[0, 1)`.
pub fn wrap(x: f64) -> f64 {
    let r = x - x.floor();
    if !(0.0..1.0).contains(&r) {
        0.0
    } else {
        r
    }
}

/// Circular distance on `[0,1)`.
pub fn circle_distance(a: f64, b: f64) -> f64 {
    let d = wrap(a - b);
    d.min(1.0 - d)
}

/// Rotation number with an optional exact rational form.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Angle {
    value: f64,
    exact: Option<(u64, u64)>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    name: Option<String>,
}

impl Angle {
    /// An angle known only as a double. It is treated as irrational.
    pub fn real(value: f64) -> Result<Self, SystemError> {
        if !value.is_finite() {
            return Err(SystemError::Parameter(format!(
                "angle {value} is not finite"
            )));
        }
        Ok(Angle {
            value: wrap(value),
            exact: None,
            name: None,
        })
    }

    /// `p/q mod 1`, stored in lowest terms.
    pub fn rational(p: u64, q: u64) -> Result<Self, SystemError> {
        if q == 0 {
            return Err(SystemError::Parameter(
                "denominator must be positive".into(),
            ));
        }
        let p = p % q;
        let g = p.gcd(&q);
        let (p, q) = (p / g, q / g);
        Ok(Angle {
            value: p as f64 / q as f64,
            exact: Some((p, q)),
            name: None,
        })
    }

    /// `(√5 − 1)/2`.
    pub fn golden() -> Self {
        Angle {
            value: (5f64.sqrt() - 1.0) / 2.0,
            exact: None,
            name: Some("golden".into()),
        }
    }

    pub fn value(&self) -> f64 {
        self.value
    }

    pub fn exact(&self) -> Option<(u64, u64)> {
        self.exact
    }

    pub fn is_rational(&self) -> bool {
        self.exact.is_some()
    }

    /// `frac(n·α)`.
    pub fn times(&self, n: u64) -> f64 {
        match self.exact {
            Some((p, q)) => ((n % q) as u128 * p as u128 % q as u128) as f64 / q as f64,
            None => frac_mul(n, self.value),
        }
    }

    fn times_wide(&self, n: u128) -> f64 {
        match self.exact {
            Some((p, q)) => ((n % q as u128) * p as u128 % q as u128) as f64 / q as f64,
            None => frac_mul_wide(n, self.value),
        }
    }

    /// Error of the stored double against the intended angle.
    pub fn representation_error(&self) -> f64 {
        match self.exact {
            Some(_) => 0.0,
            None => self.value.max(f64::MIN_POSITIVE) * f64::EPSILON,
        }
    }

    /// Continued-fraction convergents `p/q` of the stored value with
    /// `q ≤ max_denominator`.
    pub fn convergents(&self, max_denominator: u64) -> Vec<(u64, u64)> {
        if let Some((p, q)) = self.exact {
            return rational_convergents(p, q)
                .into_iter()
                .filter(|&(_, d)| d <= max_denominator)
                .collect();
        }
        let mut out = Vec::new();
        let (mut h0, mut h1) = (0u128, 1u128);
        let (mut k0, mut k1) = (1u128, 0u128);
        let mut x = self.value;
        for _ in 0..64 {
            let a = x.floor();
            let ai = a as u128;
            let h = ai * h1 + h0;
            let k = ai * k1 + k0;
            if k > max_denominator as u128 {
                break;
            }
            out.push((h as u64, k as u64));
            (h0, h1, k0, k1) = (h1, h, k1, k);
            let rest = x - a;
            if rest < 1e-15 {
                break;
            }
            x = 1.0 / rest;
        }
        out
    }
}

fn rational_convergents(p: u64, q: u64) -> Vec<(u64, u64)> {
    let (mut num, mut den) = (p, q);
    let (mut h0, mut h1) = (0u64, 1u64);
    let (mut k0, mut k1) = (1u64, 0u64);
    let mut out = Vec::new();
    while den != 0 {
        let a = num / den;
        let h = a * h1 + h0;
        let k = a * k1 + k0;
        out.push((h, k));
        (h0, h1, k0, k1) = (h1, h, k1, k);
        (num, den) = (den, num % den);
    }
    out
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(name) = &self.name {
            return f.write_str(name);
        }
        match self.exact {
            Some((p, q)) => write!(f, "{p}/{q}"),
            None => write!(f, "{}", self.value),
        }
    }
}

impl FromStr for Angle {
    type Err = SystemError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "golden" {
            return Ok(Angle::golden());
        }
        if let Some((p, q)) = s.split_once('/') {
            let p = p.trim().parse().map_err(|_| SystemError::Parse(s.into()))?;
            let q = q.trim().parse().map_err(|_| SystemError::Parse(s.into()))?;
            return Angle::rational(p, q);
        }
        let v: f64 = s.parse().map_err(|_| SystemError::Parse(s.into()))?;
        Angle::real(v)
    }
}

/// `Z/m` with `x ↦ x + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyclicSystem {
    period: u64,
}

impl CyclicSystem {
    pub fn new(period: u64) -> Result<Self, SystemError> {
        if period == 0 {
            return Err(SystemError::Parameter("period must be at least 1".into()));
        }
        Ok(CyclicSystem { period })
    }

    pub fn period(&self) -> u64 {
        self.period
    }
}

/// Translation by `α` on the `d`-torus.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RotationSystem {
    angles: Vec<Angle>,
}

impl RotationSystem {
    pub fn new(angles: Vec<Angle>) -> Result<Self, SystemError> {
        if angles.is_empty() {
            return Err(SystemError::Parameter(
                "rotation needs at least one angle".into(),
            ));
        }
        Ok(RotationSystem { angles })
    }

    pub fn circle(angle: Angle) -> Self {
        RotationSystem {
            angles: vec![angle],
        }
    }

    pub fn dimension(&self) -> usize {
        self.angles.len()
    }

    pub fn angles(&self) -> &[Angle] {
        &self.angles
    }

    /// Period of the equivalent cycle when every coordinate is rational.
    pub fn rational_period(&self) -> Option<u64> {
        self.angles
            .iter()
            .try_fold(1u64, |acc, a| a.exact().map(|(_, q)| acc.lcm(&q)))
    }
}

/// Adding machine truncated at `depth` base-`base` digits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct OdometerSystem {
    base: u64,
    depth: u32,
    modulus: u64,
}

impl OdometerSystem {
    pub fn new(base: u64, depth: u32) -> Result<Self, SystemError> {
        if base < 2 || depth == 0 {
            return Err(SystemError::Parameter(
                "odometer needs base ≥ 2 and depth ≥ 1".into(),
            ));
        }
        let modulus = base
            .checked_pow(depth)
            .ok_or_else(|| SystemError::Parameter(format!("{base}^{depth} overflows u64")))?;
        Ok(OdometerSystem {
            base,
            depth,
            modulus,
        })
    }

    pub fn base(&self) -> u64 {
        self.base
    }

    pub fn depth(&self) -> u32 {
        self.depth
    }

    /// Exact period `base^depth`.
    pub fn period(&self) -> u64 {
        self.modulus
    }

    /// Little-endian digits of `value`.
    pub fn digits_of(&self, mut value: u64) -> Vec<u64> {
        value %= self.modulus;
        (0..self.depth)
            .map(|_| {
                let d = value % self.base;
                value /= self.base;
                d
            })
            .collect()
    }

    pub fn value_of(&self, digits: &[u64]) -> u64 {
        digits.iter().rev().fold(0, |acc, &d| acc * self.base + d)
    }
}

/// `(x, y) ↦ (x + α, y + x)` on the 2-torus.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SkewProductSystem {
    angle: Angle,
}

impl SkewProductSystem {
    pub fn new(angle: Angle) -> Self {
        SkewProductSystem { angle }
    }

    pub fn angle(&self) -> &Angle {
        &self.angle
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProductSystem {
    left: Box<System>,
    right: Box<System>,
}

impl ProductSystem {
    pub fn left(&self) -> &System {
        &self.left
    }

    pub fn right(&self) -> &System {
        &self.right
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum System {
    Cyclic(CyclicSystem),
    Rotation(RotationSystem),
    Odometer(OdometerSystem),
    Skew(SkewProductSystem),
    Product(ProductSystem),
}

/// A point of some catalog system.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum State {
    Residue(u64),
    Torus(Vec<f64>),
    Digits(Vec<u64>),
    Pair(Box<State>, Box<State>),
}

impl State {
    pub fn pair(left: State, right: State) -> State {
        State::Pair(Box::new(left), Box::new(right))
    }
}

impl fmt::Display for State {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            State::Residue(r) => write!(f, "{r}"),
            State::Torus(xs) => {
                let parts: Vec<String> = xs.iter().map(|x| format!("{x}")).collect();
                write!(f, "({})", parts.join(", "))
            }
            State::Digits(ds) => {
                let parts: Vec<String> = ds.iter().rev().map(|d| d.to_string()).collect();
                write!(f, "[{}]", parts.join(" "))
            }
            State::Pair(l, r) => write!(f, "<{l}, {r}>"),
        }
    }
}

/// Shape of an ε-cover.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum CoverLayout {
    /// Singleton cells of a finite space.
    Points(u64),
    /// Half-open boxes of side `1/per_axis` on the `dim`-torus.
    Torus {
        dim: usize,
        per_axis: u64,
    },
    Product(Box<CoverLayout>, Box<CoverLayout>),
}

impl CoverLayout {
    pub fn cell_count(&self) -> Option<u64> {
        match self {
            CoverLayout::Points(n) => Some(*n),
            CoverLayout::Torus { dim, per_axis } => per_axis.checked_pow(*dim as u32),
            CoverLayout::Product(l, r) => l.cell_count()?.checked_mul(r.cell_count()?),
        }
    }
}

/// Partition of a system's space into cells of diameter at most ε (up to
/// the `√d` factor in the Euclidean metric; exactly ε in the max metric).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridCover {
    resolution: f64,
    layout: CoverLayout,
}

impl GridCover {
    pub fn resolution(&self) -> f64 {
        self.resolution
    }

    pub fn layout(&self) -> &CoverLayout {
        &self.layout
    }

    pub fn cell_count(&self) -> Option<u64> {
        self.layout.cell_count()
    }
}

fn cell_index(layout: &CoverLayout, state: &State) -> Option<u64> {
    match (layout, state) {
        (CoverLayout::Points(n), State::Residue(r)) if r < n => Some(*r),
        (CoverLayout::Torus { dim, per_axis }, State::Torus(xs)) if xs.len() == *dim => {
            let mut idx = 0u64;
            for &x in xs {
                let k = ((x * *per_axis as f64).floor() as i64).clamp(0, *per_axis as i64 - 1);
                idx = idx * per_axis + k as u64;
            }
            Some(idx)
        }
        (CoverLayout::Product(l, r), State::Pair(a, b)) => {
            let right_count = r.cell_count()?;
            Some(cell_index(l, a)? * right_count + cell_index(r, b)?)
        }
        _ => None,
    }
}

/// Number of cells per axis: `⌈1/ε⌉`, with a small tolerance so that
/// ε = 1/k gives exactly k cells.
pub fn cells_per_axis(eps: f64) -> u64 {
    let k = 1.0 / eps;
    let rounded = k.round();
    if (k - rounded).abs() < 1e-9 * k.max(1.0) {
        rounded.max(1.0) as u64
    } else {
        k.ceil().max(1.0) as u64
    }
}

fn smallest_prime_factor(n: u64) -> u64 {
    if n.is_multiple_of(2) {
        return 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return d;
        }
        d += 2;
    }
    n
}

impl System {
    pub fn cyclic(period: u64) -> Result<Self, SystemError> {
        Ok(System::Cyclic(CyclicSystem::new(period)?))
    }

    pub fn rotation(angle: Angle) -> Self {
        System::Rotation(RotationSystem::circle(angle))
    }

    pub fn odometer(base: u64, depth: u32) -> Result<Self, SystemError> {
        Ok(System::Odometer(OdometerSystem::new(base, depth)?))
    }

    pub fn skew(angle: Angle) -> Self {
        System::Skew(SkewProductSystem::new(angle))
    }

    /// Componentwise product.
    pub fn product(left: System, right: System) -> Self {
        System::Product(ProductSystem {
            left: Box::new(left),
            right: Box::new(right),
        })
    }

    /// Number of points for finite systems.
    pub fn cardinality(&self) -> Option<u64> {
        match self {
            System::Cyclic(c) => Some(c.period),
            System::Odometer(o) => Some(o.modulus),
            System::Rotation(_) | System::Skew(_) => None,
            System::Product(p) => p.left.cardinality()?.checked_mul(p.right.cardinality()?),
        }
    }

    pub fn is_finite(&self) -> bool {
        match self {
            System::Cyclic(_) | System::Odometer(_) => true,
            System::Rotation(_) | System::Skew(_) => false,
            System::Product(p) => p.left.is_finite() && p.right.is_finite(),
        }
    }

    /// The natural base point: 0, the origin of the torus, or `(0, 0)`.
    pub fn origin(&self) -> State {
        match self {
            System::Cyclic(_) => State::Residue(0),
            System::Rotation(r) => State::Torus(vec![0.0; r.dimension()]),
            System::Odometer(o) => State::Digits(vec![0; o.depth as usize]),
            System::Skew(_) => State::Torus(vec![0.0, 0.0]),
            System::Product(p) => State::pair(p.left.origin(), p.right.origin()),
        }
    }

    fn mismatch(&self, state: &State) -> SystemError {
        SystemError::StateMismatch {
            system: self.to_string(),
            state: state.to_string(),
        }
    }

    pub fn contains(&self, state: &State) -> bool {
        match (self, state) {
            (System::Cyclic(c), State::Residue(r)) => *r < c.period,
            (System::Rotation(r), State::Torus(xs)) => {
                xs.len() == r.dimension() && xs.iter().all(|x| (0.0..1.0).contains(x))
            }
            (System::Odometer(o), State::Digits(ds)) => {
                ds.len() == o.depth as usize && ds.iter().all(|&d| d < o.base)
            }
            (System::Skew(_), State::Torus(xs)) => {
                xs.len() == 2 && xs.iter().all(|x| (0.0..1.0).contains(x))
            }
            (System::Product(p), State::Pair(a, b)) => p.left.contains(a) && p.right.contains(b),
            _ => false,
        }
    }

    fn check(&self, state: &State) -> Result<(), SystemError> {
        if self.contains(state) {
            Ok(())
        } else {
            Err(self.mismatch(state))
        }
    }

    /// One application of the system map.
    pub fn step(&self, state: &State) -> Result<State, SystemError> {
        self.check(state)?;
        Ok(self.step_unchecked(state))
    }

    fn step_unchecked(&self, state: &State) -> State {
        match (self, state) {
            (System::Cyclic(c), State::Residue(r)) => State::Residue((r + 1) % c.period),
            (System::Rotation(rot), State::Torus(xs)) => State::Torus(
                xs.iter()
                    .zip(&rot.angles)
                    .map(|(x, a)| wrap(x + a.value()))
                    .collect(),
            ),
            (System::Odometer(o), State::Digits(ds)) => {
                let mut out = ds.clone();
                for d in out.iter_mut() {
                    *d += 1;
                    if *d < o.base {
                        break;
                    }
                    *d = 0;
                }
                State::Digits(out)
            }
            (System::Skew(s), State::Torus(xs)) => {
                State::Torus(vec![wrap(xs[0] + s.angle.value()), wrap(xs[1] + xs[0])])
            }
            (System::Product(p), State::Pair(a, b)) => {
                State::pair(p.left.step_unchecked(a), p.right.step_unchecked(b))
            }
            _ => unreachable!("state checked against system"),
        }
    }

    /// `T^n(start)` by closed form.
    pub fn iterate(&self, start: &State, n: u64) -> Result<State, SystemError> {
        self.check(start)?;
        Ok(self.iterate_unchecked(start, n))
    }

    fn iterate_unchecked(&self, start: &State, n: u64) -> State {
        match (self, start) {
            (System::Cyclic(c), State::Residue(r)) => State::Residue((r + n % c.period) % c.period),
            (System::Rotation(rot), State::Torus(xs)) => State::Torus(
                xs.iter()
                    .zip(&rot.angles)
                    .map(|(x, a)| wrap(x + a.times(n)))
                    .collect(),
            ),
            (System::Odometer(o), State::Digits(ds)) => {
                let v = (o.value_of(ds) as u128 + n as u128) % o.modulus as u128;
                State::Digits(o.digits_of(v as u64))
            }
            (System::Skew(s), State::Torus(xs)) => {
                let (x, y) = (xs[0], xs[1]);
                let triangle = n as u128 * (n as u128).saturating_sub(1) / 2;
                let xn = wrap(x + s.angle.times(n));
                let yn = wrap(y + frac_mul(n, x) + s.angle.times_wide(triangle));
                State::Torus(vec![xn, yn])
            }
            (System::Product(p), State::Pair(a, b)) => State::pair(
                p.left.iterate_unchecked(a, n),
                p.right.iterate_unchecked(b, n),
            ),
            _ => unreachable!("state checked against system"),
        }
    }

    /// `T^n(start)` for every `n ∈ a`, in order.
    pub fn orbit_along(&self, start: &State, a: &Window) -> Result<Vec<State>, SystemError> {
        self.check(start)?;
        Ok(a.iter().map(|n| self.iterate_unchecked(start, n)).collect())
    }

    /// Discrete metric on cycles, `base^-k` on odometers (k = first
    /// differing digit), max of circular distances on tori, max on products.
    pub fn distance(&self, a: &State, b: &State) -> Result<f64, SystemError> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.distance_unchecked(a, b))
    }

    fn distance_unchecked(&self, a: &State, b: &State) -> f64 {
        match (self, a, b) {
            (System::Cyclic(_), State::Residue(x), State::Residue(y)) => {
                if x == y {
                    0.0
                } else {
                    1.0
                }
            }
            (System::Odometer(o), State::Digits(x), State::Digits(y)) => {
                match x.iter().zip(y).position(|(p, q)| p != q) {
                    Some(k) => (o.base as f64).powi(-(k as i32)),
                    None => 0.0,
                }
            }
            (System::Rotation(_) | System::Skew(_), State::Torus(x), State::Torus(y)) => x
                .iter()
                .zip(y)
                .map(|(p, q)| circle_distance(*p, *q))
                .fold(0.0, f64::max),
            (System::Product(p), State::Pair(a1, a2), State::Pair(b1, b2)) => p
                .left
                .distance_unchecked(a1, b1)
                .max(p.right.distance_unchecked(a2, b2)),
            _ => unreachable!("states checked against system"),
        }
    }

    /// ε-cover: singletons for finite factors, grids of side `1/⌈1/ε⌉` on
    /// tori.
    pub fn cover(&self, eps: f64) -> Result<GridCover, SystemError> {
        if !(eps > 0.0 && eps.is_finite()) {
            return Err(SystemError::Parameter(format!(
                "resolution {eps} must be positive"
            )));
        }
        Ok(GridCover {
            resolution: eps,
            layout: self.layout(eps),
        })
    }

    fn layout(&self, eps: f64) -> CoverLayout {
        match self {
            System::Cyclic(c) => CoverLayout::Points(c.period),
            System::Odometer(o) => CoverLayout::Points(o.modulus),
            System::Rotation(r) => CoverLayout::Torus {
                dim: r.dimension(),
                per_axis: cells_per_axis(eps),
            },
            System::Skew(_) => CoverLayout::Torus {
                dim: 2,
                per_axis: cells_per_axis(eps),
            },
            System::Product(p) => {
                CoverLayout::Product(Box::new(p.left.layout(eps)), Box::new(p.right.layout(eps)))
            }
        }
    }

    /// Cell of `state` in `cover`, after checking that the cover was built
    /// for this system.
    pub fn cell_of(&self, cover: &GridCover, state: &State) -> Result<u64, SystemError> {
        self.check_cover(cover)?;
        self.check(state)?;
        Ok(self.cell_unchecked(&cover.layout, state))
    }

    fn cell_unchecked(&self, layout: &CoverLayout, state: &State) -> u64 {
        match (self, layout, state) {
            (System::Odometer(o), CoverLayout::Points(_), State::Digits(ds)) => o.value_of(ds),
            (System::Product(p), CoverLayout::Product(l, r), State::Pair(a, b)) => {
                let right_count = r.cell_count().unwrap_or(u64::MAX);
                p.left.cell_unchecked(l, a) * right_count + p.right.cell_unchecked(r, b)
            }
            _ => cell_index(layout, state).expect("state checked against system"),
        }
    }

    pub fn check_cover(&self, cover: &GridCover) -> Result<(), SystemError> {
        if self.layout(cover.resolution) == cover.layout {
            Ok(())
        } else {
            Err(SystemError::CoverMismatch {
                system: self.to_string(),
                resolution: cover.resolution,
            })
        }
    }

    /// Lexicographic grid of start points: every point of a finite factor,
    /// multiples of `1/⌈1/resolution⌉` on each torus axis.
    pub fn start_grid(&self, resolution: f64) -> Result<Vec<State>, SystemError> {
        const LIMIT: u64 = 1 << 22;
        match self {
            System::Cyclic(c) => {
                if c.period > LIMIT {
                    return Err(SystemError::TooLarge(self.to_string()));
                }
                Ok((0..c.period).map(State::Residue).collect())
            }
            System::Odometer(o) => {
                if o.modulus > LIMIT {
                    return Err(SystemError::TooLarge(self.to_string()));
                }
                Ok((0..o.modulus)
                    .map(|v| State::Digits(o.digits_of(v)))
                    .collect())
            }
            System::Rotation(_) | System::Skew(_) => {
                let dim = match self {
                    System::Rotation(r) => r.dimension(),
                    _ => 2,
                };
                let k = cells_per_axis(resolution);
                let total = k
                    .checked_pow(dim as u32)
                    .filter(|&t| t <= LIMIT)
                    .ok_or_else(|| SystemError::TooLarge(self.to_string()))?;
                Ok((0..total)
                    .map(|mut idx| {
                        let mut xs = vec![0.0; dim];
                        for x in xs.iter_mut().rev() {
                            *x = (idx % k) as f64 / k as f64;
                            idx /= k;
                        }
                        State::Torus(xs)
                    })
                    .collect())
            }
            System::Product(p) => {
                let left = p.left.start_grid(resolution)?;
                let right = p.right.start_grid(resolution)?;
                if (left.len() as u64).saturating_mul(right.len() as u64) > LIMIT {
                    return Err(SystemError::TooLarge(self.to_string()));
                }
                Ok(left
                    .iter()
                    .flat_map(|l| right.iter().map(move |r| State::pair(l.clone(), r.clone())))
                    .collect())
            }
        }
    }

    /// Worst-case absolute error of a closed-form orbit point at times up to
    /// `max_time`.
    pub fn float_error(&self, max_time: u64) -> f64 {
        let t = max_time as f64;
        let arith = 8.0 * f64::EPSILON;
        match self {
            System::Cyclic(_) | System::Odometer(_) => 0.0,
            System::Rotation(r) => r
                .angles
                .iter()
                .map(|a| t * a.representation_error() + arith)
                .fold(0.0, f64::max),
            System::Skew(s) => {
                t * t / 2.0 * s.angle.representation_error() + t * f64::EPSILON + arith
            }
            System::Product(p) => p
                .left
                .float_error(max_time)
                .max(p.right.float_error(max_time)),
        }
    }

    /// Whether `(X, T^n)` is minimal for every `n ≥ 1`.
    ///
    /// Exact on cycles, odometers and rational rotations (which behave as
    /// cycles of the common denominator). Irrational rotations and skew
    /// products hold on the assumption that the stored angles are
    /// irrational (and rationally independent for `d > 1`).
    pub fn is_totally_minimal(&self) -> Verdict {
        fn by_period(period: u64) -> Verdict {
            if period == 1 {
                Verdict::holds(None).with_note("single point")
            } else {
                let n = smallest_prime_factor(period);
                Verdict::fails(Witness::Nat(n)).with_note(format!(
                    "period {period}: T^{n} splits the space into {n} cycles"
                ))
            }
        }
        match self {
            System::Cyclic(c) => by_period(c.period),
            System::Odometer(o) => by_period(o.modulus),
            System::Rotation(r) => {
                if let Some(q) = r.rational_period() {
                    return by_period(q).with_note(format!(
                        "rational rotation, equivalent to a cycle of period {q}"
                    ));
                }
                if let Some(q) = r
                    .angles
                    .iter()
                    .filter_map(|a| a.exact().map(|(_, q)| q))
                    .next()
                {
                    let n = if q == 1 { 1 } else { smallest_prime_factor(q) };
                    return Verdict::fails(Witness::Nat(n)).with_note(format!(
                        "a coordinate has rational angle with denominator {q}"
                    ));
                }
                let caveat = if r.dimension() > 1 {
                    "assumes 1 and the angles are rationally independent; only double-precision values are known"
                } else {
                    "assumes the angle is irrational; only a double-precision value is known"
                };
                Verdict::holds(None).with_note(caveat)
            }
            System::Skew(s) => match s.angle.exact() {
                Some((_, q)) => {
                    let n = if q == 1 { 1 } else { smallest_prime_factor(q) };
                    Verdict::fails(Witness::Nat(n))
                        .with_note(format!("rational angle with denominator {q}"))
                }
                None => Verdict::holds(None).with_note(
                    "assumes the angle is irrational; only a double-precision value is known",
                ),
            },
            System::Product(p) => {
                if let (Some(m), Some(n)) = (p.left.cardinality(), p.right.cardinality()) {
                    if p.left.is_single_cycle() && p.right.is_single_cycle() {
                        if m.gcd(&n) == 1 {
                            return by_period(m * n);
                        }
                        return Verdict::fails(Witness::Nat(1))
                            .with_note(format!("gcd({m}, {n}) > 1: the product is not minimal"));
                    }
                }
                let l = p.left.is_totally_minimal();
                let r = p.right.is_totally_minimal();
                match (l.witness, r.witness) {
                    (Some(Witness::Nat(a)), Some(Witness::Nat(b))) if l.is_fails() && r.is_fails() => {
                        Verdict::fails(Witness::Nat(a.min(b))).with_note("both factors fail")
                    }
                    (Some(w), _) if l.is_fails() => {
                        Verdict::fails(w).with_note("left factor is not totally minimal")
                    }
                    (_, Some(w)) if r.is_fails() => {
                        Verdict::fails(w).with_note("right factor is not totally minimal")
                    }
                    _ => Verdict::inconclusive(
                        "both factors are totally minimal; minimality of the product depends on joint independence",
                    ),
                }
            }
        }
    }

    fn is_single_cycle(&self) -> bool {
        matches!(self, System::Cyclic(_) | System::Odometer(_))
    }
}

impl fmt::Display for System {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            System::Cyclic(c) => write!(f, "cyclic:{}", c.period),
            System::Rotation(r) => {
                let parts: Vec<String> = r.angles.iter().map(|a| a.to_string()).collect();
                write!(f, "rot:{}", parts.join(","))
            }
            System::Odometer(o) => write!(f, "odo:{}^{}", o.base, o.depth),
            System::Skew(s) => write!(f, "skew:{}", s.angle),
            System::Product(p) => write!(f, "prod({},{})", p.left, p.right),
        }
    }
}

const SPEC_PREFIXES: [&str; 5] = ["cyclic:", "rot:", "odo:", "skew:", "prod("];

impl FromStr for System {
    type Err = SystemError;

    /// `cyclic:m`, `rot:α[,β…]` (α is `golden`, `p/q` or a decimal),
    /// `odo:p^d`, `skew:α`, `prod(spec,spec)`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = || SystemError::Parse(s.to_string());
        if let Some(m) = s.strip_prefix("cyclic:") {
            return System::cyclic(m.trim().parse().map_err(|_| bad())?);
        }
        if let Some(rest) = s.strip_prefix("rot:") {
            let angles = rest
                .split(',')
                .map(str::parse)
                .collect::<Result<Vec<Angle>, _>>()?;
            return Ok(System::Rotation(RotationSystem::new(angles)?));
        }
        if let Some(rest) = s.strip_prefix("odo:") {
            let (p, d) = rest.split_once('^').ok_or_else(bad)?;
            return System::odometer(
                p.trim().parse().map_err(|_| bad())?,
                d.trim().parse().map_err(|_| bad())?,
            );
        }
        if let Some(rest) = s.strip_prefix("skew:") {
            return Ok(System::skew(rest.parse()?));
        }
        if let Some(inner) = s.strip_prefix("prod(").and_then(|r| r.strip_suffix(')')) {
            // split at the top-level comma that starts another system spec
            let mut depth = 0i32;
            for (i, ch) in inner.char_indices() {
                match ch {
                    '(' => depth += 1,
                    ')' => depth -= 1,
                    ',' if depth == 0 => {
                        let rest = inner[i + 1..].trim_start();
                        if SPEC_PREFIXES.iter().any(|p| rest.starts_with(p)) {
                            let left: System = inner[..i].parse()?;
                            let right: System = rest.parse()?;
                            return Ok(System::product(left, right));
                        }
                    }
                    _ => {}
                }
            }
            return Err(bad());
        }
        Err(bad())
    }
}

/// `eps_dense`: every cell of `cover` contains one of `states`. Fails with
/// the least empty cell index.
pub fn eps_dense(
    sys: &System,
    states: &[State],
    cover: &GridCover,
) -> Result<Verdict, SystemError> {
    sys.check_cover(cover)?;
    let count = cover
        .cell_count()
        .filter(|&c| c <= 1 << 28)
        .ok_or_else(|| SystemError::TooLarge(sys.to_string()))?;
    let mut hit = vec![false; count as usize];
    for s in states {
        sys.check(s)?;
        hit[sys.cell_unchecked(&cover.layout, s) as usize] = true;
    }
    let empty = hit.iter().filter(|h| !**h).count();
    match hit.iter().position(|h| !*h) {
        None => Ok(Verdict::holds(None).with_note(format!("all {count} cells visited"))),
        Some(cell) => Ok(Verdict::fails(Witness::Nat(cell as u64))
            .with_note(format!("{empty} of {count} cells empty"))),
    }
}

/// Number of empty cells, used to rank start points.
pub(crate) fn empty_cells(
    sys: &System,
    states: &[State],
    cover: &GridCover,
) -> Result<(u64, Option<u64>), SystemError> {
    sys.check_cover(cover)?;
    let count = cover
        .cell_count()
        .filter(|&c| c <= 1 << 28)
        .ok_or_else(|| SystemError::TooLarge(sys.to_string()))?;
    let mut hit = vec![false; count as usize];
    for s in states {
        hit[sys.cell_unchecked(&cover.layout, s) as usize] = true;
    }
    let empty = hit.iter().filter(|h| !**h).count() as u64;
    Ok((empty, hit.iter().position(|h| !*h).map(|c| c as u64)))
}
