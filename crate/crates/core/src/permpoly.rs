//! Polynomials over prime fields and permutation tests.
//!
//! [`hermite_check`] decides whether a polynomial permutes `F_p` from the
//! reductions of its powers modulo `x^p − x`; [`brute_permutation_check`]
//! evaluates it at every point. The brute-force route is the reference: the
//! two are required to agree on every input.
//!
//! [`find_non_surjective_prime`] takes an integer polynomial of degree
//! `a ≥ 2` and scans primes `p ≡ 1 (mod a)` with `p > |c_a|` for one on
//! which the induced map on `Z/p` is not onto.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermPolyError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("prime {0} is too large for desk-scale field arithmetic")]
    FieldTooLarge(u64),
    #[error("polynomials live over different fields (F_{0} and F_{1})")]
    FieldMismatch(u64, u64),
    #[error("cannot parse polynomial `{input}`: {reason}")]
    Parse { input: String, reason: String },
    #[error("degree {0} is below 2; linear and constant polynomials are excluded")]
    DegreeTooSmall(usize),
    #[error("prime cap {cap} is below degree + 2 = {needed}")]
    CapTooSmall { cap: u64, needed: u64 },
    #[error("no prime p ≡ 1 (mod {degree}) with |leading| < p ≤ {cap} gives a proper image; raise the cap")]
    CapExceeded { degree: usize, cap: u64 },
}

/// Trial division; enough for the primes used here.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) || n.is_multiple_of(3) {
        return false;
    }
    let mut d = 5u64;
    while d * d <= n {
        if n.is_multiple_of(d) || n.is_multiple_of(d + 2) {
            return false;
        }
        d += 6;
    }
    true
}

/// `F_p` for a prime `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    /// Exhaustive checks are `O(p²)`, so `p` is capped at 2^20.
    pub const MAX_PRIME: u64 = 1 << 20;

    pub fn new(p: u64) -> Result<Self, PermPolyError> {
        if !is_prime(p) {
            return Err(PermPolyError::NotPrime(p));
        }
        if p > Self::MAX_PRIME {
            return Err(PermPolyError::FieldTooLarge(p));
        }
        Ok(PrimeField { p })
    }

    pub fn order(&self) -> u64 {
        self.p
    }

    fn add(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.p
    }

    fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }
}

/// Polynomial over `F_p`; `coeffs[i]` is the coefficient of `x^i`, with
/// trailing zeros trimmed.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PolyModP {
    field: PrimeField,
    coeffs: Vec<u64>,
}

impl PolyModP {
    /// Coefficients are reduced into `[0, p)`.
    pub fn new(field: PrimeField, coeffs: Vec<u64>) -> Self {
        let mut poly = PolyModP {
            field,
            coeffs: coeffs.into_iter().map(|c| c % field.p).collect(),
        };
        poly.trim();
        poly
    }

    pub fn monomial(field: PrimeField, coeff: u64, exponent: usize) -> Self {
        let mut coeffs = vec![0; exponent + 1];
        coeffs[exponent] = coeff;
        PolyModP::new(field, coeffs)
    }

    pub fn one(field: PrimeField) -> Self {
        PolyModP::new(field, vec![1])
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn eval(&self, x: u64) -> u64 {
        let x = x % self.field.p;
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| self.field.add(self.field.mul(acc, x), c))
    }

    pub fn mul(&self, other: &PolyModP) -> Result<PolyModP, PermPolyError> {
        if self.field != other.field {
            return Err(PermPolyError::FieldMismatch(self.field.p, other.field.p));
        }
        if self.is_zero() || other.is_zero() {
            return Ok(PolyModP::new(self.field, Vec::new()));
        }
        let p = self.field.p;
        let mut out = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = (out[i + j] + a * b) % p;
            }
        }
        Ok(PolyModP::new(self.field, out))
    }

    /// `f^k mod (x^p − x)` by square-and-multiply, reducing after every
    /// product so the degree stays below `p`.
    pub fn pow_reduced(&self, mut k: u64) -> PolyModP {
        let mut result = PolyModP::one(self.field);
        let mut base = reduce_mod_field_poly(self);
        while k > 0 {
            if k & 1 == 1 {
                result = reduce_mod_field_poly(&result.mul(&base).expect("same field"));
            }
            k >>= 1;
            if k > 0 {
                base = reduce_mod_field_poly(&base.mul(&base).expect("same field"));
            }
        }
        result
    }
}

impl fmt::Display for PolyModP {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = format_terms(self.coeffs.iter().map(|&c| c as i128));
        write!(f, "{terms} over F_{}", self.field.p)
    }
}

fn format_terms(coeffs: impl DoubleEndedIterator<Item = i128> + ExactSizeIterator) -> String {
    let n = coeffs.len();
    let mut out = String::new();
    for (rev_i, c) in coeffs.rev().enumerate() {
        let e = n - 1 - rev_i;
        if c == 0 {
            continue;
        }
        let sign = if c < 0 { "-" } else { "+" };
        let mag = c.unsigned_abs();
        if out.is_empty() {
            if c < 0 {
                out.push('-');
            }
        } else {
            out.push_str(&format!(" {sign} "));
        }
        let coef = if mag == 1 && e > 0 {
            String::new()
        } else {
            mag.to_string()
        };
        match e {
            0 => out.push_str(&coef),
            1 => out.push_str(&format!("{coef}x")),
            _ => out.push_str(&format!("{coef}x^{e}")),
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Reduction modulo `x^p − x`: `x^e ↦ x^r` with `r ∈ [1, p−1]`,
/// `r ≡ e (mod p−1)` for `e ≥ 1`; the constant term is kept.
pub fn reduce_mod_field_poly(f: &PolyModP) -> PolyModP {
    let p = f.field.p;
    let top = (p - 1) as usize;
    if f.coeffs.len() <= top + 1 {
        return f.clone();
    }
    let mut out = vec![0u64; top + 1];
    for (e, &c) in f.coeffs.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let r = if e == 0 { 0 } else { 1 + (e - 1) % top };
        out[r] = (out[r] + c) % p;
    }
    PolyModP::new(f.field, out)
}

/// Why Hermite's criterion accepted or rejected a polynomial.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum HermiteEvidence {
    /// Both conditions hold.
    Satisfied,
    /// `f^(p−1) mod (x^p − x)` is not monic of degree `p − 1`.
    TopPower { degree: Option<usize>, leading: u64 },
    /// `f^k mod (x^p − x)` has degree `p − 1` for some `1 ≤ k ≤ p − 2`.
    LowPower { k: u64, degree: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HermiteOutcome {
    pub permutation: bool,
    pub evidence: HermiteEvidence,
}

/// Hermite's criterion over `F_p`: `f` permutes `F_p` iff
///
/// 1. `f^(p−1) mod (x^p − x)` is monic of degree `p − 1`, and
/// 2. for every `1 ≤ k ≤ p − 2` with `p ∤ k`, `f^k mod (x^p − x)` has
///    degree at most `p − 2`.
pub fn hermite_check(f: &PolyModP) -> HermiteOutcome {
    let field = f.field;
    let p = field.p;
    let full = (p - 1) as usize;

    let top = f.pow_reduced(p - 1);
    if top.degree() != Some(full) || top.leading() != 1 {
        return HermiteOutcome {
            permutation: false,
            evidence: HermiteEvidence::TopPower {
                degree: top.degree(),
                leading: top.leading(),
            },
        };
    }

    let base = reduce_mod_field_poly(f);
    let mut power = PolyModP::one(field);
    for k in 1..=p.saturating_sub(2) {
        power = reduce_mod_field_poly(&power.mul(&base).expect("same field"));
        if k % p == 0 {
            continue;
        }
        if let Some(d) = power.degree() {
            if d > full - 1 {
                return HermiteOutcome {
                    permutation: false,
                    evidence: HermiteEvidence::LowPower { k, degree: d },
                };
            }
        }
    }
    HermiteOutcome {
        permutation: true,
        evidence: HermiteEvidence::Satisfied,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BruteOutcome {
    pub permutation: bool,
    /// Sorted distinct values of `f` on `F_p`.
    pub image: Vec<u64>,
}

pub fn brute_permutation_check(f: &PolyModP) -> BruteOutcome {
    let p = f.field.p;
    let image: BTreeSet<u64> = (0..p).map(|x| f.eval(x)).collect();
    BruteOutcome {
        permutation: image.len() as u64 == p,
        image: image.into_iter().collect(),
    }
}

/// Polynomial with arbitrary-precision integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        let mut poly = IntPoly { coeffs };
        while poly.coeffs.last().is_some_and(Zero::is_zero) {
            poly.coeffs.pop();
        }
        poly
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        IntPoly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    /// Image in `F_p[x]`, coefficients mapped into `[0, p)`.
    pub fn reduce(&self, field: PrimeField) -> PolyModP {
        let p = BigInt::from(field.p);
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| c.mod_floor(&p).to_u64().expect("residue fits in u64"))
            .collect();
        PolyModP::new(field, coeffs)
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(small) = self
            .coeffs
            .iter()
            .map(|c| c.to_i128())
            .collect::<Option<Vec<i128>>>()
        {
            return f.write_str(&format_terms(small.into_iter()));
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(e, c)| format!("({c})x^{e}"))
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

impl FromStr for IntPoly {
    type Err = PermPolyError;

    /// Sums of terms `c`, `c*x`, `cx`, `x^e`, `c x^e`, `-x^e`, with
    /// optional spaces. Repeated exponents are added.
    fn from_str(input: &str) -> Result<Self, Self::Err> {
        let err = |reason: &str| PermPolyError::Parse {
            input: input.to_string(),
            reason: reason.to_string(),
        };
        let s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(err("empty input"));
        }
        let mut terms = Vec::new();
        let mut start = 0;
        for (i, ch) in s.char_indices() {
            if (ch == '+' || ch == '-') && i > start && !s[..i].ends_with('^') {
                terms.push(&s[start..i]);
                start = i;
            }
        }
        terms.push(&s[start..]);

        let mut coeffs: Vec<BigInt> = Vec::new();
        for term in terms {
            let (negative, body) = match term.as_bytes().first() {
                Some(b'-') => (true, &term[1..]),
                Some(b'+') => (false, &term[1..]),
                _ => (false, term),
            };
            if body.is_empty() {
                return Err(err("dangling sign"));
            }
            let (coef, exponent) = match body.find('x') {
                None => (
                    body.parse::<BigInt>().map_err(|_| err("bad constant"))?,
                    0usize,
                ),
                Some(pos) => {
                    let coef_text = body[..pos].trim_end_matches('*');
                    let coef = if coef_text.is_empty() {
                        BigInt::from(1)
                    } else {
                        coef_text
                            .parse::<BigInt>()
                            .map_err(|_| err("bad coefficient"))?
                    };
                    let rest = &body[pos + 1..];
                    let exponent = if rest.is_empty() {
                        1
                    } else {
                        let e = rest.strip_prefix('^').ok_or_else(|| err("expected `^`"))?;
                        e.parse::<usize>().map_err(|_| err("bad exponent"))?
                    };
                    (coef, exponent)
                }
            };
            if exponent > 1 << 16 {
                return Err(err("exponent too large"));
            }
            if coeffs.len() <= exponent {
                coeffs.resize(exponent + 1, BigInt::zero());
            }
            let coef = if negative { -coef } else { coef };
            coeffs[exponent] += coef;
        }
        Ok(IntPoly::new(coeffs))
    }
}

/// A prime on which an integer polynomial is not onto, with replay data.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NonSurjectiveWitness {
    pub p: u64,
    /// Least residue outside the image.
    pub missing: u64,
    pub image_size: u64,
    /// Candidate primes examined, this one included.
    pub candidates: u64,
}

pub fn find_non_surjective_prime(
    f: &IntPoly,
    prime_cap: u64,
) -> Result<NonSurjectiveWitness, PermPolyError> {
    let a = match f.degree() {
        Some(d) if d >= 2 => d,
        other => return Err(PermPolyError::DegreeTooSmall(other.unwrap_or(0))),
    };
    let needed = a as u64 + 2;
    if prime_cap < needed {
        return Err(PermPolyError::CapTooSmall {
            cap: prime_cap,
            needed,
        });
    }
    let lead = f.leading().abs();
    let mut candidates = 0;
    let mut p = a as u64 + 1;
    while p <= prime_cap {
        if is_prime(p) && BigInt::from(p) > lead {
            candidates += 1;
            let field = PrimeField::new(p)?;
            let image = brute_permutation_check(&f.reduce(field)).image;
            if (image.len() as u64) < p {
                let missing = image
                    .iter()
                    .enumerate()
                    .find(|(i, v)| *i as u64 != **v)
                    .map(|(i, _)| i as u64)
                    .unwrap_or(image.len() as u64);
                return Ok(NonSurjectiveWitness {
                    p,
                    missing,
                    image_size: image.len() as u64,
                    candidates,
                });
            }
        }
        p += a as u64;
    }
    Err(PermPolyError::CapExceeded {
        degree: a,
        cap: prime_cap,
    })
}
