//! Finite-window decision procedures for recurrence sequences.
//!
//! Asymptotic notions such as syndeticity, Birkhoff recurrence or being an
//! R-sequence cannot be decided from finitely many integers. Every procedure
//! in this crate therefore works on a [`Window`], a sorted prefix of a subset
//! of the naturals observed up to a declared horizon, and answers with a
//! three-valued [`Verdict`] that only speaks about that window.
//!
//! The crate is organised as follows:
//!
//! - [`intsets`]: syndetic / thick / piecewise syndetic classifiers,
//!   difference sets, finite IP sets and Banach density estimates.
//! - [`systems`]: a small catalog of dynamical systems (cycles, rotations,
//!   odometers, a skew product and products) with closed-form orbits and
//!   ε-grid covers.
//! - [`recurrence`]: Birkhoff and R-sequence tests, exact on the cyclic family
//!   and numeric on rotations, plus Cesàro averages.
//! - [`permpoly`]: prime-field polynomials, Hermite's criterion and the
//!   search for a prime on which an integer polynomial is not surjective.
//! - [`constructions`]: a union of shifted finite IP blocks that hits every
//!   residue class while staying sparse.

pub mod constructions;
pub mod intsets;
pub mod permpoly;
pub mod recurrence;
pub mod seqfile;
pub mod systems;
mod verdict;

pub use intsets::{Window, WindowError};
pub use systems::{GridCover, State, System, SystemError};
pub use verdict::{Status, Verdict, Witness};
