//! Fixtures shared by the benchmarks.

use rseq_core::Window;

/// `{n² : n ≤ max_n}` on `[0, max_n²]`.
pub fn squares(max_n: u64) -> Window {
    Window::from_unsorted((0..=max_n).map(|n| n * n), max_n * max_n)
}

/// Deterministic pseudo-random window of density about `1 / spacing`.
pub fn scattered(horizon: u64, spacing: u64) -> Window {
    let mut state = 0x9e37_79b9_7f4a_7c15u64;
    Window::from_predicate(horizon, |_| {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        state.is_multiple_of(spacing)
    })
}
