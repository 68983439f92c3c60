//! Classifiers against brute-force scans, plus algebraic properties.

use std::collections::BTreeSet;

use num_rational::Ratio;
use proptest::prelude::*;
use rseq_core::intsets::{
    banach_density_estimate, difference_set, finite_ip, is_syndetic, is_thick,
    piecewise_syndetic_certificate, shifted_hit,
};
use rseq_core::{Status, Window};

fn window_strategy(max_horizon: u64) -> impl Strategy<Value = Window> {
    (1..=max_horizon, 0.02f64..0.98).prop_flat_map(|(h, p)| {
        proptest::collection::vec(proptest::bool::weighted(p), (h + 1) as usize)
            .prop_map(move |bits| Window::from_predicate(h, |n| bits[n as usize]))
    })
}

fn interval_union_strategy(max_horizon: u64) -> impl Strategy<Value = Window> {
    (8..=max_horizon).prop_flat_map(|h| {
        proptest::collection::vec((0..=h, 0..=h / 4), 1..6).prop_map(move |ivs| {
            Window::from_unsorted(
                ivs.into_iter().flat_map(|(lo, len)| lo..=(lo + len).min(h)),
                h,
            )
        })
    })
}

fn has_element_in(w: &Window, lo: u64, hi: u64) -> bool {
    (lo..=hi).any(|n| w.contains(n))
}

fn brute_syndetic(w: &Window, g: u64) -> bool {
    let h = w.horizon();
    g > h + 1 || (0..=h + 1 - g).all(|s| has_element_in(w, s, s + g - 1))
}

fn brute_thick(w: &Window, l: u64) -> bool {
    let h = w.horizon();
    l <= h + 1 && (0..=h + 1 - l).any(|s| (s..s + l).all(|n| w.contains(n)))
}

fn brute_pws(w: &Window, g: u64, b: u64) -> bool {
    let h = w.horizon();
    b <= h + 1
        && (0..=h + 1 - b).any(|lo| {
            let hi = lo + b - 1;
            g > b || (lo..=hi + 1 - g).all(|s| has_element_in(w, s, s + g - 1))
        })
}

fn brute_density(w: &Window, l: u64) -> Ratio<u64> {
    let h = w.horizon();
    let best = (0..=h + 1 - l)
        .map(|s| (s..s + l).filter(|&n| w.contains(n)).count() as u64)
        .max()
        .unwrap();
    Ratio::new(best, l)
}

fn brute_differences(w: &Window) -> BTreeSet<u64> {
    let xs = w.elements();
    let mut out = BTreeSet::new();
    for &a in xs {
        for &b in xs {
            if a > b {
                out.insert(a - b);
            }
        }
    }
    out
}

fn brute_subset_sums(gens: &[u64]) -> BTreeSet<u64> {
    let mut out = BTreeSet::new();
    for mask in 1u32..(1 << gens.len()) {
        out.insert(
            gens.iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, g)| g)
                .sum(),
        );
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn syndetic_matches_scan(w in window_strategy(120), g in 1u64..20) {
        let v = is_syndetic(&w, g).unwrap();
        prop_assert_eq!(v.is_holds(), brute_syndetic(&w, g));
        if let Some(rseq_core::Witness::Nat(s)) = v.witness {
            prop_assert!(!has_element_in(&w, s, s + g - 1));
        }
    }

    #[test]
    fn thick_matches_scan(w in window_strategy(120), l in 1u64..12) {
        prop_assert_eq!(is_thick(&w, l).unwrap().is_holds(), brute_thick(&w, l));
    }

    #[test]
    fn pws_matches_scan(w in window_strategy(90), g in 1u64..8, extra in 0u64..30) {
        let b = g + extra;
        let v = piecewise_syndetic_certificate(&w, g, b).unwrap();
        prop_assert_eq!(v.is_holds(), brute_pws(&w, g, b));
        if let Some(rseq_core::Witness::Nat(lo)) = v.witness {
            let piece = w.restrict(lo, lo + b - 1).with_horizon(lo + b - 1).shifted(-(lo as i64));
            prop_assert!(is_syndetic(&piece.with_horizon(b - 1), g).unwrap().is_holds());
        }
    }

    #[test]
    fn pws_monotone_in_parameters(w in window_strategy(90), g in 1u64..6, b in 6u64..30, dg in 0u64..5, db in 0u64..6) {
        if piecewise_syndetic_certificate(&w, g, b).unwrap().is_holds() {
            let b2 = (b - db).max(g + dg);
            prop_assert!(piecewise_syndetic_certificate(&w, g + dg, b2).unwrap().is_holds());
        }
    }

    #[test]
    fn density_matches_scan(w in window_strategy(100), l in 1u64..40) {
        prop_assume!(l <= w.horizon());
        prop_assert_eq!(banach_density_estimate(&w, l).unwrap(), brute_density(&w, l));
    }

    /// The maximal density over length `kL` never exceeds that over `L`:
    /// a `kL` interval splits into `k` intervals of length `L`.
    #[test]
    fn density_of_multiples_does_not_grow(w in interval_union_strategy(150), l in 1u64..20, k in 2u64..5) {
        prop_assume!(k * l <= w.horizon());
        let short = banach_density_estimate(&w, l).unwrap();
        let long = banach_density_estimate(&w, k * l).unwrap();
        prop_assert!(long <= short, "d({}) = {} > d({}) = {}", k * l, long, l, short);
    }

    #[test]
    fn difference_set_matches_pairs(w in window_strategy(200)) {
        let d = difference_set(&w);
        prop_assert_eq!(d.elements().to_vec(), brute_differences(&w).into_iter().collect::<Vec<_>>());
        prop_assert!(!d.contains(0));
    }

    #[test]
    fn difference_set_is_shift_invariant(w in window_strategy(150), c in 0u64..100) {
        let h = w.horizon() + c;
        let moved = w.with_horizon(h).shifted(c as i64);
        prop_assert_eq!(moved.len(), w.len());
        let (a, b) = (difference_set(&moved), difference_set(&w));
        prop_assert_eq!(a.elements(), b.elements());
    }

    #[test]
    fn finite_ip_matches_subsets(gens in proptest::collection::vec(1u64..60, 1..9)) {
        let fs = finite_ip(&gens).unwrap();
        prop_assert_eq!(fs.elements().to_vec(), brute_subset_sums(&gens).into_iter().collect::<Vec<_>>());
        prop_assert_eq!(fs.horizon(), gens.iter().sum::<u64>());
    }

    #[test]
    fn finite_ip_is_monotone(gens in proptest::collection::vec(1u64..60, 1..7), more in proptest::collection::vec(1u64..60, 0..4)) {
        let small = finite_ip(&gens).unwrap();
        let mut all = gens.clone();
        all.extend(more);
        let big = finite_ip(&all).unwrap();
        prop_assert!(small.is_subset_of(&big));
    }

    /// Every run of `L` consecutive elements meets an `L`-syndetic set.
    #[test]
    fn thick_runs_meet_syndetic_sets(w in window_strategy(120), s in window_strategy(120), l in 1u64..10) {
        let h = w.horizon().min(s.horizon());
        let (w, s) = (w.with_horizon(h), s.with_horizon(h));
        if is_thick(&w, l).unwrap().is_holds() && is_syndetic(&s, l).unwrap().is_holds() {
            let xs = w.elements();
            for (i, &start) in xs.iter().enumerate() {
                if i + l as usize <= xs.len() && xs[i + l as usize - 1] == start + l - 1 {
                    prop_assert!(has_element_in(&s, start, start + l - 1));
                }
            }
        }
    }

    #[test]
    fn shifted_hit_matches_scan(a in window_strategy(80), d in window_strategy(80), shift in -20i64..20) {
        let v = shifted_hit(&a, &d, shift);
        let expected = a.iter().find(|&x| {
            let y = x as i64 - shift;
            y >= 0 && d.contains(y as u64)
        });
        prop_assert_eq!(v.is_holds(), expected.is_some());
        if let Some(x) = expected {
            prop_assert_eq!(v.witness, Some(rseq_core::Witness::Nat(x)));
        }
    }
}

/// Maximal density is not monotone in the interval length, even on unions
/// of intervals: `{0, 2}` has density 1/2 at length 2 and 2/3 at length 3.
#[test]
fn density_can_rise_with_length() {
    let w = Window::new(vec![0, 2], 3).unwrap();
    assert_eq!(banach_density_estimate(&w, 2).unwrap(), Ratio::new(1, 2));
    assert_eq!(banach_density_estimate(&w, 3).unwrap(), Ratio::new(2, 3));
}

#[test]
fn classifier_errors_are_reported() {
    let w = Window::interval(0, 10, 10);
    assert!(is_syndetic(&w, 0).is_err());
    assert!(is_thick(&w, 0).is_err());
    assert!(piecewise_syndetic_certificate(&w, 5, 4).is_err());
    assert!(banach_density_estimate(&w, 11).is_err());
    assert_eq!(is_thick(&w, 11).unwrap().status, Status::Holds);
    assert_eq!(is_thick(&w, 12).unwrap().status, Status::Fails);
}
