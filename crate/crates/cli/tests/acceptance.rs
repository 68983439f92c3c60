//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Run with `cargo test -p rseq-cli --test acceptance`.

use std::collections::HashSet;
use std::process::Command;
use std::time::{Duration, Instant};

use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use rseq_core::constructions::{
    build_example_sequence, verify_not_pws, verify_shifted_recurrence, IPBlockSchedule,
};
use rseq_core::intsets::{is_syndetic, is_thick, piecewise_syndetic_certificate};
use rseq_core::permpoly::{
    brute_permutation_check, find_non_surjective_prime, hermite_check, IntPoly, PolyModP,
    PrimeField,
};
use rseq_core::recurrence::{
    birkhoff_window_test, cesaro_average_along, crosscheck_sweep, geometric_cesaro_magnitude,
    product_transitive_finite, r_sequence_cyclic, SweepParams,
};
use rseq_core::systems::{eps_dense, Angle, RotationSystem};
use rseq_core::{seqfile, State, System, Window, Witness};

const SEED: u64 = 0x5eed;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(elapsed: Duration, limit_secs: u64) -> Result<(), String> {
    ensure(
        elapsed <= Duration::from_secs(limit_secs),
        format!("took {elapsed:.1?}, limit {limit_secs}s"),
    )
}

fn hermite_matches_evaluation() -> Outcome {
    let start = Instant::now();
    let mut exhaustive = 0u64;
    for p in [2u64, 3, 5, 7] {
        let field = PrimeField::new(p).unwrap();
        for code in 0..p.pow(4) {
            let coeffs: Vec<u64> = (0..4).map(|i| code / p.pow(i) % p).collect();
            let f = PolyModP::new(field, coeffs);
            ensure(
                hermite_check(&f).permutation == brute_permutation_check(&f).permutation,
                format!("disagreement on {f}"),
            )?;
            exhaustive += 1;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let fields = [PrimeField::new(11).unwrap(), PrimeField::new(13).unwrap()];
    let mut perms = 0;
    for i in 0..10_000 {
        let field = fields[i % 2];
        let p = field.order();
        let degree = rng.gen_range(0..=5);
        let coeffs: Vec<u64> = (0..=degree).map(|_| rng.gen_range(0..p)).collect();
        let f = PolyModP::new(field, coeffs);
        let brute = brute_permutation_check(&f).permutation;
        ensure(
            hermite_check(&f).permutation == brute,
            format!("disagreement on {f}"),
        )?;
        perms += brute as u64;
    }
    within(start.elapsed(), 60)?;
    Ok(format!(
        "{exhaustive} exhaustive + 10000 random polynomials agree ({perms} random permutations)"
    ))
}

fn run_cli(args: &[&str]) -> Result<serde_json::Value, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_rseq"))
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    ensure(
        out.status.success(),
        format!(
            "rseq {args:?} exited {}: {}",
            out.status,
            String::from_utf8_lossy(&out.stderr)
        ),
    )?;
    serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())
}

fn squares_example() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let path = dir.path().join("squares.txt");
    let squares = Window::from_unsorted((0..=100u64).map(|n| n * n), 10_000);
    std::fs::write(&path, seqfile::render(&squares)).map_err(|e| e.to_string())?;
    let path = path.to_str().unwrap();

    let report = run_cli(&["recurrence", path, "cyclic:<=3"])?;
    ensure(
        report["verdict"] == "fails",
        format!("verdict {}", report["verdict"]),
    )?;
    ensure(
        report["witness"] == serde_json::json!([3, 2]),
        format!("witness {}", report["witness"]),
    )?;

    let prime = run_cli(&["permpoly", "find-prime", "x^2", "--cap", "100"])?;
    ensure(
        prime["p"] == 3 && prime["missing"] == 2,
        format!("p = {}, missing = {}", prime["p"], prime["missing"]),
    )?;
    Ok("squares fail at (m, r) = (3, 2); x^2 misses 2 mod 3".into())
}

fn random_int_poly(rng: &mut ChaCha8Rng) -> IntPoly {
    let degree = rng.gen_range(2..=5);
    let mut coeffs: Vec<i64> = (0..degree).map(|_| rng.gen_range(-9..=9)).collect();
    let lead = loop {
        let c = rng.gen_range(-9..=9);
        if c != 0 {
            break c;
        }
    };
    coeffs.push(lead);
    IntPoly::from_i64(&coeffs)
}

fn non_surjective_primes_replay() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut largest = 0;
    for _ in 0..50 {
        let f = random_int_poly(&mut rng);
        let w = find_non_surjective_prime(&f, 10_000).map_err(|e| format!("{f}: {e}"))?;
        let image = brute_permutation_check(&f.reduce(PrimeField::new(w.p).unwrap())).image;
        ensure(
            (image.len() as u64) < w.p && !image.contains(&w.missing),
            format!("{f}: p = {}, residue {} does not replay", w.p, w.missing),
        )?;
        largest = largest.max(w.p);
    }
    within(start.elapsed(), 60)?;
    Ok(format!(
        "50 polynomials, all witnesses replay, largest p = {largest}"
    ))
}

fn ip_block_example() -> Outcome {
    let start = Instant::now();
    let schedule = IPBlockSchedule::default_with_blocks(30).map_err(|e| e.to_string())?;
    let example = build_example_sequence(&schedule).map_err(|e| e.to_string())?;
    let w = &example.window;
    ensure(
        w.horizon() >= 100_000,
        format!("horizon {} < 10^5", w.horizon()),
    )?;
    for g in 1..=10 {
        let v = verify_not_pws(w, g, 100).map_err(|e| e.to_string())?;
        ensure(v.is_holds(), format!("gap bound {g}: {v}"))?;
    }
    let v = verify_shifted_recurrence(w, 20, -10..=10).map_err(|e| e.to_string())?;
    ensure(v.is_holds(), format!("shifted recurrence: {v}"))?;
    within(start.elapsed(), 60)?;
    Ok(format!(
        "horizon {}, {} elements: not PWS for g <= 10, b = 100; all shifts recur mod m <= 20",
        w.horizon(),
        w.len()
    ))
}

fn crosscheck_sweep_agrees() -> Outcome {
    let start = Instant::now();
    let params = SweepParams {
        seed: SEED,
        windows: 500,
        horizon: 10_000,
        max_period: 12,
        shifts: (-6, 6),
    };
    let out = crosscheck_sweep(&params).map_err(|e| e.to_string())?;
    ensure(out.checked == 500, format!("checked {}", out.checked))?;
    ensure(
        out.disagreements.is_empty(),
        format!("disagreements on windows {:?}", out.disagreements),
    )?;
    ensure(
        out.inconclusive.is_empty(),
        format!("inconclusive on windows {:?}", out.inconclusive),
    )?;
    within(start.elapsed(), 120)?;
    Ok(format!(
        "500 windows agree ({} recurrent for every m <= 12, {} not)",
        out.all_hold,
        out.checked - out.all_hold
    ))
}

fn product_transitivity() -> Outcome {
    let mut transitive = 0;
    for m in 1..=30u64 {
        for n in 1..=30u64 {
            // independent enumeration of the orbit of (0, 0)
            let mut seen = HashSet::new();
            let (mut a, mut b) = (0u64, 0u64);
            while seen.insert((a, b)) {
                a = (a + 1) % m;
                b = (b + 1) % n;
            }
            let full = seen.len() as u64 == m * n;
            ensure(full == (m.gcd(&n) == 1), format!("m = {m}, n = {n}"))?;
            let t = product_transitive_finite(m, n).map_err(|e| e.to_string())?;
            ensure(
                t.consistent && t.transitive == full && t.orbit_size == seen.len() as u64,
                format!("library disagrees at m = {m}, n = {n}"),
            )?;
            transitive += full as u32;
        }
    }
    Ok(format!(
        "900 pairs, {transitive} transitive, all match gcd = 1"
    ))
}

fn golden_squares_equidistribute() -> Outcome {
    let golden = Angle::golden();
    let sys = System::rotation(golden.clone());
    let squares = Window::from_unsorted((0..=10_000u64).map(|n| n * n), 100_000_000);
    let orbit = sys
        .orbit_along(&State::Torus(vec![0.0]), &squares)
        .map_err(|e| e.to_string())?;
    let cover = sys.cover(0.05).map_err(|e| e.to_string())?;
    let dense = eps_dense(&sys, &orbit, &cover).map_err(|e| e.to_string())?;
    ensure(dense.is_holds(), format!("squares orbit: {dense}"))?;

    let n = 10_000u64;
    let interval = Window::interval(1, n, n);
    let averages = cesaro_average_along(&interval, &RotationSystem::circle(golden.clone()), 1, 0.0)
        .map_err(|e| e.to_string())?;
    let numeric = *averages.last().unwrap();
    let closed = geometric_cesaro_magnitude(&golden, 1, n);
    let rel = (numeric - closed).abs() / closed;
    ensure(
        numeric < 0.05,
        format!("Cesàro magnitude {numeric} at N = {n}"),
    )?;
    ensure(
        rel <= 1e-9,
        format!("relative gap {rel:e} to the geometric sum"),
    )?;
    Ok(format!(
        "squares ε-dense at ε = 0.05; |avg| = {numeric:.3e} at N = 10^4, rel. gap {rel:.1e}"
    ))
}

fn trivial_falsifiers() -> Outcome {
    let h = 1000;
    let odds = Window::from_predicate(h, |n| n % 2 == 1);
    let c2 = System::cyclic(2).unwrap();
    let v = birkhoff_window_test(&odds, &c2, 0.5, 1.0).map_err(|e| e.to_string())?;
    ensure(v.is_fails(), format!("odds on Z/2: {v}"))?;

    let evens = Window::from_predicate(h, |n| n % 2 == 0);
    let v = r_sequence_cyclic(&evens, 50)
        .map_err(|e| e.to_string())?
        .verdict;
    ensure(
        v.witness == Some(Witness::Pair(2, 1)),
        format!("evens: {v}"),
    )?;

    let full = Window::interval(0, h, h);
    let r = r_sequence_cyclic(&full, 50).map_err(|e| e.to_string())?;
    ensure(r.verdict.is_holds(), format!("interval: {}", r.verdict))?;
    for m in 1..=50 {
        let v = birkhoff_window_test(&full, &System::cyclic(m).unwrap(), 0.5, 1.0)
            .map_err(|e| e.to_string())?;
        ensure(v.is_holds(), format!("interval Birkhoff on Z/{m}: {v}"))?;
    }
    let checks = [
        ("syndetic", is_syndetic(&full, 1)),
        ("thick", is_thick(&full, 50)),
        (
            "piecewise syndetic",
            piecewise_syndetic_certificate(&full, 1, 50),
        ),
    ];
    for (name, v) in checks {
        let v = v.map_err(|e| e.to_string())?;
        ensure(v.is_holds(), format!("interval {name}: {v}"))?;
    }
    let v = verify_shifted_recurrence(&full, 50, -10..=10).map_err(|e| e.to_string())?;
    ensure(v.is_holds(), format!("interval shifts: {v}"))?;
    Ok("odds fail Birkhoff on Z/2; evens fail at (2, 1); [0, 1000] passes all m <= 50".into())
}

fn main() {
    let criteria: [Criterion; 8] = [
        (
            "hermite criterion matches evaluation",
            hermite_matches_evaluation,
        ),
        ("squares example via the CLI", squares_example),
        ("non-surjective primes replay", non_surjective_primes_replay),
        ("IP-block sequence, both halves", ip_block_example),
        ("three-way cyclic crosscheck", crosscheck_sweep_agrees),
        ("product transitivity", product_transitivity),
        (
            "golden-rotation equidistribution",
            golden_squares_equidistribute,
        ),
        ("trivial falsifiers", trivial_falsifiers),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS [{}] {name} ({secs:.2}s): {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL [{}] {name} ({secs:.2}s): {why}", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
