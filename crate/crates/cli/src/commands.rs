use std::fs;
use std::io::Read as _;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use serde::Serialize;

use rseq_core::constructions::{
    build_example_sequence, verify_not_pws, verify_shifted_recurrence, BlockRecord,
    IPBlockSchedule, ScheduleSpec,
};
use rseq_core::intsets::{
    banach_density_estimate, is_syndetic, is_thick, piecewise_syndetic_certificate,
};
use rseq_core::permpoly::{
    brute_permutation_check, find_non_surjective_prime, hermite_check, BruteOutcome,
    HermiteOutcome, IntPoly, PrimeField,
};
use rseq_core::recurrence::{
    birkhoff_window_test, crosscheck_sweep, cyclic_crosscheck, product_transitive_finite,
    r_sequence_cyclic, r_sequence_metric, shift_family_test, CrosscheckRow, RecurrenceError,
    SweepOutcome, SweepParams, SystemEntry,
};
use rseq_core::{seqfile, Status, System, Verdict, Window, Witness};

use crate::config::RunConfig;
use crate::{render, Cli, Command, ConstructCommand, Format, PermpolyCommand};

/// Malformed command-line value; exits with status 2 like clap's own errors.
#[derive(Debug)]
pub struct UsageError(pub String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

type Tester = Box<dyn Fn(&Window) -> Result<Verdict, RecurrenceError>>;

fn parse_system(spec: &str) -> Result<System> {
    spec.parse::<System>()
        .map_err(|e| UsageError(format!("unknown system spec `{spec}`: {e}")).into())
}

#[derive(Serialize)]
struct Report<T: Serialize> {
    config: RunConfig,
    #[serde(flatten)]
    body: T,
}

#[derive(Serialize)]
struct SequenceInfo {
    source: String,
    horizon: u64,
    count: usize,
}

pub fn run(cli: &Cli) -> Result<()> {
    match &cli.command {
        Command::Classify(args) => classify(cli, args),
        Command::Recurrence(args) => recurrence(cli, args),
        Command::Permpoly(cmd) => permpoly(cli, cmd),
        Command::Construct(ConstructCommand::Example(args)) => construct_example(cli, args),
        Command::Product(args) => product(cli, args),
        Command::Crosscheck(args) => crosscheck(cli, args),
    }
}

fn emit<T: Serialize>(
    format: Format,
    config: RunConfig,
    body: T,
    out: Option<&Path>,
) -> Result<()> {
    let report = Report { config, body };
    let text = match format {
        Format::Json => serde_json::to_string_pretty(&report)? + "\n",
        Format::Text => render::to_text(&serde_json::to_value(&report)?),
    };
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn read_sequence(path: &Path, horizon: Option<u64>) -> Result<(Window, SequenceInfo)> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .context("reading stdin")?;
        s
    } else {
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?
    };
    let mut w = seqfile::parse(&text).with_context(|| format!("parsing {}", path.display()))?;
    if let Some(h) = horizon {
        w = w.with_horizon(h);
    }
    let info = SequenceInfo {
        source: path.display().to_string(),
        horizon: w.horizon(),
        count: w.len(),
    };
    Ok((w, info))
}

fn path_string(p: &Option<PathBuf>) -> Option<String> {
    p.as_ref().map(|p| p.display().to_string())
}

#[derive(Serialize)]
struct DensityReport {
    interval_length: u64,
    value: String,
    approx: f64,
}

#[derive(Serialize)]
struct ClassifyBody {
    sequence: SequenceInfo,
    syndetic: Verdict,
    thick: Verdict,
    piecewise_syndetic: Verdict,
    density: Option<DensityReport>,
}

fn classify(cli: &Cli, args: &crate::ClassifyArgs) -> Result<()> {
    let (w, sequence) = read_sequence(&args.input.path, args.input.horizon)?;
    let density_length = args.density_length.unwrap_or(w.horizon().clamp(1, 1000));
    let mut config = RunConfig::new("classify", cli.seed)
        .option("gap", args.gap)
        .option("run", args.run)
        .option("block", args.block)
        .option("density_length", density_length);
    config.inputs = vec![sequence.source.clone()];
    config.horizon = args.input.horizon;
    config.out = path_string(&args.input.out);

    let density = if density_length <= w.horizon() {
        let d = banach_density_estimate(&w, density_length)?;
        Some(DensityReport {
            interval_length: density_length,
            value: d.to_string(),
            approx: *d.numer() as f64 / *d.denom() as f64,
        })
    } else {
        None
    };
    let block = args.block.max(args.gap);
    let body = ClassifyBody {
        syndetic: is_syndetic(&w, args.gap)?,
        thick: is_thick(&w, args.run)?,
        piecewise_syndetic: piecewise_syndetic_certificate(&w, args.gap, block)?,
        density,
        sequence,
    };
    emit(cli.format, config, body, args.input.out.as_deref())
}

#[derive(Serialize)]
struct RecurrenceBody {
    sequence: SequenceInfo,
    family: String,
    test: &'static str,
    verdict: Status,
    witness: Option<Witness>,
    note: String,
    per_system: Vec<SystemEntry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    shift_family: Option<Verdict>,
}

enum Family {
    Cyclic(u64),
    Single(System),
}

fn parse_family(spec: &str, max_period: Option<u64>) -> Result<Family> {
    let spec = spec.trim();
    if let Some(bound) = spec.strip_prefix("cyclic:<=") {
        let m: u64 = bound
            .trim()
            .parse()
            .map_err(|_| UsageError(format!("bad period bound in `{spec}`")))?;
        if m == 0 {
            return Err(UsageError("period bound must be at least 1".into()).into());
        }
        return Ok(Family::Cyclic(m));
    }
    if spec == "cyclic" {
        return Ok(Family::Cyclic(max_period.unwrap_or(20)));
    }
    Ok(Family::Single(parse_system(spec)?))
}

fn recurrence(cli: &Cli, args: &crate::RecurrenceArgs) -> Result<()> {
    let (w, sequence) = read_sequence(&args.input.path, args.input.horizon)?;
    let family = parse_family(&args.family, args.max_period)?;
    let mut config = RunConfig::new("recurrence", cli.seed)
        .option("family", &args.family)
        .option("birkhoff", args.birkhoff)
        .option("start_resolution", args.start_resolution);
    config.inputs = vec![sequence.source.clone()];
    config.horizon = args.input.horizon;
    config.shifts = args.shifts;
    config.out = path_string(&args.input.out);

    let (test, report_verdict, per_system, family_name, tester): (
        &'static str,
        Verdict,
        Vec<SystemEntry>,
        String,
        Tester,
    ) = match family {
        Family::Cyclic(m) => {
            config.max_period = Some(m);
            if args.birkhoff {
                bail!("--birkhoff needs a single system, not a cyclic family");
            }
            let report = r_sequence_cyclic(&w, m)?;
            (
                "r_sequence",
                report.verdict,
                report.per_system,
                report.family,
                Box::new(move |s: &Window| r_sequence_cyclic(s, m).map(|r| r.verdict)),
            )
        }
        Family::Single(sys) => {
            config.eps = Some(args.eps);
            let (eps, res) = (args.eps, args.start_resolution);
            if args.birkhoff {
                let v = birkhoff_window_test(&w, &sys, eps, res)?;
                let name = format!("{sys} eps={eps}");
                let entry = SystemEntry {
                    system: sys.to_string(),
                    verdict: v.clone(),
                    covered: 0,
                    cells: 0,
                    start: None,
                };
                (
                    "birkhoff",
                    v,
                    vec![entry],
                    name,
                    Box::new(move |s: &Window| birkhoff_window_test(s, &sys, eps, res)),
                )
            } else {
                let report = r_sequence_metric(&w, &sys, eps, res)?;
                (
                    "r_sequence",
                    report.verdict,
                    report.per_system,
                    report.family,
                    Box::new(move |s: &Window| {
                        r_sequence_metric(s, &sys, eps, res).map(|r| r.verdict)
                    }),
                )
            }
        }
    };
    let shift_family = match args.shifts {
        Some(range) => Some(shift_family_test(&w, range.range(), tester)?),
        None => None,
    };
    let body = RecurrenceBody {
        sequence,
        family: family_name,
        test,
        verdict: report_verdict.status,
        witness: report_verdict.witness,
        note: report_verdict.note,
        per_system,
        shift_family,
    };
    emit(cli.format, config, body, args.input.out.as_deref())
}

#[derive(Serialize)]
struct CheckBody {
    polynomial: String,
    p: u64,
    reduced: Vec<u64>,
    hermite: HermiteOutcome,
    brute: BruteOutcome,
    agree: bool,
}

#[derive(Serialize)]
struct FindPrimeBody {
    polynomial: String,
    degree: usize,
    p: u64,
    missing: u64,
    image_size: u64,
    candidates: u64,
}

fn permpoly(cli: &Cli, cmd: &PermpolyCommand) -> Result<()> {
    match cmd {
        PermpolyCommand::Check { poly, p, out } => {
            let f: IntPoly = poly.parse()?;
            let field = PrimeField::new(*p)?;
            let g = f.reduce(field);
            let hermite = hermite_check(&g);
            let brute = brute_permutation_check(&g);
            let mut config = RunConfig::new("permpoly check", cli.seed).option("p", p);
            config.inputs = vec![poly.clone()];
            config.out = path_string(out);
            let body = CheckBody {
                polynomial: f.to_string(),
                p: *p,
                reduced: g.coeffs().to_vec(),
                agree: hermite.permutation == brute.permutation,
                hermite,
                brute,
            };
            emit(cli.format, config, body, out.as_deref())
        }
        PermpolyCommand::FindPrime { poly, cap, out } => {
            let f: IntPoly = poly.parse()?;
            let w = find_non_surjective_prime(&f, *cap)?;
            let mut config = RunConfig::new("permpoly find-prime", cli.seed);
            config.inputs = vec![poly.clone()];
            config.prime_cap = Some(*cap);
            config.out = path_string(out);
            let body = FindPrimeBody {
                polynomial: f.to_string(),
                degree: f.degree().unwrap_or(0),
                p: w.p,
                missing: w.missing,
                image_size: w.image_size,
                candidates: w.candidates,
            };
            emit(cli.format, config, body, out.as_deref())
        }
    }
}

#[derive(Serialize)]
struct ExampleBody {
    horizon: u64,
    count: usize,
    block_count: usize,
    spacing_law: bool,
    blocks_match_subset_sums: bool,
    not_piecewise_syndetic: Verdict,
    per_gap: Vec<Verdict>,
    shifted_recurrence: Verdict,
    blocks: Vec<BlockRecord>,
}

fn construct_example(cli: &Cli, args: &crate::ExampleArgs) -> Result<()> {
    let mut config = RunConfig::new("construct example", cli.seed)
        .option("gap", args.gap)
        .option("block", args.block);
    let schedule = match &args.schedule {
        Some(path) => {
            config.inputs = vec![path.display().to_string()];
            let text =
                fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            ScheduleSpec::from_json(&text)?.into_schedule()?
        }
        None => {
            config = config.option("blocks", args.blocks);
            IPBlockSchedule::default_with_blocks(args.blocks)?
        }
    };
    config.max_period = Some(args.max_period);
    config.shifts = Some(args.shifts);
    config.out = path_string(&args.out);
    config = config.option("report", path_string(&args.report));

    let example = build_example_sequence(&schedule)?;
    let w = &example.window;
    if let Some(path) = &args.out {
        let comment = format!(
            "IP-block sequence, {} blocks, horizon {}",
            schedule.block_count(),
            w.horizon()
        );
        fs::write(path, seqfile::render_with_comments(w, &[comment]))
            .with_context(|| format!("writing {}", path.display()))?;
    }

    let block = args.block.max(args.gap);
    let per_gap = (1..=args.gap)
        .map(|g| verify_not_pws(w, g, block))
        .collect::<Result<Vec<_>, _>>()?;
    let not_piecewise_syndetic = match per_gap.iter().zip(1u64..).find(|(v, _)| !v.is_holds()) {
        Some((v, g)) => Verdict {
            status: v.status,
            witness: v.witness,
            note: format!("gap bound {g}: {}", v.note),
        },
        None => Verdict::holds(None).with_note(format!(
            "no interval of length {block} is g-syndetic for any g <= {}",
            args.gap
        )),
    };
    let mut shifted_recurrence =
        verify_shifted_recurrence(w, args.max_period, args.shifts.range())?;
    let missing = schedule.missing_shifts(args.max_period);
    if !missing.is_empty() && shifted_recurrence.is_holds() {
        let note = format!(
            "{}; shift values {:?} never occur in the schedule",
            shifted_recurrence.note, missing
        );
        shifted_recurrence = shifted_recurrence.with_note(note);
    }
    let body = ExampleBody {
        horizon: w.horizon(),
        count: w.len(),
        block_count: example.blocks.len(),
        spacing_law: example.spacing_law_holds(),
        blocks_match_subset_sums: example.blocks_match_subset_sums(),
        not_piecewise_syndetic,
        per_gap,
        shifted_recurrence,
        blocks: example.blocks,
    };
    emit(cli.format, config, body, args.report.as_deref())
}

#[derive(Serialize)]
struct ProductBody {
    left: String,
    right: String,
    left_period: u64,
    right_period: u64,
    verdict: Verdict,
    gcd_says_transitive: bool,
    orbit_size: u64,
    state_count: u64,
    enumeration_agrees: bool,
}

fn single_cycle_period(sys: &System) -> Option<u64> {
    match sys {
        System::Cyclic(_) | System::Odometer(_) => sys.cardinality(),
        _ => None,
    }
}

fn product(cli: &Cli, args: &crate::ProductArgs) -> Result<()> {
    let left = parse_system(&args.left)?;
    let right = parse_system(&args.right)?;
    let (Some(m), Some(n)) = (single_cycle_period(&left), single_cycle_period(&right)) else {
        bail!("product transitivity is decided for cyclic and odometer factors only");
    };
    let mut config = RunConfig::new("product", cli.seed);
    config.inputs = vec![args.left.clone(), args.right.clone()];
    config.out = path_string(&args.out);
    let t = product_transitive_finite(m, n)?;
    let verdict = if t.orbit_size == m * n {
        Verdict::holds(None).with_note(format!("orbit of the origin covers all {} states", m * n))
    } else {
        Verdict::fails(Witness::Nat(t.orbit_size)).with_note(format!(
            "orbit of the origin has {} of {} states",
            t.orbit_size,
            m * n
        ))
    };
    let body = ProductBody {
        left: left.to_string(),
        right: right.to_string(),
        left_period: m,
        right_period: n,
        verdict,
        gcd_says_transitive: t.transitive,
        orbit_size: t.orbit_size,
        state_count: m * n,
        enumeration_agrees: t.consistent,
    };
    emit(cli.format, config, body, args.out.as_deref())
}

#[derive(Serialize)]
struct CrosscheckBody {
    sequence: SequenceInfo,
    verdict: Verdict,
    rows: Vec<CrosscheckRow>,
}

#[derive(Serialize)]
struct SweepBody {
    sweep: SweepOutcome,
    verdict: Verdict,
}

fn crosscheck(cli: &Cli, args: &crate::CrosscheckArgs) -> Result<()> {
    let mut config = RunConfig::new("crosscheck", cli.seed);
    config.max_period = Some(args.max_period);
    config.shifts = Some(args.shifts);
    config.horizon = args.horizon;
    config.out = path_string(&args.out);
    if let Some(count) = args.random {
        config = config.option("random", count);
        let params = SweepParams {
            seed: cli.seed,
            windows: count,
            horizon: args.horizon.unwrap_or(10_000),
            max_period: args.max_period,
            shifts: (args.shifts.lo, args.shifts.hi),
        };
        let sweep = crosscheck_sweep(&params)?;
        let verdict = if let Some(&i) = sweep.disagreements.first() {
            Verdict::fails(Witness::Nat(i as u64))
                .with_note(format!("{} windows disagree", sweep.disagreements.len()))
        } else if let Some(&i) = sweep.inconclusive.first() {
            Verdict::inconclusive(format!(
                "{} windows inconclusive, first {i}",
                sweep.inconclusive.len()
            ))
        } else {
            Verdict::holds(None).with_note(format!("all {} windows agree", sweep.checked))
        };
        return emit(
            cli.format,
            config,
            SweepBody { sweep, verdict },
            args.out.as_deref(),
        );
    }
    let path = args
        .path
        .as_ref()
        .expect("clap requires a path without --random");
    let (w, sequence) = read_sequence(path, args.horizon)?;
    config.inputs = vec![sequence.source.clone()];
    let outcome = cyclic_crosscheck(&w, args.max_period, args.shifts.range())?;
    let body = CrosscheckBody {
        sequence,
        verdict: outcome.verdict,
        rows: outcome.rows,
    };
    emit(cli.format, config, body, args.out.as_deref())
}
