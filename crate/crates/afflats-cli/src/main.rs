//! `afflats` — exact counting, construction, analysis, and verification
//! for flats of small affine spaces AG(n, q).
//!
//! Exit codes: 0 success (and every check passed), 1 at least one check
//! failed, 2 usage or input error, 3 a search was refused because it would
//! exceed the enumeration budget.

use std::fmt::Display;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgAction, Args, Parser, Subcommand};

use afflats::affine::{enumerate_flats, Flat};
use afflats::counting::{
    a0, a1, a2, cover_size_bound, gauss_binomial, h_value, n_prime, num_flats_in,
    num_flats_through, ParamTuple,
};
use afflats::families::{
    build_a1, build_a2, build_a3, build_a4, build_trivial, cross_t_violation,
    is_d_wise_t_intersecting, partner, tau_t, FamilyError, FlatFamily,
};
use afflats::gf::FieldSpec;
use afflats::verify::{
    default_grid_for, run_check, CheckId, CheckReport, CheckRun, GridOverrides, Summary,
    VerifyError,
};

/// A terminal failure: message plus process exit code.
struct Failure {
    code: u8,
    msg: String,
}

type R<T> = Result<T, Failure>;

fn usage(e: impl Display) -> Failure {
    Failure { code: 2, msg: e.to_string() }
}

fn from_family(e: FamilyError) -> Failure {
    let code = if matches!(e, FamilyError::Budget { .. }) { 3 } else { 2 };
    Failure { code, msg: e.to_string() }
}

fn from_verify(e: VerifyError) -> Failure {
    let code = if e.is_budget() { 3 } else { 2 };
    Failure { code, msg: e.to_string() }
}

#[derive(Parser)]
#[command(
    name = "afflats",
    version,
    about = "Exact counts, reference families, and verification grids for flats of AG(n, q)"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate one closed-form quantity exactly
    Count {
        #[command(subcommand)]
        formula: CountFormula,
    },
    /// Build a reference family and emit it as a family file
    Construct {
        #[command(subcommand)]
        family: ConstructFamily,
    },
    /// Inspect family files: cross-intersection, covers, partner, d-wise
    Analyze {
        #[command(subcommand)]
        action: AnalyzeAction,
    },
    /// Run formula-versus-enumeration checks over parameter grids
    Verify(VerifyArgs),
}

#[derive(Subcommand)]
enum CountFormula {
    /// Gaussian binomial [m i]_q: k-dimensional subspaces of an m-space
    Gauss {
        #[arg(short, long)]
        m: i64,
        #[arg(short, long)]
        i: i64,
        #[arg(short, long)]
        q: u64,
    },
    /// Number of k-flats inside one m-flat: q^(m-k) [m k]_q
    FlatsIn {
        #[arg(short, long)]
        m: u64,
        #[arg(short, long)]
        k: u64,
        #[arg(short, long)]
        q: u64,
    },
    /// Number of k-flats of AG(n, q) containing a fixed m-flat
    FlatsThrough {
        #[arg(short, long)]
        n: u64,
        #[arg(short, long)]
        m: u64,
        #[arg(short, long)]
        k: u64,
        #[arg(short, long)]
        q: u64,
    },
    /// Subspaces of type (m, h) containing a fixed type-(m1, h1) subspace
    /// of a space of dimension e+l with an l-dimensional reference
    #[command(disable_help_flag = true)]
    Nprime {
        #[arg(long)]
        m1: u64,
        #[arg(long)]
        h1: u64,
        #[arg(short, long)]
        m: u64,
        #[arg(short, long)]
        h: u64,
        #[arg(short, long)]
        e: u64,
        #[arg(short, long)]
        l: u64,
        #[arg(short, long)]
        q: u64,
        #[arg(long, action = ArgAction::Help, help = "Print help")]
        help: Option<bool>,
    },
    /// Signed lower bound on the k-flats through a t-flat T that meet a
    /// fixed s-flat containing T beyond T itself
    A0 {
        #[arg(short, long)]
        n: u64,
        #[arg(short, long)]
        k: u64,
        #[arg(short, long)]
        s: u64,
        #[arg(short, long)]
        t: u64,
        #[arg(short, long)]
        q: u64,
    },
    /// Product of the first and second construction sizes
    A1 {
        #[arg(short, long)]
        n: u64,
        #[arg(long)]
        k1: u64,
        #[arg(long)]
        k2: u64,
        #[arg(short, long)]
        t: u64,
        #[arg(short, long)]
        q: u64,
    },
    /// Product of the third and fourth construction sizes
    A2 {
        #[arg(short, long)]
        n: u64,
        #[arg(long)]
        k1: u64,
        #[arg(long)]
        k2: u64,
        #[arg(short, long)]
        t: u64,
        #[arg(short, long)]
        q: u64,
    },
    /// Cover-profile function h(x) for a family of b-flats with
    /// c-dimensional partners
    H {
        #[arg(short, long)]
        n: u64,
        #[arg(short, long)]
        b: u64,
        #[arg(short, long)]
        c: u64,
        #[arg(short, long)]
        t: u64,
        #[arg(short, long)]
        x: u64,
        #[arg(short, long)]
        q: u64,
    },
    /// Family-size bound from the measured minimum cover dimensions of the
    /// family (tau1) and its partner (tau2)
    CoverBound {
        #[arg(short, long)]
        n: u64,
        #[arg(long)]
        k1: u64,
        #[arg(long)]
        k2: u64,
        #[arg(short, long)]
        t: u64,
        #[arg(long)]
        tau1: u64,
        #[arg(long)]
        tau2: u64,
        #[arg(short, long)]
        q: u64,
    },
}

/// Anchor sourcing shared by the construct subcommands: either serialized
/// flats on the command line, or canonical anchors generated from (n, q)
/// as the first flats in enumeration order satisfying the constraints.
#[derive(Args)]
struct AnchorArgs {
    /// Generate anchors canonically from -n and -q
    #[arg(long)]
    auto_anchor: bool,
    /// Ambient dimension (with --auto-anchor)
    #[arg(short, long)]
    n: Option<u64>,
    /// Field order (with --auto-anchor)
    #[arg(short, long)]
    q: Option<u64>,
    /// Write the family file here and print the family size; without it
    /// the family file goes to standard output
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum ConstructFamily {
    /// Every k-flat containing one fixed anchor flat
    Trivial {
        /// Member dimension
        #[arg(short, long)]
        k: u64,
        /// Anchor dimension (with --auto-anchor), or a consistency check
        /// against --anchor
        #[arg(short, long)]
        t: Option<u64>,
        /// The anchor flat, serialized
        #[arg(long, conflicts_with = "auto_anchor")]
        anchor: Option<String>,
        #[command(flatten)]
        common: AnchorArgs,
    },
    /// k1-flats through the anchor T that meet the mid flat M in dimension
    /// at least t+1
    #[command(name = "a1", alias = "A1")]
    A1 {
        #[arg(long)]
        k1: u64,
        /// Dimension of the anchor T
        #[arg(short, long)]
        t: u64,
        /// The partner dimension k2; the mid flat has dimension k2+1
        /// (with --auto-anchor)
        #[arg(long)]
        k2: Option<u64>,
        /// The mid flat M, serialized
        #[arg(long, conflicts_with = "auto_anchor")]
        mid: Option<String>,
        /// The anchor flat T, serialized
        #[arg(long, conflicts_with = "auto_anchor")]
        anchor: Option<String>,
        #[command(flatten)]
        common: AnchorArgs,
    },
    /// k2-flats through the anchor T, plus the k2-flats inside the mid
    /// flat M meeting T in dimension exactly t-1
    #[command(name = "a2", alias = "A2")]
    A2 {
        #[arg(long)]
        k2: u64,
        /// Dimension of the anchor T
        #[arg(short, long)]
        t: u64,
        /// The mid flat M (dimension k2+1), serialized
        #[arg(long, conflicts_with = "auto_anchor")]
        mid: Option<String>,
        /// The anchor flat T, serialized
        #[arg(long, conflicts_with = "auto_anchor")]
        anchor: Option<String>,
        #[command(flatten)]
        common: AnchorArgs,
    },
    /// k1-flats containing the seed flat S
    #[command(name = "a3", alias = "A3")]
    A3 {
        #[arg(long)]
        k1: u64,
        /// Seed dimension minus one (with --auto-anchor: S is the first
        /// (t+1)-flat), or a consistency check against --seed-flat
        #[arg(short, long)]
        t: Option<u64>,
        /// The seed flat S, serialized
        #[arg(long, conflicts_with = "auto_anchor")]
        seed_flat: Option<String>,
        #[command(flatten)]
        common: AnchorArgs,
    },
    /// k2-flats meeting the seed flat S (dimension t+1) in dimension at
    /// least t
    #[command(name = "a4", alias = "A4")]
    A4 {
        #[arg(long)]
        k2: u64,
        #[arg(short, long)]
        t: u64,
        /// The seed flat S, serialized
        #[arg(long, conflicts_with = "auto_anchor")]
        seed_flat: Option<String>,
        #[command(flatten)]
        common: AnchorArgs,
    },
}

#[derive(Subcommand)]
enum AnalyzeAction {
    /// Check that two family files are cross-t-intersecting
    CrossCheck {
        first: PathBuf,
        second: PathBuf,
        #[arg(short, long)]
        t: u64,
        /// Write the JSON report here instead of standard output
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Minimum t-cover dimension of a family, with every witness
    Tau {
        family: PathBuf,
        #[arg(short, long)]
        t: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// The largest family of k2-flats cross-t-intersecting with the input,
    /// emitted as a family file
    Partner {
        family: PathBuf,
        #[arg(long)]
        k2: u64,
        #[arg(short, long)]
        t: u64,
        /// Write the partner family file here and print its size; without
        /// it the family file goes to standard output
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check that every selection of one member per file meets in
    /// dimension at least t
    Dwise {
        /// Two or more family files
        #[arg(num_args = 2..)]
        families: Vec<PathBuf>,
        #[arg(short, long)]
        t: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Args)]
struct VerifyArgs {
    /// Run the selected checks on their built-in default grids (this is
    /// also the behaviour when no grid file is given)
    #[arg(long)]
    default_grid: bool,
    /// JSON grid overrides applied on top of each selected check's
    /// default grid
    #[arg(long, conflicts_with = "default_grid")]
    grid: Option<PathBuf>,
    /// Comma-separated check ids (default: every check)
    #[arg(long, value_delimiter = ',')]
    checks: Vec<String>,
    /// Restrict the sweep to a single field order
    #[arg(short, long)]
    q: Option<u64>,
    /// Set the upper end of the n range
    #[arg(long)]
    nmax: Option<u64>,
    /// Write the report stream here instead of standard output
    #[arg(short, long)]
    output: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = configure_threads().and_then(|()| run(cli));
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}

/// Writes `text` to standard output, exiting quietly when the reader has
/// gone away (for example when the output is piped into `head`).
fn write_stdout(text: &str) {
    let mut lock = std::io::stdout().lock();
    if lock.write_all(text.as_bytes()).is_err() || lock.flush().is_err() {
        std::process::exit(0);
    }
}

/// Applies the AFFLATS_THREADS worker cap before any parallel work starts.
fn configure_threads() -> R<()> {
    match std::env::var("AFFLATS_THREADS") {
        Ok(v) => {
            let n: usize = v
                .trim()
                .parse()
                .ok()
                .filter(|&n| n >= 1)
                .ok_or_else(|| usage(format!("AFFLATS_THREADS must be a positive integer, got {v:?}")))?;
            afflats::configure_worker_cap(Some(n));
            Ok(())
        }
        Err(_) => Ok(()),
    }
}

fn run(cli: Cli) -> R<u8> {
    match cli.cmd {
        Cmd::Count { formula } => cmd_count(formula),
        Cmd::Construct { family } => cmd_construct(family),
        Cmd::Analyze { action } => cmd_analyze(action),
        Cmd::Verify(args) => cmd_verify(args),
    }
}

fn cmd_count(formula: CountFormula) -> R<u8> {
    let value = match formula {
        CountFormula::Gauss { m, i, q } => {
            field_check(q)?;
            gauss_binomial(m, i, q).to_string()
        }
        CountFormula::FlatsIn { m, k, q } => {
            field_check(q)?;
            num_flats_in(m, k, q).to_string()
        }
        CountFormula::FlatsThrough { n, m, k, q } => {
            field_check(q)?;
            num_flats_through(n, m, k, q).to_string()
        }
        CountFormula::Nprime { m1, h1, m, h, e, l, q, help: _ } => {
            field_check(q)?;
            n_prime(m1, h1, m, h, e, l, q).to_string()
        }
        CountFormula::A0 { n, k, s, t, q } => {
            field_check(q)?;
            a0(n, k, s, t, q).map_err(usage)?.to_string()
        }
        CountFormula::A1 { n, k1, k2, t, q } => {
            field_check(q)?;
            a1(&ParamTuple { n, k1, k2, t, q }).map_err(usage)?.to_string()
        }
        CountFormula::A2 { n, k1, k2, t, q } => {
            field_check(q)?;
            a2(&ParamTuple { n, k1, k2, t, q }).map_err(usage)?.to_string()
        }
        CountFormula::H { n, b, c, t, x, q } => {
            field_check(q)?;
            h_value(n, b, c, t, x, q).map_err(usage)?.to_string()
        }
        CountFormula::CoverBound { n, k1, k2, t, tau1, tau2, q } => {
            field_check(q)?;
            cover_size_bound(n, k1, k2, t, tau1, tau2, q).map_err(usage)?.to_string()
        }
    };
    write_stdout(&format!("{value}\n"));
    Ok(0)
}

/// Rejects unsupported field orders before a formula silently accepts one.
fn field_check(q: u64) -> R<FieldSpec> {
    FieldSpec::new(q).map_err(usage)
}

/// The first k-flat in enumeration order, optionally restricted.
fn first_flat(
    spec: FieldSpec,
    n: usize,
    k: usize,
    constraint: impl Fn(&Flat) -> bool,
) -> R<Flat> {
    enumerate_flats(spec, n, k)
        .find(constraint)
        .ok_or_else(|| usage(format!("AG({n}, {}) has no suitable {k}-flat", spec.q())))
}

fn require<T>(opt: Option<T>, what: &str) -> R<T> {
    opt.ok_or_else(|| usage(format!("{what} is required")))
}

/// Resolves (n, q) for auto-anchoring.
fn auto_space(common: &AnchorArgs) -> R<(FieldSpec, usize)> {
    let n = require(common.n, "-n with --auto-anchor")?;
    let q = require(common.q, "-q with --auto-anchor")?;
    Ok((field_check(q)?, n as usize))
}

fn parsed_flat(s: &str, what: &str) -> R<Flat> {
    Flat::parse(s).map_err(|e| usage(format!("{what}: {e}")))
}

/// Checks an optional dimension flag against an explicit anchor.
fn dim_check(flat: &Flat, expect: Option<u64>, what: &str) -> R<()> {
    match expect {
        Some(d) if flat.dim() as u64 != d => Err(usage(format!(
            "{what} has dimension {}, but -t {d} was given",
            flat.dim()
        ))),
        _ => Ok(()),
    }
}

/// Writes a family file to `output` and prints its size, or prints the
/// family file itself when no output path is given.
fn emit_family(fam: &FlatFamily, output: &Option<PathBuf>) -> R<u8> {
    match output {
        Some(path) => {
            std::fs::write(path, format!("{fam}\n")).map_err(usage)?;
            write_stdout(&format!("{}\n", fam.len()));
        }
        None => write_stdout(&format!("{fam}\n")),
    }
    Ok(0)
}

/// The canonical mid/anchor pair: M is the first (k2+1)-flat in
/// enumeration order and T the first t-flat inside it.
fn auto_mid_anchor(spec: FieldSpec, n: usize, k2: usize, t: usize) -> R<(Flat, Flat)> {
    let mid = first_flat(spec, n, k2 + 1, |_| true)?;
    let anchor = first_flat(spec, n, t, |f| {
        f.is_subflat_of(&mid).expect("same space")
    })?;
    Ok((mid, anchor))
}

fn cmd_construct(family: ConstructFamily) -> R<u8> {
    match family {
        ConstructFamily::Trivial { k, t, anchor, common } => {
            let anchor = match anchor {
                Some(s) => {
                    let f = parsed_flat(&s, "--anchor")?;
                    dim_check(&f, t, "--anchor")?;
                    f
                }
                None if common.auto_anchor => {
                    let (spec, n) = auto_space(&common)?;
                    let t = require(t, "-t with --auto-anchor")?;
                    first_flat(spec, n, t as usize, |_| true)?
                }
                None => return Err(usage("give --anchor or --auto-anchor")),
            };
            let fam = build_trivial(&anchor, k as usize).map_err(from_family)?;
            emit_family(&fam, &common.output)
        }
        ConstructFamily::A1 { k1, t, k2, mid, anchor, common } => {
            let (mid, anchor) = if common.auto_anchor {
                let (spec, n) = auto_space(&common)?;
                let k2 = require(k2, "--k2 with --auto-anchor")?;
                auto_mid_anchor(spec, n, k2 as usize, t as usize)?
            } else {
                (
                    parsed_flat(&require(mid, "--mid")?, "--mid")?,
                    parsed_flat(&require(anchor, "--anchor")?, "--anchor")?,
                )
            };
            dim_check(&anchor, Some(t), "--anchor")?;
            let fam =
                build_a1(&mid, &anchor, k1 as usize, t as usize).map_err(from_family)?;
            emit_family(&fam, &common.output)
        }
        ConstructFamily::A2 { k2, t, mid, anchor, common } => {
            let (mid, anchor) = if common.auto_anchor {
                let (spec, n) = auto_space(&common)?;
                auto_mid_anchor(spec, n, k2 as usize, t as usize)?
            } else {
                (
                    parsed_flat(&require(mid, "--mid")?, "--mid")?,
                    parsed_flat(&require(anchor, "--anchor")?, "--anchor")?,
                )
            };
            dim_check(&anchor, Some(t), "--anchor")?;
            let fam = build_a2(&mid, &anchor, k2 as usize, t as usize).map_err(from_family)?;
            emit_family(&fam, &common.output)
        }
        ConstructFamily::A3 { k1, t, seed_flat, common } => {
            let seed = match seed_flat {
                Some(s) => {
                    let f = parsed_flat(&s, "--seed-flat")?;
                    dim_check(&f, t.map(|t| t + 1), "--seed-flat")?;
                    f
                }
                None if common.auto_anchor => {
                    let (spec, n) = auto_space(&common)?;
                    let t = require(t, "-t with --auto-anchor")?;
                    first_flat(spec, n, t as usize + 1, |_| true)?
                }
                None => return Err(usage("give --seed-flat or --auto-anchor")),
            };
            let fam = build_a3(&seed, k1 as usize).map_err(from_family)?;
            emit_family(&fam, &common.output)
        }
        ConstructFamily::A4 { k2, t, seed_flat, common } => {
            let seed = match seed_flat {
                Some(s) => {
                    let f = parsed_flat(&s, "--seed-flat")?;
                    dim_check(&f, Some(t + 1), "--seed-flat")?;
                    f
                }
                None if common.auto_anchor => {
                    let (spec, n) = auto_space(&common)?;
                    first_flat(spec, n, t as usize + 1, |_| true)?
                }
                None => return Err(usage("give --seed-flat or --auto-anchor")),
            };
            let fam = build_a4(&seed, k2 as usize, t as usize).map_err(from_family)?;
            emit_family(&fam, &common.output)
        }
    }
}

fn load_family(path: &PathBuf) -> R<FlatFamily> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| usage(format!("{}: {e}", path.display())))?;
    FlatFamily::parse(&text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

/// Writes a JSON report line to the chosen output.
fn emit_json(value: &serde_json::Value, output: &Option<PathBuf>) -> R<()> {
    let line = format!("{value}\n");
    match output {
        Some(path) => std::fs::write(path, line).map_err(usage)?,
        None => write_stdout(&line),
    }
    Ok(())
}

fn cmd_analyze(action: AnalyzeAction) -> R<u8> {
    match action {
        AnalyzeAction::CrossCheck { first, second, t, output } => {
            let f1 = load_family(&first)?;
            let f2 = load_family(&second)?;
            let violation = cross_t_violation(&f1, &f2, t as usize).map_err(from_family)?;
            let mut report = serde_json::json!({
                "action": "cross-check",
                "t": t,
                "pass": violation.is_none(),
            });
            if let Some((a, b)) = &violation {
                report["witness"] = serde_json::json!({
                    "first": a.to_string(),
                    "second": b.to_string(),
                });
            }
            emit_json(&report, &output)?;
            Ok(u8::from(violation.is_some()))
        }
        AnalyzeAction::Tau { family, t, output } => {
            let fam = load_family(&family)?;
            let cover = tau_t(&fam, t as usize).map_err(from_family)?;
            let report = serde_json::json!({
                "action": "tau",
                "t": t,
                "tau": cover.tau,
                "witness_count": cover.witnesses.len(),
                "witnesses": cover
                    .witnesses
                    .iter()
                    .map(Flat::to_string)
                    .collect::<Vec<_>>(),
            });
            emit_json(&report, &output)?;
            Ok(0)
        }
        AnalyzeAction::Partner { family, k2, t, output } => {
            let fam = load_family(&family)?;
            let p = partner(&fam, k2 as usize, t as usize).map_err(from_family)?;
            emit_family(&p, &output)
        }
        AnalyzeAction::Dwise { families, t, output } => {
            let fams =
                families.iter().map(load_family).collect::<R<Vec<_>>>()?;
            let pass = is_d_wise_t_intersecting(&fams, t as usize).map_err(from_family)?;
            let report = serde_json::json!({
                "action": "dwise",
                "t": t,
                "d": fams.len(),
                "pass": pass,
            });
            emit_json(&report, &output)?;
            Ok(u8::from(!pass))
        }
    }
}

fn cmd_verify(args: VerifyArgs) -> R<u8> {
    let overrides: GridOverrides = match &args.grid {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| usage(format!("{}: {e}", path.display())))?;
            serde_json::from_str(&text)
                .map_err(|e| usage(format!("{}: {e}", path.display())))?
        }
        None => GridOverrides::default(),
    };

    let selected: Vec<CheckId> = if !args.checks.is_empty() {
        args.checks
            .iter()
            .map(|s| CheckId::parse(s).map_err(from_verify))
            .collect::<R<Vec<_>>>()?
    } else if let Some(names) = &overrides.checks {
        names
            .iter()
            .map(|s| CheckId::parse(s).map_err(from_verify))
            .collect::<R<Vec<_>>>()?
    } else {
        CheckId::all().to_vec()
    };

    let mut reports: Vec<CheckReport> = Vec::new();
    let mut summary = Summary::default();
    for &check in &selected {
        let mut grid = overrides
            .apply(&default_grid_for(check))
            .map_err(from_verify)?;
        if let Some(q) = args.q {
            field_check(q)?;
            grid.qs = vec![q];
        }
        if let Some(nmax) = args.nmax {
            grid.n = (grid.n.0.min(nmax), nmax);
        }
        let CheckRun { reports: batch, skipped } =
            run_check(check, &grid).map_err(from_verify)?;
        reports.extend(batch);
        summary.skipped += skipped;
    }
    reports.sort();
    summary.passed = reports.iter().filter(|r| r.pass).count() as u64;
    summary.failed = reports.len() as u64 - summary.passed;

    let mut stream = String::new();
    for r in &reports {
        stream.push_str(&serde_json::to_string(r).expect("report serializes"));
        stream.push('\n');
    }
    stream.push_str(
        &serde_json::to_string(&serde_json::json!({ "summary": {
            "passed": summary.passed,
            "failed": summary.failed,
            "skipped": summary.skipped,
        }}))
        .expect("summary serializes"),
    );
    stream.push('\n');
    match &args.output {
        Some(path) => std::fs::write(path, &stream).map_err(usage)?,
        None => write_stdout(&stream),
    }
    Ok(u8::from(summary.failed > 0))
}
