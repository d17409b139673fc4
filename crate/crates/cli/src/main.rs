//! Command-line front end: sequence terms, m evaluation, region
//! classification, enumeration, find-by-m, Markoff trees, the per-m census,
//! certified bounds, and the verification suites.
//!
//! Exit codes: 0 success / all checks pass, 1 verification failure,
//! 2 usage error. Data goes to stdout, diagnostics to stderr, and output is
//! byte-identical for identical invocations regardless of worker count.

use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, Zero};

use markoff_fib::bounds::{check_lk_gt_alpha_inv2, l3_alt_reading, lk};
use markoff_fib::classifier::{
    enumerate_solutions, find_triples_for_m, m_k_indices, predict_region, IndexTriple,
    SolutionRecord, DEFAULT_FAMILY_CAP,
};
use markoff_fib::kfib::{cache_for, KParam};
use markoff_fib::markoff::{generate_tree, minimal_triples_for_m, TreeLimit, ValueTriple};
use markoff_fib::quad::{alpha_enclosure, default_tol, sqrt_disc_enclosure};
use markoff_fib::verify::{run_suites, CheckStatus, VerifyConfig};

const JOBS_ENV: &str = "MARKOFF_FIB_JOBS";
/// Printed precision for enclosure endpoints (outward-rounded).
const ENCLOSURE_DIGITS: u32 = 18;
/// Tree depth guard: the 8-tree is binary, so node counts double per level.
const MAX_TREE_DEPTH: usize = 24;

#[derive(Parser)]
#[command(
    name = "markoff-fib",
    about = "Markoff m-triples with k-Fibonacci components: exact enumeration, trees, and certified bounds",
    version
)]
struct Cli {
    /// Worker threads (default: available parallelism; env MARKOFF_FIB_JOBS
    /// is honored when the flag is absent). Output never depends on this.
    #[arg(long, global = true)]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print k-Fibonacci terms.
    Fib(FibArgs),
    /// Evaluate m and minimality for one triple.
    M(MArgs),
    /// Closed-form sign prediction plus the exact m for an index triple.
    Classify(ClassifyArgs),
    /// Enumerate all solutions with third index up to a bound.
    Enumerate(EnumerateArgs),
    /// Find every solution with a given m.
    Solve(SolveArgs),
    /// Expand a Markoff tree from a minimal root triple.
    Tree(TreeArgs),
    /// List the minimal triples (tree roots) for a given m.
    Census(CensusArgs),
    /// Report the growth constant, α_k, √(k²+4), and the floor-constant check.
    Bounds(BoundsArgs),
    /// Run a verification suite.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct FibArgs {
    #[arg(long)]
    k: u64,
    /// Print just F_k(n).
    #[arg(long, conflicts_with = "upto")]
    n: Option<usize>,
    /// Print "n value" lines for 0 ≤ n ≤ bound.
    #[arg(long)]
    upto: Option<usize>,
    #[arg(long, value_enum, default_value_t = TextFormat::Text)]
    format: TextFormat,
}

#[derive(Args)]
struct MArgs {
    /// Sequence parameter; required with --indices.
    #[arg(long)]
    k: Option<u64>,
    /// Index triple a,b,c (requires --k); components are F_k(a), F_k(b), F_k(c).
    #[arg(long, value_parser = parse_usize_triple, conflicts_with = "values")]
    indices: Option<(usize, usize, usize)>,
    /// Value triple x,y,z evaluated directly.
    #[arg(long, value_parser = parse_biguint_triple)]
    values: Option<(BigUint, BigUint, BigUint)>,
    #[arg(long, value_enum, default_value_t = TextFormat::Text)]
    format: TextFormat,
}

#[derive(Args)]
struct ClassifyArgs {
    #[arg(long)]
    k: u64,
    #[arg(long, value_parser = parse_usize_triple)]
    indices: (usize, usize, usize),
}

#[derive(Args)]
struct EnumerateArgs {
    #[arg(long)]
    k: u64,
    #[arg(long)]
    cmax: usize,
    #[arg(long, conflicts_with = "nonminimal_only")]
    minimal_only: bool,
    #[arg(long)]
    nonminimal_only: bool,
    #[arg(long, value_enum, default_value_t = RecordFormat::Json)]
    format: RecordFormat,
}

#[derive(Args)]
struct SolveArgs {
    #[arg(long)]
    k: u64,
    #[arg(long)]
    m: BigInt,
    /// Materialization cap on the third index for the infinite m = 8 family.
    #[arg(long, default_value_t = DEFAULT_FAMILY_CAP)]
    cap: usize,
    #[arg(long, value_enum, default_value_t = RecordFormat::Json)]
    format: RecordFormat,
}

#[derive(Args)]
struct TreeArgs {
    /// Root triple x,y,z; must be minimal with m > 0.
    #[arg(long, value_parser = parse_biguint_triple)]
    root: (BigUint, BigUint, BigUint),
    #[arg(long, conflicts_with = "max_z")]
    depth: Option<usize>,
    #[arg(long)]
    max_z: Option<BigUint>,
    #[arg(long, value_enum, default_value_t = TreeFormat::Json)]
    format: TreeFormat,
}

#[derive(Args)]
struct CensusArgs {
    #[arg(long)]
    m: BigInt,
    #[arg(long, value_enum, default_value_t = TextFormat::Text)]
    format: TextFormat,
}

#[derive(Args)]
struct BoundsArgs {
    #[arg(long)]
    k: u64,
    #[arg(long, value_enum, default_value_t = TextFormat::Text)]
    format: TextFormat,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_enum)]
    suite: Suite,
    #[arg(long)]
    k: Option<u64>,
    #[arg(long)]
    cmax: Option<usize>,
    /// Wall-clock budget in seconds for the oracle suite; exceeding it skips
    /// remaining oracle checks instead of failing them.
    #[arg(long)]
    budget: Option<u64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Identities,
    Theorem1,
    Theorem2,
    Bounds,
    Oracle,
    All,
}

impl Suite {
    fn name(self) -> &'static str {
        match self {
            Suite::Identities => "identities",
            Suite::Theorem1 => "theorem1",
            Suite::Theorem2 => "theorem2",
            Suite::Bounds => "bounds",
            Suite::Oracle => "oracle",
            Suite::All => "all",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TextFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum RecordFormat {
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TreeFormat {
    Json,
    Dot,
}

fn parse_usize_triple(s: &str) -> Result<(usize, usize, usize), String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 3 {
        return Err("expected three comma-separated values".to_string());
    }
    let mut vals = [0usize; 3];
    for (slot, part) in vals.iter_mut().zip(&parts) {
        *slot = part
            .trim()
            .parse()
            .map_err(|e| format!("bad index '{part}': {e}"))?;
    }
    Ok((vals[0], vals[1], vals[2]))
}

fn parse_biguint_triple(s: &str) -> Result<(BigUint, BigUint, BigUint), String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 3 {
        return Err("expected three comma-separated values".to_string());
    }
    let parse = |p: &str| -> Result<BigUint, String> {
        p.trim()
            .parse()
            .map_err(|e| format!("bad value '{p}': {e}"))
    };
    Ok((parse(parts[0])?, parse(parts[1])?, parse(parts[2])?))
}

/// Anything that maps to exit code 2: bad arguments, domain violations.
struct UsageError(String);

impl<E: std::fmt::Display> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.to_string())
    }
}

fn main() -> ExitCode {
    // Die quietly on closed pipes (e.g. `markoff-fib census --m 8 | head`).
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    let jobs = cli.jobs.or_else(|| {
        std::env::var(JOBS_ENV)
            .ok()
            .and_then(|v| v.parse::<usize>().ok())
    });
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(j) = jobs {
        builder = builder.num_threads(j.max(1));
    }
    let pool = match builder.build() {
        Ok(pool) => pool,
        Err(e) => {
            eprintln!("error: failed to build worker pool: {e}");
            return ExitCode::from(2);
        }
    };
    match pool.install(|| run(cli.command)) {
        Ok(code) => code,
        Err(UsageError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<ExitCode, UsageError> {
    match command {
        Command::Fib(args) => cmd_fib(args),
        Command::M(args) => cmd_m(args),
        Command::Classify(args) => cmd_classify(args),
        Command::Enumerate(args) => cmd_enumerate(args),
        Command::Solve(args) => cmd_solve(args),
        Command::Tree(args) => cmd_tree(args),
        Command::Census(args) => cmd_census(args),
        Command::Bounds(args) => cmd_bounds(args),
        Command::Verify(args) => cmd_verify(args),
    }
}

fn cmd_fib(args: FibArgs) -> Result<ExitCode, UsageError> {
    let k = KParam::new(args.k)?;
    let cache = cache_for(k);
    match (args.n, args.upto) {
        (Some(n), None) => match args.format {
            TextFormat::Text => println!("{}", cache.get(n)),
            TextFormat::Json => println!(
                "{}",
                serde_json::json!({"k": args.k, "n": n, "value": cache.get(n).to_string()})
            ),
        },
        (None, Some(upto)) => {
            for n in 0..=upto {
                match args.format {
                    TextFormat::Text => println!("{} {}", n, cache.get(n)),
                    TextFormat::Json => println!(
                        "{}",
                        serde_json::json!({"k": args.k, "n": n, "value": cache.get(n).to_string()})
                    ),
                }
            }
        }
        _ => return Err(UsageError("exactly one of --n or --upto is required".into())),
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_m(args: MArgs) -> Result<ExitCode, UsageError> {
    let (triple, idx_info) = match (&args.indices, &args.values) {
        (Some((a, b, c)), None) => {
            let (a, b, c) = (*a, *b, *c);
            let k = KParam::new(args.k.ok_or(UsageError("--indices requires --k".into()))?)?;
            let idx = IndexTriple::new(a, b, c)?;
            let f = cache_for(k);
            let triple = ValueTriple::new(f.get(idx.a), f.get(idx.b), f.get(idx.c))?;
            (triple, Some((k.get(), idx)))
        }
        (None, Some((x, y, z))) => (
            ValueTriple::new(x.clone(), y.clone(), z.clone())?,
            None,
        ),
        _ => return Err(UsageError("exactly one of --indices or --values is required".into())),
    };
    let m = triple.m();
    let minimal = triple.is_minimal();
    match args.format {
        TextFormat::Text => {
            println!("m = {m}");
            println!("minimal = {minimal}");
        }
        TextFormat::Json => {
            let mut obj = serde_json::Map::new();
            if let Some((k, idx)) = idx_info {
                obj.insert("k".into(), k.into());
                obj.insert("a".into(), idx.a.into());
                obj.insert("b".into(), idx.b.into());
                obj.insert("c".into(), idx.c.into());
            }
            obj.insert("x".into(), triple.x().to_string().into());
            obj.insert("y".into(), triple.y().to_string().into());
            obj.insert("z".into(), triple.z().to_string().into());
            obj.insert("m".into(), m.to_string().into());
            obj.insert("minimal".into(), minimal.into());
            println!("{}", serde_json::Value::Object(obj));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_classify(args: ClassifyArgs) -> Result<ExitCode, UsageError> {
    let k = KParam::new(args.k)?;
    let (a, b, c) = args.indices;
    let idx = IndexTriple::new(a, b, c)?;
    let verdict = predict_region(k, &idx)?;
    let m = m_k_indices(k, &idx);
    let sign = if m.is_positive() {
        "positive"
    } else if m.is_zero() {
        "zero"
    } else {
        "negative"
    };
    let f = cache_for(k);
    let minimal = ValueTriple::new(f.get(idx.a), f.get(idx.b), f.get(idx.c))?.is_minimal();
    println!(
        "{}",
        serde_json::json!({
            "k": args.k,
            "a": idx.a,
            "b": idx.b,
            "c": idx.c,
            "m": m.to_string(),
            "sign": sign,
            "predicted_region": verdict.predicted,
            "rule": verdict.rule,
            "minimal": minimal,
        })
    );
    Ok(ExitCode::SUCCESS)
}

fn emit_records(records: &[SolutionRecord], format: RecordFormat) {
    match format {
        RecordFormat::Json => {
            for rec in records {
                println!("{}", serde_json::to_string(rec).unwrap());
            }
        }
        RecordFormat::Csv => {
            println!("{}", SolutionRecord::CSV_HEADER);
            for rec in records {
                println!("{}", rec.csv_row());
            }
        }
    }
}

fn cmd_enumerate(args: EnumerateArgs) -> Result<ExitCode, UsageError> {
    let k = KParam::new(args.k)?;
    let solutions = enumerate_solutions(k, args.cmax)?;
    let records: Vec<SolutionRecord> = solutions
        .iter()
        .filter(|s| {
            if args.minimal_only {
                s.minimal
            } else if args.nonminimal_only {
                !s.minimal
            } else {
                true
            }
        })
        .map(|s| s.record())
        .collect();
    emit_records(&records, args.format);
    Ok(ExitCode::SUCCESS)
}

fn cmd_solve(args: SolveArgs) -> Result<ExitCode, UsageError> {
    let k = KParam::new(args.k)?;
    let report = find_triples_for_m(k, &args.m, args.cap)?;
    let records: Vec<SolutionRecord> = report.solutions.iter().map(|s| s.record()).collect();
    emit_records(&records, args.format);
    if let Some(family) = &report.family {
        match args.format {
            RecordFormat::Json => println!(
                "{}",
                serde_json::json!({ "family": family })
            ),
            RecordFormat::Csv => eprintln!(
                "note: infinite family {} (n >= {}), materialized up to c = {}",
                family.pattern, family.n_min, family.cap_c
            ),
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_tree(args: TreeArgs) -> Result<ExitCode, UsageError> {
    let (x, y, z) = args.root;
    let root = ValueTriple::new(x, y, z)?;
    let limit = match (args.depth, args.max_z) {
        (Some(d), None) => {
            if d > MAX_TREE_DEPTH {
                return Err(UsageError(format!(
                    "depth {d} exceeds the supported maximum {MAX_TREE_DEPTH}"
                )));
            }
            TreeLimit::Depth(d)
        }
        (None, Some(b)) => TreeLimit::MaxZ(b),
        _ => return Err(UsageError("exactly one of --depth or --max-z is required".into())),
    };
    let tree = generate_tree(root, &limit)?;
    match args.format {
        TreeFormat::Json => println!("{}", tree.to_json()),
        TreeFormat::Dot => print!("{}", tree.to_dot()),
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_census(args: CensusArgs) -> Result<ExitCode, UsageError> {
    let triples = minimal_triples_for_m(&args.m)?;
    for t in &triples {
        match args.format {
            TextFormat::Text => println!("{t}"),
            TextFormat::Json => println!(
                "{}",
                serde_json::json!({
                    "x": t.x().to_string(),
                    "y": t.y().to_string(),
                    "z": t.z().to_string(),
                })
            ),
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_bounds(args: BoundsArgs) -> Result<ExitCode, UsageError> {
    let k = KParam::new(args.k)?;
    let tol = default_tol();
    let alpha = alpha_enclosure(k, &tol);
    let d = sqrt_disc_enclosure(k, &tol);
    let l = lk(k)?;
    let verdict = check_lk_gt_alpha_inv2(k)?;
    let alt = if args.k == 3 {
        Some(l3_alt_reading(&tol))
    } else {
        None
    };

    let dec = |b: &markoff_fib::quad::RealBound| {
        let (lo, hi) = b.decimal(ENCLOSURE_DIGITS);
        (lo, hi)
    };
    let (alpha_lo, alpha_hi) = dec(&alpha);
    let (d_lo, d_hi) = dec(&d);
    let (l_lo, l_hi) = dec(&l.value);

    match args.format {
        TextFormat::Text => {
            println!("k = {}", args.k);
            println!("alpha in [{alpha_lo}, {alpha_hi}]");
            println!("sqrt_disc in [{d_lo}, {d_hi}]");
            println!("L in [{l_lo}, {l_hi}]");
            if let Some(alt) = &alt {
                let (alo, ahi) = dec(alt);
                println!("L_alt_reading in [{alo}, {ahi}]");
            }
            println!("L_gt_alpha_inv_sq = {verdict}");
        }
        TextFormat::Json => {
            let mut obj = serde_json::Map::new();
            obj.insert("k".into(), args.k.into());
            obj.insert(
                "alpha".into(),
                serde_json::json!({"lo": alpha_lo, "hi": alpha_hi}),
            );
            obj.insert("sqrt_disc".into(), serde_json::json!({"lo": d_lo, "hi": d_hi}));
            obj.insert("l".into(), serde_json::json!({"lo": l_lo, "hi": l_hi}));
            if let Some(alt) = &alt {
                let (alo, ahi) = dec(alt);
                obj.insert("l_alt_reading".into(), serde_json::json!({"lo": alo, "hi": ahi}));
            }
            obj.insert("l_gt_alpha_inv_sq".into(), verdict.into());
            println!("{}", serde_json::Value::Object(obj));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(args: VerifyArgs) -> Result<ExitCode, UsageError> {
    let cfg = VerifyConfig {
        k: args.k,
        c_max: args.cmax,
        budget: args.budget.map(Duration::from_secs),
    };
    let reports = run_suites(args.suite.name(), &cfg)?;
    let mut all_pass = true;
    for report in &reports {
        for check in &report.checks {
            let tag = match check.status {
                CheckStatus::Pass => "PASS",
                CheckStatus::Fail => "FAIL",
                CheckStatus::Skip => "SKIP",
            };
            match &check.detail {
                Some(detail) => println!("[{tag}] {}/{}: {detail}", report.suite, check.name),
                None => println!("[{tag}] {}/{}", report.suite, check.name),
            }
        }
        all_pass &= report.passed();
    }
    if all_pass {
        Ok(ExitCode::SUCCESS)
    } else {
        let failures: Vec<_> = reports
            .iter()
            .map(|r| {
                serde_json::json!({
                    "suite": r.suite,
                    "passed": r.passed(),
                    "failures": r.failures(),
                })
            })
            .collect();
        println!(
            "{}",
            serde_json::json!({"verification": "failed", "reports": failures})
        );
        Ok(ExitCode::from(1))
    }
}
