//! `simgroup`: factor matrices into conjugates of a singular base, verify
//! the resulting certificates, inspect canonical forms and run the
//! brute-force closure check.
//!
//! Exit codes: 0 success, 1 parse or input error, 2 violated precondition,
//! 3 invalid certificate or failed check, 4 size cap exceeded.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use simgroup_core::canonical::semisimple_at_zero;
use simgroup_core::closure::DEFAULT_SPACE_CAP;
use simgroup_core::{
    factor, fitting_decompose, invariant_factors, sweep, theorem_check, verify, ClosureOptions,
    ClosureReport, Error, Field, Matrix, SimilarityCertificate,
};

#[derive(Parser)]
#[command(
    name = "simgroup",
    version,
    about = "Products of conjugates of a singular matrix"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a certificate expressing TARGET as a product of conjugates of BASE.
    Factor(FactorArgs),
    /// Replay a certificate from scratch.
    Verify(VerifyArgs),
    /// Print invariant factors, Fitting blocks, rank and semisimplicity of 0.
    Canon(CanonArgs),
    /// Compare the semigroup generated by a similarity class with S_p by enumeration.
    ClosureCheck(ClosureArgs),
}

#[derive(Args)]
struct FactorArgs {
    /// `rational` or `gf:<p>`.
    #[arg(long)]
    field: String,
    #[arg(long)]
    base: PathBuf,
    #[arg(long)]
    target: PathBuf,
    #[arg(long)]
    out: PathBuf,
    /// Print every construction stage.
    #[arg(long)]
    trace: bool,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    cert: PathBuf,
}

#[derive(Args)]
struct CanonArgs {
    #[arg(long)]
    field: String,
    #[arg(long)]
    matrix: PathBuf,
}

#[derive(Args)]
struct ClosureArgs {
    /// `gf:<p>`.
    #[arg(long)]
    field: String,
    #[arg(long, conflicts_with = "sweep", required_unless_present = "sweep")]
    matrix: Option<PathBuf>,
    /// Check every singular class of the given size, written `n=<k>`.
    #[arg(long)]
    sweep: Option<String>,
    /// Worker threads; more than one enables the parallel search.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Emit JSON instead of a table.
    #[arg(long)]
    json: bool,
    /// Largest ambient space `q^(n^2)` the search may enumerate.
    #[arg(long, default_value_t = DEFAULT_SPACE_CAP)]
    cap: u64,
}

enum Failure {
    Input(String),
    Precondition(String),
    Invalid(String),
    Capacity(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Input(_) => 1,
            Failure::Precondition(_) => 2,
            Failure::Invalid(_) => 3,
            Failure::Capacity(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Input(m)
            | Failure::Precondition(m)
            | Failure::Invalid(m)
            | Failure::Capacity(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let msg = e.to_string();
        match e {
            Error::Parse(_) | Error::InvalidModulus(_) | Error::FieldNotFinite => {
                Failure::Input(msg)
            }
            Error::TooLarge(_) => Failure::Capacity(msg),
            _ => Failure::Precondition(msg),
        }
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    let outcome = match cli.command {
        Command::Factor(args) => cmd_factor(&args),
        Command::Verify(args) => cmd_verify(&args),
        Command::Canon(args) => cmd_canon(&args),
        Command::ClosureCheck(args) => cmd_closure_check(&args),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}

fn parse_field(s: &str) -> Result<Field, Failure> {
    Ok(s.parse::<Field>()?)
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path)
        .map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))
}

fn read_matrix(path: &Path, field: Field) -> Result<Matrix, Failure> {
    Matrix::parse(&read(path)?, field)
        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn cmd_factor(args: &FactorArgs) -> Outcome {
    let field = parse_field(&args.field)?;
    let base = read_matrix(&args.base, field)?;
    let target = read_matrix(&args.target, field)?;
    let (cert, trace) = factor(&base, &target)?;
    fs::write(&args.out, cert.to_text())
        .map_err(|e| Failure::Input(format!("cannot write {}: {e}", args.out.display())))?;
    println!("factor count: {}", cert.factor_count());
    if let Some(ranks) = trace.step2_ranks() {
        println!("idempotent descent rk(M - I): {ranks:?}");
    }
    if args.trace {
        for entry in &trace.entries {
            print!(
                "{:?}: certificate length {}",
                entry.step, entry.certificate_len
            );
            if !entry.rank_sequence.is_empty() {
                print!(", ranks {:?}", entry.rank_sequence);
            }
            println!();
        }
    }
    println!("certificate written to {}", args.out.display());
    Ok(())
}

fn cmd_verify(args: &VerifyArgs) -> Outcome {
    let cert = SimilarityCertificate::from_text(&read(&args.cert)?)
        .map_err(|e| Failure::Input(format!("{}: {e}", args.cert.display())))?;
    let report = verify(&cert);
    println!("factor count: {}", report.factor_count);
    if report.valid {
        println!("valid");
        return Ok(());
    }
    if let Some(i) = report.failing_index {
        println!("first failing index: {i}");
    }
    Err(Failure::Invalid(
        report
            .failure_reason
            .unwrap_or_else(|| "certificate rejected".into()),
    ))
}

fn poly_list<T: ToString>(items: &[T]) -> String {
    let parts: Vec<String> = items.iter().map(ToString::to_string).collect();
    format!("[{}]", parts.join(", "))
}

fn cmd_canon(args: &CanonArgs) -> Outcome {
    let field = parse_field(&args.field)?;
    let m = read_matrix(&args.matrix, field)?;
    let factors = invariant_factors(&m)?;
    let fd = fitting_decompose(&m)?;
    println!("invariant factors: {}", poly_list(&factors));
    println!("invertible block: {}", fd.invertible_block.rows());
    println!("nilpotent blocks: {:?}", fd.nilpotent_block_sizes);
    println!("rank: {}", m.rank());
    println!(
        "semisimple at 0: {}",
        if semisimple_at_zero(&m) { "yes" } else { "no" }
    );
    Ok(())
}

fn inline_matrix(m: &Matrix) -> String {
    let rows: Vec<String> = (0..m.rows())
        .map(|i| {
            let row: Vec<String> = m.row(i).iter().map(ToString::to_string).collect();
            format!("[{}]", row.join(","))
        })
        .collect();
    format!("[{}]", rows.join(","))
}

fn parse_sweep(s: &str) -> Result<usize, Failure> {
    s.strip_prefix("n=")
        .and_then(|k| k.parse().ok())
        .ok_or_else(|| Failure::Input(format!("expected --sweep n=<k>, got `{s}`")))
}

fn cmd_closure_check(args: &ClosureArgs) -> Outcome {
    let field = parse_field(&args.field)?;
    if !field.is_finite() {
        return Err(Failure::Input(
            "closure-check requires a finite field gf:<p>".into(),
        ));
    }
    let opts = ClosureOptions {
        cap: args.cap,
        parallel: args.jobs > 1,
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(args.jobs.max(1))
        .build()
        .map_err(|e| Failure::Input(format!("cannot start {} workers: {e}", args.jobs)))?;

    let rows: Vec<(Matrix, ClosureReport)> = match (&args.matrix, &args.sweep) {
        (Some(path), _) => {
            let m = read_matrix(path, field)?;
            let report = pool.install(|| theorem_check(&m, &opts))?;
            vec![(m, report)]
        }
        (None, Some(sweep_arg)) => {
            let n = parse_sweep(sweep_arg)?;
            pool.install(|| sweep(field, n, &opts))?
                .into_iter()
                .map(|e| (e.representative, e.report))
                .collect()
        }
        (None, None) => return Err(Failure::Input("give --matrix or --sweep".into())),
    };

    if args.json {
        let records: Vec<serde_json::Value> = rows
            .iter()
            .map(|(m, r)| {
                let mut v = serde_json::to_value(r).expect("report serializes");
                v["representative"] = serde_json::Value::String(inline_matrix(m));
                v
            })
            .collect();
        let out = if args.matrix.is_some() {
            serde_json::to_string_pretty(&records[0])
        } else {
            serde_json::to_string_pretty(&records)
        };
        println!("{}", out.expect("json output"));
    } else {
        print!("{}", table(&rows));
    }

    let failed = rows.iter().filter(|(_, r)| !r.equal).count();
    if failed == 0 {
        Ok(())
    } else {
        Err(Failure::Invalid(format!(
            "{failed} of {} classes do not generate S_p",
            rows.len()
        )))
    }
}

fn table(rows: &[(Matrix, ClosureReport)]) -> String {
    let header = [
        "representative",
        "field",
        "n",
        "rank",
        "class",
        "closure",
        "S_p",
        "equal",
        "invariant factors",
    ];
    let body: Vec<[String; 9]> = rows
        .iter()
        .map(|(m, r)| {
            [
                inline_matrix(m),
                r.field.to_string(),
                r.n.to_string(),
                r.rank.to_string(),
                r.class_size.to_string(),
                r.closure_size.to_string(),
                r.s_p_size.to_string(),
                if r.equal { "yes" } else { "no" }.to_string(),
                poly_list(&r.generator_canonical_form),
            ]
        })
        .collect();
    let mut widths = header.map(str::len);
    for row in &body {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let mut out = String::new();
    let mut line = |cells: Vec<&str>| {
        let padded: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, &w)| format!("{c:<w$}"))
            .collect();
        let _ = writeln!(out, "{}", padded.join("  ").trim_end());
    };
    line(header.to_vec());
    for row in &body {
        line(row.iter().map(String::as_str).collect());
    }
    out
}
