//! Command-line front end for the plane-cubics library.
//!
//! Every subcommand builds the field tower for `--q`, runs one library
//! operation, and emits a report on standard output (or `--out`) in the
//! format chosen by `--format` (JSON by default; JSON reports round-trip
//! through the library's own parsers).
//!
//! Exit codes are conventional so the binary scripts cleanly:
//!
//! * `0` — success;
//! * `1` — usage error (bad flags, bad forms, out-of-range parameters);
//! * `2` — a verification failed (a scan found a member it should not
//!   have, or a claimed-irreducible row degenerated);
//! * `3` — a randomized search exhausted its budget without deciding
//!   anything.
//!
//! Failures print exactly one `error: ...` line on the diagnostic
//! stream.

use std::fs;
use std::io::Write as _;
use std::path::PathBuf;
use std::process;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

use plane_cubics::classify::classify;
use plane_cubics::construct::{
    explicit_construction, galois_orbit_construction, monomial_family_check, ORBIT_SEARCH_BUDGET,
};
use plane_cubics::forms::text::cubic_from_str;
use plane_cubics::gf::tower::make_tower;
use plane_cubics::linsys::LinearSystem;
use plane_cubics::report::{
    census_view, classify_view, explicit_view, extension_view, family_view, orbit_view,
    search_view, table_view, witness_log_line, Format, Render,
};
use plane_cubics::search::{
    census_count, extension_check, random_search, verify_table_row, verify_witness_table,
    SearchConfig, WITNESS_TABLE,
};
use plane_cubics::Error;

#[derive(Parser)]
#[command(
    name = "cubics",
    version,
    about = "Linear systems of plane cubics with every member geometrically irreducible",
    arg_required_else_help = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Report format: json, csv, or text.
    #[arg(long, global = true, default_value = "json")]
    format: String,

    /// Write the report to this file instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Worker threads for member scans (0 uses every core).
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Re-verify the bundled witness systems (all rows, or one q).
    VerifyTable(VerifyTableArgs),
    /// Deterministic witness built from a normal element of the cubic
    /// extension.
    Explicit(FieldArgs),
    /// Randomized witness cut out by a conjugate orbit of six points.
    Orbit(OrbitArgs),
    /// Exhaustively classify the four-monomial family over F_q.
    #[command(name = "lemma31")]
    Lemma31(FieldArgs),
    /// Randomly search for a system with no degenerate member.
    Search(SearchArgs),
    /// Re-read a system over an extension field and re-scan every member.
    Extend(ExtendArgs),
    /// Count geometrically reducible cubics over F_q by brute force.
    Census(FieldArgs),
    /// Classify one cubic form.
    Classify(ClassifyArgs),
}

#[derive(Args)]
struct FieldArgs {
    /// Field size (a prime power).
    #[arg(long)]
    q: u64,
}

#[derive(Args)]
struct VerifyTableArgs {
    /// Verify only the bundled row for this field size.
    #[arg(long)]
    q: Option<u64>,
}

#[derive(Args)]
struct OrbitArgs {
    /// Field size (a prime power).
    #[arg(long)]
    q: u64,

    /// Seed for the point draws.
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Candidate points to try per phase before giving up.
    #[arg(long, default_value_t = ORBIT_SEARCH_BUDGET)]
    max_iters: u64,
}

#[derive(Args)]
struct SearchArgs {
    /// Field size (a prime power).
    #[arg(long)]
    q: u64,

    /// Seed for the coefficient draws.
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Independent candidate systems to try before giving up.
    #[arg(long, default_value_t = SearchConfig::default().max_iters)]
    max_iters: u64,

    /// Append any accepted witness to this newline-delimited JSON log.
    #[arg(long)]
    witness_log: Option<PathBuf>,
}

#[derive(Args)]
struct ExtendArgs {
    /// Field size the forms are read over (a prime power).
    #[arg(long)]
    q: u64,

    /// Extension degree: members range over F_{q^k}.
    #[arg(long)]
    k: u32,

    /// Use the bundled table row for this field size as the system
    /// (every bundled row has 0/1 coefficients, so any --q works).
    #[arg(long, conflicts_with = "form")]
    table_row: Option<u64>,

    /// Basis form, given exactly four times.
    #[arg(long)]
    form: Vec<String>,
}

#[derive(Args)]
struct ClassifyArgs {
    /// Field size (a prime power).
    #[arg(long)]
    q: u64,

    /// The cubic to classify, e.g. "x^3 + y*z^2".
    #[arg(long)]
    form: String,
}

/// A rendered report plus the exit status it should terminate with.
/// `note` is the one-line diagnostic for nonzero codes.
struct CmdOutput {
    report: String,
    code: i32,
    note: Option<String>,
}

impl CmdOutput {
    fn ok(report: String) -> Self {
        CmdOutput {
            report,
            code: 0,
            note: None,
        }
    }
}

type CliError = (i32, String);

fn usage(msg: String) -> CliError {
    (1, format!("error: {msg}"))
}

/// Maps library errors onto the exit-code contract.
fn fail(e: Error) -> CliError {
    let code = match &e {
        Error::Verification(_) | Error::DependentBasis { .. } => 2,
        Error::BudgetExhausted(_) => 3,
        _ => 1,
    };
    (code, format!("error: {e}"))
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            process::exit(code);
        }
    };
    match run(&cli) {
        Ok(out) => {
            match &cli.out {
                Some(path) => {
                    if let Err(e) = fs::write(path, &out.report) {
                        eprintln!("error: cannot write {}: {e}", path.display());
                        process::exit(1);
                    }
                }
                None => print!("{}", out.report),
            }
            if let Some(note) = &out.note {
                eprintln!("{note}");
            }
            process::exit(out.code);
        }
        Err((code, msg)) => {
            eprintln!("{msg}");
            process::exit(code);
        }
    }
}

fn run(cli: &Cli) -> Result<CmdOutput, CliError> {
    let format: Format = cli.format.parse().map_err(|e: Error| usage(e.to_string()))?;
    if cli.threads > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(cli.threads)
            .build_global()
            .map_err(|e| usage(format!("cannot size the thread pool: {e}")))?;
    }
    match &cli.command {
        Command::VerifyTable(args) => cmd_verify_table(args, format),
        Command::Explicit(args) => cmd_explicit(args, format),
        Command::Orbit(args) => cmd_orbit(args, format),
        Command::Lemma31(args) => cmd_family(args, format),
        Command::Search(args) => cmd_search(args, format),
        Command::Extend(args) => cmd_extend(args, format),
        Command::Census(args) => cmd_census(args, format),
        Command::Classify(args) => cmd_classify(args, format),
    }
}

fn cmd_verify_table(args: &VerifyTableArgs, format: Format) -> Result<CmdOutput, CliError> {
    let rows = match args.q {
        Some(q) => {
            let entry = WITNESS_TABLE
                .iter()
                .find(|row| row.q == q)
                .ok_or_else(|| usage(format!("no bundled row for q = {q}; rows exist for q = 2, 3, 4, 5, 7, 8, 9, 11")))?;
            vec![verify_table_row(entry).map_err(fail)?]
        }
        None => verify_witness_table().map_err(fail)?,
    };
    Ok(CmdOutput::ok(table_view(&rows).render(format)))
}

fn cmd_explicit(args: &FieldArgs, format: Format) -> Result<CmdOutput, CliError> {
    let tower = make_tower(args.q).map_err(fail)?;
    let witness = explicit_construction(&tower);
    Ok(CmdOutput::ok(explicit_view(&tower, &witness).render(format)))
}

fn cmd_orbit(args: &OrbitArgs, format: Format) -> Result<CmdOutput, CliError> {
    let tower = make_tower(args.q).map_err(fail)?;
    let witness = galois_orbit_construction(&tower, args.seed, args.max_iters).map_err(fail)?;
    Ok(CmdOutput::ok(orbit_view(&tower, &witness).render(format)))
}

fn cmd_family(args: &FieldArgs, format: Format) -> Result<CmdOutput, CliError> {
    let tower = make_tower(args.q).map_err(fail)?;
    let report = monomial_family_check(&tower).map_err(fail)?;
    Ok(CmdOutput::ok(family_view(&report).render(format)))
}

fn cmd_search(args: &SearchArgs, format: Format) -> Result<CmdOutput, CliError> {
    let tower = make_tower(args.q).map_err(fail)?;
    let cfg = SearchConfig {
        seed: args.seed,
        max_iters: args.max_iters,
        ..SearchConfig::default()
    };
    let outcome = random_search(&tower, &cfg);
    if let (Some(path), Some(line)) = (&args.witness_log, witness_log_line(&tower, &outcome)) {
        fs::OpenOptions::new()
            .create(true)
            .append(true)
            .open(path)
            .and_then(|mut f| f.write_all(line.as_bytes()))
            .map_err(|e| usage(format!("cannot append to {}: {e}", path.display())))?;
    }
    let found = outcome.witness.is_some();
    let report = search_view(&tower, &outcome).render(format);
    Ok(CmdOutput {
        report,
        code: if found { 0 } else { 3 },
        note: (!found).then(|| {
            format!(
                "error: no witness within {} candidates (seed {})",
                outcome.candidates, outcome.seed
            )
        }),
    })
}

fn cmd_extend(args: &ExtendArgs, format: Format) -> Result<CmdOutput, CliError> {
    let tower = make_tower(args.q).map_err(fail)?;
    let base = tower.base();
    let (label, forms): (String, Vec<String>) = match args.table_row {
        Some(table_q) => {
            let entry = WITNESS_TABLE
                .iter()
                .find(|row| row.q == table_q)
                .ok_or_else(|| {
                    usage(format!(
                        "no bundled row for q = {table_q}; rows exist for q = 2, 3, 4, 5, 7, 8, 9, 11"
                    ))
                })?;
            (
                format!("table row q={table_q} read over q={}", args.q),
                entry.forms.iter().map(|s| s.to_string()).collect(),
            )
        }
        None => {
            if args.form.len() != 4 {
                return Err(usage(format!(
                    "a system needs exactly four --form values, got {}",
                    args.form.len()
                )));
            }
            (format!("cli system q={}", args.q), args.form.clone())
        }
    };
    let basis = forms
        .iter()
        .map(|s| cubic_from_str(base, s))
        .collect::<Result<Vec<_>, _>>()
        .map_err(fail)?;
    let system = LinearSystem::new(base, basis, label).map_err(fail)?;
    let outcome = extension_check(base, &system, args.k).map_err(fail)?;
    let view = extension_view(&outcome);
    let clean = view.clean;
    let reducible = view.scan.reducible.len();
    Ok(CmdOutput {
        report: view.render(format),
        code: if clean { 0 } else { 2 },
        note: (!clean).then(|| {
            format!(
                "error: {reducible} member(s) degenerate over F_{}",
                outcome.extended_q
            )
        }),
    })
}

fn cmd_census(args: &FieldArgs, format: Format) -> Result<CmdOutput, CliError> {
    let tower = make_tower(args.q).map_err(fail)?;
    let outcome = census_count(&tower).map_err(fail)?;
    Ok(CmdOutput::ok(census_view(&outcome).render(format)))
}

fn cmd_classify(args: &ClassifyArgs, format: Format) -> Result<CmdOutput, CliError> {
    let tower = make_tower(args.q).map_err(fail)?;
    let form = cubic_from_str(tower.base(), &args.form).map_err(fail)?;
    let verdict = classify(&tower, &form);
    Ok(CmdOutput::ok(
        classify_view(&tower, &form, &verdict).render(format),
    ))
}
