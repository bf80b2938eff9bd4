use std::collections::BTreeMap;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ko_tables::bruhat::IdealEnumeration;
use ko_tables::ko_analysis::{build_ideal, compute_rows, with_threads, TableRow};
use ko_tables::table_io::{self, EmitOptions, Format, PartialRows, SecondColumn};
use ko_tables::verify::{self, Fault, VerifyOptions};
use ko_tables::weights::format_vector;
use ko_tables::{AffineWeylGroup, Error, RankConfig};

const EXIT_USAGE: u8 = 1;
const EXIT_VERIFY: u8 = 2;
const EXIT_IO: u8 = 3;

/// Right-set statistics for the Bruhat ideal below w_max in the affine Weyl
/// group of type A_n.
#[derive(Parser)]
#[command(name = "ko-tables", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute and print the table of rows for A_n.
    Table(TableArgs),
    /// Print w_max, its coset factorization and weight.
    Wmax(RankArgs),
    /// Run the self-check suites.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct RankArgs {
    /// Rank n of A_n.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..=31))]
    rank: u64,
    /// Characteristic p; defaults to the Coxeter number n + 1.
    #[arg(long)]
    p: Option<u32>,
}

impl RankArgs {
    fn config(&self) -> Result<RankConfig, Error> {
        let n = self.rank as usize;
        RankConfig::new(n, self.p.unwrap_or(n as u32 + 1))
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Latex,
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum ColumnArg {
    Epsilon,
    RightSet,
}

#[derive(Args)]
struct TableArgs {
    #[command(flatten)]
    rank: RankArgs,
    /// Keep only rows whose weight is p-restricted.
    #[arg(long)]
    restricted_only: bool,
    #[arg(long, value_enum, default_value = "latex")]
    format: FormatArg,
    /// Second LaTeX column: the weight in epsilon coordinates, or the right set.
    #[arg(long, value_enum, default_value = "epsilon")]
    second_column: ColumnArg,
    /// Write words in LaTeX as bare subscripts.
    #[arg(long)]
    compact_words: bool,
    /// Output file (stdout if omitted).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Directory for cached ideals and rows; enables resuming interrupted runs.
    #[arg(long, env = "KO_TABLES_CACHE_DIR")]
    cache: Option<PathBuf>,
    /// Worker threads (0 = all cores).
    #[arg(long, default_value_t = 0)]
    threads: usize,
}

#[derive(Args)]
struct VerifyArgs {
    /// Restrict every suite to this rank.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..=31))]
    rank: Option<u64>,
    /// Length bound for the brute-force Bruhat oracle.
    #[arg(long, default_value_t = 8)]
    oracle_maxlen: u32,
    /// Swap in a deliberately broken component (for testing the checks).
    #[arg(long)]
    inject_fault: Option<String>,
    #[arg(long, default_value_t = 0)]
    threads: usize,
}

enum Failure {
    Usage(String),
    Verify,
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Io(_) | Error::Json(_) | Error::CacheVersion { .. } | Error::CacheMismatch { .. } | Error::CorruptCache(_) => {
                Failure::Io(e.to_string())
            }
            other => Failure::Usage(other.to_string()),
        }
    }
}

fn io_failure(context: &Path, e: io::Error) -> Failure {
    Failure::Io(format!("{}: {e}", context.display()))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_USAGE) } else { ExitCode::SUCCESS };
        }
    };
    let outcome = match cli.command {
        Command::Table(args) => cmd_table(&args),
        Command::Wmax(args) => cmd_wmax(&args),
        Command::Verify(args) => cmd_verify(&args),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Verify) => ExitCode::from(EXIT_VERIFY),
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_IO)
        }
    }
}

fn cmd_table(args: &TableArgs) -> Result<(), Failure> {
    let cfg = args.rank.config()?;
    if !cfg.is_coxeter_p() {
        return Err(Error::UnsupportedP { p: cfg.p(), h: cfg.h() }.into());
    }
    let rows = with_threads(args.threads, || match &args.cache {
        Some(dir) => rows_with_cache(cfg, dir),
        None => ko_tables::ko_analysis::build_rows(cfg).map_err(Failure::from),
    })?;
    let opts = EmitOptions {
        format: match args.format {
            FormatArg::Latex => Format::Latex,
            FormatArg::Csv => Format::Csv,
            FormatArg::Json => Format::Json,
        },
        restricted_only: args.restricted_only,
        second_column: match args.second_column {
            ColumnArg::Epsilon => SecondColumn::Epsilon,
            ColumnArg::RightSet => SecondColumn::RightSet,
        },
        compact_words: args.compact_words,
    };
    let text = table_io::emit(&rows, &opts, cfg);
    match &args.out {
        Some(path) => fs::write(path, text).map_err(|e| io_failure(path, e)),
        None => io::stdout()
            .lock()
            .write_all(text.as_bytes())
            .map_err(|e| Failure::Io(e.to_string())),
    }
}

fn rows_with_cache(cfg: RankConfig, dir: &Path) -> Result<Vec<TableRow>, Failure> {
    fs::create_dir_all(dir).map_err(|e| io_failure(dir, e))?;
    let stem = format!("A{}_p{}", cfg.n(), cfg.p());
    let rows_path = dir.join(format!("{stem}.rows.jsonl"));
    if rows_path.exists() {
        match table_io::load_cache(&rows_path, cfg) {
            Ok(rows) => return Ok(rows),
            Err(e) => eprintln!("warning: ignoring {}: {e}", rows_path.display()),
        }
    }
    let (group, ideal) = ideal_with_cache(cfg, &dir.join(format!("{stem}.ideal.jsonl")))?;
    let partial_path = dir.join(format!("{stem}.partial.jsonl"));
    let (mut partial, done) = match PartialRows::open(&partial_path, cfg) {
        Ok(opened) => opened,
        Err(e @ (Error::CacheVersion { .. } | Error::CacheMismatch { .. } | Error::CorruptCache(_))) => {
            eprintln!("warning: discarding {}: {e}", partial_path.display());
            fs::remove_file(&partial_path).map_err(|e| io_failure(&partial_path, e))?;
            PartialRows::open(&partial_path, cfg)?
        }
        Err(e) => return Err(e.into()),
    };
    let done: BTreeMap<usize, TableRow> = done.into_iter().filter(|(i, _)| *i < ideal.len()).collect();
    let rows = compute_rows(&group, &ideal, &done, 64, |chunk| partial.append(chunk))?;
    table_io::save_cache(&rows, cfg, &rows_path)?;
    partial.finish()?;
    Ok(rows)
}

fn ideal_with_cache(cfg: RankConfig, path: &Path) -> Result<(AffineWeylGroup, IdealEnumeration), Failure> {
    if path.exists() {
        let group = AffineWeylGroup::new(cfg);
        match table_io::load_ideal(&group, path) {
            Ok(ideal) => return Ok((group, ideal)),
            Err(e) => eprintln!("warning: ignoring {}: {e}", path.display()),
        }
    }
    let (group, ideal) = build_ideal(cfg)?;
    table_io::save_ideal(&ideal, cfg, path)?;
    Ok((group, ideal))
}

fn cmd_wmax(args: &RankArgs) -> Result<(), Failure> {
    let cfg = args.config()?;
    let group = AffineWeylGroup::new(cfg);
    let wmax = group.find_wmax()?;
    let (_, y) = group.coset_factorize(&wmax)?;
    let weight = group.weight_from_element(&wmax);
    let mut out = String::new();
    out.push_str(&format!("rank: {}\np: {}\n", cfg.n(), cfg.p()));
    out.push_str(&format!("reduced word: {}\n", group.reduced_word(&wmax)));
    out.push_str(&format!("w_0: {}\n", group.reduced_word(&group.longest_finite_element())));
    out.push_str(&format!("y: {}\n", group.reduced_word(&y)));
    out.push_str(&format!("length: {}\n", group.length(&wmax)));
    out.push_str(&format!("epsilon: {}\n", format_vector(&group.weight_epsilon(&wmax))));
    out.push_str(&format!("omega: {}\n", format_vector(weight.omega())));
    io::stdout()
        .lock()
        .write_all(out.as_bytes())
        .map_err(|e| Failure::Io(e.to_string()))
}

fn cmd_verify(args: &VerifyArgs) -> Result<(), Failure> {
    let mut opts = VerifyOptions {
        oracle_maxlen: args.oracle_maxlen,
        ..VerifyOptions::default()
    };
    if let Some(r) = args.rank {
        opts = opts.only_rank(r as usize);
    }
    if let Some(f) = &args.inject_fault {
        opts = opts.with_fault(f.parse::<Fault>()?);
    }
    let report = with_threads(args.threads, || verify::run(&opts));
    println!("{report}");
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::Verify)
    }
}
