//! `mdsa`: build MDS array codes, stripe files into shards, inject symbol
//! errors, repair, dump field tables, and run decode simulations.

use clap::{Parser, Subcommand, ValueEnum};
use mdsa_core::code::CodeParams;
use mdsa_core::config::CodeConfigFile;
use mdsa_core::decoder::{DoubleErrorDecoder, SingleErrorDecoder, Trace, TripleErrorDecoder};
use mdsa_core::field::{build_field, table_csv, PrimitivePolynomial, Symbol};
use mdsa_core::harness::{run_trials, run_trials_sequential, DecodePath, TrialConfig, TrialStats};
use mdsa_core::stripe::{
    self, decode_stripes, decode_stripes_sequential, encode_stripes, read_shard_set,
    write_shard_set, StripeManifest,
};
use mdsa_core::Error as CoreError;
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "mdsa",
    about = "MDS array codes over GF(2)^b: striping, fault injection, repair, simulation",
    version
)]
struct Cli {
    /// Code configuration file (TOML)
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Seed for random operations
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Per-row correction reports and decode traces
    #[arg(long, global = true)]
    trace: bool,

    /// JSON output where supported
    #[arg(long, global = true)]
    json: bool,

    /// Worker threads for row- and trial-parallel work (1 = sequential)
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Validate the configured code and write its normalized form
    Gen { output: PathBuf },
    /// Stripe-encode a file into n shards plus a manifest
    Encode { input: PathBuf, shard_dir: PathBuf },
    /// Repair shard errors and reassemble the original file
    Decode {
        shard_dir: PathBuf,
        output: PathBuf,
        /// Decoder radius per stripe row (default: min(floor(m/2), 3))
        #[arg(long)]
        max_errors: Option<usize>,
    },
    /// XOR symbol errors into the shards (the manifest is left untouched)
    Corrupt {
        shard_dir: PathBuf,
        /// Symbol position 1..=n to corrupt
        #[arg(long, conflicts_with = "random")]
        position: Option<usize>,
        /// Magnitude bit string of length b (requires --position)
        #[arg(long, requires = "position")]
        magnitude: Option<String>,
        /// Corrupt this many random distinct symbols per target row
        #[arg(long)]
        random: Option<usize>,
        /// Target stripe row (default 0)
        #[arg(long, conflicts_with = "all_rows")]
        row: Option<u64>,
        /// Target every stripe row
        #[arg(long)]
        all_rows: bool,
        /// Allow corruption beyond the decoder radius
        #[arg(long)]
        force: bool,
    },
    /// Dump field tables for the configured code
    Tables {
        #[arg(long, value_enum)]
        what: TableKind,
    },
    /// Monte-Carlo decode trials
    Simulate {
        /// Symbol errors injected per trial
        #[arg(long)]
        t: usize,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        #[arg(long, value_enum, default_value_t = PathArg::Generic)]
        path: PathArg,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum TableKind {
    Log,
    Zech,
    Companion,
}

#[derive(Clone, Copy, ValueEnum)]
enum PathArg {
    Generic,
    Fast,
    Hypothesis,
}

impl From<PathArg> for DecodePath {
    fn from(p: PathArg) -> Self {
        match p {
            PathArg::Generic => DecodePath::Generic,
            PathArg::Fast => DecodePath::VandermondeFast,
            PathArg::Hypothesis => DecodePath::Hypothesis,
        }
    }
}

struct Failure {
    code: u8,
    message: String,
}

fn fail(code: u8, message: impl Into<String>) -> Failure {
    Failure {
        code,
        message: message.into(),
    }
}

fn core_exit_code(e: &CoreError) -> u8 {
    match e {
        CoreError::NotPrimitive => 4,
        CoreError::NotSuperregular
        | CoreError::DuplicateEvaluationPoint
        | CoreError::DuplicatePoint
        | CoreError::SingularPair => 3,
        CoreError::Io(_) => 5,
        _ => 2,
    }
}

impl From<CoreError> for Failure {
    fn from(e: CoreError) -> Self {
        fail(core_exit_code(&e), e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        fail(5, e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    if cli.jobs > 1 {
        mdsa_core::configure_thread_pool(cli.jobs);
    }
    match &cli.cmd {
        Cmd::Gen { output } => cmd_gen(&cli, output),
        Cmd::Encode { input, shard_dir } => cmd_encode(&cli, input, shard_dir),
        Cmd::Decode {
            shard_dir,
            output,
            max_errors,
        } => cmd_decode(&cli, shard_dir, output, *max_errors),
        Cmd::Corrupt {
            shard_dir,
            position,
            magnitude,
            random,
            row,
            all_rows,
            force,
        } => cmd_corrupt(
            &cli,
            shard_dir,
            *position,
            magnitude.as_deref(),
            *random,
            *row,
            *all_rows,
            *force,
        ),
        Cmd::Tables { what } => cmd_tables(&cli, *what),
        Cmd::Simulate { t, trials, path } => cmd_simulate(&cli, *t, *trials, (*path).into()),
    }
}

fn load_config(cli: &Cli) -> Result<CodeConfigFile, Failure> {
    let path = cli
        .config
        .as_ref()
        .ok_or_else(|| fail(2, "--config is required for this command"))?;
    let text =
        std::fs::read_to_string(path).map_err(|e| fail(5, format!("{}: {e}", path.display())))?;
    Ok(CodeConfigFile::parse(&text)?)
}

fn cmd_gen(cli: &Cli, output: &Path) -> Result<(), Failure> {
    let cfg = load_config(cli)?;
    let params = cfg.to_params()?;
    let normalized = CodeConfigFile::from_params(&params);
    std::fs::write(output, normalized.to_toml())?;
    println!(
        "ok: [{},{},{}] code over GF(2)^{}, radius {}",
        params.n(),
        params.k(),
        params.d(),
        params.b(),
        params.radius()
    );
    Ok(())
}

fn cmd_encode(cli: &Cli, input: &Path, shard_dir: &Path) -> Result<(), Failure> {
    let params = load_config(cli)?.to_params()?;
    let data = std::fs::read(input).map_err(|e| fail(5, format!("{}: {e}", input.display())))?;
    let set = if cli.jobs > 1 {
        stripe::par_encode_stripes(&params, &data)
    } else {
        encode_stripes(&params, &data)
    };
    write_shard_set(shard_dir, &set)?;
    println!(
        "encoded {} bytes into {} shards of {} rows",
        data.len(),
        params.n(),
        set.manifest.stripe_rows
    );
    Ok(())
}

fn load_shard_set(dir: &Path) -> Result<(StripeManifest, Vec<Vec<u8>>, CodeParams), Failure> {
    let (manifest, shards) = read_shard_set(dir)?;
    let params = manifest.to_params()?;
    Ok((manifest, shards, params))
}

fn cmd_decode(
    cli: &Cli,
    shard_dir: &Path,
    output: &Path,
    max_errors: Option<usize>,
) -> Result<(), Failure> {
    let (manifest, shards, params) = load_shard_set(shard_dir)?;
    let t = max_errors.unwrap_or_else(|| params.radius().min(3));
    let (data, report) = if cli.jobs > 1 {
        decode_stripes(&params, &manifest, &shards, t, cli.trace)?
    } else {
        decode_stripes_sequential(&params, &manifest, &shards, t, cli.trace)?
    };
    if cli.trace {
        for (row, corrections) in &report.row_corrections {
            let parts: Vec<String> = corrections
                .iter()
                .map(|c| {
                    format!(
                        "pos {} mag {}",
                        c.position,
                        c.magnitude.bit_string(params.b())
                    )
                })
                .collect();
            println!("row {row}: {}", parts.join(", "));
        }
        for (row, _) in &report.row_failures {
            print_row_trace(&params, &shards, *row, t);
        }
    }
    if !report.row_failures.is_empty() {
        let (row, reason) = &report.row_failures[0];
        return Err(fail(
            6,
            format!(
                "{} of {} rows undecodable; first failure at row {row}: {reason:?}",
                report.row_failures.len(),
                report.rows
            ),
        ));
    }
    std::fs::write(output, &data)?;
    for j in &report.digest_mismatches {
        eprintln!(
            "warning: shard {} checksum mismatch after repair (stale manifest or errors beyond radius)",
            j + 1
        );
    }
    println!(
        "decoded {} rows, corrected {} symbols in {} rows",
        report.rows, report.corrected_symbols, report.corrected_rows
    );
    Ok(())
}

/// Re-decodes one row with tracing on; only used to explain failures.
fn print_row_trace(params: &CodeParams, shards: &[Vec<u8>], row: u64, t: usize) {
    let b = params.b();
    let symbols: Vec<Symbol> = shards
        .iter()
        .map(|shard| {
            let mut bits = 0u32;
            for c in 0..b as u64 {
                let idx = row * b as u64 + c;
                let byte = (idx / 8) as usize;
                if byte < shard.len() && (shard[byte] >> (idx % 8)) & 1 == 1 {
                    bits |= 1 << c;
                }
            }
            Symbol(bits)
        })
        .collect();
    let v = mdsa_core::code::Word::new(symbols);
    let mut trace = Trace::new(true);
    let outcome = match t {
        0 | 1 => SingleErrorDecoder::new(params).map(|d| d.decode_traced(&v, &mut trace)),
        2 => DoubleErrorDecoder::new(params).map(|d| d.decode_traced(&v, &mut trace)),
        _ => TripleErrorDecoder::new(params).map(|d| d.decode_traced(&v, &mut trace)),
    };
    println!("row {row} trace ({outcome:?}):");
    for line in trace.lines() {
        println!("  {line}");
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_corrupt(
    cli: &Cli,
    shard_dir: &Path,
    position: Option<usize>,
    magnitude: Option<&str>,
    random: Option<usize>,
    row: Option<u64>,
    all_rows: bool,
    force: bool,
) -> Result<(), Failure> {
    let (manifest, mut shards, params) = load_shard_set(shard_dir)?;
    let (n, b, rows) = (params.n(), params.b(), manifest.stripe_rows);
    if rows == 0 {
        return Err(fail(2, "no stripe rows to corrupt"));
    }
    let check_row = |r: u64| -> Result<u64, Failure> {
        if r >= rows {
            Err(fail(2, format!("row {r} out of range (rows = {rows})")))
        } else {
            Ok(r)
        }
    };
    match (position, random) {
        (Some(pos), None) => {
            let mag = magnitude.ok_or_else(|| fail(2, "--position requires --magnitude"))?;
            if pos == 0 || pos > n {
                return Err(fail(2, format!("position {pos} out of range 1..={n}")));
            }
            let mag = Symbol::parse(mag).map_err(|e| fail(2, e.to_string()))?;
            if mag.is_zero() {
                return Err(fail(2, "magnitude must be nonzero"));
            }
            if mag.0 >> b != 0 || magnitude.unwrap().len() != b as usize {
                return Err(fail(2, format!("magnitude must be exactly {b} bits")));
            }
            let r = check_row(row.unwrap_or(0))?;
            stripe::xor_symbol_into_shard(&mut shards[pos - 1], b, r, mag);
            println!("corrupted position {pos} row {r}");
        }
        (None, Some(t)) => {
            if t == 0 {
                return Err(fail(2, "--random must inject at least one error"));
            }
            if t > n {
                return Err(fail(
                    2,
                    format!("cannot pick {t} distinct positions of {n}"),
                ));
            }
            if t > params.radius() && !force {
                return Err(fail(
                    2,
                    format!(
                        "{t} errors exceed the decoder radius {}; use --force to inject anyway",
                        params.radius()
                    ),
                ));
            }
            let targets: Vec<u64> = if all_rows {
                (0..rows).collect()
            } else {
                vec![check_row(row.unwrap_or(0))?]
            };
            let mask = (1u32 << b) - 1;
            for r in targets {
                let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
                rng.set_stream(r.wrapping_add(1));
                for pos in sample(&mut rng, n, t).iter() {
                    let mag = Symbol(rng.gen_range(1..=mask));
                    stripe::xor_symbol_into_shard(&mut shards[pos], b, r, mag);
                }
            }
            println!(
                "corrupted {t} random symbols per row in {} row(s)",
                if all_rows { rows } else { 1 }
            );
        }
        _ => return Err(fail(2, "specify exactly one of --position or --random")),
    }
    for (j, shard) in shards.iter().enumerate() {
        std::fs::write(shard_dir.join(stripe::shard_file_name(j)), shard)?;
    }
    Ok(())
}

fn cmd_tables(cli: &Cli, what: TableKind) -> Result<(), Failure> {
    let cfg = load_config(cli)?;
    let poly = PrimitivePolynomial::new(cfg.poly)?;
    let tables = build_field(poly)?;
    match what {
        TableKind::Log | TableKind::Zech => print!("{}", table_csv(&tables)),
        TableKind::Companion => {
            let c = tables.companion();
            for r in 0..c.rows() {
                let line: Vec<&str> = (0..c.cols())
                    .map(|j| if c.get(r, j) { "1" } else { "0" })
                    .collect();
                println!("{}", line.join(","));
            }
        }
    }
    Ok(())
}

fn cmd_simulate(cli: &Cli, t: usize, trials: u64, path: DecodePath) -> Result<(), Failure> {
    let params = load_config(cli)?.to_params()?;
    let cfg = TrialConfig {
        params: &params,
        t,
        trials,
        seed: cli.seed,
        path,
    };
    let stats = if cli.jobs > 1 {
        run_trials(&cfg)?
    } else {
        run_trials_sequential(&cfg)?
    };
    let code_id = format!(
        "{}_{}_{}_b{}",
        params.n(),
        params.k(),
        params.d(),
        params.b()
    );
    let path_name = match path {
        DecodePath::Generic => "generic",
        DecodePath::VandermondeFast => "fast",
        DecodePath::Hypothesis => "hypothesis",
    };
    if cli.json {
        println!(
            "{}",
            stats_json(&code_id, t, trials, cli.seed, path_name, &stats)
        );
    } else {
        println!(
            "code,t,trials,seed,path,successes,failures,miscorrections,zech_evals,field_mults,linear_solves,wall_time_s"
        );
        println!(
            "{code_id},{t},{trials},{},{path_name},{},{},{},{},{},{},{:.6}",
            cli.seed,
            stats.successes,
            stats.failures,
            stats.miscorrections,
            stats.zech_evals,
            stats.field_mults,
            stats.linear_solves,
            stats.wall_time.as_secs_f64()
        );
    }
    Ok(())
}

fn stats_json(
    code: &str,
    t: usize,
    trials: u64,
    seed: u64,
    path: &str,
    stats: &TrialStats,
) -> String {
    serde_json::json!({
        "code": code,
        "t": t,
        "trials": trials,
        "seed": seed,
        "path": path,
        "successes": stats.successes,
        "failures": stats.failures,
        "miscorrections": stats.miscorrections,
        "zech_evals": stats.zech_evals,
        "field_mults": stats.field_mults,
        "linear_solves": stats.linear_solves,
        "wall_time_s": stats.wall_time.as_secs_f64(),
    })
    .to_string()
}
