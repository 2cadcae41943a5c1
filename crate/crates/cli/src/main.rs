mod error;
mod file;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use aritygap_core::generators::{lift, quasi_linear, random_function, LiftSpec, QuasiLinearSpec};
use aritygap_core::verifier::{search_large_gap, sweep, GapSearchConfig, Population, SweepReport, TheoremId, SCHEMA};
use aritygap_core::{classify, gap_report, identify, to_anf, Budget, Error, FiniteFunction, VariableIndex};
use clap::{ArgGroup, Args, Parser, Subcommand};
use serde::Deserialize;
use serde_json::json;

use crate::error::{CliError, EXIT_VIOLATIONS};

/// Essential arity, identification minors and arity gap of finite functions.
#[derive(Debug, Parser)]
#[command(name = "aritygap", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Essential variables, essl, gap and a witness minor.
    Analyze {
        path: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Zhegalkin polynomial of a Boolean function.
    Anf {
        path: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Match a Boolean function against the gap-2 shapes.
    Classify {
        path: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Check one theorem over a population of functions.
    Sweep(SweepArgs),
    /// Look for functions with a large arity gap.
    Search(SearchArgs),
    /// Write a function file.
    Generate(GenerateArgs),
}

#[derive(Debug, Args)]
struct SweepArgs {
    /// thm1, thmsalomaamain, thmgen, thmsalomaaaux, lemkplus1, thmstr or lemdeg2
    #[arg(long)]
    theorem: TheoremId,
    #[arg(long)]
    k: u32,
    /// Codomain size, defaults to k.
    #[arg(long)]
    b: Option<u32>,
    #[arg(long)]
    n: usize,
    /// Sample this many functions instead of enumerating all of them.
    #[arg(long)]
    count: Option<u64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Keep samples outside the hypothesis instead of redrawing them.
    #[arg(long)]
    no_reject: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Args)]
struct SearchArgs {
    #[arg(long)]
    k: u32,
    #[arg(long)]
    n: usize,
    /// Codomain size, defaults to k.
    #[arg(long)]
    b: Option<u32>,
    #[arg(long, default_value_t = 10_000)]
    count: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 3)]
    min_gap: usize,
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("source").required(true).args(["quasilinear", "lift", "random"])))]
struct GenerateArgs {
    /// JSON {k, n, h, g}
    #[arg(long, value_name = "SPEC.json")]
    quasilinear: Option<PathBuf>,
    /// JSON {base: {k, n, table}, target_size, gamma, phi}
    #[arg(long, value_name = "SPEC.json")]
    lift: Option<PathBuf>,
    #[arg(long, num_args = 4, value_names = ["K", "B", "N", "SEED"])]
    random: Option<Vec<u64>>,
    /// Write here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Use the hexadecimal body (Boolean functions only).
    #[arg(long)]
    hex: bool,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct BaseFile {
    k: u32,
    n: usize,
    b: Option<u32>,
    table: Vec<u32>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct LiftFile {
    base: BaseFile,
    target_size: u32,
    gamma: Vec<u32>,
    phi: Vec<u32>,
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

fn load(path: &Path) -> Result<FiniteFunction, CliError> {
    file::parse(&read(path)?).map_err(|e| e.in_file(path))
}

fn print_json(value: &impl serde::Serialize) {
    println!("{}", serde_json::to_string_pretty(value).expect("reports serialize"));
}

fn variables(vs: &[VariableIndex]) -> String {
    if vs.is_empty() {
        return "(none)".into();
    }
    vs.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

fn table_text(table: &[u32]) -> String {
    table.iter().map(u32::to_string).collect::<Vec<_>>().join(" ")
}

fn analyze(path: &Path, as_json: bool) -> Result<u8, CliError> {
    let f = load(path)?;
    let essential = f.essential_variables();
    let report = match gap_report(&f) {
        Ok(r) => Some(r),
        Err(Error::EssentialArityTooSmall { .. }) => None,
        Err(e) => return Err(e.into()),
    };
    let minor = report.map(|r| identify(&f, r.witness.0, r.witness.1)).transpose()?;
    if as_json {
        print_json(&json!({
            "schema": SCHEMA,
            "k": f.domain_size(),
            "n": f.arity(),
            "b": f.codomain_size(),
            "ess": essential.len(),
            "essential": essential,
            "essl": report.map(|r| r.essl),
            "gap": report.map(|r| r.gap),
            "witness": report.map(|r| [r.witness.0, r.witness.1]),
            "witness_minor": minor.as_ref().map(FiniteFunction::table),
        }));
        return Ok(0);
    }
    match (report, minor) {
        (Some(r), Some(m)) => {
            let (i, j) = (r.witness.0.get(), r.witness.1.get());
            println!("ess={} essl={} gap={} witness=({i},{j})", r.ess, r.essl, r.gap);
            println!("essential: {}", variables(&essential));
            println!("witness minor x{i}<-x{j}: {}", table_text(m.table()));
        }
        _ => {
            println!("ess={} gap: undefined", essential.len());
            println!("essential: {}", variables(&essential));
        }
    }
    Ok(0)
}

fn anf(path: &Path, as_json: bool) -> Result<u8, CliError> {
    let p = to_anf(&load(path)?)?;
    if as_json {
        let monomials: Vec<_> = p.monomials().collect();
        print_json(&json!({
            "schema": SCHEMA,
            "arity": p.arity(),
            "degree": p.degree(),
            "polynomial": p.to_string(),
            "monomials": monomials,
        }));
    } else {
        println!("{p}");
    }
    Ok(0)
}

fn classify_cmd(path: &Path, as_json: bool) -> Result<u8, CliError> {
    let form = classify(&to_anf(&load(path)?)?)?;
    if as_json {
        print_json(&json!({
            "schema": SCHEMA,
            "tag": form.tag,
            "participants": form.participants,
            "c": form.c,
            "gap": form.gap(),
        }));
    } else if form.is_special() {
        let c = form.c.map_or_else(String::new, |c| format!(" c={c}"));
        println!("{} participants={}{c} gap={}", form.tag, variables(&form.participants), form.gap());
    } else {
        println!("{} gap={}", form.tag, form.gap());
    }
    Ok(0)
}

fn print_sweep(r: &SweepReport) {
    match r.population {
        Population::Exhaustive { k, b, n } => println!("{} exhaustive k={k} b={b} n={n}", r.theorem),
        Population::Sampled { k, b, n, count, seed, reject } => {
            println!("{} sampled k={k} b={b} n={n} count={count} seed={seed} reject={reject}", r.theorem)
        }
    }
    println!(
        "population={} checked={} skipped={} rejected={} exhaustive={}",
        r.population_size, r.checked, r.skipped, r.rejected, r.exhaustive
    );
    if r.theorem == TheoremId::Thm1 {
        if let Some(strategy) = r.strategy {
            println!("strategy={}", serde_json::to_value(strategy).expect("plain enum").as_str().unwrap_or("?"));
        }
        println!("witnesses={}", r.witness_count);
        for w in &r.witnesses {
            println!("witness: {}", table_text(w));
        }
    }
    println!("violations={}", r.violations.len());
    for v in r.violations.iter().take(20) {
        println!("violation #{}: {}: {}", v.index, v.detail, table_text(&v.table));
    }
}

fn sweep_cmd(args: &SweepArgs, budget: Budget) -> Result<u8, CliError> {
    let b = args.b.unwrap_or(args.k);
    let population = match args.count {
        None => Population::Exhaustive { k: args.k, b, n: args.n },
        Some(count) => Population::Sampled { k: args.k, b, n: args.n, count, seed: args.seed, reject: !args.no_reject },
    };
    let report = sweep(args.theorem, population, budget)?;
    if args.json {
        print_json(&report);
    } else {
        print_sweep(&report);
    }
    Ok(if report.passed() { 0 } else { EXIT_VIOLATIONS })
}

fn search_cmd(args: &SearchArgs, budget: Budget) -> Result<u8, CliError> {
    let config = GapSearchConfig {
        k: args.k,
        b: args.b.unwrap_or(args.k),
        n: args.n,
        count: args.count,
        seed: args.seed,
        min_gap: args.min_gap,
        budget,
    };
    let r = search_large_gap(config)?;
    if args.json {
        print_json(&r);
    } else {
        let stats = format!(
            "samples={} skipped={} rejected={} max_gap_seen={}",
            r.samples, r.skipped, r.rejected, r.max_gap_seen
        );
        if r.found() {
            println!("found {} function(s) with gap >= {}: {stats}", r.hits, r.min_gap);
            for c in &r.certificates {
                let (i, j) = (c.report.witness.0.get(), c.report.witness.1.get());
                println!(
                    "sample #{}: ess={} essl={} gap={} witness=({i},{j}) verified={}: {}",
                    c.index,
                    c.report.ess,
                    c.report.essl,
                    c.report.gap,
                    c.verified,
                    table_text(&c.table)
                );
            }
        } else {
            println!("none found: {stats}");
        }
    }
    // a certificate that fails its own re-check is an internal inconsistency
    Ok(if r.certificates.iter().all(|c| c.verified) { 0 } else { EXIT_VIOLATIONS })
}

fn generate(args: &GenerateArgs, budget: Budget) -> Result<u8, CliError> {
    let f = if let Some(path) = &args.quasilinear {
        let spec: QuasiLinearSpec = serde_json::from_str(&read(path)?).map_err(|e| CliError::from(e).in_file(path))?;
        quasi_linear(&spec)?
    } else if let Some(path) = &args.lift {
        let spec: LiftFile = serde_json::from_str(&read(path)?).map_err(|e| CliError::from(e).in_file(path))?;
        let base = FiniteFunction::new(spec.base.k, spec.base.b.unwrap_or(spec.base.k), spec.base.n, spec.base.table)
            .map_err(|e| Error::SpecInvalid(format!("base: {e}")))?;
        lift(&LiftSpec { base, target_size: spec.target_size, gamma: spec.gamma, phi: spec.phi })?
    } else if let Some(&[k, b, n, seed]) = args.random.as_deref() {
        let narrow = |v: u64, what: &str| {
            u32::try_from(v).map_err(|_| Error::InvalidParameter(format!("{what} = {v} is too large")))
        };
        random_function(narrow(k, "k")?, narrow(b, "b")?, n as usize, seed, budget)?
    } else {
        unreachable!("clap requires one source")
    };
    let text = if args.hex {
        file::write_hex(&f)
            .ok_or_else(|| Error::InvalidParameter("hex output needs a Boolean function of arity <= 26".into()))?
    } else {
        file::write(&f)
    };
    match &args.out {
        Some(path) => fs::write(path, text).map_err(|source| CliError::Io { path: path.clone(), source })?,
        None => print!("{text}"),
    }
    Ok(0)
}

fn run(cli: Cli) -> Result<u8, CliError> {
    let budget = Budget::from_env()?;
    match &cli.command {
        Command::Analyze { path, json } => analyze(path, *json),
        Command::Anf { path, json } => anf(path, *json),
        Command::Classify { path, json } => classify_cmd(path, *json),
        Command::Sweep(args) => sweep_cmd(args, budget),
        Command::Search(args) => search_cmd(args, budget),
        Command::Generate(args) => generate(args, budget),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("aritygap: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
