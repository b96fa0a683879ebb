//! `eumr`: run the verification suites and evaluate single objects.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value as Json};

use eumr::elemgen::{orbit_enumerate, word_matrix, GenWord, DEFAULT_ORBIT_BUDGET};
use eumr::harness::{
    combined_status, emit_report, emit_reports, fixture_dir_or_default, run_all, run_suite_with, Format,
    FixtureStore, SuiteName, SuiteSpec,
};
use eumr::ortho::phi_word;
use eumr::suslin::{suslin_coords, suslin_matrix};
use eumr::{Elem, RMatrix, Ring};

#[derive(Parser)]
#[command(name = "eumr", version, about = "Exact checks for Suslin matrices and elementary generators")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one suite, or `all` of them.
    Check(CheckArgs),
    /// Build a Suslin matrix or read its coordinates back.
    #[command(subcommand)]
    Suslin(SuslinCommand),
    /// Evaluate generator words.
    #[command(subcommand)]
    Gen(GenCommand),
    /// Image of a generator word in the split orthogonal group.
    Phi(WordArgs),
    /// Count unimodular vectors over Z/m and the elementary orbit of e1.
    Orbit {
        #[arg(long)]
        modulus: u64,
        #[arg(long, default_value_t = 2)]
        r: usize,
        #[arg(long, default_value_t = DEFAULT_ORBIT_BUDGET)]
        budget: u64,
    },
}

#[derive(Args)]
struct CheckArgs {
    /// Suite name, or `all`.
    suite: String,
    #[arg(long, default_value_t = 2)]
    r: usize,
    /// Ring spec such as `Zmod:15` or `Poly:Q[x,y]`; each suite has a default.
    #[arg(long)]
    ring: Option<String>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    trials: Option<u64>,
    #[arg(long, conflicts_with = "text")]
    json: bool,
    #[arg(long)]
    text: bool,
    /// Fixture directory (overrides the environment variable).
    #[arg(long)]
    fixtures: Option<PathBuf>,
}

#[derive(Subcommand)]
enum SuslinCommand {
    /// Print S_r(v, w) as a JSON array of rows.
    Build {
        #[arg(long)]
        r: usize,
        #[arg(long, default_value = "Q")]
        ring: String,
        /// Comma separated entries.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        v: Vec<String>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        w: Vec<String>,
    },
    /// Recover (v, w) from a Suslin matrix stored as JSON rows.
    Coords {
        #[arg(long)]
        r: usize,
        #[arg(long, default_value = "Q")]
        ring: String,
        #[arg(long)]
        matrix: PathBuf,
    },
}

#[derive(Subcommand)]
enum GenCommand {
    /// Multiply out a word of generator atoms.
    Eval(WordArgs),
}

#[derive(Args)]
struct WordArgs {
    #[arg(long)]
    r: usize,
    #[arg(long, default_value = "Q")]
    ring: String,
    /// JSON list of atoms, or `@path` to read it from a file.
    #[arg(long)]
    word: String,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<u8> {
    match command {
        Command::Check(args) => check(args),
        Command::Suslin(SuslinCommand::Build { r, ring, v, w }) => {
            let ring = Ring::parse(&ring)?;
            let (v, w) = (elems(&ring, &v)?, elems(&ring, &w)?);
            if v.len() != r + 1 || w.len() != r + 1 {
                bail!("v and w need {} entries each for r = {r}", r + 1);
            }
            print_json(&suslin_matrix(&v, &w)?.to_json());
            Ok(0)
        }
        Command::Suslin(SuslinCommand::Coords { r, ring, matrix }) => {
            let ring = Ring::parse(&ring)?;
            let text = std::fs::read_to_string(&matrix).with_context(|| format!("reading {}", matrix.display()))?;
            let m = RMatrix::from_json(&ring, &serde_json::from_str(&text)?)?;
            let (v, w) = suslin_coords(&m, r)?;
            print_json(&json!({ "v": strings(&v), "w": strings(&w) }));
            Ok(0)
        }
        Command::Gen(GenCommand::Eval(args)) => {
            let (ring, word) = read_word(&args)?;
            print_json(&word_matrix(&word, args.r, &ring)?.to_json());
            Ok(0)
        }
        Command::Phi(args) => {
            let (ring, word) = read_word(&args)?;
            print_json(&phi_word(&word, args.r, &ring)?.to_json());
            Ok(0)
        }
        Command::Orbit { modulus, r, budget } => {
            let counts = orbit_enumerate(modulus, r, budget)?;
            print_json(&serde_json::to_value(&counts)?);
            Ok(if counts.orbit_of_e1 == counts.unimodular_total { 0 } else { 1 })
        }
    }
}

fn check(args: CheckArgs) -> Result<u8> {
    let format = if args.text { Format::Text } else { Format::Json };
    let store = FixtureStore::new(fixture_dir_or_default(args.fixtures));
    let template = |name| SuiteSpec {
        name,
        r: args.r,
        ring: args.ring.clone(),
        seed: args.seed,
        trials: args.trials,
    };
    if args.suite == "all" {
        let reports = run_all(&template(SuiteName::SuslinBasic), &store)?;
        emit(&emit_reports(&reports, format));
        Ok(combined_status(&reports).exit_code())
    } else {
        let report = run_suite_with(&template(args.suite.parse()?), &store)?;
        emit(&emit_report(&report, format));
        Ok(report.exit_code())
    }
}

fn elems(ring: &Ring, texts: &[String]) -> Result<Vec<Elem>> {
    texts.iter().map(|t| ring.parse_elem(t.trim()).map_err(Into::into)).collect()
}

fn strings(xs: &[Elem]) -> Vec<String> {
    xs.iter().map(ToString::to_string).collect()
}

fn read_word(args: &WordArgs) -> Result<(Ring, GenWord)> {
    let ring = Ring::parse(&args.ring)?;
    let text = match args.word.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path).with_context(|| format!("reading {path}"))?,
        None => args.word.clone(),
    };
    let json: Json = serde_json::from_str(&text).context("parsing the word")?;
    let word = GenWord::from_json(&ring, &json)?;
    Ok((ring, word))
}

fn print_json(value: &Json) {
    emit(&(serde_json::to_string_pretty(value).expect("json serializes") + "\n"));
}

/// Writes to stdout, treating a closed pipe as a normal end of output.
fn emit(text: &str) {
    let mut out = std::io::stdout().lock();
    if let Err(e) = out.write_all(text.as_bytes()).and_then(|()| out.flush()) {
        if e.kind() != std::io::ErrorKind::BrokenPipe {
            eprintln!("error: {e}");
        }
    }
}
