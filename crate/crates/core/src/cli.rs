//! Command-line front end.
//!
//! Every command writes to the supplied writer so that tests can drive it
//! without spawning a process. Matrices are always written as JSON; other
//! results follow `--output`.

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::error::{usage, Error, Result};
use crate::identity::{
    falsify, sample_check, verify_witness, Certificate, Identity, IdentityWitness, Plactic,
    SampleOutcome, SearchBudget, Semigroup, UpperTriangular,
};
use crate::plactic::{Tableau, Word};
use crate::representation::{represent_singleton, Representation};
use crate::subset::chain_length_bound;
use crate::tropical::MatrixJson;

/// Environment variable consulted for the default `--seed`.
pub const SEED_ENV: &str = "PLACTROP_SEED";

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Text,
    Json,
}

/// Settings shared by the sampling commands.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RunConfig {
    pub seed: u64,
    pub trials: u64,
    pub max_word_len: usize,
    pub output: OutputFormat,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig { seed: 0, trials: 1000, max_word_len: 10, output: OutputFormat::Text }
    }
}

#[derive(Debug, Parser)]
#[command(name = "plactrop", version, about = "Plactic monoids via tropical matrices")]
pub struct Cli {
    /// Format for non-matrix results.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    pub output: OutputFormat,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Schensted insertion, reading words and tableau parameters.
    #[command(subcommand)]
    Tableau(TableauCmd),
    /// The subset-indexed matrix representation and its decoder.
    #[command(subcommand)]
    Rep(RepCmd),
    /// Check or falsify semigroup identities.
    #[command(subcommand)]
    Identity(IdentityCmd),
    /// Re-check a witness produced by `identity falsify`.
    VerifyWitness {
        /// Witness JSON file (`-` for stdin).
        #[arg(short, long)]
        file: PathBuf,
    },
    /// Longest chain length of the subset order on `[n]`.
    Chain {
        #[arg(short)]
        n: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum TableauCmd {
    /// Insert a word into the empty tableau.
    Insert {
        /// Digit string (rank <= 9) or JSON array of letters.
        word: String,
        /// Rank; defaults to the largest letter.
        #[arg(short)]
        n: Option<usize>,
    },
    /// Print a reading word of a tableau given as JSON.
    Reading {
        /// Tableau JSON file (`-` for stdin).
        file: PathBuf,
        /// Row reading (the default is column reading).
        #[arg(long, conflicts_with = "column")]
        row: bool,
        #[arg(long)]
        column: bool,
    },
    /// Print the parameters `i_(x,y)` of a tableau given as JSON.
    Params {
        file: PathBuf,
    },
}

#[derive(Debug, Subcommand)]
pub enum RepCmd {
    /// Image of a word, as matrix JSON.
    Matrix {
        #[arg(short)]
        n: usize,
        #[arg(short, long)]
        word: String,
    },
    /// Recover the tableau from a matrix JSON file.
    Decode {
        #[arg(short)]
        n: usize,
        #[arg(short, long)]
        file: PathBuf,
    },
    /// One cardinality block of the image of a word.
    Block {
        #[arg(short)]
        n: usize,
        #[arg(short)]
        k: usize,
        #[arg(short, long)]
        word: String,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Monoid {
    /// Upper triangular tropical matrices.
    Utn,
    /// The plactic monoid.
    Plactic,
}

#[derive(Debug, Args)]
pub struct SeedArg {
    #[arg(long, env = SEED_ENV, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Subcommand)]
pub enum IdentityCmd {
    /// Test an identity on random assignments.
    Check {
        /// Identity such as `xy=yx`.
        identity: String,
        #[arg(long, value_enum, default_value_t = Monoid::Utn)]
        monoid: Monoid,
        #[arg(short)]
        n: usize,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        #[arg(long, default_value_t = 10)]
        max_word_len: usize,
        #[command(flatten)]
        seed: SeedArg,
        /// Worker threads; the report does not depend on this.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Build a plactic counterexample through upper triangular matrices.
    Falsify {
        identity: String,
        #[arg(short)]
        n: usize,
        #[command(flatten)]
        seed: SeedArg,
        /// Random points per word and coordinate range.
        #[arg(long, default_value_t = SearchBudget::default().points_per_range)]
        points: usize,
        /// Number of coordinate ranges `[1, 10^k]` tried.
        #[arg(long, default_value_t = SearchBudget::default().ranges)]
        ranges: u32,
    },
}

/// How a command ended; maps onto the process exit code.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    /// Command succeeded, identity held or witness verified.
    Ok,
    Falsified,
    BudgetExhausted,
}

impl Outcome {
    pub fn code(self) -> i32 {
        match self {
            Outcome::Ok => 0,
            Outcome::Falsified => 1,
            Outcome::BudgetExhausted => 2,
        }
    }
}

/// Exit code for errors, kept apart from the 0/1/2 contract.
pub const ERROR_CODE: i32 = 3;

pub fn run(cli: Cli, out: &mut dyn Write) -> Result<Outcome> {
    let fmt = cli.output;
    match cli.command {
        Command::Tableau(cmd) => cmd_tableau(cmd, fmt, out),
        Command::Rep(cmd) => cmd_rep(cmd, fmt, out),
        Command::Identity(cmd) => cmd_identity(cmd, fmt, out),
        Command::VerifyWitness { file } => cmd_verify(&file, fmt, out),
        Command::Chain { n } => {
            let d = chain_length_bound(n)?;
            match fmt {
                OutputFormat::Text => emit(out, &d.to_string()),
                OutputFormat::Json => emit_json(out, &json!({ "n": n, "chain_length": d })),
            }?;
            Ok(Outcome::Ok)
        }
    }
}

fn cmd_tableau(cmd: TableauCmd, fmt: OutputFormat, out: &mut dyn Write) -> Result<Outcome> {
    match cmd {
        TableauCmd::Insert { word, n } => {
            let n = match n {
                Some(n) => n,
                None => infer_rank(&word)?,
            };
            let t = Tableau::from_word(&Word::parse(n, &word)?);
            write_tableau(out, &t, fmt)?;
        }
        TableauCmd::Reading { file, row, column: _ } => {
            let t: Tableau = read_json(&file)?;
            let w = if row { t.row_reading() } else { t.column_reading() };
            match fmt {
                OutputFormat::Text => emit(out, &w.to_string())?,
                OutputFormat::Json => emit_json(out, &w.letters())?,
            }
        }
        TableauCmd::Params { file } => {
            let t: Tableau = read_json(&file)?;
            let p = t.parameters();
            let n = t.rank();
            match fmt {
                OutputFormat::Text => {
                    let mut text = String::new();
                    for x in 1..=n {
                        let cells: Vec<String> =
                            (1..=n).map(|y| p.get(x, y).to_string()).collect();
                        text.push_str(&cells.join(" "));
                        if x < n {
                            text.push('\n');
                        }
                    }
                    emit(out, &text)?;
                }
                OutputFormat::Json => {
                    let rows: Vec<Vec<u64>> =
                        (1..=n).map(|x| (1..=n).map(|y| p.get(x, y)).collect()).collect();
                    emit_json(out, &json!({ "n": n, "counts": rows }))?;
                }
            }
        }
    }
    Ok(Outcome::Ok)
}

fn cmd_rep(cmd: RepCmd, fmt: OutputFormat, out: &mut dyn Write) -> Result<Outcome> {
    match cmd {
        RepCmd::Matrix { n, word } => {
            let rep = Representation::new(n)?;
            let m = rep.represent(&Word::parse(n, &word)?)?;
            emit_json(out, &MatrixJson::from(&m))?;
        }
        RepCmd::Decode { n, file } => {
            let rep = Representation::new(n)?;
            let m: MatrixJson = read_json(&file)?;
            let t = rep.decode_checked(&m.into_matrix(n)?)?;
            write_tableau(out, &t, fmt)?;
        }
        RepCmd::Block { n, k, word } => {
            let w = Word::parse(n, &word)?;
            let block = if k == 1 {
                // Cheap path that also works above the full-representation cap.
                represent_singleton(n, &w)?
            } else {
                let rep = Representation::new(n)?;
                rep.block(&rep.represent(&w)?, k)?
            };
            emit_json(out, &MatrixJson::from(&block))?;
        }
    }
    Ok(Outcome::Ok)
}

fn cmd_identity(cmd: IdentityCmd, fmt: OutputFormat, out: &mut dyn Write) -> Result<Outcome> {
    match cmd {
        IdentityCmd::Check { identity, monoid, n, trials, max_word_len, seed, jobs } => {
            let id: Identity = identity.parse()?;
            if n == 0 {
                return Err(usage("rank must be at least 1"));
            }
            if trials == 0 || max_word_len == 0 || jobs == 0 {
                return Err(usage("trials, max-word-len and jobs must be positive"));
            }
            let config = RunConfig { seed: seed.seed, trials, max_word_len, output: fmt };
            match monoid {
                Monoid::Utn => {
                    let sg = UpperTriangular::new(n);
                    report_check(&id, &sg, &config, jobs, out)
                }
                Monoid::Plactic => {
                    let sg = Plactic { n, max_word_len };
                    report_check(&id, &sg, &config, jobs, out)
                }
            }
        }
        IdentityCmd::Falsify { identity, n, seed, points, ranges } => {
            let id: Identity = identity.parse()?;
            let budget = SearchBudget { points_per_range: points, ranges };
            match falsify(&id, n, &budget, seed.seed)? {
                Some(w) => {
                    emit_json(out, &w)?;
                    Ok(Outcome::Falsified)
                }
                None => {
                    match fmt {
                        OutputFormat::Text => emit(
                            out,
                            &format!("no separating point found for {id} in rank {n}; budget exhausted"),
                        )?,
                        OutputFormat::Json => emit_json(
                            out,
                            &json!({ "identity": id.to_string(), "n": n, "status": "budget_exhausted" }),
                        )?,
                    }
                    Ok(Outcome::BudgetExhausted)
                }
            }
        }
    }
}

fn report_check<S: Semigroup>(
    id: &Identity,
    sg: &S,
    config: &RunConfig,
    jobs: usize,
    out: &mut dyn Write,
) -> Result<Outcome>
where
    S::Element: Serialize + std::fmt::Display,
{
    let outcome = sample_check(id, sg, config.trials, config.seed, jobs)?;
    match (&outcome, config.output) {
        (SampleOutcome::Held { trials }, OutputFormat::Text) => {
            emit(out, &format!("held: {id} in {} over {trials} trials (seed {})", sg.name(), config.seed))?
        }
        (SampleOutcome::Held { trials }, OutputFormat::Json) => emit_json(
            out,
            &json!({
                "identity": id.to_string(),
                "monoid": sg.name(),
                "status": "held",
                "trials": trials,
                "config": config,
            }),
        )?,
        (SampleOutcome::Counterexample { trial, assignment, evaluation }, OutputFormat::Text) => {
            let mut text =
                format!("falsified: {id} in {} at trial {trial} (seed {})\n", sg.name(), config.seed);
            for (c, e) in id.alphabet().iter().zip(assignment) {
                text.push_str(&format!("{c} =\n{e}"));
            }
            text.push_str(&format!("left side =\n{}right side =\n{}", evaluation.lhs, evaluation.rhs));
            emit(out, text.trim_end())?;
        }
        (SampleOutcome::Counterexample { trial, assignment, evaluation }, OutputFormat::Json) => {
            let vars: serde_json::Map<String, serde_json::Value> = id
                .alphabet()
                .iter()
                .zip(assignment)
                .map(|(c, e)| Ok((c.to_string(), to_value(e)?)))
                .collect::<Result<_>>()?;
            emit_json(
                out,
                &json!({
                    "identity": id.to_string(),
                    "monoid": sg.name(),
                    "status": "falsified",
                    "trial": trial,
                    "config": config,
                    "assignment": vars,
                    "lhs": to_value(&evaluation.lhs)?,
                    "rhs": to_value(&evaluation.rhs)?,
                }),
            )?
        }
    }
    Ok(match outcome {
        SampleOutcome::Held { .. } => Outcome::Ok,
        SampleOutcome::Counterexample { .. } => Outcome::Falsified,
    })
}

fn cmd_verify(file: &Path, fmt: OutputFormat, out: &mut dyn Write) -> Result<Outcome> {
    let w: IdentityWitness = read_json(file)?;
    verify_witness(&w)?;
    let kind = match w.certificate {
        Certificate::Content { .. } => "content",
        Certificate::Tropical { .. } => "tropical",
    };
    match fmt {
        OutputFormat::Text => {
            emit(out, &format!("verified: {} fails in P_{} ({kind} certificate)", w.identity, w.n))?
        }
        OutputFormat::Json => emit_json(
            out,
            &json!({ "identity": w.identity, "n": w.n, "certificate": kind, "status": "verified" }),
        )?,
    }
    Ok(Outcome::Ok)
}

/// Smallest rank containing every letter of `word`; at least 1.
fn infer_rank(word: &str) -> Result<usize> {
    let trimmed = word.trim();
    if trimmed.starts_with('[') {
        let letters: Vec<usize> = serde_json::from_str(trimmed).map_err(json_error)?;
        return Ok(letters.into_iter().max().unwrap_or(1).max(1));
    }
    Ok(trimmed.chars().filter_map(|c| c.to_digit(10)).max().unwrap_or(1).max(1) as usize)
}

fn write_tableau(out: &mut dyn Write, t: &Tableau, fmt: OutputFormat) -> Result<()> {
    match fmt {
        OutputFormat::Text => emit(out, t.to_string().trim_end()),
        OutputFormat::Json => emit_json(out, t),
    }
}

fn to_value<T: Serialize + ?Sized>(value: &T) -> Result<serde_json::Value> {
    serde_json::to_value(value).map_err(|e| Error::InvariantViolation(e.to_string()))
}

fn emit(out: &mut dyn Write, text: &str) -> Result<()> {
    writeln!(out, "{text}").map_err(|e| Error::Io(e.to_string()))
}

fn emit_json<T: Serialize + ?Sized>(out: &mut dyn Write, value: &T) -> Result<()> {
    let text =
        serde_json::to_string(value).map_err(|e| Error::InvariantViolation(e.to_string()))?;
    emit(out, &text)
}

fn json_error(e: serde_json::Error) -> Error {
    Error::Parse { position: e.column().saturating_sub(1), message: e.to_string() }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let text = if path == Path::new("-") {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(|e| Error::Io(e.to_string()))?;
        s
    } else {
        fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?
    };
    serde_json::from_str(&text).map_err(json_error)
}

