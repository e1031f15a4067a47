//! Command-line front end for `ctxprob`.
//!
//! [`run`] parses the arguments, dispatches to the library and writes the
//! report. Exit status: 0 on success, 1 on a domain error (one
//! `error: ...` line on the error stream), 2 on a usage error.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use anyhow::{anyhow, Context as _, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::Value;

use ctxprob::json::{self, ParsedMatrix};
use ctxprob::table;
use ctxprob::{
    birkhoff_decompose, born_cond_prob_matrix, canonical_partition_labels, check_orthogonal_rep,
    classical_cond_prob_matrix, classify_partial, classify_stochastic, enumerate_two_valued_states,
    exotic_cond_prob_matrix, exotic_half_state, intrinsic_prepare, parse_logic, read_logic, row_polytope_decompose_tol,
    simulate_cond_prob_sharded, state_probability_vector, validate_logic, Decomposition, Logic, Matrix, Measure,
    OrthogonalRep, PartitionLabeling, PureState, StochasticError, StochasticVerdict, UrnSpec,
};

#[derive(Debug, Parser)]
#[command(name = "ctxprob", version, about = "Probabilities on intertwined contexts")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Numerical tolerance for real-valued checks.
    #[arg(long, global = true, default_value_t = ctxprob::DEFAULT_TOL, value_parser = parse_tol)]
    pub tol: f64,
    /// Seed for the urn simulator.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check a logic against the pasting rules, optionally with an orthogonal representation.
    Validate {
        #[arg(long)]
        logic: PathBuf,
        #[arg(long)]
        rep: Option<PathBuf>,
    },
    /// Enumerate the two-valued states of a logic.
    States {
        #[arg(long)]
        logic: PathBuf,
    },
    /// Emit the canonical partition labels of every atom.
    Labels {
        #[arg(long)]
        logic: PathBuf,
    },
    /// Conditional-probability matrix between two contexts.
    #[command(subcommand)]
    Condprob(Condprob),
    /// Classify a matrix as row/doubly stochastic, or check an orthogonal representation.
    Check(CheckArgs),
    /// Decompose a doubly stochastic matrix into permutation matrices.
    Birkhoff {
        #[arg(long)]
        matrix: PathBuf,
    },
    /// Decompose a row-stochastic matrix into row-vertex matrices.
    Rowdecomp {
        #[arg(long)]
        matrix: PathBuf,
    },
    /// Estimate a conditional-probability matrix by drawing from the urn model.
    Simulate(SimulateArgs),
}

#[derive(Debug, Subcommand)]
pub enum Condprob {
    /// Exact matrix from a measure over the two-valued states.
    Classical {
        #[arg(long)]
        logic: PathBuf,
        #[arg(long)]
        measure: PathBuf,
        #[arg(long)]
        rows: String,
        #[arg(long)]
        cols: String,
    },
    /// Born-rule matrix from an orthogonal representation.
    Quantum {
        #[arg(long)]
        logic: PathBuf,
        #[arg(long)]
        rep: PathBuf,
        #[arg(long)]
        rows: String,
        #[arg(long)]
        cols: String,
        /// Also report outcome probabilities in `--cols` for the pure state of this atom.
        #[arg(long)]
        state: Option<String>,
    },
    /// Matrix of the half-valued state of an odd cyclic pasting.
    Exotic {
        #[arg(long)]
        logic: PathBuf,
        #[arg(long)]
        rows: String,
        #[arg(long)]
        cols: String,
    },
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    #[arg(long, required_unless_present = "logic", conflicts_with = "logic")]
    pub matrix: Option<PathBuf>,
    #[arg(long, requires = "rep")]
    pub logic: Option<PathBuf>,
    #[arg(long, requires = "logic")]
    pub rep: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[arg(long)]
    pub logic: PathBuf,
    #[arg(long)]
    pub measure: PathBuf,
    #[arg(long)]
    pub row_context: String,
    #[arg(long)]
    pub col_context: String,
    /// Number of draws.
    #[arg(short = 'N', long = "draws", value_name = "N")]
    pub draws: u64,
    /// Worker threads; the counts depend on this value.
    #[arg(long, default_value_t = 1)]
    pub shards: usize,
    /// Prepare this atom first, as seen from `--prepare-context`.
    #[arg(long, requires = "prepare_context")]
    pub prepare: Option<String>,
    #[arg(long, requires = "prepare")]
    pub prepare_context: Option<String>,
}

fn parse_tol(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(t) if t.is_finite() && t >= 0.0 => Ok(t),
        _ => Err(format!("`{s}` is not a nonnegative number")),
    }
}

/// Runs one invocation and returns its exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let _ = if e.use_stderr() { write!(err, "{}", e.render()) } else { write!(out, "{}", e.render()) };
            return code;
        }
    };
    match execute(&cli) {
        Ok(report) => match out.write_all(report.as_bytes()) {
            Ok(()) => 0,
            Err(e) => {
                let _ = writeln!(err, "error: {e}");
                1
            }
        },
        Err(e) => {
            let message = format!("{e:#}").replace('\n', " ");
            let _ = writeln!(err, "error: {message}");
            1
        }
    }
}

/// Produces the report text for a parsed invocation.
pub fn execute(cli: &Cli) -> Result<String> {
    let fmt = cli.format;
    match &cli.command {
        Command::Validate { logic, rep } => validate(logic, rep.as_deref(), cli.tol, fmt),
        Command::States { logic } => {
            let family = enumerate_two_valued_states(&load_logic(logic)?);
            Ok(emit(fmt, json::states_json(&family), || table::states_table(&family)))
        }
        Command::Labels { logic } => {
            let labeling = labeling(logic)?;
            Ok(emit(fmt, json::labels_json(&labeling), || table::labels_table(&labeling)))
        }
        Command::Condprob(kind) => condprob(kind, cli.tol, fmt),
        Command::Check(args) => check(args, cli.tol, fmt),
        Command::Birkhoff { matrix } => match load_matrix(matrix)? {
            ParsedMatrix::Rational(m) => {
                let d = birkhoff_decompose(&total(&m)?, cli.tol)?;
                Ok(emit(fmt, json::decomposition_json(&d), || decomposition_table(&d)))
            }
            ParsedMatrix::Real(m) => {
                let d = birkhoff_decompose(&m, cli.tol)?;
                Ok(emit(fmt, json::decomposition_json(&d), || decomposition_table(&d)))
            }
        },
        Command::Rowdecomp { matrix } => match load_matrix(matrix)? {
            ParsedMatrix::Rational(m) => {
                let d = row_polytope_decompose_tol(&total(&m)?, cli.tol)?;
                Ok(emit(fmt, json::decomposition_json(&d), || decomposition_table(&d)))
            }
            ParsedMatrix::Real(m) => {
                let d = row_polytope_decompose_tol(&m, cli.tol)?;
                Ok(emit(fmt, json::decomposition_json(&d), || decomposition_table(&d)))
            }
        },
        Command::Simulate(args) => simulate(args, cli.seed, fmt),
    }
}

fn emit(fmt: Format, value: Value, table: impl FnOnce() -> String) -> String {
    match fmt {
        Format::Json => {
            let mut text = serde_json::to_string_pretty(&value).expect("json values serialize");
            text.push('\n');
            text
        }
        Format::Table => table(),
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn load_logic(path: &Path) -> Result<Logic> {
    parse_logic(&read(path)?).with_context(|| format!("{}", path.display()))
}

fn load_measure(path: &Path) -> Result<Measure> {
    Measure::parse(&read(path)?).with_context(|| format!("{}", path.display()))
}

fn load_rep(path: &Path) -> Result<OrthogonalRep> {
    OrthogonalRep::parse(&read(path)?).with_context(|| format!("{}", path.display()))
}

fn load_matrix(path: &Path) -> Result<ParsedMatrix> {
    json::parse_matrix(&read(path)?).map_err(|e| anyhow!("{}: malformed matrix: {e}", path.display()))
}

fn labeling(path: &Path) -> Result<PartitionLabeling> {
    let family = enumerate_two_valued_states(&load_logic(path)?);
    Ok(canonical_partition_labels(&family)?)
}

fn total<T: Clone>(m: &Matrix<Option<T>>) -> Result<Matrix<T>, StochasticError> {
    ctxprob::decompose::reject_partial(m)
}

fn validate(logic: &Path, rep: Option<&Path>, tol: f64, fmt: Format) -> Result<String> {
    let logic = read_logic(&read(logic)?).with_context(|| format!("{}", logic.display()))?;
    let mut report = validate_logic(&logic);
    if let Some(rep) = rep {
        let rep_report = check_orthogonal_rep(&logic, &load_rep(rep)?, tol)?;
        report.violations.extend(rep_report.violations);
        report.warnings.extend(rep_report.warnings);
    }
    Ok(emit(fmt, json::logic_report_json(&logic, &report), || report_table(&report)))
}

fn report_table(report: &ctxprob::ValidationReport) -> String {
    let mut out = format!("valid: {}\n", report.is_valid());
    for v in &report.violations {
        out.push_str(&format!("violation {v}\n"));
    }
    for w in &report.warnings {
        out.push_str(&format!("warning {w}\n"));
    }
    out
}

fn condprob(kind: &Condprob, tol: f64, fmt: Format) -> Result<String> {
    match kind {
        Condprob::Classical { logic, measure, rows, cols } => {
            let labeling = labeling(logic)?;
            let m = classical_cond_prob_matrix(&labeling, &load_measure(measure)?, rows, cols)?;
            Ok(emit(fmt, json::cond_matrix_json(&m), || table::cond_matrix_table(&m)))
        }
        Condprob::Quantum { logic, rep, rows, cols, state } => {
            let logic = load_logic(logic)?;
            let rep = load_rep(rep)?;
            let (first, second) = (rep.basis(&logic, rows)?, rep.basis(&logic, cols)?);
            let m = born_cond_prob_matrix(&first, &second, tol)?;
            let probs = match state {
                Some(atom) => {
                    let v = rep.vector(atom).ok_or_else(|| anyhow!("no vector for atom `{atom}`"))?;
                    let psi = PureState::new(v.to_vec(), tol)?;
                    Some(state_probability_vector(&psi, &second)?)
                }
                None => None,
            };
            let value = json::born_json(rows, cols, &m, state.as_deref().zip(probs.as_deref()));
            Ok(emit(fmt, value, || {
                let (r, c) = (
                    &logic.context(rows).expect("basis built").atoms,
                    &logic.context(cols).expect("basis built").atoms,
                );
                let mut text = table::labeled_matrix(&format!("{cols}|{rows}"), r, c, &m);
                if let (Some(atom), Some(p)) = (state, &probs) {
                    let cells: Vec<String> = p.iter().map(ToString::to_string).collect();
                    text.push_str(&format!("state {atom} in {cols}: {}\n", cells.join("  ")));
                }
                text
            }))
        }
        Condprob::Exotic { logic, rows, cols } => {
            let state = exotic_half_state(&load_logic(logic)?)?;
            let m = exotic_cond_prob_matrix(&state, rows, cols)?;
            Ok(emit(fmt, json::cond_matrix_json(&m), || table::cond_matrix_table(&m)))
        }
    }
}

fn check(args: &CheckArgs, tol: f64, fmt: Format) -> Result<String> {
    if let (Some(logic), Some(rep)) = (&args.logic, &args.rep) {
        let logic = load_logic(logic)?;
        let report = check_orthogonal_rep(&logic, &load_rep(rep)?, tol)?;
        return Ok(emit(fmt, json::validation_json(&report), || report_table(&report)));
    }
    let path = args.matrix.as_ref().expect("clap enforces --matrix or --logic/--rep");
    match load_matrix(path)? {
        ParsedMatrix::Rational(m) => {
            let v = classify_partial(&m, tol)?;
            Ok(emit(fmt, json::verdict_json(&v), || verdict_table(&v)))
        }
        ParsedMatrix::Real(m) => {
            let v = classify_stochastic(&m, tol)?;
            Ok(emit(fmt, json::verdict_json(&v), || verdict_table(&v)))
        }
    }
}

fn verdict_table<T: std::fmt::Display>(v: &StochasticVerdict<T>) -> String {
    let sums = |xs: Vec<String>| xs.join("  ");
    let mut out = format!(
        "row stochastic: {}\ndoubly stochastic: {}\npartial: {}\nrow sums: {}\ncolumn sums: {}\n",
        v.row_stochastic,
        v.doubly_stochastic,
        v.partial,
        sums(v.row_sums.iter().map(|s| s.as_ref().map_or(json::UNDEFINED.to_string(), ToString::to_string)).collect()),
        sums(v.col_sums.iter().map(ToString::to_string).collect()),
    );
    for violation in &v.violations {
        out.push_str(&format!("violation: {violation}\n"));
    }
    out
}

fn decomposition_table<T: ctxprob::Scalar>(d: &Decomposition<T>) -> String {
    let rows: Vec<Vec<String>> = d
        .terms
        .iter()
        .map(|t| {
            let vertex: Vec<String> = t.vertex.iter().map(ToString::to_string).collect();
            vec![t.coeff.to_string(), format!("[{}]", vertex.join(","))]
        })
        .collect();
    table::render(&["coeff".into(), d.kind.name().into()], &rows)
}

fn simulate(args: &SimulateArgs, seed: u64, fmt: Format) -> Result<String> {
    let labeling = Arc::new(labeling(&args.logic)?);
    let mut measure = load_measure(&args.measure)?;
    if let (Some(atom), Some(context)) = (&args.prepare, &args.prepare_context) {
        let spec = UrnSpec::new((*labeling).clone(), measure, seed)?;
        measure = intrinsic_prepare(&spec, context, atom)?;
    }
    let exact = classical_cond_prob_matrix(&labeling, &measure, &args.row_context, &args.col_context)?;
    let spec = UrnSpec::new((*labeling).clone(), measure.clone(), seed)?;
    let e = simulate_cond_prob_sharded(&spec, &args.row_context, &args.col_context, args.draws, args.shards)?;
    Ok(emit(fmt, json::simulation_json(&e, &exact, &measure), || {
        let mut text = table::labeled_matrix("counts", &e.row_atoms, &e.col_atoms, &e.counts);
        let est = e.estimates().map(|x| x.map_or(json::UNDEFINED.to_string(), |v| format!("{v:.6}")));
        text.push_str(&table::labeled_matrix("estimates", &e.row_atoms, &e.col_atoms, &est));
        text.push_str(&format!("max abs deviation: {}\n", json::max_deviation(&e, &exact)));
        text
    }))
}
