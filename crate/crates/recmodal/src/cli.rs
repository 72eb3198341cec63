//! Command-line driver.
//!
//! Exit codes: 0 for an affirmative result (valid, ok, agreement), 1 for a
//! negative one (refuted, proof error, mismatch), 2 for usage or internal
//! errors. Results go to standard output; diagnostics to standard error.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use recmodal_core::decide::{decide, LogicMode, Verdict};
use recmodal_core::formula::{sample, ClosureSet, Formula};
use recmodal_core::hilbert::check_proof;
use recmodal_core::kripke::ForcingTable;
use recmodal_core::recfun::{eval_program, parse_sexp, realize, realize_deterministic, verify_realization, EvalMode};
use serde_json::json;

use crate::corpus::{check_formula, TriangleConfig};
use crate::files::{parse_formula, read_json, write_json, BundleFile, ModelFile, ProofFile};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum LogicArg {
    R,
    Rd,
    Rforall,
}

impl From<LogicArg> for LogicMode {
    fn from(l: LogicArg) -> Self {
        match l {
            LogicArg::R => LogicMode::R,
            LogicArg::Rd => LogicMode::Rd,
            LogicArg::Rforall => LogicMode::RForall,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Det,
    Nondet,
}

#[derive(Debug, Parser)]
#[command(name = "recmodal", version, about = "Decide, check and realize formulas of the logics of partial recursive functions")]
pub struct Cli {
    /// Print machine-readable JSON instead of a summary line.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, clap::Args)]
pub struct FormulaArg {
    /// The formula, e.g. "(true |> p) |> p".
    #[arg(required_unless_present = "formula_file")]
    pub formula: Option<String>,
    /// Read the formula from a file instead.
    #[arg(long = "formula-file", conflicts_with = "formula")]
    pub formula_file: Option<PathBuf>,
}

impl FormulaArg {
    fn load(&self) -> Result<Formula> {
        let text = match (&self.formula, &self.formula_file) {
            (Some(text), _) => text.clone(),
            (None, Some(path)) => fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?,
            (None, None) => bail!("no formula given"),
        };
        Ok(parse_formula(text.trim())?)
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide validity; write a countermodel file if refuted.
    Decide {
        #[command(flatten)]
        formula: FormulaArg,
        #[arg(long, value_enum, default_value = "r")]
        logic: LogicArg,
        /// Where to write the countermodel.
        #[arg(long, default_value = "countermodel.json")]
        out: PathBuf,
    },
    /// Evaluate a formula in a model file. Uses the formula and world
    /// recorded in the file when none are given.
    CheckModel {
        model: PathBuf,
        formula: Option<String>,
        /// Only check this world.
        #[arg(long)]
        world: Option<String>,
    },
    /// Check a proof file.
    CheckProof { proof: PathBuf },
    /// Realize a model file as program codes.
    Realize {
        model: PathBuf,
        /// `rd` and `rforall` require a deterministic model.
        #[arg(long, value_enum, default_value = "r")]
        logic: LogicArg,
        #[arg(long, env = "RECMODAL_BUDGET", default_value_t = recmodal_core::recfun::DEFAULT_BUDGET)]
        budget: usize,
        #[arg(long, default_value = "bundle.json")]
        out: PathBuf,
    },
    /// Compare code membership with forcing over a formula's closure.
    VerifyRealization {
        bundle: PathBuf,
        #[command(flatten)]
        formula: FormulaArg,
    },
    /// Run a program on an input.
    Eval {
        code: String,
        #[arg(default_value = "nil")]
        input: String,
        #[arg(long, value_enum, default_value = "nondet")]
        mode: ModeArg,
        #[arg(long, env = "RECMODAL_BUDGET", default_value_t = recmodal_core::recfun::DEFAULT_BUDGET)]
        budget: usize,
    },
    /// Run formulas through decide, model checking, the oracle and
    /// realization, and print the agreement table.
    Corpus {
        /// One formula per line; blank lines and `#` comments are skipped.
        /// Without it, a sample of formulas over p, q of depth ≤ 2 is used.
        #[arg(long)]
        file: Option<PathBuf>,
        #[arg(long, default_value_t = 200)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "r")]
        logic: LogicArg,
        /// Oracle search bound in worlds; 0 disables the oracle.
        #[arg(long, default_value_t = 3)]
        oracle_bound: usize,
        #[arg(long, default_value_t = 6)]
        max_realized_worlds: usize,
        #[arg(long, env = "RECMODAL_BUDGET", default_value_t = recmodal_core::recfun::DEFAULT_BUDGET)]
        budget: usize,
    },
}

/// Outcome of a command: affirmative or negative.
type Outcome = bool;

fn emit(out: &mut impl Write, json: bool, summary: &str, value: serde_json::Value) -> Result<()> {
    if json {
        writeln!(out, "{}", serde_json::to_string_pretty(&value)?)?;
    } else {
        writeln!(out, "{summary}")?;
    }
    Ok(())
}

fn run_decide(out: &mut impl Write, json: bool, formula: &FormulaArg, logic: LogicArg, path: &Path) -> Result<Outcome> {
    let phi = formula.load()?;
    let mode = LogicMode::from(logic);
    match decide(&phi, mode)? {
        Verdict::Valid => {
            emit(out, json, "valid", json!({"verdict": "valid", "formula": phi.to_string(), "logic": mode.name()}))?;
            Ok(true)
        }
        Verdict::Refuted { model, world } => {
            let mut file = ModelFile::from_model(&model);
            file.formula = Some(phi.to_string());
            file.logic = Some(mode.name().to_string());
            file.world = Some(model.world_name(world).to_string());
            write_json(path, &file)?;
            let summary = format!(
                "refuted at world {} of a {}-world countermodel (written to {})",
                model.world_name(world),
                model.len(),
                path.display()
            );
            let value = json!({
                "verdict": "refuted",
                "formula": phi.to_string(),
                "logic": mode.name(),
                "world": model.world_name(world),
                "model": file,
            });
            emit(out, json, &summary, value)?;
            Ok(false)
        }
    }
}

fn run_check_model(
    out: &mut impl Write,
    json: bool,
    path: &Path,
    formula: Option<&str>,
    world: Option<&str>,
) -> Result<Outcome> {
    let file: ModelFile = read_json(path)?;
    let model = file.to_model()?;
    let text = match formula {
        Some(text) => text.to_string(),
        None => file.formula.clone().context("no formula given and none recorded in the model file")?,
    };
    let world = world.map(String::from).or(if formula.is_none() { file.world.clone() } else { None });
    let phi = parse_formula(&text)?;
    let table = ForcingTable::new(&model, &phi);
    let worlds: Vec<usize> = match &world {
        Some(w) => vec![model.world_index(w)?],
        None => (0..model.len()).collect(),
    };
    let forced: Vec<(String, bool)> = worlds
        .iter()
        .map(|&w| (model.world_name(w).to_string(), table.forced(w)))
        .collect();
    let holds = forced.iter().all(|(_, f)| *f);
    let failing: Vec<&str> = forced.iter().filter(|(_, f)| !f).map(|(w, _)| w.as_str()).collect();
    let summary = if holds {
        format!("{phi} holds at {}", if world.is_some() { "the world" } else { "every world" })
    } else {
        format!("{phi} fails at {}", failing.join(", "))
    };
    let value = json!({
        "formula": phi.to_string(),
        "holds": holds,
        "deterministic": model.is_deterministic(),
        "forced": forced.iter().map(|(w, f)| json!({"world": w, "forced": f})).collect::<Vec<_>>(),
    });
    emit(out, json, &summary, value)?;
    Ok(holds)
}

fn run_check_proof(out: &mut impl Write, json: bool, path: &Path) -> Result<Outcome> {
    let file: ProofFile = read_json(path)?;
    let proof = file.to_proof()?;
    let report = check_proof(&proof);
    let conclusion = proof.conclusion().map(|c| c.to_string()).unwrap_or_default();
    let summary = if report.is_ok() {
        format!("ok: {conclusion}")
    } else if report.errors.is_empty() {
        "error: empty proof".to_string()
    } else {
        let errs: Vec<String> = report.errors.iter().map(|e| e.to_string()).collect();
        format!("error: {}", errs.join("; "))
    };
    let value = json!({
        "ok": report.is_ok(),
        "theorem": report.proves_theorem(),
        "conclusion": conclusion,
        "errors": report.errors.iter().map(|e| json!({"line": e.line, "error": e.error.to_string()})).collect::<Vec<_>>(),
    });
    emit(out, json, &summary, value)?;
    Ok(report.is_ok())
}

fn run_realize(out: &mut impl Write, json: bool, path: &Path, logic: LogicArg, budget: usize, dest: &Path) -> Result<Outcome> {
    let model = read_json::<ModelFile>(path)?.to_model()?;
    let bundle = if LogicMode::from(logic).is_deterministic() {
        realize_deterministic(&model, budget)?
    } else {
        realize(&model, budget)?
    };
    let file = BundleFile::from_bundle(&bundle);
    write_json(dest, &file)?;
    let summary = format!("realized {} worlds (written to {})", model.len(), dest.display());
    emit(out, json, &summary, serde_json::to_value(&file)?)?;
    Ok(true)
}

fn run_verify(out: &mut impl Write, json: bool, path: &Path, formula: &FormulaArg) -> Result<Outcome> {
    let bundle = read_json::<BundleFile>(path)?.to_bundle()?;
    let phi = formula.load()?;
    let closure = ClosureSet::new(&phi);
    let report = verify_realization(&bundle, &closure)?;
    let summary = if report.agrees() {
        format!("agreement on {} formulas × {} worlds", report.formulas.len(), bundle.codes.len())
    } else {
        format!("{} mismatches", report.mismatches.len())
    };
    let worlds = bundle.model.worlds();
    let rows: Vec<_> = report
        .formulas
        .iter()
        .enumerate()
        .map(|(f, phi)| {
            json!({
                "formula": phi.to_string(),
                "member": worlds.iter().zip(&report.member[f]).filter(|(_, m)| **m).map(|(w, _)| w).collect::<Vec<_>>(),
                "forced": worlds.iter().zip(&report.forced[f]).filter(|(_, m)| **m).map(|(w, _)| w).collect::<Vec<_>>(),
            })
        })
        .collect();
    let mismatches: Vec<_> = report
        .mismatches
        .iter()
        .map(|&(f, w)| json!({"formula": report.formulas[f].to_string(), "world": worlds[w]}))
        .collect();
    emit(out, json, &summary, json!({"agrees": report.agrees(), "matrix": rows, "mismatches": mismatches}))?;
    Ok(report.agrees())
}

fn run_eval(out: &mut impl Write, json: bool, code: &str, input: &str, mode: ModeArg, budget: usize) -> Result<Outcome> {
    let code = parse_sexp(code).context("parsing the program")?;
    let input = parse_sexp(input).context("parsing the input")?;
    let mode = match mode {
        ModeArg::Det => EvalMode::Deterministic,
        ModeArg::Nondet => EvalMode::Nondeterministic,
    };
    let r = eval_program(&code, &input, budget, mode)?;
    let values: Vec<String> = r.values.iter().map(|v| v.to_string()).collect();
    let mut summary = format!("{{{}}}", values.join(", "));
    if r.definitely_divergent {
        summary.push_str(" (divergent)");
    }
    if r.budget_exhausted {
        summary.push_str(" (budget exhausted)");
    }
    if r.branch_overflow {
        summary.push_str(" (branch limit reached)");
    }
    let value = json!({
        "values": values,
        "budget_exhausted": r.budget_exhausted,
        "branch_overflow": r.branch_overflow,
        "definitely_divergent": r.definitely_divergent,
        "steps": r.steps,
    });
    emit(out, json, &summary, value)?;
    Ok(r.is_complete())
}

#[allow(clippy::too_many_arguments)]
fn run_corpus(
    out: &mut impl Write,
    json: bool,
    file: Option<&Path>,
    count: usize,
    seed: u64,
    logic: LogicArg,
    oracle_bound: usize,
    max_realized_worlds: usize,
    budget: usize,
) -> Result<Outcome> {
    let formulas: Vec<Formula> = match file {
        Some(path) => fs::read_to_string(path)
            .with_context(|| format!("reading {}", path.display()))?
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(parse_formula)
            .collect::<Result<_, _>>()?,
        None => sample(&["p", "q"], 2, count, seed),
    };
    let config = TriangleConfig {
        mode: logic.into(),
        oracle_bound: (oracle_bound > 0).then_some(oracle_bound),
        max_realized_worlds,
        probes: 2,
        seed,
        budget,
    };
    let mut rows = Vec::with_capacity(formulas.len());
    for phi in &formulas {
        rows.push(check_formula(phi, &config)?);
    }
    let agree = rows.iter().all(|r| r.agrees());
    if json {
        writeln!(out, "{}", serde_json::to_string_pretty(&json!({"agrees": agree, "rows": rows}))?)?;
    } else {
        writeln!(out, "{:<6} {:<8} {:<8} {:<8} {:<11} {:<6} formula", "decide", "kripke", "oracle", "enum", "realization", "agree")?;
        let word = |refuted: bool| if refuted { "refuted" } else { "valid" };
        for r in &rows {
            let oracle = r.oracle_refuted.map_or("-", |o| if o { "refuted" } else { "none" });
            let status = match &r.realization {
                crate::corpus::RealizationStatus::Agrees => "agrees",
                crate::corpus::RealizationStatus::Mismatch => "MISMATCH",
                crate::corpus::RealizationStatus::Skipped => "skipped",
                crate::corpus::RealizationStatus::Error(_) => "ERROR",
            };
            writeln!(
                out,
                "{:<6} {:<8} {:<8} {:<8} {:<11} {:<6} {}",
                if r.valid { "valid" } else { "refut" },
                word(r.kripke_refuted),
                oracle,
                word(r.enumeration_refuted),
                status,
                if r.agrees() { "yes" } else { "NO" },
                r.formula
            )?;
        }
        let valid = rows.iter().filter(|r| r.valid).count();
        writeln!(
            out,
            "{} formulas, {} valid, {} refuted, {}",
            rows.len(),
            valid,
            rows.len() - valid,
            if agree { "all verdicts agree" } else { "DISAGREEMENT" }
        )?;
    }
    Ok(agree)
}

/// Runs a parsed command, writing results to `out`.
pub fn run(cli: &Cli, out: &mut impl Write) -> Result<Outcome> {
    let json = cli.json;
    match &cli.command {
        Command::Decide { formula, logic, out: path } => run_decide(out, json, formula, *logic, path),
        Command::CheckModel { model, formula, world } => {
            run_check_model(out, json, model, formula.as_deref(), world.as_deref())
        }
        Command::CheckProof { proof } => run_check_proof(out, json, proof),
        Command::Realize {
            model,
            logic,
            budget,
            out: dest,
        } => run_realize(out, json, model, *logic, *budget, dest),
        Command::VerifyRealization { bundle, formula } => run_verify(out, json, bundle, formula),
        Command::Eval {
            code,
            input,
            mode,
            budget,
        } => run_eval(out, json, code, input, *mode, *budget),
        Command::Corpus {
            file,
            count,
            seed,
            logic,
            oracle_bound,
            max_realized_worlds,
            budget,
        } => run_corpus(
            out,
            json,
            file.as_deref(),
            *count,
            *seed,
            *logic,
            *oracle_bound,
            *max_realized_worlds,
            *budget,
        ),
    }
}

/// Entry point for the binary.
pub fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    match run(&cli, &mut out) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
