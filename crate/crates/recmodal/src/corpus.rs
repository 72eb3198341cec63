//! The three-way agreement check: decision procedure, Kripke models and
//! realized program codes.

use recmodal_core::decide::{brute_force_oracle, decide, DecideError, LogicMode, OracleVerdict, Verdict};
use recmodal_core::formula::{ClosureSet, Formula};
use recmodal_core::kripke::{random_model, KripkeModel};
use recmodal_core::recfun::{realize, realize_deterministic, verify_realization, BehaviorTable, Reading, RealizationBundle};
use serde::Serialize;

/// Settings for [`check_formula`].
#[derive(Clone, Debug)]
pub struct TriangleConfig {
    pub mode: LogicMode,
    /// Search bound for the exhaustive oracle; `None` skips it.
    pub oracle_bound: Option<usize>,
    /// Larger countermodels are not realized.
    pub max_realized_worlds: usize,
    /// Random models probed when the formula is valid.
    pub probes: usize,
    pub seed: u64,
    pub budget: usize,
}

/// What happened when realizing a model.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RealizationStatus {
    /// Full agreement of membership and forcing over the closure.
    Agrees,
    /// Some closure formula disagrees at some world.
    Mismatch,
    /// The model has too many worlds.
    Skipped,
    Error(String),
}

/// One formula through the whole pipeline.
#[derive(Clone, Debug, Serialize)]
pub struct TriangleRow {
    pub formula: String,
    pub logic: &'static str,
    /// The decision procedure's verdict.
    pub valid: bool,
    /// Worlds in the countermodel, if refuted.
    pub countermodel_worlds: Option<usize>,
    /// Some model checked by the model checker refutes the formula: the
    /// extracted countermodel, an oracle model or a random probe.
    pub kripke_refuted: bool,
    /// The extracted countermodel, if any, failed to refute the formula.
    pub countermodel_rejected: bool,
    /// The oracle's answer, if run.
    pub oracle_refuted: Option<bool>,
    /// Some realized code falls outside the set the formula denotes.
    pub enumeration_refuted: bool,
    pub realization: RealizationStatus,
}

impl TriangleRow {
    /// Whether all verdicts coincide and every realization agreed.
    pub fn agrees(&self) -> bool {
        let refuted = !self.valid;
        !self.countermodel_rejected
            && self.kripke_refuted == refuted
            && self.oracle_refuted.is_none_or(|o| !o || refuted)
            && self.enumeration_refuted == refuted
            && matches!(self.realization, RealizationStatus::Agrees | RealizationStatus::Skipped)
    }
}

fn realize_for(model: &KripkeModel, mode: LogicMode, budget: usize) -> Result<RealizationBundle, String> {
    let bundle = if mode.is_deterministic() {
        realize_deterministic(model, budget)
    } else {
        realize(model, budget)
    };
    bundle.map_err(|e| e.to_string())
}

/// Realizes `model`, checks the membership/forcing matrix over the closure
/// of `phi`, and reports whether some code falls outside `phi`'s set.
fn realized_check(model: &KripkeModel, phi: &Formula, config: &TriangleConfig) -> (RealizationStatus, bool) {
    if model.len() > config.max_realized_worlds {
        return (RealizationStatus::Skipped, false);
    }
    let result = realize_for(model, config.mode, config.budget).and_then(|bundle| {
        let report = verify_realization(&bundle, &ClosureSet::new(phi)).map_err(|e| e.to_string())?;
        let table = BehaviorTable::compute(&bundle).map_err(|e| e.to_string())?;
        let refuted = table.extension(&bundle, phi, Reading::Existential).len() < bundle.codes.len();
        Ok((report.agrees(), refuted))
    });
    match result {
        Ok((true, refuted)) => (RealizationStatus::Agrees, refuted),
        Ok((false, refuted)) => (RealizationStatus::Mismatch, refuted),
        Err(e) => (RealizationStatus::Error(e), false),
    }
}

fn combine(a: RealizationStatus, b: RealizationStatus) -> RealizationStatus {
    use RealizationStatus::*;
    match (a, b) {
        (Error(e), _) | (_, Error(e)) => Error(e),
        (Mismatch, _) | (_, Mismatch) => Mismatch,
        (Agrees, _) | (_, Agrees) => Agrees,
        _ => Skipped,
    }
}

/// Runs `phi` through decide, the model checker, the optional oracle and
/// realization.
pub fn check_formula(phi: &Formula, config: &TriangleConfig) -> Result<TriangleRow, DecideError> {
    let verdict = decide(phi, config.mode)?;
    let oracle = config
        .oracle_bound
        .map(|bound| brute_force_oracle(phi, config.mode, bound));
    let mut row = TriangleRow {
        formula: phi.to_string(),
        logic: config.mode.name(),
        valid: verdict.is_valid(),
        countermodel_worlds: None,
        kripke_refuted: false,
        countermodel_rejected: false,
        oracle_refuted: oracle.as_ref().map(|o| matches!(o, OracleVerdict::Refuted { .. })),
        enumeration_refuted: false,
        realization: RealizationStatus::Skipped,
    };
    let mut models: Vec<KripkeModel> = Vec::new();
    if let Verdict::Refuted { model, world } = &verdict {
        row.countermodel_worlds = Some(model.len());
        row.countermodel_rejected = model.forces(*world, phi)
            || (config.mode.is_deterministic() && !model.is_deterministic());
        models.push(model.clone());
    }
    if let Some(OracleVerdict::Refuted { model, .. }) = oracle {
        models.push(model);
    }
    if row.valid {
        let vars: Vec<String> = phi.vars().into_iter().map(String::from).collect();
        let vars: Vec<&str> = vars.iter().map(String::as_str).collect();
        for k in 0..config.probes {
            let seed = config.seed.wrapping_mul(1_000_003).wrapping_add(k as u64);
            models.push(random_model(3, 0.35, &vars, seed, config.mode.is_deterministic()));
        }
    }
    for model in &models {
        row.kripke_refuted |= !model.valid(phi);
        let (status, refuted) = realized_check(model, phi, config);
        row.enumeration_refuted |= refuted;
        row.realization = combine(row.realization.clone(), status);
    }
    Ok(row)
}

#[cfg(test)]
mod tests {
    use super::*;
    use recmodal_core::formula::parse;
    use recmodal_core::recfun::DEFAULT_BUDGET;

    fn config(mode: LogicMode) -> TriangleConfig {
        TriangleConfig {
            mode,
            oracle_bound: Some(2),
            max_realized_worlds: 6,
            probes: 2,
            seed: 1,
            budget: DEFAULT_BUDGET,
        }
    }

    #[test]
    fn valid_and_refuted_rows_agree() {
        for (text, mode, valid) in [
            ("false |> p", LogicMode::R, true),
            ("(true |> p) |> p", LogicMode::R, false),
            ("(true |> p) |> p", LogicMode::Rd, false),
            ("p |> q -> (p |> r -> p |> q & r)", LogicMode::R, false),
            ("p |> q -> (p |> r -> p |> q & r)", LogicMode::Rd, true),
        ] {
            let row = check_formula(&parse(text).unwrap(), &config(mode)).unwrap();
            assert_eq!(row.valid, valid, "{text}");
            assert!(row.agrees(), "{row:?}");
        }
    }

    #[test]
    fn disagreement_is_detected() {
        let mut row = check_formula(&parse("p").unwrap(), &config(LogicMode::R)).unwrap();
        assert!(row.agrees());
        row.enumeration_refuted = false;
        assert!(!row.agrees());
    }
}
