//! Validity checking by Hintikka-type elimination.
//!
//! A formula is refutable iff some world type containing its `∼` survives
//! elimination. Every refutation is returned with an explicit countermodel
//! that has been re-checked by the model checker; a failed check is an error,
//! never a silent answer.

mod countermodel;
mod eliminate;
mod oracle;
mod types;

use alloc::format;
use alloc::string::String;

use crate::formula::{ClosureSet, Formula};
use crate::kripke::KripkeModel;

pub use countermodel::{build_countermodel, world_types};
pub use eliminate::{demands_realizable, eliminate, realize_demands, DemandWitness, Elimination};
pub use oracle::{brute_force_oracle, OracleVerdict};
pub use types::{hintikka_types, WorldType, MAX_ATOMS};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DecideError {
    #[error("closure has {atoms} free atoms; at most {max} are supported")]
    TooManyAtoms { atoms: usize, max: usize },
    #[error("extracted countermodel failed verification: {0}")]
    Verification(String),
}

/// Which class of functions the modality ranges over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LogicMode {
    /// Nondeterministic partial functions; some value must land in the
    /// target.
    R,
    /// Deterministic partial functions.
    Rd,
    /// Nondeterministic partial functions where every value must land in the
    /// target. Decided with the deterministic machinery.
    RForall,
}

impl LogicMode {
    pub fn is_deterministic(self) -> bool {
        !matches!(self, LogicMode::R)
    }

    pub fn name(self) -> &'static str {
        match self {
            LogicMode::R => "r",
            LogicMode::Rd => "rd",
            LogicMode::RForall => "rforall",
        }
    }
}

impl core::str::FromStr for LogicMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "r" => Ok(LogicMode::R),
            "rd" => Ok(LogicMode::Rd),
            "rforall" => Ok(LogicMode::RForall),
            other => Err(format!("unknown logic `{other}` (expected r, rd or rforall)")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Valid,
    Refuted { model: KripkeModel, world: usize },
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, Verdict::Valid)
    }
}

/// Intermediate results of one decision, for inspection and statistics.
#[derive(Clone, Debug)]
pub struct Analysis {
    pub closure: ClosureSet,
    pub types: alloc::vec::Vec<WorldType>,
    pub elimination: Elimination,
    pub verdict: Verdict,
}

pub fn analyze(phi: &Formula, mode: LogicMode) -> Result<Analysis, DecideError> {
    let closure = ClosureSet::new(phi);
    let types = hintikka_types(&closure)?;
    let elimination = eliminate(&closure, &types, mode);
    let refuting = closure.sim_neg(closure.seed());
    let witness = elimination
        .survivors
        .iter()
        .copied()
        .find(|&t| types[t].contains(refuting));
    let verdict = match witness {
        None => Verdict::Valid,
        Some(witness) => {
            let (model, world) = build_countermodel(&closure, &types, &elimination.survivors, witness, mode);
            if model.forces(world, phi) {
                return Err(DecideError::Verification(format!(
                    "world {} forces {phi}",
                    model.world_name(world)
                )));
            }
            if mode.is_deterministic() && !model.is_deterministic() {
                return Err(DecideError::Verification(String::from(
                    "countermodel is not deterministic",
                )));
            }
            Verdict::Refuted { model, world }
        }
    };
    Ok(Analysis {
        closure,
        types,
        elimination,
        verdict,
    })
}

/// Decides validity of `phi` in the given logic.
pub fn decide(phi: &Formula, mode: LogicMode) -> Result<Verdict, DecideError> {
    analyze(phi, mode).map(|a| a.verdict)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse;

    fn verdict(text: &str, mode: LogicMode) -> Verdict {
        decide(&parse(text).unwrap(), mode).unwrap()
    }

    #[test]
    fn axioms() {
        let a1 = "p |> q -> (r |> q -> (p | r) |> q)";
        for mode in [LogicMode::R, LogicMode::Rd, LogicMode::RForall] {
            assert!(verdict(a1, mode).is_valid());
            assert!(verdict("false |> p", mode).is_valid());
            assert!(verdict("p |> true", mode).is_valid());
        }
    }

    #[test]
    fn a4_separates_the_logics() {
        let a4 = "p |> q -> (p |> r -> p |> q & r)";
        assert!(verdict(a4, LogicMode::Rd).is_valid());
        assert!(verdict(a4, LogicMode::RForall).is_valid());
        let Verdict::Refuted { model, world } = verdict(a4, LogicMode::R) else {
            panic!("A4 should fail for nondeterministic functions");
        };
        assert!(!model.is_deterministic());
        assert!(!model.forces(world, &parse(a4).unwrap()));
    }

    #[test]
    fn iterated_modality_is_not_valid() {
        for mode in [LogicMode::R, LogicMode::Rd] {
            let Verdict::Refuted { model, world } = verdict("(true |> p) |> p", mode) else {
                panic!("expected refutation");
            };
            assert!(!model.forces(world, &parse("(true |> p) |> p").unwrap()));
            assert!(model.is_deterministic() || !mode.is_deterministic());
        }
    }

    #[test]
    fn lemmas_as_implications() {
        let lemma1 = "(a & c) |> b -> ((a & ~c) |> b -> a |> b)";
        let lemma2 = "a |> ~(b & c) -> (a |> ~(b & ~c) -> a |> ~b)";
        assert!(verdict(lemma1, LogicMode::R).is_valid());
        assert!(verdict(lemma2, LogicMode::Rd).is_valid());
        assert!(!verdict(lemma2, LogicMode::R).is_valid());
    }

    #[test]
    fn propositional_fragment_is_classical() {
        assert!(verdict("p -> ~~p", LogicMode::R).is_valid());
        assert!(!verdict("p -> q", LogicMode::R).is_valid());
        let Verdict::Refuted { model, .. } = verdict("p", LogicMode::R) else {
            panic!()
        };
        assert_eq!(model.len(), 1);
    }

    #[test]
    fn mode_names_round_trip() {
        for mode in [LogicMode::R, LogicMode::Rd, LogicMode::RForall] {
            assert_eq!(mode.name().parse::<LogicMode>(), Ok(mode));
        }
        assert!("x".parse::<LogicMode>().is_err());
    }
}
