//! Hilbert-style proofs for the logics of nondeterministic (`R`) and
//! deterministic (`Rd`) partial recursive functions.
//!
//! Both logics extend classical propositional logic, admitted here as a
//! single schema checked by truth tables over modal atoms. The modal part is
//!
//! ```text
//! A1  φ▷ψ → (χ▷ψ → (φ∨χ)▷ψ)
//! A2  ⊥▷φ
//! A3  φ▷⊤
//! A4  φ▷ψ → (φ▷χ → φ▷(ψ∧χ))           (Rd only)
//! M   from φ₁→φ₂ and ψ₁→ψ₂ infer φ₂▷ψ₁ → φ₁▷ψ₂
//! ```
//!
//! Proofs may start from hypotheses, but only modus ponens applies to
//! hypothesis-derived lines: rule M needs both premises to be theorems.

mod library;
mod random;

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::decide::LogicMode;
use crate::formula::Formula;

pub use library::{lemma_one, lemma_two};
pub use random::random_proof;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Logic {
    R,
    Rd,
}

impl Logic {
    pub fn mode(self) -> LogicMode {
        match self {
            Logic::R => LogicMode::R,
            Logic::Rd => LogicMode::Rd,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AxiomSchema {
    A1,
    A2,
    A3,
    A4,
}

impl AxiomSchema {
    /// Metavariable names the schema binds.
    pub fn metavariables(self) -> &'static [&'static str] {
        match self {
            AxiomSchema::A1 | AxiomSchema::A4 => &["phi", "psi", "chi"],
            AxiomSchema::A2 | AxiomSchema::A3 => &["phi"],
        }
    }
}

impl fmt::Display for AxiomSchema {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            AxiomSchema::A1 => "A1",
            AxiomSchema::A2 => "A2",
            AxiomSchema::A3 => "A3",
            AxiomSchema::A4 => "A4",
        };
        f.write_str(name)
    }
}

pub type Bindings = BTreeMap<String, Formula>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("axiom {schema} needs a binding for `{name}`")]
pub struct MissingBinding {
    pub schema: AxiomSchema,
    pub name: &'static str,
}

/// Instance of an axiom schema under explicit bindings.
pub fn instantiate_axiom(schema: AxiomSchema, bindings: &Bindings) -> Result<Formula, MissingBinding> {
    let get = |name: &'static str| {
        bindings
            .get(name)
            .cloned()
            .ok_or(MissingBinding { schema, name })
    };
    Ok(match schema {
        AxiomSchema::A1 => {
            let (phi, psi, chi) = (get("phi")?, get("psi")?, get("chi")?);
            Formula::implies(
                Formula::rhd(phi.clone(), psi.clone()),
                Formula::implies(
                    Formula::rhd(chi.clone(), psi.clone()),
                    Formula::rhd(Formula::or(phi, chi), psi),
                ),
            )
        }
        AxiomSchema::A2 => Formula::rhd(Formula::Bottom, get("phi")?),
        AxiomSchema::A3 => Formula::rhd(get("phi")?, Formula::top()),
        AxiomSchema::A4 => {
            let (phi, psi, chi) = (get("phi")?, get("psi")?, get("chi")?);
            Formula::implies(
                Formula::rhd(phi.clone(), psi.clone()),
                Formula::implies(
                    Formula::rhd(phi.clone(), chi.clone()),
                    Formula::rhd(phi, Formula::and(psi, chi)),
                ),
            )
        }
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Justification {
    /// The hypothesis at this index.
    Hypothesis(usize),
    Classical,
    Axiom(AxiomSchema, Bindings),
    /// `MP(i, j)`: line `j` is `line i → this`.
    ModusPonens(usize, usize),
    /// `M(i, j)`: line `i` is `φ₁→φ₂`, line `j` is `ψ₁→ψ₂`.
    RuleM(usize, usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProofLine {
    pub formula: Formula,
    pub justification: Justification,
}

impl ProofLine {
    pub fn new(formula: Formula, justification: Justification) -> Self {
        ProofLine {
            formula,
            justification,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Proof {
    pub logic: Logic,
    pub hypotheses: Vec<Formula>,
    pub lines: Vec<ProofLine>,
}

impl Proof {
    pub fn conclusion(&self) -> Option<&Formula> {
        self.lines.last().map(|l| &l.formula)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LineError {
    #[error("reference to line {0}, which does not precede this line")]
    BadReference(usize),
    #[error("reference to line {0}, which did not check")]
    InvalidPremise(usize),
    #[error("no hypothesis with index {0}")]
    UnknownHypothesis(usize),
    #[error("formula differs from hypothesis {0}")]
    HypothesisMismatch(usize),
    #[error("not a propositional tautology")]
    NotTautology,
    #[error(transparent)]
    MissingBinding(#[from] MissingBinding),
    #[error("formula is not the {schema} instance {expected}")]
    AxiomMismatch { schema: AxiomSchema, expected: Formula },
    #[error("axiom A4 belongs to Rd only")]
    A4OutsideRd,
    #[error("line {major} is not an implication from line {minor} to this formula")]
    ModusPonensShape { minor: usize, major: usize },
    #[error("premise line {0} of rule M is not an implication")]
    RuleMPremise(usize),
    #[error("rule M premises yield {expected}")]
    RuleMShape { expected: Formula },
    #[error("rule M premise line {0} depends on a hypothesis")]
    RuleMOnHypothesis(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {error}")]
pub struct ProofError {
    pub line: usize,
    pub error: LineError,
}

/// Outcome of checking a proof: a diagnostic for every bad line, and for
/// every line that checked, whether it is hypothesis-free.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckReport {
    pub errors: Vec<ProofError>,
    /// `Some(theorem)` for lines that checked.
    pub lines: Vec<Option<bool>>,
}

impl CheckReport {
    pub fn is_ok(&self) -> bool {
        self.errors.is_empty() && !self.lines.is_empty()
    }

    /// Whether the last line is a theorem of the logic (no hypotheses used).
    pub fn proves_theorem(&self) -> bool {
        self.is_ok() && self.lines.last() == Some(&Some(true))
    }
}

fn premise(status: &[Option<bool>], line: usize, reference: usize) -> Result<bool, LineError> {
    if reference >= line {
        return Err(LineError::BadReference(reference));
    }
    status[reference].ok_or(LineError::InvalidPremise(reference))
}

fn check_line(proof: &Proof, status: &[Option<bool>], n: usize) -> Result<bool, LineError> {
    let line = &proof.lines[n];
    let this = &line.formula;
    match &line.justification {
        Justification::Hypothesis(h) => {
            let hyp = proof.hypotheses.get(*h).ok_or(LineError::UnknownHypothesis(*h))?;
            if hyp != this {
                return Err(LineError::HypothesisMismatch(*h));
            }
            Ok(false)
        }
        Justification::Classical => {
            if this.is_prop_tautology() {
                Ok(true)
            } else {
                Err(LineError::NotTautology)
            }
        }
        Justification::Axiom(schema, bindings) => {
            if *schema == AxiomSchema::A4 && proof.logic != Logic::Rd {
                return Err(LineError::A4OutsideRd);
            }
            let expected = instantiate_axiom(*schema, bindings)?;
            if &expected != this {
                return Err(LineError::AxiomMismatch {
                    schema: *schema,
                    expected,
                });
            }
            Ok(true)
        }
        Justification::ModusPonens(i, j) => {
            let (ti, tj) = (premise(status, n, *i)?, premise(status, n, *j)?);
            match &proof.lines[*j].formula {
                Formula::Implies(a, b) if **a == proof.lines[*i].formula && **b == *this => Ok(ti && tj),
                _ => Err(LineError::ModusPonensShape { minor: *i, major: *j }),
            }
        }
        Justification::RuleM(i, j) => {
            let (ti, tj) = (premise(status, n, *i)?, premise(status, n, *j)?);
            let Formula::Implies(phi1, phi2) = &proof.lines[*i].formula else {
                return Err(LineError::RuleMPremise(*i));
            };
            let Formula::Implies(psi1, psi2) = &proof.lines[*j].formula else {
                return Err(LineError::RuleMPremise(*j));
            };
            if !ti {
                return Err(LineError::RuleMOnHypothesis(*i));
            }
            if !tj {
                return Err(LineError::RuleMOnHypothesis(*j));
            }
            let expected = Formula::implies(
                Formula::rhd((**phi2).clone(), (**psi1).clone()),
                Formula::rhd((**phi1).clone(), (**psi2).clone()),
            );
            if &expected != this {
                return Err(LineError::RuleMShape { expected });
            }
            Ok(true)
        }
    }
}

/// Checks every line of `proof`. Lines may only refer to earlier lines.
pub fn check_proof(proof: &Proof) -> CheckReport {
    let mut status: Vec<Option<bool>> = Vec::with_capacity(proof.lines.len());
    let mut errors = Vec::new();
    for n in 0..proof.lines.len() {
        match check_line(proof, &status, n) {
            Ok(theorem) => status.push(Some(theorem)),
            Err(error) => {
                errors.push(ProofError { line: n, error });
                status.push(None);
            }
        }
    }
    CheckReport {
        errors,
        lines: status,
    }
}
