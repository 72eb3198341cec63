//! Worked derivations used as fixtures and shipped as proof files.

use alloc::string::String;
use alloc::vec;

use super::{instantiate_axiom, AxiomSchema, Bindings, Justification, Logic, Proof, ProofLine};
use crate::formula::Formula;

fn var(name: &str) -> Formula {
    Formula::var(name)
}

fn bindings(pairs: [(&str, Formula); 3]) -> Bindings {
    pairs.into_iter().map(|(k, v)| (String::from(k), v)).collect()
}

/// `(a∧c)▷b, (a∧¬c)▷b ⊢ a▷b` in `R`.
pub fn lemma_one() -> Proof {
    let (a, b, c) = (var("a"), var("b"), var("c"));
    let left = Formula::and(a.clone(), c.clone());
    let right = Formula::and(a.clone(), Formula::not(c));
    let either = Formula::or(left.clone(), right.clone());
    let ax1 = bindings([("phi", left.clone()), ("psi", b.clone()), ("chi", right.clone())]);
    let ax1_formula = instantiate_axiom(AxiomSchema::A1, &ax1).expect("complete bindings");
    let after_first = Formula::implies(
        Formula::rhd(right.clone(), b.clone()),
        Formula::rhd(either.clone(), b.clone()),
    );
    Proof {
        logic: Logic::R,
        hypotheses: vec![Formula::rhd(left.clone(), b.clone()), Formula::rhd(right.clone(), b.clone())],
        lines: vec![
            ProofLine::new(Formula::rhd(left, b.clone()), Justification::Hypothesis(0)),
            ProofLine::new(Formula::rhd(right, b.clone()), Justification::Hypothesis(1)),
            ProofLine::new(ax1_formula, Justification::Axiom(AxiomSchema::A1, ax1)),
            ProofLine::new(after_first, Justification::ModusPonens(0, 2)),
            ProofLine::new(Formula::rhd(either.clone(), b.clone()), Justification::ModusPonens(1, 3)),
            ProofLine::new(Formula::implies(a.clone(), either.clone()), Justification::Classical),
            ProofLine::new(Formula::implies(b.clone(), b.clone()), Justification::Classical),
            ProofLine::new(
                Formula::implies(Formula::rhd(either, b.clone()), Formula::rhd(a.clone(), b.clone())),
                Justification::RuleM(5, 6),
            ),
            ProofLine::new(Formula::rhd(a, b), Justification::ModusPonens(4, 7)),
        ],
    }
}

/// `a▷¬(b∧c), a▷¬(b∧¬c) ⊢ a▷¬b`, which needs A4 and so only checks in `Rd`.
pub fn lemma_two(logic: Logic) -> Proof {
    let (a, b, c) = (var("a"), var("b"), var("c"));
    let first = Formula::not(Formula::and(b.clone(), c.clone()));
    let second = Formula::not(Formula::and(b.clone(), Formula::not(c)));
    let both = Formula::and(first.clone(), second.clone());
    let ax4 = bindings([("phi", a.clone()), ("psi", first.clone()), ("chi", second.clone())]);
    let ax4_formula = instantiate_axiom(AxiomSchema::A4, &ax4).expect("complete bindings");
    let after_first = Formula::implies(
        Formula::rhd(a.clone(), second.clone()),
        Formula::rhd(a.clone(), both.clone()),
    );
    let not_b = Formula::not(b);
    Proof {
        logic,
        hypotheses: vec![Formula::rhd(a.clone(), first.clone()), Formula::rhd(a.clone(), second.clone())],
        lines: vec![
            ProofLine::new(Formula::rhd(a.clone(), first), Justification::Hypothesis(0)),
            ProofLine::new(Formula::rhd(a.clone(), second), Justification::Hypothesis(1)),
            ProofLine::new(ax4_formula, Justification::Axiom(AxiomSchema::A4, ax4)),
            ProofLine::new(after_first, Justification::ModusPonens(0, 2)),
            ProofLine::new(Formula::rhd(a.clone(), both.clone()), Justification::ModusPonens(1, 3)),
            ProofLine::new(Formula::implies(a.clone(), a.clone()), Justification::Classical),
            ProofLine::new(Formula::implies(both.clone(), not_b.clone()), Justification::Classical),
            ProofLine::new(
                Formula::implies(Formula::rhd(a.clone(), both), Formula::rhd(a.clone(), not_b.clone())),
                Justification::RuleM(5, 6),
            ),
            ProofLine::new(Formula::rhd(a, not_b), Justification::ModusPonens(4, 7)),
        ],
    }
}
