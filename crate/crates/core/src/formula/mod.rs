//! Formulas of the modal language.
//!
//! The abstract syntax only has four shapes: variables, `⊥`, implication and
//! the binary modality `▷` (written `|>` in text). All other connectives are
//! sugar that expands at construction time:
//!
//! | sugar    | expansion             |
//! |----------|-----------------------|
//! | `~a`     | `a -> false`          |
//! | `true`   | `false -> false`      |
//! | `a | b`  | `(a -> false) -> b`   |
//! | `a & b`  | `(a -> (b -> false)) -> false` |
//!
//! These expansions are fixed: closure membership is syntactic, so changing
//! them changes which formulas the decision procedure sees.

mod closure;
mod enumerate;
mod parse;
mod print;

use alloc::boxed::Box;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;

pub use closure::{ClosureSet, Node};
pub use enumerate::{enumerate, sample};
pub use parse::{parse, ParseError};

/// A modal formula over `⊥`, `→` and `▷`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    Var(String),
    Bottom,
    Implies(Box<Formula>, Box<Formula>),
    Rhd(Box<Formula>, Box<Formula>),
}

impl Formula {
    pub fn var(name: impl Into<String>) -> Self {
        Formula::Var(name.into())
    }

    pub fn bottom() -> Self {
        Formula::Bottom
    }

    pub fn top() -> Self {
        Formula::implies(Formula::Bottom, Formula::Bottom)
    }

    pub fn implies(lhs: Formula, rhs: Formula) -> Self {
        Formula::Implies(Box::new(lhs), Box::new(rhs))
    }

    pub fn rhd(lhs: Formula, rhs: Formula) -> Self {
        Formula::Rhd(Box::new(lhs), Box::new(rhs))
    }

    pub fn not(phi: Formula) -> Self {
        Formula::implies(phi, Formula::Bottom)
    }

    pub fn or(lhs: Formula, rhs: Formula) -> Self {
        Formula::implies(Formula::not(lhs), rhs)
    }

    pub fn and(lhs: Formula, rhs: Formula) -> Self {
        Formula::not(Formula::implies(lhs, Formula::not(rhs)))
    }

    pub fn iff(lhs: Formula, rhs: Formula) -> Self {
        Formula::and(
            Formula::implies(lhs.clone(), rhs.clone()),
            Formula::implies(rhs, lhs),
        )
    }

    /// Conjunction of a finite set, folded to the right in the set's order.
    /// The empty conjunction is `⊤`.
    pub fn conj_all<'a>(set: impl IntoIterator<Item = &'a Formula>) -> Self {
        let sorted: BTreeSet<&Formula> = set.into_iter().collect();
        let mut iter = sorted.into_iter().rev();
        match iter.next() {
            None => Formula::top(),
            Some(last) => iter.fold(last.clone(), |acc, f| Formula::and(f.clone(), acc)),
        }
    }

    /// If this formula is syntactically `ψ → ⊥`, returns `ψ`.
    pub fn negated(&self) -> Option<&Formula> {
        match self {
            Formula::Implies(lhs, rhs) if **rhs == Formula::Bottom => Some(lhs),
            _ => None,
        }
    }

    /// The `∼` operation: strips one outer negation, otherwise adds one.
    pub fn sim_neg(&self) -> Formula {
        match self.negated() {
            Some(inner) => inner.clone(),
            None => Formula::not(self.clone()),
        }
    }

    /// Number of nodes in the syntax tree.
    pub fn size(&self) -> usize {
        match self {
            Formula::Var(_) | Formula::Bottom => 1,
            Formula::Implies(a, b) | Formula::Rhd(a, b) => 1 + a.size() + b.size(),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Formula::Var(_) | Formula::Bottom => 0,
            Formula::Implies(a, b) | Formula::Rhd(a, b) => 1 + a.depth().max(b.depth()),
        }
    }

    /// All subformulas, including the formula itself.
    pub fn subformulas(&self) -> BTreeSet<Formula> {
        let mut out = BTreeSet::new();
        self.collect_subformulas(&mut out);
        out
    }

    fn collect_subformulas(&self, out: &mut BTreeSet<Formula>) {
        if !out.insert(self.clone()) {
            return;
        }
        if let Formula::Implies(a, b) | Formula::Rhd(a, b) = self {
            a.collect_subformulas(out);
            b.collect_subformulas(out);
        }
    }

    /// Distinct subformulas ordered children-first; each formula appears once.
    pub fn subformula_list(&self) -> Vec<&Formula> {
        fn walk<'a>(f: &'a Formula, seen: &mut BTreeSet<&'a Formula>, out: &mut Vec<&'a Formula>) {
            if seen.contains(f) {
                return;
            }
            if let Formula::Implies(a, b) | Formula::Rhd(a, b) = f {
                walk(a, seen, out);
                walk(b, seen, out);
            }
            seen.insert(f);
            out.push(f);
        }
        let mut out = Vec::new();
        walk(self, &mut BTreeSet::new(), &mut out);
        out
    }

    pub fn vars(&self) -> BTreeSet<&str> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars<'a>(&'a self, out: &mut BTreeSet<&'a str>) {
        match self {
            Formula::Var(name) => {
                out.insert(name.as_str());
            }
            Formula::Bottom => {}
            Formula::Implies(a, b) | Formula::Rhd(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
        }
    }

    /// Maximal subformulas that are variables or `▷`-formulas. Classical
    /// reasoning treats these as opaque propositional atoms.
    pub fn modal_atoms(&self) -> BTreeSet<&Formula> {
        let mut out = BTreeSet::new();
        self.collect_modal_atoms(&mut out);
        out
    }

    fn collect_modal_atoms<'a>(&'a self, out: &mut BTreeSet<&'a Formula>) {
        match self {
            Formula::Var(_) | Formula::Rhd(..) => {
                out.insert(self);
            }
            Formula::Bottom => {}
            Formula::Implies(a, b) => {
                a.collect_modal_atoms(out);
                b.collect_modal_atoms(out);
            }
        }
    }

    /// Evaluates the formula classically, reading every modal atom through
    /// `atom_value`.
    pub fn eval_classical<F>(&self, atom_value: &F) -> bool
    where
        F: Fn(&Formula) -> bool,
    {
        match self {
            Formula::Bottom => false,
            Formula::Implies(a, b) => !a.eval_classical(atom_value) || b.eval_classical(atom_value),
            Formula::Var(_) | Formula::Rhd(..) => atom_value(self),
        }
    }

    /// True iff the formula holds under every boolean assignment to its
    /// modal atoms.
    ///
    /// Runs a full truth table, so the cost is exponential in the number of
    /// distinct modal atoms.
    pub fn is_prop_tautology(&self) -> bool {
        let atoms: BTreeMap<&Formula, usize> = self
            .modal_atoms()
            .into_iter()
            .enumerate()
            .map(|(i, f)| (f, i))
            .collect();
        assert!(atoms.len() < 64, "too many modal atoms for a truth table");
        let rows: u64 = 1 << atoms.len();
        (0..rows).all(|row| self.eval_classical(&|atom: &Formula| row >> atoms[atom] & 1 == 1))
    }
}

impl core::str::FromStr for Formula {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse(s)
    }
}
