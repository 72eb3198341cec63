//! Realizing Kripke models as program codes.
//!
//! World `w_i` becomes a code `u_i`, a fixed point of the transformer `f_i`
//! that maps a tuple of codes `x⃗` to the lookup program
//!
//! ```text
//! (if (eq input (quote x_j)) BODY_j … diverge)
//! ```
//!
//! with one test per source `w_j` that has a nonempty image under `w_i`, and
//! `BODY_j` returning (through `amb` when there are several) the codes `x_k`
//! of the targets `w_k`. So `ξ_{u_i}(u_j) = {u_k | w_j →_{w_i} w_k}`, and
//! `u_i` diverges on every input that is not one of the codes. Variables are
//! interpreted as `*(p) = {u_i | w_i ⊩ p}`.
//!
//! Membership of a code in the set denoted by a formula is then decided by
//! running the codes on each other. The quantifier over all inputs in the
//! clause for `▷` only needs to range over the codes, because each code's
//! lookup program diverges elsewhere; that shape is checked before any
//! membership question is answered, and bundles that fail the check are
//! refused.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::eval::{eval_program, EvalError, EvalMode};
use super::kleene::{fixed_points, FixedPointError, Template, Transformer};
use super::Sexp;
use crate::formula::{ClosureSet, Formula};
use crate::kripke::KripkeModel;

/// A model together with the codes realizing its worlds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealizationBundle {
    pub model: KripkeModel,
    /// `codes[i]` realizes world `i`.
    pub codes: Vec<Sexp>,
    /// The interpretation of each variable as a set of codes.
    pub valuation: BTreeMap<String, BTreeSet<Sexp>>,
    /// Step budget for evaluations made on behalf of this bundle.
    pub budget: usize,
}

impl RealizationBundle {
    /// Deterministic evaluation for deterministic models, nondeterministic
    /// otherwise.
    pub fn eval_mode(&self) -> EvalMode {
        if self.model.is_deterministic() {
            EvalMode::Deterministic
        } else {
            EvalMode::Nondeterministic
        }
    }

    pub fn code_index(&self, code: &Sexp) -> Option<usize> {
        self.codes.iter().position(|c| c == code)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RealizeError {
    #[error("model is not deterministic")]
    NotDeterministic,
    #[error(transparent)]
    FixedPoint(#[from] FixedPointError),
}

fn quoted_hole(j: usize) -> Template {
    Template::list([Template::atom("quote"), Template::Hole(j)])
}

/// The lookup-program template for world `program` of `model`.
pub fn lookup_template(model: &KripkeModel, program: usize) -> Template {
    let mut chain = Template::atom("diverge");
    let rows: Vec<(usize, &[usize])> = model.sources_under(program).collect();
    for &(source, targets) in rows.iter().rev() {
        let body = targets
            .iter()
            .rev()
            .map(|&k| quoted_hole(k))
            .reduce(|rest, first| Template::list([Template::atom("amb"), first, rest]))
            .unwrap_or_else(|| Template::atom("diverge"));
        let test = Template::list([Template::atom("eq"), Template::atom("input"), quoted_hole(source)]);
        chain = Template::list([Template::atom("if"), test, body, chain]);
    }
    chain
}

/// The transformers of a model, tagged with their world index so that worlds
/// with identical rows still get distinct codes.
pub fn lookup_transformers(model: &KripkeModel) -> Vec<Transformer> {
    (0..model.len())
        .map(|i| Transformer::tagged(lookup_template(model, i), Sexp::atom(&format!("world-{i}"))))
        .collect()
}

/// Realizes any finite model. Deterministic models yield `amb`-free codes.
pub fn realize(model: &KripkeModel, budget: usize) -> Result<RealizationBundle, RealizeError> {
    let fixed = fixed_points(&lookup_transformers(model), budget)?;
    let codes = fixed.codes;
    let valuation = model
        .valuation()
        .iter()
        .map(|(var, worlds)| (var.clone(), worlds.iter().map(|&w| codes[w].clone()).collect()))
        .collect();
    Ok(RealizationBundle {
        model: model.clone(),
        codes,
        valuation,
        budget,
    })
}

/// Realizes a model as deterministic programs, refusing nondeterministic
/// models.
pub fn realize_deterministic(model: &KripkeModel, budget: usize) -> Result<RealizationBundle, RealizeError> {
    if !model.is_deterministic() {
        return Err(RealizeError::NotDeterministic);
    }
    realize(model, budget)
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ShapeError {
    #[error("bundle has {codes} codes for {worlds} worlds")]
    CodeCount { codes: usize, worlds: usize },
    #[error("codes {0} and {1} coincide")]
    DuplicateCodes(usize, usize),
    #[error("valuation of `{0}` contains a value that is not a code")]
    ForeignValuation(String),
    #[error("code {0} is not a double application")]
    NotDoubleApplication(usize),
    #[error("inner program of code {index} did not produce one value: {reason}")]
    InnerProgram { index: usize, reason: String },
    #[error("inner program of code {index} is not a lookup: {reason}")]
    NotLookup { index: usize, reason: String },
}

/// For each code, its lookup table: source code index → target code indices.
pub type LookupTables = Vec<BTreeMap<usize, BTreeSet<usize>>>;

fn items_of<'a>(e: &'a Sexp, keyword: &str, arity: usize) -> Option<Vec<&'a Sexp>> {
    let items = e.list_items()?;
    (items.len() == arity + 1 && items[0].as_atom() == Some(keyword)).then(|| items[1..].to_vec())
}

fn quoted(e: &Sexp) -> Option<&Sexp> {
    items_of(e, "quote", 1).map(|v| v[0])
}

fn lookup_body(bundle: &RealizationBundle, body: &Sexp, out: &mut BTreeSet<usize>) -> Result<(), String> {
    if body.as_atom() == Some("diverge") {
        return Ok(());
    }
    if let Some(value) = quoted(body) {
        let k = bundle
            .code_index(value)
            .ok_or_else(|| format!("returns a non-code {value}"))?;
        out.insert(k);
        return Ok(());
    }
    if let Some(branches) = items_of(body, "amb", 2) {
        lookup_body(bundle, branches[0], out)?;
        return lookup_body(bundle, branches[1], out);
    }
    Err(format!("unexpected body {body}"))
}

fn parse_lookup(bundle: &RealizationBundle, mut code: &Sexp) -> Result<BTreeMap<usize, BTreeSet<usize>>, String> {
    let mut table = BTreeMap::new();
    loop {
        if code.as_atom() == Some("diverge") {
            return Ok(table);
        }
        let parts = items_of(code, "if", 3).ok_or_else(|| format!("expected a test, found {code}"))?;
        let test = items_of(parts[0], "eq", 2).ok_or("condition is not an equality test")?;
        if test[0].as_atom() != Some("input") {
            return Err(String::from("test does not inspect the input"));
        }
        let key = quoted(test[1]).ok_or("test is not against a constant")?;
        let j = bundle
            .code_index(key)
            .ok_or_else(|| format!("tests against a non-code {key}"))?;
        let mut targets = BTreeSet::new();
        lookup_body(bundle, parts[1], &mut targets)?;
        // A repeated test is unreachable; the first one decides.
        table.entry(j).or_insert(targets);
        code = parts[2];
    }
}

/// Checks that every code is a double application whose inner program
/// yields a lookup program over the bundle's codes, and returns the lookup
/// tables read off the programs. Since such a code diverges on every input
/// that is not a code, membership needs to probe codes only.
pub fn inspect_shapes(bundle: &RealizationBundle) -> Result<LookupTables, ShapeError> {
    let n = bundle.codes.len();
    if n != bundle.model.len() {
        return Err(ShapeError::CodeCount {
            codes: n,
            worlds: bundle.model.len(),
        });
    }
    for i in 0..n {
        if let Some(j) = (i + 1..n).find(|&j| bundle.codes[i] == bundle.codes[j]) {
            return Err(ShapeError::DuplicateCodes(i, j));
        }
    }
    for (var, set) in &bundle.valuation {
        if set.iter().any(|c| bundle.code_index(c).is_none()) {
            return Err(ShapeError::ForeignValuation(var.clone()));
        }
    }
    let mut tables = Vec::with_capacity(n);
    for (index, code) in bundle.codes.iter().enumerate() {
        let inner = items_of(code, "apply", 2)
            .filter(|outer| outer[1].as_atom() == Some("input"))
            .and_then(|outer| items_of(outer[0], "apply", 2))
            .filter(|inner| quoted(inner[0]).is_some() && quoted(inner[1]).is_some())
            .ok_or(ShapeError::NotDoubleApplication(index))?;
        let program = Sexp::list([Sexp::atom("apply"), inner[0].clone(), inner[1].clone()]);
        let result = eval_program(&program, &Sexp::nil(), bundle.budget, EvalMode::Deterministic).map_err(|e| {
            ShapeError::InnerProgram {
                index,
                reason: format!("{e}"),
            }
        })?;
        if !result.is_complete() || result.values.len() != 1 {
            return Err(ShapeError::InnerProgram {
                index,
                reason: String::from("no single value within the budget"),
            });
        }
        let lookup = result.values.iter().next().expect("one value");
        let table = parse_lookup(bundle, lookup).map_err(|reason| ShapeError::NotLookup { index, reason })?;
        tables.push(table);
    }
    Ok(tables)
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MembershipError {
    #[error(transparent)]
    Shape(#[from] ShapeError),
    #[error("running code {code} on code {input}: {error}")]
    Eval { code: usize, input: usize, error: EvalError },
    #[error("running code {code} on code {input} did not finish within the budget")]
    Incomplete { code: usize, input: usize },
    #[error("running code {code} on code {input} disagrees with its lookup table")]
    TableMismatch { code: usize, input: usize },
}

/// How `φ ▷ ψ` treats several values.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Reading {
    /// Some value lands in `ψ`.
    Existential,
    /// Every value lands in `ψ`.
    Universal,
}

/// The behaviour `ξ_{u_i}(u_j)` of every code on every code, obtained by
/// running them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BehaviorTable {
    /// `values[i][j]` holds the indices of the codes in `ξ_{u_i}(u_j)`.
    pub values: Vec<Vec<BTreeSet<usize>>>,
    /// Evaluation steps spent.
    pub steps: usize,
}

impl BehaviorTable {
    /// Checks the bundle's shape, then runs every code on every code. An
    /// incomplete run is an error, never read as divergence.
    pub fn compute(bundle: &RealizationBundle) -> Result<Self, MembershipError> {
        let tables = inspect_shapes(bundle)?;
        let n = bundle.codes.len();
        let mode = bundle.eval_mode();
        let mut steps = 0;
        let mut values = Vec::with_capacity(n);
        for (i, code) in bundle.codes.iter().enumerate() {
            let mut row = Vec::with_capacity(n);
            for (j, input) in bundle.codes.iter().enumerate() {
                let result = eval_program(code, input, bundle.budget, mode).map_err(|error| MembershipError::Eval {
                    code: i,
                    input: j,
                    error,
                })?;
                steps += result.steps;
                if !result.is_complete() {
                    return Err(MembershipError::Incomplete { code: i, input: j });
                }
                let set: Option<BTreeSet<usize>> = result.values.iter().map(|v| bundle.code_index(v)).collect();
                let expected = tables[i].get(&j).cloned().unwrap_or_default();
                if set.as_ref() != Some(&expected) {
                    return Err(MembershipError::TableMismatch { code: i, input: j });
                }
                row.push(expected);
            }
            values.push(row);
        }
        Ok(BehaviorTable { values, steps })
    }

    /// The indices of the codes in the set denoted by `phi`.
    pub fn extension(&self, bundle: &RealizationBundle, phi: &Formula, reading: Reading) -> BTreeSet<usize> {
        let n = self.values.len();
        match phi {
            Formula::Var(v) => bundle
                .valuation
                .get(v)
                .map(|set| set.iter().filter_map(|c| bundle.code_index(c)).collect())
                .unwrap_or_default(),
            Formula::Bottom => BTreeSet::new(),
            Formula::Implies(a, b) => {
                let a = self.extension(bundle, a, reading);
                let b = self.extension(bundle, b, reading);
                (0..n).filter(|i| !a.contains(i) || b.contains(i)).collect()
            }
            Formula::Rhd(a, b) => {
                let a = self.extension(bundle, a, reading);
                let b = self.extension(bundle, b, reading);
                (0..n)
                    .filter(|&w| {
                        a.iter().all(|&u| {
                            let image = &self.values[w][u];
                            match reading {
                                Reading::Existential => image.is_empty() || image.iter().any(|v| b.contains(v)),
                                Reading::Universal => image.iter().all(|v| b.contains(v)),
                            }
                        })
                    })
                    .collect()
            }
        }
    }
}

/// Whether code `i` belongs to the set denoted by `phi`.
pub fn membership(bundle: &RealizationBundle, phi: &Formula, i: usize, reading: Reading) -> Result<bool, MembershipError> {
    let table = BehaviorTable::compute(bundle)?;
    Ok(table.extension(bundle, phi, reading).contains(&i))
}

/// Membership against forcing for every formula of a closure and every
/// world.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealizationReport {
    pub formulas: Vec<Formula>,
    /// `member[f][i]`: code `i` is in the set denoted by formula `f`.
    pub member: Vec<Vec<bool>>,
    /// `forced[f][i]`: world `i` forces formula `f`.
    pub forced: Vec<Vec<bool>>,
    /// `(formula, world)` pairs where the two disagree.
    pub mismatches: Vec<(usize, usize)>,
}

impl RealizationReport {
    pub fn agrees(&self) -> bool {
        self.mismatches.is_empty()
    }
}

pub fn verify_realization(bundle: &RealizationBundle, closure: &ClosureSet) -> Result<RealizationReport, MembershipError> {
    let table = BehaviorTable::compute(bundle)?;
    let n = bundle.codes.len();
    let formulas: Vec<Formula> = closure.formulas().to_vec();
    let mut member = Vec::with_capacity(formulas.len());
    let mut forced = Vec::with_capacity(formulas.len());
    let mut mismatches = Vec::new();
    for (f, phi) in formulas.iter().enumerate() {
        let ext = table.extension(bundle, phi, Reading::Existential);
        let m: Vec<bool> = (0..n).map(|i| ext.contains(&i)).collect();
        let k: Vec<bool> = (0..n).map(|i| bundle.model.forces(i, phi)).collect();
        mismatches.extend((0..n).filter(|&i| m[i] != k[i]).map(|i| (f, i)));
        member.push(m);
        forced.push(k);
    }
    Ok(RealizationReport {
        formulas,
        member,
        forced,
        mismatches,
    })
}
