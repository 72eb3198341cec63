//! Exhaustive search for small countermodels.
//!
//! Independent of type elimination: it enumerates every model with up to a
//! given number of worlds over the formula's variables. To keep this feasible
//! the search guesses the truth set of every `▷`-subformula, evaluates the
//! rest propositionally, and then asks, world by world, whether some program
//! relation produces exactly the guessed truth values. A world's program only
//! affects the truth of `▷`-formulas at that world, so the per-world questions
//! are independent and every model is covered by exactly one guess.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::LogicMode;
use crate::formula::Formula;
use crate::kripke::{KripkeModel, Triple};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OracleVerdict {
    Refuted { model: KripkeModel, world: usize },
    /// No countermodel within the bound.
    Unknown,
}

enum Shape {
    Var(usize),
    Bottom,
    Implies(usize, usize),
    Rhd(usize),
}

struct Compiled {
    shapes: Vec<Shape>,
    /// `(lhs, rhs)` list positions for each `▷`-subformula.
    rhds: Vec<(usize, usize)>,
    vars: Vec<String>,
}

fn compile(phi: &Formula) -> Compiled {
    let list = phi.subformula_list();
    let pos: BTreeMap<&Formula, usize> = list.iter().enumerate().map(|(i, f)| (*f, i)).collect();
    let vars: Vec<String> = phi.vars().into_iter().map(String::from).collect();
    let mut rhds = Vec::new();
    let shapes = list
        .iter()
        .map(|f| match f {
            Formula::Var(v) => Shape::Var(vars.iter().position(|x| x == v).unwrap()),
            Formula::Bottom => Shape::Bottom,
            Formula::Implies(a, b) => Shape::Implies(pos[&**a], pos[&**b]),
            Formula::Rhd(a, b) => {
                rhds.push((pos[&**a], pos[&**b]));
                Shape::Rhd(rhds.len() - 1)
            }
        })
        .collect();
    Compiled { shapes, rhds, vars }
}

/// Per-world requirement: for each `▷`-subformula, its argument truth sets
/// and whether the world must force it.
type Requirement = Vec<(u32, u32, bool)>;

/// A program relation for one world: the image set of every source, as a
/// bitmask, or `None` if no relation meets the requirement.
fn find_program(req: &Requirement, n: usize, deterministic: bool) -> Option<Vec<u32>> {
    let all = (1u32 << n) - 1;
    let negatives: Vec<usize> = (0..req.len()).filter(|&j| !req[j].2).collect();
    let goal: u32 = (1 << negatives.len()) - 1;
    let images: Vec<u32> = if deterministic {
        core::iter::once(0).chain((0..n).map(|v| 1 << v)).collect()
    } else {
        (0..=all).collect()
    };
    // coverage of negative requirements -> image choice per processed source
    let mut reach: BTreeMap<u32, Vec<u32>> = BTreeMap::new();
    reach.insert(0, Vec::new());
    for u in 0..n {
        let mut options: BTreeMap<u32, u32> = BTreeMap::new();
        for &img in &images {
            let allowed = req
                .iter()
                .all(|&(a, b, forced)| !forced || a >> u & 1 == 0 || img == 0 || img & b != 0);
            if !allowed {
                continue;
            }
            let covers = negatives.iter().enumerate().fold(0, |acc, (bit, &j)| {
                let (a, b, _) = req[j];
                if a >> u & 1 == 1 && img != 0 && img & b == 0 {
                    acc | 1 << bit
                } else {
                    acc
                }
            });
            options.entry(covers).or_insert(img);
        }
        let mut next: BTreeMap<u32, Vec<u32>> = BTreeMap::new();
        for (cov, choice) in &reach {
            for (&c, &img) in &options {
                next.entry(cov | c).or_insert_with(|| {
                    let mut v = choice.clone();
                    v.push(img);
                    v
                });
            }
        }
        reach = next;
    }
    reach
        .into_iter()
        .find(|(cov, _)| cov & goal == goal)
        .map(|(_, choice)| choice)
}

fn search(c: &Compiled, n: usize, deterministic: bool) -> Option<(KripkeModel, usize)> {
    let full = (1u32 << n) - 1;
    let var_bits = c.vars.len() * n;
    let rhd_bits = c.rhds.len() * n;
    assert!(var_bits + rhd_bits <= 40, "search space too large for the oracle");
    let mut cache: BTreeMap<Requirement, Option<Vec<u32>>> = BTreeMap::new();
    let mut truth = alloc::vec![0u32; c.shapes.len()];
    let root = c.shapes.len() - 1;
    for valuation in 0u64..1 << var_bits {
        for guess in 0u64..1 << rhd_bits {
            for (i, shape) in c.shapes.iter().enumerate() {
                truth[i] = match *shape {
                    Shape::Var(v) => (valuation >> (v * n)) as u32 & full,
                    Shape::Bottom => 0,
                    Shape::Implies(a, b) => (!truth[a] | truth[b]) & full,
                    Shape::Rhd(j) => (guess >> (j * n)) as u32 & full,
                };
            }
            if truth[root] == full {
                continue;
            }
            let mut programs = Vec::with_capacity(n);
            for w in 0..n {
                let req: Requirement = c
                    .rhds
                    .iter()
                    .enumerate()
                    .map(|(j, &(a, b))| (truth[a], truth[b], (guess >> (j * n + w)) & 1 == 1))
                    .collect();
                let found = cache
                    .entry(req)
                    .or_insert_with_key(|req| find_program(req, n, deterministic))
                    .clone();
                match found {
                    Some(p) => programs.push(p),
                    None => break,
                }
            }
            if programs.len() < n {
                continue;
            }
            let world = (0..n).find(|&w| truth[root] >> w & 1 == 0).unwrap();
            let model = assemble(c, n, valuation, &programs);
            return Some((model, world));
        }
    }
    None
}

fn assemble(c: &Compiled, n: usize, valuation: u64, programs: &[Vec<u32>]) -> KripkeModel {
    let names = (0..n).map(|i| format!("w{i}")).collect();
    let mut triples = BTreeSet::new();
    for (program, images) in programs.iter().enumerate() {
        for (source, &img) in images.iter().enumerate() {
            for target in (0..n).filter(|v| img >> v & 1 == 1) {
                triples.insert(Triple {
                    source,
                    program,
                    target,
                });
            }
        }
    }
    let val = c
        .vars
        .iter()
        .enumerate()
        .map(|(i, v)| {
            let set = (0..n).filter(|w| valuation >> (i * n + w) & 1 == 1).collect();
            (v.clone(), set)
        })
        .collect();
    KripkeModel::from_parts(names, triples, val).expect("oracle model is well formed")
}

/// Searches all models with `1..=max_worlds` worlds (deterministic ones only
/// in deterministic modes) for a world refuting `phi`, smallest first. Found
/// countermodels are re-checked with the model checker.
pub fn brute_force_oracle(phi: &Formula, mode: LogicMode, max_worlds: usize) -> OracleVerdict {
    let compiled = compile(phi);
    for n in 1..=max_worlds {
        if let Some((model, world)) = search(&compiled, n, mode.is_deterministic()) {
            assert!(!model.forces(world, phi), "oracle countermodel failed the model checker");
            return OracleVerdict::Refuted { model, world };
        }
    }
    OracleVerdict::Unknown
}
