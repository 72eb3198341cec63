use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use super::Formula;

/// Shape of a closure member, with children given as closure positions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Node {
    Var,
    Bottom,
    Implies(usize, usize),
    Rhd(usize, usize),
}

/// The least set containing a seed formula that is closed under subformulas
/// and `∼`.
///
/// Members are ordered by size and then structurally, so every child has a
/// smaller position than its parent.
#[derive(Clone, Debug)]
pub struct ClosureSet {
    formulas: Vec<Formula>,
    index: BTreeMap<Formula, usize>,
    nodes: Vec<Node>,
    neg: Vec<usize>,
    seed: usize,
}

impl ClosureSet {
    pub fn new(seed: &Formula) -> Self {
        let mut members = BTreeSet::new();
        let mut work = alloc::vec![seed.clone(), Formula::Bottom];
        while let Some(f) = work.pop() {
            if members.contains(&f) {
                continue;
            }
            if let Formula::Implies(a, b) | Formula::Rhd(a, b) = &f {
                work.push((**a).clone());
                work.push((**b).clone());
            }
            work.push(f.sim_neg());
            members.insert(f);
        }

        let mut formulas: Vec<Formula> = members.into_iter().collect();
        formulas.sort_by(|a, b| a.size().cmp(&b.size()).then_with(|| a.cmp(b)));
        let index: BTreeMap<Formula, usize> =
            formulas.iter().cloned().enumerate().map(|(i, f)| (f, i)).collect();
        let nodes = formulas
            .iter()
            .map(|f| match f {
                Formula::Var(_) => Node::Var,
                Formula::Bottom => Node::Bottom,
                Formula::Implies(a, b) => Node::Implies(index[&**a], index[&**b]),
                Formula::Rhd(a, b) => Node::Rhd(index[&**a], index[&**b]),
            })
            .collect();
        let neg = formulas.iter().map(|f| index[&f.sim_neg()]).collect();
        let seed = index[seed];
        ClosureSet {
            formulas,
            index,
            nodes,
            neg,
            seed,
        }
    }

    pub fn len(&self) -> usize {
        self.formulas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.formulas.is_empty()
    }

    pub fn formulas(&self) -> &[Formula] {
        &self.formulas
    }

    pub fn formula(&self, pos: usize) -> &Formula {
        &self.formulas[pos]
    }

    pub fn position(&self, f: &Formula) -> Option<usize> {
        self.index.get(f).copied()
    }

    pub fn contains(&self, f: &Formula) -> bool {
        self.index.contains_key(f)
    }

    pub fn node(&self, pos: usize) -> Node {
        self.nodes[pos]
    }

    /// Position of `∼φ` for the member at `pos`.
    pub fn sim_neg(&self, pos: usize) -> usize {
        self.neg[pos]
    }

    pub fn seed(&self) -> usize {
        self.seed
    }

    pub fn bottom(&self) -> usize {
        self.index[&Formula::Bottom]
    }

    /// Positions of variables and `▷`-formulas: the free choices of a world
    /// type.
    pub fn atoms(&self) -> impl Iterator<Item = usize> + '_ {
        self.nodes
            .iter()
            .enumerate()
            .filter(|(_, n)| matches!(n, Node::Var | Node::Rhd(..)))
            .map(|(i, _)| i)
    }

    /// `(position, lhs, rhs)` for every `▷`-member.
    pub fn rhd_members(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        self.nodes.iter().enumerate().filter_map(|(i, n)| match *n {
            Node::Rhd(a, b) => Some((i, a, b)),
            _ => None,
        })
    }
}
