use alloc::vec::Vec;

use fixedbitset::FixedBitSet;

use super::DecideError;
use crate::formula::{ClosureSet, Formula, Node};

/// Upper bound on free atoms (variables and `▷`-members) in a closure.
pub const MAX_ATOMS: usize = 20;

/// A propositionally coherent subset of a closure: a candidate description
/// of one world.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WorldType {
    members: FixedBitSet,
}

impl WorldType {
    pub fn contains(&self, pos: usize) -> bool {
        self.members.contains(pos)
    }

    pub fn positions(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.ones()
    }

    pub fn formulas<'c>(&self, closure: &'c ClosureSet) -> Vec<&'c Formula> {
        self.positions().map(|p| closure.formula(p)).collect()
    }

    /// Checks the type invariants against `closure`: `⊥` excluded,
    /// implications decided by their parts, and exactly one of `φ`, `∼φ`.
    pub fn is_hintikka(&self, closure: &ClosureSet) -> bool {
        if self.contains(closure.bottom()) {
            return false;
        }
        (0..closure.len()).all(|pos| {
            let coherent = match closure.node(pos) {
                Node::Implies(a, b) => self.contains(pos) == (!self.contains(a) || self.contains(b)),
                _ => true,
            };
            coherent && self.contains(pos) != self.contains(closure.sim_neg(pos))
        })
    }
}

/// Every world type of `closure`, in canonical order: the free atoms are
/// read as the bits of a counter, lowest closure position first.
pub fn hintikka_types(closure: &ClosureSet) -> Result<Vec<WorldType>, DecideError> {
    let atoms: Vec<usize> = closure.atoms().collect();
    if atoms.len() > MAX_ATOMS {
        return Err(DecideError::TooManyAtoms {
            atoms: atoms.len(),
            max: MAX_ATOMS,
        });
    }
    let mut bit_of = alloc::vec![usize::MAX; closure.len()];
    for (bit, &pos) in atoms.iter().enumerate() {
        bit_of[pos] = bit;
    }
    let types = (0u32..1 << atoms.len())
        .map(|choice| {
            let mut members = FixedBitSet::with_capacity(closure.len());
            // Closure positions are ordered children-first.
            for pos in 0..closure.len() {
                let holds = match closure.node(pos) {
                    Node::Bottom => false,
                    Node::Var | Node::Rhd(..) => choice >> bit_of[pos] & 1 == 1,
                    Node::Implies(a, b) => !members.contains(a) || members.contains(b),
                };
                members.set(pos, holds);
            }
            WorldType { members }
        })
        .collect();
    Ok(types)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse;

    fn types_of(text: &str) -> (ClosureSet, Vec<WorldType>) {
        let c = ClosureSet::new(&parse(text).unwrap());
        let t = hintikka_types(&c).unwrap();
        (c, t)
    }

    #[test]
    fn counts() {
        assert_eq!(types_of("p").1.len(), 2);
        assert_eq!(types_of("false").1.len(), 1);
        assert_eq!(types_of("p |> q").1.len(), 8);
    }

    #[test]
    fn bottom_closure_has_only_top() {
        let (c, t) = types_of("false");
        assert_eq!(t[0].formulas(&c), alloc::vec![&Formula::top()]);
    }

    #[test]
    fn variable_types_split_on_p() {
        let (c, t) = types_of("p");
        let p = c.position(&parse("p").unwrap()).unwrap();
        let not_p = c.position(&parse("~p").unwrap()).unwrap();
        let top = c.position(&Formula::top()).unwrap();
        assert!(!t[0].contains(p) && t[0].contains(not_p) && t[0].contains(top));
        assert!(t[1].contains(p) && !t[1].contains(not_p) && t[1].contains(top));
    }

    /// All subsets of the closure satisfying the invariants, found by brute
    /// force over every subset.
    fn brute_force_types(c: &ClosureSet) -> Vec<WorldType> {
        let mut out = Vec::new();
        for bits in 0u64..1 << c.len() {
            let mut members = FixedBitSet::with_capacity(c.len());
            for pos in 0..c.len() {
                members.set(pos, bits >> pos & 1 == 1);
            }
            let t = WorldType { members };
            if t.is_hintikka(c) {
                out.push(t);
            }
        }
        out.sort();
        out
    }

    #[test]
    fn enumeration_matches_brute_force() {
        for text in ["p", "false", "p |> q", "(true |> p) |> p", "~(p -> q) | r"] {
            let (c, mut t) = types_of(text);
            assert!(c.len() <= 20);
            assert!(t.iter().all(|ty| ty.is_hintikka(&c)));
            t.sort();
            assert_eq!(t, brute_force_types(&c), "{text}");
        }
    }

    #[test]
    fn rejects_oversized_closures() {
        let mut phi = Formula::var("x0");
        for i in 1..=MAX_ATOMS {
            phi = Formula::implies(phi, Formula::var(alloc::format!("x{i}")));
        }
        let c = ClosureSet::new(&phi);
        assert!(matches!(hintikka_types(&c), Err(DecideError::TooManyAtoms { .. })));
    }
}
