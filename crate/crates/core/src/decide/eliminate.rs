//! Greatest-fixpoint elimination of world types whose `▷`-demands cannot be
//! met.
//!
//! A type `t` lacking `φ▷ψ` demands a source `u ∋ φ` and a nonempty image set
//! `V` with `ψ ∉ v` for all `v ∈ V`. Every `φ'▷ψ' ∈ t` with `φ' ∈ u` then
//! needs some `v ∈ V` containing `ψ'`. In deterministic modes `V` is a single
//! type. Sources not chosen for a demand get empty images, so positive
//! members impose nothing else.

use alloc::vec::Vec;

use super::types::WorldType;
use super::LogicMode;
use crate::formula::ClosureSet;

/// How one missing `▷`-member of a type is refuted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DemandWitness {
    /// Closure position of the absent `φ▷ψ`.
    pub demand: usize,
    /// Index of the source type (contains `φ`).
    pub source: usize,
    /// Indices of the image types (all lack `ψ`).
    pub images: Vec<usize>,
}

/// Projection of the surviving types onto the positions that matter for
/// realizability, keeping the first type of each projection.
struct Survivors {
    /// Distinct left-hand sides of `▷`-members, as closure positions.
    lhs: Vec<usize>,
    rhs: Vec<usize>,
    by_lhs: Vec<(u64, usize)>,
    by_rhs: Vec<(u64, usize)>,
}

fn signature(t: &WorldType, positions: &[usize]) -> u64 {
    positions
        .iter()
        .enumerate()
        .filter(|(_, &p)| t.contains(p))
        .fold(0, |acc, (bit, _)| acc | 1 << bit)
}

fn first_per_signature(types: &[WorldType], alive: &[usize], positions: &[usize]) -> Vec<(u64, usize)> {
    let mut out: Vec<(u64, usize)> = Vec::new();
    for &i in alive {
        let sig = signature(&types[i], positions);
        if !out.iter().any(|(s, _)| *s == sig) {
            out.push((sig, i));
        }
    }
    out
}

impl Survivors {
    fn new(closure: &ClosureSet, types: &[WorldType], alive: &[usize]) -> Self {
        let mut lhs: Vec<usize> = closure.rhd_members().map(|(_, a, _)| a).collect();
        let mut rhs: Vec<usize> = closure.rhd_members().map(|(_, _, b)| b).collect();
        lhs.sort_unstable();
        lhs.dedup();
        rhs.sort_unstable();
        rhs.dedup();
        let by_lhs = first_per_signature(types, alive, &lhs);
        let by_rhs = first_per_signature(types, alive, &rhs);
        Survivors {
            lhs,
            rhs,
            by_lhs,
            by_rhs,
        }
    }

    fn lhs_bit(&self, pos: usize) -> u64 {
        1 << self.lhs.binary_search(&pos).expect("lhs position")
    }

    fn rhs_bit(&self, pos: usize) -> u64 {
        1 << self.rhs.binary_search(&pos).expect("rhs position")
    }

    /// First surviving type whose rhs projection contains all of `need` and
    /// none of `avoid`.
    fn first_image(&self, need: u64, avoid: u64) -> Option<usize> {
        self.by_rhs
            .iter()
            .find(|(sig, _)| sig & need == need && sig & avoid == 0)
            .map(|&(_, i)| i)
    }

    fn witness(
        &self,
        closure: &ClosureSet,
        t: &WorldType,
        demand: (usize, usize, usize),
        mode: LogicMode,
    ) -> Option<DemandWitness> {
        let (pos, phi, psi) = demand;
        let phi_bit = self.lhs_bit(phi);
        let avoid = self.rhs_bit(psi);
        let positives: Vec<(u64, u64)> = closure
            .rhd_members()
            .filter(|&(p, _, _)| t.contains(p))
            .map(|(_, a, b)| (self.lhs_bit(a), self.rhs_bit(b)))
            .collect();
        for &(sig, source) in &self.by_lhs {
            if sig & phi_bit == 0 {
                continue;
            }
            let needs = positives.iter().filter(|(a, _)| sig & a != 0).map(|&(_, b)| b);
            let images = if mode.is_deterministic() {
                let need = needs.fold(0, |acc, b| acc | b);
                self.first_image(need, avoid).map(|v| alloc::vec![v])
            } else {
                let mut images = Vec::new();
                let mut ok = true;
                for need in needs {
                    match self.first_image(need, avoid) {
                        Some(v) => {
                            if !images.contains(&v) {
                                images.push(v);
                            }
                        }
                        None => {
                            ok = false;
                            break;
                        }
                    }
                }
                if ok && images.is_empty() {
                    images.extend(self.first_image(0, avoid));
                }
                (ok && !images.is_empty()).then_some(images)
            };
            if let Some(images) = images {
                return Some(DemandWitness {
                    demand: pos,
                    source,
                    images,
                });
            }
        }
        None
    }

    fn realize(&self, closure: &ClosureSet, t: &WorldType, mode: LogicMode) -> Option<Vec<DemandWitness>> {
        closure
            .rhd_members()
            .filter(|&(p, _, _)| !t.contains(p))
            .map(|demand| self.witness(closure, t, demand, mode))
            .collect()
    }
}

/// Witnesses for every missing `▷`-member of `types[t]`, drawing sources and
/// images from `alive` (indices into `types`, in canonical order). `None` if
/// some demand cannot be met.
pub fn realize_demands(
    closure: &ClosureSet,
    types: &[WorldType],
    t: usize,
    alive: &[usize],
    mode: LogicMode,
) -> Option<Vec<DemandWitness>> {
    Survivors::new(closure, types, alive).realize(closure, &types[t], mode)
}

pub fn demands_realizable(
    closure: &ClosureSet,
    types: &[WorldType],
    t: usize,
    alive: &[usize],
    mode: LogicMode,
) -> bool {
    realize_demands(closure, types, t, alive, mode).is_some()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Elimination {
    /// Surviving type indices in canonical order.
    pub survivors: Vec<usize>,
    /// Rounds run, including the final round that removed nothing.
    pub rounds: usize,
}

/// The greatest subset of `types` in which every type's demands are
/// realizable, by iterated removal.
pub fn eliminate(closure: &ClosureSet, types: &[WorldType], mode: LogicMode) -> Elimination {
    let mut alive: Vec<usize> = (0..types.len()).collect();
    let mut rounds = 0;
    loop {
        rounds += 1;
        let survivors = Survivors::new(closure, types, &alive);
        let kept: Vec<usize> = alive
            .iter()
            .copied()
            .filter(|&i| survivors.realize(closure, &types[i], mode).is_some())
            .collect();
        if kept.len() == alive.len() {
            return Elimination {
                survivors: alive,
                rounds,
            };
        }
        alive = kept;
    }
}

#[cfg(test)]
mod tests {
    use super::super::types::hintikka_types;
    use super::*;
    use crate::formula::parse;

    fn setup(text: &str) -> (ClosureSet, Vec<WorldType>) {
        let c = ClosureSet::new(&parse(text).unwrap());
        let t = hintikka_types(&c).unwrap();
        (c, t)
    }

    fn pos(c: &ClosureSet, text: &str) -> usize {
        c.position(&parse(text).unwrap()).unwrap()
    }

    #[test]
    fn type_with_every_modality_has_no_demands() {
        let (c, t) = setup("p |> q");
        let all: Vec<usize> = (0..t.len()).collect();
        let full = t.iter().position(|ty| ty.contains(pos(&c, "p |> q"))).unwrap();
        for mode in [LogicMode::R, LogicMode::Rd] {
            assert_eq!(realize_demands(&c, &t, full, &all, mode), Some(Vec::new()));
        }
    }

    #[test]
    fn refuting_p_rhd_q_is_realizable() {
        let (c, t) = setup("p |> q");
        let all: Vec<usize> = (0..t.len()).collect();
        let rhd = pos(&c, "p |> q");
        let (p, q) = (pos(&c, "p"), pos(&c, "q"));
        for (i, ty) in t.iter().enumerate().filter(|(_, ty)| !ty.contains(rhd)) {
            for mode in [LogicMode::R, LogicMode::Rd] {
                let w = realize_demands(&c, &t, i, &all, mode).unwrap();
                assert_eq!(w.len(), 1, "{:?}", ty);
                assert!(t[w[0].source].contains(p));
                assert!(w[0].images.iter().all(|&v| !t[v].contains(q)));
            }
        }
    }

    #[test]
    fn bottom_source_demand_fails() {
        let (c, t) = setup("false |> q");
        let all: Vec<usize> = (0..t.len()).collect();
        let rhd = pos(&c, "false |> q");
        let lacking = t.iter().position(|ty| !ty.contains(rhd)).unwrap();
        assert!(!demands_realizable(&c, &t, lacking, &all, LogicMode::R));
        let e = eliminate(&c, &t, LogicMode::R);
        assert!(e.survivors.iter().all(|&i| t[i].contains(rhd)));
        assert_eq!(e.survivors.len(), t.len() / 2);
    }

    #[test]
    fn modality_free_formulas_eliminate_nothing() {
        let (c, t) = setup("p -> q | ~r");
        for mode in [LogicMode::R, LogicMode::Rd] {
            let e = eliminate(&c, &t, mode);
            assert_eq!(e.survivors, (0..t.len()).collect::<Vec<_>>());
            assert_eq!(e.rounds, 1);
        }
    }

    #[test]
    fn determinism_restricts_images() {
        // Refuting p |> q & r while keeping p |> q and p |> r needs two
        // different images.
        let (c, t) = setup("p |> q -> (p |> r -> p |> q & r)");
        let all: Vec<usize> = (0..t.len()).collect();
        let want = [pos(&c, "p |> q"), pos(&c, "p |> r")];
        let reject = pos(&c, "p |> q & r");
        let i = t
            .iter()
            .position(|ty| want.iter().all(|&w| ty.contains(w)) && !ty.contains(reject))
            .unwrap();
        let nd = realize_demands(&c, &t, i, &all, LogicMode::R).unwrap();
        assert_eq!(nd[0].images.len(), 2);
        assert!(realize_demands(&c, &t, i, &all, LogicMode::Rd).is_none());
    }

    #[test]
    fn rounds_bounded_by_type_count() {
        for text in ["(true |> p) |> p", "((p |> q) |> q) |> (false |> p)", "~(p |> false) |> false"] {
            let (c, t) = setup(text);
            for mode in [LogicMode::R, LogicMode::Rd] {
                let e = eliminate(&c, &t, mode);
                assert!(e.rounds <= t.len() + 1);
                // Fixpoint: every survivor is realizable within the survivors.
                for &i in &e.survivors {
                    assert!(demands_realizable(&c, &t, i, &e.survivors, mode));
                }
            }
        }
    }
}
