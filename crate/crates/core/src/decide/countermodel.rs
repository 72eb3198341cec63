use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::eliminate::{realize_demands, DemandWitness};
use super::types::WorldType;
use super::LogicMode;
use crate::formula::{ClosureSet, Formula, Node};
use crate::kripke::{KripkeModel, Triple};

#[derive(Clone, Copy, Debug)]
struct World {
    ty: usize,
    /// For a duplicated source: the world whose program it shares.
    copy_of: Option<usize>,
}

/// Builds a finite model whose world `0` has type `types[witness]` and in
/// which every world forces exactly the closure members of its type.
///
/// Each type reachable from the witness gets one base world. A base world's
/// program sends, for each of its missing `▷`-members, one source world to
/// that demand's image worlds. When two demands of the same program pick the
/// same source type, the second gets a fresh copy of the source so the image
/// sets stay separate; a copy runs the same program as its base world. No
/// other source has an image.
///
/// `survivors` must be an elimination fixpoint containing `witness`.
pub fn build_countermodel(
    closure: &ClosureSet,
    types: &[WorldType],
    survivors: &[usize],
    witness: usize,
    mode: LogicMode,
) -> (KripkeModel, usize) {
    let mut worlds: Vec<World> = Vec::new();
    let mut base: BTreeMap<usize, usize> = BTreeMap::new();
    let mut pending: Vec<usize> = Vec::new();
    let mut triples: BTreeSet<Triple> = BTreeSet::new();

    let mut base_of = |ty: usize, worlds: &mut Vec<World>, pending: &mut Vec<usize>| -> usize {
        *base.entry(ty).or_insert_with(|| {
            worlds.push(World { ty, copy_of: None });
            pending.push(worlds.len() - 1);
            worlds.len() - 1
        })
    };

    base_of(witness, &mut worlds, &mut pending);
    let mut next = 0;
    while next < pending.len() {
        let program = pending[next];
        next += 1;
        let demands: Vec<DemandWitness> =
            realize_demands(closure, types, worlds[program].ty, survivors, mode)
                .expect("survivors form an elimination fixpoint");
        let mut used_sources = BTreeSet::new();
        for d in demands {
            let mut source = base_of(d.source, &mut worlds, &mut pending);
            if !used_sources.insert(source) {
                worlds.push(World {
                    ty: d.source,
                    copy_of: Some(source),
                });
                source = worlds.len() - 1;
                used_sources.insert(source);
            }
            for v in d.images {
                let target = base_of(v, &mut worlds, &mut pending);
                triples.insert(Triple {
                    source,
                    program,
                    target,
                });
            }
        }
    }

    let copied: Vec<Triple> = worlds
        .iter()
        .enumerate()
        .filter_map(|(i, w)| w.copy_of.map(|b| (i, b)))
        .flat_map(|(copy, b)| {
            triples
                .iter()
                .filter(move |t| t.program == b)
                .map(move |t| Triple { program: copy, ..*t })
        })
        .collect();
    triples.extend(copied);

    let mut valuation: BTreeMap<String, BTreeSet<usize>> = BTreeMap::new();
    for pos in 0..closure.len() {
        if let (Node::Var, Formula::Var(name)) = (closure.node(pos), closure.formula(pos)) {
            let holds = (0..worlds.len()).filter(|&w| types[worlds[w].ty].contains(pos)).collect();
            valuation.insert(name.clone(), holds);
        }
    }
    let names = (0..worlds.len()).map(|i| format!("w{i}")).collect();
    let model = KripkeModel::from_parts(names, triples, valuation).expect("constructed model is well formed");
    (model, 0)
}

/// The type each world of a built countermodel was created for, recovered by
/// reading the closure off the model.
pub fn world_types(model: &KripkeModel, closure: &ClosureSet) -> Vec<BTreeSet<usize>> {
    let tables: Vec<_> = closure
        .formulas()
        .iter()
        .map(|f| crate::kripke::ForcingTable::new(model, f))
        .collect();
    (0..model.len())
        .map(|w| (0..closure.len()).filter(|&p| tables[p].forced(w)).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::super::eliminate::eliminate;
    use super::super::types::hintikka_types;
    use super::*;
    use crate::formula::parse;

    /// Builds a model for every surviving type and checks the truth lemma:
    /// each world forces exactly the members of its type.
    fn check_truth_lemma(text: &str, mode: LogicMode) {
        let c = ClosureSet::new(&parse(text).unwrap());
        let types = hintikka_types(&c).unwrap();
        let e = eliminate(&c, &types, mode);
        for &w in &e.survivors {
            let (model, world) = build_countermodel(&c, &types, &e.survivors, w, mode);
            if mode.is_deterministic() {
                assert!(model.is_deterministic(), "{text}");
            }
            let forced = world_types(&model, &c);
            let expected: BTreeSet<usize> = types[w].positions().collect();
            assert_eq!(forced[world], expected, "{text} type {w}");
            for f in &forced {
                assert!(e
                    .survivors
                    .iter()
                    .any(|&s| types[s].positions().collect::<BTreeSet<_>>() == *f));
            }
        }
    }

    #[test]
    fn truth_lemma_on_samples() {
        for text in [
            "p",
            "true |> p",
            "(true |> p) |> p",
            "p |> q -> (p |> r -> p |> q & r)",
            "((p |> q) |> (q |> p)) -> ~(p |> false)",
            "(p |> q) & (p |> ~q) -> p |> false",
        ] {
            check_truth_lemma(text, LogicMode::R);
            check_truth_lemma(text, LogicMode::Rd);
        }
    }

    #[test]
    fn modality_free_witness_gives_one_world() {
        let c = ClosureSet::new(&parse("p -> q").unwrap());
        let types = hintikka_types(&c).unwrap();
        let e = eliminate(&c, &types, LogicMode::R);
        let (m, w) = build_countermodel(&c, &types, &e.survivors, 0, LogicMode::R);
        assert_eq!((m.len(), w), (1, 0));
        assert!(m.triples().is_empty());
    }

    #[test]
    fn refuting_top_rhd_p_wires_a_source_and_a_p_free_image() {
        let phi = parse("true |> p").unwrap();
        let c = ClosureSet::new(&phi);
        let types = hintikka_types(&c).unwrap();
        let e = eliminate(&c, &types, LogicMode::R);
        let rhd = c.position(&phi).unwrap();
        let p = c.position(&parse("p").unwrap()).unwrap();
        let witness = *e.survivors.iter().find(|&&t| !types[t].contains(rhd)).unwrap();
        let (m, w) = build_countermodel(&c, &types, &e.survivors, witness, LogicMode::R);
        let edges: Vec<_> = m.sources_under(w).collect();
        assert_eq!(edges.len(), 1);
        for &v in edges[0].1 {
            assert!(!m.holds_var("p", v));
        }
        let forced = world_types(&m, &c);
        for &v in edges[0].1 {
            assert!(!forced[v].contains(&p));
        }
        assert!(!m.forces(w, &phi));
    }
}
