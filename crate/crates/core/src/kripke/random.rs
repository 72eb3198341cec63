use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{KripkeModel, Triple};

/// Reproducible pseudo-random model with worlds `w0..w{n-1}`.
///
/// Every triple is present with probability `density` and every variable
/// holds at every world with probability one half. With `deterministic` set,
/// each `(program, source)` pair keeps one target chosen uniformly among the
/// sampled candidates.
///
/// # Panics
/// If `n_worlds` is zero or `density` is outside `[0, 1]`.
pub fn random_model(
    n_worlds: usize,
    density: f64,
    vars: &[&str],
    seed: u64,
    deterministic: bool,
) -> KripkeModel {
    assert!(n_worlds >= 1, "a model needs at least one world");
    assert!((0.0..=1.0).contains(&density), "density must be a probability");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let worlds: Vec<String> = (0..n_worlds).map(|i| format!("w{i}")).collect();

    let mut triples = BTreeSet::new();
    for program in 0..n_worlds {
        for source in 0..n_worlds {
            let candidates: Vec<usize> = (0..n_worlds).filter(|_| rng.gen_bool(density)).collect();
            if candidates.is_empty() {
                continue;
            }
            let kept: Vec<usize> = if deterministic {
                alloc::vec![candidates[rng.gen_range(0..candidates.len())]]
            } else {
                candidates
            };
            triples.extend(kept.into_iter().map(|target| Triple {
                source,
                program,
                target,
            }));
        }
    }

    let valuation: BTreeMap<String, BTreeSet<usize>> = vars
        .iter()
        .map(|var| {
            let set = (0..n_worlds).filter(|_| rng.gen_bool(0.5)).collect();
            (String::from(*var), set)
        })
        .collect();

    KripkeModel::from_parts(worlds, triples, valuation).expect("generated model is well formed")
}
