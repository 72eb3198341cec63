//! Exhaustive and sampled formula corpora.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::Formula;

/// Every formula over the given variables and `⊥` built with `→` and `▷`
/// of depth at most `depth` (leaves have depth 0), in the formula order.
pub fn enumerate(vars: &[&str], depth: usize) -> Vec<Formula> {
    let mut all: BTreeSet<Formula> = vars.iter().map(|v| Formula::var(*v)).collect();
    all.insert(Formula::Bottom);
    for _ in 0..depth {
        let level: Vec<Formula> = all.iter().cloned().collect();
        for a in &level {
            for b in &level {
                all.insert(Formula::implies(a.clone(), b.clone()));
                all.insert(Formula::rhd(a.clone(), b.clone()));
            }
        }
    }
    all.into_iter().collect()
}

/// A reproducible sample of `count` distinct formulas from
/// [`enumerate`], or all of them if there are fewer.
pub fn sample(vars: &[&str], depth: usize, count: usize, seed: u64) -> Vec<Formula> {
    let mut all = enumerate(vars, depth);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    all.shuffle(&mut rng);
    all.truncate(count);
    all
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        // 3 leaves, then 3 + 2·3² = 21, then 3 + 2·21² = 885.
        assert_eq!(enumerate(&["p", "q"], 0).len(), 3);
        assert_eq!(enumerate(&["p", "q"], 1).len(), 21);
        assert_eq!(enumerate(&["p", "q"], 2).len(), 885);
        assert!(enumerate(&["p", "q"], 2).iter().all(|f| f.depth() <= 2));
    }

    #[test]
    fn samples_are_reproducible_and_distinct() {
        let a = sample(&["p", "q"], 2, 200, 1);
        assert_eq!(a, sample(&["p", "q"], 2, 200, 1));
        assert_ne!(a, sample(&["p", "q"], 2, 200, 2));
        assert_eq!(a.iter().collect::<BTreeSet<_>>().len(), 200);
    }
}
