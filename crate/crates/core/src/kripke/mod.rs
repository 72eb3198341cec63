//! Finite Kripke models over a ternary computability relation.
//!
//! A triple `(u, w, v)` says that program `w` on input `u` may output `v`
//! (written `u →_w v`). Worlds are addressed by position; their string names
//! are only for files and diagnostics.

mod random;

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;

use crate::formula::Formula;

pub use random::random_model;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ModelError {
    #[error("a model needs at least one world")]
    NoWorlds,
    #[error("duplicate world `{0}`")]
    DuplicateWorld(String),
    #[error("unknown world `{0}`")]
    UnknownWorld(String),
    #[error("world index {0} is out of range")]
    WorldOutOfRange(usize),
}

/// `source →_program target`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Triple {
    pub source: usize,
    pub program: usize,
    pub target: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KripkeModel {
    worlds: Vec<String>,
    index: BTreeMap<String, usize>,
    triples: BTreeSet<Triple>,
    valuation: BTreeMap<String, BTreeSet<usize>>,
    images: BTreeMap<(usize, usize), Vec<usize>>,
}

impl KripkeModel {
    /// Builds a model from world names, `(source, program, target)` name
    /// triples and a valuation by name. Variables missing from the valuation
    /// are false everywhere.
    pub fn new<S: AsRef<str>>(
        worlds: impl IntoIterator<Item = S>,
        triples: impl IntoIterator<Item = (S, S, S)>,
        valuation: impl IntoIterator<Item = (S, Vec<S>)>,
    ) -> Result<Self, ModelError> {
        let names: Vec<String> = worlds.into_iter().map(|w| String::from(w.as_ref())).collect();
        let mut index = BTreeMap::new();
        for (i, name) in names.iter().enumerate() {
            if index.insert(name.clone(), i).is_some() {
                return Err(ModelError::DuplicateWorld(name.clone()));
            }
        }
        let lookup = |name: &str| {
            index
                .get(name)
                .copied()
                .ok_or_else(|| ModelError::UnknownWorld(String::from(name)))
        };
        let triples = triples
            .into_iter()
            .map(|(u, w, v)| {
                Ok(Triple {
                    source: lookup(u.as_ref())?,
                    program: lookup(w.as_ref())?,
                    target: lookup(v.as_ref())?,
                })
            })
            .collect::<Result<BTreeSet<_>, ModelError>>()?;
        let valuation = valuation
            .into_iter()
            .map(|(var, ws)| {
                let set = ws
                    .iter()
                    .map(|w| lookup(w.as_ref()))
                    .collect::<Result<BTreeSet<_>, _>>()?;
                Ok((String::from(var.as_ref()), set))
            })
            .collect::<Result<BTreeMap<_, _>, ModelError>>()?;
        Self::from_parts(names, triples, valuation)
    }

    /// Builds a model from positional data.
    pub fn from_parts(
        worlds: Vec<String>,
        triples: BTreeSet<Triple>,
        valuation: BTreeMap<String, BTreeSet<usize>>,
    ) -> Result<Self, ModelError> {
        if worlds.is_empty() {
            return Err(ModelError::NoWorlds);
        }
        let mut index = BTreeMap::new();
        for (i, name) in worlds.iter().enumerate() {
            if index.insert(name.clone(), i).is_some() {
                return Err(ModelError::DuplicateWorld(name.clone()));
            }
        }
        let n = worlds.len();
        let out_of_range = triples
            .iter()
            .flat_map(|t| [t.source, t.program, t.target])
            .chain(valuation.values().flatten().copied())
            .find(|&w| w >= n);
        if let Some(w) = out_of_range {
            return Err(ModelError::WorldOutOfRange(w));
        }
        let mut images: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
        for t in &triples {
            images.entry((t.program, t.source)).or_default().push(t.target);
        }
        Ok(KripkeModel {
            worlds,
            index,
            triples,
            valuation,
            images,
        })
    }

    pub fn len(&self) -> usize {
        self.worlds.len()
    }

    pub fn is_empty(&self) -> bool {
        self.worlds.is_empty()
    }

    pub fn worlds(&self) -> &[String] {
        &self.worlds
    }

    pub fn world_name(&self, world: usize) -> &str {
        &self.worlds[world]
    }

    pub fn world_index(&self, name: &str) -> Result<usize, ModelError> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| ModelError::UnknownWorld(String::from(name)))
    }

    pub fn triples(&self) -> &BTreeSet<Triple> {
        &self.triples
    }

    pub fn valuation(&self) -> &BTreeMap<String, BTreeSet<usize>> {
        &self.valuation
    }

    pub fn holds_var(&self, var: &str, world: usize) -> bool {
        self.valuation.get(var).is_some_and(|ws| ws.contains(&world))
    }

    /// Targets `v` with `source →_program v`.
    pub fn image(&self, program: usize, source: usize) -> &[usize] {
        self.images.get(&(program, source)).map_or(&[], Vec::as_slice)
    }

    /// Sources with a nonempty image under `program`, with their images.
    pub fn sources_under(&self, program: usize) -> impl Iterator<Item = (usize, &[usize])> {
        self.images
            .range((program, 0)..(program + 1, 0))
            .map(|(&(_, source), targets)| (source, targets.as_slice()))
    }

    /// No program maps any input to more than one output.
    pub fn is_deterministic(&self) -> bool {
        self.images.values().all(|targets| targets.len() <= 1)
    }

    /// Whether `world` forces `phi`.
    ///
    /// # Panics
    /// If `world` is out of range.
    pub fn forces(&self, world: usize, phi: &Formula) -> bool {
        assert!(world < self.len(), "world index {world} out of range");
        ForcingTable::new(self, phi).forced(world)
    }

    pub fn forces_named(&self, world: &str, phi: &Formula) -> Result<bool, ModelError> {
        Ok(self.forces(self.world_index(world)?, phi))
    }

    /// Worlds that do not force `phi`.
    pub fn refuting_worlds(&self, phi: &Formula) -> Vec<usize> {
        let table = ForcingTable::new(self, phi);
        (0..self.len()).filter(|&w| !table.forced(w)).collect()
    }

    /// `phi` is forced at every world.
    pub fn valid(&self, phi: &Formula) -> bool {
        let table = ForcingTable::new(self, phi);
        (0..self.len()).all(|w| table.forced(w))
    }
}

/// Truth of every subformula of one formula at every world, computed
/// bottom-up once.
#[derive(Clone, Debug)]
pub struct ForcingTable {
    subformulas: BTreeMap<Formula, usize>,
    truth: Vec<Vec<bool>>,
    root: usize,
}

impl ForcingTable {
    pub fn new(model: &KripkeModel, phi: &Formula) -> Self {
        let list = phi.subformula_list();
        let subformulas: BTreeMap<Formula, usize> =
            list.iter().enumerate().map(|(i, f)| ((*f).clone(), i)).collect();
        let n = model.len();
        let mut truth: Vec<Vec<bool>> = Vec::with_capacity(list.len());
        for f in &list {
            let row: Vec<bool> = match f {
                Formula::Bottom => alloc::vec![false; n],
                Formula::Var(name) => (0..n).map(|w| model.holds_var(name, w)).collect(),
                Formula::Implies(a, b) => {
                    let (a, b) = (&truth[subformulas[&**a]], &truth[subformulas[&**b]]);
                    (0..n).map(|w| !a[w] || b[w]).collect()
                }
                Formula::Rhd(a, b) => {
                    let (a, b) = (&truth[subformulas[&**a]], &truth[subformulas[&**b]]);
                    (0..n)
                        .map(|w| {
                            model
                                .sources_under(w)
                                .filter(|(u, _)| a[*u])
                                .all(|(_, targets)| targets.iter().any(|&v| b[v]))
                        })
                        .collect()
                }
            };
            truth.push(row);
        }
        let root = list.len() - 1;
        ForcingTable {
            subformulas,
            truth,
            root,
        }
    }

    /// Truth of the formula the table was built for.
    pub fn forced(&self, world: usize) -> bool {
        self.truth[self.root][world]
    }

    /// Truth of any subformula of the evaluated formula.
    pub fn get(&self, world: usize, phi: &Formula) -> Option<bool> {
        self.subformulas.get(phi).map(|&i| self.truth[i][world])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse;

    fn f(s: &str) -> Formula {
        parse(s).unwrap()
    }

    fn example() -> KripkeModel {
        KripkeModel::new(
            ["w", "a", "b"],
            [("a", "w", "b")],
            [("p", alloc::vec!["a"]), ("q", alloc::vec![])],
        )
        .unwrap()
    }

    #[test]
    fn determinism() {
        let empty = KripkeModel::new(["a"], [], []).unwrap();
        assert!(empty.is_deterministic());
        let split = KripkeModel::new(["a", "b", "c", "w"], [("a", "w", "b"), ("a", "w", "c")], [])
            .unwrap();
        assert!(!split.is_deterministic());
        let two = KripkeModel::new(
            ["a", "b", "c", "w", "x"],
            [("a", "w", "b"), ("a", "x", "c")],
            [],
        )
        .unwrap();
        assert!(two.is_deterministic());
    }

    #[test]
    fn forcing_examples() {
        let m = example();
        let w = m.world_index("w").unwrap();
        for world in 0..m.len() {
            assert!(m.forces(world, &Formula::top()));
            assert!(!m.forces(world, &Formula::Bottom));
        }
        assert!(!m.forces(w, &f("p |> q")));
        assert!(m.forces(w, &f("p |> ~q")));
        // a and b run nothing, so every modality holds there.
        assert!(m.forces(1, &f("p |> q")));
        assert!(m.forces(2, &f("true |> false")));

        let empty = KripkeModel::new(["x", "y"], [], [("p", alloc::vec!["x"])]).unwrap();
        for phi in ["p |> q", "true |> false", "(p |> q) |> false"] {
            assert!(empty.valid(&f(phi)));
        }
    }

    #[test]
    fn forces_named_rejects_unknown_world() {
        let m = example();
        assert_eq!(
            m.forces_named("nowhere", &f("p")),
            Err(ModelError::UnknownWorld("nowhere".into()))
        );
        assert_eq!(m.forces_named("a", &f("p")), Ok(true));
    }

    #[test]
    fn construction_errors() {
        assert_eq!(
            KripkeModel::new(Vec::<&str>::new(), [], []).unwrap_err(),
            ModelError::NoWorlds
        );
        assert_eq!(
            KripkeModel::new(["a", "a"], [], []).unwrap_err(),
            ModelError::DuplicateWorld("a".into())
        );
        assert_eq!(
            KripkeModel::new(["a"], [("a", "a", "z")], []).unwrap_err(),
            ModelError::UnknownWorld("z".into())
        );
        assert_eq!(
            KripkeModel::new(["a"], [], [("p", alloc::vec!["z"])]).unwrap_err(),
            ModelError::UnknownWorld("z".into())
        );
    }

    #[test]
    fn table_exposes_subformulas() {
        let m = example();
        let phi = f("p |> q -> p");
        let table = ForcingTable::new(&m, &phi);
        assert_eq!(table.get(1, &f("p")), Some(true));
        assert_eq!(table.get(0, &f("p |> q")), Some(false));
        assert_eq!(table.get(0, &f("r")), None);
    }
}
