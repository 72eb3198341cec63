//! JSON file formats for models, proofs, verdicts and realization bundles.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use recmodal_core::formula::{parse, Formula, ParseError};
use recmodal_core::hilbert::{AxiomSchema, Bindings, Justification, Logic, Proof, ProofLine};
use recmodal_core::kripke::{KripkeModel, ModelError};
use recmodal_core::recfun::{parse_sexp, RealizationBundle, SexpError};
use serde::{de::DeserializeOwned, Deserialize, Serialize};

#[derive(Debug, thiserror::Error)]
pub enum FileError {
    #[error("{path}: {error}")]
    Io { path: String, error: std::io::Error },
    #[error("{path}: {error}")]
    Json { path: String, error: serde_json::Error },
    #[error("formula `{text}`: {error}")]
    Formula { text: String, error: ParseError },
    #[error("s-expression `{text}`: {error}")]
    Sexp { text: String, error: SexpError },
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("{0}")]
    Invalid(String),
}

pub fn parse_formula(text: &str) -> Result<Formula, FileError> {
    parse(text).map_err(|error| FileError::Formula {
        text: text.to_string(),
        error,
    })
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, FileError> {
    let text = fs::read_to_string(path).map_err(|error| FileError::Io {
        path: path.display().to_string(),
        error,
    })?;
    serde_json::from_str(&text).map_err(|error| FileError::Json {
        path: path.display().to_string(),
        error,
    })
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), FileError> {
    let mut text = serde_json::to_string_pretty(value).expect("file types serialize");
    text.push('\n');
    fs::write(path, text).map_err(|error| FileError::Io {
        path: path.display().to_string(),
        error,
    })
}

/// A Kripke model by world names. `triples` are `[u, w, v]` for `u →_w v`.
///
/// Countermodels written by `decide` also record the refuted formula, the
/// logic and the refuting world.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelFile {
    pub worlds: Vec<String>,
    pub triples: Vec<[String; 3]>,
    pub valuation: BTreeMap<String, Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub formula: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub logic: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub world: Option<String>,
}

impl ModelFile {
    pub fn from_model(model: &KripkeModel) -> Self {
        let name = |w: usize| model.world_name(w).to_string();
        ModelFile {
            worlds: model.worlds().to_vec(),
            triples: model
                .triples()
                .iter()
                .map(|t| [name(t.source), name(t.program), name(t.target)])
                .collect(),
            valuation: model
                .valuation()
                .iter()
                .map(|(v, ws)| (v.clone(), ws.iter().map(|&w| name(w)).collect()))
                .collect(),
            formula: None,
            logic: None,
            world: None,
        }
    }

    pub fn to_model(&self) -> Result<KripkeModel, FileError> {
        Ok(KripkeModel::new(
            self.worlds.iter().map(String::as_str),
            self.triples.iter().map(|[u, w, v]| (u.as_str(), w.as_str(), v.as_str())),
            self.valuation
                .iter()
                .map(|(var, ws)| (var.as_str(), ws.iter().map(String::as_str).collect())),
        )?)
    }
}

/// One proof line. `refs` are 0-based: a hypothesis index for
/// `hypothesis`, `[i, j]` line indices for `mp` and `m`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LineFile {
    pub formula: String,
    pub rule: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub refs: Vec<usize>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub bindings: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProofFile {
    pub logic: String,
    #[serde(default)]
    pub hypotheses: Vec<String>,
    pub lines: Vec<LineFile>,
}

pub fn parse_logic(text: &str) -> Result<Logic, FileError> {
    match text.to_ascii_lowercase().as_str() {
        "r" => Ok(Logic::R),
        "rd" => Ok(Logic::Rd),
        other => Err(FileError::Invalid(format!("unknown proof logic `{other}` (expected r or rd)"))),
    }
}

fn logic_name(logic: Logic) -> &'static str {
    match logic {
        Logic::R => "r",
        Logic::Rd => "rd",
    }
}

fn schema(rule: &str) -> Option<AxiomSchema> {
    match rule {
        "A1" => Some(AxiomSchema::A1),
        "A2" => Some(AxiomSchema::A2),
        "A3" => Some(AxiomSchema::A3),
        "A4" => Some(AxiomSchema::A4),
        _ => None,
    }
}

impl ProofFile {
    pub fn from_proof(proof: &Proof) -> Self {
        let lines = proof
            .lines
            .iter()
            .map(|line| {
                let (rule, refs, bindings) = match &line.justification {
                    Justification::Hypothesis(h) => ("hypothesis".to_string(), vec![*h], BTreeMap::new()),
                    Justification::Classical => ("classical".to_string(), vec![], BTreeMap::new()),
                    Justification::Axiom(s, b) => (
                        s.to_string(),
                        vec![],
                        b.iter().map(|(k, v)| (k.clone(), v.to_string())).collect(),
                    ),
                    Justification::ModusPonens(i, j) => ("mp".to_string(), vec![*i, *j], BTreeMap::new()),
                    Justification::RuleM(i, j) => ("m".to_string(), vec![*i, *j], BTreeMap::new()),
                };
                LineFile {
                    formula: line.formula.to_string(),
                    rule,
                    refs,
                    bindings,
                }
            })
            .collect();
        ProofFile {
            logic: logic_name(proof.logic).to_string(),
            hypotheses: proof.hypotheses.iter().map(Formula::to_string).collect(),
            lines,
        }
    }

    pub fn to_proof(&self) -> Result<Proof, FileError> {
        let logic = parse_logic(&self.logic)?;
        let hypotheses = self
            .hypotheses
            .iter()
            .map(|h| parse_formula(h))
            .collect::<Result<_, _>>()?;
        let mut lines = Vec::with_capacity(self.lines.len());
        for (n, line) in self.lines.iter().enumerate() {
            let formula = parse_formula(&line.formula)?;
            let refs = |count: usize| -> Result<&[usize], FileError> {
                if line.refs.len() == count {
                    Ok(&line.refs)
                } else {
                    Err(FileError::Invalid(format!(
                        "line {n}: rule `{}` takes {count} reference(s), found {}",
                        line.rule,
                        line.refs.len()
                    )))
                }
            };
            let justification = match line.rule.as_str() {
                "hypothesis" => Justification::Hypothesis(refs(1)?[0]),
                "classical" => {
                    refs(0)?;
                    Justification::Classical
                }
                "mp" => {
                    let r = refs(2)?;
                    Justification::ModusPonens(r[0], r[1])
                }
                "m" => {
                    let r = refs(2)?;
                    Justification::RuleM(r[0], r[1])
                }
                rule => {
                    let s = schema(rule).ok_or_else(|| FileError::Invalid(format!("line {n}: unknown rule `{rule}`")))?;
                    refs(0)?;
                    let bindings: Bindings = line
                        .bindings
                        .iter()
                        .map(|(k, v)| Ok((k.clone(), parse_formula(v)?)))
                        .collect::<Result<_, FileError>>()?;
                    Justification::Axiom(s, bindings)
                }
            };
            lines.push(ProofLine::new(formula, justification));
        }
        Ok(Proof {
            logic,
            hypotheses,
            lines,
        })
    }
}

/// A realization bundle: the model, one code per world (as s-expression
/// text), the valuation as sets of codes, and the step budget.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BundleFile {
    pub model: ModelFile,
    pub codes: BTreeMap<String, String>,
    pub valuation: BTreeMap<String, Vec<String>>,
    pub budget: usize,
}

fn read_sexp(text: &str) -> Result<recmodal_core::recfun::Sexp, FileError> {
    parse_sexp(text).map_err(|error| FileError::Sexp {
        text: text.to_string(),
        error,
    })
}

impl BundleFile {
    pub fn from_bundle(bundle: &RealizationBundle) -> Self {
        BundleFile {
            model: ModelFile::from_model(&bundle.model),
            codes: bundle
                .model
                .worlds()
                .iter()
                .zip(&bundle.codes)
                .map(|(w, c)| (w.clone(), c.to_string()))
                .collect(),
            valuation: bundle
                .valuation
                .iter()
                .map(|(v, set)| (v.clone(), set.iter().map(|c| c.to_string()).collect()))
                .collect(),
            budget: bundle.budget,
        }
    }

    pub fn to_bundle(&self) -> Result<RealizationBundle, FileError> {
        let model = self.model.to_model()?;
        let codes = model
            .worlds()
            .iter()
            .map(|w| {
                let text = self
                    .codes
                    .get(w)
                    .ok_or_else(|| FileError::Invalid(format!("no code for world `{w}`")))?;
                read_sexp(text)
            })
            .collect::<Result<_, _>>()?;
        if let Some(extra) = self.codes.keys().find(|w| model.world_index(w).is_err()) {
            return Err(FileError::Invalid(format!("code for unknown world `{extra}`")));
        }
        let valuation = self
            .valuation
            .iter()
            .map(|(v, set)| Ok((v.clone(), set.iter().map(|c| read_sexp(c)).collect::<Result<_, _>>()?)))
            .collect::<Result<_, FileError>>()?;
        Ok(RealizationBundle {
            model,
            codes,
            valuation,
            budget: self.budget,
        })
    }
}
