//! Random assembly of hypothesis-free proofs, for soundness testing.

use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{instantiate_axiom, AxiomSchema, Bindings, Justification, Logic, Proof, ProofLine};
use crate::formula::{ClosureSet, Formula};

/// Lines whose closure has more free atoms than this are not added, which
/// keeps conclusions cheap to decide.
const MAX_CLOSURE_ATOMS: usize = 10;

fn small_formula(rng: &mut ChaCha8Rng, depth: usize) -> Formula {
    let leaf = |rng: &mut ChaCha8Rng| match rng.gen_range(0..5) {
        0 => Formula::Bottom,
        1 | 2 => Formula::var("p"),
        _ => Formula::var("q"),
    };
    if depth == 0 || rng.gen_bool(0.4) {
        return leaf(rng);
    }
    let a = small_formula(rng, depth - 1);
    match rng.gen_range(0..4) {
        0 => Formula::not(a),
        1 => Formula::implies(a, small_formula(rng, depth - 1)),
        _ => Formula::rhd(a, small_formula(rng, depth - 1)),
    }
}

fn classical_instance(rng: &mut ChaCha8Rng, lines: &[ProofLine]) -> Formula {
    let pick = |rng: &mut ChaCha8Rng| {
        if !lines.is_empty() && rng.gen_bool(0.5) {
            lines[rng.gen_range(0..lines.len())].formula.clone()
        } else {
            small_formula(rng, 2)
        }
    };
    let a = pick(rng);
    let b = small_formula(rng, 1);
    match rng.gen_range(0..6) {
        0 => Formula::implies(a.clone(), a),
        1 => Formula::implies(a.clone(), Formula::implies(b, a)),
        2 => Formula::implies(Formula::and(a.clone(), b), a),
        3 => Formula::implies(a.clone(), Formula::or(a, b)),
        4 => Formula::implies(Formula::not(Formula::not(a.clone())), a),
        _ => Formula::implies(
            Formula::implies(a.clone(), b.clone()),
            Formula::implies(Formula::not(b), Formula::not(a)),
        ),
    }
}

fn axiom_line(rng: &mut ChaCha8Rng, logic: Logic) -> ProofLine {
    let schemas: &[AxiomSchema] = match logic {
        Logic::R => &[AxiomSchema::A1, AxiomSchema::A2, AxiomSchema::A3],
        Logic::Rd => &[AxiomSchema::A1, AxiomSchema::A2, AxiomSchema::A3, AxiomSchema::A4],
    };
    let schema = schemas[rng.gen_range(0..schemas.len())];
    let bindings: Bindings = schema
        .metavariables()
        .iter()
        .map(|name| (alloc::string::String::from(*name), small_formula(rng, 1)))
        .collect();
    let formula = instantiate_axiom(schema, &bindings).expect("all metavariables bound");
    ProofLine::new(formula, Justification::Axiom(schema, bindings))
}

fn implications(lines: &[ProofLine]) -> Vec<usize> {
    (0..lines.len())
        .filter(|&i| matches!(lines[i].formula, Formula::Implies(..)))
        .collect()
}

/// A reproducible hypothesis-free proof of about `steps` lines built from
/// axioms, classical tautologies, modus ponens and rule M. The final step
/// applies an inference rule.
pub fn random_proof(logic: Logic, seed: u64, steps: usize) -> Proof {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut lines: Vec<ProofLine> = Vec::new();
    let push = |lines: &mut Vec<ProofLine>, line: ProofLine| {
        if ClosureSet::new(&line.formula).atoms().count() <= MAX_CLOSURE_ATOMS && !lines.iter().any(|l| l.formula == line.formula) {
            lines.push(line);
        }
    };
    for step in 0..steps.max(2) {
        let last = step + 1 == steps.max(2);
        let choice = if last { 2 + rng.gen_range(0..2) } else { rng.gen_range(0..5) };
        match choice {
            0 => push(&mut lines, axiom_line(&mut rng, logic)),
            1 => {
                let f = classical_instance(&mut rng, &lines);
                push(&mut lines, ProofLine::new(f, Justification::Classical));
            }
            2 => {
                // Modus ponens, weakening an existing line first if nothing fits.
                let pairs: Vec<(usize, usize)> = (0..lines.len())
                    .flat_map(|i| (0..lines.len()).map(move |j| (i, j)))
                    .filter(|&(i, j)| {
                        matches!(&lines[j].formula, Formula::Implies(a, _) if **a == lines[i].formula)
                    })
                    .collect();
                if let Some(&(i, j)) = pairs.get(rng.gen_range(0..pairs.len().max(1))) {
                    let Formula::Implies(_, b) = &lines[j].formula else { unreachable!() };
                    let b = (**b).clone();
                    push(&mut lines, ProofLine::new(b, Justification::ModusPonens(i, j)));
                } else if !lines.is_empty() {
                    let i = rng.gen_range(0..lines.len());
                    let a = lines[i].formula.clone();
                    let b = small_formula(&mut rng, 1);
                    let k = Formula::implies(a.clone(), Formula::implies(b.clone(), a.clone()));
                    push(&mut lines, ProofLine::new(k, Justification::Classical));
                    let j = lines.len() - 1;
                    if lines[j].formula == Formula::implies(a.clone(), Formula::implies(b.clone(), a.clone())) {
                        push(&mut lines, ProofLine::new(Formula::implies(b, a), Justification::ModusPonens(i, j)));
                    }
                } else {
                    push(&mut lines, axiom_line(&mut rng, logic));
                }
            }
            _ => {
                let imps = implications(&lines);
                if imps.is_empty() {
                    let f = classical_instance(&mut rng, &lines);
                    push(&mut lines, ProofLine::new(f, Justification::Classical));
                    continue;
                }
                let i = imps[rng.gen_range(0..imps.len())];
                let j = imps[rng.gen_range(0..imps.len())];
                let (Formula::Implies(phi1, phi2), Formula::Implies(psi1, psi2)) = (&lines[i].formula, &lines[j].formula)
                else {
                    unreachable!()
                };
                let f = Formula::implies(
                    Formula::rhd((**phi2).clone(), (**psi1).clone()),
                    Formula::rhd((**phi1).clone(), (**psi2).clone()),
                );
                push(&mut lines, ProofLine::new(f, Justification::RuleM(i, j)));
            }
        }
    }
    if lines.is_empty() {
        lines.push(axiom_line(&mut rng, logic));
    }
    Proof {
        logic,
        hypotheses: Vec::new(),
        lines,
    }
}
