//! Cross-module properties: forcing, decision, proofs and realization
//! checked against each other on generated inputs.

use recmodal_core::decide::{brute_force_oracle, decide, LogicMode, OracleVerdict, Verdict};
use recmodal_core::formula::{enumerate, parse, sample, Formula};
use recmodal_core::hilbert::{check_proof, lemma_one, lemma_two, random_proof, Justification, Logic, Proof};
use recmodal_core::kripke::{random_model, ForcingTable, KripkeModel};

/// Forcing straight from the definition, without any table.
fn naive_forces(m: &KripkeModel, w: usize, phi: &Formula) -> bool {
    match phi {
        Formula::Var(v) => m.holds_var(v, w),
        Formula::Bottom => false,
        Formula::Implies(a, b) => !naive_forces(m, w, a) || naive_forces(m, w, b),
        Formula::Rhd(a, b) => (0..m.len()).all(|u| {
            let image = m.image(w, u);
            !naive_forces(m, u, a) || image.is_empty() || image.iter().any(|&v| naive_forces(m, v, b))
        }),
    }
}

/// The deterministic reading: every image of a source forcing `a` forces `b`.
fn universal_forces(m: &KripkeModel, w: usize, phi: &Formula) -> bool {
    match phi {
        Formula::Var(v) => m.holds_var(v, w),
        Formula::Bottom => false,
        Formula::Implies(a, b) => !universal_forces(m, w, a) || universal_forces(m, w, b),
        Formula::Rhd(a, b) => (0..m.len()).all(|u| {
            !universal_forces(m, u, a) || m.image(w, u).iter().all(|&v| universal_forces(m, v, b))
        }),
    }
}

fn corpus() -> Vec<Formula> {
    sample(&["p", "q"], 2, 150, 42)
}

#[test]
fn forcing_table_matches_the_definition() {
    for seed in 0..20 {
        let m = random_model(4, 0.3, &["p", "q"], seed, seed % 2 == 0);
        for phi in corpus().iter().take(60) {
            let table = ForcingTable::new(&m, phi);
            for sub in phi.subformulas() {
                for w in 0..m.len() {
                    assert_eq!(table.get(w, &sub), Some(naive_forces(&m, w, &sub)), "{sub} at {w}");
                }
            }
        }
    }
}

#[test]
fn deterministic_models_read_rhd_universally() {
    for seed in 0..20 {
        let m = random_model(4, 0.4, &["p", "q"], seed, true);
        assert!(m.is_deterministic());
        for phi in corpus() {
            for w in 0..m.len() {
                assert_eq!(m.forces(w, &phi), universal_forces(&m, w, &phi), "{phi}");
            }
        }
    }
}

#[test]
fn rhd_is_monotone_like_rule_m() {
    let atoms = enumerate(&["p", "q"], 1);
    for seed in 0..4 {
        let m = random_model(3, 0.4, &["p", "q"], seed, false);
        let truth: Vec<Vec<bool>> = atoms
            .iter()
            .map(|a| (0..m.len()).map(|w| m.forces(w, a)).collect())
            .collect();
        let rhd: Vec<Vec<Vec<bool>>> = atoms
            .iter()
            .map(|a| {
                atoms
                    .iter()
                    .map(|b| (0..m.len()).map(|w| m.forces(w, &Formula::rhd(a.clone(), b.clone()))).collect())
                    .collect()
            })
            .collect();
        let implies = |a: usize, b: usize| (0..m.len()).all(|u| !truth[a][u] || truth[b][u]);
        let k = atoms.len();
        for phi1 in 0..k {
            for phi2 in (0..k).filter(|&phi2| implies(phi1, phi2)) {
                for psi1 in 0..k {
                    for psi2 in (0..k).filter(|&psi2| implies(psi1, psi2)) {
                        for w in 0..m.len() {
                            assert!(!rhd[phi2][psi1][w] || rhd[phi1][psi2][w]);
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn axiom_instances_hold_in_random_models() {
    let parts = enumerate(&["p", "q"], 1);
    let a1 = |phi: &Formula, psi: &Formula, chi: &Formula| {
        Formula::implies(
            Formula::rhd(phi.clone(), psi.clone()),
            Formula::implies(
                Formula::rhd(chi.clone(), psi.clone()),
                Formula::rhd(Formula::or(phi.clone(), chi.clone()), psi.clone()),
            ),
        )
    };
    let a4 = |phi: &Formula, psi: &Formula, chi: &Formula| {
        Formula::implies(
            Formula::rhd(phi.clone(), psi.clone()),
            Formula::implies(
                Formula::rhd(phi.clone(), chi.clone()),
                Formula::rhd(phi.clone(), Formula::and(psi.clone(), chi.clone())),
            ),
        )
    };
    for seed in 0..6 {
        let nondet = random_model(3, 0.4, &["p", "q"], seed, false);
        let det = random_model(3, 0.4, &["p", "q"], seed, true);
        for phi in parts.iter().step_by(3) {
            for psi in parts.iter().step_by(2) {
                for chi in parts.iter().step_by(5) {
                    assert!(nondet.valid(&a1(phi, psi, chi)));
                    assert!(det.valid(&a4(phi, psi, chi)));
                }
            }
        }
    }
}

#[test]
fn oracle_agrees_with_decide() {
    for phi in sample(&["p", "q"], 2, 60, 7) {
        for mode in [LogicMode::R, LogicMode::Rd] {
            let verdict = decide(&phi, mode).unwrap();
            let oracle = brute_force_oracle(&phi, mode, 2);
            if let OracleVerdict::Refuted { .. } = oracle {
                assert!(!verdict.is_valid(), "{phi} in {mode:?}");
            }
        }
    }
}

#[test]
fn refutations_carry_verified_countermodels_of_the_right_class() {
    for phi in corpus() {
        for mode in [LogicMode::R, LogicMode::Rd, LogicMode::RForall] {
            if let Verdict::Refuted { model, world } = decide(&phi, mode).unwrap() {
                assert!(!model.forces(world, &phi));
                assert!(!mode.is_deterministic() || model.is_deterministic());
            }
        }
    }
}

#[test]
fn rd_extends_r_and_rforall_matches_rd() {
    for phi in corpus() {
        let r = decide(&phi, LogicMode::R).unwrap().is_valid();
        let rd = decide(&phi, LogicMode::Rd).unwrap().is_valid();
        let rforall = decide(&phi, LogicMode::RForall).unwrap().is_valid();
        assert!(!r || rd, "{phi}");
        assert_eq!(rd, rforall, "{phi}");
    }
}

#[test]
fn proved_theorems_are_decided_valid() {
    for seed in 0..40 {
        for logic in [Logic::R, Logic::Rd] {
            let proof = random_proof(logic, seed, 10);
            assert!(check_proof(&proof).proves_theorem());
            let conclusion = proof.conclusion().unwrap();
            assert!(decide(conclusion, logic.mode()).unwrap().is_valid(), "{conclusion}");
        }
    }
}

#[test]
fn proofs_from_hypotheses_preserve_forcing() {
    let cases = [(lemma_one(), false), (lemma_two(Logic::Rd), true)];
    for (proof, deterministic) in cases {
        assert!(check_proof(&proof).is_ok());
        let conclusion = proof.conclusion().unwrap();
        for seed in 0..200 {
            let m = random_model(3, 0.4, &["a", "b", "c"], seed, deterministic);
            for w in 0..m.len() {
                if proof.hypotheses.iter().all(|h| m.forces(w, h)) {
                    assert!(m.forces(w, conclusion));
                }
            }
        }
    }
}

/// Moves line `from` to position `to`, renumbering references.
fn move_line(proof: &Proof, from: usize, to: usize) -> Proof {
    let n = proof.lines.len();
    let mut order: Vec<usize> = (0..n).filter(|&i| i != from).collect();
    order.insert(to, from);
    let new_index = |old: usize| order.iter().position(|&i| i == old).unwrap();
    let lines = order
        .iter()
        .map(|&old| {
            let mut line = proof.lines[old].clone();
            line.justification = match line.justification {
                Justification::ModusPonens(i, j) => Justification::ModusPonens(new_index(i), new_index(j)),
                Justification::RuleM(i, j) => Justification::RuleM(new_index(i), new_index(j)),
                other => other,
            };
            line
        })
        .collect();
    Proof {
        logic: proof.logic,
        hypotheses: proof.hypotheses.clone(),
        lines,
    }
}

#[test]
fn independent_lines_can_be_reordered() {
    // In the first lemma the two classical lines (5, 6) and the hypotheses
    // only feed later lines, so they can move to the front.
    let proof = lemma_one();
    for (from, to) in [(5, 0), (6, 0), (6, 5), (1, 0), (2, 0)] {
        let moved = move_line(&proof, from, to);
        assert!(check_proof(&moved).is_ok(), "{from} -> {to}");
        assert_eq!(moved.conclusion(), proof.conclusion());
    }
    // Moving a line before its premise is caught.
    assert!(!check_proof(&move_line(&proof, 8, 0)).is_ok());
}

#[test]
fn parse_examples_from_the_cli_surface() {
    assert!(decide(&parse("false |> p").unwrap(), LogicMode::R).unwrap().is_valid());
    assert!(!decide(&parse("(true |> p) |> p").unwrap(), LogicMode::Rd).unwrap().is_valid());
}
