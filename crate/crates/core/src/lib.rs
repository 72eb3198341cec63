//! Decision procedures for the modal logics of nondeterministic and
//! deterministic partial recursive functions.
//!
//! The language extends classical propositional logic with a binary modality
//! `φ |> ψ`, read as "the codes of partial recursive functions that map φ into
//! ψ". This crate provides:
//!
//! * [`formula`]: syntax, parsing, printing, the `∼` operation and the
//!   subformula closure used by the decision procedure;
//! * [`kripke`]: finite Kripke models over a ternary computability relation
//!   and the forcing relation;
//! * [`decide`]: validity checking by Hintikka-type elimination with verified
//!   countermodel extraction, plus an exhaustive small-model oracle;
//! * [`hilbert`]: a checker for Hilbert-style proofs in both logics;
//! * [`recfun`]: a small quoting language with nondeterministic evaluation,
//!   a constructive n-ary recursion theorem, and the realization of Kripke
//!   countermodels as program codes.
//!
//! The crate is `no_std` and only needs `alloc`. File formats and the
//! command-line driver live in the `recmodal` crate.
#![no_std]

extern crate alloc;

pub mod decide;
pub mod formula;
pub mod hilbert;
pub mod kripke;
pub mod recfun;

pub use decide::{decide, LogicMode, Verdict};
pub use formula::{ClosureSet, Formula};
pub use kripke::KripkeModel;
