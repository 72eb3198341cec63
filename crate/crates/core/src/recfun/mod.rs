//! A small quoting language, a constructive recursion theorem, and the
//! realization of Kripke models as program codes.
//!
//! Data, inputs, outputs and codes are all s-expressions ([`Sexp`]); a code
//! denotes the possibly nondeterministic partial function computed by
//! running it with [`eval_program`]. The forms are described in [`prog`].

mod eval;
mod kleene;
pub mod prog;
mod realize;
mod sexp;

pub use eval::{eval_program, EvalError, EvalMode, EvalResult, DEFAULT_BUDGET, MAX_BRANCHES};
pub use kleene::{
    check_extensional, constant_of, double_application, fixed_points, generator, random_inputs, ExtensionalCheck,
    FixedPointError, FixedPoints, Template, Transformer,
};
pub use realize::{
    inspect_shapes, lookup_template, lookup_transformers, membership, realize, realize_deterministic,
    verify_realization, BehaviorTable, LookupTables, MembershipError, Reading, RealizationBundle, RealizationReport,
    RealizeError, ShapeError,
};
pub use sexp::{parse_sexp, Sexp, SexpError};
