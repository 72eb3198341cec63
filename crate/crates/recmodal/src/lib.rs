//! File formats and the command-line driver for `recmodal-core`.
//!
//! * [`files`]: JSON formats for models, proofs and realization bundles;
//! * [`corpus`]: the agreement check between the decision procedure, Kripke
//!   models and realized program codes;
//! * [`cli`]: the `recmodal` command.

pub mod cli;
pub mod corpus;
pub mod files;
