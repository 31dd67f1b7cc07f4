//! Engine for computing with infinite sequences through finite prefixes.
//!
//! Everything here works on Baire space: points are streams of naturals,
//! functions are monotone prefix-to-prefix maps evaluated under explicit
//! fuel budgets, and non-computable operations (choice, limits, cluster
//! points) are exercised end to end against test-only ground truth.
//!
//! Module map:
//! * [`kernel`] — streams, pairings, prefix transformers, limit machines.
//! * [`spaces`] — computable metric spaces with exact rational distances,
//!   the Cauchy representation and representation combinators.
//! * [`hyperspaces`] — closed and compact set codings and their algorithms.
//! * [`problems`] — registry of multi-valued problems with generators,
//!   verifiers and payload-consulting oracle realizers.
//! * [`reductions`] — first-class reduction witnesses, the realizer
//!   equation harness, witness algebra and adversary games.

#![forbid(unsafe_code)]

pub mod config;
pub mod hyperspaces;
pub mod kernel;
pub mod problems;
pub mod reductions;
pub mod spaces;

pub use config::EvalConfig;
pub use kernel::{Budget, Prefix, PrefixTransformer, Stream, Sym};
pub use spaces::Rat;
