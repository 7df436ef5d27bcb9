//! Catalan's equation `X^m - Y^n = 1` over global function fields.
//!
//! The crate computes the class numbers that decide whether the
//! class-number criterion for nonexistence of non-constant solutions applies
//! to a concrete function field, and checks the conclusion by exhaustive
//! search in the ring of functions regular away from the place at infinity.
//!
//! Function fields are given by superelliptic models `y^e = f(x)` over a
//! finite field `κ` (see [`ffield::CurveModel`]), with `e = 1` standing for
//! the rational function field `κ(x)`.

mod arith;
pub mod catalan;
pub mod error;
pub mod ffield;
pub mod gf;
pub mod par;
pub mod poly;
pub mod spec;
mod syntax;
pub mod zeta;

pub use catalan::{
    check_theorem, counterexample, search, verify_lemma2, SearchConfig, SearchReport, Solution,
    Status, TheoremVerdict,
};
pub use error::{Error, Result};
pub use ffield::{CurveModel, RingElement};
pub use gf::{make_field, Elem, Embedding, FieldElement, FieldRef, PrimePowerField};
pub use par::Parallelism;
pub use poly::{poly_mth_roots, Polynomial};
pub use spec::CurveSpec;
pub use zeta::LPolynomial;

/// Default cap on enumerated candidates and on extension-field sizes.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// Environment variable overriding [`DEFAULT_BUDGET`].
pub const BUDGET_ENV: &str = "CATALAN_BUDGET";

/// The budget in effect: `CATALAN_BUDGET` if set and parseable, else the default.
pub fn budget_from_env() -> u64 {
    std::env::var(BUDGET_ENV)
        .ok()
        .and_then(|v| v.trim().replace('_', "").parse().ok())
        .unwrap_or(DEFAULT_BUDGET)
}
