//! Generic filters over preorders of finite conditions.
//!
//! The [`engine`] builds a decreasing chain of conditions that meets a
//! countable family of dense sets one at a time; the upward closure of that
//! chain is a generic filter. The remaining modules instantiate the engine
//! with posets of finite partial isomorphisms:
//!
//! - [`dlo`]: countable dense linear orders without endpoints,
//! - [`boolean`]: countable atomless Boolean algebras,
//! - [`graphs`]: countable graphs with the extension property.
//!
//! Every construction is deterministic. Dense sets are refinement oracles
//! with fixed tie-breaking, so two runs with the same inputs produce the same
//! chain.

pub mod boolean;
pub mod dlo;
pub mod engine;
pub mod fraction;
pub mod graphs;
pub mod partialiso;
pub mod report;
pub mod token;

pub use engine::{DenseFamily, DenseSet, EngineError, GenericBuilder, Preorder};
pub use fraction::Fraction;
pub use partialiso::{CountableCarrier, FinitePartialFunction};
pub use report::{Check, Report};
pub use token::{Token, TokenError};

/// Error type returned by refinement oracles and witness functions.
pub type BoxError = Box<dyn std::error::Error + Send + Sync + 'static>;
