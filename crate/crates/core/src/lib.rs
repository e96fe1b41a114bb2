//! Exact computations with powers of monomial ideals: colon ideals, associated
//! primes, depth functions, linear relation graphs and analytic spread.

pub mod corpus;
pub mod error;
pub mod graph;
pub mod homology;
pub mod linalg;
pub mod monomial;
pub mod parse;
pub mod persistence;
pub mod polymatroid;
pub mod primes;
pub mod relation_graph;
pub mod report;
pub mod staircase;

pub use error::{Error, Result};
pub use linalg::FieldChoice;
pub use monomial::{Monomial, MonomialIdeal};
