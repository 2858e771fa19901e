//! Exact-arithmetic toolkit for binary preference relations on finite sets:
//! interval orders and biorders, their traces, their representation by pairs
//! of functions, and continuity of those representations over finite
//! topological spaces.
//!
//! All numeric values are exact rationals ([`num::BigRational`]); no floating
//! point enters any decision path. Relations and open sets are stored as
//! packed bit rows, which keeps the exhaustive small-instance audits cheap.

pub mod audits;
pub mod biorders;
pub mod bits;
pub mod constraints;
pub mod demo;
pub mod enumerate;
pub mod error;
pub mod formats;
pub mod ratio;
pub mod relations;
pub mod repcore;
pub mod scales;
pub mod topology;

pub use error::{Error, Result};
pub use relations::{AxiomReport, FerrersWitness, FiniteRelation};
pub use topology::{Direction, FiniteTopology, Side};
