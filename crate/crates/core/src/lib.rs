//! Exact computational kernel for (left and right) Leibniz algebras given by
//! structure constants over Q and GF(p).

pub mod algebra;
pub mod chains;
pub mod claims;
pub mod corpus;
pub mod error;
pub mod exactla;
pub mod lazy;
pub mod primes;
pub mod series;
pub mod simple;

pub use algebra::{build_algebra, direct_sum, BracketEntry, Convention, LeibnizAlgebra};
pub use error::{Error, Result};
pub use exactla::{Field, Scalar, Subspace};
pub use primes::{enumerate_ideals, EnumerationGuard, IdealLattice};
