//! Exact computation of E_n-homology and E_n-cohomology of commutative
//! differential graded algebras through twisted iterated bar complexes.

pub mod algdata;
pub mod barcplx;
pub mod coeff;
pub mod homcalc;
pub mod operadlab;
pub mod oracles;
pub mod treecomb;
pub mod twist;
pub mod error;

pub use error::{Error, Result};
