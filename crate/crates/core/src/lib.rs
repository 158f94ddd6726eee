//! Exact algorithms for blow-ups of weighted projective planes at a general point:
//! Rees multiplicities, orthogonal-pair search, explicit Cox ring presentations,
//! Gröbner-based generator verification and lattice reductions for `M_{0,n}`.

pub mod coxring;
pub mod error;
pub mod groebner;
pub mod linalg;
pub mod m0n;
pub mod mult;
pub mod orthpair;
pub mod verifygens;
pub mod poly;
pub mod weights;

pub use error::{Error, Result};
pub use poly::{divides, Monomial, MonomialOrder, Ring, SparsePoly, WeightedDegree};
pub use weights::{ClassElement, ExponentVector, WeightTriple};
