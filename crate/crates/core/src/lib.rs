//! Exact polyhedral kernel: convex hulls and face lattices over the
//! rationals, the Euler–Poincaré relation, Schlegel diagrams and
//! projections, and two flag double-counting arguments executed and checked
//! on concrete polytopes.

pub mod conformance;
pub mod error;
pub mod euler;
pub mod exact;
pub mod flags;
pub mod folded_proof;
pub mod par;
pub mod polytope;
pub mod projection;
pub mod schlegel_proof;
pub mod svg;

pub use error::{Error, Result};
pub use exact::{Hyperplane, Rational, Vector};
pub use par::Strategy;
pub use polytope::{build_polytope, Polytope};
