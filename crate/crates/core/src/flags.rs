//! Bookkeeping shared by both flag-counting arguments.

use serde::{Deserialize, Serialize};

use crate::euler::FVector;
use crate::exact::Rational;
use crate::polytope::VertexSet;
use crate::projection::Shadow;

/// Sum of the flags that landed in one bin, next to a list of expressions
/// the sum is claimed to equal, evaluated independently of the flags.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tally {
    pub label: String,
    pub flags: usize,
    pub sum: Rational,
    pub chain: Vec<Rational>,
}

impl Tally {
    pub fn consistent(&self) -> bool {
        self.chain.iter().all(|x| *x == self.sum)
    }
}

/// `½ Σ_{c < upto} (−1)^c n_c`.
pub fn half_alternating(counts: &[usize], upto: usize) -> Rational {
    counts
        .iter()
        .take(upto)
        .enumerate()
        .map(|(c, &n)| Rational::half_sign(c) * Rational::from(n))
        .sum()
}

/// Number of flags a face of dimension `dim` of a `k`-polytope keeps when
/// its flags are filtered through `shadow`: a facet always keeps one, a
/// smaller face keeps one unless it survives as a face of the shadow.
pub fn expected_flags(dim: usize, k: usize, shadow: &Shadow, face: &VertexSet) -> usize {
    if dim + 1 == k {
        1
    } else {
        usize::from(shadow.is_face_image(face) == Some(false))
    }
}

/// The two sides of the identity both arguments establish for a
/// `d`-polytope, `k = d − 1`: `Σ_{c<k} (−1)^c f^c` and `1 + (−1)^k (1 − f^k)`.
pub fn identity_sides(f: &FVector) -> (Rational, Rational) {
    let k = f.dim() - 1;
    let lhs = Rational::from(f.partial_alternating_sum(k));
    let rhs = Rational::one() + Rational::sign_power(k) * (Rational::one() - Rational::from(f.get(k)));
    (lhs, rhs)
}
