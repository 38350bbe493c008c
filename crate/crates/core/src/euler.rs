//! f-vectors and the Euler–Poincaré relation.

use serde::{Deserialize, Serialize};

use crate::polytope::{FaceLattice, Polytope};

/// Face counts `f^0, …, f^d`; the last entry counts the polytope itself.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FVector(Vec<usize>);

impl FVector {
    pub fn new(counts: Vec<usize>) -> Self {
        FVector(counts)
    }

    pub fn counts(&self) -> &[usize] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    pub fn get(&self, c: usize) -> usize {
        self.0.get(c).copied().unwrap_or(0)
    }

    /// `Σ_{c < upto} (−1)^c f^c`.
    pub fn partial_alternating_sum(&self, upto: usize) -> i64 {
        self.0[..upto.min(self.0.len())]
            .iter()
            .enumerate()
            .map(|(c, &n)| if c % 2 == 0 { n as i64 } else { -(n as i64) })
            .sum()
    }
}

impl std::fmt::Display for FVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (i, n) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{n}")?;
        }
        write!(f, ")")
    }
}

pub fn f_vector(lattice: &FaceLattice) -> FVector {
    FVector(lattice.counts())
}

/// `Σ_{c=0}^{d} (−1)^c f^c`, the top face included.
pub fn euler_alternating_sum(f: &FVector) -> i64 {
    f.partial_alternating_sum(f.0.len())
}

pub fn check_euler(p: &Polytope) -> bool {
    euler_alternating_sum(&f_vector(p.lattice())) == 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Vector;
    use crate::polytope::{build_polytope, generate, Family};

    #[test]
    fn alternating_sums() {
        assert_eq!(euler_alternating_sum(&FVector::new(vec![2, 1])), 1);
        assert_eq!(euler_alternating_sum(&FVector::new(vec![8, 12, 6, 1])), 1);
        assert_eq!(euler_alternating_sum(&FVector::new(vec![16, 32, 24, 8, 1])), 1);
    }

    #[test]
    fn f_vectors() {
        let seg = generate(&Family::Hypercube(1), 0).unwrap();
        assert_eq!(f_vector(seg.lattice()).counts(), &[2, 1]);
        let pentagon = build_polytope(&[
            Vector::from_ints(&[2, 0]),
            Vector::from_ints(&[1, 2]),
            Vector::from_ints(&[-1, 2]),
            Vector::from_ints(&[-2, 0]),
            Vector::from_ints(&[0, -2]),
        ])
        .unwrap();
        assert_eq!(f_vector(pentagon.lattice()).counts(), &[5, 5, 1]);
        let tess = generate(&Family::Hypercube(4), 0).unwrap();
        assert_eq!(f_vector(tess.lattice()).counts(), &[16, 32, 24, 8, 1]);
    }

    #[test]
    fn euler_holds() {
        assert!(check_euler(&generate(&Family::Simplex(6), 0).unwrap()));
        assert!(check_euler(&generate(&Family::CrossPolytope(5), 0).unwrap()));
        assert!(check_euler(&generate(&Family::Hypercube(1), 0).unwrap()));
    }
}
