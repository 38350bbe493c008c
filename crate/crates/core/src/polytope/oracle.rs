//! Brute-force face enumeration used as an independent check on
//! [`face_lattice`](super::face_lattice). It never looks at the facet list.
//!
//! A vertex subset `S` is a face iff some hyperplane contains `S` and has
//! every other vertex strictly on one side. Writing the hyperplane normals
//! that annihilate the directions of `aff(S)` as `W`, this asks for `y` with
//! `y·Wᵀ(v − s₀) < 0` for every `v ∉ S`, which by Gordan's alternative holds
//! iff the origin is not in the convex hull of the vectors `Wᵀ(v − s₀)`.

use super::{Face, FaceLattice, Polytope, VertexSet};
use crate::error::{Error, Result};
use crate::exact::{affine_dimension, lp, null_space, Vector};
use crate::par::Strategy;

pub const DEFAULT_ORACLE_BOUND: usize = 12;

pub fn brute_force_face_lattice(p: &Polytope) -> Result<FaceLattice> {
    brute_force_face_lattice_with(p, DEFAULT_ORACLE_BOUND, Strategy::default())
}

pub fn brute_force_face_lattice_with(
    p: &Polytope,
    bound: usize,
    strategy: Strategy,
) -> Result<FaceLattice> {
    let n = p.vertex_count();
    if n > bound {
        return Err(Error::OracleBoundExceeded { vertices: n, bound });
    }
    let d = p.dim();
    let proper = (1usize << n) - 1;
    let hits = strategy.map_range(1..proper, |mask| {
        let set: VertexSet = (0..n).filter(|i| mask & (1 << i) != 0).collect();
        is_face(p, &set).then(|| Face {
            dim: affine_dimension(p.points_of(&set)),
            vertices: set,
        })
    });
    let full = Face {
        vertices: p.all_vertices(),
        dim: d,
    };
    Ok(FaceLattice::from_faces(d, hits.into_iter().flatten().chain([full])))
}

fn is_face(p: &Polytope, set: &VertexSet) -> bool {
    let members: Vec<&Vector> = p.points_of(set).collect();
    let base = members[0];
    let diffs: Vec<Vector> = members[1..].iter().map(|&x| x - base).collect();
    let normals = null_space(&diffs, p.dim());
    let projected: Vec<Vector> = (0..p.vertex_count())
        .filter(|i| !set.contains(*i))
        .map(|i| {
            let offset = p.vertex(i) - base;
            Vector::new(normals.iter().map(|w| w.dot(&offset)).collect())
        })
        .collect();
    if projected.iter().any(Vector::is_zero) {
        return false;
    }
    !lp::origin_in_convex_hull(&projected)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::{generate, Family};

    #[test]
    fn triangle_and_square() {
        let tri = generate(&Family::Simplex(2), 0).unwrap();
        assert_eq!(brute_force_face_lattice(&tri).unwrap().counts(), vec![3, 3, 1]);
        let sq = generate(&Family::Hypercube(2), 0).unwrap();
        assert_eq!(brute_force_face_lattice(&sq).unwrap().counts(), vec![4, 4, 1]);
    }

    #[test]
    fn cube_matches_facet_closure() {
        let cube = generate(&Family::Hypercube(3), 0).unwrap();
        let oracle = brute_force_face_lattice(&cube).unwrap();
        assert_eq!(oracle.families(), cube.lattice().families());
        assert_eq!(oracle, *cube.lattice());
    }

    #[test]
    fn bound_enforced() {
        let tess = generate(&Family::Hypercube(4), 0).unwrap();
        assert_eq!(
            brute_force_face_lattice(&tess).unwrap_err(),
            Error::OracleBoundExceeded { vertices: 16, bound: 12 }
        );
    }

    #[test]
    fn strategies_agree() {
        let oct = generate(&Family::CrossPolytope(3), 0).unwrap();
        let a = brute_force_face_lattice_with(&oct, 12, Strategy::Sequential).unwrap();
        let b = brute_force_face_lattice_with(&oct, 12, Strategy::Parallel).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.counts(), vec![6, 12, 8, 1]);
    }
}
