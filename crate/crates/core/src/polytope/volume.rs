use super::{Polytope, VertexSet};
use crate::exact::{determinant, Rational, Vector};

/// Exact volume in intrinsic coordinates, from a pulling triangulation:
/// each face is coned from its smallest vertex over the subfaces that miss it.
pub fn volume(p: &Polytope) -> Rational {
    let d = p.dim();
    if d == 0 {
        return Rational::one();
    }
    let top = p.all_vertices();
    let mut total = Rational::zero();
    for simplex in triangulate(p, &top, d) {
        let apex = p.vertex(simplex[0]);
        let rows: Vec<Vector> = simplex[1..].iter().map(|&i| p.vertex(i) - apex).collect();
        total += determinant(&rows).abs();
    }
    total * factorial(d).recip()
}

fn factorial(n: usize) -> Rational {
    (1..=n).map(Rational::from).fold(Rational::one(), |a, b| a * b)
}

fn triangulate(p: &Polytope, face: &VertexSet, dim: usize) -> Vec<Vec<usize>> {
    let apex = face.iter().next().expect("nonempty face");
    if dim == 0 {
        return vec![vec![apex]];
    }
    let lattice = p.lattice();
    lattice
        .faces(dim - 1)
        .iter()
        .filter(|g| g.vertices.is_subset(face) && !g.vertices.contains(apex))
        .flat_map(|g| triangulate(p, &g.vertices, dim - 1))
        .map(|mut s| {
            s.insert(0, apex);
            s
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::{build_polytope, generate, Family};

    #[test]
    fn known_volumes() {
        assert_eq!(volume(&generate(&Family::Hypercube(3), 0).unwrap()), Rational::one());
        assert_eq!(
            volume(&generate(&Family::Simplex(3), 0).unwrap()),
            Rational::new(1, 6)
        );
        assert_eq!(
            volume(&generate(&Family::CrossPolytope(3), 0).unwrap()),
            Rational::new(4, 3)
        );
        let tri = build_polytope(&[
            Vector::from_ints(&[0, 0]),
            Vector::from_ints(&[4, 0]),
            Vector::from_ints(&[0, 3]),
        ])
        .unwrap();
        assert_eq!(volume(&tri), Rational::from_int(6));
    }
}
