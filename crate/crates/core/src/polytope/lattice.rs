use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use super::{Polytope, VertexSet};
use crate::exact::affine_dimension;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Face {
    pub vertices: VertexSet,
    pub dim: usize,
}

/// All nonempty faces, grouped by dimension and sorted by vertex set, with
/// the covering relation between consecutive dimensions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceLattice {
    by_dim: Vec<Vec<Face>>,
    /// `up[c][i]` lists the `(c+1)`-faces containing face `i` of dimension `c`.
    up: Vec<Vec<Vec<usize>>>,
}

impl FaceLattice {
    /// Groups, sorts and links `faces`; `dim` is the polytope dimension.
    pub fn from_faces(dim: usize, faces: impl IntoIterator<Item = Face>) -> FaceLattice {
        let mut by_dim: Vec<Vec<Face>> = vec![Vec::new(); dim + 1];
        for f in faces {
            by_dim[f.dim].push(f);
        }
        for level in &mut by_dim {
            level.sort();
            level.dedup();
        }
        let up = (0..dim)
            .map(|c| {
                by_dim[c]
                    .iter()
                    .map(|low| {
                        by_dim[c + 1]
                            .iter()
                            .enumerate()
                            .filter(|(_, high)| low.vertices.is_subset(&high.vertices))
                            .map(|(j, _)| j)
                            .collect()
                    })
                    .collect()
            })
            .collect();
        FaceLattice { by_dim, up }
    }

    pub fn dim(&self) -> usize {
        self.by_dim.len() - 1
    }

    pub fn faces(&self, c: usize) -> &[Face] {
        &self.by_dim[c]
    }

    pub fn iter(&self) -> impl Iterator<Item = &Face> {
        self.by_dim.iter().flatten()
    }

    pub fn counts(&self) -> Vec<usize> {
        self.by_dim.iter().map(Vec::len).collect()
    }

    /// Indices of the `(c+1)`-faces covering face `i` of dimension `c`.
    pub fn cofaces(&self, c: usize, i: usize) -> &[usize] {
        &self.up[c][i]
    }

    /// The `(c−1)`-faces of face `i` of dimension `c`.
    pub fn subfaces(&self, c: usize, i: usize) -> Vec<usize> {
        if c == 0 {
            return Vec::new();
        }
        (0..self.by_dim[c - 1].len())
            .filter(|&j| self.up[c - 1][j].contains(&i))
            .collect()
    }

    pub fn index_of(&self, vertices: &VertexSet) -> Option<(usize, usize)> {
        self.by_dim.iter().enumerate().find_map(|(c, level)| {
            level
                .binary_search_by(|f| f.vertices.cmp(vertices))
                .ok()
                .map(|i| (c, i))
        })
    }

    /// Faces whose vertex sets lie inside `within`.
    pub fn faces_within<'a>(&'a self, within: &'a VertexSet) -> impl Iterator<Item = &'a Face> {
        self.iter().filter(move |f| f.vertices.is_subset(within))
    }

    /// Per-dimension families of vertex sets, for comparing lattices.
    pub fn families(&self) -> Vec<Vec<VertexSet>> {
        self.by_dim
            .iter()
            .map(|level| level.iter().map(|f| f.vertices.clone()).collect())
            .collect()
    }

    /// Checks that every interval `G ⊂ H` with `dim H = dim G + 2` contains
    /// exactly two faces strictly between, returning the first offender.
    pub fn diamond_violation(&self) -> Option<(Face, Face, usize)> {
        for c in 0..self.dim().saturating_sub(1) {
            for (gi, g) in self.by_dim[c].iter().enumerate() {
                for h in &self.by_dim[c + 2] {
                    if !g.vertices.is_subset(&h.vertices) {
                        continue;
                    }
                    let between = self.up[c][gi]
                        .iter()
                        .filter(|&&m| self.by_dim[c + 1][m].vertices.is_subset(&h.vertices))
                        .count();
                    if between != 2 {
                        return Some((g.clone(), h.clone(), between));
                    }
                }
            }
        }
        None
    }
}

/// All faces of `p`: nonempty intersections of facet vertex sets plus the
/// polytope itself, with dimensions from their affine hulls.
pub fn face_lattice(p: &Polytope) -> FaceLattice {
    let d = p.dim();
    let full = Face {
        vertices: p.all_vertices(),
        dim: d,
    };
    if d == 0 {
        return FaceLattice::from_faces(0, [full]);
    }
    let facets: Vec<&VertexSet> = p.facets().iter().map(|f| &f.vertices).collect();
    let mut seen: HashSet<VertexSet> = facets.iter().map(|v| (*v).clone()).collect();
    let mut queue: Vec<VertexSet> = seen.iter().cloned().collect();
    while let Some(set) = queue.pop() {
        for f in &facets {
            let meet = set.intersection(f);
            if !meet.is_empty() && !seen.contains(&meet) {
                seen.insert(meet.clone());
                queue.push(meet);
            }
        }
    }
    let faces = seen.into_iter().map(|vertices| Face {
        dim: affine_dimension(p.points_of(&vertices)),
        vertices,
    });
    FaceLattice::from_faces(d, faces.chain([full]))
}

#[cfg(test)]
mod tests {
    use crate::polytope::{generate, Family};

    #[test]
    fn cube_counts() {
        let p = generate(&Family::Hypercube(3), 0).unwrap();
        assert_eq!(p.lattice().counts(), vec![8, 12, 6, 1]);
        assert!(p.lattice().diamond_violation().is_none());
    }

    #[test]
    fn simplex4_counts() {
        let p = generate(&Family::Simplex(4), 0).unwrap();
        assert_eq!(p.lattice().counts(), vec![5, 10, 10, 5, 1]);
    }

    #[test]
    fn segment_counts() {
        let p = generate(&Family::Hypercube(1), 0).unwrap();
        assert_eq!(p.lattice().counts(), vec![2, 1]);
    }

    #[test]
    fn covering_relation() {
        let p = generate(&Family::Hypercube(3), 0).unwrap();
        let lat = p.lattice();
        // every vertex of the cube lies on 3 edges, every edge on 2 squares
        for i in 0..8 {
            assert_eq!(lat.cofaces(0, i).len(), 3);
        }
        for i in 0..12 {
            assert_eq!(lat.cofaces(1, i).len(), 2);
            assert_eq!(lat.subfaces(1, i).len(), 2);
        }
        let top = &lat.faces(3)[0];
        assert_eq!(lat.index_of(&top.vertices), Some((3, 0)));
    }
}
