//! Convex polytopes given by vertices, their facets and face lattices.

mod generate;
mod hull;
mod lattice;
mod oracle;
mod vertex_set;
mod volume;

use std::sync::OnceLock;

pub use generate::{family_points, generate, Family, RANDOM_RETRIES};
pub use lattice::{face_lattice, Face, FaceLattice};
pub use oracle::{brute_force_face_lattice, brute_force_face_lattice_with, DEFAULT_ORACLE_BOUND};
pub use vertex_set::VertexSet;
pub use volume::volume;

use crate::error::{Error, Result};
use crate::exact::{affine_hull, AffineSubspace, Hyperplane, Vector};

/// A facet inequality `normal·x ≤ offset` (in intrinsic coordinates) and
/// the vertices it supports.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Facet {
    pub plane: Hyperplane,
    pub vertices: VertexSet,
}

/// Convex hull of finitely many rational points.
///
/// Vertices are kept in two coordinate systems: the original embedding and
/// the intrinsic frame of the affine hull (a coordinate projection, see
/// [`AffineSubspace`]), in which the polytope is full-dimensional. All facet
/// inequalities live in the intrinsic frame.
#[derive(Clone, Debug)]
pub struct Polytope {
    frame: AffineSubspace,
    ambient_vertices: Vec<Vector>,
    vertices: Vec<Vector>,
    source: Vec<usize>,
    facets: Vec<Facet>,
    lattice: OnceLock<FaceLattice>,
}

/// Builds the polytope spanned by `points`, discarding non-extreme points.
pub fn build_polytope(points: &[Vector]) -> Result<Polytope> {
    let poly = Polytope::hull(points)?;
    if poly.vertex_count() < 2 {
        return Err(Error::DegenerateInput);
    }
    Ok(poly)
}

impl Polytope {
    /// Like [`build_polytope`] but also accepts a single point, giving a
    /// 0-dimensional polytope. Shadows of segments are of this kind.
    pub fn hull(points: &[Vector]) -> Result<Polytope> {
        let frame = affine_hull(points)?;
        let mut distinct: Vec<usize> = Vec::new();
        for (i, p) in points.iter().enumerate() {
            if !distinct.iter().any(|&j| points[j] == *p) {
                distinct.push(i);
            }
        }
        let local: Vec<Vector> = distinct
            .iter()
            .map(|&i| points[i].select(frame.pivots()))
            .collect();

        if frame.dimension() == 0 {
            return Ok(Polytope {
                ambient_vertices: vec![points[distinct[0]].clone()],
                vertices: vec![Vector::zeros(0)],
                source: vec![distinct[0]],
                facets: Vec::new(),
                frame,
                lattice: OnceLock::new(),
            });
        }

        let (raw_facets, kept) = hull::hull(&local);
        let mut renumber = vec![usize::MAX; local.len()];
        for (new, &old) in kept.iter().enumerate() {
            renumber[old] = new;
        }
        let facets = raw_facets
            .into_iter()
            .map(|f| Facet {
                plane: f.plane,
                vertices: f.members.map(|i| renumber[i]),
            })
            .collect();
        Ok(Polytope {
            ambient_vertices: kept.iter().map(|&i| points[distinct[i]].clone()).collect(),
            vertices: kept.iter().map(|&i| local[i].clone()).collect(),
            source: kept.iter().map(|&i| distinct[i]).collect(),
            facets,
            frame,
            lattice: OnceLock::new(),
        })
    }

    pub fn dim(&self) -> usize {
        self.frame.dimension()
    }

    pub fn ambient_dim(&self) -> usize {
        self.frame.ambient_dimension()
    }

    pub fn frame(&self) -> &AffineSubspace {
        &self.frame
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    /// Vertices in intrinsic coordinates.
    pub fn vertices(&self) -> &[Vector] {
        &self.vertices
    }

    pub fn vertex(&self, i: usize) -> &Vector {
        &self.vertices[i]
    }

    /// Vertices in the coordinates they were given in.
    pub fn ambient_vertices(&self) -> &[Vector] {
        &self.ambient_vertices
    }

    /// For each vertex, its index in the point list passed to the
    /// constructor.
    pub fn source_indices(&self) -> &[usize] {
        &self.source
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    pub fn facet(&self, index: usize) -> Result<&Facet> {
        self.facets.get(index).ok_or(Error::FacetIndex {
            index,
            count: self.facets.len(),
        })
    }

    pub fn all_vertices(&self) -> VertexSet {
        VertexSet::full(self.vertex_count())
    }

    /// The face lattice, computed on first use.
    pub fn lattice(&self) -> &FaceLattice {
        self.lattice.get_or_init(|| face_lattice(self))
    }

    pub fn points_of<'a>(&'a self, set: &'a VertexSet) -> impl Iterator<Item = &'a Vector> + 'a {
        set.iter().map(move |i| &self.vertices[i])
    }

    pub fn barycenter(&self, set: &VertexSet) -> Vector {
        Vector::barycenter(self.points_of(set))
    }

    /// Membership test for a point in intrinsic coordinates.
    pub fn contains(&self, x: &Vector) -> bool {
        if self.dim() == 0 {
            return x == &self.vertices[0];
        }
        self.facets.iter().all(|f| !f.plane.eval(x).is_positive())
    }

    /// Indices of facets whose hyperplane passes through `x`.
    pub fn active_facets(&self, x: &Vector) -> Vec<usize> {
        self.facets
            .iter()
            .enumerate()
            .filter(|(_, f)| f.plane.contains(x))
            .map(|(i, _)| i)
            .collect()
    }

    /// Whether `x + εu` stays in the polytope for small `ε > 0`, read off the
    /// facet inequalities active at `x` (intrinsic coordinates).
    pub fn tangent_cone_contains(&self, x: &Vector, u: &Vector) -> bool {
        self.contains(x)
            && self
                .facets
                .iter()
                .filter(|f| f.plane.contains(x))
                .all(|f| !f.plane.normal().dot(u).is_positive())
    }

    /// Rebuilds from the ambient vertex list.
    pub fn rebuild(&self) -> Result<Polytope> {
        build_polytope(&self.ambient_vertices)
    }

    /// Checks the structural invariants: every vertex satisfies every facet
    /// inequality, each facet spans a hyperplane, no vertex lies in the hull
    /// of the others. Returns a description of the first violation.
    pub fn validate(&self) -> std::result::Result<(), String> {
        let d = self.dim();
        for (fi, f) in self.facets.iter().enumerate() {
            for (vi, v) in self.vertices.iter().enumerate() {
                let val = f.plane.eval(v);
                if val.is_positive() {
                    return Err(format!("vertex {vi} violates facet {fi}"));
                }
                if val.is_zero() != f.vertices.contains(vi) {
                    return Err(format!("facet {fi} vertex set inconsistent at {vi}"));
                }
            }
            let span = crate::exact::affine_dimension(self.points_of(&f.vertices));
            if span + 1 != d {
                return Err(format!("facet {fi} spans dimension {span}, expected {}", d - 1));
            }
        }
        for vi in 0..self.vertex_count() {
            let normals: Vec<Vector> = self
                .facets
                .iter()
                .filter(|f| f.vertices.contains(vi))
                .map(|f| f.plane.normal().clone())
                .collect();
            if d > 0 && crate::exact::rank(&normals) != d {
                return Err(format!("vertex {vi} is not extreme"));
            }
        }
        Ok(())
    }
}

/// Intrinsic coordinates for a point given in the polytope's original
/// embedding.
pub fn to_intrinsic(p: &Polytope, x: &Vector) -> Result<Vector> {
    p.frame.local_point(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Rational;

    fn pts(rows: &[&[i64]]) -> Vec<Vector> {
        rows.iter().map(|r| Vector::from_ints(r)).collect()
    }

    #[test]
    fn square_with_center_drops_center() {
        let mut points = pts(&[&[0, 0], &[2, 0], &[0, 2], &[2, 2]]);
        points.push(Vector::new(vec![Rational::one(), Rational::one()]));
        let p = build_polytope(&points).unwrap();
        assert_eq!(p.vertex_count(), 4);
        assert_eq!(p.facets().len(), 4);
        assert_eq!(p.source_indices(), &[0, 1, 2, 3]);
        p.validate().unwrap();
    }

    #[test]
    fn unit_square_with_rational_center() {
        let mut points = pts(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]);
        points.push(Vector::new(vec![Rational::new(1, 2), Rational::new(1, 2)]));
        let p = build_polytope(&points).unwrap();
        assert_eq!((p.vertex_count(), p.facets().len()), (4, 4));
    }

    #[test]
    fn segment() {
        let p = build_polytope(&pts(&[&[0], &[1]])).unwrap();
        assert_eq!(p.vertex_count(), 2);
        assert_eq!(p.facets().len(), 2);
        assert_eq!(p.dim(), 1);
        p.validate().unwrap();
    }

    #[test]
    fn edge_midpoint_is_not_a_vertex() {
        let p = build_polytope(&pts(&[&[0, 0], &[1, 0], &[2, 0], &[0, 1]])).unwrap();
        assert_eq!(p.vertex_count(), 3);
        assert_eq!(p.source_indices(), &[0, 2, 3]);
        p.validate().unwrap();
    }

    #[test]
    fn lower_dimensional_input_is_reframed() {
        // a square lying in the plane z = x + 1 of R^3
        let p = build_polytope(&pts(&[&[0, 0, 1], &[1, 0, 2], &[0, 1, 1], &[1, 1, 2]])).unwrap();
        assert_eq!(p.dim(), 2);
        assert_eq!(p.ambient_dim(), 3);
        assert_eq!(p.facets().len(), 4);
        assert_eq!(p.vertex(0).dim(), 2);
        assert_eq!(p.ambient_vertices()[1], Vector::from_ints(&[1, 0, 2]));
        p.validate().unwrap();
    }

    #[test]
    fn degenerate_and_mismatched_inputs() {
        assert_eq!(build_polytope(&pts(&[&[1, 1], &[1, 1]])).unwrap_err(), Error::DegenerateInput);
        assert_eq!(build_polytope(&[]).unwrap_err(), Error::NoPoints);
        assert!(matches!(
            build_polytope(&pts(&[&[1, 1], &[1]])).unwrap_err(),
            Error::DimensionMismatch { .. }
        ));
        let point = Polytope::hull(&pts(&[&[3, 3]])).unwrap();
        assert_eq!(point.dim(), 0);
        assert_eq!(point.vertex_count(), 1);
    }

    #[test]
    fn tesseract_facets() {
        let p = generate(&Family::Hypercube(4), 0).unwrap();
        assert_eq!(p.vertex_count(), 16);
        assert_eq!(p.facets().len(), 8);
        p.validate().unwrap();
    }

    #[test]
    fn tangent_cone() {
        let p = generate(&Family::Hypercube(2), 0).unwrap();
        let origin = Vector::from_ints(&[0, 0]);
        assert!(p.tangent_cone_contains(&origin, &Vector::from_ints(&[1, 2])));
        assert!(p.tangent_cone_contains(&origin, &Vector::from_ints(&[1, 0])));
        assert!(!p.tangent_cone_contains(&origin, &Vector::from_ints(&[-1, 2])));
        assert!(!p.tangent_cone_contains(&Vector::from_ints(&[5, 5]), &origin));
    }
}
