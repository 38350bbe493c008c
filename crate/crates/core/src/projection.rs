//! Schlegel diagrams, and the orthogonal and central projections whose
//! shadows decide which flags stay inside a cell or facet.

use std::collections::{BTreeMap, HashSet};

use crate::error::{Error, Result};
use crate::exact::{affine_hull, lp, AffineSubspace, Hyperplane, Rational, Vector};
use crate::polytope::{volume, Polytope, VertexSet};

/// Point beyond facet `facet` of `p` and beneath every other facet, in
/// intrinsic coordinates. Starts at the facet's vertex barycenter and steps
/// along the outward normal, halving the step until every other facet
/// inequality holds strictly.
pub fn beyond_point(p: &Polytope, facet: usize) -> Result<Vector> {
    let target = p.facet(facet)?;
    let center = p.barycenter(&target.vertices);
    let normal = target.plane.normal();
    let mut step = Rational::one();
    loop {
        let z = center.add_scaled(&step, normal);
        let beneath_rest = p
            .facets()
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != facet)
            .all(|(_, f)| f.plane.eval(&z).is_negative());
        if beneath_rest && target.plane.eval(&z).is_positive() {
            return Ok(z);
        }
        step = step * Rational::new(1, 2);
    }
}

/// A polytope whose vertices are labelled by vertices of some parent.
#[derive(Clone, Debug)]
pub struct LabelledPolytope {
    pub polytope: Polytope,
    /// Parent vertex index of each local vertex.
    pub labels: Vec<usize>,
}

impl LabelledPolytope {
    /// Builds from `parent_vertices` with their `points`; the points must all
    /// be extreme (as they are for faces and their projective images).
    pub(crate) fn build(parent_vertices: &[usize], points: Vec<Vector>) -> Result<Self> {
        let polytope = Polytope::hull(&points)?;
        debug_assert_eq!(polytope.vertex_count(), points.len());
        let labels = polytope
            .source_indices()
            .iter()
            .map(|&s| parent_vertices[s])
            .collect();
        Ok(LabelledPolytope { polytope, labels })
    }

    pub fn to_parent(&self, local: &VertexSet) -> VertexSet {
        local.map(|i| self.labels[i])
    }

    pub fn to_local(&self, parent: &VertexSet) -> Option<VertexSet> {
        parent
            .iter()
            .map(|v| self.labels.iter().position(|&l| l == v))
            .collect()
    }

    /// Faces of every dimension as parent-label sets.
    pub fn parent_families(&self) -> Vec<Vec<VertexSet>> {
        let lattice = self.polytope.lattice();
        (0..=lattice.dim())
            .map(|c| {
                let mut v: Vec<VertexSet> =
                    lattice.faces(c).iter().map(|f| self.to_parent(&f.vertices)).collect();
                v.sort();
                v
            })
            .collect()
    }
}

#[derive(Clone, Debug)]
pub struct ComplexFace {
    /// Vertex set in terms of the vertices of the original polytope.
    pub vertices: VertexSet,
    pub dim: usize,
    /// Vertex barycenter in carrier coordinates.
    pub base_point: Vector,
}

/// The Schlegel diagram of a `(k+1)`-polytope at one of its facets: the
/// facet, as a `k`-polytope, subdivided into the images of the other facets.
#[derive(Clone, Debug)]
pub struct SchlegelComplex {
    pub facet: usize,
    /// Projection centre in the polytope's intrinsic coordinates.
    pub viewpoint: Vector,
    /// Affine hull of the facet; carrier coordinates are its intrinsic frame.
    pub frame: AffineSubspace,
    pub carrier: LabelledPolytope,
    pub cells: Vec<LabelledPolytope>,
    /// Facet of the source polytope each cell is the image of.
    pub cell_origin: Vec<usize>,
    /// Image of every source vertex, in carrier coordinates.
    pub positions: Vec<Vector>,
    /// Faces of dimension `0..k`, sorted by dimension then vertex set.
    pub faces: Vec<ComplexFace>,
}

impl SchlegelComplex {
    pub fn k(&self) -> usize {
        self.frame.dimension()
    }

    pub fn face_counts(&self) -> Vec<usize> {
        let mut counts = vec![0; self.k()];
        for f in &self.faces {
            counts[f.dim] += 1;
        }
        counts
    }

    pub fn face_index(&self, vertices: &VertexSet) -> Option<usize> {
        self.faces.iter().position(|f| &f.vertices == vertices)
    }

    /// Checks the subdivision invariants against the source polytope:
    /// cells are combinatorially the source facets, face counts agree with
    /// the f-vector, cells lie in the carrier with pairwise disjoint
    /// interiors, and their volumes add up to the carrier's.
    pub fn validate(&self, p: &Polytope) -> std::result::Result<(), String> {
        let k = self.k();
        let lattice = p.lattice();
        if self.cells.len() + 1 != p.facets().len() {
            return Err(format!("{} cells for {} facets", self.cells.len(), p.facets().len()));
        }
        for (ci, (cell, &origin)) in self.cells.iter().zip(&self.cell_origin).enumerate() {
            let facet = &p.facets()[origin].vertices;
            let mut expected: Vec<Vec<VertexSet>> = vec![Vec::new(); k + 1];
            for f in lattice.faces_within(facet) {
                expected[f.dim].push(f.vertices.clone());
            }
            for level in &mut expected {
                level.sort();
            }
            if cell.parent_families() != expected {
                return Err(format!("cell {ci} is not combinatorially facet {origin}"));
            }
            if let Some(v) = cell.polytope.vertices().iter().find(|v| !self.carrier.polytope.contains(v)) {
                return Err(format!("cell {ci} vertex {v:?} leaves the carrier"));
            }
        }
        for c in 0..k {
            let mine: HashSet<&VertexSet> =
                self.faces.iter().filter(|f| f.dim == c).map(|f| &f.vertices).collect();
            let theirs: HashSet<&VertexSet> = lattice.faces(c).iter().map(|f| &f.vertices).collect();
            if mine != theirs {
                return Err(format!(
                    "complex has {} faces of dimension {c}, polytope has {}",
                    mine.len(),
                    theirs.len()
                ));
            }
        }
        let distinct: HashSet<&Vector> = self.positions.iter().collect();
        if distinct.len() != self.positions.len() {
            return Err("two vertices share an image".into());
        }
        let cell_volume: Rational = self.cells.iter().map(|c| volume(&c.polytope)).sum();
        let carrier_volume = volume(&self.carrier.polytope);
        if cell_volume != carrier_volume {
            return Err(format!("cell volumes {cell_volume} ≠ carrier volume {carrier_volume}"));
        }
        for i in 0..self.cells.len() {
            for j in i + 1..self.cells.len() {
                if interiors_meet(&self.cells[i].polytope, &self.cells[j].polytope) {
                    return Err(format!("cells {i} and {j} overlap"));
                }
            }
        }
        Ok(())
    }
}

fn interiors_meet(a: &Polytope, b: &Polytope) -> bool {
    let (normals, offsets): (Vec<Vector>, Vec<Rational>) = a
        .facets()
        .iter()
        .chain(b.facets())
        .map(|f| (f.plane.normal().clone(), f.plane.offset().clone()))
        .unzip();
    lp::strict_system_feasible(&normals, &offsets)
}

/// Schlegel diagram of `p` with respect to facet `facet`: every other facet
/// is projected centrally from [`beyond_point`] into the facet's hyperplane.
pub fn schlegel(p: &Polytope, facet: usize) -> Result<SchlegelComplex> {
    if p.dim() < 3 {
        return Err(Error::SchlegelDimension(p.dim()));
    }
    let target = p.facet(facet)?.clone();
    let z = beyond_point(p, facet)?;
    let plane = &target.plane;

    let projected: Vec<Vector> = p
        .vertices()
        .iter()
        .map(|v| {
            if plane.contains(v) {
                v.clone()
            } else {
                let dir = v - &z;
                let t = -plane.eval(&z) / plane.normal().dot(&dir);
                z.add_scaled(&t, &dir)
            }
        })
        .collect();
    let frame = affine_hull(
        &target.vertices.iter().map(|i| p.vertex(i).clone()).collect::<Vec<_>>(),
    )?;
    let positions: Vec<Vector> = projected
        .iter()
        .map(|x| frame.local_point(x))
        .collect::<Result<_>>()?;

    let labelled = |set: &VertexSet| -> Result<LabelledPolytope> {
        let ids = set.to_vec();
        let pts = ids.iter().map(|&i| positions[i].clone()).collect();
        LabelledPolytope::build(&ids, pts)
    };
    let carrier = labelled(&target.vertices)?;
    let mut cells = Vec::new();
    let mut cell_origin = Vec::new();
    for (i, f) in p.facets().iter().enumerate() {
        if i != facet {
            cells.push(labelled(&f.vertices)?);
            cell_origin.push(i);
        }
    }

    let k = frame.dimension();
    let mut face_sets: BTreeMap<(usize, VertexSet), ()> = BTreeMap::new();
    for cell in &cells {
        let lattice = cell.polytope.lattice();
        for c in 0..k {
            for f in lattice.faces(c) {
                face_sets.insert((c, cell.to_parent(&f.vertices)), ());
            }
        }
    }
    let faces = face_sets
        .into_keys()
        .map(|(dim, vertices)| ComplexFace {
            base_point: Vector::barycenter(vertices.iter().map(|i| &positions[i])),
            vertices,
            dim,
        })
        .collect();

    Ok(SchlegelComplex {
        facet,
        viewpoint: z,
        frame,
        carrier,
        cells,
        cell_origin,
        positions,
        faces,
    })
}

/// Image of a polytope under a projection that lowers its dimension by one.
#[derive(Clone, Debug)]
pub struct Shadow {
    pub polytope: Polytope,
    /// Image of each source vertex, in the coordinates `polytope` was built from.
    pub images: Vec<Vector>,
    /// For every face of the source (by source vertex set): whether its
    /// image is a face of the shadow of the same dimension.
    pub face_image: BTreeMap<VertexSet, bool>,
}

impl Shadow {
    fn new(src: &Polytope, images: Vec<Vector>) -> Result<Shadow> {
        let polytope = Polytope::hull(&images)?;
        let lattice = polytope.lattice();
        let by_dim: Vec<HashSet<Vec<&Vector>>> = (0..=lattice.dim())
            .map(|c| {
                lattice
                    .faces(c)
                    .iter()
                    .map(|f| {
                        let mut pts: Vec<&Vector> =
                            f.vertices.iter().map(|i| &polytope.ambient_vertices()[i]).collect();
                        pts.sort();
                        pts
                    })
                    .collect()
            })
            .collect();
        let face_image = src
            .lattice()
            .iter()
            .map(|f| {
                let mut pts: Vec<&Vector> = f.vertices.iter().map(|i| &images[i]).collect();
                pts.sort();
                pts.dedup();
                let is_face = by_dim.get(f.dim).is_some_and(|level| level.contains(&pts));
                (f.vertices.clone(), is_face)
            })
            .collect();
        Ok(Shadow {
            polytope,
            images,
            face_image,
        })
    }

    pub fn is_face_image(&self, source_face: &VertexSet) -> Option<bool> {
        self.face_image.get(source_face).copied()
    }

    pub fn dim(&self) -> usize {
        self.polytope.dim()
    }

    /// Shadow faces per dimension, each named by the source vertices whose
    /// images are vertices of that face.
    pub fn label_families(&self) -> Vec<Vec<VertexSet>> {
        let lattice = self.polytope.lattice();
        (0..=lattice.dim())
            .map(|c| {
                let mut level: Vec<VertexSet> = lattice
                    .faces(c)
                    .iter()
                    .map(|f| {
                        let pts: HashSet<&Vector> = f
                            .vertices
                            .iter()
                            .map(|i| &self.polytope.ambient_vertices()[i])
                            .collect();
                        (0..self.images.len()).filter(|&v| pts.contains(&self.images[v])).collect()
                    })
                    .collect();
                level.sort();
                level
            })
            .collect()
    }
}

/// Orthogonal projection of `src` along `direction` (given in the
/// coordinates of `src`'s embedding and lying in its affine hull's
/// direction space) onto the complement of the direction within the hull.
pub fn project_along(src: &Polytope, direction: &Vector) -> Result<Shadow> {
    if direction.is_zero() {
        return Err(Error::ZeroDirection);
    }
    let u = src.frame().local_direction(direction)?;
    let uu = u.dot(&u);
    let images = src
        .vertices()
        .iter()
        .map(|y| {
            let t = -(y.dot(&u) / &uu);
            y.add_scaled(&t, &u)
        })
        .collect();
    Shadow::new(src, images)
}

/// Screen crossing all rays from `apex` (intrinsic coordinates) to `src`:
/// for facet `facet` with `n·x ≤ b` and `n·apex = b' > b`, the hyperplane
/// `n·x = b + t(b' − b)`, `0 < t < 1`.
pub fn screen_between(src: &Polytope, apex: &Vector, facet: usize, t: &Rational) -> Result<Hyperplane> {
    let plane = &src.facet(facet)?.plane;
    let outside = plane.eval(apex);
    if !outside.is_positive() || !t.is_positive() || *t >= Rational::one() {
        return Err(Error::InadmissibleScreen);
    }
    Hyperplane::new(plane.normal().clone(), plane.offset() + &(t * &outside))
}

/// Central projection of `src` from `apex`, which must lie in `src`'s affine
/// hull strictly outside it. The screen is taken halfway between the first
/// violated facet hyperplane and the apex.
pub fn project_from_point(src: &Polytope, apex: &Vector) -> Result<Shadow> {
    let a = src.frame().local_point(apex)?;
    let facet = src
        .facets()
        .iter()
        .position(|f| f.plane.eval(&a).is_positive())
        .ok_or(Error::ApexNotExterior)?;
    let screen = screen_between(src, &a, facet, &Rational::new(1, 2))?;
    project_from_point_onto(src, apex, &screen)
}

/// Central projection onto an explicit screen given in `src`'s intrinsic
/// coordinates; the screen must strictly separate the apex from `src`.
pub fn project_from_point_onto(src: &Polytope, apex: &Vector, screen: &Hyperplane) -> Result<Shadow> {
    let a = src.frame().local_point(apex)?;
    if src.contains(&a) {
        return Err(Error::ApexNotExterior);
    }
    if !screen.eval(&a).is_positive() || src.vertices().iter().any(|v| !screen.eval(v).is_negative()) {
        return Err(Error::InadmissibleScreen);
    }
    let images = src
        .vertices()
        .iter()
        .map(|v| {
            let dir = v - &a;
            let t = -screen.eval(&a) / screen.normal().dot(&dir);
            a.add_scaled(&t, &dir)
        })
        .collect();
    Shadow::new(src, images)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::{build_polytope, generate, Family};

    fn v(c: &[i64]) -> Vector {
        Vector::from_ints(c)
    }

    #[test]
    fn beyond_point_on_cube_bottom() {
        let cube = generate(&Family::Hypercube(3), 0).unwrap();
        let bottom = cube
            .facets()
            .iter()
            .position(|f| f.vertices.iter().all(|i| cube.vertex(i)[2].is_zero()))
            .unwrap();
        let z = beyond_point(&cube, bottom).unwrap();
        assert_eq!(z[0], Rational::new(1, 2));
        assert_eq!(z[1], Rational::new(1, 2));
        assert!(z[2].is_negative());
        for (i, f) in cube.facets().iter().enumerate() {
            assert_eq!(f.plane.eval(&z).is_positive(), i == bottom);
            assert!(!f.plane.eval(&z).is_zero());
        }
    }

    #[test]
    fn beyond_point_on_segment_and_square() {
        let seg = generate(&Family::Hypercube(1), 0).unwrap();
        let top = seg.facets().iter().position(|f| f.vertices.contains(1)).unwrap();
        let z = beyond_point(&seg, top).unwrap();
        assert!(z[0] > Rational::one());
        let sq = generate(&Family::Hypercube(2), 0).unwrap();
        for fi in 0..4 {
            let z = beyond_point(&sq, fi).unwrap();
            for (i, f) in sq.facets().iter().enumerate() {
                assert_eq!(f.plane.eval(&z).is_positive(), i == fi);
            }
        }
    }

    #[test]
    fn schlegel_requires_dimension_three() {
        let sq = generate(&Family::Hypercube(2), 0).unwrap();
        assert_eq!(schlegel(&sq, 0).unwrap_err(), Error::SchlegelDimension(2));
    }

    #[test]
    fn cube_schlegel_is_five_quads() {
        let cube = generate(&Family::Hypercube(3), 0).unwrap();
        for fi in 0..6 {
            let cx = schlegel(&cube, fi).unwrap();
            assert_eq!(cx.cells.len(), 5);
            for cell in &cx.cells {
                assert_eq!(cell.polytope.lattice().counts(), vec![4, 4, 1]);
            }
            assert_eq!(cx.face_counts(), vec![8, 12]);
            cx.validate(&cube).unwrap();
        }
    }

    #[test]
    fn tetrahedron_schlegel_is_three_triangles() {
        let tet = generate(&Family::Simplex(3), 0).unwrap();
        let cx = schlegel(&tet, 2).unwrap();
        assert_eq!(cx.cells.len(), 3);
        for cell in &cx.cells {
            assert_eq!(cell.polytope.lattice().counts(), vec![3, 3, 1]);
        }
        cx.validate(&tet).unwrap();
    }

    #[test]
    fn tesseract_schlegel_is_seven_cubes() {
        let tess = generate(&Family::Hypercube(4), 0).unwrap();
        let cx = schlegel(&tess, 3).unwrap();
        assert_eq!(cx.cells.len(), 7);
        for cell in &cx.cells {
            assert_eq!(cell.polytope.lattice().counts(), vec![8, 12, 6, 1]);
        }
        assert_eq!(cx.face_counts(), vec![16, 32, 24]);
        cx.validate(&tess).unwrap();
    }

    #[test]
    fn square_shadow_along_generic_direction() {
        let sq = generate(&Family::Hypercube(2), 0).unwrap();
        let s = project_along(&sq, &v(&[1, 3])).unwrap();
        assert_eq!(s.dim(), 1);
        let vertex_images = (0..4)
            .filter(|&i| s.is_face_image(&[i].into_iter().collect()) == Some(true))
            .count();
        assert_eq!(vertex_images, 2);
        assert_eq!(s.is_face_image(&sq.all_vertices()), Some(false));
    }

    #[test]
    fn cube_shadow_is_hexagon() {
        let cube = generate(&Family::Hypercube(3), 0).unwrap();
        let s = project_along(&cube, &v(&[1, 2, 3])).unwrap();
        assert_eq!(s.polytope.lattice().counts(), vec![6, 6, 1]);
        let lat = cube.lattice();
        let count = |c: usize| {
            lat.faces(c).iter().filter(|f| s.is_face_image(&f.vertices) == Some(true)).count()
        };
        assert_eq!((count(0), count(1), count(2)), (6, 6, 0));
    }

    #[test]
    fn segment_shadow_is_a_point() {
        let seg = build_polytope(&[v(&[0, 0]), v(&[1, 1])]).unwrap();
        let s = project_along(&seg, &v(&[1, 1])).unwrap();
        assert_eq!(s.dim(), 0);
        assert_eq!(s.polytope.lattice().counts(), vec![1]);
        assert!(project_along(&seg, &v(&[1, 0])).is_err());
        assert_eq!(project_along(&seg, &v(&[0, 0])).unwrap_err(), Error::ZeroDirection);
    }

    #[test]
    fn central_projection_examples() {
        // square, apex on the line of its bottom edge
        let sq = generate(&Family::Hypercube(2), 0).unwrap();
        let s = project_from_point(&sq, &v(&[3, 0])).unwrap();
        assert_eq!(s.dim(), 1);
        assert_eq!(s.polytope.lattice().counts(), vec![2, 1]);

        // triangle with the apex beyond vertex (1,0): far vertices are the shadow ends
        let tri = generate(&Family::Simplex(2), 0).unwrap();
        let apex = v(&[3, -1]);
        let s = project_from_point(&tri, &apex).unwrap();
        let ends: Vec<usize> = (0..3)
            .filter(|&i| s.is_face_image(&[i].into_iter().collect()) == Some(true))
            .collect();
        let near = tri.ambient_vertices().iter().position(|p| *p == v(&[1, 0])).unwrap();
        assert_eq!(ends.len(), 2);
        assert!(!ends.contains(&near));

        let seg = generate(&Family::Hypercube(1), 0).unwrap();
        let s = project_from_point(&seg, &v(&[2])).unwrap();
        assert_eq!(s.dim(), 0);
    }

    #[test]
    fn central_projection_errors() {
        let sq = generate(&Family::Hypercube(2), 0).unwrap();
        let inside = Vector::new(vec![Rational::new(1, 2), Rational::new(1, 3)]);
        assert_eq!(project_from_point(&sq, &inside).unwrap_err(), Error::ApexNotExterior);
        assert_eq!(project_from_point(&sq, &v(&[1, 0])).unwrap_err(), Error::ApexNotExterior);
        let flat = build_polytope(&[v(&[0, 0, 0]), v(&[1, 0, 0]), v(&[0, 1, 0])]).unwrap();
        assert_eq!(
            project_from_point(&flat, &v(&[0, 0, 1])).unwrap_err(),
            Error::NotInAffineHull
        );
    }
}
