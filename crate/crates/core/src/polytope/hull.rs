//! Beneath–beyond facet enumeration for a full-dimensional point set.
//!
//! Facets carry every inserted point lying on their hyperplane; points that
//! end up on the boundary without being extreme are filtered afterwards.

use std::collections::HashMap;
use std::cmp::Ordering;

use crate::exact::{affine_dimension, null_space, rank, Hyperplane, Rational, Vector};
use crate::polytope::VertexSet;

#[derive(Clone, Debug)]
pub(crate) struct HullFacet {
    pub plane: Hyperplane,
    pub members: VertexSet,
}

/// Facets of `conv(points)` and the indices of its vertices, for distinct
/// points spanning `Q^m`, `m ≥ 1`.
pub(crate) fn hull(points: &[Vector]) -> (Vec<HullFacet>, Vec<usize>) {
    let m = points[0].dim();
    if m == 1 {
        return segment_hull(points);
    }
    let start = initial_simplex(points, m);
    let interior = Vector::barycenter(start.iter().map(|&i| &points[i]));
    let mut facets: Vec<HullFacet> = start
        .iter()
        .map(|&omit| {
            let members: VertexSet = start.iter().copied().filter(|&i| i != omit).collect();
            HullFacet {
                plane: plane_through(points, &members, &interior),
                members,
            }
        })
        .collect();

    for idx in (0..points.len()).filter(|i| !start.contains(i)) {
        insert(points, &mut facets, idx, &interior, m);
    }

    let mut vertices = Vec::new();
    let mut seen = VertexSet::new();
    for f in &facets {
        seen = seen.union(&f.members);
    }
    for idx in seen.iter() {
        let normals: Vec<Vector> = facets
            .iter()
            .filter(|f| f.members.contains(idx))
            .map(|f| f.plane.normal().clone())
            .collect();
        if rank(&normals) == m {
            vertices.push(idx);
        }
    }
    let vertex_set: VertexSet = vertices.iter().copied().collect();
    for f in &mut facets {
        f.members = f.members.intersection(&vertex_set);
    }
    (facets, vertices)
}

fn segment_hull(points: &[Vector]) -> (Vec<HullFacet>, Vec<usize>) {
    let mut lo = 0;
    let mut hi = 0;
    for (i, p) in points.iter().enumerate() {
        if p[0] < points[lo][0] {
            lo = i;
        }
        if p[0] > points[hi][0] {
            hi = i;
        }
    }
    let upper = Hyperplane::new(Vector::from_ints(&[1]), points[hi][0].clone()).unwrap();
    let lower = Hyperplane::new(Vector::from_ints(&[-1]), -&points[lo][0]).unwrap();
    let mut vertices = vec![lo, hi];
    vertices.sort_unstable();
    let facets = vec![
        HullFacet { plane: lower, members: [lo].into_iter().collect() },
        HullFacet { plane: upper, members: [hi].into_iter().collect() },
    ];
    (facets, vertices)
}

/// First `m + 1` affinely independent points, greedily in input order.
fn initial_simplex(points: &[Vector], m: usize) -> Vec<usize> {
    let mut chosen = vec![0];
    let mut diffs: Vec<Vector> = Vec::new();
    for (i, p) in points.iter().enumerate().skip(1) {
        let d = p - &points[0];
        diffs.push(d);
        if rank(&diffs) == diffs.len() {
            chosen.push(i);
            if chosen.len() == m + 1 {
                break;
            }
        } else {
            diffs.pop();
        }
    }
    debug_assert_eq!(chosen.len(), m + 1, "point set is not full-dimensional");
    chosen
}

/// Hyperplane through `members` (spanning a hyperplane) oriented so that
/// `interior` is strictly beneath it.
fn plane_through(points: &[Vector], members: &VertexSet, interior: &Vector) -> Hyperplane {
    let idx = members.to_vec();
    let base = &points[idx[0]];
    let diffs: Vec<Vector> = idx[1..].iter().map(|&i| &points[i] - base).collect();
    let normals = null_space(&diffs, base.dim());
    debug_assert_eq!(normals.len(), 1);
    let normal = normals.into_iter().next().expect("members span a hyperplane");
    let offset = normal.dot(base);
    let plane = Hyperplane::new(normal, offset).expect("null space vector is nonzero");
    let plane = if plane.eval(interior).is_positive() {
        plane.flipped()
    } else {
        plane
    };
    plane.normalized()
}

fn insert(
    points: &[Vector],
    facets: &mut Vec<HullFacet>,
    idx: usize,
    interior: &Vector,
    m: usize,
) {
    let p = &points[idx];
    let sides: Vec<Ordering> = facets
        .iter()
        .map(|f| f.plane.eval(p).cmp(&Rational::zero()))
        .collect();
    if !sides.contains(&Ordering::Greater) {
        return;
    }

    let mut next: Vec<HullFacet> = Vec::with_capacity(facets.len());
    let mut by_plane: HashMap<Hyperplane, usize> = HashMap::new();
    let mut push = |next: &mut Vec<HullFacet>, facet: HullFacet| {
        if let Some(&at) = by_plane.get(&facet.plane) {
            let merged = next[at].members.union(&facet.members);
            next[at].members = merged;
        } else {
            by_plane.insert(facet.plane.clone(), next.len());
            next.push(facet);
        }
    };

    for (f, side) in facets.iter().zip(&sides) {
        match side {
            Ordering::Less => push(&mut next, f.clone()),
            Ordering::Equal => {
                let mut members = f.members.clone();
                members.insert(idx);
                push(&mut next, HullFacet { plane: f.plane.clone(), members });
            }
            Ordering::Greater => {}
        }
    }

    for (vis, _) in facets.iter().zip(&sides).filter(|(_, s)| **s == Ordering::Greater) {
        for (ben, _) in facets.iter().zip(&sides).filter(|(_, s)| **s == Ordering::Less) {
            let ridge = vis.members.intersection(&ben.members);
            if ridge.len() + 1 < m {
                continue;
            }
            let ridge_dim = affine_dimension(ridge.iter().map(|i| &points[i]));
            if ridge_dim + 2 != m {
                continue;
            }
            let mut members = ridge;
            members.insert(idx);
            let plane = plane_through(points, &members, interior);
            push(&mut next, HullFacet { plane, members });
        }
    }
    *facets = next;
}
