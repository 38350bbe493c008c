//! Flag counting along a line through two facets.
//!
//! A line `ℓ` enters the polytope through `t₁ ∈ relint T₁` and leaves
//! through `t₂ ∈ relint T₂`. For a face `F` with `dim F < k` the plane
//! spanned by `ℓ` and the barycenter `x_F` cuts the polytope in a polygon
//! with a corner at `x_F`; its two sides leaving `x_F` give two flags of
//! value `½(−1)^{dim F}`, each lying in a facet. Facet `T_i` collects one
//! flag per face for `i ∈ {1, 2}` and otherwise exactly the flags predicted
//! by the central projection of `T_i` from `t_i = ℓ ∩ aff T_i`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::euler::{f_vector, FVector};
use crate::exact::{rank, Rational, Vector};
use crate::flags::{expected_flags, half_alternating, identity_sides, Tally};
use crate::par::Strategy;
use crate::polytope::{Face, Polytope};
use crate::projection::{project_from_point, LabelledPolytope, Shadow};

pub const TRANSVERSAL_BUDGET: usize = 256;

/// Transversal line in the polytope's intrinsic coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Transversal {
    pub pair: (usize, usize),
    pub t1: Vector,
    pub t2: Vector,
    /// `t₂ − t₁`.
    pub direction: Vector,
    /// `ℓ ∩ aff T_i` for every facet.
    pub hits: Vec<Vector>,
    pub attempts: usize,
}

impl Transversal {
    pub fn in_pair(&self, facet: usize) -> bool {
        facet == self.pair.0 || facet == self.pair.1
    }
}

/// Samples the facet pair from `seed`, then the line.
pub fn sample_transversal(p: &Polytope, seed: u64) -> Result<Transversal> {
    check_dimension(p)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = p.facets().len();
    let a = rng.random_range(0..m);
    let mut b = rng.random_range(0..m - 1);
    if b >= a {
        b += 1;
    }
    sample_line(p, (a.min(b), a.max(b)), &mut rng)
}

pub fn sample_transversal_for_pair(p: &Polytope, pair: (usize, usize), seed: u64) -> Result<Transversal> {
    check_dimension(p)?;
    p.facet(pair.0)?;
    p.facet(pair.1)?;
    if pair.0 == pair.1 {
        return Err(Error::GeneralPositionViolated("transversal needs two distinct facets".into()));
    }
    sample_line(p, pair, &mut ChaCha8Rng::seed_from_u64(seed))
}

fn check_dimension(p: &Polytope) -> Result<()> {
    if p.dim() < 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: p.dim(),
        });
    }
    Ok(())
}

/// Strictly positive integer weights on the facet's vertices, normalised.
fn relint_point(p: &Polytope, facet: usize, range: u64, rng: &mut ChaCha8Rng) -> Vector {
    let ids = p.facets()[facet].vertices.to_vec();
    let weights: Vec<Rational> = ids.iter().map(|_| Rational::from(rng.random_range(1..=range) as i64)).collect();
    let total: Rational = weights.iter().cloned().sum();
    let mut x = Vector::zeros(p.dim());
    for (&i, w) in ids.iter().zip(&weights) {
        x = x.add_scaled(&(w / &total), p.vertex(i));
    }
    x
}

fn sample_line(p: &Polytope, pair: (usize, usize), rng: &mut ChaCha8Rng) -> Result<Transversal> {
    let mut range = 8u64;
    for attempt in 0..TRANSVERSAL_BUDGET {
        if attempt > 0 && attempt % 32 == 0 {
            range *= 2;
        }
        let t1 = relint_point(p, pair.0, range, rng);
        let t2 = relint_point(p, pair.1, range, rng);
        let direction = &t2 - &t1;
        if let Ok(hits) = certify(p, &t1, &direction) {
            let tr = Transversal {
                pair,
                t1,
                t2,
                direction,
                hits,
                attempts: attempt + 1,
            };
            check_hits(p, &tr)?;
            return Ok(tr);
        }
    }
    Err(Error::NoGeneralDirection(TRANSVERSAL_BUDGET))
}

/// General-position certificate: the line is parallel to no facet and, for
/// every face `G` with `dim G < k`, `dir G`, `u` and `x_G − t₁` span a space
/// of dimension `dim G + 2`. Returns the facet hyperplane hits.
pub fn certify(p: &Polytope, t1: &Vector, u: &Vector) -> std::result::Result<Vec<Vector>, String> {
    let k = p.dim() - 1;
    for face in p.lattice().iter().filter(|f| f.dim < k) {
        let ids = face.vertices.to_vec();
        let base = p.vertex(ids[0]);
        let mut rows: Vec<Vector> = ids[1..].iter().map(|&i| p.vertex(i) - base).collect();
        rows.push(u.clone());
        rows.push(base - t1);
        if rank(&rows) != face.dim + 2 {
            return Err(format!("line not general with respect to {:?}", face.vertices));
        }
    }
    p.facets()
        .iter()
        .enumerate()
        .map(|(i, f)| {
            let slope = f.plane.normal().dot(u);
            if slope.is_zero() {
                return Err(format!("line parallel to facet {i}"));
            }
            Ok(t1.add_scaled(&(-f.plane.eval(t1) / slope), u))
        })
        .collect()
}

/// `t_i ∈ relint T_i` for the pair, `t_i ∉ T_i` for every other facet.
fn check_hits(p: &Polytope, tr: &Transversal) -> Result<()> {
    for (i, t) in tr.hits.iter().enumerate() {
        let ok = if tr.in_pair(i) {
            p.contains(t) && p.active_facets(t) == [i]
        } else {
            !p.contains(t)
        };
        if !ok {
            return Err(Error::GeneralPositionViolated(format!("hit point of facet {i} misplaced")));
        }
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FoldedFlag {
    pub face: Face,
    pub facet: usize,
    /// From `x_F` to the far end of the polygon side, intrinsic coordinates.
    pub side: Vector,
    pub value: Rational,
}

/// Coordinates `(α, β)` on the plane `t₁ + αu + βw`.
type Point2 = (Rational, Rational);

/// The two polygon sides at `x_F` in the plane through `ℓ` and `x_F`.
fn fold_face(p: &Polytope, tr: &Transversal, face: &Face) -> Result<[FoldedFlag; 2]> {
    let x = p.barycenter(&face.vertices);
    let u = &tr.direction;
    let w = &x - &tr.t1;
    let violation = |what: &str| Error::GeneralPositionViolated(format!("{what} at {:?}", face.vertices));

    // a·α + c·β ≤ r for each facet
    let lines: Vec<(Rational, Rational, Rational)> = p
        .facets()
        .iter()
        .map(|f| {
            let n = f.plane.normal();
            (n.dot(u), n.dot(&w), -f.plane.eval(&tr.t1))
        })
        .collect();
    let corner: Point2 = (Rational::zero(), Rational::one());
    let active = |q: &Point2| -> Vec<usize> {
        lines
            .iter()
            .enumerate()
            .filter(|(_, (a, c, r))| a * &q.0 + c * &q.1 == *r)
            .map(|(i, _)| i)
            .collect()
    };

    let mut sides = Vec::new();
    for (j, (a, c, r)) in lines.iter().enumerate() {
        if a.is_zero() && c.is_zero() {
            continue;
        }
        let origin: Point2 = if !a.is_zero() {
            (r / a, Rational::zero())
        } else {
            (Rational::zero(), r / c)
        };
        let dir: Point2 = (-c.clone(), a.clone());
        let (mut lo, mut hi): (Option<Rational>, Option<Rational>) = (None, None);
        let mut empty = false;
        for (m, (am, cm, rm)) in lines.iter().enumerate() {
            if m == j {
                continue;
            }
            let rate = am * &dir.0 + cm * &dir.1;
            let slack = rm - &(am * &origin.0 + cm * &origin.1);
            if rate.is_zero() {
                empty |= slack.is_negative();
            } else if rate.is_positive() {
                let s = slack / rate;
                hi = Some(hi.map_or(s.clone(), |h| if s < h { s } else { h }));
            } else {
                let s = slack / rate;
                lo = Some(lo.map_or(s.clone(), |l| if s > l { s } else { l }));
            }
        }
        let (Some(lo), Some(hi)) = (lo, hi) else {
            return Err(violation("unbounded section"));
        };
        if empty || lo >= hi {
            continue;
        }
        let at = |s: &Rational| -> Point2 { (&origin.0 + &(s * &dir.0), &origin.1 + &(s * &dir.1)) };
        let (e0, e1) = (at(&lo), at(&hi));
        let mid = at(&((&lo + &hi) * Rational::new(1, 2)));
        if active(&mid) != [j] {
            return Err(violation("polygon side on two facets"));
        }
        if e0 == corner {
            sides.push((j, e1));
        } else if e1 == corner {
            sides.push((j, e0));
        }
    }
    let [(j0, ref far0), (j1, ref far1)] = sides[..] else {
        return Err(violation("corner not on exactly two sides"));
    };
    if j0 == j1 {
        return Err(violation("both sides in one facet"));
    }
    let mk = |j: usize, far: &Point2| -> Result<FoldedFlag> {
        let side = u.scale(&far.0).add_scaled(&(&far.1 - &Rational::one()), &w);
        if rank(&[side.clone(), &tr.hits[j] - &x]) != 1 {
            return Err(violation("hit point off the side line"));
        }
        if !face.vertices.is_subset(&p.facets()[j].vertices) {
            return Err(violation("side outside a facet containing the face"));
        }
        Ok(FoldedFlag {
            face: face.clone(),
            facet: j,
            side,
            value: Rational::half_sign(face.dim),
        })
    };
    Ok([mk(j0, far0)?, mk(j1, far1)?])
}

pub fn fold_flags(p: &Polytope, tr: &Transversal, strategy: Strategy) -> Result<Vec<FoldedFlag>> {
    let k = p.dim() - 1;
    let faces: Vec<Face> = p.lattice().iter().filter(|f| f.dim < k).cloned().collect();
    Ok(strategy.try_map(&faces, |f| fold_face(p, tr, f))?.into_iter().flatten().collect())
}

/// A facet as a polytope on the parent's intrinsic coordinates.
pub fn facet_polytope(p: &Polytope, facet: usize) -> Result<LabelledPolytope> {
    let ids = p.facet(facet)?.vertices.to_vec();
    let pts = ids.iter().map(|&i| p.vertex(i).clone()).collect();
    LabelledPolytope::build(&ids, pts)
}

/// Per facet: the shadow from its hit point, or `None` for the pair.
pub fn facet_shadows(p: &Polytope, tr: &Transversal, strategy: Strategy) -> Result<Vec<Option<(LabelledPolytope, Shadow)>>> {
    let ids: Vec<usize> = (0..p.facets().len()).collect();
    strategy.try_map(&ids, |&i| {
        if tr.in_pair(i) {
            return Ok(None);
        }
        let t = facet_polytope(p, i)?;
        let shadow = project_from_point(&t.polytope, &tr.hits[i])?;
        Ok(Some((t, shadow)))
    })
}

/// Checks each facet's flags against the prediction: one per face for the
/// pair, the central-projection count otherwise.
pub fn check_facet_criterion(
    p: &Polytope,
    tr: &Transversal,
    flags: &[FoldedFlag],
    shadows: &[Option<(LabelledPolytope, Shadow)>],
) -> std::result::Result<(), String> {
    let k = p.dim() - 1;
    let lattice = p.lattice();
    for (i, facet) in p.facets().iter().enumerate() {
        for face in lattice.faces_within(&facet.vertices).filter(|f| f.dim < k) {
            let got = flags.iter().filter(|f| f.facet == i && f.face == *face).count();
            let want = match &shadows[i] {
                None if tr.in_pair(i) => 1,
                None => return Err(format!("facet {i} has no shadow")),
                Some((t, shadow)) => {
                    let local = t.to_local(&face.vertices).ok_or("face not in facet")?;
                    expected_flags(face.dim, k, shadow, &local)
                }
            };
            if got != want {
                return Err(format!(
                    "facet {i}: face {:?} holds {got} flags, expected {want}",
                    face.vertices
                ));
            }
        }
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FoldedReport {
    pub seed: u64,
    pub k: usize,
    pub transversal: Transversal,
    pub f_vector: FVector,
    pub flags: usize,
    /// One tally per facet, in facet order.
    pub facets: Vec<Tally>,
    pub pair_sum: Rational,
    pub total: Rational,
    pub total_by_facets: Rational,
    /// `1 − (−1)^k − (−1)^k (f^k − 2)`.
    pub expected_total: Rational,
    pub lhs: Rational,
    pub rhs: Rational,
    pub criterion_error: Option<String>,
    pub pass: bool,
}

/// Per-facet sums with their predicted values.
pub fn facet_assignment_sums(
    p: &Polytope,
    tr: &Transversal,
    flags: &[FoldedFlag],
    shadows: &[Option<(LabelledPolytope, Shadow)>],
) -> Vec<Tally> {
    let k = p.dim() - 1;
    let half = Rational::new(1, 2);
    (0..p.facets().len())
        .map(|i| {
            let mine: Vec<&FoldedFlag> = flags.iter().filter(|f| f.facet == i).collect();
            let chain = match &shadows[i] {
                Some((t, shadow)) => {
                    let f = t.polytope.lattice().counts();
                    let g = shadow.polytope.lattice().counts();
                    vec![
                        half_alternating(&f, k) - half_alternating(&g, k - 1),
                        &half * (Rational::one() - Rational::sign_power(k) * Rational::from(f[k]))
                            - &half * (Rational::one() - Rational::sign_power(k - 1) * Rational::from(g[k - 1])),
                        -Rational::sign_power(k),
                    ]
                }
                None => {
                    let f: Vec<usize> = (0..k)
                        .map(|c| p.lattice().faces(c).iter().filter(|g| g.vertices.is_subset(&p.facets()[i].vertices)).count())
                        .collect();
                    vec![half_alternating(&f, k), &half * (Rational::one() - Rational::sign_power(k))]
                }
            };
            Tally {
                label: if tr.in_pair(i) { format!("facet {i} (pair)") } else { format!("facet {i}") },
                flags: mine.len(),
                sum: mine.iter().map(|f| f.value.clone()).sum(),
                chain,
            }
        })
        .collect()
}

pub fn verify_proof_folded(p: &Polytope, seed: u64) -> Result<FoldedReport> {
    verify_proof_folded_with(p, sample_transversal(p, seed)?, seed, Strategy::default())
}

pub fn verify_proof_folded_with(
    p: &Polytope,
    tr: Transversal,
    seed: u64,
    strategy: Strategy,
) -> Result<FoldedReport> {
    if p.dim() < 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: p.dim(),
        });
    }
    let k = p.dim() - 1;
    let flags = fold_flags(p, &tr, strategy)?;
    let shadows = facet_shadows(p, &tr, strategy)?;
    let criterion_error = check_facet_criterion(p, &tr, &flags, &shadows).err();
    let facets = facet_assignment_sums(p, &tr, &flags, &shadows);

    let fv = f_vector(p.lattice());
    let total: Rational = flags.iter().map(|f| f.value.clone()).sum();
    let total_by_facets: Rational = facets.iter().map(|t| t.sum.clone()).sum();
    let pair_sum = &facets[tr.pair.0].sum + &facets[tr.pair.1].sum;
    let sign = Rational::sign_power(k);
    let expected_total = Rational::one() - &sign - sign * Rational::from(fv.get(k) as i64 - 2);
    let (lhs, rhs) = identity_sides(&fv);
    let pass = criterion_error.is_none()
        && facets.iter().all(Tally::consistent)
        && pair_sum == Rational::one() - Rational::sign_power(k)
        && [&total_by_facets, &expected_total, &lhs, &rhs].iter().all(|x| **x == total);
    Ok(FoldedReport {
        seed,
        k,
        transversal: tr,
        f_vector: fv,
        flags: flags.len(),
        facets,
        pair_sum,
        total,
        total_by_facets,
        expected_total,
        lhs,
        rhs,
        criterion_error,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::{generate, Family};

    #[test]
    fn square_pair_of_opposite_sides() {
        let sq = generate(&Family::Hypercube(2), 0).unwrap();
        let r = verify_proof_folded(&sq, 4).unwrap();
        assert!(r.pass, "{r:?}");
        assert_eq!(r.flags, 8);
        assert_eq!(r.total, Rational::from(4));
    }

    #[test]
    fn cube_pair_sums_to_zero() {
        let cube = generate(&Family::Hypercube(3), 0).unwrap();
        for seed in 0..3 {
            let r = verify_proof_folded(&cube, seed).unwrap();
            assert!(r.pass, "{r:?}");
            assert_eq!(r.pair_sum, Rational::zero());
            for (i, t) in r.facets.iter().enumerate() {
                if !r.transversal.in_pair(i) {
                    assert_eq!(t.sum, Rational::from(-1));
                }
            }
            assert_eq!(r.total, Rational::from(-4));
        }
    }

    #[test]
    fn hits_off_the_pair_are_outside() {
        let tet = generate(&Family::Simplex(3), 0).unwrap();
        let tr = sample_transversal_for_pair(&tet, (0, 3), 11).unwrap();
        for (i, t) in tr.hits.iter().enumerate() {
            assert_eq!(tet.contains(t), tr.in_pair(i));
        }
    }

    #[test]
    fn same_facet_twice_is_rejected() {
        let tet = generate(&Family::Simplex(3), 0).unwrap();
        assert!(sample_transversal_for_pair(&tet, (1, 1), 0).is_err());
        assert!(sample_transversal_for_pair(&tet, (1, 9), 0).is_err());
    }
}
