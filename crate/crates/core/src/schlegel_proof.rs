//! Flag counting on a Schlegel diagram.
//!
//! Every face `G` of the complex with `dim G < k` carries the two flags
//! `(x_G, ±u)` of value `½(−1)^{dim G}`, where `x_G` is its vertex
//! barycenter and `u` a general direction. Each flag points into exactly one
//! cell or out of the carrier. Summing per bin with the shadows along `u`
//! gives `(−1)^{k−1}` per cell and `1` outside.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::euler::{f_vector, FVector};
use crate::exact::{rank, Rational, Vector};
use crate::flags::{expected_flags, half_alternating, identity_sides, Tally};
use crate::par::Strategy;
use crate::polytope::Polytope;
use crate::projection::{project_along, schlegel, LabelledPolytope, SchlegelComplex, Shadow};

pub const DIRECTION_BUDGET: usize = 256;

/// A direction in carrier coordinates not parallel to any complex face of
/// positive dimension below `k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneralLine {
    pub direction: Vector,
    pub attempts: usize,
}

/// `u ∉ dir(G)` for every complex face `G` with `1 ≤ dim G < k`.
pub fn is_general(cx: &SchlegelComplex, u: &Vector) -> bool {
    !u.is_zero()
        && cx.faces.iter().filter(|g| g.dim > 0).all(|g| {
            let ids = g.vertices.to_vec();
            let base = &cx.positions[ids[0]];
            let mut rows: Vec<Vector> = ids[1..].iter().map(|&i| &cx.positions[i] - base).collect();
            rows.push(u.clone());
            rank(&rows) == g.dim + 1
        })
}

/// Draws integer directions from `[-r, r]^k`, `r = 4` doubling every 32
/// attempts, until one is general.
pub fn sample_general_line(cx: &SchlegelComplex, seed: u64) -> Result<GeneralLine> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut range = 4i64;
    for attempt in 0..DIRECTION_BUDGET {
        if attempt > 0 && attempt % 32 == 0 {
            range *= 2;
        }
        let direction =
            Vector::new((0..cx.k()).map(|_| Rational::from(rng.random_range(-range..=range))).collect());
        if is_general(cx, &direction) {
            return Ok(GeneralLine {
                direction,
                attempts: attempt + 1,
            });
        }
    }
    Err(Error::NoGeneralDirection(DIRECTION_BUDGET))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Flag {
    /// Index into [`SchlegelComplex::faces`].
    pub face: usize,
    /// `+u` if true, `−u` otherwise.
    pub forward: bool,
    pub value: Rational,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Bin {
    /// Index into [`SchlegelComplex::cells`].
    Cell(usize),
    Outside,
}

pub fn place_flags(cx: &SchlegelComplex) -> Vec<Flag> {
    cx.faces
        .iter()
        .enumerate()
        .flat_map(|(i, g)| {
            [true, false].map(|forward| Flag {
                face: i,
                forward,
                value: Rational::half_sign(g.dim),
            })
        })
        .collect()
}

/// The unique cell whose tangent cone at the base point holds the flag's
/// direction, or `Outside` when the carrier's does not either.
pub fn classify_flag(cx: &SchlegelComplex, u: &Vector, flag: &Flag) -> Result<Bin> {
    let x = &cx.faces[flag.face].base_point;
    let dir = if flag.forward { u.clone() } else { u.scale(&-Rational::one()) };
    let hits: Vec<usize> = (0..cx.cells.len())
        .filter(|&c| cx.cells[c].polytope.tangent_cone_contains(x, &dir))
        .collect();
    match hits[..] {
        [c] => Ok(Bin::Cell(c)),
        [] if cx.carrier.polytope.tangent_cone_contains(x, &dir) => Err(Error::GeneralPositionViolated(
            format!("flag {:?} enters the carrier but no cell", cx.faces[flag.face].vertices),
        )),
        [] => Ok(Bin::Outside),
        _ => Err(Error::GeneralPositionViolated(format!(
            "flag {:?} enters cells {hits:?}",
            cx.faces[flag.face].vertices
        ))),
    }
}

fn flag_counts(cx: &SchlegelComplex, assignment: &[(Flag, Bin)], bin: Bin) -> Vec<usize> {
    let mut counts = vec![0; cx.faces.len()];
    for (flag, b) in assignment {
        if *b == bin {
            counts[flag.face] += 1;
        }
    }
    counts
}

fn check_region(
    cx: &SchlegelComplex,
    region: &LabelledPolytope,
    shadow: &Shadow,
    counts: &[usize],
    outward: bool,
    name: &str,
) -> std::result::Result<(), String> {
    let k = cx.k();
    let lattice = region.polytope.lattice();
    let mut covered = vec![false; cx.faces.len()];
    for c in 0..k {
        for face in lattice.faces(c) {
            let labels = region.to_parent(&face.vertices);
            let gi = cx
                .face_index(&labels)
                .ok_or_else(|| format!("{name} face {labels:?} missing from the complex"))?;
            covered[gi] = true;
            let inward = expected_flags(c, k, shadow, &face.vertices);
            let want = if outward { 2 - inward } else { inward };
            if counts[gi] != want {
                return Err(format!(
                    "{name}: face {labels:?} holds {} flags, shadow predicts {want}",
                    counts[gi]
                ));
            }
        }
    }
    if let Some(gi) = (0..cx.faces.len()).find(|&g| !covered[g] && counts[g] > 0) {
        return Err(format!("{name}: flag at {:?}, not a face of it", cx.faces[gi].vertices));
    }
    Ok(())
}

/// Compares every bin's flags with what the shadows along the line predict.
/// `shadows[i]` belongs to cell `i`; the last entry to the carrier.
pub fn check_projection_criterion(
    cx: &SchlegelComplex,
    assignment: &[(Flag, Bin)],
    shadows: &[Shadow],
) -> std::result::Result<(), String> {
    if shadows.len() != cx.cells.len() + 1 {
        return Err(format!("{} shadows for {} cells", shadows.len(), cx.cells.len()));
    }
    for (ci, cell) in cx.cells.iter().enumerate() {
        let counts = flag_counts(cx, assignment, Bin::Cell(ci));
        check_region(cx, cell, &shadows[ci], &counts, false, &format!("cell {ci}"))?;
    }
    let counts = flag_counts(cx, assignment, Bin::Outside);
    check_region(cx, &cx.carrier, &shadows[cx.cells.len()], &counts, true, "outside")
}

/// Shadows along `u` of every cell, then of the carrier.
pub fn shadows_along(cx: &SchlegelComplex, u: &Vector, strategy: Strategy) -> Result<Vec<Shadow>> {
    let regions: Vec<&LabelledPolytope> = cx.cells.iter().chain([&cx.carrier]).collect();
    strategy.try_map(&regions, |r| project_along(&r.polytope, u))
}

pub fn verify_projection_criterion(
    cx: &SchlegelComplex,
    u: &Vector,
    assignment: &[(Flag, Bin)],
) -> Result<std::result::Result<(), String>> {
    let shadows = shadows_along(cx, u, Strategy::default())?;
    Ok(check_projection_criterion(cx, assignment, &shadows))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SchlegelReport {
    pub facet: usize,
    pub seed: u64,
    pub k: usize,
    pub direction: Vector,
    pub f_vector: FVector,
    pub flags: usize,
    /// One tally per cell, in cell order; labels name the source facet.
    pub cells: Vec<Tally>,
    pub outside: Tally,
    /// `(−1)^{k−1}`.
    pub expected_per_cell: Rational,
    pub expected_outside: Rational,
    /// Sum over all flags.
    pub total: Rational,
    /// Sum of the bin tallies.
    pub total_by_bins: Rational,
    /// `(−1)^{k−1}·(cells) + 1`.
    pub expected_total: Rational,
    pub lhs: Rational,
    pub rhs: Rational,
    /// First failed invariant of the diagram itself, see [`SchlegelComplex::validate`].
    pub complex_error: Option<String>,
    pub criterion_error: Option<String>,
    pub pass: bool,
}

pub fn verify_proof_schlegel(p: &Polytope, facet: usize, seed: u64) -> Result<SchlegelReport> {
    verify_proof_schlegel_with(p, facet, seed, Strategy::default())
}

pub fn verify_proof_schlegel_with(
    p: &Polytope,
    facet: usize,
    seed: u64,
    strategy: Strategy,
) -> Result<SchlegelReport> {
    let cx = schlegel(p, facet)?;
    let complex_error = cx.validate(p).err();
    let line = sample_general_line(&cx, seed)?;
    let u = &line.direction;
    let k = cx.k();
    let flags = place_flags(&cx);
    let bins = strategy.try_map(&flags, |f| classify_flag(&cx, u, f))?;
    let assignment: Vec<(Flag, Bin)> = flags.into_iter().zip(bins).collect();
    let shadows = shadows_along(&cx, u, strategy)?;
    let criterion_error = check_projection_criterion(&cx, &assignment, &shadows).err();

    let tally = |bin: Bin, label: String, chain: Vec<Rational>| {
        let mine: Vec<&Flag> = assignment.iter().filter(|(_, b)| *b == bin).map(|(f, _)| f).collect();
        Tally {
            label,
            flags: mine.len(),
            sum: mine.iter().map(|f| f.value.clone()).sum(),
            chain,
        }
    };
    let half = Rational::new(1, 2);
    let cells: Vec<Tally> = cx
        .cells
        .iter()
        .enumerate()
        .map(|(ci, cell)| {
            let f = cell.polytope.lattice().counts();
            let g = shadows[ci].polytope.lattice().counts();
            let chain = vec![
                half_alternating(&f, k) - half_alternating(&g, k - 1),
                &half * (Rational::one() - Rational::sign_power(k) * Rational::from(f[k]))
                    - &half * (Rational::one() - Rational::sign_power(k - 1) * Rational::from(g[k - 1])),
                Rational::sign_power(k - 1),
            ];
            tally(Bin::Cell(ci), format!("facet {}", cx.cell_origin[ci]), chain)
        })
        .collect();
    let outside = {
        let f = cx.carrier.polytope.lattice().counts();
        let g = shadows[cx.cells.len()].polytope.lattice().counts();
        let merged: Vec<usize> = (0..k - 1).map(|c| f[c] + g[c]).collect();
        let chain = vec![
            half_alternating(&merged, k - 1) + Rational::half_sign(k - 1) * Rational::from(f[k - 1]),
            &half * (Rational::one() - Rational::sign_power(k)) + &half * (Rational::one() - Rational::sign_power(k - 1)),
            Rational::one(),
        ];
        tally(Bin::Outside, "outside".into(), chain)
    };

    let total: Rational = assignment.iter().map(|(f, _)| f.value.clone()).sum();
    let total_by_bins: Rational = cells.iter().map(|t| t.sum.clone()).sum::<Rational>() + &outside.sum;
    let expected_total = Rational::sign_power(k - 1) * Rational::from(cx.cells.len()) + Rational::one();
    let fv = f_vector(p.lattice());
    let (lhs, rhs) = identity_sides(&fv);
    let expected_per_cell = Rational::sign_power(k - 1);
    let expected_outside = Rational::one();
    let pass = complex_error.is_none()
        && criterion_error.is_none()
        && cells.iter().all(|t| t.consistent() && t.sum == expected_per_cell)
        && outside.consistent()
        && outside.sum == expected_outside
        && [&total_by_bins, &expected_total, &lhs, &rhs].iter().all(|x| **x == total);
    Ok(SchlegelReport {
        facet,
        seed,
        k,
        direction: line.direction,
        f_vector: fv,
        flags: assignment.len(),
        cells,
        outside,
        expected_per_cell,
        expected_outside,
        total,
        total_by_bins,
        expected_total,
        lhs,
        rhs,
        complex_error,
        criterion_error,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::{generate, Family};

    #[test]
    fn cube_split() {
        let cube = generate(&Family::Hypercube(3), 0).unwrap();
        let r = verify_proof_schlegel(&cube, 0, 1).unwrap();
        assert!(r.pass, "{r:?}");
        assert_eq!(r.flags, 40);
        assert_eq!(r.cells.len(), 5);
        assert!(r.cells.iter().all(|t| t.sum == Rational::from(-1)));
        assert_eq!(r.outside.sum, Rational::one());
        assert_eq!(r.total, Rational::from(-4));
    }

    #[test]
    fn every_flag_lands_once() {
        let tet = generate(&Family::Simplex(3), 0).unwrap();
        let cx = schlegel(&tet, 0).unwrap();
        let line = sample_general_line(&cx, 9).unwrap();
        let flags = place_flags(&cx);
        assert_eq!(flags.len(), 2 * (4 + 6));
        for f in &flags {
            classify_flag(&cx, &line.direction, f).unwrap();
        }
    }

    #[test]
    fn direction_along_an_edge_is_rejected() {
        let cube = generate(&Family::Hypercube(3), 0).unwrap();
        let cx = schlegel(&cube, 0).unwrap();
        let g = cx.faces.iter().find(|g| g.dim == 1).unwrap();
        let ids = g.vertices.to_vec();
        let along = &cx.positions[ids[1]] - &cx.positions[ids[0]];
        assert!(!is_general(&cx, &along));
        assert!(!is_general(&cx, &Vector::zeros(2)));
    }

    #[test]
    fn tampered_shadow_breaks_criterion() {
        let cube = generate(&Family::Hypercube(3), 0).unwrap();
        let cx = schlegel(&cube, 0).unwrap();
        let u = sample_general_line(&cx, 3).unwrap().direction;
        let flags = place_flags(&cx);
        let assignment: Vec<(Flag, Bin)> =
            flags.iter().map(|f| (f.clone(), classify_flag(&cx, &u, f).unwrap())).collect();
        let mut shadows = shadows_along(&cx, &u, Strategy::Sequential).unwrap();
        assert_eq!(check_projection_criterion(&cx, &assignment, &shadows), Ok(()));
        let key = shadows[0].face_image.keys().find(|f| f.len() == 1).unwrap().clone();
        let entry = shadows[0].face_image.get_mut(&key).unwrap();
        *entry = !*entry;
        assert!(check_projection_criterion(&cx, &assignment, &shadows).is_err());
    }
}
