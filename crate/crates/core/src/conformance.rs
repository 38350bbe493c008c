//! End-to-end checks over the built-in families, shared by the acceptance
//! tests and `eulerlab selftest`. Every check is exact.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::euler::{check_euler, euler_alternating_sum, f_vector};
use crate::exact::Rational;
use crate::folded_proof::{
    facet_polytope, fold_flags, sample_transversal, sample_transversal_for_pair, verify_proof_folded_with, FoldedReport,
};
use crate::polytope::{brute_force_face_lattice, generate, Family, Polytope, VertexSet, DEFAULT_ORACLE_BOUND};
use crate::projection::{project_from_point_onto, schlegel, screen_between, Shadow};
use crate::schlegel_proof::{
    check_projection_criterion, classify_flag, place_flags, sample_general_line, shadows_along, verify_proof_schlegel,
    Bin, Flag,
};
use crate::svg::schlegel_svg;
use crate::Strategy;

pub const EULER_TIME_LIMIT: Duration = Duration::from_secs(60);

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CriterionOutcome {
    pub id: u8,
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

impl std::fmt::Display for CriterionOutcome {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let verdict = if self.pass { "PASS" } else { "FAIL" };
        write!(f, "[{verdict}] {:>2} {}: {}", self.id, self.name, self.detail)
    }
}

pub type Check = fn() -> CriterionOutcome;

pub const CRITERIA: [Check; 11] = [
    euler_on_families,
    oracle_equivalence,
    tesseract_schlegel,
    schlegel_small_cases,
    projection_criterion,
    folded_sums,
    transversal_hits,
    general_position_d3,
    screen_independence,
    seed_invariance,
    diagram_output,
];

pub fn run_all() -> Vec<CriterionOutcome> {
    CRITERIA.iter().map(|c| c()).collect()
}

fn outcome(id: u8, name: &'static str, result: std::result::Result<String, String>) -> CriterionOutcome {
    match result {
        Ok(detail) => CriterionOutcome {
            id,
            name,
            pass: true,
            detail,
        },
        Err(detail) => CriterionOutcome {
            id,
            name,
            pass: false,
            detail,
        },
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: Error) -> String {
    e.to_string()
}

/// The random polytope file used throughout: `8 + seed mod 5` points with
/// coordinates in `[-10, 10]`.
pub fn random_family(dim: usize, seed: u64) -> Family {
    Family::Random {
        dim,
        points: 8 + (seed % 5) as usize,
        bound: 10,
    }
}

fn fixed_families(dims: std::ops::RangeInclusive<usize>) -> Vec<Family> {
    dims.flat_map(|d| [Family::Simplex(d), Family::Hypercube(d), Family::CrossPolytope(d)])
        .collect()
}

fn euler_on_families() -> CriterionOutcome {
    let start = Instant::now();
    let run = || -> std::result::Result<String, String> {
        let mut count = 0;
        let mut kinds: Vec<(Family, u64)> = fixed_families(1..=6).into_iter().map(|f| (f, 0)).collect();
        for d in [3, 4] {
            kinds.extend((0..20).map(|s| (random_family(d, s), s)));
        }
        for (kind, seed) in kinds {
            let p = generate(&kind, seed).map_err(err)?;
            let f = f_vector(p.lattice());
            let sum = euler_alternating_sum(&f);
            ensure(sum == 1 && check_euler(&p), || format!("{kind} seed {seed}: f = {f}, sum {sum}"))?;
            count += 1;
        }
        let elapsed = start.elapsed();
        ensure(elapsed < EULER_TIME_LIMIT, || format!("took {elapsed:?}"))?;
        Ok(format!("{count} polytopes in {:.1}s", elapsed.as_secs_f64()))
    };
    outcome(1, "Euler–Poincaré on families", run())
}

fn oracle_equivalence() -> CriterionOutcome {
    let run = || -> std::result::Result<String, String> {
        let mut kinds: Vec<(Family, u64)> = fixed_families(1..=6).into_iter().map(|f| (f, 0)).collect();
        for d in [2, 3, 4] {
            kinds.extend((0..10).map(|s| (random_family(d, s), s)));
        }
        let mut count = 0;
        for (kind, seed) in kinds {
            let p = generate(&kind, seed).map_err(err)?;
            if p.vertex_count() > DEFAULT_ORACLE_BOUND {
                continue;
            }
            let oracle = brute_force_face_lattice(&p).map_err(err)?;
            ensure(oracle == *p.lattice(), || format!("{kind} seed {seed}: lattices differ"))?;
            ensure(p.lattice().diamond_violation().is_none(), || format!("{kind} seed {seed}: not a diamond"))?;
            count += 1;
        }
        Ok(format!("{count} polytopes with ≤ {DEFAULT_ORACLE_BOUND} vertices agree"))
    };
    outcome(2, "face lattice equals brute-force oracle", run())
}

fn tesseract_schlegel() -> CriterionOutcome {
    let run = || -> std::result::Result<String, String> {
        let p = generate(&Family::Hypercube(4), 0).map_err(err)?;
        for facet in [0, 5] {
            for seed in 0..5 {
                let r = verify_proof_schlegel(&p, facet, seed).map_err(err)?;
                let tag = format!("facet {facet} seed {seed}");
                ensure(r.pass, || format!("{tag}: report fails"))?;
                ensure(r.cells.len() == 7, || format!("{tag}: {} cells", r.cells.len()))?;
                ensure(r.cells.iter().all(|t| t.sum == Rational::one()), || format!("{tag}: cell sums"))?;
                ensure(r.outside.sum == Rational::one(), || format!("{tag}: outside {}", r.outside.sum))?;
                ensure(r.total == Rational::from(8), || format!("{tag}: total {}", r.total))?;
            }
        }
        Ok("7 cells at +1, outside +1, total 8 for 2 facets × 5 seeds".into())
    };
    outcome(3, "4-cube Schlegel split", run())
}

fn schlegel_small_cases() -> CriterionOutcome {
    let run = || -> std::result::Result<String, String> {
        let cases = [
            (Family::Hypercube(3), -4, -1),
            (Family::Simplex(3), -2, -1),
            (Family::Simplex(4), 5, 1),
        ];
        let mut seen = Vec::new();
        for (kind, total, cell) in cases {
            let p = generate(&kind, 0).map_err(err)?;
            for seed in 0..3 {
                let r = verify_proof_schlegel(&p, 0, seed).map_err(err)?;
                ensure(r.pass, || format!("{kind} seed {seed}: report fails"))?;
                ensure(r.total == Rational::from(total), || format!("{kind}: total {}", r.total))?;
                ensure(r.cells.iter().all(|t| t.sum == Rational::from(cell)), || format!("{kind}: cell sums"))?;
            }
            seen.push(format!("{kind} → {total}"));
        }
        Ok(seen.join(", "))
    };
    outcome(4, "Schlegel totals on small cases", run())
}

fn projection_criterion() -> CriterionOutcome {
    let run = || -> std::result::Result<String, String> {
        let mut checked = 0;
        let mut polytopes: Vec<Polytope> = [
            Family::Hypercube(4),
            Family::Hypercube(3),
            Family::Simplex(3),
            Family::Simplex(4),
            Family::CrossPolytope(4),
        ]
            .iter()
            .map(|k| generate(k, 0))
            .collect::<Result<_>>()
            .map_err(err)?;
        for s in 0..5 {
            polytopes.push(generate(&random_family(3, s), s).map_err(err)?);
            polytopes.push(generate(&random_family(4, s), s).map_err(err)?);
        }
        for p in &polytopes {
            for facet in 0..p.facets().len() {
                let cx = schlegel(p, facet).map_err(err)?;
                let u = sample_general_line(&cx, facet as u64).map_err(err)?.direction;
                let flags = place_flags(&cx);
                let assignment: Vec<(Flag, Bin)> = flags
                    .iter()
                    .map(|f| classify_flag(&cx, &u, f).map(|b| (f.clone(), b)))
                    .collect::<Result<_>>()
                    .map_err(err)?;
                let mut shadows = shadows_along(&cx, &u, Strategy::default()).map_err(err)?;
                check_projection_criterion(&cx, &assignment, &shadows)?;
                checked += shadows.iter().map(|s| s.face_image.len()).sum::<usize>();
                // every prediction below the facets is consulted: flipping one must be caught
                if facet == 0 {
                    for si in 0..shadows.len() {
                        let region = if si < cx.cells.len() { &cx.cells[si] } else { &cx.carrier };
                        let lattice = region.polytope.lattice();
                        let consulted: Vec<VertexSet> =
                            (0..cx.k() - 1).flat_map(|c| lattice.faces(c).iter().map(|f| f.vertices.clone())).collect();
                        for key in consulted {
                            let flip = |shadows: &mut [Shadow]| {
                                let entry = shadows[si].face_image.get_mut(&key).unwrap();
                                *entry = !*entry;
                            };
                            flip(&mut shadows);
                            let caught = check_projection_criterion(&cx, &assignment, &shadows).is_err();
                            flip(&mut shadows);
                            ensure(caught, || format!("flip of {key:?} in region {si} unnoticed"))?;
                        }
                    }
                }
            }
            for seed in 0..3 {
                let tr = sample_transversal(p, seed).map_err(err)?;
                let r = verify_proof_folded_with(p, tr, seed, Strategy::default()).map_err(err)?;
                ensure(r.criterion_error.is_none(), || r.criterion_error.clone().unwrap())?;
            }
        }
        Ok(format!("{} polytopes, {checked} face predictions matched", polytopes.len()))
    };
    outcome(5, "projection criterion on every face", run())
}

fn folded_case(
    p: &Polytope,
    pair: Option<(usize, usize)>,
    seed: u64,
    pair_sum: i64,
    other: i64,
    total: i64,
) -> std::result::Result<FoldedReport, String> {
    let tr = match pair {
        Some(pair) => sample_transversal_for_pair(p, pair, seed),
        None => sample_transversal(p, seed),
    }
    .map_err(err)?;
    let r = verify_proof_folded_with(p, tr, seed, Strategy::default()).map_err(err)?;
    let tag = format!("pair {:?} seed {seed}", r.transversal.pair);
    ensure(r.pass, || format!("{tag}: report fails"))?;
    ensure(r.pair_sum == Rational::from(pair_sum), || format!("{tag}: pair sum {}", r.pair_sum))?;
    for (i, t) in r.facets.iter().enumerate() {
        if !r.transversal.in_pair(i) {
            ensure(t.sum == Rational::from(other), || format!("{tag}: facet {i} sum {}", t.sum))?;
        }
    }
    ensure(r.total == Rational::from(total), || format!("{tag}: total {}", r.total))?;
    Ok(r)
}

/// `(polytope, pair, seed, pair sum, other facets, total)`; `None` lets the
/// seed pick the pair.
type FoldedCase = (Family, Option<(usize, usize)>, u64, i64, i64, i64);

fn folded_battery() -> Vec<FoldedCase> {
    let mut cases = Vec::new();
    for seed in 0..5 {
        // one fixed pair and one drawn from the seed
        cases.push((Family::Hypercube(4), Some((0, 1)), seed, 2, 1, 8));
        cases.push((Family::Hypercube(4), None, seed, 2, 1, 8));
        cases.push((Family::Hypercube(3), None, seed, 0, -1, -4));
        cases.push((Family::Simplex(4), None, seed, 2, 1, 5));
    }
    cases
}

fn folded_sums() -> CriterionOutcome {
    let run = || -> std::result::Result<String, String> {
        let mut pairs = BTreeSet::new();
        for (kind, pair, seed, pair_sum, other, total) in folded_battery() {
            let p = generate(&kind, 0).map_err(err)?;
            let r = folded_case(&p, pair, seed, pair_sum, other, total).map_err(|e| format!("{kind}: {e}"))?;
            if kind == Family::Hypercube(4) {
                pairs.insert(r.transversal.pair);
            }
        }
        ensure(pairs.len() >= 2, || "4-cube saw fewer than 2 pairs".into())?;
        Ok(format!(
            "4-cube 2 + 6·1 = 8 over {} pairs, 3-cube 0 + 4·(−1) = −4, 4-simplex 2 + 3·1 = 5",
            pairs.len()
        ))
    };
    outcome(6, "folded facet sums", run())
}

fn transversal_hits() -> CriterionOutcome {
    let run = || -> std::result::Result<String, String> {
        let mut lines = 0;
        for (kind, pair, seed, ..) in folded_battery() {
            let p = generate(&kind, 0).map_err(err)?;
            let tr = match pair {
                Some(pair) => sample_transversal_for_pair(&p, pair, seed),
                None => sample_transversal(&p, seed),
            }
            .map_err(err)?;
            for (i, t) in tr.hits.iter().enumerate() {
                let on_facet = p.facets()[i].plane.contains(t);
                let in_facet = on_facet && p.contains(t);
                ensure(on_facet && in_facet == tr.in_pair(i), || format!("{kind} seed {seed}: facet {i}"))?;
                if tr.in_pair(i) {
                    ensure(p.active_facets(t) == [i], || format!("{kind} seed {seed}: t{i} not relative interior"))?;
                }
            }
            lines += 1;
        }
        Ok(format!("{lines} lines: t_i ∈ T_i exactly for the pair"))
    };
    outcome(7, "transversal hit points", run())
}

fn general_position_d3() -> CriterionOutcome {
    let run = || -> std::result::Result<String, String> {
        let runs = 100;
        for seed in 0..runs {
            let p = generate(&random_family(3, seed), seed).map_err(err)?;
            let facet = (seed as usize) % p.facets().len();
            let r = verify_proof_schlegel(&p, facet, seed).map_err(|e| format!("seed {seed}: {e}"))?;
            ensure(r.pass, || format!("seed {seed}: Schlegel report fails"))?;
            let tr = sample_transversal(&p, seed).map_err(|e| format!("seed {seed}: {e}"))?;
            fold_flags(&p, &tr, Strategy::default()).map_err(|e| format!("seed {seed}: {e}"))?;
        }
        Ok(format!("{runs} random 3-polytopes, no ambiguous flag"))
    };
    outcome(8, "general position in d = 3", run())
}

fn screen_independence() -> CriterionOutcome {
    let run = || -> std::result::Result<String, String> {
        let mut instances = 0;
        let mut screens = 0;
        let sources = [
            generate(&Family::Hypercube(4), 0),
            generate(&Family::Simplex(4), 0),
            generate(&random_family(4, 3), 3),
        ];
        'outer: for (si, p) in sources.into_iter().enumerate() {
            let p = p.map_err(err)?;
            let tr = sample_transversal(&p, si as u64).map_err(err)?;
            for i in (0..p.facets().len()).filter(|&i| !tr.in_pair(i)) {
                let t = facet_polytope(&p, i).map_err(err)?;
                let apex = t.polytope.frame().local_point(&tr.hits[i]).map_err(err)?;
                let mut families = BTreeSet::new();
                for (fi, f) in t.polytope.facets().iter().enumerate() {
                    if !f.plane.eval(&apex).is_positive() {
                        continue;
                    }
                    for frac in [Rational::new(1, 3), Rational::new(1, 2), Rational::new(4, 5)] {
                        let screen = screen_between(&t.polytope, &apex, fi, &frac).map_err(err)?;
                        let shadow = project_from_point_onto(&t.polytope, &tr.hits[i], &screen).map_err(err)?;
                        families.insert((shadow.label_families(), shadow.face_image.clone()));
                        screens += 1;
                    }
                }
                ensure(families.len() == 1, || format!("source {si} facet {i}: {} distinct shadows", families.len()))?;
                instances += 1;
                if instances == 10 {
                    break 'outer;
                }
            }
        }
        ensure(instances == 10, || format!("only {instances} instances"))?;
        Ok(format!("{instances} instances, {screens} screens, one shadow lattice each"))
    };
    outcome(9, "screen independence", run())
}

fn seed_invariance() -> CriterionOutcome {
    let run = || -> std::result::Result<String, String> {
        for kind in [Family::Hypercube(4), Family::Hypercube(3), Family::Simplex(3), Family::Simplex(4)] {
            let p = generate(&kind, 0).map_err(err)?;
            let mut schlegel_sums = BTreeSet::new();
            let mut folded_sums = BTreeSet::new();
            for seed in 0..5 {
                let a = verify_proof_schlegel(&p, 0, seed).map_err(err)?;
                let b = verify_proof_schlegel(&p, 0, seed).map_err(err)?;
                ensure(a == b, || format!("{kind} seed {seed}: Schlegel rerun differs"))?;
                let seq = crate::schlegel_proof::verify_proof_schlegel_with(&p, 0, seed, Strategy::Sequential)
                    .map_err(err)?;
                ensure(a == seq, || format!("{kind} seed {seed}: strategies differ"))?;
                schlegel_sums.insert((a.cells.iter().map(|t| t.sum.clone()).collect::<Vec<_>>(), a.outside.sum, a.total));

                let f1 = crate::folded_proof::verify_proof_folded(&p, seed).map_err(err)?;
                let f2 = crate::folded_proof::verify_proof_folded(&p, seed).map_err(err)?;
                ensure(f1 == f2, || format!("{kind} seed {seed}: folded rerun differs"))?;
                let others: BTreeSet<Rational> = f1
                    .facets
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| !f1.transversal.in_pair(*i))
                    .map(|(_, t)| t.sum.clone())
                    .collect();
                folded_sums.insert((f1.pair_sum, others, f1.total));
            }
            ensure(schlegel_sums.len() == 1, || format!("{kind}: Schlegel sums vary with the seed"))?;
            ensure(folded_sums.len() == 1, || format!("{kind}: folded sums vary with the seed"))?;
        }
        Ok("sums identical over 5 seeds, reruns and strategies reproduce".into())
    };
    outcome(10, "seed invariance", run())
}

fn diagram_output() -> CriterionOutcome {
    let run = || -> std::result::Result<String, String> {
        let tess = generate(&Family::Hypercube(4), 0).map_err(err)?;
        let a = schlegel_svg(&schlegel(&tess, 0).map_err(err)?).map_err(err)?;
        let b = schlegel_svg(&schlegel(&tess, 0).map_err(err)?).map_err(err)?;
        ensure(a == b, || "4-cube diagram not reproducible".into())?;
        let marks = a.matches(r#"class="vertex""#).count();
        let edges = a.matches(r#"class="edge""#).count();
        ensure(marks == 16 && edges == 32, || format!("4-cube: {marks} vertices, {edges} edges"))?;
        let cube = generate(&Family::Hypercube(3), 0).map_err(err)?;
        let c = schlegel_svg(&schlegel(&cube, 0).map_err(err)?).map_err(err)?;
        let cells = c.matches(r#"class="cell""#).count();
        ensure(cells == 5, || format!("3-cube: {cells} cells"))?;
        Ok("4-cube 16 vertices / 32 edges, 3-cube 5 cells, byte-identical reruns".into())
    };
    outcome(11, "Schlegel SVG", run())
}
