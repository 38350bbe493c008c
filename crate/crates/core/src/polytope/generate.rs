use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{build_polytope, Polytope};
use crate::error::{Error, Result};
use crate::exact::{affine_dimension, Vector};

/// Retry budget for re-sampling degenerate random point sets.
pub const RANDOM_RETRIES: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    Simplex(usize),
    Hypercube(usize),
    CrossPolytope(usize),
    Random { dim: usize, points: usize, bound: i64 },
}

impl Family {
    pub fn dim(&self) -> usize {
        match *self {
            Family::Simplex(d) | Family::Hypercube(d) | Family::CrossPolytope(d) => d,
            Family::Random { dim, .. } => dim,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Simplex(d) => write!(f, "simplex:{d}"),
            Family::Hypercube(d) => write!(f, "cube:{d}"),
            Family::CrossPolytope(d) => write!(f, "crosspolytope:{d}"),
            Family::Random { dim, points, bound } => write!(f, "random:{dim},{points},{bound}"),
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    /// `simplex:d`, `cube:d`, `crosspolytope:d` or `random:d,n,bound`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::BadFamily(s.to_string());
        let (kind, args) = s.trim().split_once(':').ok_or_else(bad)?;
        let nums: Vec<i64> = args
            .split(',')
            .map(|a| a.trim().parse::<i64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| bad())?;
        let dim = |i: usize| -> Result<usize> {
            let v = *nums.get(i).ok_or_else(bad)?;
            usize::try_from(v).map_err(|_| bad())
        };
        match (kind, nums.len()) {
            ("simplex", 1) => Ok(Family::Simplex(dim(0)?)),
            ("cube" | "hypercube", 1) => Ok(Family::Hypercube(dim(0)?)),
            ("crosspolytope" | "cross", 1) => Ok(Family::CrossPolytope(dim(0)?)),
            ("random", 3) => Ok(Family::Random {
                dim: dim(0)?,
                points: dim(1)?,
                bound: nums[2],
            }),
            _ => Err(bad()),
        }
    }
}

/// Point list defining the family member; `seed` matters only for `Random`.
pub fn family_points(kind: &Family, seed: u64) -> Result<Vec<Vector>> {
    let d = kind.dim();
    if d == 0 {
        return Err(Error::Unsatisfiable("dimension must be at least 1".into()));
    }
    let points = match *kind {
        Family::Simplex(d) => std::iter::once(Vector::zeros(d))
            .chain((0..d).map(|i| Vector::unit(d, i)))
            .collect(),
        Family::Hypercube(d) => {
            if d > 16 {
                return Err(Error::Unsatisfiable(format!("cube:{d} is too large")));
            }
            (0..1u64 << d)
                .map(|mask| {
                    let c: Vec<i64> = (0..d).map(|i| ((mask >> i) & 1) as i64).collect();
                    Vector::from_ints(&c)
                })
                .collect()
        }
        Family::CrossPolytope(d) => (0..d)
            .flat_map(|i| {
                let e = Vector::unit(d, i);
                let neg = e.scale(&-crate::exact::Rational::one());
                [e, neg]
            })
            .collect(),
        Family::Random { dim, points, bound } => random_points(dim, points, bound, seed)?,
    };
    Ok(points)
}

fn random_points(dim: usize, count: usize, bound: i64, seed: u64) -> Result<Vec<Vector>> {
    if count < dim + 1 {
        return Err(Error::Unsatisfiable(format!(
            "{count} points cannot span dimension {dim}"
        )));
    }
    if bound < 1 {
        return Err(Error::Unsatisfiable("coordinate bound must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..RANDOM_RETRIES {
        let pts: Vec<Vector> = (0..count)
            .map(|_| {
                let c: Vec<i64> = (0..dim).map(|_| rng.random_range(-bound..=bound)).collect();
                Vector::from_ints(&c)
            })
            .collect();
        if affine_dimension(pts.iter()) == dim {
            return Ok(pts);
        }
    }
    Err(Error::Unsatisfiable(format!(
        "no full-dimensional sample after {RANDOM_RETRIES} attempts"
    )))
}

pub fn generate(kind: &Family, seed: u64) -> Result<Polytope> {
    build_polytope(&family_points(kind, seed)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_specs() {
        assert_eq!("cube:4".parse::<Family>().unwrap(), Family::Hypercube(4));
        assert_eq!("simplex:2".parse::<Family>().unwrap(), Family::Simplex(2));
        assert_eq!(
            "random:3,8,10".parse::<Family>().unwrap(),
            Family::Random { dim: 3, points: 8, bound: 10 }
        );
        for bad in ["cube", "cube:x", "random:3,8", "prism:3", "cube:-1"] {
            assert!(bad.parse::<Family>().is_err(), "{bad}");
        }
        let f: Family = "crosspolytope:5".parse().unwrap();
        assert_eq!(f.to_string().parse::<Family>().unwrap(), f);
    }

    #[test]
    fn standard_families() {
        let t = generate(&Family::Hypercube(4), 0).unwrap();
        assert_eq!((t.vertex_count(), t.facets().len()), (16, 8));
        let x = generate(&Family::CrossPolytope(4), 0).unwrap();
        assert_eq!((x.vertex_count(), x.facets().len()), (8, 16));
        let tri = generate(&Family::Simplex(2), 99).unwrap();
        assert_eq!((tri.vertex_count(), tri.facets().len()), (3, 3));
    }

    #[test]
    fn random_is_seeded() {
        let kind = Family::Random { dim: 3, points: 8, bound: 10 };
        let a = generate(&kind, 7).unwrap();
        let b = generate(&kind, 7).unwrap();
        assert_eq!(a.ambient_vertices(), b.ambient_vertices());
        assert_eq!(a.dim(), 3);
        assert!(a.vertex_count() <= 8);
    }

    #[test]
    fn unsatisfiable() {
        let kind = Family::Random { dim: 4, points: 3, bound: 10 };
        assert!(matches!(generate(&kind, 0), Err(Error::Unsatisfiable(_))));
        assert!(generate(&Family::Simplex(0), 0).is_err());
    }
}
