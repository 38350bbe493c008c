use std::fmt;
use std::ops::{Add, Index, Sub};

use serde::{Deserialize, Serialize};

use super::Rational;
use crate::error::{Error, Result};

/// A point or direction with exact rational coordinates.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Vector(Vec<Rational>);

impl Vector {
    pub fn new(coords: Vec<Rational>) -> Self {
        Vector(coords)
    }

    pub fn zeros(dim: usize) -> Self {
        Vector(vec![Rational::zero(); dim])
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Vector(coords.iter().map(|&c| Rational::from_int(c)).collect())
    }

    pub fn unit(dim: usize, axis: usize) -> Self {
        let mut v = Vector::zeros(dim);
        v.0[axis] = Rational::one();
        v
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<Rational> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Rational::is_zero)
    }

    pub fn dot(&self, other: &Vector) -> Rational {
        debug_assert_eq!(self.dim(), other.dim());
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub fn scale(&self, factor: &Rational) -> Vector {
        Vector(self.0.iter().map(|c| c * factor).collect())
    }

    /// `self + factor * other`.
    pub fn add_scaled(&self, factor: &Rational, other: &Vector) -> Vector {
        Vector(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + &(factor * b))
                .collect(),
        )
    }

    pub fn select(&self, axes: &[usize]) -> Vector {
        Vector(axes.iter().map(|&i| self.0[i].clone()).collect())
    }

    pub fn barycenter<'a>(points: impl IntoIterator<Item = &'a Vector>) -> Vector {
        let mut iter = points.into_iter();
        let first = iter.next().expect("barycenter of no points").clone();
        let mut count = 1usize;
        let sum = iter.fold(first, |acc, p| {
            count += 1;
            &acc + p
        });
        sum.scale(&Rational::from(count).recip())
    }
}

impl Index<usize> for Vector {
    type Output = Rational;
    fn index(&self, index: usize) -> &Rational {
        &self.0[index]
    }
}

impl Add for &Vector {
    type Output = Vector;
    fn add(self, rhs: &Vector) -> Vector {
        Vector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Vector {
    type Output = Vector;
    fn sub(self, rhs: &Vector) -> Vector {
        Vector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl fmt::Debug for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// `{x : normal·x = offset}`; as an inequality, `normal·x ≤ offset`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct Hyperplane {
    normal: Vector,
    offset: Rational,
}

impl Hyperplane {
    pub fn new(normal: Vector, offset: Rational) -> Result<Self> {
        if normal.is_zero() {
            return Err(Error::ZeroNormal);
        }
        Ok(Hyperplane { normal, offset })
    }

    /// Rescales by a positive factor so the first nonzero normal coordinate
    /// has absolute value one. Orientation is preserved.
    pub fn normalized(&self) -> Hyperplane {
        let lead = self
            .normal
            .coords()
            .iter()
            .find(|c| !c.is_zero())
            .expect("nonzero normal")
            .abs()
            .recip();
        Hyperplane {
            normal: self.normal.scale(&lead),
            offset: &self.offset * &lead,
        }
    }

    pub fn flipped(&self) -> Hyperplane {
        Hyperplane {
            normal: self.normal.scale(&-Rational::one()),
            offset: -&self.offset,
        }
    }

    pub fn normal(&self) -> &Vector {
        &self.normal
    }

    pub fn offset(&self) -> &Rational {
        &self.offset
    }

    /// `normal·x − offset`: negative beneath, zero on, positive beyond.
    pub fn eval(&self, x: &Vector) -> Rational {
        self.normal.dot(x) - &self.offset
    }

    pub fn contains(&self, x: &Vector) -> bool {
        self.eval(x).is_zero()
    }
}

/// Reduced row echelon form of `rows`; returns the nonzero rows and their
/// pivot columns.
pub fn rref(rows: &[Vector]) -> (Vec<Vector>, Vec<usize>) {
    let Some(width) = rows.first().map(Vector::dim) else {
        return (Vec::new(), Vec::new());
    };
    let mut m: Vec<Vec<Rational>> = rows.iter().map(|r| r.coords().to_vec()).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..width {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][col].recip();
        for c in col..width {
            m[r][c] = &m[r][c] * &inv;
        }
        for i in 0..m.len() {
            if i == r || m[i][col].is_zero() {
                continue;
            }
            let factor = m[i][col].clone();
            for c in col..width {
                let delta = &factor * &m[r][c];
                m[i][c] -= &delta;
            }
        }
        pivots.push(col);
        r += 1;
    }
    m.truncate(r);
    (m.into_iter().map(Vector::new).collect(), pivots)
}

pub fn rank(rows: &[Vector]) -> usize {
    rref(rows).1.len()
}

/// Basis of `{x : row·x = 0 for every row}` in ambient dimension `width`.
pub fn null_space(rows: &[Vector], width: usize) -> Vec<Vector> {
    let (reduced, pivots) = rref(rows);
    (0..width)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = Vector::zeros(width).into_coords();
            v[free] = Rational::one();
            for (row, &p) in reduced.iter().zip(&pivots) {
                v[p] = -&row[free];
            }
            Vector::new(v)
        })
        .collect()
}

pub fn determinant(rows: &[Vector]) -> Rational {
    let n = rows.len();
    let mut m: Vec<Vec<Rational>> = rows.iter().map(|r| r.coords().to_vec()).collect();
    let mut det = Rational::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&i| !m[i][col].is_zero()) else {
            return Rational::zero();
        };
        if p != col {
            m.swap(p, col);
            det = -det;
        }
        det *= &m[col][col];
        let inv = m[col][col].recip();
        for i in col + 1..n {
            if m[i][col].is_zero() {
                continue;
            }
            let factor = &m[i][col] * &inv;
            for c in col..n {
                let delta = &factor * &m[col][c];
                m[i][c] -= &delta;
            }
        }
    }
    det
}

/// Affine subspace `base + span(basis)`. The basis is kept in reduced row
/// echelon form, which makes the coordinate restriction to the pivot axes
/// an affine isomorphism onto `Q^dim`; that restriction is the intrinsic
/// frame used throughout the crate.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AffineSubspace {
    base: Vector,
    basis: Vec<Vector>,
    pivots: Vec<usize>,
}

impl AffineSubspace {
    pub fn new(base: Vector, directions: &[Vector]) -> Self {
        let (basis, pivots) = rref(directions);
        AffineSubspace {
            base,
            basis,
            pivots,
        }
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient_dimension(&self) -> usize {
        self.base.dim()
    }

    pub fn base_point(&self) -> &Vector {
        &self.base
    }

    pub fn direction_basis(&self) -> &[Vector] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn is_full(&self) -> bool {
        self.dimension() == self.ambient_dimension()
    }

    fn residual(&self, direction: &Vector) -> Vector {
        let mut rest = direction.clone();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            let c = -&direction[p];
            rest = rest.add_scaled(&c, row);
        }
        rest
    }

    pub fn contains_direction(&self, direction: &Vector) -> bool {
        self.residual(direction).is_zero()
    }

    pub fn contains(&self, point: &Vector) -> bool {
        self.contains_direction(&(point - &self.base))
    }

    /// Intrinsic coordinates of a point of the subspace.
    pub fn local_point(&self, point: &Vector) -> Result<Vector> {
        if !self.contains(point) {
            return Err(Error::NotInAffineHull);
        }
        Ok(point.select(&self.pivots))
    }

    pub fn local_direction(&self, direction: &Vector) -> Result<Vector> {
        if !self.contains_direction(direction) {
            return Err(Error::NotInAffineHull);
        }
        Ok(direction.select(&self.pivots))
    }

    pub fn ambient_point(&self, local: &Vector) -> Vector {
        let mut x = self.base.clone();
        for ((row, &p), y) in self.basis.iter().zip(&self.pivots).zip(local.coords()) {
            let c = y - &x[p];
            x = x.add_scaled(&c, row);
        }
        x
    }
}

pub fn affine_hull(points: &[Vector]) -> Result<AffineSubspace> {
    let base = points.first().ok_or(Error::NoPoints)?;
    if points.iter().any(|p| p.dim() != base.dim()) {
        return Err(Error::DimensionMismatch {
            expected: base.dim(),
            found: points.iter().map(Vector::dim).find(|&d| d != base.dim()).unwrap_or(0),
        });
    }
    let diffs: Vec<Vector> = points[1..].iter().map(|p| p - base).collect();
    Ok(AffineSubspace::new(base.clone(), &diffs))
}

/// Dimension of the affine hull of a nonempty point list.
pub fn affine_dimension<'a>(points: impl IntoIterator<Item = &'a Vector>) -> usize {
    let mut iter = points.into_iter();
    let Some(base) = iter.next() else { return 0 };
    let diffs: Vec<Vector> = iter.map(|p| p - base).collect();
    rank(&diffs)
}

/// Point where `line_point + s·line_dir` meets `h`, or `None` when the line
/// is parallel to the hyperplane.
pub fn line_hyperplane_intersection(
    line_point: &Vector,
    line_dir: &Vector,
    h: &Hyperplane,
) -> Option<Vector> {
    let speed = h.normal().dot(line_dir);
    if speed.is_zero() {
        return None;
    }
    let s = -h.eval(line_point) / speed;
    Some(line_point.add_scaled(&s, line_dir))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(c: &[i64]) -> Vector {
        Vector::from_ints(c)
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&[v(&[1, 0, 0]), v(&[0, 1, 0]), v(&[0, 0, 1])]), 3);
        assert_eq!(rank(&[v(&[1, 2]), v(&[2, 4])]), 1);
        assert_eq!(rank(&[]), 0);
    }

    #[test]
    fn affine_hull_examples() {
        assert_eq!(affine_hull(&[v(&[3, 4])]).unwrap().dimension(), 0);
        assert_eq!(
            affine_hull(&[v(&[0, 0]), v(&[1, 0]), v(&[0, 1])]).unwrap().dimension(),
            2
        );
        let line = affine_hull(&[v(&[0, 0, 0]), v(&[1, 1, 0]), v(&[2, 2, 0])]).unwrap();
        assert_eq!(line.dimension(), 1);
        assert!(line.contains(&v(&[-5, -5, 0])));
        assert!(!line.contains(&v(&[1, 0, 0])));
        assert!(matches!(affine_hull(&[]), Err(Error::NoPoints)));
    }

    #[test]
    fn local_frame_round_trip() {
        let plane = affine_hull(&[v(&[1, 0, 2]), v(&[0, 1, 3]), v(&[2, 2, 7])]).unwrap();
        assert_eq!(plane.dimension(), 2);
        let p = v(&[0, 4, 9]);
        assert!(plane.contains(&p));
        let local = plane.local_point(&p).unwrap();
        assert_eq!(local.dim(), 2);
        assert_eq!(plane.ambient_point(&local), p);
        assert!(plane.local_point(&v(&[0, 0, 0])).is_err());
    }

    #[test]
    fn intersection_examples() {
        let z5 = Hyperplane::new(v(&[0, 0, 1]), Rational::from_int(5)).unwrap();
        assert_eq!(
            line_hyperplane_intersection(&v(&[0, 0, 0]), &v(&[0, 0, 1]), &z5),
            Some(v(&[0, 0, 5]))
        );
        let x0 = Hyperplane::new(v(&[1, 0, 0]), Rational::zero()).unwrap();
        assert_eq!(
            line_hyperplane_intersection(&v(&[3, 1, 1]), &v(&[1, 0, 0]), &x0),
            Some(v(&[0, 1, 1]))
        );
        let y0 = Hyperplane::new(v(&[0, 1, 0]), Rational::zero()).unwrap();
        assert_eq!(
            line_hyperplane_intersection(&v(&[0, 1, 0]), &v(&[1, 0, 0]), &y0),
            None
        );
    }

    #[test]
    fn null_space_is_orthogonal() {
        let rows = [v(&[1, 2, 3]), v(&[0, 1, 1])];
        let ns = null_space(&rows, 3);
        assert_eq!(ns.len(), 1);
        for r in &rows {
            assert!(r.dot(&ns[0]).is_zero());
        }
    }

    #[test]
    fn determinant_small() {
        assert_eq!(determinant(&[v(&[2, 0]), v(&[0, 3])]), Rational::from_int(6));
        assert_eq!(determinant(&[v(&[0, 1]), v(&[1, 0])]), Rational::from_int(-1));
        assert_eq!(determinant(&[v(&[1, 2]), v(&[2, 4])]), Rational::zero());
    }

    #[test]
    fn zero_normal_rejected() {
        assert!(Hyperplane::new(v(&[0, 0]), Rational::one()).is_err());
    }
}
