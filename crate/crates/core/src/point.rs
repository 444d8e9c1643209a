//! Rational points, centrally symmetric point sets and their integer frames.

use std::collections::HashMap;
use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::scalar::{self, Scalar};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Point(Vec<Scalar>);

impl Point {
    pub fn new(coords: Vec<Scalar>) -> Self {
        Point(coords)
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Point(coords.iter().map(|&c| scalar::int(c)).collect())
    }

    pub fn zero(dim: usize) -> Self {
        Point(vec![Scalar::zero(); dim])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.0
    }

    pub fn is_origin(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    fn check_dim(&self, other: &Point) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: other.dim(),
            });
        }
        Ok(())
    }

    pub fn dot(&self, other: &Point) -> Result<Scalar> {
        self.check_dim(other)?;
        Ok(self
            .0
            .iter()
            .zip(&other.0)
            .fold(Scalar::zero(), |acc, (a, b)| acc + a * b))
    }

    pub fn sub(&self, other: &Point) -> Result<Point> {
        self.check_dim(other)?;
        Ok(Point(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect()))
    }

    pub fn add(&self, other: &Point) -> Result<Point> {
        self.check_dim(other)?;
        Ok(Point(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect()))
    }

    pub fn scale(&self, k: &Scalar) -> Point {
        Point(self.0.iter().map(|a| a * k).collect())
    }

    pub fn neg(&self) -> Point {
        Point(self.0.iter().map(|a| -a).collect())
    }

    pub fn norm_sq(&self) -> Scalar {
        self.0.iter().fold(Scalar::zero(), |acc, a| acc + a * a)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// A finite set of distinct points in `R^dim`.
///
/// The antipodal pairing is computed at construction time and is present
/// exactly when the set is centrally symmetric and avoids the origin.
#[derive(Debug)]
pub struct PointSet {
    dim: usize,
    points: Vec<Point>,
    pairing: Option<Vec<usize>>,
    frame: OnceLock<IntFrame>,
}

impl Clone for PointSet {
    fn clone(&self) -> Self {
        PointSet {
            dim: self.dim,
            points: self.points.clone(),
            pairing: self.pairing.clone(),
            frame: OnceLock::new(),
        }
    }
}

impl PartialEq for PointSet {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.points == other.points
    }
}

impl PointSet {
    pub fn new(dim: usize, points: Vec<Point>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidParameter("dimension must be positive".into()));
        }
        let mut index: HashMap<&Point, usize> = HashMap::with_capacity(points.len());
        for (i, p) in points.iter().enumerate() {
            if p.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: p.dim(),
                });
            }
            if let Some(&first) = index.get(p) {
                return Err(Error::DuplicatePoint { first, second: i });
            }
            index.insert(p, i);
        }
        let pairing = compute_pairing(&points, &index).ok();
        Ok(PointSet {
            dim,
            points,
            pairing,
            frame: OnceLock::new(),
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn point(&self, i: usize) -> &Point {
        &self.points[i]
    }

    pub fn pairing(&self) -> Option<&[usize]> {
        self.pairing.as_deref()
    }

    pub fn is_cs(&self) -> bool {
        self.pairing.is_some()
    }

    /// Antipode index of `i`, if the set is centrally symmetric.
    pub fn antipode(&self, i: usize) -> Option<usize> {
        self.pairing.as_ref().map(|p| p[i])
    }

    pub fn are_antipodes(&self, i: usize, j: usize) -> bool {
        self.antipode(i) == Some(j)
    }

    pub fn into_points(self) -> Vec<Point> {
        self.points
    }

    /// The set scaled to integer coordinates, with its Gram matrix.
    pub fn frame(&self) -> &IntFrame {
        self.frame.get_or_init(|| IntFrame::new(&self.points))
    }
}

fn compute_pairing(points: &[Point], index: &HashMap<&Point, usize>) -> Result<Vec<usize>> {
    let mut pairing = Vec::with_capacity(points.len());
    for (i, p) in points.iter().enumerate() {
        if p.is_origin() {
            return Err(Error::NotCentrallySymmetric(format!("point {i} is the origin")));
        }
        match index.get(&p.neg()) {
            Some(&j) => pairing.push(j),
            None => return Err(Error::NotCentrallySymmetric(format!("point {i} = {p} has no antipode"))),
        }
    }
    Ok(pairing)
}

/// Integer coordinates `scale · p` for every point, plus the Gram matrix of
/// those integer vectors.
///
/// Every angle and face predicate is invariant under positive scaling, so the
/// signs computed here are the signs of the rational quantities; dividing by
/// `scale²` (resp. `scale`) recovers the exact values.
#[derive(Debug, Clone)]
pub struct IntFrame {
    pub scale: BigInt,
    pub coords: Vec<Vec<BigInt>>,
    pub gram: Vec<Vec<BigInt>>,
}

impl IntFrame {
    pub fn new(points: &[Point]) -> Self {
        let scale = scalar::common_denominator(points.iter().flat_map(|p| p.coords()));
        let coords: Vec<Vec<BigInt>> = points
            .iter()
            .map(|p| p.coords().iter().map(|c| (c * &scale).to_integer()).collect())
            .collect();
        let gram = gram_matrix(&coords);
        IntFrame { scale, coords, gram }
    }

    /// `(x - y)·(z - y)` in integer units (multiply by `1/scale²` for the value).
    pub fn slack_int(&self, x: usize, y: usize, z: usize) -> BigInt {
        let g = &self.gram;
        &g[x][z] + &g[y][y] - &g[x][y] - &g[y][z]
    }

    pub fn slack_positive(&self, x: usize, y: usize, z: usize) -> bool {
        let g = &self.gram;
        &g[x][z] + &g[y][y] > &g[x][y] + &g[y][z]
    }

    pub fn slack(&self, x: usize, y: usize, z: usize) -> Scalar {
        Scalar::new(self.slack_int(x, y, z), &self.scale * &self.scale)
    }

    /// Converts an integer-frame quantity of the given degree back to a rational.
    pub fn unscale(&self, v: BigInt, degree: u32) -> Scalar {
        Scalar::new(v, self.scale.pow(degree))
    }
}

pub fn int_dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn gram_matrix(coords: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let n = coords.len();
    let upper: Vec<Vec<BigInt>> = (0..n)
        .into_par_iter()
        .map(|i| (i..n).map(|j| int_dot(&coords[i], &coords[j])).collect())
        .collect();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if j >= i {
                        upper[i][j - i].clone()
                    } else {
                        upper[j][i - j].clone()
                    }
                })
                .collect()
        })
        .collect()
}

/// Rescales an integer vector with rational entries to a positive multiple
/// with integer entries.
pub fn integer_multiple(v: &[Scalar]) -> (Vec<BigInt>, BigInt) {
    let l = scalar::common_denominator(v);
    let ints = v.iter().map(|c| (c * &l).to_integer()).collect();
    (ints, l)
}
