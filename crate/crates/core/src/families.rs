//! Reference point sets: cubes, cross-polytopes and random cs sets.

use rand::Rng;

use crate::error::{Error, Result};
use crate::point::{Point, PointSet};
use crate::predicates;

/// Vertices of `[-1, 1]^d`.
pub fn cube(d: usize) -> Result<PointSet> {
    if d == 0 || d > 16 {
        return Err(Error::InvalidParameter(format!(
            "cube dimension {d} out of range 1..=16"
        )));
    }
    let points = (0..1u32 << d)
        .map(|mask| {
            let v: Vec<i64> = (0..d).map(|k| if mask >> k & 1 == 1 { 1 } else { -1 }).collect();
            Point::from_ints(&v)
        })
        .collect();
    PointSet::new(d, points)
}

/// `{±e_1, …, ±e_d}`, laid out as `e_1, -e_1, e_2, -e_2, …`.
pub fn cross_polytope(d: usize) -> Result<PointSet> {
    if d == 0 {
        return Err(Error::InvalidParameter("cross-polytope needs d ≥ 1".into()));
    }
    let mut points = Vec::with_capacity(2 * d);
    for k in 0..d {
        for s in [1, -1] {
            let mut v = vec![0; d];
            v[k] = s;
            points.push(Point::from_ints(&v));
        }
    }
    PointSet::new(d, points)
}

/// A spanning cs set of `2 * pairs` integer points with coordinates in
/// `-radius..=radius`, laid out as `x_1, -x_1, …`.
pub fn random_cs_set<R: Rng + ?Sized>(d: usize, pairs: usize, radius: i64, rng: &mut R) -> Result<PointSet> {
    if d == 0 || pairs < d || radius < 1 {
        return Err(Error::InvalidParameter(format!(
            "need d ≥ 1, pairs ≥ d and radius ≥ 1 (got d={d}, pairs={pairs}, radius={radius})"
        )));
    }
    loop {
        let mut reps: Vec<Vec<i64>> = Vec::with_capacity(pairs);
        while reps.len() < pairs {
            let v: Vec<i64> = (0..d).map(|_| rng.random_range(-radius..=radius)).collect();
            let neg: Vec<i64> = v.iter().map(|c| -c).collect();
            if v.iter().all(|&c| c == 0) || reps.contains(&v) || reps.contains(&neg) {
                continue;
            }
            reps.push(v);
        }
        let mut points = Vec::with_capacity(2 * pairs);
        for v in &reps {
            let p = Point::from_ints(v);
            points.push(p.neg());
            points.push(p);
            let n = points.len();
            points.swap(n - 2, n - 1);
        }
        let set = PointSet::new(d, points)?;
        if predicates::spans(&set, d) {
            return Ok(set);
        }
    }
}
