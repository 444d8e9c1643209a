//! Angle, symmetry and span predicates.
//!
//! The slack of an ordered triple `(x, y, z)` is `(x - y)·(z - y)`; the angle
//! at `y` is acute iff the slack is strictly positive. A zero angle (collinear
//! points on the same side of `y`) therefore counts as acute.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg;
use crate::point::{Point, PointSet};
use crate::scalar::Scalar;

pub const DEFAULT_MAX_VIOLATIONS: usize = 32;

pub fn dot(p: &Point, q: &Point) -> Result<Scalar> {
    p.dot(q)
}

/// `(x - y)·(z - y)`.
pub fn slack(x: &Point, y: &Point, z: &Point) -> Result<Scalar> {
    x.sub(y)?.dot(&z.sub(y)?)
}

pub fn is_acute_angle(x: &Point, y: &Point, z: &Point) -> Result<bool> {
    if x == y || y == z || x == z {
        return Err(Error::CoincidentPoints);
    }
    Ok(slack(x, y, z)? > Scalar::default())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TripleViolation {
    /// Indices of the ordered triple `(x, y, z)`; the angle is at `y`.
    pub triple: (usize, usize, usize),
    #[serde(serialize_with = "crate::predicates::ser_scalar")]
    pub slack: Scalar,
}

pub(crate) fn ser_scalar<S: serde::Serializer>(v: &Scalar, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

/// Checks that every unordered triple forms a triangle with three acute angles.
/// Returns the first failing angle found, in lexicographic triple order.
pub fn is_acute_set(set: &PointSet) -> Result<(bool, Option<TripleViolation>)> {
    let n = set.len();
    if n < 3 {
        return Err(Error::InvalidParameter(format!(
            "acute-set check needs at least 3 points, got {n}"
        )));
    }
    let f = set.frame();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                for (x, y, z) in [(b, a, c), (a, b, c), (a, c, b)] {
                    if !f.slack_positive(x, y, z) {
                        return Ok((
                            false,
                            Some(TripleViolation {
                                triple: (x, y, z),
                                slack: f.slack(x, y, z),
                            }),
                        ));
                    }
                }
            }
        }
    }
    Ok((true, None))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CsFailure {
    Origin { index: usize },
    MissingAntipode { index: usize },
}

/// Returns the antipodal involution, or the first offending index.
pub fn is_centrally_symmetric(set: &PointSet) -> std::result::Result<Vec<usize>, CsFailure> {
    if let Some(p) = set.pairing() {
        return Ok(p.to_vec());
    }
    for (i, p) in set.points().iter().enumerate() {
        if p.is_origin() {
            return Err(CsFailure::Origin { index: i });
        }
    }
    let neg: std::collections::HashSet<&Point> = set.points().iter().collect();
    let index = set
        .points()
        .iter()
        .position(|p| !neg.contains(&p.neg()))
        .expect("pairing absent although every point has an antipode");
    Err(CsFailure::MissingAntipode { index })
}

#[derive(Debug, Clone, Serialize)]
pub struct AlmostAcuteReport {
    pub ok: bool,
    /// First violations in lexicographic `(x, y, z)` order, capped.
    pub violations: Vec<TripleViolation>,
    pub violation_count: u64,
    pub triples_checked: u64,
    /// Ordered triples with `x = -z`, which carry no constraint.
    pub exempt_skipped: u64,
}

/// Scans every ordered triple of distinct points with `x ≠ -z`.
pub fn is_almost_acute(set: &PointSet, max_violations: usize) -> Result<AlmostAcuteReport> {
    let pairing = set
        .pairing()
        .ok_or_else(|| Error::NotCentrallySymmetric("almost-acute check requires a cs set".into()))?;
    let n = set.len();
    let f = set.frame();

    struct Partial {
        violations: Vec<TripleViolation>,
        count: u64,
        checked: u64,
        exempt: u64,
    }

    let partials: Vec<Partial> = (0..n)
        .into_par_iter()
        .map(|x| {
            let mut part = Partial {
                violations: Vec::new(),
                count: 0,
                checked: 0,
                exempt: 0,
            };
            for y in 0..n {
                if y == x {
                    continue;
                }
                for z in 0..n {
                    if z == x || z == y {
                        continue;
                    }
                    if pairing[x] == z {
                        part.exempt += 1;
                        continue;
                    }
                    part.checked += 1;
                    if !f.slack_positive(x, y, z) {
                        part.count += 1;
                        if part.violations.len() < max_violations {
                            part.violations.push(TripleViolation {
                                triple: (x, y, z),
                                slack: f.slack(x, y, z),
                            });
                        }
                    }
                }
            }
            part
        })
        .collect();

    let mut report = AlmostAcuteReport {
        ok: true,
        violations: Vec::new(),
        violation_count: 0,
        triples_checked: 0,
        exempt_skipped: 0,
    };
    for p in partials {
        report.violation_count += p.count;
        report.triples_checked += p.checked;
        report.exempt_skipped += p.exempt;
        let room = max_violations - report.violations.len();
        report.violations.extend(p.violations.into_iter().take(room));
    }
    report.ok = report.violation_count == 0;
    Ok(report)
}

/// Whether the linear span of the set has dimension `d`.
pub fn spans(set: &PointSet, d: usize) -> bool {
    if set.dim() != d {
        return false;
    }
    let rows: Vec<Vec<Scalar>> = set.points().iter().map(|p| p.coords().to_vec()).collect();
    linalg::rank(&rows) == d
}

/// Minimum slack over the listed ordered triples.
pub fn acute_margin(set: &PointSet, triples: &[(usize, usize, usize)]) -> Result<Scalar> {
    let f = set.frame();
    let mut best: Option<Scalar> = None;
    for &(x, y, z) in triples {
        let s = f.slack(x, y, z);
        if s <= Scalar::default() {
            return Err(Error::NonPositiveSlack(x, y, z, s));
        }
        if best.as_ref().is_none_or(|b| s < *b) {
            best = Some(s);
        }
    }
    best.ok_or(Error::EmptyTripleSet)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, ratio};

    fn pts(rows: &[&[i64]]) -> Vec<Point> {
        rows.iter().map(|r| Point::from_ints(r)).collect()
    }

    fn cube(d: usize) -> PointSet {
        crate::families::cube(d).unwrap()
    }

    fn cross_polytope(d: usize) -> PointSet {
        crate::families::cross_polytope(d).unwrap()
    }

    #[test]
    fn acute_angle_examples() {
        let p = |v: &[i64]| Point::from_ints(v);
        assert!(!is_acute_angle(&p(&[1, 0, 0]), &p(&[0, 0, 0]), &p(&[0, 1, 0])).unwrap());
        assert!(is_acute_angle(&p(&[1, 1, 0]), &p(&[-1, -1, 0]), &p(&[-1, 1, 0])).unwrap());
        assert!(!is_acute_angle(&p(&[1, 1, 1]), &p(&[1, 1, -1]), &p(&[1, -1, -1])).unwrap());
        assert!(matches!(
            is_acute_angle(&p(&[1, 0]), &p(&[1, 0]), &p(&[0, 1])),
            Err(Error::CoincidentPoints)
        ));
    }

    #[test]
    fn zero_angle_counts_as_acute() {
        let p = |v: &[i64]| Point::from_ints(v);
        assert!(is_acute_angle(&p(&[1, 0]), &p(&[0, 0]), &p(&[2, 0])).unwrap());
    }

    #[test]
    fn acute_set_examples() {
        let tri = PointSet::new(
            2,
            vec![
                Point::from_ints(&[0, 0]),
                Point::from_ints(&[1, 0]),
                Point::new(vec![ratio(1, 2), int(1)]),
            ],
        )
        .unwrap();
        assert!(is_acute_set(&tri).unwrap().0);
        let (ok, v) = is_acute_set(&cube(3)).unwrap();
        assert!(!ok);
        assert_eq!(v.unwrap().slack, int(0));
        assert!(!is_acute_set(&cross_polytope(3)).unwrap().0);
        let two = PointSet::new(1, pts(&[&[1], &[2]])).unwrap();
        assert!(is_acute_set(&two).is_err());
    }

    #[test]
    fn cs_examples() {
        let s = PointSet::new(2, pts(&[&[1, 0], &[-1, 0]])).unwrap();
        assert_eq!(is_centrally_symmetric(&s), Ok(vec![1, 0]));
        let s = PointSet::new(2, pts(&[&[1, 0], &[0, 1]])).unwrap();
        assert_eq!(is_centrally_symmetric(&s), Err(CsFailure::MissingAntipode { index: 0 }));
        let s = PointSet::new(2, pts(&[&[1, 0], &[0, 0], &[-1, 0]])).unwrap();
        assert_eq!(is_centrally_symmetric(&s), Err(CsFailure::Origin { index: 1 }));
    }

    #[test]
    fn almost_acute_cube_fails_with_zero_slack() {
        let c = cube(3);
        let r = is_almost_acute(&c, DEFAULT_MAX_VIOLATIONS).unwrap();
        assert!(!r.ok);
        assert!(r.violations.iter().all(|v| v.slack == int(0)));
        // (1,1,1), (1,1,-1), (1,-1,-1) is among the violations
        let idx = |v: &[i64]| c.points().iter().position(|p| *p == Point::from_ints(v)).unwrap();
        let t = (idx(&[1, 1, 1]), idx(&[1, 1, -1]), idx(&[1, -1, -1]));
        assert_eq!(c.frame().slack(t.0, t.1, t.2), int(0));
        assert!(r.violation_count > 0);
        assert_eq!(
            r.violations.len(),
            DEFAULT_MAX_VIOLATIONS.min(r.violation_count as usize)
        );
    }

    #[test]
    fn almost_acute_cross_polytope() {
        for d in 2..=5 {
            let s = cross_polytope(d);
            let r = is_almost_acute(&s, 4).unwrap();
            assert!(r.ok, "d={d}");
            let n = s.len() as u64;
            assert_eq!(r.triples_checked + r.exempt_skipped, n * (n - 1) * (n - 2));
            assert_eq!(r.exempt_skipped, n * (n - 2));
            // all non-exempt slacks are 1 or 2
            let f = s.frame();
            for x in 0..s.len() {
                for y in 0..s.len() {
                    for z in 0..s.len() {
                        if x == y || y == z || x == z || s.are_antipodes(x, z) {
                            continue;
                        }
                        let v = f.slack(x, y, z);
                        assert!(v == int(1) || v == int(2));
                    }
                }
            }
        }
    }

    #[test]
    fn almost_acute_rejects_non_cs() {
        let s = PointSet::new(2, pts(&[&[1, 0], &[0, 1], &[1, 1]])).unwrap();
        assert!(matches!(is_almost_acute(&s, 8), Err(Error::NotCentrallySymmetric(_))));
    }

    #[test]
    fn violation_cap_respected() {
        let r = is_almost_acute(&cube(4), 3).unwrap();
        assert_eq!(r.violations.len(), 3);
        assert!(r.violation_count > 3);
        let mut sorted = r.violations.clone();
        sorted.sort_by_key(|v| v.triple);
        assert_eq!(sorted, r.violations);
    }

    #[test]
    fn spans_examples() {
        let s = PointSet::new(2, pts(&[&[1, 0], &[-1, 0]])).unwrap();
        assert!(!spans(&s, 2));
        assert!(spans(&cross_polytope(4), 4));
        assert!(!spans(&cross_polytope(4), 3));
    }

    #[test]
    fn acute_margin_cases() {
        let s = PointSet::new(2, pts(&[&[2, 0], &[0, 0], &[2, 2]])).unwrap();
        assert_eq!(acute_margin(&s, &[(0, 1, 2)]).unwrap(), int(4));
        assert!(matches!(acute_margin(&s, &[]), Err(Error::EmptyTripleSet)));
        assert!(matches!(
            acute_margin(&s, &[(1, 0, 2)]),
            Err(Error::NonPositiveSlack(1, 0, 2, _))
        ));
    }
}
