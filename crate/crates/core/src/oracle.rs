//! Brute-force facet enumeration, used as an independent oracle for edge
//! verdicts on small instances.
//!
//! Every `d`-subset spanning a hyperplane is tested as a candidate facet; the
//! edges are then read off the facet incidences. Nothing here shares code with
//! the certificate or LP routes beyond rational arithmetic.

use std::collections::BTreeSet;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg;
use crate::point::PointSet;
use crate::scalar::Scalar;

pub const MAX_DIM: usize = 5;
pub const MAX_POINTS: usize = 36;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Facet {
    /// Outer normal `a` and offset `b`: `a·s ≤ b` on the whole set.
    pub normal: Vec<Scalar>,
    pub offset: Scalar,
    /// Indices of the points with `a·s = b`, sorted.
    pub incidence: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceLattice {
    pub facets: Vec<Facet>,
    /// Pairs `(i, j)`, `i < j`, whose smallest containing face contains no
    /// other point of the set.
    pub edges: Vec<(usize, usize)>,
}

impl FaceLattice {
    pub fn is_edge(&self, i: usize, j: usize) -> bool {
        let key = (i.min(j), i.max(j));
        self.edges.binary_search(&key).is_ok()
    }
}

fn combinations(n: usize, k: usize, mut visit: impl FnMut(&[usize])) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        visit(&idx);
        let Some(pos) = (0..k).rev().find(|&p| idx[p] != p + n - k) else {
            return;
        };
        idx[pos] += 1;
        for q in pos + 1..k {
            idx[q] = idx[q - 1] + 1;
        }
    }
}

fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn brute_force_face_lattice(set: &PointSet) -> Result<FaceLattice> {
    let d = set.dim();
    let n = set.len();
    if d > MAX_DIM || n > MAX_POINTS {
        return Err(Error::GuardRail(format!(
            "brute-force lattice limited to d ≤ {MAX_DIM} and n ≤ {MAX_POINTS}, got d = {d}, n = {n}"
        )));
    }
    let pts: Vec<Vec<Scalar>> = set.points().iter().map(|p| p.coords().to_vec()).collect();
    if n <= d {
        return Err(Error::InvalidParameter("set is not full-dimensional".into()));
    }
    let diffs: Vec<Vec<Scalar>> = pts[1..]
        .iter()
        .map(|p| p.iter().zip(&pts[0]).map(|(a, b)| a - b).collect())
        .collect();
    if linalg::rank(&diffs) != d {
        return Err(Error::InvalidParameter("set is not full-dimensional".into()));
    }

    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut facets = Vec::new();
    combinations(n, d, |subset| {
        let base = &pts[subset[0]];
        let rows: Vec<Vec<Scalar>> = subset[1..]
            .iter()
            .map(|&k| pts[k].iter().zip(base).map(|(a, b)| a - b).collect())
            .collect();
        let ns = linalg::nullspace(&rows, d);
        if ns.len() != 1 {
            return;
        }
        let mut normal = ns.into_iter().next().expect("one basis vector");
        let mut offset = dot(&normal, base);
        let sides: Vec<Scalar> = pts.iter().map(|p| dot(&normal, p) - &offset).collect();
        let above = sides.iter().any(|s| *s > Scalar::zero());
        let below = sides.iter().any(|s| *s < Scalar::zero());
        if above && below {
            return;
        }
        if above {
            normal.iter_mut().for_each(|v| *v = -v.clone());
            offset = -offset;
        }
        let incidence: Vec<usize> = (0..n).filter(|&k| sides[k].is_zero()).collect();
        if seen.insert(incidence.clone()) {
            facets.push(Facet {
                normal,
                offset,
                incidence,
            });
        }
    });

    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let mut face: Option<BTreeSet<usize>> = None;
            for f in &facets {
                if f.incidence.binary_search(&i).is_ok() && f.incidence.binary_search(&j).is_ok() {
                    let inc: BTreeSet<usize> = f.incidence.iter().copied().collect();
                    face = Some(match face {
                        None => inc,
                        Some(acc) => acc.intersection(&inc).copied().collect(),
                    });
                }
            }
            if face.is_some_and(|f| f.len() == 2) {
                edges.push((i, j));
            }
        }
    }
    Ok(FaceLattice { facets, edges })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructor::base_set;
    use crate::point::Point;
    use crate::scalar::int;

    #[test]
    fn octahedron_counts() {
        let s = base_set(3, &int(2)).unwrap();
        let l = brute_force_face_lattice(&s).unwrap();
        assert_eq!(l.facets.len(), 8);
        assert_eq!(l.edges.len(), 12);
        for f in &l.facets {
            for p in s.points() {
                assert!(dot(&f.normal, p.coords()) <= f.offset);
            }
        }
    }

    #[test]
    fn square() {
        let s = PointSet::new(
            2,
            [[1, 1], [1, -1], [-1, 1], [-1, -1]]
                .iter()
                .map(|v| Point::from_ints(v))
                .collect(),
        )
        .unwrap();
        let l = brute_force_face_lattice(&s).unwrap();
        assert_eq!(l.facets.len(), 4);
        assert_eq!(l.edges.len(), 4);
        assert!(!l.is_edge(0, 3));
    }

    #[test]
    fn cube_has_twelve_edges() {
        let pts = (0..8)
            .map(|m| Point::from_ints(&[(m & 1) * 2 - 1, (m >> 1 & 1) * 2 - 1, (m >> 2 & 1) * 2 - 1]))
            .collect();
        let l = brute_force_face_lattice(&PointSet::new(3, pts).unwrap()).unwrap();
        assert_eq!((l.facets.len(), l.edges.len()), (6, 12));
    }

    #[test]
    fn interior_point_is_on_no_edge() {
        let mut pts = base_set(3, &int(2)).unwrap().into_points();
        pts.push(Point::from_ints(&[0, 0, 1]));
        let s = PointSet::new(3, pts).unwrap();
        let l = brute_force_face_lattice(&s).unwrap();
        assert_eq!(l.edges.len(), 12);
        assert!(l.edges.iter().all(|&(i, j)| i != 6 && j != 6));
    }

    #[test]
    fn guard_rails() {
        let pts = (1..=40).map(|k| Point::from_ints(&[k, k * k])).collect();
        let s = PointSet::new(2, pts).unwrap();
        assert!(matches!(brute_force_face_lattice(&s), Err(Error::GuardRail(_))));
        let flat = PointSet::new(
            2,
            vec![
                Point::from_ints(&[1, 0]),
                Point::from_ints(&[-1, 0]),
                Point::from_ints(&[2, 0]),
            ],
        )
        .unwrap();
        assert!(brute_force_face_lattice(&flat).is_err());
    }
}
