//! Perturbed-cube construction of an almost acute set of size `2^(d-1) + 2`.
//!
//! Start from the vertices of `[-1, 1]^(d-1) × {0}` together with the apex
//! pair `(0, …, 0, ±c)`. The cube vertices are processed one antipodal pair at
//! a time: pair `p` is moved to a nearby point `x'_p` (and `-x_p` to `-x'_p`)
//! so that every triangle containing `±x'_p` and no antipodal pair is acute,
//! while everything already fixed stays acute. Once every pair is fixed, the
//! whole set is almost acute.
//!
//! Each candidate is verified with exact integer arithmetic; the sampler only
//! decides what to try.

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::point::{int_dot, Point, PointSet};
use crate::predicates::{self, acute_margin, TripleViolation, DEFAULT_MAX_VIOLATIONS};
use crate::scalar::{self, Scalar};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstructionParams {
    pub d: usize,
    pub c: Scalar,
    pub seed: u64,
    pub max_attempts_per_pair: usize,
    /// Resolution of the dyadic grid the sampler draws from, in bits.
    pub denom_bits: u32,
}

impl ConstructionParams {
    pub fn new(d: usize, seed: u64) -> Result<Self> {
        let params = ConstructionParams {
            d,
            c: default_c(d),
            seed,
            max_attempts_per_pair: 1000,
            denom_bits: 32,
        };
        params.validate()?;
        Ok(params)
    }

    pub fn with_c(mut self, c: Scalar) -> Result<Self> {
        self.c = c;
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        if self.d < 2 {
            return Err(Error::InvalidParameter(format!("d must be at least 2, got {}", self.d)));
        }
        if self.d > 20 {
            return Err(Error::InvalidParameter(format!("d = {} is out of range", self.d)));
        }
        check_apex(self.d, &self.c)?;
        if self.max_attempts_per_pair == 0 {
            return Err(Error::InvalidParameter("max_attempts_per_pair must be ≥ 1".into()));
        }
        if !(4..=62).contains(&self.denom_bits) {
            return Err(Error::InvalidParameter(format!(
                "denom_bits must lie in 4..=62, got {}",
                self.denom_bits
            )));
        }
        Ok(())
    }
}

fn check_apex(d: usize, c: &Scalar) -> Result<()> {
    if c * c <= scalar::int(d as i64 - 1) {
        return Err(Error::InvalidParameter(format!(
            "c = {c} must satisfy c² > d - 1 = {}",
            d - 1
        )));
    }
    Ok(())
}

/// Smallest integer `c` with `c² > d - 1`.
pub fn default_c(d: usize) -> Scalar {
    let m = d.saturating_sub(1) as u64;
    scalar::int((m.sqrt() + 1) as i64)
}

/// Representatives of the antipodal pairs of `{±1}^(d-1)`: sign vectors with a
/// leading `+1`, in lexicographic order with `+1` before `-1`.
fn cube_representatives(d: usize) -> Vec<Vec<i64>> {
    let n = d - 1;
    let free = n - 1;
    (0..1u64 << free)
        .map(|mask| {
            let mut v = vec![1i64; n];
            for (k, slot) in v.iter_mut().enumerate().skip(1) {
                if mask >> (free - k) & 1 == 1 {
                    *slot = -1;
                }
            }
            v
        })
        .collect()
}

pub fn pair_count(d: usize) -> usize {
    1 << (d - 2)
}

/// `S⁰`: the cube vertices laid out as `x_1, -x_1, x_2, -x_2, …`, followed by
/// the apex pair `(0, …, 0, c)`, `(0, …, 0, -c)`.
pub fn base_set(d: usize, c: &Scalar) -> Result<PointSet> {
    if d < 2 {
        return Err(Error::InvalidParameter(format!("d must be at least 2, got {d}")));
    }
    check_apex(d, c)?;
    let mut points = Vec::with_capacity((1 << (d - 1)) + 2);
    for rep in cube_representatives(d) {
        let mut v = rep.clone();
        v.push(0);
        let p = Point::from_ints(&v);
        points.push(p.neg());
        points.push(p);
        let len = points.len();
        points.swap(len - 2, len - 1);
    }
    let mut apex = vec![Scalar::zero(); d];
    apex[d - 1] = c.clone();
    let apex = Point::new(apex);
    points.push(apex.clone());
    points.push(apex.neg());
    PointSet::new(d, points)
}

/// A named family of ordered triples `(x, y, z)`, angle at `y`.
pub type AngleFamily = (&'static str, Vec<(usize, usize, usize)>);

/// The four angle families that must stay acute under small perturbations
/// of the cube vertices (`y, z` distinct cube vertices, `x0` the apex):
/// `∠(±x0) y z`, `∠y (±x0) z`, `∠(±x0)(∓x0) y`, and `∠y (-y) z` for `z ≠ -y`.
pub fn base_angle_families(s0: &PointSet) -> Vec<AngleFamily> {
    let n = s0.len();
    let cube = 0..n - 2;
    let apex = [n - 2, n - 1];
    let mut fam1 = Vec::new();
    let mut fam2 = Vec::new();
    let mut fam3 = Vec::new();
    let mut fam4 = Vec::new();
    for &a in &apex {
        for y in cube.clone() {
            for z in cube.clone() {
                if y != z {
                    fam1.push((a, y, z));
                    fam2.push((y, a, z));
                }
            }
        }
        let b = if a == n - 2 { n - 1 } else { n - 2 };
        for y in cube.clone() {
            fam3.push((a, b, y));
        }
    }
    for y in cube.clone() {
        let ny = y ^ 1;
        for z in cube.clone() {
            if z != y && z != ny {
                fam4.push((y, ny, z));
            }
        }
    }
    vec![
        ("angle(±x0, y, z)", fam1),
        ("angle(y, ±x0, z)", fam2),
        ("angle(±x0, ∓x0, y)", fam3),
        ("angle(y, -y, z)", fam4),
    ]
}

/// Verifies the base angle families and returns their minimum slack.
pub fn check_base_angles(s0: &PointSet) -> Result<Scalar> {
    let mut margin: Option<Scalar> = None;
    for (family, triples) in base_angle_families(s0) {
        if triples.is_empty() {
            continue;
        }
        let m = match acute_margin(s0, &triples) {
            Ok(m) => m,
            Err(Error::NonPositiveSlack(_, _, _, slack)) => return Err(Error::BaseAngleFailure { family, slack }),
            Err(e) => return Err(e),
        };
        if margin.as_ref().is_none_or(|g| m < *g) {
            margin = Some(m);
        }
    }
    margin.ok_or(Error::EmptyTripleSet)
}

/// Integer upper bound on the largest point norm.
pub fn norm_bound(set: &PointSet) -> BigInt {
    let max_sq = set
        .points()
        .iter()
        .map(Point::norm_sq)
        .max()
        .unwrap_or_else(Scalar::zero);
    scalar::ceil_sqrt(&max_sq)
}

/// `ε₀ = min(g / (16 R), 1/2)` for margin `g` and norm bound `R`. Moving every
/// point by less than `ε₀` changes a family slack by less than
/// `8Rε + 4ε² < g`.
pub fn epsilon0_from_margin(margin: &Scalar, r: &BigInt) -> Result<Scalar> {
    if !margin.is_positive() {
        return Err(Error::InvalidParameter(format!(
            "margin must be positive, got {margin}"
        )));
    }
    let e = margin / Scalar::from_integer(r * 16);
    Ok(e.min(scalar::ratio(1, 2)))
}

pub fn epsilon0(s0: &PointSet) -> Result<Scalar> {
    let g = check_base_angles(s0)?;
    epsilon0_from_margin(&g, &norm_bound(s0))
}

/// Mutable working copy of the set over a common integer denominator.
struct Working {
    dim: usize,
    pairs: usize,
    denom: BigInt,
    coords: Vec<Vec<BigInt>>,
    gram: Vec<Vec<BigInt>>,
}

impl Working {
    fn from_set(set: &PointSet) -> Self {
        let f = set.frame();
        Working {
            dim: set.dim(),
            pairs: (set.len() - 2) / 2,
            denom: f.scale.clone(),
            coords: f.coords.clone(),
            gram: f.gram.clone(),
        }
    }

    fn len(&self) -> usize {
        self.coords.len()
    }

    fn cube_len(&self) -> usize {
        2 * self.pairs
    }

    /// Refines the common denominator so that `den` divides it.
    fn refine(&mut self, den: &BigInt) {
        let new = self.denom.lcm(den);
        if new == self.denom {
            return;
        }
        let factor = &new / &self.denom;
        let factor_sq = &factor * &factor;
        for row in &mut self.coords {
            for v in row.iter_mut() {
                *v *= &factor;
            }
        }
        for row in &mut self.gram {
            for v in row.iter_mut() {
                *v *= &factor_sq;
            }
        }
        self.denom = new;
    }

    fn to_int(&self, p: &Point) -> Vec<BigInt> {
        p.coords()
            .iter()
            .map(|c| (c * Scalar::from_integer(self.denom.clone())).to_integer())
            .collect()
    }

    fn point(&self, i: usize) -> Point {
        Point::new(
            self.coords[i]
                .iter()
                .map(|v| Scalar::new(v.clone(), self.denom.clone()))
                .collect(),
        )
    }

    /// Overwrites point `i` and its antipode `i ^ 1` with `v` and `-v`,
    /// returning the previous coordinates and Gram rows.
    fn set_pair(&mut self, i: usize, v: Vec<BigInt>) -> (Vec<BigInt>, Vec<BigInt>) {
        let j = i ^ 1;
        let neg: Vec<BigInt> = v.iter().map(|x| -x).collect();
        let old = self.coords[i].clone();
        let old_row = self.gram[i].clone();
        self.coords[i] = v;
        self.coords[j] = neg;
        let row: Vec<BigInt> = (0..self.len())
            .map(|k| int_dot(&self.coords[i], &self.coords[k]))
            .collect();
        self.write_rows(i, &row);
        (old, old_row)
    }

    fn restore_pair(&mut self, i: usize, coords: Vec<BigInt>, row: Vec<BigInt>) {
        let j = i ^ 1;
        self.coords[j] = coords.iter().map(|x| -x).collect();
        self.coords[i] = coords;
        self.write_rows(i, &row);
    }

    /// Installs the Gram row of point `i`; the row of `i ^ 1` is its negation
    /// except on the `{i, i^1}` block.
    fn write_rows(&mut self, i: usize, row: &[BigInt]) {
        let j = i ^ 1;
        let n = self.len();
        for (k, v) in row.iter().enumerate().take(n) {
            if k == i || k == j {
                continue;
            }
            self.gram[i][k] = v.clone();
            self.gram[k][i] = v.clone();
            self.gram[j][k] = -v;
            self.gram[k][j] = -v;
        }
        let sq = row[i].clone();
        self.gram[i][i] = sq.clone();
        self.gram[j][j] = sq.clone();
        self.gram[i][j] = -&sq;
        self.gram[j][i] = -sq;
    }

    fn slack(&self, x: usize, y: usize, z: usize) -> BigInt {
        let g = &self.gram;
        &g[x][z] + &g[y][y] - &g[x][y] - &g[y][z]
    }

    /// Smallest slack over all non-exempt ordered triples touching pair `i`,
    /// stopping at the first non-positive one.
    fn pair_triples_min(&self, i: usize) -> Option<BigInt> {
        let n = self.len();
        let members = [i, i ^ 1];
        let mut best: Option<BigInt> = None;
        for x in 0..n {
            for y in 0..n {
                if y == x {
                    continue;
                }
                for z in 0..n {
                    if z == x || z == y || self.antipodes(x, z) {
                        continue;
                    }
                    if !(members.contains(&x) || members.contains(&y) || members.contains(&z)) {
                        continue;
                    }
                    let s = self.slack(x, y, z);
                    let stop = !s.is_positive();
                    if best.as_ref().is_none_or(|b| s < *b) {
                        best = Some(s);
                    }
                    if stop {
                        return best;
                    }
                }
            }
        }
        best
    }

    fn antipodes(&self, a: usize, b: usize) -> bool {
        a ^ 1 == b
    }

    fn into_point_set(self) -> Result<PointSet> {
        let points = (0..self.len()).map(|i| self.point(i)).collect();
        PointSet::new(self.dim, points)
    }
}

/// Search radius for pair `pair` (0-based).
///
/// Every protected triple `t` (a triangle with an already fixed cube vertex
/// and `±x_p`, no two antipodal) has slack `g_t > 0`. A proposal moves `x_p`
/// vertically by `δ` plus an inward radial shift of size at most `δ²`, which
/// changes `g_t` by at most `L_t δ + (1 + 4R) δ²`, where `L_t` bounds the
/// absolute last coordinates of the triangle (`|h_x| + 2|h_y| + |h_z|`). The
/// radius is the largest power of two below `ε₀/2`, `g_t / (4 L_t)` and
/// `√(g_t / (4(1 + 4R)))` for every `t`, so each such slack keeps at least
/// half its value.
fn epsilon_p_working(w: &Working, pair: usize, eps0: &Scalar, r: &BigInt) -> Result<Scalar> {
    let cube = w.cube_len();
    let fixed = 2 * pair;
    let members = [2 * pair, 2 * pair + 1];
    let last = w.dim - 1;

    // (slack, lift) minimising slack/lift, and the minimum slack overall.
    type Partial = (Option<(BigInt, BigInt)>, Option<BigInt>);
    let partial: Vec<Result<Partial>> = (0..cube)
        .into_par_iter()
        .map(|x| {
            let mut ratio_best: Option<(BigInt, BigInt)> = None;
            let mut min_slack: Option<BigInt> = None;
            for y in 0..cube {
                if y == x || w.antipodes(x, y) {
                    continue;
                }
                for z in 0..cube {
                    if z == x || z == y || w.antipodes(x, z) || w.antipodes(y, z) {
                        continue;
                    }
                    let has_fixed = x < fixed || y < fixed || z < fixed;
                    let has_member = members.contains(&x) || members.contains(&y) || members.contains(&z);
                    if !(has_fixed && has_member) {
                        continue;
                    }
                    let g = w.slack(x, y, z);
                    if !g.is_positive() {
                        return Err(Error::InvariantBreach(format!(
                            "protected triple ({x}, {y}, {z}) has slack {}",
                            Scalar::new(g, &w.denom * &w.denom)
                        )));
                    }
                    let lift: BigInt = w.coords[x][last].abs() + w.coords[y][last].abs() * 2 + w.coords[z][last].abs();
                    if lift.is_positive() && ratio_best.as_ref().is_none_or(|(bg, bl)| &g * bl < bg * &lift) {
                        ratio_best = Some((g.clone(), lift));
                    }
                    if min_slack.as_ref().is_none_or(|m| g < *m) {
                        min_slack = Some(g);
                    }
                }
            }
            Ok((ratio_best, min_slack))
        })
        .collect();

    let mut eps = eps0 / scalar::int(2);
    let denom = Scalar::from_integer(w.denom.clone());
    for item in partial {
        let (ratio_best, min_slack) = item?;
        if let Some((g, lift)) = ratio_best {
            // (g / D²) / (4 · lift / D) = g / (4 · lift · D)
            let bound = Scalar::new(g, lift * 4) / &denom;
            eps = eps.min(bound);
        }
        if let Some(g) = min_slack {
            let g = Scalar::new(g, &w.denom * &w.denom);
            let curvature = g / Scalar::from_integer((r * 4 + 1) * 4);
            let bound = scalar::dyadic_sqrt_floor(&curvature.min(Scalar::one()));
            eps = eps.min(bound);
        }
    }
    Ok(scalar::dyadic_floor(&eps))
}

/// Search radius for perturbing pair `pair` (1-based) of a working set laid
/// out as produced by [`base_set`]; pairs `1..pair` are treated as fixed.
pub fn epsilon_p(v: &PointSet, pair: usize, eps0: &Scalar) -> Result<Scalar> {
    check_layout(v, pair)?;
    let w = Working::from_set(v);
    epsilon_p_working(&w, pair - 1, eps0, &norm_bound(v))
}

fn check_layout(v: &PointSet, pair: usize) -> Result<()> {
    if v.len() < 4 || !v.len().is_multiple_of(2) || !v.is_cs() {
        return Err(Error::InvalidParameter(
            "expected a cs working set with an apex pair".into(),
        ));
    }
    let pairs = (v.len() - 2) / 2;
    if pair == 0 || pair > pairs {
        return Err(Error::InvalidParameter(format!(
            "pair index {pair} outside 1..={pairs}"
        )));
    }
    for i in 0..v.len() {
        if v.antipode(i) != Some(i ^ 1) {
            return Err(Error::InvalidParameter(format!(
                "point {i} is not paired with {}",
                i ^ 1
            )));
        }
    }
    Ok(())
}

struct PairOutcome {
    attempts: usize,
    eps: Scalar,
    displacement_sq: Scalar,
}

fn draw(rng: &mut ChaCha8Rng, bits: u32, lo: u64, hi: u64) -> Scalar {
    Scalar::new(BigInt::from(rng.random_range(lo..hi)), scalar::pow2(bits))
}

/// Proposal: a vertical lift `h` with `|h| ∈ [ε/4, 3ε/4)` and an inward radial
/// shift of each cube coordinate by `s_k ∈ [s/2, s)`, `s ≤ h² / (2(d-1))`.
fn propose(base: &Point, eps: &Scalar, bits: u32, rng: &mut ChaCha8Rng) -> Point {
    let d = base.dim();
    let quarter = 1u64 << (bits - 2);
    let mut h = eps * draw(rng, bits, quarter, 3 * quarter);
    if rng.random_bool(0.5) {
        h = -h;
    }
    let s = scalar::dyadic_floor(&(&h * &h / scalar::int(2 * (d as i64 - 1))));
    let half = 1u64 << (bits - 1);
    let mut coords: Vec<Scalar> = base.coords()[..d - 1]
        .iter()
        .map(|x| {
            let shift = &s * draw(rng, bits, half, 2 * half);
            x - x * shift
        })
        .collect();
    coords.push(base.coords()[d - 1].clone() + h);
    Point::new(coords)
}

fn perturb_working(
    w: &mut Working,
    pair: usize,
    eps: &Scalar,
    params: &ConstructionParams,
    rng: &mut ChaCha8Rng,
    best_slack: &mut Option<Scalar>,
) -> Option<(usize, Scalar)> {
    let i = 2 * pair;
    let original = w.point(i);
    let eps_sq = eps * eps;
    for attempt in 1..=params.max_attempts_per_pair {
        let candidate = if attempt == 1 {
            original.clone()
        } else {
            propose(&original, eps, params.denom_bits, rng)
        };
        let disp_sq = candidate.sub(&original).expect("same dimension").norm_sq();
        if disp_sq >= eps_sq {
            continue;
        }
        let den = scalar::common_denominator(candidate.coords());
        w.refine(&den);
        let ints = w.to_int(&candidate);
        let (old, old_row) = w.set_pair(i, ints);
        match w.pair_triples_min(i) {
            Some(m) if !m.is_positive() => {
                let m = Scalar::new(m, &w.denom * &w.denom);
                if best_slack.as_ref().is_none_or(|b| m > *b) {
                    *best_slack = Some(m);
                }
                w.restore_pair(i, old, old_row);
            }
            _ => return Some((attempt, disp_sq)),
        }
    }
    None
}

/// Perturbs pair `pair` (0-based) with one halving of the radius on failure.
fn perturb_pair_working(
    w: &mut Working,
    pair: usize,
    eps: Scalar,
    params: &ConstructionParams,
    rng: &mut ChaCha8Rng,
) -> Result<PairOutcome> {
    let mut best = None;
    let mut used = 0;
    let mut eps = eps;
    for round in 0..2 {
        if round == 1 {
            eps /= scalar::int(2);
        }
        if let Some((attempts, displacement_sq)) = perturb_working(w, pair, &eps, params, rng, &mut best) {
            return Ok(PairOutcome {
                attempts: used + attempts,
                eps,
                displacement_sq,
            });
        }
        used += params.max_attempts_per_pair;
    }
    Err(Error::PerturbationFailed {
        pair: pair + 1,
        attempts: used,
        best_slack: best.map_or_else(|| "n/a".into(), |s| s.to_string()),
    })
}

/// Moves pair `pair` (1-based) of `v` to a point within `eps` of its current
/// position such that every non-exempt ordered triple touching the pair is
/// acute. Returns the new representative `x'_p` and the attempts used.
pub fn perturb_pair(
    v: &PointSet,
    pair: usize,
    eps: &Scalar,
    params: &ConstructionParams,
    rng: &mut ChaCha8Rng,
) -> Result<(Point, usize)> {
    check_layout(v, pair)?;
    if !eps.is_positive() {
        return Err(Error::InvalidParameter(format!("eps must be positive, got {eps}")));
    }
    let mut w = Working::from_set(v);
    let mut best = None;
    match perturb_working(&mut w, pair - 1, eps, params, rng, &mut best) {
        Some((attempts, _)) => Ok((w.point(2 * (pair - 1)), attempts)),
        None => Err(Error::PerturbationFailed {
            pair,
            attempts: params.max_attempts_per_pair,
            best_slack: best.map_or_else(|| "n/a".into(), |s| s.to_string()),
        }),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StarCheck {
    pub ok: bool,
    /// Fixed points displaced by `ε₀` or more from their cube vertex.
    pub displaced: Vec<usize>,
    pub violations: Vec<TripleViolation>,
}

/// Checks the induction invariant after `p` pairs are fixed: (a) every fixed
/// point lies within `ε₀` of its cube vertex in `base`, and (b) every
/// triangle of cube points containing a fixed point and no antipodal pair
/// has three acute angles.
pub fn check_star_property(v: &PointSet, base: &PointSet, p: usize, eps0: &Scalar) -> Result<StarCheck> {
    if v.len() != base.len() || v.dim() != base.dim() {
        return Err(Error::InvalidParameter(
            "working set and base set differ in shape".into(),
        ));
    }
    let cube = v.len() - 2;
    if 2 * p > cube {
        return Err(Error::InvalidParameter(format!("p = {p} exceeds the pair count")));
    }
    let fixed = 2 * p;
    let eps0_sq = eps0 * eps0;
    let displaced: Vec<usize> = (0..fixed)
        .filter(|&i| v.point(i).sub(base.point(i)).expect("same dimension").norm_sq() >= eps0_sq)
        .collect();

    let f = v.frame();
    let anti = |a: usize, b: usize| a ^ 1 == b;
    let mut violations = Vec::new();
    for x in 0..fixed {
        for y in 0..cube {
            if y == x || anti(x, y) {
                continue;
            }
            for z in 0..cube {
                if z == x || z == y || anti(x, z) || anti(y, z) {
                    continue;
                }
                // angles at y and at x; the angle at z appears with y and z swapped
                for (a, b, c) in [(x, y, z), (y, x, z)] {
                    if !f.slack_positive(a, b, c) && violations.len() < DEFAULT_MAX_VIOLATIONS {
                        violations.push(TripleViolation {
                            triple: (a, b, c),
                            slack: f.slack(a, b, c),
                        });
                    }
                }
            }
        }
    }
    violations.sort_by_key(|t| t.triple);
    violations.dedup();
    Ok(StarCheck {
        ok: displaced.is_empty() && violations.is_empty(),
        displaced,
        violations,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairRecord {
    pub p: usize,
    #[serde(serialize_with = "crate::predicates::ser_scalar")]
    pub eps: Scalar,
    pub attempts: usize,
    #[serde(serialize_with = "crate::predicates::ser_scalar")]
    pub displacement_sq: Scalar,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConstructionTrace {
    pub d: usize,
    #[serde(serialize_with = "crate::predicates::ser_scalar")]
    pub c: Scalar,
    pub seed: u64,
    #[serde(serialize_with = "crate::predicates::ser_scalar")]
    pub epsilon0: Scalar,
    pub pairs: Vec<PairRecord>,
    pub total_points: usize,
}

impl ConstructionTrace {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("trace serializes");
        s.push('\n');
        s
    }
}

/// Builds and verifies an almost acute set of `2^(d-1) + 2` points.
///
/// The result is deterministic in `(d, c, seed, denom_bits,
/// max_attempts_per_pair)`. The set is returned only after the full
/// almost-acute scan, the span check and the size check pass.
pub fn construct(params: &ConstructionParams) -> Result<(PointSet, ConstructionTrace)> {
    params.validate()?;
    let d = params.d;
    let s0 = base_set(d, &params.c)?;
    let margin = check_base_angles(&s0)?;
    let r = norm_bound(&s0);
    let eps0 = epsilon0_from_margin(&margin, &r)?;

    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let mut w = Working::from_set(&s0);
    let mut records = Vec::with_capacity(w.pairs);
    for pair in 0..w.pairs {
        let eps = epsilon_p_working(&w, pair, &eps0, &r)?;
        if !(eps.is_positive() && eps < eps0) {
            return Err(Error::InvariantBreach(format!(
                "radius {eps} for pair {} outside (0, ε₀)",
                pair + 1
            )));
        }
        let outcome = perturb_pair_working(&mut w, pair, eps, params, &mut rng)?;
        let i = 2 * pair;
        if w.coords[i ^ 1].iter().zip(&w.coords[i]).any(|(a, b)| *a != -b) {
            return Err(Error::InvariantBreach(format!(
                "pair {} lost antipodal lockstep",
                pair + 1
            )));
        }
        records.push(PairRecord {
            p: pair + 1,
            eps: outcome.eps,
            attempts: outcome.attempts,
            displacement_sq: outcome.displacement_sq,
        });
    }

    let set = w.into_point_set()?;
    let expected = (1usize << (d - 1)) + 2;
    if set.len() != expected || !set.is_cs() {
        return Err(Error::InvariantBreach(
            "constructed set has wrong size or symmetry".into(),
        ));
    }
    if !predicates::spans(&set, d) {
        return Err(Error::InvariantBreach("constructed set does not span".into()));
    }
    let report = predicates::is_almost_acute(&set, 1)?;
    if !report.ok {
        return Err(Error::InvariantBreach(format!(
            "final scan found {} non-acute triples, first {:?}",
            report.violation_count, report.violations
        )));
    }
    let trace = ConstructionTrace {
        d,
        c: params.c.clone(),
        seed: params.seed,
        epsilon0: eps0,
        pairs: records,
        total_points: set.len(),
    };
    Ok((set, trace))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, ratio};

    fn with_pair(v: &PointSet, pair: usize, x: Point) -> PointSet {
        let mut pts = v.points().to_vec();
        let i = 2 * (pair - 1);
        pts[i + 1] = x.neg();
        pts[i] = x;
        PointSet::new(v.dim(), pts).unwrap()
    }

    #[test]
    fn base_set_d3() {
        let s = base_set(3, &int(2)).unwrap();
        let want: Vec<Point> = [[1, 1, 0], [-1, -1, 0], [1, -1, 0], [-1, 1, 0], [0, 0, 2], [0, 0, -2]]
            .iter()
            .map(|v| Point::from_ints(v))
            .collect();
        assert_eq!(s.points(), want.as_slice());
        assert!(s.is_cs());
        for i in 0..s.len() {
            assert_eq!(s.antipode(i), Some(i ^ 1));
        }
    }

    #[test]
    fn base_set_d2_and_bad_apex() {
        let s = base_set(2, &int(2)).unwrap();
        assert_eq!(s.len(), 4);
        assert_eq!(s.point(0), &Point::from_ints(&[1, 0]));
        assert_eq!(s.point(2), &Point::from_ints(&[0, 2]));
        assert!(base_set(3, &int(1)).is_err());
        assert!(base_set(4, &ratio(173, 100)).is_err());
        assert!(base_set(4, &ratio(174, 100)).is_ok());
    }

    #[test]
    fn default_c_is_smallest_integer() {
        for d in 2..=20usize {
            let c = default_c(d);
            assert!(&c * &c > int(d as i64 - 1));
            let b = &c - int(1);
            assert!(&b * &b <= int(d as i64 - 1));
        }
    }

    #[test]
    fn base_angle_margins() {
        assert_eq!(check_base_angles(&base_set(3, &int(2)).unwrap()).unwrap(), int(2));
        assert_eq!(check_base_angles(&base_set(4, &int(2)).unwrap()).unwrap(), int(1));
    }

    #[test]
    fn apex_family_slack_is_two_c_squared() {
        for (d, c) in [(3, int(2)), (4, int(2)), (5, ratio(5, 2)), (7, int(3))] {
            let s = base_set(d, &c).unwrap();
            let fam = base_angle_families(&s)
                .into_iter()
                .find(|f| f.0 == "angle(±x0, ∓x0, y)")
                .unwrap();
            for (x, y, z) in fam.1 {
                assert_eq!(
                    predicates::slack(s.point(x), s.point(y), s.point(z)).unwrap(),
                    &c * &c * int(2)
                );
            }
        }
    }

    #[test]
    fn epsilon0_values() {
        assert_eq!(epsilon0(&base_set(3, &int(2)).unwrap()).unwrap(), ratio(1, 16));
        assert_eq!(epsilon0(&base_set(4, &int(2)).unwrap()).unwrap(), ratio(1, 32));
        assert!(epsilon0_from_margin(&int(0), &BigInt::from(2)).is_err());
        assert_eq!(epsilon0_from_margin(&int(100), &BigInt::from(1)).unwrap(), ratio(1, 2));
        for d in 2..=9 {
            let e = epsilon0(&base_set(d, &default_c(d)).unwrap()).unwrap();
            assert!(e.is_positive() && e <= ratio(1, 2));
        }
    }

    #[test]
    fn epsilon_p_first_pair_is_half_eps0_on_grid() {
        for d in 3..=6 {
            let s = base_set(d, &default_c(d)).unwrap();
            let e0 = epsilon0(&s).unwrap();
            assert_eq!(epsilon_p(&s, 1, &e0).unwrap(), scalar::dyadic_floor(&(&e0 / int(2))));
        }
        let s = base_set(3, &int(2)).unwrap();
        assert!(epsilon_p(&s, 0, &ratio(1, 16)).is_err());
        assert!(epsilon_p(&s, 3, &ratio(1, 16)).is_err());
    }

    #[test]
    fn epsilon_p_after_first_pair_d4() {
        let params = ConstructionParams::new(4, 1).unwrap();
        let s = base_set(4, &params.c).unwrap();
        let e0 = epsilon0(&s).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let e1 = epsilon_p(&s, 1, &e0).unwrap();
        let (x, _) = perturb_pair(&s, 1, &e1, &params, &mut rng).unwrap();
        let v = with_pair(&s, 1, x);
        let e2 = epsilon_p(&v, 2, &e0).unwrap();
        assert!(e2.is_positive() && e2 < e0);
    }

    #[test]
    fn zero_displacement_first_at_d3() {
        let params = ConstructionParams::new(3, 5).unwrap();
        let s = base_set(3, &params.c).unwrap();
        let e0 = epsilon0(&s).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for pair in 1..=2 {
            let e = epsilon_p(&s, pair, &e0).unwrap();
            let (x, attempts) = perturb_pair(&s, pair, &e, &params, &mut rng).unwrap();
            assert_eq!(attempts, 1);
            assert_eq!(&x, s.point(2 * (pair - 1)));
        }
    }

    #[test]
    fn induction_replay_keeps_star_property() {
        for (d, seed) in [(4, 1u64), (5, 0)] {
            let params = ConstructionParams::new(d, seed).unwrap();
            let base = base_set(d, &params.c).unwrap();
            let e0 = epsilon0(&base).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut v = base.clone();
            assert!(check_star_property(&v, &base, 0, &e0).unwrap().ok);
            for pair in 1..=pair_count(d) {
                let e = epsilon_p(&v, pair, &e0).unwrap();
                assert!(e.is_positive() && e < e0);
                let (x, attempts) = perturb_pair(&v, pair, &e, &params, &mut rng).unwrap();
                assert!(attempts <= params.max_attempts_per_pair);
                let moved = x.sub(v.point(2 * (pair - 1))).unwrap().norm_sq();
                assert!(moved < &e * &e);
                v = with_pair(&v, pair, x);
                let star = check_star_property(&v, &base, pair, &e0).unwrap();
                assert!(star.ok, "d={d} pair={pair}: {star:?}");
            }
            assert!(predicates::is_almost_acute(&v, 1).unwrap().ok);
        }
    }

    #[test]
    fn star_property_catches_large_move() {
        let base = base_set(4, &int(2)).unwrap();
        let e0 = epsilon0(&base).unwrap();
        let mut shifted = base.point(0).coords().to_vec();
        shifted[3] += &e0 * int(2);
        let v = with_pair(&base, 1, Point::new(shifted));
        let star = check_star_property(&v, &base, 1, &e0).unwrap();
        assert!(!star.ok);
        assert_eq!(star.displaced, vec![0, 1]);
    }

    #[test]
    fn construct_sizes_and_trace() {
        for (d, n) in [(2, 4), (3, 6), (4, 10), (6, 34)] {
            let params = ConstructionParams::new(d, 0).unwrap();
            let (s, trace) = construct(&params).unwrap();
            assert_eq!(s.len(), n);
            assert_eq!(trace.total_points, n);
            assert_eq!(trace.pairs.len(), pair_count(d));
            assert!(predicates::is_almost_acute(&s, 1).unwrap().ok);
            for r in &trace.pairs {
                assert!(r.eps.is_positive() && r.eps < trace.epsilon0);
                assert!(r.displacement_sq < &r.eps * &r.eps);
            }
        }
    }

    #[test]
    fn construct_d3_needs_no_moves() {
        let (s, trace) = construct(&ConstructionParams::new(3, 99).unwrap()).unwrap();
        assert_eq!(s.points(), base_set(3, &int(2)).unwrap().points());
        assert!(trace
            .pairs
            .iter()
            .all(|r| r.attempts == 1 && r.displacement_sq.is_zero()));
    }

    #[test]
    fn construct_is_deterministic() {
        let p = ConstructionParams::new(5, 42).unwrap();
        let (a, ta) = construct(&p).unwrap();
        let (b, tb) = construct(&p).unwrap();
        assert_eq!(a.points(), b.points());
        assert_eq!(ta.to_json(), tb.to_json());
        let (c, _) = construct(&ConstructionParams::new(5, 43).unwrap()).unwrap();
        assert_ne!(a.points(), c.points());
    }

    #[test]
    fn params_validation() {
        assert!(ConstructionParams::new(1, 0).is_err());
        assert!(ConstructionParams::new(4, 0).unwrap().with_c(int(1)).is_err());
        let mut p = ConstructionParams::new(4, 0).unwrap();
        p.max_attempts_per_pair = 0;
        assert!(p.validate().is_err());
        p.max_attempts_per_pair = 1;
        p.denom_bits = 3;
        assert!(p.validate().is_err());
    }
}
