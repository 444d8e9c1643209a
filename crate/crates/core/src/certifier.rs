//! Exact face certificates for `conv(S)`.
//!
//! Every certificate is a linear functional `u` with a threshold, and can be
//! re-validated by dot products alone ([`FaceCertificate::verify`]). Direct
//! certificates come from the supporting-hyperplane argument for almost acute
//! sets; when they do not apply, an exact LP decides.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::bounds;
use crate::error::{Error, Result};
use crate::lp::{lp_feasible, LpOutcome, LpProblem};
use crate::point::{int_dot, integer_multiple, Point, PointSet};
use crate::predicates::{self, AlmostAcuteReport, DEFAULT_MAX_VIOLATIONS};
use crate::scalar::{self, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FaceKind {
    Vertex,
    Edge,
    Strip,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceCertificate {
    pub kind: FaceKind,
    pub direction: Point,
    /// Maximum of `u` over the set, attained exactly on `tight` (vertex and
    /// edge) or at `tight[0]` (strip).
    pub threshold: Scalar,
    /// Strip only: the minimum of `u`, attained at `tight[1]`.
    pub floor: Option<Scalar>,
    pub tight: Vec<usize>,
}

impl FaceCertificate {
    /// Re-validates the certificate against `set` using only dot products.
    pub fn verify(&self, set: &PointSet) -> bool {
        if self.direction.dim() != set.dim() {
            return false;
        }
        let f = set.frame();
        let (u, lu) = integer_multiple(self.direction.coords());
        // value_k = (u·S_k) / (lu · L) with S_k the integer frame coordinates
        let scale = Scalar::from_integer(&lu * &f.scale);
        let values: Vec<BigInt> = f.coords.iter().map(|s| int_dot(&u, s)).collect();
        let to_units = |v: &Scalar| v * &scale;
        let top = to_units(&self.threshold);
        let value = |k: usize| Scalar::from_integer(values[k].clone());
        match self.kind {
            FaceKind::Vertex | FaceKind::Edge => {
                let want = if self.kind == FaceKind::Vertex { 1 } else { 2 };
                if self.tight.len() != want || self.tight.iter().any(|&k| k >= set.len()) {
                    return false;
                }
                (0..set.len()).all(|k| {
                    if self.tight.contains(&k) {
                        value(k) == top
                    } else {
                        value(k) < top
                    }
                })
            }
            FaceKind::Strip => {
                let (Some(floor), [hi, lo]) = (&self.floor, self.tight.as_slice()) else {
                    return false;
                };
                if *hi >= set.len() || *lo >= set.len() {
                    return false;
                }
                let bottom = to_units(floor);
                value(*hi) == top
                    && value(*lo) == bottom
                    && top > bottom
                    && (0..set.len()).all(|k| value(k) <= top && value(k) >= bottom)
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum EdgeMethod {
    /// Hyperplane through `x` and `y` with normal `x + y` (the rectangle case
    /// `‖x‖ = ‖y‖`).
    DirectCase1,
    /// Normal `x + y` tilted by a multiple of `x - y` so that the hyperplane
    /// passes through both `x` and `y`.
    DirectCase2,
    Lp,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum EdgeVerdict {
    Edge,
    NotEdge,
    AntipodalSkip,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeReport {
    pub pair: (usize, usize),
    pub verdict: EdgeVerdict,
    pub method: Option<EdgeMethod>,
    pub certificate: Option<FaceCertificate>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CertifyOptions {
    /// Try the direct hyperplanes before the LP.
    pub direct: bool,
    pub max_violations: usize,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        CertifyOptions {
            direct: true,
            max_violations: DEFAULT_MAX_VIOLATIONS,
        }
    }
}

impl CertifyOptions {
    pub fn lp_only() -> Self {
        CertifyOptions {
            direct: false,
            ..Self::default()
        }
    }
}

fn int_point(v: Vec<BigInt>) -> Point {
    Point::new(v.into_iter().map(Scalar::from_integer).collect())
}

fn diff_row(set: &PointSet, a: usize, b: usize) -> Vec<Scalar> {
    let f = set.frame();
    f.coords[a]
        .iter()
        .zip(&f.coords[b])
        .map(|(x, y)| Scalar::from_integer(x - y))
        .collect()
}

/// Converts an LP witness `u` (a functional on the integer frame) into a
/// certificate on the original coordinates.
fn lp_certificate(set: &PointSet, kind: FaceKind, u: &[Scalar], tight: Vec<usize>) -> FaceCertificate {
    let direction = Point::new(u.to_vec());
    let threshold = direction.dot(set.point(tight[0])).expect("same dimension");
    let floor = (kind == FaceKind::Strip).then(|| direction.dot(set.point(tight[1])).expect("same dimension"));
    FaceCertificate {
        kind,
        direction,
        threshold,
        floor,
        tight,
    }
}

/// Direct vertex certificate `u = x`, valid when `x·s < x·x` for every other
/// point (always the case for almost acute sets).
pub fn vertex_certificate_direct(set: &PointSet, i: usize) -> Option<FaceCertificate> {
    let f = set.frame();
    let g = &f.gram;
    if !(0..set.len()).all(|k| k == i || g[i][k] < g[i][i]) {
        return None;
    }
    Some(FaceCertificate {
        kind: FaceKind::Vertex,
        direction: int_point(f.coords[i].clone()),
        threshold: f.unscale(g[i][i].clone(), 1),
        floor: None,
        tight: vec![i],
    })
}

pub fn vertex_certificate_lp(set: &PointSet, i: usize) -> Result<Option<FaceCertificate>> {
    let mut prob = LpProblem::new(set.dim());
    for k in (0..set.len()).filter(|&k| k != i) {
        prob.at_least(diff_row(set, i, k), Scalar::one());
    }
    Ok(match lp_feasible(&prob)? {
        LpOutcome::Feasible(u) => Some(lp_certificate(set, FaceKind::Vertex, &u, vec![i])),
        LpOutcome::Infeasible => None,
    })
}

/// Certifies point `i` as a vertex of `conv(set)`; `None` means it is not one.
pub fn vertex_certificate(
    set: &PointSet,
    i: usize,
    opts: &CertifyOptions,
) -> Result<Option<(FaceCertificate, EdgeMethod)>> {
    if opts.direct {
        if let Some(c) = vertex_certificate_direct(set, i) {
            return Ok(Some((c, EdgeMethod::DirectCase1)));
        }
    }
    Ok(vertex_certificate_lp(set, i)?.map(|c| (c, EdgeMethod::Lp)))
}

/// Direct edge certificate for `[x_i, x_j]`.
///
/// The normal `x + y` is that of the hyperplane through `x` perpendicular to
/// `[-y, x]`. When `‖x‖ = ‖y‖` it also passes through `y`. Otherwise the
/// normal is tilted to `(x + y) + t(x - y)` with
/// `t = (‖y‖² - ‖x‖²) / ‖x - y‖²`, the unique tilt along `x - y` that puts
/// `x` and `y` at the same level. Either way every other point must lie
/// strictly below; if not, the result is inconclusive (`None`).
pub fn edge_certificate_direct(set: &PointSet, i: usize, j: usize) -> Result<Option<(FaceCertificate, EdgeMethod)>> {
    if i == j || set.are_antipodes(i, j) {
        return Err(Error::InvalidParameter(format!(
            "direct edge certificate needs distinct non-antipodal points, got ({i}, {j})"
        )));
    }
    let f = set.frame();
    let g = &f.gram;
    let num = &g[j][j] - &g[i][i];
    let den = &g[i][i] - &g[i][j] * 2 + &g[j][j];
    let (a, b, method) = if num.is_zero() {
        (BigInt::one(), BigInt::one(), EdgeMethod::DirectCase1)
    } else {
        // u = den(x + y) + num(x - y) = (den + num) x + (den - num) y
        (&den + &num, &den - &num, EdgeMethod::DirectCase2)
    };
    let value = |k: usize| &a * &g[i][k] + &b * &g[j][k];
    let top = value(i);
    debug_assert_eq!(top, value(j));
    if !(0..set.len()).all(|k| k == i || k == j || value(k) < top) {
        return Ok(None);
    }
    let direction: Vec<BigInt> = f.coords[i]
        .iter()
        .zip(&f.coords[j])
        .map(|(x, y)| &a * x + &b * y)
        .collect();
    Ok(Some((
        FaceCertificate {
            kind: FaceKind::Edge,
            direction: int_point(direction),
            threshold: f.unscale(top, 1),
            floor: None,
            tight: vec![i, j],
        },
        method,
    )))
}

/// LP route: `[x, y]` is an edge iff some `u` has `u·(x - y) = 0` and
/// `u·(x - s) ≥ 1` for every other `s`.
pub fn edge_certificate_lp(set: &PointSet, i: usize, j: usize) -> Result<Option<FaceCertificate>> {
    let mut prob = LpProblem::new(set.dim());
    prob.equal(diff_row(set, i, j), Scalar::zero());
    for k in (0..set.len()).filter(|&k| k != i && k != j) {
        prob.at_least(diff_row(set, i, k), Scalar::one());
    }
    Ok(match lp_feasible(&prob)? {
        LpOutcome::Feasible(u) => Some(lp_certificate(set, FaceKind::Edge, &u, vec![i, j])),
        LpOutcome::Infeasible => None,
    })
}

pub fn is_edge(set: &PointSet, i: usize, j: usize, opts: &CertifyOptions) -> Result<EdgeReport> {
    if i == j {
        return Err(Error::InvalidParameter(format!("edge query with coincident index {i}")));
    }
    let pair = (i, j);
    if set.are_antipodes(i, j) {
        return Ok(EdgeReport {
            pair,
            verdict: EdgeVerdict::AntipodalSkip,
            method: None,
            certificate: None,
        });
    }
    if opts.direct {
        if let Some((cert, method)) = edge_certificate_direct(set, i, j)? {
            return Ok(EdgeReport {
                pair,
                verdict: EdgeVerdict::Edge,
                method: Some(method),
                certificate: Some(cert),
            });
        }
    }
    let cert = edge_certificate_lp(set, i, j)?;
    Ok(EdgeReport {
        pair,
        verdict: if cert.is_some() {
            EdgeVerdict::Edge
        } else {
            EdgeVerdict::NotEdge
        },
        method: Some(EdgeMethod::Lp),
        certificate: cert,
    })
}

/// Strip LP for the pair `{x, y}`: `u·(x - s) ≥ 0`, `u·(s - y) ≥ 0` for all
/// `s`, and `u·(x - y) ≥ 1`.
pub fn strip_certificate_lp(set: &PointSet, i: usize, j: usize) -> Result<Option<FaceCertificate>> {
    let mut prob = LpProblem::new(set.dim());
    for k in (0..set.len()).filter(|&k| k != i) {
        prob.at_least(diff_row(set, i, k), Scalar::zero());
    }
    for k in (0..set.len()).filter(|&k| k != j) {
        prob.at_least(diff_row(set, k, j), Scalar::zero());
    }
    prob.at_least(diff_row(set, i, j), Scalar::one());
    Ok(match lp_feasible(&prob)? {
        LpOutcome::Feasible(u) => Some(lp_certificate(set, FaceKind::Strip, &u, vec![i, j])),
        LpOutcome::Infeasible => None,
    })
}

/// Strip certificate derived from a face of a cs set: the vertex certificate
/// of `x` serves the pair `{x, -x}`, and the edge certificate of `[x, -y]`
/// serves `{x, y}`, since `u` attains its minimum at `-(-y) = y`.
fn strip_certificate_direct(set: &PointSet, i: usize, j: usize) -> Result<Option<FaceCertificate>> {
    let Some(anti_j) = set.antipode(j) else {
        return Ok(None);
    };
    let face = if anti_j == i {
        vertex_certificate_direct(set, i)
    } else {
        edge_certificate_direct(set, i, anti_j)?.map(|(c, _)| c)
    };
    let Some(face) = face else {
        return Ok(None);
    };
    let cert = FaceCertificate {
        kind: FaceKind::Strip,
        floor: Some(-face.threshold.clone()),
        threshold: face.threshold,
        direction: face.direction,
        tight: vec![i, j],
    };
    // A face of a cs set and its mirror bound the strip, so no recheck here.
    Ok(Some(cert))
}

#[derive(Debug, Clone)]
pub struct AntipodalReport {
    pub ok: bool,
    pub pairs_checked: usize,
    pub direct: usize,
    pub lp: usize,
    /// Pairs with no strip, capped at [`DEFAULT_MAX_VIOLATIONS`].
    pub failures: Vec<(usize, usize)>,
    pub failure_count: usize,
    pub certificates: Vec<FaceCertificate>,
}

pub fn is_antipodal_set(set: &PointSet, opts: &CertifyOptions) -> Result<AntipodalReport> {
    let n = set.len();
    if n < 2 {
        return Err(Error::InvalidParameter("antipodality needs at least 2 points".into()));
    }
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let results: Vec<Result<(Option<FaceCertificate>, bool)>> = pairs
        .par_iter()
        .map(|&(i, j)| {
            if opts.direct {
                if let Some(c) = strip_certificate_direct(set, i, j)? {
                    return Ok((Some(c), true));
                }
            }
            Ok((strip_certificate_lp(set, i, j)?, false))
        })
        .collect();
    let mut report = AntipodalReport {
        ok: true,
        pairs_checked: pairs.len(),
        direct: 0,
        lp: 0,
        failures: Vec::new(),
        failure_count: 0,
        certificates: Vec::with_capacity(pairs.len()),
    };
    for (pair, res) in pairs.into_iter().zip(results) {
        let (cert, direct) = res?;
        if direct {
            report.direct += 1;
        } else {
            report.lp += 1;
        }
        match cert {
            Some(c) => report.certificates.push(c),
            None => {
                report.failure_count += 1;
                if report.failures.len() < DEFAULT_MAX_VIOLATIONS {
                    report.failures.push(pair);
                }
            }
        }
    }
    report.ok = report.failure_count == 0;
    Ok(report)
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct MethodHistogram {
    pub direct: usize,
    pub lp: usize,
    pub direct_case1: usize,
    pub direct_case2: usize,
}

impl MethodHistogram {
    fn record(&mut self, m: EdgeMethod) {
        match m {
            EdgeMethod::DirectCase1 => {
                self.direct += 1;
                self.direct_case1 += 1;
            }
            EdgeMethod::DirectCase2 => {
                self.direct += 1;
                self.direct_case2 += 1;
            }
            EdgeMethod::Lp => self.lp += 1,
        }
    }
}

#[derive(Debug, Clone)]
pub struct NeighborlyReport {
    pub ok: bool,
    pub vertices_ok: bool,
    pub non_vertices: Vec<usize>,
    pub vertex_methods: MethodHistogram,
    pub expected_edges: usize,
    pub confirmed_edges: usize,
    pub methods: MethodHistogram,
    /// Non-antipodal pairs that are not edges, capped.
    pub missing_edges: Vec<(usize, usize)>,
    pub vertex_certificates: Vec<FaceCertificate>,
    pub edges: Vec<EdgeReport>,
}

/// Certifies every point as a vertex and every non-antipodal pair as an edge.
pub fn is_two_neighborly(set: &PointSet, opts: &CertifyOptions) -> Result<NeighborlyReport> {
    let pairing = set
        .pairing()
        .ok_or_else(|| Error::NotCentrallySymmetric("2-neighborliness is checked on cs sets".into()))?;
    let n = set.len();
    let vertex_results: Vec<Result<Option<(FaceCertificate, EdgeMethod)>>> = (0..n)
        .into_par_iter()
        .map(|i| vertex_certificate(set, i, opts))
        .collect();
    let mut non_vertices = Vec::new();
    let mut vertex_certificates = Vec::with_capacity(n);
    let mut vertex_methods = MethodHistogram::default();
    for (i, r) in vertex_results.into_iter().enumerate() {
        match r? {
            Some((c, m)) => {
                vertex_methods.record(m);
                vertex_certificates.push(c);
            }
            None => non_vertices.push(i),
        }
    }

    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .filter(|&(i, j)| pairing[i] != j)
        .collect();
    let edges = pairs
        .par_iter()
        .map(|&(i, j)| is_edge(set, i, j, opts))
        .collect::<Result<Vec<_>>>()?;

    let mut methods = MethodHistogram::default();
    let mut confirmed = 0;
    let mut missing = Vec::new();
    for e in &edges {
        if let Some(m) = e.method {
            methods.record(m);
        }
        match e.verdict {
            EdgeVerdict::Edge => confirmed += 1,
            EdgeVerdict::NotEdge if missing.len() < DEFAULT_MAX_VIOLATIONS => missing.push(e.pair),
            _ => {}
        }
    }
    let expected = n * (n - 1) / 2 - n / 2;
    let vertices_ok = non_vertices.is_empty();
    Ok(NeighborlyReport {
        ok: vertices_ok && confirmed == expected,
        vertices_ok,
        non_vertices,
        vertex_methods,
        expected_edges: expected,
        confirmed_edges: confirmed,
        methods,
        missing_edges: missing,
        vertex_certificates,
        edges,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct AlmostAcuteSummary {
    pub ok: bool,
    pub violations: Vec<predicates::TripleViolation>,
    pub violation_count: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct VertexSummary {
    pub ok: bool,
    pub non_vertices: Vec<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct EdgeSummary {
    pub expected: usize,
    pub confirmed: usize,
    pub methods: MethodHistogram,
    pub missing: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, Serialize)]
pub struct BoundsGate {
    pub vertex_range: Option<(u64, u64)>,
    pub within_vertex_range: Option<bool>,
    #[serde(serialize_with = "ser_opt_scalar")]
    pub edge_upper: Option<Scalar>,
    pub edges_within_upper: Option<bool>,
    pub antipodal_max: u64,
    pub within_antipodal_max: bool,
    pub ok: bool,
}

fn ser_opt_scalar<S: serde::Serializer>(v: &Option<Scalar>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(x) => s.serialize_str(&x.to_string()),
        None => s.serialize_none(),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct TheoremReport {
    pub d: usize,
    pub n: usize,
    pub cs: bool,
    pub spans: bool,
    pub almost_acute: AlmostAcuteSummary,
    pub vertices: VertexSummary,
    pub edges: EdgeSummary,
    pub antipodal: bool,
    pub two_neighborly: bool,
    pub size_ok: bool,
    pub certificates_verified: bool,
    pub bounds: BoundsGate,
    pub theorem_ok: bool,
    #[serde(skip)]
    pub almost_acute_full: Option<AlmostAcuteReport>,
    #[serde(skip)]
    pub neighborly: Option<NeighborlyReport>,
    #[serde(skip)]
    pub antipodal_full: Option<AntipodalReport>,
}

impl TheoremReport {
    /// All certificates that were produced, in a stable order.
    pub fn certificates(&self) -> Vec<&FaceCertificate> {
        let mut out = Vec::new();
        if let Some(nb) = &self.neighborly {
            out.extend(nb.vertex_certificates.iter());
            out.extend(nb.edges.iter().filter_map(|e| e.certificate.as_ref()));
        }
        if let Some(a) = &self.antipodal_full {
            out.extend(a.certificates.iter());
        }
        out
    }
}

/// Runs every check needed to conclude that `conv(set)` is a cs 2-neighborly
/// `d`-polytope with vertex set `set` and `2^(d-1) + 2` vertices.
pub fn certify_theorem(set: &PointSet, d: usize, opts: &CertifyOptions) -> Result<TheoremReport> {
    let n = set.len();
    let cs = set.is_cs();
    let spans = predicates::spans(set, d);
    let size_ok = (2..64).contains(&d) && n == (1usize << (d - 1)) + 2;

    let almost_acute_full = if cs {
        Some(predicates::is_almost_acute(set, opts.max_violations)?)
    } else {
        None
    };
    let almost_acute = match &almost_acute_full {
        Some(r) => AlmostAcuteSummary {
            ok: r.ok,
            violations: r.violations.clone(),
            violation_count: r.violation_count,
        },
        None => AlmostAcuteSummary {
            ok: false,
            violations: Vec::new(),
            violation_count: 0,
        },
    };

    let dim_ok = set.dim() == d;
    let neighborly = if cs && dim_ok && n >= 2 {
        Some(is_two_neighborly(set, opts)?)
    } else {
        None
    };
    let antipodal_full = if dim_ok && n >= 2 {
        Some(is_antipodal_set(set, opts)?)
    } else {
        None
    };

    let certificates_verified = {
        let mut certs: Vec<&FaceCertificate> = Vec::new();
        if let Some(nb) = &neighborly {
            certs.extend(nb.vertex_certificates.iter());
            certs.extend(nb.edges.iter().filter_map(|e| e.certificate.as_ref()));
        }
        if let Some(a) = &antipodal_full {
            certs.extend(a.certificates.iter());
        }
        certs.par_iter().all(|c| c.verify(set))
    };

    let (vertices, edges, two_neighborly) = match &neighborly {
        Some(nb) => (
            VertexSummary {
                ok: nb.vertices_ok,
                non_vertices: nb.non_vertices.clone(),
            },
            EdgeSummary {
                expected: nb.expected_edges,
                confirmed: nb.confirmed_edges,
                methods: nb.methods.clone(),
                missing: nb.missing_edges.clone(),
            },
            nb.ok,
        ),
        None => (
            VertexSummary {
                ok: false,
                non_vertices: Vec::new(),
            },
            EdgeSummary {
                expected: 0,
                confirmed: 0,
                methods: MethodHistogram::default(),
                missing: Vec::new(),
            },
            false,
        ),
    };
    let antipodal = antipodal_full.as_ref().is_some_and(|a| a.ok);

    let bounds = bounds_gate(d, n as u64, edges.confirmed as u64)?;
    let theorem_ok =
        cs && spans && almost_acute.ok && size_ok && two_neighborly && antipodal && certificates_verified && bounds.ok;
    Ok(TheoremReport {
        d,
        n,
        cs,
        spans,
        almost_acute,
        vertices,
        edges,
        antipodal,
        two_neighborly,
        size_ok,
        certificates_verified,
        bounds,
        theorem_ok,
        almost_acute_full,
        neighborly,
        antipodal_full,
    })
}

fn bounds_gate(d: usize, n: u64, confirmed: u64) -> Result<BoundsGate> {
    let antipodal_max = if d < 64 { 1u64 << d } else { u64::MAX };
    let within_antipodal_max = n <= antipodal_max;
    if !(3..=bounds::MAX_DIM).contains(&d) {
        return Ok(BoundsGate {
            vertex_range: None,
            within_vertex_range: None,
            edge_upper: None,
            edges_within_upper: None,
            antipodal_max,
            within_antipodal_max,
            ok: within_antipodal_max,
        });
    }
    let range = bounds::vertex_range(d)?;
    let within_range = range.0 <= n && n <= range.1;
    let (edge_upper, edges_ok) = if n >= 2 && n.is_multiple_of(2) {
        let (_, upper) = bounds::edge_bounds(d, n)?;
        let ok = Scalar::from_integer(BigInt::from(confirmed)) <= upper;
        (Some(upper), Some(ok))
    } else {
        (None, None)
    };
    Ok(BoundsGate {
        vertex_range: Some(range),
        within_vertex_range: Some(within_range),
        edges_within_upper: edges_ok,
        ok: within_antipodal_max && within_range && edges_ok == Some(true),
        edge_upper,
        antipodal_max,
        within_antipodal_max,
    })
}

/// Certificates in the rational text style: one per line,
/// `kind i [j] : u_1 … u_d : threshold [floor]`.
pub fn write_certificates<'a>(certs: impl IntoIterator<Item = &'a FaceCertificate>) -> String {
    let mut out = String::new();
    for c in certs {
        let kind = match c.kind {
            FaceKind::Vertex => "vertex",
            FaceKind::Edge => "edge",
            FaceKind::Strip => "strip",
        };
        let idx: Vec<String> = c.tight.iter().map(usize::to_string).collect();
        let dir: Vec<String> = c.direction.coords().iter().map(scalar::format).collect();
        out.push_str(&format!(
            "{kind} {} : {} : {}",
            idx.join(" "),
            dir.join(" "),
            c.threshold
        ));
        if let Some(f) = &c.floor {
            out.push_str(&format!(" {f}"));
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructor::base_set;
    use crate::scalar::int;

    fn idx(set: &PointSet, v: &[i64]) -> usize {
        let p = Point::from_ints(v);
        set.points().iter().position(|q| *q == p).unwrap()
    }

    #[test]
    fn vertex_certificates_on_base_set() {
        let s = base_set(3, &int(2)).unwrap();
        let apex = idx(&s, &[0, 0, 2]);
        let c = vertex_certificate_direct(&s, apex).unwrap();
        assert_eq!(c.direction, Point::from_ints(&[0, 0, 2]));
        assert_eq!(c.threshold, int(4));
        assert!(c.verify(&s));
        let x = idx(&s, &[1, 1, 0]);
        let c = vertex_certificate_direct(&s, x).unwrap();
        assert_eq!(c.direction, Point::from_ints(&[1, 1, 0]));
        assert_eq!(c.threshold, int(2));
    }

    #[test]
    fn midpoint_is_not_a_vertex() {
        let mut pts = base_set(3, &int(2)).unwrap().into_points();
        pts.push(Point::new(vec![scalar::ratio(1, 2), scalar::ratio(1, 2), int(1)]));
        let s = PointSet::new(3, pts).unwrap();
        let opts = CertifyOptions::default();
        assert!(vertex_certificate(&s, 6, &opts).unwrap().is_none());
        assert!(vertex_certificate(&s, 0, &opts).unwrap().is_some());
    }

    #[test]
    fn tilted_certificate_for_cube_apex_edge() {
        let s = base_set(3, &int(2)).unwrap();
        let (x, y) = (idx(&s, &[1, 1, 0]), idx(&s, &[0, 0, 2]));
        let (c, m) = edge_certificate_direct(&s, x, y).unwrap().unwrap();
        assert_eq!(m, EdgeMethod::DirectCase2);
        // (x + y) + t(x - y) with t = 1/3 is proportional to (1, 1, 1)
        let dir = c.direction.coords();
        assert!(dir[0] == dir[1] && dir[1] == dir[2] && dir[0] > int(0));
        assert!(c.verify(&s));
    }

    #[test]
    fn rectangle_case_on_square_side() {
        let s = base_set(3, &int(2)).unwrap();
        let (x, y) = (idx(&s, &[1, 1, 0]), idx(&s, &[1, -1, 0]));
        let (c, m) = edge_certificate_direct(&s, x, y).unwrap().unwrap();
        assert_eq!(m, EdgeMethod::DirectCase1);
        assert_eq!(c.direction, Point::from_ints(&[2, 0, 0]));
        assert!(c.verify(&s));
    }

    #[test]
    fn antipodal_pairs_skip() {
        let s = base_set(3, &int(2)).unwrap();
        let (x, y) = (idx(&s, &[1, 1, 0]), idx(&s, &[-1, -1, 0]));
        let r = is_edge(&s, x, y, &CertifyOptions::default()).unwrap();
        assert_eq!(r.verdict, EdgeVerdict::AntipodalSkip);
        assert!(edge_certificate_direct(&s, x, y).is_err());
    }

    #[test]
    fn lp_route_agrees_on_octahedron() {
        let s = base_set(3, &int(2)).unwrap();
        for i in 0..s.len() {
            for j in i + 1..s.len() {
                if s.are_antipodes(i, j) {
                    continue;
                }
                let r = is_edge(&s, i, j, &CertifyOptions::lp_only()).unwrap();
                assert_eq!(r.verdict, EdgeVerdict::Edge);
                assert_eq!(r.method, Some(EdgeMethod::Lp));
                assert!(r.certificate.unwrap().verify(&s));
            }
        }
    }

    #[test]
    fn tampered_certificates_fail() {
        let s = base_set(3, &int(2)).unwrap();
        let (mut c, _) = edge_certificate_direct(&s, 0, 2).unwrap().unwrap();
        assert!(c.verify(&s));
        c.threshold += int(1);
        assert!(!c.verify(&s));
        let (mut c, _) = edge_certificate_direct(&s, 0, 2).unwrap().unwrap();
        c.tight = vec![0, 3];
        assert!(!c.verify(&s));
    }

    #[test]
    fn collinear_triple_is_not_antipodal() {
        let s = PointSet::new(
            1,
            vec![Point::from_ints(&[0]), Point::from_ints(&[1]), Point::from_ints(&[2])],
        )
        .unwrap();
        let r = is_antipodal_set(&s, &CertifyOptions::default()).unwrap();
        assert!(!r.ok);
        assert_eq!(r.failures, vec![(0, 1), (1, 2)]);
        assert!(strip_certificate_lp(&s, 1, 0).unwrap().is_none());
        assert!(strip_certificate_lp(&s, 2, 0).unwrap().unwrap().verify(&s));
    }

    #[test]
    fn octahedron_report() {
        let s = base_set(3, &int(2)).unwrap();
        let r = is_two_neighborly(&s, &CertifyOptions::default()).unwrap();
        assert!(r.ok);
        assert_eq!((r.expected_edges, r.confirmed_edges), (12, 12));
        let t = certify_theorem(&s, 3, &CertifyOptions::default()).unwrap();
        assert!(t.theorem_ok, "{t:?}");
        assert_eq!(t.certificates().len(), 6 + 12 + 15);
    }

    #[test]
    fn certificate_sidecar_format() {
        let s = base_set(2, &int(2)).unwrap();
        let c = vertex_certificate_direct(&s, 0).unwrap();
        let text = write_certificates([&c]);
        assert_eq!(text, "vertex 0 : 1 0 : 1\n");
    }
}
