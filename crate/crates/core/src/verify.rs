//! Exhaustive checks over all isomorphism classes at small `n`.
//!
//! Each check scans the classes produced by [`crate::enumerate`], measures
//! what it needs (triangles, edges, certified spectral intervals), and
//! aggregates a [`VerificationReport`]. Comparisons against spectral
//! thresholds go through certified intervals first; when the intervals come
//! within [`MARGIN`] of each other the decision is made exactly from the
//! characteristic polynomial.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::sync::atomic::{AtomicU64, Ordering as AtomicOrdering};
use std::time::Instant;

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::canon::{canonical_form, canonical_graph};
use crate::constructions::{self, remark_graph, ConstructionError, RemarkKind};
use crate::copies::{count_copies, PatternError};
use crate::enumerate::{scan_classes, EnumerationError, EnumerationFilter};
use crate::graph::{Graph, VertexSet};
use crate::graph6;
use crate::matrix::{adjacency_char_poly, EquitablePartition, SmallMatrix};
use crate::poly::{int, q, IsolatedRoot, Polynomial, RootError};
use crate::spectral::{signless_laplacian_radius, spectral_radius, SpectralError, SpectralResult, DEFAULT_TOL};

/// Float decisions closer than this to a threshold are redone exactly.
pub const MARGIN: f64 = 1e-9;

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error("{0}")]
    Param(String),
    #[error(transparent)]
    Enumeration(#[from] EnumerationError),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
    #[error(transparent)]
    Pattern(#[from] PatternError),
    #[error("threshold polynomial: {0}")]
    Root(#[from] RootError),
}

fn param<T>(msg: impl Into<String>) -> Result<T, VerifyError> {
    Err(VerifyError::Param(msg.into()))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyOptions {
    pub tol: f64,
    /// Worker threads; 0 means all available cores.
    pub workers: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { tol: DEFAULT_TOL, workers: 0 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    /// Exploratory run; nothing is asserted.
    Report,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub graph6: String,
    pub lambda: [f64; 2],
    pub t: u64,
    pub m: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub check: String,
    pub params: BTreeMap<String, Value>,
    pub scanned: u64,
    pub qualifying: u64,
    pub violations: Vec<Violation>,
    pub extremal: Vec<String>,
    pub verdict: Verdict,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub qualifying_graphs: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub details: Option<Value>,
    pub elapsed_ms: u64,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.verdict != Verdict::Fail
    }

    /// JSON with the timing field zeroed, for run-to-run comparison.
    pub fn deterministic_json(&self) -> String {
        let mut r = self.clone();
        r.elapsed_ms = 0;
        serde_json::to_string_pretty(&r).expect("reports serialise")
    }
}

/// Canonical graph6 of `g`, the certificate format of every report.
pub fn certificate(g: &Graph) -> String {
    graph6::encode(&canonical_graph(g))
}

/// A spectral threshold: the largest root of a polynomial, with a float
/// enclosure for the quick path.
#[derive(Debug, Clone)]
pub struct Threshold {
    root: IsolatedRoot,
    pub lo: f64,
    pub hi: f64,
}

impl Threshold {
    pub fn from_poly(p: &Polynomial) -> Result<Threshold, VerifyError> {
        let mut root = IsolatedRoot::largest(p)?;
        root.refine_to(&q(1, 1 << 40));
        let lo = root.lo.to_f64().unwrap_or(f64::NEG_INFINITY);
        let hi = root.hi.to_f64().unwrap_or(f64::INFINITY);
        let pad = 4.0 * f64::EPSILON * hi.abs().max(1.0);
        Ok(Threshold { root, lo: lo - pad, hi: hi + pad })
    }

    /// `sqrt(m)`.
    pub fn sqrt(m: u64) -> Threshold {
        let p = Polynomial::new(vec![-int(m as i64), int(0), int(1)]);
        Threshold::from_poly(&p).expect("x^2 - m has a real root")
    }

    /// Spectral radius of `g`, via its coarsest equitable quotient.
    pub fn of_graph(g: &Graph) -> Threshold {
        let p = EquitablePartition::coarsest(g).quotient().char_poly();
        Threshold::from_poly(&p).expect("characteristic polynomials have real roots")
    }

    pub fn value(&self) -> f64 {
        (self.lo + self.hi) / 2.0
    }
}

/// Compares the largest root enclosed by `[lower, upper]` (and exactly the
/// largest root of `poly()`) with `thr`.
fn cmp_certified(lower: f64, upper: f64, thr: &Threshold, poly: impl FnOnce() -> Polynomial, exact: &AtomicU64) -> Ordering {
    if lower > thr.hi + MARGIN {
        return Ordering::Greater;
    }
    if upper < thr.lo - MARGIN {
        return Ordering::Less;
    }
    exact.fetch_add(1, AtomicOrdering::Relaxed);
    let mut mine = IsolatedRoot::largest(&poly()).expect("characteristic polynomials have real roots");
    mine.cmp_root(&mut thr.root.clone())
}

fn cmp_lambda(g: &Graph, r: &SpectralResult, thr: &Threshold, exact: &AtomicU64) -> Ordering {
    cmp_certified(r.lower, r.upper, thr, || adjacency_char_poly(g), exact)
}

fn interval(r: &SpectralResult) -> [f64; 2] {
    [r.lower, r.upper]
}

fn violation(g: &Graph, lambda: [f64; 2], reason: Option<String>) -> Violation {
    Violation { graph6: certificate(g), lambda, t: g.count_triangles(), m: g.edge_count(), reason }
}

fn violation_measured(g: &Graph, tol: f64, reason: &str) -> Result<Violation, VerifyError> {
    let r = spectral_radius(g, tol)?;
    Ok(violation(g, interval(&r), Some(reason.to_string())))
}

fn check_n(n: usize, lo: usize, hi: usize) -> Result<(), VerifyError> {
    if n < lo || n > hi {
        return param(format!("n must lie in {lo}..={hi}, got {n}"));
    }
    Ok(())
}

fn sorted(mut v: Vec<String>) -> Vec<String> {
    v.sort();
    v.dedup();
    v
}

fn sort_violations(v: &mut [Violation]) {
    v.sort_by(|a, b| a.graph6.cmp(&b.graph6).then_with(|| a.reason.cmp(&b.reason)));
}

/// Per-class outcome shared by the aggregators.
struct Seen {
    cert: String,
    qualifies: bool,
    violation: Option<Violation>,
    extremal: bool,
}

struct Scan {
    scanned: u64,
    items: Vec<Seen>,
}

fn scan<F>(n: usize, filter: &EnumerationFilter, workers: usize, visit: F) -> Result<Scan, VerifyError>
where
    F: Fn(&Graph) -> Result<Option<Seen>, VerifyError> + Sync,
{
    let out = scan_classes(n, filter, workers, |g| Some(visit(g)))?;
    let mut items = Vec::new();
    for r in out.items {
        if let Some(s) = r? {
            items.push(s);
        }
    }
    Ok(Scan { scanned: out.scanned, items })
}

struct Summary {
    scanned: u64,
    qualifying: u64,
    qualifying_graphs: Vec<String>,
    violations: Vec<Violation>,
    extremal: Vec<String>,
}

fn summarise(s: Scan) -> Summary {
    let qualifying = s.items.iter().filter(|i| i.qualifies).count() as u64;
    let qualifying_graphs = sorted(s.items.iter().filter(|i| i.qualifies).map(|i| i.cert.clone()).collect());
    let extremal = sorted(s.items.iter().filter(|i| i.extremal).map(|i| i.cert.clone()).collect());
    let mut violations: Vec<Violation> = s.items.into_iter().filter_map(|i| i.violation).collect();
    sort_violations(&mut violations);
    Summary { scanned: s.scanned, qualifying, qualifying_graphs, violations, extremal }
}

fn params(pairs: &[(&str, Value)]) -> BTreeMap<String, Value> {
    pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

fn verdict(ok: bool) -> Verdict {
    if ok {
        Verdict::Pass
    } else {
        Verdict::Fail
    }
}

/// Enumeration filter for "lambda >= thr" scans, sound by `lambda <= sqrt(2m)`.
fn spectral_filter(thr: &Threshold) -> EnumerationFilter {
    EnumerationFilter { min_lambda_hint: Some((thr.lo - MARGIN).max(0.0)), ..Default::default() }
}

/// Graphs with `lambda >= lambda(K+)` have at least `floor(n/2)` triangles,
/// with equality only for `K+` itself.
pub fn verify_spectral_er(n: usize, opts: &VerifyOptions) -> Result<VerificationReport, VerifyError> {
    check_n(n, 3, 10)?;
    let start = Instant::now();
    let kp = constructions::k_plus(n)?;
    let thr = Threshold::of_graph(&kp);
    let need = (n / 2) as u64;
    let exact = AtomicU64::new(0);
    let s = scan(n, &spectral_filter(&thr), opts.workers, |g| {
        let r = spectral_radius(g, opts.tol)?;
        if cmp_lambda(g, &r, &thr, &exact) == Ordering::Less {
            return Ok(None);
        }
        let t = g.count_triangles();
        Ok(Some(Seen {
            cert: certificate(g),
            qualifies: true,
            violation: (t < need).then(|| violation(g, interval(&r), None)),
            extremal: t == need,
        }))
    })?;
    let sum = summarise(s);
    let expected = vec![certificate(&kp)];
    let unique = sum.extremal == expected;
    Ok(VerificationReport {
        check: "spectral-er".into(),
        params: params(&[("n", json!(n))]),
        scanned: sum.scanned,
        qualifying: sum.qualifying,
        verdict: verdict(sum.violations.is_empty() && unique),
        violations: sum.violations,
        extremal: sum.extremal,
        qualifying_graphs: Some(sum.qualifying_graphs),
        details: Some(json!({
            "threshold": thr.value(),
            "min_triangles": need,
            "expected_extremal": expected[0],
            "extremal_unique": unique,
            "exact_comparisons": exact.load(AtomicOrdering::Relaxed),
        })),
        elapsed_ms: start.elapsed().as_millis() as u64,
    })
}

/// Edge version: `m > n^2/4` forces `floor(n/2)` triangles, and
/// `m >= n^2/4` forces `floor(n/2) - 1` unless the graph is `T_{n,2}`.
pub fn verify_edge_er(n: usize, opts: &VerifyOptions) -> Result<VerificationReport, VerifyError> {
    check_n(n, 3, 10)?;
    let start = Instant::now();
    let turan_m = n * n / 4;
    let half = (n / 2) as u64;
    let t2 = canonical_form(&constructions::turan(n, 2)?);
    let filter = EnumerationFilter { min_edges: Some(turan_m), ..Default::default() };
    let s = scan(n, &filter, opts.workers, |g| {
        let m = g.edge_count();
        let t = g.count_triangles();
        let v = if m > turan_m && t < half {
            Some(violation_measured(g, opts.tol, "m > n^2/4 with fewer than floor(n/2) triangles")?)
        } else if t + 1 < half && canonical_form(g) != t2 {
            Some(violation_measured(g, opts.tol, "m >= n^2/4 with fewer than floor(n/2) - 1 triangles")?)
        } else {
            None
        };
        Ok(Some(Seen { cert: certificate(g), qualifies: true, violation: v, extremal: m == turan_m + 1 && t == half }))
    })?;
    let sum = summarise(s);
    Ok(VerificationReport {
        check: "edge-er".into(),
        params: params(&[("n", json!(n))]),
        scanned: sum.scanned,
        qualifying: sum.qualifying,
        verdict: verdict(sum.violations.is_empty()),
        violations: sum.violations,
        extremal: sum.extremal,
        qualifying_graphs: None,
        details: Some(json!({ "turan_edges": turan_m, "min_triangles": half })),
        elapsed_ms: start.elapsed().as_millis() as u64,
    })
}

/// `lambda >= lambda(T_{n,2})` forces `floor(n/2) - 1` triangles unless the
/// graph is `T_{n,2}`.
pub fn verify_nz(n: usize, opts: &VerifyOptions) -> Result<VerificationReport, VerifyError> {
    check_n(n, 3, 10)?;
    let start = Instant::now();
    let thr = Threshold::sqrt((n * n / 4) as u64);
    let t2 = canonical_form(&constructions::turan(n, 2)?);
    let need = (n / 2) as u64 - 1;
    let exact = AtomicU64::new(0);
    let s = scan(n, &spectral_filter(&thr), opts.workers, |g| {
        let r = spectral_radius(g, opts.tol)?;
        if cmp_lambda(g, &r, &thr, &exact) == Ordering::Less {
            return Ok(None);
        }
        let t = g.count_triangles();
        let exempt = canonical_form(g) == t2;
        Ok(Some(Seen {
            cert: certificate(g),
            qualifies: true,
            violation: (t < need && !exempt).then(|| violation(g, interval(&r), None)),
            extremal: t == need && !exempt,
        }))
    })?;
    let sum = summarise(s);
    Ok(VerificationReport {
        check: "nz".into(),
        params: params(&[("n", json!(n))]),
        scanned: sum.scanned,
        qualifying: sum.qualifying,
        verdict: verdict(sum.violations.is_empty()),
        violations: sum.violations,
        extremal: sum.extremal,
        qualifying_graphs: None,
        details: Some(json!({
            "threshold": thr.value(),
            "min_triangles": need,
            "exact_comparisons": exact.load(AtomicOrdering::Relaxed),
        })),
        elapsed_ms: start.elapsed().as_millis() as u64,
    })
}

/// For each `q <= q_max`, `m >= n^2/4 + q` forces `q floor(n/2)` triangles.
pub fn verify_lovasz_simonovits(n: usize, q_max: usize, opts: &VerifyOptions) -> Result<VerificationReport, VerifyError> {
    check_n(n, 3, 10)?;
    if q_max == 0 || 2 * q_max >= n {
        return param(format!("need 1 <= q < n/2, got q = {q_max} at n = {n}"));
    }
    let start = Instant::now();
    let turan_m = n * n / 4;
    let half = (n / 2) as u64;
    let filter = EnumerationFilter { min_edges: Some(turan_m + 1), ..Default::default() };
    let s = scan(n, &filter, opts.workers, |g| {
        let m = g.edge_count();
        let t = g.count_triangles();
        let q_here = (m - turan_m).min(q_max) as u64;
        let v = if t < q_here * half {
            Some(violation_measured(g, opts.tol, &format!("m >= n^2/4 + {q_here} with fewer than {} triangles", q_here * half))?)
        } else {
            None
        };
        Ok(Some(Seen { cert: certificate(g), qualifies: true, violation: v, extremal: t == q_here * half }))
    })?;
    let sum = summarise(s);
    Ok(VerificationReport {
        check: "lovasz-simonovits".into(),
        params: params(&[("n", json!(n)), ("q_max", json!(q_max))]),
        scanned: sum.scanned,
        qualifying: sum.qualifying,
        verdict: verdict(sum.violations.is_empty()),
        violations: sum.violations,
        extremal: sum.extremal,
        qualifying_graphs: None,
        details: Some(json!({ "turan_edges": turan_m })),
        elapsed_ms: start.elapsed().as_millis() as u64,
    })
}

/// Exploratory: among classes with `lambda >= lambda(T_{n,r,q})`, lists
/// those with fewer than `q c(n, F)` copies of `F` and the minimisers.
pub fn verify_conjecture(n: usize, r: usize, q_star: usize, f: &Graph, opts: &VerifyOptions) -> Result<VerificationReport, VerifyError> {
    check_n(n, 3, 9)?;
    let start = Instant::now();
    let host = constructions::turan_plus_star(n, r, q_star)?;
    let c = constructions::min_added_edge_copies(n, r, f)?;
    let need = q_star as u64 * c;
    let thr = Threshold::of_graph(&host);
    let exact = AtomicU64::new(0);
    let copies_of = |g: &Graph| count_copies(g, f);
    let s = scan_classes(n, &spectral_filter(&thr), opts.workers, |g| {
        let res = (|| -> Result<Option<(String, u64, Option<Violation>)>, VerifyError> {
            let r = spectral_radius(g, opts.tol)?;
            if cmp_lambda(g, &r, &thr, &exact) == Ordering::Less {
                return Ok(None);
            }
            let k = copies_of(g)?;
            let v = (k < need).then(|| violation(g, interval(&r), Some(format!("{k} copies"))));
            Ok(Some((certificate(g), k, v)))
        })();
        Some(res)
    })?;
    let mut rows = Vec::new();
    for item in s.items {
        if let Some(row) = item? {
            rows.push(row);
        }
    }
    let min_copies = rows.iter().map(|r| r.1).min();
    let minimisers = sorted(rows.iter().filter(|r| Some(r.1) == min_copies).map(|r| r.0.clone()).collect());
    let extremal = sorted(rows.iter().filter(|r| r.1 == need).map(|r| r.0.clone()).collect());
    let qualifying_graphs = sorted(rows.iter().map(|r| r.0.clone()).collect());
    let host_cert = certificate(&host);
    let mut violations: Vec<Violation> = rows.into_iter().filter_map(|r| r.2).collect();
    sort_violations(&mut violations);
    Ok(VerificationReport {
        check: "conjecture".into(),
        params: params(&[
            ("n", json!(n)),
            ("r", json!(r)),
            ("q", json!(q_star)),
            ("f", json!(graph6::encode(f))),
        ]),
        scanned: s.scanned,
        qualifying: qualifying_graphs.len() as u64,
        violations,
        extremal,
        verdict: Verdict::Report,
        details: Some(json!({
            "threshold": thr.value(),
            "c": c,
            "required_copies": need,
            "host": host_cert,
            "min_copies": min_copies,
            "minimisers": minimisers,
            "host_unique_minimiser": minimisers == vec![host_cert.clone()],
            "exact_comparisons": exact.load(AtomicOrdering::Relaxed),
        })),
        qualifying_graphs: Some(qualifying_graphs),
        elapsed_ms: start.elapsed().as_millis() as u64,
    })
}

/// Classes with `lambda > lambda(T_{n,2})` and exactly `floor(n/2) - 1`
/// triangles. Passes when every applicable named family is found.
pub fn search_near_misses(n: usize, opts: &VerifyOptions) -> Result<VerificationReport, VerifyError> {
    check_n(n, 4, 10)?;
    let start = Instant::now();
    let thr = Threshold::sqrt((n * n / 4) as u64);
    let target = (n / 2) as u64 - 1;
    let exact = AtomicU64::new(0);
    let s = scan(n, &spectral_filter(&thr), opts.workers, |g| {
        if g.count_triangles() != target {
            return Ok(None);
        }
        let r = spectral_radius(g, opts.tol)?;
        if cmp_lambda(g, &r, &thr, &exact) != Ordering::Greater {
            return Ok(None);
        }
        Ok(Some(Seen { cert: certificate(g), qualifies: true, violation: None, extremal: true }))
    })?;
    let sum = summarise(s);
    let found: BTreeSet<&String> = sum.extremal.iter().collect();
    let mut families = serde_json::Map::new();
    let mut violations = Vec::new();
    for kind in RemarkKind::ALL.into_iter().filter(|k| k.applies(n)) {
        let g = remark_graph(kind, n)?;
        let cert = certificate(&g);
        let present = found.contains(&cert);
        if !present {
            violations.push(violation_measured(&g, opts.tol, &format!("{kind} missing from the search"))?);
        }
        families.insert(kind.name().into(), json!({ "graph6": cert, "found": present }));
    }
    let kp = certificate(&constructions::k_plus(n)?);
    Ok(VerificationReport {
        check: "near-misses".into(),
        params: params(&[("n", json!(n))]),
        scanned: sum.scanned,
        qualifying: sum.qualifying,
        verdict: verdict(violations.is_empty()),
        violations,
        details: Some(json!({
            "threshold": thr.value(),
            "triangles": target,
            "families": families,
            "count": sum.extremal.len(),
            "k_plus_listed": found.contains(&kp),
            "exact_comparisons": exact.load(AtomicOrdering::Relaxed),
        })),
        extremal: sum.extremal,
        qualifying_graphs: None,
        elapsed_ms: start.elapsed().as_millis() as u64,
    })
}

/// Complete bipartite on its non-isolated vertices (or edgeless).
pub fn is_complete_bipartite_plus_isolated(g: &Graph) -> bool {
    let core = VertexSet::from_vertices((0..g.n()).filter(|&v| g.degree(v) > 0));
    if core.is_empty() {
        return true;
    }
    let h = g.induced(core).expect("nonempty subset of a valid graph");
    if !h.is_connected() {
        return false;
    }
    let mut colour = vec![None; h.n()];
    colour[0] = Some(false);
    let mut stack = vec![0];
    while let Some(v) = stack.pop() {
        let c = colour[v].expect("pushed vertices are coloured");
        for u in h.neighbors(v).iter() {
            match colour[u] {
                None => {
                    colour[u] = Some(!c);
                    stack.push(u);
                }
                Some(cu) if cu == c => return false,
                Some(_) => {}
            }
        }
    }
    let left = colour.iter().filter(|c| **c == Some(true)).count();
    h.edge_count() == left * (h.n() - left)
}

/// Largest `k` with `(2k + 1)^2 <= m`, i.e. `floor((sqrt(m) - 1) / 2)`.
pub fn sqrt_m_triangle_bound(m: u64) -> i64 {
    let mut k: i64 = -1;
    while ((2 * (k + 1) + 1) as u64).pow(2) <= m {
        k += 1;
    }
    k
}

/// Triangle-free graphs have `lambda <= sqrt(m)`; graphs with
/// `lambda >= sqrt(m)` have `floor((sqrt(m)-1)/2)` triangles unless
/// complete bipartite.
pub fn verify_sqrt_m(n: usize, opts: &VerifyOptions) -> Result<VerificationReport, VerifyError> {
    check_n(n, 1, 9)?;
    let start = Instant::now();
    let exact = AtomicU64::new(0);
    let s = scan(n, &EnumerationFilter::all(), opts.workers, |g| {
        let m = g.edge_count() as u64;
        let t = g.count_triangles();
        let r = spectral_radius(g, opts.tol)?;
        let thr = Threshold::sqrt(m);
        let ord = cmp_lambda(g, &r, &thr, &exact);
        let mut v = None;
        if t == 0 && ord == Ordering::Greater {
            v = Some(violation(g, interval(&r), Some("triangle-free with lambda > sqrt(m)".into())));
        }
        let qualifies = ord != Ordering::Less;
        if qualifies && (t as i64) < sqrt_m_triangle_bound(m) && !is_complete_bipartite_plus_isolated(g) {
            v = Some(violation(g, interval(&r), Some("lambda >= sqrt(m) with too few triangles".into())));
        }
        Ok(Some(Seen { cert: certificate(g), qualifies, violation: v, extremal: t == 0 && ord == Ordering::Equal && m > 0 }))
    })?;
    let sum = summarise(s);
    let all_bipartite = sum
        .extremal
        .iter()
        .all(|c| is_complete_bipartite_plus_isolated(&graph6::decode(c).expect("own certificates parse")));
    Ok(VerificationReport {
        check: "sqrt-m".into(),
        params: params(&[("n", json!(n))]),
        scanned: sum.scanned,
        qualifying: sum.qualifying,
        verdict: verdict(sum.violations.is_empty()),
        violations: sum.violations,
        extremal: sum.extremal,
        qualifying_graphs: None,
        details: Some(json!({
            "equality_all_complete_bipartite": all_bipartite,
            "exact_comparisons": exact.load(AtomicOrdering::Relaxed),
        })),
        elapsed_ms: start.elapsed().as_millis() as u64,
    })
}

fn cmp_signless(g: &Graph, r: &SpectralResult, value: u64, exact: &AtomicU64) -> Ordering {
    let v = value as f64;
    if r.lower > v + MARGIN {
        return Ordering::Greater;
    }
    if r.upper < v - MARGIN {
        return Ordering::Less;
    }
    exact.fetch_add(1, AtomicOrdering::Relaxed);
    let mut root = IsolatedRoot::largest(&SmallMatrix::signless_laplacian(g).char_poly()).expect("real spectrum");
    root.cmp_rational(&int(value as i64))
}

fn is_star_plus_isolated(g: &Graph) -> bool {
    let m = g.edge_count();
    m > 0 && g.max_degree() == m
}

/// Signless Laplacian: `q <= n` when triangle-free, `q <= m + 1` when
/// `m >= 4`, with stars attaining the latter.
pub fn verify_signless(n: usize, opts: &VerifyOptions) -> Result<VerificationReport, VerifyError> {
    check_n(n, 1, 9)?;
    let start = Instant::now();
    let exact = AtomicU64::new(0);
    let s = scan_classes(n, &EnumerationFilter::all(), opts.workers, |g| {
        let res = (|| -> Result<(Seen, bool), VerifyError> {
            let m = g.edge_count() as u64;
            let t = g.count_triangles();
            let r = signless_laplacian_radius(g, opts.tol)?;
            let mut v = None;
            let mut n_equal = false;
            if t == 0 {
                match cmp_signless(g, &r, n as u64, &exact) {
                    Ordering::Greater => v = Some(violation(g, interval(&r), Some("triangle-free with q > n".into()))),
                    Ordering::Equal => n_equal = true,
                    Ordering::Less => {}
                }
            }
            let mut m_equal = false;
            if m >= 4 {
                match cmp_signless(g, &r, m + 1, &exact) {
                    Ordering::Greater => v = Some(violation(g, interval(&r), Some("q > m + 1".into()))),
                    Ordering::Equal => m_equal = true,
                    Ordering::Less => {}
                }
                if is_star_plus_isolated(g) && !m_equal {
                    v = Some(violation(g, interval(&r), Some("star with q != m + 1".into())));
                }
            }
            Ok((Seen { cert: certificate(g), qualifies: t == 0 || m >= 4, violation: v, extremal: m_equal }, n_equal))
        })();
        Some(res)
    })?;
    let mut items = Vec::new();
    let mut n_equal = Vec::new();
    for r in s.items {
        let (seen, eq) = r?;
        if eq {
            n_equal.push(seen.cert.clone());
        }
        items.push(seen);
    }
    let sum = summarise(Scan { scanned: s.scanned, items });
    let stars_only = sum.extremal.iter().all(|c| is_star_plus_isolated(&graph6::decode(c).expect("own certificates parse")));
    Ok(VerificationReport {
        check: "signless".into(),
        params: params(&[("n", json!(n))]),
        scanned: sum.scanned,
        qualifying: sum.qualifying,
        verdict: verdict(sum.violations.is_empty()),
        violations: sum.violations,
        extremal: sum.extremal,
        qualifying_graphs: None,
        details: Some(json!({
            "q_equals_n": sorted(n_equal),
            "q_equals_m_plus_1_only_stars": stars_only,
            "exact_comparisons": exact.load(AtomicOrdering::Relaxed),
        })),
        elapsed_ms: start.elapsed().as_millis() as u64,
    })
}

/// Both supersaturation bounds `t >= lambda(lambda^2 - m)/3` and
/// `t >= (n^2/12)(lambda - n/2)` on every class.
pub fn verify_bn(n: usize, opts: &VerifyOptions) -> Result<VerificationReport, VerifyError> {
    check_n(n, 1, 9)?;
    let start = Instant::now();
    let exact = AtomicU64::new(0);
    let s = scan(n, &EnumerationFilter::all(), opts.workers, |g| {
        let m = g.edge_count() as i64;
        let t = g.count_triangles() as i64;
        let r = spectral_radius(g, opts.tol)?;
        let l = r.lambda;
        // bound a: h(lambda) = lambda^3 - m lambda - 3t <= 0
        let ha = l * l * l - m as f64 * l - 3.0 * t as f64;
        let a_ok = if ha.abs() > 1e-6 {
            ha < 0.0
        } else {
            exact.fetch_add(1, AtomicOrdering::Relaxed);
            let mut root = IsolatedRoot::largest(&adjacency_char_poly(g)).expect("real spectrum");
            root.sign_of(&Polynomial::from_ints(&[-3 * t, -m, 0, 1])) <= 0
        };
        // bound b: lambda <= n/2 + 12 t / n^2
        let cap = q(n as i64, 2) + q(12 * t, (n * n) as i64);
        let capf = cap.to_f64().unwrap_or(f64::INFINITY);
        let b_ok = if (l - capf).abs() > 1e-6 {
            l < capf
        } else {
            exact.fetch_add(1, AtomicOrdering::Relaxed);
            let mut root = IsolatedRoot::largest(&adjacency_char_poly(g)).expect("real spectrum");
            root.cmp_rational(&cap) != Ordering::Greater
        };
        let v = match (a_ok, b_ok) {
            (true, true) => None,
            (false, _) => Some(violation(g, interval(&r), Some("t < lambda(lambda^2 - m)/3".into()))),
            (_, false) => Some(violation(g, interval(&r), Some("t < (n^2/12)(lambda - n/2)".into()))),
        };
        let tight = (l * (l * l - m as f64) / 3.0 - t as f64).abs() < 1e-6 && t > 0;
        Ok(Some(Seen { cert: certificate(g), qualifies: true, violation: v, extremal: tight }))
    })?;
    let sum = summarise(s);
    Ok(VerificationReport {
        check: "bn".into(),
        params: params(&[("n", json!(n))]),
        scanned: sum.scanned,
        qualifying: sum.qualifying,
        verdict: verdict(sum.violations.is_empty()),
        violations: sum.violations,
        extremal: sum.extremal,
        qualifying_graphs: None,
        details: Some(json!({ "exact_comparisons": exact.load(AtomicOrdering::Relaxed) })),
        elapsed_ms: start.elapsed().as_millis() as u64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete_bipartite, cycle, star};

    fn opts() -> VerifyOptions {
        VerifyOptions { tol: 1e-10, workers: 2 }
    }

    #[test]
    fn spectral_er_small() {
        let r = verify_spectral_er(4, &opts()).unwrap();
        assert_eq!(r.qualifying, 2);
        assert!(r.violations.is_empty());
        assert_eq!(r.extremal, vec![certificate(&constructions::k_plus(4).unwrap())]);
        assert_eq!(r.verdict, Verdict::Pass);
        let r = verify_spectral_er(3, &opts()).unwrap();
        assert_eq!(r.qualifying_graphs.unwrap(), vec![certificate(&Graph::complete(3).unwrap())]);
    }

    #[test]
    fn parameter_errors() {
        assert!(verify_lovasz_simonovits(6, 3, &opts()).is_err());
        assert!(verify_lovasz_simonovits(6, 0, &opts()).is_err());
        assert!(verify_spectral_er(11, &opts()).is_err());
        assert!(verify_sqrt_m(10, &opts()).is_err());
    }

    #[test]
    fn bipartite_recognition() {
        assert!(is_complete_bipartite_plus_isolated(&complete_bipartite(2, 3).unwrap()));
        assert!(is_complete_bipartite_plus_isolated(&star(4).unwrap().disjoint_union(&Graph::empty(2).unwrap()).unwrap()));
        assert!(is_complete_bipartite_plus_isolated(&Graph::empty(3).unwrap()));
        assert!(!is_complete_bipartite_plus_isolated(&cycle(6).unwrap()));
        assert!(is_complete_bipartite_plus_isolated(&cycle(4).unwrap()));
        assert!(!is_complete_bipartite_plus_isolated(&cycle(5).unwrap()));
        let two_edges = Graph::new(4, &[(0, 1), (2, 3)]).unwrap();
        assert!(!is_complete_bipartite_plus_isolated(&two_edges));
    }

    #[test]
    fn sqrt_bound() {
        assert_eq!(sqrt_m_triangle_bound(0), -1);
        assert_eq!(sqrt_m_triangle_bound(1), 0);
        assert_eq!(sqrt_m_triangle_bound(8), 0);
        assert_eq!(sqrt_m_triangle_bound(9), 1);
        assert_eq!(sqrt_m_triangle_bound(25), 2);
    }

    #[test]
    fn thresholds() {
        let t = Threshold::sqrt(16);
        assert!(t.lo <= 4.0 && 4.0 <= t.hi);
        let k = Threshold::of_graph(&constructions::k_plus(8).unwrap());
        assert!((k.value() - 4.2930).abs() < 1e-4);
    }
}
