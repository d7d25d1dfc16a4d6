//! The acceptance suite, shared by the `acceptance` test target and the
//! command-line `reproduce` driver.

use std::time::Instant;

use num_bigint::BigUint;
use num_traits::One;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::constructions::{
    abc_sweep, case_graph, apex_star_graph, k_plus, k_plus_partition, k_plus_quotient, added_edge_copies_by_part, remark_graph, CaseGraphId,
    Parity, RemarkKind,
};
use crate::copies::automorphism_count;
use crate::enumerate::{scan_classes, EnumerationFilter};
use crate::families::{root_gap_holds, poly_family, Family};
use crate::graph::{cycle, Graph, VertexSet, MAX_VERTICES};
use crate::matrix::quotient_matrix;
use crate::poly::{largest_real_root, Polynomial};
use crate::spectral::spectral_radius;
use crate::verify::{
    certificate, search_near_misses, verify_bn, verify_conjecture, verify_edge_er, verify_lovasz_simonovits, verify_nz,
    verify_signless, verify_spectral_er, verify_sqrt_m, VerificationReport, VerifyError, VerifyOptions,
};

#[derive(Debug, Clone, PartialEq)]
pub struct AcceptanceConfig {
    /// Largest `n` for the exhaustive spectral and edge-count sweeps.
    pub n_max: usize,
    /// Largest `n` for the spectral companion sweeps.
    pub companion_n_max: usize,
    pub tol: f64,
    pub workers: usize,
    pub seed: u64,
}

impl Default for AcceptanceConfig {
    fn default() -> Self {
        AcceptanceConfig { n_max: 9, companion_n_max: 8, tol: 1e-10, workers: 0, seed: 20240601 }
    }
}

impl AcceptanceConfig {
    fn opts(&self) -> VerifyOptions {
        VerifyOptions { tol: self.tol, workers: self.workers }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CriterionResult {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    pub summary: String,
    pub elapsed_ms: u64,
    /// Machine-readable evidence, written to disk by `reproduce`.
    pub evidence: Value,
}

impl CriterionResult {
    pub fn line(&self) -> String {
        format!(
            "criterion {:>2} [{}] {}: {} ({} ms)",
            self.id,
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            self.summary,
            self.elapsed_ms
        )
    }
}

fn finish(id: usize, name: &'static str, start: Instant, passed: bool, summary: String, evidence: Value) -> CriterionResult {
    CriterionResult { id, name, passed, summary, elapsed_ms: start.elapsed().as_millis() as u64, evidence }
}

fn report_values(reports: &[VerificationReport]) -> Value {
    Value::Array(reports.iter().map(|r| serde_json::to_value(r).expect("reports serialise")).collect())
}

fn failure(id: usize, name: &'static str, start: Instant, err: VerifyError) -> CriterionResult {
    finish(id, name, start, false, format!("error: {err}"), json!({ "error": err.to_string() }))
}

pub fn criterion_1(cfg: &AcceptanceConfig) -> (CriterionResult, Vec<VerificationReport>) {
    let start = Instant::now();
    let name = "spectral triangle bound, exhaustive";
    let mut reports = Vec::new();
    for n in 3..=cfg.n_max {
        match verify_spectral_er(n, &cfg.opts()) {
            Ok(r) => reports.push(r),
            Err(e) => return (failure(1, name, start, e), reports),
        }
    }
    let bad: Vec<usize> = reports.iter().filter(|r| !r.passed()).map(|r| r.params["n"].as_u64().unwrap_or(0) as usize).collect();
    let summary = if bad.is_empty() {
        let total: u64 = reports.iter().map(|r| r.scanned).sum();
        format!("n = 3..={}: no violations, unique extremal graph K+ ({} classes scanned)", cfg.n_max, total)
    } else {
        format!("failed at n = {bad:?}")
    };
    (finish(1, name, start, bad.is_empty(), summary, report_values(&reports)), reports)
}

pub fn criterion_2(cfg: &AcceptanceConfig) -> CriterionResult {
    let start = Instant::now();
    let name = "case-graph numerics G5, G6";
    let run = || -> Result<(f64, f64, f64), VerifyError> {
        let g5 = spectral_radius(&case_graph(CaseGraphId::G5, 8)?, cfg.tol)?.lambda;
        let g6 = spectral_radius(&case_graph(CaseGraphId::G6, 8)?, cfg.tol)?.lambda;
        let kp = spectral_radius(&k_plus(8)?, cfg.tol)?.lambda;
        Ok((g5, g6, kp))
    };
    match run() {
        Ok((g5, g6, kp)) => {
            let ok = (g5 - 3.934).abs() <= 1e-3 && (g6 - 3.884).abs() <= 1e-3 && g5 < kp && g6 < kp;
            finish(
                2,
                name,
                start,
                ok,
                format!("lambda(G5) = {g5:.6}, lambda(G6) = {g6:.6}, lambda(K+_4,4) = {kp:.6}"),
                json!({ "G5": g5, "G6": g6, "k_plus_8": kp }),
            )
        }
        Err(e) => failure(2, name, start, e),
    }
}

pub fn criterion_3(_cfg: &AcceptanceConfig) -> CriterionResult {
    let start = Instant::now();
    let name = "quotient polynomials and root gap";
    let mut mismatches = Vec::new();
    for n in 4..=200usize {
        let family = if n % 2 == 0 { Family::F } else { Family::G };
        // the graph itself only exists up to 64 vertices
        let ok = (|| -> Option<bool> {
            let target = poly_family(family, n, None).ok()?;
            if n == 4 {
                // the middle cell is empty, so the graph only yields the 2 x 2
                // quotient and f(4) = x (x^2 - x - 4)
                let cells: Vec<VertexSet> = k_plus_partition(4).into_iter().filter(|c| !c.is_empty()).collect();
                let small = quotient_matrix(&k_plus(4).ok()?, &cells).ok()?.char_poly();
                let x = Polynomial::from_ints(&[0, 1]);
                return Some(&small * &x == target && k_plus_quotient(4).char_poly() == target);
            }
            let q = if n <= MAX_VERTICES {
                quotient_matrix(&k_plus(n).ok()?, &k_plus_partition(n)).ok()?
            } else {
                k_plus_quotient(n)
            };
            Some(q.char_poly() == target)
        })();
        if ok != Some(true) {
            mismatches.push(n);
        }
    }
    let gap_fail: Vec<usize> = (4..=10_000).filter(|&n| !root_gap_holds(n)).collect();
    let ok = mismatches.is_empty() && gap_fail.is_empty();
    finish(
        3,
        name,
        start,
        ok,
        format!(
            "char poly = f/g for n = 4..=200 ({} mismatches); lambda^2 > floor(n^2/4) + 2 for n = 4..=10000 ({} failures)",
            mismatches.len(),
            gap_fail.len()
        ),
        json!({ "charpoly_mismatches": mismatches, "gap_failures": gap_fail }),
    )
}

/// Label, graph, family, `n` and `(a, b, c)` of one cross-validation pair.
pub type CrossCase = (String, Graph, Family, usize, Option<(usize, usize, usize)>);

/// Every (construction, polynomial) pair of the cross-validation sweep.
pub fn cross_validation_cases() -> Vec<CrossCase> {
    let mut cases = Vec::new();
    for n in 4..=40 {
        let f = if n % 2 == 0 { Family::F } else { Family::G };
        cases.push((format!("k_plus n={n}"), k_plus(n).expect("n >= 3"), f, n, None));
    }
    for n in 5..=20 {
        for kind in RemarkKind::ALL.into_iter().filter(|k| k.applies(n)) {
            cases.push((format!("{kind} n={n}"), remark_graph(kind, n).expect("applies"), kind.family(), n, None));
        }
    }
    for n in [8, 10, 12, 14] {
        for id in [CaseGraphId::G2, CaseGraphId::G4] {
            cases.push((format!("{} n={n}", id.tag()), case_graph(id, n).expect("valid"), id.family().expect("has family"), n, None));
        }
    }
    for n in [10, 12, 14] {
        for (a, b, c) in abc_sweep(n) {
            let id = CaseGraphId::G8 { a, b, c };
            cases.push((format!("G8({a},{b},{c}) n={n}"), case_graph(id, n).expect("valid"), Family::G8, n, Some((a, b, c))));
        }
    }
    for n in [10, 12, 14] {
        cases.push((format!("apex-star even n={n}"), apex_star_graph(Parity::Even, n).expect("valid"), Family::P1, n, None));
    }
    for n in [9, 11, 13] {
        cases.push((format!("apex-star odd n={n}"), apex_star_graph(Parity::Odd, n).expect("valid"), Family::P2, n, None));
    }
    cases
}

pub fn criterion_4(cfg: &AcceptanceConfig) -> CriterionResult {
    let start = Instant::now();
    let name = "polynomial vs construction";
    let mut rows = Vec::new();
    let mut worst = 0.0f64;
    let mut failed = Vec::new();
    for (label, g, family, n, abc) in cross_validation_cases() {
        let lam = spectral_radius(&g, cfg.tol.min(1e-11)).map(|r| r.lambda);
        let root = poly_family(family, n, abc).ok().and_then(|p| largest_real_root(&p, 1e-13).ok());
        match (lam, root) {
            (Ok(l), Some(r)) => {
                let d = (l - r).abs();
                worst = worst.max(d);
                if d > 1e-8 {
                    failed.push(label.clone());
                }
                rows.push(json!({ "case": label, "family": family.name(), "lambda": l, "root": r, "diff": d }));
            }
            _ => failed.push(label),
        }
    }
    finish(
        4,
        name,
        start,
        failed.is_empty(),
        format!("{} cases, max |lambda - root| = {worst:.2e}, {} failures", rows.len(), failed.len()),
        json!({ "cases": rows, "failures": failed }),
    )
}

pub fn criterion_5(cfg: &AcceptanceConfig) -> CriterionResult {
    let start = Instant::now();
    let name = "near-miss families";
    let mut reports = Vec::new();
    let mut problems = Vec::new();
    for n in 5..=8 {
        let r = match search_near_misses(n, &cfg.opts()) {
            Ok(r) => r,
            Err(e) => return failure(5, name, start, e),
        };
        // detected named families must be exactly the applicable ones
        let mut detected = Vec::new();
        for kind in RemarkKind::ALL {
            let g = match remark_graph(kind, n) {
                Ok(g) => g,
                Err(_) => continue,
            };
            if r.extremal.contains(&certificate(&g)) {
                detected.push(kind);
            }
        }
        let applicable: Vec<RemarkKind> = RemarkKind::ALL.into_iter().filter(|k| k.applies(n)).collect();
        if detected != applicable || !r.passed() {
            problems.push(format!("n = {n}: detected {detected:?}, expected {applicable:?}"));
        }
        for kind in &applicable {
            let g = remark_graph(*kind, n).expect("applies");
            let t_ok = g.count_triangles() == (n / 2) as u64 - 1;
            let l_ok = spectral_radius(&g, cfg.tol).map(|s| s.lower > ((n * n / 4) as f64).sqrt()).unwrap_or(false);
            if !t_ok || !l_ok {
                problems.push(format!("n = {n}: {kind} fails t or lambda"));
            }
        }
        reports.push(r);
    }
    let counts: Vec<usize> = reports.iter().map(|r| r.extremal.len()).collect();
    finish(
        5,
        name,
        start,
        problems.is_empty(),
        if problems.is_empty() {
            format!("n = 5..=8: applicable families all found (near-miss classes per n: {counts:?})")
        } else {
            problems.join("; ")
        },
        report_values(&reports),
    )
}

fn sweep(
    id: usize,
    name: &'static str,
    start: Instant,
    runs: Vec<Result<VerificationReport, VerifyError>>,
) -> CriterionResult {
    let mut reports = Vec::new();
    for r in runs {
        match r {
            Ok(r) => reports.push(r),
            Err(e) => return failure(id, name, start, e),
        }
    }
    let failed: Vec<String> = reports
        .iter()
        .filter(|r| !r.passed())
        .map(|r| format!("{} n={}", r.check, r.params["n"]))
        .collect();
    let summary = if failed.is_empty() {
        format!("{} runs, 0 violations", reports.len())
    } else {
        format!("failed: {}", failed.join(", "))
    };
    finish(id, name, start, failed.is_empty(), summary, report_values(&reports))
}

pub fn criterion_6(cfg: &AcceptanceConfig) -> CriterionResult {
    let start = Instant::now();
    let mut runs = Vec::new();
    for n in 3..=cfg.n_max {
        runs.push(verify_edge_er(n, &cfg.opts()));
        runs.push(verify_lovasz_simonovits(n, n.div_ceil(2) - 1, &cfg.opts()));
    }
    sweep(6, "edge-count triangle bounds", start, runs)
}

pub fn criterion_7(cfg: &AcceptanceConfig) -> CriterionResult {
    let start = Instant::now();
    let mut runs = Vec::new();
    for n in 3..=cfg.companion_n_max {
        runs.push(verify_nz(n, &cfg.opts()));
        runs.push(verify_sqrt_m(n, &cfg.opts()));
        runs.push(verify_signless(n, &cfg.opts()));
        runs.push(verify_bn(n, &cfg.opts()));
    }
    sweep(7, "spectral companions", start, runs)
}

pub fn criterion_8(_cfg: &AcceptanceConfig) -> CriterionResult {
    let start = Instant::now();
    let name = "added-edge copy counts";
    let k3 = Graph::complete(3).expect("K3");
    let c5 = cycle(5).expect("C5");
    let mut rows = Vec::new();
    let mut bad = Vec::new();
    let mut check = |label: &str, f: &Graph, n: u64, want: u64| {
        let parts = added_edge_copies_by_part(n as usize, 2, f).ok();
        let got = parts.as_ref().and_then(|p| p.iter().flatten().min().copied());
        if got != Some(want) {
            let per: Vec<String> = parts.iter().flatten().map(|c| c.map_or("-".into(), |c| c.to_string())).collect();
            bad.push(format!("{label} n={n} min {} vs formula {want}, per part [{}]", got.map_or("-".into(), |c| c.to_string()), per.join(", ")));
        }
        // parts[0] is the larger part
        rows.push(json!({ "f": label, "n": n, "count": got, "formula": want, "per_part": parts }));
    };
    for n in 4..=12u64 {
        check("K3", &k3, n, n / 2);
    }
    for n in 5..=10u64 {
        let (lo, hi) = (n / 2, n.div_ceil(2));
        check("C5", &c5, n, lo * (lo - 1) * (hi - 2));
    }
    finish(
        8,
        name,
        start,
        bad.is_empty(),
        if bad.is_empty() { format!("{} counts match the closed forms", rows.len()) } else { format!("mismatch: {}", bad.join(", ")) },
        json!(rows),
    )
}

fn random_connected(rng: &mut ChaCha8Rng, n: usize) -> Graph {
    loop {
        let p = rng.gen_range(0.2..0.8);
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(p) {
                    edges.push((u, v));
                }
            }
        }
        let g = Graph::new(n, &edges).expect("valid edges");
        if g.is_connected() {
            return g;
        }
    }
}

/// One random valid rotation: `(G, vi, vj, S)` with `x_vi >= x_vj`.
pub fn random_rotation(rng: &mut ChaCha8Rng, tol: f64) -> (Graph, usize, usize, VertexSet) {
    loop {
        let n = rng.gen_range(4..=12);
        let g = random_connected(rng, n);
        let x = spectral_radius(&g, tol).expect("small graphs converge").vector;
        let mut pairs: Vec<(usize, usize)> = Vec::new();
        for vi in 0..n {
            for vj in 0..n {
                if vi == vj || x[vi] < x[vj] {
                    continue;
                }
                let avail = g.neighbors(vj).difference(g.neighbors(vi)).difference(VertexSet::from_vertices([vi]));
                if !avail.is_empty() {
                    pairs.push((vi, vj));
                }
            }
        }
        let Some(&(vi, vj)) = pairs.choose(rng) else { continue };
        let avail: Vec<usize> =
            g.neighbors(vj).difference(g.neighbors(vi)).difference(VertexSet::from_vertices([vi])).iter().collect();
        let k = rng.gen_range(1..=avail.len());
        let s = VertexSet::from_vertices(avail.choose_multiple(rng, k).copied());
        return (g, vi, vj, s);
    }
}

pub fn criterion_9(cfg: &AcceptanceConfig) -> CriterionResult {
    let start = Instant::now();
    let name = "edge rotation";
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut min_gain = f64::INFINITY;
    let mut failures = Vec::new();
    for _ in 0..1000 {
        let (g, vi, vj, s) = random_rotation(&mut rng, 1e-12);
        let before = spectral_radius(&g, 1e-12).expect("converges").lambda;
        let h = g.rotate_edges(vi, vj, s).expect("preconditions hold by construction");
        let after = spectral_radius(&h, 1e-12).expect("converges").lambda;
        min_gain = min_gain.min(after - before);
        if after <= before + 1e-12 || h.edge_count() != g.edge_count() {
            failures.push(json!({ "graph6": crate::graph6::encode(&g), "vi": vi, "vj": vj, "s": s.iter().collect::<Vec<_>>() }));
        }
    }
    finish(
        9,
        name,
        start,
        failures.is_empty(),
        format!("1000 instances, min lambda gain {min_gain:.3e}, {} failures", failures.len()),
        json!({ "seed": cfg.seed, "min_gain": min_gain, "failures": failures }),
    )
}

pub fn criterion_10(cfg: &AcceptanceConfig, main: &[VerificationReport]) -> CriterionResult {
    let start = Instant::now();
    let name = "conjecture exploration";
    let k3 = Graph::complete(3).expect("K3");
    let c5 = cycle(5).expect("C5");
    let mut reports = Vec::new();
    let mut mismatches = Vec::new();
    for n in 4..=cfg.n_max {
        for q in [1usize, 2] {
            for (fname, f) in [("K3", &k3), ("C5", &c5)] {
                if q + 1 > n.div_ceil(2) || f.n() > n {
                    continue;
                }
                let r = match verify_conjecture(n, 2, q, f, &cfg.opts()) {
                    Ok(r) => r,
                    Err(e) => return failure(10, name, start, e),
                };
                if q == 1 && fname == "K3" {
                    let reference = main
                        .iter()
                        .find(|m| m.params["n"].as_u64() == Some(n as u64))
                        .cloned()
                        .map(Ok)
                        .unwrap_or_else(|| verify_spectral_er(n, &cfg.opts()));
                    match reference {
                        Ok(m) => {
                            if m.qualifying_graphs != r.qualifying_graphs || m.extremal != r.extremal {
                                mismatches.push(n);
                            }
                        }
                        Err(e) => return failure(10, name, start, e),
                    }
                }
                reports.push(r);
            }
        }
    }
    let below: usize = reports.iter().map(|r| r.violations.len()).sum();
    finish(
        10,
        name,
        start,
        mismatches.is_empty(),
        format!(
            "{} reports; (q=1, K3) agrees with the main sweep for n = 4..={} ({} mismatches); {} below-threshold classes recorded",
            reports.len(),
            cfg.n_max,
            mismatches.len(),
            below
        ),
        report_values(&reports),
    )
}

pub fn criterion_11(cfg: &AcceptanceConfig) -> CriterionResult {
    let start = Instant::now();
    let name = "enumeration soundness";
    let mut rows = Vec::new();
    let mut bad = Vec::new();
    for n in 3..=8usize {
        let out = match scan_classes(n, &EnumerationFilter::all(), cfg.workers, |g| Some(automorphism_count(g))) {
            Ok(o) => o,
            Err(e) => return failure(11, name, start, e.into()),
        };
        let fact: BigUint = (1..=n as u64).map(BigUint::from).product();
        let sum: BigUint = out.items.iter().map(|&a| &fact / BigUint::from(a)).sum();
        let want = BigUint::one() << (n * (n - 1) / 2);
        if sum != want {
            bad.push(format!("orbit sum at n = {n}"));
        }
        rows.push(json!({ "n": n, "classes": out.scanned, "orbit_sum": sum.to_string(), "labelled": want.to_string() }));
    }
    let serial = verify_spectral_er(7, &VerifyOptions { tol: cfg.tol, workers: 1 });
    let parallel = verify_spectral_er(7, &VerifyOptions { tol: cfg.tol, workers: 8 });
    let identical = match (&serial, &parallel) {
        (Ok(a), Ok(b)) => a.deterministic_json() == b.deterministic_json(),
        _ => false,
    };
    if !identical {
        bad.push("serial and 8-worker reports differ".into());
    }
    finish(
        11,
        name,
        start,
        bad.is_empty(),
        if bad.is_empty() {
            "orbit sums equal 2^C(n,2) for n = 3..=8; 1- and 8-worker reports identical at n = 7".into()
        } else {
            bad.join("; ")
        },
        json!({ "orbit_sums": rows, "worker_reports_identical": identical }),
    )
}

/// Runs every criterion in order.
pub fn run_all(cfg: &AcceptanceConfig) -> Vec<CriterionResult> {
    let (c1, main) = criterion_1(cfg);
    vec![
        c1,
        criterion_2(cfg),
        criterion_3(cfg),
        criterion_4(cfg),
        criterion_5(cfg),
        criterion_6(cfg),
        criterion_7(cfg),
        criterion_8(cfg),
        criterion_9(cfg),
        criterion_10(cfg, &main),
        criterion_11(cfg),
    ]
}
