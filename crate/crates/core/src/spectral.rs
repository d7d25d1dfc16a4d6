//! Certified spectral radii by shifted power iteration.
//!
//! For a nonnegative vector `x > 0` on a connected component, the
//! Collatz–Wielandt quotients bracket the Perron root:
//! `min_i (Mx)_i / x_i <= rho(M) <= max_i (Mx)_i / x_i`. The iteration runs
//! until the bracket is narrower than the tolerance, so every returned value
//! carries a rigorous enclosure (up to a few ulps of rounding, which are
//! added to the bracket).

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{BitIter, Graph};

pub const DEFAULT_TOL: f64 = 1e-10;
pub const MAX_ITERATIONS: usize = 1_000_000;
const SHIFT: f64 = 1.0;
const CHECK_EVERY: usize = 16;
const STALL_CHECKS: usize = 256;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectralResult {
    pub lambda: f64,
    /// Unit Perron vector of the achieving component, zero elsewhere.
    pub vector: Vec<f64>,
    /// Bound on `|M v - lambda v|_inf`.
    pub residual: f64,
    pub iterations: usize,
    /// Certified enclosure of the true radius.
    pub lower: f64,
    pub upper: f64,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpectralError {
    #[error("tolerance must be positive and finite, got {0}")]
    Tolerance(f64),
    #[error("no convergence after {iterations} iterations: best estimate {best} in [{lower}, {upper}]")]
    NoConvergence { best: f64, lower: f64, upper: f64, iterations: usize },
}

struct Component {
    lambda: f64,
    lower: f64,
    upper: f64,
    vector: Vec<(usize, f64)>,
    iterations: usize,
}

/// `y = (A + diag) x` restricted to `verts`, with `x` indexed by vertex.
fn apply(rows: &[u64], diag: &[f64], verts: &[usize], x: &[f64], y: &mut [f64]) {
    for &v in verts {
        let mut s = diag[v] * x[v];
        for u in BitIter(rows[v]) {
            s += x[u];
        }
        y[v] = s;
    }
}

fn component_radius(rows: &[u64], diag: &[f64], verts: &[usize], tol: f64) -> Result<Component, SpectralError> {
    if verts.len() == 1 {
        let v = verts[0];
        return Ok(Component { lambda: diag[v], lower: diag[v], upper: diag[v], vector: vec![(v, 1.0)], iterations: 0 });
    }
    let n = rows.len();
    let mut x = vec![0.0; n];
    for (k, &v) in verts.iter().enumerate() {
        x[v] = 1.0 + 1e-3 * (k as f64 + 1.0) / verts.len() as f64;
    }
    let mut y = vec![0.0; n];
    let mut best = (0.0, 0.0, f64::INFINITY);
    let mut stalled = 0;
    let max_deg = verts.iter().map(|&v| rows[v].count_ones() as f64 + diag[v].abs()).fold(0.0, f64::max);
    let mut it = 0;
    while it < MAX_ITERATIONS {
        apply(rows, diag, verts, &x, &mut y);
        it += 1;
        if it % CHECK_EVERY == 0 {
            let (mut lo, mut hi) = (f64::INFINITY, 0.0f64);
            let (mut num, mut den) = (0.0, 0.0);
            for &v in verts {
                let r = y[v] / x[v];
                lo = lo.min(r);
                hi = hi.max(r);
                num += x[v] * y[v];
                den += x[v] * x[v];
            }
            // rounding slack: each (Mx)_v sums at most deg + 1 terms
            let slack = 4.0 * f64::EPSILON * (hi + 1.0) * (max_deg + 2.0);
            lo -= slack;
            hi += slack;
            let rayleigh = (num / den).clamp(lo, hi);
            // the Collatz-Wielandt bracket only shrinks in exact arithmetic, so a
            // long run without progress means rounding has taken over
            if hi - lo < best.2 - best.1 || !best.2.is_finite() {
                best = (rayleigh, lo, hi);
                stalled = 0;
            } else {
                stalled += 1;
                if stalled >= STALL_CHECKS {
                    break;
                }
            }
            if hi - lo <= tol {
                let norm = verts.iter().map(|&v| x[v] * x[v]).sum::<f64>().sqrt();
                return Ok(Component {
                    lambda: rayleigh,
                    lower: lo.max(0.0),
                    upper: hi,
                    vector: verts.iter().map(|&v| (v, x[v] / norm)).collect(),
                    iterations: it,
                });
            }
        }
        // shifted step, normalised by the max entry
        let mut m = 0.0f64;
        for &v in verts {
            y[v] += SHIFT * x[v];
            m = m.max(y[v]);
        }
        for &v in verts {
            x[v] = y[v] / m;
        }
    }
    Err(SpectralError::NoConvergence { best: best.0, lower: best.1, upper: best.2, iterations: it })
}

fn radius(g: &Graph, diag: &[f64], tol: f64) -> Result<SpectralResult, SpectralError> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(SpectralError::Tolerance(tol));
    }
    let rows = g.rows();
    let mut best: Option<Component> = None;
    let mut iterations = 0;
    let mut lower = 0.0f64;
    let mut upper = 0.0f64;
    for comp in g.components() {
        let verts: Vec<usize> = comp.iter().collect();
        let c = component_radius(rows, diag, &verts, tol)?;
        iterations += c.iterations;
        lower = lower.max(c.lower);
        upper = upper.max(c.upper);
        if best.as_ref().is_none_or(|b| c.lambda > b.lambda) {
            best = Some(c);
        }
    }
    let best = best.expect("graphs have at least one vertex");
    let mut vector = vec![0.0; g.n()];
    for &(v, val) in &best.vector {
        vector[v] = val;
    }
    let lambda = best.lambda.clamp(lower, upper);
    // residual of the returned pair, measured on the full matrix
    let mut y = vec![0.0; g.n()];
    let all: Vec<usize> = (0..g.n()).collect();
    apply(rows, diag, &all, &vector, &mut y);
    let residual = all.iter().map(|&v| (y[v] - lambda * vector[v]).abs()).fold(0.0, f64::max);
    Ok(SpectralResult { lambda, vector, residual, iterations, lower, upper })
}

/// Largest adjacency eigenvalue, certified to an interval of width `tol`.
pub fn spectral_radius(g: &Graph, tol: f64) -> Result<SpectralResult, SpectralError> {
    radius(g, &vec![0.0; g.n()], tol)
}

/// Largest eigenvalue of the signless Laplacian `D + A`.
pub fn signless_laplacian_radius(g: &Graph, tol: f64) -> Result<SpectralResult, SpectralError> {
    let diag: Vec<f64> = g.degrees().into_iter().map(|d| d as f64).collect();
    radius(g, &diag, tol)
}

/// `(lambda (lambda^2 - m) / 3, (n^2 / 12)(lambda - n/2))`, the two
/// supersaturation lower bounds on the triangle count.
pub fn bn_triangle_bounds(g: &Graph, tol: f64) -> Result<(f64, f64), SpectralError> {
    let l = spectral_radius(g, tol)?.lambda;
    let m = g.edge_count() as f64;
    let n = g.n() as f64;
    Ok((l * (l * l - m) / 3.0, n * n / 12.0 * (l - n / 2.0)))
}

/// Average degree `2m/n`, a lower bound on the spectral radius.
pub fn rayleigh_lower_bound(g: &Graph) -> f64 {
    2.0 * g.edge_count() as f64 / g.n() as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete_bipartite, cycle, path, star};

    fn lam(g: &Graph) -> f64 {
        spectral_radius(g, 1e-12).unwrap().lambda
    }

    #[test]
    fn closed_forms() {
        assert!((lam(&complete_bipartite(3, 3).unwrap()) - 3.0).abs() < 1e-11);
        assert!((lam(&complete_bipartite(2, 3).unwrap()) - 6f64.sqrt()).abs() < 1e-11);
        assert!((lam(&Graph::complete(5).unwrap()) - 4.0).abs() < 1e-11);
        assert!((lam(&cycle(7).unwrap()) - 2.0).abs() < 1e-11);
        assert!((lam(&path(4).unwrap()) - 1.618033988749895).abs() < 1e-11);
        let diamond = complete_bipartite(2, 2).unwrap().with_edge(0, 1).unwrap();
        assert!((lam(&diamond) - (1.0 + 17f64.sqrt()) / 2.0).abs() < 1e-11);
        assert_eq!(lam(&Graph::empty(3).unwrap()), 0.0);
    }

    #[test]
    fn result_contract() {
        let g = path(6).unwrap().disjoint_union(&Graph::complete(3).unwrap()).unwrap();
        let r = spectral_radius(&g, 1e-10).unwrap();
        assert!((r.lambda - 2.0).abs() < 1e-10);
        assert!(r.residual <= 1e-10);
        assert!(r.lower <= 2.0 && 2.0 <= r.upper);
        let norm: f64 = r.vector.iter().map(|v| v * v).sum();
        assert!((norm - 1.0).abs() < 1e-12);
        assert!(r.vector[..6].iter().all(|&v| v == 0.0));
        assert!(r.vector[6..].iter().all(|&v| v > 0.5));
    }

    #[test]
    fn signless_examples() {
        let q = |g: &Graph| signless_laplacian_radius(g, 1e-12).unwrap().lambda;
        assert!((q(&complete_bipartite(2, 2).unwrap()) - 4.0).abs() < 1e-10);
        assert!((q(&star(3).unwrap()) - 4.0).abs() < 1e-10);
        let k41_plus = complete_bipartite(4, 1).unwrap().with_edge(0, 1).unwrap();
        assert!(q(&k41_plus) > 5.0);
        assert_eq!(k41_plus.count_triangles(), 1);
    }

    #[test]
    fn bounds() {
        let (a, b) = bn_triangle_bounds(&Graph::complete(4).unwrap(), 1e-12).unwrap();
        assert!((a - 3.0).abs() < 1e-9 && (b - 4.0 / 3.0).abs() < 1e-9);
        let (a, b) = bn_triangle_bounds(&complete_bipartite(3, 3).unwrap(), 1e-12).unwrap();
        assert!(a.abs() < 1e-9 && b.abs() < 1e-9);
        assert_eq!(rayleigh_lower_bound(&Graph::empty(4).unwrap()), 0.0);
    }

    #[test]
    fn unreachable_tolerance_fails_fast() {
        let g = Graph::complete(12).unwrap().without_edge(0, 1);
        match spectral_radius(&g, 1e-17) {
            Err(SpectralError::NoConvergence { best, iterations, .. }) => {
                assert!((best - 10.9).abs() < 0.1);
                assert!(iterations < 100_000);
            }
            other => panic!("expected NoConvergence, got {other:?}"),
        }
    }

    #[test]
    fn bad_tolerance() {
        let g = Graph::complete(3).unwrap();
        assert_eq!(spectral_radius(&g, 0.0), Err(SpectralError::Tolerance(0.0)));
        assert!(spectral_radius(&g, f64::NAN).is_err());
    }
}
