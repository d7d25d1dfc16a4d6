//! Isomorph-free generation of all graphs on `n <= 10` vertices.
//!
//! Canonical augmentation by vertex: a child `P + v` of a parent class `P`
//! is kept iff `v` lies in the canonical deletion orbit, namely the orbit
//! whose rooted certificate is largest among the vertices of the first cell
//! of the refined degree partition (a subset of the minimum-degree
//! vertices). Isomorphic children of the same parent are merged by the
//! rooted certificate of `v`. Every class then has exactly one parent and is
//! produced exactly once.
//!
//! Parents are processed in parallel and their outputs concatenated in
//! parent order, so results do not depend on the number of workers.

use std::collections::HashSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::canon::{degree_partition, refine, rooted_certificate};
use crate::graph::{BitIter, Graph};

pub const MAX_ENUMERATION_N: usize = 10;

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct EnumerationFilter {
    pub min_edges: Option<usize>,
    pub max_edges: Option<usize>,
    pub connected_only: bool,
    /// Classes with `2m < hint^2` are skipped: they have `lambda <= sqrt(2m) < hint`.
    pub min_lambda_hint: Option<f64>,
}

impl EnumerationFilter {
    pub fn all() -> Self {
        Self::default()
    }

    pub fn connected() -> Self {
        EnumerationFilter { connected_only: true, ..Self::default() }
    }

    /// Effective lower bound on the edge count.
    pub fn edge_floor(&self) -> usize {
        let from_hint = self.min_lambda_hint.filter(|h| h.is_finite() && *h > 0.0).map_or(0, |h| {
            // smallest m with 2m >= h^2, rounded down a hair for safety
            ((h * h / 2.0) * (1.0 - 1e-12)).ceil().max(0.0) as usize
        });
        self.min_edges.unwrap_or(0).max(from_hint)
    }

    pub fn accepts(&self, g: &Graph) -> bool {
        let m = g.edge_count();
        m >= self.edge_floor() && self.max_edges.is_none_or(|x| m <= x) && (!self.connected_only || g.is_connected())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumerationError {
    #[error("exhaustive enumeration supports 1 <= n <= {MAX_ENUMERATION_N}, got {0}")]
    Scale(usize),
    #[error("could not start worker pool: {0}")]
    Pool(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanOutcome<T> {
    /// Classes that passed the filter and were visited.
    pub scanned: u64,
    pub items: Vec<T>,
}

/// Rooted certificate of the new vertex `v` if `rows` is an accepted
/// augmentation.
fn accept(rows: &[u64], v: usize) -> Option<Vec<u64>> {
    let mut cells = degree_partition(rows);
    refine(rows, &mut cells);
    let first = cells[0];
    if (first >> v) & 1 == 0 {
        return None;
    }
    let cert = rooted_certificate(rows, &cells, v);
    for u in BitIter(first & !(1u64 << v)) {
        if rooted_certificate(rows, &cells, u) > cert {
            return None;
        }
    }
    Some(cert)
}

/// Accepted children of `parent` with edge count in `[lo, hi]`.
fn for_each_child(parent: &Graph, lo: usize, hi: usize, mut emit: impl FnMut(Graph)) {
    let k = parent.n();
    let v = k;
    let m = parent.edge_count();
    let degs = parent.degrees();
    let min_deg = degs.iter().copied().min().unwrap_or(usize::MAX);
    let mut seen: HashSet<Vec<u64>> = HashSet::new();
    let mut rows = parent.rows().to_vec();
    rows.push(0);
    for s in 0u64..(1u64 << k) {
        let d = s.count_ones() as usize;
        if m + d < lo || m + d > hi || d > min_deg + 1 {
            continue;
        }
        // v must have minimum degree in the child
        if degs.iter().enumerate().any(|(u, &du)| (du + ((s >> u) & 1) as usize) < d) {
            continue;
        }
        for (u, row) in rows.iter_mut().enumerate().take(k) {
            *row = parent.rows()[u] | (((s >> u) & 1) << v);
        }
        rows[v] = s;
        if let Some(cert) = accept(&rows, v) {
            if seen.insert(cert) {
                emit(Graph::from_rows_unchecked(&rows));
            }
        }
    }
}

fn pool(workers: usize) -> Result<rayon::ThreadPool, EnumerationError> {
    rayon::ThreadPoolBuilder::new().num_threads(workers).build().map_err(|e| EnumerationError::Pool(e.to_string()))
}

/// Runs `visit` on one representative of every class on `n` vertices that
/// passes `filter`; `workers = 0` uses all available cores.
pub fn scan_classes<T, F>(n: usize, filter: &EnumerationFilter, workers: usize, visit: F) -> Result<ScanOutcome<T>, EnumerationError>
where
    T: Send,
    F: Fn(&Graph) -> Option<T> + Sync,
{
    if n == 0 || n > MAX_ENUMERATION_N {
        return Err(EnumerationError::Scale(n));
    }
    // lower edge bounds per level: deleting a min-degree vertex from a
    // k-vertex graph with M edges leaves at least M - floor(2M/k)
    let mut floor = vec![0usize; n + 1];
    floor[n] = filter.edge_floor();
    for k in (2..=n).rev() {
        floor[k - 1] = floor[k] - 2 * floor[k] / k;
    }
    let hi = filter.max_edges.unwrap_or(usize::MAX);
    pool(workers)?.install(|| {
        if n == 1 {
            let g = Graph::empty(1).expect("n = 1 is valid");
            let items: Vec<T> = if filter.accepts(&g) { visit(&g).into_iter().collect() } else { Vec::new() };
            let scanned = u64::from(filter.accepts(&g));
            return Ok(ScanOutcome { scanned, items });
        }
        let mut level = vec![Graph::empty(1).expect("n = 1 is valid")];
        for &lo in &floor[2..n] {
            level = level
                .par_iter()
                .map(|p| {
                    let mut out = Vec::new();
                    for_each_child(p, lo, hi, |c| out.push(c));
                    out
                })
                .collect::<Vec<_>>()
                .into_iter()
                .flatten()
                .collect();
        }
        let per_parent: Vec<(u64, Vec<T>)> = level
            .par_iter()
            .map(|p| {
                let mut scanned = 0;
                let mut items = Vec::new();
                for_each_child(p, floor[n], hi, |c| {
                    if filter.accepts(&c) {
                        scanned += 1;
                        items.extend(visit(&c));
                    }
                });
                (scanned, items)
            })
            .collect();
        let scanned = per_parent.iter().map(|(s, _)| s).sum();
        let items = per_parent.into_iter().flat_map(|(_, i)| i).collect();
        Ok(ScanOutcome { scanned, items })
    })
}

/// One representative per isomorphism class passing `filter`.
pub fn enumerate_nonisomorphic(n: usize, filter: &EnumerationFilter) -> Result<Vec<Graph>, EnumerationError> {
    Ok(scan_classes(n, filter, 0, |g| Some(g.clone()))?.items)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::canonical_form;

    #[test]
    fn class_counts() {
        // OEIS A000088
        let expected = [1usize, 2, 4, 11, 34, 156, 1044];
        for (i, &want) in expected.iter().enumerate() {
            let n = i + 1;
            let all = enumerate_nonisomorphic(n, &EnumerationFilter::all()).unwrap();
            assert_eq!(all.len(), want, "n = {n}");
            let forms: HashSet<Vec<u8>> = all.iter().map(canonical_form).collect();
            assert_eq!(forms.len(), want);
        }
    }

    #[test]
    fn connected_counts() {
        // OEIS A001349
        for (n, want) in [(4, 6), (5, 21), (6, 112)] {
            assert_eq!(enumerate_nonisomorphic(n, &EnumerationFilter::connected()).unwrap().len(), want);
        }
    }

    #[test]
    fn edge_filters_match_post_filtering() {
        let all = enumerate_nonisomorphic(7, &EnumerationFilter::all()).unwrap();
        for lo in [0, 5, 10, 15, 21] {
            let f = EnumerationFilter { min_edges: Some(lo), max_edges: Some(lo + 3), ..Default::default() };
            let pruned = enumerate_nonisomorphic(7, &f).unwrap();
            let expected = all.iter().filter(|g| f.accepts(g)).count();
            assert_eq!(pruned.len(), expected, "min_edges = {lo}");
        }
    }

    #[test]
    fn hint_floor() {
        let f = EnumerationFilter { min_lambda_hint: Some(4.0), ..Default::default() };
        assert_eq!(f.edge_floor(), 8);
        let f = EnumerationFilter { min_lambda_hint: Some(3.0), min_edges: Some(2), ..Default::default() };
        assert_eq!(f.edge_floor(), 5);
    }

    #[test]
    fn scale_limit() {
        assert_eq!(scan_classes(11, &EnumerationFilter::all(), 1, |_| Some(())).unwrap_err(), EnumerationError::Scale(11));
        assert_eq!(scan_classes(0, &EnumerationFilter::all(), 1, |_| Some(())).unwrap_err(), EnumerationError::Scale(0));
    }

    #[test]
    fn worker_count_does_not_change_output() {
        let one = scan_classes(6, &EnumerationFilter::all(), 1, |g| Some(canonical_form(g))).unwrap();
        let four = scan_classes(6, &EnumerationFilter::all(), 4, |g| Some(canonical_form(g))).unwrap();
        assert_eq!(one, four);
    }
}
