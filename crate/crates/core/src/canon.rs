//! Canonical labelling by colour refinement and individualisation.
//!
//! The search tree is the usual one: refine an ordered partition to an
//! equitable one, pick the first non-singleton cell, individualise each of
//! its vertices in turn and recurse. Every leaf is a discrete partition,
//! i.e. a relabelling; the canonical form is the lexicographically largest
//! relabelled adjacency over all leaves. Branches on vertices that are twins
//! of an already explored vertex in the same cell are skipped, since the
//! transposition of twins is an automorphism fixing the current node.
//!
//! Adequate for the vertex counts used in exhaustive enumeration (n <= 12);
//! graphs with large automorphism groups that are not generated by twin
//! transpositions can make the search exponential.

use crate::graph::{BitIter, Graph};

/// Ordered partition of the vertex set, one bitmask per cell.
pub(crate) type Cells = Vec<u64>;

/// Cells of equal degree, in increasing degree order.
pub(crate) fn degree_partition(rows: &[u64]) -> Cells {
    let mut by_degree: Vec<(u32, u64)> = Vec::new();
    for (v, r) in rows.iter().enumerate() {
        let d = r.count_ones();
        match by_degree.iter_mut().find(|(dd, _)| *dd == d) {
            Some((_, cell)) => *cell |= 1u64 << v,
            None => by_degree.push((d, 1u64 << v)),
        }
    }
    by_degree.sort_unstable_by_key(|&(d, _)| d);
    by_degree.into_iter().map(|(_, c)| c).collect()
}

/// Refines `cells` in place to the coarsest equitable refinement.
///
/// Each split replaces a cell by its pieces ordered by the number of
/// neighbours in the splitter, so the result is equivariant under
/// relabelling.
pub(crate) fn refine(rows: &[u64], cells: &mut Cells) {
    let n = rows.len();
    loop {
        let mut changed = false;
        let mut s = 0;
        while s < cells.len() {
            let splitter = cells[s];
            let mut i = 0;
            while i < cells.len() {
                let cell = cells[i];
                if cell & (cell - 1) == 0 {
                    i += 1;
                    continue;
                }
                let mut counts = [0u64; 65];
                let mut present = 0u128;
                for v in BitIter(cell) {
                    let k = (rows[v] & splitter).count_ones() as usize;
                    counts[k] |= 1u64 << v;
                    present |= 1u128 << k;
                }
                if present.count_ones() > 1 {
                    let pieces: Vec<u64> = (0..=n).filter(|&k| (present >> k) & 1 == 1).map(|k| counts[k]).collect();
                    let k = pieces.len();
                    cells.splice(i..=i, pieces);
                    changed = true;
                    i += k;
                } else {
                    i += 1;
                }
            }
            s += 1;
        }
        if !changed {
            break;
        }
    }
}

#[inline]
fn is_discrete(cells: &Cells) -> bool {
    cells.iter().all(|c| c & (c - 1) == 0)
}

/// Relabelled adjacency for a discrete ordered partition.
fn certificate(rows: &[u64], cells: &Cells, cert: &mut Vec<u64>) {
    let n = rows.len();
    let mut pos = [0usize; 64];
    for (p, c) in cells.iter().enumerate() {
        pos[c.trailing_zeros() as usize] = p;
    }
    cert.clear();
    for c in cells.iter().take(n) {
        let v = c.trailing_zeros() as usize;
        cert.push(BitIter(rows[v]).fold(0u64, |acc, u| acc | (1u64 << pos[u])));
    }
}

#[inline]
fn twins(rows: &[u64], u: usize, v: usize) -> bool {
    let m = !((1u64 << u) | (1u64 << v));
    rows[u] & m == rows[v] & m
}

struct Search<'a> {
    rows: &'a [u64],
    best: Option<(Vec<u64>, Cells)>,
    scratch: Vec<u64>,
}

impl Search<'_> {
    fn run(&mut self, mut cells: Cells) {
        refine(self.rows, &mut cells);
        if is_discrete(&cells) {
            certificate(self.rows, &cells, &mut self.scratch);
            let better = match &self.best {
                None => true,
                Some((b, _)) => self.scratch > *b,
            };
            if better {
                self.best = Some((self.scratch.clone(), cells));
            }
            return;
        }
        let (t, &target) = cells
            .iter()
            .enumerate()
            .find(|(_, c)| *c & (*c - 1) != 0)
            .expect("non-discrete partition has a non-singleton cell");
        let mut tried: Vec<usize> = Vec::new();
        for v in BitIter(target) {
            if tried.iter().any(|&u| twins(self.rows, u, v)) {
                continue;
            }
            tried.push(v);
            let mut child = Vec::with_capacity(cells.len() + 1);
            child.extend_from_slice(&cells[..t]);
            child.push(1u64 << v);
            child.push(target & !(1u64 << v));
            child.extend_from_slice(&cells[t + 1..]);
            self.run(child);
        }
    }
}

/// Best certificate and its discrete partition, starting from `cells`.
pub(crate) fn search(rows: &[u64], cells: Cells) -> (Vec<u64>, Cells) {
    let mut s = Search { rows, best: None, scratch: Vec::with_capacity(rows.len()) };
    s.run(cells);
    s.best.expect("search visits at least one leaf")
}

/// Canonical certificate of `rows` with vertex `u` individualised inside the
/// refined degree partition. Two vertices get equal certificates iff some
/// automorphism maps one to the other.
pub(crate) fn rooted_certificate(rows: &[u64], refined: &Cells, u: usize) -> Vec<u64> {
    let mut cells = Vec::with_capacity(refined.len() + 1);
    for &c in refined {
        if (c >> u) & 1 == 1 && c & (c - 1) != 0 {
            cells.push(1u64 << u);
            cells.push(c & !(1u64 << u));
        } else {
            cells.push(c);
        }
    }
    search(rows, cells).0
}

fn cert_bytes(n: usize, cert: &[u64]) -> Vec<u8> {
    let width = n.div_ceil(8);
    let mut out = Vec::with_capacity(1 + n * width);
    out.push(n as u8);
    for row in cert {
        out.extend_from_slice(&row.to_le_bytes()[..width]);
    }
    out
}

/// Byte string that is equal for two graphs iff they are isomorphic.
pub fn canonical_form(g: &Graph) -> Vec<u8> {
    let (cert, _) = search(g.rows(), degree_partition(g.rows()));
    cert_bytes(g.n(), &cert)
}

/// `perm[v]` is the canonical position of vertex `v`.
pub fn canonical_labeling(g: &Graph) -> Vec<usize> {
    let (_, cells) = search(g.rows(), degree_partition(g.rows()));
    let mut perm = vec![0; g.n()];
    for (p, c) in cells.iter().enumerate() {
        perm[c.trailing_zeros() as usize] = p;
    }
    perm
}

/// The canonical representative of `g`'s isomorphism class.
pub fn canonical_graph(g: &Graph) -> Graph {
    g.permuted(&canonical_labeling(g))
}

pub fn is_isomorphic(a: &Graph, b: &Graph) -> bool {
    a.n() == b.n()
        && a.edge_count() == b.edge_count()
        && a.count_triangles() == b.count_triangles()
        && canonical_form(a) == canonical_form(b)
}
