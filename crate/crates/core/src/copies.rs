//! Subgraph copy counting by backtracking over injective homomorphisms.

use thiserror::Error;

use crate::graph::{BitIter, Graph};

/// Largest pattern accepted by [`count_copies`].
pub const MAX_PATTERN_VERTICES: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PatternError {
    #[error("pattern has {0} vertices; at most 8 are supported")]
    TooLarge(usize),
    #[error("pattern must be connected")]
    Disconnected,
}

/// Pattern vertices in breadth-first order plus, for each position, the
/// mask of earlier positions adjacent to it.
fn search_order(f: &Graph) -> (Vec<usize>, Vec<u64>) {
    let k = f.n();
    let mut order = Vec::with_capacity(k);
    let mut placed = 0u64;
    while order.len() < k {
        // start each component at its highest-degree vertex
        let root = (0..k)
            .filter(|&v| (placed >> v) & 1 == 0)
            .max_by_key(|&v| (f.degree(v), std::cmp::Reverse(v)))
            .expect("unplaced vertex exists");
        placed |= 1u64 << root;
        let start = order.len();
        order.push(root);
        let mut head = start;
        while head < order.len() {
            let v = order[head];
            head += 1;
            for u in BitIter(f.rows()[v] & !placed) {
                placed |= 1u64 << u;
                order.push(u);
            }
        }
    }
    let mut pos = [0usize; 64];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let back = order
        .iter()
        .enumerate()
        .map(|(i, &v)| BitIter(f.rows()[v]).filter(|&u| pos[u] < i).fold(0u64, |acc, u| acc | (1u64 << pos[u])))
        .collect();
    (order, back)
}

struct Embedder<'a> {
    host: &'a Graph,
    back: Vec<u64>,
    /// Per position, the host vertices allowed there.
    allowed: Vec<u64>,
    image: Vec<usize>,
}

impl Embedder<'_> {
    fn count(&mut self, i: usize, used: u64) -> u64 {
        if i == self.back.len() {
            return 1;
        }
        let mut cand = self.allowed[i] & !used;
        for j in BitIter(self.back[i]) {
            cand &= self.host.rows()[self.image[j]];
        }
        let mut total = 0;
        for w in BitIter(cand) {
            self.image[i] = w;
            total += self.count(i + 1, used | (1u64 << w));
        }
        total
    }
}

/// Number of injective maps `V(f) -> V(g)` sending edges to edges.
pub fn count_injective_homomorphisms(g: &Graph, f: &Graph) -> u64 {
    if f.n() > g.n() {
        return 0;
    }
    let (order, back) = search_order(f);
    let all = g.vertices().bits();
    let allowed = order
        .iter()
        .map(|&v| {
            let d = f.degree(v);
            (0..g.n()).filter(|&w| g.degree(w) >= d).fold(0u64, |acc, w| acc | (1u64 << w)) & all
        })
        .collect();
    let k = f.n();
    Embedder { host: g, back, allowed, image: vec![0; k] }.count(0, 0)
}

/// `|Aut(g)|`.
pub fn automorphism_count(g: &Graph) -> u64 {
    // a bijective homomorphism g -> g preserves degrees exactly
    let (order, back) = search_order(g);
    let allowed = order
        .iter()
        .map(|&v| {
            let d = g.degree(v);
            (0..g.n()).filter(|&w| g.degree(w) == d).fold(0u64, |acc, w| acc | (1u64 << w))
        })
        .collect();
    Embedder { host: g, back, allowed, image: vec![0; g.n()] }.count(0, 0)
}

/// Number of (not necessarily induced) subgraphs of `g` isomorphic to `f`.
pub fn count_copies(g: &Graph, f: &Graph) -> Result<u64, PatternError> {
    if f.n() > MAX_PATTERN_VERTICES {
        return Err(PatternError::TooLarge(f.n()));
    }
    if !f.is_connected() {
        return Err(PatternError::Disconnected);
    }
    let homs = count_injective_homomorphisms(g, f);
    let aut = automorphism_count(f);
    debug_assert_eq!(homs % aut, 0);
    Ok(homs / aut)
}
