//! Named extremal and near-extremal graphs.
//!
//! Vertex layouts are fixed so that callers can address specific vertices:
//!
//! * Turán graphs list their parts contiguously, larger parts first.
//! * The proof-case graphs put the apex `u*` at 0, the set `A` at
//!   `1..=|A|` (so `u_i` is vertex `i + 1`) and the independent set `B` after
//!   it. `u*` is adjacent to all of `A` and to nothing in `B`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::copies::{count_copies, PatternError};
use crate::families::{abc_valid, Family};
use crate::graph::{Graph, GraphError, VertexSet, MAX_VERTICES};
use crate::matrix::SmallMatrix;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("{0}")]
    Param(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Pattern(#[from] PatternError),
}

fn param<T>(msg: impl Into<String>) -> Result<T, ConstructionError> {
    Err(ConstructionError::Param(msg.into()))
}

/// Part sizes of `T_{n,r}`, larger parts first.
pub fn turan_parts(n: usize, r: usize) -> Vec<usize> {
    (0..r).map(|i| n / r + usize::from(i < n % r)).collect()
}

/// Vertex ranges of the parts of `T_{n,r}`.
pub fn turan_part_sets(n: usize, r: usize) -> Vec<VertexSet> {
    let mut start = 0;
    turan_parts(n, r)
        .into_iter()
        .map(|s| {
            let set = VertexSet::from_vertices(start..start + s);
            start += s;
            set
        })
        .collect()
}

pub fn turan(n: usize, r: usize) -> Result<Graph, ConstructionError> {
    if r == 0 || r > n {
        return param(format!("need 1 <= r <= n, got n = {n}, r = {r}"));
    }
    if n > MAX_VERTICES {
        return Err(GraphError::VertexCount(n).into());
    }
    let parts = turan_part_sets(n, r);
    let mut edges = Vec::new();
    for (i, a) in parts.iter().enumerate() {
        for b in &parts[i + 1..] {
            for u in a.iter() {
                edges.extend(b.iter().map(|v| (u, v)));
            }
        }
    }
    Ok(Graph::new(n, &edges)?)
}

/// `T_{n,r}` plus a star `K_{1,q}` centred at vertex 0 with leaves `1..=q`,
/// all inside the first (largest) part.
pub fn turan_plus_star(n: usize, r: usize, q: usize) -> Result<Graph, ConstructionError> {
    let mut g = turan(n, r)?;
    let big = n.div_ceil(r);
    if q == 0 || q + 1 > big {
        return param(format!("star K_1,{q} does not fit in a part of size {big}"));
    }
    for leaf in 1..=q {
        g = g.with_edge(0, leaf)?;
    }
    Ok(g)
}

/// Balanced complete bipartite graph plus one edge in the larger part.
pub fn k_plus(n: usize) -> Result<Graph, ConstructionError> {
    if n < 3 {
        return param(format!("k_plus needs n >= 3, got {n}"));
    }
    turan_plus_star(n, 2, 1)
}

/// Equitable partition `{u*, u0}`, rest of the larger part, smaller part.
/// Equitable for `n >= 5`; the middle cell is empty below that.
pub fn k_plus_partition(n: usize) -> Vec<VertexSet> {
    let big = n.div_ceil(2);
    vec![VertexSet::from_vertices([0, 1]), VertexSet::from_vertices(2..big), VertexSet::from_vertices(big..n)]
}

/// Quotient of `k_plus(n)` by [`k_plus_partition`], computed from the
/// part sizes alone so that it is available beyond the 64-vertex cap.
pub fn k_plus_quotient(n: usize) -> SmallMatrix {
    let big = n.div_ceil(2) as i64;
    let small = (n / 2) as i64;
    SmallMatrix::from_rows_i64(&[vec![1, 0, small], vec![0, 0, small], vec![2, big - 2, 0]]).expect("3 x 3")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RemarkKind {
    UnbalancedPlus,
    EvenPlusMinus,
    OddPlusMinus,
}

impl RemarkKind {
    pub const ALL: [RemarkKind; 3] = [RemarkKind::UnbalancedPlus, RemarkKind::EvenPlusMinus, RemarkKind::OddPlusMinus];

    pub fn name(self) -> &'static str {
        match self {
            RemarkKind::UnbalancedPlus => "unbalanced_plus",
            RemarkKind::EvenPlusMinus => "even_plus_minus",
            RemarkKind::OddPlusMinus => "odd_plus_minus",
        }
    }

    pub fn applies(self, n: usize) -> bool {
        match self {
            RemarkKind::UnbalancedPlus | RemarkKind::EvenPlusMinus => n.is_multiple_of(2) && n >= 6,
            RemarkKind::OddPlusMinus => n % 2 == 1 && n >= 5,
        }
    }

    pub fn family(self) -> Family {
        match self {
            RemarkKind::UnbalancedPlus => Family::F1,
            RemarkKind::EvenPlusMinus => Family::F2,
            RemarkKind::OddPlusMinus => Family::F3,
        }
    }
}

impl fmt::Display for RemarkKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RemarkKind {
    type Err = ConstructionError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let norm = s.replace('-', "_");
        RemarkKind::ALL
            .into_iter()
            .find(|k| k.name() == norm)
            .ok_or_else(|| ConstructionError::Param(format!("unknown remark kind {s:?}")))
    }
}

/// The near-miss graphs: one triangle short of the extremal count while
/// spectrally above the bipartite Turán graph.
pub fn remark_graph(kind: RemarkKind, n: usize) -> Result<Graph, ConstructionError> {
    if !kind.applies(n) {
        return param(format!("{kind} is not defined at n = {n}"));
    }
    Ok(match kind {
        RemarkKind::UnbalancedPlus => {
            let h = n / 2;
            crate::graph::complete_bipartite(h + 1, h - 1)?.with_edge(0, 1)?
        }
        RemarkKind::EvenPlusMinus => {
            let h = n / 2;
            crate::graph::complete_bipartite(h, h)?.with_edge(0, 1)?.without_edge(0, h)
        }
        RemarkKind::OddPlusMinus => {
            let big = n.div_ceil(2);
            crate::graph::complete_bipartite(big, n - big)?.with_edge(0, 1)?.without_edge(0, big)
        }
    })
}

/// Proof-case graphs. `s1` is the number of extra `A`-vertices hung on `u1`
/// (the rest hang on `u2` for G1, on `u3` for G3).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CaseGraphId {
    G1 { s1: usize },
    G2,
    G3 { s1: usize },
    G4,
    G5,
    G6,
    G7 { a: usize, b: usize, c: usize },
    G8 { a: usize, b: usize, c: usize },
}

impl CaseGraphId {
    /// Builds an id from a tag such as `"G8"` and its numeric parameters.
    pub fn parse(tag: &str, params: &[usize]) -> Result<CaseGraphId, ConstructionError> {
        let id = match (tag.to_ascii_uppercase().as_str(), params) {
            ("G1", [s1]) => CaseGraphId::G1 { s1: *s1 },
            ("G2", []) => CaseGraphId::G2,
            ("G3", [s1]) => CaseGraphId::G3 { s1: *s1 },
            ("G4", []) => CaseGraphId::G4,
            ("G5", []) => CaseGraphId::G5,
            ("G6", []) => CaseGraphId::G6,
            ("G7", [a, b, c]) => CaseGraphId::G7 { a: *a, b: *b, c: *c },
            ("G8", [a, b, c]) => CaseGraphId::G8 { a: *a, b: *b, c: *c },
            (t @ ("G1" | "G3"), _) => return param(format!("{t} takes one parameter (s1)")),
            (t @ ("G7" | "G8"), _) => return param(format!("{t} takes parameters a, b, c")),
            (t @ ("G2" | "G4" | "G5" | "G6"), _) => return param(format!("{t} takes no parameters")),
            _ => return param(format!("unknown case graph {tag:?}")),
        };
        Ok(id)
    }

    pub fn tag(&self) -> &'static str {
        match self {
            CaseGraphId::G1 { .. } => "G1",
            CaseGraphId::G2 => "G2",
            CaseGraphId::G3 { .. } => "G3",
            CaseGraphId::G4 => "G4",
            CaseGraphId::G5 => "G5",
            CaseGraphId::G6 => "G6",
            CaseGraphId::G7 { .. } => "G7",
            CaseGraphId::G8 { .. } => "G8",
        }
    }

    /// Polynomial family whose largest root is the spectral radius, if any.
    pub fn family(&self) -> Option<Family> {
        match self {
            CaseGraphId::G2 => Some(Family::G2),
            CaseGraphId::G4 => Some(Family::G4),
            CaseGraphId::G8 { .. } => Some(Family::G8),
            _ => None,
        }
    }

    pub fn abc(&self) -> Option<(usize, usize, usize)> {
        match *self {
            CaseGraphId::G7 { a, b, c } | CaseGraphId::G8 { a, b, c } => Some((a, b, c)),
            _ => None,
        }
    }
}

/// All valid `(a, b, c)` with `a >= 2` at even `n`.
pub fn abc_sweep(n: usize) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    if n % 2 == 1 || n < 4 {
        return out;
    }
    for a in 2..=n / 4 {
        let b = n / 2 - 2 * a;
        if let Some(c) = (n / 2 - 1).checked_sub(a + b) {
            if abc_valid(n, a, b, c) {
                out.push((a, b, c));
            }
        }
    }
    out
}

/// Apex + `A` + `B` skeleton. `a_edges` are pairs of `A`-indices, and
/// `b_excluded[k]` lists the `A`-indices the `k`-th `B`-vertex avoids.
fn apex_graph(n: usize, a_size: usize, a_edges: &[(usize, usize)], b_excluded: &[Vec<usize>]) -> Result<Graph, ConstructionError> {
    debug_assert_eq!(1 + a_size + b_excluded.len(), n);
    let mut edges: Vec<(usize, usize)> = (1..=a_size).map(|v| (0, v)).collect();
    edges.extend(a_edges.iter().map(|&(x, y)| (x + 1, y + 1)));
    for (k, excl) in b_excluded.iter().enumerate() {
        let w = 1 + a_size + k;
        edges.extend((0..a_size).filter(|i| !excl.contains(i)).map(|i| (w, i + 1)));
    }
    Ok(Graph::new(n, &edges)?)
}

pub fn case_graph(id: CaseGraphId, n: usize) -> Result<Graph, ConstructionError> {
    let eight_only = matches!(id, CaseGraphId::G5 | CaseGraphId::G6);
    if eight_only && n != 8 {
        return param(format!("{} is defined only at n = 8", id.tag()));
    }
    if n % 2 == 1 || n < 8 {
        return param(format!("{} needs even n >= 8, got {n}", id.tag()));
    }
    let a_size = n / 2 + 1;
    let b_size = n / 2 - 2;
    let uniform = |excl: Vec<usize>| vec![excl; b_size];
    match id {
        CaseGraphId::G1 { .. } | CaseGraphId::G2 => {
            let s1 = if let CaseGraphId::G1 { s1 } = id { s1 } else { 0 };
            let extras = a_size - 4;
            if s1 > extras {
                return param(format!("G1 split s1 = {s1} exceeds the {extras} extra vertices"));
            }
            // path u0 u1 u2 u3, extras pendant on u1 (first s1) or u2
            let mut e = vec![(0, 1), (1, 2), (2, 3)];
            e.extend((4..a_size).map(|x| (if x - 4 < s1 { 1 } else { 2 }, x)));
            apex_graph(n, a_size, &e, &uniform(vec![1, 2]))
        }
        CaseGraphId::G3 { .. } | CaseGraphId::G4 => {
            let s1 = if let CaseGraphId::G3 { s1 } = id { s1 } else { 0 };
            let extras = a_size - 5;
            if s1 > extras {
                return param(format!("G3 split s1 = {s1} exceeds the {extras} extra vertices"));
            }
            let mut e = vec![(0, 1), (1, 2), (2, 3), (3, 4)];
            e.extend((5..a_size).map(|x| (if x - 5 < s1 { 1 } else { 3 }, x)));
            apex_graph(n, a_size, &e, &uniform(vec![1, 3]))
        }
        CaseGraphId::G5 | CaseGraphId::G6 => {
            // 4-cycle u0 u1 u3 u2 (u1, u2 opposite; u0, u3 opposite), u4 isolated
            let e = [(0, 1), (1, 3), (3, 2), (2, 0)];
            let excl = if id == CaseGraphId::G5 { vec![vec![1, 2], vec![1, 2]] } else { vec![vec![1, 2], vec![0, 3]] };
            apex_graph(n, a_size, &e, &excl)
        }
        CaseGraphId::G7 { a, b, c } | CaseGraphId::G8 { a, b, c } => {
            if !abc_valid(n, a, b, c) || a < 2 {
                return param(format!(
                    "(a, b, c) = ({a}, {b}, {c}) must satisfy a + b + c = n/2 - 1, 2a + b = n/2, a >= 2 at n = {n}"
                ));
            }
            // A order: u0, u1, u2, u3, then the remaining class-a, class-b, class-c vertices
            let mut class_a = vec![0, 3];
            class_a.extend(4..4 + (a - 2));
            let class_b: Vec<usize> = (4 + a - 2..4 + a - 2 + b).collect();
            let mut e = Vec::new();
            for &x in &class_a {
                e.push((1, x));
                e.push((2, x));
            }
            let moved = if matches!(id, CaseGraphId::G7 { .. }) { b / 2 } else { 0 };
            for (k, &x) in class_b.iter().enumerate() {
                e.push((if k < moved { 2 } else { 1 }, x));
            }
            apex_graph(n, a_size, &e, &uniform(vec![1, 2]))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl FromStr for Parity {
    type Err = ConstructionError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "even" => Ok(Parity::Even),
            "odd" => Ok(Parity::Odd),
            _ => param(format!("parity must be even or odd, got {s:?}")),
        }
    }
}

/// Apex over `A = K_{1,t} + K_1`, every `B`-vertex adjacent to `A` minus the
/// star centre.
pub fn apex_star_graph(parity: Parity, n: usize) -> Result<Graph, ConstructionError> {
    let t = match parity {
        Parity::Even if n.is_multiple_of(2) && n >= 10 => n / 2,
        Parity::Odd if n % 2 == 1 && n >= 9 => (n - 1) / 2,
        _ => return param(format!("apex-star graph ({parity:?}) is not defined at n = {n}")),
    };
    let a_size = t + 2;
    let b_size = n - 1 - a_size;
    let e: Vec<(usize, usize)> = (1..=t).map(|x| (0, x)).collect();
    apex_graph(n, a_size, &e, &vec![vec![0]; b_size])
}

/// For each part of `T_{n,r}`, the fewest copies of `f` created by one edge
/// inside it (`None` for parts with a single vertex).
pub fn added_edge_copies_by_part(n: usize, r: usize, f: &Graph) -> Result<Vec<Option<u64>>, ConstructionError> {
    if r < 2 {
        return param(format!("need r >= 2, got {r}"));
    }
    let t = turan(n, r)?;
    let mut out = Vec::new();
    for part in turan_part_sets(n, r) {
        let vs: Vec<usize> = part.iter().collect();
        let mut best: Option<u64> = None;
        for (i, &u) in vs.iter().enumerate() {
            for &v in &vs[i + 1..] {
                let c = count_copies(&t.with_edge(u, v)?, f)?;
                best = Some(best.map_or(c, |b| b.min(c)));
            }
        }
        out.push(best);
    }
    Ok(out)
}

/// Minimum number of copies of `f` in `T_{n,r}` plus one edge inside a part.
pub fn min_added_edge_copies(n: usize, r: usize, f: &Graph) -> Result<u64, ConstructionError> {
    added_edge_copies_by_part(n, r, f)?
        .into_iter()
        .flatten()
        .min()
        .ok_or_else(|| ConstructionError::Param(format!("T_{{{n},{r}}} has no part with two vertices")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::is_isomorphic;
    use crate::graph::{complete_bipartite, cycle};

    #[test]
    fn turan_examples() {
        assert!(is_isomorphic(&turan(4, 2).unwrap(), &cycle(4).unwrap()));
        assert_eq!(turan(5, 2).unwrap().edge_count(), 6);
        assert_eq!(turan_parts(7, 3), vec![3, 2, 2]);
        assert_eq!(turan(7, 3).unwrap().edge_count(), 16);
        assert!(turan(3, 4).is_err());
        assert!(turan(3, 0).is_err());
    }

    #[test]
    fn star_examples() {
        let diamond = turan_plus_star(4, 2, 1).unwrap();
        assert_eq!(diamond.edge_count(), 5);
        assert_eq!(diamond.count_triangles(), 2);
        let g = turan_plus_star(9, 2, 3).unwrap();
        assert_eq!(g.count_triangles(), 12);
        assert_eq!(turan_plus_star(6, 3, 1).unwrap().edge_count(), 13);
        assert!(turan_plus_star(6, 2, 3).is_err());
        assert!(turan_plus_star(6, 2, 0).is_err());
    }

    #[test]
    fn k_plus_examples() {
        assert_eq!(k_plus(4).unwrap().count_triangles(), 2);
        assert_eq!(k_plus(5).unwrap().count_triangles(), 2);
        assert_eq!(k_plus(8).unwrap().count_triangles(), 4);
        assert!(is_isomorphic(&k_plus(5).unwrap(), &complete_bipartite(3, 2).unwrap().with_edge(0, 1).unwrap()));
        assert!(k_plus(2).is_err());
        assert!(k_plus(65).is_err());
        for n in 5..=64 {
            let q = crate::matrix::quotient_matrix(&k_plus(n).unwrap(), &k_plus_partition(n)).unwrap();
            assert_eq!(q, k_plus_quotient(n), "n = {n}");
        }
    }

    #[test]
    fn remark_examples() {
        let g = remark_graph(RemarkKind::UnbalancedPlus, 8).unwrap();
        assert_eq!(g.count_triangles(), 3);
        assert_eq!(g.edge_count(), 16);
        assert_eq!(remark_graph(RemarkKind::OddPlusMinus, 5).unwrap().count_triangles(), 1);
        assert_eq!(remark_graph(RemarkKind::EvenPlusMinus, 6).unwrap().count_triangles(), 2);
        assert!(remark_graph(RemarkKind::EvenPlusMinus, 7).is_err());
        assert!(remark_graph(RemarkKind::OddPlusMinus, 3).is_err());
        assert_eq!("even-plus-minus".parse::<RemarkKind>().unwrap(), RemarkKind::EvenPlusMinus);
    }

    #[test]
    fn case_graph_shapes() {
        for n in [8usize, 10, 12] {
            for id in [CaseGraphId::G2, CaseGraphId::G4, CaseGraphId::G1 { s1: 1 }, CaseGraphId::G3 { s1: n / 2 - 4 }] {
                let g = case_graph(id, n).unwrap();
                let a = VertexSet::from_vertices(1..=n / 2 + 1);
                // G[A] is a tree on n/2 + 1 vertices
                assert_eq!(g.edges_within(a), n / 2, "{id:?} at {n}");
                assert_eq!(g.degree(0), n / 2 + 1);
                assert!(g.is_connected());
            }
            for (a, b, c) in abc_sweep(n) {
                for id in [CaseGraphId::G7 { a, b, c }, CaseGraphId::G8 { a, b, c }] {
                    let g = case_graph(id, n).unwrap();
                    assert_eq!(g.edges_within(VertexSet::from_vertices(1..=n / 2 + 1)), n / 2);
                }
            }
        }
        let g5 = case_graph(CaseGraphId::G5, 8).unwrap();
        let g6 = case_graph(CaseGraphId::G6, 8).unwrap();
        assert_eq!(g5.edge_count(), g6.edge_count());
        assert!(!is_isomorphic(&g5, &g6));
        assert!(case_graph(CaseGraphId::G5, 10).is_err());
        assert!(case_graph(CaseGraphId::G2, 9).is_err());
        assert!(case_graph(CaseGraphId::G8 { a: 1, b: 3, c: 0 }, 10).is_err());
        assert!(case_graph(CaseGraphId::G1 { s1: 9 }, 10).is_err());
        assert_eq!(abc_sweep(12), vec![(2, 2, 1), (3, 0, 2)]);
    }

    #[test]
    fn case_ids_parse() {
        assert_eq!(CaseGraphId::parse("g8", &[2, 1, 1]).unwrap(), CaseGraphId::G8 { a: 2, b: 1, c: 1 });
        assert_eq!(CaseGraphId::parse("G2", &[]).unwrap(), CaseGraphId::G2);
        assert!(CaseGraphId::parse("G2", &[1]).is_err());
        assert!(CaseGraphId::parse("G9", &[]).is_err());
    }

    #[test]
    fn apex_star_examples() {
        let g = apex_star_graph(Parity::Even, 10).unwrap();
        assert_eq!(g.count_triangles(), 5);
        assert_eq!(apex_star_graph(Parity::Odd, 9).unwrap().count_triangles(), 4);
        assert!(apex_star_graph(Parity::Odd, 10).is_err());
        assert!(apex_star_graph(Parity::Even, 8).is_err());
    }

    #[test]
    fn added_edge_copies() {
        let k3 = Graph::complete(3).unwrap();
        assert_eq!(min_added_edge_copies(8, 2, &k3).unwrap(), 4);
        assert_eq!(min_added_edge_copies(4, 2, &k3).unwrap(), 2);
        assert_eq!(min_added_edge_copies(6, 2, &cycle(5).unwrap()).unwrap(), 6);
        assert!(min_added_edge_copies(6, 1, &k3).is_err());
    }
}
