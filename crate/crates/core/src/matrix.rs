//! Small exact matrices, equitable partitions and quotient matrices.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::graph::{BitIter, Graph, VertexSet};
use crate::poly::{Polynomial, Rational};

/// Square matrix with rational entries, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct SmallMatrix {
    dim: usize,
    entries: Vec<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("expected {expected} entries, got {got}")]
    Shape { expected: usize, got: usize },
}

impl SmallMatrix {
    pub fn new(dim: usize, entries: Vec<Rational>) -> Result<SmallMatrix, MatrixError> {
        if entries.len() != dim * dim {
            return Err(MatrixError::Shape { expected: dim * dim, got: entries.len() });
        }
        Ok(SmallMatrix { dim, entries })
    }

    pub fn from_rows_i64(rows: &[Vec<i64>]) -> Result<SmallMatrix, MatrixError> {
        let dim = rows.len();
        let entries: Vec<Rational> = rows.iter().flatten().map(|&v| Rational::from_integer(BigInt::from(v))).collect();
        SmallMatrix::new(dim, entries)
    }

    pub fn identity(dim: usize) -> SmallMatrix {
        let mut m = SmallMatrix::zero(dim);
        for i in 0..dim {
            m.entries[i * dim + i] = Rational::one();
        }
        m
    }

    pub fn zero(dim: usize) -> SmallMatrix {
        SmallMatrix { dim, entries: vec![Rational::zero(); dim * dim] }
    }

    /// Adjacency matrix of `g`.
    pub fn adjacency(g: &Graph) -> SmallMatrix {
        let n = g.n();
        let mut m = SmallMatrix::zero(n);
        for (u, v) in g.edges() {
            m.entries[u * n + v] = Rational::one();
            m.entries[v * n + u] = Rational::one();
        }
        m
    }

    /// Signless Laplacian `D + A` of `g`.
    pub fn signless_laplacian(g: &Graph) -> SmallMatrix {
        let n = g.n();
        let mut m = SmallMatrix::adjacency(g);
        for v in 0..n {
            m.entries[v * n + v] = Rational::from_integer(BigInt::from(g.degree(v)));
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.dim + j]
    }

    /// Entries as integers when all are integral.
    pub fn to_i64_rows(&self) -> Option<Vec<Vec<i64>>> {
        use num_traits::ToPrimitive;
        (0..self.dim)
            .map(|i| {
                (0..self.dim)
                    .map(|j| {
                        let e = self.get(i, j);
                        if e.is_integer() {
                            e.to_integer().to_i64()
                        } else {
                            None
                        }
                    })
                    .collect()
            })
            .collect()
    }

    fn mul(&self, other: &SmallMatrix) -> SmallMatrix {
        let d = self.dim;
        let mut out = SmallMatrix::zero(d);
        for i in 0..d {
            for k in 0..d {
                let a = &self.entries[i * d + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..d {
                    let b = &other.entries[k * d + j];
                    if !b.is_zero() {
                        out.entries[i * d + j] += a * b;
                    }
                }
            }
        }
        out
    }

    fn trace(&self) -> Rational {
        (0..self.dim).map(|i| self.get(i, i).clone()).fold(Rational::zero(), |a, b| a + b)
    }

    /// `det(xI - M)` by the Faddeev–LeVerrier recursion.
    pub fn char_poly(&self) -> Polynomial {
        let d = self.dim;
        let mut coeffs = vec![Rational::zero(); d + 1];
        coeffs[d] = Rational::one();
        // N_k = M N_{k-1} + c_{d-k+1} I with N_0 = 0; c_{d-k} = -tr(M N_k) / k
        let mut acc = SmallMatrix::zero(d);
        for k in 1..=d {
            let mut next = self.mul(&acc);
            for i in 0..d {
                next.entries[i * d + i] += &coeffs[d - k + 1];
            }
            let t = self.mul(&next).trace();
            coeffs[d - k] = -t / Rational::from_integer(BigInt::from(k));
            acc = next;
        }
        Polynomial::new(coeffs)
    }
}

impl fmt::Debug for SmallMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<String>> =
            (0..self.dim).map(|i| (0..self.dim).map(|j| self.get(i, j).to_string()).collect()).collect();
        write!(f, "{rows:?}")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("cell {cell} is empty")]
    EmptyCell { cell: usize },
    #[error("vertex {vertex} lies in more than one cell")]
    Overlap { vertex: usize },
    #[error("vertex {vertex} is in no cell")]
    Uncovered { vertex: usize },
    #[error("cell {cell} mentions vertex {vertex} outside the graph")]
    OutOfRange { cell: usize, vertex: usize },
    #[error("not equitable: vertices {u} and {v} of cell {cell} have {du} and {dv} neighbours in cell {target}")]
    NotEquitable { cell: usize, target: usize, u: usize, v: usize, du: usize, dv: usize },
}

/// Ordered vertex partition whose cross-cell degrees are constant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquitablePartition {
    cells: Vec<VertexSet>,
    /// `counts[i][j]`: neighbours in cell `j` of any vertex of cell `i`.
    counts: Vec<Vec<usize>>,
}

impl EquitablePartition {
    pub fn new(g: &Graph, cells: Vec<VertexSet>) -> Result<EquitablePartition, PartitionError> {
        let n = g.n();
        let mut seen = 0u64;
        for (i, c) in cells.iter().enumerate() {
            if c.is_empty() {
                return Err(PartitionError::EmptyCell { cell: i });
            }
            if let Some(v) = BitIter(c.bits() & !g.vertices().bits()).next() {
                return Err(PartitionError::OutOfRange { cell: i, vertex: v });
            }
            if let Some(v) = BitIter(c.bits() & seen).next() {
                return Err(PartitionError::Overlap { vertex: v });
            }
            seen |= c.bits();
        }
        if let Some(v) = (0..n).find(|&v| (seen >> v) & 1 == 0) {
            return Err(PartitionError::Uncovered { vertex: v });
        }
        let mut counts = vec![vec![0; cells.len()]; cells.len()];
        for (i, ci) in cells.iter().enumerate() {
            let first = ci.iter().next().expect("cell is nonempty");
            for (j, &cj) in cells.iter().enumerate() {
                let du = g.degree_into(first, cj);
                if let Some(v) = ci.iter().find(|&v| g.degree_into(v, cj) != du) {
                    return Err(PartitionError::NotEquitable {
                        cell: i,
                        target: j,
                        u: first,
                        v,
                        du,
                        dv: g.degree_into(v, cj),
                    });
                }
                counts[i][j] = du;
            }
        }
        Ok(EquitablePartition { cells, counts })
    }

    /// The coarsest equitable partition refining the degree partition.
    pub fn coarsest(g: &Graph) -> EquitablePartition {
        let mut cells = crate::canon::degree_partition(g.rows());
        crate::canon::refine(g.rows(), &mut cells);
        EquitablePartition::new(g, cells.into_iter().map(VertexSet).collect()).expect("refinement is equitable")
    }

    pub fn cells(&self) -> &[VertexSet] {
        &self.cells
    }

    pub fn quotient(&self) -> SmallMatrix {
        let rows: Vec<Vec<i64>> = self.counts.iter().map(|r| r.iter().map(|&c| c as i64).collect()).collect();
        SmallMatrix::from_rows_i64(&rows).expect("square by construction")
    }
}

/// Quotient matrix of `g` with respect to `cells`, checking equitability.
pub fn quotient_matrix(g: &Graph, cells: &[VertexSet]) -> Result<SmallMatrix, PartitionError> {
    Ok(EquitablePartition::new(g, cells.to_vec())?.quotient())
}

/// Characteristic polynomial of the adjacency matrix.
pub fn adjacency_char_poly(g: &Graph) -> Polynomial {
    SmallMatrix::adjacency(g).char_poly()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete_bipartite, path};
    use crate::poly::Polynomial;

    #[test]
    fn char_polys() {
        let m = SmallMatrix::from_rows_i64(&[vec![1, 0, 4], vec![0, 0, 4], vec![2, 2, 0]]).unwrap();
        assert_eq!(m.char_poly(), Polynomial::from_ints(&[8, -16, -1, 1]));
        assert_eq!(SmallMatrix::zero(1).char_poly(), Polynomial::x());
        assert_eq!(SmallMatrix::identity(2).char_poly(), Polynomial::from_ints(&[1, -2, 1]));
        // K_{1,3}: x^4 - 3x^2
        assert_eq!(adjacency_char_poly(&complete_bipartite(1, 3).unwrap()), Polynomial::from_ints(&[0, 0, -3, 0, 1]));
    }

    #[test]
    fn quotients() {
        let k4 = Graph::complete(4).unwrap();
        let q = quotient_matrix(&k4, &[VertexSet::full(4)]).unwrap();
        assert_eq!(q.to_i64_rows().unwrap(), vec![vec![3]]);
        let p3 = path(3).unwrap();
        let q = quotient_matrix(&p3, &[VertexSet::from_vertices([0, 2]), VertexSet::from_vertices([1])]).unwrap();
        assert_eq!(q.to_i64_rows().unwrap(), vec![vec![0, 1], vec![2, 0]]);
    }

    #[test]
    fn partition_errors() {
        let p3 = path(3).unwrap();
        let err = quotient_matrix(&p3, &[VertexSet::from_vertices([0, 1]), VertexSet::from_vertices([2])]).unwrap_err();
        assert!(matches!(err, PartitionError::NotEquitable { cell: 0, .. }));
        assert_eq!(
            quotient_matrix(&p3, &[VertexSet::from_vertices([0, 1])]).unwrap_err(),
            PartitionError::Uncovered { vertex: 2 }
        );
        assert_eq!(
            quotient_matrix(&p3, &[VertexSet::from_vertices([0, 1]), VertexSet::from_vertices([1, 2])]).unwrap_err(),
            PartitionError::Overlap { vertex: 1 }
        );
    }

    #[test]
    fn coarsest_partition_quotient_divides_char_poly() {
        let g = complete_bipartite(2, 3).unwrap().with_edge(2, 3).unwrap();
        let p = EquitablePartition::coarsest(&g);
        let quotient = p.quotient().char_poly();
        let full = adjacency_char_poly(&g);
        assert!(full.div_rem(&quotient).1.is_zero());
    }
}
