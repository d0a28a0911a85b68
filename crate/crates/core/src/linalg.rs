//! Dense linear algebra over `Q`: row reduction, rank, solving, kernels,
//! quotient reduction, and labeled linear maps.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::class::CohClass;
use crate::monomial::Monomial;
use crate::rational::{fmt_q, Q};

pub type Matrix = Vec<Vec<Q>>;

pub fn zeros(rows: usize, cols: usize) -> Matrix {
    vec![vec![Q::zero(); cols]; rows]
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(m: &mut Matrix) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = Q::one() / &m[r][c];
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..cols {
                    let v = &m[r][j] * &f;
                    m[i][j] -= v;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(rows);
    pivots
}

pub fn rank(m: &Matrix) -> usize {
    let mut a = m.clone();
    rref(&mut a).len()
}

/// Transpose of a matrix with `cols` columns (needed when `m` is empty).
pub fn transpose(m: &Matrix, cols: usize) -> Matrix {
    (0..cols).map(|j| m.iter().map(|r| r[j].clone()).collect()).collect()
}

/// Some solution `x` of `a x = b`, or `None` when inconsistent.
pub fn solve(a: &Matrix, b: &[Q]) -> Option<Vec<Q>> {
    let cols = a.first().map_or(0, |r| r.len());
    let mut aug: Matrix = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.last() == Some(&cols) {
        return None;
    }
    let mut x = vec![Q::zero(); cols];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = aug[i][cols].clone();
    }
    Some(x)
}

/// Solves `a X = B` column by column for a square nonsingular `a`; `None` if singular.
pub fn inverse(a: &Matrix) -> Option<Matrix> {
    let n = a.len();
    let mut aug: Matrix = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Q::one() } else { Q::zero() }));
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Basis of the kernel of `m` (an `rows x cols` matrix).
pub fn kernel(m: &Matrix, cols: usize) -> Vec<Vec<Q>> {
    let mut a = m.clone();
    let pivots = rref(&mut a);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Q::zero(); cols];
            v[f] = Q::one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -a[i][f].clone();
            }
            v
        })
        .collect()
}

/// Reduces vectors modulo a subspace: each output is the canonical
/// representative with zero entries at the pivot coordinates of the subspace.
#[derive(Debug, Clone)]
pub struct QuotientReducer {
    rows: Matrix,
    pivots: Vec<usize>,
}

impl QuotientReducer {
    pub fn new(subspace: &[Vec<Q>]) -> Self {
        let mut rows = subspace.to_vec();
        let pivots = rref(&mut rows);
        rows.truncate(pivots.len());
        QuotientReducer { rows, pivots }
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn reduce(&self, v: &[Q]) -> Vec<Q> {
        let mut out = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !out[p].is_zero() {
                let f = out[p].clone();
                for (o, r) in out.iter_mut().zip(row) {
                    *o -= r * &f;
                }
            }
        }
        out
    }
}

/// Coordinates of classes over the union of their monomials.
pub struct Coords {
    pub index: Vec<Monomial>,
    pub vectors: Vec<Vec<Q>>,
}

pub fn coords(classes: &[CohClass]) -> Coords {
    let mut pos: BTreeMap<Monomial, usize> = BTreeMap::new();
    for c in classes {
        for m in c.terms().keys() {
            let n = pos.len();
            pos.entry(m.clone()).or_insert(n);
        }
    }
    let vectors = classes
        .iter()
        .map(|c| {
            let mut v = vec![Q::zero(); pos.len()];
            for (m, x) in c.terms() {
                v[pos[m]] = x.clone();
            }
            v
        })
        .collect();
    let mut index = vec![Monomial(Vec::new()); pos.len()];
    for (m, i) in pos {
        index[i] = m;
    }
    Coords { index, vectors }
}

/// Writes `target` as a combination of `cands`. Candidates are taken
/// greedily in order, skipping those dependent on earlier ones, so the
/// answer is unique; skipped candidates get coefficient 0.
pub fn express_in(target: &CohClass, cands: &[CohClass]) -> Option<Vec<Q>> {
    let mut all = cands.to_vec();
    all.push(target.clone());
    let Coords { vectors, index } = coords(&all);
    let dim = index.len();
    let mut chosen: Vec<usize> = Vec::new();
    let mut basis_rows: Matrix = Vec::new();
    for (i, v) in vectors[..cands.len()].iter().enumerate() {
        let mut trial = basis_rows.clone();
        trial.push(v.clone());
        if rank(&trial) > basis_rows.len() {
            basis_rows.push(v.clone());
            chosen.push(i);
        }
    }
    let a: Matrix = (0..dim).map(|r| basis_rows.iter().map(|b| b[r].clone()).collect()).collect();
    let x = solve(&a, &vectors[cands.len()])?;
    let mut out = vec![Q::zero(); cands.len()];
    for (k, &i) in chosen.iter().enumerate() {
        out[i] = x[k].clone();
    }
    Some(out)
}

/// Dimension of the span of some classes.
pub fn span_dim(classes: &[CohClass]) -> usize {
    rank(&coords(classes).vectors)
}

/// A rational matrix with labeled domain and codomain bases; column `j` is
/// the image of domain vector `j`.
#[derive(Debug, Clone, Serialize)]
pub struct LinearMapQ {
    pub domain: Vec<String>,
    pub codomain: Vec<String>,
    #[serde(serialize_with = "ser_matrix")]
    pub matrix: Matrix,
}

fn ser_matrix<S: serde::Serializer>(m: &Matrix, s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(m.len()))?;
    for row in m {
        let r: Vec<String> = row.iter().map(fmt_q).collect();
        seq.serialize_element(&r)?;
    }
    seq.end()
}

impl LinearMapQ {
    pub fn new(domain: Vec<String>, codomain: Vec<String>) -> Self {
        let matrix = zeros(codomain.len(), domain.len());
        LinearMapQ { domain, codomain, matrix }
    }

    pub fn set(&mut self, row: usize, col: usize, v: Q) {
        self.matrix[row][col] = v;
    }

    pub fn rank(&self) -> usize {
        rank(&self.matrix)
    }

    pub fn kernel_dim(&self) -> usize {
        self.domain.len() - self.rank()
    }

    pub fn cokernel_dim(&self) -> usize {
        self.codomain.len() - self.rank()
    }

    pub fn is_surjective(&self) -> bool {
        self.rank() == self.codomain.len()
    }

    pub fn apply(&self, v: &[Q]) -> Vec<Q> {
        self.matrix.iter().map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
    }
}
