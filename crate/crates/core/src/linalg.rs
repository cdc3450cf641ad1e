//! Exact linear algebra over the rationals: dense matrices with rank and
//! fraction-free determinants, and a sparse incremental echelon form used
//! to extract bases, solve membership problems and compute kernels.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::ratpoly::Rational;

/// A sparse vector keyed by an ordered coordinate label.
pub type SparseVec<K> = BTreeMap<K, Rational>;

fn axpy<K: Ord + Clone>(y: &mut SparseVec<K>, a: &Rational, x: &SparseVec<K>) {
    for (k, v) in x {
        let entry = y.entry(k.clone()).or_insert_with(Rational::zero);
        *entry += a * v;
        if entry.is_zero() {
            y.remove(k);
        }
    }
}

#[derive(Clone, Debug)]
struct Row<K> {
    entries: SparseVec<K>,
    /// The row as a combination of the accepted input vectors.
    combo: SparseVec<usize>,
}

/// Outcome of [`SparseEchelon::insert`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Insertion {
    /// The vector was independent of everything inserted before.
    Independent,
    /// The vector equals `Σ c_i v_i` over earlier independent inputs `v_i`
    /// (keyed by insertion index).
    Dependent(SparseVec<usize>),
}

/// Incremental row echelon form over sparse rational vectors.
///
/// Each stored row has its smallest key as pivot, normalized to 1.
#[derive(Clone, Debug)]
pub struct SparseEchelon<K> {
    rows: Vec<Row<K>>,
    pivots: BTreeMap<K, usize>,
    inserted: usize,
}

impl<K: Ord + Clone> Default for SparseEchelon<K> {
    fn default() -> Self {
        Self::new()
    }
}

impl<K: Ord + Clone> SparseEchelon<K> {
    pub fn new() -> Self {
        SparseEchelon {
            rows: Vec::new(),
            pivots: BTreeMap::new(),
            inserted: 0,
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the stored rows; returns the residual and the
    /// combination of rows that was subtracted (in input coordinates).
    fn reduce(&self, mut v: SparseVec<K>) -> (SparseVec<K>, SparseVec<usize>) {
        let mut used = SparseVec::new();
        let mut cursor: Option<K> = None;
        loop {
            let next = match &cursor {
                None => v.keys().find(|k| self.pivots.contains_key(*k)).cloned(),
                Some(c) => v
                    .range((std::ops::Bound::Excluded(c.clone()), std::ops::Bound::Unbounded))
                    .map(|(k, _)| k)
                    .find(|k| self.pivots.contains_key(*k))
                    .cloned(),
            };
            let Some(k) = next else { break };
            let row = &self.rows[self.pivots[&k]];
            let c = v[&k].clone();
            axpy(&mut v, &-&c, &row.entries);
            axpy(&mut used, &c, &row.combo);
            cursor = Some(k);
        }
        (v, used)
    }

    /// Inserts `v`, which becomes input number `self.inserted()`.
    pub fn insert(&mut self, v: SparseVec<K>) -> Insertion {
        let index = self.inserted;
        self.inserted += 1;
        let (residual, used) = self.reduce(v);
        let Some((pivot, lead)) = residual.iter().next().map(|(k, c)| (k.clone(), c.clone())) else {
            return Insertion::Dependent(used);
        };
        let inv = lead.recip();
        let entries = residual.into_iter().map(|(k, c)| (k, c * &inv)).collect();
        let mut combo: SparseVec<usize> = used.into_iter().map(|(i, c)| (i, -c * &inv)).collect();
        combo.insert(index, inv);
        self.pivots.insert(pivot, self.rows.len());
        self.rows.push(Row { entries, combo });
        Insertion::Independent
    }

    /// Number of vectors inserted so far (independent or not).
    pub fn inserted(&self) -> usize {
        self.inserted
    }

    /// Coordinates of `v` over the independent inputs, if `v` is in
    /// their span.
    pub fn express(&self, v: SparseVec<K>) -> Option<SparseVec<usize>> {
        let (residual, used) = self.reduce(v);
        residual.is_empty().then_some(used)
    }
}

/// Dense exact rational matrix.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == ncols), "ragged matrix");
        Matrix {
            rows: nrows,
            cols: ncols,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn rank(&self) -> usize {
        let mut ech = SparseEchelon::new();
        for i in 0..self.rows {
            let v: SparseVec<usize> = self
                .row(i)
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(j, c)| (j, c.clone()))
                .collect();
            ech.insert(v);
        }
        ech.rank()
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// Symmetric positive definite: every pivot of elimination without
    /// row exchanges is positive.
    pub fn is_positive_definite(&self) -> bool {
        if !self.is_symmetric() {
            return false;
        }
        let n = self.rows;
        let mut a: Vec<Vec<Rational>> = (0..n).map(|i| self.row(i).to_vec()).collect();
        for k in 0..n {
            if !a[k][k].is_positive() {
                return false;
            }
            let pivot_row = a[k].clone();
            for row in a.iter_mut().skip(k + 1) {
                if row[k].is_zero() {
                    continue;
                }
                let f = &row[k] / &pivot_row[k];
                for j in k..n {
                    let t = &f * &pivot_row[j];
                    row[j] -= t;
                }
            }
        }
        true
    }

    /// Exact determinant of a square matrix.
    ///
    /// The matrix is split into the connected components of its
    /// row/column incidence graph; each block is scaled to integers and
    /// eliminated fraction-free (Bareiss).
    pub fn determinant(&self) -> Rational {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return Rational::one();
        }
        let blocks = self.blocks();
        let mut row_order = Vec::with_capacity(n);
        let mut col_order = Vec::with_capacity(n);
        let mut det = Rational::one();
        for (rows, cols) in &blocks {
            if rows.len() != cols.len() {
                return Rational::zero();
            }
            row_order.extend_from_slice(rows);
            col_order.extend_from_slice(cols);
            let block: Vec<Vec<Rational>> = rows
                .iter()
                .map(|&i| cols.iter().map(|&j| self.get(i, j).clone()).collect())
                .collect();
            det *= bareiss(block);
            if det.is_zero() {
                return det;
            }
        }
        if permutation_sign(&row_order) * permutation_sign(&col_order) < 0 {
            -det
        } else {
            det
        }
    }

    /// Connected components `(rows, cols)` of the bipartite graph whose
    /// edges are the nonzero entries.
    fn blocks(&self) -> Vec<(Vec<usize>, Vec<usize>)> {
        let total = self.rows + self.cols;
        let mut parent: Vec<usize> = (0..total).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for i in 0..self.rows {
            for j in 0..self.cols {
                if !self.get(i, j).is_zero() {
                    let a = find(&mut parent, i);
                    let b = find(&mut parent, self.rows + j);
                    if a != b {
                        parent[a] = b;
                    }
                }
            }
        }
        let mut groups: BTreeMap<usize, (Vec<usize>, Vec<usize>)> = BTreeMap::new();
        for v in 0..total {
            let root = find(&mut parent, v);
            let g = groups.entry(root).or_default();
            if v < self.rows {
                g.0.push(v);
            } else {
                g.1.push(v - self.rows);
            }
        }
        groups.into_values().collect()
    }
}

fn permutation_sign(perm: &[usize]) -> i32 {
    let mut seen = vec![false; perm.len()];
    let mut sign = 1;
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = perm[i];
            len += 1;
        }
        if len % 2 == 0 {
            sign = -sign;
        }
    }
    sign
}

fn bareiss(block: Vec<Vec<Rational>>) -> Rational {
    let n = block.len();
    // clear denominators row by row
    let mut scale = BigInt::one();
    let mut m: Vec<Vec<BigInt>> = block
        .into_iter()
        .map(|row| {
            let l = row.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
            scale *= &l;
            row.into_iter()
                .map(|c| c.numer() * (&l / c.denom()))
                .collect()
        })
        .collect();
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return Rational::zero();
            };
            m.swap(k, swap);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    let det = Rational::new(prev, scale);
    if negate {
        -det
    } else {
        det
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.data.iter().map(ToString::to_string).collect();
        let width = cells.iter().map(String::len).max().unwrap_or(1);
        for i in 0..self.rows {
            f.write_str("[")?;
            for j in 0..self.cols {
                if j > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{:>width$}", cells[i * self.cols + j])?;
            }
            f.write_str("]\n")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratpoly::{frac, int};

    fn m(rows: &[&[i64]]) -> Matrix {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect())
    }

    #[test]
    fn small_determinants() {
        assert_eq!(m(&[&[1, 2], &[3, 4]]).determinant(), int(-2));
        assert_eq!(m(&[&[0, 1], &[1, 0]]).determinant(), int(-1));
        assert_eq!(m(&[&[2, 0, 0], &[0, 0, 3], &[0, 5, 0]]).determinant(), int(-30));
        assert_eq!(m(&[&[1, 2], &[2, 4]]).determinant(), int(0));
        assert_eq!(m(&[&[1, 0], &[0, 0]]).determinant(), int(0));
        assert_eq!(Matrix::zeros(0, 0).determinant(), int(1));
        let h = Matrix::from_rows(vec![
            vec![int(1), frac(1, 2)],
            vec![frac(1, 2), frac(1, 3)],
        ]);
        assert_eq!(h.determinant(), frac(1, 12));
    }

    #[test]
    fn rank_and_definiteness() {
        assert_eq!(m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]).rank(), 2);
        assert_eq!(Matrix::zeros(3, 2).rank(), 0);
        assert!(m(&[&[2, 1], &[1, 2]]).is_positive_definite());
        assert!(!m(&[&[1, 2], &[2, 1]]).is_positive_definite());
        assert!(!m(&[&[1, 2], &[0, 1]]).is_symmetric());
    }

    #[test]
    fn echelon_tracks_combinations() {
        let v = |pairs: &[(u8, i64)]| -> SparseVec<u8> { pairs.iter().map(|&(k, c)| (k, int(c))).collect() };
        let mut e = SparseEchelon::new();
        assert_eq!(e.insert(v(&[(0, 1), (1, 1)])), Insertion::Independent);
        assert_eq!(e.insert(v(&[(1, 1), (2, 1)])), Insertion::Independent);
        // (1, 0, -1) = v0 - v1
        let Insertion::Dependent(c) = e.insert(v(&[(0, 1), (2, -1)])) else {
            panic!("expected dependence");
        };
        assert_eq!(c, [(0usize, int(1)), (1, int(-1))].into_iter().collect());
        assert_eq!(e.rank(), 2);
        assert_eq!(e.express(v(&[(2, 1)])), None);
        assert_eq!(e.express(SparseVec::new()), Some(SparseVec::new()));
    }
}
