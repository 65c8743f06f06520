//! Exact linear algebra over `Q(q)`: sparse echelon spans and dense matrices.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Sub};

use crate::qfield::RatFunc;

pub type SparseRow<K> = BTreeMap<K, RatFunc>;

fn axpy<K: Ord + Clone>(target: &mut SparseRow<K>, factor: &RatFunc, row: &SparseRow<K>) {
    for (k, v) in row {
        let slot = target.entry(k.clone()).or_insert_with(RatFunc::zero);
        *slot = &*slot + &(factor * v);
        if slot.is_zero() {
            target.remove(k);
        }
    }
}

/// Row echelon form of a growing span; pivots are smallest keys.
///
/// Every inserted vector carries a tag, and reductions report the
/// combination of tags they consumed.
#[derive(Clone, Debug)]
pub struct Echelon<K: Ord + Clone> {
    rows: BTreeMap<K, (SparseRow<K>, SparseRow<usize>)>,
}

impl<K: Ord + Clone> Default for Echelon<K> {
    fn default() -> Self {
        Echelon { rows: BTreeMap::new() }
    }
}

impl<K: Ord + Clone> Echelon<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the pivots: `v = residual + Σ combo[t] · input_t`.
    pub fn reduce(&self, v: &SparseRow<K>) -> (SparseRow<K>, SparseRow<usize>) {
        let mut rest = v.clone();
        let mut combo = SparseRow::new();
        let mut cursor: Option<K> = None;
        loop {
            let next = match &cursor {
                None => rest.keys().next().cloned(),
                Some(c) => rest.range((std::ops::Bound::Excluded(c.clone()), std::ops::Bound::Unbounded)).next().map(|(k, _)| k.clone()),
            };
            let Some(col) = next else { break };
            if let Some((row, row_combo)) = self.rows.get(&col) {
                let factor = rest[&col].clone();
                axpy(&mut rest, &-&factor, row);
                axpy(&mut combo, &factor, row_combo);
            }
            cursor = Some(col);
        }
        (rest, combo)
    }

    pub fn contains(&self, v: &SparseRow<K>) -> bool {
        self.reduce(v).0.is_empty()
    }

    /// Adds `v`; returns the new pivot if `v` was independent.
    pub fn insert(&mut self, v: &SparseRow<K>, tag: usize) -> Option<K> {
        let (rest, combo) = self.reduce(v);
        let (pivot, pv) = rest.iter().next()?;
        let pivot = pivot.clone();
        let inv = pv.inv().expect("nonzero pivot");
        let row: SparseRow<K> = rest.iter().map(|(k, x)| (k.clone(), x * &inv)).collect();
        let mut row_combo: SparseRow<usize> = combo.iter().map(|(t, x)| (*t, -&(x * &inv))).collect();
        row_combo.insert(tag, inv);
        self.rows.insert(pivot.clone(), (row, row_combo));
        Some(pivot)
    }

    /// `(pivot, normalized row)` pairs in pivot order.
    pub fn rows(&self) -> impl Iterator<Item = (&K, &SparseRow<K>)> {
        self.rows.iter().map(|(k, (r, _))| (k, r))
    }

    /// `(pivot, row, tag combination producing the row)`.
    pub fn rows_with_combos(&self) -> impl Iterator<Item = (&K, &SparseRow<K>, &SparseRow<usize>)> {
        self.rows.iter().map(|(k, (r, c))| (k, r, c))
    }
}

/// Dense matrix over `Q(q)`.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<RatFunc>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![RatFunc::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, RatFunc::one());
        }
        m
    }

    pub fn diagonal(entries: Vec<RatFunc>) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, e) in entries.into_iter().enumerate() {
            m.set(i, i, e);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<RatFunc>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &RatFunc {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: RatFunc) {
        self.data[r * self.cols + c] = v;
    }

    pub fn add_to(&mut self, r: usize, c: usize, v: &RatFunc) {
        let slot = &mut self.data[r * self.cols + c];
        *slot = &*slot + v;
    }

    pub fn row(&self, r: usize) -> &[RatFunc] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<RatFunc> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(RatFunc::is_zero)
    }

    pub fn scale(&self, c: &RatFunc) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * c).collect() }
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn apply(&self, v: &[RatFunc]) -> Vec<RatFunc> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                self.row(r).iter().zip(v).filter(|(a, b)| !a.is_zero() && !b.is_zero()).fold(RatFunc::zero(), |acc, (a, b)| &acc + &(a * b))
            })
            .collect()
    }

    pub fn pow(&self, n: u32) -> Matrix {
        (0..n).fold(Matrix::identity(self.rows), |acc, _| &acc * self)
    }

    /// `M^n = 0` for `n = dim`.
    pub fn is_nilpotent(&self) -> bool {
        self.pow(self.rows as u32).is_zero()
    }

    /// Reduced row echelon form with pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else { continue };
            for j in 0..m.cols {
                m.data.swap(r * m.cols + j, p * m.cols + j);
            }
            let inv = m.get(r, c).inv().expect("nonzero pivot");
            for j in 0..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i != r && !m.get(i, c).is_zero() {
                    let f = m.get(i, c).clone();
                    for j in 0..m.cols {
                        if !m.get(r, j).is_zero() {
                            let v = m.get(i, j) - &(&f * m.get(r, j));
                            m.set(i, j, v);
                        }
                    }
                }
            }
            pivots.push(c);
            r += 1;
            if r == m.rows {
                break;
            }
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{v : M v = 0}`.
    pub fn kernel(&self) -> Vec<Vec<RatFunc>> {
        let (red, pivots) = self.rref();
        (0..self.cols)
            .filter(|c| !pivots.contains(c))
            .map(|f| {
                let mut v = vec![RatFunc::zero(); self.cols];
                v[f] = RatFunc::one();
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = -red.get(i, f);
                }
                v
            })
            .collect()
    }

    /// Matrix with the given vectors as columns.
    pub fn from_columns(cols: &[Vec<RatFunc>], nrows: usize) -> Matrix {
        let mut m = Matrix::zeros(nrows, cols.len());
        for (c, v) in cols.iter().enumerate() {
            for (r, x) in v.iter().enumerate() {
                m.set(r, c, x.clone());
            }
        }
        m
    }
}

impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        out.add_to(i, j, &(a * b));
                    }
                }
            }
        }
        out
    }
}

impl Add for &Matrix {
    type Output = Matrix;
    fn add(self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect() }
    }
}

impl Sub for &Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect() }
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for r in 0..self.rows {
            let cells: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}
