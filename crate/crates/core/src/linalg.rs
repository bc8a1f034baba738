//! Exact integer and rational linear algebra.
//!
//! Everything here works on arbitrary-precision integers. Ranks use
//! fraction-free (Bareiss) elimination; lattices are compared through their
//! column-style Hermite normal form; saturation indices come from the Smith
//! invariants of an HNF basis.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Largest row or column count accepted by [`smith_invariants`].
pub const SMITH_MAX_DIM: usize = 64;

/// Dense row-major matrix of arbitrary-precision integers.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count must be rows * cols");
        IntMatrix {
            rows,
            cols,
            entries,
        }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix::new(rows, cols, vec![BigInt::zero(); rows * cols])
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_i64(rows: usize, cols: usize, entries: &[i64]) -> Self {
        IntMatrix::new(rows, cols, entries.iter().map(|&x| BigInt::from(x)).collect())
    }

    /// Builds a matrix from row vectors; `cols` is needed when there are no rows.
    pub fn from_rows(cols: usize, rows: &[Vec<BigInt>]) -> Self {
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged rows");
            entries.extend(r.iter().cloned());
        }
        IntMatrix::new(rows.len(), cols, entries)
    }

    /// Builds a matrix whose columns are the given vectors of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<BigInt>]) -> Self {
        let cols = columns.len();
        let mut m = IntMatrix::zeros(rows, cols);
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "ragged columns");
            for (i, v) in c.iter().enumerate() {
                m.entries[i * cols + j] = v.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<BigInt>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.entries[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "inner dimensions differ");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.entries[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len(), "vector length differs from column count");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }

    pub fn select_columns(&self, idx: &[usize]) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.rows, idx.len());
        for i in 0..self.rows {
            for (jj, &j) in idx.iter().enumerate() {
                m.entries[i * idx.len() + jj] = self.get(i, j).clone();
            }
        }
        m
    }

    pub fn select_rows(&self, idx: &[usize]) -> IntMatrix {
        let mut entries = Vec::with_capacity(idx.len() * self.cols);
        for &i in idx {
            entries.extend(self.row(i).iter().cloned());
        }
        IntMatrix::new(idx.len(), self.cols, entries)
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hcat(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.rows, other.rows, "row counts differ");
        let cols = self.cols + other.cols;
        let mut entries = Vec::with_capacity(self.rows * cols);
        for i in 0..self.rows {
            entries.extend(self.row(i).iter().cloned());
            entries.extend(other.row(i).iter().cloned());
        }
        IntMatrix::new(self.rows, cols, entries)
    }

    pub fn to_rat(&self) -> RatMatrix {
        RatMatrix::new(
            self.rows,
            self.cols,
            self.entries.iter().cloned().map(BigRational::from_integer).collect(),
        )
    }

    /// Rank over the rationals, by fraction-free elimination.
    pub fn rank(&self) -> usize {
        bareiss_rank(self.rows, self.cols, self.entries.clone())
    }

    /// Determinant of a square matrix (Bareiss).
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.entries.clone();
        let mut prev = BigInt::one();
        let mut sign = BigInt::one();
        for k in 0..n {
            if a[k * n + k].is_zero() {
                match (k + 1..n).find(|&r| !a[r * n + k].is_zero()) {
                    Some(r) => {
                        for j in 0..n {
                            a.swap(k * n + j, r * n + j);
                        }
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&a[i * n + j] * &a[k * n + k] - &a[i * n + k] * &a[k * n + j]) / &prev;
                    a[i * n + j] = v;
                }
                a[i * n + k] = BigInt::zero();
            }
            prev = a[k * n + k].clone();
        }
        sign * &a[n * n - 1]
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.entries.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// `col[target] -= q * col[source]`
    fn sub_col_multiple(&mut self, target: usize, source: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let s = &self.entries[i * self.cols + source];
            if s.is_zero() {
                continue;
            }
            let d = q * s;
            self.entries[i * self.cols + target] -= d;
        }
    }

    fn negate_col(&mut self, j: usize) {
        for i in 0..self.rows {
            let v = &mut self.entries[i * self.cols + j];
            *v = -std::mem::take(v);
        }
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

fn bareiss_rank(rows: usize, cols: usize, mut a: Vec<BigInt>) -> usize {
    let mut prev = BigInt::one();
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&r| !a[r * cols + col].is_zero()) else {
            continue;
        };
        if p != rank {
            for j in 0..cols {
                a.swap(p * cols + j, rank * cols + j);
            }
        }
        for i in rank + 1..rows {
            for j in col + 1..cols {
                let v = (&a[i * cols + j] * &a[rank * cols + col] - &a[i * cols + col] * &a[rank * cols + j])
                    / &prev;
                a[i * cols + j] = v;
            }
            a[i * cols + col] = BigInt::zero();
        }
        prev = a[rank * cols + col].clone();
        rank += 1;
    }
    rank
}

/// Dense row-major matrix of exact rationals. `BigRational` keeps every entry
/// reduced with a positive denominator.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigRational>,
}

impl RatMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigRational>) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count must be rows * cols");
        RatMatrix {
            rows,
            cols,
            entries,
        }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix::new(rows, cols, vec![BigRational::zero(); rows * cols])
    }

    pub fn identity(n: usize) -> Self {
        IntMatrix::identity(n).to_rat()
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.entries[i * self.cols + j]
    }

    pub fn column(&self, j: usize) -> Vec<BigRational> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> RatMatrix {
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                entries.push(self.get(i, j).clone());
            }
        }
        RatMatrix::new(self.cols, self.rows, entries)
    }

    pub fn mul_vec(&self, v: &[BigRational]) -> Vec<BigRational> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| self.get(i, j) * &v[j])
                    .fold(BigRational::zero(), |acc, x| acc + x)
            })
            .collect()
    }

    /// Scales every row by the lcm of its denominators.
    fn clear_denominators(&self) -> IntMatrix {
        let mut entries = Vec::with_capacity(self.entries.len());
        for i in 0..self.rows {
            let row = &self.entries[i * self.cols..(i + 1) * self.cols];
            let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            entries.extend(row.iter().map(|x| x.numer() * (&l / x.denom())));
        }
        IntMatrix::new(self.rows, self.cols, entries)
    }
}

/// Rank over the rationals.
pub fn rank(m: &RatMatrix) -> usize {
    m.clear_denominators().rank()
}

/// Basis of the right kernel, one vector per column. The result has
/// `m.cols()` rows and `m.cols() - rank(m)` columns.
pub fn kernel_basis(m: &RatMatrix) -> RatMatrix {
    let (rows, cols) = (m.rows, m.cols);
    let mut a = m.entries.clone();
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i * cols + c].is_zero()) else {
            continue;
        };
        for j in 0..cols {
            a.swap(p * cols + j, r * cols + j);
        }
        let inv = a[r * cols + c].recip();
        for j in 0..cols {
            a[r * cols + j] = &a[r * cols + j] * &inv;
        }
        for i in 0..rows {
            if i == r || a[i * cols + c].is_zero() {
                continue;
            }
            let f = a[i * cols + c].clone();
            for j in 0..cols {
                let d = &f * &a[r * cols + j];
                a[i * cols + j] -= d;
            }
        }
        pivot_cols.push(c);
        r += 1;
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivot_cols.contains(c)).collect();
    let mut out = RatMatrix::zeros(cols, free.len());
    for (k, &f) in free.iter().enumerate() {
        out.entries[f * free.len() + k] = BigRational::one();
        for (pr, &pc) in pivot_cols.iter().enumerate() {
            out.entries[pc * free.len() + k] = -a[pr * cols + f].clone();
        }
    }
    out
}

/// Column-style Hermite normal form together with the unimodular transform
/// that produced it (`m * transform = [basis | 0]`).
#[derive(Clone, Debug)]
pub struct ColumnHnf {
    basis: IntMatrix,
    pivots: Vec<usize>,
    transform: IntMatrix,
}

impl ColumnHnf {
    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    /// Row index of the pivot of each basis column.
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn transform(&self) -> &IntMatrix {
        &self.transform
    }

    /// Integer coordinates of `v` in the HNF basis, if `v` lies in the lattice.
    pub fn solve(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        assert_eq!(v.len(), self.basis.rows());
        let mut y: Vec<BigInt> = Vec::with_capacity(self.rank());
        for (j, &p) in self.pivots.iter().enumerate() {
            let mut acc = v[p].clone();
            for (l, yl) in y.iter().enumerate() {
                acc -= self.basis.get(p, l) * yl;
            }
            let (q, r) = acc.div_rem(self.basis.get(p, j));
            if !r.is_zero() {
                return None;
            }
            y.push(q);
        }
        if self.basis.mul_vec(&y).as_slice() == v {
            Some(y)
        } else {
            None
        }
    }

    /// Integer coefficients of `v` with respect to the original generators.
    pub fn preimage(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        let y = self.solve(v)?;
        let k = self.rank();
        let n = self.transform.rows();
        Some(
            (0..n)
                .map(|i| (0..k).map(|j| self.transform.get(i, j) * &y[j]).sum())
                .collect(),
        )
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        self.solve(v).is_some()
    }

    /// Z-basis of the integer kernel of the original matrix, as columns.
    pub fn kernel(&self) -> IntMatrix {
        let k = self.rank();
        let idx: Vec<usize> = (k..self.transform.cols()).collect();
        self.transform.select_columns(&idx)
    }
}

/// Column Hermite normal form of the lattice spanned by the columns of `m`.
///
/// Basis columns are in echelon form: column `j` vanishes above its pivot row,
/// the pivot is positive, and entries to its left in the pivot row lie in
/// `[0, pivot)`.
pub fn column_hnf(m: &IntMatrix) -> ColumnHnf {
    hnf_impl(m, true)
}

/// Hermite basis and pivot rows of the column lattice of `m`, without
/// tracking the transform.
pub fn lattice_basis(m: &IntMatrix) -> (IntMatrix, Vec<usize>) {
    let hnf = hnf_impl(m, false);
    (hnf.basis, hnf.pivots)
}

fn hnf_impl(m: &IntMatrix, track: bool) -> ColumnHnf {
    let mut h = m.clone();
    // a transform with no rows makes every column operation on it a no-op
    let mut u = if track {
        IntMatrix::identity(m.cols())
    } else {
        IntMatrix::zeros(0, m.cols())
    };
    let mut pivots = Vec::new();
    let mut k = 0;
    for i in 0..m.rows() {
        if k == m.cols() {
            break;
        }
        loop {
            // smallest nonzero entry of row i among columns k..
            let best = (k..h.cols)
                .filter(|&j| !h.get(i, j).is_zero())
                .min_by(|&a, &b| h.get(i, a).abs().cmp(&h.get(i, b).abs()));
            let Some(j) = best else { break };
            h.swap_cols(k, j);
            u.swap_cols(k, j);
            let mut done = true;
            for j in k + 1..h.cols {
                if h.get(i, j).is_zero() {
                    continue;
                }
                let q = h.get(i, j).div_floor(h.get(i, k));
                h.sub_col_multiple(j, k, &q);
                u.sub_col_multiple(j, k, &q);
                if !h.get(i, j).is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h.get(i, k).is_zero() {
            continue;
        }
        if h.get(i, k).is_negative() {
            h.negate_col(k);
            u.negate_col(k);
        }
        for l in 0..k {
            let q = h.get(i, l).div_floor(h.get(i, k));
            h.sub_col_multiple(l, k, &q);
            u.sub_col_multiple(l, k, &q);
        }
        pivots.push(i);
        k += 1;
    }
    let idx: Vec<usize> = (0..k).collect();
    ColumnHnf {
        basis: h.select_columns(&idx),
        pivots,
        transform: u,
    }
}

/// Z-basis (as columns) of `{x in Z^cols : m x = 0}`.
pub fn integer_kernel(m: &IntMatrix) -> IntMatrix {
    column_hnf(m).kernel()
}

/// Z-basis of the saturation `span_Q(columns) ∩ Z^rows`, in Hermite form.
pub fn saturate(m: &IntMatrix) -> IntMatrix {
    let annihilator = integer_kernel(&m.transpose());
    let sat = integer_kernel(&annihilator.transpose());
    lattice_basis(&sat).0
}

/// Hermite form of a column lattice plus its Smith elementary divisors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HermiteForm {
    pub basis: IntMatrix,
    pub pivots: Vec<usize>,
    pub elementary_divisors: Vec<BigInt>,
}

impl HermiteForm {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

pub fn hermite_normal_form(m: &IntMatrix) -> Result<HermiteForm> {
    let (basis, pivots) = lattice_basis(m);
    let elementary_divisors = smith_invariants(&basis)?;
    Ok(HermiteForm {
        basis,
        pivots,
        elementary_divisors,
    })
}

/// Nonzero Smith invariants `d_1 | d_2 | ...` of `m`, all positive.
#[allow(clippy::needless_range_loop)]
pub fn smith_invariants(m: &IntMatrix) -> Result<Vec<BigInt>> {
    let dim = m.rows().max(m.cols());
    if dim > SMITH_MAX_DIM {
        return Err(Error::size("Smith form matrix dimension", SMITH_MAX_DIM, dim));
    }
    let (rows, cols) = (m.rows(), m.cols());
    let mut a: Vec<Vec<BigInt>> = (0..rows).map(|i| m.row(i).to_vec()).collect();
    let mut out = Vec::new();
    for t in 0..rows.min(cols) {
        // bring the smallest nonzero entry of the trailing block to (t, t)
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if a[i][j].is_zero() {
                    continue;
                }
                if best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        a.swap(t, bi);
        for row in a.iter_mut() {
            row.swap(t, bj);
        }
        loop {
            let mut clean = true;
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                for j in t..cols {
                    let d = &q * &a[t][j];
                    a[i][j] -= d;
                }
                clean &= a[i][t].is_zero();
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                for row in a.iter_mut().skip(t) {
                    let d = &q * &row[t];
                    row[j] -= d;
                }
                clean &= a[t][j].is_zero();
            }
            if !clean {
                // a remainder smaller than the pivot survived; make it the pivot
                let mut best = (t, t);
                for i in t + 1..rows {
                    if !a[i][t].is_zero() && a[i][t].abs() < a[best.0][best.1].abs() {
                        best = (i, t);
                    }
                }
                for j in t + 1..cols {
                    if !a[t][j].is_zero() && a[t][j].abs() < a[best.0][best.1].abs() {
                        best = (t, j);
                    }
                }
                if best.0 != t {
                    a.swap(t, best.0);
                } else if best.1 != t {
                    for row in a.iter_mut() {
                        row.swap(t, best.1);
                    }
                }
                continue;
            }
            // the pivot must divide the whole trailing block
            let offender = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !(&a[i][j] % &a[t][t]).is_zero()));
            match offender {
                Some(i) => {
                    for j in t..cols {
                        let v = a[i][j].clone();
                        a[t][j] += v;
                    }
                }
                None => break,
            }
        }
        out.push(a[t][t].abs());
    }
    Ok(out)
}

/// Index of the lattice spanned by the columns of `sublattice` inside its
/// saturation in `Z^ambient_rank`; equals 1 exactly when it is saturated.
pub fn saturation_index(sublattice: &IntMatrix, ambient_rank: usize) -> Result<BigInt> {
    if sublattice.rows() != ambient_rank {
        return Err(Error::DimensionMismatch {
            expected: ambient_rank,
            actual: sublattice.rows(),
        });
    }
    Ok(smith_invariants(&lattice_basis(sublattice).0)?.into_iter().product())
}
