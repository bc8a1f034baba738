//! Vector arrangements `χ: A → Z^r`, their cocircuits, minors, and the
//! interior lattice points of the zonotope.

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::linalg::{column_hnf, integer_kernel, IntMatrix};

/// Brute-force total unimodularity is only attempted up to this lattice rank.
pub const TU_MAX_RANK: usize = 6;
/// ... and up to this many ground-set elements.
pub const TU_MAX_ELEMENTS: usize = 12;
/// Largest integer box scanned when enumerating interior points.
pub const POINT_BOX_LIMIT: u128 = 5_000_000;

/// A labeled family of integer vectors spanning `Q^r`, stored as the columns
/// of an `r x |A|` matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorArrangement {
    labels: Vec<String>,
    columns: IntMatrix,
    unimodular: bool,
}

impl VectorArrangement {
    pub fn new(rank: usize, labels: Vec<String>, columns: IntMatrix) -> Result<Self> {
        if columns.rows() != rank {
            return Err(Error::DimensionMismatch {
                expected: rank,
                actual: columns.rows(),
            });
        }
        if columns.cols() != labels.len() {
            return Err(Error::DimensionMismatch {
                expected: labels.len(),
                actual: columns.cols(),
            });
        }
        let mut seen = BTreeSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(Error::InvalidArrangement(format!("duplicate label {l}")));
            }
        }
        let rk = columns.rank();
        if rk != rank {
            return Err(Error::InvalidArrangement(format!(
                "columns span a rank-{rk} subspace of Q^{rank}"
            )));
        }
        Ok(VectorArrangement {
            labels,
            columns,
            unimodular: false,
        })
    }

    /// Arrangement with labels `1..=n` from integer columns.
    pub fn from_columns(rank: usize, cols: &[Vec<i64>]) -> Result<Self> {
        let labels = (1..=cols.len()).map(|i| i.to_string()).collect();
        let columns = IntMatrix::from_columns(
            rank,
            &cols
                .iter()
                .map(|c| c.iter().map(|&x| BigInt::from(x)).collect())
                .collect::<Vec<_>>(),
        );
        VectorArrangement::new(rank, labels, columns)
    }

    /// Marks the arrangement as known to be totally unimodular.
    pub fn assume_unimodular(mut self) -> Self {
        self.unimodular = true;
        self
    }

    pub fn is_flagged_unimodular(&self) -> bool {
        self.unimodular
    }

    pub fn rank(&self) -> usize {
        self.columns.rows()
    }

    pub fn len(&self) -> usize {
        self.columns.cols()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn columns(&self) -> &IntMatrix {
        &self.columns
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        self.columns.column(j)
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    /// Rewrites the arrangement in another basis of the lattice: columns
    /// become `basis_change * χ(a)`. The matrix must be unimodular.
    pub fn change_basis(&self, basis_change: &IntMatrix) -> Result<Self> {
        let r = self.rank();
        if basis_change.rows() != r || basis_change.cols() != r {
            return Err(Error::DimensionMismatch {
                expected: r,
                actual: basis_change.rows(),
            });
        }
        if !basis_change.determinant().abs().is_one() {
            return Err(Error::InvalidArrangement("basis change is not unimodular".into()));
        }
        Ok(VectorArrangement {
            labels: self.labels.clone(),
            columns: basis_change.mul(&self.columns),
            unimodular: self.unimodular,
        })
    }

    /// Reorders the ground set: position `i` of the result holds old element `order[i]`.
    pub fn permute(&self, order: &[usize]) -> Self {
        VectorArrangement {
            labels: order.iter().map(|&i| self.labels[i].clone()).collect(),
            columns: self.columns.select_columns(order),
            unimodular: self.unimodular,
        }
    }

    pub fn is_loop(&self, j: usize) -> bool {
        self.column(j).iter().all(Zero::is_zero)
    }

    pub fn is_coloop(&self, j: usize) -> bool {
        let rest: Vec<usize> = (0..self.len()).filter(|&k| k != j).collect();
        self.columns.select_columns(&rest).rank() < self.rank()
    }
}

/// A square submatrix whose determinant lies outside `{-1, 0, 1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnimodularityViolation {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    pub determinant: BigInt,
}

fn small_det(mut a: Vec<i64>, n: usize) -> i64 {
    let mut prev = 1i64;
    let mut sign = 1i64;
    for k in 0..n {
        if a[k * n + k] == 0 {
            match (k + 1..n).find(|&r| a[r * n + k] != 0) {
                Some(r) => {
                    for j in 0..n {
                        a.swap(k * n + j, r * n + j);
                    }
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i * n + j] = (a[i * n + j] * a[k * n + k] - a[i * n + k] * a[k * n + j]) / prev;
            }
            a[i * n + k] = 0;
        }
        prev = a[k * n + k];
    }
    sign * a[n * n - 1]
}

/// Searches every square submatrix for a determinant outside `{-1, 0, 1}`.
pub fn find_unimodularity_violation(va: &VectorArrangement) -> Result<Option<UnimodularityViolation>> {
    let (r, n) = (va.rank(), va.len());
    if r > TU_MAX_RANK {
        return Err(Error::size("lattice rank for unimodularity check", TU_MAX_RANK, r));
    }
    if n > TU_MAX_ELEMENTS {
        return Err(Error::size("ground set size for unimodularity check", TU_MAX_ELEMENTS, n));
    }
    let m = va.columns();
    for i in 0..r {
        for j in 0..n {
            if m.get(i, j).abs() > BigInt::one() {
                return Ok(Some(UnimodularityViolation {
                    rows: vec![i],
                    cols: vec![j],
                    determinant: m.get(i, j).clone(),
                }));
            }
        }
    }
    // entries are now in {-1, 0, 1}, so minors of size <= 6 fit comfortably in i64
    let small: Vec<i64> = m.entries().iter().map(|x| x.to_i64().unwrap()).collect();
    for k in 2..=r.min(n) {
        for rows in (0..r).combinations(k) {
            for cols in (0..n).combinations(k) {
                let sub: Vec<i64> = rows
                    .iter()
                    .flat_map(|&i| cols.iter().map(move |&j| (i, j)))
                    .map(|(i, j)| small[i * n + j])
                    .collect();
                let d = small_det(sub, k);
                if d.abs() > 1 {
                    return Ok(Some(UnimodularityViolation {
                        rows,
                        cols,
                        determinant: BigInt::from(d),
                    }));
                }
            }
        }
    }
    Ok(None)
}

pub fn is_totally_unimodular(va: &VectorArrangement) -> Result<bool> {
    Ok(find_unimodularity_violation(va)?.is_none())
}

/// Returns a copy flagged as totally unimodular, running the subdeterminant
/// search unless the flag is already set.
pub fn ensure_totally_unimodular(va: &VectorArrangement) -> Result<VectorArrangement> {
    if va.unimodular {
        return Ok(va.clone());
    }
    match find_unimodularity_violation(va)? {
        None => Ok(va.clone().assume_unimodular()),
        Some(v) => {
            let cols: Vec<&str> = v.cols.iter().map(|&j| va.labels[j].as_str()).collect();
            Err(Error::NotTotallyUnimodular(format!(
                "minor on rows {:?} and columns {:?} has determinant {}",
                v.rows, cols, v.determinant
            )))
        }
    }
}

/// Indices of loops (zero columns) and coloops (columns whose removal drops the rank).
pub fn loops_and_coloops(va: &VectorArrangement) -> (Vec<usize>, Vec<usize>) {
    let loops = (0..va.len()).filter(|&j| va.is_loop(j)).collect();
    let coloops = (0..va.len()).filter(|&j| va.is_coloop(j)).collect();
    (loops, coloops)
}

/// Removes element `label`, keeping the lattice.
pub fn deletion(va: &VectorArrangement, label: &str) -> Result<VectorArrangement> {
    let j = va.index_of(label)?;
    if va.is_coloop(j) {
        return Err(Error::IsColoop(label.to_string()));
    }
    let keep: Vec<usize> = (0..va.len()).filter(|&k| k != j).collect();
    Ok(VectorArrangement {
        labels: keep.iter().map(|&k| va.labels[k].clone()).collect(),
        columns: va.columns.select_columns(&keep),
        unimodular: va.unimodular,
    })
}

/// Contraction together with the quotient map `Z^r → Z^r / Zχ(a) ≅ Z^{r-1}`.
#[derive(Clone, Debug)]
pub struct Contraction {
    pub arrangement: VectorArrangement,
    /// `(r-1) x r` integer matrix realizing `z ↦ z̄`.
    pub quotient: IntMatrix,
}

/// Unimodular `U` with `U v = e_1`, for a primitive vector `v`.
fn completion_to_basis(v: &[BigInt]) -> Option<IntMatrix> {
    let r = v.len();
    let row = IntMatrix::from_rows(r, &[v.to_vec()]);
    let hnf = column_hnf(&row);
    // v^T W = (g, 0, ..., 0), so W^T v = g e_1
    if hnf.rank() != 1 || !hnf.basis().get(0, 0).is_one() {
        return None;
    }
    Some(hnf.transform().transpose())
}

pub fn contraction_with_map(va: &VectorArrangement, label: &str) -> Result<Contraction> {
    let j = va.index_of(label)?;
    if va.is_loop(j) {
        return Err(Error::IsLoop(label.to_string()));
    }
    let r = va.rank();
    let u = completion_to_basis(&va.column(j)).ok_or_else(|| {
        Error::NotTotallyUnimodular(format!("column {label} is not primitive"))
    })?;
    let quotient = u.select_rows(&(1..r).collect::<Vec<_>>());
    let keep: Vec<usize> = (0..va.len()).filter(|&k| k != j).collect();
    let columns = quotient.mul(&va.columns.select_columns(&keep));
    Ok(Contraction {
        arrangement: VectorArrangement {
            labels: keep.iter().map(|&k| va.labels[k].clone()).collect(),
            columns,
            unimodular: va.unimodular,
        },
        quotient,
    })
}

/// Arrangement induced in `Λ / Zχ(a)`.
pub fn contraction(va: &VectorArrangement, label: &str) -> Result<VectorArrangement> {
    contraction_with_map(va, label).map(|c| c.arrangement)
}

/// A primitive covector of minimal support, canonically signed so that its
/// first nonzero coordinate is positive.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Cocircuit {
    pub covector: Vec<BigInt>,
    /// `⟨α, χ(a)⟩` for every element, in ground-set order.
    pub values: Vec<i8>,
    pub d_plus: usize,
    pub d_minus: usize,
}

impl Cocircuit {
    pub fn degree(&self) -> usize {
        self.d_plus + self.d_minus
    }

    pub fn support(&self) -> Vec<usize> {
        self.values
            .iter()
            .enumerate()
            .filter(|(_, &v)| v != 0)
            .map(|(i, _)| i)
            .collect()
    }

    /// The covector `-α`, with `d_±` swapped.
    pub fn opposite(&self) -> Cocircuit {
        Cocircuit {
            covector: self.covector.iter().map(|x| -x).collect(),
            values: self.values.iter().map(|v| -v).collect(),
            d_plus: self.d_minus,
            d_minus: self.d_plus,
        }
    }

    pub fn pair(&self, z: &[i64]) -> BigInt {
        self.covector.iter().zip(z).map(|(a, &b)| a * b).sum()
    }
}

fn canonical_sign(v: &mut [BigInt]) {
    if let Some(first) = v.iter().find(|x| !x.is_zero()) {
        if first.is_negative() {
            for x in v.iter_mut() {
                *x = -std::mem::take(x);
            }
        }
    }
}

/// All cocircuits up to sign, in lexicographic order of their canonical covectors.
///
/// Every rank-(r-1) subfamily spans a hyperplane; its primitive normal is a
/// cocircuit. Runs over all (r-1)-subsets, so the cost is `C(|A|, r-1)`.
pub fn enumerate_cocircuits(va: &VectorArrangement) -> Result<Vec<Cocircuit>> {
    let (r, n) = (va.rank(), va.len());
    if r == 0 {
        return Ok(Vec::new());
    }
    let mut normals: BTreeSet<Vec<BigInt>> = BTreeSet::new();
    for subset in (0..n).combinations(r - 1) {
        let b = va.columns.select_columns(&subset);
        let ker = integer_kernel(&b.transpose());
        if ker.cols() != 1 {
            continue;
        }
        let mut alpha = ker.column(0);
        canonical_sign(&mut alpha);
        normals.insert(alpha);
    }
    let mut out = Vec::with_capacity(normals.len());
    for alpha in normals {
        let mut values = Vec::with_capacity(n);
        let (mut d_plus, mut d_minus) = (0, 0);
        for j in 0..n {
            let v: BigInt = va.column(j).iter().zip(&alpha).map(|(a, b)| a * b).sum();
            let v = match v.to_i8() {
                Some(x @ -1..=1) => x,
                _ => {
                    return Err(Error::NotTotallyUnimodular(format!(
                        "cocircuit {alpha:?} takes value {v} on element {}",
                        va.labels[j]
                    )))
                }
            };
            match v {
                1 => d_plus += 1,
                -1 => d_minus += 1,
                _ => {}
            }
            values.push(v);
        }
        out.push(Cocircuit {
            covector: alpha,
            values,
            d_plus,
            d_minus,
        });
    }
    Ok(out)
}

/// Finite set of integer points in `Z^dim`, kept in lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LatticePointSet {
    dim: usize,
    points: Vec<Vec<i64>>,
}

impl LatticePointSet {
    pub fn new(dim: usize, mut points: Vec<Vec<i64>>) -> Self {
        assert!(points.iter().all(|p| p.len() == dim), "point of wrong dimension");
        points.sort();
        points.dedup();
        LatticePointSet { dim, points }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Vec<i64>] {
        &self.points
    }

    pub fn index_of(&self, z: &[i64]) -> Option<usize> {
        self.points.binary_search_by(|p| p.as_slice().cmp(z)).ok()
    }

    pub fn contains(&self, z: &[i64]) -> bool {
        self.index_of(z).is_some()
    }
}

/// Lattice points strictly inside the zonotope: `-d₋(α) < ⟨α, z⟩ < d₊(α)`
/// for every cocircuit `α`.
pub fn interior_lattice_points(va: &VectorArrangement) -> Result<LatticePointSet> {
    let r = va.rank();
    if r == 0 {
        return Ok(LatticePointSet::new(0, vec![vec![]]));
    }
    let cocircuits = enumerate_cocircuits(va)?;
    if cocircuits.iter().any(|c| c.degree() == 1) {
        // a coloop: some pair of facets is one unit apart
        return Ok(LatticePointSet::new(r, Vec::new()));
    }
    let mut lo = Vec::with_capacity(r);
    let mut hi = Vec::with_capacity(r);
    let mut volume: u128 = 1;
    for i in 0..r {
        let (mut neg, mut pos) = (BigInt::zero(), BigInt::zero());
        for x in va.columns.row(i) {
            if x.is_negative() {
                neg += x;
            } else {
                pos += x;
            }
        }
        // interior points lie strictly inside the bounding box
        let l = (neg + BigInt::one()).to_i64();
        let h = (pos - BigInt::one()).to_i64();
        let (Some(l), Some(h)) = (l, h) else {
            return Err(Error::size("bounding box side", POINT_BOX_LIMIT as usize, usize::MAX));
        };
        if h < l {
            return Ok(LatticePointSet::new(r, Vec::new()));
        }
        volume = volume.saturating_mul((h - l + 1) as u128);
        if volume > POINT_BOX_LIMIT {
            return Err(Error::size(
                "bounding box volume",
                POINT_BOX_LIMIT as usize,
                volume.min(usize::MAX as u128) as usize,
            ));
        }
        lo.push(l);
        hi.push(h);
    }
    let bounds: Vec<(Vec<i64>, i64, i64)> = cocircuits
        .iter()
        .map(|c| {
            let a = c.covector.iter().map(|x| x.to_i64().unwrap()).collect();
            (a, -(c.d_minus as i64), c.d_plus as i64)
        })
        .collect();
    let mut points = Vec::new();
    let mut z = lo.clone();
    'scan: loop {
        let inside = bounds.iter().all(|(a, l, h)| {
            let v: i64 = a.iter().zip(&z).map(|(x, y)| x * y).sum();
            *l < v && v < *h
        });
        if inside {
            points.push(z.clone());
        }
        for i in (0..r).rev() {
            if z[i] < hi[i] {
                z[i] += 1;
                continue 'scan;
            }
            z[i] = lo[i];
        }
        break;
    }
    Ok(LatticePointSet::new(r, points))
}

/// How the interior points of `χ` split between the deletion and the contraction
/// at one element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointPartition {
    pub total: usize,
    pub deletion: usize,
    pub contraction: usize,
    /// `Z₋(χ') ⊆ Z₋(χ)`.
    pub inclusion: bool,
    /// `z ↦ z̄` maps `Z₋(χ) \ Z₋(χ')` bijectively onto `Z₋(χ'')`.
    pub bijection: bool,
}

impl PointPartition {
    pub fn holds(&self) -> bool {
        self.inclusion && self.bijection && self.total == self.deletion + self.contraction
    }
}

pub fn partition_points(va: &VectorArrangement, label: &str) -> Result<PointPartition> {
    let j = va.index_of(label)?;
    if va.is_loop(j) || va.is_coloop(j) {
        return Err(Error::LoopOrColoop(label.to_string()));
    }
    let full = interior_lattice_points(va)?;
    let del = interior_lattice_points(&deletion(va, label)?)?;
    let con = contraction_with_map(va, label)?;
    let con_pts = interior_lattice_points(&con.arrangement)?;
    let inclusion = del.points().iter().all(|z| full.contains(z));
    let mut image: BTreeMap<Vec<i64>, usize> = BTreeMap::new();
    for z in full.points().iter().filter(|z| !del.contains(z)) {
        *image.entry(project(&con.quotient, z)).or_default() += 1;
    }
    let bijection = image.len() == con_pts.len()
        && image.values().all(|&c| c == 1)
        && image.keys().all(|z| con_pts.contains(z));
    Ok(PointPartition {
        total: full.len(),
        deletion: del.len(),
        contraction: con_pts.len(),
        inclusion,
        bijection,
    })
}

/// Applies an integer matrix to a point.
pub fn project(map: &IntMatrix, z: &[i64]) -> Vec<i64> {
    (0..map.rows())
        .map(|i| {
            map.row(i)
                .iter()
                .zip(z)
                .map(|(a, &b)| a.to_i64().expect("quotient entry fits in i64") * b)
                .sum()
        })
        .collect()
}
