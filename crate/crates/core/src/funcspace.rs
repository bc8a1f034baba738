//! Polynomial and integer-valued polynomial functions on `Z^r`, and their
//! evaluation on finite point sets.
//!
//! Bases are listed in graded-lexicographic order: by total degree, then
//! lexicographically with `x_1 > x_2 > ... > x_r`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::arrangement::LatticePointSet;
use crate::error::{Error, Result};
use crate::linalg::{column_hnf, IntMatrix};

/// Exponent vectors of total degree exactly `d`, lexicographically decreasing.
fn exponents_of_degree(r: usize, d: u32) -> Vec<Vec<u32>> {
    if r == 0 {
        return if d == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in (0..=d).rev() {
        for rest in exponents_of_degree(r - 1, d - first) {
            let mut e = Vec::with_capacity(r);
            e.push(first);
            e.extend(rest);
            out.push(e);
        }
    }
    out
}

fn exponents_up_to(r: usize, d: u32) -> Vec<Vec<u32>> {
    (0..=d).flat_map(|k| exponents_of_degree(r, k)).collect()
}

/// `x_1^{e_1} ... x_r^{e_r}`
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    pub exponents: Vec<u32>,
}

impl Monomial {
    pub fn degree(&self) -> u32 {
        self.exponents.iter().sum()
    }

    pub fn eval(&self, z: &[i64]) -> BigInt {
        self.exponents
            .iter()
            .zip(z)
            .map(|(&e, &x)| num_traits::pow(BigInt::from(x), e as usize))
            .product()
    }

    pub fn to_polynomial(&self) -> Polynomial {
        let mut p = Polynomial::zero(self.exponents.len());
        p.terms.insert(self.exponents.clone(), BigRational::one());
        p
    }
}

/// `binom(x_1, i_1) ... binom(x_r, i_r)`
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BinomialProduct {
    pub indices: Vec<u32>,
}

impl BinomialProduct {
    pub fn degree(&self) -> u32 {
        self.indices.iter().sum()
    }

    pub fn eval(&self, z: &[i64]) -> BigInt {
        self.indices
            .iter()
            .zip(z)
            .map(|(&i, &x)| binomial(&BigInt::from(x), i))
            .product()
    }

    pub fn to_polynomial(&self) -> Polynomial {
        let r = self.indices.len();
        let mut p = Polynomial::one(r);
        for (j, &i) in self.indices.iter().enumerate() {
            p = p.mul(&Polynomial::variable(r, j).binomial(i));
        }
        p
    }
}

pub fn monomials_of_degree(r: usize, d: u32) -> Vec<Monomial> {
    exponents_of_degree(r, d).into_iter().map(|exponents| Monomial { exponents }).collect()
}

pub fn monomials_up_to(r: usize, d: u32) -> Vec<Monomial> {
    exponents_up_to(r, d).into_iter().map(|exponents| Monomial { exponents }).collect()
}

pub fn binomial_products_of_degree(r: usize, d: u32) -> Vec<BinomialProduct> {
    exponents_of_degree(r, d).into_iter().map(|indices| BinomialProduct { indices }).collect()
}

pub fn binomial_products_up_to(r: usize, d: u32) -> Vec<BinomialProduct> {
    exponents_up_to(r, d).into_iter().map(|indices| BinomialProduct { indices }).collect()
}

/// `n (n-1) ... (n-k+1) / k!` for any integer `n`, including negative ones.
pub fn binomial(n: &BigInt, k: u32) -> BigInt {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k {
        num *= n - BigInt::from(i);
        den *= BigInt::from(i + 1);
    }
    num / den
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n).map(BigInt::from).product()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FunctionBasis {
    Monomials(Vec<Monomial>),
    Binomials(Vec<BinomialProduct>),
}

impl FunctionBasis {
    pub fn len(&self) -> usize {
        match self {
            FunctionBasis::Monomials(v) => v.len(),
            FunctionBasis::Binomials(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn degrees(&self) -> Vec<u32> {
        match self {
            FunctionBasis::Monomials(v) => v.iter().map(Monomial::degree).collect(),
            FunctionBasis::Binomials(v) => v.iter().map(BinomialProduct::degree).collect(),
        }
    }
}

/// Exact values of a list of functions on a point set: rows are functions,
/// columns are points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvaluationMatrix {
    pub basis: FunctionBasis,
    pub points: LatticePointSet,
    pub values: IntMatrix,
}

pub fn evaluate(basis: &FunctionBasis, points: &LatticePointSet) -> Result<EvaluationMatrix> {
    if points.is_empty() {
        return Err(Error::EmptyPointSet);
    }
    let n = points.len();
    let mut entries = Vec::with_capacity(basis.len() * n);
    match basis {
        FunctionBasis::Monomials(ms) => {
            let max = ms.iter().flat_map(|m| m.exponents.iter().copied()).max().unwrap_or(0);
            let table = per_coordinate_table(points, max, |x, e| num_traits::pow(BigInt::from(x), e as usize));
            for m in ms {
                for row in &table {
                    entries.push(table_product(row, &m.exponents));
                }
            }
        }
        FunctionBasis::Binomials(bs) => {
            let max = bs.iter().flat_map(|b| b.indices.iter().copied()).max().unwrap_or(0);
            let table = per_coordinate_table(points, max, |x, i| binomial(&BigInt::from(x), i));
            for b in bs {
                for row in &table {
                    entries.push(table_product(row, &b.indices));
                }
            }
        }
    }
    Ok(EvaluationMatrix {
        basis: basis.clone(),
        points: points.clone(),
        values: IntMatrix::new(basis.len(), n, entries),
    })
}

/// `table[p][j][k] = f(z_p[j], k)`
fn per_coordinate_table(
    points: &LatticePointSet,
    max: u32,
    f: impl Fn(i64, u32) -> BigInt,
) -> Vec<Vec<Vec<BigInt>>> {
    points
        .points()
        .iter()
        .map(|z| z.iter().map(|&x| (0..=max).map(|k| f(x, k)).collect()).collect())
        .collect()
}

fn table_product(table: &[Vec<BigInt>], idx: &[u32]) -> BigInt {
    let mut acc = BigInt::one();
    for (j, &k) in idx.iter().enumerate() {
        if k > 0 {
            acc *= &table[j][k as usize];
        }
    }
    acc
}

/// Sparse polynomial in `nvars` variables with rational coefficients, keyed
/// by exponent vector. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, BigRational>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: BigRational) -> Self {
        let mut p = Polynomial::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn one(nvars: usize) -> Self {
        Polynomial::constant(nvars, BigRational::one())
    }

    pub fn variable(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut p = Polynomial::zero(nvars);
        p.terms.insert(e, BigRational::one());
        p
    }

    /// `Σ α_i x_i + c`
    pub fn linear(alpha: &[BigInt], c: &BigInt) -> Self {
        let n = alpha.len();
        let mut p = Polynomial::constant(n, BigRational::from_integer(c.clone()));
        for (i, a) in alpha.iter().enumerate() {
            p = p.add(&Polynomial::variable(n, i).scale(&BigRational::from_integer(a.clone())));
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, BigRational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn coefficient(&self, exponents: &[u32]) -> BigRational {
        self.terms.get(exponents).cloned().unwrap_or_else(BigRational::zero)
    }

    fn insert_add(&mut self, e: Vec<u32>, c: BigRational) {
        let slot = self.terms.entry(e).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert_add(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.scale(&-BigRational::one()))
    }

    pub fn scale(&self, c: &BigRational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        assert_eq!(self.nvars, other.nvars);
        let mut out = Polynomial::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.insert_add(e, c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        (0..k).fold(Polynomial::one(self.nvars), |acc, _| acc.mul(self))
    }

    /// `binom(p, k) = p (p-1) ... (p-k+1) / k!`
    pub fn binomial(&self, k: u32) -> Polynomial {
        let mut acc = Polynomial::one(self.nvars);
        for i in 0..k {
            let shifted = self.sub(&Polynomial::constant(self.nvars, BigRational::from_integer(i.into())));
            acc = acc.mul(&shifted);
        }
        acc.scale(&BigRational::new(BigInt::one(), factorial(k)))
    }

    /// Sum of the terms of top degree.
    pub fn top_form(&self) -> Polynomial {
        let Some(d) = self.degree() else {
            return self.clone();
        };
        Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.iter().sum::<u32>() == d)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn eval(&self, z: &[i64]) -> BigRational {
        self.terms
            .iter()
            .map(|(e, c)| c * BigRational::from_integer(Monomial { exponents: e.clone() }.eval(z)))
            .fold(BigRational::zero(), |a, b| a + b)
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().rev().map(|(e, c)| format!("{c}*x^{e:?}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Whether a polynomial of degree at most `d` is an integer combination of the
/// binomial products of degree at most `d`.
///
/// Decided on the simplex grid `{z >= 0, Σz <= d}`, on which the binomial
/// products form a unitriangular system; membership is an HNF solve.
pub fn in_binomial_span(p: &Polynomial, d: u32) -> bool {
    if p.degree().is_some_and(|deg| deg > d) {
        return false;
    }
    let r = p.nvars();
    let grid: Vec<Vec<i64>> = exponents_up_to(r, d)
        .into_iter()
        .map(|e| e.into_iter().map(i64::from).collect())
        .collect();
    let pts = LatticePointSet::new(r, grid);
    let basis = FunctionBasis::Binomials(binomial_products_up_to(r, d));
    let eval = evaluate(&basis, &pts).expect("grid is nonempty");
    let mut target = Vec::with_capacity(pts.len());
    for z in pts.points() {
        let v = p.eval(z);
        if !v.is_integer() {
            return false;
        }
        target.push(v.to_integer());
    }
    column_hnf(&eval.values.transpose()).contains(&target)
}
