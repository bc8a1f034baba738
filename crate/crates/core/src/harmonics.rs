//! Degree filtrations of functions on the interior point set, over Q and Z.
//!
//! Functions on a finite point set are stored as evaluation vectors indexed
//! by the points in lexicographic order, and lattices of such functions are
//! stored as matrices whose columns span them. `R_i(Q)` is spanned by the
//! polynomials of degree at most `i`; `R̃_i(Z)` by the integer-valued ones
//! (products of binomial coefficients in the coordinates); and `R_i(Z)` is
//! `R_i(Q) ∩ Z^N`, the saturation of `R̃_i(Z)`.

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arrangement::{
    contraction_with_map, deletion, ensure_totally_unimodular, interior_lattice_points,
    partition_points, LatticePointSet, PointPartition, VectorArrangement,
};
use crate::error::{Error, Result};
use crate::funcspace::{
    binomial, binomial_products_of_degree, binomial_products_up_to, evaluate, factorial,
    monomials_of_degree, FunctionBasis,
};
use crate::graph::{trim, tutte_of_arrangement};
use crate::linalg::{
    column_hnf, hermite_normal_form, integer_kernel, lattice_basis, saturate, ColumnHnf,
    HermiteForm, IntMatrix,
};

/// The filtration of functions on a point set by polynomial degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Filtration {
    pub points: LatticePointSet,
    /// `dim R_i(Q)` for `i = 0..=top_degree`.
    pub q_dims: Vec<usize>,
    /// Hermite form of `R̃_i(Z)` per degree.
    pub z_lattice_bases: Vec<HermiteForm>,
    /// Hermite basis of `R_i(Z)` per degree.
    pub saturated_bases: Vec<IntMatrix>,
    /// `[R_i(Z) : R̃_i(Z)]` per degree.
    pub saturation_indices: Vec<BigInt>,
    /// Smallest `i` with `R_i = R`; zero for an empty point set.
    pub top_degree: usize,
}

impl Filtration {
    /// Filtration on the interior points of an arrangement, which must be
    /// totally unimodular.
    pub fn of(va: &VectorArrangement, max_degree: Option<usize>) -> Result<Self> {
        let va = ensure_totally_unimodular(va)?;
        Filtration::from_points(&interior_lattice_points(&va)?, max_degree)
    }

    /// Filtration on an arbitrary finite point set. Fails with a size error
    /// if the top degree exceeds `max_degree`.
    pub fn from_points(points: &LatticePointSet, max_degree: Option<usize>) -> Result<Self> {
        let n = points.len();
        let r = points.dim();
        let mut f = Filtration {
            points: points.clone(),
            q_dims: Vec::new(),
            z_lattice_bases: Vec::new(),
            saturated_bases: Vec::new(),
            saturation_indices: Vec::new(),
            top_degree: 0,
        };
        if n == 0 {
            return Ok(f);
        }
        // each step only adds the degree-i functions to the previous lattice
        let mut tilde_prev = IntMatrix::zeros(n, 0);
        let mut sat_prev = IntMatrix::zeros(n, 0);
        for i in 0usize.. {
            if let Some(max) = max_degree {
                if i > max {
                    return Err(Error::size("filtration degree", max, i));
                }
            }
            let d = i as u32;
            let binoms = evaluate(&FunctionBasis::Binomials(binomial_products_of_degree(r, d)), points)?;
            let monos = evaluate(&FunctionBasis::Monomials(monomials_of_degree(r, d)), points)?;
            let q = sat_prev.hcat(&monos.values.transpose()).rank();
            let tilde = hermite_normal_form(&tilde_prev.hcat(&binoms.values.transpose()))?;
            if tilde.rank() != q {
                return Err(Error::Internal(format!(
                    "degree {i}: integer-valued span has rank {}, polynomial span {q}",
                    tilde.rank()
                )));
            }
            let sat = saturate(&tilde.basis);
            f.saturation_indices.push(tilde.elementary_divisors.iter().product());
            f.q_dims.push(q);
            tilde_prev = tilde.basis.clone();
            f.z_lattice_bases.push(tilde);
            sat_prev = sat.clone();
            f.saturated_bases.push(sat);
            if q == n {
                f.top_degree = i;
                break;
            }
        }
        Ok(f)
    }

    pub fn point_count(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// `dim R_i / R_{i-1}`, the Hilbert function of the associated graded ring.
    pub fn gr_dims(&self) -> Vec<usize> {
        let mut prev = 0;
        self.q_dims
            .iter()
            .map(|&q| {
                let g = q - prev;
                prev = q;
                g
            })
            .collect()
    }

    /// `dim R_i(Q)` for any `i`; constant past the top degree.
    pub fn q_dim_at(&self, i: usize) -> usize {
        match self.q_dims.len() {
            0 => 0,
            len => self.q_dims[i.min(len - 1)],
        }
    }

    /// Basis of `R_i(Z)` for any `i`; constant past the top degree.
    pub fn saturated_at(&self, i: usize) -> IntMatrix {
        match self.saturated_bases.len() {
            0 => IntMatrix::zeros(self.point_count(), 0),
            len => self.saturated_bases[i.min(len - 1)].clone(),
        }
    }

    /// `R_i(Z) / R_{i-1}(Z)` realized as a lattice: the image of `R_i(Z)`
    /// under a projection whose kernel is the rational span of `R_{i-1}`.
    fn graded_piece(&self, i: usize) -> GradedPiece {
        let n = self.point_count();
        let projector = if i == 0 {
            IntMatrix::identity(n)
        } else {
            integer_kernel(&self.saturated_at(i - 1).transpose()).transpose()
        };
        let lattice = column_hnf(&projector.mul(&self.saturated_at(i)));
        GradedPiece { projector, lattice }
    }

    /// Coordinates of the class of `values` in `R_i(Z) / R_{i-1}(Z)`, or
    /// `None` if `values` is not in `R_i(Z)`.
    pub fn residue(&self, values: &[BigInt], i: usize) -> Option<Vec<BigInt>> {
        let piece = self.graded_piece(i);
        if !column_hnf(&self.saturated_at(i)).contains(values) {
            return None;
        }
        piece.lattice.solve(&piece.projector.mul_vec(values))
    }
}

struct GradedPiece {
    projector: IntMatrix,
    lattice: ColumnHnf,
}

/// Filtration of the interior points of a totally unimodular arrangement.
pub fn compute_filtration(va: &VectorArrangement) -> Result<Filtration> {
    Filtration::of(va, None)
}

/// True when every filtered piece equals its saturation (vacuous when empty).
pub fn verify_saturation(f: &Filtration) -> bool {
    f.saturation_indices.iter().all(One::is_one)
}

/// Coefficients of `t^{|A| - r} T_χ(0, 1/t)`, lowest degree first, trailing
/// zeros removed.
pub fn iz_hilbert_series(va: &VectorArrangement) -> Result<Vec<BigInt>> {
    let t = tutte_of_arrangement(va)?;
    let top = (va.len() - va.rank()) as u32;
    let mut out = vec![BigInt::zero(); top as usize + 1];
    for (&(i, j), c) in t.terms() {
        if i == 0 {
            out[(top - j) as usize] += c;
        }
    }
    Ok(trim(out))
}

/// An element of the associated graded ring `R_i(Z) / R_{i-1}(Z)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedClass {
    pub degree: usize,
    /// Coefficients over the binomial products of degree at most `degree`
    /// (or the top degree, if smaller) of a lift of the class.
    pub representative: Vec<BigInt>,
    /// Evaluation vector of that lift.
    pub values: Vec<BigInt>,
    /// Coordinates of the class in the graded piece.
    pub residue: Vec<BigInt>,
}

/// Class of the function with the given values, viewed in degree `degree`.
pub fn class_of(f: &Filtration, values: &[BigInt], degree: usize) -> Result<GradedClass> {
    if f.is_empty() {
        return Err(Error::EmptyPointSet);
    }
    if values.len() != f.point_count() {
        return Err(Error::DimensionMismatch {
            expected: f.point_count(),
            actual: values.len(),
        });
    }
    let residue = f.residue(values, degree).ok_or(Error::NotIntegral(degree))?;
    let lift_degree = degree.min(f.top_degree) as u32;
    let basis = binomial_products_up_to(f.points.dim(), lift_degree);
    let eval = evaluate(&FunctionBasis::Binomials(basis), &f.points)?;
    let representative = column_hnf(&eval.values.transpose())
        .preimage(values)
        .ok_or(Error::NotIntegral(degree))?;
    Ok(GradedClass {
        degree,
        representative,
        values: values.to_vec(),
        residue,
    })
}

/// The class of the constant function 1 in degree 0.
pub fn unit_class(f: &Filtration) -> Result<GradedClass> {
    class_of(f, &vec![BigInt::one(); f.point_count()], 0)
}

/// Product in the associated graded ring.
pub fn multiply(f: &Filtration, a: &GradedClass, b: &GradedClass) -> Result<GradedClass> {
    let values: Vec<BigInt> = a.values.iter().zip(&b.values).map(|(x, y)| x * y).collect();
    class_of(f, &values, a.degree + b.degree)
}

/// The divided power `e^[m]`: the class of `binom(η, m)` for a lift `η` of
/// `e`. Also checks `m! e^[m] = e^m` in the graded piece.
pub fn divided_power(f: &Filtration, e: &GradedClass, m: usize) -> Result<GradedClass> {
    if m == 0 {
        return unit_class(f);
    }
    if e.degree == 0 && m > 1 {
        return Err(Error::DegreeOverflow {
            requested: 0,
            top: f.top_degree,
        });
    }
    let degree = m * e.degree;
    if degree > f.top_degree {
        return Err(Error::DegreeOverflow {
            requested: degree,
            top: f.top_degree,
        });
    }
    let k = m as u32;
    let lifted: Vec<BigInt> = e.values.iter().map(|v| binomial(v, k)).collect();
    let out = class_of(f, &lifted, degree)?;
    let power: Vec<BigInt> = e.values.iter().map(|v| num_traits::pow(v.clone(), m)).collect();
    let power_residue = f.residue(&power, degree).ok_or(Error::NotIntegral(degree))?;
    let scaled: Vec<BigInt> = out.residue.iter().map(|x| x * factorial(k)).collect();
    if scaled != power_residue {
        return Err(Error::Internal(format!("m! e^[m] differs from e^m for m = {m}")));
    }
    Ok(out)
}

/// Whether `target` lies in the subring of the associated graded ring
/// generated over Z by `generators` (all of positive degree).
pub fn in_generated_subring(f: &Filtration, generators: &[GradedClass], target: &GradedClass) -> Result<bool> {
    let d = target.degree;
    let mut products: Vec<Vec<BigInt>> = Vec::new();
    if d == 0 {
        products.push(unit_class(f)?.residue);
    }
    for size in 1..=d {
        for combo in (0..generators.len()).combinations_with_replacement(size) {
            if combo.iter().map(|&g| generators[g].degree).sum::<usize>() != d {
                continue;
            }
            let mut acc = generators[combo[0]].clone();
            for &g in &combo[1..] {
                acc = multiply(f, &acc, &generators[g])?;
            }
            products.push(acc.residue);
        }
    }
    let rank = target.residue.len();
    if products.is_empty() {
        return Ok(target.residue.iter().all(Zero::is_zero));
    }
    Ok(column_hnf(&IntMatrix::from_columns(rank, &products)).contains(&target.residue))
}

/// Checks, degree by degree, that the span of all products
/// `∏ binom(η_j, m_j)` with `Σ m_j ≤ i`, for `η_j` running over a basis of
/// `R_1(Z)`, is all of `R_i(Z)`; that is, that the associated graded ring is
/// generated in degree one as a divided power ring.
pub fn divided_power_generation_check(f: &Filtration) -> Result<bool> {
    if f.is_empty() || f.top_degree == 0 {
        return Ok(true);
    }
    let n = f.point_count();
    let eta = f.saturated_at(1).columns();
    for i in 2..=f.top_degree {
        let mut spans: Vec<Vec<BigInt>> = Vec::new();
        for total in 0..=i {
            for split in compositions(total, eta.len()) {
                let mut v = vec![BigInt::one(); n];
                for (j, &m) in split.iter().enumerate() {
                    if m > 0 {
                        for p in 0..n {
                            v[p] *= binomial(&eta[j][p], m as u32);
                        }
                    }
                }
                spans.push(v);
            }
        }
        let (basis, _) = lattice_basis(&IntMatrix::from_columns(n, &spans));
        if basis != f.saturated_bases[i] {
            return Ok(false);
        }
    }
    Ok(true)
}

/// All ways to write `total` as an ordered sum of `parts` nonnegative integers.
fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in (0..=total).rev() {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Per-degree results of the deletion-contraction comparison
/// `0 → R_i(χ'') → R_i(χ) → R_{i-1}(χ') → 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeExactness {
    pub degree: usize,
    pub dim: usize,
    pub dim_contraction: usize,
    pub dim_deletion_below: usize,
    /// `dim R_i(χ) = dim R_i(χ'') + dim R_{i-1}(χ')`
    pub dimension_identity: bool,
    /// Pullback along `z ↦ z̄` lands in `R_i(χ; Z)`.
    pub pullback_into: bool,
    /// The difference operator lands in `R_{i-1}(χ'; Z)`.
    pub difference_into: bool,
    pub composite_zero: bool,
    pub pullback_injective: bool,
    /// Surjective onto `R_{i-1}(χ'; Z)` as lattices.
    pub difference_surjective: bool,
    pub exact_rational: bool,
    /// Kernel of the difference operator on `R_i(χ; Z)` equals the image of the pullback.
    pub exact_integral: bool,
}

impl DegreeExactness {
    pub fn holds(&self) -> bool {
        self.dimension_identity
            && self.pullback_into
            && self.difference_into
            && self.composite_zero
            && self.pullback_injective
            && self.difference_surjective
            && self.exact_rational
            && self.exact_integral
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeletionContractionRecord {
    pub label: String,
    pub partition: PointPartition,
    /// Every `z̄` lies in `Z₋(χ'')` and `z + χ(a)` in `Z₋(χ)` for `z ∈ Z₋(χ')`,
    /// so both maps are defined on evaluation vectors.
    pub maps_defined: bool,
    pub degrees: Vec<DegreeExactness>,
}

impl DeletionContractionRecord {
    pub fn holds(&self) -> bool {
        self.partition.holds() && self.maps_defined && self.degrees.iter().all(DegreeExactness::holds)
    }
}

/// Compares the filtrations of `χ`, its deletion `χ'` and contraction `χ''`
/// at element `label`, through the pullback `ξf(z) = f(z̄)` and the
/// difference operator `∂g(z) = g(z + χ(a)) - g(z)`.
pub fn deletion_contraction_check(va: &VectorArrangement, label: &str) -> Result<DeletionContractionRecord> {
    let va = ensure_totally_unimodular(va)?;
    let j = va.index_of(label)?;
    if va.is_loop(j) || va.is_coloop(j) {
        return Err(Error::LoopOrColoop(label.to_string()));
    }
    let partition = partition_points(&va, label)?;
    let del = deletion(&va, label)?;
    let con = contraction_with_map(&va, label)?;
    let full = Filtration::of(&va, None)?;
    let fdel = Filtration::of(&del, None)?;
    let fcon = Filtration::of(&con.arrangement, None)?;
    let (p, pdel, pcon) = (&full.points, &fdel.points, &fcon.points);

    let step: Vec<i64> = va
        .column(j)
        .iter()
        .map(|x| i64::try_from(x).map_err(|_| Error::size("entry magnitude", i64::MAX as usize, usize::MAX)))
        .collect::<Result<_>>()?;
    let pullback_target: Vec<Option<usize>> = p
        .points()
        .iter()
        .map(|z| pcon.index_of(&crate::arrangement::project(&con.quotient, z)))
        .collect();
    let shifted: Vec<Option<(usize, usize)>> = pdel
        .points()
        .iter()
        .map(|z| {
            let up: Vec<i64> = z.iter().zip(&step).map(|(a, b)| a + b).collect();
            Some((p.index_of(&up)?, p.index_of(z)?))
        })
        .collect();
    let maps_defined = pullback_target.iter().all(Option::is_some) && shifted.iter().all(Option::is_some);

    let top = [full.top_degree, fcon.top_degree, fdel.top_degree + 1].into_iter().max().unwrap();
    let mut degrees = Vec::with_capacity(top + 1);
    let (n, ndel, ncon) = (p.len(), pdel.len(), pcon.len());
    let mut xi = IntMatrix::zeros(n, ncon);
    let mut diff = IntMatrix::zeros(ndel, n);
    if maps_defined {
        for (row, q) in pullback_target.iter().enumerate() {
            xi.set(row, q.unwrap(), BigInt::one());
        }
        for (row, s) in shifted.iter().enumerate() {
            let (up, here) = s.unwrap();
            diff.set(row, up, BigInt::one());
            diff.set(row, here, -BigInt::one());
        }
    }
    for i in 0..=top {
        let dim = full.q_dim_at(i);
        let dim_contraction = fcon.q_dim_at(i);
        let dim_deletion_below = if i == 0 { 0 } else { fdel.q_dim_at(i - 1) };
        let mut rec = DegreeExactness {
            degree: i,
            dim,
            dim_contraction,
            dim_deletion_below,
            dimension_identity: dim == dim_contraction + dim_deletion_below,
            pullback_into: false,
            difference_into: false,
            composite_zero: false,
            pullback_injective: false,
            difference_surjective: false,
            exact_rational: false,
            exact_integral: false,
        };
        if maps_defined {
            let middle = full.saturated_at(i);
            let source = fcon.saturated_at(i);
            let below = if i == 0 { IntMatrix::zeros(ndel, 0) } else { fdel.saturated_at(i - 1) };
            let image = xi.mul(&source);
            let pushed = diff.mul(&middle);
            let middle_hnf = column_hnf(&middle);
            let below_hnf = column_hnf(&below);
            rec.pullback_into = image.columns().iter().all(|c| middle_hnf.contains(c));
            rec.difference_into = pushed.columns().iter().all(|c| below_hnf.contains(c));
            rec.composite_zero = diff.mul(&xi).is_zero();
            let image_rank = image.rank();
            let pushed_rank = pushed.rank();
            rec.pullback_injective = image_rank == source.cols();
            rec.difference_surjective = lattice_basis(&pushed).0 == lattice_basis(&below).0;
            rec.exact_rational = rec.composite_zero && image_rank + pushed_rank == middle.cols();
            let kernel = middle.mul(&integer_kernel(&pushed));
            rec.exact_integral = lattice_basis(&kernel).0 == lattice_basis(&image).0;
        }
        degrees.push(rec);
    }
    Ok(DeletionContractionRecord {
        label: label.to_string(),
        partition,
        maps_defined,
        degrees,
    })
}

/// One graded piece of the Rees module `⊕ u^i R_i(Z)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReesPiece {
    /// Exponent of `u`, equal to the filtration degree.
    pub weight: usize,
    /// Degree under the convention that `u` has degree 2.
    pub topological_degree: usize,
    pub basis: IntMatrix,
}

pub fn rees_data(f: &Filtration) -> Vec<ReesPiece> {
    f.saturated_bases
        .iter()
        .enumerate()
        .map(|(i, b)| ReesPiece {
            weight: i,
            topological_degree: 2 * i,
            basis: b.clone(),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{cographical_arrangement, random_connected_multigraph};
    use crate::linalg::{kernel_basis, rank};
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn house() -> VectorArrangement {
        VectorArrangement::from_columns(2, &[vec![1, 0], vec![1, 0], vec![1, 0], vec![1, 1], vec![0, 1], vec![0, 1]])
            .unwrap()
    }

    fn ones(k: usize) -> VectorArrangement {
        VectorArrangement::from_columns(1, &vec![vec![1]; k]).unwrap()
    }

    /// Oracle: `dim R_i(Q)` straight from the rational rank of all monomials
    /// of degree at most `i`.
    fn q_dims_direct(points: &LatticePointSet, top: usize) -> Vec<usize> {
        (0..=top)
            .map(|i| {
                let basis = FunctionBasis::Monomials(crate::funcspace::monomials_up_to(points.dim(), i as u32));
                rank(&evaluate(&basis, points).unwrap().values.to_rat())
            })
            .collect()
    }

    /// Oracle: a full-rank lattice in Z^N is saturated iff the gcd of its
    /// maximal minors is 1.
    fn saturated_by_minors(basis: &IntMatrix) -> bool {
        let (n, k) = (basis.rows(), basis.cols());
        let mut g = BigInt::zero();
        for rows in (0..n).combinations(k) {
            let d = basis.select_rows(&rows).determinant();
            g = num_integer::Integer::gcd(&g, &d);
        }
        g.is_one()
    }

    #[test]
    fn house_filtration() {
        let f = compute_filtration(&house()).unwrap();
        assert_eq!(f.point_count(), 6);
        assert_eq!(f.q_dims, vec![1, 3, 5, 6]);
        assert_eq!(f.gr_dims(), vec![1, 2, 2, 1]);
        assert_eq!(f.top_degree, 3);
        assert!(verify_saturation(&f));
        assert_eq!(f.q_dims, q_dims_direct(&f.points, 3));
        for b in &f.z_lattice_bases {
            assert!(saturated_by_minors(&b.basis));
        }
    }

    #[test]
    fn house_degree_one_lattice_is_affine_functions() {
        // R_1(Z) is spanned by 1 and the two coordinate functions
        let f = compute_filtration(&house()).unwrap();
        let cols: Vec<Vec<BigInt>> = vec![
            vec![BigInt::one(); 6],
            f.points.points().iter().map(|z| BigInt::from(z[0])).collect(),
            f.points.points().iter().map(|z| BigInt::from(z[1])).collect(),
        ];
        let (basis, _) = lattice_basis(&IntMatrix::from_columns(6, &cols));
        assert_eq!(basis, f.saturated_bases[1]);
    }

    #[test]
    fn cycle_filtration() {
        for k in 2..9 {
            let f = compute_filtration(&ones(k)).unwrap();
            assert_eq!(f.point_count(), k - 1);
            assert_eq!(f.gr_dims(), vec![1; k - 1]);
            assert!(verify_saturation(&f));
        }
    }

    #[test]
    fn coloop_gives_empty_report() {
        let va = VectorArrangement::from_columns(2, &[vec![1, 0], vec![1, 0], vec![0, 1]]).unwrap();
        let f = compute_filtration(&va).unwrap();
        assert_eq!(f.point_count(), 0);
        assert!(f.q_dims.is_empty() && f.gr_dims().is_empty());
        assert!(verify_saturation(&f));
        assert!(divided_power_generation_check(&f).unwrap());
    }

    #[test]
    fn non_unimodular_input_is_rejected() {
        let va = VectorArrangement::from_columns(2, &[vec![1, 0], vec![1, 2], vec![0, 1]]).unwrap();
        assert!(matches!(compute_filtration(&va), Err(Error::NotTotallyUnimodular(_))));
    }

    #[test]
    fn two_point_set_is_not_saturated() {
        let pts = LatticePointSet::new(1, vec![vec![0], vec![2]]);
        let f = Filtration::from_points(&pts, None).unwrap();
        assert_eq!(f.saturation_indices, ints(&[1, 2]));
        assert!(!verify_saturation(&f));
        // x/2 takes values (0, 1): integral, but not integer-valued on Z
        let half = ints(&[0, 1]);
        assert!(column_hnf(&f.saturated_bases[1]).contains(&half));
        assert!(!column_hnf(&f.z_lattice_bases[1].basis).contains(&half));
        assert!(!saturated_by_minors(&f.z_lattice_bases[1].basis));
    }

    #[test]
    fn max_degree_is_enforced() {
        assert!(matches!(
            Filtration::of(&house(), Some(2)),
            Err(Error::SizeExceeded { .. })
        ));
        assert!(Filtration::of(&house(), Some(3)).is_ok());
    }

    #[test]
    fn hilbert_series_examples() {
        assert_eq!(iz_hilbert_series(&house()).unwrap(), ints(&[1, 2, 2, 1]));
        for k in 2..9 {
            assert_eq!(iz_hilbert_series(&ones(k)).unwrap(), vec![BigInt::one(); k - 1]);
        }
        assert!(iz_hilbert_series(&ones(1)).unwrap().is_empty());
    }

    #[test]
    fn cycle_divided_powers() {
        for k in 3..9 {
            let f = compute_filtration(&ones(k)).unwrap();
            let eta: Vec<BigInt> = f.points.points().iter().map(|z| BigInt::from(z[0])).collect();
            let e = class_of(&f, &eta, 1).unwrap();
            assert_eq!(divided_power(&f, &e, 1).unwrap().residue, e.residue);
            assert_eq!(divided_power(&f, &e, 0).unwrap(), unit_class(&f).unwrap());
            let mut power = e.clone();
            for m in 2..=k - 2 {
                power = multiply(&f, &power, &e).unwrap();
                let dp = divided_power(&f, &e, m).unwrap();
                let scaled: Vec<BigInt> = dp.residue.iter().map(|x| x * factorial(m as u32)).collect();
                assert_eq!(scaled, power.residue);
                // the degree-m piece has rank 1 and e^m is m! times its generator
                assert_eq!(dp.residue.len(), 1);
            }
            if k >= 4 {
                let e2 = divided_power(&f, &e, 2).unwrap();
                assert!(!in_generated_subring(&f, std::slice::from_ref(&e), &e2).unwrap());
                let sq = multiply(&f, &e, &e).unwrap();
                assert!(in_generated_subring(&f, std::slice::from_ref(&e), &sq).unwrap());
            }
            assert!(matches!(
                divided_power(&f, &e, k - 1),
                Err(Error::DegreeOverflow { .. })
            ));
        }
    }

    #[test]
    fn representative_evaluates_to_values() {
        let f = compute_filtration(&house()).unwrap();
        let v = f.saturated_bases[2].column(4);
        let cls = class_of(&f, &v, 2).unwrap();
        let basis = FunctionBasis::Binomials(binomial_products_up_to(2, 2));
        let eval = evaluate(&basis, &f.points).unwrap();
        assert_eq!(eval.values.transpose().mul_vec(&cls.representative), v);
    }

    #[test]
    fn generation_check_examples() {
        assert!(divided_power_generation_check(&compute_filtration(&ones(4)).unwrap()).unwrap());
        assert!(divided_power_generation_check(&compute_filtration(&house()).unwrap()).unwrap());
        let single = compute_filtration(&ones(2)).unwrap();
        assert_eq!(single.top_degree, 0);
        assert!(divided_power_generation_check(&single).unwrap());
    }

    #[test]
    fn generation_check_detects_missing_divided_powers() {
        // on {0,1,3}, 1, x, binom(x,2) evaluate to the rows of a triangular
        // matrix with diagonal 1, 1, 3, so R̃_2 has index 3 in R_2(Z) = Z^3
        let pts = LatticePointSet::new(1, vec![vec![0], vec![1], vec![3]]);
        let f = Filtration::from_points(&pts, None).unwrap();
        assert_eq!(f.top_degree, 2);
        assert_eq!(f.saturation_indices, ints(&[1, 1, 3]));
        assert!(!divided_power_generation_check(&f).unwrap());
    }

    #[test]
    fn house_deletion_contraction_at_four() {
        let rec = deletion_contraction_check(&house(), "4").unwrap();
        assert_eq!((rec.partition.total, rec.partition.deletion, rec.partition.contraction), (6, 2, 4));
        assert!(rec.holds(), "{rec:?}");
        for d in &rec.degrees {
            assert_eq!(d.dim, d.dim_contraction + d.dim_deletion_below);
        }
    }

    #[test]
    fn cycle_and_triangle_deletion_contraction() {
        for k in 3..8 {
            for label in ["1", "2"] {
                let rec = deletion_contraction_check(&ones(k), label).unwrap();
                assert!(rec.holds());
                let last = rec.degrees.last().unwrap();
                assert_eq!((last.dim, last.dim_contraction, last.dim_deletion_below), (k - 1, 1, k - 2));
            }
        }
        let rec = deletion_contraction_check(&ones(3), "3").unwrap();
        assert_eq!(rec.degrees.last().unwrap().dim, 2);
        assert!(matches!(deletion_contraction_check(&ones(1), "1"), Err(Error::LoopOrColoop(_))));
    }

    #[test]
    fn every_element_of_random_graphs() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..10 {
            let g = random_connected_multigraph(&mut rng, 6);
            let va = cographical_arrangement(&g);
            let f = compute_filtration(&va).unwrap();
            assert_eq!(
                f.gr_dims().into_iter().map(BigInt::from).collect::<Vec<_>>(),
                iz_hilbert_series(&va).unwrap()
            );
            assert!(verify_saturation(&f));
            assert!(divided_power_generation_check(&f).unwrap());
            for j in 0..va.len() {
                if va.is_loop(j) || va.is_coloop(j) {
                    continue;
                }
                let rec = deletion_contraction_check(&va, &va.labels()[j]).unwrap();
                assert!(rec.holds(), "{rec:?}");
            }
        }
    }

    #[test]
    fn rees_ranks() {
        let f = compute_filtration(&house()).unwrap();
        let rees = rees_data(&f);
        assert_eq!(rees.iter().map(|p| p.basis.cols()).collect::<Vec<_>>(), vec![1, 3, 5, 6]);
        assert_eq!(rees[3].topological_degree, 6);
        let rees = rees_data(&compute_filtration(&ones(3)).unwrap());
        assert_eq!(rees.iter().map(|p| p.basis.cols()).collect::<Vec<_>>(), vec![1, 2]);
        assert_eq!(rees_data(&compute_filtration(&ones(2)).unwrap()).len(), 1);
    }

    #[test]
    fn graded_pieces_have_rank_of_gr_dims() {
        let f = compute_filtration(&house()).unwrap();
        for (i, g) in f.gr_dims().into_iter().enumerate() {
            assert_eq!(f.graded_piece(i).lattice.rank(), g);
            // the projector kills exactly the span of R_{i-1}
            let k = kernel_basis(&f.graded_piece(i).projector.to_rat());
            assert_eq!(k.cols(), if i == 0 { 0 } else { f.q_dim_at(i - 1) });
        }
    }

    fn elementary(r: usize, i: usize, j: usize, c: i64) -> IntMatrix {
        let mut m = IntMatrix::identity(r);
        if i != j {
            m.set(i, j, BigInt::from(c));
        }
        m
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn invariant_under_relabeling_and_basis_change(
            seed in any::<u64>(),
            ops in proptest::collection::vec((0usize..4, 0usize..4, -2i64..=2), 0..4),
        ) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let g = random_connected_multigraph(&mut rng, 6);
            let va = cographical_arrangement(&g);
            let r = va.rank();
            let base = compute_filtration(&va).unwrap();
            let mut u = IntMatrix::identity(r);
            for (i, j, c) in ops {
                if r > 0 {
                    u = elementary(r, i % r, j % r, c).mul(&u);
                }
            }
            let order: Vec<usize> = (0..va.len()).rev().collect();
            let moved = va.change_basis(&u).unwrap().permute(&order);
            let f = compute_filtration(&moved).unwrap();
            prop_assert_eq!(f.point_count(), base.point_count());
            prop_assert_eq!(&f.q_dims, &base.q_dims);
            prop_assert_eq!(f.gr_dims(), base.gr_dims());
            prop_assert_eq!(&f.saturation_indices, &base.saturation_indices);
        }

        #[test]
        fn divided_power_law_on_degree_one_classes(seed in any::<u64>(), pick in 0usize..8) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let g = random_connected_multigraph(&mut rng, 6);
            let f = compute_filtration(&cographical_arrangement(&g)).unwrap();
            prop_assume!(f.top_degree >= 1);
            let basis = f.saturated_at(1);
            let e = class_of(&f, &basis.column(pick % basis.cols()), 1).unwrap();
            let mut power = e.clone();
            for m in 2..=f.top_degree {
                power = multiply(&f, &power, &e).unwrap();
                let dp = divided_power(&f, &e, m).unwrap();
                let scaled: Vec<BigInt> = dp.residue.iter().map(|x| x * factorial(m as u32)).collect();
                prop_assert_eq!(scaled, power.residue.clone());
            }
        }
    }
}
