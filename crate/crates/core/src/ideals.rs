//! Cocircuit ideals: the inhomogeneous binomial generators that vanish on the
//! interior points, and the homogeneous power ideal whose quotient has the
//! same Hilbert function as the associated graded ring.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::arrangement::{enumerate_cocircuits, Cocircuit, LatticePointSet, VectorArrangement};
use crate::error::{Error, Result};
use crate::funcspace::{binomial, factorial, monomials_of_degree, Polynomial};
use crate::linalg::IntMatrix;

/// Largest `dim Sym^d` handled by the quotient computation.
pub const SYM_MAX_DIM: usize = 3000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GeneratorKind {
    /// `binom(α + shift, degree)`
    BinomialShift { shift: i64 },
    /// `α^degree / degree!`
    PurePower,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealGenerator {
    pub kind: GeneratorKind,
    pub cocircuit: Cocircuit,
    /// `d(α) - 1`
    pub degree: usize,
}

impl IdealGenerator {
    pub fn eval(&self, z: &[i64]) -> BigRational {
        let pairing = self.cocircuit.pair(z);
        match self.kind {
            GeneratorKind::BinomialShift { shift } => {
                BigRational::from_integer(binomial(&(pairing + BigInt::from(shift)), self.degree as u32))
            }
            GeneratorKind::PurePower => BigRational::new(
                num_traits::pow(pairing, self.degree),
                factorial(self.degree as u32),
            ),
        }
    }

    pub fn polynomial(&self) -> Polynomial {
        let alpha = &self.cocircuit.covector;
        match self.kind {
            GeneratorKind::BinomialShift { shift } => {
                Polynomial::linear(alpha, &BigInt::from(shift)).binomial(self.degree as u32)
            }
            GeneratorKind::PurePower => Polynomial::linear(alpha, &BigInt::zero())
                .pow(self.degree as u32)
                .scale(&BigRational::new(BigInt::one(), factorial(self.degree as u32))),
        }
    }

    /// Closed form in the coordinates `x1, ..., xr`, e.g. `binom(x1 - x2 + 1, 4)`.
    pub fn description(&self) -> String {
        match self.kind {
            GeneratorKind::BinomialShift { shift } => {
                format!("binom({}, {})", linear_form(&self.cocircuit.covector, shift), self.degree)
            }
            GeneratorKind::PurePower => match self.degree {
                0 => "1".to_string(),
                1 => linear_form(&self.cocircuit.covector, 0),
                d => format!("({})^{d}/{d}!", linear_form(&self.cocircuit.covector, 0)),
            },
        }
    }
}

/// `a_1 x1 + ... + a_r xr + c` written compactly.
pub fn linear_form(alpha: &[BigInt], constant: i64) -> String {
    let mut out = String::new();
    for (i, a) in alpha.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        let mag = if a < &BigInt::zero() { -a.clone() } else { a.clone() };
        let coeff = if mag.is_one() { String::new() } else { mag.to_string() };
        let sign = if a < &BigInt::zero() { "-" } else { "+" };
        if out.is_empty() {
            out = format!("{}{coeff}x{}", if sign == "-" { "-" } else { "" }, i + 1);
        } else {
            out = format!("{out} {sign} {coeff}x{}", i + 1);
        }
    }
    if out.is_empty() {
        return constant.to_string();
    }
    match constant {
        0 => out,
        c if c > 0 => format!("{out} + {c}"),
        c => format!("{out} - {}", -c),
    }
}

/// One binomial generator `binom(α + d₋(α) - 1, d(α) - 1)` per canonical cocircuit.
pub fn k_minus_generators(va: &VectorArrangement) -> Result<Vec<IdealGenerator>> {
    Ok(enumerate_cocircuits(va)?
        .into_iter()
        .map(|c| IdealGenerator {
            kind: GeneratorKind::BinomialShift {
                shift: c.d_minus as i64 - 1,
            },
            degree: c.degree() - 1,
            cocircuit: c,
        })
        .collect())
}

/// One pure power `α^{d(α) - 1} / (d(α) - 1)!` per canonical cocircuit.
pub fn i_minus_generators(va: &VectorArrangement) -> Result<Vec<IdealGenerator>> {
    Ok(enumerate_cocircuits(va)?
        .into_iter()
        .map(|c| IdealGenerator {
            kind: GeneratorKind::PurePower,
            degree: c.degree() - 1,
            cocircuit: c,
        })
        .collect())
}

/// True iff every binomial generator is zero at every point. Pure powers are
/// not expected to vanish and are skipped.
pub fn verify_vanishing(gens: &[IdealGenerator], points: &LatticePointSet) -> bool {
    gens.iter()
        .filter(|g| matches!(g.kind, GeneratorKind::BinomialShift { .. }))
        .all(|g| points.points().iter().all(|z| g.eval(z).is_zero()))
}

/// `α^e` as an integer coefficient map over exponent vectors.
fn power_terms(alpha: &[BigInt], e: usize) -> Vec<(Vec<u32>, BigInt)> {
    Polynomial::linear(alpha, &BigInt::zero())
        .pow(e as u32)
        .terms()
        .iter()
        .map(|(k, c)| (k.clone(), c.to_integer()))
        .collect()
}

/// The degree-`d` part of the ideal generated by the given homogeneous
/// polynomials, as a matrix with one column per spanning product.
fn ideal_part(r: usize, d: usize, gens: &[(Vec<BigInt>, usize)]) -> Result<(IntMatrix, usize)> {
    let basis = monomials_of_degree(r, d as u32);
    if basis.len() > SYM_MAX_DIM {
        return Err(Error::size("symmetric power dimension", SYM_MAX_DIM, basis.len()));
    }
    let index: HashMap<&[u32], usize> = basis.iter().enumerate().map(|(i, m)| (m.exponents.as_slice(), i)).collect();
    let mut cols = Vec::new();
    for (alpha, e) in gens {
        if *e > d {
            continue;
        }
        let terms = power_terms(alpha, *e);
        for m in monomials_of_degree(r, (d - e) as u32) {
            let mut v = vec![BigInt::zero(); basis.len()];
            for (exp, c) in &terms {
                let shifted: Vec<u32> = exp.iter().zip(&m.exponents).map(|(a, b)| a + b).collect();
                v[index[shifted.as_slice()]] += c;
            }
            cols.push(v);
        }
    }
    Ok((IntMatrix::from_columns(basis.len(), &cols), basis.len()))
}

/// `dim Sym^d / ⟨α^{d(α) - 1}⟩_d` for `d = 0..=max_degree`.
pub fn power_ideal_quotient_dims(va: &VectorArrangement, max_degree: usize) -> Result<Vec<usize>> {
    let gens: Vec<(Vec<BigInt>, usize)> = enumerate_cocircuits(va)?
        .into_iter()
        .map(|c| (c.covector.clone(), c.degree() - 1))
        .collect();
    (0..=max_degree)
        .map(|d| {
            let (m, dim) = ideal_part(va.rank(), d, &gens)?;
            Ok(dim - m.rank())
        })
        .collect()
}

/// Indices of pure-power generators that lie in the ideal generated by the
/// others. Membership of a homogeneous element only depends on the ideal in
/// its own degree, so this is an exact test; no claim of minimality is made
/// about the remaining set.
pub fn redundant_generators(va: &VectorArrangement) -> Result<Vec<usize>> {
    let gens: Vec<(Vec<BigInt>, usize)> = enumerate_cocircuits(va)?
        .into_iter()
        .map(|c| (c.covector.clone(), c.degree() - 1))
        .collect();
    let mut out = Vec::new();
    for (k, (alpha, e)) in gens.iter().enumerate() {
        let others: Vec<(Vec<BigInt>, usize)> =
            gens.iter().enumerate().filter(|&(j, _)| j != k).map(|(_, g)| g.clone()).collect();
        let (span, _) = ideal_part(va.rank(), *e, &others)?;
        let (own, _) = ideal_part(va.rank(), *e, &[(alpha.clone(), *e)])?;
        if span.hcat(&own).rank() == span.rank() {
            out.push(k);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::interior_lattice_points;
    use crate::graph::{cographical_arrangement, random_connected_multigraph};
    use crate::harmonics::compute_filtration;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn house() -> VectorArrangement {
        VectorArrangement::from_columns(2, &[vec![1, 0], vec![1, 0], vec![1, 0], vec![1, 1], vec![0, 1], vec![0, 1]])
            .unwrap()
    }

    fn ones(k: usize) -> VectorArrangement {
        VectorArrangement::from_columns(1, &vec![vec![1]; k]).unwrap()
    }

    fn trimmed(mut v: Vec<usize>) -> Vec<usize> {
        while v.last() == Some(&0) {
            v.pop();
        }
        v
    }

    #[test]
    fn house_generators() {
        let gens = k_minus_generators(&house()).unwrap();
        let described: Vec<String> = gens.iter().map(IdealGenerator::description).collect();
        // cocircuits in canonical order: (0,1) = α_C3, (1,-1) = α_C5, (1,0) = α_C4
        assert_eq!(described, vec!["binom(x2 - 1, 2)", "binom(x1 - x2 + 1, 4)", "binom(x1 - 1, 3)"]);
        assert!(verify_vanishing(&gens, &interior_lattice_points(&house()).unwrap()));
        let pure: Vec<String> = i_minus_generators(&house()).unwrap().iter().map(IdealGenerator::description).collect();
        assert_eq!(pure, vec!["(x2)^2/2!", "(x1 - x2)^4/4!", "(x1)^3/3!"]);
    }

    #[test]
    fn cycle_generators_vanish() {
        for k in 2..8 {
            let gens = k_minus_generators(&ones(k)).unwrap();
            assert_eq!(gens.len(), 1);
            assert_eq!(gens[0].description(), format!("binom(x1 - 1, {})", k - 1));
            assert!(verify_vanishing(&gens, &interior_lattice_points(&ones(k)).unwrap()));
        }
    }

    #[test]
    fn wrong_shift_does_not_vanish() {
        let k = 5;
        let mut gens = k_minus_generators(&ones(k)).unwrap();
        gens[0].kind = GeneratorKind::BinomialShift { shift: -2 };
        let pts = interior_lattice_points(&ones(k)).unwrap();
        assert!(!verify_vanishing(&gens, &pts));
        // fails first at z = 1: binom(-1, 4) = 1
        assert_eq!(gens[0].eval(&[1]), BigRational::one());
    }

    #[test]
    fn coloop_generator_is_constant() {
        let gens = k_minus_generators(&ones(1)).unwrap();
        assert_eq!(gens[0].degree, 0);
        assert_eq!(gens[0].polynomial(), Polynomial::one(1));
        assert_eq!(power_ideal_quotient_dims(&ones(1), 3).unwrap(), vec![0; 4]);
    }

    #[test]
    fn house_quotient_dims() {
        assert_eq!(power_ideal_quotient_dims(&house(), 6).unwrap(), vec![1, 2, 2, 1, 0, 0, 0]);
        for k in 2..8 {
            let mut expect = vec![1; k - 1];
            expect.extend([0, 0]);
            assert_eq!(power_ideal_quotient_dims(&ones(k), k).unwrap(), expect);
        }
    }

    #[test]
    fn house_middle_cycle_relation_is_redundant() {
        // the generator attached to α = x1 - x2 is implied by x2^2 and x1^3
        assert_eq!(redundant_generators(&house()).unwrap(), vec![1]);
        assert!(redundant_generators(&ones(4)).unwrap().is_empty());
    }

    #[test]
    fn shifted_binomial_values_on_house_points() {
        // binom(x1 - x2 + 1, 2) on the points in lexicographic order
        let g = IdealGenerator {
            kind: GeneratorKind::BinomialShift { shift: 1 },
            cocircuit: k_minus_generators(&house()).unwrap()[1].cocircuit.clone(),
            degree: 2,
        };
        let pts = interior_lattice_points(&house()).unwrap();
        let vals: Vec<BigRational> = pts.points().iter().map(|z| g.eval(z)).collect();
        let expect: Vec<BigRational> = [0, 0, 1, 0, 3, 1].iter().map(|&x| BigRational::from_integer(x.into())).collect();
        assert_eq!(vals, expect);
    }

    #[test]
    fn linear_form_rendering() {
        let v = |xs: &[i64]| xs.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
        assert_eq!(linear_form(&v(&[1, -1]), 1), "x1 - x2 + 1");
        assert_eq!(linear_form(&v(&[0, 2, -3]), -4), "2x2 - 3x3 - 4");
        assert_eq!(linear_form(&v(&[-1]), 0), "-x1");
        assert_eq!(linear_form(&v(&[0]), 7), "7");
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn binomial_generator_lifts_pure_power(seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let g = random_connected_multigraph(&mut rng, 6);
            let va = cographical_arrangement(&g);
            let pts = interior_lattice_points(&va).unwrap();
            let k = k_minus_generators(&va).unwrap();
            let i = i_minus_generators(&va).unwrap();
            prop_assert!(verify_vanishing(&k, &pts));
            for (bg, pg) in k.iter().zip(&i) {
                let d = bg.degree as u32;
                let scaled = bg.polynomial().top_form().scale(&BigRational::from_integer(factorial(d)));
                let power = Polynomial::linear(&bg.cocircuit.covector, &BigInt::zero()).pow(d);
                prop_assert_eq!(&scaled, &power);
                prop_assert_eq!(pg.polynomial().scale(&BigRational::from_integer(factorial(d))), power);
                // the opposite cocircuit gives the same generator up to sign
                let opp = IdealGenerator {
                    kind: GeneratorKind::BinomialShift { shift: bg.cocircuit.d_plus as i64 - 1 },
                    cocircuit: bg.cocircuit.opposite(),
                    degree: bg.degree,
                };
                let sign = if d.is_multiple_of(2) { BigRational::one() } else { -BigRational::one() };
                prop_assert_eq!(opp.polynomial(), bg.polynomial().scale(&sign));
            }
        }

        #[test]
        fn quotient_dims_match_graded_dims(seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let g = random_connected_multigraph(&mut rng, 6);
            let va = cographical_arrangement(&g);
            let f = compute_filtration(&va).unwrap();
            let dims = power_ideal_quotient_dims(&va, f.top_degree + 1).unwrap();
            prop_assert_eq!(trimmed(dims), f.gr_dims());
        }
    }
}
