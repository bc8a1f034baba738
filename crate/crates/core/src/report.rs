//! The full analysis pipeline and its machine- and human-readable reports.
//!
//! JSON keys appear in declaration order. Integers are written as JSON
//! numbers when their magnitude is at most 2^53 and as decimal strings
//! otherwise. Lattice bases are lists of columns, each column a function on
//! the interior points in lexicographic order.

use std::fmt::{self, Write};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arrangement::{ensure_totally_unimodular, enumerate_cocircuits, interior_lattice_points, VectorArrangement};
use crate::error::Result;
use crate::graph::{
    cographical_arrangement, enumerate_oriented_cycles, graph_rank, su2_poincare_polynomial, theta_subgraphs,
    tutte_of_arrangement, tutte_polynomial, BivariatePolynomial, DirectedGraph,
};
use crate::harmonics::{
    deletion_contraction_check, divided_power_generation_check, iz_hilbert_series, rees_data, verify_saturation,
    Filtration,
};
use crate::ideals::{i_minus_generators, k_minus_generators, power_ideal_quotient_dims, redundant_generators, verify_vanishing};
use crate::linalg::IntMatrix;

pub const SCHEMA_VERSION: u32 = 1;

/// Arbitrary-precision integer with the report's JSON encoding.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Int(pub BigInt);

const EXACT_LIMIT: u64 = 1 << 53;

impl Serialize for Int {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        if self.0.abs() <= BigInt::from(EXACT_LIMIT) {
            s.serialize_i64(i64::try_from(&self.0).expect("bounded by 2^53"))
        } else {
            s.serialize_str(&self.0.to_string())
        }
    }
}

impl<'de> Deserialize<'de> for Int {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct IntVisitor;
        impl Visitor<'_> for IntVisitor {
            type Value = Int;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an integer or a decimal string")
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<Int, E> {
                Ok(Int(v.into()))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<Int, E> {
                Ok(Int(v.into()))
            }
            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Int, E> {
                v.parse().map(Int).map_err(|_| E::custom(format!("invalid integer string `{v}`")))
            }
        }
        d.deserialize_any(IntVisitor)
    }
}

impl fmt::Display for Int {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

fn ints(v: &[BigInt]) -> Vec<Int> {
    v.iter().cloned().map(Int).collect()
}

fn small(v: &[i64]) -> Vec<Int> {
    v.iter().map(|&x| Int(x.into())).collect()
}

fn columns_of(m: &IntMatrix) -> Vec<Vec<Int>> {
    m.columns().iter().map(|c| ints(c)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct InputEcho {
    /// `graph` or `arrangement`.
    pub kind: String,
    pub text: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ArrangementSummary {
    pub rank: usize,
    pub size: usize,
    pub labels: Vec<String>,
    pub columns: Vec<Vec<Int>>,
    /// `verified`, `assumed` or `cographical`.
    pub totally_unimodular: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CocircuitRow {
    pub covector: Vec<Int>,
    pub d_plus: usize,
    pub d_minus: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct TutteTerm {
    pub x: u32,
    pub y: u32,
    pub coefficient: Int,
}

fn tutte_terms(t: &BivariatePolynomial) -> Vec<TutteTerm> {
    t.terms()
        .map(|(&(x, y), c)| TutteTerm {
            x,
            y,
            coefficient: Int(c.clone()),
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct LatticeEntry {
    pub degree: usize,
    pub rank: usize,
    pub basis: Vec<Vec<Int>>,
    pub elementary_divisors: Vec<Int>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct FiltrationSummary {
    pub point_count: usize,
    pub q_dims: Vec<usize>,
    pub gr_dims: Vec<usize>,
    pub saturation_indices: Vec<Int>,
    pub top_degree: usize,
    pub z_lattice_bases: Vec<LatticeEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ReesEntry {
    pub weight: usize,
    /// `2 * weight`: the grading in which `u` has degree 2.
    pub topological_degree: usize,
    pub rank: usize,
    pub basis: Vec<Vec<Int>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct IdealSummary {
    pub k_minus: Vec<String>,
    pub i_minus: Vec<String>,
    pub quotient_dims: Vec<usize>,
    /// Pure-power generators lying in the ideal of the others.
    pub redundant: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct GraphSection {
    pub vertices: usize,
    pub arrows: usize,
    pub rank: usize,
    pub tutte_polynomial: Vec<TutteTerm>,
    pub su2_poincare: Vec<Int>,
    /// Oriented cycles as `(arrow, ±1)` sequences, lowest-id arrow forwards.
    pub cycles: Vec<String>,
    /// Index triples into `cycles` with signs summing the classes to zero.
    pub theta_subgraphs: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct DeletionContractionSummary {
    pub label: String,
    pub points: usize,
    pub deletion_points: usize,
    pub contraction_points: usize,
    pub bijection: bool,
    pub dimension_identity: bool,
    pub exact: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Verdicts {
    pub saturation: bool,
    pub divided_power_generation: bool,
    /// `grDims == izHilbert`, and `== su2Poincare` for graphs.
    pub hilbert_series: bool,
    /// `|Z₋| == T_χ(0, 1)`.
    pub point_count: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tutte_duality: Option<bool>,
    pub ideal_vanishing: bool,
    pub quotient_dims: bool,
    pub deletion_contraction: bool,
    pub all: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct AnalysisReport {
    pub schema_version: u32,
    pub input: InputEcho,
    pub arrangement: ArrangementSummary,
    pub cocircuits: Vec<CocircuitRow>,
    pub interior_points: Vec<Vec<Int>>,
    pub tutte_polynomial: Vec<TutteTerm>,
    pub iz_hilbert: Vec<Int>,
    pub filtration: FiltrationSummary,
    pub ideals: IdealSummary,
    pub rees: Vec<ReesEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub graph: Option<GraphSection>,
    pub deletion_contraction: Vec<DeletionContractionSummary>,
    pub verdicts: Verdicts,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct AnalysisOptions {
    /// Skip the brute-force unimodularity check.
    pub assume_tu: bool,
    /// Fail with a size error if the filtration needs more degrees.
    pub max_degree: Option<usize>,
}

pub fn analyze_arrangement(va: &VectorArrangement, source: &str, opts: AnalysisOptions) -> Result<AnalysisReport> {
    let (va, tu) = if va.is_flagged_unimodular() {
        (va.clone(), "verified")
    } else if opts.assume_tu {
        (va.clone().assume_unimodular(), "assumed")
    } else {
        (ensure_totally_unimodular(va)?, "verified")
    };
    build(&va, tu, None, source, "arrangement", opts)
}

pub fn analyze_graph(g: &DirectedGraph, source: &str, opts: AnalysisOptions) -> Result<AnalysisReport> {
    build(&cographical_arrangement(g), "cographical", Some(g), source, "graph", opts)
}

fn build(
    va: &VectorArrangement,
    tu: &str,
    graph: Option<&DirectedGraph>,
    source: &str,
    kind: &str,
    opts: AnalysisOptions,
) -> Result<AnalysisReport> {
    let cocircuits = enumerate_cocircuits(va)?;
    let points = interior_lattice_points(va)?;
    let filtration = Filtration::from_points(&points, opts.max_degree)?;
    let tutte = tutte_of_arrangement(va)?;
    let iz = iz_hilbert_series(va)?;
    let gr: Vec<BigInt> = filtration.gr_dims().into_iter().map(BigInt::from).collect();

    let k_minus = k_minus_generators(va)?;
    let i_minus = i_minus_generators(va)?;
    let quotient_dims = power_ideal_quotient_dims(va, filtration.top_degree + 1)?;
    let redundant = redundant_generators(va)?;
    let mut trimmed_quotient = quotient_dims.clone();
    while trimmed_quotient.last() == Some(&0) {
        trimmed_quotient.pop();
    }

    let mut dc = Vec::new();
    let mut dc_ok = true;
    for (j, label) in va.labels().iter().enumerate() {
        if va.is_loop(j) || va.is_coloop(j) {
            continue;
        }
        let rec = deletion_contraction_check(va, label)?;
        dc_ok &= rec.holds();
        dc.push(DeletionContractionSummary {
            label: label.clone(),
            points: rec.partition.total,
            deletion_points: rec.partition.deletion,
            contraction_points: rec.partition.contraction,
            bijection: rec.partition.holds(),
            dimension_identity: rec.degrees.iter().all(|d| d.dimension_identity),
            exact: rec.maps_defined && rec.degrees.iter().all(|d| d.holds()),
        });
    }

    let mut hilbert_ok = gr == iz;
    let mut tutte_duality = None;
    let graph_section = match graph {
        Some(g) => {
            let t = tutte_polynomial(g);
            let su2 = su2_poincare_polynomial(g);
            hilbert_ok &= su2 == gr;
            tutte_duality = Some(t.swap_variables() == tutte);
            let cycles = enumerate_oriented_cycles(g);
            let thetas = theta_subgraphs(g, &cycles);
            Some(GraphSection {
                vertices: g.vertices().len(),
                arrows: g.arrows().len(),
                rank: graph_rank(g),
                tutte_polynomial: tutte_terms(&t),
                su2_poincare: ints(&su2),
                cycles: cycles.iter().map(|c| c.describe(g)).collect(),
                theta_subgraphs: thetas
                    .iter()
                    .map(|t| {
                        let parts: Vec<String> =
                            t.cycles.iter().zip(t.signs).map(|(c, s)| format!("{}{c}", if s > 0 { "+" } else { "-" })).collect();
                        parts.join(" ")
                    })
                    .collect(),
            })
        }
        None => None,
    };

    let verdicts = {
        let mut v = Verdicts {
            saturation: verify_saturation(&filtration),
            divided_power_generation: divided_power_generation_check(&filtration)?,
            hilbert_series: hilbert_ok,
            point_count: BigInt::from(points.len()) == tutte.eval(&BigInt::zero(), &BigInt::one()),
            tutte_duality,
            ideal_vanishing: verify_vanishing(&k_minus, &points),
            quotient_dims: trimmed_quotient == filtration.gr_dims(),
            deletion_contraction: dc_ok,
            all: false,
        };
        v.all = v.saturation
            && v.divided_power_generation
            && v.hilbert_series
            && v.point_count
            && v.tutte_duality.unwrap_or(true)
            && v.ideal_vanishing
            && v.quotient_dims
            && v.deletion_contraction;
        v
    };

    Ok(AnalysisReport {
        schema_version: SCHEMA_VERSION,
        input: InputEcho {
            kind: kind.to_string(),
            text: source.to_string(),
        },
        arrangement: ArrangementSummary {
            rank: va.rank(),
            size: va.len(),
            labels: va.labels().to_vec(),
            columns: columns_of(va.columns()),
            totally_unimodular: tu.to_string(),
        },
        cocircuits: cocircuits
            .iter()
            .map(|c| CocircuitRow {
                covector: ints(&c.covector),
                d_plus: c.d_plus,
                d_minus: c.d_minus,
            })
            .collect(),
        interior_points: points.points().iter().map(|z| small(z)).collect(),
        tutte_polynomial: tutte_terms(&tutte),
        iz_hilbert: ints(&iz),
        filtration: FiltrationSummary {
            point_count: filtration.point_count(),
            q_dims: filtration.q_dims.clone(),
            gr_dims: filtration.gr_dims(),
            saturation_indices: ints(&filtration.saturation_indices),
            top_degree: filtration.top_degree,
            z_lattice_bases: filtration
                .z_lattice_bases
                .iter()
                .enumerate()
                .map(|(i, h)| LatticeEntry {
                    degree: i,
                    rank: h.rank(),
                    basis: columns_of(&h.basis),
                    elementary_divisors: ints(&h.elementary_divisors),
                })
                .collect(),
        },
        ideals: IdealSummary {
            k_minus: k_minus.iter().map(|g| g.description()).collect(),
            i_minus: i_minus.iter().map(|g| g.description()).collect(),
            quotient_dims,
            redundant: redundant.iter().map(|&k| i_minus[k].description()).collect(),
        },
        rees: rees_data(&filtration)
            .into_iter()
            .map(|p| ReesEntry {
                weight: p.weight,
                topological_degree: p.topological_degree,
                rank: p.basis.cols(),
                basis: columns_of(&p.basis),
            })
            .collect(),
        graph: graph_section,
        deletion_contraction: dc,
        verdicts,
    })
}

impl AnalysisReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn from_json(s: &str) -> std::result::Result<Self, serde_json::Error> {
        serde_json::from_str(s)
    }
}

fn tuple(v: &[Int]) -> String {
    format!("({})", v.iter().map(ToString::to_string).collect::<Vec<_>>().join(", "))
}

fn list<T: fmt::Display>(v: &[T]) -> String {
    format!("[{}]", v.iter().map(ToString::to_string).collect::<Vec<_>>().join(", "))
}

fn pass(b: bool) -> &'static str {
    if b {
        "pass"
    } else {
        "FAIL"
    }
}

fn polynomial_text(terms: &[TutteTerm]) -> String {
    let mut p = BivariatePolynomial::zero();
    for t in terms {
        p = p.add(&BivariatePolynomial::monomial(t.x, t.y, t.coefficient.0.clone()));
    }
    p.to_string()
}

/// Left-aligned table with a header row, indented by two spaces.
fn table(out: &mut String, header: &[&str], rows: &[Vec<String>]) {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: Vec<String>| -> String {
        let padded: Vec<String> = cells.iter().zip(&widths).map(|(c, &w)| format!("{c:<w$}")).collect();
        format!("  {}", padded.join("  ").trim_end())
    };
    writeln!(out, "{}", line(header.iter().map(|h| h.to_string()).collect())).unwrap();
    for row in rows {
        writeln!(out, "{}", line(row.clone())).unwrap();
    }
}

/// Human-readable rendering with the same numbers as the JSON form.
pub fn render_text(r: &AnalysisReport) -> String {
    let mut out = String::new();
    let a = &r.arrangement;
    writeln!(
        out,
        "Arrangement: rank {}, {} elements, totally unimodular ({})",
        a.rank, a.size, a.totally_unimodular
    )
    .unwrap();
    let rows: Vec<Vec<String>> = a.labels.iter().zip(&a.columns).map(|(l, c)| vec![l.clone(), tuple(c)]).collect();
    table(&mut out, &["element", "vector"], &rows);

    writeln!(out, "\nCocircuits").unwrap();
    let rows: Vec<Vec<String>> = r
        .cocircuits
        .iter()
        .map(|c| vec![tuple(&c.covector), c.d_plus.to_string(), c.d_minus.to_string()])
        .collect();
    table(&mut out, &["covector", "d+", "d-"], &rows);

    writeln!(out, "\nInterior points ({})", r.interior_points.len()).unwrap();
    for chunk in r.interior_points.chunks(8) {
        writeln!(out, "  {}", chunk.iter().map(|p| tuple(p)).collect::<Vec<_>>().join(" ")).unwrap();
    }

    writeln!(out, "\nTutte polynomial: {}", polynomial_text(&r.tutte_polynomial)).unwrap();
    writeln!(out, "IZ Hilbert series: {}", list(&r.iz_hilbert)).unwrap();

    let f = &r.filtration;
    writeln!(out, "\nFiltration (top degree {})", f.top_degree).unwrap();
    let rows: Vec<Vec<String>> = (0..f.q_dims.len())
        .map(|i| {
            vec![
                i.to_string(),
                f.q_dims[i].to_string(),
                f.gr_dims[i].to_string(),
                f.saturation_indices[i].to_string(),
                list(&f.z_lattice_bases[i].elementary_divisors),
            ]
        })
        .collect();
    table(&mut out, &["degree", "dim R_i", "gr", "saturation index", "elementary divisors"], &rows);

    writeln!(out, "\nRees pieces").unwrap();
    let rows: Vec<Vec<String>> = r
        .rees
        .iter()
        .map(|p| vec![p.weight.to_string(), p.topological_degree.to_string(), p.rank.to_string()])
        .collect();
    table(&mut out, &["u-weight", "topological degree", "rank"], &rows);

    writeln!(out, "\nIdeal generators").unwrap();
    let rows: Vec<Vec<String>> = r
        .ideals
        .k_minus
        .iter()
        .zip(&r.ideals.i_minus)
        .map(|(k, i)| {
            let red = if r.ideals.redundant.contains(i) { "yes" } else { "no" };
            vec![k.clone(), i.clone(), red.to_string()]
        })
        .collect();
    table(&mut out, &["binomial", "pure power", "redundant"], &rows);
    writeln!(out, "  power ideal quotient dims: {}", list(&r.ideals.quotient_dims)).unwrap();

    if let Some(g) = &r.graph {
        writeln!(out, "\nGraph: {} vertices, {} arrows, rank {}", g.vertices, g.arrows, g.rank).unwrap();
        writeln!(out, "  Tutte polynomial: {}", polynomial_text(&g.tutte_polynomial)).unwrap();
        writeln!(out, "  SU(2) Poincare polynomial: {}", list(&g.su2_poincare)).unwrap();
        writeln!(out, "  oriented cycles: {}", g.cycles.len()).unwrap();
        for (i, c) in g.cycles.iter().enumerate() {
            writeln!(out, "    {i}: {c}").unwrap();
        }
        writeln!(out, "  theta subgraphs: {}", g.theta_subgraphs.len()).unwrap();
        for t in &g.theta_subgraphs {
            writeln!(out, "    {t}").unwrap();
        }
    }

    writeln!(out, "\nDeletion and contraction").unwrap();
    let rows: Vec<Vec<String>> = r
        .deletion_contraction
        .iter()
        .map(|d| {
            vec![
                d.label.clone(),
                format!("{} = {} + {}", d.points, d.deletion_points, d.contraction_points),
                pass(d.bijection).to_string(),
                pass(d.dimension_identity).to_string(),
                pass(d.exact).to_string(),
            ]
        })
        .collect();
    table(&mut out, &["element", "points", "bijection", "dimensions", "exact"], &rows);

    let v = &r.verdicts;
    writeln!(out, "\nVerdicts").unwrap();
    let mut rows = vec![
        vec!["saturation".to_string(), pass(v.saturation).to_string()],
        vec!["divided power generation".to_string(), pass(v.divided_power_generation).to_string()],
        vec!["Hilbert series".to_string(), pass(v.hilbert_series).to_string()],
        vec!["point count".to_string(), pass(v.point_count).to_string()],
    ];
    if let Some(t) = v.tutte_duality {
        rows.push(vec!["Tutte duality".to_string(), pass(t).to_string()]);
    }
    rows.extend([
        vec!["ideal vanishing".to_string(), pass(v.ideal_vanishing).to_string()],
        vec!["quotient dimensions".to_string(), pass(v.quotient_dims).to_string()],
        vec!["deletion-contraction".to_string(), pass(v.deletion_contraction).to_string()],
        vec!["all".to_string(), pass(v.all).to_string()],
    ]);
    table(&mut out, &["check", "result"], &rows);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::{parse_arrangement, parse_graph};
    use crate::graph::random_connected_multigraph;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    const HOUSE: &str = "vertex a\nvertex b\nvertex c\nvertex d\nvertex e\n\
arrow 1 c b\narrow 2 b a\narrow 3 a d\narrow 4 d c\narrow 5 c e\narrow 6 e d\n";
    const HOUSE_MATRIX: &str = "rank 2\ncol 1 1 0\ncol 2 1 0\ncol 3 1 0\ncol 4 1 1\ncol 5 0 1\ncol 6 0 1\n";

    #[test]
    fn house_graph_report() {
        let r = analyze_graph(&parse_graph(HOUSE).unwrap(), HOUSE, AnalysisOptions::default()).unwrap();
        assert_eq!(r.filtration.gr_dims, vec![1, 2, 2, 1]);
        assert_eq!(r.filtration.q_dims, vec![1, 3, 5, 6]);
        assert!(r.verdicts.all, "{:?}", r.verdicts);
        assert_eq!(r.verdicts.tutte_duality, Some(true));
        assert_eq!(r.graph.as_ref().unwrap().theta_subgraphs.len(), 1);
        let text = render_text(&r);
        assert!(text.contains("SU(2) Poincare polynomial: [1, 2, 2, 1]"));
    }

    #[test]
    fn graph_and_matrix_routes_agree() {
        let g = analyze_graph(&parse_graph(HOUSE).unwrap(), HOUSE, AnalysisOptions::default()).unwrap();
        let m = analyze_arrangement(&parse_arrangement(HOUSE_MATRIX).unwrap(), HOUSE_MATRIX, AnalysisOptions::default())
            .unwrap();
        assert_eq!(g.filtration.q_dims, m.filtration.q_dims);
        assert_eq!(g.filtration.saturation_indices, m.filtration.saturation_indices);
        assert_eq!(g.iz_hilbert, m.iz_hilbert);
        assert_eq!(g.tutte_polynomial, m.tutte_polynomial);
        assert_eq!(g.ideals.quotient_dims, m.ideals.quotient_dims);
        assert_eq!(g.interior_points.len(), m.interior_points.len());
        assert!(m.graph.is_none() && m.verdicts.tutte_duality.is_none());
        assert!(m.verdicts.all);
        assert_eq!(m.interior_points, vec![small(&[1, 1]), small(&[1, 2]), small(&[2, 1]), small(&[2, 2]), small(&[3, 1]), small(&[3, 2])]);
    }

    #[test]
    fn self_loop_is_vacuous_pass() {
        let src = "vertex a\nvertex b\narrow 1 a b\narrow 2 b a\narrow 3 a a\n";
        let r = analyze_graph(&parse_graph(src).unwrap(), src, AnalysisOptions::default()).unwrap();
        assert_eq!(r.filtration.point_count, 0);
        assert!(r.iz_hilbert.is_empty());
        assert!(r.verdicts.all);
    }

    #[test]
    fn non_unimodular_arrangement_is_rejected() {
        let va = parse_arrangement("rank 2\ncol a 1 0\ncol b 1 2\ncol c 0 1\n").unwrap();
        assert!(matches!(
            analyze_arrangement(&va, "", AnalysisOptions::default()),
            Err(crate::Error::NotTotallyUnimodular(_))
        ));
    }

    #[test]
    fn big_integers_become_strings() {
        let big = Int(BigInt::from(1u64 << 53) + 1);
        assert_eq!(serde_json::to_string(&big).unwrap(), "\"9007199254740993\"");
        assert_eq!(serde_json::to_string(&Int(BigInt::from(-(1i64 << 53)))).unwrap(), "-9007199254740992");
        let back: Int = serde_json::from_str("\"9007199254740993\"").unwrap();
        assert_eq!(back, big);
    }

    #[test]
    fn json_key_order_is_fixed() {
        let r = analyze_graph(&parse_graph(HOUSE).unwrap(), HOUSE, AnalysisOptions::default()).unwrap();
        let json = r.to_json();
        let keys = [
            "\"schemaVersion\"",
            "\"input\"",
            "\"arrangement\"",
            "\"cocircuits\"",
            "\"interiorPoints\"",
            "\"tuttePolynomial\"",
            "\"izHilbert\"",
            "\"filtration\"",
            "\"ideals\"",
            "\"rees\"",
            "\"graph\"",
            "\"deletionContraction\"",
            "\"verdicts\"",
        ];
        let pos: Vec<usize> = keys.iter().map(|k| json.find(&format!("\n  {k}:")).unwrap()).collect();
        assert!(pos.windows(2).all(|w| w[0] < w[1]));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(16))]

        #[test]
        fn reports_round_trip(seed in any::<u64>()) {
            let g = random_connected_multigraph(&mut ChaCha8Rng::seed_from_u64(seed), 6);
            let r = analyze_graph(&g, "", AnalysisOptions::default()).unwrap();
            let back = AnalysisReport::from_json(&r.to_json()).unwrap();
            prop_assert_eq!(&back, &r);
            prop_assert!(r.verdicts.all);
        }
    }
}
