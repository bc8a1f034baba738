//! Seeded random cross-checks over small connected multigraphs.

use num_bigint::BigInt;
use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::format::graph_to_text;
use crate::graph::{random_connected_multigraph, tutte_polynomial, DirectedGraph};
use crate::report::{analyze_graph, AnalysisOptions, Verdicts};

pub const SUITE_MAX_EDGES: usize = 9;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct FailedInstance {
    pub index: usize,
    pub reason: String,
    /// The graph in the text input format, for replay.
    pub graph: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SuiteSummary {
    pub seed: u64,
    pub count: usize,
    pub max_edges: usize,
    pub passed: usize,
    pub failed: usize,
    pub first_failure: Option<FailedInstance>,
}

/// The graphs the suite checks, in order. The stream depends only on the
/// seed and the edge bound.
pub fn suite_instances(seed: u64, count: usize, max_edges: usize) -> Vec<DirectedGraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_connected_multigraph(&mut rng, max_edges)).collect()
}

fn failed_checks(v: &Verdicts) -> Vec<&'static str> {
    let mut out = Vec::new();
    let checks = [
        (v.saturation, "saturation"),
        (v.divided_power_generation, "divided power generation"),
        (v.hilbert_series, "Hilbert series"),
        (v.point_count, "point count"),
        (v.tutte_duality.unwrap_or(true), "Tutte duality"),
        (v.ideal_vanishing, "ideal vanishing"),
        (v.quotient_dims, "quotient dimensions"),
        (v.deletion_contraction, "deletion-contraction"),
    ];
    for (ok, name) in checks {
        if !ok {
            out.push(name);
        }
    }
    out
}

/// Why the graph fails the full analysis, or `None` if it passes.
pub fn check_instance(g: &DirectedGraph) -> Option<String> {
    let report = match analyze_graph(g, "", AnalysisOptions::default()) {
        Ok(r) => r,
        Err(e) => return Some(e.to_string()),
    };
    let mut failed = failed_checks(&report.verdicts);
    // Σ gr = |Z₋| = T_Γ(1, 0)
    let total: usize = report.filtration.gr_dims.iter().sum();
    let t10 = tutte_polynomial(g).eval(&BigInt::from(1), &BigInt::zero());
    if total != report.filtration.point_count || BigInt::from(total) != t10 {
        failed.push("total dimension");
    }
    (!failed.is_empty()).then(|| failed.join(", "))
}

pub fn run_random_suite(seed: u64, count: usize, max_edges: usize) -> Result<SuiteSummary> {
    if max_edges > SUITE_MAX_EDGES {
        return Err(Error::size("random suite edge bound", SUITE_MAX_EDGES, max_edges));
    }
    if max_edges == 0 && count > 0 {
        return Err(Error::InvalidGraph("random suite needs at least one edge".into()));
    }
    let mut summary = SuiteSummary {
        seed,
        count,
        max_edges,
        passed: 0,
        failed: 0,
        first_failure: None,
    };
    for (index, g) in suite_instances(seed, count, max_edges).into_iter().enumerate() {
        match check_instance(&g) {
            None => summary.passed += 1,
            Some(reason) => {
                summary.failed += 1;
                summary.first_failure.get_or_insert(FailedInstance {
                    index,
                    reason,
                    graph: graph_to_text(&g),
                });
            }
        }
    }
    Ok(summary)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_suite_passes() {
        let s = run_random_suite(1, 20, 7).unwrap();
        assert_eq!((s.passed, s.failed), (20, 0));
        assert!(s.first_failure.is_none());
    }

    #[test]
    fn empty_suite() {
        let s = run_random_suite(1, 0, 7).unwrap();
        assert_eq!((s.passed, s.failed), (0, 0));
    }

    #[test]
    fn edge_bound_is_enforced() {
        assert!(matches!(run_random_suite(1, 1, 10), Err(Error::SizeExceeded { .. })));
    }

    #[test]
    fn instances_are_deterministic() {
        assert_eq!(suite_instances(7, 10, 9), suite_instances(7, 10, 9));
        assert_ne!(suite_instances(7, 10, 9), suite_instances(8, 10, 9));
    }
}
