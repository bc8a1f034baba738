//! Directed multigraphs, their cycle spaces and cographical arrangements,
//! oriented cycles, and Tutte polynomials.
//!
//! Naming note: a bridge of the graph is a loop of its cographical
//! arrangement, and a self-loop of the graph is a coloop of it. Wherever
//! "loop" and "coloop" appear without qualification they refer to the
//! arrangement.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::Rng;

use crate::arrangement::VectorArrangement;
use crate::error::{Error, Result};
use crate::linalg::{column_hnf, saturation_index, IntMatrix};

/// Largest ground set accepted by the subset-sum Tutte computation.
pub const ARRANGEMENT_TUTTE_MAX: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub id: String,
    pub tail: usize,
    pub head: usize,
}

impl Arrow {
    pub fn is_self_loop(&self) -> bool {
        self.tail == self.head
    }
}

/// Directed graph with labeled vertices and arrows; parallel arrows and
/// self-loops are allowed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirectedGraph {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
}

/// Orders arrow ids numerically when both are integers, otherwise as strings.
pub fn compare_ids(a: &str, b: &str) -> Ordering {
    match (a.parse::<u128>(), b.parse::<u128>()) {
        (Ok(x), Ok(y)) => x.cmp(&y).then_with(|| a.cmp(b)),
        (Ok(_), Err(_)) => Ordering::Less,
        (Err(_), Ok(_)) => Ordering::Greater,
        (Err(_), Err(_)) => a.cmp(b),
    }
}

impl DirectedGraph {
    /// Builds a graph from vertex labels and `(id, tail, head)` triples.
    pub fn new(vertices: Vec<String>, arrows: Vec<(String, String, String)>) -> Result<Self> {
        let mut index = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if index.insert(v.clone(), i).is_some() {
                return Err(Error::InvalidGraph(format!("duplicate vertex {v}")));
            }
        }
        let mut ids = std::collections::HashSet::new();
        let mut out = Vec::with_capacity(arrows.len());
        for (id, t, h) in arrows {
            if !ids.insert(id.clone()) {
                return Err(Error::InvalidGraph(format!("duplicate arrow {id}")));
            }
            let tail = *index
                .get(&t)
                .ok_or_else(|| Error::InvalidGraph(format!("arrow {id}: unknown vertex {t}")))?;
            let head = *index
                .get(&h)
                .ok_or_else(|| Error::InvalidGraph(format!("arrow {id}: unknown vertex {h}")))?;
            out.push(Arrow { id, tail, head });
        }
        Ok(DirectedGraph {
            vertices,
            arrows: out,
        })
    }

    /// Graph on vertices `0..n` with arrows `1..=m` given as `(tail, head)` pairs.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let vertices = (0..n).map(|i| i.to_string()).collect();
        let arrows = edges
            .iter()
            .enumerate()
            .map(|(k, &(t, h))| ((k + 1).to_string(), t.to_string(), h.to_string()))
            .collect();
        DirectedGraph::new(vertices, arrows)
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow_index(&self, id: &str) -> Result<usize> {
        self.arrows
            .iter()
            .position(|a| a.id == id)
            .ok_or_else(|| Error::UnknownLabel(id.to_string()))
    }

    /// Arrow indices sorted by id.
    pub fn arrow_order(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.arrows.len()).collect();
        order.sort_by(|&a, &b| compare_ids(&self.arrows[a].id, &self.arrows[b].id));
        order
    }

    /// Same graph with the direction of the given arrows flipped.
    pub fn reorient(&self, flip: &[bool]) -> DirectedGraph {
        let mut g = self.clone();
        for (a, &f) in g.arrows.iter_mut().zip(flip) {
            if f {
                std::mem::swap(&mut a.tail, &mut a.head);
            }
        }
        g
    }

    pub fn delete_arrow(&self, idx: usize) -> DirectedGraph {
        let mut g = self.clone();
        g.arrows.remove(idx);
        g
    }

    /// Identifies the endpoints of an arrow and removes it; the merged vertex
    /// keeps the tail's label.
    pub fn contract_arrow(&self, idx: usize) -> DirectedGraph {
        let (t, h) = (self.arrows[idx].tail, self.arrows[idx].head);
        let remap = |v: usize| -> usize {
            let v = if v == h { t } else { v };
            if h != t && v > h {
                v - 1
            } else {
                v
            }
        };
        let vertices = self
            .vertices
            .iter()
            .enumerate()
            .filter(|&(i, _)| h == t || i != h)
            .map(|(_, v)| v.clone())
            .collect();
        let arrows = self
            .arrows
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != idx)
            .map(|(_, a)| Arrow {
                id: a.id.clone(),
                tail: remap(a.tail),
                head: remap(a.head),
            })
            .collect();
        DirectedGraph { vertices, arrows }
    }

    /// Vertex-by-arrow incidence matrix: `+1` at the head, `-1` at the tail.
    pub fn incidence_matrix(&self) -> IntMatrix {
        let (n, m) = (self.vertices.len(), self.arrows.len());
        let mut inc = IntMatrix::zeros(n, m);
        for (j, a) in self.arrows.iter().enumerate() {
            if a.is_self_loop() {
                continue;
            }
            inc.set(a.head, j, BigInt::one());
            inc.set(a.tail, j, -BigInt::one());
        }
        inc
    }

    pub fn is_cycle_vector(&self, c: &[i64]) -> bool {
        let v: Vec<BigInt> = c.iter().map(|&x| BigInt::from(x)).collect();
        self.incidence_matrix().mul_vec(&v).iter().all(Zero::is_zero)
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut y = x;
        while self.parent[y] != r {
            let next = self.parent[y];
            self.parent[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra.max(rb)] = ra.min(rb);
        true
    }
}

/// `|V|` minus the number of connected components.
pub fn graph_rank(g: &DirectedGraph) -> usize {
    let mut uf = UnionFind::new(g.vertices.len());
    g.arrows.iter().filter(|a| uf.union(a.tail, a.head)).count()
}

/// Arrows of the spanning forest chosen greedily in increasing id order.
pub fn spanning_forest(g: &DirectedGraph) -> Vec<usize> {
    let mut uf = UnionFind::new(g.vertices.len());
    let mut tree: Vec<usize> = g
        .arrow_order()
        .into_iter()
        .filter(|&a| uf.union(g.arrows[a].tail, g.arrows[a].head))
        .collect();
    tree.sort_unstable();
    tree
}

/// A Z-basis of the cycle lattice `H_1(Γ; Z) ⊂ Z^A`, one basis cycle per row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleSpace {
    basis: IntMatrix,
}

impl CycleSpace {
    /// Fundamental cycles of the greedy spanning forest, one per non-tree arrow
    /// in id order, each oriented along its non-tree arrow.
    pub fn fundamental(g: &DirectedGraph) -> Self {
        let m = g.arrows.len();
        let tree = spanning_forest(g);
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); g.vertices.len()];
        for &a in &tree {
            adj[g.arrows[a].tail].push(a);
            adj[g.arrows[a].head].push(a);
        }
        let mut rows = Vec::new();
        for e in g.arrow_order() {
            if tree.binary_search(&e).is_ok() {
                continue;
            }
            let mut c = vec![BigInt::zero(); m];
            c[e] = BigInt::one();
            let arrow = &g.arrows[e];
            for (a, s) in tree_path(g, &adj, arrow.head, arrow.tail) {
                c[a] += BigInt::from(s);
            }
            rows.push(c);
        }
        CycleSpace {
            basis: IntMatrix::from_rows(m, &rows),
        }
    }

    /// Uses the given cycle vectors as the basis, after checking that they are
    /// cycles and form a Z-basis of the full cycle lattice.
    pub fn from_cycles(g: &DirectedGraph, cycles: &[Vec<i64>]) -> Result<Self> {
        let m = g.arrows.len();
        let expected = m - graph_rank(g);
        if cycles.len() != expected {
            return Err(Error::InvalidGraph(format!(
                "cycle lattice has rank {expected}, got {} cycles",
                cycles.len()
            )));
        }
        for c in cycles {
            if c.len() != m || !g.is_cycle_vector(c) {
                return Err(Error::InvalidGraph(format!("{c:?} is not a cycle vector")));
            }
        }
        let rows: Vec<Vec<BigInt>> = cycles
            .iter()
            .map(|c| c.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        let basis = IntMatrix::from_rows(m, &rows);
        // full rank and saturated in Z^A means it spans all of H_1
        if basis.rank() != expected || !saturation_index(&basis.transpose(), m)?.is_one() {
            return Err(Error::InvalidGraph("cycles do not form a basis of the cycle lattice".into()));
        }
        Ok(CycleSpace { basis })
    }

    pub fn rank(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    /// Coordinates of a cycle vector in this basis.
    pub fn coordinates(&self, c: &[i64]) -> Option<Vec<BigInt>> {
        let v: Vec<BigInt> = c.iter().map(|&x| BigInt::from(x)).collect();
        column_hnf(&self.basis.transpose()).preimage(&v)
    }
}

/// Signed arrows along the unique forest path from `from` to `to`.
fn tree_path(g: &DirectedGraph, adj: &[Vec<usize>], from: usize, to: usize) -> Vec<(usize, i64)> {
    let mut prev: Vec<Option<(usize, usize)>> = vec![None; g.vertices.len()];
    let mut seen = vec![false; g.vertices.len()];
    let mut queue = std::collections::VecDeque::from([from]);
    seen[from] = true;
    while let Some(v) = queue.pop_front() {
        if v == to {
            break;
        }
        for &a in &adj[v] {
            let arrow = &g.arrows[a];
            let w = if arrow.tail == v { arrow.head } else { arrow.tail };
            if !seen[w] {
                seen[w] = true;
                prev[w] = Some((v, a));
                queue.push_back(w);
            }
        }
    }
    let mut path = Vec::new();
    let mut v = to;
    while v != from {
        let (u, a) = prev[v].expect("endpoints lie in one tree component");
        let sign = if g.arrows[a].tail == u { 1 } else { -1 };
        path.push((a, sign));
        v = u;
    }
    path.reverse();
    path
}

/// The cographical arrangement in `H^1(Γ; Z)`, coordinatized by the
/// fundamental cycles of the greedy spanning forest.
pub fn cographical_arrangement(g: &DirectedGraph) -> VectorArrangement {
    cographical_arrangement_in(g, &CycleSpace::fundamental(g))
}

/// The cographical arrangement with coordinates given by a chosen cycle
/// basis: column `a` holds the coefficient of `a` in each basis cycle.
pub fn cographical_arrangement_in(g: &DirectedGraph, space: &CycleSpace) -> VectorArrangement {
    let labels = g.arrows.iter().map(|a| a.id.clone()).collect();
    VectorArrangement::new(space.rank(), labels, space.basis.clone())
        .expect("a cycle basis spans its own lattice")
        .assume_unimodular()
}

/// A simple cycle traversed in a fixed direction: arrow `i` is used forwards
/// when its sign is `+1` and backwards when `-1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrientedCycle {
    /// `(arrow index, sign)` in cyclic order.
    pub steps: Vec<(usize, i8)>,
}

impl OrientedCycle {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn plus(&self) -> Vec<usize> {
        self.steps.iter().filter(|s| s.1 > 0).map(|s| s.0).sorted().collect()
    }

    pub fn minus(&self) -> Vec<usize> {
        self.steps.iter().filter(|s| s.1 < 0).map(|s| s.0).sorted().collect()
    }

    pub fn opposite(&self) -> OrientedCycle {
        OrientedCycle {
            steps: self.steps.iter().rev().map(|&(a, s)| (a, -s)).collect(),
        }
    }

    /// `α_C = Σ ε_i a_i` as a vector in `Z^A`.
    pub fn edge_vector(&self, arrows: usize) -> Vec<i64> {
        let mut v = vec![0; arrows];
        for &(a, s) in &self.steps {
            v[a] += i64::from(s);
        }
        v
    }

    /// `α_C` in the coordinates of a cycle basis.
    pub fn class_in(&self, space: &CycleSpace) -> Vec<BigInt> {
        space
            .coordinates(&self.edge_vector(space.basis.cols()))
            .expect("a cycle lies in the cycle lattice")
    }

    /// Checks the defining conditions against a graph.
    pub fn is_valid_in(&self, g: &DirectedGraph) -> bool {
        let k = self.steps.len();
        if k == 0 {
            return false;
        }
        let head = |(a, s): (usize, i8)| if s > 0 { g.arrows[a].head } else { g.arrows[a].tail };
        let tail = |(a, s): (usize, i8)| if s > 0 { g.arrows[a].tail } else { g.arrows[a].head };
        for i in 0..k {
            if head(self.steps[i]) != tail(self.steps[(i + 1) % k]) {
                return false;
            }
        }
        let heads: Vec<usize> = self.steps.iter().map(|&s| head(s)).collect();
        if heads.iter().unique().count() != k {
            return false;
        }
        !(k == 2 && self.steps[0].0 == self.steps[1].0)
    }

    pub fn describe(&self, g: &DirectedGraph) -> String {
        let parts: Vec<String> = self
            .steps
            .iter()
            .map(|&(a, s)| format!("({},{})", g.arrows[a].id, s))
            .collect();
        format!("{{{}}}", parts.join(","))
    }
}

/// All simple cycles, one per opposite pair: the representative runs its
/// lowest-id arrow forwards. Found by depth-first search from each anchor
/// arrow over arrows of larger id.
pub fn enumerate_oriented_cycles(g: &DirectedGraph) -> Vec<OrientedCycle> {
    let order = g.arrow_order();
    let mut position = vec![0; order.len()];
    for (p, &a) in order.iter().enumerate() {
        position[a] = p;
    }
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); g.vertices.len()];
    for &a in &order {
        let arrow = &g.arrows[a];
        if !arrow.is_self_loop() {
            incident[arrow.tail].push(a);
            incident[arrow.head].push(a);
        }
    }
    let mut out = Vec::new();
    for (p, &anchor) in order.iter().enumerate() {
        let arrow = &g.arrows[anchor];
        if arrow.is_self_loop() {
            out.push(OrientedCycle {
                steps: vec![(anchor, 1)],
            });
            continue;
        }
        let mut visited = vec![false; g.vertices.len()];
        visited[arrow.tail] = true;
        visited[arrow.head] = true;
        let mut path = vec![(anchor, 1i8)];
        extend_cycles(g, &incident, &position, p, arrow.tail, arrow.head, &mut visited, &mut path, &mut out);
    }
    out
}

#[allow(clippy::too_many_arguments)]
fn extend_cycles(
    g: &DirectedGraph,
    incident: &[Vec<usize>],
    position: &[usize],
    anchor_pos: usize,
    start: usize,
    at: usize,
    visited: &mut [bool],
    path: &mut Vec<(usize, i8)>,
    out: &mut Vec<OrientedCycle>,
) {
    for &a in &incident[at] {
        if position[a] <= anchor_pos {
            continue;
        }
        let arrow = &g.arrows[a];
        let (next, sign) = if arrow.tail == at { (arrow.head, 1) } else { (arrow.tail, -1) };
        if next == start {
            let mut steps = path.clone();
            steps.push((a, sign));
            out.push(OrientedCycle { steps });
        } else if !visited[next] {
            visited[next] = true;
            path.push((a, sign));
            extend_cycles(g, incident, position, anchor_pos, start, next, visited, path, out);
            path.pop();
            visited[next] = false;
        }
    }
}

/// Three cycle representatives whose classes cancel after choosing signs:
/// `signs[0] α_{C_0} + signs[1] α_{C_1} + signs[2] α_{C_2} = 0`, with
/// `signs[0] = +1`. A sign of `-1` stands for the opposite cycle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaSubgraph {
    pub cycles: [usize; 3],
    pub signs: [i8; 3],
}

/// All oriented Θ-subgraphs among the given cycle representatives.
pub fn theta_subgraphs(g: &DirectedGraph, cycles: &[OrientedCycle]) -> Vec<ThetaSubgraph> {
    let m = g.arrows.len();
    let vecs: Vec<Vec<i64>> = cycles.iter().map(|c| c.edge_vector(m)).collect();
    let mut out = Vec::new();
    for (i, j, k) in (0..cycles.len()).tuple_combinations() {
        for (sj, sk) in [(1i8, 1i8), (1, -1), (-1, 1), (-1, -1)] {
            let zero = (0..m).all(|e| vecs[i][e] + i64::from(sj) * vecs[j][e] + i64::from(sk) * vecs[k][e] == 0);
            if zero {
                out.push(ThetaSubgraph {
                    cycles: [i, j, k],
                    signs: [1, sj, sk],
                });
            }
        }
    }
    out
}

/// Polynomial in `x, y` with integer coefficients; zero coefficients are not stored.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct BivariatePolynomial {
    coeffs: BTreeMap<(u32, u32), BigInt>,
}

impl BivariatePolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, 0, BigInt::one())
    }

    pub fn monomial(i: u32, j: u32, c: BigInt) -> Self {
        let mut p = Self::default();
        if !c.is_zero() {
            p.coeffs.insert((i, j), c);
        }
        p
    }

    pub fn from_terms(terms: &[((u32, u32), i64)]) -> Self {
        terms
            .iter()
            .fold(Self::zero(), |acc, &((i, j), c)| acc.add(&Self::monomial(i, j, c.into())))
    }

    pub fn coefficient(&self, i: u32, j: u32) -> BigInt {
        self.coeffs.get(&(i, j)).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &BigInt)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&k, c) in &other.coeffs {
            let slot = out.coeffs.entry(k).or_insert_with(BigInt::zero);
            *slot += c;
            if slot.is_zero() {
                out.coeffs.remove(&k);
            }
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (&(a, b), c) in &self.coeffs {
            for (&(d, e), f) in &other.coeffs {
                out = out.add(&Self::monomial(a + d, b + e, c * f));
            }
        }
        out
    }

    /// Multiplies by `x^i y^j`.
    pub fn shift(&self, i: u32, j: u32) -> Self {
        BivariatePolynomial {
            coeffs: self.coeffs.iter().map(|(&(a, b), c)| ((a + i, b + j), c.clone())).collect(),
        }
    }

    /// `T(y, x)`
    pub fn swap_variables(&self) -> Self {
        BivariatePolynomial {
            coeffs: self.coeffs.iter().map(|(&(a, b), c)| ((b, a), c.clone())).collect(),
        }
    }

    pub fn eval(&self, x: &BigInt, y: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .map(|(&(a, b), c)| c * num_traits::pow(x.clone(), a as usize) * num_traits::pow(y.clone(), b as usize))
            .sum()
    }
}

impl fmt::Display for BivariatePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let var = |name: &str, e: u32| match e {
            0 => String::new(),
            1 => name.to_string(),
            _ => format!("{name}^{e}"),
        };
        let mut first = true;
        for (&(a, b), c) in self.coeffs.iter().rev() {
            let mono = [var("x", a), var("y", b)].iter().filter(|s| !s.is_empty()).join("*");
            let neg = c < &BigInt::zero();
            let mag = if neg { -c.clone() } else { c.clone() };
            let body = match (mono.is_empty(), mag.is_one()) {
                (true, _) => mag.to_string(),
                (false, true) => mono,
                (false, false) => format!("{mag}*{mono}"),
            };
            if first {
                write!(f, "{}{}", if neg { "-" } else { "" }, body)?;
            } else {
                write!(f, " {} {}", if neg { "-" } else { "+" }, body)?;
            }
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for BivariatePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

type EdgeList = Vec<(usize, usize)>;

/// Vertex relabeling by iterated degree refinement, ties broken by the old
/// label. The sorted relabeled edge list is an exact encoding of the graph, so
/// equal keys always mean isomorphic graphs.
fn canonical_key(edges: &[(usize, usize)]) -> EdgeList {
    let mut used: Vec<usize> = edges.iter().flat_map(|&(u, v)| [u, v]).collect();
    used.sort_unstable();
    used.dedup();
    let local = |v: usize| used.binary_search(&v).unwrap();
    let n = used.len();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(u, v) in edges {
        adj[local(u)].push(local(v));
        adj[local(v)].push(local(u));
    }
    let mut color: Vec<usize> = adj.iter().map(Vec::len).collect();
    loop {
        let sig: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|v| (color[v], adj[v].iter().map(|&w| color[w]).sorted().collect()))
            .collect();
        let palette: Vec<&(usize, Vec<usize>)> = sig.iter().sorted().dedup().collect();
        let next: Vec<usize> = sig.iter().map(|s| palette.binary_search(&s).unwrap()).collect();
        let classes = |c: &[usize]| c.iter().unique().count();
        let stable = classes(&next) == classes(&color);
        color = next;
        if stable {
            break;
        }
    }
    let order: Vec<usize> = (0..n).sorted_by_key(|&v| (color[v], v)).collect();
    let mut label = vec![0; n];
    for (new, &old) in order.iter().enumerate() {
        label[old] = new;
    }
    edges
        .iter()
        .map(|&(u, v)| {
            let (a, b) = (label[local(u)], label[local(v)]);
            (a.min(b), a.max(b))
        })
        .sorted()
        .collect()
}

fn is_bridge(edges: &[(usize, usize)], k: usize, vertex_bound: usize) -> bool {
    let (u, v) = edges[k];
    if u == v {
        return false;
    }
    let mut uf = UnionFind::new(vertex_bound);
    for (i, &(a, b)) in edges.iter().enumerate() {
        if i != k {
            uf.union(a, b);
        }
    }
    uf.find(u) != uf.find(v)
}

fn contract_edge(edges: &[(usize, usize)], k: usize) -> EdgeList {
    let (keep, gone) = edges[k];
    edges
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != k)
        .map(|(_, &(a, b))| {
            let f = |x: usize| if x == gone { keep } else { x };
            (f(a), f(b))
        })
        .collect()
}

fn tutte_rec(edges: EdgeList, memo: &mut HashMap<EdgeList, BivariatePolynomial>) -> BivariatePolynomial {
    let loops = edges.iter().filter(|&&(u, v)| u == v).count() as u32;
    let mut edges: EdgeList = edges.into_iter().filter(|&(u, v)| u != v).collect();
    let bound = edges.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(0);
    let mut bridges = 0u32;
    while let Some(k) = (0..edges.len()).find(|&k| is_bridge(&edges, k, bound)) {
        edges = contract_edge(&edges, k);
        bridges += 1;
    }
    if edges.is_empty() {
        return BivariatePolynomial::monomial(bridges, loops, BigInt::one());
    }
    let key = canonical_key(&edges);
    if let Some(hit) = memo.get(&key) {
        return hit.shift(bridges, loops);
    }
    // edges[0] is neither a loop nor a bridge here
    let deleted: EdgeList = edges[1..].to_vec();
    let contracted = contract_edge(&edges, 0);
    let t = tutte_rec(deleted, memo).add(&tutte_rec(contracted, memo));
    memo.insert(key, t.clone());
    t.shift(bridges, loops)
}

/// Tutte polynomial of the graph by memoized deletion-contraction.
pub fn tutte_polynomial(g: &DirectedGraph) -> BivariatePolynomial {
    let edges: EdgeList = g.arrows.iter().map(|a| (a.tail, a.head)).collect();
    tutte_rec(edges, &mut HashMap::new())
}

/// Coefficients of `t^{rk Γ} T_Γ(1/t, 0)`, lowest degree first, with trailing
/// zeros removed (the zero polynomial is the empty list).
pub fn su2_poincare_polynomial(g: &DirectedGraph) -> Vec<BigInt> {
    let rk = graph_rank(g) as u32;
    let t = tutte_polynomial(g);
    let mut out = vec![BigInt::zero(); rk as usize + 1];
    for (&(i, j), c) in t.terms() {
        if j == 0 {
            assert!(i <= rk, "x-degree of the Tutte polynomial exceeds the rank");
            out[(rk - i) as usize] += c;
        }
    }
    trim(out)
}

pub(crate) fn trim(mut v: Vec<BigInt>) -> Vec<BigInt> {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    v
}

/// Tutte polynomial of the column matroid as the corank-nullity sum over all
/// subsets of the ground set.
pub fn tutte_of_arrangement(va: &VectorArrangement) -> Result<BivariatePolynomial> {
    let n = va.len();
    if n > ARRANGEMENT_TUTTE_MAX {
        return Err(Error::size("ground set size for Tutte polynomial", ARRANGEMENT_TUTTE_MAX, n));
    }
    let r = va.rank();
    let mut counts: BTreeMap<(u32, u32), u64> = BTreeMap::new();
    for mask in 0u32..(1u32 << n) {
        let subset: Vec<usize> = (0..n).filter(|&j| mask >> j & 1 == 1).collect();
        let rk = va.columns().select_columns(&subset).rank();
        *counts.entry(((r - rk) as u32, (subset.len() - rk) as u32)).or_default() += 1;
    }
    let x_minus_one = BivariatePolynomial::from_terms(&[((1, 0), 1), ((0, 0), -1)]);
    let y_minus_one = BivariatePolynomial::from_terms(&[((0, 1), 1), ((0, 0), -1)]);
    let pow = |p: &BivariatePolynomial, e: u32| (0..e).fold(BivariatePolynomial::one(), |acc, _| acc.mul(p));
    let mut t = BivariatePolynomial::zero();
    for ((a, b), c) in counts {
        let term = pow(&x_minus_one, a).mul(&pow(&y_minus_one, b));
        t = t.add(&term.mul(&BivariatePolynomial::monomial(0, 0, BigInt::from(c))));
    }
    Ok(t)
}

/// A random connected multigraph with between 1 and `max_edges` arrows:
/// a random spanning tree plus extra arrows (parallel arrows and, rarely,
/// self-loops), every arrow randomly oriented.
pub fn random_connected_multigraph<R: Rng>(rng: &mut R, max_edges: usize) -> DirectedGraph {
    let m = rng.gen_range(1..=max_edges.max(1));
    let n = rng.gen_range(1..=m + 1);
    let mut edges = Vec::with_capacity(m);
    for v in 1..n {
        edges.push((rng.gen_range(0..v), v));
    }
    while edges.len() < m {
        if n == 1 || rng.gen_bool(0.1) {
            let v = rng.gen_range(0..n);
            edges.push((v, v));
        } else {
            let u = rng.gen_range(0..n);
            let mut v = rng.gen_range(0..n - 1);
            if v >= u {
                v += 1;
            }
            edges.push((u, v));
        }
    }
    for e in edges.iter_mut() {
        if rng.gen_bool(0.5) {
            *e = (e.1, e.0);
        }
    }
    let vertices = (0..n).map(|i| format!("v{i}")).collect();
    let arrows = edges
        .iter()
        .enumerate()
        .map(|(k, &(t, h))| ((k + 1).to_string(), format!("v{t}"), format!("v{h}")))
        .collect();
    DirectedGraph::new(vertices, arrows).expect("generated graph is well formed")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::{enumerate_cocircuits, interior_lattice_points};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    /// The house graph: square a-b-c-d with roof vertex e over edge c-d.
    pub(crate) fn house() -> DirectedGraph {
        let v = |s: &str| s.to_string();
        DirectedGraph::new(
            vec![v("a"), v("b"), v("c"), v("d"), v("e")],
            vec![
                (v("1"), v("c"), v("b")),
                (v("2"), v("b"), v("a")),
                (v("3"), v("a"), v("d")),
                (v("4"), v("d"), v("c")),
                (v("5"), v("c"), v("e")),
                (v("6"), v("e"), v("d")),
            ],
        )
        .unwrap()
    }

    fn k_cycle(k: usize) -> DirectedGraph {
        let edges: Vec<(usize, usize)> = (0..k).map(|i| (i, (i + 1) % k)).collect();
        DirectedGraph::from_edges(k, &edges).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    /// Independent oracle: corank-nullity expansion with union-find ranks.
    fn brute_tutte(g: &DirectedGraph) -> BivariatePolynomial {
        let m = g.arrows().len();
        let n = g.vertices().len();
        let full = graph_rank(g) as u32;
        let mut t = BivariatePolynomial::zero();
        for mask in 0u32..(1 << m) {
            let mut uf = UnionFind::new(n);
            let mut rk = 0u32;
            let mut size = 0u32;
            for (j, a) in g.arrows().iter().enumerate() {
                if mask >> j & 1 == 1 {
                    size += 1;
                    if uf.union(a.tail, a.head) {
                        rk += 1;
                    }
                }
            }
            // (x-1)^{full-rk} (y-1)^{size-rk}, expanded binomially
            let (p, q) = (full - rk, size - rk);
            for i in 0..=p {
                for j in 0..=q {
                    let c = crate::funcspace::binomial(&BigInt::from(p), i)
                        * crate::funcspace::binomial(&BigInt::from(q), j)
                        * if (p - i + q - j) % 2 == 0 { 1 } else { -1 };
                    t = t.add(&BivariatePolynomial::monomial(i, j, c));
                }
            }
        }
        t
    }

    #[test]
    fn graph_rank_examples() {
        assert_eq!(graph_rank(&house()), 4);
        assert_eq!(graph_rank(&k_cycle(5)), 4);
        assert_eq!(graph_rank(&DirectedGraph::from_edges(4, &[]).unwrap()), 0);
    }

    #[test]
    fn house_square_triangle_coordinates() {
        let g = house();
        // C4 = {1,2,3,4}, C3 = {4,5,6}, all forward
        let space = CycleSpace::from_cycles(&g, &[vec![1, 1, 1, 1, 0, 0], vec![0, 0, 0, 1, 1, 1]]).unwrap();
        let va = cographical_arrangement_in(&g, &space);
        let expect = IntMatrix::from_i64(2, 6, &[1, 1, 1, 1, 0, 0, 0, 0, 0, 1, 1, 1]);
        assert_eq!(va.columns(), &expect);
        assert!(va.is_flagged_unimodular());
    }

    #[test]
    fn non_basis_cycles_are_rejected() {
        let g = house();
        // C4 and C4 + 2 C3 span an index-2 sublattice
        assert!(CycleSpace::from_cycles(&g, &[vec![1, 1, 1, 1, 0, 0], vec![1, 1, 1, 3, 2, 2]]).is_err());
        assert!(CycleSpace::from_cycles(&g, &[vec![1, 1, 1, 1, 0, 0], vec![1, 0, 0, 0, 0, 0]]).is_err());
    }

    #[test]
    fn fundamental_cycles_of_house() {
        let g = house();
        assert_eq!(spanning_forest(&g), vec![0, 1, 2, 4]);
        let va = cographical_arrangement(&g);
        assert_eq!(va.rank(), 2);
        let basis = CycleSpace::fundamental(&g).basis().clone();
        for i in 0..basis.rows() {
            let c: Vec<i64> = basis.row(i).iter().map(|x| i64::try_from(x).unwrap()).collect();
            assert!(g.is_cycle_vector(&c));
        }
        assert_eq!(interior_lattice_points(&va).unwrap().len(), 6);
    }

    #[test]
    fn coherent_cycle_is_all_ones() {
        for k in 2..7 {
            let va = cographical_arrangement(&k_cycle(k));
            assert_eq!(va.columns(), &IntMatrix::from_i64(1, k, &vec![1; k]));
        }
    }

    #[test]
    fn tree_has_rank_zero_arrangement() {
        let g = DirectedGraph::from_edges(4, &[(0, 1), (1, 2), (1, 3)]).unwrap();
        let va = cographical_arrangement(&g);
        assert_eq!((va.rank(), va.len()), (0, 3));
        assert_eq!(interior_lattice_points(&va).unwrap().len(), 1);
    }

    #[test]
    fn house_oriented_cycles() {
        let g = house();
        let cycles = enumerate_oriented_cycles(&g);
        assert_eq!(cycles.len(), 3);
        let described: Vec<String> = cycles.iter().map(|c| c.describe(&g)).collect();
        assert_eq!(
            described,
            vec![
                "{(1,1),(2,1),(3,1),(4,1)}",
                "{(1,1),(2,1),(3,1),(6,-1),(5,-1)}",
                "{(4,1),(5,1),(6,1)}",
            ]
        );
        for c in &cycles {
            assert!(c.is_valid_in(&g));
            assert!(c.opposite().is_valid_in(&g));
        }
    }

    #[test]
    fn small_cycle_counts() {
        assert_eq!(enumerate_oriented_cycles(&k_cycle(3)).len(), 1);
        let parallel = DirectedGraph::from_edges(2, &[(0, 1), (0, 1)]).unwrap();
        let cs = enumerate_oriented_cycles(&parallel);
        assert_eq!(cs.len(), 1);
        assert_eq!(cs[0].steps, vec![(0, 1), (1, -1)]);
        let single = DirectedGraph::from_edges(2, &[(0, 1)]).unwrap();
        assert!(enumerate_oriented_cycles(&single).is_empty());
    }

    #[test]
    fn cycle_classes_are_the_cocircuits() {
        let g = house();
        let space = CycleSpace::from_cycles(&g, &[vec![1, 1, 1, 1, 0, 0], vec![0, 0, 0, 1, 1, 1]]).unwrap();
        let va = cographical_arrangement_in(&g, &space);
        let cocircuits = enumerate_cocircuits(&va).unwrap();
        let mut from_cycles: Vec<(Vec<BigInt>, usize, usize)> = enumerate_oriented_cycles(&g)
            .iter()
            .map(|c| {
                let mut class = c.class_in(&space);
                let (mut p, mut m) = (c.plus().len(), c.minus().len());
                if class.iter().find(|x| !x.is_zero()).unwrap() < &BigInt::zero() {
                    class = class.iter().map(|x| -x).collect();
                    std::mem::swap(&mut p, &mut m);
                }
                (class, p, m)
            })
            .collect();
        from_cycles.sort();
        let got: Vec<(Vec<BigInt>, usize, usize)> =
            cocircuits.iter().map(|c| (c.covector.clone(), c.d_plus, c.d_minus)).collect();
        assert_eq!(from_cycles, got);
        // C5 has class α_{C4} - α_{C3}
        let c5 = &enumerate_oriented_cycles(&g)[1];
        assert_eq!(c5.class_in(&space), ints(&[1, -1]));
    }

    #[test]
    fn house_theta() {
        let g = house();
        let cycles = enumerate_oriented_cycles(&g);
        let thetas = theta_subgraphs(&g, &cycles);
        // C4 (index 0), C5 (1), C3 (2): C3 - C4 + C5 = 0
        assert_eq!(
            thetas,
            vec![ThetaSubgraph {
                cycles: [0, 1, 2],
                signs: [1, -1, -1]
            }]
        );
        assert!(theta_subgraphs(&k_cycle(4), &enumerate_oriented_cycles(&k_cycle(4))).is_empty());
    }

    #[test]
    fn theta_graph_has_one_triple() {
        let g = DirectedGraph::from_edges(2, &[(0, 1), (0, 1), (0, 1)]).unwrap();
        let cycles = enumerate_oriented_cycles(&g);
        assert_eq!(cycles.len(), 3);
        assert_eq!(theta_subgraphs(&g, &cycles).len(), 1);
    }

    #[test]
    fn cycle_classes_span_cycle_space() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let g = random_connected_multigraph(&mut rng, 7);
            let m = g.arrows().len();
            let rows: Vec<Vec<BigInt>> = enumerate_oriented_cycles(&g)
                .iter()
                .map(|c| c.edge_vector(m).into_iter().map(BigInt::from).collect())
                .collect();
            let span = IntMatrix::from_rows(m, &rows).rank();
            assert_eq!(span, m - graph_rank(&g));
            for c in enumerate_oriented_cycles(&g) {
                assert!(c.is_valid_in(&g));
            }
        }
    }

    #[test]
    fn tutte_small_graphs() {
        let tri = k_cycle(3);
        let expect = BivariatePolynomial::from_terms(&[((2, 0), 1), ((1, 0), 1), ((0, 1), 1)]);
        assert_eq!(brute_tutte(&tri), expect);
        assert_eq!(tutte_polynomial(&tri), expect);
        let bridge = DirectedGraph::from_edges(2, &[(0, 1)]).unwrap();
        assert_eq!(tutte_polynomial(&bridge), BivariatePolynomial::from_terms(&[((1, 0), 1)]));
        let lp = DirectedGraph::from_edges(1, &[(0, 0)]).unwrap();
        assert_eq!(tutte_polynomial(&lp), BivariatePolynomial::from_terms(&[((0, 1), 1)]));
    }

    #[test]
    fn tutte_matches_corank_nullity_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..40 {
            let g = random_connected_multigraph(&mut rng, 8);
            assert_eq!(tutte_polynomial(&g), brute_tutte(&g));
        }
        assert_eq!(tutte_polynomial(&house()), brute_tutte(&house()));
    }

    #[test]
    fn tutte_deletion_contraction_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..20 {
            let g = random_connected_multigraph(&mut rng, 7);
            for k in 0..g.arrows().len() {
                let a = &g.arrows()[k];
                let edges: EdgeList = g.arrows().iter().map(|a| (a.tail, a.head)).collect();
                if a.is_self_loop() || is_bridge(&edges, k, g.vertices().len()) {
                    continue;
                }
                let sum = brute_tutte(&g.delete_arrow(k)).add(&brute_tutte(&g.contract_arrow(k)));
                assert_eq!(tutte_polynomial(&g), sum);
            }
        }
    }

    #[test]
    fn su2_examples() {
        assert_eq!(su2_poincare_polynomial(&house()), ints(&[1, 2, 2, 1]));
        for k in 2..8 {
            assert_eq!(su2_poincare_polynomial(&k_cycle(k)), vec![BigInt::one(); k - 1]);
        }
        let with_loop = DirectedGraph::from_edges(2, &[(0, 1), (1, 1), (0, 1)]).unwrap();
        assert!(su2_poincare_polynomial(&with_loop).is_empty());
    }

    #[test]
    fn house_tutte_evaluation() {
        let t = tutte_polynomial(&house());
        // t^4 T(1/t, 0) = 1 + 2t + 2t^2 + t^3
        let coeffs: Vec<BigInt> = (0..=4).map(|i| t.coefficient(4 - i, 0)).collect();
        assert_eq!(coeffs, ints(&[1, 2, 2, 1, 0]));
    }

    #[test]
    fn arrangement_tutte_is_dual_of_graph_tutte() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let g = random_connected_multigraph(&mut rng, 7);
            let va = cographical_arrangement(&g);
            assert_eq!(tutte_of_arrangement(&va).unwrap(), tutte_polynomial(&g).swap_variables());
        }
    }

    #[test]
    fn arrangement_tutte_small_cases() {
        // k parallel elements of rank 1: x + y + ... + y^{k-1}
        let va = VectorArrangement::from_columns(1, &vec![vec![1]; 4]).unwrap();
        let expect = BivariatePolynomial::from_terms(&[((1, 0), 1), ((0, 1), 1), ((0, 2), 1), ((0, 3), 1)]);
        assert_eq!(tutte_of_arrangement(&va).unwrap(), expect);
        let empty = VectorArrangement::new(0, vec![], IntMatrix::zeros(0, 0)).unwrap();
        assert_eq!(tutte_of_arrangement(&empty).unwrap(), BivariatePolynomial::one());
    }

    #[test]
    fn kernel_dimension_matches_forest_count() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..20 {
            let g = random_connected_multigraph(&mut rng, 7);
            let k = crate::linalg::kernel_basis(&g.incidence_matrix().to_rat());
            // independent count: arrows minus spanning forest size
            let mut uf = UnionFind::new(g.vertices().len());
            let forest = g.arrows().iter().filter(|a| uf.union(a.tail, a.head)).count();
            assert_eq!(k.cols(), g.arrows().len() - forest);
        }
    }

    #[test]
    fn orientation_does_not_change_counts() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..15 {
            let g = random_connected_multigraph(&mut rng, 7);
            let flip: Vec<bool> = (0..g.arrows().len()).map(|_| rng.gen_bool(0.5)).collect();
            let h = g.reorient(&flip);
            let n1 = interior_lattice_points(&cographical_arrangement(&g)).unwrap().len();
            let n2 = interior_lattice_points(&cographical_arrangement(&h)).unwrap().len();
            assert_eq!(n1, n2);
            assert_eq!(tutte_polynomial(&g), tutte_polynomial(&h));
            assert_eq!(su2_poincare_polynomial(&g), su2_poincare_polynomial(&h));
        }
    }

    #[test]
    fn canonical_key_ignores_vertex_names() {
        let a = vec![(0, 1), (1, 2), (2, 0), (2, 3)];
        let b = vec![(7, 5), (5, 9), (9, 7), (7, 2)];
        assert_eq!(canonical_key(&a), canonical_key(&b));
    }
}
