//! Edge-weighted simple graphs and their edge ideals.
//!
//! Vertices are labelled `1..=n`, matching the variables `x1..xn` of the
//! ambient polynomial ring.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ideal::MonomialIdeal;
use crate::monomial::Monomial;

/// Unordered edge `{lo, hi}` with `lo < hi`.
pub type Edge = (usize, usize);

pub fn edge(i: usize, j: usize) -> Edge {
    (i.min(j), i.max(j))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedGraph {
    n: usize,
    edges: BTreeMap<Edge, u32>,
}

/// JSON wire form: `{"n": 4, "edges": [[1,2,1],[2,3,2]]}`.
#[derive(Debug, Serialize, Deserialize)]
pub struct GraphJson {
    pub n: usize,
    pub edges: Vec<[u32; 3]>,
}

/// Weights `(w_1, ..., w_{n-1})` of a path on `n` vertices; `w_i` sits on `{i, i+1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeightSequence(Vec<u32>);

impl WeightSequence {
    pub fn new(weights: Vec<u32>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::InvalidArgument(
                "weight sequence must be nonempty".into(),
            ));
        }
        if weights.contains(&0) {
            return Err(Error::InvalidArgument("weights must be positive".into()));
        }
        Ok(WeightSequence(weights))
    }

    /// All ones except `w_a = omega`.
    pub fn one_weight(n: usize, a: usize, omega: u32) -> Result<Self> {
        Self::with_entries(n, &[(a, omega)])
    }

    /// All ones except `w_a = gamma` and `w_{a+2} = delta`.
    pub fn two_weight(n: usize, a: usize, gamma: u32, delta: u32) -> Result<Self> {
        Self::with_entries(n, &[(a, gamma), (a + 2, delta)])
    }

    fn with_entries(n: usize, entries: &[(usize, u32)]) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidArgument(
                "a path needs at least two vertices".into(),
            ));
        }
        let mut w = vec![1; n - 1];
        for &(pos, val) in entries {
            if pos == 0 || pos > n - 1 {
                return Err(Error::OutOfRange(format!(
                    "weight position {pos} on a path with {n} vertices"
                )));
            }
            w[pos - 1] = val;
        }
        WeightSequence::new(w)
    }

    /// Comma list form used on the command line, e.g. `1,2,1`.
    pub fn parse(s: &str) -> Result<Self> {
        let w = s
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::Parse(format!("bad weight `{p}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        WeightSequence::new(w)
    }

    pub fn weights(&self) -> &[u32] {
        &self.0
    }

    /// Number of path vertices, one more than the number of weights.
    pub fn vertex_count(&self) -> usize {
        self.0.len() + 1
    }

    /// 1-based positions of the weights greater than one.
    pub fn nontrivial_positions(&self) -> Vec<usize> {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &w)| w > 1)
            .map(|(i, _)| i + 1)
            .collect()
    }

    pub fn reversed(&self) -> WeightSequence {
        WeightSequence(self.0.iter().rev().copied().collect())
    }
}

impl std::fmt::Display for WeightSequence {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

/// Whether `I(P(w))` is integrally closed: at most one weight above one, or
/// exactly two sitting at positions `a` and `a + 2`.
pub fn is_integrally_closed_path(w: &WeightSequence) -> bool {
    match w.nontrivial_positions().as_slice() {
        [] | [_] => true,
        [p, q] => q - p == 2,
        _ => false,
    }
}

impl WeightedGraph {
    pub fn new(n: usize) -> Self {
        WeightedGraph {
            n,
            edges: BTreeMap::new(),
        }
    }

    pub fn from_edges(
        n: usize,
        edges: impl IntoIterator<Item = (usize, usize, u32)>,
    ) -> Result<Self> {
        let mut g = WeightedGraph::new(n);
        for (i, j, w) in edges {
            g.add_edge(i, j, w)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, i: usize, j: usize, w: u32) -> Result<()> {
        if i == j {
            return Err(Error::Graph(format!("loop at vertex {i}")));
        }
        if i == 0 || j == 0 || i > self.n || j > self.n {
            return Err(Error::Graph(format!(
                "edge {{{i},{j}}} outside 1..={}",
                self.n
            )));
        }
        if w == 0 {
            return Err(Error::Graph("edge weights must be positive".into()));
        }
        if self.edges.insert(edge(i, j), w).is_some() {
            return Err(Error::Graph(format!("duplicate edge {{{i},{j}}}")));
        }
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> impl Iterator<Item = (Edge, u32)> + '_ {
        self.edges.iter().map(|(&e, &w)| (e, w))
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn weight(&self, e: Edge) -> Option<u32> {
        self.edges.get(&edge(e.0, e.1)).copied()
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.edges.contains_key(&edge(i, j))
    }

    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        self.edges
            .keys()
            .filter_map(|&(a, b)| {
                if a == v {
                    Some(b)
                } else if b == v {
                    Some(a)
                } else {
                    None
                }
            })
            .collect()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.neighbors(v).len()
    }

    /// `I(G_w)`, generated by `(x_i x_j)^{w(ij)}` over the edges.
    pub fn edge_ideal(&self) -> MonomialIdeal {
        let gens = self.edges.iter().map(|(&(i, j), &w)| {
            let mut exps = vec![0u32; self.n];
            exps[i - 1] = w;
            exps[j - 1] = w;
            Monomial::from_exponents(exps)
        });
        MonomialIdeal::minimalize(self.n, gens).expect("edge monomials share the ambient ring")
    }

    fn check_edges(&self, es: &[Edge]) -> Result<()> {
        for &(i, j) in es {
            if !self.has_edge(i, j) {
                return Err(Error::Graph(format!("{{{i},{j}}} is not an edge")));
            }
        }
        Ok(())
    }

    /// `N[e]`: vertices of the edges in `es` together with all their neighbours.
    pub fn closed_neighborhood(&self, es: &[Edge]) -> Result<BTreeSet<usize>> {
        if es.is_empty() {
            return Err(Error::InvalidArgument("edge set must be nonempty".into()));
        }
        self.check_edges(es)?;
        let mut out = BTreeSet::new();
        for &(i, j) in es {
            for v in [i, j] {
                out.insert(v);
                out.extend(self.neighbors(v));
            }
        }
        Ok(out)
    }

    /// Induced subgraph on `vertices`, relabelled `1..=|W|` in increasing order.
    /// The second component maps new label `k` (at index `k - 1`) to the old vertex.
    pub fn induced_subgraph(
        &self,
        vertices: &BTreeSet<usize>,
    ) -> Result<(WeightedGraph, Vec<usize>)> {
        if let Some(&v) = vertices.iter().find(|&&v| v == 0 || v > self.n) {
            return Err(Error::Graph(format!("vertex {v} not in the graph")));
        }
        let labels: Vec<usize> = vertices.iter().copied().collect();
        let new_label: BTreeMap<usize, usize> = labels
            .iter()
            .enumerate()
            .map(|(k, &v)| (v, k + 1))
            .collect();
        let mut sub = WeightedGraph::new(labels.len());
        for (&(i, j), &w) in &self.edges {
            if let (Some(&a), Some(&b)) = (new_label.get(&i), new_label.get(&j)) {
                sub.edges.insert(edge(a, b), w);
            }
        }
        Ok((sub, labels))
    }

    /// Same vertex set, keeping only the edges inside `vertices`. The ambient ring is unchanged.
    pub fn restrict_edges(&self, vertices: &BTreeSet<usize>) -> WeightedGraph {
        WeightedGraph {
            n: self.n,
            edges: self
                .edges
                .iter()
                .filter(|(&(i, j), _)| vertices.contains(&i) && vertices.contains(&j))
                .map(|(&e, &w)| (e, w))
                .collect(),
        }
    }

    fn edge_set_connected(es: &[Edge]) -> bool {
        let verts: BTreeSet<usize> = es.iter().flat_map(|&(i, j)| [i, j]).collect();
        let Some(&start) = verts.iter().next() else {
            return false;
        };
        let mut seen = BTreeSet::from([start]);
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for &(i, j) in es {
                let other = if i == v {
                    j
                } else if j == v {
                    i
                } else {
                    continue;
                };
                if seen.insert(other) {
                    queue.push_back(other);
                }
            }
        }
        seen.len() == verts.len()
    }

    /// Two-colouring of `G[N[e]]` anchored at its smallest vertex.
    /// Returns `(U, V)` with the anchor in `U`, or an odd cycle.
    pub fn neighborhood_bipartition(
        &self,
        es: &[Edge],
    ) -> Result<(BTreeSet<usize>, BTreeSet<usize>)> {
        let nbhd = self.closed_neighborhood(es)?;
        let mut color: BTreeMap<usize, (bool, usize)> = BTreeMap::new();
        let mut parent: BTreeMap<usize, usize> = BTreeMap::new();
        for &root in &nbhd {
            if color.contains_key(&root) {
                continue;
            }
            color.insert(root, (false, 0));
            let mut queue = VecDeque::from([root]);
            while let Some(v) = queue.pop_front() {
                let (cv, dv) = color[&v];
                for u in self.neighbors(v) {
                    if !nbhd.contains(&u) {
                        continue;
                    }
                    match color.get(&u) {
                        None => {
                            color.insert(u, (!cv, dv + 1));
                            parent.insert(u, v);
                            queue.push_back(u);
                        }
                        Some(&(cu, _)) if cu == cv => {
                            return Err(Error::NotBipartite {
                                cycle: odd_cycle(&parent, &color, v, u),
                            });
                        }
                        Some(_) => {}
                    }
                }
            }
        }
        let (u, v): (Vec<_>, Vec<_>) = color.iter().partition(|(_, &(c, _))| !c);
        Ok((
            u.into_iter().map(|(&x, _)| x).collect(),
            v.into_iter().map(|(&x, _)| x).collect(),
        ))
    }

    /// Bipartite completion with respect to a connected edge set `es`: adds every
    /// edge between the two colour classes of `N[e]`, new edges with weight 1.
    pub fn bipartite_completion(&self, es: &[Edge]) -> Result<WeightedGraph> {
        self.check_edges(es)?;
        if !Self::edge_set_connected(es) {
            return Err(Error::Graph("edge set is not connected".into()));
        }
        let (u, v) = self.neighborhood_bipartition(es)?;
        let mut out = self.clone();
        for &a in &u {
            for &b in &v {
                out.edges.entry(edge(a, b)).or_insert(1);
            }
        }
        Ok(out)
    }

    pub fn to_json(&self) -> GraphJson {
        GraphJson {
            n: self.n,
            edges: self
                .edges
                .iter()
                .map(|(&(i, j), &w)| [i as u32, j as u32, w])
                .collect(),
        }
    }

    pub fn from_json(j: GraphJson) -> Result<Self> {
        WeightedGraph::from_edges(
            j.n,
            j.edges
                .into_iter()
                .map(|[i, j, w]| (i as usize, j as usize, w)),
        )
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let j: GraphJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        WeightedGraph::from_json(j)
    }
}

fn odd_cycle(
    parent: &BTreeMap<usize, usize>,
    color: &BTreeMap<usize, (bool, usize)>,
    a: usize,
    b: usize,
) -> Vec<usize> {
    let mut pa = vec![a];
    let mut pb = vec![b];
    let (mut x, mut y) = (a, b);
    while color[&x].1 > color[&y].1 {
        x = parent[&x];
        pa.push(x);
    }
    while color[&y].1 > color[&x].1 {
        y = parent[&y];
        pb.push(y);
    }
    while x != y {
        x = parent[&x];
        y = parent[&y];
        pa.push(x);
        pb.push(y);
    }
    pb.pop();
    pa.extend(pb.into_iter().rev());
    pa
}

/// The path `1 - 2 - ... - n` with `{i, i+1}` weighted `w_i`.
pub fn weighted_path(w: &WeightSequence) -> WeightedGraph {
    let n = w.vertex_count();
    let mut g = WeightedGraph::new(n);
    for (i, &wi) in w.weights().iter().enumerate() {
        g.edges.insert((i + 1, i + 2), wi);
    }
    g
}

/// Unweighted path on `n` vertices (`n >= 1`).
pub fn path(n: usize) -> WeightedGraph {
    let mut g = WeightedGraph::new(n);
    for i in 1..n {
        g.edges.insert((i, i + 1), 1);
    }
    g
}
