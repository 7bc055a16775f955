//! Simple undirected graphs on vertices `0..n` and the constructions used to
//! build graphs out of smaller ones: substitution, disjoint union, complete
//! join and the addition of universal vertices.

use std::fmt;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};

/// A simple undirected graph with vertices `0..n`.
///
/// Neighbor lists are kept sorted, so two graphs compare equal exactly when
/// they have the same vertex count and the same edge set.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    m: usize,
}

/// A set of vertex indices, stored sorted and without duplicates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct VertexSet(Vec<usize>);

impl VertexSet {
    pub fn new(vertices: impl IntoIterator<Item = usize>) -> Self {
        let mut v: Vec<usize> = vertices.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        VertexSet(v)
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub(crate) fn check_range(&self, n: usize) -> Result<()> {
        match self.0.last() {
            Some(&v) if v >= n => Err(Error::arg(format!(
                "vertex {v} out of range for a graph on {n} vertices"
            ))),
            _ => Ok(()),
        }
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        VertexSet::new(iter)
    }
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            m: 0,
        }
    }

    /// Builds a graph from an edge list. Duplicate edges are merged; loops and
    /// out-of-range endpoints are rejected.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::arg(format!(
                    "edge {{{u}, {v}}} out of range for {n} vertices"
                )));
            }
            if u == v {
                return Err(Error::arg(format!("loop at vertex {u}")));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        Ok(Self::from_raw_adjacency(adj))
    }

    /// Sorts and deduplicates the lists. Caller guarantees symmetry and no loops.
    pub(crate) fn from_raw_adjacency(mut adj: Vec<Vec<usize>>) -> Self {
        let mut twice_m = 0;
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
            twice_m += list.len();
        }
        Graph {
            adj,
            m: twice_m / 2,
        }
    }

    pub fn complete(n: usize) -> Self {
        let adj = (0..n)
            .map(|v| (0..n).filter(|&u| u != v).collect())
            .collect();
        Self::from_raw_adjacency(adj)
    }

    pub fn path(n: usize) -> Self {
        Self::from_edges(n, (1..n).map(|v| (v - 1, v))).expect("valid path")
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a cycle needs at least 3 vertices");
        Self::from_edges(n, (0..n).map(|v| (v, (v + 1) % n))).expect("valid cycle")
    }

    /// `K_{a,b}` with the `a` side first.
    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        Self::from_edges(a + b, (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v))))
            .expect("valid bipartite graph")
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// One bitset row per vertex.
    pub fn adjacency_bits(&self) -> Vec<FixedBitSet> {
        let n = self.n();
        self.adj
            .iter()
            .map(|list| {
                let mut row = FixedBitSet::with_capacity(n);
                for &v in list {
                    row.insert(v);
                }
                row
            })
            .collect()
    }

    pub fn complement(&self) -> Graph {
        let n = self.n();
        let adj = (0..n)
            .map(|v| {
                let mut out = Vec::with_capacity(n - 1 - self.degree(v));
                let mut it = self.adj[v].iter().peekable();
                for u in 0..n {
                    if it.peek() == Some(&&u) {
                        it.next();
                    } else if u != v {
                        out.push(u);
                    }
                }
                out
            })
            .collect();
        Self::from_raw_adjacency(adj)
    }

    /// Number of connected components (0 for the empty vertex set).
    pub fn component_count(&self) -> usize {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut count = 0;
        let mut stack = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            count += 1;
            seen[s] = true;
            stack.push(s);
            while let Some(v) = stack.pop() {
                for &u in &self.adj[v] {
                    if !seen[u] {
                        seen[u] = true;
                        stack.push(u);
                    }
                }
            }
        }
        count
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() <= 1
    }

    /// Applies a relabeling: vertex `v` becomes `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Graph> {
        let n = self.n();
        let mut seen = vec![false; n];
        if perm.len() != n
            || perm
                .iter()
                .any(|&p| p >= n || std::mem::replace(&mut seen[p], true))
        {
            return Err(Error::arg("relabeling is not a permutation"));
        }
        let mut adj = vec![Vec::new(); n];
        for (v, list) in self.adj.iter().enumerate() {
            adj[perm[v]] = list.iter().map(|&u| perm[u]).collect();
        }
        Ok(Self::from_raw_adjacency(adj))
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n())
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

/// Substitutes vertex `v_i` of `quotient` by `parts[i]`.
///
/// Part `i` occupies a contiguous block of vertex ids, blocks in operand order.
/// Two blocks are completely joined iff their quotient vertices are adjacent.
pub fn substitute(quotient: &Graph, parts: &[Graph]) -> Result<Graph> {
    if parts.len() != quotient.n() {
        return Err(Error::arg(format!(
            "substitution needs {} parts, got {}",
            quotient.n(),
            parts.len()
        )));
    }
    if let Some(i) = parts.iter().position(|p| p.n() == 0) {
        return Err(Error::arg(format!("part {i} of the substitution is empty")));
    }
    let offsets = block_offsets(parts.iter().map(Graph::n));
    let total = offsets[parts.len()];
    let mut adj = vec![Vec::new(); total];
    for (i, part) in parts.iter().enumerate() {
        let off = offsets[i];
        for (v, list) in part.adj.iter().enumerate() {
            let row = &mut adj[off + v];
            row.extend(list.iter().map(|&u| u + off));
            for &j in quotient.neighbors(i) {
                row.extend(offsets[j]..offsets[j + 1]);
            }
        }
    }
    Ok(Graph::from_raw_adjacency(adj))
}

/// Prefix sums of block sizes; `offsets[i]..offsets[i + 1]` is block `i`.
pub(crate) fn block_offsets(sizes: impl Iterator<Item = usize>) -> Vec<usize> {
    let mut offsets = vec![0];
    for s in sizes {
        offsets.push(offsets.last().unwrap() + s);
    }
    offsets
}

/// Disjoint union, blocks in operand order.
pub fn disjoint_union(parts: &[Graph]) -> Result<Graph> {
    substitute(&Graph::empty(parts.len()), parts)
}

/// Complete join, blocks in operand order.
pub fn complete_join(parts: &[Graph]) -> Result<Graph> {
    substitute(&Graph::complete(parts.len()), parts)
}

/// `g ⊕ i`: adds `i` pairwise non-adjacent vertices `n..n+i`, each adjacent
/// to every original vertex.
pub fn add_universal(g: &Graph, i: usize) -> Graph {
    let n = g.n();
    let mut adj: Vec<Vec<usize>> = g.adj.clone();
    for row in &mut adj {
        row.extend(n..n + i);
    }
    adj.extend((0..i).map(|_| (0..n).collect()));
    Graph {
        adj,
        m: g.m + n * i,
    }
}

/// The subgraph induced by `s`, with vertices renumbered `0..|s|` in
/// increasing order of their original ids.
pub fn induced_subgraph(g: &Graph, s: &VertexSet) -> Result<Graph> {
    s.check_range(g.n())?;
    let mut index = vec![usize::MAX; g.n()];
    for (i, v) in s.iter().enumerate() {
        index[v] = i;
    }
    let adj = s
        .iter()
        .map(|v| {
            g.neighbors(v)
                .iter()
                .filter_map(|&u| (index[u] != usize::MAX).then_some(index[u]))
                .collect()
        })
        .collect();
    Ok(Graph::from_raw_adjacency(adj))
}
