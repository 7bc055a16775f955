//! Partition into paths, Hamiltonian path and Hamiltonian cycle.
//!
//! The record of a module is `(ham, size)`: the fewest vertex-disjoint paths
//! covering it and its vertex count. Whether a substitution `H = Q(G_1, ..,
//! G_n)` has a Hamiltonian cycle depends only on the records. Orient such a
//! cycle and count, for every quotient edge, how many of its arcs run from
//! `G_i` to `G_j` (`e_ij`) and back. These counts form a balanced connected
//! multigraph where `G_i` is left `p_i = Σ_j e_ij` times with
//! `ham_i ≤ p_i ≤ size_i`; conversely any such multigraph yields a cycle by
//! walking an Eulerian tour and spending one path of a `p_i`-path partition
//! of `G_i` per visit. Feasibility is decided by an integer program with
//! connectivity cuts.
//!
//! `ham(H)` is the least `l ≥ 1` such that `H` plus `l` universal vertices
//! has a Hamiltonian cycle, where a single vertex joined to one universal
//! vertex counts as a cycle. Those `l` vertices are one more quotient vertex
//! with record `(l, l)`, so `ham(H)` is found by a search over `l` with the
//! same program.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::ilp::{solve, CutSeparator, IlpConfig, IlpInstance, LinearConstraint, NoCuts, Relation};
use crate::mdtree::{modular_decomposition, normalize, NodeKind, ParseTree};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct NodeRecord {
    pub ham: usize,
    pub size: usize,
}

impl NodeRecord {
    pub fn new(ham: usize, size: usize) -> Self {
        NodeRecord { ham, size }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum CutMode {
    /// Add connectivity cuts only when a candidate violates one.
    #[default]
    Lazy,
    /// Install every cut up front.
    Eager,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum LSearch {
    #[default]
    Binary,
    Linear,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct HamOptions {
    pub cuts: CutMode,
    pub search: LSearch,
    pub ilp: IlpConfig,
}

/// Directed multigraph on the quotient vertices; `arcs` lists
/// `(from, to, multiplicity)` with positive multiplicity, sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlowMultigraph {
    n: usize,
    arcs: Vec<(usize, usize, usize)>,
}

impl FlowMultigraph {
    pub fn new(n: usize, arcs: impl IntoIterator<Item = (usize, usize, usize)>) -> Result<Self> {
        let mut arcs: Vec<_> = arcs.into_iter().filter(|a| a.2 > 0).collect();
        if arcs.iter().any(|&(u, v, _)| u >= n || v >= n || u == v) {
            return Err(Error::arg(
                "arc endpoints must be distinct vertices below n",
            ));
        }
        arcs.sort_unstable();
        let mut merged: Vec<(usize, usize, usize)> = Vec::with_capacity(arcs.len());
        for (u, v, c) in arcs {
            match merged.last_mut() {
                Some(last) if (last.0, last.1) == (u, v) => last.2 += c,
                _ => merged.push((u, v, c)),
            }
        }
        Ok(FlowMultigraph { n, arcs: merged })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn arcs(&self) -> &[(usize, usize, usize)] {
        &self.arcs
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.iter().map(|a| a.2).sum()
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.arcs.iter().filter(|a| a.0 == v).map(|a| a.2).sum()
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.arcs.iter().filter(|a| a.1 == v).map(|a| a.2).sum()
    }

    /// In-degree equals out-degree everywhere and the vertices with arcs
    /// are connected.
    pub fn check(&self) -> std::result::Result<(), String> {
        if let Some(v) = (0..self.n).find(|&v| self.in_degree(v) != self.out_degree(v)) {
            return Err(format!("vertex {v} is unbalanced"));
        }
        let active: Vec<bool> = (0..self.n).map(|v| self.out_degree(v) > 0).collect();
        let mut comp: Vec<usize> = (0..self.n).collect();
        fn find(c: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while c[r] != r {
                r = c[r];
            }
            c[x] = r;
            r
        }
        for &(u, v, _) in &self.arcs {
            let (a, b) = (find(&mut comp, u), find(&mut comp, v));
            comp[a] = b;
        }
        let roots: std::collections::BTreeSet<usize> = (0..self.n)
            .filter(|&v| active[v])
            .map(|v| find(&mut comp, v))
            .collect();
        if roots.len() > 1 {
            return Err("arcs are not connected".into());
        }
        Ok(())
    }
}

/// The integer program for a Hamiltonian cycle of `quotient(G_1, .., G_n)`.
/// Variables `2k` and `2k + 1` are `e_uv` and `e_vu` for the `k`-th quotient
/// edge `(u, v)`, `u < v`, as listed in the returned arc table. Connectivity
/// constraints are included only in [`CutMode::Eager`].
pub fn build_ham_ilp(
    quotient: &Graph,
    records: &[NodeRecord],
    cuts: CutMode,
) -> Result<(IlpInstance, Vec<(usize, usize)>)> {
    let n = quotient.n();
    if records.len() != n {
        return Err(Error::arg(format!(
            "{} records for a quotient on {n} vertices",
            records.len()
        )));
    }
    if n == 0 {
        return Err(Error::arg("empty quotient"));
    }
    if let Some(r) = records.iter().find(|r| r.ham == 0 || r.ham > r.size) {
        return Err(Error::arg(format!("invalid record {r:?}")));
    }
    if cuts == CutMode::Eager && n > 20 {
        return Err(Error::Capacity {
            what: "eager cut quotient",
            size: n,
            limit: 20,
        });
    }
    let mut arcs = Vec::new();
    let mut upper = Vec::new();
    let mut names = Vec::new();
    for (u, v) in quotient.edges() {
        let cap = records[u].size.min(records[v].size) as i64;
        for (a, b) in [(u, v), (v, u)] {
            arcs.push((a, b));
            upper.push(cap);
            names.push(format!("e_{a}_{b}"));
        }
    }
    let mut inst = IlpInstance::new(vec![0; arcs.len()], upper)?.with_names(names)?;
    for (i, r) in records.iter().enumerate() {
        let out = || {
            arcs.iter()
                .enumerate()
                .filter(move |(_, a)| a.0 == i)
                .map(|(k, _)| (k, 1))
        };
        let into = arcs
            .iter()
            .enumerate()
            .filter(|(_, a)| a.1 == i)
            .map(|(k, _)| (k, -1));
        inst.add_constraint(LinearConstraint::new(out().chain(into), Relation::Eq, 0))?;
        inst.add_constraint(LinearConstraint::new(out(), Relation::Le, r.size as i64))?;
        inst.add_constraint(LinearConstraint::new(out(), Relation::Ge, r.ham as i64))?;
    }
    if cuts == CutMode::Eager {
        // Sides containing vertex n-1 are the complements of those that don't.
        for side in 1u32..(1 << (n - 1)) {
            inst.add_constraint(cut_constraint(&arcs, side))?;
        }
    }
    Ok((inst, arcs))
}

/// At least one arc crosses between `side` and its complement.
fn cut_constraint(arcs: &[(usize, usize)], side: u32) -> LinearConstraint {
    let inside = |v: usize| side >> v & 1 == 1;
    let terms = arcs
        .iter()
        .enumerate()
        .filter(|(_, a)| inside(a.0) != inside(a.1))
        .map(|(k, _)| (k, 1));
    LinearConstraint::new(terms, Relation::Ge, 1)
}

struct ConnectivityCuts<'a> {
    n: usize,
    arcs: &'a [(usize, usize)],
}

impl CutSeparator for ConnectivityCuts<'_> {
    /// One cut per component of the support graph when it is disconnected.
    fn separate(&mut self, x: &[i64]) -> Vec<LinearConstraint> {
        let mut comp: Vec<usize> = (0..self.n).collect();
        fn find(c: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while c[r] != r {
                r = c[r];
            }
            c[x] = r;
            r
        }
        for (k, &(u, v)) in self.arcs.iter().enumerate() {
            if x[k] > 0 {
                let (a, b) = (find(&mut comp, u), find(&mut comp, v));
                comp[a] = b;
            }
        }
        let mut sides: Vec<(usize, u32)> = Vec::new();
        for v in 0..self.n {
            let r = find(&mut comp, v);
            match sides.iter_mut().find(|s| s.0 == r) {
                Some(s) => s.1 |= 1 << v,
                None => sides.push((r, 1 << v)),
            }
        }
        if sides.len() == 1 {
            return Vec::new();
        }
        sides
            .iter()
            .map(|&(_, side)| cut_constraint(self.arcs, side))
            .collect()
    }

    /// The global minimum cut of the symmetrized LP flow, if it carries less
    /// than one unit in each direction.
    fn separate_fractional(&mut self, x: &[f64]) -> Vec<LinearConstraint> {
        let n = self.n;
        let mut w = vec![vec![0.0f64; n]; n];
        for (k, &(u, v)) in self.arcs.iter().enumerate() {
            w[u][v] += x[k];
            w[v][u] += x[k];
        }
        match min_cut(w) {
            Some((weight, side)) if weight < 2.0 - 1e-6 => vec![cut_constraint(self.arcs, side)],
            _ => Vec::new(),
        }
    }
}

/// Stoer–Wagner on a dense symmetric weight matrix: the lightest cut and one
/// of its sides as a bitmask. `None` for fewer than two vertices.
fn min_cut(mut w: Vec<Vec<f64>>) -> Option<(f64, u32)> {
    let n = w.len();
    let mut members: Vec<u32> = (0..n).map(|v| 1 << v).collect();
    let mut alive: Vec<usize> = (0..n).collect();
    let mut best: Option<(f64, u32)> = None;
    while alive.len() > 1 {
        let mut added = vec![false; n];
        let mut key = vec![0.0f64; n];
        let (mut prev, mut last) = (alive[0], alive[0]);
        for _ in 0..alive.len() {
            let next = *alive
                .iter()
                .filter(|&&v| !added[v])
                .max_by(|&&a, &&b| key[a].total_cmp(&key[b]))
                .unwrap();
            added[next] = true;
            prev = last;
            last = next;
            for &v in &alive {
                if !added[v] {
                    key[v] += w[next][v];
                }
            }
        }
        let phase = key[last];
        if best.is_none_or(|(b, _)| phase < b) {
            best = Some((phase, members[last]));
        }
        members[prev] |= members[last];
        for &v in &alive {
            w[prev][v] += w[last][v];
            w[v][prev] = w[prev][v];
        }
        w[prev][prev] = 0.0;
        alive.retain(|&v| v != last);
    }
    best
}

/// A balanced connected arc multiset realizing a Hamiltonian cycle of the
/// substituted graph, or `None` if there is none. Closed walks through
/// exactly two vertices are accepted as well.
pub fn has_ham_cycle_product(
    quotient: &Graph,
    records: &[NodeRecord],
    opts: &HamOptions,
) -> Result<Option<FlowMultigraph>> {
    let n = quotient.n();
    if n == 1 {
        build_ham_ilp(quotient, records, opts.cuts)?;
        return Ok(None);
    }
    if n > 31 {
        return Err(Error::Capacity {
            what: "Hamiltonicity quotient",
            size: n,
            limit: 31,
        });
    }
    let (inst, arcs) = build_ham_ilp(quotient, records, opts.cuts)?;
    let mut lazy = ConnectivityCuts { n, arcs: &arcs };
    let separator: &mut dyn CutSeparator = match opts.cuts {
        CutMode::Lazy => &mut lazy,
        CutMode::Eager => &mut NoCuts,
    };
    let (x, stats, _) = solve(&inst, separator, &opts.ilp)?;
    log::trace!("ham ilp on {n} quotient vertices: {stats:?}");
    let Some(x) = x else { return Ok(None) };
    let flow = FlowMultigraph::new(
        n,
        arcs.iter().zip(&x).map(|(&(u, v), &c)| (u, v, c as usize)),
    )?;
    flow.check()
        .map_err(|e| Error::internal(format!("ILP returned a bad flow: {e}")))?;
    Ok(Some(flow))
}

/// `ham` of the substituted graph together with the flow found for the
/// minimal `l` (on the quotient plus universal vertex `n`).
pub fn ham_of_product_with_flow(
    quotient: &Graph,
    records: &[NodeRecord],
    opts: &HamOptions,
) -> Result<(NodeRecord, usize, FlowMultigraph)> {
    let n = quotient.n();
    if records.len() != n {
        return Err(Error::arg(format!(
            "{} records for a quotient on {n} vertices",
            records.len()
        )));
    }
    let size: usize = records.iter().map(|r| r.size).sum();
    let extended = crate::graph::add_universal(quotient, 1);
    let mut ext_records = records.to_vec();
    ext_records.push(NodeRecord::new(1, 1));
    let mut probe = |l: usize| -> Result<Option<FlowMultigraph>> {
        ext_records[n] = NodeRecord::new(l, l);
        has_ham_cycle_product(&extended, &ext_records, opts)
    };
    let (l, flow) = match opts.search {
        LSearch::Linear => {
            let mut found = None;
            for l in 1..=size {
                if let Some(f) = probe(l)? {
                    found = Some((l, f));
                    break;
                }
            }
            found.ok_or_else(|| Error::internal("no l up to |V(H)| admits a cycle"))?
        }
        LSearch::Binary => {
            let top = probe(size)?.ok_or_else(|| Error::internal("l = |V(H)| admits no cycle"))?;
            let (mut lo, mut hi, mut best) = (1, size, top);
            while lo < hi {
                let mid = lo + (hi - lo) / 2;
                match probe(mid)? {
                    Some(f) => {
                        hi = mid;
                        best = f;
                    }
                    None => lo = mid + 1,
                }
            }
            (lo, best)
        }
    };
    Ok((NodeRecord::new(l, size), l, flow))
}

pub fn ham_of_product(
    quotient: &Graph,
    records: &[NodeRecord],
    opts: &HamOptions,
) -> Result<NodeRecord> {
    Ok(ham_of_product_with_flow(quotient, records, opts)?.0)
}

/// Closed walk using every arc once, as a sequence of arcs. Built by
/// Hierholzer's algorithm from the lowest vertex with arcs, always leaving
/// toward the lowest-indexed available target.
pub fn eulerian_tour(m: &FlowMultigraph) -> Result<Vec<(usize, usize)>> {
    m.check()
        .map_err(|e| Error::internal(format!("no Eulerian tour: {e}")))?;
    let Some(start) = m.arcs.first().map(|a| a.0) else {
        return Ok(Vec::new());
    };
    // remaining[v]: (target, count) sorted by target; cursor[v] skips spent ones.
    let mut remaining: Vec<Vec<(usize, usize)>> = vec![Vec::new(); m.n];
    for &(u, v, c) in &m.arcs {
        remaining[u].push((v, c));
    }
    let mut cursor = vec![0usize; m.n];
    let mut stack = vec![start];
    let mut circuit = Vec::with_capacity(m.arc_count() + 1);
    while let Some(&v) = stack.last() {
        let out = &mut remaining[v];
        while cursor[v] < out.len() && out[cursor[v]].1 == 0 {
            cursor[v] += 1;
        }
        if cursor[v] < out.len() {
            out[cursor[v]].1 -= 1;
            stack.push(out[cursor[v]].0);
        } else {
            circuit.push(v);
            stack.pop();
        }
    }
    circuit.reverse();
    Ok(circuit.windows(2).map(|w| (w[0], w[1])).collect())
}

/// Joins path partitions of the blocks along an Eulerian tour of `m`.
/// `provider(i, p)` must return exactly `p` nonempty paths for block `i`,
/// where `p` is the out-degree of `i`. Each pass of the tour through `i`
/// consumes the next unused path of block `i`; the returned sequence is
/// cyclic and consecutive paths are joined across a quotient arc.
pub fn stitch_witness<T>(
    m: &FlowMultigraph,
    mut provider: impl FnMut(usize, usize) -> Result<Vec<Vec<T>>>,
) -> Result<Vec<T>> {
    let tour = eulerian_tour(m)?;
    let mut pools: Vec<std::vec::IntoIter<Vec<T>>> = Vec::with_capacity(m.n);
    for i in 0..m.n {
        let p = m.out_degree(i);
        let paths = if p == 0 { Vec::new() } else { provider(i, p)? };
        if paths.len() != p || paths.iter().any(|q| q.is_empty()) {
            return Err(Error::internal(format!(
                "block {i} supplied {} paths, expected {p} nonempty",
                paths.len()
            )));
        }
        pools.push(paths.into_iter());
    }
    let mut out = Vec::new();
    for &(_, to) in &tour {
        let path = pools[to]
            .next()
            .ok_or_else(|| Error::internal(format!("block {to} visited too often")))?;
        out.extend(path);
    }
    Ok(out)
}

/// Splits `paths` into exactly `target` paths by repeatedly cutting the last
/// edge of the longest path (the first one on ties); the cut-off vertex
/// becomes a new path at the end.
pub fn split_paths<T>(mut paths: Vec<Vec<T>>, target: usize) -> Result<Vec<Vec<T>>> {
    let total: usize = paths.iter().map(Vec::len).sum();
    if target < paths.len() || target > total {
        return Err(Error::internal(format!(
            "cannot split {} paths on {total} vertices into {target}",
            paths.len()
        )));
    }
    let mut heap: BinaryHeap<(usize, Reverse<usize>)> = paths
        .iter()
        .enumerate()
        .map(|(i, p)| (p.len(), Reverse(i)))
        .collect();
    while paths.len() < target {
        let (len, Reverse(i)) = heap.pop().expect("some path has an edge");
        let tail = paths[i].pop().expect("nonempty path");
        heap.push((len - 1, Reverse(i)));
        heap.push((1, Reverse(paths.len())));
        paths.push(vec![tail]);
    }
    Ok(paths)
}

fn records_over_tree(t: &ParseTree, opts: &HamOptions) -> Result<Vec<NodeRecord>> {
    let mut records = vec![NodeRecord::new(1, 1); t.len()];
    for (id, node) in t.nodes().iter().enumerate() {
        let kids: Vec<NodeRecord> = node.children.iter().map(|&c| records[c]).collect();
        records[id] = match &node.kind {
            NodeKind::Leaf(_) => NodeRecord::new(1, 1),
            kind => ham_of_product(&quotient_of(kind, kids.len()), &kids, opts)?,
        };
    }
    Ok(records)
}

fn quotient_of(kind: &NodeKind, arity: usize) -> Graph {
    match kind {
        NodeKind::Union => Graph::empty(arity),
        NodeKind::Join => Graph::complete(arity),
        NodeKind::Prime(q) => q.clone(),
        NodeKind::Leaf(_) => Graph::empty(1),
    }
}

fn tree(g: &Graph) -> Result<ParseTree> {
    if g.n() == 0 {
        return Err(Error::arg("graph has no vertices"));
    }
    Ok(normalize(&modular_decomposition(g)?))
}

/// Fewest vertex-disjoint paths covering `g`.
pub fn ham_number(g: &Graph) -> Result<usize> {
    ham_number_with(g, &HamOptions::default())
}

pub fn ham_number_with(g: &Graph, opts: &HamOptions) -> Result<usize> {
    let t = tree(g)?;
    Ok(records_over_tree(&t, opts)?[t.root()].ham)
}

pub fn hamiltonian_path(g: &Graph) -> Result<bool> {
    Ok(ham_number(g)? == 1)
}

pub fn hamiltonian_cycle(g: &Graph) -> Result<bool> {
    hamiltonian_cycle_with(g, &HamOptions::default())
}

pub fn hamiltonian_cycle_with(g: &Graph, opts: &HamOptions) -> Result<bool> {
    if g.n() < 3 {
        return Ok(false);
    }
    let t = tree(g)?;
    let root = t.node(t.root());
    let records = records_over_tree(&t, opts)?;
    let kids: Vec<NodeRecord> = root.children.iter().map(|&c| records[c]).collect();
    Ok(has_ham_cycle_product(&quotient_of(&root.kind, kids.len()), &kids, opts)?.is_some())
}

type PathTable = Vec<Option<Vec<Vec<usize>>>>;

/// Paths of a minimum path partition for every node, computed bottom-up;
/// each child's paths are consumed by its parent. With `skip_root` the root
/// itself is left out.
fn partition_over_tree(
    t: &ParseTree,
    opts: &HamOptions,
    skip_root: bool,
) -> Result<(Vec<NodeRecord>, PathTable)> {
    let mut records = vec![NodeRecord::new(1, 1); t.len()];
    let mut paths: PathTable = vec![None; t.len()];
    for (id, node) in t.nodes().iter().enumerate() {
        if skip_root && id == t.root() {
            break;
        }
        if let NodeKind::Leaf(v) = node.kind {
            paths[id] = Some(vec![vec![v]]);
            continue;
        }
        let kids: Vec<NodeRecord> = node.children.iter().map(|&c| records[c]).collect();
        let q = quotient_of(&node.kind, kids.len());
        let (record, l, flow) = ham_of_product_with_flow(&q, &kids, opts)?;
        let n = q.n();
        let cyclic = stitch_witness(&flow, |i, p| {
            if i == n {
                return Ok((0..p).map(|_| vec![None]).collect());
            }
            let own = paths[node.children[i]]
                .take()
                .ok_or_else(|| Error::internal("child paths missing"))?;
            let split = split_paths(own, p)?;
            Ok(split
                .into_iter()
                .map(|q| q.into_iter().map(Some).collect())
                .collect())
        })?;
        let segments = split_at_hubs(cyclic);
        if segments.len() != l {
            return Err(Error::internal(format!(
                "{} paths stitched, expected {l}",
                segments.len()
            )));
        }
        records[id] = record;
        paths[id] = Some(segments);
    }
    Ok((records, paths))
}

/// Cuts a cyclic sequence at every `None`; consecutive `None`s never occur.
fn split_at_hubs(cyclic: Vec<Option<usize>>) -> Vec<Vec<usize>> {
    let Some(first_hub) = cyclic.iter().position(Option::is_none) else {
        return vec![cyclic.into_iter().flatten().collect()];
    };
    let len = cyclic.len();
    let mut out = Vec::new();
    let mut current = Vec::new();
    for k in 1..=len {
        match cyclic[(first_hub + k) % len] {
            Some(v) => current.push(v),
            None => out.push(std::mem::take(&mut current)),
        }
    }
    out
}

/// Exactly `ham_number(g)` disjoint paths covering `g`.
pub fn path_partition_witness(g: &Graph) -> Result<Vec<Vec<usize>>> {
    path_partition_witness_with(g, &HamOptions::default())
}

pub fn path_partition_witness_with(g: &Graph, opts: &HamOptions) -> Result<Vec<Vec<usize>>> {
    let t = tree(g)?;
    let (_, mut paths) = partition_over_tree(&t, opts, false)?;
    paths[t.root()]
        .take()
        .ok_or_else(|| Error::internal("root paths missing"))
}

/// A Hamiltonian cycle of `g` as a vertex sequence, if one exists.
pub fn hamiltonian_cycle_witness(g: &Graph) -> Result<Option<Vec<usize>>> {
    hamiltonian_cycle_witness_with(g, &HamOptions::default())
}

pub fn hamiltonian_cycle_witness_with(g: &Graph, opts: &HamOptions) -> Result<Option<Vec<usize>>> {
    if g.n() < 3 {
        return Ok(None);
    }
    let t = tree(g)?;
    let (records, mut paths) = partition_over_tree(&t, opts, true)?;
    let root = t.node(t.root());
    let kids: Vec<NodeRecord> = root.children.iter().map(|&c| records[c]).collect();
    let q = quotient_of(&root.kind, kids.len());
    let Some(flow) = has_ham_cycle_product(&q, &kids, opts)? else {
        return Ok(None);
    };
    let cycle = stitch_witness(&flow, |i, p| {
        let own = paths[root.children[i]]
            .take()
            .ok_or_else(|| Error::internal("child paths missing"))?;
        split_paths(own, p)
    })?;
    Ok(Some(cycle))
}
