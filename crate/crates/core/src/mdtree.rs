//! Modular decomposition.
//!
//! A set `M` of vertices is a *module* if every vertex outside `M` sees
//! either all of `M` or none of it. The canonical decomposition tree has one
//! node per strong module; an internal node is a [`NodeKind::Union`] when its
//! module induces a disconnected graph, a [`NodeKind::Join`] when the
//! complement is disconnected, and a [`NodeKind::Prime`] otherwise. A prime
//! node stores its quotient graph, which has no nontrivial module. Reading the
//! tree bottom-up as an expression of single vertices, disjoint unions,
//! complete joins and substitutions gives back the graph, and the largest
//! prime quotient is the modular-width.
//!
//! Trees are stored as arenas in post-order: every child index is smaller
//! than its parent's, so dynamic programs are a single forward pass.

use fixedbitset::FixedBitSet;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

pub type NodeId = usize;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NodeKind {
    /// A single vertex of the input graph.
    Leaf(usize),
    /// Disjoint union of the children.
    Union,
    /// Complete join of the children.
    Join,
    /// Substitution of the children into the quotient graph; child `i`
    /// replaces quotient vertex `i`.
    Prime(Graph),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Node {
    pub kind: NodeKind,
    pub children: Vec<NodeId>,
}

impl Node {
    pub fn arity(&self) -> usize {
        self.children.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseTree {
    nodes: Vec<Node>,
    root: NodeId,
}

/// Incremental construction of a [`ParseTree`]; nodes must be added children
/// first.
#[derive(Debug, Default)]
pub struct TreeBuilder {
    nodes: Vec<Node>,
}

impl TreeBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn leaf(&mut self, v: usize) -> NodeId {
        self.push(NodeKind::Leaf(v), Vec::new())
    }

    pub fn union(&mut self, children: Vec<NodeId>) -> NodeId {
        self.push(NodeKind::Union, children)
    }

    pub fn join(&mut self, children: Vec<NodeId>) -> NodeId {
        self.push(NodeKind::Join, children)
    }

    pub fn prime(&mut self, quotient: Graph, children: Vec<NodeId>) -> NodeId {
        self.push(NodeKind::Prime(quotient), children)
    }

    fn push(&mut self, kind: NodeKind, children: Vec<NodeId>) -> NodeId {
        self.nodes.push(Node { kind, children });
        self.nodes.len() - 1
    }

    /// Finishes the tree rooted at `root`. Checks that every node is reachable
    /// exactly once, that children precede parents, that arities match the
    /// quotients, and that the leaves are exactly `0..n`.
    pub fn build(self, root: NodeId) -> Result<ParseTree> {
        let nodes = self.nodes;
        if root + 1 != nodes.len() {
            return Err(Error::arg("the root must be the last node added"));
        }
        let mut used = vec![false; nodes.len()];
        let mut leaves = Vec::new();
        for (id, node) in nodes.iter().enumerate() {
            for &c in &node.children {
                if c >= id {
                    return Err(Error::arg(format!(
                        "child {c} of node {id} added after its parent"
                    )));
                }
                if std::mem::replace(&mut used[c], true) {
                    return Err(Error::arg(format!("node {c} has two parents")));
                }
            }
            match &node.kind {
                NodeKind::Leaf(v) => {
                    if !node.children.is_empty() {
                        return Err(Error::arg("a leaf cannot have children"));
                    }
                    leaves.push(*v);
                }
                NodeKind::Union | NodeKind::Join if node.arity() < 2 => {
                    return Err(Error::arg(format!("node {id} needs at least two operands")));
                }
                NodeKind::Prime(q) if q.n() != node.arity() || q.n() < 2 => {
                    return Err(Error::arg(format!(
                        "prime node {id} has {} children for a quotient on {} vertices",
                        node.arity(),
                        q.n()
                    )));
                }
                _ => {}
            }
        }
        if used[..root].iter().any(|u| !u) {
            return Err(Error::arg("tree contains unreachable nodes"));
        }
        leaves.sort_unstable();
        if leaves.iter().enumerate().any(|(i, &v)| i != v) {
            return Err(Error::arg("leaves must be exactly the vertices 0..n"));
        }
        Ok(ParseTree { nodes, root })
    }
}

impl ParseTree {
    pub fn root(&self) -> NodeId {
        self.root
    }

    pub fn node(&self, id: NodeId) -> &Node {
        &self.nodes[id]
    }

    /// All nodes in post-order.
    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn vertex_count(&self) -> usize {
        self.nodes
            .iter()
            .filter(|n| matches!(n.kind, NodeKind::Leaf(_)))
            .count()
    }

    /// Vertices below each node, in left-to-right leaf order.
    pub fn leaf_sets(&self) -> Vec<Vec<usize>> {
        let mut sets: Vec<Vec<usize>> = Vec::with_capacity(self.nodes.len());
        for node in &self.nodes {
            let set = match node.kind {
                NodeKind::Leaf(v) => vec![v],
                _ => node
                    .children
                    .iter()
                    .flat_map(|&c| sets[c].iter().copied())
                    .collect(),
            };
            sets.push(set);
        }
        sets
    }

    /// Number of vertices below each node.
    pub fn subtree_sizes(&self) -> Vec<usize> {
        let mut sizes: Vec<usize> = Vec::with_capacity(self.nodes.len());
        for node in &self.nodes {
            let s = match node.kind {
                NodeKind::Leaf(_) => 1,
                _ => node.children.iter().map(|&c| sizes[c]).sum(),
            };
            sizes.push(s);
        }
        sizes
    }

    /// Evaluates the expression, keeping the original vertex labels.
    pub fn evaluate(&self) -> Graph {
        let n = self.vertex_count();
        let mut adj = vec![Vec::new(); n];
        let mut below: Vec<Vec<usize>> = Vec::with_capacity(self.nodes.len());
        for node in &self.nodes {
            let child_sets: Vec<Vec<usize>> = node
                .children
                .iter()
                .map(|&c| std::mem::take(&mut below[c]))
                .collect();
            let mut connect = |a: &[usize], b: &[usize]| {
                for &u in a {
                    for &v in b {
                        adj[u].push(v);
                        adj[v].push(u);
                    }
                }
            };
            match &node.kind {
                NodeKind::Leaf(_) | NodeKind::Union => {}
                NodeKind::Join => {
                    for i in 0..child_sets.len() {
                        for j in i + 1..child_sets.len() {
                            connect(&child_sets[i], &child_sets[j]);
                        }
                    }
                }
                NodeKind::Prime(q) => {
                    for (i, j) in q.edges() {
                        connect(&child_sets[i], &child_sets[j]);
                    }
                }
            }
            below.push(match node.kind {
                NodeKind::Leaf(v) => vec![v],
                _ => child_sets.concat(),
            });
        }
        Graph::from_raw_adjacency(adj)
    }

    /// Largest number of operands of any prime node; 0 when there is none.
    pub fn width(&self) -> usize {
        modular_width(self)
    }

    pub fn to_json(&self) -> Value {
        let mut values: Vec<Value> = Vec::with_capacity(self.nodes.len());
        for node in &self.nodes {
            let children: Vec<Value> = node
                .children
                .iter()
                .map(|&c| std::mem::take(&mut values[c]))
                .collect();
            values.push(match &node.kind {
                NodeKind::Leaf(v) => json!({ "kind": "leaf", "vertex": v }),
                NodeKind::Union => json!({ "kind": "union", "children": children }),
                NodeKind::Join => json!({ "kind": "join", "children": children }),
                NodeKind::Prime(q) => json!({
                    "kind": "prime",
                    "quotient": { "n": q.n(), "edges": q.edges().map(|(u, v)| [u, v]).collect::<Vec<_>>() },
                    "children": children,
                }),
            });
        }
        std::mem::take(&mut values[self.root])
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph parse_tree {\n  node [shape=box];\n");
        for (id, node) in self.nodes.iter().enumerate() {
            let label = match &node.kind {
                NodeKind::Leaf(v) => format!("{v}"),
                NodeKind::Union => "union".to_string(),
                NodeKind::Join => "join".to_string(),
                NodeKind::Prime(q) => format!("prime {} ({} edges)", q.n(), q.m()),
            };
            s.push_str(&format!("  n{id} [label=\"{label}\"];\n"));
            for &c in &node.children {
                s.push_str(&format!("  n{id} -> n{c};\n"));
            }
        }
        s.push_str("}\n");
        s
    }
}

/// Whether `s` is a module of `g`.
pub fn is_module(g: &Graph, s: &VertexSet) -> Result<bool> {
    if s.is_empty() {
        return Err(Error::arg("a module must be nonempty"));
    }
    s.check_range(g.n())?;
    let mut inside = vec![false; g.n()];
    for v in s.iter() {
        inside[v] = true;
    }
    let mut hits = vec![0usize; g.n()];
    for v in s.iter() {
        for &w in g.neighbors(v) {
            hits[w] += 1;
        }
    }
    Ok((0..g.n()).all(|w| inside[w] || hits[w] == 0 || hits[w] == s.len()))
}

/// Largest operand count of any prime node; 0 if the tree has none.
pub fn modular_width(t: &ParseTree) -> usize {
    t.nodes
        .iter()
        .filter(|n| matches!(n.kind, NodeKind::Prime(_)))
        .map(Node::arity)
        .max()
        .unwrap_or(0)
}

/// Rewrites every union and join as a left-leaning chain of binary
/// substitutions into `I2` and `K2` respectively. Prime nodes and leaves are
/// kept as they are.
pub fn normalize(t: &ParseTree) -> ParseTree {
    let mut b = TreeBuilder::new();
    let mut map = vec![0; t.nodes.len()];
    let pair = |join: bool| {
        if join {
            Graph::complete(2)
        } else {
            Graph::empty(2)
        }
    };
    for (id, node) in t.nodes.iter().enumerate() {
        let children: Vec<NodeId> = node.children.iter().map(|&c| map[c]).collect();
        map[id] = match &node.kind {
            NodeKind::Leaf(v) => b.leaf(*v),
            NodeKind::Prime(q) => b.prime(q.clone(), children),
            kind @ (NodeKind::Union | NodeKind::Join) => {
                let join = matches!(kind, NodeKind::Join);
                let mut acc = children[0];
                for &c in &children[1..] {
                    acc = b.prime(pair(join), vec![acc, c]);
                }
                acc
            }
        };
    }
    ParseTree {
        root: map[t.root],
        nodes: b.nodes,
    }
}

/// Computes the canonical modular decomposition of `g`.
///
/// Each strong module is split into its maximal strong submodules: connected
/// components for a union, co-components for a join, and for a prime module
/// the maximal proper modules, found one pivot at a time (see
/// [`maximal_module_containing`]). Children are ordered by their smallest
/// vertex. All set operations run on adjacency bitsets.
pub fn modular_decomposition(g: &Graph) -> Result<ParseTree> {
    let n = g.n();
    if n == 0 {
        return Err(Error::arg("cannot decompose the empty graph"));
    }
    let adj = g.adjacency_bits();

    struct Pending {
        kind: NodeKind,
        children: Vec<usize>,
    }
    // Top-down pass over strong modules; `modules[i]` is decomposed into
    // `pending[i]` whose children index back into `modules`.
    let mut full = FixedBitSet::with_capacity(n);
    full.insert_range(..);
    let mut modules: Vec<FixedBitSet> = vec![full];
    let mut pending: Vec<Option<Pending>> = vec![None];
    let mut work = vec![0usize];
    while let Some(id) = work.pop() {
        let set = modules[id].clone();
        let first = set.minimum().expect("modules are nonempty");
        let (kind, parts) = if set.count_ones(..) == 1 {
            (NodeKind::Leaf(first), Vec::new())
        } else {
            let comps = components(&adj, &set, false);
            if comps.len() > 1 {
                (NodeKind::Union, comps)
            } else {
                let cocomps = components(&adj, &set, true);
                if cocomps.len() > 1 {
                    (NodeKind::Join, cocomps)
                } else {
                    let parts = prime_parts(&adj, &set);
                    let reps: Vec<usize> = parts.iter().map(|p| p.minimum().unwrap()).collect();
                    let k = reps.len();
                    let quotient = Graph::from_edges(
                        k,
                        (0..k)
                            .flat_map(|i| (i + 1..k).map(move |j| (i, j)))
                            .filter(|&(i, j)| adj[reps[i]].contains(reps[j])),
                    )?;
                    (NodeKind::Prime(quotient), parts)
                }
            }
        };
        let mut children = Vec::with_capacity(parts.len());
        for part in parts {
            children.push(modules.len());
            work.push(modules.len());
            modules.push(part);
            pending.push(None);
        }
        pending[id] = Some(Pending { kind, children });
    }

    // Emit in post-order with an explicit stack.
    let mut b = TreeBuilder::new();
    let mut emitted = vec![usize::MAX; modules.len()];
    let mut stack = vec![(0usize, false)];
    while let Some((id, expanded)) = stack.pop() {
        let p = pending[id].as_ref().unwrap();
        if expanded {
            let children = p.children.iter().map(|&c| emitted[c]).collect();
            emitted[id] = b.push(p.kind.clone(), children);
        } else {
            stack.push((id, true));
            for &c in p.children.iter().rev() {
                stack.push((c, false));
            }
        }
    }
    Ok(ParseTree {
        root: emitted[0],
        nodes: b.nodes,
    })
}

/// Connected components of `G[set]` (or of its complement), ordered by
/// smallest vertex.
fn components(adj: &[FixedBitSet], set: &FixedBitSet, complement: bool) -> Vec<FixedBitSet> {
    let mut unvisited = set.clone();
    let mut comps = Vec::new();
    let mut frontier = Vec::new();
    while let Some(start) = unvisited.minimum() {
        let mut comp = FixedBitSet::with_capacity(set.len());
        unvisited.remove(start);
        comp.insert(start);
        frontier.push(start);
        while let Some(v) = frontier.pop() {
            let reached: Vec<usize> = if complement {
                unvisited.difference(&adj[v]).collect()
            } else {
                unvisited.intersection(&adj[v]).collect()
            };
            for u in reached {
                unvisited.remove(u);
                comp.insert(u);
                frontier.push(u);
            }
        }
        comps.push(comp);
    }
    comps
}

/// Splits a module whose induced graph and complement are both connected into
/// its maximal proper modules, ordered by smallest vertex.
fn prime_parts(adj: &[FixedBitSet], set: &FixedBitSet) -> Vec<FixedBitSet> {
    let mut rest = set.clone();
    let mut parts = Vec::new();
    while let Some(v) = rest.minimum() {
        let part = maximal_module_containing(adj, set, v);
        rest.difference_with(&part);
        parts.push(part);
    }
    parts
}

/// The maximal proper module of `G[set]` that contains `v`, assuming `G[set]`
/// and its complement are connected.
///
/// For `u != v`, the smallest module containing `{v, u}` is `v` plus everything
/// reachable from `u` in the digraph with an arc `x -> w` whenever `w`
/// distinguishes `x` from `v`. That module is the whole set exactly for the
/// vertices outside the maximal module of `v`; those vertices form the unique
/// source component of the digraph. A DFS finishes last inside that
/// component, and a reverse search from there collects all of it.
fn maximal_module_containing(adj: &[FixedBitSet], set: &FixedBitSet, v: usize) -> FixedBitSet {
    let mut others = set.clone();
    others.remove(v);
    let av = adj[v].as_slice();
    let words = av.len();

    // Forward DFS; successors of x are (N(x) xor N(v)) ∩ others.
    let mut unvisited = others.clone();
    let mut last_finished = None;
    let mut stack: Vec<(usize, usize)> = Vec::new();
    while let Some(s) = unvisited.minimum() {
        unvisited.remove(s);
        stack.push((s, 0));
        while let Some(&(x, resume)) = stack.last() {
            let ax = adj[x].as_slice();
            let un = unvisited.as_slice();
            let mut word = resume;
            let mut next = None;
            while word < words {
                let bits = (ax[word] ^ av[word]) & un[word];
                if bits != 0 {
                    next = Some(word * usize::BITS as usize + bits.trailing_zeros() as usize);
                    break;
                }
                word += 1;
            }
            stack.last_mut().unwrap().1 = word;
            match next {
                Some(w) => {
                    unvisited.remove(w);
                    stack.push((w, 0));
                }
                None => {
                    last_finished = Some(x);
                    stack.pop();
                }
            }
        }
    }
    let source = last_finished.expect("a prime module has more than one vertex");

    // Reverse search; predecessors of w are the x in `others` with
    // adj(w, x) != adj(w, v).
    let mut reached = FixedBitSet::with_capacity(set.len());
    reached.insert(source);
    let mut open = others.clone();
    open.remove(source);
    let mut frontier = vec![source];
    while let Some(w) = frontier.pop() {
        let preds: Vec<usize> = if adj[w].contains(v) {
            open.difference(&adj[w]).collect()
        } else {
            open.intersection(&adj[w]).collect()
        };
        for x in preds {
            open.remove(x);
            reached.insert(x);
            frontier.push(x);
        }
    }
    let mut module = set.clone();
    module.difference_with(&reached);
    module
}
