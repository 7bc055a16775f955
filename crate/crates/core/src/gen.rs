//! Deterministic graph generators.
//!
//! All randomness comes from ChaCha8 (`rand_chacha::ChaCha8Rng`) seeded with
//! `seed_from_u64`, so a seed reproduces the same graph on every platform.

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{substitute, Graph};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random graphs of bounded modular-width, built as a random expression of
/// substitutions into quotients on at most `width` vertices.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MwGenerator {
    pub width: usize,
    /// Resample quotients until they are connected.
    pub connected_quotients: bool,
    /// Probability of each quotient edge.
    pub density: f64,
}

impl MwGenerator {
    pub fn new(width: usize) -> Self {
        MwGenerator {
            width,
            connected_quotients: false,
            density: 0.5,
        }
    }

    pub fn generate(&self, n: usize, seed: u64) -> Result<Graph> {
        if n == 0 {
            return Err(Error::arg("the generated graph needs at least one vertex"));
        }
        if self.width < 2 {
            return Err(Error::arg("the width bound must be at least 2"));
        }
        if !(0.0..=1.0).contains(&self.density) {
            return Err(Error::arg("density must lie in [0, 1]"));
        }
        let mut rng = rng(seed);
        let g = self.build(n, &mut rng)?;
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(&mut rng);
        g.relabel(&perm)
    }

    fn build(&self, n: usize, rng: &mut ChaCha8Rng) -> Result<Graph> {
        if n == 1 {
            return Ok(Graph::empty(1));
        }
        let k = rng.gen_range(2..=self.width.min(n));
        let sizes = random_composition(n, k, rng);
        let quotient = loop {
            let q = gnp_with(k, self.density, rng);
            if !self.connected_quotients || q.is_connected() {
                break q;
            }
        };
        let parts = sizes
            .into_iter()
            .map(|s| self.build(s, rng))
            .collect::<Result<Vec<_>>>()?;
        substitute(&quotient, &parts)
    }
}

/// Graph on `n` vertices with modular-width at most `w`.
pub fn gen_bounded_mw(n: usize, w: usize, seed: u64) -> Result<Graph> {
    MwGenerator::new(w).generate(n, seed)
}

/// `n` split into `k` positive parts, uniform over compositions.
fn random_composition(n: usize, k: usize, rng: &mut ChaCha8Rng) -> Vec<usize> {
    let mut cuts = BTreeSet::new();
    while cuts.len() < k - 1 {
        cuts.insert(rng.gen_range(1..n));
    }
    let mut prev = 0;
    cuts.into_iter()
        .chain([n])
        .map(|c| c - std::mem::replace(&mut prev, c))
        .collect()
}

fn gnp_with(n: usize, p: f64, rng: &mut ChaCha8Rng) -> Graph {
    let mut edges = Vec::new();
    for v in 1..n {
        for u in 0..v {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges).expect("valid edges")
}

/// Erdős–Rényi `G(n, p)`.
pub fn gen_gnp(n: usize, p: f64, seed: u64) -> Result<Graph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::arg("edge probability must lie in [0, 1]"));
    }
    Ok(gnp_with(n, p, &mut rng(seed)))
}

/// A star with `k` leaves after subdividing every edge once: center 0,
/// midpoints `1..=k`, leaves `k+1..=2k`.
pub fn gen_subdivided_star(k: usize) -> Result<Graph> {
    if k < 2 {
        return Err(Error::arg("a subdivided star needs at least 2 leaves"));
    }
    Graph::from_edges(2 * k + 1, (1..=k).flat_map(|i| [(0, i), (i, k + i)]))
}

/// Standard graph families by name.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NamedGraph {
    Cycle(usize),
    Path(usize),
    Complete(usize),
    Empty(usize),
    CompleteBipartite(usize, usize),
    SubdividedStar(usize),
    Petersen,
    Grotzsch,
}

impl NamedGraph {
    pub fn build(&self) -> Result<Graph> {
        Ok(match *self {
            NamedGraph::Cycle(n) if n < 3 => {
                return Err(Error::arg("a cycle needs at least 3 vertices"))
            }
            NamedGraph::Cycle(n) => Graph::cycle(n),
            NamedGraph::Path(n) => Graph::path(n),
            NamedGraph::Complete(n) => Graph::complete(n),
            NamedGraph::Empty(n) => Graph::empty(n),
            NamedGraph::CompleteBipartite(a, b) => Graph::complete_bipartite(a, b),
            NamedGraph::SubdividedStar(k) => gen_subdivided_star(k)?,
            NamedGraph::Petersen => Graph::from_edges(
                10,
                (0..5).flat_map(|i| [(i, (i + 1) % 5), (5 + i, 5 + (i + 2) % 5), (i, i + 5)]),
            )?,
            // Mycielskian of C5
            NamedGraph::Grotzsch => Graph::from_edges(
                11,
                (0..5).flat_map(|i| {
                    [
                        (i, (i + 1) % 5),
                        (5 + i, (i + 1) % 5),
                        (5 + i, (i + 4) % 5),
                        (10, 5 + i),
                    ]
                }),
            )?,
        })
    }
}

impl FromStr for NamedGraph {
    type Err = Error;

    /// Accepts `cycle 5`, `cycle:5`, `complete-bipartite 2 3`, `petersen`, ...
    fn from_str(s: &str) -> Result<Self> {
        let words: Vec<&str> = s
            .split(|c: char| c.is_whitespace() || c == ':' || c == ',')
            .filter(|w| !w.is_empty())
            .collect();
        let Some((&name, args)) = words.split_first() else {
            return Err(Error::arg("empty graph name"));
        };
        let nums = args
            .iter()
            .map(|a| {
                a.parse::<usize>()
                    .map_err(|_| Error::arg(format!("bad parameter `{a}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        let named = match (name.to_ascii_lowercase().as_str(), nums.as_slice()) {
            ("cycle", &[n]) => NamedGraph::Cycle(n),
            ("path", &[n]) => NamedGraph::Path(n),
            ("complete", &[n]) => NamedGraph::Complete(n),
            ("empty" | "independent", &[n]) => NamedGraph::Empty(n),
            ("complete-bipartite", &[a, b]) => NamedGraph::CompleteBipartite(a, b),
            ("subdivided-star", &[k]) => NamedGraph::SubdividedStar(k),
            ("petersen", &[]) => NamedGraph::Petersen,
            ("grotzsch", &[]) => NamedGraph::Grotzsch,
            _ => return Err(Error::arg(format!("unknown graph family `{s}`"))),
        };
        Ok(named)
    }
}

impl fmt::Display for NamedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NamedGraph::Cycle(n) => write!(f, "cycle {n}"),
            NamedGraph::Path(n) => write!(f, "path {n}"),
            NamedGraph::Complete(n) => write!(f, "complete {n}"),
            NamedGraph::Empty(n) => write!(f, "empty {n}"),
            NamedGraph::CompleteBipartite(a, b) => write!(f, "complete-bipartite {a} {b}"),
            NamedGraph::SubdividedStar(k) => write!(f, "subdivided-star {k}"),
            NamedGraph::Petersen => f.write_str("petersen"),
            NamedGraph::Grotzsch => f.write_str("grotzsch"),
        }
    }
}

pub fn gen_named(name: &str) -> Result<Graph> {
    name.parse::<NamedGraph>()?.build()
}

/// Largest vertex count accepted by [`all_graphs`].
pub const ENUMERATION_LIMIT: usize = 9;

/// One representative of every isomorphism class of graphs on `n` vertices,
/// grown one vertex at a time and deduplicated by a canonical code.
pub fn all_graphs(n: usize) -> Result<Vec<Graph>> {
    if n > ENUMERATION_LIMIT {
        return Err(Error::Capacity {
            what: "graph enumeration",
            size: n,
            limit: ENUMERATION_LIMIT,
        });
    }
    let mut level = vec![Graph::empty(0)];
    for k in 1..=n {
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for g in &level {
            for mask in 0u32..1 << (k - 1) {
                let edges = g.edges().chain(
                    (0..k - 1)
                        .filter(|&u| mask >> u & 1 == 1)
                        .map(|u| (u, k - 1)),
                );
                let h = Graph::from_edges(k, edges)?;
                if seen.insert(canonical_code(&h)) {
                    next.push(h);
                }
            }
        }
        level = next;
    }
    Ok(level)
}

/// Connected graphs on `n` vertices up to isomorphism.
pub fn connected_graphs(n: usize) -> Result<Vec<Graph>> {
    Ok(all_graphs(n)?
        .into_iter()
        .filter(Graph::is_connected)
        .collect())
}

/// Isomorphism-invariant code for graphs on at most 11 vertices: vertices are
/// grouped by an invariant (degree, then sorted neighbor degrees), and the
/// smallest adjacency bit string over all class-respecting orders is taken.
pub fn canonical_code(g: &Graph) -> (Vec<(usize, Vec<usize>)>, u64) {
    let n = g.n();
    assert!(n <= 11, "canonical codes are limited to 11 vertices");
    let invariant = |v: usize| {
        let mut nd: Vec<usize> = g.neighbors(v).iter().map(|&u| g.degree(u)).collect();
        nd.sort_unstable();
        (g.degree(v), nd)
    };
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| invariant(v));
    let classes: Vec<_> = order.iter().map(|&v| invariant(v)).collect();

    fn search(
        g: &Graph,
        classes: &[(usize, Vec<usize>)],
        order: &[usize],
        placed: &mut Vec<usize>,
        used: &mut [bool],
        best: &mut u64,
    ) {
        let p = placed.len();
        if p == order.len() {
            let mut code = 0u64;
            for j in 1..p {
                for i in 0..j {
                    code = code << 1 | g.has_edge(placed[i], placed[j]) as u64;
                }
            }
            *best = (*best).min(code);
            return;
        }
        for (idx, &v) in order.iter().enumerate() {
            if !used[v] && classes[idx] == classes[p] {
                used[v] = true;
                placed.push(v);
                search(g, classes, order, placed, used, best);
                placed.pop();
                used[v] = false;
            }
        }
    }

    let mut best = u64::MAX;
    search(
        g,
        &classes,
        &order,
        &mut Vec::new(),
        &mut vec![false; n],
        &mut best,
    );
    (classes, best)
}
