//! Chromatic number over the decomposition tree.
//!
//! A record is just `χ`. Substituting graphs `G_i` into a quotient `Q` gives
//! the same chromatic number as substituting cliques `K_{χ(G_i)}`, so a node
//! only needs the child values. Coloring the clique blow-up is a
//! multicoloring of `Q`: choose independent sets of `Q` with multiplicities so
//! that vertex `i` lies in at least `χ_i` of them, using as few sets as
//! possible. This is solved exactly as an integer program over the maximal
//! independent sets.
//!
//! Giving each block of a partition of `Q` into independent sets its own
//! range of `max χ_i` colors is always a valid coloring, and the best such
//! partition (a Max Weighted Partition) is the starting upper bound. It is not
//! always optimal: `C5` with every vertex replaced by `K2` has `χ = 5` while
//! every such partition costs 6.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::ilp::{
    feasible, relaxation_minimum, IlpConfig, IlpInstance, LinearConstraint, Relation,
};
use crate::mdtree::{modular_decomposition, normalize, NodeKind, ParseTree};
use crate::partition::{
    max_weighted_partition_value_fast_with_limit, max_weighted_partition_with_limit,
    WeightedPartitionProblem, DEFAULT_SIZE_LIMIT, MAX_SIZE,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ColoringOptions {
    /// Use the transform-based partition solver for the upper bound.
    pub fast_mwp: bool,
    /// Largest quotient handed to the partition solver.
    pub size_limit: usize,
    pub ilp: IlpConfig,
}

impl Default for ColoringOptions {
    fn default() -> Self {
        ColoringOptions {
            fast_mwp: false,
            size_limit: DEFAULT_SIZE_LIMIT,
            ilp: IlpConfig::default(),
        }
    }
}

/// A proper coloring with colors `0..count`, all of them used.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoringWitness {
    pub colors: Vec<usize>,
    pub count: usize,
}

fn check_arity(quotient: &Graph, child_chi: &[usize]) -> Result<()> {
    let n = quotient.n();
    if child_chi.len() != n {
        return Err(Error::arg(format!(
            "{} child chromatic numbers for a quotient on {n} vertices",
            child_chi.len()
        )));
    }
    if child_chi.contains(&0) {
        return Err(Error::arg("child chromatic numbers must be positive"));
    }
    if n > MAX_SIZE {
        return Err(Error::Capacity {
            what: "coloring quotient",
            size: n,
            limit: MAX_SIZE,
        });
    }
    Ok(())
}

fn neighbor_masks(q: &Graph) -> Vec<u32> {
    (0..q.n())
        .map(|v| q.neighbors(v).iter().fold(0, |m, &u| m | 1 << u))
        .collect()
}

/// The partition instance for one substitution node: `k = n` parts,
/// `cost(S) = -max χ_i` on independent `S` and `-(1 + Σ χ_i)` elsewhere.
pub fn coloring_problem(quotient: &Graph, child_chi: &[usize]) -> Result<WeightedPartitionProblem> {
    check_arity(quotient, child_chi)?;
    let n = quotient.n();
    let sentinel = -(1 + child_chi.iter().sum::<usize>() as i64);
    let nbr = neighbor_masks(quotient);
    let mut independent = vec![true; 1 << n];
    let mut top = vec![0usize; 1 << n];
    let mut cost = vec![0i64; 1 << n];
    for s in 1usize..1 << n {
        let v = s.trailing_zeros() as usize;
        let rest = s & (s - 1);
        independent[s] = independent[rest] && nbr[v] as usize & rest == 0;
        top[s] = top[rest].max(child_chi[v]);
        cost[s] = if independent[s] {
            -(top[s] as i64)
        } else {
            sentinel
        };
    }
    WeightedPartitionProblem::new(n, n.max(1), cost)
}

/// Colors of the substituted graph and, per child, the parent colors its own
/// colors `0..χ_i` map to.
struct Combined {
    chi: usize,
    maps: Vec<Vec<usize>>,
}

fn maximal_independent_sets(q: &Graph) -> Vec<u32> {
    let n = q.n();
    let nbr = neighbor_masks(q);
    let full = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    let mut out = Vec::new();
    // Bron–Kerbosch on the complement: a clique there is an independent set.
    fn extend(r: u32, mut p: u32, mut x: u32, nbr: &[u32], full: u32, out: &mut Vec<u32>) {
        if p == 0 && x == 0 {
            out.push(r);
            return;
        }
        let pivot = (p | x).trailing_zeros() as usize;
        let non_adj = |v: usize| full & !nbr[v] & !(1 << v);
        let mut cand = p & !non_adj(pivot);
        while cand != 0 {
            let v = cand.trailing_zeros() as usize;
            cand &= cand - 1;
            extend(r | 1 << v, p & non_adj(v), x & non_adj(v), nbr, full, out);
            p &= !(1 << v);
            x |= 1 << v;
        }
    }
    extend(0, full, 0, &nbr, full, &mut out);
    out.sort_unstable();
    out
}

/// Multicoloring instance: one variable per maximal independent set, each
/// vertex covered `child_chi[i]` times, at most `colors` sets in total.
fn multicoloring_instance(
    sets: &[u32],
    child_chi: &[usize],
    colors: Option<usize>,
) -> Result<IlpInstance> {
    let top = *child_chi.iter().max().unwrap() as i64;
    let mut inst = IlpInstance::new(vec![0; sets.len()], vec![top; sets.len()])?;
    for (i, &d) in child_chi.iter().enumerate() {
        let terms = sets
            .iter()
            .enumerate()
            .filter(|(_, &s)| s >> i & 1 == 1)
            .map(|(j, _)| (j, 1));
        inst.add_constraint(LinearConstraint::new(terms, Relation::Ge, d as i64))?;
    }
    if let Some(c) = colors {
        inst.add_constraint(LinearConstraint::new(
            (0..sets.len()).map(|j| (j, 1)),
            Relation::Le,
            c as i64,
        ))?;
    }
    Ok(inst)
}

fn combine(
    quotient: &Graph,
    child_chi: &[usize],
    opts: &ColoringOptions,
    want_maps: bool,
) -> Result<Combined> {
    check_arity(quotient, child_chi)?;
    let n = quotient.n();
    if n == 0 {
        return Err(Error::arg("empty quotient"));
    }
    let ranges = |offsets: &[usize]| -> Vec<Vec<usize>> {
        (0..n)
            .map(|i| (offsets[i]..offsets[i] + child_chi[i]).collect())
            .collect()
    };
    if quotient.m() == 0 {
        let chi = *child_chi.iter().max().unwrap();
        let maps = if want_maps {
            ranges(&vec![0; n])
        } else {
            Vec::new()
        };
        return Ok(Combined { chi, maps });
    }
    if quotient.m() == n * (n - 1) / 2 {
        let offsets = crate::graph::block_offsets(child_chi.iter().copied());
        let maps = if want_maps {
            ranges(&offsets)
        } else {
            Vec::new()
        };
        return Ok(Combined {
            chi: offsets[n],
            maps,
        });
    }

    let p = coloring_problem(quotient, child_chi)?;
    let (upper, blocks) = if opts.fast_mwp && !want_maps {
        (
            -max_weighted_partition_value_fast_with_limit(&p, opts.size_limit)?,
            Vec::new(),
        )
    } else {
        let sol = max_weighted_partition_with_limit(&p, opts.size_limit)?;
        (-sol.value, sol.blocks)
    };
    let upper = upper as usize;
    let sets = maximal_independent_sets(quotient);
    let relaxed = relaxation_minimum(
        &multicoloring_instance(&sets, child_chi, None)?,
        &vec![1; sets.len()],
    )?;
    // Clique bound as a fallback if the LP fails.
    let mut lower = quotient
        .edges()
        .map(|(u, v)| child_chi[u] + child_chi[v])
        .max()
        .unwrap_or(0)
        .max(*child_chi.iter().max().unwrap());
    if let Some(r) = relaxed {
        lower = lower.max((r - 1e-6).ceil() as usize);
    }
    for colors in lower..upper {
        let inst = multicoloring_instance(&sets, child_chi, Some(colors))?;
        if let Some(x) = feasible(&inst, &opts.ilp)? {
            let maps = if want_maps {
                multicolor_maps(&sets, &x, child_chi)
            } else {
                Vec::new()
            };
            return Ok(Combined { chi: colors, maps });
        }
    }
    let mut maps = vec![Vec::new(); n];
    if want_maps {
        let mut acc = 0;
        for block in blocks {
            let mut width = 0;
            for i in (0..n).filter(|&i| block >> i & 1 == 1) {
                maps[i] = (acc..acc + child_chi[i]).collect();
                width = width.max(child_chi[i]);
            }
            acc += width;
        }
        debug_assert_eq!(acc, upper);
    }
    Ok(Combined { chi: upper, maps })
}

/// Lays the chosen sets out as consecutive colors; each vertex takes the
/// first `χ_i` colors whose set contains it.
fn multicolor_maps(sets: &[u32], x: &[i64], child_chi: &[usize]) -> Vec<Vec<usize>> {
    let mut maps = vec![Vec::new(); child_chi.len()];
    let mut color = 0;
    for (j, &s) in sets.iter().enumerate() {
        for _ in 0..x[j] {
            for (i, map) in maps.iter_mut().enumerate() {
                if s >> i & 1 == 1 && map.len() < child_chi[i] {
                    map.push(color);
                }
            }
            color += 1;
        }
    }
    maps
}

/// `χ` of the graph obtained by substituting graphs with chromatic numbers
/// `child_chi` into `quotient`.
pub fn chromatic_of_substitution(
    quotient: &Graph,
    child_chi: &[usize],
    opts: &ColoringOptions,
) -> Result<usize> {
    Ok(combine(quotient, child_chi, opts, false)?.chi)
}

pub fn chromatic_number(g: &Graph) -> Result<usize> {
    chromatic_number_with(g, &ColoringOptions::default())
}

pub fn chromatic_number_with(g: &Graph, opts: &ColoringOptions) -> Result<usize> {
    let t = normalize(&modular_decomposition(g)?);
    chromatic_over_tree(&t, opts)
}

/// Bottom-up evaluation over a tree; unions and joins are handled directly
/// so non-normalized trees work too.
pub fn chromatic_over_tree(t: &ParseTree, opts: &ColoringOptions) -> Result<usize> {
    let mut chi = vec![0usize; t.len()];
    for (id, node) in t.nodes().iter().enumerate() {
        let kids = node.children.iter().map(|&c| chi[c]);
        chi[id] = match &node.kind {
            NodeKind::Leaf(_) => 1,
            NodeKind::Union => kids.max().unwrap_or(1),
            NodeKind::Join => kids.sum(),
            NodeKind::Prime(q) => {
                let child_chi: Vec<usize> = kids.collect();
                chromatic_of_substitution(q, &child_chi, opts)?
            }
        };
    }
    Ok(chi[t.root()])
}

/// An optimal coloring. Each node colors its module with `0..χ`, and every
/// child's colors are mapped into its parent's by the combination step.
pub fn coloring_witness(g: &Graph) -> Result<ColoringWitness> {
    coloring_witness_with(g, &ColoringOptions::default())
}

pub fn coloring_witness_with(g: &Graph, opts: &ColoringOptions) -> Result<ColoringWitness> {
    if g.n() == 0 {
        return Err(Error::arg("coloring of the empty graph"));
    }
    let t = normalize(&modular_decomposition(g)?);
    let mut chi = vec![0usize; t.len()];
    // to_parent[c][j]: parent color of child c's color j.
    let mut to_parent: Vec<Vec<usize>> = vec![Vec::new(); t.len()];
    for (id, node) in t.nodes().iter().enumerate() {
        let child_chi: Vec<usize> = node.children.iter().map(|&c| chi[c]).collect();
        let quotient = match &node.kind {
            NodeKind::Leaf(_) => {
                chi[id] = 1;
                continue;
            }
            NodeKind::Union => Graph::empty(child_chi.len()),
            NodeKind::Join => Graph::complete(child_chi.len()),
            NodeKind::Prime(q) => q.clone(),
        };
        let combined = combine(&quotient, &child_chi, opts, true)?;
        for (&c, map) in node.children.iter().zip(combined.maps) {
            to_parent[c] = map;
        }
        chi[id] = combined.chi;
    }
    let root = t.root();
    let mut global: Vec<Vec<usize>> = vec![Vec::new(); t.len()];
    global[root] = (0..chi[root]).collect();
    let mut colors = vec![0usize; g.n()];
    for id in (0..t.len()).rev() {
        let node = t.node(id);
        if let NodeKind::Leaf(v) = node.kind {
            colors[v] = global[id][0];
        }
        for &c in &node.children {
            global[c] = to_parent[c].iter().map(|&j| global[id][j]).collect();
        }
        global[id] = Vec::new();
    }
    Ok(ColoringWitness {
        colors,
        count: chi[root],
    })
}
