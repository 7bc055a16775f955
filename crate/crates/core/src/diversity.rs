//! Neighborhood diversity: the number of twin classes.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Partition of the vertices into twin classes. Each class is a clique (true
/// twins) or an independent set (false twins); between two classes the edges
/// are all present or all absent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NdPartition {
    pub classes: Vec<Vec<usize>>,
    pub is_clique: Vec<bool>,
    /// `adjacent[i][j]` iff classes `i` and `j` are completely joined.
    pub adjacent: Vec<Vec<bool>>,
}

impl NdPartition {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }
}

/// Vertices `u` and `v` are twins when `N(u) \ {v} = N(v) \ {u}`. Twins with
/// equal open neighborhoods are non-adjacent, twins with equal closed
/// neighborhoods adjacent, and no vertex has both kinds, so grouping by open
/// and by closed neighborhood gives the classes. Classes are ordered by
/// smallest vertex.
pub fn neighborhood_diversity(g: &Graph) -> Result<(usize, NdPartition)> {
    let n = g.n();
    if n == 0 {
        return Err(Error::arg("neighborhood diversity of the empty graph"));
    }
    let rows = g.adjacency_bits();
    let mut by_open: HashMap<&fixedbitset::FixedBitSet, Vec<usize>> = HashMap::new();
    for (v, row) in rows.iter().enumerate() {
        by_open.entry(row).or_default().push(v);
    }
    let closed: Vec<_> = rows
        .iter()
        .enumerate()
        .map(|(v, row)| {
            let mut r = row.clone();
            r.insert(v);
            r
        })
        .collect();
    let mut by_closed: HashMap<&fixedbitset::FixedBitSet, Vec<usize>> = HashMap::new();
    for (v, row) in closed.iter().enumerate() {
        by_closed.entry(row).or_default().push(v);
    }

    let mut class_of = vec![usize::MAX; n];
    let mut classes: Vec<(Vec<usize>, bool)> = Vec::new();
    for v in 0..n {
        if class_of[v] != usize::MAX {
            continue;
        }
        let open = &by_open[&rows[v]];
        let (members, clique) = if open.len() > 1 {
            (open.clone(), false)
        } else {
            let closed = &by_closed[&closed[v]];
            (closed.clone(), closed.len() > 1)
        };
        for &u in &members {
            class_of[u] = classes.len();
        }
        classes.push((members, clique));
    }
    let k = classes.len();
    let adjacent = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| i != j && g.has_edge(classes[i].0[0], classes[j].0[0]))
                .collect()
        })
        .collect();
    let (classes, is_clique) = classes.into_iter().unzip();
    Ok((
        k,
        NdPartition {
            classes,
            is_clique,
            adjacent,
        },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nd(g: &Graph) -> usize {
        neighborhood_diversity(g).unwrap().0
    }

    fn brute_twin_classes(g: &Graph) -> usize {
        let n = g.n();
        let twins = |u: usize, v: usize| {
            (0..n)
                .filter(|&w| w != u && w != v)
                .all(|w| g.has_edge(u, w) == g.has_edge(v, w))
        };
        let mut reps: Vec<usize> = Vec::new();
        for v in 0..n {
            if !reps.iter().any(|&r| twins(r, v)) {
                reps.push(v);
            }
        }
        reps.len()
    }

    #[test]
    fn small_families() {
        assert_eq!(nd(&Graph::complete(5)), 1);
        assert_eq!(nd(&Graph::empty(4)), 1);
        assert_eq!(nd(&Graph::complete_bipartite(2, 3)), 2);
        assert_eq!(nd(&Graph::path(4)), 4);
        assert_eq!(nd(&Graph::path(3)), 2);
        assert!(neighborhood_diversity(&Graph::empty(0)).is_err());
    }

    #[test]
    fn partition_structure() {
        let (k, p) = neighborhood_diversity(&Graph::complete_bipartite(2, 3)).unwrap();
        assert_eq!(k, 2);
        assert_eq!(p.classes, vec![vec![0, 1], vec![2, 3, 4]]);
        assert_eq!(p.is_clique, vec![false, false]);
        assert!(p.adjacent[0][1] && p.adjacent[1][0] && !p.adjacent[0][0]);
    }

    #[test]
    fn agrees_with_pairwise_twin_check() {
        for seed in 0..200 {
            let g = crate::gen::gen_gnp(1 + seed as usize % 9, 0.5, seed).unwrap();
            assert_eq!(nd(&g), brute_twin_classes(&g));
        }
    }
}
