//! Brute-force reference implementations and witness validators.
//!
//! Nothing in here is used by the parameterized algorithms; the functions are
//! deliberately simple and exponential, and exist to cross-check the fast
//! paths on small graphs.

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Largest inputs the exponential oracles accept.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub held_karp: usize,
    pub path_partition: usize,
    pub chromatic: usize,
    pub modular_width: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            held_karp: 20,
            path_partition: 12,
            chromatic: 12,
            modular_width: 8,
        }
    }
}

fn check_cap(what: &'static str, size: usize, limit: usize) -> Result<()> {
    if size > limit {
        Err(Error::Capacity { what, size, limit })
    } else {
        Ok(())
    }
}

fn adjacency_masks(g: &Graph) -> Vec<u32> {
    (0..g.n())
        .map(|v| g.neighbors(v).iter().fold(0u32, |m, &u| m | 1 << u))
        .collect()
}

impl Limits {
    /// Held–Karp subset DP over paths starting at vertex 0.
    ///
    /// With `allow_degenerate`, a single vertex and a single edge count as
    /// closed walks.
    pub fn held_karp_hamiltonian(&self, g: &Graph, allow_degenerate: bool) -> Result<bool> {
        let n = g.n();
        check_cap("Held-Karp input", n, self.held_karp)?;
        match n {
            0 => return Ok(false),
            1 => return Ok(allow_degenerate),
            2 => return Ok(allow_degenerate && g.has_edge(0, 1)),
            _ => {}
        }
        let adj = adjacency_masks(g);
        let full = (1u32 << n) - 1;
        // reach[mask]: endpoints v of paths 0 -> v visiting exactly `mask`
        let mut reach = vec![0u32; 1 << n];
        reach[1] = 1;
        for mask in (1..=full).step_by(2) {
            let mut ends = reach[mask as usize];
            while ends != 0 {
                let v = ends.trailing_zeros();
                ends &= ends - 1;
                let mut next = adj[v as usize] & !mask;
                while next != 0 {
                    let u = next.trailing_zeros();
                    next &= next - 1;
                    reach[(mask | 1 << u) as usize] |= 1 << u;
                }
            }
        }
        Ok(reach[full as usize] & adj[0] != 0)
    }

    /// Minimum number of vertex-disjoint paths covering `g`.
    pub fn brute_path_partition(&self, g: &Graph) -> Result<usize> {
        let n = g.n();
        check_cap("path partition input", n, self.path_partition)?;
        if n == 0 {
            return Ok(0);
        }
        let adj = adjacency_masks(g);
        const INF: u8 = u8::MAX;
        // best[mask * n + v]: fewest paths covering `mask` with the open path ending at v
        let mut best = vec![INF; n << n];
        for v in 0..n {
            best[(1 << v) * n + v] = 1;
        }
        for mask in 1usize..1 << n {
            for v in 0..n {
                let paths = best[mask * n + v];
                if paths == INF {
                    continue;
                }
                for u in (0..n).filter(|&u| mask >> u & 1 == 0) {
                    let cost = if adj[v] >> u & 1 == 1 {
                        paths
                    } else {
                        paths + 1
                    };
                    let slot = &mut best[(mask | 1 << u) * n + u];
                    *slot = (*slot).min(cost);
                }
            }
        }
        let full = (1usize << n) - 1;
        Ok((0..n).map(|v| best[full * n + v]).min().unwrap() as usize)
    }

    /// Chromatic number by backtracking, trying 1, 2, ... colors.
    pub fn brute_chromatic(&self, g: &Graph) -> Result<usize> {
        let n = g.n();
        check_cap("chromatic input", n, self.chromatic)?;
        if n == 0 {
            return Ok(0);
        }
        // high degree first
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&v| std::cmp::Reverse(g.degree(v)));
        let mut colors = vec![usize::MAX; n];
        (1..=n)
            .find(|&k| color_with(g, &order, 0, k, 0, &mut colors))
            .ok_or_else(|| Error::internal("no coloring with n colors"))
    }

    /// Modular-width from the definition: enumerate every module, keep the
    /// strong ones, and report the largest number of maximal strong
    /// submodules of any strong module that is neither disconnected nor
    /// co-disconnected.
    pub fn brute_modular_width(&self, g: &Graph) -> Result<usize> {
        let n = g.n();
        check_cap("modular-width input", n, self.modular_width)?;
        let adj = adjacency_masks(g);
        let full = (1u32 << n) - 1;
        let is_module =
            |m: u32| (0..n).all(|w| m >> w & 1 == 1 || adj[w] & m == 0 || adj[w] & m == m);
        let modules: Vec<u32> = (1..=full).filter(|&m| is_module(m)).collect();
        let overlaps = |a: u32, b: u32| a & b != 0 && a & !b != 0 && b & !a != 0;
        let strong: Vec<u32> = modules
            .iter()
            .copied()
            .filter(|&m| modules.iter().all(|&o| !overlaps(m, o)))
            .collect();
        let connected = |m: u32, complement: bool| {
            let start = m & m.wrapping_neg();
            let mut seen = start;
            let mut frontier = start;
            while frontier != 0 {
                let v = frontier.trailing_zeros() as usize;
                frontier &= frontier - 1;
                let nb = if complement {
                    !adj[v] & !(1 << v)
                } else {
                    adj[v]
                };
                let new = nb & m & !seen;
                seen |= new;
                frontier |= new;
            }
            seen == m
        };
        let mut width = 0;
        for &m in strong.iter().filter(|m| m.count_ones() > 1) {
            if !connected(m, false) || !connected(m, true) {
                continue;
            }
            let inside: Vec<u32> = strong
                .iter()
                .copied()
                .filter(|&s| s != m && s & m == s)
                .collect();
            let maximal = inside
                .iter()
                .filter(|&&s| !inside.iter().any(|&t| t != s && t & s == s))
                .count();
            width = width.max(maximal);
        }
        Ok(width)
    }
}

fn color_with(
    g: &Graph,
    order: &[usize],
    i: usize,
    k: usize,
    used: usize,
    colors: &mut [usize],
) -> bool {
    if i == order.len() {
        return true;
    }
    let v = order[i];
    for c in 0..k.min(used + 1) {
        if g.neighbors(v).iter().all(|&u| colors[u] != c) {
            colors[v] = c;
            if color_with(g, order, i + 1, k, used.max(c + 1), colors) {
                return true;
            }
            colors[v] = usize::MAX;
        }
    }
    false
}

pub fn held_karp_hamiltonian(g: &Graph, allow_degenerate: bool) -> Result<bool> {
    Limits::default().held_karp_hamiltonian(g, allow_degenerate)
}

pub fn brute_path_partition(g: &Graph) -> Result<usize> {
    Limits::default().brute_path_partition(g)
}

pub fn brute_chromatic(g: &Graph) -> Result<usize> {
    Limits::default().brute_chromatic(g)
}

pub fn brute_modular_width(g: &Graph) -> Result<usize> {
    Limits::default().brute_modular_width(g)
}

/// Checks that `colors` is a proper coloring of `g` using exactly the colors
/// `0..count`.
pub fn check_coloring(
    g: &Graph,
    colors: &[usize],
    count: usize,
) -> std::result::Result<(), String> {
    if colors.len() != g.n() {
        return Err(format!("{} colors for {} vertices", colors.len(), g.n()));
    }
    if let Some((u, v)) = g.edges().find(|&(u, v)| colors[u] == colors[v]) {
        return Err(format!("edge {{{u}, {v}}} is monochromatic"));
    }
    let mut used = vec![false; count];
    for (v, &c) in colors.iter().enumerate() {
        if c >= count {
            return Err(format!("vertex {v} has color {c} outside 0..{count}"));
        }
        used[c] = true;
    }
    if let Some(c) = used.iter().position(|u| !u) {
        return Err(format!("color {c} is unused"));
    }
    Ok(())
}

/// Checks that `paths` are vertex-disjoint paths of `g` covering every vertex.
pub fn check_path_partition(g: &Graph, paths: &[Vec<usize>]) -> std::result::Result<(), String> {
    let mut seen = vec![false; g.n()];
    for path in paths {
        if path.is_empty() {
            return Err("empty path".into());
        }
        for &v in path {
            if v >= g.n() || std::mem::replace(&mut seen[v], true) {
                return Err(format!("vertex {v} repeated or out of range"));
            }
        }
        if let Some(w) = path.windows(2).find(|w| !g.has_edge(w[0], w[1])) {
            return Err(format!("{{{}, {}}} is not an edge", w[0], w[1]));
        }
    }
    match seen.iter().position(|s| !s) {
        Some(v) => Err(format!("vertex {v} is not covered")),
        None => Ok(()),
    }
}

/// Checks that `cycle` lists every vertex once and that consecutive vertices,
/// including last and first, are adjacent. Requires at least 3 vertices.
pub fn check_hamiltonian_cycle(g: &Graph, cycle: &[usize]) -> std::result::Result<(), String> {
    if cycle.len() < 3 || cycle.len() != g.n() {
        return Err(format!(
            "cycle of length {} in a graph on {} vertices",
            cycle.len(),
            g.n()
        ));
    }
    check_path_partition(g, &[cycle.to_vec()])?;
    let (first, last) = (cycle[0], cycle[cycle.len() - 1]);
    if !g.has_edge(last, first) {
        return Err(format!("closing pair {{{last}, {first}}} is not an edge"));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::add_universal;

    fn grotzsch() -> Graph {
        let mut edges: Vec<(usize, usize)> = (0..5).map(|i| (i, (i + 1) % 5)).collect();
        for i in 0..5 {
            edges.push((5 + i, (i + 1) % 5));
            edges.push((5 + i, (i + 4) % 5));
            edges.push((10, 5 + i));
        }
        Graph::from_edges(11, edges).unwrap()
    }

    #[test]
    fn held_karp() {
        assert!(held_karp_hamiltonian(&Graph::cycle(5), false).unwrap());
        assert!(!held_karp_hamiltonian(&Graph::path(5), false).unwrap());
        assert!(held_karp_hamiltonian(&Graph::complete_bipartite(3, 3), false).unwrap());
        assert!(!held_karp_hamiltonian(&Graph::complete_bipartite(2, 3), false).unwrap());
        assert!(!held_karp_hamiltonian(&Graph::complete(2), false).unwrap());
        assert!(held_karp_hamiltonian(&Graph::complete(2), true).unwrap());
        assert!(held_karp_hamiltonian(&Graph::empty(1), true).unwrap());
        assert!(matches!(
            held_karp_hamiltonian(&Graph::empty(21), false),
            Err(Error::Capacity { .. })
        ));
    }

    #[test]
    fn k33_cycle_by_construction() {
        // 0-3-1-4-2-5-0 alternates sides of K_{3,3}
        let g = Graph::complete_bipartite(3, 3);
        check_hamiltonian_cycle(&g, &[0, 3, 1, 4, 2, 5]).unwrap();
    }

    #[test]
    fn path_partitions() {
        assert_eq!(brute_path_partition(&Graph::empty(4)).unwrap(), 4);
        assert_eq!(
            brute_path_partition(&Graph::complete_bipartite(1, 3)).unwrap(),
            2
        );
        assert_eq!(brute_path_partition(&Graph::cycle(6)).unwrap(), 1);
        assert_eq!(
            brute_path_partition(&Graph::complete_bipartite(1, 4)).unwrap(),
            3
        );
    }

    #[test]
    fn chromatic() {
        assert_eq!(brute_chromatic(&Graph::complete(4)).unwrap(), 4);
        assert_eq!(brute_chromatic(&Graph::cycle(5)).unwrap(), 3);
        assert_eq!(brute_chromatic(&grotzsch()).unwrap(), 4);
        assert_eq!(brute_chromatic(&Graph::empty(3)).unwrap(), 1);
    }

    #[test]
    fn modular_width_by_enumeration() {
        assert_eq!(brute_modular_width(&Graph::path(4)).unwrap(), 4);
        assert_eq!(brute_modular_width(&Graph::complete(5)).unwrap(), 0);
        assert_eq!(brute_modular_width(&Graph::cycle(5)).unwrap(), 5);
        assert_eq!(
            brute_modular_width(&Graph::complete_bipartite(2, 3)).unwrap(),
            0
        );
    }

    #[test]
    fn universal_vertices_recover_path_count() {
        for g in [
            Graph::empty(3),
            Graph::complete_bipartite(1, 4),
            Graph::path(4),
            Graph::empty(1),
        ] {
            let ham = brute_path_partition(&g).unwrap();
            assert!(held_karp_hamiltonian(&add_universal(&g, ham), true).unwrap());
            if ham > 1 {
                assert!(!held_karp_hamiltonian(&add_universal(&g, ham - 1), true).unwrap());
            }
        }
    }

    #[test]
    fn validators_reject_bad_witnesses() {
        let g = Graph::path(3);
        assert!(check_coloring(&g, &[0, 1, 0], 2).is_ok());
        assert!(check_coloring(&g, &[0, 0, 1], 2).is_err());
        assert!(check_coloring(&g, &[0, 1, 0], 3).is_err());
        assert!(check_path_partition(&g, &[vec![0, 1], vec![2]]).is_ok());
        assert!(check_path_partition(&g, &[vec![0, 2], vec![1]]).is_err());
        assert!(check_path_partition(&g, &[vec![0, 1]]).is_err());
        assert!(check_hamiltonian_cycle(&Graph::cycle(4), &[0, 1, 2, 3]).is_ok());
        assert!(check_hamiltonian_cycle(&g, &[0, 1, 2]).is_err());
    }
}
