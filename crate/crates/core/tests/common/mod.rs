//! Shared oracles for integration tests. Everything here is deliberately
//! independent of the production code paths it is used to check: exhaustive
//! or elimination-order search only.
#![allow(dead_code)] // each test binary uses its own subset

use vpg_core::{BitSet, Graph};

/// Exact treewidth by dynamic programming over elimination orders.
/// `f(S)` is the best width eliminating exactly the set `S` first; the
/// back-degree of `v` eliminated after `X` counts the vertices outside
/// `X + v` reachable from `v` through `X`.
pub fn treewidth_exact(g: &Graph) -> usize {
    let n = g.len();
    assert!(n <= 16, "oracle is exponential");
    if n == 0 {
        return 0;
    }
    let adj: Vec<u32> = (0..n)
        .map(|v| {
            let mut m = 0u32;
            for u in g.neighbors(v).iter() {
                m |= 1 << u;
            }
            m
        })
        .collect();
    let reach = |v: usize, through: u32| -> u32 {
        let mut seen = 1u32 << v;
        let mut frontier = 1u32 << v;
        let mut out = 0u32;
        while frontier != 0 {
            let mut next = 0u32;
            let mut bits = frontier;
            while bits != 0 {
                let u = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                out |= adj[u] & !through;
                next |= adj[u] & through & !seen;
            }
            seen |= next;
            frontier = next;
        }
        out & !(1 << v)
    };
    let full = (1u32 << n) - 1;
    let mut f = vec![u8::MAX; 1 << n];
    f[0] = 0;
    for set in 1u32..=full {
        let mut best = u8::MAX;
        let mut bits = set;
        while bits != 0 {
            let v = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            let rest = set & !(1 << v);
            let width = (reach(v, rest).count_ones() as u8).max(f[rest as usize]);
            best = best.min(width);
        }
        f[set as usize] = best;
    }
    f[full as usize] as usize
}

/// Exhaustive maximum-matching size over subsets of the given edges.
pub fn brute_matching(edges: &[(usize, usize)]) -> usize {
    fn rec(edges: &[(usize, usize)], used: &mut std::collections::HashSet<usize>) -> usize {
        match edges.split_first() {
            None => 0,
            Some((&(u, v), rest)) => {
                let skip = rec(rest, used);
                if !used.contains(&u) && !used.contains(&v) {
                    used.insert(u);
                    used.insert(v);
                    let take = 1 + rec(rest, used);
                    used.remove(&u);
                    used.remove(&v);
                    skip.max(take)
                } else {
                    skip
                }
            }
        }
    }
    rec(edges, &mut std::collections::HashSet::new())
}

/// Exhaustive maximum induced matching in the bipartite cut graph.
pub fn brute_induced_matching(g: &Graph, side_a: &BitSet) -> usize {
    let crossing: Vec<(usize, usize)> = g
        .edges()
        .iter()
        .copied()
        .filter(|&(u, v)| side_a.contains(u) != side_a.contains(v))
        .map(|(u, v)| if side_a.contains(u) { (u, v) } else { (v, u) })
        .collect();
    let m = crossing.len();
    assert!(m <= 22, "oracle is exponential");
    let mut best = 0;
    'subset: for mask in 0u32..(1 << m) {
        let chosen: Vec<(usize, usize)> = (0..m)
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| crossing[i])
            .collect();
        for (i, &(a1, b1)) in chosen.iter().enumerate() {
            for &(a2, b2) in &chosen[i + 1..] {
                if a1 == a2 || b1 == b2 || g.adjacent(a1, b2) || g.adjacent(a2, b1) {
                    continue 'subset;
                }
            }
        }
        best = best.max(chosen.len());
    }
    best
}

/// Edge sets compared by vertex id, for graph-equality checks across
/// differently indexed graphs.
pub fn edge_ids(g: &Graph) -> std::collections::BTreeSet<(String, String)> {
    g.edges()
        .iter()
        .map(|&(u, v)| {
            let (a, b) = (g.id(u).to_string(), g.id(v).to_string());
            if a < b {
                (a, b)
            } else {
                (b, a)
            }
        })
        .collect()
}

pub fn id_set(g: &Graph) -> std::collections::BTreeSet<String> {
    g.ids().iter().cloned().collect()
}

pub fn graphs_equal(a: &Graph, b: &Graph) -> bool {
    id_set(a) == id_set(b) && edge_ids(a) == edge_ids(b)
}
