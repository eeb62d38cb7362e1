//! Maximum matching and maximum induced matching across a cut.
//!
//! Matchings use Hopcroft-Karp on the crossing edges (O(E sqrt(V)) worst
//! case); induced matchings are solved exactly by branch and bound over the
//! crossing edges with the matching size as a memoized upper bound.

use std::collections::{HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::graph::{Cut, Graph};

/// Hopcroft-Karp maximum matching of a bipartite graph given as edges between
/// 0-based left and right indices.
pub fn hopcroft_karp(edges: &[(usize, usize)]) -> usize {
    if edges.is_empty() {
        return 0;
    }
    let left = edges.iter().map(|&(u, _)| u).max().unwrap() + 1;
    let right = edges.iter().map(|&(_, v)| v).max().unwrap() + 1;
    let mut adj = vec![Vec::new(); left];
    for &(u, v) in edges {
        adj[u].push(v);
    }
    const FREE: usize = usize::MAX;
    let mut match_l = vec![FREE; left];
    let mut match_r = vec![FREE; right];
    loop {
        // BFS layering from free left vertices
        let mut dist = vec![usize::MAX; left];
        let mut queue: VecDeque<usize> = (0..left).filter(|&u| match_l[u] == FREE).collect();
        for &u in &queue {
            dist[u] = 0;
        }
        let mut found_free = false;
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                match match_r[v] {
                    FREE => found_free = true,
                    w => {
                        if dist[w] == usize::MAX {
                            dist[w] = dist[u] + 1;
                            queue.push_back(w);
                        }
                    }
                }
            }
        }
        if !found_free {
            break;
        }
        fn augment(
            u: usize,
            adj: &[Vec<usize>],
            dist: &mut [usize],
            match_l: &mut [usize],
            match_r: &mut [usize],
        ) -> bool {
            let d = std::mem::replace(&mut dist[u], usize::MAX);
            for &v in &adj[u] {
                let w = match_r[v];
                if w == FREE || (dist[w] == d + 1 && augment(w, adj, dist, match_l, match_r)) {
                    match_l[u] = v;
                    match_r[v] = u;
                    return true;
                }
            }
            false
        }
        let mut progress = false;
        for u in 0..left {
            if match_l[u] == FREE && dist[u] == 0 {
                progress |= augment(u, &adj, &mut dist, &mut match_l, &mut match_r);
            }
        }
        if !progress {
            break;
        }
    }
    match_l.iter().filter(|&&v| v != FREE).count()
}

fn bipartite_pairs(g: &Graph, cut: &Cut) -> Vec<(usize, usize)> {
    // Compact the crossing edges to (left, right) index pairs.
    let mut left_index: HashMap<usize, usize> = HashMap::new();
    let mut right_index: HashMap<usize, usize> = HashMap::new();
    let mut pairs = Vec::new();
    for (u, v) in cut.crossing_edges(g) {
        let (a, b) = if cut.side_a().contains(u) { (u, v) } else { (v, u) };
        let nl = left_index.len();
        let l = *left_index.entry(a).or_insert(nl);
        let nr = right_index.len();
        let r = *right_index.entry(b).or_insert(nr);
        pairs.push((l, r));
    }
    pairs
}

/// Size of a maximum matching in the bipartite graph of cut-crossing edges.
pub fn cut_max_matching(g: &Graph, cut: &Cut) -> usize {
    hopcroft_karp(&bipartite_pairs(g, cut))
}

/// Branching budget for exact induced matching.
#[derive(Debug, Clone, Copy)]
pub struct MimBudget {
    /// Fault if a cut has more crossing edges than this.
    pub max_crossing_edges: usize,
}

impl Default for MimBudget {
    fn default() -> Self {
        MimBudget {
            max_crossing_edges: 64,
        }
    }
}

struct MimSolver<'a> {
    /// conflict[i] = crossing edges that cannot coexist with edge i in an
    /// induced matching of the bipartite cut graph
    conflict: Vec<Vec<u64>>,
    pairs: &'a [(usize, usize)],
    best: usize,
    mm_memo: HashMap<Vec<u64>, usize>,
}

impl<'a> MimSolver<'a> {
    fn candidate_mm(&mut self, mask: &[u64]) -> usize {
        if let Some(&v) = self.mm_memo.get(mask) {
            return v;
        }
        let edges: Vec<(usize, usize)> = iter_mask(mask).map(|i| self.pairs[i]).collect();
        let v = hopcroft_karp(&edges);
        self.mm_memo.insert(mask.to_vec(), v);
        v
    }

    fn branch(&mut self, chosen: usize, candidates: &[u64]) {
        let count: usize = candidates.iter().map(|w| w.count_ones() as usize).sum();
        if count == 0 {
            self.best = self.best.max(chosen);
            return;
        }
        if chosen + count <= self.best {
            return;
        }
        // Induced matching of the remaining candidates is at most their
        // maximum matching; prune on that bound.
        if chosen + self.candidate_mm(candidates) <= self.best {
            return;
        }
        // Branch on the lowest remaining edge: in or out.
        let pivot = iter_mask(candidates).next().unwrap();
        let mut with = candidates.to_vec();
        for (w, c) in with.iter_mut().zip(&self.conflict[pivot]) {
            *w &= !c;
        }
        with[pivot / 64] &= !(1 << (pivot % 64));
        self.branch(chosen + 1, &with);
        let mut without = candidates.to_vec();
        without[pivot / 64] &= !(1 << (pivot % 64));
        self.branch(chosen, &without);
    }
}

fn iter_mask(mask: &[u64]) -> impl Iterator<Item = usize> + '_ {
    mask.iter().enumerate().flat_map(|(wi, &w)| {
        let mut bits = w;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let b = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(wi * 64 + b)
            }
        })
    })
}

/// Size of a maximum induced matching of the bipartite cut graph G[A, B]:
/// a set of crossing edges no two of which have adjacent endpoints within
/// the cut graph. Exact; errors if the crossing-edge count exceeds `budget`.
pub fn cut_max_induced_matching(g: &Graph, cut: &Cut, budget: &MimBudget) -> Result<usize> {
    let crossing = cut.crossing_edges(g);
    if crossing.len() > budget.max_crossing_edges {
        return Err(Error::CrossingBudgetExceeded {
            edges: crossing.len(),
            budget: budget.max_crossing_edges,
        });
    }
    if crossing.is_empty() {
        return Ok(0);
    }
    // Orient each crossing edge as (a-side endpoint, b-side endpoint).
    let oriented: Vec<(usize, usize)> = crossing
        .iter()
        .map(|&(u, v)| {
            if cut.side_a().contains(u) {
                (u, v)
            } else {
                (v, u)
            }
        })
        .collect();
    let m = oriented.len();
    let words = m.div_ceil(64);
    let mut conflict = vec![vec![0u64; words]; m];
    for i in 0..m {
        for j in 0..m {
            if i == j {
                continue;
            }
            let (a1, b1) = oriented[i];
            let (a2, b2) = oriented[j];
            // Adjacent within the cut graph: shared endpoint or a crossing
            // edge joining the two pairs.
            let conflicting = a1 == a2
                || b1 == b2
                || g.adjacent(a1, b2)
                || g.adjacent(a2, b1);
            if conflicting {
                conflict[i][j / 64] |= 1 << (j % 64);
            }
        }
    }
    let mut full = vec![u64::MAX; words];
    let tail = m % 64;
    if tail != 0 {
        full[words - 1] = (1u64 << tail) - 1;
    }
    let mut solver = MimSolver {
        conflict,
        pairs: &oriented,
        best: 0,
        mm_memo: HashMap::new(),
    };
    solver.branch(0, &full);
    Ok(solver.best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::BitSet;

    fn cut_of(n: usize, a: &[usize]) -> Cut {
        Cut::new(BitSet::from_indices(n, a.iter().copied()))
    }

    /// Exhaustive maximum matching by recursion over edges.
    fn brute_mm(edges: &[(usize, usize)]) -> usize {
        fn rec(edges: &[(usize, usize)], used_l: u64, used_r: u64) -> usize {
            match edges.split_first() {
                None => 0,
                Some((&(u, v), rest)) => {
                    let skip = rec(rest, used_l, used_r);
                    if used_l >> u & 1 == 0 && used_r >> v & 1 == 0 {
                        skip.max(1 + rec(rest, used_l | 1 << u, used_r | 1 << v))
                    } else {
                        skip
                    }
                }
            }
        }
        rec(edges, 0, 0)
    }

    #[test]
    fn no_crossing_edges() {
        let g = Graph::from_indexed_edges(4, &[(0, 1), (2, 3)]);
        let cut = cut_of(4, &[0, 1]);
        assert_eq!(cut_max_matching(&g, &cut), 0);
        assert_eq!(
            cut_max_induced_matching(&g, &cut, &MimBudget::default()).unwrap(),
            0
        );
    }

    #[test]
    fn perfect_crossing_matching() {
        let m = 5;
        let edges: Vec<(usize, usize)> = (0..m).map(|i| (i, m + i)).collect();
        let g = Graph::from_indexed_edges(2 * m, &edges);
        let cut = cut_of(2 * m, &(0..m).collect::<Vec<_>>());
        assert_eq!(cut_max_matching(&g, &cut), m);
        assert_eq!(
            cut_max_induced_matching(&g, &cut, &MimBudget::default()).unwrap(),
            m
        );
    }

    #[test]
    fn single_crossing_edge() {
        let g = Graph::from_indexed_edges(2, &[(0, 1)]);
        let cut = cut_of(2, &[0]);
        assert_eq!(
            cut_max_induced_matching(&g, &cut, &MimBudget::default()).unwrap(),
            1
        );
    }

    #[test]
    fn complete_bipartite_has_mim_one() {
        // K_{3,3}: matching 3, induced matching 1.
        let mut edges = Vec::new();
        for u in 0..3 {
            for v in 3..6 {
                edges.push((u, v));
            }
        }
        let g = Graph::from_indexed_edges(6, &edges);
        let cut = cut_of(6, &[0, 1, 2]);
        assert_eq!(cut_max_matching(&g, &cut), 3);
        assert_eq!(
            cut_max_induced_matching(&g, &cut, &MimBudget::default()).unwrap(),
            1
        );
    }

    #[test]
    fn budget_is_enforced() {
        let edges: Vec<(usize, usize)> = (0..4).map(|i| (i, 4 + i)).collect();
        let g = Graph::from_indexed_edges(8, &edges);
        let cut = cut_of(8, &[0, 1, 2, 3]);
        let tight = MimBudget {
            max_crossing_edges: 3,
        };
        assert!(matches!(
            cut_max_induced_matching(&g, &cut, &tight),
            Err(Error::CrossingBudgetExceeded { edges: 4, budget: 3 })
        ));
    }

    /// Exhaustive induced-matching search over subsets of crossing edges.
    fn brute_mim(g: &Graph, cut: &Cut) -> usize {
        let crossing: Vec<(usize, usize)> = cut
            .crossing_edges(g)
            .iter()
            .map(|&(u, v)| {
                if cut.side_a().contains(u) {
                    (u, v)
                } else {
                    (v, u)
                }
            })
            .collect();
        let m = crossing.len();
        assert!(m <= 20);
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

    #[test]
    fn random_cuts_match_brute_force() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for trial in 0..60 {
            let n = 6 + trial % 7;
            let mut edges = Vec::new();
            for u in 0..n {
                for v in (u + 1)..n {
                    if rng.gen_bool(0.3) {
                        edges.push((u, v));
                    }
                }
            }
            let g = Graph::from_indexed_edges(n, &edges);
            let a: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.5)).collect();
            let cut = cut_of(n, &a);
            if cut.crossing_edges(&g).len() > 20 {
                continue;
            }
            let pairs = bipartite_pairs(&g, &cut);
            assert_eq!(cut_max_matching(&g, &cut), brute_mm(&pairs));
            let mim = cut_max_induced_matching(&g, &cut, &MimBudget::default()).unwrap();
            assert_eq!(mim, brute_mim(&g, &cut));
            assert!(mim <= cut_max_matching(&g, &cut));
        }
    }
}
