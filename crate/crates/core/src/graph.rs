//! Intersection-graph extraction and the basic graph machinery that width
//! evaluation and the solvers build on.

use std::collections::{HashMap, HashSet};

use crate::error::{Error, Result};
use crate::rep::{GridPath, GridRep};

/// Fixed-capacity bitset over vertex indices. Capacity is set at creation and
/// all sets over the same graph share it, so word-wise operations line up.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BitSet {
    words: Vec<u64>,
    capacity: usize,
}

impl BitSet {
    pub fn new(capacity: usize) -> Self {
        BitSet {
            words: vec![0; capacity.div_ceil(64)],
            capacity,
        }
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    pub fn insert(&mut self, i: usize) {
        debug_assert!(i < self.capacity);
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn remove(&mut self, i: usize) {
        self.words[i / 64] &= !(1 << (i % 64));
    }

    pub fn contains(&self, i: usize) -> bool {
        debug_assert!(i < self.capacity);
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn union_with(&mut self, other: &BitSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn intersect_with(&mut self, other: &BitSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn difference_with(&mut self, other: &BitSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
    }

    pub fn union(&self, other: &BitSet) -> BitSet {
        let mut out = self.clone();
        out.union_with(other);
        out
    }

    pub fn intersection(&self, other: &BitSet) -> BitSet {
        let mut out = self.clone();
        out.intersect_with(other);
        out
    }

    pub fn intersects(&self, other: &BitSet) -> bool {
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    pub fn complement(&self) -> BitSet {
        let mut out = BitSet::new(self.capacity);
        for (o, w) in out.words.iter_mut().zip(&self.words) {
            *o = !w;
        }
        let tail = self.capacity % 64;
        if tail != 0 {
            if let Some(last) = out.words.last_mut() {
                *last &= (1u64 << tail) - 1;
            }
        }
        out
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
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

    pub fn from_indices(capacity: usize, indices: impl IntoIterator<Item = usize>) -> BitSet {
        let mut s = BitSet::new(capacity);
        for i in indices {
            s.insert(i);
        }
        s
    }

    /// Lexicographic order on the sorted element sequences. For equal-size
    /// sets this is decided by who owns the smallest differing element.
    pub fn lex_cmp(&self, other: &BitSet) -> std::cmp::Ordering {
        for (a, b) in self.words.iter().zip(&other.words) {
            let d = a ^ b;
            if d != 0 {
                let low = d & d.wrapping_neg();
                return if a & low != 0 {
                    std::cmp::Ordering::Less
                } else {
                    std::cmp::Ordering::Greater
                };
            }
        }
        std::cmp::Ordering::Equal
    }
}

/// The extracted intersection graph: vertex ids in sorted order, symmetric
/// adjacency as per-vertex bitsets plus an edge list, and an optional
/// back-map to the originating grid paths.
#[derive(Debug, Clone)]
pub struct Graph {
    ids: Vec<String>,
    index: HashMap<String, usize>,
    adj: Vec<BitSet>,
    edges: Vec<(usize, usize)>,
    origin: Option<Vec<GridPath>>,
}

impl Graph {
    pub fn new(ids: Vec<String>, edge_pairs: &[(usize, usize)]) -> Graph {
        let n = ids.len();
        let index: HashMap<String, usize> =
            ids.iter().enumerate().map(|(i, id)| (id.clone(), i)).collect();
        assert_eq!(index.len(), n, "duplicate vertex id");
        let mut adj = vec![BitSet::new(n); n];
        let mut edges: Vec<(usize, usize)> = Vec::new();
        for &(u, v) in edge_pairs {
            assert!(u < n && v < n && u != v, "invalid edge ({u},{v})");
            if !adj[u].contains(v) {
                adj[u].insert(v);
                adj[v].insert(u);
                edges.push((u.min(v), u.max(v)));
            }
        }
        edges.sort_unstable();
        Graph {
            ids,
            index,
            adj,
            edges,
            origin: None,
        }
    }

    /// Convenience for tests: vertices named "0", "1", ... with given edges.
    pub fn from_indexed_edges(n: usize, edge_pairs: &[(usize, usize)]) -> Graph {
        Graph::new((0..n).map(|i| i.to_string()).collect(), edge_pairs)
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn id(&self, v: usize) -> &str {
        &self.ids[v]
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    pub fn neighbors(&self, v: usize) -> &BitSet {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.len()).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    /// Edges as sorted (u, v) pairs with u < v.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn origin(&self, v: usize) -> Option<&GridPath> {
        self.origin.as_ref().map(|paths| &paths[v])
    }

    /// Induced subgraph on the given vertex indices (kept in their original
    /// relative order, which preserves id sorting).
    pub fn induced(&self, keep: &BitSet) -> Graph {
        let old: Vec<usize> = keep.iter().collect();
        let mut new_index = vec![usize::MAX; self.len()];
        for (new, &v) in old.iter().enumerate() {
            new_index[v] = new;
        }
        let ids = old.iter().map(|&v| self.ids[v].clone()).collect();
        let edge_pairs: Vec<(usize, usize)> = self
            .edges
            .iter()
            .filter(|&&(u, v)| keep.contains(u) && keep.contains(v))
            .map(|&(u, v)| (new_index[u], new_index[v]))
            .collect();
        let mut g = Graph::new(ids, &edge_pairs);
        if let Some(paths) = &self.origin {
            g.origin = Some(old.iter().map(|&v| paths[v].clone()).collect());
        }
        g
    }

    /// Same graph with extra edges making `s` a clique.
    pub fn with_clique(&self, s: &BitSet) -> Graph {
        let members: Vec<usize> = s.iter().collect();
        let mut pairs = self.edges.clone();
        for (i, &u) in members.iter().enumerate() {
            for &v in &members[i + 1..] {
                pairs.push((u, v));
            }
        }
        let mut g = Graph::new(self.ids.clone(), &pairs);
        g.origin = self.origin.clone();
        g
    }
}

/// A bipartition of the vertex set, stored by its A side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cut {
    side_a: BitSet,
}

impl Cut {
    pub fn new(side_a: BitSet) -> Cut {
        Cut { side_a }
    }

    pub fn side_a(&self) -> &BitSet {
        &self.side_a
    }

    pub fn side_b(&self) -> BitSet {
        self.side_a.complement()
    }

    /// Edges of `g` with one endpoint on each side.
    pub fn crossing_edges(&self, g: &Graph) -> Vec<(usize, usize)> {
        g.edges()
            .iter()
            .copied()
            .filter(|&(u, v)| self.side_a.contains(u) != self.side_a.contains(v))
            .collect()
    }
}

/// Extracts the intersection graph: one vertex per path, an edge whenever two
/// paths share at least one grid-point. CPG contact is grid-point sharing, so
/// the extraction is identical for both flavors.
pub fn intersection_graph(r: &GridRep) -> Graph {
    let ids: Vec<String> = r.ids().map(|s| s.to_string()).collect();
    let paths: Vec<GridPath> = r.paths().cloned().collect();
    let mut at_point: HashMap<crate::rep::GridPoint, Vec<usize>> = HashMap::new();
    for (i, p) in paths.iter().enumerate() {
        let mut seen = HashSet::new();
        for q in p.trace() {
            if seen.insert(q) {
                at_point.entry(q).or_default().push(i);
            }
        }
    }
    let mut pairs: HashSet<(usize, usize)> = HashSet::new();
    for owners in at_point.values() {
        for (i, &u) in owners.iter().enumerate() {
            for &v in &owners[i + 1..] {
                pairs.insert((u.min(v), u.max(v)));
            }
        }
    }
    let pairs: Vec<(usize, usize)> = pairs.into_iter().collect();
    let mut g = Graph::new(ids, &pairs);
    g.origin = Some(paths);
    g
}

/// Vertex partition into connected components, each sorted, components
/// ordered by their smallest vertex.
pub fn connected_components(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.len();
    let mut seen = BitSet::new(n);
    let mut out = Vec::new();
    for start in 0..n {
        if seen.contains(start) {
            continue;
        }
        let mut comp = vec![start];
        seen.insert(start);
        let mut queue = vec![start];
        while let Some(v) = queue.pop() {
            for u in g.neighbors(v).iter() {
                if !seen.contains(u) {
                    seen.insert(u);
                    comp.push(u);
                    queue.push(u);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StructuralChecks {
    pub is_triangle_free: bool,
    pub is_subcubic: bool,
    pub is_bipartite: bool,
    /// Not computed; generators document planarity instead of proving it.
    pub is_planar: Option<bool>,
}

pub fn structural_checks(g: &Graph) -> StructuralChecks {
    let is_subcubic = g.max_degree() <= 3;
    let is_triangle_free = !g
        .edges()
        .iter()
        .any(|&(u, v)| g.neighbors(u).intersects(g.neighbors(v)));
    // 2-coloring by BFS
    let n = g.len();
    let mut color = vec![u8::MAX; n];
    let mut is_bipartite = true;
    'outer: for start in 0..n {
        if color[start] != u8::MAX {
            continue;
        }
        color[start] = 0;
        let mut queue = std::collections::VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for u in g.neighbors(v).iter() {
                if color[u] == u8::MAX {
                    color[u] = 1 - color[v];
                    queue.push_back(u);
                } else if color[u] == color[v] {
                    is_bipartite = false;
                    break 'outer;
                }
            }
        }
    }
    StructuralChecks {
        is_triangle_free,
        is_subcubic,
        is_bipartite,
        is_planar: None,
    }
}

/// `clique_augment`: returns G' with `s` made a clique. For any branch
/// decomposition the mim-width of G' exceeds that of G by at most one.
pub fn clique_augment(g: &Graph, s: &[String]) -> Result<Graph> {
    let mut set = BitSet::new(g.len());
    for id in s {
        let v = g
            .index_of(id)
            .ok_or_else(|| Error::UnknownVertex(id.clone()))?;
        set.insert(v);
    }
    Ok(g.with_clique(&set))
}
