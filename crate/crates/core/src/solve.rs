//! Exact Independent Set and Dominating Set.
//!
//! Two routes are kept deliberately independent: mask-based brute force (for
//! verification) and a branch-decomposition dynamic program over
//! neighbor-equivalence classes (the production solver for bounded-mim-width
//! inputs). Subsets of one cut side are grouped by their crossing
//! neighborhood; tables are indexed by the class of the chosen set inside a
//! node together with the class of the expected solution outside it, so the
//! number of table entries per cut stays polynomial for bounded mim value.

use std::collections::HashMap;
use std::fmt;

use crate::decomp::BranchDecomposition;
use crate::error::{Error, Result};
use crate::graph::{BitSet, Cut, Graph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ProblemKind {
    Is,
    Ds,
}

impl fmt::Display for ProblemKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProblemKind::Is => write!(f, "IS"),
            ProblemKind::Ds => write!(f, "DS"),
        }
    }
}

/// A vertex set tagged IS or DS with its certificate status.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    pub kind: ProblemKind,
    /// Vertex ids, sorted.
    pub vertices: Vec<String>,
    pub value: usize,
    pub verified: bool,
}

impl Solution {
    pub fn new(kind: ProblemKind, mut vertices: Vec<String>) -> Solution {
        vertices.sort();
        vertices.dedup();
        let value = vertices.len();
        Solution {
            kind,
            vertices,
            value,
            verified: false,
        }
    }

    pub fn from_indices(kind: ProblemKind, g: &Graph, set: &BitSet) -> Solution {
        Solution::new(kind, set.iter().map(|v| g.id(v).to_string()).collect())
    }

    pub fn index_set(&self, g: &Graph) -> Option<BitSet> {
        let mut set = BitSet::new(g.len());
        for id in &self.vertices {
            set.insert(g.index_of(id)?);
        }
        Some(set)
    }
}

/// True iff the IS/DS definition holds for `s` in `g`; records the outcome
/// on the solution.
pub fn verify_solution(g: &Graph, s: &mut Solution) -> bool {
    let ok = match s.index_set(g) {
        None => false,
        Some(set) => match s.kind {
            ProblemKind::Is => !g
                .edges()
                .iter()
                .any(|&(u, v)| set.contains(u) && set.contains(v)),
            ProblemKind::Ds => (0..g.len())
                .all(|v| set.contains(v) || g.neighbors(v).intersects(&set)),
        },
    };
    s.verified = ok;
    ok
}

/// Budgets for the brute-force oracles.
#[derive(Debug, Clone, Copy)]
pub struct OracleBudget {
    /// Up to this many vertices, plain subset enumeration.
    pub enumeration: usize,
    /// Beyond that, exact branch and bound up to this many vertices.
    pub branch_and_bound: usize,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget {
            enumeration: 26,
            branch_and_bound: 60,
        }
    }
}

fn mask_adjacency(g: &Graph) -> Vec<u64> {
    let n = g.len();
    assert!(n <= 64);
    let mut adj = vec![0u64; n];
    for &(u, v) in g.edges() {
        adj[u] |= 1 << v;
        adj[v] |= 1 << u;
    }
    adj
}

/// Exact maximum independent set size over `avail`, by reductions on
/// degree-0/1 vertices plus branching over a closed neighborhood.
fn max_is_value(adj: &[u64], mut avail: u64, mut acc: usize, best: &mut usize) -> usize {
    loop {
        if avail == 0 {
            *best = (*best).max(acc);
            return acc;
        }
        if acc + avail.count_ones() as usize <= *best {
            return 0; // dominated by the incumbent; value unused
        }
        // degree-0 and degree-1 vertices are always safe to take
        let mut reduced = false;
        let mut bits = avail;
        while bits != 0 {
            let v = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            let nb = adj[v] & avail;
            if nb.count_ones() <= 1 {
                avail &= !(adj[v] | 1 << v);
                acc += 1;
                reduced = true;
                break;
            }
        }
        if reduced {
            continue;
        }
        // branch over the closed neighborhood of a minimum-degree vertex:
        // every maximal independent set intersects N[v]
        let mut pivot = usize::MAX;
        let mut pivot_deg = usize::MAX;
        let mut bits = avail;
        while bits != 0 {
            let v = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            let d = (adj[v] & avail).count_ones() as usize;
            if d < pivot_deg {
                pivot_deg = d;
                pivot = v;
            }
        }
        let mut result = 0;
        let mut candidates = (adj[pivot] | 1 << pivot) & avail;
        while candidates != 0 {
            let u = candidates.trailing_zeros() as usize;
            candidates &= candidates - 1;
            let sub = max_is_value(adj, avail & !(adj[u] | 1 << u), acc + 1, best);
            result = result.max(sub);
        }
        return result;
    }
}

fn alpha_of(adj: &[u64], avail: u64) -> usize {
    let mut best = 0;
    max_is_value(adj, avail, 0, &mut best);
    best
}

/// Maximum independent set with deterministic lexicographic tie-break.
pub fn brute_force_is_with(g: &Graph, budget: &OracleBudget) -> Result<Solution> {
    let n = g.len();
    if n > budget.branch_and_bound || n > 64 {
        return Err(Error::SolverBudget(format!(
            "brute-force independent set limited to {} vertices, got {n}",
            budget.branch_and_bound.min(64)
        )));
    }
    let adj = mask_adjacency(g);
    let chosen = if n <= budget.enumeration {
        let mut best_mask = 0u64;
        let mut best_size = 0usize;
        for mask in 0u64..(1u64 << n) {
            let mut ok = true;
            let mut bits = mask;
            while bits != 0 {
                let v = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                if adj[v] & mask != 0 {
                    ok = false;
                    break;
                }
            }
            if !ok {
                continue;
            }
            let size = mask.count_ones() as usize;
            if size > best_size || (size == best_size && lex_less(mask, best_mask)) {
                best_size = size;
                best_mask = mask;
            }
        }
        best_mask
    } else {
        // exact value, then force the lexicographically smallest optimum
        let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        let alpha = alpha_of(&adj, full);
        let mut chosen = 0u64;
        let mut avail = full;
        let mut target = alpha;
        for v in 0..n {
            if avail >> v & 1 == 0 {
                continue;
            }
            let rest = avail & !(adj[v] | 1 << v);
            if 1 + alpha_of(&adj, rest) == target {
                chosen |= 1 << v;
                avail = rest;
                target -= 1;
            } else {
                avail &= !(1 << v);
            }
        }
        chosen
    };
    Ok(Solution::from_indices(
        ProblemKind::Is,
        g,
        &BitSet::from_indices(n, (0..n).filter(|&v| chosen >> v & 1 == 1)),
    ))
}

pub fn brute_force_is(g: &Graph) -> Result<Solution> {
    brute_force_is_with(g, &OracleBudget::default())
}

/// On equal popcount, the mask owning the smallest differing vertex is the
/// lexicographically smaller vertex set.
fn lex_less(a: u64, b: u64) -> bool {
    let d = a ^ b;
    if d == 0 {
        return false;
    }
    a & (d & d.wrapping_neg()) != 0
}

fn closed_masks(g: &Graph) -> Vec<u64> {
    let n = g.len();
    let mut closed = mask_adjacency(g);
    for (v, m) in closed.iter_mut().enumerate() {
        *m |= 1 << v;
    }
    debug_assert_eq!(closed.len(), n);
    closed
}

/// Exact minimum dominating-set size with `forced` pre-chosen and `excluded`
/// unavailable; usize::MAX when infeasible.
fn min_ds_value(
    closed: &[u64],
    full: u64,
    forced: u64,
    excluded: u64,
    acc: usize,
    best: &mut usize,
) -> usize {
    let mut dominated = 0u64;
    let mut bits = forced;
    while bits != 0 {
        let v = bits.trailing_zeros() as usize;
        bits &= bits - 1;
        dominated |= closed[v];
    }
    min_ds_rec(closed, full, excluded, dominated, acc, best)
}

fn min_ds_rec(
    closed: &[u64],
    full: u64,
    excluded: u64,
    dominated: u64,
    acc: usize,
    best: &mut usize,
) -> usize {
    let undominated = full & !dominated;
    if undominated == 0 {
        *best = (*best).min(acc);
        return acc;
    }
    if acc >= *best {
        return usize::MAX;
    }
    // lower bound: every further pick dominates at most max_cover vertices
    let allowed = full & !excluded;
    let mut max_cover = 0u32;
    let mut bits = allowed;
    while bits != 0 {
        let v = bits.trailing_zeros() as usize;
        bits &= bits - 1;
        max_cover = max_cover.max((closed[v] & undominated).count_ones());
    }
    if max_cover == 0 {
        return usize::MAX;
    }
    let need = undominated.count_ones().div_ceil(max_cover) as usize;
    if acc + need >= *best {
        return usize::MAX;
    }
    // some allowed vertex of N[u] must be picked for the lowest undominated u
    let u = undominated.trailing_zeros() as usize;
    let mut candidates = closed[u] & allowed;
    let mut result = usize::MAX;
    while candidates != 0 {
        let c = candidates.trailing_zeros() as usize;
        candidates &= candidates - 1;
        let sub = min_ds_rec(closed, full, excluded, dominated | closed[c], acc + 1, best);
        result = result.min(sub);
    }
    result
}

fn gamma_of(closed: &[u64], full: u64, forced: u64, excluded: u64, forced_count: usize) -> usize {
    let mut best = usize::MAX;
    min_ds_value(closed, full, forced, excluded, forced_count, &mut best);
    best
}

/// Minimum dominating set with deterministic lexicographic tie-break.
pub fn brute_force_ds_with(g: &Graph, budget: &OracleBudget) -> Result<Solution> {
    let n = g.len();
    if n > budget.branch_and_bound || n > 64 {
        return Err(Error::SolverBudget(format!(
            "brute-force dominating set limited to {} vertices, got {n}",
            budget.branch_and_bound.min(64)
        )));
    }
    if n == 0 {
        return Ok(Solution::new(ProblemKind::Ds, Vec::new()));
    }
    let closed = closed_masks(g);
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let chosen = if n <= budget.enumeration {
        // combinations in lexicographic order by increasing size; the first
        // dominating set found is the lexicographically smallest optimum
        fn next_combination(comb: &mut [usize], n: usize) -> bool {
            let k = comb.len();
            let mut i = k;
            while i > 0 {
                i -= 1;
                if comb[i] != i + n - k {
                    comb[i] += 1;
                    for j in i + 1..k {
                        comb[j] = comb[j - 1] + 1;
                    }
                    return true;
                }
            }
            false
        }
        let mut found = None;
        'sizes: for k in 1..=n {
            let mut comb: Vec<usize> = (0..k).collect();
            loop {
                let mut dominated = 0u64;
                for &v in &comb {
                    dominated |= closed[v];
                }
                if dominated == full {
                    found = Some(comb);
                    break 'sizes;
                }
                if !next_combination(&mut comb, n) {
                    break;
                }
            }
        }
        let comb = found.expect("the full vertex set dominates");
        let mut mask = 0u64;
        for v in comb {
            mask |= 1 << v;
        }
        mask
    } else {
        let gamma = gamma_of(&closed, full, 0, 0, 0);
        let mut forced = 0u64;
        let mut forced_count = 0usize;
        let mut excluded = 0u64;
        for v in 0..n {
            if forced >> v & 1 == 1 {
                continue;
            }
            if gamma_of(&closed, full, forced | 1 << v, excluded, forced_count + 1) == gamma {
                forced |= 1 << v;
                forced_count += 1;
                if forced_count == gamma {
                    break;
                }
            } else {
                excluded |= 1 << v;
            }
        }
        forced
    };
    Ok(Solution::from_indices(
        ProblemKind::Ds,
        g,
        &BitSet::from_indices(n, (0..n).filter(|&v| chosen >> v & 1 == 1)),
    ))
}

pub fn brute_force_ds(g: &Graph) -> Result<Solution> {
    brute_force_ds_with(g, &OracleBudget::default())
}

/// Budget for neighbor-class machinery.
#[derive(Debug, Clone, Copy)]
pub struct SolveConfig {
    /// Maximum distinct classes per cut side, and maximum table entries per
    /// node; exceeding it is an error, not a silent fallback.
    pub class_budget: usize,
}

impl Default for SolveConfig {
    fn default() -> Self {
        SolveConfig {
            class_budget: 200_000,
        }
    }
}

/// Distinct crossing-neighborhood signatures achievable by subsets of
/// `members`, with parent links for representative reconstruction. Classes
/// are discovered breadth-first from the empty set, one added vertex at a
/// time, so ids are deterministic.
struct ClassSet {
    sigs: Vec<BitSet>,
    index: HashMap<BitSet, u32>,
    parent: Vec<Option<(u32, usize)>>,
}

impl ClassSet {
    fn enumerate(g: &Graph, members: &BitSet, other: &BitSet, budget: usize) -> Result<ClassSet> {
        let member_list: Vec<usize> = members.iter().collect();
        let vertex_sigs: Vec<BitSet> = member_list
            .iter()
            .map(|&v| g.neighbors(v).intersection(other))
            .collect();
        let empty = BitSet::new(g.len());
        let mut set = ClassSet {
            sigs: vec![empty.clone()],
            index: HashMap::from([(empty, 0u32)]),
            parent: vec![None],
        };
        let mut head = 0usize;
        while head < set.sigs.len() {
            let base = set.sigs[head].clone();
            for (mi, vsig) in vertex_sigs.iter().enumerate() {
                let mut sig = base.clone();
                sig.union_with(vsig);
                if !set.index.contains_key(&sig) {
                    let id = set.sigs.len() as u32;
                    if set.sigs.len() + 1 > budget {
                        return Err(Error::ClassBudgetExceeded { budget });
                    }
                    set.index.insert(sig.clone(), id);
                    set.sigs.push(sig);
                    set.parent.push(Some((head as u32, member_list[mi])));
                }
            }
            head += 1;
        }
        Ok(set)
    }

    fn len(&self) -> usize {
        self.sigs.len()
    }

    fn id_of(&self, sig: &BitSet) -> Option<u32> {
        self.index.get(sig).copied()
    }

    fn representative(&self, class: u32) -> Vec<usize> {
        let mut out = Vec::new();
        let mut cursor = class;
        while let Some((prev, v)) = self.parent[cursor as usize] {
            out.push(v);
            cursor = prev;
        }
        out.sort_unstable();
        out.dedup();
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CutSide {
    A,
    B,
}

/// One canonical subset per distinct crossing-neighborhood signature.
#[derive(Debug, Clone)]
pub struct NeighborClass {
    pub side: CutSide,
    pub representative: Vec<usize>,
    pub signature: Vec<usize>,
}

/// Enumerates the neighbor-equivalence classes of one cut side.
pub fn enumerate_neighbor_classes(
    g: &Graph,
    cut: &Cut,
    side: CutSide,
    cfg: &SolveConfig,
) -> Result<Vec<NeighborClass>> {
    let (members, other) = match side {
        CutSide::A => (cut.side_a().clone(), cut.side_b()),
        CutSide::B => (cut.side_b(), cut.side_a().clone()),
    };
    let set = ClassSet::enumerate(g, &members, &other, cfg.class_budget)?;
    Ok((0..set.len() as u32)
        .map(|c| NeighborClass {
            side,
            representative: set.representative(c),
            signature: set.sigs[c as usize].iter().collect(),
        })
        .collect())
}

struct RootedNode {
    children: Vec<usize>,
    own_vertex: Option<usize>,
    vertex_set: BitSet,
}

/// Roots the decomposition tree at its lowest-index leaf and splits a mapped
/// root into an internal node plus a virtual leaf, so every node is either a
/// leaf with one vertex or an internal node with one or two children.
fn rooted_nodes(g: &Graph, bd: &BranchDecomposition) -> Result<(Vec<RootedNode>, usize)> {
    bd.validate_for(g)?;
    let t = bd.node_count();
    let n = g.len();
    let vertex_index = |id: &str| -> Result<usize> {
        g.index_of(id).ok_or_else(|| Error::UnknownVertex(id.into()))
    };
    if t == 1 {
        let v = vertex_index(bd.vertex_of(0).expect("single node is a leaf"))?;
        let mut set = BitSet::new(n);
        set.insert(v);
        return Ok((
            vec![RootedNode {
                children: Vec::new(),
                own_vertex: Some(v),
                vertex_set: set,
            }],
            0,
        ));
    }
    let root_tree_node = (0..t)
        .find(|&v| bd.neighbors(v).len() <= 1)
        .expect("a tree has a leaf");
    // map tree nodes to rooted nodes
    let mut nodes: Vec<RootedNode> = (0..t)
        .map(|_| RootedNode {
            children: Vec::new(),
            own_vertex: None,
            vertex_set: BitSet::new(n),
        })
        .collect();
    let mut order = Vec::with_capacity(t);
    let mut seen = vec![false; t];
    let mut stack = vec![root_tree_node];
    seen[root_tree_node] = true;
    let mut parent = vec![usize::MAX; t];
    while let Some(v) = stack.pop() {
        order.push(v);
        for &u in bd.neighbors(v) {
            if !seen[u] {
                seen[u] = true;
                parent[u] = v;
                nodes[v].children.push(u);
                stack.push(u);
            }
        }
    }
    for v in 0..t {
        nodes[v].children.sort_unstable();
        if let Some(id) = bd.vertex_of(v) {
            nodes[v].own_vertex = Some(vertex_index(id)?);
        }
    }
    // a mapped root with a child gets a virtual leaf for its own vertex
    if nodes[root_tree_node].own_vertex.is_some() && !nodes[root_tree_node].children.is_empty() {
        let v = nodes[root_tree_node].own_vertex.take().unwrap();
        let mut set = BitSet::new(n);
        set.insert(v);
        nodes.push(RootedNode {
            children: Vec::new(),
            own_vertex: Some(v),
            vertex_set: set,
        });
        let virtual_id = nodes.len() - 1;
        nodes[root_tree_node].children.push(virtual_id);
        order.push(virtual_id);
    }
    // vertex sets bottom-up
    for &v in order.iter().rev() {
        let mut set = nodes[v].vertex_set.clone();
        if let Some(u) = nodes[v].own_vertex {
            set.insert(u);
        }
        let children = nodes[v].children.clone();
        for c in children {
            let child_set = nodes[c].vertex_set.clone();
            set.union_with(&child_set);
        }
        nodes[v].vertex_set = set;
    }
    Ok((nodes, root_tree_node))
}

#[derive(Clone)]
struct Entry {
    value: usize,
    witness: BitSet,
}

struct NodeTable {
    inside: ClassSet,
    outside: ClassSet,
    entries: HashMap<(u32, u32), Entry>,
}

fn upsert(entries: &mut HashMap<(u32, u32), Entry>, key: (u32, u32), cand: Entry, maximize: bool) {
    match entries.get_mut(&key) {
        None => {
            entries.insert(key, cand);
        }
        Some(existing) => {
            let better = if maximize {
                cand.value > existing.value
            } else {
                cand.value < existing.value
            };
            if better
                || (cand.value == existing.value
                    && cand.witness.lex_cmp(&existing.witness) == std::cmp::Ordering::Less)
            {
                *existing = cand;
            }
        }
    }
}

fn solve_bd(
    g: &Graph,
    bd: &BranchDecomposition,
    kind: ProblemKind,
    cfg: &SolveConfig,
) -> Result<Solution> {
    let n = g.len();
    if n == 0 {
        return Ok(Solution::new(kind, Vec::new()));
    }
    let (nodes, root) = rooted_nodes(g, bd)?;
    let maximize = kind == ProblemKind::Is;
    // post-order over rooted nodes
    let mut order = Vec::with_capacity(nodes.len());
    let mut stack = vec![(root, false)];
    while let Some((v, expanded)) = stack.pop() {
        if expanded {
            order.push(v);
        } else {
            stack.push((v, true));
            for &c in &nodes[v].children {
                stack.push((c, false));
            }
        }
    }
    let mut tables: Vec<Option<NodeTable>> = (0..nodes.len()).map(|_| None).collect();
    for &a in &order {
        let node = &nodes[a];
        let a_set = &node.vertex_set;
        let complement = a_set.complement();
        let inside = ClassSet::enumerate(g, a_set, &complement, cfg.class_budget)?;
        let outside = ClassSet::enumerate(g, &complement, a_set, cfg.class_budget)?;
        if inside.len().saturating_mul(outside.len()) > cfg.class_budget {
            return Err(Error::ClassBudgetExceeded {
                budget: cfg.class_budget,
            });
        }
        let mut entries: HashMap<(u32, u32), Entry> = HashMap::new();
        if let Some(v) = node.own_vertex {
            debug_assert!(node.children.is_empty());
            let empty_sig = BitSet::new(n);
            let ci_empty = inside.id_of(&empty_sig).expect("empty class exists");
            let ci_v = inside
                .id_of(&g.neighbors(v).intersection(&complement))
                .expect("singleton class exists");
            let mut witness_v = BitSet::new(n);
            witness_v.insert(v);
            for co in 0..outside.len() as u32 {
                let covered = outside.sigs[co as usize].contains(v);
                match kind {
                    ProblemKind::Is => {
                        upsert(
                            &mut entries,
                            (ci_empty, co),
                            Entry {
                                value: 0,
                                witness: BitSet::new(n),
                            },
                            maximize,
                        );
                        if !covered {
                            upsert(
                                &mut entries,
                                (ci_v, co),
                                Entry {
                                    value: 1,
                                    witness: witness_v.clone(),
                                },
                                maximize,
                            );
                        }
                    }
                    ProblemKind::Ds => {
                        if covered {
                            upsert(
                                &mut entries,
                                (ci_empty, co),
                                Entry {
                                    value: 0,
                                    witness: BitSet::new(n),
                                },
                                maximize,
                            );
                        }
                        upsert(
                            &mut entries,
                            (ci_v, co),
                            Entry {
                                value: 1,
                                witness: witness_v.clone(),
                            },
                            maximize,
                        );
                    }
                }
            }
        } else {
            match node.children.len() {
                1 => {
                    // pass-through: same vertex partition, re-key classes
                    let c = node.children[0];
                    let child = tables[c].as_ref().expect("child processed");
                    for (&(ci_c, co_c), entry) in &child.entries {
                        let ci_sig = &child.inside.sigs[ci_c as usize];
                        let ci_a = inside.id_of(ci_sig).expect("same partition");
                        let co_sig = &child.outside.sigs[co_c as usize];
                        let co_a = outside.id_of(co_sig).expect("same partition");
                        upsert(&mut entries, (ci_a, co_a), entry.clone(), maximize);
                    }
                }
                2 => {
                    let b = node.children[0];
                    let c = node.children[1];
                    let tb = tables[b].as_ref().expect("child processed");
                    let tc = tables[c].as_ref().expect("child processed");
                    let b_set = &nodes[b].vertex_set;
                    let c_set = &nodes[c].vertex_set;
                    for co_a in 0..outside.len() as u32 {
                        let sig_out = &outside.sigs[co_a as usize];
                        for ci_b in 0..tb.inside.len() as u32 {
                            let sig_b = &tb.inside.sigs[ci_b as usize];
                            // expected outside of c: S_b together with the
                            // outside expectation of a
                            let mut co_c_sig = sig_b.union(sig_out);
                            co_c_sig.intersect_with(c_set);
                            let co_c = tc
                                .outside
                                .id_of(&co_c_sig)
                                .expect("signature achievable by construction");
                            for ci_c in 0..tc.inside.len() as u32 {
                                let ec = match tc.entries.get(&(ci_c, co_c)) {
                                    Some(e) => e,
                                    None => continue,
                                };
                                let sig_c = &tc.inside.sigs[ci_c as usize];
                                let mut co_b_sig = sig_c.union(sig_out);
                                co_b_sig.intersect_with(b_set);
                                let co_b = tb
                                    .outside
                                    .id_of(&co_b_sig)
                                    .expect("signature achievable by construction");
                                let eb = match tb.entries.get(&(ci_b, co_b)) {
                                    Some(e) => e,
                                    None => continue,
                                };
                                let mut ci_a_sig = sig_b.union(sig_c);
                                ci_a_sig.intersect_with(&complement);
                                let ci_a = inside
                                    .id_of(&ci_a_sig)
                                    .expect("signature achievable by construction");
                                upsert(
                                    &mut entries,
                                    (ci_a, co_a),
                                    Entry {
                                        value: eb.value + ec.value,
                                        witness: eb.witness.union(&ec.witness),
                                    },
                                    maximize,
                                );
                            }
                        }
                    }
                }
                k => unreachable!("rooted node with {k} children"),
            }
        }
        // free child tables early
        for &c in &nodes[a].children {
            tables[c] = None;
        }
        tables[a] = Some(NodeTable {
            inside,
            outside,
            entries,
        });
    }
    let root_table = tables[root].as_ref().expect("root processed");
    debug_assert_eq!(root_table.inside.len(), 1);
    debug_assert_eq!(root_table.outside.len(), 1);
    let entry = root_table
        .entries
        .get(&(0, 0))
        .ok_or_else(|| Error::Precondition("no feasible solution at the root".into()))?;
    let mut solution = Solution::from_indices(kind, g, &entry.witness);
    if !verify_solution(g, &mut solution) {
        return Err(Error::Precondition(
            "internal error: solver produced an invalid certificate".into(),
        ));
    }
    Ok(solution)
}

/// Exact maximum independent set via the class-based dynamic program.
pub fn solve_is_bd(g: &Graph, bd: &BranchDecomposition, cfg: &SolveConfig) -> Result<Solution> {
    solve_bd(g, bd, ProblemKind::Is, cfg)
}

/// Exact minimum dominating set via the class-based dynamic program.
pub fn solve_ds_bd(g: &Graph, bd: &BranchDecomposition, cfg: &SolveConfig) -> Result<Solution> {
    solve_bd(g, bd, ProblemKind::Ds, cfg)
}

/// Pipeline from a representation: extract the graph, build the caterpillar
/// decomposition (isolated paths become leading leaves) and run the DP.
pub fn solve_rep(r: &crate::rep::GridRep, kind: ProblemKind, cfg: &SolveConfig) -> Result<Solution> {
    let g = crate::graph::intersection_graph(r);
    if g.is_empty() {
        return Ok(Solution::new(kind, Vec::new()));
    }
    let bd = crate::decomp::build_decomposition(r)?;
    solve_bd(&g, &bd, kind, cfg)
}
