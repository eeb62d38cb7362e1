//! Caterpillar branch decompositions for grid-path representations.
//!
//! The construction sorts paths by the position of their first anchored
//! endpoint in the top-down, left-to-right order of intersection points,
//! breaking ties clockwise by the grid-edge used at that point, and maps the
//! resulting order onto the leaves of a caterpillar. For a representation
//! with at most `l` columns and per-edge load at most `t`, the mm-width (and
//! hence mim-width) of the result is at most `3t * (l + 1)`.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{BitSet, Cut, Graph};
use crate::matching::{cut_max_induced_matching, cut_max_matching, MimBudget};
use crate::rep::{GridPath, GridPoint, GridRep};

/// Subcubic tree with a leaf bijection onto graph vertices (by id).
#[derive(Debug, Clone)]
pub struct BranchDecomposition {
    adj: Vec<Vec<usize>>,
    delta: Vec<Option<String>>,
}

impl BranchDecomposition {
    /// Caterpillar over the given leaf order: spine nodes 0..n-1, a pendant
    /// leaf per interior spine node, the spine ends acting as the first and
    /// last leaves.
    pub fn caterpillar(order: &[String]) -> BranchDecomposition {
        let n = order.len();
        match n {
            0 => BranchDecomposition {
                adj: Vec::new(),
                delta: Vec::new(),
            },
            1 => BranchDecomposition {
                adj: vec![Vec::new()],
                delta: vec![Some(order[0].clone())],
            },
            2 => BranchDecomposition {
                adj: vec![vec![1], vec![0]],
                delta: vec![Some(order[0].clone()), Some(order[1].clone())],
            },
            _ => {
                let nodes = 2 * n - 2;
                let mut adj = vec![Vec::new(); nodes];
                let mut delta = vec![None; nodes];
                for i in 1..n {
                    adj[i - 1].push(i);
                    adj[i].push(i - 1);
                }
                delta[0] = Some(order[0].clone());
                delta[n - 1] = Some(order[n - 1].clone());
                for i in 1..=n - 2 {
                    let pendant = n - 1 + i;
                    adj[i].push(pendant);
                    adj[pendant].push(i);
                    delta[pendant] = Some(order[i].clone());
                }
                BranchDecomposition { adj, delta }
            }
        }
    }

    pub fn node_count(&self) -> usize {
        self.adj.len()
    }

    pub fn neighbors(&self, node: usize) -> &[usize] {
        &self.adj[node]
    }

    /// Leaves as (tree node, vertex id), in node order.
    pub fn leaves(&self) -> Vec<(usize, &str)> {
        self.delta
            .iter()
            .enumerate()
            .filter_map(|(i, d)| d.as_deref().map(|id| (i, id)))
            .collect()
    }

    pub fn leaf_count(&self) -> usize {
        self.delta.iter().filter(|d| d.is_some()).count()
    }

    pub fn vertex_of(&self, node: usize) -> Option<&str> {
        self.delta[node].as_deref()
    }

    /// Tree edges as sorted (a, b) pairs with a < b.
    pub fn tree_edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (a, nbrs) in self.adj.iter().enumerate() {
            for &b in nbrs {
                if a < b {
                    out.push((a, b));
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Checks tree shape (connected, acyclic, degree at most 3) and that the
    /// leaf labels are exactly the vertex ids of `g`.
    pub fn validate_for(&self, g: &Graph) -> Result<()> {
        let nodes = self.node_count();
        if nodes == 0 {
            if g.is_empty() {
                return Ok(());
            }
            return Err(Error::Precondition(
                "empty decomposition for a non-empty graph".into(),
            ));
        }
        if self.tree_edges().len() != nodes - 1 {
            return Err(Error::Precondition("decomposition tree is not a tree".into()));
        }
        let mut seen = vec![false; nodes];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut visited = 1;
        while let Some(v) = stack.pop() {
            if self.adj[v].len() > 3 {
                return Err(Error::Precondition("tree node of degree > 3".into()));
            }
            for &u in &self.adj[v] {
                if !seen[u] {
                    seen[u] = true;
                    visited += 1;
                    stack.push(u);
                }
            }
        }
        if visited != nodes {
            return Err(Error::Precondition("decomposition tree is disconnected".into()));
        }
        for (node, d) in self.delta.iter().enumerate() {
            let is_leaf = self.adj[node].len() <= 1;
            if d.is_some() && !is_leaf && nodes > 1 {
                return Err(Error::Precondition("internal node carries a vertex".into()));
            }
            if d.is_none() && is_leaf && nodes > 1 {
                return Err(Error::Precondition("unlabeled leaf".into()));
            }
        }
        let mut ids: Vec<&str> = self.delta.iter().filter_map(|d| d.as_deref()).collect();
        ids.sort_unstable();
        let mut graph_ids: Vec<&str> = g.ids().iter().map(|s| s.as_str()).collect();
        graph_ids.sort_unstable();
        if ids != graph_ids {
            return Err(Error::Precondition(
                "leaf labels do not match graph vertices".into(),
            ));
        }
        Ok(())
    }

    /// One cut per tree edge: the A side holds the vertices whose leaves fall
    /// on the child side when the tree is rooted at node 0. Returned in tree
    /// edge order.
    pub fn cuts(&self, g: &Graph) -> Result<Vec<((usize, usize), Cut)>> {
        self.validate_for(g)?;
        let nodes = self.node_count();
        let n = g.len();
        if nodes <= 1 {
            return Ok(Vec::new());
        }
        // Iterative post-order from root 0: subtree leaf sets.
        let mut parent = vec![usize::MAX; nodes];
        let mut order = Vec::with_capacity(nodes);
        let mut stack = vec![0usize];
        let mut seen = vec![false; nodes];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            order.push(v);
            for &u in &self.adj[v] {
                if !seen[u] {
                    seen[u] = true;
                    parent[u] = v;
                    stack.push(u);
                }
            }
        }
        let mut below: Vec<BitSet> = vec![BitSet::new(n); nodes];
        for &v in order.iter().rev() {
            if let Some(id) = self.vertex_of(v) {
                let idx = g
                    .index_of(id)
                    .ok_or_else(|| Error::UnknownVertex(id.to_string()))?;
                below[v].insert(idx);
            }
            let below_v = below[v].clone();
            if parent[v] != usize::MAX {
                below[parent[v]].union_with(&below_v);
            }
        }
        let mut cuts = Vec::new();
        for (a, b) in self.tree_edges() {
            // The child side of the edge is whichever endpoint is deeper.
            let child = if parent[b] == a { b } else { a };
            cuts.push(((a, b), Cut::new(below[child].clone())));
        }
        Ok(cuts)
    }
}

/// Trims every path so that its endpoints are intersection points: free
/// endpoints are pulled to the first/last intersection along the traversal.
/// A path whose intersections all sit at a single grid-point keeps one free
/// endpoint and is re-oriented so that it starts at that point.
pub fn endpoint_normalize(r: &GridRep) -> Result<GridRep> {
    let traces: Vec<(String, Vec<GridPoint>)> = r
        .paths()
        .map(|p| (p.id().to_string(), p.trace()))
        .collect();
    let mut coverage: HashMap<GridPoint, u32> = HashMap::new();
    for (_, trace) in &traces {
        let mut seen = std::collections::HashSet::new();
        for &q in trace {
            if seen.insert(q) {
                *coverage.entry(q).or_insert(0) += 1;
            }
        }
    }
    let mut out = r.clone();
    for (id, trace) in &traces {
        let shared: Vec<usize> = (0..trace.len())
            .filter(|&i| coverage[&trace[i]] >= 2)
            .collect();
        let (first, last) = match (shared.first(), shared.last()) {
            (Some(&f), Some(&l)) => (f, l),
            _ => return Err(Error::IsolatedVertex(id.clone())),
        };
        let new_trace: Vec<GridPoint> = if trace[first] == trace[last] {
            // single intersection point: keep a free tail, start at the point
            if first == 0 {
                continue;
            } else if first == trace.len() - 1 {
                trace.iter().rev().copied().collect()
            } else {
                trace[first..].to_vec()
            }
        } else {
            if first == 0 && last == trace.len() - 1 {
                continue;
            }
            trace[first..=last].to_vec()
        };
        out.replace_path(
            GridPath::new(id.clone(), compress_trace(&new_trace))
                .expect("trimmed trace stays a valid path"),
        );
    }
    Ok(out)
}

/// Collapses a full grid-point trace back to its endpoint/bend sequence.
fn compress_trace(trace: &[GridPoint]) -> Vec<GridPoint> {
    debug_assert!(trace.len() >= 2);
    let mut out = vec![trace[0]];
    for i in 1..trace.len() - 1 {
        let prev = trace[i - 1];
        let here = trace[i];
        let next = trace[i + 1];
        let horiz_in = here.y == prev.y;
        let horiz_out = next.y == here.y;
        if horiz_in != horiz_out {
            out.push(here);
        }
    }
    out.push(*trace.last().unwrap());
    out
}

/// All grid-points where at least two paths meet, ordered top-down and
/// left-to-right: `p < q` when `p.y > q.y`, or `p.y == q.y` and `p.x < q.x`.
pub fn intersection_point_order(r: &GridRep) -> Vec<GridPoint> {
    let mut coverage: HashMap<GridPoint, u32> = HashMap::new();
    for p in r.paths() {
        let mut seen = std::collections::HashSet::new();
        for q in p.trace() {
            if seen.insert(q) {
                *coverage.entry(q).or_insert(0) += 1;
            }
        }
    }
    let mut points: Vec<GridPoint> = coverage
        .into_iter()
        .filter_map(|(p, c)| (c >= 2).then_some(p))
        .collect();
    points.sort_by(|a, b| b.y.cmp(&a.y).then(a.x.cmp(&b.x)));
    points
}

/// Sort key for a path: the rank of the first intersection point among its
/// endpoints, and the clockwise rank (left, up, right, down) of the grid-edge
/// the path uses at that point. Two paths are equivalent exactly when their
/// keys are equal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PathOrderKey {
    pub anchor_index: usize,
    pub direction_rank: u8,
}

fn direction_rank(from: GridPoint, toward: GridPoint) -> u8 {
    let dx = (toward.x - from.x).signum();
    let dy = (toward.y - from.y).signum();
    match (dx, dy) {
        (-1, 0) => 0,
        (0, 1) => 1,
        (1, 0) => 2,
        (0, -1) => 3,
        _ => unreachable!("axis-parallel unit direction"),
    }
}

fn path_order_key(path: &GridPath, rank: &HashMap<GridPoint, usize>) -> Result<PathOrderKey> {
    let pts = path.points();
    let (start, end) = path.endpoints();
    let start_rank = rank.get(&start).copied();
    let end_rank = rank.get(&end).copied();
    // Anchor on the endpoint whose intersection point comes first; prefer the
    // traversal start on ties (including the degenerate closed case).
    let use_start = match (start_rank, end_rank) {
        (Some(a), Some(b)) => a <= b,
        (Some(_), None) => true,
        (None, Some(_)) => false,
        (None, None) => {
            return Err(Error::Precondition(format!(
                "path {:?} has no anchored endpoint; normalize first",
                path.id()
            )))
        }
    };
    Ok(if use_start {
        PathOrderKey {
            anchor_index: start_rank.unwrap(),
            direction_rank: direction_rank(start, pts[1]),
        }
    } else {
        PathOrderKey {
            anchor_index: end_rank.unwrap(),
            direction_rank: direction_rank(end, pts[pts.len() - 2]),
        }
    })
}

/// Order keys for every path of a normalized representation, keyed by id.
pub fn path_order_keys(r: &GridRep) -> Result<HashMap<String, PathOrderKey>> {
    let points = intersection_point_order(r);
    let rank: HashMap<GridPoint, usize> =
        points.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let mut keys = HashMap::new();
    for p in r.paths() {
        keys.insert(p.id().to_string(), path_order_key(p, &rank)?);
    }
    Ok(keys)
}

/// Builds the caterpillar decomposition of a normalized representation.
/// Leaves follow the equivalence-class order; ties within a class are broken
/// by ascending path id.
pub fn build_caterpillar_decomposition(r: &GridRep) -> Result<BranchDecomposition> {
    let keys = path_order_keys(r)?;
    let mut order: Vec<String> = r.ids().map(|s| s.to_string()).collect();
    order.sort_by(|a, b| keys[a].cmp(&keys[b]).then(a.cmp(b)));
    Ok(BranchDecomposition::caterpillar(&order))
}

/// Full pipeline from an arbitrary representation: paths without
/// intersections become leading leaves of the caterpillar (they have no
/// edges, so they change no cut matchings), the rest is endpoint-normalized
/// and ordered by Theorem-style keys.
pub fn build_decomposition(r: &GridRep) -> Result<BranchDecomposition> {
    let index = crate::rep::build_intersection_index(r);
    let mut isolated: Vec<String> = Vec::new();
    let mut active: Vec<String> = Vec::new();
    for id in r.ids() {
        if index.path_extremes(id).is_some() {
            active.push(id.to_string());
        } else {
            isolated.push(id.to_string());
        }
    }
    if active.is_empty() {
        return Ok(BranchDecomposition::caterpillar(&isolated));
    }
    let keep: std::collections::HashSet<String> = active.iter().cloned().collect();
    let sub = crate::rep::induced_subrepresentation(r, &keep)?;
    let normalized = endpoint_normalize(&sub)?;
    let keys = path_order_keys(&normalized)?;
    active.sort_by(|a, b| keys[a].cmp(&keys[b]).then(a.cmp(b)));
    let mut order = isolated;
    order.extend(active);
    Ok(BranchDecomposition::caterpillar(&order))
}

/// Per-cut width data, in tree-edge order.
#[derive(Debug, Clone)]
pub struct CutProfile {
    pub tree_edge: (usize, usize),
    pub side_a_size: usize,
    pub crossing_edges: usize,
    pub mm: usize,
    pub mim: Option<usize>,
}

/// Evaluates every cut of the decomposition; mim is computed only when a
/// budget is supplied. Cut evaluations run in parallel.
pub fn width_profile(
    g: &Graph,
    bd: &BranchDecomposition,
    mim_budget: Option<&MimBudget>,
) -> Result<Vec<CutProfile>> {
    let cuts = bd.cuts(g)?;
    cuts.par_iter()
        .map(|(edge, cut)| {
            let crossing = cut.crossing_edges(g).len();
            let mm = cut_max_matching(g, cut);
            let mim = match mim_budget {
                Some(budget) => Some(cut_max_induced_matching(g, cut, budget)?),
                None => None,
            };
            Ok(CutProfile {
                tree_edge: *edge,
                side_a_size: cut.side_a().len(),
                crossing_edges: crossing,
                mm,
                mim,
            })
        })
        .collect()
}

/// Maximum over tree edges of the cut maximum matching.
pub fn decomposition_mm_width(g: &Graph, bd: &BranchDecomposition) -> Result<usize> {
    Ok(width_profile(g, bd, None)?
        .iter()
        .map(|c| c.mm)
        .max()
        .unwrap_or(0))
}

/// Maximum over tree edges of the cut maximum induced matching.
pub fn decomposition_mim_width(
    g: &Graph,
    bd: &BranchDecomposition,
    budget: &MimBudget,
) -> Result<usize> {
    Ok(width_profile(g, bd, Some(budget))?
        .iter()
        .map(|c| c.mim.unwrap())
        .max()
        .unwrap_or(0))
}
