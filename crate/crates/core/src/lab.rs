//! Constructive transformations and instance generators: normalization of
//! 0-bend contact representations, the splitting gadgets with their exact
//! optimum offsets, the bounded-column split-graph representation, and the
//! random generators feeding the test battery.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{intersection_graph, structural_checks, Graph};
use crate::rep::{
    refine_grid, validate, Constraints, Flavor, GridEdge, GridPath, GridPoint,
    GridRep,
};
use crate::solve::ProblemKind;

/// Outcome of one (q, q')-splitting.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitReport {
    pub kind: ProblemKind,
    pub vertex: String,
    pub q: i64,
    pub q_prime: i64,
    pub degree: u8,
    pub new_vertex_count: usize,
    /// Exact shift of the optimum: alpha grows by this for IS splits, gamma
    /// for DS splits.
    pub predicted_delta: i64,
}

fn sorted_ends(p: &GridPath) -> (GridPoint, GridPoint) {
    let (a, b) = p.endpoints();
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Grid-points shared with other paths, sorted along the segment.
fn contacts_of(r: &GridRep, id: &str) -> Vec<GridPoint> {
    let target = r.path(id).expect("known path");
    let own: HashSet<GridPoint> = target.trace().into_iter().collect();
    let mut points: BTreeSet<GridPoint> = BTreeSet::new();
    for p in r.paths() {
        if p.id() == id {
            continue;
        }
        for q in p.trace() {
            if own.contains(&q) {
                points.insert(q);
            }
        }
    }
    points.into_iter().collect()
}

fn require_b0_cpg(r: &GridRep) -> Result<()> {
    if r.flavor() != Flavor::Cpg {
        return Err(Error::Precondition("flavor must be CPG".into()));
    }
    for p in r.paths() {
        if p.bend_count() > 0 {
            return Err(Error::Precondition(format!(
                "path {:?} has bends; a 0-bend representation is required",
                p.id()
            )));
        }
    }
    Ok(())
}

fn graphs_equal(a: &Graph, b: &Graph) -> bool {
    let edges = |g: &Graph| -> BTreeSet<(String, String)> {
        g.edges()
            .iter()
            .map(|&(u, v)| {
                let (x, y) = (g.id(u).to_string(), g.id(v).to_string());
                if x < y {
                    (x, y)
                } else {
                    (y, x)
                }
            })
            .collect()
    };
    let ids = |g: &Graph| -> BTreeSet<String> { g.ids().iter().cloned().collect() };
    ids(a) == ids(b) && edges(a) == edges(b)
}

/// Normalizes a subcubic triangle-free 0-bend CPG representation so that the
/// grid has O(n) columns, contacts sit at path endpoints except at cubic
/// vertices, horizontal paths of 2-vertices have length at least `min_len`
/// (both arms for 3-vertices), and 1-vertex paths have length one. The
/// intersection graph is unchanged.
pub fn normalize_b0cpg(r: &GridRep, min_len: i64) -> Result<GridRep> {
    if min_len != 4 && min_len != 5 {
        return Err(Error::InvalidParameter(format!(
            "min_len must be 4 or 5, got {min_len}"
        )));
    }
    require_b0_cpg(r)?;
    let g0 = intersection_graph(r);
    let checks = structural_checks(&g0);
    if !checks.is_subcubic {
        return Err(Error::Precondition("graph is not subcubic".into()));
    }
    if !checks.is_triangle_free {
        return Err(Error::Precondition("graph has a triangle".into()));
    }
    let mut rep = compact_columns(r)?;
    rep = trim_to_contacts(&rep);
    // three refinements stretch every positive length to at least 8 >= min_len
    rep = refine_grid(&refine_grid(&refine_grid(&rep)));
    rep = shrink_degree_one(&rep);
    let g1 = intersection_graph(&rep);
    if !graphs_equal(&g0, &g1) {
        return Err(Error::Internal(
            "normalization changed the intersection graph".into(),
        ));
    }
    Ok(rep)
}

/// Column compaction: anchors are the vertical-path columns plus the global
/// extremes; any slab between consecutive anchors wider than `2k + 1` (k the
/// largest per-row count of paths with an endpoint strictly inside) is
/// packed by an order- and contact-preserving coordinate compression, and
/// the right anchor is pulled to distance `2k + 1`.
fn compact_columns(r: &GridRep) -> Result<GridRep> {
    let mut rep = r.clone();
    if rep.is_empty() {
        return Ok(rep);
    }
    let cap = 4 * rep.len() + 16;
    for _ in 0..cap {
        if !compact_one_slab(&mut rep) {
            return Ok(rep);
        }
    }
    Err(Error::Internal(
        "column compaction did not reach a fixpoint".into(),
    ))
}

fn compact_one_slab(rep: &mut GridRep) -> bool {
    let (min_x, max_x) = rep.x_range().expect("non-empty");
    let mut anchors: BTreeSet<i64> = BTreeSet::from([min_x, max_x]);
    for p in rep.paths() {
        if p.is_vertical_segment() {
            anchors.insert(p.points()[0].x);
        }
    }
    let anchors: Vec<i64> = anchors.into_iter().collect();
    for w in anchors.windows(2) {
        let (left, right) = (w[0], w[1]);
        // paths with an endpoint strictly inside the slab, per row
        let mut per_row: BTreeMap<i64, Vec<(i64, i64)>> = BTreeMap::new();
        for p in rep.paths() {
            if !p.is_horizontal_segment() {
                continue;
            }
            let (a, b) = sorted_ends(p);
            let (u, v, y) = (a.x, b.x, a.y);
            let kind1 = left < v && v < right;
            let kind2 = left < u && u < right && right <= v;
            if kind1 || kind2 {
                per_row.entry(y).or_default().push((u, v));
            }
        }
        let k = per_row.values().map(|v| v.len()).max().unwrap_or(0) as i64;
        if right - left <= 2 * k + 1 {
            continue;
        }
        // per-row compression of strictly-inside coordinates
        let mut new_x: HashMap<(i64, i64), i64> = HashMap::new(); // (row, old x) -> new x
        for (&y, pairs) in &per_row {
            let mut inside: BTreeSet<i64> = BTreeSet::new();
            for &(u, v) in pairs {
                if left < u && u < right {
                    inside.insert(u);
                }
                if left < v && v < right {
                    inside.insert(v);
                }
            }
            for (j, &z) in inside.iter().enumerate() {
                new_x.insert((y, z), left + 1 + j as i64);
            }
        }
        let new_right = left + 2 * k + 1;
        let updated: Vec<GridPath> = rep
            .paths()
            .map(|p| {
                let pts: Vec<GridPoint> = p
                    .points()
                    .iter()
                    .map(|&q| {
                        let x = if q.x == right {
                            new_right
                        } else if p.is_horizontal_segment() {
                            *new_x.get(&(q.y, q.x)).unwrap_or(&q.x)
                        } else {
                            q.x
                        };
                        GridPoint::new(x, q.y)
                    })
                    .collect();
                GridPath::new(p.id(), pts).expect("compaction preserves path validity")
            })
            .collect();
        for p in updated {
            rep.replace_path(p);
        }
        return true;
    }
    false
}

/// Pulls every path end to its nearest contact: 2+-vertices keep exactly the
/// segment between their first and last contact, 1-vertices get their first
/// endpoint moved onto the contact when it is interior.
fn trim_to_contacts(r: &GridRep) -> GridRep {
    let mut out = r.clone();
    let ids: Vec<String> = r.ids().map(|s| s.to_string()).collect();
    for id in &ids {
        let contacts = contacts_of(&out, id);
        let path = out.path(id).expect("known path").clone();
        let (first, second) = (path.points()[0], path.points()[1]);
        match contacts.len() {
            0 => {}
            1 => {
                let q = contacts[0];
                if q != first && q != second {
                    out.replace_path(
                        GridPath::new(id.clone(), vec![q, second])
                            .expect("contact lies on the segment"),
                    );
                }
            }
            _ => {
                // order contacts by distance from the traversal start
                let dist = |p: GridPoint| (p.x - first.x).abs() + (p.y - first.y).abs();
                let near = *contacts.iter().min_by_key(|&&p| dist(p)).unwrap();
                let far = *contacts.iter().max_by_key(|&&p| dist(p)).unwrap();
                if near != first || far != second {
                    out.replace_path(
                        GridPath::new(id.clone(), vec![near, far])
                            .expect("contacts lie on the segment"),
                    );
                }
            }
        }
    }
    out
}

/// Property (e): 1-vertex paths shrink to a single grid-edge, keeping their
/// contact endpoint and direction.
fn shrink_degree_one(r: &GridRep) -> GridRep {
    let mut out = r.clone();
    let ids: Vec<String> = r.ids().map(|s| s.to_string()).collect();
    for id in &ids {
        let contacts = contacts_of(&out, id);
        if contacts.len() != 1 {
            continue;
        }
        let path = out.path(id).expect("known path").clone();
        if path.length() == 1 {
            continue;
        }
        let (first, second) = (path.points()[0], path.points()[1]);
        let q = contacts[0];
        let step = |from: GridPoint, toward: GridPoint| -> GridPoint {
            GridPoint::new(
                from.x + (toward.x - from.x).signum(),
                from.y + (toward.y - from.y).signum(),
            )
        };
        let new_path = if q == first {
            GridPath::new(id.clone(), vec![first, step(first, second)])
        } else if q == second {
            GridPath::new(id.clone(), vec![step(second, first), second])
        } else {
            // contact interior: normalization should have moved it to an end
            continue;
        };
        out.replace_path(new_path.expect("unit step stays valid"));
    }
    out
}

/// Audit of the five normalization properties; returns human-readable
/// violations (empty when all hold).
pub fn audit_b0cpg_properties(r: &GridRep, min_len: i64) -> Vec<String> {
    let mut issues = Vec::new();
    let n = r.len() as i64;
    // (a) O(n) columns: 3n + 1 before the three refinements
    let max_columns = 8 * (3 * n + 1);
    if r.column_count() > max_columns {
        issues.push(format!(
            "(a) {} columns exceed the bound {max_columns}",
            r.column_count()
        ));
    }
    let g = intersection_graph(r);
    for p in r.paths() {
        let id = p.id();
        let degree = g.degree(g.index_of(id).unwrap());
        let contacts = contacts_of(r, id);
        let (a, b) = p.endpoints();
        let interior: Vec<GridPoint> = contacts
            .iter()
            .copied()
            .filter(|&q| q != a && q != b)
            .collect();
        // (b) strict containment of another endpoint iff cubic vertex
        if (degree == 3) != (!interior.is_empty()) {
            issues.push(format!(
                "(b) path {id:?} has degree {degree} but {} interior contacts",
                interior.len()
            ));
        }
        match degree {
            1 => {
                // (e)
                if p.length() != 1 {
                    issues.push(format!(
                        "(e) 1-vertex path {id:?} has length {}",
                        p.length()
                    ));
                }
            }
            2 if p.is_horizontal_segment() => {
                // (c)
                if p.length() < min_len {
                    issues.push(format!(
                        "(c) 2-vertex path {id:?} has length {} < {min_len}",
                        p.length()
                    ));
                }
            }
            3 if p.is_horizontal_segment() => {
                // (d)
                let (lo, hi) = sorted_ends(p);
                for q in &interior {
                    let arm_left = q.x - lo.x;
                    let arm_right = hi.x - q.x;
                    if arm_left < min_len || arm_right < min_len {
                        issues.push(format!(
                            "(d) 3-vertex path {id:?} has arms {arm_left}, {arm_right} < {min_len}"
                        ));
                    }
                }
            }
            _ => {}
        }
    }
    issues
}

struct SplitTarget {
    row: i64,
    left: i64,
    right: i64,
    degree: u8,
    /// interior contact column for cubic vertices
    middle: Option<i64>,
}

fn split_target(r: &GridRep, v: &str, min_len: i64) -> Result<SplitTarget> {
    let path = r
        .path(v)
        .ok_or_else(|| Error::UnknownVertex(v.to_string()))?;
    if !path.is_horizontal_segment() {
        return Err(Error::Precondition(format!(
            "vertex {v:?} does not have a horizontal 0-bend path"
        )));
    }
    let (lo, hi) = sorted_ends(path);
    let contacts = contacts_of(r, v);
    let degree = contacts.len();
    if degree < 2 {
        return Err(Error::Precondition(format!(
            "vertex {v:?} has degree {degree} < 2"
        )));
    }
    if degree > 3 {
        return Err(Error::Precondition(format!(
            "vertex {v:?} has degree {degree} > 3: not subcubic"
        )));
    }
    if !contacts.contains(&lo) || !contacts.contains(&hi) {
        return Err(Error::Precondition(format!(
            "path of {v:?} is not normalized: an endpoint carries no contact"
        )));
    }
    let middle: Vec<GridPoint> = contacts
        .iter()
        .copied()
        .filter(|&q| q != lo && q != hi)
        .collect();
    let target = SplitTarget {
        row: lo.y,
        left: lo.x,
        right: hi.x,
        degree: degree as u8,
        middle: middle.first().map(|p| p.x),
    };
    match target.degree {
        2 => {
            if hi.x - lo.x < min_len {
                return Err(Error::Precondition(format!(
                    "path of {v:?} has length {} < {min_len}",
                    hi.x - lo.x
                )));
            }
        }
        3 => {
            let p = target.middle.expect("cubic vertex has an interior contact");
            if p - lo.x < min_len || hi.x - p < min_len {
                return Err(Error::Precondition(format!(
                    "arms of {v:?} are shorter than {min_len}"
                )));
            }
        }
        _ => unreachable!(),
    }
    Ok(target)
}

fn piece_id(base: &str, i: usize) -> String {
    format!("{base}#{i:04}")
}

fn install_pieces(
    r: &GridRep,
    v: &str,
    pieces: Vec<(i64, i64)>,
    row: i64,
) -> Result<GridRep> {
    let mut paths: Vec<GridPath> = r.paths().filter(|p| p.id() != v).cloned().collect();
    for (i, &(a, b)) in pieces.iter().enumerate() {
        let id = piece_id(v, i + 1);
        if r.path(&id).is_some() {
            return Err(Error::Precondition(format!(
                "replacement id {id:?} already exists"
            )));
        }
        paths.push(GridPath::new(
            id,
            vec![GridPoint::new(a, row), GridPoint::new(b, row)],
        )?);
    }
    GridRep::new(r.grid_step(), r.flavor(), paths)
}

/// Tiles `[from, to]` with `units` unit paths followed by trailing pieces of
/// the given lengths (zero lengths are skipped).
fn tile(from: i64, units: i64, trailing: &[i64]) -> Vec<(i64, i64)> {
    let mut out = Vec::new();
    let mut x = from;
    for _ in 0..units {
        out.push((x, x + 1));
        x += 1;
    }
    for &len in trailing {
        debug_assert!(len >= 1);
        out.push((x, x + len));
        x += len;
    }
    out
}

/// The (q, q')-splitting for Independent Set: replaces the horizontal path
/// of a 2+-vertex with a chain of short paths, shifting the maximum
/// independent set size by exactly `q + q' + 2(d - 1)`.
pub fn split_vertex_is(r: &GridRep, v: &str) -> Result<(GridRep, SplitReport)> {
    let t = split_target(r, v, 5)?;
    let (pieces, q, q_prime) = match t.degree {
        2 => {
            let l = t.right - t.left;
            let (q, rem) = ((l - 5) / 2, (l - 5) % 2);
            (tile(t.left, 2 * q + 4, &[rem + 1]), q, 0)
        }
        3 => {
            let p = t.middle.unwrap();
            let l1 = (p - 1) - t.left;
            let l3 = t.right - (p + 1);
            let (q1, r1) = ((l1 - 4) / 2, (l1 - 4) % 2);
            let (q3, r3) = ((l3 - 4) / 2, (l3 - 4) % 2);
            let mut pieces = tile(t.left, 2 * q1 + 3, &[r1 + 1]);
            pieces.push((p - 1, p + 1));
            pieces.extend(tile(p + 1, 2 * q3 + 3, &[r3 + 1]));
            (pieces, q1, q3)
        }
        _ => unreachable!(),
    };
    let report = SplitReport {
        kind: ProblemKind::Is,
        vertex: v.to_string(),
        q,
        q_prime,
        degree: t.degree,
        new_vertex_count: pieces.len(),
        predicted_delta: q + q_prime + 2 * (t.degree as i64 - 1),
    };
    debug_assert_eq!(
        pieces.len() as i64,
        2 * q + 2 * q_prime + 4 * t.degree as i64 - 3
    );
    Ok((install_pieces(r, v, pieces, t.row)?, report))
}

/// The (q, q')-splitting for Dominating Set: shifts the minimum dominating
/// set size by exactly `q + q' + d - 1`.
pub fn split_vertex_ds(r: &GridRep, v: &str) -> Result<(GridRep, SplitReport)> {
    let t = split_target(r, v, 4)?;
    let (pieces, q, q_prime) = match t.degree {
        2 => {
            let l = t.right - t.left;
            let (q, rem) = ((l - 4) / 3, (l - 4) % 3);
            (
                tile(t.left, 3 * q + 2, &[1 + rem / 2, 1 + (rem + 1) / 2]),
                q,
                0,
            )
        }
        3 => {
            let p = t.middle.unwrap();
            let l1 = (p - 1) - t.left;
            let l3 = t.right - (p + 1);
            let (q1, r1) = ((l1 - 3) / 3, (l1 - 3) % 3);
            let (q3, r3) = ((l3 - 3) / 3, (l3 - 3) % 3);
            let mut pieces = tile(t.left, 3 * q1 + 1, &[1 + r1 / 2, 1 + (r1 + 1) / 2]);
            pieces.push((p - 1, p + 1));
            pieces.extend(tile(p + 1, 3 * q3 + 1, &[1 + r3 / 2, 1 + (r3 + 1) / 2]));
            (pieces, q1, q3)
        }
        _ => unreachable!(),
    };
    let report = SplitReport {
        kind: ProblemKind::Ds,
        vertex: v.to_string(),
        q,
        q_prime,
        degree: t.degree,
        new_vertex_count: pieces.len(),
        predicted_delta: q + q_prime + t.degree as i64 - 1,
    };
    debug_assert_eq!(
        pieces.len() as i64,
        3 * (q + q_prime + t.degree as i64) - 2
    );
    Ok((install_pieces(r, v, pieces, t.row)?, report))
}

/// Applies the splitting to every horizontal 2+-vertex of a normalized
/// representation; the result is a 0-bend CPG representation in which every
/// horizontal path has length at most 2. Isolated horizontal paths are
/// reduced to unit length so the output regime holds for them as well.
pub fn reduce_full(
    r: &GridRep,
    kind: ProblemKind,
) -> Result<(GridRep, i64, Vec<SplitReport>)> {
    require_b0_cpg(r)?;
    let mut rep = r.clone();
    // unify isolated horizontal paths first: no contacts, so shrinking to a
    // unit path changes nothing in the graph
    let ids: Vec<String> = rep.ids().map(|s| s.to_string()).collect();
    for id in &ids {
        let p = rep.path(id).unwrap();
        if p.is_horizontal_segment() && p.length() > 2 && contacts_of(&rep, id).is_empty() {
            let (lo, _) = sorted_ends(p);
            rep.replace_path(GridPath::new(
                id.clone(),
                vec![lo, GridPoint::new(lo.x + 1, lo.y)],
            )?);
        }
    }
    let mut reports = Vec::new();
    let mut total = 0i64;
    for id in &ids {
        let p = match rep.path(id) {
            Some(p) => p.clone(),
            None => continue,
        };
        if !p.is_horizontal_segment() {
            continue;
        }
        if contacts_of(&rep, id).len() < 2 {
            continue;
        }
        let (next, report) = match kind {
            ProblemKind::Is => split_vertex_is(&rep, id)?,
            ProblemKind::Ds => split_vertex_ds(&rep, id)?,
        };
        rep = next;
        total += report.predicted_delta;
        reports.push(report);
    }
    for p in rep.paths() {
        if p.is_horizontal_segment() && p.length() > 2 {
            return Err(Error::Internal(format!(
                "path {:?} still has horizontal length {}",
                p.id(),
                p.length()
            )));
        }
    }
    Ok((rep, total, reports))
}

/// A VPG representation of the requested split graph on at most four
/// columns: independent vertices are unit paths in column 0..1, clique
/// vertices share a common starting point and weave left to touch their
/// independent neighbors; every horizontal part has length at most 3.
pub fn gen_split_graph_rep(
    clique_ids: &[String],
    independent_ids: &[String],
    edges: &[(String, String)],
) -> Result<GridRep> {
    let clique: BTreeSet<&str> = clique_ids.iter().map(|s| s.as_str()).collect();
    let indep: BTreeSet<&str> = independent_ids.iter().map(|s| s.as_str()).collect();
    if clique.len() != clique_ids.len() || indep.len() != independent_ids.len() {
        return Err(Error::Precondition("duplicate vertex id".into()));
    }
    if let Some(id) = clique.intersection(&indep).next() {
        return Err(Error::Precondition(format!(
            "vertex {id:?} is in both classes"
        )));
    }
    let mut neighbors: BTreeMap<&str, BTreeSet<&str>> = BTreeMap::new();
    for (i, c) in edges {
        if !indep.contains(i.as_str()) || !clique.contains(c.as_str()) {
            return Err(Error::Precondition(format!(
                "edge ({i:?}, {c:?}) is not an independent-clique pair"
            )));
        }
        neighbors.entry(c.as_str()).or_default().insert(i.as_str());
    }
    let row_of: BTreeMap<&str, i64> = indep
        .iter()
        .enumerate()
        .map(|(j, &id)| (id, 2 * (j as i64 + 1)))
        .collect();
    let mut paths = Vec::new();
    for (&id, &y) in &row_of {
        paths.push(GridPath::new(
            id,
            vec![GridPoint::new(0, y), GridPoint::new(1, y)],
        )?);
    }
    for &c in &clique {
        let mut points = vec![GridPoint::new(2, 0)];
        let mut cursor_y = 0;
        if let Some(touched) = neighbors.get(c) {
            for &i in touched {
                let y = row_of[i];
                debug_assert!(y > cursor_y);
                points.push(GridPoint::new(2, y));
                points.push(GridPoint::new(1, y));
                points.push(GridPoint::new(1, y + 1));
                points.push(GridPoint::new(2, y + 1));
                cursor_y = y + 1;
            }
        }
        if points.len() == 1 {
            points.push(GridPoint::new(2, 1));
        }
        paths.push(GridPath::new(c, points)?);
    }
    GridRep::new(Ratio::from_integer(1), Flavor::Vpg, paths)
}

/// Parameters for the random VPG generator.
#[derive(Debug, Clone, Copy)]
pub struct RandomVpgParams {
    pub n: usize,
    pub max_bends: u32,
    pub max_horizontal: i64,
    pub max_edge_load: u32,
    pub target_columns: i64,
    pub seed: u64,
}

/// Rejection-sampling generator: deterministic per seed, output always
/// validates against the requested (bends, load, horizontal) constraints.
pub fn gen_random_vpg(params: &RandomVpgParams) -> Result<GridRep> {
    let RandomVpgParams {
        n,
        max_bends,
        max_horizontal,
        max_edge_load,
        target_columns,
        seed,
    } = *params;
    if max_horizontal < 1 || target_columns < 1 || max_edge_load < 1 {
        return Err(Error::InvalidParameter(
            "horizontal bound, load bound and column count must be positive".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rows = ((n as i64 * (max_horizontal + 2)) / target_columns).max(3);
    let mut load: HashMap<GridEdge, u32> = HashMap::new();
    let mut paths: Vec<GridPath> = Vec::with_capacity(n);
    let budget = 400 * n.max(1);
    let mut attempts = 0usize;
    while paths.len() < n {
        attempts += 1;
        if attempts > budget {
            return Err(Error::GenerationBudget(format!(
                "placed {} of {n} paths within {budget} attempts",
                paths.len()
            )));
        }
        let bends = rng.gen_range(0..=max_bends);
        let mut x = rng.gen_range(0..target_columns);
        let mut y = rng.gen_range(0..=rows);
        let mut points = vec![GridPoint::new(x, y)];
        let mut horizontal = rng.gen_bool(0.5);
        for _ in 0..=bends {
            if horizontal {
                let len = rng.gen_range(1..=max_horizontal);
                x += if rng.gen_bool(0.5) { len } else { -len };
            } else {
                let len = rng.gen_range(1..=3.min(rows));
                y += if rng.gen_bool(0.5) { len } else { -len };
            }
            points.push(GridPoint::new(x, y));
            horizontal = !horizontal;
        }
        let candidate = match GridPath::new(format!("p{:04}", paths.len() + 1), points) {
            Ok(p) => p,
            Err(_) => continue,
        };
        if candidate.is_self_intersecting() {
            continue;
        }
        let h = crate::rep::horizontal_part(&candidate);
        if h.length() > max_horizontal
            || h.x_min < 0
            || h.x_max >= target_columns
            || candidate.points().iter().any(|p| p.y < 0)
        {
            continue;
        }
        let edges = candidate.edge_set();
        if edges
            .iter()
            .any(|e| load.get(e).copied().unwrap_or(0) + 1 > max_edge_load)
        {
            continue;
        }
        for e in edges {
            *load.entry(e).or_insert(0) += 1;
        }
        paths.push(candidate);
    }
    let rep = GridRep::new(Ratio::from_integer(1), Flavor::Vpg, paths)?;
    let report = validate(
        &rep,
        &Constraints {
            max_bends: Some(max_bends),
            max_edge_load: Some(max_edge_load),
            max_horizontal: Some(max_horizontal),
            flavor: Some(Flavor::Vpg),
        },
    );
    if !report.is_clean() {
        return Err(Error::Internal(format!(
            "generator output failed validation: {:?}",
            report.violations
        )));
    }
    Ok(rep)
}

/// Random connected subcubic triangle-free 0-bend CPG instance: segments are
/// anchored at points of already-placed paths, contact points carry exactly
/// two paths, and candidates creating a triangle or a degree above three are
/// rejected. Deterministic per seed.
pub fn gen_b0cpg_subcubic(n: usize, seed: u64) -> Result<GridRep> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let side = (3.0 * (n.max(1) as f64).sqrt()).ceil() as i64 + 4;
    let mut paths: Vec<GridPath> = Vec::new();
    let mut used_edges: HashSet<GridEdge> = HashSet::new();
    // point -> (paths covering it, is it an endpoint of each)
    let mut covered: HashMap<GridPoint, Vec<(usize, bool)>> = HashMap::new();
    let mut degree: Vec<usize> = Vec::new();
    let mut adjacency: HashSet<(usize, usize)> = HashSet::new();
    let budget = 600 * n.max(1);
    let mut attempts = 0usize;
    while paths.len() < n {
        attempts += 1;
        if attempts > budget {
            return Err(Error::GenerationBudget(format!(
                "placed {} of {n} paths within {budget} attempts",
                paths.len()
            )));
        }
        let len = rng.gen_range(1..=4);
        let horizontal = rng.gen_bool(0.5);
        let start = if paths.is_empty() {
            GridPoint::new(rng.gen_range(0..side), rng.gen_range(0..side))
        } else {
            // anchor an endpoint on an existing path
            let host = rng.gen_range(0..paths.len());
            let trace = paths[host].trace();
            trace[rng.gen_range(0..trace.len())]
        };
        let dir = if rng.gen_bool(0.5) { 1 } else { -1 };
        let end = if horizontal {
            GridPoint::new(start.x + dir * len, start.y)
        } else {
            GridPoint::new(start.x, start.y + dir * len)
        };
        let candidate = match GridPath::new(format!("s{:04}", paths.len() + 1), vec![start, end]) {
            Ok(p) => p,
            Err(_) => continue,
        };
        if candidate
            .points()
            .iter()
            .any(|p| p.x < -side || p.x > 2 * side || p.y < -side || p.y > 2 * side)
        {
            continue;
        }
        // CPG: no shared grid-edge
        let edges = candidate.edge_set();
        if edges.iter().any(|e| used_edges.contains(e)) {
            continue;
        }
        // collect contacts: shared points, legality, no third path per point
        let own_ends = [start, end];
        let trace = candidate.trace();
        let mut new_neighbors: BTreeSet<usize> = BTreeSet::new();
        let mut legal = true;
        for q in &trace {
            if let Some(owners) = covered.get(q) {
                if owners.len() >= 2 {
                    legal = false; // a third path at a contact point
                    break;
                }
                for &(other, other_endpoint) in owners {
                    let own_endpoint = own_ends.contains(q);
                    if !own_endpoint && !other_endpoint {
                        legal = false; // interiors would intersect
                        break;
                    }
                    new_neighbors.insert(other);
                }
                if !legal {
                    break;
                }
            }
        }
        if !legal {
            continue;
        }
        if !paths.is_empty() && new_neighbors.is_empty() {
            continue; // keep the instance connected
        }
        if new_neighbors.len() > 3 {
            continue;
        }
        if new_neighbors.iter().any(|&u| degree[u] >= 3) {
            continue;
        }
        // triangle-free: no two new neighbors may be adjacent
        let pairs: Vec<usize> = new_neighbors.iter().copied().collect();
        if pairs.iter().enumerate().any(|(i, &u)| {
            pairs[i + 1..]
                .iter()
                .any(|&v| adjacency.contains(&(u.min(v), u.max(v))))
        }) {
            continue;
        }
        // accept
        let idx = paths.len();
        for e in edges {
            used_edges.insert(e);
        }
        for q in &trace {
            covered
                .entry(*q)
                .or_default()
                .push((idx, own_ends.contains(q)));
        }
        for &u in &new_neighbors {
            degree[u] += 1;
            adjacency.insert((u.min(idx), u.max(idx)));
        }
        degree.push(new_neighbors.len());
        paths.push(candidate);
    }
    GridRep::new(Ratio::from_integer(1), Flavor::Cpg, paths)
}
