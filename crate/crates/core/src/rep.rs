//! Grid-path representations: the data model, intersection machinery and
//! validation.
//!
//! A representation is a pair of a grid (kept implicit: only the grid-step is
//! tracked) and a set of axis-parallel grid paths, one per vertex. Coordinates
//! are exact integers in units of the current grid-step; `(x, y)` is
//! `(column, row)` with x growing rightward and y upward. Two paths that share
//! a grid-point are adjacent in the intersection graph.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use num_rational::Ratio;

use crate::error::{Error, Result};

/// A grid-point in integer units of the current grid-step.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GridPoint {
    pub x: i64,
    pub y: i64,
}

impl GridPoint {
    pub fn new(x: i64, y: i64) -> Self {
        GridPoint { x, y }
    }
}

impl fmt::Display for GridPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

/// An undirected unit grid-edge, stored with its smaller endpoint first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GridEdge(pub GridPoint, pub GridPoint);

impl GridEdge {
    pub fn new(a: GridPoint, b: GridPoint) -> Self {
        if a <= b {
            GridEdge(a, b)
        } else {
            GridEdge(b, a)
        }
    }
}

/// One vertex's path, stored as the sequence of endpoints and bend-points in
/// traversal order. Every consecutive pair spans an axis-parallel segment and
/// every interior point is a genuine 90-degree bend.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridPath {
    id: String,
    points: Vec<GridPoint>,
}

impl GridPath {
    pub fn new(id: impl Into<String>, points: Vec<GridPoint>) -> Result<Self> {
        let id = id.into();
        if points.len() < 2 {
            return Err(Error::SinglePointPath(id));
        }
        for w in points.windows(2) {
            let (a, b) = (w[0], w[1]);
            if (a.x == b.x) == (a.y == b.y) {
                // Either both coordinates change (diagonal) or neither (repeat).
                return Err(Error::NotAxisParallel {
                    id,
                    x0: a.x,
                    y0: a.y,
                    x1: b.x,
                    y1: b.y,
                });
            }
        }
        for w in points.windows(3) {
            let horiz0 = w[0].y == w[1].y;
            let horiz1 = w[1].y == w[2].y;
            if horiz0 == horiz1 {
                return Err(Error::NotABend {
                    id,
                    x: w[1].x,
                    y: w[1].y,
                });
            }
        }
        Ok(GridPath { id, points })
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    /// The bend/endpoint sequence in traversal order.
    pub fn points(&self) -> &[GridPoint] {
        &self.points
    }

    pub fn endpoints(&self) -> (GridPoint, GridPoint) {
        (self.points[0], *self.points.last().unwrap())
    }

    pub fn bend_count(&self) -> usize {
        self.points.len() - 2
    }

    /// Number of grid-edges used, counted along the traversal.
    pub fn length(&self) -> i64 {
        self.points
            .windows(2)
            .map(|w| (w[1].x - w[0].x).abs() + (w[1].y - w[0].y).abs())
            .sum()
    }

    pub fn is_horizontal_segment(&self) -> bool {
        self.points.len() == 2 && self.points[0].y == self.points[1].y
    }

    pub fn is_vertical_segment(&self) -> bool {
        self.points.len() == 2 && self.points[0].x == self.points[1].x
    }

    /// Every grid-point on the path in traversal order, endpoints included;
    /// an interior point is listed once per visit.
    pub fn trace(&self) -> Vec<GridPoint> {
        let mut out = Vec::with_capacity(self.length() as usize + 1);
        out.push(self.points[0]);
        for w in self.points.windows(2) {
            let (a, b) = (w[0], w[1]);
            let dx = (b.x - a.x).signum();
            let dy = (b.y - a.y).signum();
            let steps = (b.x - a.x).abs() + (b.y - a.y).abs();
            for s in 1..=steps {
                out.push(GridPoint::new(a.x + dx * s, a.y + dy * s));
            }
        }
        out
    }

    /// Unit grid-edges used by the path, deduplicated.
    pub fn edge_set(&self) -> HashSet<GridEdge> {
        let trace = self.trace();
        trace
            .windows(2)
            .map(|w| GridEdge::new(w[0], w[1]))
            .collect()
    }

    /// True if some grid-point is visited more than once.
    pub fn is_self_intersecting(&self) -> bool {
        let trace = self.trace();
        let mut seen = HashSet::with_capacity(trace.len());
        trace.iter().any(|p| !seen.insert(*p))
    }

    pub fn translate(&self, dx: i64, dy: i64) -> GridPath {
        GridPath {
            id: self.id.clone(),
            points: self
                .points
                .iter()
                .map(|p| GridPoint::new(p.x + dx, p.y + dy))
                .collect(),
        }
    }
}

/// Projection of a path onto the horizontal axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HorizontalPart {
    pub x_min: i64,
    pub x_max: i64,
}

impl HorizontalPart {
    pub fn length(&self) -> i64 {
        self.x_max - self.x_min
    }
}

/// Every grid-point on `p` in traversal order.
pub fn path_points(p: &GridPath) -> Vec<GridPoint> {
    p.trace()
}

/// The horizontal part `[x_min, x_max]` of a path.
pub fn horizontal_part(p: &GridPath) -> HorizontalPart {
    let x_min = p.points().iter().map(|q| q.x).min().unwrap();
    let x_max = p.points().iter().map(|q| q.x).max().unwrap();
    HorizontalPart { x_min, x_max }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Flavor {
    Vpg,
    Cpg,
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Flavor::Vpg => write!(f, "VPG"),
            Flavor::Cpg => write!(f, "CPG"),
        }
    }
}

/// A grid-step plus a set of grid paths keyed by id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridRep {
    grid_step: Ratio<i64>,
    flavor: Flavor,
    paths: BTreeMap<String, GridPath>,
}

impl GridRep {
    pub fn new(grid_step: Ratio<i64>, flavor: Flavor, paths: Vec<GridPath>) -> Result<Self> {
        if grid_step <= Ratio::from_integer(0) {
            return Err(Error::InvalidParameter(format!(
                "grid_step must be positive, got {grid_step}"
            )));
        }
        let mut map = BTreeMap::new();
        for p in paths {
            let id = p.id().to_string();
            if map.insert(id.clone(), p).is_some() {
                return Err(Error::DuplicateId(id));
            }
        }
        let rep = GridRep {
            grid_step,
            flavor,
            paths: map,
        };
        if flavor == Flavor::Cpg {
            rep.check_cpg()?;
        }
        Ok(rep)
    }

    fn check_cpg(&self) -> Result<()> {
        let mut owner: HashMap<GridEdge, &str> = HashMap::new();
        for p in self.paths.values() {
            for e in p.edge_set() {
                if let Some(prev) = owner.insert(e, p.id()) {
                    if prev != p.id() {
                        return Err(Error::SharedGridEdge {
                            x0: e.0.x,
                            y0: e.0.y,
                            x1: e.1.x,
                            y1: e.1.y,
                            a: prev.to_string(),
                            b: p.id().to_string(),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn grid_step(&self) -> Ratio<i64> {
        self.grid_step
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    /// Paths in id order.
    pub fn paths(&self) -> impl Iterator<Item = &GridPath> {
        self.paths.values()
    }

    pub fn ids(&self) -> impl Iterator<Item = &str> {
        self.paths.keys().map(|s| s.as_str())
    }

    pub fn path(&self, id: &str) -> Option<&GridPath> {
        self.paths.get(id)
    }

    /// Bounding x-range over all path points, if any path exists.
    pub fn x_range(&self) -> Option<(i64, i64)> {
        let mut range: Option<(i64, i64)> = None;
        for p in self.paths.values() {
            let h = horizontal_part(p);
            range = Some(match range {
                None => (h.x_min, h.x_max),
                Some((lo, hi)) => (lo.min(h.x_min), hi.max(h.x_max)),
            });
        }
        range
    }

    /// Number of used columns: `(max x) - (min x) + 1` over all path points.
    pub fn column_count(&self) -> i64 {
        match self.x_range() {
            Some((lo, hi)) => hi - lo + 1,
            None => 0,
        }
    }

    /// Representation translated so that the minimum x-coordinate is zero.
    pub fn translated_to_origin(&self) -> GridRep {
        let dx = match self.x_range() {
            Some((lo, _)) => -lo,
            None => 0,
        };
        self.translate(dx, 0)
    }

    pub fn translate(&self, dx: i64, dy: i64) -> GridRep {
        GridRep {
            grid_step: self.grid_step,
            flavor: self.flavor,
            paths: self
                .paths
                .iter()
                .map(|(id, p)| (id.clone(), p.translate(dx, dy)))
                .collect(),
        }
    }

    /// Replaces a path, keeping its id. Used by normalization passes that
    /// rewrite geometry without touching the intersection structure.
    pub(crate) fn replace_path(&mut self, path: GridPath) {
        self.paths.insert(path.id().to_string(), path);
    }

    pub(crate) fn set_grid_step(&mut self, step: Ratio<i64>) {
        self.grid_step = step;
    }
}

/// Per ordered pair of paths, the first and last intersection; per path, its
/// first and last intersection point in traversal order.
#[derive(Debug, Clone, Default)]
pub struct IntersectionIndex {
    /// (P, P') -> (f_{P,P'}, l_{P,P'})
    pairs: BTreeMap<(String, String), (GridPoint, GridPoint)>,
    /// P -> (f_P, l_P)
    per_path: BTreeMap<String, (GridPoint, GridPoint)>,
}

impl IntersectionIndex {
    pub fn pair(&self, p: &str, q: &str) -> Option<(GridPoint, GridPoint)> {
        self.pairs.get(&(p.to_string(), q.to_string())).copied()
    }

    /// (f_P, l_P) if P intersects at least one other path.
    pub fn path_extremes(&self, p: &str) -> Option<(GridPoint, GridPoint)> {
        self.per_path.get(p).copied()
    }

    pub fn intersects(&self, p: &str, q: &str) -> bool {
        self.pair(p, q).is_some()
    }

    pub fn pairs(&self) -> impl Iterator<Item = (&(String, String), &(GridPoint, GridPoint))> {
        self.pairs.iter()
    }
}

/// Builds the intersection index by hashing expanded traces per grid-point.
pub fn build_intersection_index(r: &GridRep) -> IntersectionIndex {
    // grid-point -> ids of paths covering it (id-deduplicated)
    let mut at_point: HashMap<GridPoint, Vec<usize>> = HashMap::new();
    let ids: Vec<&str> = r.ids().collect();
    let traces: Vec<Vec<GridPoint>> = r.paths().map(|p| p.trace()).collect();
    for (i, trace) in traces.iter().enumerate() {
        let mut seen = HashSet::new();
        for p in trace {
            if seen.insert(*p) {
                at_point.entry(*p).or_default().push(i);
            }
        }
    }
    let mut index = IntersectionIndex::default();
    for (i, trace) in traces.iter().enumerate() {
        // trace position -> paths sharing that point
        let mut first: BTreeMap<usize, GridPoint> = BTreeMap::new(); // other -> f_{P,P'}
        let mut last: BTreeMap<usize, GridPoint> = BTreeMap::new();
        let mut first_pos: Option<usize> = None;
        let mut last_pos: Option<usize> = None;
        for (pos, pt) in trace.iter().enumerate() {
            let others = &at_point[pt];
            for &j in others {
                if j == i {
                    continue;
                }
                first.entry(j).or_insert(*pt);
                last.insert(j, *pt);
                if first_pos.is_none() {
                    first_pos = Some(pos);
                }
                last_pos = Some(pos);
            }
        }
        for (&j, &f) in &first {
            let l = last[&j];
            index
                .pairs
                .insert((ids[i].to_string(), ids[j].to_string()), (f, l));
        }
        if let (Some(fp), Some(lp)) = (first_pos, last_pos) {
            index
                .per_path
                .insert(ids[i].to_string(), (trace[fp], trace[lp]));
        }
    }
    index
}

/// Grid refinement: halves the grid-step and doubles every coordinate. The
/// intersection graph is unchanged.
pub fn refine_grid(r: &GridRep) -> GridRep {
    let mut out = r.clone();
    out.set_grid_step(r.grid_step() / 2);
    let doubled: Vec<GridPath> = r
        .paths()
        .map(|p| {
            GridPath::new(
                p.id(),
                p.points()
                    .iter()
                    .map(|q| GridPoint::new(q.x * 2, q.y * 2))
                    .collect(),
            )
            .expect("doubling preserves path validity")
        })
        .collect();
    for p in doubled {
        out.replace_path(p);
    }
    out
}

/// Restriction of `r` to the paths in `keep`; each kept path is unchanged.
pub fn induced_subrepresentation(r: &GridRep, keep: &HashSet<String>) -> Result<GridRep> {
    for id in keep {
        if r.path(id).is_none() {
            return Err(Error::UnknownVertex(id.clone()));
        }
    }
    let paths: Vec<GridPath> = r
        .paths()
        .filter(|p| keep.contains(p.id()))
        .cloned()
        .collect();
    GridRep::new(r.grid_step(), r.flavor(), paths)
}

/// Per grid-edge, how many paths cover it, plus the maximum load `t`.
#[derive(Debug, Clone, Default)]
pub struct EdgeLoad {
    pub per_edge: BTreeMap<GridEdge, u32>,
    pub max: u32,
}

pub fn grid_edge_load(r: &GridRep) -> EdgeLoad {
    let mut per_edge: BTreeMap<GridEdge, u32> = BTreeMap::new();
    for p in r.paths() {
        for e in p.edge_set() {
            *per_edge.entry(e).or_insert(0) += 1;
        }
    }
    let max = per_edge.values().copied().max().unwrap_or(0);
    EdgeLoad { per_edge, max }
}

/// Constraint set for `validate`: bends per path, per-edge load, horizontal
/// part length and the expected flavor. `None` fields are not checked.
#[derive(Debug, Clone, Copy, Default)]
pub struct Constraints {
    pub max_bends: Option<u32>,
    pub max_edge_load: Option<u32>,
    pub max_horizontal: Option<i64>,
    pub flavor: Option<Flavor>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    Bends { id: String, bends: usize, max: u32 },
    EdgeLoad { edge: GridEdge, load: u32, max: u32 },
    Horizontal { id: String, length: i64, max: i64 },
    FlavorMismatch { expected: Flavor, actual: Flavor },
    CpgSharedEdge { edge: GridEdge, a: String, b: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Bends { id, bends, max } => {
                write!(f, "path {id:?} has {bends} bends > {max}")
            }
            Violation::EdgeLoad { edge, load, max } => {
                write!(f, "grid-edge [{},{}] has load {load} > {max}", edge.0, edge.1)
            }
            Violation::Horizontal { id, length, max } => {
                write!(f, "path {id:?} horizontal part {length} > {max}")
            }
            Violation::FlavorMismatch { expected, actual } => {
                write!(f, "flavor {actual} does not match expected {expected}")
            }
            Violation::CpgSharedEdge { edge, a, b } => write!(
                f,
                "shared grid-edge [{},{}] under CPG flavor: {a:?} and {b:?}",
                edge.0, edge.1
            ),
        }
    }
}

/// Violations fail validation; notes are informational only.
#[derive(Debug, Clone, Default)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
    pub notes: Vec<String>,
}

impl ValidationReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn validate(r: &GridRep, constraints: &Constraints) -> ValidationReport {
    let mut report = ValidationReport::default();
    if let Some(expected) = constraints.flavor {
        if expected != r.flavor() {
            report.violations.push(Violation::FlavorMismatch {
                expected,
                actual: r.flavor(),
            });
        }
    }
    for p in r.paths() {
        if let Some(max) = constraints.max_bends {
            if p.bend_count() > max as usize {
                report.violations.push(Violation::Bends {
                    id: p.id().to_string(),
                    bends: p.bend_count(),
                    max,
                });
            }
        }
        if let Some(max) = constraints.max_horizontal {
            let h = horizontal_part(p);
            if h.length() > max {
                report.violations.push(Violation::Horizontal {
                    id: p.id().to_string(),
                    length: h.length(),
                    max,
                });
            }
        }
        if p.is_self_intersecting() {
            report
                .notes
                .push(format!("path {:?} is self-intersecting", p.id()));
        }
    }
    let load = grid_edge_load(r);
    if let Some(max) = constraints.max_edge_load {
        for (edge, &count) in &load.per_edge {
            if count > max {
                report.violations.push(Violation::EdgeLoad {
                    edge: *edge,
                    load: count,
                    max,
                });
            }
        }
    }
    if r.flavor() == Flavor::Cpg {
        // Re-check the CPG invariant on in-memory values: which two paths
        // share an edge is reported for the first offending pair per edge.
        let mut owner: BTreeMap<GridEdge, String> = BTreeMap::new();
        for p in r.paths() {
            let mut edges: Vec<GridEdge> = p.edge_set().into_iter().collect();
            edges.sort();
            for e in edges {
                if let Some(prev) = owner.get(&e) {
                    if prev != p.id() {
                        report.violations.push(Violation::CpgSharedEdge {
                            edge: e,
                            a: prev.clone(),
                            b: p.id().to_string(),
                        });
                    }
                } else {
                    owner.insert(e, p.id().to_string());
                }
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(id: &str, pts: &[(i64, i64)]) -> GridPath {
        GridPath::new(
            id,
            pts.iter().map(|&(x, y)| GridPoint::new(x, y)).collect(),
        )
        .unwrap()
    }

    fn rep(paths: Vec<GridPath>) -> GridRep {
        GridRep::new(Ratio::from_integer(1), Flavor::Vpg, paths).unwrap()
    }

    #[test]
    fn rejects_degenerate_paths() {
        assert!(matches!(
            GridPath::new("a", vec![GridPoint::new(0, 0)]),
            Err(Error::SinglePointPath(_))
        ));
        assert!(matches!(
            GridPath::new("a", vec![GridPoint::new(0, 0), GridPoint::new(1, 1)]),
            Err(Error::NotAxisParallel { .. })
        ));
        // straight continuation: interior point is not a bend
        assert!(matches!(
            GridPath::new(
                "a",
                vec![
                    GridPoint::new(0, 0),
                    GridPoint::new(1, 0),
                    GridPoint::new(2, 0)
                ]
            ),
            Err(Error::NotABend { .. })
        ));
        // reversal is not a 90-degree bend either
        assert!(matches!(
            GridPath::new(
                "a",
                vec![
                    GridPoint::new(0, 0),
                    GridPoint::new(2, 0),
                    GridPoint::new(1, 0)
                ]
            ),
            Err(Error::NotABend { .. })
        ));
    }

    #[test]
    fn trace_straight_segment() {
        let p = path("a", &[(0, 0), (2, 0)]);
        assert_eq!(
            path_points(&p),
            vec![
                GridPoint::new(0, 0),
                GridPoint::new(1, 0),
                GridPoint::new(2, 0)
            ]
        );
    }

    #[test]
    fn trace_one_bend() {
        let p = path("a", &[(0, 0), (1, 0), (1, 2)]);
        assert_eq!(
            path_points(&p),
            vec![
                GridPoint::new(0, 0),
                GridPoint::new(1, 0),
                GridPoint::new(1, 1),
                GridPoint::new(1, 2)
            ]
        );
    }

    #[test]
    fn trace_three_bends_length_seven() {
        let p = path("a", &[(0, 0), (3, 0), (3, 2), (2, 2), (2, 1)]);
        assert_eq!(p.bend_count(), 3);
        assert_eq!(p.length(), 7);
        assert!(!p.is_self_intersecting());
        assert_eq!(path_points(&p).len(), 8);
    }

    #[test]
    fn horizontal_part_examples() {
        let v = path("a", &[(4, 0), (4, 9)]);
        let h = horizontal_part(&v);
        assert_eq!((h.x_min, h.x_max, h.length()), (4, 4, 0));

        let l = path("b", &[(0, 0), (3, 0), (3, 5)]);
        let h = horizontal_part(&l);
        assert_eq!((h.x_min, h.x_max), (0, 3));

        let s = path("c", &[(0, 0), (2, 0), (2, 1), (1, 1), (1, 3)]);
        let h = horizontal_part(&s);
        assert_eq!((h.x_min, h.x_max), (0, 2));
    }

    #[test]
    fn index_single_crossing() {
        let r = rep(vec![
            path("a", &[(0, 1), (2, 1)]),
            path("b", &[(1, 0), (1, 2)]),
        ]);
        let idx = build_intersection_index(&r);
        let c = GridPoint::new(1, 1);
        assert_eq!(idx.pair("a", "b"), Some((c, c)));
        assert_eq!(idx.pair("b", "a"), Some((c, c)));
        assert_eq!(idx.path_extremes("a"), Some((c, c)));
    }

    #[test]
    fn index_disjoint() {
        let r = rep(vec![
            path("a", &[(0, 0), (1, 0)]),
            path("b", &[(0, 5), (1, 5)]),
        ]);
        let idx = build_intersection_index(&r);
        assert_eq!(idx.pair("a", "b"), None);
        assert_eq!(idx.path_extremes("a"), None);
    }

    #[test]
    fn index_overlapping_horizontals() {
        let r = rep(vec![
            path("a", &[(0, 0), (5, 0)]),
            path("b", &[(2, 0), (7, 0)]),
        ]);
        let idx = build_intersection_index(&r);
        assert_eq!(
            idx.pair("a", "b"),
            Some((GridPoint::new(2, 0), GridPoint::new(5, 0)))
        );
        // From b's traversal start (2,0), the first shared point is (2,0).
        assert_eq!(
            idx.pair("b", "a"),
            Some((GridPoint::new(2, 0), GridPoint::new(5, 0)))
        );
    }

    #[test]
    fn refine_doubles_coordinates() {
        let r = rep(vec![path("a", &[(0, 0), (3, 0)])]);
        let r2 = refine_grid(&r);
        assert_eq!(r2.grid_step(), Ratio::new(1, 2));
        assert_eq!(
            r2.path("a").unwrap().points(),
            &[GridPoint::new(0, 0), GridPoint::new(6, 0)]
        );
    }

    #[test]
    fn three_refinements_multiply_length_by_eight() {
        let r = rep(vec![path("a", &[(0, 0), (1, 0)])]);
        let r3 = refine_grid(&refine_grid(&refine_grid(&r)));
        assert_eq!(r3.path("a").unwrap().length(), 8);
        assert_eq!(r3.grid_step(), Ratio::new(1, 8));
    }

    #[test]
    fn induced_identity_and_empty() {
        let r = rep(vec![
            path("a", &[(0, 0), (1, 0)]),
            path("b", &[(1, 0), (1, 2)]),
        ]);
        let all: HashSet<String> = r.ids().map(|s| s.to_string()).collect();
        assert_eq!(induced_subrepresentation(&r, &all).unwrap(), r);
        let none = HashSet::new();
        assert!(induced_subrepresentation(&r, &none).unwrap().is_empty());
        let unknown: HashSet<String> = ["zz".to_string()].into();
        assert!(matches!(
            induced_subrepresentation(&r, &unknown),
            Err(Error::UnknownVertex(_))
        ));
    }

    #[test]
    fn edge_load_counts() {
        let r = rep(vec![
            path("a", &[(0, 0), (2, 0)]),
            path("b", &[(0, 0), (2, 0)]),
        ]);
        let load = grid_edge_load(&r);
        assert_eq!(load.max, 2);
        assert!(load.per_edge.values().all(|&c| c == 2));
        assert_eq!(load.per_edge.len(), 2);
    }

    #[test]
    fn cpg_rejects_shared_edge() {
        let a = path("a", &[(0, 0), (1, 0)]);
        let b = path("b", &[(0, 0), (1, 0)]);
        assert!(matches!(
            GridRep::new(Ratio::from_integer(1), Flavor::Cpg, vec![a, b]),
            Err(Error::SharedGridEdge { .. })
        ));
    }

    #[test]
    fn validate_examples() {
        let clean = rep(vec![path("a", &[(0, 0), (3, 0)])]);
        let report = validate(
            &clean,
            &Constraints {
                max_bends: Some(0),
                max_edge_load: Some(1),
                max_horizontal: Some(3),
                flavor: None,
            },
        );
        assert!(report.is_clean());

        let l = rep(vec![path("a", &[(0, 0), (3, 0), (3, 5)])]);
        let report = validate(
            &l,
            &Constraints {
                max_bends: Some(0),
                ..Constraints::default()
            },
        );
        assert_eq!(report.violations.len(), 1);
        assert!(matches!(report.violations[0], Violation::Bends { .. }));

        let long = rep(vec![path("a", &[(0, 0), (4, 0)])]);
        let report = validate(
            &long,
            &Constraints {
                max_horizontal: Some(3),
                ..Constraints::default()
            },
        );
        assert!(matches!(
            report.violations[0],
            Violation::Horizontal { length: 4, max: 3, .. }
        ));
    }

    #[test]
    fn self_intersection_is_a_note_not_a_violation() {
        // spiral crossing itself at (1,0)
        let p = path("a", &[(0, 0), (2, 0), (2, 2), (1, 2), (1, -1)]);
        assert!(p.is_self_intersecting());
        let r = rep(vec![p]);
        let report = validate(&r, &Constraints::default());
        assert!(report.is_clean());
        assert_eq!(report.notes.len(), 1);
    }
}
