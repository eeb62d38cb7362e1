//! Baker-shifting approximation schemes for Independent Set and Dominating
//! Set on representations where every grid-edge carries at most `t` paths and
//! every horizontal part has length at most `c`.
//!
//! Both schemes try every residue of a periodic column pattern, solve each
//! bounded-column piece exactly through the caterpillar decomposition, and
//! keep the best shift. Epsilon is an exact rational and all guarantee
//! arithmetic is exact.

use std::collections::{BTreeSet, HashSet};

use num_rational::Ratio;
use num_traits::One;
use rayon::prelude::*;

use crate::decomp::{build_decomposition, decomposition_mm_width};
use crate::error::{Error, Result};
use crate::graph::{clique_augment, connected_components, intersection_graph, BitSet, Graph};
use crate::rep::{grid_edge_load, horizontal_part, induced_subrepresentation, GridRep};
use crate::solve::{solve_ds_bd, solve_is_bd, ProblemKind, Solution, SolveConfig};

fn check_epsilon(epsilon: Ratio<i64>) -> Result<()> {
    if epsilon <= Ratio::from_integer(0) || epsilon >= Ratio::one() {
        return Err(Error::InvalidParameter(format!(
            "epsilon must lie strictly between 0 and 1, got {epsilon}"
        )));
    }
    Ok(())
}

/// Shift parameters for the Independent Set scheme: `k = ceil(1/epsilon)`,
/// deletion period `k * c`.
#[derive(Debug, Clone, Copy)]
pub struct ShiftConfigIs {
    pub epsilon: Ratio<i64>,
    pub c: i64,
    pub k: i64,
}

impl ShiftConfigIs {
    pub fn new(epsilon: Ratio<i64>, c: i64) -> Result<Self> {
        check_epsilon(epsilon)?;
        if c < 1 {
            return Err(Error::InvalidParameter(format!("c must be >= 1, got {c}")));
        }
        let k = (Ratio::one() / epsilon).ceil().to_integer();
        debug_assert!(k >= 2);
        Ok(ShiftConfigIs { epsilon, c, k })
    }

    pub fn period(&self) -> i64 {
        self.k * self.c
    }
}

/// Shift parameters for the Dominating Set scheme at one shift `s`:
/// `k = ceil(c * (2/epsilon - 1))` and `r = ceil((m - s - c) / (k + c))`.
#[derive(Debug, Clone, Copy)]
pub struct ShiftConfigDs {
    pub epsilon: Ratio<i64>,
    pub c: i64,
    pub k: i64,
    pub m: i64,
    pub s: i64,
    pub r: i64,
}

pub fn ds_window_length(epsilon: Ratio<i64>, c: i64) -> Result<i64> {
    check_epsilon(epsilon)?;
    if c < 1 {
        return Err(Error::InvalidParameter(format!("c must be >= 1, got {c}")));
    }
    let k = (Ratio::from_integer(c) * (Ratio::from_integer(2) / epsilon - Ratio::one()))
        .ceil()
        .to_integer();
    debug_assert!(k > c);
    Ok(k)
}

impl ShiftConfigDs {
    pub fn new(epsilon: Ratio<i64>, c: i64, m: i64, s: i64) -> Result<Self> {
        let k = ds_window_length(epsilon, c)?;
        if !(0..k + c).contains(&s) {
            return Err(Error::InvalidParameter(format!(
                "shift {s} outside 0..{}",
                k + c
            )));
        }
        if m <= k + 2 * c - 1 {
            return Err(Error::Precondition(format!(
                "m = {m} <= k + 2c - 1 = {}; solve exactly instead",
                k + 2 * c - 1
            )));
        }
        let r = (m - s - c + (k + c) - 1) / (k + c);
        debug_assert!(r >= 1);
        Ok(ShiftConfigDs {
            epsilon,
            c,
            k,
            m,
            s,
            r,
        })
    }
}

/// Per-column vertex families of a representation whose coordinates start at
/// x >= 0: `v_sets[j]` holds the vertices whose horizontal part meets column
/// `j`, `x_sets[i]` those whose path crosses from column `i` to `i + 1`.
/// Vertex indices follow sorted id order, matching `intersection_graph`.
#[derive(Debug, Clone)]
pub struct ColumnProfile {
    pub m: i64,
    pub x_sets: Vec<BitSet>,
    pub v_sets: Vec<BitSet>,
}

impl ColumnProfile {
    pub fn new(r: &GridRep) -> Result<ColumnProfile> {
        let n = r.len();
        let (lo, hi) = match r.x_range() {
            Some(range) => range,
            None => {
                return Ok(ColumnProfile {
                    m: 0,
                    x_sets: Vec::new(),
                    v_sets: Vec::new(),
                })
            }
        };
        if lo < 0 {
            return Err(Error::Precondition(format!(
                "coordinates must start at x >= 0, found x = {lo}"
            )));
        }
        let m = hi + 1;
        let mut x_sets = vec![BitSet::new(n); (m - 1).max(0) as usize];
        let mut v_sets = vec![BitSet::new(n); m as usize];
        for (v, p) in r.paths().enumerate() {
            let h = horizontal_part(p);
            for j in h.x_min..=h.x_max {
                v_sets[j as usize].insert(v);
            }
            for i in h.x_min..h.x_max {
                x_sets[i as usize].insert(v);
            }
        }
        Ok(ColumnProfile { m, x_sets, v_sets })
    }

    /// X_i with empty sentinels outside 0..=m-2.
    pub fn x(&self, i: i64, n: usize) -> BitSet {
        if i >= 0 && (i as usize) < self.x_sets.len() {
            self.x_sets[i as usize].clone()
        } else {
            BitSet::new(n)
        }
    }

    pub fn v(&self, j: i64, n: usize) -> BitSet {
        if j >= 0 && (j as usize) < self.v_sets.len() {
            self.v_sets[j as usize].clone()
        } else {
            BitSet::new(n)
        }
    }
}

/// The family X_i: vertices whose path contains a horizontal grid-edge from
/// column `i` to `i + 1`, for i in 0..=m-2.
pub fn compute_x_sets(r: &GridRep) -> Result<Vec<BitSet>> {
    Ok(ColumnProfile::new(r)?.x_sets)
}

/// The family V_j: vertices whose path meets column `j`, for j in 0..=m-1.
pub fn compute_v_sets(r: &GridRep) -> Result<Vec<BitSet>> {
    Ok(ColumnProfile::new(r)?.v_sets)
}

/// One window of the Dominating Set scheme.
#[derive(Debug, Clone)]
pub struct Window {
    pub index: i64,
    /// V(i, s)
    pub vertices: BitSet,
    /// E_L(i, s); empty for the first window
    pub ext_left: BitSet,
    /// E_R(i, s); empty for the last window
    pub ext_right: BitSet,
    /// I(i, s) = V(i, s) minus both exterior sides
    pub interior: BitSet,
    /// first or last window: only the I and LR variants exist
    pub boundary: bool,
}

impl Window {
    pub fn exterior(&self) -> BitSet {
        self.ext_left.union(&self.ext_right)
    }
}

fn union_range(profile: &ColumnProfile, n: usize, from: i64, to: i64) -> BitSet {
    let mut out = BitSet::new(n);
    let mut j = from;
    while j <= to {
        out.union_with(&profile.v(j, n));
        j += 1;
    }
    out
}

/// Builds the r + 1 windows for one shift.
pub fn build_windows(r: &GridRep, cfg: &ShiftConfigDs) -> Result<Vec<Window>> {
    let profile = ColumnProfile::new(r)?;
    if profile.m != cfg.m {
        return Err(Error::Precondition(format!(
            "configured m = {} but representation has {} columns",
            cfg.m, profile.m
        )));
    }
    Ok(windows_from_profile(&profile, r.len(), cfg))
}

fn windows_from_profile(profile: &ColumnProfile, n: usize, cfg: &ShiftConfigDs) -> Vec<Window> {
    let (k, c, s, r) = (cfg.k, cfg.c, cfg.s, cfg.r);
    let mut windows = Vec::with_capacity(r as usize + 1);
    for i in 0..=r {
        let (vertices, ext_left, ext_right) = if i == 0 {
            let v = union_range(profile, n, 0, s + c - 1);
            let er = profile.x(s + c - 1, n);
            (v, BitSet::new(n), er)
        } else if i < r {
            let start = (i - 1) * (k + c) + s;
            let v = union_range(profile, n, start, start + k + 2 * c - 1);
            let el = profile.x(start - 1, n);
            let er = profile.x(i * (k + c) + s + c - 1, n);
            (v, el, er)
        } else {
            let start = (r - 1) * (k + c) + s;
            let v = union_range(profile, n, start, cfg.m - 1);
            let el = profile.x(start - 1, n);
            (v, el, BitSet::new(n))
        };
        let mut interior = vertices.clone();
        interior.difference_with(&ext_left);
        interior.difference_with(&ext_right);
        debug_assert!(ext_left.iter().all(|v| vertices.contains(v)));
        debug_assert!(ext_right.iter().all(|v| vertices.contains(v)));
        windows.push(Window {
            index: i,
            vertices,
            ext_left,
            ext_right,
            interior,
            boundary: i == 0 || i == r,
        });
    }
    windows
}

/// Runtime checks of the window structure: every vertex is interior to some
/// window, windows at distance more than one are disjoint, and adjacent
/// windows overlap in exactly the c shared columns.
pub fn check_window_invariants(
    profile: &ColumnProfile,
    n: usize,
    cfg: &ShiftConfigDs,
    windows: &[Window],
) -> Result<()> {
    let mut covered = BitSet::new(n);
    for w in windows {
        covered.union_with(&w.interior);
    }
    if covered.len() != n {
        return Err(Error::Internal(
            "a vertex is interior to no window".into(),
        ));
    }
    for (a, wa) in windows.iter().enumerate() {
        for wb in windows.iter().skip(a + 2) {
            if wa.vertices.intersects(&wb.vertices) {
                return Err(Error::Internal(format!(
                    "windows {} and {} share a vertex",
                    wa.index, wb.index
                )));
            }
        }
    }
    for pair in windows.windows(2) {
        let i = pair[0].index;
        let overlap = pair[0].vertices.intersection(&pair[1].vertices);
        let expected = union_range(
            profile,
            n,
            i * (cfg.k + cfg.c) + cfg.s,
            i * (cfg.k + cfg.c) + cfg.s + cfg.c - 1,
        );
        if overlap != expected {
            return Err(Error::Internal(format!(
                "overlap of windows {i} and {} is not the shared column block",
                i + 1
            )));
        }
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VariantKind {
    Interior,
    Left,
    Right,
    Both,
}

impl std::fmt::Display for VariantKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            VariantKind::Interior => write!(f, "I"),
            VariantKind::Left => write!(f, "L"),
            VariantKind::Right => write!(f, "R"),
            VariantKind::Both => write!(f, "LR"),
        }
    }
}

/// The window variant graphs: induced subgraphs with exterior sides turned
/// into cliques. Boundary windows have only the I and LR variants.
pub fn window_variants(g: &Graph, w: &Window) -> Vec<(VariantKind, Graph)> {
    let clique_ids = |set: &BitSet| -> Vec<String> {
        set.iter().map(|v| g.id(v).to_string()).collect()
    };
    let induce = |verts: &BitSet, cliques: &[&BitSet]| -> Graph {
        let sub = g.induced(verts);
        let mut out = sub;
        for clique in cliques {
            let ids = clique_ids(clique);
            out = clique_augment(&out, &ids).expect("clique vertices are in the variant");
        }
        out
    };
    let mut variants = Vec::with_capacity(4);
    variants.push((VariantKind::Interior, induce(&w.interior, &[])));
    if !w.boundary {
        let left_set = w.interior.union(&w.ext_left);
        variants.push((VariantKind::Left, induce(&left_set, &[&w.ext_left])));
        let right_set = w.interior.union(&w.ext_right);
        variants.push((VariantKind::Right, induce(&right_set, &[&w.ext_right])));
    }
    variants.push((
        VariantKind::Both,
        induce(&w.vertices, &[&w.ext_left, &w.ext_right]),
    ));
    variants
}

/// Per-shift diagnostics: number of solved pieces, the largest mm-width of
/// any piece decomposition (plain graphs, before clique augmentation) and
/// the candidate value of that shift.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ShiftDiag {
    pub component: usize,
    pub shift: i64,
    pub parts: usize,
    pub max_width: usize,
    pub value: usize,
}

#[derive(Debug, Clone)]
pub struct PtasOutcome {
    pub solution: Solution,
    pub diagnostics: Vec<ShiftDiag>,
    /// Certified per-piece mm-width bound: 3t(kc + 1) for IS slices and
    /// 3t(k + 4c + 1) for DS window variants.
    pub width_budget: usize,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct PtasConfig {
    pub solve: SolveConfig,
    /// Declared bounds; measured from the input when absent.
    pub t: Option<u32>,
    pub c: Option<i64>,
}

impl PtasConfig {
    fn resolve(&self, r: &GridRep) -> Result<(u32, i64)> {
        let measured_t = grid_edge_load(r).max;
        let measured_c = r
            .paths()
            .map(|p| horizontal_part(p).length())
            .max()
            .unwrap_or(0);
        let t = match self.t {
            Some(t) if u64::from(measured_t) > u64::from(t) => {
                return Err(Error::Precondition(format!(
                    "declared edge load t = {t} but measured {measured_t}"
                )))
            }
            Some(t) => t,
            None => measured_t,
        };
        let c = match self.c {
            Some(c) if measured_c > c => {
                return Err(Error::Precondition(format!(
                    "declared horizontal bound c = {c} but measured {measured_c}"
                )))
            }
            Some(c) => c,
            None => measured_c.max(1),
        };
        Ok((t, c))
    }
}

/// Solves one piece exactly, reporting the mm-width of its decomposition.
fn solve_piece(
    rep: &GridRep,
    kind: ProblemKind,
    cfg: &SolveConfig,
) -> Result<(Solution, usize)> {
    let g = intersection_graph(rep);
    if g.is_empty() {
        return Ok((Solution::new(kind, Vec::new()), 0));
    }
    let bd = build_decomposition(rep)?;
    let width = decomposition_mm_width(&g, &bd)?;
    let solution = match kind {
        ProblemKind::Is => solve_is_bd(&g, &bd, cfg)?,
        ProblemKind::Ds => solve_ds_bd(&g, &bd, cfg)?,
    };
    Ok((solution, width))
}

fn component_reps(r: &GridRep) -> Result<Vec<GridRep>> {
    let g = intersection_graph(r);
    let comps = connected_components(&g);
    comps
        .iter()
        .map(|comp| {
            let ids: HashSet<String> = comp.iter().map(|&v| g.id(v).to_string()).collect();
            Ok(induced_subrepresentation(r, &ids)?.translated_to_origin())
        })
        .collect()
}

/// The Independent Set scheme: for every deletion residue d, remove the
/// vertices crossing the periodic column boundaries, solve each remaining
/// component exactly and keep the best union. Guarantees a (1 - epsilon)
/// fraction of the optimum. Runs per connected component.
pub fn baker_is(r: &GridRep, epsilon: Ratio<i64>, cfg: &PtasConfig) -> Result<PtasOutcome> {
    let (t, c) = cfg.resolve(r)?;
    let shift_cfg = ShiftConfigIs::new(epsilon, c)?;
    let period = shift_cfg.period();
    let width_budget = 3 * t as usize * (period as usize + 1);
    let mut chosen: BTreeSet<String> = BTreeSet::new();
    let mut diagnostics = Vec::new();
    for (ci, comp_rep) in component_reps(r)?.into_iter().enumerate() {
        let g = intersection_graph(&comp_rep);
        let n = g.len();
        let profile = ColumnProfile::new(&comp_rep)?;
        let per_shift: Vec<(ShiftDiag, BTreeSet<String>)> = (0..period)
            .into_par_iter()
            .map(|d| -> Result<(ShiftDiag, BTreeSet<String>)> {
                let mut deleted = BitSet::new(n);
                let mut i = d;
                while i <= profile.m - 2 {
                    deleted.union_with(&profile.x(i, n));
                    i += period;
                }
                let remaining = deleted.complement();
                let sub = g.induced(&remaining);
                let comps = connected_components(&sub);
                let mut union: BTreeSet<String> = BTreeSet::new();
                let mut max_width = 0usize;
                for comp in &comps {
                    let ids: HashSet<String> =
                        comp.iter().map(|&v| sub.id(v).to_string()).collect();
                    let slice = induced_subrepresentation(&comp_rep, &ids)?.translated_to_origin();
                    if slice.column_count() > period {
                        return Err(Error::Internal(format!(
                            "slice spans {} columns, more than the period {period}",
                            slice.column_count()
                        )));
                    }
                    let (solution, width) = solve_piece(&slice, ProblemKind::Is, &cfg.solve)?;
                    max_width = max_width.max(width);
                    union.extend(solution.vertices);
                }
                if max_width > width_budget {
                    return Err(Error::Internal(format!(
                        "slice width {max_width} exceeds the certified budget {width_budget}"
                    )));
                }
                Ok((
                    ShiftDiag {
                        component: ci,
                        shift: d,
                        parts: comps.len(),
                        max_width,
                        value: union.len(),
                    },
                    union,
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        let best = per_shift
            .iter()
            .enumerate()
            .max_by(|(i, (da, _)), (j, (db, _))| {
                da.value.cmp(&db.value).then(j.cmp(i)) // prefer the smaller shift on ties
            })
            .map(|(_, (_, set))| set.clone())
            .unwrap_or_default();
        chosen.extend(best);
        diagnostics.extend(per_shift.into_iter().map(|(d, _)| d));
    }
    let g_full = intersection_graph(r);
    let mut solution = Solution::new(ProblemKind::Is, chosen.into_iter().collect());
    if !crate::solve::verify_solution(&g_full, &mut solution) {
        return Err(Error::Internal(
            "assembled independent set is not independent".into(),
        ));
    }
    Ok(PtasOutcome {
        solution,
        diagnostics,
        width_budget,
    })
}

/// The Dominating Set scheme: for every shift, cover the columns by windows
/// with cliquified exterior sides, solve every window variant exactly, keep
/// the best shift union. Guarantees a (1 + epsilon) factor. Runs per
/// connected component; a component narrow enough for one window is solved
/// exactly.
pub fn baker_ds(r: &GridRep, epsilon: Ratio<i64>, cfg: &PtasConfig) -> Result<PtasOutcome> {
    let (t, c) = cfg.resolve(r)?;
    let k = ds_window_length(epsilon, c)?;
    let width_budget = 3 * t as usize * ((k + 4 * c) as usize + 1);
    let mut chosen: BTreeSet<String> = BTreeSet::new();
    let mut diagnostics = Vec::new();
    for (ci, comp_rep) in component_reps(r)?.into_iter().enumerate() {
        let g = intersection_graph(&comp_rep);
        let n = g.len();
        let profile = ColumnProfile::new(&comp_rep)?;
        if profile.m <= k + 2 * c - 1 {
            let (solution, width) = solve_piece(&comp_rep, ProblemKind::Ds, &cfg.solve)?;
            diagnostics.push(ShiftDiag {
                component: ci,
                shift: 0,
                parts: 1,
                max_width: width,
                value: solution.value,
            });
            chosen.extend(solution.vertices);
            continue;
        }
        let per_shift: Vec<(ShiftDiag, BTreeSet<String>)> = (0..k + c)
            .into_par_iter()
            .map(|s| -> Result<(ShiftDiag, BTreeSet<String>)> {
                let shift_cfg = ShiftConfigDs::new(epsilon, c, profile.m, s)?;
                let windows = windows_from_profile(&profile, n, &shift_cfg);
                check_window_invariants(&profile, n, &shift_cfg, &windows)?;
                let mut union: BTreeSet<String> = BTreeSet::new();
                let mut max_width = 0usize;
                for w in &windows {
                    let (sol, width) = solve_window(&comp_rep, &g, w, &cfg.solve)?;
                    max_width = max_width.max(width);
                    union.extend(sol.vertices);
                }
                if max_width > width_budget {
                    return Err(Error::Internal(format!(
                        "window width {max_width} exceeds the certified budget {width_budget}"
                    )));
                }
                Ok((
                    ShiftDiag {
                        component: ci,
                        shift: s,
                        parts: windows.len(),
                        max_width,
                        value: union.len(),
                    },
                    union,
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        let best = per_shift
            .iter()
            .enumerate()
            .min_by(|(i, (da, _)), (j, (db, _))| da.value.cmp(&db.value).then(i.cmp(j)))
            .map(|(_, (_, set))| set.clone())
            .unwrap_or_default();
        chosen.extend(best);
        diagnostics.extend(per_shift.into_iter().map(|(d, _)| d));
    }
    let g_full = intersection_graph(r);
    let mut solution = Solution::new(ProblemKind::Ds, chosen.into_iter().collect());
    if !crate::solve::verify_solution(&g_full, &mut solution) {
        return Err(Error::Internal(
            "assembled set does not dominate the graph".into(),
        ));
    }
    Ok(PtasOutcome {
        solution,
        diagnostics,
        width_budget,
    })
}

/// Solves all variants of one window exactly and returns the smallest, with
/// the largest plain-graph decomposition width seen.
fn solve_window(
    comp_rep: &GridRep,
    g: &Graph,
    w: &Window,
    solve_cfg: &SolveConfig,
) -> Result<(Solution, usize)> {
    let mut best: Option<Solution> = None;
    let mut max_width = 0usize;
    for (_, variant) in window_variants(g, w) {
        let ids: HashSet<String> = variant.ids().iter().cloned().collect();
        if ids.is_empty() {
            let empty = Solution::new(ProblemKind::Ds, Vec::new());
            if best.is_none() {
                best = Some(empty);
            }
            continue;
        }
        let rep_v = induced_subrepresentation(comp_rep, &ids)?.translated_to_origin();
        let bd = build_decomposition(&rep_v)?;
        let plain = intersection_graph(&rep_v);
        max_width = max_width.max(decomposition_mm_width(&plain, &bd)?);
        let sol = solve_ds_bd(&variant, &bd, solve_cfg)?;
        let better = match &best {
            None => true,
            Some(b) => sol.value < b.value,
        };
        if better {
            best = Some(sol);
        }
    }
    Ok((best.expect("at least the interior variant exists"), max_width))
}
