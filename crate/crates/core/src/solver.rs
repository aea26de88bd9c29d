//! Exact computation of Bob's optimal share for small instances.
//!
//! Every rectangle of an optimal packing can be grown until its right edge
//! reaches `x = 1`, the left edge of another rectangle, or the x-coordinate of
//! a blocking point; likewise for the top edge. Right and top edges can
//! therefore be restricted to the point coordinates plus 1 (see
//! [`candidate_grid`]), which makes the search finite.
//!
//! [`exact_bob`] discretizes the square into grid cells, represents each
//! candidate rectangle as a bitmask of cells and runs a depth-first
//! branch-and-bound over the points. [`brute_force_bob`] is an independent
//! check that enumerates rectangles directly in rational arithmetic.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::ops::{Add, Sub};
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::model::{interiors_disjoint, AnchoredRect, Instance, Packing, Point};
use crate::scalar::Scalar;

/// Largest instance the bitmask representation can hold (at most 64 cells).
pub const HARD_MAX_POINTS: usize = 8;
pub const DEFAULT_MAX_POINTS: usize = 7;
pub const DEFAULT_NODE_BUDGET: u64 = 50_000_000;
pub const BRUTE_FORCE_MAX_POINTS: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SolverConfig {
    pub max_points: usize,
    pub node_budget: u64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            max_points: DEFAULT_MAX_POINTS,
            node_budget: DEFAULT_NODE_BUDGET,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SolveKind {
    Exact,
    Heuristic,
}

#[derive(Clone, Debug)]
pub struct SolveResult {
    pub value: Scalar,
    pub packing: Packing,
    pub nodes_explored: u64,
    pub elapsed: Duration,
    /// False when the node budget ran out (value is then only a lower bound)
    /// and for heuristic results.
    pub optimal: bool,
    pub kind: SolveKind,
    /// Free-form label such as the greedy policy name.
    pub label: String,
}

impl SolveResult {
    /// Deterministic text report; elapsed time is deliberately left out.
    pub fn report(&self) -> String {
        let mut out = String::new();
        writeln!(out, "value {}", self.value.with_decimal()).unwrap();
        let kind = match self.kind {
            SolveKind::Exact => "exact",
            SolveKind::Heuristic => "heuristic",
        };
        writeln!(out, "method {kind}").unwrap();
        if !self.label.is_empty() {
            writeln!(out, "policy {}", self.label).unwrap();
        }
        writeln!(out, "optimal {}", self.optimal).unwrap();
        writeln!(out, "nodes {}", self.nodes_explored).unwrap();
        writeln!(out, "packing {}", self.packing.len()).unwrap();
        out.push_str(&self.packing.to_lines());
        out
    }
}

/// Sorted, deduplicated candidate edge coordinates: all point coordinates plus 1.
pub fn candidate_grid(inst: &Instance) -> (Vec<Scalar>, Vec<Scalar>) {
    let mut xs: BTreeSet<Scalar> = inst.points().iter().map(|p| p.x.clone()).collect();
    let mut ys: BTreeSet<Scalar> = inst.points().iter().map(|p| p.y.clone()).collect();
    xs.insert(Scalar::one());
    ys.insert(Scalar::one());
    (xs.into_iter().collect(), ys.into_iter().collect())
}

/// Every rectangle anchored at `anchor` with right edge in `xs`, top edge in
/// `ys`, positive area, and no instance point in its interior.
pub(crate) fn candidate_rects(
    inst: &Instance,
    xs: &[Scalar],
    ys: &[Scalar],
    anchor: &Point,
) -> Vec<AnchoredRect> {
    let mut out = Vec::new();
    for right in xs.iter().filter(|x| **x > anchor.x) {
        for top in ys.iter().filter(|y| **y > anchor.y) {
            let r = AnchoredRect {
                anchor: anchor.clone(),
                right: right.clone(),
                top: top.clone(),
            };
            if !inst.points().iter().any(|p| r.contains_in_interior(p)) {
                out.push(r);
            }
        }
    }
    out
}

/// Largest single admissible rectangle over all anchors.
pub fn single_best_rect(inst: &Instance) -> Scalar {
    let (xs, ys) = candidate_grid(inst);
    inst.points()
        .iter()
        .flat_map(|p| candidate_rects(inst, &xs, &ys, p))
        .map(|r| r.area())
        .max()
        .unwrap_or_else(Scalar::zero)
}

/// Exhaustive optimum over the standard candidate grid; instances of at
/// most four points.
pub fn brute_force_bob(inst: &Instance) -> Result<Scalar> {
    let (xs, ys) = candidate_grid(inst);
    brute_force_on_grid(inst, &xs, &ys).map(|(v, _)| v)
}

/// Exhaustive optimum with right and top edges drawn from the given
/// coordinate lists. Enumerates, per point, "no rectangle" or any admissible
/// rectangle, keeping only pairwise interior-disjoint combinations.
pub fn brute_force_on_grid(inst: &Instance, xs: &[Scalar], ys: &[Scalar]) -> Result<(Scalar, Packing)> {
    if inst.len() > BRUTE_FORCE_MAX_POINTS {
        return Err(Error::TooLarge {
            points: inst.len(),
            limit: BRUTE_FORCE_MAX_POINTS,
        });
    }
    let options: Vec<Vec<AnchoredRect>> = inst
        .points()
        .iter()
        .map(|p| candidate_rects(inst, xs, ys, p))
        .collect();

    fn go(
        options: &[Vec<AnchoredRect>],
        chosen: &mut Vec<AnchoredRect>,
        area: Scalar,
        best: &mut (Scalar, Vec<AnchoredRect>),
    ) {
        let Some((first, rest)) = options.split_first() else {
            if area > best.0 {
                *best = (area, chosen.clone());
            }
            return;
        };
        go(rest, chosen, area.clone(), best);
        for r in first {
            if chosen.iter().all(|c| interiors_disjoint(c, r)) {
                chosen.push(r.clone());
                go(rest, chosen, &area + r.area(), best);
                chosen.pop();
            }
        }
    }

    let mut best = (Scalar::zero(), Vec::new());
    go(&options, &mut Vec::new(), Scalar::zero(), &mut best);
    Ok((best.0, Packing::new(best.1)))
}

/// Optimal packing value by branch-and-bound, default size limit.
pub fn exact_bob(inst: &Instance, node_budget: u64) -> Result<SolveResult> {
    exact_bob_with(
        inst,
        SolverConfig {
            node_budget,
            ..SolverConfig::default()
        },
    )
}

pub fn exact_bob_with(inst: &Instance, cfg: SolverConfig) -> Result<SolveResult> {
    let limit = cfg.max_points.min(HARD_MAX_POINTS);
    if inst.len() > limit {
        return Err(Error::TooLarge {
            points: inst.len(),
            limit,
        });
    }
    if cfg.node_budget == 0 {
        return Err(Error::InvalidArgument("node budget must be positive".into()));
    }
    let start = Instant::now();
    let grid = CellGrid::new(inst);
    let (value, packing, nodes, complete) = if grid.fits_i128() {
        grid.solve::<i128>(cfg.node_budget)
    } else {
        grid.solve::<BigInt>(cfg.node_budget)
    };
    Ok(SolveResult {
        value,
        packing,
        nodes_explored: nodes,
        elapsed: start.elapsed(),
        optimal: complete,
        kind: SolveKind::Exact,
        label: String::new(),
    })
}

/// Integer cell weight used inside the search.
pub(crate) trait Weight: Clone + Ord + Zero + Add<Output = Self> + Sub<Output = Self> {
    fn from_big(v: &BigInt) -> Self;
    fn to_big(&self) -> BigInt;
}

impl Weight for i128 {
    fn from_big(v: &BigInt) -> Self {
        v.to_i128().expect("checked by fits_i128")
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Weight for BigInt {
    fn from_big(v: &BigInt) -> Self {
        v.clone()
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

/// One candidate rectangle in grid-index form.
#[derive(Clone, Debug)]
pub(crate) struct CellRect {
    pub mask: u64,
    pub right: usize,
    pub top: usize,
}

/// The instance discretized on its candidate grid. Cell `(col, row)` is bit
/// `row * cols + col`; cell areas are integers in units of `1 / (dx * dy)`.
pub(crate) struct CellGrid<'a> {
    pub inst: &'a Instance,
    pub xs: Vec<Scalar>,
    pub ys: Vec<Scalar>,
    pub cell_weight: Vec<BigInt>,
    pub unit: BigInt,
    /// Admissible rectangles per point, in the instance's point order.
    pub options: Vec<Vec<CellRect>>,
}

impl<'a> CellGrid<'a> {
    pub fn new(inst: &'a Instance) -> Self {
        assert!(inst.len() <= HARD_MAX_POINTS);
        let (xs, ys) = candidate_grid(inst);
        let cols = xs.len() - 1;
        let rows = ys.len() - 1;
        let dx = Scalar::common_denominator(&xs);
        let dy = Scalar::common_denominator(&ys);
        let scaled = |vals: &[Scalar], d: &BigInt| -> Vec<BigInt> {
            vals.iter().map(|v| v.numer() * (d / v.denom())).collect()
        };
        let ix = scaled(&xs, &dx);
        let iy = scaled(&ys, &dy);
        let mut cell_weight = Vec::with_capacity(cols * rows);
        for r in 0..rows {
            for c in 0..cols {
                cell_weight.push((&ix[c + 1] - &ix[c]) * (&iy[r + 1] - &iy[r]));
            }
        }
        let cells: Vec<(usize, usize)> = inst
            .points()
            .iter()
            .map(|p| {
                (
                    xs.binary_search(&p.x).expect("x on grid"),
                    ys.binary_search(&p.y).expect("y on grid"),
                )
            })
            .collect();
        let options = cells
            .iter()
            .map(|&(ac, ar)| {
                let mut opts = Vec::new();
                for right in ac + 1..=cols {
                    for top in ar + 1..=rows {
                        let blocked = cells.iter().any(|&(qc, qr)| ac < qc && qc < right && ar < qr && qr < top);
                        if blocked {
                            continue;
                        }
                        let mut mask = 0u64;
                        for r in ar..top {
                            for c in ac..right {
                                mask |= 1u64 << (r * cols + c);
                            }
                        }
                        opts.push(CellRect { mask, right, top });
                    }
                }
                opts
            })
            .collect();
        CellGrid {
            inst,
            xs,
            ys,
            cell_weight,
            unit: dx * dy,
            options,
        }
    }

    pub fn fits_i128(&self) -> bool {
        // total weight equals `unit`; leave headroom for intermediate sums.
        self.unit.bits() < 120
    }

    pub fn weights<W: Weight>(&self) -> Vec<W> {
        self.cell_weight.iter().map(W::from_big).collect()
    }

    pub fn to_rect(&self, point: usize, cr: &CellRect) -> AnchoredRect {
        AnchoredRect {
            anchor: self.inst.points()[point].clone(),
            right: self.xs[cr.right].clone(),
            top: self.ys[cr.top].clone(),
        }
    }

    pub fn to_scalar<W: Weight>(&self, w: &W) -> Scalar {
        Scalar::from_bigints(w.to_big(), self.unit.clone()).expect("unit is positive")
    }

    /// Processing order: decreasing y, ties by increasing x.
    pub fn search_order(&self) -> Vec<usize> {
        let pts = self.inst.points();
        let mut order: Vec<usize> = (0..pts.len()).collect();
        order.sort_by(|&a, &b| pts[b].y.cmp(&pts[a].y).then_with(|| pts[a].x.cmp(&pts[b].x)));
        order
    }

    fn solve<W: Weight>(&self, budget: u64) -> (Scalar, Packing, u64, bool) {
        let weights: Vec<W> = self.weights();
        let order = self.search_order();
        let levels: Vec<Vec<(u64, W, usize)>> = order
            .iter()
            .map(|&p| {
                let mut v: Vec<(u64, W, usize)> = self.options[p]
                    .iter()
                    .enumerate()
                    .map(|(i, cr)| (cr.mask, mask_weight(&weights, cr.mask), i))
                    .collect();
                v.sort_by(|a, b| b.1.cmp(&a.1).then(a.2.cmp(&b.2)));
                v
            })
            .collect();
        let mut reach_suffix = vec![0u64; levels.len() + 1];
        for d in (0..levels.len()).rev() {
            let reach = levels[d].iter().fold(0u64, |m, o| m | o.0);
            reach_suffix[d] = reach_suffix[d + 1] | reach;
        }

        let mut search = Search {
            levels: &levels,
            reach_suffix: &reach_suffix,
            weights: &weights,
            budget,
            nodes: 0,
            exhausted: false,
            current: vec![None; order.len()],
            best: W::zero(),
            best_choice: vec![None; order.len()],
        };
        search.dfs(0, 0, W::zero());

        let rects = search
            .best_choice
            .iter()
            .enumerate()
            .filter_map(|(d, c)| c.map(|i| self.to_rect(order[d], &self.options[order[d]][i])))
            .collect();
        let value = self.to_scalar(&search.best);
        (value, Packing::new(rects), search.nodes, !search.exhausted)
    }
}

pub(crate) fn mask_weight<W: Weight>(weights: &[W], mut mask: u64) -> W {
    let mut total = W::zero();
    while mask != 0 {
        let bit = mask.trailing_zeros() as usize;
        total = total + weights[bit].clone();
        mask &= mask - 1;
    }
    total
}

struct Search<'s, W> {
    /// Per depth: (mask, weight, option index), heaviest first.
    levels: &'s [Vec<(u64, W, usize)>],
    reach_suffix: &'s [u64],
    weights: &'s [W],
    budget: u64,
    nodes: u64,
    exhausted: bool,
    current: Vec<Option<usize>>,
    best: W,
    best_choice: Vec<Option<usize>>,
}

impl<W: Weight> Search<'_, W> {
    fn dfs(&mut self, depth: usize, occupied: u64, committed: W) {
        if self.exhausted {
            return;
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            self.exhausted = true;
            return;
        }
        if depth == self.levels.len() {
            if committed > self.best {
                self.best = committed;
                self.best_choice.clone_from(&self.current);
            }
            return;
        }
        let free_reach = self.reach_suffix[depth] & !occupied;
        let bound = committed.clone() + mask_weight(self.weights, free_reach);
        if bound <= self.best {
            return;
        }
        let count = self.levels[depth].len();
        for k in 0..count {
            let (mask, w, idx) = {
                let o = &self.levels[depth][k];
                (o.0, o.1.clone(), o.2)
            };
            if mask & occupied != 0 {
                continue;
            }
            self.current[depth] = Some(idx);
            self.dfs(depth + 1, occupied | mask, committed.clone() + w);
            if self.exhausted {
                self.current[depth] = None;
                return;
            }
        }
        self.current[depth] = None;
        self.dfs(depth + 1, occupied, committed);
    }
}
