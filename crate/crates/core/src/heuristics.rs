//! Greedy lower bounds for instances beyond the exact solver's reach.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::Error;
use crate::model::{Instance, Packing};
use crate::solver::{mask_weight, CellGrid, SolveKind, SolveResult, Weight};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OrderPolicy {
    DecreasingY,
    IncreasingX,
    /// At each step, place the largest rectangle still available anywhere.
    LargestFreeFirst,
    SeededRandom,
}

impl OrderPolicy {
    pub const ALL: [OrderPolicy; 4] = [
        OrderPolicy::DecreasingY,
        OrderPolicy::IncreasingX,
        OrderPolicy::LargestFreeFirst,
        OrderPolicy::SeededRandom,
    ];

    pub fn name(self) -> &'static str {
        match self {
            OrderPolicy::DecreasingY => "decreasing-y",
            OrderPolicy::IncreasingX => "increasing-x",
            OrderPolicy::LargestFreeFirst => "largest-free-first",
            OrderPolicy::SeededRandom => "seeded-random",
        }
    }
}

impl fmt::Display for OrderPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for OrderPolicy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        OrderPolicy::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown policy {s:?}")))
    }
}

/// Places, point by point, the largest admissible grid rectangle that is
/// disjoint from everything placed so far. Deterministic in `(policy, seed)`;
/// the seed only matters for [`OrderPolicy::SeededRandom`].
pub fn greedy_bob(inst: &Instance, policy: OrderPolicy, seed: u64) -> SolveResult {
    let start = Instant::now();
    let grid = CellGrid::new(inst);
    let (choice, steps) = if grid.fits_i128() {
        greedy_choices::<i128>(&grid, policy, seed)
    } else {
        greedy_choices::<BigInt>(&grid, policy, seed)
    };
    let rects = choice
        .into_iter()
        .map(|(p, o)| grid.to_rect(p, &grid.options[p][o]))
        .collect();
    let packing = Packing::new(rects);
    SolveResult {
        value: packing.area(),
        packing,
        nodes_explored: steps,
        elapsed: start.elapsed(),
        optimal: false,
        kind: SolveKind::Heuristic,
        label: policy.name().to_string(),
    }
}

/// Runs every policy concurrently and keeps the best; ties go to the
/// policy listed first in [`OrderPolicy::ALL`].
pub fn best_greedy(inst: &Instance, seed: u64) -> SolveResult {
    let results: Vec<SolveResult> = OrderPolicy::ALL
        .par_iter()
        .map(|&p| greedy_bob(inst, p, seed))
        .collect();
    results
        .into_iter()
        .reduce(|best, r| if r.value > best.value { r } else { best })
        .expect("at least one policy")
}

/// Heaviest option of `point` that avoids `occupied`; ties keep the first.
fn best_option<W: Weight>(grid: &CellGrid<'_>, weights: &[W], point: usize, occupied: u64) -> Option<(usize, W)> {
    let mut best: Option<(usize, W)> = None;
    for (i, cr) in grid.options[point].iter().enumerate() {
        if cr.mask & occupied != 0 {
            continue;
        }
        let w = mask_weight(weights, cr.mask);
        if best.as_ref().is_none_or(|(_, bw)| w > *bw) {
            best = Some((i, w));
        }
    }
    best
}

fn greedy_choices<W: Weight>(grid: &CellGrid<'_>, policy: OrderPolicy, seed: u64) -> (Vec<(usize, usize)>, u64) {
    let weights: Vec<W> = grid.weights();
    let pts = grid.inst.points();
    let mut occupied = 0u64;
    let mut chosen = Vec::new();
    let mut steps = 0u64;

    let fixed_order: Option<Vec<usize>> = match policy {
        OrderPolicy::DecreasingY => Some(grid.search_order()),
        OrderPolicy::IncreasingX => {
            let mut o: Vec<usize> = (0..pts.len()).collect();
            o.sort_by(|&a, &b| pts[a].x.cmp(&pts[b].x).then_with(|| pts[a].y.cmp(&pts[b].y)));
            Some(o)
        }
        OrderPolicy::SeededRandom => {
            let mut o = grid.search_order();
            o.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
            Some(o)
        }
        OrderPolicy::LargestFreeFirst => None,
    };

    match fixed_order {
        Some(order) => {
            for p in order {
                steps += 1;
                if let Some((o, _)) = best_option(grid, &weights, p, occupied) {
                    occupied |= grid.options[p][o].mask;
                    chosen.push((p, o));
                }
            }
        }
        None => {
            let mut remaining = grid.search_order();
            while !remaining.is_empty() {
                steps += 1;
                let mut pick: Option<(usize, usize, W)> = None;
                for (slot, &p) in remaining.iter().enumerate() {
                    if let Some((o, w)) = best_option(grid, &weights, p, occupied) {
                        if pick.as_ref().is_none_or(|(_, _, bw)| w > *bw) {
                            pick = Some((slot, o, w));
                        }
                    }
                }
                let Some((slot, o, _)) = pick else { break };
                let p = remaining.remove(slot);
                occupied |= grid.options[p][o].mask;
                chosen.push((p, o));
            }
        }
    }
    (chosen, steps)
}
