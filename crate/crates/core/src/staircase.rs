//! The staircase below the minima and the strip decomposition of its complement.
//!
//! For an instance `P`, the staircase is the union of all origin-anchored
//! rectangles whose interiors avoid `P`. Its complement splits into one
//! horizontal strip per minimum `p_i`, spanning from `p_i` to the right edge
//! and from `y(p_i)` up to the previous minimum's `y` (or the top edge).

use std::fmt::Write as _;

use crate::model::{AnchoredRect, Instance, Point};
use crate::scalar::Scalar;

/// Minima of `P \ {origin}` under weak dominance, ordered by strictly
/// decreasing `y` (equivalently strictly increasing `x`).
pub fn minima(inst: &Instance) -> Vec<Point> {
    let mut pts: Vec<&Point> = inst.points().iter().filter(|p| !p.is_origin()).collect();
    // x ascending, ties y ascending: a point is a minimum iff its y is below
    // every y seen so far.
    pts.sort_by(|a, b| a.x.cmp(&b.x).then_with(|| a.y.cmp(&b.y)));
    let mut out: Vec<Point> = Vec::new();
    for p in pts {
        match out.last() {
            Some(last) if p.y >= last.y => {}
            _ => out.push(p.clone()),
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StaircaseMetrics {
    pub s: Scalar,
    pub alpha: Scalar,
    pub rho: Scalar,
}

/// The inclusion-maximal origin-anchored rectangles inside the staircase,
/// given as `(right, top)` corners:
/// `[0,x1]x[0,1]`, `[0,x_{i+1}]x[0,y_i]`, `[0,1]x[0,y_k]`.
pub fn maximal_corners(mins: &[Point]) -> Vec<(Scalar, Scalar)> {
    if mins.is_empty() {
        return vec![(Scalar::one(), Scalar::one())];
    }
    let mut out = Vec::with_capacity(mins.len() + 1);
    out.push((mins[0].x.clone(), Scalar::one()));
    for w in mins.windows(2) {
        out.push((w[1].x.clone(), w[0].y.clone()));
    }
    out.push((Scalar::one(), mins[mins.len() - 1].y.clone()));
    out
}

fn metrics_from_minima(mins: &[Point]) -> StaircaseMetrics {
    let s = if mins.is_empty() {
        Scalar::one()
    } else {
        let mut s = mins[0].x.clone();
        for (i, p) in mins.iter().enumerate() {
            let next_x = mins.get(i + 1).map(|q| q.x.clone()).unwrap_or_else(Scalar::one);
            s = s + (next_x - &p.x) * &p.y;
        }
        s
    };
    let alpha = maximal_corners(mins)
        .into_iter()
        .map(|(r, t)| r * t)
        .max()
        .expect("at least one corner");
    let rho = &s / &alpha;
    StaircaseMetrics { s, alpha, rho }
}

/// Area `s` of the staircase, largest origin-anchored rectangle `alpha`
/// inside it, and `rho = s / alpha`.
pub fn staircase_metrics(inst: &Instance) -> StaircaseMetrics {
    metrics_from_minima(&minima(inst))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Strip {
    /// `[x(p_i), 1] x [y(p_i), y(p_{i-1})]`, anchored at the minimum `p_i`.
    pub rect: AnchoredRect,
    pub beta: Scalar,
    /// Indices into the instance's point list of the points assigned here.
    pub members: Vec<usize>,
    /// Members rescaled so the strip becomes the unit square.
    pub subinstance: Instance,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StaircaseDecomposition {
    pub minima: Vec<Point>,
    pub s: Scalar,
    pub alpha: Scalar,
    pub rho: Scalar,
    pub strips: Vec<Strip>,
}

impl StaircaseDecomposition {
    pub fn k(&self) -> usize {
        self.minima.len()
    }

    pub fn betas(&self) -> Vec<Scalar> {
        self.strips.iter().map(|s| s.beta.clone()).collect()
    }

    /// Plain-text report: `k`, `s`, `alpha`, `rho`, then one
    /// `i x(p_i) y(p_i) beta_i |P_i|` line per strip.
    pub fn report(&self) -> String {
        let mut out = String::new();
        writeln!(out, "k {}", self.k()).unwrap();
        writeln!(out, "s {}", self.s.with_decimal()).unwrap();
        writeln!(out, "alpha {}", self.alpha.with_decimal()).unwrap();
        writeln!(out, "rho {}", self.rho.with_decimal()).unwrap();
        for (i, strip) in self.strips.iter().enumerate() {
            writeln!(
                out,
                "{} {} {} {} {}",
                i + 1,
                strip.rect.anchor.x,
                strip.rect.anchor.y,
                strip.beta,
                strip.subinstance.len()
            )
            .unwrap();
        }
        out
    }
}

/// Maps `v` from `[lo, hi]` to `[0, 1]`; a degenerate interval maps to 0.
fn rescale(v: &Scalar, lo: &Scalar, hi: &Scalar) -> Scalar {
    let span = hi - lo;
    if span.is_zero() {
        Scalar::zero()
    } else {
        (v - lo) / span
    }
}

/// Splits the complement of the staircase into strips and builds the
/// rescaled subinstances.
///
/// A non-origin point `q` belongs to strip `i` iff `x(q) >= x(p_i)` and
/// `y(p_i) <= y(q) < y(p_{i-1})`; the top strip also takes `y(q) = 1`.
/// Strips of zero width or height are kept with `beta = 0`; along a
/// degenerate axis members rescale to coordinate 0 and coincident images
/// are merged.
pub fn decompose(inst: &Instance) -> StaircaseDecomposition {
    let mins = minima(inst);
    let StaircaseMetrics { s, alpha, rho } = metrics_from_minima(&mins);
    let one = Scalar::one();

    let mut members: Vec<Vec<usize>> = vec![Vec::new(); mins.len()];
    for (idx, q) in inst.points().iter().enumerate() {
        if q.is_origin() {
            continue;
        }
        let slot = mins.iter().enumerate().position(|(i, p)| {
            let upper = if i == 0 { &one } else { &mins[i - 1].y };
            q.y >= p.y && (q.y < *upper || (i == 0 && q.y == one))
        });
        let slot = slot.expect("every non-origin point lies above the lowest minimum");
        debug_assert!(q.x >= mins[slot].x, "point left of its strip");
        members[slot].push(idx);
    }

    let strips = mins
        .iter()
        .enumerate()
        .map(|(i, p)| {
            let top = if i == 0 { one.clone() } else { mins[i - 1].y.clone() };
            let rect = AnchoredRect::new(p.clone(), one.clone(), top.clone())
                .expect("strip lies in the unit square");
            let beta = rect.area();
            let mut pts = vec![Point::origin()];
            for &m in &members[i] {
                let q = &inst.points()[m];
                let img = Point::new(rescale(&q.x, &p.x, &one), rescale(&q.y, &p.y, &top))
                    .expect("rescaled point stays in the unit square");
                if !pts.contains(&img) {
                    pts.push(img);
                }
            }
            Strip {
                rect,
                beta,
                members: std::mem::take(&mut members[i]),
                subinstance: Instance::new(pts).expect("origin present, no duplicates"),
            }
        })
        .collect();

    StaircaseDecomposition {
        minima: mins,
        s,
        alpha,
        rho,
        strips,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inst(text: &str) -> Instance {
        Instance::parse(text).unwrap()
    }

    fn pt(x: (i64, i64), y: (i64, i64)) -> Point {
        Point::ratio(x, y).unwrap()
    }

    #[test]
    fn minima_examples() {
        assert!(minima(&Instance::origin_only()).is_empty());
        assert_eq!(
            minima(&inst("0 0\n1/2 1/2\n3/5 7/10")),
            vec![pt((1, 2), (1, 2))]
        );
        assert_eq!(
            minima(&inst("0 0\n1/2 1/2\n4/5 1/5\n1/5 4/5")),
            vec![pt((1, 5), (4, 5)), pt((1, 2), (1, 2)), pt((4, 5), (1, 5))]
        );
    }

    #[test]
    fn minima_tie_rule() {
        // equal y: only the smaller x survives; equal x: only the smaller y.
        let m = minima(&inst("0 0\n1/2 1/2\n3/4 1/2\n1/2 3/4"));
        assert_eq!(m, vec![pt((1, 2), (1, 2))]);
    }

    #[test]
    fn metrics_examples() {
        let m = staircase_metrics(&Instance::origin_only());
        assert_eq!((m.s, m.alpha, m.rho), (Scalar::one(), Scalar::one(), Scalar::one()));
        let m = staircase_metrics(&inst("0 0\n1/2 1/2"));
        assert_eq!(m.s, Scalar::ratio(3, 4));
        assert_eq!(m.alpha, Scalar::ratio(1, 2));
        assert_eq!(m.rho, Scalar::ratio(3, 2));
    }

    #[test]
    fn axis_points_keep_alpha_positive() {
        let m = staircase_metrics(&inst("0 0\n0 1/2\n1/2 0"));
        assert_eq!(m.s, Scalar::ratio(1, 4));
        assert_eq!(m.alpha, Scalar::ratio(1, 4));
    }

    #[test]
    fn decompose_diagonal_two() {
        let d = decompose(&inst("0 0\n1/2 1/2"));
        assert_eq!(d.k(), 1);
        let strip = &d.strips[0];
        assert_eq!(strip.rect.anchor, pt((1, 2), (1, 2)));
        assert_eq!(strip.rect.right, Scalar::one());
        assert_eq!(strip.rect.top, Scalar::one());
        assert_eq!(strip.beta, Scalar::ratio(1, 4));
        assert_eq!(strip.subinstance, Instance::origin_only());
        assert_eq!(d.report(), "k 1\ns 3/4 (0.75)\nalpha 1/2 (0.5)\nrho 3/2 (1.5)\n1 1/2 1/2 1/4 1\n");
    }

    #[test]
    fn decompose_origin_only() {
        let d = decompose(&Instance::origin_only());
        assert!(d.strips.is_empty());
        assert_eq!(d.s, Scalar::one());
    }

    #[test]
    fn boundary_points_use_half_open_rule() {
        // (3/4, 1/2) sits on the boundary y = y_1 between the two strips.
        let d = decompose(&inst("0 0\n1/4 1/2\n1/2 1/4\n3/4 1/2\n1/2 1"));
        assert_eq!(d.k(), 2);
        assert_eq!(d.strips[0].members, vec![1, 3, 4]);
        assert_eq!(d.strips[1].members, vec![2]);
        assert_eq!(
            d.strips[0].subinstance.points(),
            &[Point::origin(), pt((2, 3), (0, 1)), pt((1, 3), (1, 1))]
        );
        let total: Scalar = d.betas().iter().sum();
        assert_eq!(d.s.clone() + total, Scalar::one());
    }

    #[test]
    fn zero_width_strip_kept() {
        let d = decompose(&inst("0 0\n1/2 1/2\n1 1/4"));
        assert_eq!(d.k(), 2);
        assert_eq!(d.strips[1].beta, Scalar::zero());
        assert_eq!(d.strips[1].subinstance, Instance::origin_only());
    }

    #[test]
    fn zero_height_top_strip_merges_images() {
        let d = decompose(&inst("0 0\n1/2 1\n3/4 1\n1/4 1/2"));
        // minima: (1/4,1/2) only, since (1/2,1) and (3/4,1) are dominated.
        assert_eq!(d.k(), 1);
        let d = decompose(&inst("0 0\n1/4 1\n3/4 1\n1/2 1/2"));
        assert_eq!(d.minima, vec![pt((1, 4), (1, 1)), pt((1, 2), (1, 2))]);
        assert_eq!(d.strips[0].beta, Scalar::zero());
        assert_eq!(d.strips[0].members, vec![1, 2]);
        assert_eq!(
            d.strips[0].subinstance.points(),
            &[Point::origin(), pt((2, 3), (0, 1))]
        );
    }
}
