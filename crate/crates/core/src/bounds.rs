//! Executable checks for the staircase area bounds, the superadditivity
//! estimate, the gains inequality and the doubling recurrence.
//!
//! Rational quantities are compared exactly. Where a logarithm or a
//! fractional power of two is involved, the comparison runs in `f64` in the
//! log domain and a bound only counts as holding when its slack exceeds
//! [`TOLERANCE`]; when the transcendental term happens to be rational
//! (`ln 1`, `2^ρ` for integer `ρ`) the comparison is exact instead.

use std::fmt::Write as _;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};

use crate::error::{Error, Result};
use crate::model::Instance;
use crate::scalar::Scalar;
use crate::solver::{exact_bob, DEFAULT_NODE_BUDGET};
use crate::staircase::{decompose, StaircaseDecomposition};

pub const TOLERANCE: f64 = 1e-9;
const LOG2_E: f64 = std::f64::consts::LOG2_E;
/// Upper end of the integer scan in [`min_r0_scan`].
pub const R0_SCAN_MAX: u32 = 256;
/// Above this many steps the recurrence is advanced in certified chunks.
const EXACT_ITERATION_LIMIT: u64 = 1 << 22;

/// `lhs <= rhs` for values given as base-2 logarithms, with strict slack.
fn log2_le(lhs: f64, rhs: f64) -> bool {
    rhs - lhs > TOLERANCE
}

/// `2^rho` as an exact rational when `rho` is a modest integer.
fn exact_pow2(rho: &Scalar) -> Option<Scalar> {
    if !rho.is_integer() {
        return None;
    }
    let e = rho.numer().to_i64()?;
    if !(0..=1 << 20).contains(&e) {
        return None;
    }
    let p = BigInt::one() << e as usize;
    Some(Scalar::from_bigints(p, BigInt::one()).expect("nonzero"))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundReport {
    pub s: Scalar,
    pub alpha: Scalar,
    pub rho: Scalar,
    pub r0: Scalar,
    /// `rho >= r0`; the area and strip bounds are only binding when true.
    pub premise_met: bool,
    /// `s <= alpha (1 + ln(1/alpha))`, unconditional.
    pub hyperbola_holds: bool,
    /// `s <= 2^-rho / 4`.
    pub area_bound_holds: bool,
    /// For every strip `i`, the other strips' areas sum to at least `2^rho s`.
    pub strip_bound_holds: bool,
    /// First strip (0-based) violating the strip bound.
    pub failing_strip: Option<usize>,
}

impl BoundReport {
    /// True iff the premise holds and both lemma bounds hold.
    pub fn lemma_holds(&self) -> bool {
        self.premise_met && self.area_bound_holds && self.strip_bound_holds
    }

    pub fn to_text(&self) -> String {
        let status = |b: bool| if b { "holds" } else { "fails" };
        let gated = |b: bool| {
            if !self.premise_met {
                "non-binding"
            } else {
                status(b)
            }
        };
        let mut out = String::new();
        writeln!(out, "s {}", self.s.with_decimal()).unwrap();
        writeln!(out, "alpha {}", self.alpha.with_decimal()).unwrap();
        writeln!(out, "rho {}", self.rho.with_decimal()).unwrap();
        writeln!(out, "r0 {}", self.r0).unwrap();
        writeln!(out, "premise_met {}", self.premise_met).unwrap();
        writeln!(out, "hyperbola {}", status(self.hyperbola_holds)).unwrap();
        writeln!(out, "area_bound {} ({})", gated(self.area_bound_holds), self.area_bound_holds).unwrap();
        writeln!(out, "strip_bound {} ({})", gated(self.strip_bound_holds), self.strip_bound_holds).unwrap();
        out
    }
}

fn hyperbola_holds(s: &Scalar, alpha: &Scalar, rho: &Scalar) -> bool {
    if alpha.is_one() {
        return s <= alpha;
    }
    // s <= alpha (1 + ln(1/alpha))  <=>  rho <= 1 + ln(1/alpha)
    let rhs = 1.0 - alpha.ln_abs();
    rhs - rho.to_f64() > TOLERANCE
}

fn area_bound_holds(s: &Scalar, rho: &Scalar) -> bool {
    if let Some(p) = exact_pow2(rho) {
        return s * Scalar::from_integer(4) * p <= Scalar::one();
    }
    log2_le(s.log2_abs() + 2.0, -rho.to_f64())
}

/// Checks `sum_{j != i} beta_j >= 2^rho s` for every `i`; returns the first
/// failing index.
fn strip_bound_failure(dec: &StaircaseDecomposition) -> Option<usize> {
    let total: Scalar = dec.strips.iter().map(|st| &st.beta).sum();
    let exact = exact_pow2(&dec.rho).map(|p| p * &dec.s);
    let target_log2 = dec.rho.to_f64() + dec.s.log2_abs();
    dec.strips.iter().position(|st| {
        let others = &total - &st.beta;
        let ok = match &exact {
            Some(t) => others >= *t,
            None => log2_le(target_log2, others.log2_abs()),
        };
        !ok
    })
}

/// Evaluates the staircase bounds for a decomposition. The lemma bounds are
/// computed even when `rho < r0`, but are then only informational.
pub fn check_lemma(dec: &StaircaseDecomposition, r0: &Scalar) -> BoundReport {
    let failing_strip = strip_bound_failure(dec);
    BoundReport {
        s: dec.s.clone(),
        alpha: dec.alpha.clone(),
        rho: dec.rho.clone(),
        r0: r0.clone(),
        premise_met: dec.rho >= *r0,
        hyperbola_holds: hyperbola_holds(&dec.s, &dec.alpha, &dec.rho),
        area_bound_holds: area_bound_holds(&dec.s, &dec.rho),
        strip_bound_holds: failing_strip.is_none(),
        failing_strip,
    }
}

/// The full bound report with the default `r0`; the hyperbola bound is the
/// unconditional part.
pub fn check_hyperbola(inst: &Instance) -> BoundReport {
    check_lemma(&decompose(inst), &default_r0())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    /// 0-based strip indices.
    pub first: Vec<usize>,
    pub second: Vec<usize>,
    pub first_sum: Scalar,
    pub second_sum: Scalar,
}

/// Splits strip areas into two groups each of total at least `threshold`.
/// If a single area reaches the threshold it forms the first group by
/// itself (the largest such); otherwise areas are taken largest-first until
/// the first group reaches it. Fails if either side ends up short.
pub fn partition_betas(betas: &[Scalar], threshold: f64) -> Result<Partition> {
    let thr = threshold.log2();
    let mut order: Vec<usize> = (0..betas.len()).collect();
    order.sort_by(|&a, &b| betas[b].cmp(&betas[a]).then(a.cmp(&b)));

    let mut first = Vec::new();
    let mut sum = Scalar::zero();
    match order.first() {
        Some(&top) if betas[top].log2_abs() >= thr => {
            first.push(top);
            sum = betas[top].clone();
        }
        _ => {
            for &i in &order {
                if sum.log2_abs() >= thr {
                    break;
                }
                first.push(i);
                sum = sum + &betas[i];
            }
        }
    }
    first.sort_unstable();
    let second: Vec<usize> = (0..betas.len()).filter(|i| !first.contains(i)).collect();
    let second_sum: Scalar = second.iter().map(|&i| &betas[i]).sum();
    for (name, side) in [("first", &sum), ("second", &second_sum)] {
        if side.log2_abs() - thr < TOLERANCE {
            return Err(Error::PremiseNotMet(format!("{name} side sums to {side}, below threshold {threshold}")));
        }
    }
    Ok(Partition {
        first,
        second,
        first_sum: sum,
        second_sum,
    })
}

/// Partitions the strips into two groups, each with area at least `2^rho s`.
/// Requires the lemma premise and both of its bounds.
pub fn partition_indices(dec: &StaircaseDecomposition, r0: &Scalar) -> Result<Partition> {
    let report = check_lemma(dec, r0);
    if !report.lemma_holds() {
        return Err(Error::PremiseNotMet(format!(
            "rho {} vs r0 {}: premise {}, area bound {}, strip bound {}",
            dec.rho.to_f64(),
            r0,
            report.premise_met,
            report.area_bound_holds,
            report.strip_bound_holds
        )));
    }
    let threshold = (dec.rho.to_f64() + dec.s.log2_abs()).exp2();
    partition_betas(&dec.betas(), threshold)
}

fn solve_exact(inst: &Instance) -> Result<Scalar> {
    let r = exact_bob(inst, DEFAULT_NODE_BUDGET)?;
    if !r.optimal {
        return Err(Error::BudgetExhausted);
    }
    Ok(r.value)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuperadditivityReport {
    pub bob: Scalar,
    /// `alpha + sum beta_i bob(P_i)`.
    pub estimate: Scalar,
    pub holds: bool,
}

impl SuperadditivityReport {
    pub fn to_text(&self) -> String {
        format!(
            "bob {}\nestimate {}\nsuperadditivity {}\n",
            self.bob.with_decimal(),
            self.estimate.with_decimal(),
            if self.holds { "holds" } else { "fails" }
        )
    }
}

/// Compares Bob's optimum with the decomposition estimate, exactly.
pub fn check_superadditivity(inst: &Instance) -> Result<SuperadditivityReport> {
    let dec = decompose(inst);
    let bob = solve_exact(inst)?;
    let mut estimate = dec.alpha.clone();
    for st in &dec.strips {
        estimate = estimate + &st.beta * solve_exact(&st.subinstance)?;
    }
    Ok(SuperadditivityReport {
        holds: bob >= estimate,
        bob,
        estimate,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GainsReport {
    pub r: Scalar,
    pub bob: Scalar,
    pub sub_values: Vec<Scalar>,
    /// `bob(P_i) - 1/r`.
    pub gamma: Vec<Scalar>,
    /// `sum beta_i gamma_i`.
    pub lhs: Scalar,
    /// `s / r`.
    pub rhs: Scalar,
    /// `bob(P) <= 1/r`.
    pub premise_total: bool,
    /// `bob(P_i) >= 1/r` for every strip.
    pub premise_subproblems: bool,
    /// `lhs <= rhs`; only meaningful when [`GainsReport::binding`].
    pub holds: bool,
}

impl GainsReport {
    pub fn binding(&self) -> bool {
        self.premise_total && self.premise_subproblems
    }

    pub fn status(&self) -> &'static str {
        match (self.binding(), self.holds) {
            (false, _) => "non-binding",
            (true, true) => "holds",
            (true, false) => "fails",
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "r {}", self.r).unwrap();
        writeln!(out, "bob {}", self.bob.with_decimal()).unwrap();
        for (i, (v, g)) in self.sub_values.iter().zip(&self.gamma).enumerate() {
            writeln!(out, "gamma {} {} (sub {})", i + 1, g, v).unwrap();
        }
        writeln!(out, "lhs {}", self.lhs.with_decimal()).unwrap();
        writeln!(out, "rhs {}", self.rhs.with_decimal()).unwrap();
        writeln!(out, "premise_total {}", self.premise_total).unwrap();
        writeln!(out, "premise_subproblems {}", self.premise_subproblems).unwrap();
        writeln!(out, "gains {}", self.status()).unwrap();
        out
    }
}

/// Gains of each subproblem over `1/r` and the inequality
/// `sum beta_i gamma_i <= s / r`.
pub fn gains_report(inst: &Instance, r: &Scalar) -> Result<GainsReport> {
    if !r.is_positive() {
        return Err(Error::InvalidArgument("r must be positive".into()));
    }
    let dec = decompose(inst);
    let inv_r = r.recip();
    let bob = solve_exact(inst)?;
    let sub_values = dec
        .strips
        .iter()
        .map(|st| solve_exact(&st.subinstance))
        .collect::<Result<Vec<_>>>()?;
    let gamma: Vec<Scalar> = sub_values.iter().map(|v| v - &inv_r).collect();
    let lhs: Scalar = dec.strips.iter().zip(&gamma).map(|(st, g)| &st.beta * g).sum();
    let rhs = &dec.s / r;
    Ok(GainsReport {
        r: r.clone(),
        premise_total: bob <= inv_r,
        premise_subproblems: sub_values.iter().all(|v| *v >= inv_r),
        holds: lhs <= rhs,
        bob,
        sub_values,
        gamma,
        lhs,
        rhs,
    })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RecurrenceRow {
    pub r: f64,
    /// `ceil(2^(r/2))` doubling steps.
    pub t: u64,
    /// Lower bound on the ratio after `t` steps of `r <- r - 2^(-(r+1)/2)`.
    pub final_r: f64,
    /// `log2` of the resulting lower bound on `n(r)`, i.e. `t`.
    pub log2_lower_bound: f64,
}

impl RecurrenceRow {
    /// The `t` steps lower the ratio by at most one.
    pub fn holds(&self) -> bool {
        self.final_r >= self.r - 1.0
    }
}

fn decrement(c: f64) -> f64 {
    (-(c + 1.0) / 2.0).exp2()
}

/// Iterates the doubling recurrence from `r` for `ceil(2^(r/2))` steps,
/// entirely in log space. Up to 2^22 steps are applied one by one; beyond
/// that the steps are grouped into chunks whose total decrease is bounded
/// using the smallest ratio the chunk can reach, so `final_r` stays a lower
/// bound on the exact iterate.
pub fn recurrence_iterate(r: f64) -> Result<RecurrenceRow> {
    if !r.is_finite() || r < 2.0 {
        return Err(Error::InvalidArgument(format!("r must be at least 2, got {r}")));
    }
    let t_f = (r / 2.0).exp2().ceil();
    if t_f > u64::MAX as f64 / 2.0 {
        return Err(Error::InvalidArgument(format!("r = {r} needs too many steps")));
    }
    let t = t_f as u64;
    let mut c = r;
    if t <= EXACT_ITERATION_LIMIT {
        for _ in 0..t {
            c -= decrement(c);
        }
    } else {
        let mut remaining = t;
        while remaining > 0 {
            let d = decrement(c);
            let m = ((1e-3 / d) as u64).clamp(1, remaining);
            let floor = c - 1.01 * m as f64 * d;
            let step = m as f64 * decrement(floor);
            debug_assert!(c - step >= floor);
            c -= step;
            remaining -= m;
        }
    }
    Ok(RecurrenceRow {
        r,
        t,
        final_r: c,
        log2_lower_bound: t as f64,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct RecurrenceTable {
    pub rows: Vec<RecurrenceRow>,
}

impl RecurrenceTable {
    /// Rows for `r = rmin, rmin + step, ...` up to `rmax` inclusive.
    pub fn build(rmin: f64, rmax: f64, step: f64) -> Result<Self> {
        if step.is_nan() || step <= 0.0 || rmax < rmin {
            return Err(Error::InvalidArgument("need step > 0 and rmax >= rmin".into()));
        }
        let count = ((rmax - rmin) / step + 1e-9).floor() as usize + 1;
        let rows = (0..count)
            .map(|i| recurrence_iterate(rmin + i as f64 * step))
            .collect::<Result<_>>()?;
        Ok(RecurrenceTable { rows })
    }

    /// One `r t final_r log2_lb` line per row.
    pub fn to_text(&self) -> String {
        let mut out = String::from("# r t final_r log2_lb\n");
        for row in &self.rows {
            writeln!(out, "{} {} {:.6} {}", row.r, row.t, row.final_r, row.t).unwrap();
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RStar {
    pub r: f64,
    /// `2^-r / r`.
    pub gamma_star: f64,
    /// `r / (1 + r gamma_star)`.
    pub r_star: f64,
    /// `r* >= r - r 2^-r`.
    pub first_link: bool,
    /// `r - r 2^-r >= r - 2^(-(r+1)/2)`.
    pub second_link: bool,
    /// The chain is only claimed for `r >= 7`.
    pub gated: bool,
}

impl RStar {
    pub fn chain_holds(&self) -> bool {
        self.first_link && self.second_link
    }
}

/// Adjusted ratio `r*` with `1/r* = 1/r + 2^-r / r`, and the two inequalities
/// that bound it below by `r - 2^(-(r+1)/2)`. For integer `r` both links
/// are decided exactly (the second after squaring: `r^2 <= 2^(r-1)`).
pub fn rstar(r: f64) -> Result<RStar> {
    if !r.is_finite() || r <= 0.0 {
        return Err(Error::InvalidArgument(format!("r must be positive, got {r}")));
    }
    let gamma_star = (-r).exp2() / r;
    let r_star = r / (1.0 + r * gamma_star);
    let (first_link, second_link) = if r.fract() == 0.0 && r <= 4096.0 {
        rstar_links_exact(r as u32)
    } else {
        // r* - (r - r x) = r x^2 / (1 + x) >= 0 with x = 2^-r.
        let first = true;
        let second = log2_le(r.log2() - r, -(r + 1.0) / 2.0);
        (first, second)
    };
    Ok(RStar {
        r,
        gamma_star,
        r_star,
        first_link,
        second_link,
        gated: r >= 7.0,
    })
}

/// Both chain links for integer `r`, in exact rational arithmetic.
pub fn rstar_links_exact(r: u32) -> (bool, bool) {
    let rr = Scalar::from_integer(r as i64);
    let x = Scalar::from_bigints(BigInt::one(), BigInt::one() << r as usize).expect("nonzero");
    let r_star = &rr / (Scalar::one() + &x);
    let middle = &rr - &rr * &x;
    let first = r_star >= middle;
    // r 2^-r <= 2^(-(r+1)/2)  <=>  r^2 2^-2r <= 2^-(r+1)  <=>  r^2 <= 2^(r-1)
    let lhs = BigInt::from(r) * BigInt::from(r);
    let rhs = if r == 0 { BigInt::from(0) } else { BigInt::one() << (r - 1) as usize };
    (first, lhs <= rhs)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct R0Scan {
    /// Threshold for `rho e^(1-rho) <= 2^-rho / 4`.
    pub area: u32,
    /// Threshold for `e^(rho-3) / rho >= 2 * 2^rho`.
    pub strip: u32,
    /// Threshold for `r 2^-r <= 2^(-(r+1)/2)`.
    pub recurrence: u32,
    pub r0: u32,
}

/// Smallest integer from which `holds` is true for every integer up to
/// [`R0_SCAN_MAX`].
fn threshold(holds: impl Fn(f64) -> bool) -> u32 {
    let mut t = R0_SCAN_MAX + 1;
    for v in (1..=R0_SCAN_MAX).rev() {
        if holds(v as f64) {
            t = v;
        } else {
            break;
        }
    }
    t
}

/// Scans integers for the smallest `r0` at which each numeric step used by
/// the lemma and the recurrence holds from then on.
pub fn min_r0_scan() -> R0Scan {
    let area = threshold(|p| log2_le(p.log2() + (1.0 - p) * LOG2_E, -2.0 - p));
    let strip = threshold(|p| log2_le(1.0 + p, (p - 3.0) * LOG2_E - p.log2()));
    let recurrence = threshold(|r| log2_le(r.log2() - r, -(r + 1.0) / 2.0));
    R0Scan {
        area,
        strip,
        recurrence,
        r0: area.max(strip).max(recurrence),
    }
}

/// The scanned `r0` as a scalar.
pub fn default_r0() -> Scalar {
    static R0: OnceLock<u32> = OnceLock::new();
    Scalar::from_integer(*R0.get_or_init(|| min_r0_scan().r0) as i64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inst(text: &str) -> Instance {
        Instance::parse(text).unwrap()
    }

    #[test]
    fn hyperbola_examples() {
        let r = check_hyperbola(&Instance::origin_only());
        assert!(r.hyperbola_holds);
        let r = check_hyperbola(&inst("0 0\n1/2 1/2"));
        assert!(r.hyperbola_holds);
        // 3/4 <= 1/2 (1 + ln 2) ~ 0.8466
        assert!((0.5 * (1.0 + 2f64.ln()) - 0.846_573_590_279_972_6).abs() < 1e-12);
    }

    #[test]
    fn lemma_premise_gate() {
        let report = check_lemma(&decompose(&inst("0 0\n1/2 1/2")), &Scalar::from_integer(23));
        assert!(!report.premise_met);
        assert!(!report.strip_bound_holds);
        assert_eq!(report.failing_strip, Some(0));
        assert!(report.to_text().contains("strip_bound non-binding (false)"));
    }

    #[test]
    fn exact_area_bound_for_integer_rho() {
        // origin only: s = 1, rho = 1; 1 <= 1/8 is false, decided exactly.
        assert!(!area_bound_holds(&Scalar::one(), &Scalar::one()));
        assert!(area_bound_holds(&Scalar::ratio(1, 8), &Scalar::one()));
    }

    #[test]
    fn partition_synthetic() {
        let betas = [Scalar::ratio(1, 2), Scalar::ratio(2, 5), Scalar::ratio(1, 20)];
        let p = partition_betas(&betas, 0.3).unwrap();
        assert_eq!(p.first, vec![0]);
        assert_eq!(p.second, vec![1, 2]);
        assert_eq!(p.second_sum, Scalar::ratio(9, 20));
    }

    #[test]
    fn partition_accumulates_largest_first() {
        let betas: Vec<Scalar> = [3, 1, 4, 1, 5, 9, 2, 6].iter().map(|&v| Scalar::ratio(v, 40)).collect();
        let p = partition_betas(&betas, 0.3).unwrap();
        // 9/40 < 0.3, 9/40 + 6/40 = 15/40 >= 0.3
        assert_eq!(p.first, vec![5, 7]);
        assert_eq!(p.first_sum, Scalar::ratio(15, 40));
        assert_eq!(p.second_sum, Scalar::ratio(16, 40));
    }

    #[test]
    fn partition_single_strip_fails() {
        let dec = decompose(&inst("0 0\n1/2 1/2"));
        assert!(matches!(partition_indices(&dec, &Scalar::one()), Err(Error::PremiseNotMet(_))));
        assert!(partition_betas(&[Scalar::ratio(1, 2)], 0.3).is_err());
    }

    #[test]
    fn superadditivity_examples() {
        let r = check_superadditivity(&Instance::origin_only()).unwrap();
        assert_eq!((r.bob.clone(), r.estimate.clone()), (Scalar::one(), Scalar::one()));
        assert!(r.holds);
        let r = check_superadditivity(&inst("0 0\n1/2 1/2")).unwrap();
        assert_eq!(r.bob, Scalar::ratio(3, 4));
        assert_eq!(r.estimate, Scalar::ratio(3, 4));
    }

    #[test]
    fn gains_examples() {
        let g = gains_report(&inst("0 0\n1/2 1/2"), &Scalar::ratio(4, 3)).unwrap();
        assert_eq!(g.gamma, vec![Scalar::ratio(1, 4)]);
        assert_eq!(g.lhs, Scalar::ratio(1, 16));
        assert_eq!(g.rhs, Scalar::ratio(9, 16));
        assert!(g.binding() && g.holds);
        assert_eq!(g.status(), "holds");

        let g = gains_report(&inst("0 0\n1/2 1/2"), &Scalar::from_integer(1000)).unwrap();
        assert!(!g.binding());
        assert_eq!(g.status(), "non-binding");

        let g = gains_report(&Instance::origin_only(), &Scalar::one()).unwrap();
        assert_eq!(g.lhs, Scalar::zero());
        assert!(g.holds);
        assert!(gains_report(&Instance::origin_only(), &Scalar::zero()).is_err());
    }

    #[test]
    fn recurrence_examples() {
        let row = recurrence_iterate(8.0).unwrap();
        assert_eq!(row.t, 16);
        // decrements grow as the ratio falls: 16 * 2^-4.5 ~ 0.707 is only
        // the first-step estimate, the true total is ~0.803
        assert!(row.final_r >= 7.0 && row.final_r < 8.0 - 16.0 * (-4.5f64).exp2());
        assert!((row.final_r - 7.196_938_251_584_551).abs() < 1e-12);
        assert!(row.holds());
        let row = recurrence_iterate(2.0).unwrap();
        assert_eq!(row.t, 2);
        assert!(row.final_r >= 1.0);
        assert!(recurrence_iterate(1.5).is_err());
    }

    #[test]
    fn chunked_recurrence_is_a_lower_bound() {
        // just above the exact-iteration limit, compare with a direct loop
        let r = 44.5;
        let row = recurrence_iterate(r).unwrap();
        let mut c = r;
        for _ in 0..row.t {
            c -= decrement(c);
        }
        assert!(row.final_r <= c);
        assert!(c - row.final_r < 1e-3, "{} vs {}", row.final_r, c);
    }

    #[test]
    fn rstar_examples() {
        let v = rstar(8.0).unwrap();
        assert!((v.gamma_star - (2f64).powi(-8) / 8.0).abs() < 1e-15);
        assert!((v.r_star - 8.0 / (1.0 + (2f64).powi(-8))).abs() < 1e-12);
        assert!(v.r_star >= 8.0 - (-4.5f64).exp2());
        assert!(v.chain_holds() && v.gated);
        assert!(rstar(7.0).unwrap().chain_holds());
        let six = rstar(6.0).unwrap();
        assert!(six.first_link && !six.second_link && !six.gated);
        assert!(rstar(7.5).unwrap().chain_holds());
    }

    #[test]
    fn r0_scan_values() {
        let scan = min_r0_scan();
        assert_eq!(scan.recurrence, 7);
        assert_eq!(scan.area, 18);
        assert_eq!(scan.strip, 23);
        assert_eq!(scan.r0, 23);
        assert_eq!(default_r0(), Scalar::from_integer(23));
    }
}
