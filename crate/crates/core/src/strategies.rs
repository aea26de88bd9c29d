//! Instance generators and a local search for point sets that leave Bob little.

use std::fmt::Write as _;

use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::model::{Instance, Point};
use crate::scalar::Scalar;
use crate::solver::{exact_bob, DEFAULT_MAX_POINTS, DEFAULT_NODE_BUDGET};

/// Lattice used by random generation and search perturbations.
pub const LATTICE_BITS: u32 = 24;
const LATTICE: u64 = 1 << LATTICE_BITS;

pub const GRID_CASE_MAX_N: usize = 6;

fn lattice_scalar(k: u64) -> Scalar {
    Scalar::ratio(k as i64, LATTICE as i64)
}

/// `n` equally spaced points `(i/n, i/n)`, `i = 0..n-1`.
pub fn diagonal_instance(n: usize) -> Result<Instance> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    let pts = (0..n)
        .map(|i| {
            let c = Scalar::ratio(i as i64, n as i64);
            Point::new(c.clone(), c)
        })
        .collect::<Result<_>>()?;
    Instance::new(pts)
}

/// `{(0,0)} ∪ {(i/n, pi(i)/n) : i = 1..n-1}`, where `pi[i-1]` is the image of `i`.
pub fn grid_instance(n: usize, pi: &[usize]) -> Result<Instance> {
    if n == 0 || pi.len() != n - 1 {
        return Err(Error::NotPermutation(n.saturating_sub(1)));
    }
    let mut seen = vec![false; n];
    for &v in pi {
        if v == 0 || v >= n || seen[v] {
            return Err(Error::NotPermutation(n - 1));
        }
        seen[v] = true;
    }
    let mut pts = vec![Point::origin()];
    for (i, &v) in pi.iter().enumerate() {
        pts.push(Point::new(
            Scalar::ratio(i as i64 + 1, n as i64),
            Scalar::ratio(v as i64, n as i64),
        )?);
    }
    Instance::new(pts)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridCaseResult {
    pub best_pi: Vec<usize>,
    pub min_value: Scalar,
    pub permutations: usize,
}

/// Minimum of Bob's optimum over all grid instances of size `n`. Ties are
/// broken toward the lexicographically smallest permutation.
pub fn grid_case_exhaustive(n: usize) -> Result<GridCaseResult> {
    if n == 0 || n > GRID_CASE_MAX_N {
        return Err(Error::TooLarge {
            points: n,
            limit: GRID_CASE_MAX_N,
        });
    }
    let perms: Vec<Vec<usize>> = (1..n).permutations(n - 1).collect();
    let values = perms
        .par_iter()
        .map(|pi| {
            let r = exact_bob(&grid_instance(n, pi)?, DEFAULT_NODE_BUDGET)?;
            debug_assert!(r.optimal);
            Ok(r.value)
        })
        .collect::<Result<Vec<Scalar>>>()?;
    let (idx, min_value) = values
        .into_iter()
        .enumerate()
        .min_by(|a, b| a.1.cmp(&b.1).then(a.0.cmp(&b.0)))
        .expect("at least one permutation");
    Ok(GridCaseResult {
        best_pi: perms[idx].clone(),
        min_value,
        permutations: perms.len(),
    })
}

/// The origin plus `n - 1` distinct points on the `2^-24` lattice.
pub fn random_instance(n: usize, seed: u64) -> Result<Instance> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pts = vec![Point::origin()];
    while pts.len() < n {
        let p = Point::new(
            lattice_scalar(rng.gen_range(0..=LATTICE)),
            lattice_scalar(rng.gen_range(0..=LATTICE)),
        )?;
        if !pts.contains(&p) {
            pts.push(p);
        }
    }
    Instance::new(pts)
}

/// The origin plus `k` points on the hyperbola `xy = alpha_target`, spaced
/// geometrically: `x_i = alpha^((k-i)/k)`, `y_i = alpha^(i/k)`, `i = 1..k`.
/// Coordinates are rounded down to a dyadic lattice fine enough for the
/// smallest coordinate; the output is checked to be an antichain, so all
/// `k` points are minima.
pub fn hyperbola_instance(k: usize, alpha_target: &Scalar) -> Result<Instance> {
    if k < 2 {
        return Err(Error::InvalidArgument("k must be at least 2".into()));
    }
    if !alpha_target.is_positive() || *alpha_target >= Scalar::one() {
        return Err(Error::InvalidArgument("alpha_target must lie in (0, 1)".into()));
    }
    let log2_alpha = alpha_target.log2_abs();
    let bits = (-log2_alpha).ceil() as u32 + 48;
    let mut pts = vec![Point::origin()];
    for i in 1..=k {
        let x = (log2_alpha * (k - i) as f64 / k as f64).exp2();
        let y = (log2_alpha * i as f64 / k as f64).exp2();
        let p = Point::new(Scalar::floor_dyadic(x, bits), Scalar::floor_dyadic(y, bits))?;
        if let Some(prev) = pts.last().filter(|q| !q.is_origin()) {
            if p.x <= prev.x || p.y >= prev.y {
                return Err(Error::RoundingCollision(i));
            }
        }
        if p.x.is_zero() || p.y.is_zero() {
            return Err(Error::RoundingCollision(i));
        }
        pts.push(p);
    }
    Instance::new(pts)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    pub n: usize,
    pub iterations: usize,
    pub seed: u64,
    /// Perturbation radius per coordinate.
    pub step: Scalar,
    pub restarts: usize,
}

impl SearchConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n == 0 || self.n > DEFAULT_MAX_POINTS {
            return Err(Error::TooLarge {
                points: self.n,
                limit: DEFAULT_MAX_POINTS,
            });
        }
        if self.iterations == 0 || self.restarts == 0 {
            return Err(Error::InvalidArgument("iterations and restarts must be positive".into()));
        }
        if !self.step.is_positive() || self.step >= Scalar::one() {
            return Err(Error::InvalidArgument("step must lie in (0, 1)".into()));
        }
        Ok(())
    }

    fn header(&self) -> String {
        format!(
            "# search n={} iters={} seed={} step={} restarts={}\n",
            self.n, self.iterations, self.seed, self.step, self.restarts
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchResult {
    pub best_instance: Instance,
    pub best_value: Scalar,
    /// `(iteration, value)` at the start and after every accepted move of
    /// the winning restart.
    pub trace: Vec<(usize, Scalar)>,
    pub restart: usize,
}

impl SearchResult {
    pub fn instance_file(&self, cfg: &SearchConfig) -> String {
        let mut out = cfg.header();
        writeln!(out, "# value {}", self.best_value.with_decimal()).unwrap();
        out.push_str(&self.best_instance.to_text());
        out
    }

    pub fn trace_file(&self, cfg: &SearchConfig) -> String {
        let mut out = cfg.header();
        for (it, v) in &self.trace {
            writeln!(out, "{it} {v}").unwrap();
        }
        out
    }
}

fn solve_value(inst: &Instance) -> Result<Option<Scalar>> {
    let r = exact_bob(inst, DEFAULT_NODE_BUDGET)?;
    Ok(r.optimal.then_some(r.value))
}

fn snap(v: f64) -> u64 {
    (v.clamp(0.0, 1.0) * LATTICE as f64).round() as u64
}

fn descend(cfg: &SearchConfig, restart: usize) -> Result<SearchResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(restart as u64);
    let step = cfg.step.to_f64();

    let mut current = diagonal_instance(cfg.n)?;
    let mut value = solve_value(&current)?.expect("diagonal solves within budget");
    let mut trace = vec![(0, value.clone())];
    if cfg.n == 1 {
        return Ok(SearchResult {
            best_instance: current,
            best_value: value,
            trace,
            restart,
        });
    }
    for it in 1..=cfg.iterations {
        let idx = rng.gen_range(1..cfg.n);
        let dx = rng.gen_range(-step..=step);
        let dy = rng.gen_range(-step..=step);
        let old = &current.points()[idx];
        let moved = Point::new(
            lattice_scalar(snap(old.x.to_f64() + dx)),
            lattice_scalar(snap(old.y.to_f64() + dy)),
        )?;
        if current.contains(&moved) {
            continue;
        }
        let mut pts = current.points().to_vec();
        pts[idx] = moved;
        let candidate = Instance::new(pts)?;
        if let Some(v) = solve_value(&candidate)? {
            if v < value {
                value = v;
                current = candidate;
                trace.push((it, value.clone()));
            }
        }
    }
    Ok(SearchResult {
        best_instance: current,
        best_value: value,
        trace,
        restart,
    })
}

/// Hill descent from the diagonal instance: move one non-origin point per
/// iteration by at most `step` in each coordinate, snapped to the lattice,
/// and keep the move iff the exact optimum drops. Restarts use independent
/// random streams and run in parallel; the winner is the lowest value, then
/// the lexicographically smallest instance.
pub fn search_alice(cfg: &SearchConfig) -> Result<SearchResult> {
    cfg.validate()?;
    let runs = (0..cfg.restarts)
        .into_par_iter()
        .map(|r| descend(cfg, r))
        .collect::<Result<Vec<_>>>()?;
    Ok(runs
        .into_iter()
        .min_by(|a, b| {
            a.best_value
                .cmp(&b.best_value)
                .then_with(|| a.best_instance.sorted_points().cmp(&b.best_instance.sorted_points()))
        })
        .expect("restarts >= 1"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::staircase::{minima, staircase_metrics};

    #[test]
    fn diagonal_examples() {
        assert_eq!(diagonal_instance(1).unwrap(), Instance::origin_only());
        assert_eq!(
            diagonal_instance(2).unwrap(),
            Instance::parse("0 0\n1/2 1/2").unwrap()
        );
        assert_eq!(diagonal_instance(4).unwrap().len(), 4);
        assert!(diagonal_instance(0).is_err());
    }

    #[test]
    fn grid_examples() {
        assert_eq!(grid_instance(2, &[1]).unwrap(), diagonal_instance(2).unwrap());
        let anti = grid_instance(4, &[3, 2, 1]).unwrap();
        assert_eq!(anti.len(), 4);
        assert_eq!(anti.points()[1], Point::ratio((1, 4), (3, 4)).unwrap());
        assert!(matches!(grid_instance(4, &[1, 1, 2]), Err(Error::NotPermutation(3))));
        assert!(grid_instance(4, &[1, 2]).is_err());
        assert!(grid_instance(4, &[0, 1, 2]).is_err());
    }

    #[test]
    fn grid_case_small() {
        let r = grid_case_exhaustive(2).unwrap();
        assert_eq!((r.best_pi, r.min_value), (vec![1], Scalar::ratio(3, 4)));
        let r = grid_case_exhaustive(3).unwrap();
        assert_eq!(r.min_value, Scalar::ratio(2, 3));
        assert!(grid_case_exhaustive(7).is_err());
    }

    #[test]
    fn random_instances() {
        assert_eq!(random_instance(1, 5).unwrap(), Instance::origin_only());
        assert_eq!(random_instance(5, 42).unwrap(), random_instance(5, 42).unwrap());
        assert_ne!(random_instance(5, 42).unwrap(), random_instance(5, 43).unwrap());
        let inst = random_instance(5, 42).unwrap();
        assert_eq!(inst.len(), 5);
        let lattice = Scalar::from_integer(LATTICE as i64);
        for p in inst.points() {
            assert!((&p.x * &lattice).is_integer() && (&p.y * &lattice).is_integer());
        }
    }

    #[test]
    fn hyperbola_two_points() {
        let inst = hyperbola_instance(2, &Scalar::ratio(1, 4)).unwrap();
        assert_eq!(
            inst.points()[1..],
            [Point::ratio((1, 2), (1, 2)).unwrap(), Point::ratio((1, 1), (1, 4)).unwrap()]
        );
        assert_eq!(minima(&inst).len(), 2);
    }

    #[test]
    fn hyperbola_rho_matches_closed_form() {
        // rho = 1 + (k - 1)(1 - alpha^(1/k)) for the ideal geometric staircase.
        for (k, alpha) in [(4usize, 0.01f64), (16, 1e-4), (64, (-25f64).exp())] {
            let a = Scalar::floor_dyadic(alpha, 60);
            let inst = hyperbola_instance(k, &a).unwrap();
            assert_eq!(minima(&inst).len(), k);
            let rho = staircase_metrics(&inst).rho.to_f64();
            let ideal = 1.0 + (k as f64 - 1.0) * (1.0 - alpha.powf(1.0 / k as f64));
            assert!((rho - ideal).abs() < 1e-6, "k={k}: rho {rho} vs {ideal}");
        }
    }

    #[test]
    fn hyperbola_argument_checks() {
        assert!(hyperbola_instance(1, &Scalar::ratio(1, 4)).is_err());
        assert!(hyperbola_instance(3, &Scalar::one()).is_err());
        assert!(hyperbola_instance(3, &Scalar::zero()).is_err());
    }

    #[test]
    fn search_trivial_and_monotone() {
        let cfg = SearchConfig {
            n: 1,
            iterations: 10,
            seed: 3,
            step: Scalar::ratio(1, 10),
            restarts: 2,
        };
        let r = search_alice(&cfg).unwrap();
        assert_eq!(r.best_value, Scalar::one());

        let cfg = SearchConfig { n: 3, iterations: 60, ..cfg };
        let r = search_alice(&cfg).unwrap();
        assert!(r.best_value <= Scalar::ratio(2, 3));
        assert!(r.trace.windows(2).all(|w| w[1].1 <= w[0].1 && w[1].0 > w[0].0));
        assert_eq!(r.trace.last().unwrap().1, r.best_value);
        assert_eq!(search_alice(&cfg).unwrap(), r);
    }

    #[test]
    fn search_config_validation() {
        let good = SearchConfig {
            n: 3,
            iterations: 1,
            seed: 0,
            step: Scalar::ratio(1, 10),
            restarts: 1,
        };
        assert!(good.validate().is_ok());
        assert!(SearchConfig { n: 0, ..good.clone() }.validate().is_err());
        assert!(SearchConfig { iterations: 0, ..good.clone() }.validate().is_err());
        assert!(SearchConfig { step: Scalar::one(), ..good.clone() }.validate().is_err());
        assert!(SearchConfig { n: 9, ..good }.validate().is_err());
    }
}
