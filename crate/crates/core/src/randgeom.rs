//! Monte Carlo experiments on GOE matrices: characteristic-polynomial
//! moments, eigenvalue-gap probabilities, intersection counts of random
//! 2-planes with the discriminant, and restricted volume estimates.
//!
//! Samples are drawn in fixed-size batches; batch `b` uses the stream
//! `replica_rng(seed, b)` and batch statistics are merged in index order, so
//! reports are bit-identical for any rayon thread count.

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::exactform::{factorial, ClosedFormScalar};
use crate::polyhermite::{second_moment_integral, second_moment_poly};
use crate::rng::replica_rng;
use crate::symmat::{goe_sample, min_gap_of, SymmetricMatrix};

/// Samples per random stream.
pub const BATCH: u64 = 1024;
/// Density multiplier for re-running a suspicious 2-plane trial.
pub const REFINE_FACTOR: usize = 8;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MonteCarloReport {
    pub experiment: String,
    pub params: Map<String, Value>,
    pub estimate: f64,
    /// Sample standard deviation over `√n_samples`.
    pub std_error: f64,
    pub n_samples: u64,
    pub seed: u64,
    pub extras: Map<String, Value>,
}

impl MonteCarloReport {
    /// Whether `target` lies within `k` standard errors of the estimate.
    pub fn within(&self, target: f64, k: f64) -> bool {
        (self.estimate - target).abs() <= k * self.std_error
    }
}

fn object(v: Value) -> Map<String, Value> {
    match v {
        Value::Object(m) => m,
        _ => Map::new(),
    }
}

/// Running mean and sum of squared deviations (Welford), mergeable.
#[derive(Clone, Copy, Debug, Default)]
struct Stats {
    n: u64,
    mean: f64,
    m2: f64,
}

impl Stats {
    fn push(&mut self, x: f64) {
        self.n += 1;
        let d = x - self.mean;
        self.mean += d / self.n as f64;
        self.m2 += d * (x - self.mean);
    }

    fn merge(self, o: Stats) -> Stats {
        if self.n == 0 {
            return o;
        }
        if o.n == 0 {
            return self;
        }
        let n = self.n + o.n;
        let d = o.mean - self.mean;
        Stats {
            n,
            mean: self.mean + d * o.n as f64 / n as f64,
            m2: self.m2 + o.m2 + d * d * (self.n as f64 * o.n as f64) / n as f64,
        }
    }

    fn std_error(&self) -> f64 {
        if self.n < 2 {
            return f64::NAN;
        }
        (self.m2 / (self.n - 1) as f64).sqrt() / (self.n as f64).sqrt()
    }
}

/// Runs `f` on `n_samples` draws split into deterministic batches.
fn batched_stats<F>(n_samples: u64, seed: u64, f: F) -> Stats
where
    F: Fn(&mut rand_chacha::ChaCha8Rng) -> f64 + Sync,
{
    let batches = n_samples.div_ceil(BATCH);
    let parts: Vec<Stats> = (0..batches)
        .into_par_iter()
        .map(|b| {
            let mut rng = replica_rng(seed, b);
            let count = BATCH.min(n_samples - b * BATCH);
            let mut s = Stats::default();
            for _ in 0..count {
                s.push(f(&mut rng));
            }
            s
        })
        .collect();
    parts.into_iter().fold(Stats::default(), Stats::merge)
}

fn require_samples(n_samples: u64) -> Result<()> {
    if n_samples < 2 {
        return Err(Error::InvalidInput("at least two samples are needed".into()));
    }
    Ok(())
}

/// Gauss–Hermite rule for the weight `e^{−u²}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuadratureRule {
    /// Ascending.
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl QuadratureRule {
    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(&x, &w)| w * f(x)).sum()
    }
}

/// `m`-point Gauss–Hermite rule: Newton iteration on the orthonormal
/// Hermite recurrence from the usual asymptotic starting guesses.
pub fn gauss_hermite(m: usize) -> Result<QuadratureRule> {
    if !(1..=64).contains(&m) {
        return Err(Error::OutOfRange(format!("node count {m} is outside 1..=64")));
    }
    const PIM4: f64 = 0.751_125_544_464_942_5; // π^{-1/4}
    const MAX_IT: usize = 30;
    let mut x = vec![0.0; m];
    let mut w = vec![0.0; m];
    let mf = m as f64;
    let mut z = 0.0;
    for i in 0..m.div_ceil(2) {
        z = match i {
            0 => (2.0 * mf + 1.0).sqrt() - 1.85575 * (2.0 * mf + 1.0).powf(-0.16667),
            1 => z - 1.14 * mf.powf(0.426) / z,
            2 => 1.86 * z - 0.86 * x[0],
            3 => 1.91 * z - 0.91 * x[1],
            _ => 2.0 * z - x[i - 2],
        };
        let mut pp = 0.0;
        let mut converged = false;
        for _ in 0..MAX_IT {
            let (mut p1, mut p2) = (PIM4, 0.0);
            for j in 0..m {
                let p3 = p2;
                p2 = p1;
                let jf = j as f64;
                p1 = z * (2.0 / (jf + 1.0)).sqrt() * p2 - (jf / (jf + 1.0)).sqrt() * p3;
            }
            pp = (2.0 * mf).sqrt() * p2;
            let z1 = z;
            z = z1 - p1 / pp;
            if (z - z1).abs() <= 3e-14 * z.abs().max(1.0) {
                converged = true;
                break;
            }
        }
        if !converged {
            return Err(Error::NoConvergence {
                sweeps: MAX_IT,
                off_norm: z,
            });
        }
        x[i] = z;
        x[m - 1 - i] = -z;
        w[i] = 2.0 / (pp * pp);
        w[m - 1 - i] = w[i];
    }
    if m % 2 == 1 {
        x[m / 2] = 0.0;
    }
    x.reverse();
    w.reverse();
    Ok(QuadratureRule { nodes: x, weights: w })
}

/// `∏ (λ_i − u)²` for the eigenvalues of `Q`; the empty product is 1.
fn det_shift_sq(eig: &[f64], u: f64) -> f64 {
    eig.iter().map(|l| (l - u) * (l - u)).product()
}

/// Mean of `det(Q − u𝟙)²` over `Q ~ GOE(k)`.
pub fn mc_second_moment(k: usize, u: f64, n_samples: u64, seed: u64) -> Result<MonteCarloReport> {
    if k == 0 {
        return Err(Error::InvalidInput("matrix size k must be positive".into()));
    }
    require_samples(n_samples)?;
    let stats = batched_stats(n_samples, seed, |rng| {
        let q = goe_sample(k, rng);
        let eig = q.eigenvalues().expect("Jacobi converges on GOE samples");
        det_shift_sq(&eig, u)
    });
    let exact = second_moment_poly(k).eval_f64(u);
    Ok(MonteCarloReport {
        experiment: "second_moment".into(),
        params: object(json!({"k": k, "u": u})),
        estimate: stats.mean,
        std_error: stats.std_error(),
        n_samples,
        seed,
        extras: object(json!({"exact": exact})),
    })
}

/// `2^{n−1} / (√π · n!) · C(n,2) · ∫ E det(Q − u𝟙)² e^{−u²} du` with
/// `Q ~ GOE(n−2)`, exactly. For the discriminant this equals `C(n,2)`.
pub fn volume_identity_check(n: usize) -> Result<ClosedFormScalar> {
    if n < 2 {
        return Err(Error::InvalidInput("the identity needs n ≥ 2".into()));
    }
    Ok(volume_prefactor(n) * second_moment_integral(n - 2))
}

/// `2^{n−1} / (√π · n!) · C(n,2)`.
fn volume_prefactor(n: usize) -> ClosedFormScalar {
    let pairs = BigInt::from(n * (n - 1) / 2);
    let q = BigRational::new(BigInt::from(2).pow(n as u32 - 1) * pairs, factorial(n as u64));
    ClosedFormScalar::new(q, 0, -1)
}

/// Fraction of `GOE(n)` draws whose smallest eigenvalue gap is at most `eps`.
pub fn gap_probability(n: usize, eps: f64, n_samples: u64, seed: u64) -> Result<MonteCarloReport> {
    if n < 2 {
        return Err(Error::InvalidInput("gap probability needs n ≥ 2".into()));
    }
    if !(eps >= 0.0 && eps.is_finite()) {
        return Err(Error::InvalidInput(format!("eps must be a non-negative number, got {eps}")));
    }
    require_samples(n_samples)?;
    let stats = batched_stats(n_samples, seed, |rng| {
        let q = goe_sample(n, rng);
        let eig = q.eigenvalues().expect("Jacobi converges on GOE samples");
        if min_gap_of(&eig) <= eps {
            1.0
        } else {
            0.0
        }
    });
    let pairs = (n * (n - 1) / 2) as f64;
    let mut extras = object(json!({
        "bound": 0.25 * pairs * eps * eps,
        "ratio_to_eps_sq": if eps > 0.0 { stats.mean / (eps * eps) } else { 0.0 },
    }));
    if n == 2 {
        // GOE(2): gap² = (a−b)² + 4c² is twice a χ²₂ variable.
        extras.insert("exact".into(), json!(-(-eps * eps / 4.0).exp_m1()));
    }
    Ok(MonteCarloReport {
        experiment: "gap_probability".into(),
        params: object(json!({"n": n, "eps": eps})),
        estimate: stats.mean,
        std_error: stats.std_error(),
        n_samples,
        seed,
        extras,
    })
}

/// Tuning for the zero search on random 2-planes.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TwoPlaneConfig {
    /// Seed points on the sphere.
    pub grid_points: usize,
    /// A candidate is a zero once its eigenvalue gap is at most this.
    pub zero_tol: f64,
    /// Candidates stuck between `zero_tol` and this are unresolved.
    pub reject_ceiling: f64,
    /// Zeros closer than this (modulo antipodes) are merged.
    pub cluster_radius: f64,
    pub max_newton_steps: usize,
}

impl Default for TwoPlaneConfig {
    fn default() -> Self {
        Self {
            grid_points: 4000,
            zero_tol: 1e-7,
            reject_ceiling: 1e-4,
            cluster_radius: 1e-3,
            max_newton_steps: 60,
        }
    }
}

/// Outcome of one 2-plane trial.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TwoPlaneTrial {
    pub trial: u64,
    /// Distinct projective zeros found.
    pub count: usize,
    /// Candidates that stalled between the zero tolerance and the ceiling,
    /// away from every accepted zero.
    pub unresolved: usize,
    /// Unit representatives of the zeros.
    pub zeros: Vec<[f64; 3]>,
    /// Whether the trial was repeated on the dense grid.
    pub refined: bool,
}

/// Roughly uniform points on S² (golden-angle spiral).
pub fn fibonacci_sphere(m: usize) -> Vec<[f64; 3]> {
    let golden = std::f64::consts::PI * (3.0 - 5f64.sqrt());
    (0..m)
        .map(|i| {
            let z = 1.0 - 2.0 * (i as f64 + 0.5) / m as f64;
            let r = (1.0 - z * z).sqrt();
            let t = golden * i as f64;
            [r * t.cos(), r * t.sin(), z]
        })
        .collect()
}

/// Indices of the `k` nearest grid neighbours of every point of a
/// [`fibonacci_sphere`] grid. The spiral's `z` decreases with the index, so
/// only an index window needs searching.
fn neighbour_lists(grid: &[[f64; 3]], k: usize) -> Vec<Vec<usize>> {
    let m = grid.len();
    let spacing = (4.0 * std::f64::consts::PI / m as f64).sqrt();
    grid.par_iter()
        .enumerate()
        .map(|(i, p)| {
            let mut reach = 4.0 * spacing;
            loop {
                let window = ((reach * m as f64 / 2.0).ceil() as usize).max(k);
                let lo = i.saturating_sub(window);
                let hi = (i + window + 1).min(m);
                let mut d: Vec<(f64, usize)> = (lo..hi)
                    .filter(|&j| j != i)
                    .map(|j| (dist3(p, &grid[j]), j))
                    .filter(|&(dj, _)| dj <= reach)
                    .collect();
                if d.len() >= k || (lo == 0 && hi == m) {
                    d.sort_by(|a, b| a.0.total_cmp(&b.0));
                    return d.iter().take(k).map(|&(_, j)| j).collect();
                }
                reach *= 2.0;
            }
        })
        .collect()
}

fn dist3(a: &[f64; 3], b: &[f64; 3]) -> f64 {
    ((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2) + (a[2] - b[2]).powi(2)).sqrt()
}

fn normalize3(v: [f64; 3]) -> [f64; 3] {
    let r = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
    [v[0] / r, v[1] / r, v[2] / r]
}

/// Orthonormal basis of the tangent plane at unit `x`.
fn tangent_basis(x: &[f64; 3]) -> ([f64; 3], [f64; 3]) {
    let a = if x[0].abs() < 0.9 { [1.0, 0.0, 0.0] } else { [0.0, 1.0, 0.0] };
    let d = a[0] * x[0] + a[1] * x[1] + a[2] * x[2];
    let t1 = normalize3([a[0] - d * x[0], a[1] - d * x[1], a[2] - d * x[2]]);
    let t2 = [
        x[1] * t1[2] - x[2] * t1[1],
        x[2] * t1[0] - x[0] * t1[2],
        x[0] * t1[1] - x[1] * t1[0],
    ];
    (t1, t2)
}

/// Orthonormalises matrices under the Frobenius inner product.
fn gram_schmidt(mats: Vec<SymmetricMatrix>) -> Result<Vec<SymmetricMatrix>> {
    let mut out: Vec<SymmetricMatrix> = Vec::with_capacity(mats.len());
    for m in mats {
        let mut v = m;
        for e in &out {
            v = &v - &e.scale(v.inner(e));
        }
        let norm = v.frobenius_norm();
        if norm < 1e-12 {
            return Err(Error::DegenerateInput("linearly dependent plane basis".into()));
        }
        out.push(v.scale(norm.recip()));
    }
    Ok(out)
}

struct Plane {
    basis: Vec<SymmetricMatrix>,
}

impl Plane {
    fn at(&self, x: &[f64; 3]) -> SymmetricMatrix {
        let mut m = self.basis[0].scale(x[0]);
        m = &m + &self.basis[1].scale(x[1]);
        &m + &self.basis[2].scale(x[2])
    }

    fn pair_gap(&self, x: &[f64; 3], i: usize) -> f64 {
        let eig = self.at(x).eigenvalues().expect("Jacobi converges");
        eig[i] - eig[i + 1]
    }

    /// Damped Newton on the 2×2 degenerate-perturbation model of the
    /// eigenvalue pair `(i, i+1)`. Returns the final point and gap.
    fn refine(&self, x0: [f64; 3], i: usize, cfg: &TwoPlaneConfig) -> ([f64; 3], f64) {
        let mut x = x0;
        let mut gap = f64::INFINITY;
        for _ in 0..cfg.max_newton_steps {
            let sd = self.at(&x).eigendecompose().expect("Jacobi converges");
            gap = sd.eigenvalues[i] - sd.eigenvalues[i + 1];
            if gap <= cfg.zero_tol {
                break;
            }
            let vi = sd.eigenvector(i);
            let vj = sd.eigenvector(i + 1);
            let (t1, t2) = tangent_basis(&x);
            let mut jac = [[0.0; 2]; 2];
            for (col, t) in [t1, t2].iter().enumerate() {
                let b = self.at(t);
                jac[0][col] = quad(&b, &vi, &vi) - quad(&b, &vj, &vj);
                jac[1][col] = 2.0 * quad(&b, &vi, &vj);
            }
            let det = jac[0][0] * jac[1][1] - jac[0][1] * jac[1][0];
            if det.abs() < 1e-300 {
                break;
            }
            // Solve J d = (−gap, 0).
            let mut d = [-gap * jac[1][1] / det, gap * jac[1][0] / det];
            let len = (d[0] * d[0] + d[1] * d[1]).sqrt();
            if len > 0.5 {
                d = [d[0] * 0.5 / len, d[1] * 0.5 / len];
            }
            let mut alpha = 1.0;
            let mut moved = false;
            for _ in 0..20 {
                let cand = normalize3([
                    x[0] + alpha * (d[0] * t1[0] + d[1] * t2[0]),
                    x[1] + alpha * (d[0] * t1[1] + d[1] * t2[1]),
                    x[2] + alpha * (d[0] * t1[2] + d[1] * t2[2]),
                ]);
                if self.pair_gap(&cand, i) < gap {
                    x = cand;
                    moved = true;
                    break;
                }
                alpha *= 0.5;
            }
            if !moved {
                break;
            }
        }
        let gap = gap.min(self.pair_gap(&x, i));
        (x, gap)
    }
}

fn quad(b: &SymmetricMatrix, u: &[f64], v: &[f64]) -> f64 {
    let n = b.n();
    let mut s = 0.0;
    for r in 0..n {
        for c in 0..n {
            s += u[r] * b.get(r, c) * v[c];
        }
    }
    s
}

fn projective_distance(a: &[f64; 3], b: &[f64; 3]) -> f64 {
    dist3(a, b).min(dist3(a, &[-b[0], -b[1], -b[2]]))
}

/// One trial: a uniformly random 2-plane through three orthonormalised GOE
/// draws, and the distinct points of its projectivisation on the discriminant.
pub fn two_plane_trial(
    n: usize,
    trial: u64,
    seed: u64,
    cfg: &TwoPlaneConfig,
    grid: &[[f64; 3]],
    neighbours: &[Vec<usize>],
) -> Result<TwoPlaneTrial> {
    let mut rng = replica_rng(seed, trial);
    let draws: Vec<SymmetricMatrix> = (0..3).map(|_| goe_sample(n, &mut rng)).collect();
    let plane = Plane {
        basis: gram_schmidt(draws)?,
    };
    let eig_grid: Vec<Vec<f64>> = grid
        .iter()
        .map(|x| plane.at(x).eigenvalues().expect("Jacobi converges"))
        .collect();
    let mut zeros: Vec<[f64; 3]> = Vec::new();
    let mut stalled: Vec<[f64; 3]> = Vec::new();
    for i in 0..n - 1 {
        let gap_at = |p: usize| eig_grid[p][i] - eig_grid[p][i + 1];
        for p in 0..grid.len() {
            let g = gap_at(p);
            if neighbours[p].iter().any(|&q| gap_at(q) < g) {
                continue;
            }
            let (x, gap) = plane.refine(grid[p], i, cfg);
            if gap <= cfg.zero_tol {
                if zeros.iter().all(|z| projective_distance(z, &x) > cfg.cluster_radius) {
                    zeros.push(x);
                }
            } else if gap <= cfg.reject_ceiling {
                stalled.push(x);
            }
        }
    }
    // A stalled candidate near an accepted zero is the same zero, found slowly.
    let unresolved = stalled
        .iter()
        .filter(|s| zeros.iter().all(|z| projective_distance(z, s) > 10.0 * cfg.cluster_radius))
        .count();
    Ok(TwoPlaneTrial {
        trial,
        count: zeros.len(),
        unresolved,
        zeros,
        refined: false,
    })
}

/// Runs `trials` independent 2-plane trials in parallel (trial `t` uses
/// stream `t`).
///
/// A generic plane meets the complex discriminant in `C(n+1, 3)` points and
/// non-real ones pair up, so a real count of the wrong parity, or above that
/// degree, means a zero was missed or duplicated; such trials are repeated
/// on a grid `REFINE_FACTOR` times denser.
pub fn two_plane_trials(n: usize, trials: u64, seed: u64, cfg: &TwoPlaneConfig) -> Result<Vec<TwoPlaneTrial>> {
    if n < 3 {
        return Err(Error::InvalidInput("2-plane counts need n ≥ 3".into()));
    }
    if cfg.grid_points < 4 {
        return Err(Error::InvalidInput("the seed grid needs at least 4 points".into()));
    }
    let degree = (n + 1) * n * (n - 1) / 6;
    let grid = fibonacci_sphere(cfg.grid_points);
    let neighbours = neighbour_lists(&grid, 8);
    let dense: OnceLock<(Vec<[f64; 3]>, Vec<Vec<usize>>)> = OnceLock::new();
    (0..trials)
        .into_par_iter()
        .map(|t| {
            let first = two_plane_trial(n, t, seed, cfg, &grid, &neighbours)?;
            if first.count % 2 == degree % 2 && first.count <= degree {
                return Ok(first);
            }
            let (g, nb) = dense.get_or_init(|| {
                let g = fibonacci_sphere(cfg.grid_points * REFINE_FACTOR);
                let nb = neighbour_lists(&g, 8);
                (g, nb)
            });
            let mut second = two_plane_trial(n, t, seed, cfg, g, nb)?;
            second.refined = true;
            Ok(second)
        })
        .collect()
}

/// Mean number of points in which a random projective 2-plane meets the
/// discriminant. Trials with unresolved candidates are excluded from the
/// mean and listed in `extras`.
pub fn two_plane_count(n: usize, trials: u64, seed: u64, cfg: &TwoPlaneConfig) -> Result<(MonteCarloReport, Vec<TwoPlaneTrial>)> {
    let outcomes = two_plane_trials(n, trials, seed, cfg)?;
    let mut stats = Stats::default();
    let mut unresolved_trials = Vec::new();
    for o in &outcomes {
        if o.unresolved > 0 {
            unresolved_trials.push(o.trial);
        } else {
            stats.push(o.count as f64);
        }
    }
    let counts: Vec<usize> = outcomes.iter().map(|o| o.count).collect();
    let max = counts.iter().copied().max().unwrap_or(0);
    let mut histogram = vec![0u64; max + 1];
    for &c in &counts {
        histogram[c] += 1;
    }
    let mut extras = object(json!({
        "expected": n * (n - 1) / 2,
        "max_count": max,
        "histogram": histogram,
        "unresolved_trials": unresolved_trials,
        "refined_trials": outcomes.iter().filter(|o| o.refined).map(|o| o.trial).collect::<Vec<_>>(),
        "counts": counts,
    }));
    if n == 3 {
        let anomalies: Vec<u64> = outcomes.iter().filter(|o| o.count > 4).map(|o| o.trial).collect();
        extras.insert("anomalies".into(), json!(anomalies));
    }
    let report = MonteCarloReport {
        experiment: "two_plane_count".into(),
        params: object(json!({"n": n, "trials": trials, "config": cfg})),
        estimate: stats.mean,
        std_error: stats.std_error(),
        n_samples: stats.n,
        seed,
        extras,
    };
    Ok((report, outcomes))
}

/// Per-trial counts as CSV.
pub fn two_plane_csv(outcomes: &[TwoPlaneTrial]) -> String {
    let mut s = String::from("trial,count,unresolved\n");
    for o in outcomes {
        s.push_str(&format!("{},{},{}\n", o.trial, o.count, o.unresolved));
    }
    s
}

/// Estimate of the part of the discriminant volume (relative to the sphere)
/// where the repeated eigenvalue has exactly `config − 1` eigenvalues below
/// it: `c_n ∫ E[det(Q − u𝟙)² 1{#eig(Q) < u = config − 1}] e^{−u²} du`,
/// `Q ~ GOE(n−2)`, with the `u`-integral done by `m`-point Gauss–Hermite.
pub fn restricted_volume_estimate(
    n: usize,
    config: usize,
    n_samples: u64,
    quadrature_m: usize,
    seed: u64,
) -> Result<MonteCarloReport> {
    if n < 3 {
        return Err(Error::InvalidInput("restricted volumes need n ≥ 3".into()));
    }
    if !(1..n).contains(&config) {
        return Err(Error::OutOfRange(format!("configuration {config} is outside 1..={}", n - 1)));
    }
    require_samples(n_samples)?;
    let rule = gauss_hermite(quadrature_m)?;
    let c = volume_prefactor(n).to_f64();
    let stats = batched_stats(n_samples, seed, |rng| {
        let q = goe_sample(n - 2, rng);
        let eig = q.eigenvalues().expect("Jacobi converges on GOE samples");
        rule.integrate(|u| {
            let below = eig.iter().filter(|&&l| l < u).count();
            if below == config - 1 {
                det_shift_sq(&eig, u)
            } else {
                0.0
            }
        })
    });
    Ok(MonteCarloReport {
        experiment: "restricted_volume".into(),
        params: object(json!({"n": n, "config": config, "quadrature_m": quadrature_m})),
        estimate: c * stats.mean,
        std_error: c * stats.std_error(),
        n_samples,
        seed,
        extras: object(json!({"total": n * (n - 1) / 2})),
    })
}
