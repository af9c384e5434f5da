//! Nearest points on the discriminant and on its strata.
//!
//! For generic `A = Cᵀ Λ C`, the critical points of the distance from `A` to
//! the closure of a stratum are `Cᵀ Λ̃ C`, where `Λ̃` is the orthogonal
//! projection of `Λ` onto one plane `{λ constant on the blocks of P}`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::strata::{enumerate_partitions_of_type, group_eigenvalues, MultiplicityVector, SetPartition};
use crate::symmat::{SpectralDecomposition, SymmetricMatrix};

/// Inputs whose smallest eigenvalue gap is at most this multiple of
/// `1 + ‖A‖_F` are rejected as non-generic.
pub const GAP_REL_TOL: f64 = 1e-6;
/// Two critical distances closer than this are a tie for the minimum.
pub const TIE_TOL: f64 = 1e-9;

/// Genericity thresholds; the defaults are [`GAP_REL_TOL`] and [`TIE_TOL`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    pub gap_rel: f64,
    pub tie: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            gap_rel: GAP_REL_TOL,
            tie: TIE_TOL,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CriticalPoint {
    /// Blocks of eigenvalue positions (descending order) that were merged.
    pub partition: SetPartition,
    pub distance: f64,
    pub matrix: SymmetricMatrix,
    #[serde(rename = "global_min")]
    pub is_global_min: bool,
    /// Set when distinct blocks landed on the same mean, i.e. the point sits
    /// in a smaller stratum than requested.
    pub degenerate: bool,
}

/// Replaces the entries of each block of `p` by the block mean.
pub fn project_eigenvalues(lambda: &[f64], p: &SetPartition) -> Result<Vec<f64>> {
    if lambda.len() != p.n() {
        return Err(Error::InvalidInput(format!(
            "{} eigenvalues but the partition is of {{1..{}}}",
            lambda.len(),
            p.n()
        )));
    }
    let mut out = lambda.to_vec();
    for block in p.blocks() {
        let mean = block.iter().map(|&i| lambda[i]).sum::<f64>() / block.len() as f64;
        for &i in block {
            out[i] = mean;
        }
    }
    Ok(out)
}

fn generic_decomposition(a: &SymmetricMatrix, tols: &Tolerances) -> Result<SpectralDecomposition> {
    let sd = a.eigendecompose()?;
    let tol = tols.gap_rel * (1.0 + a.frobenius_norm());
    if let Some(w) = sd.eigenvalues.windows(2).find(|w| w[0] - w[1] <= tol) {
        return Err(Error::DegenerateInput(format!(
            "eigenvalues {} and {} are closer than {tol:e}",
            w[0], w[1]
        )));
    }
    Ok(sd)
}

fn check_stratum(a: &SymmetricMatrix, w: &MultiplicityVector) -> Result<()> {
    if w.n() != a.n() {
        return Err(Error::InvalidInput(format!(
            "multiplicity vector {w} does not fit a {0}×{0} matrix",
            a.n()
        )));
    }
    if !w.is_proper() {
        return Err(Error::InvalidInput(format!("{w} is not a proper stratum")));
    }
    Ok(())
}

fn block_means_collide(mu: &[f64], p: &SetPartition, tol: f64) -> bool {
    let means: Vec<f64> = p.blocks().iter().map(|b| mu[b[0]]).collect();
    (0..means.len()).any(|i| (i + 1..means.len()).any(|j| (means[i] - means[j]).abs() <= tol))
}

/// Flags the unique minimum, or fails if the two smallest distances tie.
fn mark_global_min(points: &mut [CriticalPoint], tie: f64) -> Result<()> {
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&i, &j| points[i].distance.total_cmp(&points[j].distance));
    if order.len() >= 2 {
        let (d0, d1) = (points[order[0]].distance, points[order[1]].distance);
        if d1 - d0 <= tie {
            return Err(Error::DegenerateInput(format!(
                "critical points {} and {} tie at distance {d0}",
                points[order[0]].partition, points[order[1]].partition
            )));
        }
    }
    if let Some(&best) = order.first() {
        points[best].is_global_min = true;
    }
    Ok(())
}

/// All critical points of the distance from generic `a` to the closure of
/// the stratum of type `w`, in canonical partition order.
pub fn critical_points(a: &SymmetricMatrix, w: &MultiplicityVector) -> Result<Vec<CriticalPoint>> {
    critical_points_with(a, w, &Tolerances::default())
}

pub fn critical_points_with(
    a: &SymmetricMatrix,
    w: &MultiplicityVector,
    tols: &Tolerances,
) -> Result<Vec<CriticalPoint>> {
    check_stratum(a, w)?;
    let sd = generic_decomposition(a, tols)?;
    let lambda = &sd.eigenvalues;
    let tol = tols.gap_rel * (1.0 + a.frobenius_norm());
    let mut points: Vec<CriticalPoint> = enumerate_partitions_of_type(w)
        .into_par_iter()
        .map(|p| {
            let mu = project_eigenvalues(lambda, &p).expect("partition matches n");
            let distance = lambda
                .iter()
                .zip(&mu)
                .map(|(l, m)| (l - m) * (l - m))
                .sum::<f64>()
                .sqrt();
            CriticalPoint {
                degenerate: block_means_collide(&mu, &p, tol),
                matrix: sd.with_eigenvalues(&mu),
                partition: p,
                distance,
                is_global_min: false,
            }
        })
        .collect();
    mark_global_min(&mut points, tols.tie)?;
    Ok(points)
}

/// The point of the discriminant closest to generic `a`: merge the closest
/// pair of eigenvalues. Its distance is `min |λ_i − λ_j| / √2`.
pub fn nearest_in_discriminant(a: &SymmetricMatrix) -> Result<CriticalPoint> {
    nearest_in_discriminant_with(a, &Tolerances::default())
}

pub fn nearest_in_discriminant_with(a: &SymmetricMatrix, tols: &Tolerances) -> Result<CriticalPoint> {
    let n = a.n();
    if n < 2 {
        return Err(Error::InvalidInput("the discriminant is empty for n < 2".into()));
    }
    let sd = generic_decomposition(a, tols)?;
    let (i, gap) = closest_adjacent_pair(&sd.eigenvalues, tols.tie)?;
    let mu = pair_merged(&sd.eigenvalues, i);
    Ok(CriticalPoint {
        partition: pair_partition(n, i),
        distance: gap / std::f64::consts::SQRT_2,
        matrix: sd.with_eigenvalues(&mu),
        is_global_min: true,
        degenerate: false,
    })
}

/// Nearest point of the discriminant to a unit-norm `a` in the geodesic
/// distance of the unit sphere: `arcsin(min |λ_i − λ_j| / √2)`.
pub fn spherical_nearest(a: &SymmetricMatrix) -> Result<CriticalPoint> {
    spherical_nearest_with(a, &Tolerances::default())
}

pub fn spherical_nearest_with(a: &SymmetricMatrix, tols: &Tolerances) -> Result<CriticalPoint> {
    let n = a.n();
    if n < 2 {
        return Err(Error::InvalidInput("the discriminant is empty for n < 2".into()));
    }
    let norm = a.frobenius_norm();
    if (norm - 1.0).abs() > 1e-10 {
        return Err(Error::InvalidInput(format!(
            "spherical distance needs ‖A‖_F = 1, got {norm}"
        )));
    }
    let sd = generic_decomposition(a, tols)?;
    let (i, gap) = closest_adjacent_pair(&sd.eigenvalues, tols.tie)?;
    let s = gap / std::f64::consts::SQRT_2;
    if s > 1.0 + 1e-12 {
        return Err(Error::OutOfRange(format!(
            "|λ_i − λ_j|/√2 = {s} exceeds 1 for the closest pair"
        )));
    }
    let residual_sq = 1.0 - s * s;
    let matrix = if residual_sq <= 1e-12 {
        // Λ̃ vanishes; every unit point of the merged plane is equally close.
        let mut e = vec![0.0; n];
        e[i] = std::f64::consts::FRAC_1_SQRT_2;
        e[i + 1] = std::f64::consts::FRAC_1_SQRT_2;
        sd.with_eigenvalues(&e)
    } else {
        let mu = pair_merged(&sd.eigenvalues, i);
        sd.with_eigenvalues(&mu).scale(residual_sq.sqrt().recip())
    };
    Ok(CriticalPoint {
        partition: pair_partition(n, i),
        distance: s.min(1.0).asin(),
        matrix,
        is_global_min: true,
        degenerate: false,
    })
}

fn closest_adjacent_pair(lambda: &[f64], tie: f64) -> Result<(usize, f64)> {
    let mut gaps: Vec<(usize, f64)> = lambda.windows(2).map(|w| w[0] - w[1]).enumerate().collect();
    gaps.sort_by(|x, y| x.1.total_cmp(&y.1));
    if gaps.len() >= 2 && (gaps[1].1 - gaps[0].1) / std::f64::consts::SQRT_2 <= tie {
        return Err(Error::DegenerateInput(format!(
            "eigenvalue pairs ({}, {}) and ({}, {}) are equally close",
            gaps[0].0 + 1,
            gaps[0].0 + 2,
            gaps[1].0 + 1,
            gaps[1].0 + 2
        )));
    }
    Ok(gaps[0])
}

fn pair_merged(lambda: &[f64], i: usize) -> Vec<f64> {
    let mut mu = lambda.to_vec();
    let mean = 0.5 * (lambda[i] + lambda[i + 1]);
    mu[i] = mean;
    mu[i + 1] = mean;
    mu
}

fn pair_partition(n: usize, i: usize) -> SetPartition {
    let blocks = (0..n)
        .filter(|&k| k != i + 1)
        .map(|k| if k == i { vec![i, i + 1] } else { vec![k] })
        .collect();
    SetPartition::new(n, blocks).expect("valid pair partition")
}

/// Largest normalised inner product between `A − Ã` and a spanning set of
/// the tangent space of the stratum at `Ã`; zero for a critical point.
///
/// In the eigenframe `u_1, …, u_n` of `Ã` the tangent space is spanned by
/// block-constant diagonals `Σ_{k∈B} u_k u_kᵀ` and by the commutators
/// `[v, Ã]`, `v` skew, which are multiples of `u_k u_lᵀ + u_l u_kᵀ` for `k`, `l`
/// in different blocks.
pub fn verify_criticality(a: &SymmetricMatrix, cp: &CriticalPoint, w: &MultiplicityVector) -> Result<f64> {
    check_stratum(a, w)?;
    let r = a - &cp.matrix;
    let r_norm = r.frobenius_norm();
    if r_norm <= 1e-14 * (1.0 + a.frobenius_norm()) {
        return Ok(0.0);
    }
    let sd = cp.matrix.eigendecompose()?;
    let blocks = stratum_blocks(&sd.eigenvalues, w, cp.matrix.frobenius_norm());
    let c = &sd.rotation;
    let rf = c * r.to_dense() * c.transpose();
    let mut worst: f64 = 0.0;
    for b in &blocks {
        let ip: f64 = b.iter().map(|&k| rf[(k, k)]).sum();
        worst = worst.max(ip.abs() / (b.len() as f64).sqrt());
    }
    let mut block_of = vec![0; sd.n()];
    for (bi, b) in blocks.iter().enumerate() {
        for &k in b {
            block_of[k] = bi;
        }
    }
    for k in 0..sd.n() {
        for l in k + 1..sd.n() {
            if block_of[k] != block_of[l] {
                worst = worst.max((2.0 * rf[(k, l)]).abs() / std::f64::consts::SQRT_2);
            }
        }
    }
    Ok(worst / r_norm)
}

/// Blocks of equal eigenvalues of a point on the stratum of type `w`: runs
/// are split at the largest gaps until the block count matches `w`.
fn stratum_blocks(mu: &[f64], w: &MultiplicityVector, norm: f64) -> Vec<Vec<usize>> {
    let detected = group_eigenvalues(mu, 1e-8 * (1.0 + norm));
    if detected.len() == w.num_blocks() || mu.len() < 2 {
        return detected;
    }
    let mut cuts: Vec<usize> = (0..mu.len() - 1).collect();
    cuts.sort_by(|&x, &y| (mu[y] - mu[y + 1]).total_cmp(&(mu[x] - mu[x + 1])));
    let mut chosen: Vec<usize> = cuts.into_iter().take(w.num_blocks() - 1).collect();
    chosen.sort_unstable();
    let mut blocks = Vec::new();
    let mut start = 0;
    for c in chosen {
        blocks.push((start..=c).collect());
        start = c + 1;
    }
    blocks.push((start..mu.len()).collect());
    blocks
}
