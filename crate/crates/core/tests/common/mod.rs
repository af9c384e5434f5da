//! Independent oracles shared by the integration tests. Nothing here calls
//! the solvers it is used to check.

#![allow(dead_code)]

use std::collections::BTreeMap;

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;
use rand_distr::StandardNormal;
use symdisc_core::SymmetricMatrix;

/// All set partitions of `{0..n}` as restricted growth strings.
pub fn all_set_partitions(n: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, cur: &mut Vec<usize>, max: usize, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for b in 0..=max + 1 {
            cur.push(b);
            rec(n, cur, max.max(b), out);
            cur.pop();
        }
    }
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    rec(n, &mut vec![0], 0, &mut out);
    out
}

/// Number of set partitions of `{0..n}` keyed by type vector `w`.
pub fn partition_counts_by_type(n: usize) -> BTreeMap<Vec<usize>, u64> {
    let mut counts = BTreeMap::new();
    for rgs in all_set_partitions(n) {
        let blocks = rgs.iter().copied().max().map_or(0, |m| m + 1);
        let mut sizes = vec![0usize; blocks];
        for &b in &rgs {
            sizes[b] += 1;
        }
        let mut w = vec![0usize; n];
        for s in sizes {
            w[s - 1] += 1;
        }
        *counts.entry(w).or_insert(0) += 1;
    }
    counts
}

/// Bell numbers via the Bell triangle.
pub fn bell(n: usize) -> u64 {
    let mut row = vec![1u64];
    for _ in 0..n {
        let mut next = vec![*row.last().unwrap()];
        for &v in &row {
            let last = *next.last().unwrap();
            next.push(last + v);
        }
        row = next;
    }
    row[0]
}

fn to_rational_rows(a: &SymmetricMatrix) -> Vec<Vec<BigRational>> {
    a.to_rows()
        .iter()
        .map(|r| r.iter().map(|&x| BigRational::from_float(x).unwrap()).collect())
        .collect()
}

/// Exact determinant by Gaussian elimination with pivot search.
pub fn det_exact(mut m: Vec<Vec<BigRational>>) -> BigRational {
    let n = m.len();
    let mut det = BigRational::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return BigRational::zero();
        };
        if p != col {
            m.swap(p, col);
            det = -det;
        }
        let pivot = m[col][col].clone();
        det *= &pivot;
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let f = &m[r][col] / &pivot;
            for c in col..n {
                let v = &f * &m[col][c];
                m[r][c] -= v;
            }
        }
    }
    det
}

/// Coefficients (lowest first) of `det(x𝟙 − A)` by exact evaluation at
/// `x = 0..n` and Lagrange interpolation.
pub fn char_poly_by_interpolation(a: &SymmetricMatrix) -> Vec<BigRational> {
    let n = a.n();
    let rows = to_rational_rows(a);
    let xs: Vec<BigRational> = (0..=n).map(|k| BigRational::from_integer(BigInt::from(k))).collect();
    let ys: Vec<BigRational> = xs
        .iter()
        .map(|x| {
            let m: Vec<Vec<BigRational>> = (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| {
                            let d = if i == j { x.clone() } else { BigRational::zero() };
                            d - &rows[i][j]
                        })
                        .collect()
                })
                .collect();
            det_exact(m)
        })
        .collect();
    let mut coeffs = vec![BigRational::zero(); n + 1];
    for (i, xi) in xs.iter().enumerate() {
        // Basis polynomial ∏_{j≠i} (x − x_j)/(x_i − x_j).
        let mut basis = vec![BigRational::one()];
        let mut denom = BigRational::one();
        for (j, xj) in xs.iter().enumerate() {
            if i == j {
                continue;
            }
            let mut next = vec![BigRational::zero(); basis.len() + 1];
            for (k, c) in basis.iter().enumerate() {
                next[k + 1] += c;
                next[k] -= c * xj;
            }
            basis = next;
            denom *= xi - xj;
        }
        let scale = &ys[i] / denom;
        for (k, c) in basis.iter().enumerate() {
            coeffs[k] += c * &scale;
        }
    }
    coeffs
}

/// `∏_{i<j}(λ_i − λ_j)² = (−1)^{n(n−1)/2} Res(p, p′)` for the monic
/// characteristic polynomial `p`, with the resultant as the determinant of
/// the Sylvester matrix.
pub fn sylvester_discriminant(a: &SymmetricMatrix) -> BigRational {
    let p = char_poly_by_interpolation(a);
    let n = p.len() - 1;
    if n < 2 {
        return BigRational::one();
    }
    let dp: Vec<BigRational> = (1..=n)
        .map(|k| &p[k] * BigRational::from_integer(BigInt::from(k)))
        .collect();
    let size = 2 * n - 1;
    let mut syl = vec![vec![BigRational::zero(); size]; size];
    // n−1 shifted rows of p, then n shifted rows of p′; highest degree first.
    for r in 0..n - 1 {
        for (k, c) in p.iter().rev().enumerate() {
            syl[r][r + k] = c.clone();
        }
    }
    for r in 0..n {
        for (k, c) in dp.iter().rev().enumerate() {
            syl[n - 1 + r][r + k] = c.clone();
        }
    }
    let res = det_exact(syl);
    if (n * (n - 1) / 2) % 2 == 1 {
        -res
    } else {
        res
    }
}

pub fn rational_to_f64(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

/// Symmetric matrix with entries `k/8`, `k` uniform in `-16..=16`; exactly
/// representable, so the float matrix *is* the rational one.
pub fn random_dyadic_matrix<R: Rng>(n: usize, rng: &mut R) -> SymmetricMatrix {
    let mut m = SymmetricMatrix::zeros(n);
    for i in 0..n {
        for j in i..n {
            m.set(i, j, rng.random_range(-16i32..=16) as f64 / 8.0);
        }
    }
    m
}

fn haar<R: Rng>(n: usize, rng: &mut R) -> DMatrix<f64> {
    let g = DMatrix::<f64>::from_fn(n, n, |_, _| rng.sample(StandardNormal));
    let qr = g.qr();
    let mut q = qr.q();
    let r = qr.r();
    for j in 0..n {
        if r[(j, j)] < 0.0 {
            let mut col = q.column_mut(j);
            col.neg_mut();
        }
    }
    q
}

/// Distance from `m` (already in the rotated frame) to the nearest matrix of
/// the form `diag(t, t, μ_3, …, μ_n)`, together with the skew gradient
/// `[D, M]` of that distance over rotations of the frame.
fn frame_objective(m: &DMatrix<f64>) -> (f64, DMatrix<f64>) {
    let n = m.nrows();
    let mut d = DMatrix::<f64>::zeros(n, n);
    let t = 0.5 * (m[(0, 0)] + m[(1, 1)]);
    d[(0, 0)] = t;
    d[(1, 1)] = t;
    for i in 2..n {
        d[(i, i)] = m[(i, i)];
    }
    let f = (m - &d).norm_squared();
    let k = &d * m - m * &d;
    (f, k)
}

/// Smallest distance from `a` to `{Qᵀ diag(t, t, μ) Q}` found by `starts`
/// Riemannian gradient descents over `Q` from Haar-random frames. Every
/// iterate is an explicit matrix with a repeated eigenvalue, so the result is
/// an upper bound on the true distance to the discriminant.
pub fn descent_oracle<R: Rng>(a: &SymmetricMatrix, starts: usize, iters: usize, rng: &mut R) -> f64 {
    let n = a.n();
    let ad = a.to_dense();
    let id = DMatrix::<f64>::identity(n, n);
    let mut best = f64::INFINITY;
    for _ in 0..starts {
        let q = haar(n, rng);
        let mut m = &q * &ad * q.transpose();
        let (mut f, mut k) = frame_objective(&m);
        let mut eta = 0.1;
        for _ in 0..iters {
            if k.norm() < 1e-13 {
                break;
            }
            let mut accepted = false;
            for _ in 0..30 {
                // Cayley step: R = (𝟙 − ηK/2)⁻¹(𝟙 + ηK/2) is orthogonal for skew K.
                let half = &k * (0.5 * eta);
                let lhs = &id - &half;
                let rhs = &id + &half;
                let Some(r) = lhs.lu().solve(&rhs) else { break };
                let cand = &r * &m * r.transpose();
                let (fc, kc) = frame_objective(&cand);
                if fc < f {
                    m = cand;
                    f = fc;
                    k = kc;
                    eta *= 1.5;
                    accepted = true;
                    break;
                }
                eta *= 0.5;
            }
            if !accepted {
                break;
            }
        }
        best = best.min(f.sqrt());
    }
    best
}
