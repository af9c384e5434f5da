//! Real symmetric matrices: packed storage, the Frobenius geometry, a cyclic
//! Jacobi eigensolver, exact characteristic polynomials, discriminants and
//! GOE sampling.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use nalgebra::DMatrix;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::poly::RatPolynomial;

/// Tolerance on `|a_ij − a_ji|` when loading a full square matrix.
pub const SYMMETRY_TOL: f64 = 1e-12;
/// Jacobi stops once the off-diagonal Frobenius norm is below this multiple of `‖A‖_F`.
pub const JACOBI_REL_TOL: f64 = 1e-14;
pub const JACOBI_MAX_SWEEPS: usize = 30;

/// A real symmetric `n × n` matrix stored as its packed upper triangle.
#[derive(Clone, Debug, PartialEq)]
pub struct SymmetricMatrix {
    n: usize,
    packed: Vec<f64>,
}

#[inline]
fn packed_index(n: usize, i: usize, j: usize) -> usize {
    let (i, j) = if i <= j { (i, j) } else { (j, i) };
    i * (2 * n - i - 1) / 2 + j
}

impl SymmetricMatrix {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            packed: vec![0.0; n * (n + 1) / 2],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_diagonal(&vec![1.0; n])
    }

    pub fn from_diagonal(d: &[f64]) -> Self {
        let mut m = Self::zeros(d.len());
        for (i, &v) in d.iter().enumerate() {
            m.set(i, i, v);
        }
        m
    }

    /// Builds from the packed upper triangle, row by row.
    pub fn from_packed(n: usize, packed: Vec<f64>) -> Result<Self> {
        if packed.len() != n * (n + 1) / 2 {
            return Err(Error::InvalidInput(format!(
                "packed length {} does not match n = {n}",
                packed.len()
            )));
        }
        if packed.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidInput("matrix entries must be finite".into()));
        }
        Ok(Self { n, packed })
    }

    /// Builds from full square rows, checking symmetry to [`SYMMETRY_TOL`].
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        if let Some((i, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != n) {
            return Err(Error::InvalidInput(format!(
                "row {i} has length {}, expected {n}",
                r.len()
            )));
        }
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in i..n {
                let (a, b) = (rows[i][j], rows[j][i]);
                if !a.is_finite() || !b.is_finite() {
                    return Err(Error::InvalidInput("matrix entries must be finite".into()));
                }
                if (a - b).abs() > SYMMETRY_TOL {
                    return Err(Error::InvalidInput(format!(
                        "matrix is not symmetric at ({i}, {j}): {a} vs {b}"
                    )));
                }
                m.set(i, j, a);
            }
        }
        Ok(m)
    }

    /// Takes the upper triangle of a dense matrix; the lower triangle must
    /// agree to [`SYMMETRY_TOL`].
    pub fn from_dense(d: &DMatrix<f64>) -> Result<Self> {
        if d.nrows() != d.ncols() {
            return Err(Error::InvalidInput("matrix is not square".into()));
        }
        let rows: Vec<Vec<f64>> = (0..d.nrows())
            .map(|i| (0..d.ncols()).map(|j| d[(i, j)]).collect())
            .collect();
        Self::from_rows(&rows)
    }

    /// Symmetrises `(D + Dᵀ)/2`; for products that are symmetric only up to
    /// rounding.
    pub fn from_dense_symmetrized(d: &DMatrix<f64>) -> Self {
        let n = d.nrows();
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in i..n {
                m.set(i, j, 0.5 * (d[(i, j)] + d[(j, i)]));
            }
        }
        m
    }

    /// `Cᵀ diag(λ) C`.
    pub fn from_spectral(rotation: &DMatrix<f64>, eigenvalues: &[f64]) -> Self {
        let n = eigenvalues.len();
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in i..n {
                let v: f64 = (0..n)
                    .map(|k| rotation[(k, i)] * eigenvalues[k] * rotation[(k, j)])
                    .sum();
                m.set(i, j, v);
            }
        }
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn packed(&self) -> &[f64] {
        &self.packed
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.packed[packed_index(self.n, i, j)]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        let idx = packed_index(self.n, i, j);
        self.packed[idx] = v;
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        DMatrix::from_fn(self.n, self.n, |i, j| self.get(i, j))
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j)).collect())
            .collect()
    }

    /// `⟨A, B⟩ = tr(AB)`.
    pub fn inner(&self, other: &Self) -> f64 {
        assert_eq!(self.n, other.n, "dimension mismatch");
        let mut acc = 0.0;
        for i in 0..self.n {
            for j in i..self.n {
                let p = self.get(i, j) * other.get(i, j);
                acc += if i == j { p } else { 2.0 * p };
            }
        }
        acc
    }

    /// `√tr(A²)`.
    pub fn frobenius_norm(&self) -> f64 {
        self.inner(self).sqrt()
    }

    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    pub fn scale(&self, s: f64) -> Self {
        Self {
            n: self.n,
            packed: self.packed.iter().map(|v| v * s).collect(),
        }
    }

    /// `Qᵀ A Q` for a square `Q`.
    pub fn conjugate(&self, q: &DMatrix<f64>) -> Self {
        let d = q.transpose() * self.to_dense() * q;
        Self::from_dense_symmetrized(&d)
    }

    pub fn eigendecompose(&self) -> Result<SpectralDecomposition> {
        eigendecompose(self)
    }

    /// Eigenvalues in descending order.
    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        Ok(eigendecompose(self)?.eigenvalues)
    }

    /// Parses `{"n": n, "rows": [...]}`, a bare `[[...], ...]` array, or the
    /// plain-text format (n on the first line, then n rows).
    pub fn parse(input: &str) -> Result<Self> {
        let trimmed = input.trim_start();
        if trimmed.starts_with('{') || trimmed.starts_with('[') {
            let v: serde_json::Value =
                serde_json::from_str(trimmed).map_err(|e| Error::Parse(e.to_string()))?;
            if v.is_array() {
                let rows: Vec<Vec<f64>> =
                    serde_json::from_value(v).map_err(|e| Error::Parse(e.to_string()))?;
                return Self::from_rows(&rows);
            }
            let raw: MatrixJson =
                serde_json::from_value(v).map_err(|e| Error::Parse(e.to_string()))?;
            return raw.into_matrix();
        }
        Self::parse_text(input)
    }

    pub fn parse_text(input: &str) -> Result<Self> {
        let mut lines = input.lines().filter(|l| !l.trim().is_empty());
        let n: usize = lines
            .next()
            .ok_or_else(|| Error::Parse("empty matrix text".into()))?
            .trim()
            .parse()
            .map_err(|e| Error::Parse(format!("bad dimension line: {e}")))?;
        let rows = lines
            .take(n)
            .map(|l| {
                l.split_whitespace()
                    .map(|t| t.parse::<f64>().map_err(|e| Error::Parse(format!("{t:?}: {e}"))))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        if rows.len() != n {
            return Err(Error::Parse(format!("expected {n} rows, found {}", rows.len())));
        }
        Self::from_rows(&rows)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{}\n", self.n);
        for row in self.to_rows() {
            let parts: Vec<String> = row.iter().map(|v| format!("{v:e}")).collect();
            s.push_str(&parts.join(" "));
            s.push('\n');
        }
        s
    }
}

impl Add for &SymmetricMatrix {
    type Output = SymmetricMatrix;

    fn add(self, rhs: Self) -> SymmetricMatrix {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        SymmetricMatrix {
            n: self.n,
            packed: self.packed.iter().zip(&rhs.packed).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &SymmetricMatrix {
    type Output = SymmetricMatrix;

    fn sub(self, rhs: Self) -> SymmetricMatrix {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        SymmetricMatrix {
            n: self.n,
            packed: self.packed.iter().zip(&rhs.packed).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Mul<f64> for &SymmetricMatrix {
    type Output = SymmetricMatrix;

    fn mul(self, s: f64) -> SymmetricMatrix {
        self.scale(s)
    }
}

impl fmt::Display for SymmetricMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.to_rows() {
            let parts: Vec<String> = row.iter().map(|v| format!("{v:>12.6}")).collect();
            writeln!(f, "{}", parts.join(" "))?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixJson {
    n: usize,
    rows: Vec<Vec<f64>>,
}

impl MatrixJson {
    fn into_matrix(self) -> Result<SymmetricMatrix> {
        if self.rows.len() != self.n {
            return Err(Error::InvalidInput(format!(
                "declared n = {} but found {} rows",
                self.n,
                self.rows.len()
            )));
        }
        SymmetricMatrix::from_rows(&self.rows)
    }
}

impl Serialize for SymmetricMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        MatrixJson {
            n: self.n,
            rows: self.to_rows(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for SymmetricMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        MatrixJson::deserialize(deserializer)?
            .into_matrix()
            .map_err(serde::de::Error::custom)
    }
}

/// `A = Cᵀ Λ C`: the rows of `rotation` are unit eigenvectors and
/// `eigenvalues` is sorted in descending order.
#[derive(Clone, Debug)]
pub struct SpectralDecomposition {
    pub rotation: DMatrix<f64>,
    pub eigenvalues: Vec<f64>,
}

impl SpectralDecomposition {
    pub fn n(&self) -> usize {
        self.eigenvalues.len()
    }

    /// Eigenvector `k` (row `k` of the rotation).
    pub fn eigenvector(&self, k: usize) -> Vec<f64> {
        self.rotation.row(k).iter().copied().collect()
    }

    pub fn reconstruct(&self) -> SymmetricMatrix {
        SymmetricMatrix::from_spectral(&self.rotation, &self.eigenvalues)
    }

    /// `Cᵀ diag(λ) C` for replacement eigenvalues in the same frame.
    pub fn with_eigenvalues(&self, eigenvalues: &[f64]) -> SymmetricMatrix {
        SymmetricMatrix::from_spectral(&self.rotation, eigenvalues)
    }

    /// `‖CᵀC − 𝟙‖_F`.
    pub fn orthogonality_residual(&self) -> f64 {
        let n = self.n();
        let g = self.rotation.transpose() * &self.rotation - DMatrix::<f64>::identity(n, n);
        g.norm()
    }

    /// `‖CᵀΛC − A‖_F`.
    pub fn reconstruction_residual(&self, a: &SymmetricMatrix) -> f64 {
        (&self.reconstruct() - a).frobenius_norm()
    }
}

/// Cyclic-by-row Jacobi with rotation accumulation.
pub fn eigendecompose(a: &SymmetricMatrix) -> Result<SpectralDecomposition> {
    let n = a.n();
    let mut m: Vec<f64> = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            m[i * n + j] = a.get(i, j);
        }
    }
    let mut v: Vec<f64> = vec![0.0; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }
    let tol = JACOBI_REL_TOL * a.frobenius_norm();
    let off_norm = |m: &[f64]| -> f64 {
        let mut s = 0.0;
        for p in 0..n {
            for q in p + 1..n {
                s += m[p * n + q] * m[p * n + q];
            }
        }
        (2.0 * s).sqrt()
    };

    let mut converged = false;
    for sweep in 0..=JACOBI_MAX_SWEEPS {
        if off_norm(&m) <= tol {
            converged = true;
            break;
        }
        if sweep == JACOBI_MAX_SWEEPS {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = m[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let app = m[p * n + p];
                let aqq = m[q * n + q];
                // Below rounding of both diagonal entries: drop it.
                let g = 100.0 * apq.abs();
                if sweep > 3 && app.abs() + g == app.abs() && aqq.abs() + g == aqq.abs() {
                    m[p * n + q] = 0.0;
                    m[q * n + p] = 0.0;
                    continue;
                }
                let theta = (aqq - app) / (2.0 * apq);
                let t = if theta.abs() > 1e150 {
                    0.5 / theta
                } else {
                    theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                let tau = s / (1.0 + c);
                m[p * n + p] = app - t * apq;
                m[q * n + q] = aqq + t * apq;
                m[p * n + q] = 0.0;
                m[q * n + p] = 0.0;
                for r in 0..n {
                    if r == p || r == q {
                        continue;
                    }
                    let g = m[r * n + p];
                    let h = m[r * n + q];
                    let new_rp = g - s * (h + g * tau);
                    let new_rq = h + s * (g - h * tau);
                    m[r * n + p] = new_rp;
                    m[p * n + r] = new_rp;
                    m[r * n + q] = new_rq;
                    m[q * n + r] = new_rq;
                }
                for r in 0..n {
                    let g = v[r * n + p];
                    let h = v[r * n + q];
                    v[r * n + p] = g - s * (h + g * tau);
                    v[r * n + q] = h + s * (g - h * tau);
                }
            }
        }
    }
    if !converged {
        return Err(Error::NoConvergence {
            sweeps: JACOBI_MAX_SWEEPS,
            off_norm: off_norm(&m),
        });
    }

    let mut order: Vec<usize> = (0..n).collect();
    // Stable sort keeps the original index order among exact ties.
    order.sort_by(|&x, &y| m[y * n + y].total_cmp(&m[x * n + x]));
    let eigenvalues: Vec<f64> = order.iter().map(|&k| m[k * n + k]).collect();
    let mut rotation = DMatrix::<f64>::zeros(n, n);
    for (row, &k) in order.iter().enumerate() {
        // Column k of v is the eigenvector; make its first significant entry positive.
        let sign = (0..n)
            .map(|r| v[r * n + k])
            .find(|x| x.abs() > 1e-12)
            .map_or(1.0, |x| x.signum());
        for r in 0..n {
            rotation[(row, r)] = sign * v[r * n + k];
        }
    }
    Ok(SpectralDecomposition {
        rotation,
        eigenvalues,
    })
}

/// `det(x𝟙 − A)`, exact over the rationals (every finite `f64` is a dyadic
/// rational, so no rounding occurs).
pub fn char_poly(a: &SymmetricMatrix) -> RatPolynomial {
    let rows: Vec<Vec<BigRational>> = a
        .to_rows()
        .iter()
        .map(|r| {
            r.iter()
                .map(|&x| BigRational::from_float(x).expect("finite entry"))
                .collect()
        })
        .collect();
    char_poly_exact(&rows)
}

/// Faddeev–LeVerrier on an exact rational square matrix.
pub fn char_poly_exact(a: &[Vec<BigRational>]) -> RatPolynomial {
    let n = a.len();
    let mut coeffs = vec![BigRational::zero(); n + 1];
    coeffs[n] = BigRational::one();
    // M_0 = 0; M_k = A M_{k-1} + c_{n-k+1} 𝟙; c_{n-k} = −tr(A M_k)/k
    let mut mk = vec![vec![BigRational::zero(); n]; n];
    for k in 1..=n {
        let prev_c = coeffs[n - k + 1].clone();
        let mut next = matmul_exact(a, &mk);
        for (i, row) in next.iter_mut().enumerate() {
            row[i] += &prev_c;
        }
        mk = next;
        let am = matmul_exact(a, &mk);
        let tr: BigRational = (0..n).map(|i| am[i][i].clone()).sum();
        coeffs[n - k] = -tr / BigRational::from_integer((k as i64).into());
    }
    RatPolynomial::new(coeffs)
}

fn matmul_exact(a: &[Vec<BigRational>], b: &[Vec<BigRational>]) -> Vec<Vec<BigRational>> {
    let n = a.len();
    let mut out = vec![vec![BigRational::zero(); n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..n {
                if b[k][j].is_zero() {
                    continue;
                }
                out[i][j] += &a[i][k] * &b[k][j];
            }
        }
    }
    out
}

/// `∏_{i<j} (λ_i − λ_j)²` from a list of eigenvalues.
pub fn discriminant_of(eigenvalues: &[f64]) -> f64 {
    let mut d = 1.0;
    for i in 0..eigenvalues.len() {
        for j in i + 1..eigenvalues.len() {
            let g = eigenvalues[i] - eigenvalues[j];
            d *= g * g;
        }
    }
    d
}

/// `min_{i<j} |λ_i − λ_j|` from a list of eigenvalues; `+∞` for fewer than two.
pub fn min_gap_of(eigenvalues: &[f64]) -> f64 {
    let mut sorted = eigenvalues.to_vec();
    sorted.sort_by(f64::total_cmp);
    sorted
        .windows(2)
        .map(|w| w[1] - w[0])
        .fold(f64::INFINITY, f64::min)
}

/// `∏_{i<j} (λ_i − λ_j)²` via the eigendecomposition.
pub fn discriminant(a: &SymmetricMatrix) -> Result<f64> {
    Ok(discriminant_of(&a.eigenvalues()?))
}

/// `min_{i<j} |λ_i − λ_j|` via the eigendecomposition.
pub fn min_gap(a: &SymmetricMatrix) -> Result<f64> {
    Ok(min_gap_of(&a.eigenvalues()?))
}

/// One GOE(n) draw: diagonal `N(0, 1)`, off-diagonal `N(0, 1/2)`, so the
/// density is proportional to `e^{−‖A‖²/2}`.
pub fn goe_sample<R: Rng + ?Sized>(n: usize, rng: &mut R) -> SymmetricMatrix {
    let mut m = SymmetricMatrix::zeros(n);
    let off_sd = std::f64::consts::FRAC_1_SQRT_2;
    for i in 0..n {
        for j in i..n {
            let z: f64 = rng.sample(StandardNormal);
            m.set(i, j, if i == j { z } else { off_sd * z });
        }
    }
    m
}

/// Haar-distributed orthogonal matrix (QR of a Gaussian matrix with the sign
/// of `R`'s diagonal moved into `Q`).
pub fn random_orthogonal<R: Rng + ?Sized>(n: usize, rng: &mut R) -> DMatrix<f64> {
    let g = DMatrix::<f64>::from_fn(n, n, |_, _| rng.sample(StandardNormal));
    let qr = g.qr();
    let mut q = qr.q();
    let r = qr.r();
    for j in 0..n {
        if r[(j, j)] < 0.0 {
            for i in 0..n {
                q[(i, j)] = -q[(i, j)];
            }
        }
    }
    q
}
