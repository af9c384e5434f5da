//! Multiplicity vectors, set partitions and the counting data of the
//! eigenvalue-multiplicity stratification of `Sym(n, ℝ)`.

use std::fmt;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::symmat::SymmetricMatrix;

/// Eigenvalues closer than this multiple of `1 + ‖A‖_F` count as equal.
pub const MULTIPLICITY_REL_TOL: f64 = 1e-8;

/// `w[i-1]` is the number of distinct eigenvalues of multiplicity `i`;
/// `Σ i·w_i = n` where `n = w.len()`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiplicityVector {
    w: Vec<usize>,
}

impl MultiplicityVector {
    pub fn new(w: Vec<usize>) -> Result<Self> {
        let n = w.len();
        if n == 0 {
            return Err(Error::InvalidInput("multiplicity vector must be non-empty".into()));
        }
        let total: usize = w.iter().enumerate().map(|(i, &c)| (i + 1) * c).sum();
        if total != n {
            return Err(Error::InvalidInput(format!(
                "Σ i·w_i = {total} but the vector has length {n}"
            )));
        }
        Ok(Self { w })
    }

    /// Type of a collection of blocks with the given sizes, for matrices of size `n`.
    pub fn from_block_sizes(sizes: &[usize], n: usize) -> Result<Self> {
        let mut w = vec![0; n];
        for &s in sizes {
            if s == 0 || s > n {
                return Err(Error::InvalidInput(format!("block size {s} out of range for n = {n}")));
            }
            w[s - 1] += 1;
        }
        Self::new(w)
    }

    /// The open stratum `(n, 0, …, 0)`.
    pub fn generic(n: usize) -> Self {
        let mut w = vec![0; n];
        w[0] = n;
        Self { w }
    }

    /// `(n−2, 1, 0, …)`: exactly one double eigenvalue.
    pub fn one_double(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidInput("a double eigenvalue needs n ≥ 2".into()));
        }
        let mut w = vec![0; n];
        w[0] = n - 2;
        w[1] += 1;
        Ok(Self { w })
    }

    pub fn n(&self) -> usize {
        self.w.len()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.w
    }

    /// Proper strata are those with at least one repeated eigenvalue.
    pub fn is_proper(&self) -> bool {
        self.w[0] < self.n()
    }

    /// Number of distinct eigenvalues.
    pub fn num_blocks(&self) -> usize {
        self.w.iter().sum()
    }

    /// Block sizes in descending order.
    pub fn block_sizes(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.num_blocks());
        for (i, &c) in self.w.iter().enumerate().rev() {
            out.extend(std::iter::repeat_n(i + 1, c));
        }
        out
    }
}

impl fmt::Display for MultiplicityVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.w.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl std::str::FromStr for MultiplicityVector {
    type Err = Error;

    /// Accepts `2,1,0,0`, `(2,1,0,0)` or `[2,1,0,0]`.
    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim().trim_matches(|c| matches!(c, '(' | ')' | '[' | ']'));
        let w = inner
            .split([',', ' '])
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|e| Error::Parse(format!("bad multiplicity entry {t:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(w)
    }
}

#[derive(Serialize, Deserialize)]
struct MultiplicityJson {
    w: Vec<usize>,
}

impl Serialize for MultiplicityVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        MultiplicityJson { w: self.w.clone() }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for MultiplicityVector {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = MultiplicityJson::deserialize(deserializer)?;
        Self::new(raw.w).map_err(serde::de::Error::custom)
    }
}

/// A set partition of `{0, …, n−1}` in canonical form: each block sorted,
/// blocks ordered by their smallest element. Serialized 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SetPartition {
    n: usize,
    blocks: Vec<Vec<usize>>,
}

impl SetPartition {
    /// Validates and canonicalises 0-based blocks covering `{0, …, n−1}`.
    pub fn new(n: usize, mut blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = vec![false; n];
        for b in &mut blocks {
            if b.is_empty() {
                return Err(Error::InvalidInput("empty block in set partition".into()));
            }
            b.sort_unstable();
            for &i in b.iter() {
                if i >= n || seen[i] {
                    return Err(Error::InvalidInput(format!(
                        "index {} is out of range or repeated",
                        i + 1
                    )));
                }
                seen[i] = true;
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::InvalidInput("set partition does not cover every index".into()));
        }
        blocks.sort_by_key(|b| b[0]);
        Ok(Self { n, blocks })
    }

    /// Every index in its own block.
    pub fn singletons(n: usize) -> Self {
        Self {
            n,
            blocks: (0..n).map(|i| vec![i]).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn type_vector(&self) -> MultiplicityVector {
        let sizes: Vec<usize> = self.blocks.iter().map(Vec::len).collect();
        MultiplicityVector::from_block_sizes(&sizes, self.n).expect("blocks cover 0..n")
    }

    /// 1-based blocks, as serialized.
    pub fn to_one_based(&self) -> Vec<Vec<usize>> {
        self.blocks
            .iter()
            .map(|b| b.iter().map(|i| i + 1).collect())
            .collect()
    }

    pub fn from_one_based(n: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        if blocks.iter().flatten().any(|&i| i == 0) {
            return Err(Error::InvalidInput("set partition indices are 1-based".into()));
        }
        Self::new(
            n,
            blocks
                .into_iter()
                .map(|b| b.into_iter().map(|i| i - 1).collect())
                .collect(),
        )
    }
}

impl fmt::Display for SetPartition {
    /// `{1|23}` style; indices are comma-separated once `n ≥ 10`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sep = if self.n >= 10 { "," } else { "" };
        let parts: Vec<String> = self
            .to_one_based()
            .iter()
            .map(|b| b.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(sep))
            .collect();
        write!(f, "{{{}}}", parts.join("|"))
    }
}

impl Serialize for SetPartition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_one_based().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for SetPartition {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let blocks = Vec::<Vec<usize>>::deserialize(deserializer)?;
        let n = blocks.iter().map(Vec::len).sum();
        Self::from_one_based(n, blocks).map_err(serde::de::Error::custom)
    }
}

/// All multiplicity vectors of size `n` (one per integer partition of `n`),
/// ordered by codimension and then by descending `w`. With `proper_only` the
/// open stratum is left out.
pub fn enumerate_multiplicity_vectors(n: usize, proper_only: bool) -> Vec<MultiplicityVector> {
    fn rec(remaining: usize, max_part: usize, w: &mut Vec<usize>, out: &mut Vec<MultiplicityVector>) {
        if remaining == 0 {
            out.push(MultiplicityVector { w: w.clone() });
            return;
        }
        for part in (1..=max_part.min(remaining)).rev() {
            w[part - 1] += 1;
            rec(remaining - part, part, w, out);
            w[part - 1] -= 1;
        }
    }
    if n == 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    rec(n, n, &mut vec![0; n], &mut out);
    if proper_only {
        out.retain(MultiplicityVector::is_proper);
    }
    out.sort_by(|a, b| codim(a).cmp(&codim(b)).then_with(|| b.w.cmp(&a.w)));
    out
}

/// Codimension of the stratum of type `w`: `Σ (i−1)(i+2)/2 · w_i`.
pub fn codim(w: &MultiplicityVector) -> usize {
    w.w.iter()
        .enumerate()
        .map(|(idx, &c)| {
            let i = idx + 1;
            (i - 1) * (i + 2) / 2 * c
        })
        .sum()
}

fn factorial(k: usize) -> BigUint {
    (1..=k).fold(BigUint::one(), |acc, j| acc * BigUint::from(j))
}

/// Number of set partitions of `{1..n}` of type `w`:
/// `n! / ∏ (i!)^{w_i} · w_i!`.
pub fn count_planes(w: &MultiplicityVector) -> BigUint {
    let denom = w
        .w
        .iter()
        .enumerate()
        .fold(BigUint::one(), |acc, (idx, &c)| {
            acc * factorial(idx + 1).pow(c as u32) * factorial(c)
        });
    factorial(w.n()) / denom
}

/// Euclidean distance degree of the closure of the stratum of type `w`.
pub fn eddeg(w: &MultiplicityVector) -> Result<BigUint> {
    if !w.is_proper() {
        return Err(Error::InvalidInput(format!(
            "{w} is the open stratum; the ED degree is defined for proper strata"
        )));
    }
    Ok(count_planes(w))
}

/// Every canonical set partition of type `w`, in lexicographic order of
/// the block sequence.
pub fn enumerate_partitions_of_type(w: &MultiplicityVector) -> Vec<SetPartition> {
    let n = w.n();
    let mut remaining = w.w.clone();
    let mut used = vec![false; n];
    let mut blocks = Vec::new();
    let mut out = Vec::new();
    partitions_rec(n, &mut remaining, &mut used, &mut blocks, &mut out);
    out
}

fn partitions_rec(
    n: usize,
    remaining: &mut [usize],
    used: &mut [bool],
    blocks: &mut Vec<Vec<usize>>,
    out: &mut Vec<SetPartition>,
) {
    let Some(first) = used.iter().position(|u| !u) else {
        out.push(SetPartition {
            n,
            blocks: blocks.clone(),
        });
        return;
    };
    used[first] = true;
    let free: Vec<usize> = (first + 1..n).filter(|&i| !used[i]).collect();
    for size in 1..=n {
        if remaining[size - 1] == 0 || size - 1 > free.len() {
            continue;
        }
        remaining[size - 1] -= 1;
        for_each_combination(&free, size - 1, &mut |rest| {
            for &i in rest {
                used[i] = true;
            }
            let mut block = Vec::with_capacity(size);
            block.push(first);
            block.extend_from_slice(rest);
            blocks.push(block);
            partitions_rec(n, remaining, used, blocks, out);
            blocks.pop();
            for &i in rest {
                used[i] = false;
            }
        });
        remaining[size - 1] += 1;
    }
    used[first] = false;
}

fn for_each_combination(items: &[usize], k: usize, f: &mut dyn FnMut(&[usize])) {
    fn rec(items: &[usize], k: usize, start: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        if cur.len() == k {
            f(cur);
            return;
        }
        for i in start..=items.len() - (k - cur.len()) {
            cur.push(items[i]);
            rec(items, k, i + 1, cur, f);
            cur.pop();
        }
    }
    rec(items, k, 0, &mut Vec::with_capacity(k), f);
}

/// Groups positions of a descending eigenvalue list into runs whose
/// consecutive gaps are at most `tol`.
pub fn group_eigenvalues(eigenvalues: &[f64], tol: f64) -> Vec<Vec<usize>> {
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for (i, &v) in eigenvalues.iter().enumerate() {
        match groups.last_mut() {
            Some(g) if (eigenvalues[*g.last().unwrap()] - v).abs() <= tol => g.push(i),
            _ => groups.push(vec![i]),
        }
    }
    groups
}

/// Multiplicity pattern of a descending eigenvalue list under `tol`.
pub fn multiplicity_pattern_of(eigenvalues: &[f64], tol: f64) -> MultiplicityVector {
    let sizes: Vec<usize> = group_eigenvalues(eigenvalues, tol).iter().map(Vec::len).collect();
    MultiplicityVector::from_block_sizes(&sizes, eigenvalues.len()).expect("groups cover all eigenvalues")
}

/// Detected stratum of `a`, merging eigenvalues within
/// `MULTIPLICITY_REL_TOL · (1 + ‖A‖_F)`.
pub fn multiplicity_pattern(a: &SymmetricMatrix) -> Result<MultiplicityVector> {
    let eig = a.eigenvalues()?;
    let tol = MULTIPLICITY_REL_TOL * (1.0 + a.frobenius_norm());
    Ok(multiplicity_pattern_of(&eig, tol))
}
