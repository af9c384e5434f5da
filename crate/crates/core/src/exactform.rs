//! Exact scalars of the form `q · √2^a · √π^b`.
//!
//! Every normalising constant needed for the GOE volume computation
//! (the Selberg-type constant `Z_n`, `P_m`, the volume of `O(n)`, sphere
//! volumes and Gamma values at half-integers) lives in this set, so identities
//! between them can be checked with zero tolerance.
//!
//! The canonical form keeps `a ∈ {0, 1}`; even powers of `√2` are folded into
//! the rational coefficient. Powers of `π` cannot be folded into a rational, so
//! the exponent `b` of `√π` is an arbitrary integer.

use std::fmt;
use std::ops::{Div, Mul, Neg};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// `q · √2^sqrt2_exp · √π^sqrtpi_exp` in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ClosedFormScalar {
    q: BigRational,
    sqrt2_exp: u8,
    sqrtpi_exp: i64,
}

impl ClosedFormScalar {
    /// Builds `q · √2^a · √π^b` and brings it to canonical form.
    pub fn new(q: BigRational, a: i64, b: i64) -> Self {
        if q.is_zero() {
            return Self::zero();
        }
        let half = a.div_euclid(2);
        let rem = a.rem_euclid(2) as u8;
        Self {
            q: q * pow2(half),
            sqrt2_exp: rem,
            sqrtpi_exp: b,
        }
    }

    pub fn zero() -> Self {
        Self {
            q: BigRational::zero(),
            sqrt2_exp: 0,
            sqrtpi_exp: 0,
        }
    }

    pub fn one() -> Self {
        Self::rational(BigRational::one())
    }

    pub fn rational(q: BigRational) -> Self {
        Self::new(q, 0, 0)
    }

    pub fn integer<T: Into<BigInt>>(v: T) -> Self {
        Self::rational(BigRational::from_integer(v.into()))
    }

    /// `p / r` as an exact rational scalar.
    pub fn ratio<T: Into<BigInt>>(p: T, r: T) -> Self {
        Self::rational(BigRational::new(p.into(), r.into()))
    }

    pub fn sqrt2() -> Self {
        Self::new(BigRational::one(), 1, 0)
    }

    pub fn sqrt_pi() -> Self {
        Self::new(BigRational::one(), 0, 1)
    }

    pub fn pi() -> Self {
        Self::new(BigRational::one(), 0, 2)
    }

    /// `√2^a`, for any integer `a`.
    pub fn sqrt2_pow(a: i64) -> Self {
        Self::new(BigRational::one(), a, 0)
    }

    /// `√π^b`, for any integer `b`.
    pub fn sqrt_pi_pow(b: i64) -> Self {
        Self::new(BigRational::one(), 0, b)
    }

    pub fn coefficient(&self) -> &BigRational {
        &self.q
    }

    pub fn sqrt2_exp(&self) -> u8 {
        self.sqrt2_exp
    }

    pub fn sqrtpi_exp(&self) -> i64 {
        self.sqrtpi_exp
    }

    pub fn is_zero(&self) -> bool {
        self.q.is_zero()
    }

    /// True when the value is a plain rational (no `√2` or `√π` factor).
    pub fn is_rational(&self) -> bool {
        self.sqrt2_exp == 0 && self.sqrtpi_exp == 0
    }

    /// Returns the rational value, or `None` if an irrational factor remains.
    pub fn as_rational(&self) -> Option<&BigRational> {
        self.is_rational().then_some(&self.q)
    }

    /// Exact sum. Fails unless both operands share the same irrational part
    /// (or one of them is zero).
    pub fn checked_add(&self, other: &Self) -> Result<Self, Error> {
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.sqrt2_exp != other.sqrt2_exp || self.sqrtpi_exp != other.sqrtpi_exp {
            return Err(Error::IncompatibleBasis {
                lhs: self.basis_label(),
                rhs: other.basis_label(),
            });
        }
        let q = &self.q + &other.q;
        if q.is_zero() {
            return Ok(Self::zero());
        }
        Ok(Self {
            q,
            sqrt2_exp: self.sqrt2_exp,
            sqrtpi_exp: self.sqrtpi_exp,
        })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, Error> {
        self.checked_add(&-other.clone())
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn recip(&self) -> Self {
        assert!(!self.is_zero(), "reciprocal of zero");
        Self::new(
            self.q.recip(),
            -i64::from(self.sqrt2_exp),
            -self.sqrtpi_exp,
        )
    }

    pub fn powi(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| acc * self.clone())
    }

    /// Floating-point value, for reporting only.
    pub fn to_f64(&self) -> f64 {
        let irr = std::f64::consts::SQRT_2.powi(i32::from(self.sqrt2_exp))
            * std::f64::consts::PI.sqrt().powi(self.sqrtpi_exp as i32);
        match self.q.to_f64() {
            Some(v) if v.is_finite() && v != 0.0 => v * irr,
            _ if self.q.is_zero() => 0.0,
            // Numerator/denominator beyond f64 range: go through logarithms.
            _ => {
                let sign = if self.q.is_negative() { -1.0 } else { 1.0 };
                let ln = big_ln(self.q.numer()) - big_ln(self.q.denom()) + irr.ln();
                sign * ln.exp()
            }
        }
    }

    fn basis_label(&self) -> String {
        match (self.sqrt2_exp, self.sqrtpi_exp) {
            (0, 0) => "1".to_string(),
            (1, 0) => "√2".to_string(),
            (0, b) => format!("√π^{b}"),
            (_, b) => format!("√2·√π^{b}"),
        }
    }
}

fn big_ln(v: &BigInt) -> f64 {
    let bits = v.bits();
    if bits < 1000 {
        return v.abs().to_f64().unwrap_or(f64::INFINITY).ln();
    }
    let shift = bits - 64;
    let top = (v.abs() >> shift).to_f64().unwrap_or(1.0);
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// `2^e` as an exact rational, `e` of either sign.
pub(crate) fn pow2(e: i64) -> BigRational {
    let p = BigInt::one() << e.unsigned_abs();
    if e >= 0 {
        BigRational::from_integer(p)
    } else {
        BigRational::new(BigInt::one(), p)
    }
}

/// `n!` as a big integer.
pub fn factorial(n: u64) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, k| acc * k)
}

impl Mul for ClosedFormScalar {
    type Output = ClosedFormScalar;

    fn mul(self, rhs: Self) -> Self {
        Self::new(
            self.q * rhs.q,
            i64::from(self.sqrt2_exp) + i64::from(rhs.sqrt2_exp),
            self.sqrtpi_exp + rhs.sqrtpi_exp,
        )
    }
}

impl Mul<&ClosedFormScalar> for &ClosedFormScalar {
    type Output = ClosedFormScalar;

    fn mul(self, rhs: &ClosedFormScalar) -> ClosedFormScalar {
        self.clone() * rhs.clone()
    }
}

impl Div for ClosedFormScalar {
    type Output = ClosedFormScalar;

    fn div(self, rhs: Self) -> Self {
        self * rhs.recip()
    }
}

impl Neg for ClosedFormScalar {
    type Output = ClosedFormScalar;

    fn neg(self) -> Self {
        Self {
            q: -self.q,
            ..self
        }
    }
}

impl From<BigRational> for ClosedFormScalar {
    fn from(q: BigRational) -> Self {
        Self::rational(q)
    }
}

impl From<i64> for ClosedFormScalar {
    fn from(v: i64) -> Self {
        Self::integer(v)
    }
}

impl fmt::Display for ClosedFormScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.q)?;
        if self.sqrt2_exp == 1 {
            write!(f, "·√2")?;
        }
        match self.sqrtpi_exp {
            0 => Ok(()),
            1 => write!(f, "·√π"),
            b => write!(f, "·√π^{b}"),
        }
    }
}

/// Γ(k/2) for `k ≥ 1`; rational for even `k`, rational·√π for odd `k`.
pub fn gamma_half(k: u32) -> ClosedFormScalar {
    assert!(k >= 1, "gamma_half requires k >= 1");
    if k % 2 == 0 {
        ClosedFormScalar::integer(factorial(u64::from(k / 2 - 1)))
    } else {
        // Γ(j + 1/2) = (2j)! / (4^j j!) · √π
        let j = u64::from(k / 2);
        let q = BigRational::new(factorial(2 * j), factorial(j)) * pow2(-2 * j as i64);
        ClosedFormScalar::new(q, 0, 1)
    }
}

/// The constant `Z_n = √(2π)^n ∏_{i=1..n} Γ(1+i/2)/Γ(3/2)` normalising the GOE
/// eigenvalue density. `Z_0` is the empty product, 1.
pub fn z_const(n: u32) -> ClosedFormScalar {
    let gamma_three_halves = gamma_half(3);
    let prod = (1..=n).fold(ClosedFormScalar::one(), |acc, i| {
        acc * (gamma_half(i + 2) / gamma_three_halves.clone())
    });
    ClosedFormScalar::new(BigRational::one(), i64::from(n), i64::from(n)) * prod
}

/// `P_m = 2^(1-m²) · √π^m · ∏_{i=0..m} (2i)!`.
pub fn p_const(m: u32) -> ClosedFormScalar {
    let m64 = i64::from(m);
    let prod = (0..=u64::from(m)).fold(BigInt::one(), |acc, i| acc * factorial(2 * i));
    ClosedFormScalar::new(
        BigRational::from_integer(prod) * pow2(1 - m64 * m64),
        0,
        m64,
    )
}

/// Volume of `O(n)` under the metric `⟨u,v⟩ = tr(uᵀv)/2`:
/// `2^n π^(n(n+1)/4) / ∏_{i=1..n} Γ(i/2)`.
pub fn volume_orthogonal_group(n: u32) -> ClosedFormScalar {
    assert!(n >= 1, "volume_orthogonal_group requires n >= 1");
    let n64 = i64::from(n);
    let denom = (1..=n).fold(ClosedFormScalar::one(), |acc, i| acc * gamma_half(i));
    ClosedFormScalar::new(pow2(n64), 0, n64 * (n64 + 1) / 2) / denom
}

/// Volume of the unit sphere `S^d ⊂ ℝ^(d+1)`: `2 π^((d+1)/2) / Γ((d+1)/2)`.
pub fn volume_sphere(d: u32) -> ClosedFormScalar {
    ClosedFormScalar::new(BigRational::from_integer(2.into()), 0, i64::from(d) + 1)
        / gamma_half(d + 1)
}

#[derive(Serialize, Deserialize)]
struct ClosedFormJson {
    q: String,
    sqrt2_exp: i64,
    sqrtpi_exp: i64,
}

impl Serialize for ClosedFormScalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        ClosedFormJson {
            q: format_fraction(&self.q),
            sqrt2_exp: i64::from(self.sqrt2_exp),
            sqrtpi_exp: self.sqrtpi_exp,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ClosedFormScalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = ClosedFormJson::deserialize(deserializer)?;
        let q = parse_fraction(&raw.q).map_err(serde::de::Error::custom)?;
        Ok(Self::new(q, raw.sqrt2_exp, raw.sqrtpi_exp))
    }
}

/// `p/r` with `r > 1`, or just `p` for integers.
pub fn format_fraction(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn parse_fraction(s: &str) -> Result<BigRational, Error> {
    BigRational::from_str(s.trim())
        .map_err(|e| Error::Parse(format!("invalid fraction {s:?}: {e}")))
}
