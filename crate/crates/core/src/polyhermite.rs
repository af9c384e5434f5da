//! Physicists' Hermite polynomials, Gaussian-weight integrals, and the exact
//! second moment `E det(Q − u𝟙)²` of the characteristic polynomial of a
//! GOE(k) matrix.
//!
//! The moment polynomials come from the classical determinant formulas (one for
//! even and one for odd size). Everything is computed with exact rationals, so
//! the closed form `∫ E det(Q − u𝟙)² e^{−u²} du = √π (k+2)!/2^(k+1)` can be
//! checked with zero tolerance.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::exactform::{factorial, gamma_half, pow2, ClosedFormScalar};
use crate::poly::{IntPolynomial, RatPolynomial};

/// `H_i`, built from `H_{i+1} = 2x H_i − 2i H_{i−1}`.
pub fn hermite(i: usize) -> IntPolynomial {
    let mut prev = IntPolynomial::constant(BigInt::one());
    if i == 0 {
        return prev;
    }
    let two_x = IntPolynomial::monomial(BigInt::from(2), 1);
    let mut cur = two_x.clone();
    for k in 1..i {
        let next = &(&two_x * &cur) - &prev.scale(&BigInt::from(2 * k));
        prev = cur;
        cur = next;
    }
    cur
}

/// All of `H_0 ..= H_max` in one pass.
pub fn hermite_family(max: usize) -> Vec<IntPolynomial> {
    let mut out = Vec::with_capacity(max + 1);
    out.push(IntPolynomial::constant(BigInt::one()));
    if max == 0 {
        return out;
    }
    let two_x = IntPolynomial::monomial(BigInt::from(2), 1);
    out.push(two_x.clone());
    for k in 1..max {
        let next = &(&two_x * &out[k]) - &out[k - 1].scale(&BigInt::from(2 * k));
        out.push(next);
    }
    out
}

fn rat_hermite(i: usize) -> RatPolynomial {
    hermite(i).to_rational()
}

/// `∫_ℝ p(u) e^{−u²} du`, exactly. Only even coefficients contribute:
/// `∫ u^{2k} e^{−u²} du = (2k)!/(4^k k!) · √π`.
pub fn gaussian_integral(p: &RatPolynomial) -> ClosedFormScalar {
    let mut sum = BigRational::zero();
    for (deg, c) in p.coeffs().iter().enumerate().step_by(2) {
        if c.is_zero() {
            continue;
        }
        let k = (deg / 2) as u64;
        let moment = BigRational::new(factorial(2 * k), factorial(k)) * pow2(-2 * k as i64);
        sum += c * moment;
    }
    ClosedFormScalar::rational(sum) * ClosedFormScalar::sqrt_pi()
}

/// Entries of the 2×2 block shared by `X_j` and `Y_j`:
/// `[[H_{2j}, H'_{2j}], [H_{2j+1} − H'_{2j}, H'_{2j+1} − H''_{2j}]]`.
fn x_block(j: usize) -> [RatPolynomial; 4] {
    let h0 = rat_hermite(2 * j);
    let h1 = rat_hermite(2 * j + 1);
    let h0d = h0.derivative();
    let h0dd = h0d.derivative();
    let h1d = h1.derivative();
    let lower_left = &h1 - &h0d;
    let lower_right = &h1d - &h0dd;
    [h0, h0d, lower_left, lower_right]
}

fn det2(a: &RatPolynomial, b: &RatPolynomial, c: &RatPolynomial, d: &RatPolynomial) -> RatPolynomial {
    &(a * d) - &(b * c)
}

/// `det X_j(u)`.
pub fn x_matrix_det(j: usize) -> RatPolynomial {
    let [a, b, c, d] = x_block(j);
    det2(&a, &b, &c, &d)
}

/// `det Y_j(u)` for `0 ≤ j ≤ m`, where `Y_j` extends `X_j` by the column
/// `((2j)!/j!, 0, (2m+2)!/(m+1)!)` and the row `(H_{2m+2}, H'_{2m+2})`.
pub fn y_matrix_det(j: usize, m: usize) -> RatPolynomial {
    assert!(j <= m, "y_matrix_det requires j <= m");
    let [a, b, c, d] = x_block(j);
    let e = rat_hermite(2 * m + 2);
    let f = e.derivative();
    let top = BigRational::new(factorial(2 * j as u64), factorial(j as u64));
    let bottom = BigRational::new(factorial(2 * m as u64 + 2), factorial(m as u64 + 1));
    // Cofactor expansion along the first column (middle entry is zero).
    let minor_top = det2(&c, &d, &e, &f);
    let minor_bottom = det2(&a, &b, &c, &d);
    &minor_top.scale(&top) + &minor_bottom.scale(&bottom)
}

/// `p_k(u) = E_{Q∼GOE(k)} det(Q − u𝟙)²` as an exact polynomial in `u`.
///
/// `k = 0` returns the constant 1 (the determinant of the empty matrix).
pub fn second_moment_poly(k: usize) -> RatPolynomial {
    if k == 0 {
        return RatPolynomial::constant(BigRational::one());
    }
    let m = k / 2;
    if k % 2 == 0 {
        let mut sum = RatPolynomial::zero();
        for j in 0..=m {
            let w = pow2(-2 * j as i64 - 1) / BigRational::from_integer(factorial(2 * j as u64));
            sum = &sum + &x_matrix_det(j).scale(&w);
        }
        let pre = BigRational::from_integer(factorial(2 * m as u64)) * pow2(-2 * m as i64);
        sum.scale(&pre)
    } else {
        let mut sum = RatPolynomial::zero();
        for j in 0..=m {
            let w = pow2(-2 * j as i64 - 2) / BigRational::from_integer(factorial(2 * j as u64));
            sum = &sum + &y_matrix_det(j, m).scale(&w);
        }
        // √π (2m+1)! / (2^{4m+2} Γ(m + 3/2)); the √π cancels against Γ.
        let pre = ClosedFormScalar::sqrt_pi()
            * ClosedFormScalar::rational(
                BigRational::from_integer(factorial(2 * m as u64 + 1)) * pow2(-4 * m as i64 - 2),
            )
            / gamma_half(2 * m as u32 + 3);
        let pre = pre
            .as_rational()
            .cloned()
            .expect("odd-size prefactor is rational");
        sum.scale(&pre)
    }
}

/// `∫ p_k(u) e^{−u²} du`, through [`gaussian_integral`].
pub fn second_moment_integral(k: usize) -> ClosedFormScalar {
    gaussian_integral(&second_moment_poly(k))
}

/// The closed form `√π (k+2)! / 2^(k+1)`.
pub fn second_moment_integral_closed_form(k: usize) -> ClosedFormScalar {
    ClosedFormScalar::rational(
        BigRational::from_integer(factorial(k as u64 + 2)) * pow2(-(k as i64) - 1),
    ) * ClosedFormScalar::sqrt_pi()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Polynomial;

    fn ip(c: &[i64]) -> IntPolynomial {
        Polynomial::new(c.iter().map(|&v| BigInt::from(v)).collect())
    }

    fn rq(p: i64, q: i64) -> BigRational {
        BigRational::new(p.into(), q.into())
    }

    fn rp(c: &[(i64, i64)]) -> RatPolynomial {
        Polynomial::new(c.iter().map(|&(p, q)| rq(p, q)).collect())
    }

    /// Rodrigues: H_i = (−1)^i e^{x²} dⁱ/dxⁱ e^{−x²}. Tracks q with
    /// dⁱ/dxⁱ e^{−x²} = q(x) e^{−x²}, using (q e^{−x²})' = (q' − 2xq) e^{−x²}.
    fn rodrigues(i: usize) -> IntPolynomial {
        let two_x = ip(&[0, 2]);
        let mut q = ip(&[1]);
        for _ in 0..i {
            q = &q.derivative() - &(&two_x * &q);
        }
        if i % 2 == 1 {
            -q
        } else {
            q
        }
    }

    #[test]
    fn hermite_small() {
        assert_eq!(hermite(0), ip(&[1]));
        assert_eq!(hermite(2), ip(&[-2, 0, 4]));
        assert_eq!(hermite(5), ip(&[0, 120, 0, -160, 0, 32]));
    }

    #[test]
    fn recurrence_matches_rodrigues() {
        for i in 0..=25 {
            assert_eq!(hermite(i), rodrigues(i), "i = {i}");
        }
    }

    #[test]
    fn family_matches_single() {
        let fam = hermite_family(15);
        for (i, h) in fam.iter().enumerate() {
            assert_eq!(h, &hermite(i));
        }
    }

    #[test]
    fn leading_coefficient_and_parity() {
        for i in 0..=30 {
            let h = hermite(i);
            assert_eq!(h.leading_coeff(), BigInt::one() << i);
            let expect = if i % 2 == 0 { h.clone() } else { -h.clone() };
            assert_eq!(h.reflect(), expect, "i = {i}");
        }
    }

    #[test]
    fn derivative_identity() {
        for i in 1..=20 {
            let lhs = hermite(i).derivative();
            let rhs = hermite(i - 1).scale(&BigInt::from(2 * i));
            assert_eq!(lhs, rhs, "i = {i}");
        }
        assert_eq!(
            rat_hermite(3).derivative(),
            rat_hermite(2).scale(&BigRational::from_integer(6.into()))
        );
        assert_eq!(
            rat_hermite(6).derivative(),
            rat_hermite(5).scale(&BigRational::from_integer(12.into()))
        );
    }

    #[test]
    fn gaussian_integral_basics() {
        let sp = ClosedFormScalar::sqrt_pi();
        assert_eq!(gaussian_integral(&rp(&[(1, 1)])), sp);
        assert_eq!(
            gaussian_integral(&rp(&[(0, 1), (0, 1), (1, 1)])),
            ClosedFormScalar::ratio(1, 2) * sp.clone()
        );
        let h2 = rat_hermite(2);
        assert_eq!(
            gaussian_integral(&(&h2 * &h2)),
            ClosedFormScalar::integer(8) * sp.clone()
        );
        assert_eq!(gaussian_integral(&rp(&[(0, 1), (5, 1)])), ClosedFormScalar::zero());
    }

    #[test]
    fn orthogonality() {
        let fam: Vec<RatPolynomial> = hermite_family(12).iter().map(|h| h.to_rational()).collect();
        for i in 0..=12 {
            for j in 0..=12 {
                let got = gaussian_integral(&(&fam[i] * &fam[j]));
                let expect = if i == j {
                    ClosedFormScalar::integer(factorial(i as u64) << i) * ClosedFormScalar::sqrt_pi()
                } else {
                    ClosedFormScalar::zero()
                };
                assert_eq!(got, expect, "i = {i}, j = {j}");
            }
        }
    }

    #[test]
    fn x_det_values() {
        assert_eq!(x_matrix_det(0), rp(&[(2, 1)]));
        assert_eq!(
            gaussian_integral(&x_matrix_det(0)),
            ClosedFormScalar::integer(2) * ClosedFormScalar::sqrt_pi()
        );
        for j in 0..=8usize {
            let expect = ClosedFormScalar::integer(
                factorial(2 * j as u64) * BigInt::from(4 * j + 1) << (2 * j + 1),
            ) * ClosedFormScalar::sqrt_pi();
            assert_eq!(gaussian_integral(&x_matrix_det(j)), expect, "j = {j}");
        }
    }

    #[test]
    fn summed_x_identity() {
        for m in 0..=10usize {
            let mut acc = ClosedFormScalar::zero();
            for j in 0..=m {
                let w = ClosedFormScalar::rational(
                    pow2(-2 * j as i64 - 1) / BigRational::from_integer(factorial(2 * j as u64)),
                );
                acc = acc.checked_add(&(w * gaussian_integral(&x_matrix_det(j)))).unwrap();
            }
            let expect = ClosedFormScalar::integer(((m + 1) * (2 * m + 1)) as i64)
                * ClosedFormScalar::sqrt_pi();
            assert_eq!(acc, expect, "m = {m}");
        }
    }

    #[test]
    fn y_det_values() {
        assert_eq!(y_matrix_det(0, 0), rp(&[(8, 1), (0, 1), (8, 1)]));
        for m in 0..=5usize {
            let col = ClosedFormScalar::rational(BigRational::new(
                factorial(2 * m as u64 + 2),
                factorial(m as u64 + 1),
            ));
            for j in 0..=m {
                let base = col.clone() * gaussian_integral(&x_matrix_det(j));
                let got = gaussian_integral(&y_matrix_det(j, m));
                let expect = if j < m {
                    base
                } else {
                    let extra = ClosedFormScalar::rational(BigRational::new(
                        factorial(2 * m as u64),
                        factorial(m as u64),
                    )) * ClosedFormScalar::integer(factorial(2 * m as u64 + 2) << (2 * m + 2))
                        * ClosedFormScalar::sqrt_pi();
                    base.checked_add(&extra).unwrap()
                };
                assert_eq!(got, expect, "j = {j}, m = {m}");
            }
        }
    }

    #[test]
    fn moment_polys_small() {
        assert_eq!(second_moment_poly(1), rp(&[(1, 1), (0, 1), (1, 1)]));
        assert_eq!(
            second_moment_poly(2),
            rp(&[(7, 4), (0, 1), (1, 1), (0, 1), (1, 1)])
        );
        assert_eq!(second_moment_poly(0), rp(&[(1, 1)]));
    }

    /// Brute-force oracle for k = 2: Q = [[a, c], [c, b]] with a, b ~ N(0,1),
    /// c ~ N(0, 1/2). det(Q − u) = (a−u)(b−u) − c²; expand and take moments
    /// E a² = 1, E a⁴ = 3, E c² = 1/2, E c⁴ = 3/4.
    #[test]
    fn moment_poly_two_by_two_oracle() {
        for &u in &[-1.5, 0.0, 0.5, 2.0] {
            let u2: f64 = u * u;
            // E[(a−u)²(b−u)²] = (1+u²)²; E[−2(a−u)(b−u)c²] = −2·u²·½; E c⁴ = ¾
            let expect = (1.0 + u2).powi(2) - u2 + 0.75;
            let got = second_moment_poly(2).eval_f64(u);
            assert!((got - expect).abs() < 1e-12, "u = {u}");
        }
    }

    #[test]
    fn moment_polys_even_monic() {
        for k in 1..=20 {
            let p = second_moment_poly(k);
            assert_eq!(p.degree(), Some(2 * k), "k = {k}");
            assert!(p.is_monic(), "k = {k}");
            assert!(p.is_even(), "k = {k}");
        }
    }

    #[test]
    fn integral_closed_form() {
        let sp = ClosedFormScalar::sqrt_pi();
        assert_eq!(second_moment_integral(1), ClosedFormScalar::ratio(3, 2) * sp.clone());
        assert_eq!(second_moment_integral(2), ClosedFormScalar::integer(3) * sp.clone());
        assert_eq!(second_moment_integral(5), ClosedFormScalar::ratio(315, 4) * sp.clone());
        for k in 1..=30 {
            assert_eq!(
                second_moment_integral(k),
                second_moment_integral_closed_form(k),
                "k = {k}"
            );
        }
    }
}
