//! Exact checks of the combinatorial identities behind the explicit
//! holomorphic projections.

use super::gamma::{gen_binomial, half, int, recip_factorial, rpow};
use super::RcError;
use crate::arith::factorial;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

fn sign(k: i64) -> BigRational {
    if k.rem_euclid(2) == 0 {
        BigRational::one()
    } else {
        -BigRational::one()
    }
}

fn fact(n: i64) -> BigRational {
    BigRational::from_integer(factorial(n as u64))
}

fn two_pow(e: i64) -> BigRational {
    rpow(&int(2), e)
}

/// `P_{a,b}(X,Y) = Σ_{j=0}^{a-2} binom(j+b-2, j) X^j (X+Y)^{a-j-2}`.
pub fn pab(a: i64, b: &BigRational, x: &BigRational, y: &BigRational) -> Result<BigRational, RcError> {
    if a < 2 {
        return Err(RcError::PabDegree(a));
    }
    let xy = x + y;
    Ok((0..=a - 2)
        .map(|j| gen_binomial(&(int(j) + b - int(2)), j) * rpow(x, j) * rpow(&xy, a - j - 2))
        .fold(BigRational::zero(), |s, t| s + t))
}

/// `Σ_j binom(a+b-3, a-2-j) binom(j+b-2, j) (X+Y)^{a-2-j} (-Y)^j`, valid for `b ∉ {1, 2}`.
pub fn pab_alternate(a: i64, b: &BigRational, x: &BigRational, y: &BigRational) -> Result<BigRational, RcError> {
    if a < 2 {
        return Err(RcError::PabDegree(a));
    }
    if *b == int(1) || *b == int(2) {
        return Err(RcError::PabExcludedB);
    }
    let xy = x + y;
    let my = -y;
    let top = int(a - 3) + b;
    Ok((0..=a - 2)
        .map(|j| {
            gen_binomial(&top, a - 2 - j)
                * gen_binomial(&(int(j) + b - int(2)), j)
                * rpow(&xy, a - 2 - j)
                * rpow(&my, j)
        })
        .fold(BigRational::zero(), |s, t| s + t))
}

/// Both sides of
/// `Σ_μ (-1)^μ/(μ-j+½) · (4ν-2μ+1)!/((2ν-μ)! μ! (2ν-2μ+1)!) = 2^{4ν+2}(-1)^j (2ν-j+1)! j!/((2j)!(2ν-2j+2)!)`.
pub fn comb_lemma_check(nu: i64, j: i64) -> (BigRational, BigRational) {
    let lhs = (0..=nu)
        .map(|mu| {
            let multinomial = fact(4 * nu - 2 * mu + 1) / (fact(2 * nu - mu) * fact(mu) * fact(2 * nu - 2 * mu + 1));
            sign(mu) / (int(mu - j) + half(1)) * multinomial
        })
        .fold(BigRational::zero(), |s, t| s + t);
    let rhs = two_pow(4 * nu + 2)
        * sign(j)
        * fact(2 * nu - j + 1)
        * fact(j)
        / fact(2 * j)
        * recip_factorial(2 * nu - 2 * j + 2);
    (lhs, rhs)
}

/// Part (1): `binom(ν+½, ν-μ) binom(ν+½, μ) = 2^{-2ν-1} binom(2ν+1, ν+1) binom(2ν+2, 2μ+1)`.
pub fn comb_lemma2_part1(nu: i64, mu: i64) -> (BigRational, BigRational) {
    let top = int(nu) + half(1);
    let lhs = gen_binomial(&top, nu - mu) * gen_binomial(&top, mu);
    let rhs = two_pow(-2 * nu - 1) * gen_binomial(&int(2 * nu + 1), nu + 1) * gen_binomial(&int(2 * nu + 2), 2 * mu + 1);
    (lhs, rhs)
}

/// Part (2): `binom(2ν-μ+½, 2ν+1-j) binom(j-μ-3/2, j)` against
/// `(-1)^{μ+1}/(j-μ-½) · 2^{-4ν-2} (4ν-2μ+1)!(2μ+1)!/((2ν-μ)! μ! j! (2ν-j+1)!)`.
pub fn comb_lemma2_part2(nu: i64, mu: i64, j: i64) -> (BigRational, BigRational) {
    let lhs = gen_binomial(&(int(2 * nu - mu) + half(1)), 2 * nu + 1 - j)
        * gen_binomial(&(int(j - mu) - half(3)), j);
    let rhs = sign(mu + 1) / (int(j - mu) - half(1))
        * two_pow(-4 * nu - 2)
        * fact(4 * nu - 2 * mu + 1)
        * fact(2 * mu + 1)
        / (fact(2 * nu - mu) * fact(mu) * fact(j))
        * recip_factorial(2 * nu - j + 1);
    (lhs, rhs)
}

/// Both parts for one `(ν, μ, j)`.
pub fn comb_lemma2_checks(nu: i64, mu: i64, j: i64) -> (bool, bool) {
    let (a, b) = comb_lemma2_part1(nu, mu);
    let (c, d) = comb_lemma2_part2(nu, mu, j);
    (a == b, c == d)
}

/// Both sides of the projection identity at `m = u²`, `n = v²`:
///
/// ```text
/// 2^{-2ν-1} C(2ν+1, ν+1) m^{-½}(√m - √n)^{2ν+2}
///   = Σ_μ binom(ν+½, ν-μ) binom(ν+½, μ) m^{ν-μ} (m^{μ-2ν-½} P_{3+2ν, ½-μ}(m-n, n) - n^{½+μ})
/// ```
pub fn prop_poly_sides(nu: i64, u: i64, v: i64) -> Result<(BigRational, BigRational), RcError> {
    if u <= v || v < 1 {
        return Err(RcError::NotDecreasing { u, v });
    }
    let (ur, vr) = (int(u), int(v));
    let m = int(u * u);
    let n = int(v * v);
    let lhs = two_pow(-2 * nu - 1)
        * gen_binomial(&int(2 * nu + 1), nu + 1)
        * ur.recip()
        * rpow(&(&ur - &vr), 2 * nu + 2);
    let top = int(nu) + half(1);
    let mut rhs = BigRational::zero();
    for mu in 0..=nu {
        let coeff = gen_binomial(&top, nu - mu) * gen_binomial(&top, mu) * rpow(&m, nu - mu);
        let p = pab(3 + 2 * nu, &(half(1) - int(mu)), &(&m - &n), &n)?;
        let inner = rpow(&ur, 2 * mu - 4 * nu - 1) * p - rpow(&vr, 2 * mu + 1);
        rhs += coeff * inner;
    }
    Ok((lhs, rhs))
}

pub fn prop_poly_identity_check(nu: i64, u: i64, v: i64) -> Result<bool, RcError> {
    let (l, r) = prop_poly_sides(nu, u, v)?;
    Ok(l == r)
}

/// `Σ_{t=0}^{n} (-1)^t (2n-t)!/(t!(n-t)!(n+1-t)!)`.
pub fn cohen_vanishing(n: i64) -> BigRational {
    (0..=n)
        .map(|t| sign(t) * fact(2 * n - t) / (fact(t) * fact(n - t) * fact(n + 1 - t)))
        .fold(BigRational::zero(), |s, x| s + x)
}

/// Random-free rational test points for the `P_{a,b}` comparison.
pub fn rational_grid(count: usize) -> Vec<(BigRational, BigRational)> {
    // deterministic spread of small numerators/denominators, both signs
    (0..count as i64)
        .map(|i| {
            let x = BigRational::new(BigInt::from(3 * i - 17), BigInt::from(i % 5 + 1));
            let y = BigRational::new(BigInt::from(11 - 2 * i), BigInt::from(i % 7 + 2));
            (x, y)
        })
        .collect()
}
