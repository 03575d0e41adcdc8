//! Coefficient-level Rankin–Cohen brackets and the cusp form attached to the
//! first moments of the Legendre family.
//!
//! Weights are passed doubled (`k2 = 2k`) so that half-integers stay exact.

use super::gamma::{gen_binomial, half, int, rpow, HalfIntegerGamma};
use super::identities::pab;
use super::RcError;
use crate::arith::{chi_minus4, isqrt, rational_to_f64};
use crate::classnumbers::ClassNumberTable;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

fn weight(k2: i64) -> BigRational {
    half(k2)
}

/// `(a-1)(a-2)…(a-μ) = Γ(a)/Γ(a-μ)`, finite even when `a` is a pole.
fn gamma_ratio(a: &BigRational, mu: i64) -> BigRational {
    (1..=mu).fold(BigRational::from_integer(1.into()), |acc, i| acc * (a - int(i)))
}

/// `κ(k,l,ν) = 1/((k+l+2ν-2)!(k-1)) Σ_μ Γ(2-k)Γ(l+2ν-μ)/Γ(2-k-μ) binom(k+ν-1,ν-μ) binom(l+ν-1,μ)`.
pub fn kappa(k2: i64, l2: i64, nu: i64) -> Result<HalfIntegerGamma, RcError> {
    if k2 != 3 || !(l2 == 1 || l2 == 3) {
        return Err(RcError::UnsupportedWeights);
    }
    let (k, l) = (weight(k2), weight(l2));
    // k + l + 2ν - 2 is an integer for the supported weights
    let top = (k2 + l2) / 2 + 2 * nu - 2;
    let lead = HalfIntegerGamma::gamma(2 * (top + 1)).ok_or(RcError::UnsupportedWeights)?;
    let lead = &HalfIntegerGamma::one() / &lead.scale(&(&k - int(1)));
    let mut sum = HalfIntegerGamma::rational(BigRational::zero());
    let a = int(2) - &k;
    for mu in 0..=nu {
        let g = HalfIntegerGamma::gamma(l2 + 4 * nu - 2 * mu).ok_or(RcError::UnsupportedWeights)?;
        let c = gamma_ratio(&a, mu)
            * gen_binomial(&(&k + int(nu - 1)), nu - mu)
            * gen_binomial(&(&l + int(nu - 1)), mu);
        sum = sum.checked_add(&g.scale(&c)).ok_or(RcError::UnsupportedWeights)?;
    }
    Ok(&lead * &sum)
}

/// `a_g(m)` for `g = η(8τ)³ = Σ_{t>=1} χ₋₄(t) t q^{t²}`.
pub fn theta_cube_coefficient(m: i64) -> BigRational {
    if m <= 0 {
        return BigRational::zero();
    }
    let t = isqrt(m as u64) as i64;
    if t * t != m {
        return BigRational::zero();
    }
    int(chi_minus4(t) * t)
}

/// Coefficients of the nonholomorphic part of Zagier's weight 3/2 form:
/// `1/(4√π)` at every positive square, zero elsewhere.
pub fn zagier_fminus(n: i64) -> HalfIntegerGamma {
    let t = isqrt(n.max(0) as u64) as i64;
    if n > 0 && t * t == n {
        HalfIntegerGamma { coeff: BigRational::new(1.into(), 4.into()), sqrt_pi_power: -1 }
    } else {
        HalfIntegerGamma::rational(BigRational::zero())
    }
}

/// The `r`-th coefficient of the projected product for `k = l = 3/2`,
/// summed over pairs `m = u²`, `n = v²` with `m - n = r`:
///
/// `-Γ(1-k) Σ a_g(m) c̄(n) Σ_μ binom(k+ν-1,ν-μ) binom(l+ν-1,μ) m^{ν-μ}
///   (m^{μ-2ν-l+1} P_{k+l+2ν, 2-k-μ}(r, n) - n^{k+μ-1})`.
///
pub fn mertens_br_coefficient(
    r: i64,
    nu: i64,
    fminus: impl Fn(i64) -> HalfIntegerGamma,
    a_g: impl Fn(i64) -> BigRational,
) -> Result<BigRational, RcError> {
    let k = half(3);
    let l = half(3);
    let lead = HalfIntegerGamma::gamma(-1).expect("Γ(-1/2) is finite").scale(&int(-1));
    let mut total = HalfIntegerGamma::rational(BigRational::zero());
    let rr = int(r);
    // (u - v)(u + v) = r with u > v >= 1 forces 2v < r
    for v in 1..=(r - 1) / 2 {
        let u2 = r + v * v;
        let u = isqrt(u2 as u64) as i64;
        if u * u != u2 {
            continue;
        }
        let ag = a_g(u2);
        let c = fminus(v * v);
        if ag.is_zero() || c.is_zero() {
            continue;
        }
        let (ur, vr) = (int(u), int(v));
        let n = int(v * v);
        let mut inner = BigRational::zero();
        for mu in 0..=nu {
            let coeff = gen_binomial(&(&k + int(nu - 1)), nu - mu) * gen_binomial(&(&l + int(nu - 1)), mu);
            let p = pab(3 + 2 * nu, &(int(2 - mu) - &k), &rr, &n)?;
            // m^{ν-μ} m^{μ-2ν-1/2} = u^{-2ν-1}, n^{1/2+μ} = v^{2μ+1}
            let term = rpow(&ur, -2 * nu - 1) * p - rpow(&ur, 2 * nu - 2 * mu) * rpow(&vr, 2 * mu + 1);
            inner += coeff * term;
        }
        total = total.checked_add(&c.scale(&(ag * inner))).expect("uniform √π power");
    }
    let out = &lead * &total;
    out.as_rational().cloned().ok_or(RcError::NotRational(out.sqrt_pi_power))
}

/// `[f, g]_ν` at `q^N` for weights `k`, `l`:
/// `Σ_{a+b=N} f(a) g(b) Σ_{r+s=ν} (-1)^r binom(k+ν-1,s) binom(l+ν-1,r) a^r b^s`.
pub fn bracket_coefficient(
    n: i64,
    nu: i64,
    k2: i64,
    l2: i64,
    f: impl Fn(i64) -> BigRational,
    g: impl Fn(i64) -> BigRational,
) -> BigRational {
    let (k, l) = (weight(k2), weight(l2));
    let weights: Vec<(i64, BigRational)> = (0..=nu)
        .map(|r| {
            let s = nu - r;
            let sign = if r % 2 == 0 { int(1) } else { int(-1) };
            (r, sign * gen_binomial(&(&k + int(nu - 1)), s) * gen_binomial(&(&l + int(nu - 1)), r))
        })
        .collect();
    let mut total = BigRational::zero();
    for b in 0..=n {
        let gb = g(b);
        if gb.is_zero() {
            continue;
        }
        let a = n - b;
        let fa = f(a);
        if fa.is_zero() {
            continue;
        }
        let (ar, br) = (int(a), int(b));
        let poly = weights
            .iter()
            .fold(BigRational::zero(), |acc, (r, w)| acc + w * rpow(&ar, *r) * rpow(&br, nu - r));
        total += fa * gb * poly;
    }
    total
}

/// `Σ_{t²-l²=n, l>=1} χ₋₄(t)(t-l)^e`.
fn difference_of_squares_sum(n: i64, e: u32) -> BigInt {
    let mut total = BigInt::zero();
    for l in 1..=(n - 1) / 2 {
        let t2 = n + l * l;
        let t = isqrt(t2 as u64) as i64;
        if t * t == t2 {
            total += BigInt::from(chi_minus4(t)) * BigInt::from(t - l).pow(e);
        }
    }
    total
}

/// Coefficients `c(1..=N)` of the weight `2ν+3` cusp form
/// `[H⁺, η(8τ)³]_ν + (middle) + (κ/(8√π)) Σ χ₋₄(n) n^{2ν+2} q^{n²}`.
pub fn cusp_coeffs(table: &ClassNumberTable, big_n: u64, nu: i64) -> Result<Vec<BigRational>, RcError> {
    if table.bound() < big_n {
        return Err(RcError::TableTooSmall { bound: table.bound(), needed: big_n });
    }
    let kap = kappa(3, 3, nu)?;
    let kap_over = (&kap / &HalfIntegerGamma { coeff: int(8), sqrt_pi_power: 1 })
        .as_rational()
        .cloned()
        .ok_or(RcError::NotRational(kap.sqrt_pi_power - 1))?;
    let middle = rpow(&int(2), -2 * nu - 2) * gen_binomial(&int(2 * nu + 1), nu + 1);
    let out = (1..=big_n as i64)
        .map(|n| {
            let mut c = bracket_coefficient(n, nu, 3, 3, |a| table.hstar(a), theta_cube_coefficient);
            c += &middle * BigRational::from_integer(difference_of_squares_sum(n, (2 * nu + 2) as u32));
            let t = isqrt(n as u64) as i64;
            if t * t == n {
                c += &kap_over * int(chi_minus4(t)) * rpow(&int(t), 2 * nu + 2);
            }
            c
        })
        .collect();
    Ok(out)
}

/// The `ν = 0` case written out directly:
/// `Σ_{s≡1(4)} H*(n-s²)s + ¼Σ χ₋₄(t)(t-l)² + ⅛χ₋₄(√n)n`.
pub fn cusp_coeffs_2f1(table: &ClassNumberTable, big_n: u64) -> Result<Vec<BigRational>, RcError> {
    if table.bound() < big_n {
        return Err(RcError::TableTooSmall { bound: table.bound(), needed: big_n });
    }
    Ok((1..=big_n as i64)
        .map(|n| {
            let mut twelve = 0i64;
            let mut s = 1i64;
            // s runs over 1, -3, 5, -7, ...
            while s * s <= n {
                twelve += table.hstar12(n - s * s) * s;
                s = if s > 0 { -(s + 2) } else { -s + 2 };
            }
            let mut c = BigRational::new(twelve.into(), 12.into());
            c += BigRational::new(difference_of_squares_sum(n, 2), 4.into());
            let t = isqrt(n as u64) as i64;
            if t * t == n {
                c += BigRational::new((chi_minus4(t) * n).into(), 8.into());
            }
            c
        })
        .collect())
}

/// `max_{n ∈ [N/2, N]} |c(n)| / n^{ν+5/4}` for each `N` in `cutoffs`.
pub fn growth_ratios(coeffs: &[BigRational], nu: i64, cutoffs: &[usize]) -> Vec<f64> {
    let e = nu as f64 + 1.25;
    cutoffs
        .iter()
        .map(|&big_n| {
            (big_n / 2..=big_n.min(coeffs.len()))
                .filter(|&n| n >= 1)
                .map(|n| rational_to_f64(&coeffs[n - 1].abs()) / (n as f64).powf(e))
                .fold(0.0, f64::max)
        })
        .collect()
}

fn divisor_count(n: u64) -> u64 {
    let mut count = 1;
    let mut rest = n;
    let mut p = 2;
    while p * p <= rest {
        let mut e = 0;
        while rest % p == 0 {
            rest /= p;
            e += 1;
        }
        count *= e + 1;
        p += 1;
    }
    if rest > 1 {
        count *= 2;
    }
    count
}

/// Indices `n` where `|c(n)| > c(1)·d(n)·n^{ν+1}`, the Deligne bound for a
/// normalized eigenform of weight `2ν+3` scaled by `c(1)`.
pub fn deligne_bound_violations(coeffs: &[BigRational], nu: i64) -> Vec<u64> {
    let Some(lead) = coeffs.first().map(|c| c.abs()) else {
        return Vec::new();
    };
    coeffs
        .iter()
        .enumerate()
        .map(|(i, c)| (i as u64 + 1, c))
        .filter(|(n, c)| {
            let bound = &lead * int(divisor_count(*n) as i64) * rpow(&int(*n as i64), nu + 1);
            c.abs() > bound
        })
        .map(|(n, _)| n)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{big_rational, binomial};

    fn table() -> ClassNumberTable {
        ClassNumberTable::tabulate(4096)
    }

    #[test]
    fn kappa_values() {
        let k0 = kappa(3, 3, 0).unwrap();
        assert_eq!(k0, HalfIntegerGamma { coeff: int(1), sqrt_pi_power: 1 });
        for nu in 0..=6 {
            assert_eq!(kappa(3, 3, nu).unwrap().sqrt_pi_power, 1, "ν={nu}");
            assert!(kappa(3, 1, nu).is_ok());
        }
        assert_eq!(gamma_ratio(&half(1), 2), big_rational(3, 4));
        assert!(kappa(1, 3, 0).is_err());
    }

    #[test]
    fn mertens_first_moment_examples() {
        let b = |r| mertens_br_coefficient(r, 0, zagier_fminus, theta_cube_coefficient).unwrap();
        assert_eq!(b(3), int(0));
        assert_eq!(b(8), int(-1));
        assert_eq!(b(5), big_rational(-1, 4));
    }

    #[test]
    fn mertens_matches_closed_middle_term() {
        for nu in 0..=3 {
            let scale = rpow(&int(2), -2 * nu - 2) * BigRational::from_integer(binomial(2 * nu as u64 + 1, nu as u64 + 1));
            for r in 1..=80 {
                let direct = mertens_br_coefficient(r, nu, zagier_fminus, theta_cube_coefficient).unwrap();
                let closed = &scale * BigRational::from_integer(difference_of_squares_sum(r, (2 * nu + 2) as u32));
                assert_eq!(direct, closed, "ν={nu} r={r}");
            }
        }
    }

    #[test]
    fn first_cusp_coefficient() {
        let t = table();
        let c = cusp_coeffs_2f1(&t, 64).unwrap();
        assert_eq!(c[0], big_rational(1, 24));
        assert_eq!(cusp_coeffs(&t, 64, 0).unwrap(), c);
    }

    #[test]
    fn bracket_zero_is_product() {
        let f = |a: i64| int(a + 1);
        let g = |b: i64| int(if b == 1 { 1 } else { 0 });
        assert_eq!(bracket_coefficient(5, 0, 3, 3, f, g), int(5));
        // ν=1: -binom(3/2,0)·binom(3/2,1)... a·(−3/2) + b·(3/2)
        assert_eq!(bracket_coefficient(5, 1, 3, 3, f, g), half(3) * int(1 - 4) * int(5));
    }

    #[test]
    fn coefficients_are_integral_after_scaling() {
        let c = cusp_coeffs_2f1(&table(), 4096).unwrap();
        assert!(c.iter().all(|x| (x * int(24)).is_integer()));
        assert_eq!(c[3], big_rational(1, 3));
        assert_eq!(c[19], int(-2));
    }

    #[test]
    fn deligne_bound_holds() {
        let c = cusp_coeffs_2f1(&table(), 4096).unwrap();
        assert!(deligne_bound_violations(&c, 0).is_empty());
        let r = growth_ratios(&c, 0, &[512, 1024, 2048]);
        assert!(r.windows(2).all(|w| w[1] < w[0]), "{r:?}");
    }

    #[test]
    fn higher_bracket_is_rational_and_bounded() {
        // not an eigenform, so only the growth rate is checked
        let c = cusp_coeffs(&table(), 600, 1).unwrap();
        assert_eq!(c[0], big_rational(-1, 32));
        let r = growth_ratios(&c, 1, &[75, 150, 300, 600]);
        assert!(r.iter().all(|&x| x < 0.1), "{r:?}");
    }
}
