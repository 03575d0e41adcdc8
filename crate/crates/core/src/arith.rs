//! Small integer helpers shared across modules.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Distinct prime factors in increasing order.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Writes `q = p^r` with `p` prime, if possible.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    let fs = prime_factors(q);
    if fs.len() != 1 {
        return None;
    }
    let p = fs[0];
    let mut r = 0;
    let mut m = q;
    while m > 1 {
        m /= p;
        r += 1;
    }
    Some((p, r))
}

/// All prime powers `p^r <= bound` with `p >= min_p`, increasing.
pub fn prime_powers_up_to(bound: u64, min_p: u64) -> Vec<u64> {
    let mut out: Vec<u64> = (2..=bound)
        .filter(|&q| matches!(prime_power(q), Some((p, _)) if p >= min_p))
        .collect();
    out.sort_unstable();
    out
}

pub fn primes_in(lo: u64, hi: u64) -> Vec<u64> {
    (lo..=hi).filter(|&n| is_prime(n)).collect()
}

/// Legendre symbol `(a | p)` for an odd prime `p`.
pub fn legendre_symbol(a: i64, p: u64) -> i32 {
    let a = a.rem_euclid(p as i64) as u64;
    if a == 0 {
        return 0;
    }
    let e = crate::field::poly::pow_mod(a, (p - 1) / 2, p);
    if e == 1 {
        1
    } else {
        -1
    }
}

pub fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

/// `χ_{-4}(n)`: 0 for even `n`, `+1` for `n ≡ 1 (mod 4)`, `-1` for `n ≡ 3 (mod 4)`.
pub fn chi_minus4(n: i64) -> i64 {
    match n.rem_euclid(4) {
        1 => 1,
        3 => -1,
        _ => 0,
    }
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Catalan number `(2n)! / (n! (n+1)!)`.
pub fn catalan(n: u64) -> BigInt {
    binomial(2 * n, n) / BigInt::from(n + 1)
}

/// `Σ_{i=0}^{m} (-1)^i C(m,i) Cat_i`, the even trace moments of `O(3)`.
pub fn orthogonal3_moment(m: u64) -> BigInt {
    (0..=m).fold(BigInt::zero(), |acc, i| {
        let term = binomial(m, i) * catalan(i);
        if i % 2 == 0 {
            acc + term
        } else {
            acc - term
        }
    })
}

/// Renders an exact rational as `num/den` (denominator always present).
pub fn rational_string(x: &BigRational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

pub fn big_rational(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rational_to_f64(x: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    match (x.numer().to_f64(), x.denom().to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
        _ => {
            // scale down both sides before converting
            let bits = x.numer().bits().max(x.denom().bits()) as i64 - 900;
            let shift = bits.max(0) as usize;
            let n = (x.numer() >> shift).to_f64().unwrap_or(f64::NAN);
            let d = (x.denom() >> shift).to_f64().unwrap_or(f64::NAN);
            n / d
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalan_and_o3_values() {
        let cats: Vec<i64> = (0..6).map(|n| catalan(n).try_into().unwrap()).collect();
        assert_eq!(cats, vec![1, 1, 2, 5, 14, 42]);
        assert_eq!(orthogonal3_moment(2), BigInt::from(1));
        assert_eq!(orthogonal3_moment(4), BigInt::from(3));
        assert_eq!(orthogonal3_moment(6), BigInt::from(15));
    }

    #[test]
    fn prime_power_detection() {
        assert_eq!(prime_power(49), Some((7, 2)));
        assert_eq!(prime_power(5), Some((5, 1)));
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(1), None);
        let small = prime_powers_up_to(30, 5);
        assert_eq!(small, vec![5, 7, 11, 13, 17, 19, 23, 25, 29]);
    }

    #[test]
    fn legendre_symbols() {
        assert_eq!(legendre_symbol(-3, 5), -1);
        assert_eq!(legendre_symbol(-4, 5), 1);
        assert_eq!(legendre_symbol(-3, 13), 1);
        assert_eq!(legendre_symbol(-4, 11), -1);
        assert_eq!(legendre_symbol(10, 5), 0);
    }
}
