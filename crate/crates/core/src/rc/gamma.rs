//! Exact Γ values at integers and half-integers, as `rational · (√π)^k`.

use crate::arith::{factorial, rational_to_f64};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::ops::{Div, Mul};

/// `coeff · π^{sqrt_pi_power / 2}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HalfIntegerGamma {
    pub coeff: BigRational,
    pub sqrt_pi_power: i32,
}

impl HalfIntegerGamma {
    pub fn rational(coeff: BigRational) -> Self {
        HalfIntegerGamma { coeff, sqrt_pi_power: 0 }
    }

    pub fn one() -> Self {
        Self::rational(BigRational::one())
    }

    /// `Γ(x)` for `x = twice_x / 2`; `None` at the poles `x ∈ {0, -1, -2, …}`.
    pub fn gamma(twice_x: i64) -> Option<Self> {
        if twice_x % 2 == 0 {
            let n = twice_x / 2;
            if n <= 0 {
                return None;
            }
            return Some(Self::rational(BigRational::from(factorial(n as u64 - 1))));
        }
        // x = n + 1/2
        let n = (twice_x - 1) / 2;
        let coeff = if n >= 0 {
            // Γ(n + 1/2) = (2n)! / (4^n n!) √π
            let n = n as u64;
            BigRational::new(factorial(2 * n), BigInt::from(4u32).pow(n as u32) * factorial(n))
        } else {
            // Γ(1/2 - k) = (-4)^k k! / (2k)! √π
            let k = (-n) as u64;
            BigRational::new(BigInt::from(-4i32).pow(k as u32) * factorial(k), factorial(2 * k))
        };
        Some(HalfIntegerGamma { coeff, sqrt_pi_power: 1 })
    }

    /// The coefficient when the √π power is zero.
    pub fn as_rational(&self) -> Option<&BigRational> {
        (self.sqrt_pi_power == 0 || self.coeff.is_zero()).then_some(&self.coeff)
    }

    pub fn to_f64(&self) -> f64 {
        rational_to_f64(&self.coeff) * std::f64::consts::PI.sqrt().powi(self.sqrt_pi_power)
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    pub fn abs(&self) -> Self {
        HalfIntegerGamma { coeff: self.coeff.abs(), sqrt_pi_power: self.sqrt_pi_power }
    }

    pub fn scale(&self, by: &BigRational) -> Self {
        HalfIntegerGamma { coeff: &self.coeff * by, sqrt_pi_power: self.sqrt_pi_power }
    }

    /// Sum of two values with the same √π power (zero matches anything).
    pub fn checked_add(&self, other: &Self) -> Option<Self> {
        if self.coeff.is_zero() {
            return Some(other.clone());
        }
        if other.coeff.is_zero() {
            return Some(self.clone());
        }
        (self.sqrt_pi_power == other.sqrt_pi_power).then(|| HalfIntegerGamma {
            coeff: &self.coeff + &other.coeff,
            sqrt_pi_power: self.sqrt_pi_power,
        })
    }
}

impl Mul for &HalfIntegerGamma {
    type Output = HalfIntegerGamma;
    fn mul(self, rhs: &HalfIntegerGamma) -> HalfIntegerGamma {
        HalfIntegerGamma {
            coeff: &self.coeff * &rhs.coeff,
            sqrt_pi_power: self.sqrt_pi_power + rhs.sqrt_pi_power,
        }
    }
}

impl Div for &HalfIntegerGamma {
    type Output = HalfIntegerGamma;
    fn div(self, rhs: &HalfIntegerGamma) -> HalfIntegerGamma {
        HalfIntegerGamma {
            coeff: &self.coeff / &rhs.coeff,
            sqrt_pi_power: self.sqrt_pi_power - rhs.sqrt_pi_power,
        }
    }
}

/// `binom(x, n)` for rational `x` by the falling factorial; 0 for `n < 0`.
pub fn gen_binomial(x: &BigRational, n: i64) -> BigRational {
    if n < 0 {
        return BigRational::zero();
    }
    let mut acc = BigRational::one();
    for i in 0..n {
        acc = acc * (x - BigRational::from_integer(BigInt::from(i))) / BigRational::from_integer(BigInt::from(i + 1));
    }
    acc
}

/// `1/n!`, extended by 0 to negative integers (poles of Γ).
pub fn recip_factorial(n: i64) -> BigRational {
    if n < 0 {
        BigRational::zero()
    } else {
        BigRational::new(BigInt::one(), factorial(n as u64))
    }
}

pub fn half(n: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(2))
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// `x^e` for any integer `e` (x ≠ 0 when e < 0).
pub fn rpow(x: &BigRational, e: i64) -> BigRational {
    if e >= 0 {
        num_traits::pow(x.clone(), e as usize)
    } else {
        num_traits::pow(x.recip(), (-e) as usize)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::big_rational;

    #[test]
    fn gamma_values() {
        let sqrt_pi = std::f64::consts::PI.sqrt();
        assert_eq!(HalfIntegerGamma::gamma(1).unwrap(), HalfIntegerGamma { coeff: big_rational(1, 1), sqrt_pi_power: 1 });
        assert!((HalfIntegerGamma::gamma(3).unwrap().to_f64() - sqrt_pi / 2.0).abs() < 1e-15);
        assert!((HalfIntegerGamma::gamma(-3).unwrap().to_f64() - 4.0 * sqrt_pi / 3.0).abs() < 1e-14);
        assert_eq!(HalfIntegerGamma::gamma(10).unwrap().as_rational(), Some(&big_rational(24, 1)));
        assert!(HalfIntegerGamma::gamma(0).is_none());
        assert!(HalfIntegerGamma::gamma(-4).is_none());
        // Γ(1/2)/Γ(-3/2) = (-3/2)(-1/2)
        let r = &HalfIntegerGamma::gamma(1).unwrap() / &HalfIntegerGamma::gamma(-3).unwrap();
        assert_eq!(r.as_rational(), Some(&big_rational(3, 4)));
    }

    #[test]
    fn recurrence_holds_exactly() {
        for t in -9..20i64 {
            let (Some(g), Some(g1)) = (HalfIntegerGamma::gamma(t), HalfIntegerGamma::gamma(t + 2)) else {
                continue;
            };
            assert_eq!(g1, g.scale(&half(t)), "2x = {t}");
        }
    }

    #[test]
    fn generalized_binomials() {
        assert_eq!(gen_binomial(&half(1), 0), big_rational(1, 1));
        assert_eq!(gen_binomial(&half(1), 2), big_rational(-1, 8));
        assert_eq!(gen_binomial(&int(5), 2), big_rational(10, 1));
        assert_eq!(gen_binomial(&int(2), 3), big_rational(0, 1));
        assert_eq!(gen_binomial(&half(3), -1), big_rational(0, 1));
        assert!(recip_factorial(-1).is_zero());
    }
}
