//! Class numbers of imaginary quadratic orders from reduced forms, the
//! Hurwitz sums `H` and `H*`, the supersingular count `S(p)`, Schoof's
//! class counts and Eichler's relation.

use crate::arith::{isqrt, legendre_symbol, prime_power};
use num_integer::Integer;
use num_rational::BigRational;
use num_bigint::BigInt;
use rayon::prelude::*;
use std::io::{self, Write};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClassNumberError {
    #[error("class-number table bound {bound} is below the required {needed}")]
    TableTooSmall { bound: u64, needed: u64 },
    #[error("p = {0} must be a prime >= 5")]
    BadPrime(u64),
    #[error("Eichler's relation needs odd N, got {0}")]
    EvenN(u64),
}

/// `h(-d)`, `H(D)` and `12·H*(D)` for `0 <= D <= bound`.
#[derive(Clone, Debug)]
pub struct ClassNumberTable {
    bound: u64,
    h: Vec<u32>,
    hurwitz: Vec<u32>,
    hstar12: Vec<i64>,
}

/// Half the number of units of the order of discriminant `-d`.
pub fn omega(d: u64) -> u32 {
    match d {
        3 => 3,
        4 => 2,
        _ => 1,
    }
}

fn is_discriminant(d: u64) -> bool {
    d > 0 && (d % 4 == 0 || d % 4 == 3)
}

impl ClassNumberTable {
    /// Counts primitive reduced forms `(a, b, c)` with `4ac - b² <= bound`.
    pub fn tabulate(bound: u64) -> Self {
        let bound = bound.max(4);
        let n = bound as usize + 1;
        let a_max = isqrt(bound / 3);
        let h = (1..=a_max)
            .into_par_iter()
            .fold(
                || vec![0u32; n],
                |mut acc, a| {
                    let a = a as i64;
                    for b in -a + 1..=a {
                        // c >= a, and c > a needs b >= 0 only when c = a
                        let c_min = a;
                        let c_max = (bound as i64 + b * b) / (4 * a);
                        for c in c_min..=c_max {
                            if c == a && b < 0 {
                                continue;
                            }
                            let d = 4 * a * c - b * b;
                            if d <= 0 || d as u64 > bound {
                                continue;
                            }
                            if a.gcd(&b).gcd(&c) != 1 {
                                continue;
                            }
                            acc[d as usize] += 1;
                        }
                    }
                    acc
                },
            )
            .reduce(
                || vec![0u32; n],
                |mut x, y| {
                    for (a, b) in x.iter_mut().zip(y) {
                        *a += b;
                    }
                    x
                },
            );

        let mut hurwitz = vec![0u32; n];
        let mut hstar12 = vec![0i64; n];
        hstar12[0] = -1;
        for d0 in 3..n as u64 {
            let hd = h[d0 as usize];
            if hd == 0 {
                continue;
            }
            let w12 = 12 / omega(d0) as i64;
            let mut f = 1u64;
            while d0 * f * f <= bound {
                let d = (d0 * f * f) as usize;
                hurwitz[d] += hd;
                hstar12[d] += w12 * hd as i64;
                f += 1;
            }
        }
        ClassNumberTable { bound, h, hurwitz, hstar12 }
    }

    pub fn bound(&self) -> u64 {
        self.bound
    }

    pub fn ensure(&self, needed: u64) -> Result<(), ClassNumberError> {
        if needed > self.bound {
            Err(ClassNumberError::TableTooSmall { bound: self.bound, needed })
        } else {
            Ok(())
        }
    }

    /// `h(-d)` for the order of discriminant `-d`; 0 if `-d` is not a discriminant.
    pub fn h(&self, d: u64) -> u32 {
        self.h.get(d as usize).copied().unwrap_or(0)
    }

    pub fn hurwitz(&self, d: i64) -> u32 {
        if d <= 0 {
            return 0;
        }
        self.hurwitz[d as usize]
    }

    /// `12·H*(D)`, with `H*(0) = -1/12` and 0 off discriminants.
    pub fn hstar12(&self, d: i64) -> i64 {
        if d < 0 {
            return 0;
        }
        self.hstar12[d as usize]
    }

    pub fn hstar(&self, d: i64) -> BigRational {
        BigRational::new(BigInt::from(self.hstar12(d)), BigInt::from(12))
    }

    /// `H*(D) <= √D (log D + 2)/π` for every `0 < D <= bound`.
    pub fn bound_violations(&self) -> Vec<u64> {
        (1..=self.bound)
            .filter(|&d| {
                let v = self.hstar12[d as usize] as f64 / 12.0;
                let df = d as f64;
                v > df.sqrt() * (df.ln() + 2.0) / std::f64::consts::PI
            })
            .collect()
    }

    /// Rows `d,h,omega,H,Hstar` for every discriminant `-d`, `d <= bound`.
    pub fn write_csv<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "d,h,omega,H,Hstar")?;
        for d in 3..=self.bound {
            if !is_discriminant(d) {
                continue;
            }
            let hs = BigRational::new(BigInt::from(self.hstar12[d as usize]), BigInt::from(12));
            writeln!(
                out,
                "{},{},{},{},{}/{}",
                d,
                self.h[d as usize],
                omega(d),
                self.hurwitz[d as usize],
                hs.numer(),
                hs.denom()
            )?;
        }
        Ok(())
    }
}

/// `S(p) = (p + 6 - 4(-3|p) - 3(-4|p)) / 12`.
pub fn supersingular_count(p: u64) -> Result<u64, ClassNumberError> {
    if p < 5 || prime_power(p) != Some((p, 1)) {
        return Err(ClassNumberError::BadPrime(p));
    }
    let v = p as i64 + 6 - 4 * legendre_symbol(-3, p) as i64 - 3 * legendre_symbol(-4, p) as i64;
    assert!(v >= 0 && v % 12 == 0, "S({p}) not integral");
    Ok(v as u64 / 12)
}

/// Which part of Schoof's theorem determined a count.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SchoofCase {
    /// `p | s`, `s ≠ 0`, `s² ≠ 4q`, `n >= 2`: no curves.
    NoCurves,
    /// `r` even and `s = ±2p^{r/2}`: `S(p)` classes.
    Supersingular,
    /// `H((4q - s²)/n²)` classes.
    ClassNumber,
    /// None of the hypotheses apply; the returned 0 carries no information.
    Silent,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SchoofCount {
    pub count: u64,
    pub case: SchoofCase,
}

/// Number of `F_q`-classes with `|E| = q + 1 - s` and `Z/n × Z/n ⊆ E(F_q)`.
pub fn schoof_count(table: &ClassNumberTable, q: u64, s: i64, n: u64) -> Result<SchoofCount, ClassNumberError> {
    let (p, r) = prime_power(q).filter(|&(p, _)| p >= 5).ok_or(ClassNumberError::BadPrime(q))?;
    let q_i = q as i64;
    let s2 = s * s;
    let silent = SchoofCount { count: 0, case: SchoofCase::Silent };
    if r % 2 == 0 && s2 == 4 * q_i {
        if n == 2 {
            return Ok(SchoofCount { count: supersingular_count(p)?, case: SchoofCase::Supersingular });
        }
        return Ok(silent);
    }
    if n >= 2 && s != 0 && s % p as i64 == 0 && s2 != 4 * q_i {
        return Ok(SchoofCount { count: 0, case: SchoofCase::NoCurves });
    }
    let order = q_i + 1 - s;
    let n_i = n as i64;
    if s2 <= 4 * q_i && s % p as i64 != 0 && n >= 1 && order % (n_i * n_i) == 0 && (q_i - 1) % n_i == 0 {
        let d = 4 * q_i - s2;
        if d % (n_i * n_i) != 0 {
            return Ok(SchoofCount { count: 0, case: SchoofCase::ClassNumber });
        }
        let d = d / (n_i * n_i);
        table.ensure(d as u64)?;
        return Ok(SchoofCount { count: table.hurwitz(d) as u64, case: SchoofCase::ClassNumber });
    }
    Ok(silent)
}

/// Both sides of `Σ_{s² <= N} H*(N - s²) = -λ₁(N) + σ₁(N)/3` for odd `N`.
pub fn eichler_check(table: &ClassNumberTable, n: u64) -> Result<(BigRational, BigRational), ClassNumberError> {
    if n % 2 == 0 {
        return Err(ClassNumberError::EvenN(n));
    }
    table.ensure(n)?;
    let root = isqrt(n) as i64;
    let lhs12: i64 = (-root..=root).map(|s| table.hstar12(n as i64 - s * s)).sum();
    let divisors: Vec<u64> = (1..=n).filter(|d| n % d == 0).collect();
    let sigma: u64 = divisors.iter().sum();
    let lambda2: u64 = divisors.iter().map(|&d| d.min(n / d)).sum();
    // rhs = -λ₂/2 + σ/3 = (2σ - 3λ₂)/6
    let rhs = BigRational::new(BigInt::from(2 * sigma as i64 - 3 * lambda2 as i64), BigInt::from(6));
    Ok((BigRational::new(BigInt::from(lhs12), BigInt::from(12)), rhs))
}
