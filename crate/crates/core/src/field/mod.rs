//! Explicit finite fields `F_q`, `q = p^r`, tabulated for character sums.
//!
//! Elements are encoded as integers `0 <= x < q`: the base-`p` digits of `x`
//! are the coefficients of the residue polynomial, least significant digit
//! being the constant term. For `r = 1` this is the usual residue `x mod p`.
//! Every nonzero element is a power of a fixed primitive element `g`; the
//! tables `dlog` and `exp` translate between the two views so that
//! multiplication is a lookup and character values are roots of unity.

mod character;
mod gauss;
pub(crate) mod poly;

pub use character::{char_eval, CharacterIndex, UnitRoots};
pub use gauss::{
    binomial_norm, jacobi_sum, jacobi_sum_direct, jacobi_sum_via_gauss, GaussSumTable,
    NAIVE_DFT_MAX_LEN,
};

use crate::arith::{is_prime, prime_factors};
use thiserror::Error;

/// Field element, encoded as described in the module docs.
pub type Elem = u32;

/// Largest field size accepted unless the caller overrides the cap.
pub const DEFAULT_FIELD_CAP: u64 = 1 << 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("characteristic {0} is below 5")]
    SmallCharacteristic(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field size {p}^{r} exceeds cap {cap}")]
    TooLarge { p: u64, r: u32, cap: u64 },
}

impl FieldError {
    /// Cap violations are resource errors; everything else is a bad argument.
    pub fn is_cap_violation(&self) -> bool {
        matches!(self, FieldError::TooLarge { .. })
    }
}

/// A fully tabulated finite field.
#[derive(Clone, Debug)]
pub struct FieldTable {
    p: u32,
    r: u32,
    q: u32,
    modulus: Vec<u32>,
    generator: Elem,
    dlog: Vec<u32>,
    exp: Vec<Elem>,
    abs_trace: Vec<u32>,
    phi: Vec<i8>,
}

const NO_LOG: u32 = u32::MAX;

impl FieldTable {
    /// Builds `F_{p^r}` with the default size cap.
    pub fn new(p: u64, r: u32) -> Result<Self, FieldError> {
        build_field(p, r, DEFAULT_FIELD_CAP)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// Order of the multiplicative group.
    pub fn order(&self) -> u32 {
        self.q - 1
    }

    /// Monic modulus, coefficient `i` of `x^i` (length `r + 1`).
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn generator(&self) -> Elem {
        self.generator
    }

    /// Discrete log of a nonzero element.
    pub fn dlog(&self, x: Elem) -> Option<u32> {
        match self.dlog[x as usize] {
            NO_LOG => None,
            k => Some(k),
        }
    }

    /// `g^k`, with `k` reduced modulo `q - 1`.
    pub fn exp(&self, k: u64) -> Elem {
        self.exp[(k % self.order() as u64) as usize]
    }

    pub fn exp_table(&self) -> &[Elem] {
        &self.exp
    }

    pub fn dlog_table(&self) -> &[u32] {
        &self.dlog
    }

    /// Absolute trace `F_q -> F_p`, returned as an integer in `[0, p)`.
    pub fn abs_trace(&self, x: Elem) -> u32 {
        self.abs_trace[x as usize]
    }

    /// Quadratic character, with `φ(0) = 0`.
    pub fn phi(&self, x: Elem) -> i8 {
        self.phi[x as usize]
    }

    pub fn phi_table(&self) -> &[i8] {
        &self.phi
    }

    pub fn is_prime_field(&self) -> bool {
        self.r == 1
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        0..self.q
    }

    /// Canonical sweep order: 0 first, then `g^0, g^1, ..., g^{q-2}`.
    pub fn canonical_order(&self) -> impl Iterator<Item = Elem> + '_ {
        std::iter::once(0).chain(self.exp.iter().copied())
    }

    pub fn zero(&self) -> Elem {
        0
    }

    pub fn one(&self) -> Elem {
        1
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> Elem {
        n.rem_euclid(self.p as i64) as Elem
    }

    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        if self.r == 1 {
            let s = a + b;
            return if s >= self.p { s - self.p } else { s };
        }
        let (mut a, mut b) = (a, b);
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.r {
            let s = (a % self.p + b % self.p) % self.p;
            out += s * place;
            place *= self.p;
            a /= self.p;
            b /= self.p;
        }
        out
    }

    pub fn neg(&self, a: Elem) -> Elem {
        if self.r == 1 {
            return if a == 0 { 0 } else { self.p - a };
        }
        let mut a = a;
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.r {
            let d = a % self.p;
            out += ((self.p - d) % self.p) * place;
            place *= self.p;
            a /= self.p;
        }
        out
    }

    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a == 0 || b == 0 {
            return 0;
        }
        let n = self.order() as u64;
        let k = (self.dlog[a as usize] as u64 + self.dlog[b as usize] as u64) % n;
        self.exp[k as usize]
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: Elem) -> Option<Elem> {
        let k = self.dlog(a)?;
        let n = self.order();
        Some(self.exp[((n - k) % n) as usize])
    }

    pub fn div(&self, a: Elem, b: Elem) -> Option<Elem> {
        Some(self.mul(a, self.inv(b)?))
    }

    /// `a^e` for any integer exponent (`0^0 = 1`; negative powers of 0 are `None`).
    pub fn pow(&self, a: Elem, e: i64) -> Option<Elem> {
        if a == 0 {
            return match e.cmp(&0) {
                std::cmp::Ordering::Equal => Some(1),
                std::cmp::Ordering::Greater => Some(0),
                std::cmp::Ordering::Less => None,
            };
        }
        let n = self.order() as i64;
        let k = (self.dlog[a as usize] as i64 * e.rem_euclid(n)).rem_euclid(n);
        Some(self.exp[k as usize])
    }

    pub fn is_square(&self, a: Elem) -> bool {
        self.phi[a as usize] >= 0
    }

    /// A square root of `a` if one exists (the one with even discrete log half).
    pub fn sqrt(&self, a: Elem) -> Option<Elem> {
        if a == 0 {
            return Some(0);
        }
        let k = self.dlog[a as usize];
        if k % 2 == 1 {
            None
        } else {
            Some(self.exp[(k / 2) as usize])
        }
    }

    /// Base-`p` digits of an element, constant term first.
    pub fn digits(&self, a: Elem) -> Vec<u32> {
        let mut a = a;
        (0..self.r)
            .map(|_| {
                let d = a % self.p;
                a /= self.p;
                d
            })
            .collect()
    }

    /// Human-readable form: the residue for prime fields, otherwise the
    /// residue polynomial in `x`, e.g. `2x+3`.
    pub fn repr(&self, a: Elem) -> String {
        if self.r == 1 {
            return a.to_string();
        }
        let digits = self.digits(a);
        let mut terms = Vec::new();
        for (i, &c) in digits.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let coeff = if c == 1 && i > 0 { String::new() } else { c.to_string() };
            let term = match i {
                0 => c.to_string(),
                1 => format!("{coeff}x"),
                _ => format!("{coeff}x^{i}"),
            };
            terms.push(term);
        }
        if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join("+")
        }
    }

    fn from_poly(&self, f: &[u32]) -> Elem {
        let mut out = 0;
        let mut place = 1;
        for i in 0..self.r as usize {
            out += f.get(i).copied().unwrap_or(0) * place;
            place *= self.p;
        }
        out
    }
}

/// Constructs `F_{p^r}`. The modulus is the lexicographically smallest monic
/// irreducible of degree `r` (coefficients compared from `x^{r-1}` down to the
/// constant term) and the generator is the smallest primitive element.
pub fn build_field(p: u64, r: u32, cap: u64) -> Result<FieldTable, FieldError> {
    if !is_prime(p) {
        return Err(FieldError::NotPrime(p));
    }
    if p < 5 {
        return Err(FieldError::SmallCharacteristic(p));
    }
    if r == 0 {
        return Err(FieldError::ZeroDegree);
    }
    let q = (p as u128).checked_pow(r).unwrap_or(u128::MAX);
    if q > cap as u128 || q > u32::MAX as u128 {
        return Err(FieldError::TooLarge { p, r, cap });
    }
    let q = q as u64;
    let p32 = p as u32;
    let modulus = find_modulus(p32, r);
    let generator = find_generator(p32, r, q, &modulus);

    let n = (q - 1) as usize;
    let mut field = FieldTable {
        p: p32,
        r,
        q: q as u32,
        modulus,
        generator: 0,
        dlog: vec![NO_LOG; q as usize],
        exp: vec![0; n],
        abs_trace: vec![0; q as usize],
        phi: vec![0; q as usize],
    };
    let g_poly = elem_to_poly(generator, p32, r);
    let mut cur: poly::Poly = vec![1];
    for k in 0..n {
        let x = field.from_poly(&cur);
        assert_eq!(field.dlog[x as usize], NO_LOG, "generator is not primitive");
        field.exp[k] = x;
        field.dlog[x as usize] = k as u32;
        cur = if r == 1 {
            let v = (cur.first().copied().unwrap_or(0) as u64 * generator as u64 % p) as u32;
            if v == 0 {
                Vec::new()
            } else {
                vec![v]
            }
        } else {
            poly::mul_mod(&cur, &g_poly, &field.modulus, p32)
        };
    }
    assert_eq!(field.from_poly(&cur), 1, "g^(q-1) != 1");
    field.generator = generator;

    for x in 1..q as usize {
        field.phi[x] = if field.dlog[x] % 2 == 0 { 1 } else { -1 };
    }
    for x in 1..q as u32 {
        let k = field.dlog[x as usize] as u64;
        let mut t = 0;
        let mut frob = 1u64;
        for _ in 0..r {
            t = field.add(t, field.exp[((k * frob) % n as u64) as usize]);
            frob = frob * p % n as u64;
        }
        assert!(t < p32, "absolute trace left the prime field");
        field.abs_trace[x as usize] = t;
    }
    Ok(field)
}

fn elem_to_poly(x: u32, p: u32, r: u32) -> poly::Poly {
    let mut x = x;
    let mut f: poly::Poly = (0..r)
        .map(|_| {
            let d = x % p;
            x /= p;
            d
        })
        .collect();
    poly::normalize(&mut f);
    f
}

fn find_modulus(p: u32, r: u32) -> Vec<u32> {
    let count = (p as u64).pow(r);
    for idx in 0..count {
        // lowest digit is the constant term, so numeric order of `idx` is
        // lexicographic order on (c_{r-1}, ..., c_0)
        let mut f: poly::Poly = (0..r)
            .scan(idx, |rest, _| {
                let d = (*rest % p as u64) as u32;
                *rest /= p as u64;
                Some(d)
            })
            .collect();
        f.push(1);
        if poly::is_irreducible(&f, p) {
            return f;
        }
    }
    unreachable!("no monic irreducible of degree {r} over F_{p}");
}

fn find_generator(p: u32, r: u32, q: u64, modulus: &[u32]) -> Elem {
    let n = q - 1;
    let factors = prime_factors(n);
    for cand in 1..q as u32 {
        let f = elem_to_poly(cand, p, r);
        let primitive = factors.iter().all(|&l| {
            let e = poly::pow_poly_mod(&f, n / l, modulus, p);
            e != [1]
        });
        if primitive {
            return cand;
        }
    }
    unreachable!("F_{q} has no primitive element");
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn f5_generator_and_log() {
        let f = FieldTable::new(5, 1).unwrap();
        assert_eq!(f.generator(), 2);
        assert_eq!(f.dlog(4), Some(2));
        assert_eq!(f.dlog(0), None);
    }

    #[test]
    fn f7_quadratic_character() {
        let f = FieldTable::new(7, 1).unwrap();
        // brute-force squares mod 7
        let squares: Vec<u32> = (1..7u32).map(|x| x * x % 7).collect();
        for x in 1..7u32 {
            let expected = if squares.contains(&x) { 1 } else { -1 };
            assert_eq!(f.phi(x), expected, "x = {x}");
        }
        assert_eq!(f.phi(0), 0);
        assert_eq!([1, 2, 4].map(|x| f.phi(x)), [1, 1, 1]);
        assert_eq!([3, 5, 6].map(|x| f.phi(x)), [-1, -1, -1]);
    }

    #[test]
    fn f25_trace_is_frobenius_sum() {
        let f = FieldTable::new(5, 2).unwrap();
        assert_eq!(f.q(), 25);
        // abs_trace(x) = x + x^5
        for x in f.elements() {
            let x5 = f.pow(x, 5).unwrap();
            let t = f.add(x, x5);
            assert!(t < 5);
            assert_eq!(f.abs_trace(x), t);
        }
        let mut hit = [false; 5];
        for x in f.elements() {
            hit[f.abs_trace(x) as usize] = true;
        }
        assert!(hit.iter().all(|&h| h));
    }

    #[test]
    fn modulus_is_smallest_irreducible() {
        let f = FieldTable::new(5, 2).unwrap();
        // x^2 + 2 is the first monic irreducible in (c1, c0) order
        assert_eq!(f.modulus(), &[2, 0, 1]);
        let f = FieldTable::new(7, 2).unwrap();
        // x^2 + 1 is irreducible mod 7
        assert_eq!(f.modulus(), &[1, 0, 1]);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert_eq!(FieldTable::new(4, 1).unwrap_err(), FieldError::NotPrime(4));
        assert_eq!(FieldTable::new(3, 2).unwrap_err(), FieldError::SmallCharacteristic(3));
        assert!(FieldTable::new(5, 0).is_err());
        let err = FieldTable::new(5, 9).unwrap_err();
        assert!(err.is_cap_violation());
        assert!(build_field(101, 2, 10_000).unwrap_err().is_cap_violation());
    }

    #[test]
    fn tables_are_consistent_for_small_fields() {
        for q in crate::arith::prime_powers_up_to(200, 5) {
            let (p, r) = crate::arith::prime_power(q).unwrap();
            let f = FieldTable::new(p, r).unwrap();
            let n = f.order();
            for k in 0..n {
                assert_eq!(f.dlog(f.exp(k as u64)), Some(k));
            }
            for x in 1..f.q() {
                for y in 1..f.q() {
                    assert_eq!(f.phi(f.mul(x, y)), f.phi(x) * f.phi(y));
                }
            }
            // the generator is the smallest element of full order
            for cand in 1..f.generator() {
                let k = f.dlog(cand).unwrap();
                assert!(crate::arith::prime_factors(n as u64)
                    .iter()
                    .any(|&l| (k as u64 * (n as u64 / l)) % n as u64 == 0));
            }
        }
    }

    proptest! {
        #[test]
        fn trace_is_additive(
            idx in 0usize..4,
            pairs in proptest::collection::vec((0u32..u32::MAX, 0u32..u32::MAX), 250)
        ) {
            let (p, r) = [(5, 3), (7, 2), (11, 1), (13, 2)][idx];
            let f = FieldTable::new(p, r).unwrap();
            for (a, b) in pairs {
                let (x, y) = (a % f.q(), b % f.q());
                let lhs = f.abs_trace(f.add(x, y));
                let rhs = (f.abs_trace(x) + f.abs_trace(y)) % f.p();
                prop_assert_eq!(lhs, rhs);
            }
        }

        #[test]
        fn field_axioms(idx in 0usize..3, a in 0u32..u32::MAX, b in 0u32..u32::MAX, c in 0u32..u32::MAX) {
            let (p, r) = [(5, 2), (7, 3), (13, 1)][idx];
            let f = FieldTable::new(p, r).unwrap();
            let (a, b, c) = (a % f.q(), b % f.q(), c % f.q());
            prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
            prop_assert_eq!(f.sub(f.add(a, b), b), a);
            if a != 0 {
                prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
            }
        }
    }
}
