use super::{Elem, FieldTable};
use num_complex::Complex64;
use std::f64::consts::TAU;

/// Multiplicative character `χ_j`, defined by `χ_j(g^k) = e^{2πi jk/(q-1)}`.
///
/// Index 0 is the trivial character `ε`; for odd `q` index `(q-1)/2` is the
/// quadratic character `φ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CharacterIndex {
    j: u32,
    modulus: u32,
}

impl CharacterIndex {
    pub fn new(field: &FieldTable, j: u32) -> Self {
        let modulus = field.order();
        CharacterIndex { j: j % modulus, modulus }
    }

    pub fn trivial(field: &FieldTable) -> Self {
        Self::new(field, 0)
    }

    pub fn quadratic(field: &FieldTable) -> Self {
        Self::new(field, field.order() / 2)
    }

    pub fn index(self) -> u32 {
        self.j
    }

    pub fn is_trivial(self) -> bool {
        self.j == 0
    }

    pub fn mul(self, other: Self) -> Self {
        debug_assert_eq!(self.modulus, other.modulus);
        let j = ((self.j as u64 + other.j as u64) % self.modulus as u64) as u32;
        CharacterIndex { j, modulus: self.modulus }
    }

    pub fn conj(self) -> Self {
        CharacterIndex {
            j: (self.modulus - self.j) % self.modulus,
            modulus: self.modulus,
        }
    }

    /// `χ(-1) = (-1)^j`, since `-1 = g^{(q-1)/2}`.
    pub fn at_minus_one(self) -> i32 {
        if self.j % 2 == 0 {
            1
        } else {
            -1
        }
    }
}

/// Evaluates `χ_j(x)` with the convention `χ(0) = 0`.
pub fn char_eval(field: &FieldTable, chi: CharacterIndex, x: Elem) -> Complex64 {
    match field.dlog(x) {
        None => Complex64::new(0.0, 0.0),
        Some(k) => {
            let n = field.order() as u64;
            let e = (chi.index() as u64 * k as u64) % n;
            Complex64::from_polar(1.0, TAU * e as f64 / n as f64)
        }
    }
}

/// Table of the `n`-th roots of unity `e^{2πik/n}`; avoids trig calls in
/// bulk character sums.
#[derive(Clone, Debug)]
pub struct UnitRoots {
    roots: Vec<Complex64>,
}

impl UnitRoots {
    pub fn new(n: u32) -> Self {
        let roots = (0..n)
            .map(|k| Complex64::from_polar(1.0, TAU * k as f64 / n as f64))
            .collect();
        UnitRoots { roots }
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    /// `e^{2πik/n}` for any `k` (reduced modulo `n`).
    pub fn get(&self, k: u64) -> Complex64 {
        self.roots[(k % self.roots.len() as u64) as usize]
    }

    /// `χ(x)` using the table; `χ(0) = 0`.
    pub fn char_value(&self, field: &FieldTable, chi: CharacterIndex, x: Elem) -> Complex64 {
        match field.dlog(x) {
            None => Complex64::new(0.0, 0.0),
            Some(k) => self.get(chi.index() as u64 * k as u64),
        }
    }
}
