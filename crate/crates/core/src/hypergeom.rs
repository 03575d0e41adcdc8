//! Greene's hypergeometric functions over `F_q`.
//!
//! ```text
//! nFn-1(A₁..Aₙ; B₁..Bₙ₋₁ | x) = q/(q-1) Σ_χ C(A₁χ, χ) C(A₂χ, B₁χ) ⋯ χ(x)
//! ```
//!
//! Values are stored as the scaled integers `q·₂F₁` and `q²·₃F₂`; the fast
//! route goes through the Legendre and Clausen traces.

use crate::curves::{self, clausen_traces, legendre_traces};
use crate::field::{binomial_norm, CharacterIndex, Elem, FieldTable, GaussSumTable, UnitRoots};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

/// Maximum distance from an integer for a value to count as exact.
pub const INTEGRALITY_TOLERANCE: f64 = 1e-4;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HyperError {
    #[error("need |upper| = |lower| + 1 >= 2, got {upper} upper and {lower} lower parameters")]
    ParameterLengths { upper: usize, lower: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    F21,
    F32,
}

impl Family {
    pub fn n(self) -> u32 {
        match self {
            Family::F21 => 2,
            Family::F32 => 3,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::F21 => "f21",
            Family::F32 => "f32",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScaledHyperValue {
    pub lambda: Elem,
    pub n: u32,
    /// `q^{n-1}·nFn-1(λ)`, rounded.
    pub scaled: i64,
    /// Distance from the unrounded value; 0 on the trace route.
    pub residual: f64,
    pub exact: bool,
    /// The unrounded scaled value when it was not integral.
    pub raw: Option<Complex64>,
}

impl ScaledHyperValue {
    fn exact(lambda: Elem, n: u32, scaled: i64) -> Self {
        ScaledHyperValue { lambda, n, scaled, residual: 0.0, exact: true, raw: None }
    }

    /// Rounds a complex scaled value, flagging it when it is not integral.
    pub fn from_complex(lambda: Elem, n: u32, z: Complex64) -> Self {
        let scaled = z.re.round();
        let residual = (z - Complex64::new(scaled, 0.0)).norm();
        let exact = residual < INTEGRALITY_TOLERANCE;
        ScaledHyperValue {
            lambda,
            n,
            scaled: scaled as i64,
            residual,
            exact,
            raw: (!exact).then_some(z),
        }
    }
}

/// Greene's function by its defining character sum, O(q·n) after the
/// Gauss sums are known.
pub fn greene_nfn1(
    f: &FieldTable,
    gauss: &GaussSumTable,
    upper: &[CharacterIndex],
    lower: &[CharacterIndex],
    x: Elem,
) -> Result<Complex64, HyperError> {
    if upper.len() < 2 || upper.len() != lower.len() + 1 {
        return Err(HyperError::ParameterLengths { upper: upper.len(), lower: lower.len() });
    }
    let Some(kx) = f.dlog(x) else {
        return Ok(Complex64::new(0.0, 0.0));
    };
    let roots = UnitRoots::new(f.order());
    let eps = CharacterIndex::trivial(f);
    let sum: Complex64 = (0..f.order())
        .map(|j| {
            let chi = CharacterIndex::new(f, j);
            let mut term = roots.get(j as u64 * kx as u64);
            for (i, a) in upper.iter().enumerate() {
                let b = if i == 0 { eps } else { lower[i - 1] };
                term *= binomial_norm(f, gauss, a.mul(chi), b.mul(chi));
            }
            term
        })
        .sum();
    let q = f.q() as f64;
    Ok(sum * (q / (q - 1.0)))
}

/// `₂F₁(φ, φ; ε | x)` by the character sum.
pub fn greene_2f1(f: &FieldTable, gauss: &GaussSumTable, x: Elem) -> Complex64 {
    let phi = CharacterIndex::quadratic(f);
    let eps = CharacterIndex::trivial(f);
    greene_nfn1(f, gauss, &[phi, phi], &[eps], x).expect("valid lengths")
}

/// `₃F₂(φ, φ, φ; ε, ε | x)` by the character sum.
pub fn greene_3f2(f: &FieldTable, gauss: &GaussSumTable, x: Elem) -> Complex64 {
    let phi = CharacterIndex::quadratic(f);
    let eps = CharacterIndex::trivial(f);
    greene_nfn1(f, gauss, &[phi, phi, phi], &[eps, eps], x).expect("valid lengths")
}

fn phi_minus_one(f: &FieldTable) -> i64 {
    f.phi(f.neg(1)) as i64
}

/// `q·₂F₁(λ) = -φ(-1)·a_λ^Leg`, with `0` at `λ = 0`.
///
/// At `λ = 1` the character sum evaluates to `-φ(-1)` (so `₂F₁(1) = 1/q`
/// only when `q ≡ 3 mod 4`).
pub fn f21_scaled(f: &FieldTable, lambda: Elem) -> ScaledHyperValue {
    let scaled = match lambda {
        0 => 0,
        l if l == f.one() => -phi_minus_one(f),
        l => {
            let a = curves::legendre_trace(f, l).expect("nonsingular").trace;
            -phi_minus_one(f) * a
        }
    };
    ScaledHyperValue::exact(lambda, 2, scaled)
}

/// `λ = μ/(1-μ)`, the Clausen parameter of `μ ∉ {0, 1}`.
fn clausen_parameter(f: &FieldTable, mu: Elem) -> Elem {
    f.div(mu, f.sub(1, mu)).expect("μ ≠ 1")
}

/// `q²·₃F₂(μ) = φ(1-μ)·(a_λ^Cl² - q)` with `λ = μ/(1-μ)`; the character sum at `μ = 1`.
pub fn f32_scaled(f: &FieldTable, gauss: &GaussSumTable, mu: Elem) -> ScaledHyperValue {
    let q = f.q() as i64;
    match mu {
        0 => ScaledHyperValue::exact(0, 3, 0),
        m if m == f.one() => {
            let z = greene_3f2(f, gauss, m) * (q * q) as f64;
            ScaledHyperValue::from_complex(m, 3, z)
        }
        m => {
            let lambda = clausen_parameter(f, m);
            let a = curves::clausen_trace(f, lambda).expect("nonsingular").trace;
            ScaledHyperValue::exact(m, 3, f.phi(f.sub(1, m)) as i64 * (a * a - q))
        }
    }
}

/// Scaled values for every parameter, in canonical order (`0`, then `g⁰, g¹, …`).
///
/// Traces come from one bulk correlation, so this costs a single O(q log q)
/// or O(q²) pass rather than q separate point counts.
pub fn sweep(f: &FieldTable, gauss: &GaussSumTable, family: Family) -> Vec<ScaledHyperValue> {
    let by_elem = sweep_by_element(f, gauss, family);
    f.canonical_order().map(|x| by_elem[x as usize]).collect()
}

/// Same values indexed by element.
pub fn sweep_by_element(f: &FieldTable, gauss: &GaussSumTable, family: Family) -> Vec<ScaledHyperValue> {
    let one = f.one();
    match family {
        Family::F21 => {
            let traces = legendre_traces(f);
            let sign = -phi_minus_one(f);
            f.elements()
                .map(|l| {
                    let scaled = match l {
                        0 => 0,
                        l if l == one => sign,
                        l => sign * traces[l as usize],
                    };
                    ScaledHyperValue::exact(l, 2, scaled)
                })
                .collect()
        }
        Family::F32 => {
            let traces = clausen_traces(f);
            let q = f.q() as i64;
            let elems: Vec<Elem> = f.elements().collect();
            elems
                .par_iter()
                .map(|&m| match m {
                    0 => ScaledHyperValue::exact(0, 3, 0),
                    m if m == one => f32_scaled(f, gauss, m),
                    m => {
                        let a = traces[clausen_parameter(f, m) as usize];
                        ScaledHyperValue::exact(m, 3, f.phi(f.sub(1, m)) as i64 * (a * a - q))
                    }
                })
                .collect()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{prime_power, prime_powers_up_to};

    fn field(q: u64) -> FieldTable {
        let (p, r) = prime_power(q).unwrap();
        FieldTable::new(p, r).unwrap()
    }

    #[test]
    fn greene_examples_q7() {
        let f = field(7);
        let g = GaussSumTable::new(&f);
        assert!(greene_2f1(&f, &g, 0).norm() < 1e-12);
        assert!((greene_2f1(&f, &g, 1) - Complex64::new(1.0 / 7.0, 0.0)).norm() < 1e-9);
        assert!((greene_3f2(&f, &g, 4) - Complex64::new(9.0 / 49.0, 0.0)).norm() < 1e-6);
        let phi = CharacterIndex::quadratic(&f);
        assert!(greene_nfn1(&f, &g, &[phi], &[], 3).is_err());
        assert!(greene_nfn1(&f, &g, &[phi, phi], &[phi, phi], 3).is_err());
    }

    #[test]
    fn scaled_examples() {
        let f7 = field(7);
        let g7 = GaussSumTable::new(&f7);
        assert_eq!(f21_scaled(&f7, 3).scaled, 4);
        assert_eq!(f21_scaled(&f7, 2).scaled, 0);
        assert_eq!(f21_scaled(&f7, 1).scaled, 1);
        assert_eq!(f32_scaled(&f7, &g7, 4).scaled, 9);
        assert_eq!(f32_scaled(&f7, &g7, 0).scaled, 0);
        let inv2 = f7.inv(2).unwrap();
        assert_eq!(
            f7.phi(f7.neg(2)) as i64 * f32_scaled(&f7, &g7, inv2).scaled,
            f32_scaled(&f7, &g7, 2).scaled
        );
        let f5 = field(5);
        assert_eq!(f21_scaled(&f5, 2).scaled, 2);
        let g5 = GaussSumTable::new(&f5);
        assert!((greene_2f1(&f5, &g5, 1) - Complex64::new(-0.2, 0.0)).norm() < 1e-9);
        assert_eq!(f21_scaled(&f5, 1).scaled, -1);
    }

    #[test]
    fn sweep_examples() {
        let f7 = field(7);
        let g7 = GaussSumTable::new(&f7);
        let by_elem: Vec<i64> = sweep_by_element(&f7, &g7, Family::F21).iter().map(|v| v.scaled).collect();
        assert_eq!(by_elem, vec![0, 1, 0, 4, 0, -4, 0]);
        assert_eq!(by_elem.iter().sum::<i64>(), 1);
        let f5 = field(5);
        let g5 = GaussSumTable::new(&f5);
        let by_elem: Vec<i64> = sweep_by_element(&f5, &g5, Family::F21).iter().map(|v| v.scaled).collect();
        assert_eq!(by_elem, vec![0, -1, 2, -2, 2]);
        // canonical order starts at 0 then walks powers of the generator
        let canon: Vec<Elem> = sweep(&f7, &g7, Family::F21).iter().map(|v| v.lambda).collect();
        assert_eq!(canon[0], 0);
        assert_eq!(canon[1], 1);
        assert_eq!(canon[2], f7.generator());
    }

    #[test]
    fn trace_routes_match_character_sums_exhaustively() {
        for q in prime_powers_up_to(200, 5) {
            let f = field(q);
            let g = GaussSumTable::new(&f);
            let qf = q as f64;
            let s21 = sweep_by_element(&f, &g, Family::F21);
            let s32 = sweep_by_element(&f, &g, Family::F32);
            let bound = 2.0 * qf.sqrt();
            for x in f.elements() {
                let v = ScaledHyperValue::from_complex(x, 2, greene_2f1(&f, &g, x) * qf);
                assert!(v.exact, "q={q} x={x} residual {}", v.residual);
                assert_eq!(v.scaled, s21[x as usize].scaled, "q={q} x={x}");
                assert_eq!(s21[x as usize], f21_scaled(&f, x));
                assert!((v.scaled as f64).abs() <= bound);

                let w = ScaledHyperValue::from_complex(x, 3, greene_3f2(&f, &g, x) * (qf * qf));
                assert!(w.exact, "q={q} x={x} residual {}", w.residual);
                assert_eq!(w.scaled, s32[x as usize].scaled, "q={q} x={x}");
                assert!(w.scaled.abs() <= 3 * q as i64);
            }
        }
    }

    #[test]
    fn reflection_identities() {
        for q in prime_powers_up_to(200, 5) {
            let f = field(q);
            let g = GaussSumTable::new(&f);
            let s21 = sweep_by_element(&f, &g, Family::F21);
            let s32 = sweep_by_element(&f, &g, Family::F32);
            for x in 1..f.q() {
                if q % 4 == 3 && x != 1 {
                    assert_eq!(s21[x as usize].scaled, -s21[f.sub(1, x) as usize].scaled);
                }
                let inv = f.inv(x).unwrap();
                assert_eq!(
                    s32[x as usize].scaled,
                    f.phi(f.neg(x)) as i64 * s32[inv as usize].scaled,
                    "q={q} x={x}"
                );
            }
        }
    }
}
