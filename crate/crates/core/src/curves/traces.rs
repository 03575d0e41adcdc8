//! Frobenius traces of the Legendre and Clausen families for every parameter
//! at once.
//!
//! Both traces are correlations of character tables:
//!
//! ```text
//! a_λ^Leg = -Σ_x φ(x(x-1)) · φ(x - λ)
//! a_λ^Cl  = -Σ_t w(t) · φ(t + λ),   w(t) = Σ_{x² = t} φ(x - 1)
//! ```
//!
//! Over prime fields the correlation is cyclic on `Z/p`, so it can be done
//! directly in O(p²) or through an FFT in O(p log p). Extension fields use
//! the direct sum with digit-wise subtraction.

use crate::field::{Elem, FieldTable};
use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::FftPlanner;

/// Prime fields above this size use the FFT correlation by default.
pub const FFT_MIN_PRIME: u32 = 2048;

fn legendre_weights(f: &FieldTable) -> Vec<i8> {
    let one = f.one();
    f.elements()
        .map(|x| f.phi(f.mul(x, f.sub(x, one))))
        .collect()
}

fn clausen_weights(f: &FieldTable) -> Vec<i8> {
    let one = f.one();
    let mut w = vec![0i8; f.q() as usize];
    for x in f.elements() {
        let t = f.mul(x, x);
        w[t as usize] += f.phi(f.sub(x, one));
    }
    w
}

/// `Σ_x u[x]·v[(x - shift) mod p]` for every shift, direct.
fn cyclic_correlation_direct(u: &[i8], v: &[i8]) -> Vec<i64> {
    let p = u.len();
    (0..p)
        .into_par_iter()
        .map(|shift| {
            // x in [shift, p) pairs with v[x - shift]; x in [0, shift) with v[x - shift + p]
            let hi: i64 = u[shift..]
                .iter()
                .zip(&v[..p - shift])
                .map(|(&a, &b)| (a as i32 * b as i32) as i64)
                .sum();
            let lo: i64 = u[..shift]
                .iter()
                .zip(&v[p - shift..])
                .map(|(&a, &b)| (a as i32 * b as i32) as i64)
                .sum();
            hi + lo
        })
        .collect()
}

/// Same correlation through `IFFT(conj(V)·U)`, rounded to integers.
fn cyclic_correlation_fft(u: &[i8], v: &[i8]) -> Vec<i64> {
    let p = u.len();
    let mut planner = FftPlanner::<f64>::new();
    let fwd = planner.plan_fft_forward(p);
    let inv = planner.plan_fft_inverse(p);
    let mut uu: Vec<Complex64> = u.iter().map(|&a| Complex64::new(a as f64, 0.0)).collect();
    let mut vv: Vec<Complex64> = v.iter().map(|&a| Complex64::new(a as f64, 0.0)).collect();
    fwd.process(&mut uu);
    fwd.process(&mut vv);
    let mut prod: Vec<Complex64> = uu.iter().zip(&vv).map(|(a, b)| a * b.conj()).collect();
    inv.process(&mut prod);
    let scale = 1.0 / p as f64;
    prod.iter()
        .map(|c| {
            let x = c.re * scale;
            let r = x.round();
            assert!((x - r).abs() < 1e-3, "FFT correlation lost integrality: {x}");
            r as i64
        })
        .collect()
}

fn generic_shifted(f: &FieldTable, weights: &[i8], sign_of_shift: i8) -> Vec<i64> {
    (0..f.q())
        .into_par_iter()
        .map(|lambda| {
            let shift = if sign_of_shift > 0 { lambda } else { f.neg(lambda) };
            f.elements()
                .filter(|&x| weights[x as usize] != 0)
                .map(|x| weights[x as usize] as i64 * f.phi(f.sub(x, shift)) as i64)
                .sum()
        })
        .collect()
}

/// `a_λ^Leg` for every `λ` (entries at `λ ∈ {0, 1}` are the degenerate sums).
pub fn legendre_traces_direct(f: &FieldTable) -> Vec<i64> {
    let w = legendre_weights(f);
    let corr = if f.is_prime_field() {
        cyclic_correlation_direct(&w, f.phi_table())
    } else {
        generic_shifted(f, &w, 1)
    };
    corr.into_iter().map(|c| -c).collect()
}

/// FFT route for prime fields; `None` for extension fields.
pub fn legendre_traces_fft(f: &FieldTable) -> Option<Vec<i64>> {
    if !f.is_prime_field() {
        return None;
    }
    let w = legendre_weights(f);
    Some(cyclic_correlation_fft(&w, f.phi_table()).into_iter().map(|c| -c).collect())
}

pub fn legendre_traces(f: &FieldTable) -> Vec<i64> {
    if f.is_prime_field() && f.p() > FFT_MIN_PRIME {
        legendre_traces_fft(f).expect("prime field")
    } else {
        legendre_traces_direct(f)
    }
}

fn negate_index(f: &FieldTable, corr: Vec<i64>) -> Vec<i64> {
    // corr is indexed by the shift s = -λ
    (0..f.q()).map(|lambda| -corr[f.neg(lambda) as usize]).collect()
}

/// `a_λ^Cl` for every `λ` (entries at `λ ∈ {0, -1}` are the degenerate sums).
pub fn clausen_traces_direct(f: &FieldTable) -> Vec<i64> {
    let w = clausen_weights(f);
    if f.is_prime_field() {
        negate_index(f, cyclic_correlation_direct(&w, f.phi_table()))
    } else {
        generic_shifted(f, &w, -1).into_iter().map(|c| -c).collect()
    }
}

pub fn clausen_traces_fft(f: &FieldTable) -> Option<Vec<i64>> {
    if !f.is_prime_field() {
        return None;
    }
    let w = clausen_weights(f);
    Some(negate_index(f, cyclic_correlation_fft(&w, f.phi_table())))
}

pub fn clausen_traces(f: &FieldTable) -> Vec<i64> {
    if f.is_prime_field() && f.p() > FFT_MIN_PRIME {
        clausen_traces_fft(f).expect("prime field")
    } else {
        clausen_traces_direct(f)
    }
}

/// Elements excluded from a family (`{0, 1}` for Legendre, `{0, -1}` for Clausen).
pub fn singular_parameters(f: &FieldTable, family: super::Family) -> [Elem; 2] {
    match family {
        super::Family::Legendre => [0, f.one()],
        super::Family::Clausen => [0, f.neg(f.one())],
    }
}
