use super::character::{CharacterIndex, UnitRoots};
use super::FieldTable;
use num_complex::Complex64;
use rustfft::FftPlanner;
use std::f64::consts::TAU;

/// Transforms up to this length use the direct O(n²) sum.
pub const NAIVE_DFT_MAX_LEN: usize = 512;

/// All Gauss sums `g(χ_j) = Σ_x χ_j(x) ψ(x)`, `ψ(x) = e^{2πi Tr(x)/p}`.
///
/// Entry `j` is the length-`(q-1)` DFT (positive exponent) of
/// `k ↦ ψ(g^k)` evaluated at frequency `j`.
#[derive(Clone, Debug)]
pub struct GaussSumTable {
    q: u32,
    values: Vec<Complex64>,
}

fn additive_sequence(field: &FieldTable) -> Vec<Complex64> {
    let p = field.p() as f64;
    field
        .exp_table()
        .iter()
        .map(|&x| Complex64::from_polar(1.0, TAU * field.abs_trace(x) as f64 / p))
        .collect()
}

impl GaussSumTable {
    pub fn new(field: &FieldTable) -> Self {
        if field.order() as usize <= NAIVE_DFT_MAX_LEN {
            Self::compute_naive(field)
        } else {
            Self::compute_fft(field)
        }
    }

    /// Direct evaluation of the transform, O(q²).
    pub fn compute_naive(field: &FieldTable) -> Self {
        let seq = additive_sequence(field);
        let n = seq.len() as u64;
        let roots = UnitRoots::new(n as u32);
        let values = (0..n)
            .map(|j| {
                seq.iter()
                    .enumerate()
                    .map(|(k, &s)| roots.get(j * k as u64) * s)
                    .sum()
            })
            .collect();
        GaussSumTable { q: field.q(), values }
    }

    /// Fast arbitrary-length transform.
    pub fn compute_fft(field: &FieldTable) -> Self {
        let mut buf = additive_sequence(field);
        let mut planner = FftPlanner::<f64>::new();
        // rustfft's inverse transform is the unnormalized e^{+2πi jk/n} sum
        planner.plan_fft_inverse(buf.len()).process(&mut buf);
        GaussSumTable { q: field.q(), values: buf }
    }

    pub fn get(&self, chi: CharacterIndex) -> Complex64 {
        self.values[chi.index() as usize]
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn q(&self) -> u32 {
        self.q
    }
}

/// `J(A, B) = Σ_x A(x) B(1 - x)` by direct summation over the field.
pub fn jacobi_sum_direct(field: &FieldTable, a: CharacterIndex, b: CharacterIndex) -> Complex64 {
    let roots = UnitRoots::new(field.order());
    let one = field.one();
    field
        .elements()
        .map(|x| roots.char_value(field, a, x) * roots.char_value(field, b, field.sub(one, x)))
        .sum()
}

/// `J(A, B)` from Gauss sums, with the degenerate cases handled exactly.
pub fn jacobi_sum_via_gauss(
    field: &FieldTable,
    gauss: &GaussSumTable,
    a: CharacterIndex,
    b: CharacterIndex,
) -> Complex64 {
    let q = field.q() as f64;
    match (a.is_trivial(), b.is_trivial()) {
        (true, true) => Complex64::new(q - 2.0, 0.0),
        (true, false) | (false, true) => Complex64::new(-1.0, 0.0),
        (false, false) => {
            let ab = a.mul(b);
            if ab.is_trivial() {
                Complex64::new(-(a.at_minus_one() as f64), 0.0)
            } else {
                gauss.get(a) * gauss.get(b) / gauss.get(ab)
            }
        }
    }
}

/// `J(A, B)`; the Gauss-sum route, O(1) after precomputation.
pub fn jacobi_sum(
    field: &FieldTable,
    gauss: &GaussSumTable,
    a: CharacterIndex,
    b: CharacterIndex,
) -> Complex64 {
    jacobi_sum_via_gauss(field, gauss, a, b)
}

/// Normalized Jacobi sum `binom(A, B) = B(-1)/q · J(A, B̄)`.
pub fn binomial_norm(
    field: &FieldTable,
    gauss: &GaussSumTable,
    a: CharacterIndex,
    b: CharacterIndex,
) -> Complex64 {
    let sign = b.at_minus_one() as f64;
    jacobi_sum(field, gauss, a, b.conj()) * (sign / field.q() as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{prime_power, prime_powers_up_to};

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    /// Gauss sum by its definition, independent of the DFT formulation.
    fn gauss_by_definition(field: &FieldTable, chi: CharacterIndex) -> Complex64 {
        let p = field.p() as f64;
        field
            .elements()
            .map(|x| {
                super::super::char_eval(field, chi, x)
                    * Complex64::from_polar(1.0, TAU * field.abs_trace(x) as f64 / p)
            })
            .sum()
    }

    #[test]
    fn small_gauss_sums() {
        let f5 = FieldTable::new(5, 1).unwrap();
        let g5 = GaussSumTable::new(&f5);
        assert!((g5.get(CharacterIndex::new(&f5, 1)).norm_sqr() - 5.0).abs() < 1e-8);
        assert!(close(g5.get(CharacterIndex::trivial(&f5)), Complex64::new(-1.0, 0.0), 1e-8));

        let f7 = FieldTable::new(7, 1).unwrap();
        let g7 = GaussSumTable::new(&f7);
        let phi = CharacterIndex::quadratic(&f7);
        let oracle = gauss_by_definition(&f7, phi);
        assert!(close(oracle, Complex64::new(0.0, 7f64.sqrt()), 1e-8));
        assert!(close(g7.get(phi), oracle, 1e-8));
    }

    #[test]
    fn naive_and_fft_agree() {
        for (p, r) in [(5, 1), (7, 2), (11, 2), (5, 3), (13, 2), (101, 1), (257, 1), (521, 1), (23, 2)] {
            let f = FieldTable::new(p, r).unwrap();
            let a = GaussSumTable::compute_naive(&f);
            let b = GaussSumTable::compute_fft(&f);
            for (x, y) in a.values().iter().zip(b.values()) {
                assert!(close(*x, *y, 1e-6), "q = {}", f.q());
            }
        }
    }

    #[test]
    fn gauss_sums_match_definition_and_modulus() {
        for (p, r) in [(5, 2), (7, 2), (13, 1)] {
            let f = FieldTable::new(p, r).unwrap();
            let g = GaussSumTable::new(&f);
            let q = f.q() as f64;
            for j in 0..f.order() {
                let chi = CharacterIndex::new(&f, j);
                assert!(close(g.get(chi), gauss_by_definition(&f, chi), 1e-8));
                if j != 0 {
                    assert!((g.get(chi).norm_sqr() - q).abs() <= 1e-6 * q);
                }
            }
        }
    }

    #[test]
    fn jacobi_examples_mod_7_and_5() {
        let f7 = FieldTable::new(7, 1).unwrap();
        let g7 = GaussSumTable::new(&f7);
        let eps = CharacterIndex::trivial(&f7);
        let phi = CharacterIndex::quadratic(&f7);
        assert!(close(jacobi_sum_direct(&f7, eps, eps), Complex64::new(5.0, 0.0), 1e-9));
        assert!(close(jacobi_sum(&f7, &g7, eps, eps), Complex64::new(5.0, 0.0), 1e-9));
        assert!(close(jacobi_sum_direct(&f7, phi, eps), Complex64::new(-1.0, 0.0), 1e-9));
        assert!(close(binomial_norm(&f7, &g7, eps, eps), Complex64::new(5.0 / 7.0, 0.0), 1e-9));
        assert!(close(binomial_norm(&f7, &g7, phi, eps), Complex64::new(-1.0 / 7.0, 0.0), 1e-9));

        let f5 = FieldTable::new(5, 1).unwrap();
        let g5 = GaussSumTable::new(&f5);
        let phi5 = CharacterIndex::quadratic(&f5);
        // φ = φ̄, so J(φ, φ) = J(φ, φ̄) = -φ(-1) = -1 for q = 5
        let direct = jacobi_sum_direct(&f5, phi5, phi5);
        assert!(close(direct, Complex64::new(-1.0, 0.0), 1e-9));
        assert!(close(jacobi_sum(&f5, &g5, phi5, phi5), direct, 1e-9));
    }

    #[test]
    fn jacobi_routes_agree_exhaustively() {
        for q in prime_powers_up_to(200, 5) {
            let (p, r) = prime_power(q).unwrap();
            let f = FieldTable::new(p, r).unwrap();
            let g = GaussSumTable::new(&f);
            let roots = UnitRoots::new(f.order());
            let one = f.one();
            // B(1 - x) for every character B and element x, as a dense table
            let n = f.order() as usize;
            let one_minus: Vec<u32> = f.elements().map(|x| f.sub(one, x)).collect();
            let logs: Vec<Option<u32>> = f.elements().map(|x| f.dlog(x)).collect();
            for a in 0..n as u64 {
                for b in 0..n as u64 {
                    let mut direct = Complex64::new(0.0, 0.0);
                    for x in 2..q as usize {
                        if let (Some(kx), Some(ky)) = (logs[x], logs[one_minus[x] as usize]) {
                            direct += roots.get(a * kx as u64 + b * ky as u64);
                        }
                    }
                    let ca = CharacterIndex::new(&f, a as u32);
                    let cb = CharacterIndex::new(&f, b as u32);
                    let fast = jacobi_sum(&f, &g, ca, cb);
                    assert!(close(direct, fast, 1e-6), "q={q} a={a} b={b}");
                    let bound = (q - 2) as f64 / q as f64 + 1e-12;
                    assert!(binomial_norm(&f, &g, ca, cb).norm() <= bound);
                }
            }
        }
    }
}
