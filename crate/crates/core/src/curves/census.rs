//! Brute-force isomorphism classes of `y² = x³ + Ax + B` over a small field.
//!
//! Two curves are `F_q`-isomorphic iff `(A', B') = (u⁴A, u⁶B)` for some
//! `u ≠ 0`, so the classes are the orbits of that action on nonsingular
//! pairs. Nothing here uses class-number formulas; it is the oracle they
//! are checked against.

use super::{group::LongWeierstrass, short_j_invariant, Cubic, CurveError};
use crate::field::{Elem, FieldTable};
use rayon::prelude::*;
use std::collections::HashMap;

pub const DEFAULT_CENSUS_CAP: u32 = 2500;

const UNSEEN: u32 = u32::MAX;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoClass {
    /// First pair `(A, B)` of the orbit in `A·q + B` order.
    pub a: Elem,
    pub b: Elem,
    pub trace: i64,
    pub full_two_torsion: bool,
    pub z4_z4: bool,
    pub member_count: u32,
    pub j_invariant: Elem,
}

#[derive(Clone, Debug)]
pub struct CurveCensus {
    pub q: u32,
    pub p: u32,
    pub classes: Vec<IsoClass>,
    class_of: Vec<u32>,
    /// Class of `E_λ^Leg` for each `λ`; `None` at `λ ∈ {0, 1}`.
    pub legendre_class: Vec<Option<u32>>,
    /// Class of `E_λ^Cl` for each `λ`; `None` at `λ ∈ {0, -1}`.
    pub clausen_class: Vec<Option<u32>>,
    /// `a_λ^Cl` from the class table (0 at singular λ).
    pub clausen_trace: Vec<i64>,
    pub nonsingular_pairs: u64,
}

/// How the map `λ ↦ [E_λ^Cl] ∪ [E_λ^Cl]^tw` behaves on `L(s, q)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClausenFiberReport {
    pub s: i64,
    /// `1/3` or `-1/9` lies in `L(s, q)`.
    pub exceptional: bool,
    /// λ whose fiber size is 3 although `-λ` is a non-square, or not 3 although it is a square.
    pub mismatches: Vec<Elem>,
    pub lambdas: usize,
}

pub fn census(f: &FieldTable, cap: u32) -> Result<CurveCensus, CurveError> {
    let q = f.q();
    if q > cap {
        return Err(CurveError::CensusTooLarge { q, cap });
    }
    let qs = q as usize;
    let units: Vec<(Elem, Elem)> = (1..q)
        .map(|u| {
            let u2 = f.mul(u, u);
            let u4 = f.mul(u2, u2);
            (u4, f.mul(u4, u2))
        })
        .collect();
    let four = f.from_int(4);
    let twenty_seven = f.from_int(27);

    let mut class_of = vec![UNSEEN; qs * qs];
    let mut reps: Vec<(Elem, Elem, u32)> = Vec::new();
    let mut nonsingular_pairs = 0u64;
    for a in 0..q {
        let a3 = f.mul(four, f.mul(a, f.mul(a, a)));
        for b in 0..q {
            if f.add(a3, f.mul(twenty_seven, f.mul(b, b))) == 0 {
                continue;
            }
            nonsingular_pairs += 1;
            let idx = a as usize * qs + b as usize;
            if class_of[idx] != UNSEEN {
                continue;
            }
            let id = reps.len() as u32;
            let mut members = 0;
            for &(u4, u6) in &units {
                let j = f.mul(u4, a) as usize * qs + f.mul(u6, b) as usize;
                if class_of[j] == UNSEEN {
                    class_of[j] = id;
                    members += 1;
                }
            }
            reps.push((a, b, members));
        }
    }

    let classes: Vec<IsoClass> = reps
        .par_iter()
        .map(|&(a, b, member_count)| {
            let cubic = Cubic::short(a, b);
            let e = LongWeierstrass { a2: 0, a4: a, a6: b };
            let full_two_torsion = e.two_torsion_count(f) == 4;
            let z4_z4 = full_two_torsion && e.four_torsion_count(f) == 16;
            IsoClass {
                a,
                b,
                trace: cubic.trace(f),
                full_two_torsion,
                z4_z4,
                member_count,
                j_invariant: short_j_invariant(f, a, b),
            }
        })
        .collect();

    let lookup = |c: Cubic| {
        let (a, b) = c.short_model(f);
        class_of[a as usize * qs + b as usize]
    };
    let minus_one = f.neg(1);
    let legendre_class: Vec<Option<u32>> = f
        .elements()
        .map(|l| (l != 0 && l != 1).then(|| lookup(Cubic::legendre(f, l))))
        .collect();
    let clausen_class: Vec<Option<u32>> = f
        .elements()
        .map(|l| (l != 0 && l != minus_one).then(|| lookup(Cubic::clausen(f, l))))
        .collect();
    let clausen_trace = clausen_class
        .iter()
        .map(|c| c.map_or(0, |id| classes[id as usize].trace))
        .collect();

    Ok(CurveCensus {
        q,
        p: f.p(),
        classes,
        class_of,
        legendre_class,
        clausen_class,
        clausen_trace,
        nonsingular_pairs,
    })
}

impl CurveCensus {
    pub fn class_of(&self, a: Elem, b: Elem) -> Option<u32> {
        let id = self.class_of[a as usize * self.q as usize + b as usize];
        (id != UNSEEN).then_some(id)
    }

    /// Classes with full 2-torsion and trace exactly `s`.
    pub fn full_two_torsion_count(&self, s: i64) -> usize {
        self.classes
            .iter()
            .filter(|c| c.full_two_torsion && c.trace == s)
            .count()
    }

    /// `|I(s, q)|`: classes with trace `±s` (`s > 0`).
    pub fn i_count(&self, s: i64) -> usize {
        self.classes.iter().filter(|c| c.trace.abs() == s.abs()).count()
    }

    /// `|I₂(s, q)|`: the classes of `I(s, q)` with full 2-torsion.
    pub fn i2_count(&self, s: i64) -> usize {
        self.classes
            .iter()
            .filter(|c| c.trace.abs() == s.abs() && c.full_two_torsion)
            .count()
    }

    /// `|L(λ)|`: Legendre parameters in the class of `E_λ^Leg`.
    pub fn legendre_multiplicity(&self, lambda: Elem) -> Option<usize> {
        let id = self.legendre_class[lambda as usize]?;
        Some(self.legendre_class.iter().filter(|&&c| c == Some(id)).count())
    }

    /// Classes with full 2-torsion containing no Legendre curve.
    pub fn inconvenient_classes(&self) -> Vec<u32> {
        let mut has_legendre = vec![false; self.classes.len()];
        for id in self.legendre_class.iter().flatten() {
            has_legendre[*id as usize] = true;
        }
        (0..self.classes.len() as u32)
            .filter(|&id| self.classes[id as usize].full_two_torsion && !has_legendre[id as usize])
            .collect()
    }

    pub fn z4_z4_classes(&self) -> usize {
        self.classes.iter().filter(|c| c.z4_z4).count()
    }

    /// Class of the quadratic twist by a non-square `d`.
    pub fn twist_class(&self, f: &FieldTable, id: u32) -> u32 {
        let d = f.exp(1);
        let c = &self.classes[id as usize];
        let d2 = f.mul(d, d);
        self.class_of(f.mul(d2, c.a), f.mul(f.mul(d2, d), c.b))
            .expect("twist is nonsingular")
    }

    /// Every class and its twist have opposite traces.
    pub fn twists_negate_traces(&self, f: &FieldTable) -> bool {
        (0..self.classes.len() as u32)
            .all(|id| self.classes[self.twist_class(f, id) as usize].trace == -self.classes[id as usize].trace)
    }

    /// `L(s, q)`: Clausen parameters with `a_λ^Cl = ±s`.
    pub fn clausen_l_set(&self, s: i64) -> Vec<Elem> {
        self.clausen_class
            .iter()
            .enumerate()
            .filter(|(l, c)| c.is_some() && self.clausen_trace[*l].abs() == s.abs())
            .map(|(l, _)| l as Elem)
            .collect()
    }

    /// Checks that the Clausen map onto twist-pairs of classes is 3-to-1
    /// exactly on parameters with `-λ` a square and 1-to-1 elsewhere.
    pub fn clausen_fibers(&self, f: &FieldTable, s: i64) -> ClausenFiberReport {
        let set = self.clausen_l_set(s);
        let third = f.inv(f.from_int(3)).expect("p >= 5");
        let minus_ninth = f.neg(f.inv(f.from_int(9)).expect("p >= 5"));
        let exceptional = set.contains(&third) || set.contains(&minus_ninth);
        let pair = |l: Elem| {
            let id = self.clausen_class[l as usize].expect("nonsingular");
            let tw = self.twist_class(f, id);
            (id.min(tw), id.max(tw))
        };
        let mut fiber: HashMap<(u32, u32), usize> = HashMap::new();
        for &l in &set {
            *fiber.entry(pair(l)).or_default() += 1;
        }
        let mismatches = set
            .iter()
            .copied()
            .filter(|&l| {
                let size = fiber[&pair(l)];
                let expected = if f.is_square(f.neg(l)) { 3 } else { 1 };
                size != expected
            })
            .collect();
        ClausenFiberReport { s, exceptional, mismatches, lambdas: set.len() }
    }

    /// Some class with `j = 1728` has trace `±s`.
    pub fn j1728_at_trace(&self, s: i64) -> bool {
        let j = 1728 % self.p as i64;
        self.classes
            .iter()
            .any(|c| c.trace.abs() == s.abs() && self.j_matches(c.j_invariant, j))
    }

    fn j_matches(&self, j: Elem, target_mod_p: i64) -> bool {
        // 1728 lives in the prime subfield: its digit string is just the constant
        j as i64 == target_mod_p
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
    fn small_census_examples() {
        let f5 = field(5);
        let c5 = census(&f5, DEFAULT_CENSUS_CAP).unwrap();
        assert_eq!(c5.full_two_torsion_count(2), 1);
        assert_eq!(c5.full_two_torsion_count(-2), 1);
        let members: u64 = c5.classes.iter().map(|c| c.member_count as u64).sum();
        assert_eq!(members, c5.nonsingular_pairs);
        // q ≡ 5 mod 8: L(2) = {-1, 2}, L(1/2) = {1/2}
        assert_eq!(c5.legendre_multiplicity(2), Some(2));
        assert_eq!(c5.legendre_multiplicity(3), Some(1));
        assert_eq!(c5.legendre_multiplicity(4), Some(2));

        let c7 = census(&field(7), DEFAULT_CENSUS_CAP).unwrap();
        assert_eq!(c7.full_two_torsion_count(4), 1);
        assert!(matches!(
            census(&field(2503), DEFAULT_CENSUS_CAP),
            Err(CurveError::CensusTooLarge { .. })
        ));
    }

    #[test]
    fn classes_are_consistent_with_members() {
        let f = field(25);
        let c = census(&f, DEFAULT_CENSUS_CAP).unwrap();
        for a in 0..f.q() {
            for b in 0..f.q() {
                if let Some(id) = c.class_of(a, b) {
                    assert_eq!(Cubic::short(a, b).trace(&f), c.classes[id as usize].trace);
                }
            }
        }
        assert!(c.twists_negate_traces(&f));
    }

    #[test]
    fn legendre_multiplicity_law() {
        for q in prime_powers_up_to(200, 5) {
            let f = field(q);
            let c = census(&f, DEFAULT_CENSUS_CAP).unwrap();
            let j0 = 0;
            let j1728 = f.from_int(1728);
            for l in 2..f.q() {
                let rec = c.legendre_class[l as usize].unwrap();
                let j = c.classes[rec as usize].j_invariant;
                if j == j0 || j == j1728 {
                    continue;
                }
                let expected = if q % 4 == 3 {
                    3
                } else {
                    match (f.is_square(l), f.is_square(f.sub(1, l))) {
                        (true, true) => 6,
                        (false, false) => 2,
                        _ => 4,
                    }
                };
                assert_eq!(c.legendre_multiplicity(l), Some(expected), "q={q} λ={l}");
            }
        }
    }

    #[test]
    fn full_two_torsion_is_legendre_when_q_3_mod_4() {
        for q in prime_powers_up_to(200, 5).into_iter().filter(|q| q % 4 == 3) {
            let c = census(&field(q), DEFAULT_CENSUS_CAP).unwrap();
            assert!(c.inconvenient_classes().is_empty(), "q={q}");
        }
    }

    #[test]
    fn inconvenient_classes_match_z4_z4_classes() {
        for q in prime_powers_up_to(200, 5).into_iter().filter(|q| q % 4 == 1) {
            let f = field(q);
            let c = census(&f, DEFAULT_CENSUS_CAP).unwrap();
            let bad = c.inconvenient_classes();
            assert_eq!(bad.len(), c.z4_z4_classes(), "q={q}");
            for id in bad {
                let class = &c.classes[id as usize];
                assert_ne!((f.q() as i64 + 1 - class.trace) % 8, 0);
            }
        }
    }

    #[test]
    fn clausen_traces_agree_with_direct_sum() {
        let f = field(49);
        let c = census(&f, DEFAULT_CENSUS_CAP).unwrap();
        for l in f.elements() {
            if let Ok(rec) = super::super::clausen_trace(&f, l) {
                assert_eq!(rec.trace, c.clausen_trace[l as usize]);
            }
        }
    }
}
