//! Legendre and Clausen families, quadratic twists, torsion structure and a
//! brute-force isomorphism-class census for small fields.
//!
//! ```text
//! Legendre:  y² = x(x - 1)(x - λ)        λ ∉ {0, 1}
//! Clausen:   y² = (x - 1)(x² + λ)        λ ∉ {0, -1}
//! ```

mod census;
pub mod group;
pub mod traces;

pub use census::{census, ClausenFiberReport, CurveCensus, IsoClass, DEFAULT_CENSUS_CAP};
pub use traces::{clausen_traces, legendre_traces};

use crate::field::{Elem, FieldTable, GaussSumTable};
use group::LongWeierstrass;
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    Legendre,
    Clausen,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CurveError {
    #[error("{family:?} curve at λ = {lambda} is singular")]
    SingularParameter { family: Family, lambda: Elem },
    #[error("cubic is singular")]
    SingularCubic,
    #[error("twist parameter must be nonzero")]
    ZeroTwist,
    #[error("census over F_{q} exceeds brute-force cap {cap}")]
    CensusTooLarge { q: u32, cap: u32 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TraceRecord {
    pub lambda: Elem,
    pub family: Family,
    pub trace: i64,
    /// `None` only for singular models, which are rejected before a record is built.
    pub j_invariant: Option<Elem>,
}

/// `y² = c3·x³ + c2·x² + c1·x + c0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Cubic {
    pub c3: Elem,
    pub c2: Elem,
    pub c1: Elem,
    pub c0: Elem,
}

impl Cubic {
    pub fn legendre(f: &FieldTable, lambda: Elem) -> Self {
        // x(x-1)(x-λ) = x³ - (1+λ)x² + λx
        Cubic {
            c3: 1,
            c2: f.neg(f.add(1, lambda)),
            c1: lambda,
            c0: 0,
        }
    }

    pub fn clausen(f: &FieldTable, lambda: Elem) -> Self {
        // (x-1)(x²+λ) = x³ - x² + λx - λ
        Cubic {
            c3: 1,
            c2: f.neg(1),
            c1: lambda,
            c0: f.neg(lambda),
        }
    }

    pub fn short(a: Elem, b: Elem) -> Self {
        Cubic { c3: 1, c2: 0, c1: a, c0: b }
    }

    pub fn eval(&self, f: &FieldTable, x: Elem) -> Elem {
        let mut acc = self.c3;
        acc = f.add(f.mul(acc, x), self.c2);
        acc = f.add(f.mul(acc, x), self.c1);
        f.add(f.mul(acc, x), self.c0)
    }

    /// The twist `y² = d·(cubic)`.
    pub fn twist(&self, f: &FieldTable, d: Elem) -> Self {
        Cubic {
            c3: f.mul(d, self.c3),
            c2: f.mul(d, self.c2),
            c1: f.mul(d, self.c1),
            c0: f.mul(d, self.c0),
        }
    }

    pub fn discriminant(&self, f: &FieldTable) -> Elem {
        // b²c² - 4ac³ - 4b³d - 27a²d² + 18abcd
        let (a, b, c, d) = (self.c3, self.c2, self.c1, self.c0);
        let k = |n: i64| f.from_int(n);
        let m = |xs: &[Elem]| xs.iter().fold(1, |acc, &x| f.mul(acc, x));
        let t1 = m(&[b, b, c, c]);
        let t2 = m(&[k(4), a, c, c, c]);
        let t3 = m(&[k(4), b, b, b, d]);
        let t4 = m(&[k(27), a, a, d, d]);
        let t5 = m(&[k(18), a, b, c, d]);
        f.add(f.sub(f.sub(f.sub(t1, t2), t3), t4), t5)
    }

    pub fn is_nonsingular(&self, f: &FieldTable) -> bool {
        self.c3 != 0 && self.discriminant(f) != 0
    }

    /// Monic model `(c3·y)² = X³ + c2·X² + c1c3·X + c0c3²` with `X = c3·x`.
    pub fn monic(&self, f: &FieldTable) -> LongWeierstrass {
        let c3 = self.c3;
        LongWeierstrass {
            a2: self.c2,
            a4: f.mul(self.c1, c3),
            a6: f.mul(self.c0, f.mul(c3, c3)),
        }
    }

    /// Short model `(A, B)` of the monic form, `x ↦ x - a2/3`.
    pub fn short_model(&self, f: &FieldTable) -> (Elem, Elem) {
        let w = self.monic(f);
        let third = f.inv(f.from_int(3)).expect("p >= 5");
        let a2_sq = f.mul(w.a2, w.a2);
        let a = f.sub(w.a4, f.mul(a2_sq, third));
        let two_27 = f.div(f.from_int(2), f.from_int(27)).expect("p >= 5");
        let b = f.add(
            f.sub(f.mul(two_27, f.mul(a2_sq, w.a2)), f.mul(third, f.mul(w.a2, w.a4))),
            w.a6,
        );
        (a, b)
    }

    pub fn j_invariant(&self, f: &FieldTable) -> Option<Elem> {
        if !self.is_nonsingular(f) {
            return None;
        }
        let (a, b) = self.short_model(f);
        Some(short_j_invariant(f, a, b))
    }

    /// Affine points plus the point at infinity.
    pub fn point_count(&self, f: &FieldTable) -> i64 {
        1 + f
            .elements()
            .map(|x| 1 + f.phi(self.eval(f, x)) as i64)
            .sum::<i64>()
    }

    pub fn trace(&self, f: &FieldTable) -> i64 {
        f.q() as i64 + 1 - self.point_count(f)
    }
}

/// `j = 1728 · 4A³ / (4A³ + 27B²)` for `y² = x³ + Ax + B`.
pub fn short_j_invariant(f: &FieldTable, a: Elem, b: Elem) -> Elem {
    let four_a3 = f.mul(f.from_int(4), f.mul(a, f.mul(a, a)));
    let den = f.add(four_a3, f.mul(f.from_int(27), f.mul(b, b)));
    f.div(f.mul(f.from_int(1728), four_a3), den)
        .expect("nonsingular curve")
}

/// `j(E_λ^Leg) = 2⁸ (λ² - λ + 1)³ / (λ² (λ - 1)²)`.
pub fn legendre_j_invariant(f: &FieldTable, lambda: Elem) -> Option<Elem> {
    let lm1 = f.sub(lambda, 1);
    let den = f.mul(f.mul(lambda, lambda), f.mul(lm1, lm1));
    let s = f.add(f.sub(f.mul(lambda, lambda), lambda), 1);
    let num = f.mul(f.from_int(256), f.mul(s, f.mul(s, s)));
    f.div(num, den)
}

/// `a_λ^Leg = -Σ_x φ(x(x-1)(x-λ))`.
pub fn legendre_trace(f: &FieldTable, lambda: Elem) -> Result<TraceRecord, CurveError> {
    if lambda == 0 || lambda == f.one() {
        return Err(CurveError::SingularParameter { family: Family::Legendre, lambda });
    }
    let one = f.one();
    let s: i64 = f
        .elements()
        .map(|x| f.phi(f.mul(f.mul(x, f.sub(x, one)), f.sub(x, lambda))) as i64)
        .sum();
    Ok(TraceRecord {
        lambda,
        family: Family::Legendre,
        trace: -s,
        j_invariant: legendre_j_invariant(f, lambda),
    })
}

/// `a_λ^Cl = -Σ_x φ((x-1)(x²+λ))`.
pub fn clausen_trace(f: &FieldTable, lambda: Elem) -> Result<TraceRecord, CurveError> {
    if lambda == 0 || lambda == f.neg(f.one()) {
        return Err(CurveError::SingularParameter { family: Family::Clausen, lambda });
    }
    let one = f.one();
    let s: i64 = f
        .elements()
        .map(|x| f.phi(f.mul(f.sub(x, one), f.add(f.mul(x, x), lambda))) as i64)
        .sum();
    Ok(TraceRecord {
        lambda,
        family: Family::Clausen,
        trace: -s,
        j_invariant: Cubic::clausen(f, lambda).j_invariant(f),
    })
}

/// Counts points on `E` and its twist `E_d` and checks
/// `q + 1 - |E| = φ(d)·(q + 1 - |E_d|)`.
pub fn twist_trace_check(f: &FieldTable, curve: &Cubic, d: Elem) -> Result<bool, CurveError> {
    if d == 0 {
        return Err(CurveError::ZeroTwist);
    }
    if !curve.is_nonsingular(f) {
        return Err(CurveError::SingularCubic);
    }
    let a = curve.trace(f);
    let a_d = curve.twist(f, d).trace(f);
    Ok(a == f.phi(d) as i64 * a_d)
}

/// `(Z/2 × Z/2 ⊆ E_λ, Z/4 × Z/4 ⊆ E_λ)` by the square criterion: the second
/// holds iff `q ≡ 1 (mod 4)` and both `λ` and `1 - λ` are squares.
pub fn torsion_flags(f: &FieldTable, lambda: Elem) -> Result<(bool, bool), CurveError> {
    if lambda == 0 || lambda == f.one() {
        return Err(CurveError::SingularParameter { family: Family::Legendre, lambda });
    }
    let four = f.q() % 4 == 1 && f.is_square(lambda) && f.is_square(f.sub(1, lambda));
    Ok((true, four))
}

/// The same flags by enumerating the group.
pub fn torsion_flags_brute(f: &FieldTable, lambda: Elem) -> Result<(bool, bool), CurveError> {
    if lambda == 0 || lambda == f.one() {
        return Err(CurveError::SingularParameter { family: Family::Legendre, lambda });
    }
    let e = Cubic::legendre(f, lambda).monic(f);
    Ok((e.two_torsion_count(f) == 4, e.four_torsion_count(f) == 16))
}

/// Predicted `|X_λ(F_q)| = 1 + q² + 19q + q²·₃F₂(-λ)` for the K3 surface
/// `s² = xy(x+1)(y+1)(x+λy)`.
pub fn k3_prediction(f: &FieldTable, gauss: &GaussSumTable, lambda: Elem) -> Result<i64, CurveError> {
    if lambda == 0 || lambda == f.neg(f.one()) {
        return Err(CurveError::SingularParameter { family: Family::Clausen, lambda });
    }
    let q = f.q() as i64;
    let v = crate::hypergeom::f32_scaled(f, gauss, f.neg(lambda));
    Ok(1 + q * q + 19 * q + v.scaled)
}
