//! Empirical moments of the hypergeometric sweeps and the class-number
//! formulas they are compared against.

pub mod dist;

pub use dist::{
    batman_density, batman_moment, ks_and_histogram, semicircle_density, BatmanMoment, DistError,
    EmpiricalHistogram, Reference,
};

use crate::arith::{catalan, orthogonal3_moment, prime_power, rational_string};
use crate::classnumbers::{supersingular_count, ClassNumberError, ClassNumberTable};
use crate::curves::CurveCensus;
use crate::field::FieldTable;
use crate::hypergeom::{Family, ScaledHyperValue};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::value::RawValue;

/// A float rendered with 17 significant digits.
pub fn float17(x: f64) -> String {
    format!("{x:.16e}")
}

fn raw_float(x: f64) -> Box<RawValue> {
    let s = if x.is_finite() { float17(x) } else { "null".to_string() };
    RawValue::from_string(s).expect("valid JSON number")
}

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum MomentError {
    #[error(transparent)]
    ClassNumbers(#[from] ClassNumberError),
    #[error("{0} is not a power of a prime p >= 5")]
    BadField(u64),
}

/// `Σ scaled^m` over the sweep, exactly.
pub fn power_sum(values: &[ScaledHyperValue], m: u32) -> BigInt {
    values
        .par_chunks(4096)
        .map(|chunk| chunk.iter().fold(BigInt::zero(), |acc, v| acc + BigInt::from(v.scaled).pow(m)))
        .reduce(BigInt::zero, |a, b| a + b)
}

/// Exponent `e` with `normalized = Σ scaled^m / q^{e/2}`: `m + 2` for ₂F₁, `2m + 2` for ₃F₂.
fn normalization_half_power(family: Family, m: u32) -> u32 {
    match family {
        Family::F21 => m + 2,
        Family::F32 => 2 * m + 2,
    }
}

/// The exact normalized moment when the normalization is rational.
pub fn exact_normalized(sum: &BigInt, family: Family, q: u64, m: u32) -> Option<BigRational> {
    let e = normalization_half_power(family, m);
    (e % 2 == 0).then(|| BigRational::new(sum.clone(), BigInt::from(q).pow(e / 2)))
}

pub fn normalized_moment(sum: &BigInt, family: Family, q: u64, m: u32) -> f64 {
    let e = normalization_half_power(family, m);
    let whole = BigRational::new(sum.clone(), BigInt::from(q).pow(e / 2));
    let x = crate::arith::rational_to_f64(&whole);
    if e % 2 == 1 {
        x / (q as f64).sqrt()
    } else {
        x
    }
}

/// Limiting moment: Catalan numbers for ₂F₁, the O(3) sums for ₃F₂, 0 for odd `m`.
pub fn reference_moment(family: Family, m: u32) -> BigRational {
    if m % 2 == 1 {
        return BigRational::zero();
    }
    BigRational::from_integer(match family {
        Family::F21 => catalan(m as u64 / 2),
        Family::F32 => orthogonal3_moment(m as u64),
    })
}

fn field_params(q: u64) -> Result<(u64, u32), MomentError> {
    prime_power(q).filter(|&(p, _)| p >= 5).ok_or(MomentError::BadField(q))
}

/// `s` with `s² <= 4q`.
fn trace_range(q: u64) -> std::ops::RangeInclusive<i64> {
    let b = crate::arith::isqrt(4 * q) as i64;
    -b..=b
}

/// `Σ H*((4q-s²)/divisor) s^m` over `s ≡ q+1 (mod modulus)`, `s² <= 4q`, `p ∤ s`.
/// Non-integral arguments contribute nothing.
pub fn weighted_class_sum(
    table: &ClassNumberTable,
    q: u64,
    m: u32,
    modulus: i64,
    divisor: i64,
) -> Result<BigRational, MomentError> {
    let (p, _) = field_params(q)?;
    table.ensure(4 * q)?;
    let target = (q as i64 + 1).rem_euclid(modulus);
    let mut twelve = BigInt::zero();
    for s in trace_range(q) {
        if s.rem_euclid(modulus) != target || s % p as i64 == 0 {
            continue;
        }
        let d = 4 * q as i64 - s * s;
        if d % divisor != 0 {
            continue;
        }
        let h = table.hstar12(d / divisor);
        if h != 0 {
            twelve += BigInt::from(h) * BigInt::from(s).pow(m);
        }
    }
    Ok(BigRational::new(twelve, BigInt::from(12)))
}

/// `Σ_{s even, s² <= 4q} H*(4q-s²) s^m`.
pub fn clausen_class_sum(table: &ClassNumberTable, q: u64, m: u32) -> Result<BigRational, MomentError> {
    table.ensure(4 * q)?;
    let mut twelve = BigInt::zero();
    for s in trace_range(q).filter(|s| s % 2 == 0) {
        twelve += BigInt::from(table.hstar12(4 * q as i64 - s * s)) * BigInt::from(s).pow(m);
    }
    Ok(BigRational::new(twelve, BigInt::from(12)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MomentCase {
    /// `r` odd, `m` even.
    OddPowerEvenMoment,
    /// `r`, `m` both even.
    EvenPowerEvenMoment,
    /// `q ≡ 3 (mod 4)`, `m` odd.
    ThreeModFourOdd,
    /// `q ≡ 1 (mod 4)`, `m` odd.
    OneModFourOdd,
}

impl MomentCase {
    pub fn of(q: u64, r: u32, m: u32) -> Self {
        match (m % 2, r % 2, q % 4) {
            (0, 1, _) => MomentCase::OddPowerEvenMoment,
            (0, _, _) => MomentCase::EvenPowerEvenMoment,
            (_, _, 3) => MomentCase::ThreeModFourOdd,
            _ => MomentCase::OneModFourOdd,
        }
    }

    pub fn number(self) -> u8 {
        match self {
            MomentCase::OddPowerEvenMoment => 1,
            MomentCase::EvenPowerEvenMoment => 2,
            MomentCase::ThreeModFourOdd => 3,
            MomentCase::OneModFourOdd => 4,
        }
    }
}

/// Class-number side of the ₂F₁ moment formula for `Σ scaled^m`.
#[derive(Clone, Debug, PartialEq)]
pub struct FormulaRhs {
    pub case: MomentCase,
    /// Everything except the unknown-average term.
    pub value: BigRational,
    /// `S(p)·(2√q)^m` when `q` is a square, the size of one unit of the unknown average.
    pub unknown_unit: Option<f64>,
    /// `S(p)·q^{m/2}`, the unit as literally printed.
    pub printed_unit: Option<f64>,
}

impl FormulaRhs {
    /// `6·S(p)·(2√q)^m`.
    pub fn band(&self) -> Option<f64> {
        self.unknown_unit.map(|u| 6.0 * u)
    }
}

pub fn formula_rhs_f21(table: &ClassNumberTable, q: u64, m: u32) -> Result<FormulaRhs, MomentError> {
    let (p, r) = field_params(q)?;
    let case = MomentCase::of(q, r, m);
    let one = BigRational::from_integer(1.into());
    let value = match case {
        MomentCase::OddPowerEvenMoment | MomentCase::EvenPowerEvenMoment => {
            one + BigRational::from_integer(3.into()) * weighted_class_sum(table, q, m, 4, 4)?
        }
        MomentCase::ThreeModFourOdd => one,
        MomentCase::OneModFourOdd => {
            -one - BigRational::from_integer(2.into()) * weighted_class_sum(table, q, m, 8, 4)?
                - BigRational::from_integer(4.into()) * weighted_class_sum(table, q, m, 16, 16)?
        }
    };
    let has_unknown = r % 2 == 0 && matches!(case, MomentCase::EvenPowerEvenMoment | MomentCase::OneModFourOdd);
    let (unknown_unit, printed_unit) = if has_unknown {
        let s = supersingular_count(p)? as f64;
        let root = (q as f64).sqrt();
        (Some(s * (2.0 * root).powi(m as i32)), Some(s * root.powi(m as i32)))
    } else {
        (None, None)
    };
    Ok(FormulaRhs { case, value, unknown_unit, printed_unit })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FormulaStatus {
    Exact,
    WithinBand,
    Mismatch,
}

/// The JSON moment record.
#[derive(Clone, Debug)]
pub struct MomentReport {
    pub p: u64,
    pub r: u32,
    pub family: Family,
    pub m: u32,
    pub sum_scaled: BigInt,
    pub normalized: f64,
    pub reference: BigRational,
    pub formula: Option<FormulaRhs>,
    pub defect: Option<BigRational>,
    pub status: Option<FormulaStatus>,
    /// `defect / (S(p)(2√q)^m)`, the inferred average.
    pub inferred: Option<f64>,
    pub note: Option<String>,
}

#[derive(Serialize)]
struct MomentJson<'a> {
    p: u64,
    r: u32,
    family: Family,
    m: u32,
    sum_scaled: String,
    normalized: Box<RawValue>,
    reference: String,
    formula_rhs: Option<String>,
    defect: Option<String>,
    band: Option<Box<RawValue>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    case: Option<u8>,
    #[serde(skip_serializing_if = "Option::is_none")]
    status: Option<FormulaStatus>,
    #[serde(skip_serializing_if = "Option::is_none")]
    inferred: Option<Box<RawValue>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    note: Option<&'a str>,
}

impl MomentReport {
    pub fn build(
        values: &[ScaledHyperValue],
        family: Family,
        f: &FieldTable,
        table: Option<&ClassNumberTable>,
        m: u32,
    ) -> Result<Self, MomentError> {
        let q = f.q() as u64;
        let sum = power_sum(values, m);
        let normalized = normalized_moment(&sum, family, q, m);
        let mut report = MomentReport {
            p: f.p() as u64,
            r: f.r(),
            family,
            m,
            sum_scaled: sum.clone(),
            normalized,
            reference: reference_moment(family, m),
            formula: None,
            defect: None,
            status: None,
            inferred: None,
            note: None,
        };
        if family != Family::F21 {
            return Ok(report);
        }
        let Some(table) = table else {
            return Ok(report);
        };
        let rhs = formula_rhs_f21(table, q, m)?;
        let defect = BigRational::from_integer(sum) - &rhs.value;
        let defect_f = crate::arith::rational_to_f64(&defect);
        let inferred = rhs.unknown_unit.map(|u| defect_f / u);
        let status = if defect.is_zero() {
            FormulaStatus::Exact
        } else if let Some(c) = inferred {
            let ok = match rhs.case {
                MomentCase::EvenPowerEvenMoment => (-1e-9..=6.0 + 1e-9).contains(&c),
                _ => (-6.0 - 1e-9..=6.0 + 1e-9).contains(&c),
            };
            if ok {
                FormulaStatus::WithinBand
            } else {
                FormulaStatus::Mismatch
            }
        } else {
            FormulaStatus::Mismatch
        };
        if rhs.case == MomentCase::OneModFourOdd {
            report.note = Some(match (status, rhs.printed_unit) {
                (FormulaStatus::Exact, _) => "case (4) formula holds exactly".to_string(),
                (_, Some(u)) => format!(
                    "case (4): unknown term read as D·S(p)·(2√q)^m; literal D·S(p)·q^(m/2) would need D = {}",
                    float17(defect_f / u)
                ),
                _ => "case (4) formula disagrees with the sweep".to_string(),
            });
        }
        report.formula = Some(rhs);
        report.defect = Some(defect);
        report.status = Some(status);
        report.inferred = inferred;
        Ok(report)
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        let j = MomentJson {
            p: self.p,
            r: self.r,
            family: self.family,
            m: self.m,
            sum_scaled: self.sum_scaled.to_string(),
            normalized: raw_float(self.normalized),
            reference: rational_string(&self.reference),
            formula_rhs: self.formula.as_ref().map(|f| rational_string(&f.value)),
            defect: self.defect.as_ref().map(rational_string),
            band: self.formula.as_ref().and_then(|f| f.band()).map(raw_float),
            case: self.formula.as_ref().map(|f| f.case.number()),
            status: self.status,
            inferred: self.inferred.map(raw_float),
            note: self.note.as_deref(),
        };
        // RawValue keeps the 17-digit float text when re-serialized
        serde_json::from_str(&serde_json::to_string(&j).expect("serializable")).expect("valid JSON")
    }

    pub fn to_json(&self) -> String {
        let j = MomentJson {
            p: self.p,
            r: self.r,
            family: self.family,
            m: self.m,
            sum_scaled: self.sum_scaled.to_string(),
            normalized: raw_float(self.normalized),
            reference: rational_string(&self.reference),
            formula_rhs: self.formula.as_ref().map(|f| rational_string(&f.value)),
            defect: self.defect.as_ref().map(rational_string),
            band: self.formula.as_ref().and_then(|f| f.band()).map(raw_float),
            case: self.formula.as_ref().map(|f| f.case.number()),
            status: self.status,
            inferred: self.inferred.map(raw_float),
            note: self.note.as_deref(),
        };
        serde_json::to_string(&j).expect("serializable")
    }
}

/// Reports for `m = 1..=m_max`, as a JSON array.
pub fn reports_to_json(reports: &[MomentReport]) -> String {
    let parts: Vec<String> = reports.iter().map(|r| r.to_json()).collect();
    format!("[{}]", parts.join(","))
}

/// Outcome of comparing Clausen moments on `L(s, q)` to the class counts.
#[derive(Clone, Debug, PartialEq)]
pub enum ClausenMomentCheck {
    Skipped(String),
    Checked {
        /// `Σ_{λ∈L} a^{2n}` and `s^{2n}(½|I| + |I₂|)`.
        plain: (BigRational, BigRational),
        /// `Σ_{λ∈L} φ(-λ) a^{2n}` and `s^{2n}(-½|I| + 2|I₂|)`.
        weighted: (BigRational, BigRational),
        /// `|L(s,q)| <= 3·max{H(4q-s²), S(p), 2}`.
        size_bound: bool,
    },
}

impl ClausenMomentCheck {
    pub fn passed(&self) -> Option<bool> {
        match self {
            ClausenMomentCheck::Skipped(_) => None,
            ClausenMomentCheck::Checked { plain, weighted, size_bound } => {
                Some(plain.0 == plain.1 && weighted.0 == weighted.1 && *size_bound)
            }
        }
    }
}

pub fn clausen_even_moment_check(
    census: &CurveCensus,
    f: &FieldTable,
    table: &ClassNumberTable,
    s: i64,
    n: u32,
) -> Result<ClausenMomentCheck, MomentError> {
    let q = f.q() as u64;
    if s <= 0 || s % 2 != 0 || (s * s) as u64 > 4 * q {
        return Ok(ClausenMomentCheck::Skipped("s must be even with 0 < s <= 2√q".into()));
    }
    let report = census.clausen_fibers(f, s);
    if report.exceptional {
        return Ok(ClausenMomentCheck::Skipped("1/3 or -1/9 lies in L(s,q)".into()));
    }
    if census.j1728_at_trace(s) {
        return Ok(ClausenMomentCheck::Skipped("a j=1728 class has trace ±s".into()));
    }
    let set = census.clausen_l_set(s);
    let s2n = BigInt::from(s).pow(2 * n);
    let i = BigInt::from(census.i_count(s));
    let i2 = BigInt::from(census.i2_count(s));
    let two = BigInt::from(2);
    let lhs_plain: BigInt = set
        .iter()
        .map(|&l| BigInt::from(census.clausen_trace[l as usize]).pow(2 * n))
        .sum();
    let lhs_weighted: BigInt = set
        .iter()
        .map(|&l| BigInt::from(f.phi(f.neg(l))) * BigInt::from(census.clausen_trace[l as usize]).pow(2 * n))
        .sum();
    let rhs_plain = BigRational::new(&s2n * (&i + &two * &i2), two.clone());
    let rhs_weighted = BigRational::new(&s2n * (-&i + BigInt::from(4) * &i2), two);
    let d = 4 * q as i64 - s * s;
    let h = if d > 0 {
        table.ensure(d as u64)?;
        table.hurwitz(d) as u64
    } else {
        0
    };
    let sp = supersingular_count(f.p() as u64)?;
    let size_bound = set.len() as u64 <= 3 * h.max(sp).max(2);
    Ok(ClausenMomentCheck::Checked {
        plain: (BigRational::from_integer(lhs_plain), rhs_plain),
        weighted: (BigRational::from_integer(lhs_weighted), rhs_weighted),
        size_bound,
    })
}

/// `3·Σ_{s≡q+1 (4)} H*((4q-s²)/4) s^{2n} / q^{n+1}` and the Clausen analogue
/// `Σ_{s even} H*(4q-s²) s^{2n} / q^{n+1}`, to compare with `Cat_n` and `(4/3)Cat_n`.
pub fn class_sum_ratios(table: &ClassNumberTable, q: u64, n: u32) -> Result<(f64, f64), MomentError> {
    let qn = BigInt::from(q).pow(n + 1);
    let leg = weighted_class_sum(table, q, 2 * n, 4, 4)? * BigRational::from_integer(3.into());
    let cl = clausen_class_sum(table, q, 2 * n)?;
    let ratio = |x: BigRational| crate::arith::rational_to_f64(&(x / BigRational::from_integer(qn.clone())));
    Ok((ratio(leg), ratio(cl)))
}

/// Inferred unknown averages are multiples of `1/S(p)`; this recovers the
/// numerator when `defect` is an exact multiple of `(2√q)^m`.
pub fn inferred_count(defect: &BigRational, q: u64, m: u32) -> Option<BigInt> {
    let root = crate::arith::isqrt(q);
    if root * root != q || !defect.is_integer() {
        return None;
    }
    let unit = BigInt::from(2 * root).pow(m);
    let (quo, rem) = defect.to_integer().div_rem(&unit);
    rem.is_zero().then_some(quo)
}
