//! Verification batteries behind `ffhyper verify`, each check printed as one
//! PASS/FAIL/WARN line.

use crate::arith::{is_prime, isqrt, prime_power, prime_powers_up_to, primes_in};
use crate::classnumbers::{eichler_check, schoof_count, supersingular_count, ClassNumberTable, SchoofCase};
use crate::curves::{census, CurveCensus, DEFAULT_CENSUS_CAP};
use crate::field::{jacobi_sum, jacobi_sum_direct, CharacterIndex, Elem, FieldTable, GaussSumTable};
use crate::hypergeom::{f21_scaled, f32_scaled, greene_2f1, greene_3f2, sweep, Family, INTEGRALITY_TOLERANCE};
use crate::moments::{
    clausen_even_moment_check, power_sum, ClausenMomentCheck, FormulaStatus, MomentReport,
};
use crate::rc;
use num_bigint::BigInt;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Warn,
    NotApplicable,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Warn => "WARN",
            Status::NotApplicable => "N/A",
        })
    }
}

#[derive(Clone, Debug)]
pub struct Check {
    pub status: Status,
    pub name: String,
    pub detail: String,
}

impl Check {
    pub fn new(ok: bool, name: impl Into<String>, detail: impl Into<String>) -> Self {
        Check { status: if ok { Status::Pass } else { Status::Fail }, name: name.into(), detail: detail.into() }
    }

    pub fn with_status(status: Status, name: impl Into<String>, detail: impl Into<String>) -> Self {
        Check { status, name: name.into(), detail: detail.into() }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:<4} {}: {}", self.status, self.name, self.detail)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    Fields,
    Identities,
    Schoof,
    Eichler,
    Rc,
    Clausen,
    All,
}

pub fn run_suite(suite: Suite) -> Vec<Check> {
    match suite {
        Suite::Fields => fields_suite(),
        Suite::Identities => identities_suite(),
        Suite::Schoof => schoof_suite(),
        Suite::Eichler => eichler_suite(),
        Suite::Rc => rc_suite(),
        Suite::Clausen => clausen_suite(),
        Suite::All => [Suite::Fields, Suite::Identities, Suite::Schoof, Suite::Eichler, Suite::Rc, Suite::Clausen]
            .into_iter()
            .flat_map(run_suite)
            .collect(),
    }
}

pub fn any_failed(checks: &[Check]) -> bool {
    checks.iter().any(|c| c.status == Status::Fail)
}

pub fn field_for(q: u64) -> FieldTable {
    let (p, r) = prime_power(q).expect("prime power");
    FieldTable::new(p, r).expect("supported field")
}

/// Worst residual and the first disagreement of the Greene sum against the trace route.
#[derive(Clone, Debug, Default)]
pub struct TraceIdentityStats {
    pub checked: usize,
    pub worst_residual: f64,
    pub first_failure: Option<(u64, Elem, i64, f64)>,
}

impl TraceIdentityStats {
    fn record(&mut self, q: u64, x: Elem, expected: i64, value: f64, imag: f64) {
        self.checked += 1;
        let residual = (value - expected as f64).hypot(imag);
        self.worst_residual = self.worst_residual.max(residual);
        if residual >= INTEGRALITY_TOLERANCE && self.first_failure.is_none() {
            self.first_failure = Some((q, x, expected, value));
        }
    }

    fn merge(mut self, other: Self) -> Self {
        self.checked += other.checked;
        self.worst_residual = self.worst_residual.max(other.worst_residual);
        self.first_failure = self.first_failure.or(other.first_failure);
        self
    }

    pub fn ok(&self) -> bool {
        self.first_failure.is_none() && self.checked > 0
    }
}

/// Compares `q^{n-1}·(Greene sum)` with the trace-side value at one parameter.
pub fn trace_identity_at(f: &FieldTable, gauss: &GaussSumTable, family: Family, x: Elem, stats: &mut TraceIdentityStats) {
    let q = f.q() as u64;
    let (z, expected) = match family {
        Family::F21 => (greene_2f1(f, gauss, x) * q as f64, f21_scaled(f, x).scaled),
        Family::F32 => (greene_3f2(f, gauss, x) * (q * q) as f64, f32_scaled(f, gauss, x).scaled),
    };
    stats.record(q, x, expected, z.re, z.im);
}

pub fn trace_identity_exhaustive(family: Family, q_max: u64) -> TraceIdentityStats {
    prime_powers_up_to(q_max, 5)
        .into_par_iter()
        .map(|q| {
            let f = field_for(q);
            let g = GaussSumTable::new(&f);
            let mut stats = TraceIdentityStats::default();
            for x in f.elements() {
                trace_identity_at(&f, &g, family, x, &mut stats);
            }
            stats
        })
        .reduce(TraceIdentityStats::default, TraceIdentityStats::merge)
}

/// `samples` random `(q, λ)` with `q <= q_max`, deterministic in `seed`.
pub fn trace_identity_random(family: Family, samples: usize, q_max: u64, seed: u64) -> TraceIdentityStats {
    let fields = prime_powers_up_to(q_max, 5);
    let mut rng = StdRng::seed_from_u64(seed);
    let picks: Vec<(u64, u64)> = (0..samples)
        .map(|_| {
            let q = fields[rng.gen_range(0..fields.len())];
            (q, rng.gen_range(0..q))
        })
        .collect();
    picks
        .into_par_iter()
        .map(|(q, x)| {
            let f = field_for(q);
            let g = GaussSumTable::new(&f);
            let mut stats = TraceIdentityStats::default();
            trace_identity_at(&f, &g, family, x as Elem, &mut stats);
            stats
        })
        .reduce(TraceIdentityStats::default, TraceIdentityStats::merge)
}

fn trace_check(name: &str, stats: &TraceIdentityStats, range: &str) -> Check {
    let detail = match stats.first_failure {
        None => format!("{range}, {} values, worst residual {:.2e}", stats.checked, stats.worst_residual),
        Some((q, x, e, v)) => format!("{range}: q={q} x={x} expected {e}, got {v}"),
    };
    Check::new(stats.ok(), name, detail)
}

fn fields_suite() -> Vec<Check> {
    let mut out = Vec::new();
    let qs = prime_powers_up_to(125, 5);
    let gauss_ok = qs.par_iter().all(|&q| {
        let f = field_for(q);
        let g = GaussSumTable::new(&f);
        (1..f.order()).all(|j| (g.get(CharacterIndex::new(&f, j)).norm_sqr() - q as f64).abs() < 1e-6 * q as f64)
    });
    out.push(Check::new(gauss_ok, "gauss sums", "|g(χ)|² = q for χ ≠ ε, q <= 125"));
    let jacobi_ok = qs.par_iter().filter(|&&q| q <= 50).all(|&q| {
        let f = field_for(q);
        let g = GaussSumTable::new(&f);
        (0..f.order()).all(|a| {
            (0..f.order()).all(|b| {
                let (a, b) = (CharacterIndex::new(&f, a), CharacterIndex::new(&f, b));
                (jacobi_sum(&f, &g, a, b) - jacobi_sum_direct(&f, a, b)).norm() < 1e-6
            })
        })
    });
    out.push(Check::new(jacobi_ok, "jacobi sums", "Gauss-sum route equals direct sum, all pairs, q <= 50"));
    let arith_ok = qs.iter().all(|&q| {
        let f = field_for(q);
        f.elements().filter(|&x| x != 0).all(|x| f.mul(x, f.inv(x).unwrap()) == f.one())
            && f.elements().filter(|&x| f.is_square(x)).all(|x| f.sqrt(x).map(|r| f.mul(r, r)) == Some(x))
    });
    out.push(Check::new(arith_ok, "field arithmetic", "inverses and square roots, q <= 125"));
    out
}

/// Criteria on moment identities: exact cases (1), (3), case (4) reported.
pub fn moment_identity_checks(table: &ClassNumberTable) -> Vec<Check> {
    let mut out = Vec::new();
    let primes = primes_in(5, 199);
    let case1: Vec<(u64, u32)> = primes
        .par_iter()
        .flat_map_iter(|&q| {
            let f = field_for(q);
            let v = sweep(&f, &GaussSumTable::new(&f), Family::F21);
            [2u32, 4]
                .into_iter()
                .filter(|&m| {
                    MomentReport::build(&v, Family::F21, &f, Some(table), m).map(|r| r.status)
                        != Ok(Some(FormulaStatus::Exact))
                })
                .map(|m| (q, m))
                .collect::<Vec<_>>()
        })
        .collect();
    out.push(Check::new(
        case1.is_empty(),
        "moments case (1)",
        format!("primes 5..199, m in {{2,4}}, exact; mismatches {case1:?}"),
    ));
    let case3: Vec<(u64, u32)> = primes
        .par_iter()
        .filter(|&&q| q % 4 == 3)
        .flat_map_iter(|&q| {
            let f = field_for(q);
            let v = sweep(&f, &GaussSumTable::new(&f), Family::F21);
            [1u32, 3, 5].into_iter().filter(|&m| power_sum(&v, m) != BigInt::from(1)).map(|m| (q, m)).collect::<Vec<_>>()
        })
        .collect();
    out.push(Check::new(case3.is_empty(), "moments case (3)", format!("primes q ≡ 3 mod 4 up to 199, m in {{1,3,5}}; mismatches {case3:?}")));
    let mut warned = Vec::new();
    for q in prime_powers_up_to(625, 5).into_iter().filter(|q| q % 4 == 1) {
        let f = field_for(q);
        let v = sweep(&f, &GaussSumTable::new(&f), Family::F21);
        for m in [1u32, 3] {
            match MomentReport::build(&v, Family::F21, &f, Some(table), m) {
                Ok(r) if r.status == Some(FormulaStatus::Exact) || r.status == Some(FormulaStatus::WithinBand) => {}
                Ok(r) => warned.push(format!("q={q} m={m} defect={:?}", r.defect.map(|d| d.to_string()))),
                Err(e) => warned.push(format!("q={q} m={m}: {e}")),
            }
        }
    }
    let q5 = {
        let f = field_for(5);
        let v = sweep(&f, &GaussSumTable::new(&f), Family::F21);
        power_sum(&v, 1)
    };
    out.push(Check::with_status(
        if warned.is_empty() { Status::Pass } else { Status::Warn },
        "moments case (4)",
        format!(
            "q ≡ 1 mod 4 up to 625, m in {{1,3}}; q=5 m=1 sweep sum {q5}, formula 1; unknown term read as D·S(p)·(2√q)^m; off-formula {warned:?}"
        ),
    ));
    out
}

fn identities_suite() -> Vec<Check> {
    let mut out = vec![
        trace_check("trace identity 2F1", &trace_identity_exhaustive(Family::F21, 25), "all λ, 5 <= q <= 25"),
        trace_check("trace identity 2F1 random", &trace_identity_random(Family::F21, 500, 1 << 14, 1), "500 random (q,λ), q <= 2^14"),
        trace_check("trace identity 3F2", &trace_identity_exhaustive(Family::F32, 25), "all μ, 5 <= q <= 25"),
        trace_check("trace identity 3F2 random", &trace_identity_random(Family::F32, 500, 1 << 14, 2), "500 random (q,μ), q <= 2^14"),
    ];
    let table = ClassNumberTable::tabulate(4 * 625);
    out.extend(moment_identity_checks(&table));
    out
}

/// Census fields used by the Schoof comparison; `9` has `p = 3` and is reported as N/A.
pub const SCHOOF_FIELDS: [u64; 10] = [5, 7, 9, 11, 13, 17, 19, 23, 25, 49];

/// `(compared, mismatches)` for `schoof_count(q, s, 2)` against the census,
/// over even `s ≠ 0` with `s² <= 4q`.
pub fn schoof_vs_census(c: &CurveCensus, table: &ClassNumberTable, q: u64) -> (usize, Vec<(i64, u64, usize)>) {
    let b = isqrt(4 * q) as i64;
    let mut compared = 0;
    let mut bad = Vec::new();
    for s in (-b..=b).filter(|s| s % 2 == 0 && *s != 0) {
        let got = schoof_count(table, q, s, 2).expect("valid field");
        if got.case == SchoofCase::Silent {
            continue;
        }
        let census_count = c.full_two_torsion_count(s);
        compared += 1;
        if got.count as usize != census_count {
            bad.push((s, got.count, census_count));
        }
    }
    (compared, bad)
}

/// `|I(2p, p²)|` from the census and `2·S(p)`.
pub fn supersingular_census(p: u64) -> (usize, u64) {
    let f = field_for(p * p);
    let c = census(&f, DEFAULT_CENSUS_CAP).expect("within cap");
    (c.i_count(2 * p as i64), 2 * supersingular_count(p).expect("p >= 5"))
}

fn schoof_suite() -> Vec<Check> {
    let table = ClassNumberTable::tabulate(4 * 49);
    let mut out: Vec<Check> = SCHOOF_FIELDS
        .par_iter()
        .map(|&q| {
            let name = format!("schoof q={q}");
            if prime_power(q).map_or(true, |(p, _)| p < 5) {
                return Check::with_status(Status::NotApplicable, name, "characteristic 3 is outside the supported range");
            }
            let c = census(&field_for(q), DEFAULT_CENSUS_CAP).expect("within cap");
            let (n, bad) = schoof_vs_census(&c, &table, q);
            Check::new(bad.is_empty() && n > 0, name, format!("{n} traces compared; mismatches (s, formula, census) {bad:?}"))
        })
        .collect();
    for p in [5u64, 7, 11, 13] {
        let (i, want) = supersingular_census(p);
        out.push(Check::new(i as u64 == want, format!("supersingular p={p}"), format!("|I(2p,p²)| = {i}, 2·S(p) = {want}")));
    }
    out
}

/// Odd `N` in `1..=n_max` where the Eichler relation fails.
pub fn eichler_failures(table: &ClassNumberTable, n_max: u64) -> Vec<u64> {
    (1..=n_max)
        .step_by(2)
        .filter(|&n| eichler_check(table, n).map_or(true, |(l, r)| l != r))
        .collect()
}

fn eichler_suite() -> Vec<Check> {
    let table = ClassNumberTable::tabulate(2000);
    let bad = eichler_failures(&table, 2000);
    let (l5, _) = eichler_check(&table, 5).expect("odd");
    let (l9, _) = eichler_check(&table, 9).expect("odd");
    vec![Check::new(
        bad.is_empty(),
        "eichler",
        format!("odd N <= 2000; N=5 → {l5}, N=9 → {l9}; failures {bad:?}"),
    )]
}

/// The exact identity families with their ranges.
pub fn rc_identity_checks() -> Vec<Check> {
    use rc::gamma::{half, int};
    let mut out = Vec::new();
    let first = (1..=6i64)
        .flat_map(|nu| (0..=2 * nu + 1).map(move |j| (nu, j)))
        .find(|&(nu, j)| {
            let (l, r) = rc::comb_lemma_check(nu, j);
            l != r
        });
    let (l, r) = rc::comb_lemma_check(1, 0);
    out.push(Check::new(first.is_none(), "comb_lemma", format!("ν <= 6, j <= 2ν+1; (1,0): {l} = {r}; first counterexample {first:?}")));
    let first = (0..=6i64)
        .flat_map(|nu| (0..=nu).flat_map(move |mu| (0..=2 * nu + 1).map(move |j| (nu, mu, j))))
        .find(|&(nu, mu, j)| rc::comb_lemma2_checks(nu, mu, j) != (true, true));
    out.push(Check::new(first.is_none(), "comb_lemma2", format!("parts (1),(2), ν <= 6; first counterexample {first:?}")));
    let first = (0..=4i64)
        .flat_map(|nu| (2..=6i64).flat_map(move |u| (1..u).map(move |v| (nu, u, v))))
        .find(|&(nu, u, v)| rc::prop_poly_identity_check(nu, u, v) != Ok(true));
    out.push(Check::new(first.is_none(), "prop_poly", format!("ν <= 4, 1 <= v < u <= 6; first counterexample {first:?}")));
    let bs = [half(-3), half(-1), half(5), half(7)];
    let grid = rc::identities::rational_grid(20);
    let first = (2..=8i64).find(|&a| {
        bs.iter().any(|b| grid.iter().any(|(x, y)| rc::pab(a, b, x, y) != rc::pab_alternate(a, b, x, y)))
    });
    out.push(Check::new(first.is_none(), "pab alternate form", format!("a <= 8, b in {{-3/2,-1/2,5/2,7/2}}, 20 rational points; first failing a {first:?}")));
    let first = (1..=10).find(|&n| rc::cohen_vanishing(n) != int(0));
    out.push(Check::new(first.is_none(), "cohen_vanishing", format!("1 <= n <= 10; first nonzero {first:?}")));
    let first = (0..=6).find(|&nu| rc::kappa(3, 3, nu).map(|k| k.sqrt_pi_power) != Ok(1));
    out.push(Check::new(first.is_none(), "kappa", format!("κ(3/2,3/2,ν)/√π rational for ν <= 6; κ(3/2,3/2,0) = √π; first failure {first:?}")));
    out
}

/// Growth ratios of the weight-3 cusp form and its Deligne-bound violations.
pub fn cusp_growth(table: &ClassNumberTable) -> (Vec<f64>, Vec<u64>, String) {
    let c = rc::cusp_coeffs_2f1(table, 4096).expect("table covers 4096");
    let ratios = rc::growth_ratios(&c, 0, &[512, 1024, 2048, 4096]);
    let violations = rc::deligne_bound_violations(&c, 0);
    (ratios, violations, c[0].to_string())
}

fn rc_suite() -> Vec<Check> {
    let mut out = rc_identity_checks();
    let table = ClassNumberTable::tabulate(4096);
    let (ratios, violations, c1) = cusp_growth(&table);
    out.push(Check::new(
        violations.is_empty() && c1 == "1/24",
        "cusp coefficients",
        format!("c(1) = {c1}; |c(n)| <= c(1)·d(n)·n for n <= 4096, violations {violations:?}"),
    ));
    let decreasing = ratios.windows(2).all(|w| w[1] < w[0]);
    out.push(Check::with_status(
        if decreasing { Status::Pass } else { Status::Warn },
        "cusp growth ratios",
        format!("max |c(n)|/n^1.25 on [N/2,N], N = 512..4096: {ratios:.4?}"),
    ));
    let b = |r| rc::mertens_br_coefficient(r, 0, rc::zagier_fminus, rc::theta_cube_coefficient);
    let pins = [(3, "0"), (8, "-1"), (5, "-1/4")];
    let ok = pins.iter().all(|(r, want)| b(*r).map(|x| x.to_string()) == Ok(want.to_string()));
    out.push(Check::new(ok, "projection coefficients", "b(3)=0, b(8)=-1, b(5)=-1/4"));
    out
}

/// Clausen moments on `L(s,q)` against class counts, with the fiber rule and size bound.
pub fn clausen_checks(q_max: u64) -> Vec<Check> {
    prime_powers_up_to(q_max, 5)
        .par_iter()
        .map(|&q| {
            let f = field_for(q);
            let c = census(&f, DEFAULT_CENSUS_CAP).expect("within cap");
            let table = ClassNumberTable::tabulate(4 * q);
            let b = isqrt(4 * q) as i64;
            let (mut checked, mut skipped, mut bad) = (0, 0, Vec::new());
            for s in (2..=b).step_by(2) {
                let fibers = c.clausen_fibers(&f, s);
                if !fibers.exceptional && !fibers.mismatches.is_empty() {
                    bad.push(format!("fiber rule s={s}"));
                }
                for n in 1..=3 {
                    match clausen_even_moment_check(&c, &f, &table, s, n).expect("table covers 4q") {
                        ClausenMomentCheck::Skipped(_) => skipped += 1,
                        r => {
                            checked += 1;
                            if r.passed() != Some(true) {
                                bad.push(format!("s={s} n={n}"));
                            }
                        }
                    }
                }
            }
            Check::new(
                bad.is_empty(),
                format!("clausen q={q}"),
                format!("{checked} (s,n) checked, {skipped} gated out; failures {bad:?}"),
            )
        })
        .collect()
}

fn clausen_suite() -> Vec<Check> {
    let mut out = clausen_checks(200);
    let twists = [7u64, 13, 25].iter().all(|&q| {
        let f = field_for(q);
        census(&f, DEFAULT_CENSUS_CAP).expect("within cap").twists_negate_traces(&f)
    });
    out.push(Check::new(twists, "twists negate traces", "q in {7, 13, 25}"));
    out
}

/// Whether `q` is a prime ≡ 1 mod 4 (odd-moment smallness family).
pub fn is_prime_one_mod_four(q: u64) -> bool {
    is_prime(q) && q % 4 == 1
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_suites_pass() {
        for suite in [Suite::Fields, Suite::Eichler, Suite::Rc] {
            let checks = run_suite(suite);
            assert!(!any_failed(&checks), "{checks:#?}");
        }
    }

    #[test]
    fn schoof_small_fields() {
        let table = ClassNumberTable::tabulate(200);
        for q in [5u64, 7, 11, 13, 25] {
            let c = census(&field_for(q), DEFAULT_CENSUS_CAP).unwrap();
            let (n, bad) = schoof_vs_census(&c, &table, q);
            assert!(n > 0 && bad.is_empty(), "q={q} {bad:?}");
        }
    }

    #[test]
    fn display_format() {
        let c = Check::new(true, "x", "y");
        assert_eq!(c.to_string(), "PASS x: y");
    }
}
