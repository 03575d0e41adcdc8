//! Sweep both families over a field and compare with brute-force traces.
use ffhyper::curves::{clausen_trace, legendre_trace};
use ffhyper::field::{FieldTable, GaussSumTable};
use ffhyper::hypergeom::{sweep, Family};

fn main() {
    let f = FieldTable::new(13, 1).unwrap();
    let g = GaussSumTable::new(&f);
    println!("{:>4} {:>8} {:>8} {:>8} {:>8}", "λ", "2F1", "a_Leg", "3F2", "a_Cl²-q");
    let f21 = sweep(&f, &g, Family::F21);
    let f32 = sweep(&f, &g, Family::F32);
    for (a, b) in f21.iter().zip(&f32) {
        let leg = legendre_trace(&f, a.lambda).map(|t| t.trace.to_string()).unwrap_or("-".into());
        let cl = clausen_trace(&f, b.lambda)
            .map(|t| (t.trace * t.trace - f.q() as i64).to_string())
            .unwrap_or("-".into());
        println!("{:>4} {:>8} {:>8} {:>8} {:>8}", f.repr(a.lambda), a.scaled, leg, b.scaled, cl);
    }
}
