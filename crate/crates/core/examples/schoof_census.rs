//! Isomorphism-class census against Schoof's class-number counts.
use ffhyper::classnumbers::{schoof_count, supersingular_count, ClassNumberTable};
use ffhyper::curves::{census, DEFAULT_CENSUS_CAP};
use ffhyper::field::FieldTable;

fn main() {
    let table = ClassNumberTable::tabulate(4 * 49);
    for (p, r) in [(11, 1), (5, 2)] {
        let f = FieldTable::new(p, r).unwrap();
        let q = f.q() as u64;
        let c = census(&f, DEFAULT_CENSUS_CAP).unwrap();
        println!("q = {q}");
        let bound = (2.0 * (q as f64).sqrt()) as i64;
        // curves with full 2-torsion have even trace
        for s in (-bound..=bound).filter(|s| s % 2 == 0) {
            let n = c.full_two_torsion_count(s);
            let pred = schoof_count(&table, q, s, 2).unwrap();
            println!("  s = {s:>3}: census {n:>2}  predicted {:>2} ({:?})", pred.count, pred.case);
        }
    }
    for p in [5, 7, 11, 13, 37] {
        println!("supersingular j over F_{p}²: {}", supersingular_count(p).unwrap());
    }
}
