//! Exact power sums of the scaled 2F1 values next to their class-number formulas.
use ffhyper::classnumbers::ClassNumberTable;
use ffhyper::field::{FieldTable, GaussSumTable};
use ffhyper::hypergeom::{sweep, Family};
use ffhyper::moments::MomentReport;

fn main() {
    let table = ClassNumberTable::tabulate(4 * 125);
    for (p, r) in [(7, 1), (13, 1), (5, 3), (23, 1), (5, 2)] {
        let f = FieldTable::new(p, r).unwrap();
        let v = sweep(&f, &GaussSumTable::new(&f), Family::F21);
        for m in 1..=4 {
            let rep = MomentReport::build(&v, Family::F21, &f, Some(&table), m).unwrap();
            println!("{}", rep.to_json());
        }
    }
}
