//! Point counts predicted by the 3F2 value for the K3 family.
use ffhyper::curves::k3_prediction;
use ffhyper::field::{FieldTable, GaussSumTable};

fn main() {
    let f = FieldTable::new(11, 1).unwrap();
    let g = GaussSumTable::new(&f);
    let q = f.q() as i64;
    for lambda in f.canonical_order() {
        match k3_prediction(&f, &g, lambda) {
            Ok(n) => println!("λ = {:>2}: #X = {n} (1 + q² + 19q = {})", f.repr(lambda), 1 + q * q + 19 * q),
            Err(e) => println!("λ = {:>2}: {e}", f.repr(lambda)),
        }
    }
}
