//! Combinatorial identities behind the bracket computation, plus a few cusp-form coefficients.
use ffhyper::classnumbers::ClassNumberTable;
use ffhyper::rc::cusp_coeffs_2f1;
use ffhyper::verify::rc_identity_checks;

fn main() {
    for c in rc_identity_checks() {
        println!("{c}");
    }
    let table = ClassNumberTable::tabulate(4 * 32);
    let coeffs = cusp_coeffs_2f1(&table, 32).unwrap();
    for (n, c) in (1..).zip(&coeffs) {
        println!("c({n}) = {c}");
    }
}
