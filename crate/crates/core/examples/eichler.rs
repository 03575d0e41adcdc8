//! Σ_{s²<4N} H(4N−s²) against the divisor side, for small odd N.
use ffhyper::classnumbers::{eichler_check, ClassNumberTable};

fn main() {
    let table = ClassNumberTable::tabulate(4 * 40);
    for n in (1..40).step_by(2) {
        let (lhs, rhs) = eichler_check(&table, n).unwrap();
        println!("N = {n:>2}: {lhs:>6} {} {rhs}", if lhs == rhs { "=" } else { "≠" });
    }
}
