//! Gauss and Jacobi sums over F_{p^r}, checked against |G(χ)|² = q.
use ffhyper::field::{jacobi_sum_direct, jacobi_sum_via_gauss, CharacterIndex, FieldTable, GaussSumTable};

fn main() {
    let f = FieldTable::new(5, 2).expect("F_25");
    let g = GaussSumTable::new(&f);
    println!("q = {}, generator {}", f.q(), f.repr(f.generator()));
    for j in 0..f.order() {
        let chi = CharacterIndex::new(&f, j);
        let gs = g.get(chi);
        println!("G(χ^{j:>2}) = {:>9.5} {:+9.5}i   |G|² = {:.5}", gs.re, gs.im, gs.norm_sqr());
    }
    let a = CharacterIndex::new(&f, 2);
    let b = CharacterIndex::new(&f, 5);
    let direct = jacobi_sum_direct(&f, a, b);
    let via = jacobi_sum_via_gauss(&f, &g, a, b);
    println!("J(χ², χ⁵): direct {direct:.6}, via Gauss sums {via:.6}");
}
