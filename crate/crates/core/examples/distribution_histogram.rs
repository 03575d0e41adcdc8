//! Normalized value histograms against the semicircle and the second limit law.
use ffhyper::field::{FieldTable, GaussSumTable};
use ffhyper::hypergeom::{sweep, Family};
use ffhyper::moments::{ks_and_histogram, Reference};

fn main() {
    let p = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(4001);
    let f = FieldTable::new(p, 1).unwrap();
    let g = GaussSumTable::new(&f);
    for family in [Family::F21, Family::F32] {
        let v = sweep(&f, &g, family);
        let h = ks_and_histogram(&v, family, p, 24, &Reference::new(family)).unwrap();
        println!("{} at p = {p}: KS = {:.4}", family.name(), h.ks_statistic);
        h.write_csv(std::io::stdout()).unwrap();
    }
}
