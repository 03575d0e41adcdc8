use ffhyper::moments::batman_moment;

fn main() {
    for m in (2..=10).step_by(2) {
        let b = batman_moment(m);
        println!(
            "m = {m:>2}: exact 4π·{}  quadrature {:.10}  rel err {:.1e}  series agrees {}",
            b.exact_over_4pi, b.quadrature, b.relative_error, b.series_agrees
        );
    }
}
