//! Limiting densities, their CDFs, and the histogram/KS comparison.

use crate::arith::{binomial, catalan, factorial};
use crate::hypergeom::{Family, ScaledHyperValue};
use crate::rc::gamma::HalfIntegerGamma;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use quadrature::double_exponential::integrate;
use std::f64::consts::PI;
use std::io::{self, Write};

/// Points on the CDF grid (plus the singular abscissae of the O(3) density).
pub const CDF_GRID_POINTS: usize = 10_000;
const QUAD_TOL: f64 = 1e-12;

/// `√(4-t²)/(2π)` on `[-2, 2]`.
pub fn semicircle_density(t: f64) -> f64 {
    if t.abs() >= 2.0 {
        0.0
    } else {
        (4.0 - t * t).sqrt() / (2.0 * PI)
    }
}

/// `½ + t√(4-t²)/(4π) + arcsin(t/2)/π`.
pub fn semicircle_cdf(t: f64) -> f64 {
    if t <= -2.0 {
        0.0
    } else if t >= 2.0 {
        1.0
    } else {
        0.5 + t * (4.0 - t * t).sqrt() / (4.0 * PI) + (t / 2.0).asin() / PI
    }
}

/// One branch `√((3-t)/(1+t))` on `(-1, 3)`.
fn batman_branch(t: f64) -> f64 {
    if t <= -1.0 || t >= 3.0 {
        0.0
    } else {
        ((3.0 - t) / (1.0 + t)).sqrt()
    }
}

/// Unnormalized O(3) trace density: the sum of the two branches, total mass `4π`.
/// Infinite at `t = ±1`.
pub fn batman_weight(t: f64) -> f64 {
    batman_branch(t) + batman_branch(-t)
}

/// `batman_weight / 4π`, supported on `[-3, 3]`.
pub fn batman_density(t: f64) -> f64 {
    batman_weight(t) / (4.0 * PI)
}

/// Antiderivative of one branch: `4(arcsin√u + √(u(1-u)))`, `u = (1+x)/4`.
fn batman_branch_primitive(x: f64) -> f64 {
    let u = ((1.0 + x) / 4.0).clamp(0.0, 1.0);
    4.0 * (u.sqrt().asin() + (u * (1.0 - u)).sqrt())
}

/// Closed-form CDF of the O(3) law, used to check the quadrature grid.
pub fn batman_cdf_closed(t: f64) -> f64 {
    let g = batman_branch_primitive;
    // first branch on (-1, t], mirrored branch on [-t, 1)
    let first = g(t.min(3.0)) - g(-1.0);
    let second = g(3.0) - g((-t).max(-1.0));
    ((first + second) / (4.0 * PI)).clamp(0.0, 1.0)
}

/// A CDF tabulated on a fixed grid, linearly interpolated.
#[derive(Clone, Debug)]
pub struct CdfGrid {
    nodes: Vec<f64>,
    values: Vec<f64>,
}

impl CdfGrid {
    /// Integrates `density` cell by cell; `breaks` are forced into the grid
    /// so no cell has an interior singularity.
    pub fn tabulate(density: impl Fn(f64) -> f64, lo: f64, hi: f64, breaks: &[f64]) -> Self {
        let mut nodes: Vec<f64> = (0..=CDF_GRID_POINTS)
            .map(|i| lo + (hi - lo) * i as f64 / CDF_GRID_POINTS as f64)
            .chain(breaks.iter().copied().filter(|b| *b > lo && *b < hi))
            .collect();
        nodes.sort_by(f64::total_cmp);
        nodes.dedup();
        let mut values = Vec::with_capacity(nodes.len());
        let mut acc = 0.0;
        values.push(0.0);
        for w in nodes.windows(2) {
            acc += integrate(&density, w[0], w[1], QUAD_TOL).integral;
            values.push(acc);
        }
        CdfGrid { nodes, values }
    }

    pub fn total(&self) -> f64 {
        *self.values.last().unwrap_or(&0.0)
    }

    pub fn eval(&self, t: f64) -> f64 {
        let (lo, hi) = (self.nodes[0], *self.nodes.last().unwrap());
        if t <= lo {
            return 0.0;
        }
        if t >= hi {
            return self.total();
        }
        let i = self.nodes.partition_point(|&x| x <= t) - 1;
        let (x0, x1) = (self.nodes[i], self.nodes[i + 1]);
        let w = (t - x0) / (x1 - x0);
        self.values[i] + w * (self.values[i + 1] - self.values[i])
    }
}

/// Reference law for a family: support half-width, density, CDF grid.
pub struct Reference {
    pub family: Family,
    pub half_width: f64,
    pub grid: CdfGrid,
}

impl Reference {
    pub fn new(family: Family) -> Self {
        match family {
            Family::F21 => Reference {
                family,
                half_width: 2.0,
                grid: CdfGrid::tabulate(semicircle_density, -2.0, 2.0, &[]),
            },
            Family::F32 => Reference {
                family,
                half_width: 3.0,
                grid: CdfGrid::tabulate(batman_density, -3.0, 3.0, &[-1.0, 1.0]),
            },
        }
    }

    pub fn density(&self, t: f64) -> f64 {
        match self.family {
            Family::F21 => semicircle_density(t),
            Family::F32 => batman_density(t),
        }
    }

    pub fn cdf(&self, t: f64) -> f64 {
        self.grid.eval(t)
    }
}

/// Values rescaled into the reference support: `scaled/√q` or `scaled/q`.
pub fn renormalized(values: &[ScaledHyperValue], family: Family, q: u64) -> Vec<f64> {
    let d = match family {
        Family::F21 => (q as f64).sqrt(),
        Family::F32 => q as f64,
    };
    values.iter().map(|v| v.scaled as f64 / d).collect()
}

/// Kolmogorov–Smirnov distance of the sample to `cdf`, treating ties as one jump.
pub fn ks_statistic(sample: &[f64], cdf: impl Fn(f64) -> f64) -> f64 {
    let mut xs = sample.to_vec();
    xs.sort_by(f64::total_cmp);
    let n = xs.len() as f64;
    let mut d: f64 = 0.0;
    let mut i = 0;
    while i < xs.len() {
        let mut j = i;
        while j < xs.len() && xs[j] == xs[i] {
            j += 1;
        }
        let f = cdf(xs[i]);
        d = d.max((f - i as f64 / n).abs()).max((j as f64 / n - f).abs());
        i = j;
    }
    d
}

#[derive(Clone, Debug)]
pub struct EmpiricalHistogram {
    pub family: Family,
    pub edges: Vec<f64>,
    pub counts: Vec<u64>,
    pub total: u64,
    pub densities: Vec<f64>,
    pub reference_densities: Vec<f64>,
    pub ks_statistic: f64,
}

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum DistError {
    #[error("empty sweep")]
    Empty,
    #[error("need at least 2 bins, got {0}")]
    TooFewBins(usize),
}

pub fn ks_and_histogram(
    values: &[ScaledHyperValue],
    family: Family,
    q: u64,
    bins: usize,
    reference: &Reference,
) -> Result<EmpiricalHistogram, DistError> {
    if values.is_empty() {
        return Err(DistError::Empty);
    }
    if bins < 2 {
        return Err(DistError::TooFewBins(bins));
    }
    let xs = renormalized(values, family, q);
    let w = reference.half_width;
    let width = 2.0 * w / bins as f64;
    let edges: Vec<f64> = (0..=bins).map(|i| -w + width * i as f64).collect();
    let mut counts = vec![0u64; bins];
    for &x in &xs {
        let k = (((x + w) / width).floor() as i64).clamp(0, bins as i64 - 1);
        counts[k as usize] += 1;
    }
    let total = xs.len() as u64;
    let densities = counts.iter().map(|&c| c as f64 / (total as f64 * width)).collect();
    let reference_densities = edges.windows(2).map(|e| reference.density(0.5 * (e[0] + e[1]))).collect();
    Ok(EmpiricalHistogram {
        family,
        edges,
        counts,
        total,
        densities,
        reference_densities,
        ks_statistic: ks_statistic(&xs, |t| reference.cdf(t)),
    })
}

impl EmpiricalHistogram {
    /// `bin_left,bin_right,count,density,reference_density`, then a `# ks=` comment row.
    pub fn write_csv<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "bin_left,bin_right,count,density,reference_density")?;
        for (i, c) in self.counts.iter().enumerate() {
            writeln!(
                out,
                "{},{},{},{},{}",
                super::float17(self.edges[i]),
                super::float17(self.edges[i + 1]),
                c,
                super::float17(self.densities[i]),
                super::float17(self.reference_densities[i])
            )?;
        }
        writeln!(out, "# ks={}", super::float17(self.ks_statistic))
    }

    /// `Σ density·width`, 1 up to rounding when every value lands in range.
    pub fn mass(&self) -> f64 {
        let width = self.edges[1] - self.edges[0];
        self.densities.iter().sum::<f64>() * width
    }
}

/// `Σ_k (-1)^k C(m,k) Cat_k` for even `m`, zero for odd `m` (symmetry).
pub fn batman_moment_exact(m: u64) -> BigInt {
    if m % 2 == 1 {
        return BigInt::zero();
    }
    (0..=m).fold(BigInt::zero(), |acc, k| {
        let t = binomial(m, k) * catalan(k);
        if k % 2 == 0 {
            acc + t
        } else {
            acc - t
        }
    })
}

/// The terminating series `₂F₁(½, -m; 2; 4) = Σ_k (½)_k (-m)_k / ((2)_k k!) 4^k`.
pub fn hypergeometric_series_half(m: u64) -> BigRational {
    let mut term = BigRational::one();
    let mut total = BigRational::one();
    let m = m as i64;
    for k in 0..m {
        // ratio of consecutive terms
        let num = BigRational::new(BigInt::from(2 * k + 1), BigInt::from(2)) * BigInt::from(k - m) * BigInt::from(4);
        let den = BigInt::from((k + 2) * (k + 1));
        term = term * num / den;
        total += &term;
    }
    total
}

/// `16·Γ(3/2)²/(Γ(1)Γ(2))` from Gauss's summation; should equal `4π`.
pub fn gauss_factor() -> HalfIntegerGamma {
    let g32 = HalfIntegerGamma::gamma(3).expect("finite");
    let num = (&g32 * &g32).scale(&BigRational::from_integer(BigInt::from(16)));
    let den = &HalfIntegerGamma::gamma(2).expect("finite") * &HalfIntegerGamma::gamma(4).expect("finite");
    &num / &den
}

#[derive(Clone, Debug)]
pub struct BatmanMoment {
    pub m: u64,
    /// The moment divided by `4π`.
    pub exact_over_4pi: BigInt,
    /// The series form agrees with the Catalan sum.
    pub series_agrees: bool,
    pub quadrature: f64,
    pub relative_error: f64,
}

/// `∫_{-3}^{3} t^m f(t) dt` with cells split at the singular points.
pub fn batman_moment_quadrature(m: u64) -> f64 {
    let h = |t: f64| t.powi(m as i32) * batman_weight(t);
    let pieces = [(-3.0, -1.0), (-1.0, 0.0), (0.0, 1.0), (1.0, 3.0)];
    let direct: f64 = pieces.iter().map(|&(a, b)| integrate(h, a, b, QUAD_TOL).integral).sum();
    if m % 2 == 1 && direct.abs() >= 1e-8 {
        // fall back to pairing t with -t so the cancellation is exact
        let sym = |t: f64| h(t) + h(-t);
        return integrate(sym, 0.0, 1.0, QUAD_TOL).integral + integrate(sym, 1.0, 3.0, QUAD_TOL).integral;
    }
    direct
}

pub fn batman_moment(m: u64) -> BatmanMoment {
    let exact = batman_moment_exact(m);
    let series_agrees = m % 2 == 1 || hypergeometric_series_half(m) == BigRational::from_integer(exact.clone());
    let quadrature = batman_moment_quadrature(m);
    let exact_f = crate::arith::rational_to_f64(&BigRational::from_integer(exact.clone())) * 4.0 * PI;
    let relative_error = if exact.is_zero() {
        quadrature.abs()
    } else {
        ((quadrature - exact_f) / exact_f).abs()
    };
    BatmanMoment { m, exact_over_4pi: exact, series_agrees, quadrature, relative_error }
}

/// `(2n)!/(n!(n+1)!)` as a float, for reference columns.
pub fn catalan_f64(n: u64) -> f64 {
    crate::arith::rational_to_f64(&BigRational::new(factorial(2 * n), factorial(n) * factorial(n + 1)))
}
