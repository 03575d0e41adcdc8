//! Dense polynomials over a prime field, used only while constructing
//! extension-field tables (modulus search, generator search, exp table).

/// Coefficient vector, index `i` holds the coefficient of `x^i`.
/// Always normalized: no trailing zeros (the zero polynomial is empty).
pub(crate) type Poly = Vec<u32>;

pub(crate) fn normalize(f: &mut Poly) {
    while f.last() == Some(&0) {
        f.pop();
    }
}

pub(crate) fn degree(f: &[u32]) -> Option<usize> {
    if f.is_empty() {
        None
    } else {
        Some(f.len() - 1)
    }
}

pub(crate) fn inv_mod(a: u32, p: u32) -> u32 {
    pow_mod(a as u64, (p - 2) as u64, p as u64) as u32
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc
}

pub(crate) fn sub(f: &[u32], g: &[u32], p: u32) -> Poly {
    let n = f.len().max(g.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let a = f.get(i).copied().unwrap_or(0);
        let b = g.get(i).copied().unwrap_or(0);
        out.push((a + p - b) % p);
    }
    normalize(&mut out);
    out
}

pub(crate) fn mul(f: &[u32], g: &[u32], p: u32) -> Poly {
    if f.is_empty() || g.is_empty() {
        return Vec::new();
    }
    let p64 = p as u64;
    let mut out = vec![0u64; f.len() + g.len() - 1];
    for (i, &a) in f.iter().enumerate() {
        if a == 0 {
            continue;
        }
        for (j, &b) in g.iter().enumerate() {
            out[i + j] = (out[i + j] + a as u64 * b as u64) % p64;
        }
    }
    let mut out: Poly = out.into_iter().map(|c| c as u32).collect();
    normalize(&mut out);
    out
}

/// Remainder of `f` modulo `m` (`m` nonzero).
pub(crate) fn rem(f: &[u32], m: &[u32], p: u32) -> Poly {
    let dm = degree(m).expect("division by zero polynomial");
    let lead_inv = inv_mod(m[dm], p) as u64;
    let p64 = p as u64;
    let mut r: Vec<u64> = f.iter().map(|&c| c as u64).collect();
    while r.len() > dm {
        let top = r.len() - 1;
        let c = r[top] * lead_inv % p64;
        if c != 0 {
            let shift = top - dm;
            for (j, &mc) in m.iter().enumerate() {
                r[shift + j] = (r[shift + j] + p64 - c * mc as u64 % p64) % p64;
            }
        }
        r.pop();
    }
    let mut out: Poly = r.into_iter().map(|c| c as u32).collect();
    normalize(&mut out);
    out
}

pub(crate) fn mul_mod(f: &[u32], g: &[u32], m: &[u32], p: u32) -> Poly {
    rem(&mul(f, g, p), m, p)
}

pub(crate) fn pow_poly_mod(base: &[u32], mut exp: u64, m: &[u32], p: u32) -> Poly {
    let mut acc: Poly = vec![1];
    let mut b = rem(base, m, p);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(&acc, &b, m, p);
        }
        b = mul_mod(&b, &b, m, p);
        exp >>= 1;
    }
    acc
}

pub(crate) fn gcd(f: &[u32], g: &[u32], p: u32) -> Poly {
    let mut a = f.to_vec();
    let mut b = g.to_vec();
    normalize(&mut a);
    normalize(&mut b);
    while !b.is_empty() {
        let r = rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

/// Ben-Or test: a degree-`r` polynomial is irreducible iff it shares no
/// factor with `x^{p^d} - x` for every `1 <= d <= r/2`.
pub(crate) fn is_irreducible(f: &[u32], p: u32) -> bool {
    let r = match degree(f) {
        Some(d) if d >= 1 => d,
        _ => return false,
    };
    if r == 1 {
        return true;
    }
    if f[0] == 0 {
        return false;
    }
    let x: Poly = vec![0, 1];
    let mut frob = x.clone();
    for _ in 1..=r / 2 {
        frob = pow_poly_mod(&frob, p as u64, f, p);
        let g = gcd(f, &sub(&frob, &x, p), p);
        if degree(&g) != Some(0) {
            return false;
        }
    }
    true
}
