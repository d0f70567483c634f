//! Dense polynomials over a prime field `F_p`, coefficients low to high.

pub(crate) type Poly = Vec<u32>;

pub(crate) fn trim(mut a: Poly) -> Poly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

pub(crate) fn degree(a: &[u32]) -> Option<usize> {
    a.iter().rposition(|&c| c != 0)
}

fn inv_mod(a: u32, p: u32) -> u32 {
    pow_mod(a, p - 2, p)
}

pub(crate) fn pow_mod(base: u32, mut exp: u32, p: u32) -> u32 {
    let p64 = p as u64;
    let mut acc: u64 = 1;
    let mut b = base as u64 % p64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % p64;
        }
        b = b * b % p64;
        exp >>= 1;
    }
    acc as u32
}

pub(crate) fn sub(a: &[u32], b: &[u32], p: u32) -> Poly {
    let len = a.len().max(b.len());
    let out = (0..len)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect();
    trim(out)
}

pub(crate) fn mul(a: &[u32], b: &[u32], p: u32) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x as u64 * y as u64) % p as u64;
        }
    }
    trim(out.into_iter().map(|c| c as u32).collect())
}

/// Remainder of `a` modulo a nonzero `m`.
pub(crate) fn rem(a: &[u32], m: &[u32], p: u32) -> Poly {
    let dm = degree(m).expect("nonzero modulus");
    let lead_inv = inv_mod(m[dm], p) as u64;
    let mut r = trim(a.to_vec());
    while let Some(dr) = degree(&r) {
        if dr < dm {
            break;
        }
        let c = r[dr] as u64 * lead_inv % p as u64;
        let shift = dr - dm;
        for (i, &mi) in m.iter().enumerate().take(dm + 1) {
            let t = c * mi as u64 % p as u64;
            r[shift + i] = ((r[shift + i] as u64 + p as u64 - t) % p as u64) as u32;
        }
        r = trim(r);
    }
    r
}

pub(crate) fn mulmod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Poly {
    rem(&mul(a, b, p), m, p)
}

pub(crate) fn gcd(a: &[u32], b: &[u32], p: u32) -> Poly {
    let mut x = trim(a.to_vec());
    let mut y = trim(b.to_vec());
    while !y.is_empty() {
        let r = rem(&x, &y, p);
        x = y;
        y = r;
    }
    if let Some(d) = degree(&x) {
        let inv = inv_mod(x[d], p) as u64;
        for c in x.iter_mut() {
            *c = (*c as u64 * inv % p as u64) as u32;
        }
    }
    x
}

/// `x^(p^times) mod m`, computed by repeated p-th powering.
fn frobenius_powers(m: &[u32], p: u32, count: usize) -> Vec<Poly> {
    let mut out = Vec::with_capacity(count);
    let mut cur = rem(&[0, 1], m, p);
    for _ in 0..count {
        cur = powmod(&cur, p as u64, m, p);
        out.push(cur.clone());
    }
    out
}

pub(crate) fn powmod(a: &[u32], mut exp: u64, m: &[u32], p: u32) -> Poly {
    let mut acc = rem(&[1], m, p);
    let mut base = rem(a, m, p);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod(&acc, &base, m, p);
        }
        base = mulmod(&base, &base, m, p);
        exp >>= 1;
    }
    acc
}

/// Ben-Or irreducibility test for a polynomial of degree ≥ 1.
pub(crate) fn is_irreducible(f: &[u32], p: u32) -> bool {
    let n = match degree(f) {
        Some(0) | None => return false,
        Some(n) => n,
    };
    let powers = frobenius_powers(f, p, n / 2);
    for x_pi in &powers {
        let g = gcd(f, &sub(x_pi, &[0, 1], p), p);
        if degree(&g) != Some(0) {
            return false;
        }
    }
    true
}

/// Degrees of the irreducible factors of a squarefree-agnostic `f` with
/// `f(0) ≠ 0`, via distinct-degree factorization (with repetition ignored).
pub(crate) fn factor_degrees(f: &[u32], p: u32) -> Vec<usize> {
    let mut rest = trim(f.to_vec());
    let mut out = Vec::new();
    let mut x_pi = vec![0, 1];
    let mut d = 0;
    while degree(&rest).unwrap_or(0) > 0 {
        d += 1;
        if 2 * d > degree(&rest).unwrap() {
            out.push(degree(&rest).unwrap());
            break;
        }
        x_pi = powmod(&x_pi, p as u64, &rest, p);
        let g = gcd(&rest, &sub(&x_pi, &[0, 1], p), p);
        if degree(&g).unwrap_or(0) > 0 {
            out.push(d);
            // divide out every factor of degree d, including repeats
            loop {
                let g2 = gcd(&rest, &g, p);
                if degree(&g2).unwrap_or(0) == 0 {
                    break;
                }
                rest = div_exact(&rest, &g2, p);
            }
            x_pi = rem(&x_pi, &rest, p);
        }
    }
    out
}

fn div_exact(a: &[u32], b: &[u32], p: u32) -> Poly {
    let db = degree(b).expect("nonzero divisor");
    let lead_inv = inv_mod(b[db], p) as u64;
    let mut r = trim(a.to_vec());
    let da = degree(&r).unwrap_or(0);
    if da < db {
        return vec![];
    }
    let mut q = vec![0u32; da - db + 1];
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let c = r[dr] as u64 * lead_inv % p as u64;
        q[dr - db] = c as u32;
        for (i, &bi) in b.iter().enumerate().take(db + 1) {
            let t = c * bi as u64 % p as u64;
            r[dr - db + i] = ((r[dr - db + i] as u64 + p as u64 - t) % p as u64) as u32;
        }
        r = trim(r);
    }
    debug_assert!(r.is_empty());
    trim(q)
}
