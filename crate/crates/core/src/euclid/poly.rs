//! Dense polynomials over `F_p`, little-endian with no trailing zeros.

pub type Poly = Vec<u64>;

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn inv_mod(a: u64, p: u64) -> u64 {
    // p is prime, so a^(p-2) inverts a.
    pow_mod(a, p - 2, p)
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    r
}

pub fn trim(mut a: Poly) -> Poly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

/// Degree, with `-1` for the zero polynomial.
pub fn degree(a: &[u64]) -> i64 {
    a.len() as i64 - 1
}

pub fn constant(c: i64, p: u64) -> Poly {
    trim(vec![c.rem_euclid(p as i64) as u64])
}

pub fn x() -> Poly {
    vec![0, 1]
}

pub fn add(a: &[u64], b: &[u64], p: u64) -> Poly {
    let n = a.len().max(b.len());
    let out = (0..n).map(|i| (a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0)) % p).collect();
    trim(out)
}

pub fn neg(a: &[u64], p: u64) -> Poly {
    a.iter().map(|&c| (p - c) % p).collect()
}

pub fn sub(a: &[u64], b: &[u64], p: u64) -> Poly {
    add(a, &neg(b, p), p)
}

pub fn scale(a: &[u64], c: u64, p: u64) -> Poly {
    trim(a.iter().map(|&x| mulmod(x, c, p)).collect())
}

pub fn mul(a: &[u64], b: &[u64], p: u64) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + mulmod(x, y, p)) % p;
        }
    }
    trim(out)
}

/// Quotient and remainder; `b` must be nonzero.
pub fn divrem(a: &[u64], b: &[u64], p: u64) -> (Poly, Poly) {
    let db = b.len() - 1;
    let lead_inv = inv_mod(b[db], p);
    let mut r = a.to_vec();
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut q = vec![0u64; r.len() - db];
    for k in (db..r.len()).rev() {
        let c = mulmod(r[k], lead_inv, p);
        if c == 0 {
            continue;
        }
        q[k - db] = c;
        for (j, &y) in b.iter().enumerate() {
            let idx = k - db + j;
            r[idx] = (r[idx] + p - mulmod(c, y, p)) % p;
        }
    }
    r.truncate(db);
    (trim(q), trim(r))
}

pub fn rem(a: &[u64], b: &[u64], p: u64) -> Poly {
    divrem(a, b, p).1
}

/// Scales a nonzero polynomial to be monic; returns `(leading coefficient, monic)`.
pub fn monic(a: &[u64], p: u64) -> (u64, Poly) {
    let lead = *a.last().expect("nonzero polynomial");
    (lead, scale(a, inv_mod(lead, p), p))
}

/// Monic gcd (zero if both are zero).
pub fn gcd(a: &[u64], b: &[u64], p: u64) -> Poly {
    let (mut a, mut b) = (a.to_vec(), b.to_vec());
    while !b.is_empty() {
        let r = rem(&a, &b, p);
        a = b;
        b = r;
    }
    if a.is_empty() {
        a
    } else {
        monic(&a, p).1
    }
}

pub fn derivative(a: &[u64], p: u64) -> Poly {
    trim(a.iter().enumerate().skip(1).map(|(i, &c)| mulmod(c, i as u64 % p, p)).collect())
}

fn pow_mod_poly(base: &[u64], mut e: u64, m: &[u64], p: u64) -> Poly {
    let mut result = rem(&[1], m, p);
    let mut b = rem(base, m, p);
    while e > 0 {
        if e & 1 == 1 {
            result = rem(&mul(&result, &b, p), m, p);
        }
        b = rem(&mul(&b, &b, p), m, p);
        e >>= 1;
    }
    result
}

/// `g` with `g(x)^p = a(x)`, assuming `a` has nonzero coefficients only at
/// multiples of `p`. Over `F_p` the Frobenius fixes every coefficient.
fn pth_root(a: &[u64], p: u64) -> Poly {
    a.iter().step_by(p as usize).copied().collect()
}

/// Square-free factorization of a monic polynomial: `(factor, multiplicity)`.
fn squarefree(f: &[u64], p: u64) -> Vec<(Poly, u64)> {
    let mut out = Vec::new();
    let d = derivative(f, p);
    let mut c = gcd(f, &d, p);
    let mut w = divrem(f, &c, p).0;
    let mut i = 1;
    while degree(&w) > 0 {
        let y = gcd(&w, &c, p);
        let z = divrem(&w, &y, p).0;
        if degree(&z) > 0 {
            out.push((z, i));
        }
        i += 1;
        w = y;
        c = divrem(&c, &w, p).0;
    }
    if degree(&c) > 0 {
        for (g, m) in squarefree(&pth_root(&c, p), p) {
            out.push((g, m * p));
        }
    }
    out
}

/// Number of irreducible factors of a square-free monic polynomial, by
/// distinct-degree factorization.
fn count_squarefree(f: &[u64], p: u64) -> u64 {
    let mut g = f.to_vec();
    let mut h = x();
    let mut count = 0;
    let mut i = 1;
    while degree(&g) >= 2 * i {
        h = pow_mod_poly(&h, p, &g, p);
        let d = gcd(&sub(&h, &x(), p), &g, p);
        if degree(&d) > 0 {
            count += degree(&d) as u64 / i as u64;
            g = divrem(&g, &d, p).0;
            h = rem(&h, &g, p);
        }
        i += 1;
    }
    if degree(&g) > 0 {
        count += 1;
    }
    count
}

/// Number of irreducible factors counted with multiplicity; `a` nonzero.
pub fn factor_count(a: &[u64], p: u64) -> u64 {
    let (_, f) = monic(a, p);
    if degree(&f) <= 0 {
        return 0;
    }
    squarefree(&f, p).iter().map(|(g, m)| m * count_squarefree(g, p)).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Ω by trial division with every monic polynomial of degree ≥ 1, in
    /// order of increasing degree, so each divisor found is irreducible.
    fn omega_trial(a: &[u64], p: u64) -> u64 {
        let mut f = monic(a, p).1;
        let mut count = 0;
        let mut d = 1;
        while degree(&f) >= 2 * d {
            let total = p.pow(d as u32);
            for low in 0..total {
                let mut g: Poly = (0..d).map(|k| (low / p.pow(k as u32)) % p).collect();
                g.push(1);
                loop {
                    let (q, r) = divrem(&f, &g, p);
                    if !r.is_empty() {
                        break;
                    }
                    f = q;
                    count += 1;
                }
            }
            d += 1;
        }
        if degree(&f) > 0 {
            count += 1;
        }
        count
    }

    #[test]
    fn divrem_examples() {
        // x^2 + x = x·(x + 1) over F_2
        assert_eq!(divrem(&[0, 1, 1], &[0, 1], 2), (vec![1, 1], vec![]));
        let (q, r) = divrem(&[1, 0, 0, 1], &[1, 1], 3);
        assert_eq!(add(&mul(&q, &[1, 1], 3), &r, 3), vec![1, 0, 0, 1]);
    }

    #[test]
    fn factor_count_examples() {
        assert_eq!(factor_count(&[0, 1, 1], 2), 2);
        assert_eq!(factor_count(&[1, 1, 1], 2), 1);
        assert_eq!(factor_count(&[3], 5), 0);
        // (x+1)^4 over F_2 has vanishing derivative
        assert_eq!(factor_count(&[1, 0, 0, 0, 1], 2), 4);
        // x^p - x splits into p linear factors
        assert_eq!(factor_count(&[0, 6, 0, 0, 0, 0, 0, 1], 7), 7);
    }

    #[test]
    fn factor_count_matches_trial_division() {
        for p in [2u64, 3, 5] {
            let max_deg = if p == 2 { 9 } else { 5 };
            for deg in 1..=max_deg {
                let total = p.pow(deg);
                for low in 0..total {
                    let mut f: Poly = (0..deg).map(|k| (low / p.pow(k)) % p).collect();
                    f.push(1);
                    assert_eq!(factor_count(&f, p), omega_trial(&f, p), "{f:?} over F_{p}");
                }
            }
        }
    }
}
