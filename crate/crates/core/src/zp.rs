//! Integer helpers and small polynomial arithmetic over Z/pZ, used to pick and
//! validate field moduli. Polynomials are coefficient vectors, constant term
//! first, always trimmed.

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime divisors in increasing order.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn divisors(n: u32) -> Vec<u32> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

/// Splits `q` as `p^f` with `p` prime, if possible.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = *prime_factors(q).first()?;
    let mut f = 0;
    let mut rest = q;
    while rest.is_multiple_of(p) {
        rest /= p;
        f += 1;
    }
    (rest == 1).then_some((p, f))
}

pub(crate) type ZpPoly = Vec<u64>;

fn trim(mut a: ZpPoly) -> ZpPoly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn inv_mod(a: u64, p: u64) -> u64 {
    // p is prime, so a^(p-2) is the inverse
    pow_mod(a, p - 2, p)
}

fn pow_mod(mut base: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc
}

fn rem(a: &[u64], m: &[u64], p: u64) -> ZpPoly {
    let mut r = trim(a.to_vec());
    let dm = m.len() - 1;
    let lead_inv = inv_mod(m[dm], p);
    while r.len() > dm {
        let top = r.len() - 1;
        let c = r[top] * lead_inv % p;
        let shift = top - dm;
        for (i, &mc) in m.iter().enumerate() {
            r[shift + i] = (r[shift + i] + p - c * mc % p) % p;
        }
        r = trim(r);
    }
    r
}

fn mul_mod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> ZpPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    rem(&out, m, p)
}

fn pow_poly_mod(base: &[u64], mut e: u64, m: &[u64], p: u64) -> ZpPoly {
    let mut acc = rem(&[1], m, p);
    let mut b = rem(base, m, p);
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(&acc, &b, m, p);
        }
        b = mul_mod(&b, &b, m, p);
        e >>= 1;
    }
    acc
}

fn sub(a: &[u64], b: &[u64], p: u64) -> ZpPoly {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect();
    trim(out)
}

fn gcd(a: &[u64], b: &[u64], p: u64) -> ZpPoly {
    let mut a = trim(a.to_vec());
    let mut b = trim(b.to_vec());
    while !b.is_empty() {
        let r = rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

/// Rabin's test: a monic `g` of degree `n` is irreducible over Z/pZ iff
/// x^(p^n) = x mod g and gcd(x^(p^(n/q)) - x, g) = 1 for every prime q | n.
pub(crate) fn is_irreducible(g: &[u64], p: u64) -> bool {
    let g = trim(g.to_vec());
    if g.len() < 2 {
        return false;
    }
    let n = (g.len() - 1) as u64;
    if n == 1 {
        return true;
    }
    let x: ZpPoly = vec![0, 1];
    // frob[k] = x^(p^k) mod g
    let mut frob = vec![rem(&x, &g, p)];
    for k in 1..=n as usize {
        let next = pow_poly_mod(&frob[k - 1], p, &g, p);
        frob.push(next);
    }
    if !sub(&frob[n as usize], &x, p).is_empty() {
        return false;
    }
    for q in prime_factors(n) {
        let h = sub(&frob[(n / q) as usize], &x, p);
        if gcd(&g, &h, p).len() != 1 {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    // independent oracle: a polynomial of degree n is reducible iff some monic
    // polynomial of degree 1..=n/2 leaves remainder zero
    fn has_small_factor(g: &[u64], p: u64) -> bool {
        let n = g.len() - 1;
        for d in 1..=n / 2 {
            let count = p.pow(d as u32);
            for t in 0..count {
                let mut cand: Vec<u64> = (0..d).map(|i| t / p.pow(i as u32) % p).collect();
                cand.push(1);
                if rem(g, &cand, p).is_empty() {
                    return true;
                }
            }
        }
        false
    }

    #[test]
    fn primes() {
        let small: Vec<u64> = (0..30).filter(|&n| is_prime(n)).collect();
        assert_eq!(small, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert!(is_prime(509));
        assert!(!is_prime(511));
    }

    #[test]
    fn prime_powers() {
        assert_eq!(prime_power(512), Some((2, 9)));
        assert_eq!(prime_power(343), Some((7, 3)));
        assert_eq!(prime_power(509), Some((509, 1)));
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(1), None);
    }

    #[test]
    fn rabin_matches_trial_division() {
        for &(p, n) in &[(2u64, 2usize), (2, 3), (2, 4), (2, 5), (2, 6), (3, 2), (3, 3), (3, 4), (5, 2), (5, 3), (7, 2)] {
            let count = p.pow(n as u32);
            for t in 0..count {
                let mut g: Vec<u64> = (0..n).map(|i| t / p.pow(i as u32) % p).collect();
                g.push(1);
                assert_eq!(
                    is_irreducible(&g, p),
                    !has_small_factor(&g, p),
                    "p={p} g={g:?}"
                );
            }
        }
    }
}
