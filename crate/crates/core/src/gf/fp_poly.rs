//! Dense polynomial arithmetic over the prime field F_p, plus the small
//! integer utilities (primality, factorization) the field layer needs.
//!
//! Polynomials are `&[u64]` coefficient slices, least-significant
//! coefficient first, all entries already reduced mod p. Leading zeros are
//! tolerated on input. These routines are the cold path: field contexts
//! are built once and then do their own reduced arithmetic.

/// Trial-division primality. Fine for the desk-scale inputs here.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d.checked_mul(d).map(|dd| dd <= n).unwrap_or(false) {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Prime factorization by trial division, as (prime, exponent) pairs in
/// increasing prime order.
pub fn factor(mut n: u64) -> Vec<(u64, u32)> {
    assert!(n >= 1, "factor(0) is undefined");
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.checked_mul(d).map(|dd| dd <= n).unwrap_or(false) {
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Writes `q` as p^e for a prime p, or `None` if it is not a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let f = factor(q);
    if f.len() == 1 {
        Some(f[0])
    } else {
        None
    }
}

/// (a * b) mod m without overflow.
#[inline]
pub fn mod_mul(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// a^e mod m by square-and-multiply.
pub fn mod_pow(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mod_mul(acc, a, m);
        }
        a = mod_mul(a, a, m);
        e >>= 1;
    }
    acc
}

/// Multiplicative inverse mod a prime p (Fermat).
#[inline]
pub fn mod_inv(a: u64, p: u64) -> u64 {
    debug_assert!(a % p != 0, "inverse of zero mod {p}");
    mod_pow(a, p - 2, p)
}

/// Degree of a coefficient slice, ignoring leading zeros. `None` for zero.
pub fn poly_deg(a: &[u64]) -> Option<usize> {
    a.iter().rposition(|&c| c != 0)
}

/// Product of two F_p polynomials.
pub fn poly_mul(p: u64, a: &[u64], b: &[u64]) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            if bj == 0 {
                continue;
            }
            let k = i + j;
            out[k] = (out[k] + mod_mul(ai, bj, p)) % p;
        }
    }
    out
}

/// Remainder of `a` upon division by a monic `m`, returned with exactly
/// deg(m) coefficients.
pub fn poly_rem(p: u64, a: &[u64], m: &[u64]) -> Vec<u64> {
    let md = poly_deg(m).expect("division by zero polynomial");
    assert_eq!(m[md], 1, "divisor must be monic");
    let mut r: Vec<u64> = a.to_vec();
    while let Some(rd) = poly_deg(&r) {
        if rd < md {
            break;
        }
        let lead = r[rd];
        let shift = rd - md;
        for i in 0..=md {
            if m[i] != 0 {
                let sub = mod_mul(lead, m[i], p);
                r[i + shift] = (r[i + shift] + p - sub) % p;
            }
        }
        debug_assert_eq!(r[rd], 0);
    }
    r.resize(md, 0);
    r
}

/// Iterates the free coefficient vectors (c0..c_{k-1}) of monic degree-k
/// polynomials in the crate's canonical order: lexicographic with c0 the
/// dominant key, i.e. the last coefficient varies fastest.
pub struct MonicIter {
    p: u64,
    coeffs: Vec<u64>,
    started: bool,
    done: bool,
}

impl MonicIter {
    pub fn new(p: u64, k: usize) -> Self {
        MonicIter {
            p,
            coeffs: vec![0; k],
            started: false,
            done: false,
        }
    }
}

impl Iterator for MonicIter {
    type Item = Vec<u64>;

    fn next(&mut self) -> Option<Vec<u64>> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            return Some(self.coeffs.clone());
        }
        let mut i = self.coeffs.len();
        loop {
            if i == 0 {
                self.done = true;
                return None;
            }
            i -= 1;
            self.coeffs[i] += 1;
            if self.coeffs[i] < self.p {
                break;
            }
            self.coeffs[i] = 0;
        }
        Some(self.coeffs.clone())
    }
}

/// Monic-irreducibility by trial division against every monic polynomial
/// of degree 1..=deg/2. Exactly the construction-time promise of the
/// field layer; feasible at the scales this crate targets.
pub fn poly_is_irreducible(p: u64, f: &[u64]) -> bool {
    let d = match poly_deg(f) {
        Some(d) => d,
        None => return false,
    };
    assert_eq!(f[d], 1, "irreducibility is checked for monic polynomials");
    if d == 0 {
        return false; // units are not irreducible
    }
    if d == 1 {
        return true;
    }
    for dd in 1..=(d / 2) {
        for mut divisor in MonicIter::new(p, dd) {
            divisor.push(1);
            if poly_deg(&poly_rem(p, f, &divisor)).is_none() {
                return false;
            }
        }
    }
    true
}
