//! Finite fields F_{p^k} behind a runtime context.
//!
//! A [`FieldCtx`] owns everything about one field: the prime, the degree,
//! the canonical modulus, and (for fields of at most 2^20 elements)
//! exp/log tables over a deterministic multiplicative generator. Elements
//! are compact [`FieldElem`] handles — a context id plus a base-p digit
//! code — and all arithmetic goes through `&FieldCtx` methods, which
//! assert that the element belongs to the context.
//!
//! Conventions fixed here and relied on everywhere else:
//!
//! * The modulus is the lexicographically smallest monic irreducible of
//!   degree k, comparing coefficient vectors (c0, .., c_{k-1}) with the
//!   constant coefficient c0 as the dominant key.
//! * Element enumeration order is lexicographic on the same vectors; the
//!   "first" element of any search is stable across runs and platforms.
//! * An element serializes as its base-p digit string, least-significant
//!   digit first, using 0-9a-z (comma-separated decimal if p > 36).

pub mod fp_poly;
pub mod tower;

use std::sync::atomic::{AtomicU32, Ordering};
use std::sync::OnceLock;

use crate::error::{Error, Result};
use fp_poly::{mod_inv, mod_mul};

/// Identifies one [`FieldCtx`] instance for element/context pairing.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct CtxId(u32);

static NEXT_CTX_ID: AtomicU32 = AtomicU32::new(1);

/// One element of the field owned by a specific [`FieldCtx`].
///
/// `code` encodes the reduced coefficient vector (c0, .., c_{k-1}) as
/// sum c_i * p^i. Codes are canonical, so derived equality and hashing
/// are exact element equality within a context.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct FieldElem {
    ctx: CtxId,
    code: u64,
}

impl FieldElem {
    /// The owning context's id.
    pub fn ctx(&self) -> CtxId {
        self.ctx
    }

    /// Raw digit code; meaningful only together with the context.
    pub fn code(&self) -> u64 {
        self.code
    }

    pub fn is_zero(&self) -> bool {
        self.code == 0
    }
}

/// Construction knobs for [`make_field_with`].
#[derive(Clone, Copy, Debug)]
pub struct FieldConfig {
    /// Hard cap on p^k.
    pub size_limit: u64,
    /// exp/log tables are built when p^k is at most this (and k > 1).
    pub table_limit: u64,
}

impl Default for FieldConfig {
    fn default() -> Self {
        FieldConfig {
            size_limit: 1 << 40,
            table_limit: 1 << 20,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Mode {
    /// k == 1: codes are integers mod p, arithmetic is direct.
    Prime,
    /// exp/log tables over the canonical generator.
    Table,
    /// p == 2 without tables: codes are bit vectors, carry-less products.
    Bits,
    /// General polynomial arithmetic with precomputed reduction rows.
    Poly,
}

struct Tables {
    /// log[code] for nonzero codes; u32::MAX at index 0.
    log: Vec<u32>,
    /// exp[i] = code of g^i for i in 0..size-1.
    exp: Vec<u32>,
}

/// A finite field F_{p^k} with canonical modulus and deterministic
/// conventions. Immutable after construction; shareable across threads.
pub struct FieldCtx {
    id: CtxId,
    p: u64,
    k: u32,
    size: u64,
    modulus: Vec<u64>,
    pow_p: Vec<u64>,
    /// red_rows[j][i] = coefficient i of t^{k+j} mod modulus, j in 0..k-1.
    red_rows: Vec<Vec<u64>>,
    mode: Mode,
    table: Option<Tables>,
    /// rank -> code lookup for table-mode fields with k > 1.
    rank_code: Option<Vec<u32>>,
    gen_cell: OnceLock<u64>,
}

/// Builds F_{p^k} with default bounds. The modulus is the canonical
/// (lexicographically smallest) monic irreducible, found by scanning in
/// enumeration order and trial-dividing by every monic polynomial of
/// degree at most k/2.
pub fn make_field(p: u64, k: u32) -> Result<FieldCtx> {
    make_field_with(p, k, &FieldConfig::default())
}

/// [`make_field`] with explicit bounds (used by tests to force the
/// non-table arithmetic routes).
pub fn make_field_with(p: u64, k: u32, cfg: &FieldConfig) -> Result<FieldCtx> {
    if !fp_poly::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if k == 0 {
        return Err(Error::InvalidArgument("field degree k must be >= 1".into()));
    }
    let size = checked_pow(p, k).ok_or(Error::SizeBound {
        size: u64::MAX,
        bound: cfg.size_limit,
    })?;
    if size > cfg.size_limit {
        return Err(Error::SizeBound {
            size,
            bound: cfg.size_limit,
        });
    }

    let modulus = canonical_modulus(p, k);
    let mut pow_p = Vec::with_capacity(k as usize + 1);
    let mut acc = 1u64;
    for _ in 0..=k {
        pow_p.push(acc);
        acc = acc.saturating_mul(p);
    }

    // t^{k+j} mod modulus for j in 0..k-1, by repeated shift-and-reduce.
    let kk = k as usize;
    let mut red_rows: Vec<Vec<u64>> = Vec::with_capacity(kk.saturating_sub(1));
    // t^k mod m = -(c0 + c1 t + ... + c_{k-1} t^{k-1})
    let mut row: Vec<u64> = modulus[..kk].iter().map(|&c| (p - c) % p).collect();
    for _ in 0..kk.saturating_sub(1) {
        red_rows.push(row.clone());
        // multiply by t: shift up, reduce the overflowing t^k term
        let top = row[kk - 1];
        for i in (1..kk).rev() {
            row[i] = row[i - 1];
        }
        row[0] = 0;
        if top != 0 {
            for i in 0..kk {
                let add = mod_mul(top, (p - modulus[i]) % p, p);
                row[i] = (row[i] + add) % p;
            }
        }
    }

    let mode = if k == 1 {
        Mode::Prime
    } else if size <= cfg.table_limit {
        Mode::Table
    } else if p == 2 {
        Mode::Bits
    } else {
        Mode::Poly
    };

    let mut ctx = FieldCtx {
        id: CtxId(NEXT_CTX_ID.fetch_add(1, Ordering::Relaxed)),
        p,
        k,
        size,
        modulus,
        pow_p,
        red_rows,
        mode: if mode == Mode::Table {
            // arithmetic used while building the tables
            if p == 2 {
                Mode::Bits
            } else {
                Mode::Poly
            }
        } else {
            mode
        },
        table: None,
        rank_code: None,
        gen_cell: OnceLock::new(),
    };

    if mode == Mode::Table {
        let g = ctx.find_generator_code();
        let n = (size - 1) as usize;
        let mut exp = vec![0u32; n];
        let mut log = vec![u32::MAX; size as usize];
        let mut cur = 1u64;
        for (i, slot) in exp.iter_mut().enumerate() {
            *slot = cur as u32;
            debug_assert_eq!(log[cur as usize], u32::MAX, "generator order too small");
            log[cur as usize] = i as u32;
            cur = ctx.mul_code(cur, g);
        }
        assert_eq!(cur, 1, "generator does not have full order");
        assert!(
            log.iter().skip(1).all(|&v| v != u32::MAX),
            "exp table does not cover the multiplicative group"
        );
        ctx.table = Some(Tables { log, exp });
        ctx.mode = Mode::Table;
        ctx.gen_cell.set(g).ok();
        let mut rank_code = vec![0u32; size as usize];
        for (rank, slot) in rank_code.iter_mut().enumerate() {
            *slot = reverse_digits(rank as u64, p, k) as u32;
        }
        ctx.rank_code = Some(rank_code);
    }

    Ok(ctx)
}

fn checked_pow(p: u64, k: u32) -> Option<u64> {
    let mut acc = 1u64;
    for _ in 0..k {
        acc = acc.checked_mul(p)?;
    }
    Some(acc)
}

/// The canonical modulus: first irreducible monic degree-k polynomial in
/// enumeration order of the free coefficients.
fn canonical_modulus(p: u64, k: u32) -> Vec<u64> {
    for mut f in fp_poly::MonicIter::new(p, k as usize) {
        f.push(1);
        if fp_poly::poly_is_irreducible(p, &f) {
            return f;
        }
    }
    unreachable!("an irreducible polynomial of every degree exists over F_p")
}

/// Reverses the base-p digit string of x, viewed with exactly k digits.
/// This is both the rank-of-code and the code-of-rank map.
#[inline]
fn reverse_digits(mut x: u64, p: u64, k: u32) -> u64 {
    let mut out = 0u64;
    for _ in 0..k {
        out = out * p + x % p;
        x /= p;
    }
    out
}

impl FieldCtx {
    pub fn id(&self) -> CtxId {
        self.id
    }
    pub fn p(&self) -> u64 {
        self.p
    }
    pub fn k(&self) -> u32 {
        self.k
    }
    /// Number of elements, p^k.
    pub fn size(&self) -> u64 {
        self.size
    }
    /// Monic modulus, k+1 coefficients, constant term first.
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }
    /// Whether exp/log tables back multiplication.
    pub fn table_mode(&self) -> bool {
        self.mode == Mode::Table
    }

    #[inline]
    fn check(&self, x: FieldElem) -> u64 {
        assert!(
            x.ctx == self.id,
            "field element belongs to a different context"
        );
        x.code
    }

    #[inline]
    fn wrap(&self, code: u64) -> FieldElem {
        debug_assert!(code < self.size);
        FieldElem {
            ctx: self.id,
            code,
        }
    }

    // ---- Element construction ----

    pub fn zero(&self) -> FieldElem {
        self.wrap(0)
    }

    pub fn one(&self) -> FieldElem {
        self.wrap(1)
    }

    /// Element from a coefficient slice (constant term first); entries are
    /// reduced mod p, and at most k may be given.
    pub fn from_coeffs(&self, coeffs: &[u64]) -> FieldElem {
        assert!(
            coeffs.len() <= self.k as usize,
            "too many coefficients for degree-{} field",
            self.k
        );
        let mut code = 0u64;
        for (i, &c) in coeffs.iter().enumerate() {
            code += (c % self.p) * self.pow_p[i];
        }
        self.wrap(code)
    }

    /// The prime-subfield constant n mod p.
    pub fn from_int(&self, n: u64) -> FieldElem {
        self.wrap(n % self.p)
    }

    /// Like [`from_int`] but for signed literals: negative values map to
    /// p - (|n| mod p).
    pub fn from_signed(&self, n: i64) -> FieldElem {
        let r = n.rem_euclid(self.p as i64) as u64;
        self.wrap(r)
    }

    /// Reduced coefficient vector, constant term first, length k.
    pub fn coeffs(&self, x: FieldElem) -> Vec<u64> {
        let mut code = self.check(x);
        let mut out = Vec::with_capacity(self.k as usize);
        for _ in 0..self.k {
            out.push(code % self.p);
            code /= self.p;
        }
        out
    }

    /// Element with the given digit code. Any code below p^k is a valid
    /// reduced coefficient vector.
    pub fn from_code(&self, code: u64) -> FieldElem {
        assert!(code < self.size, "code out of range");
        self.wrap(code)
    }

    // ---- Enumeration ----

    /// Position of x in the canonical element enumeration.
    pub fn rank_of(&self, x: FieldElem) -> u64 {
        let code = self.check(x);
        if self.k == 1 {
            code
        } else {
            reverse_digits(code, self.p, self.k)
        }
    }

    /// The rank-th element of the canonical enumeration.
    pub fn elem_at_rank(&self, rank: u64) -> FieldElem {
        assert!(rank < self.size, "rank out of range");
        if self.k == 1 {
            return self.wrap(rank);
        }
        if let Some(tbl) = &self.rank_code {
            return self.wrap(tbl[rank as usize] as u64);
        }
        self.wrap(reverse_digits(rank, self.p, self.k))
    }

    /// All elements in canonical order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElem> + '_ {
        (0..self.size).map(move |r| self.elem_at_rank(r))
    }

    // ---- Arithmetic ----

    pub fn add(&self, x: FieldElem, y: FieldElem) -> FieldElem {
        self.wrap(self.add_code(self.check(x), self.check(y)))
    }

    pub fn sub(&self, x: FieldElem, y: FieldElem) -> FieldElem {
        self.wrap(self.sub_code(self.check(x), self.check(y)))
    }

    pub fn neg(&self, x: FieldElem) -> FieldElem {
        self.wrap(self.neg_code(self.check(x)))
    }

    pub fn mul(&self, x: FieldElem, y: FieldElem) -> FieldElem {
        self.wrap(self.mul_code(self.check(x), self.check(y)))
    }

    /// Panics on zero divisor.
    pub fn div(&self, x: FieldElem, y: FieldElem) -> FieldElem {
        let yc = self.check(y);
        assert!(yc != 0, "division by zero field element");
        self.wrap(self.mul_code(self.check(x), self.inv_code(yc)))
    }

    /// Panics on zero.
    pub fn inv(&self, x: FieldElem) -> FieldElem {
        let xc = self.check(x);
        assert!(xc != 0, "inverse of zero field element");
        self.wrap(self.inv_code(xc))
    }

    /// `None` for zero, the inverse otherwise.
    pub fn try_inv(&self, x: FieldElem) -> Option<FieldElem> {
        let xc = self.check(x);
        if xc == 0 {
            None
        } else {
            Some(self.wrap(self.inv_code(xc)))
        }
    }

    /// x^e with 0^0 = 1.
    pub fn pow(&self, x: FieldElem, e: u64) -> FieldElem {
        self.wrap(self.pow_code(self.check(x), e))
    }

    /// Multiplication forced through the polynomial route, bypassing any
    /// exp/log tables. Exists so the two routes can be cross-checked.
    pub fn mul_poly_route(&self, x: FieldElem, y: FieldElem) -> FieldElem {
        let (a, b) = (self.check(x), self.check(y));
        let code = match self.mode {
            Mode::Prime => mod_mul(a, b, self.p),
            _ => {
                if self.p == 2 {
                    self.mul_code_bits(a, b)
                } else {
                    self.mul_code_poly(a, b)
                }
            }
        };
        self.wrap(code)
    }

    // ---- Code-level arithmetic (crate-internal hot paths) ----

    #[inline]
    pub(crate) fn add_code(&self, a: u64, b: u64) -> u64 {
        match self.mode {
            Mode::Prime => {
                let s = a + b;
                if s >= self.p {
                    s - self.p
                } else {
                    s
                }
            }
            _ if self.p == 2 => a ^ b,
            _ => {
                let mut out = 0u64;
                let (mut a, mut b) = (a, b);
                for i in 0..self.k as usize {
                    let s = a % self.p + b % self.p;
                    out += (if s >= self.p { s - self.p } else { s }) * self.pow_p[i];
                    a /= self.p;
                    b /= self.p;
                }
                out
            }
        }
    }

    #[inline]
    pub(crate) fn neg_code(&self, a: u64) -> u64 {
        match self.mode {
            Mode::Prime => {
                if a == 0 {
                    0
                } else {
                    self.p - a
                }
            }
            _ if self.p == 2 => a,
            _ => {
                let mut out = 0u64;
                let mut a = a;
                for i in 0..self.k as usize {
                    let d = a % self.p;
                    out += (if d == 0 { 0 } else { self.p - d }) * self.pow_p[i];
                    a /= self.p;
                }
                out
            }
        }
    }

    #[inline]
    pub(crate) fn sub_code(&self, a: u64, b: u64) -> u64 {
        if self.p == 2 && self.mode != Mode::Prime {
            return a ^ b;
        }
        self.add_code(a, self.neg_code(b))
    }

    #[inline]
    pub(crate) fn mul_code(&self, a: u64, b: u64) -> u64 {
        match self.mode {
            Mode::Prime => mod_mul(a, b, self.p),
            Mode::Table => {
                if a == 0 || b == 0 {
                    return 0;
                }
                let t = self.table.as_ref().unwrap();
                let n = self.size - 1;
                let mut s = t.log[a as usize] as u64 + t.log[b as usize] as u64;
                if s >= n {
                    s -= n;
                }
                t.exp[s as usize] as u64
            }
            Mode::Bits => self.mul_code_bits(a, b),
            Mode::Poly => self.mul_code_poly(a, b),
        }
    }

    /// Carry-less multiply-and-reduce for p == 2; codes are bit vectors.
    fn mul_code_bits(&self, a: u64, b: u64) -> u64 {
        let k = self.k as u32;
        let mut prod: u128 = 0;
        let mut bb = b as u128;
        let mut aa = a;
        while aa != 0 {
            if aa & 1 == 1 {
                prod ^= bb;
            }
            aa >>= 1;
            bb <<= 1;
        }
        // reduce: modulus as bit mask, monic bit at position k
        let mut m: u128 = 0;
        for (i, &c) in self.modulus.iter().enumerate() {
            if c != 0 {
                m |= 1u128 << i;
            }
        }
        while prod != 0 {
            let deg = 127 - prod.leading_zeros();
            if deg < k {
                break;
            }
            prod ^= m << (deg - k);
        }
        prod as u64
    }

    /// Schoolbook digit-vector multiply with precomputed reduction rows.
    fn mul_code_poly(&self, a: u64, b: u64) -> u64 {
        const MAX: usize = 64;
        let k = self.k as usize;
        debug_assert!(2 * k - 1 <= MAX);
        let mut da = [0u64; 32];
        let mut db = [0u64; 32];
        let (mut x, mut y) = (a, b);
        for i in 0..k {
            da[i] = x % self.p;
            db[i] = y % self.p;
            x /= self.p;
            y /= self.p;
        }
        // digit products stay below 2^40 because k >= 2 forces p <= 2^20,
        // so u64 accumulation cannot overflow at these sizes
        let mut buf = [0u64; MAX];
        for i in 0..k {
            if da[i] == 0 {
                continue;
            }
            for j in 0..k {
                buf[i + j] += da[i] * db[j];
            }
        }
        for d in (k..2 * k - 1).rev() {
            let c = buf[d] % self.p;
            if c != 0 {
                let row = &self.red_rows[d - k];
                for i in 0..k {
                    buf[i] += c * row[i];
                }
            }
        }
        let mut code = 0u64;
        for i in (0..k).rev() {
            code = code * self.p + buf[i] % self.p;
        }
        code
    }

    #[inline]
    pub(crate) fn inv_code(&self, a: u64) -> u64 {
        debug_assert!(a != 0);
        match self.mode {
            Mode::Prime => mod_inv(a, self.p),
            Mode::Table => {
                let t = self.table.as_ref().unwrap();
                let n = self.size - 1;
                let l = t.log[a as usize] as u64;
                t.exp[((n - l) % n) as usize] as u64
            }
            // Lagrange: the multiplicative order divides size - 1.
            _ => self.pow_code(a, self.size - 2),
        }
    }

    pub(crate) fn pow_code(&self, a: u64, e: u64) -> u64 {
        if a == 0 {
            return if e == 0 { 1 } else { 0 };
        }
        if let (Mode::Table, Some(t)) = (self.mode, self.table.as_ref()) {
            let n = (self.size - 1) as u128;
            let l = t.log[a as usize] as u128;
            return t.exp[((l * e as u128) % n) as usize] as u64;
        }
        let mut acc = 1u64;
        let mut base = a;
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_code(acc, base);
            }
            base = self.mul_code(base, base);
            e >>= 1;
        }
        acc
    }

    #[inline]
    pub(crate) fn div_code(&self, a: u64, b: u64) -> u64 {
        assert!(b != 0, "division by zero field element");
        self.mul_code(a, self.inv_code(b))
    }

    // ---- Multiplicative generator ----

    /// The canonical generator of the multiplicative group: the first
    /// element in enumeration order whose order is size - 1.
    pub fn generator(&self) -> FieldElem {
        let code = *self.gen_cell.get_or_init(|| self.find_generator_code());
        self.wrap(code)
    }

    fn find_generator_code(&self) -> u64 {
        let n = self.size - 1;
        let primes: Vec<u64> = fp_poly::factor(n).into_iter().map(|(p, _)| p).collect();
        for rank in 1..self.size {
            let code = if self.k == 1 {
                rank
            } else {
                reverse_digits(rank, self.p, self.k)
            };
            if code == 0 {
                continue;
            }
            if primes.iter().all(|&l| self.pow_code(code, n / l) != 1) {
                return code;
            }
        }
        unreachable!("the multiplicative group of a finite field is cyclic")
    }

    // ---- Codec ----

    /// Base-p digit string, least-significant digit first. Digits use
    /// 0-9a-z; for p > 36 the digits are decimal, comma-separated.
    pub fn elem_to_string(&self, x: FieldElem) -> String {
        let coeffs = self.coeffs(x);
        if self.p <= 36 {
            coeffs.iter().map(|&c| digit_char(c)).collect()
        } else {
            coeffs
                .iter()
                .map(|c| c.to_string())
                .collect::<Vec<_>>()
                .join(",")
        }
    }

    /// Inverse of [`elem_to_string`]; expects exactly k digits.
    pub fn elem_from_str(&self, s: &str) -> Result<FieldElem> {
        let digits: Vec<u64> = if s.contains(',') {
            s.split(',')
                .map(|part| {
                    part.trim()
                        .parse::<u64>()
                        .map_err(|_| Error::Parse(format!("bad digit {part:?}")))
                })
                .collect::<Result<_>>()?
        } else {
            s.chars().map(digit_val).collect::<Result<_>>()?
        };
        if digits.len() != self.k as usize {
            return Err(Error::Parse(format!(
                "expected {} digits for this field, got {}",
                self.k,
                digits.len()
            )));
        }
        if let Some(&bad) = digits.iter().find(|&&d| d >= self.p) {
            return Err(Error::Parse(format!("digit {bad} out of range for p={}", self.p)));
        }
        Ok(self.from_coeffs(&digits))
    }

    /// The modulus as a digit string (k+1 digits, constant term first).
    pub fn modulus_string(&self) -> String {
        if self.p <= 36 {
            self.modulus.iter().map(|&c| digit_char(c)).collect()
        } else {
            self.modulus
                .iter()
                .map(|c| c.to_string())
                .collect::<Vec<_>>()
                .join(",")
        }
    }
}

fn digit_char(c: u64) -> char {
    char::from_digit(c as u32, 36).expect("digit below 36")
}

fn digit_val(ch: char) -> Result<u64> {
    ch.to_digit(36)
        .map(u64::from)
        .ok_or_else(|| Error::Parse(format!("bad digit {ch:?}")))
}

impl std::fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FieldCtx")
            .field("p", &self.p)
            .field("k", &self.k)
            .field("modulus", &self.modulus)
            .field("table_mode", &self.table_mode())
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_modulus_is_t() {
        let f2 = make_field(2, 1).unwrap();
        assert_eq!(f2.modulus(), &[0, 1]);
        assert_eq!(f2.modulus_string(), "01");
        assert!(!f2.table_mode());
    }

    #[test]
    fn canonical_moduli_small_fields() {
        // F_4: t^2 + t + 1 is the unique irreducible quadratic over F_2.
        assert_eq!(make_field(2, 2).unwrap().modulus(), &[1, 1, 1]);
        // F_8: (1,0,1) precedes (1,1,0) in the c0-dominant order.
        assert_eq!(make_field(2, 3).unwrap().modulus(), &[1, 0, 1, 1]);
        // F_9: t^2 + 1 has no root mod 3.
        assert_eq!(make_field(3, 2).unwrap().modulus(), &[1, 0, 1]);
    }

    #[test]
    fn enumeration_order_is_c0_dominant() {
        let f4 = make_field(2, 2).unwrap();
        let order: Vec<Vec<u64>> = f4.elements().map(|x| f4.coeffs(x)).collect();
        assert_eq!(
            order,
            vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]],
            "rank order must increment the top coefficient fastest"
        );
        // rank/elem round-trip
        for r in 0..f4.size() {
            assert_eq!(f4.rank_of(f4.elem_at_rank(r)), r);
        }
    }

    #[test]
    fn field_axioms_exhaustive_f8() {
        let f = make_field(2, 3).unwrap();
        let els: Vec<FieldElem> = f.elements().collect();
        for &x in &els {
            assert_eq!(f.add(x, f.zero()), x);
            assert_eq!(f.mul(x, f.one()), x);
            assert_eq!(f.add(x, f.neg(x)), f.zero());
            if !x.is_zero() {
                assert_eq!(f.mul(x, f.inv(x)), f.one());
            }
        }
        for &x in &els {
            for &y in &els {
                assert_eq!(f.add(x, y), f.add(y, x));
                assert_eq!(f.mul(x, y), f.mul(y, x));
                for &z in &els {
                    assert_eq!(f.mul(x, f.add(y, z)), f.add(f.mul(x, y), f.mul(x, z)));
                }
            }
        }
    }

    #[test]
    fn unit_group_order_exhaustive_small_fields() {
        for (p, k) in [(2u64, 3u32), (2, 6), (3, 4), (5, 3), (7, 2), (11, 1)] {
            let f = make_field(p, k).unwrap();
            assert!(f.size() <= 1 << 10);
            for x in f.elements().skip(1) {
                assert_eq!(f.pow(x, f.size() - 1), f.one(), "p={p} k={k}");
            }
        }
    }

    #[test]
    fn table_route_equals_poly_route_exhaustive() {
        // F_8: all 64 pairs; F_9: all 81 pairs.
        for (p, k) in [(2u64, 3u32), (3, 2)] {
            let f = make_field(p, k).unwrap();
            assert!(f.table_mode());
            for x in f.elements() {
                for y in f.elements() {
                    assert_eq!(f.mul(x, y), f.mul_poly_route(x, y));
                }
            }
        }
    }

    #[test]
    fn table_and_tablefree_contexts_agree() {
        // Same field built with tables disabled: identical modulus, and
        // division/inverse agree everywhere.
        let cfg = FieldConfig {
            table_limit: 0,
            ..FieldConfig::default()
        };
        for (p, k) in [(2u64, 4u32), (3, 3), (5, 2)] {
            let ft = make_field(p, k).unwrap();
            let fp = make_field_with(p, k, &cfg).unwrap();
            assert!(ft.table_mode() && !fp.table_mode());
            assert_eq!(ft.modulus(), fp.modulus());
            for a in 0..ft.size() {
                for b in 1..ft.size() {
                    let (xa, xb) = (ft.from_code(a), ft.from_code(b));
                    let (ya, yb) = (fp.from_code(a), fp.from_code(b));
                    assert_eq!(ft.div(xa, xb).code(), fp.div(ya, yb).code());
                }
            }
        }
    }

    #[test]
    fn pow_matches_repeated_multiplication() {
        let f = make_field(3, 2).unwrap();
        for x in f.elements() {
            let mut acc = f.one();
            for e in 0..10u64 {
                assert_eq!(f.pow(x, e), acc);
                acc = f.mul(acc, x);
            }
        }
    }

    #[test]
    fn generator_has_full_order() {
        for (p, k) in [(2u64, 3u32), (3, 2), (5, 1), (2, 6)] {
            let f = make_field(p, k).unwrap();
            let g = f.generator();
            let n = f.size() - 1;
            assert_eq!(f.pow(g, n), f.one());
            for (l, _) in fp_poly::factor(n) {
                assert_ne!(f.pow(g, n / l), f.one(), "p={p} k={k} l={l}");
            }
        }
    }

    #[test]
    fn codec_round_trips() {
        for (p, k) in [(2u64, 3u32), (3, 2), (13, 1), (11, 2)] {
            let f = make_field(p, k).unwrap();
            for x in f.elements() {
                let s = f.elem_to_string(x);
                assert_eq!(f.elem_from_str(&s).unwrap(), x, "p={p} k={k} s={s}");
                assert_eq!(s.len(), k as usize);
            }
        }
    }

    #[test]
    fn codec_uses_letters_above_nine() {
        let f13 = make_field(13, 1).unwrap();
        assert_eq!(f13.elem_to_string(f13.from_int(12)), "c");
        assert_eq!(f13.elem_from_str("b").unwrap(), f13.from_int(11));
    }

    #[test]
    fn codec_rejects_bad_input() {
        let f8 = make_field(2, 3).unwrap();
        assert!(f8.elem_from_str("01").is_err()); // wrong length
        assert!(f8.elem_from_str("012").is_err()); // digit out of range
        assert!(f8.elem_from_str("0 1").is_err());
    }

    #[test]
    fn from_signed_wraps_negatives() {
        let f7 = make_field(7, 1).unwrap();
        assert_eq!(f7.from_signed(-3), f7.from_int(4));
        assert_eq!(f7.from_signed(-7), f7.zero());
        assert_eq!(f7.from_signed(10), f7.from_int(3));
    }

    #[test]
    fn construction_errors() {
        assert!(matches!(make_field(4, 1), Err(Error::NotPrime(4))));
        assert!(matches!(make_field(1, 1), Err(Error::NotPrime(1))));
        assert!(matches!(make_field(2, 0), Err(Error::InvalidArgument(_))));
        assert!(matches!(make_field(2, 41), Err(Error::SizeBound { .. })));
        assert!(matches!(make_field(3, 40), Err(Error::SizeBound { .. })));
    }

    #[test]
    #[should_panic(expected = "different context")]
    fn ctx_mismatch_panics() {
        let a = make_field(2, 3).unwrap();
        let b = make_field(2, 3).unwrap();
        let _ = a.add(a.one(), b.one());
    }

    #[test]
    #[should_panic(expected = "division by zero")]
    fn div_by_zero_panics() {
        let f = make_field(5, 1).unwrap();
        let _ = f.div(f.one(), f.zero());
    }

    #[test]
    fn bits_mode_used_above_table_limit() {
        let cfg = FieldConfig {
            table_limit: 4,
            ..FieldConfig::default()
        };
        let f = make_field_with(2, 5, &cfg).unwrap();
        assert!(!f.table_mode());
        // t^5 = t^3 + 1 under the canonical modulus of F_32 — verified
        // against a default-config (table) context below.
        let ft = make_field(2, 5).unwrap();
        assert_eq!(f.modulus(), ft.modulus());
        for a in 0..32 {
            for b in 0..32 {
                assert_eq!(
                    f.mul(f.from_code(a), f.from_code(b)).code(),
                    ft.mul(ft.from_code(a), ft.from_code(b)).code()
                );
            }
        }
    }
}
