//! Finite fields F_{p^deg} with table-driven arithmetic.
//!
//! Elements are packed as the base-p integer `Σ c_i p^i` of their
//! polynomial-basis coordinates, so the prime subfield is exactly the codes
//! `0..p`. Multiplication goes through discrete log/exp tables and addition
//! through a Zech-logarithm table, which keeps the torus-summation kernels
//! free of allocation.

pub mod poly;
mod points;

pub use points::{enumerate_points, PointDomain};

use crate::arith;
use crate::config::Limits;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus is reducible over F_{0}")]
    ReducibleModulus(u64),
    #[error("modulus has degree {got}, expected {expected}")]
    DegreeMismatch { expected: usize, got: usize },
    #[error("modulus must be monic with coefficients in [0, p)")]
    InvalidModulus,
    #[error("field size {p}^{deg} exceeds the configured cap {cap}")]
    TooLarge { p: u64, deg: usize, cap: u64 },
    #[error("coefficient vector {0:?} is not a valid field element")]
    InvalidCoefficients(Vec<u32>),
    #[error("coordinate subset {0:?} is not contained in 1..={1}")]
    InvalidSubset(Vec<usize>, usize),
    #[error("F_{{p^{sub}}} does not embed into F_{{p^{sup}}}")]
    NoEmbedding { sub: usize, sup: usize },
}

/// A field element; only meaningful relative to the [`FieldCtx`] that made it.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElem(u32);

impl FieldElem {
    pub const ZERO: FieldElem = FieldElem(0);
    pub const ONE: FieldElem = FieldElem(1);

    /// Base-p packing of the polynomial-basis coordinates.
    #[inline]
    pub fn code(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

const NO_LOG: u32 = u32::MAX;

/// F_p[t]/(modulus) with precomputed log, exp and Zech tables.
#[derive(Debug)]
pub struct FieldCtx {
    p: u32,
    deg: usize,
    modulus: Vec<u32>,
    size: u32,
    order: u32,
    exp: Vec<u32>,
    log: Vec<u32>,
    zech: Vec<u32>,
}

// Slow coefficient-vector arithmetic over F_p, used for construction only.
fn trim(v: &mut Vec<u32>) {
    while v.len() > 1 && *v.last().unwrap() == 0 {
        v.pop();
    }
    if v.is_empty() {
        v.push(0);
    }
}

fn poly_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    trim(&mut r);
    let mut b = b.to_vec();
    trim(&mut b);
    let db = b.len() - 1;
    if db == 0 {
        return vec![0];
    }
    let lead_inv = arith::modpow(b[db] as u64, p as u64 - 2, p as u64);
    while r.len() > db {
        let dr = r.len() - 1;
        let factor = r[dr] as u64 * lead_inv % p as u64;
        let shift = dr - db;
        for (i, &bc) in b.iter().enumerate() {
            let sub = (factor * bc as u64 % p as u64) as u32;
            r[shift + i] = (r[shift + i] + p - sub) % p;
        }
        trim(&mut r);
    }
    r
}

fn poly_mul_mod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p as u64;
        }
    }
    let prod: Vec<u32> = prod.into_iter().map(|c| c as u32).collect();
    poly_rem(&prod, m, p)
}

fn poly_pow_mod(base: &[u32], mut e: u64, m: &[u32], p: u32) -> Vec<u32> {
    let mut acc = vec![1u32];
    let mut b = poly_rem(base, m, p);
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_mul_mod(&acc, &b, m, p);
        }
        b = poly_mul_mod(&b, &b, m, p);
        e >>= 1;
    }
    acc
}

fn poly_gcd(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    trim(&mut a);
    trim(&mut b);
    while !(b.len() == 1 && b[0] == 0) {
        let r = poly_rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

fn poly_sub(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let len = a.len().max(b.len());
    let mut out: Vec<u32> = (0..len)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect();
    trim(&mut out);
    out
}

/// x^(p^j) mod f, by repeated p-th powering.
fn x_pow_p_iter(f: &[u32], p: u32, j: usize) -> Vec<u32> {
    let mut cur = poly_rem(&[0, 1], f, p);
    for _ in 0..j {
        cur = poly_pow_mod(&cur, p as u64, f, p);
    }
    cur
}

/// Rabin's irreducibility test for a monic polynomial over F_p.
pub(crate) fn is_irreducible_fp(f: &[u32], p: u32) -> bool {
    let d = f.len() - 1;
    if d == 0 {
        return false;
    }
    if d == 1 {
        return true;
    }
    if f[0] == 0 {
        return false;
    }
    // no root in F_p
    for c in 0..p {
        let mut acc = 0u64;
        for &coef in f.iter().rev() {
            acc = (acc * c as u64 + coef as u64) % p as u64;
        }
        if acc == 0 {
            return false;
        }
    }
    let x = vec![0u32, 1];
    if poly_sub(&x_pow_p_iter(f, p, d), &x, p) != vec![0] {
        return false;
    }
    for r in arith::prime_factors(d as u64) {
        let h = poly_sub(&x_pow_p_iter(f, p, d / r as usize), &x, p);
        let g = poly_gcd(f, &h, p);
        if g.len() > 1 {
            return false;
        }
    }
    true
}

fn decode(code: u32, p: u32, deg: usize) -> Vec<u32> {
    let mut c = code;
    (0..deg)
        .map(|_| {
            let d = c % p;
            c /= p;
            d
        })
        .collect()
}

fn encode(coeffs: &[u32], p: u32) -> u32 {
    coeffs.iter().rev().fold(0u32, |acc, &c| acc * p + c)
}

impl FieldCtx {
    /// Builds F_{p^deg}. Without an explicit modulus the smallest monic
    /// irreducible (ordering coefficient lists as base-p integers with the
    /// coefficient of t^{deg-1} most significant) is chosen.
    pub fn new(p: u64, deg: usize, modulus: Option<&[u32]>, limits: &Limits) -> Result<Self, FieldError> {
        if !arith::is_prime(p) || p > u32::MAX as u64 {
            return Err(FieldError::NotPrime(p));
        }
        if deg == 0 {
            return Err(FieldError::DegreeMismatch { expected: 1, got: 0 });
        }
        let size = (p as u128).checked_pow(deg as u32).unwrap_or(u128::MAX);
        if size > limits.max_field_size as u128 || size > u32::MAX as u128 / 2 {
            return Err(FieldError::TooLarge { p, deg, cap: limits.max_field_size });
        }
        let p32 = p as u32;
        let modulus = match modulus {
            Some(m) => {
                if m.len() != deg + 1 {
                    return Err(FieldError::DegreeMismatch { expected: deg, got: m.len().saturating_sub(1) });
                }
                if m[deg] != 1 || m.iter().any(|&c| c >= p32) {
                    return Err(FieldError::InvalidModulus);
                }
                if !is_irreducible_fp(m, p32) {
                    return Err(FieldError::ReducibleModulus(p));
                }
                m.to_vec()
            }
            None => Self::smallest_irreducible(p32, deg),
        };
        Ok(Self::with_tables(p32, deg, modulus, size as u32))
    }

    fn smallest_irreducible(p: u32, deg: usize) -> Vec<u32> {
        let count = p.pow(deg as u32);
        for code in 0..count {
            let mut f = decode(code, p, deg);
            f.push(1);
            if is_irreducible_fp(&f, p) {
                return f;
            }
        }
        unreachable!("irreducible polynomials exist in every degree")
    }

    fn with_tables(p: u32, deg: usize, modulus: Vec<u32>, size: u32) -> Self {
        let order = size - 1;
        let factors = arith::prime_factors(order as u64);
        let mut generator = None;
        for code in 1..size {
            let g = decode(code, p, deg);
            let is_primitive = factors.iter().all(|&r| {
                let v = poly_pow_mod(&g, order as u64 / r, &modulus, p);
                !(v.len() == 1 && v[0] == 1)
            });
            if is_primitive {
                generator = Some(g);
                break;
            }
        }
        let g = generator.expect("multiplicative group is cyclic");
        let mut exp = vec![0u32; order as usize];
        let mut log = vec![NO_LOG; size as usize];
        let mut cur = vec![1u32];
        for i in 0..order {
            let mut padded = cur.clone();
            padded.resize(deg, 0);
            let code = encode(&padded, p);
            exp[i as usize] = code;
            log[code as usize] = i;
            cur = poly_mul_mod(&cur, &g, &modulus, p);
        }
        let mut zech = vec![NO_LOG; order as usize];
        for d in 0..order {
            let v = exp[d as usize];
            let digit0 = v % p;
            let one_plus = v - digit0 + (digit0 + 1) % p;
            zech[d as usize] = log[one_plus as usize];
        }
        FieldCtx { p, deg, modulus, size, order, exp, log, zech }
    }

    pub fn p(&self) -> u64 {
        self.p as u64
    }

    /// Extension degree over F_p.
    pub fn deg(&self) -> usize {
        self.deg
    }

    pub fn size(&self) -> u64 {
        self.size as u64
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn zero(&self) -> FieldElem {
        FieldElem::ZERO
    }

    pub fn one(&self) -> FieldElem {
        FieldElem::ONE
    }

    pub fn from_int(&self, v: i64) -> FieldElem {
        FieldElem(v.rem_euclid(self.p as i64) as u32)
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<FieldElem, FieldError> {
        if coeffs.len() > self.deg || coeffs.iter().any(|&c| c >= self.p) {
            return Err(FieldError::InvalidCoefficients(coeffs.to_vec()));
        }
        Ok(FieldElem(encode(coeffs, self.p)))
    }

    pub fn coeffs(&self, x: FieldElem) -> Vec<u32> {
        decode(x.0, self.p, self.deg)
    }

    /// Element with the given packed code, if in range.
    pub fn elem(&self, code: u32) -> Option<FieldElem> {
        (code < self.size).then_some(FieldElem(code))
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElem> {
        (0..self.size).map(FieldElem)
    }

    pub fn generator(&self) -> FieldElem {
        FieldElem(self.exp[if self.order > 1 { 1 } else { 0 }])
    }

    /// Discrete log to the table generator; `None` for zero.
    #[inline]
    pub fn log(&self, x: FieldElem) -> Option<u32> {
        let l = self.log[x.0 as usize];
        (l != NO_LOG).then_some(l)
    }

    /// g^e for the table generator g, e taken mod |F^×|.
    #[inline]
    pub fn exp(&self, e: u64) -> FieldElem {
        FieldElem(self.exp[(e % self.order as u64) as usize])
    }

    /// Order of the multiplicative group.
    pub fn unit_order(&self) -> u64 {
        self.order as u64
    }

    #[inline]
    pub fn add(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        if a.0 == 0 {
            return b;
        }
        if b.0 == 0 {
            return a;
        }
        if self.p == 2 {
            return FieldElem(a.0 ^ b.0);
        }
        let la = self.log[a.0 as usize];
        let lb = self.log[b.0 as usize];
        let d = if lb >= la { lb - la } else { lb + self.order - la };
        let z = self.zech[d as usize];
        if z == NO_LOG {
            return FieldElem::ZERO;
        }
        let s = la as u64 + z as u64;
        FieldElem(self.exp[(s % self.order as u64) as usize])
    }

    #[inline]
    pub fn neg(&self, a: FieldElem) -> FieldElem {
        if a.0 == 0 || self.p == 2 {
            return a;
        }
        let half = self.order / 2;
        let la = self.log[a.0 as usize] as u64;
        FieldElem(self.exp[((la + half as u64) % self.order as u64) as usize])
    }

    #[inline]
    pub fn sub(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        if a.0 == 0 || b.0 == 0 {
            return FieldElem::ZERO;
        }
        let s = self.log[a.0 as usize] as u64 + self.log[b.0 as usize] as u64;
        FieldElem(self.exp[(s % self.order as u64) as usize])
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: FieldElem) -> Option<FieldElem> {
        let la = self.log(a)? as u64;
        Some(FieldElem(self.exp[((self.order as u64 - la) % self.order as u64) as usize]))
    }

    /// a^e for any integer e; negative exponents require a != 0.
    pub fn pow(&self, a: FieldElem, e: i64) -> Option<FieldElem> {
        if e == 0 {
            return Some(FieldElem::ONE);
        }
        match self.log(a) {
            None => (e > 0).then_some(FieldElem::ZERO),
            Some(la) => {
                let ord = self.order as i128;
                let s = (la as i128 * e as i128).rem_euclid(ord);
                Some(FieldElem(self.exp[s as usize]))
            }
        }
    }

    /// x^(p^j).
    pub fn frobenius(&self, x: FieldElem, j: u64) -> FieldElem {
        match self.log(x) {
            None => FieldElem::ZERO,
            Some(lx) => {
                let pj = arith::modpow(self.p as u64, j, self.order as u64);
                let s = (lx as u128 * pj as u128 % self.order as u128) as usize;
                FieldElem(self.exp[s])
            }
        }
    }

    /// Absolute trace Σ_{j<deg} x^(p^j), an element of F_p.
    pub fn absolute_trace(&self, x: FieldElem) -> FieldElem {
        (0..self.deg as u64).fold(FieldElem::ZERO, |acc, j| self.add(acc, self.frobenius(x, j)))
    }

    #[inline]
    pub fn in_prime_subfield(&self, x: FieldElem) -> bool {
        x.0 < self.p
    }

    /// Smallest e with x in F_{p^e} (so e divides deg).
    pub fn subfield_degree(&self, x: FieldElem) -> usize {
        match self.log(x) {
            None => 1,
            Some(lx) => {
                for e in arith::divisors(self.deg as u64) {
                    let sub = arith::pow_u64(self.p as u64, e as u32) - 1;
                    let step = self.order as u64 / sub;
                    if (lx as u64).is_multiple_of(step) {
                        return e as usize;
                    }
                }
                self.deg
            }
        }
    }

    /// The ring map F_{p^sub} -> self sending the source generator t to the
    /// smallest (by code) root of the source modulus.
    pub fn embedding_from(&self, src: &FieldCtx) -> Result<Embedding, FieldError> {
        if src.p != self.p || !self.deg.is_multiple_of(src.deg) {
            return Err(FieldError::NoEmbedding { sub: src.deg, sup: self.deg });
        }
        if src.deg == 1 {
            return Ok(Embedding { images: (0..src.size).map(FieldElem).collect() });
        }
        let root = self
            .elements()
            .find(|&x| {
                let value = src
                    .modulus
                    .iter()
                    .rev()
                    .fold(FieldElem::ZERO, |acc, &c| self.add(self.mul(acc, x), self.from_int(c as i64)));
                value.is_zero()
            })
            .ok_or(FieldError::NoEmbedding { sub: src.deg, sup: self.deg })?;
        let images = src
            .elements()
            .map(|e| {
                src.coeffs(e).iter().rev().fold(FieldElem::ZERO, |acc, &c| {
                    self.add(self.mul(acc, root), self.from_int(c as i64))
                })
            })
            .collect();
        Ok(Embedding { images })
    }
}

/// A field embedding tabulated on the (small) source field.
#[derive(Clone, Debug)]
pub struct Embedding {
    images: Vec<FieldElem>,
}

impl Embedding {
    #[inline]
    pub fn apply(&self, x: FieldElem) -> FieldElem {
        self.images[x.0 as usize]
    }
}

/// Builds a field context, using the default limits.
pub fn build_field(p: u64, deg: usize, modulus: Option<&[u32]>) -> Result<FieldCtx, FieldError> {
    FieldCtx::new(p, deg, modulus, &Limits::default())
}
