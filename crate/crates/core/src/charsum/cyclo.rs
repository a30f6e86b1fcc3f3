use crate::arith::pow_u64;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::Rational64;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};
use std::ops::{Add, Mul, Neg, Sub};

/// An element of Z[ζ] with ζ a primitive p^m-th root of unity, in the power
/// basis 1, ζ, …, ζ^{φ-1}, φ = p^{m-1}(p-1).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CyclotomicInt {
    p: u64,
    m: usize,
    coords: Vec<BigInt>,
}

fn phi(p: u64, m: usize) -> usize {
    (pow_u64(p, m as u32 - 1) * (p - 1)) as usize
}

/// Writes integers as JSON numbers when they fit in i64, decimal strings otherwise.
pub(crate) fn serialize_bigints<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for x in v {
        match x.to_i64() {
            Some(i) => seq.serialize_element(&i)?,
            None => seq.serialize_element(&x.to_string())?,
        }
    }
    seq.end()
}

impl Serialize for CyclotomicInt {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        serialize_bigints(&self.coords, s)
    }
}

impl CyclotomicInt {
    pub fn zero(p: u64, m: usize) -> Self {
        CyclotomicInt { p, m, coords: vec![BigInt::zero(); phi(p, m)] }
    }

    pub fn from_int(p: u64, m: usize, v: impl Into<BigInt>) -> Self {
        let mut z = Self::zero(p, m);
        z.coords[0] = v.into();
        z
    }

    pub fn one(p: u64, m: usize) -> Self {
        Self::from_int(p, m, 1)
    }

    /// Reduces a coefficient vector of any length modulo Φ_{p^m}.
    pub fn from_coeffs(p: u64, m: usize, coeffs: Vec<BigInt>) -> Self {
        let order = pow_u64(p, m as u32) as usize;
        let f = phi(p, m);
        let step = order / p as usize;
        let mut v = vec![BigInt::zero(); order.max(f)];
        for (i, c) in coeffs.into_iter().enumerate() {
            v[i % order] += c;
        }
        // ζ^φ = −Σ_{j<p-1} ζ^{j·p^{m-1}}
        for i in (f..v.len()).rev() {
            if v[i].is_zero() {
                continue;
            }
            let c = std::mem::take(&mut v[i]);
            for j in 0..p as usize - 1 {
                v[i - f + j * step] -= &c;
            }
        }
        v.truncate(f);
        CyclotomicInt { p, m, coords: v }
    }

    /// ζ^e, the character value at the residue e.
    pub fn zeta_pow(p: u64, m: usize, e: u64) -> Self {
        let order = pow_u64(p, m as u32);
        let mut v = vec![BigInt::zero(); (e % order) as usize + 1];
        v[(e % order) as usize] = BigInt::one();
        Self::from_coeffs(p, m, v)
    }

    /// Σ_c N_c ζ^{s·c} for a residue histogram N.
    pub fn from_profile(p: u64, m: usize, profile: &[u64], twist: u64) -> Self {
        let order = pow_u64(p, m as u32);
        let mut v = vec![BigInt::zero(); order as usize];
        for (c, &nc) in profile.iter().enumerate() {
            v[((c as u64 * twist) % order) as usize] += BigInt::from(nc);
        }
        Self::from_coeffs(p, m, v)
    }

    pub fn p(&self) -> u64 {
        self.p
    }
    pub fn m(&self) -> usize {
        self.m
    }
    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    /// The rational integer this element equals, if it lies in Z.
    pub fn as_integer(&self) -> Option<&BigInt> {
        self.coords[1..].iter().all(|c| c.is_zero()).then(|| &self.coords[0])
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        CyclotomicInt { p: self.p, m: self.m, coords: self.coords.iter().map(|c| c * k).collect() }
    }

    /// Exact division of every coordinate by k, if possible.
    pub fn div_exact(&self, k: &BigInt) -> Option<Self> {
        let mut coords = Vec::with_capacity(self.coords.len());
        for c in &self.coords {
            let (q, r) = c.div_rem(k);
            if !r.is_zero() {
                return None;
            }
            coords.push(q);
        }
        Some(CyclotomicInt { p: self.p, m: self.m, coords })
    }

    /// gcd of all coordinates (0 for the zero element).
    pub fn content(&self) -> BigInt {
        self.coords.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// The Galois conjugate ζ ↦ ζ^s, s coprime to p.
    pub fn galois(&self, s: u64) -> Self {
        let order = pow_u64(self.p, self.m as u32);
        let mut v = vec![BigInt::zero(); order as usize];
        for (i, c) in self.coords.iter().enumerate() {
            v[((i as u64 * s) % order) as usize] += c;
        }
        Self::from_coeffs(self.p, self.m, v)
    }

    /// Units of Z/p^m, the Galois group.
    pub fn galois_group(p: u64, m: usize) -> impl Iterator<Item = u64> {
        (1..pow_u64(p, m as u32)).filter(move |s| s % p != 0)
    }

    /// Product of all Galois conjugates other than the identity.
    pub fn conjugate_product(&self) -> Self {
        Self::galois_group(self.p, self.m).skip(1).fold(Self::one(self.p, self.m), |acc, s| &acc * &self.galois(s))
    }

    /// Field norm to Q.
    pub fn norm(&self) -> BigInt {
        let prod = self * &self.conjugate_product();
        prod.as_integer().cloned().expect("the norm is a rational integer")
    }

    /// ord_p, normalized so that ord_p(p) = 1; `None` for zero.
    pub fn p_order(&self) -> Option<Rational64> {
        if self.is_zero() {
            return None;
        }
        let mut n = self.norm().abs();
        let p = BigInt::from(self.p);
        let mut v = 0i64;
        while (&n % &p).is_zero() {
            n /= &p;
            v += 1;
        }
        Some(Rational64::new(v, phi(self.p, self.m) as i64))
    }

    /// The principal complex embedding ζ ↦ exp(2πi/p^m), with a bound on the
    /// floating-point error.
    pub fn embed_complex(&self) -> (Complex64, f64) {
        let order = pow_u64(self.p, self.m as u32) as f64;
        let mut z = Complex64::new(0.0, 0.0);
        let mut mag = 0.0;
        for (i, c) in self.coords.iter().enumerate() {
            let cf = c.to_f64().unwrap_or(f64::INFINITY);
            let ang = 2.0 * std::f64::consts::PI * i as f64 / order;
            z += Complex64::from_polar(cf, ang);
            mag += cf.abs();
        }
        (z, mag * 4.0 * f64::EPSILON * (self.coords.len() as f64 + 1.0))
    }

    fn check(&self, o: &Self) {
        assert!(self.p == o.p && self.m == o.m, "cyclotomic ring mismatch");
    }
}

impl Add for &CyclotomicInt {
    type Output = CyclotomicInt;
    fn add(self, o: &CyclotomicInt) -> CyclotomicInt {
        self.check(o);
        CyclotomicInt { p: self.p, m: self.m, coords: self.coords.iter().zip(&o.coords).map(|(a, b)| a + b).collect() }
    }
}

impl Sub for &CyclotomicInt {
    type Output = CyclotomicInt;
    fn sub(self, o: &CyclotomicInt) -> CyclotomicInt {
        self.check(o);
        CyclotomicInt { p: self.p, m: self.m, coords: self.coords.iter().zip(&o.coords).map(|(a, b)| a - b).collect() }
    }
}

impl Neg for &CyclotomicInt {
    type Output = CyclotomicInt;
    fn neg(self) -> CyclotomicInt {
        CyclotomicInt { p: self.p, m: self.m, coords: self.coords.iter().map(|a| -a).collect() }
    }
}

impl Mul for &CyclotomicInt {
    type Output = CyclotomicInt;
    fn mul(self, o: &CyclotomicInt) -> CyclotomicInt {
        self.check(o);
        let mut v = vec![BigInt::zero(); 2 * self.coords.len()];
        for (i, a) in self.coords.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coords.iter().enumerate() {
                if !b.is_zero() {
                    v[i + j] += a * b;
                }
            }
        }
        CyclotomicInt::from_coeffs(self.p, self.m, v)
    }
}

/// An element of Q(ζ) as numerator / positive integer denominator, in lowest terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycloRat {
    num: CyclotomicInt,
    den: BigInt,
}

impl Serialize for CycloRat {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("CycloRat", 2)?;
        st.serialize_field("num", &self.num)?;
        st.serialize_field("den", &self.den.to_string())?;
        st.end()
    }
}

impl From<CyclotomicInt> for CycloRat {
    fn from(num: CyclotomicInt) -> Self {
        CycloRat { num, den: BigInt::one() }
    }
}

impl CycloRat {
    pub fn new(num: CyclotomicInt, den: BigInt) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let mut r = CycloRat { num, den };
        r.normalize();
        r
    }

    fn normalize(&mut self) {
        if self.den.is_negative() {
            self.den = -&self.den;
            self.num = -&self.num;
        }
        let g = self.num.content().gcd(&self.den);
        if !g.is_one() && !g.is_zero() {
            self.num = self.num.div_exact(&g).unwrap();
            self.den = &self.den / &g;
        }
        if self.num.is_zero() {
            self.den = BigInt::one();
        }
    }

    pub fn zero(p: u64, m: usize) -> Self {
        CyclotomicInt::zero(p, m).into()
    }
    pub fn one(p: u64, m: usize) -> Self {
        CyclotomicInt::one(p, m).into()
    }
    pub fn numerator(&self) -> &CyclotomicInt {
        &self.num
    }
    pub fn denominator(&self) -> &BigInt {
        &self.den
    }
    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    pub fn to_integral(&self) -> Option<CyclotomicInt> {
        self.den.is_one().then(|| self.num.clone())
    }
    pub fn div_int(&self, k: &BigInt) -> Self {
        CycloRat::new(self.num.clone(), &self.den * k)
    }
    pub fn galois(&self, s: u64) -> Self {
        CycloRat { num: self.num.galois(s), den: self.den.clone() }
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let conj = self.num.conjugate_product();
        let norm = (&self.num * &conj).as_integer().cloned().expect("norm is rational");
        Some(CycloRat::new(conj.scale(&self.den), norm))
    }

    /// ord_p; `None` for zero.
    pub fn p_order(&self) -> Option<Rational64> {
        let v = self.num.p_order()?;
        let mut d = self.den.clone();
        let p = BigInt::from(self.num.p);
        let mut e = 0i64;
        while (&d % &p).is_zero() {
            d /= &p;
            e += 1;
        }
        Some(v - Rational64::from_integer(e))
    }
}

impl Add for &CycloRat {
    type Output = CycloRat;
    fn add(self, o: &CycloRat) -> CycloRat {
        CycloRat::new(&self.num.scale(&o.den) + &o.num.scale(&self.den), &self.den * &o.den)
    }
}

impl Sub for &CycloRat {
    type Output = CycloRat;
    fn sub(self, o: &CycloRat) -> CycloRat {
        CycloRat::new(&self.num.scale(&o.den) - &o.num.scale(&self.den), &self.den * &o.den)
    }
}

impl Neg for &CycloRat {
    type Output = CycloRat;
    fn neg(self) -> CycloRat {
        CycloRat { num: -&self.num, den: self.den.clone() }
    }
}

impl Mul for &CycloRat {
    type Output = CycloRat;
    fn mul(self, o: &CycloRat) -> CycloRat {
        CycloRat::new(&self.num * &o.num, &self.den * &o.den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ci(p: u64, m: usize, v: &[i64]) -> CyclotomicInt {
        CyclotomicInt::from_coeffs(p, m, v.iter().map(|&x| BigInt::from(x)).collect())
    }

    #[test]
    fn character_values() {
        assert_eq!(CyclotomicInt::zeta_pow(2, 2, 0), CyclotomicInt::one(2, 2));
        assert_eq!(CyclotomicInt::zeta_pow(2, 2, 3), ci(2, 2, &[0, -1]));
        assert_eq!(CyclotomicInt::zeta_pow(3, 1, 2), ci(3, 1, &[-1, -1]));
        // ζ_9^6 = −1 − ζ^3
        assert_eq!(CyclotomicInt::zeta_pow(3, 2, 6), ci(3, 2, &[-1, 0, 0, -1]));
        let z = CyclotomicInt::zeta_pow(3, 2, 1);
        let mut acc = CyclotomicInt::one(3, 2);
        for _ in 0..9 {
            acc = &acc * &z;
        }
        assert_eq!(acc, CyclotomicInt::one(3, 2));
    }

    #[test]
    fn norms_and_orders() {
        assert_eq!(ci(2, 2, &[1, 1]).norm(), BigInt::from(2));
        assert_eq!(ci(2, 2, &[1, 1]).p_order(), Some(Rational64::new(1, 2)));
        assert_eq!(CyclotomicInt::zeta_pow(3, 2, 4).p_order(), Some(Rational64::from_integer(0)));
        assert_eq!(ci(2, 1, &[-2]).p_order(), Some(Rational64::from_integer(1)));
        // 1 − ζ_9 has ord_3 = 1/6
        assert_eq!(ci(3, 2, &[1, -1]).p_order(), Some(Rational64::new(1, 6)));
        assert_eq!(CyclotomicInt::zero(3, 1).p_order(), None);
    }

    #[test]
    fn rational_inverse() {
        let x: CycloRat = ci(3, 2, &[2, 1, 0, 5]).into();
        let inv = x.inv().unwrap();
        assert_eq!(&x * &inv, CycloRat::one(3, 2));
        let h = CycloRat::new(ci(2, 2, &[2, 4]), BigInt::from(6));
        assert_eq!(h.denominator(), &BigInt::from(3));
        assert_eq!((&h - &h), CycloRat::zero(2, 2));
    }

    #[test]
    fn embedding_and_galois() {
        let (z, err) = CyclotomicInt::zeta_pow(2, 2, 1).embed_complex();
        assert!((z - Complex64::new(0.0, 1.0)).norm() < 1e-15 && err < 1e-14);
        let (w, _) = ci(2, 2, &[-1, -2]).embed_complex();
        assert!((w - Complex64::new(-1.0, -2.0)).norm() < 1e-14);
        let x = ci(3, 2, &[1, 2, 3, 4, 5, 6]);
        assert_eq!(x.galois(1), x);
        assert_eq!(x.galois(2).galois(5), x);
        assert_eq!(CyclotomicInt::from_profile(2, 2, &[0, 0, 1, 2], 1), ci(2, 2, &[-1, -2]));
    }
}
