//! Length-m Witt vectors over an arbitrary commutative coefficient ring.
//!
//! Ring operations come from the universal integer polynomials of W_m, so the
//! same code path serves finite fields, Laurent-polynomial rings and Z.

mod decompose;
pub mod intpoly;
mod laurent;
mod trace;
mod universal;

pub use decompose::{decompose, reassemble, DecomposedWitt, WittTerm};
pub use laurent::{LaurentPoly, LaurentRing, WittLaurent};
pub use trace::{teichmuller_residue, witt_fp_to_residue, witt_trace, TraceKernel};
pub use universal::{ghost_components, ghost_poly, universal_witt_polys, FieldWittAdder, UnivWittPolys};

use crate::ffield::{FieldCtx, FieldElem};
use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use std::fmt::Debug;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WittError {
    #[error("Witt length {m} outside the supported range 1..={cap}")]
    CapExceeded { m: usize, cap: usize },
    #[error("ring mismatch: {0}")]
    RingMismatch(String),
    #[error("level {level} out of range for Witt length {m}")]
    LevelOutOfRange { level: usize, m: usize },
    #[error("lambda embedding needs a nonzero coefficient")]
    ZeroCoefficient,
    #[error("Witt trace has a coordinate outside F_p")]
    TraceNotRational,
    #[error("Witt vector has a coordinate outside the prime field")]
    NotPrimeField,
    #[error("ghost inversion produced a non-integral coordinate {index} for p = {p}")]
    NonIntegral { p: u64, index: usize },
    #[error("intermediate Laurent polynomial exceeds {cap} monomials")]
    MonomialCapExceeded { cap: usize },
    #[error("first Witt coordinate must be a non-constant Laurent polynomial")]
    ConstantFirstCoordinate,
    #[error("exponent vector {0:?} does not have the ambient dimension {1}")]
    DimensionMismatch(Vec<i64>, usize),
    #[error("decomposition residue has a nonzero coordinate below level {0}")]
    DecompositionInconsistent(usize),
}

/// A commutative ring with identity, as needed to evaluate universal polynomials.
pub trait CoeffRing {
    type Elem: Clone + PartialEq + Debug;

    /// 0 for characteristic zero.
    fn characteristic(&self) -> u64;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem, WittError>;
    fn from_integer(&self, c: &BigInt) -> Self::Elem;

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Result<Self::Elem, WittError> {
        let mut acc = self.one();
        let mut base = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base)?;
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base)?;
            }
        }
        Ok(acc)
    }
}

/// The integers.
#[derive(Clone, Copy, Debug, Default)]
pub struct IntegerRing;

impl CoeffRing for IntegerRing {
    type Elem = BigInt;
    fn characteristic(&self) -> u64 {
        0
    }
    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> Result<BigInt, WittError> {
        Ok(a * b)
    }
    fn from_integer(&self, c: &BigInt) -> BigInt {
        c.clone()
    }
}

/// A finite field viewed as a coefficient ring.
#[derive(Clone, Copy, Debug)]
pub struct FieldRing<'a> {
    ctx: &'a FieldCtx,
}

impl<'a> FieldRing<'a> {
    pub fn new(ctx: &'a FieldCtx) -> Self {
        FieldRing { ctx }
    }
    pub fn ctx(&self) -> &'a FieldCtx {
        self.ctx
    }
}

pub(crate) fn reduce_integer(c: &BigInt, p: u64) -> i64 {
    let p = BigInt::from(p);
    (((c % &p) + &p) % &p).to_i64().unwrap()
}

impl CoeffRing for FieldRing<'_> {
    type Elem = FieldElem;
    fn characteristic(&self) -> u64 {
        self.ctx.p()
    }
    fn zero(&self) -> FieldElem {
        FieldElem::ZERO
    }
    fn one(&self) -> FieldElem {
        FieldElem::ONE
    }
    fn is_zero(&self, a: &FieldElem) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        self.ctx.add(*a, *b)
    }
    fn neg(&self, a: &FieldElem) -> FieldElem {
        self.ctx.neg(*a)
    }
    fn mul(&self, a: &FieldElem, b: &FieldElem) -> Result<FieldElem, WittError> {
        Ok(self.ctx.mul(*a, *b))
    }
    fn from_integer(&self, c: &BigInt) -> FieldElem {
        self.ctx.from_int(reduce_integer(c, self.ctx.p()))
    }
    fn pow(&self, a: &FieldElem, e: u64) -> Result<FieldElem, WittError> {
        Ok(self.ctx.pow(*a, e as i64).unwrap())
    }
}

/// A Witt vector of length `coords.len()`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WittElem<E> {
    pub coords: Vec<E>,
}

impl<E: Clone> WittElem<E> {
    pub fn new(coords: Vec<E>) -> Self {
        WittElem { coords }
    }
    pub fn len(&self) -> usize {
        self.coords.len()
    }
    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }
}

pub fn witt_zero<R: CoeffRing>(ring: &R, m: usize) -> WittElem<R::Elem> {
    WittElem::new(vec![ring.zero(); m])
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WittOp {
    Add,
    Mul,
    Neg,
}

/// Coordinatewise evaluation of the universal polynomials of `op`.
pub fn witt_arith<R: CoeffRing>(
    op: WittOp,
    x: &WittElem<R::Elem>,
    y: Option<&WittElem<R::Elem>>,
    ring: &R,
    polys: &UnivWittPolys,
) -> Result<WittElem<R::Elem>, WittError> {
    let m = polys.m;
    let c = ring.characteristic();
    if c != 0 && c != polys.p {
        return Err(WittError::RingMismatch(format!("ring characteristic {c} but Witt prime {}", polys.p)));
    }
    if x.len() != m {
        return Err(WittError::RingMismatch(format!("operand has length {} but m = {m}", x.len())));
    }
    let mut vals = x.coords.clone();
    match (op, y) {
        (WittOp::Neg, _) => vals.extend(std::iter::repeat_n(ring.zero(), m)),
        (_, Some(y)) if y.len() == m => vals.extend(y.coords.iter().cloned()),
        (_, Some(y)) => {
            return Err(WittError::RingMismatch(format!("operand has length {} but m = {m}", y.len())))
        }
        (_, None) => return Err(WittError::RingMismatch("binary operation needs two operands".into())),
    }
    let table = match op {
        WittOp::Add => &polys.sum_polys,
        WittOp::Mul => &polys.prod_polys,
        WittOp::Neg => &polys.neg_polys,
    };
    let coords = table.iter().map(|poly| poly.eval(ring, &vals)).collect::<Result<_, _>>()?;
    Ok(WittElem::new(coords))
}

pub fn witt_add<R: CoeffRing>(
    x: &WittElem<R::Elem>,
    y: &WittElem<R::Elem>,
    ring: &R,
    polys: &UnivWittPolys,
) -> Result<WittElem<R::Elem>, WittError> {
    witt_arith(WittOp::Add, x, Some(y), ring, polys)
}

pub fn witt_sub<R: CoeffRing>(
    x: &WittElem<R::Elem>,
    y: &WittElem<R::Elem>,
    ring: &R,
    polys: &UnivWittPolys,
) -> Result<WittElem<R::Elem>, WittError> {
    let ny = witt_arith(WittOp::Neg, y, None, ring, polys)?;
    witt_add(x, &ny, ring, polys)
}

/// λ_i(a x^u): a·x^u on axis i, zero elsewhere.
pub fn lambda_embed(ring: &LaurentRing<'_>, m: usize, level: usize, a: FieldElem, u: &[i64]) -> Result<WittElem<LaurentPoly>, WittError> {
    if level >= m {
        return Err(WittError::LevelOutOfRange { level, m });
    }
    if a.is_zero() {
        return Err(WittError::ZeroCoefficient);
    }
    if u.len() != ring.nvars() {
        return Err(WittError::DimensionMismatch(u.to_vec(), ring.nvars()));
    }
    let mut coords = vec![LaurentPoly::zero(); m];
    coords[level] = LaurentPoly::monomial(u.to_vec(), a);
    Ok(WittElem::new(coords))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffield::build_field;

    #[test]
    fn add_over_f4() {
        let f4 = build_field(2, 2, Some(&[1, 1, 1])).unwrap();
        let ring = FieldRing::new(&f4);
        let polys = universal_witt_polys(2, 2, 4).unwrap();
        let t = f4.from_coeffs(&[0, 1]).unwrap();
        let t2 = f4.mul(t, t);
        let s = witt_add(&WittElem::new(vec![t, FieldElem::ZERO]), &WittElem::new(vec![t2, FieldElem::ZERO]), &ring, &polys).unwrap();
        assert_eq!(s.coords, vec![FieldElem::ONE, FieldElem::ONE]);
        let zero = witt_zero(&ring, 2);
        let x = WittElem::new(vec![t, t2]);
        assert_eq!(witt_add(&x, &zero, &ring, &polys).unwrap(), x);
    }

    #[test]
    fn ring_mismatch() {
        let f3 = build_field(3, 1, None).unwrap();
        let ring = FieldRing::new(&f3);
        let polys = universal_witt_polys(2, 2, 4).unwrap();
        let x = WittElem::new(vec![FieldElem::ONE, FieldElem::ONE]);
        assert!(matches!(witt_add(&x, &x, &ring, &polys), Err(WittError::RingMismatch(_))));
        let polys3 = universal_witt_polys(3, 2, 4).unwrap();
        let short = WittElem::new(vec![FieldElem::ONE]);
        assert!(matches!(witt_add(&x, &short, &ring, &polys3), Err(WittError::RingMismatch(_))));
        assert!(matches!(witt_arith(WittOp::Mul, &x, None, &ring, &polys3), Err(WittError::RingMismatch(_))));
    }

    #[test]
    fn negation_over_integers_matches_ghost() {
        let polys = universal_witt_polys(2, 3, 4).unwrap();
        let x = WittElem::new(vec![BigInt::from(3), BigInt::from(-2), BigInt::from(5)]);
        let nx = witt_arith(WittOp::Neg, &x, None, &IntegerRing, &polys).unwrap();
        let gx = ghost_components(2, &x.coords);
        let gn = ghost_components(2, &nx.coords);
        for (a, b) in gx.iter().zip(&gn) {
            assert_eq!(a, &-b);
        }
    }

    #[test]
    fn lambda_examples() {
        let f2 = build_field(2, 1, None).unwrap();
        let ring = LaurentRing::new(&f2, 1, 1000);
        let v = lambda_embed(&ring, 2, 1, FieldElem::ONE, &[1]).unwrap();
        assert!(v.coords[0].is_zero());
        assert_eq!(v.coords[1], LaurentPoly::monomial(vec![1], FieldElem::ONE));
        let c = lambda_embed(&ring, 3, 2, FieldElem::ONE, &[0]).unwrap();
        assert_eq!(c.coords[2], LaurentPoly::monomial(vec![0], FieldElem::ONE));
        assert!(matches!(lambda_embed(&ring, 2, 2, FieldElem::ONE, &[1]), Err(WittError::LevelOutOfRange { .. })));
    }
}
