use super::{reduce_integer, CoeffRing, WittElem, WittError};
use crate::ffield::{FieldCtx, FieldElem};
use num_bigint::BigInt;
use std::collections::BTreeMap;
use std::sync::Arc;

/// Sparse Laurent polynomial: exponent vector -> nonzero coefficient.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    terms: BTreeMap<Vec<i64>, FieldElem>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly { terms: BTreeMap::new() }
    }

    pub fn monomial(u: Vec<i64>, c: FieldElem) -> Self {
        let mut p = Self::zero();
        if !c.is_zero() {
            p.terms.insert(u, c);
        }
        p
    }

    /// Builds from (exponent, coefficient) pairs; repeated exponents accumulate.
    pub fn from_terms(ctx: &FieldCtx, terms: impl IntoIterator<Item = (Vec<i64>, FieldElem)>) -> Self {
        let mut p = Self::zero();
        for (u, c) in terms {
            p.add_term(ctx, u, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i64>, &FieldElem)> {
        self.terms.iter()
    }

    pub fn coeff(&self, u: &[i64]) -> FieldElem {
        self.terms.get(u).copied().unwrap_or(FieldElem::ZERO)
    }

    /// True when some monomial has a nonzero exponent.
    pub fn is_nonconstant(&self) -> bool {
        self.terms.keys().any(|u| u.iter().any(|&e| e != 0))
    }

    fn add_term(&mut self, ctx: &FieldCtx, u: Vec<i64>, c: FieldElem) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(u.clone()).or_insert(FieldElem::ZERO);
        *entry = ctx.add(*entry, c);
        if entry.is_zero() {
            self.terms.remove(&u);
        }
    }

    /// Applies `g` to every coefficient (e.g. a field embedding or Frobenius).
    pub fn map_coeffs(&self, mut g: impl FnMut(FieldElem) -> FieldElem) -> LaurentPoly {
        let terms = self
            .terms
            .iter()
            .map(|(u, &c)| (u.clone(), g(c)))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        LaurentPoly { terms }
    }

    /// Value at a point; `None` when a zero coordinate meets a negative exponent.
    pub fn eval(&self, ctx: &FieldCtx, x: &[FieldElem]) -> Option<FieldElem> {
        let mut acc = FieldElem::ZERO;
        for (u, &c) in &self.terms {
            let mut t = c;
            for (&xi, &e) in x.iter().zip(u) {
                t = ctx.mul(t, ctx.pow(xi, e)?);
            }
            acc = ctx.add(acc, t);
        }
        Some(acc)
    }
}

/// F_q[x_1^{±1}, …, x_n^{±1}] with a cap on intermediate support sizes.
#[derive(Clone, Copy, Debug)]
pub struct LaurentRing<'a> {
    ctx: &'a FieldCtx,
    nvars: usize,
    max_monomials: usize,
}

impl<'a> LaurentRing<'a> {
    pub fn new(ctx: &'a FieldCtx, nvars: usize, max_monomials: usize) -> Self {
        LaurentRing { ctx, nvars, max_monomials }
    }
    pub fn nvars(&self) -> usize {
        self.nvars
    }
    pub fn ctx(&self) -> &'a FieldCtx {
        self.ctx
    }
}

impl CoeffRing for LaurentRing<'_> {
    type Elem = LaurentPoly;

    fn characteristic(&self) -> u64 {
        self.ctx.p()
    }
    fn zero(&self) -> LaurentPoly {
        LaurentPoly::zero()
    }
    fn one(&self) -> LaurentPoly {
        LaurentPoly::monomial(vec![0; self.nvars], FieldElem::ONE)
    }
    fn is_zero(&self, a: &LaurentPoly) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
        let mut out = a.clone();
        for (u, &c) in &b.terms {
            out.add_term(self.ctx, u.clone(), c);
        }
        out
    }
    fn neg(&self, a: &LaurentPoly) -> LaurentPoly {
        a.map_coeffs(|c| self.ctx.neg(c))
    }
    fn mul(&self, a: &LaurentPoly, b: &LaurentPoly) -> Result<LaurentPoly, WittError> {
        let mut out = LaurentPoly::zero();
        for (u, &c) in &a.terms {
            for (v, &d) in &b.terms {
                let w: Vec<i64> = u.iter().zip(v).map(|(x, y)| x + y).collect();
                out.add_term(self.ctx, w, self.ctx.mul(c, d));
            }
            if out.len() > self.max_monomials {
                return Err(WittError::MonomialCapExceeded { cap: self.max_monomials });
            }
        }
        Ok(out)
    }
    fn from_integer(&self, c: &BigInt) -> LaurentPoly {
        LaurentPoly::monomial(vec![0; self.nvars], self.ctx.from_int(reduce_integer(c, self.ctx.p())))
    }
}

/// f ∈ W_m(F_q[x^{±1}]) given by its m coordinate Laurent polynomials.
#[derive(Clone, Debug)]
pub struct WittLaurent {
    field: Arc<FieldCtx>,
    n: usize,
    coords: Vec<LaurentPoly>,
}

impl WittLaurent {
    /// Validates dimensions and the non-constant first coordinate.
    pub fn new(field: Arc<FieldCtx>, n: usize, coords: Vec<LaurentPoly>) -> Result<Self, WittError> {
        if coords.is_empty() {
            return Err(WittError::CapExceeded { m: 0, cap: 0 });
        }
        for c in &coords {
            if let Some((u, _)) = c.terms().find(|(u, _)| u.len() != n) {
                return Err(WittError::DimensionMismatch(u.clone(), n));
            }
        }
        if !coords[0].is_nonconstant() {
            return Err(WittError::ConstantFirstCoordinate);
        }
        Ok(WittLaurent { field, n, coords })
    }

    pub fn field(&self) -> &Arc<FieldCtx> {
        &self.field
    }

    pub fn p(&self) -> u64 {
        self.field.p()
    }

    /// Degree a of F_q over F_p.
    pub fn a(&self) -> usize {
        self.field.deg()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[LaurentPoly] {
        &self.coords
    }

    pub fn as_witt(&self) -> WittElem<LaurentPoly> {
        WittElem::new(self.coords.clone())
    }

    /// All exponent vectors occurring in any coordinate.
    pub fn support(&self) -> impl Iterator<Item = &Vec<i64>> {
        self.coords.iter().flat_map(|c| c.terms().map(|(u, _)| u))
    }
}
