use super::{lambda_embed, universal_witt_polys, witt_add, witt_sub, LaurentPoly, LaurentRing, WittElem, WittError, WittLaurent};
use crate::config::Limits;
use crate::ffield::{FieldCtx, FieldElem};
use std::sync::Arc;

/// One summand λ_level(coeff · x^exponent).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct WittTerm {
    pub level: usize,
    pub exponent: Vec<i64>,
    pub coeff: FieldElem,
}

/// The unique expansion f = Σ_i Σ_u λ_i(a_iu x^u).
#[derive(Clone, Debug)]
pub struct DecomposedWitt {
    field: Arc<FieldCtx>,
    m: usize,
    n: usize,
    terms: Vec<WittTerm>,
}

impl DecomposedWitt {
    pub fn from_terms(field: Arc<FieldCtx>, m: usize, n: usize, mut terms: Vec<WittTerm>) -> Self {
        terms.sort();
        DecomposedWitt { field, m, n, terms }
    }

    pub fn field(&self) -> &Arc<FieldCtx> {
        &self.field
    }
    pub fn p(&self) -> u64 {
        self.field.p()
    }
    pub fn m(&self) -> usize {
        self.m
    }
    pub fn n(&self) -> usize {
        self.n
    }
    pub fn terms(&self) -> &[WittTerm] {
        &self.terms
    }

    /// The weighted supports p^{m-1-i}·u, one per term.
    pub fn weighted_points(&self) -> Vec<Vec<i64>> {
        let p = self.p() as i64;
        self.terms
            .iter()
            .map(|t| {
                let w = p.pow((self.m - 1 - t.level) as u32);
                t.exponent.iter().map(|&e| e * w).collect()
            })
            .collect()
    }

    /// Replaces every coefficient a by a^p.
    pub fn frobenius_twist(&self) -> DecomposedWitt {
        let terms = self
            .terms
            .iter()
            .map(|t| WittTerm { coeff: self.field.frobenius(t.coeff, 1), ..t.clone() })
            .collect();
        Self::from_terms(self.field.clone(), self.m, self.n, terms)
    }
}

/// Solves the successive congruences mod V, V², …: after extracting levels
/// below i, the Witt difference f − Σ λ_{<i}(…) vanishes below coordinate i and
/// its i-th coordinate supplies the level-i terms.
pub fn decompose(f: &WittLaurent, limits: &Limits) -> Result<DecomposedWitt, WittError> {
    let m = f.m();
    let field = f.field().clone();
    let ring = LaurentRing::new(&field, f.n(), limits.max_monomials);
    let polys = universal_witt_polys(f.p(), m, limits.max_witt_length)?;
    let target = f.as_witt();
    let mut extracted = WittElem::new(vec![LaurentPoly::zero(); m]);
    let mut terms = Vec::new();
    for level in 0..m {
        let rest = if level == 0 { target.clone() } else { witt_sub(&target, &extracted, &ring, &polys)? };
        if rest.coords[..level].iter().any(|c| !c.is_zero()) {
            return Err(WittError::DecompositionInconsistent(level));
        }
        for (u, &a) in rest.coords[level].terms() {
            terms.push(WittTerm { level, exponent: u.clone(), coeff: a });
            let piece = lambda_embed(&ring, m, level, a, u)?;
            extracted = witt_add(&extracted, &piece, &ring, &polys)?;
        }
    }
    Ok(DecomposedWitt::from_terms(field, m, f.n(), terms))
}

/// Witt-sum of all λ terms.
pub fn reassemble(d: &DecomposedWitt, limits: &Limits) -> Result<WittElem<LaurentPoly>, WittError> {
    let ring = LaurentRing::new(&d.field, d.n, limits.max_monomials);
    let polys = universal_witt_polys(d.p(), d.m, limits.max_witt_length)?;
    let mut acc = WittElem::new(vec![LaurentPoly::zero(); d.m]);
    for t in &d.terms {
        let piece = lambda_embed(&ring, d.m, t.level, t.coeff, &t.exponent)?;
        acc = witt_add(&acc, &piece, &ring, &polys)?;
    }
    Ok(acc)
}
