use super::intpoly::IntPoly;
use super::WittError;
use crate::ffield::{FieldCtx, FieldElem};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

/// Universal polynomials of W_m for a fixed prime p. Variables `0..m` are
/// the coordinates of the first operand and `m..2m` those of the second.
#[derive(Debug)]
pub struct UnivWittPolys {
    pub p: u64,
    pub m: usize,
    pub sum_polys: Vec<IntPoly>,
    pub prod_polys: Vec<IntPoly>,
    pub neg_polys: Vec<IntPoly>,
}

/// w_n = Σ_{i≤n} p^i X_{offset+i}^{p^{n-i}}.
pub fn ghost_poly(p: u64, n: usize, offset: usize, nvars: usize) -> IntPoly {
    let mut acc = IntPoly::zero(nvars);
    for i in 0..=n {
        let term = IntPoly::var(nvars, offset + i)
            .pow(p.pow((n - i) as u32))
            .scale(&BigInt::from(p).pow(i as u32));
        acc = acc.add(&term);
    }
    acc
}

/// Ghost components of an integer Witt vector.
pub fn ghost_components(p: u64, coords: &[BigInt]) -> Vec<BigInt> {
    (0..coords.len())
        .map(|n| {
            (0..=n)
                .map(|i| BigInt::from(p).pow(i as u32) * num_traits::pow(coords[i].clone(), p.pow((n - i) as u32) as usize))
                .sum()
        })
        .collect()
}

/// Inverts the ghost map: given ghost targets w_n (polynomials in 2m
/// variables), returns the Witt coordinates S_n with
/// Σ_{i≤n} p^i S_i^{p^{n-i}} = w_n, checking integrality at every step.
fn invert_ghost(p: u64, targets: &[IntPoly]) -> Result<Vec<IntPoly>, WittError> {
    let mut coords: Vec<IntPoly> = Vec::with_capacity(targets.len());
    // powers[i] holds S_i^{p^{n-i}} for the current n
    let mut powers: Vec<IntPoly> = Vec::new();
    for (n, target) in targets.iter().enumerate() {
        for pw in powers.iter_mut() {
            *pw = pw.pow(p);
        }
        let mut numerator = target.clone();
        for (i, pw) in powers.iter().enumerate() {
            numerator = numerator.sub(&pw.scale(&BigInt::from(p).pow(i as u32)));
        }
        let s = numerator
            .exact_div(&BigInt::from(p).pow(n as u32))
            .ok_or(WittError::NonIntegral { p, index: n })?;
        powers.push(s.clone());
        coords.push(s);
    }
    Ok(coords)
}

impl UnivWittPolys {
    pub fn compute(p: u64, m: usize) -> Result<Self, WittError> {
        let nv = 2 * m;
        let gx: Vec<IntPoly> = (0..m).map(|n| ghost_poly(p, n, 0, nv)).collect();
        let gy: Vec<IntPoly> = (0..m).map(|n| ghost_poly(p, n, m, nv)).collect();
        let sum_t: Vec<IntPoly> = gx.iter().zip(&gy).map(|(a, b)| a.add(b)).collect();
        let prod_t: Vec<IntPoly> = gx.iter().zip(&gy).map(|(a, b)| a.mul(b)).collect();
        let neg_t: Vec<IntPoly> = gx.iter().map(|a| a.neg()).collect();
        Ok(UnivWittPolys {
            p,
            m,
            sum_polys: invert_ghost(p, &sum_t)?,
            prod_polys: invert_ghost(p, &prod_t)?,
            neg_polys: invert_ghost(p, &neg_t)?,
        })
    }
}

static CACHE: OnceLock<Mutex<HashMap<(u64, usize), Arc<UnivWittPolys>>>> = OnceLock::new();

/// Cached universal polynomials for (p, m); `max_len` is the configured cap on m.
pub fn universal_witt_polys(p: u64, m: usize, max_len: usize) -> Result<Arc<UnivWittPolys>, WittError> {
    if m == 0 || m > max_len {
        return Err(WittError::CapExceeded { m, cap: max_len });
    }
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(hit) = cache.lock().unwrap().get(&(p, m)) {
        return Ok(hit.clone());
    }
    let polys = Arc::new(UnivWittPolys::compute(p, m)?);
    cache.lock().unwrap().insert((p, m), polys.clone());
    Ok(polys)
}

/// A universal polynomial reduced mod p, ready for table evaluation in a field.
#[derive(Clone, Debug)]
struct CompiledPoly {
    // (log of coefficient, [(variable, exponent)])
    terms: Vec<(u64, Vec<(usize, u64)>)>,
}

/// Witt addition specialized to one finite field, evaluated through
/// discrete logarithms without allocation.
#[derive(Clone, Debug)]
pub struct FieldWittAdder {
    m: usize,
    polys: Vec<CompiledPoly>,
}

impl FieldWittAdder {
    pub fn new(univ: &UnivWittPolys, ctx: &FieldCtx) -> Self {
        let p = BigInt::from(univ.p);
        let polys = univ
            .sum_polys
            .iter()
            .map(|poly| {
                let terms = poly
                    .terms()
                    .filter_map(|(e, c)| {
                        let r = (c % &p + &p) % &p;
                        let r = r.to_i64().unwrap();
                        let coef = ctx.from_int(r);
                        let lc = ctx.log(coef)? as u64;
                        let vars = e
                            .iter()
                            .enumerate()
                            .filter(|(_, &k)| k > 0)
                            .map(|(v, &k)| (v, k as u64))
                            .collect();
                        Some((lc, vars))
                    })
                    .collect();
                CompiledPoly { terms }
            })
            .collect();
        FieldWittAdder { m: univ.m, polys }
    }

    pub fn len(&self) -> usize {
        self.m
    }

    pub fn is_empty(&self) -> bool {
        self.m == 0
    }

    /// out = x ⊞ y. `logs` is scratch space of length 2m.
    #[inline]
    pub fn add_into(&self, ctx: &FieldCtx, x: &[FieldElem], y: &[FieldElem], logs: &mut [Option<u32>], out: &mut [FieldElem]) {
        let m = self.m;
        for i in 0..m {
            logs[i] = ctx.log(x[i]);
            logs[m + i] = ctx.log(y[i]);
        }
        for (slot, poly) in out.iter_mut().zip(&self.polys) {
            let mut acc = FieldElem::ZERO;
            'term: for (lc, vars) in &poly.terms {
                let mut s = *lc;
                for &(v, k) in vars {
                    match logs[v] {
                        None => continue 'term,
                        Some(l) => s += l as u64 * k,
                    }
                }
                acc = ctx.add(acc, ctx.exp(s));
            }
            *slot = acc;
        }
    }
}
