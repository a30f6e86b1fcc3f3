use super::{CharsumError, CyclotomicInt};
use crate::arith::{lcm_u64, pow_u64};
use crate::config::Limits;
use crate::ffield::{FieldCtx, FieldElem};
use crate::wittring::{universal_witt_polys, TraceKernel, WittLaurent};
use num_integer::Integer;
use rayon::prelude::*;
use serde::Serialize;
use std::ops::Range;

/// Overall sign of a sum: (−1)^{n−1} on the full torus, or none when some
/// coordinates may vanish.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SignConvention {
    Alternating,
    Plain,
}

impl SignConvention {
    /// Exponent of every Euler factor (1 − ψ(x) t^{deg x}) in the matching product.
    pub fn euler_exponent(self, n: usize) -> i64 {
        -self.sign(n)
    }

    pub fn sign(self, n: usize) -> i64 {
        match self {
            SignConvention::Alternating if n.is_multiple_of(2) => -1,
            _ => 1,
        }
    }
}

#[derive(Clone, Debug)]
pub struct SumOptions {
    pub threads: usize,
    /// Galois twist s: ψ(c) = ζ^{s·c}.
    pub twist: u64,
    /// Also histogram the points of exact degree k over F_q.
    pub primitive: bool,
    pub limits: Limits,
}

impl Default for SumOptions {
    fn default() -> Self {
        SumOptions { threads: 1, twist: 1, primitive: false, limits: Limits::default() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SumResult {
    pub k: usize,
    pub value: CyclotomicInt,
    /// N_c for c ∈ Z/p^m.
    pub profile: Vec<u64>,
    pub domain_size: u64,
    pub sign: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub primitive_profile: Option<Vec<u64>>,
}

/// Number of evaluation points of S_k: (q^k)^{|J|}·(q^k − 1)^{n−|J|}.
pub fn domain_size(q: u64, k: usize, n: usize, j_len: usize) -> Option<u64> {
    let qk = q.checked_pow(k as u32)?;
    qk.checked_pow(j_len as u32)?.checked_mul((qk - 1).checked_pow((n - j_len) as u32)?)
}

/// Laurent coordinates compiled to discrete-log form in one extension field.
struct CompiledWitt {
    // coordinate -> [(log of coefficient, exponent vector)]
    coords: Vec<Vec<(u64, Vec<i64>)>>,
}

impl CompiledWitt {
    fn new(f: &WittLaurent, ext: &FieldCtx) -> Result<Self, CharsumError> {
        let emb = ext.embedding_from(f.field())?;
        let coords = f
            .coords()
            .iter()
            .map(|c| c.terms().map(|(u, &a)| (ext.log(emb.apply(a)).expect("nonzero coefficient") as u64, u.clone())).collect())
            .collect();
        Ok(CompiledWitt { coords })
    }

    /// Coordinates of f(x); `logs[j]` is None when x_j = 0.
    #[inline]
    fn eval_into(&self, ext: &FieldCtx, logs: &[Option<u64>], out: &mut [FieldElem]) {
        let order = ext.unit_order() as i64;
        for (slot, terms) in out.iter_mut().zip(&self.coords) {
            let mut acc = FieldElem::ZERO;
            'term: for (cl, u) in terms {
                let mut e = *cl as i64;
                for (l, &uj) in logs.iter().zip(u) {
                    match l {
                        Some(l) => e += uj * *l as i64,
                        None if uj != 0 => continue 'term,
                        None => {}
                    }
                }
                acc = ext.add(acc, ext.exp(e.rem_euclid(order) as u64));
            }
            *slot = acc;
        }
    }
}

/// Degree over F_p of g^l, via the divisors of the extension degree.
struct SubfieldDegree {
    order: u64,
    // (e, p^e − 1) for e | deg, increasing
    divs: Vec<(u64, u64)>,
}

impl SubfieldDegree {
    fn new(ext: &FieldCtx) -> Self {
        let deg = ext.deg() as u64;
        let divs = (1..=deg).filter(|e| deg.is_multiple_of(*e)).map(|e| (e, pow_u64(ext.p(), e as u32) - 1)).collect();
        SubfieldDegree { order: ext.unit_order(), divs }
    }

    #[inline]
    fn of_log(&self, l: u64) -> u64 {
        let elem_order = self.order / l.gcd(&self.order);
        self.divs.iter().find(|(_, pe1)| pe1 % elem_order == 0).map(|d| d.0).unwrap()
    }
}

/// S_k(f) (J = ∅, alternating sign) or S_k(f, J) (plain sign) by enumeration.
pub fn exp_sum(
    f: &WittLaurent,
    k: usize,
    j: &[usize],
    convention: SignConvention,
    opts: &SumOptions,
) -> Result<SumResult, CharsumError> {
    let n = f.n();
    let p = f.p();
    let m = f.m();
    let a = f.a();
    if opts.twist.is_multiple_of(p) {
        return Err(CharsumError::TwistNotCoprime { twist: opts.twist, p });
    }
    let mut in_j = vec![false; n];
    for &c in j {
        if c == 0 || c > n {
            return Err(CharsumError::InvalidSubset(j.to_vec(), n));
        }
        in_j[c - 1] = true;
    }
    if convention == SignConvention::Alternating && !j.is_empty() {
        return Err(CharsumError::ConventionMismatch);
    }
    if let Some(u) = f.support().find(|u| (0..n).any(|i| in_j[i] && u[i] < 0)) {
        let coord = (0..n).find(|&i| in_j[i] && u[i] < 0).unwrap() + 1;
        return Err(CharsumError::NegativeExponentInJ(coord));
    }
    let q = f.field().size();
    let j_len = in_j.iter().filter(|&&b| b).count();
    let size = domain_size(q, k, n, j_len).unwrap_or(u64::MAX);
    if size > opts.limits.budget {
        return Err(CharsumError::BudgetExceeded { needed: size, budget: opts.limits.budget });
    }
    let ext = FieldCtx::new(p, a * k, None, &opts.limits)?;
    let polys = universal_witt_polys(p, m, opts.limits.max_witt_length)?;
    let kernel = TraceKernel::new(&ext, &polys);
    let compiled = CompiledWitt::new(f, &ext)?;
    let subdeg = opts.primitive.then(|| SubfieldDegree::new(&ext));
    let qk = ext.size();
    let radix: Vec<u64> = in_j.iter().map(|&b| if b { qk } else { qk - 1 }).collect();
    let order = pow_u64(p, m as u32) as usize;

    let run = |range: Range<u64>| -> Result<(Vec<u64>, Vec<u64>), CharsumError> {
        let mut profile = vec![0u64; order];
        let mut prim = vec![0u64; if subdeg.is_some() { order } else { 0 }];
        let mut digits = vec![0u64; n];
        let mut rest = range.start;
        for (dg, &r) in digits.iter_mut().zip(&radix) {
            *dg = rest % r;
            rest /= r;
        }
        let mut logs = vec![None; n];
        let mut y = vec![FieldElem::ZERO; m];
        let mut scratch = kernel.scratch();
        for _ in range {
            for i in 0..n {
                logs[i] = if in_j[i] { digits[i].checked_sub(1) } else { Some(digits[i]) };
            }
            compiled.eval_into(&ext, &logs, &mut y);
            let c = kernel.residue(&ext, &y, &mut scratch)? as usize;
            profile[c] += 1;
            if let Some(sd) = &subdeg {
                let mut dq = 1u64;
                for l in logs.iter().flatten() {
                    let e = sd.of_log(*l);
                    dq = lcm_u64(dq, lcm_u64(e, a as u64) / a as u64);
                }
                if dq == k as u64 {
                    prim[c] += 1;
                }
            }
            for (dg, &r) in digits.iter_mut().zip(&radix) {
                *dg += 1;
                if *dg < r {
                    break;
                }
                *dg = 0;
            }
        }
        Ok((profile, prim))
    };

    let ranges = chunk_ranges(size, if opts.threads <= 1 { 1 } else { opts.threads * 8 });
    let parts: Vec<Result<(Vec<u64>, Vec<u64>), CharsumError>> = if opts.threads <= 1 {
        ranges.into_iter().map(run).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(opts.threads)
            .build()
            .map_err(|e| CharsumError::ThreadPool(e.to_string()))?;
        pool.install(|| ranges.into_par_iter().map(run).collect())
    };
    let mut profile = vec![0u64; order];
    let mut prim = vec![0u64; order];
    for part in parts {
        let (pr, pp) = part?;
        profile.iter_mut().zip(&pr).for_each(|(a, b)| *a += b);
        prim.iter_mut().zip(&pp).for_each(|(a, b)| *a += b);
    }
    debug_assert_eq!(profile.iter().sum::<u64>(), size);
    let sign = convention.sign(n);
    let value = CyclotomicInt::from_profile(p, m, &profile, opts.twist).scale(&sign.into());
    Ok(SumResult { k, value, profile, domain_size: size, sign, primitive_profile: opts.primitive.then_some(prim) })
}

/// Splits 0..total into at most `parts` contiguous nonempty ranges.
pub fn chunk_ranges(total: u64, parts: usize) -> Vec<Range<u64>> {
    let parts = (parts as u64).clamp(1, total.max(1));
    let base = total / parts;
    let extra = total % parts;
    let mut out = Vec::with_capacity(parts as usize);
    let mut start = 0;
    for i in 0..parts {
        let len = base + u64::from(i < extra);
        out.push(start..start + len);
        start += len;
    }
    out
}
