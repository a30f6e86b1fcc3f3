use super::{witt_add, FieldRing, FieldWittAdder, UnivWittPolys, WittElem, WittError};
use crate::arith;
use crate::ffield::{FieldCtx, FieldElem};

/// Tr_{W_m(F_{p^deg})/W_m(F_p)}(y) = F^0(y) ⊞ F^1(y) ⊞ … ⊞ F^{deg-1}(y),
/// where F raises every coordinate to the p-th power.
pub fn witt_trace(y: &WittElem<FieldElem>, ctx: &FieldCtx, polys: &UnivWittPolys) -> Result<WittElem<FieldElem>, WittError> {
    let ring = FieldRing::new(ctx);
    let mut acc = y.clone();
    for j in 1..ctx.deg() as u64 {
        let conj = WittElem::new(y.coords.iter().map(|&c| ctx.frobenius(c, j)).collect());
        acc = witt_add(&acc, &conj, &ring, polys)?;
    }
    if acc.coords.iter().any(|&c| !ctx.in_prime_subfield(c)) {
        return Err(WittError::TraceNotRational);
    }
    Ok(acc)
}

/// ω(c) mod p^m for a residue c mod p, as c^{p^{m-1}} mod p^m.
pub fn teichmuller_residue(c: u64, p: u64, m: usize) -> u64 {
    let pm = arith::pow_u64(p, m as u32);
    arith::modpow(c, arith::pow_u64(p, m as u32 - 1), pm)
}

/// The isomorphism W_m(F_p) → Z/p^m, (t_0, …, t_{m-1}) ↦ Σ ω(t_i) p^i.
pub fn witt_fp_to_residue(t: &WittElem<FieldElem>, ctx: &FieldCtx) -> Result<u64, WittError> {
    let p = ctx.p();
    let m = t.len();
    let pm = arith::pow_u64(p, m as u32);
    let mut acc = 0u64;
    let mut pi = 1u64;
    for &c in &t.coords {
        if !ctx.in_prime_subfield(c) {
            return Err(WittError::NotPrimeField);
        }
        acc = (acc + teichmuller_residue(c.code() as u64, p, m) * pi) % pm;
        pi *= p;
    }
    Ok(acc)
}

/// Precompiled trace-then-identify map for one field, used by the
/// torus-summation loops.
#[derive(Clone, Debug)]
pub struct TraceKernel {
    m: usize,
    deg: usize,
    pm: u64,
    adder: FieldWittAdder,
    frob_exps: Vec<u64>,
    teich: Vec<u64>,
    p_powers: Vec<u64>,
}

/// Per-worker scratch buffers for [`TraceKernel`].
#[derive(Clone, Debug)]
pub struct TraceScratch {
    acc: Vec<FieldElem>,
    conj: Vec<FieldElem>,
    tmp: Vec<FieldElem>,
    logs: Vec<Option<u32>>,
}

impl TraceKernel {
    pub fn new(ctx: &FieldCtx, polys: &UnivWittPolys) -> Self {
        let p = ctx.p();
        let m = polys.m;
        let frob_exps = (0..ctx.deg() as u64).map(|j| arith::modpow(p, j, ctx.unit_order())).collect();
        TraceKernel {
            m,
            deg: ctx.deg(),
            pm: arith::pow_u64(p, m as u32),
            adder: FieldWittAdder::new(polys, ctx),
            frob_exps,
            teich: (0..p).map(|c| teichmuller_residue(c, p, m)).collect(),
            p_powers: (0..m as u32).map(|i| arith::pow_u64(p, i)).collect(),
        }
    }

    pub fn modulus(&self) -> u64 {
        self.pm
    }

    pub fn scratch(&self) -> TraceScratch {
        TraceScratch {
            acc: vec![FieldElem::ZERO; self.m],
            conj: vec![FieldElem::ZERO; self.m],
            tmp: vec![FieldElem::ZERO; self.m],
            logs: vec![None; 2 * self.m],
        }
    }

    /// Residue mod p^m of the Witt trace of `y`.
    #[inline]
    pub fn residue(&self, ctx: &FieldCtx, y: &[FieldElem], s: &mut TraceScratch) -> Result<u64, WittError> {
        let order = ctx.unit_order();
        if self.m == 1 {
            let mut acc = FieldElem::ZERO;
            if let Some(l) = ctx.log(y[0]) {
                for &e in &self.frob_exps {
                    acc = ctx.add(acc, ctx.exp(l as u64 * e % order));
                }
            }
            if !ctx.in_prime_subfield(acc) {
                return Err(WittError::TraceNotRational);
            }
            return Ok(self.teich[acc.code() as usize]);
        }
        s.acc.copy_from_slice(y);
        let logs_y: Vec<Option<u32>> = y.iter().map(|&c| ctx.log(c)).collect();
        for &e in &self.frob_exps[1..self.deg] {
            for (slot, l) in s.conj.iter_mut().zip(&logs_y) {
                *slot = match l {
                    None => FieldElem::ZERO,
                    Some(l) => ctx.exp(*l as u64 * e % order),
                };
            }
            self.adder.add_into(ctx, &s.acc, &s.conj, &mut s.logs, &mut s.tmp);
            std::mem::swap(&mut s.acc, &mut s.tmp);
        }
        let mut r = 0u64;
        for (c, pi) in s.acc.iter().zip(&self.p_powers) {
            if !ctx.in_prime_subfield(*c) {
                return Err(WittError::TraceNotRational);
            }
            r += self.teich[c.code() as usize] * pi;
        }
        Ok(r % self.pm)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffield::build_field;
    use crate::wittring::universal_witt_polys;

    #[test]
    fn trace_examples() {
        let f2 = build_field(2, 1, None).unwrap();
        let polys = universal_witt_polys(2, 2, 4).unwrap();
        let y = WittElem::new(vec![FieldElem::ONE, FieldElem::ZERO]);
        assert_eq!(witt_trace(&y, &f2, &polys).unwrap(), y);

        let f4 = build_field(2, 2, Some(&[1, 1, 1])).unwrap();
        let t = f4.from_coeffs(&[0, 1]).unwrap();
        let y = WittElem::new(vec![t, FieldElem::ZERO]);
        assert_eq!(witt_trace(&y, &f4, &polys).unwrap().coords, vec![FieldElem::ONE, FieldElem::ONE]);
        let z = WittElem::new(vec![FieldElem::ZERO; 2]);
        assert_eq!(witt_trace(&z, &f4, &polys).unwrap(), z);
    }

    #[test]
    fn residue_examples() {
        let f2 = build_field(2, 1, None).unwrap();
        let w = |a: i64, b: i64, f: &FieldCtx| WittElem::new(vec![f.from_int(a), f.from_int(b)]);
        assert_eq!(witt_fp_to_residue(&w(1, 0, &f2), &f2).unwrap(), 1);
        assert_eq!(witt_fp_to_residue(&w(1, 1, &f2), &f2).unwrap(), 3);
        let f3 = build_field(3, 1, None).unwrap();
        assert_eq!(witt_fp_to_residue(&w(2, 1, &f3), &f3).unwrap(), 2);
        let f9 = build_field(3, 2, None).unwrap();
        let t = f9.from_coeffs(&[0, 1]).unwrap();
        assert_eq!(witt_fp_to_residue(&WittElem::new(vec![t]), &f9), Err(WittError::NotPrimeField));
    }

    #[test]
    fn kernel_matches_reference_trace() {
        for (p, deg, m) in [(2u64, 3usize, 2usize), (3, 2, 2), (2, 2, 3), (3, 2, 1), (5, 1, 2)] {
            let ctx = build_field(p, deg, None).unwrap();
            let polys = universal_witt_polys(p, m, 4).unwrap();
            let kernel = TraceKernel::new(&ctx, &polys);
            let mut s = kernel.scratch();
            let elems: Vec<_> = ctx.elements().collect();
            for (i, &a) in elems.iter().enumerate() {
                let mut coords = vec![a];
                for j in 1..m {
                    coords.push(elems[(i * 7 + j * 3) % elems.len()]);
                }
                let y = WittElem::new(coords);
                let reference = witt_fp_to_residue(&witt_trace(&y, &ctx, &polys).unwrap(), &ctx).unwrap();
                assert_eq!(kernel.residue(&ctx, &y.coords, &mut s).unwrap(), reference);
            }
        }
    }
}
