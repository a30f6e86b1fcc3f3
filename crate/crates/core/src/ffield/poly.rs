//! Dense univariate polynomials over a [`FieldCtx`], coefficients low to high.
//! The zero polynomial is the empty vector.

use super::{FieldCtx, FieldElem};

pub fn trim(f: &mut Vec<FieldElem>) {
    while f.last().is_some_and(|c| c.is_zero()) {
        f.pop();
    }
}

pub fn degree(f: &[FieldElem]) -> Option<usize> {
    f.iter().rposition(|c| !c.is_zero())
}

pub fn eval(ctx: &FieldCtx, f: &[FieldElem], x: FieldElem) -> FieldElem {
    f.iter().rev().fold(FieldElem::ZERO, |acc, &c| ctx.add(ctx.mul(acc, x), c))
}

pub fn rem(ctx: &FieldCtx, a: &[FieldElem], b: &[FieldElem]) -> Vec<FieldElem> {
    let mut r = a.to_vec();
    trim(&mut r);
    let db = degree(b).expect("division by the zero polynomial");
    let lead_inv = ctx.inv(b[db]).unwrap();
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let factor = ctx.mul(r[dr], lead_inv);
        for i in 0..=db {
            let s = ctx.mul(factor, b[i]);
            r[dr - db + i] = ctx.sub(r[dr - db + i], s);
        }
        trim(&mut r);
    }
    r
}

pub fn make_monic(ctx: &FieldCtx, f: &mut Vec<FieldElem>) {
    trim(f);
    if let Some(&lead) = f.last() {
        let inv = ctx.inv(lead).unwrap();
        for c in f.iter_mut() {
            *c = ctx.mul(*c, inv);
        }
    }
}

/// Monic gcd; gcd(0, 0) = 0.
pub fn gcd(ctx: &FieldCtx, a: &[FieldElem], b: &[FieldElem]) -> Vec<FieldElem> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let r = rem(ctx, &a, &b);
        a = b;
        b = r;
    }
    make_monic(ctx, &mut a);
    a
}

/// Removes the largest power of the variable dividing `f`.
pub fn strip_variable_power(f: &[FieldElem]) -> Vec<FieldElem> {
    match f.iter().position(|c| !c.is_zero()) {
        None => Vec::new(),
        Some(v) => {
            let mut out = f[v..].to_vec();
            trim(&mut out);
            out
        }
    }
}
