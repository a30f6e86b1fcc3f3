use super::hull::{cyclic_order, det, dot, sub};
use super::{NewtonData, PolygonChain, PolytopeError};
use crate::arith::{binomial, factorial, gcd_i64};
use num_rational::Rational64;
use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HodgeData {
    /// W_Δ(0..=D(n+1)).
    pub weights: Vec<u64>,
    pub pcoeffs: Vec<i64>,
    pub hodge: PolygonChain,
    pub nvol: i64,
}

/// n!·Vol(Δ) by coning a triangulation of every facet avoiding 0 to the origin.
pub fn volume_normalized(nd: &NewtonData) -> Result<i64, PolytopeError> {
    nd.require_full()?;
    let n = nd.n();
    if n == 0 {
        return Ok(1);
    }
    let mut total = 0i64;
    for f in nd.facets().iter().filter(|f| f.offset > 0) {
        let verts: Vec<Vec<i64>> = nd.vertices().iter().filter(|v| dot(&f.normal, v) == f.offset).cloned().collect();
        match n {
            1 => total += verts[0][0].abs(),
            2 => total += det(&[verts[0].clone(), verts[1].clone()]).abs(),
            3 => {
                let ring = cyclic_order(&verts, &f.normal);
                for i in 1..ring.len() - 1 {
                    total += det(&[ring[0].clone(), ring[i].clone(), ring[i + 1].clone()]).abs();
                }
            }
            _ => return Err(PolytopeError::UnsupportedDimension(n)),
        }
    }
    Ok(total)
}

/// P_Δ(t) = (1 − t^D)^n Σ W_Δ(k) t^k together with its checks and Hodge polygon.
pub fn p_delta(nd: &NewtonData) -> Result<HodgeData, PolytopeError> {
    let d = nd.grid_denominator()? as usize;
    let n = nd.n();
    let kmax = d * (n + 1);
    let weights = nd.weight_vector(kmax)?;
    let mut pcoeffs = vec![0i64; kmax + 1];
    for (k, slot) in pcoeffs.iter_mut().enumerate() {
        for j in 0..=n {
            if j * d > k {
                break;
            }
            let term = binomial(n as u64, j as u64) as i64 * weights[k - j * d] as i64;
            *slot += if j % 2 == 0 { term } else { -term };
        }
    }
    if let Some(k) = (n * d + 1..=kmax).find(|&k| pcoeffs[k] != 0) {
        return Err(PolytopeError::IdentityViolation(format!("P_Δ has a nonzero coefficient at t^{k} > nD")));
    }
    pcoeffs.truncate(n * d + 1);
    while pcoeffs.len() > 1 && *pcoeffs.last().unwrap() == 0 {
        pcoeffs.pop();
    }
    if let Some(k) = pcoeffs.iter().position(|&c| c < 0) {
        return Err(PolytopeError::IdentityViolation(format!("P_Δ has a negative coefficient at t^{k}")));
    }
    let nvol = volume_normalized(nd)?;
    let sum: i64 = pcoeffs.iter().sum();
    if sum != nvol {
        return Err(PolytopeError::IdentityViolation(format!("P_Δ(1) = {sum} but n!Vol = {nvol}")));
    }
    let hodge = PolygonChain::hodge(&pcoeffs, d as i64).expect("coefficients checked nonnegative");
    Ok(HodgeData { weights, pcoeffs, hodge, nvol })
}

/// S_Δ: normalized volume of the (n−1)-faces through 0, for n ≤ 2. A point
/// (n = 0) has no proper faces.
pub fn boundary_through_origin(nd: &NewtonData) -> Result<i64, PolytopeError> {
    nd.require_full()?;
    match nd.n() {
        0 => Ok(0),
        1 => Ok(nd.facets().iter().filter(|f| f.offset == 0).count() as i64),
        2 => Ok(nd
            .facets()
            .iter()
            .filter(|f| f.offset == 0)
            .map(|f| {
                let ends: Vec<&Vec<i64>> = nd.vertices().iter().filter(|v| dot(&f.normal, v) == 0).collect();
                let e = sub(ends[0], ends[1]);
                gcd_i64(e[0], e[1])
            })
            .sum()),
        n => Err(PolytopeError::UnsupportedDimension(n)),
    }
}

/// Both sides of (1/D)·Σ k·h_k = (n/2)·n!Vol − ((n−1)!/2)·S_Δ.
pub fn h_moment_identity(nd: &NewtonData, h: &HodgeData) -> Result<(Rational64, Rational64), PolytopeError> {
    let d = nd.grid_denominator()?;
    let n = nd.n() as i64;
    let s = boundary_through_origin(nd)?;
    let lhs = Rational64::new(h.pcoeffs.iter().enumerate().map(|(k, &c)| k as i64 * c).sum(), d);
    let fact = if n == 0 { 0 } else { factorial(n as u64 - 1) as i64 };
    let rhs = Rational64::new(n * volume_normalized(nd)?, 2) - Rational64::new(fact * s, 2);
    Ok((lhs, rhs))
}

/// Σ_{i=0}^{n} C(n,i)·#{lattice points of degree ≤ n − i + 1}.
pub fn total_degree_bound(nd: &NewtonData, h: &HodgeData) -> Result<u64, PolytopeError> {
    let d = nd.grid_denominator()? as usize;
    let n = nd.n();
    let mut cumulative = Vec::with_capacity(h.weights.len());
    let mut acc = 0u64;
    for &w in &h.weights {
        acc += w;
        cumulative.push(acc);
    }
    Ok((0..=n).map(|i| binomial(n as u64, i as u64) * cumulative[d * (n - i + 1)]).sum())
}
