use super::hodge::{boundary_through_origin, p_delta, HodgeData};
use super::{NewtonData, PolygonChain, PolytopeError};
use crate::config::Limits;
use num_rational::Rational64;
use serde::Serialize;

/// Δ_C = {u ∈ Δ : u_j = 0 for j ∈ C}, realized in the coordinates outside C.
#[derive(Clone, Debug, Serialize)]
pub struct Slice {
    /// 1-based coordinates set to zero.
    pub subset: Vec<usize>,
    pub data: NewtonData,
    /// Present when the slice has its expected dimension.
    pub hodge: Option<HodgeData>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SliceFamily {
    pub j: Vec<usize>,
    pub slices: Vec<Slice>,
    pub commode: bool,
}

/// All slices Δ_C for C ⊆ J and the commode test.
pub fn slice_and_commode(nd: &NewtonData, j: &[usize], limits: &Limits) -> Result<SliceFamily, PolytopeError> {
    let n = nd.n();
    let mut j = j.to_vec();
    j.sort();
    j.dedup();
    if j.iter().any(|&c| c == 0 || c > n) {
        return Err(PolytopeError::InvalidSubset(j, n));
    }
    for &c in &j {
        if nd.points().iter().any(|p| p[c - 1] < 0) {
            return Err(PolytopeError::NegativeExponentInJ(c));
        }
    }
    let mut slices = Vec::with_capacity(1 << j.len());
    let mut commode = nd.is_full_dimensional();
    for mask in 0u32..(1 << j.len()) {
        let subset: Vec<usize> = (0..j.len()).filter(|&b| mask >> b & 1 == 1).map(|b| j[b]).collect();
        let keep: Vec<usize> = (0..n).filter(|i| !subset.contains(&(i + 1))).collect();
        let pts: Vec<Vec<i64>> = nd
            .points()
            .iter()
            .filter(|p| subset.iter().all(|&c| p[c - 1] == 0))
            .map(|p| keep.iter().map(|&i| p[i]).collect())
            .collect();
        let data = NewtonData::from_points(pts, keep.len(), limits)?;
        let hodge = if data.is_full_dimensional() { Some(p_delta(&data)?) } else { None };
        commode &= hodge.is_some();
        slices.push(Slice { subset, data, hodge });
    }
    Ok(SliceFamily { j, slices, commode })
}

impl SliceFamily {
    fn full(&self) -> Result<impl Iterator<Item = (&Slice, &HodgeData)>, PolytopeError> {
        if !self.commode {
            let s = self.slices.iter().find(|s| s.hodge.is_none()).map_or(&self.slices[0], |s| s);
            return Err(PolytopeError::DimensionDeficient { dim: s.data.dim(), n: s.data.n() });
        }
        Ok(self.slices.iter().map(|s| (s, s.hodge.as_ref().unwrap())))
    }

    /// Σ_C (−1)^{|C|} (n−|C|)!·Vol(Δ_C).
    pub fn signed_volume(&self) -> Result<i64, PolytopeError> {
        Ok(self.full()?.map(|(s, h)| sign(s.subset.len()) * h.nvol).sum())
    }

    /// Σ_C (−1)^{|C|} P_{Δ_C}(t^{D/D_C}), each P_{Δ_C} taken intrinsically
    /// in dimension n − |C|.
    pub fn combined_p(&self, d: i64) -> Result<Vec<i64>, PolytopeError> {
        let mut out: Vec<i64> = Vec::new();
        for (s, h) in self.full()? {
            let dc = s.data.grid_denominator()?;
            if d % dc != 0 {
                return Err(PolytopeError::IdentityViolation(format!("D(Δ_C) = {dc} does not divide D(Δ) = {d}")));
            }
            let stride = (d / dc) as usize;
            for (k, &c) in h.pcoeffs.iter().enumerate() {
                let idx = k * stride;
                if out.len() <= idx {
                    out.resize(idx + 1, 0);
                }
                out[idx] += sign(s.subset.len()) * c;
            }
        }
        while out.len() > 1 && *out.last().unwrap() == 0 {
            out.pop();
        }
        if out.is_empty() {
            out.push(0);
        }
        Ok(out)
    }

    /// Hodge polygon of the combined polynomial; `None` when a coefficient is negative.
    pub fn combined_hodge(&self, d: i64) -> Result<Option<PolygonChain>, PolytopeError> {
        Ok(PolygonChain::hodge(&self.combined_p(d)?, d))
    }

    /// The closed-form ordinate of the Hodge endpoint, from slice volumes and
    /// boundary measures. `None` when some needed S_{Δ_C} lives in dimension ≥ 3.
    pub fn endpoint_ordinate(&self, n: usize, v: i64) -> Result<Option<Rational64>, PolytopeError> {
        let mut u = Rational64::new(n as i64 * v, 2);
        for (s, h) in self.full()? {
            let c = s.subset.len() as i64;
            let sc = match boundary_through_origin(&s.data) {
                Ok(x) => x,
                Err(PolytopeError::UnsupportedDimension(_)) => return Ok(None),
                Err(e) => return Err(e),
            };
            // (−1)^{|C|+1} [ (|C|/2)·nvol_C + S_C/2 ]
            u += Rational64::new(-sign(c as usize) * (c * h.nvol + sc), 2);
        }
        Ok(Some(u))
    }
}

fn sign(k: usize) -> i64 {
    if k.is_multiple_of(2) {
        1
    } else {
        -1
    }
}
