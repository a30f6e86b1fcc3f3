//! Face systems of a decomposed Witt vector and the non-degeneracy test.

use crate::config::Limits;
use crate::ffield::{poly, FieldCtx, FieldElem, FieldError, PointDomain};
use crate::polytope::{Face, NewtonData, PolytopeError};
use crate::wittring::{DecomposedWitt, LaurentPoly};
use serde::Serialize;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NondegenError {
    #[error("face contains the origin")]
    FaceContainsOrigin,
    #[error("dimension {0} is not supported")]
    UnsupportedDimension(usize),
    #[error(transparent)]
    Polytope(#[from] PolytopeError),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// The j-indexed system on a face τ: poly j = Σ (u_j mod p)·a^{p^{m-i-1}} x^{p^{m-i-1}u}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceSystem {
    pub face: Face,
    pub polys: Vec<LaurentPoly>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum NondegenStatus {
    NonDegenerateExact,
    /// No common zero on faces searched over (F_{q^s}^×)^n for s ≤ s_max.
    NonDegenerateHeuristic { s_max: usize },
    Degenerate,
}

/// A common torus zero of a face system, in F_{p^field_deg} given by `modulus`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub face: Vec<Vec<i64>>,
    pub field_deg: usize,
    pub modulus: Vec<u32>,
    /// Coordinates as polynomial-basis coefficient vectors.
    pub point: Vec<Vec<u32>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NondegenVerdict {
    pub status: NondegenStatus,
    /// Degenerate faces, listed as their vertex sets.
    pub degenerate_faces: Vec<Vec<Vec<i64>>>,
    pub witness: Option<Witness>,
    pub faces_checked: usize,
}

impl NondegenVerdict {
    pub fn is_nondegenerate(&self) -> bool {
        !matches!(self.status, NondegenStatus::Degenerate)
    }
    pub fn is_exact(&self) -> bool {
        !matches!(self.status, NondegenStatus::NonDegenerateHeuristic { .. })
    }
}

pub fn face_system(d: &DecomposedWitt, nd: &NewtonData, face: &Face) -> Result<FaceSystem, NondegenError> {
    let n = d.n();
    if nd.face_contains(face, &vec![0; n]) {
        return Err(NondegenError::FaceContainsOrigin);
    }
    let ctx = d.field();
    let p = d.p() as i64;
    let mut acc: Vec<BTreeMap<Vec<i64>, FieldElem>> = vec![BTreeMap::new(); n];
    for (t, w) in d.terms().iter().zip(d.weighted_points()) {
        if !nd.face_contains(face, &w) {
            continue;
        }
        let e = (d.m() - 1 - t.level) as u64;
        let a = ctx.frobenius(t.coeff, e);
        for (j, slot) in acc.iter_mut().enumerate() {
            let uj = ctx.from_int(t.exponent[j].rem_euclid(p));
            let c = ctx.mul(uj, a);
            let entry = slot.entry(w.clone()).or_insert(FieldElem::ZERO);
            *entry = ctx.add(*entry, c);
        }
    }
    let polys = acc.into_iter().map(|m| LaurentPoly::from_terms(ctx, m)).collect();
    Ok(FaceSystem { face: face.clone(), polys })
}

/// Extended gcd: returns α with ⟨α, e⟩ = gcd(e).
fn bezout(e: &[i64]) -> (i64, Vec<i64>) {
    let mut g = 0i64;
    let mut alpha = vec![0i64; e.len()];
    for (i, &x) in e.iter().enumerate() {
        // solve s·g + t·x = gcd(g, x)
        let (mut r0, mut r1, mut s0, mut s1, mut t0, mut t1) = (g, x, 1i64, 0i64, 0i64, 1i64);
        while r1 != 0 {
            let q = r0.div_euclid(r1);
            (r0, r1) = (r1, r0 - q * r1);
            (s0, s1) = (s1, s0 - q * s1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        if r0 < 0 {
            (r0, s0, t0) = (-r0, -s0, -t0);
        }
        for a in alpha.iter_mut().take(i) {
            *a *= s0;
        }
        alpha[i] = t0;
        g = r0;
    }
    (g, alpha)
}

/// Restricts the system on an edge to one variable y = x^e: returns the
/// univariate polynomials g_j with poly_j = x^{v0}·g_j(x^e), and e.
fn edge_univariate(ctx: &FieldCtx, sys: &FaceSystem) -> (Vec<Vec<FieldElem>>, Vec<i64>) {
    let v0 = sys.face.vertices[0].clone();
    let v1 = &sys.face.vertices[1];
    let diff: Vec<i64> = v1.iter().zip(&v0).map(|(a, b)| a - b).collect();
    let (g, _) = bezout(&diff);
    let e: Vec<i64> = diff.iter().map(|x| x / g).collect();
    let idx = e.iter().position(|&x| x != 0).unwrap();
    let gs = sys
        .polys
        .iter()
        .map(|p| {
            let mut out = Vec::new();
            for (w, &c) in p.terms() {
                let k = ((w[idx] - v0[idx]) / e[idx]) as usize;
                if out.len() <= k {
                    out.resize(k + 1, FieldElem::ZERO);
                }
                out[k] = ctx.add(out[k], c);
            }
            out
        })
        .collect();
    (gs, e)
}

/// Exact test on an edge: common zero in the torus iff the gcd of the g_j has
/// a root other than 0. Returns that gcd (with the y-power removed) when degenerate.
fn edge_common_factor(ctx: &FieldCtx, sys: &FaceSystem) -> Option<(Vec<FieldElem>, Vec<i64>)> {
    let (gs, e) = edge_univariate(ctx, sys);
    let mut g: Vec<FieldElem> = Vec::new();
    for p in &gs {
        g = poly::gcd(ctx, &g, p);
    }
    let h = poly::strip_variable_power(&g);
    match poly::degree(&h) {
        // every g_j is zero: any torus point works
        None => Some((vec![FieldElem::ZERO, FieldElem::ONE], e)),
        Some(0) => None,
        Some(_) => Some((h, e)),
    }
}

fn field_ext(base: &FieldCtx, s: usize, limits: &Limits) -> Result<FieldCtx, FieldError> {
    FieldCtx::new(base.p(), base.deg() * s, None, limits)
}

fn point_witness(face: &Face, ext: &FieldCtx, point: &[FieldElem]) -> Witness {
    Witness {
        face: face.vertices.clone(),
        field_deg: ext.deg(),
        modulus: ext.modulus().to_vec(),
        point: point.iter().map(|&x| ext.coeffs(x)).collect(),
    }
}

/// Finds a root of h in some F_{q^s}, s ≤ deg h, and lifts it to a torus point
/// x with x^e = root.
fn edge_witness(ctx: &FieldCtx, face: &Face, h: &[FieldElem], e: &[i64], limits: &Limits) -> Option<Witness> {
    let deg = poly::degree(h)?;
    for s in 1..=deg {
        if ctx.size().checked_pow(s as u32).is_none_or(|sz| sz > limits.max_field_size) {
            return None;
        }
        let ext = field_ext(ctx, s, limits).ok()?;
        let emb = ext.embedding_from(ctx).ok()?;
        let hh: Vec<FieldElem> = h.iter().map(|&c| emb.apply(c)).collect();
        if let Some(y) = ext.elements().skip(1).find(|&y| poly::eval(&ext, &hh, y).is_zero()) {
            let (_, alpha) = bezout(e);
            let point: Vec<FieldElem> = alpha.iter().map(|&a| ext.pow(y, a).unwrap()).collect();
            return Some(point_witness(face, &ext, &point));
        }
    }
    None
}

/// Brute-force search for a common zero of a face system over
/// (F_{q^s}^×)^n, s = 1..=s_max, within the evaluation budget. Returns the
/// witness, if any, and the largest s fully searched.
pub fn search_common_zero(
    ctx: &FieldCtx,
    sys: &FaceSystem,
    s_max: usize,
    limits: &Limits,
) -> Result<(Option<Witness>, usize), NondegenError> {
    let n = sys.polys.len();
    let mut spent = 0u64;
    let mut reached = 0;
    for s in 1..=s_max {
        let Some(size) = ctx.size().checked_pow(s as u32).filter(|&sz| sz <= limits.max_field_size) else { break };
        let cost = (size - 1).checked_pow(n as u32).unwrap_or(u64::MAX);
        if spent.saturating_add(cost) > limits.budget {
            break;
        }
        spent += cost;
        let ext = field_ext(ctx, s, limits)?;
        let emb = ext.embedding_from(ctx)?;
        let polys: Vec<LaurentPoly> = sys.polys.iter().map(|p| p.map_coeffs(|c| emb.apply(c))).collect();
        let dom = PointDomain::new(ext.size(), n, &[])?;
        let mut x = vec![FieldElem::ZERO; n];
        for i in 0..dom.len() {
            dom.point_into(i, &mut x);
            if polys.iter().all(|p| p.eval(&ext, &x).is_some_and(|v| v.is_zero())) {
                return Ok((Some(point_witness(&sys.face, &ext, &x)), s));
            }
        }
        reached = s;
    }
    Ok((None, reached))
}

/// Decides non-degeneracy: exactly on vertices and edges, by bounded search
/// on 2-faces (n = 3).
pub fn check_nondegenerate(
    d: &DecomposedWitt,
    nd: &NewtonData,
    s_max: usize,
    limits: &Limits,
) -> Result<NondegenVerdict, NondegenError> {
    nd.grid_denominator()?;
    let n = d.n();
    if n > 3 {
        return Err(NondegenError::UnsupportedDimension(n));
    }
    let ctx = d.field();
    let mut degenerate_faces = Vec::new();
    let mut witness = None;
    let mut heuristic_s: Option<usize> = None;
    for face in nd.faces() {
        let sys = face_system(d, nd, face)?;
        let found = match face.dim {
            0 => {
                if sys.polys.iter().all(|p| p.is_zero()) {
                    let one = vec![FieldElem::ONE; n];
                    Some(Some(point_witness(face, ctx, &one)))
                } else {
                    None
                }
            }
            1 => edge_common_factor(ctx, &sys).map(|(h, e)| edge_witness(ctx, face, &h, &e, limits)),
            _ => {
                let (w, reached) = search_common_zero(ctx, &sys, s_max, limits)?;
                if w.is_none() {
                    heuristic_s = Some(heuristic_s.map_or(reached, |s| s.min(reached)));
                }
                w.map(Some)
            }
        };
        if let Some(w) = found {
            degenerate_faces.push(face.vertices.clone());
            if witness.is_none() {
                witness = w;
            }
        }
    }
    let status = if !degenerate_faces.is_empty() {
        NondegenStatus::Degenerate
    } else if let Some(s) = heuristic_s {
        NondegenStatus::NonDegenerateHeuristic { s_max: s }
    } else {
        NondegenStatus::NonDegenerateExact
    };
    Ok(NondegenVerdict { status, degenerate_faces, witness, faces_checked: nd.faces().len() })
}

/// Re-evaluates a witness: all face polynomials vanish and every coordinate is nonzero.
pub fn verify_witness(d: &DecomposedWitt, nd: &NewtonData, w: &Witness, limits: &Limits) -> Result<bool, NondegenError> {
    let Some(face) = nd.faces().iter().find(|f| f.vertices == w.face) else { return Ok(false) };
    let sys = face_system(d, nd, face)?;
    let ext = FieldCtx::new(d.p(), w.field_deg, Some(&w.modulus), limits)?;
    let emb = ext.embedding_from(d.field())?;
    let x: Vec<FieldElem> = w.point.iter().map(|c| ext.from_coeffs(c)).collect::<Result<_, _>>()?;
    if x.iter().any(|c| c.is_zero()) {
        return Ok(false);
    }
    Ok(sys.polys.iter().all(|p| p.map_coeffs(|c| emb.apply(c)).eval(&ext, &x).is_some_and(|v| v.is_zero())))
}
