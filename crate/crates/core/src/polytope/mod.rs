//! The Newton polyhedron at infinity, its gauge, lattice-point weights on the
//! 1/D grid, P_Δ(t), Hodge polygons and coordinate slices.

mod hodge;
pub(crate) mod hull;
mod polygon;
mod slice;

pub use hodge::{boundary_through_origin, h_moment_identity, p_delta, total_degree_bound, volume_normalized, HodgeData};
pub use polygon::PolygonChain;
pub use slice::{slice_and_commode, Slice, SliceFamily};

use crate::arith::lcm_u64;
use crate::config::Limits;
use crate::wittring::DecomposedWitt;
use hull::{affine_dim, dot};
use num_rational::Rational64;
use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolytopeError {
    #[error("polytope has dimension {dim} in ambient dimension {n}")]
    DimensionDeficient { dim: usize, n: usize },
    #[error("dimension {0} is not supported")]
    UnsupportedDimension(usize),
    #[error("lattice enumeration needs {points} box points, cap is {cap}")]
    EnumerationBudgetExceeded { points: u128, cap: u64 },
    #[error("internal identity violated: {0}")]
    IdentityViolation(String),
    #[error("support has a negative exponent in coordinate {0} of J")]
    NegativeExponentInJ(usize),
    #[error("coordinate subset {0:?} is not contained in 1..={1}")]
    InvalidSubset(Vec<usize>, usize),
    #[error("empty support")]
    EmptySupport,
}

/// ⟨normal, x⟩ ≤ offset on Δ.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Facet {
    pub normal: Vec<i64>,
    pub offset: i64,
}

/// A face of Δ not containing the origin.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Face {
    pub vertices: Vec<Vec<i64>>,
    pub dim: usize,
    /// Indices into `NewtonData::facets` of the facets containing this face.
    pub tight: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct NewtonData {
    n: usize,
    dim: usize,
    points: Vec<Vec<i64>>,
    vertices: Vec<Vec<i64>>,
    facets: Vec<Facet>,
    faces: Vec<Face>,
    d: i64,
    max_box_points: u64,
}

impl NewtonData {
    /// The Newton polyhedron at infinity of a decomposed Witt vector.
    pub fn build_polyhedron(d: &DecomposedWitt, limits: &Limits) -> Result<NewtonData, PolytopeError> {
        if d.terms().is_empty() {
            return Err(PolytopeError::EmptySupport);
        }
        Self::from_points(d.weighted_points(), d.n(), limits)
    }

    /// Hull of `points` ∪ {0} in Q^n.
    pub fn from_points(points: Vec<Vec<i64>>, n: usize, limits: &Limits) -> Result<NewtonData, PolytopeError> {
        if n > limits.max_dimension {
            return Err(PolytopeError::UnsupportedDimension(n));
        }
        let mut pts = points;
        pts.push(vec![0; n]);
        pts.sort();
        pts.dedup();
        let refs: Vec<&Vec<i64>> = pts.iter().collect();
        let dim = affine_dim(&refs);
        let mut nd = NewtonData {
            n,
            dim,
            points: pts,
            vertices: Vec::new(),
            facets: Vec::new(),
            faces: Vec::new(),
            d: 1,
            max_box_points: limits.max_box_points,
        };
        if n == 0 {
            nd.vertices = vec![vec![]];
            return Ok(nd);
        }
        if dim < n {
            nd.vertices = hull::extreme_points(&nd.points, n).into_iter().map(|i| nd.points[i].clone()).collect();
            return Ok(nd);
        }
        let raw = hull::facets(&nd.points, n);
        let vidx = hull::vertices_from_facets(&nd.points, &raw, n);
        nd.vertices = vidx.iter().map(|&i| nd.points[i].clone()).collect();
        nd.facets = raw.into_iter().map(|(normal, offset)| Facet { normal, offset }).collect();
        nd.faces = nd.faces_avoiding_origin();
        nd.d = nd.compute_grid_denominator()?;
        Ok(nd)
    }

    fn tight_facets(&self, x: &[i64]) -> Vec<usize> {
        (0..self.facets.len()).filter(|&i| dot(&self.facets[i].normal, x) == self.facets[i].offset).collect()
    }

    fn face_from_tight(&self, tight: &[usize], expected_dim: usize) -> Option<Face> {
        let verts: Vec<Vec<i64>> = self
            .vertices
            .iter()
            .filter(|v| tight.iter().all(|&t| dot(&self.facets[t].normal, v) == self.facets[t].offset))
            .cloned()
            .collect();
        if verts.is_empty() || verts.iter().any(|v| v.iter().all(|&x| x == 0)) {
            return None;
        }
        let refs: Vec<&Vec<i64>> = verts.iter().collect();
        if affine_dim(&refs) != expected_dim {
            return None;
        }
        let full_tight = (0..self.facets.len())
            .filter(|&i| verts.iter().all(|v| dot(&self.facets[i].normal, v) == self.facets[i].offset))
            .collect();
        Some(Face { vertices: verts, dim: expected_dim, tight: full_tight })
    }

    fn faces_avoiding_origin(&self) -> Vec<Face> {
        let n = self.n;
        let mut faces: Vec<Face> = Vec::new();
        let push = |f: Option<Face>, faces: &mut Vec<Face>| {
            if let Some(f) = f {
                if !faces.iter().any(|g| g.vertices == f.vertices) {
                    faces.push(f);
                }
            }
        };
        for i in 0..self.facets.len() {
            push(self.face_from_tight(&[i], n - 1), &mut faces);
        }
        if n == 3 {
            for i in 0..self.facets.len() {
                for j in i + 1..self.facets.len() {
                    push(self.face_from_tight(&[i, j], 1), &mut faces);
                }
            }
        }
        for v in &self.vertices {
            let t = self.tight_facets(v);
            push(self.face_from_tight(&t, 0), &mut faces);
        }
        faces.sort_by(|a, b| (a.dim, &a.vertices).cmp(&(b.dim, &b.vertices)));
        faces
    }

    /// Least common denominator of deg over lattice points of the cone. Any
    /// lattice point in a simplicial cone cell is an integral combination of
    /// degree-one generators plus a parallelepiped point of degree < n, so
    /// points of degree ≤ n suffice.
    fn compute_grid_denominator(&self) -> Result<i64, PolytopeError> {
        let offsets_lcm =
            self.facets.iter().filter(|f| f.offset > 0).fold(1u64, |acc, f| lcm_u64(acc, f.offset as u64)) as i64;
        let mut d = 1u64;
        self.for_each_cone_point(Rational64::from_integer(self.n as i64), |_, deg| {
            d = lcm_u64(d, *deg.denom() as u64);
        })?;
        let d = d as i64;
        // with primitive normals every residue of ⟨w,u⟩ mod c occurs in the
        // cone cell over a facet, so the minimum is the lcm itself
        if offsets_lcm != d {
            return Err(PolytopeError::IdentityViolation(format!(
                "grid denominator {d} differs from the offset lcm {offsets_lcm}"
            )));
        }
        Ok(d)
    }

    pub fn n(&self) -> usize {
        self.n
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn is_full_dimensional(&self) -> bool {
        self.dim == self.n
    }
    /// The generator points together with the origin.
    pub fn points(&self) -> &[Vec<i64>] {
        &self.points
    }
    pub fn vertices(&self) -> &[Vec<i64>] {
        &self.vertices
    }
    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }
    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub(crate) fn require_full(&self) -> Result<(), PolytopeError> {
        if self.dim < self.n {
            Err(PolytopeError::DimensionDeficient { dim: self.dim, n: self.n })
        } else {
            Ok(())
        }
    }

    /// D(Δ), the grid denominator of the gauge.
    pub fn grid_denominator(&self) -> Result<i64, PolytopeError> {
        self.require_full()?;
        Ok(self.d)
    }

    /// True when 0 lies in the interior of Δ.
    pub fn origin_interior(&self) -> bool {
        self.is_full_dimensional() && self.facets.iter().all(|f| f.offset > 0)
    }

    /// True when `x` lies on the face.
    pub fn face_contains(&self, face: &Face, x: &[i64]) -> bool {
        face.tight.iter().all(|&t| dot(&self.facets[t].normal, x) == self.facets[t].offset)
    }

    fn degree_unchecked(&self, u: &[i64]) -> Option<Rational64> {
        let mut best = Rational64::zero();
        for f in &self.facets {
            let v = dot(&f.normal, u);
            if f.offset == 0 {
                if v > 0 {
                    return None;
                }
            } else {
                let r = Rational64::new(v, f.offset);
                if r > best {
                    best = r;
                }
            }
        }
        Some(best)
    }

    /// The gauge of Δ at `u`; `None` when u is outside the cone over Δ.
    pub fn degree(&self, u: &[i64]) -> Result<Option<Rational64>, PolytopeError> {
        self.require_full()?;
        Ok(self.degree_unchecked(u))
    }

    /// Calls `visit` on every cone lattice point of degree ≤ t.
    pub fn for_each_cone_point(
        &self,
        t: Rational64,
        mut visit: impl FnMut(&[i64], Rational64),
    ) -> Result<(), PolytopeError> {
        self.require_full()?;
        let n = self.n;
        if n == 0 {
            visit(&[], Rational64::zero());
            return Ok(());
        }
        let mut lo = vec![0i64; n];
        let mut hi = vec![0i64; n];
        for v in &self.vertices {
            for j in 0..n {
                let s = t * Rational64::from_integer(v[j]);
                lo[j] = lo[j].min(s.floor().to_integer());
                hi[j] = hi[j].max(s.ceil().to_integer());
            }
        }
        let count: u128 = (0..n).map(|j| (hi[j] - lo[j] + 1) as u128).product();
        if count > self.max_box_points as u128 {
            return Err(PolytopeError::EnumerationBudgetExceeded { points: count, cap: self.max_box_points });
        }
        let mut u = lo.clone();
        loop {
            if let Some(deg) = self.degree_unchecked(&u) {
                if deg <= t {
                    visit(&u, deg);
                }
            }
            let mut j = 0;
            loop {
                if j == n {
                    return Ok(());
                }
                u[j] += 1;
                if u[j] <= hi[j] {
                    break;
                }
                u[j] = lo[j];
                j += 1;
            }
        }
    }

    /// W_Δ(k) for k = 0..=kmax: lattice points of degree exactly k/D.
    pub fn weight_vector(&self, kmax: usize) -> Result<Vec<u64>, PolytopeError> {
        self.require_full()?;
        let d = self.d;
        let mut w = vec![0u64; kmax + 1];
        self.for_each_cone_point(Rational64::new(kmax as i64, d), |_, deg| {
            let k = deg * d;
            debug_assert!(k.is_integer());
            w[k.to_integer() as usize] += 1;
        })?;
        Ok(w)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn nd(points: &[&[i64]], n: usize) -> NewtonData {
        NewtonData::from_points(points.iter().map(|p| p.to_vec()).collect(), n, &Limits::default()).unwrap()
    }

    fn r(a: i64, b: i64) -> Rational64 {
        Rational64::new(a, b)
    }

    #[test]
    fn interval_zero_two() {
        let d = nd(&[&[2]], 1);
        assert_eq!(d.grid_denominator().unwrap(), 2);
        assert_eq!(d.facets(), &[Facet { normal: vec![-1], offset: 0 }, Facet { normal: vec![1], offset: 2 }]);
        assert_eq!(d.degree(&[3]).unwrap(), Some(r(3, 2)));
        assert_eq!(d.degree(&[0]).unwrap(), Some(r(0, 1)));
        assert_eq!(d.degree(&[-1]).unwrap(), None);
        assert_eq!(d.weight_vector(4).unwrap(), vec![1, 1, 1, 1, 1]);
        assert_eq!(d.faces().len(), 1);
    }

    #[test]
    fn symmetric_interval_and_simplex() {
        let d = nd(&[&[1], &[-1]], 1);
        assert_eq!(d.grid_denominator().unwrap(), 1);
        assert_eq!(d.weight_vector(3).unwrap(), vec![1, 2, 2, 2]);
        assert!(d.origin_interior());
        let s = nd(&[&[1, 0], &[0, 1]], 2);
        assert_eq!(s.grid_denominator().unwrap(), 1);
        assert_eq!(s.degree(&[2, 3]).unwrap(), Some(r(5, 1)));
        assert_eq!(s.weight_vector(2).unwrap(), vec![1, 2, 3]);
        // the edge and its two endpoints
        assert_eq!(s.faces().len(), 3);
    }

    #[test]
    fn grid_denominator_examples() {
        let tri = nd(&[&[2, 0], &[0, 2]], 2);
        assert_eq!(tri.grid_denominator().unwrap(), 2);
        // facet x + 2y ≤ 2 through (2,0),(0,1): (1,0) has degree 1/2
        let t2 = nd(&[&[2, 0], &[0, 1]], 2);
        assert_eq!(t2.grid_denominator().unwrap(), 2);
        let t3 = nd(&[&[2, 0], &[0, 2], &[1, 1]], 2);
        assert_eq!(t3.grid_denominator().unwrap(), 2);
    }

    #[test]
    fn degenerate_polytope_refuses() {
        let d = nd(&[&[1, 1], &[2, 2]], 2);
        assert_eq!(d.dim(), 1);
        assert_eq!(d.vertices(), &[vec![0, 0], vec![2, 2]]);
        assert!(matches!(d.degree(&[1, 1]), Err(PolytopeError::DimensionDeficient { .. })));
        assert!(matches!(d.weight_vector(2), Err(PolytopeError::DimensionDeficient { .. })));
    }

    #[test]
    fn three_dimensional_cube_faces() {
        let c = nd(&[&[1, 1, 1], &[-1, -1, -1], &[1, -1, -1], &[-1, 1, -1], &[-1, -1, 1], &[1, 1, -1], &[1, -1, 1], &[-1, 1, 1]], 3);
        assert_eq!(c.facets().len(), 6);
        // 6 squares, 12 edges, 8 vertices
        assert_eq!(c.faces().len(), 26);
        assert_eq!(c.grid_denominator().unwrap(), 1);
    }
}
