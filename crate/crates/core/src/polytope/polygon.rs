use num_rational::Rational64;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

/// A lower-convex chain of rational points with strictly increasing abscissae.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolygonChain {
    vertices: Vec<(Rational64, Rational64)>,
}

fn cross(o: (Rational64, Rational64), a: (Rational64, Rational64), b: (Rational64, Rational64)) -> Rational64 {
    (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
}

impl PolygonChain {
    /// Lower convex hull (Andrew's monotone chain) of a point cloud; for
    /// repeated abscissae the lowest ordinate wins. Collinear interior points
    /// are dropped.
    pub fn lower_hull(points: &[(Rational64, Rational64)]) -> PolygonChain {
        let mut pts = points.to_vec();
        pts.sort();
        pts.dedup_by(|b, a| a.0 == b.0);
        let mut hull: Vec<(Rational64, Rational64)> = Vec::with_capacity(pts.len());
        for p in pts {
            while hull.len() >= 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= Rational64::zero() {
                hull.pop();
            }
            hull.push(p);
        }
        PolygonChain { vertices: hull }
    }

    /// The Hodge polygon of a coefficient sequence on a 1/D grid: segment of
    /// slope i/D and horizontal length a_i, in increasing order of slope.
    pub fn hodge(coeffs: &[i64], d: i64) -> Option<PolygonChain> {
        let mut vertices = vec![(Rational64::zero(), Rational64::zero())];
        let (mut x, mut y) = (0i64, Rational64::zero());
        for (i, &a) in coeffs.iter().enumerate() {
            if a < 0 {
                return None;
            }
            if a == 0 {
                continue;
            }
            x += a;
            y += Rational64::new(i as i64 * a, d);
            vertices.push((Rational64::from_integer(x), y));
        }
        Some(PolygonChain { vertices })
    }

    pub fn from_vertices(vertices: Vec<(Rational64, Rational64)>) -> PolygonChain {
        PolygonChain { vertices }
    }

    pub fn vertices(&self) -> &[(Rational64, Rational64)] {
        &self.vertices
    }

    pub fn endpoint(&self) -> (Rational64, Rational64) {
        *self.vertices.last().expect("polygon chains always contain the origin")
    }

    pub fn slopes(&self) -> Vec<Rational64> {
        self.vertices.windows(2).map(|w| (w[1].1 - w[0].1) / (w[1].0 - w[0].0)).collect()
    }

    pub fn is_lower_convex(&self) -> bool {
        let xs_increase = self.vertices.windows(2).all(|w| w[0].0 < w[1].0);
        let s = self.slopes();
        xs_increase && s.windows(2).all(|w| w[0] <= w[1])
    }

    /// Piecewise-linear interpolation; `None` outside the abscissa range.
    pub fn value_at(&self, x: Rational64) -> Option<Rational64> {
        let first = self.vertices.first()?;
        if x < first.0 {
            return None;
        }
        if x == first.0 {
            return Some(first.1);
        }
        for w in self.vertices.windows(2) {
            if x <= w[1].0 {
                return Some(w[0].1 + (w[1].1 - w[0].1) * (x - w[0].0) / (w[1].0 - w[0].0));
            }
        }
        None
    }

    /// Pointwise on-or-above test at every vertex abscissa of either chain
    /// inside the common domain.
    pub fn lies_on_or_above(&self, other: &PolygonChain) -> bool {
        let xs = self.vertices.iter().chain(&other.vertices).map(|v| v.0);
        for x in xs {
            if let (Some(a), Some(b)) = (self.value_at(x), other.value_at(x)) {
                if a < b {
                    return false;
                }
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(a: i64, b: i64) -> Rational64 {
        Rational64::new(a, b)
    }

    #[test]
    fn hodge_chains() {
        let h = PolygonChain::hodge(&[1, 1], 2).unwrap();
        assert_eq!(h.vertices(), &[(r(0, 1), r(0, 1)), (r(1, 1), r(0, 1)), (r(2, 1), r(1, 2))]);
        let h = PolygonChain::hodge(&[1], 1).unwrap();
        assert_eq!(h.endpoint(), (r(1, 1), r(0, 1)));
        assert!(PolygonChain::hodge(&[1, -1], 1).is_none());
        assert!(h.is_lower_convex());
    }

    #[test]
    fn lower_hull_and_comparison() {
        let pts = [(r(0, 1), r(0, 1)), (r(1, 1), r(1, 1)), (r(2, 1), r(1, 1)), (r(1, 1), r(0, 1))];
        let np = PolygonChain::lower_hull(&pts);
        assert_eq!(np.vertices(), &[(r(0, 1), r(0, 1)), (r(1, 1), r(0, 1)), (r(2, 1), r(1, 1))]);
        let hp = PolygonChain::hodge(&[1, 1], 1).unwrap();
        assert!(np.lies_on_or_above(&hp));
        let flat = PolygonChain::lower_hull(&[(r(0, 1), r(0, 1)), (r(2, 1), r(1, 2))]);
        assert!(!flat.lies_on_or_above(&hp));
        assert_eq!(np.value_at(r(3, 2)), Some(r(1, 2)));
        assert_eq!(np.value_at(r(3, 1)), None);
    }
}
