use num_complex::Complex64;
use serde::Serialize;

/// Reciprocal roots α of c_0 + c_1 t + … + c_d t^d (c_0 = 1), with diagnostics.
#[derive(Clone, Debug, Serialize)]
pub struct RootReport {
    /// (re, im) pairs.
    pub roots: Vec<[f64; 2]>,
    pub moduli: Vec<f64>,
    /// Largest relative residual of the monic reversed polynomial at a root.
    pub max_residual: f64,
}

impl RootReport {
    pub fn complex_roots(&self) -> Vec<Complex64> {
        self.roots.iter().map(|r| Complex64::new(r[0], r[1])).collect()
    }

    /// −Σ α^k, the power sums of the polynomial.
    pub fn power_sum(&self, k: u32) -> Complex64 {
        -self.complex_roots().iter().map(|a| a.powu(k)).sum::<Complex64>()
    }
}

fn horner(b: &[Complex64], x: Complex64) -> (Complex64, Complex64) {
    let mut v = Complex64::new(1.0, 0.0);
    let mut dv = Complex64::new(0.0, 0.0);
    for &c in b {
        dv = dv * x + v;
        v = v * x + c;
    }
    (v, dv)
}

/// Aberth–Ehrlich on the reversed polynomial x^d + c_1 x^{d−1} + … + c_d after
/// rescaling x = s·y, then a Newton polish and averaging of root clusters.
pub fn reciprocal_roots(coeffs: &[Complex64], scale: f64) -> RootReport {
    let d = coeffs.len().saturating_sub(1);
    if d == 0 {
        return RootReport { roots: Vec::new(), moduli: Vec::new(), max_residual: 0.0 };
    }
    assert!((coeffs[0] - 1.0).norm() < 1e-12, "constant term must be 1");
    let b: Vec<Complex64> = (1..=d).map(|i| coeffs[i] / scale.powi(i as i32)).collect();
    let radius = b.iter().enumerate().map(|(i, c)| c.norm().powf(1.0 / (i + 1) as f64)).fold(0.0, f64::max).max(1e-3);
    let mut z: Vec<Complex64> = (0..d)
        .map(|k| Complex64::from_polar(radius, 2.0 * std::f64::consts::PI * (k as f64 + 0.25) / d as f64 + 0.4))
        .collect();
    for _ in 0..2000 {
        let mut worst: f64 = 0.0;
        for i in 0..d {
            let (v, dv) = horner(&b, z[i]);
            if v.norm() == 0.0 {
                continue;
            }
            let ratio = v / dv;
            let repulsion: Complex64 = (0..d).filter(|&j| j != i).map(|j| (z[i] - z[j]).inv()).sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if step.is_finite() {
                z[i] -= step;
                worst = worst.max(step.norm() / z[i].norm().max(1.0));
            }
        }
        if worst < 1e-16 {
            break;
        }
    }
    for zi in z.iter_mut() {
        for _ in 0..3 {
            let (v, dv) = horner(&b, *zi);
            let next = *zi - v / dv;
            if !next.is_finite() || horner(&b, next).0.norm() >= v.norm() {
                break;
            }
            *zi = next;
        }
    }
    // the mean of a multiple root's cluster is far better conditioned than its members
    let mut out = z.clone();
    for i in 0..d {
        let cluster: Vec<Complex64> = z.iter().copied().filter(|w| (w - z[i]).norm() < 1e-5 * z[i].norm().max(1.0)).collect();
        if cluster.len() > 1 {
            out[i] = cluster.iter().sum::<Complex64>() / cluster.len() as f64;
        }
    }
    let max_residual = z
        .iter()
        .map(|&w| {
            let scale_w: f64 = std::iter::once(1.0).chain(b.iter().map(|c| c.norm())).enumerate().map(|(i, c)| c * w.norm().powi((d - i) as i32)).sum();
            horner(&b, w).0.norm() / scale_w
        })
        .fold(0.0, f64::max);
    let alphas: Vec<Complex64> = out.iter().map(|w| w * scale).collect();
    RootReport {
        roots: alphas.iter().map(|a| [a.re, a.im]).collect(),
        moduli: alphas.iter().map(|a| a.norm()).collect(),
        max_residual,
    }
}
