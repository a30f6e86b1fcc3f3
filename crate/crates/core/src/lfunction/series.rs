use super::LfunctionError;
use crate::arith::pow_u64;
use crate::charsum::{CycloRat, CyclotomicInt};
use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;

/// c_0..c_K of exp(Σ S_k t^k / k), exactly.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LSeries {
    pub coeffs: Vec<CycloRat>,
}

/// c_0..c_d of an L-function that is a polynomial with integral coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LPolynomial {
    pub coeffs: Vec<CyclotomicInt>,
}

impl LPolynomial {
    pub fn degree(&self) -> usize {
        self.coeffs.iter().rposition(|c| !c.is_zero()).unwrap_or(0)
    }
}

/// P/Q with P(0) = Q(0) = 1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RationalFunction {
    pub numerator: Vec<CycloRat>,
    pub denominator: Vec<CycloRat>,
}

impl RationalFunction {
    pub fn total_degree(&self) -> usize {
        let deg = |v: &[CycloRat]| v.iter().rposition(|c| !c.is_zero()).unwrap_or(0);
        deg(&self.numerator) + deg(&self.denominator)
    }
}

impl LSeries {
    /// Newton recursion j·c_j = Σ_{k=1}^{j} S_k c_{j−k}; `sums[k-1]` = S_k.
    pub fn from_sums(sums: &[CyclotomicInt]) -> Result<LSeries, LfunctionError> {
        let first = sums.first().ok_or(LfunctionError::NoSums)?;
        let (p, m) = (first.p(), first.m());
        let s: Vec<CycloRat> = sums.iter().map(|x| CycloRat::from(x.clone())).collect();
        let mut c = vec![CycloRat::one(p, m)];
        for j in 1..=sums.len() {
            let mut acc = CycloRat::zero(p, m);
            for k in 1..=j {
                acc = &acc + &(&s[k - 1] * &c[j - k]);
            }
            c.push(acc.div_int(&BigInt::from(j)));
        }
        Ok(LSeries { coeffs: c })
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Logarithmic derivative: recovers S_1..S_K.
    pub fn power_sums(&self) -> Vec<CycloRat> {
        let c = &self.coeffs;
        let mut s: Vec<CycloRat> = Vec::with_capacity(self.order());
        for j in 1..c.len() {
            let mut acc = CycloRat::new(c[j].numerator().scale(&BigInt::from(j)), c[j].denominator().clone());
            for k in 1..j {
                acc = &acc - &(&s[k - 1] * &c[j - k]);
            }
            s.push(acc);
        }
        s
    }

    pub fn galois(&self, s: u64) -> LSeries {
        LSeries { coeffs: self.coeffs.iter().map(|c| c.galois(s)).collect() }
    }
}

/// Truncates a series to degree d after checking c_{d+1..K} = 0 and integrality.
pub fn extract_polynomial(s: &LSeries, d: usize, guard: usize) -> Result<LPolynomial, LfunctionError> {
    if s.order() < d + guard {
        return Err(LfunctionError::InsufficientTerms { have: s.order(), need: d + guard });
    }
    if let Some(i) = (d + 1..=s.order()).find(|&i| !s.coeffs[i].is_zero()) {
        return Err(LfunctionError::NotPolynomial { index: i });
    }
    let coeffs = s.coeffs[..=d]
        .iter()
        .enumerate()
        .map(|(i, c)| c.to_integral().ok_or(LfunctionError::NonIntegralCoefficient { index: i }))
        .collect::<Result<_, _>>()?;
    Ok(LPolynomial { coeffs })
}

/// Solves A x = b over Q(ζ); returns one solution (free variables 0) or None.
fn solve(mut a: Vec<Vec<CycloRat>>, mut b: Vec<CycloRat>, nvars: usize, zero: &CycloRat) -> Option<Vec<CycloRat>> {
    let rows = a.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..nvars {
        let Some(piv) = (r..rows).find(|&i| !a[i][col].is_zero()) else { continue };
        a.swap(r, piv);
        b.swap(r, piv);
        let inv = a[r][col].inv().unwrap();
        for j in col..nvars {
            a[r][j] = &a[r][j] * &inv;
        }
        b[r] = &b[r] * &inv;
        for i in 0..rows {
            if i != r && !a[i][col].is_zero() {
                let f = a[i][col].clone();
                for j in col..nvars {
                    let t = &f * &a[r][j];
                    a[i][j] = &a[i][j] - &t;
                }
                let t = &f * &b[r];
                b[i] = &b[i] - &t;
            }
        }
        pivots.push(col);
        r += 1;
    }
    if b[r..].iter().any(|x| !x.is_zero()) {
        return None;
    }
    let mut x = vec![zero.clone(); nvars];
    for (i, &col) in pivots.iter().enumerate() {
        x[col] = b[i].clone();
    }
    Some(x)
}

/// The least-total-degree P/Q (deg P, deg Q ≤ dmax) with P ≡ Q·L mod t^{K+1}.
/// K ≥ 2·dmax + 1 leaves every candidate with more equations than unknowns.
pub fn rational_reconstruct(s: &LSeries, dmax: usize) -> Result<RationalFunction, LfunctionError> {
    let k = s.order();
    if k < 2 * dmax + 1 {
        return Err(LfunctionError::InsufficientTerms { have: k, need: 2 * dmax + 1 });
    }
    let c = &s.coeffs;
    let zero = CycloRat::zero(c[0].numerator().p(), c[0].numerator().m());
    for total in 0..=2 * dmax {
        for e in 0..=total.min(dmax) {
            let dp = total - e;
            if dp > dmax {
                continue;
            }
            // Σ_{r=1}^{e} q_r c_{i−r} = −c_i for dp < i ≤ K
            let (rows, rhs): (Vec<Vec<CycloRat>>, Vec<CycloRat>) = (dp + 1..=k)
                .map(|i| {
                    let row = (1..=e).map(|r| if i >= r { c[i - r].clone() } else { zero.clone() }).collect();
                    (row, -&c[i])
                })
                .unzip();
            let Some(qs) = solve(rows, rhs, e, &zero) else { continue };
            let mut q = vec![c[0].clone()];
            q.extend(qs);
            let numerator: Vec<CycloRat> = (0..=dp)
                .map(|i| {
                    let mut acc = zero.clone();
                    for (r, qr) in q.iter().enumerate().take(i + 1) {
                        acc = &acc + &(qr * &c[i - r]);
                    }
                    acc
                })
                .collect();
            return Ok(RationalFunction { numerator, denominator: q });
        }
    }
    Err(LfunctionError::Inconclusive { dmax })
}

/// exp-of-sums coefficients rebuilt from closed points: Π_x (1 − ψ(x) t^{deg x})^{exponent},
/// given for every degree d the histogram of trace residues over points of exact degree d.
/// The exponent is (−1)^n for the alternating convention and −1 for the plain one.
pub fn euler_product(p: u64, m: usize, exponent: i64, primitive: &[Vec<u64>], twist: u64) -> LSeries {
    let kmax = primitive.len();
    let order = pow_u64(p, m as u32);
    let mut series: Vec<CyclotomicInt> = vec![CyclotomicInt::zero(p, m); kmax + 1];
    series[0] = CyclotomicInt::one(p, m);
    for (idx, prof) in primitive.iter().enumerate() {
        let d = idx + 1;
        for (c, &count) in prof.iter().enumerate() {
            if count == 0 {
                continue;
            }
            assert_eq!(count % d as u64, 0, "orbits of Frobenius have size d");
            let e = BigInt::from(exponent) * BigInt::from(count / d as u64);
            // (1 − z t^d)^e = Σ_r C(e, r) (−z)^r t^{dr}
            let z = CyclotomicInt::zeta_pow(p, m, (c as u64 * twist) % order);
            let mut factor = vec![CyclotomicInt::zero(p, m); kmax + 1];
            let mut binom = BigInt::one();
            let mut zr = CyclotomicInt::one(p, m);
            for r in 0..=kmax / d {
                let coef = if r % 2 == 0 { binom.clone() } else { -binom.clone() };
                factor[d * r] = zr.scale(&coef);
                binom = binom * (&e - BigInt::from(r)) / BigInt::from(r + 1);
                zr = &zr * &z;
            }
            let mut next = vec![CyclotomicInt::zero(p, m); kmax + 1];
            for (i, a) in series.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (j, b) in factor.iter().enumerate().take(kmax + 1 - i) {
                    if !b.is_zero() {
                        next[i + j] = &next[i + j] + &(a * b);
                    }
                }
            }
            series = next;
        }
    }
    LSeries { coeffs: series.into_iter().map(CycloRat::from).collect() }
}
