//! L-functions from power sums, q-adic Newton polygons and the verdict checks.

mod roots;
mod series;
mod verify;

pub use roots::{reciprocal_roots, RootReport};
pub use series::{euler_product, extract_polynomial, rational_reconstruct, LPolynomial, LSeries, RationalFunction};
pub use verify::{verify, LOutcome, Verdict, VerdictStatus, VerificationReport, VerifyInput};

use crate::charsum::CyclotomicInt;
use crate::polytope::PolygonChain;
use num_rational::Rational64;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LfunctionError {
    #[error("no power sums supplied")]
    NoSums,
    #[error("series known to order {have}, need {need}")]
    InsufficientTerms { have: usize, need: usize },
    #[error("coefficient {index} beyond the expected degree is nonzero")]
    NotPolynomial { index: usize },
    #[error("coefficient {index} is not an algebraic integer")]
    NonIntegralCoefficient { index: usize },
    #[error("no rational function with numerator and denominator degree <= {dmax} fits the series")]
    Inconclusive { dmax: usize },
}

/// ord_q with q = p^a; `None` stands for +∞.
pub fn ordq(v: &CyclotomicInt, a: u32) -> Option<Rational64> {
    v.p_order().map(|o| o / a as i64)
}

/// Lower convex hull of (i, ord_q c_i) over the nonzero coefficients.
pub fn newton_polygon(coeffs: &[CyclotomicInt], a: u32) -> PolygonChain {
    let pts: Vec<(Rational64, Rational64)> = coeffs
        .iter()
        .enumerate()
        .filter_map(|(i, c)| ordq(c, a).map(|o| (Rational64::from_integer(i as i64), o)))
        .collect();
    PolygonChain::lower_hull(&pts)
}
