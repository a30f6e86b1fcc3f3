use super::roots::{reciprocal_roots, RootReport};
use super::series::{LPolynomial, LSeries, RationalFunction};
use super::{newton_polygon, LfunctionError};
use crate::charsum::CyclotomicInt;
use crate::nondegen::NondegenVerdict;
use crate::polytope::{HodgeData, NewtonData, PolygonChain, SliceFamily};
use num_complex::Complex64;
use num_rational::Rational64;
use serde::Serialize;

/// What the pipeline managed to recover from the power sums.
#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LOutcome {
    Polynomial(LPolynomial),
    Rational(RationalFunction),
    /// Polynomial extraction was attempted and failed.
    ExtractionFailed { error: String },
    Inconclusive { dmax: usize },
}

impl LOutcome {
    pub fn from_extraction(r: Result<LPolynomial, LfunctionError>) -> LOutcome {
        match r {
            Ok(p) => LOutcome::Polynomial(p),
            Err(e) => LOutcome::ExtractionFailed { error: e.to_string() },
        }
    }

    pub fn from_reconstruction(r: Result<RationalFunction, LfunctionError>, dmax: usize) -> LOutcome {
        match r {
            Ok(f) => LOutcome::Rational(f),
            Err(LfunctionError::Inconclusive { .. }) => LOutcome::Inconclusive { dmax },
            Err(e) => LOutcome::ExtractionFailed { error: e.to_string() },
        }
    }
}

pub struct VerifyInput<'a> {
    pub p: u64,
    pub a: u32,
    pub n: usize,
    pub nd: &'a NewtonData,
    pub hodge: &'a HodgeData,
    /// Slices over J (only Δ itself when J is empty).
    pub family: &'a SliceFamily,
    pub nondegen: &'a NondegenVerdict,
    pub outcome: &'a LOutcome,
    /// S_1..S_K in the convention that produced the series.
    pub sums: &'a [CyclotomicInt],
    pub series: &'a LSeries,
    /// The same series rebuilt from closed points, when available.
    pub euler: Option<&'a LSeries>,
    pub degree_bound: u64,
    pub tolerance: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum VerdictStatus {
    Pass,
    Fail,
    NotApplicable,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub name: String,
    pub status: VerdictStatus,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub np: Option<PolygonChain>,
    pub hp: Option<PolygonChain>,
    pub np_above_hp: Option<bool>,
    pub endpoints_match: Option<bool>,
    /// Degree of the polynomial, or total degree of P/Q.
    pub degree: Option<usize>,
    pub expected_degree: Option<i64>,
    pub nvol: i64,
    pub degree_bound: u64,
    pub commode: bool,
    pub endpoint_ordinate: Option<Rational64>,
    pub weight_moduli: Vec<f64>,
    pub roots: Option<RootReport>,
    pub verdicts: Vec<Verdict>,
}

impl VerificationReport {
    pub fn any_failed(&self) -> bool {
        self.verdicts.iter().any(|v| v.status == VerdictStatus::Fail)
    }

    pub fn verdict(&self, name: &str) -> Option<&Verdict> {
        self.verdicts.iter().find(|v| v.name == name)
    }
}

fn push(out: &mut Vec<Verdict>, name: &str, status: VerdictStatus, detail: impl Into<String>) {
    out.push(Verdict { name: name.to_string(), status, detail: detail.into() });
}

fn pass_fail(ok: bool) -> VerdictStatus {
    if ok {
        VerdictStatus::Pass
    } else {
        VerdictStatus::Fail
    }
}

fn fmt_r(r: Rational64) -> String {
    if *r.denom() == 1 {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Evaluates every applicable check; failures become verdicts, never errors.
pub fn verify(input: &VerifyInput) -> VerificationReport {
    use VerdictStatus::*;
    let mut verdicts = Vec::new();
    let j_empty = input.family.j.is_empty();
    let nondegen = input.nondegen.is_nondegenerate();
    let commode = input.family.commode;
    let hyp = nondegen && commode;
    let hyp_note = if input.nondegen.is_exact() { "" } else { " (non-degeneracy verified heuristically)" };
    let d_grid = input.nd.grid_denominator().ok();

    let expected_degree = input.family.signed_volume().ok();
    let hp = if j_empty {
        Some(input.hodge.hodge.clone())
    } else {
        d_grid.and_then(|d| input.family.combined_hodge(d).ok().flatten())
    };
    let endpoint_ordinate = expected_degree.and_then(|v| input.family.endpoint_ordinate(input.n, v).ok().flatten());

    let poly = match input.outcome {
        LOutcome::Polynomial(p) => Some(p),
        _ => None,
    };
    let degree = match input.outcome {
        LOutcome::Polynomial(p) => Some(p.degree()),
        LOutcome::Rational(f) => Some(f.total_degree()),
        _ => None,
    };

    // total degree bound
    if !j_empty {
        push(&mut verdicts, "degree_bound", NotApplicable, "the bound concerns J = ∅");
    } else {
        match (input.outcome, degree) {
            (_, Some(deg)) => push(
                &mut verdicts,
                "degree_bound",
                pass_fail(deg as u64 <= input.degree_bound),
                format!("total degree {deg}, bound {}", input.degree_bound),
            ),
            (LOutcome::Inconclusive { dmax }, _) if *dmax as u64 >= input.degree_bound => push(
                &mut verdicts,
                "degree_bound",
                Fail,
                format!("no P/Q with degrees <= {dmax} although the bound is {}", input.degree_bound),
            ),
            (LOutcome::Inconclusive { dmax }, _) => push(
                &mut verdicts,
                "degree_bound",
                NotApplicable,
                format!("inconclusive up to degree {dmax}, below the bound {}", input.degree_bound),
            ),
            _ => push(&mut verdicts, "degree_bound", NotApplicable, "no L-function recovered"),
        }
    }

    // polynomiality and degree
    let mut np = None;
    let (mut np_above_hp, mut endpoints_match) = (None, None);
    if !hyp {
        let why = if nondegen { "not commode" } else { "degenerate" };
        for name in ["polynomial_degree", "newton_above_hodge", "endpoints_match"] {
            push(&mut verdicts, name, NotApplicable, why);
        }
    } else {
        let exp = expected_degree.expect("commode families have a signed volume");
        match (poly, input.outcome) {
            (Some(p), _) => push(
                &mut verdicts,
                "polynomial_degree",
                pass_fail(p.degree() as i64 == exp),
                format!("degree {}, expected {exp}{hyp_note}", p.degree()),
            ),
            (None, LOutcome::ExtractionFailed { error }) => {
                push(&mut verdicts, "polynomial_degree", Fail, format!("{error}{hyp_note}"))
            }
            _ => push(&mut verdicts, "polynomial_degree", Fail, "no polynomial recovered"),
        }
        match (poly, &hp) {
            (Some(p), Some(h)) => {
                let chain = newton_polygon(&p.coeffs, input.a);
                let above = chain.lies_on_or_above(h);
                let same_end = chain.endpoint() == h.endpoint();
                push(&mut verdicts, "newton_above_hodge", pass_fail(above), format!("{}{hyp_note}", chain_str(&chain)));
                let (ex, ey) = chain.endpoint();
                let (hx, hy) = h.endpoint();
                push(
                    &mut verdicts,
                    "endpoints_match",
                    pass_fail(same_end),
                    format!("NP ({}, {}) vs HP ({}, {})", fmt_r(ex), fmt_r(ey), fmt_r(hx), fmt_r(hy)),
                );
                np_above_hp = Some(above);
                endpoints_match = Some(same_end);
                np = Some(chain);
            }
            (Some(_), None) => {
                for name in ["newton_above_hodge", "endpoints_match"] {
                    push(&mut verdicts, name, NotApplicable, "the combined P-polynomial has a negative coefficient");
                }
            }
            (None, _) => {
                for name in ["newton_above_hodge", "endpoints_match"] {
                    push(&mut verdicts, name, Fail, "no polynomial recovered");
                }
            }
        }
    }
    if np.is_none() {
        if let Some(p) = poly {
            np = Some(newton_polygon(&p.coeffs, input.a));
        }
    }

    // closed-form Hodge endpoint
    match (&hp, endpoint_ordinate, expected_degree) {
        (Some(h), Some(u), Some(v)) => {
            let want = (Rational64::from_integer(v), u);
            push(
                &mut verdicts,
                "endpoint_formula",
                pass_fail(h.endpoint() == want),
                format!("HP endpoint ({}, {}), formula ({v}, {})", fmt_r(h.endpoint().0), fmt_r(h.endpoint().1), fmt_r(u)),
            );
        }
        _ => push(&mut verdicts, "endpoint_formula", NotApplicable, "needs a commode family of dimension <= 2 with a Hodge polygon"),
    }

    // numeric roots
    let q = (input.p as f64).powi(input.a as i32);
    let weight = q.powf(input.n as f64 / 2.0);
    let roots = poly.map(|p| {
        let c: Vec<Complex64> = p.coeffs.iter().map(|x| x.embed_complex().0).collect();
        reciprocal_roots(&c, weight)
    });
    let weight_moduli = roots.as_ref().map(|r| r.moduli.clone()).unwrap_or_default();
    let interior = input
        .family
        .slices
        .iter()
        .find(|s| s.subset == input.family.j)
        .is_some_and(|s| s.data.origin_interior());
    match &roots {
        Some(r) if hyp && interior && r.roots.is_empty() => push(&mut verdicts, "pure_weight", Pass, "no reciprocal roots"),
        Some(r) if hyp && interior => {
            let worst = r.moduli.iter().map(|m| (m / weight - 1.0).abs()).fold(0.0, f64::max);
            push(
                &mut verdicts,
                "pure_weight",
                pass_fail(worst <= input.tolerance),
                format!("max |α|/q^(n/2) − 1 = {worst:.3e}, residual {:.3e}{hyp_note}", r.max_residual),
            );
        }
        _ => push(
            &mut verdicts,
            "pure_weight",
            NotApplicable,
            if interior { "no polynomial L-function to test" } else { "the origin is not interior" },
        ),
    }
    match &roots {
        Some(r) if !r.roots.is_empty() => {
            let kmax = r.roots.len().min(input.sums.len());
            let mut worst: f64 = 0.0;
            for k in 1..=kmax {
                let (s, _) = input.sums[k - 1].embed_complex();
                let got = r.power_sum(k as u32);
                let scale = s.norm().max(r.moduli.iter().map(|m| m.powi(k as i32)).sum::<f64>()).max(1.0);
                worst = worst.max((got - s).norm() / scale);
            }
            push(&mut verdicts, "root_power_sums", pass_fail(worst <= 1e-6), format!("max relative deviation {worst:.3e} for k <= {kmax}"));
        }
        _ => push(&mut verdicts, "root_power_sums", NotApplicable, "no roots"),
    }

    // Euler product against exp of sums
    match input.euler {
        Some(e) => {
            let k = e.order().min(input.series.order());
            let first_diff = (0..=k).find(|&i| e.coeffs[i] != input.series.coeffs[i]);
            push(
                &mut verdicts,
                "euler_product_agrees",
                pass_fail(first_diff.is_none()),
                match first_diff {
                    None => format!("equal through t^{k}"),
                    Some(i) => format!("differ at t^{i}"),
                },
            );
        }
        None => push(&mut verdicts, "euler_product_agrees", NotApplicable, "closed-point profiles not computed"),
    }

    VerificationReport {
        np,
        hp,
        np_above_hp,
        endpoints_match,
        degree,
        expected_degree,
        nvol: input.hodge.nvol,
        degree_bound: input.degree_bound,
        commode,
        endpoint_ordinate,
        weight_moduli,
        roots,
        verdicts,
    }
}

fn chain_str(c: &PolygonChain) -> String {
    c.vertices().iter().map(|(x, y)| format!("({}, {})", fmt_r(*x), fmt_r(*y))).collect::<Vec<_>>().join(" ")
}
