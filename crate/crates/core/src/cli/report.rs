use super::job::JobSpec;
use super::Command;
use crate::charsum::{SignConvention, SumResult};
use crate::lfunction::{LOutcome, LSeries, Verdict, VerdictStatus, VerificationReport};
use crate::nondegen::NondegenVerdict;
use crate::polytope::{Facet, PolygonChain};
use num_rational::Rational64;
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt::Write;

pub const REPORT_SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, Serialize)]
pub struct TermReport {
    pub level: usize,
    pub u: Vec<i64>,
    pub c: Vec<u32>,
}

#[derive(Clone, Debug, Serialize)]
pub struct PolytopeReport {
    pub n: usize,
    pub dim: usize,
    pub vertices: Vec<Vec<i64>>,
    pub facets: Vec<Facet>,
    pub faces_avoiding_origin: usize,
    pub origin_interior: bool,
    pub grid_denominator: i64,
    /// W_Δ(0..=D(n+1)).
    pub weights: Vec<u64>,
    pub pcoeffs: Vec<i64>,
    pub nvol: i64,
    pub hodge: PolygonChain,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub boundary_through_origin: Option<i64>,
    /// Σ k·p_k / D against the volume side; n ≤ 2 only.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub h_moment: Option<(Rational64, Rational64)>,
    pub degree_bound: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct SliceReport {
    pub subset: Vec<usize>,
    pub dim: usize,
    pub vertices: Vec<Vec<i64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grid_denominator: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nvol: Option<i64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SlicesReport {
    pub j: Vec<usize>,
    pub commode: bool,
    /// Each P_{Δ_C} is taken in the slice's own dimension n − |C|.
    pub slice_p_dimension: &'static str,
    pub slices: Vec<SliceReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub combined_pcoeffs: Option<Vec<i64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub signed_volume: Option<i64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Route {
    /// Truncate exp of the sums at the expected degree.
    Polynomial,
    /// Fit P/Q by exact linear algebra.
    Rational,
    /// Sums only, with K given explicitly.
    Fixed,
}

#[derive(Clone, Debug, Serialize)]
pub struct Plan {
    pub route: Route,
    pub kmax: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected_degree: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub guard: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dmax: Option<usize>,
    pub evaluations: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct SumsReport {
    pub convention: SignConvention,
    pub twist: u64,
    pub values: Vec<SumResult>,
}

#[derive(Clone, Debug, Serialize)]
pub struct LReport {
    pub series: LSeries,
    pub outcome: LOutcome,
    /// Exponent of the Euler factors matching the sign convention of the sums.
    pub euler_exponent: i64,
}

#[derive(Clone, Debug, Serialize)]
pub struct ErrorReport {
    pub kind: String,
    pub message: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub command: Command,
    pub job: JobSpec,
    pub exit_code: i32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub decomposition: Option<Vec<TermReport>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub polytope: Option<PolytopeReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub slices: Option<SlicesReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nondegen: Option<NondegenVerdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub plan: Option<Plan>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sums: Option<SumsReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lfunction: Option<LReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verification: Option<VerificationReport>,
    pub verdicts: Vec<Verdict>,
    /// Wall-clock milliseconds per stage; only on request, since it breaks byte-identical reports.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings: Option<BTreeMap<String, f64>>,
}

impl Report {
    pub fn new(command: Command, job: JobSpec) -> Report {
        Report {
            schema_version: REPORT_SCHEMA_VERSION,
            command,
            job,
            exit_code: 0,
            error: None,
            decomposition: None,
            polytope: None,
            slices: None,
            nondegen: None,
            plan: None,
            sums: None,
            lfunction: None,
            verification: None,
            verdicts: Vec::new(),
            timings: None,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports always serialize");
        s.push('\n');
        s
    }

    /// The Newton and Hodge polygons to plot, when both exist.
    pub fn polygons(&self) -> Option<(&PolygonChain, &PolygonChain)> {
        let v = self.verification.as_ref()?;
        Some((v.np.as_ref()?, v.hp.as_ref()?))
    }

    pub fn summary(&self) -> String {
        let mut out = String::new();
        let job = &self.job;
        let _ = writeln!(out, "{:?}: p={} a={} m={} n={}", self.command, job.p, job.a, job.m, job.n);
        if let Some(e) = &self.error {
            let _ = writeln!(out, "error ({}): {}", e.kind, e.message);
        }
        if let Some(d) = &self.decomposition {
            let _ = writeln!(out, "decomposition: {} terms", d.len());
        }
        if let Some(pt) = &self.polytope {
            let _ = writeln!(
                out,
                "polytope: {} vertices, D={}, P={:?}, n!Vol={}, bound={}",
                pt.vertices.len(),
                pt.grid_denominator,
                pt.pcoeffs,
                pt.nvol,
                pt.degree_bound
            );
        }
        if let Some(s) = &self.slices {
            let _ = writeln!(out, "J={:?}: commode={} signed volume={:?}", s.j, s.commode, s.signed_volume);
        }
        if let Some(nd) = &self.nondegen {
            let _ = writeln!(out, "non-degeneracy: {:?} ({} faces)", nd.status, nd.faces_checked);
        }
        if let Some(pl) = &self.plan {
            let _ = writeln!(out, "plan: {:?}, K={}, {} evaluations", pl.route, pl.kmax, pl.evaluations);
        }
        if let Some(s) = &self.sums {
            for r in &s.values {
                let _ = writeln!(out, "S_{} = {:?}", r.k, r.value.coords());
            }
        }
        if let Some(l) = &self.lfunction {
            match &l.outcome {
                LOutcome::Polynomial(p) => {
                    let c: Vec<_> = p.coeffs.iter().map(|c| c.coords().to_vec()).collect();
                    let _ = writeln!(out, "L(t) coefficients: {c:?}");
                }
                LOutcome::Rational(f) => {
                    let _ = writeln!(out, "L(t) = P/Q with total degree {}", f.total_degree());
                }
                LOutcome::ExtractionFailed { error } => {
                    let _ = writeln!(out, "L(t): {error}");
                }
                LOutcome::Inconclusive { dmax } => {
                    let _ = writeln!(out, "L(t): inconclusive up to degree {dmax}");
                }
            }
        }
        for v in &self.verdicts {
            let tag = match v.status {
                VerdictStatus::Pass => "PASS",
                VerdictStatus::Fail => "FAIL",
                VerdictStatus::NotApplicable => "n/a ",
            };
            let _ = writeln!(out, "[{tag}] {}: {}", v.name, v.detail);
        }
        if let Some(t) = &self.timings {
            for (k, ms) in t {
                let _ = writeln!(out, "time {k}: {ms:.1} ms");
            }
        }
        let _ = writeln!(out, "exit code {}", self.exit_code);
        out
    }
}
