use super::job::{JobError, JobSpec};
use super::report::{
    ErrorReport, LReport, Plan, PolytopeReport, Report, Route, SliceReport, SlicesReport, SumsReport, TermReport,
};
use super::Command;
use crate::charsum::{domain_size, exp_sum, CharsumError, SignConvention, SumOptions};
use crate::config::Limits;
use crate::ffield::FieldError;
use crate::lfunction::{
    euler_product, extract_polynomial, rational_reconstruct, verify, LOutcome, LSeries, LfunctionError, Verdict,
    VerdictStatus, VerifyInput,
};
use crate::nondegen::{check_nondegenerate, NondegenError};
use crate::polytope::{
    boundary_through_origin, h_moment_identity, p_delta, slice_and_commode, total_degree_bound, NewtonData,
    PolytopeError,
};
use crate::wittring::{decompose, WittError};
use std::collections::BTreeMap;
use std::time::Instant;
use thiserror::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERDICT: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_REFUSED: i32 = 3;

#[derive(Debug, Clone, Error)]
pub enum RunError {
    #[error(transparent)]
    Job(#[from] JobError),
    #[error(transparent)]
    Witt(#[from] WittError),
    #[error(transparent)]
    Polytope(#[from] PolytopeError),
    #[error(transparent)]
    Nondegen(#[from] NondegenError),
    #[error(transparent)]
    Charsum(#[from] CharsumError),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Lfunction(#[from] LfunctionError),
    #[error("{needed} evaluations needed for k <= {kmax}, budget is {budget}")]
    BudgetExceeded { needed: u64, budget: u64, kmax: usize },
    #[error("no admissible truncation: {0}")]
    NoAdmissiblePlan(String),
    #[error("invalid override: {0}")]
    Override(String),
}

impl RunError {
    pub fn exit_code(&self) -> i32 {
        use RunError::*;
        match self {
            BudgetExceeded { .. } | NoAdmissiblePlan(_) => EXIT_REFUSED,
            Charsum(CharsumError::BudgetExceeded { .. }) => EXIT_REFUSED,
            Field(FieldError::TooLarge { .. })
            | Job(JobError::Field(FieldError::TooLarge { .. }))
            | Charsum(CharsumError::Field(FieldError::TooLarge { .. }))
            | Nondegen(NondegenError::Field(FieldError::TooLarge { .. })) => EXIT_REFUSED,
            Polytope(PolytopeError::EnumerationBudgetExceeded { .. })
            | Nondegen(NondegenError::Polytope(PolytopeError::EnumerationBudgetExceeded { .. })) => EXIT_REFUSED,
            Witt(WittError::MonomialCapExceeded { .. } | WittError::CapExceeded { .. }) => EXIT_REFUSED,
            Polytope(PolytopeError::IdentityViolation(_)) => EXIT_VERDICT,
            _ => EXIT_INPUT,
        }
    }

    pub fn kind(&self) -> &'static str {
        use RunError::*;
        match self {
            Job(JobError::Schema(_)) => "schema",
            Job(JobError::Primality(_)) => "primality",
            Job(JobError::ConstantFirstCoordinate) | Witt(WittError::ConstantFirstCoordinate) => "constant_first_coordinate",
            Job(_) | Field(_) => "field",
            Witt(_) => "witt",
            Polytope(PolytopeError::DimensionDeficient { .. }) => "dimension_deficient",
            Polytope(_) => "polytope",
            Nondegen(_) => "nondegen",
            Charsum(CharsumError::BudgetExceeded { .. }) | BudgetExceeded { .. } => "budget_exceeded",
            Charsum(_) => "charsum",
            Lfunction(_) => "lfunction",
            NoAdmissiblePlan(_) => "no_admissible_plan",
            Override(_) => "override",
        }
    }
}

#[derive(Clone, Debug)]
pub struct RunOptions {
    pub threads: usize,
    pub timings: bool,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions { threads: 1, timings: false }
    }
}

struct Clock {
    on: bool,
    stages: BTreeMap<String, f64>,
    last: Instant,
}

impl Clock {
    fn lap(&mut self, stage: &str) {
        if self.on {
            let now = Instant::now();
            self.stages.insert(stage.to_string(), (now - self.last).as_secs_f64() * 1e3);
            self.last = now;
        }
    }
}

/// Runs the pipeline prefix for `command`; errors end up in the report with their exit code.
pub fn run(job: &JobSpec, command: Command, opts: &RunOptions) -> Report {
    let mut report = Report::new(command, job.clone());
    let mut clock = Clock { on: opts.timings, stages: BTreeMap::new(), last: Instant::now() };
    let result = pipeline(job, command, opts, &mut report, &mut clock);
    if opts.timings {
        report.timings = Some(clock.stages);
    }
    match result {
        Ok(()) => {
            let failed = report.verdicts.iter().any(|v| v.status == VerdictStatus::Fail);
            report.exit_code = if failed { EXIT_VERDICT } else { EXIT_OK };
        }
        Err(e) => {
            report.exit_code = e.exit_code();
            report.error = Some(ErrorReport { kind: e.kind().to_string(), message: e.to_string() });
        }
    }
    report
}

fn total_evaluations(q: u64, k: usize, n: usize, j_len: usize) -> u64 {
    (1..=k).map(|i| domain_size(q, i, n, j_len).unwrap_or(u64::MAX)).fold(0u64, |a, b| a.saturating_add(b))
}

fn field_fits(q: u64, k: usize, limits: &Limits) -> bool {
    q.checked_pow(k as u32).is_some_and(|s| s <= limits.max_field_size)
}

fn check_cost(q: u64, k: usize, n: usize, j_len: usize, limits: &Limits) -> Result<u64, RunError> {
    if !field_fits(q, k, limits) {
        return Err(RunError::NoAdmissiblePlan(format!("{q}^{k} exceeds the field-size cap {}", limits.max_field_size)));
    }
    let needed = total_evaluations(q, k, n, j_len);
    if needed > limits.budget {
        return Err(RunError::BudgetExceeded { needed, budget: limits.budget, kmax: k });
    }
    Ok(needed)
}

/// Truncation order for the two recovery routes, honoring overrides.
fn make_plan(job: &JobSpec, q: u64, route: Route, expected: Option<i64>, bound: u64, limits: &Limits) -> Result<Plan, RunError> {
    let (n, jl) = (job.n, job.j.len());
    match route {
        Route::Polynomial => {
            let d = expected.expect("polynomial route has an expected degree").max(0) as usize;
            let guard = job.guard.unwrap_or(d.max(2));
            let kmax = job.kmax.unwrap_or(d + guard).max(1);
            if kmax < d + guard {
                return Err(RunError::Override(format!("kmax {kmax} is below degree {d} plus guard {guard}")));
            }
            let evaluations = check_cost(q, kmax, n, jl, limits)?;
            Ok(Plan { route, kmax, expected_degree: Some(d as i64), guard: Some(guard), dmax: None, evaluations })
        }
        Route::Fixed | Route::Rational => {
            let dmax = match (job.dmax, job.kmax) {
                (Some(d), _) => d,
                (None, Some(k)) => k.saturating_sub(1) / 2,
                (None, None) => {
                    let fits = |d: usize| {
                        let k = 2 * d + 1;
                        field_fits(q, k, limits) && total_evaluations(q, k, n, jl) <= limits.budget
                    };
                    let mut d = 0;
                    while (d as u64) < bound.max(1) && fits(d + 1) {
                        d += 1;
                    }
                    if d == 0 {
                        return Err(RunError::NoAdmissiblePlan("not even dmax = 1 fits the budget and field cap".into()));
                    }
                    d
                }
            };
            let kmax = job.kmax.unwrap_or(2 * dmax + 1);
            if kmax < 2 * dmax + 1 {
                return Err(RunError::Override(format!("kmax {kmax} is below 2*dmax + 1 = {}", 2 * dmax + 1)));
            }
            let evaluations = check_cost(q, kmax, n, jl, limits)?;
            Ok(Plan { route, kmax, expected_degree: expected, guard: None, dmax: Some(dmax), evaluations })
        }
    }
}

fn verdict(name: &str, ok: bool, detail: String) -> Verdict {
    Verdict { name: name.to_string(), status: if ok { VerdictStatus::Pass } else { VerdictStatus::Fail }, detail }
}

fn pipeline(job: &JobSpec, command: Command, opts: &RunOptions, report: &mut Report, clock: &mut Clock) -> Result<(), RunError> {
    job.validate()?;
    let limits = job.limits();
    let field = job.field(&limits)?;
    let f = job.witt(field.clone())?;
    let q = field.size();
    let n = job.n;
    let convention = if job.j.is_empty() { SignConvention::Alternating } else { SignConvention::Plain };
    let sum_opts = SumOptions { threads: opts.threads, twist: job.twist(), primitive: true, limits: limits.clone() };

    // explicit kmax lets the sums command skip the geometry
    if let (Command::Sums, Some(kmax)) = (command, job.kmax) {
        let evaluations = check_cost(q, kmax, n, job.j.len(), &limits)?;
        report.plan = Some(Plan { route: Route::Fixed, kmax, expected_degree: None, guard: None, dmax: None, evaluations });
        let values = (1..=kmax).map(|k| exp_sum(&f, k, &job.j, convention, &sum_opts)).collect::<Result<Vec<_>, _>>()?;
        clock.lap("sums");
        report.sums = Some(SumsReport { convention, twist: job.twist(), values });
        return Ok(());
    }

    let d = decompose(&f, &limits)?;
    report.decomposition = Some(
        d.terms().iter().map(|t| TermReport { level: t.level, u: t.exponent.clone(), c: field.coeffs(t.coeff) }).collect(),
    );
    clock.lap("decompose");
    if command == Command::Decompose {
        return Ok(());
    }

    let nd = NewtonData::build_polyhedron(&d, &limits)?;
    if !nd.is_full_dimensional() {
        return Err(PolytopeError::DimensionDeficient { dim: nd.dim(), n }.into());
    }
    let hodge = p_delta(&nd)?;
    let dgrid = nd.grid_denominator()?;
    let bound = total_degree_bound(&nd, &hodge)?;
    let (s_delta, h_moment) = if n <= 2 {
        (Some(boundary_through_origin(&nd)?), Some(h_moment_identity(&nd, &hodge)?))
    } else {
        (None, None)
    };
    if let Some((lhs, rhs)) = h_moment {
        report.verdicts.push(verdict("h_moment_identity", lhs == rhs, format!("{lhs} = {rhs}")));
    }
    report.polytope = Some(PolytopeReport {
        n,
        dim: nd.dim(),
        vertices: nd.vertices().to_vec(),
        facets: nd.facets().to_vec(),
        faces_avoiding_origin: nd.faces().len(),
        origin_interior: nd.origin_interior(),
        grid_denominator: dgrid,
        weights: hodge.weights.clone(),
        pcoeffs: hodge.pcoeffs.clone(),
        nvol: hodge.nvol,
        hodge: hodge.hodge.clone(),
        boundary_through_origin: s_delta,
        h_moment,
        degree_bound: bound,
    });
    let family = slice_and_commode(&nd, &job.j, &limits)?;
    if !job.j.is_empty() {
        report.slices = Some(SlicesReport {
            j: family.j.clone(),
            commode: family.commode,
            slice_p_dimension: "intrinsic",
            slices: family
                .slices
                .iter()
                .map(|s| SliceReport {
                    subset: s.subset.clone(),
                    dim: s.data.dim(),
                    vertices: s.data.vertices().to_vec(),
                    grid_denominator: s.hodge.as_ref().and(s.data.grid_denominator().ok()),
                    nvol: s.hodge.as_ref().map(|h| h.nvol),
                })
                .collect(),
            combined_pcoeffs: family.combined_p(dgrid).ok(),
            signed_volume: family.signed_volume().ok(),
        });
    }
    clock.lap("polytope");
    if command == Command::Polytope {
        return Ok(());
    }

    let nondegen = check_nondegenerate(&d, &nd, job.s_max(), &limits)?;
    report.nondegen = Some(nondegen.clone());
    clock.lap("nondegen");
    if command == Command::Nondegen {
        return Ok(());
    }

    let expected = family.signed_volume().ok();
    let route = if nondegen.is_nondegenerate() && family.commode { Route::Polynomial } else { Route::Rational };
    let plan = make_plan(job, q, route, expected, bound, &limits)?;
    let kmax = plan.kmax;
    report.plan = Some(plan.clone());
    let results = (1..=kmax).map(|k| exp_sum(&f, k, &job.j, convention, &sum_opts)).collect::<Result<Vec<_>, _>>()?;
    clock.lap("sums");
    let values: Vec<_> = results.iter().map(|r| r.value.clone()).collect();
    let primitive: Vec<Vec<u64>> = results.iter().map(|r| r.primitive_profile.clone().unwrap_or_default()).collect();
    report.sums = Some(SumsReport { convention, twist: job.twist(), values: results });
    if command == Command::Sums {
        return Ok(());
    }

    let series = LSeries::from_sums(&values)?;
    let outcome = match route {
        Route::Polynomial => {
            let deg = plan.expected_degree.unwrap() as usize;
            match extract_polynomial(&series, deg, kmax - deg) {
                Err(e @ LfunctionError::InsufficientTerms { .. }) => return Err(e.into()),
                r => LOutcome::from_extraction(r),
            }
        }
        Route::Fixed | Route::Rational => {
            let dmax = plan.dmax.unwrap();
            match rational_reconstruct(&series, dmax) {
                Err(e @ LfunctionError::InsufficientTerms { .. }) => return Err(e.into()),
                r => LOutcome::from_reconstruction(r, dmax),
            }
        }
    };
    let exponent = convention.euler_exponent(n);
    let euler = euler_product(job.p, job.m, exponent, &primitive, job.twist());
    clock.lap("lfunction");
    report.lfunction = Some(LReport { series: series.clone(), outcome: outcome.clone(), euler_exponent: exponent });
    if command == Command::Lfunction {
        return Ok(());
    }

    let input = VerifyInput {
        p: job.p,
        a: job.a,
        n,
        nd: &nd,
        hodge: &hodge,
        family: &family,
        nondegen: &nondegen,
        outcome: &outcome,
        sums: &values,
        series: &series,
        euler: Some(&euler),
        degree_bound: bound,
        tolerance: job.tolerance(),
    };
    let v = verify(&input);
    report.verdicts.extend(v.verdicts.iter().cloned());
    report.verification = Some(v);
    clock.lap("verify");
    Ok(())
}
