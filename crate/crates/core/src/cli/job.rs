use crate::arith::is_prime;
use crate::config::Limits;
use crate::ffield::{FieldCtx, FieldError};
use crate::wittring::{LaurentPoly, WittError, WittLaurent};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::sync::Arc;
use thiserror::Error;

pub const SCHEMA_VERSION: u32 = 1;

/// One monomial c·x^u of a Witt coordinate; c lists F_p-coordinates in the power basis of F_q.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermSpec {
    pub u: Vec<i64>,
    pub c: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobSpec {
    #[serde(default = "default_schema")]
    pub schema_version: u32,
    pub p: u64,
    #[serde(default = "one")]
    pub a: u32,
    pub m: usize,
    pub n: usize,
    /// Monic irreducible of degree a, constant term first.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<Vec<u32>>,
    pub witt_coords: Vec<Vec<TermSpec>>,
    #[serde(rename = "J", alias = "j", default, skip_serializing_if = "Vec::is_empty")]
    pub j: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kmax: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub guard: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s_max: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub budget: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub twist: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dmax: Option<usize>,
}

fn default_schema() -> u32 {
    SCHEMA_VERSION
}

fn one() -> u32 {
    1
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum JobError {
    #[error("schema: {0}")]
    Schema(String),
    #[error("p = {0} is not prime")]
    Primality(u64),
    #[error("first Witt coordinate must be a non-constant Laurent polynomial")]
    ConstantFirstCoordinate,
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Witt(#[from] WittError),
}

pub const DEFAULT_S_MAX: usize = 3;
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

impl JobSpec {
    pub fn parse(text: &str) -> Result<JobSpec, JobError> {
        let job: JobSpec = serde_json::from_str(text).map_err(|e| JobError::Schema(e.to_string()))?;
        job.validate()?;
        Ok(job)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("job specs always serialize")
    }

    /// Checks the first violated constraint, in document order.
    pub fn validate(&self) -> Result<(), JobError> {
        let schema = |s: String| Err(JobError::Schema(s));
        if self.schema_version != SCHEMA_VERSION {
            return schema(format!("unsupported schema_version {}", self.schema_version));
        }
        if !is_prime(self.p) {
            return Err(JobError::Primality(self.p));
        }
        if self.a == 0 {
            return schema("a must be at least 1".into());
        }
        if self.m == 0 {
            return schema("m must be at least 1".into());
        }
        if self.n == 0 {
            return schema("n must be at least 1".into());
        }
        if self.witt_coords.len() != self.m {
            return schema(format!("witt_coords has {} entries, expected m = {}", self.witt_coords.len(), self.m));
        }
        for (i, coord) in self.witt_coords.iter().enumerate() {
            let mut seen = BTreeSet::new();
            for t in coord {
                if t.u.len() != self.n {
                    return schema(format!("coordinate {i}: exponent {:?} has length {}, expected n = {}", t.u, t.u.len(), self.n));
                }
                if t.c.len() > self.a as usize || t.c.iter().any(|&x| x as u64 >= self.p) {
                    return schema(format!("coordinate {i}: coefficient {:?} is not an element of F_{}^{}", t.c, self.p, self.a));
                }
                if t.c.iter().all(|&x| x == 0) {
                    return schema(format!("coordinate {i}: zero coefficient at exponent {:?}", t.u));
                }
                if !seen.insert(&t.u) {
                    return schema(format!("coordinate {i}: repeated exponent {:?}", t.u));
                }
            }
        }
        if !self.witt_coords[0].iter().any(|t| t.u.iter().any(|&e| e != 0)) {
            return Err(JobError::ConstantFirstCoordinate);
        }
        let mut j = self.j.clone();
        j.sort();
        j.dedup();
        if j.len() != self.j.len() || j.iter().any(|&c| c == 0 || c > self.n) {
            return schema(format!("J = {:?} must list distinct coordinates in 1..={}", self.j, self.n));
        }
        for &c in &self.j {
            if let Some(t) = self.witt_coords.iter().flatten().find(|t| t.u[c - 1] < 0) {
                return schema(format!("J-coordinate {c} has negative exponent in {:?}", t.u));
            }
        }
        if self.twist.is_some_and(|s| s % self.p == 0) {
            return schema(format!("twist must be coprime to p = {}", self.p));
        }
        if self.tolerance.is_some_and(|t| !(t > 0.0 && t.is_finite())) {
            return schema("tolerance must be positive".into());
        }
        Ok(())
    }

    pub fn limits(&self) -> Limits {
        let mut l = Limits::default();
        if let Some(b) = self.budget {
            l.budget = b;
        }
        l
    }

    pub fn field(&self, limits: &Limits) -> Result<Arc<FieldCtx>, JobError> {
        let ctx = FieldCtx::new(self.p, self.a as usize, self.modulus.as_deref(), limits)?;
        Ok(Arc::new(ctx))
    }

    pub fn witt(&self, field: Arc<FieldCtx>) -> Result<WittLaurent, JobError> {
        let coords = self
            .witt_coords
            .iter()
            .map(|coord| {
                let terms = coord.iter().map(|t| Ok((t.u.clone(), field.from_coeffs(&t.c)?))).collect::<Result<Vec<_>, FieldError>>()?;
                Ok(LaurentPoly::from_terms(&field, terms))
            })
            .collect::<Result<Vec<_>, JobError>>()?;
        WittLaurent::new(field, self.n, coords).map_err(|e| match e {
            WittError::ConstantFirstCoordinate => JobError::ConstantFirstCoordinate,
            e => JobError::Witt(e),
        })
    }

    pub fn twist(&self) -> u64 {
        self.twist.unwrap_or(1)
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance.unwrap_or(DEFAULT_TOLERANCE)
    }

    pub fn s_max(&self) -> usize {
        self.s_max.unwrap_or(DEFAULT_S_MAX)
    }
}
