//! Job files, pipeline orchestration and report emission.

mod job;
mod plot;
mod report;
mod run;

pub use job::{JobError, JobSpec, TermSpec, SCHEMA_VERSION};
pub use plot::polygons_svg;
pub use report::{Plan, PolytopeReport, Report, Route, SlicesReport, SumsReport, REPORT_SCHEMA_VERSION};
pub use run::{run, RunError, RunOptions, EXIT_INPUT, EXIT_OK, EXIT_REFUSED, EXIT_VERDICT};

use serde::Serialize;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Command {
    Decompose,
    Polytope,
    Nondegen,
    Sums,
    Lfunction,
    Verify,
}

impl FromStr for Command {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "decompose" => Command::Decompose,
            "polytope" => Command::Polytope,
            "nondegen" => Command::Nondegen,
            "sums" => Command::Sums,
            "lfunction" => Command::Lfunction,
            "verify" => Command::Verify,
            other => return Err(format!("unknown command `{other}`")),
        })
    }
}
