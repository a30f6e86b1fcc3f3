use clap::Parser;
use std::path::PathBuf;
use std::process::ExitCode;
use wittsum::cli::{polygons_svg, run, Command, JobSpec, RunOptions, EXIT_INPUT};

#[derive(Parser, Debug)]
#[command(name = "wittsum", version, about = "Exponential sums and L-functions of Witt vectors over finite fields")]
struct Args {
    /// decompose | polytope | nondegen | sums | lfunction | verify
    command: Command,
    /// Job file (JSON).
    #[arg(long)]
    input: PathBuf,
    /// Number of power sums S_1..S_K to compute.
    #[arg(long)]
    kmax: Option<usize>,
    /// Extra vanishing coefficients required past the expected degree.
    #[arg(long)]
    guard: Option<usize>,
    /// Largest extension degree searched for common zeros on 2-faces.
    #[arg(long)]
    smax: Option<usize>,
    /// Worker threads for the sums (results do not depend on it).
    #[arg(long)]
    threads: Option<usize>,
    /// Cap on the total number of torus evaluations.
    #[arg(long)]
    budget: Option<u64>,
    /// Galois twist s: use ζ^s in place of ζ.
    #[arg(long)]
    twist: Option<u64>,
    /// Degree cap for rational reconstruction.
    #[arg(long)]
    dmax: Option<usize>,
    /// Relative tolerance of the root-modulus check.
    #[arg(long)]
    tolerance: Option<f64>,
    /// Write the JSON report here (`-` for stdout).
    #[arg(long)]
    json: Option<PathBuf>,
    /// Write an SVG of the Newton and Hodge polygons here.
    #[arg(long)]
    plot: Option<PathBuf>,
    /// Include per-stage wall-clock timings in the report.
    #[arg(long)]
    timings: bool,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let text = match std::fs::read_to_string(&args.input) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", args.input.display());
            return ExitCode::from(EXIT_INPUT as u8);
        }
    };
    let mut job = match JobSpec::parse(&text) {
        Ok(j) => j,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_INPUT as u8);
        }
    };
    job.kmax = args.kmax.or(job.kmax);
    job.guard = args.guard.or(job.guard);
    job.s_max = args.smax.or(job.s_max);
    job.budget = args.budget.or(job.budget);
    job.twist = args.twist.or(job.twist);
    job.dmax = args.dmax.or(job.dmax);
    job.tolerance = args.tolerance.or(job.tolerance);
    let threads = args.threads.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    let report = run(&job, args.command, &RunOptions { threads, timings: args.timings });

    match &args.json {
        Some(p) if p.as_os_str() == "-" => print!("{}", report.to_json()),
        Some(p) => {
            if let Err(e) = std::fs::write(p, report.to_json()) {
                eprintln!("error: cannot write {}: {e}", p.display());
                return ExitCode::from(EXIT_INPUT as u8);
            }
            print!("{}", report.summary());
        }
        None => print!("{}", report.summary()),
    }
    if let Some(p) = &args.plot {
        // best effort: plotting never changes the exit code
        match report.polygons() {
            Some((np, hp)) => {
                if let Err(e) = std::fs::write(p, polygons_svg(np, hp)) {
                    eprintln!("warning: cannot write plot {}: {e}", p.display());
                }
            }
            None => eprintln!("warning: no Newton/Hodge polygon pair to plot"),
        }
    }
    if let Some(e) = &report.error {
        eprintln!("error: {}", e.message);
    }
    ExitCode::from(report.exit_code as u8)
}
