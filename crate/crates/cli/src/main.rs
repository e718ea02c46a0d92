//! `csv-verify`: batch front-end for the conisym checks.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};
use conisym::catalog::{
    enumerate_degree_tuples, exceptional_case_elimination, make_xn, verify_surface, verify_xn, CatalogError, SurfaceFamily, SurfaceKind,
};
use conisym::ideals::{GroebnerError, OrderKind, TermOrder};
use conisym::normal_form::{a_type_monomial, w_round_trip, Closure, MonomialSubalgebra};
use conisym::orbifold::{atlas_json, ramification_data, verify_atlas};
use conisym::parse::{format_poly, parse_poly};
use conisym::poly::Rational;
use conisym::Report;
use rayon::prelude::*;
use serde_json::{json, Value};

const DEFAULT_SEED: u64 = 20_170_509;

#[derive(Parser, Debug)]
#[command(name = "csv-verify", version, about = "Exact verification of graded Poisson structures on hypersurfaces")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Emit::Text, global = true)]
    emit: Emit,
    /// Wall-clock limit in seconds for Groebner computations.
    #[arg(long, global = true)]
    timeout: Option<u64>,
    /// Seed for the randomized perturbations.
    #[arg(long, default_value_t = DEFAULT_SEED, global = true)]
    seed: u64,
    /// Worker threads for independent jobs.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Add timings to the output.
    #[arg(long, short, global = true)]
    verbose: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Emit {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Jacobi, Pfaffian and degree checks for the slice X_n.
    Xn(SliceArgs),
    /// Checks for one surface family.
    Surface {
        #[arg(long)]
        family: String,
        /// Weights `s,d1,d2,d3`; defaults to the listed ones.
        #[arg(long, value_delimiter = ',')]
        weights: Option<Vec<u64>>,
    },
    /// The three parametric families of degree tuples.
    DegreeTuples {
        #[arg(long, default_value_t = 1)]
        s: u64,
        #[arg(long, default_value_t = 10)]
        a_max: u64,
    },
    /// Saturated coefficient ideal of the 27-parameter ansatz.
    EliminateExceptional {
        #[arg(long, default_value = "grevlex")]
        order: String,
    },
    /// Random triangular perturbations of X_n undone by w-homogenization.
    Whomog {
        #[command(flatten)]
        slice: SliceArgs,
        #[arg(long, default_value_t = 50)]
        trials: usize,
    },
    /// Closure of a monomial subalgebra of C[u, v] under {u, v} = 1.
    Closure {
        /// `x = u^(n+1)`, `y = v^(n+1)`, `z = uv`.
        #[arg(long, default_value_t = 2)]
        n: u32,
        /// Generators as monomials in x, y, z.
        #[arg(long, value_delimiter = ',', default_value = "z,x*z,x^2,x^3,y")]
        gens: Vec<String>,
        /// Degree bound; defaults to four times the largest generator degree.
        #[arg(long)]
        bound: Option<u64>,
    },
    /// Orbifold P^1 atlas and ramification of the surface families.
    Orbifold {
        #[arg(long, default_value_t = 30)]
        max_index: u64,
    },
    /// Every job with default parameters.
    All,
}

#[derive(Args, Debug, Clone)]
struct SliceArgs {
    #[arg(long, default_value_t = 2)]
    n: u32,
    #[arg(long, default_value_t = 2)]
    s: u64,
    /// Rational, e.g. `0`, `1` or `1/2`.
    #[arg(long, default_value = "0")]
    t: String,
}

#[derive(Debug)]
enum JobError {
    Usage(String),
    Timeout(String),
}

impl From<CatalogError> for JobError {
    fn from(e: CatalogError) -> Self {
        match e {
            CatalogError::Groebner(GroebnerError::Timeout) => JobError::Timeout(e.to_string()),
            other => JobError::Usage(other.to_string()),
        }
    }
}

struct Outcome {
    report: Report,
    data: Option<Value>,
    elapsed: Duration,
}

struct Context {
    timeout: Option<u64>,
    seed: u64,
}

impl Context {
    fn deadline(&self) -> Option<Instant> {
        self.timeout.map(|s| Instant::now() + Duration::from_secs(s))
    }
}

fn parse_t(text: &str) -> Result<Rational, JobError> {
    text.parse::<Rational>().map_err(|_| JobError::Usage(format!("bad rational `{}`", text)))
}

fn xn_job(args: &SliceArgs) -> Result<(Report, Option<Value>), JobError> {
    let slice = make_xn(args.n, args.s, parse_t(&args.t)?)?;
    Ok((verify_xn(&slice), Some(json!({ "degrees": slice.grading.d }))))
}

fn surface_job(family: &str, weights: Option<&[u64]>) -> Result<(Report, Option<Value>), JobError> {
    let kind: SurfaceKind = family.parse().map_err(JobError::Usage)?;
    let fam = match weights {
        None => SurfaceFamily::standard(kind)?,
        Some(&[s, d1, d2, d3]) => SurfaceFamily::new(kind, s, [d1, d2, d3])?,
        Some(_) => return Err(JobError::Usage("--weights takes s,d1,d2,d3".into())),
    };
    let report = verify_surface(&fam)?;
    let data = json!({ "s": fam.s, "d": fam.d, "ramification": ramification_data(&fam) });
    Ok((report, Some(data)))
}

fn degree_tuples_job(s: u64, a_max: u64) -> (Report, Option<Value>) {
    let tuples = enumerate_degree_tuples(s, a_max);
    let mut r = Report::new(format!("degree-tuples s={} a-max={}", s, a_max));
    let flagged: Vec<_> = tuples.iter().filter(|t| t.exceptional).collect();
    let exceptional = [3, 4, 5, 6, 8].map(|x| x * s);
    let expected = if a_max >= 3 * s { 1 } else { 0 };
    r.check("exceptional-flag", flagged.len() == expected && flagged.iter().all(|t| t.raw == exceptional), || {
        format!("flagged {:?}", flagged.iter().map(|t| t.raw).collect::<Vec<_>>())
    });
    let sorted = tuples.iter().all(|t| t.normalized.windows(2).all(|w| w[0] <= w[1]));
    r.check("monotone", sorted, || "a tuple is not sorted".into());
    r.pass("count", Some(tuples.len().to_string()));
    (r, Some(serde_json::to_value(&tuples).expect("tuples serialize")))
}

fn eliminate_job(order: &str, ctx: &Context) -> Result<(Report, Option<Value>), JobError> {
    let kind: OrderKind = order.parse().map_err(JobError::Usage)?;
    let order = TermOrder::new(kind, conisym::catalog::ANSATZ_PARAMS);
    let out = exceptional_case_elimination(&order, ctx.deadline())?;
    let names = conisym::catalog::param_names();
    let basis: Vec<String> = out.saturation.generators().iter().map(|g| format_poly(g, &names)).collect();
    Ok((out.report, Some(json!({ "order": order.describe(), "coefficients": out.coefficients.len(), "saturation": basis }))))
}

fn whomog_job(args: &SliceArgs, trials: usize, ctx: &Context) -> Result<(Report, Option<Value>), JobError> {
    let slice = make_xn(args.n, args.s, parse_t(&args.t)?)?;
    let mut r = w_round_trip(&slice.theta, &slice.grading, 1, ctx.seed, trials);
    r.job = format!("whomog n={} s={} t={} seed={} trials={}", args.n, args.s, slice.t, ctx.seed, trials);
    Ok((r, None))
}

fn closure_job(n: u32, gens: &[String], bound: Option<u64>) -> Result<(Report, Option<Value>), JobError> {
    let names = ["x", "y", "z"];
    let uv = conisym::normal_form::uv_names();
    let mut monomials = Vec::new();
    for g in gens {
        let p = parse_poly(g.trim(), &names).map_err(|e| JobError::Usage(format!("generator `{}`: {}", g, e)))?;
        let (m, _) = match (p.len(), p.terms().next()) {
            (1, Some(t)) => t,
            _ => return Err(JobError::Usage(format!("generator `{}` is not a monomial", g))),
        };
        monomials.push(a_type_monomial(n, m.exponent(0), m.exponent(1), m.exponent(2)));
    }
    let alg = MonomialSubalgebra::new(monomials);
    let bound = bound.unwrap_or_else(|| alg.default_bound());
    if bound < alg.max_generator_degree() {
        return Err(JobError::Usage("bound is below the generator degrees".into()));
    }
    let mut r = Report::new(format!("closure n={} gens={} bound={}", n, gens.join(","), bound));
    let fmt = |m: &conisym::Monomial| format_poly(&conisym::Polynomial::monomial(m.clone(), conisym::poly::int(1)), &uv);
    match alg.closure_check(bound) {
        Closure::Closed => r.pass("closed", None),
        Closure::Witness { left, right, bracket } => {
            r.fail("closed", format!("{{{}, {}}} = {}", fmt(&left), fmt(&right), format_poly(&bracket, &uv)))
        }
    }
    Ok((r, None))
}

fn orbifold_job(max_index: u64) -> (Report, Option<Value>) {
    (verify_atlas(max_index), Some(atlas_json(max_index)))
}

type Job = (String, Box<dyn Fn(&Context) -> Result<(Report, Option<Value>), JobError> + Send + Sync>);

fn all_jobs() -> Vec<Job> {
    let mut jobs: Vec<Job> = Vec::new();
    for n in 2..=10u32 {
        jobs.push((format!("xn-{:02}", n), Box::new(move |_| xn_job(&SliceArgs { n, s: 2, t: "0".into() }))));
    }
    jobs.push(("xn-t1".into(), Box::new(|_| xn_job(&SliceArgs { n: 3, s: 4, t: "1".into() }))));
    for fam in SurfaceFamily::all_listed(8) {
        let name = format!("surface-{}", fam.kind);
        jobs.push((name, Box::new(move |_| surface_job(&fam.kind.to_string(), Some(&[fam.s, fam.d[0], fam.d[1], fam.d[2]])))));
    }
    jobs.push(("degree-tuples".into(), Box::new(|_| Ok(degree_tuples_job(1, 10)))));
    jobs.push(("eliminate-exceptional".into(), Box::new(|ctx| eliminate_job("grevlex", ctx))));
    for n in [2u32, 3] {
        for (s, t) in [(2u64, "0"), (4, "1")] {
            let args = SliceArgs { n, s, t: t.into() };
            jobs.push((format!("whomog-n{}-s{}-t{}", n, s, t), Box::new(move |ctx| whomog_job(&args, 50, ctx))));
        }
    }
    for n in 1..=4u32 {
        for m in 1..=n {
            let gens: Vec<String> = ["z".to_string(), format!("x*z^{}", m), "x^2".into(), "x^3".into(), "y".into()].into();
            jobs.push((format!("closure-n{}-m{}", n, m), Box::new(move |_| closure_job(n, &gens, None))));
        }
    }
    jobs.push(("orbifold".into(), Box::new(|_| Ok(orbifold_job(30)))));
    jobs.sort_by(|a, b| a.0.cmp(&b.0));
    jobs
}

fn run_one(f: impl FnOnce() -> Result<(Report, Option<Value>), JobError>) -> Result<Outcome, JobError> {
    let start = Instant::now();
    let (report, data) = f()?;
    Ok(Outcome { report, data, elapsed: start.elapsed() })
}

fn render(outcomes: &[Outcome], emit: Emit, verbose: bool) -> String {
    match emit {
        Emit::Json => {
            let items: Vec<Value> = outcomes
                .iter()
                .map(|o| {
                    let mut v = serde_json::to_value(&o.report).expect("report serializes");
                    v["passed"] = json!(o.report.passed());
                    if let Some(d) = &o.data {
                        v["data"] = d.clone();
                    }
                    if verbose {
                        v["seconds"] = json!(o.elapsed.as_secs_f64());
                    }
                    v
                })
                .collect();
            let out = if items.len() == 1 {
                items.into_iter().next().expect("one item")
            } else {
                json!({ "passed": outcomes.iter().all(|o| o.report.passed()), "reports": items })
            };
            serde_json::to_string_pretty(&out).expect("json") + "\n"
        }
        Emit::Text => {
            let mut s = String::new();
            for o in outcomes {
                s.push_str(&o.report.to_text());
                if verbose {
                    s.push_str(&format!("  ({:.3} s)\n", o.elapsed.as_secs_f64()));
                }
            }
            s
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.jobs {
        // A second initialization only fails if a pool exists already.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
    let ctx = Context { timeout: cli.timeout, seed: cli.seed };
    let result: Result<Vec<Outcome>, JobError> = match &cli.command {
        Command::Xn(args) => run_one(|| xn_job(args)).map(|o| vec![o]),
        Command::Surface { family, weights } => run_one(|| surface_job(family, weights.as_deref())).map(|o| vec![o]),
        Command::DegreeTuples { s, a_max } => run_one(|| Ok(degree_tuples_job(*s, *a_max))).map(|o| vec![o]),
        Command::EliminateExceptional { order } => run_one(|| eliminate_job(order, &ctx)).map(|o| vec![o]),
        Command::Whomog { slice, trials } => run_one(|| whomog_job(slice, *trials, &ctx)).map(|o| vec![o]),
        Command::Closure { n, gens, bound } => run_one(|| closure_job(*n, gens, *bound)).map(|o| vec![o]),
        Command::Orbifold { max_index } => run_one(|| Ok(orbifold_job(*max_index))).map(|o| vec![o]),
        Command::All => all_jobs().par_iter().map(|(_, job)| run_one(|| job(&ctx))).collect(),
    };
    match result {
        Ok(outcomes) => {
            print!("{}", render(&outcomes, cli.emit, cli.verbose));
            if outcomes.iter().all(|o| o.report.passed()) {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(JobError::Usage(msg)) => {
            eprintln!("error: {}", msg);
            ExitCode::from(2)
        }
        Err(JobError::Timeout(msg)) => {
            eprintln!("timeout: {}", msg);
            ExitCode::from(3)
        }
    }
}
