//! `squircle`: p-trigonometry, π_p, series and p-circle geometry from the shell.

mod output;

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use squircle::geometry::{self, Objective};
use squircle::pi::{self, Estimate};
use squircle::ptrig;
use squircle::series;
use squircle::{Error, PParam, QuadratureConfig};

use output::{fail, provenance, quadrature_tolerances, sig12, OutputEnvelope};

#[derive(Parser)]
#[command(name = "squircle", version, about = "Generalized trigonometry on the unit p-circle")]
struct Cli {
    /// Emit a JSON envelope instead of plain text
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a p-trigonometric function
    Eval(EvalArgs),
    /// Exact Taylor coefficients of arcsin_p or sin_p
    Series(SeriesArgs),
    /// Compute π_p
    Pi(PiArgs),
    /// The p halfway between circle and square
    Optimal(OptimalArgs),
    /// Sample points of a p-circle or of sin_p / cos_p as CSV
    Sample(SampleArgs),
    /// Classify the rational points of a p-circle
    Points(PointsArgs),
}

#[derive(Args)]
struct QuadArgs {
    /// Relative quadrature target
    #[arg(long, env = "SQUIRCLE_TOL", default_value_t = 1e-13)]
    tol: f64,
}

impl QuadArgs {
    fn config(&self) -> Result<QuadratureConfig, Error> {
        QuadratureConfig::new(self.tol, QuadratureConfig::default().max_levels())
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Function {
    Sin,
    Cos,
    Tan,
    Sec,
    Csc,
    Cot,
    Arcsin,
    Arccos,
}

impl Function {
    fn name(self) -> &'static str {
        match self {
            Function::Sin => "sin",
            Function::Cos => "cos",
            Function::Tan => "tan",
            Function::Sec => "sec",
            Function::Csc => "csc",
            Function::Cot => "cot",
            Function::Arcsin => "arcsin",
            Function::Arccos => "arccos",
        }
    }
}

#[derive(Args)]
struct EvalArgs {
    function: Function,
    #[arg(long)]
    p: f64,
    /// Argument (`--x` reads better for the inverse functions)
    #[arg(long, visible_alias = "x", allow_negative_numbers = true)]
    t: f64,
    #[command(flatten)]
    quad: QuadArgs,
}

#[derive(Clone, Copy, ValueEnum)]
enum SeriesKind {
    Arcsin,
    Sin,
}

#[derive(Args)]
struct SeriesArgs {
    kind: SeriesKind,
    #[arg(long)]
    p: u32,
    #[arg(long)]
    order: usize,
    /// Append the nonzero-pattern report for both series
    #[arg(long)]
    rigidity: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum PiMethod {
    Gamma,
    Integral,
    Area,
    Series,
    Mc,
}

impl PiMethod {
    fn name(self) -> &'static str {
        match self {
            PiMethod::Gamma => "gamma",
            PiMethod::Integral => "integral",
            PiMethod::Area => "area",
            PiMethod::Series => "series",
            PiMethod::Mc => "mc",
        }
    }
}

#[derive(Args)]
struct PiArgs {
    #[arg(long, required_unless_present = "grid")]
    p: Option<f64>,
    #[arg(long, value_enum, default_value_t = PiMethod::Gamma)]
    method: PiMethod,
    /// Monte Carlo sample count
    #[arg(long, default_value_t = 1_000_000)]
    n: u64,
    /// Monte Carlo seed (required for --method mc)
    #[arg(long)]
    seed: Option<u64>,
    /// Series term count
    #[arg(long, default_value_t = 10_000)]
    terms: u64,
    /// Comma-separated p values; prints a CSV of (p, pi_p)
    #[arg(long, value_delimiter = ',', num_args = 1..)]
    grid: Option<Vec<f64>>,
    /// Monte Carlo worker threads (the estimate does not depend on it)
    #[arg(long)]
    workers: Option<usize>,
    #[command(flatten)]
    quad: QuadArgs,
}

#[derive(Args)]
struct OptimalArgs {
    objective: ObjectiveArg,
    /// Root tolerance on p
    #[arg(long, default_value_t = geometry::DEFAULT_OPTIMAL_TOL)]
    tol: f64,
}

#[derive(Clone, Copy, ValueEnum)]
enum ObjectiveArg {
    Area,
    Perimeter,
    Curvature,
}

impl From<ObjectiveArg> for Objective {
    fn from(o: ObjectiveArg) -> Self {
        match o {
            ObjectiveArg::Area => Objective::Area,
            ObjectiveArg::Perimeter => Objective::Perimeter,
            ObjectiveArg::Curvature => Objective::Curvature,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum What {
    Circle,
    Sin,
    Cos,
}

impl What {
    fn name(self) -> &'static str {
        match self {
            What::Circle => "circle",
            What::Sin => "sin",
            What::Cos => "cos",
        }
    }
}

#[derive(Args)]
struct SampleArgs {
    #[arg(long)]
    p: f64,
    #[arg(long, default_value_t = 101)]
    count: usize,
    #[arg(long, value_enum, default_value_t = What::Circle)]
    what: What,
    #[command(flatten)]
    quad: QuadArgs,
}

#[derive(Args)]
struct PointsArgs {
    #[arg(long)]
    p: f64,
}

/// Failure plus an optional usage hint.
struct Failure {
    error: Error,
    hint: Option<&'static str>,
}

impl From<Error> for Failure {
    fn from(error: Error) -> Self {
        Failure { error, hint: None }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure {
            error: Error::Argument(format!("output failed: {e}")),
            hint: None,
        }
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure {
            error: Error::Argument(format!("CSV output failed: {e}")),
            hint: None,
        }
    }
}

type CmdResult = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let json = cli.json;
    let outcome = match cli.command {
        Command::Eval(a) => cmd_eval(a, json),
        Command::Series(a) => cmd_series(a, json),
        Command::Pi(a) => cmd_pi(a, json),
        Command::Optimal(a) => cmd_optimal(a, json),
        Command::Sample(a) => cmd_sample(a, json),
        Command::Points(a) => cmd_points(a, json),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => fail(&f.error, f.hint),
    }
}

fn cmd_eval(a: EvalArgs, json: bool) -> CmdResult {
    let cfg = a.quad.config()?;
    let p = PParam::new(a.p)?;
    let f = match a.function {
        Function::Sin => ptrig::sin_p,
        Function::Cos => ptrig::cos_p,
        Function::Tan => ptrig::tan_p,
        Function::Sec => ptrig::sec_p,
        Function::Csc => ptrig::csc_p,
        Function::Cot => ptrig::cot_p,
        Function::Arcsin => ptrig::arcsin_p,
        Function::Arccos => ptrig::arccos_p,
    };
    let value = f(a.t, p, &cfg)?;
    if json {
        OutputEnvelope::new(
            "eval",
            json!({ "function": a.function.name(), "p": a.p, "t": a.t }),
            json!({ "value": value }),
            provenance(
                "tanh-sinh quadrature with safeguarded Newton inversion",
                None,
                quadrature_tolerances(cfg.target(), cfg.max_levels()),
            ),
        )
        .print()?;
    } else {
        println!("{}", sig12(value));
    }
    Ok(())
}

const SERIES_HINT: &str = "series need an integer --p >= 2 and --order <= 200 (--rigidity needs --order <= 60)";

fn cmd_series(a: SeriesArgs, json: bool) -> CmdResult {
    let with_hint = |error: Error| Failure {
        error,
        hint: Some(SERIES_HINT),
    };
    let s = match a.kind {
        SeriesKind::Arcsin => series::arcsin_series(a.p, a.order),
        SeriesKind::Sin => series::sin_series(a.p, a.order),
    }
    .map_err(with_hint)?;
    let report = if a.rigidity {
        Some(series::rigidity_report(a.p, a.order).map_err(with_hint)?)
    } else {
        None
    };
    let kind = match a.kind {
        SeriesKind::Arcsin => "arcsin",
        SeriesKind::Sin => "sin",
    };
    if json {
        let mut result = json!({ "kind": kind, "p": a.p, "series": s });
        if let Some(r) = &report {
            result["rigidity"] = serde_json::to_value(r).expect("report serializes");
        }
        let method = match a.kind {
            SeriesKind::Arcsin => "binomial series, exact rationals",
            SeriesKind::Sin => "Lagrange inversion with partial Bell polynomials, exact rationals",
        };
        OutputEnvelope::new(
            "series",
            json!({ "kind": kind, "p": a.p, "order": a.order, "rigidity": a.rigidity }),
            result,
            provenance(method, None, json!({})),
        )
        .print()?;
        return Ok(());
    }
    let mut out = std::io::stdout().lock();
    writeln!(out, "# {kind}_{} x = sum of c_l x^l / l!", a.p)?;
    writeln!(out, "l\tc_l\tc_l/l!")?;
    for (l, c) in s.fraction_strings().iter().enumerate() {
        let ord = squircle::exactmath::fraction_string(&s.ordinary(l));
        writeln!(out, "{l}\t{c}\t{ord}")?;
    }
    if let Some(r) = report {
        writeln!(out)?;
        writeln!(out, "# nonzero pattern, l = 1 mod {}", r.n)?;
        writeln!(out, "l\tarcsin\tsin\texpected")?;
        for row in &r.rows {
            let mark = |b: bool| if b { "nonzero" } else { "0" };
            writeln!(
                out,
                "{}\t{}\t{}\t{}",
                row.order,
                mark(row.arcsin_nonzero),
                mark(row.sin_nonzero),
                mark(row.expected_nonzero)
            )?;
        }
        writeln!(out, "{}", r.status)?;
    }
    Ok(())
}

fn pi_estimate(a: &PiArgs, p: f64, cfg: &QuadratureConfig, workers: usize) -> Result<Estimate, Failure> {
    Ok(match a.method {
        PiMethod::Gamma => Estimate {
            value: pi::pi_gamma(p)?,
            error: 0.0,
            method: pi::Method::Gamma,
            n: 0,
            seed: None,
        },
        PiMethod::Integral => pi::pi_defining_integral(p, cfg)?,
        PiMethod::Area => pi::pi_area_integral(p, cfg)?,
        PiMethod::Series => {
            if p.fract() != 0.0 || !(2.0..=u32::MAX as f64).contains(&p) {
                return Err(Failure {
                    error: Error::Argument(format!("the series method needs an integer p >= 2, got {p}")),
                    hint: Some("use --method gamma or integral for non-integer p"),
                });
            }
            pi::pi_series(p as u32, a.terms)?
        }
        PiMethod::Mc => {
            let seed = a.seed.ok_or_else(|| Failure {
                error: Error::Argument("--method mc needs an explicit --seed".into()),
                hint: Some("pass --seed <u64>; runs are reproducible only with a fixed seed"),
            })?;
            pi::pi_monte_carlo(p, a.n, seed, workers)?
        }
    })
}

fn cmd_pi(a: PiArgs, json: bool) -> CmdResult {
    let cfg = a.quad.config()?;
    let workers = a
        .workers
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    if matches!(a.method, PiMethod::Mc) && a.seed.is_none() {
        return Err(Failure {
            error: Error::Argument("--method mc needs an explicit --seed".into()),
            hint: Some("pass --seed <u64>; runs are reproducible only with a fixed seed"),
        });
    }
    let mut params = json!({ "method": a.method.name() });
    match a.method {
        PiMethod::Mc => {
            params["n"] = json!(a.n);
            params["seed"] = json!(a.seed);
        }
        PiMethod::Series => params["terms"] = json!(a.terms),
        _ => {}
    }
    let tolerances = match a.method {
        PiMethod::Integral | PiMethod::Area => quadrature_tolerances(cfg.target(), cfg.max_levels()),
        _ => json!({}),
    };
    let method_desc = match a.method {
        PiMethod::Gamma => "2 Γ(1/p)^2 / (p Γ(2/p))",
        PiMethod::Integral => "2 ∫_0^1 (1 - t^p)^{-(p-1)/p} dt, tanh-sinh",
        PiMethod::Area => "4 ∫_0^1 (1 - x^p)^{1/p} dx, tanh-sinh",
        PiMethod::Series => "partial sums of 2 arcsin_p(1); error is indicative only",
        PiMethod::Mc => "hit-or-miss sampling of the unit square, ChaCha8 per batch",
    };

    if let Some(grid) = &a.grid {
        let rows: Vec<(f64, f64)> = grid
            .iter()
            .map(|&p| pi_estimate(&a, p, &cfg, workers).map(|e| (p, e.value)))
            .collect::<Result<_, _>>()?;
        if json {
            params["grid"] = json!(grid);
            let result: Vec<Value> = rows.iter().map(|(p, v)| json!({ "p": p, "pi_p": v })).collect();
            OutputEnvelope::new("pi", params, result, provenance(method_desc, a.seed, tolerances)).print()?;
        } else {
            let mut w = csv::Writer::from_writer(std::io::stdout().lock());
            w.write_record(["p", "pi_p"])?;
            for (p, v) in rows {
                w.write_record([p.to_string(), v.to_string()])?;
            }
            w.flush()?;
        }
        return Ok(());
    }

    let p = a.p.expect("clap requires --p without --grid");
    params["p"] = json!(p);
    let est = pi_estimate(&a, p, &cfg, workers)?;
    if json {
        OutputEnvelope::new("pi", params, est, provenance(method_desc, est.seed, tolerances)).print()?;
    } else {
        let mut out = std::io::stdout().lock();
        writeln!(out, "pi_p\t{}", sig12(est.value))?;
        writeln!(out, "error\t{}", sig12(est.error))?;
        writeln!(out, "method\t{}", est.method.tag())?;
        if est.n > 0 {
            writeln!(out, "n\t{}", est.n)?;
        }
        if let Some(seed) = est.seed {
            writeln!(out, "seed\t{seed}")?;
        }
        if matches!(a.method, PiMethod::Series) {
            writeln!(out, "note\terror is the last-term size, indicative only")?;
        }
    }
    Ok(())
}

fn cmd_optimal(a: OptimalArgs, json: bool) -> CmdResult {
    let objective: Objective = a.objective.into();
    let r = geometry::optimal_p(objective, a.tol)?;
    if json {
        OutputEnvelope::new(
            "optimal",
            json!({ "objective": objective.to_string(), "tol": a.tol }),
            &r,
            provenance("Brent root finding", None, json!({ "root_tol": a.tol })),
        )
        .print()?;
    } else {
        let mut out = std::io::stdout().lock();
        writeln!(out, "p_star\t{}", sig12(r.p_star))?;
        writeln!(out, "residual\t{}", sig12(r.residual))?;
        writeln!(out, "iterations\t{}", r.iterations)?;
        writeln!(out, "bracket\t[{}, {}]", r.bracket.0, r.bracket.1)?;
        if let Some(note) = &r.note {
            writeln!(out, "note\t{note}")?;
        }
    }
    Ok(())
}

fn cmd_sample(a: SampleArgs, json: bool) -> CmdResult {
    if a.count < 2 {
        return Err(Error::Argument(format!("--count must be at least 2, got {}", a.count)).into());
    }
    let cfg = a.quad.config()?;
    let p = PParam::new(a.p)?;
    let span = match a.what {
        What::Circle => 0.5 * p.pi(),
        What::Sin | What::Cos => 2.0 * p.pi(),
    };
    let last = (a.count - 1) as f64;
    let mut rows = Vec::with_capacity(a.count);
    for i in 0..a.count {
        let t = if i + 1 == a.count { span } else { span * i as f64 / last };
        let (c, s) = ptrig::cos_sin_p(t, p, &cfg)?;
        rows.push((t, c, s));
    }
    if json {
        let result: Vec<Value> = rows
            .iter()
            .map(|&(t, c, s)| match a.what {
                What::Circle => json!({ "t": t, "x": c, "y": s }),
                What::Sin => json!({ "t": t, "value": s }),
                What::Cos => json!({ "t": t, "value": c }),
            })
            .collect();
        OutputEnvelope::new(
            "sample",
            json!({ "p": a.p, "count": a.count, "what": a.what.name() }),
            result,
            provenance(
                "evenly spaced t, (cos_p t, sin_p t)",
                None,
                quadrature_tolerances(cfg.target(), cfg.max_levels()),
            ),
        )
        .print()?;
        return Ok(());
    }
    let mut w = csv::Writer::from_writer(std::io::stdout().lock());
    match a.what {
        What::Circle => w.write_record(["t", "x", "y"])?,
        What::Sin | What::Cos => w.write_record(["t", "value"])?,
    }
    for (t, c, s) in rows {
        match a.what {
            What::Circle => w.write_record([t.to_string(), c.to_string(), s.to_string()])?,
            What::Sin => w.write_record([t.to_string(), s.to_string()])?,
            What::Cos => w.write_record([t.to_string(), c.to_string()])?,
        }
    }
    w.flush()?;
    Ok(())
}

fn cmd_points(a: PointsArgs, json: bool) -> CmdResult {
    let c = geometry::rational_point_classification(a.p)?;
    if json {
        OutputEnvelope::new(
            "points",
            json!({ "p": a.p }),
            &c,
            provenance("classification", None, json!({})),
        )
        .print()?;
        return Ok(());
    }
    let mut out = std::io::stdout().lock();
    writeln!(out, "p = {}: {}", c.p, c.description)?;
    writeln!(out, "reason: {}", c.justification)?;
    let label = if c.infinite { "sample points" } else { "points" };
    writeln!(out, "{label}:")?;
    for pt in &c.points {
        writeln!(out, "  {pt}")?;
    }
    Ok(())
}
