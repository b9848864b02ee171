//! Argument parsing and the subcommands.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use fbt_core::convolution::{conv_identity_1, conv_identity_2};
use fbt_core::inversion::{invert_at_with, SweepPoint};
use fbt_core::pairing::{exchange_rhs, pair_with, pairing_bound};
use fbt_core::special::{bessel_j0, bessel_j1, closed_form, closed_form_diagnostic, closed_form_residual, Singularity};
use fbt_core::{DistributionalTransform, QuadResult, SummabilityKernel};
use serde_json::{json, Value};

use crate::config::{OutputFormat, RunConfig};
use crate::error::{CliError, CliResult};
use crate::output::{Cell, Table, TRANSFORM_HEADER};
use crate::{spec, suite};

/// Accuracy the Bessel routines are checked to on [0, 12].
pub const BESSEL_ERR: f64 = 1e-10;

#[derive(Debug, Parser)]
#[command(name = "fbt", version, about = "Distributional Fourier transforms of bounded functions")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Global {
    /// Config file; overrides $FBT_CONFIG and ./fbt.conf.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Output format; overrides the config.
    #[arg(long, global = true, value_enum)]
    pub out: Option<OutputFormat>,
    /// Absolute quadrature tolerance; overrides the config.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Seed for the sampled batteries; overrides the config.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Ψ, Ω, Φ and f̂₁ on a grid of s values.
    Transform {
        #[arg(long)]
        f: String,
        /// a:b:n
        #[arg(long, allow_hyphen_values = true)]
        grid: String,
    },
    /// The pairing ⟨f̂, g⟩ with its bound.
    Pair {
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
        /// Also evaluate ⟨f, ĝ⟩ and report the residual.
        #[arg(long)]
        both_sides: bool,
    },
    /// Summability-kernel inversion on a grid of x values.
    Invert {
        #[arg(long)]
        f: String,
        #[arg(long)]
        kernel: String,
        /// Comma-separated kernel widths.
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        /// a:b:n
        #[arg(long, allow_hyphen_values = true)]
        grid: String,
    },
    /// Both sides of a weak convolution identity.
    Convolve {
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
        #[arg(long)]
        h: String,
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
        identity: u8,
    },
    /// A closed-form transform against the exchange formula.
    Verify {
        #[arg(long)]
        closed_form: String,
        #[arg(long)]
        g: String,
    },
    /// J₀ and J₁ at a list of points.
    Bessel {
        #[arg(long, allow_hyphen_values = true)]
        x: String,
    },
    /// The acceptance criteria.
    Suite {
        /// Comma-separated criterion keys; all when omitted.
        #[arg(long, value_delimiter = ',')]
        only: Vec<String>,
    },
}

/// Maps `f` over `items` on all available cores; results keep input order.
pub fn par_map<T: Sync, R: Send>(items: &[T], f: impl Fn(&T) -> R + Sync) -> Vec<R> {
    let threads = std::thread::available_parallelism().map_or(1, |n| n.get()).min(items.len().max(1));
    if threads <= 1 {
        return items.iter().map(f).collect();
    }
    let chunk = items.len().div_ceil(threads);
    let f = &f;
    std::thread::scope(|scope| {
        let handles: Vec<_> = items.chunks(chunk).map(|c| scope.spawn(move || c.iter().map(f).collect::<Vec<R>>())).collect();
        handles.into_iter().flat_map(|h| h.join().expect("worker panicked")).collect()
    })
}

fn num(x: f64) -> Value {
    serde_json::Number::from_f64(x).map(Value::Number).unwrap_or(Value::Null)
}

fn complex(r: &QuadResult) -> Value {
    json!({ "re": num(r.value.re), "im": num(r.value.im), "err_est": num(r.err_est) })
}

fn write_json(v: &Value, out: &mut dyn Write) -> CliResult<()> {
    writeln!(out, "{}", serde_json::to_string_pretty(v).map_err(std::io::Error::other)?)?;
    Ok(())
}

fn write_record(table: Table, json_value: Value, format: OutputFormat, out: &mut dyn Write) -> CliResult<()> {
    match format {
        OutputFormat::Json => write_json(&json_value, out),
        OutputFormat::Csv => Ok(table.write(format, out)?),
    }
}

fn load_config(g: &Global) -> CliResult<RunConfig> {
    let mut rc = RunConfig::load(g.config.as_deref())?;
    if let Some(t) = g.tol {
        rc.tol = t;
        rc.comparison_tol = rc.comparison_tol.max(t);
    }
    if let Some(s) = g.seed {
        rc.seed = s;
    }
    rc.validate()?;
    Ok(rc)
}

fn transform(rc: &RunConfig, f: &str, grid: &str, format: OutputFormat, out: &mut dyn Write) -> CliResult<()> {
    let func = spec::function(f)?;
    let points = spec::grid(grid)?;
    let t = DistributionalTransform::new(func).with_budget(rc.panel_budget);
    let rows = par_map(&points, |&s| t.grid(&[s], rc.tol).map(|mut v| v.remove(0)));
    let mut table = Table::new(TRANSFORM_HEADER);
    for row in rows {
        let r = row?;
        table.push(
            [r.s, r.psi.value.re, r.psi.value.im, r.omega.value.re, r.omega.value.im, r.phi.value.re, r.phi.value.im, r.f1_hat.value.re, r.f1_hat.value.im, r.err_est()]
                .into_iter()
                .map(Cell::Num)
                .collect(),
        );
    }
    Ok(table.write(format, out)?)
}

fn pair(rc: &RunConfig, f: &str, g: &str, both: bool, format: OutputFormat, out: &mut dyn Write) -> CliResult<()> {
    let func = spec::function(f)?;
    let m = spec::multiplier(g)?;
    let cfg = rc.quad();
    let bound = pairing_bound(&func, &m);
    let t = DistributionalTransform::new(func.clone()).with_budget(rc.panel_budget);
    let lhs = pair_with(&t, &m, &cfg)?;
    let rhs = if both { Some(exchange_rhs(&func, &m, &cfg)?) } else { None };
    let residual = rhs.map(|r| (lhs.value - r.value).norm());
    let err_est = lhs.err_est + rhs.map_or(0.0, |r| r.err_est);
    let mut j = json!({
        "f": func.label, "g": m.label, "value": complex(&lhs), "bound": num(bound), "err_est": num(err_est),
    });
    if let (Some(r), Some(res)) = (rhs, residual) {
        j["exchange"] = complex(&r);
        j["residual"] = num(res);
        j["within_comparison_tol"] = json!(res <= rc.comparison_tol * (1.0 + r.value.norm()));
    }
    let mut table = Table::new(&["f", "g", "re_value", "im_value", "re_exchange", "im_exchange", "residual", "bound", "err_est"]);
    let opt = |x: Option<f64>| x.map_or(Cell::Empty, Cell::Num);
    table.push(vec![
        func.label.clone().into(),
        m.label.clone().into(),
        lhs.value.re.into(),
        lhs.value.im.into(),
        opt(rhs.map(|r| r.value.re)),
        opt(rhs.map(|r| r.value.im)),
        opt(residual),
        bound.into(),
        err_est.into(),
    ]);
    write_record(table, j, format, out)
}

fn invert(rc: &RunConfig, f: &str, kernel: &str, a: &str, grid: &str, format: OutputFormat, out: &mut dyn Write) -> CliResult<()> {
    let func = spec::function(f)?;
    let k = SummabilityKernel::from_name(kernel)?;
    let a_list = spec::list(a)?;
    let points = spec::grid(grid)?;
    let cfg = rc.quad();
    let t = DistributionalTransform::new(func.clone()).with_budget(rc.panel_budget);
    let jobs: Vec<(f64, f64)> = a_list.iter().flat_map(|&a| points.iter().map(move |&x| (a, x))).collect();
    let results = par_map(&jobs, |&(a, x)| {
        invert_at_with(&t, k, a, x, &cfg).map(|value| SweepPoint { x, value, error: (func.eval(x) - value.value).norm() })
    });
    let mut table = Table::new(&["kernel", "a", "x", "re_value", "im_value", "error", "max_error", "err_est"]);
    for (i, &a) in a_list.iter().enumerate() {
        let chunk: Vec<SweepPoint> = results[i * points.len()..(i + 1) * points.len()].iter().cloned().collect::<Result<_, _>>()?;
        let max_error = chunk.iter().map(|p| p.error).fold(0.0, f64::max);
        for p in chunk {
            table.push(vec![k.name().into(), a.into(), p.x.into(), p.value.value.re.into(), p.value.value.im.into(), p.error.into(), max_error.into(), p.value.err_est.into()]);
        }
    }
    Ok(table.write(format, out)?)
}

fn convolve(rc: &RunConfig, f: &str, g: &str, h: &str, identity: u8, format: OutputFormat, out: &mut dyn Write) -> CliResult<()> {
    let func = spec::function(f)?;
    let (mg, mh) = (spec::multiplier(g)?, spec::multiplier(h)?);
    let cfg = rc.quad();
    let r = if identity == 1 { conv_identity_1(&func, &mg, &mh, &cfg)? } else { conv_identity_2(&func, &mg, &mh, &cfg)? };
    let err_est = r.lhs.err_est + r.rhs.err_est;
    let j = json!({
        "identity": identity, "f": func.label, "g": mg.label, "h": mh.label,
        "lhs": complex(&r.lhs), "rhs": complex(&r.rhs), "residual": num(r.residual), "err_est": num(err_est),
    });
    let mut table = Table::new(&["identity", "re_lhs", "im_lhs", "re_rhs", "im_rhs", "residual", "err_est"]);
    table.push(vec![f64::from(identity).into(), r.lhs.value.re.into(), r.lhs.value.im.into(), r.rhs.value.re.into(), r.rhs.value.im.into(), r.residual.into(), err_est.into()]);
    write_record(table, j, format, out)
}

fn verify(rc: &RunConfig, name: &str, g: &str, format: OutputFormat, out: &mut dyn Write) -> CliResult<()> {
    let (name, p) = spec::parse_named(name, fbt_core::fncat::param_keys)?;
    let m = spec::multiplier(g)?;
    let cfg = rc.quad();
    let d = closed_form(&name, &p)?;
    let mut table = Table::new(&["closed_form", "g", "eps", "re_closed", "im_closed", "re_exchange", "im_exchange", "residual", "err_est"]);
    if d.singularities.iter().any(|s| matches!(s.1, Singularity::NonIntegrable)) {
        // No pairing exists; report how the truncated pairing behaves instead.
        let diag = closed_form_diagnostic(&name, &p, &m, &[1e-2, 1e-3, 1e-4], &cfg)?;
        let mut rows = Vec::new();
        for (eps, r) in &diag.truncated {
            let res = (r.value - diag.exchange.value).norm();
            rows.push(json!({ "eps": num(*eps), "closed": complex(r), "residual": num(res) }));
            table.push(vec![
                name.clone().into(),
                m.label.clone().into(),
                (*eps).into(),
                r.value.re.into(),
                r.value.im.into(),
                diag.exchange.value.re.into(),
                diag.exchange.value.im.into(),
                res.into(),
                (r.err_est + diag.exchange.err_est).into(),
            ]);
        }
        let j = json!({
            "closed_form": d.label, "g": m.label, "diagnostic": true,
            "note": "density is not locally integrable at 0; values are pairings with |s| < eps removed",
            "exchange": complex(&diag.exchange), "truncated": rows,
        });
        return write_record(table, j, format, out);
    }
    let r = closed_form_residual(&name, &p, &m, &cfg)?;
    let err_est = r.closed.err_est + r.exchange.err_est;
    let j = json!({
        "closed_form": d.label, "g": m.label, "diagnostic": false,
        "closed": complex(&r.closed), "exchange": complex(&r.exchange), "residual": num(r.residual), "err_est": num(err_est),
    });
    table.push(vec![
        name.clone().into(),
        m.label.clone().into(),
        Cell::Empty,
        r.closed.value.re.into(),
        r.closed.value.im.into(),
        r.exchange.value.re.into(),
        r.exchange.value.im.into(),
        r.residual.into(),
        err_est.into(),
    ]);
    write_record(table, j, format, out)
}

fn bessel(x: &str, format: OutputFormat, out: &mut dyn Write) -> CliResult<()> {
    let mut table = Table::new(&["x", "j0", "j1", "err_est"]);
    for x in spec::list(x)? {
        table.push(vec![x.into(), bessel_j0(x)?.into(), bessel_j1(x)?.into(), BESSEL_ERR.into()]);
    }
    Ok(table.write(format, out)?)
}

fn run_suite(rc: &RunConfig, only: &[String], format: OutputFormat, out: &mut dyn Write) -> CliResult<()> {
    if let Some(bad) = only.iter().find(|k| !suite::keys().any(|s| s == k.as_str())) {
        return Err(CliError::Usage(format!("unknown criterion `{bad}`; expected one of {}", suite::keys().collect::<Vec<_>>().join(", "))));
    }
    let mut io_err = None;
    let results = suite::run(rc, only, |r| {
        if format == OutputFormat::Csv {
            if let Err(e) = writeln!(out, "{}", r.line()).and_then(|_| out.flush()) {
                io_err.get_or_insert(e);
            }
        }
    });
    if let Some(e) = io_err {
        return Err(e.into());
    }
    if format == OutputFormat::Json {
        write_json(&serde_json::to_value(&results).map_err(std::io::Error::other)?, out)?;
    }
    match results.iter().filter(|r| !r.passed).count() {
        0 => Ok(()),
        n => Err(CliError::CriteriaFailed(n)),
    }
}

fn dispatch(cli: Cli, out: &mut dyn Write) -> CliResult<()> {
    let rc = load_config(&cli.global)?;
    // Single-record commands default to JSON.
    let fmt = |record: bool| cli.global.out.unwrap_or(if record { OutputFormat::Json } else { rc.output_format });
    match &cli.command {
        Command::Transform { f, grid } => transform(&rc, f, grid, fmt(false), out),
        Command::Pair { f, g, both_sides } => pair(&rc, f, g, *both_sides, fmt(true), out),
        Command::Invert { f, kernel, a, grid } => invert(&rc, f, kernel, a, grid, fmt(false), out),
        Command::Convolve { f, g, h, identity } => convolve(&rc, f, g, h, *identity, fmt(true), out),
        Command::Verify { closed_form, g } => verify(&rc, closed_form, g, fmt(true), out),
        Command::Bessel { x } => bessel(x, fmt(false), out),
        Command::Suite { only } => run_suite(&rc, only, cli.global.out.unwrap_or(OutputFormat::Csv), out),
    }
}

/// Runs the CLI and returns the process exit code. Errors go to `err` as one
/// JSON record per line.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand) {
                let _ = write!(out, "{}", e.render());
                return if e.kind() == ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand { 2 } else { 0 };
            }
            let msg = e.render().to_string();
            let first = msg.lines().next().unwrap_or("").trim_start_matches("error: ").to_string();
            let _ = writeln!(err, "{}", CliError::Usage(first).record());
            return 2;
        }
    };
    match dispatch(cli, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "{}", e.record());
            e.exit_code()
        }
    }
}
