//! `algint`: command-line front end for the extension, reduction and
//! non-integrability tools.

mod report;

use std::io::{Read, Write};
use std::process::ExitCode;

use algint_core::analyzer::{
    self, check, cone_test, delta1, dicritical_census_x0, generic_curve, region_contains, swap_form,
    verify_first_integral, AnalysisError, Bounds, RegionSpec,
};
use algint_core::arith::{parse_rational, Elem};
use algint_core::blowup::{reduce, BlowupError, LocalForm};
use algint_core::form::{parse_poly, parse_rational_function, PlanarOneForm};
use algint_core::hirzebruch::{extend, verify_invariants, ChartId};
use algint_core::poly::{MultiPoly, Vars};
use clap::{Args, Parser, Subcommand};
use serde_json::json;

#[derive(Parser, Debug)]
#[command(name = "algint", version, about = "Hirzebruch extensions and dicritical-based non-integrability tests for planar 1-forms")]
struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct FormArg {
    /// The 1-form, e.g. "(y) dx - (x) dy"; "-" reads it from standard input.
    #[arg(long)]
    form: String,
}

#[derive(Args, Debug, Clone, Copy)]
struct BoundArgs {
    /// Largest Hirzebruch index examined.
    #[arg(long, default_value_t = analyzer::DEFAULT_MAX_DELTA)]
    max_delta: u32,
    /// Largest number of successive blowups per singular point.
    #[arg(long, default_value_t = algint_core::blowup::DEFAULT_MAX_DEPTH as u64, value_parser = clap::value_parser!(u64).range(1..))]
    max_depth: u64,
}

impl BoundArgs {
    fn bounds(self) -> Bounds {
        Bounds { max_delta: self.max_delta, max_depth: self.max_depth as usize }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the four bihomogeneous coefficients of the extended form.
    Extend {
        #[arg(long)]
        delta: u32,
        #[command(flatten)]
        form: FormArg,
    },
    /// Restrict the extended form to one affine chart.
    Restrict {
        #[arg(long)]
        delta: u32,
        /// Chart index: 00, 01, 10 or 11.
        #[arg(long)]
        chart: ChartId,
        #[command(flatten)]
        form: FormArg,
    },
    /// Least index at which the origin of U10 is not dicritical.
    Delta1 {
        #[command(flatten)]
        form: FormArg,
        #[command(flatten)]
        bounds: BoundArgs,
    },
    /// Apply the non-integrability rules.
    Check {
        #[command(flatten)]
        form: FormArg,
        #[command(flatten)]
        bounds: BoundArgs,
        /// Treat an empty bounded search for delta1 as exhaustive (rule a).
        #[arg(long)]
        assume_exhaustive: bool,
    },
    /// Dicritical census of the singular points on the line X0 = 0.
    Census {
        #[arg(long)]
        delta: u32,
        #[command(flatten)]
        form: FormArg,
        #[command(flatten)]
        bounds: BoundArgs,
    },
    /// delta1 of the field and of its variable swap, and the resulting cone.
    Cone {
        #[command(flatten)]
        form: FormArg,
        #[command(flatten)]
        bounds: BoundArgs,
    },
    /// Newton region and degree bound for a field with a known first integral.
    Region {
        #[command(flatten)]
        form: FormArg,
        /// First integral "f1/f2".
        #[arg(long)]
        integral: String,
        #[command(flatten)]
        bounds: BoundArgs,
    },
    /// Check that f1/f2 is a first integral of the vector field a d/dx + b d/dy.
    Verify {
        /// Vector field components "a;b".
        #[arg(long)]
        field: String,
        /// First integral "f1/f2".
        #[arg(long)]
        integral: String,
    },
    /// Reduce the singularity at a point by blowups and print the tree.
    Reduce {
        #[command(flatten)]
        form: FormArg,
        /// Rational point "c1,c2".
        #[arg(long, default_value = "0,0")]
        at: String,
        #[arg(long, default_value_t = algint_core::blowup::DEFAULT_MAX_DEPTH as u64, value_parser = clap::value_parser!(u64).range(1..))]
        max_depth: u64,
    },
}

/// Why a command did not complete with a definite answer.
enum Failure {
    Input(String),
    Undecided(String),
}

impl From<AnalysisError> for Failure {
    fn from(e: AnalysisError) -> Self {
        match e {
            AnalysisError::Undecided { .. } | AnalysisError::Blowup(BlowupError::Undecided { .. }) => {
                Failure::Undecided(e.to_string())
            }
            e => Failure::Input(e.to_string()),
        }
    }
}

fn input<E: std::fmt::Display>(context: &str) -> impl Fn(E) -> Failure + '_ {
    move |e| Failure::Input(format!("{context}: {e}"))
}

/// Outcome of a completed command: the text to print and whether the answer
/// was inconclusive.
struct Output {
    text: String,
    inconclusive: bool,
}

impl Output {
    fn done(text: String) -> Self {
        Output { text, inconclusive: false }
    }
}

fn read_form(arg: &FormArg) -> Result<PlanarOneForm, Failure> {
    let text = if arg.form == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(input("reading standard input"))?;
        s
    } else {
        arg.form.clone()
    };
    PlanarOneForm::parse(text.trim()).map_err(input("invalid form"))
}

fn read_integral(text: &str) -> Result<(MultiPoly, MultiPoly), Failure> {
    parse_rational_function(text, &Vars::xy()).map_err(input("invalid integral"))
}

fn pretty(v: &impl serde::Serialize) -> String {
    serde_json::to_string_pretty(v).expect("serializable report")
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    let json = cli.json;
    match &cli.command {
        Command::Extend { delta, form } => {
            let w = read_form(form)?;
            let ext = extend(*delta, &w).map_err(input("extension failed"))?;
            let checks = verify_invariants(&ext);
            Ok(Output::done(if json {
                pretty(&json!({
                    "delta": delta, "d1": ext.d1, "d2": ext.d2,
                    "A0": ext.a0.to_string(), "A1": ext.a1.to_string(),
                    "B0": ext.b0.to_string(), "B1": ext.b1.to_string(),
                    "checks": checks,
                }))
            } else {
                ext.to_string()
            }))
        }
        Command::Restrict { delta, chart, form } => {
            let w = read_form(form)?;
            let r = extend(*delta, &w).map_err(input("extension failed"))?.chart_restrict(*chart);
            Ok(Output::done(if json {
                pretty(&json!({"delta": delta, "chart": chart, "a": r.a.to_string(), "b": r.b.to_string(), "form": r.to_string()}))
            } else {
                r.to_string()
            }))
        }
        Command::Delta1 { form, bounds } => {
            let w = read_form(form)?;
            let d = delta1(&w, bounds.bounds())?;
            let text = if json {
                pretty(&json!({"delta1": d, "bounds": bounds.bounds()}))
            } else {
                d.map_or_else(|| format!("none up to delta = {}", bounds.max_delta), |d| d.to_string())
            };
            Ok(Output { text, inconclusive: d.is_none() })
        }
        Command::Check { form, bounds, assume_exhaustive } => {
            let w = read_form(form)?;
            let v = check(&w, bounds.bounds(), *assume_exhaustive)?;
            let inconclusive = v.kind == analyzer::VerdictKind::Inconclusive;
            Ok(Output { text: if json { pretty(&v) } else { report::verdict(&v) }, inconclusive })
        }
        Command::Census { delta, form, bounds } => {
            let w = read_form(form)?;
            let c = dicritical_census_x0(&w, *delta, bounds.bounds())?;
            Ok(Output::done(if json { pretty(&c) } else { report::census(&c) }))
        }
        Command::Cone { form, bounds } => {
            let w = read_form(form)?;
            let r = cone_test(&w, bounds.bounds())?;
            let inconclusive = r.delta1.is_none() || r.delta1_prime.is_none();
            Ok(Output { text: if json { pretty(&r) } else { report::cone(&r) }, inconclusive })
        }
        Command::Region { form, integral, bounds } => {
            let w = read_form(form)?;
            let (f1, f2) = read_integral(integral)?;
            let (a, b) = w.vector_field();
            if !verify_first_integral(&a, &b, &f1, &f2) {
                return Err(Failure::Input(format!("{integral} is not a first integral of the field")));
            }
            let g = generic_curve(&f1, &f2)?;
            let from_support = analyzer::delta1_from_support(&g)?;
            let d1 = delta1(&w, bounds.bounds())?;
            let d1p = delta1(&swap_form(&w), bounds.bounds())?;
            let (Some(d1), Some(d1p)) = (d1, d1p) else {
                let text = format!("delta1 = {d1:?}, delta1' = {d1p:?}: not found within the bounds");
                return Ok(Output { text, inconclusive: true });
            };
            let spec = RegionSpec { delta1: d1, delta1_prime: d1p, d_x0: g.d_x0, d_y0: g.d_y0 };
            let r = region_contains(&spec, &g);
            let bound = analyzer::degree_bound(&spec);
            let degree = f1.total_degree().max(f2.total_degree()).unwrap_or(0);
            Ok(Output::done(if json {
                pretty(&json!({
                    "spec": spec, "region": spec.describe(), "delta1_from_support": from_support,
                    "generic_curve": g, "contains": r.contains, "violations": r.violations,
                    "degree": degree, "degree_bound": bound,
                }))
            } else {
                report::region(&spec, from_support, &r, degree, bound)
            }))
        }
        Command::Verify { field, integral } => {
            let (a, b) = field
                .split_once(';')
                .ok_or_else(|| Failure::Input("--field expects \"a;b\"".into()))?;
            let v = Vars::xy();
            let a = parse_poly(a.trim(), &v).map_err(input("invalid field component a"))?;
            let b = parse_poly(b.trim(), &v).map_err(input("invalid field component b"))?;
            let (f1, f2) = read_integral(integral)?;
            let ok = verify_first_integral(&a, &b, &f1, &f2);
            Ok(Output::done(if json { pretty(&json!({"first_integral": ok})) } else { ok.to_string() }))
        }
        Command::Reduce { form, at, max_depth } => {
            let w = read_form(form)?;
            let (c1, c2) = at.split_once(',').ok_or_else(|| Failure::Input("--at expects \"c1,c2\"".into()))?;
            let coord = |s: &str| {
                parse_rational(s).map(Elem::from).ok_or_else(|| Failure::Input(format!("invalid coordinate '{s}'")))
            };
            let local = LocalForm::from(&w).translate(&coord(c1)?, &coord(c2)?);
            let tree = reduce(&local, *max_depth as usize).map_err(|e| match e {
                BlowupError::NotSingular => Failure::Input(format!("({at}) is not a singular point")),
                e => Failure::Input(e.to_string()),
            })?;
            let inconclusive = tree.truncated;
            Ok(Output { text: if json { pretty(&tree) } else { report::tree(&tree) }, inconclusive })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            // A closed pipe on the reader's side is not an error of ours.
            let _ = writeln!(std::io::stdout().lock(), "{}", out.text);
            ExitCode::from(if out.inconclusive { 2 } else { 0 })
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Undecided(msg)) => {
            eprintln!("undecided: {msg}");
            ExitCode::from(2)
        }
    }
}
