//! Command line front end for the inequality laboratory.
//!
//! Every subcommand honors --seed, --output {text,json,csv} and --out;
//! identical invocations produce byte-identical output.  Exit codes:
//! 0 success (or certified holds), 1 certification found counterexamples,
//! 2 usage or evaluation errors.

use clap::{Args, Parser, Subcommand, ValueEnum};
use ineqlab::cert::{self, BoundFamily, Certificate, Point, Strategy};
use ineqlab::error::Error;
use ineqlab::means::{self, MeanSpec};
use ineqlab::sums::{self, HarmonicFixture, SeriesModel};
use ineqlab::{classic, complexregion, logbounds, solve, zeta};
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "ineqlab", version, about = "numerical inequality laboratory")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
    /// Seed for every randomized sampler.
    #[arg(long, allow_negative_numbers = true, global = true, default_value_t = 0)]
    seed: u64,
    /// Output format.
    #[arg(long, allow_negative_numbers = true, global = true, value_enum, default_value_t = Format::Text)]
    output: Format,
    /// Write the rendered output to a file instead of stdout.
    #[arg(long, allow_negative_numbers = true, global = true)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Cmd {
    /// Mean families: evaluation, conjugation, iteration, Rado bounds.
    Means {
        #[command(subcommand)]
        cmd: MeansCmd,
    },
    /// Logarithm/exponential bound catalog and its probes.
    Bounds {
        #[command(subcommand)]
        cmd: BoundsCmd,
    },
    /// Series partial sums, Euler constants, expansion coefficients.
    Sums {
        #[command(subcommand)]
        cmd: SumsCmd,
    },
    /// Bernoulli numbers and zeta/eta evaluation.
    Zeta {
        #[command(subcommand)]
        cmd: ZetaCmd,
    },
    /// Root finding and relaxed fixed-point iteration.
    Solve {
        #[command(subcommand)]
        cmd: SolveCmd,
    },
    /// Two-sided Young inequality comparison.
    Young {
        #[command(subcommand)]
        cmd: YoungCmd,
    },
    /// Finite-vector Cauchy-Bunyakovsky, Minkowski, Holder checks.
    Classic {
        #[command(subcommand)]
        cmd: ClassicCmd,
    },
    /// Complex-plane region classification and scans.
    Complex {
        #[command(subcommand)]
        cmd: ComplexCmd,
    },
    /// Certify a cataloged inequality family by seeded sampling.
    Certify(CertifyArgs),
}

#[derive(Args)]
struct MeanShape {
    /// Family: power, rado, gini, lehmer, heron, warith, wgeom, quasi.
    #[arg(long, allow_negative_numbers = true)]
    kind: String,
    #[arg(long, allow_negative_numbers = true)]
    alpha: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    beta: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    u: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    v: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    w1: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    w2: Option<f64>,
    /// Generator id for quasi-arithmetic means.
    #[arg(long, allow_negative_numbers = true)]
    generator: Option<String>,
}

impl MeanShape {
    fn build(&self) -> Result<MeanSpec, Error> {
        let need = |o: Option<f64>, name: &str| {
            o.ok_or_else(|| Error::Parameter(format!("--{name} is required for --kind {}", self.kind)))
        };
        Ok(match self.kind.as_str() {
            "power" => MeanSpec::Power(need(self.alpha, "alpha")?),
            "rado" => MeanSpec::Rado(need(self.beta, "beta")?),
            "gini" => MeanSpec::Gini(need(self.u, "u")?, need(self.v, "v")?),
            "lehmer" => MeanSpec::Lehmer(need(self.u, "u")?),
            "heron" => MeanSpec::Heron,
            "warith" => MeanSpec::WeightedArith(need(self.w1, "w1")?, need(self.w2, "w2")?),
            "wgeom" => MeanSpec::WeightedGeom(need(self.w1, "w1")?, need(self.w2, "w2")?),
            "quasi" => MeanSpec::QuasiArith {
                generator: self
                    .generator
                    .clone()
                    .ok_or_else(|| Error::Parameter("--generator is required for --kind quasi".into()))?,
                weights: vec![need(self.w1, "w1")?, need(self.w2, "w2")?],
            },
            other => return Err(Error::UnknownId(format!("mean kind {other}"))),
        })
    }
}

/// Compact one-token mean syntax for commands taking two means:
/// power:0.5, rado:-1, gini:2,1, lehmer:1, heron, warith:0.3,0.7,
/// wgeom:0.5,0.5, quasi:ln:0.5,0.5.
fn parse_compact_mean(s: &str) -> Result<MeanSpec, Error> {
    let (kind, rest) = s.split_once(':').unwrap_or((s, ""));
    let nums = || -> Result<Vec<f64>, Error> { parse_f64_list(rest) };
    Ok(match kind {
        "power" => MeanSpec::Power(one(&nums()?, s)?),
        "rado" => MeanSpec::Rado(one(&nums()?, s)?),
        "lehmer" => MeanSpec::Lehmer(one(&nums()?, s)?),
        "gini" => {
            let v = nums()?;
            pair(&v, s)?;
            MeanSpec::Gini(v[0], v[1])
        }
        "heron" => MeanSpec::Heron,
        "warith" => {
            let v = nums()?;
            pair(&v, s)?;
            MeanSpec::WeightedArith(v[0], v[1])
        }
        "wgeom" => {
            let v = nums()?;
            pair(&v, s)?;
            MeanSpec::WeightedGeom(v[0], v[1])
        }
        "quasi" => {
            let (generator, weights) = rest
                .split_once(':')
                .ok_or_else(|| Error::Parameter(format!("expected quasi:GEN:w1,w2 in {s}")))?;
            MeanSpec::QuasiArith {
                generator: generator.to_string(),
                weights: parse_f64_list(weights)?,
            }
        }
        other => return Err(Error::UnknownId(format!("mean kind {other}"))),
    })
}

fn one(v: &[f64], ctx: &str) -> Result<f64, Error> {
    if v.len() == 1 {
        Ok(v[0])
    } else {
        Err(Error::Parameter(format!("expected one parameter in {ctx}")))
    }
}

fn pair(v: &[f64], ctx: &str) -> Result<(), Error> {
    if v.len() == 2 {
        Ok(())
    } else {
        Err(Error::Parameter(format!("expected two parameters in {ctx}")))
    }
}

fn parse_f64_list(s: &str) -> Result<Vec<f64>, Error> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<f64>().map_err(|_| Error::Parameter(format!("not a number: {t}"))))
        .collect()
}

#[derive(Subcommand)]
enum MeansCmd {
    /// Evaluate a mean at (x, y).
    Eval {
        #[command(flatten)]
        shape: MeanShape,
        #[arg(long, allow_negative_numbers = true)]
        x: f64,
        #[arg(long, allow_negative_numbers = true)]
        y: f64,
    },
    /// Evaluate the conjugate mean xy/M(x, y).
    Conjugate {
        #[command(flatten)]
        shape: MeanShape,
        #[arg(long, allow_negative_numbers = true)]
        x: f64,
        #[arg(long, allow_negative_numbers = true)]
        y: f64,
    },
    /// Iterate x' = M(x,y), y' = N(x,y) to the common limit.
    Iterate {
        /// First mean in compact syntax (for example power:1).
        #[arg(long, allow_negative_numbers = true)]
        first: String,
        /// Second mean in compact syntax (for example power:0).
        #[arg(long, allow_negative_numbers = true)]
        second: String,
        #[arg(long, allow_negative_numbers = true)]
        x: f64,
        #[arg(long, allow_negative_numbers = true)]
        y: f64,
        #[arg(long, allow_negative_numbers = true, default_value_t = 1e-15)]
        tol: f64,
    },
    /// Certify the two-sided power-mean sandwich of the Rado mean.
    RadoCheck {
        #[arg(long, allow_negative_numbers = true)]
        alpha: f64,
        #[arg(long, allow_negative_numbers = true, default_value_t = 100_000)]
        samples: u64,
    },
    /// Normalized profile h(t) = M(1, e^t)/(1 + e^t).
    Profile {
        #[command(flatten)]
        shape: MeanShape,
        #[arg(long, allow_negative_numbers = true)]
        t: f64,
    },
}

#[derive(Subcommand)]
enum BoundsCmd {
    /// List the bound catalog.
    List,
    /// Evaluate every term of an inequality chain at x.
    Chain {
        #[arg(long, allow_negative_numbers = true)]
        id: String,
        #[arg(long, allow_negative_numbers = true)]
        x: f64,
    },
    /// Evaluate a deviation function.
    Eps {
        #[arg(long, allow_negative_numbers = true)]
        family: String,
        #[arg(long, allow_negative_numbers = true)]
        x: f64,
    },
    /// Continued-fraction convergent of ln(1+x): coefficients and value.
    Cf {
        #[arg(long, allow_negative_numbers = true)]
        n: u32,
        #[arg(long, allow_negative_numbers = true)]
        x: Option<f64>,
    },
    /// Certify a cataloged family (same as the top-level command).
    Certify(CertifyArgs),
    /// Probe how a sharp constant responds to perturbation.
    Sharpness {
        /// Knob id: eq09, eq10 or eq13.
        #[arg(long, allow_negative_numbers = true)]
        id: String,
        /// Comma-separated knob values.
        #[arg(long, allow_negative_numbers = true)]
        deltas: String,
        #[arg(long, allow_negative_numbers = true, default_value_t = 20_000)]
        samples: u64,
    },
}

#[derive(Args)]
struct CertifyArgs {
    /// Catalog id (bounds list) or eq16_complex.
    #[arg(long, allow_negative_numbers = true)]
    family: String,
    #[arg(long, allow_negative_numbers = true, default_value_t = 10_000)]
    samples: u64,
    /// uniform, log_uniform or grid; defaults per family support.
    #[arg(long, allow_negative_numbers = true)]
    strategy: Option<String>,
}

#[derive(Subcommand)]
enum SumsCmd {
    /// Compensated partial sum of a series model.
    Partial {
        #[arg(long, allow_negative_numbers = true)]
        model: String,
        #[arg(long, allow_negative_numbers = true)]
        n: u64,
    },
    /// Enclosure of the series' Euler constant from n terms.
    EulerConstant {
        #[arg(long, allow_negative_numbers = true)]
        model: String,
        #[arg(long, allow_negative_numbers = true)]
        n: u64,
    },
    /// Two-sided harmonic partial-sum fixtures.
    Sl {
        /// eq22, eq24, eq25, eq26 or eq27.
        #[arg(long, allow_negative_numbers = true)]
        fixture: String,
        #[arg(long, allow_negative_numbers = true)]
        n: u64,
    },
    /// Harmonic expansion coefficient A_k by quadrature.
    Ak {
        #[arg(long, allow_negative_numbers = true)]
        k: u64,
    },
    /// Extrapolated limit of n^order (C - (H_n - ln n - correction)).
    Limits {
        #[arg(long, allow_negative_numbers = true)]
        order: u8,
        /// Euler constant override; defaults to the n = 10^6 enclosure midpoint.
        #[arg(long, allow_negative_numbers = true)]
        c: Option<f64>,
    },
    /// Analytic continuation estimate of zeta(a) for 0 < a < 1.
    ZetaCont {
        #[arg(long, allow_negative_numbers = true)]
        a: f64,
        #[arg(long, allow_negative_numbers = true)]
        n: u64,
    },
}

#[derive(Subcommand)]
enum ZetaCmd {
    /// Bernoulli numbers B_0..B_n as exact rationals.
    Bernoulli {
        #[arg(long, allow_negative_numbers = true)]
        n: usize,
    },
    /// zeta(s) for even s by the closed Bernoulli form.
    Even {
        #[arg(long, allow_negative_numbers = true)]
        s: usize,
    },
    /// eta(s) for even s by the closed Bernoulli form.
    Eta {
        #[arg(long, allow_negative_numbers = true)]
        s: usize,
    },
    /// zeta(s), s > 1, by direct summation with tail correction.
    Direct {
        #[arg(long, allow_negative_numbers = true)]
        s: f64,
        #[arg(long, allow_negative_numbers = true, default_value_t = 100_000)]
        terms: u64,
    },
}

/// Named scalar fixtures for the solver commands.  Root commands solve
/// g(x) - x = 0; fixed-point commands iterate g.
fn solve_function(id: &str) -> Result<Box<dyn Fn(f64) -> f64>, Error> {
    match id {
        // the e-enclosure deviation target
        "e_fixed" => Ok(Box::new(|x: f64| 1.0 / (1.0 / x).ln_1p() - 0.4)),
        // its inverse map, contractive where the original diverges
        "e_fixed_inverse" => Ok(Box::new(|x: f64| 1.0 / ((1.0 / (x + 0.4)).exp() - 1.0))),
        other => Err(Error::UnknownId(format!(
            "solver function {other} (known: e_fixed, e_fixed_inverse)"
        ))),
    }
}

#[derive(Subcommand)]
enum SolveCmd {
    /// Bracketing bisection on g(x) - x.
    Bisect {
        #[arg(long, allow_negative_numbers = true)]
        function: String,
        #[arg(long, allow_negative_numbers = true)]
        lo: f64,
        #[arg(long, allow_negative_numbers = true)]
        hi: f64,
        #[arg(long, allow_negative_numbers = true, default_value_t = 1e-12)]
        tol: f64,
    },
    /// Newton iteration on g(x) - x with a central-difference derivative.
    Newton {
        #[arg(long, allow_negative_numbers = true)]
        function: String,
        #[arg(long, allow_negative_numbers = true)]
        x0: f64,
        #[arg(long, allow_negative_numbers = true, default_value_t = 1e-12)]
        tol: f64,
        #[arg(long, allow_negative_numbers = true, default_value_t = 50)]
        maxit: usize,
    },
    /// Relaxed fixed-point iteration x <- x + lambda (g(x) - x).
    FixedPoint {
        #[arg(long, allow_negative_numbers = true)]
        function: String,
        #[arg(long, allow_negative_numbers = true)]
        x0: f64,
        #[arg(long, allow_negative_numbers = true, default_value_t = 1.0)]
        lambda: f64,
        #[arg(long, allow_negative_numbers = true, default_value_t = 1e-12)]
        tol: f64,
        #[arg(long, allow_negative_numbers = true, default_value_t = 50)]
        maxit: usize,
    },
    /// Estimate the optimal relaxation 1/(1 - g') and iterate with it.
    Lambda {
        #[arg(long, allow_negative_numbers = true)]
        function: String,
        #[arg(long, allow_negative_numbers = true)]
        x0: f64,
        /// Where to estimate g'; defaults to x0.
        #[arg(long, allow_negative_numbers = true)]
        at: Option<f64>,
        #[arg(long, allow_negative_numbers = true, default_value_t = 1e-12)]
        tol: f64,
        #[arg(long, allow_negative_numbers = true, default_value_t = 50)]
        maxit: usize,
    },
}

#[derive(Subcommand)]
enum YoungCmd {
    /// Evaluate both Young bounds at (x, y) and pick the sharper one.
    Compare {
        #[arg(long, allow_negative_numbers = true)]
        x: f64,
        #[arg(long, allow_negative_numbers = true)]
        y: f64,
        #[arg(long, allow_negative_numbers = true)]
        p: f64,
    },
    /// Critical companion value where the sharper bound flips.
    Critical {
        #[arg(long, allow_negative_numbers = true)]
        x: f64,
        #[arg(long, allow_negative_numbers = true)]
        p: f64,
    },
}

#[derive(Subcommand)]
enum ClassicCmd {
    /// Cauchy-Bunyakovsky inequality for two vectors.
    Cb {
        /// Comma-separated entries.
        #[arg(long, allow_negative_numbers = true)]
        u: String,
        #[arg(long, allow_negative_numbers = true)]
        v: String,
    },
    /// Minkowski triangle inequality for Euclidean norms.
    Minkowski {
        #[arg(long, allow_negative_numbers = true)]
        u: String,
        #[arg(long, allow_negative_numbers = true)]
        v: String,
    },
    /// Holder inequality with exponent p (entries nonnegative).
    Holder {
        #[arg(long, allow_negative_numbers = true)]
        u: String,
        #[arg(long, allow_negative_numbers = true)]
        v: String,
        #[arg(long, allow_negative_numbers = true)]
        p: f64,
    },
}

#[derive(Args)]
struct GridArgs {
    #[arg(long, allow_negative_numbers = true, default_value_t = -3.0)]
    re_lo: f64,
    #[arg(long, allow_negative_numbers = true, default_value_t = 3.0)]
    re_hi: f64,
    #[arg(long, allow_negative_numbers = true, default_value_t = -3.0)]
    im_lo: f64,
    #[arg(long, allow_negative_numbers = true, default_value_t = 3.0)]
    im_hi: f64,
    #[arg(long, allow_negative_numbers = true, default_value_t = 400)]
    nx: usize,
    #[arg(long, allow_negative_numbers = true, default_value_t = 400)]
    ny: usize,
}

impl GridArgs {
    fn build(&self) -> Result<complexregion::GridSpec, Error> {
        complexregion::GridSpec::new((self.re_lo, self.re_hi), (self.im_lo, self.im_hi), self.nx, self.ny)
    }
}

#[derive(Subcommand)]
enum ComplexCmd {
    /// Classify a point against a region variant.
    Classify {
        #[arg(long, allow_negative_numbers = true)]
        re: f64,
        #[arg(long, allow_negative_numbers = true)]
        im: f64,
        /// amgm (default), quartic or modulus.
        #[arg(long, allow_negative_numbers = true, default_value = "amgm")]
        variant: String,
    },
    /// Trace the quartic boundary curve in polar form.
    Curve {
        #[arg(long, allow_negative_numbers = true, default_value_t = 1000)]
        points: usize,
    },
    /// Axis intervals where the AM-GM comparison holds.
    Axes,
    /// Scan |ln(1+z)| <= |z| over a grid with per-ray crossing search.
    LogScan {
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long, allow_negative_numbers = true, default_value_t = 8)]
        rays: usize,
    },
    /// Empirical supremum of |eps(z)| over a grid.
    EpsSup {
        #[command(flatten)]
        grid: GridArgs,
    },
}

#[derive(Clone)]
enum Val {
    F(f64),
    U(u64),
    S(String),
    B(bool),
}

impl Val {
    fn text(&self) -> String {
        match self {
            Val::F(x) => format!("{x}"),
            Val::U(n) => format!("{n}"),
            Val::S(s) => s.clone(),
            Val::B(b) => format!("{b}"),
        }
    }

    fn json(&self) -> String {
        match self {
            Val::F(x) => cert::json_f64(*x),
            Val::U(n) => format!("{n}"),
            Val::S(s) => json_str(s),
            Val::B(b) => format!("{b}"),
        }
    }

    fn csv(&self) -> String {
        match self {
            Val::F(x) if x.is_finite() => format!("{x:.16e}"),
            v => v.text(),
        }
    }
}

fn json_str(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            c if (c as u32) < 0x20 => out.push_str(&format!("\\u{:04x}", c as u32)),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

/// Renderable result: ordered scalar fields plus an optional table.  A
/// preformatted JSON body (certificates) takes precedence in JSON mode.
#[derive(Default)]
struct Doc {
    fields: Vec<(&'static str, Val)>,
    columns: Vec<&'static str>,
    rows: Vec<Vec<Val>>,
    raw_json: Option<String>,
}

impl Doc {
    fn field(mut self, name: &'static str, v: Val) -> Self {
        self.fields.push((name, v));
        self
    }

    fn table(mut self, columns: Vec<&'static str>, rows: Vec<Vec<Val>>) -> Self {
        self.columns = columns;
        self.rows = rows;
        self
    }

    fn render(&self, format: Format) -> String {
        match format {
            Format::Text => {
                let mut out = String::new();
                for (name, v) in &self.fields {
                    out.push_str(&format!("{name} = {}\n", v.text()));
                }
                if !self.columns.is_empty() {
                    out.push_str(&self.columns.join("  "));
                    out.push('\n');
                    for row in &self.rows {
                        let cells: Vec<String> = row.iter().map(Val::text).collect();
                        out.push_str(&cells.join("  "));
                        out.push('\n');
                    }
                }
                out
            }
            Format::Json => {
                if let Some(raw) = &self.raw_json {
                    let mut out = raw.clone();
                    out.push('\n');
                    return out;
                }
                let mut parts: Vec<String> = self
                    .fields
                    .iter()
                    .map(|(name, v)| format!("{}:{}", json_str(name), v.json()))
                    .collect();
                if !self.columns.is_empty() {
                    let rows: Vec<String> = self
                        .rows
                        .iter()
                        .map(|row| {
                            let cells: Vec<String> = self
                                .columns
                                .iter()
                                .zip(row)
                                .map(|(c, v)| format!("{}:{}", json_str(c), v.json()))
                                .collect();
                            format!("{{{}}}", cells.join(","))
                        })
                        .collect();
                    parts.push(format!("\"rows\":[{}]", rows.join(",")));
                }
                format!("{{{}}}\n", parts.join(","))
            }
            Format::Csv => {
                let mut out = String::new();
                if self.columns.is_empty() {
                    let names: Vec<&str> = self.fields.iter().map(|(n, _)| *n).collect();
                    out.push_str(&names.join(","));
                    out.push('\n');
                    let cells: Vec<String> = self.fields.iter().map(|(_, v)| v.csv()).collect();
                    out.push_str(&cells.join(","));
                    out.push('\n');
                } else {
                    out.push_str(&self.columns.join(","));
                    out.push('\n');
                    for row in &self.rows {
                        let cells: Vec<String> = row.iter().map(Val::csv).collect();
                        out.push_str(&cells.join(","));
                        out.push('\n');
                    }
                }
                out
            }
        }
    }
}

fn point_cells(p: &Point) -> (Val, Val) {
    match p {
        Point::Real(x) => (Val::F(*x), Val::S(String::new())),
        Point::Pair(x, y) => (Val::F(*x), Val::F(*y)),
        Point::Complex(re, im) => (Val::F(*re), Val::F(*im)),
    }
}

fn certificate_doc(c: &Certificate) -> Doc {
    let (wx, wy) = point_cells(&c.worst_point);
    let rows: Vec<Vec<Val>> = c
        .counterexamples
        .iter()
        .map(|ce| {
            let (x, y) = point_cells(&ce.point);
            vec![x, y, Val::F(ce.lhs), Val::F(ce.rhs), Val::F(ce.gap)]
        })
        .collect();
    Doc {
        raw_json: Some(c.to_json()),
        ..Doc::default()
    }
    .field("family_id", Val::S(c.family_id.clone()))
    .field("samples", Val::U(c.samples))
    .field("seed", Val::U(c.seed))
    .field("strategy", Val::S(c.strategy.name().to_string()))
    .field("holds", Val::B(c.holds))
    .field("worst_gap", Val::F(c.worst_gap))
    .field("worst_x", wx)
    .field("worst_y", wy)
    .field("strict_violations", Val::U(c.strict_violations))
    .table(vec!["x", "y", "lhs", "rhs", "gap"], rows)
}

fn trace_doc(t: &solve::SolveTrace) -> Doc {
    Doc::default()
        .field("root", Val::F(t.root))
        .field("iterations", Val::U(t.iterations as u64))
        .field("residual", Val::F(t.residual))
        .field("converged", Val::B(t.converged))
}

fn run_certify(args: &CertifyArgs, seed: u64) -> Result<(Doc, u8), Error> {
    let family = if args.family == "eq16_complex" {
        BoundFamily::complex(
            "eq16_complex",
            "|ln(1+z)| <= |z|",
            false,
            (-3.0, 3.0),
            (-3.0, 3.0),
            |re, im| {
                let modulus_sq = 2.0 * re + re * re + im * im;
                let lhs = (0.5 * modulus_sq.ln_1p()).hypot(im.atan2(1.0 + re));
                (lhs, re.hypot(im))
            },
        )
    } else {
        logbounds::family_by_id(&args.family)?
    };
    let strategy = match &args.strategy {
        Some(name) => Strategy::from_name(name)?,
        // complex rectangles straddle zero, so log sampling is out
        None => match family.support {
            cert::Support::Complex { .. } => Strategy::Grid,
            _ => Strategy::LogUniform,
        },
    };
    let certificate = cert::certify(&family, args.samples, seed, strategy)?;
    let code = if certificate.holds { 0 } else { 1 };
    Ok((certificate_doc(&certificate), code))
}

fn status_val(s: complexregion::RegionStatus) -> Val {
    Val::S(s.name().to_string())
}

fn run(cli: &Cli) -> Result<(Doc, u8), Error> {
    match &cli.command {
        Cmd::Means { cmd } => run_means(cmd, cli.seed),
        Cmd::Bounds { cmd } => run_bounds(cmd, cli.seed),
        Cmd::Sums { cmd } => run_sums(cmd),
        Cmd::Zeta { cmd } => run_zeta(cmd),
        Cmd::Solve { cmd } => run_solve(cmd),
        Cmd::Young { cmd } => run_young(cmd),
        Cmd::Classic { cmd } => run_classic(cmd),
        Cmd::Complex { cmd } => run_complex(cmd),
        Cmd::Certify(args) => run_certify(args, cli.seed),
    }
}

fn run_means(cmd: &MeansCmd, seed: u64) -> Result<(Doc, u8), Error> {
    match cmd {
        MeansCmd::Eval { shape, x, y } => {
            let report = means::mean_eval(&shape.build()?, *x, *y)?;
            let branch = match report.branch {
                means::Branch::Generic => "generic",
                means::Branch::LimitCase => "limit_case",
            };
            Ok((
                Doc::default()
                    .field("value", Val::F(report.value))
                    .field("branch", Val::S(branch.to_string())),
                0,
            ))
        }
        MeansCmd::Conjugate { shape, x, y } => {
            let value = means::mean_conjugate(&shape.build()?, *x, *y)?;
            Ok((Doc::default().field("value", Val::F(value)), 0))
        }
        MeansCmd::Iterate { first, second, x, y, tol } => {
            let m = parse_compact_mean(first)?;
            let n = parse_compact_mean(second)?;
            let (value, iterations) = means::iterate_mean(&m, &n, *x, *y, *tol)?;
            Ok((
                Doc::default()
                    .field("value", Val::F(value))
                    .field("iterations", Val::U(iterations as u64)),
                0,
            ))
        }
        MeansCmd::RadoCheck { alpha, samples } => {
            let certificate = means::check_rado_bounds(*alpha, *samples, seed)?;
            let code = if certificate.holds { 0 } else { 1 };
            let (lo, hi) = means::rado_branch_exponents(*alpha)?;
            let doc = certificate_doc(&certificate)
                .field("lower_exponent", Val::F(lo))
                .field("upper_exponent", Val::F(hi));
            Ok((doc, code))
        }
        MeansCmd::Profile { shape, t } => {
            let value = means::mean_profile_h(&shape.build()?, *t)?;
            Ok((Doc::default().field("value", Val::F(value)), 0))
        }
    }
}

fn run_bounds(cmd: &BoundsCmd, seed: u64) -> Result<(Doc, u8), Error> {
    match cmd {
        BoundsCmd::List => {
            let rows: Vec<Vec<Val>> = logbounds::bound_registry()
                .iter()
                .map(|f| {
                    let (lo, hi) = match &f.support {
                        cert::Support::Scalar { domain, .. } => (domain.lo, domain.hi),
                        _ => (f64::NAN, f64::NAN),
                    };
                    vec![
                        Val::S(f.id.clone()),
                        Val::B(f.strict),
                        Val::F(lo),
                        Val::F(hi),
                        Val::S(f.formula.clone()),
                    ]
                })
                .collect();
            Ok((Doc::default().table(vec!["id", "strict", "lo", "hi", "formula"], rows), 0))
        }
        BoundsCmd::Chain { id, x } => {
            let rows: Vec<Vec<Val>> = logbounds::eval_chain(id, *x)?
                .into_iter()
                .map(|(label, value)| vec![Val::S(label.to_string()), Val::F(value)])
                .collect();
            Ok((Doc::default().table(vec!["term", "value"], rows), 0))
        }
        BoundsCmd::Eps { family, x } => {
            let value = logbounds::eps_eval(family, *x)?;
            Ok((Doc::default().field("value", Val::F(value)), 0))
        }
        BoundsCmd::Cf { n, x } => {
            let convergent = logbounds::cf_convergent(*n)?;
            fn coeffs<T: std::fmt::Display>(c: &[T]) -> String {
                c.iter().map(|b| b.to_string()).collect::<Vec<_>>().join(",")
            }
            let mut doc = Doc::default()
                .field("n", Val::U(*n as u64))
                .field("p_coeffs", Val::S(coeffs(&convergent.p_coeffs)))
                .field("q_coeffs", Val::S(coeffs(&convergent.q_coeffs)));
            if let Some(x) = x {
                let value = convergent.eval(*x);
                doc = doc
                    .field("value", Val::F(value))
                    .field("target", Val::F(x.ln_1p()))
                    .field("gap", Val::F(x.ln_1p() - value));
            }
            Ok((doc, 0))
        }
        BoundsCmd::Certify(args) => run_certify(args, seed),
        BoundsCmd::Sharpness { id, deltas, samples } => {
            let knob = logbounds::sharpness_knob(id)?;
            let grid = parse_f64_list(deltas)?;
            let rows = cert::sharpness_probe(knob, &grid, *samples, seed, Strategy::LogUniform)?;
            let table: Vec<Vec<Val>> = rows
                .iter()
                .map(|r| vec![Val::F(r.delta), Val::B(r.holds), Val::F(r.worst_gap)])
                .collect();
            Ok((Doc::default().table(vec!["delta", "holds", "worst_gap"], table), 0))
        }
    }
}

fn run_sums(cmd: &SumsCmd) -> Result<(Doc, u8), Error> {
    match cmd {
        SumsCmd::Partial { model, n } => {
            let m = SeriesModel::by_id(model)?;
            let sum = sums::partial_sum(&m, *n)?;
            Ok((Doc::default().field("sum", Val::F(sum)), 0))
        }
        SumsCmd::EulerConstant { model, n } => {
            let m = SeriesModel::by_id(model)?;
            let enclosure = sums::euler_constant(&m, *n)?;
            Ok((
                Doc::default()
                    .field("lower", Val::F(enclosure.lower))
                    .field("upper", Val::F(enclosure.upper))
                    .field("midpoint", Val::F(enclosure.midpoint()))
                    .field("width", Val::F(enclosure.width())),
                0,
            ))
        }
        SumsCmd::Sl { fixture, n } => {
            let f = HarmonicFixture::from_id(fixture)?;
            let v = f.check(*n)?;
            Ok((
                Doc::default()
                    .field("lower", Val::F(v.lower))
                    .field("upper", Val::F(v.upper))
                    .field("sum", Val::F(v.sum))
                    .field("holds", Val::B(v.holds))
                    .field("equality_lower", Val::B(v.equality_lower))
                    .field("equality_upper", Val::B(v.equality_upper)),
                0,
            ))
        }
        SumsCmd::Ak { k } => {
            let value = sums::expansion_coefficient_a(*k)?;
            Ok((Doc::default().field("value", Val::F(value)), 0))
        }
        SumsCmd::Limits { order, c } => {
            let c = match c {
                Some(c) => *c,
                None => sums::euler_constant(&SeriesModel::harmonic(), 1_000_000)?.midpoint(),
            };
            let value = sums::asymptotic_limit(*order, &[1_000, 10_000, 100_000], c)?;
            Ok((Doc::default().field("value", Val::F(value)).field("c", Val::F(c)), 0))
        }
        SumsCmd::ZetaCont { a, n } => {
            let value = sums::zeta_continuation(*a, *n)?;
            Ok((Doc::default().field("value", Val::F(value)), 0))
        }
    }
}

fn run_zeta(cmd: &ZetaCmd) -> Result<(Doc, u8), Error> {
    match cmd {
        ZetaCmd::Bernoulli { n } => {
            let numbers = zeta::bernoulli(*n)?;
            let rows: Vec<Vec<Val>> = numbers
                .iter()
                .enumerate()
                .map(|(k, b)| vec![Val::U(k as u64), Val::S(b.to_string())])
                .collect();
            Ok((Doc::default().table(vec!["n", "value"], rows), 0))
        }
        ZetaCmd::Even { s } => {
            let half = even_half(*s)?;
            Ok((Doc::default().field("value", Val::F(zeta::zeta_even(half)?)), 0))
        }
        ZetaCmd::Eta { s } => {
            let half = even_half(*s)?;
            Ok((Doc::default().field("value", Val::F(zeta::eta_even(half)?)), 0))
        }
        ZetaCmd::Direct { s, terms } => {
            let est = zeta::zeta_direct(*s, *terms)?;
            Ok((
                Doc::default()
                    .field("value", Val::F(est.value))
                    .field("error_bound", Val::F(est.error_bound)),
                0,
            ))
        }
    }
}

fn even_half(s: usize) -> Result<usize, Error> {
    if s == 0 || s % 2 != 0 {
        return Err(Error::Parameter(format!("closed form needs even s >= 2, got {s}")));
    }
    Ok(s / 2)
}

fn run_solve(cmd: &SolveCmd) -> Result<(Doc, u8), Error> {
    match cmd {
        SolveCmd::Bisect { function, lo, hi, tol } => {
            let g = solve_function(function)?;
            let trace = solve::bisect(|x| g(x) - x, *lo, *hi, *tol)?;
            Ok((trace_doc(&trace), 0))
        }
        SolveCmd::Newton { function, x0, tol, maxit } => {
            let g = solve_function(function)?;
            let f = move |x: f64| g(x) - x;
            let df = |x: f64| {
                let h = 1e-6 * x.abs().max(1.0);
                (f(x + h) - f(x - h)) / (2.0 * h)
            };
            let trace = solve::newton(&f, df, *x0, *tol, *maxit)?;
            Ok((trace_doc(&trace), 0))
        }
        SolveCmd::FixedPoint { function, x0, lambda, tol, maxit } => {
            let g = solve_function(function)?;
            fixed_point_doc(solve::fixed_point(g, *x0, *lambda, *tol, *maxit), *lambda)
        }
        SolveCmd::Lambda { function, x0, at, tol, maxit } => {
            let g = solve_function(function)?;
            let lambda = solve::optimal_lambda(&g, at.unwrap_or(*x0))?;
            fixed_point_doc(solve::fixed_point(g, *x0, lambda, *tol, *maxit), lambda)
        }
    }
}

/// Failure to converge is a reportable outcome for fixed-point runs, not
/// a usage error; everything else propagates.
fn fixed_point_doc(
    result: Result<solve::SolveTrace, Error>,
    lambda: f64,
) -> Result<(Doc, u8), Error> {
    let failed = |diverged: bool, last: f64, iterations: usize, residual: f64| {
        Ok((
            Doc::default()
                .field("diverged", Val::B(diverged))
                .field("last_iterate", Val::F(last))
                .field("iterations", Val::U(iterations as u64))
                .field("residual", Val::F(residual))
                .field("converged", Val::B(false))
                .field("lambda", Val::F(lambda)),
            1,
        ))
    };
    match result {
        Ok(trace) => Ok((trace_doc(&trace).field("lambda", Val::F(lambda)), 0)),
        Err(Error::Divergence { value, iterations }) => {
            failed(true, value, iterations, f64::INFINITY)
        }
        Err(Error::NoConvergence { iterations, residual }) => {
            failed(false, f64::NAN, iterations, residual)
        }
        Err(e) => Err(e),
    }
}

fn run_young(cmd: &YoungCmd) -> Result<(Doc, u8), Error> {
    match cmd {
        YoungCmd::Compare { x, y, p } => {
            let v = classic::young_compare(*x, *y, *p)?;
            let better = match v.better {
                classic::Better::PQ => "pq",
                classic::Better::QP => "qp",
                classic::Better::Tie => "tie",
            };
            let (case, critical) = match v.case {
                classic::YoungCase::BothAtLeastOne => ("both_at_least_one", f64::NAN),
                classic::YoungCase::BothAtMostOne => ("both_at_most_one", f64::NAN),
                classic::YoungCase::Straddle(y_cr) => ("straddle", y_cr),
            };
            let mut doc = Doc::default()
                .field("product", Val::F(v.product))
                .field("rhs_pq", Val::F(v.rhs_pq))
                .field("rhs_qp", Val::F(v.rhs_qp))
                .field("better", Val::S(better.to_string()))
                .field("case", Val::S(case.to_string()));
            if critical.is_finite() {
                doc = doc.field("y_critical", Val::F(critical));
            }
            Ok((doc, 0))
        }
        YoungCmd::Critical { x, p } => {
            let value = classic::young_critical(*x, *p)?;
            Ok((Doc::default().field("value", Val::F(value)), 0))
        }
    }
}

fn vector_doc(v: classic::VectorVerdict) -> Doc {
    Doc::default()
        .field("lhs", Val::F(v.lhs))
        .field("rhs", Val::F(v.rhs))
        .field("holds", Val::B(v.holds))
        .field("equality", Val::B(v.equality))
}

fn run_classic(cmd: &ClassicCmd) -> Result<(Doc, u8), Error> {
    match cmd {
        ClassicCmd::Cb { u, v } => {
            let verdict = classic::cauchy_bunyakovsky(&parse_f64_list(u)?, &parse_f64_list(v)?)?;
            Ok((vector_doc(verdict), 0))
        }
        ClassicCmd::Minkowski { u, v } => {
            let verdict = classic::minkowski(&parse_f64_list(u)?, &parse_f64_list(v)?)?;
            Ok((vector_doc(verdict), 0))
        }
        ClassicCmd::Holder { u, v, p } => {
            let verdict = classic::holder(&parse_f64_list(u)?, &parse_f64_list(v)?, *p)?;
            Ok((vector_doc(verdict), 0))
        }
    }
}

fn run_complex(cmd: &ComplexCmd) -> Result<(Doc, u8), Error> {
    match cmd {
        ComplexCmd::Classify { re, im, variant } => {
            let p = complexregion::ComplexPoint::new(*re, *im);
            let verdict = match variant.as_str() {
                "amgm" => complexregion::amgm_classify(p)?,
                "quartic" => complexregion::quartic_classify(p)?,
                "modulus" => complexregion::amgm_modulus_classify(p)?,
                other => return Err(Error::UnknownId(format!("region variant {other}"))),
            };
            Ok((
                Doc::default()
                    .field("status", status_val(verdict.status))
                    .field("residual", Val::F(verdict.residual)),
                0,
            ))
        }
        ComplexCmd::Curve { points } => {
            if *points == 0 {
                return Err(Error::Parameter("need at least one curve point".into()));
            }
            let mut rows = Vec::with_capacity(points * 2);
            for k in 0..*points {
                let phi = 2.0 * std::f64::consts::PI * k as f64 / *points as f64;
                let (r_in, r_out) = complexregion::polar_curve(phi)?;
                for (branch, r) in [("inner", r_in), ("outer", r_out)] {
                    let (re, im) = (r * phi.cos(), r * phi.sin());
                    let residual =
                        complexregion::quartic_residual(complexregion::ComplexPoint::new(re, im))?;
                    rows.push(vec![
                        Val::F(phi),
                        Val::S(branch.to_string()),
                        Val::F(re),
                        Val::F(im),
                        Val::F(residual),
                    ]);
                }
            }
            Ok((Doc::default().table(vec!["phi", "branch", "re", "im", "quartic_residual"], rows), 0))
        }
        ComplexCmd::Axes => {
            let ax = complexregion::axis_intervals();
            let mut rows = Vec::new();
            for (axis, list) in [("real", &ax.real), ("imag", &ax.imag)] {
                for (lo, hi) in list {
                    rows.push(vec![Val::S(axis.to_string()), Val::F(*lo), Val::F(*hi)]);
                }
            }
            Ok((Doc::default().table(vec!["axis", "lo", "hi"], rows), 0))
        }
        ComplexCmd::LogScan { grid, rays } => {
            let spec = grid.build()?;
            let (points, crossings) = complexregion::log_region_scan(&spec, *rays)?;
            let mut inside = 0u64;
            let mut boundary = 0u64;
            let mut outside = 0u64;
            for p in &points {
                match p.status {
                    complexregion::RegionStatus::Inside => inside += 1,
                    complexregion::RegionStatus::Boundary => boundary += 1,
                    complexregion::RegionStatus::Outside => outside += 1,
                }
            }
            let rows: Vec<Vec<Val>> = points
                .iter()
                .map(|p| {
                    vec![Val::F(p.re), Val::F(p.im), Val::F(p.residual), status_val(p.status)]
                })
                .collect();
            let mut doc = Doc::default()
                .field("points", Val::U(points.len() as u64))
                .field("inside", Val::U(inside))
                .field("boundary", Val::U(boundary))
                .field("outside", Val::U(outside));
            for c in &crossings {
                // crossing radii land in the scalar summary; the table is
                // reserved for the point cloud
                doc.fields.push((
                    "ray_crossing",
                    Val::S(match c.radius {
                        Some(r) => format!("theta={} r={r}", c.theta),
                        None => format!("theta={} none", c.theta),
                    }),
                ));
            }
            Ok((doc.table(vec!["re", "im", "residual", "status"], rows), 0))
        }
        ComplexCmd::EpsSup { grid } => {
            let spec = grid.build()?;
            let (sup, at) = complexregion::eps_complex_sup(&spec)?;
            Ok((
                Doc::default()
                    .field("sup", Val::F(sup))
                    .field("at_re", Val::F(at.re))
                    .field("at_im", Val::F(at.im)),
                0,
            ))
        }
    }
}

fn init_threads() {
    if let Ok(raw) = std::env::var("INEQLAB_THREADS") {
        if let Ok(n) = raw.parse::<usize>() {
            if n >= 1 {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = u8::try_from(e.exit_code()).unwrap_or(2);
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    init_threads();
    match run(&cli) {
        Ok((doc, code)) => {
            let rendered = doc.render(cli.output);
            if let Some(path) = &cli.out {
                if let Err(e) = std::fs::write(path, rendered.as_bytes()) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            } else {
                let mut stdout = std::io::stdout().lock();
                if stdout.write_all(rendered.as_bytes()).is_err() {
                    return ExitCode::from(2);
                }
            }
            ExitCode::from(code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
