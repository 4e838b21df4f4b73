//! `rp` — command-line front end for the holomorphic-dynamics toolkit.
//!
//! Inputs are vector fields `"A, B"` (meaning `A ∂/∂x + B ∂/∂y`) or maps
//! `"f1, f2"` tangent to the identity, given inline via `--field`/`--map`
//! or in a file via `--input` (one spec per file, `field:`/`map:` prefix,
//! `#` comments). Exit codes: 0 success, 1 failed `verify` check, 2 parse
//! error, 3 violated precondition, 4 uncertified result.

use clap::{Args, Parser, Subcommand, ValueEnum};
use rpcurves::blowup::{blowup_map, pullback_field, saturate, tangentiality, BlowupChart};
use rpcurves::error::{Error, Result};
use rpcurves::intersection::{milnor_number, milnor_of_map};
use rpcurves::parse::{parse_field, parse_input_file, parse_map, ParsedInput};
use rpcurves::report::{rp_curve_bound, rp_report, verify_identities};
use rpcurves::separatrix::{restricted_exponent, separatrices};
use rpcurves::vector_field::{exp_flow, log_map, TangentMap, VectorField};
use rpcurves::{DEFAULT_DEPTH, DEFAULT_ORDER};
use serde_json::{json, Value};
use std::path::PathBuf;

#[derive(Parser)]
#[command(
    name = "rp",
    version,
    about = "Exact-arithmetic toolkit for maps tangent to the identity and singular vector fields in two complex variables"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Time-one map exp(X) of a vector field
    Exp(CommonArgs),
    /// Formal logarithm of a map tangent to the identity
    Log(CommonArgs),
    /// Component orders and tangency order of the time-one map
    Orders(CommonArgs),
    /// Local multiplicity (Milnor number) at the origin
    Milnor(CommonArgs),
    /// Separatrices of a vector field with Puiseux parametrizations
    Separatrices(CommonArgs),
    /// Petal counts of the restricted dynamics along each separatrix
    Petals(CommonArgs),
    /// Lift of the map to a blow-up chart, with tangentiality data
    Blowup(CommonArgs),
    /// Pull-back of the field to a blow-up chart, raw and saturated
    Pullback(CommonArgs),
    /// Dicriticality of the singularity (field and map tests)
    Dicritical(CommonArgs),
    /// Upper bound (mu+1)(eta^2-eta) on robust parabolic curves
    Bound(CommonArgs),
    /// Full analysis report
    Report(CommonArgs),
    /// Check the structural identities on the given input
    Verify(CommonArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ChartArg {
    U1,
    U2,
}

impl From<ChartArg> for BlowupChart {
    fn from(c: ChartArg) -> Self {
        match c {
            ChartArg::U1 => BlowupChart::U1,
            ChartArg::U2 => BlowupChart::U2,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Text,
    Json,
}

#[derive(Args)]
struct CommonArgs {
    /// Vector field "A, B" meaning A d/dx + B d/dy
    #[arg(long, conflicts_with_all = ["map", "input"])]
    field: Option<String>,
    /// Map "f1, f2" tangent to the identity
    #[arg(long, conflicts_with = "input")]
    map: Option<String>,
    /// Input file containing one `field: ...` or `map: ...` spec
    #[arg(long)]
    input: Option<PathBuf>,
    /// Series truncation order (total degree)
    #[arg(long, default_value_t = DEFAULT_ORDER)]
    order: usize,
    /// Branch-expansion depth for separatrices
    #[arg(long, default_value_t = DEFAULT_DEPTH)]
    depth: usize,
    /// Blow-up chart
    #[arg(long, value_enum, default_value_t = ChartArg::U1)]
    chart: ChartArg,
    /// Output format
    #[arg(long, value_enum, default_value_t = FormatArg::Text)]
    format: FormatArg,
    /// Write the output here instead of stdout
    #[arg(long)]
    output: Option<PathBuf>,
}

impl CommonArgs {
    fn load(&self) -> Result<ParsedInput> {
        if let Some(text) = &self.field {
            return Ok(ParsedInput::Field(parse_field(text, self.order)?));
        }
        if let Some(text) = &self.map {
            return Ok(ParsedInput::Map(parse_map(text, self.order)?));
        }
        if let Some(path) = &self.input {
            let text = std::fs::read_to_string(path).map_err(|e| {
                Error::domain("input", format!("cannot read {}: {e}", path.display()))
            })?;
            return Ok(parse_input_file(&text, self.order)?);
        }
        Err(Error::domain(
            "input",
            "provide an input with --field, --map, or --input",
        ))
    }

    /// The vector field view of the input (logarithm of a map).
    fn as_field(&self) -> Result<VectorField> {
        match self.load()? {
            ParsedInput::Field(x) => Ok(x),
            ParsedInput::Map(f) => log_map(&f),
        }
    }

    /// The map view of the input (exponential of a field).
    fn as_map(&self) -> Result<TangentMap> {
        match self.load()? {
            ParsedInput::Field(x) => exp_flow(&x),
            ParsedInput::Map(f) => Ok(f),
        }
    }

    fn emit(&self, text: String, json: Value) -> Result<i32> {
        let rendered = match self.format {
            FormatArg::Text => text,
            FormatArg::Json => {
                let mut s = serde_json::to_string_pretty(&json).expect("serializable");
                s.push('\n');
                s
            }
        };
        match &self.output {
            Some(path) => std::fs::write(path, rendered).map_err(|e| {
                Error::domain("output", format!("cannot write {}: {e}", path.display()))
            })?,
            None => print!("{rendered}"),
        }
        Ok(0)
    }
}

fn run(cmd: &Cmd) -> Result<i32> {
    match cmd {
        Cmd::Exp(args) => {
            let x = match args.load()? {
                ParsedInput::Field(x) => x,
                ParsedInput::Map(_) => {
                    return Err(Error::domain("exp", "exp expects a vector field input"));
                }
            };
            let f = exp_flow(&x)?;
            args.emit(
                format!("exp(X) = {}\n", f.render_with("x", "y")),
                json!({
                    "f1": f.f1().render_with("x", "y"),
                    "f2": f.f2().render_with("x", "y"),
                    "truncation_order": f.trunc(),
                }),
            )
        }
        Cmd::Log(args) => {
            let f = match args.load()? {
                ParsedInput::Map(f) => f,
                ParsedInput::Field(_) => {
                    return Err(Error::domain(
                        "log",
                        "log expects a map input (a field already is a logarithm)",
                    ));
                }
            };
            let x = log_map(&f)?;
            args.emit(
                format!("log(f) = {}\n", x.render_with("x", "y")),
                json!({
                    "a": x.a().render_with("x", "y"),
                    "b": x.b().render_with("x", "y"),
                    "truncation_order": x.trunc(),
                }),
            )
        }
        Cmd::Orders(args) => {
            let f = args.as_map()?;
            let orders = f.orders()?;
            args.emit(format!("orders: {}\n", orders.to_text()), orders.to_json())
        }
        Cmd::Milnor(args) => {
            let (mu, of) = match args.load()? {
                ParsedInput::Field(x) => (milnor_number(&x)?, "the field's components"),
                ParsedInput::Map(f) => (milnor_of_map(&f)?, "the map's displacement"),
            };
            args.emit(
                format!("local multiplicity of {of}: {mu}\n"),
                json!({ "milnor": mu.to_string() }),
            )
        }
        Cmd::Separatrices(args) => {
            let x = args.as_field()?;
            let set = separatrices(&x, args.depth)?;
            args.emit(set.to_text(), set.to_json())
        }
        Cmd::Petals(args) => {
            let x = args.as_field()?;
            let set = separatrices(&x, args.depth)?;
            let mut text = String::new();
            let mut reports = Vec::new();
            let mut skipped = Vec::new();
            for br in set.isolated.iter() {
                match restricted_exponent(&x, br) {
                    Ok(rep) => {
                        text.push_str(&rep.to_line());
                        text.push('\n');
                        reports.push(rep.to_json());
                    }
                    Err(e) => {
                        text.push_str(&format!("{}: skipped ({e})\n", br.describe()));
                        skipped.push(json!({
                            "branch": br.describe(),
                            "reason": e.to_string(),
                        }));
                    }
                }
            }
            for br in set.families.iter() {
                text.push_str(&format!(
                    "{}: family stem; petal analysis needs a member\n",
                    br.describe()
                ));
            }
            args.emit(
                text,
                json!({
                    "petals": reports,
                    "skipped": skipped,
                    "families": set.families.iter().map(|b| b.describe()).collect::<Vec<_>>(),
                }),
            )
        }
        Cmd::Blowup(args) => {
            let f = args.as_map()?;
            let chart: BlowupChart = args.chart.into();
            let lifted = blowup_map(&f, chart)?;
            let tg = tangentiality(&lifted)?;
            args.emit(
                format!(
                    "lift in {}: {}\ntangentiality: T = {}, tangential: {}, witness on divisor: {}\n",
                    match chart {
                        BlowupChart::U1 => "u1",
                        BlowupChart::U2 => "u2",
                    },
                    lifted.render(),
                    tg.t,
                    if tg.tangential { "yes" } else { "no" },
                    tg.witness_on_divisor
                        .render_with(if chart == BlowupChart::U1 { "v" } else { "u" }),
                ),
                json!({
                    "chart": match chart { BlowupChart::U1 => "u1", BlowupChart::U2 => "u2" },
                    "c1": lifted.c1().render_with("u", "v"),
                    "c2": lifted.c2().render_with("u", "v"),
                    "t": tg.t,
                    "tangential": tg.tangential,
                    "witness_on_divisor": tg.witness_on_divisor
                        .render_with(if chart == BlowupChart::U1 { "v" } else { "u" }),
                }),
            )
        }
        Cmd::Pullback(args) => {
            let x = match args.load()? {
                ParsedInput::Field(x) => x,
                ParsedInput::Map(_) => {
                    return Err(Error::domain(
                        "pullback",
                        "pullback expects a vector field input",
                    ));
                }
            };
            let chart: BlowupChart = args.chart.into();
            let pulled = pullback_field(&x, chart)?;
            let divisor = chart.divisor(pulled.trunc());
            let (sat, m) = saturate(&pulled, &divisor)?;
            args.emit(
                format!(
                    "pull-back in {}: {}\nsaturated (divided by {}^{}): {}\n",
                    match chart {
                        BlowupChart::U1 => "u1",
                        BlowupChart::U2 => "u2",
                    },
                    pulled.render_with("u", "v"),
                    chart.divisor_name(),
                    m,
                    sat.render_with("u", "v"),
                ),
                json!({
                    "chart": match chart { BlowupChart::U1 => "u1", BlowupChart::U2 => "u2" },
                    "a": pulled.a().render_with("u", "v"),
                    "b": pulled.b().render_with("u", "v"),
                    "saturation_multiplicity": m,
                    "saturated_a": sat.a().render_with("u", "v"),
                    "saturated_b": sat.b().render_with("u", "v"),
                }),
            )
        }
        Cmd::Dicritical(args) => {
            let (x, f) = match args.load()? {
                ParsedInput::Field(x) => {
                    let f = exp_flow(&x)?;
                    (x, f)
                }
                ParsedInput::Map(f) => (log_map(&f)?, f),
            };
            let df = rpcurves::blowup::dicritical_field(&x)?;
            let dm = rpcurves::blowup::dicritical_map(&f)?;
            args.emit(
                format!(
                    "dicritical: field {}, map {}{}\n",
                    if df { "yes" } else { "no" },
                    if dm { "yes" } else { "no" },
                    if df == dm { " (verdicts agree)" } else { " (VERDICTS DISAGREE)" },
                ),
                json!({ "field": df, "map": dm, "agree": df == dm }),
            )
        }
        Cmd::Bound(args) => {
            let f = args.as_map()?;
            let bound = rp_curve_bound(&f)?;
            args.emit(
                format!("robust parabolic curves: {bound}\n"),
                json!({ "bound": bound.to_json() }),
            )
        }
        Cmd::Report(args) => {
            let input = args.load()?;
            let rep = rp_report(&input, args.depth)?;
            args.emit(rep.to_text(), rep.to_json())
        }
        Cmd::Verify(args) => {
            let input = args.load()?;
            let rep = verify_identities(&input)?;
            let code = if rep.all_passed() { 0 } else { 1 };
            args.emit(rep.to_text(), rep.to_json())?;
            Ok(code)
        }
    }
}

fn main() {
    let cli = Cli::parse();
    let code = match run(&cli.cmd) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    };
    std::process::exit(code);
}
