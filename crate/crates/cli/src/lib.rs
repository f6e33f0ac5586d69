//! The `latmin` command line.
//!
//! [`run`] is the whole program minus process plumbing: it takes the
//! arguments after the binary name and returns the exit code together with
//! the bytes meant for stdout. Every report is a single line of JSON with
//! sorted keys.

use std::fs;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use latmin_core::gon::{lattice_width, successive_minima};
use latmin_core::math::{format_rat, parse_rat, Rat};
use latmin_core::polytope::LatticeMode;
use latmin_core::postulation::{
    box_count, box_volume, box_volume_closed_form, box_volume_triangulated, check_vol_bound, flag_h0, BoxSpec, FlagSpec,
};
use latmin_core::report::int_vec_json;
use latmin_core::suite::{run_suite, SuiteConfig, SuiteKind};
use latmin_core::toric::{eps_at_invariant_point, eps_bracket_details, toric_volume, MomentPolytope};
use latmin_core::{Polytope, SymmetricBody};
use num_bigint::BigInt;
use serde_json::{json, Value};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error(transparent)]
    Core(#[from] latmin_core::Error),
}

impl CliError {
    fn kind(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Io { .. } => "io",
            CliError::Core(e) => e.kind(),
        }
    }

    fn to_json(&self) -> Value {
        json!({ "error": { "kind": self.kind(), "message": self.to_string() } })
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Debug, Parser)]
#[command(name = "latmin", version, about = "Exact successive minima, lattice widths and toric Seshadri minima")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Input {
    /// Read the input JSON from a file.
    #[arg(long = "in", value_name = "FILE", conflicts_with = "inline")]
    input: Option<PathBuf>,
    /// Take the input JSON from the command line.
    #[arg(long, value_name = "JSON")]
    inline: Option<String>,
    /// Write the report to a file instead of stdout.
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Lattice width and a functional attaining it.
    Width(Input),
    /// Successive minima of a 0-symmetric body.
    Minima {
        #[command(flatten)]
        input: Input,
        /// `body` (input is symmetric), `difference` (use P − P) or `dual` (polar of the body).
        #[arg(long, default_value = "body")]
        mode: String,
    },
    /// Polar of a 0-symmetric body.
    Polar(Input),
    /// Lattice-normalized volume, and `d!` times it.
    Volume(Input),
    /// Lattice points of a polytope.
    Points {
        #[command(flatten)]
        input: Input,
        /// `all` or `interior`.
        #[arg(long, default_value = "all")]
        mode: String,
    },
    /// Exact Seshadri minima at the torus-fixed point of a vertex.
    #[command(name = "toric-eps")]
    ToricEps {
        #[command(flatten)]
        input: Input,
        /// Vertex coordinates, comma separated.
        #[arg(long, value_name = "a,b,...", allow_hyphen_values = true)]
        vertex: String,
    },
    /// Brackets for the Seshadri minima at a very general point.
    #[command(name = "toric-bracket")]
    ToricBracket(Input),
    /// Box counts and volumes (`{"t": [...]}`) or flag dimensions (`{"d","p","q"}`).
    Postulation(Input),
    /// Run a seeded verification suite.
    Verify {
        #[arg(long)]
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value_t = 2)]
        dim: usize,
        #[arg(long, default_value_t = 4)]
        bound: i64,
        /// `summary`, or `full` to include every report.
        #[arg(long, default_value = "summary")]
        mode: String,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
}

/// Runs one command. `args` excludes the program name.
pub fn run<I, S>(args: I) -> (i32, Vec<u8>)
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let argv: Vec<String> = std::iter::once("latmin".to_string()).chain(args.into_iter().map(Into::into)).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                return (0, e.to_string().into_bytes());
            }
            let message = e.to_string().lines().next().unwrap_or("invalid arguments").to_string();
            return (2, line(&CliError::Usage(message).to_json()));
        }
    };
    match dispatch(cli.command) {
        Ok((code, value, out)) => {
            let bytes = line(&value);
            match out {
                Some(path) => match fs::write(&path, &bytes) {
                    Ok(()) => (code, Vec::new()),
                    Err(e) => {
                        let err = CliError::Io { path: path.display().to_string(), message: e.to_string() };
                        (2, line(&err.to_json()))
                    }
                },
                None => (code, bytes),
            }
        }
        Err(e) => (2, line(&e.to_json())),
    }
}

fn line(v: &Value) -> Vec<u8> {
    let mut s = v.to_string();
    s.push('\n');
    s.into_bytes()
}

impl Input {
    fn json(&self) -> CliResult<Value> {
        let text = match (&self.input, &self.inline) {
            (Some(path), _) => fs::read_to_string(path)
                .map_err(|e| CliError::Io { path: path.display().to_string(), message: e.to_string() })?,
            (None, Some(s)) => s.clone(),
            (None, None) => return Err(CliError::Usage("one of --in or --inline is required".into())),
        };
        serde_json::from_str(&text).map_err(|e| latmin_core::Error::Parse(e.to_string()).into())
    }

    fn polytope(&self) -> CliResult<Polytope> {
        polytope_from_json(&self.json()?)
    }
}

/// Numbers become their decimal text so integer vertices need no quotes.
fn rat_from_json(v: &Value) -> CliResult<Rat> {
    match v {
        Value::String(s) => Ok(parse_rat(s)?),
        Value::Number(n) if n.is_i64() || n.is_u64() => Ok(parse_rat(&n.to_string())?),
        other => Err(latmin_core::Error::Parse(format!("expected a rational, got {other}")).into()),
    }
}

fn rats_from_json(v: &Value) -> CliResult<Vec<Rat>> {
    v.as_array()
        .ok_or_else(|| latmin_core::Error::Parse(format!("expected an array, got {v}")))?
        .iter()
        .map(rat_from_json)
        .collect()
}

fn polytope_from_json(v: &Value) -> CliResult<Polytope> {
    let dim = v
        .get("dim")
        .and_then(Value::as_u64)
        .ok_or_else(|| latmin_core::Error::Parse("missing \"dim\"".into()))? as usize;
    let vertices = v
        .get("vertices")
        .and_then(Value::as_array)
        .ok_or_else(|| latmin_core::Error::Parse("missing \"vertices\"".into()))?
        .iter()
        .map(rats_from_json)
        .collect::<CliResult<Vec<_>>>()?;
    Ok(Polytope::convex_hull(&vertices, dim)?)
}

fn parse_vertex(s: &str) -> CliResult<Vec<BigInt>> {
    s.split(',')
        .map(|part| {
            part.trim()
                .parse::<BigInt>()
                .map_err(|_| CliError::Usage(format!("--vertex expects comma separated integers, got '{s}'")))
        })
        .collect()
}

fn minima_json(lambdas: &[Rat], witnesses: &[Vec<BigInt>]) -> Value {
    json!({
        "lambdas": lambdas.iter().map(format_rat).collect::<Vec<_>>(),
        "witnesses": witnesses.iter().map(|w| int_vec_json(w)).collect::<Vec<_>>(),
    })
}

fn rats_json(xs: &[Rat]) -> Value {
    Value::Array(xs.iter().map(|x| Value::String(format_rat(x))).collect())
}

type Dispatched = (i32, Value, Option<PathBuf>);

fn dispatch(command: Command) -> CliResult<Dispatched> {
    match command {
        Command::Width(input) => {
            let w = lattice_width(&input.polytope()?)?;
            Ok((0, json!({ "width": format_rat(&w.width), "witness": int_vec_json(&w.witness) }), input.out))
        }
        Command::Minima { input, mode } => {
            let p = input.polytope()?;
            let k = match mode.as_str() {
                "body" => SymmetricBody::new(p)?,
                "difference" => p.difference_body()?,
                "dual" => SymmetricBody::new(p)?.polar(),
                other => return Err(CliError::Usage(format!("unknown minima mode '{other}'"))),
            };
            let sm = successive_minima(&k);
            Ok((0, minima_json(&sm.lambdas, &sm.witnesses), input.out))
        }
        Command::Polar(input) => {
            let k = SymmetricBody::new(input.polytope()?)?;
            let polar = k.polar();
            Ok((0, serde_json::to_value(polar.body().to_json()).expect("plain data"), input.out))
        }
        Command::Volume(input) => {
            let p = input.polytope()?;
            let vol = p.volume();
            let d: BigInt = (1..=p.dim()).map(BigInt::from).product();
            let scaled = Rat::from_integer(d) * &vol;
            Ok((0, json!({ "volume": format_rat(&vol), "toric_volume": format_rat(&scaled) }), input.out))
        }
        Command::Points { input, mode } => {
            let m = match mode.as_str() {
                "all" => LatticeMode::All,
                "interior" => LatticeMode::InteriorOnly,
                other => return Err(CliError::Usage(format!("unknown points mode '{other}'"))),
            };
            let pts = input.polytope()?.lattice_points(m)?;
            let list: Vec<Value> = pts.iter().map(|p| int_vec_json(p)).collect();
            Ok((0, json!({ "count": pts.len(), "points": list }), input.out))
        }
        Command::ToricEps { input, vertex } => {
            let mp = MomentPolytope::new(input.polytope()?)?;
            let u = parse_vertex(&vertex)?;
            let profile = eps_at_invariant_point(&mp, &u)?;
            Ok((0, profile.to_json(), input.out))
        }
        Command::ToricBracket(input) => {
            let mp = MomentPolytope::new(input.polytope()?)?;
            let data = eps_bracket_details(&mp)?;
            let mut v = data.profile.to_json();
            let obj = v.as_object_mut().expect("profile is an object");
            obj.insert("lambda".into(), rats_json(&data.lambda));
            obj.insert("lambda_dual".into(), rats_json(&data.lambda_dual));
            obj.insert("width".into(), json!(format_rat(&data.width)));
            obj.insert("volume".into(), json!(format_rat(&toric_volume(&mp))));
            Ok((0, v, input.out))
        }
        Command::Postulation(input) => Ok((0, postulation(&input.json()?)?, input.out)),
        Command::Verify { suite, seed, count, dim, bound, mode, out } => {
            let keep = match mode.as_str() {
                "summary" => false,
                "full" => true,
                other => return Err(CliError::Usage(format!("unknown verify mode '{other}'"))),
            };
            let kind: SuiteKind = suite.parse()?;
            let cfg = SuiteConfig::new(kind, seed, count, dim, bound)?;
            let summary = run_suite(&cfg, keep)?;
            let code = if summary.violated == 0 { 0 } else { 1 };
            Ok((code, summary.to_json(), out))
        }
    }
}

fn postulation(v: &Value) -> CliResult<Value> {
    if let Some(t) = v.get("t") {
        let b = BoxSpec::new(rats_from_json(t)?)?;
        let report = check_vol_bound(&b);
        let closed = box_volume_closed_form(&b).map(|r| format_rat(&r));
        return Ok(json!({
            "t": rats_json(b.t()),
            "count": box_count(&b).to_string(),
            "volume": format_rat(&box_volume(&b)),
            "volume_triangulated": format_rat(&box_volume_triangulated(&b)),
            "volume_closed_form": closed,
            "volume_bound": report.to_json(),
        }));
    }
    let field = |name: &str| v.get(name).ok_or_else(|| latmin_core::Error::Parse(format!("missing \"{name}\"")));
    let d = field("d")?.as_u64().ok_or_else(|| latmin_core::Error::Parse("\"d\" must be a nonnegative integer".into()))?;
    let q = field("q")?.as_i64().ok_or_else(|| latmin_core::Error::Parse("\"q\" must be an integer".into()))?;
    if q < 0 {
        return Err(latmin_core::Error::NegativeParameter(format!("degree {q} is negative")).into());
    }
    let p = field("p")?
        .as_array()
        .ok_or_else(|| latmin_core::Error::Parse("\"p\" must be an array".into()))?
        .iter()
        .map(|x| {
            x.as_u64().ok_or_else(|| CliError::from(latmin_core::Error::NegativeParameter(format!("multiplicity {x}"))))
        })
        .collect::<CliResult<Vec<u64>>>()?;
    let spec = FlagSpec::new(d as usize, p.clone(), q)?;
    Ok(json!({ "d": d, "p": p, "q": q, "h0": flag_h0(&spec).to_string() }))
}
