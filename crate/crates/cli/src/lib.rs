//! The `genperm` command line: JSON in, JSON out, with optional brute-force
//! cross-checks.
//!
//! Exit codes: 0 on success, 1 on invalid input, 2 when a computation
//! disagrees with its independent check.

use std::io::{Read, Write};
use std::path::Path;

use clap::{ArgGroup, Args, Parser, Subcommand};
use genperm::functionals::{
    combine_symmetric, compatible_direction, decompose_symmetric, positivity_certificate, ray_indices,
    MAX_SYMMETRIC_D,
};
use genperm::genperm::{
    count_lattice_points, enumerate_lattice_points, equivalence_check, validate_y, vertices, Validation,
};
use genperm::json::{
    matroid_from_value, point_to_json, rational_to_json, rep_from_value, rep_to_json,
    set_function_from_value, set_function_to_json, subset_to_json, symmetric_from_value, witness_to_json,
};
use genperm::lattice::{count_lattice_points_formula, e1, ehrhart_polynomial};
use genperm::matroid::{
    beta, beta_inequality, beta_inequality_indep, beta_table, independent_polytope_y, matroid_polytope_y,
    matroid_polytope_z, signed_beta, Matroid,
};
use genperm::setfun::{mobius_transform, zeta_transform, MAX_D};
use genperm::solidangle::{a1_genperm_d4, tetra_linear_coeff};
use genperm::{rat, Error, GenPermRep, SubsetMask};
use num_traits::{Signed, ToPrimitive};
use serde_json::{json, Value};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_MISMATCH: i32 = 2;

/// Tolerance reported with the floating-point solid-angle output.
pub const SOLID_ANGLE_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Parser)]
#[command(
    name = "genperm",
    version,
    about = "Exact computations on generalized permutahedra"
)]
struct Cli {
    /// Worker threads for parallel enumeration (default: all cores).
    #[arg(long, global = true, value_name = "N")]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check that a y-vector defines a generalized permutahedron.
    Validate { input: String },
    /// Zeta (y to z) or Möbius (z to y) transform of a set function.
    Transform(TransformArgs),
    /// Vertices of the polytope.
    Vertices { input: String },
    /// Lattice points, one JSON array per line.
    Points { input: String },
    /// Number of lattice points by the closed formula.
    Count {
        input: String,
        /// Also count by enumeration and compare.
        #[arg(long)]
        oracle: bool,
    },
    /// Ehrhart polynomial by interpolating enumerated counts.
    Ehrhart { input: String },
    /// Linear Ehrhart coefficient by the harmonic-number formula.
    E1 { input: String },
    /// Ray functionals and symmetric functionals on the space of y-vectors.
    #[command(subcommand)]
    Functional(FunctionalCommand),
    /// Matroid polytopes and beta invariants.
    #[command(subcommand)]
    Matroid(MatroidCommand),
    /// Solid-angle coefficients in dimension 4.
    #[command(subcommand, name = "solid-angle")]
    SolidAngle(SolidAngleCommand),
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("direction").required(true).args(["to_z", "to_y"])))]
struct TransformArgs {
    /// Input is a y-vector; print z.
    #[arg(long)]
    to_z: bool,
    /// Input is a z-vector; print y.
    #[arg(long)]
    to_y: bool,
    input: String,
}

#[derive(Debug, Subcommand)]
enum FunctionalCommand {
    /// Ray functionals v_E^T with compatible directions.
    Rays { d: usize },
    /// Coordinates of a symmetric functional in the f_k basis.
    Decompose { input: String },
    /// Nonnegativity certificate for the Ehrhart linear coefficient.
    Certificate { d: usize },
}

#[derive(Debug, Subcommand)]
enum MatroidCommand {
    /// Matroid (or independent-set) polytope as a signed sum of simplices.
    Decompose {
        input: String,
        /// Decompose the independent-set polytope instead.
        #[arg(long)]
        independent: bool,
    },
    /// Beta invariant and signed beta invariants of all contractions.
    Beta { input: String },
    /// Both beta-invariant inequalities.
    Inequality { input: String },
}

#[derive(Debug, Subcommand)]
enum SolidAngleCommand {
    /// Linear solid-angle coefficient of Σ_{|I|=2} Δ_I − Δ_[4].
    Demo,
}

/// A failure carrying its exit code.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Inconsistent(_) => EXIT_MISMATCH,
            _ => EXIT_INVALID,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn mismatch(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_MISMATCH,
        message: message.into(),
    }
}

fn invalid(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_INVALID,
        message: message.into(),
    }
}

type Outcome = std::result::Result<i32, Failure>;

struct Context<'a> {
    stdin: &'a mut (dyn Read + Send),
    out: &'a mut (dyn Write + Send),
    err: &'a mut (dyn Write + Send),
    max_d: usize,
}

impl Context<'_> {
    /// `-` reads standard input, text starting with `{` is inline JSON,
    /// anything else is a path.
    fn read_json(&mut self, input: &str) -> std::result::Result<Value, Failure> {
        let text = if input == "-" {
            let mut buf = String::new();
            self.stdin
                .read_to_string(&mut buf)
                .map_err(|e| invalid(format!("reading standard input: {e}")))?;
            buf
        } else if input.trim_start().starts_with('{') {
            input.to_string()
        } else {
            std::fs::read_to_string(Path::new(input)).map_err(|e| invalid(format!("reading {input}: {e}")))?
        };
        Ok(genperm::json::parse_value(&text)?)
    }

    fn rep(&mut self, input: &str) -> std::result::Result<GenPermRep, Failure> {
        let v = self.read_json(input)?;
        Ok(rep_from_value(&v, self.max_d)?)
    }

    fn matroid(&mut self, input: &str) -> std::result::Result<Matroid, Failure> {
        let v = self.read_json(input)?;
        let m = matroid_from_value(&v)?;
        if m.ground_size() > self.max_d {
            return Err(Error::DimensionOutOfRange {
                d: m.ground_size(),
                max: self.max_d,
            }
            .into());
        }
        Ok(m)
    }

    fn emit(&mut self, v: &Value) -> std::result::Result<(), Failure> {
        writeln!(self.out, "{v}").map_err(|e| invalid(format!("writing output: {e}")))
    }

    fn note(&mut self, message: &str) {
        let _ = writeln!(self.err, "{message}");
    }
}

/// `GENPERM_MAX_D`, clamped to the library limit.
fn max_d_from_env() -> std::result::Result<usize, Failure> {
    match std::env::var("GENPERM_MAX_D") {
        Err(_) => Ok(MAX_D),
        Ok(s) => match s.trim().parse::<usize>() {
            Ok(d) if d >= 1 => Ok(d.min(MAX_D)),
            _ => Err(invalid(format!(
                "GENPERM_MAX_D must be a positive integer, found {s:?}"
            ))),
        },
    }
}

/// Runs one invocation and returns its exit code.
pub fn run<I, S>(
    args: I,
    stdin: &mut (dyn Read + Send),
    out: &mut (dyn Write + Send),
    err: &mut (dyn Write + Send),
) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{rendered}")
            } else {
                write!(out, "{rendered}")
            };
            return code;
        }
    };
    let max_d = match max_d_from_env() {
        Ok(d) => d,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            return f.code;
        }
    };
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = cli.threads {
        if n == 0 {
            let _ = writeln!(err, "error: --threads must be at least 1");
            return EXIT_INVALID;
        }
        builder = builder.num_threads(n);
    }
    let pool = match builder.build() {
        Ok(pool) => pool,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_INVALID;
        }
    };
    let mut ctx = Context {
        stdin,
        out,
        err,
        max_d,
    };
    match pool.install(|| dispatch(cli.command, &mut ctx)) {
        Ok(code) => code,
        Err(f) => {
            ctx.note(&format!("error: {}", f.message));
            f.code
        }
    }
}

fn dispatch(command: Command, ctx: &mut Context<'_>) -> Outcome {
    match command {
        Command::Validate { input } => validate(ctx, &input),
        Command::Transform(args) => transform(ctx, args),
        Command::Vertices { input } => {
            let rep = ctx.rep(&input)?;
            require_valid(&rep)?;
            let vs = vertices(&rep.z())?;
            ctx.emit(&json!({"vertices": vs.iter().map(point_to_json).collect::<Vec<_>>()}))?;
            Ok(EXIT_OK)
        }
        Command::Points { input } => {
            let rep = ctx.rep(&input)?;
            require_valid(&rep)?;
            if !rep.is_integral() {
                return Err(Error::NotIntegral("lattice points need an integral rep".into()).into());
            }
            for p in enumerate_lattice_points(&rep.z())? {
                let coords: Vec<Value> = p.coords.iter().map(|c| json!(c.to_i64())).collect();
                ctx.emit(&Value::Array(coords))?;
            }
            Ok(EXIT_OK)
        }
        Command::Count { input, oracle } => count(ctx, &input, oracle),
        Command::Ehrhart { input } => ehrhart(ctx, &input),
        Command::E1 { input } => {
            let rep = ctx.rep(&input)?;
            let value = e1(&rep)?;
            ctx.emit(&json!({"e1": rational_to_json(&value)}))?;
            Ok(EXIT_OK)
        }
        Command::Functional(cmd) => functional(ctx, cmd),
        Command::Matroid(cmd) => matroid(ctx, cmd),
        Command::SolidAngle(SolidAngleCommand::Demo) => solid_angle_demo(ctx),
    }
}

fn require_valid(rep: &GenPermRep) -> std::result::Result<(), Failure> {
    match validate_y(rep) {
        Validation::Valid => Ok(()),
        Validation::Invalid(w) => Err(Error::InvalidRep(w).into()),
    }
}

fn validate(ctx: &mut Context<'_>, input: &str) -> Outcome {
    let rep = ctx.rep(input)?;
    let result = validate_y(&rep);
    // errors out when the supermodularity route disagrees
    equivalence_check(rep.y())?;
    match result {
        Validation::Valid => {
            ctx.emit(&json!({"valid": true}))?;
            Ok(EXIT_OK)
        }
        Validation::Invalid(w) => {
            ctx.emit(&json!({"valid": false, "witness": witness_to_json(&w)}))?;
            ctx.note(&format!("invalid: {w}"));
            Ok(EXIT_INVALID)
        }
    }
}

fn transform(ctx: &mut Context<'_>, args: TransformArgs) -> Outcome {
    let v = ctx.read_json(&args.input)?;
    let f = set_function_from_value(&v, ctx.max_d)?;
    let (g, back) = if args.to_z {
        let g = zeta_transform(&f)?;
        let back = mobius_transform(&g)?;
        (g, back)
    } else {
        let g = mobius_transform(&f)?;
        let back = zeta_transform(&g)?;
        (g, back)
    };
    if back != f {
        return Err(mismatch("transform does not invert"));
    }
    ctx.emit(&set_function_to_json(&g))?;
    Ok(EXIT_OK)
}

fn count(ctx: &mut Context<'_>, input: &str, oracle: bool) -> Outcome {
    let rep = ctx.rep(input)?;
    let formula = count_lattice_points_formula(&rep)?;
    let formula_json: Value = match formula.to_u64() {
        Some(n) => json!(n),
        None => json!(formula.to_string()),
    };
    if !oracle {
        ctx.emit(&json!({"formula": formula_json}))?;
        return Ok(EXIT_OK);
    }
    let brute = count_lattice_points(&rep.z())?;
    let matches = formula == brute.into();
    ctx.emit(&json!({"formula": formula_json, "oracle": brute, "match": matches}))?;
    if matches {
        Ok(EXIT_OK)
    } else {
        ctx.note("lattice-point formula disagrees with enumeration");
        Ok(EXIT_MISMATCH)
    }
}

fn ehrhart(ctx: &mut Context<'_>, input: &str) -> Outcome {
    let rep = ctx.rep(input)?;
    let poly = ehrhart_polynomial(&rep)?;
    let linear = e1(&rep)?;
    let coeffs: Vec<Value> = poly.coeffs.iter().map(rational_to_json).collect();
    let agrees = poly.coeff(1) == linear || poly.degree() == 0;
    ctx.emit(&json!({"coefficients": coeffs, "e1": rational_to_json(&linear), "e1_match": agrees}))?;
    if agrees {
        Ok(EXIT_OK)
    } else {
        ctx.note("interpolated linear coefficient disagrees with the harmonic formula");
        Ok(EXIT_MISMATCH)
    }
}

fn functional(ctx: &mut Context<'_>, cmd: FunctionalCommand) -> Outcome {
    match cmd {
        FunctionalCommand::Rays { d } => {
            if d > ctx.max_d {
                return Err(Error::DimensionOutOfRange { d, max: ctx.max_d }.into());
            }
            let mut rays = Vec::new();
            for (e, t) in ray_indices(d) {
                let mut ray = json!({"E": subset_to_json(e), "T": subset_to_json(t)});
                if let Ok(u) = compatible_direction(d, e, t) {
                    ray["direction"] = json!(u);
                }
                rays.push(ray);
            }
            ctx.emit(&json!({"d": d, "rays": rays}))?;
            Ok(EXIT_OK)
        }
        FunctionalCommand::Decompose { input } => {
            let v = ctx.read_json(&input)?;
            let phi = symmetric_from_value(&v, MAX_SYMMETRIC_D)?;
            let c = decompose_symmetric(&phi)?;
            if combine_symmetric(phi.d(), &c)? != phi {
                return Err(mismatch("f_k coordinates do not recombine to the input"));
            }
            let positive = c.iter().all(|x| !x.is_negative());
            ctx.emit(
                &json!({"c": c.iter().map(rational_to_json).collect::<Vec<_>>(), "positive": positive}),
            )?;
            Ok(EXIT_OK)
        }
        FunctionalCommand::Certificate { d } => {
            let cert = positivity_certificate(d)?;
            ctx.emit(&json!({
                "c": cert.c.iter().map(rational_to_json).collect::<Vec<_>>(),
                "nonnegative": cert.all_nonnegative,
                "q_identity": cert.q_identity_verified,
            }))?;
            if cert.all_nonnegative && cert.q_identity_verified {
                Ok(EXIT_OK)
            } else {
                Ok(EXIT_MISMATCH)
            }
        }
    }
}

fn matroid(ctx: &mut Context<'_>, cmd: MatroidCommand) -> Outcome {
    match cmd {
        MatroidCommand::Decompose { input, independent } => {
            let m = ctx.matroid(&input)?;
            let rep = if independent {
                independent_polytope_y(&m)?
            } else {
                matroid_polytope_y(&m)?
            };
            if !independent && zeta_transform(rep.y())? != matroid_polytope_z(&m)? {
                return Err(mismatch("zeta transform differs from r(E) − r(E ∖ I)"));
            }
            ctx.emit(&rep_to_json(&rep))?;
            Ok(EXIT_OK)
        }
        MatroidCommand::Beta { input } => {
            let m = ctx.matroid(&input)?;
            let table = beta_table(&m);
            let contractions: Vec<Value> = table
                .iter()
                .map(|(a, b)| json!({"A": subset_to_json(a), "signed_beta": b}))
                .collect();
            if table.get(SubsetMask::EMPTY) != signed_beta(&m) {
                return Err(mismatch("beta table disagrees with the direct rank sum"));
            }
            ctx.emit(
                &json!({"beta": beta(&m), "signed_beta": signed_beta(&m), "contractions": contractions}),
            )?;
            Ok(EXIT_OK)
        }
        MatroidCommand::Inequality { input } => {
            let m = ctx.matroid(&input)?;
            let plain = beta_inequality(&m);
            let indep = beta_inequality_indep(&m);
            let mut consistent = plain == e1(&matroid_polytope_y(&m)?)?;
            if m.ground_size() < MAX_D {
                consistent &= indep == e1(&independent_polytope_y(&m)?)?;
            }
            let nonnegative = !plain.is_negative() && !indep.is_negative();
            ctx.emit(&json!({
                "inequality": rational_to_json(&plain),
                "independent": rational_to_json(&indep),
                "nonnegative": nonnegative,
                "e1_match": consistent,
            }))?;
            if consistent && nonnegative {
                Ok(EXIT_OK)
            } else {
                Ok(EXIT_MISMATCH)
            }
        }
    }
}

fn solid_angle_demo(ctx: &mut Context<'_>) -> Outcome {
    let mut entries: Vec<_> = genperm::genperm::pairs(4).map(|p| (p, rat(1))).collect();
    entries.push((SubsetMask::full(4), rat(-1)));
    let q = GenPermRep::from_entries(4, entries)?;
    let valid = validate_y(&q).is_valid();
    let a1 = a1_genperm_d4(&q)?;
    let expected = -tetra_linear_coeff();
    ctx.emit(&json!({
        "y": rep_to_json(&q)["y"],
        "valid": valid,
        "a1": a1,
        "tolerance": SOLID_ANGLE_TOLERANCE,
        "negative": a1 < 0.0,
    }))?;
    ctx.note(&format!(
        "A_1(Q) = {a1:.8} < 0: the linear solid-angle coefficient can be negative"
    ));
    if valid && a1 < 0.0 && (a1 - expected).abs() <= SOLID_ANGLE_TOLERANCE {
        Ok(EXIT_OK)
    } else {
        Ok(EXIT_MISMATCH)
    }
}
