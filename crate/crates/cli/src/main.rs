//! `dqkin`: command-line front end. Every command reads JSON (or flags) and
//! writes JSON, or CSV for `trace`. Exit codes: 0 success, 1 domain error,
//! 2 parse or schema error.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand, ValueEnum};
use dqkin::json::{
    c_space_report_to_json, classification_to_json, darboux_report_to_json, dq_from_json, dq_to_json,
    dyad_spec_from_json, dyad_spec_to_json, example2_to_json, matrix_from_json, point_from_json, points_from_json,
    problem_from_json, quadric_to_json, reconstruction_to_json, scalar_from_json, subspace_from_json,
    subspace_to_json, ScalarMode,
};
use dqkin::{
    build_variety, c_space_from_line, classify, darboux, darboux_invariants, factor_transform, mannheim,
    reconstruct_quadrilateral, trajectory, verify_admissible, DualQuaternion, MotionLabel, MotionPoly, Scalar,
    Subspace, DEFAULT_TOLERANCE,
};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "dqkin", version, about = "Exact dual quaternion kinematics")]
struct Cli {
    /// How input scalars are interpreted.
    #[arg(long, value_enum, default_value = "gaussian", global = true)]
    scalar: ScalarArg,
    /// Tolerance for floating point scalars.
    #[arg(long, default_value_t = DEFAULT_TOLERANCE, global = true)]
    tolerance: f64,
    /// Write the output to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ScalarArg {
    Rational,
    Gaussian,
    Float,
}

#[derive(Subcommand)]
enum Command {
    /// Classify the three-space spanned by a JSON list of four points.
    Classify { file: PathBuf },
    /// Build the constraint space of a dyad given as JSON.
    Dyad { file: PathBuf },
    /// Factor an admissible 8×8 matrix into its left and right factors.
    FactorTransform { file: PathBuf },
    /// Check the admissibility conditions of an 8×8 matrix.
    VerifyTransform { file: PathBuf },
    /// Sample the trajectory of a point under a motion, as CSV.
    Trace {
        file: PathBuf,
        /// Number of parameter values 0, 1, ..., n-1 when the input lists none.
        #[arg(long, default_value_t = 5)]
        samples: usize,
    },
    /// Invariants of the Darboux motion with parameters a, b, c.
    Darboux {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        #[arg(long, allow_hyphen_values = true)]
        c: String,
    },
    /// Span a line with its fiber image and report the cylinder space.
    Line { file: PathBuf },
    /// Reconstruct a spatial quadrilateral from a JSON problem.
    Reconstruct { file: PathBuf },
    /// Check the claims about the fixed example with two null lines.
    Example2,
}

/// Error split by exit code.
enum Failure {
    Domain(anyhow::Error),
    Parse(anyhow::Error),
}

impl From<dqkin::Error> for Failure {
    fn from(e: dqkin::Error) -> Self {
        match e {
            dqkin::Error::Parse(_) => Failure::Parse(e.into()),
            other => Failure::Domain(other.into()),
        }
    }
}

type Outcome<T> = std::result::Result<T, Failure>;

fn parse_err(e: impl Into<anyhow::Error>) -> Failure {
    Failure::Parse(e.into())
}

fn read_json(path: &Path) -> Outcome<Value> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("cannot read {}", path.display()))
        .map_err(parse_err)?;
    serde_json::from_str(&text)
        .with_context(|| format!("{} is not valid JSON", path.display()))
        .map_err(parse_err)
}

fn field<'a>(v: &'a Value, key: &str) -> Outcome<&'a Value> {
    v.get(key).ok_or_else(|| parse_err(anyhow!("/: missing field \"{key}\"")))
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("values serialise") + "\n"
}

fn mode(cli: &Cli) -> ScalarMode {
    match cli.scalar {
        ScalarArg::Rational => ScalarMode::Rational,
        ScalarArg::Gaussian => ScalarMode::Gaussian,
        ScalarArg::Float => ScalarMode::Float(cli.tolerance),
    }
}

fn flag_scalar(text: &str, mode: ScalarMode, name: &str) -> Outcome<Scalar> {
    Ok(scalar_from_json(&Value::String(text.into()), mode, name)?)
}

/// Motion given as `{"darboux": {"a", "b", "c"}}`, `{"mannheim": {...}}`,
/// `{"line": [p, q]}` or `{"coefficients": [...]}` (highest degree first).
fn motion_from_json(v: &Value, mode: ScalarMode) -> Outcome<MotionPoly> {
    let abc = |w: &Value, path: &str| -> Outcome<(Scalar, Scalar, Scalar)> {
        let get = |k: &str| -> Outcome<Scalar> {
            let x = w.get(k).ok_or_else(|| parse_err(anyhow!("{path}: missing field \"{k}\"")))?;
            Ok(scalar_from_json(x, mode, &format!("{path}/{k}"))?)
        };
        Ok((get("a")?, get("b")?, get("c")?))
    };
    if let Some(w) = v.get("darboux") {
        let (a, b, c) = abc(w, "/motion/darboux")?;
        return Ok(darboux(&a, &b, &c));
    }
    if let Some(w) = v.get("mannheim") {
        let (a, b, c) = abc(w, "/motion/mannheim")?;
        return Ok(mannheim(&a, &b, &c));
    }
    if let Some(w) = v.get("line") {
        let l = subspace_from_json(w, mode, "/motion/line")?;
        return Ok(MotionPoly::line(&l)?);
    }
    if let Some(w) = v.get("coefficients") {
        let arr = w
            .as_array()
            .ok_or_else(|| parse_err(anyhow!("/motion/coefficients: expected an array")))?;
        let coeffs = arr
            .iter()
            .enumerate()
            .map(|(k, c)| dq_from_json(c, mode, &format!("/motion/coefficients/{k}")))
            .collect::<dqkin::Result<Vec<DualQuaternion>>>()?;
        return Ok(MotionPoly::new(coeffs, MotionLabel::Generic)?);
    }
    Err(parse_err(anyhow!("/motion: expected darboux, mannheim, line or coefficients")))
}

fn trace(cli: &Cli, file: &Path, samples: usize) -> Outcome<String> {
    let v = read_json(file)?;
    let mode = mode(cli);
    let m = motion_from_json(field(&v, "motion")?, mode)?;
    let x = point_from_json(field(&v, "point")?, mode, "/point")?;
    let params: Vec<Scalar> = match v.get("params") {
        Some(p) => dqkin::json::scalars_from_json(p, None, mode, "/params")?,
        None => (0..samples as i64).map(Scalar::int).collect(),
    };
    let tr = trajectory(&m, &x)?;
    let mut out = String::from("t,x0,x1,x2,x3\n");
    for t in &params {
        let row = match tr.point(t) {
            Some(p) => {
                let c = p.coords();
                // dehomogenise when the point is finite
                let scale = if c[0].is_zero() { Scalar::one() } else { c[0].inv() };
                c.iter().map(|x| (x * &scale).to_text()).collect::<Vec<_>>().join(",")
            }
            None => "nan,nan,nan,nan".into(),
        };
        out.push_str(&format!("{},{row}\n", t.to_text()));
    }
    eprintln!("degree {}", tr.degree);
    Ok(out)
}

fn run(cli: &Cli) -> Outcome<String> {
    let mode = mode(cli);
    let out = match &cli.command {
        Command::Classify { file } => {
            let v = read_json(file)?;
            let pts = points_from_json(&v, Some(4), mode, "")?;
            let u = Subspace::span(&pts)?;
            pretty(&classification_to_json(&classify(&u)?))
        }
        Command::Dyad { file } => {
            let spec = dyad_spec_from_json(&read_json(file)?, mode)?;
            let var = build_variety(&spec)?;
            let witnesses: serde_json::Map<String, Value> =
                var.witnesses.iter().map(|(k, w)| (k.clone(), subspace_to_json(w))).collect();
            pretty(&json!({
                "spec": dyad_spec_to_json(&var.spec),
                "space": subspace_to_json(&var.space),
                "quadric": quadric_to_json(&var.quadric),
                "witnesses": witnesses,
            }))
        }
        Command::FactorTransform { file } => {
            let m = matrix_from_json(&read_json(file)?, mode, "")?;
            let (l, r) = factor_transform(&m)?;
            pretty(&json!({"l": dq_to_json(&l), "r": dq_to_json(&r)}))
        }
        Command::VerifyTransform { file } => {
            let m = matrix_from_json(&read_json(file)?, mode, "")?;
            let rep = verify_admissible(&m)?;
            pretty(&serde_json::to_value(rep).expect("report serialises"))
        }
        Command::Trace { file, samples } => trace(cli, file, *samples)?,
        Command::Darboux { a, b, c } => {
            let (a, b, c) = (flag_scalar(a, mode, "--a")?, flag_scalar(b, mode, "--b")?, flag_scalar(c, mode, "--c")?);
            pretty(&darboux_report_to_json(&darboux_invariants(&a, &b, &c)?))
        }
        Command::Line { file } => {
            let l = subspace_from_json(&read_json(file)?, mode, "")?;
            pretty(&c_space_report_to_json(&c_space_from_line(&l)?))
        }
        Command::Reconstruct { file } => {
            let p = problem_from_json(&read_json(file)?)?;
            let rec = reconstruct_quadrilateral(&p)?;
            let mut v = reconstruction_to_json(&rec);
            v["verified"] = Value::Bool(rec.verified());
            pretty(&v)
        }
        Command::Example2 => pretty(&example2_to_json(&dqkin::example2_checks()?)),
    };
    Ok(out)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    match run(&cli) {
        Ok(text) => {
            if let Some(path) = &cli.out {
                if let Err(e) = fs::write(path, &text) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return ExitCode::from(1);
                }
            } else {
                print!("{text}");
            }
            ExitCode::SUCCESS
        }
        Err(Failure::Domain(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(Failure::Parse(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn motion_schema_errors_are_parse_errors() {
        let v = json!({"spiral": {}});
        assert!(matches!(motion_from_json(&v, ScalarMode::Gaussian), Err(Failure::Parse(_))));
        let v = json!({"darboux": {"a": "1", "b": "x", "c": "0"}});
        assert!(matches!(motion_from_json(&v, ScalarMode::Gaussian), Err(Failure::Parse(_))));
    }

    #[test]
    fn darboux_motion_from_json() {
        let v = json!({"darboux": {"a": "1", "b": "2", "c": "3"}});
        let m = motion_from_json(&v, ScalarMode::Rational).ok().unwrap();
        assert_eq!(m.degree(), 3);
    }
}
