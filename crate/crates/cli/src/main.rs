use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use spinlie::diracrep::{dirac_spinor_lie, DiracField, GammaRep};
use spinlie::geometry::metric_reconstruction_residual;
use spinlie::lieops::{
    checked_frame, cov_deriv_clifford, cov_deriv_spinor, frame_matrix, gram_residual,
    lie_form_cartan, spinor_lie_clifford, spinor_lie_coordinate, spinor_lie_left,
    spinor_lie_right, spinor_lift,
};
use spinlie::verify::{killing_vectors, verify_scene, Tolerances, VerifyOptions};
use spinlie::{load_scene, CliffordField, LieAt, MathError, Multivector, Scene, SceneField, SpinorField};

#[derive(Parser)]
#[command(name = "spinlie", version, about = "Spinor Lie derivatives on Lorentzian scenes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Load and validate a scene, then describe it.
    Check {
        scene: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Evaluate one derivative of a target at a point.
    Lie {
        scene: PathBuf,
        #[arg(long)]
        xi: String,
        /// `gammaA` for a cotetrad element or `field:NAME`.
        #[arg(long)]
        target: String,
        #[arg(long, allow_hyphen_values = true)]
        at: String,
        #[arg(long, value_enum)]
        mode: Mode,
        #[arg(long)]
        json: bool,
    },
    /// Spinor lift, checked frame and its Gram residual.
    Lift {
        scene: PathBuf,
        #[arg(long)]
        xi: String,
        #[arg(long, allow_hyphen_values = true)]
        at: String,
        #[arg(long, allow_hyphen_values = true)]
        t: f64,
        #[arg(long)]
        json: bool,
    },
    /// Run the property suite over random sample points.
    Verify {
        scene: PathBuf,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Cartan,
    Covariant,
    Spinor,
    SpinorRight,
    SpinorCoordinate,
    Dirac,
}

enum Failure {
    Usage(String),
    Math(String),
}

impl From<MathError> for Failure {
    fn from(e: MathError) -> Self {
        Failure::Math(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Check { scene, json } => cmd_check(&scene, json),
        Command::Lie {
            scene,
            xi,
            target,
            at,
            mode,
            json,
        } => cmd_lie(&scene, &xi, &target, &at, mode, json),
        Command::Lift {
            scene,
            xi,
            at,
            t,
            json,
        } => cmd_lift(&scene, &xi, &at, t, json),
        Command::Verify {
            scene,
            seed,
            samples,
            tol,
            json,
        } => cmd_verify(&scene, seed, samples, tol, json),
    };
    match result {
        Ok(code) => code,
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Math(m)) => {
            eprintln!("math error: {m}");
            ExitCode::from(1)
        }
    }
}

fn load(path: &PathBuf) -> Result<Scene, Failure> {
    load_scene(path).map_err(|e| Failure::Usage(e.to_string()))
}

fn parse_point(s: &str) -> Result<[f64; 4], Failure> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 4 {
        return Err(Failure::Usage(format!("--at needs four comma-separated numbers, got `{s}`")));
    }
    let mut p = [0.0; 4];
    for (i, part) in parts.iter().enumerate() {
        p[i] = part
            .parse::<f64>()
            .ok()
            .filter(|v| v.is_finite())
            .ok_or_else(|| Failure::Usage(format!("--at component `{part}` is not a finite number")))?;
    }
    Ok(p)
}

fn num(v: f64) -> String {
    format!("{v:.16e}")
}

fn mv_text(m: &Multivector) -> String {
    let terms = m.terms();
    if terms.is_empty() {
        return "0".into();
    }
    terms
        .iter()
        .map(|(b, c)| format!("{:>4}  {}", b.key(), num(*c)))
        .collect::<Vec<_>>()
        .join("\n")
}

fn mv_json(m: &Multivector) -> Value {
    serde_json::to_value(m).expect("multivector serializes")
}

fn matrix_text(m: &[[f64; 4]; 4]) -> String {
    m.iter()
        .map(|row| row.iter().map(|v| format!("{:>24}", num(*v))).collect::<Vec<_>>().join(" "))
        .collect::<Vec<_>>()
        .join("\n")
}

fn print_json(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("json"));
}

fn cmd_check(path: &PathBuf, json: bool) -> Result<ExitCode, Failure> {
    let scene = load(path)?;
    let points = scene.default_points();
    let killing: Vec<&str> = killing_vectors(&scene, &points).into_iter().map(|(n, _)| n).collect();
    let center = scene.geometry.chart.center();
    let geo = scene.geometry.at(&center)?;
    let recon = metric_reconstruction_residual(&geo.h, &geo.g);
    let tetrad = if scene.geometry.tetrad.is_some() { "explicit" } else { "derived" };
    let vectors: Vec<Value> = scene
        .vectors
        .keys()
        .map(|n| json!({"name": n, "killing": killing.contains(&n.as_str())}))
        .collect();
    let fields: Vec<Value> = scene
        .fields
        .iter()
        .map(|(n, f)| json!({"name": n, "even": f.is_even()}))
        .collect();
    if json {
        print_json(&json!({
            "scene": scene.name,
            "coordinates": scene.names().as_slice(),
            "tetrad": tetrad,
            "center": center,
            "tetrad_at_center": geo.h,
            "metric_reconstruction": recon,
            "vectors": vectors,
            "fields": fields,
            "sample_points": points.len(),
        }));
    } else {
        println!("scene {}", scene.name);
        println!("coordinates {}", scene.names().join(", "));
        println!("tetrad {tetrad}; at box center:");
        println!("{}", matrix_text(&geo.h));
        println!("metric reconstruction residual {}", num(recon));
        for n in scene.vectors.keys() {
            let kind = if killing.contains(&n.as_str()) { "killing" } else { "non-killing" };
            println!("vector {n} ({kind})");
        }
        for (n, f) in &scene.fields {
            println!("field {n} ({})", if f.is_even() { "even" } else { "general" });
        }
        println!("{} sample points", points.len());
    }
    Ok(ExitCode::SUCCESS)
}

enum Target {
    Gamma(usize),
    Field(SceneField),
}

fn target(scene: &Scene, raw: &str) -> Result<Target, Failure> {
    if let Some(name) = raw.strip_prefix("field:") {
        return scene
            .fields
            .get(name)
            .cloned()
            .map(Target::Field)
            .ok_or_else(|| Failure::Usage(format!("unknown field `{name}`")));
    }
    if let Some(idx) = raw.strip_prefix("gamma") {
        if let Ok(a) = idx.parse::<usize>() {
            if a < 4 {
                return Ok(Target::Gamma(a));
            }
        }
    }
    Err(Failure::Usage(format!("target must be gamma0..gamma3 or field:NAME, got `{raw}`")))
}

fn cmd_lie(
    path: &PathBuf,
    xi_name: &str,
    target_arg: &str,
    at_arg: &str,
    mode: Mode,
    json: bool,
) -> Result<ExitCode, Failure> {
    let scene = load(path)?;
    let xi = scene
        .vectors
        .get(xi_name)
        .ok_or_else(|| Failure::Usage(format!("unknown vector field `{xi_name}`")))?;
    let p = parse_point(at_arg)?;
    let tgt = target(&scene, target_arg)?;
    let names = scene.names().clone();
    let at = LieAt::new(&scene.geometry, xi, &p)?;

    let (clifford, spinor): (CliffordField, Option<SpinorField>) = match tgt {
        Target::Gamma(a) => (CliffordField::gamma(a, &names), None),
        Target::Field(SceneField::Clifford(c)) => (c, None),
        Target::Field(SceneField::Spinor(s)) => (s.field().clone(), Some(s)),
    };
    let need_spinor = |what: &str| {
        spinor
            .clone()
            .ok_or_else(|| Failure::Usage(format!("mode {what} needs an even field target")))
    };

    let header = json!({
        "scene": scene.name,
        "xi": xi_name,
        "target": target_arg,
        "point": p,
    });
    let result = match mode {
        Mode::Cartan => lie_form_cartan(&at, &clifford)?,
        Mode::Covariant => match &spinor {
            Some(s) => cov_deriv_spinor(&at, s)?,
            None => cov_deriv_clifford(&at, &clifford)?,
        },
        Mode::Spinor => match &spinor {
            Some(s) => spinor_lie_left(&at, s)?,
            None => spinor_lie_clifford(&at, &clifford)?,
        },
        Mode::SpinorRight => spinor_lie_right(&at, &need_spinor("spinor-right")?)?,
        Mode::SpinorCoordinate => spinor_lie_coordinate(&at, &need_spinor("spinor-coordinate")?, true)?,
        Mode::Dirac => {
            let psi = need_spinor("dirac")?;
            let rep = GammaRep::dirac();
            let mut cols = Vec::new();
            for i in 0..4 {
                let col = dirac_spinor_lie(&rep, &at, &DiracField::from_spinor(&rep, &psi, i))?;
                cols.push(col.iter().map(|z| [z.re, z.im]).collect::<Vec<_>>());
            }
            if json {
                let mut out = header;
                out["mode"] = json!("dirac");
                out["columns"] = json!(cols);
                print_json(&out);
            } else {
                for (i, col) in cols.iter().enumerate() {
                    let entries: Vec<String> = col
                        .iter()
                        .map(|[re, im]| format!("({}, {})", num(*re), num(*im)))
                        .collect();
                    println!("column {i}: {}", entries.join(" "));
                }
            }
            return Ok(ExitCode::SUCCESS);
        }
    };
    if json {
        let mut out = header;
        out["mode"] = json!(mode_name(mode));
        out["result"] = mv_json(&result);
        print_json(&out);
    } else {
        println!("{}", mv_text(&result));
    }
    Ok(ExitCode::SUCCESS)
}

fn mode_name(m: Mode) -> &'static str {
    match m {
        Mode::Cartan => "cartan",
        Mode::Covariant => "covariant",
        Mode::Spinor => "spinor",
        Mode::SpinorRight => "spinor-right",
        Mode::SpinorCoordinate => "spinor-coordinate",
        Mode::Dirac => "dirac",
    }
}

fn cmd_lift(path: &PathBuf, xi_name: &str, at_arg: &str, t: f64, json: bool) -> Result<ExitCode, Failure> {
    let scene = load(path)?;
    let xi = scene
        .vectors
        .get(xi_name)
        .ok_or_else(|| Failure::Usage(format!("unknown vector field `{xi_name}`")))?;
    let p = parse_point(at_arg)?;
    if !t.is_finite() {
        return Err(Failure::Usage(format!("--t must be finite, got {t}")));
    }
    let at = LieAt::new(&scene.geometry, xi, &p)?;
    let u = spinor_lift(&at.s, t)?;
    let frame: Vec<Multivector> = (0..4).map(|a| checked_frame(&at.s, a, t)).collect::<Result<_, _>>()?;
    let gram = gram_residual(&at.s, t)?;
    let lambda = frame_matrix(&at.s, t)?;
    if json {
        print_json(&json!({
            "scene": scene.name,
            "xi": xi_name,
            "point": p,
            "t": t,
            "S": mv_json(&at.s),
            "rotor": mv_json(&u),
            "checked_frame": frame.iter().map(mv_json).collect::<Vec<_>>(),
            "gram_residual": gram,
            "lambda": lambda,
        }));
    } else {
        println!("S(xi)\n{}", mv_text(&at.s));
        println!("u_t\n{}", mv_text(&u));
        for (a, f) in frame.iter().enumerate() {
            println!("checked gamma{a}\n{}", mv_text(f));
        }
        println!("gram residual {}", num(gram));
        println!("lambda\n{}", matrix_text(&lambda));
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(
    path: &PathBuf,
    seed: Option<u64>,
    samples: Option<usize>,
    tol: Option<f64>,
    json: bool,
) -> Result<ExitCode, Failure> {
    let scene = load(path)?;
    if let Some(t) = tol {
        if !(t.is_finite() && t > 0.0) {
            return Err(Failure::Usage(format!("--tol must be a positive number, got {t}")));
        }
    }
    let opts = VerifyOptions {
        seed: seed.unwrap_or(scene.sample.seed),
        samples: samples.unwrap_or(scene.sample.count),
        tolerances: Tolerances::with_override(tol),
    };
    let report = verify_scene(&scene, &opts);
    if json {
        println!("{}", report.to_json());
    } else {
        print!("{}", report.to_text());
    }
    Ok(if report.all_pass() { ExitCode::SUCCESS } else { ExitCode::from(1) })
}
