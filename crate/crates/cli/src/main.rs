use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use spherewidth::constructors::{ConstructorParams, ConstructorSpec};
use spherewidth::harness::{self, SUITES};
use spherewidth::metrics;
use spherewidth::{Error, SphericalBody, UnitPoint};

const EXIT_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_NONCONVERGED: u8 = 3;

#[derive(Parser)]
#[command(
    name = "spherewidth",
    version,
    about = "Width, thickness and diameter of convex bodies on S^d"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// Write the JSON result here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Leave out timing and version metadata so output is byte-reproducible.
    #[arg(long, global = true)]
    no_meta: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Ball,
    Orthant,
    Reuleaux,
    ExampleS3,
    Random,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Width,
    Diameter,
    Strict,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build a body and write it as a body file.
    Gen {
        #[arg(long, value_enum, required_unless_present = "spec")]
        kind: Option<Kind>,
        /// Full constructor spec as JSON; overrides the other flags.
        #[arg(long)]
        spec: Option<String>,
        #[arg(long, default_value_t = 2)]
        dim: usize,
        /// Ball center (defaults to the first basis vector).
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        dir: Option<Vec<f64>>,
        #[arg(long)]
        rho: Option<f64>,
        #[arg(long)]
        w: Option<f64>,
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long, default_value_t = 1.0)]
        kappa: f64,
        #[arg(long, default_value_t = 0.35)]
        sigma: f64,
        /// Boundary samples for sampled constructors.
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long, default_value_t = 12)]
        points: usize,
        #[arg(long, default_value_t = 0.8)]
        spread: f64,
        /// Allow Reuleaux widths up to pi.
        #[arg(long)]
        extended: bool,
    },
    /// Width of the body determined by the supporting hemisphere H(dir).
    Width {
        #[arg(long)]
        body: PathBuf,
        #[arg(
            long,
            value_delimiter = ',',
            allow_hyphen_values = true,
            required = true
        )]
        dir: Vec<f64>,
    },
    /// Smallest width over all supporting hemispheres.
    Thickness {
        #[arg(long)]
        body: PathBuf,
        /// Multi-start count.
        #[arg(long, default_value_t = 8)]
        samples: usize,
    },
    Diameter {
        #[arg(long)]
        body: PathBuf,
    },
    /// Constant width, constant diameter or strict convexity check.
    Check {
        #[arg(long)]
        body: PathBuf,
        #[arg(long, value_enum, default_value = "width")]
        mode: Mode,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 1e-3)]
        tol: f64,
    },
    /// Run a verification suite, or `all`.
    Verify {
        #[arg(long)]
        suite: String,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Look for constant-diameter bodies of diameter w < pi/2 whose width
    /// varies.
    Search {
        #[arg(long)]
        w: f64,
        #[arg(long, default_value_t = 100)]
        trials: usize,
    },
    /// Summary of a body file.
    Info {
        #[arg(long)]
        body: PathBuf,
        /// Also emit this many boundary points.
        #[arg(long)]
        dump_boundary: Option<usize>,
    },
}

enum Failure {
    Error(Error),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Error(e)
    }
}

struct Output {
    value: Value,
    /// Preformatted output; the body file format has no room for metadata.
    raw: Option<String>,
    code: u8,
}

fn point(coords: &[f64], dim: usize) -> Result<UnitPoint, Failure> {
    if coords.len() != dim + 1 {
        return Err(Failure::Usage(format!(
            "--dir needs {} coordinates for S^{dim}, got {}",
            dim + 1,
            coords.len()
        )));
    }
    Ok(UnitPoint::new(coords.to_vec())?)
}

fn load(path: &Path) -> Result<SphericalBody, Failure> {
    Ok(harness::read_body(path)?)
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports serialize to JSON")
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    let seed = cli.seed;
    let report = |value: Value, code: u8| Output {
        value,
        raw: None,
        code,
    };
    Ok(match &cli.cmd {
        Cmd::Gen {
            kind,
            spec,
            dim,
            dir,
            rho,
            w,
            n,
            kappa,
            sigma,
            samples,
            points,
            spread,
            extended,
        } => {
            let spec = match (spec, kind) {
                (Some(text), _) => serde_json::from_str::<ConstructorSpec>(text)
                    .map_err(|e| Failure::Usage(format!("--spec: {e}")))?,
                (None, Some(kind)) => {
                    let dim = if matches!(kind, Kind::ExampleS3) {
                        3
                    } else {
                        *dim
                    };
                    let need = |x: Option<f64>, what: &str| {
                        x.ok_or_else(|| Failure::Usage(format!("--{what} is required")))
                    };
                    let params = match kind {
                        Kind::Ball => ConstructorParams::Ball {
                            center: match dir {
                                Some(d) => point(d, dim)?,
                                None => UnitPoint::basis(dim, 0),
                            },
                            rho: need(*rho, "rho")?,
                        },
                        Kind::Orthant => ConstructorParams::Orthant {},
                        Kind::Reuleaux => ConstructorParams::Reuleaux {
                            n: *n,
                            w: need(*w, "w")?,
                            samples: samples.unwrap_or(2000),
                            extended: *extended,
                        },
                        Kind::ExampleS3 => ConstructorParams::ExampleS3 {
                            kappa: *kappa,
                            sigma: *sigma,
                            samples: samples.unwrap_or(5000),
                        },
                        Kind::Random => ConstructorParams::Random {
                            n_points: *points,
                            spread: *spread,
                        },
                    };
                    ConstructorSpec { params, dim, seed }
                }
                (None, None) => return Err(Failure::Usage("--kind or --spec is required".into())),
            };
            let body = spec.build()?;
            Output {
                value: Value::Null,
                raw: Some(harness::body_to_json(&body)?),
                code: 0,
            }
        }
        Cmd::Width { body, dir } => {
            let c = load(body)?;
            let k = point(dir, c.dim())?;
            let r = metrics::width_at(&c, &k)?;
            let code = if r.converged { 0 } else { EXIT_NONCONVERGED };
            report(to_value(&r), code)
        }
        Cmd::Thickness { body, samples } => {
            let c = load(body)?;
            let r = metrics::thickness(&c, *samples)?;
            let code = if r.converged { 0 } else { EXIT_NONCONVERGED };
            report(to_value(&r), code)
        }
        Cmd::Diameter { body } => {
            let c = load(body)?;
            let (d, p, q) = metrics::diameter(&c)?;
            report(json!({ "diameter": d, "p": p, "q": q }), 0)
        }
        Cmd::Check {
            body,
            mode,
            samples,
            tol,
        } => {
            let c = load(body)?;
            match mode {
                Mode::Width | Mode::Diameter => {
                    let r = if matches!(mode, Mode::Width) {
                        metrics::check_constant_width(&c, *samples, *tol, seed)?
                    } else {
                        metrics::check_constant_diameter(&c, *samples, *tol, seed)?
                    };
                    let code = if r.nonconverged > 0 {
                        EXIT_NONCONVERGED
                    } else if r.pass {
                        0
                    } else {
                        EXIT_FAILED
                    };
                    report(to_value(&r), code)
                }
                Mode::Strict => {
                    let r = metrics::check_strict_convexity(&c, *samples, *tol, seed)?;
                    report(to_value(&r), if r.pass { 0 } else { EXIT_FAILED })
                }
            }
        }
        Cmd::Verify { suite, trials, tol } => {
            let names: Vec<&str> = if suite == "all" {
                SUITES.to_vec()
            } else {
                vec![suite.as_str()]
            };
            let mut results = Vec::new();
            for name in names {
                let r = harness::run_suite(name, *trials, seed, *tol)?;
                results.push(if cli.no_meta { r.strip_meta() } else { r });
            }
            let code = if results.iter().all(|r| r.all_passed()) {
                0
            } else {
                EXIT_FAILED
            };
            let value = if suite == "all" {
                json!({ "suites": results })
            } else {
                to_value(&results[0])
            };
            report(value, code)
        }
        Cmd::Search { w, trials } => {
            let records = harness::search_gap(*w, *trials, seed, None)?;
            report(json!({ "w": w, "trials": trials, "records": records }), 0)
        }
        Cmd::Info {
            body,
            dump_boundary,
        } => {
            let c = load(body)?;
            let (diam, _, _) = metrics::diameter(&c)?;
            let mut v = json!({
                "dim": c.dim(),
                "kind": if c.as_ball().is_some() { "ball" } else { "polytope" },
                "diameter": diam,
                "exact_boundary": c.exact().is_some(),
                "constructor": c.constructor(),
            });
            if let Some(p) = c.as_polytope() {
                v["vertices"] = json!(p.vertices().len());
                v["extreme_vertices"] = json!(p.extreme_indices().len());
            }
            if let Some(n) = dump_boundary {
                v["boundary"] = to_value(&c.sample_boundary(*n, seed));
            }
            report(v, 0)
        }
    })
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::NotConverged { .. } => EXIT_NONCONVERGED,
        _ => EXIT_USAGE,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let outcome = match harness::with_threads(|| run(&cli)) {
        Ok(r) => r,
        Err(e) => Err(Failure::Error(e)),
    };
    let mut out = match outcome {
        Ok(out) => out,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(EXIT_USAGE);
        }
        Err(Failure::Error(e)) => {
            eprintln!("error: {e}");
            return ExitCode::from(exit_code(&e));
        }
    };
    if !cli.no_meta && out.raw.is_none() {
        if let Value::Object(map) = &mut out.value {
            map.insert(
                "meta".into(),
                json!({
                    "version": env!("CARGO_PKG_VERSION"),
                    "wall_time": start.elapsed().as_secs_f64(),
                }),
            );
        }
    }
    let rendered = match out.raw.take() {
        Some(text) => Ok(text),
        None => harness::to_json(&out.value),
    };
    let mut text = match rendered {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
    };
    text.push('\n');
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                eprintln!("error: {}: {e}", path.display());
                return ExitCode::from(EXIT_USAGE);
            }
        }
        None => print!("{text}"),
    }
    ExitCode::from(out.code)
}
