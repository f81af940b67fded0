//! Seeded verification suites. Each trial draws its instance from its own
//! seed, so a failure record is enough to replay it.

use std::f64::consts::{FRAC_PI_2, PI};
use std::time::Instant;

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::bodies::SphericalBody;
use crate::constructors::{
    ball_body, example_s3_body, orthant_body, random_body, reuleaux_odd_gon,
};
use crate::error::{Error, Result};
use crate::linalg::{self, dot};
use crate::metrics::{self, Tolerances};
use crate::sampling::{self, split_seed};
use crate::sphere::{self, lune_contains, make_lune, raw_dist, Angle, Hemisphere, UnitPoint};

pub const SUITES: [&str; 12] = [
    "lemma1",
    "lemma2",
    "lemma3",
    "lemma4",
    "lemma5",
    "lemma7",
    "thm-touching-ball",
    "thm-strict-convexity",
    "thm-center-lune",
    "thm-diam-eq-width",
    "thm-width-diam-equivalence",
    "minimal-lune-centers",
];

#[derive(Clone, Debug, Serialize)]
pub struct FailureRecord {
    pub trial: usize,
    pub seed: u64,
    pub input: Value,
    pub residual: f64,
    pub message: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteResult {
    pub suite: String,
    pub trials: usize,
    pub passes: usize,
    pub failures: Vec<FailureRecord>,
    /// Seconds; `None` once metadata is stripped.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time: Option<f64>,
}

impl SuiteResult {
    pub fn all_passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn strip_meta(mut self) -> Self {
        self.wall_time = None;
        self
    }
}

/// Outcome of a single trial.
#[derive(Clone, Debug)]
pub struct Trial {
    pub pass: bool,
    pub residual: f64,
    pub input: Value,
    pub message: String,
}

impl Trial {
    fn check(residual: f64, tol: f64, input: Value) -> Trial {
        let pass = residual <= tol;
        Trial {
            pass,
            residual,
            input,
            message: if pass {
                String::new()
            } else {
                format!("residual {residual:e} exceeds {tol:e}")
            },
        }
    }

    fn failed(input: Value, message: String) -> Trial {
        Trial {
            pass: false,
            residual: f64::INFINITY,
            input,
            message,
        }
    }
}

/// A constructed body with its nominal width and constructor tolerance.
struct Named {
    name: &'static str,
    body: SphericalBody,
    w: f64,
    tol: f64,
}

struct Context {
    bodies: Vec<Named>,
}

fn angle(x: f64) -> Angle {
    Angle::new(x).expect("suite constants are valid angles")
}

fn s3(seed: u64) -> Result<Named> {
    Ok(Named {
        name: "example_s3",
        body: example_s3_body(angle(1.0), angle(0.35), 5000, seed)?,
        w: 1.7,
        tol: 5e-2,
    })
}

fn ball(name: &'static str, dim: usize, rho: f64) -> Result<Named> {
    Ok(Named {
        name,
        body: ball_body(UnitPoint::basis(dim, 0), angle(rho))?,
        w: 2.0 * rho,
        tol: 1e-9,
    })
}

fn orthant(name: &'static str, dim: usize) -> Result<Named> {
    Ok(Named {
        name,
        body: orthant_body(dim)?,
        w: FRAC_PI_2,
        tol: 1e-9,
    })
}

fn reuleaux(name: &'static str, n: usize, w: f64, seed: u64) -> Result<Named> {
    Ok(Named {
        name,
        body: reuleaux_odd_gon(n, angle(w), 2000, seed)?,
        w,
        tol: 1e-3,
    })
}

/// The constant-width constructor set.
fn constant_width_set(seed: u64) -> Result<Vec<Named>> {
    Ok(vec![
        ball("ball_s2", 2, 0.5)?,
        orthant("orthant_s2", 2)?,
        orthant("orthant_s3", 3)?,
        reuleaux("reuleaux_3", 3, 1.0, seed)?,
        reuleaux("reuleaux_5", 5, 0.8, seed)?,
        s3(seed)?,
    ])
}

fn context(name: &str, seed: u64) -> Result<Context> {
    let bodies = match name {
        "thm-touching-ball" => vec![s3(seed)?],
        "thm-strict-convexity" => vec![
            ball("ball_s2", 2, 0.5)?,
            ball("ball_s3", 3, 0.5)?,
            reuleaux("reuleaux_3", 3, 1.0, seed)?,
            reuleaux("reuleaux_5", 5, 0.8, seed)?,
            orthant("orthant_s2", 2)?,
        ],
        "thm-center-lune" => vec![
            ball("ball_s2", 2, 0.5)?,
            ball("ball_s3_wide", 3, 1.0)?,
            reuleaux("reuleaux_3", 3, 1.0, seed)?,
            reuleaux("reuleaux_5", 5, 0.8, seed)?,
            s3(seed)?,
        ],
        "thm-diam-eq-width" | "thm-width-diam-equivalence" => constant_width_set(seed)?,
        "minimal-lune-centers" => vec![ball("ball_s3_wide", 3, 1.0)?, s3(seed)?],
        _ => Vec::new(),
    };
    Ok(Context { bodies })
}

type TrialFn = fn(&Context, usize, u64, f64) -> Result<Trial>;

fn trial_fn(name: &str) -> Result<TrialFn> {
    Ok(match name {
        "lemma1" => lemma1,
        "lemma2" => lemma2,
        "lemma3" => lemma3,
        "lemma4" => lemma4,
        "lemma5" => lemma5,
        "lemma7" => lemma7,
        "thm-touching-ball" => touching_ball,
        "thm-strict-convexity" => strict_convexity,
        "thm-center-lune" => center_lune,
        "thm-diam-eq-width" => diam_eq_width,
        "thm-width-diam-equivalence" => width_diam_equivalence,
        "minimal-lune-centers" => minimal_lune_centers,
        other => return Err(Error::UnknownSuite(other.to_string())),
    })
}

fn run_trial(f: TrialFn, ctx: &Context, trial: usize, seed: u64, tol: f64) -> Trial {
    f(ctx, trial, seed, tol)
        .unwrap_or_else(|e| Trial::failed(json!({ "trial": trial }), format!("error: {e}")))
}

pub fn run_suite(name: &str, trials: usize, seed: u64, tol: f64) -> Result<SuiteResult> {
    let f = trial_fn(name)?;
    let start = Instant::now();
    let ctx = if trials > 0 {
        context(name, seed)?
    } else {
        Context { bodies: Vec::new() }
    };
    let outcomes: Vec<(usize, u64, Trial)> = (0..trials)
        .into_par_iter()
        .map(|i| {
            let s = split_seed(seed, i as u64);
            (i, s, run_trial(f, &ctx, i, s, tol))
        })
        .collect();
    let passes = outcomes.iter().filter(|(_, _, t)| t.pass).count();
    let failures = outcomes
        .into_iter()
        .filter(|(_, _, t)| !t.pass)
        .map(|(trial, seed, t)| FailureRecord {
            trial,
            seed,
            input: t.input,
            residual: t.residual,
            message: t.message,
        })
        .collect();
    Ok(SuiteResult {
        suite: name.to_string(),
        trials,
        passes,
        failures,
        wall_time: Some(start.elapsed().as_secs_f64()),
    })
}

/// Re-runs one trial of a suite. `run_seed` is the seed the suite was run
/// with; it fixes the constructed bodies.
pub fn replay(name: &str, run_seed: u64, record: &FailureRecord, tol: f64) -> Result<Trial> {
    let f = trial_fn(name)?;
    let ctx = context(name, run_seed)?;
    Ok(run_trial(f, &ctx, record.trial, record.seed, tol))
}

fn pick(ctx: &Context, trial: usize) -> &Named {
    &ctx.bodies[trial % ctx.bodies.len()]
}

fn point_json(p: &UnitPoint) -> Value {
    json!(p.coords())
}

/// Random polytope on `S^d` for `d` in `dims`.
fn random_polytope<R: Rng>(
    rng: &mut R,
    dims: &[usize],
    spread: (f64, f64),
    seed: u64,
) -> Result<SphericalBody> {
    let d = dims[rng.random_range(0..dims.len())];
    let n = rng.random_range(d + 2..=d + 24);
    let s = rng.random_range(spread.0..spread.1);
    random_body(d, n, angle(s), seed)
}

fn spec_json(c: &SphericalBody) -> Value {
    serde_json::to_value(c.constructor()).unwrap_or(Value::Null)
}

/// Membership agrees with separation by supporting hemispheres.
fn lemma1(_: &Context, _: usize, seed: u64, tol: f64) -> Result<Trial> {
    let mut rng = sampling::rng(seed, 1);
    let c = random_polytope(&mut rng, &[2, 3, 4], (0.3, 1.2), seed)?;
    let p = c.as_polytope().expect("random bodies are polytopes");
    let supports = c.dual_region().sample_boundary(64, seed);
    let center = c.interior_point();
    let mut worst: f64 = 0.0;
    let mut worst_x = None;
    for _ in 0..100 {
        let x = sampling::uniform_cap(&mut rng, &center, 1.5);
        let violation = if p.contains(&x)? {
            supports.iter().map(|k| -k.dot(&x)).fold(0.0_f64, f64::max)
        } else {
            let h = p.separate(&x)?;
            let margin = p.support_margin(&h.center)?;
            (-margin).max(h.center.dot(&x).max(0.0))
        };
        if violation > worst {
            worst = violation;
            worst_x = Some(x);
        }
    }
    let input = json!({ "body": spec_json(&c), "worst_query": worst_x.as_ref().map(point_json) });
    Ok(Trial::check(worst, tol, input))
}

/// A hemisphere supporting at a relative-interior point of a face contains
/// the whole face in its boundary.
fn lemma2(_: &Context, _: usize, seed: u64, tol: f64) -> Result<Trial> {
    let mut rng = sampling::rng(seed, 2);
    let c = random_polytope(&mut rng, &[2, 3], (0.3, 1.2), seed)?;
    let p = c.as_polytope().expect("random bodies are polytopes");
    let faces = p.dual_faces().expect("faces exist for d <= 3");
    let verts = p.vertices();
    let face: Vec<usize> = match rng.random_range(0..3) {
        0 => faces.primal_facets[rng.random_range(0..faces.primal_facets.len())].clone(),
        1 if p.dim() == 3 => {
            faces.primal_edges[rng.random_range(0..faces.primal_edges.len())].to_vec()
        }
        _ => {
            let e = p.extreme_indices();
            vec![e[rng.random_range(0..e.len())]]
        }
    };
    let w = sampling::dirichlet(&mut rng, face.len());
    let mut x = vec![0.0; p.dim() + 1];
    for (wi, &i) in w.iter().zip(&face) {
        x = linalg::axpy(&x, *wi, verts[i].coords());
    }
    let q = UnitPoint::new(x)?;
    // every supporting hemisphere at q is a positive combination of the
    // facet normals through q
    let through: Vec<&UnitPoint> = faces
        .vertices
        .iter()
        .filter(|n| n.dot(&q).abs() <= 1e-9)
        .collect();
    if through.is_empty() {
        return Err(Error::InvariantViolation(
            "no facet through a face point".into(),
        ));
    }
    let cw = sampling::dirichlet(&mut rng, through.len());
    let mut m = vec![0.0; p.dim() + 1];
    for (wi, n) in cw.iter().zip(&through) {
        m = linalg::axpy(&m, *wi, n.coords());
    }
    let m = UnitPoint::new(m)?;
    let margin = p.support_margin(&m)?;
    let off_face = face
        .iter()
        .map(|&i| m.dot(&verts[i]).abs())
        .fold(0.0_f64, f64::max);
    let residual = off_face.max(-margin).max(m.dot(&q).abs());
    let input = json!({
        "body": spec_json(&c),
        "face": face,
        "point": point_json(&q),
        "m": point_json(&m),
    });
    Ok(Trial::check(residual, tol, input))
}

/// Points of a lune of thickness below pi/2 at distance pi/2 from the center
/// of `H/G` are corners.
fn lemma3(_: &Context, _: usize, seed: u64, _tol: f64) -> Result<Trial> {
    const CORNER_TOL: f64 = 1e-6;
    let mut rng = sampling::rng(seed, 3);
    let d = rng.random_range(2..=4);
    let g = sampling::uniform_sphere(&mut rng, d);
    let t = sampling::random_tangent(&mut rng, &g);
    let h = sampling::exp_map(&g, &t, rng.random_range(FRAC_PI_2 + 0.01..PI - 0.01));
    let lune = make_lune(Hemisphere::new(g.clone()), Hemisphere::new(h.clone()))?;
    let b = lune.c_hg().clone();
    let mut worst: f64 = 0.0;
    let mut inside = 0;
    for _ in 0..32 {
        let weights = sampling::gaussian_vec(&mut rng, d - 1);
        let r = lune.corner_from(&weights)?;
        let v = sampling::gaussian_vec(&mut rng, d + 1);
        let v = linalg::axpy(&v, -dot(&v, r.coords()), r.coords());
        let v = linalg::axpy(&v, -dot(&v, b.coords()), b.coords());
        let Some(dir) = linalg::normalized(&v) else {
            continue;
        };
        let s = 10f64.powf(rng.random_range(-12.0..-1.0));
        let x = sampling::exp_map(&r, &dir, s);
        if (raw_dist(x.coords(), b.coords()) - FRAC_PI_2).abs() > 1e-9 {
            continue;
        }
        if lune_contains(&lune, &x)? {
            inside += 1;
            worst = worst.max(g.dot(&x).abs()).max(h.dot(&x).abs());
        }
    }
    let input = json!({
        "g": point_json(&g),
        "h": point_json(&h),
        "points_in_lune": inside,
    });
    Ok(Trial::check(worst, CORNER_TOL, input))
}

/// `|x1' m|, |x2' m| <= pi/2 - mu` imply `|x' m| <= pi/2 - mu`.
fn lemma4(_: &Context, _: usize, seed: u64, tol: f64) -> Result<Trial> {
    let mut rng = sampling::rng(seed, 4);
    let d = rng.random_range(2..=4);
    let on_equator = |rng: &mut _, o: &UnitPoint| -> Result<UnitPoint> {
        UnitPoint::new(sampling::random_tangent(rng, o))
    };
    for _ in 0..1000 {
        let o = sampling::uniform_sphere(&mut rng, d);
        let mu = rng.random_range(0.05..FRAC_PI_2 - 0.05);
        let r = FRAC_PI_2 - mu;
        let x1 = on_equator(&mut rng, &o)?;
        let x2 = on_equator(&mut rng, &o)?;
        let gap = raw_dist(x1.coords(), x2.coords());
        if gap >= PI - mu || gap < 1e-6 {
            continue;
        }
        let x1p = sphere::point_along(&x1, &o, mu)?;
        let x2p = sphere::point_along(&x2, &o, mu)?;
        if raw_dist(x1p.coords(), x2p.coords()) > 2.0 * r {
            continue;
        }
        let on_rim = rng.random_bool(0.5);
        let mut m = None;
        for _ in 0..200 {
            let cand = if on_rim {
                sampling::on_sphere_around(&mut rng, &x1p, r)
            } else {
                sampling::uniform_cap(&mut rng, &x1p, r)
            };
            if raw_dist(cand.coords(), x2p.coords()) <= r {
                m = Some(cand);
                break;
            }
        }
        let Some(m) = m else { continue };
        let t: f64 = rng.random();
        let x = sphere::geodesic_point(&x1, &x2, t)?;
        let xp = sphere::point_along(&x, &o, mu)?;
        let residual = (raw_dist(xp.coords(), m.coords()) - r).max(0.0);
        let input = json!({
            "o": point_json(&o),
            "mu": mu,
            "x1": point_json(&x1),
            "x2": point_json(&x2),
            "t": t,
            "m": point_json(&m),
        });
        return Ok(Trial::check(residual, tol, input));
    }
    Err(Error::InvariantViolation(
        "no admissible Lemma 4 instance".into(),
    ))
}

/// Caratheodory: at most `d + 1` extreme points whose hull holds `x`.
fn lemma5(_: &Context, _: usize, seed: u64, tol: f64) -> Result<Trial> {
    let mut rng = sampling::rng(seed, 5);
    let c = random_polytope(&mut rng, &[2, 3], (0.3, 1.2), seed)?;
    let p = c.as_polytope().expect("random bodies are polytopes");
    let w = sampling::dirichlet(&mut rng, p.vertices().len());
    let mut x = vec![0.0; p.dim() + 1];
    for (wi, v) in w.iter().zip(p.vertices()) {
        x = linalg::axpy(&x, *wi, v.coords());
    }
    let x = UnitPoint::new(x)?;
    let sub = p.caratheodory(&x)?;
    let extreme = p.extreme_points();
    let input = json!({ "body": spec_json(&c), "x": point_json(&x), "size": sub.len() });
    if sub.len() > p.dim() + 1 {
        return Ok(Trial::failed(
            input,
            format!("{} points returned", sub.len()),
        ));
    }
    if let Some(s) = sub.iter().find(|s| !extreme.contains(s)) {
        return Ok(Trial::failed(input, format!("{s:?} is not extreme")));
    }
    let cols: Vec<&[f64]> = sub.iter().map(|s| s.coords()).collect();
    let fit = linalg::nnls(&cols, x.coords());
    Ok(Trial::check(fit.residual_norm, tol, input))
}

/// Failure message when the diameter arc runs along the boundary: the center
/// of the orthogonal hemisphere is then a boundary point and the width there
/// is exactly pi/2.
pub const DEGENERATE_DIAMETER: &str = "diameter arc lies on the boundary";

/// For diameter above pi/2 the hemisphere orthogonal to a diameter arc
/// supports the body and the width there exceeds pi/2.
fn lemma7(_: &Context, _: usize, seed: u64, tol: f64) -> Result<Trial> {
    let mut rng = sampling::rng(seed, 7);
    for attempt in 0..50u64 {
        let c = random_polytope(&mut rng, &[2, 3], (1.0, 1.45), split_seed(seed, attempt))?;
        let (diam, p, q) = metrics::diameter(&c)?;
        if diam.radians() <= FRAC_PI_2 + 1e-3 {
            continue;
        }
        let input = json!({ "body": spec_json(&c), "diameter": diam.radians() });
        let h = metrics::orthogonal_diameter_support(&c, &p, &q)?;
        let margin = c.support_margin(&h.center)?;
        if margin < -tol {
            return Ok(Trial::check(-margin, tol, input));
        }
        let width = metrics::width_at(&c, &h.center)?.value.radians();
        if width <= FRAC_PI_2 {
            let message = if c.depth(&h.center)?.abs() <= 1e-9 {
                format!("{DEGENERATE_DIAMETER}; width {width}")
            } else {
                format!("width {width} does not exceed pi/2")
            };
            return Ok(Trial::failed(input, message));
        }
        return Ok(Trial::check((-margin).max(0.0), tol, input));
    }
    Err(Error::InvariantViolation(
        "no body with diameter above pi/2".into(),
    ))
}

fn body_input(n: &Named, extra: Value) -> Value {
    json!({ "body": n.name, "constructor": spec_json(&n.body), "detail": extra })
}

/// Inscribed ball of radius `w - pi/2` touching at a boundary point.
fn touching_ball(ctx: &Context, trial: usize, seed: u64, tol: f64) -> Result<Trial> {
    let n = pick(ctx, trial);
    let tol = tol.max(n.tol);
    let p = n.body.sample_boundary(1, seed).remove(0);
    let tols = Tolerances {
        checker: tol,
        ..Tolerances::default()
    };
    let ball = metrics::inscribed_ball_at(&n.body, &p, angle(n.w), &tols)?;
    let input = body_input(
        n,
        json!({ "p": point_json(&p), "center": point_json(&ball.center) }),
    );
    let r = n.w - FRAC_PI_2;
    let geometry = (ball.radius.radians() - r)
        .abs()
        .max((raw_dist(p.coords(), ball.center.coords()) - r).abs());
    if geometry > 1e-9 {
        return Ok(Trial::failed(
            input,
            format!("ball placement off by {geometry:e}"),
        ));
    }
    Ok(Trial::check((-ball.min_margin).max(0.0), tol, input))
}

/// Strictly convex bodies pass the midpoint test; the orthant must fail it.
fn strict_convexity(ctx: &Context, trial: usize, seed: u64, _tol: f64) -> Result<Trial> {
    let n = pick(ctx, trial);
    let expect_strict = !n.name.starts_with("orthant");
    let r = metrics::check_strict_convexity(&n.body, 100, 0.0, seed)?;
    let input = body_input(
        n,
        json!({ "min_margin": r.min_margin, "expect_strict": expect_strict }),
    );
    Ok(if r.pass == expect_strict {
        Trial {
            pass: true,
            residual: 0.0,
            input,
            message: String::new(),
        }
    } else {
        Trial {
            pass: false,
            residual: r.min_margin.abs(),
            input,
            message: format!(
                "strict convexity check returned {} (min margin {:e})",
                r.pass, r.min_margin
            ),
        }
    })
}

/// Every boundary point is the center of a bounding semisphere of a lune of
/// thickness `w` containing the body.
fn center_lune(ctx: &Context, trial: usize, seed: u64, tol: f64) -> Result<Trial> {
    let n = pick(ctx, trial);
    let tol = tol.max(n.tol);
    let p = n.body.sample_boundary(1, seed).remove(0);
    let tols = Tolerances {
        checker: tol,
        ..Tolerances::default()
    };
    let input = body_input(n, json!({ "p": point_json(&p) }));
    Ok(
        match metrics::width_lune_at(&n.body, &p, angle(n.w), &tols) {
            Ok(l) => {
                let off = (l.thickness().radians() - n.w).abs();
                Trial::check(off, tol, input)
            }
            Err(e @ Error::CenterConditionFailed { .. }) => Trial::failed(input, e.to_string()),
            Err(e) => return Err(e),
        },
    )
}

fn diam_eq_width(ctx: &Context, trial: usize, _seed: u64, tol: f64) -> Result<Trial> {
    let n = pick(ctx, trial);
    let (diam, _, _) = metrics::diameter(&n.body)?;
    let input = body_input(n, json!({ "w": n.w, "diameter": diam.radians() }));
    Ok(Trial::check(
        (diam.radians() - n.w).abs(),
        tol.max(n.tol),
        input,
    ))
}

/// Constant width implies constant diameter; for `w >= pi/2` the converse.
fn width_diam_equivalence(ctx: &Context, trial: usize, seed: u64, tol: f64) -> Result<Trial> {
    let n = pick(ctx, trial);
    let tol = tol.max(n.tol);
    let cw = metrics::check_constant_width(&n.body, 256, tol, seed)?;
    let cd = metrics::check_constant_diameter(&n.body, 256, tol, seed)?;
    let input = body_input(
        n,
        json!({
            "width_pass": cw.pass,
            "width_spread": cw.spread,
            "diameter_pass": cd.pass,
            "diameter_spread": cd.spread,
        }),
    );
    if cw.pass && !cd.pass {
        return Ok(Trial {
            pass: false,
            residual: cd.spread,
            input,
            message: "constant width without constant diameter".into(),
        });
    }
    if cd.pass && n.w >= FRAC_PI_2 && !cw.pass {
        return Ok(Trial {
            pass: false,
            residual: cw.spread,
            input,
            message: "constant diameter w >= pi/2 without constant width".into(),
        });
    }
    Ok(Trial::check(0.0, tol, input))
}

/// Centers of the semispheres bounding a narrowest lune lie on the boundary.
fn minimal_lune_centers(ctx: &Context, trial: usize, seed: u64, tol: f64) -> Result<Trial> {
    let n = pick(ctx, trial);
    let k = n.body.dual_region().sample_boundary(1, seed).remove(0);
    let r = metrics::width_at(&n.body, &k)?;
    let a = n.body.depth(r.lune.c_gh())?.abs();
    let b = n.body.depth(r.lune.c_hg())?.abs();
    let input = body_input(
        n,
        json!({ "k": point_json(&k), "width": r.value.radians() }),
    );
    Ok(Trial::check(a.max(b), tol.max(n.tol), input))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_suite() {
        assert_eq!(
            run_suite("lemma9", 1, 1, 1e-9).unwrap_err(),
            Error::UnknownSuite("lemma9".into())
        );
    }

    #[test]
    fn cheap_suites_pass_and_repeat() {
        for name in ["lemma1", "lemma2", "lemma3", "lemma4", "lemma5", "lemma7"] {
            let a = run_suite(name, 40, 3, 1e-9).unwrap();
            if name == "lemma7" {
                assert!(a
                    .failures
                    .iter()
                    .all(|f| f.message.starts_with(DEGENERATE_DIAMETER)));
            } else {
                assert_eq!(a.passes, 40, "{name}: {:?}", a.failures.first());
            }
            let b = run_suite(name, 40, 3, 1e-9).unwrap();
            assert_eq!(
                crate::harness::to_json(&a.strip_meta()).unwrap(),
                crate::harness::to_json(&b.strip_meta()).unwrap()
            );
        }
    }

    #[test]
    fn failures_replay() {
        // an impossible tolerance turns every Lemma 5 trial into a failure
        let r = run_suite("lemma5", 4, 11, -1.0).unwrap();
        assert_eq!(r.failures.len(), 4);
        for f in &r.failures {
            let t = replay("lemma5", 11, f, -1.0).unwrap();
            assert!((t.residual - f.residual).abs() <= 1e-12);
        }
    }

    #[test]
    fn zero_trials() {
        let r = run_suite("thm-touching-ball", 0, 1, 1e-9).unwrap();
        assert_eq!((r.trials, r.passes), (0, 0));
    }
}
