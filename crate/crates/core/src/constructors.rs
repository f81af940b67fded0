//! Example bodies: balls, orthants, Reuleaux odd-gons, the constant-width
//! body on `S^3` built from a circle and a cone over it, random polytopes and
//! perturbations.
//!
//! Sampled constructors keep their analytic boundary ([`ExactBoundary`])
//! next to the polytope, so checkers can tell representation error from
//! geometric error. Boundary samples come from nested sequences: asking for
//! more samples keeps every earlier point.

use std::f64::consts::{FRAC_PI_2, PI};

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::bodies::{self, BallBody, PolytopeBody, SphericalBody};
use crate::error::{Error, Result};
use crate::linalg::{self, dot};
use crate::sampling::{self, RSequence};
use crate::sphere::{self, raw_dist, Angle, UnitPoint};

/// Recipe for a body; replaying it reproduces the body exactly.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConstructorSpec {
    #[serde(flatten)]
    pub params: ConstructorParams,
    pub dim: usize,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "params", rename_all = "snake_case")]
pub enum ConstructorParams {
    Ball {
        center: UnitPoint,
        rho: f64,
    },
    Orthant {},
    Reuleaux {
        n: usize,
        w: f64,
        samples: usize,
        #[serde(default, skip_serializing_if = "std::ops::Not::not")]
        extended: bool,
    },
    ExampleS3 {
        kappa: f64,
        sigma: f64,
        samples: usize,
    },
    Random {
        n_points: usize,
        spread: f64,
    },
    Perturb {
        base: Box<ConstructorSpec>,
        eps: f64,
    },
    /// Intersection of balls of radius `w`; the candidate family of the
    /// constant-diameter search.
    BallIntersection {
        centers: Vec<UnitPoint>,
        w: f64,
        samples: usize,
    },
}

impl ConstructorSpec {
    pub fn kind(&self) -> &'static str {
        match self.params {
            ConstructorParams::Ball { .. } => "ball",
            ConstructorParams::Orthant {} => "orthant",
            ConstructorParams::Reuleaux { .. } => "reuleaux",
            ConstructorParams::ExampleS3 { .. } => "example_s3",
            ConstructorParams::Random { .. } => "random",
            ConstructorParams::Perturb { .. } => "perturb",
            ConstructorParams::BallIntersection { .. } => "ball_intersection",
        }
    }

    pub fn build(&self) -> Result<SphericalBody> {
        match &self.params {
            ConstructorParams::Ball { center, rho } => {
                if center.dim() != self.dim {
                    return Err(Error::DimensionMismatch {
                        expected: self.dim,
                        found: center.dim(),
                    });
                }
                ball_body(center.clone(), Angle::new(*rho)?)
            }
            ConstructorParams::Orthant {} => orthant_body(self.dim),
            ConstructorParams::Reuleaux {
                n,
                w,
                samples,
                extended,
            } => {
                self.expect_dim(2)?;
                reuleaux_odd_gon_ext(*n, Angle::new(*w)?, *samples, self.seed, *extended)
            }
            ConstructorParams::ExampleS3 {
                kappa,
                sigma,
                samples,
            } => {
                self.expect_dim(3)?;
                example_s3_body(
                    Angle::new(*kappa)?,
                    Angle::new(*sigma)?,
                    *samples,
                    self.seed,
                )
            }
            ConstructorParams::Random { n_points, spread } => {
                random_body(self.dim, *n_points, Angle::new(*spread)?, self.seed)
            }
            ConstructorParams::Perturb { base, eps } => {
                let b = base.build()?;
                let p = b.as_polytope().ok_or_else(|| {
                    Error::InvalidParameter("perturb needs a polytope base".into())
                })?;
                let out = perturb(p, Angle::new(*eps)?, self.seed)?;
                Ok(SphericalBody::polytope(out).with_constructor(self.clone()))
            }
            ConstructorParams::BallIntersection {
                centers,
                w,
                samples,
            } => ball_intersection_body(centers, Angle::new(*w)?, *samples, self.seed),
        }
    }

    /// The analytic boundary implied by the spec, without building the
    /// polytope.
    pub fn exact_boundary(&self) -> Result<Option<ExactBoundary>> {
        Ok(match &self.params {
            ConstructorParams::Orthant {} => {
                Some(ExactBoundary::Orthant(OrthantShape::standard(self.dim)))
            }
            ConstructorParams::Reuleaux { n, w, extended, .. } => Some(ExactBoundary::Reuleaux(
                ReuleauxShape::new(*n, *w, self.seed, *extended)?,
            )),
            ConstructorParams::ExampleS3 { kappa, sigma, .. } => Some(ExactBoundary::ExampleS3(
                ExampleS3Shape::new(*kappa, *sigma, self.seed)?,
            )),
            ConstructorParams::BallIntersection { centers, w, .. } => Some(
                ExactBoundary::BallIntersection(BallIntersectionShape::new(centers, *w)?),
            ),
            _ => None,
        })
    }

    fn expect_dim(&self, d: usize) -> Result<()> {
        if self.dim != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: self.dim,
            });
        }
        Ok(())
    }
}

/// Analytic boundary of a constructed body.
#[derive(Clone, Debug)]
pub enum ExactBoundary {
    Orthant(OrthantShape),
    Reuleaux(ReuleauxShape),
    ExampleS3(ExampleS3Shape),
    BallIntersection(BallIntersectionShape),
}

impl ExactBoundary {
    pub fn sample<R: Rng>(&self, rng: &mut R) -> UnitPoint {
        match self {
            ExactBoundary::Orthant(s) => s.sample(rng),
            ExactBoundary::Reuleaux(s) => s.point_at(rng.random_range(0..s.n), rng.random()),
            ExactBoundary::ExampleS3(s) => {
                let u = [rng.random(), rng.random(), rng.random()];
                s.point(&u)
            }
            ExactBoundary::BallIntersection(s) => {
                let t = sampling::random_tangent(rng, &s.interior);
                s.boundary_along(&t)
            }
        }
    }

    /// Signed depth when it has a closed form.
    pub fn depth(&self, z: &UnitPoint) -> Option<f64> {
        match self {
            ExactBoundary::Orthant(s) => Some(
                s.frame
                    .iter()
                    .map(|f| dot(f, z.coords()))
                    .fold(f64::INFINITY, f64::min),
            ),
            ExactBoundary::Reuleaux(s) => Some(balls_depth(&s.vertices, s.w, z)),
            ExactBoundary::ExampleS3(_) => None,
            ExactBoundary::BallIntersection(s) => Some(balls_depth(&s.centers, s.w, z)),
        }
    }
}

/// `{x : <f_i, x> >= 0}` for an orthonormal frame `f`.
#[derive(Clone, Debug)]
pub struct OrthantShape {
    pub frame: Vec<Vec<f64>>,
}

impl OrthantShape {
    fn standard(dim: usize) -> Self {
        let frame = (0..=dim)
            .map(|i| UnitPoint::basis(dim, i).coords().to_vec())
            .collect();
        OrthantShape { frame }
    }

    /// A point of a random facet with flat Dirichlet weights on the facet's
    /// frame vectors.
    fn sample<R: Rng>(&self, rng: &mut R) -> UnitPoint {
        let n = self.frame.len();
        let skip = rng.random_range(0..n);
        let w = sampling::dirichlet(rng, n - 1);
        let mut x = vec![0.0; n];
        for (wi, f) in w
            .iter()
            .zip(self.frame.iter().enumerate().filter(|(i, _)| *i != skip))
        {
            x = linalg::axpy(&x, *wi, f.1);
        }
        UnitPoint::new(x).expect("facet combination is nonzero")
    }
}

pub fn ball_body(center: UnitPoint, rho: Angle) -> Result<SphericalBody> {
    let spec = ConstructorSpec {
        dim: center.dim(),
        seed: 0,
        params: ConstructorParams::Ball {
            center: center.clone(),
            rho: rho.radians(),
        },
    };
    Ok(SphericalBody::ball(BallBody::new(center, rho)?).with_constructor(spec))
}

pub fn orthant_body(d: usize) -> Result<SphericalBody> {
    if d < 2 {
        return Err(Error::DimensionTooSmall(d));
    }
    let pts: Vec<UnitPoint> = (0..=d).map(|i| UnitPoint::basis(d, i)).collect();
    let spec = ConstructorSpec {
        dim: d,
        seed: 0,
        params: ConstructorParams::Orthant {},
    };
    Ok(
        SphericalBody::polytope(bodies::polytope_from_points(d, &pts)?)
            .with_exact(ExactBoundary::Orthant(OrthantShape::standard(d)))
            .with_constructor(spec),
    )
}

/// Radical inverse in base 2; `vdc(0..2^k)` is the uniform grid of step
/// `2^-k` in some order.
fn van_der_corput(mut i: u64) -> f64 {
    let mut x = 0.0;
    let mut f = 0.5;
    while i > 0 {
        if i & 1 == 1 {
            x += f;
        }
        i >>= 1;
        f *= 0.5;
    }
    x
}

fn rotation_for(seed: u64, n: usize) -> Vec<Vec<f64>> {
    let mut rng = sampling::rng(seed, 0x0707);
    sampling::random_rotation(&mut rng, n)
}

fn rotate(rot: &[Vec<f64>], x: &[f64]) -> UnitPoint {
    UnitPoint::new(sampling::apply(rot, x)).expect("rotation preserves norm")
}

/// Regular spherical odd-gon around a pole with circular arcs of radius `w`
/// about opposite vertices.
#[derive(Clone, Debug)]
pub struct ReuleauxShape {
    pub n: usize,
    pub w: f64,
    /// Circumradius of the vertex polygon.
    pub circumradius: f64,
    pub vertices: Vec<UnitPoint>,
}

/// Circumradius `r` of the regular `n`-gon whose vertices `(n-1)/2` apart are
/// at distance `w`, by bisection on the spherical law of cosines.
pub fn reuleaux_circumradius(n: usize, w: f64) -> Result<f64> {
    let phi = PI * (n as f64 - 1.0) / n as f64;
    let gap = |r: f64| {
        let (s, c) = r.sin_cos();
        (c * c + s * s * phi.cos()).clamp(-1.0, 1.0).acos() - w
    };
    let (mut lo, mut hi) = (0.0_f64, FRAC_PI_2);
    if gap(lo) > 0.0 || gap(hi) < 0.0 {
        return Err(Error::NoSolution);
    }
    while hi - lo > 1e-15 {
        let mid = 0.5 * (lo + hi);
        if gap(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

impl ReuleauxShape {
    fn new(n: usize, w: f64, seed: u64, extended: bool) -> Result<Self> {
        if n.is_multiple_of(2) {
            return Err(Error::EvenN(n));
        }
        if n < 3 {
            return Err(Error::InvalidParameter(format!("n = {n} is below 3")));
        }
        let upper = if extended { PI } else { FRAC_PI_2 };
        if !(w > 0.0 && w < upper) {
            return Err(Error::WidthOutOfRange(w));
        }
        let r = reuleaux_circumradius(n, w)?;
        let rot = rotation_for(seed, 3);
        let vertices = (0..n)
            .map(|i| {
                let th = 2.0 * PI * i as f64 / n as f64;
                rotate(&rot, &[r.sin() * th.cos(), r.sin() * th.sin(), r.cos()])
            })
            .collect();
        Ok(ReuleauxShape {
            n,
            w,
            circumradius: r,
            vertices,
        })
    }

    /// Endpoints of arc `i` (centered at vertex `i`).
    pub fn arc_ends(&self, i: usize) -> (usize, usize) {
        let m = (self.n - 1) / 2;
        ((i + m) % self.n, (i + m + 1) % self.n)
    }

    /// Point at parameter `t` in `[0, 1]` of arc `i`.
    pub fn point_at(&self, i: usize, t: f64) -> UnitPoint {
        let c = &self.vertices[i];
        let (a, b) = self.arc_ends(i);
        let ta = sphere::tangent_toward(c, &self.vertices[a]).expect("distinct vertices");
        let tb = sphere::tangent_toward(c, &self.vertices[b]).expect("distinct vertices");
        let t = slerp(&ta, &tb, t);
        sampling::exp_map(c, &t, self.w)
    }
}

/// Signed depth in an intersection of balls of radius `w`: the distance to
/// the complement is the smallest `w - |z c_i|`.
fn balls_depth(centers: &[UnitPoint], w: f64, z: &UnitPoint) -> f64 {
    centers
        .iter()
        .map(|c| (w - raw_dist(c.coords(), z.coords())).min(FRAC_PI_2).sin())
        .fold(f64::INFINITY, f64::min)
}

/// Slerp between unit vectors.
fn slerp(a: &[f64], b: &[f64], t: f64) -> Vec<f64> {
    let th = raw_dist(a, b);
    if th < 1e-15 {
        return a.to_vec();
    }
    let s = th.sin();
    let wa = ((1.0 - t) * th).sin() / s;
    let wb = (t * th).sin() / s;
    linalg::axpy(&linalg::scale(a, wa), wb, b)
}

pub fn reuleaux_odd_gon(n: usize, w: Angle, samples: usize, seed: u64) -> Result<SphericalBody> {
    reuleaux_odd_gon_ext(n, w, samples, seed, false)
}

/// [`reuleaux_odd_gon`] with the width range optionally opened up to `pi`.
pub fn reuleaux_odd_gon_ext(
    n: usize,
    w: Angle,
    samples: usize,
    seed: u64,
    extended: bool,
) -> Result<SphericalBody> {
    let shape = ReuleauxShape::new(n, w.radians(), seed, extended)?;
    if samples < n {
        return Err(Error::TooFewPoints {
            needed: n,
            got: samples,
        });
    }
    let mut pts = shape.vertices.clone();
    for j in 0..samples {
        pts.push(shape.point_at(j % n, van_der_corput((j / n) as u64)));
    }
    let poly = bodies::polytope_from_points(2, &pts)?;
    let spec = ConstructorSpec {
        dim: 2,
        seed,
        params: ConstructorParams::Reuleaux {
            n,
            w: w.radians(),
            samples,
            extended,
        },
    };
    Ok(SphericalBody::polytope(poly)
        .with_exact(ExactBoundary::Reuleaux(shape))
        .with_constructor(spec))
}

/// Intersection of the balls `B_w(c_i)`, `w < pi/2`.
#[derive(Clone, Debug)]
pub struct BallIntersectionShape {
    pub centers: Vec<UnitPoint>,
    pub w: f64,
    /// Normalized sum of the centers; must lie strictly inside.
    pub interior: UnitPoint,
}

impl BallIntersectionShape {
    fn new(centers: &[UnitPoint], w: f64) -> Result<Self> {
        if !(w > 0.0 && w < FRAC_PI_2) {
            return Err(Error::WidthOutOfRange(w));
        }
        let first = centers.first().ok_or(Error::EmptyPointSet)?;
        let mut sum = vec![0.0; first.dim() + 1];
        for c in centers {
            first.check_dim(c)?;
            sum = linalg::axpy(&sum, 1.0, c.coords());
        }
        let interior = UnitPoint::new(sum).map_err(|_| Error::NoSolution)?;
        if balls_depth(centers, w, &interior) <= 0.0 {
            return Err(Error::NoSolution);
        }
        Ok(BallIntersectionShape {
            centers: centers.to_vec(),
            w,
            interior,
        })
    }

    /// Boundary point on the ray from the interior point along tangent `t`.
    fn boundary_along(&self, t: &[f64]) -> UnitPoint {
        let (mut lo, mut hi) = (0.0, self.w + FRAC_PI_2);
        for _ in 0..64 {
            let mid = 0.5 * (lo + hi);
            if balls_depth(
                &self.centers,
                self.w,
                &sampling::exp_map(&self.interior, t, mid),
            ) >= 0.0
            {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        sampling::exp_map(&self.interior, t, lo)
    }
}

/// Intersection of balls of radius `w` about `centers`, realized as the hull
/// of `samples` seeded boundary points.
pub fn ball_intersection_body(
    centers: &[UnitPoint],
    w: Angle,
    samples: usize,
    seed: u64,
) -> Result<SphericalBody> {
    let shape = BallIntersectionShape::new(centers, w.radians())?;
    let dim = shape.interior.dim();
    if samples < dim + 2 {
        return Err(Error::TooFewPoints {
            needed: dim + 2,
            got: samples,
        });
    }
    let mut rng = sampling::rng(seed, 0xB1);
    let pts: Vec<UnitPoint> = (0..samples)
        .map(|_| shape.boundary_along(&sampling::random_tangent(&mut rng, &shape.interior)))
        .collect();
    let poly = bodies::polytope_from_points(dim, &pts)?;
    let spec = ConstructorSpec {
        dim,
        seed,
        params: ConstructorParams::BallIntersection {
            centers: centers.to_vec(),
            w: w.radians(),
            samples,
        },
    };
    Ok(SphericalBody::polytope(poly)
        .with_exact(ExactBoundary::BallIntersection(shape))
        .with_constructor(spec))
}

/// The constant-width body on `S^3` built over a circle `X` of diameter
/// `kappa` and the apex `y` at distance `kappa` from all of `X`.
///
/// Canonical frame: `y = e4`; tangent directions at `y` are the first three
/// coordinates, and `X` consists of the points at distance `kappa` from `y`
/// whose direction makes angle `beta` with `e3`, where
/// `cos(2 beta) = cos(kappa) / (1 + cos(kappa))` makes opposite points of `X`
/// exactly `kappa` apart.
#[derive(Clone, Debug)]
pub struct ExampleS3Shape {
    pub kappa: f64,
    pub sigma: f64,
    pub beta: f64,
    rot: Vec<Vec<f64>>,
    /// Area-like weights of the pieces A+, B+, C, D.
    weights: [f64; 4],
}

impl ExampleS3Shape {
    fn new(kappa: f64, sigma: f64, seed: u64) -> Result<Self> {
        if !(kappa > 0.0 && kappa < FRAC_PI_2) {
            return Err(Error::KappaOutOfRange(kappa));
        }
        let max = FRAC_PI_2 - kappa;
        if !(sigma > 0.0 && sigma <= max + 1e-15) {
            return Err(Error::SigmaOutOfRange { sigma, max });
        }
        let beta = 0.5 * (kappa.cos() / (1.0 + kappa.cos())).acos();
        let mut s = ExampleS3Shape {
            kappa,
            sigma,
            beta,
            rot: rotation_for(seed, 4),
            weights: [0.0; 4],
        };
        let cap = 2.0 * PI * (1.0 - beta.cos());
        let ring = 2.0 * PI * (kappa / 2.0).sin();
        let (ta, tb) = s.c_tangents(0.0);
        let (da, db) = s.d_tangents(0.0);
        s.weights = [
            cap * sigma.sin().powi(2),
            cap * (kappa + sigma).sin().powi(2),
            ring * sigma.sin() * raw_dist(&ta, &tb),
            ring * (kappa + sigma).sin() * raw_dist(&da, &db),
        ];
        Ok(s)
    }

    pub fn width(&self) -> f64 {
        self.kappa + 2.0 * self.sigma
    }

    fn dir(&self, phi: f64) -> [f64; 3] {
        let (sb, cb) = self.beta.sin_cos();
        [sb * phi.cos(), sb * phi.sin(), cb]
    }

    /// Point at distance `s` from `y` in tangent direction `u`, canonical
    /// frame.
    fn from_apex(u: &[f64; 3], s: f64) -> Vec<f64> {
        let (sn, cs) = s.sin_cos();
        vec![sn * u[0], sn * u[1], sn * u[2], cs]
    }

    fn canon_x(&self, phi: f64) -> UnitPoint {
        UnitPoint::from_unit(Self::from_apex(&self.dir(phi), self.kappa))
            .expect("unit by construction")
    }

    /// Tangents at `x(phi)` spanning the arc `C_x`: away from `y` (toward
    /// `b`) and away from `x'` (toward `d`).
    fn c_tangents(&self, phi: f64) -> (Vec<f64>, Vec<f64>) {
        let x = self.canon_x(phi);
        let y = UnitPoint::basis(3, 3);
        let xp = self.canon_x(phi + PI);
        let tb = linalg::scale(&sphere::tangent_toward(&x, &y).expect("distinct"), -1.0);
        let td = linalg::scale(&sphere::tangent_toward(&x, &xp).expect("distinct"), -1.0);
        (tb, td)
    }

    /// Tangents at `x(phi)` spanning `D_x`: toward `y` (hence `a`) and toward
    /// `x'` (hence `d'`).
    fn d_tangents(&self, phi: f64) -> (Vec<f64>, Vec<f64>) {
        let (tb, td) = self.c_tangents(phi);
        (linalg::scale(&tb, -1.0), linalg::scale(&td, -1.0))
    }

    /// Unrotated point of the boundary for `u` in `[0, 1)^3`: `u[0]` picks
    /// the piece by weight, the rest parametrize it.
    fn canon_point(&self, u: &[f64; 3]) -> UnitPoint {
        let total: f64 = self.weights.iter().sum();
        let mut pick = u[0] * total;
        let mut piece = 3;
        for (i, w) in self.weights.iter().enumerate() {
            if pick < *w {
                piece = i;
                break;
            }
            pick -= w;
        }
        let phi = 2.0 * PI * u[1];
        match piece {
            0 | 1 => {
                // cap around -e3 (A+) or e3 (B+) of angular radius beta,
                // area-uniform in the direction sphere
                let ct = 1.0 - u[2] * (1.0 - self.beta.cos());
                let st = (1.0 - ct * ct).max(0.0).sqrt();
                if piece == 0 {
                    let v = [st * phi.cos(), st * phi.sin(), -ct];
                    UnitPoint::from_unit(Self::from_apex(&v, self.sigma)).expect("unit")
                } else {
                    let v = [st * phi.cos(), st * phi.sin(), ct];
                    UnitPoint::from_unit(Self::from_apex(&v, self.kappa + self.sigma))
                        .expect("unit")
                }
            }
            2 => {
                let (t0, t1) = self.c_tangents(phi);
                sampling::exp_map(&self.canon_x(phi), &slerp(&t0, &t1, u[2]), self.sigma)
            }
            _ => {
                let (t0, t1) = self.d_tangents(phi);
                sampling::exp_map(
                    &self.canon_x(phi),
                    &slerp(&t0, &t1, u[2]),
                    self.kappa + self.sigma,
                )
            }
        }
    }

    pub fn point(&self, u: &[f64; 3]) -> UnitPoint {
        rotate(&self.rot, self.canon_point(u).coords())
    }

    /// Named points in the final frame, for validation: `y`, `x(phi)`,
    /// `x(phi + pi)`, `a`, `b`, `d`, `d'`.
    pub fn landmarks(&self, phi: f64) -> Landmarks {
        let y = UnitPoint::basis(3, 3);
        let x = self.canon_x(phi);
        let xp = self.canon_x(phi + PI);
        let u = self.dir(phi);
        let a = Self::from_apex(&[-u[0], -u[1], -u[2]], self.sigma);
        let b = Self::from_apex(&u, self.kappa + self.sigma);
        let d = sphere::point_along(&x, &xp, -self.sigma).expect("distinct");
        let dp = sphere::point_along(&xp, &x, -self.sigma).expect("distinct");
        let r = |p: &[f64]| rotate(&self.rot, p);
        Landmarks {
            y: r(y.coords()),
            x: r(x.coords()),
            x_opp: r(xp.coords()),
            a: r(&a),
            b: r(&b),
            d: r(d.coords()),
            d_opp: r(dp.coords()),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Landmarks {
    pub y: UnitPoint,
    pub x: UnitPoint,
    pub x_opp: UnitPoint,
    pub a: UnitPoint,
    pub b: UnitPoint,
    pub d: UnitPoint,
    pub d_opp: UnitPoint,
}

pub fn example_s3_body(
    kappa: Angle,
    sigma: Angle,
    samples: usize,
    seed: u64,
) -> Result<SphericalBody> {
    let shape = ExampleS3Shape::new(kappa.radians(), sigma.radians(), seed)?;
    if samples < 5 {
        return Err(Error::TooFewPoints {
            needed: 5,
            got: samples,
        });
    }
    let seq = RSequence::new(3, seed);
    let pts: Vec<UnitPoint> = (0..samples as u64)
        .map(|i| {
            let u = seq.point(i);
            shape.point(&[u[0], u[1], u[2]])
        })
        .collect();
    let poly = bodies::polytope_from_points(3, &pts)?;
    let spec = ConstructorSpec {
        dim: 3,
        seed,
        params: ConstructorParams::ExampleS3 {
            kappa: kappa.radians(),
            sigma: sigma.radians(),
            samples,
        },
    };
    Ok(SphericalBody::polytope(poly)
        .with_exact(ExactBoundary::ExampleS3(shape))
        .with_constructor(spec))
}

/// `n_points` uniform points of a cap of radius `spread` about a random
/// center, redrawn until the hull is full-dimensional.
pub fn random_body(d: usize, n_points: usize, spread: Angle, seed: u64) -> Result<SphericalBody> {
    if d < 2 {
        return Err(Error::DimensionTooSmall(d));
    }
    if n_points < d + 2 {
        return Err(Error::TooFewPoints {
            needed: d + 2,
            got: n_points,
        });
    }
    let s = spread.radians();
    if !(s > 0.0 && s < FRAC_PI_2) {
        return Err(Error::InvalidParameter(format!(
            "spread {s} outside (0, pi/2)"
        )));
    }
    let mut rng = sampling::rng(seed, 0x4A4D);
    for _ in 0..100 {
        let c = sampling::uniform_sphere(&mut rng, d);
        let pts: Vec<UnitPoint> = (0..n_points)
            .map(|_| sampling::uniform_cap(&mut rng, &c, s))
            .collect();
        if let Ok(p) = bodies::polytope_from_points(d, &pts) {
            let spec = ConstructorSpec {
                dim: d,
                seed,
                params: ConstructorParams::Random {
                    n_points,
                    spread: s,
                },
            };
            return Ok(SphericalBody::polytope(p).with_constructor(spec));
        }
    }
    Err(Error::NoSolution)
}

/// Moves every vertex a distance `eps` in a seeded random tangent direction.
pub fn perturb(c: &PolytopeBody, eps: Angle, seed: u64) -> Result<PolytopeBody> {
    let e = eps.radians();
    if e >= PI / 4.0 {
        return Err(Error::InvalidParameter(format!(
            "eps {e} is not below pi/4"
        )));
    }
    if e == 0.0 {
        return Ok(c.clone());
    }
    let mut rng = sampling::rng(seed, 0x9E47);
    let pts: Vec<UnitPoint> = c
        .vertices()
        .iter()
        .map(|v| {
            let t = sampling::random_tangent(&mut rng, v);
            sampling::exp_map(v, &t, e)
        })
        .collect();
    bodies::polytope_from_points(c.dim(), &pts)
        .map_err(|err| Error::InvariantViolation(err.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ball_and_orthant_guards() {
        assert_eq!(
            ball_body(UnitPoint::basis(2, 0), Angle::HALF_PI).unwrap_err(),
            Error::RadiusOutOfRange(FRAC_PI_2)
        );
        assert_eq!(orthant_body(1).unwrap_err(), Error::DimensionTooSmall(1));
        let o = orthant_body(3).unwrap();
        assert_eq!(o.as_polytope().unwrap().extreme_points().len(), 4);
    }

    #[test]
    fn reuleaux_vertex_distances() {
        // independent closed form: sin^2 r = (1 - cos w) / (1 - cos phi)
        for (n, w) in [(3usize, 1.0f64), (5, 0.8), (7, 1.3)] {
            let phi = PI * (n as f64 - 1.0) / n as f64;
            let r = reuleaux_circumradius(n, w).unwrap();
            let expect = ((1.0 - w.cos()) / (1.0 - phi.cos())).sqrt().asin();
            assert!((r - expect).abs() < 1e-12, "n={n}");
        }
        let body = reuleaux_odd_gon(5, Angle::new(0.8).unwrap(), 50, 4).unwrap();
        let Some(ExactBoundary::Reuleaux(s)) = body.exact() else {
            panic!()
        };
        for i in 0..5 {
            let d = raw_dist(s.vertices[i].coords(), s.vertices[(i + 2) % 5].coords());
            assert!((d - 0.8).abs() < 1e-10);
        }
        assert_eq!(
            reuleaux_odd_gon(4, Angle::new(0.8).unwrap(), 50, 4).unwrap_err(),
            Error::EvenN(4)
        );
        assert_eq!(
            reuleaux_odd_gon(3, Angle::new(1.7).unwrap(), 50, 4).unwrap_err(),
            Error::WidthOutOfRange(1.7)
        );
        assert!(reuleaux_odd_gon_ext(3, Angle::new(1.7).unwrap(), 50, 4, true).is_ok());
    }

    #[test]
    fn reuleaux_arcs_at_distance_w() {
        let s = ReuleauxShape::new(3, 1.0, 9, false).unwrap();
        for i in 0..3 {
            let (a, b) = s.arc_ends(i);
            assert!(raw_dist(s.point_at(i, 0.0).coords(), s.vertices[a].coords()) < 1e-12);
            assert!(raw_dist(s.point_at(i, 1.0).coords(), s.vertices[b].coords()) < 1e-12);
            for k in 0..=20 {
                let p = s.point_at(i, k as f64 / 20.0);
                assert!((raw_dist(p.coords(), s.vertices[i].coords()) - 1.0).abs() < 1e-10);
                assert!(balls_depth(&s.vertices, s.w, &p).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn example_s3_landmarks() {
        let (kappa, sigma) = (1.0, 0.35);
        let s = ExampleS3Shape::new(kappa, sigma, 2).unwrap();
        // circle center of X and its distance to the apex
        let mut c = vec![0.0; 4];
        for k in 0..64 {
            let l = s.landmarks(2.0 * PI * k as f64 / 64.0);
            c = linalg::axpy(&c, 1.0, l.x.coords());
            assert!((raw_dist(l.y.coords(), l.x.coords()) - kappa).abs() < 1e-10);
            assert!((raw_dist(l.x.coords(), l.x_opp.coords()) - kappa).abs() < 1e-10);
            assert!((raw_dist(l.a.coords(), l.b.coords()) - (kappa + 2.0 * sigma)).abs() < 1e-10);
            assert!(
                (raw_dist(l.d.coords(), l.d_opp.coords()) - (kappa + 2.0 * sigma)).abs() < 1e-10
            );
        }
        let c = UnitPoint::new(c).unwrap();
        let l = s.landmarks(0.3);
        let expect = (kappa.cos() / (kappa / 2.0).cos()).acos();
        assert!((raw_dist(l.y.coords(), c.coords()) - expect).abs() < 1e-10);
        assert!((raw_dist(l.x.coords(), c.coords()) - kappa / 2.0).abs() < 1e-10);
    }

    #[test]
    fn example_s3_guards() {
        assert!(matches!(
            example_s3_body(Angle::new(1.0).unwrap(), Angle::new(0.6).unwrap(), 100, 1),
            Err(Error::SigmaOutOfRange { .. })
        ));
        assert!(matches!(
            example_s3_body(Angle::new(1.6).unwrap(), Angle::new(0.1).unwrap(), 100, 1),
            Err(Error::KappaOutOfRange(_))
        ));
    }

    #[test]
    fn random_and_perturb() {
        let a = random_body(3, 12, Angle::new(0.8).unwrap(), 5).unwrap();
        let b = random_body(3, 12, Angle::new(0.8).unwrap(), 5).unwrap();
        assert_eq!(
            a.as_polytope().unwrap().vertices(),
            b.as_polytope().unwrap().vertices()
        );
        assert!(matches!(
            random_body(3, 4, Angle::new(0.8).unwrap(), 5),
            Err(Error::TooFewPoints { .. })
        ));
        let o = orthant_body(2).unwrap();
        let p = o.as_polytope().unwrap();
        assert_eq!(
            perturb(p, Angle::new(0.0).unwrap(), 1).unwrap().vertices(),
            p.vertices()
        );
        assert!(perturb(p, Angle::new(1.0).unwrap(), 1).is_err());
    }

    #[test]
    fn spec_round_trips_through_json() {
        let spec = ConstructorSpec {
            dim: 2,
            seed: 3,
            params: ConstructorParams::Perturb {
                base: Box::new(ConstructorSpec {
                    dim: 2,
                    seed: 0,
                    params: ConstructorParams::Orthant {},
                }),
                eps: 0.05,
            },
        };
        let s = serde_json::to_string(&spec).unwrap();
        assert!(s.contains("\"kind\":\"perturb\""));
        let back: ConstructorSpec = serde_json::from_str(&s).unwrap();
        assert_eq!(back, spec);
    }
}
