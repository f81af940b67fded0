//! Convex bodies on `S^d`: cone hulls of finite point sets and analytic
//! balls.
//!
//! A body `C` determines its *dual region* `D = {m : <m, x> >= 0 for all
//! x in C}`, the set of centers of hemispheres containing `C`. The boundary
//! of `D` is exactly the set of centers of supporting hemispheres. For
//! polytopes `D` is the dual cone of the vertex cone; for `d <= 3` its face
//! lattice is computed once at construction.

use std::f64::consts::{FRAC_PI_2, PI};

use rand::Rng;
use serde::Serialize;

use crate::constructors::{ConstructorSpec, ExactBoundary};
use crate::error::{Error, Result};
use crate::hull::{self, ConeHull};
use crate::linalg::{self, dot};
use crate::sampling::{self, RSequence};
use crate::sphere::{raw_dist, Angle, Hemisphere, UnitPoint};
use crate::tol::{STEP_TOL, TOL_GEO};

/// Cone hull of finitely many points of `S^d`.
#[derive(Clone, Debug)]
pub struct PolytopeBody {
    dim: usize,
    vertices: Vec<UnitPoint>,
    /// Indices into `vertices` of the extreme points.
    extreme: Vec<usize>,
    /// Normalized least-distance direction: maximizes the smallest inner
    /// product with the vertices, so it is an interior point of the dual
    /// region.
    dual_center: UnitPoint,
    faces: Option<DualFaces>,
}

/// Face description of the dual region of a polytope for `d <= 3`.
#[derive(Clone, Debug)]
pub struct DualFaces {
    /// Extreme rays of the dual cone: inward unit normals of the primal
    /// facets.
    pub vertices: Vec<UnitPoint>,
    /// Primal vertex indices of each primal facet; dual vertex `i` is
    /// orthogonal to all of `primal_facets[i]`.
    pub primal_facets: Vec<Vec<usize>>,
    /// Primal edges `(a, b)`; on `S^3` each spans a 2-face `{m in D :
    /// <m, v_a> = <m, v_b> = 0}` of the dual region.
    pub primal_edges: Vec<[usize; 2]>,
    /// For every primal vertex, the dual vertices (facet normals) incident
    /// to it; they generate the cone of hemispheres supporting at that vertex.
    pub normal_cones: Vec<Vec<usize>>,
}

/// Closed ball `B_radius(center)` with `0 < radius < pi/2`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BallBody {
    pub center: UnitPoint,
    pub radius: Angle,
}

#[derive(Clone, Debug)]
pub enum Shape {
    Polytope(PolytopeBody),
    Ball(BallBody),
}

/// Uniform handle over the body kinds, optionally carrying the exact
/// boundary of the constructor that produced it.
#[derive(Clone, Debug)]
pub struct SphericalBody {
    shape: Shape,
    exact: Option<ExactBoundary>,
    constructor: Option<ConstructorSpec>,
}

/// `min <k, m>` over unit vectors `m` of the dual region.
#[derive(Clone, Debug)]
pub(crate) struct DualMin {
    pub value: f64,
    pub witness: UnitPoint,
    pub converged: bool,
    pub residual: f64,
}

fn dedup(points: &[UnitPoint]) -> Vec<UnitPoint> {
    let mut out: Vec<UnitPoint> = Vec::with_capacity(points.len());
    for p in points {
        if !out
            .iter()
            .any(|q| raw_dist(p.coords(), q.coords()) < TOL_GEO)
        {
            out.push(p.clone());
        }
    }
    out
}

/// Validates and builds the cone hull of `points` on `S^dim`.
pub fn polytope_from_points(dim: usize, points: &[UnitPoint]) -> Result<PolytopeBody> {
    if dim < 2 {
        return Err(Error::DimensionTooSmall(dim));
    }
    if points.is_empty() {
        return Err(Error::EmptyPointSet);
    }
    for p in points {
        if p.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: p.dim(),
            });
        }
    }
    let vertices = dedup(points);
    for (i, p) in vertices.iter().enumerate() {
        for q in &vertices[i + 1..] {
            if PI - raw_dist(p.coords(), q.coords()) < TOL_GEO {
                return Err(Error::AntipodalPair);
            }
        }
    }
    let rows: Vec<&[f64]> = vertices.iter().map(|v| v.coords()).collect();
    if linalg::rank(&rows, dim + 1) < dim + 1 {
        return Err(Error::NotFullDimensional);
    }
    let ldp = linalg::least_distance(&rows).ok_or(Error::NotInOpenHemisphere)?;
    let dual_center = UnitPoint::new(ldp).map_err(|_| Error::NotInOpenHemisphere)?;
    if rows.iter().any(|v| dot(v, dual_center.coords()) <= 0.0) {
        return Err(Error::NotInOpenHemisphere);
    }

    let (extreme, faces) = if dim <= 3 {
        let pts: Vec<Vec<f64>> = vertices.iter().map(|v| v.coords().to_vec()).collect();
        let h = hull::cone_hull(&pts, dual_center.coords())?;
        let faces = dual_faces(&h, vertices.len());
        (h.vertices, Some(faces))
    } else {
        let extreme = (0..vertices.len())
            .filter(|&i| {
                let others: Vec<&[f64]> = rows
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| *j != i)
                    .map(|(_, r)| *r)
                    .collect();
                linalg::nnls(&others, rows[i]).residual_norm > TOL_GEO
            })
            .collect();
        (extreme, None)
    };
    Ok(PolytopeBody {
        dim,
        vertices,
        extreme,
        dual_center,
        faces,
    })
}

fn dual_faces(h: &ConeHull, n_points: usize) -> DualFaces {
    let vertices = h
        .facets
        .iter()
        .map(|f| UnitPoint::new(f.normal.clone()).expect("facet normals are unit"))
        .collect();
    DualFaces {
        vertices,
        primal_facets: h.facets.iter().map(|f| f.verts.clone()).collect(),
        primal_edges: h.edges.clone(),
        normal_cones: hull::incidence(h, n_points),
    }
}

impl PolytopeBody {
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Deduplicated input points.
    pub fn vertices(&self) -> &[UnitPoint] {
        &self.vertices
    }

    pub fn extreme_indices(&self) -> &[usize] {
        &self.extreme
    }

    pub fn dual_faces(&self) -> Option<&DualFaces> {
        self.faces.as_ref()
    }

    /// An interior point of the dual region.
    pub fn dual_center(&self) -> &UnitPoint {
        &self.dual_center
    }

    fn extreme_rows(&self) -> Vec<&[f64]> {
        self.extreme
            .iter()
            .map(|&i| self.vertices[i].coords())
            .collect()
    }

    /// Nonnegative least squares of `x` against the extreme points.
    fn cone_fit(&self, x: &[f64]) -> linalg::NnlsSolution {
        linalg::nnls(&self.extreme_rows(), x)
    }

    pub fn contains(&self, x: &UnitPoint) -> Result<bool> {
        self.check(x)?;
        Ok(self.cone_fit(x.coords()).residual_norm <= TOL_GEO)
    }

    /// Hemisphere containing the body but not `x`, read off the residual of
    /// the cone projection of `x`.
    pub fn separate(&self, x: &UnitPoint) -> Result<Hemisphere> {
        self.check(x)?;
        let fit = self.cone_fit(x.coords());
        if fit.residual_norm <= TOL_GEO {
            return Err(Error::PointIsInside);
        }
        let m = UnitPoint::new(linalg::scale(&fit.residual, -1.0))?;
        Ok(Hemisphere::new(m))
    }

    pub fn support_margin(&self, m: &UnitPoint) -> Result<f64> {
        self.check(m)?;
        Ok(self
            .extreme
            .iter()
            .map(|&i| self.vertices[i].dot(m))
            .fold(f64::INFINITY, f64::min))
    }

    pub fn extreme_points(&self) -> Vec<UnitPoint> {
        self.extreme
            .iter()
            .map(|&i| self.vertices[i].clone())
            .collect()
    }

    /// At most `d + 1` extreme points whose hull contains `x`.
    ///
    /// The cone projection of `x` has a linearly independent support, which
    /// already bounds its size by `d + 1`; the elimination loop below only
    /// runs if round-off left a dependent support.
    pub fn caratheodory(&self, x: &UnitPoint) -> Result<Vec<UnitPoint>> {
        self.check(x)?;
        let fit = self.cone_fit(x.coords());
        if fit.residual_norm > TOL_GEO {
            return Err(Error::PointIsOutside);
        }
        let mut support: Vec<(usize, f64)> = fit
            .support
            .iter()
            .map(|&k| (self.extreme[k], fit.weights[k]))
            .collect();
        while support.len() > self.dim + 1 {
            let rows: Vec<&[f64]> = support
                .iter()
                .map(|(i, _)| self.vertices[*i].coords())
                .collect();
            // null combinations z with sum z_k v_k = 0 are orthogonal to
            // every coordinate row of the support matrix
            let gram: Vec<Vec<f64>> = (0..self.dim + 1)
                .map(|i| rows.iter().map(|r| r[i]).collect())
                .collect();
            let gram_rows: Vec<&[f64]> = gram.iter().map(|g| g.as_slice()).collect();
            let null = linalg::orthonormal_complement(&gram_rows, rows.len());
            let Some(z) = null.first() else { break };
            let z = if z.iter().any(|&v| v > 0.0) {
                z.clone()
            } else {
                linalg::scale(z, -1.0)
            };
            let (mut alpha, mut drop) = (f64::INFINITY, 0);
            for (k, &(_, w)) in support.iter().enumerate() {
                if z[k] > 0.0 && w / z[k] < alpha {
                    alpha = w / z[k];
                    drop = k;
                }
            }
            for (k, s) in support.iter_mut().enumerate() {
                s.1 -= alpha * z[k];
            }
            support.remove(drop);
            support.retain(|s| s.1 > 0.0);
        }
        Ok(support
            .into_iter()
            .map(|(i, _)| self.vertices[i].clone())
            .collect())
    }

    fn check(&self, x: &UnitPoint) -> Result<()> {
        if x.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: x.dim(),
            });
        }
        Ok(())
    }

    /// Largest `s` with `cos(s) c + sin(s) t` still in the dual region, where
    /// `c` is the dual center and `t` a unit tangent at it.
    fn dual_ray_exit(&self, t: &[f64]) -> f64 {
        let c = self.dual_center.coords();
        // <cos(s) c + sin(s) t, v> vanishes at s = atan2(a, -b), in (0, pi)
        // because a = <c, v> > 0
        let mut s_min = PI;
        for &i in &self.extreme {
            let v = self.vertices[i].coords();
            s_min = s_min.min(dot(c, v).atan2(-dot(t, v)));
        }
        s_min
    }

    fn dual_min(&self, k: &UnitPoint) -> DualMin {
        if let Some(f) = &self.faces {
            // nonnegative against every facet normal means k is in the cone,
            // and the facet scan below is already the answer
            if f.vertices.iter().all(|n| n.dot(k) >= -1e-12) {
                return dual_min_faces(f, k);
            }
        }
        let fit = self.cone_fit(k.coords());
        if fit.residual_norm > 1e-12 {
            // k lies outside: the optimum is the normalized projection of -k
            // onto the dual cone, which is the negated cone residual
            let w =
                UnitPoint::new(linalg::scale(&fit.residual, -1.0)).expect("residual is nonzero");
            return DualMin {
                value: -fit.residual_norm,
                witness: w,
                converged: true,
                residual: 0.0,
            };
        }
        match &self.faces {
            Some(f) => dual_min_faces(f, k),
            None => self.dual_min_iterative(k, 32),
        }
    }

    /// Projection of `a` onto the dual cone: `a + P_cone(-a)`.
    /// Point of the body nearest to `q`: the normalized projection of `q`
    /// onto the cone, or `None` when `q` is polar to every vertex. Column
    /// generation keeps the least-squares problem small on dense vertex sets.
    pub(crate) fn nearest_to(&self, q: &[f64]) -> Option<UnitPoint> {
        let verts = &self.vertices;
        let score = |i: usize| dot(verts[i].coords(), q);
        let mut order = self.extreme.clone();
        order.sort_by(|&a, &b| score(b).total_cmp(&score(a)).then(a.cmp(&b)));
        let mut active: Vec<usize> = order.iter().take(32).copied().collect();
        loop {
            let rows: Vec<&[f64]> = active.iter().map(|&i| verts[i].coords()).collect();
            let fit = linalg::nnls(&rows, q);
            // optimal once no generator makes an acute angle with the residual
            let mut violators: Vec<(f64, usize)> = self
                .extreme
                .iter()
                .map(|&i| (dot(verts[i].coords(), &fit.residual), i))
                .filter(|&(g, i)| g > 1e-14 && !active.contains(&i))
                .collect();
            if violators.is_empty() {
                return UnitPoint::new(fit.fitted(q)).ok();
            }
            violators.sort_by(|a, b| b.0.total_cmp(&a.0).then(a.1.cmp(&b.1)));
            active.extend(violators.iter().take(8).map(|&(_, i)| i));
        }
    }

    fn project_dual(&self, a: &[f64]) -> Vec<f64> {
        let neg = linalg::scale(a, -1.0);
        let fit = self.cone_fit(&neg);
        linalg::axpy(a, 1.0, &fit.fitted(&neg))
    }

    /// Multi-start projected descent of `<k, m>` over the dual region.
    fn dual_min_iterative(&self, k: &UnitPoint, starts: usize) -> DualMin {
        let mut rng = sampling::rng(0xD0A1, 0);
        let mut best: Option<DualMin> = None;
        for s in 0..starts {
            let mut m = if s == 0 {
                self.dual_center.clone()
            } else {
                let t = sampling::random_tangent(&mut rng, &self.dual_center);
                let exit = self.dual_ray_exit(&t);
                let frac = rng.random::<f64>();
                sampling::exp_map(&self.dual_center, &t, exit * frac)
            };
            let mut step = 0.5;
            let mut converged = false;
            let mut last_move = f64::INFINITY;
            for _ in 0..5000 {
                let f = m.dot(k);
                let grad = linalg::axpy(k.coords(), -f, m.coords());
                let trial = self.project_dual(&linalg::axpy(m.coords(), -step, &grad));
                let Ok(next) = UnitPoint::new(trial) else {
                    step *= 0.5;
                    continue;
                };
                if next.dot(k) <= f + 1e-16 {
                    last_move = raw_dist(next.coords(), m.coords());
                    m = next;
                    if last_move < STEP_TOL {
                        converged = true;
                        break;
                    }
                    step = (step * 1.5).min(2.0);
                } else {
                    step *= 0.5;
                    if step < STEP_TOL {
                        converged = true;
                        last_move = 0.0;
                        break;
                    }
                }
            }
            let cand = DualMin {
                value: m.dot(k),
                witness: m,
                converged,
                residual: if converged { 0.0 } else { last_move },
            };
            best = match best {
                Some(b) if b.value <= cand.value => Some(b),
                _ => Some(cand),
            };
        }
        best.expect("at least one start")
    }
}

/// For `k` in the cone the minimum sits on an extreme ray of the dual cone;
/// near-ties go to the lexicographically smallest ray.
fn dual_min_faces(f: &DualFaces, k: &UnitPoint) -> DualMin {
    let mut best: Option<(f64, &UnitPoint)> = None;
    for n in &f.vertices {
        let v = n.dot(k);
        best = match best {
            None => Some((v, n)),
            Some((bv, bn)) => {
                if v < bv - 1e-12 || (v <= bv + 1e-12 && lex_less(n.coords(), bn.coords())) {
                    Some((v.min(bv), n))
                } else {
                    Some((bv, bn))
                }
            }
        };
    }
    let (_, w) = best.expect("a full-dimensional cone has facets");
    DualMin {
        value: w.dot(k),
        witness: w.clone(),
        converged: true,
        residual: 0.0,
    }
}

fn lex_less(a: &[f64], b: &[f64]) -> bool {
    for (x, y) in a.iter().zip(b) {
        if x < y {
            return true;
        }
        if x > y {
            return false;
        }
    }
    false
}

impl BallBody {
    pub fn new(center: UnitPoint, radius: Angle) -> Result<Self> {
        let r = radius.radians();
        if !(r > 0.0 && r < FRAC_PI_2) {
            return Err(Error::RadiusOutOfRange(r));
        }
        Ok(BallBody { center, radius })
    }

    pub fn support_margin(&self, m: &UnitPoint) -> f64 {
        let a = raw_dist(self.center.coords(), m.coords());
        (a + self.radius.radians()).min(PI).cos()
    }

    fn dual_min(&self, k: &UnitPoint) -> DualMin {
        let reach = FRAC_PI_2 - self.radius.radians();
        let a = raw_dist(self.center.coords(), k.coords());
        let witness = if a < 1e-15 {
            // any point of the dual boundary; pick a deterministic tangent
            let t = linalg::orthonormal_complement(&[self.center.coords()], self.center.dim() + 1)
                .remove(0);
            sampling::exp_map(&self.center, &t, reach)
        } else if a + reach >= PI {
            k.antipode()
        } else {
            crate::sphere::point_along(&self.center, k, -reach).expect("non-degenerate arc")
        };
        DualMin {
            value: (a + reach).min(PI).cos(),
            witness,
            converged: true,
            residual: 0.0,
        }
    }
}

impl SphericalBody {
    pub fn polytope(p: PolytopeBody) -> Self {
        SphericalBody {
            shape: Shape::Polytope(p),
            exact: None,
            constructor: None,
        }
    }

    pub fn ball(b: BallBody) -> Self {
        SphericalBody {
            shape: Shape::Ball(b),
            exact: None,
            constructor: None,
        }
    }

    pub fn with_exact(mut self, exact: ExactBoundary) -> Self {
        self.exact = Some(exact);
        self
    }

    pub fn with_constructor(mut self, spec: ConstructorSpec) -> Self {
        self.constructor = Some(spec);
        self
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn as_polytope(&self) -> Option<&PolytopeBody> {
        match &self.shape {
            Shape::Polytope(p) => Some(p),
            Shape::Ball(_) => None,
        }
    }

    pub fn as_ball(&self) -> Option<&BallBody> {
        match &self.shape {
            Shape::Ball(b) => Some(b),
            Shape::Polytope(_) => None,
        }
    }

    pub fn exact(&self) -> Option<&ExactBoundary> {
        self.exact.as_ref()
    }

    pub fn constructor(&self) -> Option<&ConstructorSpec> {
        self.constructor.as_ref()
    }

    pub fn dim(&self) -> usize {
        match &self.shape {
            Shape::Polytope(p) => p.dim,
            Shape::Ball(b) => b.center.dim(),
        }
    }

    pub(crate) fn check(&self, x: &UnitPoint) -> Result<()> {
        if x.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: x.dim(),
            });
        }
        Ok(())
    }

    pub fn contains(&self, x: &UnitPoint) -> Result<bool> {
        match &self.shape {
            Shape::Polytope(p) => p.contains(x),
            Shape::Ball(b) => {
                self.check(x)?;
                Ok(raw_dist(b.center.coords(), x.coords()) <= b.radius.radians() + TOL_GEO)
            }
        }
    }

    /// `min over the body of <m, x>`: nonnegative iff `H(m)` contains the
    /// body, zero iff `H(m)` supports it.
    pub fn support_margin(&self, m: &UnitPoint) -> Result<f64> {
        match &self.shape {
            Shape::Polytope(p) => p.support_margin(m),
            Shape::Ball(b) => {
                self.check(m)?;
                Ok(b.support_margin(m))
            }
        }
    }

    pub(crate) fn dual_min(&self, k: &UnitPoint) -> Result<DualMin> {
        self.check(k)?;
        Ok(match &self.shape {
            Shape::Polytope(p) => p.dual_min(k),
            Shape::Ball(b) => b.dual_min(k),
        })
    }

    /// Signed depth of `z`: `min <m, z>` over unit `m` in the dual region.
    /// Positive in the interior, zero on the boundary, negative outside.
    /// Uses the exact constructor boundary when it provides one.
    pub fn depth(&self, z: &UnitPoint) -> Result<f64> {
        self.check(z)?;
        if let Some(d) = self.exact.as_ref().and_then(|e| e.depth(z)) {
            return Ok(d);
        }
        Ok(self.dual_min(z)?.value)
    }

    /// Depth measured on the stored representation only, ignoring any exact
    /// constructor boundary.
    pub fn representation_depth(&self, z: &UnitPoint) -> Result<f64> {
        Ok(self.dual_min(z)?.value)
    }

    pub fn on_boundary(&self, p: &UnitPoint, tol: f64) -> Result<bool> {
        Ok(self.depth(p)?.abs() <= tol)
    }

    pub fn dual_region(&self) -> DualRegion<'_> {
        DualRegion { body: self }
    }

    /// A point of the interior.
    pub fn interior_point(&self) -> UnitPoint {
        match &self.shape {
            Shape::Ball(b) => b.center.clone(),
            Shape::Polytope(p) => {
                let mut s = vec![0.0; p.dim + 1];
                for &i in &p.extreme {
                    for (k, c) in p.vertices[i].coords().iter().enumerate() {
                        s[k] += c;
                    }
                }
                UnitPoint::new(s).expect("pointed cone has a nonzero centroid")
            }
        }
    }

    /// `n` seeded points of the boundary of the stored representation.
    pub fn sample_boundary(&self, n: usize, seed: u64) -> Vec<UnitPoint> {
        let mut rng = sampling::rng(seed, 0xB0);
        match &self.shape {
            Shape::Ball(b) => (0..n)
                .map(|_| sampling::on_sphere_around(&mut rng, &b.center, b.radius.radians()))
                .collect(),
            Shape::Polytope(p) => match &p.faces {
                Some(f) => {
                    let seq = RSequence::new(1, seed);
                    (0..n)
                        .map(|i| {
                            let fi = ((seq.point(i as u64)[0] * f.primal_facets.len() as f64)
                                as usize)
                                .min(f.primal_facets.len() - 1);
                            let verts = &f.primal_facets[fi];
                            let w = sampling::dirichlet(&mut rng, verts.len());
                            let mut x = vec![0.0; p.dim + 1];
                            for (wi, &vi) in w.iter().zip(verts) {
                                for (k, c) in p.vertices[vi].coords().iter().enumerate() {
                                    x[k] += wi * c;
                                }
                            }
                            UnitPoint::new(x).expect("facet combination is nonzero")
                        })
                        .collect()
                }
                None => {
                    let c = self.interior_point();
                    (0..n)
                        .map(|_| {
                            let t = sampling::random_tangent(&mut rng, &c);
                            boundary_along(self, &c, &t)
                        })
                        .collect()
                }
            },
        }
    }
}

impl SphericalBody {
    /// `n` seeded points of the exact boundary: analytic for balls, the
    /// constructor's parametrization for constructed bodies.
    pub fn sample_exact_boundary(&self, n: usize, seed: u64) -> Result<Vec<UnitPoint>> {
        let mut rng = sampling::rng(seed, 0xE8);
        match (&self.shape, &self.exact) {
            (Shape::Ball(b), _) => Ok((0..n)
                .map(|_| sampling::on_sphere_around(&mut rng, &b.center, b.radius.radians()))
                .collect()),
            (_, Some(e)) => Ok((0..n).map(|_| e.sample(&mut rng)).collect()),
            _ => Err(Error::NoBoundarySampler),
        }
    }
}

/// Bisection for the boundary point on the geodesic from interior `c` in
/// tangent direction `t`.
fn boundary_along(body: &SphericalBody, c: &UnitPoint, t: &[f64]) -> UnitPoint {
    let (mut lo, mut hi) = (0.0, PI - 1e-9);
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        if body
            .contains(&sampling::exp_map(c, t, mid))
            .unwrap_or(false)
        {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    sampling::exp_map(c, t, lo)
}

/// The set of centers of hemispheres containing a body.
pub struct DualRegion<'a> {
    body: &'a SphericalBody,
}

impl<'a> DualRegion<'a> {
    pub fn contains(&self, m: &UnitPoint) -> Result<bool> {
        Ok(self.body.support_margin(m)? >= -TOL_GEO)
    }

    /// Explicit faces for polytopes on `S^2` and `S^3`.
    pub fn faces(&self) -> Option<&'a DualFaces> {
        self.body.as_polytope().and_then(|p| p.faces.as_ref())
    }

    /// For balls the dual region is itself a ball: `(center, pi/2 - rho)`.
    pub fn as_ball(&self) -> Option<(UnitPoint, Angle)> {
        self.body.as_ball().map(|b| {
            (
                b.center.clone(),
                Angle::clamped(FRAC_PI_2 - b.radius.radians()),
            )
        })
    }

    /// An interior point.
    pub fn center(&self) -> UnitPoint {
        match self.body.shape() {
            Shape::Polytope(p) => p.dual_center.clone(),
            Shape::Ball(b) => b.center.clone(),
        }
    }

    /// The boundary point reached from [`DualRegion::center`] along unit
    /// tangent `t`.
    pub fn boundary_along(&self, t: &[f64]) -> UnitPoint {
        match self.body.shape() {
            Shape::Polytope(p) => sampling::exp_map(&p.dual_center, t, p.dual_ray_exit(t)),
            Shape::Ball(b) => sampling::exp_map(&b.center, t, FRAC_PI_2 - b.radius.radians()),
        }
    }

    /// `n` seeded centers of supporting hemispheres.
    ///
    /// For polytopes with explicit faces, sample `i` picks a primal extreme
    /// point by a quasirandom index and draws from the cone of hemispheres
    /// supporting there; every fourth sample is a pure extreme ray so the
    /// corners of the region are covered.
    pub fn sample_boundary(&self, n: usize, seed: u64) -> Vec<UnitPoint> {
        let mut rng = sampling::rng(seed, 0xD0);
        match (self.body.shape(), self.faces()) {
            (Shape::Polytope(p), Some(f)) => {
                let seq = RSequence::new(2, seed);
                (0..n)
                    .map(|i| {
                        let u = seq.point(i as u64);
                        if i % 4 == 0 {
                            let j = ((u[1] * f.vertices.len() as f64) as usize)
                                .min(f.vertices.len() - 1);
                            return f.vertices[j].clone();
                        }
                        let vi = p.extreme
                            [((u[0] * p.extreme.len() as f64) as usize).min(p.extreme.len() - 1)];
                        let cone = &f.normal_cones[vi];
                        let w = sampling::dirichlet(&mut rng, cone.len());
                        let mut m = vec![0.0; p.dim + 1];
                        for (wi, &ni) in w.iter().zip(cone) {
                            for (k, c) in f.vertices[ni].coords().iter().enumerate() {
                                m[k] += wi * c;
                            }
                        }
                        UnitPoint::new(m).expect("normal cone is pointed")
                    })
                    .collect()
            }
            _ => {
                let c = self.center();
                (0..n)
                    .map(|_| {
                        let t = sampling::random_tangent(&mut rng, &c);
                        self.boundary_along(&t)
                    })
                    .collect()
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(i: usize) -> UnitPoint {
        UnitPoint::basis(2, i)
    }

    fn orthant() -> PolytopeBody {
        polytope_from_points(2, &[e(0), e(1), e(2)]).unwrap()
    }

    fn n111() -> UnitPoint {
        UnitPoint::new(vec![1.0, 1.0, 1.0]).unwrap()
    }

    #[test]
    fn construction_errors() {
        let x = UnitPoint::new(vec![0.2, 0.3, 0.9]).unwrap();
        assert_eq!(
            polytope_from_points(2, &[x.clone(), x.antipode(), e(1)]).unwrap_err(),
            Error::AntipodalPair
        );
        assert_eq!(
            polytope_from_points(2, &[e(0), e(1)]).unwrap_err(),
            Error::NotFullDimensional
        );
        let wide = [
            e(0),
            e(1),
            e(2),
            UnitPoint::new(vec![-1.0, -1.0, -0.5]).unwrap(),
        ];
        assert_eq!(
            polytope_from_points(2, &wide).unwrap_err(),
            Error::NotInOpenHemisphere
        );
    }

    #[test]
    fn orthant_membership_and_separation() {
        let p = orthant();
        for i in 0..3 {
            assert!(p.contains(&e(i)).unwrap());
        }
        assert!(p.contains(&n111()).unwrap());
        assert!(!p.contains(&n111().antipode()).unwrap());

        let h = p.separate(&n111().antipode()).unwrap();
        for i in 0..3 {
            assert!(h.center.dot(&e(i)) >= -TOL_GEO);
        }
        assert!(h.center.dot(&n111().antipode()) < 0.0);

        let h = p.separate(&e(0).antipode()).unwrap();
        assert_eq!(h.center, e(0));
        assert_eq!(p.separate(&e(0)).unwrap_err(), Error::PointIsInside);
    }

    #[test]
    fn support_margins() {
        let p = orthant();
        assert_eq!(p.support_margin(&e(0)).unwrap(), 0.0);
        assert!((p.support_margin(&n111()).unwrap() - 1.0 / 3f64.sqrt()).abs() < 1e-15);
        let b = BallBody::new(e(0), Angle::new(0.5).unwrap()).unwrap();
        assert!((b.support_margin(&e(0)) - 0.5f64.cos()).abs() < 1e-15);
    }

    #[test]
    fn extreme_points_and_dedup() {
        let p = polytope_from_points(2, &[e(0), e(1), e(2), n111()]).unwrap();
        assert_eq!(p.extreme_points(), vec![e(0), e(1), e(2)]);
        let p = polytope_from_points(2, &[e(0), e(1), e(0), e(2), e(1)]).unwrap();
        assert_eq!(p.vertices().len(), 3);
        assert_eq!(p.extreme_points(), vec![e(0), e(1), e(2)]);
    }

    #[test]
    fn caratheodory_examples() {
        let p = orthant();
        assert_eq!(p.caratheodory(&e(0)).unwrap(), vec![e(0)]);
        let x = UnitPoint::new(vec![1.0, 1.0, 0.0]).unwrap();
        let mut got = p.caratheodory(&x).unwrap();
        got.sort_by(|a, b| b.coords()[0].total_cmp(&a.coords()[0]));
        assert_eq!(got, vec![e(0), e(1)]);
        assert_eq!(p.caratheodory(&n111()).unwrap().len(), 3);
        assert_eq!(
            p.caratheodory(&n111().antipode()).unwrap_err(),
            Error::PointIsOutside
        );
    }

    #[test]
    fn orthant_is_self_dual() {
        let body = SphericalBody::polytope(orthant());
        let faces = body.dual_region().faces().unwrap();
        let mut duals: Vec<Vec<f64>> = faces.vertices.iter().map(|v| v.coords().to_vec()).collect();
        duals.sort_by(|a, b| b.partial_cmp(a).unwrap());
        for (i, d) in duals.iter().enumerate() {
            for (k, c) in d.iter().enumerate() {
                let expect = if i == k { 1.0 } else { 0.0 };
                assert!((c - expect).abs() < 1e-15);
            }
        }
        assert!(body.support_margin(&n111()).unwrap() > 0.0);
        assert!(body.dual_region().contains(&n111()).unwrap());
    }

    #[test]
    fn ball_dual_region() {
        let c = UnitPoint::new(vec![0.1, 0.2, 0.9]).unwrap();
        let body = SphericalBody::ball(BallBody::new(c.clone(), Angle::new(0.4).unwrap()).unwrap());
        let (dc, r) = body.dual_region().as_ball().unwrap();
        assert_eq!(dc, c);
        assert!((r.radians() - (FRAC_PI_2 - 0.4)).abs() < 1e-15);
        for m in body.dual_region().sample_boundary(50, 3) {
            assert!(body.support_margin(&m).unwrap().abs() < 1e-12);
        }
    }

    #[test]
    fn sampled_supporting_directions_support() {
        let body = SphericalBody::polytope(orthant());
        for m in body.dual_region().sample_boundary(100, 11) {
            assert!(body.support_margin(&m).unwrap().abs() < 1e-12);
        }
        for x in body.sample_boundary(100, 5) {
            assert!(body.depth(&x).unwrap().abs() < 1e-12);
        }
    }
}
