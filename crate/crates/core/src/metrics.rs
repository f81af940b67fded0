//! Width, thickness, diameter and the constancy checkers.
//!
//! The width of a body `C` determined by a supporting hemisphere `H(k)` is
//! `pi - arccos(min <k, m>)`, the minimum taken over unit `m` in the dual
//! region. Everything here reduces to that minimization (see
//! `SphericalBody::dual_min`) or to extreme-point scans.

use std::f64::consts::{FRAC_PI_2, PI};

use rayon::prelude::*;
use serde::Serialize;

use crate::bodies::{PolytopeBody, Shape, SphericalBody};
use crate::error::{Error, Result};
use crate::linalg;
use crate::sampling;
use crate::sphere::{self, make_lune, raw_dist, Angle, Hemisphere, Lune, UnitPoint};
use crate::tol::{BOUNDARY_TOL, CHECKER_TOL, STEP_TOL, TOL_GEO, WIDTH_TOL};

/// Caller-visible tolerances: boundary membership of sampled points, width
/// agreement, and checker spreads.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Tolerances {
    pub boundary: f64,
    pub width: f64,
    pub checker: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            boundary: BOUNDARY_TOL,
            width: WIDTH_TOL,
            checker: CHECKER_TOL,
        }
    }
}

impl Tolerances {
    pub fn uniform(tol: f64) -> Self {
        Tolerances {
            boundary: tol,
            width: tol,
            checker: tol,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct WidthReport {
    pub value: Angle,
    /// Center of the supporting hemisphere the width is taken at.
    pub k: UnitPoint,
    /// Center of the optimal second hemisphere.
    pub witness_m: UnitPoint,
    pub lune: Lune,
    pub converged: bool,
    pub residual: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ConstancyMode {
    Width,
    Diameter,
}

/// One sample of a constancy check.
#[derive(Clone, Debug, Serialize)]
pub struct SampleRecord {
    pub index: usize,
    /// Supporting direction (width mode) or boundary point (diameter mode).
    pub point: UnitPoint,
    pub value: f64,
    pub converged: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConstancyReport {
    pub mode: ConstancyMode,
    pub w_min: Angle,
    pub w_max: Angle,
    pub spread: f64,
    pub samples: usize,
    pub tol: f64,
    pub pass: bool,
    /// The samples attaining `w_min` and `w_max`, then any non-converged
    /// samples.
    pub witnesses: Vec<SampleRecord>,
    pub nonconverged: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct StrictnessReport {
    pub trials: usize,
    pub failures: usize,
    /// Smallest interior margin over all midpoints.
    pub min_margin: f64,
    pub tol: f64,
    pub pass: bool,
    /// First few failing pairs.
    pub failing_pairs: Vec<(UnitPoint, UnitPoint, f64)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct InscribedBall {
    pub center: UnitPoint,
    pub radius: Angle,
    /// Farthest partner of `p`; the ball center lies on the arc toward it.
    pub partner: UnitPoint,
    /// Smallest depth over the sampled ball points.
    pub min_margin: f64,
}

pub fn width_at(c: &SphericalBody, k: &UnitPoint) -> Result<WidthReport> {
    let margin = c.support_margin(k)?;
    if margin.abs() > TOL_GEO {
        return Err(Error::NotSupporting { margin });
    }
    width_unchecked(c, k)
}

fn width_unchecked(c: &SphericalBody, k: &UnitPoint) -> Result<WidthReport> {
    let dm = c.dual_min(k)?;
    let lune = make_lune(
        Hemisphere::new(k.clone()),
        Hemisphere::new(dm.witness.clone()),
    )?;
    Ok(WidthReport {
        value: lune.thickness(),
        k: k.clone(),
        witness_m: dm.witness,
        lune,
        converged: dm.converged,
        residual: dm.residual,
    })
}

/// Smallest width over supporting hemispheres.
///
/// Supporting hemispheres are parametrized by unit tangents `u` at an
/// interior point of the dual region (the boundary point reached along `u`).
/// The best of `16 n_starts` seeded directions seed `n_starts` pattern
/// searches on `u`.
pub fn thickness(c: &SphericalBody, n_starts: usize) -> Result<WidthReport> {
    let n_starts = n_starts.max(1);
    let dual = c.dual_region();
    let center = dual.center();
    let mut rng = sampling::rng(0x7A1C, 0);
    let dirs: Vec<Vec<f64>> = (0..16 * n_starts)
        .map(|_| sampling::random_tangent(&mut rng, &center))
        .collect();
    let eval = |u: &[f64]| -> Result<WidthReport> { width_unchecked(c, &dual.boundary_along(u)) };
    let mut scored: Vec<(f64, Vec<f64>)> = dirs
        .par_iter()
        .map(|u| eval(u).map(|r| (r.value.radians(), u.clone())))
        .collect::<Result<_>>()?;
    // the explicit extreme rays are natural candidates as well
    if let Some(f) = dual.faces() {
        for v in &f.vertices {
            let t = sphere::tangent_toward(&center, v)?;
            scored.push((eval(&t)?.value.radians(), t));
        }
    }
    scored.sort_by(|a, b| a.0.total_cmp(&b.0));
    scored.truncate(n_starts);

    let refined: Vec<(WidthReport, bool)> = scored
        .par_iter()
        .map(|(_, u)| refine(&center, u, &eval))
        .collect::<Result<_>>()?;
    let (mut best, all_converged) = refined
        .into_iter()
        .min_by(|a, b| a.0.value.radians().total_cmp(&b.0.value.radians()))
        .expect("at least one start");
    best.converged &= all_converged;
    Ok(best)
}

/// Pattern search over unit tangents orthogonal to `center`.
fn refine(
    center: &UnitPoint,
    u0: &[f64],
    eval: &(dyn Fn(&[f64]) -> Result<WidthReport> + Sync),
) -> Result<(WidthReport, bool)> {
    let mut u = u0.to_vec();
    let mut best = eval(&u)?;
    let mut h = 0.1;
    for _ in 0..4000 {
        if h < STEP_TOL {
            return Ok((best, true));
        }
        let basis = linalg::orthonormal_complement(&[center.coords(), &u], u.len());
        let mut improved = false;
        for b in &basis {
            for s in [h, -h] {
                let Some(cand) = linalg::normalized(&linalg::axpy(&u, s, b)) else {
                    continue;
                };
                let r = eval(&cand)?;
                if r.value.radians() < best.value.radians() {
                    best = r;
                    u = cand;
                    improved = true;
                    break;
                }
            }
            if improved {
                break;
            }
        }
        if improved {
            h *= 1.5;
        } else {
            h *= 0.5;
        }
    }
    Ok((best, false))
}

/// Largest distance between two points of the body, with a realizing pair.
pub fn diameter(c: &SphericalBody) -> Result<(Angle, UnitPoint, UnitPoint)> {
    match c.shape() {
        Shape::Ball(b) => {
            let t =
                linalg::orthonormal_complement(&[b.center.coords()], b.center.dim() + 1).remove(0);
            let r = b.radius.radians();
            Ok((
                Angle::clamped(2.0 * r),
                sampling::exp_map(&b.center, &t, r),
                sampling::exp_map(&b.center, &t, -r),
            ))
        }
        Shape::Polytope(p) => {
            let ext = p.extreme_indices();
            let verts = p.vertices();
            // smallest inner product over pairs; rows are independent so
            // the scan parallelizes without changing the result
            let best = ext
                .par_iter()
                .enumerate()
                .map(|(a, &i)| {
                    let mut row = (f64::INFINITY, i, i);
                    for &j in &ext[a + 1..] {
                        let d = verts[i].dot(&verts[j]);
                        if d < row.0 {
                            row = (d, i, j);
                        }
                    }
                    row
                })
                .reduce(
                    || (f64::INFINITY, usize::MAX, usize::MAX),
                    |x, y| {
                        if y.0 < x.0 || (y.0 == x.0 && (y.1, y.2) < (x.1, x.2)) {
                            y
                        } else {
                            x
                        }
                    },
                );
            let (p_, q_) = (&verts[best.1], &verts[best.2]);
            let vertex_pair = (raw_dist(p_.coords(), q_.coords()), p_.clone(), q_.clone());
            if best.0 >= 0.0 {
                let (d, a, b) = vertex_pair;
                return Ok((Angle::clamped(d), a, b));
            }
            // beyond pi/2 the pair may sit inside faces: alternate farthest
            // point steps, which never decrease the distance
            let mut pair = vertex_pair;
            for _ in 0..200 {
                let (b, _) = polytope_farthest(p, &pair.1);
                let (a, d) = polytope_farthest(p, &b);
                if d <= pair.0 + 1e-15 {
                    break;
                }
                pair = (d, a, b);
            }
            let (d, a, b) = pair;
            Ok((Angle::clamped(d), a, b))
        }
    }
}

fn require_boundary(c: &SphericalBody, p: &UnitPoint, tol: f64) -> Result<()> {
    let margin = c.depth(p)?;
    if margin.abs() > tol {
        return Err(Error::NotOnBoundary { margin });
    }
    Ok(())
}

/// Farthest point of the body from `p`, without the boundary check.
fn farthest_from(c: &SphericalBody, p: &UnitPoint) -> Result<(UnitPoint, Angle)> {
    c.check(p)?;
    match c.shape() {
        Shape::Ball(b) => {
            let a = raw_dist(p.coords(), b.center.coords());
            let reach = (a + b.radius.radians()).min(PI);
            let q = if a < 1e-15 {
                let t = linalg::orthonormal_complement(&[p.coords()], p.dim() + 1).remove(0);
                sampling::exp_map(p, &t, reach)
            } else {
                sphere::point_along(p, &b.center, reach)?
            };
            Ok((q, Angle::clamped(reach)))
        }
        Shape::Polytope(poly) => {
            let (q, d) = polytope_farthest(poly, p);
            Ok((q, Angle::clamped(d)))
        }
    }
}

/// Farthest point of a polytope from `p`. Within `pi/2` of `p` it is a
/// vertex; beyond, arcs bulge toward `-p` and the farthest point is the point
/// nearest to `-p`, which may lie inside a face.
fn polytope_farthest(poly: &PolytopeBody, p: &UnitPoint) -> (UnitPoint, f64) {
    let verts = poly.vertices();
    let mut best = (f64::INFINITY, 0);
    for &i in poly.extreme_indices() {
        let d = verts[i].dot(p);
        if d < best.0 {
            best = (d, i);
        }
    }
    let vertex = verts[best.1].clone();
    let vertex_dist = raw_dist(p.coords(), vertex.coords());
    if best.0 >= 0.0 {
        return (vertex, vertex_dist);
    }
    let neg = linalg::scale(p.coords(), -1.0);
    match poly.nearest_to(&neg) {
        Some(q) => {
            let d = raw_dist(p.coords(), q.coords());
            if d >= vertex_dist {
                (q, d)
            } else {
                (vertex, vertex_dist)
            }
        }
        None => (vertex, vertex_dist),
    }
}

/// Boundary point `q` maximizing `|pq|` over the body.
pub fn farthest_partner(
    c: &SphericalBody,
    p: &UnitPoint,
    tols: &Tolerances,
) -> Result<(UnitPoint, Angle)> {
    require_boundary(c, p, tols.boundary)?;
    farthest_from(c, p)
}

/// The hemisphere orthogonal to the diameter arc `pq` at `p` and containing
/// `q`; it supports the body.
pub fn orthogonal_diameter_support(
    c: &SphericalBody,
    p: &UnitPoint,
    q: &UnitPoint,
) -> Result<Hemisphere> {
    let (diam, _, _) = diameter(c)?;
    let gap = diam.radians() - sphere::dist(p, q)?.radians();
    if gap > TOL_GEO {
        return Err(Error::NotADiameterPair { gap });
    }
    let m = sphere::point_along(p, q, FRAC_PI_2)?;
    let margin = c.support_margin(&m)?;
    if margin < -TOL_GEO {
        return Err(Error::InvariantViolation(format!(
            "hemisphere orthogonal to a diameter does not contain the body (margin {margin:e})"
        )));
    }
    Ok(Hemisphere::new(m))
}

/// The ball `B_{w - pi/2}(p')` touching a body of constant width `w > pi/2`
/// from inside at boundary point `p`.
///
/// `p'` lies on the arc from `p` toward its farthest partner, which for such
/// bodies passes through the center of the supporting hemisphere at `p`.
/// Containment is checked on 1000 seeded ball points against
/// `tols.checker`.
pub fn inscribed_ball_at(
    c: &SphericalBody,
    p: &UnitPoint,
    w: Angle,
    tols: &Tolerances,
) -> Result<InscribedBall> {
    let w = w.radians();
    if w <= FRAC_PI_2 {
        return Err(Error::WidthNotAboveHalfPi(w));
    }
    require_boundary(c, p, tols.boundary)?;
    let (q, _) = farthest_from(c, p)?;
    let radius = w - FRAC_PI_2;
    let center = sphere::point_along(p, &q, radius)?;
    let mut rng = sampling::rng(0xBA11, 0);
    let pts: Vec<UnitPoint> = (0..1000)
        .map(|i| {
            if i % 2 == 0 {
                sampling::on_sphere_around(&mut rng, &center, radius)
            } else {
                sampling::uniform_cap(&mut rng, &center, radius)
            }
        })
        .collect();
    let margins: Vec<f64> = pts.par_iter().map(|x| c.depth(x)).collect::<Result<_>>()?;
    let min_margin = margins.into_iter().fold(f64::INFINITY, f64::min);
    if min_margin < -tols.checker {
        return Err(Error::InvariantViolation(format!(
            "inscribed ball leaves the body (margin {min_margin:e})"
        )));
    }
    Ok(InscribedBall {
        center,
        radius: Angle::clamped(radius),
        partner: q,
        min_margin,
    })
}

/// A lune of thickness `w` containing the body, one of whose bounding
/// hemispheres is centered at the boundary point `p`.
///
/// `K` is the supporting hemisphere at `p` minimizing `<m, p>` over the dual
/// region. The lune is `K ∩ M` with `M` the hemisphere at distance `pi - w`
/// from `K` on the side of `p`, so that `c_{K/M} = p` and the thickness is
/// `w` by construction. Two checks against `tols.checker` decide success:
/// the narrowest width at `K` equals `w`, and `M` contains the body.
///
/// The optimal witness of `width_at(K)` is not used for the center itself:
/// on sampled polytopes the width is flat to second order around it, so its
/// location carries an error of the order of the facet size.
pub fn width_lune_at(
    c: &SphericalBody,
    p: &UnitPoint,
    w: Angle,
    tols: &Tolerances,
) -> Result<Lune> {
    require_boundary(c, p, tols.boundary)?;
    let k = c.dual_min(p)?.witness;
    let narrowest = width_unchecked(c, &k)?;
    let thickness_gap = (narrowest.value.radians() - w.radians()).abs();
    let along = linalg::normalized(&linalg::axpy(p.coords(), -p.dot(&k), k.coords()))
        .ok_or(Error::DegenerateArc)?;
    let (sw, cw) = w.radians().sin_cos();
    let m = UnitPoint::new(linalg::axpy(&linalg::scale(k.coords(), -cw), sw, &along))?;
    let margin = c.support_margin(&m)?;
    if margin < -tols.checker || thickness_gap > tols.checker {
        return Err(Error::CenterConditionFailed {
            margin,
            thickness_gap,
        });
    }
    make_lune(Hemisphere::new(k), Hemisphere::new(m))
}

fn summarize(
    mode: ConstancyMode,
    records: Vec<SampleRecord>,
    w_max_override: Option<f64>,
    tol: f64,
) -> ConstancyReport {
    let samples = records.len();
    let mut lo: Option<&SampleRecord> = None;
    let mut hi: Option<&SampleRecord> = None;
    for r in &records {
        if lo.is_none_or(|l| r.value < l.value) {
            lo = Some(r);
        }
        if hi.is_none_or(|h| r.value > h.value) {
            hi = Some(r);
        }
    }
    let w_min = lo.map_or(0.0, |r| r.value);
    let w_max = w_max_override.unwrap_or(hi.map_or(0.0, |r| r.value));
    let spread = w_max - w_min;
    let nonconverged = records.iter().filter(|r| !r.converged).count();
    let mut witnesses: Vec<SampleRecord> = lo.into_iter().chain(hi).cloned().collect();
    witnesses.extend(records.iter().filter(|r| !r.converged).take(16).cloned());
    ConstancyReport {
        mode,
        w_min: Angle::clamped(w_min),
        w_max: Angle::clamped(w_max),
        spread,
        samples,
        tol,
        pass: samples > 0 && spread <= tol && nonconverged == 0,
        witnesses,
        nonconverged,
    }
}

/// Widths at `n` seeded supporting hemispheres.
pub fn check_constant_width(
    c: &SphericalBody,
    n: usize,
    tol: f64,
    seed: u64,
) -> Result<ConstancyReport> {
    let ks = c.dual_region().sample_boundary(n, seed);
    let records: Vec<SampleRecord> = ks
        .par_iter()
        .enumerate()
        .map(|(index, k)| {
            let r = width_unchecked(c, k)?;
            Ok(SampleRecord {
                index,
                point: k.clone(),
                value: r.value.radians(),
                converged: r.converged,
            })
        })
        .collect::<Result<_>>()?;
    Ok(summarize(ConstancyMode::Width, records, None, tol))
}

/// Diameter against the farthest-partner distances of `n` seeded boundary
/// points; `w_max` is the diameter.
pub fn check_constant_diameter(
    c: &SphericalBody,
    n: usize,
    tol: f64,
    seed: u64,
) -> Result<ConstancyReport> {
    let (diam, _, _) = diameter(c)?;
    let pts = c.sample_boundary(n, seed);
    let records: Vec<SampleRecord> = pts
        .par_iter()
        .enumerate()
        .map(|(index, p)| {
            let (_, d) = farthest_from(c, p)?;
            Ok(SampleRecord {
                index,
                point: p.clone(),
                value: d.radians(),
                converged: true,
            })
        })
        .collect::<Result<_>>()?;
    Ok(summarize(
        ConstancyMode::Diameter,
        records,
        Some(diam.radians()),
        tol,
    ))
}

/// Midpoints of random pairs of exact boundary points must be interior by
/// more than `tol`.
pub fn check_strict_convexity(
    c: &SphericalBody,
    trials: usize,
    tol: f64,
    seed: u64,
) -> Result<StrictnessReport> {
    let pts = c.sample_exact_boundary(2 * trials + 64, seed)?;
    let mut pairs = Vec::with_capacity(trials);
    let mut it = pts.chunks(2);
    while pairs.len() < trials {
        let Some(pair) = it.next() else { break };
        let gap = raw_dist(pair[0].coords(), pair[1].coords());
        if gap > 1e-6 && gap < PI - 1e-6 {
            pairs.push((pair[0].clone(), pair[1].clone()));
        }
    }
    let margins: Vec<f64> = pairs
        .par_iter()
        .map(|(x, y)| c.depth(&sphere::geodesic_point(x, y, 0.5)?))
        .collect::<Result<_>>()?;
    let min_margin = margins.iter().copied().fold(f64::INFINITY, f64::min);
    let failing: Vec<(UnitPoint, UnitPoint, f64)> = pairs
        .iter()
        .zip(&margins)
        .filter(|(_, &m)| m <= tol)
        .map(|((x, y), &m)| (x.clone(), y.clone(), m))
        .collect();
    Ok(StrictnessReport {
        trials: pairs.len(),
        failures: failing.len(),
        min_margin,
        tol,
        pass: !pairs.is_empty() && failing.is_empty(),
        failing_pairs: failing.into_iter().take(8).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bodies::polytope_from_points;
    use crate::constructors::{ball_body, orthant_body, reuleaux_odd_gon};

    fn e(i: usize) -> UnitPoint {
        UnitPoint::basis(2, i)
    }

    #[test]
    fn ball_width_is_twice_radius() {
        let b = ball_body(
            UnitPoint::new(vec![0.3, -0.2, 0.9]).unwrap(),
            Angle::new(0.5).unwrap(),
        )
        .unwrap();
        for k in b.dual_region().sample_boundary(20, 1) {
            let r = width_at(&b, &k).unwrap();
            assert!((r.value.radians() - 1.0).abs() < 1e-12);
            assert!(b.support_margin(&r.witness_m).unwrap().abs() < 1e-9);
        }
        assert!((thickness(&b, 4).unwrap().value.radians() - 1.0).abs() < 1e-9);
        let (d, p, q) = diameter(&b).unwrap();
        assert!((d.radians() - 1.0).abs() < 1e-12);
        assert!((raw_dist(p.coords(), q.coords()) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn orthant_widths() {
        let o = orthant_body(2).unwrap();
        let r = width_at(&o, &e(0)).unwrap();
        assert!((r.value.radians() - FRAC_PI_2).abs() < 1e-12);
        assert_eq!(
            r.witness_m,
            e(2),
            "ties go to the lexicographically smallest"
        );
        let k = UnitPoint::new(vec![0.0, 1.0, 1.0]).unwrap();
        assert!((width_at(&o, &k).unwrap().value.radians() - FRAC_PI_2).abs() < 1e-12);
        let inside = UnitPoint::new(vec![1.0, 1.0, 1.0]).unwrap();
        assert!(matches!(
            width_at(&o, &inside),
            Err(Error::NotSupporting { .. })
        ));
        assert!((thickness(&o, 4).unwrap().value.radians() - FRAC_PI_2).abs() < 1e-9);
        let (d, _, _) = diameter(&o).unwrap();
        assert!((d.radians() - FRAC_PI_2).abs() < 1e-12);
    }

    #[test]
    fn orthogonal_support_of_orthant() {
        let o = orthant_body(2).unwrap();
        let h = orthogonal_diameter_support(&o, &e(0), &e(1)).unwrap();
        assert!(raw_dist(h.center.coords(), e(1).coords()) < 1e-15);
        let mid = UnitPoint::new(vec![1.0, 1.0, 0.0]).unwrap();
        assert!(matches!(
            orthogonal_diameter_support(&o, &e(0), &mid),
            Err(Error::NotADiameterPair { .. })
        ));
    }

    #[test]
    fn checker_examples() {
        let o = orthant_body(2).unwrap();
        let r = check_constant_width(&o, 200, 1e-9, 3).unwrap();
        assert!(r.pass && (r.w_min.radians() - FRAC_PI_2).abs() < 1e-9);
        assert!(check_constant_diameter(&o, 200, 1e-3, 3).unwrap().pass);
        assert!(!check_strict_convexity(&o, 200, 0.0, 3).unwrap().pass);

        let mut pts = vec![e(0), e(1), e(2)];
        pts[0] = UnitPoint::new(vec![1.0, 0.05f64.tan(), 0.0]).unwrap();
        let bent = SphericalBody::polytope(polytope_from_points(2, &pts).unwrap());
        let r = check_constant_width(&bent, 200, 1e-3, 3).unwrap();
        assert!(!r.pass && r.spread > 0.01);

        let p = polytope_from_points(
            2,
            &[
                UnitPoint::new(vec![0.3, 0.1, 1.0]).unwrap(),
                UnitPoint::new(vec![-0.2, 0.25, 1.0]).unwrap(),
                UnitPoint::new(vec![0.05, -0.3, 1.0]).unwrap(),
                UnitPoint::new(vec![0.3, -0.2, 1.0]).unwrap(),
            ],
        )
        .unwrap();
        assert!(
            !check_constant_diameter(&SphericalBody::polytope(p), 200, 1e-3, 1)
                .unwrap()
                .pass
        );
    }

    #[test]
    fn reuleaux_is_strictly_convex_and_constant() {
        let r = reuleaux_odd_gon(3, Angle::new(1.0).unwrap(), 400, 2).unwrap();
        assert!(check_strict_convexity(&r, 300, 0.0, 5).unwrap().pass);
        let cw = check_constant_width(&r, 300, 1e-3, 5).unwrap();
        assert!(cw.pass, "spread {}", cw.spread);
        let (d, _, _) = diameter(&r).unwrap();
        assert!((d.radians() - 1.0).abs() < 1e-6);
    }

    #[test]
    fn guards() {
        let b = ball_body(e(2), Angle::new(0.5).unwrap()).unwrap();
        let p = sampling::exp_map(&e(2), &[1.0, 0.0, 0.0], 0.5);
        assert_eq!(
            inscribed_ball_at(&b, &p, Angle::new(1.0).unwrap(), &Tolerances::default())
                .unwrap_err(),
            Error::WidthNotAboveHalfPi(1.0)
        );
        assert!(matches!(
            width_lune_at(&b, &e(2), Angle::new(1.0).unwrap(), &Tolerances::default()),
            Err(Error::NotOnBoundary { .. })
        ));
        let l = width_lune_at(&b, &p, Angle::new(1.0).unwrap(), &Tolerances::default()).unwrap();
        assert!((l.thickness().radians() - 1.0).abs() < 1e-12);
        assert!(raw_dist(l.c_gh().coords(), p.coords()) < 1e-12);
        let (q, d) = farthest_partner(&b, &p, &Tolerances::default()).unwrap();
        assert!((d.radians() - 1.0).abs() < 1e-12);
        assert!((raw_dist(q.coords(), e(2).coords()) - 0.5).abs() < 1e-12);
    }
}
