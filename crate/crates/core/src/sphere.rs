//! Points, distances, geodesics, hemispheres and lunes of `S^d`.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, dot, norm};
use crate::tol::{EPS_UNIT, TOL_GEO};

/// A point of `S^d`, stored as a unit vector of `E^{d+1}`.
#[derive(Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct UnitPoint {
    coords: Vec<f64>,
}

impl fmt::Debug for UnitPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UnitPoint{:?}", self.coords)
    }
}

impl TryFrom<Vec<f64>> for UnitPoint {
    type Error = Error;

    fn try_from(coords: Vec<f64>) -> Result<Self> {
        // keep stored bits when already unit length so files round-trip exactly
        UnitPoint::from_unit(coords.clone()).or_else(|_| UnitPoint::new(coords))
    }
}

impl From<UnitPoint> for Vec<f64> {
    fn from(p: UnitPoint) -> Self {
        p.coords
    }
}

impl UnitPoint {
    /// Normalizes `coords` onto the sphere. Needs at least three coordinates.
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.len() < 3 {
            return Err(Error::DimensionTooSmall(coords.len().saturating_sub(1)));
        }
        let n = norm(&coords);
        if !(n > 1e-300 && n.is_finite()) {
            return Err(Error::DegenerateVector(n));
        }
        let mut coords: Vec<f64> = coords.into_iter().map(|c| c / n).collect();
        // one more pass pulls the norm to within a couple of ulps of 1
        let n2 = norm(&coords);
        if (n2 - 1.0).abs() > 0.0 {
            coords.iter_mut().for_each(|c| *c /= n2);
        }
        Ok(UnitPoint { coords })
    }

    /// Wraps coordinates that are already unit length within `EPS_UNIT`,
    /// keeping them bit-for-bit.
    pub fn from_unit(coords: Vec<f64>) -> Result<Self> {
        if coords.len() < 3 {
            return Err(Error::DimensionTooSmall(coords.len().saturating_sub(1)));
        }
        let n = norm(&coords);
        if (n - 1.0).abs() > EPS_UNIT {
            return Err(Error::DegenerateVector(n));
        }
        Ok(UnitPoint { coords })
    }

    /// The `i`-th standard basis vector of `E^{dim+1}`.
    pub fn basis(dim: usize, i: usize) -> Self {
        let mut coords = vec![0.0; dim + 1];
        coords[i] = 1.0;
        UnitPoint { coords }
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    /// The `d` of `S^d`.
    pub fn dim(&self) -> usize {
        self.coords.len() - 1
    }

    pub fn dot(&self, other: &UnitPoint) -> f64 {
        dot(&self.coords, &other.coords)
    }

    pub fn antipode(&self) -> UnitPoint {
        UnitPoint {
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }

    pub(crate) fn check_dim(&self, other: &UnitPoint) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok(())
    }
}

/// A spherical distance or radius, in radians within `[0, pi]`.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Angle(f64);

impl Angle {
    pub const HALF_PI: Angle = Angle(FRAC_PI_2);
    pub const PI: Angle = Angle(PI);

    pub fn new(radians: f64) -> Result<Self> {
        if (0.0..=PI).contains(&radians) {
            Ok(Angle(radians))
        } else {
            Err(Error::AngleOutOfRange(radians))
        }
    }

    /// Clamps into `[0, pi]`; for values produced by round-off.
    pub fn clamped(radians: f64) -> Self {
        Angle(radians.clamp(0.0, PI))
    }

    pub fn radians(self) -> f64 {
        self.0
    }
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Spherical distance `|ab|`.
///
/// Evaluated as `2 atan2(|a - b|, |a + b|)`, which equals
/// `arccos(clamp(<a, b>, -1, 1))` but keeps full precision near `0` and `pi`.
pub fn dist(a: &UnitPoint, b: &UnitPoint) -> Result<Angle> {
    a.check_dim(b)?;
    Ok(Angle::clamped(raw_dist(a.coords(), b.coords())))
}

pub(crate) fn raw_dist(a: &[f64], b: &[f64]) -> f64 {
    let mut dm = 0.0;
    let mut dp = 0.0;
    for (x, y) in a.iter().zip(b) {
        dm += (x - y) * (x - y);
        dp += (x + y) * (x + y);
    }
    2.0 * dm.sqrt().atan2(dp.sqrt())
}

/// Unit tangent vector at `p` pointing along the arc toward `q`.
pub(crate) fn tangent_toward(p: &UnitPoint, q: &UnitPoint) -> Result<Vec<f64>> {
    let c = p.dot(q);
    let t = linalg::axpy(q.coords(), -c, p.coords());
    let n = norm(&t);
    if n < 1e-15 {
        return Err(Error::DegenerateArc);
    }
    Ok(linalg::scale(&t, 1.0 / n))
}

/// The point at distance `s` from `p` along the great circle through `p` and
/// `q`, heading toward `q`. `s` may exceed `|pq|` (the arc is prolonged).
pub fn point_along(p: &UnitPoint, q: &UnitPoint, s: f64) -> Result<UnitPoint> {
    p.check_dim(q)?;
    let t = tangent_toward(p, q)?;
    let (sn, cs) = s.sin_cos();
    UnitPoint::new(linalg::axpy(&linalg::scale(p.coords(), cs), sn, &t))
}

/// Point of the arc `ab` at parameter `t in [0, 1]`, so that
/// `|a result| = t |ab|`.
pub fn geodesic_point(a: &UnitPoint, b: &UnitPoint, t: f64) -> Result<UnitPoint> {
    a.check_dim(b)?;
    if !(0.0..=1.0).contains(&t) {
        return Err(Error::InvalidParameter(format!(
            "arc parameter {t} outside [0, 1]"
        )));
    }
    let theta = raw_dist(a.coords(), b.coords());
    if theta < TOL_GEO || PI - theta < TOL_GEO {
        return Err(Error::DegenerateArc);
    }
    if t == 0.0 {
        return Ok(a.clone());
    }
    if t == 1.0 {
        return Ok(b.clone());
    }
    let s = theta.sin();
    let wa = ((1.0 - t) * theta).sin() / s;
    let wb = (t * theta).sin() / s;
    UnitPoint::new(
        a.coords()
            .iter()
            .zip(b.coords())
            .map(|(x, y)| wa * x + wb * y)
            .collect(),
    )
}

/// `B_rho(o) ⊂ H(m)` iff `|om| <= pi/2 - rho`.
pub fn ball_in_hemisphere(o: &UnitPoint, rho: Angle, m: &UnitPoint) -> Result<bool> {
    let r = rho.radians();
    if !(r > 0.0 && r < FRAC_PI_2) {
        return Err(Error::RadiusOutOfRange(r));
    }
    Ok(dist(o, m)?.radians() <= FRAC_PI_2 - r + TOL_GEO)
}

/// The closed hemisphere `H(m)` of points within `pi/2` of `m`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Hemisphere {
    pub center: UnitPoint,
}

impl Hemisphere {
    pub fn new(center: UnitPoint) -> Self {
        Hemisphere { center }
    }

    pub fn contains(&self, x: &UnitPoint) -> bool {
        self.center.dot(x) >= -TOL_GEO
    }

    pub fn is_opposite(&self, other: &Hemisphere) -> bool {
        raw_dist(self.center.coords(), other.center.coords()) > PI - TOL_GEO
    }
}

/// A lune `G ∩ H` of two distinct, non-opposite hemispheres.
///
/// `c_gh` is the center of the bounding `(d-1)`-hemisphere `G/H = bd(G) ∩ H`
/// and `c_hg` the center of `H/G = bd(H) ∩ G`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Lune {
    g: Hemisphere,
    h: Hemisphere,
    thickness: Angle,
    c_gh: UnitPoint,
    c_hg: UnitPoint,
}

/// Builds `G ∩ H`, rejecting equal and opposite hemispheres.
pub fn make_lune(g: Hemisphere, h: Hemisphere) -> Result<Lune> {
    g.center.check_dim(&h.center)?;
    let gc = g.center.coords();
    let hc = h.center.coords();
    let between = raw_dist(gc, hc);
    if between < TOL_GEO {
        return Err(Error::EqualHemispheres);
    }
    if PI - between < TOL_GEO {
        return Err(Error::OppositeHemispheres);
    }
    let t = dot(gc, hc);
    let c_gh = UnitPoint::new(linalg::axpy(hc, -t, gc))?;
    let c_hg = UnitPoint::new(linalg::axpy(gc, -t, hc))?;
    // pi - |gh| = |g, -h|, computed without cancellation
    let neg_h: Vec<f64> = hc.iter().map(|v| -v).collect();
    let thickness = Angle::clamped(raw_dist(gc, &neg_h));
    Ok(Lune {
        g,
        h,
        thickness,
        c_gh,
        c_hg,
    })
}

impl Lune {
    pub fn g(&self) -> &Hemisphere {
        &self.g
    }

    pub fn h(&self) -> &Hemisphere {
        &self.h
    }

    /// Center of `G/H`.
    pub fn c_gh(&self) -> &UnitPoint {
        &self.c_gh
    }

    /// Center of `H/G`.
    pub fn c_hg(&self) -> &UnitPoint {
        &self.c_hg
    }

    pub fn thickness(&self) -> Angle {
        self.thickness
    }

    pub fn dim(&self) -> usize {
        self.g.center.dim()
    }

    /// Orthonormal basis of the `(d-1)`-dimensional subspace whose unit
    /// sphere is the corner set `(G/H) ∩ (H/G)`.
    pub fn corner_basis(&self) -> Vec<Vec<f64>> {
        linalg::orthonormal_complement(
            &[self.g.center.coords(), self.h.center.coords()],
            self.dim() + 1,
        )
    }

    /// The two antipodal corners of a lune on `S^2`; `None` for `d > 2`,
    /// where the corners form a continuum (see [`Lune::corner_basis`]).
    pub fn corners_s2(&self) -> Option<[UnitPoint; 2]> {
        if self.dim() != 2 {
            return None;
        }
        let b = self.corner_basis();
        let r = UnitPoint::new(b[0].clone()).ok()?;
        Some([r.clone(), r.antipode()])
    }

    /// Corner `sum_i w_i b_i / |w|` for coefficients `w` over the corner basis.
    pub fn corner_from(&self, weights: &[f64]) -> Result<UnitPoint> {
        let basis = self.corner_basis();
        let mut x = vec![0.0; self.dim() + 1];
        for (w, b) in weights.iter().zip(&basis) {
            for i in 0..x.len() {
                x[i] += w * b[i];
            }
        }
        UnitPoint::new(x)
    }

    pub fn is_corner(&self, r: &UnitPoint) -> bool {
        self.g.center.dot(r).abs() <= TOL_GEO && self.h.center.dot(r).abs() <= TOL_GEO
    }
}

/// `Δ(L)`, the distance between the centers of the bounding hemispheres.
pub fn lune_thickness(l: &Lune) -> Angle {
    l.thickness
}

/// The non-oriented angle at the corner `r` between the arcs toward `c_gh`
/// and `c_hg`, measured in the tangent space at `r`.
pub fn corner_angle(l: &Lune, r: &UnitPoint) -> Result<Angle> {
    l.g.center.check_dim(r)?;
    if !l.is_corner(r) {
        return Err(Error::NotACorner);
    }
    let t1 = tangent_toward(r, &l.c_gh)?;
    let t2 = tangent_toward(r, &l.c_hg)?;
    Ok(Angle::clamped(raw_dist(&t1, &t2)))
}

pub fn lune_contains(l: &Lune, x: &UnitPoint) -> Result<bool> {
    l.g.center.check_dim(x)?;
    Ok(l.g.contains(x) && l.h.contains(x))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(i: usize) -> UnitPoint {
        UnitPoint::basis(2, i)
    }

    #[test]
    fn distance_examples() {
        assert!((dist(&e(0), &e(1)).unwrap().radians() - FRAC_PI_2).abs() < 1e-15);
        let x = UnitPoint::new(vec![0.3, -0.2, 0.9]).unwrap();
        assert_eq!(dist(&x, &x).unwrap().radians(), 0.0);
        assert!((dist(&x, &x.antipode()).unwrap().radians() - PI).abs() < 1e-15);
        let y = UnitPoint::basis(3, 0);
        assert!(matches!(dist(&x, &y), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn geodesic_examples() {
        let a = e(0);
        let b = e(1);
        assert_eq!(geodesic_point(&a, &b, 0.0).unwrap(), a);
        assert_eq!(geodesic_point(&a, &b, 1.0).unwrap(), b);
        let mid = geodesic_point(&a, &b, 0.5).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert!((mid.coords()[0] - h).abs() < 1e-15 && (mid.coords()[1] - h).abs() < 1e-15);
        assert!(mid.coords()[2].abs() < 1e-15);
        assert_eq!(geodesic_point(&a, &a, 0.5), Err(Error::DegenerateArc));
        assert_eq!(
            geodesic_point(&a, &a.antipode(), 0.5),
            Err(Error::DegenerateArc)
        );
    }

    #[test]
    fn ball_in_hemisphere_examples() {
        let o = e(2);
        let rho = Angle::new(0.3).unwrap();
        let at = |d: f64| point_along(&o, &e(0), d).unwrap();
        assert!(ball_in_hemisphere(&o, rho, &at(1.2)).unwrap());
        assert!(ball_in_hemisphere(&o, rho, &at(FRAC_PI_2 - 0.3)).unwrap());
        assert!(!ball_in_hemisphere(&o, rho, &at(1.3)).unwrap());
        assert!(ball_in_hemisphere(&o, Angle::HALF_PI, &at(0.1)).is_err());
    }

    #[test]
    fn lune_of_orthogonal_hemispheres() {
        let l = make_lune(Hemisphere::new(e(0)), Hemisphere::new(e(1))).unwrap();
        assert!((lune_thickness(&l).radians() - FRAC_PI_2).abs() < 1e-15);
        assert_eq!(l.c_gh(), &e(1));
        assert_eq!(l.c_hg(), &e(0));
        let a = corner_angle(&l, &e(2)).unwrap();
        assert!((a.radians() - FRAC_PI_2).abs() < 1e-15);
        assert_eq!(corner_angle(&l, &e(0)), Err(Error::NotACorner));
        assert!(lune_contains(&l, l.c_gh()).unwrap());
        assert!(!lune_contains(&l, &l.c_gh().antipode()).unwrap());
        for r in l.corners_s2().unwrap() {
            assert!(lune_contains(&l, &r).unwrap());
        }
    }

    #[test]
    fn degenerate_lunes_rejected() {
        let g = Hemisphere::new(e(0));
        assert_eq!(
            make_lune(g.clone(), g.clone()),
            Err(Error::EqualHemispheres)
        );
        assert_eq!(
            make_lune(g.clone(), Hemisphere::new(e(0).antipode())),
            Err(Error::OppositeHemispheres)
        );
    }

    #[test]
    fn thickness_from_center_distance() {
        let g = e(0);
        for (between, expected) in [
            (FRAC_PI_2, FRAC_PI_2),
            (3.0 * PI / 4.0, PI / 4.0),
            (PI - 1e-6, 1e-6),
        ] {
            let h = point_along(&g, &e(1), between).unwrap();
            let l = make_lune(Hemisphere::new(g.clone()), Hemisphere::new(h)).unwrap();
            assert!(
                (l.thickness().radians() - expected).abs() < 1e-12,
                "{between}"
            );
            let [r, _] = l.corners_s2().unwrap();
            let by_angle = corner_angle(&l, &r).unwrap().radians();
            assert!((by_angle - expected).abs() < 1e-9);
        }
    }

    #[test]
    fn angle_range() {
        assert!(Angle::new(-0.1).is_err());
        assert!(Angle::new(4.0).is_err());
        assert_eq!(Angle::clamped(3.5).radians(), PI);
    }
}
