//! Seeded search for bodies of constant diameter `w < pi/2` whose width is
//! not constant. Only evidence is reported; nothing is asserted.

use std::f64::consts::{FRAC_PI_2, TAU};
use std::path::Path;

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::constructors::{ball_intersection_body, reuleaux_circumradius, ConstructorSpec};
use crate::error::{Error, Result};
use crate::metrics::{self, ConstancyReport};
use crate::sampling::{self, split_seed};
use crate::sphere::{Angle, UnitPoint};

/// Hull samples per candidate.
pub const CANDIDATE_SAMPLES: usize = 800;
/// Boundary points and supporting directions per constancy check.
pub const CHECK_SAMPLES: usize = 256;
pub const CHECK_TOL: f64 = 1e-3;

#[derive(Clone, Debug, Serialize)]
pub struct SearchRecord {
    pub trial: usize,
    pub candidate: ConstructorSpec,
    pub diam_report: ConstancyReport,
    pub width_report: ConstancyReport,
    /// Width spread of a candidate whose diameter passed as constant.
    pub gap: f64,
}

/// Centers of balls of radius `w`: the vertices of a regular odd-gon of
/// opposite-vertex distance `w`, each moved by up to `eps`. On `S^3` the
/// polygon sits in the equatorial `S^2` before the moves.
fn candidate_centers<R: Rng>(rng: &mut R, dim: usize, n: usize, w: f64) -> Result<Vec<UnitPoint>> {
    let r = reuleaux_circumradius(n, w)?;
    let eps = 10f64.powf(rng.random_range(-4.0..-1.5));
    (0..n)
        .map(|i| {
            let phi = TAU * i as f64 / n as f64;
            let mut v = vec![0.0; dim + 1];
            v[0] = r.sin() * phi.cos();
            v[1] = r.sin() * phi.sin();
            v[2] = r.cos();
            let v = UnitPoint::new(v)?;
            let t = sampling::random_tangent(rng, &v);
            Ok(sampling::exp_map(&v, &t, rng.random_range(0.0..eps)))
        })
        .collect()
}

fn candidate(w: f64, trial: usize, seed: u64) -> Result<Option<SearchRecord>> {
    let mut rng = sampling::rng(seed, 0x5EA);
    let dim = if rng.random_bool(0.5) { 2 } else { 3 };
    let n = [3, 5, 7][rng.random_range(0..3)];
    let centers = candidate_centers(&mut rng, dim, n, w)?;
    let body = match ball_intersection_body(&centers, Angle::new(w)?, CANDIDATE_SAMPLES, seed) {
        Ok(b) => b,
        // empty or degenerate intersections are not candidates
        Err(Error::NoSolution | Error::NotFullDimensional | Error::NotInOpenHemisphere) => {
            return Ok(None)
        }
        Err(e) => return Err(e),
    };
    let diam_report = metrics::check_constant_diameter(&body, CHECK_SAMPLES, CHECK_TOL, seed)?;
    if !diam_report.pass {
        return Ok(None);
    }
    let width_report = metrics::check_constant_width(&body, CHECK_SAMPLES, CHECK_TOL, seed)?;
    Ok(Some(SearchRecord {
        trial,
        candidate: body.constructor().cloned().expect("constructor attached"),
        gap: width_report.spread,
        diam_report,
        width_report,
    }))
}

/// Runs `trials` candidates, keeps those of constant diameter, sorts them by
/// descending width spread and writes them to `out` when given.
pub fn search_gap(
    w: f64,
    trials: usize,
    seed: u64,
    out: Option<&Path>,
) -> Result<Vec<SearchRecord>> {
    if !(w > 0.0 && w < FRAC_PI_2) {
        return Err(Error::WOutOfRange(w));
    }
    let found: Vec<Option<SearchRecord>> = (0..trials)
        .into_par_iter()
        .map(|i| candidate(w, i, split_seed(seed, i as u64)))
        .collect::<Result<_>>()?;
    let mut records: Vec<SearchRecord> = found.into_iter().flatten().collect();
    records.sort_by(|a, b| b.gap.total_cmp(&a.gap).then(a.trial.cmp(&b.trial)));
    if let Some(path) = out {
        let mut text = super::to_json(&records)?;
        text.push('\n');
        std::fs::write(path, text)?;
    }
    Ok(records)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn range_and_vacuous_runs() {
        assert_eq!(
            search_gap(1.6, 1, 7, None).unwrap_err(),
            Error::WOutOfRange(1.6)
        );
        assert_eq!(
            search_gap(0.0, 1, 7, None).unwrap_err(),
            Error::WOutOfRange(0.0)
        );
        assert!(search_gap(1.2, 0, 7, None).unwrap().is_empty());
    }

    #[test]
    fn deterministic_and_sorted() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("s.json");
        let a = search_gap(1.2, 6, 7, Some(&path)).unwrap();
        let b = search_gap(1.2, 6, 7, None).unwrap();
        assert_eq!(
            super::super::to_json(&a).unwrap(),
            super::super::to_json(&b).unwrap()
        );
        assert!(a.windows(2).all(|p| p[0].gap >= p[1].gap));
        assert!(a.iter().all(|r| r.diam_report.pass));
        assert!(std::fs::read_to_string(&path).unwrap().starts_with('['));
    }
}
