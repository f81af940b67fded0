//! Seeded, reproducible sampling.
//!
//! Every random draw in the crate goes through a ChaCha8 generator keyed by a
//! `(seed, stream)` pair, so work split across threads by index reproduces
//! the sequential result bit for bit.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::linalg::{self, dot, norm};
use crate::sphere::UnitPoint;

/// Generator for the `stream`-th independent stream of `seed`.
pub fn rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

/// SplitMix64 finalizer; derives per-trial seeds from a master seed.
pub fn split_seed(seed: u64, index: u64) -> u64 {
    let mut z = seed.wrapping_add(index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn gaussian_vec<R: Rng>(rng: &mut R, n: usize) -> Vec<f64> {
    (0..n)
        .map(|_| rng.sample::<f64, _>(StandardNormal))
        .collect()
}

/// Uniform point of `S^dim`.
pub fn uniform_sphere<R: Rng>(rng: &mut R, dim: usize) -> UnitPoint {
    loop {
        let v = gaussian_vec(rng, dim + 1);
        if let Ok(p) = UnitPoint::new(v) {
            return p;
        }
    }
}

/// Uniform unit tangent vector at `p`.
pub fn random_tangent<R: Rng>(rng: &mut R, p: &UnitPoint) -> Vec<f64> {
    loop {
        let v = gaussian_vec(rng, p.dim() + 1);
        let t = linalg::axpy(&v, -dot(&v, p.coords()), p.coords());
        if let Some(u) = linalg::normalized(&t) {
            if norm(&t) > 1e-8 {
                return u;
            }
        }
    }
}

/// `cos(s) p + sin(s) t` for a unit tangent `t` at `p`.
pub fn exp_map(p: &UnitPoint, t: &[f64], s: f64) -> UnitPoint {
    let (sn, cs) = s.sin_cos();
    UnitPoint::new(linalg::axpy(&linalg::scale(p.coords(), cs), sn, t))
        .expect("exp map of a unit tangent is nonzero")
}

/// Uniform point of the sphere of radius `radius` about `center`.
pub fn on_sphere_around<R: Rng>(rng: &mut R, center: &UnitPoint, radius: f64) -> UnitPoint {
    let t = random_tangent(rng, center);
    exp_map(center, &t, radius)
}

/// Uniform point (by area) of the closed ball `B_radius(center)`.
pub fn uniform_cap<R: Rng>(rng: &mut R, center: &UnitPoint, radius: f64) -> UnitPoint {
    let d = center.dim() as i32;
    // density of the polar angle is proportional to sin^(d-1)
    let max_density = if radius >= std::f64::consts::FRAC_PI_2 {
        1.0
    } else {
        radius.sin().powi(d - 1)
    };
    let theta = loop {
        let th = rng.random::<f64>() * radius;
        let u = rng.random::<f64>() * max_density;
        if u <= th.sin().powi(d - 1) {
            break th;
        }
    };
    let t = random_tangent(rng, center);
    exp_map(center, &t, theta)
}

/// Flat Dirichlet(1, ..., 1) weights.
pub fn dirichlet<R: Rng>(rng: &mut R, k: usize) -> Vec<f64> {
    let mut w: Vec<f64> = (0..k).map(|_| -(1.0 - rng.random::<f64>()).ln()).collect();
    let s: f64 = w.iter().sum();
    w.iter_mut().for_each(|x| *x /= s);
    w
}

/// Haar-random orthogonal matrix of size `n`, as a list of columns.
pub fn random_rotation<R: Rng>(rng: &mut R, n: usize) -> Vec<Vec<f64>> {
    let cols: Vec<Vec<f64>> = (0..n).map(|_| gaussian_vec(rng, n)).collect();
    linalg::orthonormalize_square(&cols)
}

/// Applies a matrix given by columns: `sum_j x_j col_j`.
pub fn apply(cols: &[Vec<f64>], x: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; x.len()];
    for (xj, c) in x.iter().zip(cols) {
        for i in 0..out.len() {
            out[i] += xj * c[i];
        }
    }
    out
}

/// Additive-recurrence quasirandom sequence in `[0, 1)^dim` built on the
/// generalized golden ratio, with a seeded Cranley–Patterson shift.
#[derive(Clone, Debug)]
pub struct RSequence {
    alpha: Vec<f64>,
    shift: Vec<f64>,
}

impl RSequence {
    pub fn new(dim: usize, seed: u64) -> Self {
        // phi_d is the unique positive root of x^(d+1) = x + 1
        let mut phi = 2.0_f64;
        for _ in 0..64 {
            phi = (1.0 + phi).powf(1.0 / (dim as f64 + 1.0));
        }
        let alpha = (1..=dim)
            .map(|k| (1.0 / phi.powi(k as i32)).fract())
            .collect();
        let mut r = rng(seed, 0x5EC);
        let shift = (0..dim).map(|_| r.random::<f64>()).collect();
        RSequence { alpha, shift }
    }

    pub fn point(&self, index: u64) -> Vec<f64> {
        let n = index as f64 + 1.0;
        self.alpha
            .iter()
            .zip(&self.shift)
            .map(|(a, s)| (s + n * a).fract())
            .collect()
    }
}
