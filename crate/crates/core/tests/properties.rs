use std::f64::consts::{FRAC_PI_2, PI};

use proptest::prelude::*;
use rand::Rng;

use spherewidth::constructors::{ball_body, orthant_body, random_body, reuleaux_odd_gon};
use spherewidth::harness::{body_from_json, body_to_json};
use spherewidth::metrics::{self, Tolerances};
use spherewidth::sampling;
use spherewidth::sphere::{self, ball_in_hemisphere, corner_angle, lune_thickness, make_lune};
use spherewidth::{Angle, Hemisphere, UnitPoint};

fn rng(seed: u64) -> impl Rng {
    sampling::rng(seed, 0xFEED)
}

fn angle_between(a: &[f64], b: &[f64]) -> f64 {
    let d: f64 = a.iter().zip(b).map(|(x, y)| x * y).sum();
    let na: f64 = a.iter().map(|x| x * x).sum::<f64>().sqrt();
    let nb: f64 = b.iter().map(|x| x * x).sum::<f64>().sqrt();
    (d / (na * nb)).clamp(-1.0, 1.0).acos()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn dist_is_a_metric(seed in any::<u64>(), d in 2usize..5) {
        let mut r = rng(seed);
        let a = sampling::uniform_sphere(&mut r, d);
        let b = sampling::uniform_sphere(&mut r, d);
        let c = sampling::uniform_sphere(&mut r, d);
        let ab = sphere::dist(&a, &b).unwrap().radians();
        prop_assert_eq!(ab, sphere::dist(&b, &a).unwrap().radians());
        let bc = sphere::dist(&b, &c).unwrap().radians();
        let ac = sphere::dist(&a, &c).unwrap().radians();
        prop_assert!(ac <= ab + bc + 1e-12);
        prop_assert_eq!(sphere::dist(&a, &a).unwrap().radians(), 0.0);
    }

    #[test]
    fn thickness_is_the_corner_angle(seed in any::<u64>(), d in 2usize..5) {
        let mut r = rng(seed);
        let g = sampling::uniform_sphere(&mut r, d);
        let h = sampling::uniform_sphere(&mut r, d);
        prop_assume!(g.dot(&h).abs() < 1.0 - 1e-6);
        let l = make_lune(Hemisphere::new(g.clone()), Hemisphere::new(h.clone())).unwrap();
        let w: Vec<f64> = sampling::gaussian_vec(&mut r, d - 1);
        let corner = l.corner_from(&w).unwrap();
        // centers of the two semispheres from scratch: nearest points of
        // bd(G) to h and of bd(H) to g
        let gh = g.dot(&h);
        let a: Vec<f64> = h.coords().iter().zip(g.coords()).map(|(x, y)| x - gh * y).collect();
        let b: Vec<f64> = g.coords().iter().zip(h.coords()).map(|(x, y)| x - gh * y).collect();
        let tangent = |v: &[f64]| -> Vec<f64> {
            let t: f64 = v.iter().zip(corner.coords()).map(|(x, y)| x * y).sum();
            v.iter().zip(corner.coords()).map(|(x, y)| x - t * y).collect()
        };
        let oracle = angle_between(&tangent(&a), &tangent(&b));
        let closed = lune_thickness(&l).radians();
        prop_assert!((closed - oracle).abs() < 1e-9);
        prop_assert!((corner_angle(&l, &corner).unwrap().radians() - closed).abs() < 1e-9);
    }

    #[test]
    fn ball_in_hemisphere_matches_sampling(seed in any::<u64>(), d in 2usize..4) {
        let mut r = rng(seed);
        let o = sampling::uniform_sphere(&mut r, d);
        let m = sampling::uniform_sphere(&mut r, d);
        let rho: f64 = r.random_range(0.05..1.5);
        let far = (0..1000)
            .map(|i| {
                let x = if i % 2 == 0 {
                    sampling::on_sphere_around(&mut r, &o, rho)
                } else {
                    sampling::uniform_cap(&mut r, &o, rho)
                };
                sphere::dist(&x, &m).unwrap().radians()
            })
            .fold(0.0_f64, f64::max);
        let inside = ball_in_hemisphere(&o, Angle::new(rho).unwrap(), &m).unwrap();
        let gap = sphere::dist(&o, &m).unwrap().radians() - (FRAC_PI_2 - rho);
        if inside {
            prop_assert!(far <= FRAC_PI_2 + 1e-12);
        } else if gap > 0.05 {
            prop_assert!(far > FRAC_PI_2);
        }
    }

    #[test]
    fn body_json_round_trips_bit_exactly(seed in any::<u64>(), d in 2usize..5) {
        let c = random_body(d, 12, Angle::new(0.9).unwrap(), seed).unwrap();
        let text = body_to_json(&c).unwrap();
        let back = body_from_json(&text).unwrap();
        let (p, q) = (c.as_polytope().unwrap(), back.as_polytope().unwrap());
        prop_assert_eq!(p.vertices(), q.vertices());
        prop_assert_eq!(body_to_json(&back).unwrap(), text);
    }

    #[test]
    fn membership_agrees_with_separation(seed in any::<u64>(), d in 2usize..5) {
        let c = random_body(d, 10, Angle::new(0.8).unwrap(), seed).unwrap();
        let p = c.as_polytope().unwrap();
        let mut r = rng(seed ^ 1);
        let center = c.interior_point();
        for _ in 0..20 {
            let x = sampling::uniform_cap(&mut r, &center, 1.3);
            if p.contains(&x).unwrap() {
                // x is a nonnegative combination, so every hemisphere
                // containing the vertices contains x
                prop_assert!(p.separate(&x).is_err());
            } else {
                let h = p.separate(&x).unwrap();
                prop_assert!(h.center.dot(&x) < 0.0);
                let worst = p.vertices().iter().map(|v| v.dot(&h.center)).fold(f64::INFINITY, f64::min);
                prop_assert!(worst >= -1e-9);
            }
        }
    }

    #[test]
    fn support_margin_is_the_hull_minimum(seed in any::<u64>(), d in 2usize..4) {
        let c = random_body(d, 10, Angle::new(0.7).unwrap(), seed).unwrap();
        let p = c.as_polytope().unwrap();
        let mut r = rng(seed ^ 2);
        let m = sampling::uniform_cap(&mut r, &c.interior_point(), 1.2);
        let verts = p.vertices();
        let mut brute = f64::INFINITY;
        for _ in 0..10_000 {
            let k = r.random_range(1..=d + 1);
            let mut x = vec![0.0; d + 1];
            for _ in 0..k {
                let v = &verts[r.random_range(0..verts.len())];
                let w: f64 = r.random();
                for (xi, vi) in x.iter_mut().zip(v.coords()) {
                    *xi += w * vi;
                }
            }
            if let Ok(x) = UnitPoint::new(x) {
                brute = brute.min(x.dot(&m));
            }
        }
        let margin = p.support_margin(&m).unwrap();
        if margin >= 0.0 {
            // a nonnegative linear function is smallest at a vertex, and
            // single-vertex draws make the sampled minimum exact
            prop_assert!((brute - margin).abs() < 1e-9);
        } else {
            // normalizing a chord point pushes it further below bd H(m)
            prop_assert!(brute <= margin + 1e-12);
        }
    }
}

#[test]
fn width_bounds_thickness_bounds_diameter() {
    for seed in 0..10 {
        let c = random_body(2 + (seed as usize % 2), 14, Angle::new(0.9).unwrap(), seed).unwrap();
        let thick = metrics::thickness(&c, 8).unwrap().value.radians();
        let (diam, _, _) = metrics::diameter(&c).unwrap();
        assert!(thick <= diam.radians() + 1e-9, "seed {seed}");
        for k in c.dual_region().sample_boundary(20, seed) {
            let w = metrics::width_at(&c, &k).unwrap().value.radians();
            assert!(w >= thick - 1e-9, "seed {seed}");
        }
    }
}

#[test]
fn bodies_of_width_at_most_half_pi_sit_in_their_point_hemispheres() {
    let bodies = [
        ball_body(UnitPoint::basis(2, 0), Angle::new(0.7).unwrap()).unwrap(),
        orthant_body(2).unwrap(),
        orthant_body(3).unwrap(),
    ];
    for c in &bodies {
        let pts = c.sample_boundary(200, 3);
        let mut r = rng(5);
        let inner: Vec<UnitPoint> = (0..100)
            .map(|_| {
                let a = &pts[r.random_range(0..pts.len())];
                let b = &pts[r.random_range(0..pts.len())];
                sphere::geodesic_point(a, b, r.random()).unwrap_or_else(|_| a.clone())
            })
            .collect();
        for p in pts.iter().chain(&inner) {
            for x in pts.iter().chain(&inner) {
                assert!(p.dot(x) >= -1e-9);
            }
        }
    }
}

#[test]
fn diameter_beyond_half_pi_matches_dense_sampling() {
    // arcs longer than pi/2 bulge toward the antipode, so the farthest pair
    // can sit inside edges; compare with a dense sample of the boundary
    for seed in 0..6 {
        let c = random_body(2, 7, Angle::new(1.3).unwrap(), 100 + seed).unwrap();
        let (diam, _, _) = metrics::diameter(&c).unwrap();
        let pts = c.sample_boundary(3000, seed);
        let mut brute: f64 = 0.0;
        for a in &pts {
            for b in &pts {
                brute = brute.max(sphere::dist(a, b).unwrap().radians());
            }
        }
        assert!(brute <= diam.radians() + 1e-9, "seed {seed}");
        assert!(
            diam.radians() - brute < 2e-3,
            "seed {seed}: {} vs {brute}",
            diam.radians()
        );
    }
}

#[test]
fn checkers_agree_across_half_pi() {
    let tols = 1e-3;
    let wide = ball_body(UnitPoint::basis(3, 0), Angle::new(1.0).unwrap()).unwrap();
    let r = metrics::check_constant_width(&wide, 200, tols, 1).unwrap();
    assert!(r.pass && r.w_min.radians() > FRAC_PI_2);
    for c in [
        ball_body(UnitPoint::basis(2, 0), Angle::new(0.5).unwrap()).unwrap(),
        reuleaux_odd_gon(3, Angle::new(1.0).unwrap(), 400, 1).unwrap(),
    ] {
        let (diam, _, _) = metrics::diameter(&c).unwrap();
        assert!(diam.radians() <= FRAC_PI_2 + tols);
    }
}

#[test]
fn reuleaux_refinement_is_monotone() {
    let spreads: Vec<f64> = [250, 500, 1000]
        .iter()
        .map(|&n| {
            let c = reuleaux_odd_gon(5, Angle::new(0.8).unwrap(), n, 2).unwrap();
            metrics::check_constant_width(&c, 400, 1e-3, 9)
                .unwrap()
                .spread
        })
        .collect();
    assert!(spreads.windows(2).all(|w| w[1] <= w[0]), "{spreads:?}");
}

#[test]
fn touching_ball_on_a_wide_ball() {
    // for B_rho with 2 rho > pi/2 the inscribed ball at p is centered on
    // the radius through p
    let c = ball_body(UnitPoint::basis(2, 2), Angle::new(1.0).unwrap()).unwrap();
    let p = c.sample_boundary(1, 4).remove(0);
    let b = metrics::inscribed_ball_at(&c, &p, Angle::new(2.0).unwrap(), &Tolerances::default())
        .unwrap();
    assert!((b.radius.radians() - (2.0 - FRAC_PI_2)).abs() < 1e-12);
    let toward = sphere::dist(&b.center, &UnitPoint::basis(2, 2))
        .unwrap()
        .radians();
    assert!((toward - (1.0 - b.radius.radians())).abs() < 1e-9);
    assert!(b.min_margin >= -1e-12);
    let _ = PI;
}
