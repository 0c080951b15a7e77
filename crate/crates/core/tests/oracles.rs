//! Library results against independent computations written here from scratch.

use std::f64::consts::{PI, TAU};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use wavekin::analysis::{bohr_path_integral, bohr_residual, dephasing};
use wavekin::{
    boosted_closed_form, compose_velocities, de_broglie, doppler_pair, envelope_scales, generalized_closed_form,
    BoostParams, Event, RayConstruction,
};

fn points(seed: u64, n: usize, half: f64) -> Vec<Event> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| Event::new(rng.gen_range(-half..half), rng.gen_range(-half..half), rng.gen_range(-half..half), rng.gen_range(-half..half)))
        .collect()
}

/// Rest wave evaluated at the Lorentz-transformed coordinates.
fn transformed_rest_wave(beta: f64, e: Event) -> f64 {
    let g = 1.0 / (1.0 - beta * beta).sqrt();
    let xp = g * (e.x - beta * e.t);
    let tp = g * (e.t - beta * e.x);
    (xp * xp + e.y * e.y + e.z * e.z).sqrt().sin() * tp.cos()
}

/// Light-cone delays by fixed-point iteration, ray speed `ray`, centre at `vt`.
fn delays(v: f64, ray: f64, e: Event) -> (f64, f64) {
    let dist = |xc: f64| ((e.x - xc).powi(2) + e.y * e.y + e.z * e.z).sqrt();
    let (mut t1, mut t2) = (0.0, 0.0);
    for _ in 0..400 {
        t1 = dist(v * (e.t - t1)) / ray;
        t2 = dist(v * (e.t + t2)) / ray;
    }
    (t1, t2)
}

/// Interference of the emitted and absorbed rays, written as envelope × modulation.
fn ray_oracle(beta: f64, a: f64, ray: f64, e: Event) -> f64 {
    let bc = beta / ray;
    let s = (1.0 - bc * bc).powf(-0.5 * a);
    let rate = s * (1.0 - bc * bc);
    let (t1, t2) = delays(beta, ray, e);
    (0.5 * rate * (t1 + t2)).sin() * (rate * (e.t + 0.5 * (t2 - t1))).cos()
}

#[test]
fn closed_form_is_the_transformed_rest_wave() {
    for beta in [-0.8, -0.2, 0.1, 0.6, 0.95] {
        let params = BoostParams::new(beta);
        for e in points(1, 2000, 15.0) {
            let d = boosted_closed_form(&params, e).unwrap() - transformed_rest_wave(beta, e);
            assert!(d.abs() < 1e-11, "beta {beta}: {d}");
        }
    }
}

#[test]
fn rays_match_a_fixed_point_light_cone_solver() {
    for (beta, ray) in [(0.3, 1.0), (0.6, 1.0), (0.6, 2.0), (-0.5, 1.5)] {
        let rays = RayConstruction::new(&BoostParams::new(beta), ray).unwrap();
        for e in points(2, 500, 8.0) {
            let (t1, t2) = delays(beta, ray, e);
            let times = rays.retardation(e);
            assert!((times.t1 - t1).abs() < 1e-9 * (1.0 + t1), "{} vs {t1}", times.t1);
            assert!((times.t2 - t2).abs() < 1e-9 * (1.0 + t2), "{} vs {t2}", times.t2);
            let d = rays.interfere(e) - ray_oracle(beta, 1.0, ray, e);
            assert!(d.abs() < 1e-9, "beta {beta}, C {ray}: {d}");
        }
    }
}

#[test]
fn galilean_family_matches_the_galilean_ray_pair() {
    let params = BoostParams::new(0.6).with_exponent(0.0);
    for e in points(3, 1000, 10.0) {
        let d = generalized_closed_form(&params, e).unwrap() - ray_oracle(0.6, 0.0, 1.0, e);
        assert!(d.abs() < 1e-9, "{d}");
    }
}

fn scan_zeros(f: impl Fn(f64) -> f64, lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let h = (hi - lo) / n as f64;
    let mut out = Vec::new();
    for i in 0..n {
        let (mut a, mut b) = (lo + h * i as f64, lo + h * (i + 1) as f64);
        if f(a) * f(b) >= 0.0 {
            continue;
        }
        for _ in 0..100 {
            let m = 0.5 * (a + b);
            if f(a) * f(m) <= 0.0 {
                b = m
            } else {
                a = m
            }
        }
        out.push(0.5 * (a + b));
    }
    out
}

#[test]
fn envelope_node_spacings() {
    // At t = 0 the modulation along x is cos(s·β·x); dividing it out leaves the envelope.
    let (beta, a) = (0.6, 0.5);
    let params = BoostParams::new(beta).with_exponent(a);
    let g: f64 = 1.25;
    let s = g.powf(a);
    let along_x = scan_zeros(
        |x| {
            let e = Event::new(x, 0.0, 0.0, 0.0);
            generalized_closed_form(&params, e).unwrap() / (s * beta * x).cos()
        },
        0.05,
        30.0,
        20_000,
    );
    // Sign changes through the poles of the division are not nodes.
    let along_x: Vec<f64> = along_x.into_iter().filter(|x| (s * beta * x).cos().abs() > 1e-3).collect();
    let expected_x = PI / s;
    for x in &along_x {
        let n = x / expected_x;
        assert!((n - n.round()).abs() < 1e-9, "x node {x} not a multiple of {expected_x}");
    }
    assert!(along_x.len() >= 5);

    let along_y = scan_zeros(
        |y| generalized_closed_form(&params, Event::new(0.0, y, 0.0, 0.0)).unwrap(),
        0.05,
        30.0,
        20_000,
    );
    let expected_y = PI * g / s;
    for (i, y) in along_y.iter().enumerate() {
        assert!((y - (i + 1) as f64 * expected_y).abs() < 1e-9, "y node {y}");
    }

    let scales = envelope_scales(&params, 1.0).unwrap();
    assert!((scales.longitudinal - 1.0 / s).abs() < 1e-12);
    assert!((scales.transverse - g / s).abs() < 1e-12);
}

#[test]
fn doppler_pair_is_the_relativistic_doppler_shift() {
    for beta in [-0.7, 0.0, 0.25, 0.9] {
        let pair = doppler_pair(&BoostParams::new(beta).with_omega0(2.0)).unwrap();
        let k = ((1.0 + beta) / (1.0 - beta)).sqrt();
        assert!((pair.omega1 - 2.0 * k).abs() < 1e-13);
        assert!((pair.omega2 - 2.0 / k).abs() < 1e-13);
        assert_eq!(pair.ray_speeds(), (1.0, 1.0));
    }
}

#[test]
fn de_broglie_matches_particle_kinematics() {
    // Rest energy ħω₀ = mc², momentum γmv, energy γmc².
    let (hbar, omega0, c, beta) = (0.5, 3.0, 2.0, 0.8);
    let params = BoostParams::new(beta).with_hbar(hbar).with_omega0(omega0).with_c(c);
    let q = de_broglie(&params).unwrap();
    let m = hbar * omega0 / (c * c);
    let g = 5.0 / 3.0;
    assert!((q.energy - g * m * c * c).abs() < 1e-12);
    assert!((q.momentum - g * m * beta * c).abs() < 1e-12);
    assert!((q.energy.powi(2) - (q.momentum * c).powi(2) - (m * c * c).powi(2)).abs() < 1e-10);
    assert!((q.phase_speed.finite().unwrap() - c / beta).abs() < 1e-12);
    assert!((dephasing(&params, 1.0).unwrap() - g * omega0 * beta * c / (c * c)).abs() < 1e-12);
}

#[test]
fn velocity_addition_is_rapidity_addition() {
    for (b1, b2) in [(0.5, 0.5), (0.9, -0.3), (-0.99, 0.2), (0.0, 0.7)] {
        let expected = (f64::atanh(b1) + f64::atanh(b2)).tanh();
        assert!((compose_velocities(b1, b2).unwrap() - expected).abs() < 1e-14);
    }
}

#[test]
fn loop_integral_on_an_ellipse() {
    let (a, b, n) = (3.0, 1.0, 10_000);
    let mut path: Vec<[f64; 3]> = (0..n)
        .map(|i| {
            let t = TAU * i as f64 / n as f64;
            [a * t.cos(), b * t.sin(), 0.0]
        })
        .collect();
    path.push(path[0]);
    let kappa = vec![0.7; path.len()];
    // Perimeter by composite Simpson on the speed |r'(t)| with many panels.
    let m = 200_000;
    let speed = |t: f64| (a * a * t.sin().powi(2) + b * b * t.cos().powi(2)).sqrt();
    let h = TAU / m as f64;
    let mut sum = speed(0.0) + speed(TAU);
    for i in 1..m {
        sum += if i % 2 == 1 { 4.0 } else { 2.0 } * speed(i as f64 * h);
    }
    let perimeter = sum * h / 3.0;
    let q = bohr_path_integral(&path, &kappa).unwrap();
    assert!((q.loop_phase / (0.7 * perimeter) - 1.0).abs() < 1e-8);
}

#[test]
fn bohr_orbits_are_whole_turns() {
    for n in 1..6 {
        let radius = 1.3 * n as f64;
        let kappa = n as f64 / radius;
        let q = bohr_residual(kappa, TAU * radius).unwrap();
        assert_eq!(q.nearest_n, n);
        assert!(q.residual.abs() < 1e-12);
    }
}
