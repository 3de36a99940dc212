#![allow(dead_code)]

use nalgebra::Vector3;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use stellar::grassmann::{KFrame, KPlane};
use stellar::linalg::{c64, CMat, CVec, C64};
use stellar::spin::{RotationSpec, SpinLabel, SpinState};

pub fn gaussian_c(rng: &mut ChaCha8Rng) -> C64 {
    c64(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

pub fn random_frame(rng: &mut ChaCha8Rng, s: SpinLabel, k: usize) -> KFrame {
    let rows = CMat::from_fn(k, s.dim(), |_, _| gaussian_c(rng));
    KFrame::new(s, rows).expect("random frames have full rank")
}

pub fn random_plane(rng: &mut ChaCha8Rng, s: SpinLabel, k: usize) -> KPlane {
    KPlane::from_frame(&random_frame(rng, s, k)).expect("random frames have full rank")
}

pub fn random_state(rng: &mut ChaCha8Rng, s: SpinLabel) -> SpinState {
    SpinState::new(CVec::from_fn(s.dim(), |_, _| gaussian_c(rng))).unwrap()
}

pub fn random_direction(rng: &mut ChaCha8Rng) -> Vector3<f64> {
    loop {
        let v = Vector3::new(
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
        );
        let n = v.norm();
        if n > 0.1 && n <= 1.0 {
            return v / n;
        }
    }
}

pub fn random_rotation(rng: &mut ChaCha8Rng) -> RotationSpec {
    let axis = random_direction(rng);
    RotationSpec::new(axis, rng.gen_range(0.0..std::f64::consts::TAU)).unwrap()
}

pub fn max_diff(a: &CMat, b: &CMat) -> f64 {
    (a - b).iter().fold(0.0, |m, z| m.max(z.norm()))
}
