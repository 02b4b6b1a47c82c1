#![allow(dead_code)]

use liftmark::GrayImage;
use rand::Rng;

/// Smooth random image: a gradient, two low-frequency ripples and small noise,
/// kept inside `[lo, hi]`.
pub fn smooth_image<R: Rng>(rng: &mut R, width: usize, height: usize, lo: u8, hi: u8, noise: i32) -> GrayImage {
    let (lo_f, hi_f) = (f64::from(lo), f64::from(hi));
    let mid = (lo_f + hi_f) / 2.0;
    let span = (hi_f - lo_f) / 2.0;
    let gx: f64 = rng.gen_range(-0.5..0.5);
    let gy: f64 = rng.gen_range(-0.5..0.5);
    let f1: f64 = rng.gen_range(0.01..0.15);
    let f2: f64 = rng.gen_range(0.01..0.15);
    let ph: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
    let mut pixels = Vec::with_capacity(width * height);
    for y in 0..height {
        for x in 0..width {
            let (xf, yf) = (x as f64, y as f64);
            let v = mid
                + 0.3 * span * ((f1 * xf + ph).sin() + (f2 * yf).cos())
                + gx * (xf - width as f64 / 2.0) * 0.3
                + gy * (yf - height as f64 / 2.0) * 0.3
                + f64::from(rng.gen_range(-noise..=noise));
            pixels.push(v.round().clamp(lo_f, hi_f) as u8);
        }
    }
    GrayImage::new(width, height, pixels).unwrap()
}
