#![allow(dead_code)]

use std::path::Path;
use std::process::{Command, Output};

use liftmark::GrayImage;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn liftmark(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_liftmark"))
        .args(args)
        .output()
        .expect("spawn liftmark")
}

pub fn path_arg(p: &Path) -> &str {
    p.to_str().expect("utf-8 temp path")
}

/// Photo-like test image: a few smooth blobs, a couple of hard-edged shapes,
/// fine texture in part of the frame and mild sensor noise.
pub fn natural_image(seed: u64, width: usize, height: usize) -> GrayImage {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let base: f64 = rng.gen_range(70.0..150.0);
    let blobs: Vec<(f64, f64, f64, f64)> = (0..6)
        .map(|_| {
            (
                rng.gen_range(0.0..width as f64),
                rng.gen_range(0.0..height as f64),
                rng.gen_range(0.08..0.35) * width as f64,
                rng.gen_range(-60.0..60.0),
            )
        })
        .collect();
    let rects: Vec<(usize, usize, usize, usize, f64)> = (0..3)
        .map(|_| {
            let x0 = rng.gen_range(0..width * 3 / 4);
            let y0 = rng.gen_range(0..height * 3 / 4);
            (
                x0,
                y0,
                x0 + rng.gen_range(width / 10..width / 4),
                y0 + rng.gen_range(height / 10..height / 4),
                rng.gen_range(-40.0..40.0),
            )
        })
        .collect();
    let texture_amp: f64 = rng.gen_range(2.0..8.0);
    let texture_freq: f64 = rng.gen_range(0.3..0.9);
    let noise: i32 = rng.gen_range(1..=3);

    let mut pixels = Vec::with_capacity(width * height);
    for y in 0..height {
        for x in 0..width {
            let (xf, yf) = (x as f64, y as f64);
            let mut v = base;
            for &(cx, cy, r, a) in &blobs {
                let d2 = ((xf - cx).powi(2) + (yf - cy).powi(2)) / (r * r);
                v += a * (-d2).exp();
            }
            for &(x0, y0, x1, y1, a) in &rects {
                if (x0..x1).contains(&x) && (y0..y1).contains(&y) {
                    v += a;
                }
            }
            if x > width / 2 && y > height / 2 {
                v += texture_amp * (texture_freq * xf).sin() * (texture_freq * 0.7 * yf).cos();
            }
            v += f64::from(rng.gen_range(-noise..=noise));
            pixels.push(v.round().clamp(0.0, 255.0) as u8);
        }
    }
    GrayImage::new(width, height, pixels).unwrap()
}
