//! Fidelity (MSE / PSNR) and payload rate.

use std::fmt;

use crate::error::{Error, Result};
use crate::image_io::GrayImage;

const PEAK_SQUARED: f64 = 255.0 * 255.0;

/// PSNR in decibels; identical images have infinite PSNR.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub enum Psnr {
    Finite(f64),
    Infinite,
}

impl Psnr {
    pub fn is_infinite(self) -> bool {
        matches!(self, Psnr::Infinite)
    }

    /// `f64::INFINITY` for identical images.
    pub fn db(self) -> f64 {
        match self {
            Psnr::Finite(v) => v,
            Psnr::Infinite => f64::INFINITY,
        }
    }
}

impl fmt::Display for Psnr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Psnr::Finite(v) => write!(f, "{v:.4}"),
            Psnr::Infinite => f.write_str("inf"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QualityReport {
    /// Sum of squared pixel differences; `mse = squared_error / pixels`.
    pub squared_error: u64,
    pub pixels: u64,
    pub mse: f64,
    pub psnr: Psnr,
    pub payload_bits: u64,
    pub bpp: f64,
}

pub fn squared_error(a: &GrayImage, b: &GrayImage) -> Result<u64> {
    if a.width() != b.width() || a.height() != b.height() {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} vs {}x{}",
            a.width(),
            a.height(),
            b.width(),
            b.height()
        )));
    }
    Ok(a.pixels()
        .iter()
        .zip(b.pixels())
        .map(|(&x, &y)| {
            let d = u64::from(x.abs_diff(y));
            d * d
        })
        .sum())
}

fn psnr_from_sse(sse: u64, pixels: u64) -> Psnr {
    if sse == 0 {
        Psnr::Infinite
    } else {
        // 10 log10(255^2 / (sse / n)), a single division after exact integer accumulation
        Psnr::Finite(10.0 * (PEAK_SQUARED * pixels as f64 / sse as f64).log10())
    }
}

pub fn psnr(a: &GrayImage, b: &GrayImage) -> Result<Psnr> {
    let sse = squared_error(a, b)?;
    Ok(psnr_from_sse(sse, a.len() as u64))
}

pub fn mse(a: &GrayImage, b: &GrayImage) -> Result<f64> {
    Ok(squared_error(a, b)? as f64 / a.len() as f64)
}

pub fn bpp(payload_bits: u64, img: &GrayImage) -> f64 {
    payload_bits as f64 / img.len() as f64
}

pub fn quality_report(cover: &GrayImage, marked: &GrayImage, payload_bits: u64) -> Result<QualityReport> {
    let sse = squared_error(cover, marked)?;
    let pixels = cover.len() as u64;
    Ok(QualityReport {
        squared_error: sse,
        pixels,
        mse: sse as f64 / pixels as f64,
        psnr: psnr_from_sse(sse, pixels),
        payload_bits,
        bpp: bpp(payload_bits, cover),
    })
}
