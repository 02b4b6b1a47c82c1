//! Benchmark harness: embed / extract / measure over a grid of images,
//! wavelets and payload sizes.

use std::fmt::Write as _;

use rayon::prelude::*;

use crate::bits::BitStream;
use crate::codec::{embed, extract, EmbedConfig};
use crate::error::{Error, Result};
use crate::image_io::GrayImage;
use crate::lifting::WaveletId;
use crate::metrics::{bpp, psnr, Psnr};

pub const BENCH_HEADER: &str = "image,wavelet,payload_bits,bpp,psnr_db,passes,points_used";
pub const POINTS_HEADER: &str = "image,wavelet,points_used,payload_bits,psnr_db";
/// Cell marker for payloads the image could not carry.
pub const FAILED_CELL: &str = "xxx";

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PayloadTarget {
    Bpp(f64),
    Bits(u64),
}

impl PayloadTarget {
    pub fn bits_for(self, img: &GrayImage) -> u64 {
        match self {
            // small slack keeps e.g. 0.3 * 262144 from rounding down a whole bit
            PayloadTarget::Bpp(rate) => (rate * img.len() as f64 + 1e-9).floor().max(0.0) as u64,
            PayloadTarget::Bits(bits) => bits,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CellResult {
    pub psnr: Psnr,
    pub passes: usize,
    pub points_used: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub image: String,
    pub wavelet: WaveletId,
    pub payload_bits: u64,
    pub bpp: f64,
    /// `Err` holds the name of the error that stopped embedding.
    pub outcome: std::result::Result<CellResult, &'static str>,
}

impl BenchRow {
    pub fn psnr(&self) -> Option<Psnr> {
        self.outcome.as_ref().ok().map(|c| c.psnr)
    }

    pub fn to_csv_line(&self) -> String {
        let (psnr, passes, points) = match &self.outcome {
            Ok(c) => (c.psnr.to_string(), c.passes, c.points_used),
            Err(_) => (FAILED_CELL.to_string(), 0, 0),
        };
        format!(
            "{},{},{},{:.4},{},{},{}",
            self.image, self.wavelet, self.payload_bits, self.bpp, psnr, passes, points
        )
    }
}

#[derive(Debug, Clone)]
pub struct BenchSpec {
    pub wavelets: Vec<WaveletId>,
    pub targets: Vec<PayloadTarget>,
    /// Template for every cell; its wavelet is replaced per cell.
    pub config: EmbedConfig,
    pub seed: u64,
}

fn run_cell(name: &str, img: &GrayImage, wavelet: WaveletId, target: PayloadTarget, spec: &BenchSpec) -> Result<BenchRow> {
    let payload_bits = target.bits_for(img);
    let payload_len = usize::try_from(payload_bits)
        .map_err(|_| Error::InvalidConfig(format!("payload of {payload_bits} bits is too large")))?;
    let payload = BitStream::random(payload_len, spec.seed);
    let cfg = EmbedConfig {
        wavelet,
        ..spec.config.clone()
    };
    let row = |outcome| BenchRow {
        image: name.to_string(),
        wavelet,
        payload_bits,
        bpp: bpp(payload_bits, img),
        outcome,
    };

    let (marked, side) = match embed(img, &payload, &cfg) {
        Ok(done) => done,
        Err(e @ (Error::InsufficientCapacity { .. } | Error::PixelRangeOverflow { .. })) => {
            return Ok(row(Err(e.name())));
        }
        Err(e) => return Err(e),
    };
    let (recovered, restored) = extract(&marked, &side)?;
    if recovered != payload || restored != *img {
        return Err(Error::RoundTripMismatch(format!(
            "{name} / {wavelet} / {payload_bits} bits"
        )));
    }
    Ok(row(Ok(CellResult {
        psnr: psnr(img, &marked)?,
        passes: side.passes.len(),
        points_used: side.points_used(),
    })))
}

/// Runs every `(image, wavelet, target)` cell. Rows come back sorted by image,
/// wavelet and payload size regardless of scheduling.
pub fn run_bench(corpus: &[(String, GrayImage)], spec: &BenchSpec) -> Result<Vec<BenchRow>> {
    let cells: Vec<_> = corpus
        .iter()
        .flat_map(|(name, img)| {
            spec.wavelets
                .iter()
                .flat_map(move |&w| spec.targets.iter().map(move |&t| (name, img, w, t)))
        })
        .collect();
    let mut rows = cells
        .into_par_iter()
        .map(|(name, img, w, t)| run_cell(name, img, w, t, spec))
        .collect::<Result<Vec<_>>>()?;
    rows.sort_by(|a, b| {
        (&a.image, a.wavelet, a.payload_bits).cmp(&(&b.image, b.wavelet, b.payload_bits))
    });
    Ok(rows)
}

pub fn bench_csv(rows: &[BenchRow]) -> String {
    let mut out = String::from(BENCH_HEADER);
    out.push('\n');
    for row in rows {
        out.push_str(&row.to_csv_line());
        out.push('\n');
    }
    out
}

/// Quality against the number of histogram points that carried bits, successful cells only.
pub fn points_csv(rows: &[BenchRow]) -> String {
    let mut ok: Vec<_> = rows
        .iter()
        .filter_map(|r| r.outcome.as_ref().ok().map(|c| (r, c)))
        .collect();
    ok.sort_by(|(a, ca), (b, cb)| {
        (&a.image, a.wavelet, ca.points_used, a.payload_bits).cmp(&(&b.image, b.wavelet, cb.points_used, b.payload_bits))
    });
    let mut out = String::from(POINTS_HEADER);
    out.push('\n');
    for (row, cell) in ok {
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            row.image, row.wavelet, cell.points_used, row.payload_bits, cell.psnr
        );
    }
    out
}
