//! Integer-to-integer wavelet transforms built from lifting steps.
//!
//! Every rounding is a floor (arithmetic shift), so each predict/update step
//! is undone exactly by running it again with the opposite sign. The 2D
//! transform is separable: rows first, then columns, recursing on the
//! approximation quadrant.
//!
//! A dimension of length `m` splits into `ceil(m/2)` approximation samples and
//! `floor(m/2)` detail samples, so odd sizes need no padding.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::image_io::GrayImage;

/// A one-dimensional integer lifting scheme.
///
/// `approx` has length `ceil(n/2)` and `detail` has length `floor(n/2)` for an
/// input of length `n >= 1`.
pub trait LiftingScheme: Sync {
    fn forward(&self, signal: &[i32], approx: &mut [i32], detail: &mut [i32]);
    fn inverse(&self, approx: &[i32], detail: &[i32], signal: &mut [i32]);
}

/// Integer S-transform (the reversible Haar / db1 analogue).
#[derive(Debug, Clone, Copy, Default)]
pub struct HaarS;

impl LiftingScheme for HaarS {
    fn forward(&self, signal: &[i32], approx: &mut [i32], detail: &mut [i32]) {
        for (i, d) in detail.iter_mut().enumerate() {
            let (a, b) = (signal[2 * i], signal[2 * i + 1]);
            *d = a - b;
            approx[i] = b + (*d >> 1);
        }
        if signal.len() % 2 == 1 {
            approx[detail.len()] = signal[signal.len() - 1];
        }
    }

    fn inverse(&self, approx: &[i32], detail: &[i32], signal: &mut [i32]) {
        for (i, &d) in detail.iter().enumerate() {
            let b = approx[i] - (d >> 1);
            signal[2 * i] = d + b;
            signal[2 * i + 1] = b;
        }
        if signal.len() % 2 == 1 {
            signal[signal.len() - 1] = approx[detail.len()];
        }
    }
}

/// Reversible CDF 5/3 (LeGall) lifting with whole-sample symmetric extension.
#[derive(Debug, Clone, Copy, Default)]
pub struct Cdf53;

impl Cdf53 {
    // x[n] mirrors to x[n-2] on the right edge, x[-1] to x[1] on the left.
    fn predict(approx: &[i32], i: usize) -> i32 {
        let right = approx[(i + 1).min(approx.len() - 1)];
        (approx[i] + right) >> 1
    }

    fn update(detail: &[i32], i: usize) -> i32 {
        let left = detail[i.saturating_sub(1)];
        let right = detail[i.min(detail.len() - 1)];
        (left + right + 2) >> 2
    }
}

impl LiftingScheme for Cdf53 {
    fn forward(&self, signal: &[i32], approx: &mut [i32], detail: &mut [i32]) {
        for (i, s) in approx.iter_mut().enumerate() {
            *s = signal[2 * i];
        }
        for i in 0..detail.len() {
            detail[i] = signal[2 * i + 1] - Self::predict(approx, i);
        }
        if !detail.is_empty() {
            for (i, s) in approx.iter_mut().enumerate() {
                *s += Self::update(detail, i);
            }
        }
    }

    fn inverse(&self, approx: &[i32], detail: &[i32], signal: &mut [i32]) {
        let mut even = approx.to_vec();
        if !detail.is_empty() {
            for (i, s) in even.iter_mut().enumerate() {
                *s -= Self::update(detail, i);
            }
        }
        for (i, &d) in detail.iter().enumerate() {
            signal[2 * i + 1] = d + Self::predict(&even, i);
        }
        for (i, &s) in even.iter().enumerate() {
            signal[2 * i] = s;
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum WaveletId {
    HaarS,
    Cdf53,
}

impl WaveletId {
    pub const ALL: [WaveletId; 2] = [WaveletId::HaarS, WaveletId::Cdf53];

    pub fn scheme(self) -> &'static dyn LiftingScheme {
        match self {
            WaveletId::HaarS => &HaarS,
            WaveletId::Cdf53 => &Cdf53,
        }
    }

    /// Tag used in key files.
    pub fn code(self) -> u8 {
        match self {
            WaveletId::HaarS => 0,
            WaveletId::Cdf53 => 1,
        }
    }

    pub fn from_code(code: u8) -> Option<Self> {
        match code {
            0 => Some(WaveletId::HaarS),
            1 => Some(WaveletId::Cdf53),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            WaveletId::HaarS => "haar",
            WaveletId::Cdf53 => "cdf53",
        }
    }
}

impl fmt::Display for WaveletId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for WaveletId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "haar" | "haar_s" | "db1" | "s" => Ok(WaveletId::HaarS),
            "cdf53" | "cdf22_53" | "cdf2.2" | "5/3" | "legall" => Ok(WaveletId::Cdf53),
            other => Err(Error::InvalidConfig(format!("unknown wavelet {other:?}"))),
        }
    }
}

pub fn forward_1d(signal: &[i32], wavelet: WaveletId) -> Result<(Vec<i32>, Vec<i32>)> {
    if signal.is_empty() {
        return Err(Error::EmptySignal);
    }
    let n = signal.len();
    let mut approx = vec![0; n.div_ceil(2)];
    let mut detail = vec![0; n / 2];
    wavelet.scheme().forward(signal, &mut approx, &mut detail);
    Ok((approx, detail))
}

pub fn inverse_1d(
    approx: &[i32],
    detail: &[i32],
    wavelet: WaveletId,
    original_length: usize,
) -> Result<Vec<i32>> {
    if original_length == 0
        || approx.len() != original_length.div_ceil(2)
        || detail.len() != original_length / 2
    {
        return Err(Error::LengthMismatch {
            approx: approx.len(),
            detail: detail.len(),
            original: original_length,
        });
    }
    let mut signal = vec![0; original_length];
    wavelet.scheme().inverse(approx, detail, &mut signal);
    Ok(signal)
}

/// Row-major plane of signed integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CoeffPlane {
    width: usize,
    height: usize,
    coeffs: Vec<i32>,
}

impl CoeffPlane {
    pub fn new(width: usize, height: usize, coeffs: Vec<i32>) -> Result<Self> {
        if coeffs.len() != width * height {
            return Err(Error::InconsistentDimensions(format!(
                "{} coefficients for a {width}x{height} plane",
                coeffs.len()
            )));
        }
        Ok(Self {
            width,
            height,
            coeffs,
        })
    }

    /// A single-row plane, handy for tests and 1D experiments.
    pub fn from_row(coeffs: Vec<i32>) -> Self {
        Self {
            width: coeffs.len(),
            height: usize::from(!coeffs.is_empty()),
            coeffs,
        }
    }

    pub fn zeros(width: usize, height: usize) -> Self {
        Self {
            width,
            height,
            coeffs: vec![0; width * height],
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &[i32] {
        &self.coeffs
    }

    pub fn coeffs_mut(&mut self) -> &mut [i32] {
        &mut self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<i32> {
        self.coeffs
    }

    pub fn get(&self, x: usize, y: usize) -> i32 {
        self.coeffs[y * self.width + x]
    }

    fn crop(&self, x0: usize, y0: usize, width: usize, height: usize) -> CoeffPlane {
        let mut coeffs = Vec::with_capacity(width * height);
        for y in y0..y0 + height {
            let row = y * self.width;
            coeffs.extend_from_slice(&self.coeffs[row + x0..row + x0 + width]);
        }
        CoeffPlane {
            width,
            height,
            coeffs,
        }
    }

    fn paste(&mut self, x0: usize, y0: usize, src: &CoeffPlane) {
        for y in 0..src.height {
            let dst = (y0 + y) * self.width + x0;
            self.coeffs[dst..dst + src.width]
                .copy_from_slice(&src.coeffs[y * src.width..(y + 1) * src.width]);
        }
    }
}

/// Orientation of a detail subband.
///
/// `LH` is lowpass along the row index (vertical) and highpass along the
/// column index (horizontal), i.e. the top-right quadrant of a level. `HL`
/// is the bottom-left quadrant and `HH` the bottom-right.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SubbandKind {
    LH,
    HL,
    HH,
}

impl SubbandKind {
    pub const ALL: [SubbandKind; 3] = [SubbandKind::LH, SubbandKind::HL, SubbandKind::HH];

    pub fn code(self) -> u8 {
        match self {
            SubbandKind::LH => 0,
            SubbandKind::HL => 1,
            SubbandKind::HH => 2,
        }
    }

    pub fn from_code(code: u8) -> Option<Self> {
        Self::ALL.get(usize::from(code)).copied()
    }
}

impl fmt::Display for SubbandKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            SubbandKind::LH => "LH",
            SubbandKind::HL => "HL",
            SubbandKind::HH => "HH",
        };
        f.write_str(s)
    }
}

/// A detail subband addressed by orientation and level (1 = finest).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubbandId {
    pub kind: SubbandKind,
    pub level: usize,
}

impl SubbandId {
    pub fn new(kind: SubbandKind, level: usize) -> Self {
        Self { kind, level }
    }
}

impl fmt::Display for SubbandId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.kind, self.level)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DetailLevel {
    pub level: usize,
    pub lh: CoeffPlane,
    pub hl: CoeffPlane,
    pub hh: CoeffPlane,
}

impl DetailLevel {
    pub fn plane(&self, kind: SubbandKind) -> &CoeffPlane {
        match kind {
            SubbandKind::LH => &self.lh,
            SubbandKind::HL => &self.hl,
            SubbandKind::HH => &self.hh,
        }
    }

    pub fn plane_mut(&mut self, kind: SubbandKind) -> &mut CoeffPlane {
        match kind {
            SubbandKind::LH => &mut self.lh,
            SubbandKind::HL => &mut self.hl,
            SubbandKind::HH => &mut self.hh,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubbandSet {
    pub wavelet: WaveletId,
    pub ll: CoeffPlane,
    /// `details[0]` is level 1 (finest).
    pub details: Vec<DetailLevel>,
    pub original_width: usize,
    pub original_height: usize,
}

impl SubbandSet {
    pub fn levels(&self) -> usize {
        self.details.len()
    }

    pub fn detail(&self, id: SubbandId) -> Option<&CoeffPlane> {
        let level = id.level.checked_sub(1)?;
        self.details.get(level).map(|d| d.plane(id.kind))
    }

    pub fn detail_mut(&mut self, id: SubbandId) -> Option<&mut CoeffPlane> {
        let level = id.level.checked_sub(1)?;
        self.details.get_mut(level).map(|d| d.plane_mut(id.kind))
    }

    /// All detail subbands, finest level first, `LH, HL, HH` within a level.
    pub fn detail_ids(&self) -> Vec<SubbandId> {
        default_subband_order(self.levels())
    }
}

pub fn default_subband_order(levels: usize) -> Vec<SubbandId> {
    (1..=levels)
        .flat_map(|level| SubbandKind::ALL.map(|kind| SubbandId::new(kind, level)))
        .collect()
}

/// Checks that every split of a `width x height` image over `levels` sees both dimensions ≥ 2.
pub fn check_levels(width: usize, height: usize, levels: usize) -> Result<()> {
    let too_many = || Error::TooManyLevels {
        levels,
        width,
        height,
    };
    if levels == 0 {
        return Err(too_many());
    }
    let (mut w, mut h) = (width, height);
    for _ in 0..levels {
        if w < 2 || h < 2 {
            return Err(too_many());
        }
        w = w.div_ceil(2);
        h = h.div_ceil(2);
    }
    Ok(())
}

fn forward_level(plane: &CoeffPlane, scheme: &dyn LiftingScheme) -> (CoeffPlane, [CoeffPlane; 3]) {
    let (w, h) = (plane.width, plane.height);
    let (cw, ch) = (w.div_ceil(2), h.div_ceil(2));
    let mut work = plane.coeffs.clone();

    for row in work.chunks_exact_mut(w) {
        let src = row.to_vec();
        let (approx, detail) = row.split_at_mut(cw);
        scheme.forward(&src, approx, detail);
    }

    let mut column = vec![0; h];
    let mut out = vec![0; h];
    for x in 0..w {
        for y in 0..h {
            column[y] = work[y * w + x];
        }
        let (approx, detail) = out.split_at_mut(ch);
        scheme.forward(&column, approx, detail);
        for y in 0..h {
            work[y * w + x] = out[y];
        }
    }

    let full = CoeffPlane {
        width: w,
        height: h,
        coeffs: work,
    };
    let ll = full.crop(0, 0, cw, ch);
    let lh = full.crop(cw, 0, w - cw, ch);
    let hl = full.crop(0, ch, cw, h - ch);
    let hh = full.crop(cw, ch, w - cw, h - ch);
    (ll, [lh, hl, hh])
}

fn inverse_level(ll: &CoeffPlane, detail: &DetailLevel, scheme: &dyn LiftingScheme) -> Result<CoeffPlane> {
    let (cw, ch) = (ll.width, ll.height);
    let (dw, dh) = (detail.lh.width, detail.hl.height);
    let (w, h) = (cw + dw, ch + dh);
    let consistent = detail.lh.height == ch
        && detail.hl.width == cw
        && detail.hh.width == dw
        && detail.hh.height == dh
        && cw == w.div_ceil(2)
        && ch == h.div_ceil(2);
    if !consistent {
        return Err(Error::InconsistentDimensions(format!(
            "level {}: LL {cw}x{ch}, LH {}x{}, HL {}x{}, HH {}x{}",
            detail.level,
            detail.lh.width,
            detail.lh.height,
            detail.hl.width,
            detail.hl.height,
            detail.hh.width,
            detail.hh.height
        )));
    }

    let mut full = CoeffPlane::zeros(w, h);
    full.paste(0, 0, ll);
    full.paste(cw, 0, &detail.lh);
    full.paste(0, ch, &detail.hl);
    full.paste(cw, ch, &detail.hh);
    let work = &mut full.coeffs;

    let mut column = vec![0; h];
    let mut out = vec![0; h];
    for x in 0..w {
        for y in 0..h {
            column[y] = work[y * w + x];
        }
        let (approx, det) = column.split_at(ch);
        scheme.inverse(approx, det, &mut out);
        for y in 0..h {
            work[y * w + x] = out[y];
        }
    }

    let mut row_out = vec![0; w];
    for row in work.chunks_exact_mut(w) {
        let (approx, det) = row.split_at(cw);
        scheme.inverse(approx, det, &mut row_out);
        row.copy_from_slice(&row_out);
    }
    Ok(full)
}

/// Forward 2D transform of an arbitrary integer plane.
pub fn forward_plane(plane: &CoeffPlane, wavelet: WaveletId, levels: usize) -> Result<SubbandSet> {
    check_levels(plane.width, plane.height, levels)?;
    let scheme = wavelet.scheme();
    let mut ll = plane.clone();
    let mut details = Vec::with_capacity(levels);
    for level in 1..=levels {
        let (next, [lh, hl, hh]) = forward_level(&ll, scheme);
        details.push(DetailLevel { level, lh, hl, hh });
        ll = next;
    }
    Ok(SubbandSet {
        wavelet,
        ll,
        details,
        original_width: plane.width,
        original_height: plane.height,
    })
}

pub fn forward_iwt(img: &GrayImage, wavelet: WaveletId, levels: usize) -> Result<SubbandSet> {
    let plane = CoeffPlane::new(img.width(), img.height(), img.samples())?;
    forward_plane(&plane, wavelet, levels)
}

/// Inverse 2D transform. Values are returned unclamped.
pub fn inverse_iwt(sb: &SubbandSet) -> Result<CoeffPlane> {
    let scheme = sb.wavelet.scheme();
    let mut ll = sb.ll.clone();
    for (i, detail) in sb.details.iter().enumerate().rev() {
        if detail.level != i + 1 {
            return Err(Error::InconsistentDimensions(format!(
                "detail level {} stored at position {}",
                detail.level,
                i + 1
            )));
        }
        ll = inverse_level(&ll, detail, scheme)?;
    }
    if ll.width != sb.original_width || ll.height != sb.original_height {
        return Err(Error::InconsistentDimensions(format!(
            "reconstruction is {}x{}, expected {}x{}",
            ll.width, ll.height, sb.original_width, sb.original_height
        )));
    }
    Ok(ll)
}
