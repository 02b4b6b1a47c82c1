//! Histogram-shifting embedding and extraction over the detail subbands of an
//! integer wavelet decomposition.
//!
//! A pass on a subband picks a peak value `P`, empties the neighbouring bin
//! (`P+1` for [`Direction::Right`], `P-1` for [`Direction::Left`]) by shifting
//! everything beyond it one step outward, then walks the subband in raster
//! order. Each coefficient equal to `P` carries one bit: `0` leaves it at `P`,
//! `1` moves it into the emptied bin. Passes on one subband move outward
//! (`P, P+2, P+4, ...` on the right, `P-1, P-3, ...` on the left), so later
//! passes never revisit bins written by earlier ones.
//!
//! Extraction runs the passes in reverse order: each pass reads its bits,
//! folds the `1` bin back onto `P` and closes the gap. Undoing in embedding
//! order is wrong as soon as two passes share a subband, because the earlier
//! pass's carriers have been displaced by the later shift.

use std::fmt;
use std::str::FromStr;

use crate::bits::BitStream;
use crate::error::{Error, Result};
use crate::histogram::{
    build_histogram, find_peak, shift_left_below_in_place, shift_left_in_place,
    shift_right_below_in_place, shift_right_in_place, Histogram,
};
use crate::image_io::GrayImage;
use crate::lifting::{
    check_levels, default_subband_order, forward_iwt, inverse_iwt, CoeffPlane, SubbandId,
    SubbandSet, WaveletId,
};

pub const MAX_NARROWING_MARGIN: u8 = 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Direction {
    Right,
    Left,
}

impl Direction {
    pub fn code(self) -> u8 {
        match self {
            Direction::Right => 0,
            Direction::Left => 1,
        }
    }

    pub fn from_code(code: u8) -> Option<Self> {
        match code {
            0 => Some(Direction::Right),
            1 => Some(Direction::Left),
            _ => None,
        }
    }

    /// Bin that receives the `1` bits for a pass at `peak`.
    pub fn zero_point(self, peak: i32) -> i32 {
        match self {
            Direction::Right => peak + 1,
            Direction::Left => peak - 1,
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::Right => "right",
            Direction::Left => "left",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum SideSchedule {
    #[default]
    RightOnly,
    /// Right and left passes alternate on each subband.
    Alternate,
}

impl SideSchedule {
    pub fn code(self) -> u8 {
        match self {
            SideSchedule::RightOnly => 0,
            SideSchedule::Alternate => 1,
        }
    }

    pub fn from_code(code: u8) -> Option<Self> {
        match code {
            0 => Some(SideSchedule::RightOnly),
            1 => Some(SideSchedule::Alternate),
            _ => None,
        }
    }
}

impl FromStr for SideSchedule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "right" | "right-only" | "right_only" => Ok(SideSchedule::RightOnly),
            "alternate" | "both" => Ok(SideSchedule::Alternate),
            other => Err(Error::InvalidConfig(format!("unknown schedule {other:?}"))),
        }
    }
}

/// How the peak of each follow-up pass is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum PeakPolicy {
    /// Fixed stride: the next right peak is the previous one plus 2.
    #[default]
    Literal,
    /// Re-run the argmax over the bins beyond the previous pass, skipping empty bins.
    AutoPeak,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmbedConfig {
    pub wavelet: WaveletId,
    pub levels: usize,
    pub subband_order: Vec<SubbandId>,
    pub side_schedule: SideSchedule,
    pub peak_policy: PeakPolicy,
    pub max_passes_per_subband: usize,
    pub narrowing_margin: u8,
}

impl Default for EmbedConfig {
    fn default() -> Self {
        Self::new(WaveletId::Cdf53, 1)
    }
}

impl EmbedConfig {
    /// Marks every detail subband, finest level first, `LH, HL, HH` within a level.
    pub fn new(wavelet: WaveletId, levels: usize) -> Self {
        Self {
            wavelet,
            levels,
            subband_order: default_subband_order(levels),
            side_schedule: SideSchedule::RightOnly,
            peak_policy: PeakPolicy::Literal,
            max_passes_per_subband: 32,
            narrowing_margin: 0,
        }
    }

    pub fn with_schedule(mut self, schedule: SideSchedule) -> Self {
        self.side_schedule = schedule;
        self
    }

    pub fn with_peak_policy(mut self, policy: PeakPolicy) -> Self {
        self.peak_policy = policy;
        self
    }

    pub fn with_margin(mut self, margin: u8) -> Self {
        self.narrowing_margin = margin;
        self
    }

    pub fn with_max_passes(mut self, max: usize) -> Self {
        self.max_passes_per_subband = max;
        self
    }

    pub fn with_subband_order(mut self, order: Vec<SubbandId>) -> Self {
        self.subband_order = order;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidConfig(msg));
        if self.levels == 0 || self.levels > usize::from(u8::MAX) {
            return bad(format!("levels must be in 1..=255, got {}", self.levels));
        }
        if self.max_passes_per_subband == 0 {
            return bad("max_passes_per_subband must be at least 1".into());
        }
        if self.narrowing_margin > MAX_NARROWING_MARGIN {
            return bad(format!(
                "narrowing margin {} exceeds {MAX_NARROWING_MARGIN}",
                self.narrowing_margin
            ));
        }
        if self.subband_order.is_empty() {
            return bad("subband order is empty".into());
        }
        for (i, id) in self.subband_order.iter().enumerate() {
            if id.level == 0 || id.level > self.levels {
                return bad(format!("subband {id} is outside levels 1..={}", self.levels));
            }
            if self.subband_order[..i].contains(id) {
                return bad(format!("subband {id} listed twice"));
            }
        }
        Ok(())
    }
}

/// One embedding pass as recorded in the key.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PassRecord {
    pub subband: SubbandId,
    pub direction: Direction,
    pub peak: i32,
    pub bits_embedded: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SideInfo {
    pub wavelet: WaveletId,
    pub levels: usize,
    pub side_schedule: SideSchedule,
    pub passes: Vec<PassRecord>,
    pub payload_length_bits: u64,
    pub narrowing_margin: u8,
    /// `(pixel index, original value)` for every pixel moved by narrowing.
    pub narrowing_map: Vec<(u32, u8)>,
    pub payload_checksum: u32,
}

impl SideInfo {
    /// Number of passes that carried at least one bit.
    pub fn points_used(&self) -> usize {
        self.passes.iter().filter(|p| p.bits_embedded > 0).count()
    }
}

/// A scheduled pass: `capacity` is the peak's occurrence count when the pass runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PlannedPass {
    pub subband: SubbandId,
    pub direction: Direction,
    pub peak: i32,
    pub capacity: u64,
    pub bits: u64,
}

/// Per-pass observations collected while embedding.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PassAudit {
    pub subband: SubbandId,
    pub direction: Direction,
    pub peak: i32,
    /// Occupancy of the emptied bin right after the shift; always 0 for a sound pass.
    pub zero_point_count: u64,
    /// Largest `|after - before|` over the subband for this pass.
    pub max_abs_change: i32,
    /// Whether every changed coefficient started on the pass side of the peak.
    pub changes_confined: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct EmbedAudit {
    pub passes: Vec<PassAudit>,
}

impl EmbedAudit {
    pub fn is_clean(&self) -> bool {
        self.passes
            .iter()
            .all(|p| p.zero_point_count == 0 && p.max_abs_change <= 1 && p.changes_confined)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CapacityReport {
    pub passes: Vec<PlannedPass>,
    pub total_bits: u64,
    pub bpp: f64,
}

fn open_zero_point(coeffs: &mut [i32], peak: i32, direction: Direction) -> Result<()> {
    match direction {
        Direction::Right => shift_right_in_place(coeffs, peak + 1),
        Direction::Left => shift_left_below_in_place(coeffs, peak - 1),
    }
}

fn close_zero_point(coeffs: &mut [i32], peak: i32, direction: Direction) {
    match direction {
        Direction::Right => shift_left_in_place(coeffs, peak + 2),
        Direction::Left => shift_right_below_in_place(coeffs, peak - 2),
    }
}

fn embed_pass_in_place(coeffs: &mut [i32], peak: i32, direction: Direction, bits: &[bool]) -> Result<usize> {
    let one = direction.zero_point(peak);
    let occupied = coeffs.iter().filter(|&&c| c == one).count() as u64;
    if occupied != 0 {
        return Err(Error::ZeroPointOccupied {
            value: one,
            count: occupied,
        });
    }
    let mut consumed = 0;
    for c in coeffs.iter_mut() {
        if consumed == bits.len() {
            break;
        }
        if *c == peak {
            if bits[consumed] {
                *c = one;
            }
            consumed += 1;
        }
    }
    Ok(consumed)
}

fn extract_pass_in_place(
    coeffs: &mut [i32],
    peak: i32,
    direction: Direction,
    expected_bits: u64,
) -> Result<BitStream> {
    let one = direction.zero_point(peak);
    let mut bits = BitStream::new();
    for c in coeffs.iter_mut() {
        if bits.len() as u64 == expected_bits {
            break;
        }
        if *c == peak {
            bits.push(false);
        } else if *c == one {
            bits.push(true);
            *c = peak;
        }
    }
    if (bits.len() as u64) < expected_bits {
        return Err(Error::BitCountExhausted {
            expected: expected_bits,
            found: bits.len() as u64,
        });
    }
    close_zero_point(coeffs, peak, direction);
    Ok(bits)
}

/// Embeds a prefix of `bits` into a plane whose zero point is already open.
///
/// Returns the modified plane and the number of bits consumed.
pub fn embed_pass(
    plane: &CoeffPlane,
    peak: i32,
    direction: Direction,
    bits: &[bool],
) -> Result<(CoeffPlane, usize)> {
    let mut out = plane.clone();
    let consumed = embed_pass_in_place(out.coeffs_mut(), peak, direction, bits)?;
    Ok((out, consumed))
}

/// Reads `expected_bits` bits from a marked plane and undoes that pass.
pub fn extract_pass(
    plane: &CoeffPlane,
    peak: i32,
    direction: Direction,
    expected_bits: u64,
) -> Result<(CoeffPlane, BitStream)> {
    let mut out = plane.clone();
    let bits = extract_pass_in_place(out.coeffs_mut(), peak, direction, expected_bits)?;
    Ok((out, bits))
}

/// Planner state for one subband. The histogram tracks the shifts only;
/// embedded bits land in bins that later passes never inspect.
struct SubbandCursor {
    id: SubbandId,
    hist: Histogram,
    anchor: Option<i32>,
    last_right: Option<i32>,
    last_left: Option<i32>,
    right_done: bool,
    left_done: bool,
    passes: usize,
}

impl SubbandCursor {
    fn new(id: SubbandId, plane: &CoeffPlane) -> Self {
        let hist = build_histogram(plane);
        let anchor = find_peak(&hist).ok().map(|p| p.value);
        Self {
            id,
            hist,
            anchor,
            last_right: None,
            last_left: None,
            right_done: anchor.is_none(),
            left_done: anchor.is_none(),
            passes: 0,
        }
    }

    fn next_peak(&self, direction: Direction, policy: PeakPolicy) -> Option<i32> {
        let anchor = self.anchor?;
        match (direction, policy) {
            (Direction::Right, PeakPolicy::Literal) => {
                let p = self.last_right.map_or(anchor, |last| last + 2);
                (self.hist.max_value()? >= p).then_some(p)
            }
            (Direction::Left, PeakPolicy::Literal) => {
                let p = self.last_left.map_or(anchor - 1, |last| last - 2);
                (self.hist.min_value()? <= p).then_some(p)
            }
            (Direction::Right, PeakPolicy::AutoPeak) => {
                let lo = self.last_right.map_or(anchor, |last| last + 2);
                self.hist.peak_in(lo, i32::MAX).map(|p| p.value)
            }
            (Direction::Left, PeakPolicy::AutoPeak) => {
                let hi = self.last_left.map_or(anchor - 1, |last| last - 2);
                self.hist.peak_in(i32::MIN, hi).map(|p| p.value)
            }
        }
    }

    /// Schedules the next pass, or `None` once this subband has nothing left to offer.
    fn advance(&mut self, cfg: &EmbedConfig) -> Option<(Direction, i32, u64)> {
        if self.passes >= cfg.max_passes_per_subband {
            return None;
        }
        let preferred = match cfg.side_schedule {
            SideSchedule::Alternate if self.passes % 2 == 1 => Direction::Left,
            _ => Direction::Right,
        };
        let allowed = |d: Direction| match d {
            Direction::Right => true,
            Direction::Left => cfg.side_schedule == SideSchedule::Alternate,
        };
        let other = match preferred {
            Direction::Right => Direction::Left,
            Direction::Left => Direction::Right,
        };
        for direction in [preferred, other] {
            if !allowed(direction) || self.side_done(direction) {
                continue;
            }
            match self.next_peak(direction, cfg.peak_policy) {
                Some(peak) => {
                    let capacity = self.hist.count(peak);
                    match direction {
                        Direction::Right => {
                            self.hist.shift_up_from(peak + 1);
                            self.last_right = Some(peak);
                        }
                        Direction::Left => {
                            self.hist.shift_down_to(peak - 1);
                            self.last_left = Some(peak);
                        }
                    }
                    self.passes += 1;
                    return Some((direction, peak, capacity));
                }
                None => self.mark_done(direction),
            }
        }
        None
    }

    fn side_done(&self, direction: Direction) -> bool {
        match direction {
            Direction::Right => self.right_done,
            Direction::Left => self.left_done,
        }
    }

    fn mark_done(&mut self, direction: Direction) {
        match direction {
            Direction::Right => self.right_done = true,
            Direction::Left => self.left_done = true,
        }
    }
}

/// Round-robin schedule over the configured subbands until `limit` bits are
/// placed (or every subband is exhausted when `limit` is `None`).
fn schedule(sb: &SubbandSet, limit: Option<u64>, cfg: &EmbedConfig) -> Result<Vec<PlannedPass>> {
    cfg.validate()?;
    if sb.levels() < cfg.levels {
        return Err(Error::InvalidConfig(format!(
            "configuration needs {} levels, decomposition has {}",
            cfg.levels,
            sb.levels()
        )));
    }
    let mut remaining = limit.unwrap_or(u64::MAX);
    let mut plan = Vec::new();
    if remaining == 0 {
        return Ok(plan);
    }
    let mut cursors: Vec<SubbandCursor> = cfg
        .subband_order
        .iter()
        .map(|&id| {
            let plane = sb.detail(id).expect("validated subband id");
            SubbandCursor::new(id, plane)
        })
        .collect();
    let mut active = vec![true; cursors.len()];

    'rounds: while active.iter().any(|&a| a) {
        for (cursor, live) in cursors.iter_mut().zip(active.iter_mut()) {
            if !*live {
                continue;
            }
            let Some((direction, peak, capacity)) = cursor.advance(cfg) else {
                *live = false;
                continue;
            };
            let bits = capacity.min(remaining);
            remaining -= bits;
            plan.push(PlannedPass {
                subband: cursor.id,
                direction,
                peak,
                capacity,
                bits,
            });
            if remaining == 0 {
                break 'rounds;
            }
        }
    }

    // zero-bit passes only matter when a later pass on the same subband carries bits
    let mut carrying = std::collections::HashSet::new();
    let mut keep = vec![false; plan.len()];
    for (i, p) in plan.iter().enumerate().rev() {
        if p.bits > 0 {
            carrying.insert(p.subband);
        }
        keep[i] = carrying.contains(&p.subband);
    }
    let mut keep = keep.into_iter();
    plan.retain(|_| keep.next().unwrap_or(false));
    Ok(plan)
}

/// Allocates `payload_bits` bits to passes, failing with the achievable total when they do not fit.
pub fn plan_passes(sb: &SubbandSet, payload_bits: u64, cfg: &EmbedConfig) -> Result<Vec<PlannedPass>> {
    let plan = schedule(sb, Some(payload_bits), cfg)?;
    let placed: u64 = plan.iter().map(|p| p.bits).sum();
    if placed < payload_bits {
        return Err(Error::InsufficientCapacity {
            requested: payload_bits,
            achievable: placed,
        });
    }
    Ok(plan)
}

/// Moves pixels within `margin` of either end of the range inward by `margin`.
pub fn narrow_pixels(img: &GrayImage, margin: u8) -> Result<(GrayImage, Vec<(u32, u8)>)> {
    if margin > MAX_NARROWING_MARGIN {
        return Err(Error::InvalidConfig(format!(
            "narrowing margin {margin} exceeds {MAX_NARROWING_MARGIN}"
        )));
    }
    let mut out = img.clone();
    let mut map = Vec::new();
    if margin == 0 {
        return Ok((out, map));
    }
    let high = 255 - margin;
    for (i, p) in out.pixels_mut().iter_mut().enumerate() {
        let original = *p;
        if original < margin {
            *p = original + margin;
        } else if original > high {
            *p = original - margin;
        } else {
            continue;
        }
        let index = u32::try_from(i).map_err(|_| Error::InvalidImage("image too large for a key".into()))?;
        map.push((index, original));
    }
    Ok((out, map))
}

fn payload_too_large(bits: usize) -> Error {
    Error::InvalidConfig(format!("payload of {bits} bits does not fit a key"))
}

fn embed_impl(
    img: &GrayImage,
    payload: &BitStream,
    cfg: &EmbedConfig,
    mut audit: Option<&mut EmbedAudit>,
) -> Result<(GrayImage, SideInfo)> {
    cfg.validate()?;
    check_levels(img.width(), img.height(), cfg.levels)?;
    let payload_length_bits = u64::try_from(payload.len()).map_err(|_| payload_too_large(payload.len()))?;
    let mut side = SideInfo {
        wavelet: cfg.wavelet,
        levels: cfg.levels,
        side_schedule: cfg.side_schedule,
        passes: Vec::new(),
        payload_length_bits,
        narrowing_margin: cfg.narrowing_margin,
        narrowing_map: Vec::new(),
        payload_checksum: payload.crc32(),
    };
    if payload.is_empty() {
        return Ok((img.clone(), side));
    }

    let (cover, narrowing_map) = narrow_pixels(img, cfg.narrowing_margin)?;
    let mut sb = forward_iwt(&cover, cfg.wavelet, cfg.levels)?;
    let plan = plan_passes(&sb, payload_length_bits, cfg)?;

    let bits = payload.bits();
    let mut cursor = 0usize;
    for pass in &plan {
        let plane = sb.detail_mut(pass.subband).expect("planned subband exists");
        let before = audit.as_ref().map(|_| plane.coeffs().to_vec());
        let coeffs = plane.coeffs_mut();

        open_zero_point(coeffs, pass.peak, pass.direction)?;
        let zero_point = pass.direction.zero_point(pass.peak);
        let zero_point_count = coeffs.iter().filter(|&&c| c == zero_point).count() as u64;

        let take = pass.bits as usize;
        let consumed = embed_pass_in_place(coeffs, pass.peak, pass.direction, &bits[cursor..cursor + take])?;
        assert_eq!(consumed, take, "planner and plane disagree on peak occupancy at {}", pass.subband);
        cursor += consumed;

        if let (Some(audit), Some(before)) = (audit.as_deref_mut(), before) {
            let mut max_abs_change = 0;
            let mut changes_confined = true;
            for (&old, &new) in before.iter().zip(coeffs.iter()) {
                if old == new {
                    continue;
                }
                max_abs_change = max_abs_change.max((new - old).abs());
                changes_confined &= match pass.direction {
                    Direction::Right => old >= pass.peak,
                    Direction::Left => old <= pass.peak,
                };
            }
            audit.passes.push(PassAudit {
                subband: pass.subband,
                direction: pass.direction,
                peak: pass.peak,
                zero_point_count,
                max_abs_change,
                changes_confined,
            });
        }

        side.passes.push(PassRecord {
            subband: pass.subband,
            direction: pass.direction,
            peak: pass.peak,
            bits_embedded: pass.bits,
        });
    }
    debug_assert_eq!(cursor, bits.len());

    let marked = inverse_iwt(&sb)?;
    let marked = GrayImage::from_samples(img.width(), img.height(), marked.coeffs())?;
    side.narrowing_map = narrowing_map;
    Ok((marked, side))
}

/// Hides `payload` in `img`. Nothing is produced unless every reconstructed pixel stays in `[0, 255]`.
pub fn embed(img: &GrayImage, payload: &BitStream, cfg: &EmbedConfig) -> Result<(GrayImage, SideInfo)> {
    embed_impl(img, payload, cfg, None)
}

/// [`embed`] plus a per-pass record of zero-point occupancy and coefficient perturbation.
pub fn embed_audited(
    img: &GrayImage,
    payload: &BitStream,
    cfg: &EmbedConfig,
) -> Result<(GrayImage, SideInfo, EmbedAudit)> {
    let mut audit = EmbedAudit::default();
    let (marked, side) = embed_impl(img, payload, cfg, Some(&mut audit))?;
    Ok((marked, side, audit))
}

fn check_side_info(marked: &GrayImage, side: &SideInfo) -> Result<()> {
    check_levels(marked.width(), marked.height(), side.levels).map_err(|_| {
        Error::DimensionMismatch(format!(
            "{}x{} image cannot hold {} decomposition levels",
            marked.width(),
            marked.height(),
            side.levels
        ))
    })?;
    if let Some(&(index, _)) = side.narrowing_map.iter().find(|(i, _)| *i as usize >= marked.len()) {
        return Err(Error::DimensionMismatch(format!(
            "narrowing map entry {index} lies outside a {}-pixel image",
            marked.len()
        )));
    }
    if let Some(pass) = side.passes.iter().find(|p| p.subband.level == 0 || p.subband.level > side.levels) {
        return Err(Error::InvalidKey(format!(
            "pass on {} exceeds {} levels",
            pass.subband, side.levels
        )));
    }
    let total: u64 = side.passes.iter().map(|p| p.bits_embedded).sum();
    if total != side.payload_length_bits {
        return Err(Error::InvalidKey(format!(
            "passes carry {total} bits but the payload has {}",
            side.payload_length_bits
        )));
    }
    Ok(())
}

/// Recovers the payload and the exact cover image from a marked image and its key.
pub fn extract(marked: &GrayImage, side: &SideInfo) -> Result<(BitStream, GrayImage)> {
    check_side_info(marked, side)?;
    if side.passes.is_empty() && side.narrowing_map.is_empty() {
        let payload = BitStream::new();
        if payload.crc32() != side.payload_checksum {
            return Err(Error::ChecksumMismatch {
                expected: side.payload_checksum,
                actual: payload.crc32(),
            });
        }
        return Ok((payload, marked.clone()));
    }

    let mut sb = forward_iwt(marked, side.wavelet, side.levels)?;
    let mut segments = vec![BitStream::new(); side.passes.len()];
    for (i, pass) in side.passes.iter().enumerate().rev() {
        let plane = sb.detail_mut(pass.subband).expect("checked subband level");
        segments[i] = extract_pass_in_place(plane.coeffs_mut(), pass.peak, pass.direction, pass.bits_embedded)?;
    }
    let mut payload = BitStream::new();
    for segment in &segments {
        payload.extend_from(segment);
    }
    let actual = payload.crc32();
    if actual != side.payload_checksum {
        return Err(Error::ChecksumMismatch {
            expected: side.payload_checksum,
            actual,
        });
    }

    let mut restored = inverse_iwt(&sb)?.into_coeffs();
    for &(index, original) in &side.narrowing_map {
        restored[index as usize] = i32::from(original);
    }
    let restored = GrayImage::from_samples(marked.width(), marked.height(), &restored)?;
    Ok((payload, restored))
}

/// Achievable bits per pass and in total when every scheduled pass is filled.
pub fn capacity(img: &GrayImage, cfg: &EmbedConfig) -> Result<CapacityReport> {
    cfg.validate()?;
    let (cover, _) = narrow_pixels(img, cfg.narrowing_margin)?;
    let sb = forward_iwt(&cover, cfg.wavelet, cfg.levels)?;
    let passes = schedule(&sb, None, cfg)?;
    let total_bits = passes.iter().map(|p| p.bits).sum();
    Ok(CapacityReport {
        passes,
        total_bits,
        bpp: crate::metrics::bpp(total_bits, img),
    })
}
