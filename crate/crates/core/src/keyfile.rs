//! Binary sidecar key (`RHK1`) carrying everything extraction needs.
//!
//! Layout, all integers little-endian:
//!
//! ```text
//! "RHK1"                 4 bytes
//! wavelet                u8   0 = haar, 1 = cdf53
//! levels                 u8
//! side schedule          u8   0 = right only, 1 = alternate
//! narrowing margin       u8
//! payload length (bits)  u64
//! payload CRC-32         u32
//! pass count             u16
//!   subband              u8   0 = LH, 1 = HL, 2 = HH
//!   level                u8
//!   direction            u8   0 = right, 1 = left
//!   peak                 i32
//!   bits embedded        u32
//! narrowing entries      u32
//!   pixel index          u32
//!   original value       u8
//! ```

use crate::codec::{Direction, PassRecord, SideInfo, SideSchedule};
use crate::error::{Error, Result};
use crate::lifting::{SubbandId, SubbandKind, WaveletId};

pub const KEY_MAGIC: &[u8; 4] = b"RHK1";

fn too_large(what: &str) -> Error {
    Error::InvalidKey(format!("{what} does not fit the key format"))
}

pub fn encode_key(side: &SideInfo) -> Result<Vec<u8>> {
    let levels = u8::try_from(side.levels).map_err(|_| too_large("level count"))?;
    let pass_count = u16::try_from(side.passes.len()).map_err(|_| too_large("pass count"))?;
    let map_count = u32::try_from(side.narrowing_map.len()).map_err(|_| too_large("narrowing map"))?;

    let mut out = Vec::with_capacity(25 + 11 * side.passes.len() + 5 * side.narrowing_map.len());
    out.extend_from_slice(KEY_MAGIC);
    out.push(side.wavelet.code());
    out.push(levels);
    out.push(side.side_schedule.code());
    out.push(side.narrowing_margin);
    out.extend_from_slice(&side.payload_length_bits.to_le_bytes());
    out.extend_from_slice(&side.payload_checksum.to_le_bytes());
    out.extend_from_slice(&pass_count.to_le_bytes());
    for pass in &side.passes {
        let level = u8::try_from(pass.subband.level).map_err(|_| too_large("subband level"))?;
        let bits = u32::try_from(pass.bits_embedded).map_err(|_| too_large("per-pass bit count"))?;
        out.push(pass.subband.kind.code());
        out.push(level);
        out.push(pass.direction.code());
        out.extend_from_slice(&pass.peak.to_le_bytes());
        out.extend_from_slice(&bits.to_le_bytes());
    }
    out.extend_from_slice(&map_count.to_le_bytes());
    for &(index, value) in &side.narrowing_map {
        out.extend_from_slice(&index.to_le_bytes());
        out.push(value);
    }
    Ok(out)
}

struct Reader<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    fn take<const N: usize>(&mut self, what: &str) -> Result<[u8; N]> {
        let end = self.pos + N;
        let slice = self
            .bytes
            .get(self.pos..end)
            .ok_or_else(|| Error::InvalidKey(format!("truncated while reading {what}")))?;
        self.pos = end;
        Ok(slice.try_into().expect("slice has length N"))
    }

    fn u8(&mut self, what: &str) -> Result<u8> {
        Ok(self.take::<1>(what)?[0])
    }
}

pub fn decode_key(bytes: &[u8]) -> Result<SideInfo> {
    let mut r = Reader { bytes, pos: 0 };
    if &r.take::<4>("magic")? != KEY_MAGIC {
        return Err(Error::InvalidKey("bad magic".into()));
    }
    let wavelet_code = r.u8("wavelet")?;
    let wavelet = WaveletId::from_code(wavelet_code)
        .ok_or_else(|| Error::InvalidKey(format!("unknown wavelet id {wavelet_code}")))?;
    let levels = usize::from(r.u8("levels")?);
    if levels == 0 {
        return Err(Error::InvalidKey("zero decomposition levels".into()));
    }
    let schedule_code = r.u8("schedule")?;
    let side_schedule = SideSchedule::from_code(schedule_code)
        .ok_or_else(|| Error::InvalidKey(format!("unknown schedule {schedule_code}")))?;
    let narrowing_margin = r.u8("margin")?;
    let payload_length_bits = u64::from_le_bytes(r.take("payload length")?);
    let payload_checksum = u32::from_le_bytes(r.take("checksum")?);

    let pass_count = u16::from_le_bytes(r.take("pass count")?);
    let mut passes = Vec::with_capacity(usize::from(pass_count));
    for _ in 0..pass_count {
        let kind_code = r.u8("subband")?;
        let kind = SubbandKind::from_code(kind_code)
            .ok_or_else(|| Error::InvalidKey(format!("unknown subband tag {kind_code}")))?;
        let level = usize::from(r.u8("level")?);
        let dir_code = r.u8("direction")?;
        let direction = Direction::from_code(dir_code)
            .ok_or_else(|| Error::InvalidKey(format!("unknown direction {dir_code}")))?;
        let peak = i32::from_le_bytes(r.take("peak")?);
        let bits_embedded = u64::from(u32::from_le_bytes(r.take("bit count")?));
        passes.push(PassRecord {
            subband: SubbandId::new(kind, level),
            direction,
            peak,
            bits_embedded,
        });
    }

    let map_count = u32::from_le_bytes(r.take("narrowing count")?);
    let mut narrowing_map = Vec::new();
    for _ in 0..map_count {
        let index = u32::from_le_bytes(r.take("pixel index")?);
        let value = r.u8("pixel value")?;
        narrowing_map.push((index, value));
    }
    if r.pos != bytes.len() {
        return Err(Error::InvalidKey(format!("{} trailing bytes", bytes.len() - r.pos)));
    }

    let total: u64 = passes.iter().map(|p| p.bits_embedded).sum();
    if total != payload_length_bits {
        return Err(Error::InvalidKey(format!(
            "passes carry {total} bits but the payload has {payload_length_bits}"
        )));
    }
    if narrowing_margin == 0 && !narrowing_map.is_empty() {
        return Err(Error::InvalidKey("narrowing map present with zero margin".into()));
    }

    Ok(SideInfo {
        wavelet,
        levels,
        side_schedule,
        passes,
        payload_length_bits,
        narrowing_margin,
        narrowing_map,
        payload_checksum,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sample() -> SideInfo {
        SideInfo {
            wavelet: WaveletId::Cdf53,
            levels: 2,
            side_schedule: SideSchedule::Alternate,
            passes: vec![
                PassRecord {
                    subband: SubbandId::new(SubbandKind::HL, 1),
                    direction: Direction::Right,
                    peak: 0,
                    bits_embedded: 5,
                },
                PassRecord {
                    subband: SubbandId::new(SubbandKind::HH, 2),
                    direction: Direction::Left,
                    peak: -3,
                    bits_embedded: 2,
                },
            ],
            payload_length_bits: 7,
            narrowing_margin: 4,
            narrowing_map: vec![(17, 2)],
            payload_checksum: 0xdead_beef,
        }
    }

    #[test]
    fn exact_layout() {
        let bytes = encode_key(&sample()).unwrap();
        let mut expected = b"RHK1".to_vec();
        expected.extend([1, 2, 1, 4]);
        expected.extend(7u64.to_le_bytes());
        expected.extend([0xef, 0xbe, 0xad, 0xde]);
        expected.extend([2, 0]);
        expected.extend([1, 1, 0, 0, 0, 0, 0, 5, 0, 0, 0]);
        expected.extend([2, 2, 1, 0xfd, 0xff, 0xff, 0xff, 2, 0, 0, 0]);
        expected.extend([1, 0, 0, 0, 17, 0, 0, 0, 2]);
        assert_eq!(bytes, expected);
        assert_eq!(decode_key(&bytes).unwrap(), sample());
    }

    #[test]
    fn rejects_damaged_keys() {
        let bytes = encode_key(&sample()).unwrap();
        assert!(matches!(decode_key(&bytes[..bytes.len() - 1]), Err(Error::InvalidKey(_))));
        let mut extra = bytes.clone();
        extra.push(0);
        assert!(decode_key(&extra).is_err());
        let mut magic = bytes.clone();
        magic[3] = b'2';
        assert!(decode_key(&magic).is_err());
        let mut wavelet = bytes.clone();
        wavelet[4] = 9;
        assert!(decode_key(&wavelet).is_err());
        let mut length = bytes;
        length[8] = 8;
        assert!(decode_key(&length).is_err());
    }

    proptest! {
        #[test]
        fn round_trip(
            passes in proptest::collection::vec((0u8..3, 1u8..4, 0u8..2, -50i32..50, 0u32..5000), 0..20),
            map in proptest::collection::vec((any::<u32>(), any::<u8>()), 0..20),
            crc in any::<u32>(),
        ) {
            let passes: Vec<_> = passes
                .into_iter()
                .map(|(k, l, d, peak, bits)| PassRecord {
                    subband: SubbandId::new(SubbandKind::from_code(k).unwrap(), usize::from(l)),
                    direction: Direction::from_code(d).unwrap(),
                    peak,
                    bits_embedded: u64::from(bits),
                })
                .collect();
            let side = SideInfo {
                wavelet: WaveletId::HaarS,
                levels: 3,
                side_schedule: SideSchedule::RightOnly,
                payload_length_bits: passes.iter().map(|p| p.bits_embedded).sum(),
                passes,
                narrowing_margin: 8,
                narrowing_map: map,
                payload_checksum: crc,
            };
            prop_assert_eq!(decode_key(&encode_key(&side).unwrap()).unwrap(), side);
        }
    }
}
