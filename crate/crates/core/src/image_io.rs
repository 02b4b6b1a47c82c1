//! 8-bit grayscale images and their PGM (P5/P2) encoding.
//!
//! The reader accepts binary and ASCII graymaps with `#` comments in the
//! header. The writer always produces the canonical binary layout
//! `P5\n<w> <h>\n255\n` followed by the raw raster.

use crate::error::{Error, Result};

/// Row-major 8-bit grayscale raster with a top-left origin.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GrayImage {
    width: usize,
    height: usize,
    pixels: Vec<u8>,
}

impl GrayImage {
    pub fn new(width: usize, height: usize, pixels: Vec<u8>) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::InvalidImage(format!(
                "dimensions must be positive, got {width}x{height}"
            )));
        }
        if pixels.len() != width * height {
            return Err(Error::InvalidImage(format!(
                "{} pixels supplied for a {width}x{height} image",
                pixels.len()
            )));
        }
        Ok(Self {
            width,
            height,
            pixels,
        })
    }

    pub fn filled(width: usize, height: usize, value: u8) -> Result<Self> {
        Self::new(width, height, vec![value; width * height])
    }

    /// Builds an image from signed samples, failing on the first sample outside `[0, 255]`.
    pub fn from_samples(width: usize, height: usize, samples: &[i32]) -> Result<Self> {
        let mut pixels = Vec::with_capacity(samples.len());
        for (index, &value) in samples.iter().enumerate() {
            match u8::try_from(value) {
                Ok(p) => pixels.push(p),
                Err(_) => return Err(Error::PixelRangeOverflow { index, value }),
            }
        }
        Self::new(width, height, pixels)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn len(&self) -> usize {
        self.pixels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pixels.is_empty()
    }

    pub fn pixels(&self) -> &[u8] {
        &self.pixels
    }

    pub fn pixels_mut(&mut self) -> &mut [u8] {
        &mut self.pixels
    }

    pub fn get(&self, x: usize, y: usize) -> u8 {
        self.pixels[y * self.width + x]
    }

    pub fn samples(&self) -> Vec<i32> {
        self.pixels.iter().map(|&p| i32::from(p)).collect()
    }

    pub fn into_pixels(self) -> Vec<u8> {
        self.pixels
    }
}

/// Byte cursor over a PNM header: whitespace separated tokens, `#` comments to end of line.
struct HeaderCursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> HeaderCursor<'a> {
    fn skip_whitespace_and_comments(&mut self) {
        while let Some(&b) = self.bytes.get(self.pos) {
            if b == b'#' {
                while let Some(&c) = self.bytes.get(self.pos) {
                    self.pos += 1;
                    if c == b'\n' || c == b'\r' {
                        break;
                    }
                }
            } else if b.is_ascii_whitespace() {
                self.pos += 1;
            } else {
                break;
            }
        }
    }

    fn next_token(&mut self) -> Option<&'a [u8]> {
        self.skip_whitespace_and_comments();
        let start = self.pos;
        while let Some(&b) = self.bytes.get(self.pos) {
            if b.is_ascii_whitespace() || b == b'#' {
                break;
            }
            self.pos += 1;
        }
        (self.pos > start).then(|| &self.bytes[start..self.pos])
    }

    fn next_number(&mut self, what: &str) -> Result<u32> {
        let token = self
            .next_token()
            .ok_or_else(|| Error::MalformedHeader(format!("missing {what}")))?;
        std::str::from_utf8(token)
            .ok()
            .and_then(|s| s.parse::<u32>().ok())
            .ok_or_else(|| {
                Error::MalformedHeader(format!(
                    "{what} is not a number: {:?}",
                    String::from_utf8_lossy(token)
                ))
            })
    }
}

pub fn read_pgm(bytes: &[u8]) -> Result<GrayImage> {
    let binary = match bytes.get(..2) {
        Some(b"P5") => true,
        Some(b"P2") => false,
        _ => return Err(Error::MalformedHeader("expected magic P5 or P2".into())),
    };
    let mut cursor = HeaderCursor { bytes, pos: 2 };
    if !matches!(bytes.get(2), Some(b) if b.is_ascii_whitespace() || *b == b'#') {
        return Err(Error::MalformedHeader("magic must be followed by whitespace".into()));
    }
    let width = cursor.next_number("width")? as usize;
    let height = cursor.next_number("height")? as usize;
    if width == 0 || height == 0 {
        return Err(Error::MalformedHeader(format!(
            "dimensions must be positive, got {width}x{height}"
        )));
    }
    let maxval = cursor.next_number("maxval")?;
    if maxval != 255 {
        return Err(Error::UnsupportedMaxval(maxval));
    }
    let expected = width
        .checked_mul(height)
        .ok_or_else(|| Error::MalformedHeader("image dimensions overflow".into()))?;

    let pixels = if binary {
        // exactly one whitespace byte separates maxval from the raster
        match bytes.get(cursor.pos) {
            Some(b) if b.is_ascii_whitespace() => cursor.pos += 1,
            _ => return Err(Error::MalformedHeader("missing whitespace after maxval".into())),
        }
        let raster = &bytes[cursor.pos..];
        if raster.len() < expected {
            return Err(Error::TruncatedData {
                expected,
                found: raster.len(),
            });
        }
        raster[..expected].to_vec()
    } else {
        let mut pixels = Vec::with_capacity(expected);
        while pixels.len() < expected {
            let Some(token) = cursor.next_token() else {
                return Err(Error::TruncatedData {
                    expected,
                    found: pixels.len(),
                });
            };
            let value = std::str::from_utf8(token)
                .ok()
                .and_then(|s| s.parse::<u32>().ok())
                .ok_or_else(|| {
                    Error::MalformedHeader(format!(
                        "sample is not a number: {:?}",
                        String::from_utf8_lossy(token)
                    ))
                })?;
            let value = u8::try_from(value)
                .map_err(|_| Error::MalformedHeader(format!("sample {value} exceeds maxval 255")))?;
            pixels.push(value);
        }
        pixels
    };
    GrayImage::new(width, height, pixels)
}

pub fn write_pgm(img: &GrayImage) -> Vec<u8> {
    let header = format!("P5\n{} {}\n255\n", img.width, img.height);
    let mut out = Vec::with_capacity(header.len() + img.pixels.len());
    out.extend_from_slice(header.as_bytes());
    out.extend_from_slice(&img.pixels);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn reads_binary_constant_image() {
        let mut bytes = b"P5\n4 4\n255\n".to_vec();
        bytes.extend([7u8; 16]);
        let img = read_pgm(&bytes).unwrap();
        assert_eq!((img.width(), img.height()), (4, 4));
        assert!(img.pixels().iter().all(|&p| p == 7));
    }

    #[test]
    fn reads_ascii_single_pixel() {
        let img = read_pgm(b"P2\n1 1\n255\n128\n").unwrap();
        assert_eq!(img.pixels(), &[128]);
    }

    #[test]
    fn rejects_sixteen_bit_maxval() {
        let mut bytes = b"P5\n2 2\n65535\n".to_vec();
        bytes.extend([0u8; 8]);
        assert_eq!(read_pgm(&bytes), Err(Error::UnsupportedMaxval(65535)));
    }

    #[test]
    fn header_comments_are_skipped() {
        let bytes = b"P2\n# made by hand\n2 # width\n1\n# maxval next\n255\n1 2\n";
        let img = read_pgm(bytes).unwrap();
        assert_eq!(img.pixels(), &[1, 2]);
    }

    #[test]
    fn malformed_headers() {
        assert!(matches!(read_pgm(b"P6\n1 1\n255\n\0"), Err(Error::MalformedHeader(_))));
        assert!(matches!(read_pgm(b"P5\n0 1\n255\n"), Err(Error::MalformedHeader(_))));
        assert!(matches!(read_pgm(b"P5\nx 1\n255\n\0"), Err(Error::MalformedHeader(_))));
        assert!(matches!(read_pgm(b"P5"), Err(Error::MalformedHeader(_))));
        assert!(matches!(read_pgm(b""), Err(Error::MalformedHeader(_))));
    }

    #[test]
    fn truncated_raster() {
        let mut bytes = b"P5\n3 3\n255\n".to_vec();
        bytes.extend([1u8; 5]);
        assert_eq!(
            read_pgm(&bytes),
            Err(Error::TruncatedData {
                expected: 9,
                found: 5
            })
        );
        assert_eq!(
            read_pgm(b"P2\n2 1\n255\n4\n"),
            Err(Error::TruncatedData {
                expected: 2,
                found: 1
            })
        );
    }

    #[test]
    fn writes_canonical_single_pixel() {
        let img = GrayImage::new(1, 1, vec![0]).unwrap();
        assert_eq!(write_pgm(&img), b"P5\n1 1\n255\n\x00".to_vec());
    }

    #[test]
    fn canonical_form_of_read_example() {
        let mut source = b"P5\n4   4 # dims\n255\n".to_vec();
        source.extend([7u8; 16]);
        let mut expected = b"P5\n4 4\n255\n".to_vec();
        expected.extend([7u8; 16]);
        assert_eq!(write_pgm(&read_pgm(&source).unwrap()), expected);
    }

    #[test]
    fn out_of_range_samples_are_reported() {
        assert_eq!(
            GrayImage::from_samples(2, 1, &[3, 256]),
            Err(Error::PixelRangeOverflow {
                index: 1,
                value: 256
            })
        );
    }

    proptest! {
        #[test]
        fn round_trip_is_identity(
            (w, h, pixels) in (1usize..=128, 1usize..=128)
                .prop_flat_map(|(w, h)| (Just(w), Just(h), proptest::collection::vec(any::<u8>(), w * h)))
        ) {
            let img = GrayImage::new(w, h, pixels).unwrap();
            let bytes = write_pgm(&img);
            prop_assert_eq!(&bytes, &write_pgm(&img));
            prop_assert_eq!(read_pgm(&bytes).unwrap(), img);
        }
    }
}
