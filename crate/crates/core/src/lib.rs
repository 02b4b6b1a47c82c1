//! Reversible data hiding in the detail subbands of an integer wavelet
//! transform, using histogram shifting.
//!
//! The cover image is decomposed with an integer lifting transform
//! ([`lifting`]), payload bits are written into peak-valued detail
//! coefficients after opening an empty neighbouring bin ([`histogram`],
//! [`codec`]), and the marked image is rebuilt with the inverse transform.
//! Extraction with the sidecar key ([`keyfile`]) returns both the payload and
//! the exact cover.
//!
//! ```
//! use liftmark::{embed, extract, BitStream, EmbedConfig, GrayImage, WaveletId};
//!
//! let cover = GrayImage::new(8, 8, (0..64).map(|i| 100 + (i % 8) as u8).collect()).unwrap();
//! let payload = BitStream::from_bits(vec![true, false, true]);
//! let cfg = EmbedConfig::new(WaveletId::Cdf53, 1);
//! let (marked, key) = embed(&cover, &payload, &cfg).unwrap();
//! let (bits, restored) = extract(&marked, &key).unwrap();
//! assert_eq!((bits, restored), (payload, cover));
//! ```

pub mod bench;
pub mod bits;
pub mod codec;
pub mod error;
pub mod histogram;
pub mod image_io;
pub mod keyfile;
pub mod lifting;
pub mod metrics;

pub use bits::BitStream;
pub use codec::{
    capacity, embed, embed_audited, extract, narrow_pixels, plan_passes, Direction, EmbedAudit,
    EmbedConfig, PassRecord, PeakPolicy, PlannedPass, SideInfo, SideSchedule,
};
pub use error::{Error, Result};
pub use image_io::{read_pgm, write_pgm, GrayImage};
pub use keyfile::{decode_key, encode_key};
pub use lifting::{forward_iwt, inverse_iwt, CoeffPlane, SubbandId, SubbandKind, SubbandSet, WaveletId};
pub use metrics::{psnr, Psnr};
