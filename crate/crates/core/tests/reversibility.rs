mod common;

use liftmark::codec::{embed_audited, extract, EmbedConfig, PeakPolicy, SideSchedule};
use liftmark::lifting::{forward_1d, inverse_1d};
use liftmark::{capacity, BitStream, Error, GrayImage, WaveletId};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn one_d_lifting_inverts_ten_thousand_signals() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x1d);
    for _ in 0..10_000 {
        let len = rng.gen_range(1..=257);
        let signal: Vec<i32> = (0..len).map(|_| rng.gen_range(-1000..=1000)).collect();
        for w in WaveletId::ALL {
            let (a, d) = forward_1d(&signal, w).unwrap();
            assert_eq!(inverse_1d(&a, &d, w, len).unwrap(), signal);
        }
    }
}

#[test]
fn randomized_round_trips_with_audit() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut succeeded = 0;
    for case in 0..160 {
        let w = rng.gen_range(16..=96);
        let h = rng.gen_range(16..=96);
        let noise = rng.gen_range(0..=4);
        let img = common::smooth_image(&mut rng, w, h, 24, 231, noise);
        let wavelet = WaveletId::ALL[case % 2];
        let levels = 1 + (case / 2) % 2;
        let schedule = if rng.gen_bool(0.3) { SideSchedule::Alternate } else { SideSchedule::RightOnly };
        let policy = if rng.gen_bool(0.2) { PeakPolicy::AutoPeak } else { PeakPolicy::Literal };
        let cfg = EmbedConfig::new(wavelet, levels)
            .with_schedule(schedule)
            .with_peak_policy(policy)
            .with_margin(if rng.gen_bool(0.3) { 16 } else { 0 });
        let cap = capacity(&img, &cfg).unwrap().total_bits;
        let n = rng.gen_range(0..=cap.min(4000)) as usize;
        let payload = BitStream::random(n, case as u64);

        match embed_audited(&img, &payload, &cfg) {
            Ok((marked, side, audit)) => {
                assert!(audit.is_clean(), "case {case}: {audit:?}");
                assert_eq!(audit.passes.len(), side.passes.len());
                let (bits, restored) = extract(&marked, &side).unwrap();
                assert_eq!(bits, payload, "case {case}");
                assert_eq!(restored, img, "case {case}");
                succeeded += 1;
            }
            Err(Error::PixelRangeOverflow { .. }) => {}
            Err(e) => panic!("case {case}: {e}"),
        }
    }
    assert!(succeeded >= 100, "only {succeeded} cases embedded");
}

#[test]
fn empty_payload_is_identity() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let img = common::smooth_image(&mut rng, 33, 17, 0, 255, 3);
    for w in WaveletId::ALL {
        let cfg = EmbedConfig::new(w, 2).with_margin(8);
        let (marked, side) = liftmark::embed(&img, &BitStream::new(), &cfg).unwrap();
        assert_eq!(marked, img);
        assert!(side.passes.is_empty());
        assert_eq!(extract(&marked, &side).unwrap(), (BitStream::new(), img.clone()));
    }
}

#[test]
fn narrowing_rescues_saturated_images() {
    // hard black/white stripes saturate the range
    let px = (0..64 * 64).map(|i| if (i % 64) / 8 % 2 == 0 { 0 } else { 255 }).collect();
    let img = GrayImage::new(64, 64, px).unwrap();
    let payload = BitStream::random(200, 9);
    let plain = EmbedConfig::new(WaveletId::Cdf53, 1);
    assert!(matches!(
        liftmark::embed(&img, &payload, &plain),
        Err(Error::PixelRangeOverflow { .. })
    ));
    let narrowed = plain.with_margin(16);
    let (marked, side) = liftmark::embed(&img, &payload, &narrowed).unwrap();
    assert!(!side.narrowing_map.is_empty());
    assert_eq!(extract(&marked, &side).unwrap(), (payload, img));
}

#[test]
fn tampered_pixel_is_reported() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let img = common::smooth_image(&mut rng, 64, 64, 30, 220, 1);
    let payload = BitStream::random(300, 5);
    let (mut marked, side) = liftmark::embed(&img, &payload, &EmbedConfig::default()).unwrap();
    // pixel 1 sits in the support of the first LH coefficient
    let first = marked.pixels()[1];
    marked.pixels_mut()[1] = first ^ 1;
    match extract(&marked, &side) {
        Ok((bits, restored)) => assert!(bits != payload || restored != img),
        Err(e) => assert!(matches!(e, Error::ChecksumMismatch { .. } | Error::BitCountExhausted { .. })),
    }
}

#[test]
fn key_from_another_image_is_rejected() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let img = common::smooth_image(&mut rng, 40, 40, 30, 220, 2);
    let (_, side) = liftmark::embed(&img, &BitStream::random(100, 1), &EmbedConfig::new(WaveletId::HaarS, 3)).unwrap();
    let tiny = GrayImage::filled(4, 4, 100).unwrap();
    assert!(matches!(extract(&tiny, &side), Err(Error::DimensionMismatch(_))));
}
