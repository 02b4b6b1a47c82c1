//! Coefficient histograms, peak selection and the threshold shifts that open
//! and close the empty bin next to a peak.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::lifting::CoeffPlane;

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Histogram {
    counts: BTreeMap<i32, u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PeakInfo {
    pub value: i32,
    pub count: u64,
}

impl Histogram {
    pub fn from_values(values: &[i32]) -> Self {
        let mut counts = BTreeMap::new();
        for &v in values {
            *counts.entry(v).or_insert(0) += 1;
        }
        Self { counts }
    }

    pub fn count(&self, value: i32) -> u64 {
        self.counts.get(&value).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    /// Occupied bins in ascending value order.
    pub fn iter(&self) -> impl Iterator<Item = (i32, u64)> + '_ {
        self.counts.iter().map(|(&v, &c)| (v, c))
    }

    pub fn min_value(&self) -> Option<i32> {
        self.counts.keys().next().copied()
    }

    pub fn max_value(&self) -> Option<i32> {
        self.counts.keys().next_back().copied()
    }

    /// Peak restricted to bins with `lo <= value <= hi`.
    pub fn peak_in(&self, lo: i32, hi: i32) -> Option<PeakInfo> {
        if lo > hi {
            return None;
        }
        self.counts
            .range(lo..=hi)
            .map(|(&value, &count)| PeakInfo { value, count })
            .reduce(|best, cand| if beats(cand, best) { cand } else { best })
    }

    /// Moves every bin at or above `threshold` up by one.
    pub fn shift_up_from(&mut self, threshold: i32) {
        let moved: Vec<_> = self.counts.split_off(&threshold).into_iter().collect();
        for (v, c) in moved {
            self.counts.insert(v + 1, c);
        }
    }

    /// Moves every bin at or below `threshold` down by one.
    pub fn shift_down_to(&mut self, threshold: i32) {
        let Some(above) = threshold.checked_add(1) else {
            let all = std::mem::take(&mut self.counts);
            self.counts = all.into_iter().map(|(v, c)| (v - 1, c)).collect();
            return;
        };
        let kept = self.counts.split_off(&above);
        let moved = std::mem::replace(&mut self.counts, kept);
        for (v, c) in moved {
            self.counts.insert(v - 1, c);
        }
    }
}

// Higher count wins; ties go to the smaller magnitude, then to the non-negative value.
fn beats(cand: PeakInfo, best: PeakInfo) -> bool {
    if cand.count != best.count {
        return cand.count > best.count;
    }
    let (ca, ba) = (cand.value.unsigned_abs(), best.value.unsigned_abs());
    if ca != ba {
        return ca < ba;
    }
    cand.value > best.value
}

pub fn build_histogram(plane: &CoeffPlane) -> Histogram {
    Histogram::from_values(plane.coeffs())
}

pub fn find_peak(h: &Histogram) -> Result<PeakInfo> {
    h.peak_in(i32::MIN, i32::MAX).ok_or(Error::EmptyHistogram)
}

/// `c >= threshold` becomes `c + 1`.
pub fn shift_right_in_place(coeffs: &mut [i32], threshold: i32) -> Result<()> {
    if coeffs.contains(&i32::MAX) {
        return Err(Error::CoefficientOverflow(i32::MAX));
    }
    for c in coeffs.iter_mut().filter(|c| **c >= threshold) {
        *c += 1;
    }
    Ok(())
}

/// `c >= threshold` becomes `c - 1`. Undoes [`shift_right_in_place`] once the bin at `threshold - 1` is empty.
pub fn shift_left_in_place(coeffs: &mut [i32], threshold: i32) {
    for c in coeffs.iter_mut().filter(|c| **c >= threshold) {
        *c -= 1;
    }
}

/// Mirror of [`shift_right_in_place`] for the left side: `c <= threshold` becomes `c - 1`.
pub fn shift_left_below_in_place(coeffs: &mut [i32], threshold: i32) -> Result<()> {
    if coeffs.contains(&i32::MIN) {
        return Err(Error::CoefficientOverflow(i32::MIN));
    }
    for c in coeffs.iter_mut().filter(|c| **c <= threshold) {
        *c -= 1;
    }
    Ok(())
}

/// Mirror of [`shift_left_in_place`]: `c <= threshold` becomes `c + 1`.
pub fn shift_right_below_in_place(coeffs: &mut [i32], threshold: i32) {
    for c in coeffs.iter_mut().filter(|c| **c <= threshold) {
        *c += 1;
    }
}

pub fn shift_right(plane: &CoeffPlane, threshold: i32) -> Result<CoeffPlane> {
    let mut out = plane.clone();
    shift_right_in_place(out.coeffs_mut(), threshold)?;
    Ok(out)
}

pub fn shift_left(plane: &CoeffPlane, threshold: i32) -> CoeffPlane {
    let mut out = plane.clone();
    shift_left_in_place(out.coeffs_mut(), threshold);
    out
}

pub fn shift_left_below(plane: &CoeffPlane, threshold: i32) -> Result<CoeffPlane> {
    let mut out = plane.clone();
    shift_left_below_in_place(out.coeffs_mut(), threshold)?;
    Ok(out)
}

pub fn shift_right_below(plane: &CoeffPlane, threshold: i32) -> CoeffPlane {
    let mut out = plane.clone();
    shift_right_below_in_place(out.coeffs_mut(), threshold);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn row(v: &[i32]) -> CoeffPlane {
        CoeffPlane::from_row(v.to_vec())
    }

    fn tally(values: &[i32]) -> BTreeMap<i32, u64> {
        let mut m = BTreeMap::new();
        for &v in values {
            *m.entry(v).or_default() += 1;
        }
        m
    }

    #[test]
    fn counts_small_plane() {
        let h = build_histogram(&row(&[0, 0, 1, 2, 0, -1]));
        let bins: Vec<_> = h.iter().collect();
        assert_eq!(bins, vec![(-1, 1), (0, 3), (1, 1), (2, 1)]);
        assert_eq!(h.count(5), 0);
        assert_eq!(h.total(), 6);
    }

    #[test]
    fn all_zero_and_empty_planes() {
        let h = build_histogram(&CoeffPlane::zeros(4, 4));
        assert_eq!(h.iter().collect::<Vec<_>>(), vec![(0, 16)]);
        let e = build_histogram(&row(&[]));
        assert!(e.is_empty());
        assert_eq!(e.total(), 0);
    }

    #[test]
    fn peaks_and_tie_breaks() {
        let h = build_histogram(&row(&[0, 0, 1, 2, 0, -1]));
        assert_eq!(find_peak(&h).unwrap(), PeakInfo { value: 0, count: 3 });
        let tie = Histogram::from_values(&[-1, -1, -1, -1, -1, 1, 1, 1, 1, 1]);
        assert_eq!(find_peak(&tie).unwrap().value, 1);
        let far = Histogram::from_values(&[-4, -4, 3, 3]);
        assert_eq!(find_peak(&far).unwrap().value, 3);
        assert_eq!(find_peak(&Histogram::from_values(&[7])).unwrap().value, 7);
        assert_eq!(find_peak(&Histogram::default()), Err(Error::EmptyHistogram));
    }

    #[test]
    fn right_shift_examples() {
        assert_eq!(shift_right(&row(&[-1, 0, 2, 0, 1, 0]), 1).unwrap(), row(&[-1, 0, 3, 0, 2, 0]));
        let zeros = CoeffPlane::zeros(3, 3);
        assert_eq!(shift_right(&zeros, 1).unwrap(), zeros);
        assert_eq!(shift_right(&row(&[5]), 5).unwrap(), row(&[6]));
        assert_eq!(shift_right(&row(&[i32::MAX]), 0), Err(Error::CoefficientOverflow(i32::MAX)));
        assert!(shift_right(&row(&[i32::MAX]), i32::MAX).is_err());
    }

    #[test]
    fn left_shift_examples() {
        assert_eq!(shift_left(&row(&[-1, 1, 3, 0, 2, 1]), 2), row(&[-1, 1, 2, 0, 1, 1]));
        assert_eq!(shift_left(&row(&[]), 0), row(&[]));
        assert_eq!(shift_left_below(&row(&[-3, -1, 0, 2]), -1).unwrap(), row(&[-4, -2, 0, 2]));
        assert_eq!(shift_right_below(&row(&[-4, -2, 0, 2]), -2), row(&[-3, -1, 0, 2]));
    }

    #[test]
    fn histogram_bin_shifts_match_plane_shifts() {
        let values = [-3, -2, -2, 0, 1, 1, 4];
        let mut h = Histogram::from_values(&values);
        h.shift_up_from(1);
        assert_eq!(h, build_histogram(&shift_right(&row(&values), 1).unwrap()));
        let mut h = Histogram::from_values(&values);
        h.shift_down_to(-2);
        assert_eq!(h, build_histogram(&shift_left_below(&row(&values), -2).unwrap()));
    }

    proptest! {
        #[test]
        fn histogram_matches_brute_force_tally(values in proptest::collection::vec(-20i32..20, 0..200)) {
            let h = build_histogram(&row(&values));
            prop_assert_eq!(h.iter().collect::<BTreeMap<_, _>>(), tally(&values));
            prop_assert_eq!(h.total(), values.len() as u64);
        }

        #[test]
        fn peak_is_argmax_and_order_free(mut values in proptest::collection::vec(-20i32..20, 1..200), seed in any::<u64>()) {
            let peak = find_peak(&Histogram::from_values(&values)).unwrap();
            let t = tally(&values);
            prop_assert_eq!(t[&peak.value], peak.count);
            prop_assert!(t.values().all(|&c| c <= peak.count));
            // deterministic shuffle
            let n = values.len();
            let mut state = seed | 1;
            for i in (1..n).rev() {
                state ^= state << 13; state ^= state >> 7; state ^= state << 17;
                values.swap(i, (state % (i as u64 + 1)) as usize);
            }
            prop_assert_eq!(find_peak(&Histogram::from_values(&values)).unwrap(), peak);
        }

        #[test]
        fn zero_point_created_and_conserved(values in proptest::collection::vec(-20i32..20, 1..200)) {
            let p = find_peak(&Histogram::from_values(&values)).unwrap().value;
            let shifted = shift_right(&row(&values), p + 1).unwrap();
            let h = build_histogram(&shifted);
            prop_assert_eq!(h.count(p + 1), 0);
            prop_assert_eq!(h.total(), values.len() as u64);
            let mirrored = shift_left_below(&row(&values), p - 1).unwrap();
            prop_assert_eq!(build_histogram(&mirrored).count(p - 1), 0);
        }

        #[test]
        fn shifts_are_invertible(values in proptest::collection::vec(-50i32..50, 0..200), t in -60i32..60) {
            let plane = row(&values);
            prop_assert_eq!(shift_left(&shift_right(&plane, t).unwrap(), t + 1), plane.clone());
            prop_assert_eq!(shift_right_below(&shift_left_below(&plane, t).unwrap(), t - 1), plane);
        }
    }
}
