//! Fixed-layout bit rows used for adjacency matrices and solver candidate
//! sets. Rows are inline up to 1024 vertices and spill to the heap beyond
//! that, so desk-scale graphs stay allocation-free while nothing caps the
//! vertex count.

use smallvec::SmallVec;

pub type Words = SmallVec<[u64; 16]>;

#[inline]
pub fn words_for(n: usize) -> usize {
    n.div_ceil(64)
}

pub fn zeroed(n: usize) -> Words {
    SmallVec::from_elem(0u64, words_for(n))
}

#[inline]
pub fn set(row: &mut [u64], i: usize) {
    row[i >> 6] |= 1u64 << (i & 63);
}

#[inline]
pub fn clear(row: &mut [u64], i: usize) {
    row[i >> 6] &= !(1u64 << (i & 63));
}

#[inline]
pub fn test(row: &[u64], i: usize) -> bool {
    row[i >> 6] & (1u64 << (i & 63)) != 0
}

#[inline]
pub fn count(row: &[u64]) -> usize {
    row.iter().map(|w| w.count_ones() as usize).sum()
}

#[inline]
pub fn is_empty(row: &[u64]) -> bool {
    row.iter().all(|&w| w == 0)
}

/// Lowest set bit at or above word `*from`, advancing the cursor to the
/// word it was found in. Callers that only ever clear bits can reuse the
/// cursor across calls to avoid rescanning empty prefixes.
#[inline]
pub fn first_set_from(row: &[u64], from: &mut usize) -> Option<usize> {
    for wi in *from..row.len() {
        let w = row[wi];
        if w != 0 {
            *from = wi;
            return Some((wi << 6) + w.trailing_zeros() as usize);
        }
    }
    *from = row.len();
    None
}

#[inline]
pub fn intersect_into(dst: &mut [u64], a: &[u64], b: &[u64]) {
    for i in 0..dst.len() {
        dst[i] = a[i] & b[i];
    }
}

#[inline]
pub fn and_not(dst: &mut [u64], other: &[u64]) {
    for (d, o) in dst.iter_mut().zip(other) {
        *d &= !*o;
    }
}

/// Iterate set bits in ascending order.
pub fn iter(row: &[u64]) -> impl Iterator<Item = usize> + '_ {
    row.iter().enumerate().flat_map(|(wi, &w)| {
        let base = wi << 6;
        std::iter::successors(if w == 0 { None } else { Some(w) }, |&m| {
            let m = m & (m - 1);
            if m == 0 {
                None
            } else {
                Some(m)
            }
        })
        .map(move |m| base + m.trailing_zeros() as usize)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn first(row: &[u64]) -> Option<usize> {
        first_set_from(row, &mut 0)
    }

    #[test]
    fn set_test_clear() {
        let mut row = zeroed(130);
        set(&mut row, 0);
        set(&mut row, 64);
        set(&mut row, 129);
        assert!(test(&row, 0) && test(&row, 64) && test(&row, 129));
        assert!(!test(&row, 1));
        assert_eq!(count(&row), 3);
        assert_eq!(first(&row), Some(0));
        clear(&mut row, 0);
        assert_eq!(first(&row), Some(64));
        assert_eq!(iter(&row).collect::<Vec<_>>(), vec![64, 129]);
    }

    #[test]
    fn cursor_advances_monotonically() {
        let mut row = zeroed(256);
        set(&mut row, 70);
        set(&mut row, 200);
        let mut from = 0;
        assert_eq!(first_set_from(&row, &mut from), Some(70));
        clear(&mut row, 70);
        assert_eq!(first_set_from(&row, &mut from), Some(200));
        clear(&mut row, 200);
        assert_eq!(first_set_from(&row, &mut from), None);
    }

    #[test]
    fn empty_row() {
        let row = zeroed(10);
        assert!(is_empty(&row));
        assert_eq!(first(&row), None);
        assert_eq!(iter(&row).count(), 0);
    }
}
