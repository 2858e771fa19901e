//! Bit-mask helpers for subsets of at most 64 labeled points.

/// Mask with the lowest `n` bits set.
pub fn full_mask(n: usize) -> u64 {
    debug_assert!(n <= 64);
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// `a ⊆ b` as bit sets.
pub fn is_subset(a: u64, b: u64) -> bool {
    a & !b == 0
}

/// Indices of the set bits, ascending.
pub fn ones(mask: u64) -> impl Iterator<Item = usize> {
    (0..64).filter(move |i| mask & (1u64 << i) != 0)
}

/// Labels selected by `mask`, in element order.
pub fn labels_of(mask: u64, labels: &[String]) -> Vec<String> {
    ones(mask)
        .take_while(|&i| i < labels.len())
        .map(|i| labels[i].clone())
        .collect()
}

/// Render a mask as a membership bitstring of width `n` (index 0 first).
pub fn bitstring(mask: u64, n: usize) -> String {
    (0..n)
        .map(|i| if mask & (1u64 << i) != 0 { '1' } else { '0' })
        .collect()
}

/// Render a mask as `{a, b, c}` using the given labels.
pub fn set_notation(mask: u64, labels: &[String]) -> String {
    format!("{{{}}}", labels_of(mask, labels).join(", "))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subset_and_ones() {
        assert!(is_subset(0b0101, 0b1101));
        assert!(!is_subset(0b0101, 0b1001));
        assert_eq!(ones(0b1010).collect::<Vec<_>>(), vec![1, 3]);
        assert_eq!(full_mask(3), 0b111);
        assert_eq!(full_mask(64), u64::MAX);
    }

    #[test]
    fn rendering() {
        let labels = vec!["a".to_string(), "b".to_string(), "c".to_string()];
        assert_eq!(bitstring(0b101, 3), "101");
        assert_eq!(set_notation(0b101, &labels), "{a, c}");
    }
}
