//! Borders of words.

use std::collections::BTreeSet;

/// `b[k]` is the length of the longest proper border of `w[..=k]`.
pub fn border_array<T: PartialEq>(w: &[T]) -> Vec<usize> {
    let mut b = vec![0usize; w.len()];
    for k in 1..w.len() {
        let mut j = b[k - 1];
        while j > 0 && w[k] != w[j] {
            j = b[j - 1];
        }
        if w[k] == w[j] {
            j += 1;
        }
        b[k] = j;
    }
    b
}

/// True if no proper nonempty prefix of `w` is also a suffix.
pub fn is_unbordered<T: PartialEq>(w: &[T]) -> bool {
    border_array(w).last().is_none_or(|&b| b == 0)
}

/// The lexicographically least unbordered word of length `n` in `language`.
pub fn find_unbordered(language: &BTreeSet<Vec<u8>>, n: usize) -> Option<Vec<u8>> {
    language
        .iter()
        .find(|w| w.len() == n && n > 0 && is_unbordered(w))
        .cloned()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn brute_unbordered(w: &[u8]) -> bool {
        (1..w.len()).all(|k| w[..k] != w[w.len() - k..])
    }

    #[test]
    fn examples() {
        assert!(!is_unbordered(b"aba"));
        assert!(is_unbordered(b"aab"));
        assert!(is_unbordered(b"a"));
        assert!(!is_unbordered(b"abab"));
        assert_eq!(border_array(b"aabaaab"), vec![0, 1, 0, 1, 2, 2, 3]);
    }

    #[test]
    fn least_unbordered_binary_word() {
        let mut all = BTreeSet::new();
        for code in 0..8u8 {
            all.insert((0..3).map(|k| (code >> (2 - k)) & 1).collect::<Vec<u8>>());
        }
        assert_eq!(find_unbordered(&all, 3), Some(vec![0, 0, 1]));
        let only_bordered: BTreeSet<Vec<u8>> = [vec![0, 0, 0], vec![0, 1, 0]].into_iter().collect();
        assert_eq!(find_unbordered(&only_bordered, 3), None);
    }

    proptest! {
        #[test]
        fn border_array_matches_brute_force(w in proptest::collection::vec(0u8..3, 1..12)) {
            prop_assert_eq!(is_unbordered(&w), brute_unbordered(&w));
        }
    }
}
