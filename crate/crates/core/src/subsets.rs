//! Lexicographic enumeration of `k`-subsets of `1..=n`.

use alloc::vec::Vec;

use crate::state::QubitSubset;

/// Iterator over all `k`-element subsets of `{1, …, n}` in lexicographic order.
#[derive(Debug, Clone)]
pub struct Combinations {
    n: usize,
    current: Option<Vec<usize>>,
}

impl Combinations {
    pub fn new(n: usize, k: usize) -> Self {
        let current = if k == 0 || k > n { None } else { Some((1..=k).collect()) };
        Combinations { n, current }
    }
}

impl Iterator for Combinations {
    type Item = QubitSubset;

    fn next(&mut self) -> Option<QubitSubset> {
        let cur = self.current.as_mut()?;
        let out = QubitSubset::from_sorted_unchecked(cur.clone());
        let k = cur.len();
        // rightmost position that can still advance
        let mut i = k;
        while i > 0 && cur[i - 1] == self.n - k + i {
            i -= 1;
        }
        if i == 0 {
            self.current = None;
        } else {
            cur[i - 1] += 1;
            for j in i..k {
                cur[j] = cur[j - 1] + 1;
            }
        }
        Some(out)
    }
}

/// `C(n, k)` without overflow for the sizes used here.
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: usize = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// All subsets of the given set of labels with size in `1..=max_size`, grouped by size.
pub fn nonempty_subsets_of(labels: &[usize], max_size: usize) -> Vec<QubitSubset> {
    let m = labels.len();
    let mut out = Vec::new();
    for size in 1..=max_size.min(m) {
        for positions in Combinations::new(m, size) {
            let picked = positions.labels().iter().map(|&p| labels[p - 1]).collect();
            out.push(QubitSubset::from_sorted_unchecked(picked));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_match_binomials() {
        for n in 1..=9 {
            for k in 1..=n {
                assert_eq!(Combinations::new(n, k).count(), binomial(n, k));
            }
        }
        assert_eq!(binomial(9, 4), 126);
    }

    #[test]
    fn lexicographic_order() {
        let all: Vec<Vec<usize>> = Combinations::new(4, 2).map(|s| s.labels().to_vec()).collect();
        assert_eq!(
            all,
            alloc::vec![
                alloc::vec![1, 2],
                alloc::vec![1, 3],
                alloc::vec![1, 4],
                alloc::vec![2, 3],
                alloc::vec![2, 4],
                alloc::vec![3, 4]
            ]
        );
    }

    #[test]
    fn subsets_of_four_labels() {
        let subs = nonempty_subsets_of(&[2, 5, 7, 9], 4);
        assert_eq!(subs.len(), 15);
        assert_eq!(subs[0].labels(), &[2]);
        assert_eq!(subs[14].labels(), &[2, 5, 7, 9]);
    }
}
