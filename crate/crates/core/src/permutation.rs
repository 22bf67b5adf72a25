//! Lexicographic enumeration of the permutations of `0..n`.

use alloc::vec::Vec;

/// Yields every permutation of `0..n` in lexicographic order, starting from
/// the identity. `n = 0` yields a single empty permutation.
#[derive(Debug, Clone)]
pub struct LexicographicPermutations {
    next: Option<Vec<usize>>,
}

impl LexicographicPermutations {
    pub fn new(n: usize) -> Self {
        LexicographicPermutations {
            next: Some((0..n).collect()),
        }
    }
}

impl Iterator for LexicographicPermutations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        if advance(&mut succ) {
            self.next = Some(succ);
        }
        Some(current)
    }
}

/// Steps `perm` to its lexicographic successor; false once it is the last one.
fn advance(perm: &mut [usize]) -> bool {
    let n = perm.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && perm[i - 1] >= perm[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while perm[j] <= perm[i - 1] {
        j -= 1;
    }
    perm.swap(i - 1, j);
    perm[i..].reverse();
    true
}

/// `n!`, saturating.
pub fn factorial(n: usize) -> usize {
    (1..=n).fold(1usize, |acc, k| acc.saturating_mul(k))
}
