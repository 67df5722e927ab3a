use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use super::perm::{factorial, Permutation};
use crate::error::{Error, Result};

/// Symbolic work is capped at rank 9: the 9! = 362880 element basis is the
/// practical memory ceiling for dense coefficient vectors.
pub const MAX_RANK: usize = 9;

/// Precomputed combinatorics of S_n shared by every element of H_n(q):
/// permutations in Lehmer order, lengths, one-sided multiplication tables by
/// simple transpositions, and the canonical reduced word of each basis index.
///
/// Built once per rank and then read-only, so tables can be shared freely
/// across threads.
#[derive(Debug)]
pub struct HeckeTables {
    n: usize,
    size: usize,
    perms: Vec<Permutation>,
    length: Vec<u32>,
    /// `right[k-1][i]` = index of `w_i * s_k`.
    right: Vec<Vec<u32>>,
    /// `left[k-1][i]` = index of `s_k * w_i`.
    left: Vec<Vec<u32>>,
    rword: Vec<Box<[u8]>>,
}

impl HeckeTables {
    pub fn get(n: usize) -> Result<Arc<Self>> {
        if n == 0 || n > MAX_RANK {
            return Err(Error::RankOverflow {
                needed: n,
                available: MAX_RANK,
            });
        }
        static REGISTRY: OnceLock<Mutex<HashMap<usize, Arc<HeckeTables>>>> = OnceLock::new();
        let registry = REGISTRY.get_or_init(|| Mutex::new(HashMap::new()));
        let mut guard = registry.lock().expect("tables registry poisoned");
        Ok(guard.entry(n).or_insert_with(|| Arc::new(Self::build(n))).clone())
    }

    fn build(n: usize) -> Self {
        let size = factorial(n);
        let mut perms = Vec::with_capacity(size);
        let mut length = Vec::with_capacity(size);
        let mut rword = Vec::with_capacity(size);
        for idx in 0..size {
            let w = Permutation::from_index(n, idx);
            length.push(w.length() as u32);
            rword.push(w.reduced_word().into_boxed_slice());
            perms.push(w);
        }
        let mut right = vec![vec![0u32; size]; n.saturating_sub(1)];
        let mut left = vec![vec![0u32; size]; n.saturating_sub(1)];
        for (idx, w) in perms.iter().enumerate() {
            for k in 1..n {
                right[k - 1][idx] = w.right_mul_simple(k).index() as u32;
                let sk = Permutation::simple(n, k).expect("valid index");
                left[k - 1][idx] = sk.compose(w).index() as u32;
            }
        }
        Self {
            n,
            size,
            perms,
            length,
            right,
            left,
            rword,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn perm(&self, idx: usize) -> &Permutation {
        &self.perms[idx]
    }

    pub fn length(&self, idx: usize) -> u32 {
        self.length[idx]
    }

    pub fn reduced_word(&self, idx: usize) -> &[u8] {
        &self.rword[idx]
    }

    pub fn right_mul(&self, k: usize, idx: usize) -> usize {
        self.right[k - 1][idx] as usize
    }

    pub fn left_mul(&self, k: usize, idx: usize) -> usize {
        self.left[k - 1][idx] as usize
    }

    pub fn check_generator(&self, k: usize) -> Result<()> {
        if k == 0 || k >= self.n {
            return Err(Error::IndexOutOfRange {
                rank: self.n,
                index: k,
            });
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tables_are_consistent() {
        let t = HeckeTables::get(4).unwrap();
        assert_eq!(t.size(), 24);
        for idx in 0..t.size() {
            let w = t.perm(idx);
            assert_eq!(w.index(), idx);
            assert_eq!(t.length(idx) as usize, w.length());
            for k in 1..4 {
                let r = t.right_mul(k, idx);
                assert_eq!(t.perm(r), &w.right_mul_simple(k));
                // Right multiplication by a simple transposition changes
                // length by exactly one.
                let dl = t.length(r) as i64 - t.length(idx) as i64;
                assert_eq!(dl.abs(), 1);
                let l = t.left_mul(k, idx);
                let sk = Permutation::simple(4, k).unwrap();
                assert_eq!(t.perm(l), &sk.compose(w));
            }
        }
    }

    #[test]
    fn rank_cap_enforced() {
        assert!(HeckeTables::get(MAX_RANK + 1).is_err());
        assert!(HeckeTables::get(0).is_err());
    }
}
