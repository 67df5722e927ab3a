use std::fmt;

use crate::error::{Error, Result};

/// An element of the symmetric group S_N in one-line notation
/// (`one_line[i]` is the image of `i+1`, values `1..=N`).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    one_line: Vec<u8>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Self {
            one_line: (1..=n as u8).collect(),
        }
    }

    pub fn from_one_line(one_line: Vec<u8>) -> Result<Self> {
        let n = one_line.len();
        let mut seen = vec![false; n + 1];
        for &v in &one_line {
            if v == 0 || v as usize > n || seen[v as usize] {
                return Err(Error::InvalidParameter(format!(
                    "not a permutation of 1..={n}: {one_line:?}"
                )));
            }
            seen[v as usize] = true;
        }
        Ok(Self { one_line })
    }

    /// The simple transposition s_k swapping k and k+1 (1-based).
    pub fn simple(n: usize, k: usize) -> Result<Self> {
        if k == 0 || k >= n {
            return Err(Error::IndexOutOfRange { rank: n, index: k });
        }
        let mut p = Self::identity(n);
        p.one_line.swap(k - 1, k);
        Ok(p)
    }

    pub fn n(&self) -> usize {
        self.one_line.len()
    }

    pub fn one_line(&self) -> &[u8] {
        &self.one_line
    }

    /// Image of `i` (1-based).
    pub fn apply(&self, i: usize) -> usize {
        self.one_line[i - 1] as usize
    }

    pub fn is_identity(&self) -> bool {
        self.one_line.iter().enumerate().all(|(i, &v)| v as usize == i + 1)
    }

    /// Coxeter length: the number of inversions.
    pub fn length(&self) -> usize {
        let mut inv = 0;
        for i in 0..self.one_line.len() {
            for j in i + 1..self.one_line.len() {
                if self.one_line[i] > self.one_line[j] {
                    inv += 1;
                }
            }
        }
        inv
    }

    /// Function composition: `(self * rhs)(i) = self(rhs(i))`.
    pub fn compose(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.n(), rhs.n());
        Self {
            one_line: rhs.one_line.iter().map(|&v| self.one_line[v as usize - 1]).collect(),
        }
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0u8; self.one_line.len()];
        for (i, &v) in self.one_line.iter().enumerate() {
            inv[v as usize - 1] = i as u8 + 1;
        }
        Self { one_line: inv }
    }

    /// Right multiplication by s_k: swaps the entries in positions k, k+1.
    /// Increases length iff `one_line[k-1] < one_line[k]`.
    pub fn right_mul_simple(&self, k: usize) -> Self {
        let mut p = self.clone();
        p.one_line.swap(k - 1, k);
        p
    }

    /// True iff right multiplication by s_k increases the length.
    pub fn right_ascent(&self, k: usize) -> bool {
        self.one_line[k - 1] < self.one_line[k]
    }

    /// The canonical reduced word, computed by bubble sort on the one-line
    /// notation: repeatedly right-multiply at the leftmost descent until the
    /// identity is reached, then reverse the collected letters. The result
    /// `(j_1, ..., j_l)` satisfies `self = s_{j_1} s_{j_2} ... s_{j_l}` with
    /// `l = length(self)`.
    pub fn reduced_word(&self) -> Vec<u8> {
        let mut w = self.one_line.clone();
        let mut word = Vec::with_capacity(self.length());
        loop {
            let mut descent = None;
            for i in 0..w.len().saturating_sub(1) {
                if w[i] > w[i + 1] {
                    descent = Some(i);
                    break;
                }
            }
            match descent {
                Some(i) => {
                    w.swap(i, i + 1);
                    word.push(i as u8 + 1);
                }
                None => break,
            }
        }
        word.reverse();
        word
    }

    /// Rank of this permutation in the Lehmer-code (factorial number system)
    /// order; the identity has index 0.
    pub fn index(&self) -> usize {
        let n = self.one_line.len();
        let mut idx = 0usize;
        for i in 0..n {
            let smaller_later = (i + 1..n)
                .filter(|&j| self.one_line[j] < self.one_line[i])
                .count();
            idx = idx * (n - i) + smaller_later;
        }
        idx
    }

    pub fn from_index(n: usize, mut index: usize) -> Self {
        let mut code = vec![0usize; n];
        for i in (0..n).rev() {
            let base = n - i;
            code[i] = index % base;
            index /= base;
        }
        let mut avail: Vec<u8> = (1..=n as u8).collect();
        let one_line = code
            .iter()
            .map(|&c| avail.remove(c))
            .collect();
        Self { one_line }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, v) in self.one_line.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]")
    }
}

/// Number of elements of S_n; ranks are small enough for usize.
pub fn factorial(n: usize) -> usize {
    (1..=n).product()
}
