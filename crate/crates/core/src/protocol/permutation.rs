//! The intermediary's secret reordering of the transmitted sequence.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};

/// A bijection on `0..n` (round positions). Element at position `i` moves to
/// `position(i)` when applied.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Permutation {
    map: Vec<usize>,
}

impl Permutation {
    pub fn new(map: Vec<usize>) -> Result<Self> {
        let n = map.len();
        let mut seen = vec![false; n];
        for &t in &map {
            if t >= n || seen[t] {
                return Err(Error::NotABijection);
            }
            seen[t] = true;
        }
        Ok(Permutation { map })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            map: (0..n).collect(),
        }
    }

    pub fn random<R: Rng>(n: usize, rng: &mut R) -> Self {
        let mut map: Vec<usize> = (0..n).collect();
        map.shuffle(rng);
        Permutation { map }
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn position(&self, i: usize) -> usize {
        self.map[i]
    }

    pub fn mapping(&self) -> &[usize] {
        &self.map
    }

    /// Moves the element at position `i` to position `position(i)`.
    pub fn apply<T>(&self, items: Vec<T>) -> Result<Vec<T>> {
        if items.len() != self.map.len() {
            return Err(Error::LengthMismatch {
                left: items.len(),
                right: self.map.len(),
            });
        }
        let mut out: Vec<Option<T>> = (0..items.len()).map(|_| None).collect();
        for (i, item) in items.into_iter().enumerate() {
            out[self.map[i]] = Some(item);
        }
        Ok(out.into_iter().map(|x| x.expect("bijection")).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut map = vec![0usize; self.map.len()];
        for (i, &t) in self.map.iter().enumerate() {
            map[t] = i;
        }
        Permutation { map }
    }
}
