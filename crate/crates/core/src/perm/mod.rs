//! Permutations of `Z_n` in one-line notation, the Hamming metric, Lehmer
//! ranking and enumeration of Hamming balls.

mod array;
mod ball;
pub mod io;

pub(crate) use array::preimage_buckets;
pub use array::{
    covered_union_size, group_min_weight, has_pair_closer_than, is_group_closed, min_distance, pairwise_min_distance,
    PermutationArray,
};
pub use ball::{ball_enumerate, derangement_maps, BallVisitor};

use std::fmt;

use num_traits::ToPrimitive;

use crate::combinatorics::{factorial, Count};
use crate::error::{Error, Result};

/// Largest length whose ranks fit in a `u64` (`20! < 2^64`).
pub const MAX_U64_RANK_LEN: usize = 20;

/// A permutation of `{0, .., n-1}` stored as its image array.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u16>,
}

impl Permutation {
    /// Validates that `images` is a rearrangement of `0..n`.
    pub fn new(images: Vec<u16>) -> Result<Self> {
        let n = images.len();
        if n > u16::MAX as usize {
            return Err(Error::domain(format!("length {n} too large")));
        }
        let mut seen = vec![false; n];
        for &v in &images {
            let v = v as usize;
            if v >= n || seen[v] {
                return Err(Error::Validation(format!("{images:?} is not a permutation of Z_{n}")));
            }
            seen[v] = true;
        }
        Ok(Self { images })
    }

    pub fn from_slice(images: &[usize]) -> Result<Self> {
        let images = images
            .iter()
            .map(|&v| u16::try_from(v).map_err(|_| Error::domain(format!("image {v} too large"))))
            .collect::<Result<Vec<_>>>()?;
        Self::new(images)
    }

    /// Caller guarantees `images` is a permutation.
    pub(crate) fn from_images_unchecked(images: Vec<u16>) -> Self {
        debug_assert!(Self::new(images.clone()).is_ok());
        Self { images }
    }

    pub fn identity(n: usize) -> Self {
        Self { images: (0..n as u16).collect() }
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn images(&self) -> &[u16] {
        &self.images
    }

    pub fn into_images(self) -> Vec<u16> {
        self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| i == v as usize)
    }

    /// Number of points not fixed.
    pub fn weight(&self) -> usize {
        self.images.iter().enumerate().filter(|&(i, &v)| i != v as usize).count()
    }

    /// Positions not fixed, ascending.
    pub fn support(&self) -> Vec<usize> {
        self.images.iter().enumerate().filter(|&(i, &v)| i != v as usize).map(|(i, _)| i).collect()
    }

    pub fn hamming_distance(&self, other: &Self) -> Result<usize> {
        same_len(self, other)?;
        Ok(hamming(&self.images, &other.images))
    }

    /// `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        same_len(self, other)?;
        Ok(Self { images: other.images.iter().map(|&j| self.images[j as usize]).collect() })
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0u16; self.len()];
        for (i, &v) in self.images.iter().enumerate() {
            inv[v as usize] = i as u16;
        }
        Self { images: inv }
    }

    /// Lexicographic rank in `[0, n!)` via the Lehmer code.
    pub fn rank(&self) -> Count {
        let n = self.len();
        let mut acc = Count::from(0u32);
        for (i, l) in lehmer_code(&self.images).into_iter().enumerate() {
            if l > 0 {
                acc += factorial((n - 1 - i) as u64) * l;
            }
        }
        acc
    }

    /// Inverse of [`Permutation::rank`].
    pub fn unrank(n: usize, rank: &Count) -> Result<Self> {
        if *rank >= factorial(n as u64) {
            return Err(Error::domain(format!("rank {rank} out of range for n = {n}")));
        }
        let mut rest = rank.clone();
        let mut code = Vec::with_capacity(n);
        for i in 0..n {
            let f = factorial((n - 1 - i) as u64);
            let digit = (&rest / &f).to_usize().expect("digit below n");
            rest -= f * digit;
            code.push(digit);
        }
        Ok(Self { images: from_lehmer_code(&code) })
    }

    /// Rank as a `u64`; only for `n <= 20`.
    pub fn rank_u64(&self) -> u64 {
        rank_u64(&self.images)
    }

    pub fn unrank_u64(n: usize, rank: u64) -> Result<Self> {
        if n > MAX_U64_RANK_LEN {
            return Err(Error::domain(format!("n = {n} exceeds u64 ranking limit")));
        }
        if rank >= factorial_u64(n) {
            return Err(Error::domain(format!("rank {rank} out of range for n = {n}")));
        }
        Ok(Self { images: unrank_u64(n, rank) })
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.images)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for v in &self.images {
            if !first {
                f.write_str(" ")?;
            }
            write!(f, "{v}")?;
            first = false;
        }
        Ok(())
    }
}

fn same_len(a: &Permutation, b: &Permutation) -> Result<()> {
    if a.len() != b.len() {
        return Err(Error::domain(format!("length mismatch: {} vs {}", a.len(), b.len())));
    }
    Ok(())
}

#[inline]
pub(crate) fn hamming(a: &[u16], b: &[u16]) -> usize {
    a.iter().zip(b).filter(|(x, y)| x != y).count()
}

/// Hamming distance, but stops counting once `cap` is reached.
#[inline]
pub(crate) fn hamming_capped(a: &[u16], b: &[u16], cap: usize) -> usize {
    let mut d = 0;
    for (x, y) in a.iter().zip(b) {
        if x != y {
            d += 1;
            if d >= cap {
                return d;
            }
        }
    }
    d
}

pub(crate) fn factorial_u64(n: usize) -> u64 {
    (1..=n as u64).product()
}

fn lehmer_code(images: &[u16]) -> Vec<usize> {
    (0..images.len()).map(|i| images[i + 1..].iter().filter(|&&v| v < images[i]).count()).collect()
}

fn from_lehmer_code(code: &[usize]) -> Vec<u16> {
    let mut pool: Vec<u16> = (0..code.len() as u16).collect();
    code.iter().map(|&c| pool.remove(c)).collect()
}

pub(crate) fn rank_u64(images: &[u16]) -> u64 {
    let n = images.len();
    debug_assert!(n <= MAX_U64_RANK_LEN);
    let mut used = 0u32;
    let mut acc = 0u64;
    for (i, &v) in images.iter().enumerate() {
        let smaller_unused = v as u32 - (used & ((1u32 << v) - 1)).count_ones();
        acc = acc * (n - i) as u64 + smaller_unused as u64;
        used |= 1 << v;
    }
    acc
}

pub(crate) fn unrank_u64(n: usize, mut rank: u64) -> Vec<u16> {
    let mut code = vec![0usize; n];
    for i in (0..n).rev() {
        let base = (n - i) as u64;
        code[i] = (rank % base) as usize;
        rank /= base;
    }
    from_lehmer_code(&code)
}

#[cfg(test)]
mod tests {
    use super::*;
    use itertools::Itertools;

    fn p(v: &[usize]) -> Permutation {
        Permutation::from_slice(v).unwrap()
    }

    fn all(n: usize) -> Vec<Permutation> {
        (0..n).permutations(n).map(|v| p(&v)).collect()
    }

    #[test]
    fn rejects_non_permutations() {
        assert!(Permutation::from_slice(&[0, 0, 1]).is_err());
        assert!(Permutation::from_slice(&[0, 3, 1]).is_err());
    }

    #[test]
    fn distances_and_weights() {
        let x = p(&[2, 0, 1, 3]);
        assert_eq!(x.hamming_distance(&x).unwrap(), 0);
        assert_eq!(p(&[0, 1, 2, 3]).hamming_distance(&p(&[1, 0, 2, 3])).unwrap(), 2);
        assert_eq!(p(&[0, 1, 2]).hamming_distance(&p(&[1, 2, 0])).unwrap(), 3);
        assert!(p(&[0, 1]).hamming_distance(&p(&[0, 1, 2])).is_err());
        assert_eq!(Permutation::identity(5).weight(), 0);
        assert_eq!(p(&[1, 0, 2, 3]).weight(), 2);
        assert_eq!(p(&[1, 2, 0, 3]).weight(), 3);
        assert_eq!(p(&[1, 2, 0, 3]).support(), vec![0, 1, 2]);
    }

    #[test]
    fn group_operations() {
        let x = p(&[1, 2, 0]);
        assert_eq!(x.compose(&Permutation::identity(3)).unwrap(), x);
        assert!(x.compose(&x.inverse()).unwrap().is_identity());
        assert_eq!(x.inverse(), p(&[2, 0, 1]));
        assert!(x.compose(&Permutation::identity(4)).is_err());
    }

    #[test]
    fn distance_is_weight_of_quotient_and_right_invariant() {
        for n in 1..=5 {
            let s = all(n);
            for x in &s {
                for y in &s {
                    let d = x.hamming_distance(y).unwrap();
                    assert_eq!(d, x.compose(&y.inverse()).unwrap().weight());
                    if x != y {
                        assert_ne!(d, 1);
                    }
                }
            }
        }
        let s6 = all(6);
        for (a, x) in s6.iter().enumerate().step_by(7) {
            for y in s6.iter().skip(a % 5).step_by(11) {
                let d = x.hamming_distance(y).unwrap();
                for z in s6.iter().step_by(97) {
                    let xz = x.compose(z).unwrap();
                    let yz = y.compose(z).unwrap();
                    assert_eq!(xz.hamming_distance(&yz).unwrap(), d);
                }
            }
        }
    }

    #[test]
    fn ranking() {
        assert_eq!(Permutation::identity(4).rank(), Count::from(0u32));
        assert_eq!(p(&[1, 0, 2, 3]).rank(), Count::from(6u32));
        assert_eq!(Permutation::unrank(4, &Count::from(23u32)).unwrap(), p(&[3, 2, 1, 0]));
        assert!(Permutation::unrank(4, &Count::from(24u32)).is_err());
        for n in 0..=7 {
            // lexicographic enumeration order is rank order
            for (r, x) in all(n).into_iter().enumerate() {
                assert_eq!(x.rank(), Count::from(r));
                assert_eq!(x.rank_u64(), r as u64);
                assert_eq!(Permutation::unrank(n, &x.rank()).unwrap(), x);
                assert_eq!(Permutation::unrank_u64(n, r as u64).unwrap(), x);
            }
        }
    }

    #[test]
    fn display_is_space_separated() {
        assert_eq!(p(&[2, 0, 1]).to_string(), "2 0 1");
    }
}
