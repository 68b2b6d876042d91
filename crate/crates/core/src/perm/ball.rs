use std::sync::Arc;

use itertools::Itertools;

use super::Permutation;
use crate::error::{Error, Result};

/// All derangements of `0..k` in lexicographic order.
pub fn derangement_maps(k: usize) -> Vec<Vec<u8>> {
    fn go(k: usize, cur: &mut Vec<u8>, used: &mut [bool], out: &mut Vec<Vec<u8>>) {
        let i = cur.len();
        if i == k {
            out.push(cur.clone());
            return;
        }
        for v in 0..k {
            if v != i && !used[v] {
                used[v] = true;
                cur.push(v as u8);
                go(k, cur, used, out);
                cur.pop();
                used[v] = false;
            }
        }
    }
    assert!(k <= u8::MAX as usize);
    let mut out = Vec::new();
    go(k, &mut Vec::with_capacity(k), &mut vec![false; k], &mut out);
    out
}

/// Permutations within Hamming distance `r` of `center`, each exactly once:
/// for every support set `S` with `|S| <= r` and every derangement `s` of
/// `S`, yields `center ∘ s`.
pub fn ball_enumerate(center: &Permutation, r: usize) -> Result<impl Iterator<Item = Permutation> + '_> {
    let n = center.len();
    if r > n {
        return Err(Error::domain(format!("radius {r} exceeds length {n}")));
    }
    Ok((0..=r).flat_map(move |w| {
        let ders = Arc::new(derangement_maps(w));
        (0..n).combinations(w).flat_map(move |support| {
            let ders = Arc::clone(&ders);
            (0..ders.len()).map(move |t| {
                let mut images = center.images().to_vec();
                for (a, &b) in ders[t].iter().enumerate() {
                    images[support[a]] = center.images()[support[b as usize]];
                }
                Permutation::from_images_unchecked(images)
            })
        })
    }))
}

/// Allocation-free ball traversal with cached derangement tables, used by
/// the covering and greedy routines that visit millions of balls.
#[derive(Clone, Debug)]
pub struct BallVisitor {
    n: usize,
    radius: usize,
    ders: Vec<Vec<Vec<u8>>>,
    supports: Vec<Vec<Vec<usize>>>,
}

impl BallVisitor {
    pub fn new(n: usize, radius: usize) -> Result<Self> {
        if radius > n {
            return Err(Error::domain(format!("radius {radius} exceeds length {n}")));
        }
        let ders = (0..=radius).map(derangement_maps).collect();
        let supports = (0..=radius).map(|w| (0..n).combinations(w).collect()).collect();
        Ok(Self { n, radius, ders, supports })
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    /// Calls `f` on the image array of every member of the ball around `center`.
    pub fn visit(&self, center: &[u16], mut f: impl FnMut(&[u16])) {
        debug_assert_eq!(center.len(), self.n);
        let mut buf = center.to_vec();
        for w in 0..=self.radius {
            for support in &self.supports[w] {
                for der in &self.ders[w] {
                    for (a, &b) in der.iter().enumerate() {
                        buf[support[a]] = center[support[b as usize]];
                    }
                    f(&buf);
                }
                for &i in support {
                    buf[i] = center[i];
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::{ball_volume, derangement_count};
    use num_traits::ToPrimitive;
    use std::collections::HashSet;

    #[test]
    fn derangement_tables() {
        for k in 0..=7 {
            let maps = derangement_maps(k);
            assert_eq!(maps.len() as u64, derangement_count(k as u64).to_u64().unwrap());
            assert!(maps.iter().all(|m| m.iter().enumerate().all(|(i, &v)| i != v as usize)));
        }
    }

    #[test]
    fn ball_examples() {
        let x = Permutation::from_slice(&[2, 0, 3, 1]).unwrap();
        assert_eq!(ball_enumerate(&x, 0).unwrap().collect::<Vec<_>>(), vec![x.clone()]);
        assert_eq!(ball_enumerate(&Permutation::identity(4), 2).unwrap().count(), 7);
        assert_eq!(ball_enumerate(&Permutation::identity(6), 4).unwrap().count(), 191);
        assert!(ball_enumerate(&x, 5).is_err());
    }

    #[test]
    fn ball_cardinality_and_membership() {
        for n in 0..=7usize {
            let center = Permutation::unrank_u64(n, (n as u64 * 7919) % super::super::factorial_u64(n)).unwrap();
            for r in 0..=n {
                let members: Vec<_> = ball_enumerate(&center, r).unwrap().collect();
                let distinct: HashSet<_> = members.iter().cloned().collect();
                let volume = ball_volume(n as u64, r as i64).unwrap().to_usize().unwrap();
                assert_eq!(members.len(), volume, "n={n} r={r}");
                assert_eq!(distinct.len(), volume);
                assert!(members.iter().all(|y| y.hamming_distance(&center).unwrap() <= r));

                let visitor = BallVisitor::new(n, r).unwrap();
                let mut visited = Vec::new();
                visitor.visit(center.images(), |imgs| visited.push(imgs.to_vec()));
                let expected: Vec<_> = members.into_iter().map(Permutation::into_images).collect();
                assert_eq!(visited, expected);
            }
        }
    }
}
