use std::collections::{HashMap, HashSet, VecDeque};
use std::sync::atomic::{AtomicUsize, Ordering};

use rayon::prelude::*;

use super::{factorial_u64, hamming_capped, rank_u64, BallVisitor, Permutation, MAX_U64_RANK_LEN};
use crate::combinatorics::Count;
use crate::error::{Error, Result};

/// Member count above which [`min_distance`] tries the group shortcut first.
pub const GROUP_SHORTCUT_THRESHOLD: usize = 1000;

/// A duplicate-free list of equal-length permutations, optionally carrying
/// the distance it is claimed to achieve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermutationArray {
    n: usize,
    members: Vec<Permutation>,
    claimed_distance: Option<usize>,
}

impl PermutationArray {
    pub fn new(n: usize, members: Vec<Permutation>) -> Result<Self> {
        let mut seen = HashSet::with_capacity(members.len());
        for (i, m) in members.iter().enumerate() {
            if m.len() != n {
                return Err(Error::domain(format!("member {i} has length {}, expected {n}", m.len())));
            }
            if !seen.insert(m.images()) {
                return Err(Error::Validation(format!("duplicate member {m}")));
            }
        }
        Ok(Self { n, members, claimed_distance: None })
    }

    pub fn with_claimed_distance(mut self, d: usize) -> Self {
        self.claimed_distance = Some(d);
        self
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[Permutation] {
        &self.members
    }

    pub fn into_members(self) -> Vec<Permutation> {
        self.members
    }

    pub fn claimed_distance(&self) -> Option<usize> {
        self.claimed_distance
    }
}

/// Exact minimum pairwise distance by pairwise comparison, pruning each
/// comparison at the best distance found so far.
pub fn pairwise_min_distance(pa: &PermutationArray) -> Option<usize> {
    let m = pa.members();
    if m.len() < 2 {
        return None;
    }
    let best = AtomicUsize::new(pa.n() + 1);
    (0..m.len()).into_par_iter().for_each(|i| {
        let a = m[i].images();
        let mut local = best.load(Ordering::Relaxed);
        for b in &m[i + 1..] {
            let d = hamming_capped(a, b.images(), local);
            if d < local {
                local = d;
                best.fetch_min(d, Ordering::Relaxed);
                if d <= 2 {
                    // two distinct permutations are never closer than 2
                    break;
                }
            }
        }
    });
    Some(best.into_inner())
}

/// Exact minimum distance; `None` for fewer than two members. Large arrays
/// that form a group are handled by minimum nonidentity weight.
pub fn min_distance(pa: &PermutationArray) -> Option<usize> {
    if pa.len() > GROUP_SHORTCUT_THRESHOLD && is_group_closed(pa) {
        return group_min_weight(pa).ok();
    }
    pairwise_min_distance(pa)
}

/// Whether some pair of distinct members is at distance below `d`.
pub fn has_pair_closer_than(pa: &PermutationArray, d: usize) -> bool {
    let m = pa.members();
    (0..m.len()).into_par_iter().any(|i| {
        let a = m[i].images();
        m[i + 1..].iter().any(|b| hamming_capped(a, b.images(), d) < d)
    })
}

/// Whether the members form a subgroup of `S_n`.
///
/// Builds the subgroup generated by the members incrementally, adding a
/// member as a new generator only when it is not yet generated, and fails
/// as soon as a generated element falls outside the array.
pub fn is_group_closed(pa: &PermutationArray) -> bool {
    let n = pa.n();
    let members: HashSet<&[u16]> = pa.members().iter().map(|p| p.images()).collect();
    let id: Vec<u16> = (0..n as u16).collect();
    if !members.contains(id.as_slice()) {
        return false;
    }
    let mut group: HashSet<Vec<u16>> = HashSet::from([id.clone()]);
    let mut elements: Vec<Vec<u16>> = vec![id];
    let mut gens: Vec<Vec<u16>> = Vec::new();
    for c in pa.members() {
        if group.contains(c.images()) {
            continue;
        }
        gens.push(c.images().to_vec());
        // existing elements only need the new generator; new ones need all
        let new_gen = gens.len() - 1;
        let mut queue: VecDeque<(usize, usize)> = (0..elements.len()).map(|e| (e, new_gen)).collect();
        let mut buf = vec![0u16; n];
        while let Some((e, first_gen)) = queue.pop_front() {
            for g in &gens[first_gen..] {
                let x = &elements[e];
                for (i, &j) in g.iter().enumerate() {
                    buf[i] = x[j as usize];
                }
                if group.contains(&buf) {
                    continue;
                }
                if !members.contains(buf.as_slice()) {
                    return false;
                }
                group.insert(buf.clone());
                elements.push(buf.clone());
                queue.push_back((elements.len() - 1, 0));
            }
        }
    }
    group.len() == pa.len()
}

/// Minimum weight over nonidentity members; equals the minimum distance of
/// a group by right-invariance of the metric.
pub fn group_min_weight(pa: &PermutationArray) -> Result<usize> {
    if pa.len() < 2 {
        return Err(Error::domain("group minimum weight needs at least two members"));
    }
    if !is_group_closed(pa) {
        return Err(Error::Validation("array is not closed under composition".into()));
    }
    Ok(pa.members().iter().map(Permutation::weight).filter(|&w| w > 0).min().expect("nonidentity member"))
}

/// `|B(C)|`: number of permutations within distance `d - 1` of some member.
pub fn covered_union_size(pa: &PermutationArray, d: usize, limit: usize) -> Result<Count> {
    let n = pa.n();
    if n > limit || n > MAX_U64_RANK_LEN {
        return Err(Error::capacity(format!("covered union for n = {n}"), limit as u64));
    }
    if d == 0 || d > n + 1 {
        return Err(Error::domain(format!("distance {d} outside [1, {}]", n + 1)));
    }
    let total = factorial_u64(n);
    let visitor = BallVisitor::new(n, (d - 1).min(n))?;
    let mut covered = vec![0u64; (total as usize).div_ceil(64)];
    for c in pa.members() {
        visitor.visit(c.images(), |y| {
            let r = rank_u64(y) as usize;
            covered[r / 64] |= 1 << (r % 64);
        });
    }
    Ok(Count::from(covered.iter().map(|w| w.count_ones() as u64).sum::<u64>()))
}

/// Buckets members by the position mapped to `value`.
pub(crate) fn preimage_buckets(pa: &PermutationArray, value: u16) -> HashMap<usize, Vec<usize>> {
    let mut buckets: HashMap<usize, Vec<usize>> = HashMap::new();
    for (idx, p) in pa.members().iter().enumerate() {
        let pos = p.images().iter().position(|&v| v == value).expect("value in range");
        buckets.entry(pos).or_default().push(idx);
    }
    buckets
}
