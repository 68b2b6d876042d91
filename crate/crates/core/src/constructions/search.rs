use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{params, VerifyPolicy, Witness};
use crate::error::{Error, Result};
use crate::perm::{factorial_u64, hamming_capped, rank_u64, unrank_u64, BallVisitor, Permutation, PermutationArray};

/// Largest length scanned by [`greedy_gv`].
pub const MAX_GREEDY_N: usize = 10;
/// Largest length handled by [`clique_lower`].
pub const MAX_CLIQUE_N: usize = 7;
pub const DEFAULT_CLIQUE_BUDGET: u64 = 100_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GreedyOrder {
    Lex,
    Shuffled(u64),
}

/// Scans `S_n` in the given order of ranks, keeping a permutation iff it is
/// at distance at least `d` from everything kept so far.
pub fn greedy_gv(n: usize, d: usize, order: GreedyOrder, policy: &VerifyPolicy) -> Result<Witness> {
    if n == 0 || n > MAX_GREEDY_N {
        return Err(Error::capacity(format!("greedy scan of S_{n}"), MAX_GREEDY_N as u64));
    }
    if d == 0 || d > n {
        return Err(Error::domain(format!("distance {d} outside [1, {n}]")));
    }
    let total = factorial_u64(n);
    let visitor = BallVisitor::new(n, d - 1)?;
    let mut covered = vec![0u64; (total as usize).div_ceil(64)];
    let mut kept = Vec::new();
    let mut scan = |r: u64| {
        let r = r as usize;
        if covered[r / 64] >> (r % 64) & 1 == 1 {
            return;
        }
        let images = unrank_u64(n, r as u64);
        visitor.visit(&images, |y| {
            let k = rank_u64(y) as usize;
            covered[k / 64] |= 1 << (k % 64);
        });
        kept.push(Permutation::from_images_unchecked(images));
    };
    let tag = match order {
        GreedyOrder::Lex => {
            (0..total).for_each(&mut scan);
            "lex".to_string()
        }
        GreedyOrder::Shuffled(seed) => {
            let mut ranks: Vec<u64> = (0..total).collect();
            ranks.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
            ranks.into_iter().for_each(&mut scan);
            format!("shuffled:{seed}")
        }
    };
    let pa = PermutationArray::new(n, kept)?;
    Witness::verified(pa, d, "greedy", params([("n", n.to_string()), ("d", d.to_string()), ("order", tag)]), policy)
}

type Bits = Vec<u64>;

fn bit(b: &[u64], i: usize) -> bool {
    b[i / 64] >> (i % 64) & 1 == 1
}

fn clear(b: &mut [u64], i: usize) {
    b[i / 64] &= !(1 << (i % 64));
}

fn first_one(b: &[u64]) -> Option<usize> {
    b.iter().position(|&w| w != 0).map(|w| w * 64 + b[w].trailing_zeros() as usize)
}

struct CliqueSearch {
    adj: Vec<Bits>,
    best: Vec<usize>,
    nodes: u64,
    budget: u64,
    exhausted: bool,
}

impl CliqueSearch {
    /// Greedy sequential coloring of `p`; returns vertices in color order
    /// with their color numbers (1-based).
    fn color_sort(&self, p: &[u64]) -> (Vec<usize>, Vec<usize>) {
        let mut uncolored = p.to_vec();
        let mut order = Vec::new();
        let mut colors = Vec::new();
        let mut color = 0;
        while uncolored.iter().any(|&w| w != 0) {
            color += 1;
            let mut q = uncolored.clone();
            while let Some(v) = first_one(&q) {
                clear(&mut q, v);
                clear(&mut uncolored, v);
                for (qw, aw) in q.iter_mut().zip(&self.adj[v]) {
                    *qw &= !aw;
                }
                order.push(v);
                colors.push(color);
            }
        }
        (order, colors)
    }

    fn expand(&mut self, clique: &mut Vec<usize>, mut p: Bits) {
        self.nodes += 1;
        if self.nodes > self.budget {
            self.exhausted = true;
            return;
        }
        let (order, colors) = self.color_sort(&p);
        for k in (0..order.len()).rev() {
            if clique.len() + colors[k] <= self.best.len() {
                return;
            }
            let v = order[k];
            clique.push(v);
            let next: Bits = p.iter().zip(&self.adj[v]).map(|(a, b)| a & b).collect();
            if next.iter().all(|&w| w == 0) {
                if clique.len() > self.best.len() {
                    self.best = clique.clone();
                }
            } else {
                self.expand(clique, next);
            }
            clique.pop();
            clear(&mut p, v);
            if self.exhausted {
                return;
            }
        }
    }
}

/// Cycle lengths above 1, in decreasing order.
fn cycle_type(images: &[u16]) -> Vec<usize> {
    let mut seen = vec![false; images.len()];
    let mut lens = Vec::new();
    for start in 0..images.len() {
        let mut len = 0;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            x = images[x] as usize;
            len += 1;
        }
        if len > 1 {
            lens.push(len);
        }
    }
    lens.sort_unstable_by(|a, b| b.cmp(a));
    lens
}

/// One permutation per cycle type with at least `d` moved points, cycles on
/// consecutive points.
fn class_representatives(n: usize, d: usize) -> Vec<Vec<u16>> {
    fn partitions(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for part in (2..=max.min(rest)).rev() {
            cur.push(part);
            partitions(rest - part, part, cur, out);
            cur.pop();
        }
    }
    let mut types = Vec::new();
    for w in (d.max(2)..=n).rev() {
        partitions(w, w, &mut Vec::new(), &mut types);
    }
    types
        .into_iter()
        .map(|parts| {
            let mut images: Vec<u16> = (0..n as u16).collect();
            let mut start = 0;
            for len in parts {
                for i in 0..len {
                    images[start + i] = (start + (i + 1) % len) as u16;
                }
                start += len;
            }
            images
        })
        .collect()
}

/// Branch-and-bound maximum clique in the graph on `S_n` joining
/// permutations at distance at least `d`. The identity is fixed in the
/// clique and, the distance being conjugation invariant, the second vertex
/// ranges over cycle-type representatives only; once a cycle type has been
/// searched, its members are dropped from later branches. The search stops after
/// `budget` node expansions and returns the largest clique found.
pub fn clique_lower(n: usize, d: usize, budget: u64) -> Result<Witness> {
    if n == 0 || n > MAX_CLIQUE_N {
        return Err(Error::capacity(format!("clique search on S_{n}"), MAX_CLIQUE_N as u64));
    }
    if d == 0 || d > n {
        return Err(Error::domain(format!("distance {d} outside [1, {n}]")));
    }
    let total = factorial_u64(n);
    let id: Vec<u16> = (0..n as u16).collect();
    // vertices adjacent to the identity, by increasing rank
    let verts: Vec<Vec<u16>> =
        (1..total).map(|r| unrank_u64(n, r)).filter(|p| hamming_capped(&id, p, d) >= d).collect();
    let words = verts.len().div_ceil(64);
    let mut adj = vec![vec![0u64; words]; verts.len()];
    for i in 0..verts.len() {
        for j in i + 1..verts.len() {
            if hamming_capped(&verts[i], &verts[j], d) >= d {
                adj[i][j / 64] |= 1 << (j % 64);
                adj[j][i / 64] |= 1 << (i % 64);
            }
        }
    }
    let mut greedy: Vec<usize> = Vec::new();
    for v in 0..verts.len() {
        if greedy.iter().all(|&u| bit(&adj[u], v)) {
            greedy.push(v);
        }
    }
    let mut search = CliqueSearch { adj, best: greedy, nodes: 0, budget, exhausted: false };
    let index_of = |images: &[u16]| verts.binary_search_by_key(&rank_u64(images), |p| rank_u64(p)).ok();
    let types: Vec<Vec<usize>> = verts.iter().map(|v| cycle_type(v)).collect();
    let mut allowed = vec![u64::MAX; words];
    for rep in class_representatives(n, d) {
        let r = index_of(&rep).expect("representative moves at least d points");
        let p: Bits = search.adj[r].iter().zip(&allowed).map(|(a, b)| a & b).collect();
        if p.iter().any(|&w| w != 0) {
            search.expand(&mut vec![r], p);
        }
        if search.exhausted {
            break;
        }
        let ty = cycle_type(&rep);
        for (v, t) in types.iter().enumerate() {
            if *t == ty {
                clear(&mut allowed, v);
            }
        }
    }
    let mut ranks: Vec<u64> = std::iter::once(0).chain(search.best.iter().map(|&v| rank_u64(&verts[v]))).collect();
    ranks.sort_unstable();
    let members = ranks.into_iter().map(|r| Permutation::from_images_unchecked(unrank_u64(n, r))).collect();
    let pa = PermutationArray::new(n, members)?;
    let p = params([
        ("n", n.to_string()),
        ("d", d.to_string()),
        ("budget", budget.to_string()),
        ("nodes", search.nodes.min(budget).to_string()),
        ("complete", (!search.exhausted).to_string()),
    ]);
    Witness::verified(pa, d, "clique", p, &VerifyPolicy::default())
}
