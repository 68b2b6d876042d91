use super::{params, VerifyPolicy, Witness};
use crate::error::{Error, Result};
use crate::perm::{preimage_buckets, Permutation, PermutationArray};

/// `(n, M, d) → (n-1, M, d-3)`: every `x < n-1` keeps its image unless
/// that image is `n-1`, in which case it takes the image of `n-1`.
pub fn reduce_d3(w: &Witness, policy: &VerifyPolicy) -> Result<Witness> {
    let c = w.claim();
    if c.d <= 3 || c.n < c.d {
        return Err(Error::domain(format!("needs n >= d > 3, got n = {}, d = {}", c.n, c.d)));
    }
    let top = (c.n - 1) as u16;
    let members = w
        .pa()
        .members()
        .iter()
        .map(|phi| {
            let img = phi.images();
            let last = img[c.n - 1];
            let images = img[..c.n - 1].iter().map(|&v| if v == top { last } else { v }).collect();
            Permutation::from_images_unchecked(images)
        })
        .collect();
    let pa = PermutationArray::new(c.n - 1, members)?;
    let p =
        params([("source", w.provenance().tag.clone()), ("source_n", c.n.to_string()), ("source_d", c.d.to_string())]);
    Witness::verified(pa, c.d - 3, "reduce-d3", p, policy)
}

/// `(n, M, d) → (n-1, M1+M2, d-2)` from the two largest classes `Φ_s`,
/// `Φ_t` of members sending a point to `n-1`. Members of `Φ_t` take
/// `φ(s)` at `t`; the domain `Z_n \ {s}` is relabeled in increasing order.
pub fn reduce_d2(w: &Witness, policy: &VerifyPolicy) -> Result<Witness> {
    let c = w.claim();
    if c.d <= 2 || c.n < c.d {
        return Err(Error::domain(format!("needs n >= d > 2, got n = {}, d = {}", c.n, c.d)));
    }
    let buckets = preimage_buckets(w.pa(), (c.n - 1) as u16);
    let mut sizes: Vec<(usize, usize)> = (0..c.n).map(|i| (i, buckets.get(&i).map_or(0, Vec::len))).collect();
    sizes.sort_by_key(|&(i, len)| (std::cmp::Reverse(len), i));
    let (s, t) = (sizes[0].0, sizes[1].0);
    let members = w.pa().members();
    let mut out = Vec::with_capacity(sizes[0].1 + sizes[1].1);
    for &idx in buckets.get(&s).into_iter().flatten() {
        let img = members[idx].images();
        let images = (0..c.n).filter(|&x| x != s).map(|x| img[x]).collect();
        out.push(Permutation::from_images_unchecked(images));
    }
    for &idx in buckets.get(&t).into_iter().flatten() {
        let img = members[idx].images();
        let images = (0..c.n).filter(|&x| x != s).map(|x| if x == t { img[s] } else { img[x] }).collect();
        out.push(Permutation::from_images_unchecked(images));
    }
    let floor = (2 * c.m).div_ceil(c.n);
    if out.len() < floor {
        return Err(Error::Validation(format!("{} members, below 2M/n = {floor}", out.len())));
    }
    let pa = PermutationArray::new(c.n - 1, out)?;
    let p = params([
        ("source", w.provenance().tag.clone()),
        ("source_n", c.n.to_string()),
        ("source_d", c.d.to_string()),
        ("s", s.to_string()),
        ("t", t.to_string()),
    ]);
    Witness::verified(pa, c.d - 2, "reduce-d2", p, policy)
}
