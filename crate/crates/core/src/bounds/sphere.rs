use rayon::prelude::*;

use super::{calc, check_nd};
use crate::combinatorics::Count;
use crate::error::{Error, Result};
use crate::perm::{hamming_capped, BallVisitor};

/// Largest length for the permutation sphere graph.
pub const MAX_SPHERE_N: usize = 7;
/// Largest length for the binary sphere graph.
pub const MAX_BINARY_SPHERE_N: usize = 16;

/// Edge and vertex counts of the Hamming sphere graphs around a fixed
/// vertex: `t`, `d` in `S_n` and `t2`, `d2` in `{0,1}^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SphereStats {
    pub t: Count,
    pub d: Count,
    pub t2: Count,
    pub d2: Count,
}

pub fn sphere_graph_stats(n: usize, d: usize) -> Result<SphereStats> {
    if n > MAX_SPHERE_N {
        return Err(Error::capacity(format!("permutation sphere graph for n = {n}"), MAX_SPHERE_N as u64));
    }
    check_nd(n, d, 1)?;
    let mut verts: Vec<Vec<u16>> = Vec::new();
    let id: Vec<u16> = (0..n as u16).collect();
    BallVisitor::new(n, d - 1)?.visit(&id, |y| {
        if y != id.as_slice() {
            verts.push(y.to_vec());
        }
    });
    let t: u64 = (0..verts.len())
        .into_par_iter()
        .map(|i| verts[i + 1..].iter().filter(|y| hamming_capped(&verts[i], y, d) < d).count() as u64)
        .sum();
    let (t2, d2) = binary_sphere_graph_stats(n, d)?;
    debug_assert_eq!(Count::from(verts.len()) + 1u32, calc().comb.ball_volume(n, d - 1));
    Ok(SphereStats { t: Count::from(t), d: Count::from(verts.len()), t2, d2 })
}

/// `(T', D')` for the binary sphere graph, by enumeration.
pub fn binary_sphere_graph_stats(n: usize, d: usize) -> Result<(Count, Count)> {
    if n > MAX_BINARY_SPHERE_N {
        return Err(Error::capacity(format!("binary sphere graph for n = {n}"), MAX_BINARY_SPHERE_N as u64));
    }
    check_nd(n, d, 1)?;
    let r = d as u32 - 1;
    let verts: Vec<u32> = (1u32..1 << n).filter(|x| x.count_ones() <= r).collect();
    let t: u64 = (0..verts.len())
        .into_par_iter()
        .map(|i| verts[i + 1..].iter().filter(|&&y| (verts[i] ^ y).count_ones() <= r).count() as u64)
        .sum();
    Ok((Count::from(t), Count::from(verts.len())))
}
