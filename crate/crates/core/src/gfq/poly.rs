use std::collections::BTreeMap;

use rayon::prelude::*;

use super::FieldSpec;
use crate::combinatorics::Count;
use crate::error::{Error, Result};

/// Default budget, in point evaluations, for exhaustive permutation-polynomial counts.
pub const DEFAULT_PP_BUDGET: u64 = 100_000_000;

/// Largest degree handled by the counting routines.
pub const MAX_PP_DEGREE: usize = 5;

/// Polynomial over a field, coefficients lowest degree first, with no zero
/// coefficient above the degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<u32>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<u32>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    /// `x^d`.
    pub fn monomial(d: usize) -> Self {
        let mut coeffs = vec![0; d + 1];
        coeffs[d] = 1;
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&1)
    }

    pub fn eval(&self, f: &FieldSpec, x: u32) -> u32 {
        self.coeffs.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, x), c))
    }

    /// The map `a ↦ f(a)` over the whole field.
    pub fn value_table(&self, f: &FieldSpec) -> Vec<u32> {
        f.elements().map(|x| self.eval(f, x)).collect()
    }
}

/// Whether `f` induces a bijection of the field, by direct evaluation.
pub fn is_permutation_poly(poly: &Poly, f: &FieldSpec) -> bool {
    let mut seen = vec![false; f.order() as usize];
    for x in f.elements() {
        let y = poly.eval(f, x) as usize;
        if seen[y] {
            return false;
        }
        seen[y] = true;
    }
    true
}

/// Number of permutation polynomials of each degree `1..=max_deg`
/// (all, or monic only), by exhaustive enumeration of coefficient vectors.
pub fn count_pps_by_degree(
    f: &FieldSpec,
    max_deg: usize,
    monic_only: bool,
    budget: u64,
) -> Result<BTreeMap<usize, Count>> {
    if max_deg > MAX_PP_DEGREE {
        return Err(Error::domain(format!("degree {max_deg} above supported maximum {MAX_PP_DEGREE}")));
    }
    let q = f.order() as u64;
    // point evaluations at the top degree
    let leads = if monic_only { 1 } else { q - 1 };
    let cost = q.checked_pow(max_deg as u32 + 1).and_then(|c| c.checked_mul(leads)).unwrap_or(u64::MAX);
    if cost > budget {
        return Err(Error::capacity(format!("enumerating degree-{max_deg} polynomials over GF({q})"), budget));
    }
    let powers: Vec<Vec<u32>> = f.elements().map(|x| (0..=max_deg as u64).map(|e| f.pow(x, e)).collect()).collect();
    let mut out = BTreeMap::new();
    for d in 1..=max_deg {
        let leads: Vec<u32> = if monic_only { vec![1] } else { (1..f.order()).collect() };
        let lower = q.pow(d as u32);
        let count: u64 = leads
            .par_iter()
            .map(|&lead| {
                let mut coeffs = vec![0u32; d + 1];
                coeffs[d] = lead;
                let mut hits = 0u64;
                let mut seen = vec![0u64; q as usize];
                for code in 0..lower {
                    let mut c = code;
                    for slot in coeffs.iter_mut().take(d) {
                        *slot = (c % q) as u32;
                        c /= q;
                    }
                    // stamp = code + 1 marks values seen for this polynomial
                    let stamp = code + 1;
                    let mut ok = true;
                    for pw in &powers {
                        let y = coeffs.iter().zip(pw).fold(0, |acc, (&a, &xp)| f.add(acc, f.mul(a, xp)));
                        if seen[y as usize] == stamp {
                            ok = false;
                            break;
                        }
                        seen[y as usize] = stamp;
                    }
                    if ok {
                        hits += 1;
                    }
                }
                hits
            })
            .sum();
        out.insert(d, Count::from(count));
    }
    Ok(out)
}
