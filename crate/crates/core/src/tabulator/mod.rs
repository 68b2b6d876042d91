//! Best-known lower bounds on `P(n, d)` combined from every source, closed
//! under the monotonicity and length-reduction inequalities.

mod compare;
mod export;

use std::collections::BTreeMap;
use std::sync::Arc;

use rayon::prelude::*;

use crate::bounds::{
    affine_lower, anchor_pa_lower, anticode_product_upper, ball_intersect_lower, cubic_pp_lower, elementary,
    graph_lower, gv_lower, method, pp_monic_lower, pp_sum_lower, reduced_group_values, relation_d2, relation_d3,
    sharply_transitive_lower, theta_lower, witness_lower, BoundRecord, Sense,
};
use crate::combinatorics::{prime_power, Count};
use crate::constructions::{clique_lower, greedy_gv, mathieu_pa, reduce_d2, reduce_d3, GreedyOrder, VerifyPolicy};
use crate::error::{Error, Result};
use crate::gfq::{DEFAULT_PP_BUDGET, MAX_PP_DEGREE};

pub use compare::render_comparison;
pub use export::{export, to_csv, to_markdown, ExportFormat};

pub const DEFAULT_TABLE_CAP: usize = 40;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CliqueSource {
    /// Largest length searched (at most 7).
    pub max_n: usize,
    /// Node expansions per cell.
    pub budget: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableOptions {
    pub cap: usize,
    pub pp_budget: u64,
    /// Mathieu closures and their two reductions.
    pub mathieu: bool,
    /// Lex greedy witnesses and their covered-ball bounds for `n` up to this; 0 disables.
    pub anchor_max_n: usize,
    pub clique: Option<CliqueSource>,
    pub verify: VerifyPolicy,
}

impl Default for TableOptions {
    fn default() -> Self {
        Self {
            cap: DEFAULT_TABLE_CAP,
            pp_budget: DEFAULT_PP_BUDGET,
            mathieu: false,
            anchor_max_n: 0,
            clique: None,
            verify: VerifyPolicy::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cell {
    pub lower: Arc<BoundRecord>,
    pub upper: Arc<BoundRecord>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BoundTable {
    pub n_max: usize,
    pub cells: BTreeMap<(usize, usize), Cell>,
    /// Propagation sweeps until nothing changed, the final sweep included.
    pub sweeps: usize,
}

impl BoundTable {
    pub fn get(&self, n: usize, d: usize) -> Option<&Cell> {
        self.cells.get(&(n, d))
    }

    pub fn lower(&self, n: usize, d: usize) -> Option<&Count> {
        self.get(n, d).map(|c| &c.lower.value)
    }

    /// One propagation sweep; returns whether any cell improved.
    pub fn propagate_once(&mut self) -> bool {
        let mut changed = false;
        for d in (2..=self.n_max).rev() {
            for n in d..=self.n_max {
                let mut cands: Vec<BoundRecord> = Vec::new();
                if let Some(c) = self.cells.get(&(n - 1, d)) {
                    cands.push(carry(n, d, &c.lower, method::MONO_N));
                }
                if let Some(c) = self.cells.get(&(n, d + 1)) {
                    cands.push(carry(n, d, &c.lower, method::MONO_D));
                }
                if let Some(c) = self.cells.get(&(n + 1, d + 3)) {
                    cands.extend(relation_d3(&c.lower).ok());
                }
                if let Some(c) = self.cells.get(&(n + 1, d + 2)) {
                    cands.extend(relation_d2(&c.lower).ok());
                }
                let cell = self.cells.get_mut(&(n, d)).expect("cell exists");
                for cand in cands {
                    if better(&cand, &cell.lower) {
                        cell.lower = Arc::new(cand);
                        changed = true;
                    }
                }
            }
        }
        changed
    }

    /// Every cell's lower bound is at most its upper bound.
    pub fn check_consistent(&self) -> Result<()> {
        for ((n, d), c) in &self.cells {
            if c.lower.value > c.upper.value {
                return Err(Error::Validation(format!(
                    "cell ({n},{d}): lower {} ({}) exceeds upper {} ({})",
                    c.lower.value, c.lower.method, c.upper.value, c.upper.method
                )));
            }
        }
        Ok(())
    }
}

fn carry(n: usize, d: usize, src: &Arc<BoundRecord>, tag: &str) -> BoundRecord {
    let mut r = BoundRecord::lower(n, d, src.value.clone(), tag);
    r.inputs = vec![src.clone()];
    r
}

/// Larger value wins; at equal value, stronger backing wins.
fn better(cand: &BoundRecord, cur: &BoundRecord) -> bool {
    match cand.value.cmp(&cur.value) {
        std::cmp::Ordering::Greater => true,
        std::cmp::Ordering::Equal => cand.backing() > cur.backing(),
        std::cmp::Ordering::Less => false,
    }
}

fn best_of(recs: impl IntoIterator<Item = BoundRecord>) -> Option<BoundRecord> {
    let mut best: Option<BoundRecord> = None;
    for r in recs {
        if best.as_ref().is_none_or(|b| better(&r, b)) {
            best = Some(r);
        }
    }
    best
}

fn formula_lowers(n: usize, d: usize, opts: &TableOptions) -> Vec<BoundRecord> {
    // exact values first so they win ties
    let mut out: Vec<BoundRecord> =
        elementary(n, d).into_iter().flatten().filter(|r| r.sense == Sense::Lower).collect();
    out.extend(gv_lower(n, d).ok());
    out.extend(graph_lower(n, d).ok());
    out.extend(ball_intersect_lower(n, d).ok());
    if d + 1 == n {
        out.extend(theta_lower(n).ok());
        out.extend(affine_lower(n).ok());
    }
    out.extend(sharply_transitive_lower(n, d).ok());
    let e = n - d;
    if prime_power(n as u64).is_some() && (1..=MAX_PP_DEGREE).contains(&e) {
        out.extend(pp_sum_lower(n as u64, e, opts.pp_budget).ok());
        out.extend(pp_monic_lower(n as u64, e, opts.pp_budget).ok());
        if e == 2 {
            out.extend(cubic_pp_lower(n as u64).ok());
        }
    }
    out
}

fn upper_candidates(n: usize, d: usize) -> Vec<BoundRecord> {
    let mut out: Vec<BoundRecord> = elementary(n, d)
        .into_iter()
        .flatten()
        .filter(|r| r.sense == Sense::Upper && r.method != method::RECURSIVE_UPPER)
        .collect();
    out.extend(anticode_product_upper(n, d).ok());
    out
}

fn min_upper(recs: impl IntoIterator<Item = BoundRecord>) -> BoundRecord {
    recs.into_iter().min_by(|a, b| a.value.cmp(&b.value)).expect("factorial upper bound always present")
}

/// Every formula bound on `P(n, d)`, lower bounds first, each group in a
/// fixed order.
pub fn all_bounds(n: usize, d: usize, pp_budget: u64) -> Result<Vec<BoundRecord>> {
    crate::bounds::check_nd(n, d, 2)?;
    let opts = TableOptions { pp_budget, ..TableOptions::default() };
    let mut out = formula_lowers(n, d, &opts);
    for q in [n, n + 1] {
        if prime_power(q as u64).is_some() {
            out.extend(reduced_group_values(q).into_iter().flatten().filter(|r| (r.n, r.d) == (n, d)));
        }
    }
    out.extend(elementary(n, d)?.into_iter().filter(|r| r.sense == Sense::Upper));
    out.extend(anticode_product_upper(n, d).ok());
    Ok(out)
}

/// Witness-backed records from the opt-in sources.
fn witness_seeds(n_max: usize, opts: &TableOptions) -> Result<Vec<BoundRecord>> {
    let mut out = Vec::new();
    if opts.mathieu && n_max >= 11 {
        let m11 = Arc::new(mathieu_pa(11)?);
        out.push(witness_lower(&m11));
        if n_max >= 12 {
            let m12 = mathieu_pa(12)?;
            let a = Arc::new(reduce_d3(&m12, &opts.verify)?);
            let b = Arc::new(reduce_d2(&m12, &opts.verify)?);
            out.push(witness_lower(&Arc::new(m12)));
            out.push(witness_lower(&a));
            out.push(witness_lower(&b));
        }
    }
    let anchor_n = opts.anchor_max_n.min(n_max).min(crate::bounds::ANCHOR_MAX_N);
    let pairs: Vec<(usize, usize)> = (2..=anchor_n).flat_map(|n| (2..=n).map(move |d| (n, d))).collect();
    let anchored: Vec<Vec<BoundRecord>> = pairs
        .par_iter()
        .map(|&(n, d)| -> Result<Vec<BoundRecord>> {
            let w = Arc::new(greedy_gv(n, d, GreedyOrder::Lex, &opts.verify)?);
            let mut v = vec![witness_lower(&w)];
            if w.verification().is_exhaustive() {
                v.push(anchor_pa_lower(&w)?);
            }
            Ok(v)
        })
        .collect::<Result<_>>()?;
    out.extend(anchored.into_iter().flatten());
    if let Some(cs) = opts.clique {
        let max_n = cs.max_n.min(n_max).min(crate::constructions::MAX_CLIQUE_N);
        let pairs: Vec<(usize, usize)> = (4..=max_n).flat_map(|n| (4..n).map(move |d| (n, d))).collect();
        let found: Vec<BoundRecord> = pairs
            .par_iter()
            .map(|&(n, d)| Ok(witness_lower(&Arc::new(clique_lower(n, d, cs.budget)?))))
            .collect::<Result<_>>()?;
        out.extend(found);
    }
    Ok(out)
}

/// Seeds every cell `(n, d)`, `2 <= d <= n <= n_max`, from all applicable
/// sources, then propagates to a fixed point.
pub fn build_table(n_max: usize, opts: &TableOptions) -> Result<BoundTable> {
    if n_max < 4 || n_max > opts.cap {
        return Err(Error::capacity(format!("table up to n = {n_max} (minimum 4)"), opts.cap as u64));
    }
    let keys: Vec<(usize, usize)> = (2..=n_max).flat_map(|n| (2..=n).map(move |d| (n, d))).collect();
    let mut seeds: Vec<Vec<BoundRecord>> = keys.par_iter().map(|&(n, d)| formula_lowers(n, d, opts)).collect();
    let index: BTreeMap<(usize, usize), usize> = keys.iter().enumerate().map(|(i, &k)| (k, i)).collect();
    let mut extra: Vec<BoundRecord> = Vec::new();
    for q in 2..=n_max {
        if prime_power(q as u64).is_some() {
            extra.extend(reduced_group_values(q).into_iter().flatten());
        }
    }
    extra.extend(witness_seeds(n_max, opts)?);
    for r in extra {
        if let Some(&i) = index.get(&(r.n, r.d)) {
            seeds[i].push(r);
        }
    }
    let mut cells = BTreeMap::new();
    for (&(n, d), recs) in keys.iter().zip(seeds) {
        let lower = best_of(recs).expect("GV always applies");
        let mut ups = upper_candidates(n, d);
        if d < n {
            let prev: &Cell = cells.get(&(n - 1, d)).expect("shorter length seeded first");
            let mut r = BoundRecord::upper(n, d, &prev.upper.value * n, method::RECURSIVE_UPPER);
            r.inputs = vec![prev.upper.clone()];
            ups.push(r);
        }
        cells.insert((n, d), Cell { lower: Arc::new(lower), upper: Arc::new(min_upper(ups)) });
    }
    let mut table = BoundTable { n_max, cells, sweeps: 0 };
    loop {
        table.sweeps += 1;
        if !table.propagate_once() {
            break;
        }
    }
    table.check_consistent()?;
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::replay;
    use crate::combinatorics::factorial;

    #[test]
    fn small_table() {
        let t = build_table(8, &TableOptions::default()).unwrap();
        for n in 2..=8 {
            assert_eq!(t.lower(n, 2).unwrap(), &factorial(n as u64));
            assert!(t.lower(n, n).unwrap() >= &Count::from(n));
        }
        let mut again = t.clone();
        assert!(!again.propagate_once());
        for ((n, d), c) in &t.cells {
            assert!(c.lower.value >= gv_lower(*n, *d).unwrap().value);
            assert_eq!(replay(&c.lower).unwrap(), c.lower.value, "({n},{d}) {}", c.lower.to_line());
            assert_eq!(replay(&c.upper).unwrap(), c.upper.value, "({n},{d}) {}", c.upper.to_line());
        }
        assert!(build_table(3, &TableOptions::default()).is_err());
        assert!(build_table(41, &TableOptions::default()).is_err());
    }

    #[test]
    fn propagation_reaches_reduced_lengths() {
        let t = build_table(12, &TableOptions::default()).unwrap();
        assert_eq!(t.lower(12, 8).unwrap(), &Count::from(95040u32));
        assert_eq!(t.lower(11, 5).unwrap(), &Count::from(95040u32));
        assert!(t.lower(11, 6).unwrap() >= &Count::from(15840u32));
    }
}
