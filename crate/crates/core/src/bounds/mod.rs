//! Bound formulas as functions producing auditable [`BoundRecord`]s.

mod formulas;
mod pp;
mod relations;
mod replay;
mod sphere;

use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::combinatorics::{CombTable, Count};
use crate::constructions::Witness;
use crate::error::{Error, Result};

pub use formulas::{
    anchor_pa_lower, anticode_product_upper, ball_intersect_lower, e_quantity, elementary, elementary_upper,
    graph_lower, gv_lower, l_ij, pband_lower, pband_upper, theta_lower, ANCHOR_MAX_N,
};
pub use pp::{cubic_pp_lower, pp_monic_lower, pp_sum_lower};
pub use relations::{
    affine_lower, reduced_group_values, relation_d2, relation_d3, relation_div, sharply_transitive_lower, witness_lower,
};
pub use replay::replay;
pub use sphere::{binary_sphere_graph_stats, sphere_graph_stats, SphereStats, MAX_BINARY_SPHERE_N, MAX_SPHERE_N};

/// Largest length accepted by the bound formulas.
pub const MAX_BOUND_N: usize = 64;

pub mod method {
    pub const EXACT_D1: &str = "exact-d1";
    pub const EXACT_D2: &str = "exact-d2";
    pub const EXACT_D3: &str = "exact-d3";
    pub const EXACT_DN: &str = "exact-dn";
    pub const FACTORIAL_UPPER: &str = "factorial-upper";
    pub const RECURSIVE_UPPER: &str = "recursive-upper";
    pub const AFFINE: &str = "affine";
    pub const SHARPLY_TRANSITIVE: &str = "sharply-transitive";
    pub const GV: &str = "gv";
    pub const GRAPH: &str = "graph";
    pub const GV_FALLBACK: &str = "gv-fallback";
    pub const BALL_INTERSECT: &str = "ball-intersect";
    pub const ANCHOR: &str = "anchor";
    pub const ANTICODE_PRODUCT: &str = "anticode-product";
    pub const THETA: &str = "theta";
    pub const PP_SUM: &str = "pp-sum";
    pub const PP_MONIC: &str = "pp-monic";
    pub const PP_CUBIC: &str = "pp-cubic";
    pub const ANTICODE_LOWER: &str = "anticode-lower";
    pub const ANTICODE_UPPER: &str = "anticode-upper";
    pub const REDUCE_D3: &str = "reduce-d3";
    pub const REDUCE_D2: &str = "reduce-d2";
    pub const DIV_N: &str = "div-n";
    pub const MONO_N: &str = "mono-n";
    pub const MONO_D: &str = "mono-d";
    pub const WITNESS: &str = "witness";
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sense {
    Lower,
    Upper,
}

impl fmt::Display for Sense {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sense::Lower => "lower",
            Sense::Upper => "upper",
        })
    }
}

/// What a record bounds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Quantity {
    /// `P(n, d)`.
    Code,
    /// `P[n, d-1]`.
    Anticode,
}

/// How a lower bound is backed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Backing {
    Formula,
    /// A witness checked on sampled pairs only; its distance rests on the
    /// construction argument.
    SampledWitness,
    /// A witness checked exhaustively or as a group.
    Constructive,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundRecord {
    pub n: usize,
    pub d: usize,
    pub quantity: Quantity,
    pub sense: Sense,
    pub value: Count,
    pub method: String,
    pub inputs: Vec<Arc<BoundRecord>>,
    pub witness: Option<Arc<Witness>>,
    pub note: Option<String>,
}

impl BoundRecord {
    pub(crate) fn new(n: usize, d: usize, sense: Sense, value: Count, method: &str) -> Self {
        Self {
            n,
            d,
            quantity: Quantity::Code,
            sense,
            value,
            method: method.into(),
            inputs: Vec::new(),
            witness: None,
            note: None,
        }
    }

    pub(crate) fn lower(n: usize, d: usize, value: Count, method: &str) -> Self {
        Self::new(n, d, Sense::Lower, value, method)
    }

    pub(crate) fn upper(n: usize, d: usize, value: Count, method: &str) -> Self {
        Self::new(n, d, Sense::Upper, value, method)
    }

    pub(crate) fn with_inputs(mut self, inputs: Vec<Arc<BoundRecord>>) -> Self {
        self.inputs = inputs;
        self
    }

    pub(crate) fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub(crate) fn anticode(mut self) -> Self {
        self.quantity = Quantity::Anticode;
        self
    }

    pub fn backing(&self) -> Backing {
        if let Some(w) = &self.witness {
            return if w.verification().is_exhaustive() { Backing::Constructive } else { Backing::SampledWitness };
        }
        self.inputs.iter().map(|r| r.backing()).max().unwrap_or(Backing::Formula)
    }

    /// Number of records in the derivation chain, this one included.
    pub fn chain_len(&self) -> usize {
        1 + self.inputs.iter().map(|r| r.chain_len()).sum::<usize>()
    }

    /// `n,d,sense,value,method,parents` with parent methods joined by `;`.
    pub fn to_line(&self) -> String {
        let parents = if self.inputs.is_empty() {
            "-".to_string()
        } else {
            self.inputs.iter().map(|r| r.method.as_str()).collect::<Vec<_>>().join(";")
        };
        format!("{},{},{},{},{},{}", self.n, self.d, self.sense, self.value, self.method, parents)
    }
}

pub(crate) struct Calc {
    pub comb: CombTable,
    /// `f[k][m][u] = sum_{l<=u} C(k,l) (l+m)!` for `k + m <= MAX_BOUND_N`.
    pub f: Vec<Vec<Vec<Count>>>,
}

pub(crate) fn calc() -> &'static Calc {
    static CALC: OnceLock<Calc> = OnceLock::new();
    CALC.get_or_init(|| {
        let comb = CombTable::new(MAX_BOUND_N);
        let f = (0..=MAX_BOUND_N)
            .map(|k| {
                (0..=MAX_BOUND_N - k)
                    .map(|m| {
                        let mut acc = Count::default();
                        (0..=k)
                            .map(|l| {
                                acc += comb.binomial(k, l as i64) * comb.factorial(l + m);
                                acc.clone()
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        Calc { comb, f }
    })
}

/// Checks `lo <= d <= n <= MAX_BOUND_N`.
pub(crate) fn check_nd(n: usize, d: usize, lo: usize) -> Result<()> {
    if n > MAX_BOUND_N {
        return Err(Error::capacity(format!("bounds for n = {n}"), MAX_BOUND_N as u64));
    }
    if d < lo || d > n {
        return Err(Error::domain(format!("need {lo} <= d <= n, got n = {n}, d = {d}")));
    }
    Ok(())
}
