//! Explicit permutation arrays certifying lower bounds.

mod affine;
mod groups;
mod reduce;
mod search;

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::{hamming_capped, has_pair_closer_than, PermutationArray};

pub use affine::{affine_pa, pa_from_mols, standard_mols, MolsSet};
pub use groups::{mathieu_pa, mathieu_pa_with, pgl2_pa, MathieuConfig};
pub use reduce::{reduce_d2, reduce_d3};
pub use search::{clique_lower, greedy_gv, GreedyOrder, DEFAULT_CLIQUE_BUDGET, MAX_CLIQUE_N, MAX_GREEDY_N};

/// Pair-count ceiling for exhaustive verification.
pub const FULL_PAIR_LIMIT: u64 = 1_000_000_000;
/// Pairs drawn by sampled verification.
pub const SAMPLE_PAIRS: u64 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Claim {
    pub n: usize,
    pub m: usize,
    pub d: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "lowercase")]
pub enum Verification {
    /// Every pair checked.
    Full,
    /// Closed under composition, minimum nonidentity weight checked.
    Group,
    /// Uniformly random pairs checked, none violating.
    Sampled { pairs: u64, seed: u64 },
}

impl Verification {
    /// Whether the claimed distance is certified for every pair.
    pub fn is_exhaustive(&self) -> bool {
        !matches!(self, Verification::Sampled { .. })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyPolicy {
    pub full_pair_limit: u64,
    pub sample_pairs: u64,
    pub seed: u64,
}

impl Default for VerifyPolicy {
    fn default() -> Self {
        Self { full_pair_limit: FULL_PAIR_LIMIT, sample_pairs: SAMPLE_PAIRS, seed: 0 }
    }
}

impl VerifyPolicy {
    pub fn with_seed(seed: u64) -> Self {
        Self { seed, ..Self::default() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub tag: String,
    pub params: BTreeMap<String, String>,
    pub verification: Verification,
}

/// A constructed array together with the `(n, M, d)` it certifies.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pa: PermutationArray,
    claim: Claim,
    provenance: Provenance,
}

#[derive(Serialize)]
struct Sidecar<'a> {
    claim: &'a Claim,
    #[serde(flatten)]
    provenance: &'a Provenance,
}

impl Witness {
    /// Checks the distance under `policy` and records how.
    pub(crate) fn verified(
        pa: PermutationArray,
        d: usize,
        tag: &str,
        params: BTreeMap<String, String>,
        policy: &VerifyPolicy,
    ) -> Result<Self> {
        let verification = verify_distance(&pa, d, policy)?;
        Ok(Self::assemble(pa, d, tag, params, verification))
    }

    pub(crate) fn assemble(
        pa: PermutationArray,
        d: usize,
        tag: &str,
        params: BTreeMap<String, String>,
        verification: Verification,
    ) -> Self {
        let claim = Claim { n: pa.n(), m: pa.len(), d };
        let pa = pa.with_claimed_distance(d);
        Self { pa, claim, provenance: Provenance { tag: tag.into(), params, verification } }
    }

    /// Wraps an array whose distance has been checked by the caller.
    pub fn from_verified_parts(pa: PermutationArray, d: usize, provenance: Provenance) -> Result<Self> {
        if pa.is_empty() {
            return Err(Error::domain("witness needs at least one member"));
        }
        let claim = Claim { n: pa.n(), m: pa.len(), d };
        Ok(Self { pa: pa.with_claimed_distance(d), claim, provenance })
    }

    pub fn pa(&self) -> &PermutationArray {
        &self.pa
    }

    pub fn into_pa(self) -> PermutationArray {
        self.pa
    }

    pub fn claim(&self) -> Claim {
        self.claim
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn verification(&self) -> Verification {
        self.provenance.verification
    }

    /// JSON record of claim, tag, parameters and verification mode.
    pub fn sidecar_json(&self) -> String {
        serde_json::to_string_pretty(&Sidecar { claim: &self.claim, provenance: &self.provenance })
            .expect("serializable")
    }
}

pub(crate) fn params<const N: usize>(pairs: [(&str, String); N]) -> BTreeMap<String, String> {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

/// Checks that no two members are closer than `d`: exhaustively when the
/// pair count is within the policy limit, otherwise on sampled pairs.
pub fn verify_distance(pa: &PermutationArray, d: usize, policy: &VerifyPolicy) -> Result<Verification> {
    let m = pa.len() as u64;
    let pairs = m * m.saturating_sub(1) / 2;
    if pairs <= policy.full_pair_limit {
        if has_pair_closer_than(pa, d) {
            return Err(Error::Validation(format!("some pair is at distance below {d}")));
        }
        return Ok(Verification::Full);
    }
    let members = pa.members();
    let mut rng = ChaCha8Rng::seed_from_u64(policy.seed);
    let mut violations = 0u64;
    for _ in 0..policy.sample_pairs {
        let i = rng.gen_range(0..members.len());
        let mut j = rng.gen_range(0..members.len() - 1);
        if j >= i {
            j += 1;
        }
        if hamming_capped(members[i].images(), members[j].images(), d) < d {
            violations += 1;
        }
    }
    if violations > 0 {
        return Err(Error::Validation(format!("{violations} sampled pairs at distance below {d}")));
    }
    Ok(Verification::Sampled { pairs: policy.sample_pairs, seed: policy.seed })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Permutation;

    #[test]
    fn sampled_verification_is_seeded() {
        let members = (0..50u64).map(|r| Permutation::unrank_u64(6, r * 7).unwrap()).collect();
        let pa = PermutationArray::new(6, members).unwrap();
        let policy = VerifyPolicy { full_pair_limit: 10, sample_pairs: 500, seed: 3 };
        assert_eq!(verify_distance(&pa, 2, &policy).unwrap(), Verification::Sampled { pairs: 500, seed: 3 });
        assert!(verify_distance(&pa, 6, &policy).is_err());
        assert_eq!(verify_distance(&pa, 2, &VerifyPolicy::default()).unwrap(), Verification::Full);
    }

    #[test]
    fn sidecar_records_mode() {
        let pa = PermutationArray::new(3, vec![Permutation::identity(3)]).unwrap();
        let w = Witness::verified(pa, 3, "single", params([("n", "3".into())]), &VerifyPolicy::default()).unwrap();
        let json: serde_json::Value = serde_json::from_str(&w.sidecar_json()).unwrap();
        assert_eq!(json["tag"], "single");
        assert_eq!(json["verification"]["mode"], "full");
        assert_eq!(json["claim"]["m"], 1);
    }
}
