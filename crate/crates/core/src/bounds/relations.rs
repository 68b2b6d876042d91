use std::sync::Arc;

use super::{method, BoundRecord, Quantity, Sense};
use crate::combinatorics::{ceil_div, prime_power, Count};
use crate::constructions::Witness;
use crate::error::{Error, Result};

fn check_source(src: &BoundRecord) -> Result<()> {
    if src.sense != Sense::Lower || src.quantity != Quantity::Code {
        return Err(Error::domain(format!("source {} is not a lower bound on P(n,d)", src.method)));
    }
    Ok(())
}

/// `P(n-1, d-3) >= P(n, d)` for `n >= d > 3`.
pub fn relation_d3(src: &Arc<BoundRecord>) -> Result<BoundRecord> {
    check_source(src)?;
    if src.d <= 3 || src.n < src.d {
        return Err(Error::domain(format!("needs n >= d > 3, got n = {}, d = {}", src.n, src.d)));
    }
    Ok(BoundRecord::lower(src.n - 1, src.d - 3, src.value.clone(), method::REDUCE_D3).with_inputs(vec![src.clone()]))
}

/// `P(n-1, d-2) >= 2 P(n, d) / n` for `n >= d > 2`.
pub fn relation_d2(src: &Arc<BoundRecord>) -> Result<BoundRecord> {
    check_source(src)?;
    if src.d <= 2 || src.n < src.d {
        return Err(Error::domain(format!("needs n >= d > 2, got n = {}, d = {}", src.n, src.d)));
    }
    let value = ceil_div(&(&src.value * 2u32), &Count::from(src.n));
    Ok(BoundRecord::lower(src.n - 1, src.d - 2, value, method::REDUCE_D2).with_inputs(vec![src.clone()]))
}

/// `P(n-1, d) >= P(n, d) / n` for `d < n`.
pub fn relation_div(src: &Arc<BoundRecord>) -> Result<BoundRecord> {
    check_source(src)?;
    if src.d >= src.n {
        return Err(Error::domain(format!("needs d < n, got n = {}, d = {}", src.n, src.d)));
    }
    let value = ceil_div(&src.value, &Count::from(src.n));
    Ok(BoundRecord::lower(src.n - 1, src.d, value, method::DIV_N).with_inputs(vec![src.clone()]))
}

/// `P(q, q-1) = q(q-1)` for a prime power `q`.
pub fn affine_lower(q: usize) -> Result<BoundRecord> {
    if prime_power(q as u64).is_none() {
        return Err(Error::domain(format!("{q} is not a prime power")));
    }
    Ok(BoundRecord::lower(q, q - 1, Count::from(q * (q - 1)), method::AFFINE))
}

/// Sizes of the sharply transitive groups: `P(q+1, q-1)` for prime powers
/// `q`, `P(11, 8)` and `P(12, 8)`.
pub fn sharply_transitive_lower(n: usize, d: usize) -> Result<BoundRecord> {
    let value = match (n, d) {
        (11, 8) => 11 * 10 * 9 * 8,
        (12, 8) => 12 * 11 * 10 * 9 * 8,
        _ if n >= 3 && d + 2 == n && prime_power(n as u64 - 1).is_some() => n * (n - 1) * (n - 2),
        _ => return Err(Error::domain(format!("no sharply transitive group gives P({n},{d})"))),
    };
    Ok(BoundRecord::lower(n, d, Count::from(value), method::SHARPLY_TRANSITIVE))
}

/// `P(n, d) >= M` from a witness.
pub fn witness_lower(w: &Arc<Witness>) -> BoundRecord {
    let c = w.claim();
    let mut rec = BoundRecord::lower(c.n, c.d, Count::from(c.m), method::WITNESS).with_note(w.provenance().tag.clone());
    rec.witness = Some(w.clone());
    rec
}

/// `P(q,q-4) >= (q+1)q(q-1)`, `P(q,q-3) >= 2q(q-1)`, `P(q-1,q-4) >= (q+1)(q-1)`
/// and `P(q-1,q-6) >= 2(q+1)(q-1)`, each derived from `P(q+1, q-1)`;
/// lines with distance below 2 are left out.
pub fn reduced_group_values(q: usize) -> Result<Vec<BoundRecord>> {
    let base = Arc::new(sharply_transitive_lower(q + 1, q.saturating_sub(1))?);
    let first = relation_d3(&base).ok().map(Arc::new);
    let lines = [
        first.as_ref().map(|r| (**r).clone()),
        relation_d2(&base).ok(),
        first.as_ref().and_then(|r| relation_div(r).ok()),
        first.as_ref().and_then(|r| relation_d2(r).ok()),
    ];
    Ok(lines.into_iter().flatten().filter(|r| r.d >= 2).collect())
}
