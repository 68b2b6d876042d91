use num_traits::Zero;

use super::{method, BoundRecord};
use crate::combinatorics::Count;
use crate::error::{Error, Result};
use crate::gfq::{count_pps_by_degree, make_field, pp_class_totals, totals_by_degree, MAX_PP_DEGREE};

fn source_note(enumerated: bool) -> &'static str {
    if enumerated {
        "source=enumeration"
    } else {
        "source=table"
    }
}

/// Counts of permutation polynomials of degree `1..=max_deg` (all or
/// monic), by enumeration within `budget`, otherwise from the class table
/// taking the smaller value of each ambiguous row.
fn pp_counts(q: u64, max_deg: usize, monic: bool, budget: u64) -> Result<(Vec<Count>, bool)> {
    let f = make_field(q)?;
    if max_deg > MAX_PP_DEGREE || max_deg as u64 >= q {
        return Err(Error::domain(format!("degree {max_deg} needs to be below both 6 and q = {q}")));
    }
    match count_pps_by_degree(&f, max_deg, monic, budget) {
        Ok(m) => Ok(((1..=max_deg).map(|k| m[&k].clone()).collect(), true)),
        Err(Error::Capacity { .. }) => {
            let by_deg = totals_by_degree(&pp_class_totals(q, max_deg)?);
            let counts = (1..=max_deg)
                .map(|k| {
                    let total = by_deg.get(&k).map(|t| t.conservative()).unwrap_or_default();
                    if monic {
                        total / (q - 1)
                    } else {
                        total
                    }
                })
                .collect();
            Ok((counts, false))
        }
        Err(e) => Err(e),
    }
}

/// `P(q, q-e) >= N_1(q) + ... + N_e(q)`.
pub fn pp_sum_lower(q: u64, e: usize, budget: u64) -> Result<BoundRecord> {
    if e == 0 {
        return Err(Error::domain("need e >= 1"));
    }
    let (counts, enumerated) = pp_counts(q, e, false, budget)?;
    let value: Count = counts.iter().sum();
    Ok(BoundRecord::lower(q as usize, q as usize - e, value, method::PP_SUM).with_note(source_note(enumerated)))
}

/// `P(q, q-e) >=` the number of monic permutation polynomials of degree
/// exactly `e + 1` (any two differ by a polynomial of degree at most `e`).
pub fn pp_monic_lower(q: u64, e: usize, budget: u64) -> Result<BoundRecord> {
    if e == 0 {
        return Err(Error::domain("need e >= 1"));
    }
    let (counts, enumerated) = pp_counts(q, e + 1, true, budget)?;
    let value = counts[e].clone();
    if value.is_zero() {
        return Err(Error::domain(format!("no monic permutation polynomial of degree {} over GF({q})", e + 1)));
    }
    Ok(BoundRecord::lower(q as usize, q as usize - e, value, method::PP_MONIC).with_note(source_note(enumerated)))
}

/// `P(q, q-2) >= q^2` for `q` not congruent to 1 mod 3; the `q^2` monic
/// cubics `(x+b)^3 + c` exist only outside characteristic 3.
pub fn cubic_pp_lower(q: u64) -> Result<BoundRecord> {
    let f = make_field(q)?;
    if q % 3 == 1 {
        return Err(Error::domain(format!("q = {q} is 1 mod 3")));
    }
    if f.characteristic() == 3 {
        return Err(Error::domain(format!("q = {q} has characteristic 3")));
    }
    if q < 4 {
        return Err(Error::domain(format!("q = {q} gives distance below 2")));
    }
    Ok(BoundRecord::lower(q as usize, q as usize - 2, Count::from(q * q), method::PP_CUBIC))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gfq::DEFAULT_PP_BUDGET;

    #[test]
    fn pp_sum_examples() {
        let r = pp_sum_lower(7, 3, DEFAULT_PP_BUDGET).unwrap();
        let n3 = count_pps_by_degree(&make_field(7).unwrap(), 3, false, DEFAULT_PP_BUDGET).unwrap()[&3].clone();
        assert_eq!(r.value, Count::from(42u32) + n3);
        assert_eq!((r.n, r.d), (7, 4));
        let table = pp_sum_lower(7, 4, 0).unwrap();
        assert_eq!(table.note.as_deref(), Some("source=table"));
        assert_eq!(table.value, pp_sum_lower(7, 4, DEFAULT_PP_BUDGET).unwrap().value);
    }

    #[test]
    fn pp_monic_and_cubic() {
        let r = pp_monic_lower(8, 2, DEFAULT_PP_BUDGET).unwrap();
        assert_eq!((r.n, r.d, r.value.clone()), (8, 6, Count::from(64u32)));
        assert_eq!(cubic_pp_lower(8).unwrap().value, Count::from(64u32));
        assert!(cubic_pp_lower(7).is_err());
        assert!(cubic_pp_lower(9).is_err());
        assert_eq!(pp_monic_lower(9, 2, DEFAULT_PP_BUDGET).unwrap().value, Count::from(45u32));
        assert!(pp_monic_lower(7, 1, DEFAULT_PP_BUDGET).is_err());
    }
}
