//! Classes of normalized permutation polynomials of degree at most 5, with
//! their restriction on `q` and the number of permutation polynomials each
//! class produces.

use std::collections::BTreeMap;

use num_integer::Integer;
use num_traits::Zero;

use crate::combinatorics::{prime_power, Count};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Restriction {
    Any,
    Congruent(u64, u64),
    NotCongruent(u64, u64),
    Equals(u64),
    PlusMinusTwoMod5,
}

impl Restriction {
    fn holds(self, q: u64) -> bool {
        match self {
            Restriction::Any => true,
            Restriction::Congruent(r, m) => q % m == r,
            Restriction::NotCongruent(r, m) => q % m != r,
            Restriction::Equals(v) => q == v,
            Restriction::PlusMinusTwoMod5 => matches!(q % 5, 2 | 3),
        }
    }

    fn label(self) -> String {
        match self {
            Restriction::Any => "any q".into(),
            Restriction::Congruent(r, m) => format!("q = {r} mod {m}"),
            Restriction::NotCongruent(r, m) => format!("q != {r} mod {m}"),
            Restriction::Equals(v) => format!("q = {v}"),
            Restriction::PlusMinusTwoMod5 => "q = +-2 mod 5".into(),
        }
    }
}

#[derive(Clone, Copy, Debug)]
enum Formula {
    /// `q(q-1)`
    Affine,
    /// `q^2(q-1)` or `q(q-1)`
    Ambiguous,
    /// `num * q^a (q-1)^b (q^2+2)^c / den`
    Product { num: u64, den: u64, q_pow: u32, qm1_pow: u32, q2p2: bool },
}

struct ClassRow {
    label: &'static str,
    degree: usize,
    restriction: Restriction,
    formula: Formula,
}

const fn prod(num: u64, den: u64, q_pow: u32, qm1_pow: u32) -> Formula {
    Formula::Product { num, den, q_pow, qm1_pow, q2p2: false }
}

const ROWS: &[ClassRow] = &[
    ClassRow { label: "x", degree: 1, restriction: Restriction::Any, formula: Formula::Affine },
    ClassRow { label: "x^2", degree: 2, restriction: Restriction::Congruent(0, 2), formula: Formula::Affine },
    ClassRow { label: "x^3", degree: 3, restriction: Restriction::NotCongruent(1, 3), formula: Formula::Ambiguous },
    ClassRow {
        label: "x^3 - ax (a not a square)",
        degree: 3,
        restriction: Restriction::Congruent(0, 3),
        formula: prod(1, 2, 1, 2),
    },
    ClassRow { label: "x^4 +- 3x", degree: 4, restriction: Restriction::Equals(7), formula: prod(2, 1, 2, 1) },
    ClassRow {
        label: "x^4 + a1 x^2 + a2 x (only root 0)",
        degree: 4,
        restriction: Restriction::Congruent(0, 2),
        formula: Formula::Product { num: 1, den: 3, q_pow: 1, qm1_pow: 1, q2p2: true },
    },
    ClassRow { label: "x^5", degree: 5, restriction: Restriction::NotCongruent(1, 5), formula: Formula::Ambiguous },
    ClassRow {
        label: "x^5 - ax (a not a fourth power)",
        degree: 5,
        restriction: Restriction::Congruent(0, 5),
        formula: prod(3, 4, 1, 2),
    },
    ClassRow { label: "x^5 + ax (a^2 = 2)", degree: 5, restriction: Restriction::Equals(9), formula: prod(2, 1, 2, 1) },
    ClassRow { label: "x^5 +- 2x^2", degree: 5, restriction: Restriction::Equals(7), formula: prod(2, 1, 2, 1) },
    ClassRow {
        label: "x^5 + ax^3 +- x^2 + 3a^2 x (a not a square)",
        degree: 5,
        restriction: Restriction::Equals(7),
        formula: prod(1, 1, 2, 2),
    },
    ClassRow {
        label: "x^5 + ax^3 + 5^-1 a^2 x (a arbitrary)",
        degree: 5,
        restriction: Restriction::PlusMinusTwoMod5,
        formula: prod(1, 1, 3, 1),
    },
    ClassRow {
        label: "x^5 + ax^3 + 3a^2 x (a not a square)",
        degree: 5,
        restriction: Restriction::Equals(13),
        formula: prod(1, 2, 2, 2),
    },
    ClassRow {
        label: "x^5 - 2ax^3 + a^2 x (a not a square)",
        degree: 5,
        restriction: Restriction::Congruent(0, 5),
        formula: prod(1, 2, 2, 2),
    },
];

/// Total attributed to a class row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClassTotal {
    Exact(Count),
    /// `q^2(q-1)` or `q(q-1)`; which one applies is not stated.
    Ambiguous {
        high: Count,
        low: Count,
    },
}

impl ClassTotal {
    /// The smaller admissible value.
    pub fn conservative(&self) -> &Count {
        match self {
            ClassTotal::Exact(v) => v,
            ClassTotal::Ambiguous { low, .. } => low,
        }
    }

    pub fn admits(&self, v: &Count) -> bool {
        match self {
            ClassTotal::Exact(x) => x == v,
            ClassTotal::Ambiguous { high, low } => high == v || low == v,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PpClassRow {
    pub label: &'static str,
    pub degree: usize,
    pub restriction: String,
    pub applicable: bool,
    /// Applicable, but every polynomial it counts is already counted by
    /// another applicable row.
    pub subsumed: bool,
    /// Present only for applicable rows.
    pub total: Option<ClassTotal>,
}

/// Evaluates every class row of degree at most `max_deg` at `q`.
pub fn pp_class_totals(q: u64, max_deg: usize) -> Result<Vec<PpClassRow>> {
    if prime_power(q).is_none() {
        return Err(Error::domain(format!("{q} is not a prime power")));
    }
    let qc = Count::from(q);
    let qm1 = Count::from(q - 1);
    ROWS.iter()
        .filter(|r| r.degree <= max_deg)
        .map(|r| {
            let applicable = r.restriction.holds(q);
            // x^5 is the a = 0 member of the a-arbitrary family
            let subsumed = applicable && r.label == "x^5" && Restriction::PlusMinusTwoMod5.holds(q);
            let total = if applicable {
                Some(match r.formula {
                    Formula::Affine => ClassTotal::Exact(&qc * &qm1),
                    Formula::Ambiguous => ClassTotal::Ambiguous { high: &qc * &qc * &qm1, low: &qc * &qm1 },
                    Formula::Product { num, den, q_pow, qm1_pow, q2p2 } => {
                        let mut v = Count::from(num) * qc.pow(q_pow) * qm1.pow(qm1_pow);
                        if q2p2 {
                            v *= &qc * &qc + 2u32;
                        }
                        let (quot, rem) = v.div_rem(&Count::from(den));
                        if !rem.is_zero() {
                            return Err(Error::Validation(format!("row {} total not integral at q = {q}", r.label)));
                        }
                        ClassTotal::Exact(quot)
                    }
                })
            } else {
                None
            };
            Ok(PpClassRow {
                label: r.label,
                degree: r.degree,
                restriction: r.restriction.label(),
                applicable,
                subsumed,
                total,
            })
        })
        .collect()
}

/// Per-degree totals of applicable rows, skipping subsumed ones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeTotal {
    /// Sum over applicable rows with an unambiguous total.
    pub exact_part: Count,
    /// Ambiguous rows, each contributing one of two values.
    pub ambiguous: Vec<(Count, Count)>,
}

impl DegreeTotal {
    pub fn conservative(&self) -> Count {
        &self.exact_part + self.ambiguous.iter().map(|(_, low)| low).sum::<Count>()
    }

    /// Whether `v` is one of the admissible sums.
    pub fn admits(&self, v: &Count) -> bool {
        let mut sums = vec![self.exact_part.clone()];
        for (high, low) in &self.ambiguous {
            sums = sums.iter().flat_map(|s| [s + high, s + low]).collect();
        }
        sums.contains(v)
    }

    pub fn is_ambiguous(&self) -> bool {
        !self.ambiguous.is_empty()
    }
}

pub fn totals_by_degree(rows: &[PpClassRow]) -> BTreeMap<usize, DegreeTotal> {
    let mut out: BTreeMap<usize, DegreeTotal> = BTreeMap::new();
    for r in rows {
        let entry =
            out.entry(r.degree).or_insert_with(|| DegreeTotal { exact_part: Count::zero(), ambiguous: Vec::new() });
        if r.subsumed {
            continue;
        }
        match &r.total {
            Some(ClassTotal::Exact(v)) => entry.exact_part += v,
            Some(ClassTotal::Ambiguous { high, low }) => entry.ambiguous.push((high.clone(), low.clone())),
            None => {}
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row<'a>(rows: &'a [PpClassRow], label: &str) -> &'a PpClassRow {
        rows.iter().find(|r| r.label == label).unwrap()
    }

    #[test]
    fn q7_rows() {
        let rows = pp_class_totals(7, 5).unwrap();
        assert_eq!(rows.len(), 14);
        let r = row(&rows, "x^4 +- 3x");
        assert!(r.applicable);
        assert_eq!(r.total, Some(ClassTotal::Exact(Count::from(588u32))));
        assert!(!row(&rows, "x^2").applicable);
        assert_eq!(row(&rows, "x^2").total, None);
    }

    #[test]
    fn q8_cubic_is_ambiguous() {
        let rows = pp_class_totals(8, 3).unwrap();
        assert_eq!(rows.len(), 4);
        assert_eq!(
            row(&rows, "x^3").total,
            Some(ClassTotal::Ambiguous { high: Count::from(448u32), low: Count::from(56u32) })
        );
    }

    #[test]
    fn quintic_overlap() {
        let rows = pp_class_totals(7, 5).unwrap();
        assert!(row(&rows, "x^5").subsumed);
        let d5 = &totals_by_degree(&rows)[&5];
        assert!(!d5.is_ambiguous());
        assert_eq!(d5.exact_part, Count::from(4410u32));
        assert!(!row(&pp_class_totals(19, 5).unwrap(), "x^5").subsumed);
    }

    #[test]
    fn degree_totals() {
        let rows = pp_class_totals(9, 3).unwrap();
        let by_deg = totals_by_degree(&rows);
        // x^3 (ambiguous) plus x^3 - ax with total 9*64/2
        let d3 = &by_deg[&3];
        assert_eq!(d3.exact_part, Count::from(288u32));
        assert!(d3.admits(&Count::from(288u32 + 72)));
        assert!(d3.admits(&Count::from(288u32 + 648)));
        assert!(!d3.admits(&Count::from(288u32)));
        assert_eq!(d3.conservative(), Count::from(360u32));
        assert!(pp_class_totals(12, 3).is_err());
    }
}
