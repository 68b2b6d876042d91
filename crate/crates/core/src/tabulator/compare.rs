//! The two comparison tables for `P(q, q-3)`, `P(q, q-4)` and `P(q-1, q-4)`,
//! instantiated at given prime powers.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::combinatorics::{prime_power, theta};
use crate::error::{Error, Result};

#[derive(Clone, Copy)]
enum Expr {
    /// `sum c_i q^i` with `c_i = num/den`, lowest power first.
    Poly(&'static str, &'static [(i64, i64)]),
    /// `(q-1)(theta(q-1)-1)`
    Theta,
}

impl Expr {
    fn text(self) -> &'static str {
        match self {
            Expr::Poly(t, _) => t,
            Expr::Theta => "(q-1)(theta(q-1)-1)",
        }
    }

    fn eval(self, q: u64) -> Result<BigRational> {
        Ok(match self {
            Expr::Poly(_, coeffs) => {
                let qr = BigRational::from_integer(BigInt::from(q));
                let mut acc = BigRational::zero();
                let mut pw = BigRational::one();
                for &(num, den) in coeffs {
                    acc += &pw * BigRational::new(num.into(), den.into());
                    pw *= &qr;
                }
                acc
            }
            Expr::Theta => BigRational::from_integer(BigInt::from((q - 1) * (theta(q - 1)? - 1))),
        })
    }
}

struct Row {
    condition: &'static str,
    applies: fn(u64) -> bool,
    /// `d = q - d_offset`.
    d_offset: u64,
    cells: &'static [Expr],
}

const Q: Expr = Expr::Poly("q", &[(0, 1), (1, 1)]);
const QQ1: Expr = Expr::Poly("q(q-1)", &[(0, 1), (-1, 1), (1, 1)]);

const FIRST: &[Row] = &[
    Row {
        condition: "q = 1 mod 6, q != 7",
        applies: |q| q % 6 == 1 && q != 7,
        d_offset: 3,
        cells: &[Expr::Poly("2q(q-1)", &[(0, 1), (-2, 1), (2, 1)]), QQ1, Q],
    },
    Row {
        condition: "q = 1 mod 6, q = 0 mod 5",
        applies: |q| q % 6 == 1 && q % 5 == 0,
        d_offset: 4,
        cells: &[
            Expr::Poly("(q+1)q(q-1)", &[(0, 1), (-1, 1), (0, 1), (1, 1)]),
            QQ1,
            Expr::Poly("q^3/2 + q^2/4 + 5q/4", &[(0, 1), (5, 4), (1, 4), (1, 2)]),
        ],
    },
    Row {
        condition: "q = 1 mod 6, q = 1 mod 5",
        applies: |q| q % 6 == 1 && q % 5 == 1,
        d_offset: 4,
        cells: &[Expr::Poly("(q+1)q(q-1)", &[(0, 1), (-1, 1), (0, 1), (1, 1)]), QQ1, Q],
    },
    Row {
        condition: "q = 1 mod 6, q = -1 mod 5",
        applies: |q| q % 6 == 1 && q % 5 == 4,
        d_offset: 4,
        cells: &[
            Expr::Poly("(q+1)q(q-1)", &[(0, 1), (-1, 1), (0, 1), (1, 1)]),
            QQ1,
            Expr::Poly("q^2+q", &[(0, 1), (1, 1), (1, 1)]),
        ],
    },
];

const Q2M1: Expr = Expr::Poly("(q+1)(q-1)", &[(-1, 1), (0, 1), (1, 1)]);
const QM1: Expr = Expr::Poly("q-1", &[(-1, 1), (1, 1)]);

const SECOND: &[Row] = &[
    Row {
        condition: "q = 1 mod 6, q = 0 mod 5",
        applies: |q| q % 6 == 1 && q % 5 == 0,
        d_offset: 4,
        cells: &[Q2M1, QM1, Expr::Poly("q^2/2 + q/4 + 5/4", &[(5, 4), (1, 4), (1, 2)]), Expr::Theta],
    },
    Row {
        condition: "q = 1 mod 6, q = 1 mod 5",
        applies: |q| q % 6 == 1 && q % 5 == 1,
        d_offset: 4,
        cells: &[Q2M1, QM1, Expr::Poly("1", &[(1, 1)]), Expr::Theta],
    },
    Row {
        condition: "q = 1 mod 6, q = -1 mod 5",
        applies: |q| q % 6 == 1 && q % 5 == 4,
        d_offset: 4,
        cells: &[Q2M1, QM1, Expr::Poly("q+1", &[(1, 1), (1, 1)]), Expr::Theta],
    },
];

fn cell(e: Expr, q: u64) -> Result<String> {
    let v = e.eval(q)?;
    Ok(if v.is_integer() {
        format!("{} = {}", e.text(), v.to_integer())
    } else {
        format!("{} = {v} (non-integral, floor {})", e.text(), v.floor().to_integer())
    })
}

fn render(out: &mut String, title: &str, columns: &[&str], rows: &[Row], qs: &[u64], with_d: bool) -> Result<()> {
    let mut head = vec!["q", "conditions"];
    if with_d {
        head.push("d");
    }
    head.extend_from_slice(columns);
    let _ = writeln!(out, "### {title}\n");
    let _ = writeln!(out, "| {} |", head.join(" | "));
    let _ = writeln!(out, "|{}", "---|".repeat(head.len()));
    for &q in qs {
        let mut any = false;
        for row in rows.iter().filter(|r| (r.applies)(q)) {
            any = true;
            let mut fields = vec![q.to_string(), row.condition.to_string()];
            if with_d {
                fields.push((q - row.d_offset).to_string());
            }
            for &e in row.cells {
                fields.push(cell(e, q)?);
            }
            let _ = writeln!(out, "| {} |", fields.join(" | "));
        }
        if !any {
            let mut fields = vec![q.to_string(), "no row applies".to_string()];
            fields.resize(head.len(), "-".into());
            let _ = writeln!(out, "| {} |", fields.join(" | "));
        }
    }
    Ok(())
}

/// Markdown for both comparison tables with one row per applicable
/// congruence class of each `q`.
pub fn render_comparison(qs: &[u64]) -> Result<String> {
    for &q in qs {
        if prime_power(q).is_none() {
            return Err(Error::domain(format!("{q} is not a prime power")));
        }
    }
    let mut out = String::new();
    render(
        &mut out,
        "Lower bounds on P(q, d) for d = q-3 and d = q-4",
        &[
            "reduced sharply 3-transitive group",
            "permutation polynomials of degree <= q-d",
            "monic permutation polynomials of degree q-d+1",
        ],
        FIRST,
        qs,
        true,
    )?;
    out.push('\n');
    render(
        &mut out,
        "Lower bounds on P(q-1, q-4)",
        &[
            "reduced sharply 3-transitive group",
            "permutation polynomials, divided by q",
            "monic permutation polynomials, divided by q",
            "theta bound, monotone in d",
        ],
        SECOND,
        qs,
        false,
    )?;
    Ok(out)
}
