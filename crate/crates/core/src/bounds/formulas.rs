use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::{calc, check_nd, method, BoundRecord, MAX_BOUND_N};
use crate::combinatorics::{ceil_div, log2_lower, log2_upper, theta, Count};
use crate::constructions::Witness;
use crate::error::{Error, Result};
use crate::perm::covered_union_size;

/// Largest length for which [`anchor_pa_lower`] computes a covered union.
pub const ANCHOR_MAX_N: usize = 10;

/// `ceil(n! / V(n, d-1))`.
pub fn gv_lower(n: usize, d: usize) -> Result<BoundRecord> {
    check_nd(n, d, 1)?;
    let c = calc();
    let v = c.comb.ball_volume(n, d - 1);
    Ok(BoundRecord::lower(n, d, ceil_div(c.comb.factorial(n), &v), method::GV))
}

/// Upper estimate of the number of weight-`j` permutations within distance
/// `d - 1` of a fixed weight-`i` permutation.
pub fn l_ij(n: usize, d: usize, i: usize, j: usize) -> Result<Count> {
    if n > MAX_BOUND_N {
        return Err(Error::capacity(format!("L_ij for n = {n}"), MAX_BOUND_N as u64));
    }
    if i > n || j > n || d > n {
        return Err(Error::domain(format!("need i, j, d <= n, got n = {n}, d = {d}, i = {i}, j = {j}")));
    }
    let c = calc();
    // smallest nonnegative k with 2k >= i + j - d + 1
    let k_lo = (i + j + 1).saturating_sub(d).div_ceil(2);
    let mut total = Count::zero();
    for k in k_lo..=i.min(j) {
        let outside = c.comb.binomial(n - i, (j - k) as i64);
        if outside.is_zero() {
            continue;
        }
        let u = (d + 2 * k - i - j - 1).min(k);
        total += c.comb.binomial(i, k as i64) * outside * &c.f[k][j - k][u];
    }
    Ok(total)
}

/// `(1/6) sum_{i,j=2}^{d-1} C(n,i) D_i L_ij`, exactly.
pub fn e_quantity(n: usize, d: usize) -> Result<BigRational> {
    check_nd(n, d, 1)?;
    let sum = e_numerator(n, d)?;
    Ok(BigRational::new(BigInt::from(sum), BigInt::from(6)))
}

fn e_numerator(n: usize, d: usize) -> Result<Count> {
    let c = calc();
    let mut sum = Count::zero();
    for i in 2..d {
        let weight_i = c.comb.binomial(n, i as i64) * c.comb.derangements(i);
        for j in 2..d {
            sum += &weight_i * l_ij(n, d, i, j)?;
        }
    }
    Ok(sum)
}

fn exact(x: f64) -> BigRational {
    BigRational::from_float(x).expect("finite logarithm")
}

/// `n! / (10 V) * (log2 V - log2(E) / 2)`, with `V = V(n, d-1)`, evaluated
/// from a lower estimate of `log2 V` and an upper estimate of `log2 E`;
/// falls back to the GV bound when `E = 0` or the bracket is not positive.
pub fn graph_lower(n: usize, d: usize) -> Result<BoundRecord> {
    check_nd(n, d, 1)?;
    let c = calc();
    let s = e_numerator(n, d)?;
    let fallback = |why: &str| -> Result<BoundRecord> {
        let gv = gv_lower(n, d)?;
        Ok(BoundRecord::lower(n, d, gv.value.clone(), method::GV_FALLBACK)
            .with_inputs(vec![Arc::new(gv)])
            .with_note(why))
    };
    if s.is_zero() {
        return fallback("E = 0");
    }
    let v = c.comb.ball_volume(n, d - 1);
    let log_e_upper = exact(log2_upper(&s)?) - exact(log2_lower(&Count::from(6u32))?);
    let bracket = exact(log2_lower(&v)?) - log_e_upper / BigRational::from_integer(BigInt::from(2));
    if !bracket.is_positive() {
        return fallback("log term not positive");
    }
    let x = BigRational::from_integer(BigInt::from(c.comb.factorial(n).clone())) * bracket
        / BigRational::from_integer(BigInt::from(v * 10u32));
    let value = x.ceil().to_integer().to_biguint().expect("positive");
    Ok(BoundRecord::lower(n, d, value, method::GRAPH))
}

/// `max{(d-1)!, V(n, floor((d-1)/2))}`, and for even `d` also
/// `V(n, d/2 - 1) + C(n-1, d/2 - 1) D_{d/2}`.
pub fn pband_lower(n: usize, d: usize) -> Result<BoundRecord> {
    check_nd(n, d, 2)?;
    let c = calc();
    let mut best = c.comb.factorial(d - 1).clone();
    best = best.max(c.comb.ball_volume(n, (d - 1) / 2));
    if d.is_multiple_of(2) {
        let h = d / 2;
        let v = c.comb.ball_volume(n, h - 1) + c.comb.binomial(n - 1, h as i64 - 1) * c.comb.derangements(h);
        best = best.max(v);
    }
    Ok(BoundRecord::lower(n, d, best, method::ANTICODE_LOWER).anticode())
}

/// `max_i (L_{i,0} + ... + L_{i,i})` over `i = floor((d-1)/2), ..., d-1`,
/// capped by `V(n, d-1)`.
pub fn pband_upper(n: usize, d: usize) -> Result<BoundRecord> {
    check_nd(n, d, 2)?;
    let mut best = Count::zero();
    for i in (d - 1) / 2..d {
        let mut s = Count::zero();
        for j in 0..=i {
            s += l_ij(n, d, i, j)?;
        }
        best = best.max(s);
    }
    let v = calc().comb.ball_volume(n, d - 1);
    let rec = if v < best {
        BoundRecord::upper(n, d, v, method::ANTICODE_UPPER).with_note("capped by V(n,d-1)")
    } else {
        BoundRecord::upper(n, d, best, method::ANTICODE_UPPER)
    };
    Ok(rec.anticode())
}

/// `ceil(2 n! / (V(n, d-1) + U))` with `U` the upper bound on `P[n, d-1]`.
pub fn ball_intersect_lower(n: usize, d: usize) -> Result<BoundRecord> {
    check_nd(n, d, 2)?;
    let c = calc();
    let band = pband_upper(n, d)?;
    let den = c.comb.ball_volume(n, d - 1) + &band.value;
    let value = ceil_div(&(c.comb.factorial(n) * 2u32), &den);
    Ok(BoundRecord::lower(n, d, value, method::BALL_INTERSECT)
        .with_inputs(vec![Arc::new(band)])
        .with_note("P[n,d-1] replaced by its upper bound"))
}

/// `ceil(n! M / |B(C')|)` for an exhaustively verified witness `C'`.
pub fn anchor_pa_lower(w: &Arc<Witness>) -> Result<BoundRecord> {
    let claim = w.claim();
    if !w.verification().is_exhaustive() {
        return Err(Error::Validation("witness distance not exhaustively verified".into()));
    }
    if claim.n > ANCHOR_MAX_N {
        return Err(Error::capacity(format!("covered union for n = {}", claim.n), ANCHOR_MAX_N as u64));
    }
    check_nd(claim.n, claim.d, 1)?;
    let covered = covered_union_size(w.pa(), claim.d, ANCHOR_MAX_N)?;
    let value = ceil_div(&(calc().comb.factorial(claim.n) * claim.m), &covered);
    let mut rec = BoundRecord::lower(claim.n, claim.d, value, method::ANCHOR).with_note(format!("|B(C')| = {covered}"));
    rec.witness = Some(w.clone());
    Ok(rec)
}

/// Exact values for `d` in `{1, 2, 3, n}` as lower/upper pairs, then the
/// upper bounds `n!/(d-1)!` and `n U(n-1, d)`.
pub fn elementary(n: usize, d: usize) -> Result<Vec<BoundRecord>> {
    check_nd(n, d, 1)?;
    let c = calc();
    let fact = c.comb.factorial(n);
    let mut out = Vec::new();
    let mut exact = |value: Count, tag: &str| {
        out.push(BoundRecord::lower(n, d, value.clone(), tag));
        out.push(BoundRecord::upper(n, d, value, tag));
    };
    match d {
        1 => exact(fact.clone(), method::EXACT_D1),
        2 => exact(fact.clone(), method::EXACT_D2),
        3 => exact(fact / 2u32, method::EXACT_D3),
        _ => {}
    }
    if d == n {
        exact(Count::from(n), method::EXACT_DN);
    }
    out.push(BoundRecord::upper(n, d, fact / c.comb.factorial(d - 1), method::FACTORIAL_UPPER));
    if d < n {
        let prev = elementary_upper(n - 1, d)?;
        out.push(BoundRecord::upper(n, d, &prev.value * n, method::RECURSIVE_UPPER).with_inputs(vec![Arc::new(prev)]));
    }
    Ok(out)
}

/// Smallest upper bound among [`elementary`]'s records.
pub fn elementary_upper(n: usize, d: usize) -> Result<BoundRecord> {
    Ok(elementary(n, d)?
        .into_iter()
        .filter(|r| r.sense == super::Sense::Upper)
        .min_by(|a, b| a.value.cmp(&b.value))
        .expect("factorial upper bound always present"))
}

/// `P(n, n-1) >= n (theta(n) - 1)`.
pub fn theta_lower(n: usize) -> Result<BoundRecord> {
    if n < 2 {
        return Err(Error::domain(format!("need n >= 2, got {n}")));
    }
    let t = theta(n as u64)?;
    Ok(BoundRecord::lower(n, n - 1, Count::from(n as u64 * (t - 1)), method::THETA))
}

/// `floor(n! / L)` with `L` the lower bound on `P[n, d-1]`.
pub fn anticode_product_upper(n: usize, d: usize) -> Result<BoundRecord> {
    let band = pband_lower(n, d)?;
    let value = calc().comb.factorial(n) / &band.value;
    Ok(BoundRecord::upper(n, d, value, method::ANTICODE_PRODUCT).with_inputs(vec![Arc::new(band)]))
}
