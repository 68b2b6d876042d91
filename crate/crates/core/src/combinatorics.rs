//! Exact integer primitives: factorials, binomials, derangement numbers,
//! ball volumes in `S_n` and `{0,1}^n`, prime-power factorization and
//! directed-rounding base-2 logarithms.
//!
//! Every quantity is a [`Count`] (an unbounded natural number); nothing here
//! passes through floating point except the two `log2_*` functions, which are
//! rounded in a known direction.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision nonnegative integer used for every count and bound value.
pub type Count = BigUint;

pub fn factorial(n: u64) -> Count {
    (2..=n).fold(Count::one(), |acc, i| acc * i)
}

/// `C(n, k)`; zero when `k < 0` or `k > n`.
pub fn binomial(n: u64, k: i64) -> Count {
    if k < 0 || k as u64 > n {
        return Count::zero();
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = Count::one();
    for i in 0..k {
        // exact at every step: the running product is C(n, i+1)
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// `ceil(a / b)` for `b > 0`.
pub fn ceil_div(a: &Count, b: &Count) -> Count {
    let (q, r) = a.div_rem(b);
    if r.is_zero() {
        q
    } else {
        q + 1u32
    }
}

/// Number of fixed-point-free permutations of `k` points, `D_0 = 1`.
pub fn derangement_count(k: u64) -> Count {
    let (mut prev, mut cur) = (Count::one(), Count::zero()); // D_0, D_1
    if k == 0 {
        return prev;
    }
    for i in 2..=k {
        let next = (&prev + &cur) * (i - 1);
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

/// `V(n, r) = sum_{i<=r} C(n,i) D_i`, the number of permutations within
/// Hamming distance `r` of a fixed permutation of length `n`.
pub fn ball_volume(n: u64, r: i64) -> Result<Count> {
    check_radius(n, r)?;
    Ok((0..=r as u64).map(|i| binomial(n, i as i64) * derangement_count(i)).sum())
}

/// `V_2(n, r) = sum_{i<=r} C(n,i)`, the Hamming ball volume in `{0,1}^n`.
pub fn binary_ball_volume(n: u64, r: i64) -> Result<Count> {
    check_radius(n, r)?;
    Ok((0..=r).map(|i| binomial(n, i)).sum())
}

fn check_radius(n: u64, r: i64) -> Result<()> {
    if r < 0 || r as u64 > n {
        return Err(Error::domain(format!("radius {r} outside [0, {n}]")));
    }
    Ok(())
}

/// Standard factorization `n = prod p_i^{c_i}` with strictly increasing primes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimePowerFactorization {
    pub n: u64,
    pub factors: Vec<(u64, u32)>,
}

impl PrimePowerFactorization {
    /// Trial division; `n` must be positive.
    pub fn of(n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::domain("cannot factor 0"));
        }
        let mut factors = Vec::new();
        let mut rest = n;
        let mut p = 2u64;
        while p.saturating_mul(p) <= rest {
            if rest.is_multiple_of(p) {
                let mut c = 0;
                while rest.is_multiple_of(p) {
                    rest /= p;
                    c += 1;
                }
                factors.push((p, c));
            }
            p += if p == 2 { 1 } else { 2 };
        }
        if rest > 1 {
            factors.push((rest, 1));
        }
        Ok(Self { n, factors })
    }

    /// The prime-power components `p_i^{c_i}`.
    pub fn components(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|&(p, c)| p.pow(c))
    }
}

/// Smallest prime-power component of `n`.
pub fn theta(n: u64) -> Result<u64> {
    if n <= 1 {
        return Err(Error::domain(format!("theta needs n >= 2, got {n}")));
    }
    Ok(PrimePowerFactorization::of(n)?.components().min().expect("n >= 2 has a factor"))
}

/// `(p, k)` with `p^k = q` when `q` is a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let f = PrimePowerFactorization::of(q).ok()?;
    match f.factors.as_slice() {
        [(p, k)] => Some((*p, *k)),
        _ => None,
    }
}

pub fn is_prime(n: u64) -> bool {
    matches!(prime_power(n), Some((_, 1)))
}

/// Splits `x` into a 64-bit mantissa and shift: `x = m * 2^s + rest`, `rest < 2^s`.
fn log2_parts(x: &Count) -> Result<(u64, u64, bool)> {
    if x.is_zero() {
        return Err(Error::domain("log2 of zero"));
    }
    let bits = x.bits();
    let shift = bits.saturating_sub(64);
    let m = (x >> shift).to_u64().expect("fits in 64 bits");
    let exact_shift = shift == 0 || x.trailing_zeros() == Some(shift);
    Ok((m, shift, exact_shift))
}

fn log2_slack(r: f64) -> f64 {
    r.abs().max(1.0) * f64::powi(2.0, -50)
}

/// A value `<= log2(x)`, within `2^-40` of it for `x < 2^1024`.
pub fn log2_lower(x: &Count) -> Result<f64> {
    if x.count_ones() == 1 {
        return Ok((x.bits() - 1) as f64);
    }
    let (m, shift, _) = log2_parts(x)?;
    let r = (m as f64).log2() + shift as f64;
    Ok(r - log2_slack(r))
}

/// A value `>= log2(x)`, within `2^-40` of it for `x < 2^1024`.
pub fn log2_upper(x: &Count) -> Result<f64> {
    if x.count_ones() == 1 {
        return Ok((x.bits() - 1) as f64);
    }
    let (m, shift, exact) = log2_parts(x)?;
    let top = if exact { m as f64 } else { m as f64 + 1.0 };
    let r = top.log2() + shift as f64;
    Ok(r + log2_slack(r))
}

/// Cached factorials, binomials and derangement numbers up to a fixed size,
/// for the bound formulas that evaluate thousands of terms.
#[derive(Clone, Debug)]
pub struct CombTable {
    max: usize,
    fact: Vec<Count>,
    der: Vec<Count>,
    binom: Vec<Vec<Count>>,
}

impl CombTable {
    pub fn new(max: usize) -> Self {
        let fact: Vec<Count> = (0..=max as u64).map(factorial).collect();
        let der: Vec<Count> = (0..=max as u64).map(derangement_count).collect();
        let mut binom: Vec<Vec<Count>> = Vec::with_capacity(max + 1);
        for n in 0..=max {
            let mut row = vec![Count::one(); n + 1];
            for k in 1..n {
                row[k] = &binom[n - 1][k - 1] + &binom[n - 1][k];
            }
            binom.push(row);
        }
        Self { max, fact, der, binom }
    }

    pub fn max(&self) -> usize {
        self.max
    }

    pub fn factorial(&self, n: usize) -> &Count {
        &self.fact[n]
    }

    pub fn derangements(&self, k: usize) -> &Count {
        &self.der[k]
    }

    /// `C(n, k)` with out-of-range `k` mapped to zero.
    pub fn binomial(&self, n: usize, k: i64) -> Count {
        if k < 0 || k as usize > n {
            Count::zero()
        } else {
            self.binom[n][k as usize].clone()
        }
    }

    pub fn ball_volume(&self, n: usize, r: usize) -> Count {
        (0..=r.min(n)).map(|i| &self.binom[n][i] * &self.der[i]).sum()
    }
}
