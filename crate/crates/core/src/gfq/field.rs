use crate::combinatorics::{prime_power, PrimePowerFactorization};
use crate::error::{Error, Result};

/// Largest supported field order.
pub const MAX_FIELD_ORDER: u64 = 1 << 16;

/// Orders up to this size get full addition and multiplication tables.
const TABLE_LIMIT: u32 = 256;

/// Elements of `GF(p^k)` are encoded as integers in `0..q`: the base-`p`
/// digits of an element are the coefficients of its residue polynomial,
/// lowest degree first.
#[derive(Clone, Debug)]
pub struct FieldSpec {
    p: u32,
    k: u32,
    q: u32,
    /// Monic irreducible modulus over `GF(p)`, lowest degree first.
    modulus: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
    add_table: Vec<u32>,
    mul_table: Vec<u32>,
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.k == other.k && self.modulus == other.modulus
    }
}

impl Eq for FieldSpec {}

/// Field of order `q` with the smallest monic irreducible modulus, ordering
/// moduli by the integer encoding of their coefficient vector.
pub fn make_field(q: u64) -> Result<FieldSpec> {
    if q > MAX_FIELD_ORDER {
        return Err(Error::domain(format!("field order {q} exceeds {MAX_FIELD_ORDER}")));
    }
    let (p, k) = prime_power(q).ok_or_else(|| Error::domain(format!("{q} is not a prime power")))?;
    FieldSpec::build(p as u32, k)
}

impl FieldSpec {
    fn build(p: u32, k: u32) -> Result<Self> {
        let q = p.pow(k);
        let modulus = if k == 1 { vec![0, 1] } else { smallest_irreducible(p, k as usize) };
        let mut field =
            Self { p, k, q, modulus, exp: Vec::new(), log: Vec::new(), add_table: Vec::new(), mul_table: Vec::new() };
        if k > 1 {
            field.build_log_tables();
        }
        if q <= TABLE_LIMIT {
            let qs = q as usize;
            let mut add = vec![0; qs * qs];
            let mut mul = vec![0; qs * qs];
            for a in 0..q {
                for b in 0..q {
                    add[(a * q + b) as usize] = field.add_slow(a, b);
                    mul[(a * q + b) as usize] = field.mul_slow(a, b);
                }
            }
            field.add_table = add;
            field.mul_table = mul;
        }
        Ok(field)
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.q
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        if !self.add_table.is_empty() {
            return self.add_table[(a * self.q + b) as usize];
        }
        self.add_slow(a, b)
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if !self.mul_table.is_empty() {
            return self.mul_table[(a * self.q + b) as usize];
        }
        self.mul_slow(a, b)
    }

    pub fn neg(&self, a: u32) -> u32 {
        if self.k == 1 {
            return (self.p - a) % self.p;
        }
        let digits: Vec<u32> = self.digits(a).into_iter().map(|c| (self.p - c) % self.p).collect();
        self.undigits(&digits)
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        if self.k == 1 {
            return Some(pow_mod(a as u64, (self.p - 2) as u64, self.p as u64) as u32);
        }
        let l = self.log[a as usize];
        Some(self.exp[((self.q - 1 - l) % (self.q - 1)) as usize])
    }

    pub fn pow(&self, a: u32, mut e: u64) -> u32 {
        let mut base = a;
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn is_square(&self, a: u32) -> bool {
        a == 0 || self.elements().any(|x| self.mul(x, x) == a)
    }

    fn add_slow(&self, a: u32, b: u32) -> u32 {
        if self.k == 1 {
            return (a + b) % self.p;
        }
        let (da, db) = (self.digits(a), self.digits(b));
        let sum: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % self.p).collect();
        self.undigits(&sum)
    }

    fn mul_slow(&self, a: u32, b: u32) -> u32 {
        if self.k == 1 {
            return ((a as u64 * b as u64) % self.p as u64) as u32;
        }
        if !self.log.is_empty() {
            if a == 0 || b == 0 {
                return 0;
            }
            let s = (self.log[a as usize] + self.log[b as usize]) % (self.q - 1);
            return self.exp[s as usize];
        }
        let prod = poly_mul_mod(&self.digits(a), &self.digits(b), &self.modulus, self.p);
        self.undigits(&prod)
    }

    fn digits(&self, mut a: u32) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.k as usize);
        for _ in 0..self.k {
            out.push(a % self.p);
            a /= self.p;
        }
        out
    }

    fn undigits(&self, digits: &[u32]) -> u32 {
        digits.iter().rev().fold(0, |acc, &d| acc * self.p + d)
    }

    fn build_log_tables(&mut self) {
        let order = (self.q - 1) as u64;
        let prime_factors: Vec<u64> =
            PrimePowerFactorization::of(order).expect("q >= 4").factors.iter().map(|&(r, _)| r).collect();
        let slow_pow = |f: &Self, a: u32, mut e: u64| {
            let (mut base, mut acc) = (a, 1u32);
            while e > 0 {
                if e & 1 == 1 {
                    acc = f.mul_slow(acc, base);
                }
                base = f.mul_slow(base, base);
                e >>= 1;
            }
            acc
        };
        let generator = (2..self.q)
            .find(|&g| prime_factors.iter().all(|&r| slow_pow(self, g, order / r) != 1))
            .expect("multiplicative group is cyclic");
        let mut exp = vec![0u32; self.q as usize - 1];
        let mut log = vec![0u32; self.q as usize];
        let mut x = 1u32;
        for (i, slot) in exp.iter_mut().enumerate() {
            *slot = x;
            log[x as usize] = i as u32;
            x = self.mul_slow(x, generator);
        }
        self.exp = exp;
        self.log = log;
    }
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

fn trim(mut v: Vec<u32>) -> Vec<u32> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

/// Remainder of `a` modulo monic `m` over `GF(p)`.
fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r = trim(a.to_vec());
    let dm = m.len() - 1;
    while r.len() > dm {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dm;
        for (i, &c) in m.iter().enumerate() {
            r[shift + i] = (r[shift + i] + p - (lead * c) % p) % p;
        }
        r = trim(r);
    }
    r
}

fn poly_mul_mod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut prod = vec![0u32; a.len() + b.len()];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    let mut r = poly_rem(&prod, m, p);
    r.resize(m.len() - 1, 0);
    r
}

/// Monic polynomial of degree `deg` whose lower coefficients are the base-`p`
/// digits of `code`.
fn monic_from_code(p: u32, deg: usize, mut code: u64) -> Vec<u32> {
    let mut coeffs = Vec::with_capacity(deg + 1);
    for _ in 0..deg {
        coeffs.push((code % p as u64) as u32);
        code /= p as u64;
    }
    coeffs.push(1);
    coeffs
}

/// Irreducible iff no monic factor of degree `1..=deg/2` divides it.
fn is_irreducible(f: &[u32], p: u32) -> bool {
    let deg = f.len() - 1;
    for d in 1..=deg / 2 {
        for code in 0..(p as u64).pow(d as u32) {
            if poly_rem(f, &monic_from_code(p, d, code), p).is_empty() {
                return false;
            }
        }
    }
    true
}

fn smallest_irreducible(p: u32, k: usize) -> Vec<u32> {
    (0..(p as u64).pow(k as u32))
        .map(|code| monic_from_code(p, k, code))
        .find(|f| is_irreducible(f, p))
        .expect("irreducible polynomials exist in every degree")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_construction() {
        let f7 = make_field(7).unwrap();
        assert_eq!((f7.characteristic(), f7.degree(), f7.order()), (7, 1, 7));
        assert_eq!(f7.modulus(), &[0, 1]);
        let f9 = make_field(9).unwrap();
        assert_eq!(f9.modulus(), &[1, 0, 1], "x^2 + 1");
        assert_eq!(make_field(8).unwrap().modulus(), &[1, 1, 0, 1], "x^3 + x + 1");
        assert_eq!(make_field(4).unwrap().modulus(), &[1, 1, 1], "x^2 + x + 1");
        assert!(matches!(make_field(12), Err(Error::Domain(_))));
        assert!(make_field(1).is_err());
        assert!(make_field(1 << 17).is_err());
    }

    #[test]
    fn field_axioms_exhaustive() {
        for q in [4u64, 5, 7, 8, 9] {
            let f = make_field(q).unwrap();
            let els: Vec<u32> = f.elements().collect();
            for &a in &els {
                assert_eq!(f.add(a, 0), a);
                assert_eq!(f.mul(a, 1), a);
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), 1, "q={q} a={a}");
                }
                for &b in &els {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for &c in &els {
                        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
            assert_eq!(f.inv(0), None);
        }
    }

    #[test]
    fn large_field_without_tables() {
        let f = make_field(1 << 10).unwrap();
        assert!(f.mul_table.is_empty());
        for a in (1..f.order()).step_by(37) {
            assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
            assert_eq!(f.pow(a, (f.order() - 1) as u64), 1);
        }
        let g = make_field(3u64.pow(7)).unwrap();
        for a in (1..g.order()).step_by(101) {
            assert_eq!(g.mul(a, g.inv(a).unwrap()), 1);
            assert_eq!(g.sub(g.add(a, 5), 5), a);
        }
    }
}
