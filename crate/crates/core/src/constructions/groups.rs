use std::collections::{HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use super::{params, Verification, Witness};
use crate::error::{Error, Result};
use crate::gfq::make_field;
use crate::perm::{group_min_weight, Permutation, PermutationArray};

/// All maps `x ↦ (ax + b)/(cx + d)` on `GF(q) ∪ {∞}`, `∞` being point `q`.
/// Matrices are normalized to `c = 0, d = 1` (listed first, `a` outer) or
/// `c = 1` (`d`, `a`, `b` from outer to inner).
pub fn pgl2_pa(q: u64) -> Result<Witness> {
    let f = make_field(q)?;
    let inf = f.order() as u16;
    let mut members = Vec::with_capacity(((q + 1) * q * (q - 1)) as usize);
    for a in 1..f.order() {
        for b in f.elements() {
            let mut images: Vec<u16> = f.elements().map(|x| f.add(f.mul(a, x), b) as u16).collect();
            images.push(inf);
            members.push(Permutation::new(images)?);
        }
    }
    for d in f.elements() {
        for a in f.elements() {
            for b in f.elements() {
                if f.mul(a, d) == b {
                    continue;
                }
                let mut images: Vec<u16> = f
                    .elements()
                    .map(|x| match f.inv(f.add(x, d)) {
                        Some(den) => f.mul(f.add(f.mul(a, x), b), den) as u16,
                        None => inf,
                    })
                    .collect();
                images.push(a as u16);
                members.push(Permutation::new(images)?);
            }
        }
    }
    let pa = PermutationArray::new(q as usize + 1, members)?;
    let d = group_min_weight(&pa)?;
    if d < q as usize - 1 {
        return Err(Error::Validation(format!("minimum weight {d} below {}", q - 1)));
    }
    Ok(Witness::assemble(pa, q as usize - 1, "pgl2", params([("q", q.to_string())]), Verification::Group))
}

/// Generators of a Mathieu group in 1-indexed cycle notation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MathieuConfig {
    pub which: usize,
    pub generators: Vec<Vec<Vec<usize>>>,
}

impl MathieuConfig {
    /// The standard generators: `(1 2 ... 11)` and `(3 7 11 8)(4 10 5 6)`
    /// for `M11`, plus `(1 12)(2 11)(3 6)(4 8)(5 9)(7 10)` for `M12`.
    pub fn standard(which: usize) -> Result<Self> {
        let mut generators = vec![vec![(1..=11).collect()], vec![vec![3, 7, 11, 8], vec![4, 10, 5, 6]]];
        match which {
            11 => {}
            12 => generators.push(vec![vec![1, 12], vec![2, 11], vec![3, 6], vec![4, 8], vec![5, 9], vec![7, 10]]),
            _ => return Err(Error::domain(format!("no Mathieu group M{which} here; use 11 or 12"))),
        }
        Ok(Self { which, generators })
    }

    fn expected_order(&self) -> Result<usize> {
        match self.which {
            11 => Ok(11 * 10 * 9 * 8),
            12 => Ok(12 * 11 * 10 * 9 * 8),
            w => Err(Error::domain(format!("no Mathieu group M{w} here; use 11 or 12"))),
        }
    }

    fn generator_images(&self) -> Result<Vec<Vec<u16>>> {
        let n = self.which;
        self.generators
            .iter()
            .map(|cycles| {
                let mut images: Vec<u16> = (0..n as u16).collect();
                for cycle in cycles {
                    if cycle.iter().any(|&p| p == 0 || p > n) {
                        return Err(Error::Config(format!("cycle {cycle:?} has points outside 1..={n}")));
                    }
                    for (k, &p) in cycle.iter().enumerate() {
                        images[p - 1] = (cycle[(k + 1) % cycle.len()] - 1) as u16;
                    }
                }
                Permutation::new(images).map(Permutation::into_images).map_err(|e| Error::Config(e.to_string()))
            })
            .collect()
    }
}

pub fn mathieu_pa(which: usize) -> Result<Witness> {
    mathieu_pa_with(&MathieuConfig::standard(which)?)
}

/// Closes the configured generators under composition and checks the order.
pub fn mathieu_pa_with(config: &MathieuConfig) -> Result<Witness> {
    let expected = config.expected_order()?;
    let gens = config.generator_images()?;
    let n = config.which;
    let id: Vec<u16> = (0..n as u16).collect();
    let mut seen: HashSet<Vec<u16>> = HashSet::from([id.clone()]);
    let mut order = vec![id];
    let mut queue = VecDeque::from([0usize]);
    while let Some(e) = queue.pop_front() {
        for g in &gens {
            let x = &order[e];
            let y: Vec<u16> = g.iter().map(|&j| x[j as usize]).collect();
            if seen.insert(y.clone()) {
                if order.len() == expected {
                    return Err(Error::Config(format!("generators produce a group larger than {expected}")));
                }
                order.push(y);
                queue.push_back(order.len() - 1);
            }
        }
    }
    if order.len() != expected {
        return Err(Error::Config(format!("closure has order {}, expected {expected}", order.len())));
    }
    let pa = PermutationArray::new(n, order.into_iter().map(Permutation::from_images_unchecked).collect())?;
    let d = group_min_weight(&pa)?;
    if d < 8 {
        return Err(Error::Config(format!("minimum weight {d} below 8")));
    }
    Ok(Witness::assemble(pa, 8, &format!("mathieu{n}"), params([("which", n.to_string())]), Verification::Group))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::{is_group_closed, pairwise_min_distance};

    #[test]
    fn pgl2_sizes_and_weights() {
        for q in [4u64, 5, 7, 8, 9] {
            let w = pgl2_pa(q).unwrap();
            assert_eq!(w.pa().len() as u64, (q + 1) * q * (q - 1));
            assert!(is_group_closed(w.pa()));
            assert_eq!(group_min_weight(w.pa()).unwrap(), q as usize - 1);
            assert_eq!(w.claim().d, q as usize - 1);
        }
        assert_eq!(pairwise_min_distance(pgl2_pa(5).unwrap().pa()), Some(4));
        assert!(pgl2_pa(10).is_err());
    }

    #[test]
    fn mathieu_11() {
        let w = mathieu_pa(11).unwrap();
        assert_eq!(w.pa().len(), 7920);
        assert_eq!(group_min_weight(w.pa()).unwrap(), 8);
    }

    #[test]
    fn bad_generators() {
        let cfg = MathieuConfig { which: 12, generators: vec![] };
        assert!(matches!(mathieu_pa_with(&cfg), Err(Error::Config(_))));
        let mut cfg = MathieuConfig::standard(11).unwrap();
        cfg.generators.push(vec![vec![1, 2]]);
        assert!(matches!(mathieu_pa_with(&cfg), Err(Error::Config(_))));
        assert!(mathieu_pa(10).is_err());
    }
}
