use super::{params, VerifyPolicy, Witness};
use crate::error::{Error, Result};
use crate::gfq::make_field;
use crate::perm::{Permutation, PermutationArray};

/// `m` latin squares of order `n` over `Z_n`, pairwise orthogonal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MolsSet {
    order: usize,
    squares: Vec<Vec<Vec<u16>>>,
}

impl MolsSet {
    pub fn new(order: usize, squares: Vec<Vec<Vec<u16>>>) -> Result<Self> {
        let set = Self { order, squares };
        set.validate()?;
        Ok(set)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn squares(&self) -> &[Vec<Vec<u16>>] {
        &self.squares
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.order;
        for (k, sq) in self.squares.iter().enumerate() {
            if sq.len() != n || sq.iter().any(|row| row.len() != n) {
                return Err(Error::Validation(format!("square {k} is not {n}x{n}")));
            }
            for i in 0..n {
                let mut row_seen = vec![false; n];
                let mut col_seen = vec![false; n];
                for j in 0..n {
                    for (seen, v) in [(&mut row_seen, sq[i][j]), (&mut col_seen, sq[j][i])] {
                        let v = v as usize;
                        if v >= n || seen[v] {
                            return Err(Error::Validation(format!("square {k} is not latin")));
                        }
                        seen[v] = true;
                    }
                }
            }
        }
        for a in 0..self.squares.len() {
            for b in a + 1..self.squares.len() {
                let mut seen = vec![false; n * n];
                for i in 0..n {
                    for j in 0..n {
                        let pair = self.squares[a][i][j] as usize * n + self.squares[b][i][j] as usize;
                        if seen[pair] {
                            return Err(Error::Validation(format!("squares {a} and {b} are not orthogonal")));
                        }
                        seen[pair] = true;
                    }
                }
            }
        }
        Ok(())
    }
}

/// The `q - 1` squares `L_u(i, j) = u*i + j`, `u != 0`, over `GF(q)`.
pub fn standard_mols(q: u64) -> Result<MolsSet> {
    let f = make_field(q)?;
    let squares = (1..f.order())
        .map(|u| f.elements().map(|i| f.elements().map(|j| f.add(f.mul(u, i), j) as u16).collect()).collect())
        .collect();
    MolsSet::new(q as usize, squares)
}

/// Each symbol `s` of each square gives the permutation `i ↦ j` with
/// `L(i, j) = s`.
pub fn pa_from_mols(mols: &MolsSet, policy: &VerifyPolicy) -> Result<Witness> {
    mols.validate()?;
    let n = mols.order;
    if mols.squares.is_empty() || n == 0 {
        return Err(Error::domain("need at least one square of positive order"));
    }
    let mut members = Vec::with_capacity(mols.squares.len() * n);
    for sq in &mols.squares {
        for s in 0..n as u16 {
            let images = sq.iter().map(|row| row.iter().position(|&v| v == s).expect("latin") as u16).collect();
            members.push(Permutation::new(images)?);
        }
    }
    let d = if mols.squares.len() == 1 { n } else { n - 1 };
    let pa = PermutationArray::new(n, members)?;
    let p = params([("order", n.to_string()), ("squares", mols.squares.len().to_string())]);
    Witness::verified(pa, d, "mols", p, policy)
}

/// The maps `x ↦ ux + v`, `u != 0`, over `GF(q)`, `u` outer and `v` inner.
pub fn affine_pa(q: u64, policy: &VerifyPolicy) -> Result<Witness> {
    let f = make_field(q)?;
    let mut members = Vec::with_capacity((q * (q - 1)) as usize);
    for u in 1..f.order() {
        for v in f.elements() {
            let images = f.elements().map(|x| f.add(f.mul(u, x), v) as u16).collect();
            members.push(Permutation::new(images)?);
        }
    }
    let pa = PermutationArray::new(q as usize, members)?;
    Witness::verified(pa, q as usize - 1, "affine", params([("q", q.to_string())]), policy)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::Verification;
    use crate::perm::min_distance;

    #[test]
    fn affine_examples() {
        for (q, m, d) in [(5, 20, 4), (7, 42, 6), (8, 56, 7)] {
            let w = affine_pa(q, &VerifyPolicy::default()).unwrap();
            assert_eq!(w.pa().len(), m);
            assert_eq!(min_distance(w.pa()), Some(d));
            assert_eq!(w.verification(), Verification::Full);
        }
        assert!(affine_pa(6, &VerifyPolicy::default()).is_err());
    }

    #[test]
    fn mols_examples() {
        let w = pa_from_mols(&standard_mols(5).unwrap(), &VerifyPolicy::default()).unwrap();
        assert_eq!((w.pa().len(), min_distance(w.pa())), (20, Some(4)));

        let cyclic: Vec<Vec<u16>> = (0..4).map(|i| (0..4).map(|j| (i + j) % 4).collect()).collect();
        let w = pa_from_mols(&MolsSet::new(4, vec![cyclic]).unwrap(), &VerifyPolicy::default()).unwrap();
        assert_eq!((w.pa().len(), min_distance(w.pa())), (4, Some(4)));

        let three = standard_mols(3).unwrap();
        assert_eq!(three.squares().len(), 2);
        let w = pa_from_mols(&three, &VerifyPolicy::default()).unwrap();
        assert_eq!(w.pa().len(), 6);
        assert!(min_distance(w.pa()).unwrap() >= 2);
    }

    #[test]
    fn rejects_non_orthogonal_or_non_latin() {
        let a: Vec<Vec<u16>> = (0..3).map(|i| (0..3).map(|j| (i + j) % 3).collect()).collect();
        assert!(matches!(MolsSet::new(3, vec![a.clone(), a.clone()]), Err(Error::Validation(_))));
        let bad = vec![vec![0, 1, 2], vec![0, 2, 1], vec![2, 1, 0]];
        assert!(matches!(MolsSet::new(3, vec![bad]), Err(Error::Validation(_))));
    }

    #[test]
    fn affine_and_mols_agree_in_size_and_distance() {
        for q in [4u64, 5, 7, 8, 9] {
            let a = affine_pa(q, &VerifyPolicy::default()).unwrap();
            let b = pa_from_mols(&standard_mols(q).unwrap(), &VerifyPolicy::default()).unwrap();
            assert_eq!(a.pa().len(), b.pa().len());
            assert_eq!(min_distance(a.pa()), min_distance(b.pa()));
        }
    }
}
