use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::arith::{MultiPoly, Rational, Var};
use crate::error::{Error, Result};

/// Square matrix with polynomial entries, indexed from 1 like `E_ij`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SparseMatrix {
    size: usize,
    entries: BTreeMap<(usize, usize), MultiPoly>,
}

impl SparseMatrix {
    pub fn zero(size: usize) -> Self {
        assert!(size > 0, "matrix size must be positive");
        SparseMatrix {
            size,
            entries: BTreeMap::new(),
        }
    }

    /// The matrix unit `E_ij`.
    pub fn unit(size: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zero(size);
        m.add_entry(i, j, &MultiPoly::one());
        m
    }

    pub fn identity(size: usize) -> Self {
        let mut m = Self::zero(size);
        for i in 1..=size {
            m.add_entry(i, i, &MultiPoly::one());
        }
        m
    }

    pub fn from_entries<I: IntoIterator<Item = ((usize, usize), MultiPoly)>>(size: usize, it: I) -> Self {
        let mut m = Self::zero(size);
        for ((i, j), c) in it {
            m.add_entry(i, j, &c);
        }
        m
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize), &MultiPoly)> {
        self.entries.iter()
    }

    pub fn get(&self, i: usize, j: usize) -> MultiPoly {
        self.entries.get(&(i, j)).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn add_entry(&mut self, i: usize, j: usize, c: &MultiPoly) {
        assert!(
            (1..=self.size).contains(&i) && (1..=self.size).contains(&j),
            "index ({i}, {j}) outside 1..={}",
            self.size
        );
        if c.is_zero() {
            return;
        }
        let e = self.entries.entry((i, j)).or_default();
        *e += c;
        if e.is_zero() {
            self.entries.remove(&(i, j));
        }
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.size != other.size {
            return Err(Error::SizeMismatch {
                expected: self.size,
                found: other.size,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for ((i, j), c) in &other.entries {
            out.add_entry(*i, *j, c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&MultiPoly::int(-1)))
    }

    pub fn scale(&self, c: &MultiPoly) -> Self {
        let mut out = Self::zero(self.size);
        for ((i, j), v) in &self.entries {
            out.add_entry(*i, *j, &(v * c));
        }
        out
    }

    pub fn map_entries(&self, f: impl Fn(&MultiPoly) -> MultiPoly) -> Self {
        Self::from_entries(self.size, self.entries.iter().map(|(k, v)| (*k, f(v))))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut by_row: BTreeMap<usize, Vec<(usize, &MultiPoly)>> = BTreeMap::new();
        for ((k, j), b) in &other.entries {
            by_row.entry(*k).or_default().push((*j, b));
        }
        let mut acc: BTreeMap<(usize, usize), MultiPoly> = BTreeMap::new();
        for ((i, k), a) in &self.entries {
            if let Some(row) = by_row.get(k) {
                for (j, b) in row {
                    acc.entry((*i, *j)).or_default().add_mul(a, b);
                }
            }
        }
        acc.retain(|_, v| !v.is_zero());
        Ok(SparseMatrix {
            size: self.size,
            entries: acc,
        })
    }

    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.mul(other)?.sub(&other.mul(self)?)
    }

    pub fn transpose(&self) -> Self {
        Self::from_entries(self.size, self.entries.iter().map(|((i, j), v)| ((*j, *i), v.clone())))
    }

    pub fn trace(&self) -> MultiPoly {
        let mut t = MultiPoly::zero();
        for ((i, j), v) in &self.entries {
            if i == j {
                t += v;
            }
        }
        t
    }

    pub fn specialize(&self, v: Var, value: &Rational) -> Self {
        self.map_entries(|c| c.specialize(v, value))
    }

    pub fn is_symmetric(&self) -> bool {
        self == &self.transpose()
    }

    pub fn is_antisymmetric(&self) -> bool {
        self.transpose() == self.scale(&MultiPoly::int(-1))
    }

    /// Rank over `Q` of a constant matrix.
    pub fn rank(&self) -> Option<usize> {
        let mut e = crate::linalg::Echelon::new();
        let mut rows: BTreeMap<usize, crate::linalg::SparseVec<usize>> = BTreeMap::new();
        for ((i, j), v) in &self.entries {
            let c = v.as_constant()?;
            if !c.is_zero() {
                rows.entry(*i).or_default().insert(*j, c);
            }
        }
        for r in rows.values() {
            e.insert(r);
        }
        Some(e.rank())
    }
}

impl fmt::Display for SparseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .entries
            .iter()
            .map(|((i, j), c)| {
                if c.is_one() {
                    format!("E[{i},{j}]")
                } else {
                    format!("({c})*E[{i},{j}]")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(n: usize, i: usize, j: usize) -> SparseMatrix {
        SparseMatrix::unit(n, i, j)
    }

    #[test]
    fn sl2_bracket() {
        let h = e(2, 1, 2).commutator(&e(2, 2, 1)).unwrap();
        assert_eq!(h, e(2, 1, 1).sub(&e(2, 2, 2)).unwrap());
    }

    #[test]
    fn matrix_unit_oracle() {
        // E_ab E_cd = δ_bc E_ad
        for (a, b, c, d) in [(1, 2, 2, 3), (1, 2, 3, 1), (3, 1, 1, 2)] {
            let p = e(3, a, b).mul(&e(3, c, d)).unwrap();
            let expect = if b == c { e(3, a, d) } else { SparseMatrix::zero(3) };
            assert_eq!(p, expect);
        }
    }

    #[test]
    fn size_mismatch() {
        assert_eq!(
            e(2, 1, 1).add(&e(3, 1, 1)),
            Err(Error::SizeMismatch { expected: 2, found: 3 })
        );
    }

    #[test]
    fn rank_of_constant() {
        let m = e(3, 1, 1).add(&e(3, 2, 2)).unwrap();
        assert_eq!(m.rank(), Some(2));
        assert_eq!(m.scale(&MultiPoly::t()).rank(), None);
    }
}
