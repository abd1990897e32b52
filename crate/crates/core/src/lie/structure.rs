use std::collections::BTreeMap;

use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;

use crate::arith::{MultiPoly, Rational};
use crate::error::{Error, Result};

pub type CoordVec = BTreeMap<usize, MultiPoly>;

/// Finite-dimensional Lie algebra given by `[e_i, e_j] = Σ_k c_ij^k e_k`.
#[derive(Clone, Debug)]
pub struct StructureConstantAlgebra {
    dim: usize,
    labels: Vec<String>,
    table: Vec<Vec<(usize, Rational)>>,
}

impl StructureConstantAlgebra {
    /// Builds the table from brackets `[e_i, e_j]` with `i < j`; the rest
    /// follows by antisymmetry.
    pub fn new(labels: Vec<String>, upper: BTreeMap<(usize, usize), Vec<(usize, Rational)>>) -> Result<Self> {
        let dim = labels.len();
        let mut table = vec![Vec::new(); dim * dim];
        for ((i, j), v) in upper {
            if i >= j || j >= dim {
                return Err(Error::JacobiFailure(format!("bad table key ({i}, {j})")));
            }
            let v: Vec<(usize, Rational)> = v.into_iter().filter(|(_, c)| !c.is_zero()).collect();
            table[j * dim + i] = v.iter().map(|(k, c)| (*k, -c)).collect();
            table[i * dim + j] = v;
        }
        Ok(StructureConstantAlgebra { dim, labels, table })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn basis_bracket(&self, i: usize, j: usize) -> &[(usize, Rational)] {
        &self.table[i * self.dim + j]
    }

    pub fn basis_vector(&self, i: usize) -> CoordVec {
        BTreeMap::from([(i, MultiPoly::one())])
    }

    pub fn bracket(&self, a: &CoordVec, b: &CoordVec) -> CoordVec {
        let mut out: CoordVec = BTreeMap::new();
        for (&i, x) in a {
            for (&j, y) in b {
                let row = self.basis_bracket(i, j);
                if row.is_empty() {
                    continue;
                }
                let xy = x * y;
                for (k, c) in row {
                    out.entry(*k).or_default().add_scaled(&xy, c, &[0; 5]);
                }
            }
        }
        out.retain(|_, v| !v.is_zero());
        out
    }

    pub fn is_antisymmetric(&self) -> bool {
        (0..self.dim).all(|i| {
            (0..self.dim).all(|j| {
                let a = self.basis_bracket(i, j);
                let b = self.basis_bracket(j, i);
                a.len() == b.len() && a.iter().zip(b).all(|((k1, c1), (k2, c2))| k1 == k2 && c1 == &-c2)
            })
        })
    }

    /// Checks Jacobi on every triple `i < j < k` of basis vectors.
    pub fn check_jacobi(&self) -> Result<()> {
        let n = self.dim;
        // Chevalley tables are integral; fall back to rationals otherwise.
        let int_table: Option<Vec<Vec<(usize, i64)>>> = self
            .table
            .iter()
            .map(|row| {
                row.iter()
                    .map(|(k, c)| if c.is_integer() { c.to_integer().to_i64().map(|v| (*k, v)) } else { None })
                    .collect()
            })
            .collect();
        let bad = match int_table {
            Some(t) => (0..n).into_par_iter().find_map_any(|i| jacobi_row_int(&t, n, i)),
            None => (0..n).into_par_iter().find_map_any(|i| self.jacobi_row_rat(i)),
        };
        match bad {
            Some((i, j, k)) => Err(Error::JacobiFailure(format!(
                "{}, {}, {}",
                self.labels[i], self.labels[j], self.labels[k]
            ))),
            None => Ok(()),
        }
    }

    fn jacobi_row_rat(&self, i: usize) -> Option<(usize, usize, usize)> {
        let n = self.dim;
        let apply = |v: &[(usize, Rational)], k: usize, acc: &mut BTreeMap<usize, Rational>| {
            for (m, c) in v {
                for (r, d) in self.basis_bracket(*m, k) {
                    *acc.entry(*r).or_insert_with(Rational::zero) += c * d;
                }
            }
        };
        for j in i + 1..n {
            for k in j + 1..n {
                let mut acc = BTreeMap::new();
                apply(self.basis_bracket(i, j), k, &mut acc);
                apply(self.basis_bracket(j, k), i, &mut acc);
                apply(self.basis_bracket(k, i), j, &mut acc);
                if acc.values().any(|c| !c.is_zero()) {
                    return Some((i, j, k));
                }
            }
        }
        None
    }
}

fn jacobi_row_int(t: &[Vec<(usize, i64)>], n: usize, i: usize) -> Option<(usize, usize, usize)> {
    let mut acc = vec![0i64; n];
    let mut touched = Vec::new();
    for j in i + 1..n {
        for k in j + 1..n {
            for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
                for &(m, x) in &t[a * n + b] {
                    for &(r, y) in &t[m * n + c] {
                        acc[r] += x * y;
                        touched.push(r);
                    }
                }
            }
            let mut ok = true;
            for &r in &touched {
                if acc[r] != 0 {
                    ok = false;
                }
                acc[r] = 0;
            }
            touched.clear();
            if !ok {
                return Some((i, j, k));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;

    /// sl(2) in the basis e, h, f.
    pub(crate) fn sl2() -> StructureConstantAlgebra {
        let labels = vec!["e".into(), "h".into(), "f".into()];
        let upper = BTreeMap::from([
            ((0, 1), vec![(0, int(-2))]),
            ((0, 2), vec![(1, int(1))]),
            ((1, 2), vec![(2, int(-2))]),
        ]);
        StructureConstantAlgebra::new(labels, upper).unwrap()
    }

    #[test]
    fn sl2_table() {
        let a = sl2();
        assert!(a.is_antisymmetric());
        a.check_jacobi().unwrap();
        let hf = a.bracket(&a.basis_vector(1), &a.basis_vector(2));
        assert_eq!(hf, BTreeMap::from([(2, MultiPoly::int(-2))]));
    }

    #[test]
    fn broken_jacobi_detected() {
        let labels = vec!["a".into(), "b".into(), "c".into()];
        let upper = BTreeMap::from([((0, 1), vec![(2, int(1))]), ((0, 2), vec![(0, int(1))])]);
        let a = StructureConstantAlgebra::new(labels, upper).unwrap();
        assert!(matches!(a.check_jacobi(), Err(Error::JacobiFailure(_))));
    }
}
