use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::arith::{Monomial, MultiPoly, Rational, Var};
use crate::error::{Error, Result};
use crate::linalg::SparseVec;
use crate::weyl::{poisson_bracket, DiffOperator, PoissonPoly};

use super::matrix::SparseMatrix;
use super::structure::{CoordVec, StructureConstantAlgebra};

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum LieElement {
    Matrix(SparseMatrix),
    Coords(CoordVec),
    Diff(DiffOperator),
    Poisson(PoissonPoly),
}

impl LieElement {
    pub fn backend_name(&self) -> &'static str {
        match self {
            LieElement::Matrix(_) => "matrix",
            LieElement::Coords(_) => "structure-constant",
            LieElement::Diff(_) => "differential-operator",
            LieElement::Poisson(_) => "poisson",
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            LieElement::Matrix(m) => m.is_zero(),
            LieElement::Coords(c) => c.is_empty(),
            LieElement::Diff(d) => d.is_zero(),
            LieElement::Poisson(p) => p.is_zero(),
        }
    }

    /// Flattened coefficient map, one polynomial per ambient coordinate.
    pub fn components(&self) -> BTreeMap<u64, MultiPoly> {
        match self {
            LieElement::Matrix(m) => {
                let n = m.size() as u64;
                m.entries().map(|((i, j), c)| ((*i as u64 - 1) * n + (*j as u64 - 1), c.clone())).collect()
            }
            LieElement::Coords(c) => c.iter().map(|(k, v)| (*k as u64, v.clone())).collect(),
            LieElement::Diff(d) => d.terms().map(|(k, v)| (*k as u64, v.clone())).collect(),
            LieElement::Poisson(p) => {
                if p.is_zero() {
                    BTreeMap::new()
                } else {
                    BTreeMap::from([(0, p.poly().clone())])
                }
            }
        }
    }

    /// Splits every component by monomial, giving a vector over `Q`.
    pub fn to_vector(&self) -> SparseVec<(u64, Monomial)> {
        let mut out = BTreeMap::new();
        for (k, p) in self.components() {
            for (m, c) in p.terms() {
                out.insert((k, *m), c.clone());
            }
        }
        out
    }

    pub fn map_scalars(&self, f: impl Fn(&MultiPoly) -> MultiPoly) -> LieElement {
        match self {
            LieElement::Matrix(m) => LieElement::Matrix(m.map_entries(f)),
            LieElement::Coords(c) => {
                let mut out = BTreeMap::new();
                for (k, v) in c {
                    let w = f(v);
                    if !w.is_zero() {
                        out.insert(*k, w);
                    }
                }
                LieElement::Coords(out)
            }
            LieElement::Diff(d) => LieElement::Diff(d.map_coefficients(f)),
            LieElement::Poisson(p) => LieElement::Poisson(p.map(f)),
        }
    }

    pub fn scale(&self, c: &MultiPoly) -> LieElement {
        self.map_scalars(|v| v * c)
    }

    pub fn neg(&self) -> LieElement {
        self.scale(&MultiPoly::int(-1))
    }

    pub fn specialize(&self, v: Var, value: &Rational) -> LieElement {
        self.map_scalars(|p| p.specialize(v, value))
    }

    pub fn substitute(&self, v: Var, value: &MultiPoly) -> LieElement {
        self.map_scalars(|p| p.substitute(v, value))
    }

    pub fn add(&self, other: &LieElement) -> Result<LieElement> {
        Ok(match (self, other) {
            (LieElement::Matrix(a), LieElement::Matrix(b)) => LieElement::Matrix(a.add(b)?),
            (LieElement::Coords(a), LieElement::Coords(b)) => {
                let mut out = a.clone();
                for (k, v) in b {
                    let e = out.entry(*k).or_default();
                    *e += v;
                    if e.is_zero() {
                        out.remove(k);
                    }
                }
                LieElement::Coords(out)
            }
            (LieElement::Diff(a), LieElement::Diff(b)) => LieElement::Diff(a.add(b)),
            (LieElement::Poisson(a), LieElement::Poisson(b)) => LieElement::Poisson(a.add(b)),
            (a, b) => return Err(mismatch(a, b)),
        })
    }

    pub fn sub(&self, other: &LieElement) -> Result<LieElement> {
        self.add(&other.neg())
    }
}

fn mismatch(a: &LieElement, b: &LieElement) -> Error {
    Error::BackendMismatch(format!("{} vs {}", a.backend_name(), b.backend_name()))
}

impl fmt::Display for LieElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LieElement::Matrix(m) => m.fmt(f),
            LieElement::Coords(c) => {
                if c.is_empty() {
                    return write!(f, "0");
                }
                let parts: Vec<String> = c.iter().map(|(k, v)| format!("({v})*e{k}")).collect();
                write!(f, "{}", parts.join(" + "))
            }
            LieElement::Diff(d) => d.fmt(f),
            LieElement::Poisson(p) => p.fmt(f),
        }
    }
}

/// The ambient algebra an element lives in, which fixes its bracket.
#[derive(Clone, Debug)]
pub enum Algebra {
    Matrix { size: usize },
    Structure(Arc<StructureConstantAlgebra>),
    Weyl,
    Poisson,
}

impl Algebra {
    pub fn zero(&self) -> LieElement {
        match self {
            Algebra::Matrix { size } => LieElement::Matrix(SparseMatrix::zero(*size)),
            Algebra::Structure(_) => LieElement::Coords(BTreeMap::new()),
            Algebra::Weyl => LieElement::Diff(DiffOperator::zero()),
            Algebra::Poisson => LieElement::Poisson(PoissonPoly::default()),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Algebra::Matrix { .. } => "matrix",
            Algebra::Structure(_) => "structure-constant",
            Algebra::Weyl => "differential-operator",
            Algebra::Poisson => "poisson",
        }
    }

    pub fn owns(&self, a: &LieElement) -> bool {
        match (self, a) {
            (Algebra::Matrix { size }, LieElement::Matrix(m)) => m.size() == *size,
            (Algebra::Structure(s), LieElement::Coords(c)) => c.keys().all(|k| *k < s.dim()),
            (Algebra::Weyl, LieElement::Diff(_)) => true,
            (Algebra::Poisson, LieElement::Poisson(_)) => true,
            _ => false,
        }
    }

    pub fn bracket(&self, a: &LieElement, b: &LieElement) -> Result<LieElement> {
        for e in [a, b] {
            if !self.owns(e) {
                return Err(Error::BackendMismatch(format!("{} element in {} algebra", e.backend_name(), self.name())));
            }
        }
        Ok(match (self, a, b) {
            (Algebra::Matrix { .. }, LieElement::Matrix(x), LieElement::Matrix(y)) => LieElement::Matrix(x.commutator(y)?),
            (Algebra::Structure(s), LieElement::Coords(x), LieElement::Coords(y)) => LieElement::Coords(s.bracket(x, y)),
            (Algebra::Weyl, LieElement::Diff(x), LieElement::Diff(y)) => LieElement::Diff(x.commutator(y)?),
            (Algebra::Poisson, LieElement::Poisson(x), LieElement::Poisson(y)) => LieElement::Poisson(poisson_bracket(x, y)),
            _ => unreachable!("ownership checked above"),
        })
    }

    /// `(ad a)^k b`
    pub fn ad_pow(&self, a: &LieElement, k: u32, b: &LieElement) -> Result<LieElement> {
        let mut out = b.clone();
        for _ in 0..k {
            if out.is_zero() {
                break;
            }
            out = self.bracket(a, &out)?;
        }
        Ok(out)
    }

    /// Ambient dimension for finite backends.
    pub fn ambient_dim(&self) -> Option<usize> {
        match self {
            Algebra::Matrix { size } => Some(size * size),
            Algebra::Structure(s) => Some(s.dim()),
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn mat(n: usize, items: &[(usize, usize, i64)]) -> LieElement {
        LieElement::Matrix(SparseMatrix::from_entries(n, items.iter().map(|&(i, j, c)| ((i, j), MultiPoly::int(c)))))
    }

    #[test]
    fn sl3_bracket_example() {
        let g = Algebra::Matrix { size: 3 };
        let x = mat(3, &[(1, 2, 2), (2, 3, 2)]);
        let z = LieElement::Matrix(SparseMatrix::unit(3, 3, 1).scale(&MultiPoly::t()));
        let xz = g.bracket(&x, &z).unwrap();
        let expect = mat(3, &[(2, 1, 2), (3, 2, -2)]).scale(&MultiPoly::t());
        assert_eq!(xz, expect);
    }

    #[test]
    fn backend_mismatch() {
        let g = Algebra::Matrix { size: 2 };
        let a = mat(2, &[(1, 2, 1)]);
        let b = LieElement::Diff(DiffOperator::d());
        assert!(matches!(g.bracket(&a, &b), Err(Error::BackendMismatch(_))));
        assert!(matches!(a.add(&b), Err(Error::BackendMismatch(_))));
        let wrong_size = mat(3, &[(1, 2, 1)]);
        assert!(g.bracket(&a, &wrong_size).is_err());
    }

    fn arb_mat() -> impl Strategy<Value = LieElement> {
        prop::collection::vec((1usize..4, 1usize..4, -3i64..4), 0..5).prop_map(|v| mat(3, &v))
    }

    proptest! {
        #[test]
        fn matrix_bracket_axioms(a in arb_mat(), b in arb_mat(), c in arb_mat()) {
            let g = Algebra::Matrix { size: 3 };
            let ab = g.bracket(&a, &b).unwrap();
            prop_assert_eq!(&ab, &g.bracket(&b, &a).unwrap().neg());
            let j = g.bracket(&a, &g.bracket(&b, &c).unwrap()).unwrap()
                .add(&g.bracket(&b, &g.bracket(&c, &a).unwrap()).unwrap()).unwrap()
                .add(&g.bracket(&c, &ab).unwrap()).unwrap();
            prop_assert!(j.is_zero());
        }
    }
}
