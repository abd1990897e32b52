//! Weight modules of sl(2), the Casimir scalar, and the decomposition of an
//! algebra under a principal sl(2).

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::arith::{int, MultiPoly};
use crate::error::{Error, Result};
use crate::lie::{span_closure, Algebra, GeneratorTriple, LieElement, SparseMatrix};
use crate::linalg::Echelon;

pub const DEFAULT_TRUNCATION: usize = 12;

/// Truncated module `M^μ` with basis `l_μ, l_{μ-2}, …, l_{μ-2N}`.
///
/// Uses `[X⁺, X⁻] = H`, the convention forced by the module formulas
/// `X⁺ l_{μ-2i} = i(μ-i+1) l_{μ-2i+2}`.
#[derive(Clone, Debug)]
pub struct WeightModule {
    pub mu: MultiPoly,
    pub truncation: usize,
    pub x_plus: SparseMatrix,
    pub x_minus: SparseMatrix,
    pub h: SparseMatrix,
}

pub fn module_matrices(mu: &MultiPoly, truncation: usize) -> WeightModule {
    let truncation = truncation.max(1);
    let size = truncation + 1;
    let mut xp = SparseMatrix::zero(size);
    let mut xm = SparseMatrix::zero(size);
    let mut h = SparseMatrix::zero(size);
    for i in 0..=truncation {
        let col = i + 1;
        let ii = MultiPoly::int(i as i64);
        h.add_entry(col, col, &(mu - &MultiPoly::int(2 * i as i64)));
        if i < truncation {
            xm.add_entry(col + 1, col, &MultiPoly::one());
        }
        if i > 0 {
            let c = &ii * &(mu - &MultiPoly::int(i as i64 - 1));
            xp.add_entry(col - 1, col, &c);
        }
    }
    WeightModule {
        mu: mu.clone(),
        truncation,
        x_plus: xp,
        x_minus: xm,
        h,
    }
}

impl WeightModule {
    pub fn size(&self) -> usize {
        self.truncation + 1
    }

    /// `2(X⁺X⁻ + X⁻X⁺) + H²`
    pub fn casimir_matrix(&self) -> SparseMatrix {
        let a = self.x_plus.mul(&self.x_minus).unwrap();
        let b = self.x_minus.mul(&self.x_plus).unwrap();
        let hh = self.h.mul(&self.h).unwrap();
        a.add(&b).unwrap().scale(&MultiPoly::int(2)).add(&hh).unwrap()
    }

    /// `[H, X^±] = ±2X^±` everywhere and `[X⁺, X⁻] = H` away from the
    /// last basis vector, where truncation cuts `X⁻` off.
    pub fn relations_hold(&self) -> bool {
        let two = MultiPoly::int(2);
        let hxp = self.h.commutator(&self.x_plus).unwrap();
        let hxm = self.h.commutator(&self.x_minus).unwrap();
        if hxp != self.x_plus.scale(&two) || hxm != self.x_minus.scale(&-two) {
            return false;
        }
        let c = self.x_plus.commutator(&self.x_minus).unwrap().sub(&self.h).unwrap();
        let last = self.size();
        let ok = c.entries().all(|((i, j), _)| *i == last && *j == last);
        ok
    }

    /// True iff the Casimir matrix is `scalar · 1` away from the boundary.
    pub fn casimir_is_scalar(&self, scalar: &MultiPoly) -> bool {
        let c = self.casimir_matrix();
        let last = self.size();
        (1..last).all(|i| c.get(i, i) == *scalar) && c.entries().all(|((i, j), _)| i == j || *i == last || *j == last)
    }
}

/// The scalar `μ² + 2μ` by which the Casimir acts on a module of highest weight `μ`.
pub fn casimir_scalar(mu: &MultiPoly) -> MultiPoly {
    mu * mu + mu.scale(&int(2))
}

/// Highest weights with multiplicities.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct DecompositionProfile {
    pub weights: BTreeMap<u32, usize>,
}

impl DecompositionProfile {
    pub fn from_weights(ws: &[u32]) -> Self {
        let mut weights = BTreeMap::new();
        for w in ws {
            *weights.entry(*w).or_insert(0) += 1;
        }
        DecompositionProfile { weights }
    }

    /// `Σ (k+1) · mult`
    pub fn dim(&self) -> usize {
        self.weights.iter().map(|(k, m)| (*k as usize + 1) * m).sum()
    }

    pub fn summands(&self) -> usize {
        self.weights.values().sum()
    }

    pub fn sorted(&self) -> Vec<u32> {
        self.weights.iter().flat_map(|(k, m)| std::iter::repeat_n(*k, *m)).collect()
    }
}

impl fmt::Display for DecompositionProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.sorted().iter().map(|k| k.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// `c` with `[h, e] = c e`, if `e` is an eigenvector with integer eigenvalue.
pub fn weight_of(algebra: &Algebra, h: &LieElement, e: &LieElement) -> Result<i64> {
    let he = algebra.bracket(h, e)?.to_vector();
    let v = e.to_vector();
    let Some((k, c)) = v.iter().next() else {
        return Err(Error::NotDiagonalizable("zero vector".into()));
    };
    let ratio = he.get(k).cloned().unwrap_or_else(crate::arith::Rational::zero) / c;
    let scaled: crate::linalg::SparseVec<_> = v.iter().filter(|_| !ratio.is_zero()).map(|(k, x)| (*k, x * &ratio)).collect();
    if scaled != he || !ratio.is_integer() {
        return Err(Error::NotDiagonalizable(format!("{e}")));
    }
    Ok(ratio.to_integer().to_i64().expect("small weight"))
}

/// Counts highest-weight vectors of `ad h` in the span of `elements`, which
/// must be `ad h` eigenvectors spanning an `ad x`-stable space.
pub fn decompose_elements(algebra: &Algebra, x: &LieElement, h: &LieElement, elements: &[LieElement]) -> Result<DecompositionProfile> {
    let mut by_weight: BTreeMap<i64, Vec<&LieElement>> = BTreeMap::new();
    for e in elements {
        by_weight.entry(weight_of(algebra, h, e)?).or_default().push(e);
    }
    let mut weights = BTreeMap::new();
    for (w, es) in &by_weight {
        let mut img = Echelon::new();
        for e in es {
            img.insert(&algebra.bracket(x, e)?.to_vector());
        }
        let kernel = es.len() - img.rank();
        if kernel == 0 {
            continue;
        }
        if *w < 0 {
            return Err(Error::NotDiagonalizable(format!("highest-weight vector of negative weight {w}")));
        }
        weights.insert(*w as u32, kernel);
    }
    Ok(DecompositionProfile { weights })
}

/// Decomposition of the algebra generated by the triple, at `t = 1`.
pub fn decompose_adjoint(triple: &GeneratorTriple) -> Result<DecompositionProfile> {
    let tr = triple.specialize_t(&int(1));
    let span = span_closure(&tr.algebra, &[tr.x.clone(), tr.y.clone(), tr.z.clone()])?;
    decompose_elements(&tr.algebra, &tr.x, &tr.h, &span.elements)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::{classical_generators, ClassicalFamily};

    #[test]
    fn integral_module_has_submodule() {
        let n = 4;
        let m = module_matrices(&MultiPoly::int(n), 8);
        // X⁺ l_{-n-2} = 0, so l_{-n-2}, l_{-n-4}, … span a submodule
        let col = n as usize + 2;
        assert!(m.x_plus.get(col - 1, col).is_zero());
        assert!(!m.x_plus.get(col - 2, col - 1).is_zero());
    }

    #[test]
    fn adjoint_module_step() {
        let m = module_matrices(&MultiPoly::int(2), 2);
        assert_eq!(m.x_plus.get(1, 2), MultiPoly::int(2));
    }

    #[test]
    fn formal_module_relations() {
        let mu = &MultiPoly::lambda() - &MultiPoly::one();
        let m = module_matrices(&mu, 6);
        assert!(m.relations_hold());
        assert!(m.casimir_is_scalar(&casimir_scalar(&mu)));
    }

    #[test]
    fn casimir_values() {
        assert!(casimir_scalar(&MultiPoly::zero()).is_zero());
        let lam = MultiPoly::lambda();
        assert_eq!(casimir_scalar(&(&lam - &MultiPoly::one())), &lam * &lam - MultiPoly::one());
        let m = module_matrices(&MultiPoly::int(2), 4);
        let c = m.casimir_matrix();
        assert_eq!(c.get(1, 1), MultiPoly::int(8));
        assert_eq!(casimir_scalar(&MultiPoly::int(2)), MultiPoly::int(8));
    }

    #[test]
    fn sl4_profile() {
        let tr = classical_generators(ClassicalFamily::Sl, 4).unwrap();
        let p = decompose_adjoint(&tr).unwrap();
        assert_eq!(p.sorted(), vec![2, 4, 6]);
        assert_eq!(p.dim(), 15);
    }

    #[test]
    fn o8_profile() {
        let tr = classical_generators(ClassicalFamily::OEven, 4).unwrap();
        let p = decompose_adjoint(&tr).unwrap();
        assert_eq!(p.sorted(), vec![2, 6, 6, 10]);
        assert_eq!(p.dim(), 28);
    }
}
