use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};

use crate::arith::{factorial, int, MultiPoly, Rational, Var};
use crate::error::{Error, Result};
use crate::linalg::{solve, Solution, SparseVec};

use super::element::{Algebra, LieElement};
use super::matrix::SparseMatrix;
use super::triple::GeneratorTriple;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClassicalFamily {
    Sl,
    OOdd,
    Sp,
    OEven,
}

impl ClassicalFamily {
    pub fn name(self) -> &'static str {
        match self {
            ClassicalFamily::Sl => "sl",
            ClassicalFamily::OOdd => "o_odd",
            ClassicalFamily::Sp => "sp",
            ClassicalFamily::OEven => "o_even",
        }
    }

    pub fn min_n(self) -> usize {
        match self {
            ClassicalFamily::OEven => 4,
            _ => 3,
        }
    }

    pub fn matrix_size(self, n: usize) -> usize {
        match self {
            ClassicalFamily::Sl => n,
            ClassicalFamily::OOdd => 2 * n + 1,
            ClassicalFamily::Sp | ClassicalFamily::OEven => 2 * n,
        }
    }

    /// Weight `r` of `z`.
    pub fn z_weight(self, n: usize) -> u32 {
        match self {
            ClassicalFamily::Sl => 4,
            ClassicalFamily::OOdd | ClassicalFamily::Sp => 6,
            ClassicalFamily::OEven => 2 * n as u32 - 2,
        }
    }

    pub fn dim(self, n: usize) -> usize {
        match self {
            ClassicalFamily::Sl => n * n - 1,
            ClassicalFamily::OOdd => n * (2 * n + 1),
            ClassicalFamily::Sp => n * (2 * n + 1),
            ClassicalFamily::OEven => n * (2 * n - 1),
        }
    }

    pub fn rank(self, n: usize) -> usize {
        match self {
            ClassicalFamily::Sl => n - 1,
            _ => n,
        }
    }
}

struct Builder {
    m: SparseMatrix,
}

impl Builder {
    fn new(size: usize) -> Self {
        Builder {
            m: SparseMatrix::zero(size),
        }
    }

    fn e(&mut self, c: i64, i: usize, j: usize) -> &mut Self {
        self.m.add_entry(i, j, &MultiPoly::int(c));
        self
    }

    fn done(&mut self, scalar: MultiPoly) -> LieElement {
        LieElement::Matrix(self.m.scale(&scalar))
    }
}

/// The printed Jacobson generators of `sl(n)`, `o(2n+1)`, `sp(2n)`, `o(2n)`.
pub fn classical_generators(family: ClassicalFamily, n: usize) -> Result<GeneratorTriple> {
    if n < family.min_n() {
        return Err(Error::RankTooSmall {
            family: family.name(),
            n,
            min: family.min_n(),
        });
    }
    let size = family.matrix_size(n);
    let t = MultiPoly::t();
    let one = MultiPoly::one();
    let ni = n as i64;
    let (x, y, z) = match family {
        ClassicalFamily::Sl => {
            let mut x = Builder::new(size);
            let mut y = Builder::new(size);
            let mut z = Builder::new(size);
            for i in 1..n {
                x.e((i * (n - i)) as i64, i, i + 1);
                y.e(1, i + 1, i);
            }
            for i in 1..=n - 2 {
                z.e(1, i + 2, i);
            }
            (x.done(one.clone()), y.done(one), z.done(t))
        }
        ClassicalFamily::OOdd => {
            let mut x = Builder::new(size);
            x.e(ni * (ni + 1), n + 1, 2 * n + 1).e(-ni * (ni + 1), n, n + 1);
            for i in 1..n {
                let c = (i * (2 * n + 1 - i)) as i64;
                x.e(c, i, i + 1).e(-c, n + i + 2, n + i + 1);
            }
            let mut y = Builder::new(size);
            y.e(1, 2 * n + 1, n + 1).e(-1, n + 1, n);
            for i in 1..n {
                y.e(1, i + 1, i).e(-1, n + i + 1, n + i + 2);
            }
            let mut z = Builder::new(size);
            z.e(1, 2 * n - 1, n + 1).e(-1, n + 1, n - 2);
            z.e(-1, 2 * n + 1, n - 1).e(1, 2 * n, n);
            for i in 1..=n.saturating_sub(3) {
                z.e(1, i + 3, i).e(-1, n + i + 1, n + i + 4);
            }
            (x.done(one.clone()), y.done(one), z.done(t))
        }
        ClassicalFamily::Sp => {
            let mut x = Builder::new(size);
            x.e(ni * ni, n, 2 * n);
            for i in 1..n {
                let c = (i * (2 * n - i)) as i64;
                x.e(c, i, i + 1).e(-c, n + i + 1, n + i);
            }
            let mut y = Builder::new(size);
            y.e(1, 2 * n, n);
            for i in 1..n {
                y.e(1, i + 1, i).e(-1, n + i, n + i + 1);
            }
            let mut z = Builder::new(size);
            z.e(1, 2 * n, n - 2).e(1, 2 * n - 2, n).e(-1, 2 * n - 1, n - 1);
            for i in 1..=n.saturating_sub(3) {
                z.e(1, i + 3, i).e(-1, n + i, n + i + 3);
            }
            (x.done(one.clone()), y.done(one), z.done(t))
        }
        ClassicalFamily::OEven => {
            // the printed g_{2n,2n-1} inside x is read as the matrix unit E_{2n,2n-1}
            let mut x = Builder::new(size);
            let c = ni * (ni - 1) / 2;
            x.e(c, n - 1, n).e(-c, 2 * n, 2 * n - 1).e(c, n - 1, 2 * n).e(-c, n, 2 * n - 1);
            for i in 1..=n - 2 {
                let c = (i * (2 * n - 1 - i)) as i64;
                x.e(c, i, i + 1).e(-c, n + i + 1, n + i);
            }
            let mut y = Builder::new(size);
            y.e(1, 2 * n, n - 1).e(-1, 2 * n - 1, n);
            for i in 1..n {
                y.e(1, i + 1, i).e(-1, n + i, n + i + 1);
            }
            let mut z = Builder::new(size);
            z.e(1, n, 1).e(-1, n + 1, 2 * n).e(1, n + 1, n).e(-1, 2 * n, 1);
            let scale = Rational::new(One::one(), factorial(2 * n as u32 - 2));
            (x.done(one.clone()), y.done(one), z.done(t.scale(&scale)))
        }
    };
    GeneratorTriple::new(Algebra::Matrix { size }, x, y, z, family.z_weight(n))
}

fn as_matrix(e: &LieElement) -> Result<&SparseMatrix> {
    match e {
        LieElement::Matrix(m) => Ok(m),
        other => Err(Error::BackendMismatch(format!("expected matrix, got {}", other.backend_name()))),
    }
}

/// Solves `XᵀG + GX = 0` for all `X` in `elements` (at `t = 1`). Returns the
/// solution space basis, each normalized to leading entry 1.
pub fn invariant_forms(elements: &[LieElement]) -> Result<Vec<SparseMatrix>> {
    let mats: Vec<SparseMatrix> = elements
        .iter()
        .map(|e| as_matrix(e).map(|m| m.specialize(Var::T, &int(1))))
        .collect::<Result<_>>()?;
    let Some(size) = mats.first().map(|m| m.size()) else {
        return Ok(Vec::new());
    };
    // column for unknown G_ab: (i,b) += X_ai ; (a,j) += X_bj
    let mut cols: Vec<SparseVec<(usize, usize, usize)>> = Vec::new();
    for a in 1..=size {
        for b in 1..=size {
            let mut col: SparseVec<(usize, usize, usize)> = BTreeMap::new();
            for (idx, x) in mats.iter().enumerate() {
                if x.size() != size {
                    return Err(Error::SizeMismatch {
                        expected: size,
                        found: x.size(),
                    });
                }
                for ((r, c), v) in x.entries() {
                    let v = v.as_constant().expect("specialized");
                    if *r == a {
                        *col.entry((idx, *c, b)).or_insert_with(Rational::zero) += &v;
                    }
                    if *r == b {
                        *col.entry((idx, a, *c)).or_insert_with(Rational::zero) += &v;
                    }
                }
            }
            col.retain(|_, v| !v.is_zero());
            cols.push(col);
        }
    }
    let kernel = match solve(&cols, &BTreeMap::new()) {
        Solution::Family { kernel, .. } => kernel,
        _ => Vec::new(),
    };
    Ok(kernel
        .into_iter()
        .map(|k| {
            let lead = k.iter().find(|c| !c.is_zero()).cloned().unwrap_or_else(Rational::one);
            let sign = if lead.is_negative() { -Rational::one() } else { Rational::one() };
            let norm = sign / lead.abs();
            SparseMatrix::from_entries(
                size,
                k.iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(idx, c)| ((idx / size + 1, idx % size + 1), MultiPoly::constant(c * &norm))),
            )
        })
        .collect())
}

/// True iff every element satisfies `XᵀG + GX = 0`.
pub fn form_invariance_check(elements: &[LieElement], g: &SparseMatrix) -> Result<bool> {
    for e in elements {
        let x = as_matrix(e)?;
        if x.size() != g.size() {
            return Err(Error::SizeMismatch {
                expected: g.size(),
                found: x.size(),
            });
        }
        if !x.transpose().mul(g)?.add(&g.mul(x)?)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(n: usize, i: usize, j: usize) -> SparseMatrix {
        SparseMatrix::unit(n, i, j)
    }

    #[test]
    fn sl3_printed() {
        let tr = classical_generators(ClassicalFamily::Sl, 3).unwrap();
        let x = e(3, 1, 2).add(&e(3, 2, 3)).unwrap().scale(&MultiPoly::int(2));
        assert_eq!(tr.x, LieElement::Matrix(x));
        assert_eq!(tr.z, LieElement::Matrix(e(3, 3, 1).scale(&MultiPoly::t())));
        let hz = tr.algebra.bracket(&tr.h, &tr.z).unwrap();
        assert_eq!(hz, tr.z.scale(&MultiPoly::int(-4)));
    }

    #[test]
    fn sp3_has_n_squared_entry() {
        let tr = classical_generators(ClassicalFamily::Sp, 3).unwrap();
        let LieElement::Matrix(x) = &tr.x else { panic!() };
        assert_eq!(x.get(3, 6), MultiPoly::int(9));
    }

    #[test]
    fn o8_z_normalization() {
        let tr = classical_generators(ClassicalFamily::OEven, 4).unwrap();
        let c = MultiPoly::t().scale(&Rational::new(1.into(), 720.into()));
        let z = e(8, 4, 1).sub(&e(8, 5, 8)).unwrap().add(&e(8, 5, 4)).unwrap().sub(&e(8, 8, 1)).unwrap();
        assert_eq!(tr.z, LieElement::Matrix(z.scale(&c)));
        assert_eq!(tr.r, 6);
    }

    #[test]
    fn printed_triples_satisfy_base_relations() {
        let cases = [(ClassicalFamily::Sl, 3..=8), (ClassicalFamily::OOdd, 3..=6), (ClassicalFamily::Sp, 3..=6), (ClassicalFamily::OEven, 4..=6)];
        for (fam, ns) in cases {
            for n in ns {
                let tr = classical_generators(fam, n).unwrap_or_else(|e| panic!("{} {n}: {e}", fam.name()));
                assert!(tr.base_residuals().unwrap().all_zero());
            }
        }
    }

    #[test]
    fn rank_too_small() {
        assert_eq!(
            classical_generators(ClassicalFamily::OEven, 3).unwrap_err(),
            Error::RankTooSmall { family: "o_even", n: 3, min: 4 }
        );
        assert!(classical_generators(ClassicalFamily::Sl, 2).is_err());
    }

    #[test]
    fn sl2_preserves_antidiagonal_form() {
        let g = e(2, 1, 2).sub(&e(2, 2, 1)).unwrap();
        let basis = [e(2, 1, 2), e(2, 1, 1).sub(&e(2, 2, 2)).unwrap(), e(2, 2, 1)].map(LieElement::Matrix);
        assert!(form_invariance_check(&basis, &g).unwrap());
    }

    #[test]
    fn sl3_preserves_no_form() {
        let tr = classical_generators(ClassicalFamily::Sl, 3).unwrap();
        let gens = [tr.x.clone(), tr.y.clone(), tr.z.clone()];
        assert!(invariant_forms(&gens).unwrap().is_empty());
        assert!(!form_invariance_check(&gens, &SparseMatrix::identity(3)).unwrap());
        let wrong = SparseMatrix::identity(4);
        assert!(form_invariance_check(&gens, &wrong).is_err());
    }

    #[test]
    fn o7_form_is_recovered() {
        let tr = classical_generators(ClassicalFamily::OOdd, 3).unwrap();
        let gens = [tr.x.clone(), tr.y.clone(), tr.z.clone()];
        let forms = invariant_forms(&gens).unwrap();
        assert_eq!(forms.len(), 1);
        assert!(forms[0].is_symmetric());
        assert_eq!(forms[0].rank(), Some(7));
        assert!(form_invariance_check(&gens, &forms[0]).unwrap());
    }
}
