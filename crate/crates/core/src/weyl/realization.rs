use num_traits::Zero;

use crate::arith::{rat, MultiPoly, Rational, Var};
use crate::error::{Error, Result};
use crate::lie::{Algebra, GeneratorTriple, LieElement};
use crate::linalg::{solve, Echelon, Solution, SparseVec};
use crate::sl2::{decompose_elements, DecompositionProfile};

use super::diffop::DiffOperator;
use super::poisson::{sl2_triple, PoissonPoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum WeylKind {
    SlLambda,
    OspLambda,
}

impl WeylKind {
    pub fn z_order(self) -> u32 {
        match self {
            WeylKind::SlLambda => 2,
            WeylKind::OspLambda => 3,
        }
    }

    pub fn r(self) -> u32 {
        2 * self.z_order()
    }
}

/// `x = u²D - (λ-1)u`
pub fn x_operator() -> DiffOperator {
    let u = MultiPoly::var(Var::U);
    let lam1 = &MultiPoly::lambda() - &MultiPoly::one();
    DiffOperator::from_terms([(1, u.pow(2)), (0, -(&lam1 * &u))]).expect("order 1")
}

/// `y = -D`
pub fn y_operator() -> DiffOperator {
    DiffOperator::d().neg()
}

pub fn realization_generators(kind: WeylKind) -> Result<GeneratorTriple> {
    let z = DiffOperator::term(MultiPoly::t(), kind.z_order())?;
    GeneratorTriple::new(
        Algebra::Weyl,
        LieElement::Diff(x_operator()),
        LieElement::Diff(y_operator()),
        LieElement::Diff(z),
        kind.r(),
    )
}

/// Image of `Δ = 2(X⁺X⁻ + X⁻X⁺) + H²` with `X⁺ = x`, `X⁻ = y`.
pub fn casimir_image() -> Result<MultiPoly> {
    let (x, y) = (x_operator(), y_operator());
    let h = x.commutator(&y)?;
    let sym = x.mul(&y)?.add(&y.mul(&x)?);
    let delta = sym.scale(&MultiPoly::int(2)).add(&h.mul(&h)?);
    delta.as_scalar().ok_or_else(|| Error::NotScalar(delta.to_string()))
}

/// Spanning set `(ad x)^m y^k`, `m = 0..=2k`, of the component `L^{2k}` in
/// the image of the enveloping algebra.
pub fn component_basis(k: u32) -> Result<Vec<DiffOperator>> {
    let x = x_operator();
    let mut v = y_operator().pow(k)?;
    let mut out = Vec::with_capacity(2 * k as usize + 1);
    for _ in 0..=2 * k {
        out.push(v.clone());
        v = x.commutator(&v)?;
    }
    if !v.is_zero() {
        return Err(Error::NotDiagonalizable(format!("(ad x)^{} y^{k} is nonzero", 2 * k + 1)));
    }
    Ok(out)
}

fn op_vector(op: &DiffOperator) -> SparseVec<(u32, [u32; 5])> {
    let mut v = SparseVec::new();
    for (k, c) in op.terms() {
        for (m, x) in c.terms() {
            v.insert((*k, *m), x.clone());
        }
    }
    v
}

/// Sizes of the components `L^0, L^2, …, L^{2K}` as found in the image, at
/// a fixed numerical `λ`. Each is `2k + 1` and the components are
/// independent exactly when the image decomposes as one copy of each.
pub fn enveloping_spectrum(max_k: u32, lambda: &Rational) -> Result<DecompositionProfile> {
    let mut all = Echelon::new();
    let mut weights = Vec::new();
    for k in 0..=max_k {
        let basis = component_basis(k)?;
        let mut own = Echelon::new();
        for b in &basis {
            let b = b.map_coefficients(|c| c.specialize(Var::Lambda, lambda));
            let v = op_vector(&b);
            own.insert(&v);
            all.insert(&v);
        }
        if own.rank() != 2 * k as usize + 1 {
            return Err(Error::NotDiagonalizable(format!("component {k} has dimension {}", own.rank())));
        }
        weights.push(2 * k);
    }
    let profile = DecompositionProfile::from_weights(&weights);
    if all.rank() != profile.dim() {
        return Err(Error::NotDiagonalizable("components are not independent".into()));
    }
    Ok(profile)
}

/// `-1` on `L^{4k}`, `+1` on `L^{4k+2}`.
pub fn involution_sign(component_weight: u32) -> i64 {
    if component_weight.is_multiple_of(4) {
        -1
    } else {
        1
    }
}

/// Applies the component-wise involution to an operator in the image,
/// working at a fixed numerical `λ`.
pub fn apply_involution(op: &DiffOperator, lambda: &Rational) -> Result<DiffOperator> {
    let spec = |o: &DiffOperator| o.map_coefficients(|c| c.specialize(Var::Lambda, lambda));
    let op = spec(op);
    let top = op.order().unwrap_or(0);
    let mut cols = Vec::new();
    let mut ops = Vec::new();
    for k in 0..=top {
        for b in component_basis(k)? {
            let b = spec(&b);
            cols.push(op_vector(&b));
            ops.push((k, b));
        }
    }
    let coeffs = match solve(&cols, &op_vector(&op)) {
        Solution::Unique(c) => c,
        Solution::Family { particular, .. } => particular,
        Solution::Infeasible { .. } => return Err(Error::NotDiagonalizable(format!("{op} is outside the image"))),
    };
    let mut out = DiffOperator::zero();
    for (c, (k, b)) in coeffs.iter().zip(&ops) {
        if c.is_zero() {
            continue;
        }
        let s = Rational::from_integer(involution_sign(2 * k).into()) * c;
        out = out.add(&b.scale(&MultiPoly::constant(s)));
    }
    Ok(out)
}

/// Decomposition of the degree `0, 2, …, 2K` parts of the even Poisson
/// algebra under the triple `p²/2, -q²/2`.
pub fn poisson_spectrum(max_k: u32) -> Result<DecompositionProfile> {
    let (x, _, h) = sl2_triple();
    let mut basis = Vec::new();
    for k in 0..=max_k {
        let d = 2 * k;
        for a in 0..=d {
            let mono = MultiPoly::var(Var::Q).pow(a) * MultiPoly::var(Var::P).pow(d - a);
            basis.push(LieElement::Poisson(PoissonPoly::new(mono)?));
        }
    }
    decompose_elements(&Algebra::Poisson, &LieElement::Poisson(x), &LieElement::Poisson(h), &basis)
}

/// A generic rational `λ` used for numerical checks of the image.
pub fn generic_lambda() -> Rational {
    rat(37, 7)
}
