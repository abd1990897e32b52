use std::fmt;

use crate::arith::{MultiPoly, Var};
use crate::error::{Error, Result};

/// Even-degree polynomial in the canonical pair `q, p`.
#[derive(Clone, Default, PartialEq, Eq, Debug)]
pub struct PoissonPoly(MultiPoly);

fn qp_degree_parity_ok(f: &MultiPoly) -> bool {
    f.terms().all(|(m, _)| (m[Var::Q.index()] + m[Var::P.index()]) % 2 == 0)
}

impl PoissonPoly {
    pub fn new(f: MultiPoly) -> Result<Self> {
        if !qp_degree_parity_ok(&f) {
            return Err(Error::OddDegreeInput);
        }
        Ok(PoissonPoly(f))
    }

    pub fn poly(&self) -> &MultiPoly {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        PoissonPoly(&self.0 + &o.0)
    }

    pub fn sub(&self, o: &Self) -> Self {
        PoissonPoly(&self.0 - &o.0)
    }

    pub fn scale(&self, c: &MultiPoly) -> Self {
        PoissonPoly(&self.0 * c)
    }

    pub fn map(&self, f: impl Fn(&MultiPoly) -> MultiPoly) -> Self {
        PoissonPoly(f(&self.0))
    }
}

/// `{f, g} = f_p g_q - f_q g_p`.
pub fn poisson_bracket(f: &PoissonPoly, g: &PoissonPoly) -> PoissonPoly {
    let a = f.0.derivative(Var::P) * g.0.derivative(Var::Q);
    let b = f.0.derivative(Var::Q) * g.0.derivative(Var::P);
    PoissonPoly(a - b)
}

pub fn checked_bracket(f: &MultiPoly, g: &MultiPoly) -> Result<PoissonPoly> {
    Ok(poisson_bracket(&PoissonPoly::new(f.clone())?, &PoissonPoly::new(g.clone())?))
}

/// `x = p²/2`, `y = -q²/2`; with this bracket `h = {x, y} = -pq`.
pub fn sl2_triple() -> (PoissonPoly, PoissonPoly, PoissonPoly) {
    let half = crate::arith::rat(1, 2);
    let x = PoissonPoly(MultiPoly::var(Var::P).pow(2).scale(&half));
    let y = PoissonPoly(MultiPoly::var(Var::Q).pow(2).scale(&-half));
    let h = poisson_bracket(&x, &y);
    (x, y, h)
}

impl fmt::Display for PoissonPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use proptest::prelude::*;

    fn q() -> MultiPoly {
        MultiPoly::var(Var::Q)
    }
    fn p() -> MultiPoly {
        MultiPoly::var(Var::P)
    }

    #[test]
    fn half_squares_bracket_to_pq() {
        let f = checked_bracket(&p().pow(2).scale(&rat(1, 2)), &q().pow(2).scale(&rat(1, 2))).unwrap();
        assert_eq!(f.poly(), &(p() * q()));
    }

    #[test]
    fn euler_scaling() {
        let f = checked_bracket(&q().pow(2), &(q() * p())).unwrap();
        assert_eq!(f.poly(), &(q().pow(2).scale(&rat(-2, 1))));
    }

    #[test]
    fn triple_satisfies_sl2() {
        let (x, y, h) = sl2_triple();
        assert_eq!(h.poly(), &(-(p() * q())));
        assert_eq!(poisson_bracket(&h, &x), x.scale(&MultiPoly::int(2)));
        assert_eq!(poisson_bracket(&h, &y), y.scale(&MultiPoly::int(-2)));
    }

    #[test]
    fn odd_degree_rejected() {
        assert_eq!(PoissonPoly::new(q()), Err(Error::OddDegreeInput));
    }

    fn arb_even() -> impl Strategy<Value = PoissonPoly> {
        prop::collection::vec((0u32..4, 0u32..4, -4i64..5), 0..4).prop_map(|ts| {
            let f = MultiPoly::from_terms(ts.into_iter().filter(|(a, b, _)| (a + b) % 2 == 0).map(|(a, b, c)| ([0, 0, 0, a, b], crate::arith::int(c))));
            PoissonPoly::new(f).unwrap()
        })
    }

    proptest! {
        #[test]
        fn lie_axioms(a in arb_even(), b in arb_even(), c in arb_even()) {
            prop_assert_eq!(poisson_bracket(&a, &b), poisson_bracket(&b, &a).scale(&MultiPoly::int(-1)));
            let j = poisson_bracket(&a, &poisson_bracket(&b, &c))
                .add(&poisson_bracket(&b, &poisson_bracket(&c, &a)))
                .add(&poisson_bracket(&c, &poisson_bracket(&a, &b)));
            prop_assert!(j.is_zero());
            prop_assert!(PoissonPoly::new(poisson_bracket(&a, &b).poly().clone()).is_ok());
        }
    }
}
