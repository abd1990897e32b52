use std::collections::BTreeMap;
use std::fmt;

use num_traits::One;

use crate::arith::{int, MultiPoly, Rational, Var};
use crate::error::{Error, Result};

pub const MAX_ORDER: u32 = 24;

/// `Σ_k c_k(u) D^k` with `D = d/du`, coefficients to the left.
#[derive(Clone, Default, PartialEq, Eq, Debug)]
pub struct DiffOperator {
    terms: BTreeMap<u32, MultiPoly>,
}

fn binomial(n: u32, k: u32) -> i64 {
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64)
}

impl DiffOperator {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_terms<I: IntoIterator<Item = (u32, MultiPoly)>>(it: I) -> Result<Self> {
        let mut out = DiffOperator::zero();
        for (k, c) in it {
            if k > MAX_ORDER {
                return Err(Error::OrderBound(k));
            }
            out.add_term(k, &c);
        }
        Ok(out)
    }

    /// `c · D^k`
    pub fn term(c: MultiPoly, k: u32) -> Result<Self> {
        Self::from_terms([(k, c)])
    }

    pub fn scalar(c: MultiPoly) -> Self {
        Self::from_terms([(0, c)]).expect("order 0")
    }

    pub fn u() -> Self {
        Self::scalar(MultiPoly::var(Var::U))
    }

    pub fn d() -> Self {
        Self::term(MultiPoly::one(), 1).expect("order 1")
    }

    fn add_term(&mut self, k: u32, c: &MultiPoly) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(k).or_default();
        *e += c;
        if e.is_zero() {
            self.terms.remove(&k);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&u32, &MultiPoly)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, k: u32) -> MultiPoly {
        self.terms.get(&k).cloned().unwrap_or_default()
    }

    pub fn order(&self) -> Option<u32> {
        self.terms.keys().next_back().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The scalar if this is an order-0 operator free of `u`.
    pub fn as_scalar(&self) -> Option<MultiPoly> {
        match self.order() {
            None => Some(MultiPoly::zero()),
            Some(0) => {
                let c = self.coefficient(0);
                (!c.contains(Var::U)).then_some(c)
            }
            _ => None,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(*k, c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&MultiPoly::int(-1))
    }

    pub fn scale(&self, c: &MultiPoly) -> Self {
        let mut out = DiffOperator::zero();
        for (k, v) in &self.terms {
            out.add_term(*k, &(v * c));
        }
        out
    }

    pub fn map_coefficients(&self, f: impl Fn(&MultiPoly) -> MultiPoly) -> Self {
        let mut out = DiffOperator::zero();
        for (k, v) in &self.terms {
            out.add_term(*k, &f(v));
        }
        out
    }

    /// Normal-ordered product: `(a D^i)(b D^j) = Σ_m C(i,m) a b^(m) D^(i-m+j)`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        let mut out = DiffOperator::zero();
        for (&i, a) in &self.terms {
            for (&j, b) in &other.terms {
                if i + j > MAX_ORDER {
                    return Err(Error::OrderBound(i + j));
                }
                let mut db = b.clone();
                for m in 0..=i {
                    if db.is_zero() {
                        break;
                    }
                    let c = a * &db;
                    out.add_term(i - m + j, &c.scale(&int(binomial(i, m))));
                    db = db.derivative(Var::U);
                }
            }
        }
        Ok(out)
    }

    pub fn commutator(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(other)?.sub(&other.mul(self)?))
    }

    pub fn pow(&self, e: u32) -> Result<Self> {
        let mut acc = DiffOperator::scalar(MultiPoly::one());
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }
}

impl fmt::Display for DiffOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(k, c)| {
                let d = match k {
                    0 => String::new(),
                    1 => "D".to_string(),
                    k => format!("D^{k}"),
                };
                if d.is_empty() {
                    format!("({c})")
                } else if c.is_one() {
                    d
                } else if c.as_constant().is_some_and(|r| r == -Rational::one()) {
                    format!("-{d}")
                } else {
                    format!("({c})*{d}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn lam() -> MultiPoly {
        MultiPoly::lambda()
    }

    #[test]
    fn canonical_commutation() {
        let du = DiffOperator::d().mul(&DiffOperator::u()).unwrap();
        let expect = DiffOperator::u().mul(&DiffOperator::d()).unwrap().add(&DiffOperator::scalar(MultiPoly::one()));
        assert_eq!(du, expect);
    }

    #[test]
    fn bracket_gives_cartan() {
        let u = MultiPoly::var(Var::U);
        let x = DiffOperator::from_terms([(1, u.pow(2)), (0, -(&lam() - &MultiPoly::one()) * &u)]).unwrap();
        let y = DiffOperator::d().neg();
        let h = x.commutator(&y).unwrap();
        let expect = DiffOperator::from_terms([(1, MultiPoly::int(2) * &u), (0, &MultiPoly::one() - &lam())]).unwrap();
        assert_eq!(h, expect);
        let hx = h.commutator(&x).unwrap();
        assert_eq!(hx, x.scale(&MultiPoly::int(2)));
    }

    #[test]
    fn order_bound_enforced() {
        let d = DiffOperator::term(MultiPoly::one(), 13).unwrap();
        assert_eq!(d.mul(&d), Err(Error::OrderBound(26)));
        assert!(DiffOperator::term(MultiPoly::one(), 25).is_err());
    }

    fn arb_op() -> impl Strategy<Value = DiffOperator> {
        prop::collection::vec((0u32..3, 0u32..3, -3i64..4), 0..4).prop_map(|ts| {
            DiffOperator::from_terms(ts.into_iter().map(|(k, e, c)| (k, MultiPoly::var(Var::U).pow(e).scale(&int(c))))).unwrap()
        })
    }

    proptest! {
        #[test]
        fn product_is_associative(a in arb_op(), b in arb_op(), c in arb_op()) {
            let l = a.mul(&b).unwrap().mul(&c).unwrap();
            let r = a.mul(&b.mul(&c).unwrap()).unwrap();
            prop_assert_eq!(l, r);
        }
    }
}
