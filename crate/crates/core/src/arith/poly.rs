use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use super::Rational;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    T,
    Lambda,
    U,
    Q,
    P,
}

impl Var {
    pub const ALL: [Var; 5] = [Var::T, Var::Lambda, Var::U, Var::Q, Var::P];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Var::T => "t",
            Var::Lambda => "lambda",
            Var::U => "u",
            Var::Q => "q",
            Var::P => "p",
        }
    }
}

/// Exponent vector over `[t, λ, u, q, p]`.
pub type Monomial = [u32; 5];

pub(crate) fn unit_monomial(v: Var, e: u32) -> Monomial {
    let mut m = [0; 5];
    m[v.index()] = e;
    m
}

fn mono_mul(a: &Monomial, b: &Monomial) -> Monomial {
    let mut m = *a;
    for i in 0..5 {
        m[i] += b[i];
    }
    m
}

/// Sparse polynomial with rational coefficients. Zero coefficients are
/// never stored, so derived equality is mathematical equality.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    terms: BTreeMap<Monomial, Rational>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, [0; 5])
    }

    pub fn int(n: i64) -> Self {
        Self::constant(super::int(n))
    }

    pub fn var(v: Var) -> Self {
        Self::monomial(Rational::one(), unit_monomial(v, 1))
    }

    pub fn t() -> Self {
        Self::var(Var::T)
    }

    pub fn lambda() -> Self {
        Self::var(Var::Lambda)
    }

    pub fn monomial(c: Rational, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MultiPoly { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(it: I) -> Self {
        let mut p = MultiPoly::zero();
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Monomial, Rational)> {
        self.terms.into_iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&[0; 5]).cloned(),
            _ => None,
        }
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// `self += c * m * other`
    pub fn add_scaled(&mut self, other: &MultiPoly, c: &Rational, m: &Monomial) {
        if c.is_zero() {
            return;
        }
        for (om, oc) in &other.terms {
            self.add_term(mono_mul(om, m), oc * c);
        }
    }

    pub fn add_mul(&mut self, a: &MultiPoly, b: &MultiPoly) {
        for (bm, bc) in &b.terms {
            self.add_scaled(a, bc, bm);
        }
    }

    pub fn scale(&self, c: &Rational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero();
        }
        MultiPoly {
            terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut acc = MultiPoly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn degree_in(&self, v: Var) -> Option<u32> {
        self.terms.keys().map(|m| m[v.index()]).max()
    }

    pub fn min_degree_in(&self, v: Var) -> Option<u32> {
        self.terms.keys().map(|m| m[v.index()]).min()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.iter().sum()).max()
    }

    pub fn contains(&self, v: Var) -> bool {
        self.terms.keys().any(|m| m[v.index()] > 0)
    }

    /// Exact division by `c * m`; fails if some term lacks the monomial.
    pub fn div_monomial(&self, c: &Rational, m: &Monomial) -> Result<MultiPoly> {
        if c.is_zero() {
            return Err(Error::NonDivisible {
                dividend: self.to_string(),
                divisor: "0".into(),
            });
        }
        let inv = c.recip();
        let mut out = MultiPoly::zero();
        for (tm, tc) in &self.terms {
            let mut q = [0; 5];
            for i in 0..5 {
                if tm[i] < m[i] {
                    return Err(Error::NonDivisible {
                        dividend: self.to_string(),
                        divisor: MultiPoly::monomial(c.clone(), *m).to_string(),
                    });
                }
                q[i] = tm[i] - m[i];
            }
            out.terms.insert(q, tc * &inv);
        }
        Ok(out)
    }

    /// Exact division by a single-term polynomial.
    pub fn exact_div(&self, divisor: &MultiPoly) -> Result<MultiPoly> {
        match divisor.terms.len() {
            1 => {
                let (m, c) = divisor.terms.iter().next().unwrap();
                self.div_monomial(c, m)
            }
            _ => Err(Error::NonDivisible {
                dividend: self.to_string(),
                divisor: divisor.to_string(),
            }),
        }
    }

    /// Replaces `v` by the polynomial `value`.
    pub fn substitute(&self, v: Var, value: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero();
        let mut powers: Vec<MultiPoly> = vec![MultiPoly::one()];
        for (m, c) in &self.terms {
            let e = m[v.index()] as usize;
            while powers.len() <= e {
                let next = powers.last().unwrap() * value;
                powers.push(next);
            }
            let mut rest = *m;
            rest[v.index()] = 0;
            out.add_scaled(&powers[e], c, &rest);
        }
        out
    }

    pub fn specialize(&self, v: Var, value: &Rational) -> MultiPoly {
        self.substitute(v, &MultiPoly::constant(value.clone()))
    }

    /// Groups terms by the exponent of `v`; the returned coefficients are free of `v`.
    pub fn split_by(&self, v: Var) -> BTreeMap<u32, MultiPoly> {
        let mut out: BTreeMap<u32, MultiPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut rest = *m;
            rest[v.index()] = 0;
            out.entry(m[v.index()]).or_default().add_term(rest, c.clone());
        }
        out
    }

    pub fn derivative(&self, v: Var) -> MultiPoly {
        let i = v.index();
        let mut out = MultiPoly::zero();
        for (m, c) in &self.terms {
            if m[i] > 0 {
                let mut d = *m;
                d[i] -= 1;
                out.add_term(d, c * super::int(m[i] as i64));
            }
        }
        out
    }

    pub fn max_height(&self) -> u64 {
        self.terms.values().map(super::height).max().unwrap_or(0)
    }
}

fn fmt_monomial(m: &Monomial) -> String {
    let mut parts = Vec::new();
    for v in Var::ALL {
        match m[v.index()] {
            0 => {}
            1 => parts.push(v.name().to_string()),
            e => parts.push(format!("{}^{}", v.name(), e)),
        }
    }
    parts.join("*")
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        // highest total degree first
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|a, b| {
            let da: u32 = a.0.iter().sum();
            let db: u32 = b.0.iter().sum();
            db.cmp(&da).then_with(|| b.0.cmp(a.0))
        });
        for (k, (m, c)) in terms.into_iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            let mono = fmt_monomial(m);
            if mono.is_empty() {
                write!(f, "{}", a)?;
            } else if a.is_one() {
                write!(f, "{}", mono)?;
            } else {
                write!(f, "{}*{}", a, mono)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly({})", self)
    }
}

impl Serialize for MultiPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl From<Rational> for MultiPoly {
    fn from(c: Rational) -> Self {
        MultiPoly::constant(c)
    }
}

impl From<i64> for MultiPoly {
    fn from(n: i64) -> Self {
        MultiPoly::int(n)
    }
}

impl AddAssign<&MultiPoly> for MultiPoly {
    fn add_assign(&mut self, rhs: &MultiPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, c.clone());
        }
    }
}

impl SubAssign<&MultiPoly> for MultiPoly {
    fn sub_assign(&mut self, rhs: &MultiPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, -c);
        }
    }
}

impl Add<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero();
        out.add_mul(self, rhs);
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

macro_rules! owned_binop {
    ($tr:ident, $f:ident) => {
        impl $tr<MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $f(self, rhs: MultiPoly) -> MultiPoly {
                (&self).$f(&rhs)
            }
        }
        impl $tr<&MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $f(self, rhs: &MultiPoly) -> MultiPoly {
                (&self).$f(rhs)
            }
        }
        impl $tr<MultiPoly> for &MultiPoly {
            type Output = MultiPoly;
            fn $f(self, rhs: MultiPoly) -> MultiPoly {
                self.$f(&rhs)
            }
        }
    };
}

owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};
    use proptest::prelude::*;

    fn t() -> MultiPoly {
        MultiPoly::t()
    }
    fn l() -> MultiPoly {
        MultiPoly::lambda()
    }

    #[test]
    fn difference_of_squares() {
        let p = (&t() + &l()) * (&t() - &l());
        let expect = t().pow(2) - l().pow(2);
        assert_eq!(p, expect);
        assert_eq!(p.len(), 2);
    }

    #[test]
    fn scaled_square_expands() {
        let p = MultiPoly::int(24) * t().pow(2) * (l().pow(2) - MultiPoly::int(4));
        let expect = MultiPoly::int(24) * t().pow(2) * l().pow(2) - MultiPoly::int(96) * t().pow(2);
        assert_eq!(p, expect);
        assert_eq!(p.to_string(), "24*t^2*lambda^2 - 96*t^2");
    }

    #[test]
    fn monomial_division() {
        let p = t().pow(2) * l();
        let err = p.div_monomial(&int(1), &unit_monomial(Var::T, 3)).unwrap_err();
        assert!(matches!(err, Error::NonDivisible { .. }));
        let q = p.div_monomial(&int(2), &unit_monomial(Var::T, 1)).unwrap();
        assert_eq!(q, (t() * l()).scale(&rat(1, 2)));
    }

    #[test]
    fn substitute_and_split() {
        let p = t().pow(2) * l() + t();
        let s = p.substitute(Var::T, &(t() * l()));
        assert_eq!(s, t().pow(2) * l().pow(3) + t() * l());
        let parts = p.split_by(Var::T);
        assert_eq!(parts[&2], l());
        assert_eq!(parts[&1], MultiPoly::one());
        assert_eq!(p.specialize(Var::T, &int(2)), MultiPoly::int(4) * l() + MultiPoly::int(2));
    }

    #[test]
    fn derivative_of_power() {
        let q = MultiPoly::var(Var::Q);
        assert_eq!(q.pow(3).derivative(Var::Q), MultiPoly::int(3) * q.pow(2));
        assert!(MultiPoly::int(5).derivative(Var::Q).is_zero());
    }

    pub(crate) fn arb_poly() -> impl Strategy<Value = MultiPoly> {
        prop::collection::vec(((0u32..3, 0u32..3, 0u32..2), -6i64..7, 1i64..4), 0..5).prop_map(|ts| {
            MultiPoly::from_terms(
                ts.into_iter()
                    .map(|((a, b, c), n, d)| ([a, b, c, 0, 0], rat(n, d))),
            )
        })
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        }

        #[test]
        fn add_sub_is_structural(a in arb_poly(), b in arb_poly()) {
            let back = &(&a + &b) - &b;
            prop_assert_eq!(&back, &a);
            prop_assert_eq!(back.len(), a.len());
        }
    }
}
