//! Exact scalars: big rationals, sparse polynomials in the fixed
//! indeterminates `t, λ, u, q, p`, and Laurent fractions in `λ`.

mod laurent;
mod poly;

pub use laurent::LaurentInLambda;
pub use poly::{Monomial, MultiPoly, Var};

use num_bigint::BigInt;
use num_traits::{One, Zero};

pub type Rational = num_rational::BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// Parses `"a"` or `"a/b"` into a rational.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((a, b)) => {
            let a: BigInt = a.trim().parse().ok()?;
            let b: BigInt = b.trim().parse().ok()?;
            if b.is_zero() {
                None
            } else {
                Some(Rational::new(a, b))
            }
        }
        None => Some(Rational::from_integer(s.parse().ok()?)),
    }
}

/// Number of bits in the larger of numerator and denominator.
pub fn height(r: &Rational) -> u64 {
    r.numer().bits().max(r.denom().bits())
}
