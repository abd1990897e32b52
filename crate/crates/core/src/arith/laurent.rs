use std::fmt;

use super::{MultiPoly, Var};
use crate::error::{Error, Result};

/// `numerator / λ^den_exp`, kept with no common factor of `λ`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LaurentInLambda {
    numerator: MultiPoly,
    den_exp: u32,
}

impl LaurentInLambda {
    pub fn new(numerator: MultiPoly, den_exp: u32) -> Self {
        let common = if numerator.is_zero() {
            den_exp
        } else {
            numerator.min_degree_in(Var::Lambda).unwrap_or(0).min(den_exp)
        };
        let mut mono = [0; 5];
        mono[Var::Lambda.index()] = common;
        let numerator = numerator
            .div_monomial(&super::int(1), &mono)
            .expect("common lambda power divides every term");
        LaurentInLambda {
            numerator,
            den_exp: den_exp - common,
        }
    }

    pub fn from_poly(p: MultiPoly) -> Self {
        LaurentInLambda {
            numerator: p,
            den_exp: 0,
        }
    }

    pub fn numerator(&self) -> &MultiPoly {
        &self.numerator
    }

    pub fn den_exp(&self) -> u32 {
        self.den_exp
    }

    /// Largest net power of `λ` over all terms, or `None` for zero.
    pub fn top_degree(&self) -> Option<i64> {
        self.numerator
            .degree_in(Var::Lambda)
            .map(|d| d as i64 - self.den_exp as i64)
    }

    /// Limit as `λ → ∞`: the net-degree-zero part, with `λ` gone.
    pub fn limit_at_infinity(&self) -> Result<MultiPoly> {
        if let Some(top) = self.top_degree() {
            if top > 0 {
                return Err(Error::DivergentLimit { degree: top });
            }
        }
        let parts = self.numerator.split_by(Var::Lambda);
        Ok(parts.get(&self.den_exp).cloned().unwrap_or_default())
    }
}

impl fmt::Display for LaurentInLambda {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den_exp == 0 {
            write!(f, "{}", self.numerator)
        } else {
            write!(f, "({}) / lambda^{}", self.numerator, self.den_exp)
        }
    }
}
