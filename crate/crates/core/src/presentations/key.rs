use std::fmt;
use std::str::FromStr;

use crate::chevalley::{exceptional_jacobson_generators, CartanType};
use crate::error::{Error, Result};
use crate::lie::{classical_generators, ClassicalFamily, GeneratorTriple};
use crate::weyl::{realization_generators, WeylKind};

/// Names one algebra of the catalog, e.g. `sl:5`, `e7`, `osp_lambda`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AlgebraKey {
    Classical(ClassicalFamily, usize),
    Exceptional(CartanType),
    Weyl(WeylKind),
    /// The `λ → ∞` limits; they have catalog entries but no triple.
    Star(WeylKind),
}

impl FromStr for AlgebraKey {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidKey(s.to_string());
        if let Some((fam, n)) = s.split_once(':') {
            let family = match fam {
                "sl" => ClassicalFamily::Sl,
                "o_odd" => ClassicalFamily::OOdd,
                "sp" => ClassicalFamily::Sp,
                "o_even" => ClassicalFamily::OEven,
                _ => return Err(bad()),
            };
            let n: usize = n.parse().map_err(|_| bad())?;
            if n < family.min_n() || n > 64 {
                return Err(bad());
            }
            return Ok(AlgebraKey::Classical(family, n));
        }
        Ok(match s {
            "g2" => AlgebraKey::Exceptional(CartanType::G2),
            "f4" => AlgebraKey::Exceptional(CartanType::F4),
            "e6" => AlgebraKey::Exceptional(CartanType::E6),
            "e7" => AlgebraKey::Exceptional(CartanType::E7),
            "e8" => AlgebraKey::Exceptional(CartanType::E8),
            "sl_lambda" => AlgebraKey::Weyl(WeylKind::SlLambda),
            "osp_lambda" => AlgebraKey::Weyl(WeylKind::OspLambda),
            "sl_star" => AlgebraKey::Star(WeylKind::SlLambda),
            "osp_star" => AlgebraKey::Star(WeylKind::OspLambda),
            _ => return Err(bad()),
        })
    }
}

impl fmt::Display for AlgebraKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraKey::Classical(fam, n) => write!(f, "{}:{n}", fam.name()),
            AlgebraKey::Exceptional(ty) => write!(f, "{}", ty.to_string().to_lowercase()),
            AlgebraKey::Weyl(WeylKind::SlLambda) => write!(f, "sl_lambda"),
            AlgebraKey::Weyl(WeylKind::OspLambda) => write!(f, "osp_lambda"),
            AlgebraKey::Star(WeylKind::SlLambda) => write!(f, "sl_star"),
            AlgebraKey::Star(WeylKind::OspLambda) => write!(f, "osp_star"),
        }
    }
}

impl AlgebraKey {
    /// Value bound to `n` in catalog expressions.
    pub fn n(&self) -> Option<i64> {
        match self {
            AlgebraKey::Classical(_, n) => Some(*n as i64),
            _ => None,
        }
    }

    pub fn is_finite_dimensional(&self) -> bool {
        matches!(self, AlgebraKey::Classical(..) | AlgebraKey::Exceptional(_))
    }

    pub fn dim(&self) -> Option<usize> {
        match self {
            AlgebraKey::Classical(fam, n) => Some(fam.dim(*n)),
            AlgebraKey::Exceptional(ty) => Some(match ty {
                CartanType::G2 => 14,
                CartanType::F4 => 52,
                CartanType::E6 => 78,
                CartanType::E7 => 133,
                CartanType::E8 => 248,
                _ => unreachable!(),
            }),
            _ => None,
        }
    }

    pub fn triple(&self) -> Result<GeneratorTriple> {
        match self {
            AlgebraKey::Classical(fam, n) => classical_generators(*fam, *n),
            AlgebraKey::Exceptional(ty) => exceptional_jacobson_generators(*ty),
            AlgebraKey::Weyl(kind) => realization_generators(*kind),
            AlgebraKey::Star(_) => Err(Error::InvalidKey(format!("{self} has no generator triple"))),
        }
    }

    /// Highest weights of the adjoint module as listed in the table of
    /// exponents; for `o(2n)` this is the printed row, which is known not
    /// to match (see [`AlgebraKey::expected_exponents`]).
    pub fn printed_exponents(&self) -> Option<Vec<u32>> {
        let mut v = match *self {
            AlgebraKey::Classical(ClassicalFamily::Sl, n) => (1..n as u32).map(|i| 2 * i).collect(),
            AlgebraKey::Classical(ClassicalFamily::OOdd | ClassicalFamily::Sp, n) => {
                (1..=n as u32).map(|i| 4 * i - 2).collect()
            }
            AlgebraKey::Classical(ClassicalFamily::OEven, n) => {
                let mut v: Vec<u32> = (1..=n as u32).map(|i| 4 * i - 2).collect();
                v.push(2 * n as u32 - 2);
                v
            }
            AlgebraKey::Exceptional(ty) => match ty {
                CartanType::G2 => vec![2, 10],
                CartanType::F4 => vec![2, 10, 14, 22],
                CartanType::E6 => vec![2, 8, 10, 14, 16, 22],
                CartanType::E7 => vec![2, 10, 14, 18, 22, 26, 34],
                CartanType::E8 => vec![2, 14, 22, 26, 34, 38, 46, 58],
                _ => return None,
            },
            _ => return None,
        };
        v.sort_unstable();
        Some(v)
    }

    /// Twice the exponents: `{2,6,…,4n-6} ∪ {2n-2}` for `o(2n)`, the
    /// printed row otherwise.
    pub fn expected_exponents(&self) -> Option<Vec<u32>> {
        match *self {
            AlgebraKey::Classical(ClassicalFamily::OEven, n) => {
                let mut v: Vec<u32> = (1..n as u32).map(|i| 4 * i - 2).collect();
                v.push(2 * n as u32 - 2);
                v.sort_unstable();
                Some(v)
            }
            _ => self.printed_exponents(),
        }
    }

    /// Built-in catalog source for this key.
    pub fn catalog_source(&self) -> &'static str {
        match *self {
            AlgebraKey::Classical(ClassicalFamily::Sl, 3) => include_str!("../../catalog/sl3.rel"),
            AlgebraKey::Classical(ClassicalFamily::Sl, 4) => include_str!("../../catalog/sl4.rel"),
            AlgebraKey::Classical(ClassicalFamily::Sl, _) => include_str!("../../catalog/sl.rel"),
            AlgebraKey::Classical(ClassicalFamily::OOdd, _) => include_str!("../../catalog/o_odd.rel"),
            AlgebraKey::Classical(ClassicalFamily::Sp, _) => include_str!("../../catalog/sp.rel"),
            AlgebraKey::Classical(ClassicalFamily::OEven, 4) => include_str!("../../catalog/o_even4.rel"),
            AlgebraKey::Classical(ClassicalFamily::OEven, 5) => include_str!("../../catalog/o_even5.rel"),
            AlgebraKey::Classical(ClassicalFamily::OEven, _) => include_str!("../../catalog/o_even.rel"),
            AlgebraKey::Exceptional(CartanType::G2) => include_str!("../../catalog/g2.rel"),
            AlgebraKey::Exceptional(CartanType::F4) => include_str!("../../catalog/f4.rel"),
            AlgebraKey::Exceptional(CartanType::E6) => include_str!("../../catalog/e6.rel"),
            AlgebraKey::Exceptional(CartanType::E7) => include_str!("../../catalog/e7.rel"),
            AlgebraKey::Exceptional(_) => include_str!("../../catalog/e8.rel"),
            AlgebraKey::Weyl(WeylKind::SlLambda) => include_str!("../../catalog/sl_lambda.rel"),
            AlgebraKey::Weyl(WeylKind::OspLambda) => include_str!("../../catalog/osp_lambda.rel"),
            AlgebraKey::Star(WeylKind::SlLambda) => include_str!("../../catalog/sl_star.rel"),
            AlgebraKey::Star(WeylKind::OspLambda) => include_str!("../../catalog/osp_star.rel"),
        }
    }

    /// Every key exercised by the acceptance runs.
    pub fn standard_keys() -> Vec<AlgebraKey> {
        let mut keys = Vec::new();
        keys.extend((3..=8).map(|n| AlgebraKey::Classical(ClassicalFamily::Sl, n)));
        keys.extend((3..=6).map(|n| AlgebraKey::Classical(ClassicalFamily::OOdd, n)));
        keys.extend((3..=6).map(|n| AlgebraKey::Classical(ClassicalFamily::Sp, n)));
        keys.extend((4..=6).map(|n| AlgebraKey::Classical(ClassicalFamily::OEven, n)));
        keys.extend(
            [CartanType::G2, CartanType::F4, CartanType::E6, CartanType::E7, CartanType::E8].map(AlgebraKey::Exceptional),
        );
        keys.push(AlgebraKey::Weyl(WeylKind::SlLambda));
        keys.push(AlgebraKey::Weyl(WeylKind::OspLambda));
        keys
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn keys_round_trip() {
        for s in ["sl:5", "o_odd:3", "sp:6", "o_even:4", "g2", "e8", "sl_lambda", "osp_star"] {
            assert_eq!(s.parse::<AlgebraKey>().unwrap().to_string(), s);
        }
        for s in ["sl:2", "o_even:3", "sl", "h4", "sl:x", ""] {
            assert!(matches!(s.parse::<AlgebraKey>(), Err(Error::InvalidKey(_))), "{s}");
        }
    }

    #[test]
    fn exponent_rows_sum_to_dimension() {
        for key in AlgebraKey::standard_keys().into_iter().filter(|k| k.is_finite_dimensional()) {
            let dim: u32 = key.expected_exponents().unwrap().iter().map(|k| k + 1).sum();
            assert_eq!(dim as usize, key.dim().unwrap(), "{key}");
        }
        let o8 = AlgebraKey::Classical(ClassicalFamily::OEven, 4);
        assert_eq!(o8.printed_exponents().unwrap(), vec![2, 6, 6, 10, 14]);
        assert_eq!(o8.expected_exponents().unwrap(), vec![2, 6, 6, 10]);
    }
}
