use num_traits::Signed;

use crate::arith::{MultiPoly, Var};
use crate::error::{Error, Result};
use crate::presentations::{CoeffExpr, Relation, Side, Term};

use super::realization::WeylKind;

/// Exponent `p` in `t ↦ t/λ^p` that makes every relation of the family
/// converge: 1 for `sl(λ)`, 2 for `o/sp(λ)`.
pub fn limit_exponent(kind: WeylKind) -> u32 {
    kind.z_order() - 1
}

fn limit_coefficient(c: &MultiPoly, p: u32) -> Result<MultiPoly> {
    let (ti, li) = (Var::T.index(), Var::Lambda.index());
    let mut out = MultiPoly::zero();
    for (m, x) in c.terms() {
        let net = m[li] as i64 - p as i64 * m[ti] as i64;
        if net > 0 {
            return Err(Error::DivergentLimit { degree: net });
        }
        if net == 0 {
            let mut m = *m;
            m[li] = 0;
            out.add_term(m, x.clone());
        }
    }
    Ok(out)
}

fn limit_side(s: &Side, p: u32) -> Result<Side> {
    let mut terms = Vec::new();
    for t in &s.terms {
        let c = match &t.coeff {
            Some(c) => c.eval_known(None)?,
            None => MultiPoly::one(),
        };
        let c = limit_coefficient(&c, p)?;
        if c.is_zero() {
            continue;
        }
        let lead_neg = c.terms().next_back().is_some_and(|(_, x)| x.is_negative());
        let c = if lead_neg { -c } else { c };
        terms.push(Term {
            neg: t.neg != lead_neg,
            coeff: if c.is_one() { None } else { Some(CoeffExpr::from_poly(&c)) },
            word: t.word.clone(),
        });
    }
    Ok(Side { terms })
}

/// Substitutes `t ↦ t/λ^p` in the written coefficients and keeps the
/// `λ⁰` part. Fails with `DivergentLimit` when a coefficient grows.
pub fn formal_limit_relation(rel: &Relation, p: u32) -> Result<Relation> {
    Ok(Relation {
        lhs: limit_side(&rel.lhs, p)?,
        rhs: limit_side(&rel.rhs, p)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentations::parse_relation;

    #[test]
    fn sl_limit() {
        let r = parse_relation("3*[z1,z2] - 2*[z,z3] = 24*t^2*(lambda^2-4)*y").unwrap();
        let l = formal_limit_relation(&r, 1).unwrap();
        assert_eq!(l.to_string(), "3*[z1,z2] - 2*[z,z3] = 24*t^2*y");
    }

    #[test]
    fn divergence_is_reported() {
        let r = parse_relation("2*[z1,z2] - [z,z3] = 72*t*(lambda^2-19)*z").unwrap();
        assert_eq!(formal_limit_relation(&r, 1), Err(Error::DivergentLimit { degree: 1 }));
        let l = formal_limit_relation(&r, 2).unwrap();
        assert_eq!(l.to_string(), "2*[z1,z2] - [z,z3] = 72*t*z");
    }

    #[test]
    fn vanishing_terms_drop() {
        let r = parse_relation("[z,[z,z1]] = 5*t*z1 - t*lambda*z").unwrap();
        let l = formal_limit_relation(&r, 2).unwrap();
        assert_eq!(l.to_string(), "[z,[z,z1]] = 0");
    }
}
