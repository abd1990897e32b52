use std::collections::{BTreeMap, HashMap};

use crate::arith::{int, MultiPoly, Var};
use crate::error::{Error, Result};
use crate::lie::{Algebra, GeneratorTriple, LieElement};
use crate::linalg::{solve, Solution, SparseVec};

use super::ast::{Relation, Scalar, Side, Word};

/// Evaluates words against a triple, caching every subword.
pub struct Evaluator<'a> {
    pub triple: &'a GeneratorTriple,
    pub n: Option<i64>,
    cache: HashMap<String, LieElement>,
}

impl<'a> Evaluator<'a> {
    pub fn new(triple: &'a GeneratorTriple, n: Option<i64>) -> Self {
        Evaluator {
            triple,
            n,
            cache: HashMap::new(),
        }
    }

    fn algebra(&self) -> &Algebra {
        &self.triple.algebra
    }

    pub fn word(&mut self, w: &Word) -> Result<LieElement> {
        let key = w.to_string();
        if let Some(v) = self.cache.get(&key) {
            return Ok(v.clone());
        }
        let v = match w {
            Word::X => self.triple.x.clone(),
            Word::Y => self.triple.y.clone(),
            Word::Z => self.triple.z.clone(),
            Word::H => self.triple.h.clone(),
            Word::Zi(i) => self.triple.z_i(*i as usize)?,
            Word::Bracket(a, b) => {
                let a = self.known_side(a)?;
                let b = self.known_side(b)?;
                self.algebra().bracket(&a, &b)?
            }
            Word::AdPow { op, exp, arg } => {
                let k = exp.eval_int(self.n)?;
                if k < 0 {
                    return Err(Error::InvalidUnknown(format!("negative exponent in {w}")));
                }
                let op = self.word(op)?;
                let arg = self.word(arg)?;
                self.algebra().ad_pow(&op, k as u32, &arg)?
            }
        };
        self.cache.insert(key, v.clone());
        Ok(v)
    }

    /// Value of a side, split into the known part and one element per
    /// unknown (the element that unknown multiplies).
    pub fn side(&mut self, s: &Side) -> Result<(LieElement, BTreeMap<String, LieElement>)> {
        let mut known = self.algebra().zero();
        let mut linear: BTreeMap<String, LieElement> = BTreeMap::new();
        for t in &s.terms {
            let w = self.word(&t.word)?;
            let scalar = match &t.coeff {
                Some(c) => c.eval(self.n)?,
                None => Scalar::Known(MultiPoly::one()),
            };
            let sign = if t.neg { MultiPoly::int(-1) } else { MultiPoly::one() };
            match scalar {
                Scalar::Known(c) => known = known.add(&w.scale(&(&c * &sign)))?,
                Scalar::Linear(u, c) => {
                    let v = w.scale(&(&c * &sign));
                    let slot = linear.entry(u).or_insert_with(|| self.triple.algebra.zero());
                    *slot = slot.add(&v)?;
                }
            }
        }
        Ok((known, linear))
    }

    fn known_side(&mut self, s: &Side) -> Result<LieElement> {
        let (v, lin) = self.side(s)?;
        if let Some(u) = lin.keys().next() {
            return Err(Error::InvalidUnknown(format!("unknown {u} inside a bracket")));
        }
        Ok(v)
    }
}

/// `lhs - rhs` for a relation without unknowns.
pub fn evaluate(rel: &Relation, triple: &GeneratorTriple, n: Option<i64>) -> Result<LieElement> {
    if let Some(u) = rel.unknowns().first() {
        return Err(Error::InvalidUnknown(format!("{u} must be solved for, not evaluated")));
    }
    let mut ev = Evaluator::new(triple, n);
    let l = ev.known_side(&rel.lhs)?;
    let r = ev.known_side(&rel.rhs)?;
    l.sub(&r)
}

#[derive(Clone, Debug, PartialEq)]
pub enum Recovery {
    Unique(BTreeMap<String, MultiPoly>),
    /// One solution plus the number of free directions.
    Family {
        particular: BTreeMap<String, MultiPoly>,
        freedom: usize,
    },
    /// The part of the target left after reducing by the reachable span.
    Infeasible {
        residual: SparseVec<(u64, [u32; 5])>,
    },
}

/// Solves for the unknown coefficients on the right side.
///
/// Each unknown is expanded as `Σ c_ab t^a λ^b` with rational `c_ab`, for
/// `a ≤ max(z-count of the left side, 2)` and, on the operator backend,
/// `b ≤ 4`; the resulting linear system is solved exactly.
pub fn recover_coefficients(rel: &Relation, triple: &GeneratorTriple, n: Option<i64>) -> Result<Recovery> {
    let mut ev = Evaluator::new(triple, n);
    let l = ev.known_side(&rel.lhs)?;
    let (rk, lin) = ev.side(&rel.rhs)?;
    let target = l.sub(&rk)?;
    let t_max = rel.lhs.z_count().unwrap_or(2).max(2);
    let l_max = if matches!(triple.algebra, Algebra::Weyl) { 4 } else { 0 };

    let mut cols: Vec<SparseVec<(u64, [u32; 5])>> = Vec::new();
    let mut labels: Vec<(String, [u32; 5])> = Vec::new();
    for (u, w) in &lin {
        for a in 0..=t_max {
            for b in 0..=l_max {
                let mut m = [0u32; 5];
                m[Var::T.index()] = a;
                m[Var::Lambda.index()] = b;
                let v = w.scale(&MultiPoly::monomial(int(1), m)).to_vector();
                if !v.is_empty() {
                    cols.push(v);
                    labels.push((u.clone(), m));
                }
            }
        }
    }
    let assemble = |coeffs: &[crate::arith::Rational]| -> BTreeMap<String, MultiPoly> {
        let mut out: BTreeMap<String, MultiPoly> = lin.keys().map(|u| (u.clone(), MultiPoly::zero())).collect();
        for ((u, m), c) in labels.iter().zip(coeffs) {
            out.get_mut(u).unwrap().add_term(*m, c.clone());
        }
        out
    };
    Ok(match solve(&cols, &target.to_vector()) {
        Solution::Unique(c) => Recovery::Unique(assemble(&c)),
        Solution::Family { particular, kernel } => Recovery::Family {
            particular: assemble(&particular),
            freedom: kernel.len(),
        },
        Solution::Infeasible { residual } => Recovery::Infeasible { residual },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::{classical_generators, ClassicalFamily};
    use crate::presentations::parse_relation;

    #[test]
    fn sl3_relations() {
        let tr = classical_generators(ClassicalFamily::Sl, 3).unwrap();
        for s in ["[z1,z] = 0", "[z1,z2] = 24*t^2*y", "(ad z1)^(n-1) z = 0"] {
            let r = parse_relation(s).unwrap();
            assert!(evaluate(&r, &tr, Some(3)).unwrap().is_zero(), "{s}");
        }
        let bad = parse_relation("[z1,z2] = 25*t^2*y").unwrap();
        assert!(!evaluate(&bad, &tr, Some(3)).unwrap().is_zero());
        let unbound = parse_relation("(ad z1)^(n-1) z = 0").unwrap();
        assert_eq!(evaluate(&unbound, &tr, None), Err(Error::UnboundParameter("n".into())));
    }

    #[test]
    fn recover_sl_constants() {
        let tr = classical_generators(ClassicalFamily::Sl, 5).unwrap();
        let r = parse_relation("3*[z1,z2] - 2*[z,z3] = c*y").unwrap();
        let Recovery::Unique(v) = recover_coefficients(&r, &tr, Some(5)).unwrap() else { panic!() };
        assert_eq!(v["c"], MultiPoly::t().pow(2).scale(&crate::arith::int(24 * 21)));

        // agrees with 576 t^2 (n^2 - 9) at n = 4 once [z2,[z,z2]] = -[z3,[z,z1]] is used
        let tr = classical_generators(ClassicalFamily::Sl, 4).unwrap();
        let r = parse_relation("[z3,[z,z1]] = c*z").unwrap();
        let Recovery::Unique(v) = recover_coefficients(&r, &tr, Some(4)).unwrap() else { panic!() };
        assert_eq!(v["c"], MultiPoly::t().pow(2).scale(&crate::arith::int(576)));
        let r = parse_relation("[z2,[z,z2]] = c*z").unwrap();
        let Recovery::Unique(v) = recover_coefficients(&r, &tr, Some(4)).unwrap() else { panic!() };
        assert_eq!(v["c"], MultiPoly::t().pow(2).scale(&crate::arith::int(-576)));
    }

    #[test]
    fn infeasible_when_outside_span() {
        let tr = classical_generators(ClassicalFamily::Sl, 4).unwrap();
        let r = parse_relation("[z3,[z,z1]] = c*y").unwrap();
        assert!(matches!(recover_coefficients(&r, &tr, Some(4)).unwrap(), Recovery::Infeasible { .. }));
    }
}
