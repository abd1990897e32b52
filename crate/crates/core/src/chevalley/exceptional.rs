use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::arith::{factorial, int, MultiPoly, Rational};
use crate::error::{Error, Result};
use crate::lie::{Algebra, CoordVec, GeneratorTriple, LieElement};
use crate::linalg::{solve, Solution, SparseVec};

use super::basis::{build_chevalley_algebra, scale_coords, ChevalleyAlgebra};
use super::roots::{build_root_system, CartanType};

/// Memoized Chevalley tables; E8 takes noticeable time to build.
pub fn chevalley_algebra(ty: CartanType) -> Result<Arc<ChevalleyAlgebra>> {
    static CACHE: OnceLock<Mutex<HashMap<CartanType, Arc<ChevalleyAlgebra>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(g) = cache.lock().unwrap().get(&ty) {
        return Ok(g.clone());
    }
    let g = Arc::new(build_chevalley_algebra(&build_root_system(ty))?);
    cache.lock().unwrap().insert(ty, g.clone());
    Ok(g)
}

/// Coefficients `c` with `Σ_i c_i α_j(H_i) = 2` for every `j`.
pub fn principal_coefficients(ty: CartanType) -> Vec<i64> {
    let a = ty.cartan_matrix();
    let r = ty.rank();
    let cols: Vec<SparseVec<usize>> = (0..r)
        .map(|i| (0..r).filter(|&j| a[i][j] != 0).map(|j| (j, int(a[i][j]))).collect())
        .collect();
    let b: SparseVec<usize> = (0..r).map(|j| (j, int(2))).collect();
    match solve(&cols, &b) {
        Solution::Unique(c) => c.iter().map(|x| x.to_integer().try_into().expect("small coefficient")).collect(),
        _ => unreachable!("Cartan matrices are invertible"),
    }
}

pub fn principal_x(g: &ChevalleyAlgebra) -> LieElement {
    let mut x = CoordVec::new();
    for (i, c) in principal_coefficients(g.roots.cartan_type).into_iter().enumerate() {
        x.extend(scale_coords(&g.x_plus(i + 1), &MultiPoly::int(c)));
    }
    LieElement::Coords(x)
}

pub fn principal_y(g: &ChevalleyAlgebra) -> LieElement {
    let mut y = CoordVec::new();
    for i in 1..=g.rank() {
        y.extend(g.x_minus(i));
    }
    LieElement::Coords(y)
}

/// Lowest generators, written with node numbers standing for `X⁻_i`.
fn z_data(ty: CartanType) -> Option<(Rational, u32, &'static str)> {
    let fact = |n: u32| Rational::from_integer(factorial(n));
    let d = match ty {
        CartanType::G2 => (Rational::new(1.into(), 129_600.into()), 10, "[[1,2],[1,[1,2]]]"),
        CartanType::F4 => (
            Rational::new(1.into(), 907_200.into()),
            10,
            "2[[1,2],[3,[1,2]]] + 2[[1,2],[4,[2,3]]] - [[3,4],[2,[2,3]]]",
        ),
        CartanType::E6 => (fact(8).recip(), 8, "[[1,2],[3,4]] - [[1,2],[3,6]] + [[2,3],[4,5]] + [[3,6],[4,5]]"),
        CartanType::E7 => (
            int(7) / fact(10),
            10,
            "[[2,3],[7,[4,5]]] + [[4,7],[5,[3,4]]] + [[5,6],[7,[3,4]]] + 2[[4,5],[3,[1,2]]] \
             + 2[[5,6],[4,[2,3]]] - 3[[4,7],[3,[1,2]]]",
        ),
        CartanType::E8 => (
            fact(13).recip(),
            14,
            "[[7,[5,6]],[[3,4],[5,8]]] + [[8,[4,5]],[[3,4],[5,6]]] + [[8,[5,6]],[[1,2],[3,4]]] \
             + [[8,[5,6]],[[2,3],[4,5]]] + [[8,[5,6]],[[4,5],[6,7]]] + 2[[4,[2,3]],[[5,8],[6,7]]] \
             - 3[[7,[5,6]],[[1,2],[3,4]]]",
        ),
        _ => return None,
    };
    Some(d)
}

/// Integer combination of nested brackets of negative simple generators.
///
/// Grammar: `sum := term (('+'|'-') term)*`, `term := [int] br`,
/// `br := '[' item ',' item ']'`, `item := int | br`.
struct BracketParser<'a> {
    s: &'a [u8],
    pos: usize,
    g: &'a ChevalleyAlgebra,
}

impl BracketParser<'_> {
    fn err<T>(&self, msg: &str) -> Result<T> {
        Err(Error::Syntax {
            pos: self.pos,
            msg: msg.to_string(),
        })
    }

    fn skip(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip();
        self.s.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(&format!("expected '{}'", c as char))
        }
    }

    fn number(&mut self) -> Option<i64> {
        self.skip();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.s[start..self.pos]).ok()?.parse().ok()
    }

    fn item(&mut self) -> Result<CoordVec> {
        if self.peek() == Some(b'[') {
            return self.bracket();
        }
        match self.number() {
            Some(i) if i >= 1 && (i as usize) <= self.g.rank() => Ok(self.g.x_minus(i as usize)),
            _ => self.err("expected node number"),
        }
    }

    fn bracket(&mut self) -> Result<CoordVec> {
        self.expect(b'[')?;
        let a = self.item()?;
        self.expect(b',')?;
        let b = self.item()?;
        self.expect(b']')?;
        Ok(self.g.table.bracket(&a, &b))
    }

    fn sum(&mut self) -> Result<CoordVec> {
        let mut acc = CoordVec::new();
        let mut sign = 1i64;
        if self.peek() == Some(b'-') {
            self.pos += 1;
            sign = -1;
        }
        loop {
            let c = if self.peek().is_some_and(|c| c.is_ascii_digit()) { self.number().unwrap() } else { 1 };
            let term = self.bracket()?;
            for (k, v) in scale_coords(&term, &MultiPoly::int(sign * c)) {
                let e = acc.entry(k).or_default();
                *e += &v;
                if e.is_zero() {
                    acc.remove(&k);
                }
            }
            match self.peek() {
                None => return Ok(acc),
                Some(b'+') => sign = 1,
                Some(b'-') => sign = -1,
                Some(_) => return self.err("expected '+' or '-'"),
            }
            self.pos += 1;
        }
    }
}

/// Evaluates a bracket expression over `X⁻_1, …, X⁻_rank`.
pub fn eval_lowering_expression(g: &ChevalleyAlgebra, src: &str) -> Result<CoordVec> {
    BracketParser { s: src.as_bytes(), pos: 0, g }.sum()
}

/// `x, y, z` for G2, F4, E6, E7, E8 with `z` carrying the factor `t`.
pub fn exceptional_jacobson_generators(ty: CartanType) -> Result<GeneratorTriple> {
    let (scale, r, expr) = z_data(ty).ok_or_else(|| Error::UnknownType(ty.to_string()))?;
    let g = chevalley_algebra(ty)?;
    let z = eval_lowering_expression(&g, expr)?;
    let factor = MultiPoly::t().scale(&scale);
    let z = LieElement::Coords(scale_coords(&z, &factor));
    GeneratorTriple::new(Algebra::Structure(g.table.clone()), principal_x(&g), principal_y(&g), z, r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::span_closure;
    use crate::sl2::decompose_adjoint;

    #[test]
    fn principal_coefficients_match_printed() {
        assert_eq!(principal_coefficients(CartanType::G2), vec![6, 10]);
        assert_eq!(principal_coefficients(CartanType::F4), vec![16, 30, 42, 22]);
        assert_eq!(principal_coefficients(CartanType::E6), vec![16, 30, 42, 30, 16, 22]);
        assert_eq!(principal_coefficients(CartanType::E7), vec![27, 52, 75, 96, 66, 34, 49]);
        assert_eq!(principal_coefficients(CartanType::E8), vec![58, 114, 168, 220, 270, 182, 92, 136]);
    }

    #[test]
    fn g2_serre_exponent() {
        let g = chevalley_algebra(CartanType::G2).unwrap();
        let mut v = g.x_plus(2);
        for k in 1..=4 {
            v = g.table.bracket(&g.x_plus(1), &v);
            assert_eq!(v.is_empty(), k == 4);
        }
    }

    #[test]
    fn parser_errors() {
        let g = chevalley_algebra(CartanType::G2).unwrap();
        assert!(matches!(eval_lowering_expression(&g, "[1,3]"), Err(Error::Syntax { pos: 4, .. })));
        assert!(eval_lowering_expression(&g, "[1,2").is_err());
        assert!(eval_lowering_expression(&g, "[1,2] * 3").is_err());
        let v = eval_lowering_expression(&g, "2[1,2] - [1,2]").unwrap();
        assert_eq!(v, g.table.bracket(&g.x_minus(1), &g.x_minus(2)));
    }

    #[test]
    fn g2_and_f4_generate() {
        for (ty, dim, profile) in [(CartanType::G2, 14, vec![2, 10]), (CartanType::F4, 52, vec![2, 10, 14, 22])] {
            let tr = exceptional_jacobson_generators(ty).unwrap();
            assert_eq!(tr.r, 10);
            let t1 = tr.specialize_t(&int(1));
            let c = span_closure(&t1.algebra, &[t1.x.clone(), t1.y.clone(), t1.z.clone()]).unwrap();
            assert_eq!(c.dim, dim);
            assert_eq!(decompose_adjoint(&tr).unwrap().sorted(), profile);
        }
    }

    #[test]
    fn e_series_weights() {
        for ty in [CartanType::E6, CartanType::E7] {
            let tr = exceptional_jacobson_generators(ty).unwrap();
            assert!(tr.base_residuals().unwrap().all_zero());
        }
    }
}
