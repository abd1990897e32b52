use std::collections::VecDeque;

use crate::arith::Monomial;
use crate::error::Result;
use crate::linalg::Echelon;

use super::element::{Algebra, LieElement};

/// Result of closing a seed under brackets.
#[derive(Clone, Debug)]
pub struct SpanClosure {
    pub dim: usize,
    /// Independent elements in the order they were found.
    pub elements: Vec<LieElement>,
    pub echelon: Echelon<(u64, Monomial)>,
}

/// Smallest bracket-closed subspace containing `seed`.
///
/// The subalgebra generated by a set is spanned by left-normed brackets of
/// its members, so it suffices to apply `ad s` for seeds `s` to every
/// newly found vector. Scalars should already be specialized to numbers.
pub fn span_closure(algebra: &Algebra, seed: &[LieElement]) -> Result<SpanClosure> {
    span_closure_bounded(algebra, seed, usize::MAX)
}

/// As [`span_closure`], but stops once `limit` independent vectors are found.
pub fn span_closure_bounded(algebra: &Algebra, seed: &[LieElement], limit: usize) -> Result<SpanClosure> {
    let mut echelon = Echelon::new();
    let mut elements = Vec::new();
    let mut queue = VecDeque::new();
    for s in seed {
        if echelon.insert(&s.to_vector()) {
            elements.push(s.clone());
            queue.push_back(s.clone());
        }
    }
    while let Some(v) = queue.pop_front() {
        if elements.len() >= limit {
            break;
        }
        for s in seed {
            let w = algebra.bracket(s, &v)?;
            if !w.is_zero() && echelon.insert(&w.to_vector()) {
                elements.push(w.clone());
                queue.push_back(w);
            }
        }
    }
    Ok(SpanClosure {
        dim: echelon.rank(),
        elements,
        echelon,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;
    use crate::lie::{classical_generators, ClassicalFamily};

    #[test]
    fn sl3_generated() {
        let tr = classical_generators(ClassicalFamily::Sl, 3).unwrap().specialize_t(&int(1));
        let c = span_closure(&tr.algebra, &[tr.x.clone(), tr.y.clone(), tr.z.clone()]).unwrap();
        assert_eq!(c.dim, 8);
        // x and y alone only reach the principal sl(2)
        let c = span_closure(&tr.algebra, &[tr.x.clone(), tr.y.clone()]).unwrap();
        assert_eq!(c.dim, 3);
    }

    #[test]
    fn x_and_h_span_a_plane() {
        let tr = classical_generators(ClassicalFamily::Sp, 3).unwrap().specialize_t(&int(1));
        let c = span_closure(&tr.algebra, &[tr.x.clone(), tr.h.clone()]).unwrap();
        assert_eq!(c.dim, 2);
    }
}
