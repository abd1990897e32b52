use crate::arith::{MultiPoly, Rational, Var};
use crate::error::{Error, Result};

use super::element::{Algebra, LieElement};

/// Jacobson generators `x, y, z` with `h = [x, y]` and the cached
/// iterates `z_i = (ad x)^i z` for `i ≤ r + 1`.
#[derive(Clone, Debug)]
pub struct GeneratorTriple {
    pub algebra: Algebra,
    pub x: LieElement,
    pub y: LieElement,
    pub z: LieElement,
    pub h: LieElement,
    /// Weight of `z`: `[h, z] = -r z`.
    pub r: u32,
    zs: Vec<LieElement>,
}

/// Residual of each of the five identities in relations (0) and (1).
pub struct BaseResiduals {
    pub items: Vec<(&'static str, LieElement)>,
}

impl BaseResiduals {
    pub fn all_zero(&self) -> bool {
        self.items.iter().all(|(_, r)| r.is_zero())
    }

    pub fn first_failure(&self) -> Option<&'static str> {
        self.items.iter().find(|(_, r)| !r.is_zero()).map(|(id, _)| *id)
    }
}

impl GeneratorTriple {
    /// Builds the triple and checks relations (0) and (1).
    pub fn new(algebra: Algebra, x: LieElement, y: LieElement, z: LieElement, r: u32) -> Result<Self> {
        let triple = Self::unchecked(algebra, x, y, z, r)?;
        let res = triple.base_residuals()?;
        if res.items.iter().any(|(id, w)| *id == "1.2" && !w.is_zero()) {
            let hz = triple.algebra.bracket(&triple.h, &triple.z)?;
            return Err(Error::WeightMismatch {
                expected: r as i64,
                detail: describe_weight(&hz, &triple.z),
            });
        }
        if let Some(id) = res.first_failure() {
            return Err(Error::GeneratorRelation(id.to_string()));
        }
        Ok(triple)
    }

    pub fn unchecked(algebra: Algebra, x: LieElement, y: LieElement, z: LieElement, r: u32) -> Result<Self> {
        let h = algebra.bracket(&x, &y)?;
        let mut zs = vec![z.clone()];
        for _ in 0..=r {
            let next = algebra.bracket(&x, zs.last().unwrap())?;
            zs.push(next);
        }
        Ok(GeneratorTriple {
            algebra,
            x,
            y,
            z,
            h,
            r,
            zs,
        })
    }

    /// `z_i`; zero beyond the cache since `z_{r+1} = 0` for a valid triple.
    pub fn z_i(&self, i: usize) -> Result<LieElement> {
        if i < self.zs.len() {
            return Ok(self.zs[i].clone());
        }
        let last = self.zs.last().unwrap();
        self.algebra.ad_pow(&self.x, (i + 1 - self.zs.len()) as u32, last)
    }

    pub fn base_residuals(&self) -> Result<BaseResiduals> {
        let g = &self.algebra;
        let two = MultiPoly::int(2);
        let hx = g.bracket(&self.h, &self.x)?.sub(&self.x.scale(&two))?;
        let hy = g.bracket(&self.h, &self.y)?.add(&self.y.scale(&two))?;
        let yz = g.bracket(&self.y, &self.z)?;
        let hz = g.bracket(&self.h, &self.z)?.add(&self.z.scale(&MultiPoly::int(self.r as i64)))?;
        let top = self.z_i(self.r as usize + 1)?;
        Ok(BaseResiduals {
            items: vec![("0.1", hx), ("0.2", hy), ("1.1", yz), ("1.2", hz), ("1.3", top)],
        })
    }

    pub fn map_scalars(&self, f: impl Fn(&MultiPoly) -> MultiPoly + Copy) -> Self {
        GeneratorTriple {
            algebra: self.algebra.clone(),
            x: self.x.map_scalars(f),
            y: self.y.map_scalars(f),
            z: self.z.map_scalars(f),
            h: self.h.map_scalars(f),
            r: self.r,
            zs: self.zs.iter().map(|e| e.map_scalars(f)).collect(),
        }
    }

    pub fn specialize_t(&self, t: &Rational) -> Self {
        self.map_scalars(|p| p.specialize(Var::T, t))
    }

    /// Same triple with `z` replaced by `-z`.
    pub fn with_negated_z(&self) -> Self {
        GeneratorTriple {
            z: self.z.neg(),
            zs: self.zs.iter().map(LieElement::neg).collect(),
            ..self.clone()
        }
    }

    pub fn generators(&self) -> [&LieElement; 3] {
        [&self.x, &self.y, &self.z]
    }
}

fn describe_weight(hz: &LieElement, z: &LieElement) -> String {
    let a = hz.to_vector();
    let b = z.to_vector();
    if let Some((k, c)) = b.iter().next() {
        if let Some(d) = a.get(k) {
            let ratio = d / c;
            let scaled: crate::linalg::SparseVec<_> = b.iter().map(|(k, v)| (*k, v * &ratio)).collect();
            if scaled == a {
                return format!("computed [h, z] = {ratio} z");
            }
        } else if a.is_empty() {
            return "computed [h, z] = 0".into();
        }
    }
    "z is not an ad h eigenvector".into()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::SparseMatrix;

    fn m(n: usize, items: &[(usize, usize, i64)]) -> LieElement {
        LieElement::Matrix(SparseMatrix::from_entries(n, items.iter().map(|&(i, j, c)| ((i, j), MultiPoly::int(c)))))
    }

    #[test]
    fn wrong_weight_reported() {
        let g = Algebra::Matrix { size: 3 };
        let x = m(3, &[(1, 2, 2), (2, 3, 2)]);
        let y = m(3, &[(2, 1, 1), (3, 2, 1)]);
        let z = m(3, &[(3, 1, 1)]);
        let err = GeneratorTriple::new(g.clone(), x.clone(), y.clone(), z.clone(), 2).unwrap_err();
        match err {
            Error::WeightMismatch { expected, detail } => {
                assert_eq!(expected, 2);
                assert_eq!(detail, "computed [h, z] = -4 z");
            }
            other => panic!("{other:?}"),
        }
        assert!(GeneratorTriple::new(g, x, y, z, 4).is_ok());
    }
}
