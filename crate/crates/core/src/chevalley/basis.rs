use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::arith::{int, MultiPoly, Rational};
use crate::error::{Error, Result};
use crate::lie::{CoordVec, StructureConstantAlgebra};

use super::roots::{build_root_system, height, CartanType, Root, RootSystem};

type RVec = BTreeMap<usize, Rational>;

fn bracket_r(alg: &StructureConstantAlgebra, a: &RVec, b: &RVec) -> RVec {
    let mut out = RVec::new();
    for (&i, x) in a {
        for (&j, y) in b {
            for (k, c) in alg.basis_bracket(i, j) {
                *out.entry(*k).or_insert_with(Rational::zero) += x * y * c;
            }
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

fn axpy(v: &mut RVec, c: &Rational, w: &RVec) {
    for (k, x) in w {
        *v.entry(*k).or_insert_with(Rational::zero) += c * x;
    }
    v.retain(|_, x| !x.is_zero());
}

fn scaled(v: &RVec, c: &Rational) -> RVec {
    v.iter().map(|(k, x)| (*k, x * c)).filter(|(_, x)| !x.is_zero()).collect()
}

/// Basis layout shared by every Chevalley table built here: positive root
/// vectors by height, then `H_1, …, H_r`, then negative root vectors in the
/// same order as the positive ones.
#[derive(Clone, Debug)]
pub struct ChevalleyAlgebra {
    pub roots: RootSystem,
    pub table: Arc<StructureConstantAlgebra>,
}

impl ChevalleyAlgebra {
    pub fn rank(&self) -> usize {
        self.roots.rank
    }

    pub fn dim(&self) -> usize {
        self.table.dim()
    }

    fn npos(&self) -> usize {
        self.roots.positive.len()
    }

    /// Basis index of `e_β` for a (positive or negative) root `β`.
    pub fn root_index(&self, beta: &[i64]) -> Option<usize> {
        if let Some(i) = self.roots.index_of(beta) {
            return Some(i);
        }
        let neg: Root = beta.iter().map(|c| -c).collect();
        self.roots.index_of(&neg).map(|i| self.npos() + self.rank() + i)
    }

    /// Basis index of `H_i`, `i` 1-based.
    pub fn h_index(&self, i: usize) -> usize {
        self.npos() + i - 1
    }

    fn simple(&self, i: usize, sign: i64) -> usize {
        let mut r = vec![0; self.rank()];
        r[i - 1] = sign;
        self.root_index(&r).expect("simple root")
    }

    pub fn x_plus(&self, i: usize) -> CoordVec {
        self.table.basis_vector(self.simple(i, 1))
    }

    pub fn x_minus(&self, i: usize) -> CoordVec {
        self.table.basis_vector(self.simple(i, -1))
    }

    pub fn h(&self, i: usize) -> CoordVec {
        self.table.basis_vector(self.h_index(i))
    }

    /// Checks the Chevalley–Serre relations for the simple generators.
    pub fn serre_check(&self) -> Result<()> {
        let r = self.rank();
        let a = &self.roots.cartan;
        let t = &self.table;
        let fail = |m: String| Err(Error::JacobiFailure(m));
        for i in 1..=r {
            for j in 1..=r {
                let ef = t.bracket(&self.x_plus(i), &self.x_minus(j));
                let expect = if i == j { self.h(i) } else { CoordVec::new() };
                if ef != expect {
                    return fail(format!("[X+_{i}, X-_{j}]"));
                }
                let c = MultiPoly::int(a[i - 1][j - 1]);
                let he = t.bracket(&self.h(i), &self.x_plus(j));
                if he != scale_coords(&self.x_plus(j), &c) {
                    return fail(format!("[H_{i}, X+_{j}]"));
                }
                let hf = t.bracket(&self.h(i), &self.x_minus(j));
                if hf != scale_coords(&self.x_minus(j), &-c) {
                    return fail(format!("[H_{i}, X-_{j}]"));
                }
                if i != j {
                    let k = (1 - a[i - 1][j - 1]) as usize;
                    for (e, lbl) in [(self.x_plus(i), "+"), (self.x_minus(i), "-")] {
                        let mut v = if lbl == "+" { self.x_plus(j) } else { self.x_minus(j) };
                        for _ in 0..k {
                            v = t.bracket(&e, &v);
                        }
                        if !v.is_empty() {
                            return fail(format!("Serre ({i}, {j}, {lbl})"));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Checks `[e_α, e_β] = ±(p+1) e_{α+β}` whenever `α + β` is a root.
    pub fn integrality_check(&self) -> Result<()> {
        let all: Vec<Root> = self
            .roots
            .positive
            .iter()
            .cloned()
            .chain(self.roots.positive.iter().map(|r| r.iter().map(|c| -c).collect()))
            .collect();
        for a in &all {
            for b in &all {
                let s: Root = a.iter().zip(b).map(|(x, y)| x + y).collect();
                let Some(k) = self.root_index(&s) else { continue };
                let (ia, ib) = (self.root_index(a).unwrap(), self.root_index(b).unwrap());
                let row = self.table.basis_bracket(ia, ib);
                // p: largest with β - pα a root
                let mut p = 0i64;
                let mut cur = b.clone();
                loop {
                    for (c, x) in cur.iter_mut().zip(a) {
                        *c -= x;
                    }
                    if cur.iter().all(|c| *c == 0) || self.root_index(&cur).is_none() {
                        break;
                    }
                    p += 1;
                }
                let ok = row.len() == 1 && row[0].0 == k && (row[0].1 == int(p + 1) || row[0].1 == int(-(p + 1)));
                if !ok {
                    return Err(Error::JacobiFailure(format!("N({a:?}, {b:?})")));
                }
            }
        }
        Ok(())
    }
}

pub(crate) fn scale_coords(v: &CoordVec, c: &MultiPoly) -> CoordVec {
    v.iter().map(|(k, x)| (*k, x * c)).filter(|(_, x)| !x.is_zero()).collect()
}

fn label(prefix: &str, r: &[i64]) -> String {
    let parts: Vec<String> = r.iter().map(|c| c.to_string()).collect();
    format!("{prefix}[{}]", parts.join(","))
}

fn labels(rs: &RootSystem) -> Vec<String> {
    let mut out: Vec<String> = rs.positive.iter().map(|r| label("e", r)).collect();
    out.extend((1..=rs.rank).map(|i| format!("H{i}")));
    out.extend(rs.positive.iter().map(|r| label("f", r)));
    out
}

/// Twisted group algebra construction for a simply-laced type: the sign of
/// `[e_α, e_β]` is the bimultiplicative `ε(α, β)` with `ε(α_i, α_j) = -1`
/// exactly when `i = j` or `i < j` are joined, and `[e_α, e_{-α}] = -α`.
fn simply_laced(rs: &RootSystem) -> Result<StructureConstantAlgebra> {
    let r = rs.rank;
    let np = rs.positive.len();
    let a = &rs.cartan;
    let eps = |x: &[i64], y: &[i64]| -> i64 {
        let mut e = 0i64;
        for i in 0..r {
            for j in 0..r {
                if i == j || (i < j && a[i][j] == -1) {
                    e += x[i] * y[j];
                }
            }
        }
        if e.rem_euclid(2) == 0 {
            1
        } else {
            -1
        }
    };
    let signed: Vec<Root> = rs
        .positive
        .iter()
        .cloned()
        .chain(rs.positive.iter().map(|p| p.iter().map(|c| -c).collect()))
        .collect();
    let index = |beta: &[i64]| -> Option<usize> {
        if let Some(i) = rs.index_of(beta) {
            return Some(i);
        }
        let neg: Root = beta.iter().map(|c| -c).collect();
        rs.index_of(&neg).map(|i| np + r + i)
    };
    let mut upper: BTreeMap<(usize, usize), Vec<(usize, Rational)>> = BTreeMap::new();
    let mut put = |i: usize, j: usize, v: Vec<(usize, Rational)>| {
        if i < j {
            upper.insert((i, j), v);
        } else if j < i {
            upper.insert((j, i), v.into_iter().map(|(k, c)| (k, -c)).collect());
        }
    };
    for alpha in &signed {
        let ia = index(alpha).unwrap();
        for k in 0..r {
            let w = rs.pairing(alpha, k);
            if w != 0 {
                put(np + k, ia, vec![(ia, int(w))]);
            }
        }
        for beta in &signed {
            let ib = index(beta).unwrap();
            if ia >= ib {
                continue;
            }
            let s: Root = alpha.iter().zip(beta).map(|(x, y)| x + y).collect();
            if s.iter().all(|c| *c == 0) {
                let v = (0..r).filter(|&k| alpha[k] != 0).map(|k| (np + k, int(-alpha[k]))).collect();
                put(ia, ib, v);
            } else if let Some(k) = index(&s) {
                put(ia, ib, vec![(k, int(eps(alpha, beta)))]);
            }
        }
    }
    StructureConstantAlgebra::new(labels(rs), upper)
}

/// Root vectors of `ty` inside its simply-laced cover, normalized so that
/// `[e_β, f_β] = H_β`. For simply-laced `ty` the cover is `ty` itself.
fn folded(ty: CartanType, rs: &RootSystem) -> Result<StructureConstantAlgebra> {
    let (cover_ty, orbits) = ty.folding();
    let cover_rs = build_root_system(cover_ty);
    let cover = simply_laced(&cover_rs)?;
    let cnp = cover_rs.positive.len();
    let cr = cover_rs.rank;
    let unit = |k: usize, c: i64| RVec::from([(k, int(c))]);
    let cover_simple = |node: usize, sign: i64| {
        let mut v = vec![0; cr];
        v[node - 1] = sign;
        if sign > 0 {
            cover_rs.index_of(&v).unwrap()
        } else {
            cnp + cr + cover_rs.index_of(&v.iter().map(|c| -c).collect::<Vec<_>>()).unwrap()
        }
    };
    let mut e_simple = Vec::new();
    let mut f_simple = Vec::new();
    let mut h_simple = Vec::new();
    for orbit in &orbits {
        let mut e = RVec::new();
        let mut f = RVec::new();
        let mut h = RVec::new();
        for &node in orbit {
            axpy(&mut e, &Rational::one(), &unit(cover_simple(node, 1), 1));
            // X⁻ = -e_{-α} in the twisted construction
            axpy(&mut f, &Rational::one(), &unit(cover_simple(node, -1), -1));
            axpy(&mut h, &Rational::one(), &unit(cnp + node - 1, 1));
        }
        e_simple.push(e);
        f_simple.push(f);
        h_simple.push(h);
    }

    let r = rs.rank;
    let np = rs.positive.len();
    let mut pos: Vec<RVec> = Vec::with_capacity(np);
    let mut neg: Vec<RVec> = Vec::with_capacity(np);
    for beta in &rs.positive {
        if height(beta) == 1 {
            let i = beta.iter().position(|c| *c == 1).unwrap();
            pos.push(e_simple[i].clone());
            neg.push(f_simple[i].clone());
            continue;
        }
        let (i, gamma) = (0..r)
            .find_map(|i| {
                let mut g = beta.clone();
                g[i] -= 1;
                rs.index_of(&g).map(|gi| (i, gi))
            })
            .expect("non-simple root has a predecessor");
        let p = rs.string_below(&rs.positive[gamma], i);
        let inv = Rational::from_integer((p + 1).into()).recip();
        let e = scaled(&bracket_r(&cover, &e_simple[i], &pos[gamma]), &inv);
        let mut f = scaled(&bracket_r(&cover, &f_simple[i], &neg[gamma]), &inv);
        let hb = bracket_r(&cover, &e, &f);
        let he = bracket_r(&cover, &hb, &e);
        if he == scaled(&e, &int(-2)) {
            f = scaled(&f, &int(-1));
        } else if he != scaled(&e, &int(2)) {
            return Err(Error::JacobiFailure(format!("root vector for {beta:?}")));
        }
        pos.push(e);
        neg.push(f);
    }

    // Express brackets in the new basis. Results of root weight are
    // multiples of the root vector; weight zero lands in the Cartan span,
    // where each H_i is supported on its own orbit.
    let weight = |k: usize| -> Root {
        if k < np {
            rs.positive[k].clone()
        } else if k < np + r {
            vec![0; r]
        } else {
            rs.positive[k - np - r].iter().map(|c| -c).collect()
        }
    };
    let vector = |k: usize| -> &RVec {
        if k < np {
            &pos[k]
        } else if k < np + r {
            &h_simple[k - np]
        } else {
            &neg[k - np - r]
        }
    };
    let dim = np * 2 + r;
    let mut upper = BTreeMap::new();
    for i in 0..dim {
        for j in i + 1..dim {
            let w = bracket_r(&cover, vector(i), vector(j));
            if w.is_empty() {
                continue;
            }
            let s: Root = weight(i).iter().zip(weight(j)).map(|(a, b)| a + b).collect();
            let mut coeffs = Vec::new();
            if s.iter().all(|c| *c == 0) {
                for (k, orbit) in orbits.iter().enumerate() {
                    if let Some(c) = w.get(&(cnp + orbit[0] - 1)) {
                        coeffs.push((np + k, c.clone()));
                    }
                }
            } else {
                let pos_idx = rs.index_of(&s);
                let neg_idx = rs.index_of(&s.iter().map(|c| -c).collect::<Vec<_>>());
                let k = match (pos_idx, neg_idx) {
                    (Some(k), _) => k,
                    (None, Some(k)) => np + r + k,
                    _ => return Err(Error::JacobiFailure(format!("bracket leaves the root system at {s:?}"))),
                };
                let target = vector(k);
                let (key, x) = target.iter().next().unwrap();
                let c = w.get(key).cloned().unwrap_or_else(Rational::zero) / x;
                coeffs.push((k, c));
            }
            let mut rebuilt = RVec::new();
            for (k, c) in &coeffs {
                axpy(&mut rebuilt, c, vector(*k));
            }
            if rebuilt != w {
                return Err(Error::JacobiFailure(format!("bracket of basis vectors {i}, {j} not in span")));
            }
            upper.insert((i, j), coeffs);
        }
    }
    StructureConstantAlgebra::new(labels(rs), upper)
}

/// Chevalley basis structure constants for any simple type.
pub fn build_chevalley_algebra(rs: &RootSystem) -> Result<ChevalleyAlgebra> {
    let table = folded(rs.cartan_type, rs)?;
    Ok(ChevalleyAlgebra {
        roots: rs.clone(),
        table: Arc::new(table),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_types_are_lie_algebras() {
        for s in ["A1", "A3", "B2", "B3", "C3", "D4", "G2"] {
            let ty: CartanType = s.parse().unwrap();
            let g = build_chevalley_algebra(&build_root_system(ty)).unwrap();
            assert_eq!(g.dim(), g.roots.dim(), "{s}");
            g.table.check_jacobi().unwrap();
            g.serre_check().unwrap();
            g.integrality_check().unwrap();
        }
    }

    #[test]
    fn f4_and_e6() {
        for ty in [CartanType::F4, CartanType::E6] {
            let g = build_chevalley_algebra(&build_root_system(ty)).unwrap();
            g.table.check_jacobi().unwrap();
            g.serre_check().unwrap();
            g.integrality_check().unwrap();
        }
    }

    #[test]
    fn g2_dimension() {
        assert_eq!(build_chevalley_algebra(&build_root_system(CartanType::G2)).unwrap().dim(), 14);
    }
}
