use std::collections::{BTreeMap, HashMap};
use std::rc::Rc;

use serde::Serialize;

use crate::arith::{int, Var};
use crate::error::{Error, Result};
use crate::linalg::{to_mod_p, EchelonModP, PRIME};

use super::ast::{Relation, Side, Word};

pub const MAX_PROBE_DEGREE: usize = 14;

/// Sparse element of the free Lie algebra mod `p`, sorted by basis index.
type Elem = Vec<(u32, u64)>;

fn packed(w: &[u8]) -> u64 {
    w.iter().fold(w.len() as u64, |acc, &l| acc << 2 | l as u64)
}

/// Lyndon words on `x < y < z` up to a degree bound, with the bracket
/// of basis elements expressed back in the basis.
///
/// Indices run over words of decreasing length, so the semi-echelon pivot
/// of an element is always one of its top-degree terms.
pub struct LyndonBasis {
    pub max_degree: usize,
    words: Vec<Vec<u8>>,
    index: HashMap<u64, u32>,
    /// Standard factorization `(left, right)` for words of length ≥ 2.
    factor: Vec<Option<(u32, u32)>>,
    memo: HashMap<(u32, u32), Rc<Elem>>,
}

/// All Lyndon words of length ≤ `n` over `k` letters, in lexicographic order.
pub fn lyndon_words(k: u8, n: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    if n == 0 || k == 0 {
        return out;
    }
    let mut w: Vec<u8> = vec![0];
    while !w.is_empty() {
        out.push(w.clone());
        let m = w.len();
        while w.len() < n {
            w.push(w[w.len() - m]);
        }
        while w.last() == Some(&(k - 1)) {
            w.pop();
        }
        if let Some(last) = w.last_mut() {
            *last += 1;
        }
    }
    out
}

impl LyndonBasis {
    pub fn new(max_degree: usize) -> Self {
        let mut words = lyndon_words(3, max_degree);
        words.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
        let index: HashMap<u64, u32> = words.iter().enumerate().map(|(i, w)| (packed(w), i as u32)).collect();
        let factor = words
            .iter()
            .map(|w| {
                (1..w.len()).find_map(|s| {
                    let right = *index.get(&packed(&w[s..]))?;
                    let left = *index.get(&packed(&w[..s]))?;
                    Some((left, right))
                })
            })
            .collect();
        LyndonBasis {
            max_degree,
            words,
            index,
            factor,
            memo: HashMap::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn word(&self, i: u32) -> &[u8] {
        &self.words[i as usize]
    }

    pub fn degree(&self, i: u32) -> usize {
        self.words[i as usize].len()
    }

    pub fn letter(&self, l: u8) -> u32 {
        self.index[&packed(&[l])]
    }

    /// Number of basis words of each length `1..=max_degree`.
    pub fn graded_dims(&self) -> Vec<usize> {
        let mut d = vec![0; self.max_degree];
        for w in &self.words {
            d[w.len() - 1] += 1;
        }
        d
    }

    /// `[P_u, P_v]` in the basis, dropping everything above the bound.
    pub fn bracket_basis(&mut self, u: u32, v: u32) -> Rc<Elem> {
        if u == v || self.degree(u) + self.degree(v) > self.max_degree {
            return Rc::new(Vec::new());
        }
        if self.word(u) > self.word(v) {
            let r = self.bracket_basis(v, u);
            return Rc::new(r.iter().map(|&(k, c)| (k, (PRIME - c) % PRIME)).collect());
        }
        if let Some(r) = self.memo.get(&(u, v)) {
            return r.clone();
        }
        let out = match self.factor[u as usize] {
            Some((_, right)) if self.word(right) < self.word(v) => {
                let (u1, u2) = self.factor[u as usize].unwrap();
                // [[u1,u2],v] = [u1,[u2,v]] - [u2,[u1,v]]
                let a = self.bracket_basis(u2, v);
                let b = self.bracket_basis(u1, v);
                let mut acc = BTreeMap::new();
                for &(w, c) in a.iter() {
                    add_into(&mut acc, &self.bracket_basis(u1, w), c);
                }
                for &(w, c) in b.iter() {
                    add_into(&mut acc, &self.bracket_basis(u2, w), PRIME - c);
                }
                finish(acc)
            }
            _ => {
                let mut uv = self.word(u).to_vec();
                uv.extend_from_slice(self.word(v));
                vec![(self.index[&packed(&uv)], 1)]
            }
        };
        let out = Rc::new(out);
        self.memo.insert((u, v), out.clone());
        out
    }

    pub fn bracket(&mut self, a: &Elem, b: &Elem) -> Elem {
        let mut acc = BTreeMap::new();
        for &(i, x) in a {
            for &(j, y) in b {
                add_into(&mut acc, &self.bracket_basis(i, j), x * y % PRIME);
            }
        }
        finish(acc)
    }
}

fn add_into(acc: &mut BTreeMap<u32, u64>, v: &Elem, c: u64) {
    for &(k, x) in v {
        let e = acc.entry(k).or_insert(0);
        *e = (*e + c * x) % PRIME;
    }
}

fn finish(acc: BTreeMap<u32, u64>) -> Elem {
    acc.into_iter().filter(|&(_, c)| c != 0).collect()
}

/// Generator count of a word: `x, y, z` have degree 1 and `z_i` has `i + 1`.
pub fn word_degree(w: &Word, n: Option<i64>) -> Result<usize> {
    Ok(match w {
        Word::X | Word::Y | Word::Z => 1,
        Word::H => 2,
        Word::Zi(i) => *i as usize + 1,
        Word::Bracket(a, b) => side_degree(a, n)? + side_degree(b, n)?,
        Word::AdPow { op, exp, arg } => {
            exp.eval_int(n)?.max(0) as usize * word_degree(op, n)? + word_degree(arg, n)?
        }
    })
}

fn side_degree(s: &Side, n: Option<i64>) -> Result<usize> {
    s.terms.iter().map(|t| word_degree(&t.word, n)).try_fold(0, |m, d| Ok(m.max(d?)))
}

/// Degree of a relation: the largest degree among its words.
pub fn relation_degree(rel: &Relation, n: Option<i64>) -> Result<usize> {
    Ok(side_degree(&rel.lhs, n)?.max(side_degree(&rel.rhs, n)?))
}

struct Lowering<'a> {
    basis: &'a mut LyndonBasis,
    n: Option<i64>,
}

impl Lowering<'_> {
    fn word(&mut self, w: &Word) -> Result<Elem> {
        let (x, y, z) = (self.basis.letter(0), self.basis.letter(1), self.basis.letter(2));
        Ok(match w {
            Word::X => vec![(x, 1)],
            Word::Y => vec![(y, 1)],
            Word::Z => vec![(z, 1)],
            Word::H => self.basis.bracket(&vec![(x, 1)], &vec![(y, 1)]),
            Word::Zi(i) => {
                let mut v = vec![(z, 1)];
                for _ in 0..*i {
                    v = self.basis.bracket(&vec![(x, 1)], &v);
                }
                v
            }
            Word::Bracket(a, b) => {
                let (a, b) = (self.side(a)?, self.side(b)?);
                self.basis.bracket(&a, &b)
            }
            Word::AdPow { op, exp, arg } => {
                let k = exp.eval_int(self.n)?.max(0);
                let op = self.word(op)?;
                let mut v = self.word(arg)?;
                for _ in 0..k {
                    v = self.basis.bracket(&op, &v);
                }
                v
            }
        })
    }

    fn side(&mut self, s: &Side) -> Result<Elem> {
        let mut acc = BTreeMap::new();
        for t in &s.terms {
            let c = match &t.coeff {
                Some(c) => c.eval_known(self.n)?.specialize(Var::T, &int(1)),
                None => crate::arith::MultiPoly::one(),
            };
            let c = c
                .as_constant()
                .ok_or_else(|| Error::UnboundParameter(format!("coefficient {c} is not a number")))?;
            let mut c = to_mod_p(&c).ok_or_else(|| Error::Catalog(format!("coefficient {c} is not invertible mod p")))?;
            if t.neg {
                c = (PRIME - c) % PRIME;
            }
            let w = self.word(&t.word)?;
            add_into(&mut acc, &w, c);
        }
        Ok(finish(acc))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProbeResult {
    pub degree_bound: usize,
    /// `dim F_d` for `d = 1..=D`.
    pub free_graded: Vec<usize>,
    /// `dim F_{≤d} / I_{≤d}` for `d = 1..=D`.
    pub quotient: Vec<usize>,
    /// `dim F_{≤D} / I_{≤k}` for `k = 1..=D`.
    pub filtration: Vec<usize>,
}

impl ProbeResult {
    /// Final quotient dimension if the last two degrees agree.
    pub fn stabilized(&self) -> Option<usize> {
        match self.quotient.as_slice() {
            [.., a, b] if a == b => Some(*b),
            _ => None,
        }
    }
}

/// Dimensions of the truncated quotient of the free Lie algebra on
/// `x, y, z` by the ideal the relations generate under the degree
/// discipline: a relation of degree `m` enters at degree `m`, and
/// `I_{≤d} = R_{≤d} + Σ_a [a, I_{≤d-1}]` over the generators `a`.
///
/// `r` is the weight of `z`; every relation must be homogeneous for the
/// grading `x ↦ 2, y ↦ -2, z ↦ -r`. Ranks are computed mod a 31-bit prime.
pub fn completeness_probe(relations: &[Relation], n: Option<i64>, r: u32, degree: usize) -> Result<ProbeResult> {
    if degree > MAX_PROBE_DEGREE {
        return Err(Error::DegreeBoundExceeded {
            requested: degree,
            max: MAX_PROBE_DEGREE,
        });
    }
    let mut basis = LyndonBasis::new(degree);
    let weight_of = |w: &[u8]| -> i64 {
        w.iter()
            .map(|&l| match l {
                0 => 2,
                1 => -2,
                _ => -(r as i64),
            })
            .sum()
    };
    let weights: Vec<i64> = (0..basis.len() as u32).map(|i| weight_of(basis.word(i))).collect();
    let block = |v: &Elem| -> Result<Option<i64>> {
        let mut ws = v.iter().map(|&(k, _)| weights[k as usize]);
        let Some(w) = ws.next() else { return Ok(None) };
        if ws.any(|x| x != w) {
            return Err(Error::Catalog("relation is not homogeneous for ad h".into()));
        }
        Ok(Some(w))
    };

    let mut by_degree: Vec<Vec<Elem>> = vec![Vec::new(); degree + 1];
    for rel in relations {
        let d = relation_degree(rel, n)?;
        if d > degree {
            continue;
        }
        let mut low = Lowering { basis: &mut basis, n };
        let mut v = low.side(&rel.lhs)?;
        let rhs = low.side(&rel.rhs)?;
        let mut acc: BTreeMap<u32, u64> = v.drain(..).collect();
        add_into(&mut acc, &rhs, PRIME - 1);
        by_degree[d].push(finish(acc));
    }

    let free_graded = basis.graded_dims();
    let letters = [basis.letter(0), basis.letter(1), basis.letter(2)];
    let mut blocks: HashMap<i64, EchelonModP> = HashMap::new();
    let mut rank = 0usize;
    let mut fresh: Vec<Elem> = Vec::new();
    let mut quotient = Vec::with_capacity(degree);
    let mut ranks = Vec::with_capacity(degree);
    for d in 1..=degree {
        let mut candidates = std::mem::take(&mut by_degree[d]);
        for v in &fresh {
            for &a in &letters {
                let w = basis.bracket(&vec![(a, 1)], v);
                if !w.is_empty() {
                    candidates.push(w);
                }
            }
        }
        fresh.clear();
        for v in candidates {
            let Some(w) = block(&v)? else { continue };
            if blocks.entry(w).or_default().insert(v.clone()).is_some() {
                rank += 1;
                fresh.push(v);
            }
        }
        let free: usize = free_graded[..d].iter().sum();
        quotient.push(free - rank);
        ranks.push(rank);
    }
    let total: usize = free_graded.iter().sum();
    Ok(ProbeResult {
        degree_bound: degree,
        free_graded,
        quotient,
        filtration: ranks.iter().map(|k| total - k).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentations::parse_relation;

    #[test]
    fn witt_dimensions() {
        let b = LyndonBasis::new(6);
        assert_eq!(b.graded_dims(), vec![3, 3, 8, 18, 48, 116]);
        let p = completeness_probe(&[], None, 4, 3).unwrap();
        assert_eq!(p.free_graded, vec![3, 3, 8]);
        assert_eq!(p.quotient, vec![3, 6, 14]);
    }

    #[test]
    fn brackets_are_antisymmetric_and_jacobi() {
        let mut b = LyndonBasis::new(7);
        let n = b.len() as u32;
        let pick = |i: u32| vec![(i % n, 1u64)];
        for (i, j, k) in [(0, 1, 2), (3, 5, 7), (2, 9, 11), (1, 4, 20)] {
            let (x, y, z) = (pick(i), pick(j), pick(k));
            let xy = b.bracket(&x, &y);
            let yx = b.bracket(&y, &x);
            let sum: BTreeMap<u32, u64> = xy.iter().chain(&yx).fold(BTreeMap::new(), |mut m, &(k, c)| {
                *m.entry(k).or_insert(0) = (m.get(&k).unwrap_or(&0) + c) % PRIME;
                m
            });
            assert!(sum.values().all(|&c| c == 0));
            let mut acc = BTreeMap::new();
            let yz = b.bracket(&y, &z);
            let zx = b.bracket(&z, &x);
            add_into(&mut acc, &b.bracket(&x, &yz), 1);
            add_into(&mut acc, &b.bracket(&y, &zx), 1);
            add_into(&mut acc, &b.bracket(&z, &xy), 1);
            assert!(finish(acc).is_empty());
        }
    }

    #[test]
    fn degree_bound() {
        assert!(matches!(
            completeness_probe(&[], None, 4, 15),
            Err(Error::DegreeBoundExceeded { requested: 15, max: 14 })
        ));
    }

    #[test]
    fn relation_degrees() {
        let r = parse_relation("3*[z1,z2] - 2*[z,z3] = 24*t^2*y").unwrap();
        assert_eq!(relation_degree(&r, None).unwrap(), 5);
        let r = parse_relation("(ad z1)^(n-2) z = 0").unwrap();
        assert_eq!(relation_degree(&r, Some(5)).unwrap(), 7);
    }
}
