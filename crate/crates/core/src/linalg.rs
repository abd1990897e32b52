//! Sparse exact Gaussian elimination over `Q`, plus a word-sized
//! prime-field variant used by the completeness probe.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::arith::Rational;

pub type SparseVec<K> = BTreeMap<K, Rational>;

fn axpy<K: Ord + Clone>(v: &mut SparseVec<K>, c: &Rational, w: &SparseVec<K>) {
    for (k, x) in w {
        let e = v.entry(k.clone()).or_insert_with(Rational::zero);
        *e += c * x;
        if e.is_zero() {
            v.remove(k);
        }
    }
}

/// Row-reduced echelon basis. Every stored row has leading coefficient 1
/// at its pivot, and no other row has a nonzero entry there.
#[derive(Clone, Debug)]
pub struct Echelon<K: Ord + Clone> {
    rows: Vec<SparseVec<K>>,
    pivots: BTreeMap<K, usize>,
}

impl<K: Ord + Clone> Default for Echelon<K> {
    fn default() -> Self {
        Echelon {
            rows: Vec::new(),
            pivots: BTreeMap::new(),
        }
    }
}

impl<K: Ord + Clone> Echelon<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseVec<K>] {
        &self.rows
    }

    pub fn pivot_keys(&self) -> impl Iterator<Item = &K> {
        self.pivots.keys()
    }

    pub fn reduce(&self, v: &SparseVec<K>) -> SparseVec<K> {
        let mut v = v.clone();
        let hits: Vec<(K, usize)> = v
            .keys()
            .filter_map(|k| self.pivots.get(k).map(|&r| (k.clone(), r)))
            .collect();
        // rows are fully reduced, so each pivot is cleared exactly once
        for (k, r) in hits {
            if let Some(c) = v.get(&k).cloned() {
                axpy(&mut v, &-c, &self.rows[r]);
            }
        }
        v
    }

    pub fn contains(&self, v: &SparseVec<K>) -> bool {
        self.reduce(v).is_empty()
    }

    /// Adds `v` to the span. Returns true if the rank grew.
    pub fn insert(&mut self, v: &SparseVec<K>) -> bool {
        let mut r = self.reduce(v);
        let Some((p, lead)) = r.iter().next().map(|(k, c)| (k.clone(), c.clone())) else {
            return false;
        };
        let inv = lead.recip();
        for c in r.values_mut() {
            *c *= &inv;
        }
        for row in self.rows.iter_mut() {
            if let Some(c) = row.get(&p).cloned() {
                axpy(row, &-c, &r);
            }
        }
        self.pivots.insert(p, self.rows.len());
        self.rows.push(r);
        true
    }

    /// Coordinates of `v` against the stored rows, or `None` if `v` is
    /// outside the span.
    pub fn coordinates(&self, v: &SparseVec<K>) -> Option<Vec<Rational>> {
        if !self.contains(v) {
            return None;
        }
        let mut out = vec![Rational::zero(); self.rows.len()];
        for (k, &r) in &self.pivots {
            if let Some(c) = v.get(k) {
                out[r] = c.clone();
            }
        }
        Some(out)
    }
}

/// Outcome of solving `Σ c_j a_j = b`.
#[derive(Clone, Debug, PartialEq)]
pub enum Solution<K> {
    Unique(Vec<Rational>),
    Family {
        particular: Vec<Rational>,
        kernel: Vec<Vec<Rational>>,
    },
    Infeasible { residual: SparseVec<K> },
}

/// Solves for the coefficients expressing `b` in the columns `cols`.
pub fn solve<K: Ord + Clone>(cols: &[SparseVec<K>], b: &SparseVec<K>) -> Solution<K> {
    let n = cols.len();
    // each echelon row remembers which combination of columns produced it
    let mut rows: Vec<(K, SparseVec<K>, Vec<Rational>)> = Vec::new();
    let mut kernel = Vec::new();

    let reduce = |rows: &Vec<(K, SparseVec<K>, Vec<Rational>)>, v: &mut SparseVec<K>, combo: &mut Vec<Rational>| {
        for (p, row, rc) in rows {
            if let Some(c) = v.get(p).cloned() {
                let neg = -c;
                axpy(v, &neg, row);
                for (a, b) in combo.iter_mut().zip(rc) {
                    *a += &neg * b;
                }
            }
        }
    };

    for (j, col) in cols.iter().enumerate() {
        let mut v = col.clone();
        let mut combo = vec![Rational::zero(); n];
        combo[j] = Rational::one();
        reduce(&rows, &mut v, &mut combo);
        match v.iter().next().map(|(k, c)| (k.clone(), c.clone())) {
            None => kernel.push(combo),
            Some((p, lead)) => {
                let inv = lead.recip();
                for c in v.values_mut() {
                    *c *= &inv;
                }
                for c in combo.iter_mut() {
                    *c *= &inv;
                }
                for (_, row, rc) in rows.iter_mut() {
                    if let Some(c) = row.get(&p).cloned() {
                        let neg = -c;
                        axpy(row, &neg, &v);
                        for (a, b) in rc.iter_mut().zip(&combo) {
                            *a += &neg * b;
                        }
                    }
                }
                rows.push((p, v, combo));
            }
        }
    }

    let mut rem = b.clone();
    let mut combo = vec![Rational::zero(); n];
    reduce(&rows, &mut rem, &mut combo);
    if !rem.is_empty() {
        return Solution::Infeasible { residual: rem };
    }
    // rem = b - Σ combo_j a_j = 0
    let particular: Vec<Rational> = combo.into_iter().map(|c| -c).collect();
    if kernel.is_empty() {
        Solution::Unique(particular)
    } else {
        Solution::Family { particular, kernel }
    }
}

pub const PRIME: u64 = 2_147_483_647;

fn inv_mod(a: u64) -> u64 {
    let mut r = 1u64;
    let mut b = a % PRIME;
    let mut e = PRIME - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % PRIME;
        }
        b = b * b % PRIME;
        e >>= 1;
    }
    r
}

pub fn to_mod_p(r: &Rational) -> Option<u64> {
    use num_bigint::BigInt;
    use num_traits::ToPrimitive;
    let p = BigInt::from(PRIME);
    let n = ((r.numer() % &p) + &p) % &p;
    let d = ((r.denom() % &p) + &p) % &p;
    let d = d.to_u64()?;
    if d == 0 {
        return None;
    }
    Some(n.to_u64()? * inv_mod(d) % PRIME)
}

/// Semi-echelon basis over `F_p` for sparse rows `(column, value)`.
/// Each stored row starts at its pivot column; tails are left unreduced.
#[derive(Default, Clone, Debug)]
pub struct EchelonModP {
    rows: Vec<Vec<(u32, u64)>>,
    pivot_row: Vec<u32>,
    scratch: Vec<u64>,
}

impl EchelonModP {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reserve(&mut self, col: u32) {
        let need = col as usize + 1;
        if self.scratch.len() < need {
            self.scratch.resize(need, 0);
            self.pivot_row.resize(need, u32::MAX);
        }
    }

    /// Reduces and, if independent, stores `v`. Returns the stored row.
    pub fn insert(&mut self, v: Vec<(u32, u64)>) -> Option<&[(u32, u64)]> {
        use std::cmp::Reverse;
        use std::collections::BinaryHeap;
        let mut heap = BinaryHeap::new();
        for (k, c) in v {
            let c = c % PRIME;
            if c == 0 {
                continue;
            }
            self.reserve(k);
            let e = &mut self.scratch[k as usize];
            if *e == 0 {
                heap.push(Reverse(k));
            }
            *e = (*e + c) % PRIME;
        }
        let mut lead = None;
        while let Some(Reverse(k)) = heap.pop() {
            if heap.peek() == Some(&Reverse(k)) {
                continue;
            }
            let c = self.scratch[k as usize];
            if c == 0 {
                continue;
            }
            let r = self.pivot_row[k as usize];
            if r == u32::MAX {
                lead = Some(k);
                break;
            }
            let f = PRIME - c;
            for &(j, x) in &self.rows[r as usize] {
                if j as usize >= self.scratch.len() {
                    self.scratch.resize(j as usize + 1, 0);
                    self.pivot_row.resize(j as usize + 1, u32::MAX);
                }
                let e = &mut self.scratch[j as usize];
                if *e == 0 {
                    heap.push(Reverse(j));
                }
                *e = (*e + f * x) % PRIME;
            }
        }
        let lead = lead?;
        let inv = inv_mod(self.scratch[lead as usize]);
        let mut cols: Vec<u32> = heap.into_iter().map(|Reverse(k)| k).collect();
        cols.push(lead);
        cols.sort_unstable();
        cols.dedup();
        let mut row = Vec::with_capacity(cols.len());
        for k in cols {
            let c = std::mem::take(&mut self.scratch[k as usize]);
            if c != 0 {
                row.push((k, c * inv % PRIME));
            }
        }
        self.pivot_row[lead as usize] = self.rows.len() as u32;
        self.rows.push(row);
        self.rows.last().map(|r| r.as_slice())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    fn v(items: &[(u32, i64)]) -> SparseVec<u32> {
        items.iter().map(|&(k, c)| (k, int(c))).collect()
    }

    #[test]
    fn rank_and_membership() {
        let mut e = Echelon::new();
        assert!(e.insert(&v(&[(0, 1), (1, 2)])));
        assert!(e.insert(&v(&[(1, 1), (2, 1)])));
        assert!(!e.insert(&v(&[(0, 1), (1, 3), (2, 1)])));
        assert_eq!(e.rank(), 2);
        assert!(!e.contains(&v(&[(2, 1)])));
        let c = e.coordinates(&v(&[(0, 2), (1, 5), (2, 1)])).unwrap();
        assert_eq!(c, vec![int(2), int(5)]);
    }

    #[test]
    fn solve_cases() {
        let cols = vec![v(&[(0, 1)]), v(&[(1, 2)])];
        assert_eq!(solve(&cols, &v(&[(0, 3), (1, 1)])), Solution::Unique(vec![int(3), rat(1, 2)]));
        match solve(&cols, &v(&[(2, 1)])) {
            Solution::Infeasible { residual } => assert_eq!(residual, v(&[(2, 1)])),
            other => panic!("{other:?}"),
        }
        let cols = vec![v(&[(0, 1)]), v(&[(0, 2)])];
        match solve(&cols, &v(&[(0, 4)])) {
            Solution::Family { particular, kernel } => {
                assert_eq!(particular, vec![int(4), int(0)]);
                assert_eq!(kernel, vec![vec![int(-2), int(1)]]);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn mod_p_rank_matches_rational() {
        let rows = [[1i64, 2, 3], [4, 5, 6], [7, 8, 9], [1, 0, 1]];
        let mut q = Echelon::new();
        let mut m = EchelonModP::new();
        for r in rows {
            let sv: SparseVec<u32> = r.iter().enumerate().filter(|(_, &c)| c != 0).map(|(k, &c)| (k as u32, int(c))).collect();
            q.insert(&sv);
            m.insert(sv.iter().map(|(k, c)| (*k, to_mod_p(c).unwrap())).collect());
        }
        assert_eq!(q.rank(), 3);
        assert_eq!(m.rank(), 3);
        assert_eq!(to_mod_p(&rat(-1, 2)).unwrap() * 2 % PRIME, PRIME - 1);
    }
}
