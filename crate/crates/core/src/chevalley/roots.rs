use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

pub type Root = Vec<i64>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CartanType {
    A(usize),
    B(usize),
    C(usize),
    D(usize),
    G2,
    F4,
    E6,
    E7,
    E8,
}

impl FromStr for CartanType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::UnknownType(s.to_string());
        let s2 = s.trim().to_ascii_uppercase();
        let (head, tail) = s2.split_at(1.min(s2.len()));
        let n: usize = tail.parse().map_err(|_| bad())?;
        let ty = match (head, n) {
            ("A", n) if n >= 1 => CartanType::A(n),
            ("B", n) if n >= 2 => CartanType::B(n),
            ("C", n) if n >= 2 => CartanType::C(n),
            ("D", n) if n >= 4 => CartanType::D(n),
            ("G", 2) => CartanType::G2,
            ("F", 4) => CartanType::F4,
            ("E", 6) => CartanType::E6,
            ("E", 7) => CartanType::E7,
            ("E", 8) => CartanType::E8,
            _ => return Err(bad()),
        };
        Ok(ty)
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CartanType::A(n) => write!(f, "A{n}"),
            CartanType::B(n) => write!(f, "B{n}"),
            CartanType::C(n) => write!(f, "C{n}"),
            CartanType::D(n) => write!(f, "D{n}"),
            CartanType::G2 => write!(f, "G2"),
            CartanType::F4 => write!(f, "F4"),
            CartanType::E6 => write!(f, "E6"),
            CartanType::E7 => write!(f, "E7"),
            CartanType::E8 => write!(f, "E8"),
        }
    }
}

/// Simply-laced Cartan matrix from a list of edges (1-based nodes).
fn from_edges(rank: usize, edges: &[(usize, usize)]) -> Vec<Vec<i64>> {
    let mut a = vec![vec![0; rank]; rank];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 2;
    }
    for &(i, j) in edges {
        a[i - 1][j - 1] = -1;
        a[j - 1][i - 1] = -1;
    }
    a
}

fn chain(from: usize, to: usize) -> Vec<(usize, usize)> {
    (from..to).map(|i| (i, i + 1)).collect()
}

impl CartanType {
    pub fn rank(self) -> usize {
        match self {
            CartanType::A(n) | CartanType::B(n) | CartanType::C(n) | CartanType::D(n) => n,
            CartanType::G2 => 2,
            CartanType::F4 => 4,
            CartanType::E6 => 6,
            CartanType::E7 => 7,
            CartanType::E8 => 8,
        }
    }

    pub fn positive_root_count(self) -> usize {
        match self {
            CartanType::A(n) => n * (n + 1) / 2,
            CartanType::B(n) | CartanType::C(n) => n * n,
            CartanType::D(n) => n * (n - 1),
            CartanType::G2 => 6,
            CartanType::F4 => 24,
            CartanType::E6 => 36,
            CartanType::E7 => 63,
            CartanType::E8 => 120,
        }
    }

    pub fn is_simply_laced(self) -> bool {
        matches!(self, CartanType::A(_) | CartanType::D(_) | CartanType::E6 | CartanType::E7 | CartanType::E8)
    }

    /// Simply-laced diagrams, with the E-series numbered so that node `r`
    /// closes the chain `1 - 2 - … - (r-1)` from below: E6 hangs node 6 off
    /// node 3, E7 hangs node 7 off node 4, E8 hangs node 8 off node 5.
    fn simply_laced_matrix(self) -> Vec<Vec<i64>> {
        match self {
            CartanType::A(n) => from_edges(n, &chain(1, n)),
            CartanType::D(n) => {
                let mut e = chain(1, n - 1);
                e.push((n - 2, n));
                from_edges(n, &e)
            }
            CartanType::E6 => {
                let mut e = chain(1, 5);
                e.push((3, 6));
                from_edges(6, &e)
            }
            CartanType::E7 => {
                let mut e = chain(1, 6);
                e.push((4, 7));
                from_edges(7, &e)
            }
            CartanType::E8 => {
                let mut e = chain(1, 7);
                e.push((5, 8));
                from_edges(8, &e)
            }
            _ => unreachable!("not simply laced"),
        }
    }

    /// Simply-laced cover and the node orbits (1-based) whose sums give the
    /// simple root vectors of `self`.
    pub fn folding(self) -> (CartanType, Vec<Vec<usize>>) {
        match self {
            t if t.is_simply_laced() => (t, (1..=t.rank()).map(|i| vec![i]).collect()),
            CartanType::B(n) => {
                let mut orbits: Vec<Vec<usize>> = (1..n).map(|i| vec![i]).collect();
                orbits.push(vec![n, n + 1]);
                (CartanType::D(n + 1), orbits)
            }
            CartanType::C(n) => {
                let mut orbits: Vec<Vec<usize>> = (1..n).map(|i| vec![i, 2 * n - i]).collect();
                orbits.push(vec![n]);
                (CartanType::A(2 * n - 1), orbits)
            }
            CartanType::G2 => (CartanType::D(4), vec![vec![1, 3, 4], vec![2]]),
            CartanType::F4 => (CartanType::E6, vec![vec![1, 5], vec![2, 4], vec![3], vec![6]]),
            _ => unreachable!(),
        }
    }

    /// `A[i][j] = α_j(H_i)`.
    ///
    /// Classical types follow the usual numbering with the special node
    /// last. G2 has node 1 short; F4 has nodes 1, 2 short and the double
    /// bond between 2 and 3.
    pub fn cartan_matrix(self) -> Vec<Vec<i64>> {
        if self.is_simply_laced() {
            return self.simply_laced_matrix();
        }
        let (cover, orbits) = self.folding();
        let a = cover.simply_laced_matrix();
        let r = orbits.len();
        let mut out = vec![vec![0; r]; r];
        for i in 0..r {
            for j in 0..r {
                let b = orbits[j][0] - 1;
                out[i][j] = orbits[i].iter().map(|&ai| a[ai - 1][b]).sum();
            }
        }
        out
    }
}

#[derive(Clone, Debug)]
pub struct RootSystem {
    pub cartan_type: CartanType,
    pub rank: usize,
    pub cartan: Vec<Vec<i64>>,
    /// Positive roots in simple-root coordinates, sorted by height then
    /// lexicographically.
    pub positive: Vec<Root>,
}

pub fn height(r: &[i64]) -> i64 {
    r.iter().sum()
}

impl RootSystem {
    pub fn is_root(&self, r: &[i64]) -> bool {
        self.index_of(r).is_some()
    }

    /// Index among positive roots, or `None`.
    pub fn index_of(&self, r: &[i64]) -> Option<usize> {
        self.positive.binary_search_by(|p| height(p).cmp(&height(r)).then_with(|| p.as_slice().cmp(r))).ok()
    }

    /// `⟨β, α_i^∨⟩ = β(H_i)`
    pub fn pairing(&self, beta: &[i64], i: usize) -> i64 {
        beta.iter().enumerate().map(|(j, b)| b * self.cartan[i][j]).sum()
    }

    /// Largest `p` with `β - pα_i` a root (positive or negative).
    pub fn string_below(&self, beta: &[i64], i: usize) -> i64 {
        let mut p = 0;
        let mut cur = beta.to_vec();
        loop {
            cur[i] -= 1;
            let neg: Vec<i64> = cur.iter().map(|c| -c).collect();
            if self.is_root(&cur) || self.is_root(&neg) {
                p += 1;
            } else {
                return p;
            }
        }
    }

    pub fn simple_reflection(&self, beta: &[i64], i: usize) -> Root {
        let mut out = beta.to_vec();
        out[i] -= self.pairing(beta, i);
        out
    }

    pub fn dim(&self) -> usize {
        self.rank + 2 * self.positive.len()
    }
}

pub fn build_root_system(ty: CartanType) -> RootSystem {
    let cartan = ty.cartan_matrix();
    let rank = ty.rank();
    let mut found: BTreeSet<(i64, Root)> = BTreeSet::new();
    let mut layer: Vec<Root> = (0..rank)
        .map(|i| {
            let mut r = vec![0; rank];
            r[i] = 1;
            r
        })
        .collect();
    let mut seen: HashSet<Root> = layer.iter().cloned().collect();
    let probe = RootSystem {
        cartan_type: ty,
        rank,
        cartan: cartan.clone(),
        positive: Vec::new(),
    };
    while !layer.is_empty() {
        for r in &layer {
            found.insert((height(r), r.clone()));
        }
        let mut next = Vec::new();
        for beta in &layer {
            for i in 0..rank {
                // β + α_i is a root iff p - ⟨β, α_i^∨⟩ > 0, p counted downwards
                let mut p = 0;
                let mut cur = beta.clone();
                loop {
                    cur[i] -= 1;
                    if cur.iter().all(|&c| c >= 0) && cur.iter().any(|&c| c > 0) && seen.contains(&cur) {
                        p += 1;
                    } else {
                        break;
                    }
                }
                if p - probe.pairing(beta, i) > 0 {
                    let mut up = beta.clone();
                    up[i] += 1;
                    if seen.insert(up.clone()) {
                        next.push(up);
                    }
                }
            }
        }
        layer = next;
    }
    RootSystem {
        cartan_type: ty,
        rank,
        cartan,
        positive: found.into_iter().map(|(_, r)| r).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        for ty in ["A2", "A5", "B3", "C4", "D4", "D5", "G2", "F4", "E6", "E7", "E8"] {
            let ty: CartanType = ty.parse().unwrap();
            let rs = build_root_system(ty);
            assert_eq!(rs.positive.len(), ty.positive_root_count(), "{ty}");
        }
        assert_eq!(build_root_system(CartanType::E8).dim(), 248);
        assert_eq!(build_root_system(CartanType::G2).dim(), 14);
    }

    #[test]
    fn a2_roots() {
        let rs = build_root_system(CartanType::A(2));
        assert_eq!(rs.positive, vec![vec![0, 1], vec![1, 0], vec![1, 1]]);
    }

    #[test]
    fn unknown_types() {
        for s in ["H3", "E9", "D3", "G3", "", "A0"] {
            assert!(matches!(s.parse::<CartanType>(), Err(Error::UnknownType(_))), "{s}");
        }
    }

    #[test]
    fn folded_matrices() {
        assert_eq!(CartanType::G2.cartan_matrix(), vec![vec![2, -3], vec![-1, 2]]);
        let f4 = CartanType::F4.cartan_matrix();
        assert_eq!(f4[1][2], -2);
        assert_eq!(f4[2][1], -1);
        let b3 = CartanType::B(3).cartan_matrix();
        assert_eq!((b3[1][2], b3[2][1]), (-1, -2));
        let c3 = CartanType::C(3).cartan_matrix();
        assert_eq!((c3[1][2], c3[2][1]), (-2, -1));
    }

    #[test]
    fn closed_under_reflections() {
        for ty in [CartanType::G2, CartanType::F4, CartanType::E7, CartanType::B(4), CartanType::C(3)] {
            let rs = build_root_system(ty);
            for r in &rs.positive {
                for i in 0..rs.rank {
                    let s = rs.simple_reflection(r, i);
                    let neg: Vec<i64> = s.iter().map(|c| -c).collect();
                    assert!(rs.is_root(&s) || rs.is_root(&neg), "{ty} {r:?} {i}");
                }
            }
        }
    }

    #[test]
    fn highest_root_heights() {
        // heights of the highest roots: Coxeter number minus one
        for (ty, h) in [(CartanType::G2, 5), (CartanType::F4, 11), (CartanType::E6, 11), (CartanType::E7, 17), (CartanType::E8, 29)] {
            let rs = build_root_system(ty);
            assert_eq!(height(rs.positive.last().unwrap()), h);
        }
    }
}
