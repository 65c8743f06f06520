//! Root systems of types A, B, C, D and G2, their Weyl groups, and the
//! combinatorial predicates used by the coideal machinery.
//!
//! Roots and weights are integer vectors in the basis of simple roots; the
//! bilinear form comes from the symmetrized Cartan matrix. Simple roots are
//! indexed from 0 in code.
//!
//! Conventions for the non-simply-laced types: in `B_n` the first simple root
//! is the unique short one, in `C_n` it is the unique long one, and in `G2` the
//! first root is short. `D_n` has its two fork legs at indices 0 and 1, both
//! attached to index 2.

mod combin;
mod lattice;
mod weyl;

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

pub use combin::{Criterion1Report, ParabolicRow, RhoPath, SupportSet};
pub use lattice::{integer_kernel, integer_rank};
pub use weyl::WeylElt;

/// Integer vector in the simple-root basis.
pub type LatVec = Vec<i32>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RootError {
    #[error("unsupported root datum {0}")]
    Unsupported(String),
    #[error("simple root index {index} out of range for rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },
    #[error("simple roots {0} and {1} are not orthogonal")]
    NotOrthogonal(usize, usize),
    #[error("the identity has no ending")]
    IdentityHasNoEnding,
    #[error("{0:?} is not a root")]
    NotARoot(LatVec),
    #[error("word {0:?} is not reduced")]
    NotReduced(Vec<usize>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
pub enum CartanType {
    A,
    B,
    C,
    D,
    G,
}

/// Cartan data for a fixed type and rank.
#[derive(Clone)]
pub struct RootDatum {
    kind: CartanType,
    rank: usize,
    cartan: Vec<Vec<i32>>,
    sym: Vec<i32>,
    form: Vec<Vec<i32>>,
    positive: Vec<LatVec>,
    index: HashMap<LatVec, usize>,
}

impl fmt::Debug for RootDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RootDatum({})", self.name())
    }
}

impl FromStr for RootDatum {
    type Err = RootError;

    /// Accepts names like `A2`, `B3`, `D4`, `G2`.
    fn from_str(s: &str) -> Result<Self, RootError> {
        let s = s.trim();
        let bad = || RootError::Unsupported(s.to_string());
        let mut chars = s.chars();
        let kind = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => CartanType::A,
            Some('B') => CartanType::B,
            Some('C') => CartanType::C,
            Some('D') => CartanType::D,
            Some('G') => CartanType::G,
            _ => return Err(bad()),
        };
        let rank: usize = chars.as_str().parse().map_err(|_| bad())?;
        RootDatum::new(kind, rank)
    }
}

impl RootDatum {
    pub fn new(kind: CartanType, rank: usize) -> Result<Self, RootError> {
        let name = format!("{kind:?}{rank}");
        let valid = match kind {
            CartanType::A => rank >= 1,
            CartanType::B | CartanType::C => rank >= 2,
            CartanType::D => rank >= 4,
            CartanType::G => rank == 2,
        };
        if !valid || rank > 12 {
            return Err(RootError::Unsupported(name));
        }
        let mut form = vec![vec![0i32; rank]; rank];
        let chain = |form: &mut Vec<Vec<i32>>, from: usize, len: i32, off: i32| {
            for i in from..rank {
                form[i][i] = len;
                if i + 1 < rank {
                    form[i][i + 1] = off;
                    form[i + 1][i] = off;
                }
            }
        };
        match kind {
            CartanType::A => chain(&mut form, 0, 2, -1),
            CartanType::B => {
                chain(&mut form, 0, 4, -2);
                form[0][0] = 2;
            }
            CartanType::C => {
                chain(&mut form, 0, 2, -1);
                form[0][0] = 4;
                form[0][1] = -2;
                form[1][0] = -2;
            }
            CartanType::D => {
                chain(&mut form, 2, 2, -1);
                for leg in [0, 1] {
                    form[leg][leg] = 2;
                    form[leg][2] = -1;
                    form[2][leg] = -1;
                }
            }
            CartanType::G => {
                form = vec![vec![2, -3], vec![-3, 6]];
            }
        }
        let sym: Vec<i32> = (0..rank).map(|i| form[i][i] / 2).collect();
        let cartan = (0..rank)
            .map(|i| (0..rank).map(|j| 2 * form[i][j] / form[i][i]).collect())
            .collect();
        let mut datum = RootDatum { kind, rank, cartan, sym, form, positive: Vec::new(), index: HashMap::new() };
        datum.positive = datum.close_under_reflections();
        datum.index = datum.positive.iter().enumerate().map(|(k, r)| (r.clone(), k)).collect();
        Ok(datum)
    }

    fn close_under_reflections(&self) -> Vec<LatVec> {
        let mut roots: Vec<LatVec> = (0..self.rank).map(|i| self.simple_root(i)).collect();
        let mut seen: std::collections::HashSet<LatVec> = roots.iter().cloned().collect();
        let mut frontier = roots.clone();
        while let Some(r) = frontier.pop() {
            for i in 0..self.rank {
                let s = self.reflect_simple(i, &r);
                if is_positive(&s) && seen.insert(s.clone()) {
                    roots.push(s.clone());
                    frontier.push(s);
                }
            }
        }
        roots.sort_by_key(|r| (height(r), r.clone()));
        roots
    }

    pub fn kind(&self) -> CartanType {
        self.kind
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Short name such as `B3`.
    pub fn name(&self) -> String {
        format!("{:?}{}", self.kind, self.rank)
    }

    /// Cartan integer `c_ij = 2 (α_i, α_j) / (α_i, α_i)`.
    pub fn cartan(&self, i: usize, j: usize) -> i32 {
        self.cartan[i][j]
    }

    pub fn cartan_matrix(&self) -> &[Vec<i32>] {
        &self.cartan
    }

    /// Symmetrizer `d_i = (α_i, α_i) / 2`.
    pub fn sym(&self, i: usize) -> i32 {
        self.sym[i]
    }

    pub fn symmetrizers(&self) -> &[i32] {
        &self.sym
    }

    pub fn form_simple(&self, i: usize, j: usize) -> i32 {
        self.form[i][j]
    }

    /// Bilinear form on the root lattice.
    pub fn form(&self, u: &[i32], v: &[i32]) -> i32 {
        let mut acc = 0;
        for (i, &ui) in u.iter().enumerate() {
            if ui == 0 {
                continue;
            }
            for (j, &vj) in v.iter().enumerate() {
                acc += ui * vj * self.form[i][j];
            }
        }
        acc
    }

    /// `(α_i, v)`.
    pub fn form_with_simple(&self, i: usize, v: &[i32]) -> i32 {
        v.iter().zip(&self.form[i]).map(|(a, b)| a * b).sum()
    }

    /// `⟨v, α_i^∨⟩ = 2 (v, α_i) / (α_i, α_i)`.
    pub fn coroot_pairing(&self, i: usize, v: &[i32]) -> i32 {
        2 * self.form_with_simple(i, v) / self.form[i][i]
    }

    pub fn simple_root(&self, i: usize) -> LatVec {
        let mut v = vec![0; self.rank];
        v[i] = 1;
        v
    }

    pub fn zero(&self) -> LatVec {
        vec![0; self.rank]
    }

    pub fn reflect_simple(&self, i: usize, v: &[i32]) -> LatVec {
        let c = self.coroot_pairing(i, v);
        let mut out = v.to_vec();
        out[i] -= c;
        out
    }

    pub fn positive_roots(&self) -> &[LatVec] {
        &self.positive
    }

    pub fn root_index(&self, root: &[i32]) -> Option<usize> {
        self.index.get(root).copied()
    }

    pub fn is_root(&self, v: &[i32]) -> bool {
        if is_positive(v) {
            self.index.contains_key(v)
        } else {
            let neg: LatVec = v.iter().map(|x| -x).collect();
            self.index.contains_key(&neg)
        }
    }

    pub fn highest_root(&self) -> LatVec {
        self.positive.last().cloned().expect("nonempty root system")
    }

    /// Classical count of positive roots, used as a self-check.
    pub fn expected_positive_count(&self) -> usize {
        let n = self.rank;
        match self.kind {
            CartanType::A => n * (n + 1) / 2,
            CartanType::B | CartanType::C => n * n,
            CartanType::D => n * (n - 1),
            CartanType::G => 6,
        }
    }

    /// True when two simple roots are joined in the Dynkin diagram.
    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        i != j && self.form[i][j] != 0
    }

    /// Number of multisets of positive roots summing to `nu`.
    pub fn kostant_dim(&self, nu: &[i32]) -> u64 {
        if nu.iter().any(|&x| x < 0) {
            return 0;
        }
        let mut memo = HashMap::new();
        self.kostant_rec(nu.to_vec(), 0, &mut memo)
    }

    fn kostant_rec(&self, nu: LatVec, from: usize, memo: &mut HashMap<(LatVec, usize), u64>) -> u64 {
        if nu.iter().all(|&x| x == 0) {
            return 1;
        }
        if from == self.positive.len() {
            return 0;
        }
        if let Some(&v) = memo.get(&(nu.clone(), from)) {
            return v;
        }
        let root = &self.positive[from];
        let mut total = 0;
        let mut rest = nu.clone();
        loop {
            total += self.kostant_rec(rest.clone(), from + 1, memo);
            for (x, r) in rest.iter_mut().zip(root) {
                *x -= r;
            }
            if rest.iter().any(|&x| x < 0) {
                break;
            }
        }
        memo.insert((nu, from), total);
        total
    }

    /// All nonnegative vectors `v` with `v <= bound` componentwise, by height then lex.
    pub fn vectors_below(&self, bound: &[i32]) -> Vec<LatVec> {
        let mut out = vec![Vec::new()];
        for &b in bound {
            out = out
                .into_iter()
                .flat_map(|prefix: LatVec| {
                    (0..=b.max(0)).map(move |x| {
                        let mut p = prefix.clone();
                        p.push(x);
                        p
                    })
                })
                .collect();
        }
        out.sort_by_key(|v| (height(v), v.clone()));
        out
    }
}

pub fn height(v: &[i32]) -> i32 {
    v.iter().sum()
}

/// Nonzero with all coordinates nonnegative.
pub fn is_positive(v: &[i32]) -> bool {
    v.iter().all(|&x| x >= 0) && v.iter().any(|&x| x > 0)
}

pub fn is_negative(v: &[i32]) -> bool {
    v.iter().all(|&x| x <= 0) && v.iter().any(|&x| x < 0)
}

pub fn vadd(a: &[i32], b: &[i32]) -> LatVec {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn vsub(a: &[i32], b: &[i32]) -> LatVec {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn vscale(a: &[i32], c: i32) -> LatVec {
    a.iter().map(|x| x * c).collect()
}

/// Renders a root as `α123`-style shorthand (1-based digits, repeated by multiplicity).
pub fn root_label(v: &[i32]) -> String {
    if v.iter().all(|&x| x == 0) {
        return "0".into();
    }
    if v.iter().any(|&x| x < 0) || v.len() > 9 {
        return format!("{v:?}");
    }
    let mut s = String::from("α");
    for (i, &m) in v.iter().enumerate() {
        for _ in 0..m {
            s.push_str(&(i + 1).to_string());
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn datum(s: &str) -> RootDatum {
        s.parse().unwrap()
    }

    #[test]
    fn positive_root_counts() {
        for name in ["A1", "A2", "A3", "A4", "B2", "B3", "B4", "C3", "C4", "D4", "D5", "G2"] {
            let d = datum(name);
            assert_eq!(d.positive_roots().len(), d.expected_positive_count(), "{name}");
            for r in d.positive_roots() {
                assert!(d.form(r, r) > 0);
            }
        }
    }

    #[test]
    fn cartan_is_symmetrizable() {
        for name in ["B3", "C3", "G2", "D4"] {
            let d = datum(name);
            for i in 0..d.rank() {
                for j in 0..d.rank() {
                    assert_eq!(d.sym(i) * d.cartan(i, j), d.form_simple(i, j));
                    assert_eq!(d.form_simple(i, j), d.form_simple(j, i));
                }
            }
        }
    }

    #[test]
    fn highest_roots() {
        assert_eq!(datum("A3").highest_root(), vec![1, 1, 1]);
        assert_eq!(datum("B3").highest_root(), vec![2, 2, 1]);
        assert_eq!(datum("C3").highest_root(), vec![1, 2, 2]);
        assert_eq!(datum("G2").highest_root(), vec![3, 2]);
        assert_eq!(datum("D4").highest_root(), vec![1, 1, 2, 1]);
        assert!(datum("B3").is_root(&[2, 1, 1]));
    }

    #[test]
    fn kostant_examples() {
        let a2 = datum("A2");
        assert_eq!(a2.kostant_dim(&[1, 0]), 1);
        assert_eq!(a2.kostant_dim(&[1, 1]), 2);
        assert_eq!(a2.kostant_dim(&[2, 1]), 2);
        assert_eq!(a2.kostant_dim(&[-1, 1]), 0);
        // Brute-force oracle over multisets for a few B3 degrees.
        let b3 = datum("B3");
        for nu in b3.vectors_below(&[2, 2, 2]) {
            assert_eq!(b3.kostant_dim(&nu), brute_partitions(b3.positive_roots(), &nu), "{nu:?}");
        }
    }

    fn brute_partitions(roots: &[LatVec], nu: &[i32]) -> u64 {
        fn go(roots: &[LatVec], nu: &mut Vec<i32>, from: usize) -> u64 {
            if nu.iter().all(|&x| x == 0) {
                return 1;
            }
            let mut n = 0;
            for k in from..roots.len() {
                if roots[k].iter().zip(nu.iter()).all(|(r, x)| r <= x) {
                    for (x, r) in nu.iter_mut().zip(&roots[k]) {
                        *x -= r;
                    }
                    n += go(roots, nu, k);
                    for (x, r) in nu.iter_mut().zip(&roots[k]) {
                        *x += r;
                    }
                }
            }
            n
        }
        go(roots, &mut nu.to_vec(), 0)
    }

    #[test]
    fn unsupported_names() {
        assert!("E6".parse::<RootDatum>().is_err());
        assert!("D3".parse::<RootDatum>().is_err());
        assert!("G3".parse::<RootDatum>().is_err());
    }
}
