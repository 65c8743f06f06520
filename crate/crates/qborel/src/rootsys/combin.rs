use std::fmt;

use super::{height, vadd, vsub, LatVec, RootDatum, RootError, WeylElt};

/// A set of pairwise orthogonal simple roots (0-based indices, sorted).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default, serde::Serialize)]
pub struct SupportSet(Vec<usize>);

impl SupportSet {
    pub fn empty() -> Self {
        SupportSet(Vec::new())
    }

    pub fn new(datum: &RootDatum, indices: &[usize]) -> Result<Self, RootError> {
        let mut v = indices.to_vec();
        v.sort_unstable();
        v.dedup();
        for &i in &v {
            if i >= datum.rank() {
                return Err(RootError::IndexOutOfRange { index: i, rank: datum.rank() });
            }
        }
        for (a, &i) in v.iter().enumerate() {
            for &j in &v[a + 1..] {
                if datum.form_simple(i, j) != 0 {
                    return Err(RootError::NotOrthogonal(i, j));
                }
            }
        }
        Ok(SupportSet(v))
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.contains(&i)
    }

    /// True when `v` is an integer combination of the support roots.
    pub fn spans(&self, v: &[i32]) -> bool {
        v.iter().enumerate().all(|(i, &x)| x == 0 || self.contains(i))
    }
}

impl fmt::Display for SupportSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|i| format!("α{}", i + 1)).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// Row of the rank-3/4 parabolic table for a root difference.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum ParabolicRow {
    EqualRoots,
    /// `α123 − α2 = α1 + α3`, all roots of one length.
    A3,
    /// `α123 − α2` with a short outer root of multiplicity one.
    B3Single,
    /// `α1123 − α2`: the short root enters twice.
    B3Double,
    /// `α123 − α2` with a short middle root.
    C3,
    /// `α1234 − α4 = α1 + α2 + α3`.
    D4,
    /// Not one of the listed configurations.
    Other,
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct Criterion1Report {
    pub difference: LatVec,
    pub in_support_lattice: bool,
    pub row: Option<ParabolicRow>,
}

/// Result of summing along a Dynkin path.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RhoPath {
    Root(LatVec),
    /// The nodes are adjacent, so the interior of the path is empty.
    EmptyPath,
}

impl RootDatum {
    /// Orthogonal subsets of the simple roots lying in `Φ⁺(w)`, including the empty set.
    pub fn valid_supports(&self, w: &WeylElt) -> Vec<SupportSet> {
        let phi = self.phi_plus_set(w);
        let candidates: Vec<usize> = (0..self.rank()).filter(|&i| phi.contains(&self.simple_root(i))).collect();
        let mut out = Vec::new();
        for mask in 0u32..(1 << candidates.len()) {
            let subset: Vec<usize> =
                candidates.iter().enumerate().filter(|(b, _)| mask & (1 << b) != 0).map(|(_, &i)| i).collect();
            if let Ok(s) = SupportSet::new(self, &subset) {
                out.push(s);
            }
        }
        out.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
        out
    }

    /// Locates `beta_i - beta_j` in the parabolic table relative to the support.
    pub fn criterion1_classify(&self, beta_i: &[i32], beta_j: &[i32], support: &SupportSet) -> Criterion1Report {
        let difference = vsub(beta_i, beta_j);
        if !support.spans(&difference) {
            return Criterion1Report { difference, in_support_lattice: false, row: None };
        }
        if difference.iter().all(|&x| x == 0) {
            return Criterion1Report { difference, in_support_lattice: true, row: Some(ParabolicRow::EqualRoots) };
        }
        let outer: Vec<usize> = (0..self.rank()).filter(|&i| difference[i] != 0).collect();
        let row = self.classify_star(&outer, &difference, beta_j);
        Criterion1Report { difference, in_support_lattice: true, row: Some(row) }
    }

    fn classify_star(&self, outer: &[usize], difference: &[i32], center: &[i32]) -> ParabolicRow {
        let center_len = self.form(center, center);
        let connected = outer.iter().all(|&s| self.form_with_simple(s, center) != 0);
        let positive_coeffs = outer.iter().all(|&s| difference[s] > 0);
        if !connected || !positive_coeffs {
            return ParabolicRow::Other;
        }
        let lens: Vec<i32> = outer.iter().map(|&s| self.form_simple(s, s)).collect();
        match outer.len() {
            2 => {
                let short_outer: Vec<usize> =
                    outer.iter().copied().filter(|&s| self.form_simple(s, s) < center_len).collect();
                let long_outer = lens.iter().any(|&l| l > center_len);
                match (short_outer.as_slice(), long_outer) {
                    ([], false) if outer.iter().all(|&s| difference[s] == 1) => ParabolicRow::A3,
                    ([s], false) if difference[*s] == 1 => ParabolicRow::B3Single,
                    ([s], false) if difference[*s] == 2 => ParabolicRow::B3Double,
                    ([], true) if outer.iter().all(|&s| difference[s] == 1) => ParabolicRow::C3,
                    _ => ParabolicRow::Other,
                }
            }
            3 if lens.iter().all(|&l| l == center_len) && outer.iter().all(|&s| difference[s] == 1) => {
                ParabolicRow::D4
            }
            _ => ParabolicRow::Other,
        }
    }

    /// Sum of the simple roots strictly inside the Dynkin path from `i` to `j`.
    pub fn rho_path(&self, i: usize, j: usize) -> Result<RhoPath, RootError> {
        for k in [i, j] {
            if k >= self.rank() {
                return Err(RootError::IndexOutOfRange { index: k, rank: self.rank() });
            }
        }
        if i == j {
            return Err(RootError::IndexOutOfRange { index: j, rank: self.rank() });
        }
        let path = self.dynkin_path(i, j);
        if path.len() == 2 {
            return Ok(RhoPath::EmptyPath);
        }
        let rho = path[1..path.len() - 1].iter().fold(self.zero(), |acc, &k| vadd(&acc, &self.simple_root(k)));
        Ok(RhoPath::Root(rho))
    }

    fn dynkin_path(&self, from: usize, to: usize) -> Vec<usize> {
        let n = self.rank();
        let mut prev = vec![usize::MAX; n];
        let mut queue = std::collections::VecDeque::from([from]);
        prev[from] = from;
        while let Some(x) = queue.pop_front() {
            for y in 0..n {
                if self.adjacent(x, y) && prev[y] == usize::MAX {
                    prev[y] = x;
                    queue.push_back(y);
                }
            }
        }
        let mut path = vec![to];
        while *path.last().unwrap() != from {
            path.push(prev[*path.last().unwrap()]);
        }
        path.reverse();
        path
    }

    /// Whether `v` can be written as a sum of two roots of the given set.
    pub fn is_decomposable_in(&self, v: &[i32], roots: &[LatVec]) -> bool {
        roots.iter().any(|a| {
            let rest = vsub(v, a);
            height(&rest) > 0 && roots.contains(&rest)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn datum(s: &str) -> RootDatum {
        s.parse().unwrap()
    }

    #[test]
    fn supports() {
        let a2 = datum("A2");
        let s1 = a2.simple_reflection(0);
        assert_eq!(a2.valid_supports(&s1), vec![SupportSet::empty(), SupportSet::new(&a2, &[0]).unwrap()]);
        let w0 = a2.longest_element();
        let sup: Vec<String> = a2.valid_supports(&w0).iter().map(ToString::to_string).collect();
        assert_eq!(sup, ["{}", "{α1}", "{α2}"]);
        let a3 = datum("A3");
        let w = a3.from_reduced_word(&[2, 0, 1]).unwrap();
        assert!(a3.valid_supports(&w).contains(&SupportSet::new(&a3, &[0, 2]).unwrap()));
        assert_eq!(SupportSet::new(&a2, &[0, 1]), Err(RootError::NotOrthogonal(0, 1)));
    }

    #[test]
    fn supports_are_orthogonal_everywhere() {
        for name in ["A3", "B3", "C3", "D4"] {
            let d = datum(name);
            for w in d.weyl_group() {
                for s in d.valid_supports(&w) {
                    assert_eq!(SupportSet::new(&d, s.indices()).as_ref(), Ok(&s));
                }
            }
        }
    }

    #[test]
    fn criterion1_table() {
        let a3 = datum("A3");
        let s13 = SupportSet::new(&a3, &[0, 2]).unwrap();
        let r = a3.criterion1_classify(&[1, 1, 1], &[0, 1, 0], &s13);
        assert_eq!(r.row, Some(ParabolicRow::A3));
        assert_eq!(r.difference, vec![1, 0, 1]);
        assert_eq!(a3.criterion1_classify(&[0, 1, 0], &[0, 1, 0], &s13).row, Some(ParabolicRow::EqualRoots));
        assert!(!a3.criterion1_classify(&[1, 1, 0], &[0, 0, 1], &s13).in_support_lattice);

        let b3 = datum("B3");
        let s13 = SupportSet::new(&b3, &[0, 2]).unwrap();
        assert_eq!(b3.criterion1_classify(&[2, 1, 1], &[0, 1, 0], &s13).row, Some(ParabolicRow::B3Double));
        assert_eq!(b3.criterion1_classify(&[1, 1, 1], &[0, 1, 0], &s13).row, Some(ParabolicRow::B3Single));

        let c3 = datum("C3");
        let s13 = SupportSet::new(&c3, &[0, 2]).unwrap();
        assert_eq!(c3.criterion1_classify(&[1, 1, 1], &[0, 1, 0], &s13).row, Some(ParabolicRow::C3));

        let d4 = datum("D4");
        let legs = SupportSet::new(&d4, &[0, 1, 3]).unwrap();
        assert_eq!(d4.criterion1_classify(&[1, 1, 1, 1], &[0, 0, 1, 0], &legs).row, Some(ParabolicRow::D4));
    }

    #[test]
    fn rho_paths() {
        let a3 = datum("A3");
        assert_eq!(a3.rho_path(0, 2), Ok(RhoPath::Root(vec![0, 1, 0])));
        let a4 = datum("A4");
        assert_eq!(a4.rho_path(0, 3), Ok(RhoPath::Root(vec![0, 1, 1, 0])));
        assert_eq!(datum("A2").rho_path(0, 1), Ok(RhoPath::EmptyPath));
        // ρ_ij + α_i and ρ_ij + α_j are roots for every non-adjacent pair.
        for name in ["A4", "B4", "C4", "D5"] {
            let d = datum(name);
            for i in 0..d.rank() {
                for j in 0..d.rank() {
                    if i == j {
                        continue;
                    }
                    if let Ok(RhoPath::Root(rho)) = d.rho_path(i, j) {
                        assert!(d.is_root(&vadd(&rho, &d.simple_root(i))), "{name} {i} {j}");
                        assert!(d.is_root(&vadd(&rho, &d.simple_root(j))));
                        assert_eq!((rho[i], rho[j]), (0, 0));
                    }
                }
            }
        }
    }
}
