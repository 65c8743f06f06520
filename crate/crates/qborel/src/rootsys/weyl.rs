use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;
use std::hash::{Hash, Hasher};

use super::{is_negative, is_positive, LatVec, RootDatum, RootError};

/// Weyl group element: lexicographically least reduced word plus the action
/// matrix on the root lattice (column `j` is the image of `α_j`).
///
/// Equality and hashing use the matrix only.
#[derive(Clone)]
pub struct WeylElt {
    word: Vec<usize>,
    matrix: Vec<Vec<i32>>,
}

impl PartialEq for WeylElt {
    fn eq(&self, other: &Self) -> bool {
        self.matrix == other.matrix
    }
}

impl Eq for WeylElt {}

impl Hash for WeylElt {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.matrix.hash(state);
    }
}

impl PartialOrd for WeylElt {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for WeylElt {
    /// Orders by length, then canonical word.
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.word.len(), &self.word).cmp(&(other.word.len(), &other.word))
    }
}

impl fmt::Debug for WeylElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for WeylElt {
    /// `s1s2s1`, or `1` for the identity (1-based indices).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return write!(f, "1");
        }
        for &i in &self.word {
            write!(f, "s{}", i + 1)?;
        }
        Ok(())
    }
}

impl WeylElt {
    pub fn word(&self) -> &[usize] {
        &self.word
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.word.is_empty()
    }

    pub fn matrix(&self) -> &[Vec<i32>] {
        &self.matrix
    }

    /// Image of a lattice vector.
    pub fn apply(&self, v: &[i32]) -> LatVec {
        let n = v.len();
        (0..n).map(|i| (0..n).map(|j| self.matrix[i][j] * v[j]).sum()).collect()
    }
}

fn identity_matrix(n: usize) -> Vec<Vec<i32>> {
    (0..n).map(|i| (0..n).map(|j| i32::from(i == j)).collect()).collect()
}

fn mat_mul(a: &[Vec<i32>], b: &[Vec<i32>]) -> Vec<Vec<i32>> {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum()).collect()).collect()
}

impl RootDatum {
    fn check_index(&self, i: usize) -> Result<(), RootError> {
        if i >= self.rank {
            Err(RootError::IndexOutOfRange { index: i, rank: self.rank })
        } else {
            Ok(())
        }
    }

    fn simple_matrix(&self, i: usize) -> Vec<Vec<i32>> {
        let n = self.rank;
        let mut m = identity_matrix(n);
        for j in 0..n {
            m[i][j] -= self.cartan(i, j);
        }
        m
    }

    fn word_matrix(&self, word: &[usize]) -> Vec<Vec<i32>> {
        word.iter().fold(identity_matrix(self.rank), |acc, &i| mat_mul(&acc, &self.simple_matrix(i)))
    }

    pub fn identity(&self) -> WeylElt {
        WeylElt { word: Vec::new(), matrix: identity_matrix(self.rank) }
    }

    pub fn simple_reflection(&self, i: usize) -> WeylElt {
        WeylElt { word: vec![i], matrix: self.simple_matrix(i) }
    }

    /// Canonical element for an arbitrary (possibly non-reduced) word.
    pub fn reduce_and_canonicalize(&self, word: &[usize]) -> Result<WeylElt, RootError> {
        for &i in word {
            self.check_index(i)?;
        }
        Ok(self.from_matrix(self.word_matrix(word)))
    }

    /// Like [`Self::reduce_and_canonicalize`], but rejects non-reduced words.
    pub fn from_reduced_word(&self, word: &[usize]) -> Result<WeylElt, RootError> {
        let w = self.reduce_and_canonicalize(word)?;
        if w.len() != word.len() {
            return Err(RootError::NotReduced(word.to_vec()));
        }
        Ok(w)
    }

    /// Recovers the lexicographically least reduced word from an action matrix.
    ///
    /// Greedy on left descents: the first letter of the lex-least reduced word
    /// of `w` is the smallest `i` with `w^{-1} α_i < 0`.
    fn from_matrix(&self, matrix: Vec<Vec<i32>>) -> WeylElt {
        let n = self.rank;
        // Any reduced word via right descents, then invert it.
        let mut m = matrix.clone();
        let mut rev_word = Vec::new();
        while let Some(i) = (0..n).find(|&i| is_negative(&column(&m, i))) {
            rev_word.push(i);
            m = mat_mul(&m, &self.simple_matrix(i));
        }
        // rev_word read backwards is a reduced word of w, so rev_word itself is one of w^{-1}.
        let mut inv = self.word_matrix(&rev_word);
        let mut word = Vec::with_capacity(rev_word.len());
        while let Some(i) = (0..n).find(|&i| is_negative(&column(&inv, i))) {
            word.push(i);
            inv = mat_mul(&inv, &self.simple_matrix(i));
        }
        WeylElt { word, matrix }
    }

    pub fn mul(&self, a: &WeylElt, b: &WeylElt) -> WeylElt {
        self.from_matrix(mat_mul(&a.matrix, &b.matrix))
    }

    pub fn inverse(&self, w: &WeylElt) -> WeylElt {
        let rev: Vec<usize> = w.word.iter().rev().copied().collect();
        self.from_matrix(self.word_matrix(&rev))
    }

    /// Reflection `s_β` in a (positive or negative) root.
    pub fn reflection(&self, beta: &[i32]) -> Result<WeylElt, RootError> {
        if !self.is_root(beta) {
            return Err(RootError::NotARoot(beta.to_vec()));
        }
        let n = self.rank;
        let bb = self.form(beta, beta);
        let mut m = identity_matrix(n);
        for j in 0..n {
            let c = 2 * self.form_with_simple(j, beta) / bb;
            for i in 0..n {
                m[i][j] -= c * beta[i];
            }
        }
        Ok(self.from_matrix(m))
    }

    /// `Φ⁺(w) = {β > 0 : w⁻¹β < 0}`, in the order of the positive-root list.
    pub fn phi_plus(&self, w: &WeylElt) -> Vec<LatVec> {
        let winv = self.inverse(w);
        self.positive_roots().iter().filter(|b| is_negative(&winv.apply(b))).cloned().collect()
    }

    /// `β_k = s_{i_1} ⋯ s_{i_{k-1}} α_{i_k}` along a word.
    pub fn root_sequence(&self, word: &[usize]) -> Vec<LatVec> {
        let mut prefix = identity_matrix(self.rank);
        word.iter()
            .map(|&i| {
                let beta = column(&prefix, i);
                prefix = mat_mul(&prefix, &self.simple_matrix(i));
                beta
            })
            .collect()
    }

    pub fn is_reduced(&self, word: &[usize]) -> bool {
        self.root_sequence(word).iter().all(|b| is_positive(b))
    }

    /// Right descents `{i : w(α_i) < 0}`.
    pub fn right_descents(&self, w: &WeylElt) -> Vec<usize> {
        (0..self.rank).filter(|&i| is_negative(&column(&w.matrix, i))).collect()
    }

    /// The letter every reduced expression ends in, if unique.
    pub fn unique_ending(&self, w: &WeylElt) -> Result<Option<usize>, RootError> {
        if w.is_identity() {
            return Err(RootError::IdentityHasNoEnding);
        }
        let d = self.right_descents(w);
        Ok((d.len() == 1).then(|| d[0]))
    }

    /// Every reduced expression of `w`.
    pub fn reduced_words(&self, w: &WeylElt) -> Vec<Vec<usize>> {
        if w.is_identity() {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        for i in self.right_descents(w) {
            let shorter = self.mul(w, &self.simple_reflection(i));
            for mut word in self.reduced_words(&shorter) {
                word.push(i);
                out.push(word);
            }
        }
        out.sort();
        out
    }

    /// The whole Weyl group by breadth-first search, sorted by length then word.
    pub fn weyl_group(&self) -> Vec<WeylElt> {
        let mut seen: HashSet<WeylElt> = HashSet::new();
        let mut queue = VecDeque::from([self.identity()]);
        seen.insert(self.identity());
        while let Some(w) = queue.pop_front() {
            for i in 0..self.rank {
                let next = self.mul(&w, &self.simple_reflection(i));
                if seen.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
        }
        let mut all: Vec<WeylElt> = seen.into_iter().collect();
        all.sort();
        all
    }

    pub fn longest_element(&self) -> WeylElt {
        let mut w = self.identity();
        while let Some(i) = (0..self.rank).find(|&i| !self.right_descents(&w).contains(&i)) {
            w = self.mul(&w, &self.simple_reflection(i));
        }
        w
    }

    /// Right weak order: `v <= w` iff `w = v u` with lengths adding up.
    /// Equivalent to `Φ⁺(v) ⊆ Φ⁺(w)`.
    pub fn weak_le(&self, v: &WeylElt, w: &WeylElt) -> bool {
        let u = self.mul(&self.inverse(v), w);
        v.len() + u.len() == w.len()
    }

    /// Bruhat order by the subword property on the canonical word of `w`.
    pub fn bruhat_le(&self, v: &WeylElt, w: &WeylElt) -> bool {
        if v.len() > w.len() {
            return false;
        }
        self.subword_elements(w).contains(v)
    }

    fn subword_elements(&self, w: &WeylElt) -> HashSet<WeylElt> {
        let mut acc: HashSet<Vec<Vec<i32>>> = HashSet::from([identity_matrix(self.rank)]);
        for &i in &w.word {
            let s = self.simple_matrix(i);
            let extended: Vec<_> = acc.iter().map(|m| mat_mul(m, &s)).collect();
            acc.extend(extended);
        }
        acc.into_iter().map(|m| self.from_matrix(m)).collect()
    }

    /// `Φ⁺(w)` as a set, for subset tests.
    pub fn phi_plus_set(&self, w: &WeylElt) -> BTreeSet<LatVec> {
        self.phi_plus(w).into_iter().collect()
    }

    /// The unique element whose `Φ⁺` is the given set, if any.
    pub fn element_with_phi_plus(&self, roots: &BTreeSet<LatVec>) -> Option<WeylElt> {
        // Grow along the weak order: a simple root in the set starts a prefix.
        let mut w = self.identity();
        loop {
            let current = self.phi_plus_set(&w);
            if &current == roots {
                return Some(w);
            }
            if !current.is_subset(roots) {
                return None;
            }
            let next = (0..self.rank).find_map(|i| {
                let cand = self.mul(&w, &self.simple_reflection(i));
                (cand.len() > w.len() && self.phi_plus_set(&cand).is_subset(roots)).then_some(cand)
            });
            w = next?;
        }
    }
}

fn column(m: &[Vec<i32>], j: usize) -> LatVec {
    m.iter().map(|row| row[j]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn datum(s: &str) -> RootDatum {
        s.parse().unwrap()
    }

    #[test]
    fn group_orders() {
        for (name, order) in [("A1", 2), ("A2", 6), ("A3", 24), ("B3", 48), ("C3", 48), ("G2", 12), ("D4", 192)] {
            let d = datum(name);
            let group = d.weyl_group();
            assert_eq!(group.len(), order, "{name}");
            assert_eq!(d.longest_element().len(), d.positive_roots().len());
        }
    }

    #[test]
    fn canonical_words() {
        let a2 = datum("A2");
        assert!(a2.reduce_and_canonicalize(&[0, 0]).unwrap().is_identity());
        let x = a2.reduce_and_canonicalize(&[0, 1, 0]).unwrap();
        let y = a2.reduce_and_canonicalize(&[1, 0, 1]).unwrap();
        assert_eq!(x, y);
        assert_eq!(x.word(), &[0, 1, 0]);
        assert_eq!(y.word(), &[0, 1, 0]);
        assert_eq!(x.len(), 3);
        assert_eq!(a2.phi_plus(&x).len(), 3);
        assert!(a2.from_reduced_word(&[0, 0]).is_err());
        assert!(a2.reduce_and_canonicalize(&[2]).is_err());
    }

    #[test]
    fn phi_plus_examples() {
        let a3 = datum("A3");
        let w = a3.from_reduced_word(&[2, 0, 1]).unwrap();
        assert_eq!(a3.phi_plus(&w), vec![vec![0, 0, 1], vec![1, 0, 0], vec![1, 1, 1]]);
        let a2 = datum("A2");
        let w = a2.from_reduced_word(&[0, 1]).unwrap();
        assert_eq!(a2.phi_plus(&w), vec![vec![1, 0], vec![1, 1]]);
        assert!(a2.phi_plus(&a2.identity()).is_empty());
    }

    #[test]
    fn phi_plus_matches_every_reduced_expression() {
        for name in ["A3", "B3", "G2"] {
            let d = datum(name);
            for w in d.weyl_group() {
                let expected = d.phi_plus_set(&w);
                assert_eq!(expected.len(), w.len());
                for word in d.reduced_words(&w) {
                    let seq: BTreeSet<_> = d.root_sequence(&word).into_iter().collect();
                    assert_eq!(seq, expected, "{name} {w} via {word:?}");
                }
            }
        }
    }

    #[test]
    fn canonical_word_is_lex_least() {
        let d = datum("B3");
        for w in d.weyl_group() {
            let words = d.reduced_words(&w);
            assert_eq!(words.first().map(Vec::as_slice), Some(w.word()));
        }
    }

    #[test]
    fn unique_endings() {
        let a2 = datum("A2");
        let s1 = a2.simple_reflection(0);
        assert_eq!(a2.unique_ending(&s1), Ok(Some(0)));
        let w = a2.from_reduced_word(&[0, 1]).unwrap();
        assert_eq!(a2.unique_ending(&w), Ok(Some(1)));
        let w0 = a2.longest_element();
        assert_eq!(a2.unique_ending(&w0), Ok(None));
        assert_eq!(a2.unique_ending(&a2.identity()), Err(RootError::IdentityHasNoEnding));
        // Third characterization: w(α_k) > 0 for every other k.
        let a3 = datum("A3");
        for w in a3.weyl_group().into_iter().skip(1) {
            let words: BTreeSet<usize> = a3.reduced_words(&w).iter().map(|x| *x.last().unwrap()).collect();
            assert_eq!(a3.unique_ending(&w).unwrap().is_some(), words.len() == 1);
        }
    }

    #[test]
    fn weak_order_is_phi_plus_inclusion() {
        for name in ["A2", "A3", "B3"] {
            let d = datum(name);
            let group = d.weyl_group();
            let sets: Vec<_> = group.iter().map(|w| d.phi_plus_set(w)).collect();
            for (v, sv) in group.iter().zip(&sets) {
                for (w, sw) in group.iter().zip(&sets) {
                    assert_eq!(d.weak_le(v, w), sv.is_subset(sw), "{name}: {v} vs {w}");
                    if d.weak_le(v, w) {
                        assert!(d.bruhat_le(v, w));
                    }
                }
            }
        }
    }

    #[test]
    fn bruhat_order_is_strictly_coarser() {
        let a2 = datum("A2");
        let s2 = a2.simple_reflection(1);
        let s1s2 = a2.from_reduced_word(&[0, 1]).unwrap();
        assert!(a2.bruhat_le(&s2, &s1s2));
        assert!(!a2.phi_plus_set(&s2).is_subset(&a2.phi_plus_set(&s1s2)));
    }

    #[test]
    fn reflections_and_lookup_by_phi_plus() {
        let a2 = datum("A2");
        let s12 = a2.reflection(&[1, 1]).unwrap();
        assert_eq!(s12.word(), &[0, 1, 0]);
        for name in ["A3", "C3"] {
            let d = datum(name);
            for w in d.weyl_group() {
                assert_eq!(d.element_with_phi_plus(&d.phi_plus_set(&w)), Some(w.clone()));
            }
            let not_closed: BTreeSet<LatVec> = [vec![1, 0, 0], vec![0, 1, 0]].into_iter().collect();
            assert!(d.element_with_phi_plus(&not_closed).is_none());
        }
    }
}
