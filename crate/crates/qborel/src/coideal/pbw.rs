use std::collections::BTreeMap;

use super::{to_row, CoidealError};
use crate::linalg::Echelon;
use crate::rootsys::{vsub, LatVec, WeylElt};
use crate::uqalg::{word_degree, AlgElt, Side, Uq};

/// PBW data for `U^∓[w]`: root vectors along the canonical reduced word of `w`.
#[derive(Clone, Debug)]
pub struct SchubertPart {
    side: Side,
    word: Vec<usize>,
    roots: Vec<LatVec>,
    vectors: Vec<AlgElt>,
}

impl SchubertPart {
    pub fn new(uq: &Uq, w: &WeylElt, side: Side) -> Result<Self, CoidealError> {
        Self::from_word(uq, w.word(), side)
    }

    /// Root vectors along a specific reduced word.
    pub fn from_word(uq: &Uq, word: &[usize], side: Side) -> Result<Self, CoidealError> {
        let word = word.to_vec();
        let roots = uq.datum().root_sequence(&word);
        let vectors = (0..word.len()).map(|k| uq.root_vector(&word, k, side)).collect::<Result<_, _>>()?;
        Ok(SchubertPart { side, word, roots, vectors })
    }

    pub fn word(&self) -> &[usize] {
        &self.word
    }

    pub fn roots(&self) -> &[LatVec] {
        &self.roots
    }

    pub fn root_vectors(&self) -> &[AlgElt] {
        &self.vectors
    }

    /// Exponent vectors `a` with `Σ a_k β_k = ν`.
    pub fn exponents(&self, nu: &[i32]) -> Vec<Vec<u32>> {
        let mut out = Vec::new();
        let mut current = vec![0u32; self.roots.len()];
        self.collect_exponents(0, nu.to_vec(), &mut current, &mut out);
        out
    }

    fn collect_exponents(&self, k: usize, rest: LatVec, current: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rest.iter().all(|&x| x == 0) {
            out.push(current.clone());
            return;
        }
        if k == self.roots.len() {
            return;
        }
        self.collect_exponents(k + 1, rest.clone(), current, out);
        let mut rest = rest;
        loop {
            rest = vsub(&rest, &self.roots[k]);
            if rest.iter().any(|&x| x < 0) {
                break;
            }
            current[k] += 1;
            self.collect_exponents(k + 1, rest.clone(), current, out);
        }
        current[k] = 0;
    }

    /// Ordered PBW monomial `X_{β_1}^{a_1} ⋯ X_{β_N}^{a_N}`.
    pub fn monomial(&self, uq: &Uq, exps: &[u32]) -> Result<AlgElt, CoidealError> {
        let mut acc = uq.one();
        for (x, &a) in self.vectors.iter().zip(exps) {
            for _ in 0..a {
                acc = uq.mul(&acc, x)?;
            }
        }
        Ok(acc)
    }

    /// PBW basis of the degree-`ν` component.
    pub fn component(&self, uq: &Uq, nu: &[i32]) -> Result<Vec<AlgElt>, CoidealError> {
        self.exponents(nu).iter().map(|a| self.monomial(uq, a)).collect()
    }

    /// Membership for a one-sided element, checked degree by degree.
    pub fn contains(&self, uq: &Uq, x: &AlgElt) -> Result<bool, CoidealError> {
        let mut parts: BTreeMap<LatVec, AlgElt> = BTreeMap::new();
        for (m, c) in x.terms() {
            let (word, other) = match self.side {
                Side::F => (&m.f, &m.e),
                Side::E => (&m.e, &m.f),
            };
            if !other.is_empty() || m.k.iter().any(|&v| v != 0) {
                return Ok(false);
            }
            let deg = word_degree(word, uq.rank());
            parts.entry(deg).or_insert_with(AlgElt::zero).add_term(m.clone(), c.clone());
        }
        for (nu, part) in parts {
            let mut echelon = Echelon::new();
            for (i, b) in self.component(uq, &nu)?.iter().enumerate() {
                echelon.insert(&to_row(b), i);
            }
            if !echelon.contains(&to_row(&part)) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Whether the degree-`ν` components of both parts span the same space.
    pub fn same_component(&self, other: &SchubertPart, uq: &Uq, nu: &[i32]) -> Result<bool, CoidealError> {
        let mut mine = Echelon::new();
        for (i, b) in self.component(uq, nu)?.iter().enumerate() {
            mine.insert(&to_row(b), i);
        }
        let theirs = other.component(uq, nu)?;
        let mut joint = mine.clone();
        for (i, b) in theirs.iter().enumerate() {
            joint.insert(&to_row(b), mine.dim() + i);
        }
        Ok(joint.dim() == mine.dim() && theirs.len() == mine.dim())
    }
}
