//! Degree components of `U^+` (equivalently `U^-`) as quotients of the free
//! algebra.
//!
//! A homogeneous element of nonzero degree vanishes in `U^+` iff every skew
//! derivation `_i r` kills it. Each degree is therefore built from the one
//! below: candidate words `θ_i s` (with `s` standard one degree down) are
//! compared through their derivation images, which live in the much smaller
//! spaces of degree `ν - α_i`.

use std::collections::{BTreeMap, HashMap};

use super::{SparseVec, Uq, UqError, Word};
use crate::qfield::RatFunc;
use crate::rootsys::{vsub, LatVec};

/// Basis of one degree component together with its left-multiplication tables.
#[derive(Debug)]
pub struct DegreeComponentBasis {
    nu: LatVec,
    standard: Vec<Word>,
    index: HashMap<Word, u32>,
    /// `left[i][s]`: coordinates of `θ_i · s` for `s` standard in degree `ν - α_i`.
    left: Vec<Vec<SparseVec>>,
}

impl DegreeComponentBasis {
    pub fn degree(&self) -> &[i32] {
        &self.nu
    }

    /// The representative words; suffixes of representatives are representatives.
    pub fn representatives(&self) -> &[Word] {
        &self.standard
    }

    pub fn dim(&self) -> usize {
        self.standard.len()
    }

    pub fn index_of(&self, w: &[u8]) -> Option<u32> {
        self.index.get(w).copied()
    }

    pub(crate) fn left_table(&self, i: usize) -> &[SparseVec] {
        &self.left[i]
    }
}

impl Uq {
    /// Basis of the degree-`ν` component of `U^+`, built on first use.
    pub fn degree_basis(&self, nu: &[i32]) -> Result<std::sync::Arc<DegreeComponentBasis>, UqError> {
        if nu.iter().any(|&x| x < 0) {
            return Err(UqError::NegativeDegree(nu.to_vec()));
        }
        let h: i32 = nu.iter().sum();
        if h > self.bound {
            return Err(UqError::DegreeOverflow { height: h, bound: self.bound });
        }
        if let Some(b) = self.caches.bases.read().unwrap().get(nu) {
            return Ok(b.clone());
        }
        let built = std::sync::Arc::new(self.build_degree_basis(nu)?);
        let mut cache = self.caches.bases.write().unwrap();
        Ok(cache.entry(nu.to_vec()).or_insert(built).clone())
    }

    fn build_degree_basis(&self, nu: &[i32]) -> Result<DegreeComponentBasis, UqError> {
        let rank = self.rank();
        if nu.iter().all(|&x| x == 0) {
            return Ok(DegreeComponentBasis {
                nu: nu.to_vec(),
                standard: vec![Word::new()],
                index: HashMap::from([(Word::new(), 0)]),
                left: vec![Vec::new(); rank],
            });
        }
        let lower: Vec<Option<std::sync::Arc<DegreeComponentBasis>>> = (0..rank)
            .map(|i| if nu[i] > 0 { self.degree_basis(&vsub(nu, &self.datum.simple_root(i))).map(Some) } else { Ok(None) })
            .collect::<Result<_, _>>()?;
        // Signature coordinates: one block per derivation index.
        let mut offsets = vec![0u32; rank];
        let mut total = 0u32;
        for i in 0..rank {
            offsets[i] = total;
            total += lower[i].as_ref().map_or(0, |b| b.dim() as u32);
        }
        let mut candidates: Vec<(Word, usize, usize)> = Vec::new();
        for (i, low) in lower.iter().enumerate() {
            if let Some(low) = low {
                for (s, word) in low.standard.iter().enumerate() {
                    let mut w = Vec::with_capacity(word.len() + 1);
                    w.push(i as u8);
                    w.extend_from_slice(word);
                    candidates.push((w, i, s));
                }
            }
        }
        candidates.sort();

        let mut echelon = Echelon::default();
        let mut standard: Vec<Word> = Vec::new();
        let mut left: Vec<Vec<SparseVec>> =
            (0..rank).map(|i| vec![SparseVec::new(); lower[i].as_ref().map_or(0, |b| b.dim())]).collect();
        for (word, i, s) in candidates {
            let sig = self.derivation_signature(&word, &offsets)?;
            let coords = match echelon.insert(sig, standard.len() as u32) {
                Some(combo) => combo,
                None => {
                    standard.push(word.clone());
                    vec![((standard.len() - 1) as u32, RatFunc::one())]
                }
            };
            left[i][s] = coords;
        }
        let expected = self.datum.kostant_dim(nu) as usize;
        if standard.len() != expected {
            return Err(UqError::Internal(format!(
                "degree {nu:?}: {} representatives but Kostant count {expected}",
                standard.len()
            )));
        }
        let index = standard.iter().enumerate().map(|(k, w)| (w.clone(), k as u32)).collect();
        Ok(DegreeComponentBasis { nu: nu.to_vec(), standard, index, left })
    }

    /// Concatenated coordinates of `_i r(word)` over all `i`.
    fn derivation_signature(&self, word: &[u8], offsets: &[u32]) -> Result<BTreeMap<u32, RatFunc>, UqError> {
        let mut sig: BTreeMap<u32, RatFunc> = BTreeMap::new();
        let mut prefix = vec![0i32; self.rank()];
        for k in 0..word.len() {
            let j = word[k] as usize;
            let exp = self.datum.form_with_simple(j, &prefix);
            let mut rest = Vec::with_capacity(word.len() - 1);
            rest.extend_from_slice(&word[..k]);
            rest.extend_from_slice(&word[k + 1..]);
            for (idx, c) in self.reduce_word(&rest)?.iter() {
                let slot = sig.entry(offsets[j] + idx).or_insert_with(RatFunc::zero);
                *slot = &*slot + &c.mul_q_pow(exp);
            }
            prefix[j] += 1;
        }
        sig.retain(|_, c| !c.is_zero());
        Ok(sig)
    }

    /// Coordinates of an arbitrary word in the representatives of its degree.
    pub fn reduce_word(&self, word: &[u8]) -> Result<std::sync::Arc<SparseVec>, UqError> {
        if let Some(v) = self.caches.reduced.read().unwrap().get(word) {
            return Ok(v.clone());
        }
        let deg = super::elt::word_degree(word, self.rank());
        let basis = self.degree_basis(&deg)?;
        let v = if let Some(idx) = basis.index_of(word) {
            vec![(idx, RatFunc::one())]
        } else {
            let tail = self.reduce_word(&word[1..])?;
            apply_table(basis.left_table(word[0] as usize), &tail)
        };
        let v = std::sync::Arc::new(v);
        self.caches.reduced.write().unwrap().insert(word.to_vec(), v.clone());
        Ok(v)
    }
}

pub(crate) fn apply_table(table: &[SparseVec], x: &SparseVec) -> SparseVec {
    let mut acc: BTreeMap<u32, RatFunc> = BTreeMap::new();
    for (s, c) in x {
        for (t, d) in &table[*s as usize] {
            let slot = acc.entry(*t).or_insert_with(RatFunc::zero);
            *slot = &*slot + &(c * d);
        }
    }
    acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

/// Incremental row echelon form that remembers how each row was produced.
#[derive(Default)]
struct Echelon {
    /// pivot column -> (row normalized to pivot 1, combination of representatives)
    rows: BTreeMap<u32, (BTreeMap<u32, RatFunc>, BTreeMap<u32, RatFunc>)>,
}

impl Echelon {
    /// Reduces a signature. Returns the combination of representatives it
    /// equals, or `None` after recording it as the new representative `next`.
    fn insert(&mut self, mut sig: BTreeMap<u32, RatFunc>, next: u32) -> Option<SparseVec> {
        let mut combo: BTreeMap<u32, RatFunc> = BTreeMap::new();
        let mut cursor = 0u32;
        while let Some((&col, _)) = sig.range(cursor..).next() {
            cursor = col + 1;
            let Some((row, row_combo)) = self.rows.get(&col) else { continue };
            let factor = sig[&col].clone();
            for (c, v) in row {
                let slot = sig.entry(*c).or_insert_with(RatFunc::zero);
                *slot = &*slot - &(&factor * v);
                if slot.is_zero() {
                    sig.remove(c);
                }
            }
            for (s, v) in row_combo {
                let slot = combo.entry(*s).or_insert_with(RatFunc::zero);
                *slot = &*slot + &(&factor * v);
            }
        }
        if sig.is_empty() {
            return Some(combo.into_iter().filter(|(_, c)| !c.is_zero()).collect());
        }
        let (&pivot, pv) = sig.iter().next().unwrap();
        let inv = pv.inv().expect("nonzero pivot");
        let row = sig.iter().map(|(c, v)| (*c, v * &inv)).collect();
        let mut new_combo: BTreeMap<u32, RatFunc> =
            combo.into_iter().filter(|(_, c)| !c.is_zero()).map(|(s, v)| (s, -&(&v * &inv))).collect();
        new_combo.insert(next, inv);
        self.rows.insert(pivot, (row, new_combo));
        None
    }
}
