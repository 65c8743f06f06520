//! Arithmetic in `U_q(g)` on the normal form `F-part · K-part · E-part`.
//!
//! ```
//! use qborel::rootsys::RootDatum;
//! use qborel::uqalg::Uq;
//!
//! let uq = Uq::new("A1".parse::<RootDatum>().unwrap(), 8);
//! let ef = uq.mul(&uq.e(0), &uq.f(0)).unwrap();
//! assert_eq!(ef.to_string(), "-q/(q^2 - 1)*K1^-1 + q/(q^2 - 1)*K1 + F1*E1");
//! ```

mod basis;
mod elt;
mod hopf;
mod lusztig;
mod mult;

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

pub use basis::DegreeComponentBasis;
pub use elt::{AlgElt, Mono, SparseVec, TensorElt, Word};
pub(crate) use elt::word_degree;
pub use lusztig::Direction;

use crate::qfield::RatFunc;
use crate::rootsys::{LatVec, RootDatum};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum UqError {
    #[error("degree of height {height} exceeds the configured bound {bound}; raise the bound")]
    DegreeOverflow { height: i32, bound: i32 },
    #[error("negative degree {0:?}")]
    NegativeDegree(LatVec),
    #[error("word {0:?} is not reduced")]
    NotReduced(Vec<usize>),
    #[error("position {position} out of range for a word of length {len}")]
    BadPosition { position: usize, len: usize },
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

/// Which half of the algebra a word lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
pub enum Side {
    E,
    F,
}

#[derive(Default)]
struct Caches {
    bases: RwLock<HashMap<LatVec, Arc<DegreeComponentBasis>>>,
    reduced: RwLock<HashMap<Word, Arc<SparseVec>>>,
    straight: RwLock<HashMap<(Word, Word), Arc<AlgElt>>>,
    lusztig: RwLock<HashMap<(usize, Direction, Side, usize), Arc<AlgElt>>>,
}

/// `U_q(g)` for a fixed root datum, with shared lazily built caches.
pub struct Uq {
    datum: RootDatum,
    bound: i32,
    caches: Caches,
}

impl std::fmt::Debug for Uq {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Uq({}, bound {})", self.datum.name(), self.bound)
    }
}

/// Default height bound for degree components.
pub const DEFAULT_BOUND: i32 = 12;

impl Uq {
    pub fn new(datum: RootDatum, bound: i32) -> Self {
        Uq { datum, bound, caches: Caches::default() }
    }

    pub fn datum(&self) -> &RootDatum {
        &self.datum
    }

    pub fn rank(&self) -> usize {
        self.datum.rank()
    }

    pub fn bound(&self) -> i32 {
        self.bound
    }

    /// `q_i = q^{d_i}`.
    pub fn q_i(&self, i: usize) -> RatFunc {
        RatFunc::q_pow(self.datum.sym(i))
    }

    pub fn one(&self) -> AlgElt {
        self.scalar(RatFunc::one())
    }

    pub fn scalar(&self, c: RatFunc) -> AlgElt {
        AlgElt::from_mono(Mono::one(self.rank()), c)
    }

    pub fn e(&self, i: usize) -> AlgElt {
        AlgElt::from_mono(Mono { f: Word::new(), k: self.datum.zero(), e: vec![i as u8] }, RatFunc::one())
    }

    pub fn f(&self, i: usize) -> AlgElt {
        AlgElt::from_mono(Mono { f: vec![i as u8], k: self.datum.zero(), e: Word::new() }, RatFunc::one())
    }

    /// `K^μ` for a lattice vector `μ`.
    pub fn k(&self, mu: &[i32]) -> AlgElt {
        AlgElt::from_mono(Mono { f: Word::new(), k: mu.to_vec(), e: Word::new() }, RatFunc::one())
    }

    /// `K_i^p`.
    pub fn k_simple(&self, i: usize, p: i32) -> AlgElt {
        let mut mu = self.datum.zero();
        mu[i] = p;
        self.k(&mu)
    }

    /// Product of generators along a word on one side.
    pub fn word(&self, side: Side, word: &[u8]) -> Result<AlgElt, UqError> {
        let coords = self.reduce_word(word)?;
        let deg = elt::word_degree(word, self.rank());
        self.from_coords(side, &deg, &coords)
    }

    /// Builds a one-sided element from coordinates in a degree basis.
    pub fn from_coords(&self, side: Side, deg: &[i32], coords: &SparseVec) -> Result<AlgElt, UqError> {
        let basis = self.degree_basis(deg)?;
        let mut x = AlgElt::zero();
        for (idx, c) in coords {
            let w = basis.representatives()[*idx as usize].clone();
            let m = match side {
                Side::F => Mono { f: w, k: self.datum.zero(), e: Word::new() },
                Side::E => Mono { f: Word::new(), k: self.datum.zero(), e: w },
            };
            x.add_term(m, c.clone());
        }
        Ok(x)
    }

    /// Coordinates of a one-sided homogeneous element in its degree basis.
    pub fn coords_of(&self, side: Side, x: &AlgElt) -> Result<(LatVec, SparseVec), UqError> {
        let mut deg: Option<LatVec> = None;
        let mut out = SparseVec::new();
        for (m, c) in x.terms() {
            let (w, other_empty) = match side {
                Side::F => (&m.f, m.e.is_empty()),
                Side::E => (&m.e, m.f.is_empty()),
            };
            if !other_empty || m.k.iter().any(|&v| v != 0) {
                return Err(UqError::Internal(format!("{x} is not in U^{side:?}")));
            }
            let d = elt::word_degree(w, self.rank());
            if deg.as_ref().is_some_and(|prev| *prev != d) {
                return Err(UqError::Internal(format!("{x} is not homogeneous")));
            }
            let basis = self.degree_basis(&d)?;
            let idx = basis.index_of(w).ok_or_else(|| UqError::Internal(format!("non-standard word in {x}")))?;
            out.push((idx, c.clone()));
            deg = Some(d);
        }
        out.sort_by_key(|(i, _)| *i);
        Ok((deg.unwrap_or_else(|| self.datum.zero()), out))
    }

    /// Sum of terms with scalar coefficients.
    pub fn lin(&self, parts: &[(RatFunc, &AlgElt)]) -> AlgElt {
        let mut acc = AlgElt::zero();
        for (c, x) in parts {
            acc.add_scaled(x, c);
        }
        acc
    }

    /// `[x, y]_c = xy - c yx`.
    pub fn qcomm(&self, x: &AlgElt, y: &AlgElt, c: &RatFunc) -> Result<AlgElt, UqError> {
        let xy = self.mul(x, y)?;
        let yx = self.mul(y, x)?;
        Ok(&xy - &yx.scale(c))
    }

    pub fn mul_all(&self, factors: &[&AlgElt]) -> Result<AlgElt, UqError> {
        let mut acc = self.one();
        for x in factors {
            acc = self.mul(&acc, x)?;
        }
        Ok(acc)
    }

    pub fn pow(&self, x: &AlgElt, n: u32) -> Result<AlgElt, UqError> {
        let mut acc = self.one();
        for _ in 0..n {
            acc = self.mul(&acc, x)?;
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests;
