use std::collections::BTreeMap;

use super::elt::word_degree;
use super::{AlgElt, Mono, Side, TensorElt, Uq, UqError, Word};
use crate::qfield::RatFunc;
use crate::rootsys::vscale;

type TripleTerms = BTreeMap<(Mono, Mono, Mono), RatFunc>;

impl Uq {
    pub fn counit(&self, x: &AlgElt) -> RatFunc {
        x.terms()
            .filter(|(m, _)| m.is_cartan())
            .fold(RatFunc::zero(), |acc, (_, c)| &acc + c)
    }

    pub fn coproduct(&self, x: &AlgElt) -> Result<TensorElt, UqError> {
        let mut acc = TensorElt::zero();
        for (m, c) in x.terms() {
            let img = self.coproduct_mono(m)?;
            acc.add_scaled(&img, c);
        }
        Ok(acc)
    }

    fn coproduct_mono(&self, m: &Mono) -> Result<TensorElt, UqError> {
        let f_part = self.coproduct_word(Side::F, &m.f)?;
        let mut k_part = TensorElt::zero();
        let km = Mono { f: Word::new(), k: m.k.clone(), e: Word::new() };
        k_part.add_term(km.clone(), km, RatFunc::one());
        let e_part = self.coproduct_word(Side::E, &m.e)?;
        self.tensor_mul(&self.tensor_mul(&f_part, &k_part)?, &e_part)
    }

    /// Subset expansion of `Δ` on a product of generators.
    fn coproduct_word(&self, side: Side, word: &[u8]) -> Result<TensorElt, UqError> {
        let n = word.len();
        let rank = self.rank();
        let mut acc = TensorElt::zero();
        for mask in 0u32..(1 << n) {
            let in_s = |a: usize| mask & (1 << a) != 0;
            let picked: Word = (0..n).filter(|&a| in_s(a)).map(|a| word[a]).collect();
            let rest: Word = (0..n).filter(|&a| !in_s(a)).map(|a| word[a]).collect();
            let mut exp = 0;
            for a in 0..n {
                for b in a + 1..n {
                    let pair = self.datum.form_simple(word[a] as usize, word[b] as usize);
                    match side {
                        Side::F if in_s(a) && !in_s(b) => exp += pair,
                        Side::E if !in_s(a) && in_s(b) => exp -= pair,
                        _ => {}
                    }
                }
            }
            let deg_s = word_degree(&picked, rank);
            let (left, right) = match side {
                Side::F => {
                    let left = self.word(Side::F, &picked)?;
                    let right = self.mul(&self.word(Side::F, &rest)?, &self.k(&vscale(&deg_s, -1)))?;
                    (left, right)
                }
                Side::E => {
                    let left = self.mul(&self.k(&deg_s), &self.word(Side::E, &rest)?)?;
                    let right = self.word(Side::E, &picked)?;
                    (left, right)
                }
            };
            let coeff = RatFunc::q_pow(exp);
            for (lm, lc) in left.terms() {
                for (rm, rc) in right.terms() {
                    acc.add_term(lm.clone(), rm.clone(), &(&coeff * lc) * rc);
                }
            }
        }
        Ok(acc)
    }

    /// Componentwise product in `U ⊗ U`.
    pub fn tensor_mul(&self, x: &TensorElt, y: &TensorElt) -> Result<TensorElt, UqError> {
        let mut acc = TensorElt::zero();
        for ((l1, r1), c1) in x.terms() {
            for ((l2, r2), c2) in y.terms() {
                let left = self.mul_mono(l1, l2)?;
                let right = self.mul_mono(r1, r2)?;
                let c = c1 * c2;
                for (lm, lc) in left.terms() {
                    let lc = &c * lc;
                    for (rm, rc) in right.terms() {
                        acc.add_term(lm.clone(), rm.clone(), &lc * rc);
                    }
                }
            }
        }
        Ok(acc)
    }

    pub fn antipode(&self, x: &AlgElt) -> Result<AlgElt, UqError> {
        let mut acc = AlgElt::zero();
        for (m, c) in x.terms() {
            let img = self.antipode_mono(m)?;
            acc.add_scaled(&img, c);
        }
        Ok(acc)
    }

    fn antipode_mono(&self, m: &Mono) -> Result<AlgElt, UqError> {
        let minus = RatFunc::from_int(-1);
        let mut acc = self.one();
        for &l in m.e.iter().rev() {
            let i = l as usize;
            let img = self.mul(&self.k_simple(i, -1), &self.e(i))?.scale(&minus);
            acc = self.mul(&acc, &img)?;
        }
        acc = self.mul(&acc, &self.k(&vscale(&m.k, -1)))?;
        for &l in m.f.iter().rev() {
            let i = l as usize;
            let img = self.mul(&self.f(i), &self.k_simple(i, 1))?.scale(&minus);
            acc = self.mul(&acc, &img)?;
        }
        Ok(acc)
    }

    /// `m ∘ (S ⊗ id) ∘ Δ` and `m ∘ (id ⊗ S) ∘ Δ`.
    pub fn antipode_convolutions(&self, x: &AlgElt) -> Result<(AlgElt, AlgElt), UqError> {
        let delta = self.coproduct(x)?;
        let mut left = AlgElt::zero();
        let mut right = AlgElt::zero();
        for ((l, r), c) in delta.terms() {
            let lx = AlgElt::from_mono(l.clone(), RatFunc::one());
            let rx = AlgElt::from_mono(r.clone(), RatFunc::one());
            left.add_scaled(&self.mul(&self.antipode(&lx)?, &rx)?, c);
            right.add_scaled(&self.mul(&lx, &self.antipode(&rx)?)?, c);
        }
        Ok((left, right))
    }

    /// Both antipode axioms hold on `x`.
    pub fn antipode_axiom_holds(&self, x: &AlgElt) -> Result<bool, UqError> {
        let expected = self.scalar(self.counit(x));
        let (l, r) = self.antipode_convolutions(x)?;
        Ok(l == expected && r == expected)
    }

    /// `(ε ⊗ id)Δ(x) = x = (id ⊗ ε)Δ(x)`.
    pub fn counit_axiom_holds(&self, x: &AlgElt) -> Result<bool, UqError> {
        let delta = self.coproduct(x)?;
        let mut left = AlgElt::zero();
        let mut right = AlgElt::zero();
        for ((l, r), c) in delta.terms() {
            if l.is_cartan() {
                right.add_term(r.clone(), c.clone());
            }
            if r.is_cartan() {
                left.add_term(l.clone(), c.clone());
            }
        }
        Ok(&left == x && &right == x)
    }

    pub fn coassociative_on(&self, x: &AlgElt) -> Result<bool, UqError> {
        let delta = self.coproduct(x)?;
        let mut lhs = TripleTerms::new();
        let mut rhs = TripleTerms::new();
        for ((l, r), c) in delta.terms() {
            let dl = self.coproduct_mono(l)?;
            for ((a, b), d) in dl.terms() {
                add_triple(&mut lhs, (a.clone(), b.clone(), r.clone()), c * d);
            }
            let dr = self.coproduct_mono(r)?;
            for ((a, b), d) in dr.terms() {
                add_triple(&mut rhs, (l.clone(), a.clone(), b.clone()), c * d);
            }
        }
        Ok(lhs == rhs)
    }

    /// `Δ(xy) = Δ(x)Δ(y)`.
    pub fn coproduct_multiplicative_on(&self, x: &AlgElt, y: &AlgElt) -> Result<bool, UqError> {
        let lhs = self.coproduct(&self.mul(x, y)?)?;
        let rhs = self.tensor_mul(&self.coproduct(x)?, &self.coproduct(y)?)?;
        Ok(lhs == rhs)
    }
}

fn add_triple(map: &mut TripleTerms, key: (Mono, Mono, Mono), c: RatFunc) {
    let sum = match map.remove(&key) {
        Some(old) => &old + &c,
        None => c,
    };
    if !sum.is_zero() {
        map.insert(key, sum);
    }
}
