use std::sync::Arc;

use super::{AlgElt, Mono, Uq, UqError, Word};
use crate::qfield::RatFunc;
use crate::rootsys::vadd;

impl Uq {
    pub fn mul(&self, x: &AlgElt, y: &AlgElt) -> Result<AlgElt, UqError> {
        let mut acc = AlgElt::zero();
        for (m1, c1) in x.terms() {
            for (m2, c2) in y.terms() {
                let prod = self.mul_mono(m1, m2)?;
                acc.add_scaled(&prod, &(c1 * c2));
            }
        }
        Ok(acc)
    }

    /// `(F_f1 K^a E_e1)(F_f2 K^b E_e2)` in normal form.
    pub fn mul_mono(&self, m1: &Mono, m2: &Mono) -> Result<AlgElt, UqError> {
        let middle = self.straighten(&m1.e, &m2.f)?;
        let mut acc = AlgElt::zero();
        for (m, c) in middle.terms() {
            // E_{e'} K^b = q^{-(b, |e'|)} K^b E_{e'}; K^a F_{f'} = q^{-(a, |f'|)} F_{f'} K^a.
            let e_deg = super::elt::word_degree(&m.e, self.rank());
            let f_deg: Vec<i32> = super::elt::word_degree(&m.f, self.rank());
            let exp = -self.datum.form(&m2.k, &e_deg) - self.datum.form(&m1.k, &f_deg);
            let k = vadd(&vadd(&m1.k, &m.k), &m2.k);
            let f_word: Word = m1.f.iter().chain(&m.f).copied().collect();
            let e_word: Word = m.e.iter().chain(&m2.e).copied().collect();
            let f_coords = self.reduce_word(&f_word)?;
            let e_coords = self.reduce_word(&e_word)?;
            let f_basis = self.degree_basis(&super::elt::word_degree(&f_word, self.rank()))?;
            let e_basis = self.degree_basis(&super::elt::word_degree(&e_word, self.rank()))?;
            let base = c.mul_q_pow(exp);
            for (fi, fc) in f_coords.iter() {
                let fc = &base * fc;
                for (ei, ec) in e_coords.iter() {
                    let mono = Mono {
                        f: f_basis.representatives()[*fi as usize].clone(),
                        k: k.clone(),
                        e: e_basis.representatives()[*ei as usize].clone(),
                    };
                    acc.add_term(mono, &fc * ec);
                }
            }
        }
        Ok(acc)
    }

    /// Normal form of `E_e F_f` for standard words.
    fn straighten(&self, e: &[u8], f: &[u8]) -> Result<Arc<AlgElt>, UqError> {
        if e.is_empty() || f.is_empty() {
            let m = Mono { f: f.to_vec(), k: self.datum.zero(), e: e.to_vec() };
            return Ok(Arc::new(AlgElt::from_mono(m, RatFunc::one())));
        }
        let key = (e.to_vec(), f.to_vec());
        if let Some(v) = self.caches.straight.read().unwrap().get(&key) {
            return Ok(v.clone());
        }
        let inner = self.straighten(&e[1..], f)?;
        let out = Arc::new(self.left_mul_e(e[0] as usize, &inner)?);
        self.caches.straight.write().unwrap().insert(key, out.clone());
        Ok(out)
    }

    /// `E_i · x` for `x` in normal form.
    fn left_mul_e(&self, i: usize, x: &AlgElt) -> Result<AlgElt, UqError> {
        let alpha = self.datum.simple_root(i);
        let qi = self.q_i(i);
        let denom = (&qi - &qi.inv().expect("q_i != 0")).inv().expect("q generic");
        let mut acc = AlgElt::zero();
        for (m, c) in x.terms() {
            // F_f E_i K^c E_e = q^{-(α_i, c)} F_f K^c (E_i E_e).
            let mut e_word = Vec::with_capacity(m.e.len() + 1);
            e_word.push(i as u8);
            e_word.extend_from_slice(&m.e);
            let e_basis = self.degree_basis(&super::elt::word_degree(&e_word, self.rank()))?;
            let pass = c.mul_q_pow(-self.datum.form(&alpha, &m.k));
            for (idx, ec) in self.reduce_word(&e_word)?.iter() {
                let mono = Mono { f: m.f.clone(), k: m.k.clone(), e: e_basis.representatives()[*idx as usize].clone() };
                acc.add_term(mono, &pass * ec);
            }
            // Commutator terms [E_i, F_{f_k}] at each position with f_k = i.
            let mut after = super::elt::word_degree(&m.f, self.rank());
            for k in 0..m.f.len() {
                let letter = m.f[k] as usize;
                after[letter] -= 1;
                if letter != i {
                    continue;
                }
                let pairing = self.datum.form(&alpha, &after);
                let rest: Word = m.f[..k].iter().chain(&m.f[k + 1..]).copied().collect();
                let f_basis = self.degree_basis(&super::elt::word_degree(&rest, self.rank()))?;
                let base = c * &denom;
                for (idx, fc) in self.reduce_word(&rest)?.iter() {
                    let fw = f_basis.representatives()[*idx as usize].clone();
                    let coeff = &base * fc;
                    let up = Mono { f: fw.clone(), k: vadd(&m.k, &alpha), e: m.e.clone() };
                    acc.add_term(up, coeff.mul_q_pow(-pairing));
                    let mut down_k = m.k.clone();
                    down_k[i] -= 1;
                    let down = Mono { f: fw, k: down_k, e: m.e.clone() };
                    acc.add_term(down, -&coeff.mul_q_pow(pairing));
                }
            }
        }
        Ok(acc)
    }
}
