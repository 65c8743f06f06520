use std::sync::Arc;

use super::{AlgElt, Mono, Side, Uq, UqError};
use crate::qfield::{qfact, RatFunc};

/// `T_i` or its inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
pub enum Direction {
    Forward,
    Inverse,
}

impl Uq {
    /// `E_i^{(r)}` or `F_i^{(r)}`.
    pub fn divided_power(&self, side: Side, i: usize, r: u32) -> Result<AlgElt, UqError> {
        let gen = match side {
            Side::E => self.e(i),
            Side::F => self.f(i),
        };
        let scale = qfact(r, self.datum.sym(i) as u32).inv().expect("nonzero q-factorial");
        Ok(self.pow(&gen, r)?.scale(&scale))
    }

    /// Image of `E_j` or `F_j` under `T_i^{±1}`.
    pub fn lusztig_generator(&self, i: usize, dir: Direction, side: Side, j: usize) -> Result<Arc<AlgElt>, UqError> {
        let key = (i, dir, side, j);
        if let Some(v) = self.caches.lusztig.read().unwrap().get(&key) {
            return Ok(v.clone());
        }
        let out = Arc::new(self.build_lusztig_generator(i, dir, side, j)?);
        self.caches.lusztig.write().unwrap().insert(key, out.clone());
        Ok(out)
    }

    fn build_lusztig_generator(&self, i: usize, dir: Direction, side: Side, j: usize) -> Result<AlgElt, UqError> {
        let minus_one = RatFunc::from_int(-1);
        if i == j {
            let ki = self.k_simple(i, 1);
            let ki_inv = self.k_simple(i, -1);
            let x = match (dir, side) {
                (Direction::Forward, Side::E) => self.mul(&self.f(i), &ki)?,
                (Direction::Forward, Side::F) => self.mul(&ki_inv, &self.e(i))?,
                (Direction::Inverse, Side::E) => self.mul(&ki_inv, &self.f(i))?,
                (Direction::Inverse, Side::F) => self.mul(&self.e(i), &ki)?,
            };
            return Ok(x.scale(&minus_one));
        }
        let a = (-self.datum.cartan(i, j)) as u32;
        let di = self.datum.sym(i);
        let mut acc = AlgElt::zero();
        for r in 0..=a {
            let sign = if r % 2 == 0 { RatFunc::one() } else { minus_one.clone() };
            let (left, right, exp) = match (dir, side) {
                (Direction::Forward, Side::E) => (a - r, r, -(r as i32)),
                (Direction::Forward, Side::F) => (r, a - r, r as i32),
                (Direction::Inverse, Side::E) => (r, a - r, -(r as i32)),
                (Direction::Inverse, Side::F) => (a - r, r, r as i32),
            };
            let middle = match side {
                Side::E => self.e(j),
                Side::F => self.f(j),
            };
            let term = self.mul_all(&[
                &self.divided_power(side, i, left)?,
                &middle,
                &self.divided_power(side, i, right)?,
            ])?;
            acc.add_scaled(&term, &sign.mul_q_pow(exp * di));
        }
        Ok(acc)
    }

    /// Applies the algebra automorphism `T_i^{±1}`.
    pub fn lusztig_t(&self, i: usize, dir: Direction, x: &AlgElt) -> Result<AlgElt, UqError> {
        let mut acc = AlgElt::zero();
        for (m, c) in x.terms() {
            let img = self.lusztig_mono(i, dir, m)?;
            acc.add_scaled(&img, c);
        }
        Ok(acc)
    }

    fn lusztig_mono(&self, i: usize, dir: Direction, m: &Mono) -> Result<AlgElt, UqError> {
        let mut acc = self.one();
        for &letter in &m.f {
            acc = self.mul(&acc, &*self.lusztig_generator(i, dir, Side::F, letter as usize)?)?;
        }
        acc = self.mul(&acc, &self.k(&self.datum.reflect_simple(i, &m.k)))?;
        for &letter in &m.e {
            acc = self.mul(&acc, &*self.lusztig_generator(i, dir, Side::E, letter as usize)?)?;
        }
        Ok(acc)
    }

    /// Root vector attached to position `k` (0-based) of a reduced word.
    ///
    /// `E` side uses `T_{i_1}⋯T_{i_{k-1}}(E_{i_k})`, `F` side the inverse operators.
    pub fn root_vector(&self, word: &[usize], k: usize, side: Side) -> Result<AlgElt, UqError> {
        if k >= word.len() {
            return Err(UqError::BadPosition { position: k, len: word.len() });
        }
        if !self.datum.is_reduced(word) {
            return Err(UqError::NotReduced(word.to_vec()));
        }
        let (dir, mut x) = match side {
            Side::E => (Direction::Forward, self.e(word[k])),
            Side::F => (Direction::Inverse, self.f(word[k])),
        };
        for &letter in word[..k].iter().rev() {
            x = self.lusztig_t(letter, dir, &x)?;
        }
        Ok(x)
    }
}
