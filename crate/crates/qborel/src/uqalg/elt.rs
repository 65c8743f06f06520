use std::collections::BTreeMap;
use std::fmt;

use crate::qfield::RatFunc;
use crate::rootsys::LatVec;

/// Word in the generators, letters are 0-based simple-root indices.
pub type Word = Vec<u8>;

/// Sparse coordinate vector `(index, coefficient)`, sorted by index.
pub type SparseVec = Vec<(u32, RatFunc)>;

/// Normal-form monomial `F_f K^k E_e`; `f` and `e` are standard words.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mono {
    pub f: Word,
    pub k: LatVec,
    pub e: Word,
}

impl Mono {
    pub fn one(rank: usize) -> Self {
        Mono { f: Word::new(), k: vec![0; rank], e: Word::new() }
    }

    pub fn is_one(&self) -> bool {
        self.f.is_empty() && self.e.is_empty() && self.k.iter().all(|&x| x == 0)
    }

    /// `deg(E) = 1`, `deg(F) = -1`, `deg(K) = 0`.
    pub fn z_degree(&self) -> i32 {
        self.e.len() as i32 - self.f.len() as i32
    }

    /// Λ-degree: E-content minus F-content.
    pub fn weight(&self) -> LatVec {
        let mut w = vec![0; self.k.len()];
        for &l in &self.e {
            w[l as usize] += 1;
        }
        for &l in &self.f {
            w[l as usize] -= 1;
        }
        w
    }

    /// Modified degree with `F -> -2`, `E -> +1`, `K^{±1} -> -1`.
    pub fn mdeg(&self) -> i32 {
        self.e.len() as i32 - 2 * self.f.len() as i32 - self.k.iter().map(|x| x.abs()).sum::<i32>()
    }

    pub fn is_cartan(&self) -> bool {
        self.f.is_empty() && self.e.is_empty()
    }
}

pub(crate) fn word_degree(word: &[u8], rank: usize) -> LatVec {
    let mut d = vec![0; rank];
    for &l in word {
        d[l as usize] += 1;
    }
    d
}

fn write_word(f: &mut fmt::Formatter<'_>, letter: char, w: &[u8]) -> fmt::Result {
    for &l in w {
        write!(f, "{letter}{}", l + 1)?;
    }
    Ok(())
}

impl fmt::Display for Mono {
    /// `F1F2*K1^-1K3*E2`, or `1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut parts: Vec<String> = Vec::new();
        if !self.f.is_empty() {
            parts.push(format!("{}", DisplayWord('F', &self.f)));
        }
        if self.k.iter().any(|&x| x != 0) {
            let mut s = String::new();
            for (i, &x) in self.k.iter().enumerate() {
                match x {
                    0 => {}
                    1 => s.push_str(&format!("K{}", i + 1)),
                    _ => s.push_str(&format!("K{}^{}", i + 1, x)),
                }
            }
            parts.push(s);
        }
        if !self.e.is_empty() {
            parts.push(format!("{}", DisplayWord('E', &self.e)));
        }
        write!(f, "{}", parts.join("*"))
    }
}

struct DisplayWord<'a>(char, &'a [u8]);

impl fmt::Display for DisplayWord<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_word(f, self.0, self.1)
    }
}

/// Element of `U_q(g)` as a finite sum of normal-form monomials.
#[derive(Clone, PartialEq, Eq, Default, Hash)]
pub struct AlgElt {
    terms: BTreeMap<Mono, RatFunc>,
}

impl AlgElt {
    pub fn zero() -> Self {
        AlgElt::default()
    }

    pub fn from_mono(m: Mono, c: RatFunc) -> Self {
        let mut x = AlgElt::zero();
        x.add_term(m, c);
        x
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &RatFunc)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Mono, RatFunc)> {
        self.terms.into_iter()
    }

    pub fn coeff(&self, m: &Mono) -> RatFunc {
        self.terms.get(m).cloned().unwrap_or_else(RatFunc::zero)
    }

    pub fn add_term(&mut self, m: Mono, c: RatFunc) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + &c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &AlgElt, c: &RatFunc) {
        if c.is_zero() {
            return;
        }
        for (m, x) in &other.terms {
            self.add_term(m.clone(), x * c);
        }
    }

    pub fn scale(&self, c: &RatFunc) -> AlgElt {
        if c.is_zero() {
            return AlgElt::zero();
        }
        AlgElt { terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect() }
    }

    /// Sub-sum over monomials satisfying a predicate.
    pub fn filter(&self, mut keep: impl FnMut(&Mono) -> bool) -> AlgElt {
        AlgElt { terms: self.terms.iter().filter(|(m, _)| keep(m)).map(|(m, c)| (m.clone(), c.clone())).collect() }
    }

    /// Maximal Z-degree and the sub-sum in that degree; `None` for zero.
    pub fn z_degree_leading(&self) -> Option<(i32, AlgElt)> {
        let top = self.terms.keys().map(Mono::z_degree).max()?;
        Some((top, self.filter(|m| m.z_degree() == top)))
    }

    /// The unique monomial if this is a multiple of one.
    pub fn as_single(&self) -> Option<(&Mono, &RatFunc)> {
        (self.terms.len() == 1).then(|| self.terms.iter().next().unwrap())
    }

    /// Coefficient of the identity monomial.
    pub fn constant_term(&self) -> RatFunc {
        self.terms.iter().find(|(m, _)| m.is_one()).map(|(_, c)| c.clone()).unwrap_or_else(RatFunc::zero)
    }
}

impl std::ops::Add for &AlgElt {
    type Output = AlgElt;
    fn add(self, rhs: &AlgElt) -> AlgElt {
        let mut out = self.clone();
        out.add_scaled(rhs, &RatFunc::one());
        out
    }
}

impl std::ops::Sub for &AlgElt {
    type Output = AlgElt;
    fn sub(self, rhs: &AlgElt) -> AlgElt {
        let mut out = self.clone();
        out.add_scaled(rhs, &RatFunc::from_int(-1));
        out
    }
}

impl std::ops::Neg for &AlgElt {
    type Output = AlgElt;
    fn neg(self) -> AlgElt {
        self.scale(&RatFunc::from_int(-1))
    }
}

pub(crate) fn write_coeff_term(f: &mut fmt::Formatter<'_>, first: bool, c: &RatFunc, body: &str) -> fmt::Result {
    let neg = c.numer().leading_coeff().is_negative();
    let mag = if neg { -c } else { c.clone() };
    if first {
        if neg {
            write!(f, "-")?;
        }
    } else {
        write!(f, " {} ", if neg { '-' } else { '+' })?;
    }
    let atomic = mag.numer().is_monomial();
    match (mag.is_one(), body == "1") {
        (true, true) => write!(f, "1"),
        (true, false) => write!(f, "{body}"),
        (false, true) if atomic => write!(f, "{mag}"),
        (false, true) => write!(f, "({mag})"),
        (false, false) if atomic => write!(f, "{mag}*{body}"),
        (false, false) => write!(f, "({mag})*{body}"),
    }
}

impl fmt::Display for AlgElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (n, (m, c)) in self.terms.iter().enumerate() {
            write_coeff_term(f, n == 0, c, &m.to_string())?;
        }
        Ok(())
    }
}

impl fmt::Debug for AlgElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Element of `U ⊗ U`.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct TensorElt {
    terms: BTreeMap<(Mono, Mono), RatFunc>,
}

impl TensorElt {
    pub fn zero() -> Self {
        TensorElt::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Mono, Mono), &RatFunc)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, left: Mono, right: Mono, c: RatFunc) {
        if c.is_zero() {
            return;
        }
        let key = (left, right);
        let sum = match self.terms.remove(&key) {
            Some(old) => &old + &c,
            None => c,
        };
        if !sum.is_zero() {
            self.terms.insert(key, sum);
        }
    }

    pub fn add_scaled(&mut self, other: &TensorElt, c: &RatFunc) {
        for ((l, r), x) in &other.terms {
            self.add_term(l.clone(), r.clone(), x * c);
        }
    }

    /// Groups by right factor: `Σ_r (Σ_l c l) ⊗ r`.
    pub fn by_right(&self) -> BTreeMap<Mono, AlgElt> {
        let mut out: BTreeMap<Mono, AlgElt> = BTreeMap::new();
        for ((l, r), c) in &self.terms {
            out.entry(r.clone()).or_default().add_term(l.clone(), c.clone());
        }
        out
    }

    /// Groups by left factor: `Σ_l l ⊗ (Σ_r c r)`.
    pub fn by_left(&self) -> BTreeMap<Mono, AlgElt> {
        let mut out: BTreeMap<Mono, AlgElt> = BTreeMap::new();
        for ((l, r), c) in &self.terms {
            out.entry(l.clone()).or_default().add_term(r.clone(), c.clone());
        }
        out
    }
}

impl fmt::Display for TensorElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (n, ((l, r), c)) in self.terms.iter().enumerate() {
            write_coeff_term(f, n == 0, c, &format!("{l}⊗{r}"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for TensorElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
