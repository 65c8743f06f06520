//! Character-shifted right coideal subalgebras and their associated graded algebras.

mod catalog;
mod conjb;
mod criteria;
mod graded;
mod pbw;

use std::collections::BTreeMap;

pub use catalog::{quantum_weyl_identity, sl2_borel, sl3_constants, sl3_type1_borel, sl3_type2_borel, Sl3Relation, Sl3RelationCheck};
pub use conjb::{conj_b_candidates, ConjBCandidate, ConjBTag};
pub use criteria::{criterion2_applicable, prop_shift_check, Criterion2Witness, PropShiftOutcome, ShiftSign};
pub use graded::{conj_a_predict, conj_a_sweep, graded_algebra, growth_identity_check, GradedReport, Verdict};
pub use pbw::SchubertPart;

use crate::linalg::{Echelon, SparseRow};
use crate::qfield::RatFunc;
use crate::rootsys::{vscale, LatVec, RootDatum, RootError, SupportSet, WeylElt};
use crate::uqalg::{AlgElt, Mono, Side, Uq, UqError, Word};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CoidealError {
    #[error(transparent)]
    Root(#[from] RootError),
    #[error(transparent)]
    Algebra(#[from] UqError),
    #[error("simple root α{} is not in Φ⁺({w})", .index + 1)]
    SupportOutsideInversions { index: usize, w: String },
    #[error("character value on α{} must be nonzero", .0 + 1)]
    ZeroValue(usize),
    #[error("lattice vector {0:?} is not orthogonal to the common support")]
    LatticeNotOrthogonal(LatVec),
    #[error("element is not in the subalgebra U^-[{0}]")]
    OutsideSchubert(String),
    #[error("element is not of the form required by the shift: {0}")]
    BadShape(String),
    #[error("root set {0:?} is not Φ⁺ of any Weyl group element")]
    ClassificationViolation(Vec<LatVec>),
    #[error("zero element has no leading term")]
    ZeroElement,
}

/// Character on a Schubert part: nonzero values on pairwise orthogonal simple roots.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Character {
    values: BTreeMap<usize, RatFunc>,
}

impl Character {
    pub fn zero() -> Self {
        Character::default()
    }

    /// Validates the support against `Φ⁺(w)` and orthogonality.
    pub fn new(datum: &RootDatum, w: &WeylElt, values: &[(usize, RatFunc)]) -> Result<Self, CoidealError> {
        let indices: Vec<usize> = values.iter().map(|(i, _)| *i).collect();
        SupportSet::new(datum, &indices)?;
        let phi = datum.phi_plus_set(w);
        let mut map = BTreeMap::new();
        for (i, v) in values {
            if !phi.contains(&datum.simple_root(*i)) {
                return Err(CoidealError::SupportOutsideInversions { index: *i, w: w.to_string() });
            }
            if v.is_zero() {
                return Err(CoidealError::ZeroValue(*i));
            }
            map.insert(*i, v.clone());
        }
        Ok(Character { values: map })
    }

    /// A character on `U⁻` itself: only orthogonality of the support is checked.
    pub fn on_support(datum: &RootDatum, values: &[(usize, RatFunc)]) -> Result<Self, CoidealError> {
        let indices: Vec<usize> = values.iter().map(|(i, _)| *i).collect();
        SupportSet::new(datum, &indices)?;
        let mut map = BTreeMap::new();
        for (i, v) in values {
            if v.is_zero() {
                return Err(CoidealError::ZeroValue(*i));
            }
            map.insert(*i, v.clone());
        }
        Ok(Character { values: map })
    }

    /// The same value on every support root.
    pub fn uniform(datum: &RootDatum, w: &WeylElt, support: &SupportSet, value: &RatFunc) -> Result<Self, CoidealError> {
        let values: Vec<(usize, RatFunc)> = support.indices().iter().map(|&i| (i, value.clone())).collect();
        Self::new(datum, w, &values)
    }

    pub fn support(&self) -> Vec<usize> {
        self.values.keys().copied().collect()
    }

    pub fn value(&self, i: usize) -> Option<&RatFunc> {
        self.values.get(&i)
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    /// Product of values along a word, zero if a letter is off the support.
    fn word_value(&self, word: &[u8]) -> Option<RatFunc> {
        let mut acc = RatFunc::one();
        for &l in word {
            acc = &acc * self.values.get(&(l as usize))?;
        }
        Some(acc)
    }
}

/// `λ′ = q²/((1−q²)(q−q⁻¹))`, the partner of `λ = 1`.
pub fn lambda_prime() -> RatFunc {
    let q = RatFunc::q_pow(1);
    let q2 = RatFunc::q_pow(2);
    let den = &(&RatFunc::one() - &q2) * &(&q - &RatFunc::q_pow(-1));
    q2.try_div(&den).expect("nonzero")
}

/// Replaces the (zero) Cartan part of every term of an F-only element.
fn with_cartan(x: &AlgElt, k: &[i32]) -> AlgElt {
    let mut out = AlgElt::zero();
    for (m, c) in x.terms() {
        out.add_term(Mono { f: m.f.clone(), k: k.to_vec(), e: m.e.clone() }, c.clone());
    }
    out
}

pub(crate) fn to_row(x: &AlgElt) -> SparseRow<Mono> {
    x.terms().map(|(m, c)| (m.clone(), c.clone())).collect()
}

pub(crate) fn from_row(row: &SparseRow<Mono>) -> AlgElt {
    let mut x = AlgElt::zero();
    for (m, c) in row {
        x.add_term(m.clone(), c.clone());
    }
    x
}

/// `x ↦ (φ ⊗ id)Δ(x)` on an element of `U⁻`.
pub fn shift_minus(uq: &Uq, x: &AlgElt, phi: &Character) -> Result<AlgElt, CoidealError> {
    let mut acc = AlgElt::zero();
    for (m, c) in x.terms() {
        if !m.e.is_empty() || m.k.iter().any(|&v| v != 0) {
            return Err(CoidealError::BadShape(format!("{m} is not an F-word")));
        }
        acc.add_scaled(&shift_minus_word(uq, &m.f, phi)?, c);
    }
    Ok(acc)
}

/// Subset expansion of the shift on a single F-word.
pub(crate) fn shift_minus_word(uq: &Uq, word: &[u8], phi: &Character) -> Result<AlgElt, CoidealError> {
    let datum = uq.datum();
    let positions: Vec<usize> = (0..word.len()).filter(|&a| phi.value(word[a] as usize).is_some()).collect();
    let mut acc = AlgElt::zero();
    for mask in 0u32..(1 << positions.len()) {
        let in_s = |a: usize| positions.iter().enumerate().any(|(b, &p)| p == a && mask & (1 << b) != 0);
        let picked: Word = (0..word.len()).filter(|&a| in_s(a)).map(|a| word[a]).collect();
        let rest: Word = (0..word.len()).filter(|&a| !in_s(a)).map(|a| word[a]).collect();
        let mut exp = 0;
        for a in 0..word.len() {
            for b in a + 1..word.len() {
                if in_s(a) && !in_s(b) {
                    exp += datum.form_simple(word[a] as usize, word[b] as usize);
                }
            }
        }
        let value = phi.word_value(&picked).expect("picked letters lie in the support");
        let mut deg = datum.zero();
        for &l in &picked {
            deg[l as usize] -= 1;
        }
        let term = with_cartan(&uq.word(Side::F, &rest)?, &deg);
        acc.add_scaled(&term, &value.mul_q_pow(exp));
    }
    Ok(acc)
}

/// `x ↦ (φ ⊗ id)Δ(x)` on the span of `K^{-|u|} E_u`, with `φ(E_j K_j⁻¹)` prescribed.
pub fn shift_plus(uq: &Uq, x: &AlgElt, phi: &Character) -> Result<AlgElt, CoidealError> {
    let datum = uq.datum();
    let mut acc = AlgElt::zero();
    for (m, c) in x.terms() {
        let deg = crate::uqalg::word_degree(&m.e, uq.rank());
        if !m.f.is_empty() || m.k != vscale(&deg, -1) {
            return Err(CoidealError::BadShape(format!("{m} is not of the form K^-|u| E_u")));
        }
        let word = &m.e;
        let n = word.len();
        for mask in 0u32..(1 << n) {
            // S collects the letters kept on the right.
            let in_s = |a: usize| mask & (1 << a) != 0;
            let left: Word = (0..n).filter(|&a| !in_s(a)).map(|a| word[a]).collect();
            let Some(lambda) = phi.word_value(&left) else { continue };
            let right: Word = (0..n).filter(|&a| in_s(a)).map(|a| word[a]).collect();
            let mut exp = 0;
            for a in 0..n {
                for b in a + 1..n {
                    if !in_s(a) && in_s(b) {
                        exp -= datum.form_simple(word[a] as usize, word[b] as usize);
                    }
                }
            }
            let left_deg = crate::uqalg::word_degree(&left, uq.rank());
            let mut value_exp = -datum.form(&left_deg, &left_deg);
            for a in 0..left.len() {
                for b in a + 1..left.len() {
                    value_exp += datum.form_simple(left[a] as usize, left[b] as usize);
                }
            }
            let right_elt = uq.mul(&uq.k(&m.k), &uq.word(Side::E, &right)?)?;
            let coeff = &lambda.mul_q_pow(exp + value_exp) * c;
            acc.add_scaled(&right_elt, &coeff);
        }
    }
    Ok(acc)
}

/// Shift of an element of `U⁻[w]`, after checking membership.
pub fn character_shift(uq: &Uq, x: &AlgElt, w: &WeylElt, phi: &Character) -> Result<AlgElt, CoidealError> {
    let part = SchubertPart::new(uq, w, Side::F)?;
    if !part.contains(uq, x)? {
        return Err(CoidealError::OutsideSchubert(w.to_string()));
    }
    shift_minus(uq, x, phi)
}

/// `(w₋, φ₋, L, w₊, φ₊)` describing `U⁻[w₋]_{φ₋} k[L] S(U⁺[w₊])_{φ₊}`.
#[derive(Clone, Debug)]
pub struct TriangularData {
    pub w_minus: WeylElt,
    pub phi_minus: Character,
    pub lattice: Vec<LatVec>,
    pub w_plus: WeylElt,
    pub phi_plus: Character,
}

#[derive(Clone, Debug)]
pub struct NamedGenerator {
    pub name: String,
    pub element: AlgElt,
}

/// A subalgebra given by generators, optionally with its triangular data.
#[derive(Clone, Debug)]
pub struct CoidealPresentation {
    pub data: Option<TriangularData>,
    pub generators: Vec<NamedGenerator>,
}

impl CoidealPresentation {
    pub fn from_generators(generators: Vec<(String, AlgElt)>) -> Self {
        CoidealPresentation {
            data: None,
            generators: generators.into_iter().map(|(name, element)| NamedGenerator { name, element }).collect(),
        }
    }

    pub fn generator(&self, name: &str) -> Option<&AlgElt> {
        self.generators.iter().find(|g| g.name == name).map(|g| &g.element)
    }

    pub fn elements(&self) -> Vec<AlgElt> {
        self.generators.iter().map(|g| g.element.clone()).collect()
    }
}

/// Generators of the triangular subalgebra: shifted F root vectors, `K^{±μ}`,
/// and shifted `E_β K_β⁻¹`.
pub fn build_presentation(uq: &Uq, data: TriangularData) -> Result<CoidealPresentation, CoidealError> {
    let datum = uq.datum();
    let common: Vec<usize> =
        data.phi_minus.support().into_iter().filter(|i| data.phi_plus.value(*i).is_some()).collect();
    for mu in &data.lattice {
        if common.iter().any(|&i| datum.form_with_simple(i, mu) != 0) {
            return Err(CoidealError::LatticeNotOrthogonal(mu.clone()));
        }
    }
    // Re-validate the characters against their Weyl elements.
    let recheck = |w: &WeylElt, phi: &Character| -> Result<(), CoidealError> {
        let vals: Vec<(usize, RatFunc)> = phi.values.iter().map(|(i, v)| (*i, v.clone())).collect();
        Character::new(datum, w, &vals).map(|_| ())
    };
    recheck(&data.w_minus, &data.phi_minus)?;
    recheck(&data.w_plus, &data.phi_plus)?;

    let mut gens = Vec::new();
    let minus_word = data.w_minus.word().to_vec();
    let roots = datum.root_sequence(&minus_word);
    for (k, beta) in roots.iter().enumerate() {
        let f = uq.root_vector(&minus_word, k, Side::F)?;
        gens.push((format!("F̄[{}]", crate::rootsys::root_label(beta)), shift_minus(uq, &f, &data.phi_minus)?));
    }
    for mu in &data.lattice {
        gens.push((format!("K^{mu:?}"), uq.k(mu)));
        gens.push((format!("K^-{mu:?}"), uq.k(&vscale(mu, -1))));
    }
    let plus_word = data.w_plus.word().to_vec();
    let roots = datum.root_sequence(&plus_word);
    for (k, beta) in roots.iter().enumerate() {
        let e = uq.root_vector(&plus_word, k, Side::E)?;
        let ek = uq.mul(&e, &uq.k(&vscale(beta, -1)))?;
        gens.push((format!("Ē[{}]", crate::rootsys::root_label(beta)), shift_plus(uq, &ek, &data.phi_plus)?));
    }
    let mut out = CoidealPresentation::from_generators(gens);
    out.data = Some(data);
    Ok(out)
}

/// Outcome of a bounded right-coideal test.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum CoidealVerdict {
    True,
    False,
    UnknownAtBound,
}

/// Span of all products of at most `len` generators.
pub(crate) struct GeneratedSpan {
    pub(crate) levels: Vec<Echelon<Mono>>,
}

impl GeneratedSpan {
    pub(crate) fn new(uq: &Uq, gens: &[AlgElt], len: usize) -> Result<Self, CoidealError> {
        let mut levels = Vec::new();
        let mut echelon = Echelon::new();
        let mut count = 1;
        echelon.insert(&to_row(&uq.one()), 0);
        let mut frontier = vec![uq.one()];
        levels.push(echelon.clone());
        for _ in 0..len {
            let mut next = Vec::new();
            for x in &frontier {
                for g in gens {
                    let p = uq.mul(x, g)?;
                    if echelon.insert(&to_row(&p), count).is_some() {
                        count += 1;
                        next.push(p);
                    }
                }
            }
            levels.push(echelon.clone());
            frontier = next;
        }
        Ok(GeneratedSpan { levels })
    }

    pub(crate) fn top(&self) -> &Echelon<Mono> {
        self.levels.last().expect("at least the unit level")
    }
}

/// Dimension of `span ∩ span(monos)`.
fn restricted_dim(span: &Echelon<Mono>, monos: &std::collections::BTreeSet<Mono>) -> usize {
    let mut e: Echelon<(bool, Mono)> = Echelon::new();
    for (i, (_, row)) in span.rows().enumerate() {
        let keyed: SparseRow<(bool, Mono)> = row.iter().map(|(m, c)| ((monos.contains(m), m.clone()), c.clone())).collect();
        e.insert(&keyed, i);
    }
    e.rows().filter(|(k, _)| k.0).count()
}

/// Tests `Δ(g) ∈ C ⊗ U` for every generator, with `C` truncated to products
/// of at most `bound` generators.
pub fn verify_coideal(uq: &Uq, c: &CoidealPresentation, bound: usize) -> Result<CoidealVerdict, CoidealError> {
    let gens = c.elements();
    let span = GeneratedSpan::new(uq, &gens, bound.max(1))?;
    let mut verdict = CoidealVerdict::True;
    for g in &gens {
        let delta = uq.coproduct(g)?;
        for (_, left) in delta.by_right() {
            let row = to_row(&left);
            if span.top().contains(&row) {
                continue;
            }
            let monos: std::collections::BTreeSet<Mono> = row.keys().cloned().collect();
            let n = span.levels.len();
            let stable = n >= 2 && restricted_dim(&span.levels[n - 1], &monos) == restricted_dim(&span.levels[n - 2], &monos);
            if stable {
                return Ok(CoidealVerdict::False);
            }
            verdict = CoidealVerdict::UnknownAtBound;
        }
    }
    Ok(verdict)
}
