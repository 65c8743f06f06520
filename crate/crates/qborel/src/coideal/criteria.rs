use super::{shift_minus, Character, CoidealError};
use crate::qfield::RatFunc;
use crate::rootsys::{is_positive, RootDatum, SupportSet, WeylElt};
use crate::uqalg::{Direction, Side, Uq};

/// Two factorizations `w = u₁ s_i = u₂ s_l` with `i ≠ l` avoiding the support.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Criterion2Witness {
    pub first_ending: usize,
    pub second_ending: usize,
    pub first_prefix: WeylElt,
    pub second_prefix: WeylElt,
}

/// Whether `w` has two distinct endings `i, l` with `u₁(α_i), u₂(α_l)` outside the support.
pub fn criterion2_applicable(datum: &RootDatum, w: &WeylElt, support: &SupportSet) -> Option<Criterion2Witness> {
    let outside = |u: &WeylElt, i: usize| {
        let image = u.apply(&datum.simple_root(i));
        !support.indices().iter().any(|&s| datum.simple_root(s) == image)
    };
    let descents = datum.right_descents(w);
    for (a, &i) in descents.iter().enumerate() {
        for &l in &descents[a + 1..] {
            let u1 = datum.mul(w, &datum.simple_reflection(i));
            let u2 = datum.mul(w, &datum.simple_reflection(l));
            if outside(&u1, i) && outside(&u2, l) {
                return Some(Criterion2Witness { first_ending: i, second_ending: l, first_prefix: u1, second_prefix: u2 });
            }
        }
    }
    None
}

/// Sign convention for the correction term of the explicit shift formula.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum ShiftSign {
    /// `(q_m⁻¹ − q_m)`
    Lowering,
    /// `(q_m − q_m⁻¹)`
    Raising,
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub enum PropShiftOutcome {
    NotApplicable(String),
    Checked { lowering_holds: bool, raising_holds: bool },
}

impl PropShiftOutcome {
    pub fn holds(&self, sign: ShiftSign) -> Option<bool> {
        match (self, sign) {
            (PropShiftOutcome::NotApplicable(_), _) => None,
            (PropShiftOutcome::Checked { lowering_holds, .. }, ShiftSign::Lowering) => Some(*lowering_holds),
            (PropShiftOutcome::Checked { raising_holds, .. }, ShiftSign::Raising) => Some(*raising_holds),
        }
    }
}

/// Compares the shift of `T_m⁻¹ T_{v⁻¹}⁻¹(F_i)` by `φ(F_m) = value` with the closed form
/// `T_m⁻¹T_{v⁻¹}⁻¹(F_i) ± (q_m − q_m⁻¹) value · T_{v⁻¹}⁻¹(F_i) K_m⁻¹`.
///
/// Requires `ν = v(α_i) > 0`, `⟨ν, α_m^∨⟩ = −1` and `α_m` absent from `ν`.
pub fn prop_shift_check(
    uq: &Uq,
    v: &WeylElt,
    i: usize,
    m: usize,
    value: &RatFunc,
) -> Result<PropShiftOutcome, CoidealError> {
    let datum = uq.datum();
    let nu = v.apply(&datum.simple_root(i));
    if !is_positive(&nu) {
        return Ok(PropShiftOutcome::NotApplicable(format!("{v}(α{}) is negative", i + 1)));
    }
    if datum.coroot_pairing(m, &nu) != -1 {
        return Ok(PropShiftOutcome::NotApplicable(format!("pairing of {nu:?} with α{}∨ is not -1", m + 1)));
    }
    if nu[m] != 0 {
        return Ok(PropShiftOutcome::NotApplicable(format!("α{} occurs in {nu:?}", m + 1)));
    }
    let mut word = v.word().to_vec();
    word.push(i);
    let inner = uq.root_vector(&word, word.len() - 1, Side::F)?;
    let outer = uq.lusztig_t(m, Direction::Inverse, &inner)?;
    let phi = Character::on_support(datum, &[(m, value.clone())])?;
    let shifted = shift_minus(uq, &outer, &phi)?;

    let mut k = datum.zero();
    k[m] = -1;
    let correction = uq.mul(&inner, &uq.k(&k))?.scale(value);
    let qm = uq.q_i(m);
    let lowering = &(&qm.inv().expect("nonzero") - &qm);
    let expected_lowering = &outer + &correction.scale(lowering);
    let expected_raising = &outer - &correction.scale(lowering);
    Ok(PropShiftOutcome::Checked {
        lowering_holds: shifted == expected_lowering,
        raising_holds: shifted == expected_raising,
    })
}
