use super::conj_a_predict;
use crate::rootsys::{integer_kernel, LatVec, RootDatum, SupportSet, WeylElt};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, serde::Serialize)]
pub enum ConjBTag {
    /// Both characters trivial.
    Homogeneous,
    /// Support made of simple roots.
    SimpleSupport,
    /// Support containing a non-simple root that is indecomposable in both inversion sets.
    Reflected,
}

/// Triangular data predicted to give a Borel subalgebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjBCandidate {
    pub w_minus: WeylElt,
    pub w_minus_prime: WeylElt,
    pub w_plus: WeylElt,
    /// Mutually orthogonal positive roots shared by both characters.
    pub support: Vec<LatVec>,
    /// Basis of the orthogonal complement of the support; taken maximal by assumption.
    pub lattice: Vec<LatVec>,
    pub tag: ConjBTag,
}

/// Sets of mutually orthogonal roots of `Φ⁺(w₋) ∩ Φ⁺(w₊)`, each indecomposable in both.
fn shared_supports(datum: &RootDatum, w_minus: &WeylElt, w_plus: &WeylElt) -> Vec<Vec<LatVec>> {
    let minus = datum.phi_plus(w_minus);
    let plus = datum.phi_plus(w_plus);
    let roots: Vec<LatVec> = minus
        .iter()
        .filter(|r| plus.contains(r) && !datum.is_decomposable_in(r, &minus) && !datum.is_decomposable_in(r, &plus))
        .cloned()
        .collect();
    let mut out = Vec::new();
    for mask in 0u32..(1 << roots.len()) {
        let subset: Vec<LatVec> =
            roots.iter().enumerate().filter(|(b, _)| mask & (1 << b) != 0).map(|(_, r)| r.clone()).collect();
        let orthogonal =
            subset.iter().enumerate().all(|(a, x)| subset[a + 1..].iter().all(|y| datum.form(x, y) == 0));
        if orthogonal {
            out.push(subset);
        }
    }
    out
}

fn predict_roots(datum: &RootDatum, w: &WeylElt, support: &[LatVec]) -> WeylElt {
    let simple: Option<Vec<usize>> = support.iter().map(|r| (0..datum.rank()).find(|&i| datum.simple_root(i) == *r)).collect();
    match simple.and_then(|s| SupportSet::new(datum, &s).ok()) {
        Some(s) => conj_a_predict(datum, w, &s),
        None => support.iter().fold(w.clone(), |acc, r| datum.mul(&datum.reflection(r).expect("root"), &acc)),
    }
}

/// All `(w₋, supp, L = supp⊥, w₊)` with `w₋′⁻¹ w₊ = w₀` and `ℓ(w₋′) + ℓ(w₊) = ℓ(w₀)`,
/// where `w₋′ = (∏ s_β) w₋`.
pub fn conj_b_candidates(datum: &RootDatum) -> Vec<ConjBCandidate> {
    let w0 = datum.longest_element();
    let group = datum.weyl_group();
    let mut out = Vec::new();
    for w_minus in &group {
        for w_plus in &group {
            for support in shared_supports(datum, w_minus, w_plus) {
                let prime = predict_roots(datum, w_minus, &support);
                if prime.len() + w_plus.len() != w0.len() || datum.mul(&datum.inverse(&prime), w_plus) != w0 {
                    continue;
                }
                let tag = if support.is_empty() {
                    ConjBTag::Homogeneous
                } else if support.iter().all(|r| r.iter().sum::<i32>() == 1) {
                    ConjBTag::SimpleSupport
                } else {
                    ConjBTag::Reflected
                };
                let rows: Vec<LatVec> =
                    support.iter().map(|r| (0..datum.rank()).map(|j| datum.form_with_simple(j, r)).collect()).collect();
                let lattice = integer_kernel(&rows, datum.rank());
                out.push(ConjBCandidate {
                    w_minus: w_minus.clone(),
                    w_minus_prime: prime,
                    w_plus: w_plus.clone(),
                    support,
                    lattice,
                    tag,
                });
            }
        }
    }
    out.sort_by(|a, b| (a.tag, &a.w_minus, &a.w_plus, &a.support).cmp(&(b.tag, &b.w_minus, &b.w_plus, &b.support)));
    out
}
