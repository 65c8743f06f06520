use std::collections::{BTreeSet, HashMap};
use std::sync::Mutex;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serializer;

use super::pbw::SchubertPart;
use super::{from_row, shift_minus_word, to_row, Character, CoidealError};
use crate::linalg::{Echelon, SparseRow};
use crate::qfield::RatFunc;
use crate::rootsys::{integer_rank, vadd, vscale, vsub, LatVec, RootDatum, SupportSet, WeylElt};
use crate::uqalg::{AlgElt, Mono, Side, Uq, Word};

/// `(∏_{β ∈ supp} s_β) · w`.
pub fn conj_a_predict(datum: &RootDatum, w: &WeylElt, support: &SupportSet) -> WeylElt {
    support.indices().iter().fold(w.clone(), |acc, &i| datum.mul(&datum.simple_reflection(i), &acc))
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(tag = "kind", content = "detail", rename_all = "snake_case")]
pub enum Verdict {
    Confirmed,
    Mismatch(String),
    UnknownAtBound(String),
}

fn ser_weyl<S: Serializer>(w: &WeylElt, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&w.to_string())
}

fn ser_opt_weyl<S: Serializer>(w: &Option<WeylElt>, s: S) -> Result<S::Ok, S::Error> {
    match w {
        Some(w) => s.serialize_str(&w.to_string()),
        None => s.serialize_none(),
    }
}

fn ser_support<S: Serializer>(v: &SupportSet, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

/// Result of computing the associated graded algebra of `U⁻[w]_φ`.
#[derive(Clone, Debug, serde::Serialize)]
pub struct GradedReport {
    pub datum: String,
    #[serde(serialize_with = "ser_weyl")]
    pub w: WeylElt,
    #[serde(serialize_with = "ser_support")]
    pub support: SupportSet,
    /// Minimal `γ` with `K^{-γ}` in the degree-zero part.
    pub semigroup_generators: Vec<LatVec>,
    pub group_rank: usize,
    pub detected_roots: Vec<LatVec>,
    #[serde(serialize_with = "ser_opt_weyl")]
    pub detected: Option<WeylElt>,
    #[serde(serialize_with = "ser_weyl")]
    pub predicted: WeylElt,
    pub growth_identity: bool,
    pub verdict: Verdict,
    /// Largest extra `K⁻¹`-power used to confirm stabilization.
    pub shift_used: u32,
    pub elapsed_ms: u64,
}

impl GradedReport {
    pub fn is_confirmed(&self) -> bool {
        self.verdict == Verdict::Confirmed
    }
}

/// `ℓ(w) = rank(G̃) + ℓ(w′)` for a finished report.
pub fn growth_identity_check(report: &GradedReport) -> bool {
    report.detected.as_ref().is_some_and(|d| report.w.len() == report.group_rank + d.len())
}

/// Per-case state: the shifted algebra `A = U⁻[w]_φ`, graded by `deg F_i = deg K_i⁻¹ = α_i`.
struct Case<'a> {
    uq: &'a Uq,
    part: SchubertPart,
    phi: &'a Character,
    shifted_words: Mutex<HashMap<Word, AlgElt>>,
    leading: Mutex<HashMap<LatVec, Vec<SparseRow<Mono>>>>,
}

impl<'a> Case<'a> {
    fn shift(&self, x: &AlgElt) -> Result<AlgElt, CoidealError> {
        let mut acc = AlgElt::zero();
        for (m, c) in x.terms() {
            let cached = self.shifted_words.lock().unwrap().get(&m.f).cloned();
            let s = match cached {
                Some(s) => s,
                None => {
                    let s = shift_minus_word(self.uq, &m.f, self.phi)?;
                    self.shifted_words.lock().unwrap().insert(m.f.clone(), s.clone());
                    s
                }
            };
            acc.add_scaled(&s, c);
        }
        Ok(acc)
    }

    /// Leading-degree parts of an echelon basis of `A_ν`; they span `D_ν`.
    fn leading(&self, nu: &[i32]) -> Result<Vec<SparseRow<Mono>>, CoidealError> {
        if let Some(rows) = self.leading.lock().unwrap().get(nu) {
            return Ok(rows.clone());
        }
        let mut echelon: Echelon<(usize, Mono)> = Echelon::new();
        for (i, x) in self.part.component(self.uq, nu)?.iter().enumerate() {
            let shifted = self.shift(x)?;
            let row = shifted.terms().map(|(m, c)| ((m.f.len(), m.clone()), c.clone())).collect();
            echelon.insert(&row, i);
        }
        let rows: Vec<SparseRow<Mono>> = echelon
            .rows()
            .map(|(pivot, row)| {
                row.iter().filter(|(k, _)| k.0 == pivot.0).map(|(k, c)| (k.1.clone(), c.clone())).collect()
            })
            .collect();
        self.leading.lock().unwrap().insert(nu.to_vec(), rows.clone());
        Ok(rows)
    }

    /// `D_{β+γ} ∩ span{F_u K^{-γ}}`, returned with the `K^{-γ}` stripped.
    fn pure(&self, beta: &[i32], gamma: &[i32]) -> Result<Echelon<Mono>, CoidealError> {
        let target = vscale(gamma, -1);
        let mut echelon: Echelon<(bool, Mono)> = Echelon::new();
        for (i, row) in self.leading(&vadd(beta, gamma))?.iter().enumerate() {
            let keyed = row.iter().map(|(m, c)| ((m.k == target, m.clone()), c.clone())).collect();
            echelon.insert(&keyed, i);
        }
        let mut out = Echelon::new();
        for (i, (pivot, row)) in echelon.rows().enumerate() {
            if pivot.0 {
                let stripped = row
                    .iter()
                    .map(|((_, m), c)| (Mono { f: m.f.clone(), k: vec![0; m.k.len()], e: m.e.clone() }, c.clone()))
                    .collect();
                out.insert(&stripped, i);
            }
        }
        Ok(out)
    }
}

fn same_span(a: &Echelon<Mono>, b: &Echelon<Mono>) -> bool {
    a.dim() == b.dim() && a.rows().all(|(_, r)| b.contains(r))
}

/// Number of multisets of the given vectors summing to `target`.
fn partition_count(target: &[i32], parts: &[LatVec]) -> usize {
    fn rec(target: LatVec, parts: &[LatVec]) -> usize {
        if target.iter().all(|&x| x == 0) {
            return 1;
        }
        let Some((first, rest)) = parts.split_first() else { return 0 };
        let mut total = 0;
        let mut t = target;
        loop {
            total += rec(t.clone(), rest);
            t = vsub(&t, first);
            if t.iter().any(|&x| x < 0) {
                return total;
            }
        }
    }
    rec(target.to_vec(), parts)
}

fn uniform(datum: &RootDatum, support: &SupportSet, c: i32) -> LatVec {
    let mut v = datum.zero();
    for &i in support.indices() {
        v[i] = c;
    }
    v
}

/// Associated graded algebra of `U⁻[w]_φ` and its localization by `G(D⁰)`.
///
/// Localized degree-`β` pieces are read off at `K^{-cap-c·supp}` for growing `c` until two
/// consecutive values agree, giving up after `max_shift` extra steps.
pub fn graded_algebra(uq: &Uq, w: &WeylElt, phi: &Character, max_shift: u32) -> Result<GradedReport, CoidealError> {
    let start = Instant::now();
    let datum = uq.datum();
    let support = SupportSet::new(datum, &phi.support())?;
    let case = Case {
        uq,
        part: SchubertPart::new(uq, w, Side::F)?,
        phi,
        shifted_words: Mutex::new(HashMap::new()),
        leading: Mutex::new(HashMap::new()),
    };
    let predicted = conj_a_predict(datum, w, &support);
    let finish = |report: GradedReport| GradedReport { elapsed_ms: start.elapsed().as_millis() as u64, ..report };
    let mut report = GradedReport {
        datum: datum.name(),
        w: w.clone(),
        support: support.clone(),
        semigroup_generators: Vec::new(),
        group_rank: 0,
        detected_roots: Vec::new(),
        detected: None,
        predicted: predicted.clone(),
        growth_identity: false,
        verdict: Verdict::Confirmed,
        shift_used: 0,
        elapsed_ms: 0,
    };

    // Degree zero: which K^{-γ} survive as leading terms.
    let box_vectors: Vec<LatVec> = datum
        .vectors_below(&uniform(datum, &support, 2))
        .into_iter()
        .filter(|g| g.iter().any(|&x| x != 0))
        .collect();
    let mut cartan = Vec::new();
    for gamma in &box_vectors {
        if case.pure(&datum.zero(), gamma)?.dim() > 0 {
            cartan.push(gamma.clone());
        }
    }
    report.semigroup_generators = cartan
        .iter()
        .filter(|g| !cartan.iter().any(|h| h != *g && cartan.contains(&vsub(g, h))))
        .cloned()
        .collect();
    report.group_rank = integer_rank(&report.semigroup_generators);

    // Localized pieces U′_β for β up to the highest root: products of lower pieces plus
    // pure leading terms found at K^{-cap}, where cap bounds the support content of one root.
    let mut cap = datum.zero();
    for root in datum.phi_plus(w) {
        for &s in support.indices() {
            cap[s] = cap[s].max(root[s]);
        }
    }
    let betas: Vec<LatVec> =
        datum.vectors_below(&datum.highest_root()).into_iter().filter(|b| b.iter().any(|&x| x != 0)).collect();
    let mut localized: Vec<(LatVec, Echelon<Mono>)> = Vec::new();
    for beta in &betas {
        let mut products = Echelon::new();
        for (left_deg, left) in &localized {
            let right_deg = vsub(beta, left_deg);
            let Some((_, right)) = localized.iter().find(|(d, _)| *d == right_deg) else { continue };
            for (_, x) in left.rows() {
                for (_, y) in right.rows() {
                    let p = uq.mul(&from_row(x), &from_row(y))?;
                    let n = products.dim();
                    products.insert(&to_row(&p), n);
                }
            }
        }
        let with_pure = |extra: i32| -> Result<Echelon<Mono>, CoidealError> {
            let gamma: LatVec = cap.iter().enumerate().map(|(i, &c)| if support.contains(i) { c + extra } else { 0 }).collect();
            let mut space = products.clone();
            for (_, row) in case.pure(beta, &gamma)?.rows() {
                let n = space.dim();
                space.insert(row, n);
            }
            Ok(space)
        };
        let mut extra = 0;
        let mut current = with_pure(0)?;
        let stable = loop {
            if support.is_empty() {
                break true;
            }
            if extra as u32 >= max_shift {
                break false;
            }
            extra += 1;
            let next = with_pure(extra)?;
            if next.dim() == current.dim() {
                break true;
            }
            current = next;
        };
        report.shift_used = report.shift_used.max(extra as u32);
        if !stable {
            report.verdict = Verdict::UnknownAtBound(format!("degree {beta:?} still growing at K^-(cap+{max_shift})"));
            return Ok(finish(report));
        }
        localized.push((beta.clone(), current));
    }

    // Roots of w′ by peeling off products of roots already found.
    let mut roots: Vec<LatVec> = Vec::new();
    for (beta, space) in &localized {
        let fresh = space.dim() as i64 - partition_count(beta, &roots) as i64;
        match fresh {
            0 => {}
            1 if datum.is_root(beta) => roots.push(beta.clone()),
            _ => {
                let mut bad = roots.clone();
                bad.push(beta.clone());
                return Err(CoidealError::ClassificationViolation(bad));
            }
        }
    }
    report.detected_roots = roots.clone();
    let set: BTreeSet<LatVec> = roots.iter().cloned().collect();
    let detected = datum.element_with_phi_plus(&set).ok_or(CoidealError::ClassificationViolation(roots))?;
    report.detected = Some(detected.clone());
    report.growth_identity = growth_identity_check(&report);

    if detected != predicted {
        report.verdict = Verdict::Mismatch(format!("detected {detected}, predicted {predicted}"));
        return Ok(finish(report));
    }
    let expected = SchubertPart::new(uq, &detected, Side::F)?;
    for (beta, space) in &localized {
        let mut target = Echelon::new();
        for (i, x) in expected.component(uq, beta)?.iter().enumerate() {
            target.insert(&to_row(x), i);
        }
        if !same_span(space, &target) {
            report.verdict = Verdict::Mismatch(format!("degree {beta:?}: localized piece differs from U^-[{detected}]"));
            return Ok(finish(report));
        }
    }
    if !report.growth_identity {
        report.verdict = Verdict::Mismatch(format!(
            "growth: ℓ(w) = {} but rank {} + ℓ(w′) = {}",
            w.len(),
            report.group_rank,
            detected.len()
        ));
    }
    Ok(finish(report))
}

/// Runs [`graded_algebra`] on every `w` and every nonempty valid support, all
/// character values equal to one. Results are sorted by `(ℓ(w), word, support)`.
pub fn conj_a_sweep(
    uq: &Uq,
    max_shift: u32,
    progress: &(dyn Fn(&GradedReport) + Sync),
) -> Result<Vec<GradedReport>, CoidealError> {
    let datum = uq.datum();
    let cases: Vec<(WeylElt, SupportSet)> = datum
        .weyl_group()
        .into_iter()
        .flat_map(|w| datum.valid_supports(&w).into_iter().filter(|s| !s.is_empty()).map(move |s| (w.clone(), s)))
        .collect();
    let mut reports = cases
        .par_iter()
        .map(|(w, s)| {
            let phi = Character::uniform(datum, w, s, &RatFunc::one())?;
            let report = graded_algebra(uq, w, &phi, max_shift)?;
            progress(&report);
            Ok(report)
        })
        .collect::<Result<Vec<_>, CoidealError>>()?;
    reports.sort_by(|a, b| (&a.w, &a.support).cmp(&(&b.w, &b.support)));
    Ok(reports)
}
