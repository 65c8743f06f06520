use super::{simple_module, RepError};
use crate::coideal::{conj_a_predict, CoidealPresentation};
use crate::linalg::Matrix;
use crate::rootsys::{root_label, LatVec, SupportSet};
use crate::uqalg::{AlgElt, Uq};

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum WitnessSource {
    /// `[Ē_μ, F̄_μ]` for a root in both inversion sets.
    SharedRoot { root: LatVec },
    /// Commutator of two listed generators.
    GeneratorCommutator { first: String, second: String },
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct Witness {
    pub source: WitnessSource,
    /// Highest weight of the simple module carrying the witness.
    pub weight: LatVec,
    /// The non-nilpotent action matrix, entries rendered as strings.
    pub matrix: Vec<Vec<String>>,
}

#[derive(Clone, Debug, serde::Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum WitnessOutcome {
    Found(Witness),
    /// No root in `Φ⁺(w₊) ∩ Φ⁺(w₋′)` and every generator commutator is nilpotent.
    NoSharedRoot,
    /// Candidate roots exist but every tested commutator acted nilpotently.
    Inconclusive,
}

impl WitnessOutcome {
    pub fn is_found(&self) -> bool {
        matches!(self, WitnessOutcome::Found(_))
    }
}

fn render(m: &Matrix) -> Vec<Vec<String>> {
    (0..m.nrows()).map(|r| m.row(r).iter().map(ToString::to_string).collect()).collect()
}

/// Roots `μ ∈ Φ⁺(w₊) ∩ Φ⁺(w₋′)` with `w₋′` the predicted graded Weyl element.
pub fn shared_roots(uq: &Uq, c: &CoidealPresentation) -> Result<Vec<LatVec>, RepError> {
    let Some(data) = &c.data else { return Ok(Vec::new()) };
    let datum = uq.datum();
    let support = SupportSet::new(datum, &data.phi_minus.support()).map_err(crate::coideal::CoidealError::from)?;
    let predicted = conj_a_predict(datum, &data.w_minus, &support);
    let minus = datum.phi_plus_set(&predicted);
    Ok(datum.phi_plus(&data.w_plus).into_iter().filter(|r| minus.contains(r)).collect())
}

/// Looks for an element of `[C, C]` acting non-nilpotently on some `L(λ)`.
///
/// A basic algebra has only one-dimensional composition factors on every
/// finite-dimensional module, so all its commutators act nilpotently there.
pub fn nonbasic_witness(uq: &Uq, c: &CoidealPresentation, weights: &[LatVec], cap: u64) -> Result<WitnessOutcome, RepError> {
    let modules = weights.iter().map(|w| Ok((w.clone(), simple_module(uq, w, cap)?))).collect::<Result<Vec<_>, RepError>>()?;
    let roots = shared_roots(uq, c)?;
    let mut candidates: Vec<(WitnessSource, AlgElt)> = Vec::new();
    for root in &roots {
        let label = root_label(root);
        let (Some(e), Some(f)) = (c.generator(&format!("Ē[{label}]")), c.generator(&format!("F̄[{label}]"))) else {
            continue;
        };
        candidates.push((WitnessSource::SharedRoot { root: root.clone() }, &uq.mul(e, f)? - &uq.mul(f, e)?));
    }
    for (a, x) in c.generators.iter().enumerate() {
        for y in &c.generators[a + 1..] {
            let comm = &uq.mul(&x.element, &y.element)? - &uq.mul(&y.element, &x.element)?;
            if !comm.is_zero() {
                let source = WitnessSource::GeneratorCommutator { first: x.name.clone(), second: y.name.clone() };
                candidates.push((source, comm));
            }
        }
    }
    for (source, element) in candidates {
        for (weight, module) in &modules {
            let m = module.action(&element);
            if !m.is_nilpotent() {
                return Ok(WitnessOutcome::Found(Witness { source, weight: weight.clone(), matrix: render(&m) }));
            }
        }
    }
    Ok(if roots.is_empty() { WitnessOutcome::NoSharedRoot } else { WitnessOutcome::Inconclusive })
}
