use std::collections::{BTreeMap, HashMap};
use std::sync::Mutex;

use super::{ModuleWindow, RepError};
use crate::coideal::{lambda_prime, sl2_borel, sl3_type1_borel, sl3_type2_borel, CoidealPresentation};
use crate::linalg::{Echelon, Matrix, SparseRow};
use crate::qfield::RatFunc;
use crate::rootsys::{vscale, vsub, LatVec};
use crate::uqalg::{word_degree, AlgElt, Mono, Uq};

/// One factor of an ordered product spanning the induced module.
#[derive(Clone, Debug)]
enum Factor {
    /// `x^n` for `n ≥ 0`; the leading term has nonzero degree.
    Power { element: AlgElt, lead: Lead },
    /// `K^{nμ}` for `n ∈ Z`.
    Lattice(LatVec),
}

/// Degrees of the top term: F-part, E-part, Cartan part.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Lead {
    f: LatVec,
    e: LatVec,
    k: LatVec,
}

fn total_degree(m: &Mono) -> usize {
    m.f.len() + m.e.len()
}

fn lead_of(x: &AlgElt, rank: usize) -> Result<Lead, RepError> {
    let top = x.terms().map(|(m, _)| total_degree(m)).max().ok_or_else(|| RepError::NotSpanned("zero factor".into()))?;
    let mut leads = x
        .terms()
        .filter(|(m, _)| total_degree(m) == top)
        .map(|(m, _)| Lead { f: word_degree(&m.f, rank), e: word_degree(&m.e, rank), k: m.k.clone() });
    let first = leads.next().expect("nonempty");
    if leads.any(|l| l != first) || top == 0 {
        return Err(RepError::NotSpanned(format!("factor {x} has no single leading term")));
    }
    Ok(first)
}

/// `U ⊗_B k_χ`, spanned by `coset · PBW(B) ⊗ 1_χ`.
///
/// The coset part ranges over ordered products of the coset factors; the
/// Borel part over ordered products of PBW generators of `B`, each with its
/// character value. Elements of `U` are reduced by cancelling their top
/// total degree against these products.
pub struct Induction<'a> {
    uq: &'a Uq,
    coset: Vec<Factor>,
    borel: Vec<Factor>,
    values: Vec<RatFunc>,
    /// Inverse of the lattice-factor matrix, for solving Cartan exponents.
    lattice_inverse: Vec<Vec<i64>>,
    lattice_slots: Vec<usize>,
    products: Mutex<HashMap<Vec<i32>, AlgElt>>,
}

fn integer_inverse(cols: &[LatVec]) -> Option<Vec<Vec<i64>>> {
    let n = cols.len();
    let mut a: Vec<Vec<f64>> = (0..n).map(|r| (0..n).map(|c| cols[c][r] as f64).collect()).collect();
    let mut inv: Vec<Vec<f64>> = (0..n).map(|r| (0..n).map(|c| if r == c { 1.0 } else { 0.0 }).collect()).collect();
    for c in 0..n {
        let p = (c..n).find(|&r| a[r][c] != 0.0)?;
        a.swap(c, p);
        inv.swap(c, p);
        let pivot = a[c][c];
        for j in 0..n {
            a[c][j] /= pivot;
            inv[c][j] /= pivot;
        }
        for r in 0..n {
            if r != c && a[r][c] != 0.0 {
                let f = a[r][c];
                for j in 0..n {
                    a[r][j] -= f * a[c][j];
                    inv[r][j] -= f * inv[c][j];
                }
            }
        }
    }
    let rounded: Vec<Vec<i64>> = inv.iter().map(|row| row.iter().map(|x| x.round() as i64).collect()).collect();
    let exact = inv.iter().flatten().zip(rounded.iter().flatten()).all(|(x, r)| (x - *r as f64).abs() < 1e-9);
    exact.then_some(rounded)
}

impl<'a> Induction<'a> {
    /// Coset factors `(element or lattice vector)` followed by PBW generators of `B` with values.
    fn new(
        uq: &'a Uq,
        coset: Vec<Result<AlgElt, LatVec>>,
        borel: Vec<(Result<AlgElt, LatVec>, RatFunc)>,
    ) -> Result<Self, RepError> {
        let rank = uq.rank();
        let build = |spec: Result<AlgElt, LatVec>| -> Result<Factor, RepError> {
            match spec {
                Ok(element) => Ok(Factor::Power { lead: lead_of(&element, rank)?, element }),
                Err(mu) => Ok(Factor::Lattice(mu)),
            }
        };
        let coset: Vec<Factor> = coset.into_iter().map(build).collect::<Result<_, _>>()?;
        let mut values = Vec::new();
        let mut borel_factors = Vec::new();
        for (spec, value) in borel {
            borel_factors.push(build(spec)?);
            values.push(value);
        }
        let all: Vec<&Factor> = coset.iter().chain(&borel_factors).collect();
        let lattice_slots: Vec<usize> = (0..all.len()).filter(|&s| matches!(all[s], Factor::Lattice(_))).collect();
        let cols: Vec<LatVec> =
            lattice_slots.iter().map(|&s| if let Factor::Lattice(mu) = all[s] { mu.clone() } else { unreachable!() }).collect();
        if cols.len() != rank {
            return Err(RepError::NotSpanned("lattice factors must form a basis".into()));
        }
        let lattice_inverse =
            integer_inverse(&cols).ok_or_else(|| RepError::NotSpanned("lattice factors are not unimodular".into()))?;
        Ok(Induction { uq, coset, borel: borel_factors, values, lattice_inverse, lattice_slots, products: Mutex::new(HashMap::new()) })
    }

    fn factors(&self) -> impl Iterator<Item = &Factor> {
        self.coset.iter().chain(&self.borel)
    }

    pub fn coset_len(&self) -> usize {
        self.coset.len()
    }

    /// `Π factor^{exps}` in order.
    fn product(&self, exps: &[i32]) -> Result<AlgElt, RepError> {
        if let Some(p) = self.products.lock().unwrap().get(exps) {
            return Ok(p.clone());
        }
        let mut acc = self.uq.one();
        for (factor, &n) in self.factors().zip(exps) {
            let piece = match factor {
                Factor::Power { element, .. } => self.uq.pow(element, n as u32)?,
                Factor::Lattice(mu) => self.uq.k(&vscale(mu, n)),
            };
            acc = self.uq.mul(&acc, &piece)?;
        }
        self.products.lock().unwrap().insert(exps.to_vec(), acc.clone());
        Ok(acc)
    }

    /// The coset element with the given exponents.
    pub fn coset_element(&self, label: &[i32]) -> Result<AlgElt, RepError> {
        let mut exps = label.to_vec();
        exps.resize(self.coset.len() + self.borel.len(), 0);
        self.product(&exps)
    }

    /// Exponent vectors whose product has the given leading degrees.
    fn candidates(&self, lead: &Lead) -> Vec<Vec<i32>> {
        let factors: Vec<&Factor> = self.factors().collect();
        let mut out = Vec::new();
        let mut current = vec![0; factors.len()];
        self.enumerate(&factors, 0, lead.f.clone(), lead.e.clone(), &mut current, &mut out, &lead.k);
        out
    }

    #[allow(clippy::too_many_arguments)]
    fn enumerate(
        &self,
        factors: &[&Factor],
        slot: usize,
        f_left: LatVec,
        e_left: LatVec,
        current: &mut Vec<i32>,
        out: &mut Vec<Vec<i32>>,
        target_k: &[i32],
    ) {
        if slot == factors.len() {
            if f_left.iter().any(|&x| x != 0) || e_left.iter().any(|&x| x != 0) {
                return;
            }
            // Remaining Cartan degree is carried by the lattice factors.
            let mut k_rest = target_k.to_vec();
            for (s, f) in factors.iter().enumerate() {
                if let Factor::Power { lead, .. } = f {
                    k_rest = vsub(&k_rest, &vscale(&lead.k, current[s]));
                }
            }
            let mut exps = current.clone();
            for (row, &s) in self.lattice_slots.iter().enumerate() {
                exps[s] = self.lattice_inverse[row].iter().zip(&k_rest).map(|(a, &b)| a * b as i64).sum::<i64>() as i32;
            }
            out.push(exps);
            return;
        }
        match factors[slot] {
            Factor::Lattice(_) => self.enumerate(factors, slot + 1, f_left, e_left, current, out, target_k),
            Factor::Power { lead, .. } => {
                let mut n = 0;
                let (mut f, mut e) = (f_left, e_left);
                loop {
                    current[slot] = n;
                    self.enumerate(factors, slot + 1, f.clone(), e.clone(), current, out, target_k);
                    f = vsub(&f, &lead.f);
                    e = vsub(&e, &lead.e);
                    if f.iter().chain(&e).any(|&x| x < 0) {
                        break;
                    }
                    n += 1;
                }
                current[slot] = 0;
            }
        }
    }

    fn character(&self, exps: &[i32]) -> RatFunc {
        let offset = self.coset.len();
        let mut acc = RatFunc::one();
        for (value, &n) in self.values.iter().zip(&exps[offset..]) {
            if n == 0 {
                continue;
            }
            acc = &acc * &value.pow(n).unwrap_or_else(|_| RatFunc::zero());
        }
        acc
    }

    /// Writes `x ⊗ 1_χ` in the coset basis.
    pub fn reduce(&self, x: &AlgElt) -> Result<BTreeMap<Vec<i32>, RatFunc>, RepError> {
        let rank = self.uq.rank();
        let offset = self.coset.len();
        let mut rest = x.clone();
        let mut out: BTreeMap<Vec<i32>, RatFunc> = BTreeMap::new();
        while let Some(top) = rest.terms().map(|(m, _)| total_degree(m)).max() {
            let top_terms = rest.filter(|m| total_degree(m) == top);
            let mut leads: Vec<Lead> = top_terms
                .terms()
                .map(|(m, _)| Lead { f: word_degree(&m.f, rank), e: word_degree(&m.e, rank), k: m.k.clone() })
                .collect();
            leads.sort_by(|a, b| (&a.f, &a.e, &a.k).cmp(&(&b.f, &b.e, &b.k)));
            leads.dedup();
            let mut echelon: Echelon<Mono> = Echelon::new();
            let mut tagged: Vec<(Vec<i32>, AlgElt)> = Vec::new();
            for lead in &leads {
                for exps in self.candidates(lead) {
                    let p = self.product(&exps)?;
                    let row: SparseRow<Mono> =
                        p.terms().filter(|(m, _)| total_degree(m) == top).map(|(m, c)| (m.clone(), c.clone())).collect();
                    echelon.insert(&row, tagged.len());
                    tagged.push((exps, p));
                }
            }
            let target: SparseRow<Mono> = top_terms.terms().map(|(m, c)| (m.clone(), c.clone())).collect();
            let (residual, combo) = echelon.reduce(&target);
            if !residual.is_empty() {
                return Err(RepError::NotSpanned(format!("top part of degree {top} is outside the span")));
            }
            for (tag, c) in combo {
                let (exps, p) = &tagged[tag];
                rest.add_scaled(p, &-&c);
                let value = &c * &self.character(exps);
                if !value.is_zero() {
                    let slot = out.entry(exps[..offset].to_vec()).or_insert_with(RatFunc::zero);
                    *slot = &*slot + &value;
                }
            }
            out.retain(|_, v| !v.is_zero());
            if rest.terms().any(|(m, _)| total_degree(m) >= top) {
                return Err(RepError::NotSpanned("top degree did not drop".into()));
            }
        }
        Ok(out)
    }
}

/// A truncated induced module together with its basis labels.
#[derive(Clone, Debug)]
pub struct InducedModule {
    pub labels: Vec<Vec<i32>>,
    pub module: ModuleWindow,
}

impl InducedModule {
    pub fn index_of(&self, label: &[i32]) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }
}

fn window_labels(kinds: &[bool], radius: i32) -> Vec<Vec<i32>> {
    // `true` marks a lattice factor, which ranges over both signs.
    let mut labels = vec![Vec::new()];
    for &lattice in kinds {
        let range: Vec<i32> = if lattice { (-radius..=radius).collect() } else { (0..=radius).collect() };
        labels = labels.into_iter().flat_map(|l| range.iter().map(move |&v| [l.clone(), vec![v]].concat())).collect();
    }
    labels
}

fn build_module(induction: &Induction, labels: Vec<Vec<i32>>, names: &[&str]) -> Result<InducedModule, RepError> {
    let uq = induction.uq;
    let rank = uq.rank();
    let dim = labels.len();
    let index: HashMap<Vec<i32>, usize> = labels.iter().enumerate().map(|(i, l)| (l.clone(), i)).collect();
    let mut boundary = vec![false; dim];
    let mut act = |x: &AlgElt| -> Result<Matrix, RepError> {
        let mut m = Matrix::zeros(dim, dim);
        for (col, label) in labels.iter().enumerate() {
            let image = induction.reduce(&uq.mul(x, &induction.coset_element(label)?)?)?;
            for (target, c) in image {
                match index.get(&target) {
                    Some(&row) => m.set(row, col, c),
                    None => boundary[col] = true,
                }
            }
        }
        Ok(m)
    };
    let mut raising = Vec::new();
    let mut lowering = Vec::new();
    let mut cartan = Vec::new();
    let mut cartan_inv = Vec::new();
    for i in 0..rank {
        raising.push(act(&uq.e(i))?);
        lowering.push(act(&uq.f(i))?);
        cartan.push(act(&uq.k_simple(i, 1))?);
        cartan_inv.push(act(&uq.k_simple(i, -1))?);
    }
    let text = labels
        .iter()
        .map(|l| l.iter().zip(names).map(|(v, n)| format!("{n}^{v}")).collect::<Vec<_>>().join(" "))
        .collect();
    Ok(InducedModule { labels, module: ModuleWindow::new(text, raising, lowering, cartan, cartan_inv, Some(boundary)) })
}

/// Character data for a module induced from `B_{λ,λ′}` in `U_q(sl2)`.
#[derive(Clone, Debug)]
pub struct InducedSpec {
    pub lambda: RatFunc,
    pub lambda_prime: RatFunc,
    /// `χ(Ē)`
    pub e: RatFunc,
    /// `χ(F̄)`
    pub f: RatFunc,
    pub radius: u32,
}

impl InducedSpec {
    /// The character with `χ(Ē) = e` for `λ = 1`.
    pub fn with_e(e: RatFunc, radius: u32) -> Self {
        let lambda = RatFunc::one();
        let lambda_prime = lambda_prime();
        let f = (&lambda * &lambda_prime).try_div(&e).expect("e is nonzero");
        InducedSpec { lambda, lambda_prime, e, f, radius }
    }

    pub fn check(&self) -> Result<(), RepError> {
        let product = &self.lambda * &self.lambda_prime;
        if product != lambda_prime() {
            return Err(RepError::ConstraintViolation(format!("λλ′ = {product} but must equal q^2/((1-q^2)(q-q^-1))")));
        }
        if &self.e * &self.f != product {
            return Err(RepError::ConstraintViolation(format!("ef = {} but must equal λλ′ = {product}", &self.e * &self.f)));
        }
        Ok(())
    }
}

fn presentation_parts(c: &CoidealPresentation, values: &[RatFunc]) -> Vec<(Result<AlgElt, LatVec>, RatFunc)> {
    let lattice: Vec<LatVec> = c.data.as_ref().map(|d| d.lattice.clone()).unwrap_or_default();
    let mut out = Vec::new();
    let mut v = values.iter();
    for g in &c.generators {
        if let Some(mu) = lattice.iter().find(|mu| g.name == format!("K^{mu:?}")) {
            out.push((Err(mu.clone()), v.next().expect("value per factor").clone()));
        } else if g.name.starts_with("K^") {
            continue;
        } else {
            out.push((Ok(g.element.clone()), v.next().expect("value per factor").clone()));
        }
    }
    out
}

/// `U_q(sl2) ⊗_{B_{λ,λ′}} k_χ` on the window `K^n, |n| ≤ radius`.
pub fn induced_sl2(uq: &Uq, spec: &InducedSpec) -> Result<InducedModule, RepError> {
    if uq.rank() != 1 {
        return Err(RepError::Unsupported("induced_sl2 needs type A1".into()));
    }
    spec.check()?;
    let borel = sl2_borel(uq, &spec.lambda, &spec.lambda_prime)?;
    let parts = presentation_parts(&borel, &[spec.f.clone(), spec.e.clone()]);
    let induction = Induction::new(uq, vec![Err(vec![1])], parts)?;
    build_module(&induction, window_labels(&[true], spec.radius as i32), &["K"])
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum Sl3BorelType {
    /// `U⁻[s1]_φ k[(K1K2²)^{±1}] S(U⁺[w₀])_φ`, induced basis `F2^i F12^j K2^k`.
    Type1,
    /// `U⁻[s1s2]_φ k[(K1K2²)^{±1}] S(U⁺[s1s2])_φ`, induced basis `F2^i E2^j K2^k`.
    Type2,
}

#[derive(Clone, Debug)]
pub struct Sl3InducedSpec {
    pub borel: Sl3BorelType,
    pub e1: RatFunc,
    pub f1: RatFunc,
    /// Value on `K1K2²`.
    pub k: RatFunc,
    pub radius: u32,
}

impl Sl3InducedSpec {
    pub fn check(&self) -> Result<(), RepError> {
        let target = lambda_prime();
        if &self.e1 * &self.f1 != target {
            return Err(RepError::ConstraintViolation(format!("e1 f1 = {} but must equal {target}", &self.e1 * &self.f1)));
        }
        if self.k.is_zero() {
            return Err(RepError::ConstraintViolation("the value on K1K2^2 must be nonzero".into()));
        }
        Ok(())
    }
}

/// `U_q(sl3) ⊗_C k_χ` for one of the two non-homogeneous Borel subalgebras.
pub fn induced_sl3(uq: &Uq, spec: &Sl3InducedSpec) -> Result<InducedModule, RepError> {
    if uq.datum().name() != "A2" {
        return Err(RepError::Unsupported("induced_sl3 needs type A2".into()));
    }
    spec.check()?;
    let zero = RatFunc::zero();
    let (borel, values, second, names) = match spec.borel {
        // F̄1, K^μ, Ē1, Ē12, Ē2
        Sl3BorelType::Type1 => (
            sl3_type1_borel(uq)?,
            vec![spec.f1.clone(), spec.k.clone(), spec.e1.clone(), zero.clone(), zero],
            uq.qcomm(&uq.f(0), &uq.f(1), &RatFunc::q_pow(1))?,
            ["F2", "F12", "K2"],
        ),
        // F̄1, F̄12, K^μ, Ē1, Ē12
        Sl3BorelType::Type2 => (
            sl3_type2_borel(uq)?,
            vec![spec.f1.clone(), zero.clone(), spec.k.clone(), spec.e1.clone(), zero],
            uq.e(1),
            ["F2", "E2", "K2"],
        ),
    };
    let parts = presentation_parts(&borel, &values);
    let coset = vec![Ok(uq.f(1)), Ok(second), Err(vec![0, 1])];
    let induction = Induction::new(uq, coset, parts)?;
    build_module(&induction, window_labels(&[false, false, true], spec.radius as i32), &names)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qfield::rf;

    fn a1() -> Uq {
        Uq::new("A1".parse().unwrap(), 10)
    }

    /// `F.K^n = q^{2n} f K^n − q^{2n} λ′ K^{n−1}`, `E.K^n = q^{−2n−2}(e K^{n+1} − λ K^n)`.
    #[test]
    fn sl2_matches_closed_form() {
        let uq = a1();
        let spec = InducedSpec::with_e(rf("2q"), 3);
        let m = induced_sl2(&uq, &spec).unwrap();
        for (col, label) in m.labels.iter().enumerate() {
            let n = label[0];
            let at = |shift: i32| m.index_of(&[n + shift]);
            if let Some(row) = at(1) {
                assert!(m.module.k(0).get(row, col).is_one());
            }
            if let Some(row) = at(0) {
                assert_eq!(m.module.f(0).get(row, col), &spec.f.mul_q_pow(2 * n));
                assert_eq!(m.module.e(0).get(row, col), &-&spec.lambda.mul_q_pow(-2 * n - 2));
            }
            if let Some(row) = at(-1) {
                assert_eq!(m.module.f(0).get(row, col), &-&spec.lambda_prime.mul_q_pow(2 * n));
            }
            if let Some(row) = at(1) {
                assert_eq!(m.module.e(0).get(row, col), &spec.e.mul_q_pow(-2 * n - 2));
            }
        }
        assert!(m.module.relation_failures(&uq).is_empty());
        assert!(m.module.boundary()[0] && m.module.boundary()[m.labels.len() - 1]);
    }

    #[test]
    fn borel_acts_by_character() {
        let uq = a1();
        let spec = InducedSpec::with_e(rf("q^3"), 2);
        let m = induced_sl2(&uq, &spec).unwrap();
        let borel = sl2_borel(&uq, &spec.lambda, &spec.lambda_prime).unwrap();
        let gens = borel.elements();
        let origin = m.index_of(&[0]).unwrap();
        for (g, value) in gens.iter().zip([&spec.f, &spec.e]) {
            let col = m.module.action(g).column(origin);
            for (r, x) in col.iter().enumerate() {
                let expected = if r == origin { value.clone() } else { RatFunc::zero() };
                assert_eq!(x, &expected);
            }
        }
    }

    #[test]
    fn constraint_violation_is_reported() {
        let uq = a1();
        let mut spec = InducedSpec::with_e(rf("q"), 1);
        spec.f = rf("2");
        assert!(matches!(induced_sl2(&uq, &spec), Err(RepError::ConstraintViolation(_))));
    }

    fn a2() -> Uq {
        Uq::new("A2".parse().unwrap(), 10)
    }

    fn sl3_spec(borel: Sl3BorelType) -> Sl3InducedSpec {
        let e1 = rf("q");
        let f1 = lambda_prime().try_div(&e1).unwrap();
        Sl3InducedSpec { borel, e1, f1, k: rf("q^2"), radius: 1 }
    }

    #[test]
    fn sl3_windows_satisfy_relations() {
        let uq = a2();
        for borel in [Sl3BorelType::Type1, Sl3BorelType::Type2] {
            let m = induced_sl3(&uq, &sl3_spec(borel)).unwrap();
            assert_eq!(m.labels.len(), 12);
            assert!(m.module.relation_failures(&uq).is_empty(), "{borel:?}");
        }
    }

    #[test]
    fn sl3_borel_acts_by_character() {
        let uq = a2();
        for borel in [Sl3BorelType::Type1, Sl3BorelType::Type2] {
            // `K1 = K^μ K2^-2` passes through label `k = -2`.
            let spec = Sl3InducedSpec { radius: 2, ..sl3_spec(borel) };
            let m = induced_sl3(&uq, &spec).unwrap();
            let presentation = match borel {
                Sl3BorelType::Type1 => sl3_type1_borel(&uq).unwrap(),
                Sl3BorelType::Type2 => sl3_type2_borel(&uq).unwrap(),
            };
            let origin = m.index_of(&[0, 0, 0]).unwrap();
            for g in &presentation.generators {
                let expected = if g.name.starts_with("F̄[α1]") {
                    spec.f1.clone()
                } else if g.name.starts_with("Ē[α1]") {
                    spec.e1.clone()
                } else if g.name == "K^[1, 2]" {
                    spec.k.clone()
                } else if g.name == "K^-[1, 2]" {
                    spec.k.inv().unwrap()
                } else {
                    RatFunc::zero()
                };
                let col = m.module.action(&g.element).column(origin);
                for (r, x) in col.iter().enumerate() {
                    let want = if r == origin { expected.clone() } else { RatFunc::zero() };
                    assert_eq!(x, &want, "{borel:?} {}", g.name);
                }
            }
        }
    }

    #[test]
    fn sl3_constraint_checked() {
        let uq = a2();
        let mut spec = sl3_spec(Sl3BorelType::Type2);
        spec.k = RatFunc::zero();
        assert!(matches!(induced_sl3(&uq, &spec), Err(RepError::ConstraintViolation(_))));
    }
}
