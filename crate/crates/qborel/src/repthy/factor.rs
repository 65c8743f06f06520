use super::{ModuleWindow, RepError};
use crate::coideal::CoidealPresentation;
use crate::linalg::Matrix;
use crate::qfield::RatFunc;
use crate::uqalg::AlgElt;

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub enum CompositionOutcome {
    /// Every composition factor is one-dimensional.
    AllOneDimensional,
    /// No common eigenvector on the quotient left after `stage` factors.
    HigherDimensional { stage: usize, remaining_dim: usize },
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct CompositionReport {
    pub generators: Vec<String>,
    /// Generator eigenvalues on each one-dimensional factor, bottom first.
    #[serde(serialize_with = "ser_factors")]
    pub factors: Vec<Vec<RatFunc>>,
    pub outcome: CompositionOutcome,
}

fn ser_factors<S: serde::Serializer>(f: &[Vec<RatFunc>], s: S) -> Result<S::Ok, S::Error> {
    let strings: Vec<Vec<String>> = f.iter().map(|row| row.iter().map(ToString::to_string).collect()).collect();
    serde::Serialize::serialize(&strings, s)
}

impl CompositionReport {
    pub fn all_one_dimensional(&self) -> bool {
        self.outcome == CompositionOutcome::AllOneDimensional
    }
}

/// Possible eigenvalues of `x` on a module with diagonal Cartan action: the
/// pure Cartan part of `x` evaluated on each basis vector. Checked by
/// verifying that the product of `(X − c)^{mult}` vanishes.
fn eigenvalue_candidates(module: &ModuleWindow, x: &AlgElt, matrix: &Matrix) -> Option<Vec<RatFunc>> {
    let dim = module.dim();
    let mut diagonal = vec![RatFunc::zero(); dim];
    for (m, c) in x.terms() {
        if !m.f.is_empty() || !m.e.is_empty() {
            continue;
        }
        let k = module.k_power(&m.k);
        for (b, slot) in diagonal.iter_mut().enumerate() {
            *slot = &*slot + &(c * k.get(b, b));
        }
    }
    let mut distinct: Vec<(RatFunc, u32)> = Vec::new();
    for v in diagonal {
        match distinct.iter_mut().find(|(d, _)| *d == v) {
            Some(slot) => slot.1 += 1,
            None => distinct.push((v, 1)),
        }
    }
    let id = Matrix::identity(dim);
    let mut prod = Matrix::identity(dim);
    for (v, mult) in &distinct {
        let shifted = matrix - &id.scale(v);
        prod = &prod * &shifted.pow(*mult);
    }
    prod.is_zero().then(|| distinct.into_iter().map(|(v, _)| v).collect())
}

/// Columns of `basis` spanning `{v ∈ span(basis) : (m − c) v = 0}`.
fn restrict_kernel(basis: &[Vec<RatFunc>], m: &Matrix, c: &RatFunc) -> Vec<Vec<RatFunc>> {
    let n = m.nrows();
    let shifted = m - &Matrix::identity(n).scale(c);
    let images: Vec<Vec<RatFunc>> = basis.iter().map(|v| shifted.apply(v)).collect();
    let system = Matrix::from_columns(&images, n);
    system
        .kernel()
        .into_iter()
        .map(|coeffs| {
            let mut v = vec![RatFunc::zero(); n];
            for (b, a) in basis.iter().zip(&coeffs) {
                if a.is_zero() {
                    continue;
                }
                for (slot, x) in v.iter_mut().zip(b) {
                    *slot = &*slot + &(a * x);
                }
            }
            v
        })
        .collect()
}

fn unit_vectors(n: usize) -> Vec<Vec<RatFunc>> {
    (0..n)
        .map(|i| {
            let mut v = vec![RatFunc::zero(); n];
            v[i] = RatFunc::one();
            v
        })
        .collect()
}

/// Common eigenvectors over the candidate eigenvalue tuples; stops at the first if `first_only`.
fn common_eigenvectors(
    mats: &[Matrix],
    candidates: &[Vec<RatFunc>],
    first_only: bool,
) -> Vec<(Vec<RatFunc>, Vec<RatFunc>)> {
    fn search(
        mats: &[Matrix],
        candidates: &[Vec<RatFunc>],
        space: Vec<Vec<RatFunc>>,
        chosen: &mut Vec<RatFunc>,
        out: &mut Vec<(Vec<RatFunc>, Vec<RatFunc>)>,
        first_only: bool,
    ) {
        let level = chosen.len();
        if level == mats.len() {
            out.push((space[0].clone(), chosen.clone()));
            return;
        }
        for c in &candidates[level] {
            let sub = restrict_kernel(&space, &mats[level], c);
            if sub.is_empty() {
                continue;
            }
            chosen.push(c.clone());
            search(mats, candidates, sub, chosen, out, first_only);
            chosen.pop();
            if first_only && !out.is_empty() {
                return;
            }
        }
    }
    let mut out = Vec::new();
    if let Some(m) = mats.first() {
        search(mats, candidates, unit_vectors(m.nrows()), &mut Vec::new(), &mut out, first_only);
    }
    out
}

/// Matrices induced on the quotient by the line spanned by `v`.
fn quotient_by(mats: &[Matrix], v: &[RatFunc]) -> Vec<Matrix> {
    let n = v.len();
    let p = v.iter().position(|x| !x.is_zero()).expect("nonzero vector");
    let keep: Vec<usize> = (0..n).filter(|&i| i != p).collect();
    let vp_inv = v[p].inv().expect("nonzero pivot");
    mats.iter()
        .map(|m| {
            let mut out = Matrix::zeros(n - 1, n - 1);
            for (cj, &j) in keep.iter().enumerate() {
                let col = m.column(j);
                let factor = &col[p] * &vp_inv;
                for (ci, &i) in keep.iter().enumerate() {
                    out.set(ci, cj, &col[i] - &(&factor * &v[i]));
                }
            }
            out
        })
        .collect()
}

/// Peels one-dimensional submodules off the restriction of `module` to `c`.
pub fn restrict_and_factor(module: &ModuleWindow, c: &CoidealPresentation) -> Result<CompositionReport, RepError> {
    let names: Vec<String> = c.generators.iter().map(|g| g.name.clone()).collect();
    factor_restriction(module, &names, &c.elements())
}

/// As [`restrict_and_factor`] for the subalgebra generated by `elements`.
pub fn factor_restriction(module: &ModuleWindow, names: &[String], elements: &[AlgElt]) -> Result<CompositionReport, RepError> {
    if !module.is_full() {
        return Err(RepError::Truncated);
    }
    let mut mats: Vec<Matrix> = elements.iter().map(|x| module.action(x)).collect();
    let mut candidates = Vec::new();
    for ((x, m), name) in elements.iter().zip(&mats).zip(names) {
        candidates.push(eigenvalue_candidates(module, x, m).ok_or_else(|| RepError::Eigenvalues(name.clone()))?);
    }
    let mut factors = Vec::new();
    let mut outcome = CompositionOutcome::AllOneDimensional;
    while mats.first().is_some_and(|m| m.nrows() > 0) {
        match common_eigenvectors(&mats, &candidates, true).pop() {
            Some((v, values)) => {
                factors.push(values);
                mats = quotient_by(&mats, &v);
            }
            None => {
                outcome = CompositionOutcome::HigherDimensional { stage: factors.len(), remaining_dim: mats[0].nrows() };
                break;
            }
        }
    }
    Ok(CompositionReport { generators: names.to_vec(), factors, outcome })
}

/// Characters of `c` on one-dimensional submodules of the restriction, one
/// list of generator values per character.
pub fn quotient_character_search(
    module: &ModuleWindow,
    c: &CoidealPresentation,
) -> Result<Vec<Vec<(String, RatFunc)>>, RepError> {
    let names: Vec<String> = c.generators.iter().map(|g| g.name.clone()).collect();
    let elements = c.elements();
    let mats: Vec<Matrix> = elements.iter().map(|x| module.action(x)).collect();
    let mut candidates = Vec::new();
    for ((x, m), name) in elements.iter().zip(&mats).zip(&names) {
        candidates.push(eigenvalue_candidates(module, x, m).ok_or_else(|| RepError::Eigenvalues(name.clone()))?);
    }
    let found = common_eigenvectors(&mats, &candidates, false);
    if found.is_empty() {
        return Err(RepError::NoCharacter);
    }
    Ok(found.into_iter().map(|(_, values)| names.iter().cloned().zip(values).collect()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coideal::{lambda_prime, sl2_borel};
    use crate::qfield::rf;
    use crate::repthy::{sl2_simple, Sign};
    use crate::uqalg::Uq;

    fn a1() -> Uq {
        Uq::new("A1".parse().unwrap(), 8)
    }

    #[test]
    fn two_dim_restriction_to_weyl_borel() {
        let uq = a1();
        let borel = sl2_borel(&uq, &RatFunc::one(), &lambda_prime()).unwrap();
        let module = sl2_simple(1, Sign::Plus);
        let report = restrict_and_factor(&module, &borel).unwrap();
        assert!(report.all_one_dimensional());
        // Generators are ordered F̄, Ē.
        let lp = lambda_prime();
        assert_eq!(report.factors[0], vec![lp.mul_q_pow(-1), rf("q")]);
        assert_eq!(report.factors[1], vec![lp.mul_q_pow(1), rf("q^-1")]);
    }

    #[test]
    fn standard_borel_gives_weight_chain() {
        let uq = a1();
        let names = vec!["F".to_string(), "K".to_string(), "K^-1".to_string()];
        let gens = vec![uq.f(0), uq.k(&[1]), uq.k(&[-1])];
        for n in 0..4 {
            let report = factor_restriction(&sl2_simple(n, Sign::Plus), &names, &gens).unwrap();
            assert!(report.all_one_dimensional());
            assert_eq!(report.factors.len(), n as usize + 1);
        }
    }

    #[test]
    fn whole_algebra_has_no_line() {
        let uq = a1();
        let names = vec!["E".to_string(), "F".to_string()];
        let report = factor_restriction(&sl2_simple(1, Sign::Plus), &names, &[uq.e(0), uq.f(0)]).unwrap();
        assert_eq!(report.outcome, CompositionOutcome::HigherDimensional { stage: 0, remaining_dim: 2 });
    }

    #[test]
    fn each_simple_has_one_weyl_character() {
        let uq = a1();
        let borel = sl2_borel(&uq, &RatFunc::one(), &lambda_prime()).unwrap();
        for n in 0..4 {
            for sign in [Sign::Plus, Sign::Minus] {
                let found = quotient_character_search(&sl2_simple(n, sign), &borel).unwrap();
                assert_eq!(found.len(), 1);
                let e = &found[0][1].1;
                assert_eq!(e, &RatFunc::from_int(sign.value()).mul_q_pow(n as i32));
            }
        }
    }
}
