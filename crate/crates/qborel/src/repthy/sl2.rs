use super::{sl2_simple, InducedModule, InducedSpec, RepError};
use crate::coideal::sl2_borel;
use crate::linalg::Matrix;
use crate::qfield::{qint, BigRat, RatFunc};
use crate::uqalg::Uq;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(&self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    fn of(c: &BigRat) -> Option<Sign> {
        if c.is_one() {
            Some(Sign::Plus)
        } else if (-&RatFunc::from_rat(c.clone())).is_one() {
            Some(Sign::Minus)
        } else {
            None
        }
    }
}

impl std::fmt::Display for Sign {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

/// `(n, ε)` when `e = ε qⁿ λ` with `n ≥ 0`: then the induced module has a
/// proper submodule with quotient `L(n, ε)`. `None` means irreducible.
pub fn sl2_submodule_test(e: &RatFunc, lambda: &RatFunc) -> Option<(u32, Sign)> {
    let ratio = e.try_div(lambda).ok()?;
    let (c, n) = ratio.as_monomial()?;
    if n < 0 {
        return None;
    }
    Some((n as u32, Sign::of(&c)?))
}

/// Searches `n ≤ max_n` for a simple `L(n, ε)` with a nonzero `B`-eigenvector
/// of character `χ`, equivalently a nonzero map from the induced module.
pub fn sl2_submodule_oracle(uq: &Uq, spec: &InducedSpec, max_n: u32) -> Result<Option<(u32, Sign)>, RepError> {
    let borel = sl2_borel(uq, &spec.lambda, &spec.lambda_prime)?;
    let gens = borel.elements();
    for n in 0..=max_n {
        for sign in [Sign::Plus, Sign::Minus] {
            if !eigenvectors(&gens, spec, n, sign).is_empty() {
                return Ok(Some((n, sign)));
            }
        }
    }
    Ok(None)
}

fn eigenvectors(gens: &[crate::uqalg::AlgElt], spec: &InducedSpec, n: u32, sign: Sign) -> Vec<Vec<RatFunc>> {
    let module = sl2_simple(n, sign);
    let dim = module.dim();
    let id = Matrix::identity(dim);
    let f_bar = &module.action(&gens[0]) - &id.scale(&spec.f);
    let e_bar = &module.action(&gens[1]) - &id.scale(&spec.e);
    let rows = (0..dim).map(|r| f_bar.row(r).to_vec()).chain((0..dim).map(|r| e_bar.row(r).to_vec())).collect();
    Matrix::from_rows(rows).kernel()
}

/// The surjection from an induced window onto `L(n, ε)`.
#[derive(Clone, Debug)]
pub struct QuotientHom {
    pub n: u32,
    pub sign: Sign,
    /// Coordinates of the image of `1 ⊗ 1_χ` in the basis `m_k`.
    pub image_of_generator: Vec<RatFunc>,
    /// `(n + 1) × dim` matrix of the map on the window.
    pub matrix: Matrix,
    /// Generators whose intertwining identity fails on some interior column.
    pub failures: Vec<String>,
}

impl QuotientHom {
    pub fn is_surjective(&self) -> bool {
        self.matrix.rank() == self.n as usize + 1
    }

    pub fn intertwines(&self) -> bool {
        self.failures.is_empty()
    }

    /// Dimension of the kernel inside the window.
    pub fn kernel_dim(&self) -> usize {
        self.matrix.ncols() - self.matrix.rank()
    }
}

/// Builds the map `K^i ⊗ 1 ↦ K^i v` where `v` solves the two-term recurrences
/// for the `B`-eigenvector of character `χ` in `L(n, ε)`.
pub fn sl2_quotient_hom(module: &InducedModule, spec: &InducedSpec) -> Result<QuotientHom, RepError> {
    let (n, sign) = sl2_submodule_test(&spec.e, &spec.lambda)
        .ok_or_else(|| RepError::ConstraintViolation(format!("e/λ = {} is not ±qⁿ", spec.e.try_div(&spec.lambda).unwrap_or_default())))?;
    let eps = RatFunc::from_int(sign.value());
    let weight = |k: u32| eps.mul_q_pow(n as i32 - 2 * k as i32);
    let mut phi = vec![RatFunc::one()];
    for k in 0..n {
        let rho = weight(k);
        let num = (&(&spec.e * &rho) - &spec.lambda).mul_q_pow(-2);
        let den = &(&eps * &qint(k as i64 + 1, 1)) * &qint((n - k) as i64, 1);
        let next = &(&num * &phi[k as usize]) / &den;
        if next.is_zero() {
            return Err(RepError::RecurrenceInconsistent(k as usize + 1));
        }
        phi.push(next);
    }
    for k in 1..=n {
        let rho = weight(k);
        let back = &(&spec.f - &(&spec.lambda_prime / &rho)) * &phi[k as usize];
        if back != phi[k as usize - 1] {
            return Err(RepError::RecurrenceInconsistent(k as usize));
        }
    }
    let simple = sl2_simple(n, sign);
    let dim = module.labels.len();
    let mut matrix = Matrix::zeros(n as usize + 1, dim);
    for (col, label) in module.labels.iter().enumerate() {
        for k in 0..=n {
            let scale = weight(k).pow(label[0]).expect("nonzero weight");
            matrix.set(k as usize, col, &scale * &phi[k as usize]);
        }
    }
    let safe = module.module.interior(1);
    let mut failures = Vec::new();
    let pairs = [
        ("E", module.module.e(0), simple.e(0)),
        ("F", module.module.f(0), simple.f(0)),
        ("K", module.module.k(0), simple.k(0)),
        ("K^-1", module.module.k_inv(0), simple.k_inv(0)),
    ];
    for (name, on_induced, on_simple) in pairs {
        let lhs = &matrix * on_induced;
        let rhs = on_simple * &matrix;
        let bad = (0..dim).any(|c| safe[c] && (0..=n as usize).any(|r| lhs.get(r, c) != rhs.get(r, c)));
        if bad {
            failures.push(name.to_string());
        }
    }
    Ok(QuotientHom { n, sign, image_of_generator: phi, matrix, failures })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coideal::lambda_prime;
    use crate::qfield::rf;
    use crate::repthy::induced_sl2;

    fn a1() -> Uq {
        Uq::new("A1".parse().unwrap(), 10)
    }

    #[test]
    fn test_reads_sign_and_exponent() {
        let one = RatFunc::one();
        assert_eq!(sl2_submodule_test(&rf("q^3"), &one), Some((3, Sign::Plus)));
        assert_eq!(sl2_submodule_test(&rf("-1"), &one), Some((0, Sign::Minus)));
        assert_eq!(sl2_submodule_test(&rf("q^-1"), &one), None);
        assert_eq!(sl2_submodule_test(&rf("2q"), &one), None);
        assert_eq!(sl2_submodule_test(&rf("q+1"), &one), None);
    }

    #[test]
    fn test_agrees_with_hom_oracle() {
        let uq = a1();
        for e in ["1", "q", "q^2", "-q", "-q^3", "q^-1", "-q^-2", "2", "q+q^-1", "3q^2"] {
            let spec = InducedSpec::with_e(rf(e), 1);
            assert_eq!(sl2_submodule_oracle(&uq, &spec, 5).unwrap(), sl2_submodule_test(&spec.e, &spec.lambda), "e = {e}");
        }
    }

    #[test]
    fn generator_image_is_the_eigenvector() {
        let uq = a1();
        let borel = sl2_borel(&uq, &RatFunc::one(), &lambda_prime()).unwrap();
        for (e, sign) in [("q^2", Sign::Plus), ("-q", Sign::Minus)] {
            let spec = InducedSpec::with_e(rf(e), 2);
            let m = induced_sl2(&uq, &spec).unwrap();
            let hom = sl2_quotient_hom(&m, &spec).unwrap();
            let kernel = eigenvectors(&borel.elements(), &spec, hom.n, sign);
            assert_eq!(kernel.len(), 1);
            let v = &kernel[0];
            let ratio = &hom.image_of_generator[0] / &v[0];
            for (a, b) in hom.image_of_generator.iter().zip(v) {
                assert_eq!(a, &(&ratio * b));
            }
        }
    }

    #[test]
    fn quotient_map_intertwines() {
        let uq = a1();
        for (e, n) in [("1", 0), ("q", 1), ("-q^2", 2), ("q^3", 3)] {
            let spec = InducedSpec::with_e(rf(e), 5);
            let m = induced_sl2(&uq, &spec).unwrap();
            let hom = sl2_quotient_hom(&m, &spec).unwrap();
            assert_eq!(hom.n, n);
            assert!(hom.intertwines(), "{e}: {:?}", hom.failures);
            assert!(hom.is_surjective());
            assert_eq!(hom.kernel_dim(), m.labels.len() - n as usize - 1);
        }
    }

    #[test]
    fn irreducible_character_has_no_map() {
        let spec = InducedSpec::with_e(rf("q^-2"), 2);
        let m = induced_sl2(&a1(), &spec).unwrap();
        assert!(matches!(sl2_quotient_hom(&m, &spec), Err(RepError::ConstraintViolation(_))));
    }
}
