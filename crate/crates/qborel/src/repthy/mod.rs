//! Finite-dimensional simple modules, restrictions to coideal subalgebras,
//! and modules induced from one-dimensional characters of Borel subalgebras.

mod factor;
mod induced;
mod sl2;
mod simple;
mod witness;

pub use factor::{factor_restriction, quotient_character_search, restrict_and_factor, CompositionOutcome, CompositionReport};
pub use induced::{induced_sl2, induced_sl3, Induction, InducedModule, InducedSpec, Sl3BorelType, Sl3InducedSpec};
pub use sl2::{sl2_quotient_hom, sl2_submodule_oracle, sl2_submodule_test, QuotientHom, Sign};
pub use simple::{simple_module, sl2_simple, weyl_dimension, DEFAULT_DIM_CAP};
pub use witness::{shared_roots, nonbasic_witness, Witness, WitnessOutcome, WitnessSource};

use crate::coideal::CoidealError;
use crate::linalg::Matrix;
use crate::qfield::{qbinom, RatFunc};
use crate::rootsys::LatVec;
use crate::uqalg::{AlgElt, Uq, UqError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RepError {
    #[error(transparent)]
    Algebra(#[from] UqError),
    #[error(transparent)]
    Coideal(#[from] CoidealError),
    #[error("weight {0:?} is not dominant integral")]
    NotDominant(LatVec),
    #[error("module dimension {dim} exceeds the cap {cap}")]
    CapExceeded { dim: u64, cap: u64 },
    #[error("constraint violated: {0}")]
    ConstraintViolation(String),
    #[error("eigenvalues of {0} could not be located")]
    Eigenvalues(String),
    #[error("restriction has no one-dimensional submodule")]
    NoCharacter,
    #[error("induction basis does not span: {0}")]
    NotSpanned(String),
    #[error("recurrence for the quotient map is inconsistent at k = {0}")]
    RecurrenceInconsistent(usize),
    #[error("module is truncated; the operation needs a full module")]
    Truncated,
    #[error("{0}")]
    Unsupported(String),
}

/// A representation given by matrices of the Chevalley generators.
///
/// Truncated windows of infinite-dimensional modules flag the basis vectors
/// whose images leave the window; identities are only meaningful away from them.
#[derive(Clone, Debug)]
pub struct ModuleWindow {
    labels: Vec<String>,
    raising: Vec<Matrix>,
    lowering: Vec<Matrix>,
    cartan: Vec<Matrix>,
    cartan_inv: Vec<Matrix>,
    boundary: Option<Vec<bool>>,
}

impl ModuleWindow {
    pub(crate) fn new(
        labels: Vec<String>,
        raising: Vec<Matrix>,
        lowering: Vec<Matrix>,
        cartan: Vec<Matrix>,
        cartan_inv: Vec<Matrix>,
        boundary: Option<Vec<bool>>,
    ) -> Self {
        ModuleWindow { labels, raising, lowering, cartan, cartan_inv, boundary }
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn rank(&self) -> usize {
        self.raising.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn is_full(&self) -> bool {
        self.boundary.is_none()
    }

    /// Per basis vector: does some generator push it out of the window.
    pub fn boundary(&self) -> Vec<bool> {
        self.boundary.clone().unwrap_or_else(|| vec![false; self.dim()])
    }

    pub fn e(&self, i: usize) -> &Matrix {
        &self.raising[i]
    }

    pub fn f(&self, i: usize) -> &Matrix {
        &self.lowering[i]
    }

    pub fn k(&self, i: usize) -> &Matrix {
        &self.cartan[i]
    }

    pub fn k_inv(&self, i: usize) -> &Matrix {
        &self.cartan_inv[i]
    }

    fn generators(&self) -> impl Iterator<Item = &Matrix> {
        self.raising.iter().chain(&self.lowering).chain(&self.cartan).chain(&self.cartan_inv)
    }

    /// Basis vectors from which every word of length `depth` stays inside the window.
    pub fn interior(&self, depth: usize) -> Vec<bool> {
        let mut safe: Vec<bool> = self.boundary().iter().map(|b| !b).collect();
        for _ in 1..depth {
            let prev = safe.clone();
            for (c, slot) in safe.iter_mut().enumerate() {
                if !*slot {
                    continue;
                }
                *slot = self.generators().all(|m| (0..m.nrows()).all(|r| m.get(r, c).is_zero() || prev[r]));
            }
        }
        safe
    }

    /// `K^μ` as a product of the simple Cartan matrices.
    pub fn k_power(&self, mu: &[i32]) -> Matrix {
        let mut acc = Matrix::identity(self.dim());
        for (i, &p) in mu.iter().enumerate() {
            let m = if p >= 0 { &self.cartan[i] } else { &self.cartan_inv[i] };
            for _ in 0..p.unsigned_abs() {
                acc = &acc * m;
            }
        }
        acc
    }

    fn word_matrix(&self, word: &[u8], raising: bool) -> Matrix {
        let mats = if raising { &self.raising } else { &self.lowering };
        word.iter().fold(Matrix::identity(self.dim()), |acc, &l| &acc * &mats[l as usize])
    }

    /// Action of an algebra element.
    pub fn action(&self, x: &AlgElt) -> Matrix {
        let mut out = Matrix::zeros(self.dim(), self.dim());
        for (m, c) in x.terms() {
            let prod = &(&self.word_matrix(&m.f, false) * &self.k_power(&m.k)) * &self.word_matrix(&m.e, true);
            out = &out + &prod.scale(c);
        }
        out
    }

    /// Checks the defining relations of `U_q(g)`; returns the failing ones.
    pub fn relation_failures(&self, uq: &Uq) -> Vec<String> {
        let datum = uq.datum();
        let n = self.rank();
        let dim = self.dim();
        let mut failures = Vec::new();
        let mut check = |label: String, lhs: Matrix, rhs: Matrix, depth: usize| {
            let safe = self.interior(depth);
            let bad = (0..dim).any(|c| safe[c] && (0..dim).any(|r| lhs.get(r, c) != rhs.get(r, c)));
            if bad {
                failures.push(label);
            }
        };
        let id = Matrix::identity(dim);
        for i in 0..n {
            check(format!("K{0} K{0}^-1 = 1", i + 1), &self.cartan[i] * &self.cartan_inv[i], id.clone(), 2);
            for j in 0..n {
                let a = datum.form_simple(i, j);
                let (ki, ej, fj) = (&self.cartan[i], &self.raising[j], &self.lowering[j]);
                check(format!("K{}K{} = K{}K{}", i + 1, j + 1, j + 1, i + 1), ki * &self.cartan[j], &self.cartan[j] * ki, 2);
                check(format!("K{} E{}", i + 1, j + 1), ki * ej, (ej * ki).scale(&RatFunc::q_pow(a)), 2);
                check(format!("K{} F{}", i + 1, j + 1), ki * fj, (fj * ki).scale(&RatFunc::q_pow(-a)), 2);
                let comm = &(ej * &self.lowering[i]) - &(&self.lowering[i] * ej);
                let expected = if i == j {
                    let qi = uq.q_i(i);
                    let denom = &qi - &qi.inv().expect("nonzero");
                    (&self.cartan[i] - &self.cartan_inv[i]).scale(&denom.inv().expect("q generic"))
                } else {
                    Matrix::zeros(dim, dim)
                };
                check(format!("[E{}, F{}]", j + 1, i + 1), comm, expected, 2);
                if i != j {
                    let order = (1 - datum.cartan(i, j)) as u32;
                    for (name, mats) in [("E", &self.raising), ("F", &self.lowering)] {
                        let mut serre = Matrix::zeros(dim, dim);
                        for r in 0..=order {
                            let coeff = qbinom(order, r, datum.sym(i) as u32);
                            let coeff = if r % 2 == 1 { -&coeff } else { coeff };
                            let term = &(&mats[i].pow(order - r) * &mats[j]) * &mats[i].pow(r);
                            serre = &serre + &term.scale(&coeff);
                        }
                        check(format!("Serre {name}{} {name}{}", i + 1, j + 1), serre, Matrix::zeros(dim, dim), order as usize + 1);
                    }
                }
            }
        }
        failures
    }
}

/// Matrices of the given elements.
pub fn restricted_matrices(module: &ModuleWindow, elements: &[AlgElt]) -> Vec<Matrix> {
    elements.iter().map(|x| module.action(x)).collect()
}
