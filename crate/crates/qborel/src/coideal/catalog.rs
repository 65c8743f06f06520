use super::{build_presentation, lambda_prime, Character, CoidealError, CoidealPresentation, TriangularData};
use crate::qfield::RatFunc;
use crate::uqalg::{AlgElt, Uq};

/// `B_{λ,λ′}` in `U_q(sl2)`: generated by `EK⁻¹ + λK⁻¹` and `F + λ′K⁻¹`.
pub fn sl2_borel(uq: &Uq, lambda: &RatFunc, lambda_prime: &RatFunc) -> Result<CoidealPresentation, CoidealError> {
    let datum = uq.datum();
    let s1 = datum.simple_reflection(0);
    build_presentation(
        uq,
        TriangularData {
            w_minus: s1.clone(),
            phi_minus: Character::new(datum, &s1, &[(0, lambda_prime.clone())])?,
            lattice: Vec::new(),
            w_plus: s1.clone(),
            phi_plus: Character::new(datum, &s1, &[(0, lambda.clone())])?,
        },
    )
}

/// `[Ē, F̄]_{q²}` for `λ = 1` and the matching `λ′`, together with the expected `q²/(q − q⁻¹)`.
pub fn quantum_weyl_identity(uq: &Uq) -> Result<(AlgElt, AlgElt), CoidealError> {
    let borel = sl2_borel(uq, &RatFunc::one(), &lambda_prime())?;
    let gens = borel.elements();
    let (f_bar, e_bar) = (&gens[0], &gens[1]);
    let lhs = uq.qcomm(e_bar, f_bar, &RatFunc::q_pow(2))?;
    let rhs = uq.scalar(RatFunc::q_pow(2).try_div(&(&RatFunc::q_pow(1) - &RatFunc::q_pow(-1))).expect("nonzero"));
    Ok((lhs, rhs))
}

fn sl3_borel(uq: &Uq, w_minus: &[usize], w_plus: &[usize]) -> Result<CoidealPresentation, CoidealError> {
    let datum = uq.datum();
    let w_minus = datum.from_reduced_word(w_minus)?;
    let w_plus = datum.from_reduced_word(w_plus)?;
    build_presentation(
        uq,
        TriangularData {
            phi_minus: Character::new(datum, &w_minus, &[(0, lambda_prime())])?,
            phi_plus: Character::new(datum, &w_plus, &[(0, RatFunc::one())])?,
            w_minus,
            lattice: vec![vec![1, 2]],
            w_plus,
        },
    )
}

/// `U⁻[s1]_φ k[(K1K2²)^{±1}] S(U⁺[w₀])_φ`.
pub fn sl3_type1_borel(uq: &Uq) -> Result<CoidealPresentation, CoidealError> {
    sl3_borel(uq, &[0], &[0, 1, 0])
}

/// `U⁻[s1s2]_φ k[(K1K2²)^{±1}] S(U⁺[s1s2])_φ`.
pub fn sl3_type2_borel(uq: &Uq) -> Result<CoidealPresentation, CoidealError> {
    sl3_borel(uq, &[0, 1], &[0, 1])
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum Sl3Relation {
    KCommutesWithSimple,
    KCommutesWithOuter,
    /// `K` q-commutes with the outer generators with the weight pairing as exponent.
    KTwistsOuter,
    RaisingCommutes,
    LoweringCommutes,
    WeylPair,
    OuterPair,
    /// The outer commutator with the right side rescaled by `−q⁻¹`.
    OuterPairRescaled,
    ConstantsInverse,
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct Sl3RelationCheck {
    pub relation: Sl3Relation,
    pub label: String,
    /// False for the corrected variants added alongside a stated relation.
    pub stated: bool,
    pub holds: bool,
}

impl Sl3RelationCheck {
    /// Commutation relations of the type-2 Borel generators, checked exactly.
    pub fn all(uq: &Uq) -> Result<Vec<Sl3RelationCheck>, CoidealError> {
        let c = sl3_type2_borel(uq)?;
        let gens = c.elements();
        // Order: F̄1, F̄12, K, K⁻¹, Ē1, Ē12.
        let (f1, f12, k, e1, e12) = (&gens[0], &gens[1], &gens[2], &gens[4], &gens[5]);
        let q = |n: i32| RatFunc::q_pow(n);
        let zero = AlgElt::zero();
        let vanishes = |x: &AlgElt, y: &AlgElt, c: RatFunc| uq.qcomm(x, y, &c).map(|r| r == zero);
        let mut out = Vec::new();
        let mut push = |relation, label: &str, stated: bool, holds: bool| {
            out.push(Sl3RelationCheck { relation, label: label.to_string(), stated, holds });
        };

        let simple = vanishes(k, e1, q(0))? && vanishes(k, f1, q(0))?;
        push(Sl3Relation::KCommutesWithSimple, "[K,Ē1]_1 = [K,F̄1]_1 = 0", true, simple);
        let outer = vanishes(k, e12, q(0))? && vanishes(k, f12, q(0))?;
        push(Sl3Relation::KCommutesWithOuter, "[K,Ē12]_1 = [K,F̄12]_1 = 0", true, outer);
        let twisted = vanishes(k, e12, q(3))? && vanishes(k, f12, q(-3))?;
        push(Sl3Relation::KTwistsOuter, "[K,Ē12]_{q^3} = [K,F̄12]_{q^-3} = 0", false, twisted);
        let raising = vanishes(e1, e12, q(1))? && vanishes(e1, f12, q(1))?;
        push(Sl3Relation::RaisingCommutes, "[Ē1,Ē12]_q = [Ē1,F̄12]_q = 0", true, raising);
        let lowering = vanishes(f1, e12, q(-1))? && vanishes(f1, f12, q(-1))?;
        push(Sl3Relation::LoweringCommutes, "[F̄1,Ē12]_{q^-1} = [F̄1,F̄12]_{q^-1} = 0", true, lowering);
        let qdiff = &q(1) - &q(-1);
        let weyl = uq.qcomm(e1, f1, &q(2))? == uq.scalar(q(2).try_div(&qdiff).expect("nonzero"));
        push(Sl3Relation::WeylPair, "[Ē1,F̄1]_{q^2} = q^2/(q-q^-1)", true, weyl);
        let outer_lhs = uq.qcomm(e12, f12, &q(2))?;
        let expected = &uq.mul(f1, e1)?.scale(&(&q(4) - &q(2))) + &uq.scalar(q(4).try_div(&qdiff).expect("nonzero"));
        push(
            Sl3Relation::OuterPair,
            "[Ē12,F̄12]_{q^2} = F̄1Ē1(q^4-q^2) + q^4/(q-q^-1)",
            true,
            outer_lhs == expected,
        );
        push(
            Sl3Relation::OuterPairRescaled,
            "[Ē12,F̄12]_{q^2} = -q^-1(F̄1Ē1(q^4-q^2) + q^4/(q-q^-1))",
            false,
            outer_lhs == expected.scale(&-q(-1)),
        );
        let (c1, c2) = sl3_constants(&RatFunc::one(), &lambda_prime());
        push(Sl3Relation::ConstantsInverse, "c1 c2 = 1", true, (&c1 * &c2).is_one());
        Ok(out)
    }
}

/// `c₁ = (1 − q⁻²)λ` and `c₂ = (q⁻¹ − q)λ′`.
pub fn sl3_constants(lambda: &RatFunc, lambda_prime: &RatFunc) -> (RatFunc, RatFunc) {
    let c1 = &(&RatFunc::one() - &RatFunc::q_pow(-2)) * lambda;
    let c2 = &(&RatFunc::q_pow(-1) - &RatFunc::q_pow(1)) * lambda_prime;
    (c1, c2)
}
