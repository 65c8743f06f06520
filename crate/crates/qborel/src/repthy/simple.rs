use std::collections::BTreeMap;

use num_rational::Ratio;

use super::{ModuleWindow, RepError, Sign};
use crate::linalg::{Echelon, Matrix, SparseRow};
use crate::qfield::{qint, RatFunc};
use crate::rootsys::{vadd, vsub, LatVec, RootDatum};
use crate::uqalg::{AlgElt, Side, Uq, Word};

/// Largest simple module built by default.
pub const DEFAULT_DIM_CAP: u64 = 64;

/// `L(n, ±)` for `U_q(sl2)` on the basis `m_0, …, m_n`.
pub fn sl2_simple(n: u32, sign: Sign) -> ModuleWindow {
    let dim = n as usize + 1;
    let eps = RatFunc::from_int(sign.value());
    let mut k = Matrix::zeros(dim, dim);
    let mut k_inv = Matrix::zeros(dim, dim);
    let mut e = Matrix::zeros(dim, dim);
    let mut f = Matrix::zeros(dim, dim);
    for i in 0..dim {
        let weight = n as i32 - 2 * i as i32;
        k.set(i, i, eps.mul_q_pow(weight));
        k_inv.set(i, i, eps.mul_q_pow(-weight));
        if i + 1 < dim {
            f.set(i + 1, i, RatFunc::one());
        }
        if i > 0 {
            let c = &qint(i as i64, 1) * &qint(n as i64 + 1 - i as i64, 1);
            e.set(i - 1, i, &eps * &c);
        }
    }
    let labels = (0..dim).map(|i| format!("m{i}")).collect();
    ModuleWindow::new(labels, vec![e], vec![f], vec![k], vec![k_inv], None)
}

/// `(λ, β)` for `λ` in fundamental-weight coordinates and `β` in the root lattice.
fn pair_weight(datum: &RootDatum, weight: &[i32], beta: &[i32]) -> i32 {
    (0..datum.rank()).map(|j| weight[j] * datum.sym(j) * beta[j]).sum()
}

/// Weyl's dimension formula.
pub fn weyl_dimension(datum: &RootDatum, weight: &[i32]) -> u64 {
    let rho = vec![1; datum.rank()];
    let shifted = vadd(weight, &rho);
    let mut acc = Ratio::from_integer(1u64);
    for beta in datum.positive_roots() {
        let num = pair_weight(datum, &shifted, beta) as u64;
        let den = pair_weight(datum, &rho, beta) as u64;
        acc *= Ratio::new(num, den);
    }
    acc.to_integer()
}

struct WeightSpace {
    depth: LatVec,
    words: Vec<Word>,
    relations: Echelon<u32>,
    /// Coordinates that survive in the quotient, in increasing order.
    free: Vec<u32>,
}

impl WeightSpace {
    fn position(&self, coord: u32) -> Option<usize> {
        self.free.binary_search(&coord).ok()
    }

    /// Reduces `U⁻` coordinates modulo the relations.
    fn project(&self, coords: &SparseRow<u32>) -> Vec<(usize, RatFunc)> {
        let (rest, _) = self.relations.reduce(coords);
        rest.into_iter().map(|(c, v)| (self.position(c).expect("reduced onto free coordinates"), v)).collect()
    }
}

/// `L(λ)` as the Verma module modulo the submodule generated by the
/// vectors `F_i^{⟨λ, α_i^∨⟩ + 1} v_λ`; `λ` in fundamental-weight coordinates.
pub fn simple_module(uq: &Uq, weight: &[i32], cap: u64) -> Result<ModuleWindow, RepError> {
    let datum = uq.datum();
    let rank = datum.rank();
    if weight.len() != rank || weight.iter().any(|&x| x < 0) {
        return Err(RepError::NotDominant(weight.to_vec()));
    }
    let expected = weyl_dimension(datum, weight);
    if expected > cap {
        return Err(RepError::CapExceeded { dim: expected, cap });
    }

    let coords = |word: &[u8]| -> Result<SparseRow<u32>, RepError> {
        let (_, v) = uq.coords_of(Side::F, &uq.word(Side::F, word)?)?;
        Ok(v.into_iter().collect())
    };

    // Weight spaces by increasing depth, stopping where the quotient vanishes.
    let mut spaces: BTreeMap<LatVec, WeightSpace> = BTreeMap::new();
    let mut frontier = vec![datum.zero()];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for depth in frontier {
            if spaces.contains_key(&depth) {
                continue;
            }
            let words: Vec<Word> = if depth.iter().all(|&x| x == 0) {
                vec![Word::new()]
            } else {
                uq.degree_basis(&depth)?.representatives().to_vec()
            };
            let mut relations = Echelon::new();
            for i in 0..rank {
                let power = weight[i] + 1;
                if depth[i] < power {
                    continue;
                }
                let mut lower = depth.clone();
                lower[i] -= power;
                let lower_words: Vec<Word> = if lower.iter().all(|&x| x == 0) {
                    vec![Word::new()]
                } else {
                    uq.degree_basis(&lower)?.representatives().to_vec()
                };
                for u in lower_words {
                    let mut w = u.clone();
                    w.extend(std::iter::repeat_n(i as u8, power as usize));
                    let n = relations.dim();
                    relations.insert(&coords(&w)?, n);
                }
            }
            let pivots: Vec<u32> = relations.rows().map(|(k, _)| *k).collect();
            let free: Vec<u32> = (0..words.len() as u32).filter(|c| !pivots.contains(c)).collect();
            if free.is_empty() {
                continue;
            }
            for i in 0..rank {
                let mut d = depth.clone();
                d[i] += 1;
                next.push(d);
            }
            spaces.insert(depth.clone(), WeightSpace { depth, words, relations, free });
        }
        next.sort();
        next.dedup();
        frontier = next;
        let total: usize = spaces.values().map(|s| s.free.len()).sum();
        if total as u64 > expected {
            return Err(RepError::CapExceeded { dim: total as u64, cap: expected });
        }
    }

    // Global basis: (depth, free coordinate) ordered by height, then depth.
    let mut order: Vec<&WeightSpace> = spaces.values().collect();
    order.sort_by_key(|s| (s.depth.iter().sum::<i32>(), s.depth.clone()));
    let mut offset: BTreeMap<LatVec, usize> = BTreeMap::new();
    let mut labels = Vec::new();
    for s in &order {
        offset.insert(s.depth.clone(), labels.len());
        for &c in &s.free {
            let word: String = s.words[c as usize].iter().map(|l| format!("F{}", l + 1)).collect();
            labels.push(if word.is_empty() { "v".to_string() } else { format!("{word}v") });
        }
    }
    let dim = labels.len();
    if dim as u64 != expected {
        return Err(RepError::Unsupported(format!("quotient has dimension {dim}, Weyl formula gives {expected}")));
    }

    let mut raising = vec![Matrix::zeros(dim, dim); rank];
    let mut lowering = vec![Matrix::zeros(dim, dim); rank];
    let mut cartan = vec![Matrix::zeros(dim, dim); rank];
    let mut cartan_inv = vec![Matrix::zeros(dim, dim); rank];
    for s in &order {
        let base = offset[&s.depth];
        for (pos, &c) in s.free.iter().enumerate() {
            let col = base + pos;
            let word = &s.words[c as usize];
            for i in 0..rank {
                let exponent = pair_weight(datum, weight, &datum.simple_root(i)) - datum.form_with_simple(i, &s.depth);
                cartan[i].set(col, col, RatFunc::q_pow(exponent));
                cartan_inv[i].set(col, col, RatFunc::q_pow(-exponent));

                let mut up = s.depth.clone();
                up[i] += 1;
                if let Some(target) = spaces.get(&up) {
                    let mut w = vec![i as u8];
                    w.extend_from_slice(word);
                    for (p, v) in target.project(&coords(&w)?) {
                        lowering[i].set(offset[&up] + p, col, v);
                    }
                }

                if s.depth[i] == 0 {
                    continue;
                }
                let down = vsub(&s.depth, &datum.simple_root(i));
                let Some(target) = spaces.get(&down) else { continue };
                let product = uq.mul(&uq.e(i), &uq.word(Side::F, word)?)?;
                // Terms ending in E kill v_λ; K^μ acts on it by q^{(μ,λ)}.
                let mut lowered = AlgElt::zero();
                for (m, coeff) in product.terms() {
                    if !m.e.is_empty() {
                        continue;
                    }
                    let scalar = coeff.mul_q_pow(pair_weight(datum, weight, &m.k));
                    lowered.add_term(crate::uqalg::Mono { f: m.f.clone(), k: datum.zero(), e: Word::new() }, scalar);
                }
                if lowered.is_zero() {
                    continue;
                }
                let (_, v) = uq.coords_of(Side::F, &lowered)?;
                for (p, val) in target.project(&v.into_iter().collect()) {
                    raising[i].set(offset[&down] + p, col, val);
                }
            }
        }
    }
    Ok(ModuleWindow::new(labels, raising, lowering, cartan, cartan_inv, None))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qfield::rf;
    use crate::uqalg::DEFAULT_BOUND;

    fn uq(name: &str) -> Uq {
        Uq::new(name.parse().unwrap(), DEFAULT_BOUND)
    }

    #[test]
    fn sl2_small_cases() {
        let trivial = sl2_simple(0, Sign::Plus);
        assert!(trivial.e(0).is_zero() && trivial.f(0).is_zero());
        assert!(trivial.k(0).get(0, 0).is_one());
        let two = sl2_simple(1, Sign::Plus);
        assert_eq!(two.k(0).get(0, 0), &rf("q"));
        assert_eq!(two.k(0).get(1, 1), &rf("q^-1"));
        assert!(two.e(0).get(0, 1).is_one());
        let three = sl2_simple(2, Sign::Minus);
        assert_eq!(three.k(0).get(1, 1), &RatFunc::from_int(-1));
    }

    #[test]
    fn sl2_relations_both_signs() {
        let a1 = uq("A1");
        for n in 0..5 {
            for sign in [Sign::Plus, Sign::Minus] {
                assert!(sl2_simple(n, sign).relation_failures(&a1).is_empty(), "L({n},{sign:?})");
            }
        }
    }

    #[test]
    fn verma_quotient_matches_sl2_formulas() {
        let a1 = uq("A1");
        for n in 0..4 {
            let built = simple_module(&a1, &[n], DEFAULT_DIM_CAP).unwrap();
            let explicit = sl2_simple(n as u32, Sign::Plus);
            assert_eq!(built.e(0), explicit.e(0));
            assert_eq!(built.f(0), explicit.f(0));
            assert_eq!(built.k(0), explicit.k(0));
        }
    }

    #[test]
    fn weyl_dimensions() {
        let a2: RootDatum = "A2".parse().unwrap();
        assert_eq!(weyl_dimension(&a2, &[1, 0]), 3);
        assert_eq!(weyl_dimension(&a2, &[1, 1]), 8);
        assert_eq!(weyl_dimension(&a2, &[2, 0]), 6);
        let b2: RootDatum = "B2".parse().unwrap();
        assert_eq!(weyl_dimension(&b2, &[1, 0]), 4);
        assert_eq!(weyl_dimension(&b2, &[0, 1]), 5);
        let g2: RootDatum = "G2".parse().unwrap();
        assert_eq!(weyl_dimension(&g2, &[1, 0]) * weyl_dimension(&g2, &[0, 1]), 7 * 14);
    }

    #[test]
    fn simple_modules_satisfy_relations() {
        for (name, weights) in [("A2", vec![vec![1, 0], vec![0, 1], vec![1, 1], vec![0, 0]]), ("B2", vec![vec![1, 0], vec![0, 1]])] {
            let u = uq(name);
            for w in weights {
                let m = simple_module(&u, &w, DEFAULT_DIM_CAP).unwrap();
                assert_eq!(m.dim() as u64, weyl_dimension(u.datum(), &w));
                assert_eq!(m.relation_failures(&u), Vec::<String>::new(), "{name} {w:?}");
            }
        }
    }

    #[test]
    fn action_is_multiplicative() {
        let u = uq("A2");
        let m = simple_module(&u, &[1, 1], DEFAULT_DIM_CAP).unwrap();
        let x = u.lin(&[(RatFunc::one(), &u.e(0)), (rf("q"), &u.f(1))]);
        let y = u.mul(&u.f(0), &u.e(1)).unwrap();
        let xy = u.mul(&x, &y).unwrap();
        assert_eq!(m.action(&xy), &m.action(&x) * &m.action(&y));
    }

    #[test]
    fn cap_and_dominance() {
        let u = uq("A2");
        assert!(matches!(simple_module(&u, &[3, 3], 10), Err(RepError::CapExceeded { .. })));
        assert!(matches!(simple_module(&u, &[-1, 0], 10), Err(RepError::NotDominant(_))));
        assert_eq!(simple_module(&u, &[0, 0], 10).unwrap().dim(), 1);
    }
}
