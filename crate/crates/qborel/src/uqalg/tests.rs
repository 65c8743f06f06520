use proptest::prelude::*;

use super::*;
use crate::qfield::{q, qbinom, BigRat};
use crate::rootsys::RootDatum;

fn uq(name: &str) -> Uq {
    Uq::new(name.parse::<RootDatum>().unwrap(), DEFAULT_BOUND)
}

fn generators(u: &Uq) -> Vec<AlgElt> {
    let mut out = Vec::new();
    for i in 0..u.rank() {
        out.push(u.e(i));
        out.push(u.f(i));
        out.push(u.k_simple(i, 1));
        out.push(u.k_simple(i, -1));
    }
    out
}

fn serre_word_combination(u: &Uq, side: Side, i: usize, j: usize) -> AlgElt {
    let a = (1 - u.datum().cartan(i, j)) as u32;
    let di = u.datum().sym(i) as u32;
    let mut acc = AlgElt::zero();
    for r in 0..=a {
        let mut w = vec![i as u8; (a - r) as usize];
        w.push(j as u8);
        w.extend(std::iter::repeat_n(i as u8, r as usize));
        let gens: Vec<AlgElt> = w
            .iter()
            .map(|&l| match side {
                Side::E => u.e(l as usize),
                Side::F => u.f(l as usize),
            })
            .collect();
        let refs: Vec<&AlgElt> = gens.iter().collect();
        let mut c = qbinom(a, r, di);
        if r % 2 == 1 {
            c = -&c;
        }
        acc.add_scaled(&u.mul_all(&refs).unwrap(), &c);
    }
    acc
}

#[test]
fn pbw_dimensions_match_kostant() {
    for name in ["A2", "B2", "G2", "A3"] {
        let u = uq(name);
        for nu in u.datum().vectors_below(&vec![3; u.rank()]) {
            if crate::rootsys::height(&nu) > 7 {
                continue;
            }
            let basis = u.degree_basis(&nu).unwrap();
            assert_eq!(basis.dim() as u64, u.datum().kostant_dim(&nu), "{name} {nu:?}");
        }
    }
}

/// Rank of the Serre ideal slice at a rational specialization of `q`.
fn quotient_dim_by_ideal_slice(u: &Uq, nu: &[i32]) -> usize {
    use std::collections::HashMap;
    let rank = u.rank();
    let mut words: Vec<Vec<u8>> = vec![vec![]];
    let n: i32 = nu.iter().sum();
    for _ in 0..n {
        let mut next = Vec::new();
        for w in &words {
            for l in 0..rank as u8 {
                next.push([w.clone(), vec![l]].concat());
            }
        }
        words = next;
    }
    words.retain(|w| elt::word_degree(w, rank) == nu);
    let index: HashMap<Vec<u8>, usize> = words.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
    let q0 = BigRat::new(7.into(), 5.into());
    let mut rows: Vec<Vec<BigRat>> = Vec::new();
    for i in 0..rank {
        for j in 0..rank {
            if i == j {
                continue;
            }
            let a = (1 - u.datum().cartan(i, j)) as usize;
            let di = u.datum().sym(i) as u32;
            let rel_len = a + 1;
            let lead = [vec![i as u8; a], vec![j as u8]].concat();
            for w in words.iter().filter(|w| w.len() >= rel_len) {
                for start in 0..=(w.len() - rel_len) {
                    if w[start..start + rel_len] != lead[..] {
                        continue;
                    }
                    let mut row = vec![BigRat::zero(); words.len()];
                    for r in 0..=a {
                        let mut mid = vec![i as u8; a - r];
                        mid.push(j as u8);
                        mid.extend(std::iter::repeat_n(i as u8, r));
                        let full = [&w[..start], &mid[..], &w[start + rel_len..]].concat();
                        let mut c = qbinom(a as u32, r as u32, di).eval(&q0).unwrap();
                        if r % 2 == 1 {
                            c = -c;
                        }
                        let idx = index[&full];
                        row[idx] = &row[idx] + &c;
                    }
                    rows.push(row);
                }
            }
        }
    }
    words.len() - rational_rank(rows)
}

fn rational_rank(mut rows: Vec<Vec<BigRat>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else { continue };
        rows.swap(rank, p);
        let inv = rows[rank][col].recip();
        let pivot: Vec<BigRat> = rows[rank].iter().map(|x| x * &inv).collect();
        for r in 0..rows.len() {
            if r != rank && !rows[r][col].is_zero() {
                let f = rows[r][col].clone();
                for c in 0..cols {
                    rows[r][c] = &rows[r][c] - &(&f * &pivot[c]);
                }
            }
        }
        rows[rank] = pivot;
        rank += 1;
    }
    rank
}

#[test]
fn degree_basis_agrees_with_ideal_slice() {
    for (name, nus) in [
        ("A2", vec![vec![2, 1], vec![2, 2], vec![3, 2]]),
        ("B2", vec![vec![1, 2], vec![2, 2], vec![1, 3]]),
        ("G2", vec![vec![1, 3], vec![2, 3]]),
    ] {
        let u = uq(name);
        for nu in nus {
            assert_eq!(quotient_dim_by_ideal_slice(&u, &nu), u.degree_basis(&nu).unwrap().dim(), "{name} {nu:?}");
        }
    }
}

#[test]
fn e_f_commutator_in_rank_one() {
    let u = uq("A1");
    let ef = u.mul(&u.e(0), &u.f(0)).unwrap();
    let fe = u.mul(&u.f(0), &u.e(0)).unwrap();
    let diff = &ef - &fe;
    let expected = (&u.k_simple(0, 1) - &u.k_simple(0, -1)).scale(&(&q(1) - &q(-1)).inv().unwrap());
    assert_eq!(diff, expected);
}

#[test]
fn k_conjugation() {
    let u = uq("B2");
    for i in 0..2 {
        for j in 0..2 {
            let ke = u.mul(&u.k_simple(i, 1), &u.e(j)).unwrap();
            let ek = u.mul(&u.e(j), &u.k_simple(i, 1)).unwrap();
            assert_eq!(ke, ek.scale(&q(u.datum().form_simple(i, j))));
            let kf = u.mul(&u.k_simple(i, 1), &u.f(j)).unwrap();
            let fk = u.mul(&u.f(j), &u.k_simple(i, 1)).unwrap();
            assert_eq!(kf, fk.scale(&q(-u.datum().form_simple(i, j))));
        }
    }
}

#[test]
fn serre_relations_vanish() {
    for name in ["A2", "B2", "G2"] {
        let u = uq(name);
        for i in 0..2 {
            for j in 0..2 {
                if i != j {
                    assert!(serre_word_combination(&u, Side::E, i, j).is_zero(), "{name} E {i} {j}");
                    assert!(serre_word_combination(&u, Side::F, i, j).is_zero(), "{name} F {i} {j}");
                }
            }
        }
    }
}

#[test]
fn distinct_e_f_commute() {
    let u = uq("A3");
    let ef = u.mul(&u.e(0), &u.f(2)).unwrap();
    let fe = u.mul(&u.f(2), &u.e(0)).unwrap();
    assert_eq!(ef, fe);
}

fn small_element(u: &Uq, picks: &[(usize, u8)]) -> AlgElt {
    let gens = generators(u);
    let mut acc = u.one();
    for &(g, _) in picks {
        acc = u.mul(&acc, &gens[g % gens.len()]).unwrap();
    }
    let mut out = acc.clone();
    if let Some(&(_, c)) = picks.first() {
        out.add_scaled(&u.one(), &q(c as i32 % 3 - 1));
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn multiplication_is_associative(
        a in prop::collection::vec((0usize..8, 0u8..5), 1..3),
        b in prop::collection::vec((0usize..8, 0u8..5), 1..3),
        c in prop::collection::vec((0usize..8, 0u8..5), 1..3),
        name in prop::sample::select(vec!["A2", "B2"]),
    ) {
        let u = uq(name);
        let (x, y, z) = (small_element(&u, &a), small_element(&u, &b), small_element(&u, &c));
        let left = u.mul(&u.mul(&x, &y).unwrap(), &z).unwrap();
        let right = u.mul(&x, &u.mul(&y, &z).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn coproduct_is_multiplicative(
        a in prop::collection::vec((0usize..8, 0u8..5), 1..3),
        b in prop::collection::vec((0usize..8, 0u8..5), 1..3),
    ) {
        let u = uq("A2");
        let (x, y) = (small_element(&u, &a), small_element(&u, &b));
        prop_assert!(u.coproduct_multiplicative_on(&x, &y).unwrap());
    }
}

#[test]
fn hopf_axioms_on_small_elements() {
    for name in ["A2", "B2"] {
        let u = uq(name);
        let gens = generators(&u);
        let mut samples = gens.clone();
        samples.push(u.mul(&u.e(0), &u.f(1)).unwrap());
        samples.push(u.mul_all(&[&u.f(1), &u.k_simple(0, 1), &u.e(0), &u.e(1)]).unwrap());
        for x in &samples {
            assert!(u.antipode_axiom_holds(x).unwrap(), "{name} antipode {x}");
            assert!(u.counit_axiom_holds(x).unwrap(), "{name} counit {x}");
            assert!(u.coassociative_on(x).unwrap(), "{name} coassoc {x}");
        }
    }
}

#[test]
fn antipode_reverses_products() {
    let u = uq("A2");
    let x = u.mul(&u.e(0), &u.f(1)).unwrap();
    let lhs = u.antipode(&x).unwrap();
    let rhs = u.mul(&u.antipode(&u.f(1)).unwrap(), &u.antipode(&u.e(0)).unwrap()).unwrap();
    assert_eq!(lhs, rhs);
}

#[test]
fn lusztig_inverse_pairs() {
    for name in ["A2", "B2", "G2"] {
        let u = uq(name);
        for i in 0..2 {
            for x in generators(&u) {
                let there = u.lusztig_t(i, Direction::Forward, &x).unwrap();
                let back = u.lusztig_t(i, Direction::Inverse, &there).unwrap();
                assert_eq!(back, x, "{name} T{i}");
            }
        }
    }
}

#[test]
fn lusztig_preserves_commutator_relation() {
    for name in ["A2", "B2"] {
        let u = uq(name);
        for i in 0..2 {
            for j in 0..2 {
                for dir in [Direction::Forward, Direction::Inverse] {
                    let te = u.lusztig_t(i, dir, &u.e(j)).unwrap();
                    let tf = u.lusztig_t(i, dir, &u.f(j)).unwrap();
                    let lhs = &u.mul(&te, &tf).unwrap() - &u.mul(&tf, &te).unwrap();
                    let qj = u.q_i(j);
                    let rel = (&u.k_simple(j, 1) - &u.k_simple(j, -1)).scale(&(&qj - &qj.inv().unwrap()).inv().unwrap());
                    let rhs = u.lusztig_t(i, dir, &rel).unwrap();
                    assert_eq!(lhs, rhs, "{name} T{i} {dir:?} on [E{j},F{j}]");
                }
            }
        }
    }
}

fn apply_word(u: &Uq, word: &[usize], x: &AlgElt) -> AlgElt {
    word.iter().rev().fold(x.clone(), |acc, &i| u.lusztig_t(i, Direction::Forward, &acc).unwrap())
}

#[test]
fn braid_relations() {
    for (name, len) in [("A2", 3), ("B2", 4), ("G2", 6)] {
        let u = uq(name);
        let w1: Vec<usize> = (0..len).map(|k| k % 2).collect();
        let w2: Vec<usize> = (0..len).map(|k| (k + 1) % 2).collect();
        for x in [u.e(0), u.e(1), u.f(0), u.f(1)] {
            assert_eq!(apply_word(&u, &w1, &x), apply_word(&u, &w2, &x), "{name} braid on {x}");
        }
    }
}

#[test]
fn rank_two_images() {
    let u = uq("A2");
    let t_e = u.lusztig_t(0, Direction::Forward, &u.e(1)).unwrap();
    assert_eq!(t_e, u.qcomm(&u.e(0), &u.e(1), &q(-1)).unwrap());
    let t_f = u.lusztig_t(0, Direction::Inverse, &u.f(1)).unwrap();
    assert_eq!(t_f, u.qcomm(&u.f(0), &u.f(1), &q(1)).unwrap());
    assert_eq!(apply_word(&u, &[0, 1], &u.e(0)), u.e(1));
}

#[test]
fn a3_root_vector_for_highest_root() {
    let u = uq("A3");
    let inner = u.qcomm(&u.f(2), &u.f(1), &q(1)).unwrap();
    let expected = u.qcomm(&u.f(0), &inner, &q(1)).unwrap();
    assert_eq!(u.root_vector(&[2, 0, 1], 2, Side::F).unwrap(), expected);
    assert!(matches!(u.root_vector(&[0, 0], 1, Side::F), Err(UqError::NotReduced(_))));
}

#[test]
fn root_vectors_have_root_weights() {
    let u = uq("B2");
    let w0 = [0usize, 1, 0, 1];
    let roots = u.datum().root_sequence(&w0);
    for (k, beta) in roots.iter().enumerate() {
        let x = u.root_vector(&w0, k, Side::E).unwrap();
        let (deg, _) = u.coords_of(Side::E, &x).unwrap();
        assert_eq!(&deg, beta);
    }
}
