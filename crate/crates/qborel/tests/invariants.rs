use proptest::prelude::*;
use qborel::coideal::{character_shift, Character};
use qborel::qfield::RatFunc;
use qborel::rootsys::RootDatum;
use qborel::uqalg::{Side, Uq};

fn nonzero() -> impl Strategy<Value = i64> {
    prop_oneof![-4i64..=-1, 1i64..=4]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn canonical_word_length_counts_inversions(word in proptest::collection::vec(0usize..3, 0..12)) {
        let datum: RootDatum = "B3".parse().unwrap();
        let w = word.iter().fold(datum.identity(), |acc, &i| datum.mul(&acc, &datum.simple_reflection(i)));
        prop_assert_eq!(w.word().len(), datum.phi_plus(&w).len());
        prop_assert_eq!(datum.from_reduced_word(w.word()).unwrap(), w);
    }

    #[test]
    fn shift_is_multiplicative_on_root_vectors(first in 0usize..6, second in 0usize..6, a in nonzero(), b in nonzero()) {
        let uq = Uq::new("A3".parse().unwrap(), 10);
        let datum = uq.datum();
        let w = datum.longest_element();
        let word = w.word().to_vec();
        let phi = Character::new(datum, &w, &[(0, RatFunc::from_int(a)), (2, RatFunc::from_int(b))]).unwrap();
        let x = uq.root_vector(&word, first, Side::F).unwrap();
        let y = uq.root_vector(&word, second, Side::F).unwrap();
        let product = uq.mul(&x, &y).unwrap();
        let lhs = character_shift(&uq, &product, &w, &phi).unwrap();
        let sx = character_shift(&uq, &x, &w, &phi).unwrap();
        let sy = character_shift(&uq, &y, &w, &phi).unwrap();
        prop_assert_eq!(lhs, uq.mul(&sx, &sy).unwrap());
    }
}
