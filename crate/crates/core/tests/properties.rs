//! Property tests across modules.

use lambdatree::freegrp::{
    abelianization, cyclic_reduce, format_word, is_conjugate, is_proper_power, parse_word, Alphabet, Letter, Word,
};
use lambdatree::ogroup::{AffineMap, GroupSignature, LexVector, OAutomorphism};
use lambdatree::treecalc::{axis_geometry, brute_force_length_auto, commutator_length, CayleyTreeAction, MeetKind};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

fn letters(rank: usize, max: usize) -> impl Strategy<Value = Vec<Letter>> {
    prop::collection::vec((0..rank, any::<bool>()).prop_map(|(g, i)| Letter::new(g, i)), 0..=max)
}

fn word(rank: usize, max: usize) -> impl Strategy<Value = Word> {
    letters(rank, max).prop_map(|l| Word::from_letters(l).reduce())
}

fn nonempty(rank: usize, max: usize) -> impl Strategy<Value = Word> {
    word(rank, max).prop_filter("nontrivial", |w| !w.is_empty())
}

fn xy() -> Alphabet {
    Alphabet::of(&["x", "y"])
}

fn action(weights: (i64, i64)) -> CayleyTreeAction {
    CayleyTreeAction::with_int_weights(xy(), &[weights.0, weights.1]).unwrap()
}

fn q2() -> GroupSignature {
    GroupSignature::rational(2)
}

fn vector(sig: GroupSignature) -> impl Strategy<Value = LexVector> {
    prop::collection::vec((-6i64..=6, 1i64..=4), sig.rank()).prop_map(move |c| {
        let coords = c
            .into_iter()
            .map(|(p, q)| BigRational::new(BigInt::from(p), BigInt::from(q)))
            .collect();
        LexVector::new(sig.clone(), coords).unwrap()
    })
}

fn automorphism() -> impl Strategy<Value = OAutomorphism> {
    (1i64..=5, 1i64..=5, -4i64..=4).prop_map(|(p, q, a)| {
        let s = OAutomorphism::scaling(&q2(), BigRational::new(p.into(), q.into())).unwrap();
        let h = OAutomorphism::shear(&q2(), 0, 1, BigRational::from_integer(a.into())).unwrap();
        s.compose(&h).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn word_syntax_round_trips(w in word(2, 12)) {
        let text = format_word(&xy(), &w);
        prop_assert_eq!(parse_word(&xy(), &text).unwrap(), w);
    }

    #[test]
    fn reduction_is_a_homomorphism(a in letters(3, 10), b in letters(3, 10)) {
        let (a, b) = (Word::from_letters(a), Word::from_letters(b));
        prop_assert_eq!(a.concat(&b).reduce(), a.reduce().mul(&b.reduce()));
        prop_assert!(a.concat(&a.inverse()).reduce().is_empty());
    }

    #[test]
    fn cyclic_core_is_a_conjugate(w in word(3, 12)) {
        let (c, core) = cyclic_reduce(&w);
        prop_assert_eq!(core.as_word().conjugate_by(&c), w.clone());
        let k = core.as_word();
        if k.len() > 1 {
            prop_assert!(!k.letters()[0].cancels(k.last().unwrap()));
        }
    }

    #[test]
    fn conjugates_are_recognized(u in nonempty(2, 6), c in word(2, 6)) {
        let v = u.conjugate_by(&c);
        let d = is_conjugate(&u, &v);
        prop_assert!(d.is_some());
        prop_assert_eq!(u.conjugate_by(&d.unwrap()), v);
    }

    #[test]
    fn conjugacy_preserves_abelianization(u in nonempty(2, 6), v in nonempty(2, 6)) {
        if is_conjugate(&u, &v).is_some() {
            prop_assert_eq!(abelianization(&u, 2), abelianization(&v, 2));
        }
    }

    #[test]
    fn powers_have_roots(u in nonempty(2, 5), k in 2i64..=4) {
        let (root, j) = is_proper_power(&u.pow(k)).unwrap().expect("u^k is a proper power");
        prop_assert_eq!(root.pow(j as i64), u.pow(k));
    }

    #[test]
    fn translation_length_matches_oracle(w in nonempty(2, 7), a in 1i64..=3, b in 1i64..=3) {
        let t = action((a, b));
        let brute = brute_force_length_auto(&t, &w, 12).unwrap();
        prop_assert!(brute.stable);
        prop_assert_eq!(t.translation_length(&w), brute.length);
    }

    #[test]
    fn translation_length_is_a_class_function(w in nonempty(2, 6), c in word(2, 5), n in -3i64..=3) {
        let t = action((2, 3));
        let l = t.translation_length(&w);
        prop_assert_eq!(t.translation_length(&w.conjugate_by(&c)), l.clone());
        prop_assert_eq!(t.translation_length(&w.pow(n)), l.scale_i64(n.abs()));
    }

    #[test]
    fn commutator_formula_matches_oracle(
        x in nonempty(2, 3), y in nonempty(2, 3), m in -2i64..=2, n in -2i64..=2, wx in 1i64..=3, wy in 1i64..=3,
    ) {
        prop_assume!(m != 0 && n != 0 && x.mul(&y) != y.mul(&x));
        let t = action((wx, wy));
        let f = commutator_length(&t, &x, &y, m, n).unwrap();
        let literal = x.pow(m).inverse().mul(&y.pow(n).inverse()).mul(&x.pow(m)).mul(&y.pow(n));
        let brute = brute_force_length_auto(&t, &literal, 16).unwrap();
        prop_assert!(brute.stable);
        prop_assert_eq!(f, brute.length);
    }

    #[test]
    fn segment_meets_have_positive_overlap(x in nonempty(2, 4), y in nonempty(2, 4)) {
        prop_assume!(x.mul(&y) != y.mul(&x));
        if let MeetKind::Segment { overlap } = axis_geometry(&action((1, 1)), &x, &y).unwrap().meet {
            prop_assert!(overlap.is_positive());
        }
    }

    #[test]
    fn order_is_translation_invariant(a in vector(q2()), b in vector(q2()), c in vector(q2())) {
        prop_assert_eq!(a.lex_compare(&b), (&a + &c).lex_compare(&(&b + &c)));
    }

    #[test]
    fn automorphisms_preserve_order(t in automorphism(), a in vector(q2()), b in vector(q2())) {
        prop_assert_eq!(a.lex_compare(&b), t.apply(&a).unwrap().lex_compare(&t.apply(&b).unwrap()));
        prop_assert_eq!(t.invert().apply(&t.apply(&a).unwrap()).unwrap(), a);
    }

    #[test]
    fn affine_maps_form_a_group(
        s in automorphism(), t in automorphism(), u in vector(q2()), v in vector(q2()), x in vector(q2()),
        m in -3i64..=3,
    ) {
        let f = AffineMap::new(s, u).unwrap();
        let g = AffineMap::new(t, v).unwrap();
        let fg = f.compose(&g).unwrap();
        let m = BigInt::from(m);
        let (m1, y) = g.apply(&m, &x).unwrap();
        prop_assert_eq!(fg.apply(&m, &x).unwrap(), f.apply(&m1, &y).unwrap());
        prop_assert!(f.compose(&f.invert()).unwrap().is_identity());
    }

    #[test]
    fn much_less_scales(a in vector(q2()), b in vector(q2()), k in 1i64..=1000) {
        if a.much_less(&b).unwrap() {
            prop_assert!(a.scale_i64(k) < b);
            prop_assert!(a.scale_i64(-k) < b);
        }
    }
}
