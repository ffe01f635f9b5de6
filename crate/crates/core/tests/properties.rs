use dunwoody_core::amalgam::{Side, Syllable, Word};
use dunwoody_core::charmap::VMap;
use dunwoody_core::perm::{FinitePermutation, ShiftedPermutation};
use dunwoody_core::semidirect::GElement;
use proptest::prelude::*;

fn h_i(i: u32) -> impl Strategy<Value = ShiftedPermutation> {
    let n = i as i64;
    Just((-n..=n).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(move |images| {
            ShiftedPermutation::finite(FinitePermutation::from_pairs((-n..=n).zip(images)).unwrap())
        })
}

fn shifted() -> impl Strategy<Value = ShiftedPermutation> {
    (h_i(3), -4i64..=4).prop_map(|(h, k)| ShiftedPermutation::shift_by(k).compose(&h))
}

fn v_i(i: u32) -> impl Strategy<Value = VMap> {
    let n = i as i64;
    proptest::collection::btree_set(-n..=n, 0..=(2 * i as usize + 1)).prop_map(VMap::from_support)
}

fn g_i(i: u32) -> impl Strategy<Value = GElement> {
    (v_i(i), h_i(i)).prop_map(move |(v, h)| GElement::new(i, v, h).unwrap())
}

fn word(i: u32) -> impl Strategy<Value = Word> {
    let syllable = prop_oneof![
        g_i(i).prop_map(|element| Syllable {
            side: Side::A,
            element
        }),
        g_i(i + 1).prop_map(|element| Syllable {
            side: Side::B,
            element
        }),
    ];
    proptest::collection::vec(syllable, 0..5).prop_map(move |s| Word::new(i, s).unwrap())
}

proptest! {
    #[test]
    fn shifted_permutations_form_a_group(a in shifted(), b in shifted(), c in shifted(), j in -20i64..=20) {
        prop_assert_eq!(a.compose(&b).compose(&c), a.compose(&b.compose(&c)));
        prop_assert!(a.compose(&a.inverse()).is_identity());
        prop_assert_eq!(a.compose(&b).apply(j), a.apply(b.apply(j)));
    }

    #[test]
    fn conj_is_an_action(v in v_i(3), w in v_i(3), a in h_i(3), b in h_i(3)) {
        prop_assert_eq!(v.conj(&a.compose(&b)), v.conj(&b).conj(&a));
        prop_assert_eq!(v.vmul(&w).conj(&a), v.conj(&a).vmul(&w.conj(&a)));
        prop_assert!(v.vmul(&v).is_trivial());
    }

    #[test]
    fn factor_is_a_group(x in g_i(2), y in g_i(2), z in g_i(2)) {
        let xy = x.gmul(&y).unwrap();
        prop_assert_eq!(xy.gmul(&z).unwrap(), x.gmul(&y.gmul(&z).unwrap()).unwrap());
        prop_assert!(x.gmul(&x.ginv()).unwrap().is_identity());
        prop_assert!(GElement::central_z(2).gmul(&x).unwrap() == x.gmul(&GElement::central_z(2)).unwrap());
    }

    #[test]
    fn reduction_is_sound_and_idempotent(u in word(1), w in word(1)) {
        let r = u.reduce();
        prop_assert_eq!(r.reduce(), r.clone());
        prop_assert!(r.equals(&u).unwrap());
        prop_assert!(u.wmul(&u.winv()).unwrap().is_identity());
        let uw = u.wmul(&w).unwrap();
        prop_assert!(uw.winv().equals(&w.winv().wmul(&u.winv()).unwrap()).unwrap());
        prop_assert!(uw.syllable_length() <= u.syllable_length() + w.syllable_length());
    }
}
