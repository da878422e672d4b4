use std::sync::Arc;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use epg_core::density::is_weakly_round;
use epg_core::normalize::ProjectiveTransform;
use epg_core::text::{from_text, to_text};
use epg_core::{build_pg, epg_size_formula, kung_bound, FieldElem, FieldSpec, Label, RepMatroid};

const FIELDS: [(u32, u32); 6] = [(2, 1), (3, 1), (2, 2), (5, 1), (2, 3), (3, 2)];

fn field() -> impl Strategy<Value = Arc<FieldSpec>> {
    (0..FIELDS.len()).prop_map(|i| Arc::new(FieldSpec::new(FIELDS[i].0, FIELDS[i].1).unwrap()))
}

fn matroid() -> impl Strategy<Value = RepMatroid> {
    (field(), 1usize..=4, 0usize..=9).prop_flat_map(|(f, rows, cols)| {
        let q = f.order();
        proptest::collection::vec(proptest::collection::vec(0..q, rows), cols).prop_map(move |cs| {
            let columns = cs.into_iter().map(|c| c.into_iter().map(FieldElem).collect()).collect();
            RepMatroid::from_columns(f.clone(), rows, columns).unwrap()
        })
    })
}

fn subset(m: &RepMatroid, mask: u32) -> Vec<Label> {
    m.labels().iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &l)| l).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn field_axioms(f in field(), a in 0u32..9, b in 0u32..9, c in 0u32..9) {
        let q = f.order();
        let (a, b, c) = (FieldElem(a % q), FieldElem(b % q), FieldElem(c % q));
        prop_assert_eq!(f.add(a, b), f.add(b, a));
        prop_assert_eq!(f.mul(a, b), f.mul(b, a));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        prop_assert!(f.add(a, f.neg(a)).is_zero());
        if !a.is_zero() {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), FieldElem::ONE);
        }
        prop_assert_eq!(f.pow(a, q as u64), a);
    }

    #[test]
    fn rank_is_submodular(m in matroid(), x in any::<u32>(), y in any::<u32>()) {
        let (a, b) = (subset(&m, x), subset(&m, y));
        let union: Vec<Label> = m.labels().iter().copied().filter(|l| a.contains(l) || b.contains(l)).collect();
        let meet: Vec<Label> = a.iter().copied().filter(|l| b.contains(l)).collect();
        let r = |s: &[Label]| m.rank_of(s).unwrap();
        prop_assert!(r(&a) + r(&b) >= r(&union) + r(&meet));
        prop_assert!(r(&a) <= a.len());
        prop_assert!(r(&meet) <= r(&a));
    }

    #[test]
    fn simplify_is_idempotent(m in matroid()) {
        let (si, map) = m.simplify();
        prop_assert!(si.is_simple());
        prop_assert_eq!(si.rank(), m.rank());
        prop_assert_eq!(si.len(), map.point_count());
        let (again, _) = si.simplify();
        prop_assert_eq!(again.labels(), si.labels());
    }

    #[test]
    fn transforms_preserve_rank(m in matroid(), seed in any::<u64>(), mask in any::<u32>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let t = ProjectiveTransform::random(m.field(), &m, &mut rng);
        let out = t.apply(&m).unwrap();
        let s = subset(&m, mask);
        prop_assert_eq!(out.rank_of(&s).unwrap(), m.rank_of(&s).unwrap());
    }

    #[test]
    fn kung_bound_holds(m in matroid()) {
        let ell = m.field().order() as u64;
        prop_assert!(m.point_count() as u128 <= kung_bound(ell, m.rank() as u64).unwrap());
    }

    #[test]
    fn text_round_trip(m in matroid()) {
        let text = to_text(&m);
        let back = from_text(&text).unwrap();
        prop_assert_eq!(to_text(&back), text);
        prop_assert_eq!(back.labels(), m.labels());
    }

    #[test]
    fn restriction_never_raises_rank(m in matroid(), mask in any::<u32>()) {
        let s = subset(&m, mask);
        let r = m.restrict(&s).unwrap();
        prop_assert_eq!(r.rank(), m.rank_of(&s).unwrap());
        prop_assert!(r.point_count() <= m.point_count());
    }

    #[test]
    fn epg_formula_sits_between_geometries(q in prop::sample::select(vec![2u64, 3, 4, 5]), n in 1u64..8, k in 0u64..4) {
        prop_assume!(k <= n);
        let v = epg_size_formula(n, q, k).unwrap();
        prop_assert!(v >= kung_bound(q, n).unwrap());
        prop_assert!(v <= kung_bound(q * q, n).unwrap());
    }
}

#[test]
fn geometries_and_rank_two_are_weakly_round() {
    for (n, q) in [(1, 2), (2, 2), (3, 2), (2, 3), (1, 5)] {
        assert!(is_weakly_round(&build_pg(n, q).unwrap()).unwrap());
    }
    let f = Arc::new(FieldSpec::new(2, 1).unwrap());
    let e = |v: [u32; 4]| v.map(FieldElem).to_vec();
    let two_lines = RepMatroid::from_columns(
        f,
        4,
        vec![e([1, 0, 0, 0]), e([0, 1, 0, 0]), e([1, 1, 0, 0]), e([0, 0, 1, 0]), e([0, 0, 0, 1]), e([0, 0, 1, 1])],
    )
    .unwrap();
    assert!(!is_weakly_round(&two_lines).unwrap());
}
