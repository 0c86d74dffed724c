use num_bigint::BigInt;
use proptest::prelude::*;

use truss_core::constructions::end_at;
use truss_core::hom::group_homs;
use truss_core::modules::TrussModule;
use truss_core::ztruss::{
    apply_auto, apply_word, are_isomorphic, canonicalize, compose_word, from_matrix, to_matrix, zmul, zn_truss, AutoSign,
    ZAuto, ZTrussParams,
};
use truss_core::{FiniteHeap, FiniteTruss, HeapMorphism, Limits, SubHeap};

const SHAPES: &[&[usize]] = &[&[1], &[2], &[3], &[4], &[5], &[2, 2], &[6], &[2, 3], &[2, 4], &[3, 3], &[2, 2, 2], &[8], &[4, 4], &[64]];

fn heap_strategy() -> impl Strategy<Value = FiniteHeap> {
    (0..SHAPES.len()).prop_map(|i| FiniteHeap::cyclic(SHAPES[i]).unwrap())
}

fn heap_with<const K: usize>() -> impl Strategy<Value = (FiniteHeap, [usize; K])> {
    heap_strategy().prop_flat_map(|h| {
        let n = h.size();
        (Just(h), prop::array::uniform::<_, K>(0..n))
    })
}

fn triple_strategy() -> impl Strategy<Value = ZTrussParams> {
    prop_oneof![
        (-40i64..=40, -300i64..=300).prop_filter_map("a must divide b(b-1)", |(a, b)| {
            (a != 0 && (b * (b - 1)) % a == 0).then(|| ZTrussParams::commutative(a, b, b * (b - 1) / a).unwrap())
        }),
        (0i64..=1, -50i64..=50).prop_map(|(b, c)| ZTrussParams::commutative(0, b, c).unwrap()),
    ]
}

fn auto_strategy() -> impl Strategy<Value = ZAuto> {
    (-60i64..=60, any::<bool>()).prop_map(|(k, s)| ZAuto::new(k, if s { AutoSign::Plus } else { AutoSign::Minus }))
}

/// Every truss on `ℤₙ` given by `amn + b(m+n) + c`.
fn zn_trusses(n: u64) -> Vec<FiniteTruss> {
    let limits = Limits::default();
    let mut out = Vec::new();
    for a in 0..n as i64 {
        for b in 0..n as i64 {
            for c in 0..n as i64 {
                if let Ok(t) = zn_truss(n, a, b, c, &limits) {
                    out.push(t);
                }
            }
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn bracket_identities((h, [v, w, x, y, z]) in heap_with::<5>()) {
        prop_assert_eq!(h.br(v, w, h.br(x, y, z)), h.br(v, h.br(y, x, w), z));
        prop_assert_eq!(h.br(x, y, h.br(y, x, z)), z);
        prop_assert_eq!(h.br(h.br(z, x, y), y, x), z);
        prop_assert_eq!(h.br(x, h.br(y, z, x), y), z);
        prop_assert_eq!(h.br(x, x, y), y);
        prop_assert_eq!(h.br(x, y, y), x);
        if h.br(x, y, v) == v {
            prop_assert_eq!(x, y);
        }
    }

    #[test]
    fn interchange((h, e) in heap_with::<9>()) {
        let lhs = h.br(h.br(e[0], e[1], e[2]), h.br(e[3], e[4], e[5]), h.br(e[6], e[7], e[8]));
        let rhs = h.br(h.br(e[0], e[3], e[6]), h.br(e[1], e[4], e[7]), h.br(e[2], e[5], e[8]));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn multibracket_reassociates((h, e) in heap_with::<5>()) {
        prop_assert_eq!(h.multibracket(&e).unwrap(), h.br(h.br(e[0], e[1], e[2]), e[3], e[4]));
        prop_assert_eq!(h.multibracket(&e).unwrap(), h.br(e[0], e[1], h.br(e[2], e[3], e[4])));
    }

    #[test]
    fn swap_is_an_automorphism((h, [e, f]) in heap_with::<2>()) {
        let tau = h.swap_automorphism(e, f).unwrap();
        prop_assert!(tau.is_morphism(&h, &h));
        prop_assert_eq!(tau.apply(e), f);
        prop_assert_eq!(tau.compose(&h.swap_automorphism(f, e).unwrap()), HeapMorphism::identity(h.size()));
    }

    #[test]
    fn generated_subheaps_are_cosets((h, [x, y, z]) in heap_with::<3>()) {
        let s = h.subheap_generated(&[x, y, z]).unwrap();
        prop_assert!(s.contains(x) && s.contains(y) && s.contains(z));
        let (q, pi) = h.quotient(&s).unwrap();
        prop_assert_eq!(q.size() * s.len(), h.size());
        prop_assert!(pi.is_morphism(&h, &q));
        prop_assert_eq!(h.kernel(&pi, pi.apply(x)).unwrap(), s);
    }

    #[test]
    fn morphism_check_matches_triple_scan(seed in any::<u64>()) {
        let h = FiniteHeap::cyclic(&[2, 2]).unwrap();
        let g = FiniteHeap::cyclic(&[4]).unwrap();
        let image: Vec<usize> = (0..4).map(|i| ((seed >> (2 * i)) & 3) as usize).collect();
        let f = HeapMorphism::new(image);
        let scan = (0..4).all(|a| (0..4).all(|b| (0..4).all(|c| f.apply(h.br(a, b, c)) == g.br(f.apply(a), f.apply(b), f.apply(c)))));
        prop_assert_eq!(f.is_morphism(&h, &g), scan);
        let report = f.check(&h, &g).unwrap();
        if let Some([a, b, c]) = report.witness {
            prop_assert_ne!(f.apply(h.br(a, b, c)), g.br(f.apply(a), f.apply(b), f.apply(c)));
        }
    }

    #[test]
    fn auto_transport_is_an_isomorphism(p in triple_strategy(), g in auto_strategy(), m in -30i64..30, n in -30i64..30) {
        let q = apply_auto(&p, &g).unwrap();
        prop_assert!(q.validate().is_ok());
        let (m, n) = (BigInt::from(m), BigInt::from(n));
        prop_assert_eq!(g.apply(&zmul(&p, &m, &n)), zmul(&q, &g.apply(&m), &g.apply(&n)));
        prop_assert_eq!(apply_auto(&q, &g.inverse()).unwrap(), p);
    }

    #[test]
    fn canonical_forms(p in triple_strategy(), word in prop::collection::vec(auto_strategy(), 0..6)) {
        let q = apply_word(&p, &word).unwrap();
        let (cp, wp) = canonicalize(&p).unwrap();
        let (cq, _) = canonicalize(&q).unwrap();
        prop_assert_eq!(&cp, &cq);
        prop_assert_eq!(apply_word(&p, &wp).unwrap(), cp.clone());
        prop_assert_eq!(canonicalize(&cp).unwrap().0, cp);
        let w = are_isomorphic(&p, &q).unwrap().expect("same orbit");
        prop_assert_eq!(apply_word(&p, &w).unwrap(), q.clone());
        prop_assert_eq!(apply_auto(&p, &compose_word(&word)).unwrap(), q);
    }

    #[test]
    fn matrix_bridge(p in triple_strategy()) {
        let m = to_matrix(&p).unwrap();
        prop_assert_eq!(m.square(), m.entries.clone());
        prop_assert_eq!(m.trace(), BigInt::from(1));
        prop_assert_eq!(from_matrix(&m).unwrap(), p);
    }

    #[test]
    fn opposite_is_an_involution(i in 0usize..64) {
        let all = zn_trusses(4);
        let t = &all[i % all.len()];
        prop_assert_eq!(&t.opposite().opposite(), t);
        let s = t.special_elements();
        let so = t.opposite().special_elements();
        prop_assert_eq!(s.left_identities, so.right_identities);
        prop_assert_eq!(s.left_absorbers, so.right_absorbers);
    }

    #[test]
    fn paragon_quotients_project(i in 0usize..64, j in 0usize..7) {
        let all = zn_trusses(4);
        let t = &all[i % all.len()];
        let subs = t.heap().subheaps();
        let s = &subs[j % subs.len()];
        if t.is_paragon(s) {
            let (q, pi) = t.quotient_truss(s).unwrap();
            prop_assert!(t.is_morphism_to(&q, &pi));
        } else {
            prop_assert!(t.quotient_truss(s).is_err());
        }
    }

    #[test]
    fn end_at_fixes_the_basepoint((h, [e]) in heap_with::<1>().prop_filter("small", |(h, _)| h.size() <= 6)) {
        let (t, maps) = end_at(&h, e, &Limits::default()).unwrap();
        prop_assert_eq!(t.size(), group_homs(&h, &h, None).len());
        for m in &maps {
            prop_assert_eq!(m.apply(e), e);
        }
    }

    #[test]
    fn induced_action_is_stable(i in 0usize..64, e in 0usize..4, f in 0usize..4) {
        let all = zn_trusses(4);
        let m = TrussModule::regular(&all[i % all.len()]);
        let me = m.induced_action(e).unwrap();
        prop_assert!(me.is_absorber(e));
        prop_assert_eq!(me.induced_action(f).unwrap(), m.induced_action(f).unwrap());
        let tau = m.heap().swap_automorphism(e, f).unwrap();
        prop_assert!(me.is_morphism_to(&m.induced_action(f).unwrap(), &tau));
    }

    #[test]
    fn cyclic_submodules_are_least(i in 0usize..64, e in 0usize..4) {
        let all = zn_trusses(4);
        let m = TrussModule::regular(&all[i % all.len()]);
        let te = m.cyclic_submodule(e).unwrap();
        prop_assert!(m.classify_submodule(&te).unwrap().submodule);
        for s in m.heap().subheaps() {
            if s.contains(e) && m.classify_submodule(&s).unwrap().submodule {
                prop_assert!(te.members().iter().all(|&x| s.contains(x)));
            }
        }
        let (_, q, pi) = m.absorber_quotient(e).unwrap();
        prop_assert!(q.is_absorber(pi.apply(e)));
        prop_assert!(m.is_morphism_to(&q, &pi));
    }

    #[test]
    fn submodule_implies_induced(i in 0usize..64, j in 0usize..7) {
        let all = zn_trusses(4);
        let m = TrussModule::regular(&all[i % all.len()]);
        let subs: Vec<SubHeap> = m.heap().subheaps();
        let r = m.classify_submodule(&subs[j % subs.len()]).unwrap();
        prop_assert!(!r.submodule || r.induced_submodule);
    }
}
