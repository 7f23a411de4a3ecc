use std::sync::Arc;

use pfusion_core::catalog::{self, build_str, permutation_closure, GroupExpr};
use pfusion_core::group::{factorize, p_part};
use pfusion_core::hom::{homomorphisms, HomKind};
use pfusion_core::local::{p_rank_of, sylow_containing, sylow_subgroup};
use pfusion_core::{centralizer, normalizer, Group, GroupMap, Limits, Subgroup};
use proptest::prelude::*;

fn perm(degree: usize) -> impl Strategy<Value = Vec<u32>> {
    Just((0..degree as u32).collect::<Vec<_>>()).prop_shuffle()
}

fn perm_group() -> impl Strategy<Value = Arc<Group>> {
    (3usize..=5)
        .prop_flat_map(|d| prop::collection::vec(perm(d), 1..=2))
        .prop_map(|gens| permutation_closure("random", &gens, &Limits::default()).unwrap().into_arc())
}

fn catalog_group() -> impl Strategy<Value = Arc<Group>> {
    let names: Vec<&'static str> =
        catalog::list().into_iter().filter(|n| !n.contains("gn(2)") && !n.contains("hn(2)")).collect();
    prop::sample::select(names).prop_map(|n| build_str(n).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn generated_subgroups_obey_lagrange(g in perm_group(), picks in prop::collection::vec(any::<prop::sample::Index>(), 1..3)) {
        let gens: Vec<u32> = picks.iter().map(|i| i.index(g.order()) as u32).collect();
        let h = Subgroup::generated(&g, &gens);
        prop_assert_eq!(g.order() % h.order(), 0);
        for &a in h.elements() {
            for &b in h.elements() {
                prop_assert!(h.contains(g.mul(a, g.inv(b))));
            }
        }
        let w = Subgroup::whole(&g);
        let n = normalizer(&g, &w, &h).unwrap();
        let c = centralizer(&g, &w, &h).unwrap();
        prop_assert!(c.is_subgroup_of(&n));
        prop_assert!(h.is_normal_in(&n));
    }

    #[test]
    fn sylow_orders_are_p_parts(g in perm_group()) {
        for (p, _) in factorize(g.order() as u64) {
            let s = sylow_subgroup(&g, p).unwrap();
            prop_assert_eq!(s.order() as u64, p_part(g.order() as u64, p));
            prop_assert!(s.is_p_group(p));
        }
    }

    #[test]
    fn sylow_extension_contains_start(g in catalog_group(), pick in any::<prop::sample::Index>()) {
        let x = pick.index(g.order()) as u32;
        let order = g.elem_order(x) as u64;
        if let [(p, _)] = factorize(order).as_slice() {
            let start = Subgroup::generated(&g, &[x]);
            let s = sylow_containing(&Subgroup::whole(&g), *p, &start);
            prop_assert!(start.is_subgroup_of(&s));
            prop_assert_eq!(s.order() as u64, p_part(g.order() as u64, *p));
        }
    }

    #[test]
    fn conjugation_maps_compose(g in catalog_group(), a in any::<prop::sample::Index>(), b in any::<prop::sample::Index>()) {
        let w = Subgroup::whole(&g);
        let (x, y) = (a.index(g.order()) as u32, b.index(g.order()) as u32);
        let cx = GroupMap::conjugation(x, &w, &w).unwrap();
        let cy = GroupMap::conjugation(y, &w, &w).unwrap();
        let cxy = GroupMap::conjugation(g.mul(x, y), &w, &w).unwrap();
        let composed = cx.compose(&cy).unwrap();
        prop_assert_eq!(composed.images(), cxy.images());
        let inverse = cx.inverse().unwrap();
        let c_inv = GroupMap::conjugation(g.inv(x), &w, &w).unwrap();
        prop_assert_eq!(inverse.images(), c_inv.images());
    }

    #[test]
    fn expressions_round_trip(g in catalog_group()) {
        let expr: GroupExpr = g.name().parse().unwrap();
        prop_assert_eq!(expr.to_string(), g.name());
        prop_assert_eq!(expr.order(), g.order() as u128);
        prop_assert!(catalog::build(&expr).unwrap().same_table(&g));
    }

    #[test]
    fn p_rank_is_attained_by_sylow(g in perm_group()) {
        let w = Subgroup::whole(&g);
        for (p, _) in factorize(g.order() as u64) {
            let s = sylow_subgroup(&g, p).unwrap();
            prop_assert_eq!(p_rank_of(&s, p), p_rank_of(&w, p));
            prop_assert!(p_rank_of(&Subgroup::trivial(&g), p) == 0);
        }
    }

    #[test]
    fn homomorphisms_respect_multiplication(g in perm_group()) {
        let c4 = Subgroup::whole(&build_str("cyclic(4)").unwrap());
        let w = Subgroup::whole(&g);
        for m in homomorphisms(&c4, &w, HomKind::All, 10_000).unwrap() {
            for x in 0..4u32 {
                for y in 0..4u32 {
                    let lhs = m.apply(c4.parent().mul(x, y)).unwrap();
                    prop_assert_eq!(lhs, g.mul(m.apply(x).unwrap(), m.apply(y).unwrap()));
                }
            }
        }
    }
}
