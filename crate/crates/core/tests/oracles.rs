//! Library results against naive brute force, with frozen expected values.

mod common;

use std::collections::BTreeSet;

use common::*;

use pfusion_core::catalog::build_str;
use pfusion_core::fusion::{rep_classes, rep_zpn_classes, FusionSystem};
use pfusion_core::group::factorize;
use pfusion_core::local::sylow_subgroup;
use pfusion_core::{all_subgroups, automorphism_group, Elem, Limits, Subgroup};

fn lim() -> Limits {
    Limits::default()
}

#[test]
fn subgroup_lattice_matches_subset_search() {
    let expected: &[(&str, usize)] = &[
        ("cyclic(2)", 2),
        ("cyclic(4)", 3),
        ("cyclic(8)", 4),
        ("elementary_abelian(2,2)", 5),
        ("elementary_abelian(2,3)", 16),
        ("elementary_abelian(2,4)", 67),
        ("direct(cyclic(4),cyclic(2))", 8),
        ("direct(cyclic(4),cyclic(4))", 15),
        ("quaternion8", 6),
        ("dihedral(8)", 10),
        ("dihedral(16)", 19),
        ("direct(quaternion8,cyclic(2))", 19),
        ("direct(dihedral(8),cyclic(2))", 35),
        ("elementary_abelian(3,2)", 6),
        ("symmetric(3)", 6),
        ("dihedral(10)", 8),
        ("alternating(4)", 10),
        ("direct(symmetric(3),cyclic(2))", 16),
    ];
    for &(name, count) in expected {
        let g = build_str(name).unwrap();
        assert_eq!(brute_subgroups(&g).len(), count, "{name} brute force");
    }
    for g in small_catalog(16) {
        let lib: BTreeSet<Vec<Elem>> =
            all_subgroups(&Subgroup::whole(&g), &lim()).unwrap().iter().map(|s| s.elements().to_vec()).collect();
        assert_eq!(lib, brute_subgroups(&g), "{}", g.name());
        if let Some(&(_, count)) = expected.iter().find(|(n, _)| *n == g.name()) {
            assert_eq!(lib.len(), count);
        }
    }
}

#[test]
fn automorphisms_match_bijection_search() {
    let expected: &[(&str, usize)] = &[
        ("cyclic(2)", 1),
        ("cyclic(4)", 2),
        ("cyclic(8)", 4),
        ("elementary_abelian(2,2)", 6),
        ("elementary_abelian(2,3)", 168),
        ("direct(cyclic(4),cyclic(2))", 8),
        ("quaternion8", 24),
        ("dihedral(8)", 8),
        ("cyclic(3)", 2),
        ("cyclic(5)", 4),
    ];
    for &(name, count) in expected {
        let g = build_str(name).unwrap();
        assert_eq!(brute_automorphisms(&g).len(), count, "{name} brute force");
    }
    for g in small_catalog(8).into_iter().filter(|g| factorize(g.order() as u64).len() <= 1) {
        let aut = automorphism_group(&Subgroup::whole(&g), &lim()).unwrap();
        let lib: BTreeSet<Vec<u32>> = aut.perms().iter().cloned().collect();
        assert_eq!(lib, brute_automorphisms(&g), "{}", g.name());
    }
}

#[test]
fn commuting_singletons_match_p_element_classes() {
    let expected: &[(&str, u32, usize)] =
        &[("symmetric(3)", 3, 2), ("sl23", 3, 3), ("sl23", 2, 3), ("symmetric(4)", 2, 4), ("alternating(5)", 5, 3)];
    for &(name, p, count) in expected {
        let g = build_str(name).unwrap();
        assert_eq!(p_element_classes(&g, p), count);
    }
    for g in small_catalog(200) {
        for (p, _) in factorize(g.order() as u64) {
            let direct = p_element_classes(&g, p);
            let lib = rep_zpn_classes(1, &Subgroup::whole(&g), p, &lim()).unwrap().class_count();
            assert_eq!(lib, direct, "{} at {p}", g.name());
        }
    }
}

#[test]
fn cyclic_rep_classes_match_element_classes() {
    for g in small_catalog(60) {
        for n in [2u32, 3, 4] {
            let a = Subgroup::whole(&build_str(&format!("cyclic({n})")).unwrap());
            let lib = rep_classes(&a, &Subgroup::whole(&g), &lim()).unwrap().class_count();
            let direct = classes_where(&g, |x| n % g.elem_order(x) == 0);
            assert_eq!(lib, direct, "Rep(C{n}, {})", g.name());
        }
    }
}

#[test]
fn transporter_hom_sets_match_naive_conjugation() {
    for name in ["sl23", "symmetric(4)", "alternating(5)", "gn(1)", "affine_frobenius(8)"] {
        let g = build_str(name).unwrap();
        for (p, _) in factorize(g.order() as u64) {
            let s = sylow_subgroup(&g, p).unwrap();
            let fs = FusionSystem::transporter(p, &s, &Subgroup::whole(&g), &lim()).unwrap();
            for q in fs.subgroups() {
                let naive: BTreeSet<Vec<Elem>> = g
                    .elements()
                    .map(|x| q.elements().iter().map(|&y| g.conj(x, y)).collect::<Vec<_>>())
                    .filter(|img| img.iter().all(|&y| s.contains(y)))
                    .collect();
                let lib: BTreeSet<Vec<Elem>> = fs.hom_set(q, &s).unwrap().iter().map(|m| m.images().to_vec()).collect();
                assert_eq!(lib, naive, "{name} p={p} {}", q.describe());
            }
        }
    }
}
