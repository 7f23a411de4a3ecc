//! Structural lemmas about saturated fusion systems, checked exhaustively on
//! catalog transporter systems.

use std::collections::BTreeSet;
use std::sync::Arc;

use pfusion_core::catalog::build_str;
use pfusion_core::fusion::{
    check_saturation, essential_subgroups, family, generated_closure, rep_classes_fusion, FusionSystem,
};
use pfusion_core::group::factorize;
use pfusion_core::hom::{homomorphisms, HomKind};
use pfusion_core::local::{is_strongly_p_embedded, sylow_containing, sylow_subgroup};
use pfusion_core::{all_subgroups, centralizer, Elem, Group, GroupMap, Limits, Subgroup};

fn lim() -> Limits {
    Limits::default()
}

const SMALL: &[&str] =
    &["symmetric(3)", "alternating(4)", "sl23", "symmetric(4)", "alternating(5)", "dihedral(18)", "gn(1)"];

fn systems(max_sylow: usize) -> Vec<FusionSystem> {
    let mut out = Vec::new();
    for name in SMALL {
        let g = build_str(name).unwrap();
        for (p, _) in factorize(g.order() as u64) {
            let s = sylow_subgroup(&g, p).unwrap();
            if s.order() <= max_sylow {
                out.push(FusionSystem::transporter(p, &s, &Subgroup::whole(&g), &lim()).unwrap());
            }
        }
    }
    out
}

fn image_of(m: &GroupMap, q: &Subgroup) -> Subgroup {
    let imgs: Vec<Elem> = q.elements().iter().map(|&x| m.apply(x).unwrap()).collect();
    Subgroup::from_elements(m.target().parent(), &imgs).unwrap()
}

/// `{c_x restricted to q, as images of q.elements()}` for `x` in `by`.
fn conj_on(q: &Subgroup, by: &Subgroup) -> BTreeSet<Vec<Elem>> {
    let g = q.parent();
    by.elements().iter().map(|&x| q.elements().iter().map(|&y| g.conj(x, y)).collect()).collect()
}

#[test]
fn restricted_monomorphisms_extend_over_the_source() {
    for fs in systems(16) {
        let s = fs.s().clone();
        for p in fs.subgroups() {
            for phi in homomorphisms(p, &s, HomKind::Injective, 100_000).unwrap() {
                let phi_p = phi.image();
                for q in fs.subgroups().iter().filter(|q| q.is_subgroup_of(p) && q.is_normal_in(p)) {
                    let psi = phi.restrict(q).unwrap();
                    let n = fs.n_phi(&psi).unwrap();
                    assert!(p.is_subgroup_of(&n), "{}: N_psi misses P", fs.describe());
                    let phi_q = image_of(&phi, q);
                    let transported: BTreeSet<Vec<Elem>> = p
                        .elements()
                        .iter()
                        .map(|&x| {
                            let c = q.elements().iter().map(|&y| p.parent().conj(x, y));
                            let mut out = vec![0; q.order()];
                            for (a, b) in q.elements().iter().zip(c) {
                                out[phi_q.position(psi.apply(*a).unwrap()).unwrap()] = psi.apply(b).unwrap();
                            }
                            out
                        })
                        .collect();
                    assert_eq!(transported, conj_on(&phi_q, &phi_p));
                }
            }
        }
    }
}

#[test]
fn normal_subgroups_with_controlled_centralizers_are_fully_centralized() {
    let mut applied = 0;
    for fs in systems(64) {
        let s = fs.s().clone();
        let g = s.parent().clone();
        for p in fs.subgroups().iter().filter(|p| fs.is_fully_normalized(p).unwrap()) {
            let aut = fs.aut_f(p).unwrap();
            for q in fs.subgroups().iter().filter(|q| q.is_subgroup_of(p) && q.is_normal_in(p)) {
                let hyp = aut.maps().all(|xi| centralizer(&g, &s, &image_of(&xi, q)).unwrap().is_subgroup_of(p));
                if hyp {
                    applied += 1;
                    assert!(fs.is_fully_centralized(q).unwrap(), "{}: {}", fs.describe(), q.describe());
                }
            }
        }
    }
    assert!(applied > 20, "{applied}");
}

#[test]
fn isomorphisms_have_inverses_in_the_system() {
    for fs in systems(64) {
        let s = fs.s().clone();
        for m in fs.all_morphisms() {
            let inv = m.inverse().unwrap().with_target(&s).unwrap();
            assert!(fs.contains(&inv).unwrap());
        }
    }
}

#[test]
fn catalog_transporter_systems_are_saturated() {
    for fs in systems(64) {
        let r = check_saturation(&fs).unwrap();
        assert!(r.conclusion, "{}: {:?}", fs.describe(), r.witnesses);
    }
}

#[test]
fn essentials_and_sylow_automorphisms_regenerate() {
    for fs in systems(64) {
        let s = fs.s().clone();
        let mut gens: Vec<GroupMap> = fs.aut_f(&s).unwrap().maps().collect();
        for e in essential_subgroups(&fs).unwrap() {
            gens.extend(fs.aut_f(&e).unwrap().maps().map(|m| m.with_target(&s).unwrap()));
        }
        let regen = generated_closure(fs.p(), &s, &gens, &lim()).unwrap();
        assert!(regen.fusion_equal_on(&fs, &family::all).unwrap(), "{}", fs.describe());
    }
}

/// Subsystems `F_T(H) ≤ F_S(S4)` for subgroups `H` whose Sylow 2-subgroup lies in `S`.
fn s4_subsystems() -> (FusionSystem, Vec<FusionSystem>) {
    let g = build_str("symmetric(4)").unwrap();
    let s = sylow_subgroup(&g, 2).unwrap();
    let f = FusionSystem::transporter(2, &s, &Subgroup::whole(&g), &lim()).unwrap();
    let mut subs = Vec::new();
    for h in all_subgroups(&Subgroup::whole(&g), &lim()).unwrap() {
        let t = sylow_containing(&h, 2, &Subgroup::trivial(&g));
        if t.is_subgroup_of(&s) {
            subs.push(FusionSystem::transporter(2, &t, &h, &lim()).unwrap());
        }
    }
    (f, subs)
}

fn test_sources() -> Vec<Arc<Group>> {
    ["cyclic(2)", "cyclic(4)", "elementary_abelian(2,2)", "direct(cyclic(4),cyclic(2))"]
        .iter()
        .map(|n| build_str(n).unwrap())
        .collect()
}

#[test]
fn rep_map_of_a_subsystem_matches_its_image_criteria() {
    let (f, subs) = s4_subsystems();
    let s = f.s().clone();
    let mut outcomes = BTreeSet::new();
    for sub in &subs {
        let t = sub.s().clone();
        let inc = GroupMap::inclusion(&t, &s).unwrap();
        for a in test_sources() {
            let a = Subgroup::whole(&a);
            let small = rep_classes_fusion(&a, sub).unwrap();
            let big = rep_classes_fusion(&a, &f).unwrap();
            let (inj, surj) = small.push_forward(&inc, &big).unwrap();

            let images_in_s: Vec<Subgroup> =
                homomorphisms(&a, &s, HomKind::All, 100_000).unwrap().iter().map(|m| m.image()).collect();
            let every_image_lands = images_in_s
                .iter()
                .all(|r| f.hom_set(r, &s).unwrap().iter().any(|m| m.images().iter().all(|&y| t.contains(y))));
            assert_eq!(surj, every_image_lands, "surjectivity for {} into {}", a.parent().name(), sub.describe());

            let images_in_t: BTreeSet<Vec<Elem>> = homomorphisms(&a, &t, HomKind::All, 100_000)
                .unwrap()
                .iter()
                .map(|m| m.image().elements().to_vec())
                .collect();
            let controls = images_in_t.iter().all(|elems| {
                let q = Subgroup::from_elements(t.parent(), elems).unwrap();
                let lhs: Vec<Vec<Elem>> = f.hom_set(&q, &t).unwrap().iter().map(|m| m.images().to_vec()).collect();
                let rhs: Vec<Vec<Elem>> = sub.hom_set(&q, &t).unwrap().iter().map(|m| m.images().to_vec()).collect();
                lhs == rhs
            });
            assert_eq!(inj, controls, "injectivity for {} into {}", a.parent().name(), sub.describe());
            outcomes.insert((inj, surj));
        }
    }
    assert!(outcomes.len() >= 3, "{outcomes:?}");
}

#[test]
fn proper_overgroups_of_strongly_embedded_subgroups_are_strongly_embedded() {
    let mut seen = 0;
    for name in
        ["symmetric(3)", "alternating(4)", "dihedral(10)", "alternating(5)", "affine_frobenius(8)", "dihedral(18)"]
    {
        let g = build_str(name).unwrap();
        let w = Subgroup::whole(&g);
        let subs = all_subgroups(&w, &lim()).unwrap();
        for (p, _) in factorize(g.order() as u64) {
            for h in subs.iter().filter(|h| is_strongly_p_embedded(h, &w, p).unwrap()) {
                seen += 1;
                for k in subs.iter().filter(|k| h.is_subgroup_of(k) && k.order() < g.order()) {
                    assert!(
                        is_strongly_p_embedded(k, &w, p).unwrap(),
                        "{name}: {} over {}",
                        k.describe(),
                        h.describe()
                    );
                }
            }
        }
    }
    assert!(seen > 0);
}
