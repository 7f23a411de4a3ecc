use std::collections::{HashMap, HashSet};
use std::sync::Arc;
use std::time::Instant;

use super::FusionSystem;
use crate::error::Result;
use crate::group::{p_part, Elem, Group};
use crate::hom::AutGroup;
use crate::local::has_strongly_p_embedded;
use crate::subgroup::Subgroup;
use crate::verify::{CheckKind, VerificationReport};

/// Evaluates the Sylow and extension axioms on every subgroup of `S`.
/// The conclusion is true iff no (subgroup, axiom) failure was found.
pub fn check_saturation(fs: &FusionSystem) -> Result<VerificationReport> {
    let start = Instant::now();
    let mut report = VerificationReport::new("saturation", CheckKind::Predicate, vec![fs.describe()]);
    let n = fs.lattice.len();
    // memo: (N id, Q id) -> restrictions of Hom_F(N, S) to Q
    let mut restrictions: HashMap<(usize, usize), HashSet<Vec<Elem>>> = HashMap::new();
    let mut aut_s_cache: HashMap<usize, HashSet<Vec<u32>>> = HashMap::new();
    for q in 0..n {
        let sub = &fs.lattice[q];
        if fs.fully_normalized_id(q) {
            if !fs.fully_centralized_id(q) {
                report
                    .witness(format!("sylow axiom: {} is fully normalized but not fully centralized", sub.describe()));
            }
            let aut_s = fs.normalizer_order(q) / fs.centralizer_order(q);
            let aut_f = fs.aut_f_order(q);
            if aut_s as u64 != p_part(aut_f as u64, fs.p) {
                report.witness(format!(
                    "sylow axiom: |Aut_S({})| = {aut_s} is not the {}-part of |Aut_F| = {aut_f}",
                    sub.describe(),
                    fs.p
                ));
            }
        }
        for m in fs.homs(q).iter() {
            if !fs.fully_centralized_id(m.img) {
                continue;
            }
            let aut_s = aut_s_cache.entry(m.img).or_insert_with(|| fs.aut_s_perms(m.img));
            let n_phi = fs.n_phi_raw(q, &m.images, m.img, aut_s);
            let ni = fs.id_of_elements(n_phi.elements()).expect("N_phi lies in S");
            if ni == q {
                continue;
            }
            let set = restrictions.entry((ni, q)).or_insert_with(|| {
                let big = &fs.lattice[ni];
                let pos: Vec<usize> = sub.elements().iter().map(|&x| big.position(x).unwrap()).collect();
                fs.homs(ni).iter().map(|psi| pos.iter().map(|&i| psi.images[i]).collect()).collect()
            });
            if !set.contains(&m.images) {
                report.witness(format!(
                    "extension axiom: a map {} -> {} does not extend to N_phi = {}",
                    sub.describe(),
                    fs.lattice[m.img].describe(),
                    n_phi.describe()
                ));
                break;
            }
        }
    }
    let ok = report.witnesses.is_empty();
    Ok(report.with_outcome(true, ok).timed(start))
}

/// `Aut_F(P)/Inn(P)` as a group, with coset representatives numbered by
/// first occurrence in `AutGroup` order (so the identity coset is 0).
pub fn outer_automorphism_group(aut: &AutGroup) -> Result<Arc<Group>> {
    let n = aut.order();
    let inner: Vec<usize> = (0..n).filter(|&i| aut.is_inner(i)).collect();
    let mut label = vec![usize::MAX; n];
    let mut reps = Vec::new();
    for i in 0..n {
        if label[i] != usize::MAX {
            continue;
        }
        for &j in &inner {
            label[aut.compose(i, j)] = reps.len();
        }
        reps.push(i);
    }
    let name = format!("Out({})", aut.base().describe());
    Ok(Group::from_fn(name, reps.len(), |a, b| label[aut.compose(reps[a], reps[b])])?.into_arc())
}

/// Proper F-centric subgroups `P < S` whose outer automorphism group has a
/// strongly p-embedded subgroup, in canonical order.
pub fn essential_subgroups(fs: &FusionSystem) -> Result<Vec<Subgroup>> {
    let mut out = Vec::new();
    for q in 0..fs.lattice.len() {
        let sub = &fs.lattice[q];
        if sub.order() == fs.s.order() || !fs.centric_id(q) {
            continue;
        }
        let aut = fs.aut_f_id(q);
        if (aut.order() / aut.inner_count()) % fs.p as usize != 0 {
            continue;
        }
        let out_group = outer_automorphism_group(&aut)?;
        if has_strongly_p_embedded(&Subgroup::whole(&out_group), fs.p, &fs.limits)? {
            out.push(sub.clone());
        }
    }
    Ok(out)
}
