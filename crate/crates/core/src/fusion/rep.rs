//! `Rep(A, G) = Hom(A, G)/G` and `Rep(A, F) = Hom(A, S)/F`, with each
//! homomorphism recorded by its tuple of generator images.

use std::collections::HashMap;
use std::ops::ControlFlow;

use super::FusionSystem;
use crate::error::{Error, Result};
use crate::group::{is_power_of, Elem};
use crate::hom::{generating_sequence, GroupMap, HomKind, HomSearch};
use crate::limits::Limits;
use crate::subgroup::Subgroup;

/// Conjugacy classes of tuples; `classes[i]` is the lexicographically least
/// tuple of class `i`.
#[derive(Clone, Debug)]
pub struct RepClassSet {
    pub source: String,
    /// Generators of the source group whose images form the tuples (empty
    /// for commuting-tuple classes, where the tuple is the data).
    pub gens: Vec<Elem>,
    pub classes: Vec<Vec<Elem>>,
    class_of: HashMap<Vec<Elem>, usize>,
}

impl RepClassSet {
    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    /// Number of tuples (homomorphisms) before taking classes.
    pub fn tuple_count(&self) -> usize {
        self.class_of.len()
    }

    pub fn class_of(&self, tuple: &[Elem]) -> Option<usize> {
        self.class_of.get(tuple).copied()
    }

    /// Pushes every class of `self` forward along `phi` (applied entrywise) into
    /// `target`, returning `(injective, surjective)` for the induced map.
    pub fn push_forward(&self, phi: &GroupMap, target: &RepClassSet) -> Result<(bool, bool)> {
        let mut hit = vec![false; target.class_count()];
        let mut injective = true;
        for rep in &self.classes {
            let image = rep
                .iter()
                .map(|&x| phi.apply(x))
                .collect::<Option<Vec<_>>>()
                .ok_or_else(|| Error::NotContained { what: "tuple entry".into(), of: phi.source().describe() })?;
            let c = target
                .class_of(&image)
                .ok_or_else(|| Error::InvariantViolation("pushed-forward tuple has no class".into()))?;
            injective &= !std::mem::replace(&mut hit[c], true);
        }
        Ok((injective, hit.iter().all(|&h| h)))
    }
}

/// Groups tuples (in the order given, assumed lexicographic) into orbits
/// under `act`, which lists the images of a tuple under every group element.
fn orbits(
    source: String,
    gens: Vec<Elem>,
    tuples: Vec<Vec<Elem>>,
    act: impl Fn(&[Elem]) -> Vec<Vec<Elem>>,
) -> RepClassSet {
    let mut class_of: HashMap<Vec<Elem>, usize> = HashMap::with_capacity(tuples.len());
    let mut classes = Vec::new();
    for t in tuples {
        if class_of.contains_key(&t) {
            continue;
        }
        let c = classes.len();
        for u in act(&t) {
            class_of.insert(u, c);
        }
        class_of.insert(t.clone(), c);
        classes.push(t);
    }
    RepClassSet { source, gens, classes, class_of }
}

fn conjugate_all(g: &Subgroup, t: &[Elem]) -> Vec<Vec<Elem>> {
    let grp = g.parent();
    g.elements().iter().map(|&x| t.iter().map(|&y| grp.conj(x, y)).collect()).collect()
}

/// `Rep(A, G)`: homomorphisms `A → G` up to conjugation in `G`.
pub fn rep_classes(a: &Subgroup, g: &Subgroup, limits: &Limits) -> Result<RepClassSet> {
    let gens = generating_sequence(a);
    let search = HomSearch::with_gens(a, g, HomKind::All, gens.clone());
    let tuples = collect_tuples(&search, limits.max_tuples)?;
    Ok(orbits(a.parent().name().to_string(), gens, tuples.into_iter().map(|(_, t)| t).collect(), |t| {
        conjugate_all(g, t)
    }))
}

fn collect_tuples(search: &HomSearch, cap: usize) -> Result<Vec<(Vec<Elem>, Vec<Elem>)>> {
    let mut out = Vec::new();
    let mut over = false;
    search.run(&mut |images, chosen| {
        if out.len() >= cap {
            over = true;
            return ControlFlow::Break(());
        }
        out.push((images.to_vec(), chosen.to_vec()));
        ControlFlow::Continue(())
    });
    if over {
        return Err(Error::CapExceeded { cap: "homomorphism tuples", limit: cap });
    }
    Ok(out)
}

/// `Rep(A, F)`: homomorphisms `A → S` up to post-composition with F-morphisms.
pub fn rep_classes_fusion(a: &Subgroup, fs: &FusionSystem) -> Result<RepClassSet> {
    let gens = generating_sequence(a);
    let s = fs.s().clone();
    let search = HomSearch::with_gens(a, &s, HomKind::All, gens.clone());
    let found = collect_tuples(&search, fs.limits().max_tuples)?;
    let image_of: HashMap<Vec<Elem>, usize> = found
        .iter()
        .map(|(images, t)| (t.clone(), fs.id_of_elements(images).expect("image of a homomorphism is a subgroup")))
        .collect();
    let tuples = found.into_iter().map(|(_, t)| t).collect();
    Ok(orbits(a.parent().name().to_string(), gens, tuples, |t| {
        let r = image_of[t];
        let img = &fs.lattice[r];
        fs.homs(r).iter().map(|alpha| t.iter().map(|&x| alpha.images[img.position(x).unwrap()]).collect()).collect()
    }))
}

/// Commuting `n`-tuples of p-power-order elements of `g` up to simultaneous
/// conjugation, i.e. `Rep(Z_p^n, G)`.
pub fn rep_zpn_classes(n: u32, g: &Subgroup, p: u32, limits: &Limits) -> Result<RepClassSet> {
    let grp = g.parent();
    let pel: Vec<Elem> = g.elements().iter().copied().filter(|&x| is_power_of(grp.elem_order(x) as u64, p)).collect();
    let bound = (pel.len() as u128).checked_pow(n).unwrap_or(u128::MAX);
    if bound > limits.max_tuples as u128 {
        return Err(Error::CapExceeded { cap: "commuting tuple enumeration", limit: limits.max_tuples });
    }
    let mut tuples = Vec::new();
    let mut current = Vec::with_capacity(n as usize);
    fn dfs(grp: &crate::group::Group, pel: &[Elem], n: usize, current: &mut Vec<Elem>, out: &mut Vec<Vec<Elem>>) {
        if current.len() == n {
            out.push(current.clone());
            return;
        }
        for &x in pel {
            if current.iter().all(|&y| grp.mul(x, y) == grp.mul(y, x)) {
                current.push(x);
                dfs(grp, pel, n, current, out);
                current.pop();
            }
        }
    }
    dfs(grp, &pel, n as usize, &mut current, &mut tuples);
    Ok(orbits(format!("Z_{p}^{n}"), Vec::new(), tuples, |t| conjugate_all(g, t)))
}

/// Number of conjugacy classes of p-power-order elements, as
/// `Σ |C_G(x)| / |G|` over p-elements `x`.
pub fn p_element_class_count(g: &Subgroup, p: u32) -> usize {
    let grp = g.parent();
    let total: usize = g
        .elements()
        .iter()
        .filter(|&&x| is_power_of(grp.elem_order(x) as u64, p))
        .map(|&x| g.elements().iter().filter(|&&y| grp.mul(x, y) == grp.mul(y, x)).count())
        .sum();
    total / g.order()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::build_str;

    fn whole(s: &str) -> Subgroup {
        Subgroup::whole(&build_str(s).unwrap())
    }

    #[test]
    fn rep_class_counts() {
        let l = Limits::default();
        assert_eq!(rep_classes(&whole("cyclic(5)"), &whole("cyclic(5)"), &l).unwrap().class_count(), 5);
        let c3_s3 = rep_classes(&whole("cyclic(3)"), &whole("symmetric(3)"), &l).unwrap();
        assert_eq!((c3_s3.tuple_count(), c3_s3.class_count()), (3, 2));
        let v4_q8 = rep_classes(&whole("elementary_abelian(2,2)"), &whole("quaternion8"), &l).unwrap();
        assert_eq!(v4_q8.class_count(), 4);
    }

    #[test]
    fn commuting_tuple_counts() {
        let l = Limits::default();
        assert_eq!(rep_zpn_classes(2, &whole("cyclic(1)"), 3, &l).unwrap().class_count(), 1);
        assert_eq!(rep_zpn_classes(1, &whole("symmetric(3)"), 3, &l).unwrap().class_count(), 2);
        assert_eq!(rep_zpn_classes(1, &whole("sl23"), 3, &l).unwrap().class_count(), 3);
        for g in ["sl23", "symmetric(4)", "alternating(5)"] {
            for p in [2, 3] {
                let h = whole(g);
                assert_eq!(rep_zpn_classes(1, &h, p, &l).unwrap().class_count(), p_element_class_count(&h, p));
            }
        }
    }

    #[test]
    fn fusion_classes_of_c4_into_q8() {
        let g = build_str("sl23").unwrap();
        let s = crate::catalog::embedded("quaternion8", &g).unwrap();
        let l = Limits::default();
        let c4 = whole("cyclic(4)");
        let f = FusionSystem::transporter(2, &s, &Subgroup::whole(&g), &l).unwrap();
        let f0 = FusionSystem::inner(2, &s, &l).unwrap();
        // trivial, onto Z(Q8), then injective: 3 classes under Q8, 1 under sl23
        assert_eq!(rep_classes_fusion(&c4, &f0).unwrap().class_count(), 5);
        assert_eq!(rep_classes_fusion(&c4, &f).unwrap().class_count(), 3);
    }

    #[test]
    fn tuple_cap_is_enforced() {
        let l = Limits { max_tuples: 10, ..Limits::default() };
        assert!(rep_zpn_classes(2, &whole("symmetric(4)"), 2, &l).unwrap_err().is_cap());
    }
}
