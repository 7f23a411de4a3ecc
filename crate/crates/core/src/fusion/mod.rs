//! Fusion systems over a fixed p-group `S`, stored as explicit morphism sets
//! `Hom_F(P, S)` for every `P ≤ S`.

mod closure;
mod rep;
mod saturation;

use std::collections::{BTreeSet, HashMap, HashSet};
use std::sync::{Arc, OnceLock};

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::group::{ensure_prime, Elem};
use crate::hom::{AutGroup, GroupMap, LocalPerm};
use crate::lattice::all_subgroups;
use crate::limits::Limits;
use crate::subgroup::{normalizer_in, Subgroup};

pub use closure::generated_closure;
pub use rep::{p_element_class_count, rep_classes, rep_classes_fusion, rep_zpn_classes, RepClassSet};

/// An injective map `P → S`, `images` aligned with `P.elements()`, landing on
/// the lattice member `img`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub(crate) struct Morph {
    pub images: Vec<Elem>,
    pub img: usize,
}

#[derive(Clone, Debug)]
pub enum Realization {
    /// Conjugation by the elements of `ambient`, a subgroup of the common parent containing `S`.
    Transporter { ambient: Subgroup },
    /// The closure of the listed generators together with conjugation by `S`.
    Generated { generators: Vec<GroupMap> },
}

pub struct FusionSystem {
    p: u32,
    s: Subgroup,
    lattice: Vec<Subgroup>,
    ids: HashMap<FixedBitSet, usize>,
    realization: Realization,
    homs: Vec<OnceLock<Arc<Vec<Morph>>>>,
    normalizer_orders: OnceLock<Vec<usize>>,
    centralizer_orders: OnceLock<Vec<usize>>,
    limits: Limits,
}

impl std::fmt::Debug for FusionSystem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "FusionSystem({})", self.describe())
    }
}

impl FusionSystem {
    fn skeleton(p: u32, s: &Subgroup, realization: Realization, limits: &Limits) -> Result<FusionSystem> {
        ensure_prime(p)?;
        if !s.is_trivial() && !s.is_p_group(p) {
            return Err(Error::NotPrimePower { order: s.order() });
        }
        let lattice = all_subgroups(s, limits)?;
        let ids = lattice.iter().enumerate().map(|(i, q)| (q.members().clone(), i)).collect();
        let homs = (0..lattice.len()).map(|_| OnceLock::new()).collect();
        Ok(FusionSystem {
            p,
            s: s.clone(),
            lattice,
            ids,
            realization,
            homs,
            normalizer_orders: OnceLock::new(),
            centralizer_orders: OnceLock::new(),
            limits: limits.clone(),
        })
    }

    /// `F_S(G)` for `S ≤ G`; `S` need not be Sylow in `G`.
    pub fn transporter(p: u32, s: &Subgroup, ambient: &Subgroup, limits: &Limits) -> Result<FusionSystem> {
        s.check_parent(ambient)?;
        if !s.is_subgroup_of(ambient) {
            return Err(Error::NotContained { what: s.describe(), of: ambient.describe() });
        }
        FusionSystem::skeleton(p, s, Realization::Transporter { ambient: ambient.clone() }, limits)
    }

    /// `F_S(S)`.
    pub fn inner(p: u32, s: &Subgroup, limits: &Limits) -> Result<FusionSystem> {
        FusionSystem::transporter(p, s, s, limits)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn s(&self) -> &Subgroup {
        &self.s
    }

    pub fn limits(&self) -> &Limits {
        &self.limits
    }

    pub fn realization(&self) -> &Realization {
        &self.realization
    }

    /// All subgroups of `S` in canonical order.
    pub fn subgroups(&self) -> &[Subgroup] {
        &self.lattice
    }

    pub fn describe(&self) -> String {
        let g = self.s.parent().name();
        match &self.realization {
            Realization::Transporter { ambient } if ambient.is_whole() => {
                format!("F_S({g}) on S = {}", self.s.describe())
            }
            Realization::Transporter { ambient } => {
                format!("F_S({}) on S = {} in {g}", ambient.describe(), self.s.describe())
            }
            Realization::Generated { generators } => {
                format!("generated by {} maps on S = {} in {g}", generators.len(), self.s.describe())
            }
        }
    }

    /// Lattice index of a subgroup of `S`.
    pub fn id(&self, q: &Subgroup) -> Result<usize> {
        if !q.same_parent(&self.s) {
            return Err(Error::ParentMismatch);
        }
        self.ids
            .get(q.members())
            .copied()
            .ok_or_else(|| Error::NotContained { what: q.describe(), of: self.s.describe() })
    }

    pub(crate) fn id_of_elements(&self, elems: &[Elem]) -> Option<usize> {
        let mut bits = FixedBitSet::with_capacity(self.s.parent().order());
        for &x in elems {
            bits.insert(x as usize);
        }
        self.ids.get(&bits).copied()
    }

    /// `Hom_F(lattice[q], S)`, sorted by image vectors.
    pub(crate) fn homs(&self, q: usize) -> Arc<Vec<Morph>> {
        self.homs[q].get_or_init(|| Arc::new(self.transporter_homs(q))).clone()
    }

    fn transporter_homs(&self, q: usize) -> Vec<Morph> {
        let Realization::Transporter { ambient } = &self.realization else {
            unreachable!("generated systems are filled at construction")
        };
        let sub = &self.lattice[q];
        let g = sub.parent();
        let gens = sub.generators();
        let mut seen: BTreeSet<Vec<Elem>> = BTreeSet::new();
        for &x in ambient.elements() {
            if gens.iter().all(|&y| self.s.contains(g.conj(x, y))) {
                seen.insert(sub.elements().iter().map(|&y| g.conj(x, y)).collect());
            }
        }
        seen.into_iter()
            .map(|images| {
                let img = self.id_of_elements(&images).expect("conjugate of a subgroup of S inside S");
                Morph { images, img }
            })
            .collect()
    }

    /// `Hom_F(P, Q)`.
    pub fn hom_set(&self, p: &Subgroup, q: &Subgroup) -> Result<Vec<GroupMap>> {
        let (pi, qi) = (self.id(p)?, self.id(q)?);
        let target = &self.lattice[qi];
        Ok(self
            .homs(pi)
            .iter()
            .filter(|m| self.lattice[m.img].is_subgroup_of(target))
            .map(|m| GroupMap::new_unchecked(p.clone(), target.clone(), m.images.clone()))
            .collect())
    }

    /// Whether `map` (source and image inside `S`) is a morphism of the system.
    pub fn contains(&self, map: &GroupMap) -> Result<bool> {
        let pi = self.id(map.source())?;
        Ok(self.homs(pi).binary_search_by(|m| m.images.as_slice().cmp(map.images())).is_ok())
    }

    /// `Aut_F(P)`.
    pub fn aut_f(&self, p: &Subgroup) -> Result<AutGroup> {
        let pi = self.id(p)?;
        Ok(self.aut_f_id(pi))
    }

    pub(crate) fn aut_f_id(&self, pi: usize) -> AutGroup {
        let sub = &self.lattice[pi];
        let perms: Vec<LocalPerm> = self
            .homs(pi)
            .iter()
            .filter(|m| m.img == pi)
            .map(|m| m.images.iter().map(|&y| sub.position(y).unwrap() as u32).collect())
            .collect();
        AutGroup::from_perms(sub.clone(), perms)
    }

    pub(crate) fn aut_f_order(&self, pi: usize) -> usize {
        self.homs(pi).iter().filter(|m| m.img == pi).count()
    }

    /// Lattice indices of the F-conjugates of `lattice[q]`.
    pub(crate) fn conjugates(&self, q: usize) -> Vec<usize> {
        let set: BTreeSet<usize> = self.homs(q).iter().map(|m| m.img).collect();
        set.into_iter().collect()
    }

    /// The F-conjugacy class of `q` as subgroups.
    pub fn conjugacy_class(&self, q: &Subgroup) -> Result<Vec<Subgroup>> {
        let qi = self.id(q)?;
        Ok(self.conjugates(qi).into_iter().map(|i| self.lattice[i].clone()).collect())
    }

    pub(crate) fn normalizer_order(&self, q: usize) -> usize {
        self.normalizer_orders.get_or_init(|| self.lattice.iter().map(|x| normalizer_in(&self.s, x).order()).collect())
            [q]
    }

    pub(crate) fn centralizer_order(&self, q: usize) -> usize {
        self.centralizer_orders.get_or_init(|| {
            let g = self.s.parent();
            self.lattice
                .iter()
                .map(|x| {
                    let gens = x.generators();
                    self.s.elements().iter().filter(|&&s| gens.iter().all(|&y| g.mul(s, y) == g.mul(y, s))).count()
                })
                .collect()
        })[q]
    }

    pub fn is_fully_normalized(&self, q: &Subgroup) -> Result<bool> {
        let qi = self.id(q)?;
        Ok(self.fully_normalized_id(qi))
    }

    pub(crate) fn fully_normalized_id(&self, q: usize) -> bool {
        let n = self.normalizer_order(q);
        self.conjugates(q).into_iter().all(|r| self.normalizer_order(r) <= n)
    }

    pub fn is_fully_centralized(&self, q: &Subgroup) -> Result<bool> {
        let qi = self.id(q)?;
        Ok(self.fully_centralized_id(qi))
    }

    pub(crate) fn fully_centralized_id(&self, q: usize) -> bool {
        let c = self.centralizer_order(q);
        self.conjugates(q).into_iter().all(|r| self.centralizer_order(r) <= c)
    }

    /// `C_S(Q') ≤ Q'` for every F-conjugate `Q'`.
    pub fn is_centric(&self, q: &Subgroup) -> Result<bool> {
        let qi = self.id(q)?;
        Ok(self.centric_id(qi))
    }

    pub(crate) fn centric_id(&self, q: usize) -> bool {
        self.conjugates(q).into_iter().all(|r| self.centralizer_order(r) == self.lattice[r].center().order())
    }

    /// `Aut_S(X)` as permutations of `X`'s element positions.
    pub(crate) fn aut_s_perms(&self, x: usize) -> HashSet<LocalPerm> {
        let sub = &self.lattice[x];
        let g = sub.parent();
        normalizer_in(&self.s, sub)
            .elements()
            .iter()
            .map(|&h| sub.elements().iter().map(|&y| sub.position(g.conj(h, y)).unwrap() as u32).collect())
            .collect()
    }

    /// `N_φ = {g ∈ N_S(Q) | φ c_g φ⁻¹ ∈ Aut_S(φ(Q))}` for an injective `φ: Q → S`.
    pub fn n_phi(&self, phi: &GroupMap) -> Result<Subgroup> {
        let qi = self.id(phi.source())?;
        if !phi.is_injective() {
            return Err(Error::Precondition("N_phi needs an injective map".into()));
        }
        let img = self
            .id_of_elements(phi.images())
            .ok_or_else(|| Error::NotContained { what: "image of phi".into(), of: self.s.describe() })?;
        Ok(self.n_phi_raw(qi, phi.images(), img, &self.aut_s_perms(img)))
    }

    pub(crate) fn n_phi_raw(&self, q: usize, images: &[Elem], img: usize, aut_s_img: &HashSet<LocalPerm>) -> Subgroup {
        let sub = &self.lattice[q];
        let target = &self.lattice[img];
        let g = sub.parent();
        // position in target -> source element
        let mut back = vec![0 as Elem; sub.order()];
        for (i, &y) in images.iter().enumerate() {
            back[target.position(y).unwrap()] = sub.elements()[i];
        }
        let members: Vec<Elem> = normalizer_in(&self.s, sub)
            .elements()
            .iter()
            .copied()
            .filter(|&x| {
                let perm: LocalPerm = back
                    .iter()
                    .map(|&src| {
                        let moved = g.conj(x, src);
                        let y = images[sub.position(moved).unwrap()];
                        target.position(y).unwrap() as u32
                    })
                    .collect();
                aut_s_img.contains(&perm)
            })
            .collect();
        Subgroup::from_elements(g, &members).expect("N_phi is a subgroup")
    }

    /// Compares `Hom(A, B)` for all `A, B` satisfying `family`; returns the
    /// first `A` (canonical order) where the systems differ.
    pub fn first_difference(
        &self,
        other: &FusionSystem,
        family: &dyn Fn(&Subgroup) -> bool,
    ) -> Result<Option<Subgroup>> {
        if self.s != other.s {
            return Err(Error::Precondition("fusion systems over different p-groups".into()));
        }
        let in_family: Vec<bool> = self.lattice.iter().map(family).collect();
        // an image can land in some B of the family iff it lies below a family member
        let covered: Vec<bool> = self
            .lattice
            .iter()
            .map(|q| self.lattice.iter().zip(&in_family).any(|(b, &f)| f && q.is_subgroup_of(b)))
            .collect();
        for (a, &f) in in_family.iter().enumerate() {
            if !f {
                continue;
            }
            let pick = |fs: &FusionSystem| -> Vec<Vec<Elem>> {
                fs.homs(a).iter().filter(|m| covered[m.img]).map(|m| m.images.clone()).collect()
            };
            if pick(self) != pick(other) {
                return Ok(Some(self.lattice[a].clone()));
            }
        }
        Ok(None)
    }

    pub fn fusion_equal_on(&self, other: &FusionSystem, family: &dyn Fn(&Subgroup) -> bool) -> Result<bool> {
        Ok(self.first_difference(other, family)?.is_none())
    }

    /// Every morphism of the system, as maps `P → S`.
    pub fn all_morphisms(&self) -> Vec<GroupMap> {
        (0..self.lattice.len())
            .flat_map(|i| {
                let homs = self.homs(i);
                let src = self.lattice[i].clone();
                homs.iter()
                    .map(|m| GroupMap::new_unchecked(src.clone(), self.s.clone(), m.images.clone()))
                    .collect::<Vec<_>>()
            })
            .collect()
    }

    /// Total number of morphisms `P → S` over all `P`.
    pub fn morphism_count(&self) -> usize {
        (0..self.lattice.len()).map(|i| self.homs(i).len()).sum()
    }
}

pub use saturation::{check_saturation, essential_subgroups, outer_automorphism_group};

/// Subgroup families used by the control-of-fusion comparisons.
pub mod family {
    use crate::subgroup::Subgroup;

    pub fn all(_: &Subgroup) -> bool {
        true
    }

    pub fn elementary_abelian(q: &Subgroup) -> bool {
        q.is_abelian() && (q.is_trivial() || q.prime().is_some_and(|p| q.exponent() == p as u64))
    }

    pub fn abelian_exponent_at_most_4(q: &Subgroup) -> bool {
        q.is_abelian() && 4 % q.exponent() == 0
    }

    pub fn abelian(q: &Subgroup) -> bool {
        q.is_abelian()
    }

    /// Elementary abelian for odd `p`, abelian of exponent dividing 4 for `p = 2`.
    pub fn small_exponent_abelian(p: u32) -> fn(&Subgroup) -> bool {
        if p == 2 {
            abelian_exponent_at_most_4
        } else {
            elementary_abelian
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{build_str, embedded};
    use crate::subgroup::normalizer;

    fn q8_in_sl23() -> (FusionSystem, FusionSystem) {
        let g = build_str("sl23").unwrap();
        let s = embedded("quaternion8", &g).unwrap();
        let l = Limits::default();
        (FusionSystem::transporter(2, &s, &Subgroup::whole(&g), &l).unwrap(), FusionSystem::inner(2, &s, &l).unwrap())
    }

    fn cyclic_fours(fs: &FusionSystem) -> Vec<Subgroup> {
        fs.subgroups().iter().filter(|q| q.order() == 4).cloned().collect()
    }

    #[test]
    fn q8_c4s_fuse_only_in_sl23() {
        let (f, f0) = q8_in_sl23();
        let c4 = cyclic_fours(&f);
        assert_eq!(c4.len(), 3);
        assert!(!f.hom_set(&c4[0], &c4[1]).unwrap().is_empty());
        assert!(f0.hom_set(&c4[0], &c4[1]).unwrap().is_empty());
        assert_eq!(f.conjugacy_class(&c4[0]).unwrap().len(), 3);
        assert!(c4.iter().all(|q| f.is_centric(q).unwrap()));
        assert!(!f.is_centric(&f.s().center()).unwrap());
    }

    #[test]
    fn aut_of_sylow_is_normalizer_over_centralizer() {
        let (f, _) = q8_in_sl23();
        // N_sl23(Q8) = sl23, C_sl23(Q8) = Z(Q8)
        assert_eq!(f.hom_set(f.s(), f.s()).unwrap().len(), 12);
        assert_eq!(f.aut_f(f.s()).unwrap().order(), 12);
        let trivial = Subgroup::trivial(f.s().parent());
        assert_eq!(f.hom_set(&trivial, &cyclic_fours(&f)[0]).unwrap().len(), 1);
    }

    #[test]
    fn agreement_families_on_q8() {
        let (f, f0) = q8_in_sl23();
        assert!(f.fusion_equal_on(&f0, &family::elementary_abelian).unwrap());
        assert!(!f.fusion_equal_on(&f0, &family::abelian_exponent_at_most_4).unwrap());
        assert!(f.fusion_equal_on(&f, &family::all).unwrap());
    }

    #[test]
    fn n_phi_of_identity_and_center() {
        let (f, _) = q8_in_sl23();
        let s = f.s();
        for q in f.subgroups() {
            let n = f.n_phi(&GroupMap::identity(q)).unwrap();
            assert_eq!(n, normalizer(s.parent(), s, q).unwrap());
        }
        let z = s.center();
        for phi in f.hom_set(&z, s).unwrap() {
            assert_eq!(&f.n_phi(&phi).unwrap(), s);
        }
    }

    #[test]
    fn transporter_and_inner_systems_are_saturated() {
        let (f, f0) = q8_in_sl23();
        assert!(check_saturation(&f).unwrap().conclusion);
        assert!(check_saturation(&f0).unwrap().conclusion);
    }

    #[test]
    fn inversion_on_c4_is_not_saturated() {
        let g = build_str("cyclic(4)").unwrap();
        let s = Subgroup::whole(&g);
        let inv = GroupMap::from_fn(s.clone(), s.clone(), |x| g.inv(x)).unwrap();
        let fs = generated_closure(2, &s, &[inv], &Limits::default()).unwrap();
        let report = check_saturation(&fs).unwrap();
        assert!(!report.conclusion);
        assert!(report.witnesses.iter().any(|w| w.starts_with("sylow axiom")));
    }

    #[test]
    fn closure_of_order_three_automorphism_is_sl23_fusion() {
        let (f, f0) = q8_in_sl23();
        let s = f.s();
        let g = s.parent();
        let t = g.elements().find(|&x| g.elem_order(x) == 3).unwrap();
        let c = GroupMap::conjugation(t, s, s).unwrap();
        let closed = generated_closure(2, s, &[c], &Limits::default()).unwrap();
        assert!(closed.fusion_equal_on(&f, &family::all).unwrap());
        assert_eq!(closed.morphism_count(), f.morphism_count());
        let inner = generated_closure(2, s, &[], &Limits::default()).unwrap();
        assert!(inner.fusion_equal_on(&f0, &family::all).unwrap());
        let again = generated_closure(2, s, &f.all_morphisms(), &Limits::default()).unwrap();
        assert!(again.fusion_equal_on(&f, &family::all).unwrap());
    }

    #[test]
    fn essentials_and_regeneration() {
        let (f, f0) = q8_in_sl23();
        assert!(essential_subgroups(&f).unwrap().is_empty());
        assert!(essential_subgroups(&f0).unwrap().is_empty());

        let g = build_str("symmetric(4)").unwrap();
        let s = crate::local::sylow_subgroup(&g, 2).unwrap();
        let l = Limits::default();
        let fs = FusionSystem::transporter(2, &s, &Subgroup::whole(&g), &l).unwrap();
        let ess = essential_subgroups(&fs).unwrap();
        assert_eq!(ess.len(), 1);
        assert!(ess[0].is_normal_in(&Subgroup::whole(&g)));
        let mut gens: Vec<GroupMap> = fs.aut_f(&s).unwrap().maps().collect();
        for e in &ess {
            gens.extend(fs.aut_f(e).unwrap().maps());
        }
        let regen = generated_closure(2, &s, &gens, &l).unwrap();
        assert!(regen.fusion_equal_on(&fs, &family::all).unwrap());
    }

    #[test]
    fn mismatched_base_is_rejected() {
        let (f, _) = q8_in_sl23();
        let g = f.s().parent();
        let c4 = cyclic_fours(&f).remove(0);
        let other = FusionSystem::inner(2, &c4, &Limits::default()).unwrap();
        assert!(f.first_difference(&other, &family::all).is_err());
        assert!(f.id(&Subgroup::whole(g)).is_err());
    }
}
