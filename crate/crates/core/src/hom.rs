//! Homomorphisms stored as explicit element maps, backtracking search for
//! homomorphisms / embeddings / automorphisms, and explicit automorphism groups.

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::ControlFlow;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::group::{Elem, Group};
use crate::limits::Limits;
use crate::subgroup::Subgroup;

/// A homomorphism `source → target`, with `images[i]` the image of
/// `source.elements()[i]`.
#[derive(Clone)]
pub struct GroupMap {
    source: Subgroup,
    target: Subgroup,
    images: Vec<Elem>,
}

impl GroupMap {
    /// Validates that `images` defines a homomorphism into `target`.
    pub fn new(source: Subgroup, target: Subgroup, images: Vec<Elem>) -> Result<GroupMap> {
        if images.len() != source.order() {
            return Err(Error::NotHomomorphism(format!(
                "{} images for a source of order {}",
                images.len(),
                source.order()
            )));
        }
        if let Some(&y) = images.iter().find(|&&y| !target.contains(y)) {
            return Err(Error::NotHomomorphism(format!("image {y} lies outside the target")));
        }
        let map = GroupMap { source, target, images };
        let (sg, tg) = (map.source.parent().clone(), map.target.parent().clone());
        for &g in &map.source.generators() {
            let hg = map.images[map.source.position(g).unwrap()];
            for (i, &x) in map.source.elements().iter().enumerate() {
                let lhs = map.images[map.source.position(sg.mul(x, g)).unwrap()];
                if lhs != tg.mul(map.images[i], hg) {
                    return Err(Error::NotHomomorphism(format!("fails on {x}*{g}")));
                }
            }
        }
        Ok(map)
    }

    pub(crate) fn new_unchecked(source: Subgroup, target: Subgroup, images: Vec<Elem>) -> GroupMap {
        debug_assert_eq!(images.len(), source.order());
        GroupMap { source, target, images }
    }

    pub fn from_fn(source: Subgroup, target: Subgroup, f: impl Fn(Elem) -> Elem) -> Result<GroupMap> {
        let images = source.elements().iter().map(|&x| f(x)).collect();
        GroupMap::new(source, target, images)
    }

    pub fn identity(sub: &Subgroup) -> GroupMap {
        GroupMap::new_unchecked(sub.clone(), sub.clone(), sub.elements().to_vec())
    }

    /// Inclusion of `sub` into `target` (same parent).
    pub fn inclusion(sub: &Subgroup, target: &Subgroup) -> Result<GroupMap> {
        if !sub.is_subgroup_of(target) {
            return Err(Error::NotContained { what: sub.describe(), of: target.describe() });
        }
        Ok(GroupMap::new_unchecked(sub.clone(), target.clone(), sub.elements().to_vec()))
    }

    /// `c_g|_source : x ↦ g x g⁻¹`, into `target`.
    pub fn conjugation(g: Elem, source: &Subgroup, target: &Subgroup) -> Result<GroupMap> {
        source.check_parent(target)?;
        let grp = source.parent();
        let images: Vec<Elem> = source.elements().iter().map(|&x| grp.conj(g, x)).collect();
        if images.iter().any(|&y| !target.contains(y)) {
            return Err(Error::NotContained { what: format!("c_{g}(source)"), of: target.describe() });
        }
        Ok(GroupMap::new_unchecked(source.clone(), target.clone(), images))
    }

    pub fn source(&self) -> &Subgroup {
        &self.source
    }

    pub fn target(&self) -> &Subgroup {
        &self.target
    }

    pub fn images(&self) -> &[Elem] {
        &self.images
    }

    pub fn apply(&self, x: Elem) -> Option<Elem> {
        self.source.position(x).map(|i| self.images[i])
    }

    pub fn image(&self) -> Subgroup {
        let tg = self.target.parent();
        Subgroup::from_closed(tg, Subgroup::bitset_of(tg, self.images.iter().copied()))
    }

    pub fn kernel(&self) -> Subgroup {
        let sg = self.source.parent();
        let ker = self.source.elements().iter().zip(&self.images).filter(|(_, &y)| y == 0).map(|(&x, _)| x);
        Subgroup::from_closed(sg, Subgroup::bitset_of(sg, ker))
    }

    pub fn is_injective(&self) -> bool {
        self.images.iter().filter(|&&y| y == 0).count() == 1
    }

    /// `self ∘ first`; requires `first`'s image to lie in `self`'s source.
    pub fn compose(&self, first: &GroupMap) -> Result<GroupMap> {
        let images = first
            .images
            .iter()
            .map(|&y| self.apply(y))
            .collect::<Option<Vec<_>>>()
            .filter(|_| first.target.same_parent(&self.source))
            .ok_or_else(|| Error::NotContained { what: "image of the first map".into(), of: self.source.describe() })?;
        Ok(GroupMap::new_unchecked(first.source.clone(), self.target.clone(), images))
    }

    pub fn restrict(&self, sub: &Subgroup) -> Result<GroupMap> {
        if !sub.is_subgroup_of(&self.source) {
            return Err(Error::NotContained { what: sub.describe(), of: self.source.describe() });
        }
        let images = sub.elements().iter().map(|&x| self.apply(x).unwrap()).collect();
        Ok(GroupMap::new_unchecked(sub.clone(), self.target.clone(), images))
    }

    pub fn with_target(&self, target: &Subgroup) -> Result<GroupMap> {
        if !self.target.same_parent(target) || self.images.iter().any(|&y| !target.contains(y)) {
            return Err(Error::NotContained { what: "image".into(), of: target.describe() });
        }
        Ok(GroupMap::new_unchecked(self.source.clone(), target.clone(), self.images.clone()))
    }

    /// The inverse isomorphism `image → source` of an injective map.
    pub fn inverse(&self) -> Result<GroupMap> {
        if !self.is_injective() {
            return Err(Error::Precondition("inverse of a non-injective map".into()));
        }
        let image = self.image();
        let mut images = vec![0; image.order()];
        for (i, &y) in self.images.iter().enumerate() {
            images[image.position(y).unwrap()] = self.source.elements()[i];
        }
        Ok(GroupMap::new_unchecked(image, self.source.clone(), images))
    }
}

impl PartialEq for GroupMap {
    fn eq(&self, other: &Self) -> bool {
        self.source == other.source && self.target == other.target && self.images == other.images
    }
}

impl Eq for GroupMap {}

impl Hash for GroupMap {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.source.hash(state);
        self.images.hash(state);
    }
}

impl fmt::Debug for GroupMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pairs: Vec<_> = self.source.elements().iter().zip(&self.images).map(|(a, b)| format!("{a}->{b}")).collect();
        write!(f, "GroupMap[{}]", pairs.join(","))
    }
}

/// Generating sequence used by the homomorphism search: a minimal one through
/// the Frattini quotient for p-groups, the greedy one otherwise.
pub fn generating_sequence(p: &Subgroup) -> Vec<Elem> {
    let Some(prime) = p.prime() else {
        return p.generators();
    };
    let g = p.parent();
    let mut current = p.derived_subgroup();
    for &x in p.elements() {
        let xp = g.pow(x, prime as u64);
        if !current.contains(xp) {
            current = current.join_elem(xp);
        }
    }
    let mut gens = Vec::new();
    for &x in p.elements() {
        if current.order() == p.order() {
            break;
        }
        if !current.contains(x) {
            gens.push(x);
            current = current.join_elem(x);
        }
    }
    gens
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum HomKind {
    All,
    Injective,
}

/// Backtracking enumeration of homomorphisms `source → target` over images
/// of a fixed generating sequence, pruning on element orders and on
/// conflicts in the partially defined map.
pub struct HomSearch<'a> {
    source: &'a Subgroup,
    gens: Vec<Elem>,
    candidates: Vec<Vec<Elem>>,
    kind: HomKind,
    sg: &'a Group,
    tg: &'a Group,
}

impl<'a> HomSearch<'a> {
    pub fn new(source: &'a Subgroup, target: &'a Subgroup, kind: HomKind) -> HomSearch<'a> {
        HomSearch::with_gens(source, target, kind, generating_sequence(source))
    }

    pub fn with_gens(source: &'a Subgroup, target: &'a Subgroup, kind: HomKind, gens: Vec<Elem>) -> HomSearch<'a> {
        let sg = source.parent();
        let tg = target.parent();
        let candidates = gens
            .iter()
            .map(|&g| {
                let n = sg.elem_order(g);
                target
                    .elements()
                    .iter()
                    .copied()
                    .filter(|&h| match kind {
                        HomKind::All => n % tg.elem_order(h) == 0,
                        HomKind::Injective => tg.elem_order(h) == n,
                    })
                    .collect()
            })
            .collect();
        HomSearch { source, gens, candidates, kind, sg: sg.as_ref(), tg: tg.as_ref() }
    }

    pub fn gens(&self) -> &[Elem] {
        &self.gens
    }

    /// Calls `visit` with the image vector (aligned with `source.elements()`)
    /// of every homomorphism, in lexicographic order of generator images.
    pub fn run(&self, visit: &mut dyn FnMut(&[Elem], &[Elem]) -> ControlFlow<()>) {
        if self.kind == HomKind::Injective && self.source.order() > 1 && self.candidates.iter().any(Vec::is_empty) {
            return;
        }
        let mut scratch = vec![Elem::MAX; self.sg.order()];
        let mut used = FixedBitSet::with_capacity(self.tg.order());
        let mut chosen = Vec::with_capacity(self.gens.len());
        let _ = self.dfs(0, &mut chosen, &mut scratch, &mut used, visit);
    }

    fn dfs(
        &self,
        depth: usize,
        chosen: &mut Vec<Elem>,
        scratch: &mut Vec<Elem>,
        used: &mut FixedBitSet,
        visit: &mut dyn FnMut(&[Elem], &[Elem]) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        if depth == self.gens.len() {
            if !self.extend(chosen, scratch, used) {
                return ControlFlow::Continue(());
            }
            let images: Vec<Elem> = self.source.elements().iter().map(|&x| scratch[x as usize]).collect();
            return visit(&images, chosen);
        }
        for &h in &self.candidates[depth] {
            chosen.push(h);
            let ok = depth + 1 == self.gens.len() || self.extend(chosen, scratch, used);
            let flow = if ok { self.dfs(depth + 1, chosen, scratch, used, visit) } else { ControlFlow::Continue(()) };
            chosen.pop();
            flow?;
        }
        ControlFlow::Continue(())
    }

    /// Defines the map on `⟨gens[..chosen.len()]⟩` by BFS and reports whether it
    /// is a consistent (and, if required, injective) homomorphism there.
    fn extend(&self, chosen: &[Elem], scratch: &mut [Elem], used: &mut FixedBitSet) -> bool {
        scratch.fill(Elem::MAX);
        used.clear();
        let gens = &self.gens[..chosen.len()];
        scratch[0] = 0;
        used.insert(0);
        let mut queue = vec![0 as Elem];
        let mut head = 0;
        while head < queue.len() {
            let x = queue[head];
            head += 1;
            let fx = scratch[x as usize];
            for (&g, &h) in gens.iter().zip(chosen) {
                let y = self.sg.mul(x, g);
                let fy = self.tg.mul(fx, h);
                match scratch[y as usize] {
                    Elem::MAX => {
                        if self.kind == HomKind::Injective && used.put(fy as usize) {
                            return false;
                        }
                        scratch[y as usize] = fy;
                        queue.push(y);
                    }
                    prev if prev != fy => return false,
                    _ => {}
                }
            }
        }
        true
    }
}

/// All homomorphisms `source → target` as maps, failing beyond `cap` maps.
pub fn homomorphisms(source: &Subgroup, target: &Subgroup, kind: HomKind, cap: usize) -> Result<Vec<GroupMap>> {
    let search = HomSearch::new(source, target, kind);
    let mut out = Vec::new();
    let mut over = false;
    search.run(&mut |images, _| {
        if out.len() >= cap {
            over = true;
            return ControlFlow::Break(());
        }
        out.push(GroupMap::new_unchecked(source.clone(), target.clone(), images.to_vec()));
        ControlFlow::Continue(())
    });
    if over {
        return Err(Error::CapExceeded { cap: "homomorphism enumeration", limit: cap });
    }
    Ok(out)
}

/// The first injective homomorphism `source → target` in search order.
pub fn find_embedding(source: &Subgroup, target: &Subgroup) -> Option<GroupMap> {
    if target.order() % source.order() != 0 {
        return None;
    }
    let search = HomSearch::new(source, target, HomKind::Injective);
    let mut found = None;
    search.run(&mut |images, _| {
        found = Some(GroupMap::new_unchecked(source.clone(), target.clone(), images.to_vec()));
        ControlFlow::Break(())
    });
    found
}

pub fn are_isomorphic(a: &Subgroup, b: &Subgroup) -> bool {
    a.order() == b.order() && find_embedding(a, b).is_some()
}

/// A permutation of the positions `0..|base|` of a subgroup's element list.
pub type LocalPerm = Vec<u32>;

/// The full automorphism group of a subgroup, as explicit permutations of its
/// element positions. Index 0 is the identity.
pub struct AutGroup {
    base: Subgroup,
    perms: Vec<LocalPerm>,
    index: HashMap<LocalPerm, usize>,
    inner: Vec<bool>,
}

impl AutGroup {
    /// Wraps a set of automorphisms already known to be closed under composition.
    pub(crate) fn from_perms(base: Subgroup, mut perms: Vec<LocalPerm>) -> AutGroup {
        perms.sort();
        perms.dedup();
        let index = perms.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
        let inner_set: std::collections::HashSet<LocalPerm> =
            base.elements().iter().map(|&g| conjugation_perm(&base, g)).collect();
        let inner = perms.iter().map(|p| inner_set.contains(p)).collect();
        AutGroup { base, perms, index, inner }
    }

    pub fn base(&self) -> &Subgroup {
        &self.base
    }

    pub fn order(&self) -> usize {
        self.perms.len()
    }

    pub fn perm(&self, i: usize) -> &LocalPerm {
        &self.perms[i]
    }

    pub fn perms(&self) -> &[LocalPerm] {
        &self.perms
    }

    pub fn index_of(&self, perm: &[u32]) -> Option<usize> {
        self.index.get(perm).copied()
    }

    pub fn is_inner(&self, i: usize) -> bool {
        self.inner[i]
    }

    pub fn inner_count(&self) -> usize {
        self.inner.iter().filter(|&&b| b).count()
    }

    pub fn map(&self, i: usize) -> GroupMap {
        let el = self.base.elements();
        let images = self.perms[i].iter().map(|&j| el[j as usize]).collect();
        GroupMap::new_unchecked(self.base.clone(), self.base.clone(), images)
    }

    pub fn maps(&self) -> impl Iterator<Item = GroupMap> + '_ {
        (0..self.order()).map(|i| self.map(i))
    }

    /// `i ∘ j`.
    pub fn compose(&self, i: usize, j: usize) -> usize {
        let c = compose_perms(&self.perms[i], &self.perms[j]);
        self.index[&c]
    }

    pub fn element_order(&self, i: usize) -> u64 {
        perm_order(&self.perms[i])
    }

    /// Whether automorphism `i` maps `sub` onto itself.
    pub fn stabilizes(&self, i: usize, sub: &Subgroup) -> bool {
        let el = self.base.elements();
        let perm = &self.perms[i];
        sub.elements().iter().all(|&x| sub.contains(el[perm[self.base.position(x).unwrap()] as usize]))
    }

    /// Whether automorphism `i` fixes every element of `sub`.
    pub fn fixes_pointwise(&self, i: usize, sub: &Subgroup) -> bool {
        let perm = &self.perms[i];
        sub.elements().iter().all(|&x| {
            let pos = self.base.position(x).unwrap();
            perm[pos] as usize == pos
        })
    }

    /// Subgroups of the base that every automorphism maps onto themselves.
    pub fn is_characteristic(&self, sub: &Subgroup) -> bool {
        (0..self.order()).all(|i| self.stabilizes(i, sub))
    }

    /// Indices of automorphisms whose order is prime to `p`, excluding the identity.
    pub fn nontrivial_p_prime(&self, p: u32) -> Vec<usize> {
        (1..self.order()).filter(|&i| self.element_order(i) % p as u64 != 0).collect()
    }
}

impl fmt::Debug for AutGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AutGroup(order {} of {:?})", self.order(), self.base)
    }
}

pub(crate) fn conjugation_perm(base: &Subgroup, g: Elem) -> LocalPerm {
    let grp = base.parent();
    base.elements().iter().map(|&x| base.position(grp.conj(g, x)).unwrap() as u32).collect()
}

pub(crate) fn compose_perms(a: &[u32], b: &[u32]) -> LocalPerm {
    b.iter().map(|&j| a[j as usize]).collect()
}

pub(crate) fn invert_perm(a: &[u32]) -> LocalPerm {
    let mut out = vec![0; a.len()];
    for (i, &j) in a.iter().enumerate() {
        out[j as usize] = i as u32;
    }
    out
}

pub(crate) fn perm_order(a: &[u32]) -> u64 {
    let mut seen = vec![false; a.len()];
    let mut order = 1u64;
    for start in 0..a.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0u64;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = a[i] as usize;
            len += 1;
        }
        order = num_lcm(order, len);
    }
    order
}

fn num_lcm(a: u64, b: u64) -> u64 {
    let (mut x, mut y) = (a, b);
    while y != 0 {
        (x, y) = (y, x % y);
    }
    a / x * b
}

/// The complete automorphism group of `p`.
pub fn automorphism_group(p: &Subgroup, limits: &Limits) -> Result<AutGroup> {
    if p.order() > limits.max_aut_base {
        return Err(Error::CapExceeded { cap: "automorphism base order", limit: limits.max_aut_base });
    }
    let search = HomSearch::new(p, p, HomKind::Injective);
    let mut perms = Vec::new();
    let mut over = false;
    search.run(&mut |images, _| {
        if perms.len() >= limits.max_automorphisms {
            over = true;
            return ControlFlow::Break(());
        }
        perms.push(images.iter().map(|&y| p.position(y).unwrap() as u32).collect::<LocalPerm>());
        ControlFlow::Continue(())
    });
    if over {
        return Err(Error::CapExceeded { cap: "automorphism count", limit: limits.max_automorphisms });
    }
    Ok(AutGroup::from_perms(p.clone(), perms))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::Arc;

    fn cyclic(n: usize) -> Arc<Group> {
        Group::from_fn(format!("C{n}"), n, |a, b| (a + b) % n).unwrap().into_arc()
    }

    #[test]
    fn aut_of_cyclic_prime() {
        for p in [2usize, 3, 5, 7] {
            let g = cyclic(p);
            let aut = automorphism_group(&Subgroup::whole(&g), &Limits::default()).unwrap();
            assert_eq!(aut.order(), p - 1);
            assert_eq!(aut.inner_count(), 1);
        }
    }

    #[test]
    fn aut_of_klein_is_gl22() {
        let g = Group::from_fn("V4", 4, |a, b| a ^ b).unwrap().into_arc();
        let aut = automorphism_group(&Subgroup::whole(&g), &Limits::default()).unwrap();
        assert_eq!(aut.order(), 6);
        assert_eq!(aut.perm(0), &vec![0, 1, 2, 3]);
    }

    #[test]
    fn homs_c4_to_c2() {
        let a = cyclic(4);
        let b = cyclic(2);
        let homs = homomorphisms(&Subgroup::whole(&a), &Subgroup::whole(&b), HomKind::All, 100).unwrap();
        assert_eq!(homs.len(), 2);
        assert_eq!(homs[1].kernel().order(), 2);
    }

    #[test]
    fn map_algebra() {
        let g = cyclic(6);
        let whole = Subgroup::whole(&g);
        let double = GroupMap::from_fn(whole.clone(), whole.clone(), |x| (2 * x) % 6).unwrap();
        assert!(!double.is_injective());
        assert_eq!(double.image().order(), 3);
        let neg = GroupMap::from_fn(whole.clone(), whole.clone(), |x| (6 - x) % 6).unwrap();
        assert_eq!(neg.compose(&neg).unwrap(), GroupMap::identity(&whole));
        assert_eq!(neg.inverse().unwrap(), neg);
        assert!(GroupMap::from_fn(whole.clone(), whole, |x| (x + 1) % 6).is_err());
    }

    #[test]
    fn aut_cap() {
        let g = cyclic(9);
        let limits = Limits { max_aut_base: 8, ..Limits::default() };
        assert!(automorphism_group(&Subgroup::whole(&g), &limits).unwrap_err().is_cap());
    }
}
