//! Subgroups as element bitsets inside a shared parent group, plus the basic
//! local operations (centralizers, normalizers, transporters, ...).

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, OnceLock};

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::group::{is_power_of, prime_of_power, Elem, Group};

struct Inner {
    members: FixedBitSet,
    elements: Vec<Elem>,
    // parent element -> position in `elements`, or u32::MAX
    local: OnceLock<Vec<u32>>,
    gens: OnceLock<Vec<Elem>>,
}

/// A subgroup of a parent [`Group`].
///
/// Equality and hashing use the parent identity (pointer) and the member set.
/// The ordering is the canonical one used for every sorted output in this
/// crate: by order, then lexicographically by the sorted element list.
#[derive(Clone)]
pub struct Subgroup {
    parent: Arc<Group>,
    inner: Arc<Inner>,
}

impl Subgroup {
    fn from_bitset(parent: &Arc<Group>, members: FixedBitSet) -> Subgroup {
        let elements = members.ones().map(|i| i as Elem).collect();
        Subgroup {
            parent: parent.clone(),
            inner: Arc::new(Inner { members, elements, local: OnceLock::new(), gens: OnceLock::new() }),
        }
    }

    pub fn whole(parent: &Arc<Group>) -> Subgroup {
        let mut bits = FixedBitSet::with_capacity(parent.order());
        bits.insert_range(..);
        Subgroup::from_bitset(parent, bits)
    }

    pub fn trivial(parent: &Arc<Group>) -> Subgroup {
        let mut bits = FixedBitSet::with_capacity(parent.order());
        bits.insert(0);
        Subgroup::from_bitset(parent, bits)
    }

    /// The subgroup generated by `gens`.
    pub fn generated(parent: &Arc<Group>, gens: &[Elem]) -> Subgroup {
        let mut bits = FixedBitSet::with_capacity(parent.order());
        bits.insert(0);
        close_under(parent, &mut bits, vec![0], gens);
        Subgroup::from_bitset(parent, bits)
    }

    /// Checks that `elements` form a subgroup of `parent`.
    pub fn from_elements(parent: &Arc<Group>, elements: &[Elem]) -> Result<Subgroup> {
        let mut bits = FixedBitSet::with_capacity(parent.order());
        for &x in elements {
            if x as usize >= parent.order() {
                return Err(Error::NotContained { what: format!("element {x}"), of: parent.name().into() });
            }
            bits.insert(x as usize);
        }
        Subgroup::from_members(parent, bits)
    }

    /// Checks that the bitset is a subgroup of `parent`.
    pub fn from_members(parent: &Arc<Group>, members: FixedBitSet) -> Result<Subgroup> {
        let mut members = members;
        members.grow(parent.order());
        if members.len() != parent.order() {
            return Err(Error::NotContained { what: "member set".into(), of: parent.name().into() });
        }
        if !members.contains(0) {
            return Err(Error::NotContained { what: "set without identity".into(), of: "a subgroup".into() });
        }
        let sub = Subgroup::from_bitset(parent, members);
        for &a in sub.elements() {
            if !sub.contains(parent.inv(a)) {
                return Err(Error::NotContained { what: format!("inverse of {a}"), of: "the set".into() });
            }
            for &b in sub.elements() {
                if !sub.contains(parent.mul(a, b)) {
                    return Err(Error::NotContained { what: format!("product {a}*{b}"), of: "the set".into() });
                }
            }
        }
        Ok(sub)
    }

    /// Members of a set already known to be closed.
    pub(crate) fn from_closed(parent: &Arc<Group>, members: FixedBitSet) -> Subgroup {
        debug_assert!(members.contains(0));
        Subgroup::from_bitset(parent, members)
    }

    pub fn parent(&self) -> &Arc<Group> {
        &self.parent
    }

    pub fn order(&self) -> usize {
        self.inner.elements.len()
    }

    pub fn members(&self) -> &FixedBitSet {
        &self.inner.members
    }

    /// Members in increasing index order.
    pub fn elements(&self) -> &[Elem] {
        &self.inner.elements
    }

    #[inline]
    pub fn contains(&self, x: Elem) -> bool {
        self.inner.members.contains(x as usize)
    }

    /// Position of `x` in [`elements`](Self::elements).
    #[inline]
    pub fn position(&self, x: Elem) -> Option<usize> {
        let local = self.inner.local.get_or_init(|| {
            let mut local = vec![u32::MAX; self.parent.order()];
            for (i, &e) in self.inner.elements.iter().enumerate() {
                local[e as usize] = i as u32;
            }
            local
        });
        match local[x as usize] {
            u32::MAX => None,
            i => Some(i as usize),
        }
    }

    pub fn same_parent(&self, other: &Subgroup) -> bool {
        Arc::ptr_eq(&self.parent, &other.parent)
    }

    pub(crate) fn check_parent(&self, other: &Subgroup) -> Result<()> {
        if self.same_parent(other) {
            Ok(())
        } else {
            Err(Error::ParentMismatch)
        }
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.same_parent(other) && self.inner.members.is_subset(&other.inner.members)
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    pub fn is_whole(&self) -> bool {
        self.order() == self.parent.order()
    }

    pub fn is_abelian(&self) -> bool {
        let g = &self.parent;
        let el = self.elements();
        el.iter().enumerate().all(|(i, &a)| el[i + 1..].iter().all(|&b| g.mul(a, b) == g.mul(b, a)))
    }

    /// Least common multiple of element orders.
    pub fn exponent(&self) -> u64 {
        self.elements().iter().fold(1u64, |acc, &x| lcm(acc, self.parent.elem_order(x) as u64))
    }

    /// The prime `p` with `|self| = p^k`, `k ≥ 1`.
    pub fn prime(&self) -> Option<u32> {
        prime_of_power(self.order())
    }

    pub fn is_p_group(&self, p: u32) -> bool {
        is_power_of(self.order() as u64, p)
    }

    pub fn intersection(&self, other: &Subgroup) -> Subgroup {
        let mut bits = self.inner.members.clone();
        bits.intersect_with(&other.inner.members);
        Subgroup::from_closed(&self.parent, bits)
    }

    /// `⟨self, other⟩`.
    pub fn join(&self, other: &Subgroup) -> Subgroup {
        if other.is_subgroup_of(self) {
            return self.clone();
        }
        if self.is_subgroup_of(other) {
            return other.clone();
        }
        let mut gens = self.generators();
        gens.extend(other.generators());
        let mut bits = self.inner.members.clone();
        let frontier = self.elements().to_vec();
        close_under(&self.parent, &mut bits, frontier, &gens);
        Subgroup::from_closed(&self.parent, bits)
    }

    /// `⟨self, x⟩`.
    pub fn join_elem(&self, x: Elem) -> Subgroup {
        if self.contains(x) {
            return self.clone();
        }
        let g = &self.parent;
        if self.normalized_by(x) {
            // U⟨x⟩ is already a subgroup.
            let mut bits = self.inner.members.clone();
            let mut power = x;
            while !self.contains(power) {
                for &u in self.elements() {
                    bits.insert(g.mul(u, power) as usize);
                }
                power = g.mul(power, x);
            }
            return Subgroup::from_closed(g, bits);
        }
        let mut gens = self.generators();
        gens.push(x);
        let mut bits = self.inner.members.clone();
        let frontier = self.elements().to_vec();
        close_under(g, &mut bits, frontier, &gens);
        Subgroup::from_closed(g, bits)
    }

    /// Greedy generating sequence: repeatedly adjoin the lowest-index member
    /// not yet generated.
    pub fn generators(&self) -> Vec<Elem> {
        self.inner
            .gens
            .get_or_init(|| {
                let mut gens = Vec::new();
                let mut current = Subgroup::trivial(&self.parent);
                while current.order() < self.order() {
                    let x = *self.elements().iter().find(|&&x| !current.contains(x)).expect("proper");
                    gens.push(x);
                    current = current.join_elem(x);
                }
                gens
            })
            .clone()
    }

    /// Whether `x self x⁻¹ = self`.
    pub fn normalized_by(&self, x: Elem) -> bool {
        let g = &self.parent;
        self.elements().iter().all(|&u| self.contains(g.conj(x, u)))
    }

    pub fn is_normal_in(&self, other: &Subgroup) -> bool {
        self.is_subgroup_of(other) && other.elements().iter().all(|&x| self.normalized_by(x))
    }

    /// `g self g⁻¹`.
    pub fn conjugate(&self, g: Elem) -> Subgroup {
        let grp = &self.parent;
        let mut bits = FixedBitSet::with_capacity(grp.order());
        for &u in self.elements() {
            bits.insert(grp.conj(g, u) as usize);
        }
        Subgroup::from_closed(grp, bits)
    }

    /// Image of the subgroup under an arbitrary set map, as a bitset.
    pub(crate) fn bitset_of(parent: &Group, elems: impl IntoIterator<Item = Elem>) -> FixedBitSet {
        let mut bits = FixedBitSet::with_capacity(parent.order());
        for e in elems {
            bits.insert(e as usize);
        }
        bits
    }

    pub fn center(&self) -> Subgroup {
        centralizer_in(self, self)
    }

    /// `[self, other]`, generated by commutators `a⁻¹b⁻¹ab`.
    pub fn commutator_with(&self, other: &Subgroup) -> Subgroup {
        let g = &self.parent;
        let mut comms: Vec<Elem> = Vec::new();
        let mut seen = FixedBitSet::with_capacity(g.order());
        for &a in self.elements() {
            for &b in other.elements() {
                let c = g.commutator(a, b);
                if !seen.put(c as usize) {
                    comms.push(c);
                }
            }
        }
        let mut sub = Subgroup::trivial(g);
        for c in comms {
            if !sub.contains(c) {
                sub = sub.join_elem(c);
            }
        }
        sub
    }

    pub fn derived_subgroup(&self) -> Subgroup {
        self.commutator_with(self)
    }

    pub fn is_solvable(&self) -> bool {
        let mut current = self.clone();
        loop {
            if current.is_trivial() {
                return true;
            }
            let next = current.derived_subgroup();
            if next.order() == current.order() {
                return false;
            }
            current = next;
        }
    }

    /// Short description for reports, e.g. `<order 8 in sl23>`.
    pub fn describe(&self) -> String {
        if self.is_whole() {
            self.parent.name().to_string()
        } else {
            format!("<order {} in {}: {:?}>", self.order(), self.parent.name(), self.generators())
        }
    }
}

fn close_under(g: &Group, bits: &mut FixedBitSet, mut frontier: Vec<Elem>, gens: &[Elem]) {
    while let Some(x) = frontier.pop() {
        for &s in gens {
            let y = g.mul(x, s);
            if !bits.put(y as usize) {
                frontier.push(y);
            }
        }
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    fn gcd(a: u64, b: u64) -> u64 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    a / gcd(a, b) * b
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.same_parent(other) && self.inner.members == other.inner.members
    }
}

impl Eq for Subgroup {}

impl Hash for Subgroup {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.inner.members.hash(state);
    }
}

impl PartialOrd for Subgroup {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Subgroup {
    fn cmp(&self, other: &Self) -> Ordering {
        self.order().cmp(&other.order()).then_with(|| self.elements().cmp(other.elements()))
    }
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subgroup({} of {}: {:?})", self.order(), self.parent.name(), self.elements())
    }
}

fn centralizer_in(within: &Subgroup, of: &Subgroup) -> Subgroup {
    let g = within.parent();
    let gens = of.generators();
    let mut bits = FixedBitSet::with_capacity(g.order());
    for &x in within.elements() {
        if gens.iter().all(|&y| g.mul(x, y) == g.mul(y, x)) {
            bits.insert(x as usize);
        }
    }
    Subgroup::from_closed(g, bits)
}

/// `{g ∈ within | gx = xg for all x ∈ of}`.
pub fn centralizer(parent: &Arc<Group>, within: &Subgroup, of: &Subgroup) -> Result<Subgroup> {
    if !Arc::ptr_eq(parent, within.parent()) || !Arc::ptr_eq(parent, of.parent()) {
        return Err(Error::ParentMismatch);
    }
    Ok(centralizer_in(within, of))
}

/// `{g ∈ within | g Q g⁻¹ = Q}`.
pub fn normalizer(parent: &Arc<Group>, within: &Subgroup, of: &Subgroup) -> Result<Subgroup> {
    if !Arc::ptr_eq(parent, within.parent()) || !Arc::ptr_eq(parent, of.parent()) {
        return Err(Error::ParentMismatch);
    }
    Ok(normalizer_in(within, of))
}

pub(crate) fn normalizer_in(within: &Subgroup, of: &Subgroup) -> Subgroup {
    let g = within.parent();
    let gens = of.generators();
    let mut bits = FixedBitSet::with_capacity(g.order());
    for &x in within.elements() {
        if gens.iter().all(|&y| of.contains(g.conj(x, y))) {
            bits.insert(x as usize);
        }
    }
    Subgroup::from_closed(g, bits)
}

/// `N_G(P, Q) = {g | g P g⁻¹ ⊆ Q}` as a sorted element list.
pub fn transporter(parent: &Arc<Group>, p: &Subgroup, q: &Subgroup) -> Result<Vec<Elem>> {
    if !Arc::ptr_eq(parent, p.parent()) || !Arc::ptr_eq(parent, q.parent()) {
        return Err(Error::ParentMismatch);
    }
    Ok(transporter_in(&Subgroup::whole(parent), p, q))
}

pub(crate) fn transporter_in(within: &Subgroup, p: &Subgroup, q: &Subgroup) -> Vec<Elem> {
    let g = within.parent();
    let gens = p.generators();
    within.elements().iter().copied().filter(|&x| gens.iter().all(|&y| q.contains(g.conj(x, y)))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyclic(n: usize) -> Arc<Group> {
        Group::from_fn(format!("C{n}"), n, |a, b| (a + b) % n).unwrap().into_arc()
    }

    #[test]
    fn generated_and_join() {
        let g = cyclic(12);
        let a = Subgroup::generated(&g, &[4]);
        let b = Subgroup::generated(&g, &[6]);
        assert_eq!(a.order(), 3);
        assert_eq!(b.order(), 2);
        assert_eq!(a.join(&b).order(), 6);
        assert_eq!(a.join_elem(3).order(), 12);
        assert_eq!(a.intersection(&b).order(), 1);
    }

    #[test]
    fn from_elements_checks_closure() {
        let g = cyclic(6);
        assert!(Subgroup::from_elements(&g, &[0, 2, 4]).is_ok());
        assert!(Subgroup::from_elements(&g, &[0, 1]).is_err());
        assert!(Subgroup::from_elements(&g, &[2, 4]).is_err());
    }

    #[test]
    fn canonical_order() {
        let g = cyclic(6);
        let mut subs = vec![Subgroup::whole(&g), Subgroup::generated(&g, &[3]), Subgroup::trivial(&g)];
        subs.sort();
        assert_eq!(subs.iter().map(Subgroup::order).collect::<Vec<_>>(), vec![1, 2, 6]);
    }

    #[test]
    fn mismatched_parents() {
        let g = cyclic(4);
        let h = cyclic(4);
        let err = centralizer(&g, &Subgroup::whole(&g), &Subgroup::whole(&h)).unwrap_err();
        assert_eq!(err, Error::ParentMismatch);
    }

    #[test]
    fn trivial_centralizer_is_everything() {
        let g = cyclic(5);
        let c = centralizer(&g, &Subgroup::whole(&g), &Subgroup::trivial(&g)).unwrap();
        assert!(c.is_whole());
        assert_eq!(Subgroup::trivial(&g).exponent(), 1);
    }
}
