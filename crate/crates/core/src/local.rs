//! p-local subgroup constructions: Sylow subgroups, `Ω_i`, p-rank, critical
//! subgroups, the small-exponent characteristic subgroup `D`, and strong
//! p-embedding.

use std::collections::HashSet;
use std::sync::Arc;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::group::{ensure_prime, is_power_of, p_part, Elem, Group};
use crate::hom::{automorphism_group, AutGroup};
use crate::lattice::all_subgroups;
use crate::limits::Limits;
use crate::subgroup::{normalizer_in, Subgroup};

/// A Sylow p-subgroup of `g`, built by greedy extension from the trivial group.
pub fn sylow_subgroup(g: &Arc<Group>, p: u32) -> Result<Subgroup> {
    ensure_prime(p)?;
    Ok(sylow_containing(&Subgroup::whole(g), p, &Subgroup::trivial(g)))
}

/// A Sylow p-subgroup of `within` containing the p-subgroup `start`:
/// repeatedly adjoin the lowest-index p-element of the normalizer of the
/// current subgroup that lies outside it.
pub fn sylow_containing(within: &Subgroup, p: u32, start: &Subgroup) -> Subgroup {
    let g = within.parent();
    let target = p_part(within.order() as u64, p) as usize;
    let mut current = start.clone();
    while current.order() < target {
        let n = normalizer_in(within, &current);
        let x = n
            .elements()
            .iter()
            .copied()
            .find(|&x| !current.contains(x) && is_power_of(g.elem_order(x) as u64, p))
            .expect("a non-Sylow p-subgroup is properly contained in a p-subgroup of its normalizer");
        current = current.join_elem(x);
    }
    current
}

fn require_p_group(p: &Subgroup) -> Result<u32> {
    p.prime().ok_or(Error::NotPrimePower { order: p.order() })
}

/// `Ω_i(P)`: the subgroup generated by elements of order dividing `p^i`.
pub fn omega(p_group: &Subgroup, i: u32) -> Result<Subgroup> {
    if p_group.is_trivial() {
        return Ok(p_group.clone());
    }
    let p = require_p_group(p_group)?;
    let bound = (p as u64).pow(i);
    let g = p_group.parent();
    let mut sub = Subgroup::trivial(g);
    for &x in p_group.elements() {
        if bound % g.elem_order(x) as u64 == 0 && !sub.contains(x) {
            sub = sub.join_elem(x);
        }
    }
    Ok(sub)
}

pub fn exponent(p: &Subgroup) -> u64 {
    p.exponent()
}

/// Largest `k` such that `(C_p)^k` embeds in `g`.
pub fn p_rank(g: &Arc<Group>, p: u32) -> Result<u32> {
    let s = sylow_subgroup(g, p)?;
    Ok(p_rank_of(&s, p))
}

/// p-rank of a subgroup, searched inside one of its Sylow p-subgroups.
pub fn p_rank_of(h: &Subgroup, p: u32) -> u32 {
    let g = h.parent();
    let s = if h.is_p_group(p) { h.clone() } else { sylow_containing(h, p, &Subgroup::trivial(g)) };
    let order_p: Vec<Elem> = s.elements().iter().copied().filter(|&x| g.elem_order(x) == p).collect();
    let mut best = 1usize;
    let mut seen: HashSet<FixedBitSet> = HashSet::new();
    let mut stack = vec![Subgroup::trivial(g)];
    while let Some(e) = stack.pop() {
        best = best.max(e.order());
        for &x in &order_p {
            if e.contains(x) || e.elements().iter().any(|&y| g.mul(x, y) != g.mul(y, x)) {
                continue;
            }
            let next = e.join_elem(x);
            if seen.insert(next.members().clone()) {
                stack.push(next);
            }
        }
    }
    let mut rank = 0;
    while best > 1 {
        best /= p as usize;
        rank += 1;
    }
    rank
}

/// Whether `C/Z(C)` is elementary abelian.
fn quotient_by_center_elementary(c: &Subgroup, p: u32) -> bool {
    let g = c.parent();
    let z = c.center();
    let gens = c.generators();
    c.elements().iter().all(|&x| z.contains(g.pow(x, p as u64)) && gens.iter().all(|&y| z.contains(g.commutator(x, y))))
}

/// `[A, B] ≤ target`, checked on all pairs.
fn commutators_inside(a: &Subgroup, b: &Subgroup, target: &Subgroup) -> bool {
    let g = a.parent();
    a.elements().iter().all(|&x| b.elements().iter().all(|&y| target.contains(g.commutator(x, y))))
}

/// Whether every nontrivial p′-automorphism of the base acts nontrivially on `sub`.
pub fn detects_p_prime(aut: &AutGroup, sub: &Subgroup, p: u32) -> bool {
    aut.nontrivial_p_prime(p).into_iter().all(|i| !aut.fixes_pointwise(i, sub))
}

/// Checks the four defining properties of a critical subgroup `c` of `p_group`.
pub fn is_critical(p_group: &Subgroup, c: &Subgroup, aut: &AutGroup, p: u32) -> bool {
    let z = c.center();
    aut.is_characteristic(c)
        && quotient_by_center_elementary(c, p)
        && commutators_inside(p_group, c, &z)
        && crate::subgroup::centralizer(p_group.parent(), p_group, c).map(|cc| cc == z).unwrap_or(false)
        && detects_p_prime(aut, c, p)
}

/// Characteristic subgroups of the base of `aut`, in canonical order.
pub fn characteristic_subgroups(aut: &AutGroup, limits: &Limits) -> Result<Vec<Subgroup>> {
    Ok(all_subgroups(aut.base(), limits)?.into_iter().filter(|s| aut.is_characteristic(s)).collect())
}

/// A critical subgroup of the p-group `p_group`: among characteristic
/// subgroups satisfying all four conditions, the one of largest order,
/// ties broken by canonical order.
pub fn critical_subgroup(p_group: &Subgroup, limits: &Limits) -> Result<Subgroup> {
    if p_group.is_trivial() {
        return Ok(p_group.clone());
    }
    let p = require_p_group(p_group)?;
    let aut = automorphism_group(p_group, limits)?;
    critical_subgroup_with(p_group, &aut, p, limits)
}

pub(crate) fn critical_subgroup_with(p_group: &Subgroup, aut: &AutGroup, p: u32, limits: &Limits) -> Result<Subgroup> {
    let mut best: Option<Subgroup> = None;
    for c in characteristic_subgroups(aut, limits)? {
        if !is_critical(p_group, &c, aut, p) {
            continue;
        }
        // canonical order is increasing, so a later candidate of equal order loses
        if best.as_ref().map_or(true, |b| c.order() > b.order()) {
            best = Some(c);
        }
    }
    best.ok_or_else(|| Error::InvariantViolation(format!("no critical subgroup found in {}", p_group.describe())))
}

/// The characteristic subgroup `D`: `Ω_1(C)` for odd p and `Ω_2(C)` for
/// p = 2, with `C` the chosen critical subgroup. Its defining properties are
/// re-checked before returning.
pub fn thompson_d(p_group: &Subgroup, limits: &Limits) -> Result<Subgroup> {
    if p_group.is_trivial() {
        return Ok(p_group.clone());
    }
    let p = require_p_group(p_group)?;
    let aut = automorphism_group(p_group, limits)?;
    thompson_d_with(p_group, &aut, p, limits)
}

pub(crate) fn thompson_d_with(p_group: &Subgroup, aut: &AutGroup, p: u32, limits: &Limits) -> Result<Subgroup> {
    let c = critical_subgroup_with(p_group, aut, p, limits)?;
    let d = omega(&c, if p == 2 { 2 } else { 1 })?;
    if let Some(failure) = thompson_d_failure(p_group, &d, aut, p) {
        return Err(Error::InvariantViolation(format!("D of {}: {failure}", p_group.describe())));
    }
    Ok(d)
}

/// First failed postcondition of `D`, if any.
pub fn thompson_d_failure(p_group: &Subgroup, d: &Subgroup, aut: &AutGroup, p: u32) -> Option<&'static str> {
    let bound = if p == 2 { 4 } else { p as u64 };
    if !aut.is_characteristic(d) {
        return Some("not characteristic");
    }
    if bound % d.exponent() != 0 {
        return Some("exponent too large");
    }
    if !commutators_inside(d, p_group, &d.center()) {
        return Some("[D,P] is not contained in Z(D)");
    }
    if !detects_p_prime(aut, d, p) {
        return Some("a nontrivial p'-automorphism acts trivially");
    }
    None
}

/// First inclusion-maximal abelian subgroup of `d` in canonical order.
pub fn maximal_abelian_in(d: &Subgroup, limits: &Limits) -> Result<Subgroup> {
    if d.is_abelian() {
        return Ok(d.clone());
    }
    let g = d.parent();
    for a in all_subgroups(d, limits)? {
        if a.is_abelian() && crate::subgroup::centralizer(g, d, &a)? == a {
            return Ok(a);
        }
    }
    unreachable!("a finite group has a maximal abelian subgroup")
}

/// Checks `(xy)^4 = x^4 y^4` on all pairs of a 2-group whose central quotient
/// is elementary abelian.
pub fn verify_p2_identity(p_group: &Subgroup) -> Result<bool> {
    if !p_group.is_p_group(2) {
        return Err(Error::Precondition(format!("{} is not a 2-group", p_group.describe())));
    }
    let g = p_group.parent();
    let z = p_group.center();
    if p_group.elements().iter().any(|&x| !z.contains(g.mul(x, x))) {
        return Err(Error::Precondition(format!("{}/Z is not elementary abelian", p_group.describe())));
    }
    let el = p_group.elements();
    Ok(el.iter().all(|&x| {
        let x4 = g.pow(x, 4);
        el.iter().all(|&y| g.pow(g.mul(x, y), 4) == g.mul(x4, g.pow(y, 4)))
    }))
}

/// Whether `h` is a proper subgroup of `g` of order divisible by `p` with
/// `|H ∩ gHg⁻¹|` prime to `p` for every `g ∉ H`.
pub fn is_strongly_p_embedded(h: &Subgroup, g: &Subgroup, p: u32) -> Result<bool> {
    ensure_prime(p)?;
    h.check_parent(g)?;
    if !h.is_subgroup_of(g) {
        return Err(Error::NotContained { what: h.describe(), of: g.describe() });
    }
    if h.order() == g.order() || h.order() % p as usize != 0 {
        return Ok(false);
    }
    let grp = g.parent();
    let mut covered = h.members().clone();
    for &x in g.elements() {
        if covered.contains(x as usize) {
            continue;
        }
        for &u in h.elements() {
            covered.insert(grp.mul(x, u) as usize);
        }
        let meet = h.elements().iter().filter(|&&y| h.contains(grp.conj(grp.inv(x), y))).count();
        if meet % p as usize == 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether some subgroup of `g` is strongly p-embedded in it.
pub fn has_strongly_p_embedded(g: &Subgroup, p: u32, limits: &Limits) -> Result<bool> {
    if g.order() % p as usize != 0 {
        return Ok(false);
    }
    for h in all_subgroups(g, limits)? {
        if is_strongly_p_embedded(&h, g, p)? {
            return Ok(true);
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyclic(n: usize) -> Arc<Group> {
        Group::from_fn(format!("C{n}"), n, |a, b| (a + b) % n).unwrap().into_arc()
    }

    #[test]
    fn sylow_of_cyclic_six() {
        let g = cyclic(6);
        let s = sylow_subgroup(&g, 3).unwrap();
        assert_eq!(s.elements(), &[0, 2, 4]);
        assert!(sylow_subgroup(&g, 5).unwrap().is_trivial());
        assert_eq!(sylow_subgroup(&g, 4).unwrap_err(), Error::NotPrime(4));
    }

    #[test]
    fn omega_of_c4() {
        let g = cyclic(4);
        let w = omega(&Subgroup::whole(&g), 1).unwrap();
        assert_eq!(w.elements(), &[0, 2]);
        assert!(omega(&Subgroup::whole(&g), 5).unwrap().is_whole());
        assert!(omega(&Subgroup::whole(&cyclic(6)), 1).is_err());
    }

    #[test]
    fn thompson_d_of_c9() {
        let g = cyclic(9);
        let p = Subgroup::whole(&g);
        let d = thompson_d(&p, &Limits::default()).unwrap();
        assert_eq!(d.elements(), &[0, 3, 6]);
        // inversion is a 2-element of Aut(C9) and moves 3 to 6
        let aut = automorphism_group(&p, &Limits::default()).unwrap();
        let inversion = (0..aut.order()).find(|&i| aut.map(i).apply(1) == Some(8)).unwrap();
        assert!(!aut.fixes_pointwise(inversion, &d));
    }

    #[test]
    fn strongly_embedded_degenerate() {
        let g = cyclic(6);
        let whole = Subgroup::whole(&g);
        assert!(!is_strongly_p_embedded(&whole, &whole, 2).unwrap());
        let three = Subgroup::generated(&g, &[2]);
        assert!(!is_strongly_p_embedded(&three, &whole, 2).unwrap());
    }

    #[test]
    fn p2_identity_precondition() {
        let g = cyclic(6);
        assert!(matches!(verify_p2_identity(&Subgroup::whole(&g)), Err(Error::Precondition(_))));
        assert!(verify_p2_identity(&Subgroup::whole(&cyclic(8))).unwrap());
    }
}
