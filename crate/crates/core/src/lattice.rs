//! Subgroup lattice enumeration by cyclic extension.
//!
//! Every subgroup `K ≠ 1` of a solvable group has a normal subgroup `U` of prime
//! index, so `K = U⟨x⟩` for any `x ∈ K∖U`. Starting from the cyclic subgroups
//! and closing under `U ↦ U⟨x⟩` for `x` normalizing `U` therefore reaches every
//! subgroup. Non-solvable groups fall back to arbitrary joins `⟨U, x⟩`.

use std::collections::HashSet;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::group::Elem;
use crate::limits::Limits;
use crate::subgroup::Subgroup;

/// All subgroups of `p`, sorted canonically by `(order, elements)`.
pub fn all_subgroups(p: &Subgroup, limits: &Limits) -> Result<Vec<Subgroup>> {
    let g = p.parent();
    let solvable = p.prime().is_some() || p.is_trivial() || p.is_solvable();

    // One generator per cyclic subgroup.
    let mut cyclic_seen: HashSet<FixedBitSet> = HashSet::new();
    let mut cyclic_gens: Vec<Elem> = Vec::new();
    let trivial = Subgroup::trivial(g);
    for &x in p.elements() {
        if x == 0 {
            continue;
        }
        let c = trivial.join_elem(x);
        if cyclic_seen.insert(c.members().clone()) {
            cyclic_gens.push(x);
        }
    }

    let mut seen: HashSet<FixedBitSet> = HashSet::new();
    let mut found: Vec<Subgroup> = Vec::new();
    let mut stack = vec![trivial];
    seen.insert(stack[0].members().clone());
    while let Some(u) = stack.pop() {
        for &x in &cyclic_gens {
            if u.contains(x) || (solvable && !u.normalized_by(x)) {
                continue;
            }
            let k = u.join_elem(x);
            if seen.insert(k.members().clone()) {
                if seen.len() > limits.max_subgroups {
                    return Err(Error::CapExceeded { cap: "subgroup enumeration", limit: limits.max_subgroups });
                }
                stack.push(k);
            }
        }
        found.push(u);
    }
    found.sort();
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::Group;
    use std::sync::Arc;

    fn cyclic(n: usize) -> Arc<Group> {
        Group::from_fn(format!("C{n}"), n, |a, b| (a + b) % n).unwrap().into_arc()
    }

    fn klein() -> Arc<Group> {
        Group::from_fn("C2xC2", 4, |a, b| a ^ b).unwrap().into_arc()
    }

    #[test]
    fn cyclic_prime_has_two() {
        let g = cyclic(5);
        assert_eq!(all_subgroups(&Subgroup::whole(&g), &Limits::default()).unwrap().len(), 2);
    }

    #[test]
    fn klein_has_five() {
        let g = klein();
        let subs = all_subgroups(&Subgroup::whole(&g), &Limits::default()).unwrap();
        assert_eq!(subs.iter().map(Subgroup::order).collect::<Vec<_>>(), vec![1, 2, 2, 2, 4]);
    }

    #[test]
    fn cyclic_twelve_matches_divisors() {
        let g = cyclic(12);
        assert_eq!(all_subgroups(&Subgroup::whole(&g), &Limits::default()).unwrap().len(), 6);
    }

    #[test]
    fn cap_is_enforced() {
        let g = klein();
        let limits = Limits { max_subgroups: 3, ..Limits::default() };
        let err = all_subgroups(&Subgroup::whole(&g), &limits).unwrap_err();
        assert!(err.is_cap());
    }
}
