//! Naive brute-force oracles shared by the integration tests.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet};
use std::sync::Arc;

use pfusion_core::catalog::{self, build_str};
use pfusion_core::{Elem, Group};

/// Every subset containing 0 and closed under multiplication.
pub fn brute_subgroups(g: &Group) -> BTreeSet<Vec<Elem>> {
    let n = g.order();
    assert!(n <= 16);
    let mut out = BTreeSet::new();
    for mask in 0u32..(1 << n) {
        if mask & 1 == 0 {
            continue;
        }
        let elems: Vec<Elem> = (0..n as u32).filter(|&x| mask >> x & 1 == 1).collect();
        if elems.iter().all(|&a| elems.iter().all(|&b| mask >> g.mul(a, b) & 1 == 1)) {
            out.insert(elems);
        }
    }
    out
}

/// Automorphisms as permutations of `0..n`, by trying every bijection fixing 0.
pub fn brute_automorphisms(g: &Group) -> BTreeSet<Vec<u32>> {
    fn extend(g: &Group, map: &mut Vec<u32>, used: &mut Vec<bool>, out: &mut BTreeSet<Vec<u32>>) {
        let k = map.len();
        if k == g.order() {
            let hom = (0..k as u32)
                .all(|a| (0..k as u32).all(|b| map[g.mul(a, b) as usize] == g.mul(map[a as usize], map[b as usize])));
            if hom {
                out.insert(map.clone());
            }
            return;
        }
        for y in 1..g.order() as u32 {
            if !used[y as usize] {
                used[y as usize] = true;
                map.push(y);
                extend(g, map, used, out);
                map.pop();
                used[y as usize] = false;
            }
        }
    }
    let mut used = vec![false; g.order()];
    used[0] = true;
    let mut out = BTreeSet::new();
    extend(g, &mut vec![0], &mut used, &mut out);
    out
}

/// Conjugacy classes of elements satisfying `keep`, by direct orbit computation.
pub fn classes_where(g: &Group, keep: impl Fn(Elem) -> bool) -> usize {
    let mut seen = HashSet::new();
    let mut count = 0;
    for x in g.elements().filter(|&x| keep(x)) {
        if seen.insert(x) {
            count += 1;
            for h in g.elements() {
                seen.insert(g.conj(h, x));
            }
        }
    }
    count
}

pub fn p_element_classes(g: &Group, p: u32) -> usize {
    classes_where(g, |x| pfusion_core::group::is_power_of(g.elem_order(x) as u64, p))
}

pub fn small_catalog(max: usize) -> Vec<Arc<Group>> {
    catalog::list().into_iter().map(|n| build_str(n).unwrap()).filter(|g| g.order() <= max).collect()
}
