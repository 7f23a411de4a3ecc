use std::collections::VecDeque;
use std::sync::Arc;

use super::expr::GroupExpr;
use super::field::FiniteField;
use crate::error::{Error, Result};
use crate::group::{is_prime, Elem, Group};
use crate::hom::{compose_perms, LocalPerm};
use crate::limits::Limits;
use crate::local::sylow_subgroup;
use crate::subgroup::Subgroup;

/// Evaluates `expr` under the default limits.
pub fn build(expr: &GroupExpr) -> Result<Arc<Group>> {
    build_with(expr, &Limits::default())
}

pub fn build_with(expr: &GroupExpr, limits: &Limits) -> Result<Arc<Group>> {
    let cap = match expr {
        GroupExpr::Gn(_) | GroupExpr::Hn(_) => limits.max_order_gn,
        _ => limits.max_order,
    };
    if expr.order() > cap as u128 {
        return Err(Error::CapExceeded { cap: "group order", limit: cap });
    }
    let name = expr.to_string();
    let g = match expr {
        GroupExpr::Cyclic(n) => {
            let n = *n as usize;
            if n == 0 {
                return Err(Error::Unsupported("cyclic(0)".into()));
            }
            Group::from_fn(name, n, |a, b| (a + b) % n)?
        }
        GroupExpr::Dihedral(n) => dihedral(*n, name)?,
        GroupExpr::Quaternion8 => quaternion8(name)?,
        GroupExpr::Symmetric(n) => permutation_group(*n, false, name)?,
        GroupExpr::Alternating(n) => permutation_group(*n, true, name)?,
        GroupExpr::ElementaryAbelian(p, k) => {
            if !is_prime(*p) {
                return Err(Error::NotPrime(*p));
            }
            let (p, k) = (*p as usize, *k);
            let order = p.pow(k);
            Group::from_fn(name, order, |a, b| {
                let (mut a, mut b, mut out, mut place) = (a, b, 0, 1);
                for _ in 0..k {
                    out += ((a % p + b % p) % p) * place;
                    a /= p;
                    b /= p;
                    place *= p;
                }
                out
            })?
        }
        GroupExpr::ExtraspecialPlus(p) => {
            if !is_prime(*p) {
                return Err(Error::NotPrime(*p));
            }
            let p = *p as usize;
            // Heisenberg triples (a, b, c) at index a p^2 + b p + c
            Group::from_fn(name, p * p * p, |x, y| {
                let (a, b, c) = (x / (p * p), (x / p) % p, x % p);
                let (a2, b2, c2) = (y / (p * p), (y / p) % p, y % p);
                ((a + a2) % p) * p * p + ((b + b2) % p) * p + (c + c2 + a * b2) % p
            })?
        }
        GroupExpr::Sl23 => sl23(name)?,
        GroupExpr::Direct(a, b) => {
            let (ga, gb) = (build_with(a, limits)?, build_with(b, limits)?);
            direct(&ga, &gb, name)?
        }
        GroupExpr::Semidirect { base, actor, action } => {
            let (gb, ga) = (build_with(base, limits)?, build_with(actor, limits)?);
            semidirect(&gb, &ga, action, name)?
        }
        GroupExpr::AffineFrobenius(q) => affine(*q as usize, false, name)?,
        GroupExpr::AffineSemilinear(q) => affine(*q as usize, true, name)?,
        GroupExpr::Gn(n) => gn(*n, name)?,
        GroupExpr::Hn(n) => {
            let (_, h) = gn_hn(*n)?;
            induced_group(&h, name)?
        }
    };
    Ok(g.into_arc())
}

/// Parses and builds.
pub fn build_str(text: &str) -> Result<Arc<Group>> {
    build(&GroupExpr::parse(text)?)
}

fn dihedral(n: u32, name: String) -> Result<Group> {
    if n == 0 || n % 2 == 1 {
        return Err(Error::Unsupported(format!("dihedral({n}) needs an even order")));
    }
    let m = n as usize / 2;
    // r^a s^b at index 2a + b
    Group::from_fn(name, n as usize, |x, y| {
        let (a, b, c, d) = (x / 2, x % 2, y / 2, y % 2);
        let c = if b == 1 { (m - c) % m } else { c };
        ((a + c) % m) * 2 + (b ^ d)
    })
}

fn quaternion8(name: String) -> Result<Group> {
    // x^a y^b at index 2a + b, x^4 = 1, y^2 = x^2, y x y^-1 = x^-1
    Group::from_fn(name, 8, |u, v| {
        let (a, b, c, d) = (u / 2, u % 2, v / 2, v % 2);
        let c = if b == 1 { (4 - c) % 4 } else { c };
        let extra = if b == 1 && d == 1 { 2 } else { 0 };
        ((a + c + extra) % 4) * 2 + (b ^ d)
    })
}

fn permutation_group(n: u32, even_only: bool, name: String) -> Result<Group> {
    if n == 0 {
        return Err(Error::Unsupported("degree 0".into()));
    }
    let mut perm: Vec<usize> = (0..n as usize).collect();
    let mut all = Vec::new();
    loop {
        if !even_only || parity(&perm) == 0 {
            all.push(perm.clone());
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    let index: std::collections::HashMap<Vec<usize>, usize> =
        all.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
    // (στ)(x) = σ(τ(x))
    Group::from_fn(name, all.len(), |a, b| {
        let prod: Vec<usize> = all[b].iter().map(|&x| all[a][x]).collect();
        index[&prod]
    })
}

/// The group generated by permutations of `0..degree` in image form, with
/// elements in lexicographic order and `(στ)(x) = σ(τ(x))`.
pub fn permutation_closure(name: impl Into<String>, gens: &[Vec<u32>], limits: &Limits) -> Result<Group> {
    let degree = gens.first().map_or(1, Vec::len);
    for (i, g) in gens.iter().enumerate() {
        let mut seen = vec![false; degree];
        for &x in g {
            if x as usize >= degree || std::mem::replace(&mut seen[x as usize], true) {
                return Err(Error::InvalidTable {
                    law: "bijection",
                    detail: format!("generator {i} is not a permutation of 0..{degree}"),
                });
            }
        }
        if g.len() != degree {
            return Err(Error::InvalidTable {
                law: "bijection",
                detail: format!("generator {i} has the wrong degree"),
            });
        }
    }
    let identity: Vec<u32> = (0..degree as u32).collect();
    let mut found = std::collections::BTreeSet::from([identity.clone()]);
    let mut stack = vec![identity];
    while let Some(x) = stack.pop() {
        for g in gens {
            let y: Vec<u32> = x.iter().map(|&i| g[i as usize]).collect();
            if found.insert(y.clone()) {
                if found.len() > limits.max_order {
                    return Err(Error::CapExceeded { cap: "group order", limit: limits.max_order });
                }
                stack.push(y);
            }
        }
    }
    let all: Vec<Vec<u32>> = found.into_iter().collect();
    let index: std::collections::HashMap<&[u32], usize> =
        all.iter().enumerate().map(|(i, p)| (p.as_slice(), i)).collect();
    Group::from_fn(name, all.len(), |a, b| {
        let prod: Vec<u32> = all[b].iter().map(|&x| all[a][x as usize]).collect();
        index[prod.as_slice()]
    })
}

fn next_permutation(v: &mut [usize]) -> bool {
    let n = v.len();
    if n < 2 {
        return false;
    }
    let Some(i) = (0..n - 1).rev().find(|&i| v[i] < v[i + 1]) else {
        return false;
    };
    let j = (i + 1..n).rev().find(|&j| v[j] > v[i]).unwrap();
    v.swap(i, j);
    v[i + 1..].reverse();
    true
}

fn parity(perm: &[usize]) -> usize {
    let mut inv = 0;
    for i in 0..perm.len() {
        for j in i + 1..perm.len() {
            if perm[i] > perm[j] {
                inv += 1;
            }
        }
    }
    inv % 2
}

fn sl23(name: String) -> Result<Group> {
    let mut mats: Vec<[usize; 4]> = Vec::new();
    for a in 0..3 {
        for b in 0..3 {
            for c in 0..3 {
                for d in 0..3 {
                    if (a * d + 3 * 3 - b * c) % 3 == 1 {
                        mats.push([a, b, c, d]);
                    }
                }
            }
        }
    }
    let id = mats.iter().position(|m| *m == [1, 0, 0, 1]).unwrap();
    let one = mats.remove(id);
    mats.insert(0, one);
    let index: std::collections::HashMap<[usize; 4], usize> = mats.iter().enumerate().map(|(i, m)| (*m, i)).collect();
    Group::from_fn(name, mats.len(), |x, y| {
        let ([a, b, c, d], [e, f, g, h]) = (mats[x], mats[y]);
        index[&[(a * e + b * g) % 3, (a * f + b * h) % 3, (c * e + d * g) % 3, (c * f + d * h) % 3]]
    })
}

pub(crate) fn direct(a: &Group, b: &Group, name: String) -> Result<Group> {
    let nb = b.order();
    Group::from_fn(name, a.order() * nb, |x, y| {
        a.mul((x / nb) as Elem, (y / nb) as Elem) as usize * nb + b.mul((x % nb) as Elem, (y % nb) as Elem) as usize
    })
}

/// Extends `gens ↦ images` to a homomorphism `source → target` by BFS over
/// the Cayley graph, or `None` on a conflict.
fn extend_to_hom(source: &Group, gens: &[Elem], images: &[Elem], target: &Group) -> Option<Vec<Elem>> {
    let mut map = vec![Elem::MAX; source.order()];
    map[0] = 0;
    let mut queue = VecDeque::from([0 as Elem]);
    while let Some(x) = queue.pop_front() {
        for (&g, &h) in gens.iter().zip(images) {
            let y = source.mul(x, g);
            let fy = target.mul(map[x as usize], h);
            if map[y as usize] == Elem::MAX {
                map[y as usize] = fy;
                queue.push_back(y);
            } else if map[y as usize] != fy {
                return None;
            }
        }
    }
    map.iter().all(|&v| v != Elem::MAX).then_some(map)
}

fn semidirect(base: &Arc<Group>, actor: &Arc<Group>, action: &[Vec<u32>], name: String) -> Result<Group> {
    let base_gens = Subgroup::whole(base).generators();
    let actor_gens = Subgroup::whole(actor).generators();
    if action.len() != actor_gens.len() {
        return Err(Error::InvalidAction(format!(
            "{} rows given, actor has {} generators {:?}",
            action.len(),
            actor_gens.len(),
            actor_gens
        )));
    }
    let mut gen_perms: Vec<LocalPerm> = Vec::new();
    for (i, row) in action.iter().enumerate() {
        if row.len() != base_gens.len() || row.iter().any(|&y| y as usize >= base.order()) {
            return Err(Error::InvalidAction(format!(
                "row {i} must list images of the base generators {:?}",
                base_gens
            )));
        }
        let map = extend_to_hom(base, &base_gens, row, base)
            .ok_or_else(|| Error::InvalidAction(format!("row {i} is not a homomorphism of the base")))?;
        let mut seen = vec![false; map.len()];
        for &y in &map {
            if std::mem::replace(&mut seen[y as usize], true) {
                return Err(Error::InvalidAction(format!("row {i} is not bijective")));
            }
        }
        gen_perms.push(map);
    }
    // actor → Aut(base), a ↦ φ_a with φ_{ag} = φ_a ∘ φ_g
    let mut phi: Vec<Option<LocalPerm>> = vec![None; actor.order()];
    phi[0] = Some((0..base.order() as u32).collect());
    let mut queue = VecDeque::from([0 as Elem]);
    while let Some(x) = queue.pop_front() {
        for (&g, pg) in actor_gens.iter().zip(&gen_perms) {
            let y = actor.mul(x, g) as usize;
            let val = compose_perms(phi[x as usize].as_ref().unwrap(), pg);
            match &phi[y] {
                None => {
                    phi[y] = Some(val);
                    queue.push_back(y as Elem);
                }
                Some(prev) if *prev != val => {
                    return Err(Error::InvalidAction("action does not respect the actor's relations".into()));
                }
                _ => {}
            }
        }
    }
    let phi: Vec<LocalPerm> = phi.into_iter().map(Option::unwrap).collect();
    let na = actor.order();
    Group::from_fn(name, base.order() * na, |x, y| {
        let (b1, a1, b2, a2) = (x / na, x % na, y / na, y % na);
        base.mul(b1 as Elem, phi[a1][b2]) as usize * na + actor.mul(a1 as Elem, a2 as Elem) as usize
    })
}

/// `F_q ⋊ F_q^×`, optionally extended by the Galois group. Elements are
/// `((b, a), k)` at index `(b (q-1) + a - 1) e + k`, with `k` the Frobenius
/// exponent (dropped when `semilinear` is false).
fn affine(q: usize, semilinear: bool, name: String) -> Result<Group> {
    let f = FiniteField::new(q)?;
    let e = if semilinear { f.degree() as usize } else { 1 };
    let unpack = |x: usize| {
        let k = x % e;
        let r = x / e;
        (r / (q - 1), r % (q - 1) + 1, k)
    };
    Group::from_fn(name, q * (q - 1) * e, |x, y| {
        let (b1, a1, k1) = unpack(x);
        let (b2, a2, k2) = unpack(y);
        let sb = f.frobenius(b2 as u32, k1 as u32);
        let sa = f.frobenius(a2 as u32, k1 as u32);
        let b = f.add(b1 as u32, f.mul(a1 as u32, sb)) as usize;
        let a = f.mul(a1 as u32, sa) as usize;
        (b * (q - 1) + a - 1) * e + (k1 + k2) % e
    })
}

fn gn(n: u32, name: String) -> Result<Group> {
    if n == 0 {
        return Err(Error::Unsupported("gn(0)".into()));
    }
    let s = sl23(String::new())?;
    let mut g = s.clone();
    for _ in 1..n {
        g = direct(&g, &s, String::new())?;
    }
    Ok(g.renamed(name))
}

/// `(G_n, H_n)` with `G_n = SL(2,3)^n` and `H_n` the kernel of the sum of the
/// coordinate images in `SL(2,3)/Q8 ≅ C3`.
pub fn gn_hn(n: u32) -> Result<(Arc<Group>, Subgroup)> {
    let g = build_with(&GroupExpr::Gn(n), &Limits::default())?;
    let s = build(&GroupExpr::Sl23)?;
    let q8 = sylow_subgroup(&s, 2)?;
    let t = s.elements().find(|&x| s.elem_order(x) == 3).unwrap();
    let coset: Vec<usize> =
        s.elements().map(|x| (0..3).find(|&k| q8.contains(s.mul(x, s.inv(s.pow(t, k))))).unwrap() as usize).collect();
    let kernel: Vec<Elem> = g
        .elements()
        .filter(|&x| {
            let mut x = x as usize;
            let mut sum = 0;
            for _ in 0..n {
                sum += coset[x % 24];
                x /= 24;
            }
            sum % 3 == 0
        })
        .collect();
    let h = Subgroup::from_elements(&g, &kernel)?;
    Ok((g, h))
}

/// The index-prime-to-p inclusion `F_q ⋊ F_q^× < (F_q ⋊ F_q^×) ⋊ Gal(F_q)`,
/// with `q = 9` for `p = 3` and `q = 8` for `p = 2`.
pub fn counterexample_rank2(p: u32) -> Result<(Arc<Group>, Subgroup)> {
    let q = match p {
        3 => 9,
        2 => 8,
        _ => return Err(Error::Unsupported(format!("rank-2 affine example for p = {p}"))),
    };
    let g = build(&GroupExpr::AffineSemilinear(q))?;
    let e = if p == 3 { 2 } else { 3 };
    let h: Vec<Elem> = g.elements().filter(|&x| x % e == 0).collect();
    let h = Subgroup::from_elements(&g, &h)?;
    Ok((g, h))
}

/// `sub` as a group in its own right, elements numbered by increasing parent index.
pub fn induced_group(sub: &Subgroup, name: impl Into<String>) -> Result<Group> {
    let g = sub.parent();
    let el = sub.elements();
    Group::from_fn(name, el.len(), |a, b| sub.position(g.mul(el[a], el[b])).unwrap())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hom::are_isomorphic;

    fn b(s: &str) -> Arc<Group> {
        build_str(s).unwrap()
    }

    #[test]
    fn orders_match_prediction() {
        for s in [
            "cyclic(1)",
            "dihedral(8)",
            "quaternion8",
            "symmetric(4)",
            "alternating(5)",
            "elementary_abelian(3,3)",
            "extraspecial_plus(3)",
            "sl23",
            "direct(cyclic(2),quaternion8)",
            "semidirect(cyclic(7),cyclic(3),action=[[2]])",
            "affine_frobenius(9)",
            "affine_semilinear(9)",
            "affine_semilinear(8)",
            "gn(1)",
            "hn(1)",
        ] {
            let e = GroupExpr::parse(s).unwrap();
            assert_eq!(build(&e).unwrap().order() as u128, e.order(), "{s}");
        }
    }

    #[test]
    fn quaternion_has_one_involution() {
        let q = b("quaternion8");
        assert_eq!(q.elements().filter(|&x| q.elem_order(x) == 2).count(), 1);
        assert!(!q.is_abelian());
        let d = b("dihedral(8)");
        assert_eq!(d.elements().filter(|&x| d.elem_order(x) == 2).count(), 5);
    }

    #[test]
    fn sl23_sylow_is_quaternion() {
        let s = b("sl23");
        let p = sylow_subgroup(&s, 2).unwrap();
        let q = b("quaternion8");
        assert!(are_isomorphic(&p, &Subgroup::whole(&q)));
    }

    #[test]
    fn extraspecial_shape() {
        for p in [3u32, 5] {
            let g = b(&format!("extraspecial_plus({p})"));
            let w = Subgroup::whole(&g);
            assert_eq!(w.exponent(), p as u64);
            assert_eq!(w.center().order(), p as usize);
        }
    }

    #[test]
    fn bad_actions_are_rejected() {
        // x -> x^2 has order 4 on C5, so C3 cannot act that way
        assert!(build_str("semidirect(cyclic(5),cyclic(3),action=[[2]])").is_err());
        assert!(build_str("semidirect(cyclic(4),cyclic(2),action=[[2]])").is_err());
        assert!(build_str("semidirect(cyclic(4),cyclic(2),action=[[3]])").is_ok());
    }

    #[test]
    fn caps() {
        assert!(build_str("symmetric(7)").unwrap_err().is_cap());
        assert!(build_str("gn(3)").unwrap_err().is_cap());
    }

    #[test]
    fn gn_hn_one() {
        let (g, h) = gn_hn(1).unwrap();
        assert_eq!(g.order(), 24);
        assert_eq!(h.order(), 8);
        assert_eq!(h, sylow_subgroup(&g, 2).unwrap());
    }

    #[test]
    fn rank2_pairs() {
        let (g, h) = counterexample_rank2(3).unwrap();
        assert_eq!((h.order(), g.order()), (72, 144));
        let (g, h) = counterexample_rank2(2).unwrap();
        assert_eq!((h.order(), g.order()), (56, 168));
        assert!(counterexample_rank2(5).is_err());
    }

    #[test]
    fn permutation_generators() {
        let l = Limits::default();
        let s3 = permutation_closure("s3", &[vec![1, 0, 2], vec![1, 2, 0]], &l).unwrap();
        assert!(s3.same_table(&b("symmetric(3)")));
        assert_eq!(permutation_closure("c1", &[], &l).unwrap().order(), 1);
        assert!(permutation_closure("bad", &[vec![0, 0]], &l).is_err());
        let tight = Limits { max_order: 5, ..l };
        assert!(permutation_closure("s3", &[vec![1, 0, 2], vec![1, 2, 0]], &tight).unwrap_err().is_cap());
    }

    #[test]
    fn deterministic() {
        assert!(b("hn(2)").same_table(&b("hn(2)")));
    }
}
