//! Deterministic group constructors and the bundled test corpus.

mod build;
mod expr;
pub mod field;

use std::ops::ControlFlow;
use std::sync::Arc;

pub use build::{build, build_str, build_with, counterexample_rank2, gn_hn, induced_group, permutation_closure};
pub use expr::GroupExpr;

use crate::error::{Error, Result};
use crate::group::{factorize, Elem, Group};
use crate::hom::{find_embedding, GroupMap, HomKind, HomSearch};
use crate::local::sylow_subgroup;
use crate::subgroup::{normalizer, Subgroup};

/// Bundled p-groups, small enough for full automorphism groups.
pub const P_GROUPS: &[&str] = &[
    "cyclic(2)",
    "cyclic(4)",
    "cyclic(8)",
    "elementary_abelian(2,2)",
    "elementary_abelian(2,3)",
    "elementary_abelian(2,4)",
    "direct(cyclic(4),cyclic(2))",
    "direct(cyclic(4),cyclic(4))",
    "quaternion8",
    "dihedral(8)",
    "dihedral(16)",
    "semidirect(cyclic(8),cyclic(2),action=[[3]])",
    "semidirect(cyclic(8),cyclic(2),action=[[5]])",
    "direct(quaternion8,cyclic(2))",
    "direct(dihedral(8),cyclic(2))",
    "direct(quaternion8,quaternion8)",
    "cyclic(3)",
    "cyclic(9)",
    "cyclic(27)",
    "elementary_abelian(3,2)",
    "elementary_abelian(3,3)",
    "direct(cyclic(9),cyclic(3))",
    "direct(cyclic(9),cyclic(9))",
    "direct(cyclic(27),cyclic(3))",
    "extraspecial_plus(3)",
    "semidirect(cyclic(9),cyclic(3),action=[[4]])",
    "direct(extraspecial_plus(3),cyclic(3))",
    "cyclic(5)",
    "extraspecial_plus(5)",
];

/// Bundled groups that are not p-groups.
pub const AMBIENT_GROUPS: &[&str] = &[
    "symmetric(3)",
    "dihedral(10)",
    "alternating(4)",
    "direct(symmetric(3),cyclic(2))",
    "semidirect(cyclic(9),cyclic(2),action=[[8]])",
    "semidirect(cyclic(7),cyclic(3),action=[[2]])",
    "sl23",
    "gn(1)",
    "symmetric(4)",
    "semidirect(extraspecial_plus(3),cyclic(2),action=[[1,6,18]])",
    "affine_frobenius(8)",
    "alternating(5)",
    "affine_frobenius(9)",
    "symmetric(5)",
    "affine_semilinear(9)",
    "affine_semilinear(8)",
    "hn(2)",
    "gn(2)",
];

/// Every bundled expression, p-groups first.
pub fn list() -> Vec<&'static str> {
    P_GROUPS.iter().chain(AMBIENT_GROUPS).copied().chain(["hn(1)"]).collect()
}

/// `H ≤ G` together with the prime whose fusion is under study.
#[derive(Clone, Debug)]
pub struct Pair {
    pub name: String,
    pub group: Arc<Group>,
    pub sub: Subgroup,
    pub p: u32,
}

impl Pair {
    pub fn new(name: impl Into<String>, sub: Subgroup, p: u32) -> Pair {
        Pair { name: name.into(), group: sub.parent().clone(), sub, p }
    }
}

/// The image of the first embedding of `expr` into `g`.
pub fn embedded(expr: &str, g: &Arc<Group>) -> Result<Subgroup> {
    let a = build_str(expr)?;
    find_embedding(&Subgroup::whole(&a), &Subgroup::whole(g))
        .map(|m| m.image())
        .ok_or_else(|| Error::NotContained { what: expr.into(), of: g.name().into() })
}

/// Pairs that the fusion literature names explicitly.
pub fn named_pairs() -> Result<Vec<Pair>> {
    let mut out = Vec::new();
    let sl = build_str("sl23")?;
    out.push(Pair::new("quaternion8 < sl23", sylow_subgroup(&sl, 2)?, 2));
    for n in [1, 2] {
        let (_, h) = gn_hn(n)?;
        out.push(Pair::new(format!("hn({n}) < gn({n})"), h, 2));
    }
    for p in [3, 2] {
        let (g, h) = counterexample_rank2(p)?;
        let q = if p == 3 { 9 } else { 8 };
        out.push(Pair { name: format!("affine_frobenius({q}) < affine_semilinear({q})"), group: g, sub: h, p });
    }
    let a5 = build_str("alternating(5)")?;
    let s4 = build_str("symmetric(4)")?;
    out.push(Pair::new("alternating(4) < alternating(5)", embedded("alternating(4)", &a5)?, 2));
    out.push(Pair::new("alternating(4) < alternating(5)", embedded("alternating(4)", &a5)?, 3));
    out.push(Pair::new("symmetric(3) < symmetric(4)", embedded("symmetric(3)", &s4)?, 3));
    out.push(Pair::new("alternating(4) < symmetric(4)", embedded("alternating(4)", &s4)?, 3));
    Ok(out)
}

/// For each ambient group `G` and prime `p` dividing `|G|`: `(S, G)`,
/// `(N_G(S), G)` and `(G, G)`, followed by the named pairs.
pub fn pairs() -> Result<Vec<Pair>> {
    let mut out = Vec::new();
    for expr in AMBIENT_GROUPS {
        let g = build_str(expr)?;
        let whole = Subgroup::whole(&g);
        for (p, _) in factorize(g.order() as u64) {
            let s = sylow_subgroup(&g, p)?;
            let n = normalizer(&g, &whole, &s)?;
            out.push(Pair::new(format!("sylow_{p} < {expr}"), s.clone(), p));
            if n != s {
                out.push(Pair::new(format!("normalizer of sylow_{p} < {expr}"), n.clone(), p));
            }
            if n != whole {
                out.push(Pair::new(format!("{expr} < {expr}"), whole.clone(), p));
            }
        }
    }
    out.extend(named_pairs()?);
    Ok(out)
}

/// A homomorphism together with the prime at which it is tested.
#[derive(Clone, Debug)]
pub struct HomInstance {
    pub name: String,
    pub map: GroupMap,
    pub p: u32,
}

fn first_surjection(source: &Arc<Group>, target: &Arc<Group>) -> Option<GroupMap> {
    let (s, t) = (Subgroup::whole(source), Subgroup::whole(target));
    let search = HomSearch::new(&s, &t, HomKind::All);
    let mut found = None;
    search.run(&mut |images, _| {
        let m = GroupMap::new_unchecked(s.clone(), t.clone(), images.to_vec());
        if m.image().order() == target.order() {
            found = Some(m);
            return ControlFlow::Break(());
        }
        ControlFlow::Continue(())
    });
    found
}

/// Inclusions of every pair, identity maps of the ambient groups, and a few
/// non-injective maps.
pub fn homomorphism_instances() -> Result<Vec<HomInstance>> {
    let mut out = Vec::new();
    for pair in pairs()? {
        let map = GroupMap::inclusion(&pair.sub, &Subgroup::whole(&pair.group))?;
        out.push(HomInstance { name: pair.name.clone(), map, p: pair.p });
    }
    let projections: [(&str, &str); 4] = [
        ("gn(2)", "gn(1)"),
        ("direct(symmetric(3),cyclic(2))", "symmetric(3)"),
        ("sl23", "cyclic(3)"),
        ("symmetric(4)", "symmetric(3)"),
    ];
    for (src, tgt) in projections {
        let (gs, gt) = (build_str(src)?, build_str(tgt)?);
        let map = if src == "gn(2)" {
            // first coordinate
            let (s, t) = (Subgroup::whole(&gs), Subgroup::whole(&gt));
            GroupMap::from_fn(s, t, |x: Elem| x / 24)?
        } else {
            first_surjection(&gs, &gt)
                .ok_or_else(|| Error::InvariantViolation(format!("no surjection {src} -> {tgt}")))?
        };
        for (p, _) in factorize(gs.order() as u64) {
            out.push(HomInstance { name: format!("{src} -> {tgt}"), map: map.clone(), p });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn everything_builds() {
        for e in list() {
            let g = build_str(e).unwrap();
            assert_eq!(g.name(), e);
        }
    }

    #[test]
    fn p_groups_are_p_groups() {
        for e in P_GROUPS {
            let g = build_str(e).unwrap();
            assert!(crate::group::prime_of_power(g.order()).is_some(), "{e}");
        }
    }

    #[test]
    fn names_are_canonical() {
        for e in list() {
            assert_eq!(GroupExpr::parse(e).unwrap().to_string(), e);
        }
    }
}
