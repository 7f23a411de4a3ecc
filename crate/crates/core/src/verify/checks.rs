use std::sync::Arc;
use std::time::Instant;

use super::report::{CheckKind, VerificationReport};
use crate::catalog::{build, GroupExpr};
use crate::error::{Error, Result};
use crate::fusion::{check_saturation, family, rep_classes, rep_zpn_classes, FusionSystem};
use crate::group::{factorize, p_part, Group};
use crate::hom::{automorphism_group, GroupMap};
use crate::limits::Limits;
use crate::local::{
    characteristic_subgroups, maximal_abelian_in, p_rank_of, sylow_containing, thompson_d_failure, thompson_d_with,
    verify_p2_identity,
};
use crate::subgroup::{normalizer_in, Subgroup};

fn sylow_of(h: &Subgroup, p: u32) -> Subgroup {
    sylow_containing(h, p, &Subgroup::trivial(h.parent()))
}

/// `F_S(H)` and `F_S(G)` for a Sylow `S` of `H` that is also Sylow in `G`.
pub fn sylow_pair_systems(h: &Subgroup, g: &Subgroup, p: u32, limits: &Limits) -> Result<(FusionSystem, FusionSystem)> {
    h.check_parent(g)?;
    if !h.is_subgroup_of(g) {
        return Err(Error::NotContained { what: h.describe(), of: g.describe() });
    }
    let s = sylow_of(h, p);
    if s.order() as u64 != p_part(g.order() as u64, p) {
        return Err(Error::Precondition(format!(
            "{} contains no Sylow {p}-subgroup of {}",
            h.describe(),
            g.describe()
        )));
    }
    Ok((FusionSystem::transporter(p, &s, h, limits)?, FusionSystem::transporter(p, &s, g, limits)?))
}

/// Whether `H` controls p-fusion in `G`: `N_H(P,Q)/C_H(P) = N_G(P,Q)/C_G(P)`
/// as map sets for all `P, Q ≤ S`.
pub fn control_p_fusion(h: &Subgroup, g: &Arc<Group>, p: u32, limits: &Limits) -> Result<VerificationReport> {
    let start = Instant::now();
    let whole = Subgroup::whole(g);
    let (fh, fg) = sylow_pair_systems(h, &whole, p, limits)?;
    let mut report = VerificationReport::new(
        "control",
        CheckKind::Predicate,
        vec![h.describe(), g.name().to_string(), format!("p={p}")],
    );
    let diff = fh.first_difference(&fg, &family::all)?;
    if let Some(q) = &diff {
        report.witness(format!("Hom({}, S) differs", q.describe()));
    }
    Ok(report.with_outcome(true, diff.is_none()).timed(start))
}

/// Which subgroups the agreement hypothesis ranges over.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AgreementFamily {
    /// Elementary abelian for odd p, abelian of exponent at most 4 for p = 2.
    SmallExponent,
    /// Elementary abelian at every prime; too weak for p = 2.
    ElementaryOnly,
}

/// Agreement of two saturated systems on small-exponent abelian subgroups
/// implies equality.
pub fn small_abelian_control_instance(
    f: &FusionSystem,
    fsub: &FusionSystem,
    which: AgreementFamily,
) -> Result<VerificationReport> {
    let start = Instant::now();
    if f.s() != fsub.s() {
        return Err(Error::Precondition("fusion systems over different p-groups".into()));
    }
    for fs in [f, fsub] {
        let sat = check_saturation(fs)?;
        if !sat.conclusion {
            return Err(Error::Precondition(format!(
                "{} is not saturated: {}",
                fs.describe(),
                sat.witnesses.join("; ")
            )));
        }
    }
    let p = f.p();
    let (name, fam): (&str, fn(&Subgroup) -> bool) = match which {
        AgreementFamily::SmallExponent => ("theorem12", family::small_exponent_abelian(p)),
        AgreementFamily::ElementaryOnly => ("theorem12-elementary-only", family::elementary_abelian),
    };
    let mut report =
        VerificationReport::new(name, CheckKind::Theorem, vec![f.describe(), fsub.describe(), format!("p={p}")]);
    let hyp_diff = f.first_difference(fsub, &fam)?;
    let full_diff = f.first_difference(fsub, &family::all)?;
    if let Some(q) = &hyp_diff {
        report.witness(format!("family differs at {}", q.describe()));
    }
    if let Some(q) = &full_diff {
        report.witness(format!("systems differ at {}", q.describe()));
    }
    Ok(report.with_outcome(hyp_diff.is_none(), full_diff.is_none()).timed(start))
}

/// `Rep(Z_p^k, H) → Rep(Z_p^k, G)` along `phi` for each `k` in `1..=n`;
/// returns the first `k` where the map is not bijective.
pub fn first_non_bijective_rank(phi: &GroupMap, p: u32, n: u32, limits: &Limits) -> Result<Option<u32>> {
    for k in 1..=n {
        let dom = rep_zpn_classes(k, phi.source(), p, limits)?;
        let cod = rep_zpn_classes(k, phi.target(), p, limits)?;
        let (inj, surj) = dom.push_forward(phi, &cod)?;
        if !(inj && surj) {
            return Ok(Some(k));
        }
    }
    Ok(None)
}

/// The three conclusions for `phi: H → G`: kernel and index prime to `p`,
/// and `phi(H)` controlling p-fusion. Returns failures as witnesses.
fn control_conclusions(phi: &GroupMap, p: u32, limits: &Limits) -> Result<Vec<String>> {
    let mut fails = Vec::new();
    let ker = phi.kernel().order();
    if ker % p as usize == 0 {
        fails.push(format!("|ker| = {ker} is divisible by {p}"));
    }
    let image = phi.image();
    let index = phi.target().order() / image.order();
    if index % p as usize == 0 {
        fails.push(format!("index {index} is divisible by {p}"));
    } else {
        let (fh, fg) = sylow_pair_systems(&image, phi.target(), p, limits)?;
        if let Some(q) = fh.first_difference(&fg, &family::all)? {
            fails.push(format!("image does not control fusion: Hom({}, S) differs", q.describe()));
        }
    }
    Ok(fails)
}

/// Bijectivity of `Rep(A, H) → Rep(A, G)` for abelian `A` up to the p-rank
/// of `G` implies kernel and index prime to `p` and control of fusion. The
/// rank-`k` condition is tested on `Z_p^k` for `k ≤ max(rk_p(G), 1)`.
pub fn rep_bijection_control_instance(phi: &GroupMap, p: u32, limits: &Limits) -> Result<VerificationReport> {
    let start = Instant::now();
    let rank = p_rank_of(phi.target(), p);
    let n = rank.max(1);
    let mut report = VerificationReport::new(
        "theorem14",
        CheckKind::Theorem,
        vec![phi.source().parent().name().to_string(), phi.target().describe(), format!("p={p}"), format!("n={n}")],
    );
    let bad_rank = first_non_bijective_rank(phi, p, n, limits)?;
    if let Some(k) = bad_rank {
        report.witness(format!("Rep(Z_{p}^{k}) map is not bijective"));
    }
    let fails = control_conclusions(phi, p, limits)?;
    let ok = fails.is_empty();
    report.witnesses.extend(fails);
    Ok(report.with_outcome(bad_rank.is_none(), ok).timed(start))
}

/// Looks for maps where the Rep bijection holds one rank below `rk_p(G)` but
/// a conclusion fails. A true conclusion here means "no gap example".
pub fn rank_gap_instance(phi: &GroupMap, p: u32, limits: &Limits) -> Result<VerificationReport> {
    let start = Instant::now();
    let rank = p_rank_of(phi.target(), p);
    let mut report = VerificationReport::new(
        "theorem14-gap",
        CheckKind::Predicate,
        vec![phi.source().parent().name().to_string(), phi.target().describe(), format!("p={p}")],
    );
    if rank < 2 {
        report.witness(format!("rk_{p} = {rank}: no lower rank to test"));
        return Ok(report.with_outcome(false, true).timed(start));
    }
    let below = first_non_bijective_rank(phi, p, rank - 1, limits)?.is_none();
    let fails = control_conclusions(phi, p, limits)?;
    if below && !fails.is_empty() {
        report.witness(format!("bijective up to n = {} but: {}", rank - 1, fails.join("; ")));
    }
    Ok(report.with_outcome(below, !(below && !fails.is_empty())).timed(start))
}

/// Abelian p-groups `∏ C_{p^{e_i}}` of rank `n` with `1 ≤ e_1 ≤ … ≤ e_n ≤ r`.
pub fn abelian_groups_of_rank(p: u32, n: u32, r: u32) -> Vec<GroupExpr> {
    fn rec(p: u32, left: u32, min_e: u32, r: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if left == 0 {
            out.push(prefix.clone());
            return;
        }
        for e in min_e..=r {
            prefix.push(e);
            rec(p, left - 1, e, r, prefix, out);
            prefix.pop();
        }
    }
    let mut exps = Vec::new();
    rec(p, n, 1, r, &mut Vec::new(), &mut exps);
    exps.into_iter()
        .map(|es| {
            let mut it = es.iter().rev().map(|&e| GroupExpr::Cyclic(p.pow(e)));
            let first = it.next().unwrap();
            it.fold(first, |acc, c| GroupExpr::direct(c, acc))
        })
        .collect()
}

/// Both sides of "`Z_p^n` classes biject iff classes of every abelian `A` of
/// rank `n` biject", plus "bijection at `n ≥ min(rk_p G, rk_p H + 1)` forces
/// equal ranks", on one map. Abelian test groups run up to exponent `p^(r+1)`, where
/// `p^r` is the first power at least the exponents of the Sylow subgroups.
pub fn rep_rank_equivalence_instance(phi: &GroupMap, p: u32, n: u32, limits: &Limits) -> Result<VerificationReport> {
    let start = Instant::now();
    if n == 0 {
        return Err(Error::Precondition("n must be positive".into()));
    }
    let (h, g) = (phi.source(), phi.target());
    let mut report = VerificationReport::new(
        "lemma-small",
        CheckKind::Theorem,
        vec![h.parent().name().to_string(), g.describe(), format!("p={p}"), format!("n={n}")],
    );
    let tuple_side = {
        let dom = rep_zpn_classes(n, h, p, limits)?;
        let cod = rep_zpn_classes(n, g, p, limits)?;
        let (i, s) = dom.push_forward(phi, &cod)?;
        report.witness(format!("Z_{p}^{n}: {} -> {} classes", dom.class_count(), cod.class_count()));
        i && s
    };
    let exp = sylow_of(h, p).exponent().max(sylow_of(g, p).exponent());
    let mut r = 0;
    while (p as u64).pow(r) < exp {
        r += 1;
    }
    let mut abelian_side = true;
    for a_expr in abelian_groups_of_rank(p, n, r.max(1) + 1) {
        let a = build(&a_expr)?;
        let aw = Subgroup::whole(&a);
        let dom = rep_classes(&aw, h, limits)?;
        let cod = rep_classes(&aw, g, limits)?;
        let (i, s) = dom.push_forward(phi, &cod)?;
        report.witness(format!("{a_expr}: {} -> {} classes", dom.class_count(), cod.class_count()));
        abelian_side &= i && s;
    }
    let (rh, rg) = (p_rank_of(h, p), p_rank_of(g, p));
    let rank_premise = tuple_side && n >= rg.min(rh + 1);
    let rank_ok = !rank_premise || rh == rg;
    if tuple_side != abelian_side {
        report.witness(format!("equivalence fails: tuples {tuple_side}, abelian groups {abelian_side}"));
    }
    if !rank_ok {
        report.witness(format!("ranks differ: rk(H) = {rh}, rk(G) = {rg}"));
    }
    Ok(report.with_outcome(true, tuple_side == abelian_side && rank_ok).timed(start))
}

/// Closure of a set of automorphism indices under composition.
fn generated_indices(aut: &crate::hom::AutGroup, gens: &[usize]) -> usize {
    let mut seen = vec![false; aut.order()];
    seen[0] = true;
    let mut stack = vec![0];
    let mut count = 1;
    while let Some(x) = stack.pop() {
        for &g in gens {
            let y = aut.compose(x, g);
            if !seen[y] {
                seen[y] = true;
                count += 1;
                stack.push(y);
            }
        }
    }
    count
}

/// Under the standing hypotheses on `P` and `Q ⊴ P`,
/// `Aut_F(P) = ⟨Aut_Fsub(P), C_{Aut_F(P)}(Q)⟩`.
pub fn aut_generation_instance(
    f: &FusionSystem,
    fsub: &FusionSystem,
    p_sub: &Subgroup,
    q_sub: &Subgroup,
) -> Result<VerificationReport> {
    let start = Instant::now();
    if f.s() != fsub.s() {
        return Err(Error::Precondition("fusion systems over different p-groups".into()));
    }
    let s = f.s();
    let mut report = VerificationReport::new(
        "main-lemma",
        CheckKind::Theorem,
        vec![f.describe(), fsub.describe(), format!("P={}", p_sub.describe()), format!("Q={}", q_sub.describe())],
    );
    let mut hyp = true;
    let mut note = |ok: bool, why: String, report: &mut VerificationReport| {
        if !ok {
            hyp = false;
            report.witness(format!("hypothesis: {why}"));
        }
    };
    note(f.is_centric(p_sub)?, "P is not F-centric".into(), &mut report);
    note(f.is_fully_normalized(p_sub)?, "P is not fully F-normalized".into(), &mut report);
    note(q_sub.is_normal_in(p_sub), "Q is not normal in P".into(), &mut report);
    let n = normalizer_in(s, p_sub);
    for r in f.subgroups() {
        if r.order() > p_sub.order() && p_sub.is_subgroup_of(r) && r.is_subgroup_of(&n) {
            let (a, b) = (f.aut_f(r)?, fsub.aut_f(r)?);
            note(a.perms() == b.perms(), format!("Aut differs on {}", r.describe()), &mut report);
        }
    }
    note(f.hom_set(q_sub, s)? == fsub.hom_set(q_sub, s)?, "Hom(Q, S) differs".into(), &mut report);

    let aut = f.aut_f(p_sub)?;
    let sub_aut = fsub.aut_f(p_sub)?;
    let mut gens: Vec<usize> = Vec::new();
    for perm in sub_aut.perms() {
        match aut.index_of(perm) {
            Some(i) => gens.push(i),
            None => {
                return Err(Error::Precondition("the smaller system is not contained in the larger".into()));
            }
        }
    }
    gens.extend((0..aut.order()).filter(|&i| aut.fixes_pointwise(i, q_sub)));
    let generated = generated_indices(&aut, &gens);
    let ok = generated == aut.order();
    if !ok {
        report.witness(format!("generated {generated} of {} automorphisms", aut.order()));
    }
    Ok(report.with_outcome(hyp, ok).timed(start))
}

/// `aut_generation_instance` for every F-centric fully normalized `P` and
/// every `Q ⊴ P`, in canonical order.
pub fn aut_generation_all(f: &FusionSystem, fsub: &FusionSystem) -> Result<Vec<VerificationReport>> {
    let mut out = Vec::new();
    for ps in f.subgroups() {
        if !f.is_centric(ps)? || !f.is_fully_normalized(ps)? {
            continue;
        }
        for qs in f.subgroups().iter().filter(|q| q.is_subgroup_of(ps) && q.is_normal_in(ps)) {
            out.push(aut_generation_instance(f, fsub, ps, qs)?);
        }
    }
    Ok(out)
}

/// For a saturated subsystem `fsub` on `T ≤ S`: an F-centric `Q ≤ T` with
/// `Hom_F(Q, T) = Hom_Fsub(Q, T)` forces `T = S` and `Aut_F(T) = Aut_Fsub(T)`.
pub fn centric_agreement_instance(f: &FusionSystem, fsub: &FusionSystem) -> Result<VerificationReport> {
    let start = Instant::now();
    let t = fsub.s();
    if !t.same_parent(f.s()) || !t.is_subgroup_of(f.s()) {
        return Err(Error::NotContained { what: t.describe(), of: f.s().describe() });
    }
    let mut report = VerificationReport::new("sylowiso", CheckKind::Theorem, vec![f.describe(), fsub.describe()]);
    let saturated = check_saturation(fsub)?.conclusion;
    if !saturated {
        report.witness("hypothesis: the subsystem is not saturated");
    }
    let mut found = None;
    for q in fsub.subgroups() {
        if !f.is_centric(q)? {
            continue;
        }
        let a: Vec<GroupMap> = f.hom_set(q, t)?;
        let b: Vec<GroupMap> = fsub.hom_set(q, t)?;
        let same = a.len() == b.len() && a.iter().zip(&b).all(|(x, y)| x.images() == y.images());
        if same {
            found = Some(q.clone());
            break;
        }
    }
    match &found {
        Some(q) => report.witness(format!("Q = {}", q.describe())),
        None => report.witness("hypothesis: no F-centric Q <= T with matching hom sets"),
    }
    let equal_s = t == f.s();
    let aut_eq = f.aut_f(t)?.perms() == fsub.aut_f(t)?.perms();
    if !equal_s {
        report.witness(format!("T = {} is smaller than S", t.describe()));
    }
    if !aut_eq {
        report.witness("Aut_F(T) differs from the subsystem's");
    }
    Ok(report.with_outcome(saturated && found.is_some(), equal_s && aut_eq).timed(start))
}

/// In `p^{1+2}_+` no abelian characteristic subgroup sees every nontrivial
/// p′-automorphism: each one is fixed pointwise by some such automorphism.
pub fn extraspecial_detection_check(p: u32, limits: &Limits) -> Result<VerificationReport> {
    let start = Instant::now();
    if p == 2 || !crate::group::is_prime(p) {
        return Err(Error::Precondition(format!("p = {p} must be an odd prime")));
    }
    let g = build(&GroupExpr::ExtraspecialPlus(p))?;
    let whole = Subgroup::whole(&g);
    let aut = automorphism_group(&whole, limits)?;
    let mut report = VerificationReport::new("extraspecial-note", CheckKind::Predicate, vec![g.name().to_string()]);
    let p_prime = aut.nontrivial_p_prime(p);
    let mut none_detect = true;
    for c in characteristic_subgroups(&aut, limits)? {
        if !c.is_abelian() {
            continue;
        }
        match p_prime.iter().find(|&&i| aut.fixes_pointwise(i, &c)) {
            Some(&i) => report.witness(format!(
                "{} is fixed pointwise by an automorphism of order {}",
                c.describe(),
                aut.element_order(i)
            )),
            None => {
                none_detect = false;
                report.witness(format!("{} detects every p'-automorphism", c.describe()));
            }
        }
    }
    let d = thompson_d_with(&whole, &aut, p, limits)?;
    report.witness(format!("D = {} ({})", d.describe(), if d.is_abelian() { "abelian" } else { "nonabelian" }));
    Ok(report.with_outcome(true, none_detect).timed(start))
}

/// Postconditions of `D` and of a maximal abelian `A ≤ D` for one p-group:
/// exponent, `[D, P] ≤ Z(D)`, p′-detection on `D`, `A ⊴ P` and
/// `C_{Aut(P)}(A)` a p-group.
pub fn thompson_check(p_group: &Subgroup, limits: &Limits) -> Result<VerificationReport> {
    let start = Instant::now();
    let p = p_group.prime().ok_or(Error::NotPrimePower { order: p_group.order() })?;
    let aut = automorphism_group(p_group, limits)?;
    let mut report =
        VerificationReport::new("thompson", CheckKind::Theorem, vec![p_group.describe(), format!("p={p}")]);
    let d = thompson_d_with(p_group, &aut, p, limits)?;
    let mut ok = true;
    if let Some(why) = thompson_d_failure(p_group, &d, &aut, p) {
        ok = false;
        report.witness(format!("D: {why}"));
    }
    let a = maximal_abelian_in(&d, limits)?;
    if !a.is_normal_in(p_group) {
        ok = false;
        report.witness(format!("A = {} is not normal", a.describe()));
    }
    let not_p =
        (0..aut.order()).find(|&i| aut.fixes_pointwise(i, &a) && !crate::group::is_power_of(aut.element_order(i), p));
    if let Some(i) = not_p {
        ok = false;
        report.witness(format!("C_Aut(P)(A) has an element of order {}", aut.element_order(i)));
    }
    report.witness(format!("|Aut(P)| = {}, D = {}, A = {}", aut.order(), d.describe(), a.describe()));
    Ok(report.with_outcome(true, ok).timed(start))
}

/// `(xy)^4 = x^4 y^4` on a 2-group with elementary abelian central quotient.
/// The hypothesis is false when the precondition fails.
pub fn p2_identity_check(p_group: &Subgroup) -> VerificationReport {
    let start = Instant::now();
    let report = VerificationReport::new("p2-identity", CheckKind::Theorem, vec![p_group.describe()]);
    match verify_p2_identity(p_group) {
        Ok(v) => report.with_outcome(true, v),
        Err(_) => report.with_outcome(false, true),
    }
    .timed(start)
}

/// `|Rep(A, G)|` as a reported count.
pub fn rep_count_check(a: &Subgroup, g: &Subgroup, limits: &Limits) -> Result<VerificationReport> {
    let start = Instant::now();
    let classes = rep_classes(a, g, limits)?;
    let mut report =
        VerificationReport::new("rep-count", CheckKind::Predicate, vec![a.parent().name().to_string(), g.describe()]);
    report.witness(format!("class_count {}", classes.class_count()));
    report.witness(format!("hom_count {}", classes.tuple_count()));
    Ok(report.with_outcome(true, true).timed(start))
}

/// Saturation of `F_S(G)` for a Sylow `S`: always expected to hold.
pub fn sylow_saturation_check(g: &Arc<Group>, p: u32, limits: &Limits) -> Result<VerificationReport> {
    let s = crate::local::sylow_subgroup(g, p)?;
    let fs = FusionSystem::transporter(p, &s, &Subgroup::whole(g), limits)?;
    let mut report = check_saturation(&fs)?;
    report.kind = CheckKind::Theorem;
    report.inputs.push(format!("p={p}"));
    Ok(report)
}

/// Primes dividing the order of `g`.
pub fn primes_of(g: &Group) -> Vec<u32> {
    factorize(g.order() as u64).into_iter().map(|(p, _)| p).collect()
}
