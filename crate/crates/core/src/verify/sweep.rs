//! Catalog sweeps. Each instance runs on its own thread under the per-instance
//! budget; instances that time out or hit a cap are listed as skipped.
//! Results are collected in catalog order.

use std::sync::mpsc;
use std::sync::Arc;
use std::thread;

use super::checks::*;
use super::report::{ReportFile, Skipped, VerificationReport};
use crate::catalog::{self, build_str, homomorphism_instances, pairs, Pair};
use crate::error::{Error, Result};
use crate::fusion::FusionSystem;
use crate::group::Group;
use crate::limits::Limits;
use crate::subgroup::Subgroup;

/// Largest ambient order included in pair sweeps.
pub const SWEEP_MAX_ORDER: usize = 600;

#[derive(Default)]
struct Collector {
    reports: Vec<VerificationReport>,
    skipped: Vec<Skipped>,
}

impl Collector {
    fn run<F>(&mut self, check: &str, inputs: Vec<String>, limits: &Limits, job: F) -> Result<()>
    where
        F: FnOnce() -> Result<Vec<VerificationReport>> + Send + 'static,
    {
        let (tx, rx) = mpsc::channel();
        thread::spawn(move || {
            let _ = tx.send(job());
        });
        let skip = |reason: String| Skipped { check: check.to_string(), inputs: inputs.clone(), reason };
        match rx.recv_timeout(limits.budget) {
            Ok(Ok(rs)) => self.reports.extend(rs),
            Ok(Err(e)) if e.is_cap() || matches!(e, Error::Precondition(_)) => self.skipped.push(skip(e.to_string())),
            Ok(Err(e)) => return Err(e),
            Err(_) => self.skipped.push(skip(format!("budget of {}s exceeded", limits.budget.as_secs()))),
        }
        Ok(())
    }

    fn finish(self) -> ReportFile {
        ReportFile::new(self.reports, self.skipped)
    }
}

fn eligible_pairs(p: Option<u32>) -> Result<Vec<Pair>> {
    Ok(pairs()?.into_iter().filter(|x| p.map_or(true, |p| x.p == p) && x.group.order() <= SWEEP_MAX_ORDER).collect())
}

fn catalog_groups(limits: &Limits) -> Result<Vec<Arc<Group>>> {
    catalog::list().into_iter().map(|name| catalog::build_with(&name.parse()?, limits)).collect()
}

/// `control_p_fusion` on every catalog pair.
pub fn sweep_control(p: Option<u32>, limits: &Limits) -> Result<ReportFile> {
    let mut c = Collector::default();
    for pair in eligible_pairs(p)? {
        let l = limits.clone();
        c.run("control", vec![pair.name.clone()], limits, move || {
            Ok(vec![control_p_fusion(&pair.sub, &pair.group, pair.p, &l)?])
        })?;
    }
    Ok(c.finish())
}

/// The small-abelian agreement theorem on `(F_S(H), F_S(G))` for every pair.
/// The family is the elementary abelians at odd p and the given family at 2.
pub fn sweep_small_abelian(p: Option<u32>, at_two: AgreementFamily, limits: &Limits) -> Result<ReportFile> {
    let mut c = Collector::default();
    for pair in eligible_pairs(p)? {
        let l = limits.clone();
        let which = if pair.p == 2 { at_two } else { AgreementFamily::SmallExponent };
        c.run("theorem12", vec![pair.name.clone()], limits, move || {
            let whole = Subgroup::whole(&pair.group);
            let (fh, fg) = sylow_pair_systems(&pair.sub, &whole, pair.p, &l)?;
            let mut r = small_abelian_control_instance(&fg, &fh, which)?;
            r.inputs.insert(0, pair.name);
            Ok(vec![r])
        })?;
    }
    Ok(c.finish())
}

/// The Rep-bijection theorem on every catalog homomorphism.
pub fn sweep_rep_bijection(p: Option<u32>, limits: &Limits) -> Result<ReportFile> {
    let mut c = Collector::default();
    for inst in homomorphism_instances()?.into_iter().filter(|x| p.map_or(true, |p| x.p == p)) {
        let l = limits.clone();
        c.run("theorem14", vec![inst.name.clone()], limits, move || {
            let mut r = rep_bijection_control_instance(&inst.map, inst.p, &l)?;
            r.inputs.insert(0, inst.name);
            Ok(vec![r])
        })?;
    }
    Ok(c.finish())
}

/// Gap search one rank below `rk_p(G)` on every catalog homomorphism.
pub fn sweep_rank_gap(p: Option<u32>, limits: &Limits) -> Result<ReportFile> {
    let mut c = Collector::default();
    for inst in homomorphism_instances()?.into_iter().filter(|x| p.map_or(true, |p| x.p == p)) {
        let l = limits.clone();
        c.run("theorem14-gap", vec![inst.name.clone()], limits, move || {
            let mut r = rank_gap_instance(&inst.map, inst.p, &l)?;
            r.inputs.insert(0, inst.name);
            Ok(vec![r])
        })?;
    }
    Ok(c.finish())
}

/// The rank-equivalence lemma on every catalog homomorphism for
/// `n = 1..=max(rk_p(G), 1)`.
pub fn sweep_rank_equivalence(p: Option<u32>, limits: &Limits) -> Result<ReportFile> {
    let mut c = Collector::default();
    for inst in homomorphism_instances()?.into_iter().filter(|x| p.map_or(true, |p| x.p == p)) {
        let top = crate::local::p_rank_of(inst.map.target(), inst.p).max(1);
        for n in 1..=top {
            let l = limits.clone();
            let inst = inst.clone();
            c.run("lemma-small", vec![inst.name.clone(), format!("n={n}")], limits, move || {
                let mut r = rep_rank_equivalence_instance(&inst.map, inst.p, n, &l)?;
                r.inputs.insert(0, inst.name);
                Ok(vec![r])
            })?;
        }
    }
    Ok(c.finish())
}

/// Saturation of `F_S(G)` for every catalog group and every prime of its order.
pub fn sweep_saturation(p: Option<u32>, limits: &Limits) -> Result<ReportFile> {
    let mut c = Collector::default();
    for g in catalog_groups(limits)? {
        for q in primes_of(&g).into_iter().filter(|&q| p.map_or(true, |p| p == q)) {
            let l = limits.clone();
            let g = g.clone();
            c.run("saturation", vec![g.name().to_string(), format!("p={q}")], limits, move || {
                Ok(vec![sylow_saturation_check(&g, q, &l)?])
            })?;
        }
    }
    Ok(c.finish())
}

/// `D` and `A` postconditions on catalog 2-groups of order at most 64 and
/// 3-groups of order at most 81 (or all p-groups at the given prime).
pub fn sweep_thompson(p: Option<u32>, limits: &Limits) -> Result<ReportFile> {
    let mut c = Collector::default();
    for name in catalog::P_GROUPS {
        let g = build_str(name)?;
        let q = crate::group::prime_of_power(g.order()).unwrap_or(0);
        let small = (q == 2 && g.order() <= 64) || (q == 3 && g.order() <= 81);
        if !p.map_or(small, |p| p == q) {
            continue;
        }
        let l = limits.clone();
        c.run("thompson", vec![name.to_string()], limits, move || Ok(vec![thompson_check(&Subgroup::whole(&g), &l)?]))?;
    }
    Ok(c.finish())
}

/// `(xy)^4 = x^4 y^4` on catalog 2-groups.
pub fn sweep_p2_identity(limits: &Limits) -> Result<ReportFile> {
    let mut c = Collector::default();
    for name in catalog::P_GROUPS {
        let g = build_str(name)?;
        if g.order() % 2 != 0 {
            continue;
        }
        c.run("p2-identity", vec![name.to_string()], limits, move || {
            Ok(vec![p2_identity_check(&Subgroup::whole(&g))])
        })?;
    }
    Ok(c.finish())
}

/// Subgroup-generation lemma on `(F_S(G), F_S(H))` for every pair, every
/// F-centric fully normalized `P` and every `Q ⊴ P`.
pub fn sweep_aut_generation(p: Option<u32>, limits: &Limits) -> Result<ReportFile> {
    let mut c = Collector::default();
    for pair in eligible_pairs(p)? {
        let l = limits.clone();
        c.run("main-lemma", vec![pair.name.clone()], limits, move || {
            let whole = Subgroup::whole(&pair.group);
            let (fh, fg) = sylow_pair_systems(&pair.sub, &whole, pair.p, &l)?;
            let mut out = aut_generation_all(&fg, &fh)?;
            for r in &mut out {
                r.inputs.insert(0, pair.name.clone());
            }
            Ok(out)
        })?;
    }
    Ok(c.finish())
}

/// Centric-agreement lemma for `F_S(H) ≤ F_S(G)` on every pair, plus the
/// inner system of a maximal subgroup `T < S` as a negative control.
pub fn sweep_centric_agreement(p: Option<u32>, limits: &Limits) -> Result<ReportFile> {
    let mut c = Collector::default();
    for pair in eligible_pairs(p)? {
        let l = limits.clone();
        c.run("sylowiso", vec![pair.name.clone()], limits, move || {
            let whole = Subgroup::whole(&pair.group);
            let (fh, fg) = sylow_pair_systems(&pair.sub, &whole, pair.p, &l)?;
            let mut r = centric_agreement_instance(&fg, &fh)?;
            r.inputs.insert(0, pair.name.clone());
            let mut out = vec![r];
            let s = fg.s();
            if let Some(t) = fg.subgroups().iter().rev().find(|t| t.order() * pair.p as usize == s.order()) {
                let ft = FusionSystem::inner(pair.p, t, &l)?;
                let mut r = centric_agreement_instance(&fg, &ft)?;
                r.inputs.insert(0, pair.name.clone());
                out.push(r);
            }
            Ok(out)
        })?;
    }
    Ok(c.finish())
}

/// The extraspecial detection check at 3 and 5.
pub fn sweep_extraspecial(p: Option<u32>, limits: &Limits) -> Result<ReportFile> {
    let mut c = Collector::default();
    for q in [3, 5].into_iter().filter(|&q| p.map_or(true, |p| p == q)) {
        let l = limits.clone();
        c.run("extraspecial-note", vec![format!("p={q}")], limits, move || {
            Ok(vec![extraspecial_detection_check(q, &l)?])
        })?;
    }
    Ok(c.finish())
}

/// `Rep(C_p, G)` counts for every catalog group at every prime.
pub fn sweep_rep_count(p: Option<u32>, limits: &Limits) -> Result<ReportFile> {
    let mut c = Collector::default();
    for g in catalog_groups(limits)? {
        for q in primes_of(&g).into_iter().filter(|&q| p.map_or(true, |p| p == q)) {
            let l = limits.clone();
            let g = g.clone();
            c.run("rep-count", vec![g.name().to_string(), format!("p={q}")], limits, move || {
                let a = build_str(&format!("cyclic({q})"))?;
                Ok(vec![rep_count_check(&Subgroup::whole(&a), &Subgroup::whole(&g), &l)?])
            })?;
        }
    }
    Ok(c.finish())
}

/// Runs the sweep registered under a check id.
pub fn sweep(check: &str, p: Option<u32>, limits: &Limits) -> Result<ReportFile> {
    match check {
        "control" => sweep_control(p, limits),
        "theorem12" => sweep_small_abelian(p, AgreementFamily::SmallExponent, limits),
        "theorem12-elementary-only" => sweep_small_abelian(p, AgreementFamily::ElementaryOnly, limits),
        "theorem14" => sweep_rep_bijection(p, limits),
        "theorem14-gap" => sweep_rank_gap(p, limits),
        "saturation" => sweep_saturation(p, limits),
        "thompson" => sweep_thompson(p, limits),
        "p2-identity" => sweep_p2_identity(limits),
        "lemma-small" => sweep_rank_equivalence(p, limits),
        "main-lemma" => sweep_aut_generation(p, limits),
        "sylowiso" => sweep_centric_agreement(p, limits),
        "extraspecial-note" => sweep_extraspecial(p, limits),
        "rep-count" => sweep_rep_count(p, limits),
        other => Err(Error::Unsupported(format!("no sweep for check {other:?}"))),
    }
}
