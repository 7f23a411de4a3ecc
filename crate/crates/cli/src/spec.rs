//! Group and subgroup arguments.
//!
//! Groups: `expr:E`, `file:PATH`, or a bare expression `E`.
//! Subgroups of `G`: `E-in-F` (first embedding of `E` into `F`, where `F`
//! must be `G`), `sylow:p`, `normalizer-of-sylow:p`, `gens:a,b,...`,
//! `whole`, or an expression embedded into `G`. Any of these may carry an
//! `expr:` prefix.

use std::path::Path;
use std::sync::Arc;

use pfusion_core::catalog::{build_with, embedded, GroupExpr};
use pfusion_core::local::sylow_subgroup;
use pfusion_core::{normalizer, Group, Limits, Subgroup};

use crate::groupfile::GroupFile;
use crate::CliError;

pub fn group(spec: &str, limits: &Limits) -> Result<Arc<Group>, CliError> {
    if let Some(path) = spec.strip_prefix("file:") {
        return GroupFile::read(Path::new(path))?.build(limits);
    }
    let text = spec.strip_prefix("expr:").unwrap_or(spec);
    Ok(build_with(&GroupExpr::parse(text)?, limits)?)
}

fn prime(text: &str) -> Result<u32, CliError> {
    text.parse().map_err(|_| CliError::Input(format!("{text:?} is not a prime")))
}

pub fn subgroup(spec: &str, g: &Arc<Group>, limits: &Limits) -> Result<Subgroup, CliError> {
    let text = spec.strip_prefix("expr:").unwrap_or(spec);
    if text == "whole" {
        return Ok(Subgroup::whole(g));
    }
    if let Some(p) = text.strip_prefix("sylow:") {
        return Ok(sylow_subgroup(g, prime(p)?)?);
    }
    if let Some(p) = text.strip_prefix("normalizer-of-sylow:") {
        let s = sylow_subgroup(g, prime(p)?)?;
        return Ok(normalizer(g, &Subgroup::whole(g), &s)?);
    }
    if let Some(list) = text.strip_prefix("gens:") {
        let gens = list
            .split(',')
            .map(|x| x.trim().parse::<u32>().ok().filter(|&x| (x as usize) < g.order()))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| CliError::Input(format!("bad element list {list:?}")))?;
        return Ok(Subgroup::generated(g, &gens));
    }
    let (sub, ambient) = match text.rsplit_once("-in-") {
        Some((e, f)) => (e, Some(f)),
        None => (text, None),
    };
    if let Some(f) = ambient {
        let fg = group(f, limits)?;
        if !fg.same_table(g) {
            return Err(CliError::Input(format!("{f:?} is not the ambient group {}", g.name())));
        }
    }
    embedded(sub, g).map_err(|e| CliError::Input(format!("{sub:?} in {}: {e}", g.name())))
}
