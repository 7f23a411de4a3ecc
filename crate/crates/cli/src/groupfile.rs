use std::path::Path;
use std::sync::Arc;

use pfusion_core::catalog::{build_with, permutation_closure, GroupExpr};
use pfusion_core::{Error, Group, Limits};
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Cayley,
    Perm,
    Expr,
}

/// A group on disk: Cayley table rows, permutation generators in image
/// form, or an expression string.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GroupFile {
    pub name: String,
    pub kind: Kind,
    pub payload: serde_json::Value,
}

impl GroupFile {
    pub fn read(path: &Path) -> Result<GroupFile, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| {
            CliError::Input(format!("{}: parse error at line {}, column {}: {e}", path.display(), e.line(), e.column()))
        })
    }

    pub fn cayley(g: &Group) -> GroupFile {
        GroupFile { name: g.name().to_string(), kind: Kind::Cayley, payload: serde_json::json!(g.rows()) }
    }

    pub fn expr(e: &GroupExpr) -> GroupFile {
        GroupFile { name: e.to_string(), kind: Kind::Expr, payload: serde_json::json!(e.to_string()) }
    }

    pub fn build(&self, limits: &Limits) -> Result<Arc<Group>, CliError> {
        let bad = |what: &str| CliError::Input(format!("{}: payload must be {what}", self.name));
        let group = match self.kind {
            Kind::Cayley => {
                let rows: Vec<Vec<usize>> =
                    serde_json::from_value(self.payload.clone()).map_err(|_| bad("a list of table rows"))?;
                if rows.len() > limits.max_order {
                    return Err(Error::CapExceeded { cap: "group order", limit: limits.max_order }.into());
                }
                Group::from_rows(self.name.clone(), &rows)?
            }
            Kind::Perm => {
                let gens: Vec<Vec<u32>> =
                    serde_json::from_value(self.payload.clone()).map_err(|_| bad("a list of permutations"))?;
                permutation_closure(self.name.clone(), &gens, limits)?
            }
            Kind::Expr => {
                let text = self.payload.as_str().ok_or_else(|| bad("an expression string"))?;
                let g = build_with(&GroupExpr::parse(text)?, limits)?;
                return Ok(g);
            }
        };
        Ok(group.into_arc())
    }
}
