//! Resolving `--monoid` and `--prime` into a concrete instance.

use std::path::Path;

use duorep::field::lcm;
use duorep::hsiao::{build_hsiao, splitting_prime, FiniteAbelianGroup, HsiaoMonoid};
use duorep::{FiniteMonoid, PrimeField};
use serde_json::{json, Value};

use crate::error::CliError;

/// A monoid together with its Hsiao structure when it came from a builtin.
pub enum Instance {
    Hsiao(HsiaoMonoid),
    Table { monoid: FiniteMonoid, path: String },
}

impl Instance {
    pub fn monoid(&self) -> &FiniteMonoid {
        match self {
            Instance::Hsiao(h) => h.monoid(),
            Instance::Table { monoid, .. } => monoid,
        }
    }

    pub fn hsiao(&self) -> Option<&HsiaoMonoid> {
        match self {
            Instance::Hsiao(h) => Some(h),
            Instance::Table { .. } => None,
        }
    }

    pub fn describe(&self) -> Value {
        match self {
            Instance::Hsiao(h) => json!({
                "kind": "hsiao",
                "n": h.n(),
                "group": h.group().invariant_factors(),
                "size": h.monoid().size(),
            }),
            Instance::Table { monoid, path } => json!({
                "kind": "table",
                "path": path,
                "size": monoid.size(),
            }),
        }
    }

    pub fn element_name(&self, m: usize) -> String {
        match self {
            Instance::Hsiao(h) => h.format_element(m),
            Instance::Table { .. } => m.to_string(),
        }
    }
}

pub fn load(name: &str, n: Option<usize>, group: Option<&str>) -> Result<Instance, CliError> {
    let need_n = || n.ok_or_else(|| CliError::Usage(format!("--monoid {name} needs --n")));
    let parse_group = |g: Option<&str>| match g {
        Some(text) => Ok(FiniteAbelianGroup::parse(text)?),
        None => Ok::<_, CliError>(FiniteAbelianGroup::trivial()),
    };
    let h = match name {
        "sigma" | "sigma_n" => {
            if group.is_some() {
                return Err(CliError::Usage(format!("--monoid {name} takes no --group")));
            }
            build_hsiao(need_n()?, &FiniteAbelianGroup::trivial())?
        }
        "hsiao" => build_hsiao(need_n()?, &parse_group(group)?)?,
        "group_zmod" => {
            let g = group.ok_or_else(|| CliError::Usage("--monoid group_zmod needs --group".into()))?;
            build_hsiao(1, &parse_group(Some(g))?)?
        }
        path => {
            let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
            let monoid = FiniteMonoid::parse_table(&text)?;
            return Ok(Instance::Table {
                monoid,
                path: path.to_string(),
            });
        }
    };
    Ok(Instance::Hsiao(h))
}

/// `auto` is the least prime `p ≥ 3` splitting every maximal subgroup; for
/// tables the exponent is read off the element orders of those subgroups.
pub fn resolve_prime(text: &str, instance: &Instance) -> Result<PrimeField, CliError> {
    if text != "auto" {
        let p: u32 = text
            .parse()
            .map_err(|_| CliError::Usage(format!("--prime expects a prime or auto, got {text:?}")))?;
        return Ok(PrimeField::new(p)?);
    }
    let group = match instance {
        Instance::Hsiao(h) => h.group().clone(),
        Instance::Table { monoid, .. } => table_group(monoid)?,
    };
    Ok(PrimeField::new(splitting_prime(&group, 3)?)?)
}

/// A cyclic group with the common exponent of all maximal subgroups, which
/// has the same splitting primes.
fn table_group(m: &FiniteMonoid) -> Result<FiniteAbelianGroup, CliError> {
    let mut exponent = 1;
    for &e in m.idempotents() {
        let g = m.maximal_subgroup(e)?;
        for &x in &g.members {
            let mut order = 1u64;
            let mut y = x;
            while y != e {
                y = m.mul(y, x);
                order += 1;
            }
            exponent = lcm(exponent, order);
        }
    }
    Ok(FiniteAbelianGroup::cyclic(exponent)?)
}

pub fn read_text(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::io(&path.display().to_string(), e))
}
