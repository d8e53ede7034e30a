//! Textual case descriptions and the module catalog.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{all_subgroups, build_group, direct_product, ProductGroup, Subgroup};
use crate::linalg::Field;
use crate::product::ProductSubgroup;
use crate::rep::{perm_rep, random_rep, regular_rep, sign_rep, trivial_rep, Rep};

/// One instance of the decomposition: groups `K, H, G`, subgroups
/// `Y ≤ K×H`, `X ≤ H×G`, and modules `N` over `Y`, `M` over `X`.
///
/// Subgroups are `whole`, `trivial`, `diag`, a list of generator pairs
/// `[(a,b),(c,d)]` in factor-element names, or a comma-separated list of
/// product element names (`a.e`) or numeric ids.
/// Modules are `trivial`, `regular`, `perm`, `perm:<i>`, `sign`, or
/// `random:<seed>:<dim>`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseSpec {
    pub k: String,
    pub h: String,
    pub g: String,
    pub y: String,
    pub x: String,
    pub n: String,
    pub m: String,
}

/// A parsed and constructed case.
#[derive(Clone, Debug)]
pub struct Case {
    pub spec: CaseSpec,
    pub field: Field,
    pub kh: Arc<ProductGroup>,
    pub hg: Arc<ProductGroup>,
    pub y: ProductSubgroup,
    pub x: ProductSubgroup,
    pub n: Rep,
    pub m: Rep,
}

impl CaseSpec {
    pub fn build(&self, field: Field) -> Result<Case> {
        let k = Arc::new(build_group(&self.k)?);
        let h = Arc::new(build_group(&self.h)?);
        let g = Arc::new(build_group(&self.g)?);
        let kh = Arc::new(direct_product(&k, &h)?);
        let hg = Arc::new(direct_product(&h, &g)?);
        let y = parse_product_subgroup(&kh, &self.y)?;
        let x = parse_product_subgroup(&hg, &self.x)?;
        let n = build_module(y.subgroup(), &self.n, field)?;
        let m = build_module(x.subgroup(), &self.m, field)?;
        Ok(Case {
            spec: self.clone(),
            field,
            kh,
            hg,
            y,
            x,
            n,
            m,
        })
    }
}

impl Case {
    /// Builds a case from already constructed parts, recording a spec that
    /// parses back to the same subgroups.
    pub fn from_parts(
        y: ProductSubgroup,
        x: ProductSubgroup,
        n_spec: &str,
        m_spec: &str,
        field: Field,
    ) -> Result<Case> {
        let (kh, hg) = (y.ambient().clone(), x.ambient().clone());
        let n = build_module(y.subgroup(), n_spec, field)?;
        let m = build_module(x.subgroup(), m_spec, field)?;
        let spec = CaseSpec {
            k: kh.left().name().to_string(),
            h: kh.right().name().to_string(),
            g: hg.right().name().to_string(),
            y: describe_subgroup(y.subgroup()),
            x: describe_subgroup(x.subgroup()),
            n: n_spec.to_string(),
            m: m_spec.to_string(),
        };
        Ok(Case {
            spec,
            field,
            kh,
            hg,
            y,
            x,
            n,
            m,
        })
    }
}

/// Generator names, or `trivial` / `whole`.
pub fn describe_subgroup(s: &Subgroup) -> String {
    if s.order() == 1 {
        return "trivial".into();
    }
    if s.order() == s.ambient().order() {
        return "whole".into();
    }
    let g = s.ambient();
    s.generators()
        .iter()
        .map(|&a| g.element_name(a).to_string())
        .collect::<Vec<_>>()
        .join(",")
}

pub fn parse_product_subgroup(amb: &Arc<ProductGroup>, text: &str) -> Result<ProductSubgroup> {
    match text.trim() {
        "whole" => return Ok(ProductSubgroup::whole(amb.clone())),
        "trivial" | "1" | "" => return Ok(ProductSubgroup::trivial(amb.clone())),
        "diag" => {
            return ProductSubgroup::diagonal(amb.clone()).map_err(|e| Error::Parse(e.to_string()))
        }
        _ => {}
    }
    if let Some(inner) = text
        .trim()
        .strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
    {
        let pairs = split_pairs(inner)?
            .into_iter()
            .map(|(a, b)| {
                let a_id = element(amb.left(), a)?;
                let b_id = element(amb.right(), b)?;
                Ok((a_id, b_id))
            })
            .collect::<Result<Vec<_>>>()?;
        return ProductSubgroup::generated(amb.clone(), &pairs);
    }
    let g = amb.group();
    let gens = text
        .split(',')
        .map(|t| {
            g.element_by_name(t).ok_or_else(|| {
                Error::Parse(format!("`{}` is not an element of {}", t.trim(), g.name()))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let sub = Subgroup::generated(g, &gens)?;
    Ok(ProductSubgroup::from_subgroup(amb.clone(), sub))
}

fn element(g: &crate::group::Group, name: &str) -> Result<usize> {
    g.element_by_name(name).ok_or_else(|| {
        Error::Parse(format!(
            "`{}` is not an element of {}",
            name.trim(),
            g.name()
        ))
    })
}

/// Splits `(a,b),(c,d)` into name pairs. Names may contain balanced
/// parentheses, as in `((12),e)`.
fn split_pairs(text: &str) -> Result<Vec<(&str, &str)>> {
    let bad = || Error::Parse(format!("malformed pair list `[{text}]`"));
    let mut out = Vec::new();
    let mut rest = text.trim();
    while !rest.is_empty() {
        rest = rest.strip_prefix('(').ok_or_else(bad)?;
        let (mut depth, mut comma, mut close) = (0usize, None, None);
        for (i, c) in rest.char_indices() {
            match c {
                '(' => depth += 1,
                ')' if depth == 0 => {
                    close = Some(i);
                    break;
                }
                ')' => depth -= 1,
                ',' if depth == 0 && comma.is_none() => comma = Some(i),
                _ => {}
            }
        }
        let (comma, close) = (comma.ok_or_else(bad)?, close.ok_or_else(bad)?);
        if comma > close {
            return Err(bad());
        }
        out.push((rest[..comma].trim(), rest[comma + 1..close].trim()));
        rest = rest[close + 1..].trim_start();
        rest = rest.strip_prefix(',').unwrap_or(rest).trim_start();
    }
    Ok(out)
}

/// Subgroups `A` of `domain` with `1 < |A| < |domain|`, in catalog order.
pub fn proper_subgroups(domain: &Subgroup) -> Result<Vec<Subgroup>> {
    Ok(all_subgroups(domain.ambient())?
        .into_iter()
        .filter(|a| a.order() > 1 && a.order() < domain.order() && a.is_subgroup_of(domain))
        .collect())
}

pub fn build_module(domain: &Subgroup, spec: &str, field: Field) -> Result<Rep> {
    let spec = spec.trim();
    let bad = || Error::Parse(format!("unknown module `{spec}`"));
    let mut parts = spec.split(':');
    let kind = parts.next().unwrap_or("");
    let args: Vec<&str> = parts.collect();
    let num = |s: &str| s.parse::<u64>().map_err(|_| bad());
    match (kind, args.as_slice()) {
        ("trivial", []) => Ok(trivial_rep(domain, field)),
        ("regular", []) => Ok(regular_rep(domain, field)),
        ("perm", rest) if rest.len() <= 1 => {
            let i = rest.first().map(|s| num(s)).transpose()?.unwrap_or(0) as usize;
            let subs = proper_subgroups(domain)?;
            let a = subs.get(i).ok_or_else(|| {
                Error::NotSubgroup(format!("no proper subgroup #{i} for a permutation module"))
            })?;
            perm_rep(domain, a, field)
        }
        ("sign", []) => {
            let a = all_subgroups(domain.ambient())?
                .into_iter()
                .find(|a| a.is_subgroup_of(domain) && 2 * a.order() == domain.order())
                .ok_or_else(|| {
                    Error::NotSubgroup("no subgroup of index 2 for a sign module".into())
                })?;
            sign_rep(domain, &a, field)
        }
        ("random", [seed, dim]) => random_rep(domain, num(dim)? as usize, num(seed)?, field),
        _ => Err(bad()),
    }
}

/// The `C2` diagonal example: `K = H = G = C2`, `X = Y = Δ(C2)`, trivial
/// modules.
pub fn diagonal_example() -> CaseSpec {
    CaseSpec {
        k: "C2".into(),
        h: "C2".into(),
        g: "C2".into(),
        y: "diag".into(),
        x: "diag".into(),
        n: "trivial".into(),
        m: "trivial".into(),
    }
}
