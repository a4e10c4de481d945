use serde_json::json;

use super::RBSystem;
use crate::error::{Error, Result};
use crate::group::{check_group_rbs, FiniteGroup, GroupEndo, GroupRBSystem};
use crate::hopf::group_like_basis;
use crate::linalg::SparseVec;

/// `(G(H), B₁|, S ∘ B₂|)` where `G(H)` is taken among basis vectors.
///
/// Fails with [`Error::NotClosed`] if the group-like basis elements are not
/// closed under multiplication or either map leaves them.
pub fn restrict_to_group_likes(s: &RBSystem) -> Result<GroupRBSystem> {
    let h = s.hopf();
    let n = h.dim();
    let gl = group_like_basis(h);
    let locate =
        |v: &SparseVec| -> Option<usize> { gl.iter().position(|&g| *v == SparseVec::basis(n, g)) };

    let mut table = vec![vec![0; gl.len()]; gl.len()];
    for (a, &ga) in gl.iter().enumerate() {
        for (b, &gb) in gl.iter().enumerate() {
            table[a][b] = locate(h.algebra().mul_basis(ga, gb)).ok_or_else(|| {
                Error::NotClosed(format!(
                    "product {}·{} is not a group-like basis element",
                    h.basis_names()[ga],
                    h.basis_names()[gb]
                ))
            })?;
        }
    }
    let names = gl.iter().map(|&g| h.basis_names()[g].clone()).collect();
    let group = FiniteGroup::new(format!("G({})", h.name()), names, table)?;

    let sb2 = h.antipode().compose(s.b2());
    let image = |m: &crate::linalg::Mat, label: &str| -> Result<Vec<usize>> {
        gl.iter()
            .map(|&g| {
                locate(m.column(g)).ok_or_else(|| {
                    Error::NotClosed(format!(
                        "{label}({}) is not a group-like basis element",
                        h.basis_names()[g]
                    ))
                })
            })
            .collect()
    };
    let b1 = GroupEndo::new(&group, image(s.b1(), "B1")?)?;
    let b2 = GroupEndo::new(&group, image(&sb2, "S∘B2")?)?;
    let out = GroupRBSystem::new(group, b1, b2)?;
    let report = check_group_rbs(&out);
    if !report.passed() {
        let mut r = report;
        r.info("RESTRICT.source", json!({"hopf": h.name()}));
        return Err(Error::contradiction("restriction to group-likes", r));
    }
    Ok(out)
}
