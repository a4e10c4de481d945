//! Composite checks behind each command-line verb. Every function returns a
//! [`Report`]; constructive steps also return what they built.

use serde_json::json;

use crate::character::{
    cal_maps, cayley_transform, corollary_checks, decompose, describe, enumerate_characters,
    normality_check, pair_group_and_phi, verify_char_group, CharGroup, CommAlgebra,
};
use crate::error::{Error, Result};
use crate::group::{
    check_group_rbs, enumerate_group_rbs, extend_to_group_algebra, verify_group, FiniteGroup,
    GroupEndo, GroupRBSystem,
};
use crate::hopf::{verify_hopf, StructHopf};
use crate::lie::{check_lie_rbs, from_primitives, verify_lie, LieAlgebra, LieRBSystem};
use crate::linalg::{Mat, SparseVec};
use crate::rbs::{
    check_hopf_brace, check_hopf_rbs, check_hopf_truss, check_rb_hopf, check_twisted,
    descendent_hopf, from_rb_hopf, graph_check, image_subhopf, lemma_idm, restrict_to_group_likes,
    sigma_surjective_consequence, DescendentHopf, RBHopf, RBSystem, Which,
};
use crate::report::Report;

pub fn hopf_verify(h: &StructHopf) -> Report {
    let mut r = verify_hopf(h);
    r.info("HOPF.dim", json!({"dim": h.dim()}));
    r
}

pub fn group_verify(g: &FiniteGroup) -> Report {
    verify_group(g)
}

fn system_value(s: &GroupRBSystem) -> serde_json::Value {
    let names = s.group.elements();
    let show = |e: &GroupEndo| {
        e.images
            .iter()
            .map(|&i| names[i].clone())
            .collect::<Vec<_>>()
    };
    json!({"b1": show(&s.b1), "b2": show(&s.b2)})
}

/// Exhaustive enumeration; each system found is re-verified and the list is
/// reported in canonical order.
pub fn group_enumerate(
    g: &FiniteGroup,
    fix_unit: bool,
    max_order: usize,
) -> Result<(Report, Vec<GroupRBSystem>)> {
    let systems = enumerate_group_rbs(g, fix_unit, max_order)?;
    let mut r = Report::new();
    let bad = systems.iter().position(|s| !check_group_rbs(s).passed());
    r.record("ENUM.verified", bad.map(|k| json!({"system": k})));
    if fix_unit {
        let moved = systems.iter().position(|s| !s.fixes_unit());
        r.record("ENUM.unit_fixed", moved.map(|k| json!({"system": k})));
    }
    r.info(
        "ENUM.count",
        json!({"group": g.name(), "order": g.order(), "fix_unit": fix_unit, "count": systems.len()}),
    );
    r.info(
        "ENUM.systems",
        json!(systems.iter().map(system_value).collect::<Vec<_>>()),
    );
    Ok((r, systems))
}

/// Group-level identities, then the Hopf-level check of the linear extension.
pub fn group_extend(s: &GroupRBSystem) -> Result<(Report, RBSystem)> {
    let mut r = check_group_rbs(s);
    let sys = extend_to_group_algebra(s)?;
    r.extend(check_hopf_rbs(sys.hopf(), sys.b1(), sys.b2()));
    Ok((r, sys))
}

/// The defining checks; when they pass, the cocycle lemma as well.
pub fn rbs_check(h: &StructHopf, b1: &Mat, b2: &Mat) -> Result<Report> {
    let mut r = check_hopf_rbs(h, b1, b2);
    if r.passed() && r.status("RBS.shape").is_none() {
        let s = RBSystem::new_unchecked(h.clone(), b1.clone(), b2.clone())?;
        r.info(
            "SIGMA.rank",
            json!({"rank": s.sigma().rank(), "dim": h.dim()}),
        );
        r.extend(lemma_idm(&s));
    }
    Ok(r)
}

/// `H₁` with its Hopf verification and both image checks.
pub fn rbs_descendent(s: &RBSystem) -> Result<(Report, DescendentHopf)> {
    let d = descendent_hopf(s)?;
    let mut r = Report::new();
    r.info(
        "DESC.dim",
        json!({"dim": d.dim(), "rank_sigma": s.sigma().rank()}),
    );
    r.record_bool(
        "DESC.dim_is_rank",
        d.dim() == s.sigma().rank(),
        json!({"dim": d.dim(), "rank": s.sigma().rank()}),
    );
    r.extend_prefixed("DESC", verify_hopf(d.hopf()));
    r.extend(image_subhopf(s, &d, Which::B1));
    r.extend(image_subhopf(s, &d, Which::B2));
    Ok((r, d))
}

/// Graph closure next to the system verdict, so the two can be compared.
pub fn rbs_graph(h: &StructHopf, b1: &Mat, b2: &Mat) -> Report {
    let mut r = graph_check(h, b1, b2);
    let sys = check_hopf_rbs(h, b1, b2);
    r.info("GRAPH.system_verdict", json!({"holds": sys.passed()}));
    r
}

pub fn rbs_truss(h: &StructHopf, b1: &Mat, b2: &Mat) -> Result<Report> {
    let s = RBSystem::new_unchecked(h.clone(), b1.clone(), b2.clone())?;
    Ok(check_hopf_truss(h, s.circ(), s.sigma()))
}

/// Operator identity; when it holds, the induced system with its cocycle
/// lemma, the brace check of `(H, ∘, T)` and the surjective-cocycle
/// consequences.
pub fn rbs_from_rb(h: &StructHopf, b: &Mat) -> Result<(Report, Option<RBSystem>)> {
    let mut r = check_rb_hopf(h, b);
    if !r.passed() {
        return Ok((r, None));
    }
    let rb = RBHopf::new(h.clone(), b.clone())?;
    let s = from_rb_hopf(&rb)?;
    r.pass("FROMRB.sigma_identity");
    r.extend(check_hopf_rbs(s.hopf(), s.b1(), s.b2()));
    r.extend(lemma_idm(&s));
    r.extend(check_hopf_brace(h, &rb.descendent_structure()?));
    r.extend(sigma_surjective_consequence(&s));
    Ok((r, Some(s)))
}

pub fn rbs_twisted(h: &StructHopf, b: &Mat, phi: &Mat) -> Report {
    let mut r = check_twisted(h, b, phi);
    if r.passed() {
        let mut sys = check_hopf_rbs(h, b, &phi.compose(b));
        sys.info("TW.system", json!({"b2": "phi o B"}));
        r.extend_prefixed("TW", sys);
    }
    r
}

/// Group-like and primitive restrictions of a verified system.
pub fn rbs_restrict(s: &RBSystem) -> Result<(Report, GroupRBSystem, LieRBSystem)> {
    let g = restrict_to_group_likes(s)?;
    let mut r = Report::new();
    r.extend_prefixed("RESTRICT.group", check_group_rbs(&g));
    r.info("RESTRICT.group_order", json!({"order": g.group.order()}));
    let l = from_primitives(s.hopf(), s.b1(), s.b2())?;
    r.extend_prefixed("RESTRICT.lie", lie_check(&l.lie, &l.b1, &l.b2, false));
    r.info("RESTRICT.lie_dim", json!({"dim": l.lie.dim()}));
    Ok((r, g, l))
}

pub fn lie_check(l: &LieAlgebra, b1: &Mat, b2: &Mat, strict: bool) -> Report {
    let mut r = verify_lie(l);
    r.extend(check_lie_rbs(l, b1, b2, strict));
    r
}

pub fn lie_from_primitives(h: &StructHopf, b1: &Mat, b2: &Mat) -> Result<(Report, LieRBSystem)> {
    let l = from_primitives(h, b1, b2)?;
    let mut r = lie_check(&l.lie, &l.b1, &l.b2, false);
    r.info("LIE.dim", json!({"dim": l.lie.dim()}));
    Ok((r, l))
}

pub fn char_enumerate(
    h: &StructHopf,
    a: &CommAlgebra,
    units: &[SparseVec],
) -> Result<(Report, CharGroup)> {
    let cg = enumerate_characters(h, a, units)?;
    let mut r = verify_char_group(&cg);
    r.info("CHA.order", json!({"order": cg.order()}));
    r.info("CHA.elements", describe(&cg));
    Ok((r, cg))
}

/// Which characters to decompose in [`char_full_report`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Decompose {
    All,
    /// Index into the canonical list of `Im Ψ`.
    One(usize),
}

/// Descendent algebra, both character groups, the induced maps, normality,
/// the Cayley transform, the pair group with `Φ`, and decompositions.
pub fn char_full_report(
    s: &RBSystem,
    a: &CommAlgebra,
    units: &[SparseVec],
    which: Decompose,
) -> Result<Report> {
    let d = descendent_hopf(s)?;
    let cg = enumerate_characters(s.hopf(), a, units)?;
    let cal = cal_maps(s, &d, &cg)?;
    let mut r = cal.report.clone();
    r.info(
        "CHA.order",
        json!({"H": cg.order(), "H1": cal.target.order()}),
    );
    r.extend(normality_check(&cal));
    let ct = cayley_transform(&cal)?;
    r.extend(ct.report.clone());
    r.info(
        "THETA.cosets",
        json!({"domain": ct.q1.len(), "codomain": ct.q2.len()}),
    );
    let pg = pair_group_and_phi(&cal, &ct)?;
    r.extend(pg.report.clone());
    let im_psi = cal.psi_image();
    let targets: Vec<usize> = match which {
        Decompose::All => im_psi.clone(),
        Decompose::One(k) => vec![*im_psi.get(k).ok_or_else(|| {
            Error::OutOfDomain(format!(
                "character index {k} is out of range: Im(Psi) has {} elements",
                im_psi.len()
            ))
        })?],
    };
    for f in targets {
        let dec = decompose(f, s, &cal, &pg)?;
        let mut witness = json!({"f": f, "f1": dec.f1, "f2": dec.f2});
        if let Some((c1, c2)) = dec.corollary {
            witness["corollary"] = json!([c1, c2]);
        }
        r.info(format!("DEM.pair.f{f}"), witness);
        r.extend_suffixed(&format!("f{f}"), dec.report);
    }
    r.extend(corollary_checks(s, &cal));
    Ok(r)
}
