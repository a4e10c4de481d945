//! One line per acceptance criterion. Run with
//! `cargo test -p hopftruss-core --test acceptance`.

mod common;

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::time::Instant;

use common::*;
use hopftruss_core::character::CommAlgebra;
use hopftruss_core::group::{
    check_group_rbs, enumerate_group_rbs, extend_to_group_algebra, unit_fixing_maps, FiniteGroup,
    DEFAULT_MAX_ORDER,
};
use hopftruss_core::hopf::{
    is_coalgebra_hom, verify_hopf, Bilinear, StructAlgebra, StructCoalgebra, StructHopf,
};
use hopftruss_core::lie::{check_lie_rbs, restrict_to_primitives};
use hopftruss_core::linalg::{Mat, SparseVec};
use hopftruss_core::pipeline::{self, Decompose};
use hopftruss_core::rbs::{
    check_hopf_brace, check_hopf_rbs, check_hopf_truss, check_rb_hopf, descendent_hopf,
    from_rb_hopf, graph_check, graph_is_subbialgebra, image_subhopf, lemma_idm,
    restrict_to_group_likes, sigma_surjective_consequence, RBHopf, RBSystem, Which,
};
use hopftruss_core::{Rational, Report, Status};

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ensure_report(r: &Report, context: &str) -> Result<(), String> {
    ensure(r.passed(), || format!("{context}: {}", r.failure_summary()))
}

fn extended(g: &FiniteGroup) -> Vec<RBSystem> {
    enumerate_group_rbs(g, true, DEFAULT_MAX_ORDER)
        .expect("enumeration")
        .iter()
        .map(|s| extend_to_group_algebra(s).expect("extension"))
        .collect()
}

fn from_rb(h: &StructHopf, b: &Mat) -> RBSystem {
    from_rb_hopf(&RBHopf::new(h.clone(), b.clone()).expect("operator")).expect("system")
}

/// Every verified system used by criteria 3 to 5: all extensions plus the
/// systems induced by the inverse and counit operators.
fn all_systems() -> Vec<(String, RBSystem)> {
    let mut out = Vec::new();
    for g in standard_groups() {
        for (k, s) in extended(&g).into_iter().enumerate() {
            out.push((format!("{}#{k}", g.name()), s));
        }
    }
    for h in [fc(2), fc(3), fc(4), fs3()] {
        out.push((format!("{}:S", h.name()), from_rb(&h, h.antipode())));
        out.push((format!("{}:e", h.name()), from_rb(&h, &h.counit_map())));
    }
    out
}

fn mutant(h: &StructHopf, part: usize, k: usize) -> StructHopf {
    let n = h.dim();
    let one = Rational::one();
    let mut comult: Vec<SparseVec> = (0..n)
        .map(|i| h.coalgebra().comult_basis(i).clone())
        .collect();
    let mut antipode = h.antipode().to_dense_rows();
    let mut table = h.algebra().mult().table().to_vec();
    match part {
        0 => comult[k % n].add_at((k * 7 + 3) % (n * n), &one),
        1 => {
            let (i, j) = (k % n, (k * 5 + 1) % n);
            antipode[i][j] = &antipode[i][j] + &one;
        }
        _ => table[k % n][(k * 3 + 1) % n].add_at((k * 2) % n, &one),
    }
    let algebra = StructAlgebra::new(
        h.basis_names().to_vec(),
        Bilinear::new(n, table).unwrap(),
        h.unit().clone(),
    )
    .unwrap();
    let coalgebra = StructCoalgebra::new(
        h.basis_names().to_vec(),
        comult,
        h.coalgebra().counit_values().to_vec(),
    )
    .unwrap();
    StructHopf::from_parts_unchecked(
        "mutant",
        algebra,
        coalgebra,
        Mat::from_dense_rows(&antipode).unwrap(),
    )
    .unwrap()
}

fn criterion_1() -> Outcome {
    const PER_PART: usize = 8;
    let mut mutants = 0;
    for h in [fc(2), fc(3), fc(4), fs3()] {
        ensure_report(&verify_hopf(&h), h.name())?;
        for part in 0..3 {
            for k in 0..PER_PART {
                let m = mutant(&h, part, k);
                let r = verify_hopf(&m);
                ensure(!r.passed(), || {
                    format!("{} part {part} mutant {k} passed", h.name())
                })?;
                mutants += 1;
            }
        }
    }
    Ok(format!("4 group algebras verified; {mutants} mutants ({PER_PART} each of Δ, S, mult per algebra) all rejected"))
}

fn criterion_2() -> Outcome {
    let mut parts = Vec::new();
    for g in standard_groups() {
        let start = Instant::now();
        let oracle = if g.order() <= 4 {
            oracle_naive(&g, true)
        } else {
            oracle_split(&g, true)
        };
        let frozen = FROZEN_UNIT_FIXED
            .iter()
            .find(|(n, _)| *n == g.name())
            .map(|&(_, c)| c);
        ensure(frozen == Some(oracle.len()), || {
            format!("{}: oracle {} vs frozen {frozen:?}", g.name(), oracle.len())
        })?;
        let systems =
            enumerate_group_rbs(&g, true, DEFAULT_MAX_ORDER).map_err(|e| e.to_string())?;
        let found: Vec<_> = systems
            .iter()
            .map(|s| (s.b1.images.clone(), s.b2.images.clone()))
            .collect();
        ensure(found == oracle, || {
            format!("{}: enumeration differs from oracle", g.name())
        })?;
        for s in &systems {
            ensure_report(&check_group_rbs(s), g.name())?;
            let sys = extend_to_group_algebra(s).map_err(|e| e.to_string())?;
            ensure_report(&check_hopf_rbs(sys.hopf(), sys.b1(), sys.b2()), g.name())?;
        }
        parts.push(format!(
            "{}={} ({:.0?})",
            g.name(),
            systems.len(),
            start.elapsed()
        ));
    }
    Ok(format!(
        "unit-fixed systems extended and verified: {}",
        parts.join(", ")
    ))
}

fn criterion_3() -> Outcome {
    let systems = all_systems();
    for (name, s) in &systems {
        ensure_report(&lemma_idm(s), name)?;
        let sigma = s.sigma();
        ensure(&sigma.compose(sigma) == sigma, || format!("{name}: σ² ≠ σ"))?;
        ensure(&s.b1().compose(sigma) == s.b1(), || {
            format!("{name}: B₁σ ≠ B₁")
        })?;
        ensure(&s.b2().compose(sigma) == s.b2(), || {
            format!("{name}: B₂σ ≠ B₂")
        })?;
        ensure(
            is_coalgebra_hom(s.hopf().coalgebra(), s.hopf().coalgebra(), sigma),
            || format!("{name}: σ not a coalgebra map"),
        )?;
    }
    Ok(format!(
        "{} systems: σ² = σ, B₁σ = B₁, B₂σ = B₂, σ coalgebra map",
        systems.len()
    ))
}

fn criterion_4() -> Outcome {
    let systems = all_systems();
    for (name, s) in &systems {
        let r = check_hopf_truss(s.hopf(), s.circ(), s.sigma());
        ensure_report(&r, name)?;
        ensure(r.status("HTS") == Some(Status::Pass), || {
            format!("{name}: HTS missing")
        })?;
    }
    Ok(format!(
        "{} systems pass the truss identity on all basis triples",
        systems.len()
    ))
}

fn criterion_5() -> Outcome {
    let systems = all_systems();
    let mut dims: BTreeMap<usize, usize> = BTreeMap::new();
    for (name, s) in &systems {
        let d = descendent_hopf(s).map_err(|e| format!("{name}: {e}"))?;
        ensure(d.dim() == s.sigma().rank(), || {
            format!("{name}: dim {} vs rank {}", d.dim(), s.sigma().rank())
        })?;
        ensure_report(&verify_hopf(d.hopf()), name)?;
        for which in [Which::B1, Which::B2] {
            ensure_report(&image_subhopf(s, &d, which), name)?;
        }
        *dims.entry(d.dim()).or_default() += 1;
    }
    let hist: Vec<String> = dims.iter().map(|(d, c)| format!("dim {d}: {c}")).collect();
    Ok(format!(
        "{} descendent Hopf algebras verified [{}]",
        systems.len(),
        hist.join(", ")
    ))
}

fn criterion_6() -> Outcome {
    let mut summary = Vec::new();
    for n in [2, 3] {
        let g = FiniteGroup::cyclic(n);
        let h = fc(n);
        let maps = unit_fixing_maps(&g);
        let (mut pairs, mut positive) = (0, 0);
        for b1 in &maps {
            for b2 in &maps {
                let (m1, m2) = (basis_map(b1), basis_map(b2));
                let sys = check_hopf_rbs(&h, &m1, &m2).passed();
                let graph = graph_is_subbialgebra(&h, &m1, &m2);
                ensure(sys == graph, || {
                    format!("C{n} {b1:?} {b2:?}: system {sys}, graph {graph}")
                })?;
                pairs += 1;
                positive += usize::from(sys);
            }
        }
        summary.push(format!("C{n}: {pairs} pairs agree ({positive} systems)"));
    }
    let r = graph_check(&fc(3), &Mat::identity(3), &Mat::identity(3));
    ensure(r.status("GRAPH.mult_closure") == Some(Status::Fail), || {
        "negative pair closed".into()
    })?;
    let w = r
        .get("GRAPH.mult_closure")
        .and_then(|c| c.witness.clone())
        .ok_or("no witness")?;
    Ok(format!(
        "{}; negative (id, id) on C3 witness {w}",
        summary.join("; ")
    ))
}

fn criterion_7() -> Outcome {
    for h in [fc(2), fc(3), fs3()] {
        let name = h.name().to_string();
        ensure_report(&check_rb_hopf(&h, h.antipode()), &name)?;
        let rb = RBHopf::new(h.clone(), h.antipode().clone()).map_err(|e| e.to_string())?;
        let s = from_rb_hopf(&rb).map_err(|e| e.to_string())?;
        ensure(s.sigma_is_identity(), || format!("{name}: σ ≠ id"))?;
        let d = rb.descendent_structure().map_err(|e| e.to_string())?;
        ensure_report(&check_hopf_brace(&h, &d), &name)?;
        let r = sigma_surjective_consequence(&s);
        ensure_report(&r, &name)?;
        for id in ["SURJ.B2.HRB", "SURJ.B1S.HRB"] {
            ensure(r.status(id) == Some(Status::Pass), || {
                format!("{name}: {id} not passed")
            })?;
        }
    }
    Ok("C2, C3, S3: operator S verified, σ = id, brace with T passes, both surjective consequences pass".into())
}

fn criterion_8() -> Outcome {
    let mut count = 0;
    for g in standard_groups() {
        for gs in enumerate_group_rbs(&g, true, DEFAULT_MAX_ORDER).map_err(|e| e.to_string())? {
            let s = extend_to_group_algebra(&gs).map_err(|e| e.to_string())?;
            let back = restrict_to_group_likes(&s).map_err(|e| e.to_string())?;
            ensure_report(&check_group_rbs(&back), g.name())?;
            ensure(
                back.b1.images == gs.b1.images && back.b2.images == gs.b2.images,
                || format!("{}: round trip changed the maps", g.name()),
            )?;
            let again = extend_to_group_algebra(&back).map_err(|e| e.to_string())?;
            ensure(again.b1() == s.b1() && again.b2() == s.b2(), || {
                format!("{}: re-extension differs", g.name())
            })?;
            let l = restrict_to_primitives(&s).map_err(|e| e.to_string())?;
            ensure_report(&check_lie_rbs(&l.lie, &l.b1, &l.b2, false), g.name())?;
            count += 1;
        }
    }
    for h in [fc(2), fs3()] {
        let s = from_rb(&h, h.antipode());
        ensure_report(
            &check_group_rbs(&restrict_to_group_likes(&s).map_err(|e| e.to_string())?),
            h.name(),
        )?;
        count += 1;
    }
    let l =
        hopftruss_core::lie::from_primitives(&dual_numbers(), &Mat::identity(2), &Mat::identity(2))
            .map_err(|e| e.to_string())?;
    ensure_report(&check_lie_rbs(&l.lie, &l.b1, &l.b2, false), "dual numbers")?;
    Ok(format!(
        "{count} systems restrict to verified group systems with zero Lie part; round trip exact; dual numbers give a verified 1-dim Lie system"
    ))
}

fn char_systems() -> Vec<(&'static str, RBSystem)> {
    let c2 = fc(2);
    vec![
        ("from_rb(F[C2], S)", from_rb(&c2, c2.antipode())),
        ("from_rb(F[S3], S)", from_rb(&fs3(), fs3().antipode())),
        (
            "(F[C2], id, e)",
            RBSystem::new(c2.clone(), Mat::identity(2), c2.counit_map()).expect("system"),
        ),
    ]
}

fn criterion_9() -> Outcome {
    let a = CommAlgebra::rationals();
    let units = a.default_units();
    let mut parts = Vec::new();
    for (name, s) in char_systems() {
        let r = pipeline::char_full_report(&s, &a, &units, Decompose::All)
            .map_err(|e| format!("{name}: {e}"))?;
        ensure_report(&r, name)?;
        let required = [
            "H.CHA.assoc",
            "H1.CHA.inverse",
            "CAL.B1.hom",
            "CAL.B2.hom",
            "CAL.Psi.hom",
            "NORM.B1",
            "NORM.B2",
            "THETA.well_defined",
            "THETA.bijective",
            "THETA.hom",
            "PAIR.subgroup",
            "PHI.hom",
            "PHI.injective",
            "PHI.onto_im_psi",
        ];
        for id in required {
            ensure(r.status(id) == Some(Status::Pass), || {
                format!("{name}: {id} is {:?}", r.status(id))
            })?;
        }
        let unique = r
            .checks()
            .iter()
            .filter(|c| c.id.starts_with("DEM.unique"))
            .count();
        let corollary = r
            .checks()
            .iter()
            .filter(|c| c.id.starts_with("DEM.corollary."))
            .count();
        ensure(unique > 0, || format!("{name}: no decompositions"))?;
        if s.sigma_is_identity() {
            ensure(corollary == unique, || {
                format!("{name}: corollary form missing")
            })?;
        }
        parts.push(format!("{name}: {unique} unique decompositions"));
    }
    Ok(parts.join("; "))
}

fn all_reports() -> String {
    let mut out = Vec::new();
    for g in standard_groups() {
        let (r, systems) =
            pipeline::group_enumerate(&g, true, DEFAULT_MAX_ORDER).expect("enumerate");
        out.push(r.to_json());
        for s in systems {
            let (r, sys) = pipeline::group_extend(&s).expect("extend");
            out.push(r.to_json());
            out.push(
                pipeline::rbs_check(sys.hopf(), sys.b1(), sys.b2())
                    .expect("check")
                    .to_json(),
            );
            out.push(
                pipeline::rbs_descendent(&sys)
                    .expect("descendent")
                    .0
                    .to_json(),
            );
            out.push(
                pipeline::rbs_truss(sys.hopf(), sys.b1(), sys.b2())
                    .expect("truss")
                    .to_json(),
            );
            out.push(pipeline::rbs_restrict(&sys).expect("restrict").0.to_json());
        }
    }
    for h in [fc(2), fc(3)] {
        for b1 in unit_fixing_maps(&FiniteGroup::cyclic(h.dim())) {
            out.push(pipeline::rbs_graph(&h, &basis_map(&b1), h.antipode()).to_json());
        }
    }
    for h in [fc(2), fs3()] {
        out.push(
            pipeline::rbs_from_rb(&h, h.antipode())
                .expect("from-rb")
                .0
                .to_json(),
        );
        out.push(pipeline::hopf_verify(&h).to_json());
    }
    let a = CommAlgebra::rationals();
    for (_, s) in char_systems() {
        out.push(
            pipeline::char_full_report(&s, &a, &a.default_units(), Decompose::All)
                .expect("chars")
                .to_json(),
        );
    }
    out.join("\n")
}

fn rust_files(dir: &Path, out: &mut Vec<std::path::PathBuf>) {
    let Ok(entries) = std::fs::read_dir(dir) else {
        return;
    };
    let mut entries: Vec<_> = entries.flatten().map(|e| e.path()).collect();
    entries.sort();
    for p in entries {
        if p.is_dir() {
            rust_files(&p, out);
        } else if p.extension().is_some_and(|e| e == "rs") {
            out.push(p);
        }
    }
}

fn is_word(text: &str, at: usize, len: usize) -> bool {
    let bytes = text.as_bytes();
    let before = at == 0 || !(bytes[at - 1].is_ascii_alphanumeric() || bytes[at - 1] == b'_');
    let end = at + len;
    let after = end >= bytes.len() || !(bytes[end].is_ascii_alphanumeric() || bytes[end] == b'_');
    before && after
}

fn criterion_10() -> Outcome {
    let first = all_reports();
    let second = all_reports();
    ensure(first == second, || "reports differ between runs".into())?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .map_err(|e| e.to_string())?;
    let single = pool.install(all_reports);
    ensure(first == single, || {
        "reports differ with a single worker thread".into()
    })?;

    let crates = Path::new(env!("CARGO_MANIFEST_DIR"))
        .parent()
        .ok_or("no crates dir")?;
    let mut files = Vec::new();
    for krate in ["core", "cli"] {
        rust_files(&crates.join(krate).join("src"), &mut files);
    }
    ensure(!files.is_empty(), || "no sources found".into())?;
    let candidates = [
        "f32",
        "f64",
        "i32",
        "i64",
        "u8",
        "u32",
        "u64",
        "usize",
        "isize",
        "BigInt",
        "BigRational",
        "Rational",
    ];
    let mut used: BTreeMap<&str, usize> = BTreeMap::new();
    let mut floats = Vec::new();
    for f in &files {
        let text = std::fs::read_to_string(f).map_err(|e| e.to_string())?;
        for ty in candidates {
            let hits = text
                .match_indices(ty)
                .filter(|(at, _)| is_word(&text, *at, ty.len()))
                .count();
            if hits > 0 {
                *used.entry(ty).or_default() += hits;
                if ty.starts_with('f') {
                    floats.push(format!("{}: {ty}", f.display()));
                }
            }
        }
    }
    let listing: Vec<String> = used.iter().map(|(t, c)| format!("{t}×{c}")).collect();
    ensure(floats.is_empty(), || {
        format!("floating point found: {}", floats.join(", "))
    })?;
    Ok(format!(
        "{} bytes of reports identical across 2 runs and 1 thread; {} source files, numeric types in use: {}",
        first.len(),
        files.len(),
        listing.join(" ")
    ))
}

fn main() {
    let criteria: [(usize, &str, fn() -> Outcome); 10] = [
        (1, "Hopf axioms and mutation suite", criterion_1),
        (2, "group systems extend to group algebras", criterion_2),
        (3, "cocycle lemma", criterion_3),
        (4, "truss from every system", criterion_4),
        (5, "descendent Hopf algebra", criterion_5),
        (6, "graph closure iff system", criterion_6),
        (
            7,
            "operator, brace and surjective-cocycle bridges",
            criterion_7,
        ),
        (8, "restriction to group-likes and primitives", criterion_8),
        (9, "character decomposition", criterion_9),
        (10, "determinism and exactness", criterion_10),
    ];
    let mut failed = 0;
    for (n, title, run) in criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            Err(format!("panicked: {msg}"))
        });
        match outcome {
            Ok(detail) => println!(
                "criterion {n:>2}: PASS  {title} ({:.1?}): {detail}",
                start.elapsed()
            ),
            Err(why) => {
                failed += 1;
                println!(
                    "criterion {n:>2}: FAIL  {title} ({:.1?}): {why}",
                    start.elapsed()
                );
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
