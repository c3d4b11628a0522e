//! Acceptance suite: one line per criterion, then a nonzero exit if any
//! criterion failed. Runs on the JSON fixtures under `fixtures/`.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::{Command, ExitCode};
use std::time::Instant;

use rrb_core::cohomology::{classical_h2_check, Cohomology};
use rrb_core::extension::{
    are_equivalent, build_extension, canonical_section, check_cocycle, extract_actions, extract_factor_system,
    module_of, Extension,
};
use rrb_core::groupkit::FiniteGroup;
use rrb_core::json::Document;
use rrb_core::module::{validate_module, FactorSystem, Module};
use rrb_core::rrb::validate_morphism;
use rrb_core::wells::{act_on_class, WellsContext};

use common::*;

const MAX_ORDER: usize = 64;
const COCHAIN_LIMIT: u128 = 1 << 20;
/// Bound on `|Z^2| * |C^1|` for building and comparing every extension.
const BIJECTION_LIMIT: u128 = 1 << 16;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn fixtures_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn fixture_files(prefix: &str) -> Vec<PathBuf> {
    let mut out: Vec<PathBuf> = std::fs::read_dir(fixtures_dir())
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.file_name().unwrap().to_string_lossy().starts_with(prefix))
        .collect();
    out.sort();
    out
}

fn stem(p: &std::path::Path) -> String {
    p.file_stem().unwrap().to_string_lossy().into_owned()
}

fn load(p: &std::path::Path) -> Document {
    Document::parse(&std::fs::read_to_string(p).unwrap()).unwrap()
}

/// Every module fixture that parses as a valid module.
fn modules() -> Vec<(String, Module)> {
    fixture_files("module_")
        .iter()
        .filter_map(|p| match load(p) {
            Document::Module(m) => m.to_module().ok().map(|m| (stem(p), m)),
            _ => None,
        })
        .collect()
}

fn extensions() -> Vec<(String, Extension)> {
    fixture_files("ext_")
        .iter()
        .map(|p| match load(p) {
            Document::Extension(e) => (stem(p), e.to_extension().unwrap()),
            other => panic!("{} is a {}", p.display(), other.kind()),
        })
        .collect()
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn criterion_1() -> Outcome {
    let mut checked = Vec::new();
    for (name, m) in modules() {
        let count = two_cochain_count(&m);
        if count > COCHAIN_LIMIT {
            continue;
        }
        let coh = Cohomology::new(&m);
        let b = coboundaries(&m);
        let mut z = 0u128;
        for fs in all_two_cochains(&m) {
            let in_z = builds_an_rrb_group(&m, &fs);
            ensure(coh.is_cocycle(&fs) == in_z, || format!("{name}: Z2 membership differs at {fs:?}"))?;
            ensure(coh.is_coboundary(&fs) == b.contains(&fs), || format!("{name}: B2 membership differs at {fs:?}"))?;
            z += in_z as u128;
        }
        let b_len = b.len() as u128;
        ensure(coh.z2().order() == z, || format!("{name}: |Z2| {} vs {z}", coh.z2().order()))?;
        ensure(coh.b2().order() == b_len, || format!("{name}: |B2| {} vs {b_len}", coh.b2().order()))?;
        ensure(coh.h2().order() * b_len == z, || format!("{name}: |H2| {} vs {z}/{b_len}", coh.h2().order()))?;
        if name == "module_trivial_z2" {
            ensure((z, b_len, coh.h2().factors()) == (16, 1, &[2u64, 2, 2, 2][..]), || {
                format!("{name}: expected |Z2| = 16, |B2| = 1, H2 = (Z/2)^4")
            })?;
        }
        checked.push(format!("{}:{z}/{b_len}", name.trim_start_matches("module_")));
    }
    ensure(checked.iter().any(|c| c.starts_with("trivial_z2")), || "trivial_z2 fixture missing".into())?;
    Ok(format!("|Z2|/|B2| by enumeration on {}", checked.join(", ")))
}

fn criterion_2() -> Outcome {
    let mut checked = Vec::new();
    for (name, m) in modules() {
        let coh = Cohomology::new(&m);
        let one = all_one_cochains(&m);
        if coh.z2().order() * one.len() as u128 > BIJECTION_LIMIT {
            continue;
        }
        let cocycles = coh.z2_elements();
        let exts: Vec<Extension> = cocycles.iter().map(|fs| build_extension(&m, fs).unwrap()).collect();
        // factor systems of each built extension over all sections; two
        // extensions are equivalent exactly when these sets meet
        let orbits: Vec<BTreeSet<FactorSystem>> = exts.iter().map(|e| orbit(e, &one)).collect();
        let classes: Vec<Vec<i64>> = cocycles.iter().map(|fs| coh.class_of(fs).unwrap().coords).collect();
        let distinct: BTreeSet<&BTreeSet<FactorSystem>> = orbits.iter().collect();
        ensure(distinct.len() as u128 == coh.h2().order(), || {
            format!("{name}: {} equivalence classes, |H2| = {}", distinct.len(), coh.h2().order())
        })?;
        for i in 0..exts.len() {
            for j in 0..exts.len() {
                let equivalent = orbits[i].contains(&cocycles[j]);
                ensure(equivalent == (classes[i] == classes[j]), || format!("{name}: cocycles {i} and {j}"))?;
            }
        }
        // spot-check the orbit criterion against a direct morphism search
        for i in (0..exts.len()).step_by(7.max(exts.len() / 8)) {
            for j in (0..exts.len()).step_by(5.max(exts.len() / 8)) {
                let searched = equivalent_by_search(&exts[i], &exts[j], &m);
                ensure(searched == (classes[i] == classes[j]), || format!("{name}: search disagrees at {i}, {j}"))?;
                ensure(are_equivalent(&exts[i], &exts[j]).unwrap() == searched, || format!("{name}: are_equivalent"))?;
            }
        }
        checked.push(format!("{}:{}", name.trim_start_matches("module_"), distinct.len()));
    }
    ensure(checked.len() >= 4, || format!("only {} modules within bounds", checked.len()))?;
    Ok(format!("classes = |H2| on {}", checked.join(", ")))
}

fn criterion_3() -> Outcome {
    let exts = extensions();
    for (name, ext) in &exts {
        let sec = canonical_section(ext);
        let action = extract_actions(ext, &sec).map_err(|e| format!("{name}: {e}"))?;
        let violation = validate_module(ext.quotient(), ext.kernel(), &action).map_err(|e| format!("{name}: {e}"))?;
        ensure(violation.is_none(), || format!("{name}: module condition fails: {violation:?}"))?;
        let m = module_of(ext).unwrap();
        let fs = extract_factor_system(ext, &sec).unwrap();
        check_cocycle(&m, &fs).map_err(|e| format!("{name}: {e}"))?;
        ensure(builds_an_rrb_group(&m, &fs), || format!("{name}: extracted cocycle does not rebuild"))?;
    }
    Ok(format!("{} extension fixtures", exts.len()))
}

fn criterion_4() -> Outcome {
    let mut builds = 0;
    for (name, m) in modules() {
        let coh = Cohomology::new(&m);
        let cocycles: Vec<FactorSystem> = if coh.z2().order() <= 512 {
            coh.z2_elements()
        } else {
            coh.class_representatives().into_iter().map(|c| c.representative).collect()
        };
        for fs in cocycles {
            let ext = build_extension(&m, &fs).unwrap();
            let sec = canonical_section(&ext);
            ensure(extract_factor_system(&ext, &sec).unwrap() == fs, || format!("{name}: factor system changed"))?;
            ensure(&extract_actions(&ext, &sec).unwrap() == m.action(), || format!("{name}: action changed"))?;
            builds += 1;
        }
    }
    let exts = extensions();
    for (name, ext) in &exts {
        let m = module_of(ext).unwrap();
        let fs = extract_factor_system(ext, &canonical_section(ext)).unwrap();
        let rebuilt = build_extension(&m, &fs).unwrap();
        ensure(are_equivalent(ext, &rebuilt).unwrap(), || format!("{name}: rebuilt extension not equivalent"))?;
        let small = m.a().order() * m.b().order() <= 8;
        ensure(!small || equivalent_by_search(ext, &rebuilt, &m), || format!("{name}: no equivalence found"))?;
    }
    Ok(format!("{builds} build/extract roundtrips, {} rebuilds", exts.len()))
}

fn criterion_5() -> Outcome {
    let mut checked = 0usize;
    for (name, ext) in extensions() {
        let ctx = WellsContext::new(&ext, MAX_ORDER).map_err(|e| format!("{name}: {e}"))?;
        let coh = ctx.cohomology();
        let c = ctx.compatible_pairs().unwrap();
        let omega: Vec<_> = c.iter().map(|p| ctx.wells_map(p).unwrap()).collect();
        let index: BTreeMap<_, _> = c.iter().enumerate().map(|(i, p)| (p.key(), i)).collect();
        for (i, p) in c.iter().enumerate() {
            for (j, q) in c.iter().enumerate() {
                let lhs = &omega[index[&p.compose(q).key()]];
                let rhs = coh.add_classes(&act_on_class(coh, q, &omega[i]).unwrap(), &omega[j]);
                ensure(*lhs == rhs, || format!("{name}: derivation law fails at pairs {i}, {j}"))?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} pairs (c1, c2)"))
}

fn criterion_6() -> Outcome {
    let mut sizes = Vec::new();
    for (name, ext) in extensions() {
        let ctx = WellsContext::new(&ext, MAX_ORDER).map_err(|e| format!("{name}: {e}"))?;
        let r = ctx.verify_exactness().map_err(|e| format!("{name}: {e}"))?;
        ensure(r.exactness.all(), || format!("{name}: {:?}", r.failures))?;
        ensure(r.aut_ak_order == r.z1_order, || format!("{name}: |Aut^(A,K)| {} vs |Z1| {}", r.aut_ak_order, r.z1_order))?;
        for kappa in ctx.cohomology().z1_elements() {
            let g = ctx.z1_to_aut(&kappa).unwrap();
            ensure(ctx.aut_to_z1(&g).unwrap() == kappa, || format!("{name}: zeta(eta(kappa)) != kappa"))?;
        }
        for g in ctx.aut_ak_h().unwrap() {
            let kappa = ctx.aut_to_z1(&g).unwrap();
            let back = ctx.z1_to_aut(&kappa).unwrap();
            ensure(back.psi == g.psi && back.eta == g.eta, || format!("{name}: eta(zeta(gamma)) != gamma"))?;
        }
        sizes.push(r.aut_k_order);
    }
    Ok(format!("{} extensions, |Aut_K(H)| up to {}", sizes.len(), sizes.iter().max().unwrap()))
}

fn criterion_7() -> Outcome {
    let (mut pairs, mut positive, mut negative) = (0, 0, 0);
    for (name, ext) in extensions() {
        let ctx = WellsContext::new(&ext, MAX_ORDER).map_err(|e| format!("{name}: {e}"))?;
        for p in ctx.all_pairs().unwrap() {
            let verdict = ctx.is_inducible(&p);
            let criterion = ctx.inducible_by_module_criterion(&p).unwrap();
            ensure(verdict.inducible == criterion, || format!("{name}: deciders disagree on {:?}", p.key()))?;
            if verdict.inducible {
                let w = verdict.witness.ok_or_else(|| format!("{name}: no witness for {:?}", p.key()))?;
                validate_morphism(ext.total(), ext.total(), w.psi.image.clone(), w.eta.image.clone())
                    .map_err(|e| format!("{name}: witness invalid: {e}"))?;
                let back = ctx.restrict_and_induce(&w).unwrap();
                ensure(back.key() == p.key(), || format!("{name}: witness maps to another pair"))?;
                positive += 1;
            } else {
                negative += 1;
            }
            pairs += 1;
        }
    }
    ensure(negative > 0, || "no non-inducible pair in the corpus".into())?;
    Ok(format!("{pairs} pairs, {positive} inducible with witnesses, {negative} not"))
}

fn criterion_8() -> Outcome {
    let mut found = Vec::new();
    for (name, ext) in extensions() {
        let ctx = WellsContext::new(&ext, MAX_ORDER).map_err(|e| format!("{name}: {e}"))?;
        if ctx.cohomology().h2().order() != 1 {
            continue;
        }
        let c = ctx.compatible_pairs().unwrap();
        for p in &c {
            ensure(ctx.is_inducible(p).inducible, || format!("{name}: pair {:?} not inducible", p.key()))?;
        }
        found.push(format!("{name} (|C| = {})", c.len()));
    }
    ensure(found.iter().any(|f| !f.ends_with("(|C| = 1)")), || "no trivial-H2 fixture with |C| > 1".into())?;
    Ok(format!("all of C inducible on {}", found.join(", ")))
}

fn criterion_9() -> Outcome {
    let z2 = FiniteGroup::cyclic(2);
    let z3 = FiniteGroup::cyclic(3);
    let a = classical_h2_check(&z2, &z2, vec![vec![0, 1]; 2]).map_err(|e| e.to_string())?;
    let b = classical_h2_check(&z3, &z3, vec![vec![0, 1, 2]; 3]).map_err(|e| e.to_string())?;
    ensure(a.factors() == [2], || format!("H2(Z2, Z2) = {:?}", a.factors()))?;
    ensure(b.factors() == [3], || format!("H2(Z3, Z3) = {:?}", b.factors()))?;
    Ok("H2(Z2, Z2) = Z/2, H2(Z3, Z3) = Z/3".into())
}

fn criterion_10() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_rrb");
    let s = |p: PathBuf| p.to_string_lossy().into_owned();
    let dir = fixtures_dir();
    let mut runs: Vec<Vec<String>> = Vec::new();
    for p in fixture_files("") {
        if stem(&p).starts_with("phi_") {
            continue;
        }
        runs.push(vec!["validate".into(), s(p)]);
    }
    runs.push(vec!["enumerate".into(), s(dir.join("group_z4.json")), s(dir.join("group_z2.json"))]);
    runs.push(vec![
        "enumerate".into(),
        s(dir.join("group_z3.json")),
        s(dir.join("group_z2.json")),
        "--phi".into(),
        s(dir.join("phi_z3_inversion.json")),
    ]);
    runs.push(vec!["--budget".into(), "3".into(), "enumerate".into(), s(dir.join("group_z4.json")), s(dir.join("group_z2.json"))]);
    for p in fixture_files("module_") {
        runs.push(vec!["cohomology".into(), s(p.clone())]);
        runs.push(vec!["cohomology".into(), "--representatives".into(), s(p)]);
    }
    for p in fixture_files("ext_") {
        runs.push(vec!["wells".into(), s(p)]);
    }
    for p in fixture_files("pair_") {
        runs.push(vec!["inducible".into(), s(dir.join("ext_klein_classical_built.json")), s(p)]);
    }
    let mut count = 0;
    for args in &runs {
        for format in ["text", "json"] {
            let go = || Command::new(bin).arg("--format").arg(format).args(args).env_remove("RRB_BUDGET").output().unwrap();
            let (x, y) = (go(), go());
            ensure(x.stdout == y.stdout && x.stderr == y.stderr && x.status == y.status, || {
                format!("output differs for {format} {args:?}")
            })?;
            ensure(!x.stdout.is_empty() || !x.stderr.is_empty(), || format!("no output for {args:?}"))?;
            count += 1;
        }
    }
    Ok(format!("{count} command lines, each run twice"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("cohomology matches exhaustive enumeration", criterion_1),
        ("extensions correspond to classes", criterion_2),
        ("extraction yields modules and cocycles", criterion_3),
        ("build and extract roundtrip", criterion_4),
        ("Wells map derivation law", criterion_5),
        ("exactness", criterion_6),
        ("inducibility deciders agree", criterion_7),
        ("trivial H2 makes every compatible pair inducible", criterion_8),
        ("classical H2 values", criterion_9),
        ("CLI determinism", criterion_10),
    ];
    let mut failed = 0;
    std::panic::set_hook(Box::new(|_| {}));
    for (i, (title, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {}: PASS {title} ({detail}) [{secs:.2}s]", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL {title}: {why} [{secs:.2}s]", i + 1);
            }
        }
    }
    if failed == 0 {
        println!("acceptance: all 10 criteria pass");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} of 10 criteria fail");
        ExitCode::FAILURE
    }
}
