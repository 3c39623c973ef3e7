use std::path::Path;
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use qpcox_core::barcanon::{inversion_check, BarError, CheckResult, ModuleKind};
use qpcox_core::classify::{
    survey as run_survey, truncated_qp_check, twisted_classes, universal_qp_check, w0_lemma_check,
};
use qpcox_core::coxeter::{fmt_word, CoxeterSystem, Family, GenSet};
use qpcox_core::hecke::verify_relations;
use qpcox_core::qpsets::{ScaledWSet, SetKind};
use qpcox_core::verify::{verify_set, SetVerification};
use serde_json::json;

use crate::{select, Common, Format, KindArg, Outcome, Suite, EXIT_BAR, EXIT_CHECK, EXIT_OK};

pub fn emit(out: Option<&Path>, body: &str) -> Result<()> {
    match out {
        Some(p) => std::fs::write(p, body).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn format_of(c: &Common, default: Format) -> Format {
    if let Some(f) = c.format {
        return f;
    }
    match c.out.as_ref().and_then(|p| p.extension()).and_then(|e| e.to_str()) {
        Some("csv") => Format::Csv,
        Some("json") => Format::Json,
        Some("dot") | Some("gv") => Format::Dot,
        _ => default,
    }
}

fn kinds(k: KindArg) -> Vec<ModuleKind> {
    match k {
        KindArg::M => vec![ModuleKind::M],
        KindArg::N => vec![ModuleKind::N],
        KindArg::Both => vec![ModuleKind::M, ModuleKind::N],
    }
}

fn pretty(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialize");
    s.push('\n');
    s
}

fn describe(set: &ScaledWSet) -> String {
    match set.kind() {
        SetKind::Regular => "regular".into(),
        SetKind::Coset { j } => format!("coset J={j}"),
        SetKind::Conjugacy { theta, seed } => format!("class ({}, {theta})", fmt_word(seed)),
        _ => "set".into(),
    }
}

fn label(set: &ScaledWSet) -> Option<String> {
    set.truncated_at().map(|h| format!("verified up to height {h}"))
}

/// Runs `verify_set`, mapping bar-construction failures to exit code 3.
fn checked_run(set: &ScaledWSet, kinds: &[ModuleKind]) -> Result<std::result::Result<SetVerification, String>> {
    match verify_set(set, kinds) {
        Ok(v) => Ok(Ok(v)),
        Err(BarError::Qp(e)) => Err(e.into()),
        Err(BarError::Coxeter(e)) => Err(e.into()),
        Err(e) => Ok(Err(e.to_string())),
    }
}

fn code_of(v: &SetVerification) -> u8 {
    if !v.bar_passed() {
        EXIT_BAR
    } else if v.passed() {
        EXIT_OK
    } else {
        EXIT_CHECK
    }
}

fn check_lines(checks: &[CheckResult]) -> Vec<String> {
    checks
        .iter()
        .map(|c| match &c.detail {
            None if c.passed => format!("PASS {}", c.name),
            None => format!("FAIL {}", c.name),
            Some(d) => format!("{} {}: {d}", if c.passed { "PASS" } else { "FAIL" }, c.name),
        })
        .collect()
}

pub fn survey(c: &Common) -> Result<Outcome> {
    let sys = select::system(c)?;
    if c.theta.as_deref() == Some("list") {
        return Ok(Outcome { code: EXIT_OK, body: select::theta_list(&sys), log: vec![] });
    }
    if !sys.is_finite() {
        bail!("survey needs a finite system; use `verify --suite universal` for universal ones");
    }
    let thetas = match &c.theta {
        Some(t) => Some(vec![select::theta(&sys, t)?]),
        None => None,
    };
    let s = run_survey(&sys, thetas.as_deref())?;
    let qp = s.reports.iter().filter(|r| r.qp.is_qp).count();
    let mut log = vec![format!("{}: {} classes, {qp} quasiparabolic", sys.name(), s.reports.len())];
    log.extend(check_lines(&s.checks).into_iter().filter(|l| l.starts_with("FAIL")));
    let body = match format_of(c, Format::Csv) {
        Format::Csv => s.to_csv(),
        Format::Json => pretty(&s.to_json()),
        Format::Dot => bail!("survey has no DOT output"),
    };
    Ok(Outcome { code: if s.passed() { EXIT_OK } else { EXIT_CHECK }, body, log })
}

/// Name and size of the class of `x·w₀⁺` for the first point, when defined.
fn inversion_partner(sys: &Arc<CoxeterSystem>, set: &ScaledWSet) -> Option<serde_json::Value> {
    if !sys.is_finite() || !matches!(set.kind(), SetKind::Conjugacy { .. }) {
        return None;
    }
    let w0p = sys.w0_plus().ok()?;
    let image = sys.ext_multiply(&set.ext_element(0)?, &w0p).ok()?;
    let partner = ScaledWSet::conjugacy_set(sys, &image, None).ok()?;
    let min = partner.minimal_elements();
    Some(json!({
        "minimal": min.iter().map(|&p| partner.point_name(p)).collect::<Vec<_>>(),
        "size": partner.len(),
        "quasiparabolic": partner.verdict().ok().map(|v| v.is_qp),
    }))
}

pub fn basis(c: &Common) -> Result<Outcome> {
    let sys = select::system(c)?;
    let set = select::set(&sys, c)?;
    let ks = kinds(c.kind);
    let run = match checked_run(&set, &ks)? {
        Ok(v) => v,
        Err(e) => {
            let body = pretty(&json!({"schema_version": qpcox_core::SCHEMA_VERSION, "set": describe(&set), "bar_error": e}));
            return Ok(Outcome { code: EXIT_BAR, body, log: vec![format!("bar operator unavailable: {e}")] });
        }
    };
    let mut log = vec![format!("{} on {}: {} points", describe(&set), sys.name(), set.len())];
    log.extend(label(&set));
    log.extend(run.failures().into_iter().map(|f| format!("FAIL {f}")));
    let partner = inversion_partner(&sys, &set);
    if let Some(p) = &partner {
        log.push(format!("inversion partner: {p}"));
    }
    let body = match format_of(c, Format::Json) {
        Format::Json => pretty(&json!({
            "schema_version": qpcox_core::SCHEMA_VERSION,
            "system": sys.name(),
            "set": describe(&set),
            "points": set.len(),
            "label": label(&set),
            "qp": run.qp,
            "bar": run.bar,
            "tables": run.tables.iter().map(|t| t.to_json(&set)).collect::<Vec<_>>(),
            "m_entries_nonnegative": run.table(ModuleKind::M).map(|t| t.all_coefficients_nonnegative()),
            "checks": run.checks,
            "inversion_partner": partner,
        })),
        Format::Csv => run.tables.iter().map(|t| t.mu_csv(&set)).collect(),
        Format::Dot => bail!("basis has no DOT output; use the wgraph command"),
    };
    Ok(Outcome { code: code_of(&run), body, log })
}

pub fn wgraph(c: &Common) -> Result<Outcome> {
    let sys = select::system(c)?;
    let set = select::set(&sys, c)?;
    let ks = kinds(c.kind);
    let run = match checked_run(&set, &ks)? {
        Ok(v) => v,
        Err(e) => return Ok(Outcome { code: EXIT_BAR, body: String::new(), log: vec![format!("bar operator unavailable: {e}")] }),
    };
    let mut log = Vec::new();
    for g in &run.graphs {
        log.push(format!(
            "Γ_{}: {} vertices, {} edges, {} cells",
            g.kind.to_string().to_lowercase(),
            g.len(),
            g.edge_count(),
            g.cells().cells.len()
        ));
    }
    log.extend(label(&set));
    log.extend(run.failures().into_iter().map(|f| format!("FAIL {f}")));
    let body = match format_of(c, Format::Json) {
        Format::Dot => run.graphs.iter().map(|g| g.to_dot()).collect(),
        Format::Json => pretty(&json!({
            "schema_version": qpcox_core::SCHEMA_VERSION,
            "system": sys.name(),
            "set": describe(&set),
            "label": label(&set),
            "graphs": run.graphs.iter().map(|g| g.to_json()).collect::<Vec<_>>(),
            "checks": run.checks,
        })),
        Format::Csv => bail!("wgraph has no CSV output"),
    };
    Ok(Outcome { code: code_of(&run), body, log })
}

/// Every quasiparabolic set of a finite system that the suites sweep: the
/// regular set, all coset sets, and the QP classes in `I⁺`.
fn all_sets(sys: &Arc<CoxeterSystem>) -> Result<Vec<ScaledWSet>> {
    let mut sets = vec![ScaledWSet::regular(sys, None)?];
    for mask in 1..(1u32 << sys.rank()) {
        sets.push(ScaledWSet::coset_set(sys, GenSet(mask), None)?);
    }
    for theta in sys.diagram_automorphisms().into_iter().filter(|t| t.is_involution()) {
        for k in twisted_classes(sys, &theta, true, None)? {
            if k.verdict()?.is_qp {
                sets.push(k);
            }
        }
    }
    Ok(sets)
}

struct Report {
    checks: Vec<CheckResult>,
    notes: Vec<String>,
    bar_failed: bool,
}

fn suite_sets(sys: &Arc<CoxeterSystem>, c: &Common, graphs: bool, r: &mut Report) -> Result<()> {
    let explicit = c.regular || c.coset.is_some() || c.class.is_some() || c.theta.is_some() || c.seed.is_some();
    let sets = if explicit { vec![select::set(sys, c)?] } else { all_sets(sys)? };
    let is_graph = |n: &str| ["quasi-admissible", "wgraph-module", "rho-", "gamma-"].iter().any(|k| n.contains(k));
    for set in &sets {
        let name = describe(set);
        match checked_run(set, &kinds(c.kind))? {
            Err(e) => {
                r.bar_failed = true;
                r.checks.push(CheckResult::new(&format!("{name}: bar"), Err(e)));
            }
            Ok(v) => {
                if !graphs {
                    r.checks.push(CheckResult::new(
                        &format!("{name}: quasiparabolic"),
                        if v.qp.is_qp { Ok(()) } else { Err("not quasiparabolic".into()) },
                    ));
                    for b in &v.bar {
                        r.bar_failed |= !b.passed;
                        r.checks.push(CheckResult::new(&format!("{name}: bar"), b.failure.clone().map_or(Ok(()), Err)));
                    }
                }
                for ch in v.checks.iter().filter(|ch| is_graph(&ch.name) == graphs) {
                    let mut ch = ch.clone();
                    ch.name = format!("{name}: {}", ch.name);
                    r.checks.push(ch);
                }
                if graphs {
                    for g in &v.graphs {
                        r.notes.push(format!("{name}: Γ_{} has {} cells", g.kind.to_string().to_lowercase(), g.cells().cells.len()));
                    }
                }
            }
        }
    }
    Ok(())
}

fn finite_classification(sys: &Arc<CoxeterSystem>, r: &mut Report) -> Result<()> {
    let s = run_survey(sys, None)?;
    r.checks.extend(s.checks.iter().cloned());
    r.checks.push(w0_lemma_check(sys)?);
    // Unique element of minimal length, the sense used for the triality classes.
    for rep in s.reports.iter().filter(|rep| !rep.theta.is_involution() && rep.min_length_count == 1) {
        r.notes.push(format!(
            "θ = {} (order {}), class of {}: size {}, unique element of minimal length {}, QP1 {}{}",
            rep.theta,
            rep.theta_order,
            rep.seed,
            rep.size,
            rep.min_length,
            if rep.qp.qp1 { "holds" } else { "fails" },
            rep.witness.as_ref().map_or(String::new(), |w| format!(" ({w})"))
        ));
    }
    Ok(())
}

fn universal(sys: &Arc<CoxeterSystem>, c: &Common, r: &mut Report) -> Result<()> {
    let cutoff = c.cutoff.context("--cutoff is required for universal systems")?;
    let mut agree = Ok(());
    let (mut compared, mut vacuous) = (0usize, 0usize);
    for theta in sys.diagram_automorphisms() {
        for k in twisted_classes(sys, &theta, false, Some(cutoff))? {
            let seed = k.ext_element(0).context("class point")?;
            // With no point below the cutoff the truncated check tests nothing.
            if k.heights2().iter().all(|&h| h >= cutoff) {
                vacuous += 1;
                continue;
            }
            compared += 1;
            let u = universal_qp_check(sys, &seed)?;
            let t = truncated_qp_check(&k);
            if seed.x.id().is_none() && u.minimal.is_empty() {
                r.notes.push(format!("θ = {theta}: class of the identity, QP {}, in I⁺ {}", u.is_qp, u.in_i_plus));
            }
            if u.is_qp != t.is_qp && agree.is_ok() {
                agree = Err(format!(
                    "class of {} with θ = {theta}: criterion gives {} but the truncation gives {}",
                    k.point_name(0),
                    u.is_qp,
                    t.is_qp
                ));
            }
        }
    }
    r.notes.push(format!("{compared} visible classes compared, {vacuous} lying entirely at the cutoff skipped"));
    r.checks.push(CheckResult::new("universal-criterion-matches-truncation", agree));
    Ok(())
}

pub fn verify(c: &Common, suite: Suite) -> Result<Outcome> {
    let sys = select::system(c)?;
    let finite = sys.family() == Family::Finite;
    let mut r = Report { checks: Vec::new(), notes: Vec::new(), bar_failed: false };
    let wants = |s: Suite| suite == s || suite == Suite::All;
    let need_finite = |s: &str| -> Result<()> {
        if !finite {
            bail!("suite {s} needs a finite system");
        }
        Ok(())
    };
    if wants(Suite::Hecke) && (finite || suite == Suite::Hecke) {
        need_finite("hecke")?;
        r.checks.extend(verify_relations(&sys)?);
    }
    if wants(Suite::FiniteClassification) && (finite || suite != Suite::All) {
        need_finite("finite-classification")?;
        finite_classification(&sys, &mut r)?;
    }
    if wants(Suite::Inversion) && (finite || suite != Suite::All) {
        need_finite("inversion")?;
        let rep = inversion_check(&sys)?;
        for p in &rep.pairs {
            r.notes.push(format!("inversion pair: class of {} ({} points) with class of {}", p.class, p.size, p.partner));
        }
        r.checks.push(CheckResult::new("inversion", rep.failure.map_or(Ok(()), Err)));
    }
    if wants(Suite::Bar) && (finite || suite != Suite::All) {
        if !finite && !(c.regular || c.theta.is_some() || c.seed.is_some() || c.coset.is_some()) {
            bail!("suite bar on a universal system needs an explicit set");
        }
        suite_sets(&sys, c, false, &mut r)?;
    }
    if wants(Suite::Wgraph) && (finite || suite != Suite::All) {
        if !finite && !(c.regular || c.theta.is_some() || c.seed.is_some() || c.coset.is_some()) {
            bail!("suite wgraph on a universal system needs an explicit set");
        }
        suite_sets(&sys, c, true, &mut r)?;
    }
    if wants(Suite::Universal) && (!finite || suite == Suite::Universal) {
        if finite {
            bail!("suite universal needs a universal system such as U3");
        }
        universal(&sys, c, &mut r)?;
    }
    let passed = r.checks.iter().all(|ch| ch.passed);
    let code = if r.bar_failed {
        EXIT_BAR
    } else if passed {
        EXIT_OK
    } else {
        EXIT_CHECK
    };
    let mut log = check_lines(&r.checks);
    log.extend(r.notes.iter().map(|n| format!("note: {n}")));
    let body = pretty(&json!({
        "schema_version": qpcox_core::SCHEMA_VERSION,
        "system": sys.name(),
        "suite": suite,
        "passed": passed,
        "checks": r.checks,
        "notes": r.notes,
    }));
    Ok(Outcome { code, body, log })
}
