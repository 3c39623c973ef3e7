use std::collections::HashMap;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use super::{
    bruhat_restriction_agrees, is_involution_class, is_perfect, minimal_length_count, strong_exchange, structure_check,
    twisted_classes, ClassifyError, StructureFlags,
};
use crate::barcanon::CheckResult;
use crate::coxeter::{fmt_word, CoxeterError, CoxeterSystem, DiagramAut, GenSet};
use crate::qpsets::{QpVerdict, ScaledWSet};

#[derive(Clone, Debug, Serialize)]
pub struct ClassReport {
    pub system: String,
    pub theta: DiagramAut,
    pub theta_order: usize,
    /// Reduced word of the element part of the first point (shortlex).
    pub seed: String,
    /// W-minimal points, by name.
    pub minimal: Vec<String>,
    pub size: usize,
    pub min_length: usize,
    /// Number of points of minimal length.
    pub min_length_count: usize,
    pub is_twisted_involution_class: bool,
    pub qp: QpVerdict,
    pub witness: Option<String>,
    pub perfect: Option<bool>,
    pub j: Option<GenSet>,
    pub structure: Option<StructureFlags>,
    /// Class order against the Bruhat order of `W` (QP classes only).
    pub bruhat_restriction: Option<bool>,
    /// `ℓ(rwr) < ℓ(w) ⇒ rwr < w`, recorded for QP1 classes in `I⁺`.
    pub strong_exchange: Option<bool>,
}

impl ClassReport {
    pub fn build(set: &ScaledWSet) -> Result<ClassReport, ClassifyError> {
        let sys = set.system();
        let theta = match set.kind() {
            crate::qpsets::SetKind::Conjugacy { theta, .. } => theta.clone(),
            _ => return Err(ClassifyError::NotAClass),
        };
        let qp = set.verdict()?.clone();
        let invol = is_involution_class(set)?;
        let perfect = if invol { Some(is_perfect(set)?) } else { None };
        let minimal = set.minimal_elements();
        let structure = if qp.is_qp && minimal.len() == 1 { Some(structure_check(set)?) } else { None };
        let bruhat_restriction = if qp.is_qp { Some(bruhat_restriction_agrees(set)?) } else { None };
        Ok(ClassReport {
            system: sys.name().to_string(),
            theta_order: theta.order(),
            theta,
            seed: fmt_word(set.point_word(0)),
            minimal: minimal.iter().map(|&p| set.point_name(p)).collect(),
            size: set.len(),
            min_length: set.heights2().iter().copied().min().unwrap_or(0) as usize,
            min_length_count: minimal_length_count(set),
            is_twisted_involution_class: invol,
            witness: qp.witness.as_ref().map(|w| w.describe(set)),
            qp,
            perfect,
            j: structure.as_ref().map(|s| s.j),
            structure,
            bruhat_restriction,
            strong_exchange: strong_exchange(set)?,
        })
    }

    pub fn csv_row(&self) -> String {
        let b = |x: Option<bool>| x.map_or(String::new(), |v| v.to_string());
        let st = self.structure.as_ref();
        [
            self.system.clone(),
            self.theta.to_string(),
            self.size.to_string(),
            self.min_length.to_string(),
            self.is_twisted_involution_class.to_string(),
            self.qp.is_qp.to_string(),
            self.qp.qp1.to_string(),
            b(self.perfect),
            self.j.map_or(String::new(), |j| j.to_string()),
            b(st.map(|s| s.a)),
            b(st.map(|s| s.b)),
            b(st.map(|s| s.c)),
            b(st.map(|s| s.centralizer)),
            b(st.map(|s| s.squares)),
            self.seed.clone(),
            self.witness.clone().unwrap_or_default(),
        ]
        .iter()
        .map(|f| csv_field(f))
        .collect::<Vec<_>>()
        .join(",")
    }
}

fn csv_field(f: &str) -> String {
    if f.contains([',', '"', '\n']) {
        format!("\"{}\"", f.replace('"', "\"\""))
    } else {
        f.to_string()
    }
}

pub const CSV_HEADER: &str =
    "type,theta,size,min_length,is_iplus,qp,qp1,perfect,J,struct_a,struct_b,struct_c,centralizer,squares,seed,witness";

#[derive(Clone, Debug, Serialize)]
pub struct Survey {
    pub system: String,
    pub reports: Vec<ClassReport>,
    pub checks: Vec<CheckResult>,
}

impl Survey {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from(CSV_HEADER);
        out.push('\n');
        for r in &self.reports {
            out.push_str(&r.csv_row());
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "schema_version": crate::SCHEMA_VERSION,
            "system": self.system,
            "reports": self.reports,
            "checks": self.checks,
        })
    }
}

/// One report per class per `θ ∈ Aut(W,S)` (or per the given `θ`), with
/// the classification statements checked on the result.
pub fn survey(system: &Arc<CoxeterSystem>, thetas: Option<&[DiagramAut]>) -> Result<Survey, ClassifyError> {
    if !system.is_finite() {
        return Err(CoxeterError::NotFinite.into());
    }
    let all = system.diagram_automorphisms();
    let thetas = thetas.unwrap_or(&all);
    let mut classes = Vec::new();
    for theta in thetas {
        classes.extend(twisted_classes(system, theta, false, None)?);
    }
    let reports: Vec<ClassReport> = classes.par_iter().map(ClassReport::build).collect::<Result<_, _>>()?;
    let mut checks = Vec::new();
    let first_bad = |pred: &dyn Fn(&ClassReport) -> bool, msg: &str| -> Result<(), String> {
        match reports.iter().find(|r| !pred(r)) {
            Some(r) => Err(format!("{msg}: θ = {}, seed {}", r.theta, r.seed)),
            None => Ok(()),
        }
    };
    checks.push(CheckResult::new(
        "qp-classes-in-I+",
        first_bad(&|r| !r.qp.is_qp || r.is_twisted_involution_class, "quasiparabolic class outside I⁺"),
    ));
    checks.push(CheckResult::new(
        "ordinary-qp-classes-are-involutions",
        first_bad(
            &|r| !(r.qp.is_qp && r.theta.is_identity()) || r.is_twisted_involution_class,
            "quasiparabolic ordinary class with non-involutions",
        ),
    ));
    checks.push(CheckResult::new(
        "perfect-implies-qp",
        first_bad(&|r| r.perfect != Some(true) || r.qp.is_qp, "perfect class that is not quasiparabolic"),
    ));
    checks.push(CheckResult::new(
        "qp-unique-minimal",
        first_bad(&|r| !r.qp.is_qp || r.minimal.len() == 1, "quasiparabolic class without unique minimal element"),
    ));
    checks.push(CheckResult::new(
        "minimal-element-structure",
        first_bad(&|r| r.structure.as_ref().is_none_or(StructureFlags::all), "structure flags fail"),
    ));
    let witnesses = classes.iter().zip(&reports).try_for_each(|(set, r)| match &r.qp.witness {
        Some(w) if !w.violates(set) => Err(format!("witness {} does not re-validate", w.describe(set))),
        _ => Ok(()),
    });
    checks.push(CheckResult::new("witnesses-revalidate", witnesses));
    Ok(Survey { system: system.name().to_string(), reports, checks })
}

/// `w ↦ w·w₀⁺` maps each quasiparabolic class onto a quasiparabolic class
/// and reverses the class orders.
pub fn w0_lemma_check(system: &Arc<CoxeterSystem>) -> Result<CheckResult, ClassifyError> {
    let w0p = system.w0_plus()?;
    let outcome = (|| -> Result<Result<(), String>, ClassifyError> {
        for theta in system.diagram_automorphisms() {
            for k in twisted_classes(system, &theta, false, None)? {
                if !k.verdict()?.is_qp {
                    continue;
                }
                let image_of = |p: u32| system.ext_multiply(&k.ext_element(p).expect("class point"), &w0p);
                let seed = image_of(0)?;
                let k2 = ScaledWSet::conjugacy_set(system, &seed, None)?;
                if k2.len() != k.len() {
                    return Ok(Err(format!("class of {} and its w₀⁺ translate differ in size", k.point_name(0))));
                }
                if !k2.verdict()?.is_qp {
                    return Ok(Err(format!("w₀⁺ translate of {} is not quasiparabolic", k.point_name(0))));
                }
                let index: HashMap<u32, u32> =
                    (0..k2.len() as u32).map(|q| (k2.element(q).and_then(|e| e.id()).expect("finite"), q)).collect();
                let mut phi = Vec::with_capacity(k.len());
                for p in 0..k.len() as u32 {
                    let e = image_of(p)?;
                    let Some(&q) = index.get(&e.x.id().expect("finite")) else {
                        return Ok(Err(format!("{}·w₀⁺ is outside the translated class", k.point_name(p))));
                    };
                    phi.push(q);
                }
                let (o1, o2) = (k.bruhat_order()?, k2.bruhat_order()?);
                for x in 0..k.len() as u32 {
                    for y in 0..k.len() as u32 {
                        if o1.leq(x, y) != o2.leq(phi[y as usize], phi[x as usize]) {
                            return Ok(Err(format!(
                                "w₀⁺ does not reverse the order at ({}, {})",
                                k.point_name(x),
                                k.point_name(y)
                            )));
                        }
                    }
                }
            }
        }
        Ok(Ok(()))
    })()?;
    Ok(CheckResult::new("w0-translate-reverses-order", outcome))
}
