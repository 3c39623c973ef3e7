//! The full invariant run on one quasiparabolic set: bar operators, both
//! canonical tables, the dual-basis identities and both W-graphs.

use serde::Serialize;

use crate::barcanon::{
    verify_bar_operator, verify_dual, BarError, BarOperator, BarRoute, BarVerdict, CanonicalTable, CheckResult,
    ModuleKind,
};
use crate::classify::truncated_qp_check;
use crate::hecke;
use crate::qpsets::{QpVerdict, ScaledWSet, SetKind};
use crate::wgraph::{build_wgraph, verify_against_module, WGraph};

#[derive(Clone, Debug, Serialize)]
pub struct SetVerification {
    pub qp: QpVerdict,
    pub bar: Vec<BarVerdict>,
    #[serde(skip)]
    pub tables: Vec<CanonicalTable>,
    #[serde(skip)]
    pub graphs: Vec<WGraph>,
    pub checks: Vec<CheckResult>,
}

impl SetVerification {
    pub fn bar_passed(&self) -> bool {
        self.bar.iter().all(|b| b.passed)
    }

    pub fn passed(&self) -> bool {
        self.qp.is_qp && self.bar_passed() && self.checks.iter().all(|c| c.passed)
    }

    pub fn table(&self, kind: ModuleKind) -> Option<&CanonicalTable> {
        self.tables.iter().find(|t| t.kind == kind)
    }

    pub fn graph(&self, kind: ModuleKind) -> Option<&WGraph> {
        self.graphs.iter().find(|g| g.kind == kind)
    }

    pub fn failures(&self) -> Vec<String> {
        let mut out: Vec<String> = self.bar.iter().filter_map(|b| b.failure.clone()).collect();
        if let Some(w) = &self.qp.witness {
            out.push(format!("not quasiparabolic: {:?} witness at point {}", w.axiom, w.x));
        }
        out.extend(
            self.checks
                .iter()
                .filter(|c| !c.passed)
                .map(|c| format!("{}: {}", c.name, c.detail.clone().unwrap_or_default())),
        );
        out
    }
}

/// QP verdict for finite or truncated carriers.
pub fn qp_verdict(set: &ScaledWSet) -> Result<QpVerdict, BarError> {
    if set.is_truncated() {
        Ok(truncated_qp_check(set))
    } else {
        Ok(set.verdict()?.clone())
    }
}

/// Runs every check that applies to `set` for the requested kinds. Returns
/// early, with no tables, when the set is not quasiparabolic or a bar
/// operator fails to verify.
pub fn verify_set(set: &ScaledWSet, kinds: &[ModuleKind]) -> Result<SetVerification, BarError> {
    let qp = qp_verdict(set)?;
    let mut out = SetVerification { qp, bar: Vec::new(), tables: Vec::new(), graphs: Vec::new(), checks: Vec::new() };
    if !out.qp.is_qp {
        return Ok(out);
    }
    let mut bars = Vec::new();
    for &kind in kinds {
        let bar = BarOperator::build(set, kind, BarRoute::Auto)?;
        out.bar.push(verify_bar_operator(set, &bar));
        bars.push(bar);
    }
    if !out.bar_passed() {
        return Ok(out);
    }
    for bar in &bars {
        let table = CanonicalTable::compute(set, bar)?;
        out.checks.extend(table.verify(set, bar).into_iter().map(|c| prefixed(bar.kind, c)));
        out.graphs.push(build_wgraph(set, &table));
        out.tables.push(table);
    }
    let exact = !set.is_truncated();
    for g in &out.graphs {
        let v = g.check_quasi_admissible();
        let q = if v.quasi_admissible { Ok(()) } else { Err(v.failure.clone().unwrap_or_default()) };
        out.checks.push(prefixed(g.kind, CheckResult::new("quasi-admissible", q)));
        if exact {
            out.checks.push(prefixed(g.kind, CheckResult::new("wgraph-module", g.verify_module())));
        }
    }
    if let (Some(tm), Some(tn), [bm, bn]) = (out.table(ModuleKind::M), out.table(ModuleKind::N), &bars[..]) {
        if exact {
            let mut extra = verify_dual(set, bm, bn, tm, tn);
            let (gm, gn) = (out.graph(ModuleKind::M).unwrap(), out.graph(ModuleKind::N).unwrap());
            extra.extend(verify_against_module(set, gm, gn, tm, tn));
            if matches!(set.kind(), SetKind::Regular) {
                extra.push(CheckResult::new(
                    "gamma-n-is-dual-of-gamma-m",
                    if gn.same_graph(&gm.dual()) { Ok(()) } else { Err("graphs differ".into()) },
                ));
                let cells_m = gm.cells().cells;
                extra.push(CheckResult::new(
                    "gamma-m-gamma-n-same-cells",
                    if cells_m == gn.cells().cells { Ok(()) } else { Err("cell partitions differ".into()) },
                ));
            }
            out.checks.extend(extra);
        }
    }
    if exact && matches!(set.kind(), SetKind::Regular) {
        for t in &out.tables {
            out.checks.push(prefixed(t.kind, CheckResult::new("regular-table-equals-h", regular_matches_kl(set, t)?)));
        }
    }
    Ok(out)
}

fn prefixed(kind: ModuleKind, mut c: CheckResult) -> CheckResult {
    c.name = format!("{kind}:{}", c.name);
    c
}

/// Entrywise comparison with the Kazhdan–Lusztig table of `W`.
fn regular_matches_kl(set: &ScaledWSet, table: &CanonicalTable) -> Result<Result<(), String>, BarError> {
    let sys = set.system();
    let kl = match hecke::kl_basis(sys) {
        Ok(k) => k,
        Err(e) => return Ok(Err(e.to_string())),
    };
    let ids: Vec<u32> = (0..set.len() as u32)
        .map(|x| sys.from_word(set.point_word(x)).map(|e| e.id().expect("finite")))
        .collect::<Result<_, _>>()?;
    for x in 0..set.len() as u32 {
        for y in 0..set.len() as u32 {
            if table.p(x, y) != kl.h(ids[x as usize], ids[y as usize]) {
                return Ok(Err(format!("entry ({}, {}) differs from h", set.point_name(x), set.point_name(y))));
            }
        }
    }
    Ok(Ok(()))
}
