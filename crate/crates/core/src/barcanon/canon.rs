use serde::Serialize;
use serde_json::json;

use super::{act_kl_gen, BarError, BarOperator, ModuleKind, ModuleVector};
use crate::laurent::LaurentPoly;
use crate::qpsets::{ScaledWSet, XOrder};
use crate::triangular::{self, Column};

/// One named verification outcome.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: Option<String>,
}

impl CheckResult {
    pub fn new(name: &str, outcome: Result<(), String>) -> Self {
        match outcome {
            Ok(()) => CheckResult { name: name.into(), passed: true, detail: None },
            Err(d) => CheckResult { name: name.into(), passed: false, detail: Some(d) },
        }
    }
}

/// `underline M_y = Σ_x m_{x,y} M_x` (or the `N` analogue), by columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalTable {
    pub kind: ModuleKind,
    /// `columns[y]` lists `(x, p_{x,y})` sorted by `x`, including `(y, 1)`.
    pub columns: Vec<Column>,
    /// Truncation height2 of the carrier, if any.
    pub verified_up_to: Option<i32>,
}

impl CanonicalTable {
    /// Triangular solve against a bar operator with every column present.
    pub fn compute(set: &ScaledWSet, bar: &BarOperator) -> Result<CanonicalTable, BarError> {
        let mut cols = Vec::with_capacity(set.len());
        for x in 0..set.len() as u32 {
            cols.push(bar.column(x)?.terms().map(|(w, p)| (w, p.clone())).collect::<Column>());
        }
        let columns = triangular::solve(&cols, &set.linear_extension())?;
        Ok(CanonicalTable { kind: bar.kind, columns, verified_up_to: set.truncated_at() })
    }

    pub fn len(&self) -> usize {
        self.columns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.columns.is_empty()
    }

    pub fn p(&self, x: u32, y: u32) -> LaurentPoly {
        let col = &self.columns[y as usize];
        col.binary_search_by_key(&x, |(w, _)| *w).map(|i| col[i].1.clone()).unwrap_or_default()
    }

    /// Coefficient of `v⁻¹` in `p_{x,y}`.
    pub fn mu(&self, x: u32, y: u32) -> i64 {
        self.p(x, y).coeff(-1)
    }

    /// `underline M_y` as a vector.
    pub fn vector(&self, y: u32) -> ModuleVector {
        ModuleVector::from_terms(self.columns[y as usize].iter().cloned())
    }

    /// Nonzero `μ(x,y)` with `x ≠ y`, as `(x, y, μ)`.
    pub fn mu_entries(&self) -> Vec<(u32, u32, i64)> {
        let mut out = Vec::new();
        for (y, col) in self.columns.iter().enumerate() {
            for (x, p) in col {
                let m = p.coeff(-1);
                if *x != y as u32 && m != 0 {
                    out.push((*x, y as u32, m));
                }
            }
        }
        out
    }

    /// `v^{ht(y) − ht(x)} p_{x,y}`.
    pub fn tilde(&self, set: &ScaledWSet, x: u32, y: u32) -> LaurentPoly {
        self.p(x, y).shift((set.height2(y) - set.height2(x)) / 2)
    }

    pub fn all_coefficients_nonnegative(&self) -> bool {
        self.columns.iter().flatten().all(|(_, p)| p.all_coefficients_nonnegative())
    }

    /// `p_{y,y} = 1`, off-diagonal entries in `v⁻¹Z[v⁻¹]`, and bar-invariance.
    pub fn check_canonical(&self, set: &ScaledWSet, bar: &BarOperator) -> Result<(), String> {
        for y in 0..self.len() as u32 {
            if !self.p(y, y).is_one() {
                return Err(format!("diagonal entry at {} is not 1", set.point_name(y)));
            }
            for (x, p) in &self.columns[y as usize] {
                if *x != y && !p.in_vinv_zvinv() {
                    return Err(format!("entry ({}, {}) = {p} is not in v⁻¹Z[v⁻¹]", set.point_name(*x), set.point_name(y)));
                }
            }
            let c = self.vector(y);
            match bar.apply(&c) {
                Ok(b) if b == c => {}
                Ok(_) => return Err(format!("canonical element at {} is not bar-invariant", set.point_name(y))),
                Err(e) => return Err(e.to_string()),
            }
        }
        Ok(())
    }

    /// Parity of `v^{ht(y)−ht(x)} p_{x,y}`, and with a Bruhat order also
    /// `p_{x,y} = 0` unless `x ≤ y` (and `m_{x,y} ≠ 0` when `x ≤ y`).
    pub fn check_parity(&self, set: &ScaledWSet, order: Option<&XOrder>) -> Result<(), String> {
        for y in 0..self.len() as u32 {
            for (x, _) in &self.columns[y as usize] {
                let t = self.tilde(set, *x, y);
                let ok = match self.kind {
                    ModuleKind::M => t.is_even() && t.coeff(0) == 1,
                    ModuleKind::N => t.is_even(),
                };
                if !ok {
                    return Err(format!("parity fails at ({}, {}): {t}", set.point_name(*x), set.point_name(y)));
                }
                if let Some(o) = order {
                    if !o.leq(*x, y) {
                        return Err(format!("entry at ({}, {}) with x not below y", set.point_name(*x), set.point_name(y)));
                    }
                }
            }
            if let (Some(o), ModuleKind::M) = (order, self.kind) {
                if let Some(x) = o.below(y).find(|&x| self.p(x, y).is_zero()) {
                    return Err(format!("m vanishes at ({}, {}) although x ≤ y", set.point_name(x), set.point_name(y)));
                }
            }
        }
        Ok(())
    }

    /// The multiplication rule for `underline H_s · underline M_x`.
    pub fn check_multiplication(&self, set: &ScaledWSet) -> Result<(), String> {
        let h = |p: u32| set.height2(p);
        for x in 0..self.len() as u32 {
            if !set.is_interior(x) {
                continue;
            }
            let cx = self.vector(x);
            for s in 0..set.rank() {
                let Ok(lhs) = act_kl_gen(set, self.kind, s, &cx) else {
                    continue;
                };
                let sx = set.act(s, x).expect("interior");
                let sum_over = |strict: bool| {
                    let mut v = ModuleVector::zero();
                    for (w, _) in &self.columns[x as usize] {
                        if *w == x {
                            continue;
                        }
                        let Some(sw) = set.act(s, *w) else { continue };
                        let cond = if strict { h(sw) < h(*w) } else { h(sw) <= h(*w) };
                        if cond {
                            v.add_assign_scaled(&self.vector(*w), &LaurentPoly::constant(self.mu(*w, x)));
                        }
                    }
                    v
                };
                let rhs = match self.kind {
                    ModuleKind::M if h(sx) <= h(x) => cx.scale(&LaurentPoly::v_plus_vinv()),
                    ModuleKind::M => self.vector(sx).add(&sum_over(false)),
                    ModuleKind::N if h(sx) < h(x) => cx.scale(&LaurentPoly::v_plus_vinv()),
                    ModuleKind::N if h(sx) > h(x) => self.vector(sx).add(&sum_over(true)),
                    ModuleKind::N => sum_over(true),
                };
                if lhs != rhs {
                    return Err(format!("multiplication rule fails for s{} at {}", s + 1, set.point_name(x)));
                }
            }
        }
        Ok(())
    }

    /// Recurrences for the columns of `y` from those of `sy` when
    /// `ht(sy) < ht(y)`, and the equalities `m̃_{x,y} = m̃_{sx,y}`
    /// (`ht(sy) ≤ ht(y)`) or `ñ_{x,y} = ñ_{sx,y}` (`sy < y`).
    pub fn check_recurrences(&self, set: &ScaledWSet) -> Result<(), String> {
        let h = |p: u32| set.height2(p);
        let n = self.len() as u32;
        let v = LaurentPoly::v();
        let vi = LaurentPoly::v_inv();
        for y in 0..n {
            for s in 0..set.rank() {
                let Some(sy) = set.act(s, y) else { continue };
                let equality = match self.kind {
                    ModuleKind::M => h(sy) <= h(y),
                    ModuleKind::N => h(sy) < h(y),
                };
                if equality {
                    for x in 0..n {
                        let Some(sx) = set.act(s, x) else { continue };
                        if self.tilde(set, x, y) != self.tilde(set, sx, y) {
                            return Err(format!(
                                "tilde equality fails for s{} at ({}, {})",
                                s + 1,
                                set.point_name(x),
                                set.point_name(y)
                            ));
                        }
                    }
                }
                if h(sy) >= h(y) {
                    continue;
                }
                // Correction terms: t ≠ sy with t < sy and s a descent of t.
                let mut corr: Vec<(u32, i64)> = Vec::new();
                for (t, _) in &self.columns[sy as usize] {
                    if *t == sy {
                        continue;
                    }
                    let Some(st) = set.act(s, *t) else { continue };
                    let cond = match self.kind {
                        ModuleKind::M => h(st) <= h(*t),
                        ModuleKind::N => h(st) < h(*t),
                    };
                    let mu = self.mu(*t, sy);
                    if cond && mu != 0 {
                        corr.push((*t, mu));
                    }
                }
                for x in 0..n {
                    let Some(sx) = set.act(s, x) else { continue };
                    let mut rhs = if h(sx) > h(x) {
                        self.p(sx, sy) + &vi * &self.p(x, sy)
                    } else if h(sx) < h(x) {
                        self.p(sx, sy) + &v * &self.p(x, sy)
                    } else {
                        match self.kind {
                            ModuleKind::M => LaurentPoly::v_plus_vinv() * self.p(x, sy),
                            ModuleKind::N => LaurentPoly::zero(),
                        }
                    };
                    for &(t, mu) in &corr {
                        rhs -= &self.p(x, t).scale(mu);
                    }
                    if rhs != self.p(x, y) {
                        return Err(format!(
                            "recurrence fails for s{} at ({}, {})",
                            s + 1,
                            set.point_name(x),
                            set.point_name(y)
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    /// For `x < y` and `s` with `sy ≤ y`, `sx > x` (kind M) or `sy < y`,
    /// `sx ≥ x` (kind N): `μ(x,y) = δ_{sx,y}`. Pairs `x < y` come from the
    /// Bruhat order when given, otherwise from the support of the table.
    pub fn check_omega(&self, set: &ScaledWSet, order: Option<&XOrder>) -> Result<(), String> {
        let h = |p: u32| set.height2(p);
        let n = self.len() as u32;
        for y in 0..n {
            let below: Vec<u32> = match order {
                Some(o) => o.below(y).filter(|&x| x != y).collect(),
                None => self.columns[y as usize].iter().map(|(x, _)| *x).filter(|&x| x != y).collect(),
            };
            for x in below {
                for s in 0..set.rank() {
                    let (Some(sx), Some(sy)) = (set.act(s, x), set.act(s, y)) else { continue };
                    let applies = match self.kind {
                        ModuleKind::M => h(sy) <= h(y) && h(sx) > h(x),
                        ModuleKind::N => h(sy) < h(y) && h(sx) >= h(x),
                    };
                    if applies && self.mu(x, y) != i64::from(sx == y) {
                        return Err(format!(
                            "μ({}, {}) = {} but s{} forces {}",
                            set.point_name(x),
                            set.point_name(y),
                            self.mu(x, y),
                            s + 1,
                            i64::from(sx == y)
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    /// Every check on one table: canonicity, parity, multiplication,
    /// recurrences and the μ lemma.
    pub fn verify(&self, set: &ScaledWSet, bar: &BarOperator) -> Vec<CheckResult> {
        let order = set.bruhat_order().ok();
        vec![
            CheckResult::new("canonical", self.check_canonical(set, bar)),
            CheckResult::new("parity", self.check_parity(set, order)),
            CheckResult::new("multiplication", self.check_multiplication(set)),
            CheckResult::new("recurrences", self.check_recurrences(set)),
            CheckResult::new("mu-lemma", self.check_omega(set, order)),
        ]
    }

    pub fn to_json(&self, set: &ScaledWSet) -> serde_json::Value {
        let mut entries = Vec::new();
        for (y, col) in self.columns.iter().enumerate() {
            for (x, p) in col {
                entries.push(json!([x, y, p]));
            }
        }
        let mu: Vec<_> = self.mu_entries().into_iter().map(|(x, y, m)| json!([x, y, m])).collect();
        json!({
            "schema_version": crate::SCHEMA_VERSION,
            "kind": self.kind,
            "system": set.system().name(),
            "class": set.kind(),
            "points": (0..set.len() as u32).map(|x| set.point_name(x)).collect::<Vec<_>>(),
            "heights2": set.heights2(),
            "entries": entries,
            "mu": mu,
            "verified_up_to": self.verified_up_to,
        })
    }

    /// `x,y,mu` rows with point names.
    pub fn mu_csv(&self, set: &ScaledWSet) -> String {
        let mut out = String::from("kind,x,y,x_name,y_name,mu\n");
        for (x, y, m) in self.mu_entries() {
            out.push_str(&format!("{},{x},{y},{},{},{m}\n", self.kind, set.point_name(x), set.point_name(y)));
        }
        out
    }
}
