use super::{act_gen, act_gen_inv, epsilon, BarError, BarOperator, CanonicalTable, CheckResult, ModuleKind, ModuleVector};
use crate::laurent::LaurentPoly;
use crate::qpsets::ScaledWSet;

fn sign(k: i32) -> i64 {
    if k.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// The primed basis of the opposite module: from the `N`-table,
/// `underline M'_y = Σ_x (−1)^{ht(y)−ht(x)} bar(n_{x,y}) M_x`, and from the
/// `M`-table the analogous `underline N'_y`.
pub fn primed_basis(set: &ScaledWSet, source: &CanonicalTable) -> Vec<ModuleVector> {
    (0..source.len() as u32)
        .map(|y| {
            ModuleVector::from_terms(source.columns[y as usize].iter().map(|(x, p)| {
                let k = (set.height2(y) - set.height2(*x)) / 2;
                (*x, p.bar().scale(sign(k)))
            }))
        })
        .collect()
}

/// Bar-invariance under `bar` (the operator of the primed basis's own
/// module) and `underline M'_y ∈ M_y + Σ vZ[v] M_x`.
pub fn check_primed(set: &ScaledWSet, primed: &[ModuleVector], bar: &BarOperator) -> Result<(), String> {
    for (y, c) in primed.iter().enumerate() {
        let y = y as u32;
        if !c.coeff(y).is_one() {
            return Err(format!("primed element at {} has diagonal {}", set.point_name(y), c.coeff(y)));
        }
        if let Some((x, p)) = c.terms().find(|(x, p)| *x != y && !p.in_v_zv()) {
            return Err(format!("primed entry ({}, {}) = {p} is not in vZ[v]", set.point_name(x), set.point_name(y)));
        }
        match bar.apply(c) {
            Ok(b) if b == *c => {}
            Ok(_) => return Err(format!("primed element at {} is not bar-invariant", set.point_name(y))),
            Err(e) => return Err(e.to_string()),
        }
    }
    Ok(())
}

/// `Φ_MN(M_x) = ε(x) bar(N_x)` and `Φ_NM(N_x) = ε(x) bar(M_x)`, stored by
/// columns; both are A-linear.
#[derive(Clone, Debug)]
pub struct PhiMaps {
    pub mn: Vec<ModuleVector>,
    pub nm: Vec<ModuleVector>,
    pub epsilon: Vec<i64>,
}

pub fn phi_maps(set: &ScaledWSet, bar_m: &BarOperator, bar_n: &BarOperator) -> Result<PhiMaps, BarError> {
    let eps = epsilon(set);
    let mut mn = Vec::with_capacity(set.len());
    let mut nm = Vec::with_capacity(set.len());
    for x in 0..set.len() as u32 {
        let e = LaurentPoly::constant(eps[x as usize]);
        mn.push(bar_n.column(x)?.scale(&e));
        nm.push(bar_m.column(x)?.scale(&e));
    }
    Ok(PhiMaps { mn, nm, epsilon: eps })
}

fn apply_linear(cols: &[ModuleVector], v: &ModuleVector) -> ModuleVector {
    let mut out = ModuleVector::zero();
    for (x, p) in v.terms() {
        out.add_assign_scaled(&cols[x as usize], p);
    }
    out
}

impl PhiMaps {
    pub fn apply_mn(&self, v: &ModuleVector) -> ModuleVector {
        apply_linear(&self.mn, v)
    }

    pub fn apply_nm(&self, v: &ModuleVector) -> ModuleVector {
        apply_linear(&self.nm, v)
    }

    /// `Φ_NM ∘ Φ_MN = id`, `Φ_MN ∘ Φ_NM = id`, both maps intertwine the bar
    /// operators, and `Φ(H_s V) = Θ(H_s) Φ(V)` with `Θ(H_s) = −bar(H_s)`.
    /// All identities are linear or antilinear, so basis vectors suffice.
    pub fn check(&self, set: &ScaledWSet, bar_m: &BarOperator, bar_n: &BarOperator) -> Vec<CheckResult> {
        let n = set.len() as u32;
        let inverse = (0..n).try_for_each(|x| {
            let e = ModuleVector::basis(x);
            if self.apply_nm(&self.apply_mn(&e)) != e || self.apply_mn(&self.apply_nm(&e)) != e {
                return Err(format!("Φ maps are not mutually inverse at {}", set.point_name(x)));
            }
            Ok(())
        });
        let commute = (0..n).try_for_each(|x| {
            let mn_l = self.apply_mn(bar_m.column(x).map_err(|e| e.to_string())?);
            let mn_r = bar_n.apply(&self.mn[x as usize]).map_err(|e| e.to_string())?;
            let nm_l = self.apply_nm(bar_n.column(x).map_err(|e| e.to_string())?);
            let nm_r = bar_m.apply(&self.nm[x as usize]).map_err(|e| e.to_string())?;
            if mn_l != mn_r || nm_l != nm_r {
                return Err(format!("Φ does not commute with bar at {}", set.point_name(x)));
            }
            Ok(())
        });
        let twisted = (0..n).filter(|&x| set.is_interior(x)).try_for_each(|x| {
            for s in 0..set.rank() {
                let e = ModuleVector::basis(x);
                let pairs = [
                    (ModuleKind::M, ModuleKind::N, &self.mn),
                    (ModuleKind::N, ModuleKind::M, &self.nm),
                ];
                for (src, dst, cols) in pairs {
                    let Ok(hv) = act_gen(set, src, s, &e) else { continue };
                    let lhs = apply_linear(cols, &hv);
                    let Ok(rhs) = act_gen_inv(set, dst, s, &cols[x as usize]) else { continue };
                    if lhs != rhs.scale(&LaurentPoly::constant(-1)) {
                        return Err(format!("Φ_{src}{dst} fails the twisted law for s{} at {}", s + 1, set.point_name(x)));
                    }
                }
            }
            Ok(())
        });
        vec![
            CheckResult::new("phi-inverse", inverse),
            CheckResult::new("phi-bar", commute),
            CheckResult::new("phi-twisted", twisted),
        ]
    }

    /// `underline M'_x = ε(x) Φ_NM(underline N_x)` and
    /// `underline N'_x = ε(x) Φ_MN(underline M_x)`.
    pub fn check_prime_lemma(
        &self,
        set: &ScaledWSet,
        m_table: &CanonicalTable,
        n_table: &CanonicalTable,
    ) -> Result<(), String> {
        let m_primed = primed_basis(set, n_table);
        let n_primed = primed_basis(set, m_table);
        for x in 0..set.len() as u32 {
            let e = LaurentPoly::constant(self.epsilon[x as usize]);
            if self.apply_nm(&n_table.vector(x)).scale(&e) != m_primed[x as usize] {
                return Err(format!("M' differs from εΦ_NM(N) at {}", set.point_name(x)));
            }
            if self.apply_mn(&m_table.vector(x)).scale(&e) != n_primed[x as usize] {
                return Err(format!("N' differs from εΦ_MN(M) at {}", set.point_name(x)));
            }
        }
        Ok(())
    }
}

/// Primed-basis, Φ-map and prime-lemma checks for a set with both tables.
pub fn verify_dual(
    set: &ScaledWSet,
    bar_m: &BarOperator,
    bar_n: &BarOperator,
    m_table: &CanonicalTable,
    n_table: &CanonicalTable,
) -> Vec<CheckResult> {
    let mut out = vec![
        CheckResult::new("primed-M", check_primed(set, &primed_basis(set, n_table), bar_m)),
        CheckResult::new("primed-N", check_primed(set, &primed_basis(set, m_table), bar_n)),
    ];
    match phi_maps(set, bar_m, bar_n) {
        Ok(phi) => {
            out.extend(phi.check(set, bar_m, bar_n));
            out.push(CheckResult::new("prime-lemma", phi.check_prime_lemma(set, m_table, n_table)));
        }
        Err(e) => out.push(CheckResult::new("phi-maps", Err(e.to_string()))),
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::barcanon::BarRoute;
    use crate::coxeter::{CoxeterSystem, GenSet};

    #[test]
    fn coset_primed_one_step() {
        let w = CoxeterSystem::from_type("A2").unwrap();
        let x = ScaledWSet::coset_set(&w, [1usize].into_iter().collect::<GenSet>(), None).unwrap();
        let bar_m = BarOperator::build(&x, ModuleKind::M, BarRoute::Auto).unwrap();
        let bar_n = BarOperator::build(&x, ModuleKind::N, BarRoute::Auto).unwrap();
        let tm = CanonicalTable::compute(&x, &bar_m).unwrap();
        let tn = CanonicalTable::compute(&x, &bar_n).unwrap();
        let x0 = x.minimal_elements()[0];
        let y = x.act(0, x0).unwrap();
        let mp = primed_basis(&x, &tn);
        assert_eq!(mp[x0 as usize], ModuleVector::basis(x0));
        assert_eq!(mp[y as usize], ModuleVector::from_terms([(y, LaurentPoly::one()), (x0, -LaurentPoly::v())]));
        let phi = phi_maps(&x, &bar_m, &bar_n).unwrap();
        assert_eq!(phi.mn[x0 as usize], ModuleVector::basis(x0));
        for c in verify_dual(&x, &bar_m, &bar_n, &tm, &tn) {
            assert!(c.passed, "{}: {:?}", c.name, c.detail);
        }
    }
}
