use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use super::{BarError, BarOperator, BarRoute, CanonicalTable, ModuleKind, ModuleVector};
use crate::classify::{twisted_classes, ClassifyError};
use crate::coxeter::CoxeterSystem;
use crate::laurent::LaurentPoly;
use crate::qpsets::ScaledWSet;

#[derive(Clone, Debug, Serialize)]
pub struct InversionPair {
    /// `(word, θ)` of the first point of the class.
    pub class: String,
    pub partner: String,
    pub size: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct InversionReport {
    pub passed: bool,
    pub pairs: Vec<InversionPair>,
    pub failure: Option<String>,
}

fn tables(set: &ScaledWSet, kind: ModuleKind) -> Result<CanonicalTable, BarError> {
    let bar = BarOperator::build(set, kind, BarRoute::Auto)?;
    CanonicalTable::compute(set, &bar)
}

fn sign(k: i32) -> i64 {
    if k.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// Over every quasiparabolic class `K ⊂ I⁺`, pairs `K` with `K·w₀⁺` and checks
/// `Σ_w (−1)^{(ℓ(w)−ℓ(x))/2} m_{x,w} n_{y·w₀⁺, w·w₀⁺} = δ_{x,y}` entrywise,
/// together with `M_x = Σ_w (−1)^{(ℓ(w)−ℓ(x))/2} n_{x·w₀⁺, w·w₀⁺} underline M_w`.
/// With the exponent `(ℓ(x)+ℓ(w))/2` instead, the diagonal of any
/// odd-length class would come out as `−1`.
pub fn inversion_check(system: &Arc<CoxeterSystem>) -> Result<InversionReport, ClassifyError> {
    let w0p = system.w0_plus()?;
    let mut pairs = Vec::new();
    for theta in system.diagram_automorphisms().into_iter().filter(|t| t.is_involution()) {
        for k in twisted_classes(system, &theta, true, None)? {
            if !k.verdict()?.is_qp {
                continue;
            }
            let image = |p: u32| system.ext_multiply(&k.ext_element(p).expect("class point"), &w0p);
            let partner = ScaledWSet::conjugacy_set(system, &image(0)?, None)?;
            let index: HashMap<u32, u32> = (0..partner.len() as u32)
                .map(|q| (partner.element(q).and_then(|e| e.id()).expect("finite"), q))
                .collect();
            let mut phi = Vec::with_capacity(k.len());
            for p in 0..k.len() as u32 {
                let e = image(p)?;
                match index.get(&e.x.id().expect("finite")) {
                    Some(&q) => phi.push(q),
                    None => {
                        return Ok(InversionReport {
                            passed: false,
                            pairs,
                            failure: Some(format!("{}·w₀⁺ lies outside the partner class", k.point_name(p))),
                        })
                    }
                }
            }
            pairs.push(InversionPair { class: k.point_name(0), partner: partner.point_name(phi[0]), size: k.len() });
            let failure = match check_pair(&k, &partner, &phi) {
                Ok(f) => f,
                Err(e) => Some(e.to_string()),
            };
            if failure.is_some() {
                return Ok(InversionReport { passed: false, pairs, failure });
            }
        }
    }
    Ok(InversionReport { passed: true, pairs, failure: None })
}

fn check_pair(k: &ScaledWSet, partner: &ScaledWSet, phi: &[u32]) -> Result<Option<String>, BarError> {
    if !partner.verdict()?.is_qp {
        return Ok(Some(format!("partner of {} is not quasiparabolic", k.point_name(0))));
    }
    let m = tables(k, ModuleKind::M)?;
    let n = tables(partner, ModuleKind::N)?;
    let len = |p: u32| k.height2(p);
    let size = k.len() as u32;
    for x in 0..size {
        for y in 0..size {
            let mut sum = LaurentPoly::zero();
            for w in 0..size {
                let a = m.p(x, w);
                if a.is_zero() {
                    continue;
                }
                let b = n.p(phi[y as usize], phi[w as usize]);
                sum += &(a * b).scale(sign((len(w) - len(x)) / 2));
            }
            let want = if x == y { LaurentPoly::one() } else { LaurentPoly::zero() };
            if sum != want {
                return Ok(Some(format!(
                    "inversion sum at ({}, {}) is {sum}",
                    k.point_name(x),
                    k.point_name(y)
                )));
            }
        }
        let mut expansion = ModuleVector::zero();
        for w in 0..size {
            let c = n.p(phi[x as usize], phi[w as usize]).scale(sign((len(w) - len(x)) / 2));
            expansion.add_assign_scaled(&m.vector(w), &c);
        }
        if expansion != ModuleVector::basis(x) {
            return Ok(Some(format!("basis expansion of M_{} fails", k.point_name(x))));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a2_and_b2() {
        for t in ["A1", "A2", "B2"] {
            let w = CoxeterSystem::from_type(t).unwrap();
            let r = inversion_check(&w).unwrap();
            assert!(r.passed, "{t}: {:?}", r.failure);
            assert!(!r.pairs.is_empty());
        }
    }
}
