//! The H-modules `M` and `N` on a quasiparabolic set, their bar operators,
//! canonical bases, primed bases, the maps `Φ` and the inversion formula.

mod bar;
mod canon;
mod inversion;
mod primed;

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coxeter::CoxeterError;
use crate::hecke::HeckeElt;
use crate::laurent::LaurentPoly;
use crate::qpsets::{QpError, ScaledWSet};
use crate::triangular::SolveError;

pub use bar::{bar_standard, verify_bar_operator, BarOperator, BarRoute, BarVerdict};
pub use canon::{CanonicalTable, CheckResult};
pub use inversion::{inversion_check, InversionReport};
pub use primed::{check_primed, phi_maps, primed_basis, verify_dual, PhiMaps};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ModuleKind {
    M,
    N,
}

impl fmt::Display for ModuleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ModuleKind::M => "M",
            ModuleKind::N => "N",
        })
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BarError {
    #[error(transparent)]
    Qp(#[from] QpError),
    #[error(transparent)]
    Coxeter(#[from] CoxeterError),
    #[error("s{} image of point {point} lies outside the truncation", .s + 1)]
    Absent { point: u32, s: usize },
    #[error("no bar image is available for point {0}")]
    NoColumn(u32),
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error("{0}")]
    NotApplicable(String),
}

/// `Σ c_x M_x` (or `N_x`), with no zero coefficients stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ModuleVector {
    coords: BTreeMap<u32, LaurentPoly>,
}

impl ModuleVector {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(x: u32) -> Self {
        Self::monomial(x, LaurentPoly::one())
    }

    pub fn monomial(x: u32, c: LaurentPoly) -> Self {
        let mut v = Self::zero();
        v.add_term(x, &c);
        v
    }

    pub fn from_terms<I: IntoIterator<Item = (u32, LaurentPoly)>>(it: I) -> Self {
        let mut v = Self::zero();
        for (x, c) in it {
            v.add_term(x, &c);
        }
        v
    }

    pub fn add_term(&mut self, x: u32, c: &LaurentPoly) {
        if c.is_zero() {
            return;
        }
        match self.coords.entry(x) {
            Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn coeff(&self, x: u32) -> LaurentPoly {
        self.coords.get(&x).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &LaurentPoly)> {
        self.coords.iter().map(|(x, p)| (*x, p))
    }

    pub fn support(&self) -> impl Iterator<Item = u32> + '_ {
        self.coords.keys().copied()
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn add(&self, other: &ModuleVector) -> ModuleVector {
        let mut out = self.clone();
        out.add_assign_scaled(other, &LaurentPoly::one());
        out
    }

    pub fn sub(&self, other: &ModuleVector) -> ModuleVector {
        let mut out = self.clone();
        out.add_assign_scaled(other, &LaurentPoly::constant(-1));
        out
    }

    /// `self += c · other`.
    pub fn add_assign_scaled(&mut self, other: &ModuleVector, c: &LaurentPoly) {
        for (x, p) in &other.coords {
            self.add_term(*x, &(p * c));
        }
    }

    pub fn scale(&self, c: &LaurentPoly) -> ModuleVector {
        ModuleVector::from_terms(self.coords.iter().map(|(x, p)| (*x, p * c)))
    }

    pub fn bar_coefficients(&self) -> ModuleVector {
        ModuleVector::from_terms(self.coords.iter().map(|(x, p)| (*x, p.bar())))
    }
}

/// `H_s · V`.
pub fn act_gen(set: &ScaledWSet, kind: ModuleKind, s: usize, v: &ModuleVector) -> Result<ModuleVector, BarError> {
    let vm = LaurentPoly::v_minus_vinv();
    let fixed = match kind {
        ModuleKind::M => LaurentPoly::v(),
        ModuleKind::N => -LaurentPoly::v_inv(),
    };
    let mut out = ModuleVector::zero();
    for (x, p) in v.terms() {
        let sx = set.act(s, x).ok_or(BarError::Absent { point: x, s })?;
        let (hx, hsx) = (set.height2(x), set.height2(sx));
        if hsx > hx {
            out.add_term(sx, p);
        } else if hsx < hx {
            out.add_term(sx, p);
            out.add_term(x, &(p * &vm));
        } else {
            out.add_term(x, &(p * &fixed));
        }
    }
    Ok(out)
}

/// `H_s⁻¹ · V = (H_s + v⁻¹ − v) · V`, which is also `bar(H_s) · V`.
pub fn act_gen_inv(set: &ScaledWSet, kind: ModuleKind, s: usize, v: &ModuleVector) -> Result<ModuleVector, BarError> {
    let mut out = act_gen(set, kind, s, v)?;
    out.add_assign_scaled(v, &(-LaurentPoly::v_minus_vinv()));
    Ok(out)
}

/// `underline H_s · V = (H_s + v⁻¹) · V`.
pub fn act_kl_gen(set: &ScaledWSet, kind: ModuleKind, s: usize, v: &ModuleVector) -> Result<ModuleVector, BarError> {
    let mut out = act_gen(set, kind, s, v)?;
    out.add_assign_scaled(v, &LaurentPoly::v_inv());
    Ok(out)
}

/// `H_{s1} ⋯ H_{sk} · V` for the letters `s1⋯sk`.
pub fn act_word(set: &ScaledWSet, kind: ModuleKind, word: &[u8], v: &ModuleVector) -> Result<ModuleVector, BarError> {
    word.iter().rev().try_fold(v.clone(), |cur, &s| act_gen(set, kind, s as usize, &cur))
}

/// `A · V` for a Hecke algebra element of the acting system.
pub fn act_hecke(set: &ScaledWSet, kind: ModuleKind, a: &HeckeElt, v: &ModuleVector) -> Result<ModuleVector, BarError> {
    let mut out = ModuleVector::zero();
    for (w, p) in a.terms() {
        let word = set.system().word(w)?;
        out.add_assign_scaled(&act_word(set, kind, &word, v)?, p);
    }
    Ok(out)
}

/// `ε(x) = (−1)^{ht(x) − h_min(x)}` for every point.
pub fn epsilon(set: &ScaledWSet) -> Vec<i64> {
    set.hmin2()
        .iter()
        .enumerate()
        .map(|(x, &m)| if ((set.height2(x as u32) - m) / 2) % 2 == 0 { 1 } else { -1 })
        .collect()
}
