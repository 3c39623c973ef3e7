//! The Iwahori–Hecke algebra in the `H_w` basis with
//! `H_s H_w = H_{sw}` when `sw > w` and `H_{sw} + (v − v⁻¹) H_w` otherwise.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use serde::Serialize;

use crate::coxeter::{CoxeterError, CoxeterSystem, Element};
use crate::laurent::LaurentPoly;
use crate::triangular::{self, Column, SolveError};

/// `Σ c_w H_w`, with no zero coefficients stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HeckeElt {
    terms: BTreeMap<Element, LaurentPoly>,
}

impl HeckeElt {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn unit(sys: &CoxeterSystem) -> Self {
        Self::basis(sys.identity())
    }

    pub fn basis(w: Element) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(w, LaurentPoly::one());
        HeckeElt { terms }
    }

    /// `H_s`.
    pub fn generator(sys: &CoxeterSystem, s: usize) -> Result<Self, CoxeterError> {
        Ok(Self::basis(sys.generator(s)?))
    }

    /// `H_s⁻¹ = H_s + v⁻¹ − v`.
    pub fn generator_inverse(sys: &CoxeterSystem, s: usize) -> Result<Self, CoxeterError> {
        let mut h = Self::generator(sys, s)?;
        h.add_term(sys.identity(), &(-LaurentPoly::v_minus_vinv()));
        Ok(h)
    }

    /// `Σ c H_w` over `(w, c)` pairs.
    pub fn from_terms<I: IntoIterator<Item = (Element, LaurentPoly)>>(it: I) -> Self {
        let mut h = Self::zero();
        for (w, c) in it {
            h.add_term(w, &c);
        }
        h
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Element, &LaurentPoly)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &Element) -> LaurentPoly {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn add_term(&mut self, w: Element, c: &LaurentPoly) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
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

    pub fn add(&self, other: &HeckeElt) -> HeckeElt {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &HeckeElt) -> HeckeElt {
        self.add(&other.scale(&LaurentPoly::constant(-1)))
    }

    pub fn scale(&self, c: &LaurentPoly) -> HeckeElt {
        HeckeElt::from_terms(self.terms.iter().map(|(w, p)| (w.clone(), p * c)))
    }

    /// Coordinates in the basis `T_w = v^{ℓ(w)} H_w`.
    pub fn to_t_basis(&self, sys: &CoxeterSystem) -> Result<Vec<(Element, LaurentPoly)>, CoxeterError> {
        self.terms
            .iter()
            .map(|(w, p)| Ok((w.clone(), p.shift(-(sys.length(w)? as i32)))))
            .collect()
    }

    pub fn from_t_basis(sys: &CoxeterSystem, coords: &[(Element, LaurentPoly)]) -> Result<HeckeElt, CoxeterError> {
        let mut h = HeckeElt::zero();
        for (w, p) in coords {
            h.add_term(w.clone(), &p.shift(sys.length(w)? as i32));
        }
        Ok(h)
    }
}

/// `H_s · a`.
pub fn left_mul_gen(sys: &CoxeterSystem, s: usize, a: &HeckeElt) -> Result<HeckeElt, CoxeterError> {
    let hs = sys.generator(s)?;
    let vm = LaurentPoly::v_minus_vinv();
    let mut out = HeckeElt::zero();
    for (w, p) in &a.terms {
        let sw = sys.multiply(&hs, w)?;
        let up = sys.length(&sw)? > sys.length(w)?;
        out.add_term(sw, p);
        if !up {
            out.add_term(w.clone(), &(p * &vm));
        }
    }
    Ok(out)
}

/// `H_w · a`, applying the letters of a reduced word of `w` right to left.
pub fn left_mul_basis(sys: &CoxeterSystem, w: &Element, a: &HeckeElt) -> Result<HeckeElt, CoxeterError> {
    let mut cur = a.clone();
    for &s in sys.word(w)?.iter().rev() {
        cur = left_mul_gen(sys, s as usize, &cur)?;
    }
    Ok(cur)
}

pub fn h_mul(sys: &CoxeterSystem, a: &HeckeElt, b: &HeckeElt) -> Result<HeckeElt, CoxeterError> {
    let mut out = HeckeElt::zero();
    for (w, p) in &a.terms {
        out = out.add(&left_mul_basis(sys, w, b)?.scale(p));
    }
    Ok(out)
}

/// `bar(H_w) = H_{s1}⁻¹ ⋯ H_{sk}⁻¹` for a reduced word `s1⋯sk`.
pub fn bar_basis(sys: &CoxeterSystem, w: &Element) -> Result<HeckeElt, CoxeterError> {
    let mut cur = HeckeElt::unit(sys);
    let shift = -LaurentPoly::v_minus_vinv();
    for &s in sys.word(w)?.iter().rev() {
        cur = left_mul_gen(sys, s as usize, &cur)?.add(&cur.scale(&shift));
    }
    Ok(cur)
}

pub fn h_bar(sys: &CoxeterSystem, a: &HeckeElt) -> Result<HeckeElt, CoxeterError> {
    let mut out = HeckeElt::zero();
    for (w, p) in &a.terms {
        out = out.add(&bar_basis(sys, w)?.scale(&p.bar()));
    }
    Ok(out)
}

/// `H_w⁻¹ = bar(H_{w⁻¹})`.
pub fn basis_inverse(sys: &CoxeterSystem, w: &Element) -> Result<HeckeElt, CoxeterError> {
    bar_basis(sys, &sys.inverse(w)?)
}

/// The Kazhdan–Lusztig basis `underline H_y = Σ_x h_{x,y} H_x` of a finite
/// group; `columns[y]` lists `(x, h_{x,y})`, sorted by id.
#[derive(Clone, Debug)]
pub struct KlTable {
    pub columns: Vec<Column>,
}

#[derive(Serialize)]
struct KlExport<'a> {
    schema_version: u32,
    system: &'a str,
    order: usize,
    /// `[x, y, h_{x,y}]` by element id.
    entries: Vec<(u32, u32, &'a LaurentPoly)>,
    /// Reduced word of each id.
    words: Vec<String>,
}

impl KlTable {
    pub fn h(&self, x: u32, y: u32) -> LaurentPoly {
        self.columns[y as usize]
            .binary_search_by_key(&x, |(i, _)| *i)
            .map(|k| self.columns[y as usize][k].1.clone())
            .unwrap_or_default()
    }

    pub fn element(&self, sys: &CoxeterSystem, y: u32) -> HeckeElt {
        HeckeElt::from_terms(self.columns[y as usize].iter().map(|(x, p)| (sys.element(*x), p.clone())))
    }

    pub fn to_json(&self, sys: &CoxeterSystem) -> serde_json::Value {
        let g = sys.finite();
        let name = |i: u32| crate::coxeter::fmt_word(g.word(i));
        let mut entries = Vec::new();
        for (y, col) in self.columns.iter().enumerate() {
            for (x, p) in col {
                entries.push((*x, y as u32, p));
            }
        }
        let export = KlExport {
            schema_version: crate::SCHEMA_VERSION,
            system: sys.name(),
            order: g.order(),
            entries,
            words: (0..g.order() as u32).map(name).collect(),
        };
        serde_json::to_value(export).expect("serializable")
    }
}

#[derive(Debug, thiserror::Error)]
pub enum HeckeError {
    #[error(transparent)]
    Coxeter(#[from] CoxeterError),
    #[error(transparent)]
    Solve(#[from] SolveError),
}

/// Columns of the bar matrix of `H`: `bar(H_z) = Σ_x B[x][z] H_x`, by id.
pub fn bar_matrix(sys: &CoxeterSystem) -> Result<Vec<Column>, CoxeterError> {
    let g = sys.group().ok_or(CoxeterError::NotFinite)?;
    let n = g.order();
    let shift = -LaurentPoly::v_minus_vinv();
    let vm = LaurentPoly::v_minus_vinv();
    let mut cols: Vec<Column> = Vec::with_capacity(n);
    cols.push(vec![(0, LaurentPoly::one())]);
    for z in 1..n as u32 {
        // bar(H_z) = (H_s + v⁻¹ − v) · bar(H_{sz}) with s the first letter.
        let s = g.word(z)[0] as usize;
        let rest = g.lmul(s, z);
        let mut dense: BTreeMap<u32, LaurentPoly> = BTreeMap::new();
        for (w, p) in &cols[rest as usize] {
            let sw = g.lmul(s, *w);
            *dense.entry(sw).or_default() += p;
            if g.length(sw) < g.length(*w) {
                *dense.entry(*w).or_default() += &(p * &vm);
            }
            *dense.entry(*w).or_default() += &(p * &shift);
        }
        cols.push(dense.into_iter().filter(|(_, p)| !p.is_zero()).collect());
    }
    Ok(cols)
}

pub fn kl_basis(sys: &CoxeterSystem) -> Result<KlTable, HeckeError> {
    let cols = bar_matrix(sys)?;
    let order: Vec<u32> = (0..cols.len() as u32).collect();
    Ok(KlTable { columns: triangular::solve(&cols, &order)? })
}

/// Quadratic and braid relations, `H_s·H_s⁻¹ = 1`, the bar involution and its
/// compatibility with left multiplication by generators, and bar invariance
/// of the canonical basis, all on the standard basis of a finite `W`.
pub fn verify_relations(sys: &CoxeterSystem) -> Result<Vec<crate::barcanon::CheckResult>, HeckeError> {
    use crate::barcanon::CheckResult;
    let g = sys.group().ok_or(CoxeterError::NotFinite)?;
    let rank = sys.rank();
    let unit = HeckeElt::unit(sys);
    let gens: Vec<HeckeElt> = (0..rank).map(|s| HeckeElt::generator(sys, s)).collect::<Result<_, _>>()?;
    let mut quad = Ok(());
    for s in 0..rank {
        let sq = h_mul(sys, &gens[s], &gens[s])?;
        if sq != unit.add(&gens[s].scale(&LaurentPoly::v_minus_vinv())) {
            quad = Err(format!("H_s{}² ≠ 1 + (v − v⁻¹)H_s{}", s + 1, s + 1));
            break;
        }
        if h_mul(sys, &gens[s], &HeckeElt::generator_inverse(sys, s)?)? != unit {
            quad = Err(format!("H_s{} has the wrong inverse", s + 1));
            break;
        }
    }
    let mut braid = Ok(());
    'outer: for s in 0..rank {
        for t in s + 1..rank {
            let m = sys.matrix().get(s, t);
            let (mut a, mut b) = (unit.clone(), unit.clone());
            for i in 0..m {
                let (ga, gb) = if i % 2 == 0 { (s, t) } else { (t, s) };
                a = left_mul_gen(sys, ga, &a)?;
                b = left_mul_gen(sys, gb, &b)?;
            }
            if a != b {
                braid = Err(format!("braid relation fails for s{}, s{}", s + 1, t + 1));
                break 'outer;
            }
        }
    }
    let mut bar = Ok(());
    'bar: for w in 0..g.order() as u32 {
        let hw = HeckeElt::basis(sys.element(w));
        let bw = h_bar(sys, &hw)?;
        if h_bar(sys, &bw)? != hw {
            bar = Err(format!("bar is not an involution at {}", sys.fmt_element(&sys.element(w))));
            break;
        }
        for s in 0..rank {
            let lhs = h_bar(sys, &left_mul_gen(sys, s, &hw)?)?;
            let rhs = h_mul(sys, &HeckeElt::generator_inverse(sys, s)?, &bw)?;
            if lhs != rhs {
                bar = Err(format!("bar(H_s{} H_w) ≠ bar(H_s{}) bar(H_w) at {}", s + 1, s + 1, sys.fmt_element(&sys.element(w))));
                break 'bar;
            }
        }
    }
    let table = kl_basis(sys)?;
    let canonical = (0..g.order() as u32).try_for_each(|y| {
        let c = table.element(sys, y);
        if h_bar(sys, &c).map_err(|e| e.to_string())? != c {
            return Err(format!("underline H_{} is not bar-invariant", sys.fmt_element(&sys.element(y))));
        }
        Ok(())
    });
    Ok(vec![
        CheckResult::new("hecke-quadratic", quad),
        CheckResult::new("hecke-braid", braid),
        CheckResult::new("hecke-bar", bar),
        CheckResult::new("hecke-canonical-bar-invariant", canonical),
    ])
}
