//! Coxeter systems, their elements, diagram automorphisms and the extended
//! group `W⁺ = W ⋊ Aut(W,S)`.
//!
//! Finite systems are enumerated once into dense tables ([`FiniteGroup`]);
//! elements are then ids into those tables. Universal systems (every
//! off-diagonal order infinite) use unique reduced words instead.

mod finite;
mod parse;
pub mod universal;

use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use finite::{is_positive_definite, FiniteGroup, MAX_ORDER};

/// Stored in a [`CoxeterMatrix`] for an infinite order.
pub const INFINITE: u32 = u32::MAX;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CoxeterError {
    #[error("malformed Coxeter matrix: {0}")]
    BadMatrix(String),
    #[error("unrecognized type string: {0}")]
    BadType(String),
    #[error("bilinear form is not positive definite; the group is infinite")]
    NotFinite,
    #[error("elements belong to different Coxeter systems")]
    SystemMismatch,
    #[error("parabolic subgroup is infinite")]
    InfiniteParabolic,
    #[error("root table failed validation: {0}")]
    RootValidation(String),
    #[error("generator index {0} out of range")]
    BadGenerator(usize),
    #[error("unsupported: {0}")]
    Unsupported(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoxeterMatrix {
    rows: Vec<Vec<u32>>,
}

impl CoxeterMatrix {
    pub fn new(rows: Vec<Vec<u32>>) -> Result<Self, CoxeterError> {
        let n = rows.len();
        if n == 0 {
            return Err(CoxeterError::BadMatrix("empty matrix".into()));
        }
        if n > 32 {
            return Err(CoxeterError::BadMatrix("rank above 32 is not supported".into()));
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(CoxeterError::BadMatrix(format!("row {} has length {}", i + 1, row.len())));
            }
            if row[i] != 1 {
                return Err(CoxeterError::BadMatrix(format!("diagonal entry {} is not 1", i + 1)));
            }
            for (j, &m) in row.iter().enumerate() {
                if i != j && m < 2 {
                    return Err(CoxeterError::BadMatrix(format!(
                        "entry ({},{}) = {m} must be at least 2",
                        i + 1,
                        j + 1
                    )));
                }
                if rows[j][i] != m {
                    return Err(CoxeterError::BadMatrix("matrix is not symmetric".into()));
                }
            }
        }
        Ok(CoxeterMatrix { rows })
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.rows[i][j]
    }

    /// Rows with infinite entries as `None`.
    pub fn rows_display(&self) -> Vec<Vec<Option<u32>>> {
        self.rows
            .iter()
            .map(|r| r.iter().map(|&m| (m != INFINITE).then_some(m)).collect())
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    Finite,
    Universal,
}

/// A subset of the generators, as a bitmask.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GenSet(pub u32);

impl GenSet {
    pub fn empty() -> Self {
        GenSet(0)
    }
    pub fn all(rank: usize) -> Self {
        GenSet(if rank >= 32 { u32::MAX } else { (1u32 << rank) - 1 })
    }
    pub fn contains(self, s: usize) -> bool {
        self.0 >> s & 1 == 1
    }
    pub fn insert(&mut self, s: usize) {
        self.0 |= 1 << s;
    }
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }
    pub fn is_subset(self, other: GenSet) -> bool {
        self.0 & !other.0 == 0
    }
    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..32).filter(move |&s| self.contains(s))
    }
}

impl FromIterator<usize> for GenSet {
    fn from_iter<I: IntoIterator<Item = usize>>(it: I) -> Self {
        GenSet(it.into_iter().fold(0, |m, s| m | (1 << s)))
    }
}

impl fmt::Display for GenSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = self.iter().map(|s| format!("s{}", s + 1)).collect();
        write!(f, "{{{}}}", names.join(","))
    }
}

impl Serialize for GenSet {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        let v: Vec<usize> = self.iter().map(|s| s + 1).collect();
        v.serialize(ser)
    }
}

impl<'de> Deserialize<'de> for GenSet {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let v = Vec::<usize>::deserialize(de)?;
        if v.iter().any(|&s| s == 0 || s > 32) {
            return Err(serde::de::Error::custom("generator index out of range"));
        }
        Ok(GenSet::from_iter(v.into_iter().map(|s| s - 1)))
    }
}

/// Render a word as `s1s2s1`, or `e` for the empty word.
pub fn fmt_word(word: &[u8]) -> String {
    if word.is_empty() {
        return "e".into();
    }
    word.iter().map(|s| format!("s{}", s + 1)).collect()
}

/// Parse `"s1 s3"`, `"s1s3"`, `"1 3"`, `"e"` or `""` into 0-based letters.
pub fn parse_word(text: &str, rank: usize) -> Result<Vec<u8>, CoxeterError> {
    let t = text.trim();
    if t.is_empty() || t == "e" || t == "1" && rank == 0 {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for tok in t.split(|c: char| c == 's' || c == 'S' || c.is_whitespace() || c == ',' || c == '*') {
        if tok.is_empty() {
            continue;
        }
        let i: usize = tok
            .parse()
            .map_err(|_| CoxeterError::BadType(format!("bad generator {tok:?} in word {text:?}")))?;
        if i == 0 || i > rank {
            return Err(CoxeterError::BadGenerator(i));
        }
        out.push((i - 1) as u8);
    }
    Ok(out)
}

/// A permutation of the generators preserving the Coxeter matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DiagramAut(Vec<u8>);

impl DiagramAut {
    pub fn identity(rank: usize) -> Self {
        DiagramAut((0..rank as u8).collect())
    }
    /// Images of `s1, s2, ...` as 0-based indices; not checked against a matrix.
    pub fn from_images(images: Vec<u8>) -> Self {
        DiagramAut(images)
    }
    pub fn images(&self) -> &[u8] {
        &self.0
    }
    pub fn apply(&self, s: usize) -> usize {
        self.0[s] as usize
    }
    /// `self ∘ other`.
    pub fn compose(&self, other: &DiagramAut) -> DiagramAut {
        DiagramAut(other.0.iter().map(|&s| self.0[s as usize]).collect())
    }
    pub fn inverse(&self) -> DiagramAut {
        let mut inv = vec![0u8; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j as usize] = i as u8;
        }
        DiagramAut(inv)
    }
    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i == j as usize)
    }
    pub fn is_involution(&self) -> bool {
        self.compose(self).is_identity()
    }
    pub fn order(&self) -> usize {
        let mut p = self.clone();
        let mut k = 1;
        while !p.is_identity() {
            p = p.compose(self);
            k += 1;
        }
        k
    }
    pub fn apply_set(&self, j: GenSet) -> GenSet {
        GenSet::from_iter(j.iter().map(|s| self.apply(s)))
    }
    pub fn apply_word(&self, word: &[u8]) -> Vec<u8> {
        word.iter().map(|&s| self.0[s as usize]).collect()
    }
}

impl fmt::Display for DiagramAut {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return write!(f, "id");
        }
        let imgs: Vec<String> = self.0.iter().map(|s| (s + 1).to_string()).collect();
        write!(f, "[{}]", imgs.join(" "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum Repr {
    Id(u32),
    Word(Vec<u8>),
}

/// An element of a particular Coxeter system.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Element {
    sys: u64,
    repr: Repr,
}

impl Element {
    /// Dense id within a finite group.
    pub fn id(&self) -> Option<u32> {
        match self.repr {
            Repr::Id(i) => Some(i),
            Repr::Word(_) => None,
        }
    }
}

/// An element `(x, θ)` of `W⁺`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExtElement {
    pub x: Element,
    pub theta: DiagramAut,
}

static NEXT_SYSTEM: AtomicU64 = AtomicU64::new(1);

pub struct CoxeterSystem {
    uid: u64,
    name: String,
    matrix: CoxeterMatrix,
    family: Family,
    group: Option<FiniteGroup>,
}

impl fmt::Debug for CoxeterSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CoxeterSystem")
            .field("name", &self.name)
            .field("family", &self.family)
            .field("order", &self.order())
            .finish()
    }
}

#[derive(Debug, Serialize)]
pub struct SystemSummary {
    pub name: String,
    pub rank: usize,
    pub matrix: Vec<Vec<Option<u32>>>,
    pub family: Family,
    pub order: Option<usize>,
    pub reflections: Option<usize>,
}

impl CoxeterSystem {
    pub fn build(matrix: CoxeterMatrix, family: Family) -> Result<Arc<Self>, CoxeterError> {
        Self::build_named(String::from("custom"), matrix, family)
    }

    fn build_named(name: String, matrix: CoxeterMatrix, family: Family) -> Result<Arc<Self>, CoxeterError> {
        let rank = matrix.rank();
        let group = match family {
            Family::Universal => {
                let ok = (0..rank).all(|i| (0..rank).all(|j| i == j || matrix.get(i, j) == INFINITE));
                if !ok {
                    return Err(CoxeterError::BadMatrix(
                        "universal family needs every off-diagonal entry infinite".into(),
                    ));
                }
                None
            }
            Family::Finite => Some(FiniteGroup::build(&matrix)?),
        };
        Ok(Arc::new(CoxeterSystem {
            uid: NEXT_SYSTEM.fetch_add(1, Ordering::Relaxed),
            name,
            matrix,
            family,
            group,
        }))
    }

    pub fn from_type(spec: &str) -> Result<Arc<Self>, CoxeterError> {
        let p = parse::parse_type(spec)?;
        Self::build_named(p.name, p.matrix, p.family)
    }

    pub fn name(&self) -> &str {
        &self.name
    }
    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }
    pub fn matrix(&self) -> &CoxeterMatrix {
        &self.matrix
    }
    pub fn family(&self) -> Family {
        self.family
    }
    pub fn is_finite(&self) -> bool {
        self.group.is_some()
    }
    pub fn group(&self) -> Option<&FiniteGroup> {
        self.group.as_ref()
    }
    /// The finite tables; panics for universal systems.
    pub fn finite(&self) -> &FiniteGroup {
        self.group.as_ref().expect("system is not finite")
    }
    pub fn order(&self) -> Option<usize> {
        self.group.as_ref().map(|g| g.order())
    }

    pub fn summary(&self) -> SystemSummary {
        SystemSummary {
            name: self.name.clone(),
            rank: self.rank(),
            matrix: self.matrix.rows_display(),
            family: self.family,
            order: self.order(),
            reflections: self.group.as_ref().map(|g| g.reflections().len()),
        }
    }

    fn check(&self, e: &Element) -> Result<(), CoxeterError> {
        if e.sys == self.uid {
            Ok(())
        } else {
            Err(CoxeterError::SystemMismatch)
        }
    }

    fn wrap_word(&self, word: Vec<u8>) -> Element {
        match &self.group {
            Some(g) => Element { sys: self.uid, repr: Repr::Id(g.from_word(&word)) },
            None => Element { sys: self.uid, repr: Repr::Word(universal::reduce(&word)) },
        }
    }

    pub fn identity(&self) -> Element {
        self.wrap_word(Vec::new())
    }

    pub fn generator(&self, s: usize) -> Result<Element, CoxeterError> {
        if s >= self.rank() {
            return Err(CoxeterError::BadGenerator(s + 1));
        }
        Ok(self.wrap_word(vec![s as u8]))
    }

    /// The product of the letters of `word` (not necessarily reduced).
    pub fn from_word(&self, word: &[u8]) -> Result<Element, CoxeterError> {
        if let Some(&s) = word.iter().find(|&&s| s as usize >= self.rank()) {
            return Err(CoxeterError::BadGenerator(s as usize + 1));
        }
        Ok(self.wrap_word(word.to_vec()))
    }

    /// Element with a given dense id (finite systems).
    pub fn element(&self, id: u32) -> Element {
        debug_assert!(self.group.as_ref().is_some_and(|g| (id as usize) < g.order()));
        Element { sys: self.uid, repr: Repr::Id(id) }
    }

    pub fn elements(&self) -> impl Iterator<Item = Element> + '_ {
        (0..self.order().unwrap_or(0) as u32).map(|i| self.element(i))
    }

    /// A reduced word; for finite systems the one recorded during enumeration.
    pub fn word(&self, e: &Element) -> Result<Vec<u8>, CoxeterError> {
        self.check(e)?;
        Ok(match &e.repr {
            Repr::Id(i) => self.finite().word(*i).to_vec(),
            Repr::Word(w) => w.clone(),
        })
    }

    pub fn multiply(&self, a: &Element, b: &Element) -> Result<Element, CoxeterError> {
        self.check(a)?;
        self.check(b)?;
        Ok(match (&a.repr, &b.repr) {
            (Repr::Id(x), Repr::Id(y)) => self.element(self.finite().multiply(*x, *y)),
            (Repr::Word(x), Repr::Word(y)) => {
                Element { sys: self.uid, repr: Repr::Word(universal::multiply(x, y)) }
            }
            _ => return Err(CoxeterError::SystemMismatch),
        })
    }

    pub fn inverse(&self, a: &Element) -> Result<Element, CoxeterError> {
        self.check(a)?;
        Ok(match &a.repr {
            Repr::Id(x) => self.element(self.finite().inverse(*x)),
            Repr::Word(w) => Element { sys: self.uid, repr: Repr::Word(universal::inverse(w)) },
        })
    }

    pub fn length(&self, a: &Element) -> Result<usize, CoxeterError> {
        self.check(a)?;
        Ok(match &a.repr {
            Repr::Id(x) => self.finite().length(*x) as usize,
            Repr::Word(w) => w.len(),
        })
    }

    pub fn left_descents(&self, a: &Element) -> Result<GenSet, CoxeterError> {
        let l = self.length(a)?;
        let mut d = GenSet::empty();
        for s in 0..self.rank() {
            let sa = self.multiply(&self.generator(s)?, a)?;
            if self.length(&sa)? < l {
                d.insert(s);
            }
        }
        Ok(d)
    }

    pub fn right_descents(&self, a: &Element) -> Result<GenSet, CoxeterError> {
        self.left_descents(&self.inverse(a)?)
    }

    /// All reflections (finite systems), ordered by id.
    pub fn reflections(&self) -> Result<Vec<Element>, CoxeterError> {
        match &self.group {
            Some(g) => Ok(g.reflections().iter().map(|&r| self.element(r)).collect()),
            None => Err(CoxeterError::NotFinite),
        }
    }

    /// Reflections of length at most `max_len`. Works for both families.
    pub fn reflections_up_to(&self, max_len: usize) -> Vec<Element> {
        match &self.group {
            Some(g) => g
                .reflections()
                .iter()
                .filter(|&&r| g.length(r) as usize <= max_len)
                .map(|&r| self.element(r))
                .collect(),
            None => universal::reflections_up_to(self.rank(), max_len)
                .into_iter()
                .map(|w| Element { sys: self.uid, repr: Repr::Word(w) })
                .collect(),
        }
    }

    pub fn bruhat_leq(&self, x: &Element, y: &Element) -> Result<bool, CoxeterError> {
        self.check(x)?;
        self.check(y)?;
        Ok(match (&x.repr, &y.repr) {
            (Repr::Id(a), Repr::Id(b)) => self.finite().bruhat_leq(*a, *b),
            (Repr::Word(a), Repr::Word(b)) => universal::bruhat_leq(a, b),
            _ => return Err(CoxeterError::SystemMismatch),
        })
    }

    /// Longest element of the parabolic subgroup `W_J`.
    pub fn longest_element(&self, j: GenSet) -> Result<Element, CoxeterError> {
        let gens: Vec<usize> = j.iter().filter(|&s| s < self.rank()).collect();
        for (a, &s) in gens.iter().enumerate() {
            for &t in &gens[a + 1..] {
                if self.matrix.get(s, t) == INFINITE {
                    return Err(CoxeterError::InfiniteParabolic);
                }
            }
        }
        if self.family == Family::Universal {
            // Only products of at most one generator are finite here.
            return match gens.as_slice() {
                [] => Ok(self.identity()),
                [s] => self.generator(*s),
                _ => Err(CoxeterError::InfiniteParabolic),
            };
        }
        let g = self.finite();
        let mut w = 0u32;
        loop {
            let next = gens.iter().map(|&s| g.lmul(s, w)).find(|&sw| g.length(sw) > g.length(w));
            match next {
                Some(sw) => w = sw,
                None => return Ok(self.element(w)),
            }
        }
    }

    /// All generator permutations preserving the matrix, identity first,
    /// then in lexicographic order of image lists.
    pub fn diagram_automorphisms(&self) -> Vec<DiagramAut> {
        let n = self.rank();
        let mut out = Vec::new();
        let mut perm: Vec<u8> = (0..n as u8).collect();
        loop {
            let ok = (0..n).all(|i| {
                (0..n).all(|j| self.matrix.get(perm[i] as usize, perm[j] as usize) == self.matrix.get(i, j))
            });
            if ok {
                out.push(DiagramAut(perm.clone()));
            }
            if !next_permutation(&mut perm) {
                break;
            }
        }
        out
    }

    pub fn apply_aut(&self, theta: &DiagramAut, e: &Element) -> Result<Element, CoxeterError> {
        let w = self.word(e)?;
        self.from_word(&theta.apply_word(&w))
    }

    /// Table of `θ` on all element ids of a finite group.
    pub fn aut_table(&self, theta: &DiagramAut) -> Vec<u32> {
        let g = self.finite();
        let mut t = vec![0u32; g.order()];
        // Ids are in breadth-first order, so word[1..] of w has a smaller id.
        for w in 1..g.order() as u32 {
            let word = g.word(w);
            let rest = g.from_word(&word[1..]);
            t[w as usize] = g.lmul(theta.apply(word[0] as usize), t[rest as usize]);
        }
        t
    }

    /// Conjugation by the longest element, as a diagram automorphism.
    pub fn w0_automorphism(&self) -> Result<DiagramAut, CoxeterError> {
        let g = self.group.as_ref().ok_or(CoxeterError::NotFinite)?;
        let w0 = g.longest();
        let mut img = Vec::with_capacity(self.rank());
        for s in 0..self.rank() {
            let c = g.multiply(g.rmul(w0, s), w0);
            let t = (0..self.rank())
                .find(|&t| g.lmul(t, 0) == c)
                .ok_or_else(|| CoxeterError::RootValidation("w0 s w0 is not simple".into()))?;
            img.push(t as u8);
        }
        Ok(DiagramAut(img))
    }

    /// `w₀⁺ = (w₀, θ₀)`.
    pub fn w0_plus(&self) -> Result<ExtElement, CoxeterError> {
        let theta = self.w0_automorphism()?;
        Ok(ExtElement { x: self.element(self.finite().longest()), theta })
    }

    pub fn ext(&self, x: Element, theta: DiagramAut) -> ExtElement {
        ExtElement { x, theta }
    }

    /// `(x,α)(y,β) = (x·α(y), αβ)`.
    pub fn ext_multiply(&self, a: &ExtElement, b: &ExtElement) -> Result<ExtElement, CoxeterError> {
        let ay = self.apply_aut(&a.theta, &b.x)?;
        Ok(ExtElement { x: self.multiply(&a.x, &ay)?, theta: a.theta.compose(&b.theta) })
    }

    pub fn ext_inverse(&self, a: &ExtElement) -> Result<ExtElement, CoxeterError> {
        let ti = a.theta.inverse();
        let x = self.apply_aut(&ti, &self.inverse(&a.x)?)?;
        Ok(ExtElement { x, theta: ti })
    }

    /// `w·(x,θ)·w⁻¹ = (w·x·θ(w)⁻¹, θ)`.
    pub fn twisted_conjugate(&self, w: &Element, a: &ExtElement) -> Result<ExtElement, CoxeterError> {
        let tw = self.apply_aut(&a.theta, w)?;
        let x = self.multiply(&self.multiply(w, &a.x)?, &self.inverse(&tw)?)?;
        Ok(ExtElement { x, theta: a.theta.clone() })
    }

    pub fn is_twisted_involution(&self, a: &ExtElement) -> Result<bool, CoxeterError> {
        if !a.theta.is_involution() {
            return Ok(false);
        }
        Ok(self.apply_aut(&a.theta, &a.x)? == self.inverse(&a.x)?)
    }

    pub fn ext_identity(&self) -> ExtElement {
        ExtElement { x: self.identity(), theta: DiagramAut::identity(self.rank()) }
    }

    pub fn fmt_element(&self, e: &Element) -> String {
        self.word(e).map(|w| fmt_word(&w)).unwrap_or_else(|_| "?".into())
    }
}

fn next_permutation(p: &mut [u8]) -> bool {
    if p.len() < 2 {
        return false;
    }
    let mut i = p.len() - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = p.len() - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a2_basics() {
        let w = CoxeterSystem::from_type("A2").unwrap();
        assert_eq!(w.order(), Some(6));
        assert_eq!(w.reflections().unwrap().len(), 3);
        let s1 = w.generator(0).unwrap();
        let s2 = w.generator(1).unwrap();
        let s1s2 = w.multiply(&s1, &s2).unwrap();
        assert_eq!(w.multiply(&s1s2, &s2).unwrap(), s1);
        assert_eq!(w.inverse(&s1s2).unwrap(), w.multiply(&s2, &s1).unwrap());
        let w0 = w.longest_element(GenSet::all(2)).unwrap();
        assert_eq!(w.length(&w0).unwrap(), 3);
        assert_eq!(w.left_descents(&w0).unwrap(), GenSet::all(2));
        assert!(w.bruhat_leq(&s1, &s1s2).unwrap());
        assert!(!w.bruhat_leq(&s1, &s2).unwrap());
    }

    #[test]
    fn mismatch_is_detected() {
        let a = CoxeterSystem::from_type("A2").unwrap();
        let b = CoxeterSystem::from_type("A2").unwrap();
        let x = a.generator(0).unwrap();
        let y = b.generator(0).unwrap();
        assert_eq!(a.multiply(&x, &y), Err(CoxeterError::SystemMismatch));
    }

    #[test]
    fn automorphism_counts() {
        for (t, n) in [("A1", 1), ("A2", 2), ("A3", 2), ("D4", 6), ("F4", 2), ("B3", 1), ("I2(5)", 2), ("U3", 6)] {
            assert_eq!(CoxeterSystem::from_type(t).unwrap().diagram_automorphisms().len(), n, "{t}");
        }
    }

    #[test]
    fn longest_parabolic() {
        let w = CoxeterSystem::from_type("A3").unwrap();
        let j = GenSet::from_iter([0, 2]);
        let wj = w.longest_element(j).unwrap();
        assert_eq!(w.word(&wj).unwrap().len(), 2);
        assert_eq!(w.longest_element(GenSet::empty()).unwrap(), w.identity());
        let u = CoxeterSystem::from_type("U3").unwrap();
        assert_eq!(u.longest_element(GenSet::from_iter([0, 1])), Err(CoxeterError::InfiniteParabolic));
    }

    #[test]
    fn extended_group_laws() {
        let w = CoxeterSystem::from_type("A2").unwrap();
        let swap = w.diagram_automorphisms()[1].clone();
        let s1 = w.generator(0).unwrap();
        let a = w.ext(s1.clone(), swap.clone());
        let sq = w.ext_multiply(&a, &a).unwrap();
        assert_eq!(sq.x, w.from_word(&[0, 1]).unwrap());
        assert!(sq.theta.is_identity());
        assert!(!w.is_twisted_involution(&a).unwrap());
        let one = w.ext(w.identity(), swap.clone());
        assert!(w.is_twisted_involution(&one).unwrap());
        let inv = w.ext_inverse(&a).unwrap();
        assert_eq!(w.ext_multiply(&a, &inv).unwrap(), w.ext_identity());
        let c = w.twisted_conjugate(&s1, &one).unwrap();
        assert_eq!(c.x, w.from_word(&[0, 1]).unwrap());
    }

    #[test]
    fn aut_table_matches_words() {
        let w = CoxeterSystem::from_type("D4").unwrap();
        for theta in w.diagram_automorphisms() {
            let t = w.aut_table(&theta);
            for e in w.elements() {
                let img = w.apply_aut(&theta, &e).unwrap();
                assert_eq!(img.id(), Some(t[e.id().unwrap() as usize]));
            }
        }
    }

    #[test]
    fn w0_conjugation() {
        let a3 = CoxeterSystem::from_type("A3").unwrap();
        assert_eq!(a3.w0_automorphism().unwrap().images(), &[2, 1, 0]);
        let b3 = CoxeterSystem::from_type("B3").unwrap();
        assert!(b3.w0_automorphism().unwrap().is_identity());
    }

    #[test]
    fn word_parsing() {
        assert_eq!(parse_word("s1 s3", 3).unwrap(), vec![0, 2]);
        assert_eq!(parse_word("s1s3", 3).unwrap(), vec![0, 2]);
        assert_eq!(parse_word("", 3).unwrap(), Vec::<u8>::new());
        assert!(parse_word("s4", 3).is_err());
    }
}
