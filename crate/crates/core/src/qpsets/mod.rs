//! Scaled W-sets: a W-action on dense point ids with a height function
//! stored doubled (`height2 = 2·ht`) so half-integer heights stay exact.

mod order;
mod verdict;

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::hash::Hash;
use std::sync::{Arc, OnceLock};

use serde::Serialize;
use thiserror::Error;

use crate::coxeter::{fmt_word, CoxeterError, CoxeterMatrix, CoxeterSystem, DiagramAut, Element, ExtElement, Family, GenSet};

pub use order::XOrder;
pub use verdict::{Axiom, QpVerdict, QpWitness};

/// Marks a generator image outside a truncated carrier.
pub const ABSENT: u32 = u32::MAX;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QpError {
    #[error(transparent)]
    Coxeter(#[from] CoxeterError),
    #[error("a height cutoff is required for universal systems")]
    TruncationRequired,
    #[error("the query needs points hidden by the truncation at height2 {0}")]
    Truncated(i32),
    #[error("the orbit of point {0} has no visible W-minimal element")]
    NoMinimal(u32),
    #[error("the set is not quasiparabolic")]
    NotQuasiparabolic,
    #[error("invalid scaled set: {0}")]
    Invalid(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum SetKind {
    /// Minimal left coset representatives `W^J` with the bullet action.
    Coset { j: GenSet },
    /// A twisted conjugacy class in `W⁺`; `theta` is shared by all points.
    Conjugacy { theta: DiagramAut, seed: Vec<u8> },
    /// `W` acting on itself by left multiplication.
    Regular,
    /// `X × F₂` over `W × A₁`; the extra generator is the last index.
    DoubleCover { base: Box<SetKind> },
    /// Built directly from tables.
    Custom,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PointLabel {
    Elem(Element),
    Twisted(Element),
    Cover { base: u32, k: u8 },
}

pub struct ScaledWSet {
    system: Arc<CoxeterSystem>,
    kind: SetKind,
    labels: Vec<PointLabel>,
    /// Reduced words of the element part of each label, for display.
    words: Vec<Vec<u8>>,
    action: Vec<Vec<u32>>,
    height2: Vec<i32>,
    truncated_at: Option<i32>,
    verdict: OnceLock<QpVerdict>,
    order: OnceLock<Result<XOrder, QpError>>,
}

impl fmt::Debug for ScaledWSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ScaledWSet")
            .field("system", &self.system.name())
            .field("kind", &self.kind)
            .field("len", &self.len())
            .field("truncated_at", &self.truncated_at)
            .finish()
    }
}

struct Orbit<L> {
    labels: Vec<L>,
    action: Vec<Vec<u32>>,
    height2: Vec<i32>,
}

/// Breadth-first orbit of `seeds`. With a cutoff, only points with
/// `height2 < cutoff` are expanded; their images are all recorded.
fn bfs<L, F, H>(rank: usize, seeds: Vec<L>, step: F, h2: H, cutoff: Option<i32>) -> Orbit<L>
where
    L: Clone + Eq + Hash,
    F: Fn(usize, &L) -> L,
    H: Fn(&L) -> i32,
{
    let mut index: HashMap<L, u32> = HashMap::new();
    let mut labels: Vec<L> = Vec::new();
    let mut height2 = Vec::new();
    let mut queue = VecDeque::new();
    for s in seeds {
        if !index.contains_key(&s) {
            index.insert(s.clone(), labels.len() as u32);
            queue.push_back(labels.len() as u32);
            height2.push(h2(&s));
            labels.push(s);
        }
    }
    let mut action: Vec<Vec<u32>> = vec![Vec::new(); rank];
    while let Some(x) = queue.pop_front() {
        let xi = x as usize;
        for row in action.iter_mut() {
            if row.len() <= xi {
                row.resize(xi + 1, ABSENT);
            }
        }
        if cutoff.is_some_and(|c| height2[xi] >= c) {
            continue;
        }
        for (s, row) in action.iter_mut().enumerate() {
            let y = step(s, &labels[xi]);
            let id = match index.get(&y) {
                Some(&id) => id,
                None => {
                    let id = labels.len() as u32;
                    index.insert(y.clone(), id);
                    height2.push(h2(&y));
                    labels.push(y);
                    queue.push_back(id);
                    id
                }
            };
            row[xi] = id;
        }
    }
    for row in action.iter_mut() {
        row.resize(labels.len(), ABSENT);
        // Generators are involutions, so an expanded point also supplies the
        // image of each unexpanded neighbour.
        for x in 0..row.len() {
            let y = row[x];
            if y != ABSENT && row[y as usize] == ABSENT {
                row[y as usize] = x as u32;
            }
        }
    }
    Orbit { labels, action, height2 }
}

impl ScaledWSet {
    /// Assemble a set from raw tables, validating the scaled-set axioms on
    /// every present image.
    pub fn from_parts(
        system: Arc<CoxeterSystem>,
        kind: SetKind,
        labels: Vec<PointLabel>,
        action: Vec<Vec<u32>>,
        height2: Vec<i32>,
        truncated_at: Option<i32>,
    ) -> Result<Self, QpError> {
        let n = labels.len();
        if action.len() != system.rank() || action.iter().any(|r| r.len() != n) || height2.len() != n {
            return Err(QpError::Invalid("table dimensions do not match".into()));
        }
        for (s, row) in action.iter().enumerate() {
            for x in 0..n {
                let y = row[x];
                if y == ABSENT {
                    if truncated_at.is_none_or(|c| height2[x] < c) {
                        return Err(QpError::Invalid(format!("s{} image of point {x} is missing", s + 1)));
                    }
                    continue;
                }
                if y as usize >= n {
                    return Err(QpError::Invalid(format!("image {y} out of range")));
                }
                let back = row[y as usize];
                if back != ABSENT && back != x as u32 {
                    return Err(QpError::Invalid(format!("s{} is not an involution at point {x}", s + 1)));
                }
                let d = (height2[y as usize] - height2[x]).abs();
                if d != 0 && d != 2 {
                    return Err(QpError::Invalid(format!(
                        "height jumps by {} under s{} at point {x}",
                        d as f64 / 2.0,
                        s + 1
                    )));
                }
            }
        }
        let words = labels
            .iter()
            .map(|l| match l {
                PointLabel::Elem(e) | PointLabel::Twisted(e) => system.word(e).unwrap_or_default(),
                PointLabel::Cover { .. } => Vec::new(),
            })
            .collect();
        Ok(ScaledWSet {
            system,
            kind,
            labels,
            words,
            action,
            height2,
            truncated_at,
            verdict: OnceLock::new(),
            order: OnceLock::new(),
        })
    }

    fn from_orbit(system: Arc<CoxeterSystem>, kind: SetKind, orbit: Orbit<PointLabel>, cutoff: Option<i32>) -> Self {
        Self::from_parts(system, kind, orbit.labels, orbit.action, orbit.height2, cutoff)
            .expect("orbit construction yields a valid scaled set")
    }

    /// `(W, ℓ)` with left multiplication.
    pub fn regular(system: &Arc<CoxeterSystem>, cutoff: Option<i32>) -> Result<Self, QpError> {
        Self::coset_set(system, GenSet::empty(), cutoff).map(|mut x| {
            x.kind = SetKind::Regular;
            x
        })
    }

    /// Minimal-length representatives of the cosets `wW_J`, with `ht = ℓ`
    /// and `s•w = sw` if `sw ∈ W^J`, else `w`.
    pub fn coset_set(system: &Arc<CoxeterSystem>, j: GenSet, cutoff: Option<i32>) -> Result<Self, QpError> {
        let sys = system.clone();
        let rank = sys.rank();
        if let Some(&s) = j.iter().collect::<Vec<_>>().iter().find(|&&s| s >= rank) {
            return Err(CoxeterError::BadGenerator(s + 1).into());
        }
        match sys.family() {
            Family::Finite => {
                let g = sys.finite();
                let in_wj = |w: u32| j.iter().all(|t| g.length(g.rmul(w, t)) > g.length(w));
                let orbit = bfs(
                    rank,
                    vec![0u32],
                    |s, &w| {
                        let sw = g.lmul(s, w);
                        if in_wj(sw) {
                            sw
                        } else {
                            w
                        }
                    },
                    |&w| 2 * g.length(w) as i32,
                    cutoff,
                );
                let orbit = Orbit {
                    labels: orbit.labels.iter().map(|&w| PointLabel::Elem(sys.element(w))).collect(),
                    action: orbit.action,
                    height2: orbit.height2,
                };
                Ok(Self::from_orbit(system.clone(), SetKind::Coset { j }, orbit, cutoff))
            }
            Family::Universal => {
                let cutoff = cutoff.ok_or(if j.len() > 1 { QpError::Coxeter(CoxeterError::InfiniteParabolic) } else { QpError::TruncationRequired })?;
                // The right descent of a reduced word is its last letter.
                let orbit = bfs(
                    rank,
                    vec![Vec::<u8>::new()],
                    |s, w| {
                        let sw = crate::coxeter::universal::multiply(&[s as u8], w);
                        match sw.last() {
                            Some(&t) if j.contains(t as usize) => w.clone(),
                            _ => sw,
                        }
                    },
                    |w| 2 * w.len() as i32,
                    Some(cutoff),
                );
                let orbit = Orbit {
                    labels: orbit
                        .labels
                        .iter()
                        .map(|w| PointLabel::Elem(sys.from_word(w).expect("valid word")))
                        .collect(),
                    action: orbit.action,
                    height2: orbit.height2,
                };
                Ok(Self::from_orbit(system.clone(), SetKind::Coset { j }, orbit, Some(cutoff)))
            }
        }
    }

    /// The twisted conjugacy class of `seed` under `w : (x,θ) ↦ (w x θ(w)⁻¹, θ)`,
    /// with `height2 = ℓ(x)`.
    pub fn conjugacy_set(system: &Arc<CoxeterSystem>, seed: &ExtElement, cutoff: Option<i32>) -> Result<Self, QpError> {
        let sys = system.clone();
        let rank = sys.rank();
        let theta = seed.theta.clone();
        let seed_word = sys.word(&seed.x)?;
        let kind = SetKind::Conjugacy { theta: theta.clone(), seed: seed_word.clone() };
        match sys.family() {
            Family::Finite => {
                let g = sys.finite();
                let x0 = seed.x.id().expect("finite element");
                let orbit = bfs(
                    rank,
                    vec![x0],
                    |s, &x| g.lmul(s, g.rmul(x, theta.apply(s))),
                    |&x| g.length(x) as i32,
                    cutoff,
                );
                let orbit = Orbit {
                    labels: orbit.labels.iter().map(|&w| PointLabel::Twisted(sys.element(w))).collect(),
                    action: orbit.action,
                    height2: orbit.height2,
                };
                Ok(Self::from_orbit(system.clone(), kind, orbit, cutoff))
            }
            Family::Universal => {
                let cutoff = cutoff.ok_or(QpError::TruncationRequired)?;
                let orbit = bfs(
                    rank,
                    vec![seed_word],
                    |s, x| {
                        let left = crate::coxeter::universal::multiply(&[s as u8], x);
                        crate::coxeter::universal::multiply(&left, &[theta.apply(s) as u8])
                    },
                    |x| x.len() as i32,
                    Some(cutoff),
                );
                let orbit = Orbit {
                    labels: orbit
                        .labels
                        .iter()
                        .map(|w| PointLabel::Twisted(sys.from_word(w).expect("valid word")))
                        .collect(),
                    action: orbit.action,
                    height2: orbit.height2,
                };
                Ok(Self::from_orbit(system.clone(), kind, orbit, Some(cutoff)))
            }
        }
    }

    /// The even double cover `X × F₂` as a `W × A₁`-set. Heights are first
    /// shifted on each orbit to integers (`ht = ⌊height2/2⌋`), which changes
    /// no axiom.
    pub fn even_double_cover(&self) -> Result<ScaledWSet, QpError> {
        if self.truncated_at.is_some() {
            return Err(QpError::Truncated(self.truncated_at.unwrap_or_default()));
        }
        let rank = self.system.rank();
        let mut rows: Vec<Vec<u32>> = (0..rank)
            .map(|i| (0..rank).map(|j| self.system.matrix().get(i, j)).collect())
            .collect();
        for row in rows.iter_mut() {
            row.push(2);
        }
        let mut last = vec![2u32; rank + 1];
        last[rank] = 1;
        rows.push(last);
        let cover_sys = CoxeterSystem::build(CoxeterMatrix::new(rows)?, Family::Finite)?;
        let n = self.len();
        let ht = |x: usize| self.height2[x].div_euclid(2);
        let idx = |x: usize, k: u8| (2 * x + k as usize) as u32;
        let mut labels = Vec::with_capacity(2 * n);
        let mut height2 = Vec::with_capacity(2 * n);
        for x in 0..n {
            for k in 0..2u8 {
                labels.push(PointLabel::Cover { base: x as u32, k });
                let h = ht(x);
                let bump = if h.rem_euclid(2) == k as i32 { 0 } else { 1 };
                height2.push(2 * (h + bump));
            }
        }
        let mut action = vec![vec![0u32; 2 * n]; rank + 1];
        for x in 0..n {
            for k in 0..2u8 {
                for s in 0..rank {
                    action[s][idx(x, k) as usize] = idx(self.action[s][x] as usize, 1 - k);
                }
                action[rank][idx(x, k) as usize] = idx(x, 1 - k);
            }
        }
        ScaledWSet::from_parts(
            cover_sys,
            SetKind::DoubleCover { base: Box::new(self.kind.clone()) },
            labels,
            action,
            height2,
            None,
        )
    }

    pub fn system(&self) -> &Arc<CoxeterSystem> {
        &self.system
    }
    pub fn kind(&self) -> &SetKind {
        &self.kind
    }
    pub fn len(&self) -> usize {
        self.labels.len()
    }
    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }
    pub fn rank(&self) -> usize {
        self.action.len()
    }
    pub fn label(&self, x: u32) -> &PointLabel {
        &self.labels[x as usize]
    }
    pub fn labels(&self) -> &[PointLabel] {
        &self.labels
    }
    pub fn height2(&self, x: u32) -> i32 {
        self.height2[x as usize]
    }
    pub fn heights2(&self) -> &[i32] {
        &self.height2
    }
    pub fn truncated_at(&self) -> Option<i32> {
        self.truncated_at
    }
    pub fn is_truncated(&self) -> bool {
        self.truncated_at.is_some()
    }

    /// `s·x`, or `None` outside a truncation.
    pub fn act(&self, s: usize, x: u32) -> Option<u32> {
        let y = self.action[s][x as usize];
        (y != ABSENT).then_some(y)
    }

    /// `w·x` for `w = s1⋯sk` given as letters, applied right to left.
    pub fn act_word(&self, word: &[u8], x: u32) -> Option<u32> {
        word.iter().rev().try_fold(x, |y, &s| self.act(s as usize, y))
    }

    /// `w·x` for `w` in the acting system.
    pub fn act_element(&self, w: &Element, x: u32) -> Result<Option<u32>, QpError> {
        Ok(self.act_word(&self.system.word(w)?, x))
    }

    /// All generator images present.
    pub fn is_interior(&self, x: u32) -> bool {
        self.action.iter().all(|row| row[x as usize] != ABSENT)
    }

    /// Element and twist of a conjugacy-class point.
    pub fn ext_element(&self, x: u32) -> Option<ExtElement> {
        match (&self.kind, &self.labels[x as usize]) {
            (SetKind::Conjugacy { theta, .. }, PointLabel::Twisted(e)) => Some(ExtElement { x: e.clone(), theta: theta.clone() }),
            _ => None,
        }
    }

    /// Element part of a coset, regular or conjugacy point.
    pub fn element(&self, x: u32) -> Option<&Element> {
        match &self.labels[x as usize] {
            PointLabel::Elem(e) | PointLabel::Twisted(e) => Some(e),
            PointLabel::Cover { .. } => None,
        }
    }

    pub fn find(&self, label: &PointLabel) -> Option<u32> {
        self.labels.iter().position(|l| l == label).map(|i| i as u32)
    }

    /// Display name: a reduced word, `(word,θ)` for twisted points, or
    /// `(base,k)` for the double cover.
    pub fn point_name(&self, x: u32) -> String {
        match (&self.kind, &self.labels[x as usize]) {
            (SetKind::Conjugacy { theta, .. }, PointLabel::Twisted(_)) => {
                format!("({},{})", fmt_word(&self.words[x as usize]), theta)
            }
            (_, PointLabel::Cover { base, k }) => format!("({base},{k})"),
            _ => fmt_word(&self.words[x as usize]),
        }
    }

    pub fn point_word(&self, x: u32) -> &[u8] {
        &self.words[x as usize]
    }

    /// Points sorted by `(height2, id)`: the canonical linear extension.
    pub fn linear_extension(&self) -> Vec<u32> {
        let mut v: Vec<u32> = (0..self.len() as u32).collect();
        v.sort_by_key(|&x| (self.height2[x as usize], x));
        v
    }

    pub fn minimal_elements(&self) -> Vec<u32> {
        (0..self.len() as u32)
            .filter(|&x| {
                (0..self.rank()).all(|s| self.act(s, x).is_some_and(|y| self.height2(y) >= self.height2(x)))
            })
            .collect()
    }

    /// Maximal points; points on a truncation boundary are never reported.
    pub fn maximal_elements(&self) -> Vec<u32> {
        (0..self.len() as u32)
            .filter(|&x| {
                (0..self.rank()).all(|s| self.act(s, x).is_some_and(|y| self.height2(y) <= self.height2(x)))
            })
            .collect()
    }

    /// Connected components of the action graph, as a component id per point.
    pub fn orbits(&self) -> Vec<u32> {
        let n = self.len();
        let mut comp = vec![u32::MAX; n];
        let mut next = 0;
        for start in 0..n {
            if comp[start] != u32::MAX {
                continue;
            }
            let mut stack = vec![start as u32];
            comp[start] = next;
            while let Some(x) = stack.pop() {
                for s in 0..self.rank() {
                    if let Some(y) = self.act(s, x) {
                        if comp[y as usize] == u32::MAX {
                            comp[y as usize] = next;
                            stack.push(y);
                        }
                    }
                }
            }
            next += 1;
        }
        comp
    }

    /// `2·h_min(x)` where `h_min(x) = min_w ht(wx)` over the visible orbit.
    pub fn hmin2(&self) -> Vec<i32> {
        let comp = self.orbits();
        let k = comp.iter().copied().max().map_or(0, |m| m as usize + 1);
        let mut low = vec![i32::MAX; k];
        for (x, &c) in comp.iter().enumerate() {
            low[c as usize] = low[c as usize].min(self.height2[x]);
        }
        comp.iter().map(|&c| low[c as usize]).collect()
    }

    /// Greedy descent to a W-minimal point: returns `(w, x₀)` with
    /// `x = s_{w[0]} s_{w[1]} ⋯ x₀`, always taking the lowest visible descent.
    pub fn rht_witness(&self, x: u32) -> Result<(Vec<u8>, u32), QpError> {
        let mut word = Vec::new();
        let mut cur = x;
        'descend: loop {
            for s in 0..self.rank() {
                if let Some(y) = self.act(s, cur) {
                    if self.height2(y) < self.height2(cur) {
                        word.push(s as u8);
                        cur = y;
                        continue 'descend;
                    }
                }
            }
            if !self.is_interior(cur) {
                return Err(QpError::NoMinimal(x));
            }
            return Ok((word, cur));
        }
    }

    /// Cached QP verdict (finite carriers only).
    pub fn verdict(&self) -> Result<&QpVerdict, QpError> {
        if let Some(c) = self.truncated_at {
            return Err(QpError::Truncated(c));
        }
        if !self.system.is_finite() {
            return Err(QpError::TruncationRequired);
        }
        Ok(self.verdict.get_or_init(|| verdict::check(self)))
    }

    pub fn check_quasiparabolic(&self) -> Result<QpVerdict, QpError> {
        self.verdict().cloned()
    }

    /// Bruhat order on `X`, requiring a passing QP verdict.
    pub fn bruhat_order(&self) -> Result<&XOrder, QpError> {
        self.order
            .get_or_init(|| {
                if !self.verdict()?.is_qp {
                    return Err(QpError::NotQuasiparabolic);
                }
                Ok(XOrder::compute(self))
            })
            .as_ref()
            .map_err(|e| e.clone())
    }

    pub fn to_json(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct Point {
            id: u32,
            name: String,
            word: String,
            height2: i32,
        }
        let points: Vec<Point> = (0..self.len() as u32)
            .map(|x| Point {
                id: x,
                name: self.point_name(x),
                word: fmt_word(self.point_word(x)),
                height2: self.height2(x),
            })
            .collect();
        let action: Vec<Vec<Option<u32>>> = self
            .action
            .iter()
            .map(|r| r.iter().map(|&y| (y != ABSENT).then_some(y)).collect())
            .collect();
        serde_json::json!({
            "schema_version": crate::SCHEMA_VERSION,
            "system": self.system.name(),
            "kind": self.kind,
            "truncated_at": self.truncated_at,
            "points": points,
            "action": action,
            "verdict": self.verdict().ok(),
            "minimal": self.minimal_elements(),
            "maximal": self.maximal_elements(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sys(t: &str) -> Arc<CoxeterSystem> {
        CoxeterSystem::from_type(t).unwrap()
    }

    #[test]
    fn a2_coset_heights() {
        let w = sys("A2");
        let x = ScaledWSet::coset_set(&w, [1].into_iter().collect(), None).unwrap();
        assert_eq!(x.len(), 3);
        let mut h: Vec<i32> = x.heights2().to_vec();
        h.sort();
        assert_eq!(h, vec![0, 2, 4]);
        let names: Vec<String> = (0..3).map(|p| x.point_name(p)).collect();
        assert!(names.contains(&"s2s1".to_string()));
        let full = ScaledWSet::coset_set(&sys("A3"), GenSet::all(3), None).unwrap();
        assert_eq!(full.len(), 1);
    }

    #[test]
    fn a3_fpf_class() {
        let w = sys("A3");
        let seed = w.ext(w.from_word(&[0, 2]).unwrap(), DiagramAut::identity(3));
        let x = ScaledWSet::conjugacy_set(&w, &seed, None).unwrap();
        let mut h: Vec<i32> = x.heights2().to_vec();
        h.sort();
        assert_eq!(h, vec![2, 4, 6]);
        assert_eq!(x.minimal_elements().len(), 1);
        assert_eq!(x.maximal_elements().len(), 1);
        let top = x.maximal_elements()[0];
        let (word, x0) = x.rht_witness(top).unwrap();
        assert_eq!(word, vec![0, 1]);
        assert_eq!(x0, x.minimal_elements()[0]);
        assert_eq!(x.act_word(&word, x0), Some(top));
    }

    #[test]
    fn double_cover_doubles() {
        let w = sys("A3");
        let seed = w.ext(w.from_word(&[0, 2]).unwrap(), DiagramAut::identity(3));
        let x = ScaledWSet::conjugacy_set(&w, &seed, None).unwrap();
        let c = x.even_double_cover().unwrap();
        assert_eq!(c.len(), 6);
        assert_eq!(c.rank(), 4);
        for p in 0..6 {
            for s in 0..4 {
                assert_ne!(c.act(s, p), Some(p), "cover must be even");
            }
        }
    }

    #[test]
    fn from_parts_rejects_bad_heights() {
        let w = sys("A1");
        let r = ScaledWSet::from_parts(
            w.clone(),
            SetKind::Custom,
            vec![PointLabel::Cover { base: 0, k: 0 }, PointLabel::Cover { base: 1, k: 0 }],
            vec![vec![1, 0]],
            vec![0, 4],
            None,
        );
        assert!(matches!(r, Err(QpError::Invalid(_))));
    }

    #[test]
    fn universal_truncation() {
        let u = sys("U3");
        let theta = DiagramAut::from_images(vec![1, 2, 0]);
        let seed = u.ext(u.identity(), theta);
        assert_eq!(ScaledWSet::conjugacy_set(&u, &seed, None).unwrap_err(), QpError::TruncationRequired);
        let x = ScaledWSet::conjugacy_set(&u, &seed, Some(8)).unwrap();
        assert!(x.heights2().iter().all(|&h| h <= 9));
        for p in 0..x.len() as u32 {
            if x.height2(p) < 8 {
                assert!(x.is_interior(p));
            }
        }
        assert!(matches!(x.verdict(), Err(QpError::Truncated(8))));
    }
}
