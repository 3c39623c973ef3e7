//! Twisted conjugacy classes in `W⁺ = W ⋊ Aut(W,S)`: enumeration,
//! quasiparabolicity, perfectness and the structure of minimal elements.

mod survey;
mod universal;

use std::collections::HashSet;
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::coxeter::{universal as uwords, CoxeterError, CoxeterSystem, DiagramAut, Family, GenSet};
use crate::qpsets::{QpError, ScaledWSet, SetKind};

pub use survey::{survey, w0_lemma_check, ClassReport, Survey, CSV_HEADER};
pub use universal::{truncated_qp_check, universal_qp_check, UniversalVerdict};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ClassifyError {
    #[error(transparent)]
    Qp(#[from] QpError),
    #[error(transparent)]
    Coxeter(#[from] CoxeterError),
    #[error("the class does not consist of twisted involutions")]
    NotInvolutionClass,
    #[error("the class has no unique W-minimal element")]
    NoUniqueMinimal,
    #[error("expected a twisted conjugacy class")]
    NotAClass,
}

/// Orbits of `w : (x,θ) ↦ (w x θ(w)⁻¹, θ)` on `W^{θ,+}`, in order of their
/// first point in shortlex. With `involutions_only`, only classes inside
/// `I⁺` are kept. For universal systems each visible class is truncated
/// at `cutoff`; a class whose points connect only through heights above the
/// cutoff may appear more than once.
pub fn twisted_classes(
    system: &Arc<CoxeterSystem>,
    theta: &DiagramAut,
    involutions_only: bool,
    cutoff: Option<i32>,
) -> Result<Vec<ScaledWSet>, ClassifyError> {
    if involutions_only && !theta.is_involution() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    match system.family() {
        Family::Finite => {
            let g = system.finite();
            let mut seen = vec![false; g.order()];
            let inv_table = theta.is_involution().then(|| system.aut_table(theta));
            for x in 0..g.order() as u32 {
                if seen[x as usize] {
                    continue;
                }
                if involutions_only {
                    // Twisted involutions form a union of classes.
                    let t = inv_table.as_ref().expect("θ² = 1");
                    if t[x as usize] != g.inverse(x) {
                        continue;
                    }
                }
                let set = ScaledWSet::conjugacy_set(system, &system.ext(system.element(x), theta.clone()), cutoff)?;
                for p in 0..set.len() as u32 {
                    seen[set.element(p).and_then(|e| e.id()).expect("finite") as usize] = true;
                }
                out.push(set);
            }
        }
        Family::Universal => {
            let cutoff = cutoff.ok_or(QpError::TruncationRequired)?;
            let mut seen: HashSet<Vec<u8>> = HashSet::new();
            for word in all_reduced_words(system.rank(), cutoff.max(0) as usize) {
                if seen.contains(&word) {
                    continue;
                }
                let x = system.from_word(&word)?;
                if involutions_only && theta.apply_word(&word) != uwords::inverse(&word) {
                    continue;
                }
                let set = ScaledWSet::conjugacy_set(system, &system.ext(x, theta.clone()), Some(cutoff))?;
                for p in 0..set.len() as u32 {
                    seen.insert(set.point_word(p).to_vec());
                }
                out.push(set);
            }
        }
    }
    Ok(out)
}

/// Reduced words of a universal system up to `max_len`, in shortlex order.
fn all_reduced_words(rank: usize, max_len: usize) -> Vec<Vec<u8>> {
    let mut out = vec![Vec::new()];
    let mut layer = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for s in 0..rank as u8 {
                if w.last() != Some(&s) {
                    let mut v: Vec<u8> = w.clone();
                    v.push(s);
                    next.push(v);
                }
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

fn class_theta(set: &ScaledWSet) -> Result<&DiagramAut, ClassifyError> {
    match set.kind() {
        SetKind::Conjugacy { theta, .. } => Ok(theta),
        _ => Err(ClassifyError::NotAClass),
    }
}

fn point_id(set: &ScaledWSet, p: u32) -> u32 {
    set.element(p).and_then(|e| e.id()).expect("finite conjugacy point")
}

/// Whether the class consists of twisted involutions.
pub fn is_involution_class(set: &ScaledWSet) -> Result<bool, ClassifyError> {
    let theta = class_theta(set)?;
    let sys = set.system();
    let ext = sys.ext(set.element(0).cloned().ok_or(ClassifyError::NotAClass)?, theta.clone());
    Ok(sys.is_twisted_involution(&ext)?)
}

/// `(r w)⁴ = 1` for every reflection `r`, tested at one representative.
/// For `w = (x,θ)` with `θ² = 1` this is `z² = 1` with `z = r x θ(r x)`.
pub fn is_perfect(set: &ScaledWSet) -> Result<bool, ClassifyError> {
    if !is_involution_class(set)? {
        return Err(ClassifyError::NotInvolutionClass);
    }
    let sys = set.system();
    if !sys.is_finite() {
        return Err(CoxeterError::NotFinite.into());
    }
    let g = sys.finite();
    let t = sys.aut_table(class_theta(set)?);
    let x = point_id(set, 0);
    Ok(g.reflections().iter().all(|&r| {
        let y = g.multiply(r, x);
        let z = g.multiply(y, t[y as usize]);
        g.multiply(z, z) == 0
    }))
}

/// Flags for the minimal element `w = (x,θ)` of a quasiparabolic class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StructureFlags {
    pub j: GenSet,
    /// `s w s = w` for all `s ∈ J`.
    pub a: bool,
    /// `W_J` finite and `θ(J) = J`.
    pub b: bool,
    /// `x = w_J`.
    pub c: bool,
    /// `C_W(w) = N_{W,θ}(W_J)`.
    pub centralizer: bool,
    /// `w ↦ w²` maps the class onto `ι(θ²)`.
    pub squares: bool,
}

impl StructureFlags {
    pub fn all(&self) -> bool {
        self.a && self.b && self.c && self.centralizer && self.squares
    }
}

pub fn structure_check(set: &ScaledWSet) -> Result<StructureFlags, ClassifyError> {
    let theta = class_theta(set)?;
    let sys = set.system();
    if !sys.is_finite() {
        return Err(CoxeterError::NotFinite.into());
    }
    let g = sys.finite();
    let minimal = set.minimal_elements();
    let [m] = minimal.as_slice() else {
        return Err(ClassifyError::NoUniqueMinimal);
    };
    let x = point_id(set, *m);
    let t = sys.aut_table(theta);
    let conj = |u: u32, y: u32| g.multiply(g.multiply(u, y), g.inverse(t[u as usize]));
    let j: GenSet = (0..sys.rank()).filter(|&s| g.length(g.lmul(s, x)) < g.length(x)).collect();
    let a = j.iter().all(|s| conj(g.lmul(s, 0), x) == x);
    let b = j.iter().all(|s| j.contains(theta.apply(s)));
    let wj = sys.longest_element(j)?.id().expect("finite");
    let c = x == wj;
    // Elements of W_J.
    let mut wj_set = vec![false; g.order()];
    let mut stack = vec![0u32];
    wj_set[0] = true;
    while let Some(u) = stack.pop() {
        for s in j.iter() {
            let su = g.lmul(s, u);
            if !wj_set[su as usize] {
                wj_set[su as usize] = true;
                stack.push(su);
            }
        }
    }
    let wj_elems: Vec<u32> = (0..g.order() as u32).filter(|&u| wj_set[u as usize]).collect();
    let centralizer = (0..g.order() as u32).all(|u| {
        let in_c = conj(u, x) == x;
        let in_n = wj_elems.iter().all(|&z| wj_set[conj(u, z) as usize]);
        in_c == in_n
    });
    // w² = (x θ(x), θ²) against ι(θ²) = {(u⁻¹ θ²(u), θ²)}.
    let theta2 = theta.compose(theta);
    let t2 = sys.aut_table(&theta2);
    let squares_img: HashSet<u32> = (0..set.len() as u32)
        .map(|p| {
            let y = point_id(set, p);
            g.multiply(y, t[y as usize])
        })
        .collect();
    let iota: HashSet<u32> = (0..g.order() as u32).map(|u| g.multiply(g.inverse(u), t2[u as usize])).collect();
    let squares = squares_img == iota;
    Ok(StructureFlags { j, a, b, c, centralizer, squares })
}

/// Number of points of minimal length.
pub fn minimal_length_count(set: &ScaledWSet) -> usize {
    let low = set.heights2().iter().copied().min().unwrap_or(0);
    set.heights2().iter().filter(|&&h| h == low).count()
}

/// Whether the class order agrees with the Bruhat order of `W` on the
/// element parts (a diagnostic; requires a quasiparabolic class).
pub fn bruhat_restriction_agrees(set: &ScaledWSet) -> Result<bool, ClassifyError> {
    let order = set.bruhat_order()?;
    let g = set.system().finite();
    let n = set.len() as u32;
    Ok((0..n).all(|y| (0..n).all(|x| order.leq(x, y) == g.bruhat_leq(point_id(set, x), point_id(set, y)))))
}

/// For a class of twisted involutions satisfying QP1, whether
/// `ℓ(rwr) < ℓ(w)` always implies `rwr < w` in Bruhat order. `None` when
/// the hypothesis fails or the class is not in `I⁺`.
pub fn strong_exchange(set: &ScaledWSet) -> Result<Option<bool>, ClassifyError> {
    if !is_involution_class(set)? || !set.verdict()?.qp1 {
        return Ok(None);
    }
    let g = set.system().finite();
    let t = set.system().aut_table(class_theta(set)?);
    for &r in g.reflections() {
        for p in 0..set.len() as u32 {
            let w = point_id(set, p);
            let rwr = g.multiply(g.multiply(r, w), t[r as usize]);
            if g.length(rwr) < g.length(w) && !g.bruhat_leq(rwr, w) {
                return Ok(Some(false));
            }
        }
    }
    Ok(Some(true))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sys(t: &str) -> Arc<CoxeterSystem> {
        CoxeterSystem::from_type(t).unwrap()
    }

    #[test]
    fn a3_involution_classes() {
        let w = sys("A3");
        let classes = twisted_classes(&w, &DiagramAut::identity(3), true, None).unwrap();
        let sizes: Vec<usize> = classes.iter().map(|c| c.len()).collect();
        assert_eq!(sizes, vec![1, 6, 3]);
        let all = twisted_classes(&w, &DiagramAut::identity(3), false, None).unwrap();
        assert_eq!(all.iter().map(|c| c.len()).sum::<usize>(), 24);
        assert_eq!(all.len(), 5);
    }

    #[test]
    fn i2_classes() {
        let w = sys("I2(4)");
        let id = twisted_classes(&w, &DiagramAut::identity(2), true, None).unwrap();
        let sizes: Vec<usize> = id.iter().map(|c| c.len()).collect();
        assert_eq!(sizes, vec![1, 2, 2, 1]);
        let swap = twisted_classes(&w, &DiagramAut::from_images(vec![1, 0]), true, None).unwrap();
        assert_eq!(swap[0].len(), 4);
    }

    #[test]
    fn perfect_and_structure() {
        let w = sys("A3");
        let seed = w.ext(w.from_word(&[0, 2]).unwrap(), DiagramAut::identity(3));
        let fpf = ScaledWSet::conjugacy_set(&w, &seed, None).unwrap();
        assert!(is_perfect(&fpf).unwrap());
        let f = structure_check(&fpf).unwrap();
        assert_eq!(f.j, [0usize, 2].into_iter().collect());
        assert!(f.all(), "{f:?}");
        let i8 = sys("I2(8)");
        let s1 = ScaledWSet::conjugacy_set(&i8, &i8.ext(i8.from_word(&[0]).unwrap(), DiagramAut::identity(2)), None).unwrap();
        assert!(!is_perfect(&s1).unwrap());
        let one = ScaledWSet::conjugacy_set(&w, &w.ext_identity(), None).unwrap();
        assert!(is_perfect(&one).unwrap());
        assert!(structure_check(&one).unwrap().all());
    }

    #[test]
    fn universal_classes_need_cutoff() {
        let u = sys("U2");
        assert!(matches!(
            twisted_classes(&u, &DiagramAut::identity(2), true, None),
            Err(ClassifyError::Qp(QpError::TruncationRequired))
        ));
        let cl = twisted_classes(&u, &DiagramAut::identity(2), true, Some(6)).unwrap();
        assert!(cl.len() >= 3);
    }
}
