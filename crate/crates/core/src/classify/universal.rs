use serde::Serialize;

use super::ClassifyError;
use crate::coxeter::{fmt_word, universal as uwords, CoxeterError, CoxeterSystem, ExtElement, Family};
use crate::qpsets::{Axiom, QpVerdict, QpWitness, ScaledWSet};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UniversalVerdict {
    pub is_qp: bool,
    /// Reduced word of the element part reached by length-reducing conjugation.
    pub minimal: Vec<u8>,
    pub in_i_plus: bool,
    pub reason: String,
}

/// Quasiparabolicity of the class of `seed` in a universal system: descend
/// by length-reducing conjugations `x ↦ s x θ(s)` until stuck, then test
/// `θ(x) = x` and `x ∈ {1} ∪ S`.
pub fn universal_qp_check(system: &CoxeterSystem, seed: &ExtElement) -> Result<UniversalVerdict, ClassifyError> {
    if system.family() != Family::Universal {
        return Err(CoxeterError::Unsupported("criterion (c) applies to universal systems".into()).into());
    }
    let theta = &seed.theta;
    let mut x = system.word(&seed.x)?;
    'descend: loop {
        for s in 0..system.rank() {
            let left = uwords::multiply(&[s as u8], &x);
            let y = uwords::multiply(&left, &[theta.apply(s) as u8]);
            if y.len() < x.len() {
                x = y;
                continue 'descend;
            }
        }
        break;
    }
    let fixed = theta.apply_word(&x) == x;
    let small = x.len() <= 1;
    let is_qp = fixed && small;
    let in_i_plus = theta.is_involution() && theta.apply_word(&x) == uwords::inverse(&x);
    let reason = if is_qp {
        format!("class contains ({}, {theta}) with θ(x) = x and x ∈ {{1}} ∪ S", fmt_word(&x))
    } else if !small {
        format!("length-minimal element ({}, {theta}) has length {} > 1", fmt_word(&x), x.len())
    } else {
        format!("length-minimal element ({}, {theta}) is not θ-fixed", fmt_word(&x))
    };
    Ok(UniversalVerdict { is_qp, minimal: x, in_i_plus, reason })
}

/// QP1 and QP2 restricted to points below the truncation and reflections
/// `r` of length at most the cutoff, skipping any image hidden by the
/// truncation.
pub fn truncated_qp_check(set: &ScaledWSet) -> QpVerdict {
    let sys = set.system();
    let cutoff = set.truncated_at().unwrap_or(i32::MAX);
    let max_len = if cutoff == i32::MAX { usize::MAX } else { cutoff.max(0) as usize };
    let refl: Vec<Vec<u8>> = match sys.family() {
        Family::Finite => sys.reflections().unwrap_or_default(),
        Family::Universal => sys.reflections_up_to(max_len),
    }
    .iter()
    .map(|r| sys.word(r).expect("own element"))
    .collect();
    let h = |p: u32| set.height2(p);
    let mut qp1_witness = None;
    let mut qp2_witness = None;
    for r in &refl {
        for x in (0..set.len() as u32).filter(|&x| h(x) < cutoff) {
            let Some(rx) = set.act_word(r, x) else { continue };
            if qp1_witness.is_none() && h(rx) == h(x) && rx != x {
                qp1_witness = Some(QpWitness { axiom: Axiom::QP1, r: r.clone(), x, s: None });
            }
            if qp2_witness.is_none() && h(rx) > h(x) {
                for s in 0..set.rank() {
                    let (Some(sx), Some(srx)) = (set.act(s, x), set.act(s, rx)) else { continue };
                    if h(srx) < h(sx) && rx != sx {
                        qp2_witness = Some(QpWitness { axiom: Axiom::QP2, r: r.clone(), x, s: Some(s) });
                        break;
                    }
                }
            }
        }
    }
    let qp1 = qp1_witness.is_none();
    let witness = qp1_witness.or(qp2_witness);
    QpVerdict { is_qp: witness.is_none(), qp1, witness }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::DiagramAut;

    #[test]
    fn rank_three_rotation() {
        let u = CoxeterSystem::from_type("U3").unwrap();
        let theta = DiagramAut::from_images(vec![1, 2, 0]);
        let v = universal_qp_check(&u, &u.ext(u.identity(), theta.clone())).unwrap();
        assert!(v.is_qp && !v.in_i_plus);
        let set = ScaledWSet::conjugacy_set(&u, &u.ext(u.identity(), theta), Some(8)).unwrap();
        assert!(truncated_qp_check(&set).is_qp);
    }

    #[test]
    fn length_two_minimum_fails() {
        let u = CoxeterSystem::from_type("U3").unwrap();
        let seed = u.ext(u.from_word(&[0, 1]).unwrap(), DiagramAut::identity(3));
        let v = universal_qp_check(&u, &seed).unwrap();
        assert!(!v.is_qp);
        assert_eq!(v.minimal.len(), 2);
        let set = ScaledWSet::conjugacy_set(&u, &seed, Some(8)).unwrap();
        let t = truncated_qp_check(&set);
        assert!(!t.is_qp);
        assert!(t.witness.unwrap().violates(&set));
        let s1 = u.ext(u.from_word(&[0]).unwrap(), DiagramAut::identity(3));
        assert!(universal_qp_check(&u, &s1).unwrap().is_qp);
    }
}
