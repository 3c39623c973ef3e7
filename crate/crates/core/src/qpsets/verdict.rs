use rayon::prelude::*;
use serde::Serialize;

use super::ScaledWSet;
use crate::coxeter::fmt_word;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Axiom {
    QP1,
    QP2,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QpWitness {
    pub axiom: Axiom,
    /// Reduced word of the reflection.
    pub r: Vec<u8>,
    pub x: u32,
    pub s: Option<usize>,
}

impl QpWitness {
    /// Re-evaluate the axiom on `set`; true when the witness really violates it.
    pub fn violates(&self, set: &ScaledWSet) -> bool {
        let Some(rx) = set.act_word(&self.r, self.x) else {
            return false;
        };
        let h = |p: u32| set.height2(p);
        match (self.axiom, self.s) {
            (Axiom::QP1, _) => h(rx) == h(self.x) && rx != self.x,
            (Axiom::QP2, Some(s)) => {
                let (Some(sx), Some(srx)) = (set.act(s, self.x), set.act(s, rx)) else {
                    return false;
                };
                h(rx) > h(self.x) && h(srx) < h(sx) && rx != sx
            }
            (Axiom::QP2, None) => false,
        }
    }

    pub fn describe(&self, set: &ScaledWSet) -> String {
        match self.s {
            Some(s) => format!(
                "{:?}: r = {}, x = {}, s = s{}",
                self.axiom,
                fmt_word(&self.r),
                set.point_name(self.x),
                s + 1
            ),
            None => format!("{:?}: r = {}, x = {}", self.axiom, fmt_word(&self.r), set.point_name(self.x)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QpVerdict {
    pub is_qp: bool,
    /// QP1 alone, recorded separately from the full verdict.
    pub qp1: bool,
    pub witness: Option<QpWitness>,
}

/// Exhaustive check over `R × X` (QP1) and `R × X × S` (QP2).
pub(super) fn check(set: &ScaledWSet) -> QpVerdict {
    let g = set.system().finite();
    let refl: Vec<Vec<u8>> = g.reflections().iter().map(|&r| g.word(r).to_vec()).collect();
    let n = set.len() as u32;
    let h = |p: u32| set.height2(p);
    let per_reflection: Vec<(Option<QpWitness>, Option<QpWitness>)> = refl
        .par_iter()
        .map(|r| {
            let mut w1 = None;
            let mut w2 = None;
            for x in 0..n {
                let rx = set.act_word(r, x).expect("finite carrier");
                if w1.is_none() && h(rx) == h(x) && rx != x {
                    w1 = Some(QpWitness { axiom: Axiom::QP1, r: r.clone(), x, s: None });
                }
                if w2.is_none() && h(rx) > h(x) {
                    for s in 0..set.rank() {
                        let sx = set.action[s][x as usize];
                        let srx = set.action[s][rx as usize];
                        if h(srx) < h(sx) && rx != sx {
                            w2 = Some(QpWitness { axiom: Axiom::QP2, r: r.clone(), x, s: Some(s) });
                            break;
                        }
                    }
                }
                if w1.is_some() && w2.is_some() {
                    break;
                }
            }
            (w1, w2)
        })
        .collect();
    let first_qp1 = per_reflection.iter().find_map(|(a, _)| a.clone());
    let first_qp2 = per_reflection.iter().find_map(|(_, b)| b.clone());
    let qp1 = first_qp1.is_none();
    let witness = first_qp1.or(first_qp2);
    QpVerdict { is_qp: witness.is_none(), qp1, witness }
}
