//! Finite Coxeter groups: the root system of the geometric representation,
//! enumeration of elements as root permutations, and dense multiplication
//! tables.

use std::collections::HashMap;
use std::collections::VecDeque;
use std::sync::OnceLock;

use fixedbitset::FixedBitSet;

use super::{CoxeterError, CoxeterMatrix, INFINITE};

const SNAP_TOL: f64 = 1e-9;
/// Refuse to enumerate groups larger than this.
pub const MAX_ORDER: usize = 1_000_000;

fn form_entry(m: u32) -> f64 {
    match m {
        1 => 1.0,
        INFINITE => -1.0,
        m => -(std::f64::consts::PI / m as f64).cos(),
    }
}

/// Cholesky test for positive definiteness of the bilinear form.
pub fn is_positive_definite(matrix: &CoxeterMatrix) -> bool {
    let n = matrix.rank();
    let b: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| form_entry(matrix.get(i, j))).collect())
        .collect();
    let mut l = vec![vec![0.0f64; n]; n];
    for i in 0..n {
        for j in 0..=i {
            let s: f64 = (0..j).map(|k| l[i][k] * l[j][k]).sum();
            if i == j {
                let d = b[i][i] - s;
                if d <= 1e-12 {
                    return false;
                }
                l[i][i] = d.sqrt();
            } else {
                l[i][j] = (b[i][j] - s) / l[j][j];
            }
        }
    }
    true
}

/// Dense tables for a finite Coxeter group. Element ids are assigned in
/// breadth-first order from the identity, so lengths are nondecreasing in id.
#[derive(Debug)]
pub struct FiniteGroup {
    rank: usize,
    npos: usize,
    /// `gen_perm[s][i]`: index of `s(root_i)`.
    gen_perm: Vec<Vec<u16>>,
    lmul: Vec<Vec<u32>>,
    rmul: Vec<Vec<u32>>,
    inv: Vec<u32>,
    length: Vec<u32>,
    words: Vec<Vec<u8>>,
    reflections: OnceLock<Vec<u32>>,
    below: OnceLock<Vec<FixedBitSet>>,
}

impl FiniteGroup {
    pub fn build(matrix: &CoxeterMatrix) -> Result<Self, CoxeterError> {
        if !is_positive_definite(matrix) {
            return Err(CoxeterError::NotFinite);
        }
        let rank = matrix.rank();
        let form: Vec<Vec<f64>> = (0..rank)
            .map(|i| (0..rank).map(|j| form_entry(matrix.get(i, j))).collect())
            .collect();
        let reflect = |s: usize, beta: &[f64]| -> Vec<f64> {
            let b: f64 = (0..rank).map(|t| beta[t] * form[s][t]).sum();
            let mut out = beta.to_vec();
            out[s] -= 2.0 * b;
            out
        };
        let find = |roots: &[Vec<f64>], beta: &[f64]| {
            roots
                .iter()
                .position(|r| r.iter().zip(beta).all(|(a, b)| (a - b).abs() < SNAP_TOL))
        };

        // Positive roots, closed under simple reflections.
        let mut pos: Vec<Vec<f64>> = (0..rank)
            .map(|s| (0..rank).map(|t| if s == t { 1.0 } else { 0.0 }).collect())
            .collect();
        let mut i = 0;
        while i < pos.len() {
            for s in 0..rank {
                if i == s {
                    continue;
                }
                let mut r = reflect(s, &pos[i]);
                for x in r.iter_mut() {
                    if x.abs() < SNAP_TOL {
                        *x = 0.0;
                    }
                }
                if r.iter().any(|&x| x < 0.0) {
                    return Err(CoxeterError::RootValidation(
                        "simple reflection produced a mixed-sign root".into(),
                    ));
                }
                if find(&pos, &r).is_none() {
                    pos.push(r);
                    if pos.len() > 10_000 {
                        return Err(CoxeterError::NotFinite);
                    }
                }
            }
            i += 1;
        }
        let npos = pos.len();
        let mut all = pos.clone();
        all.extend(pos.iter().map(|r| r.iter().map(|x| -x).collect::<Vec<_>>()));
        if all.len() > u16::MAX as usize {
            return Err(CoxeterError::RootValidation("too many roots".into()));
        }
        let mut gen_perm = vec![vec![0u16; 2 * npos]; rank];
        for (s, perm) in gen_perm.iter_mut().enumerate() {
            for (i, root) in all.iter().enumerate() {
                let r = reflect(s, root);
                let j = find(&all, &r).ok_or_else(|| {
                    CoxeterError::RootValidation("root set not closed under reflection".into())
                })?;
                perm[i] = j as u16;
            }
        }
        validate_generators(matrix, &gen_perm)?;

        // Enumerate elements by breadth-first search on left multiplication.
        let key_of = |perm: &[u16]| -> Vec<u16> { perm[..rank].to_vec() };
        let ident: Vec<u16> = (0..2 * npos as u16).collect();
        let mut perms: Vec<Vec<u16>> = vec![ident.clone()];
        let mut lookup: HashMap<Vec<u16>, u32> = HashMap::new();
        lookup.insert(key_of(&ident), 0);
        let mut length = vec![0u32];
        let mut words: Vec<Vec<u8>> = vec![Vec::new()];
        let mut lmul: Vec<Vec<u32>> = vec![Vec::new(); rank];
        let mut queue = VecDeque::from([0u32]);
        while let Some(w) = queue.pop_front() {
            for s in 0..rank {
                let new: Vec<u16> = perms[w as usize]
                    .iter()
                    .map(|&i| gen_perm[s][i as usize])
                    .collect();
                let key = key_of(&new);
                let id = match lookup.get(&key) {
                    Some(&id) => id,
                    None => {
                        let id = perms.len() as u32;
                        if perms.len() >= MAX_ORDER {
                            return Err(CoxeterError::Unsupported(format!(
                                "group order exceeds {MAX_ORDER}"
                            )));
                        }
                        lookup.insert(key, id);
                        perms.push(new);
                        length.push(length[w as usize] + 1);
                        let mut word = vec![s as u8];
                        word.extend_from_slice(&words[w as usize]);
                        words.push(word);
                        queue.push_back(id);
                        id
                    }
                };
                let row = &mut lmul[s];
                if row.len() <= w as usize {
                    row.resize(w as usize + 1, u32::MAX);
                }
                row[w as usize] = id;
            }
        }
        let order = perms.len();
        for row in lmul.iter_mut() {
            row.resize(order, u32::MAX);
        }

        let mut rmul = vec![vec![0u32; order]; rank];
        let mut inv = vec![0u32; order];
        for (w, perm) in perms.iter().enumerate() {
            for (s, row) in rmul.iter_mut().enumerate() {
                let key: Vec<u16> = (0..rank)
                    .map(|t| perm[gen_perm[s][t] as usize])
                    .collect();
                row[w] = lookup[&key];
            }
            let mut ip = vec![0u16; 2 * npos];
            for (i, &j) in perm.iter().enumerate() {
                ip[j as usize] = i as u16;
            }
            inv[w] = lookup[&key_of(&ip)];
            let inversions = perm[..npos].iter().filter(|&&j| j as usize >= npos).count();
            if inversions != length[w] as usize {
                return Err(CoxeterError::RootValidation(format!(
                    "length mismatch for element {w}: {inversions} vs {}",
                    length[w]
                )));
            }
        }
        let max_len = *length.iter().max().unwrap_or(&0) as usize;
        if max_len != npos {
            return Err(CoxeterError::RootValidation(format!(
                "longest element has length {max_len} but there are {npos} positive roots"
            )));
        }
        Ok(FiniteGroup {
            rank,
            npos,
            gen_perm,
            lmul,
            rmul,
            inv,
            length,
            words,
            reflections: OnceLock::new(),
            below: OnceLock::new(),
        })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }
    pub fn order(&self) -> usize {
        self.length.len()
    }
    pub fn num_positive_roots(&self) -> usize {
        self.npos
    }
    pub fn lmul(&self, s: usize, w: u32) -> u32 {
        self.lmul[s][w as usize]
    }
    pub fn rmul(&self, w: u32, s: usize) -> u32 {
        self.rmul[s][w as usize]
    }
    pub fn inverse(&self, w: u32) -> u32 {
        self.inv[w as usize]
    }
    pub fn length(&self, w: u32) -> u32 {
        self.length[w as usize]
    }
    pub fn word(&self, w: u32) -> &[u8] {
        &self.words[w as usize]
    }
    pub fn generator_perm(&self, s: usize) -> &[u16] {
        &self.gen_perm[s]
    }

    pub fn from_word(&self, word: &[u8]) -> u32 {
        word.iter().rev().fold(0, |w, &s| self.lmul(s as usize, w))
    }

    pub fn multiply(&self, x: u32, y: u32) -> u32 {
        self.word(x).iter().rev().fold(y, |w, &s| self.lmul(s as usize, w))
    }

    pub fn longest(&self) -> u32 {
        (self.order() - 1) as u32
    }

    /// Reflections, sorted by id.
    pub fn reflections(&self) -> &[u32] {
        self.reflections.get_or_init(|| {
            let mut seen = FixedBitSet::with_capacity(self.order());
            let mut stack: Vec<u32> = (0..self.rank).map(|s| self.lmul(s, 0)).collect();
            for &r in &stack {
                seen.insert(r as usize);
            }
            while let Some(r) = stack.pop() {
                for s in 0..self.rank {
                    let c = self.lmul(s, self.rmul(r, s));
                    if !seen.contains(c as usize) {
                        seen.insert(c as usize);
                        stack.push(c);
                    }
                }
            }
            seen.ones().map(|i| i as u32).collect()
        })
    }

    /// `below()[y]` is the Bruhat interval `[1, y]` as a bitset.
    pub fn below(&self) -> &[FixedBitSet] {
        self.below.get_or_init(|| {
            let n = self.order();
            let refl = self.reflections().to_vec();
            let mut below: Vec<FixedBitSet> = Vec::with_capacity(n);
            for y in 0..n as u32 {
                let mut set = FixedBitSet::with_capacity(n);
                set.insert(y as usize);
                let ly = self.length(y);
                for &r in &refl {
                    let ry = self.multiply(r, y);
                    if self.length(ry) + 1 == ly {
                        set.union_with(&below[ry as usize]);
                    }
                }
                below.push(set);
            }
            below
        })
    }

    pub fn bruhat_leq(&self, x: u32, y: u32) -> bool {
        self.below()[y as usize].contains(x as usize)
    }
}

fn validate_generators(matrix: &CoxeterMatrix, gen_perm: &[Vec<u16>]) -> Result<(), CoxeterError> {
    let rank = gen_perm.len();
    let n = gen_perm.first().map_or(0, |p| p.len());
    for (s, p) in gen_perm.iter().enumerate() {
        if (0..n).any(|i| p[p[i] as usize] as usize != i) {
            return Err(CoxeterError::RootValidation(format!("s{} is not an involution", s + 1)));
        }
    }
    for s in 0..rank {
        for t in s + 1..rank {
            let m = matrix.get(s, t) as usize;
            // Order of st as a permutation.
            let mut cur: Vec<u16> = (0..n as u16).collect();
            let mut order = 0;
            loop {
                cur = cur
                    .iter()
                    .map(|&i| gen_perm[s][gen_perm[t][i as usize] as usize])
                    .collect();
                order += 1;
                if cur.iter().enumerate().all(|(i, &j)| i == j as usize) || order > m {
                    break;
                }
            }
            if order != m {
                return Err(CoxeterError::RootValidation(format!(
                    "s{}s{} has order {order}, expected {m}",
                    s + 1,
                    t + 1
                )));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::parse::parse_type;

    fn group(t: &str) -> FiniteGroup {
        FiniteGroup::build(&parse_type(t).unwrap().matrix).unwrap()
    }

    #[test]
    fn orders() {
        for (t, n) in [
            ("A1", 2),
            ("A2", 6),
            ("A3", 24),
            ("B3", 48),
            ("D4", 192),
            ("F4", 1152),
            ("H3", 120),
            ("I2(7)", 14),
            ("G2", 12),
        ] {
            assert_eq!(group(t).order(), n, "{t}");
        }
    }

    #[test]
    fn tables_are_consistent() {
        let g = group("B3");
        for w in 0..g.order() as u32 {
            assert_eq!(g.from_word(g.word(w)), w);
            assert_eq!(g.inverse(g.inverse(w)), w);
            assert_eq!(g.multiply(w, g.inverse(w)), 0);
            for s in 0..3 {
                assert_eq!(g.lmul(s, g.lmul(s, w)), w);
                assert_eq!(g.rmul(w, s), g.multiply(w, g.lmul(s, 0)));
            }
        }
        assert_eq!(g.reflections().len(), g.num_positive_roots());
    }

    #[test]
    fn bruhat_interval_sizes() {
        let g = group("A2");
        let w0 = g.longest();
        assert_eq!(g.below()[w0 as usize].count_ones(..), 6);
        let s1 = g.from_word(&[0]);
        let s2 = g.from_word(&[1]);
        assert!(!g.bruhat_leq(s1, s2));
        assert!(g.bruhat_leq(s1, w0));
        assert!(g.bruhat_leq(0, s2));
    }

    #[test]
    fn affine_is_rejected() {
        let m = CoxeterMatrix::new(vec![vec![1, 3, 3], vec![3, 1, 3], vec![3, 3, 1]]).unwrap();
        assert!(matches!(FiniteGroup::build(&m), Err(CoxeterError::NotFinite)));
    }
}
