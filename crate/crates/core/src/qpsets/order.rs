//! Bruhat order on a quasiparabolic set: the closure of `x → rx` whenever
//! `ht(x) < ht(rx)`.

use fixedbitset::FixedBitSet;

use super::ScaledWSet;

#[derive(Clone, Debug)]
pub struct XOrder {
    /// `below[y]` is `{x : x ≤ y}`.
    below: Vec<FixedBitSet>,
}

impl XOrder {
    pub(super) fn compute(set: &ScaledWSet) -> XOrder {
        let g = set.system().finite();
        let refl: Vec<Vec<u8>> = g.reflections().iter().map(|&r| g.word(r).to_vec()).collect();
        let n = set.len();
        let ext = set.linear_extension();
        let mut below: Vec<FixedBitSet> = vec![FixedBitSet::with_capacity(n); n];
        for &y in &ext {
            let mut b = FixedBitSet::with_capacity(n);
            b.insert(y as usize);
            for r in &refl {
                let x = set.act_word(r, y).expect("finite carrier");
                if set.height2(x) < set.height2(y) {
                    b.union_with(&below[x as usize]);
                }
            }
            below[y as usize] = b;
        }
        XOrder { below }
    }

    pub fn leq(&self, x: u32, y: u32) -> bool {
        self.below[y as usize].contains(x as usize)
    }

    pub fn lt(&self, x: u32, y: u32) -> bool {
        x != y && self.leq(x, y)
    }

    pub fn below(&self, y: u32) -> impl Iterator<Item = u32> + '_ {
        self.below[y as usize].ones().map(|i| i as u32)
    }

    pub fn len(&self) -> usize {
        self.below.len()
    }

    pub fn is_empty(&self) -> bool {
        self.below.is_empty()
    }

    /// Lower covers of `y`: maximal elements of `{x < y}`.
    pub fn lower_covers(&self, y: u32) -> Vec<u32> {
        let strict: Vec<u32> = self.below(y).filter(|&x| x != y).collect();
        strict
            .iter()
            .copied()
            .filter(|&x| !strict.iter().any(|&z| z != x && self.leq(x, z)))
            .collect()
    }

    /// Every cover drops `height2` by exactly 2, so all maximal chains in an
    /// interval `[x, y]` have length `ht(y) − ht(x)`. Returns a bad cover.
    pub fn check_graded(&self, set: &ScaledWSet) -> Result<(), (u32, u32)> {
        for y in 0..self.len() as u32 {
            for x in self.lower_covers(y) {
                if set.height2(y) - set.height2(x) != 2 {
                    return Err((x, y));
                }
            }
        }
        Ok(())
    }

    /// Pairs `x < y`, for export.
    pub fn relations(&self) -> Vec<(u32, u32)> {
        let mut out = Vec::new();
        for y in 0..self.len() as u32 {
            for x in self.below(y) {
                if x != y {
                    out.push((x, y));
                }
            }
        }
        out
    }
}
