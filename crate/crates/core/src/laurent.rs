//! Exact arithmetic in the ring `Z[v, v^-1]`.
//!
//! A [`LaurentPoly`] is stored as a sorted list of `(exponent, coefficient)`
//! pairs with strictly increasing exponents and no zero coefficients.
//! Coefficients are `i64`; every operation uses checked arithmetic and
//! panics on overflow instead of wrapping.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LaurentError {
    #[error("skew violation: {0} is not of the form m - bar(m) with m in v^-1 Z[v^-1]")]
    SkewViolation(LaurentPoly),
}

#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    terms: Vec<(i32, i64)>,
}

#[inline]
fn checked_add(a: i64, b: i64) -> i64 {
    a.checked_add(b).expect("LaurentPoly coefficient overflow")
}

#[inline]
fn checked_mul(a: i64, b: i64) -> i64 {
    a.checked_mul(b).expect("LaurentPoly coefficient overflow")
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: i64) -> Self {
        Self::monomial(c, 0)
    }

    /// `c * v^k`.
    pub fn monomial(c: i64, k: i32) -> Self {
        if c == 0 {
            Self::zero()
        } else {
            Self { terms: vec![(k, c)] }
        }
    }

    /// The indeterminate `v`.
    pub fn v() -> Self {
        Self::monomial(1, 1)
    }

    /// `v^-1`.
    pub fn v_inv() -> Self {
        Self::monomial(1, -1)
    }

    /// `v - v^-1`.
    pub fn v_minus_vinv() -> Self {
        Self::from_terms([(-1, -1), (1, 1)])
    }

    /// `v + v^-1`.
    pub fn v_plus_vinv() -> Self {
        Self::from_terms([(-1, 1), (1, 1)])
    }

    /// Builds a polynomial from arbitrary `(exponent, coefficient)` pairs.
    /// Repeated exponents are summed and zero coefficients dropped.
    pub fn from_terms<I: IntoIterator<Item = (i32, i64)>>(terms: I) -> Self {
        let mut terms: Vec<(i32, i64)> = terms.into_iter().collect();
        terms.sort_by_key(|&(e, _)| e);
        let mut out: Vec<(i32, i64)> = Vec::with_capacity(terms.len());
        for (e, c) in terms {
            match out.last_mut() {
                Some(last) if last.0 == e => last.1 = checked_add(last.1, c),
                _ => out.push((e, c)),
            }
        }
        out.retain(|&(_, c)| c != 0);
        Self { terms: out }
    }

    pub fn terms(&self) -> &[(i32, i64)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms == [(0, 1)]
    }

    pub fn coeff(&self, k: i32) -> i64 {
        match self.terms.binary_search_by_key(&k, |&(e, _)| e) {
            Ok(i) => self.terms[i].1,
            Err(_) => 0,
        }
    }

    pub fn min_degree(&self) -> Option<i32> {
        self.terms.first().map(|&(e, _)| e)
    }

    pub fn max_degree(&self) -> Option<i32> {
        self.terms.last().map(|&(e, _)| e)
    }

    /// Multiplication by `v^k`.
    pub fn shift(&self, k: i32) -> Self {
        Self {
            terms: self.terms.iter().map(|&(e, c)| (e + k, c)).collect(),
        }
    }

    pub fn scale(&self, c: i64) -> Self {
        if c == 0 {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|&(e, a)| (e, checked_mul(a, c))).collect(),
        }
    }

    /// The ring involution `v -> v^-1`.
    pub fn bar(&self) -> Self {
        Self {
            terms: self.terms.iter().rev().map(|&(e, c)| (-e, c)).collect(),
        }
    }

    /// Evaluation at `v = 1`.
    pub fn eval_one(&self) -> i64 {
        self.terms.iter().fold(0, |acc, &(_, c)| checked_add(acc, c))
    }

    /// Terms with exponent strictly below zero.
    pub fn negative_part(&self) -> Self {
        Self {
            terms: self.terms.iter().copied().filter(|&(e, _)| e < 0).collect(),
        }
    }

    /// Terms with exponent strictly above zero.
    pub fn positive_part(&self) -> Self {
        Self {
            terms: self.terms.iter().copied().filter(|&(e, _)| e > 0).collect(),
        }
    }

    /// True when every exponent is `< 0`, i.e. `self` lies in `v^-1 Z[v^-1]`.
    pub fn in_vinv_zvinv(&self) -> bool {
        self.terms.iter().all(|&(e, _)| e < 0)
    }

    /// True when every exponent is `> 0`, i.e. `self` lies in `v Z[v]`.
    pub fn in_v_zv(&self) -> bool {
        self.terms.iter().all(|&(e, _)| e > 0)
    }

    /// True when every exponent is even (`self` lies in `Z[v^2, v^-2]`).
    pub fn is_even(&self) -> bool {
        self.terms.iter().all(|&(e, _)| e % 2 == 0)
    }

    pub fn all_coefficients_nonnegative(&self) -> bool {
        self.terms.iter().all(|&(_, c)| c >= 0)
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Finds the unique `m` in `v^-1 Z[v^-1]` with `m - bar(m) = g`.
    pub fn solve_skew(g: &LaurentPoly) -> Result<LaurentPoly, LaurentError> {
        if g.coeff(0) != 0 || g.bar() != -g {
            return Err(LaurentError::SkewViolation(g.clone()));
        }
        Ok(g.negative_part())
    }

    fn merge(&self, other: &Self, sign: i64) -> Self {
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push((b[j].0, checked_mul(sign, b[j].1)));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = checked_add(a[i].1, checked_mul(sign, b[j].1));
                    if c != 0 {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend(b[j..].iter().map(|&(e, c)| (e, checked_mul(sign, c))));
        Self { terms: out }
    }

    fn product(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if let [(e, c)] = self.terms[..] {
            return Self {
                terms: other.terms.iter().map(|&(f, d)| (e + f, checked_mul(c, d))).collect(),
            };
        }
        if let [(e, c)] = other.terms[..] {
            return Self {
                terms: self.terms.iter().map(|&(f, d)| (e + f, checked_mul(c, d))).collect(),
            };
        }
        let lo = self.terms[0].0 + other.terms[0].0;
        let hi = self.terms[self.terms.len() - 1].0 + other.terms[other.terms.len() - 1].0;
        let mut dense = vec![0i64; (hi - lo + 1) as usize];
        for &(e, c) in &self.terms {
            for &(f, d) in &other.terms {
                let slot = &mut dense[(e + f - lo) as usize];
                *slot = checked_add(*slot, checked_mul(c, d));
            }
        }
        Self {
            terms: dense
                .into_iter()
                .enumerate()
                .filter(|&(_, c)| c != 0)
                .map(|(i, c)| (i as i32 + lo, c))
                .collect(),
        }
    }
}

impl From<i64> for LaurentPoly {
    fn from(c: i64) -> Self {
        Self::constant(c)
    }
}

impl Add<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.merge(rhs, 1)
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: LaurentPoly) -> LaurentPoly {
        self.merge(&rhs, 1)
    }
}

impl Sub<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.merge(rhs, -1)
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        self.merge(&rhs, -1)
    }
}

impl Mul<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.product(rhs)
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        self.product(&rhs)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale(-1)
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale(-1)
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        *self = self.merge(rhs, 1);
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        *self = self.merge(rhs, -1);
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        // highest degree first
        for (i, &(e, c)) in self.terms.iter().rev().enumerate() {
            let mag = c.unsigned_abs();
            if i == 0 {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else if c < 0 {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            match (e, mag) {
                (0, m) => write!(f, "{m}")?,
                (1, 1) => write!(f, "v")?,
                (1, m) => write!(f, "{m}v")?,
                (e, 1) => write!(f, "v^{e}")?,
                (e, m) => write!(f, "{m}v^{e}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.terms.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let terms: Vec<(i32, i64)> = Vec::deserialize(deserializer)?;
        if terms.windows(2).any(|w| w[0].0 >= w[1].0) {
            return Err(D::Error::custom("exponents must be strictly increasing"));
        }
        if terms.iter().any(|&(_, c)| c == 0) {
            return Err(D::Error::custom("zero coefficients are not stored"));
        }
        Ok(Self { terms })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(terms: &[(i32, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(terms.iter().copied())
    }

    #[test]
    fn difference_of_squares() {
        let a = LaurentPoly::v_minus_vinv();
        let b = LaurentPoly::v_plus_vinv();
        assert_eq!(&a * &b, p(&[(2, 1), (-2, -1)]));
    }

    #[test]
    fn identities() {
        let q = p(&[(3, 2), (-1, -5)]);
        assert_eq!(&q + &LaurentPoly::zero(), q);
        assert_eq!(&LaurentPoly::v_inv() * &LaurentPoly::v(), LaurentPoly::one());
        assert_eq!(&q - &q, LaurentPoly::zero());
    }

    #[test]
    fn bar_examples() {
        assert_eq!(p(&[(1, 1), (-3, 2)]).bar(), p(&[(-1, 1), (3, 2)]));
        assert_eq!(LaurentPoly::constant(7).bar(), LaurentPoly::constant(7));
        let q = p(&[(2, 3), (1, -1)]);
        assert_eq!(q.bar().bar(), q);
    }

    #[test]
    fn solve_skew_examples() {
        let g = LaurentPoly::v_minus_vinv();
        assert_eq!(LaurentPoly::solve_skew(&g).unwrap(), p(&[(-1, -1)]));
        assert_eq!(LaurentPoly::solve_skew(&LaurentPoly::zero()).unwrap(), LaurentPoly::zero());
        let g = p(&[(3, 2), (-3, -2)]);
        assert_eq!(LaurentPoly::solve_skew(&g).unwrap(), p(&[(-3, -2)]));
    }

    #[test]
    fn solve_skew_rejects_non_skew() {
        assert!(LaurentPoly::solve_skew(&LaurentPoly::v_plus_vinv()).is_err());
        assert!(LaurentPoly::solve_skew(&LaurentPoly::one()).is_err());
    }

    #[test]
    fn display_is_readable() {
        assert_eq!(p(&[(2, 1), (-2, -1)]).to_string(), "v^2 - v^-2");
        assert_eq!(p(&[(0, 1), (-1, 2)]).to_string(), "1 + 2v^-1");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
    }

    #[test]
    fn json_is_ordered_pairs() {
        let q = p(&[(2, 1), (-2, -1)]);
        let s = serde_json::to_string(&q).unwrap();
        assert_eq!(s, "[[-2,-1],[2,1]]");
        let back: LaurentPoly = serde_json::from_str(&s).unwrap();
        assert_eq!(back, q);
        assert!(serde_json::from_str::<LaurentPoly>("[[2,1],[-2,1]]").is_err());
        assert!(serde_json::from_str::<LaurentPoly>("[[0,0]]").is_err());
    }

    #[test]
    #[should_panic(expected = "overflow")]
    fn overflow_is_detected() {
        let big = LaurentPoly::constant(i64::MAX);
        let _ = &big + &LaurentPoly::one();
    }

    /// Dense oracle over exponents in [-OFF, OFF].
    const OFF: i32 = 40;

    fn dense(q: &LaurentPoly) -> Vec<i64> {
        let mut d = vec![0i64; (2 * OFF + 1) as usize];
        for &(e, c) in q.terms() {
            d[(e + OFF) as usize] += c;
        }
        d
    }

    fn dense_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
        let mut out = vec![0i64; a.len()];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                let k = i as i32 + j as i32 - OFF;
                if x != 0 && y != 0 {
                    out[k as usize] += x * y;
                }
            }
        }
        out
    }

    fn arb_poly() -> impl Strategy<Value = LaurentPoly> {
        prop::collection::vec((-20i32..=20, -9i64..=9), 0..8).prop_map(LaurentPoly::from_terms)
    }

    fn arb_neg_poly() -> impl Strategy<Value = LaurentPoly> {
        prop::collection::vec((-20i32..=-1, -9i64..=9), 0..8).prop_map(LaurentPoly::from_terms)
    }

    proptest! {
        #[test]
        fn bar_is_ring_automorphism(a in arb_poly(), b in arb_poly()) {
            prop_assert_eq!((&a * &b).bar(), &a.bar() * &b.bar());
            prop_assert_eq!((&a + &b).bar(), &a.bar() + &b.bar());
        }

        #[test]
        fn solve_skew_recovers_negative_part(m in arb_neg_poly()) {
            let g = &m - &m.bar();
            prop_assert_eq!(LaurentPoly::solve_skew(&g).unwrap(), m);
        }

        #[test]
        fn agrees_with_dense_oracle(a in arb_poly(), b in arb_poly()) {
            let (da, db) = (dense(&a), dense(&b));
            let sum: Vec<i64> = da.iter().zip(&db).map(|(x, y)| x + y).collect();
            let diff: Vec<i64> = da.iter().zip(&db).map(|(x, y)| x - y).collect();
            prop_assert_eq!(dense(&(&a + &b)), sum);
            prop_assert_eq!(dense(&(&a - &b)), diff);
            prop_assert_eq!(dense(&(&a * &b)), dense_mul(&da, &db));
            prop_assert!((&a * &b).terms().iter().all(|&(_, c)| c != 0));
        }
    }
}
