use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;

use super::FieldElement;
use crate::error::{Error, Result};

/// Default bound on the number of radicands, giving field dimension at most 256.
pub const DEFAULT_MAX_RADICANDS: usize = 8;

/// Hard limit: basis subsets are stored as `u32` bitmasks and the subset
/// product table is precomputed.
pub const HARD_MAX_RADICANDS: usize = 16;

/// A multi-quadratic field `Q(sqrt d_1, ..., sqrt d_k)`.
///
/// The radicands are distinct, pairwise coprime, square-free integers other
/// than `0` and `1`, kept sorted. A basis subset `S` is a bitmask over the
/// radicand list and stands for the product of the square roots in `S`,
/// where `sqrt(d)` for negative `d` is `i * sqrt(|d|)`.
#[derive(Clone)]
pub struct FieldContext {
    radicands: Vec<i64>,
    max_radicands: usize,
    negative_mask: u32,
    // products[S] = prod_{d in S} d
    products: Vec<BigInt>,
}

impl PartialEq for FieldContext {
    fn eq(&self, other: &Self) -> bool {
        self.radicands == other.radicands
    }
}

impl Eq for FieldContext {}

impl fmt::Debug for FieldContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldContext{:?}", self.radicands)
    }
}

fn is_square_free(d: i64) -> bool {
    let n = d.unsigned_abs();
    let mut p: u64 = 2;
    while p.saturating_mul(p) <= n {
        if n.is_multiple_of(p * p) {
            return false;
        }
        p += 1;
    }
    true
}

impl FieldContext {
    /// Builds a context with the default radicand bound.
    pub fn new(radicands: impl IntoIterator<Item = i64>) -> Result<Arc<Self>> {
        Self::with_bound(radicands, DEFAULT_MAX_RADICANDS)
    }

    /// The field of rationals.
    pub fn rationals() -> Arc<Self> {
        Self::new([]).expect("empty radicand list is valid")
    }

    pub fn with_bound(radicands: impl IntoIterator<Item = i64>, max: usize) -> Result<Arc<Self>> {
        let max = max.min(HARD_MAX_RADICANDS);
        let mut list: Vec<i64> = radicands.into_iter().collect();
        list.sort_unstable();
        list.dedup();
        if list.len() > max {
            return Err(Error::TooManyRadicands {
                count: list.len(),
                max,
            });
        }
        for &d in &list {
            if d == 0 || d == 1 || !is_square_free(d) {
                return Err(Error::InvalidRadicand(d));
            }
        }
        for (i, &a) in list.iter().enumerate() {
            for &b in &list[i + 1..] {
                if a.gcd(&b) != 1 {
                    return Err(Error::NotCoprime(a, b));
                }
            }
        }
        let negative_mask = list
            .iter()
            .enumerate()
            .filter(|(_, &d)| d < 0)
            .fold(0u32, |m, (j, _)| m | (1 << j));
        let dim = 1usize << list.len();
        let mut products = Vec::with_capacity(dim);
        products.push(BigInt::from(1));
        for d in &list {
            let half = products.len();
            for s in 0..half {
                let p = &products[s] * *d;
                products.push(p);
            }
        }
        Ok(Arc::new(FieldContext {
            radicands: list,
            max_radicands: max,
            negative_mask,
            products,
        }))
    }

    pub fn radicands(&self) -> &[i64] {
        &self.radicands
    }

    pub fn degree(&self) -> usize {
        self.radicands.len()
    }

    /// Dimension over the rationals, `2^k`.
    pub fn dim(&self) -> usize {
        1 << self.radicands.len()
    }

    pub fn max_radicands(&self) -> usize {
        self.max_radicands
    }

    pub fn index_of(&self, d: i64) -> Option<usize> {
        self.radicands.binary_search(&d).ok()
    }

    pub fn has_imaginary_unit(&self) -> bool {
        self.index_of(-1).is_some()
    }

    /// Product of the radicands in `mask`.
    pub fn subset_product(&self, mask: u32) -> &BigInt {
        &self.products[mask as usize]
    }

    /// True when the basis element for `mask` is purely imaginary.
    pub fn is_imaginary_subset(&self, mask: u32) -> bool {
        (mask & self.negative_mask).count_ones() % 2 == 1
    }

    pub(crate) fn negative_mask(&self) -> u32 {
        self.negative_mask
    }

    /// Radicands in `mask`, ascending.
    pub fn subset_radicands(&self, mask: u32) -> Vec<i64> {
        (0..self.radicands.len())
            .filter(|j| mask & (1 << j) != 0)
            .map(|j| self.radicands[j])
            .collect()
    }

    pub fn subset_key(&self, mask: u32) -> String {
        self.subset_radicands(mask)
            .iter()
            .map(|d| d.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }

    /// Bitmask for a list of radicands, or `None` if one is missing.
    pub fn mask_of(&self, radicands: &[i64]) -> Option<u32> {
        radicands
            .iter()
            .try_fold(0u32, |m, d| self.index_of(*d).map(|j| m | (1 << j)))
    }

    /// Smallest context containing both, if the union is still admissible.
    pub fn merge(a: &Arc<Self>, b: &Arc<Self>) -> Result<Arc<Self>> {
        if a == b || b.radicands.iter().all(|d| a.index_of(*d).is_some()) {
            return Ok(Arc::clone(a));
        }
        if a.radicands.iter().all(|d| b.index_of(*d).is_some()) {
            return Ok(Arc::clone(b));
        }
        let max = a.max_radicands.max(b.max_radicands);
        Self::with_bound(a.radicands.iter().chain(&b.radicands).copied(), max)
            .map_err(|_| Error::ContextMismatch(a.radicands.clone(), b.radicands.clone()))
    }

    /// Extends the context by one radicand.
    pub fn extend(self: &Arc<Self>, d: i64) -> Result<Arc<Self>> {
        if self.index_of(d).is_some() {
            return Ok(Arc::clone(self));
        }
        let max = self.max_radicands.max(self.radicands.len() + 1);
        Self::with_bound(self.radicands.iter().copied().chain([d]), max)
    }

    /// Translates a mask of `self` into the corresponding mask of `target`.
    pub(crate) fn remap_mask(&self, mask: u32, target: &FieldContext) -> Option<u32> {
        let mut out = 0u32;
        for j in 0..self.radicands.len() {
            if mask & (1 << j) != 0 {
                out |= 1 << target.index_of(self.radicands[j])?;
            }
        }
        Some(out)
    }

    pub fn zero(self: &Arc<Self>) -> FieldElement {
        FieldElement::zero(self)
    }

    pub fn one(self: &Arc<Self>) -> FieldElement {
        FieldElement::one(self)
    }

    pub fn int(self: &Arc<Self>, n: i64) -> FieldElement {
        FieldElement::from_rational(self, BigRational::from_integer(n.into()))
    }

    pub fn rational(self: &Arc<Self>, num: i64, den: i64) -> FieldElement {
        FieldElement::from_rational(self, BigRational::new(num.into(), den.into()))
    }

    /// `sqrt(d)` for a radicand `d` of this context. `sqrt(-1)` is `i`.
    pub fn sqrt(self: &Arc<Self>, d: i64) -> Result<FieldElement> {
        let j = self
            .index_of(d)
            .ok_or_else(|| Error::ContextMismatch(self.radicands.clone(), vec![d]))?;
        Ok(FieldElement::basis(self, 1 << j, BigRational::from_integer(1.into())))
    }

    /// The imaginary unit; panics if `-1` is not a radicand.
    pub fn i(self: &Arc<Self>) -> FieldElement {
        self.sqrt(-1).expect("context has no imaginary unit")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_radicands() {
        assert_eq!(FieldContext::new([4]).unwrap_err(), Error::InvalidRadicand(4));
        assert_eq!(FieldContext::new([0]).unwrap_err(), Error::InvalidRadicand(0));
        assert_eq!(FieldContext::new([1]).unwrap_err(), Error::InvalidRadicand(1));
        assert_eq!(FieldContext::new([6, 10]).unwrap_err(), Error::NotCoprime(6, 10));
        assert_eq!(FieldContext::new([-3, 3]).unwrap_err(), Error::NotCoprime(-3, 3));
        assert!(matches!(
            FieldContext::new([2, 3, 5, 7, 11, 13, 17, 19, 23]),
            Err(Error::TooManyRadicands { count: 9, max: 8 })
        ));
    }

    #[test]
    fn sorts_and_dedups() {
        let ctx = FieldContext::new([7, -1, 2, 7]).unwrap();
        assert_eq!(ctx.radicands(), &[-1, 2, 7]);
        assert_eq!(ctx.dim(), 8);
        assert_eq!(ctx.subset_key(0b101), "-1,7");
        assert_eq!(ctx.subset_product(0b111), &BigInt::from(-14));
        assert!(ctx.is_imaginary_subset(0b001));
        assert!(!ctx.is_imaginary_subset(0b110));
    }

    #[test]
    fn merge_contexts() {
        let a = FieldContext::new([-1, 2]).unwrap();
        let b = FieldContext::new([3]).unwrap();
        assert_eq!(FieldContext::merge(&a, &b).unwrap().radicands(), &[-1, 2, 3]);
        let c = FieldContext::new([6]).unwrap();
        assert!(matches!(
            FieldContext::merge(&a, &c),
            Err(Error::ContextMismatch(..))
        ));
    }
}
