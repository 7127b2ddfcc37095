use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::FieldContext;
use crate::error::{Error, Result};

/// An exact element of a multi-quadratic field.
///
/// Coordinates are stored sparsely by basis subset; absent subsets are zero
/// and stored coordinates are never zero, so equality of values is equality
/// of coordinate maps.
#[derive(Clone)]
pub struct FieldElement {
    ctx: Arc<FieldContext>,
    coords: BTreeMap<u32, BigRational>,
}

/// Decomposition `re + i * im` with both parts real.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexSplit {
    pub re: FieldElement,
    pub im: FieldElement,
}

impl FieldElement {
    pub fn zero(ctx: &Arc<FieldContext>) -> Self {
        FieldElement {
            ctx: Arc::clone(ctx),
            coords: BTreeMap::new(),
        }
    }

    pub fn one(ctx: &Arc<FieldContext>) -> Self {
        Self::from_rational(ctx, BigRational::one())
    }

    pub fn from_rational(ctx: &Arc<FieldContext>, q: BigRational) -> Self {
        Self::basis(ctx, 0, q)
    }

    pub fn from_integer(ctx: &Arc<FieldContext>, n: impl Into<BigInt>) -> Self {
        Self::from_rational(ctx, BigRational::from_integer(n.into()))
    }

    /// `coeff` times the basis element of `mask`.
    pub fn basis(ctx: &Arc<FieldContext>, mask: u32, coeff: BigRational) -> Self {
        let mut coords = BTreeMap::new();
        if !coeff.is_zero() {
            coords.insert(mask, coeff);
        }
        FieldElement {
            ctx: Arc::clone(ctx),
            coords,
        }
    }

    /// Builds an element from `(mask, coefficient)` pairs; repeated masks add up.
    pub fn from_coords(
        ctx: &Arc<FieldContext>,
        coords: impl IntoIterator<Item = (u32, BigRational)>,
    ) -> Self {
        let mut map: BTreeMap<u32, BigRational> = BTreeMap::new();
        let limit = ctx.dim() as u32;
        for (mask, q) in coords {
            assert!(mask < limit, "basis mask {mask} out of range");
            *map.entry(mask).or_insert_with(BigRational::zero) += q;
        }
        map.retain(|_, q| !q.is_zero());
        FieldElement {
            ctx: Arc::clone(ctx),
            coords: map,
        }
    }

    pub fn context(&self) -> &Arc<FieldContext> {
        &self.ctx
    }

    /// Nonzero coordinates, by ascending basis mask.
    pub fn coords(&self) -> impl Iterator<Item = (u32, &BigRational)> {
        self.coords.iter().map(|(m, q)| (*m, q))
    }

    pub fn coord(&self, mask: u32) -> BigRational {
        self.coords.get(&mask).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_rational().is_some_and(|q| q.is_one())
    }

    pub fn is_rational(&self) -> bool {
        self.coords.keys().all(|&m| m == 0)
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        if self.is_rational() {
            Some(self.coord(0))
        } else {
            None
        }
    }

    /// Integer value, if the element is a rational integer.
    pub fn as_integer(&self) -> Option<BigInt> {
        self.as_rational()
            .filter(|q| q.is_integer())
            .map(|q| q.to_integer())
    }

    /// True if every nonzero coordinate sits on a real basis element.
    pub fn is_real(&self) -> bool {
        self.coords.keys().all(|&m| !self.ctx.is_imaginary_subset(m))
    }

    /// Re-expresses the element in a larger context.
    pub fn promote(&self, target: &Arc<FieldContext>) -> Result<Self> {
        if &self.ctx == target {
            return Ok(self.clone());
        }
        let mut coords = BTreeMap::new();
        for (&m, q) in &self.coords {
            let mapped = self.ctx.remap_mask(m, target).ok_or_else(|| {
                Error::ContextMismatch(
                    self.ctx.radicands().to_vec(),
                    target.radicands().to_vec(),
                )
            })?;
            coords.insert(mapped, q.clone());
        }
        Ok(FieldElement {
            ctx: Arc::clone(target),
            coords,
        })
    }

    /// Brings two elements into a common context.
    pub fn align(a: &Self, b: &Self) -> Result<(Self, Self)> {
        if a.ctx == b.ctx {
            return Ok((a.clone(), b.clone()));
        }
        let ctx = FieldContext::merge(&a.ctx, &b.ctx)?;
        Ok((a.promote(&ctx)?, b.promote(&ctx)?))
    }

    fn combine(&self, other: &Self, negate: bool) -> Result<Self> {
        if self.ctx != other.ctx {
            let (a, b) = Self::align(self, other)?;
            return a.combine(&b, negate);
        }
        let mut coords = self.coords.clone();
        for (&m, q) in &other.coords {
            let entry = coords.entry(m).or_insert_with(BigRational::zero);
            if negate {
                *entry -= q;
            } else {
                *entry += q;
            }
        }
        coords.retain(|_, q| !q.is_zero());
        Ok(FieldElement {
            ctx: Arc::clone(&self.ctx),
            coords,
        })
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.combine(other, false)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.combine(other, true)
    }

    /// Product, using `e_S * e_T = (prod_{d in S and T} d) * e_{S xor T}`.
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        if self.ctx != other.ctx {
            let (a, b) = Self::align(self, other)?;
            return a.checked_mul(&b);
        }
        let mut coords: BTreeMap<u32, BigRational> = BTreeMap::new();
        for (&s, a) in &self.coords {
            for (&t, b) in &other.coords {
                let mut c = a * b;
                let shared = s & t;
                if shared != 0 {
                    c *= BigRational::from_integer(self.ctx.subset_product(shared).clone());
                }
                *coords.entry(s ^ t).or_insert_with(BigRational::zero) += c;
            }
        }
        coords.retain(|_, q| !q.is_zero());
        Ok(FieldElement {
            ctx: Arc::clone(&self.ctx),
            coords,
        })
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        self.checked_mul(&other.inverse()?)
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        if q.is_zero() {
            return Self::zero(&self.ctx);
        }
        FieldElement {
            ctx: Arc::clone(&self.ctx),
            coords: self.coords.iter().map(|(m, c)| (*m, c * q)).collect(),
        }
    }

    pub fn scale_int(&self, n: &BigInt) -> Self {
        self.scale(&BigRational::from_integer(n.clone()))
    }

    /// The field automorphism `sqrt(d_j) -> -sqrt(d_j)` for radicand index `j`.
    pub fn flip(&self, j: usize) -> Self {
        let bit = 1u32 << j;
        FieldElement {
            ctx: Arc::clone(&self.ctx),
            coords: self
                .coords
                .iter()
                .map(|(&m, q)| (m, if m & bit != 0 { -q } else { q.clone() }))
                .collect(),
        }
    }

    /// Complex conjugation: negates every imaginary basis element.
    pub fn conjugate(&self) -> Self {
        FieldElement {
            ctx: Arc::clone(&self.ctx),
            coords: self
                .coords
                .iter()
                .map(|(&m, q)| {
                    if self.ctx.is_imaginary_subset(m) {
                        (m, -q)
                    } else {
                        (m, q.clone())
                    }
                })
                .collect(),
        }
    }

    /// `|x|^2 = x * conj(x)`, always real and nonnegative.
    pub fn norm_sq(&self) -> Self {
        self * &self.conjugate()
    }

    /// Multiplicative inverse by norming down the quadratic tower: each
    /// automorphism step multiplies by a conjugate and removes one radicand.
    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut rest = self.clone();
        let mut acc = Self::one(&self.ctx);
        for j in 0..self.ctx.degree() {
            let bit = 1u32 << j;
            if rest.coords.keys().all(|m| m & bit == 0) {
                continue;
            }
            let c = rest.flip(j);
            acc = &acc * &c;
            rest = &rest * &c;
        }
        let norm = rest
            .as_rational()
            .expect("norm down the full tower is rational");
        debug_assert!(!norm.is_zero());
        Ok(acc.scale(&norm.recip()))
    }

    pub fn pow(&self, exp: u64) -> Self {
        let mut result = Self::one(&self.ctx);
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Integer power; negative exponents invert first.
    pub fn powi(&self, exp: i64) -> Result<Self> {
        if exp >= 0 {
            Ok(self.pow(exp as u64))
        } else {
            Ok(self.inverse()?.pow(exp.unsigned_abs()))
        }
    }

    /// Splits into real and imaginary parts. If the element has imaginary
    /// coordinates and the context lacks `-1`, it is adjoined.
    pub fn split(&self) -> Result<ComplexSplit> {
        let ctx = if self.is_real() {
            Arc::clone(&self.ctx)
        } else {
            self.ctx.extend(-1)?
        };
        let x = self.promote(&ctx)?;
        let iu = ctx.index_of(-1).map(|j| 1u32 << j);
        let mut re = BTreeMap::new();
        let mut im: BTreeMap<u32, BigRational> = BTreeMap::new();
        for (&m, q) in &x.coords {
            if !ctx.is_imaginary_subset(m) {
                re.insert(m, q.clone());
                continue;
            }
            let iu = iu.expect("imaginary coordinate implies -1 in context");
            // e_S / i
            if m & iu != 0 {
                *im.entry(m ^ iu).or_insert_with(BigRational::zero) += q;
            } else {
                *im.entry(m | iu).or_insert_with(BigRational::zero) -= q;
            }
        }
        im.retain(|_, q| !q.is_zero());
        Ok(ComplexSplit {
            re: FieldElement {
                ctx: Arc::clone(&ctx),
                coords: re,
            },
            im: FieldElement { ctx, coords: im },
        })
    }

    pub fn real_part(&self) -> Result<Self> {
        Ok(self.split()?.re)
    }

    pub fn imag_part(&self) -> Result<Self> {
        Ok(self.split()?.im)
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        if self.ctx == other.ctx {
            return self.coords == other.coords;
        }
        match Self::align(self, other) {
            Ok((a, b)) => a.coords == b.coords,
            Err(_) => false,
        }
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coords.is_empty() {
            return write!(f, "0");
        }
        for (n, (&m, q)) in self.coords.iter().enumerate() {
            let neg = q.is_negative();
            if n > 0 {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            } else if neg {
                write!(f, "-")?;
            }
            let a = q.abs();
            if m == 0 {
                write!(f, "{a}")?;
                continue;
            }
            if !a.is_one() {
                write!(f, "{a}*")?;
            }
            let parts: Vec<String> = self
                .ctx
                .subset_radicands(m)
                .iter()
                .map(|d| if *d == -1 { "i".to_string() } else { format!("sqrt({d})") })
                .collect();
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                self.$checked(rhs)
                    .unwrap_or_else(|e| panic!("incompatible field contexts: {e}"))
            }
        }
        impl $trait<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                (&self).$method(rhs)
            }
        }
        impl $trait<FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement {
            ctx: Arc::clone(&self.ctx),
            coords: self.coords.iter().map(|(m, q)| (*m, -q)).collect(),
        }
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(r: &[i64]) -> Arc<FieldContext> {
        FieldContext::new(r.iter().copied()).unwrap()
    }

    #[test]
    fn sqrt2_times_sqrt3_is_sqrt6() {
        let k = ctx(&[2, 3]);
        let p = k.sqrt(2).unwrap() * k.sqrt(3).unwrap();
        assert_eq!(p.coords().collect::<Vec<_>>(), vec![(0b11, &BigRational::one())]);
    }

    #[test]
    fn imaginary_products() {
        let k = ctx(&[-1, 3, 5]);
        let i = k.i();
        let a = &i * &k.sqrt(5).unwrap();
        let b = &i * &k.sqrt(3).unwrap();
        let expected = -(k.sqrt(3).unwrap() * k.sqrt(5).unwrap());
        assert_eq!(a * b, expected);
        assert_eq!(&i * &i, k.int(-1));
    }

    #[test]
    fn sqrt2_squared_minus_two_is_zero() {
        let k = ctx(&[2]);
        let s = k.sqrt(2).unwrap();
        assert!((&s * &s - k.int(2)).is_zero());
    }

    #[test]
    fn inverses() {
        let k = ctx(&[2]);
        let s = k.sqrt(2).unwrap();
        assert_eq!(s.inverse().unwrap(), s.scale(&BigRational::new(1.into(), 2.into())));
        let x = k.one() + &s;
        assert_eq!(x.inverse().unwrap(), k.int(-1) + &s);
        assert_eq!(k.zero().inverse().unwrap_err(), Error::DivisionByZero);
    }

    #[test]
    fn inverse_in_larger_field() {
        let k = ctx(&[-1, 2, 3, 5]);
        let x = k.int(3) + k.sqrt(2).unwrap() * k.i() - k.sqrt(3).unwrap() * k.sqrt(5).unwrap()
            + k.rational(1, 7) * k.i() * k.sqrt(5).unwrap();
        assert!((&x * &x.inverse().unwrap()).is_one());
    }

    #[test]
    fn conjugation() {
        let k = ctx(&[-1, 2, 5]);
        let i5 = k.i() * k.sqrt(5).unwrap();
        assert_eq!(i5.conjugate(), -&i5);
        assert_eq!(k.sqrt(2).unwrap().conjugate(), k.sqrt(2).unwrap());
        let nsq = (k.int(1) + &i5).norm_sq();
        assert_eq!(nsq, k.int(6));
    }

    #[test]
    fn split_parts() {
        let k = ctx(&[-1, 2]);
        let x = k.int(3) + k.i() * k.sqrt(2).unwrap().scale(&BigRational::from_integer(4.into()));
        let s = x.split().unwrap();
        assert_eq!(s.re, k.int(3));
        assert_eq!(s.im, k.sqrt(2).unwrap().scale(&BigRational::from_integer(4.into())));
    }

    #[test]
    fn split_with_other_negative_radicand() {
        let k = ctx(&[-5]);
        let x = k.sqrt(-5).unwrap();
        let s = x.split().unwrap();
        assert!(s.re.is_zero());
        // im = sqrt(5), stored as -(i*sqrt(-5))
        assert_eq!(&s.im * &s.im, k.int(5));
        assert!(s.im.is_real());
    }

    #[test]
    fn auto_merge_contexts() {
        let a = ctx(&[2]).sqrt(2).unwrap();
        let b = ctx(&[3]).sqrt(3).unwrap();
        let p = &a * &b;
        assert_eq!(p.context().radicands(), &[2, 3]);
        assert!(a.checked_mul(&ctx(&[6]).sqrt(6).unwrap()).is_err());
    }

    #[test]
    fn display() {
        let k = ctx(&[-1, 5]);
        let x = k.rational(1, 2) + k.i() * k.sqrt(5).unwrap().scale(&BigRational::from_integer(3.into()));
        assert_eq!(x.to_string(), "1/2 + 3*i*sqrt(5)");
    }
}
