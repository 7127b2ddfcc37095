use std::cmp::Ordering;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use super::FieldElement;
use crate::error::{Error, Result};

/// Environment variable overriding the starting precision of sign decisions.
pub const PRECISION_ENV: &str = "DEGREE0_PRECISION_BITS";

const DEFAULT_PRECISION_BITS: u32 = 64;

/// Starting precision for [`FieldElement::sign`].
pub fn default_precision_bits() -> u32 {
    static BITS: OnceLock<u32> = OnceLock::new();
    *BITS.get_or_init(|| {
        std::env::var(PRECISION_ENV)
            .ok()
            .and_then(|v| v.trim().parse::<u32>().ok())
            .filter(|&b| b >= 1)
            .unwrap_or(DEFAULT_PRECISION_BITS)
    })
}

/// Closed interval `[lo / 2^scale, hi / 2^scale]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DyadicInterval {
    pub lo: BigInt,
    pub hi: BigInt,
    pub scale: u32,
}

impl DyadicInterval {
    fn point_zero(scale: u32) -> Self {
        DyadicInterval {
            lo: BigInt::zero(),
            hi: BigInt::zero(),
            scale,
        }
    }

    pub fn lo_rational(&self) -> BigRational {
        BigRational::new(self.lo.clone(), BigInt::from(1) << self.scale)
    }

    pub fn hi_rational(&self) -> BigRational {
        BigRational::new(self.hi.clone(), BigInt::from(1) << self.scale)
    }

    pub fn lo_f64(&self) -> f64 {
        self.lo_rational().to_f64().unwrap_or(f64::NAN)
    }

    pub fn hi_f64(&self) -> f64 {
        self.hi_rational().to_f64().unwrap_or(f64::NAN)
    }

    pub fn mid_f64(&self) -> f64 {
        (self.lo_f64() + self.hi_f64()) / 2.0
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub fn contains(&self, q: &BigRational) -> bool {
        &self.lo_rational() <= q && q <= &self.hi_rational()
    }

    pub fn width(&self) -> BigRational {
        self.hi_rational() - self.lo_rational()
    }
}

/// Axis-aligned complex box with dyadic endpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexBox {
    pub re: DyadicInterval,
    pub im: DyadicInterval,
}

impl ComplexBox {
    pub fn is_degenerate_zero(&self) -> bool {
        self.re.lo.is_zero() && self.re.hi.is_zero() && self.im.lo.is_zero() && self.im.hi.is_zero()
    }
}

fn ceil_log2(q: &BigRational) -> u32 {
    // smallest e >= 0 with q <= 2^e
    let mut e = 0u32;
    let mut bound = BigRational::from_integer(1.into());
    let two = BigRational::from_integer(2.into());
    while &bound < q {
        bound *= &two;
        e += 1;
    }
    e
}

fn floor_scaled(q: &BigRational, scale: u32) -> BigInt {
    (q * BigRational::from_integer(BigInt::from(1) << scale)).floor().to_integer()
}

fn ceil_scaled(q: &BigRational, scale: u32) -> BigInt {
    (q * BigRational::from_integer(BigInt::from(1) << scale)).ceil().to_integer()
}

impl FieldElement {
    /// Interval enclosure of the exact value; each side has width at most
    /// `2^(1 - precision_bits)`.
    pub fn approx(&self, precision_bits: u32) -> ComplexBox {
        let p = precision_bits.max(1);
        let out_scale = p + 1;
        if self.is_zero() {
            return ComplexBox {
                re: DyadicInterval::point_zero(out_scale),
                im: DyadicInterval::point_zero(out_scale),
            };
        }
        let total: BigRational = self.coords().map(|(_, q)| q.abs()).sum();
        let q_bits = p + ceil_log2(&total) + 1;
        let denom = BigRational::from_integer(BigInt::from(1) << q_bits);
        let zero = BigRational::zero();
        let (mut re_lo, mut re_hi) = (zero.clone(), zero.clone());
        let (mut im_lo, mut im_hi) = (zero.clone(), zero);
        let ctx = self.context();
        let negatives = ctx.negative_mask();
        for (mask, c) in self.coords() {
            let product = ctx.subset_product(mask).abs();
            let scaled = &product << (2 * q_bits as usize);
            let root = scaled.sqrt();
            let exact = &root * &root == scaled;
            let lo = BigRational::from_integer(root.clone()) / &denom;
            let hi = if exact {
                lo.clone()
            } else {
                BigRational::from_integer(root + 1) / &denom
            };
            // sqrt of a negative radicand is i * sqrt(|d|)
            let unit = (mask & negatives).count_ones() % 4;
            let (tlo, thi) = if c.is_negative() {
                (c * &hi, c * &lo)
            } else {
                (c * &lo, c * &hi)
            };
            match unit {
                0 => {
                    re_lo += tlo;
                    re_hi += thi;
                }
                1 => {
                    im_lo += tlo;
                    im_hi += thi;
                }
                2 => {
                    re_lo -= thi;
                    re_hi -= tlo;
                }
                _ => {
                    im_lo -= thi;
                    im_hi -= tlo;
                }
            }
        }
        ComplexBox {
            re: DyadicInterval {
                lo: floor_scaled(&re_lo, out_scale),
                hi: ceil_scaled(&re_hi, out_scale),
                scale: out_scale,
            },
            im: DyadicInterval {
                lo: floor_scaled(&im_lo, out_scale),
                hi: ceil_scaled(&im_hi, out_scale),
                scale: out_scale,
            },
        }
    }

    /// Exact sign of a real element, refining the enclosure until it
    /// excludes zero.
    pub fn sign(&self) -> Result<i8> {
        if !self.is_real() {
            return Err(Error::NotReal);
        }
        if self.is_zero() {
            return Ok(0);
        }
        if let Some(q) = self.as_rational() {
            return Ok(if q.is_positive() { 1 } else { -1 });
        }
        let mut bits = default_precision_bits();
        loop {
            let b = self.approx(bits);
            if b.re.lo.is_positive() {
                return Ok(1);
            }
            if b.re.hi.is_negative() {
                return Ok(-1);
            }
            bits = bits.saturating_mul(2);
        }
    }

    /// Compares two real elements exactly.
    pub fn cmp_real(&self, other: &Self) -> Result<Ordering> {
        Ok(match (self - other).sign()? {
            1 => Ordering::Greater,
            -1 => Ordering::Less,
            _ => Ordering::Equal,
        })
    }

    /// Center of the enclosure at 53 bits, for display only.
    pub fn to_f64_pair(&self) -> (f64, f64) {
        let b = self.approx(60);
        (b.re.mid_f64(), b.im.mid_f64())
    }
}
