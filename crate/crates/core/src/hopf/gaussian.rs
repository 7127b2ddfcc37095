//! Valuations of Gaussian rationals at Gaussian primes.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

const TRIAL_LIMIT: u64 = 1_000_000;

/// Gaussian integer `re + im i`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct GaussInt {
    pub re: BigInt,
    pub im: BigInt,
}

impl GaussInt {
    pub fn new(re: impl Into<BigInt>, im: impl Into<BigInt>) -> Self {
        GaussInt {
            re: re.into(),
            im: im.into(),
        }
    }

    pub fn norm(&self) -> BigInt {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    /// `self / p` if `p` divides `self` exactly.
    pub fn div_exact(&self, p: &GaussInt) -> Option<GaussInt> {
        let n = p.norm();
        // self * conj(p)
        let re = &self.re * &p.re + &self.im * &p.im;
        let im = &self.im * &p.re - &self.re * &p.im;
        if (&re % &n).is_zero() && (&im % &n).is_zero() {
            Some(GaussInt { re: re / &n, im: im / &n })
        } else {
            None
        }
    }
}

/// Prime factors of `n > 0` by trial division, or `None` if a cofactor is
/// too large to certify as prime.
pub fn factor_integer(n: &BigInt) -> Option<Vec<BigInt>> {
    let mut n = n.abs();
    let mut out = Vec::new();
    let mut p = 2u64;
    while p <= TRIAL_LIMIT && BigInt::from(p) * BigInt::from(p) <= n {
        let bp = BigInt::from(p);
        if (&n % &bp).is_zero() {
            out.push(bp.clone());
            while (&n % &bp).is_zero() {
                n /= &bp;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > BigInt::one() {
        // no factor up to the trial limit: prime if below its square
        if n > BigInt::from(TRIAL_LIMIT) * BigInt::from(TRIAL_LIMIT) {
            return None;
        }
        out.push(n);
    }
    Some(out)
}

/// `x + y i` with `x^2 + y^2 = p` for a prime `p = 1 mod 4` (Cornacchia).
fn two_squares(p: &BigInt) -> GaussInt {
    let exp = (p - 1u32) / 4u32;
    let mut c = BigInt::from(2);
    let t = loop {
        let t = c.modpow(&exp, p);
        if (&t * &t + 1u32) % p == BigInt::zero() {
            break t;
        }
        c += 1u32;
    };
    let (mut a, mut b) = (p.clone(), t);
    while &b * &b > *p {
        let r = &a % &b;
        a = b;
        b = r;
    }
    let rest = p - &b * &b;
    let y = rest.sqrt();
    debug_assert_eq!(&y * &y, rest);
    GaussInt { re: b, im: y }
}

/// Gaussian primes above the rational prime `p`, normalized to the first
/// quadrant, with the valuation of `p` itself at each.
fn primes_above(p: &BigInt) -> Vec<(GaussInt, u32)> {
    if p == &BigInt::from(2) {
        return vec![(GaussInt::new(1, 1), 2)];
    }
    if (p % 4u32).to_u32() == Some(3) {
        return vec![(GaussInt { re: p.clone(), im: BigInt::zero() }, 1)];
    }
    let g = two_squares(p);
    let conj = GaussInt { re: g.im.clone(), im: g.re.clone() };
    vec![(g, 1), (conj, 1)]
}

fn valuation(z: &GaussInt, p: &GaussInt) -> i64 {
    let mut z = z.clone();
    let mut v = 0;
    while let Some(q) = z.div_exact(p) {
        z = q;
        v += 1;
    }
    v
}

/// A nonzero Gaussian rational written as `z / d` with `d > 0`.
pub struct GaussRational {
    pub num: GaussInt,
    pub den: BigInt,
}

impl GaussRational {
    pub fn new(re: &BigRational, im: &BigRational) -> Self {
        let den = re.denom().lcm(im.denom());
        let scale = BigRational::from_integer(den.clone());
        GaussRational {
            num: GaussInt {
                re: (re * &scale).to_integer(),
                im: (im * &scale).to_integer(),
            },
            den,
        }
    }

    fn rational_primes(&self) -> Option<Vec<BigInt>> {
        let mut ps = factor_integer(&self.num.norm())?;
        ps.extend(factor_integer(&self.den)?);
        ps.sort();
        ps.dedup();
        Some(ps)
    }
}

/// Exponent vectors of nonzero Gaussian rationals over the union of their
/// Gaussian prime supports, or `None` if factoring failed.
pub fn exponent_vectors(xs: &[GaussRational]) -> Option<Vec<BTreeMap<GaussInt, i64>>> {
    let mut primes = Vec::new();
    for x in xs {
        primes.extend(x.rational_primes()?);
    }
    primes.sort();
    primes.dedup();
    let mut out = Vec::with_capacity(xs.len());
    for x in xs {
        let mut v = BTreeMap::new();
        for p in &primes {
            let vp_den = {
                let mut d = x.den.clone();
                let mut k = 0i64;
                while (&d % p).is_zero() {
                    d /= p;
                    k += 1;
                }
                k
            };
            for (pi, e) in primes_above(p) {
                let val = valuation(&x.num, &pi) - vp_den * e as i64;
                if val != 0 {
                    v.insert(pi, val);
                }
            }
        }
        out.push(v);
    }
    Some(out)
}
