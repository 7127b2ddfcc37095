//! Multiplicative dependence `alpha^m = delta^n` with `m, n` nonzero.
//!
//! For Gaussian rationals (including plain rationals) the question is
//! decided completely: `alpha^m = delta^n` forces the exponent vectors over
//! the Gaussian primes to be proportional, which pins `m : n`, and the
//! remaining unit quotient has order dividing 4. Elsewhere a bounded search
//! is run and a negative answer only covers the searched range.

use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::gaussian::{exponent_vectors, GaussRational};
use crate::error::{Error, Result};
use crate::field::FieldElement;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DependenceWitness {
    pub m: i64,
    pub n: i64,
}

impl DependenceWitness {
    /// Recomputes `alpha^m - delta^n` exactly.
    pub fn holds(&self, alpha: &FieldElement, delta: &FieldElement) -> bool {
        match (alpha.powi(self.m), delta.powi(self.n)) {
            (Ok(a), Ok(d)) => a == d,
            _ => false,
        }
    }

    pub fn swapped(&self) -> Self {
        DependenceWitness { m: self.n, n: self.m }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DependenceMethod {
    CompleteRational,
    CompleteGaussian,
    BoundedSearch,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DependenceOutcome {
    pub witness: Option<DependenceWitness>,
    pub method: DependenceMethod,
    /// False when `witness` is `None` only because the search bound ran out.
    pub complete: bool,
}

fn as_gaussian(x: &FieldElement) -> Option<GaussRational> {
    let ctx = x.context();
    let i_mask = ctx.index_of(-1).map(|j| 1u32 << j);
    let mut re = num_rational::BigRational::zero();
    let mut im = num_rational::BigRational::zero();
    for (mask, q) in x.coords() {
        if mask == 0 {
            re = q.clone();
        } else if Some(mask) == i_mask {
            im = q.clone();
        } else {
            return None;
        }
    }
    Some(GaussRational::new(&re, &im))
}

fn modulus_exceeds_one(x: &FieldElement) -> Result<bool> {
    Ok((x.norm_sq() - FieldElement::one(x.context())).sign()? == 1)
}

/// Decides whether `alpha^m = delta^n` for some nonzero `m, n`, returning
/// the minimal positive witness. `bound` limits `m` and `n` only when the
/// inputs are not Gaussian rationals.
pub fn mult_dependence(alpha: &FieldElement, delta: &FieldElement, bound: u64) -> Result<DependenceOutcome> {
    if !modulus_exceeds_one(alpha)? || !modulus_exceeds_one(delta)? {
        return Err(Error::NotInModuli("dependence needs |alpha|, |delta| > 1".into()));
    }
    if let (Some(a), Some(d)) = (as_gaussian(alpha), as_gaussian(delta)) {
        let method = if alpha.is_rational() && delta.is_rational() {
            DependenceMethod::CompleteRational
        } else {
            DependenceMethod::CompleteGaussian
        };
        if let Some(vs) = exponent_vectors(&[a, d]) {
            return Ok(DependenceOutcome {
                witness: from_exponents(alpha, delta, &vs[0], &vs[1]),
                method,
                complete: true,
            });
        }
    }
    let witness = bounded_search(alpha, delta, bound);
    Ok(DependenceOutcome {
        complete: witness.is_some(),
        witness,
        method: DependenceMethod::BoundedSearch,
    })
}

fn from_exponents<K: Ord>(
    alpha: &FieldElement,
    delta: &FieldElement,
    va: &std::collections::BTreeMap<K, i64>,
    vd: &std::collections::BTreeMap<K, i64>,
) -> Option<DependenceWitness> {
    // |alpha| > 1 rules out units, so both vectors are nonzero
    let (key, &a0) = va.iter().next()?;
    let &d0 = vd.get(key)?;
    if va.len() != vd.len() || a0.signum() != d0.signum() {
        return None;
    }
    // m * va = n * vd  with  m / n = d0 / a0
    let g = a0.gcd(&d0);
    let (m0, n0) = ((d0 / g).abs(), (a0 / g).abs());
    for (k, &a) in va {
        let &d = vd.get(k)?;
        if m0 * a != n0 * d {
            return None;
        }
    }
    // alpha^m0 / delta^n0 is a unit of Z[i]
    (1..=4)
        .map(|k| DependenceWitness { m: k * m0, n: k * n0 })
        .find(|w| w.holds(alpha, delta))
}

fn log_abs_and_arg(x: &FieldElement) -> (f64, f64) {
    let (re, im) = x.to_f64_pair();
    (re.hypot(im).ln(), im.atan2(re))
}

/// Scans `1 <= m <= bound` in increasing order; for each `m` the only
/// candidate `n` is the one matching `m log|alpha| = n log|delta|`. A
/// floating-point filter on moduli and arguments screens candidates; every
/// survivor is checked exactly.
fn bounded_search(alpha: &FieldElement, delta: &FieldElement, bound: u64) -> Option<DependenceWitness> {
    let (la, aa) = log_abs_and_arg(alpha);
    let (ld, ad) = log_abs_and_arg(delta);
    let tau = std::f64::consts::TAU;
    for m in 1..=bound as i64 {
        let target = m as f64 * la / ld;
        let lo = target.floor().max(1.0) as i64;
        for n in lo..=lo + 1 {
            if n < 1 || n as u64 > bound {
                continue;
            }
            let modulus_gap = (m as f64 * la - n as f64 * ld).abs();
            let turn = (m as f64 * aa - n as f64 * ad) / tau;
            let arg_gap = (turn - turn.round()).abs();
            if modulus_gap > 1e-6 * (1.0 + m as f64 * la) || arg_gap > 1e-6 * (1.0 + m as f64) {
                continue;
            }
            let w = DependenceWitness { m, n };
            if w.holds(alpha, delta) {
                return Some(w);
            }
        }
    }
    None
}
