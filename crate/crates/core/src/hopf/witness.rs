//! Meromorphic functions on `C^2` invariant under `z -> t z`, and an exact
//! check of the invariance `f(t z) = f(z)`.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{HopfClass, HopfParam};
use crate::error::{Error, Result};
use crate::field::{format_rational, FieldContext, FieldElement};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum WitnessFunction {
    /// `z1^m / z2^n`, in coordinates diagonalizing `t`.
    PowerQuotient { m: i64, n: i64 },
    /// `(z1 + 2 z2 + c1) / (z1 + 2 z2 + c2)`.
    LinearQuotient { c1: FieldElement, c2: FieldElement },
}

impl WitnessFunction {
    pub fn describe(&self) -> String {
        fn power(var: &str, e: i64) -> String {
            if e == 1 {
                var.to_string()
            } else {
                format!("{var}^{e}")
            }
        }
        match self {
            WitnessFunction::PowerQuotient { m, n } => {
                format!("{} / {}", power("z1", *m), power("z2", *n))
            }
            WitnessFunction::LinearQuotient { c1, c2 } => {
                format!("(z1 + 2*z2{}) / (z1 + 2*z2{})", offset(c1), offset(c2))
            }
        }
    }

    /// The linear-fractional function attached to the Jordan block with
    /// eigenvalue `alpha`: `c1 = -(2 a^2 + 9 a) / 3`, `c2 = (2 a^2 + 15 a) / (3 (a - 1))`.
    pub fn jordan(alpha: &FieldElement) -> Result<Self> {
        let ctx = alpha.context();
        let a2 = alpha * alpha;
        let c1 = -(ctx.int(2) * &a2 + ctx.int(9) * alpha) * ctx.rational(1, 3);
        let c2 = (ctx.int(2) * &a2 + ctx.int(15) * alpha)
            .checked_div(&(ctx.int(3) * (alpha - ctx.one())))?;
        Ok(WitnessFunction::LinearQuotient { c1, c2 })
    }
}

fn offset(c: &FieldElement) -> String {
    match c.as_rational() {
        Some(q) if q.is_zero() => String::new(),
        Some(q) if q.is_negative() => format!(" - {}", format_rational(&-q)),
        Some(q) => format!(" + {}", format_rational(&q)),
        None => format!(" + ({c})"),
    }
}

/// Polynomial in `z1, z2` with field coefficients, keyed by exponents.
#[derive(Clone, Debug)]
struct Poly {
    ctx: Arc<FieldContext>,
    terms: BTreeMap<(u32, u32), FieldElement>,
}

impl Poly {
    fn linear(ctx: &Arc<FieldContext>, a1: FieldElement, a2: FieldElement, c: FieldElement) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert((1, 0), a1);
        terms.insert((0, 1), a2);
        terms.insert((0, 0), c);
        Poly { ctx: Arc::clone(ctx), terms }.trimmed()
    }

    fn trimmed(mut self) -> Self {
        self.terms.retain(|_, c| !c.is_zero());
        self
    }

    fn mul(&self, other: &Poly) -> Poly {
        let mut terms: BTreeMap<(u32, u32), FieldElement> = BTreeMap::new();
        for (&(a, b), x) in &self.terms {
            for (&(c, d), y) in &other.terms {
                let e = terms
                    .entry((a + c, b + d))
                    .or_insert_with(|| FieldElement::zero(&self.ctx));
                *e = &*e + x * y;
            }
        }
        Poly { ctx: Arc::clone(&self.ctx), terms }.trimmed()
    }

    fn sub(&self, other: &Poly) -> Poly {
        let mut terms = self.terms.clone();
        for (k, y) in &other.terms {
            let e = terms.entry(*k).or_insert_with(|| FieldElement::zero(&self.ctx));
            *e = &*e - y;
        }
        Poly { ctx: Arc::clone(&self.ctx), terms }.trimmed()
    }

    /// Substitutes `z -> t z`.
    fn linear_substitute(lin: [&FieldElement; 3], t: &HopfParam) -> Poly {
        let [a1, a2, c] = lin;
        let ctx = t.context();
        // a1 (alpha z1 + beta z2) + a2 (gamma z1 + delta z2) + c
        Poly::linear(
            ctx,
            a1 * t.alpha() + a2 * t.gamma(),
            a1 * t.beta() + a2 * t.delta(),
            c.clone(),
        )
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

/// Decides `f(t z) = f(z)` as an identity of rational functions.
///
/// `LinearQuotient` is cross-multiplied with `t` applied to `(z1, z2)` and
/// every coefficient compared. `PowerQuotient` is checked in coordinates
/// where `t` is diagonal: directly when `t` is diagonal, through the exact
/// eigenvalues otherwise; a non-diagonalizable `t` never passes. Constant
/// functions never pass.
pub fn verify_witness(f: &WitnessFunction, t: &HopfParam) -> Result<bool> {
    let ctx = t.context();
    match f {
        WitnessFunction::PowerQuotient { m, n } => {
            if *m == 0 || *n == 0 {
                return Ok(false);
            }
            let (l1, l2) = if t.beta().is_zero() && t.gamma().is_zero() {
                (t.alpha().clone(), t.delta().clone())
            } else {
                if t.discriminant().is_zero() {
                    return Ok(false);
                }
                match t.eigenvalues() {
                    Some(pair) => pair,
                    None => return Ok(false),
                }
            };
            // f(tz) = (l1^m / l2^n) f(z)
            match (l1.powi(*m), l2.powi(*n)) {
                (Ok(a), Ok(b)) => Ok(a == b),
                _ => Ok(false),
            }
        }
        WitnessFunction::LinearQuotient { c1, c2 } => {
            let c1 = c1.promote(&FieldContext::merge(ctx, c1.context())?)?;
            let c2 = c2.promote(&FieldContext::merge(ctx, c2.context())?)?;
            if c1 == c2 {
                return Ok(false);
            }
            let one = FieldElement::one(ctx);
            let two = ctx.int(2);
            let num = Poly::linear(ctx, one.clone(), two.clone(), c1.clone());
            let den = Poly::linear(ctx, one.clone(), two.clone(), c2.clone());
            let num_t = Poly::linear_substitute([&one, &two, &c1], t);
            let den_t = Poly::linear_substitute([&one, &two, &c2], t);
            Ok(num_t.mul(&den).sub(&num.mul(&den_t)).is_zero())
        }
    }
}

/// Invariant function for a degree-one Hopf surface.
pub fn make_witness(
    t: &HopfParam,
    class: HopfClass,
    dependence: Option<&super::DependenceWitness>,
) -> Result<WitnessFunction> {
    match class {
        HopfClass::M1 => Ok(WitnessFunction::PowerQuotient { m: 1, n: 1 }),
        HopfClass::M2 => WitnessFunction::jordan(&t.sigma()),
        HopfClass::M0 => dependence
            .map(|w| WitnessFunction::PowerQuotient { m: w.m, n: w.n })
            .ok_or(Error::NoWitnessForDegree0),
        HopfClass::NonDiagonalizableOther => Err(Error::NoWitnessForDegree0),
    }
}
