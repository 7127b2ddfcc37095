//! K3 surfaces through their period point `lambda` on the quadric
//! `A(z, z) = 0` of the intersection form on `H^2`.
//!
//! A nonconstant meromorphic function yields a nontrivial line bundle, whose
//! Chern class is an integer vector `m != 0` with `A(lambda, m) = 0`. All such
//! `m` form one integer kernel, so a trivial kernel certifies degree zero.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{FieldContext, FieldElement};
use crate::linalg::{field_row_to_rational_system, forms, integer_kernel, is_symmetric_int, signature, Inertia, IntegerLattice};
use crate::sampling::random_element;

/// Hodge and Betti numbers shared by every K3 surface.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct K3Invariants {
    pub b1: u32,
    pub b2: u32,
    pub b_plus: u32,
    pub h20: u32,
    pub h02: u32,
    pub h11: u32,
    pub q: u32,
    pub p_g: u32,
}

pub const K3_INVARIANTS: K3Invariants = K3Invariants {
    b1: 0,
    b2: 22,
    b_plus: 3,
    h20: 1,
    h02: 1,
    h11: 20,
    q: 0,
    p_g: 1,
};

pub const K3_SIGNATURE: (usize, usize, usize) = (3, 19, 0);

/// A symmetric integer bilinear form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntersectionForm {
    /// Preset name, if the form came from one.
    pub preset: Option<String>,
    #[serde(with = "crate::serde_util::bigint_rows")]
    pub matrix: Vec<Vec<BigInt>>,
}

impl IntersectionForm {
    pub fn new(matrix: Vec<Vec<BigInt>>) -> Result<Self> {
        let n = matrix.len();
        if let Some(r) = matrix.iter().find(|r| r.len() != n) {
            return Err(Error::NotSquare { rows: n, cols: r.len() });
        }
        if !is_symmetric_int(&matrix) {
            return Err(Error::NotSymmetric);
        }
        Ok(IntersectionForm { preset: None, matrix })
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Result<Self> {
        Self::new(rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect())
    }

    fn preset_of(name: &str, matrix: Vec<Vec<BigInt>>) -> Self {
        IntersectionForm { preset: Some(name.to_string()), matrix }
    }

    /// The hyperbolic plane `U`.
    pub fn u() -> Self {
        Self::preset_of("u", forms::hyperbolic())
    }

    /// `U + U`.
    pub fn uu() -> Self {
        Self::preset_of("uu", forms::hyperbolic_pair())
    }

    /// `U^3 + E8(-1)^2`.
    pub fn k3() -> Self {
        Self::preset_of("k3", forms::k3_lattice())
    }

    /// `u`, `uu` or `k3`.
    pub fn preset(name: &str) -> Result<Self> {
        match name {
            "u" => Ok(Self::u()),
            "uu" => Ok(Self::uu()),
            "k3" => Ok(Self::k3()),
            other => Err(Error::Parse(format!("unknown form preset `{other}`"))),
        }
    }

    pub fn dim(&self) -> usize {
        self.matrix.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> &BigInt {
        &self.matrix[i][j]
    }

    /// `A(x, y) = sum a_ij x_i y_j`.
    pub fn pairing(&self, x: &[FieldElement], y: &[FieldElement]) -> Result<FieldElement> {
        self.check_len(x.len())?;
        self.check_len(y.len())?;
        let ctx = FieldContext::merge(x[0].context(), y[0].context())?;
        let mut acc = FieldElement::zero(&ctx);
        for (i, xi) in x.iter().enumerate() {
            for (j, yj) in y.iter().enumerate() {
                let a = &self.matrix[i][j];
                if !a.is_zero() {
                    acc = acc.checked_add(&xi.checked_mul(yj)?.scale_int(a))?;
                }
            }
        }
        Ok(acc)
    }

    /// The row `lambda^t A`, so that `A(lambda, m) = row . m`.
    fn row_times(&self, x: &[FieldElement]) -> Result<Vec<FieldElement>> {
        self.check_len(x.len())?;
        let ctx = x[0].context();
        (0..self.dim())
            .map(|j| {
                x.iter().enumerate().try_fold(FieldElement::zero(ctx), |acc, (i, xi)| {
                    acc.checked_add(&xi.scale_int(&self.matrix[i][j]))
                })
            })
            .collect()
    }

    fn check_len(&self, n: usize) -> Result<()> {
        if n != self.dim() || n == 0 {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: n });
        }
        Ok(())
    }
}

/// Exact inertia of `A`; with `expect_k3` also demands rank 22 and
/// signature `(3, 19, 0)`.
pub fn check_form(form: &IntersectionForm, expect_k3: bool) -> Result<Inertia> {
    if !is_symmetric_int(&form.matrix) {
        return Err(Error::NotSymmetric);
    }
    let inertia = signature(&form.matrix)?;
    if expect_k3 {
        if form.dim() != K3_INVARIANTS.b2 as usize {
            return Err(Error::DimensionMismatch { expected: 22, found: form.dim() });
        }
        if inertia.as_tuple() != K3_SIGNATURE {
            return Err(Error::WrongSignature { expected: K3_SIGNATURE, found: inertia.as_tuple() });
        }
    }
    Ok(inertia)
}

/// A nonzero vector of periods `lambda_j` in one field context.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<FieldElement>", into = "Vec<FieldElement>")]
pub struct PeriodPoint {
    lambda: Vec<FieldElement>,
}

impl PeriodPoint {
    pub fn new(lambda: Vec<FieldElement>) -> Result<Self> {
        if lambda.is_empty() {
            return Err(Error::DimensionMismatch { expected: 1, found: 0 });
        }
        if lambda.iter().all(FieldElement::is_zero) {
            return Err(Error::Parse("the period point is the zero vector".into()));
        }
        let ctx = lambda
            .iter()
            .try_fold(Arc::clone(lambda[0].context()), |c, x| FieldContext::merge(&c, x.context()))?;
        let lambda = lambda.iter().map(|x| x.promote(&ctx)).collect::<Result<_>>()?;
        Ok(PeriodPoint { lambda })
    }

    pub fn coords(&self) -> &[FieldElement] {
        &self.lambda
    }

    pub fn dim(&self) -> usize {
        self.lambda.len()
    }

    pub fn context(&self) -> &Arc<FieldContext> {
        self.lambda[0].context()
    }
}

impl TryFrom<Vec<FieldElement>> for PeriodPoint {
    type Error = Error;
    fn try_from(v: Vec<FieldElement>) -> Result<Self> {
        PeriodPoint::new(v)
    }
}

impl From<PeriodPoint> for Vec<FieldElement> {
    fn from(p: PeriodPoint) -> Self {
        p.lambda
    }
}

/// `A(lambda, lambda) = 0`.
pub fn on_quadric(lambda: &PeriodPoint, form: &IntersectionForm) -> Result<bool> {
    Ok(form.pairing(lambda.coords(), lambda.coords())?.is_zero())
}

/// Every `m in Z^n` with `A(lambda, m) = 0`.
pub fn picard_kernel(lambda: &PeriodPoint, form: &IntersectionForm) -> Result<IntegerLattice> {
    let row = form.row_times(lambda.coords())?;
    Ok(integer_kernel(&field_row_to_rational_system(&row)?))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum K3Verdict {
    /// No integer class pairs to zero with `lambda`.
    Degree0Certified,
    /// Candidate line bundles exist; the degree is not decided.
    HasLineBundles,
}

impl K3Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            K3Verdict::Degree0Certified => "Degree0Certified",
            K3Verdict::HasLineBundles => "HasLineBundles",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct K3Report {
    pub dim: usize,
    pub form_preset: Option<String>,
    pub inertia: Inertia,
    pub on_quadric: bool,
    pub picard_kernel: IntegerLattice,
    pub kernel_rank: usize,
    #[serde(with = "crate::serde_util::option_bigint_vec")]
    pub witness: Option<Vec<BigInt>>,
    pub verdict: K3Verdict,
}

pub fn classify(lambda: &PeriodPoint, form: &IntersectionForm) -> Result<K3Report> {
    if !on_quadric(lambda, form)? {
        return Err(Error::NotOnQuadric);
    }
    let inertia = check_form(form, false)?;
    let kernel = picard_kernel(lambda, form)?;
    let verdict = if kernel.is_trivial() {
        K3Verdict::Degree0Certified
    } else {
        K3Verdict::HasLineBundles
    };
    Ok(K3Report {
        dim: form.dim(),
        form_preset: form.preset.clone(),
        inertia,
        on_quadric: true,
        kernel_rank: kernel.rank(),
        witness: kernel.basis.first().cloned(),
        picard_kernel: kernel,
        verdict,
    })
}

/// Random point on the quadric. One coordinate `j` with `a_jj = 0` is left
/// free; the others are drawn at `height`, and since `A(lambda, lambda)` is
/// then linear in `lambda_j` it is solved for exactly.
pub fn sample_quadric<R: Rng + ?Sized>(
    form: &IntersectionForm,
    ctx: &Arc<FieldContext>,
    height: u64,
    rng: &mut R,
    max_retries: usize,
) -> Result<PeriodPoint> {
    let n = form.dim();
    let j = (0..n)
        .find(|&j| form.entry(j, j).is_zero() && (0..n).any(|k| !form.entry(j, k).is_zero()))
        .ok_or_else(|| Error::CannotSolveAtHeight("form has no isotropic coordinate axis".into()))?;
    for _ in 0..max_retries {
        let mut lambda: Vec<FieldElement> = (0..n)
            .map(|k| if k == j { ctx.zero() } else { random_element(ctx, height, rng) })
            .collect();
        // A(lambda, lambda) = 2 lambda_j L + Q with lambda_j = 0 in Q
        let q = form.pairing(&lambda, &lambda)?;
        let l = (0..n).filter(|&k| k != j).try_fold(ctx.zero(), |acc, k| {
            acc.checked_add(&lambda[k].scale_int(form.entry(j, k)))
        })?;
        if l.is_zero() {
            continue;
        }
        lambda[j] = -(q.checked_div(&(l.scale_int(&BigInt::from(2))))?);
        if let Ok(p) = PeriodPoint::new(lambda) {
            return Ok(p);
        }
    }
    Err(Error::CannotSolveAtHeight(format!("no solvable draw in {max_retries} attempts")))
}

/// Built-in period points on `U + U`.
pub mod examples {
    use super::*;

    /// `(1, sqrt2, sqrt3, -sqrt6 / 3)`.
    pub fn generic_uu() -> PeriodPoint {
        let k = FieldContext::new([2, 3]).expect("valid radicands");
        let s = |d| k.sqrt(d).expect("radicand present");
        let l4 = -(s(2) * s(3)) * k.rational(1, 3);
        PeriodPoint::new(vec![k.one(), s(2), s(3), l4]).expect("nonzero")
    }

    /// `(1, sqrt2, sqrt2, -1)`.
    pub fn special_uu() -> PeriodPoint {
        let k = FieldContext::new([2]).expect("valid radicands");
        let r = k.sqrt(2).expect("radicand present");
        PeriodPoint::new(vec![k.one(), r.clone(), r, k.int(-1)]).expect("nonzero")
    }
}
