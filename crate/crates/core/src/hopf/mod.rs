//! Hopf surfaces `X_t = (C^2 \ 0) / <t>` for a contraction `t^{-1}`, encoded
//! by the matrix `t` whose eigenvalues both have modulus greater than one.
//!
//! Degree two never occurs. A diagonalizable `t` with distinct eigenvalues
//! `alpha, delta` has degree one exactly when `alpha^m = delta^n` for some
//! nonzero `m, n`; scalar and Jordan-type `t` always have degree one.

mod dependence;
mod gaussian;
mod witness;

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

pub use dependence::{mult_dependence, DependenceMethod, DependenceOutcome, DependenceWitness};
pub use gaussian::{factor_integer, GaussInt, GaussRational};
pub use witness::{make_witness, verify_witness, WitnessFunction};

use crate::error::{Error, Result};
use crate::field::{FieldContext, FieldElement};
use crate::linalg::FieldMatrix;
use crate::sampling::random_rational;

/// Default `|m|, |n|` bound for the dependence search outside `Q(i)`.
pub const DEFAULT_HEIGHT_BOUND: u64 = 64;

/// A nonsingular `2 x 2` matrix `[[alpha, beta], [gamma, delta]]`.
#[derive(Clone, Debug, PartialEq)]
pub struct HopfParam {
    t: FieldMatrix,
}

impl HopfParam {
    pub fn new(t: FieldMatrix) -> Result<Self> {
        if t.rows() != 2 || t.cols() != 2 {
            return Err(Error::NotSquare { rows: t.rows(), cols: t.cols() });
        }
        if t.det()?.is_zero() {
            return Err(Error::Singular);
        }
        Ok(HopfParam { t })
    }

    pub fn from_entries(
        ctx: &Arc<FieldContext>,
        alpha: FieldElement,
        beta: FieldElement,
        gamma: FieldElement,
        delta: FieldElement,
    ) -> Result<Self> {
        Self::new(FieldMatrix::from_rows(ctx, vec![vec![alpha, beta], vec![gamma, delta]])?)
    }

    pub fn diagonal(ctx: &Arc<FieldContext>, alpha: FieldElement, delta: FieldElement) -> Result<Self> {
        Self::from_entries(ctx, alpha, ctx.zero(), ctx.zero(), delta)
    }

    pub fn matrix(&self) -> &FieldMatrix {
        &self.t
    }

    pub fn context(&self) -> &Arc<FieldContext> {
        self.t.context()
    }

    pub fn alpha(&self) -> &FieldElement {
        self.t.get(0, 0)
    }

    pub fn beta(&self) -> &FieldElement {
        self.t.get(0, 1)
    }

    pub fn gamma(&self) -> &FieldElement {
        self.t.get(1, 0)
    }

    pub fn delta(&self) -> &FieldElement {
        self.t.get(1, 1)
    }

    pub fn trace(&self) -> FieldElement {
        self.alpha() + self.delta()
    }

    pub fn det(&self) -> FieldElement {
        self.alpha() * self.delta() - self.beta() * self.gamma()
    }

    /// `(alpha + delta) / 2`.
    pub fn sigma(&self) -> FieldElement {
        self.trace() * self.context().rational(1, 2)
    }

    /// `(alpha - delta)^2 / 4 + beta gamma`, so the eigenvalues are `sigma +- sqrt(Delta)`.
    pub fn discriminant(&self) -> FieldElement {
        let d = self.alpha() - self.delta();
        &d * &d * self.context().rational(1, 4) + self.beta() * self.gamma()
    }

    pub fn is_scalar(&self) -> bool {
        self.beta().is_zero() && self.gamma().is_zero() && self.alpha() == self.delta()
    }

    /// Exact eigenvalues `(sigma + sqrt Delta, sigma - sqrt Delta)`, or
    /// `(alpha, delta)` for triangular `t`. `None` when `sqrt Delta` is not
    /// in the field and cannot be adjoined.
    pub fn eigenvalues(&self) -> Option<(FieldElement, FieldElement)> {
        if self.beta().is_zero() || self.gamma().is_zero() {
            return Some((self.alpha().clone(), self.delta().clone()));
        }
        let disc = self.discriminant();
        let sigma = self.sigma();
        if disc.is_zero() {
            return Some((sigma.clone(), sigma));
        }
        let root = rational_sqrt(self.context(), &disc.as_rational()?)?;
        Some((&sigma + &root, &sigma - &root))
    }

    /// `u t u^{-1}` for an integer matrix `u` of determinant `+-1`.
    pub fn conjugated_by(&self, u: [[i64; 2]; 2]) -> Result<Self> {
        let ctx = self.context();
        let det = u[0][0] * u[1][1] - u[0][1] * u[1][0];
        if det.abs() != 1 {
            return Err(Error::Singular);
        }
        let e = |x: i64| ctx.int(x);
        let um = FieldMatrix::from_rows(ctx, vec![vec![e(u[0][0]), e(u[0][1])], vec![e(u[1][0]), e(u[1][1])]])?;
        let inv = FieldMatrix::from_rows(
            ctx,
            vec![
                vec![e(det * u[1][1]), e(-det * u[0][1])],
                vec![e(-det * u[1][0]), e(det * u[0][0])],
            ],
        )?;
        Self::new(um.mul(&self.t)?.mul(&inv)?)
    }
}

/// `sqrt(q)` inside `ctx`, or in `ctx` extended by the square-free part of `q`.
fn rational_sqrt(ctx: &Arc<FieldContext>, q: &num_rational::BigRational) -> Option<FieldElement> {
    // sqrt(p / r) = sqrt(p r) / r, and p r = s^2 d with d square-free
    let pr = q.numer() * q.denom();
    let (s, d) = square_free_split(&pr)?;
    let coeff = num_rational::BigRational::new(s, q.denom().clone());
    if d.is_one() {
        return Some(FieldElement::from_rational(ctx, coeff));
    }
    if let Some(mask) = (1..ctx.dim() as u32).find(|&m| *ctx.subset_product(m) == d) {
        return Some(FieldElement::basis(ctx, mask, coeff));
    }
    let d = i64::try_from(&d).ok()?;
    let ext = ctx.extend(d).ok()?;
    let j = ext.index_of(d)?;
    Some(FieldElement::basis(&ext, 1 << j, coeff))
}

/// `n = s^2 d` with `d` square-free and carrying the sign of `n`.
fn square_free_split(n: &BigInt) -> Option<(BigInt, BigInt)> {
    if n.is_zero() {
        return None;
    }
    let mut rest = n.abs();
    let mut s = BigInt::one();
    let mut d = if n.is_negative() { -BigInt::one() } else { BigInt::one() };
    for p in factor_integer(&rest)? {
        let mut e = 0u32;
        while (&rest % &p).is_zero() {
            rest /= &p;
            e += 1;
        }
        s *= p.pow(e / 2);
        if e % 2 == 1 {
            d *= &p;
        }
    }
    debug_assert_eq!(&s * &s * &d, *n);
    Some((s, d))
}

fn abs_sq_cmp(x: &FieldElement, bound: i64) -> Result<i8> {
    (x.norm_sq() - FieldElement::from_integer(x.context(), bound)).sign()
}

/// `(in_moduli, satisfies_ks_inequalities)` for a `2 x 2` matrix.
///
/// Both eigenvalues of `z^2 - S z + P` lie outside the closed unit disk iff
/// `|P| > 1` and `|conj(P) S - conj(S)| < |P|^2 - 1` (Schur-Cohn on the
/// reciprocal polynomial), which avoids `sqrt(Delta)` entirely. The second
/// flag is `|alpha + delta| > 3` and `|(alpha - delta)^2 + 4 beta gamma| < 1`.
pub fn is_in_moduli(t: &FieldMatrix) -> Result<(bool, bool)> {
    let p = HopfParam::new(t.clone())?;
    let s = p.trace();
    let det = p.det();
    let det_sq = det.norm_sq();
    let one = FieldElement::one(p.context());
    let gap = &det_sq - &one;
    let in_moduli = gap.sign()? == 1 && {
        let lhs = (det.conjugate() * &s - s.conjugate()).norm_sq();
        (&gap * &gap - lhs).sign()? == 1
    };
    let diff = p.alpha() - p.delta();
    let four_bc = p.context().int(4) * p.beta() * p.gamma();
    let ks = abs_sq_cmp(&s, 9)? == 1 && abs_sq_cmp(&(&diff * &diff + four_bc), 1)? == -1;
    Ok((in_moduli, ks))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum HopfClass {
    /// Distinct eigenvalues.
    M0,
    /// `t = alpha I`.
    M1,
    /// Conjugate to a Jordan block.
    M2,
    NonDiagonalizableOther,
}

pub fn normal_class(t: &HopfParam) -> HopfClass {
    if t.is_scalar() {
        HopfClass::M1
    } else if t.discriminant().is_zero() {
        // a repeated eigenvalue on a non-scalar 2x2 matrix is a Jordan block
        HopfClass::M2
    } else {
        HopfClass::M0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum HopfVerdict {
    Degree0,
    Degree1,
}

impl HopfVerdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            HopfVerdict::Degree0 => "Degree0",
            HopfVerdict::Degree1 => "Degree1",
        }
    }
}

/// Flags attached to a report whenever a fact needs qualifying.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Caveat {
    /// In the moduli space while violating `|alpha+delta| > 3, |(alpha-delta)^2 + 4 beta gamma| < 1`.
    KsInequalitiesViolated,
    /// No dependence up to the search bound; independence is not proven.
    BoundedSearch,
    /// `sqrt(Delta)` could not be represented, so dependence was not tested.
    EigenvaluesNotRepresentable,
    /// The exact invariance check of the witness failed.
    WitnessNotInvariant,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HopfReport {
    pub in_moduli: bool,
    pub satisfies_ks_inequalities: bool,
    pub class: HopfClass,
    pub eigenvalues: Option<[FieldElement; 2]>,
    pub dependence: Option<DependenceWitness>,
    pub dependence_method: Option<DependenceMethod>,
    pub witness: Option<WitnessFunction>,
    pub witness_description: Option<String>,
    pub witness_verified: Option<bool>,
    pub verdict: HopfVerdict,
    pub caveats: Vec<Caveat>,
}

/// Classifies `X_t`. `bound` caps the dependence search when the
/// eigenvalues are not Gaussian rationals.
pub fn classify(t: &HopfParam, bound: u64) -> Result<HopfReport> {
    let (in_moduli, ks) = is_in_moduli(t.matrix())?;
    if !in_moduli {
        return Err(Error::NotInModuli("an eigenvalue of t has modulus <= 1".into()));
    }
    let mut caveats = Vec::new();
    if !ks {
        caveats.push(Caveat::KsInequalitiesViolated);
    }
    let class = normal_class(t);
    let eigen = t.eigenvalues();
    let mut dependence = None;
    let mut method = None;
    if class == HopfClass::M0 {
        match &eigen {
            Some((l1, l2)) => {
                let out = mult_dependence(l1, l2, bound)?;
                if !out.complete {
                    caveats.push(Caveat::BoundedSearch);
                }
                dependence = out.witness;
                method = Some(out.method);
            }
            None => caveats.push(Caveat::EigenvaluesNotRepresentable),
        }
    }
    let verdict = match class {
        HopfClass::M0 if dependence.is_none() => HopfVerdict::Degree0,
        _ => HopfVerdict::Degree1,
    };
    let (witness, witness_verified) = if verdict == HopfVerdict::Degree1 {
        let f = make_witness(t, class, dependence.as_ref())?;
        let ok = verify_witness(&f, t)?;
        if !ok {
            caveats.push(Caveat::WitnessNotInvariant);
        }
        (Some(f), Some(ok))
    } else {
        (None, None)
    };
    Ok(HopfReport {
        in_moduli,
        satisfies_ks_inequalities: ks,
        class,
        eigenvalues: eigen.map(|(a, b)| [a, b]),
        dependence,
        dependence_method: method,
        witness_description: witness.as_ref().map(WitnessFunction::describe),
        witness,
        witness_verified,
        verdict,
        caveats,
    })
}

/// Random diagonal `t` with rational entries of height at most `height` and
/// both moduli above one.
pub fn sample_diagonal<R: Rng + ?Sized>(height: u64, rng: &mut R, max_retries: usize) -> Result<HopfParam> {
    let ctx = FieldContext::rationals();
    let mut draw = || -> Option<FieldElement> {
        let q = random_rational(rng, height);
        (q.abs() > num_rational::BigRational::one()).then(|| FieldElement::from_rational(&ctx, q))
    };
    for _ in 0..max_retries {
        if let (Some(a), Some(d)) = (draw(), draw()) {
            return HopfParam::diagonal(&ctx, a, d);
        }
    }
    Err(Error::ExhaustedRetries(max_retries))
}

/// Built-in parameters.
pub mod examples {
    use super::*;

    fn diag(a: i64, d: i64) -> HopfParam {
        let k = FieldContext::rationals();
        HopfParam::diagonal(&k, k.int(a), k.int(d)).expect("nonsingular")
    }

    pub fn diag35() -> HopfParam {
        diag(3, 5)
    }

    pub fn diag28() -> HopfParam {
        diag(2, 8)
    }

    pub fn diag22() -> HopfParam {
        diag(2, 2)
    }

    /// `[[2, 1], [0, 2]]`.
    pub fn jordan2() -> HopfParam {
        let k = FieldContext::rationals();
        HopfParam::from_entries(&k, k.int(2), k.one(), k.zero(), k.int(2)).expect("nonsingular")
    }
}

#[cfg(test)]
mod tests {
    use super::examples::*;
    use super::*;

    fn mat(rows: [[i64; 2]; 2]) -> FieldMatrix {
        let k = FieldContext::rationals();
        FieldMatrix::from_rows(&k, rows.iter().map(|r| r.iter().map(|&x| k.int(x)).collect()).collect())
            .unwrap()
    }

    #[test]
    fn moduli_membership() {
        assert_eq!(is_in_moduli(&mat([[3, 0], [0, 5]])).unwrap(), (true, false));
        assert_eq!(is_in_moduli(&mat([[2, 0], [0, 2]])).unwrap(), (true, true));
        assert!(!is_in_moduli(&mat([[1, 0], [0, 3]])).unwrap().0);
        assert!(!is_in_moduli(&mat([[-1, 0], [0, 3]])).unwrap().0);
        assert!(matches!(is_in_moduli(&mat([[1, 2], [2, 4]])), Err(Error::Singular)));
        // eigenvalues 3 +- sqrt(2): 1.59 and 4.41
        assert!(is_in_moduli(&mat([[3, 1], [2, 3]])).unwrap().0);
        // eigenvalues 2 +- sqrt(2): 0.59 and 3.41
        assert!(!is_in_moduli(&mat([[2, 1], [2, 2]])).unwrap().0);
    }

    #[test]
    fn moduli_agrees_with_eigenvalues_for_complex_pairs() {
        let k = FieldContext::new([-1]).unwrap();
        // rotation-like t with eigenvalues 2 +- i, modulus sqrt 5
        let t = FieldMatrix::from_rows(&k, vec![vec![k.int(2), k.int(-1)], vec![k.int(1), k.int(2)]]).unwrap();
        assert!(is_in_moduli(&t).unwrap().0);
        let p = HopfParam::new(t).unwrap();
        let (a, b) = p.eigenvalues().unwrap();
        assert_eq!(a, k.int(2) + k.i());
        assert_eq!(b, k.int(2) - k.i());
    }

    #[test]
    fn eigenvalues_adjoin_square_roots() {
        let p = HopfParam::new(mat([[3, 1], [2, 3]])).unwrap();
        let (a, b) = p.eigenvalues().unwrap();
        let k = FieldContext::new([2]).unwrap();
        assert_eq!(a, k.int(3) + k.sqrt(2).unwrap());
        assert_eq!(b, k.int(3) - k.sqrt(2).unwrap());
        assert_eq!(&a * &b, p.det());
    }

    #[test]
    fn classes() {
        assert_eq!(normal_class(&diag35()), HopfClass::M0);
        assert_eq!(normal_class(&diag22()), HopfClass::M1);
        assert_eq!(normal_class(&jordan2()), HopfClass::M2);
    }

    #[test]
    fn classify_examples() {
        let r = classify(&diag35(), 32).unwrap();
        assert_eq!(r.verdict, HopfVerdict::Degree0);
        assert_eq!(r.dependence, None);
        assert_eq!(r.dependence_method, Some(DependenceMethod::CompleteRational));
        assert!(r.caveats.contains(&Caveat::KsInequalitiesViolated));

        let r = classify(&diag28(), 32).unwrap();
        assert_eq!(r.verdict, HopfVerdict::Degree1);
        assert_eq!(r.witness, Some(WitnessFunction::PowerQuotient { m: 3, n: 1 }));
        assert_eq!(r.witness_description.as_deref(), Some("z1^3 / z2"));
        assert_eq!(r.witness_verified, Some(true));

        let r = classify(&diag22(), 32).unwrap();
        assert_eq!(r.witness, Some(WitnessFunction::PowerQuotient { m: 1, n: 1 }));
        assert_eq!(r.witness_verified, Some(true));
    }

    #[test]
    fn jordan_witness_is_not_invariant() {
        let t = jordan2();
        let r = classify(&t, 32).unwrap();
        assert_eq!(r.class, HopfClass::M2);
        assert_eq!(r.verdict, HopfVerdict::Degree1);
        let k = FieldContext::rationals();
        assert_eq!(
            r.witness,
            Some(WitnessFunction::LinearQuotient { c1: k.rational(-26, 3), c2: k.rational(38, 3) })
        );
        assert_eq!(r.witness_verified, Some(false));
        assert!(r.caveats.contains(&Caveat::WitnessNotInvariant));
    }

    #[test]
    fn linear_quotient_with_equal_constants_is_rejected() {
        let k = FieldContext::rationals();
        let f = WitnessFunction::LinearQuotient { c1: k.int(1), c2: k.int(1) };
        assert!(!verify_witness(&f, &diag22()).unwrap());
    }

    #[test]
    fn linear_quotient_check_is_exact() {
        // an affine numerator over an affine denominator cannot absorb a
        // nontrivial scaling
        let k = FieldContext::rationals();
        let f = WitnessFunction::LinearQuotient { c1: k.zero(), c2: k.int(5) };
        assert!(!verify_witness(&f, &diag22()).unwrap());
        assert!(!verify_witness(&f, &jordan2()).unwrap());
    }

    #[test]
    fn power_quotient_checks() {
        let f = WitnessFunction::PowerQuotient { m: 3, n: 1 };
        assert!(verify_witness(&f, &diag28()).unwrap());
        assert!(!verify_witness(&f, &diag35()).unwrap());
        assert!(!verify_witness(&f, &jordan2()).unwrap());
        // non-diagonal t with eigenvalues 2 and 8
        let t = diag28().conjugated_by([[1, 1], [0, 1]]).unwrap();
        assert!(!t.beta().is_zero());
        let (a, _) = t.eigenvalues().unwrap();
        assert_eq!(a, FieldContext::rationals().int(2));
        assert!(verify_witness(&f, &t).unwrap());
    }

    #[test]
    fn conjugation_keeps_classification() {
        let t = diag28().conjugated_by([[2, 1], [1, 1]]).unwrap();
        let r = classify(&t, 32).unwrap();
        assert_eq!(r.class, HopfClass::M0);
        assert_eq!(r.verdict, HopfVerdict::Degree1);
        assert_eq!(r.witness_verified, Some(true));
        let t = jordan2().conjugated_by([[2, 1], [1, 1]]).unwrap();
        assert_eq!(normal_class(&t), HopfClass::M2);
    }

    #[test]
    fn sampler_respects_moduli() {
        let mut rng = crate::sampling::rng_for(7, 0);
        for _ in 0..50 {
            let t = sample_diagonal(9, &mut rng, 1000).unwrap();
            assert!(is_in_moduli(t.matrix()).unwrap().0);
        }
    }
}
