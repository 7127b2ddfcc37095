//! Complex two-tori `T_Z = C^2 / (Z^2 + Z Z^2)` given by a normalized period
//! matrix `(I, Z)`.
//!
//! Degree two is decided by the Riemann locus `S`. Degree at least one
//! forces `Z` into the degenerate locus `R`, the union over admissible
//! sextuples `m` of `m0 + m1 z11 + m2 z12 + m3 z21 + m4 z22 + m5 det Z = 0`.
//! Over a multi-quadratic field that union collapses to one integer kernel,
//! so membership in `R` is decided for all `m` at once.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{FieldContext, FieldElement};
use crate::linalg::{field_row_to_rational_system, hermite_normal_form, integer_kernel, FieldMatrix, IntegerLattice};
use crate::sampling::random_element;

/// How the Riemann locus `S_n` is read off `Z`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SConvention {
    /// `z21 = n * z12`.
    #[default]
    Displayed,
    /// `z12 = n * z21`.
    Transposed,
}

/// The matrix `Z` of a normalized period matrix, with `Im Z > 0` checked.
#[derive(Clone, Debug, PartialEq)]
pub struct PeriodMatrixZ {
    z: FieldMatrix,
}

impl PeriodMatrixZ {
    pub fn new(z: FieldMatrix) -> Result<Self> {
        if !is_in_m(&z)? {
            return Err(Error::NotInModuli("Im Z is not positive definite".into()));
        }
        Ok(PeriodMatrixZ { z })
    }

    pub fn from_entries(
        ctx: &Arc<FieldContext>,
        z11: FieldElement,
        z12: FieldElement,
        z21: FieldElement,
        z22: FieldElement,
    ) -> Result<Self> {
        Self::new(FieldMatrix::from_rows(ctx, vec![vec![z11, z12], vec![z21, z22]])?)
    }

    pub fn matrix(&self) -> &FieldMatrix {
        &self.z
    }

    pub fn context(&self) -> &Arc<FieldContext> {
        self.z.context()
    }

    pub fn z11(&self) -> &FieldElement {
        self.z.get(0, 0)
    }

    pub fn z12(&self) -> &FieldElement {
        self.z.get(0, 1)
    }

    pub fn z21(&self) -> &FieldElement {
        self.z.get(1, 0)
    }

    pub fn z22(&self) -> &FieldElement {
        self.z.get(1, 1)
    }

    pub fn det(&self) -> FieldElement {
        self.z11() * self.z22() - self.z12() * self.z21()
    }

    /// `(1, z11, z12, z21, z22, det Z)`, the row whose integer relations are
    /// the sextuples `m` with `Z in R_m`.
    pub fn relation_row(&self) -> [FieldElement; 6] {
        [
            FieldElement::one(self.context()),
            self.z11().clone(),
            self.z12().clone(),
            self.z21().clone(),
            self.z22().clone(),
            self.det(),
        ]
    }

    /// Swaps `z12` and `z21`.
    pub fn transpose(&self) -> Self {
        PeriodMatrixZ { z: self.z.transpose() }
    }
}

/// Integer sextuple `(m0, ..., m5)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Sextuple(#[serde(with = "crate::serde_util::bigint_vec")] pub Vec<BigInt>);

impl Sextuple {
    pub fn from_i64(xs: [i64; 6]) -> Self {
        Sextuple(xs.iter().map(|&x| BigInt::from(x)).collect())
    }

    /// Some `m_i` with `1 <= i <= 5` is nonzero.
    pub fn is_admissible(&self) -> bool {
        self.0[1..].iter().any(|x| !x.is_zero())
    }

    pub fn negated(&self) -> Self {
        Sextuple(self.0.iter().map(|x| -x).collect())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum TorusVerdict {
    Degree2,
    Degree0Certified,
    /// `Z` lies in `R`; degree is 0 or 1 and not decided further.
    Inconclusive01,
}

impl TorusVerdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            TorusVerdict::Degree2 => "Degree2",
            TorusVerdict::Degree0Certified => "Degree0Certified",
            TorusVerdict::Inconclusive01 => "Inconclusive01",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SMembership {
    pub n: BigInt,
    /// `z12 = z21 = 0`: the defining equation holds for every `n`.
    pub degenerate_ratio: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorusReport {
    #[serde(rename = "in_M")]
    pub in_m: bool,
    /// Whether the symmetrized quadratic form of `Im Z` is positive definite.
    pub im_form_positive_definite: bool,
    pub convention: SConvention,
    #[serde(with = "crate::serde_util::option_bigint")]
    pub s_membership: Option<BigInt>,
    pub degenerate_ratio: bool,
    #[serde(rename = "in_S0")]
    pub in_s0: bool,
    pub r_kernel: IntegerLattice,
    pub admissible_witness: Option<Sextuple>,
    pub verdict: TorusVerdict,
}

/// `Im Z > 0`, decided by Sylvester's test on the leading principal minors
/// of `Im Z` (which need not be symmetric).
pub fn is_in_m(z: &FieldMatrix) -> Result<bool> {
    if z.rows() != 2 || z.cols() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: z.rows().max(z.cols()),
        });
    }
    z.imag_part()?.leading_minors_positive()
}

/// The `n >= 1` with `Z in S_n`, if any.
pub fn s_membership(z: &PeriodMatrixZ, convention: SConvention) -> Option<SMembership> {
    s_ratio(z.matrix(), convention)
}

/// The `S_n` test on a bare 2x2 matrix, without checking `Im Z > 0`.
pub fn s_ratio(z: &FieldMatrix, convention: SConvention) -> Option<SMembership> {
    let (z12, z21) = (z.get(0, 1), z.get(1, 0));
    let (base, target) = match convention {
        SConvention::Displayed => (z12, z21),
        SConvention::Transposed => (z21, z12),
    };
    if base.is_zero() {
        return target.is_zero().then(|| SMembership {
            n: BigInt::one(),
            degenerate_ratio: true,
        });
    }
    // target = n * base with n rational iff the coordinates are proportional,
    // which avoids a field division
    let (base, target) = FieldElement::align(base, target).ok()?;
    let (mask, b) = base.coords().next()?;
    let q = target.coord(mask) / b;
    if !q.is_integer() || !q.is_positive() || target != base.scale(&q) {
        return None;
    }
    Some(SMembership {
        n: q.to_integer(),
        degenerate_ratio: false,
    })
}

/// `z12 = 0`.
pub fn is_in_s0(z: &PeriodMatrixZ) -> bool {
    z.z12().is_zero()
}

/// All sextuples `m` with `m . (1, z11, z12, z21, z22, det Z) = 0`.
pub fn r_kernel(z: &PeriodMatrixZ) -> IntegerLattice {
    let system = field_row_to_rational_system(&z.relation_row())
        .expect("entries of Z share one context");
    integer_kernel(&system)
}

/// An admissible member of `lattice`, if one exists.
///
/// Since the lattice is a group, one exists iff some basis vector has a
/// nonzero entry among `m1..m5`. The returned vector is the first row of the
/// Hermite normal form taken with `m0` moved last, so it has the earliest
/// possible nonzero admissible coordinate and is canonical.
pub fn admissible_in(lattice: &IntegerLattice) -> Option<Sextuple> {
    if lattice.ambient_dim != 6 {
        return None;
    }
    let reordered: Vec<Vec<BigInt>> = lattice
        .basis
        .iter()
        .map(|v| v[1..].iter().chain(&v[..1]).cloned().collect())
        .collect();
    let hnf = hermite_normal_form(reordered);
    let first = hnf.into_iter().next()?;
    if first[..5].iter().all(Zero::is_zero) {
        return None;
    }
    let mut m = Vec::with_capacity(6);
    m.push(first[5].clone());
    m.extend_from_slice(&first[..5]);
    Some(Sextuple(m))
}

pub fn classify(z: &PeriodMatrixZ) -> TorusReport {
    classify_with(z, SConvention::Displayed)
}

pub fn classify_with(z: &PeriodMatrixZ, convention: SConvention) -> TorusReport {
    let s = s_membership(z, convention);
    let kernel = r_kernel(z);
    let witness = admissible_in(&kernel);
    let verdict = if s.is_some() {
        TorusVerdict::Degree2
    } else if witness.is_none() {
        TorusVerdict::Degree0Certified
    } else {
        TorusVerdict::Inconclusive01
    };
    let im_form = z
        .matrix()
        .imag_part()
        .and_then(|m| m.form_is_positive_definite())
        .unwrap_or(false);
    TorusReport {
        in_m: true,
        im_form_positive_definite: im_form,
        convention,
        degenerate_ratio: s.as_ref().is_some_and(|s| s.degenerate_ratio),
        s_membership: s.map(|s| s.n),
        in_s0: is_in_s0(z),
        r_kernel: kernel,
        admissible_witness: witness,
        verdict,
    }
}

/// Checks membership in `M` first, reporting `NotInModuli` otherwise.
pub fn classify_matrix(z: FieldMatrix, convention: SConvention) -> Result<TorusReport> {
    Ok(classify_with(&PeriodMatrixZ::new(z)?, convention))
}

pub const DEFAULT_SAMPLE_RETRIES: usize = 10_000;

/// Random `Z in M` with every basis coordinate of every entry a rational of
/// height at most `height`; rejection-samples until `Im Z > 0`.
pub fn sample_m<R: Rng + ?Sized>(
    ctx: &Arc<FieldContext>,
    height: u64,
    rng: &mut R,
    max_retries: usize,
) -> Result<PeriodMatrixZ> {
    for _ in 0..max_retries {
        let entries: Vec<FieldElement> = (0..4).map(|_| random_element(ctx, height, rng)).collect();
        let z = FieldMatrix::from_rows(
            ctx,
            vec![entries[..2].to_vec(), entries[2..].to_vec()],
        )?;
        if is_in_m(&z)? {
            return Ok(PeriodMatrixZ { z });
        }
    }
    Err(Error::ExhaustedRetries(max_retries))
}

/// Built-in period matrices.
pub mod examples {
    use super::*;

    /// `[[sqrt5 i, sqrt2 i], [sqrt7 i, sqrt3 i]]`.
    pub fn siegel() -> PeriodMatrixZ {
        let k = FieldContext::new([-1, 2, 3, 5, 7]).expect("valid radicands");
        let i = k.i();
        let s = |d| k.sqrt(d).expect("radicand present");
        PeriodMatrixZ::from_entries(&k, &i * &s(5), &i * &s(2), &i * &s(7), &i * &s(3))
            .expect("Siegel's matrix is in M")
    }

    /// `[[i, sqrt2], [0, i]]`.
    pub fn shafarevich() -> PeriodMatrixZ {
        let k = FieldContext::new([-1, 2]).expect("valid radicands");
        PeriodMatrixZ::from_entries(&k, k.i(), k.sqrt(2).expect("radicand present"), k.zero(), k.i())
            .expect("Shafarevich's matrix is in M")
    }

    /// `[[4i, i], [3i, 2i]]`, a point of `S_3`.
    pub fn riemann_s3() -> PeriodMatrixZ {
        let k = FieldContext::new([-1]).expect("valid radicands");
        let i = k.i();
        PeriodMatrixZ::from_entries(&k, k.int(4) * &i, i.clone(), k.int(3) * &i, k.int(2) * &i)
            .expect("in M")
    }

    /// `[[2i, i], [3i, i]]`: satisfies `z21 = 3 z12` but `det Im Z = -1`,
    /// so it is not a point of `M`.
    pub fn s3_outside_m() -> FieldMatrix {
        let k = FieldContext::new([-1]).expect("valid radicands");
        let i = k.i();
        FieldMatrix::from_rows(
            &k,
            vec![vec![k.int(2) * &i, i.clone()], vec![k.int(3) * &i, i.clone()]],
        )
        .expect("2x2")
    }
}
