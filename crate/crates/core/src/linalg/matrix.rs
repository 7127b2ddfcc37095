use std::sync::Arc;

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::field::{FieldContext, FieldElement};

/// Dense matrix of field elements sharing one context.
#[derive(Clone, Debug, PartialEq)]
pub struct FieldMatrix {
    rows: usize,
    cols: usize,
    ctx: Arc<FieldContext>,
    entries: Vec<FieldElement>,
}

impl FieldMatrix {
    /// Builds a matrix from rows, promoting every entry into the smallest
    /// context containing all of them (and `ctx`).
    pub fn from_rows(ctx: &Arc<FieldContext>, rows: Vec<Vec<FieldElement>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if nrows == 0 || ncols == 0 {
            return Err(Error::DimensionMismatch {
                expected: 1,
                found: 0,
            });
        }
        let mut merged = Arc::clone(ctx);
        for row in &rows {
            if row.len() != ncols {
                return Err(Error::DimensionMismatch {
                    expected: ncols,
                    found: row.len(),
                });
            }
            for e in row {
                merged = FieldContext::merge(&merged, e.context())?;
            }
        }
        let entries = rows
            .into_iter()
            .flatten()
            .map(|e| e.promote(&merged))
            .collect::<Result<Vec<_>>>()?;
        Ok(FieldMatrix {
            rows: nrows,
            cols: ncols,
            ctx: merged,
            entries,
        })
    }

    pub fn identity(ctx: &Arc<FieldContext>, n: usize) -> Self {
        let entries = (0..n * n)
            .map(|k| {
                if k / n == k % n {
                    FieldElement::one(ctx)
                } else {
                    FieldElement::zero(ctx)
                }
            })
            .collect();
        FieldMatrix {
            rows: n,
            cols: n,
            ctx: Arc::clone(ctx),
            entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn context(&self) -> &Arc<FieldContext> {
        &self.ctx
    }

    pub fn get(&self, r: usize, c: usize) -> &FieldElement {
        &self.entries[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[FieldElement] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<FieldElement>> {
        self.entries.chunks(self.cols).map(<[_]>::to_vec).collect()
    }

    pub fn map(&self, f: impl Fn(&FieldElement) -> FieldElement) -> Self {
        FieldMatrix {
            rows: self.rows,
            cols: self.cols,
            ctx: Arc::clone(&self.ctx),
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        let mut entries = Vec::with_capacity(self.entries.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                entries.push(self.get(r, c).clone());
            }
        }
        FieldMatrix {
            rows: self.cols,
            cols: self.rows,
            ctx: Arc::clone(&self.ctx),
            entries,
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let ctx = FieldContext::merge(&self.ctx, &other.ctx)?;
        let mut rows = Vec::with_capacity(self.rows);
        for r in 0..self.rows {
            let mut row = Vec::with_capacity(other.cols);
            for c in 0..other.cols {
                let mut acc = FieldElement::zero(&ctx);
                for k in 0..self.cols {
                    acc = acc + self.get(r, k) * other.get(k, c);
                }
                row.push(acc);
            }
            rows.push(row);
        }
        Self::from_rows(&ctx, rows)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|r| (r + 1..self.cols).all(|c| self.get(r, c) == self.get(c, r)))
    }

    pub fn is_real(&self) -> bool {
        self.entries.iter().all(FieldElement::is_real)
    }

    /// Entrywise real or imaginary part.
    pub fn real_part(&self) -> Result<Self> {
        self.parts(true)
    }

    pub fn imag_part(&self) -> Result<Self> {
        self.parts(false)
    }

    fn parts(&self, real: bool) -> Result<Self> {
        let rows = self
            .to_rows()
            .into_iter()
            .map(|row| {
                row.iter()
                    .map(|e| e.split().map(|s| if real { s.re } else { s.im }))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(&self.ctx, rows)
    }

    /// `(M + M^t) / 2`.
    pub fn symmetrize(&self) -> Result<Self> {
        self.require_square()?;
        let half = BigRational::new(1.into(), 2.into());
        let t = self.transpose();
        let rows = (0..self.rows)
            .map(|r| {
                (0..self.cols)
                    .map(|c| (self.get(r, c) + t.get(r, c)).scale(&half))
                    .collect()
            })
            .collect();
        Self::from_rows(&self.ctx, rows)
    }

    fn require_square(&self) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    /// Leading `k x k` block.
    pub fn leading(&self, k: usize) -> Self {
        let rows = (0..k).map(|r| self.row(r)[..k].to_vec()).collect();
        Self::from_rows(&self.ctx, rows).expect("leading block of a valid matrix")
    }

    /// Determinant by fraction-free (Bareiss) elimination with row pivoting.
    pub fn det(&self) -> Result<FieldElement> {
        self.require_square()?;
        let n = self.rows;
        if n == 1 {
            return Ok(self.get(0, 0).clone());
        }
        if n == 2 {
            return Ok(self.get(0, 0) * self.get(1, 1) - self.get(0, 1) * self.get(1, 0));
        }
        let mut a = self.to_rows();
        let mut prev = FieldElement::one(&self.ctx);
        let mut negate = false;
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                    Some(r) => {
                        a.swap(k, r);
                        negate = !negate;
                    }
                    None => return Ok(FieldElement::zero(&self.ctx)),
                }
            }
            let prev_inv = prev.inverse()?;
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = &v * &prev_inv;
                }
            }
            prev = a[k][k].clone();
        }
        let d = a[n - 1][n - 1].clone();
        Ok(if negate { -d } else { d })
    }

    /// Leading principal minors `det(M[..k, ..k])` for `k = 1..=n`.
    pub fn leading_minors(&self) -> Result<Vec<FieldElement>> {
        self.require_square()?;
        (1..=self.rows).map(|k| self.leading(k).det()).collect()
    }

    /// True iff every leading principal minor is positive. For symmetric
    /// matrices this is Sylvester's criterion; no symmetry is required.
    pub fn leading_minors_positive(&self) -> Result<bool> {
        self.require_square()?;
        if !self.is_real() {
            return Err(Error::NotReal);
        }
        for m in self.leading_minors()? {
            if m.sign()? != 1 {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Positive definiteness of a real symmetric matrix (Sylvester).
    pub fn is_positive_definite(&self) -> Result<bool> {
        self.require_square()?;
        if !self.is_real() {
            return Err(Error::NotReal);
        }
        if !self.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        self.leading_minors_positive()
    }

    /// Positive definiteness of the quadratic form `x^t M x`, i.e. of the
    /// symmetrization of `M`.
    pub fn form_is_positive_definite(&self) -> Result<bool> {
        if !self.is_real() {
            return Err(Error::NotReal);
        }
        self.symmetrize()?.is_positive_definite()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn siegel() -> FieldMatrix {
        let k = FieldContext::new([-1, 2, 3, 5, 7]).unwrap();
        let i = k.i();
        let s = |d| k.sqrt(d).unwrap();
        FieldMatrix::from_rows(
            &k,
            vec![vec![&i * &s(5), &i * &s(2)], vec![&i * &s(7), &i * &s(3)]],
        )
        .unwrap()
    }

    #[test]
    fn det_identity_and_examples() {
        let k = FieldContext::new([-1, 2]).unwrap();
        assert!(FieldMatrix::identity(&k, 2).det().unwrap().is_one());
        assert!(FieldMatrix::identity(&k, 5).det().unwrap().is_one());
        let z2 = FieldMatrix::from_rows(
            &k,
            vec![vec![k.i(), k.sqrt(2).unwrap()], vec![k.zero(), k.i()]],
        )
        .unwrap();
        assert_eq!(z2.det().unwrap(), k.int(-1));

        let z1 = siegel();
        let c = z1.context().clone();
        let expected = c.sqrt(2).unwrap() * c.sqrt(7).unwrap() - c.sqrt(3).unwrap() * c.sqrt(5).unwrap();
        assert_eq!(z1.det().unwrap(), expected);
    }

    #[test]
    fn bareiss_matches_cofactor_expansion() {
        let k = FieldContext::new([2, 3]).unwrap();
        let s2 = k.sqrt(2).unwrap();
        let s3 = k.sqrt(3).unwrap();
        let m = FieldMatrix::from_rows(
            &k,
            vec![
                vec![k.zero(), s2.clone(), k.int(1)],
                vec![s3.clone(), k.int(2), &s2 * &s3],
                vec![k.int(-1), k.rational(1, 2), s3.clone()],
            ],
        )
        .unwrap();
        let e = |r: usize, c: usize| m.get(r, c).clone();
        let cof = e(0, 0) * (e(1, 1) * e(2, 2) - e(1, 2) * e(2, 1))
            - e(0, 1) * (e(1, 0) * e(2, 2) - e(1, 2) * e(2, 0))
            + e(0, 2) * (e(1, 0) * e(2, 1) - e(1, 1) * e(2, 0));
        assert_eq!(m.det().unwrap(), cof);
        assert!(matches!(
            FieldMatrix::from_rows(&k, vec![vec![k.one(), k.one()]]).unwrap().det(),
            Err(Error::NotSquare { rows: 1, cols: 2 })
        ));
    }

    #[test]
    fn positive_definiteness() {
        let k = FieldContext::new([2]).unwrap();
        let id = FieldMatrix::identity(&k, 2);
        assert!(id.is_positive_definite().unwrap());
        let m = FieldMatrix::from_rows(&k, vec![vec![k.int(1), k.int(2)], vec![k.int(2), k.int(1)]]).unwrap();
        assert!(!m.is_positive_definite().unwrap());
        let ns = FieldMatrix::from_rows(&k, vec![vec![k.int(1), k.int(2)], vec![k.int(0), k.int(1)]]).unwrap();
        assert_eq!(ns.is_positive_definite().unwrap_err(), Error::NotSymmetric);
    }

    #[test]
    fn siegel_imaginary_part() {
        let im = siegel().imag_part().unwrap();
        assert!(!im.is_symmetric());
        // minors sqrt(5) and sqrt(15) - sqrt(14) are positive
        assert!(im.leading_minors_positive().unwrap());
        // the symmetrized form has determinant sqrt(15) - (9 + 2 sqrt(14))/4 < 0
        assert!(!im.form_is_positive_definite().unwrap());
    }
}
