use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::field::{FieldContext, FieldElement};

/// Dense matrix over the rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            data: vec![BigRational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigRational::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigRational>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: row.len(),
                });
            }
            data.extend(row);
        }
        Ok(RationalMatrix {
            rows: nrows,
            cols,
            data,
        })
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigRational::from_integer(x.into())).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigRational {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigRational) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[BigRational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// `M v` for an integer vector.
    pub fn apply_integer(&self, v: &[BigInt]) -> Vec<BigRational> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .filter(|(_, x)| !x.is_zero())
                    .map(|(a, x)| a * BigRational::from_integer(x.clone()))
                    .sum()
            })
            .collect()
    }

    /// Each row scaled by the lcm of its denominators.
    pub fn to_integer_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|r| {
                let row = self.row(r);
                let l = row
                    .iter()
                    .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
                row.iter()
                    .map(|q| (q * BigRational::from_integer(l.clone())).to_integer())
                    .collect()
            })
            .collect()
    }

    /// Rank by Gaussian elimination over the rationals.
    #[allow(clippy::needless_range_loop)]
    pub fn rank(&self) -> usize {
        let mut a: Vec<Vec<BigRational>> = (0..self.rows).map(|r| self.row(r).to_vec()).collect();
        let mut rank = 0;
        for c in 0..self.cols {
            let Some(p) = (rank..self.rows).find(|&r| !a[r][c].is_zero()) else {
                continue;
            };
            a.swap(rank, p);
            let inv = a[rank][c].recip();
            for r in rank + 1..self.rows {
                if a[r][c].is_zero() {
                    continue;
                }
                let f = &a[r][c] * &inv;
                for k in c..self.cols {
                    let v = &a[rank][k] * &f;
                    a[r][k] -= v;
                }
            }
            rank += 1;
            if rank == self.rows {
                break;
            }
        }
        rank
    }
}

/// Splits a row of field elements into its rational basis coordinates.
///
/// Row `s` of the output holds the coordinate of every entry on the basis
/// subset `s`, so an integer vector annihilates the field row exactly when
/// it lies in the kernel of the returned `2^k x c` matrix.
pub fn field_row_to_rational_system(row: &[FieldElement]) -> Result<RationalMatrix> {
    let mut ctx = FieldContext::rationals();
    for e in row {
        ctx = FieldContext::merge(&ctx, e.context())?;
    }
    let promoted = row
        .iter()
        .map(|e| e.promote(&ctx))
        .collect::<Result<Vec<_>>>()?;
    let mut m = RationalMatrix::zeros(ctx.dim(), row.len());
    for (c, e) in promoted.iter().enumerate() {
        for (mask, q) in e.coords() {
            m.set(mask as usize, c, q.clone());
        }
    }
    Ok(m)
}
