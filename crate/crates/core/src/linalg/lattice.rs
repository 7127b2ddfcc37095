use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::rational::RationalMatrix;

/// A sublattice of `Z^n` with its basis in row-style Hermite normal form:
/// rows are in echelon form, pivots are positive and entries above a pivot
/// lie in `[0, pivot)`. The basis is therefore unique.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntegerLattice {
    pub ambient_dim: usize,
    #[serde(with = "crate::serde_util::bigint_rows")]
    pub basis: Vec<Vec<BigInt>>,
}

impl IntegerLattice {
    pub fn zero(ambient_dim: usize) -> Self {
        IntegerLattice {
            ambient_dim,
            basis: Vec::new(),
        }
    }

    /// Lattice spanned by arbitrary integer vectors (dependent ones allowed).
    pub fn from_generators(ambient_dim: usize, gens: Vec<Vec<BigInt>>) -> Self {
        for g in &gens {
            assert_eq!(g.len(), ambient_dim, "generator length");
        }
        IntegerLattice {
            ambient_dim,
            basis: hermite_normal_form(gens),
        }
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.basis.is_empty()
    }

    /// Exact membership test by reduction against the HNF basis.
    pub fn contains(&self, v: &[BigInt]) -> bool {
        if v.len() != self.ambient_dim {
            return false;
        }
        let mut v = v.to_vec();
        for row in &self.basis {
            let p = pivot_col(row).expect("basis rows are nonzero");
            // echelon form: anything left of this pivot must already be cleared
            if v[..p].iter().any(|x| !x.is_zero()) {
                return false;
            }
            let (q, r) = v[p].div_rem(&row[p]);
            if !r.is_zero() {
                return false;
            }
            if !q.is_zero() {
                for (x, b) in v.iter_mut().zip(row) {
                    *x -= &q * b;
                }
            }
        }
        v.iter().all(Zero::is_zero)
    }
}

fn pivot_col(row: &[BigInt]) -> Option<usize> {
    row.iter().position(|x| !x.is_zero())
}

/// Row-style Hermite normal form of the lattice spanned by `rows`; zero
/// rows are dropped.
pub fn hermite_normal_form(mut rows: Vec<Vec<BigInt>>) -> Vec<Vec<BigInt>> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        // gcd-combine all entries of column c (rows r..) into row r
        for i in r + 1..rows.len() {
            if rows[i][c].is_zero() {
                continue;
            }
            if rows[r][c].is_zero() {
                rows.swap(r, i);
                continue;
            }
            let a = rows[r][c].clone();
            let b = rows[i][c].clone();
            let e = a.extended_gcd(&b);
            let (g, x, y) = (e.gcd, e.x, e.y);
            let a_g = &a / &g;
            let b_g = &b / &g;
            let (top, bottom): (Vec<BigInt>, Vec<BigInt>) = rows[r]
                .iter()
                .zip(&rows[i])
                .map(|(u, v)| (&x * u + &y * v, &a_g * v - &b_g * u))
                .unzip();
            rows[r] = top;
            rows[i] = bottom;
        }
        if rows[r][c].is_zero() {
            continue;
        }
        if rows[r][c].is_negative() {
            for x in rows[r].iter_mut() {
                *x = -x.clone();
            }
        }
        let p = rows[r][c].clone();
        for i in 0..r {
            let q = rows[i][c].div_floor(&p);
            if !q.is_zero() {
                let pivot_row = rows[r].clone();
                for (x, b) in rows[i].iter_mut().zip(&pivot_row) {
                    *x -= &q * b;
                }
            }
        }
        r += 1;
    }
    rows.truncate(r);
    rows.retain(|row| row.iter().any(|x| !x.is_zero()));
    rows
}

/// The lattice `{v in Z^c : M v = 0}`.
///
/// Rows are cleared of denominators, then column operations tracked in a
/// unimodular matrix `U` bring `M` to lower echelon form `M U = [L | 0]`;
/// the columns of `U` opposite the zero block form a basis of the kernel.
pub fn integer_kernel(m: &RationalMatrix) -> IntegerLattice {
    let c = m.cols();
    let mut a: Vec<Vec<BigInt>> = m
        .to_integer_rows()
        .into_iter()
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .collect();
    // u[j] is column j of U
    let mut u: Vec<Vec<BigInt>> = (0..c)
        .map(|j| (0..c).map(|i| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect();
    let mut pc = 0;
    for row in 0..a.len() {
        if pc == c {
            break;
        }
        for j in pc + 1..c {
            if a[row][j].is_zero() {
                continue;
            }
            if a[row][pc].is_zero() {
                swap_cols(&mut a, pc, j);
                u.swap(pc, j);
                continue;
            }
            let x0 = a[row][pc].clone();
            let x1 = a[row][j].clone();
            let e = x0.extended_gcd(&x1);
            let (g, s, t) = (e.gcd, e.x, e.y);
            let p = &x0 / &g;
            let q = &x1 / &g;
            // [col_pc, col_j] <- [s col_pc + t col_j, -q col_pc + p col_j]
            for r in a.iter_mut() {
                let (v0, v1) = (r[pc].clone(), r[j].clone());
                r[pc] = &s * &v0 + &t * &v1;
                r[j] = &p * &v1 - &q * &v0;
            }
            let (u0, u1) = (u[pc].clone(), u[j].clone());
            u[pc] = u0.iter().zip(&u1).map(|(x, y)| &s * x + &t * y).collect();
            u[j] = u0.iter().zip(&u1).map(|(x, y)| &p * y - &q * x).collect();
        }
        if !a[row][pc].is_zero() {
            pc += 1;
        }
    }
    IntegerLattice::from_generators(c, u.split_off(pc))
}

fn swap_cols(a: &mut [Vec<BigInt>], i: usize, j: usize) {
    for r in a.iter_mut() {
        r.swap(i, j);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn kernel_of_one_minus_one() {
        let m = RationalMatrix::from_i64_rows(&[vec![1, -1]]).unwrap();
        let k = integer_kernel(&m);
        assert_eq!(k.basis, vec![v(&[1, 1])]);
    }

    #[test]
    fn kernel_of_identity_is_trivial() {
        assert!(integer_kernel(&RationalMatrix::identity(5)).is_trivial());
    }

    #[test]
    fn kernel_of_zero_matrix_is_everything() {
        let k = integer_kernel(&RationalMatrix::zeros(2, 3));
        assert_eq!(k.basis, vec![v(&[1, 0, 0]), v(&[0, 1, 0]), v(&[0, 0, 1])]);
    }

    #[test]
    fn kernel_saturates() {
        // 2x - 4y = 0 has integer kernel spanned by (2, 1), not (4, 2)
        let m = RationalMatrix::from_i64_rows(&[vec![2, -4]]).unwrap();
        assert_eq!(integer_kernel(&m).basis, vec![v(&[2, 1])]);
        // x/2 + y/3 = 0 -> (2, -3)
        let m = RationalMatrix::from_rows(vec![vec![
            num_rational::BigRational::new(1.into(), 2.into()),
            num_rational::BigRational::new(1.into(), 3.into()),
        ]])
        .unwrap();
        assert_eq!(integer_kernel(&m).basis, vec![v(&[2, -3])]);
    }

    #[test]
    fn shafarevich_kernel() {
        let m = RationalMatrix::from_i64_rows(&[
            vec![1, 0, 0, 0, 0, -1],
            vec![0, 1, 0, 0, 1, 0],
            vec![0, 0, 1, 0, 0, 0],
            vec![0, 0, 0, 0, 0, 0],
        ])
        .unwrap();
        let k = integer_kernel(&m);
        assert_eq!(
            k.basis,
            vec![v(&[1, 0, 0, 0, 0, 1]), v(&[0, 1, 0, 0, -1, 0]), v(&[0, 0, 0, 1, 0, 0])]
        );
        assert!(k.contains(&v(&[0, -1, 0, 0, 1, 0])));
        assert!(k.contains(&v(&[3, 2, 0, -7, -2, 3])));
        assert!(!k.contains(&v(&[1, 0, 0, 0, 0, 0])));
    }

    #[test]
    fn hnf_is_canonical() {
        let a = hermite_normal_form(vec![v(&[2, 4, 4]), v(&[-6, 6, 12]), v(&[10, -4, -16])]);
        // unimodular recombination of the same generators
        let b = hermite_normal_form(vec![v(&[-4, 10, 16]), v(&[-6, 6, 12]), v(&[14, 4, -8])]);
        assert_eq!(a, b);
        for (i, row) in a.iter().enumerate() {
            let p = pivot_col(row).unwrap();
            assert!(row[p].is_positive());
            for earlier in &a[..i] {
                assert!(!earlier[p].is_negative() && earlier[p] < row[p]);
            }
        }
    }

    #[test]
    fn membership_respects_echelon_order() {
        let l = IntegerLattice::from_generators(3, vec![v(&[0, 2, 0]), v(&[0, 0, 3])]);
        assert!(l.contains(&v(&[0, 4, -3])));
        assert!(!l.contains(&v(&[1, 0, 0])));
        assert!(!l.contains(&v(&[0, 1, 0])));
        assert!(!l.contains(&v(&[0, 0])));
    }
}
