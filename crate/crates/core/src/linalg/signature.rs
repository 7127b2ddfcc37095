use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Inertia {
    pub pos: usize,
    pub neg: usize,
    pub zero: usize,
}

impl Inertia {
    pub fn as_tuple(&self) -> (usize, usize, usize) {
        (self.pos, self.neg, self.zero)
    }
}

/// Result of congruence diagonalization: `transform^t * M * transform = diag(diagonal)`.
#[derive(Clone, Debug)]
pub struct Diagonalization {
    pub inertia: Inertia,
    pub diagonal: Vec<BigRational>,
    pub transform: Vec<Vec<BigRational>>,
}

fn to_rational(m: &[Vec<BigInt>]) -> Vec<Vec<BigRational>> {
    m.iter()
        .map(|r| r.iter().map(|x| BigRational::from_integer(x.clone())).collect())
        .collect()
}

pub fn is_symmetric_int(m: &[Vec<BigInt>]) -> bool {
    let n = m.len();
    m.iter().all(|r| r.len() == n) && (0..n).all(|i| (0..i).all(|j| m[i][j] == m[j][i]))
}

// a <- E^t a E and s <- s E for E = I + f * e_src e_dst^t (col_dst += f col_src)
#[allow(clippy::needless_range_loop)]
fn add_multiple(a: &mut [Vec<BigRational>], s: &mut [Vec<BigRational>], dst: usize, src: usize, f: &BigRational) {
    let n = a.len();
    for r in 0..n {
        let v = &a[r][src] * f;
        a[r][dst] += v;
    }
    for c in 0..n {
        let v = &a[src][c] * f;
        a[dst][c] += v;
    }
    for row in s.iter_mut() {
        let v = &row[src] * f;
        row[dst] += v;
    }
}

fn swap(a: &mut [Vec<BigRational>], s: &mut [Vec<BigRational>], i: usize, j: usize) {
    if i == j {
        return;
    }
    a.swap(i, j);
    for row in a.iter_mut() {
        row.swap(i, j);
    }
    for row in s.iter_mut() {
        row.swap(i, j);
    }
}

/// Exact congruence diagonalization of a symmetric integer matrix by
/// symmetric Gaussian elimination over the rationals.
pub fn diagonalize(m: &[Vec<BigInt>]) -> Result<Diagonalization> {
    if !is_symmetric_int(m) {
        return Err(Error::NotSymmetric);
    }
    let n = m.len();
    let mut a = to_rational(m);
    let mut s: Vec<Vec<BigRational>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }).collect())
        .collect();
    for k in 0..n {
        if a[k][k].is_zero() {
            if let Some(i) = (k + 1..n).find(|&i| !a[i][i].is_zero()) {
                swap(&mut a, &mut s, k, i);
            } else if let Some((i, j)) = (k..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .find(|&(i, j)| !a[i][j].is_zero())
            {
                // diagonal is zero here, so (e_i + e_j) has norm 2 a_ij != 0
                add_multiple(&mut a, &mut s, i, j, &BigRational::one());
                swap(&mut a, &mut s, k, i);
            } else {
                break;
            }
        }
        let pivot = a[k][k].clone();
        for j in k + 1..n {
            if a[k][j].is_zero() {
                continue;
            }
            let f = -(&a[k][j] / &pivot);
            add_multiple(&mut a, &mut s, j, k, &f);
        }
    }
    let diagonal: Vec<BigRational> = (0..n).map(|i| a[i][i].clone()).collect();
    let inertia = Inertia {
        pos: diagonal.iter().filter(|d| d.is_positive()).count(),
        neg: diagonal.iter().filter(|d| d.is_negative()).count(),
        zero: diagonal.iter().filter(|d| d.is_zero()).count(),
    };
    Ok(Diagonalization {
        inertia,
        diagonal,
        transform: s,
    })
}

impl Diagonalization {
    /// Recomputes `S^t M S` exactly and compares with the diagonal.
    pub fn verify(&self, m: &[Vec<BigInt>]) -> bool {
        let n = m.len();
        let a = to_rational(m);
        let s = &self.transform;
        for i in 0..n {
            for j in 0..n {
                let mut acc = BigRational::zero();
                for k in 0..n {
                    if s[k][i].is_zero() {
                        continue;
                    }
                    for l in 0..n {
                        if !s[l][j].is_zero() && !a[k][l].is_zero() {
                            acc += &s[k][i] * &a[k][l] * &s[l][j];
                        }
                    }
                }
                let expect = if i == j { self.diagonal[i].clone() } else { BigRational::zero() };
                if acc != expect {
                    return false;
                }
            }
        }
        true
    }
}

/// Inertia `(pos, neg, zero)` of a symmetric integer matrix.
pub fn signature(m: &[Vec<BigInt>]) -> Result<Inertia> {
    Ok(diagonalize(m)?.inertia)
}
