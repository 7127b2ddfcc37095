//! Integer lattices used as intersection forms.

use num_bigint::BigInt;

fn to_big(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
    rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

/// The hyperbolic plane `U = [[0, 1], [1, 0]]`.
pub fn hyperbolic() -> Vec<Vec<BigInt>> {
    to_big(&[&[0, 1], &[1, 0]])
}

/// Cartan matrix of E8 (positive definite, determinant 1), Bourbaki numbering.
pub fn e8() -> Vec<Vec<BigInt>> {
    to_big(&[
        &[2, 0, -1, 0, 0, 0, 0, 0],
        &[0, 2, 0, -1, 0, 0, 0, 0],
        &[-1, 0, 2, -1, 0, 0, 0, 0],
        &[0, -1, -1, 2, -1, 0, 0, 0],
        &[0, 0, 0, -1, 2, -1, 0, 0],
        &[0, 0, 0, 0, -1, 2, -1, 0],
        &[0, 0, 0, 0, 0, -1, 2, -1],
        &[0, 0, 0, 0, 0, 0, -1, 2],
    ])
}

pub fn e8_negative() -> Vec<Vec<BigInt>> {
    negate(&e8())
}

pub fn negate(m: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    m.iter().map(|r| r.iter().map(|x| -x).collect()).collect()
}

/// Orthogonal direct sum.
pub fn direct_sum(blocks: &[Vec<Vec<BigInt>>]) -> Vec<Vec<BigInt>> {
    let n: usize = blocks.iter().map(Vec::len).sum();
    let mut out = vec![vec![BigInt::from(0); n]; n];
    let mut off = 0;
    for b in blocks {
        for (i, row) in b.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                out[off + i][off + j] = x.clone();
            }
        }
        off += b.len();
    }
    out
}

/// `U + U`.
pub fn hyperbolic_pair() -> Vec<Vec<BigInt>> {
    direct_sum(&[hyperbolic(), hyperbolic()])
}

/// The K3 lattice `U^3 + E8(-1)^2`, rank 22.
pub fn k3_lattice() -> Vec<Vec<BigInt>> {
    direct_sum(&[
        hyperbolic(),
        hyperbolic(),
        hyperbolic(),
        e8_negative(),
        e8_negative(),
    ])
}
