//! Brute-force oracles, independent of the library algorithms.
//!
//! `relations` finds `m in [-B, B]^n`, `m != 0`, with `sum m_i x_i = 0` by meet in the
//! middle: left half sums are hashed, right half sums are looked up negated.

#![allow(dead_code)]

use std::collections::HashMap;
use degree0::{FieldContext, FieldElement};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;

pub const BOX: i64 = 10;

/// Coordinates of every `x_i` over one basis, scaled to integers by a
/// common denominator (which does not change the relations).
fn integer_columns(xs: &[FieldElement]) -> Vec<Vec<i128>> {
    let ctx = xs
        .iter()
        .fold(FieldContext::rationals(), |c, x| FieldContext::merge(&c, x.context()).unwrap());
    let xs: Vec<FieldElement> = xs.iter().map(|x| x.promote(&ctx).unwrap()).collect();
    let dim = ctx.dim() as u32;
    let mut den = BigInt::from(1);
    for x in &xs {
        for (_, q) in x.coords() {
            den = den.lcm(q.denom());
        }
    }
    xs.iter()
        .map(|x| {
            (0..dim)
                .map(|m| {
                    let v = x.coord(m) * BigRational::from_integer(den.clone());
                    i128::try_from(v.to_integer()).expect("oracle coordinates fit in i128")
                })
                .collect()
        })
        .collect()
}

fn half_sums(cols: &[Vec<i128>], bound: i64, dim: usize) -> Vec<(Vec<i128>, Vec<i64>)> {
    let mut out = vec![(vec![0i128; dim], Vec::new())];
    for col in cols {
        let mut next = Vec::with_capacity(out.len() * (2 * bound as usize + 1));
        for (acc, cs) in &out {
            for c in -bound..=bound {
                let v: Vec<i128> = acc
                    .iter()
                    .zip(col)
                    .map(|(a, x)| a.checked_add(x.checked_mul(c as i128).unwrap()).unwrap())
                    .collect();
                let mut cs = cs.clone();
                cs.push(c);
                next.push((v, cs));
            }
        }
        out = next;
    }
    out
}

/// Outcome of a box search: whether any nonzero relation exists, plus up to
/// `cap` of them.
pub struct Relations {
    pub any: bool,
    pub sample: Vec<Vec<i64>>,
}

pub fn relations(xs: &[FieldElement], bound: i64, cap: usize) -> Relations {
    let cols = integer_columns(xs);
    let dim = cols.first().map_or(0, Vec::len);
    let (left, right) = cols.split_at(cols.len() / 2);
    let mut table: HashMap<Vec<i128>, Vec<Vec<i64>>> = HashMap::new();
    for (v, cs) in half_sums(left, bound, dim) {
        table.entry(v).or_default().push(cs);
    }
    let mut out = Relations { any: false, sample: Vec::new() };
    for (v, cs) in half_sums(right, bound, dim) {
        let neg: Vec<i128> = v.iter().map(|x| -x).collect();
        if let Some(lefts) = table.get(&neg) {
            for l in lefts {
                let m: Vec<i64> = l.iter().chain(&cs).copied().collect();
                if m.iter().any(|&c| c != 0) {
                    out.any = true;
                    if out.sample.len() >= cap {
                        return out;
                    }
                    out.sample.push(m);
                }
            }
        }
    }
    out
}

pub fn to_big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

pub fn in_box(v: &[BigInt], bound: i64) -> bool {
    v.iter().all(|x| *x <= BigInt::from(bound) && *x >= BigInt::from(-bound))
}

pub const POWER_CAP: usize = 40;

/// Smallest `(m, n)` with `a^m = d^n` and `m, n <= POWER_CAP`, by direct search.
pub fn brute_power(a: &BigRational, d: &BigRational) -> Option<(i64, i64)> {
    let powers = |x: &BigRational| -> Vec<BigRational> {
        std::iter::successors(Some(x.clone()), |p| Some(p * x)).take(POWER_CAP).collect()
    };
    let (pa, pd) = (powers(a), powers(d));
    for (m, x) in pa.iter().enumerate() {
        if let Some(n) = pd.iter().position(|y| y == x) {
            return Some((m as i64 + 1, n as i64 + 1));
        }
    }
    None
}
