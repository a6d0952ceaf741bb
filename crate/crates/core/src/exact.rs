//! Exact integer elimination used by the linear representation.
//!
//! Rational columns are scaled to primitive integer vectors once at
//! construction (scaling a column never changes the matroid). Rank queries
//! then run cross-multiplying elimination with gcd normalisation on `i128`,
//! dropping to `BigInt` whenever an intermediate overflows.

use alloc::vec::Vec;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

/// Integer images of the representing vectors.
#[derive(Debug, Clone)]
pub(crate) struct IntColumns {
    pub(crate) big: Vec<Vec<BigInt>>,
    /// Present when every entry of every column fits in an `i64`.
    pub(crate) small: Option<Vec<Vec<i64>>>,
}

impl IntColumns {
    pub(crate) fn from_rational(columns: &[Vec<BigRational>]) -> Self {
        let big: Vec<Vec<BigInt>> = columns.iter().map(|c| primitive_integer_vector(c)).collect();
        let small = big
            .iter()
            .map(|c| c.iter().map(|x| x.to_i64()).collect::<Option<Vec<i64>>>())
            .collect::<Option<Vec<_>>>();
        IntColumns { big, small }
    }

    pub(crate) fn rank_of(&self, elements: &[usize]) -> usize {
        if let Some(small) = &self.small {
            let mut rows: Vec<Vec<i128>> = elements
                .iter()
                .map(|&e| small[e].iter().map(|&x| x as i128).collect())
                .collect();
            if let Some(r) = rank_i128(&mut rows) {
                return r;
            }
        }
        let rows = elements.iter().map(|&e| self.big[e].clone()).collect();
        rank_big(rows)
    }
}

/// Scales a rational vector by the lcm of its denominators and divides out
/// the gcd of the numerators.
pub(crate) fn primitive_integer_vector(col: &[BigRational]) -> Vec<BigInt> {
    let lcm = col.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = col.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() || g.is_one() {
        ints
    } else {
        ints.into_iter().map(|x| x / &g).collect()
    }
}

fn gcd_i128(mut a: i128, mut b: i128) -> i128 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub(crate) fn normalize_i128(row: &mut [i128]) {
    let g = row.iter().fold(0i128, |acc, &x| gcd_i128(acc, x));
    if g > 1 {
        row.iter_mut().for_each(|x| *x /= g);
    }
}

/// `target <- pivot_val * target - target[col] * pivot_row`; `None` on overflow.
pub(crate) fn eliminate_i128(target: &mut [i128], pivot_row: &[i128], col: usize) -> Option<()> {
    let a = pivot_row[col];
    let b = target[col];
    if b == 0 {
        return Some(());
    }
    for (t, &p) in target.iter_mut().zip(pivot_row) {
        *t = a.checked_mul(*t)?.checked_sub(b.checked_mul(p)?)?;
    }
    normalize_i128(target);
    Some(())
}

/// Rank of the row set; `None` if an intermediate value overflows.
pub(crate) fn rank_i128(rows: &mut [Vec<i128>]) -> Option<usize> {
    let width = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..width {
        let Some(p) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, p);
        let (head, tail) = rows.split_at_mut(rank + 1);
        let pivot = &head[rank];
        for row in tail.iter_mut() {
            eliminate_i128(row, pivot, col)?;
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    Some(rank)
}

pub(crate) fn rank_big(mut rows: Vec<Vec<BigInt>>) -> usize {
    let width = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..width {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let (head, tail) = rows.split_at_mut(rank + 1);
        let pivot = &head[rank];
        for row in tail.iter_mut() {
            if row[col].is_zero() {
                continue;
            }
            let a = pivot[col].clone();
            let b = row[col].clone();
            for (t, q) in row.iter_mut().zip(pivot.iter()) {
                *t = &a * &*t - &b * q;
            }
            let g = row.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
            if !g.is_zero() && !g.is_one() {
                row.iter_mut().for_each(|x| *x = &*x / &g);
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}
