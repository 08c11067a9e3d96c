//! Integer partitions, plane partitions and the MacMahon function.
//!
//! The brute-force enumerators here are deliberately independent of any
//! series arithmetic: they are the oracles the generating functions are
//! checked against.

use num::{BigInt, One, Zero};

use crate::error::{Error, Result};
use crate::series::{Precision, QLaurent, Rational};

/// Largest `k` accepted by [`partition_count_oracle`].
pub const PARTITION_ORACLE_MAX: u32 = 40;
/// Largest `n` accepted by [`plane_partition_oracle`].
pub const PLANE_PARTITION_ORACLE_MAX: u32 = 12;

/// `p(0), ..., p(n)` by Euler's pentagonal-number recurrence.
pub fn partition_counts(n: u32) -> Vec<BigInt> {
    let n = n as usize;
    let mut p: Vec<BigInt> = Vec::with_capacity(n + 1);
    p.push(BigInt::one());
    for m in 1..=n {
        let mut acc = BigInt::zero();
        for k in 1.. {
            let g1 = k * (3 * k - 1) / 2;
            if g1 > m {
                break;
            }
            let g2 = k * (3 * k + 1) / 2;
            let mut term = p[m - g1].clone();
            if g2 <= m {
                term += &p[m - g2];
            }
            if k % 2 == 1 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        p.push(acc);
    }
    p
}

/// Number of integer partitions of `k`.
pub fn partition_count(k: u32) -> BigInt {
    partition_counts(k).pop().expect("non-empty")
}

/// Number of partitions of `k` by listing every non-increasing sequence
/// of positive parts summing to `k`.
pub fn partition_count_oracle(k: u32) -> Result<BigInt> {
    if k > PARTITION_ORACLE_MAX {
        return Err(Error::OutOfRange {
            what: "k",
            value: k as i64,
            bound: format!("enumeration oracle handles k <= {PARTITION_ORACLE_MAX}"),
        });
    }
    fn visit(remaining: u32, largest: u32, parts: &mut Vec<u32>, count: &mut u64) {
        if remaining == 0 {
            debug_assert!(parts.windows(2).all(|w| w[0] >= w[1]));
            *count += 1;
            return;
        }
        for part in (1..=largest.min(remaining)).rev() {
            parts.push(part);
            visit(remaining - part, part, parts, count);
            parts.pop();
        }
    }
    let mut count = 0u64;
    visit(k, k, &mut Vec::new(), &mut count);
    Ok(BigInt::from(count))
}

/// Number of plane partitions of `n`: arrays of positive integers whose
/// rows and columns are weakly decreasing, with total `n`.
///
/// Rows are generated top to bottom, each one a partition dominated
/// entrywise by the row above it.
pub fn plane_partition_oracle(n: u32) -> Result<BigInt> {
    if n > PLANE_PARTITION_ORACLE_MAX {
        return Err(Error::OutOfRange {
            what: "n",
            value: n as i64,
            bound: format!("enumeration oracle handles n <= {PLANE_PARTITION_ORACLE_MAX}"),
        });
    }

    // Fill `row` left to right under `above`; each finished non-empty row
    // starts the enumeration of the rows below it.
    fn extend_row(
        remaining: u32,
        above: &[u32],
        row: &mut Vec<u32>,
        row_sum: u32,
        count: &mut u64,
    ) {
        if row_sum > 0 {
            stack_rows(remaining - row_sum, row, count);
        }
        let j = row.len();
        if j == above.len() {
            return;
        }
        let cap = above[j]
            .min(row.last().copied().unwrap_or(u32::MAX))
            .min(remaining - row_sum);
        for v in 1..=cap {
            row.push(v);
            extend_row(remaining, above, row, row_sum + v, count);
            row.pop();
        }
    }

    fn stack_rows(remaining: u32, above: &[u32], count: &mut u64) {
        if remaining == 0 {
            *count += 1;
            return;
        }
        let mut row = Vec::new();
        extend_row(remaining, above, &mut row, 0, count);
    }

    let mut count = 0u64;
    let top = vec![n; n as usize];
    stack_rows(n, &top, &mut count);
    Ok(BigInt::from(count))
}

/// Sign of the argument of the MacMahon function: `M(q)` or `M(-q)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QSign {
    Plus,
    Minus,
}

impl QSign {
    pub fn from_int(s: i64) -> Option<Self> {
        match s {
            1 => Some(QSign::Plus),
            -1 => Some(QSign::Minus),
            _ => None,
        }
    }
}

/// `log M(q) = sum_n n sum_m q^(nm) / m = sum_N sigma_2(N)/N q^N`.
pub fn mcmahon_log(order: u32) -> QLaurent {
    let order = order as i64;
    let mut coeffs = vec![Rational::zero(); order as usize + 1];
    for n in 1..=order {
        for m in 1..=order / n {
            coeffs[(n * m) as usize] += Rational::new(n.into(), m.into());
        }
    }
    QLaurent::from_terms(
        coeffs.into_iter().enumerate().map(|(e, c)| (e as i64, c)),
        Precision::Finite(order),
    )
}

/// `M(sign * q) = prod_n (1 - (sign q)^n)^(-n)` up to `q^order`, obtained
/// by exponentiating [`mcmahon_log`].
pub fn mcmahon_series(order: u32, sign: QSign) -> QLaurent {
    let m = mcmahon_log(order)
        .exp(order as i64)
        .expect("log series has no constant term");
    match sign {
        QSign::Plus => m,
        QSign::Minus => m.negate_q(),
    }
}

/// `prod_{k>=1} (1 - t^k)^(-1)` up to `t^order`, expanded factor by factor
/// as geometric series.
pub fn euler_product_inverse(order: u32) -> Vec<BigInt> {
    let n = order as usize;
    let mut acc = vec![BigInt::zero(); n + 1];
    acc[0] = BigInt::one();
    for k in 1..=n {
        for e in k..=n {
            let add = acc[e - k].clone();
            acc[e] += add;
        }
    }
    acc
}
