//! Smith normal form over the integers, with transformation certificates.
//!
//! Pivoting always picks an entry of minimal absolute value in the active
//! block, which keeps intermediate entries small at the matrix sizes this
//! crate deals with. All arithmetic is arbitrary precision.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::intmat::IntMat;

/// Result of a Smith normal form computation: `u * a * v = s` with `u`, `v`
/// unimodular and the diagonal of `s` a divisibility chain d_1 | d_2 | ...
#[derive(Debug, Clone)]
pub struct SnfResult {
    pub s: IntMat,
    pub u: IntMat,
    pub v: IntMat,
    pub divisors: Vec<BigInt>,
}

impl SnfResult {
    /// Number of nonzero elementary divisors, i.e. the rank.
    pub fn rank(&self) -> usize {
        self.divisors.iter().filter(|d| !d.is_zero()).count()
    }

    /// Elementary divisors greater than 1, in chain order.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.divisors
            .iter()
            .filter(|d| !d.is_zero() && **d > BigInt::from(1))
            .cloned()
            .collect()
    }
}

/// Summary record for reports: just the diagonal.
#[derive(Debug, Clone, Serialize)]
pub struct SnfRecord {
    pub shape: (usize, usize),
    pub diagonal: Vec<String>,
}

impl From<&SnfResult> for SnfRecord {
    fn from(r: &SnfResult) -> Self {
        SnfRecord {
            shape: (r.s.rows(), r.s.cols()),
            diagonal: r.divisors.iter().map(BigInt::to_string).collect(),
        }
    }
}

pub fn smith_normal_form(a: &IntMat) -> SnfResult {
    let (m, n) = (a.rows(), a.cols());
    let mut s = a.clone();
    let mut u = IntMat::identity(m);
    let mut v = IntMat::identity(n);

    let limit = m.min(n);
    for k in 0..limit {
        if !reduce_pivot(&mut s, &mut u, &mut v, k) {
            break;
        }
    }

    // normalize signs
    for k in 0..limit {
        if s[(k, k)].is_negative() {
            s.negate_row(k);
            u.negate_row(k);
        }
    }

    let divisors = (0..limit).map(|k| s[(k, k)].clone()).collect();
    SnfResult { s, u, v, divisors }
}

/// Clears row and column `k` and makes the pivot divide the remaining block.
/// Returns false when the active block is zero.
fn reduce_pivot(s: &mut IntMat, u: &mut IntMat, v: &mut IntMat, k: usize) -> bool {
    let (m, n) = (s.rows(), s.cols());
    loop {
        let Some((pi, pj)) = min_abs_entry(s, k) else {
            return false;
        };
        s.swap_rows(k, pi);
        u.swap_rows(k, pi);
        s.swap_cols(k, pj);
        v.swap_cols(k, pj);

        let mut dirty = false;
        for r in k + 1..m {
            if s[(r, k)].is_zero() {
                continue;
            }
            let q = round_quotient(&s[(r, k)], &s[(k, k)]);
            if !q.is_zero() {
                let neg_q = -q;
                s.row_add(r, k, &neg_q);
                u.row_add(r, k, &neg_q);
            }
            dirty |= !s[(r, k)].is_zero();
        }
        for c in k + 1..n {
            if s[(k, c)].is_zero() {
                continue;
            }
            let q = round_quotient(&s[(k, c)], &s[(k, k)]);
            if !q.is_zero() {
                let neg_q = -q;
                s.col_add(c, k, &neg_q);
                v.col_add(c, k, &neg_q);
            }
            dirty |= !s[(k, c)].is_zero();
        }
        if dirty {
            continue; // leftovers are smaller than the pivot; pick again
        }

        // pivot must divide the rest of the block for the divisor chain
        if let Some(r) = (k + 1..m).find(|&r| {
            (k + 1..n).any(|c| !(&s[(r, c)] % &s[(k, k)]).is_zero())
        }) {
            let one = BigInt::from(1);
            s.row_add(k, r, &one);
            u.row_add(k, r, &one);
            continue;
        }
        return true;
    }
}

/// Position of a minimal-absolute-value nonzero entry in the block at (k, k),
/// ties broken in row-major order.
fn min_abs_entry(s: &IntMat, k: usize) -> Option<(usize, usize)> {
    let mut best: Option<((usize, usize), BigInt)> = None;
    for i in k..s.rows() {
        for j in k..s.cols() {
            let val = s[(i, j)].abs();
            if val.is_zero() {
                continue;
            }
            match &best {
                Some((_, b)) if *b <= val => {}
                _ => best = Some(((i, j), val)),
            }
        }
    }
    best.map(|(pos, _)| pos)
}

/// Quotient rounded to nearest, so remainders satisfy |r| <= |b|/2.
fn round_quotient(a: &BigInt, b: &BigInt) -> BigInt {
    let mut q = a / b;
    let r = a - &q * b;
    if r.abs() * 2 > b.abs() {
        if r.is_negative() == b.is_negative() {
            q += 1;
        } else {
            q -= 1;
        }
    }
    q
}

/// Cokernel of `a` viewed as a map Z^cols -> Z^rows: free rank and the
/// torsion coefficients (elementary divisors > 1).
pub fn cokernel(a: &IntMat) -> (usize, Vec<BigInt>) {
    let snf = smith_normal_form(a);
    (a.rows() - snf.rank(), snf.torsion())
}

/// Dimension of the kernel of `a` viewed as a map Z^cols -> Z^rows.
pub fn kernel_rank(a: &IntMat) -> usize {
    a.cols() - smith_normal_form(a).rank()
}
