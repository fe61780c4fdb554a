//! Matrices over GW(k) and their diagonalization by elementary equivalence.
//!
//! Reduction uses independent row and column operations (equivalence, not
//! congruence). The pivot strategy is greedy: take the leftmost-uppermost
//! unit entry, otherwise look for a single add-multiple step that creates a
//! unit somewhere; when neither exists the remaining block is returned as a
//! residual. Every step is recorded, so the result doubles as a replayable
//! certificate.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::FieldDescriptor;
use crate::gw::{GwElement, GwElementRecord};
use crate::intmat::IntMat;
use crate::snf::smith_normal_form;

/// Rectangular matrix over GW(k); all entries share one field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GwMatrix {
    field: FieldDescriptor,
    rows: usize,
    cols: usize,
    entries: Vec<GwElement>,
}

impl GwMatrix {
    pub fn new(field: FieldDescriptor, rows: usize, cols: usize, entries: Vec<GwElement>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::validation(
                "gw_matrix.entries",
                format!("expected {} entries, got {}", rows * cols, entries.len()),
            ));
        }
        for e in &entries {
            field.check_same(&e.field())?;
        }
        Ok(GwMatrix {
            field,
            rows,
            cols,
            entries,
        })
    }

    pub fn zeros(field: FieldDescriptor, rows: usize, cols: usize) -> Self {
        GwMatrix {
            field,
            rows,
            cols,
            entries: vec![GwElement::zero(field); rows * cols],
        }
    }

    pub fn field(&self) -> FieldDescriptor {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> GwElement {
        self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: GwElement) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// Entrywise rank homomorphism GW(k) -> Z.
    pub fn rank_realization(&self) -> IntMat {
        let mut out = IntMat::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(i, j)] = BigInt::from(self.get(i, j).rank());
            }
        }
        out
    }

    /// Entrywise signature; defined over the real closed field only.
    pub fn signature_realization(&self) -> Result<IntMat> {
        if !self.field.is_real_closed() {
            return Err(Error::WrongField(self.field.to_string()));
        }
        let mut out = IntMat::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(i, j)] = BigInt::from(self.get(i, j).signature());
            }
        }
        Ok(out)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.entries.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    fn row_add(&mut self, target: usize, source: usize, factor: GwElement) {
        for j in 0..self.cols {
            let v = self.get(target, j) + factor * self.get(source, j);
            self.set(target, j, v);
        }
    }

    fn col_add(&mut self, target: usize, source: usize, factor: GwElement) {
        for i in 0..self.rows {
            let v = self.get(i, target) + factor * self.get(i, source);
            self.set(i, target, v);
        }
    }

    fn scale_row(&mut self, row: usize, unit: GwElement) {
        for j in 0..self.cols {
            let v = unit * self.get(row, j);
            self.set(row, j, v);
        }
    }

    fn scale_col(&mut self, col: usize, unit: GwElement) {
        for i in 0..self.rows {
            let v = unit * self.get(i, col);
            self.set(i, col, v);
        }
    }

    pub fn apply_row_op(&mut self, op: &ElementaryOp) {
        match op {
            ElementaryOp::Swap { a, b } => self.swap_rows(*a, *b),
            ElementaryOp::AddMultiple { target, source, factor } => self.row_add(*target, *source, *factor),
            ElementaryOp::Scale { index, unit } => self.scale_row(*index, *unit),
        }
    }

    pub fn apply_col_op(&mut self, op: &ElementaryOp) {
        match op {
            ElementaryOp::Swap { a, b } => self.swap_cols(*a, *b),
            ElementaryOp::AddMultiple { target, source, factor } => self.col_add(*target, *source, *factor),
            ElementaryOp::Scale { index, unit } => self.scale_col(*index, *unit),
        }
    }
}

impl std::fmt::Display for GwMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let cells: Vec<Vec<String>> = (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).to_string()).collect())
            .collect();
        let widths: Vec<usize> = (0..self.cols)
            .map(|j| cells.iter().map(|row| row[j].len()).max().unwrap_or(1))
            .collect();
        for row in &cells {
            write!(f, "[")?;
            for (j, cell) in row.iter().enumerate() {
                write!(f, " {:>width$}", cell, width = widths[j])?;
            }
            writeln!(f, " ]")?;
        }
        Ok(())
    }
}

/// One elementary equivalence operation; `AddMultiple` admits an arbitrary
/// GW factor, `Scale` must use a unit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ElementaryOp {
    Swap { a: usize, b: usize },
    AddMultiple {
        target: usize,
        source: usize,
        factor: GwElement,
    },
    Scale { index: usize, unit: GwElement },
}

/// Outcome of `gw_diagonalize`: unit diagonal entries first, then non-unit
/// diagonal entries (zero rows and columns contribute trailing zeros), then
/// an optional residual block that contains no unit and admits no
/// unit-producing single add-multiple step. Replaying `left_ops` (row side)
/// and `right_ops` (column side) over the input reproduces `claimed_matrix`.
#[derive(Debug, Clone)]
pub struct DiagonalizationResult {
    pub field: FieldDescriptor,
    pub shape: (usize, usize),
    pub diagonal: Vec<GwElement>,
    pub unit_count: usize,
    pub residual_block: Option<GwMatrix>,
    pub left_ops: Vec<ElementaryOp>,
    pub right_ops: Vec<ElementaryOp>,
    /// SNF diagonal of the rank realization of the input.
    pub rank_snf_diagonal: Vec<BigInt>,
    /// SNF diagonal of the signature realization (real closed field only).
    pub signature_snf_diagonal: Option<Vec<BigInt>>,
}

impl DiagonalizationResult {
    /// The matrix the certificate claims to produce: diagonal entries on the
    /// leading diagonal, the residual block immediately after, zeros elsewhere.
    pub fn claimed_matrix(&self) -> GwMatrix {
        let (rows, cols) = self.shape;
        let mut m = GwMatrix::zeros(self.field, rows, cols);
        for (i, d) in self.diagonal.iter().enumerate() {
            m.set(i, i, *d);
        }
        if let Some(block) = &self.residual_block {
            let off = self.diagonal.len();
            for i in 0..block.rows() {
                for j in 0..block.cols() {
                    m.set(off + i, off + j, block.get(i, j));
                }
            }
        }
        m
    }

    /// Replays the recorded operations over `input`.
    pub fn replay(&self, input: &GwMatrix) -> GwMatrix {
        let mut m = input.clone();
        for op in &self.left_ops {
            m.apply_row_op(op);
        }
        for op in &self.right_ops {
            m.apply_col_op(op);
        }
        m
    }
}

pub fn gw_diagonalize(input: &GwMatrix) -> DiagonalizationResult {
    let field = input.field();
    let (rows, cols) = (input.rows(), input.cols());
    let limit = rows.min(cols);
    let mut a = input.clone();
    let mut left: Vec<ElementaryOp> = Vec::new();
    let mut right: Vec<ElementaryOp> = Vec::new();
    let one = GwElement::one(field);
    let minus_one = -one;

    let mut k = 0;
    while k < limit {
        if let Some((i, j)) = find_unit(&a, k) {
            if i != k {
                a.swap_rows(k, i);
                left.push(ElementaryOp::Swap { a: k, b: i });
            }
            if j != k {
                a.swap_cols(k, j);
                right.push(ElementaryOp::Swap { a: k, b: j });
            }
            let pivot = a.get(k, k);
            if pivot != one {
                // units square to <1>, so scaling by the pivot normalizes it
                a.scale_row(k, pivot);
                left.push(ElementaryOp::Scale { index: k, unit: pivot });
            }
            for r in k + 1..rows {
                let f = a.get(r, k);
                if !f.is_zero() {
                    a.row_add(r, k, -f);
                    left.push(ElementaryOp::AddMultiple {
                        target: r,
                        source: k,
                        factor: -f,
                    });
                }
            }
            for c in k + 1..cols {
                let f = a.get(k, c);
                if !f.is_zero() {
                    a.col_add(c, k, -f);
                    right.push(ElementaryOp::AddMultiple {
                        target: c,
                        source: k,
                        factor: -f,
                    });
                }
            }
            k += 1;
        } else if let Some(op) = find_unit_creating_op(&a, k) {
            match op {
                ProbeOp::Row { target, source, factor } => {
                    a.row_add(target, source, factor);
                    left.push(ElementaryOp::AddMultiple { target, source, factor });
                }
                ProbeOp::Col { target, source, factor } => {
                    a.col_add(target, source, factor);
                    right.push(ElementaryOp::AddMultiple { target, source, factor });
                }
            }
        } else {
            break;
        }
    }

    // Leftover block at (k.., k..): push zero rows down and zero columns
    // right, then either absorb a diagonal block or report a residual.
    let mut nonzero_rows = k;
    for r in k..rows {
        if (k..cols).any(|j| !a.get(r, j).is_zero()) {
            if r != nonzero_rows {
                a.swap_rows(nonzero_rows, r);
                left.push(ElementaryOp::Swap { a: nonzero_rows, b: r });
            }
            nonzero_rows += 1;
        }
    }
    let mut nonzero_cols = k;
    for c in k..cols {
        if (k..rows).any(|i| !a.get(i, c).is_zero()) {
            if c != nonzero_cols {
                a.swap_cols(nonzero_cols, c);
                right.push(ElementaryOp::Swap { a: nonzero_cols, b: c });
            }
            nonzero_cols += 1;
        }
    }

    let unit_count = k;
    let mut diagonal = vec![GwElement::one(field); k];
    let br = nonzero_rows - k;
    let bc = nonzero_cols - k;
    let is_diagonal_block = br == bc
        && (0..br).all(|i| (0..bc).all(|j| i == j || a.get(k + i, k + j).is_zero()));

    let residual_block = if br == 0 {
        // block is zero: every remaining diagonal position is a zero entry
        diagonal.extend(std::iter::repeat(GwElement::zero(field)).take(limit - k));
        None
    } else if is_diagonal_block {
        for i in 0..br {
            let mut e = a.get(k + i, k + i);
            if e.rank() < 0 || (e.rank() == 0 && e.signature() < 0) {
                a.scale_row(k + i, minus_one);
                left.push(ElementaryOp::Scale {
                    index: k + i,
                    unit: minus_one,
                });
                e = a.get(k + i, k + i);
            }
            diagonal.push(e);
        }
        diagonal.extend(std::iter::repeat(GwElement::zero(field)).take(limit - k - br));
        None
    } else {
        let mut block = GwMatrix::zeros(field, br, bc);
        for i in 0..br {
            for j in 0..bc {
                block.set(i, j, a.get(k + i, k + j));
            }
        }
        Some(block)
    };

    let rank_snf_diagonal = smith_normal_form(&input.rank_realization()).divisors;
    let signature_snf_diagonal = input
        .signature_realization()
        .ok()
        .map(|m| smith_normal_form(&m).divisors);

    DiagonalizationResult {
        field,
        shape: (rows, cols),
        diagonal,
        unit_count,
        residual_block,
        left_ops: left,
        right_ops: right,
        rank_snf_diagonal,
        signature_snf_diagonal,
    }
}

fn find_unit(a: &GwMatrix, k: usize) -> Option<(usize, usize)> {
    for i in k..a.rows() {
        for j in k..a.cols() {
            if a.get(i, j).is_unit() {
                return Some((i, j));
            }
        }
    }
    None
}

enum ProbeOp {
    Row {
        target: usize,
        source: usize,
        factor: GwElement,
    },
    Col {
        target: usize,
        source: usize,
        factor: GwElement,
    },
}

/// Scans, in (target, source, position) order, for a single add-multiple step
/// whose result contains a unit. Row steps are probed before column steps.
fn find_unit_creating_op(a: &GwMatrix, k: usize) -> Option<ProbeOp> {
    for target in k..a.rows() {
        for source in k..a.rows() {
            if source == target {
                continue;
            }
            for j in k..a.cols() {
                if let Some(factor) = solve_unit_multiplier(a.get(target, j), a.get(source, j)) {
                    return Some(ProbeOp::Row { target, source, factor });
                }
            }
        }
    }
    for target in k..a.cols() {
        for source in k..a.cols() {
            if source == target {
                continue;
            }
            for i in k..a.rows() {
                if let Some(factor) = solve_unit_multiplier(a.get(i, target), a.get(i, source)) {
                    return Some(ProbeOp::Col { target, source, factor });
                }
            }
        }
    }
    None
}

/// Exact solve for a multiplier `c` with `a + c*b` a unit, over any of the
/// supported fields. Returns the first solution in a fixed target order, so
/// certificates are reproducible.
pub fn solve_unit_multiplier(a: GwElement, b: GwElement) -> Option<GwElement> {
    let field = a.field();
    if b.is_zero() {
        return None;
    }
    match field {
        FieldDescriptor::QuadraticallyClosed => {
            for t in [1i64, -1] {
                let d = t - a.rank();
                if b.rank() != 0 && d % b.rank() == 0 {
                    return Some(GwElement::from_invariants(field, d / b.rank(), 0, false));
                }
            }
            None
        }
        FieldDescriptor::RealClosed => {
            for (tr, ts) in [(1i64, 1i64), (1, -1), (-1, 1), (-1, -1)] {
                let rc = match b.rank() {
                    0 => None,
                    rb => ((tr - a.rank()) % rb == 0).then(|| (tr - a.rank()) / rb),
                };
                let sc = match b.signature() {
                    0 => None,
                    sb => ((ts - a.signature()) % sb == 0).then(|| (ts - a.signature()) / sb),
                };
                let candidate = match (b.rank() != 0, b.signature() != 0) {
                    (true, true) => match (rc, sc) {
                        (Some(r), Some(s)) if (r - s) % 2 == 0 => Some((r, s)),
                        _ => None,
                    },
                    (true, false) => match rc {
                        Some(r) if a.signature() == ts => Some((r, r.rem_euclid(2))),
                        _ => None,
                    },
                    (false, true) => match sc {
                        Some(s) if a.rank() == tr => Some((s.rem_euclid(2), s)),
                        _ => None,
                    },
                    (false, false) => None,
                };
                if let Some((r, s)) = candidate {
                    return Some(GwElement::from_invariants(field, r, s, false));
                }
            }
            None
        }
        FieldDescriptor::Finite { .. } => {
            let rb = b.rank();
            if rb == 0 {
                // a rank-+-1 element over F_q is always a unit, so the rank
                // equation r_a = t_r cannot hold for a non-unit a
                return None;
            }
            for (tr, tc) in [(1i64, false), (1, true), (-1, false), (-1, true)] {
                if (tr - a.rank()) % rb != 0 {
                    continue;
                }
                let rc = (tr - a.rank()) / rb;
                // disc of a + c*b: c_a + r_c*c_b + r_b*c_c (mod 2)
                let partial = a.disc_bit() ^ (rc % 2 != 0 && b.disc_bit());
                let cc = if rb % 2 != 0 {
                    partial ^ tc
                } else {
                    if partial != tc {
                        continue;
                    }
                    false
                };
                return Some(GwElement::from_invariants(field, rc, 0, cc));
            }
            None
        }
    }
}

/// Serialized form of a GW matrix.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GwMatrixRecord {
    pub field: FieldDescriptor,
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<GwElementRecord>,
}

impl From<&GwMatrix> for GwMatrixRecord {
    fn from(m: &GwMatrix) -> Self {
        GwMatrixRecord {
            field: m.field,
            rows: m.rows,
            cols: m.cols,
            entries: m.entries.iter().map(|e| GwElementRecord::from(*e)).collect(),
        }
    }
}

impl TryFrom<GwMatrixRecord> for GwMatrix {
    type Error = Error;
    fn try_from(r: GwMatrixRecord) -> Result<GwMatrix> {
        let entries = r
            .entries
            .into_iter()
            .map(GwElement::try_from)
            .collect::<Result<Vec<_>>>()?;
        GwMatrix::new(r.field, r.rows, r.cols, entries)
    }
}

/// Serialized elementary operation.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case")]
pub enum ElementaryOpRecord {
    Swap { a: usize, b: usize },
    AddMultiple {
        target: usize,
        source: usize,
        factor: GwElementRecord,
    },
    Scale { index: usize, unit: GwElementRecord },
}

impl From<&ElementaryOp> for ElementaryOpRecord {
    fn from(op: &ElementaryOp) -> Self {
        match op {
            ElementaryOp::Swap { a, b } => ElementaryOpRecord::Swap { a: *a, b: *b },
            ElementaryOp::AddMultiple { target, source, factor } => ElementaryOpRecord::AddMultiple {
                target: *target,
                source: *source,
                factor: GwElementRecord::from(*factor),
            },
            ElementaryOp::Scale { index, unit } => ElementaryOpRecord::Scale {
                index: *index,
                unit: GwElementRecord::from(*unit),
            },
        }
    }
}

/// Serialized diagonalization result.
#[derive(Debug, Clone, Serialize)]
pub struct DiagonalizationRecord {
    pub shape: (usize, usize),
    pub diagonal: Vec<GwElementRecord>,
    pub diagonal_display: Vec<String>,
    pub unit_count: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual_block: Option<GwMatrixRecord>,
    pub left_ops: Vec<ElementaryOpRecord>,
    pub right_ops: Vec<ElementaryOpRecord>,
    pub rank_snf_diagonal: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub signature_snf_diagonal: Option<Vec<String>>,
}

impl From<&DiagonalizationResult> for DiagonalizationRecord {
    fn from(r: &DiagonalizationResult) -> Self {
        DiagonalizationRecord {
            shape: r.shape,
            diagonal: r.diagonal.iter().map(|e| GwElementRecord::from(*e)).collect(),
            diagonal_display: r.diagonal.iter().map(GwElement::to_string).collect(),
            unit_count: r.unit_count,
            residual_block: r.residual_block.as_ref().map(GwMatrixRecord::from),
            left_ops: r.left_ops.iter().map(ElementaryOpRecord::from).collect(),
            right_ops: r.right_ops.iter().map(ElementaryOpRecord::from).collect(),
            rank_snf_diagonal: r.rank_snf_diagonal.iter().map(BigInt::to_string).collect(),
            signature_snf_diagonal: r
                .signature_snf_diagonal
                .as_ref()
                .map(|v| v.iter().map(BigInt::to_string).collect()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::SquareClass;

    const RC: FieldDescriptor = FieldDescriptor::RealClosed;

    fn one() -> GwElement {
        GwElement::one(RC)
    }

    fn zero() -> GwElement {
        GwElement::zero(RC)
    }

    fn h() -> GwElement {
        GwElement::hyperbolic(RC)
    }

    fn three_lines_mu() -> GwMatrix {
        GwMatrix::new(
            RC,
            3,
            3,
            vec![
                zero(), one(), one(),
                one(), zero(), one(),
                one(), one(), zero(),
            ],
        )
        .unwrap()
    }

    #[test]
    fn three_lines_diagonal() {
        let result = gw_diagonalize(&three_lines_mu());
        assert_eq!(result.unit_count, 2);
        assert!(result.residual_block.is_none());
        assert_eq!(result.diagonal.len(), 3);
        assert_eq!(result.diagonal[0], one());
        assert_eq!(result.diagonal[1], one());
        // the tail is 2<1> (rank 2, signature 2), not H
        assert_eq!(result.diagonal[2].rank(), 2);
        assert_eq!(result.diagonal[2].signature(), 2);
        // and the rank SNF is diag(1,1,2)
        let want: Vec<BigInt> = vec![1, 1, 2].into_iter().map(BigInt::from).collect();
        assert_eq!(result.rank_snf_diagonal, want);
    }

    #[test]
    fn single_unit_matrix() {
        let m = GwMatrix::new(RC, 1, 1, vec![one()]).unwrap();
        let result = gw_diagonalize(&m);
        assert_eq!(result.diagonal, vec![one()]);
        assert_eq!(result.unit_count, 1);
        assert!(result.residual_block.is_none());
    }

    #[test]
    fn replay_reproduces_claim() {
        let m = three_lines_mu();
        let result = gw_diagonalize(&m);
        assert_eq!(result.replay(&m), result.claimed_matrix());
    }

    #[test]
    fn zero_rows_become_zero_diagonal_entries() {
        let m = GwMatrix::new(RC, 2, 3, vec![zero(), one(), zero(), zero(), zero(), zero()]).unwrap();
        let result = gw_diagonalize(&m);
        assert_eq!(result.diagonal, vec![one(), zero()]);
        assert!(result.residual_block.is_none());
        assert_eq!(result.replay(&m), result.claimed_matrix());
    }

    #[test]
    fn hyperbolic_block_is_residual_or_diagonal() {
        // diag(H, H) cannot be reduced to units; it is absorbed as non-unit
        // diagonal entries
        let m = GwMatrix::new(RC, 2, 2, vec![h(), zero(), zero(), h()]).unwrap();
        let result = gw_diagonalize(&m);
        assert_eq!(result.unit_count, 0);
        assert_eq!(result.diagonal, vec![h(), h()]);
        assert!(result.residual_block.is_none());

        // an off-diagonal all-H block stays as a residual
        let m = GwMatrix::new(RC, 2, 2, vec![h(), h(), zero(), h()]).unwrap();
        let result = gw_diagonalize(&m);
        assert_eq!(result.unit_count, 0);
        assert!(result.diagonal.is_empty());
        let block = result.residual_block.as_ref().unwrap();
        assert_eq!((block.rows(), block.cols()), (2, 2));
        assert_eq!(result.replay(&m), result.claimed_matrix());
    }

    #[test]
    fn probe_creates_unit_from_odd_ranks() {
        // 3<1> and 2<1>: no unit entry, but 3<1> - 2<1> = <1>
        let three = one() + one() + one();
        let two = one() + one();
        let m = GwMatrix::new(RC, 2, 1, vec![three, two]).unwrap();
        let result = gw_diagonalize(&m);
        assert_eq!(result.unit_count, 1);
        assert_eq!(result.replay(&m), result.claimed_matrix());
    }

    #[test]
    fn negative_tail_is_sign_normalized() {
        let m = GwMatrix::new(RC, 1, 1, vec![-(one() + one())]).unwrap();
        let result = gw_diagonalize(&m);
        assert_eq!(result.diagonal[0].rank(), 2);
        assert_eq!(result.replay(&m), result.claimed_matrix());
    }

    #[test]
    fn solver_over_finite_field() {
        let f3 = FieldDescriptor::finite(3).unwrap();
        let u = GwElement::form(SquareClass::nonsquare(f3).unwrap());
        let two_u = u + u;
        let three = GwElement::n_epsilon(1, f3) + GwElement::one(f3) + GwElement::one(f3);
        let c = solve_unit_multiplier(three, two_u).unwrap();
        assert!((three + c * two_u).is_unit());
    }

    #[test]
    fn realization_channels() {
        let m = GwMatrix::new(RC, 1, 2, vec![-h(), one()]).unwrap();
        let rank = m.rank_realization();
        assert_eq!(
            (rank[(0, 0)].clone(), rank[(0, 1)].clone()),
            ((-2).into(), 1.into())
        );
        let hh = GwMatrix::new(RC, 1, 1, vec![h()]).unwrap();
        assert_eq!(hh.rank_realization()[(0, 0)], 2.into());
        assert_eq!(hh.signature_realization().unwrap()[(0, 0)], 0.into());
        let two_ones = GwMatrix::new(RC, 1, 1, vec![one() + one()]).unwrap();
        assert_eq!(two_ones.signature_realization().unwrap()[(0, 0)], 2.into());
        // signature is undefined away from the real closed field
        let qc = GwMatrix::zeros(FieldDescriptor::QuadraticallyClosed, 1, 1);
        assert!(matches!(qc.signature_realization(), Err(Error::WrongField(_))));
    }

    #[test]
    fn realizations_respect_ops() {
        let m = three_lines_mu();
        let result = gw_diagonalize(&m);
        // rank channel commutes with the certificate
        let mut gw = m.clone();
        for op in &result.left_ops {
            gw.apply_row_op(op);
        }
        for op in &result.right_ops {
            gw.apply_col_op(op);
        }
        assert_eq!(gw.rank_realization(), result.claimed_matrix().rank_realization());
        assert_eq!(
            gw.signature_realization().unwrap(),
            result.claimed_matrix().signature_realization().unwrap()
        );
    }
}
