//! Formal Artin-Tate motives: finite sums of twisted, shifted summands
//! 1(q)[p], (1/n)(q)[p] and Artin pieces, kept in a canonical order so that
//! list equality is equality of motives.

use serde::{Deserialize, Serialize};
use std::fmt;

use crate::error::{Error, Result};

/// A single summand. `Free` carries a multiplicity, `Torsion` the order of a
/// cyclic torsion piece, `Artin` the rank and a user-facing label of the
/// inducing etale algebra.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SummandKind {
    Free { mult: u64 },
    Torsion { n: u64 },
    Artin { rank: u64, label: String },
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TateSummand {
    pub kind: SummandKind,
    pub twist: i64,
    pub shift: i64,
}

impl TateSummand {
    pub fn free(mult: u64, twist: i64, shift: i64) -> Self {
        TateSummand {
            kind: SummandKind::Free { mult },
            twist,
            shift,
        }
    }

    pub fn torsion(n: u64, twist: i64, shift: i64) -> Self {
        assert!(n >= 2, "torsion order must be at least 2");
        TateSummand {
            kind: SummandKind::Torsion { n },
            twist,
            shift,
        }
    }

    pub fn artin(rank: u64, label: impl Into<String>, twist: i64, shift: i64) -> Self {
        assert!(rank >= 1);
        TateSummand {
            kind: SummandKind::Artin {
                rank,
                label: label.into(),
            },
            twist,
            shift,
        }
    }

    /// Ordering key: kind tag, then twist, then shift, then parameters.
    fn sort_key(&self) -> (u8, i64, i64, u64, &str) {
        match &self.kind {
            SummandKind::Free { mult } => (0, self.twist, self.shift, *mult, ""),
            SummandKind::Torsion { n } => (1, self.twist, self.shift, *n, ""),
            SummandKind::Artin { rank, label } => (2, self.twist, self.shift, *rank, label),
        }
    }
}

/// A formal direct sum of Tate summands in canonical form.
///
/// `split_assumed` marks motives assembled from an extension that was
/// reported as a direct sum without a proof of splitting; it is carried
/// through serialization and display so the assumption is never silent.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct ArtinTateMotive {
    summands: Vec<TateSummand>,
    pub split_assumed: bool,
}

impl ArtinTateMotive {
    pub fn zero() -> Self {
        ArtinTateMotive::default()
    }

    pub fn from_summands(summands: Vec<TateSummand>) -> Self {
        let mut m = ArtinTateMotive {
            summands,
            split_assumed: false,
        };
        m.canonicalize();
        m
    }

    /// The unit motive 1.
    pub fn unit() -> Self {
        ArtinTateMotive::from_summands(vec![TateSummand::free(1, 0, 0)])
    }

    /// `mult` copies of 1(q)[p].
    pub fn free(mult: u64, twist: i64, shift: i64) -> Self {
        ArtinTateMotive::from_summands(vec![TateSummand::free(mult, twist, shift)])
    }

    pub fn summands(&self) -> &[TateSummand] {
        &self.summands
    }

    pub fn is_zero(&self) -> bool {
        self.summands.is_empty()
    }

    /// Total free rank (sum of Free multiplicities, ignoring twists).
    pub fn free_rank(&self) -> u64 {
        self.summands
            .iter()
            .map(|s| match s.kind {
                SummandKind::Free { mult } => mult,
                _ => 0,
            })
            .sum()
    }

    pub fn direct_sum(&self, other: &ArtinTateMotive) -> ArtinTateMotive {
        let mut summands = self.summands.clone();
        summands.extend(other.summands.iter().cloned());
        let mut m = ArtinTateMotive {
            summands,
            split_assumed: self.split_assumed || other.split_assumed,
        };
        m.canonicalize();
        m
    }

    pub fn with_split_assumed(mut self, flag: bool) -> Self {
        self.split_assumed = flag;
        self
    }

    /// Sorts summands, merges mergeable ones, prunes empties.
    fn canonicalize(&mut self) {
        self.summands.retain(|s| match s.kind {
            SummandKind::Free { mult } => mult > 0,
            _ => true,
        });
        self.summands.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
        let mut merged: Vec<TateSummand> = Vec::with_capacity(self.summands.len());
        for s in self.summands.drain(..) {
            match merged.last_mut() {
                Some(last) if last.twist == s.twist && last.shift == s.shift => {
                    match (&mut last.kind, &s.kind) {
                        (SummandKind::Free { mult }, SummandKind::Free { mult: m2 }) => {
                            *mult += m2;
                            continue;
                        }
                        (
                            SummandKind::Artin { rank, label },
                            SummandKind::Artin { rank: r2, label: l2 },
                        ) if label == l2 => {
                            *rank += r2;
                            continue;
                        }
                        _ => {}
                    }
                    merged.push(s);
                }
                _ => merged.push(s),
            }
        }
        self.summands = merged;
    }
}

impl fmt::Display for ArtinTateMotive {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.summands.is_empty() {
            write!(f, "0")?;
        } else {
            for (i, s) in self.summands.iter().enumerate() {
                if i > 0 {
                    write!(f, " + ")?;
                }
                match &s.kind {
                    SummandKind::Free { mult } => {
                        if *mult != 1 {
                            write!(f, "{mult}*")?;
                        }
                        write!(f, "1")?;
                    }
                    SummandKind::Torsion { n } => write!(f, "(1/{n})")?,
                    SummandKind::Artin { rank, label } => {
                        if *rank != 1 {
                            write!(f, "{rank}*")?;
                        }
                        write!(f, "Artin{{{label}}}")?;
                    }
                }
                if s.twist != 0 {
                    write!(f, "({})", s.twist)?;
                }
                if s.shift != 0 {
                    write!(f, "[{}]", s.shift)?;
                }
            }
        }
        if self.split_assumed {
            write!(f, "  [split assumed]")?;
        }
        Ok(())
    }
}

/// Canonical serialized record of a motive.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MotiveRecord {
    pub summands: Vec<SummandRecord>,
    pub split_assumed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum SummandRecord {
    Free { mult: u64, q: i64, p: i64 },
    Torsion { n: u64, q: i64, p: i64 },
    Artin { rank: u64, label: String, q: i64, p: i64 },
}

/// Canonical record of a motive; `parse_motive` inverts it exactly.
pub fn serialize_motive(m: &ArtinTateMotive) -> MotiveRecord {
    MotiveRecord {
        summands: m
            .summands
            .iter()
            .map(|s| match &s.kind {
                SummandKind::Free { mult } => SummandRecord::Free {
                    mult: *mult,
                    q: s.twist,
                    p: s.shift,
                },
                SummandKind::Torsion { n } => SummandRecord::Torsion {
                    n: *n,
                    q: s.twist,
                    p: s.shift,
                },
                SummandKind::Artin { rank, label } => SummandRecord::Artin {
                    rank: *rank,
                    label: label.clone(),
                    q: s.twist,
                    p: s.shift,
                },
            })
            .collect(),
        split_assumed: m.split_assumed,
    }
}

pub fn parse_motive(record: &MotiveRecord) -> Result<ArtinTateMotive> {
    let mut summands = Vec::with_capacity(record.summands.len());
    for (i, s) in record.summands.iter().enumerate() {
        let summand = match s {
            SummandRecord::Free { mult, q, p } => {
                if *mult == 0 {
                    return Err(Error::validation(
                        format!("summands[{i}].mult"),
                        "free multiplicity must be positive (zero summands are pruned)",
                    ));
                }
                TateSummand::free(*mult, *q, *p)
            }
            SummandRecord::Torsion { n, q, p } => {
                if *n < 2 {
                    return Err(Error::validation(
                        format!("summands[{i}].n"),
                        "torsion order must be at least 2",
                    ));
                }
                TateSummand::torsion(*n, *q, *p)
            }
            SummandRecord::Artin { rank, label, q, p } => {
                if *rank == 0 {
                    return Err(Error::validation(
                        format!("summands[{i}].rank"),
                        "Artin rank must be positive",
                    ));
                }
                TateSummand::artin(*rank, label.clone(), *q, *p)
            }
        };
        summands.push(summand);
    }
    Ok(ArtinTateMotive::from_summands(summands).with_split_assumed(record.split_assumed))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_examples() {
        let m = ArtinTateMotive::unit().direct_sum(&ArtinTateMotive::free(1, 2, 3));
        assert_eq!(m.to_string(), "1 + 1(2)[3]");

        let m = ArtinTateMotive::from_summands(vec![
            TateSummand::torsion(2, 1, 0),
            TateSummand::free(1, 0, 0),
        ]);
        assert_eq!(m.to_string(), "1 + (1/2)(1)");

        assert_eq!(ArtinTateMotive::zero().to_string(), "0");
    }

    #[test]
    fn canonical_merge_and_order() {
        let a = ArtinTateMotive::free(1, 1, 1);
        let b = ArtinTateMotive::free(2, 1, 1);
        let sum = a.direct_sum(&b);
        assert_eq!(sum.summands().len(), 1);
        assert_eq!(sum.to_string(), "3*1(1)[1]");

        // sum is commutative on canonical forms
        let x = ArtinTateMotive::free(1, 0, 0).direct_sum(&ArtinTateMotive::free(1, 2, 2));
        let y = ArtinTateMotive::free(1, 2, 2).direct_sum(&ArtinTateMotive::free(1, 0, 0));
        assert_eq!(x, y);
    }

    #[test]
    fn zero_multiplicity_is_pruned() {
        let m = ArtinTateMotive::from_summands(vec![TateSummand::free(0, 3, 1)]);
        assert!(m.is_zero());
    }

    #[test]
    fn record_round_trip() {
        let m = ArtinTateMotive::from_summands(vec![
            TateSummand::free(2, 0, 0),
            TateSummand::torsion(4, 1, 0),
            TateSummand::artin(2, "L", 0, 0),
        ])
        .with_split_assumed(true);
        let rec = serialize_motive(&m);
        assert_eq!(parse_motive(&rec).unwrap(), m);
    }

    #[test]
    fn malformed_records_error() {
        let rec = MotiveRecord {
            summands: vec![SummandRecord::Torsion { n: 1, q: 0, p: 0 }],
            split_assumed: false,
        };
        assert!(parse_motive(&rec).is_err());
    }
}
