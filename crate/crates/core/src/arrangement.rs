//! Affine hyperplane arrangements over the rationals: exact intersection
//! poset enumeration and the closed-form motivic decompositions of the
//! complement, its compactly supported variant, and the type at infinity.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::intmat::IntMat;
use crate::motive::{ArtinTateMotive, TateSummand};

const MAX_HYPERPLANES: usize = 20;

/// An affine hyperplane `normal . x = constant` with a nonzero normal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hyperplane {
    pub normal: Vec<BigRational>,
    pub constant: BigRational,
}

impl Hyperplane {
    /// Scales so the first nonzero normal coefficient is 1; two hyperplanes
    /// have the same affine span iff their normalizations agree.
    fn normalized(&self) -> (Vec<BigRational>, BigRational) {
        let lead = self
            .normal
            .iter()
            .find(|c| !c.is_zero())
            .expect("validated: nonzero normal")
            .clone();
        (
            self.normal.iter().map(|c| c / &lead).collect(),
            &self.constant / &lead,
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrangement {
    dim: usize,
    hyperplanes: Vec<Hyperplane>,
}

impl Arrangement {
    pub fn new(dim: usize, hyperplanes: Vec<Hyperplane>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::validation("dim", "dimension must be positive"));
        }
        for (idx, h) in hyperplanes.iter().enumerate() {
            if h.normal.len() != dim {
                return Err(Error::validation(
                    format!("hyperplanes[{idx}]"),
                    format!("normal has {} coefficients, expected {dim}", h.normal.len()),
                ));
            }
            if h.normal.iter().all(Zero::is_zero) {
                return Err(Error::validation(
                    format!("hyperplanes[{idx}]"),
                    "zero normal vector",
                ));
            }
        }
        for (idx, h) in hyperplanes.iter().enumerate() {
            if hyperplanes[..idx]
                .iter()
                .any(|g| g.normalized() == h.normalized())
            {
                return Err(Error::validation(
                    format!("hyperplanes[{idx}]"),
                    "duplicate hyperplane",
                ));
            }
        }
        Ok(Arrangement { dim, hyperplanes })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn hyperplanes(&self) -> &[Hyperplane] {
        &self.hyperplanes
    }

    /// Arrangement with one hyperplane removed (for consistency testing).
    pub fn without(&self, index: usize) -> Arrangement {
        let mut hs = self.hyperplanes.clone();
        hs.remove(index);
        Arrangement {
            dim: self.dim,
            hyperplanes: hs,
        }
    }

    /// Enumerates every subset J of the hyperplanes with nonempty
    /// intersection and records its cardinality and codimension. The empty
    /// subset is always present with (n, c) = (0, 0).
    pub fn stratum_table(&self) -> Result<StratumTable> {
        let k = self.hyperplanes.len();
        if k > MAX_HYPERPLANES {
            return Err(Error::TooManyHyperplanes(k));
        }
        let scaled: Vec<(Vec<BigInt>, BigInt)> = self
            .hyperplanes
            .iter()
            .map(|h| clear_denominators(&h.normal, &h.constant))
            .collect();

        let mut rows = Vec::with_capacity(1 << k);
        for mask in 0u32..(1u32 << k) {
            let members: Vec<usize> = (0..k).filter(|i| mask & (1 << i) != 0).collect();
            let n = members.len();
            if n == 0 {
                rows.push(StratumRow {
                    subset: members,
                    n: 0,
                    c: 0,
                });
                continue;
            }
            let mut coeff = IntMat::zeros(n, self.dim);
            let mut augmented = IntMat::zeros(n, self.dim + 1);
            for (r, &i) in members.iter().enumerate() {
                for (col, v) in scaled[i].0.iter().enumerate() {
                    coeff[(r, col)] = v.clone();
                    augmented[(r, col)] = v.clone();
                }
                augmented[(r, self.dim)] = scaled[i].1.clone();
            }
            let c = coeff.rank();
            if c == augmented.rank() {
                rows.push(StratumRow {
                    subset: members,
                    n,
                    c,
                });
            }
        }
        rows.sort_by(|a, b| (a.n, &a.subset).cmp(&(b.n, &b.subset)));
        let nc_flag = rows.iter().all(|r| r.c == r.n);
        Ok(StratumTable {
            dim: self.dim,
            rows,
            nc_flag,
        })
    }

    /// The motive of the complement: one 1(c_J)[2c_J - n_J] per table row.
    pub fn homotopy_type(&self) -> Result<ArtinTateMotive> {
        Ok(self.stratum_table()?.homotopy_type())
    }

    /// The compactly supported variant: one 1(d-c_K)[2(d-c_K) + n_K] per row.
    pub fn compact_support_type(&self) -> Result<ArtinTateMotive> {
        Ok(self.stratum_table()?.compact_support_type())
    }

    /// The type at infinity: the two previous sums joined, with every
    /// compact-support shift lowered by one.
    pub fn homotopy_type_at_infinity(&self) -> Result<ArtinTateMotive> {
        Ok(self.stratum_table()?.homotopy_type_at_infinity())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StratumRow {
    pub subset: Vec<usize>,
    pub n: usize,
    pub c: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StratumTable {
    pub dim: usize,
    pub rows: Vec<StratumRow>,
    pub nc_flag: bool,
}

impl StratumTable {
    pub fn homotopy_type(&self) -> ArtinTateMotive {
        ArtinTateMotive::from_summands(
            self.rows
                .iter()
                .map(|r| TateSummand::free(1, r.c as i64, 2 * r.c as i64 - r.n as i64))
                .collect(),
        )
    }

    pub fn compact_support_type(&self) -> ArtinTateMotive {
        let d = self.dim as i64;
        ArtinTateMotive::from_summands(
            self.rows
                .iter()
                .map(|r| {
                    let c = d - r.c as i64;
                    TateSummand::free(1, c, 2 * c + r.n as i64)
                })
                .collect(),
        )
    }

    pub fn homotopy_type_at_infinity(&self) -> ArtinTateMotive {
        let d = self.dim as i64;
        let mut summands: Vec<TateSummand> = self
            .rows
            .iter()
            .map(|r| TateSummand::free(1, r.c as i64, 2 * r.c as i64 - r.n as i64))
            .collect();
        summands.extend(self.rows.iter().map(|r| {
            let c = d - r.c as i64;
            TateSummand::free(1, c, 2 * c + r.n as i64 - 1)
        }));
        ArtinTateMotive::from_summands(summands)
    }

    /// On normal crossing inputs, the count of strata per codimension;
    /// `None` when some stratum has deficient codimension.
    pub fn m_profile(&self) -> Option<Vec<u64>> {
        if !self.nc_flag {
            return None;
        }
        let mut m = vec![0u64; self.dim + 1];
        for r in &self.rows {
            if r.c < m.len() {
                m[r.c] += 1;
            }
        }
        Some(m)
    }
}

fn clear_denominators(normal: &[BigRational], constant: &BigRational) -> (Vec<BigInt>, BigInt) {
    let mut lcm = BigInt::from(1);
    for value in normal.iter().chain(std::iter::once(constant)) {
        lcm = num_integer::lcm(lcm, value.denom().abs());
    }
    (
        normal
            .iter()
            .map(|v| (v * &lcm).to_integer())
            .collect(),
        (constant * &lcm).to_integer(),
    )
}

/// Input record: `{"dim": d, "hyperplanes": [[a_1, ..., a_d, b], ...]}` with
/// rational entries as integers or "p/q" strings; the row encodes the
/// hyperplane a.x = b.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrangementRecord {
    pub dim: usize,
    pub hyperplanes: Vec<Vec<RationalRecord>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RationalRecord {
    Int(i64),
    Text(String),
}

impl RationalRecord {
    fn to_rational(&self, path: &str) -> Result<BigRational> {
        match self {
            RationalRecord::Int(n) => Ok(BigRational::from(BigInt::from(*n))),
            RationalRecord::Text(s) => {
                let parse_int = |t: &str| {
                    t.trim()
                        .parse::<BigInt>()
                        .map_err(|_| Error::validation(path, format!("`{t}` is not an integer")))
                };
                match s.split_once('/') {
                    Some((num, den)) => {
                        let den = parse_int(den)?;
                        if den.is_zero() {
                            return Err(Error::validation(path, "zero denominator"));
                        }
                        Ok(BigRational::new(parse_int(num)?, den))
                    }
                    None => Ok(BigRational::from(parse_int(s)?)),
                }
            }
        }
    }
}

impl Arrangement {
    /// Canonical record form; rationals print as `p/q` or plain integers.
    pub fn to_record(&self) -> ArrangementRecord {
        let encode = |v: &BigRational| {
            if v.denom() == &BigInt::from(1) {
                match i64::try_from(v.numer()) {
                    Ok(n) => RationalRecord::Int(n),
                    Err(_) => RationalRecord::Text(v.numer().to_string()),
                }
            } else {
                RationalRecord::Text(format!("{}/{}", v.numer(), v.denom()))
            }
        };
        ArrangementRecord {
            dim: self.dim,
            hyperplanes: self
                .hyperplanes
                .iter()
                .map(|h| {
                    h.normal
                        .iter()
                        .chain(std::iter::once(&h.constant))
                        .map(encode)
                        .collect()
                })
                .collect(),
        }
    }
}

impl ArrangementRecord {
    pub fn build(&self) -> Result<Arrangement> {
        let mut hyperplanes = Vec::with_capacity(self.hyperplanes.len());
        for (idx, row) in self.hyperplanes.iter().enumerate() {
            let path = format!("hyperplanes[{idx}]");
            if row.len() != self.dim + 1 {
                return Err(Error::validation(
                    path,
                    format!("expected {} entries (normal then constant)", self.dim + 1),
                ));
            }
            let values = row
                .iter()
                .map(|v| v.to_rational(&path))
                .collect::<Result<Vec<_>>>()?;
            let (normal, constant) = values.split_at(self.dim);
            hyperplanes.push(Hyperplane {
                normal: normal.to_vec(),
                constant: constant[0].clone(),
            });
        }
        Arrangement::new(self.dim, hyperplanes)
    }
}
