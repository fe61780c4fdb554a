//! Bounded complexes of twist-graded free modules with integer differentials,
//! their homology via Smith normal form, and the ordered Cech complex of a
//! closed cover by labeled strata.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::intmat::IntMat;
use crate::motive::{ArtinTateMotive, TateSummand};
use crate::snf::smith_normal_form;

/// A generator of one term: a Tate piece 1(q)[p], optionally induced from an
/// Artin stratum identified by `label`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Generator {
    pub q: i64,
    pub p: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

impl Generator {
    pub fn tate(q: i64, p: i64) -> Self {
        Generator { q, p, label: None }
    }
}

/// A bounded chain complex. `differentials[n]` is the map from term `n + 1`
/// to term `n`, written as an integer matrix with one row per generator of
/// term `n` and one column per generator of term `n + 1`. Differentials are
/// block-diagonal across (twist, shift) and compose to zero; both facts are
/// checked at construction.
#[derive(Debug, Clone)]
pub struct TateComplex {
    terms: Vec<Vec<Generator>>,
    differentials: Vec<IntMat>,
}

impl TateComplex {
    pub fn new(terms: Vec<Vec<Generator>>, differentials: Vec<IntMat>) -> Result<Self> {
        if !terms.is_empty() && differentials.len() + 1 != terms.len() {
            return Err(Error::validation(
                "differentials",
                format!(
                    "expected {} differentials for {} terms, got {}",
                    terms.len() - 1,
                    terms.len(),
                    differentials.len()
                ),
            ));
        }
        for (n, d) in differentials.iter().enumerate() {
            if d.rows() != terms[n].len() || d.cols() != terms[n + 1].len() {
                return Err(Error::validation(
                    format!("differentials[{n}]"),
                    format!(
                        "shape {}x{} does not match terms ({} and {} generators)",
                        d.rows(),
                        d.cols(),
                        terms[n].len(),
                        terms[n + 1].len()
                    ),
                ));
            }
            for i in 0..d.rows() {
                for j in 0..d.cols() {
                    if !d[(i, j)].is_zero() {
                        let (gi, gj) = (&terms[n][i], &terms[n + 1][j]);
                        if gi.q != gj.q || gi.p != gj.p {
                            return Err(Error::validation(
                                format!("differentials[{n}][{i}][{j}]"),
                                format!(
                                    "nonzero entry between twist ({},{}) and ({},{}) generators",
                                    gj.q, gj.p, gi.q, gi.p
                                ),
                            ));
                        }
                    }
                }
            }
        }
        for n in 0..differentials.len().saturating_sub(1) {
            let composite = differentials[n].mul(&differentials[n + 1]);
            for i in 0..composite.rows() {
                for j in 0..composite.cols() {
                    if !composite[(i, j)].is_zero() {
                        return Err(Error::ComposeNonzero {
                            degree: n + 1,
                            row: i,
                            col: j,
                        });
                    }
                }
            }
        }
        Ok(TateComplex {
            terms,
            differentials,
        })
    }

    pub fn terms(&self) -> &[Vec<Generator>] {
        &self.terms
    }

    pub fn differentials(&self) -> &[IntMat] {
        &self.differentials
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

/// Homology of the complex, reported per total degree `n + p` as abelian
/// Artin-Tate motives. Within each (twist, shift) block the computation runs
/// over the integers via SNF; blocks of Artin-labeled generators are only
/// tracked through signed-permutation differentials.
pub fn complex_homology(complex: &TateComplex) -> Result<Vec<(i64, ArtinTateMotive)>> {
    let mut blocks: BTreeMap<(i64, i64, Option<String>), Block> = BTreeMap::new();
    for (n, term) in complex.terms().iter().enumerate() {
        for (idx, g) in term.iter().enumerate() {
            let key = (g.q, g.p, g.label.clone());
            let block = blocks.entry(key).or_insert_with(|| Block::new(complex.len()));
            block.indices[n].push(idx);
        }
    }

    // labeled and unlabeled generators of the same twist must not interact
    for (n, d) in complex.differentials().iter().enumerate() {
        for i in 0..d.rows() {
            for j in 0..d.cols() {
                if d[(i, j)].is_zero() {
                    continue;
                }
                let (gi, gj) = (&complex.terms()[n][i], &complex.terms()[n + 1][j]);
                if gi.label != gj.label {
                    let label = gi.label.clone().or_else(|| gj.label.clone()).unwrap_or_default();
                    return Err(Error::NonPermutationArtinDifferential { label, q: gi.q });
                }
            }
        }
    }

    let mut homology: BTreeMap<i64, ArtinTateMotive> = BTreeMap::new();
    for ((q, p, label), block) in &blocks {
        // submatrix of differential n (term n+1 -> term n) for this block
        let restricted: Vec<IntMat> = (0..complex.differentials().len())
            .map(|n| {
                let rows = &block.indices[n];
                let cols = &block.indices[n + 1];
                let d = &complex.differentials()[n];
                let mut sub = IntMat::zeros(rows.len(), cols.len());
                for (ri, &r) in rows.iter().enumerate() {
                    for (ci, &c) in cols.iter().enumerate() {
                        sub[(ri, ci)] = d[(r, c)].clone();
                    }
                }
                sub
            })
            .collect();

        if let Some(label) = label {
            for sub in &restricted {
                if !is_signed_partial_permutation(sub) {
                    return Err(Error::NonPermutationArtinDifferential {
                        label: label.clone(),
                        q: *q,
                    });
                }
            }
        }

        for n in 0..complex.len() {
            let dim = block.indices[n].len();
            if dim == 0 {
                continue;
            }
            // rank of the map out of degree n and of the map into it
            let (rank_out, torsion_in, rank_in) = {
                let rank_out = if n > 0 { restricted[n - 1].rank() } else { 0 };
                if n < restricted.len() {
                    let snf = smith_normal_form(&restricted[n]);
                    (rank_out, snf.torsion(), snf.rank())
                } else {
                    (rank_out, Vec::new(), 0)
                }
            };
            let free = dim - rank_out - rank_in;
            let degree = n as i64 + p;
            let mut summands = Vec::new();
            if free > 0 {
                match label {
                    Some(l) => summands.push(TateSummand::artin(free as u64, l.clone(), *q, 0)),
                    None => summands.push(TateSummand::free(free as u64, *q, 0)),
                }
            }
            for t in torsion_in {
                let order = u64::try_from(&t).expect("torsion order fits in u64 at desk scale");
                summands.push(TateSummand::torsion(order, *q, 0));
            }
            if summands.is_empty() {
                continue;
            }
            let motive = ArtinTateMotive::from_summands(summands);
            homology
                .entry(degree)
                .and_modify(|m| *m = m.direct_sum(&motive))
                .or_insert(motive);
        }
    }

    Ok(homology.into_iter().filter(|(_, m)| !m.is_zero()).collect())
}

struct Block {
    indices: Vec<Vec<usize>>,
}

impl Block {
    fn new(len: usize) -> Self {
        Block {
            indices: vec![Vec::new(); len],
        }
    }
}

/// Entries in {-1, 0, 1} with at most one nonzero per row and per column.
fn is_signed_partial_permutation(m: &IntMat) -> bool {
    let one = BigInt::from(1);
    let mut row_used = vec![false; m.rows()];
    let mut col_used = vec![false; m.cols()];
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            let v = &m[(i, j)];
            if v.is_zero() {
                continue;
            }
            if v != &one && *v != -&one {
                return false;
            }
            if row_used[i] || col_used[j] {
                return false;
            }
            row_used[i] = true;
            col_used[j] = true;
        }
    }
    true
}

/// What a stratum of a crossing configuration looks like.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum StratumDescriptor {
    /// Disjoint union of `count` rational points.
    Points { count: u64 },
    /// A projective line: generators 1 and 1(1)[2].
    P1,
    /// A finite etale stratum of the given rank, tracked by label.
    Artin { rank: u64, label: String },
}

impl StratumDescriptor {
    fn generators(&self) -> Vec<Generator> {
        match self {
            StratumDescriptor::Points { count } => {
                vec![Generator::tate(0, 0); *count as usize]
            }
            StratumDescriptor::P1 => vec![Generator::tate(0, 0), Generator::tate(1, 2)],
            StratumDescriptor::Artin { rank, label } => vec![
                Generator {
                    q: 0,
                    p: 0,
                    label: Some(label.clone()),
                };
                *rank as usize
            ],
        }
    }
}

/// An explicit face matrix for a pair of strata, overriding the automatic
/// rules. `matrix` has one row per generator of the target stratum and one
/// column per generator of the source stratum.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExplicitFace {
    pub from: Vec<usize>,
    pub to: Vec<usize>,
    pub matrix: Vec<Vec<i64>>,
}

/// Builds the ordered Cech complex of a closed cover: term `n` is the sum of
/// the strata indexed by (n+1)-element subsets, and the face dropping the
/// k-th smallest element of a subset carries the sign (-1)^(k+1), so a pair
/// {i < j} maps by +1 into stratum {i} and -1 into stratum {j}.
pub fn ordered_cech_complex(
    strata: &[(Vec<usize>, StratumDescriptor)],
    order: Option<&[usize]>,
    face_data: &[ExplicitFace],
) -> Result<TateComplex> {
    // the index set and the position of each element in the total order
    let mut elements: Vec<usize> = strata.iter().flat_map(|(j, _)| j.iter().copied()).collect();
    elements.sort_unstable();
    elements.dedup();
    let order_vec: Vec<usize> = match order {
        Some(o) => {
            let mut sorted = o.to_vec();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted != elements {
                return Err(Error::validation(
                    "order",
                    "order must list each index of the cover exactly once",
                ));
            }
            o.to_vec()
        }
        None => elements.clone(),
    };
    let pos: BTreeMap<usize, usize> = order_vec.iter().enumerate().map(|(i, &e)| (e, i)).collect();

    // normalized subsets, sorted by the declared order
    let mut normalized: Vec<(Vec<usize>, StratumDescriptor)> = Vec::with_capacity(strata.len());
    for (idx, (subset, descr)) in strata.iter().enumerate() {
        if subset.is_empty() {
            return Err(Error::validation(format!("strata[{idx}]"), "empty subset"));
        }
        if let StratumDescriptor::Points { count: 0 } = descr {
            return Err(Error::validation(
                format!("strata[{idx}]"),
                "a stratum must contain at least one point",
            ));
        }
        if let StratumDescriptor::Artin { rank: 0, .. } = descr {
            return Err(Error::validation(format!("strata[{idx}]"), "Artin rank must be positive"));
        }
        let mut sorted = subset.clone();
        sorted.sort_by_key(|e| pos[e]);
        sorted.dedup();
        if sorted.len() != subset.len() {
            return Err(Error::validation(
                format!("strata[{idx}]"),
                "subset has repeated indices",
            ));
        }
        if normalized.iter().any(|(s, _)| *s == sorted) {
            return Err(Error::validation(
                format!("strata[{idx}]"),
                "duplicate subset",
            ));
        }
        normalized.push((sorted, descr.clone()));
    }

    let max_card = normalized.iter().map(|(s, _)| s.len()).max().unwrap_or(0);
    // terms[n]: offset of each stratum of cardinality n+1, in lex order
    let mut terms: Vec<Vec<Generator>> = vec![Vec::new(); max_card];
    let mut layout: BTreeMap<Vec<usize>, (usize, usize, StratumDescriptor)> = BTreeMap::new();
    for card in 1..=max_card {
        let mut level: Vec<&(Vec<usize>, StratumDescriptor)> =
            normalized.iter().filter(|(s, _)| s.len() == card).collect();
        level.sort_by_key(|(s, _)| s.iter().map(|e| pos[e]).collect::<Vec<_>>());
        for (subset, descr) in level {
            let gens = descr.generators();
            let offset = terms[card - 1].len();
            layout.insert(subset.clone(), (offset, gens.len(), descr.clone()));
            terms[card - 1].extend(gens);
        }
    }

    let explicit: BTreeMap<(Vec<usize>, Vec<usize>), &ExplicitFace> = face_data
        .iter()
        .map(|f| {
            let mut from = f.from.clone();
            let mut to = f.to.clone();
            from.sort_by_key(|e| pos.get(e).copied().unwrap_or(usize::MAX));
            to.sort_by_key(|e| pos.get(e).copied().unwrap_or(usize::MAX));
            ((from, to), f)
        })
        .collect();

    let mut differentials: Vec<IntMat> = Vec::new();
    for n in 1..max_card {
        let mut d = IntMat::zeros(terms[n - 1].len(), terms[n].len());
        for (subset, (src_offset, src_len, src_descr)) in &layout {
            if subset.len() != n + 1 {
                continue;
            }
            for k in 0..subset.len() {
                let mut face: Vec<usize> = subset.clone();
                face.remove(k);
                let Some((dst_offset, dst_len, dst_descr)) = layout.get(&face) else {
                    return Err(Error::validation(
                        "strata",
                        format!("stratum {face:?} is a face of {subset:?} but is not listed"),
                    ));
                };
                let sign: i64 = if k % 2 == 0 { -1 } else { 1 };
                let block = match explicit.get(&(subset.clone(), face.clone())) {
                    Some(f) => {
                        if f.matrix.len() != *dst_len
                            || f.matrix.iter().any(|row| row.len() != *src_len)
                        {
                            return Err(Error::validation(
                                "face_data",
                                format!(
                                    "matrix for {subset:?} -> {face:?} must be {dst_len}x{src_len}"
                                ),
                            ));
                        }
                        f.matrix.clone()
                    }
                    None => automatic_face(src_descr, dst_descr)
                        .ok_or_else(|| Error::MissingFaceData {
                            from: subset.clone(),
                            to: face.clone(),
                        })?,
                };
                for (bi, row) in block.iter().enumerate() {
                    for (bj, &v) in row.iter().enumerate() {
                        if v != 0 {
                            d[(dst_offset + bi, src_offset + bj)] += BigInt::from(sign * v);
                        }
                    }
                }
            }
        }
        differentials.push(d);
    }

    TateComplex::new(terms, differentials)
}

/// Face matrices determined by the descriptors alone. A projective line
/// receives the identity from another projective line and the inclusion of
/// the 1 summand from each rational point; a single point maps to a single
/// point by the identity. Everything else needs explicit data.
fn automatic_face(src: &StratumDescriptor, dst: &StratumDescriptor) -> Option<Vec<Vec<i64>>> {
    match (src, dst) {
        (StratumDescriptor::P1, StratumDescriptor::P1) => Some(vec![vec![1, 0], vec![0, 1]]),
        (StratumDescriptor::Points { count }, StratumDescriptor::P1) => {
            let c = *count as usize;
            let mut m = vec![vec![0i64; c]; 2];
            for j in 0..c {
                m[0][j] = 1;
            }
            Some(m)
        }
        (StratumDescriptor::Points { count: 1 }, StratumDescriptor::Points { count: 1 }) => {
            Some(vec![vec![1]])
        }
        (
            StratumDescriptor::Artin { rank: r1, label: l1 },
            StratumDescriptor::Artin { rank: r2, label: l2 },
        ) if r1 == r2 && l1 == l2 => {
            let r = *r1 as usize;
            let mut m = vec![vec![0i64; r]; r];
            for i in 0..r {
                m[i][i] = 1;
            }
            Some(m)
        }
        _ => None,
    }
}

/// Serialized complex: generators per term, then one integer matrix per
/// differential (`differentials[n]` maps term n+1 to term n).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ComplexRecord {
    pub terms: Vec<Vec<Generator>>,
    pub differentials: Vec<Vec<Vec<i64>>>,
}

impl From<&TateComplex> for ComplexRecord {
    fn from(c: &TateComplex) -> Self {
        ComplexRecord {
            terms: c.terms.clone(),
            differentials: c
                .differentials
                .iter()
                .map(|d| {
                    (0..d.rows())
                        .map(|i| {
                            (0..d.cols())
                                .map(|j| i64::try_from(&d[(i, j)]).expect("differential entry fits i64"))
                                .collect()
                        })
                        .collect()
                })
                .collect(),
        }
    }
}

impl TryFrom<&ComplexRecord> for TateComplex {
    type Error = Error;
    fn try_from(r: &ComplexRecord) -> Result<TateComplex> {
        let differentials = r
            .differentials
            .iter()
            .map(|rows| IntMat::from_rows(rows))
            .collect();
        TateComplex::new(r.terms.clone(), differentials)
    }
}
