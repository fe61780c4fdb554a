//! Decorated boundary dual graphs and the pipeline from a graph to its
//! homology motives at infinity.
//!
//! Vertices are rational branches with a self-intersection weight; edges
//! carry the intersection points of a pair of branches, each with a
//! multiplicity and a residue algebra. The quadratic Mumford matrix collects
//! Euler classes on the diagonal and quadratic intersection degrees off it;
//! the homology motives come out of the six-term exact sequence driven by
//! the incidence matrix and the rank realization of the Mumford matrix.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::complex::{ordered_cech_complex, StratumDescriptor, TateComplex};
use crate::error::{Error, Result};
use crate::expr::parse_gw_expression;
use crate::field::{FieldDescriptor, SquareClass};
use crate::gw::{EtaleAlgebra, EtaleFactor, GwElement};
use crate::gwmat::{gw_diagonalize, DiagonalizationRecord, DiagonalizationResult, GwMatrix, GwMatrixRecord};
use crate::intmat::{IntMat, IntMatRecord};
use crate::motive::{ArtinTateMotive, MotiveRecord, TateSummand};
use crate::snf::{smith_normal_form, SnfRecord, SnfResult};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlumbingVertex {
    pub name: String,
    pub self_intersection: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntersectionPoint {
    pub multiplicity: u64,
    pub residue: EtaleFactor,
    pub unit_override: Option<GwElement>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlumbingEdge {
    pub i: usize,
    pub j: usize,
    pub points: Vec<IntersectionPoint>,
}

/// A decorated dual graph of a normal-crossing boundary. The vertex order is
/// part of the data; every output is a deterministic function of it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlumbingGraph {
    field: FieldDescriptor,
    vertices: Vec<PlumbingVertex>,
    edges: Vec<PlumbingEdge>,
}

impl PlumbingGraph {
    pub fn new(
        field: FieldDescriptor,
        vertices: Vec<PlumbingVertex>,
        edges: Vec<PlumbingEdge>,
    ) -> Result<Self> {
        for (idx, v) in vertices.iter().enumerate() {
            if v.name.is_empty() {
                return Err(Error::validation(format!("vertices[{idx}].name"), "empty name"));
            }
            if vertices[..idx].iter().any(|w| w.name == v.name) {
                return Err(Error::validation(
                    format!("vertices[{idx}].name"),
                    format!("duplicate vertex name `{}`", v.name),
                ));
            }
        }
        for (idx, e) in edges.iter().enumerate() {
            if e.i == e.j {
                return Err(Error::validation(
                    format!("edges[{idx}]"),
                    format!("self-edge at edges[{idx}]"),
                ));
            }
            if e.i > e.j {
                return Err(Error::validation(
                    format!("edges[{idx}]"),
                    "edge endpoints must satisfy i < j in the declared vertex order",
                ));
            }
            if e.j >= vertices.len() {
                return Err(Error::validation(
                    format!("edges[{idx}].j"),
                    format!("vertex index {} out of range", e.j),
                ));
            }
            if edges[..idx].iter().any(|f| (f.i, f.j) == (e.i, e.j)) {
                return Err(Error::validation(
                    format!("edges[{idx}]"),
                    format!("duplicate edge ({}, {})", e.i, e.j),
                ));
            }
            if e.points.is_empty() {
                return Err(Error::validation(
                    format!("edges[{idx}].points"),
                    "an edge must carry at least one intersection point",
                ));
            }
            for (pidx, p) in e.points.iter().enumerate() {
                if p.multiplicity == 0 {
                    return Err(Error::validation(
                        format!("edges[{idx}].points[{pidx}].m"),
                        "multiplicity 0 means no point; drop the entry instead",
                    ));
                }
                if let EtaleFactor::Quadratic(d) = &p.residue {
                    field.check_same(&d.field())?;
                    if d.is_one() {
                        return Err(Error::SplitQuadraticFactor);
                    }
                }
                if let Some(u) = &p.unit_override {
                    field.check_same(&u.field())?;
                    if !u.is_unit() {
                        return Err(Error::validation(
                            format!("edges[{idx}].points[{pidx}].unit"),
                            "unit override must be a unit of GW(k)",
                        ));
                    }
                }
            }
        }
        Ok(PlumbingGraph {
            field,
            vertices,
            edges,
        })
    }

    pub fn field(&self) -> FieldDescriptor {
        self.field
    }

    pub fn vertices(&self) -> &[PlumbingVertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[PlumbingEdge] {
        &self.edges
    }

    pub fn point_count(&self) -> usize {
        self.edges.iter().map(|e| e.points.len()).sum()
    }

    fn all_points_rational(&self) -> Result<()> {
        for e in &self.edges {
            if e.points.iter().any(|p| matches!(p.residue, EtaleFactor::Quadratic(_))) {
                return Err(Error::NonRationalPoint { i: e.i, j: e.j });
            }
        }
        Ok(())
    }

    /// Incidence matrix with one row per intersection point and one column
    /// per vertex: +1 at the smaller endpoint, -1 at the larger one.
    /// Requires rational points.
    pub fn incidence_matrix(&self) -> Result<IntMat> {
        self.all_points_rational()?;
        let mut m = IntMat::zeros(self.point_count(), self.vertices.len());
        let mut row = 0;
        for e in &self.edges {
            for _ in &e.points {
                m[(row, e.i)] = BigInt::from(1);
                m[(row, e.j)] = BigInt::from(-1);
                row += 1;
            }
        }
        Ok(m)
    }

    /// The quadratic Mumford matrix: Euler classes of the normal bundles on
    /// the diagonal, quadratic intersection degrees off it. Requires every
    /// self-intersection weight to be even.
    pub fn mumford_matrix(&self) -> Result<GwMatrix> {
        let n = self.vertices.len();
        let mut m = GwMatrix::zeros(self.field, n, n);
        for (idx, v) in self.vertices.iter().enumerate() {
            if v.self_intersection % 2 != 0 {
                return Err(Error::OddSelfIntersection {
                    name: v.name.clone(),
                    d: v.self_intersection,
                });
            }
            let e = GwElement::hyperbolic(self.field).scalar_mul(v.self_intersection / 2);
            m.set(idx, idx, e);
        }
        for e in &self.edges {
            let mut entry = GwElement::zero(self.field);
            for p in &e.points {
                let algebra = EtaleAlgebra::new(self.field, vec![p.residue])?;
                let mut contribution = GwElement::n_epsilon(p.multiplicity, self.field)
                    * crate::gw::trace_form_class(&algebra);
                if let Some(u) = &p.unit_override {
                    contribution = contribution * *u;
                }
                entry = entry + contribution;
            }
            m.set(e.i, e.j, entry);
            m.set(e.j, e.i, entry);
        }
        Ok(m)
    }

    /// Classical Mumford matrix over the integers: the rank realization of
    /// the quadratic recipe. Odd self-intersections are allowed here.
    pub fn classical_mumford_matrix(&self) -> IntMat {
        let n = self.vertices.len();
        let mut m = IntMat::zeros(n, n);
        for (idx, v) in self.vertices.iter().enumerate() {
            m[(idx, idx)] = BigInt::from(v.self_intersection);
        }
        for e in &self.edges {
            let mut entry = 0i64;
            for p in &e.points {
                let sign = p.unit_override.map_or(1, |u| u.rank());
                entry += p.multiplicity as i64 * p.residue.degree() * sign;
            }
            m[(e.i, e.j)] = BigInt::from(entry);
            m[(e.j, e.i)] = BigInt::from(entry);
        }
        m
    }

    /// Splits the motive of the boundary into its combinatorial part (the
    /// two-term complex of the incidence map, one generator per point mapping
    /// into one generator per vertex) and the geometric part, one 1(1)[2] per
    /// branch.
    pub fn boundary_motive_decomposition(&self) -> Result<(TateComplex, ArtinTateMotive)> {
        let incidence = self.incidence_matrix()?;
        let terms = vec![
            vec![crate::complex::Generator::tate(0, 0); self.vertices.len()],
            vec![crate::complex::Generator::tate(0, 0); self.point_count()],
        ];
        let d = incidence.transpose();
        let complex = TateComplex::new(terms, vec![d])?;
        let geometric = ArtinTateMotive::free(self.vertices.len() as u64, 1, 2);
        Ok((complex, geometric))
    }

    /// The ordered Cech complex of the boundary: projective-line strata for
    /// the branches and point strata for the pairwise intersections.
    pub fn cech_boundary_complex(&self) -> Result<TateComplex> {
        self.all_points_rational()?;
        let mut strata: Vec<(Vec<usize>, StratumDescriptor)> = Vec::new();
        for idx in 0..self.vertices.len() {
            strata.push((vec![idx], StratumDescriptor::P1));
        }
        for e in &self.edges {
            strata.push((
                vec![e.i, e.j],
                StratumDescriptor::Points {
                    count: e.points.len() as u64,
                },
            ));
        }
        ordered_cech_complex(&strata, None, &[])
    }

    /// Homology motives at infinity via the six-term exact sequence. The
    /// extension problems in degrees 1 and 2 are resolved as direct sums and
    /// flagged with `split_assumed` whenever both pieces are nonzero. When
    /// `with_quadratic` is set, the diagonalization of the quadratic Mumford
    /// matrix is attached (requires even weights).
    pub fn homology_at_infinity(&self, with_quadratic: bool) -> Result<InfinityHomology> {
        let incidence = self.incidence_matrix()?;
        let incidence_snf = smith_normal_form(&incidence);
        let mu_rank = self.classical_mumford_matrix();
        let mu_rank_snf = smith_normal_form(&mu_rank);

        let vertices = self.vertices.len();
        let points = self.point_count();
        let n_rank = incidence_snf.rank();
        let n_torsion = incidence_snf.torsion();
        let mu_rank_rank = mu_rank_snf.rank();

        // H_0 = coker of the map from points to vertices
        let mut h0 = vec![TateSummand::free((vertices - n_rank) as u64, 0, 0)];
        h0.extend(n_torsion.iter().map(|t| torsion_summand(t, 0)));
        let h0 = ArtinTateMotive::from_summands(h0);

        // H_1: coker(mu)(1) extended by the cycle space of the boundary graph
        let mu_coker_free = vertices - mu_rank_rank;
        let mut h1_left = vec![TateSummand::free(mu_coker_free as u64, 1, 0)];
        h1_left.extend(mu_rank_snf.torsion().iter().map(|t| torsion_summand(t, 1)));
        let h1_left = ArtinTateMotive::from_summands(h1_left);
        let h1_right = ArtinTateMotive::free((points - n_rank) as u64, 0, 0);
        let h1 = h1_left
            .direct_sum(&h1_right)
            .with_split_assumed(!h1_left.is_zero() && !h1_right.is_zero());

        // H_2: coker of the transposed incidence map, twisted (2), extended
        // by ker(mu)(1)
        let mut h2_left = vec![TateSummand::free((points - n_rank) as u64, 2, 0)];
        h2_left.extend(n_torsion.iter().map(|t| torsion_summand(t, 2)));
        let h2_left = ArtinTateMotive::from_summands(h2_left);
        let h2_right = ArtinTateMotive::free((vertices - mu_rank_rank) as u64, 1, 0);
        let h2 = h2_left
            .direct_sum(&h2_right)
            .with_split_assumed(!h2_left.is_zero() && !h2_right.is_zero());

        // H_3 = kernel of the map from vertices to points
        let h3 = ArtinTateMotive::free((vertices - n_rank) as u64, 2, 0);

        let quadratic = if with_quadratic {
            Some(gw_diagonalize(&self.mumford_matrix()?))
        } else {
            None
        };

        Ok(InfinityHomology {
            h: [h0, h1, h2, h3],
            incidence,
            incidence_snf,
            mu_rank,
            mu_rank_snf,
            quadratic,
        })
    }
}

fn torsion_summand(order: &BigInt, twist: i64) -> TateSummand {
    let n = u64::try_from(order).expect("torsion order fits in u64 at desk scale");
    TateSummand::torsion(n, twist, 0)
}

fn transversal_point() -> IntersectionPoint {
    IntersectionPoint {
        multiplicity: 1,
        residue: EtaleFactor::Rational,
        unit_override: None,
    }
}

fn transversal_edge(i: usize, j: usize) -> PlumbingEdge {
    PlumbingEdge {
        i,
        j,
        points: vec![transversal_point()],
    }
}

/// The boundary of the complement of three general lines in the projective
/// plane: a triangle of weight-zero branches meeting transversally.
pub fn three_general_lines(field: FieldDescriptor) -> PlumbingGraph {
    let vertex = |name: &str| PlumbingVertex {
        name: name.into(),
        self_intersection: 0,
    };
    PlumbingGraph::new(
        field,
        vec![vertex("L1"), vertex("L2"), vertex("L3")],
        vec![
            transversal_edge(0, 1),
            transversal_edge(0, 2),
            transversal_edge(1, 2),
        ],
    )
    .expect("fixed graph is valid")
}

/// The boundary fork of the n-th Danielewski surface: a chain with weights
/// (0, 0, -2) and two arms of n-1 additional weight -2 branches attached to
/// the third vertex, 2n+1 branches and 2n transversal rational points total.
pub fn danielewski_fork(n: usize, field: FieldDescriptor) -> PlumbingGraph {
    assert!(n >= 1, "the fork family starts at n = 1");
    let vertex = |name: String, d: i64| PlumbingVertex {
        name,
        self_intersection: d,
    };
    let mut vertices = vec![
        vertex("F_inf".into(), 0),
        vertex("C_inf".into(), 0),
        vertex("F0".into(), -2),
    ];
    let mut edges = vec![transversal_edge(0, 1), transversal_edge(1, 2)];
    for arm in 0..2 {
        let mut prev = 2;
        for level in 1..n {
            let idx = vertices.len();
            vertices.push(vertex(format!("E{level}_{arm}"), -2));
            edges.push(transversal_edge(prev, idx));
            prev = idx;
        }
    }
    edges.sort_by_key(|e| (e.i, e.j));
    PlumbingGraph::new(field, vertices, edges).expect("fixed family is valid")
}

/// The full output of the homology pipeline, intermediates included.
#[derive(Debug, Clone)]
pub struct InfinityHomology {
    /// H_0 through H_3; everything outside this range vanishes.
    pub h: [ArtinTateMotive; 4],
    pub incidence: IntMat,
    pub incidence_snf: SnfResult,
    pub mu_rank: IntMat,
    pub mu_rank_snf: SnfResult,
    pub quadratic: Option<DiagonalizationResult>,
}

/// Input record for a plumbing graph.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlumbingGraphRecord {
    pub field: FieldDescriptor,
    pub vertices: Vec<VertexRecord>,
    pub edges: Vec<EdgeRecord>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VertexRecord {
    pub name: String,
    pub d: i64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeRecord {
    pub i: usize,
    pub j: usize,
    pub points: Vec<PointRecord>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointRecord {
    pub m: u64,
    pub residue: ResidueRecord,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unit: Option<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ResidueRecord {
    Named(String),
    Quadratic { quadratic: String },
}

impl PlumbingGraph {
    /// Canonical record form; `record.build(None)` inverts it.
    pub fn to_record(&self) -> PlumbingGraphRecord {
        PlumbingGraphRecord {
            field: self.field,
            vertices: self
                .vertices
                .iter()
                .map(|v| VertexRecord {
                    name: v.name.clone(),
                    d: v.self_intersection,
                })
                .collect(),
            edges: self
                .edges
                .iter()
                .map(|e| EdgeRecord {
                    i: e.i,
                    j: e.j,
                    points: e
                        .points
                        .iter()
                        .map(|p| PointRecord {
                            m: p.multiplicity,
                            residue: match &p.residue {
                                EtaleFactor::Rational => ResidueRecord::Named("rational".into()),
                                EtaleFactor::Quadratic(d) => ResidueRecord::Quadratic {
                                    quadratic: d.to_string(),
                                },
                            },
                            unit: p.unit_override.map(|u| u.to_string()),
                        })
                        .collect(),
                })
                .collect(),
        }
    }
}

impl PlumbingGraphRecord {
    /// Builds the graph, optionally forcing a base field. The override must
    /// be compatible with every square-class token in the record.
    pub fn build(&self, field_override: Option<FieldDescriptor>) -> Result<PlumbingGraph> {
        let field = field_override.unwrap_or(self.field);
        let vertices = self
            .vertices
            .iter()
            .map(|v| PlumbingVertex {
                name: v.name.clone(),
                self_intersection: v.d,
            })
            .collect();
        let mut edges = Vec::with_capacity(self.edges.len());
        for (idx, e) in self.edges.iter().enumerate() {
            let mut points = Vec::with_capacity(e.points.len());
            for (pidx, p) in e.points.iter().enumerate() {
                let residue = match &p.residue {
                    ResidueRecord::Named(s) if s == "rational" => EtaleFactor::Rational,
                    ResidueRecord::Named(s) => {
                        return Err(Error::validation(
                            format!("edges[{idx}].points[{pidx}].residue"),
                            format!("unknown residue `{s}` (expected \"rational\" or {{\"quadratic\": token}})"),
                        ));
                    }
                    ResidueRecord::Quadratic { quadratic } => {
                        EtaleFactor::Quadratic(SquareClass::parse_token(field, quadratic)?)
                    }
                };
                let unit_override = match &p.unit {
                    Some(expr) => Some(parse_gw_expression(expr, field)?),
                    None => None,
                };
                points.push(IntersectionPoint {
                    multiplicity: p.m,
                    residue,
                    unit_override,
                });
            }
            edges.push(PlumbingEdge {
                i: e.i,
                j: e.j,
                points,
            });
        }
        PlumbingGraph::new(field, vertices, edges)
    }
}

/// Serialized output of the homology pipeline.
#[derive(Debug, Clone, Serialize)]
pub struct InfinityHomologyRecord {
    pub h: Vec<MotiveRecord>,
    pub h_display: Vec<String>,
    pub incidence: IntMatRecord,
    pub incidence_snf: SnfRecord,
    pub mu_rank: IntMatRecord,
    pub mu_rank_snf: SnfRecord,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mumford_matrix: Option<GwMatrixRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub diagonalization: Option<DiagonalizationRecord>,
}

impl InfinityHomology {
    pub fn to_record(&self, mumford: Option<&GwMatrix>) -> InfinityHomologyRecord {
        InfinityHomologyRecord {
            h: self.h.iter().map(crate::motive::serialize_motive).collect(),
            h_display: self.h.iter().map(|m| m.to_string()).collect(),
            incidence: IntMatRecord::from(&self.incidence),
            incidence_snf: SnfRecord::from(&self.incidence_snf),
            mu_rank: IntMatRecord::from(&self.mu_rank),
            mu_rank_snf: SnfRecord::from(&self.mu_rank_snf),
            mumford_matrix: mumford.map(GwMatrixRecord::from),
            diagonalization: self.quadratic.as_ref().map(DiagonalizationRecord::from),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const RC: FieldDescriptor = FieldDescriptor::RealClosed;

    fn rational_point() -> IntersectionPoint {
        IntersectionPoint {
            multiplicity: 1,
            residue: EtaleFactor::Rational,
            unit_override: None,
        }
    }

    fn simple_edge(i: usize, j: usize) -> PlumbingEdge {
        PlumbingEdge {
            i,
            j,
            points: vec![rational_point()],
        }
    }

    fn vertex(name: &str, d: i64) -> PlumbingVertex {
        PlumbingVertex {
            name: name.into(),
            self_intersection: d,
        }
    }

    fn three_lines(field: FieldDescriptor) -> PlumbingGraph {
        three_general_lines(field)
    }

    #[test]
    fn incidence_of_a_path() {
        let g = danielewski_fork(1, RC);
        let n = g.incidence_matrix().unwrap();
        assert_eq!(n, IntMat::from_rows(&[vec![1, -1, 0], vec![0, 1, -1]]));
    }

    #[test]
    fn incidence_of_the_triangle() {
        let g = three_lines(RC);
        let n = g.incidence_matrix().unwrap();
        assert_eq!(
            n,
            IntMat::from_rows(&[vec![1, -1, 0], vec![1, 0, -1], vec![0, 1, -1]])
        );
        assert_eq!(smith_normal_form(&n).divisors, vec![
            BigInt::from(1),
            BigInt::from(1),
            BigInt::from(0)
        ]);
    }

    #[test]
    fn fork_incidence_snf_is_identity_padded() {
        let g = danielewski_fork(2, RC);
        let n = g.incidence_matrix().unwrap();
        assert_eq!((n.rows(), n.cols()), (4, 5));
        let snf = smith_normal_form(&n);
        assert_eq!(snf.rank(), 4);
        assert!(snf.torsion().is_empty());
    }

    #[test]
    fn mumford_matrix_three_lines() {
        let mu = three_lines(RC).mumford_matrix().unwrap();
        let one = GwElement::one(RC);
        for i in 0..3 {
            assert!(mu.get(i, i).is_zero());
            for j in 0..3 {
                if i != j {
                    assert_eq!(mu.get(i, j), one);
                }
            }
        }
        assert!(mu.is_symmetric());
    }

    #[test]
    fn mumford_matrix_fork_diagonal() {
        let g = danielewski_fork(2, RC);
        let mu = g.mumford_matrix().unwrap();
        let h = GwElement::hyperbolic(RC);
        assert!(mu.get(0, 0).is_zero());
        assert!(mu.get(1, 1).is_zero());
        for i in 2..5 {
            assert_eq!(mu.get(i, i), -h);
        }
        assert_eq!(mu.get(2, 3), GwElement::one(RC));
        assert_eq!(mu.get(2, 4), GwElement::one(RC));
        assert!(mu.get(3, 4).is_zero());
    }

    #[test]
    fn classical_matrix_d1() {
        let g = danielewski_fork(1, RC);
        assert_eq!(
            g.classical_mumford_matrix(),
            IntMat::from_rows(&[vec![0, 1, 0], vec![1, 0, 1], vec![0, 1, -2]])
        );
    }

    #[test]
    fn odd_weights_are_rejected_in_quadratic_mode() {
        let g = PlumbingGraph::new(RC, vec![vertex("E", -1)], vec![]).unwrap();
        assert!(matches!(
            g.mumford_matrix(),
            Err(Error::OddSelfIntersection { d: -1, .. })
        ));
        // the rank-only channel still works
        assert_eq!(g.classical_mumford_matrix(), IntMat::from_rows(&[vec![-1]]));
    }

    #[test]
    fn three_lines_homology() {
        let hom = three_lines(RC).homology_at_infinity(true).unwrap();
        assert_eq!(hom.h[0].to_string(), "1");
        assert_eq!(hom.h[1].to_string(), "1 + (1/2)(1)  [split assumed]");
        assert_eq!(hom.h[2].to_string(), "1(2)");
        assert_eq!(hom.h[3].to_string(), "1(2)");
        assert!(hom.h[1].split_assumed);
        assert!(!hom.h[2].split_assumed);
        let diag = hom.quadratic.as_ref().unwrap();
        assert_eq!(diag.unit_count, 2);
    }

    #[test]
    fn danielewski_homology() {
        for n in 1..=4 {
            let hom = danielewski_fork(n, RC).homology_at_infinity(false).unwrap();
            assert_eq!(hom.h[0].to_string(), "1", "n = {n}");
            assert_eq!(hom.h[1].to_string(), format!("(1/{})(1)", 2 * n), "n = {n}");
            assert!(hom.h[1].split_assumed == false);
            assert!(hom.h[2].is_zero(), "n = {n}");
            assert_eq!(hom.h[3].to_string(), "1(2)", "n = {n}");
        }
    }

    #[test]
    fn single_branch_homology() {
        let g = PlumbingGraph::new(RC, vec![vertex("L", 0)], vec![]).unwrap();
        let hom = g.homology_at_infinity(true).unwrap();
        assert_eq!(hom.h[0].to_string(), "1");
        assert_eq!(hom.h[1].to_string(), "1(1)");
        assert_eq!(hom.h[2].to_string(), "1(1)");
        assert_eq!(hom.h[3].to_string(), "1(2)");
    }

    #[test]
    fn single_vertex_matrices_and_boundary_motive() {
        let g = PlumbingGraph::new(RC, vec![vertex("L", 0)], vec![]).unwrap();
        let mu = g.mumford_matrix().unwrap();
        assert_eq!((mu.rows(), mu.cols()), (1, 1));
        assert!(mu.get(0, 0).is_zero());

        let (complex, geometric) = g.boundary_motive_decomposition().unwrap();
        let h = crate::complex::complex_homology(&complex).unwrap();
        assert_eq!(h.len(), 1);
        assert_eq!(h[0].1.to_string(), "1");
        assert_eq!(geometric.to_string(), "1(1)[2]");
    }

    #[test]
    fn fork_rank_matrix_cokernel() {
        for n in 1..=8usize {
            let mu = danielewski_fork(n, RC).classical_mumford_matrix();
            let (free, torsion) = crate::snf::cokernel(&mu);
            assert_eq!(free, 0, "n = {n}");
            assert_eq!(torsion, vec![BigInt::from(2 * n)], "n = {n}");
        }
    }

    #[test]
    fn classical_matrix_three_lines() {
        assert_eq!(
            three_lines(RC).classical_mumford_matrix(),
            IntMat::from_rows(&[vec![0, 1, 1], vec![1, 0, 1], vec![1, 1, 0]])
        );
    }

    #[test]
    fn fork_boundary_motive_is_a_tree() {
        let (complex, geometric) = danielewski_fork(2, RC).boundary_motive_decomposition().unwrap();
        let h = crate::complex::complex_homology(&complex).unwrap();
        assert_eq!(h.len(), 1, "no cycle classes on a tree");
        assert_eq!(h[0], (0, crate::motive::ArtinTateMotive::unit()));
        assert_eq!(geometric.to_string(), "5*1(1)[2]");
    }

    #[test]
    fn path_of_two_branches_cech_terms() {
        let g = PlumbingGraph::new(
            RC,
            vec![vertex("A", 0), vertex("B", 0)],
            vec![simple_edge(0, 1)],
        )
        .unwrap();
        let c = g.cech_boundary_complex().unwrap();
        assert_eq!(c.terms()[1].len(), 1);
        assert_eq!(c.terms()[0].len(), 4);
    }

    #[test]
    fn boundary_motive_of_triangle() {
        let (complex, geometric) = three_lines(RC).boundary_motive_decomposition().unwrap();
        let h = crate::complex::complex_homology(&complex).unwrap();
        let h0 = h.iter().find(|(d, _)| *d == 0).map(|(_, m)| m.to_string());
        let h1 = h.iter().find(|(d, _)| *d == 1).map(|(_, m)| m.to_string());
        assert_eq!(h0.as_deref(), Some("1"));
        assert_eq!(h1.as_deref(), Some("1"));
        assert_eq!(geometric.to_string(), "3*1(1)[2]");
    }

    #[test]
    fn cech_complex_of_fork() {
        let g = danielewski_fork(2, RC);
        let c = g.cech_boundary_complex().unwrap();
        assert_eq!(c.terms()[0].len(), 10); // 5 branches, 2 generators each
        assert_eq!(c.terms()[1].len(), 4); // 4 intersection points
    }

    #[test]
    fn artin_points_are_rejected_on_the_homology_path() {
        let d = SquareClass::of_integer(RC, -1).unwrap();
        let g = PlumbingGraph::new(
            RC,
            vec![vertex("A", 0), vertex("B", 0)],
            vec![PlumbingEdge {
                i: 0,
                j: 1,
                points: vec![IntersectionPoint {
                    multiplicity: 1,
                    residue: EtaleFactor::Quadratic(d),
                    unit_override: None,
                }],
            }],
        )
        .unwrap();
        assert!(matches!(
            g.incidence_matrix(),
            Err(Error::NonRationalPoint { i: 0, j: 1 })
        ));
        // the Mumford entry is still computed via the trace form
        let mu = g.mumford_matrix().unwrap();
        assert_eq!(mu.get(0, 1), GwElement::hyperbolic(RC));
    }

    #[test]
    fn validation_messages() {
        let bad = PlumbingGraph::new(
            RC,
            vec![vertex("A", 0)],
            vec![simple_edge(0, 0)],
        );
        assert!(matches!(bad, Err(Error::Validation { .. })));
        let record = PlumbingGraphRecord {
            field: RC,
            vertices: vec![VertexRecord { name: "A".into(), d: 0 }],
            edges: vec![EdgeRecord {
                i: 0,
                j: 0,
                points: vec![PointRecord {
                    m: 1,
                    residue: ResidueRecord::Named("rational".into()),
                    unit: None,
                }],
            }],
        };
        let err = record.build(None).unwrap_err();
        assert!(err.to_string().contains("self-edge at edges[0]"));
    }
}
