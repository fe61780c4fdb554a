//! Pipeline-level properties of the plumbing module on random boundary
//! graphs: the rank realization of the Mumford matrix agrees with the
//! classical matrix, incidence combinatorics match independent graph
//! traversals, the Euler characteristic of the six-term sequence balances,
//! and the homology output is invariant under renumbering the vertices.

use mhi_core::{
    smith_normal_form, FieldDescriptor, IntersectionPoint, PlumbingEdge, PlumbingGraph,
    PlumbingVertex,
};
use mhi_core::{EtaleFactor, SummandKind};
use num_traits::Zero;
use proptest::prelude::*;

const RC: FieldDescriptor = FieldDescriptor::RealClosed;

#[derive(Debug, Clone)]
struct RawGraph {
    weights: Vec<i64>,
    edges: Vec<(usize, usize, u64, u64)>, // (i, j, points, multiplicity)
}

fn arb_graph(even_weights: bool) -> impl Strategy<Value = RawGraph> {
    (1usize..=7).prop_flat_map(move |v| {
        let pairs: Vec<(usize, usize)> = (0..v)
            .flat_map(|i| (i + 1..v).map(move |j| (i, j)))
            .collect();
        let weight = if even_weights { -4i64..=4 } else { -5i64..=5 };
        (
            proptest::collection::vec(weight, v),
            proptest::collection::vec((any::<bool>(), 1u64..=2, 1u64..=3), pairs.len()),
        )
            .prop_map(move |(mut weights, picks)| {
                if even_weights {
                    for w in &mut weights {
                        *w -= *w % 2;
                    }
                }
                let edges = pairs
                    .iter()
                    .zip(picks)
                    .filter(|(_, (keep, _, _))| *keep)
                    .map(|(&(i, j), (_, points, mult))| (i, j, points, mult))
                    .collect();
                RawGraph { weights, edges }
            })
    })
}

fn build(raw: &RawGraph) -> PlumbingGraph {
    let vertices = raw
        .weights
        .iter()
        .enumerate()
        .map(|(i, &d)| PlumbingVertex {
            name: format!("V{i}"),
            self_intersection: d,
        })
        .collect();
    let edges = raw
        .edges
        .iter()
        .map(|&(i, j, points, mult)| PlumbingEdge {
            i,
            j,
            points: (0..points)
                .map(|_| IntersectionPoint {
                    multiplicity: mult,
                    residue: EtaleFactor::Rational,
                    unit_override: None,
                })
                .collect(),
        })
        .collect();
    PlumbingGraph::new(RC, vertices, edges).unwrap()
}

fn connected_components(v: usize, edges: &[(usize, usize)]) -> usize {
    let mut parent: Vec<usize> = (0..v).collect();
    fn find(parent: &mut Vec<usize>, mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for &(i, j) in edges {
        let (a, b) = (find(&mut parent, i), find(&mut parent, j));
        if a != b {
            parent[a] = b;
        }
    }
    (0..v).filter(|&x| find(&mut parent, x) == x).count()
}

fn free_rank(m: &mhi_core::ArtinTateMotive) -> i64 {
    m.summands()
        .iter()
        .map(|s| match s.kind {
            SummandKind::Free { mult } => mult as i64,
            _ => 0,
        })
        .sum()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn rank_realization_matches_classical_matrix(raw in arb_graph(true)) {
        let g = build(&raw);
        let mu = g.mumford_matrix().unwrap();
        prop_assert_eq!(mu.rank_realization(), g.classical_mumford_matrix());
        prop_assert!(mu.is_symmetric());
    }

    #[test]
    fn incidence_combinatorics(raw in arb_graph(false)) {
        let g = build(&raw);
        let n = g.incidence_matrix().unwrap();

        // every row sums to zero
        for i in 0..n.rows() {
            let sum: num_bigint::BigInt = (0..n.cols()).map(|j| n[(i, j)].clone()).sum();
            prop_assert!(sum.is_zero());
        }

        let snf = smith_normal_form(&n);
        // incidence matrices are totally unimodular: every divisor is 1
        prop_assert!(snf.torsion().is_empty());

        // cycle space dimension = points - vertices + components
        let simple_edges: Vec<(usize, usize)> = raw.edges.iter().map(|&(i, j, _, _)| (i, j)).collect();
        let point_edges: Vec<(usize, usize)> = raw
            .edges
            .iter()
            .flat_map(|&(i, j, points, _)| std::iter::repeat((i, j)).take(points as usize))
            .collect();
        let components = connected_components(raw.weights.len(), &simple_edges);
        let expected_cycles =
            point_edges.len() as i64 - raw.weights.len() as i64 + components as i64;
        let kernel_of_transpose = n.rows() - snf.rank();
        prop_assert_eq!(kernel_of_transpose as i64, expected_cycles);

        // connected boundary => H_0 = 1
        let hom = g.homology_at_infinity(false).unwrap();
        if components == 1 {
            prop_assert_eq!(hom.h[0].to_string(), "1");
        } else {
            prop_assert_eq!(free_rank(&hom.h[0]), components as i64);
        }
    }

    #[test]
    fn euler_characteristic_balances(raw in arb_graph(false)) {
        let g = build(&raw);
        let hom = g.homology_at_infinity(false).unwrap();
        // exactness of the six-term sequence forces the alternating sum of
        // free ranks to cancel
        prop_assert_eq!(
            free_rank(&hom.h[0]) + free_rank(&hom.h[2]),
            free_rank(&hom.h[1]) + free_rank(&hom.h[3])
        );
    }

    #[test]
    fn homology_is_order_invariant(raw in arb_graph(false), seed in any::<u64>()) {
        let g = build(&raw);
        let baseline = g.homology_at_infinity(false).unwrap();

        // a deterministic pseudo-random permutation of the vertices
        let v = raw.weights.len();
        let mut perm: Vec<usize> = (0..v).collect();
        let mut state = seed | 1;
        for i in (1..v).rev() {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (state >> 33) as usize % (i + 1));
        }

        let vertices: Vec<PlumbingVertex> = {
            let mut out = vec![None; v];
            for (old, vert) in g.vertices().iter().enumerate() {
                out[perm[old]] = Some(vert.clone());
            }
            out.into_iter().map(Option::unwrap).collect()
        };
        let mut edges: Vec<PlumbingEdge> = g
            .edges()
            .iter()
            .map(|e| {
                let (a, b) = (perm[e.i], perm[e.j]);
                PlumbingEdge {
                    i: a.min(b),
                    j: a.max(b),
                    points: e.points.clone(),
                }
            })
            .collect();
        edges.sort_by_key(|e| (e.i, e.j));
        let permuted = PlumbingGraph::new(RC, vertices, edges).unwrap();
        let renumbered = permuted.homology_at_infinity(false).unwrap();

        prop_assert_eq!(&baseline.h, &renumbered.h);
    }
}
