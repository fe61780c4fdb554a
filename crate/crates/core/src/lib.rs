//! Exact-arithmetic calculator for the computable core of motivic homotopy
//! at infinity: Grothendieck-Witt ring arithmetic and quadratic intersection
//! degrees, quadratic Mumford matrices of normal-crossing boundary graphs,
//! Smith-normal-form homology of twist-graded complexes, and closed-form
//! motivic decompositions of hyperplane-arrangement complements.
//!
//! Everything is immutable after construction and every operation is a pure
//! function, so values can be shared freely across threads.

pub mod arrangement;
pub mod complex;
pub mod error;
pub mod expr;
pub mod field;
pub mod gw;
pub mod gwmat;
pub mod intmat;
pub mod motive;
pub mod plumbing;
pub mod snf;

pub use arrangement::{Arrangement, ArrangementRecord, Hyperplane, StratumRow, StratumTable};
pub use complex::{
    complex_homology, ordered_cech_complex, ComplexRecord, ExplicitFace, Generator,
    StratumDescriptor, TateComplex,
};
pub use error::{Error, Result};
pub use expr::parse_gw_expression;
pub use field::{FieldDescriptor, SquareClass, SquareClassToken};
pub use gw::{
    euler_class_p1_bundle, quadratic_intersection_degree, trace_form_class, EtaleAlgebra,
    EtaleFactor, GwElement, GwElementRecord,
};
pub use gwmat::{
    gw_diagonalize, solve_unit_multiplier, DiagonalizationRecord, DiagonalizationResult,
    ElementaryOp, GwMatrix, GwMatrixRecord,
};
pub use intmat::{IntMat, IntMatRecord};
pub use motive::{
    parse_motive, serialize_motive, ArtinTateMotive, MotiveRecord, SummandKind, TateSummand,
};
pub use plumbing::{
    danielewski_fork, three_general_lines, InfinityHomology, InfinityHomologyRecord,
    IntersectionPoint, PlumbingEdge, PlumbingGraph, PlumbingGraphRecord, PlumbingVertex,
};
pub use snf::{cokernel, kernel_rank, smith_normal_form, SnfRecord, SnfResult};
