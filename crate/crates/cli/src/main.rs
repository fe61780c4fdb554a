//! Command-line front door: parse input records, dispatch to the computation
//! modules, and emit deterministic text tables or canonical JSON reports.
//!
//! Exit codes: 0 on success, 2 on input validation failures, 3 on
//! unsupported-feature requests (odd weights in quadratic mode, non-rational
//! points on the homology path).

mod report;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use mhi_core::{
    complex_homology, gw_diagonalize, ordered_cech_complex, parse_gw_expression,
    smith_normal_form, ArtinTateMotive, ComplexRecord, DiagonalizationRecord, Error,
    ExplicitFace, FieldDescriptor, GwElementRecord, GwMatrix, GwMatrixRecord,
    InfinityHomologyRecord, IntMatRecord, MotiveRecord, PlumbingGraphRecord, SnfRecord,
    StratumDescriptor, TateComplex,
};
use report::{diagonalization_warnings, digest_of, split_warnings, RunReport};

#[derive(Parser)]
#[command(
    name = "mhi",
    version,
    about = "Exact calculator for quadratic Mumford matrices, homology motives at infinity, \
             Grothendieck-Witt arithmetic, and arrangement motives"
)]
struct Cli {
    /// Output format: aligned text or a canonical JSON record
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Base field: qc, rc, or fq:<q> (overrides the input record's field
    /// when the record's tokens are compatible)
    #[arg(long, global = true, value_parser = parse_field_flag)]
    field: Option<FieldDescriptor>,

    /// Echoed into the report; used when replaying generated fixtures
    #[arg(long, global = true)]
    seed: Option<u64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Record,
}

#[derive(Subcommand)]
enum Command {
    /// Boundary dual graph: incidence matrix, quadratic Mumford matrix,
    /// boundary complex, homology motives at infinity
    Plumbing {
        input: PathBuf,
        /// Classical (rank-only) mode, required for odd self-intersections
        #[arg(long)]
        rank_only: bool,
    },
    /// Affine hyperplane arrangement: stratum table and the three motives
    Arrangement { input: PathBuf },
    /// Evaluate a GW expression, or load a matrix record with --matrix
    Gw {
        /// An expression such as "n_eps(2) + H*<-1>", or a path with --matrix
        input: String,
        /// Treat the input as a path to a matrix record
        #[arg(long)]
        matrix: bool,
        /// Diagonalize the matrix by elementary equivalence
        #[arg(long, requires = "matrix")]
        diagonalize: bool,
    },
    /// Ordered Cech complex of a crossing configuration, with homology
    Cech { input: PathBuf },
}

fn parse_field_flag(s: &str) -> Result<FieldDescriptor, String> {
    match s {
        "qc" => Ok(FieldDescriptor::QuadraticallyClosed),
        "rc" => Ok(FieldDescriptor::RealClosed),
        _ => match s.strip_prefix("fq:") {
            Some(q) => {
                let q: u64 = q.parse().map_err(|_| format!("invalid field order `{q}`"))?;
                FieldDescriptor::finite(q).map_err(|e| e.to_string())
            }
            None => Err(format!("unknown field `{s}` (expected qc, rc, or fq:<q>)")),
        },
    }
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn validation(message: impl Into<String>) -> Self {
        Failure {
            code: 2,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::OddSelfIntersection { .. } | Error::NonRationalPoint { .. } => 3,
            _ => 2,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Plumbing { input, rank_only } => cmd_plumbing(&cli, input, *rank_only),
        Command::Arrangement { input } => cmd_arrangement(&cli, input),
        Command::Gw {
            input,
            matrix,
            diagonalize,
        } => cmd_gw(&cli, input, *matrix, *diagonalize),
        Command::Cech { input } => cmd_cech(&cli, input),
    };
    match outcome {
        Ok(rendered) => {
            println!("{rendered}");
            ExitCode::SUCCESS
        }
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::validation(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| Failure::validation(format!("{}: {e}", path.display())))
}

#[derive(Serialize)]
struct HomologyEntry {
    degree: i64,
    motive: MotiveRecord,
    display: String,
}

fn homology_entries(h: &[(i64, ArtinTateMotive)]) -> Vec<HomologyEntry> {
    h.iter()
        .map(|(degree, motive)| HomologyEntry {
            degree: *degree,
            motive: mhi_core::serialize_motive(motive),
            display: motive.to_string(),
        })
        .collect()
}

// ---------------------------------------------------------------- plumbing

#[derive(Serialize)]
struct PlumbingResult {
    field: String,
    vertices: Vec<String>,
    homology: InfinityHomologyRecord,
    boundary_complex_homology: Vec<HomologyEntry>,
    geometric_part: MotiveRecord,
    geometric_part_display: String,
}

fn cmd_plumbing(cli: &Cli, input: &Path, rank_only: bool) -> Result<String, Failure> {
    let record: PlumbingGraphRecord = read_json(input)?;
    let graph = record.build(cli.field)?;
    let canonical = graph.to_record();
    let digest = digest_of(&canonical);

    let homology = graph.homology_at_infinity(!rank_only)?;
    let mumford = if rank_only {
        None
    } else {
        Some(graph.mumford_matrix()?)
    };
    let (boundary_complex, geometric) = graph.boundary_motive_decomposition()?;
    let boundary_homology = complex_homology(&boundary_complex)?;

    let mut warnings = Vec::new();
    split_warnings(&homology.h, &mut warnings);
    if let Some(diag) = &homology.quadratic {
        diagonalization_warnings(diag, &mut warnings);
    }
    if rank_only {
        warnings.push("rank-only mode: the quadratic refinement was not computed".into());
    }

    let result = PlumbingResult {
        field: graph.field().to_string(),
        vertices: graph.vertices().iter().map(|v| v.name.clone()).collect(),
        homology: homology.to_record(mumford.as_ref()),
        boundary_complex_homology: homology_entries(&boundary_homology),
        geometric_part: mhi_core::serialize_motive(&geometric),
        geometric_part_display: geometric.to_string(),
    };
    let report = RunReport::new("plumbing", digest, cli.seed, warnings, result);

    Ok(match cli.format {
        Format::Record => report.to_json(),
        Format::Text => {
            let mut out = header("plumbing", &report.input_digest, &report.warnings);
            let r = &report.result;
            let _ = writeln!(out, "field     : {}", r.field);
            let _ = writeln!(
                out,
                "vertices  : {} ({})",
                r.vertices.len(),
                r.vertices.join(", ")
            );
            let _ = writeln!(out, "points    : {}", graph.point_count());
            let _ = writeln!(out, "\nincidence matrix (rows = points, cols = vertices):");
            let _ = write!(out, "{}", graph.incidence_matrix()?);
            let _ = writeln!(out, "SNF diagonal: {}", r.homology.incidence_snf.diagonal.join(", "));
            match &mumford {
                Some(mu) => {
                    let _ = writeln!(out, "\nquadratic Mumford matrix:");
                    let _ = write!(out, "{mu}");
                    let _ = writeln!(
                        out,
                        "rank SNF diagonal: {}",
                        r.homology.mu_rank_snf.diagonal.join(", ")
                    );
                    if let Some(diag) = &r.homology.diagonalization {
                        let _ = writeln!(
                            out,
                            "diagonalization: {}  ({} unit entries{})",
                            diag.diagonal_display.join(", "),
                            diag.unit_count,
                            if diag.residual_block.is_some() {
                                "; residual block left"
                            } else {
                                ""
                            }
                        );
                    }
                }
                None => {
                    let _ = writeln!(out, "\nclassical Mumford matrix (rank-only mode):");
                    let _ = write!(out, "{}", graph.classical_mumford_matrix());
                    let _ = writeln!(
                        out,
                        "SNF diagonal: {}",
                        r.homology.mu_rank_snf.diagonal.join(", ")
                    );
                }
            }
            let _ = writeln!(out, "\nboundary complex homology:");
            for entry in &r.boundary_complex_homology {
                let _ = writeln!(out, "  H_{} = {}", entry.degree, entry.display);
            }
            let _ = writeln!(out, "geometric part: {}", r.geometric_part_display);
            let _ = writeln!(out, "\nhomology at infinity:");
            for (i, display) in r.homology.h_display.iter().enumerate() {
                let _ = writeln!(out, "  H_{i} = {display}");
            }
            out
        }
    })
}

// ------------------------------------------------------------- arrangement

#[derive(Serialize)]
struct ArrangementResult {
    dim: usize,
    hyperplanes: usize,
    rows: Vec<StratumRowRecord>,
    nc_flag: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    m_profile: Option<Vec<u64>>,
    homotopy_type: MotiveRecord,
    homotopy_type_display: String,
    compact_support_type: MotiveRecord,
    compact_support_type_display: String,
    at_infinity: MotiveRecord,
    at_infinity_display: String,
}

#[derive(Serialize)]
struct StratumRowRecord {
    subset: Vec<usize>,
    n: usize,
    c: usize,
}

fn cmd_arrangement(cli: &Cli, input: &Path) -> Result<String, Failure> {
    let record: mhi_core::ArrangementRecord = read_json(input)?;
    let arrangement = record.build()?;
    let digest = digest_of(&arrangement.to_record());

    let table = arrangement.stratum_table()?;
    let pi = table.homotopy_type();
    let pi_c = table.compact_support_type();
    let pi_inf = table.homotopy_type_at_infinity();

    let mut warnings = Vec::new();
    if !table.nc_flag {
        warnings.push(
            "some strata have deficient codimension (not normal crossing); the m(n) closed form does not apply".into(),
        );
    }

    let result = ArrangementResult {
        dim: arrangement.dim(),
        hyperplanes: arrangement.hyperplanes().len(),
        rows: table
            .rows
            .iter()
            .map(|r| StratumRowRecord {
                subset: r.subset.clone(),
                n: r.n,
                c: r.c,
            })
            .collect(),
        nc_flag: table.nc_flag,
        m_profile: table.m_profile(),
        homotopy_type: mhi_core::serialize_motive(&pi),
        homotopy_type_display: pi.to_string(),
        compact_support_type: mhi_core::serialize_motive(&pi_c),
        compact_support_type_display: pi_c.to_string(),
        at_infinity: mhi_core::serialize_motive(&pi_inf),
        at_infinity_display: pi_inf.to_string(),
    };
    let report = RunReport::new("arrangement", digest, cli.seed, warnings, result);

    Ok(match cli.format {
        Format::Record => report.to_json(),
        Format::Text => {
            let mut out = header("arrangement", &report.input_digest, &report.warnings);
            let r = &report.result;
            let _ = writeln!(out, "dimension   : {}", r.dim);
            let _ = writeln!(out, "hyperplanes : {}", r.hyperplanes);
            let _ = writeln!(out, "nc flag     : {}", r.nc_flag);
            if let Some(m) = &r.m_profile {
                let _ = writeln!(out, "m profile   : {m:?}");
            }
            let _ = writeln!(out, "\nstratum table (subset | n | c):");
            for row in &r.rows {
                let subset = if row.subset.is_empty() {
                    "{}".to_string()
                } else {
                    format!("{:?}", row.subset)
                };
                let _ = writeln!(out, "  {:<16} {:>2} {:>2}", subset, row.n, row.c);
            }
            let _ = writeln!(out, "\nPi     = {}", r.homotopy_type_display);
            let _ = writeln!(out, "Pi_c   = {}", r.compact_support_type_display);
            let _ = writeln!(out, "Pi_inf = {}", r.at_infinity_display);
            out
        }
    })
}

// --------------------------------------------------------------------- gw

/// Input record for a GW matrix: entries are expression strings.
#[derive(Serialize, Deserialize)]
struct GwMatrixInput {
    field: FieldDescriptor,
    entries: Vec<Vec<String>>,
}

#[derive(Serialize)]
struct GwResult {
    field: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    value: Option<GwElementRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    value_display: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    matrix: Option<GwMatrixRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    rank_matrix: Option<IntMatRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    rank_snf: Option<SnfRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    diagonalization: Option<DiagonalizationRecord>,
}

fn cmd_gw(cli: &Cli, input: &str, matrix: bool, diagonalize: bool) -> Result<String, Failure> {
    if !matrix {
        let field = cli.field.unwrap_or(FieldDescriptor::RealClosed);
        let value = parse_gw_expression(input, field)?;
        let record = GwElementRecord::from(value);
        let digest = digest_of(&record);
        let result = GwResult {
            field: field.to_string(),
            value: Some(record),
            value_display: Some(value.to_string()),
            matrix: None,
            rank_matrix: None,
            rank_snf: None,
            diagonalization: None,
        };
        let report = RunReport::new("gw", digest, cli.seed, Vec::new(), result);
        return Ok(match cli.format {
            Format::Record => report.to_json(),
            Format::Text => {
                let mut out = header("gw", &report.input_digest, &report.warnings);
                let _ = writeln!(out, "field : {}", report.result.field);
                let _ = writeln!(
                    out,
                    "value : {}",
                    report.result.value_display.as_deref().unwrap_or("0")
                );
                let v = report.result.value.as_ref().expect("expression value");
                let _ = write!(out, "rank  : {}", v.rank);
                if let Some(sig) = v.sig {
                    let _ = write!(out, "   signature: {sig}");
                }
                if let Some(bit) = v.disc_bit {
                    let _ = write!(out, "   disc bit: {bit}");
                }
                let _ = writeln!(out);
                out
            }
        });
    }

    let record: GwMatrixInput = read_json(Path::new(input))?;
    let field = cli.field.unwrap_or(record.field);
    let rows = record.entries.len();
    let cols = record.entries.first().map_or(0, Vec::len);
    if record.entries.iter().any(|r| r.len() != cols) {
        return Err(Failure::validation("matrix rows have unequal lengths"));
    }
    let mut entries = Vec::with_capacity(rows * cols);
    for row in &record.entries {
        for cell in row {
            entries.push(parse_gw_expression(cell, field)?);
        }
    }
    let m = GwMatrix::new(field, rows, cols, entries)?;
    let canonical = GwMatrixRecord::from(&m);
    let digest = digest_of(&canonical);

    let rank_matrix = m.rank_realization();
    let rank_snf = smith_normal_form(&rank_matrix);
    let diag = diagonalize.then(|| gw_diagonalize(&m));

    let mut warnings = Vec::new();
    if let Some(d) = &diag {
        diagonalization_warnings(d, &mut warnings);
    }

    let result = GwResult {
        field: field.to_string(),
        value: None,
        value_display: None,
        matrix: Some(canonical),
        rank_matrix: Some(IntMatRecord::from(&rank_matrix)),
        rank_snf: Some(SnfRecord::from(&rank_snf)),
        diagonalization: diag.as_ref().map(DiagonalizationRecord::from),
    };
    let report = RunReport::new("gw", digest, cli.seed, warnings, result);

    Ok(match cli.format {
        Format::Record => report.to_json(),
        Format::Text => {
            let mut out = header("gw", &report.input_digest, &report.warnings);
            let _ = writeln!(out, "field : {}", report.result.field);
            let _ = writeln!(out, "\nmatrix:");
            let _ = write!(out, "{m}");
            let snf = report.result.rank_snf.as_ref().expect("rank snf");
            let _ = writeln!(out, "rank SNF diagonal: {}", snf.diagonal.join(", "));
            if let Some(d) = &report.result.diagonalization {
                let _ = writeln!(
                    out,
                    "\ndiagonalization: {}  ({} unit entries{})",
                    d.diagonal_display.join(", "),
                    d.unit_count,
                    if d.residual_block.is_some() {
                        "; residual block left"
                    } else {
                        ""
                    }
                );
                let _ = writeln!(
                    out,
                    "certificate: {} row ops, {} column ops",
                    d.left_ops.len(),
                    d.right_ops.len()
                );
            }
            out
        }
    })
}

// ------------------------------------------------------------------- cech

#[derive(Serialize, Deserialize)]
struct CechInput {
    strata: Vec<StratumEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    order: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    face_data: Vec<ExplicitFace>,
}

#[derive(Serialize, Deserialize)]
struct StratumEntry {
    subset: Vec<usize>,
    #[serde(flatten)]
    descriptor: StratumDescriptor,
}

#[derive(Serialize)]
struct CechResult {
    complex: ComplexRecord,
    homology: Vec<HomologyEntry>,
}

fn cmd_cech(cli: &Cli, input: &Path) -> Result<String, Failure> {
    let record: CechInput = read_json(input)?;
    let digest = digest_of(&record);
    let strata: Vec<(Vec<usize>, StratumDescriptor)> = record
        .strata
        .iter()
        .map(|s| (s.subset.clone(), s.descriptor.clone()))
        .collect();
    let complex: TateComplex =
        ordered_cech_complex(&strata, record.order.as_deref(), &record.face_data)?;
    let homology = complex_homology(&complex)?;

    let result = CechResult {
        complex: ComplexRecord::from(&complex),
        homology: homology_entries(&homology),
    };
    let report = RunReport::new("cech", digest, cli.seed, Vec::new(), result);

    Ok(match cli.format {
        Format::Record => report.to_json(),
        Format::Text => {
            let mut out = header("cech", &report.input_digest, &report.warnings);
            for (n, term) in report.result.complex.terms.iter().enumerate() {
                let gens: Vec<String> = term
                    .iter()
                    .map(|g| {
                        let mut s = match &g.label {
                            Some(l) => format!("Artin{{{l}}}"),
                            None => "1".to_string(),
                        };
                        if g.q != 0 {
                            let _ = write!(s, "({})", g.q);
                        }
                        if g.p != 0 {
                            let _ = write!(s, "[{}]", g.p);
                        }
                        s
                    })
                    .collect();
                let _ = writeln!(out, "term {n}: {}", gens.join(", "));
            }
            let _ = writeln!(out, "\nhomology:");
            for entry in &report.result.homology {
                let _ = writeln!(out, "  H_{} = {}", entry.degree, entry.display);
            }
            out
        }
    })
}

// ---------------------------------------------------------------- helpers

fn header(subcommand: &str, digest: &str, warnings: &[String]) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "subcommand: {subcommand}");
    let _ = writeln!(out, "input     : sha256 {digest}");
    if !warnings.is_empty() {
        let _ = writeln!(out, "warnings  :");
        for w in warnings {
            let _ = writeln!(out, "  - {w}");
        }
    }
    out
}
