//! Deterministic run reports: a canonical input digest, the result payload,
//! and every warning the computation raised. Two runs on the same canonical
//! input produce byte-identical payloads (the tool version aside).

use serde::Serialize;
use sha2::{Digest, Sha256};

#[derive(Debug, Serialize)]
pub struct RunReport<T: Serialize> {
    pub tool_version: &'static str,
    pub subcommand: &'static str,
    pub input_digest: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub warnings: Vec<String>,
    pub result: T,
}

/// SHA-256 of the canonical serialization of the parsed input.
pub fn digest_of<T: Serialize>(canonical_input: &T) -> String {
    let bytes = serde_json::to_vec(canonical_input).expect("canonical input serializes");
    hex::encode(Sha256::digest(bytes))
}

impl<T: Serialize> RunReport<T> {
    pub fn new(
        subcommand: &'static str,
        input_digest: String,
        seed: Option<u64>,
        warnings: Vec<String>,
        result: T,
    ) -> Self {
        RunReport {
            tool_version: env!("CARGO_PKG_VERSION"),
            subcommand,
            input_digest,
            seed,
            warnings,
            result,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Warnings shared by the subcommands.
pub fn diagonalization_warnings(
    result: &mhi_core::DiagonalizationResult,
    warnings: &mut Vec<String>,
) {
    let non_units: Vec<String> = result
        .diagonal
        .iter()
        .skip(result.unit_count)
        .filter(|d| !d.is_zero())
        .map(|d| {
            if result.field.is_real_closed() {
                format!("{} (rank {}, signature {})", d, d.rank(), d.signature())
            } else {
                format!("{} (rank {})", d, d.rank())
            }
        })
        .collect();
    if !non_units.is_empty() {
        warnings.push(format!(
            "non-unit diagonal entries are GW classes, plain integer notation for them is ambiguous: {}",
            non_units.join(", ")
        ));
    }
    if result.residual_block.is_some() {
        warnings.push("diagonalization stopped at an irreducible residual block".into());
    }
}

pub fn split_warnings(h: &[mhi_core::ArtinTateMotive], warnings: &mut Vec<String>) {
    for (i, motive) in h.iter().enumerate() {
        if motive.split_assumed {
            warnings.push(format!(
                "H_{i} is reported as a direct sum; the extension is assumed split (split_assumed)"
            ));
        }
    }
}
