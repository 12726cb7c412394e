//! Serializable report shapes shared by the subcommands. JSON is the
//! canonical format; text and CSV renderings are derived from the same
//! structs so every format agrees on content.

use planefill_core::SingularPoint;
use serde::{Deserialize, Serialize};

/// Bumped only when the JSON layout changes incompatibly.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct PointRecord {
    pub orbit: usize,
    pub residue_degree: u32,
    pub conjugate_index: u32,
    pub coords: String,
    pub field: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub modulus: Option<String>,
}

impl PointRecord {
    pub fn from_point(p: &SingularPoint) -> PointRecord {
        let field = p.point.field();
        PointRecord {
            orbit: p.orbit,
            residue_degree: p.residue_degree,
            conjugate_index: p.conjugate_index,
            coords: p.point.to_string(),
            field: field.spec_string(),
            modulus: field.modulus_string(),
        }
    }
}

/// Canonical JSON rendering: pretty-printed, trailing newline, byte
/// stable for a given report value.
pub fn render_json<T: Serialize>(report: &T) -> anyhow::Result<String> {
    let mut s = serde_json::to_string_pretty(report)?;
    s.push('\n');
    Ok(s)
}
