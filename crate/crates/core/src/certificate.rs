//! Persisted, re-checkable claims about rainbow-free colorings.
//!
//! Wire format, one JSON object per certificate with fields in this order:
//!
//! ```text
//! {"kind":"witness"|"exhaustion","m":M,"n":N,"r":R,"cells":[[..],..],"nodes":K,"engine":"..."}
//! ```
//!
//! `cells` is present for witnesses only. Certificates about the interval
//! `[n]` add `"domain":"interval"` right after `kind` and use `m = 1`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coloring::{Color, Coloring, ColoringError};
use crate::grid::GridDims;
use crate::space::{SolutionIndex, Space};

/// Engine identifier written into every certificate.
pub const ENGINE_VERSION: &str = concat!("schur-rainbow/", env!("CARGO_PKG_VERSION"));

#[derive(Debug, Error)]
pub enum CertificateError {
    #[error("invalid certificate JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("malformed certificate: {0}")]
    Malformed(String),
    #[error(transparent)]
    Coloring(#[from] ColoringError),
    #[error("witness uses {used} colors but claims r = {r}")]
    NotExact { used: usize, r: usize },
    #[error("witness has a rainbow solution at cells {0:?}")]
    Rainbow([u32; 3]),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CertificateKind {
    /// A rainbow-free exact `r`-coloring exists (and is included).
    Witness,
    /// No rainbow-free exact `r`-coloring exists.
    Exhaustion,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub kind: CertificateKind,
    pub space: Space,
    pub r: usize,
    pub coloring: Option<Coloring>,
    pub nodes: u64,
    pub engine: String,
    /// Set once the claim has been re-checked in this process.
    pub verified: bool,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Wire {
    kind: CertificateKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    domain: Option<String>,
    m: usize,
    n: usize,
    r: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    cells: Option<Vec<Vec<Color>>>,
    nodes: u64,
    engine: String,
}

impl Certificate {
    pub fn witness(space: Space, coloring: Coloring, nodes: u64) -> Self {
        Certificate {
            kind: CertificateKind::Witness,
            space,
            r: coloring.r() as usize,
            coloring: Some(coloring),
            nodes,
            engine: ENGINE_VERSION.to_string(),
            verified: false,
        }
    }

    pub fn exhaustion(space: Space, r: usize, nodes: u64) -> Self {
        Certificate {
            kind: CertificateKind::Exhaustion,
            space,
            r,
            coloring: None,
            nodes,
            engine: ENGINE_VERSION.to_string(),
            verified: false,
        }
    }

    pub fn is_witness(&self) -> bool {
        self.kind == CertificateKind::Witness
    }

    /// Canonical single-line JSON (no trailing newline).
    pub fn to_json(&self) -> String {
        let dims = self.space.storage_dims();
        let wire = Wire {
            kind: self.kind,
            domain: matches!(self.space, Space::Interval(_)).then(|| "interval".to_string()),
            m: dims.m(),
            n: dims.n(),
            r: self.r,
            cells: self.coloring.as_ref().map(Coloring::rows),
            nodes: self.nodes,
            engine: self.engine.clone(),
        };
        serde_json::to_string(&wire).expect("certificate serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, CertificateError> {
        let wire: Wire = serde_json::from_str(text)?;
        let space = match wire.domain.as_deref() {
            None => Space::Grid(GridDims::new(wire.m, wire.n).map_err(ColoringError::from)?),
            Some("interval") if wire.m == 1 && wire.n >= 1 => Space::Interval(wire.n),
            Some(other) => return Err(CertificateError::Malformed(format!("unknown domain `{other}`"))),
        };
        if wire.r == 0 || wire.r > space.cell_count() + 1 {
            return Err(CertificateError::Malformed(format!(
                "color count {} out of range",
                wire.r
            )));
        }
        let coloring = match (wire.kind, wire.cells) {
            (CertificateKind::Witness, Some(rows)) => {
                let c = Coloring::from_rows(&rows, wire.r as Color)?;
                if c.dims() != space.storage_dims() {
                    return Err(CertificateError::Malformed("cells do not match m x n".into()));
                }
                Some(c)
            }
            (CertificateKind::Witness, None) => {
                return Err(CertificateError::Malformed("witness without cells".into()))
            }
            (CertificateKind::Exhaustion, Some(_)) => {
                return Err(CertificateError::Malformed("exhaustion with cells".into()))
            }
            (CertificateKind::Exhaustion, None) => None,
        };
        Ok(Certificate {
            kind: wire.kind,
            space,
            r: wire.r,
            coloring,
            nodes: wire.nodes,
            engine: wire.engine,
            verified: false,
        })
    }

    /// Re-checks a witness: exact with `r` colors and rainbow-free.
    /// Exhaustion claims cannot be checked locally; see `search::verify_certificate`.
    pub fn check_witness(&self) -> Result<(), CertificateError> {
        let c = self
            .coloring
            .as_ref()
            .ok_or_else(|| CertificateError::Malformed("not a witness".into()))?;
        let used = c.distinct_colors().len();
        if used != self.r || c.r() as usize != self.r {
            return Err(CertificateError::NotExact { used, r: self.r });
        }
        if let Some(t) = SolutionIndex::new(self.space).find_rainbow(c.cells()) {
            return Err(CertificateError::Rainbow(t));
        }
        Ok(())
    }
}
