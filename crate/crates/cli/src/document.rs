//! JSON documents read and written by the command-line tool.
//!
//! Complex numbers are `[re, im]` pairs and spins are given as `two_s`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use stellar::grassmann::{KFrame, KPlane};
use stellar::linalg::{c64, CMat, C64};
use stellar::majorana::Constellation;
use stellar::spin::{SpinLabel, SpinState};

use crate::error::CliError;

pub const SCHEMA: &str = "stellar/1";

pub type Complex = [f64; 2];

pub fn to_pair(z: C64) -> Complex {
    [z.re, z.im]
}

pub fn from_pair(p: Complex) -> C64 {
    c64(p[0], p[1])
}

fn schema() -> String {
    SCHEMA.to_string()
}

fn check_schema(found: &str) -> Result<(), CliError> {
    if found != SCHEMA {
        return Err(CliError::Parse(format!(
            "unsupported schema {found:?}, expected {SCHEMA:?}"
        )));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StateDocument {
    #[serde(default = "schema")]
    pub schema: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub two_s: u32,
    pub amplitudes: Vec<Complex>,
}

impl StateDocument {
    pub fn from_state(label: Option<String>, psi: &SpinState) -> Self {
        Self {
            schema: schema(),
            label,
            two_s: psi.spin().two_s(),
            amplitudes: psi.coeffs().iter().map(|&z| to_pair(z)).collect(),
        }
    }

    pub fn to_state(&self) -> Result<SpinState, CliError> {
        check_schema(&self.schema)?;
        let dim = self.two_s as usize + 1;
        if self.amplitudes.len() != dim {
            return Err(CliError::Shape(format!(
                "two_s = {} needs {dim} amplitudes, found {}",
                self.two_s,
                self.amplitudes.len()
            )));
        }
        let amps: Vec<C64> = self.amplitudes.iter().map(|&p| from_pair(p)).collect();
        Ok(SpinState::from_slice(&amps)?)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PlaneDocument {
    #[serde(default = "schema")]
    pub schema: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub two_s: u32,
    pub k: usize,
    pub rows: Vec<Vec<Complex>>,
}

impl PlaneDocument {
    pub fn from_frame(label: Option<String>, frame: &KFrame) -> Self {
        let rows = frame
            .rows()
            .row_iter()
            .map(|r| r.iter().map(|&z| to_pair(z)).collect())
            .collect();
        Self {
            schema: schema(),
            label,
            two_s: frame.spin().two_s(),
            k: frame.k(),
            rows,
        }
    }

    pub fn to_frame(&self) -> Result<KFrame, CliError> {
        check_schema(&self.schema)?;
        let dim = self.two_s as usize + 1;
        if self.k == 0 || self.k > dim {
            return Err(CliError::Shape(format!("k = {} outside 1..={dim}", self.k)));
        }
        if self.rows.len() != self.k || self.rows.iter().any(|r| r.len() != dim) {
            return Err(CliError::Shape(format!(
                "rows must form a {}x{dim} array",
                self.k
            )));
        }
        let rows = CMat::from_fn(self.k, dim, |r, c| from_pair(self.rows[r][c]));
        Ok(KFrame::new(SpinLabel::from_twice(self.two_s), rows)?)
    }

    pub fn to_plane(&self) -> Result<KPlane, CliError> {
        Ok(KPlane::from_frame(&self.to_frame()?)?)
    }
}

/// SHA-256 of the compact serialisation of a parsed input document.
pub fn input_hash<T: Serialize>(doc: &T) -> String {
    let bytes = serde_json::to_vec(doc).expect("documents serialise");
    hex::encode(Sha256::digest(bytes))
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Metadata {
    pub source_sha256: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub route: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default)]
    pub tolerances: BTreeMap<String, f64>,
}

impl Metadata {
    pub fn new(source_sha256: String) -> Self {
        Self {
            source_sha256,
            ..Self::default()
        }
    }

    pub fn with_route(mut self, route: impl Into<String>) -> Self {
        self.route = Some(route.into());
        self
    }

    pub fn with_tolerance(mut self, name: &str, value: f64) -> Self {
        self.tolerances.insert(name.to_string(), value);
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct StarRecord {
    pub theta: f64,
    pub phi: f64,
    pub multiplicity: u32,
}

pub fn star_records(c: &Constellation) -> Vec<StarRecord> {
    c.stars()
        .iter()
        .map(|s| {
            let (theta, phi) = s.spherical();
            StarRecord {
                theta,
                phi,
                multiplicity: s.multiplicity,
            }
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConstellationKind {
    Majorana,
    Principal,
    Component,
    Spectator,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConstellationDocument {
    pub schema: String,
    pub kind: ConstellationKind,
    /// `2j` of the state whose constellation this is.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub two_j: Option<u32>,
    /// Nominal degree of a principal polynomial.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree: Option<u32>,
    pub stars: Vec<StarRecord>,
    /// Ascending coefficients of the polynomial whose roots are the stars.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coefficients: Option<Vec<Complex>>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub degenerate: bool,
    pub metadata: Metadata,
}

impl ConstellationDocument {
    pub fn new(kind: ConstellationKind, c: &Constellation, metadata: Metadata) -> Self {
        Self {
            schema: schema(),
            kind,
            two_j: None,
            degree: None,
            stars: star_records(c),
            coefficients: None,
            degenerate: false,
            metadata,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComponentRecord {
    pub two_j: u32,
    pub copy: usize,
    pub norm: f64,
    pub amplitudes: Vec<Complex>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DecompositionDocument {
    pub schema: String,
    pub two_s: u32,
    pub k: usize,
    pub components: Vec<ComponentRecord>,
    pub metadata: Metadata,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MultiComponentRecord {
    pub two_j: u32,
    pub copy: usize,
    pub norm: f64,
    /// `gauged`, `scalar`, `absent` or `not_applicable`.
    pub status: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub z: Option<Complex>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stars: Option<Vec<StarRecord>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MulticonDocument {
    pub schema: String,
    pub two_s: u32,
    pub k: usize,
    pub complete: bool,
    pub components: Vec<MultiComponentRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spectator_state: Option<Vec<Complex>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spectator: Option<Vec<StarRecord>>,
    pub metadata: Metadata,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiplicityEntry {
    pub two_j: u32,
    pub multiplicity: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiplicityDocument {
    pub schema: String,
    pub two_s: u32,
    pub k: usize,
    pub method: String,
    pub entries: Vec<MultiplicityEntry>,
    /// `sum (2j + 1) m_j`, decimal.
    pub dimension: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SchubertDocument {
    pub schema: String,
    pub two_s: u32,
    pub k: usize,
    /// Decimal, since the counts outgrow machine integers.
    pub count: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub name: String,
    pub passed: bool,
    pub value: f64,
    pub tolerance: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub schema: String,
    pub passed: bool,
    pub checks: Vec<CheckRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spectator_state: Option<Vec<Complex>>,
    pub metadata: Metadata,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ErrorBody {
    pub code: String,
    pub exit_code: i32,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ErrorDocument {
    pub schema: String,
    pub error: ErrorBody,
}

impl ErrorDocument {
    pub fn from_error(e: &CliError) -> Self {
        Self {
            schema: schema(),
            error: ErrorBody {
                code: e.code().to_string(),
                exit_code: e.exit_code(),
                message: e.to_string(),
            },
        }
    }
}
