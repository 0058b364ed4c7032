//! The JSON model-file format and its mapping onto the domain types.
//!
//! A model file holds the double-point lists of both components, optional
//! raw Whitney-disk records, optional constructed-disk witnesses (with
//! polynomials in the textual `exponent:coefficient` form), and free-form
//! metadata. Unknown fields are rejected.

use std::fmt;

use serde::{Deserialize, Serialize};

use linkhom_core::gf2::Gf2;
use linkhom_core::laurent::LaurentPoly;
use linkhom_core::linkmap::{
    ConstructedDiskWitness, DoublePoint, LinkMapModel, WhitneyDiskDatum, WitnessHandle,
};
use linkhom_core::wall::Sign;

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Metadata {
    #[serde(default)]
    pub description: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub not_in_span_resamples: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointRecord {
    pub sign: i64,
    pub n: i64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiskRecord {
    pub n: i64,
    pub points: Vec<u8>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HandleRecord {
    pub m_bit: u8,
    pub pair_count: u64,
    pub pair_bits: Vec<(u8, u8)>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessRecord {
    pub n: i64,
    pub handles: Vec<HandleRecord>,
    pub u: String,
    pub q: String,
}

/// The on-disk shape of a model file.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelFile {
    #[serde(default)]
    pub metadata: Metadata,
    #[serde(default)]
    pub plus_double_points: Vec<PointRecord>,
    #[serde(default)]
    pub minus_double_points: Vec<PointRecord>,
    #[serde(default)]
    pub disks: Vec<DiskRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witnesses: Option<Vec<WitnessRecord>>,
}

/// Model-file rejection: malformed JSON with its position, or a value that
/// fails the schema, named by field.
#[derive(Clone, Debug, PartialEq)]
pub enum ModelError {
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    Schema {
        field: &'static str,
        detail: String,
    },
}

impl fmt::Display for ModelError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModelError::Parse {
                line,
                column,
                message,
            } => write!(f, "parse error at line {line} column {column}: {message}"),
            ModelError::Schema { field, detail } => {
                write!(f, "schema error in field \"{field}\": {detail}")
            }
        }
    }
}

impl std::error::Error for ModelError {}

/// Parse UTF-8 text into a model file, rejecting unknown fields.
pub fn parse_model(text: &str) -> Result<ModelFile, ModelError> {
    serde_json::from_str(text).map_err(|e| ModelError::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

/// Canonical serialization: pretty JSON with a trailing newline, polynomials
/// in ascending-exponent pair form.
pub fn emit_model(file: &ModelFile) -> String {
    let mut out = serde_json::to_string_pretty(file).expect("model files always serialize");
    out.push('\n');
    out
}

fn bit(field: &'static str, value: u8) -> Result<Gf2, ModelError> {
    match value {
        0 => Ok(Gf2::ZERO),
        1 => Ok(Gf2::ONE),
        other => Err(ModelError::Schema {
            field,
            detail: format!("expected 0 or 1, got {other}"),
        }),
    }
}

fn point(record: &PointRecord) -> Result<DoublePoint, ModelError> {
    let sign = Sign::from_int(record.sign).ok_or_else(|| ModelError::Schema {
        field: "sign",
        detail: format!("expected 1 or -1, got {}", record.sign),
    })?;
    Ok(DoublePoint::new(sign, record.n))
}

fn nonneg(field: &'static str, n: i64) -> Result<u32, ModelError> {
    u32::try_from(n).map_err(|_| ModelError::Schema {
        field,
        detail: format!("expected a non-negative integer, got {n}"),
    })
}

fn poly(field: &'static str, text: &str) -> Result<LaurentPoly, ModelError> {
    text.parse().map_err(|e| ModelError::Schema {
        field,
        detail: format!("bad polynomial: {e}"),
    })
}

/// The validated domain content of a model file.
#[derive(Clone, Debug)]
pub struct DomainModel {
    pub metadata: Metadata,
    pub model: LinkMapModel,
    pub disks: Vec<WhitneyDiskDatum>,
    pub witnesses: Option<Vec<ConstructedDiskWitness>>,
}

/// Validate field values and build the domain types.
pub fn to_domain(file: &ModelFile) -> Result<DomainModel, ModelError> {
    let plus = file
        .plus_double_points
        .iter()
        .map(point)
        .collect::<Result<Vec<_>, _>>()?;
    let minus = file
        .minus_double_points
        .iter()
        .map(point)
        .collect::<Result<Vec<_>, _>>()?;

    let mut disks = Vec::with_capacity(file.disks.len());
    for d in &file.disks {
        let n = nonneg("n", d.n)?;
        let points = d
            .points
            .iter()
            .map(|&b| bit("points", b))
            .collect::<Result<Vec<_>, _>>()?;
        disks.push(WhitneyDiskDatum::new(n, points));
    }

    let witnesses = match &file.witnesses {
        None => None,
        Some(records) => {
            let mut out = Vec::with_capacity(records.len());
            for w in records {
                let n = nonneg("n", w.n)?;
                let mut handles = Vec::with_capacity(w.handles.len());
                for h in &w.handles {
                    let pair_bits = h
                        .pair_bits
                        .iter()
                        .map(|&(a, b)| Ok((bit("pair_bits", a)?, bit("pair_bits", b)?)))
                        .collect::<Result<Vec<_>, ModelError>>()?;
                    handles.push(WitnessHandle {
                        m_bit: bit("m_bit", h.m_bit)?,
                        pair_count: h.pair_count as usize,
                        pair_bits,
                    });
                }
                out.push(ConstructedDiskWitness {
                    n,
                    handles,
                    u: poly("u", &w.u)?,
                    q: poly("q", &w.q)?,
                });
            }
            Some(out)
        }
    };

    Ok(DomainModel {
        metadata: file.metadata.clone(),
        model: LinkMapModel::new(plus, minus),
        disks,
        witnesses,
    })
}

/// Rebuild the canonical file form of validated domain content.
pub fn from_domain(domain: &DomainModel) -> ModelFile {
    let point_record = |p: &DoublePoint| PointRecord {
        sign: p.sign.as_int(),
        n: p.n,
    };
    ModelFile {
        metadata: domain.metadata.clone(),
        plus_double_points: domain.model.plus_points.iter().map(point_record).collect(),
        minus_double_points: domain.model.minus_points.iter().map(point_record).collect(),
        disks: domain
            .disks
            .iter()
            .map(|d| DiskRecord {
                n: d.n as i64,
                points: d.points.iter().map(|b| b.as_bit()).collect(),
            })
            .collect(),
        witnesses: domain.witnesses.as_ref().map(|ws| {
            ws.iter()
                .map(|w| WitnessRecord {
                    n: w.n as i64,
                    handles: w
                        .handles
                        .iter()
                        .map(|h| HandleRecord {
                            m_bit: h.m_bit.as_bit(),
                            pair_count: h.pair_count as u64,
                            pair_bits: h
                                .pair_bits
                                .iter()
                                .map(|&(a, b)| (a.as_bit(), b.as_bit()))
                                .collect(),
                        })
                        .collect(),
                    u: w.u.to_string(),
                    q: w.q.to_string(),
                })
                .collect()
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_file_is_the_empty_model() {
        let file = parse_model("{}").unwrap();
        let domain = to_domain(&file).unwrap();
        assert!(domain.model.plus_points.is_empty());
        assert!(domain.model.minus_points.is_empty());
        assert!(domain.disks.is_empty());
        assert!(domain.witnesses.is_none());
    }

    #[test]
    fn bad_sign_is_a_schema_error() {
        let file = parse_model(r#"{"plus_double_points": [{"sign": 2, "n": 1}]}"#).unwrap();
        match to_domain(&file).unwrap_err() {
            ModelError::Schema { field, .. } => assert_eq!(field, "sign"),
            other => panic!("expected a schema error, got {other:?}"),
        }
    }

    #[test]
    fn unknown_fields_are_rejected() {
        let err = parse_model(r#"{"surprise": 1}"#).unwrap_err();
        match err {
            ModelError::Parse { message, .. } => assert!(message.contains("surprise")),
            other => panic!("expected a parse error, got {other:?}"),
        }
    }

    #[test]
    fn emit_parse_is_stable() {
        let text = r#"{
            "metadata": {"description": "hand-written"},
            "plus_double_points": [{"sign": 1, "n": 2}, {"sign": -1, "n": 0}],
            "minus_double_points": [{"sign": 1, "n": -2}, {"sign": -1, "n": 2}],
            "disks": [{"n": 2, "points": [1, 0]}],
            "witnesses": [{"n": 2,
                           "handles": [{"m_bit": 1, "pair_count": 1, "pair_bits": [[1, 0]]}],
                           "u": "0:1",
                           "q": "1:1,0:1"}]
        }"#;
        let canonical = emit_model(&from_domain(
            &to_domain(&parse_model(text).unwrap()).unwrap(),
        ));
        let again = emit_model(&from_domain(
            &to_domain(&parse_model(&canonical).unwrap()).unwrap(),
        ));
        assert_eq!(canonical, again);
        // the q polynomial comes back in ascending-exponent order
        assert!(canonical.contains("\"q\": \"0:1, 1:1\""));
    }
}
