//! JSON documents for matrices, presentations and homomorphisms.
//!
//! Integers may be JSON numbers or decimal strings; values outside the range
//! a double represents exactly are written as strings.

use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::abelian::{AbGroupPresentation, AbHom, FinAbGroup};
use super::matrix::IntMatrix;
use crate::error::{Error, Result};

const SAFE_INT: i64 = 1 << 53;

/// An integer in a JSON document.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JsonInt(pub BigInt);

impl Serialize for JsonInt {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(x) if (-SAFE_INT..=SAFE_INT).contains(&x) => s.serialize_i64(x),
            _ => s.serialize_str(&self.0.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for JsonInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        match serde_json::Value::deserialize(d)? {
            serde_json::Value::Number(n) => {
                if let Some(x) = n.as_i64() {
                    Ok(JsonInt(BigInt::from(x)))
                } else if let Some(x) = n.as_u64() {
                    Ok(JsonInt(BigInt::from(x)))
                } else {
                    Err(D::Error::custom(format!("{n} is not an integer")))
                }
            }
            serde_json::Value::String(s) => BigInt::from_str(s.trim())
                .map(JsonInt)
                .map_err(|_| D::Error::custom(format!("{s:?} is not a decimal integer"))),
            other => Err(D::Error::custom(format!(
                "expected an integer, got {other}"
            ))),
        }
    }
}

pub type JsonRows = Vec<Vec<JsonInt>>;

pub fn matrix_to_rows(m: &IntMatrix) -> JsonRows {
    (0..m.rows())
        .map(|i| m.row(i).iter().cloned().map(JsonInt).collect())
        .collect()
}

/// Rows to a matrix of the given width (needed when there are no rows).
pub fn rows_to_matrix(rows: &JsonRows, cols: Option<usize>) -> Result<IntMatrix> {
    let cols = match (cols, rows.first()) {
        (Some(c), _) => c,
        (None, Some(r)) => r.len(),
        (None, None) => 0,
    };
    IntMatrix::from_rows(
        rows.iter()
            .map(|r| r.iter().map(|x| x.0.clone()).collect())
            .collect(),
        cols,
    )
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct PresentationDoc {
    pub generators: usize,
    #[serde(default)]
    pub relations: JsonRows,
}

impl PresentationDoc {
    pub fn to_presentation(&self) -> Result<AbGroupPresentation> {
        AbGroupPresentation::new(
            self.generators,
            rows_to_matrix(&self.relations, Some(self.generators))?,
        )
    }

    pub fn from_presentation(p: &AbGroupPresentation) -> Self {
        Self {
            generators: p.generator_count(),
            relations: matrix_to_rows(p.relations()),
        }
    }
}

/// A group in invariant-factor form, or any presentation that will be
/// canonicalized.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(untagged)]
pub enum GroupDoc {
    Canonical {
        invariant_factors: Vec<JsonInt>,
        #[serde(default)]
        free_rank: usize,
    },
    Presented(PresentationDoc),
}

impl GroupDoc {
    pub fn from_group(g: &FinAbGroup) -> Self {
        GroupDoc::Canonical {
            invariant_factors: g.invariant_factors().iter().cloned().map(JsonInt).collect(),
            free_rank: g.free_rank(),
        }
    }

    /// The canonical group. Invariant-factor documents must already be
    /// canonical so that generator coordinates in accompanying matrices are
    /// unambiguous.
    pub fn to_group(&self) -> Result<FinAbGroup> {
        match self {
            GroupDoc::Canonical {
                invariant_factors,
                free_rank,
            } => {
                let k = invariant_factors.len();
                let d: Vec<BigInt> = invariant_factors.iter().map(|x| x.0.clone()).collect();
                let mut g =
                    AbGroupPresentation::new(k, IntMatrix::diagonal(k, k, &d))?.abelianization();
                if g.invariant_factors() != d.as_slice() {
                    return Err(Error::Input(format!(
                        "invariant factors {:?} are not canonical (expected {g})",
                        d.iter().map(ToString::to_string).collect::<Vec<_>>()
                    )));
                }
                g = g.direct_sum(&FinAbGroup::free(*free_rank));
                Ok(g)
            }
            GroupDoc::Presented(p) => {
                let pres = p.to_presentation()?;
                let g = pres.abelianization();
                // Only presentations already in diagonal canonical shape keep
                // their generator coordinates meaningful.
                if pres.generator_count() != g.generator_count() {
                    return Err(Error::Input(
                        "presented groups used as hom endpoints must already be in canonical form"
                            .into(),
                    ));
                }
                Ok(g)
            }
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct HomDoc {
    pub domain: GroupDoc,
    pub codomain: GroupDoc,
    pub matrix: JsonRows,
}

impl HomDoc {
    pub fn to_hom(&self) -> Result<AbHom> {
        let domain = self.domain.to_group()?;
        let codomain = self.codomain.to_group()?;
        let m = rows_to_matrix(&self.matrix, Some(codomain.generator_count()))?;
        AbHom::new(domain, codomain, m)
    }

    pub fn from_hom(f: &AbHom) -> Self {
        Self {
            domain: GroupDoc::from_group(f.domain()),
            codomain: GroupDoc::from_group(f.codomain()),
            matrix: matrix_to_rows(f.matrix()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integers_as_numbers_or_strings() {
        let doc: PresentationDoc = serde_json::from_str(
            r#"{"generators": 2, "relations": [[12, "0"], ["123456789012345678901234567890", 6]]}"#,
        )
        .unwrap();
        let p = doc.to_presentation().unwrap();
        assert_eq!(p.relations().rows(), 2);
        let back = serde_json::to_string(&PresentationDoc::from_presentation(&p)).unwrap();
        assert!(back.contains(r#""123456789012345678901234567890""#));
        assert!(back.contains("[12,0]"));
    }

    #[test]
    fn rejects_fractional_numbers() {
        let r: std::result::Result<PresentationDoc, _> =
            serde_json::from_str(r#"{"generators": 1, "relations": [[1.5]]}"#);
        assert!(r.is_err());
    }

    #[test]
    fn hom_document() {
        let doc: HomDoc = serde_json::from_str(
            r#"{"domain": {"invariant_factors": [4]},
                "codomain": {"invariant_factors": [2]},
                "matrix": [[1]]}"#,
        )
        .unwrap();
        let f = doc.to_hom().unwrap();
        assert!(f.cokernel().is_trivial());
    }

    #[test]
    fn non_canonical_factors_rejected() {
        let doc: GroupDoc = serde_json::from_str(r#"{"invariant_factors": [4, 2]}"#).unwrap();
        assert!(doc.to_group().is_err());
    }

    #[test]
    fn empty_relations_need_generator_count() {
        let doc: PresentationDoc = serde_json::from_str(r#"{"generators": 3}"#).unwrap();
        assert_eq!(
            doc.to_presentation().unwrap().abelianization(),
            FinAbGroup::free(3)
        );
    }
}
