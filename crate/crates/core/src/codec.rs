//! Prefix-free encoding of formulas as bit strings.
//!
//! Step 1 of both generators scans the input for an encoded formula prefix.
//! A `CodeTable` maps template kinds to codewords; because the codeword set
//! is prefix-free and every encoded formula is `codeword ++ parameter bits`,
//! at most one formula can be decoded from any input.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::bits::BitString;

/// The four encodable template kinds. Parameter widths are fixed per kind:
/// `BitJIs1` carries a 3-bit position, `Sigma1Ref` an 8-bit verifier index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum TemplateId {
    #[serde(rename = "BEGINS_WITH_1")]
    BeginsWith1,
    #[serde(rename = "EVEN_LENGTH")]
    EvenLength,
    #[serde(rename = "BIT_J_IS_1")]
    BitJIs1,
    #[serde(rename = "SIGMA1_REF")]
    Sigma1Ref,
}

impl TemplateId {
    /// Number of parameter bits that follow the codeword.
    pub fn param_bits(self) -> usize {
        match self {
            TemplateId::BeginsWith1 | TemplateId::EvenLength => 0,
            TemplateId::BitJIs1 => 3,
            TemplateId::Sigma1Ref => 8,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            TemplateId::BeginsWith1 => "BEGINS_WITH_1",
            TemplateId::EvenLength => "EVEN_LENGTH",
            TemplateId::BitJIs1 => "BIT_J_IS_1",
            TemplateId::Sigma1Ref => "SIGMA1_REF",
        }
    }
}

/// One row of a code table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeEntry {
    pub id: TemplateId,
    pub code: BitString,
    pub param_bits: usize,
}

/// A prefix-free code over the template library.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CodeTable {
    entries: Vec<CodeEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TableError {
    #[error("codeword {first} of {first_id:?} is a prefix of codeword {second} of {second_id:?}")]
    NotPrefixFree {
        first_id: TemplateId,
        first: BitString,
        second_id: TemplateId,
        second: BitString,
    },
    #[error("template {id:?} requires {expected} parameter bits, table declares {declared}")]
    ParamWidthMismatch {
        id: TemplateId,
        expected: usize,
        declared: usize,
    },
    #[error("empty codeword for template {id:?}")]
    EmptyCodeword { id: TemplateId },
    #[error("duplicate entry for template {id:?}")]
    DuplicateTemplate { id: TemplateId },
}

impl CodeTable {
    /// Build a table, rejecting non-prefix-free codeword sets with a
    /// diagnostic naming the conflicting pair.
    pub fn new(entries: Vec<CodeEntry>) -> Result<Self, TableError> {
        let mut seen = BTreeMap::new();
        for e in &entries {
            if e.code.is_empty() {
                return Err(TableError::EmptyCodeword { id: e.id });
            }
            if e.param_bits != e.id.param_bits() {
                return Err(TableError::ParamWidthMismatch {
                    id: e.id,
                    expected: e.id.param_bits(),
                    declared: e.param_bits,
                });
            }
            if seen.insert(e.id, e.code.clone()).is_some() {
                return Err(TableError::DuplicateTemplate { id: e.id });
            }
        }
        for a in &entries {
            for b in &entries {
                if a.id != b.id && a.code.is_prefix_of(&b.code) {
                    return Err(TableError::NotPrefixFree {
                        first_id: a.id,
                        first: a.code.clone(),
                        second_id: b.id,
                        second: b.code.clone(),
                    });
                }
            }
        }
        Ok(CodeTable { entries })
    }

    /// The shipped default table:
    /// `000`=BEGINS_WITH_1, `001`=EVEN_LENGTH, `010`+3=BIT_J_IS_1,
    /// `011`+8=SIGMA1_REF. The `10`/`11` space is unassigned.
    pub fn default_table() -> Self {
        use crate::bits::bits;
        CodeTable::new(vec![
            CodeEntry {
                id: TemplateId::BeginsWith1,
                code: bits("000"),
                param_bits: 0,
            },
            CodeEntry {
                id: TemplateId::EvenLength,
                code: bits("001"),
                param_bits: 0,
            },
            CodeEntry {
                id: TemplateId::BitJIs1,
                code: bits("010"),
                param_bits: 3,
            },
            CodeEntry {
                id: TemplateId::Sigma1Ref,
                code: bits("011"),
                param_bits: 8,
            },
        ])
        .expect("default table is prefix-free")
    }

    pub fn entries(&self) -> &[CodeEntry] {
        &self.entries
    }

    pub fn entry(&self, id: TemplateId) -> Option<&CodeEntry> {
        self.entries.iter().find(|e| e.id == id)
    }

    /// Encode a template reference as `codeword ++ parameter bits`.
    pub fn encode(&self, id: TemplateId, params: &BitString) -> Option<BitString> {
        let entry = self.entry(id)?;
        if params.len() != entry.param_bits {
            return None;
        }
        Some(entry.code.concat(params))
    }

    /// Load from the JSON document
    /// `{ "templates": [ {"id": "...", "code": "000", "param_bits": 0}, ... ] }`.
    pub fn from_json(doc: &str) -> Result<Self, TableLoadError> {
        let raw: RawTable = serde_json::from_str(doc)?;
        Ok(CodeTable::new(raw.templates)?)
    }
}

impl Default for CodeTable {
    fn default() -> Self {
        CodeTable::default_table()
    }
}

#[derive(Debug, thiserror::Error)]
pub enum TableLoadError {
    #[error("malformed code table document: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Table(#[from] TableError),
}

#[derive(Deserialize)]
struct RawTable {
    templates: Vec<CodeEntry>,
}

/// A decoded formula prefix: which template, its raw parameter bits, and the
/// total encoded length `|Φ|` consumed from the input.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DecodedFormula {
    pub id: TemplateId,
    pub params: BitString,
    pub encoded_len: usize,
}

/// Find the unique formula encoding of total length ≤ `max_len` that
/// prefixes `u`. Returns the decoded descriptor and the remainder `u0`
/// with `u = Φ ++ u0`, or `None` when no entry applies.
pub fn decode_formula_prefix(
    u: &BitString,
    max_len: usize,
    table: &CodeTable,
) -> Option<(DecodedFormula, BitString)> {
    for e in table.entries() {
        let total = e.code.len() + e.param_bits;
        if total > max_len || total > u.len() {
            continue;
        }
        if e.code.is_prefix_of(u) {
            let params = u.prefix(total).suffix_from(e.code.len());
            let rest = u.suffix_from(total);
            return Some((
                DecodedFormula {
                    id: e.id,
                    params,
                    encoded_len: total,
                },
                rest,
            ));
        }
    }
    None
}
