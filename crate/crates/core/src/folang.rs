//! Templates with one free string variable, and the sentences they induce.
//!
//! A template Φ is a decidable predicate on bit strings drawn from a small
//! library: three analytic kinds whose closure behaviour is decidable
//! exactly, a Σ1 kind whose semantics is witness search against a verifier,
//! and a desk-only dynamic kind used by the incompleteness demo. Pairing a
//! template with a word w yields the sentence Φ^w: all sufficiently large x
//! satisfying Φ avoid the prefix w ("sufficiently large" read in the
//! length-then-lex order, i.e. all but finitely many).

use std::fmt;
use std::sync::Arc;

use serde::{Serialize, Serializer};

use crate::bits::{lex_words, BitString};
use crate::codec::{CodeTable, DecodedFormula, TemplateId};
use crate::sigma1::{EvalError, Sigma1Verifier, StepCounter, TemplateLibrary};

/// Semantics of a template.
#[derive(Clone)]
pub enum TemplateKind {
    /// x begins with 1.
    BeginsWith1,
    /// |x| is even.
    EvenLength,
    /// |x| > j and bit j of x is 1.
    BitJIs1 { j: usize },
    /// ∃ witness y, |y| ≤ bound(|x|), accepted by the verifier.
    Sigma1Ref {
        index: usize,
        verifier: Arc<Sigma1Verifier>,
    },
    /// Desk-only escape hatch: a named decidable predicate supplied as a
    /// closure. Not encodable in any code table.
    Dynamic {
        name: String,
        pred: Arc<dyn Fn(&BitString) -> bool + Send + Sync>,
    },
}

impl fmt::Debug for TemplateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TemplateKind::BeginsWith1 => write!(f, "BeginsWith1"),
            TemplateKind::EvenLength => write!(f, "EvenLength"),
            TemplateKind::BitJIs1 { j } => write!(f, "BitJIs1 {{ j: {j} }}"),
            TemplateKind::Sigma1Ref { index, verifier } => {
                write!(f, "Sigma1Ref {{ index: {index}, verifier: {} }}", verifier.name)
            }
            TemplateKind::Dynamic { name, .. } => write!(f, "Dynamic {{ name: {name} }}"),
        }
    }
}

impl PartialEq for TemplateKind {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (TemplateKind::BeginsWith1, TemplateKind::BeginsWith1) => true,
            (TemplateKind::EvenLength, TemplateKind::EvenLength) => true,
            (TemplateKind::BitJIs1 { j: a }, TemplateKind::BitJIs1 { j: b }) => a == b,
            (
                TemplateKind::Sigma1Ref { index: a, verifier: va },
                TemplateKind::Sigma1Ref { index: b, verifier: vb },
            ) => a == b && va == vb,
            (TemplateKind::Dynamic { name: a, .. }, TemplateKind::Dynamic { name: b, .. }) => {
                a == b
            }
            _ => false,
        }
    }
}
impl Eq for TemplateKind {}

/// A template together with the length of its encoding, which drives the
/// w-width c := |Φ|+1 of the generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TemplateDef {
    kind: TemplateKind,
    encoded_len: usize,
}

impl TemplateDef {
    pub fn new(kind: TemplateKind, encoded_len: usize) -> Self {
        TemplateDef { kind, encoded_len }
    }

    /// Resolve a decoded formula prefix against the verifier library.
    /// A `SIGMA1_REF` whose index is outside the library does not resolve,
    /// which step 1 of the generators treats as "no such Φ exists".
    pub fn resolve(decoded: &DecodedFormula, library: &TemplateLibrary) -> Option<TemplateDef> {
        let kind = match decoded.id {
            TemplateId::BeginsWith1 => TemplateKind::BeginsWith1,
            TemplateId::EvenLength => TemplateKind::EvenLength,
            TemplateId::BitJIs1 => TemplateKind::BitJIs1 {
                j: decoded.params.to_index()? as usize,
            },
            TemplateId::Sigma1Ref => {
                let index = decoded.params.to_index()? as usize;
                let verifier = library.get(index)?;
                TemplateKind::Sigma1Ref { index, verifier }
            }
        };
        Some(TemplateDef {
            kind,
            encoded_len: decoded.encoded_len,
        })
    }

    /// Encode this template through a code table, when it is encodable.
    pub fn encode(&self, table: &CodeTable) -> Option<BitString> {
        let (id, params) = match &self.kind {
            TemplateKind::BeginsWith1 => (TemplateId::BeginsWith1, BitString::new()),
            TemplateKind::EvenLength => (TemplateId::EvenLength, BitString::new()),
            TemplateKind::BitJIs1 { j } => {
                (TemplateId::BitJIs1, BitString::from_index(*j as u64, 3))
            }
            TemplateKind::Sigma1Ref { index, .. } => {
                (TemplateId::Sigma1Ref, BitString::from_index(*index as u64, 8))
            }
            TemplateKind::Dynamic { .. } => return None,
        };
        table.encode(id, &params)
    }

    pub fn kind(&self) -> &TemplateKind {
        &self.kind
    }

    /// |Φ|: the encoded length (nominal for dynamic templates).
    pub fn encoded_len(&self) -> usize {
        self.encoded_len
    }

    /// Analytic templates admit exact closure verdicts.
    pub fn is_analytic(&self) -> bool {
        matches!(
            self.kind,
            TemplateKind::BeginsWith1 | TemplateKind::EvenLength | TemplateKind::BitJIs1 { .. }
        )
    }

    /// Eligible for propositional translation (step 1 of the propositional
    /// generator). Dynamic templates are not.
    pub fn translatable(&self) -> bool {
        !matches!(self.kind, TemplateKind::Dynamic { .. })
    }

    // Shipped-template constructors, with the default-table encoded lengths.

    pub fn begins_with_1() -> Self {
        TemplateDef::new(TemplateKind::BeginsWith1, 3)
    }

    pub fn even_length() -> Self {
        TemplateDef::new(TemplateKind::EvenLength, 3)
    }

    pub fn bit_j_is_1(j: usize) -> Self {
        assert!(j < 8, "bit position parameter is 3 bits");
        TemplateDef::new(TemplateKind::BitJIs1 { j }, 6)
    }

    pub fn sigma1(index: usize, library: &TemplateLibrary) -> Option<Self> {
        let verifier = library.get(index)?;
        Some(TemplateDef::new(
            TemplateKind::Sigma1Ref { index, verifier },
            11,
        ))
    }

    pub fn dynamic(
        name: impl Into<String>,
        nominal_len: usize,
        pred: impl Fn(&BitString) -> bool + Send + Sync + 'static,
    ) -> Self {
        TemplateDef::new(
            TemplateKind::Dynamic {
                name: name.into(),
                pred: Arc::new(pred),
            },
            nominal_len,
        )
    }
}

impl fmt::Display for TemplateDef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            TemplateKind::BeginsWith1 => write!(f, "BEGINS_WITH_1"),
            TemplateKind::EvenLength => write!(f, "EVEN_LENGTH"),
            TemplateKind::BitJIs1 { j } => write!(f, "BIT_J_IS_1[j={j}]"),
            TemplateKind::Sigma1Ref { verifier, .. } => {
                write!(f, "SIGMA1_REF[{}]", verifier.name)
            }
            TemplateKind::Dynamic { name, .. } => write!(f, "DYNAMIC[{name}]"),
        }
    }
}

impl Serialize for TemplateDef {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

/// Truth of Φ(x) under the template's semantics.
pub fn eval_phi(phi: &TemplateDef, x: &BitString) -> Result<bool, EvalError> {
    let mut counter = StepCounter::default();
    eval_phi_counted(phi, x, &mut counter)
}

/// As `eval_phi`, accumulating counted basic operations.
pub fn eval_phi_counted(
    phi: &TemplateDef,
    x: &BitString,
    counter: &mut StepCounter,
) -> Result<bool, EvalError> {
    match &phi.kind {
        TemplateKind::BeginsWith1 => {
            counter.add(1);
            Ok(x.bit(0) == Some(true))
        }
        TemplateKind::EvenLength => {
            counter.add(1);
            Ok(x.len() % 2 == 0)
        }
        TemplateKind::BitJIs1 { j } => {
            counter.add(1);
            Ok(x.bit(*j) == Some(true))
        }
        TemplateKind::Sigma1Ref { verifier, .. } => verifier.exists_witness(x, counter),
        TemplateKind::Dynamic { pred, .. } => {
            counter.add(1);
            Ok(pred(x))
        }
    }
}

/// The sentence Φ^w: every sufficiently large x satisfying Φ lacks prefix w.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SentencePhiW {
    pub phi: TemplateDef,
    pub w: BitString,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SentenceError {
    #[error("w must be nonempty")]
    EmptyW,
    #[error("horizon {horizon} is below |w| = {w_len}")]
    HorizonBelowW { horizon: usize, w_len: usize },
}

/// Pure constructor for Φ^w; rejects empty w.
pub fn build_phi_w(phi: TemplateDef, w: BitString) -> Result<SentencePhiW, SentenceError> {
    if w.is_empty() {
        return Err(SentenceError::EmptyW);
    }
    Ok(SentencePhiW { phi, w })
}

/// Verdict of the truth oracle. Analytic verdicts are exact; the horizon
/// verdicts are labeled as such and never reported as exact.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum TruthVerdict {
    TrueAnalytic,
    FalseAnalytic,
    TrueUpToHorizon,
    FalseWitnessed,
}

impl TruthVerdict {
    pub fn is_false(self) -> bool {
        matches!(self, TruthVerdict::FalseAnalytic | TruthVerdict::FalseWitnessed)
    }

    pub fn is_exact(self) -> bool {
        matches!(self, TruthVerdict::TrueAnalytic | TruthVerdict::FalseAnalytic)
    }
}

/// Decide Φ^w, exactly for analytic templates and up to `horizon` otherwise.
///
/// For the analytic kinds the closure question "do infinitely many members
/// of Φ carry prefix w" is decidable outright. For Σ1 and dynamic templates
/// the oracle scans all x of length exactly `horizon`: a member with prefix
/// w at the farthest tested length witnesses falsity beyond every shorter
/// length (FALSE_WITNESSED); absence yields TRUE_UP_TO_HORIZON.
pub fn phi_w_truth(s: &SentencePhiW, horizon: usize) -> Result<TruthVerdict, TruthError> {
    let w = &s.w;
    if horizon < w.len() {
        return Err(TruthError::Sentence(SentenceError::HorizonBelowW {
            horizon,
            w_len: w.len(),
        }));
    }
    match &s.phi.kind {
        TemplateKind::BeginsWith1 => Ok(if w.bit(0) == Some(true) {
            // every extension of w begins with 1: infinitely many members
            TruthVerdict::FalseAnalytic
        } else {
            // no string with prefix w begins with 1
            TruthVerdict::TrueAnalytic
        }),
        TemplateKind::EvenLength => {
            // w extends to even length arbitrarily far out
            Ok(TruthVerdict::FalseAnalytic)
        }
        TemplateKind::BitJIs1 { j } => Ok(if *j < w.len() {
            if w.bit(*j) == Some(true) {
                TruthVerdict::FalseAnalytic
            } else {
                TruthVerdict::TrueAnalytic
            }
        } else {
            // bit j is free in every sufficiently long extension of w
            TruthVerdict::FalseAnalytic
        }),
        TemplateKind::Sigma1Ref { .. } | TemplateKind::Dynamic { .. } => {
            let mut counter = StepCounter::default();
            for tail in lex_words(horizon - w.len()) {
                let x = w.concat(&tail);
                if eval_phi_counted(&s.phi, &x, &mut counter)? {
                    return Ok(TruthVerdict::FalseWitnessed);
                }
            }
            Ok(TruthVerdict::TrueUpToHorizon)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TruthError {
    #[error(transparent)]
    Sentence(#[from] SentenceError),
    #[error(transparent)]
    Eval(#[from] EvalError),
}
