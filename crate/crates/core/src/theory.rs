//! Sound provability backends with budgeted proof search.
//!
//! A backend answers `verify(sentence, proof)` and never accepts a proof of
//! a false sentence; `search_proof` sweeps candidate payloads in
//! length-then-lex order under a size bound. The reference backend CERT
//! accepts machine-checkable closure certificates (re-executed, never
//! trusted); EMPTY proves nothing and exercises the all-proofs-absent path.
//!
//! The certificate wire format is documented bit-exactly in
//! `docs/cert-format.md`.

use serde::Serialize;

use crate::bits::{lex_words, BitString};
use crate::folang::{phi_w_truth, SentencePhiW, TemplateKind, TruthError};
use crate::sigma1::StepCounter;

/// A proof payload; its size is its length in bits.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Proof {
    pub payload: BitString,
}

impl Proof {
    pub fn new(payload: BitString) -> Self {
        Proof { payload }
    }

    pub fn size(&self) -> usize {
        self.payload.len()
    }
}

/// A sound provability oracle. `verify` must be total (malformed
/// certificates reject, never raise) and deterministic.
pub trait TheoryBackend: Send + Sync {
    fn name(&self) -> &'static str;

    /// Re-execute the certificate against the sentence.
    fn verify_counted(&self, s: &SentencePhiW, proof: &Proof, counter: &mut StepCounter) -> bool;

    fn verify(&self, s: &SentencePhiW, proof: &Proof) -> bool {
        let mut counter = StepCounter::default();
        self.verify_counted(s, proof, &mut counter)
    }

    /// No payload longer than this ever verifies; candidate enumeration
    /// stops here. The claim is a tested property of each backend.
    fn max_certificate_len(&self) -> usize;
}

/// Certificate rule tags, first two payload bits.
const TAG_RULE_A: (bool, bool) = (false, false);
const TAG_RULE_B: (bool, bool) = (false, true);
const TAG_RULE_C: (bool, bool) = (true, false);

/// Total payload lengths per rule: tag ++ fixed-width fields.
pub const RULE_A_LEN: usize = 2;
pub const RULE_B_LEN: usize = 2 + 3;
pub const RULE_C_LEN: usize = 2 + 6;

/// Rule-c re-execution resource rule: exhaustion span is capped.
pub const RULE_C_MAX_SPAN: usize = 16;

/// The reference backend: proofs are closure certificates.
///
/// Rule (a): the template is BEGINS_WITH_1 and w starts with 0, so no
/// member of Φ can carry prefix w.
/// Rule (b): the template is BIT_J_IS_1 with j inside w and w[j] = 0.
/// Rule (c): the template is SIGMA1_REF and an exhaustion bound B is given
/// such that |w| ≤ B, the checker's x-window fits below B, its y-window
/// fits below witness_bound(B), and re-execution confirms no x with prefix
/// w and |x| ≤ B satisfies Φ. Window-boundedness of checkers then rules out
/// longer members as well, so acceptance implies the sentence outright.
#[derive(Debug, Clone, Copy, Default)]
pub struct CertBackend;

impl CertBackend {
    fn check_rule_a(s: &SentencePhiW) -> bool {
        matches!(s.phi.kind(), TemplateKind::BeginsWith1) && s.w.bit(0) == Some(false)
    }

    fn check_rule_b(s: &SentencePhiW, claimed_j: usize) -> bool {
        match s.phi.kind() {
            TemplateKind::BitJIs1 { j } => {
                *j == claimed_j && s.w.len() > *j && s.w.bit(*j) == Some(false)
            }
            _ => false,
        }
    }

    fn check_rule_c(s: &SentencePhiW, bound_b: usize, counter: &mut StepCounter) -> bool {
        let TemplateKind::Sigma1Ref { verifier, .. } = s.phi.kind() else {
            return false;
        };
        let w = &s.w;
        if bound_b < w.len() || bound_b - w.len() > RULE_C_MAX_SPAN {
            return false;
        }
        if verifier.program.x_window() > bound_b {
            return false;
        }
        let wy = verifier.program.y_window() as u64;
        if wy > verifier.witness_bound.eval(bound_b as u64) {
            return false;
        }
        // Exhaustion claim: no x with prefix w and |x| <= B satisfies Φ.
        for len in w.len()..=bound_b {
            for tail in lex_words(len - w.len()) {
                let x = w.concat(&tail);
                counter.add(1);
                match verifier.exists_witness(&x, counter) {
                    Ok(true) => return false,
                    Ok(false) => {}
                    // a misconfigured verifier cannot certify anything
                    Err(_) => return false,
                }
            }
        }
        true
    }
}

impl TheoryBackend for CertBackend {
    fn name(&self) -> &'static str {
        "cert"
    }

    fn verify_counted(&self, s: &SentencePhiW, proof: &Proof, counter: &mut StepCounter) -> bool {
        counter.add(1);
        let p = &proof.payload;
        if p.len() < 2 {
            return false;
        }
        let tag = (p.bit(0).unwrap(), p.bit(1).unwrap());
        if tag == TAG_RULE_A {
            p.len() == RULE_A_LEN && Self::check_rule_a(s)
        } else if tag == TAG_RULE_B {
            if p.len() != RULE_B_LEN {
                return false;
            }
            let j = p.suffix_from(2).to_index().expect("3 bits") as usize;
            Self::check_rule_b(s, j)
        } else if tag == TAG_RULE_C {
            if p.len() != RULE_C_LEN {
                return false;
            }
            let b = p.suffix_from(2).to_index().expect("6 bits") as usize;
            Self::check_rule_c(s, b, counter)
        } else {
            false
        }
    }

    fn max_certificate_len(&self) -> usize {
        RULE_C_LEN
    }
}

/// Proves nothing.
#[derive(Debug, Clone, Copy, Default)]
pub struct EmptyBackend;

impl TheoryBackend for EmptyBackend {
    fn name(&self) -> &'static str {
        "empty"
    }

    fn verify_counted(&self, _s: &SentencePhiW, _proof: &Proof, counter: &mut StepCounter) -> bool {
        counter.add(1);
        false
    }

    fn max_certificate_len(&self) -> usize {
        0
    }
}

/// Enumerate candidate payloads in length-then-lex order up to `size_bound`
/// bits and return the first that verifies. The sweep stops at the
/// backend's declared maximal certificate length, beyond which nothing
/// verifies.
pub fn search_proof(
    backend: &dyn TheoryBackend,
    s: &SentencePhiW,
    size_bound: usize,
) -> Option<Proof> {
    let mut counter = StepCounter::default();
    search_proof_counted(backend, s, size_bound, &mut counter)
}

pub fn search_proof_counted(
    backend: &dyn TheoryBackend,
    s: &SentencePhiW,
    size_bound: usize,
    counter: &mut StepCounter,
) -> Option<Proof> {
    let cap = size_bound.min(backend.max_certificate_len());
    for len in 0..=cap {
        for payload in lex_words(len) {
            let proof = Proof::new(payload);
            if backend.verify_counted(s, &proof, counter) {
                return Some(proof);
            }
        }
    }
    None
}

/// One audited sample: the sentence, its analytic verdict, and whether a
/// proof was found. A violation is a proof of a false sentence.
#[derive(Debug, Clone, Serialize)]
pub struct AuditEntry {
    pub sentence: SentencePhiW,
    pub verdict: crate::folang::TruthVerdict,
    pub proof: Option<Proof>,
    pub violation: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct AuditReport {
    pub backend: String,
    pub size_bound: usize,
    pub checked: usize,
    pub proofs_found: usize,
    pub entries: Vec<AuditEntry>,
}

impl AuditReport {
    pub fn violations(&self) -> Vec<&AuditEntry> {
        self.entries.iter().filter(|e| e.violation).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AuditError {
    #[error("soundness audit samples must use analytic templates, got {0}")]
    NonAnalyticSample(String),
    #[error(transparent)]
    Truth(#[from] TruthError),
}

/// For each analytic sample, assert that a successful proof search never
/// coincides with an analytically false sentence.
pub fn soundness_audit(
    backend: &dyn TheoryBackend,
    samples: &[SentencePhiW],
    size_bound: usize,
) -> Result<AuditReport, AuditError> {
    let mut entries = Vec::with_capacity(samples.len());
    let mut proofs_found = 0;
    for s in samples {
        if !s.phi.is_analytic() {
            return Err(AuditError::NonAnalyticSample(s.phi.to_string()));
        }
        let verdict = phi_w_truth(s, s.w.len())?;
        let proof = search_proof(backend, s, size_bound);
        if proof.is_some() {
            proofs_found += 1;
        }
        let violation = proof.is_some() && verdict.is_false();
        entries.push(AuditEntry {
            sentence: s.clone(),
            verdict,
            proof,
            violation,
        });
    }
    Ok(AuditReport {
        backend: backend.name().to_string(),
        size_bound,
        checked: entries.len(),
        proofs_found,
        entries,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bits::bits;
    use crate::folang::{build_phi_w, TemplateDef};
    use crate::sigma1::TemplateLibrary;

    fn sentence(phi: TemplateDef, w: &str) -> SentencePhiW {
        build_phi_w(phi, bits(w)).unwrap()
    }

    #[test]
    fn rule_a_certificate() {
        let cert = CertBackend;
        let s = sentence(TemplateDef::begins_with_1(), "0110");
        assert!(cert.verify(&s, &Proof::new(bits("00"))));
        // trailing garbage is malformed
        assert!(!cert.verify(&s, &Proof::new(bits("000"))));
        assert!(!cert.verify(&s, &Proof::new(bits(""))));
        // wrong first w bit
        let s = sentence(TemplateDef::begins_with_1(), "1000");
        assert!(!cert.verify(&s, &Proof::new(bits("00"))));
    }

    #[test]
    fn no_certificate_for_false_begins_with_1_sentence() {
        // Exhaustive candidate sweep: nothing of length <= 12 verifies.
        let cert = CertBackend;
        let s = sentence(TemplateDef::begins_with_1(), "1000");
        for len in 0..=12 {
            for payload in lex_words(len) {
                assert!(!cert.verify(&s, &Proof::new(payload)));
            }
        }
    }

    #[test]
    fn rule_b_certificate() {
        let cert = CertBackend;
        let s = sentence(TemplateDef::bit_j_is_1(1), "00");
        let p = Proof::new(bits("01").concat(&bits("001")));
        assert!(cert.verify(&s, &p));
        // claimed j must match the template's parameter
        let wrong_j = Proof::new(bits("01").concat(&bits("000")));
        assert!(!cert.verify(&s, &wrong_j));
        // w[j] = 1 refutes the claim
        let s = sentence(TemplateDef::bit_j_is_1(1), "01");
        assert!(!cert.verify(&s, &p));
        // j outside w refutes the claim
        let s = sentence(TemplateDef::bit_j_is_1(1), "0");
        assert!(!cert.verify(&s, &p));
    }

    #[test]
    fn rule_c_certificate() {
        let cert = CertBackend;
        let lib = TemplateLibrary::default_library();
        let phi = TemplateDef::sigma1(0, &lib).unwrap();

        // w = 111: within the window no extension has a 0 bit; B = 3 works.
        let s = sentence(phi.clone(), "111");
        let p = Proof::new(bits("10").concat(&BitString::from_index(3, 6)));
        assert!(cert.verify(&s, &p));
        // B below |w| is malformed
        let too_small = Proof::new(bits("10").concat(&BitString::from_index(2, 6)));
        assert!(!cert.verify(&s, &too_small));
        // B below the x-window cannot certify
        // (x-window is 3, so B = 3 is minimal; already covered above)

        // w = 110: x = w itself satisfies Φ, exhaustion fails at every B.
        let s = sentence(phi, "110");
        for b in 0..=63u64 {
            let p = Proof::new(bits("10").concat(&BitString::from_index(b, 6)));
            assert!(!cert.verify(&s, &p));
        }
    }

    #[test]
    fn search_finds_first_in_length_lex_order() {
        let cert = CertBackend;
        let s = sentence(TemplateDef::begins_with_1(), "0000");
        let p = search_proof(&cert, &s, 32).unwrap();
        assert_eq!(p.payload, bits("00"));

        let s = sentence(TemplateDef::begins_with_1(), "1000");
        assert!(search_proof(&cert, &s, 32).is_none());

        // degenerate bound
        let s = sentence(TemplateDef::begins_with_1(), "0000");
        assert!(search_proof(&cert, &s, 0).is_none());
    }

    #[test]
    fn search_rule_c_first_valid_bound() {
        let cert = CertBackend;
        let lib = TemplateLibrary::default_library();
        let s = sentence(TemplateDef::sigma1(0, &lib).unwrap(), "111");
        let p = search_proof(&cert, &s, 64).unwrap();
        assert_eq!(p.payload, bits("10000011"));
        assert_eq!(p.size(), RULE_C_LEN);
    }

    #[test]
    fn search_monotone_in_bound() {
        let cert = CertBackend;
        let lib = TemplateLibrary::default_library();
        let sentences = [
            sentence(TemplateDef::begins_with_1(), "0101"),
            sentence(TemplateDef::bit_j_is_1(2), "000"),
            sentence(TemplateDef::sigma1(0, &lib).unwrap(), "111"),
            sentence(TemplateDef::even_length(), "01"),
        ];
        for s in &sentences {
            let mut best: Option<Proof> = None;
            for bound in 0..=16 {
                let found = search_proof(&cert, s, bound);
                if let Some(prev) = &best {
                    assert_eq!(found.as_ref(), Some(prev), "bound {bound}");
                } else {
                    best = found;
                }
            }
        }
    }

    #[test]
    fn search_result_reverifies() {
        let cert = CertBackend;
        let lib = TemplateLibrary::default_library();
        for s in [
            sentence(TemplateDef::begins_with_1(), "01"),
            sentence(TemplateDef::bit_j_is_1(0), "0110"),
            sentence(TemplateDef::sigma1(2, &lib).unwrap(), "10"),
        ] {
            if let Some(p) = search_proof(&cert, &s, 64) {
                assert!(cert.verify(&s, &p));
                assert!(p.size() <= 64);
            }
        }
    }

    #[test]
    fn cert_accepts_nothing_outside_declared_lengths() {
        // Backs the enumeration cap: no payload of any other length
        // verifies, exhaustively up to 12 bits over assorted sentences.
        let cert = CertBackend;
        let lib = TemplateLibrary::default_library();
        let sentences = [
            sentence(TemplateDef::begins_with_1(), "00"),
            sentence(TemplateDef::bit_j_is_1(1), "00"),
            sentence(TemplateDef::sigma1(0, &lib).unwrap(), "111"),
        ];
        for s in &sentences {
            for len in 0..=12 {
                if len == RULE_A_LEN || len == RULE_B_LEN || len == RULE_C_LEN {
                    continue;
                }
                for payload in lex_words(len) {
                    assert!(!cert.verify(s, &Proof::new(payload)), "len {len}");
                }
            }
        }
    }

    #[test]
    fn empty_backend_proves_nothing() {
        let empty = EmptyBackend;
        let s = sentence(TemplateDef::begins_with_1(), "0000");
        assert!(search_proof(&empty, &s, 64).is_none());
        assert!(!empty.verify(&s, &Proof::new(bits("00"))));
    }

    #[test]
    fn audit_begins_with_1_all_w4() {
        let cert = CertBackend;
        let samples: Vec<_> = lex_words(4)
            .map(|w| sentence(TemplateDef::begins_with_1(), &w.to_string()))
            .collect();
        let report = soundness_audit(&cert, &samples, 64).unwrap();
        assert_eq!(report.checked, 16);
        assert!(report.violations().is_empty());
        // exactly the eight w starting with 0 are provable
        assert_eq!(report.proofs_found, 8);
    }

    #[test]
    fn audit_even_length_all_w3() {
        let cert = CertBackend;
        let samples: Vec<_> = lex_words(3)
            .map(|w| sentence(TemplateDef::even_length(), &w.to_string()))
            .collect();
        let report = soundness_audit(&cert, &samples, 64).unwrap();
        assert!(report.violations().is_empty());
        assert_eq!(report.proofs_found, 0);
    }

    #[test]
    fn audit_empty_sample_list() {
        let report = soundness_audit(&CertBackend, &[], 64).unwrap();
        assert!(report.entries.is_empty());
        assert!(report.violations().is_empty());
    }

    #[test]
    fn audit_rejects_non_analytic_samples() {
        let lib = TemplateLibrary::default_library();
        let s = sentence(TemplateDef::sigma1(0, &lib).unwrap(), "111");
        assert!(matches!(
            soundness_audit(&CertBackend, &[s], 64),
            Err(AuditError::NonAnalyticSample(_))
        ));
    }

    #[test]
    fn audit_full_cross_product_small_w() {
        // Invariant: audit passes on shipped analytic templates x all w with
        // |w| <= 5 at bound 64.
        let cert = CertBackend;
        let mut samples = Vec::new();
        let mut analytic = vec![TemplateDef::begins_with_1(), TemplateDef::even_length()];
        for j in 0..8 {
            analytic.push(TemplateDef::bit_j_is_1(j));
        }
        for phi in &analytic {
            for wl in 1..=5 {
                for w in lex_words(wl) {
                    samples.push(build_phi_w(phi.clone(), w).unwrap());
                }
            }
        }
        let report = soundness_audit(&cert, &samples, 64).unwrap();
        assert!(report.violations().is_empty());
        assert!(report.proofs_found > 0);
    }
}
