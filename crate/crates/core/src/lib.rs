//! Stretching generators over bit strings, desk-scale verified.
//!
//! Two constructions are implemented end to end. The first-order generator
//! decodes a prefix-free formula prefix from its input, sweeps sentence
//! prefixes w searching for backend proofs that "all large members of Φ
//! avoid prefix w", and emits the first unproved w in front of the input
//! remainder — stretching every input by exactly one bit. Its propositional
//! analogue replaces the theory backend with a propositional proof system
//! and searches for proofs among the truth tables of budget-bounded boolean
//! circuits.
//!
//! Everything an experiment claims is re-checkable: analytic truth
//! verdicts are exact, horizon-bounded verdicts are labeled, proof
//! verification re-executes certificates, and the harness ships
//! independent brute-force oracles for every derived value.

pub mod bits;
pub mod bounds;
pub mod circuits;
pub mod codec;
pub mod folang;
pub mod gen_fo;
pub mod gen_prop;
pub mod harness;
pub mod proplogic;
pub mod sigma1;
pub mod theory;

pub use bits::{lex_words, BitString};
pub use bounds::{BoundFn, Profile};
pub use circuits::{budget, enumerate_circuits, synthesize_tt, tt, Budget, Circuit, Gate};
pub use codec::{decode_formula_prefix, CodeTable, TemplateId};
pub use folang::{
    build_phi_w, eval_phi, phi_w_truth, SentencePhiW, TemplateDef, TemplateKind, TruthVerdict,
};
pub use gen_fo::{generate, hitting_experiment, incompleteness_demo, range_scan, GenConfig};
pub use gen_prop::{generate_prop, step_report, PropGenConfig};
pub use proplogic::{
    is_tautology_bruteforce, translate, PropFormula, PropProofSystem, SchSystem, TtSystem,
};
pub use sigma1::{Sigma1Verifier, TemplateLibrary};
pub use theory::{search_proof, soundness_audit, CertBackend, EmptyBackend, Proof, TheoryBackend};
