//! The first-order stretching generator and its experiments.
//!
//! On input u of length n the generator decodes a formula prefix Φ, sweeps
//! the words w of length c = |Φ|+1 in lexicographic order searching for
//! backend proofs of the sentences Φ^w, and outputs either the all-zeros
//! word (no formula, or every sentence proved) or w0 ++ u0 for the first
//! unproved w0, where u = Φ u0. The output is always one bit longer than
//! the input.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::bits::{lex_words, BitString};
use crate::bounds::{BoundFn, Profile};
use crate::codec::{decode_formula_prefix, CodeTable, DecodedFormula};
use crate::folang::{build_phi_w, eval_phi, phi_w_truth, TemplateDef, TruthError, TruthVerdict};
use crate::sigma1::{StepCounter, TemplateLibrary};
use crate::theory::{search_proof, search_proof_counted, TheoryBackend};

/// Configuration of the generator. The PAPER profile pins both bounds to
/// ⌊log2 n⌋; the DESK profile defaults to bounds wide enough for desk-scale
/// sweeps but accepts any monotone choice.
#[derive(Clone)]
pub struct GenConfig {
    pub profile: Profile,
    pub formula_len_bound: BoundFn,
    pub proof_size_bound: BoundFn,
    pub backend: Arc<dyn TheoryBackend>,
    pub code_table: CodeTable,
    pub library: TemplateLibrary,
}

impl GenConfig {
    pub fn paper(backend: Arc<dyn TheoryBackend>) -> Self {
        GenConfig {
            profile: Profile::Paper,
            formula_len_bound: BoundFn::Log2Floor,
            proof_size_bound: BoundFn::Log2Floor,
            backend,
            code_table: CodeTable::default_table(),
            library: TemplateLibrary::default_library(),
        }
    }

    pub fn desk(backend: Arc<dyn TheoryBackend>) -> Self {
        GenConfig {
            profile: Profile::Desk,
            formula_len_bound: BoundFn::Const(8),
            proof_size_bound: BoundFn::Const(64),
            backend,
            code_table: CodeTable::default_table(),
            library: TemplateLibrary::default_library(),
        }
    }
}

/// Every intermediate of a generator run; experiments consume traces
/// rather than re-deriving internals.
#[derive(Debug, Clone, Serialize)]
pub struct GenTrace {
    pub decoded: Option<DecodedFormula>,
    pub c: usize,
    /// per-w search outcomes, up to and including the first unproved w
    pub proofs_found: Vec<(BitString, bool)>,
    pub w0: Option<BitString>,
    pub output: BitString,
    pub steps: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GenError {
    #[error("generator input must be nonempty")]
    EmptyInput,
}

/// Run the generator on u. Output length is always |u| + 1.
pub fn generate(u: &BitString, cfg: &GenConfig) -> Result<(BitString, GenTrace), GenError> {
    let n = u.len();
    if n == 0 {
        return Err(GenError::EmptyInput);
    }
    let mut counter = StepCounter::default();
    counter.add(n as u64 + 1); // formula-prefix scan

    let max_len = cfg.formula_len_bound.eval(n);
    let resolved = decode_formula_prefix(u, max_len, &cfg.code_table).and_then(|(d, rest)| {
        TemplateDef::resolve(&d, &cfg.library).map(|phi| (d, phi, rest))
    });

    let Some((decoded, phi, u0)) = resolved else {
        let output = BitString::zeros(n + 1);
        return Ok((
            output.clone(),
            GenTrace {
                decoded: None,
                c: 0,
                proofs_found: Vec::new(),
                w0: None,
                output,
                steps: counter.get(),
            },
        ));
    };

    let c = decoded.encoded_len + 1;
    let proof_bound = cfg.proof_size_bound.eval(n);
    let mut proofs_found = Vec::new();
    let mut w0 = None;
    for w in lex_words(c) {
        let sentence = build_phi_w(phi.clone(), w.clone()).expect("c >= 1");
        let found =
            search_proof_counted(cfg.backend.as_ref(), &sentence, proof_bound, &mut counter)
                .is_some();
        proofs_found.push((w.clone(), found));
        if !found {
            // later w cannot change the output; the sweep stops at w0
            w0 = Some(w);
            break;
        }
    }

    let output = match &w0 {
        Some(w) => w.concat(&u0),
        None => BitString::zeros(n + 1),
    };
    debug_assert_eq!(output.len(), n + 1);
    Ok((
        output.clone(),
        GenTrace {
            decoded: Some(decoded),
            c,
            proofs_found,
            w0,
            output,
            steps: counter.get(),
        },
    ))
}

pub const RANGE_SCAN_MAX_N: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RangeScanError {
    #[error("range scan is exhaustive and refuses n = {n} > {max} (2^n inputs)", max = RANGE_SCAN_MAX_N)]
    TooLarge { n: usize },
    #[error(transparent)]
    Gen(#[from] GenError),
}

/// The exact range { g(u) : |u| = n }, by exhaustive run over all inputs.
pub fn range_scan(n: usize, cfg: &GenConfig) -> Result<BTreeSet<BitString>, RangeScanError> {
    if n > RANGE_SCAN_MAX_N {
        return Err(RangeScanError::TooLarge { n });
    }
    if n == 0 {
        return Err(RangeScanError::Gen(GenError::EmptyInput));
    }
    let total = 1u64 << n;
    let outputs: Result<BTreeSet<BitString>, GenError> = (0..total)
        .into_par_iter()
        .map(|i| generate(&BitString::from_index(i, n), cfg).map(|(out, _)| out))
        .collect();
    Ok(outputs?)
}

/// One length's worth of hit-test results.
#[derive(Debug, Clone, Serialize)]
pub struct HitEntry {
    pub n: usize,
    pub w0: Option<BitString>,
    pub inputs_tested: usize,
    pub hit_count: usize,
    /// first few hits, as output strings
    pub hits: Vec<BitString>,
}

#[derive(Debug, Clone, Serialize)]
pub struct HitReport {
    pub template: String,
    pub backend: String,
    pub entries: Vec<HitEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HitError {
    #[error("template {0} is not encodable through the configured code table")]
    NotEncodable(String),
    #[error("n = {n} is below the encoded template length {len}")]
    TooShort { n: usize, len: usize },
    #[error(transparent)]
    Gen(#[from] GenError),
}

const HIT_SAMPLE_CAP: usize = 4096;
const HIT_LIST_CAP: usize = 64;

/// For each n in the range, feed inputs Φ ++ u0 through the generator and
/// record which outputs land back in the set {x : Φ(x)}. u0 is exhaustive
/// up to 2^12 tails, seeded-sampled beyond.
pub fn hitting_experiment(
    phi: &TemplateDef,
    n_range: std::ops::RangeInclusive<usize>,
    cfg: &GenConfig,
    seed: u64,
) -> Result<HitReport, HitError> {
    use rand::{Rng, SeedableRng};
    let encoded = phi
        .encode(&cfg.code_table)
        .ok_or_else(|| HitError::NotEncodable(phi.to_string()))?;
    let mut entries = Vec::new();
    for n in n_range {
        if n < encoded.len() {
            return Err(HitError::TooShort {
                n,
                len: encoded.len(),
            });
        }
        let tail_len = n - encoded.len();
        let tails: Vec<BitString> = if tail_len <= 12 {
            lex_words(tail_len).collect()
        } else {
            let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(seed ^ n as u64);
            (0..HIT_SAMPLE_CAP)
                .map(|_| BitString::from_bits((0..tail_len).map(|_| rng.random()).collect()))
                .collect()
        };
        let runs: Result<Vec<(BitString, GenTrace)>, GenError> = tails
            .par_iter()
            .map(|u0| generate(&encoded.concat(u0), cfg))
            .collect();
        let runs = runs?;
        let mut w0 = None;
        let mut hits = Vec::new();
        let mut hit_count = 0usize;
        for (out, trace) in &runs {
            if w0.is_none() {
                w0 = trace.w0.clone();
            }
            if eval_phi(phi, out).unwrap_or(false) {
                hit_count += 1;
                if hits.len() < HIT_LIST_CAP {
                    hits.push(out.clone());
                }
            }
        }
        entries.push(HitEntry {
            n,
            w0,
            inputs_tested: runs.len(),
            hit_count,
            hits,
        });
    }
    Ok(HitReport {
        template: phi.to_string(),
        backend: cfg.backend.name().to_string(),
        entries,
    })
}

/// Nominal encoded length assigned to the range-complement template; it is
/// deliberately outside the code table (the construction is applied to the
/// generator from the outside, never through its own step 1).
pub const COMPLEMENT_CODE_LEN: usize = 3;

#[derive(Debug, Clone, Serialize)]
pub struct IncompletenessEntry {
    pub w: BitString,
    pub verdict: TruthVerdict,
    pub proved: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct IncompletenessReport {
    pub backend: String,
    pub horizon: usize,
    /// all verdicts here are horizon-bounded by construction
    pub horizon_bounded: bool,
    pub c: usize,
    pub entries: Vec<IncompletenessEntry>,
    /// w whose sentence is true up to the horizon yet unprovable
    pub unproved_true: Vec<BitString>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DemoError {
    #[error("incompleteness demo horizon {0} exceeds the desk cap of 16")]
    HorizonTooLarge(usize),
    #[error("horizon {horizon} is below the sweep width |w| = {c}")]
    HorizonBelowC { horizon: usize, c: usize },
    #[error(transparent)]
    Scan(#[from] RangeScanError),
    #[error(transparent)]
    Truth(#[from] TruthError),
}

/// Demonstrate bounded-horizon unprovability on the complement of the
/// generator's own range: Φ_comp(x) := "x is not an output of the
/// generator at length |x|", swept over w of width COMPLEMENT_CODE_LEN + 1.
/// The report lists every w whose sentence Φ_comp^w holds up to the
/// horizon yet has no backend proof within the bound.
pub fn incompleteness_demo(
    cfg: &GenConfig,
    horizon: usize,
) -> Result<IncompletenessReport, DemoError> {
    if horizon > 16 {
        return Err(DemoError::HorizonTooLarge(horizon));
    }
    let c = COMPLEMENT_CODE_LEN + 1;
    if horizon < c {
        return Err(DemoError::HorizonBelowC { horizon, c });
    }

    // ranges per output length 2..=horizon (inputs of length 1..horizon)
    let mut ranges: BTreeMap<usize, BTreeSet<BitString>> = BTreeMap::new();
    for n in 1..horizon {
        ranges.insert(n + 1, range_scan(n, cfg)?);
    }

    let phi_comp = TemplateDef::dynamic("range-complement", COMPLEMENT_CODE_LEN, move |x| {
        match ranges.get(&x.len()) {
            Some(range) => !range.contains(x),
            // outside the precomputed window the demo treats the
            // complement as unobserved
            None => false,
        }
    });

    let proof_bound = cfg.proof_size_bound.eval(horizon);
    let mut entries = Vec::new();
    let mut unproved_true = Vec::new();
    for w in lex_words(c) {
        let sentence = build_phi_w(phi_comp.clone(), w.clone()).expect("c >= 1");
        let verdict = phi_w_truth(&sentence, horizon)?;
        let proved = search_proof(cfg.backend.as_ref(), &sentence, proof_bound).is_some();
        if verdict == TruthVerdict::TrueUpToHorizon && !proved {
            unproved_true.push(w.clone());
        }
        entries.push(IncompletenessEntry {
            w,
            verdict,
            proved,
        });
    }
    Ok(IncompletenessReport {
        backend: cfg.backend.name().to_string(),
        horizon,
        horizon_bounded: true,
        c,
        entries,
        unproved_true,
    })
}
