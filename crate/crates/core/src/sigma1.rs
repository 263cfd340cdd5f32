//! Witness-checking verifiers for Σ1 templates.
//!
//! A verifier is a straight-line stack program over the instruction set
//! {load bit, and, or, not, accept} evaluated against a pair (x, y) of bit
//! strings, with an explicit step counter. A load whose index is out of
//! range of its operand rejects the whole run. That rule makes every
//! verifier window-bounded: an accepting run only ever touches bits below
//! the statically known maximal load index, which is what the exhaustion
//! certificates of the CERT backend rely on.

use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::bits::{lex_words, BitString};

/// Natural-coefficient polynomial `c0 + c1 n + c2 n^2 + ...`, evaluated
/// with saturating arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Polynomial(pub Vec<u64>);

impl Polynomial {
    pub fn constant(c: u64) -> Self {
        Polynomial(vec![c])
    }

    pub fn degree(&self) -> usize {
        self.0
            .iter()
            .rposition(|&c| c != 0)
            .unwrap_or(0)
    }

    pub fn eval(&self, n: u64) -> u64 {
        let mut acc = 0u64;
        let mut pow = 1u64;
        for (i, &c) in self.0.iter().enumerate() {
            acc = acc.saturating_add(c.saturating_mul(pow));
            if i + 1 < self.0.len() {
                pow = pow.saturating_mul(n);
            }
        }
        acc
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Op {
    LoadX(usize),
    LoadY(usize),
    And,
    Or,
    Not,
    Accept,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ProgramError {
    #[error("unknown instruction {0:?}")]
    UnknownInstruction(String),
    #[error("stack underflow at instruction {0}")]
    StackUnderflow(usize),
    #[error("accept must be the final instruction")]
    MisplacedAccept,
    #[error("program must end with accept")]
    MissingAccept,
    #[error("program must leave exactly one value for accept, found {0}")]
    BadFinalStack(usize),
    #[error("witness bound degree {0} exceeds 3")]
    WitnessBoundDegree(usize),
}

/// A validated straight-line program.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Program {
    ops: Vec<Op>,
    x_window: usize,
    y_window: usize,
}

impl Program {
    pub fn new(ops: Vec<Op>) -> Result<Self, ProgramError> {
        let mut depth = 0usize;
        let mut x_window = 0usize;
        let mut y_window = 0usize;
        let last = ops.len().checked_sub(1);
        for (i, op) in ops.iter().enumerate() {
            match *op {
                Op::LoadX(ix) => {
                    x_window = x_window.max(ix + 1);
                    depth += 1;
                }
                Op::LoadY(ix) => {
                    y_window = y_window.max(ix + 1);
                    depth += 1;
                }
                Op::Not => {
                    if depth < 1 {
                        return Err(ProgramError::StackUnderflow(i));
                    }
                }
                Op::And | Op::Or => {
                    if depth < 2 {
                        return Err(ProgramError::StackUnderflow(i));
                    }
                    depth -= 1;
                }
                Op::Accept => {
                    if Some(i) != last {
                        return Err(ProgramError::MisplacedAccept);
                    }
                    if depth != 1 {
                        return Err(ProgramError::BadFinalStack(depth));
                    }
                }
            }
        }
        match ops.last() {
            Some(Op::Accept) => {}
            _ => return Err(ProgramError::MissingAccept),
        }
        Ok(Program {
            ops,
            x_window,
            y_window,
        })
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    /// 1 + the largest x index the program can touch.
    pub fn x_window(&self) -> usize {
        self.x_window
    }

    pub fn y_window(&self) -> usize {
        self.y_window
    }

    pub fn ops(&self) -> &[Op] {
        &self.ops
    }

    pub fn to_mnemonics(&self) -> String {
        self.ops
            .iter()
            .map(|op| match op {
                Op::LoadX(i) => format!("lx{i}"),
                Op::LoadY(i) => format!("ly{i}"),
                Op::And => "and".to_string(),
                Op::Or => "or".to_string(),
                Op::Not => "not".to_string(),
                Op::Accept => "accept".to_string(),
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl FromStr for Program {
    type Err = ProgramError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut ops = Vec::new();
        for tok in s.split_whitespace() {
            let op = if let Some(rest) = tok.strip_prefix("lx") {
                Op::LoadX(
                    rest.parse()
                        .map_err(|_| ProgramError::UnknownInstruction(tok.to_string()))?,
                )
            } else if let Some(rest) = tok.strip_prefix("ly") {
                Op::LoadY(
                    rest.parse()
                        .map_err(|_| ProgramError::UnknownInstruction(tok.to_string()))?,
                )
            } else {
                match tok {
                    "and" => Op::And,
                    "or" => Op::Or,
                    "not" => Op::Not,
                    "accept" => Op::Accept,
                    _ => return Err(ProgramError::UnknownInstruction(tok.to_string())),
                }
            };
            ops.push(op);
        }
        Program::new(ops)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EvalError {
    #[error("verifier {verifier}: step budget exceeded ({steps} > {budget}); misconfigured step_cost")]
    StepBudgetExceeded {
        verifier: String,
        steps: u64,
        budget: u64,
    },
}

/// Counted abstract basic operations; threaded through evaluation and the
/// generators so traces can report step totals.
#[derive(Debug, Default, Clone, Copy)]
pub struct StepCounter(pub u64);

impl StepCounter {
    pub fn add(&mut self, n: u64) {
        self.0 = self.0.saturating_add(n);
    }

    pub fn get(&self) -> u64 {
        self.0
    }
}

/// A deterministic witness checker with an explicit polynomial witness
/// bound and step cost.
#[derive(Debug, Clone)]
pub struct Sigma1Verifier {
    pub name: String,
    pub witness_bound: Polynomial,
    pub step_cost: Polynomial,
    pub program: Program,
}

impl PartialEq for Sigma1Verifier {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name && self.program == other.program
    }
}
impl Eq for Sigma1Verifier {}

impl Sigma1Verifier {
    pub fn new(
        name: impl Into<String>,
        witness_bound: Polynomial,
        step_cost: Polynomial,
        program: Program,
    ) -> Result<Self, ProgramError> {
        if witness_bound.degree() > 3 {
            return Err(ProgramError::WitnessBoundDegree(witness_bound.degree()));
        }
        // The declared step cost is the author's claim; runs enforce it and
        // surface violations as StepBudgetExceeded.
        Ok(Sigma1Verifier {
            name: name.into(),
            witness_bound,
            step_cost,
            program,
        })
    }

    /// Execute the checker on (x, y). Out-of-range loads reject the run.
    pub fn run(
        &self,
        x: &BitString,
        y: &BitString,
        counter: &mut StepCounter,
    ) -> Result<bool, EvalError> {
        let budget = self.step_cost.eval((x.len() + y.len()) as u64);
        let mut stack: Vec<bool> = Vec::with_capacity(8);
        let mut steps = 0u64;
        for op in self.program.ops() {
            steps += 1;
            if steps > budget {
                counter.add(steps);
                return Err(EvalError::StepBudgetExceeded {
                    verifier: self.name.clone(),
                    steps,
                    budget,
                });
            }
            match *op {
                Op::LoadX(i) => match x.bit(i) {
                    Some(b) => stack.push(b),
                    None => {
                        counter.add(steps);
                        return Ok(false);
                    }
                },
                Op::LoadY(i) => match y.bit(i) {
                    Some(b) => stack.push(b),
                    None => {
                        counter.add(steps);
                        return Ok(false);
                    }
                },
                Op::And => {
                    let b = stack.pop().expect("validated");
                    let a = stack.pop().expect("validated");
                    stack.push(a && b);
                }
                Op::Or => {
                    let b = stack.pop().expect("validated");
                    let a = stack.pop().expect("validated");
                    stack.push(a || b);
                }
                Op::Not => {
                    let a = stack.pop().expect("validated");
                    stack.push(!a);
                }
                Op::Accept => {
                    counter.add(steps);
                    return Ok(stack.pop().expect("validated"));
                }
            }
        }
        unreachable!("validated programs end with accept");
    }

    /// Σ1 semantics: ∃ y with |y| ≤ witness_bound(|x|) accepted by the
    /// checker. Brute-forces every witness length in ascending order.
    pub fn exists_witness(
        &self,
        x: &BitString,
        counter: &mut StepCounter,
    ) -> Result<bool, EvalError> {
        let bound = self.witness_bound.eval(x.len() as u64) as usize;
        for len in 0..=bound {
            for y in lex_words(len) {
                counter.add(1);
                if self.run(x, &y, counter)? {
                    return Ok(true);
                }
            }
        }
        Ok(false)
    }
}

/// The library of shipped verifiers an encoded `SIGMA1_REF` indexes into.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TemplateLibrary {
    verifiers: Vec<std::sync::Arc<Sigma1Verifier>>,
}

#[derive(Debug, thiserror::Error)]
pub enum LibraryLoadError {
    #[error("malformed template library document: {0}")]
    Json(#[from] serde_json::Error),
    #[error("verifier {name}: {err}")]
    Verifier { name: String, err: ProgramError },
}

#[derive(Deserialize)]
struct RawLibrary {
    verifiers: Vec<RawVerifier>,
}

#[derive(Deserialize)]
struct RawVerifier {
    name: String,
    witness_bound: Vec<u64>,
    #[serde(default)]
    step_cost: Option<Vec<u64>>,
    bytecode: String,
}

impl TemplateLibrary {
    pub fn new(verifiers: Vec<Sigma1Verifier>) -> Self {
        TemplateLibrary {
            verifiers: verifiers.into_iter().map(std::sync::Arc::new).collect(),
        }
    }

    /// The shipped library. Index 0 is referenced by several examples.
    pub fn default_library() -> Self {
        let mk = |name: &str, bound: Vec<u64>, code: &str| {
            Sigma1Verifier::new(
                name,
                Polynomial(bound),
                Polynomial(vec![64, 4]),
                code.parse().expect("shipped bytecode"),
            )
            .expect("shipped verifier")
        };
        TemplateLibrary::new(vec![
            // ∃ position i < 3 selected by the witness where x is 0.
            mk(
                "has-a-0-bit",
                vec![3],
                "ly0 lx0 not and ly1 lx1 not and or ly2 lx2 not and or accept",
            ),
            // x starts with 01; no witness needed.
            mk("begins-01", vec![0], "lx0 not lx1 and accept"),
            // the first three bits of x are all 1.
            mk("first-3-ones", vec![0], "lx0 lx1 and lx2 and accept"),
        ])
    }

    pub fn get(&self, index: usize) -> Option<std::sync::Arc<Sigma1Verifier>> {
        self.verifiers.get(index).cloned()
    }

    pub fn len(&self) -> usize {
        self.verifiers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.verifiers.is_empty()
    }

    /// Load from the JSON document
    /// `{ "verifiers": [ {"name": "...", "witness_bound": [c0,c1,...], "bytecode": "..."} ] }`.
    pub fn from_json(doc: &str) -> Result<Self, LibraryLoadError> {
        let raw: RawLibrary = serde_json::from_str(doc)?;
        let mut verifiers = Vec::new();
        for rv in raw.verifiers {
            let program: Program = rv.bytecode.parse().map_err(|err| LibraryLoadError::Verifier {
                name: rv.name.clone(),
                err,
            })?;
            let step_cost = Polynomial(rv.step_cost.unwrap_or_else(|| vec![1024]));
            let v = Sigma1Verifier::new(rv.name.clone(), Polynomial(rv.witness_bound), step_cost, program)
                .map_err(|err| LibraryLoadError::Verifier { name: rv.name, err })?;
            verifiers.push(v);
        }
        Ok(TemplateLibrary::new(verifiers))
    }
}

impl Default for TemplateLibrary {
    fn default() -> Self {
        TemplateLibrary::default_library()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bits::bits;

    fn has_zero() -> Sigma1Verifier {
        TemplateLibrary::default_library()
            .get(0)
            .unwrap()
            .as_ref()
            .clone()
    }

    #[test]
    fn program_validation() {
        assert!("lx0 accept".parse::<Program>().is_ok());
        assert!("and accept".parse::<Program>().is_err());
        assert!("lx0 lx1".parse::<Program>().is_err());
        assert!("lx0 accept lx1 accept".parse::<Program>().is_err());
        assert!("lx0 lx1 accept".parse::<Program>().is_err());
        assert!("zz accept".parse::<Program>().is_err());
    }

    #[test]
    fn windows_are_static() {
        let p: Program = "ly0 lx0 not and ly1 lx1 not and or ly2 lx2 not and or accept"
            .parse()
            .unwrap();
        assert_eq!(p.x_window(), 3);
        assert_eq!(p.y_window(), 3);
    }

    #[test]
    fn has_zero_bit_semantics() {
        let v = has_zero();
        let mut c = StepCounter::default();
        // all-ones in the window: no witness works
        assert!(!v.exists_witness(&bits("111"), &mut c).unwrap());
        assert!(!v.exists_witness(&bits("1111"), &mut c).unwrap());
        // zero inside the window
        assert!(v.exists_witness(&bits("110"), &mut c).unwrap());
        assert!(v.exists_witness(&bits("0111"), &mut c).unwrap());
        // shorter than the window: every run rejects on an out-of-range load
        assert!(!v.exists_witness(&bits("01"), &mut c).unwrap());
        // zero outside the window is invisible
        assert!(!v.exists_witness(&bits("1110"), &mut c).unwrap());
    }

    #[test]
    fn out_of_range_load_rejects_run() {
        let v = has_zero();
        let mut c = StepCounter::default();
        assert!(!v.run(&bits("11"), &bits("001"), &mut c).unwrap());
        assert!(!v.run(&bits("110"), &bits(""), &mut c).unwrap());
        assert!(v.run(&bits("110"), &bits("001"), &mut c).unwrap());
    }

    #[test]
    fn step_budget_flags_misconfigured_verifier() {
        // 6 instructions under a declared budget of 6: exactly fits.
        let program: Program = "lx0 lx1 and lx2 and accept".parse().unwrap();
        let v = Sigma1Verifier::new("tight", Polynomial(vec![0]), Polynomial(vec![6]), program)
            .unwrap();
        let mut c = StepCounter::default();
        assert!(v.run(&bits("111"), &bits(""), &mut c).is_ok());

        // Declared budget 3 < program length: the run errors out.
        let program: Program = "lx0 lx1 and lx2 and accept".parse().unwrap();
        let v = Sigma1Verifier::new("too-tight", Polynomial(vec![0]), Polynomial(vec![3]), program)
            .unwrap();
        let err = v.run(&bits("111"), &bits(""), &mut c).unwrap_err();
        assert!(matches!(err, EvalError::StepBudgetExceeded { .. }));
    }

    #[test]
    fn witness_bound_degree_capped() {
        let program: Program = "lx0 accept".parse().unwrap();
        let err = Sigma1Verifier::new(
            "deep",
            Polynomial(vec![0, 0, 0, 0, 1]),
            Polynomial(vec![64]),
            program,
        );
        assert!(matches!(err, Err(ProgramError::WitnessBoundDegree(4))));
    }

    #[test]
    fn library_json_round_trip() {
        let doc = r#"{ "verifiers": [
            {"name": "ends-check", "witness_bound": [2], "bytecode": "lx0 ly0 and accept"}
        ]}"#;
        let lib = TemplateLibrary::from_json(doc).unwrap();
        assert_eq!(lib.len(), 1);
        let v = lib.get(0).unwrap();
        assert_eq!(v.name, "ends-check");
        assert_eq!(v.program.to_mnemonics(), "lx0 ly0 and accept");
    }

    #[test]
    fn polynomial_eval() {
        let p = Polynomial(vec![1, 2, 3]);
        assert_eq!(p.eval(0), 1);
        assert_eq!(p.eval(2), 1 + 4 + 12);
        assert_eq!(Polynomial(vec![]).eval(5), 0);
    }
}
