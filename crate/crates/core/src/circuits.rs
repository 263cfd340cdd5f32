//! Fan-in-2 boolean circuits over {AND, OR, NOT} as compressed proof
//! candidates.
//!
//! Nodes are numbered inputs-first: node i < k is input x_i, node k+j is
//! gate j. Truth tables list the output on all 2^k assignments in
//! lexicographic order, input 0 being the most significant index bit.
//! Enumeration is canonical (operands of commutative gates sorted) and
//! ordered by size, then gate-list, then output index, so sweeps are
//! deterministic and duplicate-free.

use serde::Serialize;

use crate::bits::BitString;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Gate {
    /// Ordering of variants is the enumeration op order.
    And(usize, usize),
    Or(usize, usize),
    Not(usize),
}

impl Gate {
    fn operands(&self) -> (usize, Option<usize>) {
        match *self {
            Gate::And(a, b) | Gate::Or(a, b) => (a, Some(b)),
            Gate::Not(a) => (a, None),
        }
    }

    fn is_canonical(&self) -> bool {
        match *self {
            Gate::And(a, b) | Gate::Or(a, b) => a <= b,
            Gate::Not(_) => true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Circuit {
    inputs: usize,
    gates: Vec<Gate>,
    output: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CircuitError {
    #[error("circuits must have at least one input")]
    ZeroInputs,
    #[error("gate {gate} operand {operand} does not precede it")]
    ForwardOperand { gate: usize, operand: usize },
    #[error("output index {output} exceeds node count {nodes}")]
    BadOutput { output: usize, nodes: usize },
    #[error("{k} inputs exceed the truth-table limit of 24")]
    TooManyInputs { k: usize },
    #[error("k = {k} exceeds the budget's input cap {k_max}")]
    OverBudget { k: usize, k_max: usize },
    #[error("target length {len} is not a power of two (>= 2)")]
    NotPowerOfTwo { len: usize },
    #[error("bad circuit text: {0}")]
    Parse(String),
}

impl Circuit {
    pub fn new(inputs: usize, gates: Vec<Gate>, output: usize) -> Result<Self, CircuitError> {
        if inputs == 0 {
            return Err(CircuitError::ZeroInputs);
        }
        for (j, g) in gates.iter().enumerate() {
            let limit = inputs + j;
            let (a, b) = g.operands();
            if a >= limit {
                return Err(CircuitError::ForwardOperand { gate: j, operand: a });
            }
            if let Some(b) = b {
                if b >= limit {
                    return Err(CircuitError::ForwardOperand { gate: j, operand: b });
                }
            }
        }
        let nodes = inputs + gates.len();
        if output >= nodes {
            return Err(CircuitError::BadOutput { output, nodes });
        }
        Ok(Circuit {
            inputs,
            gates,
            output,
        })
    }

    pub fn inputs(&self) -> usize {
        self.inputs
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn output(&self) -> usize {
        self.output
    }

    /// Gate count; NOT counts as a gate.
    pub fn size(&self) -> usize {
        self.gates.len()
    }

    pub fn is_canonical(&self) -> bool {
        self.gates.iter().all(Gate::is_canonical)
    }

    /// Evaluate on a single assignment (one bool per input).
    pub fn eval(&self, assignment: &[bool]) -> bool {
        assert_eq!(assignment.len(), self.inputs);
        let mut values = Vec::with_capacity(self.inputs + self.gates.len());
        values.extend_from_slice(assignment);
        for g in &self.gates {
            let v = match *g {
                Gate::And(a, b) => values[a] && values[b],
                Gate::Or(a, b) => values[a] || values[b],
                Gate::Not(a) => !values[a],
            };
            values.push(v);
        }
        values[self.output]
    }

    /// The truth table as packed 64-assignment words (word w bit b is the
    /// output on assignment index 64w + b). Backing store of `tt`.
    pub fn tt_words(&self) -> Result<Vec<u64>, CircuitError> {
        let k = self.inputs;
        if k > 24 {
            return Err(CircuitError::TooManyInputs { k });
        }
        let total: usize = 1usize << k;
        let n_words = total.div_ceil(64);
        let nodes = k + self.gates.len();
        let mut out = Vec::with_capacity(n_words);
        let mut values = vec![0u64; nodes];
        for word_idx in 0..n_words {
            let base = (word_idx * 64) as u64;
            for (j, v) in values.iter_mut().enumerate().take(k) {
                *v = input_word(k, j, base);
            }
            for (j, g) in self.gates.iter().enumerate() {
                values[k + j] = match *g {
                    Gate::And(a, b) => values[a] & values[b],
                    Gate::Or(a, b) => values[a] | values[b],
                    Gate::Not(a) => !values[a],
                };
            }
            let mut word = values[self.output];
            if total - word_idx * 64 < 64 {
                word &= (1u64 << (total - word_idx * 64)) - 1;
            }
            out.push(word);
        }
        Ok(out)
    }

    /// The circuit text format: `inputs K`, one `gN = OP a b` line per gate,
    /// `output N`. Operands are `xI` for inputs and `gI` for gates.
    pub fn to_text(&self) -> String {
        let name = |i: usize| {
            if i < self.inputs {
                format!("x{i}")
            } else {
                format!("g{i}")
            }
        };
        let mut lines = vec![format!("inputs {}", self.inputs)];
        for (j, g) in self.gates.iter().enumerate() {
            let node = self.inputs + j;
            let line = match *g {
                Gate::And(a, b) => format!("g{node} = AND {} {}", name(a), name(b)),
                Gate::Or(a, b) => format!("g{node} = OR {} {}", name(a), name(b)),
                Gate::Not(a) => format!("g{node} = NOT {}", name(a)),
            };
            lines.push(line);
        }
        lines.push(format!("output {}", name(self.output)));
        lines.join("\n")
    }

    pub fn from_text(text: &str) -> Result<Self, CircuitError> {
        let mut inputs = None;
        let mut gates = Vec::new();
        let mut output = None;
        let parse_node = |tok: &str| -> Result<usize, CircuitError> {
            let rest = tok
                .strip_prefix('x')
                .or_else(|| tok.strip_prefix('g'))
                .ok_or_else(|| CircuitError::Parse(format!("bad operand {tok:?}")))?;
            rest.parse()
                .map_err(|_| CircuitError::Parse(format!("bad operand {tok:?}")))
        };
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let toks: Vec<&str> = line.split_whitespace().collect();
            match toks.as_slice() {
                ["inputs", k] => {
                    inputs = Some(k.parse().map_err(|_| {
                        CircuitError::Parse(format!("bad input count {k:?}"))
                    })?);
                }
                ["output", node] => {
                    output = Some(parse_node(node)?);
                }
                [_, "=", "NOT", a] => gates.push(Gate::Not(parse_node(a)?)),
                [_, "=", "AND", a, b] => gates.push(Gate::And(parse_node(a)?, parse_node(b)?)),
                [_, "=", "OR", a, b] => gates.push(Gate::Or(parse_node(a)?, parse_node(b)?)),
                _ => return Err(CircuitError::Parse(format!("unrecognized line {line:?}"))),
            }
        }
        let inputs = inputs.ok_or_else(|| CircuitError::Parse("missing inputs line".into()))?;
        let output = output.ok_or_else(|| CircuitError::Parse("missing output line".into()))?;
        Circuit::new(inputs, gates, output)
    }
}

/// The packed values of input `j` over assignments [base, base+64).
fn input_word(k: usize, j: usize, base: u64) -> u64 {
    let shift = (k - 1 - j) as u64;
    let step = 1u64 << shift; // assignments per constant run of x_j
    if step >= 64 {
        if (base >> shift) & 1 == 1 {
            u64::MAX
        } else {
            0
        }
    } else {
        // periodic pattern within a word: runs of `step` zeros then ones
        let mut word = 0u64;
        let mut b = 0u64;
        while b < 64 {
            if ((base + b) >> shift) & 1 == 1 {
                let run = step.min(64 - b);
                let mask = if run == 64 { u64::MAX } else { ((1u64 << run) - 1) << b };
                word |= mask;
                b += run;
            } else {
                b += step;
            }
        }
        word
    }
}

/// The lexicographically ordered list of a circuit's values on all inputs.
pub fn tt(d: &Circuit) -> Result<BitString, CircuitError> {
    let words = d.tt_words()?;
    let total = 1usize << d.inputs();
    let mut bits = Vec::with_capacity(total);
    for i in 0..total {
        bits.push((words[i / 64] >> (i % 64)) & 1 == 1);
    }
    Ok(BitString::from_bits(bits))
}

/// Search budget: maximal input count and gate count.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Budget {
    pub k_max: usize,
    pub size_max: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("budget undefined below n = 4 (got {n})")]
pub struct BudgetError {
    pub n: usize,
}

/// The asymptotic budget at input length n: up to log2(n)·log2(log2(n))
/// inputs and (log2 n)^(log2 log2 n) gates, real-valued logs floored.
pub fn budget(n: usize) -> Result<Budget, BudgetError> {
    if n < 4 {
        return Err(BudgetError { n });
    }
    let log = (n as f64).log2();
    let loglog = log.log2();
    let k_max = (log * loglog).floor() as usize;
    let size_max = log.powf(loglog).floor() as usize;
    Ok(Budget {
        k_max: k_max.max(1),
        size_max: size_max.max(1),
    })
}

/// Closed-form count of the circuits `enumerate_circuits` yields for
/// exactly `k` inputs: sum over sizes s of (gate-option products) times
/// output choices. Saturates at u128::MAX.
pub fn count_circuits(b: &Budget, k: usize) -> u128 {
    let mut total: u128 = 0;
    for s in 0..=b.size_max {
        let mut lists: u128 = 1;
        for i in 0..s {
            let m = (k + i) as u128;
            // AND/OR with sorted operand pairs, plus NOT
            lists = lists.saturating_mul(m.saturating_mul(m + 2));
        }
        total = total.saturating_add(lists.saturating_mul((k + s) as u128));
    }
    total
}

/// Deterministic canonical enumeration of all circuits with exactly `k`
/// inputs and size within the budget: ordered by size, then gate list
/// (op-rank AND < OR < NOT, operands ascending), then output index.
pub fn enumerate_circuits(b: &Budget, k: usize) -> Result<CircuitEnumerator, CircuitError> {
    if k == 0 {
        return Err(CircuitError::ZeroInputs);
    }
    if k > b.k_max {
        return Err(CircuitError::OverBudget { k, k_max: b.k_max });
    }
    Ok(CircuitEnumerator {
        k,
        size_max: b.size_max,
        size: 0,
        gate_ranks: Vec::new(),
        output: 0,
        done: false,
    })
}

pub struct CircuitEnumerator {
    k: usize,
    size_max: usize,
    size: usize,
    /// odometer over per-position gate options
    gate_ranks: Vec<usize>,
    output: usize,
    done: bool,
}

impl CircuitEnumerator {
    fn gate_option_count(&self, position: usize) -> usize {
        let m = self.k + position;
        m * (m + 2)
    }

    fn gate_from_rank(&self, position: usize, rank: usize) -> Gate {
        let m = self.k + position;
        let pairs = m * (m + 1) / 2;
        if rank < pairs {
            let (a, b) = pair_from_rank(m, rank);
            Gate::And(a, b)
        } else if rank < 2 * pairs {
            let (a, b) = pair_from_rank(m, rank - pairs);
            Gate::Or(a, b)
        } else {
            Gate::Not(rank - 2 * pairs)
        }
    }

    fn current(&self) -> Circuit {
        let gates = self
            .gate_ranks
            .iter()
            .enumerate()
            .map(|(i, &r)| self.gate_from_rank(i, r))
            .collect();
        Circuit {
            inputs: self.k,
            gates,
            output: self.output,
        }
    }

    fn advance(&mut self) {
        // output index is the fastest wheel
        self.output += 1;
        if self.output < self.k + self.size {
            return;
        }
        self.output = 0;
        // then the gate list, last position fastest
        let mut pos = self.size;
        while pos > 0 {
            pos -= 1;
            self.gate_ranks[pos] += 1;
            if self.gate_ranks[pos] < self.gate_option_count(pos) {
                return;
            }
            self.gate_ranks[pos] = 0;
        }
        // then the size
        self.size += 1;
        if self.size > self.size_max {
            self.done = true;
            return;
        }
        self.gate_ranks = vec![0; self.size];
    }
}

/// Rank -> sorted pair (a, b), a <= b < m, ordered lexicographically:
/// (0,0), (0,1), ..., (0,m-1), (1,1), ...
fn pair_from_rank(m: usize, rank: usize) -> (usize, usize) {
    let mut rank = rank;
    for a in 0..m {
        let row = m - a;
        if rank < row {
            return (a, a + rank);
        }
        rank -= row;
    }
    unreachable!("rank within pair count");
}

impl Iterator for CircuitEnumerator {
    type Item = Circuit;

    fn next(&mut self) -> Option<Circuit> {
        if self.done {
            return None;
        }
        let c = self.current();
        self.advance();
        Some(c)
    }
}

/// Build a circuit whose truth table equals `target` (Shannon expansion
/// with sub-table memoization). Certifies realizability; the result may
/// exceed any search budget.
pub fn synthesize_tt(target: &BitString) -> Result<Circuit, CircuitError> {
    let len = target.len();
    if len < 2 || !len.is_power_of_two() {
        return Err(CircuitError::NotPowerOfTwo { len });
    }
    let k = len.trailing_zeros() as usize;
    if k > 24 {
        return Err(CircuitError::TooManyInputs { k });
    }

    struct Synth {
        k: usize,
        gates: Vec<Gate>,
        memo: std::collections::HashMap<Vec<bool>, usize>,
        nots: std::collections::HashMap<usize, usize>,
        const_false: Option<usize>,
        const_true: Option<usize>,
    }

    #[derive(Clone, Copy)]
    enum Node {
        Const(bool),
        Idx(usize),
    }

    impl Synth {
        fn push(&mut self, g: Gate) -> usize {
            self.gates.push(g);
            self.k + self.gates.len() - 1
        }

        fn not_of(&mut self, node: usize) -> usize {
            if let Some(&n) = self.nots.get(&node) {
                return n;
            }
            let n = self.push(Gate::Not(node));
            self.nots.insert(node, n);
            n
        }

        fn const_node(&mut self, value: bool) -> usize {
            if value {
                if let Some(n) = self.const_true {
                    return n;
                }
                let nx0 = self.not_of(0);
                let n = self.push(Gate::Or(0, nx0));
                self.const_true = Some(n);
                n
            } else {
                if let Some(n) = self.const_false {
                    return n;
                }
                let nx0 = self.not_of(0);
                let n = self.push(Gate::And(0, nx0));
                self.const_false = Some(n);
                n
            }
        }

        /// Node computing the sub-table over variables [depth..k).
        fn build(&mut self, table: &[bool], depth: usize) -> Node {
            if table.iter().all(|&b| b) {
                return Node::Const(true);
            }
            if table.iter().all(|&b| !b) {
                return Node::Const(false);
            }
            if let Some(&n) = self.memo.get(table) {
                return Node::Idx(n);
            }
            let half = table.len() / 2;
            let (low, high) = table.split_at(half);
            if low == high {
                return self.build(low, depth + 1);
            }
            let var = depth;
            let low_node = self.build(low, depth + 1);
            let high_node = self.build(high, depth + 1);
            let node = match (low_node, high_node) {
                (Node::Const(false), Node::Idx(h)) => self.push(Gate::And(var, h)),
                (Node::Const(true), Node::Idx(h)) => {
                    let not_var = self.not_of(var);
                    let t = self.push(Gate::And(var, h));
                    self.push(Gate::Or(not_var, t))
                }
                (Node::Idx(l), Node::Const(false)) => {
                    let not_var = self.not_of(var);
                    self.push(Gate::And(not_var, l))
                }
                (Node::Idx(l), Node::Const(true)) => {
                    let not_var = self.not_of(var);
                    let t = self.push(Gate::And(not_var, l));
                    self.push(Gate::Or(var, t))
                }
                (Node::Idx(l), Node::Idx(h)) => {
                    let not_var = self.not_of(var);
                    let a = self.push(Gate::And(not_var, l));
                    let b = self.push(Gate::And(var, h));
                    self.push(Gate::Or(a, b))
                }
                // the halves differ, so two constants must be (0,1) or (1,0)
                (Node::Const(false), Node::Const(true)) => var,
                (Node::Const(true), Node::Const(false)) => self.not_of(var),
                (Node::Const(a), Node::Const(b)) => {
                    debug_assert!(a == b);
                    unreachable!("equal halves were handled above")
                }
            };
            self.memo.insert(table.to_vec(), node);
            Node::Idx(node)
        }
    }

    let mut synth = Synth {
        k,
        gates: Vec::new(),
        memo: std::collections::HashMap::new(),
        nots: std::collections::HashMap::new(),
        const_false: None,
        const_true: None,
    };
    let table: Vec<bool> = target.bits().collect();
    let output = match synth.build(&table, 0) {
        Node::Idx(n) => n,
        Node::Const(v) => synth.const_node(v),
    };
    Circuit::new(k, synth.gates, output)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bits::bits;

    fn xor_circuit() -> Circuit {
        // (a OR b) AND NOT (a AND b)
        Circuit::new(
            2,
            vec![Gate::Or(0, 1), Gate::And(0, 1), Gate::Not(3), Gate::And(2, 4)],
            5,
        )
        .unwrap()
    }

    #[test]
    fn tt_basics() {
        // constant-0 over two inputs
        let c0 = Circuit::new(2, vec![Gate::Not(0), Gate::And(0, 2)], 3).unwrap();
        assert_eq!(tt(&c0).unwrap(), bits("0000"));

        let ident = Circuit::new(1, vec![], 0).unwrap();
        assert_eq!(tt(&ident).unwrap(), bits("01"));

        assert_eq!(tt(&xor_circuit()).unwrap(), bits("0110"));
    }

    #[test]
    fn tt_msb_first_indexing() {
        // x0 is the most significant index bit: its table is 0^(2^(k-1)) 1^(2^(k-1)).
        for k in 1..=7 {
            let c = Circuit::new(k, vec![], 0).unwrap();
            let t = tt(&c).unwrap();
            let half = 1 << (k - 1);
            for i in 0..(1 << k) {
                assert_eq!(t.bit(i), Some(i >= half));
            }
        }
    }

    #[test]
    fn tt_matches_per_assignment_eval() {
        let c = xor_circuit();
        let t = tt(&c).unwrap();
        for i in 0..4usize {
            let assignment = [(i >> 1) & 1 == 1, i & 1 == 1];
            assert_eq!(t.bit(i), Some(c.eval(&assignment)));
        }
    }

    #[test]
    fn tt_refuses_large_k() {
        let c = Circuit::new(25, vec![], 0).unwrap();
        assert!(matches!(c.tt_words(), Err(CircuitError::TooManyInputs { k: 25 })));
    }

    #[test]
    fn budget_values() {
        assert_eq!(budget(256).unwrap(), Budget { k_max: 24, size_max: 512 });
        assert_eq!(budget(16).unwrap(), Budget { k_max: 8, size_max: 16 });
        assert_eq!(budget(4).unwrap(), Budget { k_max: 2, size_max: 2 });
        assert!(budget(3).is_err());
    }

    #[test]
    fn budget_monotone() {
        let mut prev = budget(4).unwrap();
        for n in 5..=4096 {
            let b = budget(n).unwrap();
            assert!(b.k_max >= prev.k_max && b.size_max >= prev.size_max, "n = {n}");
            prev = b;
        }
    }

    #[test]
    fn enumeration_matches_closed_form_count() {
        for k in 1..=3 {
            for size_max in 0..=2 {
                let b = Budget { k_max: k, size_max };
                let listed = enumerate_circuits(&b, k).unwrap().count();
                assert_eq!(listed as u128, count_circuits(&b, k), "k={k} s={size_max}");
            }
        }
    }

    #[test]
    fn enumeration_k1_size1_catalog() {
        let b = Budget { k_max: 1, size_max: 1 };
        let all: Vec<Circuit> = enumerate_circuits(&b, 1).unwrap().collect();
        // size 0: output = x0; size 1: AND(0,0), OR(0,0), NOT(0), each with
        // output x0 or the gate.
        let expected = vec![
            Circuit::new(1, vec![], 0).unwrap(),
            Circuit::new(1, vec![Gate::And(0, 0)], 0).unwrap(),
            Circuit::new(1, vec![Gate::And(0, 0)], 1).unwrap(),
            Circuit::new(1, vec![Gate::Or(0, 0)], 0).unwrap(),
            Circuit::new(1, vec![Gate::Or(0, 0)], 1).unwrap(),
            Circuit::new(1, vec![Gate::Not(0)], 0).unwrap(),
            Circuit::new(1, vec![Gate::Not(0)], 1).unwrap(),
        ];
        assert_eq!(all, expected);
        assert_eq!(all.len() as u128, count_circuits(&b, 1));
    }

    #[test]
    fn enumeration_duplicate_free_and_canonical() {
        let b = Budget { k_max: 2, size_max: 2 };
        let mut seen = std::collections::HashSet::new();
        for c in enumerate_circuits(&b, 2).unwrap() {
            assert!(c.is_canonical());
            assert!(c.size() <= 2);
            assert_eq!(c.inputs(), 2);
            assert!(seen.insert(c), "duplicate circuit");
        }
    }

    #[test]
    fn enumeration_ordered_by_size() {
        let b = Budget { k_max: 2, size_max: 2 };
        let sizes: Vec<usize> = enumerate_circuits(&b, 2).unwrap().map(|c| c.size()).collect();
        let mut sorted = sizes.clone();
        sorted.sort_unstable();
        assert_eq!(sizes, sorted);
    }

    #[test]
    fn enumeration_guards_preconditions() {
        let b = Budget { k_max: 2, size_max: 2 };
        assert!(matches!(
            enumerate_circuits(&b, 0),
            Err(CircuitError::ZeroInputs)
        ));
        assert!(matches!(
            enumerate_circuits(&b, 3),
            Err(CircuitError::OverBudget { k: 3, k_max: 2 })
        ));
    }

    #[test]
    fn synthesize_round_trip_exhaustive_small() {
        for k in 1..=4usize {
            let total = 1usize << (1 << k);
            // exhaustive over all tables for k <= 2, sampled above
            if k <= 2 {
                for v in 0..total {
                    let target = BitString::from_index(v as u64, 1 << k);
                    let c = synthesize_tt(&target).unwrap();
                    assert_eq!(tt(&c).unwrap(), target, "k={k} v={v:b}");
                }
            }
        }
    }

    #[test]
    fn synthesize_round_trip_sampled() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(7);
        for k in 3..=10usize {
            for _ in 0..20 {
                let len = 1usize << k;
                let target =
                    BitString::from_bits((0..len).map(|_| rng.random::<bool>()).collect());
                let c = synthesize_tt(&target).unwrap();
                assert_eq!(tt(&c).unwrap(), target, "k={k}");
            }
        }
    }

    #[test]
    fn synthesize_examples() {
        let c = synthesize_tt(&bits("0000")).unwrap();
        assert_eq!(c.inputs(), 2);
        assert_eq!(tt(&c).unwrap(), bits("0000"));

        let c = synthesize_tt(&bits("01")).unwrap();
        assert_eq!(c.inputs(), 1);
        assert_eq!(tt(&c).unwrap(), bits("01"));
        assert_eq!(c.size(), 0);

        let c = synthesize_tt(&bits("0110")).unwrap();
        assert_eq!(tt(&c).unwrap(), bits("0110"));

        assert!(synthesize_tt(&bits("011")).is_err());
        assert!(synthesize_tt(&bits("1")).is_err());
    }

    #[test]
    fn text_format_round_trip() {
        let c = xor_circuit();
        let text = c.to_text();
        assert!(text.contains("inputs 2"));
        assert!(text.contains("g2 = OR x0 x1"));
        let back = Circuit::from_text(&text).unwrap();
        assert_eq!(back, c);
    }

    #[test]
    fn validation_rejects_forward_references() {
        assert!(Circuit::new(2, vec![Gate::And(0, 2)], 2).is_err());
        assert!(Circuit::new(2, vec![], 2).is_err());
        assert!(Circuit::new(0, vec![], 0).is_err());
    }
}
