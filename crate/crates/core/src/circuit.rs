//! Gate-list circuits and their text format.
//!
//! ```text
//! # comment
//! .v a b c d
//! h a
//! cx a b
//! rz(pi/4) b
//! ```
//!
//! `.v` declares qubits (may repeat). Every other line is a gate: a kind,
//! optionally followed by parenthesized parameter text, then one or two
//! operands. Any gate with two operands is a two-qubit gate; `cx`, `cz` and
//! `swap` must have two.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{ParseError, ParseErrorKind};

const TWO_QUBIT_KINDS: [&str; 3] = ["cx", "cz", "swap"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Operands {
    One(usize),
    Two(usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Gate {
    pub kind: String,
    pub operands: Operands,
}

impl Gate {
    pub fn single(kind: impl Into<String>, q: usize) -> Self {
        Gate {
            kind: kind.into(),
            operands: Operands::One(q),
        }
    }

    pub fn pair(kind: impl Into<String>, a: usize, b: usize) -> Self {
        Gate {
            kind: kind.into(),
            operands: Operands::Two(a, b),
        }
    }

    pub fn is_two_qubit(&self) -> bool {
        matches!(self.operands, Operands::Two(..))
    }

    /// Operands of a two-qubit gate, in written order.
    pub fn pair_operands(&self) -> Option<(usize, usize)> {
        match self.operands {
            Operands::Two(a, b) => Some((a, b)),
            Operands::One(_) => None,
        }
    }

    pub fn qubits(&self) -> impl Iterator<Item = usize> {
        let (a, b) = match self.operands {
            Operands::One(a) => (a, None),
            Operands::Two(a, b) => (a, Some(b)),
        };
        std::iter::once(a).chain(b)
    }

    /// Same gate with every operand passed through `f`.
    pub fn relabeled(&self, f: impl Fn(usize) -> usize) -> Gate {
        let operands = match self.operands {
            Operands::One(a) => Operands::One(f(a)),
            Operands::Two(a, b) => Operands::Two(f(a), f(b)),
        };
        Gate {
            kind: self.kind.clone(),
            operands,
        }
    }
}

/// An ordered gate list over named qubits.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Circuit {
    qubits: Vec<String>,
    index: HashMap<String, usize>,
    gates: Vec<Gate>,
}

impl Circuit {
    /// Empty circuit over the given qubit names; `None` on a duplicate name.
    pub fn new<I, S>(names: I) -> Option<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut c = Circuit::default();
        for n in names {
            if !c.add_qubit(n.into()) {
                return None;
            }
        }
        Some(c)
    }

    fn add_qubit(&mut self, name: String) -> bool {
        if self.index.contains_key(&name) {
            return false;
        }
        self.index.insert(name.clone(), self.qubits.len());
        self.qubits.push(name);
        true
    }

    /// Appends a gate.
    ///
    /// # Panics
    /// On an out-of-range operand or a two-qubit gate with equal operands.
    pub fn push(&mut self, gate: Gate) {
        for q in gate.qubits() {
            assert!(q < self.qubits.len(), "operand {q} out of range");
        }
        if let Operands::Two(a, b) = gate.operands {
            assert_ne!(a, b, "two-qubit gate with repeated operand");
        }
        self.gates.push(gate);
    }

    pub fn qubits(&self) -> &[String] {
        &self.qubits
    }

    pub fn num_qubits(&self) -> usize {
        self.qubits.len()
    }

    pub fn qubit_index(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    /// Positions of the two-qubit gates, in circuit order.
    pub fn two_qubit_positions(&self) -> Vec<usize> {
        self.gates
            .iter()
            .enumerate()
            .filter(|(_, g)| g.is_two_qubit())
            .map(|(i, _)| i)
            .collect()
    }

    pub fn stats(&self) -> CircuitStats {
        stats(self)
    }

    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

/// Depth, volume and two-qubit count of a circuit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct CircuitStats {
    pub depth: usize,
    pub volume: usize,
    #[serde(rename = "two_qubit_gates")]
    pub two_qubit_count: usize,
}

/// Every gate is one time step; gates sharing a qubit are ordered.
pub fn stats(c: &Circuit) -> CircuitStats {
    let mut level = vec![0usize; c.num_qubits()];
    let mut depth = 0;
    let mut two = 0;
    for g in c.gates() {
        let t = g.qubits().map(|q| level[q]).max().unwrap_or(0) + 1;
        for q in g.qubits() {
            level[q] = t;
        }
        depth = depth.max(t);
        two += usize::from(g.is_two_qubit());
    }
    CircuitStats {
        depth,
        volume: c.gates().len(),
        two_qubit_count: two,
    }
}

impl fmt::Display for Circuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, ".v")?;
        for q in &self.qubits {
            write!(f, " {q}")?;
        }
        writeln!(f)?;
        for g in &self.gates {
            match g.operands {
                Operands::One(a) => writeln!(f, "{} {}", g.kind, self.qubits[a])?,
                Operands::Two(a, b) => {
                    writeln!(f, "{} {} {}", g.kind, self.qubits[a], self.qubits[b])?
                }
            }
        }
        Ok(())
    }
}

impl FromStr for Circuit {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, ParseError> {
        parse_circuit(s)
    }
}

/// Strips a trailing `#` comment and surrounding whitespace.
pub(crate) fn significant(line: &str) -> &str {
    line.split('#').next().unwrap_or("").trim()
}

/// Splits `kind(params) op op` into the kind text and the operand tokens.
fn split_gate(line: &str, lineno: usize) -> Result<(&str, Vec<&str>), ParseError> {
    let end_of_name = line
        .find(|c: char| c.is_whitespace() || c == '(')
        .unwrap_or(line.len());
    let mut kind_end = end_of_name;
    if line[end_of_name..].starts_with('(') {
        let mut depth = 0usize;
        let mut close = None;
        for (i, c) in line[end_of_name..].char_indices() {
            match c {
                '(' => depth += 1,
                ')' => {
                    depth -= 1;
                    if depth == 0 {
                        close = Some(end_of_name + i + 1);
                        break;
                    }
                }
                _ => {}
            }
        }
        kind_end = close.ok_or_else(|| ParseError::malformed(lineno, "unbalanced parentheses"))?;
    }
    let kind = &line[..kind_end];
    if end_of_name == 0 {
        return Err(ParseError::malformed(lineno, "missing gate name"));
    }
    Ok((kind, line[kind_end..].split_whitespace().collect()))
}

pub fn parse_circuit(text: &str) -> Result<Circuit, ParseError> {
    let mut c = Circuit::default();
    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = significant(raw);
        if line.is_empty() {
            continue;
        }
        if line.starts_with('.') {
            let mut toks = line.split_whitespace();
            match toks.next() {
                Some(".v") => {
                    for name in toks {
                        if !c.add_qubit(name.to_string()) {
                            return Err(ParseError::new(
                                lineno,
                                ParseErrorKind::DuplicateQubit(name.into()),
                            ));
                        }
                    }
                }
                Some(other) => {
                    return Err(ParseError::malformed(
                        lineno,
                        format!("unknown directive `{other}`"),
                    ))
                }
                None => unreachable!(),
            }
            continue;
        }

        let (kind, ops) = split_gate(line, lineno)?;
        let resolve = |name: &str| {
            c.qubit_index(name)
                .ok_or_else(|| ParseError::new(lineno, ParseErrorKind::UnknownQubit(name.into())))
        };
        let gate = match ops.as_slice() {
            [a] => {
                if TWO_QUBIT_KINDS.contains(&kind.to_ascii_lowercase().as_str()) {
                    return Err(ParseError::malformed(
                        lineno,
                        format!("`{kind}` needs two operands"),
                    ));
                }
                Gate::single(kind, resolve(a)?)
            }
            [a, b] => {
                let (ia, ib) = (resolve(a)?, resolve(b)?);
                if ia == ib {
                    return Err(ParseError::new(
                        lineno,
                        ParseErrorKind::RepeatedOperand((*a).into()),
                    ));
                }
                Gate::pair(kind, ia, ib)
            }
            [] => return Err(ParseError::malformed(lineno, "gate without operands")),
            _ => {
                return Err(ParseError::malformed(
                    lineno,
                    format!("`{kind}` has {} operands; at most two are supported", ops.len()),
                ))
            }
        };
        c.gates.push(gate);
    }
    Ok(c)
}
