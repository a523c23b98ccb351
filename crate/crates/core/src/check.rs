//! Replays a mapped circuit against the original one.
//!
//! The checker knows nothing about how a mapping was found. Starting from an
//! initial placement it walks the mapped gates in order: each one is either
//! the next original gate under the current placement, or an inserted SWAP
//! on a device edge that exchanges the contents of two physical qubits.

use std::fmt;
use std::ops::RangeInclusive;

use thiserror::Error;

use crate::circuit::{Circuit, Gate};
use crate::device::Device;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ReplayFailure {
    /// A two-qubit gate inside the checked span acts on a non-adjacent pair.
    NotAnEdge { p: String, q: String },
    /// Neither the next original gate nor a SWAP on an edge.
    Mismatch,
    /// The mapped circuit ended with `remaining` original gates unaccounted.
    MissingGates { remaining: usize },
    /// A mapped qubit name the device does not know.
    UnknownQubit(String),
    /// The initial placement is not injective or names a missing qubit.
    BadAssignment,
}

impl fmt::Display for ReplayFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReplayFailure::NotAnEdge { p, q } => write!(f, "`{p}` and `{q}` are not coupled"),
            ReplayFailure::Mismatch => write!(f, "gate does not follow the original circuit"),
            ReplayFailure::MissingGates { remaining } => {
                write!(f, "{remaining} original gates missing")
            }
            ReplayFailure::UnknownQubit(n) => write!(f, "unknown device qubit `{n}`"),
            ReplayFailure::BadAssignment => write!(f, "initial placement is not injective"),
        }
    }
}

/// Failure at mapped gate `gate_index` (0-based, counting every gate).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("mapped gate #{gate_index}: {reason}")]
pub struct ReplayError {
    pub gate_index: usize,
    pub reason: ReplayFailure,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ReplaySummary {
    pub inserted_swaps: usize,
    pub checked_two_qubit_gates: usize,
}

#[derive(Clone)]
struct State {
    at: usize,
    next: usize,
    loc: Vec<usize>,
    summary: ReplaySummary,
}

struct Replay<'a> {
    original: &'a Circuit,
    device: &'a Device,
    gates: Vec<Gate>,
    names: Vec<String>,
    span: Option<RangeInclusive<usize>>,
}

impl Replay<'_> {
    fn in_span(&self, position: usize) -> bool {
        self.span.as_ref().is_some_and(|s| s.contains(&position))
    }

    fn fail(&self, at: usize, reason: ReplayFailure) -> ReplayError {
        ReplayError {
            gate_index: at,
            reason,
        }
    }

    fn run(&self, mut s: State) -> Result<ReplaySummary, ReplayError> {
        while s.at < self.gates.len() {
            let g = &self.gates[s.at];
            let pending = self.original.gates().get(s.next);
            if let Some((p, q)) = g.pair_operands() {
                let position = s.next.min(self.original.gates().len().saturating_sub(1));
                if !self.device.has_edge(p, q) && self.in_span(position) {
                    return Err(self.fail(
                        s.at,
                        ReplayFailure::NotAnEdge {
                            p: self.names[p].clone(),
                            q: self.names[q].clone(),
                        },
                    ));
                }
            }
            let matches = pending.is_some_and(|o| *g == o.relabeled(|v| s.loc[v]));
            let movable = g.kind == "swap"
                && g.pair_operands().is_some_and(|(p, q)| self.device.has_edge(p, q));

            match (matches, movable) {
                (true, true) => {
                    // an original swap and an inserted one look alike here
                    let mut alt = s.clone();
                    self.take_original(&mut s, g);
                    match self.run(s) {
                        Ok(done) => return Ok(done),
                        Err(first) => {
                            self.take_swap(&mut alt, g);
                            return self.run(alt).map_err(|second| {
                                if second.gate_index >= first.gate_index {
                                    second
                                } else {
                                    first
                                }
                            });
                        }
                    }
                }
                (true, false) => self.take_original(&mut s, g),
                (false, true) => self.take_swap(&mut s, g),
                (false, false) => return Err(self.fail(s.at, ReplayFailure::Mismatch)),
            }
        }
        let remaining = self.original.gates().len() - s.next;
        if remaining > 0 {
            return Err(self.fail(s.at, ReplayFailure::MissingGates { remaining }));
        }
        Ok(s.summary)
    }

    fn take_original(&self, s: &mut State, g: &Gate) {
        if g.is_two_qubit() && self.in_span(s.next) {
            s.summary.checked_two_qubit_gates += 1;
        }
        s.next += 1;
        s.at += 1;
    }

    fn take_swap(&self, s: &mut State, g: &Gate) {
        let (p, q) = g.pair_operands().unwrap();
        for l in s.loc.iter_mut() {
            if *l == p {
                *l = q;
            } else if *l == q {
                *l = p;
            }
        }
        s.summary.inserted_swaps += 1;
        s.at += 1;
    }
}

/// Checks that `mapped` runs `original` on `device` from the placement
/// `assignment` (pseudo qubit index to physical qubit index), and that every
/// two-qubit gate whose original position lies in `span` is coupled.
///
/// `mapped` names physical qubits by their device names.
pub fn replay(
    original: &Circuit,
    device: &Device,
    mapped: &Circuit,
    assignment: &[usize],
    span: Option<RangeInclusive<usize>>,
) -> Result<ReplaySummary, ReplayError> {
    let mut to_device = Vec::with_capacity(mapped.num_qubits());
    for name in mapped.qubits() {
        match device.qubit_index(name) {
            Some(p) => to_device.push(p),
            None => {
                return Err(ReplayError {
                    gate_index: 0,
                    reason: ReplayFailure::UnknownQubit(name.clone()),
                })
            }
        }
    }
    let mut seen = vec![false; device.num_qubits()];
    let injective = assignment.len() == original.num_qubits()
        && assignment
            .iter()
            .all(|&p| p < seen.len() && !std::mem::replace(&mut seen[p], true));
    if !injective {
        return Err(ReplayError {
            gate_index: 0,
            reason: ReplayFailure::BadAssignment,
        });
    }

    let replay = Replay {
        original,
        device,
        gates: mapped
            .gates()
            .iter()
            .map(|g| g.relabeled(|x| to_device[x]))
            .collect(),
        names: device.qubits().to_vec(),
        span,
    };
    replay.run(State {
        at: 0,
        next: 0,
        loc: assignment.to_vec(),
        summary: ReplaySummary::default(),
    })
}
