//! Coupling graphs.
//!
//! Device files declare qubits with `.q` and list one undirected edge per
//! line. A generator string `ring:<n>` or `path:<n>` may stand in for a
//! whole file; generated qubits are named `q0..q{n-1}` and, for `n <= 26`,
//! also answer to the letters `A`, `B`, ...

use std::collections::HashMap;
use std::str::FromStr;

use crate::circuit::significant;
use crate::error::{ParseError, ParseErrorKind};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Device {
    qubits: Vec<String>,
    index: HashMap<String, usize>,
    /// Deduplicated edges `(p, q)` with `p < q`, in declaration order.
    edges: Vec<(usize, usize)>,
    edge_index: HashMap<(usize, usize), usize>,
    neighbors: Vec<Vec<usize>>,
    lettered: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Topology {
    Ring,
    Path,
}

impl Device {
    /// Device without edges; `None` on a duplicate name.
    pub fn new<I, S>(names: I) -> Option<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut d = Device {
            qubits: Vec::new(),
            index: HashMap::new(),
            edges: Vec::new(),
            edge_index: HashMap::new(),
            neighbors: Vec::new(),
            lettered: false,
        };
        for n in names {
            if !d.add_qubit(n.into()) {
                return None;
            }
        }
        Some(d)
    }

    fn add_qubit(&mut self, name: String) -> bool {
        if self.index.contains_key(&name) {
            return false;
        }
        self.index.insert(name.clone(), self.qubits.len());
        self.qubits.push(name);
        self.neighbors.push(Vec::new());
        true
    }

    /// Adds the undirected edge `{p, q}`. Returns `false` if it was already
    /// present.
    ///
    /// # Panics
    /// On a self-loop or an out-of-range qubit.
    pub fn add_edge(&mut self, p: usize, q: usize) -> bool {
        assert!(p != q, "self-loop");
        assert!(p < self.qubits.len() && q < self.qubits.len());
        let key = (p.min(q), p.max(q));
        if self.edge_index.contains_key(&key) {
            return false;
        }
        self.edge_index.insert(key, self.edges.len());
        self.edges.push(key);
        self.neighbors[p].push(q);
        self.neighbors[q].push(p);
        true
    }

    pub fn generated(topology: Topology, n: usize) -> Self {
        let mut d = Device::new((0..n).map(|i| format!("q{i}"))).unwrap();
        d.lettered = n <= 26;
        let links = match topology {
            Topology::Ring if n > 2 => n,
            _ => n.saturating_sub(1),
        };
        for i in 0..links {
            d.add_edge(i, (i + 1) % n);
        }
        d
    }

    pub fn ring(n: usize) -> Self {
        Device::generated(Topology::Ring, n)
    }

    pub fn path(n: usize) -> Self {
        Device::generated(Topology::Path, n)
    }

    /// Recognizes `ring:<n>` / `path:<n>`. `None` if `text` is not a
    /// generator string at all.
    pub fn from_generator(text: &str) -> Option<Result<Self, String>> {
        let (kind, n) = text.trim().split_once(':')?;
        let topology = match kind {
            "ring" => Topology::Ring,
            "path" => Topology::Path,
            _ => return None,
        };
        Some(
            n.parse::<usize>()
                .map(|n| Device::generated(topology, n))
                .map_err(|_| format!("bad qubit count in `{text}`")),
        )
    }

    pub fn num_qubits(&self) -> usize {
        self.qubits.len()
    }

    pub fn qubits(&self) -> &[String] {
        &self.qubits
    }

    pub fn name(&self, p: usize) -> &str {
        &self.qubits[p]
    }

    pub fn qubit_index(&self, name: &str) -> Option<usize> {
        if let Some(&i) = self.index.get(name) {
            return Some(i);
        }
        if !self.lettered {
            return None;
        }
        match name.as_bytes() {
            [c @ b'A'..=b'Z'] => {
                let i = (c - b'A') as usize;
                (i < self.qubits.len()).then_some(i)
            }
            _ => None,
        }
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_id(&self, p: usize, q: usize) -> Option<usize> {
        self.edge_index.get(&(p.min(q), p.max(q))).copied()
    }

    pub fn has_edge(&self, p: usize, q: usize) -> bool {
        self.edge_id(p, q).is_some()
    }

    pub fn neighbors(&self, p: usize) -> &[usize] {
        &self.neighbors[p]
    }

    /// Edge ids incident to `p`, ascending.
    pub fn incident_edges(&self, p: usize) -> Vec<usize> {
        let mut ids: Vec<usize> = self.neighbors[p]
            .iter()
            .map(|&q| self.edge_id(p, q).unwrap())
            .collect();
        ids.sort_unstable();
        ids
    }
}

impl FromStr for Device {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, ParseError> {
        parse_device(s)
    }
}

pub fn parse_device(text: &str) -> Result<Device, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, significant(l)))
        .filter(|(_, l)| !l.is_empty())
        .peekable();

    if let Some(&(lineno, first)) = lines.peek() {
        if let Some(generated) = Device::from_generator(first) {
            let d = generated.map_err(|m| ParseError::malformed(lineno, m))?;
            lines.next();
            if let Some((extra, _)) = lines.next() {
                return Err(ParseError::malformed(
                    extra,
                    "nothing may follow a generator line",
                ));
            }
            return Ok(d);
        }
    }

    let mut d = Device::new(Vec::<String>::new()).unwrap();
    for (lineno, line) in lines {
        let toks: Vec<&str> = line.split_whitespace().collect();
        match toks.as_slice() {
            [".q", names @ ..] => {
                for name in names {
                    if !d.add_qubit(name.to_string()) {
                        return Err(ParseError::new(
                            lineno,
                            ParseErrorKind::DuplicateQubit(name.to_string()),
                        ));
                    }
                }
            }
            [directive, ..] if directive.starts_with('.') => {
                return Err(ParseError::malformed(
                    lineno,
                    format!("unknown directive `{directive}`"),
                ))
            }
            [a, b] => {
                let resolve = |n: &str| {
                    d.qubit_index(n).ok_or_else(|| {
                        ParseError::new(lineno, ParseErrorKind::UnknownQubit(n.to_string()))
                    })
                };
                let (p, q) = (resolve(a)?, resolve(b)?);
                if p == q {
                    return Err(ParseError::new(
                        lineno,
                        ParseErrorKind::SelfLoop(a.to_string()),
                    ));
                }
                d.add_edge(p, q);
            }
            _ => {
                return Err(ParseError::malformed(
                    lineno,
                    "expected `.q <names>` or `<qubit> <qubit>`",
                ))
            }
        }
    }
    Ok(d)
}
