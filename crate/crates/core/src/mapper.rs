//! Maximal partitions of the two-qubit gate sequence.
//!
//! A mapping family lives in an engine over `n·m` variables, one per
//! (pseudo qubit, physical qubit) pair. Each member set is a partial
//! injective assignment of pseudo qubits to physical qubits. Inside a
//! partition the family tracks positions at the *current* point of the
//! circuit, so applying a SWAP layer renames `vp ↔ vq` for every swapped
//! edge `{p, q}`; closing a partition translates the family back to the
//! positions at the partition's first gate.

use std::ops::RangeInclusive;

use num_bigint::BigUint;
use zdd::{Engine, FamilyRef, Var};

use crate::circuit::{Circuit, Gate};
use crate::device::Device;
use crate::error::MapError;
use crate::layers::{score_layers, select_layer, Layer, LayerFamily, ScoreWeights};

/// Bijection between variables and (pseudo, physical) pairs, pseudo-major.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MapVarTable {
    pseudo: usize,
    physical: usize,
}

impl MapVarTable {
    pub fn new(pseudo: usize, physical: usize) -> Self {
        MapVarTable { pseudo, physical }
    }

    pub fn num_vars(&self) -> u32 {
        (self.pseudo * self.physical) as u32
    }

    pub fn var(&self, v: usize, p: usize) -> Var {
        debug_assert!(v < self.pseudo && p < self.physical);
        (v * self.physical + p + 1) as Var
    }

    pub fn decode(&self, var: Var) -> (usize, usize) {
        let i = var as usize - 1;
        (i / self.physical, i % self.physical)
    }

    pub fn num_pseudo(&self) -> usize {
        self.pseudo
    }

    pub fn num_physical(&self) -> usize {
        self.physical
    }
}

/// Families shared by every step of a run.
#[derive(Debug, Clone)]
pub struct BaseSets {
    /// `from[v]`: `{{vp}}` for every physical `p`.
    pub from: Vec<FamilyRef>,
    /// `to[p]`: `{{vp}}` for every pseudo `v`.
    pub to: Vec<FamilyRef>,
    /// Two-element legal partial mappings placed on a device edge.
    pub valid: FamilyRef,
    /// Pairs that send one pseudo qubit to two places or two pseudo qubits
    /// to one place.
    pub bad: FamilyRef,
}

pub fn build_base_sets(c: &Circuit, d: &Device, eng: &mut Engine) -> Result<BaseSets, MapError> {
    let (n, m) = (c.num_qubits(), d.num_qubits());
    if m < n {
        return Err(MapError::Infeasible {
            pseudo: n,
            physical: m,
        });
    }
    let vars = MapVarTable::new(n, m);
    if eng.num_vars() != vars.num_vars() {
        return Err(MapError::UniverseMismatch {
            expected: vars.num_vars(),
            actual: eng.num_vars(),
        });
    }

    let mut from = Vec::with_capacity(n);
    for v in 0..n {
        let f = eng.from_sets((0..m).map(|p| [vars.var(v, p)]))?;
        from.push(f);
    }
    let mut to = Vec::with_capacity(m);
    for p in 0..m {
        let f = eng.from_sets((0..n).map(|v| [vars.var(v, p)]))?;
        to.push(f);
    }

    let mut bad = eng.empty();
    for &f in from.iter().chain(&to) {
        let pairs = eng.choose(f, 2)?;
        bad = eng.union(bad, pairs)?;
    }

    let mut coupled = eng.empty();
    for &(p, q) in d.edges() {
        let j = eng.join(to[p], to[q])?;
        coupled = eng.union(coupled, j)?;
    }
    // drop {vp, vq}: a pseudo qubit cannot sit on both ends of an edge
    let valid = eng.difference(coupled, bad)?;

    Ok(BaseSets {
        from,
        to,
        valid,
        bad,
    })
}

#[derive(Debug, Clone)]
pub struct MapperConfig {
    pub weights: ScoreWeights,
    /// Upper bound on the depth count of a candidate layer.
    pub lookahead: usize,
}

impl Default for MapperConfig {
    fn default() -> Self {
        MapperConfig {
            weights: ScoreWeights::default(),
            lookahead: 20,
        }
    }
}

/// A two-qubit gate of the circuit and its position in the full gate list.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TwoQubitGate {
    pub position: usize,
    pub qubits: (usize, usize),
}

/// Where each physical track's content came from since a partition began.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrackPermutation {
    current: Vec<usize>,
    origin: Vec<usize>,
}

impl TrackPermutation {
    pub fn identity(m: usize) -> Self {
        TrackPermutation {
            current: (0..m).collect(),
            origin: (0..m).collect(),
        }
    }

    pub fn swap(&mut self, p: usize, q: usize) {
        let (sp, sq) = (self.origin[p], self.origin[q]);
        self.origin[p] = sq;
        self.origin[q] = sp;
        self.current[sp] = q;
        self.current[sq] = p;
    }

    /// Track that now holds what started on `start`.
    pub fn current(&self, start: usize) -> usize {
        self.current[start]
    }

    /// Starting track of what now sits on `track`.
    pub fn origin(&self, track: usize) -> usize {
        self.origin[track]
    }

    pub fn is_identity(&self) -> bool {
        self.current.iter().enumerate().all(|(i, &c)| i == c)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SwapInsertion {
    /// Index into the two-qubit gate sequence; the layer runs right before it.
    pub position: usize,
    pub layer: Layer,
    /// Physical endpoints of each SWAP.
    pub swaps: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    /// First and last two-qubit gate index, inclusive.
    pub begin: usize,
    pub end: usize,
    /// Every legal assignment of the block's pseudo qubits, as positions at
    /// the block's first gate.
    pub phi: FamilyRef,
    pub mapping_count: BigUint,
    pub swap_insertions: Vec<SwapInsertion>,
}

impl Partition {
    pub fn len(&self) -> usize {
        self.end - self.begin + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn swap_count(&self) -> usize {
        self.swap_insertions.iter().map(|s| s.swaps.len()).sum()
    }
}

pub struct Mapper<'a> {
    circuit: &'a Circuit,
    device: &'a Device,
    config: MapperConfig,
    vars: MapVarTable,
    engine: Engine,
    base: BaseSets,
    gates: Vec<TwoQubitGate>,
    gate_maps: Vec<Option<FamilyRef>>,
    layers: LayerFamily,
}

impl<'a> Mapper<'a> {
    pub fn new(circuit: &'a Circuit, device: &'a Device, config: MapperConfig) -> Result<Self, MapError> {
        let (n, m) = (circuit.num_qubits(), device.num_qubits());
        if m < n {
            return Err(MapError::Infeasible {
                pseudo: n,
                physical: m,
            });
        }
        let vars = MapVarTable::new(n, m);
        let mut engine = Engine::new(vars.num_vars());
        let mut names = Vec::with_capacity(n * m);
        for v in circuit.qubits() {
            for p in device.qubits() {
                names.push(format!("{v}@{p}"));
            }
        }
        engine.set_var_names(names);
        let base = build_base_sets(circuit, device, &mut engine)?;
        let gates: Vec<TwoQubitGate> = circuit
            .gates()
            .iter()
            .enumerate()
            .filter_map(|(position, g)| {
                g.pair_operands().map(|qubits| TwoQubitGate { position, qubits })
            })
            .collect();
        Ok(Mapper {
            circuit,
            device,
            config,
            vars,
            engine,
            base,
            gate_maps: vec![None; gates.len()],
            gates,
            layers: LayerFamily::build(device)?,
        })
    }

    pub fn engine(&self) -> &Engine {
        &self.engine
    }

    pub fn engine_mut(&mut self) -> &mut Engine {
        &mut self.engine
    }

    pub fn vars(&self) -> MapVarTable {
        self.vars
    }

    pub fn base(&self) -> &BaseSets {
        &self.base
    }

    pub fn config(&self) -> &MapperConfig {
        &self.config
    }

    pub fn layers(&self) -> &LayerFamily {
        &self.layers
    }

    pub(crate) fn layers_mut(&mut self) -> &mut LayerFamily {
        &mut self.layers
    }

    pub fn two_qubit_gates(&self) -> &[TwoQubitGate] {
        &self.gates
    }

    pub fn num_two_qubit_gates(&self) -> usize {
        self.gates.len()
    }

    /// Every placement of two-qubit gate `i` on a device edge:
    /// `(from(v) ⊔ from(w)) ∩ valid`.
    pub fn gate_map(&mut self, i: usize) -> Result<FamilyRef, MapError> {
        if let Some(f) = self.gate_maps.get(i).copied().flatten() {
            return Ok(f);
        }
        let (v, w) = self.gates.get(i).ok_or(MapError::NotTwoQubit(i))?.qubits;
        let both = self.engine.join(self.base.from[v], self.base.from[w])?;
        let f = self.engine.intersection(both, self.base.valid)?;
        self.gate_maps[i] = Some(f);
        Ok(f)
    }

    /// `(m ⊔ map(i)) ↘ bad`; empty when `m` cannot absorb gate `i`.
    pub fn merge(&mut self, m: FamilyRef, i: usize) -> Result<FamilyRef, MapError> {
        let g = self.gate_map(i)?;
        let joined = self.engine.join(m, g)?;
        Ok(self.engine.nonsupersets(joined, self.base.bad)?)
    }

    fn layer_swaps(&self, layer: &Layer) -> Result<Vec<(usize, usize)>, MapError> {
        let swaps = layer.pairs(self.device);
        let mut used = vec![false; self.vars.num_physical()];
        for &(p, q) in &swaps {
            for x in [p, q] {
                if std::mem::replace(&mut used[x], true) {
                    return Err(MapError::OverlappingLayer(x));
                }
            }
        }
        Ok(swaps)
    }

    /// Exchanges the assignments to both ends of every swapped edge.
    pub fn swap_family(&mut self, m: FamilyRef, layer: &Layer) -> Result<FamilyRef, MapError> {
        let swaps = self.layer_swaps(layer)?;
        let mut pairs = Vec::with_capacity(swaps.len() * self.vars.num_pseudo());
        for &(p, q) in &swaps {
            for v in 0..self.vars.num_pseudo() {
                pairs.push((self.vars.var(v, p), self.vars.var(v, q)));
            }
        }
        Ok(self.engine.rename_by_pairs(m, &pairs)?)
    }

    /// [`Mapper::swap_family`] that also records the swaps in `tracks`.
    pub fn apply_layer(
        &mut self,
        m: FamilyRef,
        layer: &Layer,
        tracks: &mut TrackPermutation,
    ) -> Result<FamilyRef, MapError> {
        let r = self.swap_family(m, layer)?;
        for (p, q) in layer.pairs(self.device) {
            tracks.swap(p, q);
        }
        Ok(r)
    }

    /// Physical qubits used by at least one member of `m`.
    pub fn image(&self, m: FamilyRef) -> Result<Vec<usize>, MapError> {
        let mut hit = vec![false; self.vars.num_physical()];
        for var in self.engine.support(m)? {
            hit[self.vars.decode(var).1] = true;
        }
        Ok((0..hit.len()).filter(|&p| hit[p]).collect())
    }

    /// Rewrites a current-position family into starting positions.
    fn at_start_positions(&mut self, m: FamilyRef, tracks: &TrackPermutation) -> Result<FamilyRef, MapError> {
        if tracks.is_identity() {
            return Ok(m);
        }
        let mut perm = Vec::with_capacity(self.vars.num_vars() as usize);
        for v in 0..self.vars.num_pseudo() {
            for track in 0..self.vars.num_physical() {
                perm.push(self.vars.var(v, tracks.origin(track)));
            }
        }
        Ok(self.engine.permute(m, &perm)?)
    }

    fn open_block(&mut self, i: usize) -> Result<FamilyRef, MapError> {
        let f = self.gate_map(i)?;
        if f.is_empty() {
            return Err(MapError::UnmappableGate {
                index: i,
                position: self.gates[i].position,
            });
        }
        Ok(f)
    }

    fn close_block(
        &mut self,
        begin: usize,
        end: usize,
        m: FamilyRef,
        tracks: &TrackPermutation,
        swap_insertions: Vec<SwapInsertion>,
    ) -> Result<Partition, MapError> {
        let phi = self.at_start_positions(m, tracks)?;
        Ok(Partition {
            begin,
            end,
            phi,
            mapping_count: self.engine.count_sets(phi)?,
            swap_insertions,
        })
    }

    /// Splits the two-qubit gates into consecutive blocks, extending a block
    /// with the best-scoring SWAP layer whenever the next gate does not fit.
    pub fn find_maximal_partitions(&mut self) -> Result<Vec<Partition>, MapError> {
        let k = self.gates.len();
        let mut partitions = Vec::new();
        if k == 0 {
            return Ok(partitions);
        }
        let physical = self.vars.num_physical();
        let mut begin = 0;
        let mut m = self.open_block(0)?;
        let mut tracks = TrackPermutation::identity(physical);
        let mut insertions = Vec::new();

        for i in 1..k {
            let merged = self.merge(m, i)?;
            if !merged.is_empty() {
                m = merged;
                continue;
            }
            let scores = score_layers(self, m, i)?;
            match select_layer(&scores) {
                Some(best) => {
                    let layer = best.layer.clone();
                    let swapped = self.apply_layer(m, &layer, &mut tracks)?;
                    m = self.merge(swapped, i)?;
                    debug_assert!(!m.is_empty(), "positive score implies a merge");
                    insertions.push(SwapInsertion {
                        position: i,
                        swaps: layer.pairs(self.device),
                        layer,
                    });
                }
                None => {
                    let done = std::mem::take(&mut insertions);
                    partitions.push(self.close_block(begin, i - 1, m, &tracks, done)?);
                    begin = i;
                    m = self.open_block(i)?;
                    tracks = TrackPermutation::identity(physical);
                }
            }
        }
        partitions.push(self.close_block(begin, k - 1, m, &tracks, insertions)?);
        Ok(partitions)
    }

    /// Runs the partitioning, picks the maximal partition and rewrites the
    /// circuit onto the device.
    pub fn run(mut self) -> Result<MappingResult, MapError> {
        let partitions = self.find_maximal_partitions()?;
        let maximal = maximal_partition(&partitions);
        let chosen = maximal.map(|j| &partitions[j]);
        let assignment = choose_assignment(&self.engine, self.vars, chosen)?;
        let (mapped_circuit, swaps_inserted) =
            emit_mapped_circuit(self.circuit, self.device, &self.gates, chosen, &assignment);
        Ok(MappingResult {
            fully_mapped: partitions.len() <= 1,
            assignment,
            mapped_circuit,
            maximal,
            swaps_inserted,
            partitions,
            two_qubit_gates: self.gates,
            engine: self.engine,
            vars: self.vars,
        })
    }
}

/// Index of the longest partition, earliest on ties.
pub fn maximal_partition(partitions: &[Partition]) -> Option<usize> {
    let mut best: Option<usize> = None;
    for (j, p) in partitions.iter().enumerate() {
        if best.is_none_or(|b| p.len() > partitions[b].len()) {
            best = Some(j);
        }
    }
    best
}

/// First member of the partition's family in variable order, completed by
/// giving every remaining pseudo qubit the lowest free physical qubit.
pub fn choose_assignment(
    engine: &Engine,
    vars: MapVarTable,
    partition: Option<&Partition>,
) -> Result<Vec<usize>, MapError> {
    let mut assignment: Vec<Option<usize>> = vec![None; vars.num_pseudo()];
    let mut taken = vec![false; vars.num_physical()];
    if let Some(p) = partition {
        let first = engine
            .enumerate(p.phi)?
            .next()
            .expect("partition families are nonempty");
        for var in first {
            let (v, q) = vars.decode(var);
            assignment[v] = Some(q);
            taken[q] = true;
        }
    }
    let mut free = (0..vars.num_physical()).filter(|&q| !taken[q]);
    Ok(assignment
        .into_iter()
        .map(|a| a.unwrap_or_else(|| free.next().expect("at least as many physical qubits")))
        .collect())
}

/// Rewrites `circuit` onto physical qubits starting from `assignment`, with
/// the SWAP layers of `partition` inserted in front of their gates.
/// Returns the new circuit and the number of SWAPs inserted.
pub fn emit_mapped_circuit(
    circuit: &Circuit,
    device: &Device,
    gates: &[TwoQubitGate],
    partition: Option<&Partition>,
    assignment: &[usize],
) -> (Circuit, usize) {
    let mut out = Circuit::new(device.qubits().iter().cloned()).expect("unique device names");
    let mut loc = assignment.to_vec();
    let mut occupant: Vec<Option<usize>> = vec![None; device.num_qubits()];
    for (v, &p) in loc.iter().enumerate() {
        occupant[p] = Some(v);
    }
    let mut layers_at = vec![None; circuit.gates().len()];
    if let Some(p) = partition {
        for ins in &p.swap_insertions {
            layers_at[gates[ins.position].position] = Some(&ins.swaps);
        }
    }
    let mut inserted = 0;
    for (pos, gate) in circuit.gates().iter().enumerate() {
        if let Some(swaps) = layers_at[pos] {
            for &(p, q) in swaps {
                out.push(Gate::pair("swap", p, q));
                occupant.swap(p, q);
                for x in [p, q] {
                    if let Some(v) = occupant[x] {
                        loc[v] = x;
                    }
                }
                inserted += 1;
            }
        }
        out.push(gate.relabeled(|v| loc[v]));
    }
    (out, inserted)
}

/// Outcome of a mapping run. Owns the engine the partition families live in.
#[derive(Debug)]
pub struct MappingResult {
    /// Physical qubit of every pseudo qubit at the start of the circuit.
    pub assignment: Vec<usize>,
    pub mapped_circuit: Circuit,
    pub partitions: Vec<Partition>,
    pub maximal: Option<usize>,
    /// True when a single partition covers every two-qubit gate.
    pub fully_mapped: bool,
    pub swaps_inserted: usize,
    pub two_qubit_gates: Vec<TwoQubitGate>,
    engine: Engine,
    vars: MapVarTable,
}

impl MappingResult {
    pub fn engine(&self) -> &Engine {
        &self.engine
    }

    pub fn vars(&self) -> MapVarTable {
        self.vars
    }

    pub fn maximal_partition(&self) -> Option<&Partition> {
        self.maximal.map(|j| &self.partitions[j])
    }

    /// Members of partition `j` as `(pseudo, physical)` lists.
    pub fn mappings(&self, j: usize) -> Vec<Vec<(usize, usize)>> {
        self.engine
            .enumerate(self.partitions[j].phi)
            .expect("own family")
            .map(|set| set.into_iter().map(|v| self.vars.decode(v)).collect())
            .collect()
    }

    /// Whether partition `j` contains the given assignment.
    pub fn contains_mapping(&self, j: usize, pairs: &[(usize, usize)]) -> bool {
        let set: Vec<Var> = pairs.iter().map(|&(v, p)| self.vars.var(v, p)).collect();
        self.engine
            .contains(self.partitions[j].phi, &set)
            .expect("own family")
    }

    /// Circuit positions from the first to the last gate of the maximal
    /// partition; couplings are guaranteed only inside this span.
    pub fn routed_span(&self) -> Option<RangeInclusive<usize>> {
        self.maximal_partition().map(|p| {
            self.two_qubit_gates[p.begin].position..=self.two_qubit_gates[p.end].position
        })
    }

    /// Circuit positions of two-qubit gates outside the maximal partition.
    pub fn unrouted_positions(&self) -> Vec<usize> {
        let Some(p) = self.maximal_partition() else {
            return Vec::new();
        };
        self.two_qubit_gates
            .iter()
            .enumerate()
            .filter(|(i, _)| *i < p.begin || *i > p.end)
            .map(|(_, g)| g.position)
            .collect()
    }
}

/// Maps `circuit` onto `device`.
pub fn map_circuit(circuit: &Circuit, device: &Device, config: MapperConfig) -> Result<MappingResult, MapError> {
    Mapper::new(circuit, device, config)?.run()
}
