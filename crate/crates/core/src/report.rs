//! JSON run report.
//!
//! Gate indexes in `partitions` count two-qubit gates only, from 0;
//! `circuit_position` and `unrouted` count every gate, from 0.

use serde::Serialize;
use serde_json::Value;

use crate::circuit::{Circuit, CircuitStats};
use crate::device::Device;
use crate::mapper::{MapperConfig, MappingResult};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub fully_mapped: bool,
    pub weights: WeightsReport,
    pub lookahead: usize,
    pub maximal_partition: Option<usize>,
    pub swaps_inserted: usize,
    pub assignment: Vec<AssignmentEntry>,
    pub partitions: Vec<PartitionReport>,
    pub input_stats: CircuitStats,
    pub output_stats: CircuitStats,
    pub unrouted: Vec<usize>,
    pub warnings: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<f64>,
}

/// Weights as exact fractions, e.g. `"1"` or `"1/3"`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WeightsReport {
    pub alpha: String,
    pub beta: String,
    pub gamma: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AssignmentEntry {
    pub pseudo: String,
    pub physical: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PartitionReport {
    pub begin: usize,
    pub end: usize,
    /// A number when it fits in 64 bits, a decimal string otherwise.
    pub mapping_count: Value,
    pub swap_layers: Vec<SwapLayerReport>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SwapLayerReport {
    /// Two-qubit gate the layer runs in front of.
    pub position: usize,
    pub circuit_position: usize,
    pub edges: Vec<[String; 2]>,
}

impl Report {
    pub fn new(circuit: &Circuit, device: &Device, config: &MapperConfig, result: &MappingResult) -> Self {
        let partitions = result
            .partitions
            .iter()
            .map(|p| PartitionReport {
                begin: p.begin,
                end: p.end,
                mapping_count: u64::try_from(&p.mapping_count)
                    .map(Value::from)
                    .unwrap_or_else(|_| Value::from(p.mapping_count.to_string())),
                swap_layers: p
                    .swap_insertions
                    .iter()
                    .map(|s| SwapLayerReport {
                        position: s.position,
                        circuit_position: result.two_qubit_gates[s.position].position,
                        edges: s
                            .swaps
                            .iter()
                            .map(|&(a, b)| [device.name(a).to_string(), device.name(b).to_string()])
                            .collect(),
                    })
                    .collect(),
            })
            .collect();

        let unrouted = result.unrouted_positions();
        let warnings = unrouted
            .iter()
            .map(|&pos| {
                let g = &circuit.gates()[pos];
                let names: Vec<&str> = g.qubits().map(|q| circuit.qubits()[q].as_str()).collect();
                format!(
                    "gate {pos} ({} {}) lies outside the maximal partition and may violate the coupling map",
                    g.kind,
                    names.join(" ")
                )
            })
            .collect();

        Report {
            schema_version: SCHEMA_VERSION,
            fully_mapped: result.fully_mapped,
            weights: WeightsReport {
                alpha: config.weights.alpha.to_string(),
                beta: config.weights.beta.to_string(),
                gamma: config.weights.gamma.to_string(),
            },
            lookahead: config.lookahead,
            maximal_partition: result.maximal,
            swaps_inserted: result.swaps_inserted,
            assignment: result
                .assignment
                .iter()
                .enumerate()
                .map(|(v, &p)| AssignmentEntry {
                    pseudo: circuit.qubits()[v].clone(),
                    physical: device.name(p).to_string(),
                })
                .collect(),
            partitions,
            input_stats: circuit.stats(),
            output_stats: result.mapped_circuit.stats(),
            unrouted,
            warnings,
            wall_time_ms: None,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("plain data");
        s.push('\n');
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::parse_circuit;
    use crate::mapper::map_circuit;

    #[test]
    fn example_report() {
        let c = parse_circuit(".v a b c d\ncx a b\ncx b c\ncx b d\n").unwrap();
        let d = Device::ring(4);
        let cfg = MapperConfig::default();
        let r = map_circuit(&c, &d, cfg.clone()).unwrap();
        let rep = Report::new(&c, &d, &cfg, &r);
        let v: Value = serde_json::from_str(&rep.to_json()).unwrap();
        assert_eq!(v["schema_version"], 1);
        assert_eq!(v["fully_mapped"], true);
        assert_eq!(v["swaps_inserted"], 1);
        assert_eq!(v["weights"]["beta"], "1");
        assert_eq!(v["partitions"].as_array().unwrap().len(), 1);
        assert_eq!(v["partitions"][0]["begin"], 0);
        assert_eq!(v["partitions"][0]["end"], 2);
        assert_eq!(v["partitions"][0]["swap_layers"][0]["position"], 2);
        assert_eq!(v["input_stats"]["two_qubit_gates"], 3);
        assert_eq!(v["output_stats"]["two_qubit_gates"], 4);
        assert!(v.get("wall_time_ms").is_none());
        assert!(v["warnings"].as_array().unwrap().is_empty());
    }

    #[test]
    fn huge_counts_become_strings() {
        let big = num_bigint::BigUint::from(u64::MAX) + 1u32;
        let v = u64::try_from(&big)
            .map(Value::from)
            .unwrap_or_else(|_| Value::from(big.to_string()));
        assert_eq!(v, Value::from("18446744073709551616"));
    }
}
