//! Qubit mapping by maximal partitions.
//!
//! The two-qubit gates of a circuit are split into consecutive blocks. For
//! each block the set of every legal placement of its pseudo qubits on the
//! device is kept as one ZDD, and a block is stretched across a stuck gate by
//! inserting the best-scoring layer of parallel SWAPs.
//!
//! ```
//! use zddmap::{map_circuit, Device, MapperConfig};
//!
//! let circuit = ".v a b c d\ncx a b\ncx b c\ncx b d\n".parse().unwrap();
//! let result = map_circuit(&circuit, &Device::ring(4), MapperConfig::default()).unwrap();
//! assert!(result.fully_mapped);
//! assert_eq!(result.swaps_inserted, 1);
//! ```

pub mod check;
pub mod circuit;
pub mod device;
pub mod error;
pub mod layers;
pub mod mapper;
pub mod report;

pub use check::{replay, ReplayError, ReplayFailure, ReplaySummary};
pub use circuit::{parse_circuit, Circuit, CircuitStats, Gate, Operands};
pub use device::{parse_device, Device, Topology};
pub use error::{MapError, ParseError, ParseErrorKind};
pub use layers::{Layer, LayerFamily, LayerScore, ScoreWeights};
pub use mapper::{
    map_circuit, MapVarTable, Mapper, MapperConfig, MappingResult, Partition, SwapInsertion,
    TwoQubitGate,
};
pub use report::Report;
