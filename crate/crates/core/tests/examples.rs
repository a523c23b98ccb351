//! The four-qubit example circuit on a four-qubit ring, step by step.

use std::collections::BTreeSet;

use zdd::FamilyRef;
use zddmap::layers::score_layers;
use zddmap::{map_circuit, parse_circuit, replay, Circuit, Device, Layer, Mapper, MapperConfig};

const EXAMPLE: &str = ".v a b c d\ncx a b\ncx b c\ncx b d\n";

fn example() -> (Circuit, Device) {
    (parse_circuit(EXAMPLE).unwrap(), Device::ring(4))
}

/// Parses `aA bB` style listings: lowercase pseudo, uppercase physical.
fn sets(listing: &[&str]) -> BTreeSet<Vec<(usize, usize)>> {
    listing
        .iter()
        .map(|s| {
            let mut set: Vec<(usize, usize)> = s
                .split_whitespace()
                .map(|t| {
                    let b = t.as_bytes();
                    ((b[0] - b'a') as usize, (b[1] - b'A') as usize)
                })
                .collect();
            set.sort_unstable();
            set
        })
        .collect()
}

fn members(mapper: &Mapper<'_>, f: FamilyRef) -> BTreeSet<Vec<(usize, usize)>> {
    let vars = mapper.vars();
    mapper
        .engine()
        .enumerate(f)
        .unwrap()
        .map(|s| s.into_iter().map(|v| vars.decode(v)).collect())
        .collect()
}

#[test]
fn from_and_to() {
    let (c, d) = example();
    let mapper = Mapper::new(&c, &d, MapperConfig::default()).unwrap();
    let base = mapper.base();
    assert_eq!(members(&mapper, base.from[0]), sets(&["aA", "aB", "aC", "aD"]));
    assert_eq!(members(&mapper, base.to[0]), sets(&["aA", "bA", "cA", "dA"]));
}

#[test]
fn gate_maps() {
    let (c, d) = example();
    let mut mapper = Mapper::new(&c, &d, MapperConfig::default()).unwrap();
    let m1 = mapper.gate_map(0).unwrap();
    assert_eq!(
        members(&mapper, m1),
        sets(&["aA bB", "aB bC", "aC bD", "aD bA", "aB bA", "aC bB", "aD bC", "aA bD"])
    );
    let m2 = mapper.gate_map(1).unwrap();
    assert_eq!(
        members(&mapper, m2),
        sets(&["bA cB", "bB cC", "bC cD", "bD cA", "bB cA", "bC cB", "bD cC", "bA cD"])
    );
}

#[test]
fn two_gate_merge() {
    let (c, d) = example();
    let mut mapper = Mapper::new(&c, &d, MapperConfig::default()).unwrap();
    let m1 = mapper.gate_map(0).unwrap();
    let m12 = mapper.merge(m1, 1).unwrap();
    assert_eq!(
        members(&mapper, m12),
        sets(&[
            "aA bB cC", "aB bC cD", "aC bD cA", "aD bA cB", "aA bD cC", "aB bA cD", "aC bB cA",
            "aD bC cB",
        ])
    );
    // the raw join still holds illegal sets such as {aA, bB, bA, cB}
    let m2 = mapper.gate_map(1).unwrap();
    let raw = mapper.engine_mut().join(m1, m2).unwrap();
    assert!(members(&mapper, raw).contains(&vec![(0, 0), (1, 0), (1, 1), (2, 1)]));
    assert!(mapper.merge(m12, 2).unwrap().is_empty());
}

#[test]
fn valid_excludes_split_qubits() {
    let c = parse_circuit(".v a b\ncx a b\n").unwrap();
    let d = Device::path(2);
    let mapper = Mapper::new(&c, &d, MapperConfig::default()).unwrap();
    assert_eq!(members(&mapper, mapper.base().valid), sets(&["aA bB", "aB bA"]));
}

#[test]
fn ring_layers() {
    let d = Device::ring(4);
    let layers = zddmap::LayerFamily::build(&d).unwrap();
    // edges in declaration order: AB, BC, CD, DA
    let got: BTreeSet<Layer> = layers.members().into_iter().collect();
    let want: BTreeSet<Layer> = [
        vec![],
        vec![0],
        vec![1],
        vec![2],
        vec![3],
        vec![0, 2],
        vec![1, 3],
    ]
    .into_iter()
    .map(Layer::new)
    .collect();
    assert_eq!(got, want);
}

#[test]
fn stuck_gate_scores() {
    let (c, d) = example();
    let mut mapper = Mapper::new(&c, &d, MapperConfig::default()).unwrap();
    let m1 = mapper.gate_map(0).unwrap();
    let m12 = mapper.merge(m1, 1).unwrap();
    let scores = score_layers(&mut mapper, m12, 2).unwrap();
    // the image covers every qubit, so all six nonempty layers compete
    assert_eq!(scores.len(), 6);
    for s in &scores {
        let want: u32 = if s.layer.len() == 1 { 8 } else { 0 };
        assert_eq!(s.map_count, want.into(), "{:?}", s.layer);
        assert_eq!(s.depth_count, usize::from(want > 0));
    }
    let best = zddmap::layers::select_layer(&scores).unwrap();
    assert_eq!(best.layer, Layer::new(vec![0]));
}

#[test]
fn end_to_end() {
    let (c, d) = example();
    let r = map_circuit(&c, &d, MapperConfig::default()).unwrap();
    assert!(r.fully_mapped);
    assert_eq!(r.partitions.len(), 1);
    assert_eq!(r.swaps_inserted, 1);
    assert_eq!(r.partitions[0].swap_insertions[0].position, 2);
    assert!(r.contains_mapping(0, &[(0, 0), (1, 1), (2, 2), (3, 3)]));
    for set in r.mappings(0) {
        assert_eq!(set.len(), 4);
    }
    let span = r.routed_span();
    assert_eq!(span, Some(0..=2));
    replay(&c, &d, &r.mapped_circuit, &r.assignment, span).unwrap();
    assert!(r.unrouted_positions().is_empty());
    // AB wins the four-way tie among single SWAPs
    assert_eq!(
        r.mapped_circuit.to_text(),
        ".v q0 q1 q2 q3\ncx q0 q1\ncx q1 q2\nswap q0 q1\ncx q0 q3\n"
    );
}

#[test]
fn example_placement_is_selectable() {
    // the drawn solution: swap c and d before the last gate
    let (c, d) = example();
    let mapped = parse_circuit(".v A B C D\ncx A B\ncx B C\nswap C D\ncx B C\n").unwrap();
    replay(&c, &d, &mapped, &[0, 1, 2, 3], Some(0..=2)).unwrap();
}

#[test]
fn empty_circuit() {
    let c = parse_circuit("").unwrap();
    let r = map_circuit(&c, &Device::ring(4), MapperConfig::default()).unwrap();
    assert!(r.fully_mapped);
    assert!(r.partitions.is_empty());
    assert_eq!(r.swaps_inserted, 0);
}

#[test]
fn five_on_four_is_infeasible() {
    let c = parse_circuit(".v a b c d e\ncx a b\n").unwrap();
    assert!(matches!(
        map_circuit(&c, &Device::ring(4), MapperConfig::default()),
        Err(zddmap::MapError::Infeasible {
            pseudo: 5,
            physical: 4
        })
    ));
}

#[test]
fn stalled_partition_splits() {
    // a triangle of interactions cannot stay on a path without SWAPs
    let c = parse_circuit(".v a b c\ncx a b\ncx b c\ncx a c\n").unwrap();
    let d = Device::path(3);
    let cfg = MapperConfig {
        weights: zddmap::ScoreWeights::from_integers(0, 0, 1).unwrap(),
        ..MapperConfig::default()
    };
    let r = map_circuit(&c, &d, cfg).unwrap();
    assert_eq!(r.partitions.len(), 2);
    assert_eq!((r.partitions[0].begin, r.partitions[0].end), (0, 1));
    assert_eq!((r.partitions[1].begin, r.partitions[1].end), (2, 2));
    assert!(!r.fully_mapped);
    assert_eq!(r.maximal, Some(0));
    assert_eq!(r.unrouted_positions(), vec![2]);
    // with the default weights one SWAP keeps the block together
    let r = map_circuit(&c, &d, MapperConfig::default()).unwrap();
    assert!(r.fully_mapped);
    assert_eq!(r.swaps_inserted, 1);
}
