//! Brute-force oracles and instance generators shared by the integration
//! tests and the acceptance suite.
#![allow(dead_code)]

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::Rng;
use zddmap::{Circuit, Device, Gate, MappingResult};

pub type Mapping = Vec<(usize, usize)>;

/// Random circuit with `n` qubits and up to `max_two` two-qubit gates,
/// sprinkled with single-qubit gates.
pub fn random_circuit<R: Rng>(rng: &mut R, n: usize, max_two: usize) -> Circuit {
    let mut c = Circuit::new((0..n).map(|i| format!("v{i}"))).unwrap();
    let k = rng.gen_range(0..=max_two);
    for _ in 0..k {
        if rng.gen_bool(0.3) {
            c.push(Gate::single(["h", "t", "x"][rng.gen_range(0..3)], rng.gen_range(0..n)));
        }
        let a = rng.gen_range(0..n);
        let mut b = rng.gen_range(0..n - 1);
        if b >= a {
            b += 1;
        }
        c.push(Gate::pair(if rng.gen_bool(0.8) { "cx" } else { "cz" }, a, b));
    }
    c
}

/// A circuit and a ring or path device at least as large.
pub fn random_instance<R: Rng>(rng: &mut R, max_qubits: usize, max_two: usize) -> (Circuit, Device) {
    let n = rng.gen_range(2..=max_qubits);
    let m = rng.gen_range(n..=max_qubits);
    let d = if rng.gen_bool(0.5) {
        Device::ring(m)
    } else {
        Device::path(m)
    };
    (random_circuit(rng, n, max_two), d)
}

/// Toffoli on `(c1, c2, t)` in the six-CNOT form over `h`, `t`, `tdg`.
pub fn push_toffoli(c: &mut Circuit, c1: usize, c2: usize, t: usize) {
    let s = |k: &str, q| Gate::single(k, q);
    let p = |a, b| Gate::pair("cx", a, b);
    for g in [
        s("h", t),
        p(c2, t),
        s("tdg", t),
        p(c1, t),
        s("t", t),
        p(c2, t),
        s("tdg", t),
        p(c1, t),
        s("t", c2),
        s("t", t),
        s("h", t),
        p(c1, c2),
        s("t", c1),
        s("tdg", c2),
        p(c1, c2),
    ] {
        c.push(g);
    }
}

pub fn toffoli_circuit<R: Rng>(rng: &mut R, n: usize, count: usize) -> Circuit {
    let mut c = Circuit::new((0..n).map(|i| format!("v{i}"))).unwrap();
    let qubits: Vec<usize> = (0..n).collect();
    for _ in 0..count {
        let pick: Vec<usize> = qubits.choose_multiple(rng, 3).copied().collect();
        push_toffoli(&mut c, pick[0], pick[1], pick[2]);
    }
    c
}

fn injective_maps(domain: &[usize], m: usize, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if acc.len() == domain.len() {
        out.push(acc.clone());
        return;
    }
    for p in 0..m {
        if !acc.contains(&p) {
            acc.push(p);
            injective_maps(domain, m, acc, out);
            acc.pop();
        }
    }
}

/// Every injective map of the qubits of two-qubit gates `begin..=end` onto
/// the device under which each gate is coupled, with the SWAP layers in
/// `swaps_before` (two-qubit gate index, physical pairs) applied as
/// recorded. Maps are stated at gate `begin`.
pub fn brute_force_block(
    pairs: &[(usize, usize)],
    begin: usize,
    end: usize,
    swaps_before: &[(usize, Vec<(usize, usize)>)],
    device: &Device,
) -> BTreeSet<Mapping> {
    let mut domain: Vec<usize> = pairs[begin..=end].iter().flat_map(|&(a, b)| [a, b]).collect();
    domain.sort_unstable();
    domain.dedup();
    let mut maps = Vec::new();
    injective_maps(&domain, device.num_qubits(), &mut Vec::new(), &mut maps);

    let mut legal = BTreeSet::new();
    'maps: for image in maps {
        let mut loc = vec![usize::MAX; domain.iter().max().map_or(0, |&x| x + 1)];
        for (&v, &p) in domain.iter().zip(&image) {
            loc[v] = p;
        }
        for (i, &(a, b)) in pairs.iter().enumerate().take(end + 1).skip(begin) {
            for (_, layer) in swaps_before.iter().filter(|(at, _)| *at == i) {
                for &(p, q) in layer {
                    for l in loc.iter_mut() {
                        if *l == p {
                            *l = q;
                        } else if *l == q {
                            *l = p;
                        }
                    }
                }
            }
            if !device.has_edge(loc[a], loc[b]) {
                continue 'maps;
            }
        }
        legal.insert(domain.iter().zip(&image).map(|(&v, &p)| (v, p)).collect());
    }
    legal
}

/// Two-qubit operand pairs of a circuit, in order.
pub fn two_qubit_pairs(c: &Circuit) -> Vec<(usize, usize)> {
    c.gates().iter().filter_map(Gate::pair_operands).collect()
}

/// Compares every partition family of `r` with [`brute_force_block`].
pub fn check_partitions(c: &Circuit, d: &Device, r: &MappingResult) -> Result<(), String> {
    let pairs = two_qubit_pairs(c);
    let mut next = 0;
    for (j, part) in r.partitions.iter().enumerate() {
        if part.begin != next || part.end < part.begin {
            return Err(format!("partition {j} does not continue at {next}"));
        }
        next = part.end + 1;
        let swaps: Vec<_> = part
            .swap_insertions
            .iter()
            .map(|s| (s.position, s.swaps.clone()))
            .collect();
        let expected = brute_force_block(&pairs, part.begin, part.end, &swaps, d);
        let got: BTreeSet<Mapping> = r.mappings(j).into_iter().collect();
        if got != expected {
            return Err(format!(
                "partition {j}: {} mappings, brute force finds {}",
                got.len(),
                expected.len()
            ));
        }
        if part.mapping_count != expected.len().into() {
            return Err(format!("partition {j}: stored count is stale"));
        }
    }
    if next != pairs.len() {
        return Err(format!("partitions stop at {next} of {}", pairs.len()));
    }
    Ok(())
}

/// Number of matchings (including the empty one) of the device graph.
pub fn matching_count(d: &Device) -> u64 {
    fn go(edges: &[(usize, usize)], used: &mut Vec<bool>) -> u64 {
        let Some((&(p, q), rest)) = edges.split_first() else {
            return 1;
        };
        let mut n = go(rest, used);
        if !used[p] && !used[q] {
            used[p] = true;
            used[q] = true;
            n += go(rest, used);
            used[p] = false;
            used[q] = false;
        }
        n
    }
    go(d.edges(), &mut vec![false; d.num_qubits()])
}

/// Random simple graph on `m` qubits.
pub fn random_device<R: Rng>(rng: &mut R, m: usize, density: f64) -> Device {
    let mut d = Device::new((0..m).map(|i| format!("p{i}"))).unwrap();
    for p in 0..m {
        for q in p + 1..m {
            if rng.gen_bool(density) {
                d.add_edge(p, q);
            }
        }
    }
    d
}

/// Pairs of distinct physical qubits that are not coupled.
pub fn non_edges(d: &Device) -> Vec<(usize, usize)> {
    let m = d.num_qubits();
    (0..m)
        .flat_map(|p| (p + 1..m).map(move |q| (p, q)))
        .filter(|&(p, q)| !d.has_edge(p, q))
        .collect()
}

/// Families of sets over `1..=n` as sorted vectors.
pub type NaiveFamily = BTreeSet<Vec<u32>>;

pub fn random_family<R: Rng>(rng: &mut R, n: u32, max_sets: usize) -> NaiveFamily {
    let k = rng.gen_range(0..=max_sets);
    (0..k)
        .map(|_| (1..=n).filter(|_| rng.gen_bool(0.4)).collect())
        .collect()
}

pub fn naive_join(f: &NaiveFamily, g: &NaiveFamily) -> NaiveFamily {
    let mut out = NaiveFamily::new();
    for a in f {
        for b in g {
            let mut s: Vec<u32> = a.iter().chain(b).copied().collect();
            s.sort_unstable();
            s.dedup();
            out.insert(s);
        }
    }
    out
}

pub fn naive_meet(f: &NaiveFamily, g: &NaiveFamily) -> NaiveFamily {
    let mut out = NaiveFamily::new();
    for a in f {
        for b in g {
            out.insert(a.iter().filter(|x| b.contains(x)).copied().collect());
        }
    }
    out
}

pub fn naive_nonsupersets(f: &NaiveFamily, g: &NaiveFamily) -> NaiveFamily {
    f.iter()
        .filter(|a| !g.iter().any(|b| b.iter().all(|x| a.contains(x))))
        .cloned()
        .collect()
}
