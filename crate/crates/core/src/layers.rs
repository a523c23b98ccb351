//! Depth-1 SWAP circuits and their scores.
//!
//! Layers live in their own engine whose variables are the device edges:
//! edge id `e` (declaration order) is variable `e + 1`. A layer is a set of
//! pairwise vertex-disjoint edges, i.e. a matching of the coupling graph.

use std::cmp::Reverse;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use zdd::{Engine, FamilyRef, Var};

use crate::device::Device;
use crate::error::MapError;
use crate::mapper::Mapper;

/// Variable for edge id `e`.
pub fn edge_var(e: usize) -> Var {
    e as Var + 1
}

/// A set of edge ids, ascending.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Layer(Vec<usize>);

impl Layer {
    pub fn new(mut edges: Vec<usize>) -> Self {
        edges.sort_unstable();
        edges.dedup();
        Layer(edges)
    }

    pub fn edges(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Endpoints of every edge, using the device's edge table.
    pub fn pairs(&self, device: &Device) -> Vec<(usize, usize)> {
        self.0.iter().map(|&e| device.edges()[e]).collect()
    }
}

/// SWAPs touching physical qubit `p`: the union of `{{e}}` over its edges.
pub fn build_edges_family(p: usize, device: &Device, eng: &mut Engine) -> Result<FamilyRef, MapError> {
    let mut acc = eng.empty();
    for e in device.incident_edges(p) {
        let single = eng.elementary(edge_var(e))?;
        acc = eng.union(acc, single)?;
    }
    Ok(acc)
}

/// All subsets of edges minus every superset of two edges sharing a qubit.
pub fn build_layers(device: &Device, eng: &mut Engine) -> Result<FamilyRef, MapError> {
    let expected = device.edges().len() as u32;
    if eng.num_vars() != expected {
        return Err(MapError::UniverseMismatch {
            expected,
            actual: eng.num_vars(),
        });
    }
    let mut conflicts = eng.empty();
    for p in 0..device.num_qubits() {
        let edges = build_edges_family(p, device, eng)?;
        let pairs = eng.choose(edges, 2)?;
        conflicts = eng.union(conflicts, pairs)?;
    }
    let all = eng.universal();
    Ok(eng.nonsupersets(all, conflicts)?)
}

/// The layer family of one device together with its engine.
#[derive(Debug)]
pub struct LayerFamily {
    engine: Engine,
    edges_of: Vec<FamilyRef>,
    layers: FamilyRef,
}

impl LayerFamily {
    pub fn build(device: &Device) -> Result<Self, MapError> {
        let mut engine = Engine::new(device.edges().len() as u32);
        engine.set_var_names(
            device
                .edges()
                .iter()
                .map(|&(p, q)| format!("{}{}", device.name(p), device.name(q)))
                .collect(),
        );
        let edges_of = (0..device.num_qubits())
            .map(|p| build_edges_family(p, device, &mut engine))
            .collect::<Result<_, _>>()?;
        let layers = build_layers(device, &mut engine)?;
        Ok(LayerFamily {
            engine,
            edges_of,
            layers,
        })
    }

    pub fn engine(&self) -> &Engine {
        &self.engine
    }

    pub fn family(&self) -> FamilyRef {
        self.layers
    }

    pub fn edges_of(&self, p: usize) -> FamilyRef {
        self.edges_of[p]
    }

    pub fn count(&self) -> BigUint {
        self.engine.count_sets(self.layers).expect("own family")
    }

    pub fn members(&self) -> Vec<Layer> {
        self.engine
            .enumerate(self.layers)
            .expect("own family")
            .map(|vars| Layer(vars.into_iter().map(|v| v as usize - 1).collect()))
            .collect()
    }

    /// Nonempty layers with at least one edge touching `image`.
    pub fn candidates(&mut self, image: &[usize]) -> Result<Vec<Layer>, MapError> {
        let eng = &mut self.engine;
        let mut touching = eng.empty();
        for &p in image {
            touching = eng.union(touching, self.edges_of[p])?;
        }
        let idle = eng.nonsupersets(self.layers, touching)?;
        let hits = eng.difference(self.layers, idle)?;
        Ok(eng
            .enumerate(hits)?
            .map(|vars| Layer(vars.into_iter().map(|v| v as usize - 1).collect()))
            .collect())
    }
}

/// Weights for depth (`alpha`), mapping count (`beta`) and SWAPs (`gamma`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScoreWeights {
    pub alpha: BigRational,
    pub beta: BigRational,
    pub gamma: BigRational,
}

impl ScoreWeights {
    pub fn new(alpha: BigRational, beta: BigRational, gamma: BigRational) -> Result<Self, MapError> {
        if [&alpha, &beta, &gamma].iter().any(|w| w.is_negative()) {
            return Err(MapError::InvalidWeights("weights must be nonnegative".into()));
        }
        if [&alpha, &beta, &gamma].iter().all(|w| w.is_zero()) {
            return Err(MapError::InvalidWeights("weights must not all be zero".into()));
        }
        Ok(ScoreWeights { alpha, beta, gamma })
    }

    pub fn parse(alpha: &str, beta: &str, gamma: &str) -> Result<Self, MapError> {
        let p = |s: &str| parse_ratio(s).map_err(MapError::InvalidWeights);
        ScoreWeights::new(p(alpha)?, p(beta)?, p(gamma)?)
    }

    pub fn from_integers(alpha: i64, beta: i64, gamma: i64) -> Result<Self, MapError> {
        let r = |x: i64| BigRational::from_integer(x.into());
        ScoreWeights::new(r(alpha), r(beta), r(gamma))
    }

    /// `(A·alpha + B·beta) · gamma / C`
    pub fn score(&self, depth_count: usize, map_count: &BigUint, swap_count: usize) -> BigRational {
        assert!(swap_count > 0, "the empty layer is never scored");
        let a = BigRational::from_integer(BigInt::from(depth_count));
        let b = BigRational::from_integer(BigInt::from(map_count.clone()));
        let c = BigRational::from_integer(BigInt::from(swap_count));
        (a * &self.alpha + b * &self.beta) * &self.gamma / c
    }
}

impl Default for ScoreWeights {
    fn default() -> Self {
        ScoreWeights::from_integers(0, 1, 1).unwrap()
    }
}

/// Parses `3`, `0.25`, `-1.5` or `1/3` as an exact rational.
pub fn parse_ratio(s: &str) -> Result<BigRational, String> {
    let s = s.trim();
    let bad = || format!("`{s}` is not a number");
    if s.contains('/') {
        let r: BigRational = s.parse().map_err(|_| bad())?;
        return Ok(r);
    }
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    if int.is_empty() && frac.is_empty() {
        return Err(bad());
    }
    if !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits = format!("{int}{frac}");
    let numer: BigInt = if digits.is_empty() { BigInt::zero() } else { digits.parse().map_err(|_| bad())? };
    let denom = num_traits::pow(BigInt::from(10), frac.len());
    let r = BigRational::new(numer, denom);
    Ok(if neg { -r } else { r })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LayerScore {
    pub layer: Layer,
    /// Consecutive two-qubit gates absorbed from the stuck gate on (A).
    pub depth_count: usize,
    /// Mappings left after absorbing the stuck gate (B).
    pub map_count: BigUint,
    /// Number of SWAPs (C).
    pub swap_count: usize,
    pub score: BigRational,
}

/// Scores every candidate layer for two-qubit gate `i`, which `m` cannot
/// absorb as is.
pub fn score_layers(mapper: &mut Mapper<'_>, m: FamilyRef, i: usize) -> Result<Vec<LayerScore>, MapError> {
    let image = mapper.image(m)?;
    let candidates = mapper.layers_mut().candidates(&image)?;
    let weights = mapper.config().weights.clone();
    let cap = mapper.config().lookahead;
    let total = mapper.num_two_qubit_gates();

    let mut scores = Vec::with_capacity(candidates.len());
    for layer in candidates {
        let swapped = mapper.swap_family(m, &layer)?;
        let merged = mapper.merge(swapped, i)?;
        let map_count = mapper.engine().count_sets(merged)?;

        let mut depth_count = 0;
        let mut cur = merged;
        let mut j = i;
        while !cur.is_empty() && depth_count < cap {
            depth_count += 1;
            j += 1;
            if j >= total {
                break;
            }
            cur = mapper.merge(cur, j)?;
        }

        let swap_count = layer.len();
        let score = weights.score(depth_count, &map_count, swap_count);
        scores.push(LayerScore {
            layer,
            depth_count,
            map_count,
            swap_count,
            score,
        });
    }
    Ok(scores)
}

/// Highest positive score; ties go to fewer SWAPs, then the smallest edge
/// list.
pub fn select_layer(scores: &[LayerScore]) -> Option<&LayerScore> {
    scores
        .iter()
        .filter(|s| s.score.is_positive())
        .max_by_key(|s| (&s.score, Reverse(s.swap_count), Reverse(&s.layer)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ratio(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn ring4_edges_and_layers() {
        let d = Device::ring(4);
        let mut eng = Engine::new(4);
        let a = build_edges_family(0, &d, &mut eng).unwrap();
        let sets: Vec<_> = eng.enumerate(a).unwrap().collect();
        // edges AB (var 1) and DA (var 4)
        assert_eq!(sets, vec![vec![1], vec![4]]);
        let layers = build_layers(&d, &mut eng).unwrap();
        let sets: Vec<_> = eng.enumerate(layers).unwrap().collect();
        assert_eq!(
            sets,
            vec![vec![], vec![1], vec![1, 3], vec![2], vec![2, 4], vec![3], vec![4]]
        );
    }

    #[test]
    fn isolated_qubit_has_no_edges() {
        let d = Device::new(["x", "y", "z"]).map(|mut d| {
            d.add_edge(0, 1);
            d
        });
        let d = d.unwrap();
        let mut eng = Engine::new(1);
        assert!(build_edges_family(2, &d, &mut eng).unwrap().is_empty());
        let end = build_edges_family(0, &d, &mut eng).unwrap();
        assert_eq!(eng.count_sets(end).unwrap(), 1u32.into());
    }

    #[test]
    fn path2_layers() {
        let fam = LayerFamily::build(&Device::path(2)).unwrap();
        assert_eq!(fam.members(), vec![Layer::new(vec![]), Layer::new(vec![0])]);
    }

    #[test]
    fn layers_need_matching_universe() {
        let mut eng = Engine::new(3);
        assert!(matches!(
            build_layers(&Device::ring(4), &mut eng),
            Err(MapError::UniverseMismatch { .. })
        ));
    }

    #[test]
    fn ring6_has_eighteen_matchings() {
        let fam = LayerFamily::build(&Device::ring(6)).unwrap();
        assert_eq!(fam.count(), 18u32.into());
    }

    #[test]
    fn candidates_touch_the_image() {
        let d = Device::path(5);
        let mut fam = LayerFamily::build(&d).unwrap();
        let cands = fam.candidates(&[0]).unwrap();
        assert!(!cands.is_empty());
        for c in &cands {
            assert!(c.pairs(&d).iter().any(|&(p, q)| p == 0 || q == 0));
        }
        assert!(fam.candidates(&[]).unwrap().is_empty());
    }

    #[test]
    fn ratios() {
        assert_eq!(parse_ratio("3").unwrap(), ratio(3, 1));
        assert_eq!(parse_ratio("0.25").unwrap(), ratio(1, 4));
        assert_eq!(parse_ratio(".5").unwrap(), ratio(1, 2));
        assert_eq!(parse_ratio("-1.5").unwrap(), ratio(-3, 2));
        assert_eq!(parse_ratio("2/6").unwrap(), ratio(1, 3));
        assert!(parse_ratio("").is_err());
        assert!(parse_ratio("1e3").is_err());
        assert!(parse_ratio(".").is_err());
    }

    #[test]
    fn weight_validation() {
        assert!(ScoreWeights::from_integers(0, 0, 0).is_err());
        assert!(ScoreWeights::from_integers(0, -1, 1).is_err());
        assert!(ScoreWeights::parse("0", "0.5", "1").is_ok());
    }

    #[test]
    fn score_formula() {
        let w = ScoreWeights::from_integers(2, 3, 5).unwrap();
        // (4*2 + 7*3) * 5 / 2
        assert_eq!(w.score(4, &7u32.into(), 2), ratio(145, 2));
    }

    fn scored(edges: Vec<usize>, score: i64) -> LayerScore {
        let layer = Layer::new(edges);
        LayerScore {
            swap_count: layer.len(),
            layer,
            depth_count: 0,
            map_count: BigUint::zero(),
            score: ratio(score, 1),
        }
    }

    #[test]
    fn selection_rules() {
        assert!(select_layer(&[]).is_none());
        assert!(select_layer(&[scored(vec![0], 0)]).is_none());
        let one = [scored(vec![2], 3)];
        assert_eq!(select_layer(&one).unwrap().layer, Layer::new(vec![2]));
        let tie = [scored(vec![0, 2], 4), scored(vec![3], 4), scored(vec![1], 4)];
        assert_eq!(select_layer(&tie).unwrap().layer, Layer::new(vec![1]));
        let best = [scored(vec![0], 1), scored(vec![1, 3], 5)];
        assert_eq!(select_layer(&best).unwrap().layer, Layer::new(vec![1, 3]));
    }
}
