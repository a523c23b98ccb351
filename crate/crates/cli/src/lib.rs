//! Driver behind the `zddmap` binary.

use std::fmt;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::Parser;
use zddmap::{
    map_circuit, parse_circuit, parse_device, replay, Circuit, Device, MapError, MapperConfig,
    MappingResult, ParseError, Report, ScoreWeights,
};

pub const EXIT_OK: u8 = 0;
pub const EXIT_IO: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_PARSE: u8 = 3;
pub const EXIT_INFEASIBLE: u8 = 4;
pub const EXIT_UNMAPPABLE: u8 = 5;
pub const EXIT_CHECK: u8 = 6;

/// Maps a gate-list circuit onto a device coupling graph.
#[derive(Debug, Clone, Parser)]
#[command(name = "zddmap", version)]
pub struct Args {
    /// Input circuit.
    #[arg(long, value_name = "PATH")]
    pub circuit: PathBuf,

    /// Device file, or `ring:<n>` / `path:<n>`.
    #[arg(long, value_name = "PATH|ring:N|path:N")]
    pub device: String,

    /// Depth weight.
    #[arg(long, default_value = "0", value_name = "R", allow_hyphen_values = true)]
    pub alpha: String,

    /// Mapping-count weight.
    #[arg(long, default_value = "1", value_name = "R", allow_hyphen_values = true)]
    pub beta: String,

    /// SWAP weight.
    #[arg(long, default_value = "1", value_name = "R", allow_hyphen_values = true)]
    pub gamma: String,

    /// Cap on the depth count of a candidate SWAP layer.
    #[arg(long, default_value_t = 20, value_name = "N")]
    pub lookahead: usize,

    /// Where to write the mapped circuit (stdout if omitted).
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,

    /// Where to write the JSON report.
    #[arg(long, value_name = "PATH")]
    pub report: Option<PathBuf>,

    /// Replay the mapped circuit through the coupling checker.
    #[arg(long)]
    pub selfcheck: bool,

    /// Check an existing mapped circuit against this run instead of
    /// writing one.
    #[arg(long, value_name = "PATH", conflicts_with_all = ["out", "selfcheck"])]
    pub verify: Option<PathBuf>,

    /// Dump the maximal partition's mapping family as Graphviz.
    #[arg(long, value_name = "PATH")]
    pub dot: Option<PathBuf>,

    /// Record wall time in the report (makes it differ between runs).
    #[arg(long)]
    pub timing: bool,

    /// Progress on stderr; repeat for more.
    #[arg(short, long, action = clap::ArgAction::Count)]
    pub verbose: u8,
}

#[derive(Debug)]
pub enum CliError {
    Io { path: PathBuf, err: io::Error },
    Usage(String),
    Parse { path: String, err: ParseError },
    Map(MapError),
    Check(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Io { .. } => EXIT_IO,
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Parse { .. } => EXIT_PARSE,
            CliError::Map(e) => match e {
                MapError::Infeasible { .. } => EXIT_INFEASIBLE,
                MapError::UnmappableGate { .. } => EXIT_UNMAPPABLE,
                MapError::InvalidWeights(_) => EXIT_USAGE,
                _ => EXIT_CHECK,
            },
            CliError::Check(_) => EXIT_CHECK,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Io { path, err } => write!(f, "{}: {err}", path.display()),
            CliError::Usage(m) => write!(f, "{m}"),
            CliError::Parse { path, err } => write!(f, "{path}: {err}"),
            CliError::Map(e @ (MapError::Infeasible { .. }
            | MapError::UnmappableGate { .. }
            | MapError::InvalidWeights(_))) => write!(f, "{e}"),
            CliError::Map(e) => write!(f, "internal error: {e}"),
            CliError::Check(m) => write!(f, "selfcheck failed: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<MapError> for CliError {
    fn from(e: MapError) -> Self {
        CliError::Map(e)
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|err| CliError::Io {
        path: path.to_path_buf(),
        err,
    })
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|err| CliError::Io {
        path: path.to_path_buf(),
        err,
    })
}

/// Validated run settings.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub args: Args,
    pub mapper: MapperConfig,
}

impl RunConfig {
    pub fn new(args: Args) -> Result<Self, CliError> {
        let weights = ScoreWeights::parse(&args.alpha, &args.beta, &args.gamma)
            .map_err(|e| CliError::Usage(e.to_string()))?;

        let mut paths: Vec<(&str, &Path)> = vec![("--circuit", &args.circuit)];
        if Device::from_generator(&args.device).is_none() {
            paths.push(("--device", Path::new(&args.device)));
        }
        for (flag, p) in [
            ("--out", &args.out),
            ("--report", &args.report),
            ("--dot", &args.dot),
            ("--verify", &args.verify),
        ] {
            if let Some(p) = p {
                paths.push((flag, p));
            }
        }
        let key = |p: &Path| fs::canonicalize(p).unwrap_or_else(|_| p.to_path_buf());
        for (i, (fa, a)) in paths.iter().enumerate() {
            for (fb, b) in &paths[i + 1..] {
                if a == b || key(a) == key(b) {
                    return Err(CliError::Usage(format!(
                        "{fa} and {fb} name the same file `{}`",
                        a.display()
                    )));
                }
            }
        }

        Ok(RunConfig {
            mapper: MapperConfig {
                weights,
                lookahead: args.lookahead,
            },
            args,
        })
    }
}

fn load(cfg: &RunConfig) -> Result<(Circuit, Device), CliError> {
    let path = cfg.args.circuit.display().to_string();
    let circuit = parse_circuit(&read(&cfg.args.circuit)?).map_err(|err| CliError::Parse { path, err })?;
    let device = match Device::from_generator(&cfg.args.device) {
        Some(Ok(d)) => d,
        Some(Err(m)) => return Err(CliError::Usage(m)),
        None => {
            let path = Path::new(&cfg.args.device);
            parse_device(&read(path)?).map_err(|err| CliError::Parse {
                path: cfg.args.device.clone(),
                err,
            })?
        }
    };
    Ok((circuit, device))
}

fn check(c: &Circuit, d: &Device, r: &MappingResult, mapped_text: &str, origin: &str) -> Result<(), CliError> {
    let mapped = parse_circuit(mapped_text).map_err(|err| CliError::Parse {
        path: origin.to_string(),
        err,
    })?;
    replay(c, d, &mapped, &r.assignment, r.routed_span())
        .map(|_| ())
        .map_err(|e| CliError::Check(e.to_string()))
}

/// What a run produced, for callers that want more than files.
#[derive(Debug)]
pub struct Outcome {
    pub report: Report,
    pub mapped_text: String,
}

pub fn run(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let start = Instant::now();
    let (circuit, device) = load(cfg)?;
    let result = map_circuit(&circuit, &device, cfg.mapper.clone())?;
    let elapsed = start.elapsed();

    let mut report = Report::new(&circuit, &device, &cfg.mapper, &result);
    if cfg.args.timing {
        report.wall_time_ms = Some(elapsed.as_secs_f64() * 1e3);
    }
    let mapped_text = result.mapped_circuit.to_text();

    if cfg.args.verbose > 0 {
        eprintln!(
            "zddmap: {} partitions, {} SWAPs inserted, fully mapped: {}, {:.3} ms",
            result.partitions.len(),
            result.swaps_inserted,
            result.fully_mapped,
            elapsed.as_secs_f64() * 1e3
        );
        for w in &report.warnings {
            eprintln!("zddmap: warning: {w}");
        }
    }
    if cfg.args.verbose > 1 {
        for (j, p) in result.partitions.iter().enumerate() {
            eprintln!(
                "zddmap: partition {j}: gates {}..={}, {} mappings, {} SWAP layers",
                p.begin,
                p.end,
                p.mapping_count,
                p.swap_insertions.len()
            );
        }
    }

    if let Some(path) = &cfg.args.verify {
        let text = read(path)?;
        check(&circuit, &device, &result, &text, &path.display().to_string())?;
    } else {
        match &cfg.args.out {
            Some(path) => write(path, &mapped_text)?,
            None => print!("{mapped_text}"),
        }
        if cfg.args.selfcheck {
            let (text, origin) = match &cfg.args.out {
                Some(path) => (read(path)?, path.display().to_string()),
                None => (mapped_text.clone(), "<mapped>".to_string()),
            };
            check(&circuit, &device, &result, &text, &origin)?;
        }
    }
    if let Some(path) = &cfg.args.report {
        write(path, &report.to_json())?;
    }
    if let Some(path) = &cfg.args.dot {
        let family = match result.maximal_partition() {
            Some(p) => p.phi,
            None => result.engine().unit(),
        };
        let dot = result.engine().to_dot(family).map_err(MapError::from)?;
        write(path, &dot)?;
    }
    Ok(Outcome {
        report,
        mapped_text,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn args(extra: &[&str]) -> Args {
        let mut v = vec!["zddmap", "--circuit", "c.txt", "--device", "ring:4"];
        v.extend_from_slice(extra);
        Args::try_parse_from(v).unwrap()
    }

    #[test]
    fn defaults() {
        let cfg = RunConfig::new(args(&[])).unwrap();
        assert_eq!(cfg.mapper.weights, ScoreWeights::default());
        assert_eq!(cfg.mapper.lookahead, 20);
    }

    #[test]
    fn weights_are_validated() {
        let e = RunConfig::new(args(&["--alpha", "-1"])).unwrap_err();
        assert_eq!(e.exit_code(), EXIT_USAGE);
        let e = RunConfig::new(args(&["--beta", "0", "--gamma", "0"])).unwrap_err();
        assert_eq!(e.exit_code(), EXIT_USAGE);
        let e = RunConfig::new(args(&["--gamma", "x"])).unwrap_err();
        assert_eq!(e.exit_code(), EXIT_USAGE);
        assert!(RunConfig::new(args(&["--alpha", "1/2", "--beta", "0.25"])).is_ok());
    }

    #[test]
    fn paths_must_differ() {
        let e = RunConfig::new(args(&["--out", "c.txt"])).unwrap_err();
        assert!(matches!(e, CliError::Usage(_)));
        let e = RunConfig::new(args(&["--out", "o", "--report", "o"])).unwrap_err();
        assert!(matches!(e, CliError::Usage(_)));
        assert!(RunConfig::new(args(&["--out", "o", "--report", "r"])).is_ok());
    }

    #[test]
    fn exit_codes_are_distinct() {
        let codes = [EXIT_OK, EXIT_IO, EXIT_USAGE, EXIT_PARSE, EXIT_INFEASIBLE, EXIT_UNMAPPABLE, EXIT_CHECK];
        let mut sorted = codes.to_vec();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), codes.len());
        let internal = CliError::Map(MapError::OverlappingLayer(0));
        assert_eq!(internal.exit_code(), EXIT_CHECK);
    }
}
