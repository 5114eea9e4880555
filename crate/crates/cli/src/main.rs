//! `dimwit` command-line front end.
//!
//! Exit codes: 0 success, 1 report failure or no violation, 2 usage or input
//! error, 3 resource cap exceeded. Every output starts with `#` lines giving the
//! tool version, a sha256 digest of the inputs and the seed.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use sha2::{Digest, Sha256};

use dimwit::catalog::{get_case, reproduce, ReproduceOptions};
use dimwit::classical::{
    classical_bound_with_cap, enumerate_vertices, membership, verify_facet_with_cap, Membership, DEFAULT_CAP,
};
use dimwit::format::{load_behavior, load_scenario, load_witness, load_witness_file, witness_to_string};
use dimwit::quantum::{
    load_strategy, noise_tolerance, quantum_behavior, seesaw, strategy_to_string, QuantumStrategy, Restriction,
    SeesawConfig,
};
use dimwit::rational::{format_rational, parse_rational, Rational};
use dimwit::sim::{noise_ceiling_demo, run_batch, BlochVector, Protocol, BATCH_CSV_HEADER};
use dimwit::{Error, Scenario, Witness};

#[derive(Parser)]
#[command(name = "dimwit", version, about = "Classical bounds, facets and quantum values of dimension witnesses")]
struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Seed for randomized subcommands; echoed by all of them.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Csv,
}

#[derive(Args)]
struct Source {
    /// Built-in case (WJ, DRAC, WK, WD, WD_ENT, APPENDIX_A_1 .. APPENDIX_A_13).
    #[arg(long)]
    case: Option<String>,
    /// Witness file.
    #[arg(long)]
    witness: Option<PathBuf>,
    /// Scenario file, for witness or behavior files without an embedded scenario.
    #[arg(long)]
    scenario: Option<PathBuf>,
}

#[derive(Args)]
struct DimArgs {
    /// Channel dimensions: `d` for both links or `d0,d1`.
    #[arg(short = 'd', long = "dim", value_parser = parse_dims)]
    dims: Option<[usize; 2]>,
    /// Cap on raw deterministic strategies.
    #[arg(long, default_value_t = DEFAULT_CAP)]
    cap: u128,
}

#[derive(Args)]
struct SeesawArgs {
    #[arg(long, default_value_t = 50)]
    restarts: usize,
    #[arg(long, default_value_t = 500)]
    max_iters: usize,
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
}

#[derive(Subcommand)]
enum Command {
    /// Exact classical bound C_d of a witness.
    Bound {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        dims: DimArgs,
    },
    /// Enumerate the deterministic vertices of a scenario.
    Vertices {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        dims: DimArgs,
        /// Write the vertex matrix (CSV) to this file.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Decide whether a behavior lies in the classical polytope.
    Member {
        /// Behavior file.
        #[arg(long)]
        behavior: PathBuf,
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        dims: DimArgs,
    },
    /// Check whether a witness defines a facet.
    Facet {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        dims: DimArgs,
    },
    /// Witness value of a quantum strategy (the case reference by default).
    Eval {
        #[command(flatten)]
        source: Source,
        /// Strategy file.
        #[arg(long)]
        strategy: Option<PathBuf>,
    },
    /// Lower bound on the quantum value by seesaw optimization.
    Seesaw {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        dims: DimArgs,
        #[command(flatten)]
        run: SeesawArgs,
        /// `none`, `classical:K` or `product:R`.
        #[arg(long, default_value = "none", value_parser = parse_restriction)]
        restriction: Restriction,
        /// Preparations share an entangled state (two-preparation scenarios).
        #[arg(long)]
        shared: bool,
        /// Write the best strategy to this file.
        #[arg(long)]
        strategy_out: Option<PathBuf>,
    },
    /// White-noise tolerance of a quantum strategy against a classical bound.
    Noise {
        #[command(flatten)]
        source: Source,
        /// Strategy file (the case reference by default).
        #[arg(long)]
        strategy: Option<PathBuf>,
        /// Bound to beat, as an exact rational (default: the case noise bound, else the witness bound).
        #[arg(long)]
        bound: Option<String>,
    },
    /// Monte Carlo batches of the classical simulation protocols.
    Simulate {
        #[arg(long, value_enum, default_value_t = ProtocolArg::Pm)]
        protocol: ProtocolArg,
        /// Preparation (or first party) Bloch vector `x,y,z`; repeatable.
        #[arg(long = "x", required = true, value_parser = parse_bloch, allow_hyphen_values = true)]
        xs: Vec<BlochVector>,
        /// Measurement (or second party) Bloch vector; one per `--x`.
        #[arg(long = "y", required = true, value_parser = parse_bloch, allow_hyphen_values = true)]
        ys: Vec<BlochVector>,
        #[arg(short, long, default_value_t = 1_000_000)]
        n: u64,
        /// Exit 1 when a batch lies more than this many standard errors from the ideal.
        #[arg(long)]
        check: Option<f64>,
    },
    /// Noise level at which ideal qubit data enters the one-bit polytope.
    Ceiling {
        /// Preparation Bloch vectors, repeatable (at most 4).
        #[arg(long = "prep", required = true, value_parser = parse_bloch, allow_hyphen_values = true)]
        preps: Vec<BlochVector>,
        /// Observable Bloch vectors, repeatable (at most 3).
        #[arg(long = "obs", required = true, value_parser = parse_bloch, allow_hyphen_values = true)]
        obs: Vec<BlochVector>,
        #[arg(long, default_value_t = 0.0)]
        eta: f64,
    },
    /// Recompute catalog quantities and compare with expectations.
    Reproduce {
        /// Case name, `ALL` or `APPENDIX_A_ALL`.
        #[arg(long, default_value = "ALL")]
        case: String,
        /// Skip seesaw rows.
        #[arg(long)]
        no_seesaw: bool,
        #[command(flatten)]
        run: SeesawArgs,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ProtocolArg {
    /// Two-bit prepare-and-measure simulation of a qubit.
    Pm,
    /// One-bit simulation of singlet correlations.
    Singlet,
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Failure(String),
    Resource(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Failure(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Resource(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Failure(m) | CliError::Resource(m) => m,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let m = e.to_string();
        match e {
            Error::Resource { .. } => CliError::Resource(m),
            Error::NoViolation { .. } | Error::DegenerateWitness(_) | Error::Numerical(_) => CliError::Failure(m),
            _ => CliError::Usage(m),
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

fn parse_dims(s: &str) -> std::result::Result<[usize; 2], String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let num = |p: &str| p.parse::<usize>().map_err(|e| format!("`{p}`: {e}"));
    match parts.as_slice() {
        [d] => Ok([num(d)?; 2]),
        [a, b] => Ok([num(a)?, num(b)?]),
        _ => Err("expected `d` or `d0,d1`".into()),
    }
}

fn parse_bloch(s: &str) -> std::result::Result<BlochVector, String> {
    let v: Vec<f64> = s
        .split(',')
        .map(|p| p.trim().parse::<f64>().map_err(|e| format!("`{p}`: {e}")))
        .collect::<std::result::Result<_, _>>()?;
    match v.as_slice() {
        [x, y, z] => Ok(BlochVector::new(*x, *y, *z)),
        _ => Err("expected three components `x,y,z`".into()),
    }
}

fn parse_restriction(s: &str) -> std::result::Result<Restriction, String> {
    let arg = |v: &str| v.parse::<usize>().map_err(|e| format!("`{v}`: {e}"));
    match s.split_once(':') {
        None if s == "none" => Ok(Restriction::None),
        Some(("classical", k)) => Ok(Restriction::ClassicalChannel(arg(k)?)),
        Some(("product", r)) => Ok(Restriction::ProductMeasurement(arg(r)?)),
        _ => Err("expected `none`, `classical:K` or `product:R`".into()),
    }
}

/// Reads inputs while accumulating their digest.
struct Inputs {
    hasher: Sha256,
}

impl Inputs {
    fn new() -> Self {
        Self { hasher: Sha256::new() }
    }

    fn file(&mut self, path: &Path) -> CliResult<String> {
        let text = fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
        self.hasher.update(text.as_bytes());
        Ok(text)
    }

    fn tag(&mut self, tag: &str) {
        self.hasher.update(tag.as_bytes());
    }

    fn header(self, seed: u64) -> String {
        let hex: String = self.hasher.finalize().iter().map(|b| format!("{b:02x}")).collect();
        format!("# dimwit {}\n# input sha256 {hex}\n# seed {seed}\n", env!("CARGO_PKG_VERSION"))
    }
}

fn load_source_witness(source: &Source, inputs: &mut Inputs) -> CliResult<Witness> {
    match (&source.case, &source.witness) {
        (Some(name), None) => {
            inputs.tag(&format!("case:{name}"));
            Ok(get_case(name)?.witness)
        }
        (None, Some(path)) => {
            let text = inputs.file(path)?;
            match &source.scenario {
                Some(sp) => {
                    let sc = load_scenario(&inputs.file(sp)?)?;
                    Ok(load_witness(&text, &sc)?)
                }
                None => Ok(load_witness_file(&text)?),
            }
        }
        (Some(_), Some(_)) => Err(CliError::Usage("give either --case or --witness, not both".into())),
        (None, None) => Err(CliError::Usage("one of --case or --witness is required".into())),
    }
}

fn load_source_scenario(source: &Source, inputs: &mut Inputs) -> CliResult<Option<Scenario>> {
    match (&source.case, &source.witness, &source.scenario) {
        (None, None, None) => Ok(None),
        (None, None, Some(sp)) => Ok(Some(load_scenario(&inputs.file(sp)?)?)),
        _ => Ok(Some(*load_source_witness(source, inputs)?.scenario())),
    }
}

fn source_strategy(source: &Source, path: &Option<PathBuf>, inputs: &mut Inputs) -> CliResult<QuantumStrategy> {
    match (path, &source.case) {
        (Some(p), _) => Ok(load_strategy(&inputs.file(p)?)?),
        (None, Some(name)) => get_case(name)?
            .reference
            .ok_or_else(|| CliError::Usage(format!("case {name} has no reference strategy; pass --strategy"))),
        (None, None) => Err(CliError::Usage("--strategy is required with --witness".into())),
    }
}

fn require_scenario(s: Option<Scenario>) -> CliResult<Scenario> {
    s.ok_or_else(|| CliError::Usage("one of --case, --witness or --scenario is required".into()))
}

fn num(v: f64) -> String {
    format!("{v:.12}")
}

fn write_file(path: &Path, text: &str) -> CliResult<()> {
    fs::write(path, text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

fn run(cli: Cli) -> CliResult<(String, bool)> {
    let csv = cli.format == Format::Csv;
    let seed = cli.seed;
    let mut inputs = Inputs::new();
    let mut body = String::new();
    let mut ok = true;

    match cli.command {
        Command::Bound { source, dims } => {
            let w = load_source_witness(&source, &mut inputs)?;
            let d = dims.dims.unwrap_or(w.scenario().channel_dims());
            let (bound, _) = classical_bound_with_cap(&w, w.scenario(), d, dims.cap)?;
            if csv {
                let _ = writeln!(body, "d0,d1,bound\n{},{},{}", d[0], d[1], format_rational(&bound));
            } else {
                let _ = writeln!(body, "{}", format_rational(&bound));
            }
        }
        Command::Vertices { source, dims, output } => {
            let sc = require_scenario(load_source_scenario(&source, &mut inputs)?)?;
            let d = dims.dims.unwrap_or(sc.channel_dims());
            let vs = enumerate_vertices(&sc, d, dims.cap)?;
            if let Some(path) = &output {
                write_file(path, &vs.to_csv())?;
            }
            if csv && output.is_none() {
                body.push_str(&vs.to_csv());
            } else {
                let _ = writeln!(body, "vertices = {}\nscenario = {}", vs.len(), vs.scenario());
            }
        }
        Command::Member { behavior, source, dims } => {
            let text = inputs.file(&behavior)?;
            let given = load_source_scenario(&source, &mut inputs)?;
            let p = load_behavior(&text, given.as_ref())?;
            let d = dims.dims.unwrap_or(p.scenario().channel_dims());
            let vs = enumerate_vertices(p.scenario(), d, dims.cap)?;
            match membership(&p, &vs)? {
                Membership::Inside { weights } => {
                    let support = weights.iter().filter(|&&w| w > 0.0).count();
                    if csv {
                        let _ = writeln!(body, "verdict,violation,support\nInside,0,{support}");
                    } else {
                        let _ = writeln!(body, "Inside\nsupport = {support}");
                    }
                }
                Membership::Outside { witness, violation } => {
                    if csv {
                        let _ = writeln!(body, "verdict,violation,support\nOutside,{},", num(violation));
                    } else {
                        let _ = writeln!(body, "Outside\nviolation = {}\n\n{}", num(violation), witness_to_string(&witness));
                    }
                }
            }
        }
        Command::Facet { source, dims } => {
            let w = load_source_witness(&source, &mut inputs)?;
            let d = dims.dims.unwrap_or(w.scenario().channel_dims());
            let r = verify_facet_with_cap(&w, w.scenario(), d, dims.cap)?;
            if csv {
                body.push_str("key,value\n");
                for line in r.to_string().lines() {
                    let (k, v) = line.split_once(" = ").unwrap_or((line, ""));
                    let _ = writeln!(body, "{k},{v}");
                }
            } else {
                let _ = writeln!(body, "{r}");
            }
        }
        Command::Eval { source, strategy } => {
            let w = load_source_witness(&source, &mut inputs)?;
            let s = source_strategy(&source, &strategy, &mut inputs)?;
            let v = w.value(&quantum_behavior(&s, w.scenario())?);
            if csv {
                let _ = writeln!(body, "value\n{}", num(v));
            } else {
                let _ = writeln!(body, "{}", num(v));
            }
        }
        Command::Seesaw {
            source,
            dims,
            run,
            restriction,
            shared,
            strategy_out,
        } => {
            let w = load_source_witness(&source, &mut inputs)?;
            let d = dims.dims.unwrap_or(w.scenario().channel_dims());
            let cfg = SeesawConfig {
                restarts: run.restarts,
                max_iters: run.max_iters,
                tol: run.tol,
                seed,
                restriction,
                shared_entanglement: shared,
            };
            let r = seesaw(&w, w.scenario(), d, &cfg)?;
            if let Some(path) = &strategy_out {
                write_file(path, &strategy_to_string(&r.strategy))?;
            }
            if csv {
                body.push_str("restart,value,best\n");
                for (i, v) in r.restart_values.iter().enumerate() {
                    let _ = writeln!(body, "{i},{},{}", num(*v), i == r.best_restart);
                }
            } else {
                let _ = writeln!(
                    body,
                    "{}\nbest_restart = {}\nconverged = {}\nrestarts = {}",
                    num(r.value),
                    r.best_restart,
                    r.converged,
                    r.restart_values.len()
                );
            }
        }
        Command::Noise { source, strategy, bound } => {
            let w = load_source_witness(&source, &mut inputs)?;
            let s = source_strategy(&source, &strategy, &mut inputs)?;
            let bound: Rational = match &bound {
                Some(text) => {
                    parse_rational(text).ok_or_else(|| CliError::Usage(format!("--bound: `{text}` is not a rational")))?
                }
                None => match &source.case {
                    Some(name) => {
                        let e = get_case(name)?;
                        e.expected_bound(e.noise_bound_d).cloned().unwrap_or_else(|| w.bound().clone())
                    }
                    None => w.bound().clone(),
                },
            };
            let p = quantum_behavior(&s, w.scenario())?;
            let r = noise_tolerance(&w, &bound, &p)?;
            if csv {
                let _ = writeln!(
                    body,
                    "eta,quantum_value,noise_value,bound,mixed_value\n{},{},{},{},{}",
                    num(r.eta),
                    num(r.quantum_value),
                    num(r.noise_value),
                    num(r.bound),
                    num(r.mixed_value)
                );
            } else {
                let _ = writeln!(
                    body,
                    "{}\nquantum_value = {}\nnoise_value = {}\nbound = {}\nmixed_value = {}",
                    num(r.eta),
                    num(r.quantum_value),
                    num(r.noise_value),
                    format_rational(&bound),
                    num(r.mixed_value)
                );
            }
        }
        Command::Simulate {
            protocol,
            xs,
            ys,
            n,
            check,
        } => {
            if xs.len() != ys.len() {
                return Err(CliError::Usage(format!("{} --x but {} --y vectors", xs.len(), ys.len())));
            }
            let protocol = match protocol {
                ProtocolArg::Pm => Protocol::PrepareMeasure,
                ProtocolArg::Singlet => Protocol::Singlet,
            };
            inputs.tag(protocol.as_str());
            let mut batches = Vec::new();
            for (i, (x, y)) in xs.iter().zip(&ys).enumerate() {
                inputs.tag(&format!("{:?}{:?}", x.0, y.0));
                batches.push(run_batch(protocol, *x, *y, n, seed.wrapping_add(i as u64))?);
            }
            if let Some(k) = check {
                ok = batches.iter().all(|b| b.within_sigmas(k));
            }
            if csv {
                let _ = writeln!(body, "{BATCH_CSV_HEADER}");
                for b in &batches {
                    let _ = writeln!(body, "{}", b.to_csv_row());
                }
            } else {
                for b in &batches {
                    let _ = writeln!(
                        body,
                        "{} n={} empirical={:.6} ideal={:.6} z={:.3} bits={}",
                        b.protocol.as_str(),
                        b.n,
                        b.empirical(),
                        b.oracle(),
                        b.z_score(),
                        b.bits_sent
                    );
                }
            }
        }
        Command::Ceiling { preps, obs, eta } => {
            for v in preps.iter().chain(&obs) {
                inputs.tag(&format!("{:?}", v.0));
            }
            let r = noise_ceiling_demo(&preps, &obs, eta)?;
            if csv {
                body.push_str("eta,inside\n");
                for (e, inside) in &r.trace {
                    let _ = writeln!(body, "{e},{inside}");
                }
            } else {
                let _ = writeln!(body, "{}", r.summary());
            }
        }
        Command::Reproduce { case, no_seesaw, run } => {
            inputs.tag(&format!("case:{case}"));
            let opts = ReproduceOptions {
                seesaw: !no_seesaw,
                restarts: run.restarts,
                max_iters: run.max_iters,
                tol: run.tol,
                seed,
            };
            let report = reproduce(&case, &opts)?;
            ok = report.passed();
            body.push_str(&if csv { report.to_csv() } else { report.to_text() });
        }
    }
    Ok((inputs.header(seed) + &body, ok))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: --threads: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli) {
        Ok((out, ok)) => {
            print!("{out}");
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}
