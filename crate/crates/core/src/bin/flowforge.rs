use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use flowforge::audit::audit;
use flowforge::format::{read_document, write_atomic, write_document, write_quadruple};
use flowforge::harness::{
    cover, generate, hunt, sweep, Base, Candidate, GeneratorConfig, HuntOptions, Instance, SweepOptions, WeightPolicy,
};
use flowforge::reduce::{reduce_quadruple, Reduction, TraceStep};
use flowforge::search::{
    minimize_zero_weight, verify_theorem, Regime, SearchOptions, TheoremVerdict, DEFAULT_BUDGET,
};
use flowforge::{from_integer_4flow, to_integer_4flow, Error};

#[derive(Parser)]
#[command(name = "flowforge", version, about = "Exact search over Z2xZ2-flow classes on weighted circuits")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Theorem,
    Hunt,
}

#[derive(Clone, Copy, ValueEnum)]
enum BaseArg {
    /// A random circuit with extra vertices and chords.
    Circuit,
    /// The Petersen graph on a 9-circuit, plus extra vertices and chords.
    Petersen,
}

impl From<BaseArg> for Base {
    fn from(b: BaseArg) -> Base {
        match b {
            BaseArg::Circuit => Base::Circuit,
            BaseArg::Petersen => Base::Petersen,
        }
    }
}

impl From<Mode> for Regime {
    fn from(m: Mode) -> Regime {
        match m {
            Mode::Theorem => Regime::Theorem,
            Mode::Hunt => Regime::Hunt,
        }
    }
}

#[derive(Args, Clone)]
struct SearchArgs {
    /// Use exhaustive enumeration instead of branch-and-bound.
    #[arg(long)]
    oracle: bool,
    /// Largest class size the oracle may enumerate.
    #[arg(long, env = "FLOWFORGE_BUDGET", default_value_t = DEFAULT_BUDGET)]
    budget: u128,
    /// Worker threads.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
}

impl SearchArgs {
    fn options(&self) -> SearchOptions {
        let base = if self.oracle {
            SearchOptions::oracle()
        } else {
            SearchOptions::branch_and_bound()
        };
        SearchOptions {
            budget: self.budget,
            jobs: self.jobs,
            ..base
        }
    }
}

#[derive(Args, Clone)]
struct GenArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 100)]
    count: u64,
    #[arg(long, value_enum, default_value_t = Mode::Theorem)]
    mode: Mode,
    #[arg(long, value_enum, default_value_t = BaseArg::Circuit)]
    base: BaseArg,
    #[arg(long, default_value_t = 7)]
    min_circuit: usize,
    #[arg(long, default_value_t = 12)]
    max_circuit: usize,
    #[arg(long, default_value_t = 0)]
    min_extra_vertices: usize,
    #[arg(long, default_value_t = 3)]
    max_extra_vertices: usize,
    #[arg(long, default_value_t = 1)]
    min_chords: usize,
    #[arg(long, default_value_t = 5)]
    max_chords: usize,
    #[arg(long, default_value_t = 8)]
    max_dimension: usize,
    /// `unit`, `bounded:W`, or `target:T1,T2,...` (circuit weight totals).
    #[arg(long, default_value = "target:28,32")]
    weights: String,
    /// Per-edge cap for targeted weights.
    #[arg(long, default_value_t = 4)]
    max_edge: u64,
}

impl GenArgs {
    fn config(&self) -> Result<GeneratorConfig, Error> {
        let weights = parse_weights(&self.weights, self.max_edge)?;
        let cfg = GeneratorConfig {
            seed: self.seed,
            count: self.count,
            base: self.base.into(),
            circuit_len: self.min_circuit..=self.max_circuit,
            extra_vertices: self.min_extra_vertices..=self.max_extra_vertices,
            chords: self.min_chords..=self.max_chords,
            max_dimension: self.max_dimension,
            weights,
            mode: self.mode.into(),
            ..GeneratorConfig::default()
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

fn parse_weights(s: &str, max_edge: u64) -> Result<WeightPolicy, Error> {
    let bad = || Error::InvalidConfig(format!("weight policy '{s}'"));
    if s == "unit" {
        return Ok(WeightPolicy::Unit);
    }
    if let Some(w) = s.strip_prefix("bounded:") {
        return Ok(WeightPolicy::Bounded(w.parse().map_err(|_| bad())?));
    }
    if let Some(list) = s.strip_prefix("target:") {
        let totals = list
            .split(',')
            .map(|t| t.trim().parse::<u64>().map_err(|_| bad()))
            .collect::<Result<Vec<_>, _>>()?;
        return Ok(WeightPolicy::Targeted { totals, max_edge });
    }
    Err(bad())
}

#[derive(Subcommand)]
enum Command {
    /// Generate random quadruples.
    Gen {
        #[command(flatten)]
        gen: GenArgs,
        /// Directory for one `.graph` file per instance; stdout if absent.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Decide whether some class member is below a quarter of w(C).
    Verify {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Mode::Theorem)]
        mode: Mode,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Print the minimum zero weight and its witness.
    Minimize {
        #[arg(long)]
        input: PathBuf,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Lift adjacent equal circuit edges until resolved or reduced.
    Reduce {
        #[arg(long)]
        input: PathBuf,
        /// Where to write the reduced quadruple.
        #[arg(long)]
        output: Option<PathBuf>,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Evaluate the structural lemmas on a quadruple.
    Audit {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        report: Option<PathBuf>,
        /// Reject the input unless it really is a counterexample.
        #[arg(long)]
        claims_counterexample: bool,
        #[arg(long, env = "FLOWFORGE_BUDGET", default_value_t = DEFAULT_BUDGET)]
        budget: u128,
    },
    /// Hunt-mode sweep with oracle re-check, reduction, audit and archive.
    Hunt {
        #[command(flatten)]
        gen: GenArgs,
        #[command(flatten)]
        search: SearchArgs,
        /// CSV destination; stdout if absent.
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long, default_value = "candidates")]
        archive: PathBuf,
        #[arg(long)]
        timing: bool,
    },
    /// Verify every generated instance and write CSV records.
    Sweep {
        #[command(flatten)]
        gen: GenArgs,
        #[command(flatten)]
        search: SearchArgs,
        #[arg(long)]
        output: Option<PathBuf>,
        /// Add wall-clock seconds per instance (output is then not reproducible).
        #[arg(long)]
        timing: bool,
        /// Where a theorem-mode counterexample is dumped.
        #[arg(long, default_value = ".")]
        dump: PathBuf,
    },
    /// Convert between Z2xZ2 `flow` lines and integer `iflow` lines.
    Convert {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Cover the graph by two cycles from a nowhere-zero flow.
    Cover {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
}

const EXIT_COUNTEREXAMPLE: u8 = 1;

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::BudgetExceeded { .. } => 3,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn sink(path: Option<&Path>) -> Result<Box<dyn Write>, Error> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn run(command: Command) -> Result<u8, Error> {
    match command {
        Command::Gen { gen, output } => {
            let cfg = gen.config()?;
            if let Some(dir) = &output {
                std::fs::create_dir_all(dir)?;
            }
            let mut out = io::stdout().lock();
            let mut exhausted = 0;
            for inst in generate(&cfg)? {
                match inst {
                    Instance::Generated { id, quadruple } => {
                        let name = format!("instance-{}-{id}", cfg.seed);
                        let text = write_quadruple(&name, &quadruple);
                        match &output {
                            Some(dir) => write_atomic(&dir.join(format!("{name}.graph")), &text)?,
                            None => writeln!(out, "{text}")?,
                        }
                    }
                    Instance::Exhausted { id, reason } => {
                        exhausted += 1;
                        eprintln!("instance {id}: exhausted ({reason})");
                    }
                }
            }
            eprintln!("generated={} exhausted={exhausted}", cfg.count - exhausted);
            Ok(0)
        }
        Command::Verify { input, mode, search } => {
            let q = read_document(&input)?.into_quadruple()?;
            let verdict = verify_theorem(&q, mode.into(), &search.options())?;
            let w = q.circuit_weight();
            let min = verdict.zero_weight();
            match &verdict {
                TheoremVerdict::Holds { evidence, .. } => {
                    let how = match evidence {
                        flowforge::search::Evidence::Pigeonhole => "pigeonhole".to_string(),
                        flowforge::search::Evidence::Search(r) => r.method.to_string(),
                    };
                    println!("holds: 4*{min} < {w} ({how})");
                }
                TheoremVerdict::Counterexample { result, .. } => {
                    println!("counterexample: minimum {min}, 4*{min} >= {w} ({})", result.method);
                }
            }
            for pos in 0..q.graph().edge_count() {
                println!("flow {} {}", q.graph().id(pos), verdict.witness().get(pos));
            }
            Ok(if verdict.holds() { 0 } else { EXIT_COUNTEREXAMPLE })
        }
        Command::Minimize { input, search } => {
            let q = read_document(&input)?.into_quadruple()?;
            let r = minimize_zero_weight(&q, &search.options())?;
            println!("minimum {}", r.minimum_zero_weight);
            for pos in 0..q.graph().edge_count() {
                println!("flow {} {}", q.graph().id(pos), r.witness.get(pos));
            }
            println!(
                "4*min < w(C): {}",
                if r.theorem_holds { "yes" } else { "no" }
            );
            Ok(0)
        }
        Command::Reduce { input, output, search } => {
            let q = read_document(&input)?.into_quadruple()?;
            let report = reduce_quadruple(&q, &search.options())?;
            for step in &report.trace {
                match step {
                    TraceStep::Pigeonhole => println!("step pigeonhole: w(C) not divisible by 4"),
                    TraceStep::Search { minimum } => println!("step search: minimum {minimum}"),
                    TraceStep::Lift {
                        record,
                        edges_after,
                        degenerate,
                    } => println!(
                        "step lift: edges {} {} -> {} (weight {}, value {}, pivot {}), |E| = {edges_after}{}",
                        record.removed.0,
                        record.removed.1,
                        record.added,
                        record.added_weight,
                        record.witness_value,
                        record.pivot_vertex,
                        if *degenerate { ", degenerate circuit" } else { "" }
                    ),
                }
            }
            match report.outcome {
                Reduction::Resolved {
                    witness,
                    zero_weight,
                    circuit_weight,
                } => {
                    println!("resolved: 4*{zero_weight} < {circuit_weight}");
                    for pos in 0..q.graph().edge_count() {
                        println!("flow {} {}", q.graph().id(pos), witness.get(pos));
                    }
                    Ok(0)
                }
                Reduction::Reduced(r) => {
                    println!("reduced: no lift applies and no member beats a quarter");
                    let text = write_quadruple("reduced", &r);
                    match output {
                        Some(p) => write_atomic(&p, &text)?,
                        None => print!("{text}"),
                    }
                    Ok(EXIT_COUNTEREXAMPLE)
                }
            }
        }
        Command::Audit {
            input,
            report,
            claims_counterexample,
            budget,
        } => {
            let q = read_document(&input)?.into_quadruple()?;
            let r = audit(&q, claims_counterexample, budget)?;
            let text = r.to_string();
            match report {
                Some(p) => write_atomic(&p, &text)?,
                None => print!("{text}"),
            }
            Ok(0)
        }
        Command::Sweep {
            gen,
            search,
            output,
            timing,
            dump,
        } => {
            let cfg = gen.config()?;
            let opts = SweepOptions {
                search: SearchOptions {
                    jobs: 1,
                    ..search.options()
                },
                timing,
                dump_dir: Some(dump),
            };
            let summary = with_pool(search.jobs, || sweep(&cfg, &opts, sink(output.as_deref())?))?;
            eprintln!("{summary}");
            Ok(if summary.counterexamples > 0 { EXIT_COUNTEREXAMPLE } else { 0 })
        }
        Command::Hunt {
            gen,
            search,
            output,
            archive,
            timing,
        } => {
            let cfg = gen.config()?;
            let opts = HuntOptions {
                sweep: SweepOptions {
                    search: SearchOptions {
                        jobs: 1,
                        ..search.options()
                    },
                    timing,
                    dump_dir: None,
                },
                oracle_budget: search.budget,
                archive_dir: archive,
            };
            let report = with_pool(search.jobs, || hunt(&cfg, &opts, sink(output.as_deref())?))?;
            eprintln!("{}", report.summary);
            let mut confirmed = 0;
            for c in &report.candidates {
                match c {
                    Candidate::Confirmed {
                        id,
                        oracle_minimum,
                        files,
                        ..
                    } => {
                        confirmed += 1;
                        let names: Vec<String> = files.iter().map(|f| f.display().to_string()).collect();
                        eprintln!("candidate {id}: oracle minimum {oracle_minimum}; archived {}", names.join(" "));
                    }
                    Candidate::Rejected {
                        id,
                        fast_minimum,
                        oracle_minimum,
                    } => eprintln!(
                        "instance {id}: fast search reported {fast_minimum}, oracle found {oracle_minimum}; not a candidate"
                    ),
                }
            }
            eprintln!("candidates={confirmed}");
            Ok(if confirmed > 0 { EXIT_COUNTEREXAMPLE } else { 0 })
        }
        Command::Convert { input, output } => {
            let mut doc = read_document(&input)?;
            match (&doc.flow, &doc.integer_flow) {
                (Some(f), _) => {
                    doc.integer_flow = Some(to_integer_4flow(&doc.graph, f)?);
                    doc.flow = None;
                }
                (None, Some(h)) => {
                    doc.flow = Some(from_integer_4flow(&doc.graph, h)?);
                    doc.integer_flow = None;
                }
                (None, None) => {
                    return Err(Error::InvalidQuadruple("input has neither flow nor iflow lines".into()))
                }
            }
            let text = write_document(&doc);
            match output {
                Some(p) => write_atomic(&p, &text)?,
                None => print!("{text}"),
            }
            Ok(0)
        }
        Command::Cover { input, jobs } => {
            let doc = read_document(&input)?;
            // a quadruple file's flow may vanish on C; search instead
            let given = doc.flow.as_ref().filter(|f| f.is_nowhere_zero());
            let r = cover(&doc.graph, given, jobs)?;
            println!("flow = {}", if given.is_some() { "from input" } else { "searched" });
            print!("{r}");
            Ok(0)
        }
    }
}

fn with_pool<T>(jobs: usize, f: impl FnOnce() -> Result<T, Error> + Send) -> Result<T, Error>
where
    T: Send,
{
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::InvalidConfig(e.to_string()))?;
    pool.install(f)
}
