mod config;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use edgedepth::formulas::{self, BranchVariant, PathDepthQuery, WeightProfile};
use edgedepth::verify::{self, BranchSelection, Suite, SweepSpec};
use edgedepth::{
    betti_table, weighted_path, Error, Method, Monomial, MonomialIdeal, WeightSequence,
    WeightedGraph,
};

use config::{CliConfig, Format, CONFIG_ENV};

#[derive(Parser)]
#[command(name = "edgedepth", version)]
#[command(
    about = "Depth, Betti numbers and colon ideals of monomial ideals, with checks for weighted paths"
)]
struct Cli {
    /// TOML file with default settings
    #[arg(long, global = true, env = CONFIG_ENV)]
    config: Option<PathBuf>,

    /// Output format (defaults to the config file's, then text)
    #[arg(long, global = true)]
    format: Option<Format>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Depth of S/I^t
    Depth {
        #[command(flatten)]
        source: IdealSource,
        #[arg(long, default_value_t = 1)]
        power: u32,
        /// Field characteristic: 0 or a prime
        #[arg(long = "char")]
        characteristic: Option<u32>,
        #[arg(long, value_enum, default_value_t = MethodArg::LatticeKoszul)]
        method: MethodArg,
    },
    /// Multigraded Betti numbers of S/I^t, one `i <TAB> multidegree <TAB> rank` row each
    Betti {
        #[command(flatten)]
        source: IdealSource,
        #[arg(long, default_value_t = 1)]
        power: u32,
        #[arg(long = "char")]
        characteristic: Option<u32>,
    },
    /// Minimal generators of I : m or I : J
    Colon {
        #[command(flatten)]
        source: IdealSource,
        #[arg(long, default_value_t = 1)]
        power: u32,
        /// Monomial to divide by, e.g. x1*x2^2
        #[arg(long, group = "divisor")]
        by: Option<String>,
        /// Ideal to divide by, generators separated by commas
        #[arg(long, group = "divisor")]
        by_ideal: Option<String>,
        #[arg(long, group = "divisor")]
        by_ideal_file: Option<PathBuf>,
    },
    /// Depth of S/I(P(w))^t from the closed formula, the engine, or both
    PathDepth {
        /// Comma-separated edge weights, e.g. 1,2,1,1
        #[arg(long)]
        weights: String,
        #[arg(long)]
        power: u32,
        #[arg(long, value_enum, default_value_t = PathMethod::Both)]
        method: PathMethod,
        #[arg(long = "char")]
        characteristic: Option<u32>,
        /// Reading of the exceptional one-weight branch
        #[arg(long, value_enum, default_value_t = VariantArg::Mod4)]
        branch_variant: VariantArg,
    },
    /// Run verification suites and write a report
    Verify(VerifyArgs),
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct IdealSource {
    /// Edge weights of a path; the ideal is its weighted edge ideal
    #[arg(long)]
    weights: Option<String>,
    /// Generators inline, separated by commas, e.g. "x1*x2, x2*x3"
    #[arg(long)]
    ideal: Option<String>,
    /// Ideal as JSON ({"n":..,"gens":[[..]]}) or text, one generator per line
    #[arg(long)]
    ideal_file: Option<PathBuf>,
    /// Weighted graph as JSON ({"n":..,"edges":[[i,j,w],..]})
    #[arg(long)]
    graph_file: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// theorem1, theorem2, colon, structural, remark or all
    #[arg(long, value_delimiter = ',', default_value = "all")]
    suite: Vec<String>,
    #[arg(long, default_value_t = 4)]
    n_min: usize,
    #[arg(long, default_value_t = 6)]
    n_max: usize,
    #[arg(long, default_value_t = 2)]
    t_min: u32,
    #[arg(long, default_value_t = 3)]
    t_max: u32,
    /// Positions of the first non-trivial weight (all valid positions when omitted)
    #[arg(long = "a", value_delimiter = ',')]
    positions: Option<Vec<usize>>,
    /// Non-trivial weight values to sweep
    #[arg(long, value_delimiter = ',', default_value = "2,3")]
    weights: Vec<u32>,
    /// Largest n for the witness colon families
    #[arg(long, default_value_t = 9)]
    witness_n_max: usize,
    /// Characteristics, e.g. 0,2 (defaults to the configured one)
    #[arg(long = "char", value_delimiter = ',')]
    characteristics: Option<Vec<u32>>,
    #[arg(long, value_enum, default_value_t = SelectionArg::Both)]
    branch_variant: SelectionArg,
    /// Sampled instances per randomized structural check
    #[arg(long, default_value_t = 30)]
    samples: usize,
    #[arg(long)]
    seed: Option<u64>,
    /// Write the JSON report here
    #[arg(long)]
    out: Option<PathBuf>,
    /// Write the CSV export here
    #[arg(long)]
    csv: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    LatticeKoszul,
    TaylorOracle,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PathMethod {
    Formula,
    Homology,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    Mod4,
    Mod3,
}

#[derive(Clone, Copy, ValueEnum)]
enum SelectionArg {
    Mod4,
    Mod3,
    Both,
}

enum Failure {
    Usage(String),
    Engine(Error),
    Mismatch,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Engine(e)
    }
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Mismatch => 1,
            Failure::Usage(_) => 2,
            Failure::Engine(e) if e.is_resource() => 3,
            Failure::Engine(_) => 2,
        }
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

fn read(path: &PathBuf) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn write(path: &PathBuf, contents: &str) -> CliResult<()> {
    fs::write(path, contents).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn parse_ideal_text(text: &str) -> CliResult<MonomialIdeal> {
    if text.trim_start().starts_with('{') {
        Ok(MonomialIdeal::from_json_str(text)?)
    } else {
        Ok(MonomialIdeal::from_text_infer(text)?)
    }
}

fn inline_ideal(list: &str) -> CliResult<MonomialIdeal> {
    parse_ideal_text(&list.replace(',', "\n"))
}

impl IdealSource {
    fn load(&self) -> CliResult<MonomialIdeal> {
        if let Some(w) = &self.weights {
            return Ok(weighted_path(&WeightSequence::parse(w)?).edge_ideal());
        }
        if let Some(list) = &self.ideal {
            return inline_ideal(list);
        }
        if let Some(path) = &self.ideal_file {
            return parse_ideal_text(&read(path)?);
        }
        if let Some(path) = &self.graph_file {
            return Ok(WeightedGraph::from_json_str(&read(path)?)?.edge_ideal());
        }
        Err(Failure::Usage("no ideal given".into()))
    }

    fn load_power(&self, t: u32) -> CliResult<MonomialIdeal> {
        if t == 0 {
            return Err(Failure::Usage("--power must be at least 1".into()));
        }
        Ok(self.load()?.power(t)?)
    }
}

/// Closed-form depth for a weight sequence, where one exists.
fn formula_depth(w: &WeightSequence, t: u32, variant: BranchVariant) -> Result<i64, Error> {
    if t == 0 {
        return Err(Error::OutOfRange("t must be at least 1".into()));
    }
    if t == 1 {
        if w.nontrivial_positions().is_empty() {
            return formulas::path_depth_unweighted(w.vertex_count());
        }
        return Err(Error::OutOfRange(
            "no closed form at t = 1 for weighted paths".into(),
        ));
    }
    let q = PathDepthQuery::from_weights(w, t)?;
    match q.profile() {
        WeightProfile::OneWeight { .. } => formulas::theorem1_depth(&q, variant),
        WeightProfile::TwoWeight { .. } => formulas::theorem2_depth(&q),
        WeightProfile::Trivial => Err(Error::OutOfRange(
            "no closed form for unweighted paths at t >= 2".into(),
        )),
    }
}

fn run(cli: Cli) -> CliResult<()> {
    let config = match &cli.config {
        Some(path) => CliConfig::load(path).map_err(Failure::Usage)?,
        None => CliConfig::default(),
    };
    let format = cli.format.unwrap_or(config.format);
    match cli.command {
        Command::Depth {
            source,
            power,
            characteristic,
            method,
        } => {
            let ideal = source.load_power(power)?;
            let method = match method {
                MethodArg::LatticeKoszul => Method::LatticeKoszul,
                MethodArg::TaylorOracle => Method::TaylorOracle,
            };
            let report = edgedepth::resolution::depth_with_method(
                &ideal,
                &config.engine(characteristic)?,
                method,
            )?;
            match format {
                Format::Json => println!("{}", report.to_json_string()),
                Format::Csv => {
                    println!("depth,pd,char,method,lattice_size,elapsed_ms");
                    println!(
                        "{},{},{},{},{},{}",
                        report.depth,
                        report.projective_dimension,
                        report.field,
                        report.method,
                        report.lattice_size,
                        report.elapsed.as_millis()
                    );
                }
                Format::Text => {
                    println!("depth: {}", report.depth);
                    println!("pd: {}", report.projective_dimension);
                    println!("char: {}", report.field);
                    println!("method: {}", report.method);
                    println!("lattice_size: {}", report.lattice_size);
                    println!("elapsed_ms: {}", report.elapsed.as_millis());
                }
            }
        }
        Command::Betti {
            source,
            power,
            characteristic,
        } => {
            let ideal = source.load_power(power)?;
            let table = betti_table(&ideal, &config.engine(characteristic)?)?;
            print!("{}", table.to_rows());
        }
        Command::Colon {
            source,
            power,
            by,
            by_ideal,
            by_ideal_file,
        } => {
            let ideal = source.load_power(power)?;
            let n = ideal.nvars();
            let result = if let Some(m) = by {
                ideal.colon_monomial(&Monomial::parse(&m, n)?)?
            } else {
                let divisor = match (by_ideal, by_ideal_file) {
                    (Some(list), _) => inline_ideal(&list)?,
                    (_, Some(path)) => parse_ideal_text(&read(&path)?)?,
                    _ => {
                        return Err(Failure::Usage(
                            "give --by, --by-ideal or --by-ideal-file".into(),
                        ))
                    }
                };
                // Inferred ambients may be narrower than the ideal's ring.
                let divisor = if divisor.nvars() < n {
                    divisor.embed(0, n)?
                } else {
                    divisor
                };
                ideal.colon_ideal(&divisor)?
            };
            match format {
                Format::Json => println!("{}", result.to_json_string()),
                _ => print!("{}", result.to_text()),
            }
        }
        Command::PathDepth {
            weights,
            power,
            method,
            characteristic,
            branch_variant,
        } => {
            let w = WeightSequence::parse(&weights)?;
            let variant = match branch_variant {
                VariantArg::Mod4 => BranchVariant::Mod4,
                VariantArg::Mod3 => BranchVariant::Mod3,
            };
            let formula = match method {
                PathMethod::Homology => None,
                _ => Some(formula_depth(&w, power, variant)?),
            };
            let homology = match method {
                PathMethod::Formula => None,
                _ => {
                    let ideal = weighted_path(&w).edge_ideal().power(power.max(1))?;
                    Some(edgedepth::depth(&ideal, &config.engine(characteristic)?)?.depth as i64)
                }
            };
            let verdict = match (formula, homology) {
                (Some(f), Some(h)) => Some(if f == h { "MATCH" } else { "MISMATCH" }),
                _ => None,
            };
            if format == Format::Json {
                println!(
                    "{}",
                    json!({"weights": w.to_string(), "t": power, "formula": formula,
                           "homology": homology, "verdict": verdict})
                );
            } else {
                if let Some(f) = formula {
                    println!("formula: {f}");
                }
                if let Some(h) = homology {
                    println!("homology: {h}");
                }
                if let Some(v) = verdict {
                    println!("{v}");
                }
            }
            if verdict == Some("MISMATCH") {
                return Err(Failure::Mismatch);
            }
        }
        Command::Verify(args) => return run_verify(args, &config, format),
    }
    Ok(())
}

fn run_verify(args: VerifyArgs, config: &CliConfig, format: Format) -> CliResult<()> {
    let mut suites = Vec::new();
    for name in &args.suite {
        if name == "all" {
            suites.extend(Suite::ALL);
        } else {
            suites.push(name.parse::<Suite>()?);
        }
    }
    suites.dedup();
    let spec = SweepSpec {
        n_min: args.n_min,
        n_max: args.n_max,
        t_min: args.t_min,
        t_max: args.t_max,
        positions: args.positions,
        weights: args.weights,
        witness_n_max: args.witness_n_max,
        characteristics: args
            .characteristics
            .unwrap_or_else(|| vec![config.characteristic]),
        branch_variant: match args.branch_variant {
            SelectionArg::Mod4 => BranchSelection::Mod4,
            SelectionArg::Mod3 => BranchSelection::Mod3,
            SelectionArg::Both => BranchSelection::Both,
        },
        case_budget: config.case_budget(),
        lattice_cap: config.lattice_cap,
        oracle_cap: config.oracle_cap,
        seed: args.seed.unwrap_or(config.seed),
        samples: args.samples,
        ..SweepSpec::default()
    };
    let report = verify::run(&suites, &spec)?;
    if let Some(path) = &args.out {
        write(path, &report.to_json_string())?;
    }
    if let Some(path) = &args.csv {
        write(path, &report.to_csv())?;
    }
    let summary = report.summary();
    match format {
        Format::Json if args.out.is_none() => {
            print!("{}", report.to_json_string());
            eprintln!("{summary}");
        }
        Format::Csv if args.csv.is_none() => {
            print!("{}", report.to_csv());
            eprintln!("{summary}");
        }
        _ => {
            for s in report.suites.iter().filter(|s| s.name == Suite::Theorem1) {
                let f = verify::branch_variant_finding(&s.cases);
                if f.discriminating_cases > 0 {
                    let which = f
                        .supported
                        .map_or("neither variant uniquely".to_string(), |v| v.to_string());
                    println!(
                        "branch variant: engine supports {which} on {} discriminating cases (mod4 {}, mod3 {})",
                        f.discriminating_cases, f.mod4_matches, f.mod3_matches
                    );
                }
            }
            println!("{summary}");
        }
    }
    if summary.mismatch > 0 {
        return Err(Failure::Mismatch);
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            match &failure {
                Failure::Usage(m) => eprintln!("error: {m}"),
                Failure::Engine(e) => eprintln!("error: {e}"),
                Failure::Mismatch => {}
            }
            ExitCode::from(failure.exit_code())
        }
    }
}
