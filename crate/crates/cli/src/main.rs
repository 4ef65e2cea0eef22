use std::fs;
use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use mmforge::bounds::{basic_bounds, catalog, known_mm, structural_bounds, BoundResult};
use mmforge::constructors::{bipartite_matrix, complete_graph_matrix, mr_plus_two_matrix, reorient_bipartite};
use mmforge::eiglab::{verify_certificate_with, Tolerances, CLUSTER_TOL};
use mmforge::graph::{parse_edge_list, parse_graph6};
use mmforge::searcher::{search_mm, SearchConfig};
use mmforge::seed::DEFAULT_SEED;
use mmforge::{Certificate, FamilyDescriptor, Graph, MmError, SpectrumSpec};

#[derive(Parser, Debug)]
#[command(name = "mmforge", version, about = "Patterned symmetric matrices with large minimal eigenvalue multiplicity")]
struct Cli {
    /// Master seed, decimal or 0x-prefixed hex. Defaults to 0x5EED.
    #[arg(long, global = true, env = "MMFORGE_SEED", value_parser = parse_seed)]
    seed: Option<u64>,
    /// Relative tolerance for grouping eigenvalues into clusters.
    #[arg(long, global = true, default_value_t = CLUSTER_TOL)]
    tol_cluster: f64,
    /// Relative tolerance for matching cluster values against a target.
    #[arg(long, global = true, default_value_t = 1e-6)]
    tol_verify: f64,
    /// Write the JSON result here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a certificate for a graph family.
    Construct {
        /// Family descriptor as inline JSON or a path to a JSON file.
        #[arg(long)]
        family: String,
        /// "auto" for the catalogued witness, or a spectrum (inline JSON or path).
        #[arg(long, default_value = "auto")]
        target: String,
        /// Also export the matrix as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Re-check a certificate from scratch.
    Verify { cert: PathBuf },
    /// Upper and lower bounds on the minimal multiplicity.
    Bound {
        #[arg(long, required_unless_present = "family", conflicts_with = "family")]
        graph: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Edges)]
        format: Format,
        #[arg(long)]
        family: Option<String>,
        /// Candidate evaluations for the greedy induced-tree search.
        #[arg(long, default_value_t = 100_000)]
        tree_budget: usize,
        /// Known maximum multiplicity M(G).
        #[arg(long)]
        max_mult: Option<usize>,
        /// Known minimum number of distinct eigenvalues q(G).
        #[arg(long)]
        min_distinct: Option<usize>,
    },
    /// Numerical search for a matrix with large minimal multiplicity.
    Search {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Edges)]
        format: Format,
        /// Search configuration as inline JSON or a path; missing fields use defaults.
        #[arg(long)]
        config: Option<String>,
        #[arg(long)]
        restarts: Option<usize>,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Table of families with known exact values.
    Catalog,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Edges,
    G6,
}

enum Failure {
    Verification(Vec<String>),
    Input(String),
    Library(MmError),
}

impl From<MmError> for Failure {
    fn from(e: MmError) -> Self {
        Failure::Library(e)
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Input(format!("json: {e}"))
    }
}

type Outcome = Result<(), Failure>;

fn parse_seed(s: &str) -> Result<u64, String> {
    let s = s.trim();
    let parsed = match s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
        Some(hex) => u64::from_str_radix(hex, 16),
        None => s.parse(),
    };
    parsed.map_err(|e| format!("invalid seed {s:?}: {e}"))
}

fn read_path(path: &Path) -> Result<String, Failure> {
    if path == Path::new("-") {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| Failure::Input(format!("stdin: {e}")))?;
        return Ok(s);
    }
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

/// Inline JSON if the argument looks like JSON, otherwise a file path.
fn json_arg<T: serde::de::DeserializeOwned>(arg: &str) -> Result<T, Failure> {
    let t = arg.trim_start();
    let text = if t.starts_with(['{', '[', '"']) { arg.to_owned() } else { read_path(Path::new(arg))? };
    Ok(serde_json::from_str(&text)?)
}

fn read_graph(path: &Path, format: Format) -> Result<Graph, Failure> {
    let text = read_path(path)?;
    Ok(match format {
        Format::Edges => parse_edge_list(&text)?,
        Format::G6 => parse_graph6(text.trim())?,
    })
}

fn emit(out: Option<&Path>, value: &impl serde::Serialize) -> Outcome {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    match out {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Input(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn write_csv(path: Option<&PathBuf>, cert: &Certificate) -> Outcome {
    if let Some(p) = path {
        fs::write(p, cert.matrix.to_csv()).map_err(|e| Failure::Input(format!("{}: {e}", p.display())))?;
    }
    Ok(())
}

fn tolerances(cli: &Cli) -> Tolerances {
    Tolerances { cluster: cli.tol_cluster, value: cli.tol_verify, ..Tolerances::default() }
}

fn check(cli: &Cli, cert: &Certificate) -> Outcome {
    let v = verify_certificate_with(cert, &tolerances(cli));
    if v.passed {
        Ok(())
    } else {
        Err(Failure::Verification(v.diagnostics))
    }
}

/// Bipartite `±λ` spectra: positive values paired with their negatives, padded
/// with zeros up to the smaller side.
fn bipartite_lambdas(spec: &SpectrumSpec, small: usize) -> Result<Vec<f64>, Failure> {
    let values = spec
        .expanded()
        .ok_or_else(|| Failure::Input("complete bipartite targets need every value fixed".into()))?;
    let mut pos: Vec<f64> = values.iter().copied().filter(|&v| v > 0.0).collect();
    let mut neg: Vec<f64> = values.iter().copied().filter(|&v| v < 0.0).map(|v| -v).collect();
    pos.sort_by(|a, b| b.total_cmp(a));
    neg.sort_by(|a, b| b.total_cmp(a));
    let symmetric = pos.len() == neg.len() && pos.iter().zip(&neg).all(|(a, b)| (a - b).abs() <= 1e-9 * a.max(1.0));
    if !symmetric || pos.is_empty() || pos.len() > small {
        return Err(Failure::Input(format!(
            "target is not of the form ±λ_1..±λ_k plus zeros with 1 <= k <= {small}"
        )));
    }
    pos.resize(small, 0.0);
    Ok(pos)
}

fn construct_explicit(desc: &FamilyDescriptor, spec: &SpectrumSpec, seed: u64) -> Result<Certificate, Failure> {
    if spec.dimension() != desc.order() {
        return Err(MmError::DimensionMismatch { expected: desc.order(), found: spec.dimension() }.into());
    }
    match desc {
        FamilyDescriptor::Complete(_) => Ok(complete_graph_matrix(spec, None, seed)?),
        &FamilyDescriptor::CompleteBipartite(m, n) => {
            let lambdas = bipartite_lambdas(spec, m.min(n))?;
            let c = bipartite_matrix(m.min(n), m.max(n), &lambdas, seed)?;
            Ok(reorient_bipartite(c, m, n)?)
        }
        FamilyDescriptor::ComplementForm { .. } => {
            let items = spec.items();
            let fits = items.len() == 2
                && items.iter().zip([0.0, 1.0]).all(|(it, v)| it.value.is_none_or(|x| x == v))
                && items.iter().all(|it| it.multiplicity >= 2);
            if !fits {
                return Err(Failure::Input("complement-form targets are {0: 2 + n1, 1: 2 + n2}".into()));
            }
            Ok(mr_plus_two_matrix(desc, items[0].multiplicity - 2, items[1].multiplicity - 2, seed)?)
        }
        _ => Err(Failure::Input("explicit targets need Complete, CompleteBipartite or ComplementForm; use --target auto".into())),
    }
}

fn run(cli: &Cli) -> Outcome {
    let seed = cli.seed.unwrap_or(DEFAULT_SEED);
    let out = cli.out.as_deref();
    match &cli.command {
        Command::Construct { family, target, csv } => {
            let desc: FamilyDescriptor = json_arg(family)?;
            desc.validate()?;
            let cert = if target.trim() == "auto" {
                known_mm(&desc, seed)?
                    .witness
                    .ok_or_else(|| Failure::Input("no constructor witness for this family".into()))?
            } else {
                construct_explicit(&desc, &json_arg(target)?, seed)?
            };
            emit(out, &cert)?;
            write_csv(csv.as_ref(), &cert)?;
            check(cli, &cert)
        }
        Command::Verify { cert } => {
            let cert: Certificate = serde_json::from_str(&read_path(cert)?)?;
            let v = verify_certificate_with(&cert, &tolerances(cli));
            emit(out, &v)?;
            if v.passed {
                Ok(())
            } else {
                Err(Failure::Verification(v.diagnostics))
            }
        }
        Command::Bound { graph, format, family, tree_budget, max_mult, min_distinct } => {
            let (g, known) = match (graph, family) {
                (Some(p), _) => (read_graph(p, *format)?, None),
                (None, Some(f)) => {
                    let desc: FamilyDescriptor = json_arg(f)?;
                    desc.validate()?;
                    (desc.graph()?, Some(known_mm(&desc, seed)?))
                }
                (None, None) => return Err(Failure::Input("need --graph or --family".into())),
            };
            let mut b: BoundResult = structural_bounds(&g, *tree_budget)?;
            if let Some(k) = known {
                b = k.meet(b)?;
            }
            if max_mult.is_some() || min_distinct.is_some() {
                b = b.meet(basic_bounds(g.order(), *max_mult, *min_distinct)?)?;
            }
            emit(out, &b)
        }
        Command::Search { graph, format, config, restarts, csv } => {
            let g = read_graph(graph, *format)?;
            let mut cfg: SearchConfig = match config {
                Some(c) => json_arg(c)?,
                None => SearchConfig::default(),
            };
            if let Some(s) = cli.seed {
                cfg.seed = s;
            }
            if let Some(r) = restarts {
                cfg.restarts = *r;
            }
            let found = search_mm(&g, &cfg)?;
            for w in &found.warnings {
                eprintln!("warning: {w}");
            }
            eprintln!(
                "minimal multiplicity {} with composition {:?} (restart {}, objective {:e})",
                found.achieved, found.composition, found.restart, found.objective
            );
            emit(out, &found.certificate)?;
            write_csv(csv.as_ref(), &found.certificate)?;
            check(cli, &found.certificate)
        }
        Command::Catalog => emit(out, &catalog()),
    }
}

fn exit_code(f: &Failure) -> u8 {
    match f {
        Failure::Verification(_) => 1,
        Failure::Library(MmError::GenericPosition { .. }) => 3,
        Failure::Library(_) | Failure::Input(_) => 2,
    }
}

fn report(f: &Failure) {
    match f {
        Failure::Verification(diagnostics) => {
            eprintln!("verification failed");
            for d in diagnostics {
                eprintln!("  {d}");
            }
        }
        Failure::Library(MmError::GenericPosition { stage, seeds }) => {
            eprintln!("error: generic-position failure in {stage}");
            let trail: Vec<String> = seeds.iter().map(|s| format!("{s:#x}")).collect();
            eprintln!("seed trail: {}", trail.join(" "));
        }
        Failure::Library(e) => eprintln!("error: {e}"),
        Failure::Input(msg) => eprintln!("error: {msg}"),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            report(&f);
            ExitCode::from(exit_code(&f))
        }
    }
}
