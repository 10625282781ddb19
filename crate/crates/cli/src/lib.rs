//! Command-line front end: argument parsing, file I/O and output formatting
//! around `ohom-core`.

mod registry;
mod report;

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use ohom_core::homcomplex::build_ohom;
use ohom_core::homology::FieldTag;
use ohom_core::nonnesting::{
    build_poset, enumerate_nonnesting, nonnesting_ideal, small_diagrams, weight_strategy, Partition,
    DEFAULT_R_BOUND,
};
use ohom_core::resolution::{betti_numbers, export_resolution, IdealGens};
use ohom_core::{Complex, Monomial, RestrictionSpec};
use serde_json::json;

pub use registry::{complex_check, complex_checks, verifier, verifiers, ComplexCheck, Verifier};
pub use report::{Failure, Outcome, Report};

use report::bracket;

#[derive(Debug, Parser)]
#[command(name = "ohomresolve", version, about = "Ordered hom complexes and the resolutions they support")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Worker threads for parallel searches (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Upper limit on vertex counts for exhaustive searches and on r and n.
    #[arg(long, global = true, default_value_t = DEFAULT_R_BOUND)]
    bound: usize,
    /// Accept non-cointerval targets after checking support and minimality directly.
    #[arg(long = "override", global = true)]
    allow_unverified: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Properties of a single complex.
    Check(CheckArgs),
    /// Generators, face counts and Betti numbers of an ordered hom complex.
    Hom(HomArgs),
    /// Resolution and contractibility checks on an ordered hom complex.
    Verify(VerifyArgs),
    /// Nonnesting partitions, arc diagrams and weights.
    #[command(subcommand)]
    Nn(NnCommand),
}

#[derive(Debug, Args)]
struct CheckArgs {
    /// Complex file, e.g. {"n": 4, "facets": [[1,2],[3,4]]}.
    complex: PathBuf,
    #[command(flatten)]
    which: CheckWhich,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct CheckWhich {
    #[arg(long)]
    cointerval: bool,
    #[arg(long)]
    shifted: bool,
    #[arg(long)]
    vertex_decomposable: bool,
    /// Search vertex relabelings for one that is cointerval.
    #[arg(long)]
    find_order: bool,
}

impl CheckWhich {
    fn name(&self) -> &'static str {
        if self.cointerval {
            "cointerval"
        } else if self.shifted {
            "shifted"
        } else if self.vertex_decomposable {
            "vertex-decomposable"
        } else {
            "find-order"
        }
    }
}

#[derive(Debug, Args)]
struct RestrictArgs {
    /// Per-variable degree caps, e.g. `2,inf,1`.
    #[arg(long)]
    alpha: Option<String>,
    /// Revlex floor on vertex labels as an exponent vector, e.g. `0,1,1`.
    #[arg(long)]
    beta: Option<String>,
}

#[derive(Debug, Args)]
struct HomArgs {
    source: PathBuf,
    target: PathBuf,
    #[command(flatten)]
    what: HomWhich,
    #[command(flatten)]
    restrict: RestrictArgs,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct HomWhich {
    #[arg(long)]
    generators: bool,
    #[arg(long)]
    fvector: bool,
    #[arg(long)]
    betti: bool,
    /// Write the resolution's differentials to this file.
    #[arg(long, value_name = "OUT")]
    export: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    source: PathBuf,
    target: PathBuf,
    #[command(flatten)]
    which: VerifyWhich,
    /// Coefficient field: q or gf2.
    #[arg(long, default_value_t = FieldTag::Rationals)]
    field: FieldTag,
    #[command(flatten)]
    restrict: RestrictArgs,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct VerifyWhich {
    /// Acyclicity of the complex and of every lcm-lattice subcomplex.
    #[arg(long)]
    acyclicity: bool,
    #[arg(long)]
    minimality: bool,
    #[arg(long)]
    linearity: bool,
    /// Greedy free-face collapse to a point.
    #[arg(long)]
    collapse: bool,
    /// Removal of revlex-smallest vertices down to a point.
    #[arg(long)]
    removal: bool,
}

impl VerifyWhich {
    fn name(&self) -> &'static str {
        if self.acyclicity {
            "acyclicity"
        } else if self.minimality {
            "minimality"
        } else if self.linearity {
            "linearity"
        } else if self.collapse {
            "collapse"
        } else {
            "removal"
        }
    }
}

#[derive(Debug, Subcommand)]
enum NnCommand {
    /// Nonnesting partitions of 1..=r.
    Enumerate {
        #[arg(short)]
        r: usize,
        /// Only arc diagrams whose arcs have length at most two.
        #[arg(long)]
        small: bool,
        /// Print the number of results only.
        #[arg(long)]
        count: bool,
    },
    /// Small arc diagrams on 1..=r.
    Small {
        #[arg(short)]
        r: usize,
        #[arg(long)]
        count: bool,
    },
    /// The diagram poset on 1..=r.
    Poset {
        #[arg(short)]
        r: usize,
        /// Also print the Möbius function on comparable pairs.
        #[arg(long)]
        mobius: bool,
    },
    /// Weights of every diagram on 1..=r.
    Weights {
        #[arg(short)]
        r: usize,
        #[arg(short)]
        n: usize,
        #[arg(short)]
        k: usize,
        /// Use Möbius inversion of Betti numbers instead of bucketing cells.
        #[arg(long, conflicts_with = "method")]
        invert: bool,
        /// Weight strategy by name.
        #[arg(long)]
        method: Option<String>,
    },
    /// Generators of the ideal of a nonnesting partition.
    Ideal {
        /// Partition such as `1,4|2,5,6|3`.
        #[arg(short)]
        p: String,
        #[arg(short)]
        n: usize,
    },
}

/// Parses `argv` (program name first), runs one subcommand, prints its
/// result and returns the exit code: 0 on success, 1 on a negative verdict,
/// 2 on bad input.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    let outcome = match cli.threads {
        Some(0) => Err(Failure::Usage("--threads must be positive".into())),
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| dispatch(&cli)),
            Err(e) => Err(Failure::Usage(format!("cannot start {n} threads: {e}"))),
        },
        None => dispatch(&cli),
    };
    match outcome {
        Ok(report) => {
            match cli.format {
                Format::Text => println!("{}", report.text),
                Format::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&report.json).expect("json values print")
                ),
            }
            if report.ok {
                0
            } else {
                1
            }
        }
        Err(failure) => {
            eprintln!("error: {}", failure.message());
            failure.code()
        }
    }
}

fn dispatch(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Check(args) => {
            let h = read_complex(&args.complex)?;
            let check = complex_check(args.which.name()).expect("every flag is registered");
            check.run(&h, cli.bound)
        }
        Command::Hom(args) => hom(cli, args),
        Command::Verify(args) => {
            let g = read_complex(&args.source)?;
            let h = read_complex(&args.target)?;
            let spec = restriction(&args.restrict, g.n(), h.n())?;
            let x = build_ohom(&g, &h, &spec)?;
            verifier(args.which.name())
                .expect("every flag is registered")
                .run(&x, args.field)
        }
        Command::Nn(command) => nn(cli, command),
    }
}

fn hom(cli: &Cli, args: &HomArgs) -> Outcome {
    let g = read_complex(&args.source)?;
    let h = read_complex(&args.target)?;
    let spec = restriction(&args.restrict, g.n(), h.n())?;
    let what = &args.what;
    if what.generators {
        let gens = IdealGens::from_complex(&build_ohom(&g, &h, &spec)?);
        return Ok(Report::new(true, gens.to_string(), &gens));
    }
    if what.fvector {
        let f = build_ohom(&g, &h, &spec)?.f_vector();
        return Ok(Report::new(true, bracket(&f), &f));
    }
    let table = betti_numbers(&g, &h, &spec, cli.allow_unverified)?;
    match &what.export {
        None => Ok(Report::new(true, bracket(&table.betti), &table)),
        Some(out) => {
            let export = export_resolution(&g, &h, &spec)?;
            let body = serde_json::to_string_pretty(&export).expect("exports serialize");
            std::fs::write(out, body + "\n")
                .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", out.display())))?;
            let text = format!("wrote {}\nbetti: {}", out.display(), bracket(&table.betti));
            Ok(Report::new(
                true,
                text,
                json!({ "path": out, "betti": table.betti, "provenance": table.provenance }),
            ))
        }
    }
}

fn nn(cli: &Cli, command: &NnCommand) -> Outcome {
    let bound = cli.bound;
    match command {
        NnCommand::Enumerate { r, small, count } => list_diagrams(*r, *small, *count, bound),
        NnCommand::Small { r, count } => list_diagrams(*r, true, *count, bound),
        NnCommand::Poset { r, mobius } => {
            let poset = build_poset(*r, bound)?;
            let keys: Vec<String> = poset.elements.iter().map(|d| d.key()).collect();
            let covers = poset.cover_relations();
            let mut text = String::new();
            for (k, key) in keys.iter().enumerate() {
                text.push_str(&format!("{k}\t{key}\n"));
            }
            for (a, b) in &covers {
                text.push_str(&format!("{a} < {b}\n"));
            }
            let mut values = Vec::new();
            if *mobius {
                for a in 0..poset.len() {
                    for b in 0..poset.len() {
                        if poset.leq(a, b) {
                            let mu = poset.mobius(a, b);
                            text.push_str(&format!("mu({a},{b}) = {mu}\n"));
                            values.push((a, b, mu));
                        }
                    }
                }
            }
            text.pop();
            let mut json = json!({ "r": r, "elements": keys, "covers": covers });
            if *mobius {
                json["mobius"] = json!(values);
            }
            Ok(Report::new(true, text, json))
        }
        NnCommand::Weights {
            r,
            n,
            k,
            invert,
            method,
        } => {
            let name = match (invert, method) {
                (true, _) => "inversion",
                (false, Some(m)) => m.as_str(),
                (false, None) => "bucket",
            };
            let strategy = weight_strategy(name)
                .ok_or_else(|| Failure::Usage(format!("unknown weight method {name:?}")))?;
            let table = strategy.compute(*r, *n, *k, bound)?;
            let lines: Vec<String> = table
                .weights
                .iter()
                .map(|(key, w)| format!("{key}\t{w}"))
                .collect();
            Ok(Report::new(true, lines.join("\n"), &table))
        }
        NnCommand::Ideal { p, n } => {
            let partition: Partition = p.parse()?;
            if *n == 0 || *n > bound {
                return Err(Failure::Usage(format!("n must lie in 1..={bound}, got {n}")));
            }
            let gens = nonnesting_ideal(&partition, *n)?;
            Ok(Report::new(true, gens.to_string(), &gens))
        }
    }
}

fn list_diagrams(r: usize, small: bool, count: bool, bound: usize) -> Outcome {
    let keys: Vec<String> = if small {
        small_diagrams(r, bound)?.iter().map(|d| d.key()).collect()
    } else {
        enumerate_nonnesting(r, bound)?.iter().map(|p| p.to_string()).collect()
    };
    if count {
        Ok(Report::new(true, keys.len().to_string(), keys.len()))
    } else {
        Ok(Report::new(true, keys.join("\n"), &keys))
    }
}

fn read_complex(path: &Path) -> Result<Complex, Failure> {
    let body = std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&body).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn restriction(args: &RestrictArgs, n: usize, m: usize) -> Result<RestrictionSpec, Failure> {
    let mut spec = RestrictionSpec::none();
    if let Some(alpha) = &args.alpha {
        let caps = alpha
            .split(',')
            .map(|t| match t.trim() {
                "inf" | "*" => Ok(None),
                t => t
                    .parse::<u32>()
                    .map(Some)
                    .map_err(|_| Failure::Usage(format!("bad --alpha entry {t:?}"))),
            })
            .collect::<Result<Vec<_>, _>>()?;
        if caps.len() != m {
            return Err(Failure::Usage(format!(
                "--alpha has {} entries but the target has {m} vertices",
                caps.len()
            )));
        }
        spec = spec.with_alpha(caps);
    }
    if let Some(beta) = &args.beta {
        let exps = beta
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u32>()
                    .map_err(|_| Failure::Usage(format!("bad --beta entry {t:?}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        if exps.len() != m || exps.iter().sum::<u32>() as usize != n {
            return Err(Failure::Usage(format!(
                "--beta must have {m} entries summing to {n}"
            )));
        }
        spec = spec.with_beta(Monomial::new(exps));
    }
    Ok(spec)
}
