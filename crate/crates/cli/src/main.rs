//! Command-line front door: construct, verify, decide, count, and explore
//! with stable machine-readable output.
//!
//! Exit codes: 0 success/accept, 1 verification reject, 2 not admissible,
//! 3 unknown or budget exceeded, 64 usage error, 74 I/O error. Results go
//! to stdout, diagnostics to stderr. `CUBE_PROFILES_LOG` tunes log
//! verbosity only and never affects results.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};

use cube_profiles::construct::{base_case_table, decide, Decision};
use cube_profiles::explorer::{
    face_decomposition_profiles, hamilton_profiles, middle_layer_profiles, permutahedron_profiles,
};
use cube_profiles::matching::{Dimension, Matching};
use cube_profiles::oracle::{count_with_profile, enumerate_admissible, SearchBudget, SearchStatus};
use cube_profiles::profile::Profile;
use cube_profiles::sweep::oracle_agreement_seq;

const EX_REJECT: u8 = 1;
const EX_NOT_ADMISSIBLE: u8 = 2;
const EX_UNKNOWN: u8 = 3;
const EX_USAGE: u8 = 64;
const EX_SOFTWARE: u8 = 70;
const EX_IOERR: u8 = 74;

#[derive(Parser)]
#[command(
    name = "cube-profiles",
    version,
    about = "Matchings of the hypercube with prescribed direction profiles"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Construct a matching with the given profile, or report why none exists
    Construct(ConstructArgs),
    /// Check a matching file against a profile
    Verify(VerifyArgs),
    /// Decide admissibility: witness, reason, or unknown
    Decide(DecideArgs),
    /// Count the matchings with the given profile, exactly
    Count(CountArgs),
    /// Exhaustive profile sets for related families
    Explore(ExploreArgs),
    /// Re-verify the frozen base matchings and run small oracle cross-checks
    Selftest,
}

#[derive(Args)]
struct ProfileArgs {
    /// Ambient dimension n
    #[arg(long)]
    n: u32,
    /// Comma-separated counts x1,...,xn (coordinate 1 first)
    #[arg(long)]
    profile: String,
}

#[derive(Args)]
struct ConstructArgs {
    #[command(flatten)]
    profile: ProfileArgs,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the witness here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    profile: ProfileArgs,
    /// Matching file: JSON or bitstring edge list
    #[arg(long)]
    input: PathBuf,
    /// Additionally require the matching to cover every vertex
    #[arg(long)]
    perfect: bool,
}

#[derive(Args)]
struct DecideArgs {
    #[command(flatten)]
    profile: ProfileArgs,
    /// Largest dimension the exhaustive oracle fallback may search
    #[arg(long, default_value_t = cube_profiles::oracle::DEFAULT_MAX_DIMENSION)]
    oracle_max_dim: u32,
    /// Print the witness after the verdict line
    #[arg(long)]
    witness: bool,
}

#[derive(Args)]
struct CountArgs {
    #[command(flatten)]
    profile: ProfileArgs,
    #[arg(long)]
    node_limit: Option<u64>,
    /// Raise the search size gate (default 5)
    #[arg(long)]
    max_dim: Option<u32>,
}

#[derive(Args)]
struct ExploreArgs {
    #[command(subcommand)]
    family: Family,
}

#[derive(Args)]
struct BudgetArgs {
    #[arg(long)]
    node_limit: Option<u64>,
    /// Time limit in seconds
    #[arg(long)]
    time_limit_secs: Option<u64>,
    /// Raise the search size gate (default 5)
    #[arg(long)]
    max_dim: Option<u32>,
    /// Bound the worker pool for batched queries
    #[arg(long)]
    jobs: Option<usize>,
    #[arg(long, value_enum, default_value_t = ExploreFormat::Json)]
    format: ExploreFormat,
}

#[derive(Subcommand)]
enum Family {
    /// Profiles of Hamilton cycles of Q^n
    Hamilton {
        #[arg(long)]
        n: u32,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Weightings of partitions of E(Q^n) into 4-cycles
    Faces {
        #[arg(long)]
        n: u32,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Profiles of perfect matchings of the middle layer graph M_n
    Middle {
        #[arg(long)]
        n: u32,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Weightings of perfect matchings of the permutahedron Perm(n)
    Perm {
        #[arg(long)]
        n: u32,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// All admissible profiles of Q^n up to a sum bound
    Tuples {
        #[arg(long)]
        n: u32,
        /// Defaults to 2^(n-1) - 1
        #[arg(long)]
        sum_bound: Option<u64>,
        #[command(flatten)]
        budget: BudgetArgs,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Edges,
    Dot,
}

#[derive(Clone, Copy, ValueEnum)]
enum ExploreFormat {
    Json,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => EX_USAGE,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    env_logger::Builder::from_env(env_logger::Env::new().filter("CUBE_PROFILES_LOG")).init();
    let code = match cli.command {
        Command::Construct(args) => run_construct(args),
        Command::Verify(args) => run_verify(args),
        Command::Decide(args) => run_decide(args),
        Command::Count(args) => run_count(args),
        Command::Explore(args) => run_explore(args),
        Command::Selftest => run_selftest(),
    };
    ExitCode::from(code)
}

fn parse_profile(args: &ProfileArgs) -> Result<(Profile, Dimension), u8> {
    let dim = Dimension::new(args.n).map_err(|e| {
        eprintln!("error: {e}");
        EX_USAGE
    })?;
    let profile = Profile::parse(&args.profile).map_err(|e| {
        eprintln!("error: {e}");
        EX_USAGE
    })?;
    if profile.len() != dim.get() as usize {
        eprintln!(
            "error: profile has {} coordinates but n = {}",
            profile.len(),
            dim.get()
        );
        return Err(EX_USAGE);
    }
    Ok((profile, dim))
}

fn render(m: &Matching, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = m.to_json();
            s.push('\n');
            s
        }
        Format::Edges => m.to_edge_list(),
        Format::Dot => m.to_dot(),
    }
}

fn emit(rendered: &str, out: Option<&Path>) -> u8 {
    match out {
        None => {
            print!("{rendered}");
            0
        }
        Some(path) => match fs::write(path, rendered) {
            Ok(()) => 0,
            Err(e) => {
                eprintln!("error: cannot write {}: {e}", path.display());
                EX_IOERR
            }
        },
    }
}

fn run_construct(args: ConstructArgs) -> u8 {
    let Ok((profile, dim)) = parse_profile(&args.profile) else {
        return EX_USAGE;
    };
    log::debug!("construct n={dim} profile={profile}");
    match decide(&profile, dim, Some(&SearchBudget::default())) {
        Ok(Decision::Admissible(m)) => emit(&render(&m, args.format), args.out.as_deref()),
        Ok(Decision::NotAdmissible(reason)) => {
            eprintln!("NotAdmissible: {reason}");
            EX_NOT_ADMISSIBLE
        }
        Ok(Decision::Unknown) => {
            eprintln!("Unknown: outside the constructive theorem and the oracle budget");
            EX_UNKNOWN
        }
        Err(e) => {
            eprintln!("error: {e}");
            EX_SOFTWARE
        }
    }
}

fn run_verify(args: VerifyArgs) -> u8 {
    let Ok((profile, dim)) = parse_profile(&args.profile) else {
        return EX_USAGE;
    };
    let text = match fs::read_to_string(&args.input) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", args.input.display());
            return EX_IOERR;
        }
    };
    let parsed = if text.trim_start().starts_with('{') {
        Matching::from_json(&text)
    } else {
        Matching::from_edge_list(&text, dim)
    };
    let matching = match parsed {
        Ok(m) if m.dim() != dim => {
            eprintln!(
                "reject: file is a matching of Q^{} but n = {}",
                m.dim(),
                dim
            );
            return EX_REJECT;
        }
        Ok(m) => m,
        Err(e) => {
            eprintln!("reject: {e}");
            return EX_REJECT;
        }
    };
    match matching.verify(&profile, args.perfect) {
        Ok(()) => {
            println!("accept");
            0
        }
        Err(e) => {
            eprintln!("reject: {e}");
            EX_REJECT
        }
    }
}

fn run_decide(args: DecideArgs) -> u8 {
    let Ok((profile, dim)) = parse_profile(&args.profile) else {
        return EX_USAGE;
    };
    let budget = SearchBudget::with_max_dimension(args.oracle_max_dim);
    match decide(&profile, dim, Some(&budget)) {
        Ok(Decision::Admissible(m)) => {
            println!("Admissible");
            if args.witness {
                println!("{}", m.to_json());
            }
            0
        }
        Ok(Decision::NotAdmissible(reason)) => {
            println!("NotAdmissible: {reason}");
            EX_NOT_ADMISSIBLE
        }
        Ok(Decision::Unknown) => {
            println!("Unknown");
            EX_UNKNOWN
        }
        Err(e) => {
            eprintln!("error: {e}");
            EX_SOFTWARE
        }
    }
}

fn run_count(args: CountArgs) -> u8 {
    let Ok((profile, dim)) = parse_profile(&args.profile) else {
        return EX_USAGE;
    };
    let mut budget = SearchBudget::default();
    if let Some(max) = args.max_dim {
        budget.max_dimension = max;
    }
    budget.node_limit = args.node_limit;
    match count_with_profile(dim, &profile, &budget) {
        Ok(result) => match result.status {
            SearchStatus::BudgetExceeded => {
                println!("BudgetExceeded nodes={}", result.nodes_explored);
                EX_UNKNOWN
            }
            _ => {
                println!("{}", result.count.unwrap_or(0));
                0
            }
        },
        Err(e) => {
            eprintln!("error: {e}");
            EX_USAGE
        }
    }
}

fn budget_of(args: &BudgetArgs) -> SearchBudget {
    let mut budget = SearchBudget::default();
    if let Some(max) = args.max_dim {
        budget.max_dimension = max;
    }
    budget.node_limit = args.node_limit;
    budget.time_limit = args.time_limit_secs.map(std::time::Duration::from_secs);
    budget
}

fn run_explore(args: ExploreArgs) -> u8 {
    let jobs = match &args.family {
        Family::Hamilton { budget, .. }
        | Family::Faces { budget, .. }
        | Family::Middle { budget, .. }
        | Family::Perm { budget, .. }
        | Family::Tuples { budget, .. } => budget.jobs,
    };
    match jobs {
        Some(j) => {
            let pool = match rayon::ThreadPoolBuilder::new().num_threads(j).build() {
                Ok(pool) => pool,
                Err(e) => {
                    eprintln!("error: {e}");
                    return EX_SOFTWARE;
                }
            };
            pool.install(|| explore_inner(args))
        }
        None => explore_inner(args),
    }
}

fn explore_inner(args: ExploreArgs) -> u8 {
    let value = match args.family {
        Family::Hamilton { n, budget } => {
            let dim = match Dimension::new(n) {
                Ok(d) => d,
                Err(e) => {
                    eprintln!("error: {e}");
                    return EX_USAGE;
                }
            };
            hamilton_profiles(dim, &budget_of(&budget)).map(|r| {
                serde_json::json!({
                    "family": "hamilton",
                    "n": r.n,
                    "cycles": r.cycles,
                    "profiles": r.profiles.iter().collect::<Vec<_>>(),
                    "conjectured": r.conjectured.iter().collect::<Vec<_>>(),
                    "matches_conjectured": r.matches_conjectured(),
                })
            })
        }
        Family::Faces { n, budget } => {
            let dim = match Dimension::new(n) {
                Ok(d) => d,
                Err(e) => {
                    eprintln!("error: {e}");
                    return EX_USAGE;
                }
            };
            face_decomposition_profiles(dim, &budget_of(&budget)).map(|r| {
                serde_json::json!({
                    "family": "faces",
                    "n": r.n,
                    "decompositions": r.decompositions,
                    "weightings": r.weightings.iter().map(|w| w.to_json_value()).collect::<Vec<_>>(),
                })
            })
        }
        Family::Middle { n, budget } => middle_layer_profiles(n, &budget_of(&budget)).map(|r| {
            serde_json::json!({
                "family": "middle",
                "n": r.n,
                "matchings": r.matchings,
                "profiles": r.profiles.iter().collect::<Vec<_>>(),
            })
        }),
        Family::Perm { n, budget } => permutahedron_profiles(n, &budget_of(&budget)).map(|r| {
            serde_json::json!({
                "family": "perm",
                "n": r.n,
                "matchings": r.matchings,
                "weightings": r.weightings.iter().map(|w| w.to_json_value()).collect::<Vec<_>>(),
            })
        }),
        Family::Tuples {
            n,
            sum_bound,
            budget,
        } => {
            let dim = match Dimension::new(n) {
                Ok(d) => d,
                Err(e) => {
                    eprintln!("error: {e}");
                    return EX_USAGE;
                }
            };
            let bound = sum_bound.unwrap_or(dim.half() - 1);
            return match enumerate_admissible(dim, bound, &budget_of(&budget)) {
                Ok(set) => {
                    let value = serde_json::json!({
                        "family": "tuples",
                        "n": n,
                        "sum_bound": bound,
                        "admissible": set.iter().collect::<Vec<_>>(),
                    });
                    println!("{value}");
                    0
                }
                Err(e @ cube_profiles::oracle::OracleError::DimensionRefused { .. }) => {
                    eprintln!("error: {e}");
                    EX_USAGE
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    EX_UNKNOWN
                }
            };
        }
    };
    match value {
        Ok(v) => {
            println!("{v}");
            0
        }
        Err(e @ cube_profiles::explorer::ExplorerError::SizeRefused { .. }) => {
            eprintln!("error: {e}");
            EX_USAGE
        }
        Err(e) => {
            eprintln!("error: {e}");
            EX_UNKNOWN
        }
    }
}

fn run_selftest() -> u8 {
    let mut ok = true;

    for base in base_case_table() {
        let profile = &base.profile;
        match base.matching.verify(profile, false) {
            Ok(()) => println!("selftest: base case {profile} verifies"),
            Err(e) => {
                ok = false;
                println!("selftest: base case {profile} FAILED: {e}");
            }
        }
        // The frozen entries must be byte-identical to what the search
        // derives today.
        let budget = SearchBudget::default();
        let dim = base.matching.dim();
        match cube_profiles::oracle::exists_with_profile(dim, profile, &budget) {
            Ok(result) => match result.status {
                SearchStatus::Found(m) if m.to_json() == base.matching.to_json() => {
                    println!("selftest: base case {profile} re-derived byte-for-byte");
                }
                SearchStatus::Found(_) => {
                    ok = false;
                    println!("selftest: base case {profile} re-derivation DIFFERS");
                }
                other => {
                    ok = false;
                    println!("selftest: base case {profile} re-derivation failed: {other:?}");
                }
            },
            Err(e) => {
                ok = false;
                println!("selftest: base case {profile} oracle error: {e}");
            }
        }
    }

    for n in 1..=3u32 {
        let dim = Dimension::new(n).expect("small dimensions are valid");
        match oracle_agreement_seq(dim, &SearchBudget::default()) {
            Ok(report) if report.agrees() => {
                println!(
                    "selftest: decide/oracle agreement at n={n} over {} profiles",
                    report.checked
                );
            }
            Ok(report) => {
                ok = false;
                println!(
                    "selftest: decide/oracle DISAGREEMENT at n={n}: {:?}",
                    report.disagreements
                );
            }
            Err(e) => {
                ok = false;
                println!("selftest: oracle error at n={n}: {e}");
            }
        }
    }

    if ok {
        println!("selftest: ok");
        0
    } else {
        EX_REJECT
    }
}
