use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use jaggr::agenda::AgendaLimits;
use jaggr::axioms::AxiomId;
use jaggr::bridge::PrefConstraint;
use jaggr::cli::{self, Command, OutputFormat, RunConfig};
use jaggr::rules::{RuleId, DEFAULT_MPC_BUDGET};

/// Judgment aggregation rules, axiom checkers, and voting-rule reductions
/// over constrained propositional agendas.
#[derive(Parser)]
#[command(name = "jaggr", version, about)]
struct Cli {
    #[command(subcommand)]
    command: CliCommand,

    /// Output format.
    #[arg(long, global = true, default_value = "text", value_parser = parse_format)]
    format: OutputFormat,

    /// Atom budget for satisfiability sweeps.
    #[arg(long, global = true, default_value_t = jaggr::logic::DEFAULT_ATOM_BUDGET)]
    max_atoms: usize,

    /// Issue budget for agendas.
    #[arg(long, global = true, default_value_t = jaggr::agenda::DEFAULT_ISSUE_BUDGET)]
    max_issues: usize,

    /// Ceiling on total judgment reversals in the minimal profile change
    /// search.
    #[arg(long, global = true, default_value_t = DEFAULT_MPC_BUDGET)]
    mpc_budget: u64,
}

fn parse_format(s: &str) -> Result<OutputFormat, String> {
    match s {
        "text" => Ok(OutputFormat::Text),
        "json" => Ok(OutputFormat::Json),
        other => Err(format!("unknown format `{other}` (expected text or json)")),
    }
}

fn parse_rule(s: &str) -> Result<RuleId, String> {
    s.parse().map_err(|e| format!("{e}"))
}

fn parse_axiom(s: &str) -> Result<AxiomId, String> {
    s.parse().map_err(|e| format!("{e}"))
}

fn parse_constraint(s: &str) -> Result<PrefConstraint, String> {
    s.parse().map_err(|e| format!("{e}"))
}

#[derive(Args)]
struct SampleArgs {
    /// Number of non-vacuous checks to sample.
    #[arg(long, default_value_t = 200)]
    samples: usize,

    /// Seed of the instance stream.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand)]
enum CliCommand {
    /// Evaluate aggregation rules on a profile file.
    Aggregate {
        /// Profile file with an `agenda:` header.
        profile: PathBuf,

        /// Rule id (repeatable): mc, mcc, med, ra, leximax, young, mpc,
        /// dmax-hamming, dsum-geodesic, frev, dist:<d>:<agg>, score:<name>.
        #[arg(long = "rule", required = true, value_parser = parse_rule)]
        rules: Vec<RuleId>,
    },
    /// Check axioms against a fixture, a profile file, or sampled random
    /// instances.
    Axioms {
        /// Rule id (repeatable).
        #[arg(long = "rule", required = true, value_parser = parse_rule)]
        rules: Vec<RuleId>,

        /// Axiom id (repeatable): majority-preservation,
        /// weak-majority-preservation, weak-unanimity, strong-unanimity,
        /// monotonicity, reinforcement, weak-reinforcement, homogeneity.
        #[arg(long = "check", required = true, value_parser = parse_axiom)]
        checks: Vec<AxiomId>,

        /// Check against a corpus fixture.
        #[arg(long, conflicts_with = "profile")]
        fixture: Option<String>,

        /// Check against a profile file.
        #[arg(long)]
        profile: Option<PathBuf>,

        /// Which named profile of the fixture to use.
        #[arg(long, default_value = "main")]
        profile_name: String,

        /// Replication factor for homogeneity checks.
        #[arg(long, default_value_t = 2)]
        k: usize,

        #[command(flatten)]
        sample: SampleArgs,
    },
    /// Compare two rules for inclusion over the corpus and sampled
    /// instances.
    Compare {
        /// The two rule ids, comma separated (e.g. `ra,mc`).
        #[arg(long, value_delimiter = ',', num_args = 2, value_parser = parse_rule)]
        rules: Vec<RuleId>,

        /// Skip the corpus instances.
        #[arg(long)]
        skip_corpus: bool,

        #[command(flatten)]
        sample: SampleArgs,
    },
    /// Replay the built-in fixtures.
    Fixtures {
        /// Replay everything (the default).
        #[arg(long)]
        all: bool,

        /// Replay a single fixture.
        #[arg(long, conflicts_with = "all")]
        id: Option<String>,
    },
    /// Aggregate a preference profile through a preference agenda and
    /// decode the winners.
    Bridge {
        /// Preference profile file (`alternatives:` header, `a > b > c`
        /// rows).
        profile: PathBuf,

        /// Consistency notion: `tr` (transitivity) or `w` (nondominated
        /// alternative).
        #[arg(long, default_value = "tr", value_parser = parse_constraint)]
        constraint: PrefConstraint,

        /// Rule id (repeatable).
        #[arg(long = "rule", value_parser = parse_rule)]
        rules: Vec<RuleId>,

        /// Cross-check the voting-rule correspondences.
        #[arg(long)]
        check: bool,
    },
    /// Dump the rational judgment sets of an agenda (and, for profiles, the
    /// majoritarian set and support table).
    Enumerate {
        /// Agenda or profile file.
        path: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let command = match cli.command {
        CliCommand::Aggregate { profile, rules } => Command::Aggregate { profile, rules },
        CliCommand::Axioms {
            rules,
            checks,
            fixture,
            profile,
            profile_name,
            k,
            sample,
        } => Command::Axioms {
            rules,
            checks,
            fixture,
            profile,
            profile_name,
            samples: sample.samples,
            seed: sample.seed,
            k,
        },
        CliCommand::Compare {
            rules,
            skip_corpus,
            sample,
        } => Command::Compare {
            rule1: rules[0],
            rule2: rules[1],
            samples: sample.samples,
            seed: sample.seed,
            skip_corpus,
        },
        CliCommand::Fixtures { all: _, id } => Command::Fixtures { id },
        CliCommand::Bridge {
            profile,
            constraint,
            rules,
            check,
        } => Command::Bridge {
            profile,
            constraint,
            rules,
            check,
        },
        CliCommand::Enumerate { path } => Command::Enumerate { path },
    };
    let config = RunConfig {
        command,
        format: cli.format,
        limits: AgendaLimits {
            max_issues: cli.max_issues,
            max_atoms: cli.max_atoms,
        },
        mpc_budget: cli.mpc_budget,
    };
    match cli::run(&config) {
        Ok(output) => {
            print!("{}", output.stdout);
            ExitCode::from(output.exit_code as u8)
        }
        Err(error) => {
            eprintln!("error: {error}");
            ExitCode::from(cli::exit_code_for(&error) as u8)
        }
    }
}
