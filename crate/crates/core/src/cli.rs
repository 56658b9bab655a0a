//! Command implementations behind the `jaggr` binary: aggregation, axiom
//! checks, rule comparison, corpus replay, preference-agenda bridging, and
//! enumeration. Each command renders to text or JSON and reports one of the
//! documented exit codes.

use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::agenda::{parse_agenda_limited, Agenda, AgendaLimits, JudgmentSet};
use crate::axioms::{self, AxiomId, Status, SuiteConfig, ViolationWitness, WitnessDetail};
use crate::bridge::{self, PrefConstraint};
use crate::corpus;
use crate::error::{Error, Result};
use crate::profile::{self, Profile};
use crate::rules::{self, EvalOptions, OutcomeWitness, RuleId, RuleOutcome};

/// Exit code classification: 0 pass, 1 assertion mismatch, 2 input error,
/// 3 budget exceeded.
pub fn exit_code_for(error: &Error) -> i32 {
    if error.is_budget() {
        3
    } else {
        2
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Text,
    Json,
}

/// A fully validated invocation.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: Command,
    pub format: OutputFormat,
    pub limits: AgendaLimits,
    pub mpc_budget: u64,
}

#[derive(Debug, Clone)]
pub enum Command {
    Aggregate {
        profile: PathBuf,
        rules: Vec<RuleId>,
    },
    Axioms {
        rules: Vec<RuleId>,
        checks: Vec<AxiomId>,
        fixture: Option<String>,
        profile: Option<PathBuf>,
        profile_name: String,
        samples: usize,
        seed: u64,
        k: usize,
    },
    Compare {
        rule1: RuleId,
        rule2: RuleId,
        samples: usize,
        seed: u64,
        skip_corpus: bool,
    },
    Fixtures {
        id: Option<String>,
    },
    Bridge {
        profile: PathBuf,
        constraint: PrefConstraint,
        rules: Vec<RuleId>,
        check: bool,
    },
    Enumerate {
        path: PathBuf,
    },
}

/// Rendered output plus the process exit code.
#[derive(Debug)]
pub struct CommandOutput {
    pub stdout: String,
    pub exit_code: i32,
}

/// Execute a command; errors are turned into their documented exit codes by
/// the binary.
pub fn run(config: &RunConfig) -> Result<CommandOutput> {
    match &config.command {
        Command::Aggregate { profile, rules } => cmd_aggregate(config, profile, rules),
        Command::Axioms {
            rules,
            checks,
            fixture,
            profile,
            profile_name,
            samples,
            seed,
            k,
        } => cmd_axioms(
            config,
            rules,
            checks,
            fixture.as_deref(),
            profile.as_deref(),
            profile_name,
            *samples,
            *seed,
            *k,
        ),
        Command::Compare {
            rule1,
            rule2,
            samples,
            seed,
            skip_corpus,
        } => cmd_compare(config, *rule1, *rule2, *samples, *seed, *skip_corpus),
        Command::Fixtures { id } => cmd_fixtures(config, id.as_deref()),
        Command::Bridge {
            profile,
            constraint,
            rules,
            check,
        } => cmd_bridge(config, profile, *constraint, rules, *check),
        Command::Enumerate { path } => cmd_enumerate(config, path),
    }
}

fn load_profile_limited(path: &Path, limits: AgendaLimits) -> Result<Profile> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::io(format!("reading profile file `{}`", path.display()), e))?;
    let header = text
        .lines()
        .map(str::trim)
        .find(|l| l.starts_with("agenda:"))
        .ok_or_else(|| {
            Error::InvalidProfile(format!(
                "profile file `{}` has no `agenda:` header",
                path.display()
            ))
        })?;
    let agenda_name = header["agenda:".len()..].trim();
    let agenda_path = path
        .parent()
        .map(|dir| dir.join(agenda_name))
        .unwrap_or_else(|| agenda_name.into());
    let agenda_text = std::fs::read_to_string(&agenda_path).map_err(|e| {
        Error::io(format!("reading agenda file `{}`", agenda_path.display()), e)
    })?;
    let agenda = parse_agenda_limited(&agenda_text, limits)?;
    profile::parse_profile_rows(agenda, &text)
}

#[derive(Serialize)]
struct WitnessJson {
    kind: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    elements: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    extensions: Vec<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    removed_voters: Vec<usize>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    repaired: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    distance: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    majority: Option<String>,
}

fn witness_json(agenda: &Agenda, w: &OutcomeWitness) -> WitnessJson {
    match w {
        OutcomeWitness::Subset { elements, extensions } => WitnessJson {
            kind: "subset",
            elements: Some(agenda.describe_elements(elements)),
            extensions: extensions.iter().map(ToString::to_string).collect(),
            removed_voters: Vec::new(),
            repaired: Vec::new(),
            distance: None,
            majority: None,
        },
        OutcomeWitness::Removal {
            removed_voters,
            majority,
        } => WitnessJson {
            kind: "removal",
            elements: None,
            extensions: Vec::new(),
            removed_voters: removed_voters.clone(),
            repaired: Vec::new(),
            distance: None,
            majority: Some(majority.to_string()),
        },
        OutcomeWitness::Repair {
            repaired,
            distance,
            majority,
        } => WitnessJson {
            kind: "repair",
            elements: None,
            extensions: Vec::new(),
            removed_voters: Vec::new(),
            repaired: repaired.iter().map(ToString::to_string).collect(),
            distance: Some(*distance),
            majority: Some(majority.to_string()),
        },
    }
}

#[derive(Serialize)]
struct RuleReport {
    rule: RuleId,
    winners: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    score: Option<String>,
    witnesses: Vec<WitnessJson>,
}

fn rule_report(agenda: &Agenda, rule: RuleId, out: &RuleOutcome) -> RuleReport {
    RuleReport {
        rule,
        winners: out.winners.iter().map(ToString::to_string).collect(),
        score: out.score.map(|s| s.to_string()),
        witnesses: out.witnesses.iter().map(|w| witness_json(agenda, w)).collect(),
    }
}

#[derive(Serialize)]
struct AggregateReport {
    profile: String,
    voters: usize,
    issues: usize,
    results: Vec<RuleReport>,
}

fn cmd_aggregate(config: &RunConfig, path: &Path, rules: &[RuleId]) -> Result<CommandOutput> {
    let p = load_profile_limited(path, config.limits)?;
    let opts = EvalOptions {
        mpc_budget: config.mpc_budget,
    };
    let mut results = Vec::new();
    for &rule in rules {
        let out = rules::evaluate_with(rule, &p, &opts)?;
        results.push(rule_report(p.agenda(), rule, &out));
    }
    let report = AggregateReport {
        profile: path.display().to_string(),
        voters: p.voter_count(),
        issues: p.agenda().issue_count(),
        results,
    };
    let stdout = match config.format {
        OutputFormat::Json => to_json(&report)?,
        OutputFormat::Text => {
            let mut out = String::new();
            out.push_str(&format!(
                "profile {} ({} voters, {} issues)\n",
                report.profile, report.voters, report.issues
            ));
            for r in &report.results {
                out.push_str(&format!("rule {}\n", r.rule));
                for w in &r.winners {
                    out.push_str(&format!("  {w}\n"));
                }
                if let Some(score) = &r.score {
                    out.push_str(&format!("  score {score}\n"));
                }
            }
            out
        }
    };
    Ok(CommandOutput {
        stdout,
        exit_code: 0,
    })
}

#[derive(Serialize)]
struct ViolationJson {
    agenda: String,
    profile: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    phi: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    voter: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    k: Option<usize>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    other_profile: Vec<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    improved_profile: Vec<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    expected: Vec<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    got: Vec<String>,
}

fn violation_json(w: &ViolationWitness) -> ViolationJson {
    let rows = |p: &Profile| -> Vec<String> {
        p.voters().iter().map(ToString::to_string).collect()
    };
    let phi = |issue: usize, sign: crate::agenda::Sign| -> Option<String> {
        w.profile
            .agenda()
            .element_formula(issue, sign)
            .ok()
            .map(|f| f.to_string())
    };
    let mut out = ViolationJson {
        agenda: w.profile.agenda().to_text(),
        profile: rows(&w.profile),
        phi: None,
        voter: None,
        k: None,
        other_profile: Vec::new(),
        improved_profile: Vec::new(),
        expected: Vec::new(),
        got: Vec::new(),
    };
    match &w.detail {
        WitnessDetail::MajorityPreservation {
            expected, winners, ..
        } => {
            out.expected = expected.iter().map(ToString::to_string).collect();
            out.got = winners.iter().map(ToString::to_string).collect();
        }
        WitnessDetail::Unanimity {
            element, winners, ..
        } => {
            out.phi = phi(element.0, element.1);
            out.got = winners.iter().map(ToString::to_string).collect();
        }
        WitnessDetail::Monotonicity {
            element,
            voter,
            improved,
            winners_before,
            winners_after,
        } => {
            out.phi = phi(element.0, element.1);
            out.voter = Some(*voter);
            out.improved_profile = rows(improved);
            out.expected = winners_before.iter().map(ToString::to_string).collect();
            out.got = winners_after.iter().map(ToString::to_string).collect();
        }
        WitnessDetail::Reinforcement {
            other,
            expected,
            combined_winners,
            ..
        } => {
            out.other_profile = rows(other);
            out.expected = expected.iter().map(ToString::to_string).collect();
            out.got = combined_winners.iter().map(ToString::to_string).collect();
        }
        WitnessDetail::Homogeneity {
            k,
            winners_single,
            winners_replicated,
        } => {
            out.k = Some(*k);
            out.expected = winners_single.iter().map(ToString::to_string).collect();
            out.got = winners_replicated.iter().map(ToString::to_string).collect();
        }
    }
    out
}

#[derive(Serialize)]
struct AxiomRecord {
    axiom: AxiomId,
    rule: RuleId,
    status: String,
    checks: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<ViolationJson>,
}

#[allow(clippy::too_many_arguments)]
fn cmd_axioms(
    config: &RunConfig,
    rules: &[RuleId],
    checks: &[AxiomId],
    fixture: Option<&str>,
    profile_path: Option<&Path>,
    profile_name: &str,
    samples: usize,
    seed: u64,
    k: usize,
) -> Result<CommandOutput> {
    let mut records = Vec::new();
    for &rule in rules {
        for &axiom in checks {
            let record = if let Some(id) = fixture {
                let f = corpus::fixture(id)?;
                let p = f.profile(profile_name)?;
                let verdict = run_single_check(rule, axiom, f, p, k)?;
                AxiomRecord {
                    axiom,
                    rule,
                    status: verdict.status.to_string(),
                    checks: verdict.checks,
                    seed: None,
                    witness: verdict.witness.as_ref().map(violation_json),
                }
            } else if let Some(path) = profile_path {
                let p = load_profile_limited(path, config.limits)?;
                let verdict = match axiom {
                    AxiomId::MajorityPreservation => {
                        axioms::check_majority_preservation(rule, &p, true)?
                    }
                    AxiomId::WeakMajorityPreservation => {
                        axioms::check_majority_preservation(rule, &p, false)?
                    }
                    AxiomId::WeakUnanimity => axioms::check_unanimity(rule, &p, false)?,
                    AxiomId::StrongUnanimity => axioms::check_unanimity(rule, &p, true)?,
                    AxiomId::Monotonicity => axioms::check_monotonicity(rule, &p)?,
                    AxiomId::Homogeneity => axioms::check_homogeneity(rule, &p, k)?,
                    AxiomId::Reinforcement | AxiomId::WeakReinforcement => {
                        return Err(Error::InvalidProfile(
                            "reinforcement checks need a fixture with `p` and `q` profiles or sampling".into(),
                        ))
                    }
                };
                AxiomRecord {
                    axiom,
                    rule,
                    status: verdict.status.to_string(),
                    checks: verdict.checks,
                    seed: None,
                    witness: verdict.witness.as_ref().map(violation_json),
                }
            } else {
                let report =
                    axioms::run_suite(rule, axiom, &SuiteConfig::new(seed, samples), &[])?;
                AxiomRecord {
                    axiom,
                    rule,
                    status: if report.violations == 0 {
                        Status::HoldsOnSample.to_string()
                    } else {
                        Status::Violated.to_string()
                    },
                    checks: report.checks,
                    seed: Some(seed),
                    witness: report.witness.as_ref().map(violation_json),
                }
            };
            records.push(record);
        }
    }
    let any_violation = records.iter().any(|r| r.status == "violated");
    let stdout = match config.format {
        OutputFormat::Json => to_json(&records)?,
        OutputFormat::Text => {
            let mut out = String::new();
            for r in &records {
                out.push_str(&format!(
                    "{} {} {} (checks {})\n",
                    r.rule, r.axiom, r.status, r.checks
                ));
                if let Some(w) = &r.witness {
                    if let Some(phi) = &w.phi {
                        out.push_str(&format!("  element {phi}\n"));
                    }
                    for row in &w.profile {
                        out.push_str(&format!("  voter {row}\n"));
                    }
                    if !w.got.is_empty() {
                        out.push_str(&format!("  got {:?}\n", w.got));
                    }
                }
            }
            out
        }
    };
    Ok(CommandOutput {
        stdout,
        exit_code: i32::from(any_violation),
    })
}

fn run_single_check(
    rule: RuleId,
    axiom: AxiomId,
    fixture: &corpus::Fixture,
    p: &Profile,
    k: usize,
) -> Result<axioms::AxiomVerdict> {
    Ok(match axiom {
        AxiomId::MajorityPreservation => axioms::check_majority_preservation(rule, p, true)?,
        AxiomId::WeakMajorityPreservation => {
            axioms::check_majority_preservation(rule, p, false)?
        }
        AxiomId::WeakUnanimity => axioms::check_unanimity(rule, p, false)?,
        AxiomId::StrongUnanimity => axioms::check_unanimity(rule, p, true)?,
        AxiomId::Monotonicity => axioms::check_monotonicity(rule, p)?,
        AxiomId::Homogeneity => axioms::check_homogeneity(rule, p, k.max(2))?,
        AxiomId::Reinforcement | AxiomId::WeakReinforcement => {
            let q = fixture.profile("q")?;
            axioms::check_reinforcement(rule, p, q, axiom == AxiomId::WeakReinforcement)?
        }
    })
}

#[derive(Serialize)]
struct CompareReport {
    rule1: RuleId,
    rule2: RuleId,
    seed: u64,
    instances: usize,
    equal: usize,
    proper_subset: usize,
    proper_superset: usize,
    incomparable_instances: usize,
    classification: String,
    not_subset_witness: Option<Vec<String>>,
    not_superset_witness: Option<Vec<String>>,
}

fn cmd_compare(
    config: &RunConfig,
    rule1: RuleId,
    rule2: RuleId,
    samples: usize,
    seed: u64,
    skip_corpus: bool,
) -> Result<CommandOutput> {
    let mut instances: Vec<Profile> = Vec::new();
    if !skip_corpus {
        for f in corpus::fixtures() {
            for (_, p) in &f.profiles {
                instances.push(p.clone());
            }
        }
    }
    let mut gen = axioms::InstanceGenerator::new(axioms::GeneratorConfig::small(seed));
    for _ in 0..samples {
        instances.push(gen.next_profile()?);
    }
    let report = axioms::compare_rules(rule1, rule2, instances)?;
    let rows = |p: &Option<Profile>| -> Option<Vec<String>> {
        p.as_ref()
            .map(|p| p.voters().iter().map(ToString::to_string).collect())
    };
    let json = CompareReport {
        rule1,
        rule2,
        seed,
        instances: report.instances,
        equal: report.equal,
        proper_subset: report.proper_subset,
        proper_superset: report.proper_superset,
        incomparable_instances: report.incomparable_instances,
        classification: report.classify().to_string(),
        not_subset_witness: rows(&report.not_subset_witness),
        not_superset_witness: rows(&report.not_superset_witness),
    };
    let stdout = match config.format {
        OutputFormat::Json => to_json(&json)?,
        OutputFormat::Text => format!(
            "{} vs {} over {} instances: {} (equal {}, ⊂ {}, ⊃ {}, incomparable {})\n",
            json.rule1,
            json.rule2,
            json.instances,
            json.classification,
            json.equal,
            json.proper_subset,
            json.proper_superset,
            json.incomparable_instances
        ),
    };
    Ok(CommandOutput {
        stdout,
        exit_code: 0,
    })
}

fn cmd_fixtures(config: &RunConfig, id: Option<&str>) -> Result<CommandOutput> {
    let reports = match id {
        Some(id) => vec![corpus::run_fixture(id)?],
        None => corpus::run_all()?,
    };
    let all_passed = reports.iter().all(|r| r.passed());
    let stdout = match config.format {
        OutputFormat::Json => to_json(&reports)?,
        OutputFormat::Text => {
            let mut out = String::new();
            for r in &reports {
                out.push_str(&format!(
                    "{} {}\n",
                    if r.passed() { "ok  " } else { "FAIL" },
                    r.id
                ));
                for c in &r.checks {
                    if !c.passed {
                        out.push_str(&format!("     {} — {}\n", c.label, c.detail));
                    }
                }
            }
            out
        }
    };
    Ok(CommandOutput {
        stdout,
        exit_code: i32::from(!all_passed),
    })
}

#[derive(Serialize)]
struct BridgeRuleReport {
    rule: RuleId,
    winners: Vec<String>,
    decoded_winners: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    orders: Option<Vec<String>>,
}

#[derive(Serialize)]
struct BridgeReport {
    constraint: String,
    alternatives: Vec<String>,
    voters: usize,
    results: Vec<BridgeRuleReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    correspondences: Option<Vec<CorrespondenceJson>>,
}

#[derive(Serialize)]
struct CorrespondenceJson {
    label: String,
    holds: bool,
    detail: String,
}

fn cmd_bridge(
    config: &RunConfig,
    path: &Path,
    constraint: PrefConstraint,
    rule_ids: &[RuleId],
    check: bool,
) -> Result<CommandOutput> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::io(format!("reading preference profile `{}`", path.display()), e))?;
    let v = bridge::parse_preference_profile(&text)?;
    let agenda = bridge::build_preference_agenda(v.alternatives(), constraint)?;
    let p = bridge::encode(&v, &agenda)?;
    let opts = EvalOptions {
        mpc_budget: config.mpc_budget,
    };
    let q = v.alternative_count();
    let mut results = Vec::new();
    for &rule in rule_ids {
        let out = rules::evaluate_with(rule, &p, &opts)?;
        let decoded: Vec<String> = bridge::decode_winners(&out, q)
            .into_iter()
            .map(|i| v.alternatives()[i].clone())
            .collect();
        let orders = match constraint {
            PrefConstraint::Transitivity => Some(
                bridge::decode_winner_orders(&out, q)?
                    .into_iter()
                    .map(|order| {
                        order
                            .iter()
                            .map(|&i| v.alternatives()[i].as_str())
                            .collect::<Vec<_>>()
                            .join(" > ")
                    })
                    .collect(),
            ),
            PrefConstraint::Nondominated => None,
        };
        results.push(BridgeRuleReport {
            rule,
            winners: out.winners.iter().map(ToString::to_string).collect(),
            decoded_winners: decoded,
            orders,
        });
    }
    let correspondences = if check {
        Some(
            bridge::check_correspondences(&v)?
                .into_iter()
                .map(|c| CorrespondenceJson {
                    label: c.label,
                    holds: c.holds,
                    detail: c.detail,
                })
                .collect::<Vec<_>>(),
        )
    } else {
        None
    };
    // Correspondence failures only gate the exit code at odd voter counts,
    // where the equivalences are claimed.
    let odd = v.voter_count() % 2 == 1;
    let failed = odd
        && correspondences
            .as_ref()
            .is_some_and(|cs| cs.iter().any(|c| !c.holds));
    let report = BridgeReport {
        constraint: constraint.to_string(),
        alternatives: v.alternatives().to_vec(),
        voters: v.voter_count(),
        results,
        correspondences,
    };
    let stdout = match config.format {
        OutputFormat::Json => to_json(&report)?,
        OutputFormat::Text => {
            let mut out = String::new();
            out.push_str(&format!(
                "preference profile: {} voters over {{{}}} ({})\n",
                report.voters,
                report.alternatives.join(", "),
                report.constraint
            ));
            for r in &report.results {
                out.push_str(&format!(
                    "rule {}: winners {{{}}}\n",
                    r.rule,
                    r.decoded_winners.join(", ")
                ));
                if let Some(orders) = &r.orders {
                    for o in orders {
                        out.push_str(&format!("  {o}\n"));
                    }
                }
            }
            if let Some(cs) = &report.correspondences {
                for c in cs {
                    out.push_str(&format!(
                        "{} {}\n",
                        if c.holds { "ok  " } else { "FAIL" },
                        c.label
                    ));
                }
            }
            out
        }
    };
    Ok(CommandOutput {
        stdout,
        exit_code: i32::from(failed),
    })
}

#[derive(Serialize)]
struct EnumerateReport {
    issues: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    constraint: Option<String>,
    rational_sets: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    majority: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    support: Option<Vec<SupportRow>>,
}

#[derive(Serialize)]
struct SupportRow {
    issue: String,
    accept: usize,
    reject: usize,
}

fn cmd_enumerate(config: &RunConfig, path: &Path) -> Result<CommandOutput> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::io(format!("reading `{}`", path.display()), e))?;
    let is_profile = text
        .lines()
        .map(str::trim)
        .any(|l| l.starts_with("agenda:"));
    let (agenda, profile) = if is_profile {
        let p = load_profile_limited(path, config.limits)?;
        (p.agenda_arc().clone(), Some(p))
    } else {
        (parse_agenda_limited(&text, config.limits)?, None)
    };
    let report = EnumerateReport {
        issues: agenda.issues().iter().map(ToString::to_string).collect(),
        constraint: agenda.gamma().map(ToString::to_string),
        rational_sets: agenda
            .rational_sets()
            .iter()
            .map(ToString::to_string)
            .collect(),
        majority: profile.as_ref().map(|p| p.majoritarian_set().to_string()),
        support: profile.as_ref().map(|p| {
            p.support_table()
                .into_iter()
                .enumerate()
                .map(|(i, (accept, reject))| SupportRow {
                    issue: agenda.issues()[i].to_string(),
                    accept,
                    reject,
                })
                .collect()
        }),
    };
    let stdout = match config.format {
        OutputFormat::Json => to_json(&report)?,
        OutputFormat::Text => {
            let mut out = String::new();
            match &report.constraint {
                Some(gamma) => out.push_str(&format!("constraint: {gamma}\n")),
                None => out.push_str("extensional agenda\n"),
            }
            for (i, issue) in report.issues.iter().enumerate() {
                out.push_str(&format!("issue {i}: {issue}\n"));
            }
            out.push_str(&format!("rational sets ({}):\n", report.rational_sets.len()));
            for r in &report.rational_sets {
                out.push_str(&format!("  {r}\n"));
            }
            if let Some(m) = &report.majority {
                out.push_str(&format!("majoritarian set: {m}\n"));
            }
            if let Some(rows) = &report.support {
                for row in rows {
                    out.push_str(&format!(
                        "N({}) = {}, N(!({})) = {}\n",
                        row.issue, row.accept, row.issue, row.reject
                    ));
                }
            }
            out
        }
    };
    Ok(CommandOutput {
        stdout,
        exit_code: 0,
    })
}

fn to_json<T: Serialize>(value: &T) -> Result<String> {
    serde_json::to_string_pretty(value)
        .map(|mut s| {
            s.push('\n');
            s
        })
        .map_err(|e| Error::InvalidProfile(format!("JSON rendering failed: {e}")))
}

/// Lexicographically sorted judgment rows, the stable order used everywhere
/// in command output.
pub fn sorted_rows(sets: &[JudgmentSet]) -> Vec<String> {
    let mut sets = sets.to_vec();
    sets.sort();
    sets.iter().map(ToString::to_string).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fixture_path(name: &str) -> PathBuf {
        PathBuf::from(env!("CARGO_MANIFEST_DIR"))
            .join("fixtures")
            .join(name)
    }

    fn config(command: Command, format: OutputFormat) -> RunConfig {
        RunConfig {
            command,
            format,
            limits: AgendaLimits::default(),
            mpc_budget: rules::DEFAULT_MPC_BUDGET,
        }
    }

    #[test]
    fn aggregate_renders_winners_and_scores() {
        let cfg = config(
            Command::Aggregate {
                profile: fixture_path("running-17.profile"),
                rules: vec![RuleId::Med],
            },
            OutputFormat::Text,
        );
        let out = run(&cfg).unwrap();
        assert_eq!(out.exit_code, 0);
        assert!(out.stdout.contains("+++++"));
        assert!(out.stdout.contains("score 49"));
    }

    #[test]
    fn aggregate_handles_multiple_rules() {
        let cfg = config(
            Command::Aggregate {
                profile: fixture_path("running-17.profile"),
                rules: vec![RuleId::Ra, RuleId::Leximax],
            },
            OutputFormat::Text,
        );
        let out = run(&cfg).unwrap();
        assert!(out.stdout.contains("rule ra"));
        assert!(out.stdout.contains("rule leximax"));
        assert!(out.stdout.contains("--+-+"));
    }

    #[test]
    fn aggregate_reports_missing_files_as_input_errors() {
        let cfg = config(
            Command::Aggregate {
                profile: fixture_path("no-such.profile"),
                rules: vec![RuleId::Med],
            },
            OutputFormat::Text,
        );
        let err = run(&cfg).unwrap_err();
        assert_eq!(exit_code_for(&err), 2);
    }

    #[test]
    fn budget_errors_exit_three() {
        let mut cfg = config(
            Command::Aggregate {
                profile: fixture_path("running-17.profile"),
                rules: vec![RuleId::Mpc],
            },
            OutputFormat::Text,
        );
        cfg.mpc_budget = 1;
        let err = run(&cfg).unwrap_err();
        assert_eq!(exit_code_for(&err), 3);
    }

    #[test]
    fn fixtures_command_replays_the_corpus() {
        let cfg = config(Command::Fixtures { id: None }, OutputFormat::Text);
        let out = run(&cfg).unwrap();
        assert_eq!(out.exit_code, 0, "{}", out.stdout);
        assert!(out.stdout.contains("running-17"));
        let cfg = config(
            Command::Fixtures {
                id: Some("ex1-constrained".into()),
            },
            OutputFormat::Json,
        );
        let out = run(&cfg).unwrap();
        assert_eq!(out.exit_code, 0);
        assert!(out.stdout.contains("\"passed\": true"));
    }

    #[test]
    fn axiom_fixture_check_reports_the_violation() {
        let cfg = config(
            Command::Axioms {
                rules: vec![RuleId::Mpc],
                checks: vec![AxiomId::Monotonicity],
                fixture: Some("mpc-monotonicity".into()),
                profile: None,
                profile_name: "main".into(),
                samples: 0,
                seed: 0,
                k: 2,
            },
            OutputFormat::Json,
        );
        let out = run(&cfg).unwrap();
        assert_eq!(out.exit_code, 1);
        assert!(out.stdout.contains("violated"));
        assert!(out.stdout.contains("improved_profile"));
    }

    #[test]
    fn sampled_axiom_suites_hold_for_med_monotonicity() {
        let cfg = config(
            Command::Axioms {
                rules: vec![RuleId::Med],
                checks: vec![AxiomId::Monotonicity],
                fixture: None,
                profile: None,
                profile_name: "main".into(),
                samples: 40,
                seed: 9,
                k: 2,
            },
            OutputFormat::Text,
        );
        let out = run(&cfg).unwrap();
        assert_eq!(out.exit_code, 0, "{}", out.stdout);
        assert!(out.stdout.contains("holds-on-sample"));
    }

    #[test]
    fn compare_reports_relations() {
        let cfg = config(
            Command::Compare {
                rule1: RuleId::Mcc,
                rule2: RuleId::Mc,
                samples: 30,
                seed: 7,
                skip_corpus: false,
            },
            OutputFormat::Text,
        );
        let out = run(&cfg).unwrap();
        assert_eq!(out.exit_code, 0);
        assert!(out.stdout.contains("subset"), "{}", out.stdout);
    }

    #[test]
    fn bridge_decodes_winners_and_checks_correspondences() {
        let dir = tempdir();
        let path = dir.join("cycle.pref");
        std::fs::write(&path, "alternatives: a b c\na > b > c\nb > c > a\nc > a > b\n")
            .unwrap();
        let cfg = config(
            Command::Bridge {
                profile: path,
                constraint: PrefConstraint::Transitivity,
                rules: vec![RuleId::Med],
                check: true,
            },
            OutputFormat::Text,
        );
        let out = run(&cfg).unwrap();
        assert_eq!(out.exit_code, 0, "{}", out.stdout);
        assert!(out.stdout.contains("med"));
        assert!(out.stdout.contains("ok   med+tr=kemeny"));
    }

    #[test]
    fn enumerate_dumps_rational_sets_and_support() {
        let cfg = config(
            Command::Enumerate {
                path: fixture_path("ex1-constrained.profile"),
            },
            OutputFormat::Text,
        );
        let out = run(&cfg).unwrap();
        assert!(out.stdout.contains("rational sets (4)"));
        assert!(out.stdout.contains("majoritarian set"));
        let cfg = config(
            Command::Enumerate {
                path: fixture_path("ex1-constrained.agenda"),
            },
            OutputFormat::Json,
        );
        let out = run(&cfg).unwrap();
        assert!(out.stdout.contains("\"rational_sets\""));
        assert!(!out.stdout.contains("majority"));
    }

    #[test]
    fn json_output_is_deterministic() {
        for format in [OutputFormat::Json, OutputFormat::Text] {
            let make = || {
                run(&config(
                    Command::Axioms {
                        rules: vec![RuleId::Mc, RuleId::Med],
                        checks: vec![AxiomId::Monotonicity, AxiomId::Homogeneity],
                        fixture: None,
                        profile: None,
                        profile_name: "main".into(),
                        samples: 25,
                        seed: 1234,
                        k: 2,
                    },
                    format,
                ))
                .unwrap()
            };
            assert_eq!(make().stdout, make().stdout);
        }
    }

    fn tempdir() -> PathBuf {
        let dir = std::env::temp_dir().join(format!("jaggr-cli-test-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        dir
    }
}
