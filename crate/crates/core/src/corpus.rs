//! Built-in named fixtures: each bundles an agenda, one or more profiles,
//! and pinned expected outputs (winner sets, scores, distances, axiom
//! verdicts). The data ships as on-disk agenda/profile files in the
//! documented formats and is parsed through the ordinary loaders.

use std::sync::{Arc, OnceLock};

use serde::Serialize;

use crate::agenda::{parse_agenda, Agenda, JudgmentSet, Sign};
use crate::axioms::{self, AxiomId, Status};
use crate::bridge::{self, PrefConstraint};
use crate::error::{Error, Result};
use crate::profile::{self, parse_profile_rows, Profile};
use crate::rules::{self, RuleId, ScoringSpec, Value};

/// A named fixture with its expectations.
pub struct Fixture {
    pub id: &'static str,
    pub note: &'static str,
    pub agenda: Arc<Agenda>,
    pub profiles: Vec<(&'static str, Profile)>,
    pub expectations: Vec<Expectation>,
}

impl Fixture {
    pub fn profile(&self, name: &str) -> Result<&Profile> {
        self.profiles
            .iter()
            .find(|(n, _)| *n == name)
            .map(|(_, p)| p)
            .ok_or_else(|| {
                Error::InvalidProfile(format!("fixture `{}` has no profile `{name}`", self.id))
            })
    }
}

/// One pinned expected result.
pub enum Expectation {
    RationalCount {
        expected: usize,
    },
    RationalSets {
        expected: Vec<&'static str>,
    },
    Support {
        profile: &'static str,
        issue: usize,
        sign: Sign,
        expected: usize,
    },
    MajoritySet {
        profile: &'static str,
        expected: &'static str,
    },
    MajorityConsistent {
        profile: &'static str,
        expected: bool,
    },
    Winners {
        rule: RuleId,
        profile: &'static str,
        expected: Vec<&'static str>,
    },
    /// The listed sets must appear among the winners (the full winner set
    /// is not pinned).
    WinnersInclude {
        rule: RuleId,
        profile: &'static str,
        expected: Vec<&'static str>,
    },
    /// The optimal score attached to the outcome (MED weight, MPC distance).
    Score {
        rule: RuleId,
        profile: &'static str,
        expected: i64,
    },
    /// Total reversal-scoring score of one specific rational set.
    ReversalTotalOf {
        profile: &'static str,
        set: &'static str,
        expected: i64,
    },
    /// rev(J, φ) for every element held by each listed set: positive
    /// elements must all score `held_positive`, negative ones
    /// `held_negative`.
    ReversalScores {
        sets: Vec<&'static str>,
        held_positive: u64,
        held_negative: u64,
    },
    /// Hamming distances between labeled rational sets.
    HammingTable {
        left: Vec<&'static str>,
        right: Vec<&'static str>,
        expected: Vec<Vec<usize>>,
    },
    /// The full geodesic distance matrix between labeled rational sets.
    GeodesicMatrix {
        labels: Vec<&'static str>,
        expected: Vec<Vec<u32>>,
    },
    /// Every pair of distinct rational sets sits at this geodesic distance.
    GeodesicAllDistinctPairs {
        expected: u32,
    },
    /// An axiom check must come out violated (or not).
    Axiom {
        axiom: AxiomId,
        rule: RuleId,
        profile: &'static str,
        other: Option<&'static str>,
        k: usize,
        expect_violated: bool,
    },
    /// Winners decoded to alternatives on a preference agenda.
    DecodedWinners {
        rule: RuleId,
        profile: &'static str,
        alternatives: Vec<&'static str>,
        expected: Vec<&'static str>,
    },
    /// The fixture agenda equals the generated preference agenda.
    AgendaMatchesPreference {
        alternatives: Vec<&'static str>,
        constraint: PrefConstraint,
    },
}

/// Result of replaying one expectation.
#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub label: String,
    pub passed: bool,
    pub detail: String,
}

/// Replay report for one fixture.
#[derive(Debug, Clone, Serialize)]
pub struct FixtureReport {
    pub id: String,
    pub checks: Vec<CheckResult>,
}

impl FixtureReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

fn js(text: &str) -> JudgmentSet {
    JudgmentSet::parse(text).expect("fixture sign rows are well-formed")
}

fn sorted_sets(rows: &[&str]) -> Vec<JudgmentSet> {
    let mut sets: Vec<JudgmentSet> = rows.iter().map(|r| js(r)).collect();
    sets.sort();
    sets
}

impl Expectation {
    fn label(&self) -> String {
        match self {
            Expectation::RationalCount { .. } => "rational-set count".into(),
            Expectation::RationalSets { .. } => "rational sets".into(),
            Expectation::Support { issue, sign, .. } => format!("support N(issue {issue}{sign})"),
            Expectation::MajoritySet { profile, .. } => format!("majoritarian set of `{profile}`"),
            Expectation::MajorityConsistent { profile, .. } => {
                format!("majority-consistency of `{profile}`")
            }
            Expectation::Winners { rule, profile, .. } => {
                format!("{rule} winners on `{profile}`")
            }
            Expectation::WinnersInclude { rule, profile, .. } => {
                format!("{rule} winners on `{profile}` include the pinned sets")
            }
            Expectation::Score { rule, profile, .. } => format!("{rule} score on `{profile}`"),
            Expectation::ReversalTotalOf { set, .. } => {
                format!("reversal-score total of `{set}`")
            }
            Expectation::ReversalScores { .. } => "reversal scores of held elements".into(),
            Expectation::HammingTable { .. } => "pairwise Hamming distances".into(),
            Expectation::GeodesicMatrix { .. } => "geodesic distance matrix".into(),
            Expectation::GeodesicAllDistinctPairs { expected } => {
                format!("all distinct pairs at geodesic distance {expected}")
            }
            Expectation::Axiom {
                axiom,
                rule,
                profile,
                expect_violated,
                ..
            } => format!(
                "{axiom} of {rule} on `{profile}` {}",
                if *expect_violated { "violated" } else { "holds" }
            ),
            Expectation::DecodedWinners { rule, profile, .. } => {
                format!("{rule} decoded winners on `{profile}`")
            }
            Expectation::AgendaMatchesPreference { constraint, .. } => {
                format!("agenda equals generated preference agenda ({constraint})")
            }
        }
    }

    fn check(&self, fixture: &Fixture) -> CheckResult {
        let outcome = self.run(fixture);
        let (passed, detail) = match outcome {
            Ok((passed, detail)) => (passed, detail),
            Err(e) => (false, format!("error: {e}")),
        };
        CheckResult {
            label: self.label(),
            passed,
            detail,
        }
    }

    fn run(&self, fixture: &Fixture) -> Result<(bool, String)> {
        let agenda = &fixture.agenda;
        Ok(match self {
            Expectation::RationalCount { expected } => {
                let got = agenda.rational_sets().len();
                (got == *expected, format!("expected {expected}, got {got}"))
            }
            Expectation::RationalSets { expected } => {
                let want = sorted_sets(expected);
                let got = agenda.rational_sets().to_vec();
                (got == want, format!("expected {want:?}, got {got:?}"))
            }
            Expectation::Support {
                profile,
                issue,
                sign,
                expected,
            } => {
                let got = fixture.profile(profile)?.support_count(*issue, *sign)?;
                (got == *expected, format!("expected {expected}, got {got}"))
            }
            Expectation::MajoritySet { profile, expected } => {
                let got = fixture.profile(profile)?.majoritarian_set();
                let want = js(expected);
                (got == want, format!("expected {want}, got {got}"))
            }
            Expectation::MajorityConsistent { profile, expected } => {
                let got = fixture.profile(profile)?.is_majority_consistent();
                (got == *expected, format!("expected {expected}, got {got}"))
            }
            Expectation::Winners {
                rule,
                profile,
                expected,
            } => {
                let want = sorted_sets(expected);
                let got = rules::evaluate(*rule, fixture.profile(profile)?)?.winners;
                (
                    got == want,
                    format!(
                        "expected {:?}, got {:?}",
                        want.iter().map(ToString::to_string).collect::<Vec<_>>(),
                        got.iter().map(ToString::to_string).collect::<Vec<_>>()
                    ),
                )
            }
            Expectation::WinnersInclude {
                rule,
                profile,
                expected,
            } => {
                let out = rules::evaluate(*rule, fixture.profile(profile)?)?;
                let missing: Vec<&str> = expected
                    .iter()
                    .filter(|row| !out.contains(&js(row)))
                    .copied()
                    .collect();
                (
                    missing.is_empty(),
                    if missing.is_empty() {
                        format!("all {} pinned sets among {} winners", expected.len(), out.winners.len())
                    } else {
                        format!("missing {missing:?}")
                    },
                )
            }
            Expectation::Score {
                rule,
                profile,
                expected,
            } => {
                let got = rules::evaluate(*rule, fixture.profile(profile)?)?.score;
                let want = Some(Value::from_integer(*expected));
                (got == want, format!("expected {want:?}, got {got:?}"))
            }
            Expectation::ReversalTotalOf {
                profile,
                set,
                expected,
            } => {
                let got = rules::scoring_total(
                    fixture.profile(profile)?,
                    &ScoringSpec::Reversal,
                    &js(set),
                )?;
                let want = Value::from_integer(*expected);
                (got == want, format!("expected {want}, got {got}"))
            }
            Expectation::ReversalScores {
                sets,
                held_positive,
                held_negative,
            } => {
                let mut mismatches = Vec::new();
                for row in sets {
                    let j = js(row);
                    for (issue, sign) in j.elements() {
                        let got = rules::reversal_score(agenda, &j, issue, sign)?;
                        let want = match sign {
                            Sign::Plus => *held_positive,
                            Sign::Minus => *held_negative,
                        };
                        if got != want {
                            mismatches
                                .push(format!("rev({row}, issue {issue}{sign}) = {got} ≠ {want}"));
                        }
                    }
                }
                (mismatches.is_empty(), mismatches.join("; "))
            }
            Expectation::HammingTable {
                left,
                right,
                expected,
            } => {
                let mut mismatches = Vec::new();
                for (a, row) in left.iter().zip(expected) {
                    for (b, want) in right.iter().zip(row) {
                        let got = profile::hamming(&js(a), &js(b))?;
                        if got != *want {
                            mismatches.push(format!("d({a}, {b}) = {got} ≠ {want}"));
                        }
                    }
                }
                (mismatches.is_empty(), mismatches.join("; "))
            }
            Expectation::GeodesicMatrix { labels, expected } => {
                let mut mismatches = Vec::new();
                for (a, row) in labels.iter().zip(expected) {
                    for (b, want) in labels.iter().zip(row) {
                        let got = profile::geodesic_distance(agenda, &js(a), &js(b))?;
                        if got != *want {
                            mismatches.push(format!("d_G({a}, {b}) = {got} ≠ {want}"));
                        }
                    }
                }
                (mismatches.is_empty(), mismatches.join("; "))
            }
            Expectation::GeodesicAllDistinctPairs { expected } => {
                let sets = agenda.rational_sets();
                let mut mismatches = Vec::new();
                for a in sets {
                    for b in sets {
                        if a == b {
                            continue;
                        }
                        let got = profile::geodesic_distance(agenda, a, b)?;
                        if got != *expected {
                            mismatches.push(format!("d_G({a}, {b}) = {got} ≠ {expected}"));
                        }
                    }
                }
                (mismatches.is_empty(), mismatches.join("; "))
            }
            Expectation::Axiom {
                axiom,
                rule,
                profile,
                other,
                k,
                expect_violated,
            } => {
                let p = fixture.profile(profile)?;
                let verdict = match axiom {
                    AxiomId::MajorityPreservation => {
                        axioms::check_majority_preservation(*rule, p, true)?
                    }
                    AxiomId::WeakMajorityPreservation => {
                        axioms::check_majority_preservation(*rule, p, false)?
                    }
                    AxiomId::WeakUnanimity => axioms::check_unanimity(*rule, p, false)?,
                    AxiomId::StrongUnanimity => axioms::check_unanimity(*rule, p, true)?,
                    AxiomId::Monotonicity => axioms::check_monotonicity(*rule, p)?,
                    AxiomId::Reinforcement | AxiomId::WeakReinforcement => {
                        let q = fixture.profile(other.ok_or_else(|| {
                            Error::InvalidProfile(
                                "reinforcement expectation needs a partner profile".into(),
                            )
                        })?)?;
                        axioms::check_reinforcement(
                            *rule,
                            p,
                            q,
                            *axiom == AxiomId::WeakReinforcement,
                        )?
                    }
                    AxiomId::Homogeneity => axioms::check_homogeneity(*rule, p, *k)?,
                };
                let violated = verdict.status == Status::Violated;
                if violated != *expect_violated {
                    (
                        false,
                        format!(
                            "expected violated={expect_violated}, got {}",
                            verdict.status
                        ),
                    )
                } else if violated {
                    // Violations must replay bit-for-bit.
                    let witness = verdict.witness.expect("violated verdicts carry witnesses");
                    let replayed = witness.replay()?;
                    (replayed, format!("violated; replay={replayed}"))
                } else {
                    (true, format!("status {}", verdict.status))
                }
            }
            Expectation::DecodedWinners {
                rule,
                profile,
                alternatives,
                expected,
            } => {
                let p = fixture.profile(profile)?;
                let q = alternatives.len();
                let out = rules::evaluate(*rule, p)?;
                let got = bridge::decode_winners(&out, q);
                let want: std::collections::BTreeSet<usize> = expected
                    .iter()
                    .map(|n| {
                        alternatives
                            .iter()
                            .position(|a| a == n)
                            .expect("known alternative")
                    })
                    .collect();
                (got == want, format!("expected {want:?}, got {got:?}"))
            }
            Expectation::AgendaMatchesPreference {
                alternatives,
                constraint,
            } => {
                let names: Vec<String> = alternatives.iter().map(|s| s.to_string()).collect();
                let generated = bridge::build_preference_agenda(&names, *constraint)?;
                (
                    *generated == **agenda,
                    "generated preference agenda comparison".into(),
                )
            }
        })
    }
}

macro_rules! fixture_files {
    ($id:literal) => {
        (
            include_str!(concat!("../fixtures/", $id, ".agenda")),
            include_str!(concat!("../fixtures/", $id, ".profile")),
        )
    };
}

fn build_fixtures() -> Vec<Fixture> {
    let mut out = Vec::new();

    // 17 voters over {p∧r, p∧s, q, p∧q, t}: the majoritarian set is
    // inconsistent and every rule of the catalog has a pinned outcome.
    {
        let (agenda_text, profile_text) = fixture_files!("running-17");
        let agenda = parse_agenda(agenda_text).expect("fixture agenda");
        let main = parse_profile_rows(agenda.clone(), profile_text).expect("fixture profile");
        out.push(Fixture {
            id: "running-17",
            note: "17-voter profile with an inconsistent majoritarian set; all rules pinned",
            agenda,
            profiles: vec![("main", main)],
            expectations: vec![
                Expectation::Support { profile: "main", issue: 0, sign: Sign::Plus, expected: 10 },
                Expectation::Support { profile: "main", issue: 0, sign: Sign::Minus, expected: 7 },
                Expectation::Support { profile: "main", issue: 1, sign: Sign::Plus, expected: 10 },
                Expectation::Support { profile: "main", issue: 1, sign: Sign::Minus, expected: 7 },
                Expectation::Support { profile: "main", issue: 2, sign: Sign::Plus, expected: 13 },
                Expectation::Support { profile: "main", issue: 2, sign: Sign::Minus, expected: 4 },
                Expectation::Support { profile: "main", issue: 3, sign: Sign::Plus, expected: 6 },
                Expectation::Support { profile: "main", issue: 3, sign: Sign::Minus, expected: 11 },
                Expectation::Support { profile: "main", issue: 4, sign: Sign::Plus, expected: 10 },
                Expectation::Support { profile: "main", issue: 4, sign: Sign::Minus, expected: 7 },
                Expectation::MajoritySet { profile: "main", expected: "+++-+" },
                Expectation::MajorityConsistent { profile: "main", expected: false },
                Expectation::Winners {
                    rule: RuleId::Mc,
                    profile: "main",
                    expected: vec!["+++++", "++--+", "--+-+"],
                },
                Expectation::Winners {
                    rule: RuleId::Mcc,
                    profile: "main",
                    expected: vec!["+++++", "++--+"],
                },
                Expectation::Winners { rule: RuleId::Med, profile: "main", expected: vec!["+++++"] },
                Expectation::Score { rule: RuleId::Med, profile: "main", expected: 49 },
                Expectation::Winners { rule: RuleId::Ra, profile: "main", expected: vec!["--+-+"] },
                Expectation::Winners {
                    rule: RuleId::Leximax,
                    profile: "main",
                    expected: vec!["--+-+"],
                },
                Expectation::Winners {
                    rule: RuleId::Young,
                    profile: "main",
                    expected: vec!["--+-+", "--+--"],
                },
                Expectation::Winners { rule: RuleId::Mpc, profile: "main", expected: vec!["+++++"] },
                Expectation::Score { rule: RuleId::Mpc, profile: "main", expected: 3 },
            ],
        });
    }

    // Three issues under the constraint q -> r: exactly four rational sets.
    {
        let (agenda_text, profile_text) = fixture_files!("ex1-constrained");
        let agenda = parse_agenda(agenda_text).expect("fixture agenda");
        let main = parse_profile_rows(agenda.clone(), profile_text).expect("fixture profile");
        out.push(Fixture {
            id: "ex1-constrained",
            note: "constrained three-issue agenda with four rational sets",
            agenda,
            profiles: vec![("main", main)],
            expectations: vec![
                Expectation::RationalCount { expected: 4 },
                Expectation::RationalSets { expected: vec!["---", "-+-", "+--", "+++"] },
                Expectation::Support { profile: "main", issue: 1, sign: Sign::Plus, expected: 3 },
            ],
        });
    }

    // Atoms plus their three biconditionals: a majority-consistent profile
    // whose geodesic-sum winner differs from the majority set.
    {
        let (agenda_text, profile_text) = fixture_files!("dgsum-not-mp");
        let agenda = parse_agenda(agenda_text).expect("fixture agenda");
        let main = parse_profile_rows(agenda.clone(), profile_text).expect("fixture profile");
        let dgsum: RuleId = "dsum-geodesic".parse().unwrap();
        out.push(Fixture {
            id: "dgsum-not-mp",
            note: "geodesic-sum rule overrides a consistent majority",
            agenda,
            profiles: vec![("main", main)],
            expectations: vec![
                Expectation::RationalCount { expected: 8 },
                Expectation::GeodesicAllDistinctPairs { expected: 1 },
                Expectation::MajorityConsistent { profile: "main", expected: true },
                Expectation::MajoritySet { profile: "main", expected: "++++++" },
                Expectation::Winners { rule: dgsum, profile: "main", expected: vec!["-++--+"] },
                Expectation::Axiom {
                    axiom: AxiomId::MajorityPreservation,
                    rule: dgsum,
                    profile: "main",
                    other: None,
                    k: 0,
                    expect_violated: true,
                },
                Expectation::Axiom {
                    axiom: AxiomId::WeakMajorityPreservation,
                    rule: dgsum,
                    profile: "main",
                    other: None,
                    k: 0,
                    expect_violated: true,
                },
            ],
        });
    }

    // One atom unanimously accepted, three conditional blocks: MCC and MPC
    // drop the unanimous atom entirely, MC keeps it only weakly.
    {
        let (agenda_text, profile_text) = fixture_files!("unanimity-p");
        let agenda = parse_agenda(agenda_text).expect("fixture agenda");
        let main = parse_profile_rows(agenda.clone(), profile_text).expect("fixture profile");
        out.push(Fixture {
            id: "unanimity-p",
            note: "unanimously accepted atom dropped by maxcard and repair rules",
            agenda,
            profiles: vec![("main", main)],
            expectations: vec![
                Expectation::MajoritySet { profile: "main", expected: "++--+--+--" },
                Expectation::MajorityConsistent { profile: "main", expected: false },
                Expectation::Winners {
                    rule: RuleId::Mcc,
                    profile: "main",
                    expected: vec!["-+--+--+--"],
                },
                Expectation::Winners {
                    rule: RuleId::Mpc,
                    profile: "main",
                    expected: vec!["-+--+--+--"],
                },
                Expectation::WinnersInclude {
                    rule: RuleId::Mc,
                    profile: "main",
                    expected: vec!["+---------", "-+--+--+--"],
                },
                Expectation::Axiom {
                    axiom: AxiomId::WeakUnanimity,
                    rule: RuleId::Mcc,
                    profile: "main",
                    other: None,
                    k: 0,
                    expect_violated: true,
                },
                Expectation::Axiom {
                    axiom: AxiomId::WeakUnanimity,
                    rule: RuleId::Mpc,
                    profile: "main",
                    other: None,
                    k: 0,
                    expect_violated: true,
                },
                Expectation::Axiom {
                    axiom: AxiomId::WeakUnanimity,
                    rule: RuleId::Mc,
                    profile: "main",
                    other: None,
                    k: 0,
                    expect_violated: false,
                },
                Expectation::Axiom {
                    axiom: AxiomId::StrongUnanimity,
                    rule: RuleId::Mc,
                    profile: "main",
                    other: None,
                    k: 0,
                    expect_violated: true,
                },
            ],
        });
    }

    // Extensional seven-set agenda: full geodesic matrix pinned; the
    // geodesic-sum winner rejects the unanimously accepted final issue.
    {
        let (agenda_text, profile_text) = fixture_files!("dgsum-unanimity");
        let agenda = parse_agenda(agenda_text).expect("fixture agenda");
        let main = parse_profile_rows(agenda.clone(), profile_text).expect("fixture profile");
        let j = [
            "+--+--+--+--+",
            "++-++-++-++-+",
            "-+--+--+--+-+",
            "-++-++-++-+++",
            "--+--+--+--++",
            "+-++-++-++-++",
            "-------------",
        ];
        let dgsum: RuleId = "dsum-geodesic".parse().unwrap();
        out.push(Fixture {
            id: "dgsum-unanimity",
            note: "geodesic-sum rule drops an issue every voter accepts",
            agenda,
            profiles: vec![("main", main)],
            expectations: vec![
                Expectation::RationalCount { expected: 7 },
                Expectation::GeodesicMatrix {
                    labels: j.to_vec(),
                    expected: vec![
                        vec![0, 1, 2, 3, 2, 1, 1],
                        vec![1, 0, 1, 2, 3, 2, 2],
                        vec![2, 1, 0, 1, 2, 3, 1],
                        vec![3, 2, 1, 0, 1, 2, 2],
                        vec![2, 3, 2, 1, 0, 1, 1],
                        vec![1, 2, 3, 2, 1, 0, 2],
                        vec![1, 2, 1, 2, 1, 2, 0],
                    ],
                },
                Expectation::Winners {
                    rule: dgsum,
                    profile: "main",
                    expected: vec!["-------------"],
                },
                Expectation::Axiom {
                    axiom: AxiomId::WeakUnanimity,
                    rule: dgsum,
                    profile: "main",
                    other: None,
                    k: 0,
                    expect_violated: true,
                },
            ],
        });
    }

    // Extensional four-set agenda: reversal scores of held elements are
    // uniform, and the reversal-scoring rule drops the unanimous issue.
    {
        let (agenda_text, profile_text) = fixture_files!("frev-unanimity");
        let agenda = parse_agenda(agenda_text).expect("fixture agenda");
        let main = parse_profile_rows(agenda.clone(), profile_text).expect("fixture profile");
        let voters = ["+--+--+--+--+", "-+--+--+--+-+", "--+--+--+--++"];
        let frev = RuleId::Scoring(rules::ScoreKind::Reversal);
        out.push(Fixture {
            id: "frev-unanimity",
            note: "reversal scoring elects the all-negative set over unanimous voters",
            agenda,
            profiles: vec![("main", main)],
            expectations: vec![
                Expectation::ReversalScores {
                    sets: voters.to_vec(),
                    held_positive: 5,
                    held_negative: 8,
                },
                Expectation::Winners {
                    rule: frev,
                    profile: "main",
                    expected: vec!["-------------"],
                },
                Expectation::Score { rule: frev, profile: "main", expected: 192 },
                Expectation::ReversalTotalOf { profile: "main", set: voters[0], expected: 163 },
                Expectation::ReversalTotalOf { profile: "main", set: voters[1], expected: 163 },
                Expectation::ReversalTotalOf { profile: "main", set: voters[2], expected: 163 },
                Expectation::Axiom {
                    axiom: AxiomId::WeakUnanimity,
                    rule: frev,
                    profile: "main",
                    other: None,
                    k: 0,
                    expect_violated: true,
                },
            ],
        });
    }

    // Fifteen voters over six issues: the ranked agenda keeps three sets,
    // its lexicographic refinement exactly one.
    {
        let (agenda_text, profile_text) = fixture_files!("ra-vs-leximax");
        let agenda = parse_agenda(agenda_text).expect("fixture agenda");
        let main = parse_profile_rows(agenda.clone(), profile_text).expect("fixture profile");
        out.push(Fixture {
            id: "ra-vs-leximax",
            note: "lexicographic refinement strictly narrows the ranked agenda",
            agenda,
            profiles: vec![("main", main)],
            expectations: vec![
                Expectation::Winners {
                    rule: RuleId::Ra,
                    profile: "main",
                    expected: vec!["++++++", "-+-+-+", "--+-++"],
                },
                Expectation::Winners {
                    rule: RuleId::Leximax,
                    profile: "main",
                    expected: vec!["++++++"],
                },
            ],
        });
    }

    // Eighteen voters over seven issues: removing the two off-pattern
    // voters restores consistency; the ranked agenda stays ambivalent on
    // the last issue.
    {
        let (agenda_text, profile_text) = fixture_files!("ra-vs-young");
        let agenda = parse_agenda(agenda_text).expect("fixture agenda");
        let main = parse_profile_rows(agenda.clone(), profile_text).expect("fixture profile");
        out.push(Fixture {
            id: "ra-vs-young",
            note: "voter-removal repair is single-valued where the ranked agenda ties",
            agenda,
            profiles: vec![("main", main)],
            expectations: vec![
                Expectation::Winners {
                    rule: RuleId::Young,
                    profile: "main",
                    expected: vec!["+++++++"],
                },
                Expectation::Score { rule: RuleId::Young, profile: "main", expected: 2 },
                Expectation::Winners {
                    rule: RuleId::Ra,
                    profile: "main",
                    expected: vec!["+++++++", "++++++-"],
                },
            ],
        });
    }

    // Nine issues with redundant conjunction chains: the median rule keeps
    // the first voter's set at weight 17 while minimal repair flips to the
    // all-negative set.
    {
        let (agenda_text, profile_text) = fixture_files!("mpc-vs-med");
        let agenda = parse_agenda(agenda_text).expect("fixture agenda");
        let main = parse_profile_rows(agenda.clone(), profile_text).expect("fixture profile");
        out.push(Fixture {
            id: "mpc-vs-med",
            note: "median and minimal-repair rules give disjoint outcomes",
            agenda,
            profiles: vec![("main", main)],
            expectations: vec![
                Expectation::RationalCount { expected: 4 },
                Expectation::Winners {
                    rule: RuleId::Med,
                    profile: "main",
                    expected: vec!["+++------"],
                },
                Expectation::Score { rule: RuleId::Med, profile: "main", expected: 17 },
                Expectation::Winners {
                    rule: RuleId::Mpc,
                    profile: "main",
                    expected: vec!["---------"],
                },
            ],
        });
    }

    // Eleven voters over four issues: minimal repair ties between two
    // outcomes, and doubling the electorate breaks the tie.
    {
        let (agenda_text, profile_text) = fixture_files!("mpc-homogeneity");
        let agenda = parse_agenda(agenda_text).expect("fixture agenda");
        let main = parse_profile_rows(agenda.clone(), profile_text).expect("fixture profile");
        let doubled = main.replicate(2).expect("replication");
        out.push(Fixture {
            id: "mpc-homogeneity",
            note: "doubling the electorate changes the minimal-repair outcome",
            agenda,
            profiles: vec![("main", main), ("doubled", doubled)],
            expectations: vec![
                Expectation::Winners {
                    rule: RuleId::Mpc,
                    profile: "main",
                    expected: vec!["--+-", "++--"],
                },
                Expectation::Winners {
                    rule: RuleId::Mpc,
                    profile: "doubled",
                    expected: vec!["--+-"],
                },
                Expectation::Axiom {
                    axiom: AxiomId::Homogeneity,
                    rule: RuleId::Mpc,
                    profile: "main",
                    other: None,
                    k: 2,
                    expect_violated: true,
                },
            ],
        });
    }

    // The doubled electorate as a fixture of its own: minimal repair and
    // maxcard winners are disjoint.
    {
        let agenda_text = include_str!("../fixtures/mpc-homogeneity.agenda");
        let profile_text = include_str!("../fixtures/mpc-vs-mcc.profile");
        let agenda = parse_agenda(agenda_text).expect("fixture agenda");
        let main = parse_profile_rows(agenda.clone(), profile_text).expect("fixture profile");
        out.push(Fixture {
            id: "mpc-vs-mcc",
            note: "minimal-repair and maxcard outcomes are disjoint",
            agenda,
            profiles: vec![("main", main)],
            expectations: vec![
                Expectation::Winners {
                    rule: RuleId::Mpc,
                    profile: "main",
                    expected: vec!["--+-"],
                },
                Expectation::Winners {
                    rule: RuleId::Mcc,
                    profile: "main",
                    expected: vec!["++++", "++--"],
                },
            ],
        });
    }

    // Extensional sixteen-issue agenda with nine rational sets: one
    // single-voter improvement enlarges the minimal-repair outcome.
    {
        let (agenda_text, profile_text) = fixture_files!("mpc-monotonicity");
        let improved_text = include_str!("../fixtures/mpc-monotonicity-improved.profile");
        let agenda = parse_agenda(agenda_text).expect("fixture agenda");
        let main = parse_profile_rows(agenda.clone(), profile_text).expect("fixture profile");
        let improved = parse_profile_rows(agenda.clone(), improved_text).expect("fixture profile");
        let j = [
            "++++++++++++++++",
            "++--+--+--+--+--",
            "--+--+--+--+--+-",
            "+++-+-++--++-++-",
            "-++-++-++-++-++-",
            "-+--++++++++++++",
            "-++++--+--+--+--",
            "--+-+-++---+--+-",
            "+-+--+--+--+--+-",
        ];
        out.push(Fixture {
            id: "mpc-monotonicity",
            note: "raising support for an accepted issue widens the repair outcome",
            agenda,
            profiles: vec![("main", main), ("improved", improved)],
            expectations: vec![
                Expectation::RationalCount { expected: 9 },
                Expectation::HammingTable {
                    left: vec![j[0], j[1], j[2]],
                    right: j.to_vec(),
                    expected: vec![
                        vec![0, 10, 11, 6, 6, 3, 9, 10, 10],
                        vec![10, 0, 11, 4, 6, 9, 3, 8, 10],
                        vec![11, 11, 0, 9, 5, 10, 10, 5, 1],
                    ],
                },
                Expectation::HammingTable {
                    left: vec![j[8]],
                    right: j.to_vec(),
                    expected: vec![vec![10, 10, 1, 8, 6, 11, 11, 6, 0]],
                },
                Expectation::Winners {
                    rule: RuleId::Mpc,
                    profile: "main",
                    expected: vec![j[3]],
                },
                Expectation::Score { rule: RuleId::Mpc, profile: "main", expected: 5 },
                Expectation::Winners {
                    rule: RuleId::Mpc,
                    profile: "improved",
                    expected: vec![j[3], j[4]],
                },
                Expectation::Score { rule: RuleId::Mpc, profile: "improved", expected: 6 },
                Expectation::Axiom {
                    axiom: AxiomId::Monotonicity,
                    rule: RuleId::Mpc,
                    profile: "main",
                    other: None,
                    k: 0,
                    expect_violated: true,
                },
            ],
        });
    }

    // Two-issue agenda: a duplicated voter pair keeps the runner-up among
    // the max-distance winners, and a non-degenerate triple evicts the
    // majority set entirely.
    {
        let agenda_text = include_str!("../fixtures/dmax-not-mp.agenda");
        let tie_text = include_str!("../fixtures/dmax-not-mp-tie.profile");
        let chain_text = include_str!("../fixtures/dmax-not-mp-chain.profile");
        let agenda = parse_agenda(agenda_text).expect("fixture agenda");
        let tie = parse_profile_rows(agenda.clone(), tie_text).expect("fixture profile");
        let chain = parse_profile_rows(agenda.clone(), chain_text).expect("fixture profile");
        let dmax: RuleId = "dmax-hamming".parse().unwrap();
        out.push(Fixture {
            id: "dmax-not-mp",
            note: "max-distance aggregation ignores consistent majorities",
            agenda,
            profiles: vec![("tie", tie), ("chain", chain)],
            expectations: vec![
                Expectation::MajorityConsistent { profile: "tie", expected: true },
                Expectation::Winners { rule: dmax, profile: "tie", expected: vec!["++", "+-"] },
                Expectation::Axiom {
                    axiom: AxiomId::MajorityPreservation,
                    rule: dmax,
                    profile: "tie",
                    other: None,
                    k: 0,
                    expect_violated: true,
                },
                Expectation::Axiom {
                    axiom: AxiomId::WeakMajorityPreservation,
                    rule: dmax,
                    profile: "tie",
                    other: None,
                    k: 0,
                    expect_violated: false,
                },
                Expectation::MajorityConsistent { profile: "chain", expected: true },
                Expectation::Winners { rule: dmax, profile: "chain", expected: vec!["+-"] },
                Expectation::Axiom {
                    axiom: AxiomId::WeakMajorityPreservation,
                    rule: dmax,
                    profile: "chain",
                    other: None,
                    k: 0,
                    expect_violated: true,
                },
            ],
        });
    }

    // Three free atoms: the max-distance winners of the antipodal pair
    // absorb the singleton partner instead of reducing to the intersection.
    {
        let agenda_text = include_str!("../fixtures/dmax-reinforcement.agenda");
        let p_text = include_str!("../fixtures/dmax-reinforcement-p.profile");
        let q_text = include_str!("../fixtures/dmax-reinforcement-q.profile");
        let agenda = parse_agenda(agenda_text).expect("fixture agenda");
        let p = parse_profile_rows(agenda.clone(), p_text).expect("fixture profile");
        let q = parse_profile_rows(agenda.clone(), q_text).expect("fixture profile");
        let combined = p.concat(&q).expect("same agenda");
        let dmax: RuleId = "dmax-hamming".parse().unwrap();
        out.push(Fixture {
            id: "dmax-reinforcement",
            note: "max-distance aggregation fails reinforcement on merged electorates",
            agenda,
            profiles: vec![("p", p), ("q", q), ("combined", combined)],
            expectations: vec![
                Expectation::Winners {
                    rule: dmax,
                    profile: "p",
                    expected: vec!["++-", "+-+", "+--", "-++", "-+-", "--+"],
                },
                Expectation::Winners { rule: dmax, profile: "q", expected: vec!["-++"] },
                // The merged profile keeps five of the six winners of `p`
                // (the set at distance three from the singleton drops out),
                // not the bare intersection.
                Expectation::Winners {
                    rule: dmax,
                    profile: "combined",
                    expected: vec!["++-", "+-+", "-++", "-+-", "--+"],
                },
                Expectation::Axiom {
                    axiom: AxiomId::Reinforcement,
                    rule: dmax,
                    profile: "p",
                    other: Some("q"),
                    k: 0,
                    expect_violated: true,
                },
            ],
        });
    }

    // Four alternatives under transitivity: the three non-preserving rules
    // pick pairwise incomparable outcomes on one profile.
    {
        let (agenda_text, profile_text) = fixture_files!("pref-incomparable");
        let agenda = parse_agenda(agenda_text).expect("fixture agenda");
        let main = parse_profile_rows(agenda.clone(), profile_text).expect("fixture profile");
        let frev = RuleId::Scoring(rules::ScoreKind::Reversal);
        let dgsum: RuleId = "dsum-geodesic".parse().unwrap();
        let dmax: RuleId = "dmax-hamming".parse().unwrap();
        let alts = vec!["c1", "c2", "c3", "c4"];
        out.push(Fixture {
            id: "pref-incomparable",
            note: "three non-preserving rules disagree pairwise on one preference profile",
            agenda,
            profiles: vec![("main", main)],
            expectations: vec![
                Expectation::AgendaMatchesPreference {
                    alternatives: alts.clone(),
                    constraint: PrefConstraint::Transitivity,
                },
                Expectation::RationalCount { expected: 24 },
                Expectation::Winners { rule: frev, profile: "main", expected: vec!["++++++"] },
                Expectation::Winners { rule: dgsum, profile: "main", expected: vec!["-+++++"] },
                // The max-distance winners are the two transitive sets at
                // distance two from both voter blocs; the sign vector
                // (+,+,+,+,-,+) also sits at distance two but encodes a
                // cyclic comparison, so it is not rational here.
                Expectation::Winners {
                    rule: dmax,
                    profile: "main",
                    expected: vec!["+++-++", "+++++-"],
                },
                Expectation::DecodedWinners {
                    rule: dmax,
                    profile: "main",
                    alternatives: alts.clone(),
                    expected: vec!["c1"],
                },
                Expectation::DecodedWinners {
                    rule: frev,
                    profile: "main",
                    alternatives: alts.clone(),
                    expected: vec!["c1"],
                },
                Expectation::DecodedWinners {
                    rule: dgsum,
                    profile: "main",
                    alternatives: alts,
                    expected: vec!["c2"],
                },
            ],
        });
    }

    out
}

static FIXTURES: OnceLock<Vec<Fixture>> = OnceLock::new();

/// All fixtures, built once.
pub fn fixtures() -> &'static [Fixture] {
    FIXTURES.get_or_init(build_fixtures)
}

pub fn fixture_ids() -> Vec<&'static str> {
    fixtures().iter().map(|f| f.id).collect()
}

pub fn fixture(id: &str) -> Result<&'static Fixture> {
    fixtures()
        .iter()
        .find(|f| f.id == id)
        .ok_or_else(|| Error::UnknownFixture(id.into()))
}

/// Replay one fixture's expectations.
pub fn run_fixture(id: &str) -> Result<FixtureReport> {
    let f = fixture(id)?;
    Ok(FixtureReport {
        id: f.id.to_string(),
        checks: f.expectations.iter().map(|e| e.check(f)).collect(),
    })
}

/// Replay the whole corpus.
pub fn run_all() -> Result<Vec<FixtureReport>> {
    fixture_ids().into_iter().map(run_fixture).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_has_the_full_inventory() {
        let ids = fixture_ids();
        assert_eq!(ids.len(), 15);
        for id in [
            "running-17",
            "ex1-constrained",
            "dgsum-not-mp",
            "unanimity-p",
            "dgsum-unanimity",
            "frev-unanimity",
            "ra-vs-leximax",
            "ra-vs-young",
            "mpc-vs-med",
            "mpc-homogeneity",
            "mpc-vs-mcc",
            "mpc-monotonicity",
            "dmax-not-mp",
            "dmax-reinforcement",
            "pref-incomparable",
        ] {
            assert!(ids.contains(&id), "missing {id}");
        }
    }

    #[test]
    fn unknown_fixture_ids_error() {
        assert!(matches!(fixture("nope"), Err(Error::UnknownFixture(_))));
        assert!(run_fixture("nope").is_err());
    }

    #[test]
    fn every_fixture_replays_clean() {
        for report in run_all().unwrap() {
            for check in &report.checks {
                assert!(
                    check.passed,
                    "{}: {} — {}",
                    report.id, check.label, check.detail
                );
            }
        }
    }

    #[test]
    fn repair_and_maxcard_disagree_on_the_doubled_profile() {
        let f = fixture("mpc-vs-mcc").unwrap();
        let p = f.profile("main").unwrap();
        let mpc = rules::evaluate(RuleId::Mpc, p).unwrap();
        let mcc = rules::evaluate(RuleId::Mcc, p).unwrap();
        assert!(mpc.winners.iter().all(|j| !mcc.contains(j)));
    }
}
