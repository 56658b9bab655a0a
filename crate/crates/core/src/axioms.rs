//! Checkers for majority-preservation, unanimity, monotonicity,
//! reinforcement, and homogeneity, plus seeded instance generation, sampled
//! suites, violation search, and pairwise rule comparison.
//!
//! Universally quantified properties can only be sampled, so passing
//! verdicts are reported as `holds-on-sample`; every `violated` verdict
//! carries a witness that replays deterministically.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::agenda::{Agenda, AgendaLimits, JudgmentSet, Sign};
use crate::error::{Error, Result};
use crate::logic::{self, Formula};
use crate::profile::Profile;
use crate::rules::{self, RuleId};

/// The checkable axioms (variants are separate identifiers).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum AxiomId {
    MajorityPreservation,
    WeakMajorityPreservation,
    WeakUnanimity,
    StrongUnanimity,
    Monotonicity,
    Reinforcement,
    WeakReinforcement,
    Homogeneity,
}

impl AxiomId {
    pub const ALL: [AxiomId; 8] = [
        AxiomId::MajorityPreservation,
        AxiomId::WeakMajorityPreservation,
        AxiomId::WeakUnanimity,
        AxiomId::StrongUnanimity,
        AxiomId::Monotonicity,
        AxiomId::Reinforcement,
        AxiomId::WeakReinforcement,
        AxiomId::Homogeneity,
    ];
}

impl fmt::Display for AxiomId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            AxiomId::MajorityPreservation => "majority-preservation",
            AxiomId::WeakMajorityPreservation => "weak-majority-preservation",
            AxiomId::WeakUnanimity => "weak-unanimity",
            AxiomId::StrongUnanimity => "strong-unanimity",
            AxiomId::Monotonicity => "monotonicity",
            AxiomId::Reinforcement => "reinforcement",
            AxiomId::WeakReinforcement => "weak-reinforcement",
            AxiomId::Homogeneity => "homogeneity",
        };
        write!(f, "{s}")
    }
}

impl Serialize for AxiomId {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        ser.collect_str(self)
    }
}

impl FromStr for AxiomId {
    type Err = Error;

    fn from_str(s: &str) -> Result<AxiomId> {
        Ok(match s {
            "majority-preservation" => AxiomId::MajorityPreservation,
            "weak-majority-preservation" => AxiomId::WeakMajorityPreservation,
            "weak-unanimity" => AxiomId::WeakUnanimity,
            "strong-unanimity" => AxiomId::StrongUnanimity,
            "monotonicity" => AxiomId::Monotonicity,
            "reinforcement" => AxiomId::Reinforcement,
            "weak-reinforcement" => AxiomId::WeakReinforcement,
            "homogeneity" => AxiomId::Homogeneity,
            other => return Err(Error::UnknownAxiom(other.into())),
        })
    }
}

/// Outcome of one axiom check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    HoldsOnSample,
    Violated,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Status::HoldsOnSample => write!(f, "holds-on-sample"),
            Status::Violated => write!(f, "violated"),
        }
    }
}

/// The violating instance, replayable through the rule module.
#[derive(Debug, Clone)]
pub struct ViolationWitness {
    pub axiom: AxiomId,
    pub rule: RuleId,
    pub profile: Profile,
    pub detail: WitnessDetail,
}

#[derive(Debug, Clone)]
pub enum WitnessDetail {
    MajorityPreservation {
        strict: bool,
        expected: Vec<JudgmentSet>,
        winners: Vec<JudgmentSet>,
    },
    Unanimity {
        strong: bool,
        element: (usize, Sign),
        winners: Vec<JudgmentSet>,
    },
    Monotonicity {
        element: (usize, Sign),
        voter: usize,
        improved: Profile,
        winners_before: Vec<JudgmentSet>,
        winners_after: Vec<JudgmentSet>,
    },
    Reinforcement {
        weak: bool,
        other: Profile,
        expected: Vec<JudgmentSet>,
        combined_winners: Vec<JudgmentSet>,
    },
    Homogeneity {
        k: usize,
        winners_single: Vec<JudgmentSet>,
        winners_replicated: Vec<JudgmentSet>,
    },
}

impl ViolationWitness {
    /// Re-run the violated check from the stored instance; true when the
    /// violation reproduces.
    pub fn replay(&self) -> Result<bool> {
        let verdict = match &self.detail {
            WitnessDetail::MajorityPreservation { strict, .. } => {
                check_majority_preservation(self.rule, &self.profile, *strict)?
            }
            WitnessDetail::Unanimity { strong, .. } => {
                check_unanimity(self.rule, &self.profile, *strong)?
            }
            WitnessDetail::Monotonicity { .. } => check_monotonicity(self.rule, &self.profile)?,
            WitnessDetail::Reinforcement { weak, other, .. } => {
                check_reinforcement(self.rule, &self.profile, other, *weak)?
            }
            WitnessDetail::Homogeneity { k, .. } => {
                check_homogeneity(self.rule, &self.profile, *k)?
            }
        };
        Ok(verdict.status == Status::Violated)
    }
}

/// Verdict of a per-instance axiom check; `checks` counts the non-vacuous
/// sub-checks performed.
#[derive(Debug, Clone)]
pub struct AxiomVerdict {
    pub axiom: AxiomId,
    pub rule: RuleId,
    pub status: Status,
    pub checks: usize,
    pub witness: Option<ViolationWitness>,
}

impl AxiomVerdict {
    fn holds(axiom: AxiomId, rule: RuleId, checks: usize) -> AxiomVerdict {
        AxiomVerdict {
            axiom,
            rule,
            status: Status::HoldsOnSample,
            checks,
            witness: None,
        }
    }

    fn violated(checks: usize, witness: ViolationWitness) -> AxiomVerdict {
        AxiomVerdict {
            axiom: witness.axiom,
            rule: witness.rule,
            status: Status::Violated,
            checks,
            witness: Some(witness),
        }
    }
}

/// Majority-preservation: for majority-consistent profiles, the strict form
/// demands F(P) = ext(m(P)); the weak form only ext(m(P)) ⊆ F(P). Vacuously
/// holds otherwise.
pub fn check_majority_preservation(
    rule: RuleId,
    p: &Profile,
    strict: bool,
) -> Result<AxiomVerdict> {
    let axiom = if strict {
        AxiomId::MajorityPreservation
    } else {
        AxiomId::WeakMajorityPreservation
    };
    if !p.is_majority_consistent() {
        return Ok(AxiomVerdict::holds(axiom, rule, 0));
    }
    let expected = rules::majority_extensions(p)?;
    let out = rules::evaluate(rule, p)?;
    let ok = if strict {
        out.winners == expected
    } else {
        expected.iter().all(|j| out.contains(j))
    };
    if ok {
        Ok(AxiomVerdict::holds(axiom, rule, 1))
    } else {
        Ok(AxiomVerdict::violated(
            1,
            ViolationWitness {
                axiom,
                rule,
                profile: p.clone(),
                detail: WitnessDetail::MajorityPreservation {
                    strict,
                    expected,
                    winners: out.winners,
                },
            },
        ))
    }
}

/// Unanimity: every element accepted by all voters must appear in some
/// winner (weak) or in every winner (strong).
pub fn check_unanimity(rule: RuleId, p: &Profile, strong: bool) -> Result<AxiomVerdict> {
    let axiom = if strong {
        AxiomId::StrongUnanimity
    } else {
        AxiomId::WeakUnanimity
    };
    let n = p.voter_count();
    let unanimous: Vec<(usize, Sign)> = p
        .support_table()
        .into_iter()
        .enumerate()
        .filter_map(|(i, (plus, minus))| {
            if plus == n {
                Some((i, Sign::Plus))
            } else if minus == n {
                Some((i, Sign::Minus))
            } else {
                None
            }
        })
        .collect();
    if unanimous.is_empty() {
        return Ok(AxiomVerdict::holds(axiom, rule, 0));
    }
    let out = rules::evaluate(rule, p)?;
    let mut checks = 0;
    for &(i, sign) in &unanimous {
        checks += 1;
        let ok = if strong {
            out.winners.iter().all(|j| j.sign(i) == Some(sign))
        } else {
            out.winners.iter().any(|j| j.sign(i) == Some(sign))
        };
        if !ok {
            return Ok(AxiomVerdict::violated(
                checks,
                ViolationWitness {
                    axiom,
                    rule,
                    profile: p.clone(),
                    detail: WitnessDetail::Unanimity {
                        strong,
                        element: (i, sign),
                        winners: out.winners,
                    },
                },
            ));
        }
    }
    Ok(AxiomVerdict::holds(axiom, rule, checks))
}

/// All single-voter improvements toward the element `(issue, sign)`: the
/// voter currently holds the opposite sign and the flipped set is rational.
pub fn phi_improvements(
    p: &Profile,
    issue: usize,
    sign: Sign,
) -> Result<Vec<(usize, Profile)>> {
    if issue >= p.agenda().issue_count() {
        return Err(Error::IssueOutOfRange {
            index: issue,
            issues: p.agenda().issue_count(),
        });
    }
    let mut out = Vec::new();
    for (i, voter) in p.voters().iter().enumerate() {
        if voter.sign(issue) == Some(sign.flip()) {
            let flipped = voter.flipped(issue)?;
            if p.agenda().is_rational(&flipped) {
                out.push((i, p.with_voter(i, flipped)?));
            }
        }
    }
    Ok(out)
}

/// Monotonicity: whenever every winner contains φ, every φ-improvement must
/// keep φ in every winner.
pub fn check_monotonicity(rule: RuleId, p: &Profile) -> Result<AxiomVerdict> {
    let axiom = AxiomId::Monotonicity;
    let out = rules::evaluate(rule, p)?;
    let mut checks = 0;
    for issue in 0..p.agenda().issue_count() {
        for sign in [Sign::Plus, Sign::Minus] {
            if !out.winners.iter().all(|j| j.sign(issue) == Some(sign)) {
                continue;
            }
            for (voter, improved) in phi_improvements(p, issue, sign)? {
                checks += 1;
                let after = rules::evaluate(rule, &improved)?;
                if !after.winners.iter().all(|j| j.sign(issue) == Some(sign)) {
                    return Ok(AxiomVerdict::violated(
                        checks,
                        ViolationWitness {
                            axiom,
                            rule,
                            profile: p.clone(),
                            detail: WitnessDetail::Monotonicity {
                                element: (issue, sign),
                                voter,
                                improved,
                                winners_before: out.winners,
                                winners_after: after.winners,
                            },
                        },
                    ));
                }
            }
        }
    }
    Ok(AxiomVerdict::holds(axiom, rule, checks))
}

/// Reinforcement: when F(P) ∩ F(Q) is nonempty, F(P+Q) must equal it
/// (strict) or at least intersect it (weak). Vacuous otherwise.
pub fn check_reinforcement(
    rule: RuleId,
    p: &Profile,
    q: &Profile,
    weak: bool,
) -> Result<AxiomVerdict> {
    let axiom = if weak {
        AxiomId::WeakReinforcement
    } else {
        AxiomId::Reinforcement
    };
    let fp = rules::evaluate(rule, p)?;
    let fq = rules::evaluate(rule, q)?;
    let intersection: Vec<JudgmentSet> = fp
        .winners
        .iter()
        .filter(|j| fq.contains(j))
        .cloned()
        .collect();
    if intersection.is_empty() {
        return Ok(AxiomVerdict::holds(axiom, rule, 0));
    }
    let combined = p.concat(q)?;
    let fpq = rules::evaluate(rule, &combined)?;
    let ok = if weak {
        intersection.iter().any(|j| fpq.contains(j))
    } else {
        fpq.winners == intersection
    };
    if ok {
        Ok(AxiomVerdict::holds(axiom, rule, 1))
    } else {
        Ok(AxiomVerdict::violated(
            1,
            ViolationWitness {
                axiom,
                rule,
                profile: p.clone(),
                detail: WitnessDetail::Reinforcement {
                    weak,
                    other: q.clone(),
                    expected: intersection,
                    combined_winners: fpq.winners,
                },
            },
        ))
    }
}

/// Homogeneity: F(kP) = F(P).
pub fn check_homogeneity(rule: RuleId, p: &Profile, k: usize) -> Result<AxiomVerdict> {
    let axiom = AxiomId::Homogeneity;
    if k <= 1 {
        let out = rules::evaluate(rule, p)?;
        let _ = out;
        return Ok(AxiomVerdict::holds(axiom, rule, if k == 1 { 1 } else { 0 }));
    }
    let single = rules::evaluate(rule, p)?;
    let replicated = rules::evaluate(rule, &p.replicate(k)?)?;
    if single.winners == replicated.winners {
        Ok(AxiomVerdict::holds(axiom, rule, 1))
    } else {
        Ok(AxiomVerdict::violated(
            1,
            ViolationWitness {
                axiom,
                rule,
                profile: p.clone(),
                detail: WitnessDetail::Homogeneity {
                    k,
                    winners_single: single.winners,
                    winners_replicated: replicated.winners,
                },
            },
        ))
    }
}

/// How the majoritarian set moves under a single-voter improvement toward an
/// element.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MajorityShift {
    /// m(P') = m(P).
    Unchanged,
    /// ¬φ ∈ m(P) and m(P') = m(P) \ {¬φ}.
    DropsOpposite,
    /// φ ∉ m(P) and m(P') = (m(P) \ {¬φ}) ∪ {φ}.
    GainsElement,
}

/// Classify m(P') against m(P) for an improvement toward `(issue, sign)`;
/// `None` when none or more than one of the three relations matches.
pub fn improvement_majority_shift(
    p: &Profile,
    issue: usize,
    sign: Sign,
    improved: &Profile,
) -> Option<MajorityShift> {
    let before = p.majoritarian_set();
    let after = improved.majoritarian_set();
    let unchanged = after == before;
    let drops = {
        let mut expected = before.clone();
        let applicable = before.sign(issue) == Some(sign.flip());
        expected.set_sign(issue, None);
        applicable && after == expected
    };
    let gains = {
        let mut expected = before.clone();
        let applicable = before.sign(issue) != Some(sign);
        expected.set_sign(issue, Some(sign));
        applicable && after == expected
    };
    match (unchanged, drops, gains) {
        (true, false, false) => Some(MajorityShift::Unchanged),
        (false, true, false) => Some(MajorityShift::DropsOpposite),
        (false, false, true) => Some(MajorityShift::GainsElement),
        _ => None,
    }
}

/// Which backend random agendas use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GenMode {
    Constraint,
    Extensional,
    /// Alternate between the two.
    Mixed,
}

/// Configuration of the seeded instance stream. Identical configurations
/// produce identical streams.
#[derive(Debug, Clone)]
pub struct GeneratorConfig {
    pub seed: u64,
    pub min_issues: usize,
    pub max_issues: usize,
    pub atoms: usize,
    pub min_voters: usize,
    pub max_voters: usize,
    pub mode: GenMode,
}

impl GeneratorConfig {
    /// Small desk-scale instances for axiom sampling.
    pub fn small(seed: u64) -> GeneratorConfig {
        GeneratorConfig {
            seed,
            min_issues: 2,
            max_issues: 4,
            atoms: 3,
            min_voters: 1,
            max_voters: 5,
            mode: GenMode::Mixed,
        }
    }
}

const GENERATOR_ATTEMPTS: usize = 500;

/// Seeded pseudo-random agenda and profile stream.
pub struct InstanceGenerator {
    cfg: GeneratorConfig,
    rng: ChaCha8Rng,
    produced: usize,
}

impl InstanceGenerator {
    pub fn new(cfg: GeneratorConfig) -> InstanceGenerator {
        let rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        InstanceGenerator {
            cfg,
            rng,
            produced: 0,
        }
    }

    fn random_formula(&mut self, depth: usize) -> Formula {
        let atom = |rng: &mut ChaCha8Rng, atoms: usize| {
            Formula::atom(format!("x{}", rng.gen_range(0..atoms)))
        };
        if depth == 0 || self.rng.gen_bool(0.4) {
            return atom(&mut self.rng, self.cfg.atoms);
        }
        let left = self.random_formula(depth - 1);
        let right = self.random_formula(depth - 1);
        match self.rng.gen_range(0..5) {
            0 => left.negated(),
            1 => Formula::and(left, right),
            2 => Formula::or(left, right),
            3 => Formula::implies(left, right),
            _ => Formula::iff(left, right),
        }
    }

    pub fn next_agenda(&mut self) -> Result<Arc<Agenda>> {
        let extensional = match self.cfg.mode {
            GenMode::Constraint => false,
            GenMode::Extensional => true,
            GenMode::Mixed => self.rng.gen_bool(0.5),
        };
        for _ in 0..GENERATOR_ATTEMPTS {
            let m = self.rng.gen_range(self.cfg.min_issues..=self.cfg.max_issues);
            if extensional {
                let issues: Vec<Formula> = (0..m).map(|i| Formula::atom(format!("e{i}"))).collect();
                let universe = 1u32 << m;
                let mut sets = Vec::new();
                for bits in 0..universe {
                    if self.rng.gen_bool(0.45) {
                        let signs = (0..m)
                            .map(|i| {
                                Some(if bits >> i & 1 == 1 {
                                    Sign::Plus
                                } else {
                                    Sign::Minus
                                })
                            })
                            .collect();
                        sets.push(JudgmentSet::from_signs(signs));
                    }
                }
                if sets.is_empty() {
                    continue;
                }
                if let Ok(agenda) = Agenda::extensional(issues, sets) {
                    return Ok(agenda);
                }
            } else {
                let mut issues = Vec::new();
                for _ in 0..m {
                    issues.push(self.random_formula(2));
                }
                let gamma = if self.rng.gen_bool(0.5) {
                    Formula::Top
                } else {
                    self.random_formula(2)
                };
                let limits = AgendaLimits::default();
                let distinct = {
                    let mut seen = std::collections::BTreeSet::new();
                    issues.iter().all(|f| seen.insert(f.clone()))
                };
                if !distinct {
                    continue;
                }
                if let Ok(agenda) = Agenda::with_constraint_limited(issues, gamma, limits) {
                    return Ok(agenda);
                }
            }
        }
        Err(Error::GeneratorExhausted {
            attempts: GENERATOR_ATTEMPTS,
            goal: "random agenda".into(),
        })
    }

    /// A random profile over a fresh random agenda.
    pub fn next_profile(&mut self) -> Result<Profile> {
        let agenda = self.next_agenda()?;
        Ok(self.profile_on(&agenda))
    }

    /// A random profile over a given agenda.
    pub fn profile_on(&mut self, agenda: &Arc<Agenda>) -> Profile {
        self.produced += 1;
        let n = self.rng.gen_range(self.cfg.min_voters..=self.cfg.max_voters);
        let sets = agenda.rational_sets();
        let voters: Vec<JudgmentSet> = (0..n)
            .map(|_| sets[self.rng.gen_range(0..sets.len())].clone())
            .collect();
        Profile::new(agenda.clone(), voters).expect("sampled voters are rational")
    }

    /// A random majority-consistent profile (rejection sampled).
    pub fn next_majority_consistent(&mut self) -> Result<Profile> {
        for _ in 0..GENERATOR_ATTEMPTS {
            let p = self.next_profile()?;
            if p.is_majority_consistent() {
                return Ok(p);
            }
        }
        Err(Error::GeneratorExhausted {
            attempts: GENERATOR_ATTEMPTS,
            goal: "majority-consistent profile".into(),
        })
    }
}

/// Hand-built instances worth trying before random search.
pub mod constructions {
    use super::*;
    use crate::profile::parse_profile_rows;

    /// Two antipodal voters over {p, q, r, s} plus an issue true exactly on
    /// the two unanimous rows; every compromise at max-distance 3 rejects
    /// the unanimous issue.
    pub fn antipodal_pair_profile() -> Result<Profile> {
        let issues = vec![
            logic::parse_formula("p")?,
            logic::parse_formula("q")?,
            logic::parse_formula("r")?,
            logic::parse_formula("s")?,
            logic::parse_formula("(p & q & r & s) | (!p & !q & !r & !s)")?,
        ];
        let agenda = Agenda::with_constraint(issues, Formula::Top)?;
        parse_profile_rows(agenda, "+ + + + +\n- - - - +\n")
    }

    /// One atom shared by all voters plus `blocks` conditional clusters
    /// `p -> (x | y)` with alternating support; with four or more blocks the
    /// all-negative set outweighs every set keeping the shared atom.
    pub fn conditional_blocks_profile(blocks: usize) -> Result<Profile> {
        let mut issue_texts = vec!["p".to_string()];
        for b in 0..blocks {
            issue_texts.push(format!("p -> (x{b} | y{b})"));
            issue_texts.push(format!("x{b}"));
            issue_texts.push(format!("y{b}"));
        }
        let issues = issue_texts
            .iter()
            .map(|t| logic::parse_formula(t))
            .collect::<Result<Vec<_>>>()?;
        let agenda = Agenda::with_constraint(issues, Formula::Top)?;
        let mut rows = String::new();
        // Voter 1 accepts the x side, voter 2 the y side, voter 3 rejects
        // every conditional.
        rows.push_str(&format!("+{}\n", " + + -".repeat(blocks)));
        rows.push_str(&format!("+{}\n", " + - +".repeat(blocks)));
        rows.push_str(&format!("+{}\n", " - - -".repeat(blocks)));
        parse_profile_rows(agenda, &rows)
    }
}

/// One search or suite item: a profile, plus a partner for reinforcement.
#[derive(Debug, Clone)]
pub enum Candidate {
    Single(Profile),
    Pair(Profile, Profile),
}

/// Sampling plan for one (rule, axiom) cell.
#[derive(Debug, Clone)]
pub struct SuiteConfig {
    pub generator: GeneratorConfig,
    pub target_checks: usize,
    pub max_instances: usize,
    pub stop_at_first_violation: bool,
}

impl SuiteConfig {
    pub fn new(seed: u64, target_checks: usize) -> SuiteConfig {
        SuiteConfig {
            generator: GeneratorConfig::small(seed),
            target_checks,
            max_instances: target_checks * 50,
            stop_at_first_violation: false,
        }
    }
}

/// Aggregated result of a sampled suite over one (rule, axiom) cell.
#[derive(Debug)]
pub struct SuiteReport {
    pub rule: RuleId,
    pub axiom: AxiomId,
    pub seed: u64,
    pub instances: usize,
    pub checks: usize,
    pub violations: usize,
    pub witness: Option<ViolationWitness>,
}

/// Run one (rule, axiom) cell over seeded random instances (preceded by the
/// given directed candidates) until the target number of non-vacuous checks
/// is reached.
pub fn run_suite(
    rule: RuleId,
    axiom: AxiomId,
    cfg: &SuiteConfig,
    directed: &[Candidate],
) -> Result<SuiteReport> {
    let mut report = SuiteReport {
        rule,
        axiom,
        seed: cfg.generator.seed,
        instances: 0,
        checks: 0,
        violations: 0,
        witness: None,
    };
    let mut gen = InstanceGenerator::new(cfg.generator.clone());

    let mut pending: Vec<Candidate> = directed.to_vec();
    let mut reinforcement_phase = 0u8;
    while report.checks < cfg.target_checks && report.instances < cfg.max_instances {
        let candidate = if let Some(c) = pending.pop() {
            c
        } else {
            match axiom {
                AxiomId::Reinforcement | AxiomId::WeakReinforcement => {
                    let p = gen.next_profile()?;
                    // Rotate partners: an independent profile, the profile
                    // itself (electorate doubling), or a singleton of one of
                    // its winners; the latter two make the nonempty
                    // intersection precondition common.
                    reinforcement_phase = (reinforcement_phase + 1) % 3;
                    let q = match reinforcement_phase {
                        0 => gen.profile_on(p.agenda_arc()),
                        1 => p.clone(),
                        _ => {
                            let out = rules::evaluate(rule, &p)?;
                            Profile::new(
                                p.agenda_arc().clone(),
                                vec![out.winners[0].clone()],
                            )?
                        }
                    };
                    Candidate::Pair(p, q)
                }
                _ => Candidate::Single(gen.next_profile()?),
            }
        };
        report.instances += 1;
        let verdict = match (&candidate, axiom) {
            (Candidate::Single(p), AxiomId::MajorityPreservation) => {
                check_majority_preservation(rule, p, true)?
            }
            (Candidate::Single(p), AxiomId::WeakMajorityPreservation) => {
                check_majority_preservation(rule, p, false)?
            }
            (Candidate::Single(p), AxiomId::WeakUnanimity) => check_unanimity(rule, p, false)?,
            (Candidate::Single(p), AxiomId::StrongUnanimity) => check_unanimity(rule, p, true)?,
            (Candidate::Single(p), AxiomId::Monotonicity) => check_monotonicity(rule, p)?,
            (Candidate::Single(p), AxiomId::Homogeneity) => {
                let k = 2 + report.instances % 2;
                check_homogeneity(rule, p, k)?
            }
            (Candidate::Pair(p, q), AxiomId::Reinforcement) => {
                check_reinforcement(rule, p, q, false)?
            }
            (Candidate::Pair(p, q), AxiomId::WeakReinforcement) => {
                check_reinforcement(rule, p, q, true)?
            }
            (Candidate::Pair(p, _), _) => {
                return Err(Error::InvalidProfile(format!(
                    "paired candidate given to single-profile axiom {axiom} on {}",
                    p.voter_count()
                )))
            }
            (Candidate::Single(_), AxiomId::Reinforcement | AxiomId::WeakReinforcement) => {
                return Err(Error::InvalidProfile(
                    "reinforcement requires paired candidates".into(),
                ))
            }
        };
        report.checks += verdict.checks;
        if verdict.status == Status::Violated {
            report.violations += 1;
            if report.witness.is_none() {
                report.witness = verdict.witness;
            }
            if cfg.stop_at_first_violation {
                break;
            }
        }
    }
    Ok(report)
}

/// Search for a violation of one (rule, axiom) cell: directed candidates
/// first, then the seeded random stream.
pub fn find_violation(
    rule: RuleId,
    axiom: AxiomId,
    cfg: &SuiteConfig,
    directed: &[Candidate],
) -> Result<Option<ViolationWitness>> {
    let mut cfg = cfg.clone();
    cfg.stop_at_first_violation = true;
    let report = run_suite(rule, axiom, &cfg, directed)?;
    Ok(report.witness)
}

/// Observed relation between two rules over a set of instances.
#[derive(Debug, Clone, Serialize)]
pub struct RelationReport {
    pub rule1: RuleId,
    pub rule2: RuleId,
    pub instances: usize,
    pub equal: usize,
    pub proper_subset: usize,
    pub proper_superset: usize,
    pub incomparable_instances: usize,
    #[serde(skip)]
    pub not_subset_witness: Option<Profile>,
    #[serde(skip)]
    pub not_superset_witness: Option<Profile>,
}

impl RelationReport {
    /// Classification of the observed relation; `incomparable` is certified
    /// by one witness in each direction.
    pub fn classify(&self) -> &'static str {
        match (&self.not_subset_witness, &self.not_superset_witness) {
            (Some(_), Some(_)) => "incomparable",
            (Some(_), None) => "superset-on-sample",
            (None, Some(_)) => "subset-on-sample",
            (None, None) => "equal-on-sample",
        }
    }
}

/// Compare two rules instance by instance.
pub fn compare_rules(
    rule1: RuleId,
    rule2: RuleId,
    instances: impl IntoIterator<Item = Profile>,
) -> Result<RelationReport> {
    let mut report = RelationReport {
        rule1,
        rule2,
        instances: 0,
        equal: 0,
        proper_subset: 0,
        proper_superset: 0,
        incomparable_instances: 0,
        not_subset_witness: None,
        not_superset_witness: None,
    };
    for p in instances {
        let f1 = rules::evaluate(rule1, &p)?;
        let f2 = rules::evaluate(rule2, &p)?;
        let sub = f1.is_subset_of(&f2);
        let sup = f2.is_subset_of(&f1);
        match (sub, sup) {
            (true, true) => report.equal += 1,
            (true, false) => report.proper_subset += 1,
            (false, true) => report.proper_superset += 1,
            (false, false) => report.incomparable_instances += 1,
        }
        if !sub && report.not_subset_witness.is_none() {
            report.not_subset_witness = Some(p.clone());
        }
        if !sup && report.not_superset_witness.is_none() {
            report.not_superset_witness = Some(p.clone());
        }
        report.instances += 1;
    }
    Ok(report)
}

/// Compare two rules over the seeded random stream.
pub fn compare_rules_sampled(
    rule1: RuleId,
    rule2: RuleId,
    cfg: &GeneratorConfig,
    samples: usize,
) -> Result<RelationReport> {
    let mut gen = InstanceGenerator::new(cfg.clone());
    let instances: Vec<Profile> = (0..samples)
        .map(|_| gen.next_profile())
        .collect::<Result<Vec<_>>>()?;
    compare_rules(rule1, rule2, instances)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::agenda::parse_agenda;
    use crate::profile::parse_profile_rows;

    fn js(text: &str) -> JudgmentSet {
        JudgmentSet::parse(text).unwrap()
    }

    fn running_profile() -> Profile {
        let agenda = parse_agenda("constraint: T\np & r\np & s\nq\np & q\nt\n").unwrap();
        parse_profile_rows(agenda, "+ + + + + x6\n+ + - - + x4\n- - + - - x7\n").unwrap()
    }

    fn example1_agenda() -> Arc<Agenda> {
        parse_agenda("constraint: q -> r\np & r\nq\np & q\n").unwrap()
    }

    #[test]
    fn majority_preservation_holds_for_med_on_consistent_profiles() {
        let p = parse_profile_rows(example1_agenda(), "- + -\n- + -\n+ - -\n").unwrap();
        let v = check_majority_preservation(RuleId::Med, &p, true).unwrap();
        assert_eq!(v.status, Status::HoldsOnSample);
        assert_eq!(v.checks, 1);
    }

    #[test]
    fn majority_preservation_is_vacuous_on_inconsistent_profiles() {
        let v = check_majority_preservation(RuleId::Med, &running_profile(), true).unwrap();
        assert_eq!(v.status, Status::HoldsOnSample);
        assert_eq!(v.checks, 0);
    }

    #[test]
    fn dmax_fails_strict_majority_preservation_on_a_tie_pair() {
        let agenda = parse_agenda("constraint: T\np\nq\n").unwrap();
        let p = parse_profile_rows(agenda, "+ +\n+ +\n+ -\n").unwrap();
        let rule = "dmax-hamming".parse().unwrap();
        let strict = check_majority_preservation(rule, &p, true).unwrap();
        assert_eq!(strict.status, Status::Violated);
        assert!(strict.witness.unwrap().replay().unwrap());
        // The weak form survives here: ext(m(P)) is still among the winners.
        let weak = check_majority_preservation(rule, &p, false).unwrap();
        assert_eq!(weak.status, Status::HoldsOnSample);
    }

    #[test]
    fn dmax_fails_weak_majority_preservation_on_a_nondegenerate_triple() {
        let agenda = parse_agenda("constraint: T\np\nq\n").unwrap();
        let p = parse_profile_rows(agenda, "+ +\n+ -\n- -\n- -\n- -\n").unwrap();
        let rule = "dmax-hamming".parse().unwrap();
        let weak = check_majority_preservation(rule, &p, false).unwrap();
        assert_eq!(weak.status, Status::Violated);
        assert!(weak.witness.unwrap().replay().unwrap());
    }

    #[test]
    fn antipodal_pair_breaks_weak_unanimity_of_dmax() {
        let p = constructions::antipodal_pair_profile().unwrap();
        let rule = "dmax-hamming".parse().unwrap();
        let v = check_unanimity(rule, &p, false).unwrap();
        assert_eq!(v.status, Status::Violated);
        match &v.witness.as_ref().unwrap().detail {
            WitnessDetail::Unanimity { element, .. } => assert_eq!(*element, (4, Sign::Plus)),
            other => panic!("unexpected detail {other:?}"),
        }
        assert!(v.witness.unwrap().replay().unwrap());
    }

    #[test]
    fn conditional_blocks_break_weak_unanimity_of_med() {
        let p = constructions::conditional_blocks_profile(4).unwrap();
        let v = check_unanimity(RuleId::Med, &p, false).unwrap();
        assert_eq!(v.status, Status::Violated);
        assert!(v.witness.unwrap().replay().unwrap());
    }

    #[test]
    fn unanimity_is_vacuous_without_unanimous_elements() {
        let agenda = parse_agenda("constraint: T\np\n").unwrap();
        let p = parse_profile_rows(agenda, "+\n-\n").unwrap();
        let v = check_unanimity(RuleId::Med, &p, false).unwrap();
        assert_eq!(v.checks, 0);
    }

    #[test]
    fn improvements_respect_rationality() {
        let agenda = example1_agenda();
        // Flipping the first issue of (-,-,-) toward acceptance gives
        // (+,-,-), which is rational.
        let p = parse_profile_rows(agenda.clone(), "- - -\n").unwrap();
        let improvements = phi_improvements(&p, 0, Sign::Plus).unwrap();
        assert_eq!(improvements.len(), 1);
        assert_eq!(improvements[0].1.voters()[0], js("+--"));

        // (+,+,+) admits no improvement toward any rejected element: every
        // single flip is irrational under the constraint.
        let p = parse_profile_rows(agenda, "+ + +\n").unwrap();
        for issue in 0..3 {
            assert!(phi_improvements(&p, issue, Sign::Minus).unwrap().is_empty());
        }
    }

    #[test]
    fn improvements_toward_held_elements_are_empty() {
        let p = parse_profile_rows(example1_agenda(), "- + -\n- + -\n").unwrap();
        assert!(phi_improvements(&p, 1, Sign::Plus).unwrap().is_empty());
    }

    #[test]
    fn med_is_monotonic_on_the_running_profile() {
        let v = check_monotonicity(RuleId::Med, &running_profile()).unwrap();
        assert_eq!(v.status, Status::HoldsOnSample);
        assert!(v.checks > 0);
    }

    #[test]
    fn majority_shift_matches_exactly_one_case() {
        let p = parse_profile_rows(example1_agenda(), "- - -\n- + -\n+ - -\n").unwrap();
        for issue in 0..3 {
            for sign in [Sign::Plus, Sign::Minus] {
                for (_, improved) in phi_improvements(&p, issue, sign).unwrap() {
                    assert!(
                        improvement_majority_shift(&p, issue, sign, &improved).is_some(),
                        "issue {issue} sign {sign}"
                    );
                }
            }
        }
    }

    #[test]
    fn reinforcement_vacuous_when_intersection_empty() {
        let agenda = parse_agenda("constraint: T\np\n").unwrap();
        let p = parse_profile_rows(agenda.clone(), "+\n").unwrap();
        let q = parse_profile_rows(agenda, "-\n").unwrap();
        let v = check_reinforcement(RuleId::Med, &p, &q, false).unwrap();
        assert_eq!(v.checks, 0);
    }

    #[test]
    fn mc_breaks_reinforcement_with_an_aligned_singleton() {
        let p = running_profile();
        let q = Profile::new(p.agenda_arc().clone(), vec![js("++--+")]).unwrap();
        let v = check_reinforcement(RuleId::Mc, &p, &q, false).unwrap();
        assert_eq!(v.status, Status::Violated);
        assert!(v.witness.unwrap().replay().unwrap());
    }

    #[test]
    fn med_satisfies_reinforcement_on_samples() {
        let report = run_suite(
            RuleId::Med,
            AxiomId::Reinforcement,
            &SuiteConfig::new(5, 60),
            &[],
        )
        .unwrap();
        assert_eq!(report.violations, 0);
        assert!(report.checks >= 60);
    }

    #[test]
    fn homogeneity_holds_trivially_for_k1() {
        let v = check_homogeneity(RuleId::Mc, &running_profile(), 1).unwrap();
        assert_eq!(v.status, Status::HoldsOnSample);
    }

    #[test]
    fn mc_is_homogeneous_everywhere_sampled() {
        let report = run_suite(
            RuleId::Mc,
            AxiomId::Homogeneity,
            &SuiteConfig::new(7, 50),
            &[],
        )
        .unwrap();
        assert_eq!(report.violations, 0);
    }

    #[test]
    fn generator_streams_are_reproducible() {
        let cfg = GeneratorConfig::small(42);
        let mut a = InstanceGenerator::new(cfg.clone());
        let mut b = InstanceGenerator::new(cfg);
        for _ in 0..10 {
            let pa = a.next_profile().unwrap();
            let pb = b.next_profile().unwrap();
            assert_eq!(pa.agenda().issues(), pb.agenda().issues());
            assert_eq!(pa.voters(), pb.voters());
        }
    }

    #[test]
    fn compare_rules_finds_incomparability_witnesses() {
        let report = compare_rules(
            RuleId::Med,
            RuleId::Ra,
            vec![running_profile()],
        )
        .unwrap();
        assert_eq!(report.classify(), "incomparable");
        assert!(report.not_subset_witness.is_some());
        assert!(report.not_superset_witness.is_some());
    }

    #[test]
    fn compare_rules_confirms_the_mcc_mc_inclusion_on_samples() {
        let report =
            compare_rules_sampled(RuleId::Mcc, RuleId::Mc, &GeneratorConfig::small(3), 60)
                .unwrap();
        assert!(report.not_subset_witness.is_none());
    }

    #[test]
    fn axiom_ids_round_trip() {
        for id in AxiomId::ALL {
            assert_eq!(id.to_string().parse::<AxiomId>().unwrap(), id);
        }
        assert!("fairness".parse::<AxiomId>().is_err());
    }
}
