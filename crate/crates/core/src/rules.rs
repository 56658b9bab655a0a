//! The aggregation rules: majoritarian (MC, MCC), weighted-majoritarian
//! (MED, RA, leximax), profile-repair (Young, MPC), distance-based
//! (`F^{d,⋆}`), and scoring rules (reversal score).
//!
//! All scores and distances use exact integer or rational arithmetic, so
//! argmax/argmin tie sets are exact.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_rational::Rational64;
use num_traits::Zero;
use serde::Serialize;

use crate::agenda::{Agenda, ElementSet, JudgmentSet, Sign};
use crate::error::{Error, Result};
use crate::profile::{self, Profile};

/// Exact value type for scores and distances.
pub type Value = Rational64;

/// Default ceiling on the total number of judgment reversals the minimal
/// profile change search will consider.
pub const DEFAULT_MPC_BUDGET: u64 = 64;

/// Largest tie group the ranked-agenda permutation oracle will expand (8!).
pub const TIE_GROUP_BOUND: usize = 8;

fn int(v: u64) -> Value {
    Value::from_integer(v as i64)
}

/// Per-winner provenance recorded alongside a rule outcome.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OutcomeWitness {
    /// A maximal (or maxcard) consistent subset of the majoritarian set and
    /// the winners extending it.
    Subset {
        elements: ElementSet,
        extensions: Vec<JudgmentSet>,
    },
    /// Voter indices removed to restore majority-consistency.
    Removal {
        removed_voters: Vec<usize>,
        majority: JudgmentSet,
    },
    /// A repaired profile at minimal Hamming distance and its majoritarian
    /// set.
    Repair {
        repaired: Vec<JudgmentSet>,
        distance: u64,
        majority: JudgmentSet,
    },
}

/// The (irresolute) output of a rule: a nonempty set of rational judgment
/// sets, with optional score and witness metadata.
#[derive(Debug, Clone, PartialEq)]
pub struct RuleOutcome {
    pub winners: Vec<JudgmentSet>,
    pub score: Option<Value>,
    pub witnesses: Vec<OutcomeWitness>,
}

impl RuleOutcome {
    fn new(mut winners: Vec<JudgmentSet>) -> RuleOutcome {
        winners.sort();
        winners.dedup();
        assert!(!winners.is_empty(), "rule outcomes are nonempty");
        RuleOutcome {
            winners,
            score: None,
            witnesses: Vec::new(),
        }
    }

    fn with_score(mut self, score: Value) -> RuleOutcome {
        self.score = Some(score);
        self
    }

    fn with_witnesses(mut self, witnesses: Vec<OutcomeWitness>) -> RuleOutcome {
        self.witnesses = witnesses;
        self
    }

    pub fn contains(&self, j: &JudgmentSet) -> bool {
        self.winners.binary_search(j).is_ok()
    }

    pub fn is_subset_of(&self, other: &RuleOutcome) -> bool {
        self.winners.iter().all(|j| other.contains(j))
    }

    pub fn same_winners(&self, other: &RuleOutcome) -> bool {
        self.winners == other.winners
    }
}

fn argmax_by_value(
    agenda: &Agenda,
    mut value: impl FnMut(&JudgmentSet) -> Result<Value>,
) -> Result<(Vec<JudgmentSet>, Value)> {
    let mut best: Option<Value> = None;
    let mut winners = Vec::new();
    for j in agenda.rational_sets() {
        let v = value(j)?;
        match &best {
            Some(b) if v < *b => {}
            Some(b) if v == *b => winners.push(j.clone()),
            _ => {
                best = Some(v);
                winners = vec![j.clone()];
            }
        }
    }
    Ok((winners, best.expect("agendas have rational sets")))
}

/// MC: the union of the rational extensions of every maximal consistent
/// subset of the majoritarian set.
pub fn rule_mc(p: &Profile) -> Result<RuleOutcome> {
    let agenda = p.agenda();
    let majority = ElementSet::from_judgment_set(&p.majoritarian_set());
    let subsets = agenda.max_consistent_subsets(&majority)?;
    let mut winners = Vec::new();
    let mut witnesses = Vec::new();
    for s in subsets {
        let extensions = agenda.extensions_of_elements(&s)?;
        winners.extend(extensions.iter().cloned());
        witnesses.push(OutcomeWitness::Subset {
            elements: s,
            extensions,
        });
    }
    Ok(RuleOutcome::new(winners).with_witnesses(witnesses))
}

/// MCC: the rational sets maximizing `|J ∩ m(P)|` (equivalently, the
/// extensions of the maxcard consistent subsets of the majoritarian set).
pub fn rule_mcc(p: &Profile) -> Result<RuleOutcome> {
    let agenda = p.agenda();
    let majority: Vec<(usize, Sign)> = p.majoritarian_set().elements().collect();
    let (winners, best) = argmax_by_value(agenda, |j| {
        Ok(int(majority
            .iter()
            .filter(|&&(i, sign)| j.sign(i) == Some(sign))
            .count() as u64))
    })?;
    let mut witnesses: Vec<OutcomeWitness> = Vec::new();
    for w in &winners {
        let overlap = ElementSet::from_elements(
            majority
                .iter()
                .copied()
                .filter(|&(i, sign)| w.sign(i) == Some(sign)),
        );
        match witnesses.iter_mut().find(
            |ow| matches!(ow, OutcomeWitness::Subset { elements, .. } if *elements == overlap),
        ) {
            Some(OutcomeWitness::Subset { extensions, .. }) => extensions.push(w.clone()),
            _ => witnesses.push(OutcomeWitness::Subset {
                elements: overlap,
                extensions: vec![w.clone()],
            }),
        }
    }
    Ok(RuleOutcome::new(winners)
        .with_score(best)
        .with_witnesses(witnesses))
}

/// MED: maximize the summed support of the selected elements.
pub fn rule_med(p: &Profile) -> Result<RuleOutcome> {
    let agenda = p.agenda();
    let table = p.support_table();
    let (winners, best) = argmax_by_value(agenda, |j| {
        let mut total = 0u64;
        for (i, &(plus, minus)) in table.iter().enumerate() {
            total += match j.sign(i) {
                Some(Sign::Plus) => plus as u64,
                Some(Sign::Minus) => minus as u64,
                None => unreachable!("rational sets are complete"),
            };
        }
        Ok(int(total))
    })?;
    Ok(RuleOutcome::new(winners).with_score(best))
}

/// `F^{d_H,Σ}`: minimize the summed Hamming distance to the voters. Kept as
/// an independent code path from [`rule_med`] so their equivalence can be
/// tested.
pub fn rule_dist_sum_hamming(p: &Profile) -> Result<RuleOutcome> {
    rule_dist_agg(p, &DistanceSpec::Hamming, AggregatorKind::Sum)
}

fn ra_levels(p: &Profile) -> Vec<Vec<(usize, Sign)>> {
    let table = p.support_table();
    let mut by_count: BTreeMap<usize, Vec<(usize, Sign)>> = BTreeMap::new();
    for (i, &(plus, minus)) in table.iter().enumerate() {
        by_count.entry(plus).or_default().push((i, Sign::Plus));
        by_count.entry(minus).or_default().push((i, Sign::Minus));
    }
    by_count.into_values().rev().collect()
}

fn ra_dominates(levels: &[Vec<(usize, Sign)>], a: &JudgmentSet, b: &JudgmentSet) -> bool {
    // a >_RA b iff at some support level the sets agree on every element
    // above it and a's slice of the level strictly contains b's.
    for (depth, group) in levels.iter().enumerate() {
        let above_agree = levels[..depth]
            .iter()
            .flatten()
            .all(|&(i, sign)| (a.sign(i) == Some(sign)) == (b.sign(i) == Some(sign)));
        if !above_agree {
            return false;
        }
        let b_in_a = group
            .iter()
            .all(|&(i, s)| a.sign(i) == Some(s) || b.sign(i) != Some(s));
        let strict = group
            .iter()
            .any(|&(i, s)| a.sign(i) == Some(s) && b.sign(i) != Some(s));
        if b_in_a && strict {
            return true;
        }
    }
    false
}

/// RA: the rational sets undominated in the ranked-agenda order.
pub fn rule_ra(p: &Profile) -> Result<RuleOutcome> {
    let agenda = p.agenda();
    let levels = ra_levels(p);
    let sets = agenda.rational_sets();
    let winners: Vec<JudgmentSet> = sets
        .iter()
        .filter(|a| !sets.iter().any(|b| ra_dominates(&levels, b, a)))
        .cloned()
        .collect();
    Ok(RuleOutcome::new(winners))
}

/// The procedural characterization of RA: fix agenda elements greedily along
/// every support-compatible permutation. Tie groups larger than
/// [`TIE_GROUP_BOUND`] are refused; this is the oracle counterpart of
/// [`rule_ra`].
pub fn rule_ra_permutation(p: &Profile) -> Result<RuleOutcome> {
    let agenda = p.agenda();
    let levels = ra_levels(p);
    for group in &levels {
        if group.len() > TIE_GROUP_BOUND {
            return Err(Error::TieGroup {
                size: group.len(),
                bound: TIE_GROUP_BOUND,
            });
        }
    }
    let mut winners: Vec<JudgmentSet> = Vec::new();
    let mut order: Vec<(usize, Sign)> = Vec::new();
    build_permutations(agenda, &levels, 0, &mut order, &mut winners)?;
    Ok(RuleOutcome::new(winners))
}

fn build_permutations(
    agenda: &Agenda,
    levels: &[Vec<(usize, Sign)>],
    depth: usize,
    order: &mut Vec<(usize, Sign)>,
    winners: &mut Vec<JudgmentSet>,
) -> Result<()> {
    if depth == levels.len() {
        let mut partial = JudgmentSet::undecided(agenda.issue_count());
        for &(i, sign) in order.iter() {
            if partial.sign(i).is_some() {
                continue;
            }
            let mut attempt = partial.clone();
            attempt.set_sign(i, Some(sign));
            if agenda.is_consistent(&attempt)? {
                partial = attempt;
            }
        }
        debug_assert!(partial.is_complete());
        winners.push(partial);
        return Ok(());
    }
    let mut group = levels[depth].clone();
    permute(&mut group, 0, &mut |perm| {
        let keep = order.len();
        order.extend_from_slice(perm);
        let r = build_permutations(agenda, levels, depth + 1, order, winners);
        order.truncate(keep);
        r
    })
}

fn permute<T: Clone>(
    items: &mut [T],
    k: usize,
    visit: &mut impl FnMut(&[T]) -> Result<()>,
) -> Result<()> {
    if k == items.len() {
        return visit(items);
    }
    for i in k..items.len() {
        items.swap(k, i);
        permute(items, k + 1, visit)?;
        items.swap(k, i);
    }
    Ok(())
}

/// leximax: lexicographic comparison of the per-level acceptance counts
/// `s_k(J, P)` for k from n down to ⌈n/2⌉.
pub fn rule_leximax(p: &Profile) -> Result<RuleOutcome> {
    let agenda = p.agenda();
    let n = p.voter_count();
    let table = p.support_table();
    let k_min = n.div_ceil(2);
    let mut levels: Vec<Vec<(usize, Sign)>> = Vec::new();
    for k in (k_min..=n).rev() {
        let mut group = Vec::new();
        for (i, &(plus, minus)) in table.iter().enumerate() {
            if plus == k {
                group.push((i, Sign::Plus));
            }
            if minus == k {
                group.push((i, Sign::Minus));
            }
        }
        levels.push(group);
    }
    let score = |j: &JudgmentSet| -> Vec<usize> {
        levels
            .iter()
            .map(|group| {
                group
                    .iter()
                    .filter(|&&(i, sign)| j.sign(i) == Some(sign))
                    .count()
            })
            .collect()
    };
    let mut best: Option<Vec<usize>> = None;
    let mut winners: Vec<JudgmentSet> = Vec::new();
    for j in agenda.rational_sets() {
        let s = score(j);
        match &best {
            Some(b) if s < *b => {}
            Some(b) if s == *b => winners.push(j.clone()),
            _ => {
                best = Some(s);
                winners = vec![j.clone()];
            }
        }
    }
    Ok(RuleOutcome::new(winners))
}

/// Y: extensions of the majoritarian sets of the maximum-cardinality
/// majority-consistent subprofiles.
pub fn rule_young(p: &Profile) -> Result<RuleOutcome> {
    let agenda = p.agenda();
    let n = p.voter_count();
    // Group identical voters; removals are counted per group.
    let mut groups: Vec<(JudgmentSet, Vec<usize>)> = Vec::new();
    for (idx, v) in p.voters().iter().enumerate() {
        match groups.iter_mut().find(|(s, _)| s == v) {
            Some((_, members)) => members.push(idx),
            None => groups.push((v.clone(), vec![idx])),
        }
    }
    let group_plus: Vec<Vec<bool>> = groups
        .iter()
        .map(|(s, _)| {
            (0..agenda.issue_count())
                .map(|i| s.sign(i) == Some(Sign::Plus))
                .collect()
        })
        .collect();

    for removed in 0..n {
        let remaining = n - removed;
        let mut winners: Vec<JudgmentSet> = Vec::new();
        let mut witnesses: Vec<OutcomeWitness> = Vec::new();
        let mut removal = vec![0usize; groups.len()];
        enumerate_removals(&groups, removed, 0, &mut removal, &mut |removal| {
            let mut majority = JudgmentSet::undecided(agenda.issue_count());
            for i in 0..agenda.issue_count() {
                let plus: usize = groups
                    .iter()
                    .zip(removal)
                    .enumerate()
                    .map(|(g, ((_, members), &r))| {
                        if group_plus[g][i] {
                            members.len() - r
                        } else {
                            0
                        }
                    })
                    .sum();
                let minus = remaining - plus;
                majority.set_sign(
                    i,
                    if 2 * plus > remaining {
                        Some(Sign::Plus)
                    } else if 2 * minus > remaining {
                        Some(Sign::Minus)
                    } else {
                        None
                    },
                );
            }
            if agenda.is_consistent(&majority)? {
                winners.extend(agenda.extensions(&majority)?);
                let mut removed_voters = Vec::new();
                for ((_, members), &r) in groups.iter().zip(removal) {
                    removed_voters.extend_from_slice(&members[..r]);
                }
                removed_voters.sort_unstable();
                witnesses.push(OutcomeWitness::Removal {
                    removed_voters,
                    majority,
                });
            }
            Ok(())
        })?;
        if !winners.is_empty() {
            return Ok(RuleOutcome::new(winners)
                .with_score(int(removed as u64))
                .with_witnesses(witnesses));
        }
    }
    unreachable!("a single remaining voter is always majority-consistent");
}

fn enumerate_removals(
    groups: &[(JudgmentSet, Vec<usize>)],
    left: usize,
    depth: usize,
    removal: &mut Vec<usize>,
    visit: &mut impl FnMut(&Vec<usize>) -> Result<()>,
) -> Result<()> {
    if depth == groups.len() {
        if left == 0 {
            visit(removal)?;
        }
        return Ok(());
    }
    let cap = groups[depth].1.len().min(left);
    for take in 0..=cap {
        removal[depth] = take;
        enumerate_removals(groups, left - take, depth + 1, removal, visit)?;
    }
    removal[depth] = 0;
    Ok(())
}

/// MPC with the default reversal budget.
pub fn rule_mpc(p: &Profile) -> Result<RuleOutcome> {
    rule_mpc_with_budget(p, DEFAULT_MPC_BUDGET)
}

/// MPC: among all profiles of rational sets with a consistent majoritarian
/// set, find those at minimal total Hamming distance from `p`; the outcome
/// unions the extensions of their majoritarian sets.
///
/// Search: iterative deepening on the distance budget. Voters are grouped by
/// identical judgment sets, each group drawing replacements from a menu
/// sorted by distance; partial assignments are pruned when no rational
/// target's majority deficit is repairable within the remaining budget.
pub fn rule_mpc_with_budget(p: &Profile, budget: u64) -> Result<RuleOutcome> {
    let agenda = p.agenda();
    let rational = agenda.rational_sets();
    let m = agenda.issue_count();
    let n = p.voter_count();

    let mut groups: Vec<(JudgmentSet, usize)> = Vec::new();
    for v in p.voters() {
        match groups.iter_mut().find(|(s, _)| s == v) {
            Some((_, count)) => *count += 1,
            None => groups.push((v.clone(), 1)),
        }
    }
    let menus: Vec<Vec<(usize, u64)>> = groups
        .iter()
        .map(|(s, _)| {
            let mut menu: Vec<(usize, u64)> = rational
                .iter()
                .enumerate()
                .map(|(ri, r)| (ri, s.disagreements(r) as u64))
                .collect();
            menu.sort_by_key(|&(ri, c)| (c, ri));
            menu
        })
        .collect();
    let rational_plus: Vec<Vec<bool>> = rational
        .iter()
        .map(|r| (0..m).map(|i| r.sign(i) == Some(Sign::Plus)).collect())
        .collect();

    // default_plus[g][i]: accepted count of issue i over the original sets
    // of all voters in groups g.. (suffix sums).
    let mut default_plus = vec![vec![0usize; m]; groups.len() + 1];
    for g in (0..groups.len()).rev() {
        for i in 0..m {
            let own = if groups[g].0.sign(i) == Some(Sign::Plus) {
                groups[g].1
            } else {
                0
            };
            default_plus[g][i] = default_plus[g + 1][i] + own;
        }
    }

    let mut search = MpcSearch {
        agenda,
        rational_plus: &rational_plus,
        menus: &menus,
        group_sizes: groups.iter().map(|(_, c)| *c).collect(),
        n,
        cap: n / 2,
        budget: 0,
        plus: vec![0; m],
        default_plus,
        chosen: groups.iter().map(|(_, c)| Vec::with_capacity(*c)).collect(),
        solutions: BTreeMap::new(),
    };

    let start = search.lower_bound(0, 0).unwrap_or(0);
    for b in start..=budget {
        search.budget = b;
        search.descend(0, 0, 0, 0)?;
        if !search.solutions.is_empty() {
            let solutions = std::mem::take(&mut search.solutions);
            let mut winners = Vec::new();
            let mut witnesses = Vec::new();
            for (majority, (cost, assignment)) in &solutions {
                winners.extend(agenda.extensions(majority)?);
                debug_assert_eq!(*cost, b);
                let mut repaired = Vec::new();
                for (g, picks) in assignment.iter().enumerate() {
                    debug_assert_eq!(picks.len(), groups[g].1);
                    repaired.extend(picks.iter().map(|&ri| rational[ri].clone()));
                }
                witnesses.push(OutcomeWitness::Repair {
                    repaired,
                    distance: *cost,
                    majority: majority.clone(),
                });
            }
            return Ok(RuleOutcome::new(winners)
                .with_score(int(b))
                .with_witnesses(witnesses));
        }
    }
    Err(Error::RepairBudget { budget })
}

struct MpcSearch<'a> {
    agenda: &'a Agenda,
    rational_plus: &'a [Vec<bool>],
    menus: &'a [Vec<(usize, u64)>],
    group_sizes: Vec<usize>,
    n: usize,
    cap: usize,
    budget: u64,
    /// Accepted counts per issue over the committed (already replaced)
    /// voters.
    plus: Vec<usize>,
    /// `default_plus[g][i]`: accepted count of issue `i` over the original
    /// sets of all voters in groups `g..`.
    default_plus: Vec<Vec<usize>>,
    /// Rational indices chosen so far, per group (nondecreasing menu order
    /// within a group, so each multiset is enumerated once).
    chosen: Vec<Vec<usize>>,
    /// Majoritarian set of each repaired profile found at the current
    /// budget, with its cost and per-group assignment.
    solutions: BTreeMap<JudgmentSet, (u64, Vec<Vec<usize>>)>,
}

impl MpcSearch<'_> {
    /// Admissible lower bound on the further cost needed so that some
    /// rational target's per-issue majority deficits can all be repaired;
    /// `None` when no target is reachable at all.
    fn lower_bound(&self, group: usize, within: usize) -> Option<u64> {
        let m = self.plus.len();
        let assigned: usize = self.group_sizes[..group].iter().sum::<usize>() + within;
        let mut best: Option<u64> = None;
        'targets: for target in self.rational_plus {
            let mut need = 0u64;
            for i in 0..m {
                let mut default_plus = self.default_plus[group][i];
                if within > 0 && self.group_accepts(group, i) {
                    default_plus -= within;
                }
                let committed_dev = if target[i] {
                    assigned - self.plus[i]
                } else {
                    self.plus[i]
                };
                let default_dev = if target[i] {
                    (self.n - assigned) - default_plus
                } else {
                    default_plus
                };
                if committed_dev > self.cap {
                    continue 'targets;
                }
                let over = (committed_dev + default_dev).saturating_sub(self.cap);
                if over > default_dev {
                    continue 'targets;
                }
                need += over as u64;
            }
            best = Some(best.map_or(need, |b: u64| b.min(need)));
            if best == Some(0) {
                break;
            }
        }
        best
    }

    fn group_accepts(&self, group: usize, issue: usize) -> bool {
        self.default_plus[group][issue] > self.default_plus[group + 1][issue]
    }

    fn descend(&mut self, group: usize, within: usize, menu_from: usize, spent: u64) -> Result<()> {
        if group == self.menus.len() {
            self.record(spent)?;
            return Ok(());
        }
        if within == self.group_sizes[group] {
            return self.descend(group + 1, 0, 0, spent);
        }
        let menu = &self.menus[group];
        for idx in menu_from..menu.len() {
            let (ri, cost) = menu[idx];
            if spent + cost > self.budget {
                break; // menu is sorted by cost
            }
            for i in 0..self.plus.len() {
                if self.rational_plus[ri][i] {
                    self.plus[i] += 1;
                }
            }
            self.chosen[group].push(ri);
            let next_within = within + 1;
            let (ng, nw, nf) = if next_within == self.group_sizes[group] {
                (group + 1, 0, 0)
            } else {
                (group, next_within, idx)
            };
            let feasible = match self.lower_bound(ng, nw) {
                Some(lb) => spent + cost + lb <= self.budget,
                None => false,
            };
            if feasible {
                self.descend(ng, nw, nf, spent + cost)?;
            }
            self.chosen[group].pop();
            for i in 0..self.plus.len() {
                if self.rational_plus[ri][i] {
                    self.plus[i] -= 1;
                }
            }
        }
        Ok(())
    }

    fn record(&mut self, cost: u64) -> Result<()> {
        if cost != self.budget {
            // Cheaper repairs were exhausted at earlier deepening stages.
            return Ok(());
        }
        let m = self.plus.len();
        let mut majority = JudgmentSet::undecided(m);
        for (i, &plus) in self.plus.iter().enumerate() {
            let minus = self.n - plus;
            majority.set_sign(
                i,
                if 2 * plus > self.n {
                    Some(Sign::Plus)
                } else if 2 * minus > self.n {
                    Some(Sign::Minus)
                } else {
                    None
                },
            );
        }
        if !self.agenda.is_consistent(&majority)? {
            return Ok(());
        }
        self.solutions
            .entry(majority)
            .or_insert_with(|| (cost, self.chosen.clone()));
        Ok(())
    }
}

/// The distance component of `F^{d,⋆}`.
#[derive(Debug, Clone)]
pub enum DistanceSpec {
    Hamming,
    Geodesic,
    Custom(DistanceTable),
}

/// The aggregation component of `F^{d,⋆}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum AggregatorKind {
    Sum,
    Max,
}

/// An explicit pseudo-distance over the rational sets of one agenda,
/// validated to be symmetric, nonnegative, and zero exactly on the diagonal.
#[derive(Debug, Clone)]
pub struct DistanceTable {
    size: usize,
    values: Vec<Value>,
}

impl DistanceTable {
    pub fn from_fn(
        agenda: &Agenda,
        mut d: impl FnMut(&JudgmentSet, &JudgmentSet) -> Value,
    ) -> Result<DistanceTable> {
        let sets = agenda.rational_sets();
        let size = sets.len();
        let mut values = vec![Value::zero(); size * size];
        for (i, a) in sets.iter().enumerate() {
            for (j, b) in sets.iter().enumerate() {
                values[i * size + j] = d(a, b);
            }
        }
        let table = DistanceTable { size, values };
        table.validate()?;
        Ok(table)
    }

    fn validate(&self) -> Result<()> {
        for i in 0..self.size {
            for j in 0..self.size {
                let v = self.get(i, j);
                if v < Value::zero() {
                    return Err(Error::InvalidDistance(format!(
                        "negative distance at ({i}, {j})"
                    )));
                }
                if v != self.get(j, i) {
                    return Err(Error::InvalidDistance(format!("asymmetric at ({i}, {j})")));
                }
                if (i == j) != v.is_zero() {
                    return Err(Error::InvalidDistance(format!(
                        "zero exactly on the diagonal violated at ({i}, {j})"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn get(&self, i: usize, j: usize) -> Value {
        self.values[i * self.size + j]
    }
}

/// `F^{d,⋆}`: minimize the aggregated voter distances over the rational
/// sets.
pub fn rule_dist_agg(
    p: &Profile,
    distance: &DistanceSpec,
    aggregator: AggregatorKind,
) -> Result<RuleOutcome> {
    let agenda = p.agenda();
    if let DistanceSpec::Custom(table) = distance {
        if table.size != agenda.rational_sets().len() {
            return Err(Error::InvalidDistance(
                "table size does not match the agenda's rational sets".into(),
            ));
        }
    }
    let voter_indices: Vec<usize> = p
        .voters()
        .iter()
        .map(|v| agenda.rational_index(v).expect("voters are rational"))
        .collect();
    let sets = agenda.rational_sets();
    let mut best: Option<Value> = None;
    let mut winners = Vec::new();
    for (ji, j) in sets.iter().enumerate() {
        let mut agg = Value::zero();
        for vi in 0..p.voter_count() {
            let d = match distance {
                DistanceSpec::Hamming => int(p.voters()[vi].disagreements(j) as u64),
                DistanceSpec::Geodesic => int(u64::from(profile::geodesic_distance_by_index(
                    agenda,
                    voter_indices[vi],
                    ji,
                )?)),
                DistanceSpec::Custom(table) => table.get(voter_indices[vi], ji),
            };
            agg = match aggregator {
                AggregatorKind::Sum => agg + d,
                AggregatorKind::Max => agg.max(d),
            };
        }
        match &best {
            Some(b) if agg > *b => {}
            Some(b) if agg == *b => winners.push(j.clone()),
            _ => {
                best = Some(agg);
                winners = vec![j.clone()];
            }
        }
    }
    Ok(RuleOutcome::new(winners).with_score(best.expect("nonempty rational sets")))
}

/// rev(J, φ): minimal Hamming distance from `J` to a rational set that does
/// not contain the element `(issue, sign)`.
pub fn reversal_score(agenda: &Agenda, j: &JudgmentSet, issue: usize, sign: Sign) -> Result<u64> {
    if issue >= agenda.issue_count() {
        return Err(Error::IssueOutOfRange {
            index: issue,
            issues: agenda.issue_count(),
        });
    }
    if !agenda.is_rational(j) {
        return Err(Error::NotRational);
    }
    agenda
        .rational_sets()
        .iter()
        .filter(|r| r.sign(issue) == Some(sign.flip()))
        .map(|r| j.disagreements(r) as u64)
        .min()
        .ok_or(Error::NoRejectingSet)
}

/// The score component of a scoring rule.
#[derive(Debug, Clone)]
pub enum ScoringSpec {
    /// The reversal score.
    Reversal,
    /// s(J, φ) = 1 iff φ ∈ J; reproduces MED.
    Simple,
    /// Explicit nonnegative table over rational sets × agenda elements.
    Custom(ScoreTable),
}

/// An explicit score table `s(J, φ)` for the rational sets of one agenda.
#[derive(Debug, Clone)]
pub struct ScoreTable {
    issues: usize,
    values: Vec<Value>,
}

impl ScoreTable {
    pub fn from_fn(
        agenda: &Agenda,
        mut s: impl FnMut(&JudgmentSet, usize, Sign) -> Value,
    ) -> Result<ScoreTable> {
        let sets = agenda.rational_sets();
        let issues = agenda.issue_count();
        let mut values = Vec::with_capacity(sets.len() * issues * 2);
        for j in sets {
            for i in 0..issues {
                for sign in [Sign::Plus, Sign::Minus] {
                    let v = s(j, i, sign);
                    if v < Value::zero() {
                        return Err(Error::InvalidScore(format!(
                            "negative score for set `{j}`, issue {i}, sign {sign}"
                        )));
                    }
                    values.push(v);
                }
            }
        }
        Ok(ScoreTable { issues, values })
    }

    fn get(&self, set_index: usize, issue: usize, sign: Sign) -> Value {
        let offset = (set_index * self.issues + issue) * 2 + usize::from(sign == Sign::Minus);
        self.values[offset]
    }
}

/// Per-element totals `Σ_i s(J_i, φ)` for every agenda element.
fn element_weights(p: &Profile, spec: &ScoringSpec) -> Result<Vec<[Value; 2]>> {
    let agenda = p.agenda();
    let m = agenda.issue_count();
    let mut weights = vec![[Value::zero(); 2]; m];
    for voter in p.voters() {
        let vi = agenda.rational_index(voter).expect("voters are rational");
        for (i, w) in weights.iter_mut().enumerate() {
            for (k, sign) in [Sign::Plus, Sign::Minus].into_iter().enumerate() {
                let s = match spec {
                    ScoringSpec::Reversal => int(reversal_score(agenda, voter, i, sign)?),
                    ScoringSpec::Simple => {
                        if voter.sign(i) == Some(sign) {
                            Value::from_integer(1)
                        } else {
                            Value::zero()
                        }
                    }
                    ScoringSpec::Custom(table) => table.get(vi, i, sign),
                };
                w[k] += s;
            }
        }
    }
    Ok(weights)
}

/// Total score of one rational set under a scoring rule.
pub fn scoring_total(p: &Profile, spec: &ScoringSpec, j: &JudgmentSet) -> Result<Value> {
    let weights = element_weights(p, spec)?;
    let mut total = Value::zero();
    for (i, w) in weights.iter().enumerate() {
        total += match j.sign(i) {
            Some(Sign::Plus) => w[0],
            Some(Sign::Minus) => w[1],
            None => return Err(Error::IncompleteJudgmentSet),
        };
    }
    Ok(total)
}

/// `F_s`: maximize the summed element scores over the rational sets.
pub fn rule_scoring(p: &Profile, spec: &ScoringSpec) -> Result<RuleOutcome> {
    let agenda = p.agenda();
    let weights = element_weights(p, spec)?;
    let (winners, best) = argmax_by_value(agenda, |j| {
        let mut total = Value::zero();
        for (i, w) in weights.iter().enumerate() {
            total += match j.sign(i) {
                Some(Sign::Plus) => w[0],
                Some(Sign::Minus) => w[1],
                None => unreachable!("rational sets are complete"),
            };
        }
        Ok(total)
    })?;
    Ok(RuleOutcome::new(winners).with_score(best))
}

/// Named distance kinds available through rule identifiers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum DistanceKind {
    Hamming,
    Geodesic,
}

/// Named score kinds available through rule identifiers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum ScoreKind {
    Reversal,
    Simple,
}

/// A rule identifier, as used by the CLI and the axiom suites.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum RuleId {
    Mc,
    Mcc,
    Med,
    Ra,
    Leximax,
    Young,
    Mpc,
    Dist(DistanceKind, AggregatorKind),
    Scoring(ScoreKind),
}

impl RuleId {
    /// The ten rules of the catalog, in presentation order.
    pub const CATALOG: [RuleId; 10] = [
        RuleId::Mc,
        RuleId::Mcc,
        RuleId::Med,
        RuleId::Ra,
        RuleId::Leximax,
        RuleId::Young,
        RuleId::Mpc,
        RuleId::Dist(DistanceKind::Hamming, AggregatorKind::Max),
        RuleId::Dist(DistanceKind::Geodesic, AggregatorKind::Sum),
        RuleId::Scoring(ScoreKind::Reversal),
    ];

    /// The rules that return exactly ext(m(P)) on majority-consistent
    /// profiles.
    pub const MAJORITY_PRESERVING: [RuleId; 7] = [
        RuleId::Mc,
        RuleId::Mcc,
        RuleId::Med,
        RuleId::Ra,
        RuleId::Leximax,
        RuleId::Young,
        RuleId::Mpc,
    ];
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            RuleId::Mc => "mc",
            RuleId::Mcc => "mcc",
            RuleId::Med => "med",
            RuleId::Ra => "ra",
            RuleId::Leximax => "leximax",
            RuleId::Young => "young",
            RuleId::Mpc => "mpc",
            RuleId::Dist(DistanceKind::Hamming, AggregatorKind::Max) => "dmax-hamming",
            RuleId::Dist(DistanceKind::Geodesic, AggregatorKind::Sum) => "dsum-geodesic",
            RuleId::Dist(DistanceKind::Hamming, AggregatorKind::Sum) => "dist:hamming:sum",
            RuleId::Dist(DistanceKind::Geodesic, AggregatorKind::Max) => "dist:geodesic:max",
            RuleId::Scoring(ScoreKind::Reversal) => "frev",
            RuleId::Scoring(ScoreKind::Simple) => "score:simple",
        };
        write!(f, "{s}")
    }
}

impl Serialize for RuleId {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        ser.collect_str(self)
    }
}

impl FromStr for RuleId {
    type Err = Error;

    fn from_str(s: &str) -> Result<RuleId> {
        Ok(match s {
            "mc" => RuleId::Mc,
            "mcc" => RuleId::Mcc,
            "med" => RuleId::Med,
            "ra" => RuleId::Ra,
            "leximax" => RuleId::Leximax,
            "young" => RuleId::Young,
            "mpc" => RuleId::Mpc,
            "dmax-hamming" => RuleId::Dist(DistanceKind::Hamming, AggregatorKind::Max),
            "dsum-geodesic" => RuleId::Dist(DistanceKind::Geodesic, AggregatorKind::Sum),
            "frev" | "score:rev" => RuleId::Scoring(ScoreKind::Reversal),
            "score:simple" => RuleId::Scoring(ScoreKind::Simple),
            other => {
                if let Some(rest) = other.strip_prefix("dist:") {
                    let (d, agg) = rest
                        .split_once(':')
                        .ok_or_else(|| Error::UnknownRule(other.into()))?;
                    let distance = match d {
                        "hamming" => DistanceKind::Hamming,
                        "geodesic" => DistanceKind::Geodesic,
                        _ => return Err(Error::UnknownRule(other.into())),
                    };
                    let aggregator = match agg {
                        "sum" => AggregatorKind::Sum,
                        "max" => AggregatorKind::Max,
                        _ => return Err(Error::UnknownRule(other.into())),
                    };
                    RuleId::Dist(distance, aggregator)
                } else {
                    return Err(Error::UnknownRule(other.into()));
                }
            }
        })
    }
}

/// Evaluation knobs for rules with search budgets.
#[derive(Debug, Clone, Copy)]
pub struct EvalOptions {
    pub mpc_budget: u64,
}

impl Default for EvalOptions {
    fn default() -> Self {
        EvalOptions {
            mpc_budget: DEFAULT_MPC_BUDGET,
        }
    }
}

pub fn evaluate(rule: RuleId, p: &Profile) -> Result<RuleOutcome> {
    evaluate_with(rule, p, &EvalOptions::default())
}

pub fn evaluate_with(rule: RuleId, p: &Profile, opts: &EvalOptions) -> Result<RuleOutcome> {
    match rule {
        RuleId::Mc => rule_mc(p),
        RuleId::Mcc => rule_mcc(p),
        RuleId::Med => rule_med(p),
        RuleId::Ra => rule_ra(p),
        RuleId::Leximax => rule_leximax(p),
        RuleId::Young => rule_young(p),
        RuleId::Mpc => rule_mpc_with_budget(p, opts.mpc_budget),
        RuleId::Dist(kind, agg) => {
            let spec = match kind {
                DistanceKind::Hamming => DistanceSpec::Hamming,
                DistanceKind::Geodesic => DistanceSpec::Geodesic,
            };
            rule_dist_agg(p, &spec, agg)
        }
        RuleId::Scoring(kind) => {
            let spec = match kind {
                ScoreKind::Reversal => ScoringSpec::Reversal,
                ScoreKind::Simple => ScoringSpec::Simple,
            };
            rule_scoring(p, &spec)
        }
    }
}

/// ext(m(P)) for a majority-consistent profile; what every
/// majority-preserving rule must return there.
pub fn majority_extensions(p: &Profile) -> Result<Vec<JudgmentSet>> {
    let mut out = p.agenda().extensions(&p.majoritarian_set())?;
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::agenda::parse_agenda;
    use crate::profile::parse_profile_rows;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn js(text: &str) -> JudgmentSet {
        JudgmentSet::parse(text).unwrap()
    }

    fn running_profile() -> Profile {
        let agenda = parse_agenda("constraint: T\np & r\np & s\nq\np & q\nt\n").unwrap();
        parse_profile_rows(agenda, "+ + + + + x6\n+ + - - + x4\n- - + - - x7\n").unwrap()
    }

    #[test]
    fn mc_on_the_running_profile() {
        let out = rule_mc(&running_profile()).unwrap();
        assert_eq!(out.winners, vec![js("+++++"), js("++--+"), js("--+-+")]);
        assert_eq!(out.witnesses.len(), 3);
    }

    #[test]
    fn mcc_on_the_running_profile() {
        let out = rule_mcc(&running_profile()).unwrap();
        assert_eq!(out.winners, vec![js("+++++"), js("++--+")]);
        assert_eq!(out.score, Some(int(4)));
    }

    #[test]
    fn mcc_witnesses_match_the_maxcard_subsets() {
        let p = running_profile();
        let out = rule_mcc(&p).unwrap();
        let mut got: Vec<ElementSet> = out
            .witnesses
            .iter()
            .map(|w| match w {
                OutcomeWitness::Subset { elements, .. } => elements.clone(),
                other => panic!("unexpected witness {other:?}"),
            })
            .collect();
        got.sort();
        let majority = ElementSet::from_judgment_set(&p.majoritarian_set());
        let expected = p.agenda().maxcard_consistent_subsets(&majority).unwrap();
        assert_eq!(got, expected);
    }

    #[test]
    fn med_reaches_49_on_the_running_profile() {
        let out = rule_med(&running_profile()).unwrap();
        assert_eq!(out.winners, vec![js("+++++")]);
        assert_eq!(out.score, Some(int(49)));
    }

    #[test]
    fn ra_on_the_running_profile() {
        let out = rule_ra(&running_profile()).unwrap();
        assert_eq!(out.winners, vec![js("--+-+")]);
        let oracle = rule_ra_permutation(&running_profile()).unwrap();
        assert_eq!(out.winners, oracle.winners);
    }

    #[test]
    fn leximax_on_the_running_profile() {
        let out = rule_leximax(&running_profile()).unwrap();
        assert_eq!(out.winners, vec![js("--+-+")]);
    }

    #[test]
    fn young_removes_three_voters_on_the_running_profile() {
        let out = rule_young(&running_profile()).unwrap();
        assert_eq!(out.winners, vec![js("--+-+"), js("--+--")]);
        assert_eq!(out.score, Some(int(3)));
        for w in &out.witnesses {
            match w {
                OutcomeWitness::Removal { removed_voters, .. } => {
                    assert_eq!(removed_voters.len(), 3)
                }
                other => panic!("unexpected witness {other:?}"),
            }
        }
    }

    #[test]
    fn mpc_repairs_the_running_profile_at_distance_three() {
        let p = running_profile();
        let out = rule_mpc(&p).unwrap();
        assert_eq!(out.winners, vec![js("+++++")]);
        assert_eq!(out.score, Some(int(3)));
        match &out.witnesses[0] {
            OutcomeWitness::Repair {
                repaired,
                distance,
                majority,
            } => {
                assert_eq!(*distance, 3);
                assert_eq!(majority, &js("+++++"));
                let q = Profile::new(p.agenda_arc().clone(), repaired.clone()).unwrap();
                assert!(q.is_majority_consistent());
                assert_eq!(profile::hamming_profiles(&p, &q).unwrap(), 3);
            }
            other => panic!("unexpected witness {other:?}"),
        }
    }

    #[test]
    fn mpc_budget_ceiling_is_reported() {
        let p = running_profile();
        assert!(matches!(
            rule_mpc_with_budget(&p, 2),
            Err(Error::RepairBudget { budget: 2 })
        ));
    }

    #[test]
    fn majority_consistent_profiles_are_fixed_points_of_preserving_rules() {
        let agenda = parse_agenda("constraint: q -> r\np & r\nq\np & q\n").unwrap();
        let p = parse_profile_rows(agenda, "- + -\n- + -\n+ - -\n").unwrap();
        assert!(p.is_majority_consistent());
        let expected = majority_extensions(&p).unwrap();
        for rule in RuleId::MAJORITY_PRESERVING {
            let out = evaluate(rule, &p).unwrap();
            assert_eq!(out.winners, expected, "{rule}");
        }
    }

    #[test]
    fn single_voter_profile_wins_itself() {
        let agenda = parse_agenda("constraint: q -> r\np & r\nq\np & q\n").unwrap();
        let p = parse_profile_rows(agenda, "+ - -\n").unwrap();
        for rule in RuleId::CATALOG {
            let out = evaluate(rule, &p).unwrap();
            assert_eq!(out.winners, vec![js("+--")], "{rule}");
        }
    }

    #[test]
    fn med_equals_sum_hamming_on_random_profiles() {
        let agenda = parse_agenda("constraint: T\np\nq\np -> q\n").unwrap();
        let sets = agenda.rational_sets().to_vec();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let n = rng.gen_range(1..=7);
            let voters: Vec<JudgmentSet> = (0..n)
                .map(|_| sets[rng.gen_range(0..sets.len())].clone())
                .collect();
            let p = Profile::new(agenda.clone(), voters).unwrap();
            let med = rule_med(&p).unwrap();
            let dist = rule_dist_sum_hamming(&p).unwrap();
            assert_eq!(med.winners, dist.winners);
        }
    }

    #[test]
    fn ra_dominance_matches_permutation_oracle_on_random_profiles() {
        let agenda = parse_agenda("constraint: T\np\nq\np & q\n").unwrap();
        let sets = agenda.rational_sets().to_vec();
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..100 {
            let n = rng.gen_range(1..=5);
            let voters: Vec<JudgmentSet> = (0..n)
                .map(|_| sets[rng.gen_range(0..sets.len())].clone())
                .collect();
            let p = Profile::new(agenda.clone(), voters).unwrap();
            let fast = rule_ra(&p).unwrap();
            let slow = rule_ra_permutation(&p).unwrap();
            assert_eq!(fast.winners, slow.winners);
        }
    }

    #[test]
    fn inclusion_chain_on_random_profiles() {
        let agenda = parse_agenda("constraint: T\np\nq\np & q\n").unwrap();
        let sets = agenda.rational_sets().to_vec();
        let mut rng = ChaCha8Rng::seed_from_u64(37);
        for _ in 0..150 {
            let n = rng.gen_range(1..=6);
            let voters: Vec<JudgmentSet> = (0..n)
                .map(|_| sets[rng.gen_range(0..sets.len())].clone())
                .collect();
            let p = Profile::new(agenda.clone(), voters).unwrap();
            let mc = rule_mc(&p).unwrap();
            let mcc = rule_mcc(&p).unwrap();
            let med = rule_med(&p).unwrap();
            let ra = rule_ra(&p).unwrap();
            let leximax = rule_leximax(&p).unwrap();
            assert!(mcc.is_subset_of(&mc));
            assert!(med.is_subset_of(&mc));
            assert!(ra.is_subset_of(&mc));
            assert!(leximax.is_subset_of(&ra));
        }
    }

    #[test]
    fn every_winner_is_rational_and_outcomes_nonempty() {
        let p = running_profile();
        for rule in RuleId::CATALOG {
            let out = evaluate(rule, &p).unwrap();
            assert!(!out.winners.is_empty());
            for w in &out.winners {
                assert!(p.agenda().is_rational(w), "{rule}: {w}");
            }
        }
    }

    #[test]
    fn simple_scoring_reproduces_med() {
        let p = running_profile();
        let med = rule_med(&p).unwrap();
        let simple = rule_scoring(&p, &ScoringSpec::Simple).unwrap();
        assert_eq!(med.winners, simple.winners);
        assert_eq!(med.score, simple.score);
    }

    #[test]
    fn reversal_score_is_zero_for_rejected_elements() {
        let agenda = parse_agenda("constraint: T\np\nq\n").unwrap();
        // rev(J, φ) = 0 whenever φ ∉ J: J itself is a witness.
        let j = js("+-");
        assert_eq!(reversal_score(&agenda, &j, 0, Sign::Minus).unwrap(), 0);
        assert_eq!(reversal_score(&agenda, &j, 1, Sign::Plus).unwrap(), 0);
        // Held elements cost at least one flip.
        assert_eq!(reversal_score(&agenda, &j, 0, Sign::Plus).unwrap(), 1);
    }

    #[test]
    fn reversal_score_errors_when_no_rational_set_rejects() {
        let agenda = parse_agenda("constraint: q\nq\nr\n").unwrap();
        let j = js("++");
        assert!(matches!(
            reversal_score(&agenda, &j, 0, Sign::Plus),
            Err(Error::NoRejectingSet)
        ));
    }

    #[test]
    fn dmax_hamming_keeps_minimal_distance_pairs() {
        let agenda = parse_agenda("constraint: T\np\nq\n").unwrap();
        let p = parse_profile_rows(agenda.clone(), "+ +\n+ +\n+ -\n").unwrap();
        let out = rule_dist_agg(&p, &DistanceSpec::Hamming, AggregatorKind::Max).unwrap();
        assert_eq!(out.winners, vec![js("++"), js("+-")]);
        // Non-degenerate triple: the middle set wins alone.
        let p = parse_profile_rows(agenda, "+ +\n+ -\n- -\n- -\n- -\n").unwrap();
        let out = rule_dist_agg(&p, &DistanceSpec::Hamming, AggregatorKind::Max).unwrap();
        assert_eq!(out.winners, vec![js("+-")]);
    }

    #[test]
    fn custom_distance_tables_are_validated() {
        let agenda = parse_agenda("constraint: T\np\n").unwrap();
        assert!(
            DistanceTable::from_fn(&agenda, |a, b| int(a.disagreements(b) as u64 * 2)).is_ok()
        );
        assert!(matches!(
            DistanceTable::from_fn(&agenda, |_, _| Value::zero()),
            Err(Error::InvalidDistance(_))
        ));
        assert!(matches!(
            DistanceTable::from_fn(&agenda, |_, _| Value::from_integer(1)),
            Err(Error::InvalidDistance(_))
        ));
    }

    #[test]
    fn rule_ids_round_trip() {
        for rule in RuleId::CATALOG {
            let s = rule.to_string();
            assert_eq!(RuleId::from_str(&s).unwrap(), rule);
        }
        assert_eq!(
            RuleId::from_str("dist:hamming:sum").unwrap(),
            RuleId::Dist(DistanceKind::Hamming, AggregatorKind::Sum)
        );
        assert_eq!(
            RuleId::from_str("score:rev").unwrap(),
            RuleId::Scoring(ScoreKind::Reversal)
        );
        assert!(RuleId::from_str("borda").is_err());
        assert!(RuleId::from_str("dist:euclid:sum").is_err());
    }
}
