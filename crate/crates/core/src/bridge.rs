//! Preference agendas (transitivity and nondominated-alternative
//! constraints), encodings of linear-order profiles as judgment profiles,
//! decodings of rule outcomes back to alternatives and orders, and
//! independent brute-force voting rules used to cross-check the
//! correspondences.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::agenda::{Agenda, JudgmentSet, Sign};
use crate::error::{Error, Result};
use crate::logic::Formula;
use crate::profile::Profile;
use crate::rules::{self, RuleId, RuleOutcome};

/// Default cap on the number of alternatives (the transitive agenda has q!
/// rational sets).
pub const DEFAULT_ALTERNATIVE_BUDGET: usize = 5;

/// A finite sequence of strict linear orders (best first) over a set of
/// named alternatives.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PreferenceProfile {
    alternatives: Vec<String>,
    orders: Vec<Vec<usize>>,
}

impl PreferenceProfile {
    pub fn new(alternatives: Vec<String>, orders: Vec<Vec<usize>>) -> Result<PreferenceProfile> {
        let q = alternatives.len();
        if q < 2 {
            return Err(Error::InvalidPreferences(
                "at least two alternatives are required".into(),
            ));
        }
        let mut seen = BTreeSet::new();
        for name in &alternatives {
            if !is_identifier(name) {
                return Err(Error::InvalidPreferences(format!(
                    "alternative name `{name}` is not an identifier"
                )));
            }
            if !seen.insert(name) {
                return Err(Error::InvalidPreferences(format!(
                    "alternative `{name}` is listed twice"
                )));
            }
        }
        if orders.is_empty() {
            return Err(Error::InvalidPreferences("profile has no voters".into()));
        }
        for order in &orders {
            let mut sorted = order.clone();
            sorted.sort_unstable();
            if sorted != (0..q).collect::<Vec<_>>() {
                return Err(Error::InvalidPreferences(format!(
                    "order {order:?} is not a permutation of 0..{q}"
                )));
            }
        }
        Ok(PreferenceProfile {
            alternatives,
            orders,
        })
    }

    pub fn alternative_count(&self) -> usize {
        self.alternatives.len()
    }

    pub fn alternatives(&self) -> &[String] {
        &self.alternatives
    }

    pub fn voter_count(&self) -> usize {
        self.orders.len()
    }

    pub fn orders(&self) -> &[Vec<usize>] {
        &self.orders
    }

    /// True when voter `v` ranks `x` above `y`.
    pub fn prefers(&self, v: usize, x: usize, y: usize) -> bool {
        let order = &self.orders[v];
        let px = order.iter().position(|&a| a == x).expect("valid alternative");
        let py = order.iter().position(|&a| a == y).expect("valid alternative");
        px < py
    }

    /// n_V(x, y): the number of voters preferring `x` to `y`.
    pub fn tally(&self, x: usize, y: usize) -> usize {
        (0..self.orders.len()).filter(|&v| self.prefers(v, x, y)).count()
    }

    /// Edge (x, y) of the majority graph M(V): a strict majority prefers x.
    pub fn majority_prefers(&self, x: usize, y: usize) -> bool {
        2 * self.tally(x, y) > self.orders.len()
    }
}

fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// The two consistency notions for preference agendas.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PrefConstraint {
    /// Transitive complete relations: the rational sets are the q! linear
    /// orders.
    Transitivity,
    /// Existence of a nondominated alternative.
    Nondominated,
}

impl fmt::Display for PrefConstraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PrefConstraint::Transitivity => write!(f, "tr"),
            PrefConstraint::Nondominated => write!(f, "w"),
        }
    }
}

impl FromStr for PrefConstraint {
    type Err = Error;

    fn from_str(s: &str) -> Result<PrefConstraint> {
        match s {
            "tr" => Ok(PrefConstraint::Transitivity),
            "w" => Ok(PrefConstraint::Nondominated),
            other => Err(Error::InvalidPreferences(format!(
                "unknown preference constraint `{other}` (expected `tr` or `w`)"
            ))),
        }
    }
}

/// Ordered pairs (i, j) with i < j, in issue order.
fn pair_list(q: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::with_capacity(q * (q - 1) / 2);
    for i in 0..q {
        for j in i + 1..q {
            out.push((i, j));
        }
    }
    out
}

fn pair_atom_name(alternatives: &[String], x: usize, y: usize) -> String {
    format!("{}P{}", alternatives[x], alternatives[y])
}

/// The comparison `x ≻ y` as a formula over the pairwise atoms; reversed
/// comparisons are negations.
fn comparison(alternatives: &[String], x: usize, y: usize) -> Formula {
    if x < y {
        Formula::atom(pair_atom_name(alternatives, x, y))
    } else {
        Formula::atom(pair_atom_name(alternatives, y, x)).negated()
    }
}

/// Build the preference agenda over the named alternatives with the chosen
/// constraint.
pub fn build_preference_agenda(
    alternatives: &[String],
    constraint: PrefConstraint,
) -> Result<Arc<Agenda>> {
    build_preference_agenda_limited(alternatives, constraint, DEFAULT_ALTERNATIVE_BUDGET)
}

pub fn build_preference_agenda_limited(
    alternatives: &[String],
    constraint: PrefConstraint,
    max_alternatives: usize,
) -> Result<Arc<Agenda>> {
    let q = alternatives.len();
    if q < 2 {
        return Err(Error::InvalidPreferences(
            "at least two alternatives are required".into(),
        ));
    }
    if q > max_alternatives {
        return Err(Error::AlternativeBudget {
            alternatives: q,
            budget: max_alternatives,
        });
    }
    let issues: Vec<Formula> = pair_list(q)
        .into_iter()
        .map(|(i, j)| Formula::atom(pair_atom_name(alternatives, i, j)))
        .collect();
    let gamma = match constraint {
        PrefConstraint::Transitivity => {
            let mut conjuncts = Vec::new();
            for i in 0..q {
                for j in 0..q {
                    for k in 0..q {
                        if i != j && j != k && i != k {
                            conjuncts.push(Formula::implies(
                                Formula::and(
                                    comparison(alternatives, i, j),
                                    comparison(alternatives, j, k),
                                ),
                                comparison(alternatives, i, k),
                            ));
                        }
                    }
                }
            }
            Formula::conjunction(conjuncts)
        }
        PrefConstraint::Nondominated => {
            let mut disjuncts = Vec::new();
            for i in 0..q {
                let beats_all = (0..q)
                    .filter(|&j| j != i)
                    .map(|j| comparison(alternatives, i, j));
                disjuncts.push(Formula::conjunction(beats_all));
            }
            Formula::disjunction(disjuncts)
        }
    };
    Agenda::with_constraint(issues, gamma)
}

/// Encode a preference profile as a judgment profile over a preference
/// agenda: voter i accepts `xPy` iff they rank x above y.
pub fn encode(v: &PreferenceProfile, agenda: &Arc<Agenda>) -> Result<Profile> {
    let q = v.alternative_count();
    let pairs = pair_list(q);
    if agenda.issue_count() != pairs.len() {
        return Err(Error::InvalidPreferences(format!(
            "agenda has {} issues but {} alternatives need {}",
            agenda.issue_count(),
            q,
            pairs.len()
        )));
    }
    let voters = (0..v.voter_count())
        .map(|voter| {
            JudgmentSet::from_signs(
                pairs
                    .iter()
                    .map(|&(i, j)| {
                        Some(if v.prefers(voter, i, j) {
                            Sign::Plus
                        } else {
                            Sign::Minus
                        })
                    })
                    .collect(),
            )
        })
        .collect();
    Profile::new(agenda.clone(), voters)
}

/// The tournament encoded by a complete judgment set: `beats(x, y)`.
fn beats(j: &JudgmentSet, q: usize, x: usize, y: usize) -> bool {
    let pairs = pair_list(q);
    if x < y {
        let idx = pairs.iter().position(|&p| p == (x, y)).expect("pair in range");
        j.sign(idx) == Some(Sign::Plus)
    } else {
        !beats(j, q, y, x)
    }
}

/// Decode a transitive judgment set into its linear order.
pub fn decode_order(j: &JudgmentSet, q: usize) -> Result<Vec<usize>> {
    let mut order: Vec<usize> = (0..q).collect();
    order.sort_by_key(|&x| std::cmp::Reverse((0..q).filter(|&y| y != x && beats(j, q, x, y)).count()));
    for w in 0..q {
        for l in w + 1..q {
            if !beats(j, q, order[w], order[l]) {
                return Err(Error::InvalidPreferences(format!(
                    "judgment set `{j}` does not encode a transitive order"
                )));
            }
        }
    }
    Ok(order)
}

/// Nondominated alternatives of a single judgment set.
pub fn nondominated(j: &JudgmentSet, q: usize) -> BTreeSet<usize> {
    (0..q)
        .filter(|&x| (0..q).all(|y| y == x || beats(j, q, x, y)))
        .collect()
}

/// Union of the nondominated alternatives over all winners of an outcome.
pub fn decode_winners(outcome: &RuleOutcome, q: usize) -> BTreeSet<usize> {
    let mut out = BTreeSet::new();
    for w in &outcome.winners {
        out.extend(nondominated(w, q));
    }
    out
}

/// Winning judgment sets decoded as linear orders (transitive agendas only).
pub fn decode_winner_orders(outcome: &RuleOutcome, q: usize) -> Result<BTreeSet<Vec<usize>>> {
    outcome.winners.iter().map(|w| decode_order(w, q)).collect()
}

fn all_orders(q: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut items: Vec<usize> = (0..q).collect();
    permute_orders(&mut items, 0, &mut out);
    out.sort();
    out
}

fn permute_orders(items: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k == items.len() {
        out.push(items.clone());
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permute_orders(items, k + 1, out);
        items.swap(k, i);
    }
}

fn argmax_orders(q: usize, mut score: impl FnMut(&[usize]) -> i64) -> BTreeSet<Vec<usize>> {
    let mut best = i64::MIN;
    let mut winners = BTreeSet::new();
    for order in all_orders(q) {
        let s = score(&order);
        match s.cmp(&best) {
            std::cmp::Ordering::Greater => {
                best = s;
                winners = BTreeSet::from([order]);
            }
            std::cmp::Ordering::Equal => {
                winners.insert(order);
            }
            std::cmp::Ordering::Less => {}
        }
    }
    winners
}

/// Kemeny: orders maximizing the summed pairwise agreement with the voters.
pub fn kemeny_orders(v: &PreferenceProfile) -> BTreeSet<Vec<usize>> {
    let q = v.alternative_count();
    argmax_orders(q, |order| {
        let mut total = 0i64;
        for w in 0..q {
            for l in w + 1..q {
                total += v.tally(order[w], order[l]) as i64;
            }
        }
        total
    })
}

/// Slater: orders maximizing agreement with the strict majority graph.
pub fn slater_orders(v: &PreferenceProfile) -> BTreeSet<Vec<usize>> {
    let q = v.alternative_count();
    argmax_orders(q, |order| {
        let mut total = 0i64;
        for w in 0..q {
            for l in w + 1..q {
                if v.majority_prefers(order[w], order[l]) {
                    total += 1;
                }
            }
        }
        total
    })
}

/// Top elements of a set of orders.
pub fn order_tops(orders: &BTreeSet<Vec<usize>>) -> BTreeSet<usize> {
    orders.iter().map(|o| o[0]).collect()
}

/// Copeland: maximize the number of outgoing majority-graph edges.
pub fn copeland_winners(v: &PreferenceProfile) -> BTreeSet<usize> {
    let q = v.alternative_count();
    let wins: Vec<usize> = (0..q)
        .map(|x| (0..q).filter(|&y| y != x && v.majority_prefers(x, y)).count())
        .collect();
    let best = *wins.iter().max().expect("at least two alternatives");
    (0..q).filter(|&x| wins[x] == best).collect()
}

/// The smallest set S such that every member beats every non-member in the
/// majority graph.
pub fn top_cycle(v: &PreferenceProfile) -> BTreeSet<usize> {
    let q = v.alternative_count();
    let mut winners = BTreeSet::new();
    let mut best_size = usize::MAX;
    for mask in 1u32..1 << q {
        let members: Vec<usize> = (0..q).filter(|&x| mask >> x & 1 == 1).collect();
        if members.len() > best_size {
            continue;
        }
        let dominant = members.iter().all(|&x| {
            (0..q)
                .filter(|&y| mask >> y & 1 == 0)
                .all(|y| v.majority_prefers(x, y))
        });
        if dominant {
            if members.len() < best_size {
                best_size = members.len();
                winners.clear();
            }
            winners.extend(members);
        }
    }
    winners
}

/// The Condorcet winner alone when one exists, otherwise every alternative.
pub fn condorcet_or_all(v: &PreferenceProfile) -> BTreeSet<usize> {
    let q = v.alternative_count();
    let cw =
        (0..q).find(|&x| (0..q).all(|y| y == x || v.majority_prefers(x, y)));
    match cw {
        Some(x) => BTreeSet::from([x]),
        None => (0..q).collect(),
    }
}

/// Ranked pairs: lock in comparisons by descending support whenever no cycle
/// arises, over every tie-breaking order of equally supported pairs.
pub fn ranked_pairs_orders(v: &PreferenceProfile) -> Result<BTreeSet<Vec<usize>>> {
    let q = v.alternative_count();
    let mut by_weight: std::collections::BTreeMap<usize, Vec<(usize, usize)>> =
        std::collections::BTreeMap::new();
    for x in 0..q {
        for y in 0..q {
            if x != y {
                by_weight.entry(v.tally(x, y)).or_default().push((x, y));
            }
        }
    }
    let levels: Vec<Vec<(usize, usize)>> = by_weight.into_values().rev().collect();
    for level in &levels {
        if level.len() > rules::TIE_GROUP_BOUND {
            return Err(Error::TieGroup {
                size: level.len(),
                bound: rules::TIE_GROUP_BOUND,
            });
        }
    }
    let mut out = BTreeSet::new();
    rp_descend(&levels, 0, &mut Vec::new(), q, &mut out);
    Ok(out)
}

fn rp_descend(
    levels: &[Vec<(usize, usize)>],
    depth: usize,
    order: &mut Vec<(usize, usize)>,
    q: usize,
    out: &mut BTreeSet<Vec<usize>>,
) {
    if depth == levels.len() {
        let mut work = vec![vec![false; q]; q];
        for &(x, y) in order.iter() {
            if !reaches(&work, y, x) && !work[y][x] {
                work[x][y] = true;
            }
        }
        // The locked relation is an acyclic tournament: read off its order.
        let mut ranking: Vec<usize> = (0..q).collect();
        ranking.sort_by_key(|&x| std::cmp::Reverse(work[x].iter().filter(|&&b| b).count()));
        out.insert(ranking);
        return;
    }
    let mut level = levels[depth].clone();
    let prefix = order.len();
    permute_pairs(&mut level, 0, &mut |perm| {
        order.truncate(prefix);
        order.extend_from_slice(perm);
        rp_descend(levels, depth + 1, order, q, out);
    });
    order.truncate(prefix);
}

fn permute_pairs(
    items: &mut [(usize, usize)],
    k: usize,
    visit: &mut impl FnMut(&[(usize, usize)]),
) {
    if k == items.len() {
        visit(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permute_pairs(items, k + 1, visit);
        items.swap(k, i);
    }
}

fn reaches(edges: &[Vec<bool>], from: usize, to: usize) -> bool {
    let q = edges.len();
    let mut seen = vec![false; q];
    let mut stack = vec![from];
    while let Some(u) = stack.pop() {
        if u == to {
            return true;
        }
        if seen[u] {
            continue;
        }
        seen[u] = true;
        for w in 0..q {
            if edges[u][w] && !seen[w] {
                stack.push(w);
            }
        }
    }
    false
}

/// Maximin: maximize the worst pairwise support.
pub fn maximin_winners(v: &PreferenceProfile) -> BTreeSet<usize> {
    let q = v.alternative_count();
    let score = |x: usize| -> usize {
        (0..q)
            .filter(|&y| y != x)
            .map(|y| v.tally(x, y))
            .min()
            .expect("at least two alternatives")
    };
    let best = (0..q).map(score).max().expect("nonempty");
    (0..q).filter(|&x| score(x) == best).collect()
}

/// Young voting rule: minimize the number of voters removed until the
/// candidate is a weak Condorcet winner of the remaining profile.
pub fn young_winners(v: &PreferenceProfile) -> BTreeSet<usize> {
    let q = v.alternative_count();
    let n = v.voter_count();
    // Group identical orders; removals are per group.
    let mut groups: Vec<(Vec<usize>, usize)> = Vec::new();
    for order in v.orders() {
        match groups.iter_mut().find(|(o, _)| o == order) {
            Some((_, count)) => *count += 1,
            None => groups.push((order.clone(), 1)),
        }
    }
    let prefers = |order: &[usize], x: usize, y: usize| -> bool {
        order.iter().position(|&a| a == x) < order.iter().position(|&a| a == y)
    };
    let removal_score = |c: usize| -> usize {
        for removed in 0..n {
            let mut found = false;
            let mut removal = vec![0usize; groups.len()];
            young_compositions(&groups, removed, 0, &mut removal, &mut |removal| {
                let weak_cw = (0..q).filter(|&y| y != c).all(|y| {
                    let mut for_c = 0usize;
                    let mut against = 0usize;
                    for ((order, count), &r) in groups.iter().zip(removal.iter()) {
                        let kept = count - r;
                        if prefers(order, c, y) {
                            for_c += kept;
                        } else {
                            against += kept;
                        }
                    }
                    for_c >= against
                });
                if weak_cw {
                    found = true;
                }
            });
            if found {
                return removed;
            }
        }
        n
    };
    let scores: Vec<usize> = (0..q).map(removal_score).collect();
    let best = *scores.iter().min().expect("nonempty");
    (0..q).filter(|&x| scores[x] == best).collect()
}

fn young_compositions(
    groups: &[(Vec<usize>, usize)],
    left: usize,
    depth: usize,
    removal: &mut Vec<usize>,
    visit: &mut impl FnMut(&Vec<usize>),
) {
    if depth == groups.len() {
        if left == 0 {
            visit(removal);
        }
        return;
    }
    let cap = groups[depth].1.min(left);
    for take in 0..=cap {
        removal[depth] = take;
        young_compositions(groups, left - take, depth + 1, removal, visit);
    }
    removal[depth] = 0;
}

/// One judgment-aggregation-to-voting correspondence check.
#[derive(Debug, Clone)]
pub struct Correspondence {
    pub label: String,
    pub holds: bool,
    pub detail: String,
}

/// Run the full battery of correspondence checks on one preference profile.
/// Intended for odd voter counts; callers may still invoke it on even ones
/// and treat failures as observations.
pub fn check_correspondences(v: &PreferenceProfile) -> Result<Vec<Correspondence>> {
    let q = v.alternative_count();
    let tr = build_preference_agenda(v.alternatives(), PrefConstraint::Transitivity)?;
    let w = build_preference_agenda(v.alternatives(), PrefConstraint::Nondominated)?;
    let p_tr = encode(v, &tr)?;
    let p_w = encode(v, &w)?;

    let mut out = Vec::new();
    let mut push = |label: &str, holds: bool, detail: String| {
        out.push(Correspondence {
            label: label.to_string(),
            holds,
            detail,
        });
    };

    let med_orders = decode_winner_orders(&rules::evaluate(RuleId::Med, &p_tr)?, q)?;
    let kemeny = kemeny_orders(v);
    push(
        "med+tr=kemeny",
        med_orders == kemeny,
        format!("{med_orders:?} vs {kemeny:?}"),
    );

    let mcc_tops = order_tops(&decode_winner_orders(
        &rules::evaluate(RuleId::Mcc, &p_tr)?,
        q,
    )?);
    let slater_tops = order_tops(&slater_orders(v));
    push(
        "mcc+tr=slater",
        mcc_tops == slater_tops,
        format!("{mcc_tops:?} vs {slater_tops:?}"),
    );

    let mcc_w = decode_winners(&rules::evaluate(RuleId::Mcc, &p_w)?, q);
    let copeland = copeland_winners(v);
    push(
        "mcc+w=copeland",
        mcc_w == copeland,
        format!("{mcc_w:?} vs {copeland:?}"),
    );

    let mc_tr = decode_winners(&rules::evaluate(RuleId::Mc, &p_tr)?, q);
    let tc = top_cycle(v);
    push("mc+tr=top-cycle", mc_tr == tc, format!("{mc_tr:?} vs {tc:?}"));

    let mc_w = decode_winners(&rules::evaluate(RuleId::Mc, &p_w)?, q);
    let coa = condorcet_or_all(v);
    push(
        "mc+w=condorcet-or-all",
        mc_w == coa,
        format!("{mc_w:?} vs {coa:?}"),
    );

    let ra_orders = decode_winner_orders(&rules::evaluate(RuleId::Ra, &p_tr)?, q)?;
    let rp = ranked_pairs_orders(v)?;
    push(
        "ra+tr=ranked-pairs",
        ra_orders == rp,
        format!("{ra_orders:?} vs {rp:?}"),
    );

    let ra_w = decode_winners(&rules::evaluate(RuleId::Ra, &p_w)?, q);
    let maximin = maximin_winners(v);
    push(
        "ra+w=maximin",
        ra_w == maximin,
        format!("{ra_w:?} vs {maximin:?}"),
    );

    let y_w = decode_winners(&rules::evaluate(RuleId::Young, &p_w)?, q);
    let young = young_winners(v);
    push(
        "young+w=young-voting",
        y_w == young,
        format!("{y_w:?} vs {young:?}"),
    );

    let leximax_orders = decode_winner_orders(&rules::evaluate(RuleId::Leximax, &p_tr)?, q)?;
    push(
        "leximax+tr⊆ranked-pairs",
        leximax_orders.is_subset(&rp),
        format!("{leximax_orders:?} vs {rp:?}"),
    );

    let leximax_w = decode_winners(&rules::evaluate(RuleId::Leximax, &p_w)?, q);
    push(
        "leximax+w⊆maximin",
        leximax_w.is_subset(&maximin),
        format!("{leximax_w:?} vs {maximin:?}"),
    );

    Ok(out)
}

/// Parse a preference profile file: an `alternatives:` line, then one order
/// per line as `a > b > c` with an optional `xK` multiplicity suffix.
pub fn parse_preference_profile(text: &str) -> Result<PreferenceProfile> {
    let mut lines = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    let header = lines
        .next()
        .ok_or_else(|| Error::InvalidPreferences("empty preference profile".into()))?;
    let names = header
        .strip_prefix("alternatives:")
        .ok_or_else(|| {
            Error::InvalidPreferences(format!(
                "expected `alternatives: ...` header, found `{header}`"
            ))
        })?
        .split_whitespace()
        .map(str::to_string)
        .collect::<Vec<_>>();
    let mut orders = Vec::new();
    for line in lines {
        let (body, count) = match line.rsplit_once('x') {
            Some((prefix, suffix))
                if !suffix.is_empty() && suffix.chars().all(|c| c.is_ascii_digit()) =>
            {
                let count: usize = suffix
                    .parse()
                    .map_err(|_| Error::InvalidPreferences(format!("bad multiplicity in `{line}`")))?;
                (prefix.trim(), count)
            }
            _ => (line, 1),
        };
        if count == 0 {
            return Err(Error::InvalidPreferences(format!(
                "zero multiplicity in `{line}`"
            )));
        }
        let order = body
            .split('>')
            .map(|part| {
                let name = part.trim();
                names
                    .iter()
                    .position(|n| n == name)
                    .ok_or_else(|| {
                        Error::InvalidPreferences(format!("unknown alternative `{name}`"))
                    })
            })
            .collect::<Result<Vec<usize>>>()?;
        for _ in 0..count {
            orders.push(order.clone());
        }
    }
    PreferenceProfile::new(names, orders)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(list: &[&str]) -> Vec<String> {
        list.iter().map(|s| s.to_string()).collect()
    }

    fn pref(alts: &[&str], orders: &[&[usize]]) -> PreferenceProfile {
        PreferenceProfile::new(names(alts), orders.iter().map(|o| o.to_vec()).collect()).unwrap()
    }

    // Independent transitivity oracle over a three-alternative tournament.
    fn transitive3(ab: bool, ac: bool, bc: bool) -> bool {
        let beats = |x: usize, y: usize| match (x, y) {
            (0, 1) => ab,
            (1, 0) => !ab,
            (0, 2) => ac,
            (2, 0) => !ac,
            (1, 2) => bc,
            (2, 1) => !bc,
            _ => unreachable!(),
        };
        let mut ok = true;
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    if i != j && j != k && i != k && beats(i, j) && beats(j, k) {
                        ok &= beats(i, k);
                    }
                }
            }
        }
        ok
    }

    #[test]
    fn transitive_agenda_has_factorial_many_rational_sets() {
        let a = build_preference_agenda(&names(&["a", "b", "c"]), PrefConstraint::Transitivity)
            .unwrap();
        assert_eq!(a.rational_sets().len(), 6);
        // Cross-check against the hand-coded transitivity oracle.
        let mut expected = 0;
        for bits in 0..8u8 {
            if transitive3(bits & 1 == 1, bits & 2 == 2, bits & 4 == 4) {
                expected += 1;
            }
        }
        assert_eq!(expected, 6);
        let a4 = build_preference_agenda(
            &names(&["a", "b", "c", "d"]),
            PrefConstraint::Transitivity,
        )
        .unwrap();
        assert_eq!(a4.rational_sets().len(), 24);
    }

    #[test]
    fn two_alternatives_give_two_rational_sets_either_way() {
        for c in [PrefConstraint::Transitivity, PrefConstraint::Nondominated] {
            let a = build_preference_agenda(&names(&["a", "b"]), c).unwrap();
            assert_eq!(a.rational_sets().len(), 2);
        }
    }

    #[test]
    fn nondominated_agenda_admits_exactly_dominant_tournaments() {
        let a = build_preference_agenda(&names(&["a", "b", "c"]), PrefConstraint::Nondominated)
            .unwrap();
        // 8 tournaments on 3 alternatives minus the 2 cycles.
        assert_eq!(a.rational_sets().len(), 6);
    }

    #[test]
    fn alternative_budget_is_enforced() {
        let too_many = names(&["a", "b", "c", "d", "e", "f"]);
        assert!(matches!(
            build_preference_agenda(&too_many, PrefConstraint::Transitivity),
            Err(Error::AlternativeBudget { .. })
        ));
    }

    #[test]
    fn encoding_orders_and_decoding_back() {
        let v = pref(&["a", "b", "c"], &[&[0, 1, 2]]);
        let agenda =
            build_preference_agenda(v.alternatives(), PrefConstraint::Transitivity).unwrap();
        let p = encode(&v, &agenda).unwrap();
        assert_eq!(p.voters()[0].to_string(), "+++");
        assert_eq!(decode_order(p.voters().first().unwrap(), 3).unwrap(), vec![0, 1, 2]);

        // Every linear order survives an encode/decode round trip.
        let q = 4;
        let agenda4 = build_preference_agenda(
            &names(&["a", "b", "c", "d"]),
            PrefConstraint::Transitivity,
        )
        .unwrap();
        for order in all_orders(q) {
            let v = PreferenceProfile::new(names(&["a", "b", "c", "d"]), vec![order.clone()])
                .unwrap();
            let p = encode(&v, &agenda4).unwrap();
            assert_eq!(decode_order(&p.voters()[0], q).unwrap(), order);
        }
    }

    #[test]
    fn encoded_support_counts_equal_pairwise_tallies() {
        let v = pref(&["a", "b", "c"], &[&[0, 1, 2], &[1, 2, 0], &[2, 0, 1]]);
        let agenda =
            build_preference_agenda(v.alternatives(), PrefConstraint::Transitivity).unwrap();
        let p = encode(&v, &agenda).unwrap();
        for (idx, (i, j)) in pair_list(3).into_iter().enumerate() {
            assert_eq!(p.support_count(idx, Sign::Plus).unwrap(), v.tally(i, j));
            assert_eq!(p.support_count(idx, Sign::Minus).unwrap(), v.tally(j, i));
        }
    }

    #[test]
    fn single_order_outcome_decodes_to_its_top() {
        let v = pref(&["a", "b", "c"], &[&[0, 1, 2]]);
        let agenda =
            build_preference_agenda(v.alternatives(), PrefConstraint::Transitivity).unwrap();
        let p = encode(&v, &agenda).unwrap();
        let out = rules::evaluate(RuleId::Med, &p).unwrap();
        assert_eq!(decode_winners(&out, 3), BTreeSet::from([0]));
    }

    #[test]
    fn condorcet_profiles_elect_the_top_everywhere() {
        let v = pref(&["a", "b", "c"], &[&[1, 0, 2], &[1, 0, 2], &[1, 0, 2]]);
        assert_eq!(copeland_winners(&v), BTreeSet::from([1]));
        assert_eq!(top_cycle(&v), BTreeSet::from([1]));
        assert_eq!(condorcet_or_all(&v), BTreeSet::from([1]));
        assert_eq!(maximin_winners(&v), BTreeSet::from([1]));
        assert_eq!(young_winners(&v), BTreeSet::from([1]));
        assert_eq!(kemeny_orders(&v), BTreeSet::from([vec![1, 0, 2]]));
        assert_eq!(slater_orders(&v), BTreeSet::from([vec![1, 0, 2]]));
        assert_eq!(
            ranked_pairs_orders(&v).unwrap(),
            BTreeSet::from([vec![1, 0, 2]])
        );
    }

    #[test]
    fn cyclic_majorities_spread_the_winners() {
        // A 3-cycle: a>b, b>c, c>a, each 2-1. The pairwise-tally oracle.
        let v = pref(&["a", "b", "c"], &[&[0, 1, 2], &[1, 2, 0], &[2, 0, 1]]);
        assert_eq!(v.tally(0, 1), 2);
        assert_eq!(v.tally(1, 2), 2);
        assert_eq!(v.tally(2, 0), 2);
        assert_eq!(copeland_winners(&v), BTreeSet::from([0, 1, 2]));
        assert_eq!(top_cycle(&v), BTreeSet::from([0, 1, 2]));
        assert_eq!(condorcet_or_all(&v), BTreeSet::from([0, 1, 2]));
    }

    #[test]
    fn correspondences_hold_on_small_odd_profiles() {
        let profiles = [
            pref(&["a", "b", "c"], &[&[0, 1, 2], &[1, 2, 0], &[2, 0, 1]]),
            pref(&["a", "b", "c"], &[&[0, 1, 2], &[0, 2, 1], &[1, 2, 0]]),
            pref(&["a", "b", "c"], &[&[2, 1, 0]]),
        ];
        for v in &profiles {
            for c in check_correspondences(v).unwrap() {
                assert!(c.holds, "{}: {}", c.label, c.detail);
            }
        }
    }

    #[test]
    fn parses_preference_profile_files() {
        let v = parse_preference_profile(
            "# fixture\nalternatives: a b c\na > b > c x2\nc > b > a\n",
        )
        .unwrap();
        assert_eq!(v.voter_count(), 3);
        assert_eq!(v.orders()[0], vec![0, 1, 2]);
        assert_eq!(v.orders()[2], vec![2, 1, 0]);
        assert!(parse_preference_profile("a > b\n").is_err());
        assert!(parse_preference_profile("alternatives: a b\na > z\n").is_err());
    }
}
