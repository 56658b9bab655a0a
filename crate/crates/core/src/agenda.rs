//! Agendas with integrity constraints, rational judgment sets, consistency,
//! extensions, and maximal/maxcard consistent subsets.

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::sync::{Arc, OnceLock};

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::logic::{self, Formula, Valuation};
use crate::profile::GeodesicTable;

/// Default cap on the number of agenda issues.
pub const DEFAULT_ISSUE_BUDGET: usize = 20;

/// Size limits applied when an agenda is constructed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AgendaLimits {
    pub max_issues: usize,
    pub max_atoms: usize,
}

impl Default for AgendaLimits {
    fn default() -> Self {
        AgendaLimits {
            max_issues: DEFAULT_ISSUE_BUDGET,
            max_atoms: logic::DEFAULT_ATOM_BUDGET,
        }
    }
}

/// Accept (`+`) or reject (`-`) one agenda issue.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// Possibly partial sign assignment over the issues of an agenda:
/// `+` accepts the issue formula, `-` accepts its negation, `?` is undecided.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct JudgmentSet {
    signs: Vec<Option<Sign>>,
}

impl JudgmentSet {
    pub fn from_signs(signs: Vec<Option<Sign>>) -> Self {
        JudgmentSet { signs }
    }

    pub fn undecided(len: usize) -> Self {
        JudgmentSet { signs: vec![None; len] }
    }

    /// Parse a compact sign row such as `+-?+`; whitespace is ignored.
    pub fn parse(text: &str) -> Result<Self> {
        let mut signs = Vec::new();
        for (i, c) in text.char_indices() {
            match c {
                '+' => signs.push(Some(Sign::Plus)),
                '-' => signs.push(Some(Sign::Minus)),
                '?' => signs.push(None),
                c if c.is_whitespace() => {}
                other => {
                    return Err(Error::Syntax {
                        offset: i,
                        message: format!("invalid sign `{other}`"),
                    })
                }
            }
        }
        if signs.is_empty() {
            return Err(Error::InvalidJudgmentSet("empty sign row".into()));
        }
        Ok(JudgmentSet { signs })
    }

    pub fn len(&self) -> usize {
        self.signs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.signs.is_empty()
    }

    pub fn sign(&self, issue: usize) -> Option<Sign> {
        self.signs.get(issue).copied().flatten()
    }

    pub fn set_sign(&mut self, issue: usize, sign: Option<Sign>) {
        self.signs[issue] = sign;
    }

    /// New set with the sign of `issue` flipped; the set must decide it.
    pub fn flipped(&self, issue: usize) -> Result<JudgmentSet> {
        let mut out = self.clone();
        match out.signs.get(issue).copied().flatten() {
            Some(sign) => {
                out.signs[issue] = Some(sign.flip());
                Ok(out)
            }
            None => Err(Error::IncompleteJudgmentSet),
        }
    }

    pub fn is_complete(&self) -> bool {
        self.signs.iter().all(Option::is_some)
    }

    pub fn decided_count(&self) -> usize {
        self.signs.iter().filter(|s| s.is_some()).count()
    }

    /// Decided issues as `(issue, sign)` pairs.
    pub fn elements(&self) -> impl Iterator<Item = (usize, Sign)> + '_ {
        self.signs
            .iter()
            .enumerate()
            .filter_map(|(i, s)| s.map(|sign| (i, sign)))
    }

    /// True when `other` decides every issue this set decides, with the same
    /// sign.
    pub fn extended_by(&self, other: &JudgmentSet) -> bool {
        self.signs.len() == other.signs.len()
            && self
                .elements()
                .all(|(i, sign)| other.sign(i) == Some(sign))
    }

    /// Number of issues on which two complete sets disagree.
    pub fn disagreements(&self, other: &JudgmentSet) -> usize {
        self.signs
            .iter()
            .zip(&other.signs)
            .filter(|(a, b)| a != b)
            .count()
    }
}

impl fmt::Display for JudgmentSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.signs {
            match s {
                Some(sign) => write!(f, "{sign}")?,
                None => write!(f, "?")?,
            }
        }
        Ok(())
    }
}

impl Serialize for JudgmentSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// A set of agenda elements (issue formulas or their negations). Unlike a
/// judgment set it may contain both `φ` and `¬φ`.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord)]
pub struct ElementSet {
    elems: BTreeSet<(usize, Sign)>,
}

impl ElementSet {
    pub fn new() -> Self {
        ElementSet::default()
    }

    /// The decided part of a (possibly partial) judgment set.
    pub fn from_judgment_set(j: &JudgmentSet) -> Self {
        ElementSet {
            elems: j.elements().collect(),
        }
    }

    pub fn from_elements(elems: impl IntoIterator<Item = (usize, Sign)>) -> Self {
        ElementSet {
            elems: elems.into_iter().collect(),
        }
    }

    pub fn insert(&mut self, issue: usize, sign: Sign) {
        self.elems.insert((issue, sign));
    }

    pub fn contains(&self, issue: usize, sign: Sign) -> bool {
        self.elems.contains(&(issue, sign))
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, Sign)> + '_ {
        self.elems.iter().copied()
    }

    pub fn is_subset(&self, other: &ElementSet) -> bool {
        self.elems.is_subset(&other.elems)
    }

    /// True when the complete set `j` contains every element.
    pub fn fits(&self, j: &JudgmentSet) -> bool {
        self.elems.iter().all(|&(i, sign)| j.sign(i) == Some(sign))
    }

    /// Partial judgment set view; `None` if some issue occurs with both
    /// signs.
    pub fn to_partial(&self, issues: usize) -> Option<JudgmentSet> {
        let mut out = JudgmentSet::undecided(issues);
        for &(i, sign) in &self.elems {
            if i >= issues {
                return None;
            }
            match out.sign(i) {
                None => out.set_sign(i, Some(sign)),
                Some(existing) if existing == sign => {}
                Some(_) => return None,
            }
        }
        Some(out)
    }
}

/// How agenda-relative consistency is decided.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Consistency {
    /// Logical consistency together with a fixed integrity constraint.
    Constraint(Formula),
    /// An explicit list of complete sign vectors declared rational.
    Extensional(Vec<JudgmentSet>),
}

/// An agenda: an ordered list of issue formulas (the pre-agenda) plus a
/// consistency notion. Rational judgment sets are enumerated once at
/// construction and shared read-only afterwards.
#[derive(Debug)]
pub struct Agenda {
    issues: Vec<Formula>,
    consistency: Consistency,
    rational: Vec<JudgmentSet>,
    pub(crate) geodesic: OnceLock<GeodesicTable>,
}

impl PartialEq for Agenda {
    fn eq(&self, other: &Self) -> bool {
        self.issues == other.issues && self.consistency == other.consistency
    }
}

impl Eq for Agenda {}

impl Agenda {
    /// Agenda over `issues` with integrity constraint `gamma`.
    pub fn with_constraint(issues: Vec<Formula>, gamma: Formula) -> Result<Arc<Agenda>> {
        Agenda::with_constraint_limited(issues, gamma, AgendaLimits::default())
    }

    /// Agenda with `γ = ⊤`: plain logical consistency.
    pub fn unconstrained(issues: Vec<Formula>) -> Result<Arc<Agenda>> {
        Agenda::with_constraint(issues, Formula::Top)
    }

    pub fn with_constraint_limited(
        issues: Vec<Formula>,
        gamma: Formula,
        limits: AgendaLimits,
    ) -> Result<Arc<Agenda>> {
        validate_issues(&issues, limits)?;
        let rational = enumerate_constraint_rational(&issues, &gamma, limits)?;
        if rational.is_empty() {
            return Err(Error::InvalidAgenda(
                "integrity constraint is contradictory: no rational judgment set exists".into(),
            ));
        }
        Ok(Arc::new(Agenda {
            issues,
            consistency: Consistency::Constraint(gamma),
            rational,
            geodesic: OnceLock::new(),
        }))
    }

    /// Agenda whose rational sets are given extensionally.
    pub fn extensional(issues: Vec<Formula>, sets: Vec<JudgmentSet>) -> Result<Arc<Agenda>> {
        Agenda::extensional_limited(issues, sets, AgendaLimits::default())
    }

    pub fn extensional_limited(
        issues: Vec<Formula>,
        sets: Vec<JudgmentSet>,
        limits: AgendaLimits,
    ) -> Result<Arc<Agenda>> {
        validate_issues(&issues, limits)?;
        if sets.is_empty() {
            return Err(Error::InvalidAgenda(
                "extensional agenda declares no rational judgment set".into(),
            ));
        }
        let mut seen = BTreeSet::new();
        for s in &sets {
            if s.len() != issues.len() {
                return Err(Error::InvalidAgenda(format!(
                    "declared rational set `{s}` has {} signs, agenda has {} issues",
                    s.len(),
                    issues.len()
                )));
            }
            if !s.is_complete() {
                return Err(Error::InvalidAgenda(format!(
                    "declared rational set `{s}` is not complete"
                )));
            }
            if !seen.insert(s.clone()) {
                return Err(Error::InvalidAgenda(format!(
                    "declared rational set `{s}` is listed twice"
                )));
            }
        }
        let rational: Vec<JudgmentSet> = seen.into_iter().collect();
        let declared = sets;
        Ok(Arc::new(Agenda {
            issues,
            consistency: Consistency::Extensional(declared),
            rational,
            geodesic: OnceLock::new(),
        }))
    }

    pub fn issue_count(&self) -> usize {
        self.issues.len()
    }

    pub fn issues(&self) -> &[Formula] {
        &self.issues
    }

    pub fn issue(&self, index: usize) -> Result<&Formula> {
        self.issues.get(index).ok_or(Error::IssueOutOfRange {
            index,
            issues: self.issues.len(),
        })
    }

    pub fn consistency(&self) -> &Consistency {
        &self.consistency
    }

    /// The integrity constraint, if the agenda uses one.
    pub fn gamma(&self) -> Option<&Formula> {
        match &self.consistency {
            Consistency::Constraint(gamma) => Some(gamma),
            Consistency::Extensional(_) => None,
        }
    }

    /// The agenda element `(issue, sign)` rendered as a formula.
    pub fn element_formula(&self, issue: usize, sign: Sign) -> Result<Formula> {
        let f = self.issue(issue)?.clone();
        Ok(match sign {
            Sign::Plus => f,
            Sign::Minus => f.negated(),
        })
    }

    /// All rational judgment sets, in lexicographic sign order (`+` < `-`).
    pub fn rational_sets(&self) -> &[JudgmentSet] {
        &self.rational
    }

    pub fn rational_index(&self, j: &JudgmentSet) -> Option<usize> {
        self.rational.binary_search(j).ok()
    }

    pub fn is_rational(&self, j: &JudgmentSet) -> bool {
        j.is_complete() && self.rational_index(j).is_some()
    }

    /// Consistency of a possibly partial judgment set: some rational set must
    /// extend it. For constraint agendas this coincides with satisfiability
    /// of the selected formulas together with the constraint.
    pub fn is_consistent(&self, j: &JudgmentSet) -> Result<bool> {
        if j.len() != self.issues.len() {
            return Err(Error::InvalidJudgmentSet(format!(
                "judgment set has {} signs, agenda has {} issues",
                j.len(),
                self.issues.len()
            )));
        }
        Ok(self.rational.iter().any(|r| j.extended_by(r)))
    }

    /// Consistency of an arbitrary set of agenda elements.
    pub fn is_consistent_elements(&self, s: &ElementSet) -> Result<bool> {
        self.check_elements(s)?;
        Ok(self.rational.iter().any(|r| s.fits(r)))
    }

    fn check_elements(&self, s: &ElementSet) -> Result<()> {
        for (i, _) in s.iter() {
            if i >= self.issues.len() {
                return Err(Error::IssueOutOfRange {
                    index: i,
                    issues: self.issues.len(),
                });
            }
        }
        Ok(())
    }

    /// All rational completions of a consistent partial set.
    pub fn extensions(&self, s: &JudgmentSet) -> Result<Vec<JudgmentSet>> {
        if !self.is_consistent(s)? {
            return Err(Error::InconsistentInput);
        }
        Ok(self
            .rational
            .iter()
            .filter(|r| s.extended_by(r))
            .cloned()
            .collect())
    }

    /// All rational sets containing every element of a consistent element
    /// set.
    pub fn extensions_of_elements(&self, s: &ElementSet) -> Result<Vec<JudgmentSet>> {
        if !self.is_consistent_elements(s)? {
            return Err(Error::InconsistentInput);
        }
        Ok(self
            .rational
            .iter()
            .filter(|r| s.fits(r))
            .cloned()
            .collect())
    }

    /// Maximal consistent subsets of a set of agenda elements: depth-first
    /// descent through the subset lattice with consistency pruning, then a
    /// maximality filter.
    pub fn max_consistent_subsets(&self, s: &ElementSet) -> Result<Vec<ElementSet>> {
        self.check_elements(s)?;
        let elems: Vec<(usize, Sign)> = s.iter().collect();
        let n = elems.len();
        assert!(n < 64, "element sets are bounded by twice the issue budget");
        let full: u64 = if n == 0 { 0 } else { (1u64 << n) - 1 };

        let fits_mask = |mask: u64| -> bool {
            self.rational.iter().any(|r| {
                elems
                    .iter()
                    .enumerate()
                    .all(|(b, &(i, sign))| mask >> b & 1 == 0 || r.sign(i) == Some(sign))
            })
        };

        let mut visited: HashSet<u64> = HashSet::new();
        let mut stack = vec![full];
        let mut consistent: Vec<u64> = Vec::new();
        while let Some(mask) = stack.pop() {
            if !visited.insert(mask) {
                continue;
            }
            if fits_mask(mask) {
                consistent.push(mask);
                continue;
            }
            for b in 0..n {
                if mask >> b & 1 == 1 {
                    let child = mask & !(1u64 << b);
                    if !visited.contains(&child) {
                        stack.push(child);
                    }
                }
            }
        }

        let mut maximal: Vec<u64> = Vec::new();
        for &m in &consistent {
            if !consistent.iter().any(|&o| o != m && o & m == m) {
                maximal.push(m);
            }
        }
        let mut out: Vec<ElementSet> = maximal
            .into_iter()
            .map(|mask| {
                ElementSet::from_elements(
                    elems
                        .iter()
                        .enumerate()
                        .filter(|(b, _)| mask >> b & 1 == 1)
                        .map(|(_, &e)| e),
                )
            })
            .collect();
        out.sort();
        out.dedup();
        Ok(out)
    }

    /// Maximum-cardinality members of `max_consistent_subsets`.
    pub fn maxcard_consistent_subsets(&self, s: &ElementSet) -> Result<Vec<ElementSet>> {
        let all = self.max_consistent_subsets(s)?;
        let best = all.iter().map(ElementSet::len).max().unwrap_or(0);
        Ok(all.into_iter().filter(|s| s.len() == best).collect())
    }

    /// The textual agenda format accepted by [`parse_agenda`].
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        match &self.consistency {
            Consistency::Constraint(gamma) => {
                out.push_str(&format!("constraint: {gamma}\n"));
                for issue in &self.issues {
                    out.push_str(&format!("{issue}\n"));
                }
            }
            Consistency::Extensional(sets) => {
                out.push_str("extensional\n");
                for issue in &self.issues {
                    out.push_str(&format!("{issue}\n"));
                }
                out.push_str("sets:\n");
                for s in sets {
                    out.push_str(&format!("{s}\n"));
                }
            }
        }
        out
    }

    /// Render an element set with the issue formulas, e.g. `{q, !(p & q)}`.
    pub fn describe_elements(&self, s: &ElementSet) -> String {
        let parts: Vec<String> = s
            .iter()
            .map(|(i, sign)| {
                self.element_formula(i, sign)
                    .map(|f| f.to_string())
                    .unwrap_or_else(|_| format!("#{i}{sign}"))
            })
            .collect();
        format!("{{{}}}", parts.join(", "))
    }
}

fn validate_issues(issues: &[Formula], limits: AgendaLimits) -> Result<()> {
    if issues.is_empty() {
        return Err(Error::InvalidAgenda("agenda has no issues".into()));
    }
    if issues.len() > limits.max_issues {
        return Err(Error::IssueBudget {
            issues: issues.len(),
            budget: limits.max_issues,
        });
    }
    let mut seen = BTreeSet::new();
    for f in issues {
        if f.is_negation() {
            return Err(Error::InvalidAgenda(format!(
                "issue `{f}` is negated at the top level"
            )));
        }
        if !seen.insert(f) {
            return Err(Error::InvalidAgenda(format!("issue `{f}` is listed twice")));
        }
        if !logic::is_satisfiable_within(std::slice::from_ref(f), limits.max_atoms)? {
            return Err(Error::InvalidAgenda(format!("issue `{f}` is a contradiction")));
        }
        if !logic::is_satisfiable_within(&[f.clone().negated()], limits.max_atoms)? {
            return Err(Error::InvalidAgenda(format!("issue `{f}` is a tautology")));
        }
    }
    Ok(())
}

/// Sweep all valuations of the atom union; every model of `γ` induces the
/// rational set that signs each issue by its truth value.
fn enumerate_constraint_rational(
    issues: &[Formula],
    gamma: &Formula,
    limits: AgendaLimits,
) -> Result<Vec<JudgmentSet>> {
    let mut atoms = BTreeSet::new();
    for f in issues {
        atoms.extend(f.atoms());
    }
    atoms.extend(gamma.atoms());
    if atoms.len() > limits.max_atoms {
        return Err(Error::AtomBudget {
            atoms: atoms.len(),
            budget: limits.max_atoms,
        });
    }
    let atoms: Vec<&str> = atoms.into_iter().collect();
    let mut out: BTreeSet<JudgmentSet> = BTreeSet::new();
    for bits in 0..1u64 << atoms.len() {
        let v = Valuation::from_bits(&atoms, bits);
        if !gamma.evaluate(&v)? {
            continue;
        }
        let signs = issues
            .iter()
            .map(|f| {
                f.evaluate(&v).map(|t| {
                    Some(if t { Sign::Plus } else { Sign::Minus })
                })
            })
            .collect::<Result<Vec<_>>>()?;
        out.insert(JudgmentSet::from_signs(signs));
    }
    Ok(out.into_iter().collect())
}

/// Parse the textual agenda format:
///
/// ```text
/// constraint: q -> r
/// p & r
/// q
/// p & q
/// ```
///
/// or, for extensional agendas:
///
/// ```text
/// extensional
/// p1
/// p2
/// sets:
/// + -
/// - +
/// ```
///
/// Blank lines and `#` comments are ignored.
pub fn parse_agenda(text: &str) -> Result<Arc<Agenda>> {
    parse_agenda_limited(text, AgendaLimits::default())
}

pub fn parse_agenda_limited(text: &str, limits: AgendaLimits) -> Result<Arc<Agenda>> {
    let mut lines = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    let header = lines
        .next()
        .ok_or_else(|| Error::InvalidAgenda("empty agenda file".into()))?;
    if let Some(rest) = header.strip_prefix("constraint:") {
        let gamma = logic::parse_formula(rest)?;
        let issues = lines
            .map(logic::parse_formula)
            .collect::<Result<Vec<_>>>()?;
        Agenda::with_constraint_limited(issues, gamma, limits)
    } else if header == "extensional" {
        let mut issues = Vec::new();
        let mut sets = Vec::new();
        let mut in_sets = false;
        for line in lines {
            if line == "sets:" {
                in_sets = true;
                continue;
            }
            if in_sets {
                sets.push(JudgmentSet::parse(line)?);
            } else {
                issues.push(logic::parse_formula(line)?);
            }
        }
        Agenda::extensional_limited(issues, sets, limits)
    } else {
        Err(Error::InvalidAgenda(format!(
            "agenda file must start with `constraint: <formula>` or `extensional`, found `{header}`"
        )))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::parse_formula;
    use proptest::prelude::*;

    fn example1_agenda() -> Arc<Agenda> {
        Agenda::with_constraint(
            vec![
                parse_formula("p & r").unwrap(),
                parse_formula("q").unwrap(),
                parse_formula("p & q").unwrap(),
            ],
            parse_formula("q -> r").unwrap(),
        )
        .unwrap()
    }

    fn js(text: &str) -> JudgmentSet {
        JudgmentSet::parse(text).unwrap()
    }

    #[test]
    fn constrained_agenda_enumerates_exactly_the_rational_sets() {
        let a = example1_agenda();
        let expected = vec![js("+++"), js("+--"), js("-+-"), js("---")];
        assert_eq!(a.rational_sets(), expected.as_slice());
    }

    #[test]
    fn biconditional_agenda_has_eight_rational_sets() {
        let issues = ["p", "q", "r", "p <-> q", "p <-> r", "q <-> r"]
            .iter()
            .map(|t| parse_formula(t).unwrap())
            .collect();
        let a = Agenda::unconstrained(issues).unwrap();
        assert_eq!(a.rational_sets().len(), 8);
    }

    #[test]
    fn single_issue_agenda() {
        let a = Agenda::unconstrained(vec![parse_formula("p").unwrap()]).unwrap();
        assert_eq!(a.rational_sets(), &[js("+"), js("-")]);
    }

    // Truth-table cross-check of `is_consistent` for the constrained agenda:
    // the oracle evaluates the three issue truths and the constraint by hand
    // over all eight valuations of {p, q, r}.
    #[test]
    fn consistency_matches_truth_table_oracle() {
        let a = example1_agenda();
        let oracle = |signs: [Sign; 3]| -> bool {
            let mut sat = false;
            for bits in 0..8u8 {
                let (p, q, r) = (bits & 1 == 1, bits & 2 == 2, bits & 4 == 4);
                let truths = [p && r, q, p && q];
                let gamma = !q || r;
                let agrees = truths
                    .iter()
                    .zip(signs.iter())
                    .all(|(t, s)| *t == (*s == Sign::Plus));
                if gamma && agrees {
                    sat = true;
                    break;
                }
            }
            sat
        };
        for bits in 0..8u8 {
            let signs = [
                if bits & 1 == 1 { Sign::Plus } else { Sign::Minus },
                if bits & 2 == 2 { Sign::Plus } else { Sign::Minus },
                if bits & 4 == 4 { Sign::Plus } else { Sign::Minus },
            ];
            let j = JudgmentSet::from_signs(signs.iter().map(|s| Some(*s)).collect());
            assert_eq!(a.is_consistent(&j).unwrap(), oracle(signs), "signs {j}");
        }
        assert!(a.is_consistent(&js("-+-")).unwrap());
        assert!(!a.is_consistent(&js("++-")).unwrap());
        assert!(a.is_consistent(&js("???")).unwrap());
    }

    #[test]
    fn extensions_of_partial_sets() {
        let a = example1_agenda();
        // {q, ¬(p∧q)} leaves only the issue p∧r open, and the constraint
        // together with ¬(p∧q) and q forces it negative.
        let partial = js("?+-");
        assert_eq!(a.extensions(&partial).unwrap(), vec![js("-+-")]);
        // Complete rational set extends only to itself.
        assert_eq!(a.extensions(&js("+--")).unwrap(), vec![js("+--")]);
        // Fully undecided extends to every rational set.
        assert_eq!(
            a.extensions(&js("???")).unwrap(),
            a.rational_sets().to_vec()
        );
        assert!(matches!(
            a.extensions(&js("++-")),
            Err(Error::InconsistentInput)
        ));
    }

    #[test]
    fn max_consistent_subsets_of_contradictory_pair() {
        let a = Agenda::unconstrained(vec![parse_formula("p").unwrap()]).unwrap();
        let s = ElementSet::from_elements([(0, Sign::Plus), (0, Sign::Minus)]);
        let subsets = a.max_consistent_subsets(&s).unwrap();
        assert_eq!(
            subsets,
            vec![
                ElementSet::from_elements([(0, Sign::Plus)]),
                ElementSet::from_elements([(0, Sign::Minus)]),
            ]
        );
    }

    #[test]
    fn max_consistent_subsets_of_consistent_set_is_identity() {
        let a = example1_agenda();
        let s = ElementSet::from_judgment_set(&js("-+-"));
        assert_eq!(a.max_consistent_subsets(&s).unwrap(), vec![s]);
    }

    #[test]
    fn maxcard_subsets_brute_force_cross_check() {
        // {p, ¬p, q} over the two-issue agenda {p, q}.
        let a = Agenda::unconstrained(vec![
            parse_formula("p").unwrap(),
            parse_formula("q").unwrap(),
        ])
        .unwrap();
        let s = ElementSet::from_elements([(0, Sign::Plus), (0, Sign::Minus), (1, Sign::Plus)]);
        let got = a.maxcard_consistent_subsets(&s).unwrap();
        assert_eq!(
            got,
            vec![
                ElementSet::from_elements([(0, Sign::Plus), (1, Sign::Plus)]),
                ElementSet::from_elements([(0, Sign::Minus), (1, Sign::Plus)]),
            ]
        );

        // Independent route: enumerate all subsets, check satisfiability of
        // the rendered formulas directly, and keep the largest consistent
        // ones.
        let elems: Vec<(usize, Sign)> = s.iter().collect();
        let mut best = 0usize;
        let mut expected: Vec<ElementSet> = Vec::new();
        for mask in 0u32..1 << elems.len() {
            let chosen: Vec<(usize, Sign)> = elems
                .iter()
                .enumerate()
                .filter(|(b, _)| mask >> b & 1 == 1)
                .map(|(_, &e)| e)
                .collect();
            let formulas: Vec<Formula> = chosen
                .iter()
                .map(|&(i, sign)| a.element_formula(i, sign).unwrap())
                .collect();
            if logic::is_satisfiable(&formulas).unwrap() {
                let set = ElementSet::from_elements(chosen);
                match set.len().cmp(&best) {
                    std::cmp::Ordering::Greater => {
                        best = set.len();
                        expected = vec![set];
                    }
                    std::cmp::Ordering::Equal => expected.push(set),
                    std::cmp::Ordering::Less => {}
                }
            }
        }
        expected.sort();
        assert_eq!(got, expected);
    }

    #[test]
    fn rejects_malformed_agendas() {
        let p = parse_formula("p").unwrap();
        assert!(matches!(
            Agenda::unconstrained(vec![parse_formula("p | !p").unwrap()]),
            Err(Error::InvalidAgenda(_))
        ));
        assert!(matches!(
            Agenda::unconstrained(vec![parse_formula("p & !p").unwrap()]),
            Err(Error::InvalidAgenda(_))
        ));
        assert!(matches!(
            Agenda::unconstrained(vec![p.clone().negated()]),
            Err(Error::InvalidAgenda(_))
        ));
        assert!(matches!(
            Agenda::unconstrained(vec![p.clone(), p.clone()]),
            Err(Error::InvalidAgenda(_))
        ));
        assert!(matches!(
            Agenda::with_constraint(vec![p.clone()], parse_formula("q & !q").unwrap()),
            Err(Error::InvalidAgenda(_))
        ));
        let many: Vec<Formula> = (0..21).map(|i| Formula::atom(format!("a{i}"))).collect();
        assert!(matches!(
            Agenda::unconstrained(many),
            Err(Error::IssueBudget { .. })
        ));
    }

    #[test]
    fn extensional_agenda_sorts_and_validates() {
        let issues: Vec<Formula> = (1..=3).map(|i| Formula::atom(format!("p{i}"))).collect();
        let a = Agenda::extensional(issues.clone(), vec![js("-+-"), js("+--")]).unwrap();
        assert_eq!(a.rational_sets(), &[js("+--"), js("-+-")]);
        assert!(a.is_consistent(&js("?--")).unwrap());
        assert!(!a.is_consistent(&js("++?")).unwrap());
        assert!(matches!(
            Agenda::extensional(issues.clone(), vec![]),
            Err(Error::InvalidAgenda(_))
        ));
        assert!(matches!(
            Agenda::extensional(issues.clone(), vec![js("+-")]),
            Err(Error::InvalidAgenda(_))
        ));
        assert!(matches!(
            Agenda::extensional(issues, vec![js("+--"), js("+--")]),
            Err(Error::InvalidAgenda(_))
        ));
    }

    #[test]
    fn agenda_text_round_trips() {
        let a = example1_agenda();
        assert_eq!(*parse_agenda(&a.to_text()).unwrap(), *a);
        let issues: Vec<Formula> = (1..=2).map(|i| Formula::atom(format!("p{i}"))).collect();
        let e = Agenda::extensional(issues, vec![js("+-"), js("-+")]).unwrap();
        assert_eq!(*parse_agenda(&e.to_text()).unwrap(), *e);
    }

    #[test]
    fn parses_agenda_files() {
        let a = parse_agenda("# running constraint\nconstraint: q -> r\np & r\nq\np & q\n")
            .unwrap();
        assert_eq!(*a, *example1_agenda());
        let b = parse_agenda("extensional\np1\np2\nsets:\n+ -\n- +\n").unwrap();
        assert_eq!(b.rational_sets(), &[js("+-"), js("-+")]);
        assert!(parse_agenda("").is_err());
        assert!(parse_agenda("issues first\np\n").is_err());
    }

    fn arb_sign() -> impl Strategy<Value = Sign> {
        prop_oneof![Just(Sign::Plus), Just(Sign::Minus)]
    }

    proptest! {
        // Every enumerated rational set is complete and consistent, and no
        // complete consistent vector is omitted; the oracle re-derives the
        // set by checking satisfiability of each of the 2^m sign vectors.
        #[test]
        fn enumeration_matches_subset_oracle(issue_bits in 1u8..8) {
            let pool = ["p", "q", "p & q", "p | q"];
            let issues: Vec<Formula> = pool
                .iter()
                .enumerate()
                .filter(|(i, _)| issue_bits >> i & 1 == 1)
                .map(|(_, t)| parse_formula(t).unwrap())
                .collect();
            prop_assume!(!issues.is_empty());
            let a = Agenda::unconstrained(issues.clone()).unwrap();
            let m = issues.len();
            let mut expected = Vec::new();
            for bits in 0..1u32 << m {
                let signs: Vec<Option<Sign>> = (0..m)
                    .map(|i| Some(if bits >> i & 1 == 1 { Sign::Plus } else { Sign::Minus }))
                    .collect();
                let j = JudgmentSet::from_signs(signs);
                let formulas: Vec<Formula> = j
                    .elements()
                    .map(|(i, sign)| a.element_formula(i, sign).unwrap())
                    .collect();
                if logic::is_satisfiable(&formulas).unwrap() {
                    expected.push(j);
                }
            }
            expected.sort();
            prop_assert_eq!(a.rational_sets(), expected.as_slice());
        }

        // MCC ⊆ MC and all MCC members share one cardinality.
        #[test]
        fn maxcard_subset_of_maximal(elems in proptest::collection::btree_set((0usize..3, arb_sign()), 1..6)) {
            let a = Agenda::unconstrained(vec![
                parse_formula("p").unwrap(),
                parse_formula("q").unwrap(),
                parse_formula("p -> q").unwrap(),
            ]).unwrap();
            let s = ElementSet::from_elements(elems);
            let mc = a.max_consistent_subsets(&s).unwrap();
            let mcc = a.maxcard_consistent_subsets(&s).unwrap();
            prop_assert!(!mcc.is_empty());
            let card = mcc[0].len();
            for sub in &mcc {
                prop_assert_eq!(sub.len(), card);
                prop_assert!(mc.contains(sub));
            }
        }

        // ext is antitone: s ⊆ s' implies ext(s') ⊆ ext(s).
        #[test]
        fn extensions_shrink_as_sets_grow(bits in 0u8..27) {
            let a = example1_agenda();
            // Interpret two base-3 digits as partial signs for issues 0 and 1.
            let digit = |d: u8| match d {
                0 => None,
                1 => Some(Sign::Plus),
                _ => Some(Sign::Minus),
            };
            let small = JudgmentSet::from_signs(vec![digit(bits % 3), None, None]);
            let big = JudgmentSet::from_signs(vec![digit(bits % 3), digit((bits / 3) % 3), None]);
            if let (Ok(ext_small), Ok(ext_big)) = (a.extensions(&small), a.extensions(&big)) {
                for j in &ext_big {
                    prop_assert!(ext_small.contains(j));
                }
            }
        }
    }
}
