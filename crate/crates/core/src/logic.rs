//! Propositional language: parsing, printing, evaluation, and satisfiability
//! by exhaustive model enumeration.
//!
//! Satisfiability deliberately uses a truth-table sweep instead of a SAT
//! solver: instances stay at desk scale, and the atom budget guards against
//! anything bigger.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};

/// Default cap on the number of distinct atoms a satisfiability query may
/// range over (`2^24` valuations at most).
pub const DEFAULT_ATOM_BUDGET: usize = 24;

/// A propositional formula over named atoms.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Top,
    Bottom,
    Atom(String),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
}

impl Formula {
    pub fn atom(name: impl Into<String>) -> Self {
        Formula::Atom(name.into())
    }

    /// Negation with the `¬¬φ = φ` convention applied.
    pub fn negated(self) -> Self {
        match self {
            Formula::Not(inner) => *inner,
            other => Formula::Not(Box::new(other)),
        }
    }

    pub fn and(lhs: Formula, rhs: Formula) -> Self {
        Formula::And(Box::new(lhs), Box::new(rhs))
    }

    pub fn or(lhs: Formula, rhs: Formula) -> Self {
        Formula::Or(Box::new(lhs), Box::new(rhs))
    }

    pub fn implies(lhs: Formula, rhs: Formula) -> Self {
        Formula::Implies(Box::new(lhs), Box::new(rhs))
    }

    pub fn iff(lhs: Formula, rhs: Formula) -> Self {
        Formula::Iff(Box::new(lhs), Box::new(rhs))
    }

    /// Conjunction of a sequence of formulas; `⊤` when empty.
    pub fn conjunction(parts: impl IntoIterator<Item = Formula>) -> Self {
        let mut iter = parts.into_iter();
        match iter.next() {
            None => Formula::Top,
            Some(first) => iter.fold(first, Formula::and),
        }
    }

    /// Disjunction of a sequence of formulas; `⊥` when empty.
    pub fn disjunction(parts: impl IntoIterator<Item = Formula>) -> Self {
        let mut iter = parts.into_iter();
        match iter.next() {
            None => Formula::Bottom,
            Some(first) => iter.fold(first, Formula::or),
        }
    }

    pub fn is_negation(&self) -> bool {
        matches!(self, Formula::Not(_))
    }

    /// The set of atom names occurring in the formula, in name order.
    pub fn atoms(&self) -> BTreeSet<&str> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms<'a>(&'a self, out: &mut BTreeSet<&'a str>) {
        match self {
            Formula::Top | Formula::Bottom => {}
            Formula::Atom(name) => {
                out.insert(name.as_str());
            }
            Formula::Not(inner) => inner.collect_atoms(out),
            Formula::And(a, b)
            | Formula::Or(a, b)
            | Formula::Implies(a, b)
            | Formula::Iff(a, b) => {
                a.collect_atoms(out);
                b.collect_atoms(out);
            }
        }
    }

    /// Truth-functional evaluation under a valuation.
    pub fn evaluate(&self, valuation: &Valuation) -> Result<bool> {
        Ok(match self {
            Formula::Top => true,
            Formula::Bottom => false,
            Formula::Atom(name) => valuation
                .get(name)
                .ok_or_else(|| Error::UnboundAtom(name.clone()))?,
            Formula::Not(inner) => !inner.evaluate(valuation)?,
            Formula::And(a, b) => a.evaluate(valuation)? && b.evaluate(valuation)?,
            Formula::Or(a, b) => a.evaluate(valuation)? || b.evaluate(valuation)?,
            Formula::Implies(a, b) => !a.evaluate(valuation)? || b.evaluate(valuation)?,
            Formula::Iff(a, b) => a.evaluate(valuation)? == b.evaluate(valuation)?,
        })
    }

    fn precedence(&self) -> u8 {
        match self {
            Formula::Iff(..) => 0,
            Formula::Implies(..) => 1,
            Formula::Or(..) => 2,
            Formula::And(..) => 3,
            Formula::Not(..) => 4,
            Formula::Top | Formula::Bottom | Formula::Atom(_) => 5,
        }
    }

    fn fmt_prec(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        let prec = self.precedence();
        if prec < min {
            write!(f, "(")?;
        }
        match self {
            Formula::Top => write!(f, "T")?,
            Formula::Bottom => write!(f, "F")?,
            Formula::Atom(name) => write!(f, "{name}")?,
            Formula::Not(inner) => {
                write!(f, "!")?;
                inner.fmt_prec(f, 4)?;
            }
            Formula::And(a, b) => {
                a.fmt_prec(f, 3)?;
                write!(f, " & ")?;
                b.fmt_prec(f, 4)?;
            }
            Formula::Or(a, b) => {
                a.fmt_prec(f, 2)?;
                write!(f, " | ")?;
                b.fmt_prec(f, 3)?;
            }
            Formula::Implies(a, b) => {
                a.fmt_prec(f, 2)?;
                write!(f, " -> ")?;
                b.fmt_prec(f, 1)?;
            }
            Formula::Iff(a, b) => {
                a.fmt_prec(f, 0)?;
                write!(f, " <-> ")?;
                b.fmt_prec(f, 1)?;
            }
        }
        if prec < min {
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_prec(f, 0)
    }
}

/// Total assignment of truth values to a set of atoms.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Valuation {
    assignment: BTreeMap<String, bool>,
}

impl Valuation {
    pub fn new() -> Self {
        Valuation::default()
    }

    pub fn set(&mut self, atom: impl Into<String>, value: bool) {
        self.assignment.insert(atom.into(), value);
    }

    pub fn with(mut self, atom: impl Into<String>, value: bool) -> Self {
        self.set(atom, value);
        self
    }

    pub fn get(&self, atom: &str) -> Option<bool> {
        self.assignment.get(atom).copied()
    }

    /// Valuation over `atoms` read off the low bits of `bits`
    /// (bit `i` is the value of `atoms[i]`).
    pub fn from_bits(atoms: &[&str], bits: u64) -> Self {
        let mut v = Valuation::new();
        for (i, atom) in atoms.iter().enumerate() {
            v.set(*atom, bits >> i & 1 == 1);
        }
        v
    }
}

/// Satisfiability of a formula set with the default atom budget.
pub fn is_satisfiable(formulas: &[Formula]) -> Result<bool> {
    is_satisfiable_within(formulas, DEFAULT_ATOM_BUDGET)
}

/// True iff some valuation over the union of atoms satisfies every formula.
pub fn is_satisfiable_within(formulas: &[Formula], atom_budget: usize) -> Result<bool> {
    let mut atoms = BTreeSet::new();
    for f in formulas {
        f.collect_atoms(&mut atoms);
    }
    if atoms.len() > atom_budget {
        return Err(Error::AtomBudget {
            atoms: atoms.len(),
            budget: atom_budget,
        });
    }
    let atoms: Vec<&str> = atoms.into_iter().collect();
    for bits in 0..1u64 << atoms.len() {
        let v = Valuation::from_bits(&atoms, bits);
        let mut all = true;
        for f in formulas {
            if !f.evaluate(&v)? {
                all = false;
                break;
            }
        }
        if all {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Parse a formula in the ASCII grammar: `!` not, `&` and, `|` or,
/// `->` implies (right-associative), `<->` iff, `T`/`F` constants,
/// atoms `[a-zA-Z_][a-zA-Z0-9_]*`, parentheses.
pub fn parse_formula(text: &str) -> Result<Formula> {
    let tokens = tokenize(text)?;
    if tokens.is_empty() {
        return Err(Error::Syntax {
            offset: 0,
            message: "empty input".into(),
        });
    }
    let mut parser = Parser { tokens, pos: 0 };
    let formula = parser.parse_iff()?;
    if let Some(tok) = parser.peek() {
        return Err(Error::Syntax {
            offset: tok.offset,
            message: format!("unexpected `{}`", tok.kind),
        });
    }
    Ok(formula)
}

#[derive(Debug, Clone, PartialEq)]
enum TokenKind {
    LParen,
    RParen,
    Not,
    And,
    Or,
    Arrow,
    DoubleArrow,
    Top,
    Bottom,
    Ident(String),
}

impl fmt::Display for TokenKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TokenKind::LParen => write!(f, "("),
            TokenKind::RParen => write!(f, ")"),
            TokenKind::Not => write!(f, "!"),
            TokenKind::And => write!(f, "&"),
            TokenKind::Or => write!(f, "|"),
            TokenKind::Arrow => write!(f, "->"),
            TokenKind::DoubleArrow => write!(f, "<->"),
            TokenKind::Top => write!(f, "T"),
            TokenKind::Bottom => write!(f, "F"),
            TokenKind::Ident(name) => write!(f, "{name}"),
        }
    }
}

#[derive(Debug, Clone)]
struct Token {
    kind: TokenKind,
    offset: usize,
}

fn tokenize(text: &str) -> Result<Vec<Token>> {
    let bytes = text.as_bytes();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        match b {
            b' ' | b'\t' | b'\r' | b'\n' => i += 1,
            b'(' => {
                tokens.push(Token { kind: TokenKind::LParen, offset: i });
                i += 1;
            }
            b')' => {
                tokens.push(Token { kind: TokenKind::RParen, offset: i });
                i += 1;
            }
            b'!' => {
                tokens.push(Token { kind: TokenKind::Not, offset: i });
                i += 1;
            }
            b'&' => {
                tokens.push(Token { kind: TokenKind::And, offset: i });
                i += 1;
            }
            b'|' => {
                tokens.push(Token { kind: TokenKind::Or, offset: i });
                i += 1;
            }
            b'-' => {
                if bytes.get(i + 1) == Some(&b'>') {
                    tokens.push(Token { kind: TokenKind::Arrow, offset: i });
                    i += 2;
                } else {
                    return Err(Error::Syntax {
                        offset: i,
                        message: "expected `->`".into(),
                    });
                }
            }
            b'<' => {
                if bytes.get(i + 1) == Some(&b'-') && bytes.get(i + 2) == Some(&b'>') {
                    tokens.push(Token { kind: TokenKind::DoubleArrow, offset: i });
                    i += 3;
                } else {
                    return Err(Error::Syntax {
                        offset: i,
                        message: "expected `<->`".into(),
                    });
                }
            }
            b'A'..=b'Z' | b'a'..=b'z' | b'_' => {
                let start = i;
                while i < bytes.len()
                    && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_')
                {
                    i += 1;
                }
                let name = &text[start..i];
                let kind = match name {
                    "T" => TokenKind::Top,
                    "F" => TokenKind::Bottom,
                    _ => TokenKind::Ident(name.to_string()),
                };
                tokens.push(Token { kind, offset: start });
            }
            _ => {
                return Err(Error::Syntax {
                    offset: i,
                    message: format!("unexpected character `{}`", bytes[i] as char),
                });
            }
        }
    }
    Ok(tokens)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn advance(&mut self) -> Option<Token> {
        let tok = self.tokens.get(self.pos).cloned();
        if tok.is_some() {
            self.pos += 1;
        }
        tok
    }

    fn end_offset(&self) -> usize {
        self.tokens
            .last()
            .map(|t| t.offset + t.kind.to_string().len())
            .unwrap_or(0)
    }

    fn parse_iff(&mut self) -> Result<Formula> {
        let mut lhs = self.parse_implies()?;
        while matches!(self.peek().map(|t| &t.kind), Some(TokenKind::DoubleArrow)) {
            self.advance();
            let rhs = self.parse_implies()?;
            lhs = Formula::iff(lhs, rhs);
        }
        Ok(lhs)
    }

    fn parse_implies(&mut self) -> Result<Formula> {
        let lhs = self.parse_or()?;
        if matches!(self.peek().map(|t| &t.kind), Some(TokenKind::Arrow)) {
            self.advance();
            let rhs = self.parse_implies()?;
            return Ok(Formula::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn parse_or(&mut self) -> Result<Formula> {
        let mut lhs = self.parse_and()?;
        while matches!(self.peek().map(|t| &t.kind), Some(TokenKind::Or)) {
            self.advance();
            let rhs = self.parse_and()?;
            lhs = Formula::or(lhs, rhs);
        }
        Ok(lhs)
    }

    fn parse_and(&mut self) -> Result<Formula> {
        let mut lhs = self.parse_unary()?;
        while matches!(self.peek().map(|t| &t.kind), Some(TokenKind::And)) {
            self.advance();
            let rhs = self.parse_unary()?;
            lhs = Formula::and(lhs, rhs);
        }
        Ok(lhs)
    }

    fn parse_unary(&mut self) -> Result<Formula> {
        if matches!(self.peek().map(|t| &t.kind), Some(TokenKind::Not)) {
            self.advance();
            let inner = self.parse_unary()?;
            return Ok(inner.negated());
        }
        self.parse_primary()
    }

    fn parse_primary(&mut self) -> Result<Formula> {
        let end = self.end_offset();
        let tok = self.advance().ok_or(Error::Syntax {
            offset: end,
            message: "unexpected end of input".into(),
        })?;
        match tok.kind {
            TokenKind::Top => Ok(Formula::Top),
            TokenKind::Bottom => Ok(Formula::Bottom),
            TokenKind::Ident(name) => Ok(Formula::Atom(name)),
            TokenKind::LParen => {
                let inner = self.parse_iff()?;
                match self.advance() {
                    Some(Token { kind: TokenKind::RParen, .. }) => Ok(inner),
                    Some(t) => Err(Error::Syntax {
                        offset: t.offset,
                        message: format!("expected `)`, found `{}`", t.kind),
                    }),
                    None => Err(Error::Syntax {
                        offset: self.end_offset(),
                        message: "expected `)`".into(),
                    }),
                }
            }
            kind => Err(Error::Syntax {
                offset: tok.offset,
                message: format!("unexpected `{kind}`"),
            }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p() -> Formula {
        Formula::atom("p")
    }
    fn q() -> Formula {
        Formula::atom("q")
    }
    fn r() -> Formula {
        Formula::atom("r")
    }

    #[test]
    fn parses_conjunction() {
        assert_eq!(parse_formula("p & r").unwrap(), Formula::and(p(), r()));
    }

    #[test]
    fn parses_implication() {
        assert_eq!(parse_formula("q -> r").unwrap(), Formula::implies(q(), r()));
    }

    #[test]
    fn parses_left_associative_conjunction_chain() {
        // (p & !q & r) & !q
        let expected = Formula::and(
            Formula::and(Formula::and(p(), q().negated()), r()),
            q().negated(),
        );
        assert_eq!(parse_formula("(p & !q & r) & !q").unwrap(), expected);
    }

    #[test]
    fn implication_is_right_associative() {
        assert_eq!(
            parse_formula("p -> q -> r").unwrap(),
            Formula::implies(p(), Formula::implies(q(), r()))
        );
    }

    #[test]
    fn precedence_not_and_or_implies_iff() {
        // !p & q | r -> s <-> t  ==  (((!p & q) | r) -> s) <-> t
        let lhs = Formula::implies(
            Formula::or(Formula::and(p().negated(), q()), r()),
            Formula::atom("s"),
        );
        assert_eq!(
            parse_formula("!p & q | r -> s <-> t").unwrap(),
            Formula::iff(lhs, Formula::atom("t"))
        );
    }

    #[test]
    fn double_negation_collapses_at_parse_time() {
        assert_eq!(parse_formula("!!p").unwrap(), p());
        assert_eq!(parse_formula("!!!p").unwrap(), p().negated());
    }

    #[test]
    fn constants_are_reserved() {
        assert_eq!(parse_formula("T").unwrap(), Formula::Top);
        assert_eq!(parse_formula("F").unwrap(), Formula::Bottom);
        // But identifiers merely containing them are atoms.
        assert_eq!(parse_formula("Tr").unwrap(), Formula::atom("Tr"));
    }

    #[test]
    fn syntax_errors_carry_byte_offsets() {
        match parse_formula("") {
            Err(Error::Syntax { offset, .. }) => assert_eq!(offset, 0),
            other => panic!("expected syntax error, got {other:?}"),
        }
        match parse_formula("p @ q") {
            Err(Error::Syntax { offset, .. }) => assert_eq!(offset, 2),
            other => panic!("expected syntax error, got {other:?}"),
        }
        match parse_formula("p &") {
            Err(Error::Syntax { offset, .. }) => assert_eq!(offset, 3),
            other => panic!("expected syntax error, got {other:?}"),
        }
        assert!(parse_formula("(p").is_err());
        assert!(parse_formula("p q").is_err());
    }

    #[test]
    fn evaluates_standard_semantics() {
        let v = Valuation::new().with("p", true).with("q", false);
        assert!(!Formula::and(p(), q()).evaluate(&v).unwrap());
        let v = Valuation::new().with("q", true).with("r", true);
        assert!(Formula::implies(q(), r()).evaluate(&v).unwrap());
        assert!(Formula::Top.evaluate(&Valuation::new()).unwrap());
        assert!(!Formula::Bottom.evaluate(&Valuation::new()).unwrap());
    }

    #[test]
    fn evaluate_rejects_missing_atom() {
        let v = Valuation::new().with("p", true);
        assert!(matches!(
            Formula::and(p(), q()).evaluate(&v),
            Err(Error::UnboundAtom(name)) if name == "q"
        ));
    }

    /// Pairwise transitivity constraint over 3 alternatives, rejected on a
    /// cyclic valuation. The cross-check evaluates every implication
    /// separately instead of relying on the conjunction structure.
    #[test]
    fn transitivity_conjunction_rejects_cycle() {
        let atom = |i: usize, j: usize| {
            // Atom for i<j; the reversed comparison is the negation.
            if i < j {
                Formula::atom(format!("x{i}Px{j}"))
            } else {
                Formula::atom(format!("x{j}Px{i}")).negated()
            }
        };
        let mut conjuncts = Vec::new();
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    if i != j && j != k && i != k {
                        conjuncts.push(Formula::implies(
                            Formula::and(atom(i, j), atom(j, k)),
                            atom(i, k),
                        ));
                    }
                }
            }
        }
        let tr = Formula::conjunction(conjuncts.iter().cloned());
        // Cycle: x0 > x1, x1 > x2, x2 > x0.
        let cycle = Valuation::new()
            .with("x0Px1", true)
            .with("x1Px2", true)
            .with("x0Px2", false);
        assert!(!tr.evaluate(&cycle).unwrap());
        let each: Vec<bool> = conjuncts
            .iter()
            .map(|c| c.evaluate(&cycle).unwrap())
            .collect();
        assert_eq!(tr.evaluate(&cycle).unwrap(), each.iter().all(|b| *b));
        // A linear order satisfies all conjuncts.
        let linear = Valuation::new()
            .with("x0Px1", true)
            .with("x1Px2", true)
            .with("x0Px2", true);
        assert!(tr.evaluate(&linear).unwrap());
    }

    #[test]
    fn satisfiability_examples() {
        assert!(!is_satisfiable(&[p(), p().negated()]).unwrap());
        // p∧r, q, ¬(p∧q) has no model.
        assert!(!is_satisfiable(&[
            Formula::and(p(), r()),
            q(),
            Formula::and(p(), q()).negated(),
        ])
        .unwrap());
        // p∧r, ¬q, ¬(p∧q), q→r has one.
        assert!(is_satisfiable(&[
            Formula::and(p(), r()),
            q().negated(),
            Formula::and(p(), q()).negated(),
            Formula::implies(q(), r()),
        ])
        .unwrap());
        assert!(is_satisfiable(&[]).unwrap());
    }

    #[test]
    fn satisfiability_enforces_atom_budget() {
        // Negated atoms, so the all-false valuation is a model and the
        // relaxed-budget sweep stops immediately.
        let formulas: Vec<Formula> = (0..25)
            .map(|i| Formula::atom(format!("a{i}")).negated())
            .collect();
        match is_satisfiable(&formulas) {
            Err(Error::AtomBudget { atoms, budget }) => {
                assert_eq!(atoms, 25);
                assert_eq!(budget, DEFAULT_ATOM_BUDGET);
            }
            other => panic!("expected budget error, got {other:?}"),
        }
        assert!(is_satisfiable_within(&formulas, 25).unwrap());
    }

    fn formula_strategy() -> impl Strategy<Value = Formula> {
        let leaf = prop_oneof![
            Just(Formula::Top),
            Just(Formula::Bottom),
            prop_oneof![Just("p"), Just("q"), Just("r"), Just("s")]
                .prop_map(Formula::atom),
        ];
        leaf.prop_recursive(3, 24, 2, |inner| {
            prop_oneof![
                inner.clone().prop_map(Formula::negated),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::or(a, b)),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::implies(a, b)),
                (inner.clone(), inner).prop_map(|(a, b)| Formula::iff(a, b)),
            ]
        })
    }

    proptest! {
        #[test]
        fn print_parse_round_trip(f in formula_strategy()) {
            let printed = f.to_string();
            let reparsed = parse_formula(&printed).unwrap();
            prop_assert_eq!(reparsed, f);
        }

        #[test]
        fn negation_flips_evaluation(f in formula_strategy(), bits in 0u64..16) {
            let v = Valuation::from_bits(&["p", "q", "r", "s"], bits);
            let value = f.evaluate(&v).unwrap();
            let negated = f.clone().negated().evaluate(&v).unwrap();
            prop_assert_eq!(value, !negated);
        }

        #[test]
        fn unsatisfiability_is_monotone_under_superset(
            fs in proptest::collection::vec(formula_strategy(), 1..4),
            extra in formula_strategy(),
        ) {
            if !is_satisfiable(&fs).unwrap() {
                let mut bigger = fs.clone();
                bigger.push(extra);
                prop_assert!(!is_satisfiable(&bigger).unwrap());
            }
        }
    }
}
