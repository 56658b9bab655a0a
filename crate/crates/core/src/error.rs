use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },

    #[error("atom `{0}` is not bound in the valuation")]
    UnboundAtom(String),

    #[error("atom budget exceeded: {atoms} atoms, budget {budget}")]
    AtomBudget { atoms: usize, budget: usize },

    #[error("issue budget exceeded: {issues} issues, budget {budget}")]
    IssueBudget { issues: usize, budget: usize },

    #[error("alternative budget exceeded: {alternatives} alternatives, budget {budget}")]
    AlternativeBudget { alternatives: usize, budget: usize },

    #[error("repair budget exceeded: no majority-consistent profile within {budget} reversals")]
    RepairBudget { budget: u64 },

    #[error("tie group of {size} elements exceeds the permutation bound of {bound}")]
    TieGroup { size: usize, bound: usize },

    #[error("invalid agenda: {0}")]
    InvalidAgenda(String),

    #[error("invalid judgment set: {0}")]
    InvalidJudgmentSet(String),

    #[error("invalid profile: {0}")]
    InvalidProfile(String),

    #[error("voter {index} holds a judgment set that is not rational for the agenda")]
    IrrationalVoter { index: usize },

    #[error("issue index {index} out of range for an agenda with {issues} issues")]
    IssueOutOfRange { index: usize, issues: usize },

    #[error("judgment set is not complete")]
    IncompleteJudgmentSet,

    #[error("judgment set is inconsistent with the agenda")]
    InconsistentInput,

    #[error("judgment set is not rational for the agenda")]
    NotRational,

    #[error("the betweenness graph over the rational judgment sets is disconnected")]
    Disconnected,

    #[error("no rational judgment set rejects the given agenda element")]
    NoRejectingSet,

    #[error("invalid distance table: {0}")]
    InvalidDistance(String),

    #[error("invalid score table: {0}")]
    InvalidScore(String),

    #[error("unknown rule id `{0}`")]
    UnknownRule(String),

    #[error("unknown axiom id `{0}`")]
    UnknownAxiom(String),

    #[error("unknown fixture id `{0}`")]
    UnknownFixture(String),

    #[error("invalid preference profile: {0}")]
    InvalidPreferences(String),

    #[error("generator gave up after {attempts} attempts: {goal}")]
    GeneratorExhausted { attempts: usize, goal: String },

    #[error("{context}: {source}")]
    Io {
        context: String,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub fn io(context: impl Into<String>, source: std::io::Error) -> Self {
        Error::Io {
            context: context.into(),
            source,
        }
    }

    /// True for errors caused by one of the configured search budgets.
    pub fn is_budget(&self) -> bool {
        matches!(
            self,
            Error::AtomBudget { .. }
                | Error::IssueBudget { .. }
                | Error::AlternativeBudget { .. }
                | Error::RepairBudget { .. }
                | Error::TieGroup { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
