//! Crate-wide error type.
//!
//! Every fallible operation returns [`Result`]. Variants are grouped by the
//! subsystem that raises them; the CLI maps them onto exit codes (validation
//! errors exit 2, budget/divergence errors exit 3).

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    // ---- local field arithmetic ----
    #[error("flavor mismatch: {0}")]
    FlavorMismatch(String),
    #[error("cannot invert an element indistinguishable from 0 at precision {prec}")]
    InexactZeroInverse { prec: i64 },
    #[error("element indistinguishable from 0 at precision {prec}")]
    InexactZero { prec: i64 },
    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),

    // ---- twisted polynomials / matrices ----
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    // ---- T-modules ----
    #[error("constant term is not T*1 + nilpotent: {0}")]
    NotNilpotent(String),
    #[error("bad constant term: {0}")]
    BadConstantTerm(String),
    #[error("no such root: {0}")]
    NoSuchRoot(String),
    #[error("j-invariant search exhausted; module validation is broken")]
    JSearchExhausted,
    #[error("basis vectors are linearly dependent")]
    DependentBasis,
    #[error("inseparable: the differential of phi(a) is singular")]
    Inseparable,
    #[error("extension budget exceeded: {0}")]
    ExtensionBudgetExceeded(String),
    #[error("newton lift diverged: {0}")]
    LiftDivergence(String),

    // ---- exponential map ----
    #[error("sylvester system singular; module data is corrupt")]
    SylvesterSingular,
    #[error("exponential series diverges at this point: {0}")]
    ExpDivergence(String),
    #[error("truncation insufficient: {0}")]
    TruncationInsufficient(String),
    #[error("constant polynomial not allowed here")]
    ConstantPolynomial,
    #[error("hypothesis failed: {0}")]
    HypothesisFailed(String),

    // ---- hensel / implicit functions ----
    #[error("evaluation diverges: {0}")]
    EvaluationDivergence(String),
    #[error("jacobian singular at working precision")]
    SingularJacobian,
    #[error("hensel condition failed: v(F) = {residual} not > 2*v(det J) = {jacdet2}")]
    HenselConditionFailed { residual: i64, jacdet2: i64 },
    #[error("no invertible column block: {0}")]
    SingularBlock(String),

    // ---- counting ----
    #[error("subdivision budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("kernel unexpectedly empty")]
    KernelEmpty,
    #[error("insufficient data: {0}")]
    InsufficientData(String),

    // ---- plumbing ----
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invalid parameter: {0}")]
    Invalid(String),
    #[error("arithmetic overflow: {0}")]
    Overflow(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }

    /// Exit-code class used by the CLI: 2 for validation/parse errors,
    /// 3 for budget and divergence errors hit during a run.
    pub fn exit_code(&self) -> i32 {
        use Error::*;
        match self {
            Parse { .. } | Invalid(_) | FlavorMismatch(_) | DimensionMismatch(_)
            | NotNilpotent(_) | BadConstantTerm(_) | DependentBasis | ConstantPolynomial
            | HypothesisFailed(_) | InsufficientData(_) => 2,
            _ => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
