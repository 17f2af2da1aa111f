use thiserror::Error;

/// A named hypothesis on the parameters `(alpha, beta, gamma)` or on the branch.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Hypothesis {
    /// `alpha`, `beta` and `gamma - 1` all lie in `p Z_(p)`.
    ParamsInPZ,
    /// `beta != 0`.
    BetaNonzero,
    /// `gamma` is not a nonpositive integer.
    GammaNotNonpositiveInteger,
    /// `alpha + beta - gamma` is not a nonzero integer.
    SumNotNonzeroInteger,
    /// `alpha - beta` is not a nonzero integer.
    DifferenceNotNonzeroInteger,
    /// The chosen value of `Log(p)` lies in `Z_p`.
    BranchInZp,
    /// `|alpha Log(p)|_p < p^{-1/(p-1)}` and the same for `beta`.
    BranchSmallAgainstParams,
    /// The exponent of a power map satisfies `|lambda|_p < 1`.
    ExponentSmall,
    /// The exponent and the branch satisfy `|lambda Log(p)|_p < p^{-1/(p-1)}`.
    ExponentTimesBranchSmall,
    /// The prime is odd (the disk around 1 needs `e_K < p - 1`).
    OddPrime,
    /// The left-hand side is a polynomial, so its values on every disk are known.
    PolynomialLhs,
}

impl Hypothesis {
    pub fn name(self) -> &'static str {
        match self {
            Hypothesis::ParamsInPZ => "params_in_pZ",
            Hypothesis::BetaNonzero => "beta_nonzero",
            Hypothesis::GammaNotNonpositiveInteger => "gamma_not_nonpositive_int",
            Hypothesis::SumNotNonzeroInteger => "a_plus_b_minus_c_not_nonzero_int",
            Hypothesis::DifferenceNotNonzeroInteger => "a_minus_b_not_nonzero_int",
            Hypothesis::BranchInZp => "branch_in_Zp",
            Hypothesis::BranchSmallAgainstParams => "branch_small_against_params",
            Hypothesis::ExponentSmall => "exponent_small",
            Hypothesis::ExponentTimesBranchSmall => "exponent_times_branch_small",
            Hypothesis::OddPrime => "odd_prime",
            Hypothesis::PolynomialLhs => "polynomial_lhs",
        }
    }
}

impl std::fmt::Display for Hypothesis {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("precision must be at least 1")]
    ZeroPrecision,
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("division by exact zero")]
    DivisionByZero,
    #[error("operands live in different contexts (p={left_p}, N={left_n} vs p={right_p}, N={right_n})")]
    ContextMismatch {
        left_p: u64,
        left_n: u32,
        right_p: u64,
        right_n: u32,
    },
    #[error("{0} is not a p-adic unit")]
    NotAUnit(String),
    #[error("{0} is not in Z_p")]
    NotInZp(String),
    #[error("{0} is not in Z_(p)")]
    NotInZpLocal(String),
    #[error("logarithm of zero")]
    LogOfZero,
    #[error("exponential outside its disk: valuation {valuation}, need at least {required}")]
    ExpDomain { valuation: i64, required: i64 },
    #[error("hypothesis {flag} fails; required by {requirement}")]
    Hypothesis {
        flag: Hypothesis,
        requirement: &'static str,
    },
    #[error("z = {0} is not in the disk required by {1}")]
    WrongDisk(String, &'static str),
    #[error("z = {0} lies on a residue disk around a root of unity other than 1; {1}")]
    UnsupportedDisk(String, &'static str),
    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),
    #[error("p^N = {pn} exceeds the work cap {cap} (set PADIC_HG_MAX_PN to raise it)")]
    WorkCap { pn: u128, cap: u128 },
    #[error("gamma ratio arguments do not balance: s1+s2 != s3+s4")]
    UnbalancedRatio,
    #[error("gamma ratio argument {0} has valuation below 1")]
    RatioArgumentValuation(String),
    #[error("the Teichmueller iteration did not stabilize")]
    TeichmullerUnstable,
    #[error("degenerate sample geometry: {0}")]
    DegenerateSamples(String),
    #[error("digit sum T(eta; {0}) is undefined: eta is a nonnegative integer")]
    UndefinedDigitSum(usize),
    #[error("digit expansion needs more than {0} digits")]
    DepthExhausted(usize),
    #[error("word {0} does not end in T1")]
    NotInMPrime(String),
    #[error("series is not divisible by the variable {0}")]
    NotDivisible(&'static str),
    #[error("series inverse needs a nonzero constant term")]
    NotInvertible,
    #[error("lower parameter has nonpositive integer constant term")]
    PoleInLowerParameter,
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
