use thiserror::Error;

/// Every failure the library can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("specification error: {0}")]
    Spec(String),

    #[error("p-integrality error: coefficient {coeff} has denominator divisible by {p}{}", at_x_degree(.x_degree))]
    PIntegrality {
        p: u32,
        coeff: String,
        x_degree: Option<u32>,
    },

    #[error("inhomogeneity error: degrees {0} and {1} in one element")]
    Inhomogeneous(i64, i64),

    #[error("degree of zero polynomial is undefined")]
    ZeroDegree,

    #[error("generator index cap exceeded: {0}")]
    IndexCap(String),

    #[error("window underflow: term {0} lies below the truncation window")]
    WindowUnderflow(String),

    #[error("division error: {0}")]
    Division(String),

    #[error("composition error: {0}")]
    Composition(String),

    #[error("reversion error: {0}")]
    Reversion(String),

    #[error("truncation error: {0}")]
    Truncation(String),

    #[error("missing rule for generator {0}")]
    MissingRule(String),

    #[error("rewrite error: {0}")]
    Rewrite(String),

    #[error("precondition error: {0}")]
    Precondition(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("i/o error: {0}")]
    Io(String),
}

fn at_x_degree(x: &Option<u32>) -> String {
    match x {
        Some(n) => format!(" (x-degree {n})"),
        None => String::new(),
    }
}

pub type Result<T> = std::result::Result<T, Error>;
