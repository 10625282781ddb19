use ohom_core::cointerval::Violation;
use ohom_core::Error;
use serde::Serialize;
use serde_json::Value;

/// Output of one subcommand: its verdict and both renderings.
#[derive(Debug, Clone)]
pub struct Report {
    pub ok: bool,
    pub text: String,
    pub json: Value,
}

impl Report {
    pub fn new(ok: bool, text: impl Into<String>, json: impl Serialize) -> Self {
        Report {
            ok,
            text: text.into(),
            json: serde_json::to_value(json).expect("report values serialize"),
        }
    }
}

/// A failure carrying its exit code.
#[derive(Debug)]
pub enum Failure {
    /// Malformed input or arguments (exit 2).
    Usage(String),
    /// A verification that could not be carried out on valid input (exit 1).
    Failed(String),
}

impl Failure {
    pub fn code(&self) -> i32 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Failed(_) => 1,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Failed(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NotCointerval
            | Error::SupportFailed
            | Error::MinimalityFailed
            | Error::EmptyComplex
            | Error::IsSimplex => Failure::Failed(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

pub type Outcome = std::result::Result<Report, Failure>;

pub fn describe_violation(v: &Violation) -> String {
    match v {
        Violation::Containment { i, j, face } => {
            format!("{face} lies in rlk({j}) but not in rlk({i})")
        }
        Violation::Inner { vertex, violation } => {
            format!("inside rlk({vertex}): {}", describe_violation(violation))
        }
    }
}

/// `[a,b,c]` without spaces.
pub fn bracket<T: std::fmt::Display>(items: &[T]) -> String {
    let inner: Vec<String> = items.iter().map(|x| x.to_string()).collect();
    format!("[{}]", inner.join(","))
}
