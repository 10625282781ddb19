use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::rank::{rank_gf2, rank_rational, SparseMatrix};
use crate::error::Error;

/// Coefficient field for chain complexes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FieldTag {
    Rationals,
    Gf2,
}

impl FieldTag {
    pub const ALL: [FieldTag; 2] = [FieldTag::Rationals, FieldTag::Gf2];

    pub fn backend(self) -> &'static dyn RankBackend {
        match self {
            FieldTag::Rationals => &Rationals,
            FieldTag::Gf2 => &Gf2,
        }
    }
}

impl fmt::Display for FieldTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.backend().name())
    }
}

impl FromStr for FieldTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        rank_backends()
            .iter()
            .find(|b| b.aliases().contains(&s.to_ascii_lowercase().as_str()))
            .map(|b| b.field())
            .ok_or_else(|| Error::Parse(format!("unknown field {s:?} (expected q or gf2)")))
    }
}

/// Exact rank computation over one coefficient field.
pub trait RankBackend: Send + Sync {
    fn field(&self) -> FieldTag;
    fn name(&self) -> &'static str;
    fn aliases(&self) -> &'static [&'static str];
    /// Canonical representative of an integer incidence number.
    fn reduce(&self, value: i64) -> i64;
    fn rank(&self, m: &SparseMatrix) -> usize;
}

struct Rationals;
struct Gf2;

impl RankBackend for Rationals {
    fn field(&self) -> FieldTag {
        FieldTag::Rationals
    }
    fn name(&self) -> &'static str {
        "q"
    }
    fn aliases(&self) -> &'static [&'static str] {
        &["q", "rationals", "rational"]
    }
    fn reduce(&self, value: i64) -> i64 {
        value
    }
    fn rank(&self, m: &SparseMatrix) -> usize {
        rank_rational(m)
    }
}

impl RankBackend for Gf2 {
    fn field(&self) -> FieldTag {
        FieldTag::Gf2
    }
    fn name(&self) -> &'static str {
        "gf2"
    }
    fn aliases(&self) -> &'static [&'static str] {
        &["gf2", "f2", "z2"]
    }
    fn reduce(&self, value: i64) -> i64 {
        value.rem_euclid(2)
    }
    fn rank(&self, m: &SparseMatrix) -> usize {
        rank_gf2(m)
    }
}

/// All registered rank backends.
pub fn rank_backends() -> [&'static dyn RankBackend; 2] {
    [&Rationals, &Gf2]
}
