use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A monomial `x_1^{e_1} ... x_m^{e_m}`, stored as its exponent vector.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Monomial {
    exponents: Vec<u32>,
}

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial { exponents }
    }

    pub fn one(m: usize) -> Self {
        Monomial::new(vec![0; m])
    }

    /// The variable `x_j` in a ring with `m` variables.
    pub fn variable(m: usize, j: usize) -> Self {
        let mut e = vec![0; m];
        e[j - 1] = 1;
        Monomial::new(e)
    }

    /// Product of the variables `x_j` for `j` in `indices` (with repetition).
    pub fn from_indices(m: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut e = vec![0; m];
        for j in indices {
            e[j - 1] += 1;
        }
        Monomial::new(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn num_vars(&self) -> usize {
        self.exponents.len()
    }

    pub fn exponent(&self, j: usize) -> u32 {
        self.exponents[j - 1]
    }

    pub fn degree(&self) -> u32 {
        self.exponents.iter().sum()
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exponents.len() == other.exponents.len()
            && self.exponents.iter().zip(&other.exponents).all(|(a, b)| a <= b)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.exponents.len(), other.exponents.len());
        Monomial::new(
            self.exponents
                .iter()
                .zip(&other.exponents)
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial::new(
            self.exponents
                .iter()
                .zip(&other.exponents)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    /// `self / other`, if `other` divides `self`.
    pub fn quotient(&self, other: &Monomial) -> Option<Monomial> {
        other.divides(self).then(|| {
            Monomial::new(
                self.exponents
                    .iter()
                    .zip(&other.exponents)
                    .map(|(a, b)| a - b)
                    .collect(),
            )
        })
    }

    /// Revlex comparison within one degree: `self > other` iff the variable of
    /// largest index appearing in `self / other` has a negative exponent.
    pub fn revlex_cmp(&self, other: &Monomial) -> Result<Ordering> {
        if self.exponents.len() != other.exponents.len() {
            return Err(Error::VariableCountMismatch {
                left: self.exponents.len(),
                right: other.exponents.len(),
            });
        }
        let (left, right) = (self.degree(), other.degree());
        if left != right {
            return Err(Error::DegreeMismatch { left, right });
        }
        Ok(self.revlex_unchecked(other))
    }

    /// Revlex comparison without the degree check; callers guarantee equal degree.
    pub(crate) fn revlex_unchecked(&self, other: &Monomial) -> Ordering {
        for (a, b) in self.exponents.iter().zip(&other.exponents).rev() {
            if a != b {
                // a - b < 0 at the top differing index means self is larger
                return b.cmp(a);
            }
        }
        Ordering::Equal
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (j, &e) in self.exponents.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "x{}", j + 1)?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        if first {
            write!(f, "1")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Monomial {
    /// Parses the `x1^2*x3` rendering in a ring with `m` variables.
    pub fn parse(s: &str, m: usize) -> Result<Monomial> {
        let mut e = vec![0u32; m];
        let s = s.trim();
        if s == "1" {
            return Ok(Monomial::new(e));
        }
        for factor in s.split('*') {
            let factor = factor.trim();
            let body = factor
                .strip_prefix('x')
                .ok_or_else(|| Error::Parse(format!("bad factor {factor:?}")))?;
            let (var, pow) = match body.split_once('^') {
                Some((v, p)) => (v, p),
                None => (body, "1"),
            };
            let j: usize = var
                .parse()
                .map_err(|_| Error::Parse(format!("bad variable in {factor:?}")))?;
            let p: u32 = pow
                .parse()
                .map_err(|_| Error::Parse(format!("bad exponent in {factor:?}")))?;
            if j == 0 || j > m {
                return Err(Error::VertexOutOfRange { vertex: j, n: m });
            }
            e[j - 1] += p;
        }
        Ok(Monomial::new(e))
    }
}

impl FromStr for Monomial {
    type Err = Error;

    /// Parses a comma separated exponent vector such as `1,2,0,1`.
    fn from_str(s: &str) -> Result<Self> {
        s.split(',')
            .map(|t| {
                t.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::Parse(format!("bad exponent {t:?}")))
            })
            .collect::<Result<Vec<_>>>()
            .map(Monomial::new)
    }
}
