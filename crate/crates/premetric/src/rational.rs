//! Nonnegative extended rationals: the value set of ordinary premetrics.
//!
//! Serialized as `"p/q"` (or `"p"` for integers) with `"inf"` for the top
//! element. Arithmetic beyond min/max is not needed anywhere in the crate.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::Error;

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub enum ExtRational {
    Finite { num: u64, den: u64 },
    Infinity,
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl ExtRational {
    pub fn new(num: u64, den: u64) -> Self {
        assert!(den != 0, "zero denominator");
        let g = gcd(num, den).max(1);
        ExtRational::Finite {
            num: num / g,
            den: den / g,
        }
    }

    pub fn zero() -> Self {
        ExtRational::new(0, 1)
    }

    pub fn from_int(n: u64) -> Self {
        ExtRational::new(n, 1)
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, ExtRational::Finite { num: 0, .. })
    }
}

impl PartialOrd for ExtRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtRational {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (ExtRational::Infinity, ExtRational::Infinity) => Ordering::Equal,
            (ExtRational::Infinity, _) => Ordering::Greater,
            (_, ExtRational::Infinity) => Ordering::Less,
            (
                ExtRational::Finite { num: a, den: b },
                ExtRational::Finite { num: c, den: d },
            ) => (*a as u128 * *d as u128).cmp(&(*c as u128 * *b as u128)),
        }
    }
}

impl fmt::Display for ExtRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtRational::Infinity => write!(f, "inf"),
            ExtRational::Finite { num, den: 1 } => write!(f, "{num}"),
            ExtRational::Finite { num, den } => write!(f, "{num}/{den}"),
        }
    }
}

impl fmt::Debug for ExtRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for ExtRational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        if s == "inf" {
            return Ok(ExtRational::Infinity);
        }
        let bad = || Error::BadRational(s.to_string());
        match s.split_once('/') {
            None => Ok(ExtRational::from_int(s.parse().map_err(|_| bad())?)),
            Some((p, q)) => {
                let num: u64 = p.parse().map_err(|_| bad())?;
                let den: u64 = q.parse().map_err(|_| bad())?;
                if den == 0 {
                    return Err(bad());
                }
                Ok(ExtRational::new(num, den))
            }
        }
    }
}
