use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// An exact non-negative rational `numerator / 2^exponent`, kept normalized
/// (odd numerator, or zero with exponent 0).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct Dyadic {
    numerator: u128,
    exponent: u32,
}

impl Dyadic {
    pub const ZERO: Dyadic = Dyadic { numerator: 0, exponent: 0 };
    pub const ONE: Dyadic = Dyadic { numerator: 1, exponent: 0 };

    pub fn new(numerator: u128, exponent: u32) -> Dyadic {
        if numerator == 0 {
            return Dyadic::ZERO;
        }
        let tz = numerator.trailing_zeros().min(exponent);
        Dyadic { numerator: numerator >> tz, exponent: exponent - tz }
    }

    /// `2^-k`.
    pub fn inverse_pow2(k: u32) -> Dyadic {
        Dyadic { numerator: 1, exponent: k }
    }

    pub fn numerator(self) -> u128 {
        self.numerator
    }

    pub fn exponent(self) -> u32 {
        self.exponent
    }

    pub fn is_zero(self) -> bool {
        self.numerator == 0
    }

    pub fn to_f64(self) -> f64 {
        self.numerator as f64 * 2f64.powi(-(self.exponent as i32))
    }

    /// Exact quotient; `None` unless `other` is a non-zero power of two
    /// times a divisor that keeps the result dyadic.
    pub fn checked_div(self, other: Dyadic) -> Option<Dyadic> {
        if other.is_zero() || !self.numerator.is_multiple_of(other.numerator) {
            return None;
        }
        let num = self.numerator / other.numerator;
        let exp = self.exponent as i64 - other.exponent as i64;
        if exp >= 0 {
            Some(Dyadic::new(num, exp as u32))
        } else {
            num.checked_shl((-exp) as u32).filter(|v| v >> (-exp) as u32 == num).map(|v| Dyadic::new(v, 0))
        }
    }

    pub fn checked_mul(self, other: Dyadic) -> Option<Dyadic> {
        Some(Dyadic::new(self.numerator.checked_mul(other.numerator)?, self.exponent.checked_add(other.exponent)?))
    }

    /// `1 - self`, for values in `[0, 1]`.
    pub fn complement(self) -> Option<Dyadic> {
        let one = 1u128.checked_shl(self.exponent)?;
        one.checked_sub(self.numerator).map(|n| Dyadic::new(n, self.exponent))
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        // compare a/2^p with b/2^q via a·2^q vs b·2^p, shifting the smaller exponent side.
        let (a, b) = (self.numerator, other.numerator);
        if a == 0 || b == 0 {
            return a.cmp(&b);
        }
        if self.exponent >= other.exponent {
            let shift = self.exponent - other.exponent;
            match b.checked_shl(shift).filter(|v| v >> shift == b) {
                Some(bs) => a.cmp(&bs),
                None => Ordering::Less,
            }
        } else {
            let shift = other.exponent - self.exponent;
            match a.checked_shl(shift).filter(|v| v >> shift == a) {
                Some(as_) => as_.cmp(&b),
                None => Ordering::Greater,
            }
        }
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.exponent {
            0 => write!(f, "{}", self.numerator),
            e if e < 128 => write!(f, "{}/{}", self.numerator, 1u128 << e),
            e => write!(f, "{}/2^{}", self.numerator, e),
        }
    }
}

impl FromStr for Dyadic {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || format!("not a dyadic rational: {s:?}");
        let Some((num, den)) = s.split_once('/') else {
            return s.trim().parse::<u128>().map(|n| Dyadic::new(n, 0)).map_err(|_| bad());
        };
        let num: u128 = num.trim().parse().map_err(|_| bad())?;
        let den = den.trim();
        let exponent = if let Some(e) = den.strip_prefix("2^") {
            e.parse::<u32>().map_err(|_| bad())?
        } else {
            let d: u128 = den.parse().map_err(|_| bad())?;
            if !d.is_power_of_two() {
                return Err(bad());
            }
            d.trailing_zeros()
        };
        Ok(Dyadic::new(num, exponent))
    }
}

impl From<Dyadic> for String {
    fn from(d: Dyadic) -> String {
        d.to_string()
    }
}

impl TryFrom<String> for Dyadic {
    type Error = String;

    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalizes_and_compares() {
        assert_eq!(Dyadic::new(2, 2), Dyadic::new(1, 1));
        assert_eq!(Dyadic::new(0, 9), Dyadic::ZERO);
        assert!(Dyadic::new(3, 2) > Dyadic::new(1, 1));
        assert!(Dyadic::inverse_pow2(200) < Dyadic::inverse_pow2(199));
        assert!(Dyadic::inverse_pow2(200) > Dyadic::ZERO);
        assert_eq!(Dyadic::new(3, 2).to_string(), "3/4");
        assert_eq!("3/4".parse::<Dyadic>().unwrap(), Dyadic::new(3, 2));
        assert_eq!("1/2^130".parse::<Dyadic>().unwrap(), Dyadic::inverse_pow2(130));
        assert!("1/3".parse::<Dyadic>().is_err());
    }

    #[test]
    fn division_of_powers_of_two() {
        let q = Dyadic::inverse_pow2(3).checked_div(Dyadic::inverse_pow2(2)).unwrap();
        assert_eq!(q, Dyadic::new(1, 1));
        assert_eq!(Dyadic::ZERO.checked_div(Dyadic::ONE), Some(Dyadic::ZERO));
        assert_eq!(Dyadic::ONE.checked_div(Dyadic::ZERO), None);
        assert_eq!(Dyadic::new(1, 2).complement(), Some(Dyadic::new(3, 2)));
    }
}
