//! Scalar abstraction for edge costs.
//!
//! All cost arithmetic is exact: integers for TSPLIB-style instances,
//! rationals when closures of rational inputs are needed. Ratios (asymmetry
//! factors, beta thresholds, approximation ratios) always live in [`Frac`]
//! regardless of the cost scalar, and are only rendered as decimals when a
//! report is written.

use std::fmt::{Debug, Display};
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::{FromPrimitive, Num, Signed};

/// Exact rational used for asymmetry factors, beta thresholds and ratio
/// bookkeeping. i128 keeps cross-multiplied TSPLIB costs comfortably in range.
pub type Frac = Ratio<i128>;

/// Edge-cost scalar. Instances are non-negative, but intermediate values in
/// arborescence contraction may go negative, so the scalar must be signed.
pub trait Weight:
    Num + Signed + Ord + Clone + Debug + Display + FromPrimitive + Send + Sync + 'static
{
    /// Exact rational view of the value, used for factor computations.
    fn to_frac(&self) -> Frac;
}

impl Weight for i64 {
    fn to_frac(&self) -> Frac {
        Frac::from_integer(*self as i128)
    }
}

impl Weight for i128 {
    fn to_frac(&self) -> Frac {
        Frac::from_integer(*self)
    }
}

impl Weight for Ratio<i64> {
    fn to_frac(&self) -> Frac {
        Frac::new(*self.numer() as i128, *self.denom() as i128)
    }
}

/// Asymmetry threshold: a finite rational >= 1, or the infinite sentinel
/// under which every edge counts as symmetric.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Beta {
    Finite(Frac),
    Infinite,
}

impl Beta {
    pub const ONE: Beta = Beta::Finite(Frac::new_raw(1, 1));

    pub fn finite(numer: i128, denom: i128) -> Beta {
        Beta::Finite(Frac::new(numer, denom))
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Beta::Infinite)
    }

    /// True when `factor` exceeds this threshold (always false for the
    /// infinite sentinel).
    pub fn exceeded_by(&self, factor: &Frac) -> bool {
        match self {
            Beta::Finite(b) => factor > b,
            Beta::Infinite => false,
        }
    }
}

impl PartialOrd for Beta {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Beta {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        use Beta::*;
        match (self, other) {
            (Infinite, Infinite) => std::cmp::Ordering::Equal,
            (Infinite, Finite(_)) => std::cmp::Ordering::Greater,
            (Finite(_), Infinite) => std::cmp::Ordering::Less,
            (Finite(a), Finite(b)) => a.cmp(b),
        }
    }
}

impl Display for Beta {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Beta::Finite(b) => write!(f, "{}", b),
            Beta::Infinite => write!(f, "inf"),
        }
    }
}

impl FromStr for Beta {
    type Err = String;

    /// Accepts `inf`, a fraction `a/b`, an integer, or a decimal like `1.5`
    /// (parsed exactly).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("inf") || s == "∞" {
            return Ok(Beta::Infinite);
        }
        let frac = parse_frac(s)?;
        if frac < Frac::from_integer(1) {
            return Err(format!("beta must be >= 1, got {}", s));
        }
        Ok(Beta::Finite(frac))
    }
}

/// Parse `a/b`, an integer, or a decimal string into an exact rational.
pub fn parse_frac(s: &str) -> Result<Frac, String> {
    let s = s.trim();
    if let Some((num, den)) = s.split_once('/') {
        let n: i128 = num.trim().parse().map_err(|_| format!("bad numerator in {:?}", s))?;
        let d: i128 = den.trim().parse().map_err(|_| format!("bad denominator in {:?}", s))?;
        if d == 0 {
            return Err(format!("zero denominator in {:?}", s));
        }
        return Ok(Frac::new(n, d));
    }
    if let Some((int, dec)) = s.split_once('.') {
        let sign = if int.trim_start().starts_with('-') { -1 } else { 1 };
        let i: i128 = if int.is_empty() { 0 } else { int.parse().map_err(|_| format!("bad number {:?}", s))? };
        if dec.is_empty() {
            return Ok(Frac::from_integer(i));
        }
        let frac_digits = dec.len() as u32;
        let d: i128 = dec.parse().map_err(|_| format!("bad number {:?}", s))?;
        if d < 0 {
            return Err(format!("bad number {:?}", s));
        }
        let denom = 10i128.pow(frac_digits);
        return Ok(Frac::from_integer(i) + Frac::new(sign * d, denom));
    }
    let i: i128 = s.parse().map_err(|_| format!("bad number {:?}", s))?;
    Ok(Frac::from_integer(i))
}

/// Render a rational as a fixed-point decimal with `digits` places,
/// rounding half away from zero. Used only at report time.
pub fn frac_to_decimal(value: &Frac, digits: u32) -> String {
    let scale = 10i128.pow(digits);
    let scaled = value * Frac::from_integer(scale);
    let rounded = scaled.round().to_integer();
    let sign = if rounded < 0 { "-" } else { "" };
    let abs = rounded.abs();
    let int_part = abs / scale;
    let frac_part = abs % scale;
    if digits == 0 {
        format!("{}{}", sign, int_part)
    } else {
        format!("{}{}.{:0width$}", sign, int_part, frac_part, width = digits as usize)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn beta_parsing() {
        assert_eq!("inf".parse::<Beta>().unwrap(), Beta::Infinite);
        assert_eq!("3/2".parse::<Beta>().unwrap(), Beta::finite(3, 2));
        assert_eq!("1.5".parse::<Beta>().unwrap(), Beta::finite(3, 2));
        assert_eq!("2".parse::<Beta>().unwrap(), Beta::finite(2, 1));
        assert!("0.5".parse::<Beta>().is_err());
    }

    #[test]
    fn beta_ordering() {
        assert!(Beta::Infinite > Beta::finite(1000, 1));
        assert!(Beta::finite(3, 2) > Beta::ONE);
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(frac_to_decimal(&Frac::new(49, 24), 2), "2.04");
        assert_eq!(frac_to_decimal(&Frac::new(3, 2), 2), "1.50");
        assert_eq!(frac_to_decimal(&Frac::from_integer(7), 2), "7.00");
        assert_eq!(frac_to_decimal(&Frac::new(1, 3), 4), "0.3333");
    }

    #[test]
    fn exceeded_by_semantics() {
        let b = Beta::finite(3, 2);
        assert!(b.exceeded_by(&Frac::new(2, 1)));
        assert!(!b.exceeded_by(&Frac::new(3, 2)));
        assert!(!Beta::Infinite.exceeded_by(&Frac::new(1_000_000, 1)));
    }
}
