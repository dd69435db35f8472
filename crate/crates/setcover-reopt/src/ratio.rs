//! Approximation-ratio functions `f : N -> Q` with `f(n) >= 1`.
//!
//! Used both as the hypothetical ratio of a reoptimization solver fed into a
//! gadget (e.g. the heavy-set weight of the remove-element construction) and
//! as the bound function of an instance chain.

use crate::error::{Error, Result};
use crate::rational::Rational;
use std::collections::BTreeMap;
use std::fmt;

/// Fixed-point scale for the deterministic natural logarithm.
const LN_SCALE: u128 = 1_000_000_000_000_000_000;
/// ln(2) * 1e18, truncated.
const LN2_E18: u128 = 693_147_180_559_945_309;

/// `ln(n) * 1e18`, computed with integer arithmetic only so that the result
/// is identical on every platform.  Argument reduction by powers of two, then
/// the atanh series `ln(r) = 2 * sum x^(2k+1)/(2k+1)` with `x = (r-1)/(r+1)`.
fn ln_fixed_e18(n: u64) -> u128 {
    if n <= 1 {
        return 0;
    }
    let e = 63 - n.leading_zeros();
    let pow = 1u128 << e;
    let nn = n as u128;
    let x = (nn - pow) * LN_SCALE / (nn + pow); // in [0, 1/3)
    let x2 = x * x / LN_SCALE;
    let mut term = x;
    let mut sum = 0u128;
    let mut k = 0u128;
    while term > 0 {
        sum += term / (2 * k + 1);
        term = term * x2 / LN_SCALE;
        k += 1;
    }
    (e as u128) * LN2_E18 + 2 * sum
}

/// Evaluable map from instance sizes to rational ratios, clamped to `>= 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RatioFunction {
    /// Constant ratio `c >= 1`.
    Constant(Rational),
    /// `alpha * ln(n)`, rounded to nine decimal digits and clamped to 1.
    LogLn { alpha: Rational },
    /// `mul * n + add`, clamped to 1.  Used by instance chains (`k + 1`, `2k`).
    Affine { mul: Rational, add: Rational },
    /// Explicit table; evaluation outside the table is an error.
    Table(BTreeMap<u64, Rational>),
}

impl RatioFunction {
    pub fn constant(c: Rational) -> Result<RatioFunction> {
        if c < Rational::ONE {
            return Err(Error::Precondition(format!("ratio constant {c} is below 1")));
        }
        Ok(RatioFunction::Constant(c))
    }

    pub fn log_ln(alpha: Rational) -> Result<RatioFunction> {
        if alpha.is_zero() {
            return Err(Error::Precondition("logln factor must be positive".into()));
        }
        Ok(RatioFunction::LogLn { alpha })
    }

    pub fn affine(mul: Rational, add: Rational) -> RatioFunction {
        RatioFunction::Affine { mul, add }
    }

    pub fn table(entries: BTreeMap<u64, Rational>) -> Result<RatioFunction> {
        if let Some((n, v)) = entries.iter().find(|(_, v)| **v < Rational::ONE) {
            return Err(Error::Precondition(format!("table value f({n}) = {v} is below 1")));
        }
        Ok(RatioFunction::Table(entries))
    }

    pub fn eval(&self, n: u64) -> Result<Rational> {
        let raw = match self {
            RatioFunction::Constant(c) => *c,
            RatioFunction::LogLn { alpha } => {
                // round ln(n) to 1e-9 before scaling by alpha
                let ln9 = (ln_fixed_e18(n) + 500_000_000) / 1_000_000_000;
                alpha.mul(&Rational::new(ln9 as u64, 1_000_000_000)?)?
            }
            RatioFunction::Affine { mul, add } => mul.mul(&Rational::from_int(n))?.add(add)?,
            RatioFunction::Table(t) => *t
                .get(&n)
                .ok_or_else(|| Error::Precondition(format!("ratio table has no entry for {n}")))?,
        };
        Ok(raw.max(Rational::ONE))
    }

    /// Parse a CLI ratio spec, one of `const:<rat>` or `logln:<rat>`.
    pub fn parse_spec(s: &str) -> Result<RatioFunction> {
        let err = || Error::Precondition(format!("bad ratio function `{s}`; expected const:<rat> or logln:<rat>"));
        let (kind, arg) = s.split_once(':').ok_or_else(err)?;
        let q: Rational = arg.parse()?;
        match kind {
            "const" => RatioFunction::constant(q),
            "logln" => RatioFunction::log_ln(q),
            _ => Err(err()),
        }
    }
}

impl fmt::Display for RatioFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RatioFunction::Constant(c) => write!(f, "const:{c}"),
            RatioFunction::LogLn { alpha } => write!(f, "logln:{alpha}"),
            RatioFunction::Affine { mul, add } => write!(f, "affine:{mul}:{add}"),
            RatioFunction::Table(t) => write!(f, "table:{}", t.len()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ln_fixed_matches_known_values() {
        // ln 2 and ln 10 to ~1e-15 of the fixed-point scale.
        assert_eq!(ln_fixed_e18(1), 0);
        assert_eq!(ln_fixed_e18(2), LN2_E18);
        let ln10 = ln_fixed_e18(10);
        // ln(10) = 2.302585092994045684...
        assert!((ln10 as i128 - 2_302_585_092_994_045_684i128).abs() < 2_000);
        let ln1000 = ln_fixed_e18(1000);
        assert!((ln1000 as i128 - 6_907_755_278_982_137_052i128).abs() < 6_000);
    }

    #[test]
    fn logln_clamps_to_one() {
        let f = RatioFunction::log_ln(Rational::new(1, 3).unwrap()).unwrap();
        assert_eq!(f.eval(1).unwrap(), Rational::ONE);
        assert_eq!(f.eval(2).unwrap(), Rational::ONE);
        assert!(f.eval(100).unwrap() > Rational::ONE);
    }

    #[test]
    fn constant_below_one_rejected() {
        assert!(RatioFunction::constant(Rational::new(1, 2).unwrap()).is_err());
        assert!(RatioFunction::constant(Rational::ONE).is_ok());
    }

    #[test]
    fn eval_is_deterministic() {
        let f = RatioFunction::log_ln(Rational::new(2, 3).unwrap()).unwrap();
        assert_eq!(f.eval(37).unwrap(), f.eval(37).unwrap());
        // frozen: ln(37) = 3.610917912644224...; rounded to 1e-9 then * 2/3
        let expected = Rational::new(2, 3)
            .unwrap()
            .mul(&Rational::new(3_610_917_913, 1_000_000_000).unwrap())
            .unwrap();
        assert_eq!(f.eval(37).unwrap(), expected);
    }

    #[test]
    fn parse_specs() {
        assert_eq!(
            RatioFunction::parse_spec("const:3/2").unwrap(),
            RatioFunction::Constant(Rational::new(3, 2).unwrap())
        );
        assert!(RatioFunction::parse_spec("logln:1/3").is_ok());
        assert!(RatioFunction::parse_spec("lin:2").is_err());
    }
}
