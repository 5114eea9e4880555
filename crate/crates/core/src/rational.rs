//! Exact rational helpers on top of `num`.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Integer, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Parses `"a"`, `"-a"` or `"a/b"` exactly.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(Rational::new(num, den))
}

/// Canonical text form: `"a"` for integers, `"a/b"` otherwise.
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Exact value of a finite `f64`.
pub fn from_f64_exact(x: f64) -> Result<Rational> {
    Rational::from_float(x).ok_or_else(|| Error::Numerical(format!("non-finite value {x}")))
}

/// Best rational approximation of `x` with denominator at most `max_den`
/// (continued-fraction convergents plus the best semiconvergent).
pub fn rationalize(x: f64, max_den: u64) -> Result<Rational> {
    if !x.is_finite() {
        return Err(Error::Numerical(format!("cannot rationalize {x}")));
    }
    let exact = from_f64_exact(x)?;
    let max_den = BigInt::from(max_den.max(1));
    if exact.denom() <= &max_den {
        return Ok(exact);
    }
    // Convergents p_k / q_k of the exact value.
    let (mut p0, mut q0) = (BigInt::zero(), BigInt::one());
    let (mut p1, mut q1) = (BigInt::one(), BigInt::zero());
    let mut rem = exact.clone();
    loop {
        let a = rem.floor().to_integer();
        let q2 = &a * &q1 + &q0;
        if q2 > max_den {
            // Semiconvergent with the largest admissible multiplier.
            let k = (&max_den - &q0).div_floor(&q1);
            let semi = Rational::new(&k * &p1 + &p0, &k * &q1 + &q0);
            let conv = Rational::new(p1.clone(), q1.clone());
            let ds = (&semi - &exact).abs();
            let dc = (&conv - &exact).abs();
            return Ok(if ds < dc { semi } else { conv });
        }
        let p2 = &a * &p1 + &p0;
        p0 = std::mem::replace(&mut p1, p2);
        q0 = std::mem::replace(&mut q1, q2);
        let frac_part = &rem - Rational::from_integer(a);
        if frac_part.is_zero() {
            return Ok(Rational::new(p1, q1));
        }
        rem = frac_part.recip();
    }
}

/// Least common multiple of all denominators.
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()))
}

/// Scales rationals to integers sharing the common denominator `scale`.
pub fn scale_to_integers(values: &[Rational]) -> (Vec<BigInt>, BigInt) {
    let scale = common_denominator(values.iter());
    let ints = values
        .iter()
        .map(|r| (r * Rational::from_integer(scale.clone())).to_integer())
        .collect();
    (ints, scale)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_formats() {
        assert_eq!(parse_rational("3/6"), Some(frac(1, 2)));
        assert_eq!(parse_rational(" -4 "), Some(int(-4)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("0.5"), None);
        assert_eq!(format_rational(&frac(-2, 4)), "-1/2");
        assert_eq!(format_rational(&int(7)), "7");
    }

    #[test]
    fn rationalize_recovers_simple_fractions() {
        assert_eq!(rationalize(1.0 / 3.0, 1_000_000).unwrap(), frac(1, 3));
        assert_eq!(rationalize(-0.125, 10).unwrap(), frac(-1, 8));
        assert_eq!(rationalize(19.0 / 24.0, 100).unwrap(), frac(19, 24));
        let pi = rationalize(std::f64::consts::PI, 1000).unwrap();
        assert_eq!(pi, frac(355, 113));
    }

    #[test]
    fn scaling_uses_lcm() {
        let (ints, scale) = scale_to_integers(&[frac(1, 24), frac(-1, 32), int(2)]);
        assert_eq!(scale, BigInt::from(96));
        assert_eq!(ints, vec![BigInt::from(4), BigInt::from(-3), BigInt::from(192)]);
    }
}
