//! Arbitrary-precision rationals and small construction helpers.
//!
//! `Rat` is a thin alias for [`num_rational::BigRational`], which already
//! keeps values in lowest terms with a positive denominator. The helpers here
//! exist so call sites can write `rat(3)` or `ratio(1, 2)` instead of going
//! through `BigInt` by hand, plus the `num/den` string form used by reports.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub type Rat = num_rational::BigRational;

/// Integer as a rational.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// `n/d` as a rational. Panics when `d == 0`.
pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn is_zero(x: &Rat) -> bool {
    x.is_zero()
}

/// Serialized form used in every report: always `num/den`, even for integers,
/// so the output is stable regardless of reducibility.
pub fn to_report_string(x: &Rat) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Parse either `a` or `a/b` with optional sign. Whitespace is not consumed.
pub fn parse_rat(s: &str) -> crate::Result<Rat> {
    let err = || crate::Error::Parse(format!("bad rational `{s}`"));
    match s.split_once('/') {
        None => s.parse::<BigInt>().map(Rat::from_integer).map_err(|_| err()),
        Some((n, d)) => {
            let n = n.parse::<BigInt>().map_err(|_| err())?;
            let d = d.parse::<BigInt>().map_err(|_| err())?;
            if d.is_zero() {
                return Err(err());
            }
            Ok(Rat::new(n, d))
        }
    }
}

/// Absolute-value comparison used when picking the chart coordinate of a
/// projective point: returns true when `|a| > |b|`.
pub fn abs_gt(a: &Rat, b: &Rat) -> bool {
    a.abs() > b.abs()
}

/// Clear denominators of a slice and strip the integer content, returning a
/// primitive integer vector pointing the same way. Zero stays zero.
pub fn primitive_integer_direction(v: &[Rat]) -> Vec<BigInt> {
    if v.iter().all(|x| x.is_zero()) {
        return vec![BigInt::zero(); v.len()];
    }
    let mut lcm = BigInt::one();
    for x in v {
        lcm = num_integer::lcm(lcm, x.denom().clone());
    }
    let ints: Vec<BigInt> = v.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    let mut content = BigInt::zero();
    for i in &ints {
        content = num_integer::gcd(content, i.clone());
    }
    ints.into_iter().map(|i| i / &content).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lowest_terms_and_positive_denominator() {
        let x = ratio(2, -4);
        assert_eq!(x, ratio(-1, 2));
        assert!(x.denom() > &BigInt::zero());
        assert_eq!(to_report_string(&x), "-1/2");
        assert_eq!(to_report_string(&rat(3)), "3/1");
    }

    #[test]
    fn parse_round_trip() {
        assert_eq!(parse_rat("-7/3").unwrap(), ratio(-7, 3));
        assert_eq!(parse_rat("12").unwrap(), rat(12));
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
    }

    #[test]
    fn primitive_direction_strips_content() {
        let v = [ratio(2, 3), ratio(-4, 3), rat(2)];
        let p = primitive_integer_direction(&v);
        let expect: Vec<BigInt> = [1, -2, 3].iter().map(|&i| BigInt::from(i)).collect();
        assert_eq!(p, expect);
    }
}
