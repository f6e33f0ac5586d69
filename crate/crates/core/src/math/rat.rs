use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always held in lowest terms with a positive
/// denominator.
pub type Rat = num_rational::BigRational;
pub type IntVec = Vec<BigInt>;
pub type RatVec = Vec<Rat>;

pub fn int(n: i64) -> BigInt {
    BigInt::from(n)
}

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn int_vec(xs: &[i64]) -> IntVec {
    xs.iter().map(|&x| BigInt::from(x)).collect()
}

pub fn rat_vec(xs: &[i64]) -> RatVec {
    xs.iter().map(|&x| rat(x)).collect()
}

pub fn to_rat_vec(v: &[BigInt]) -> RatVec {
    v.iter().map(|x| Rat::from_integer(x.clone())).collect()
}

pub fn dot_rat(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter().zip(b).fold(Rat::zero(), |acc, (x, y)| acc + x * y)
}

pub fn dot_int_rat(a: &[BigInt], b: &[Rat]) -> Rat {
    let mut acc = Rat::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() {
            acc += y * x;
        }
    }
    acc
}

/// `"p/q"`, or `"p"` when the denominator is 1.
pub fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let bad = || Error::Parse(format!("invalid rational {s:?}"));
    match s.split_once('/') {
        None => s.parse::<BigInt>().map(Rat::from_integer).map_err(|_| bad()),
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(Rat::new(p, q))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_strings() {
        assert_eq!(format_rat(&ratio(6, -4)), "-3/2");
        assert_eq!(format_rat(&ratio(10, 5)), "2");
        assert_eq!(format_rat(&rat(0)), "0");
        assert_eq!(parse_rat("4/6").unwrap(), ratio(2, 3));
        assert_eq!(parse_rat(" -7 ").unwrap(), rat(-7));
        assert_eq!(parse_rat("3/-9").unwrap(), ratio(-1, 3));
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("1.5").is_err());
    }

    #[test]
    fn comparison_is_exact() {
        // 1/3 vs 333333333333333333/10^18 differ only past f64 precision
        let a = ratio(1, 3);
        let b = parse_rat("333333333333333333/1000000000000000000").unwrap();
        assert!(a > b);
    }
}
