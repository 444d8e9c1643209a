//! Exact rational scalars.
//!
//! [`Scalar`] is `num_rational::BigRational`, which keeps its numerator and
//! denominator reduced with a positive denominator after every operation.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type Scalar = num_rational::BigRational;

pub fn int(v: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(v))
}

pub fn ratio(n: i64, d: i64) -> Scalar {
    Scalar::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `p/q` or a bare integer. Rejects zero denominators.
pub fn parse(s: &str) -> Option<Scalar> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            if q.is_zero() {
                return None;
            }
            Some(Scalar::new(p, q))
        }
        None => s.parse::<BigInt>().ok().map(Scalar::from_integer),
    }
}

/// Canonical text form: `p` for integers, `p/q` otherwise.
pub fn format(x: &Scalar) -> String {
    x.to_string()
}

pub fn pow2(exp: u32) -> BigInt {
    BigInt::one() << exp
}

/// Largest power of two `2^-k` (k ≥ 0) that does not exceed `x`, for `0 < x`.
/// Values at or above one clamp to one.
pub fn dyadic_floor(x: &Scalar) -> Scalar {
    assert!(x.is_positive(), "dyadic_floor of non-positive value");
    let one = Scalar::one();
    if *x >= one {
        return one;
    }
    // 2^-k ≤ x  ⇔  denom ≤ numer · 2^k
    let numer = x.numer();
    let denom = x.denom();
    let mut k = denom.bits().saturating_sub(numer.bits()) as u32;
    while numer * pow2(k) < *denom {
        k += 1;
    }
    while k > 0 && numer * pow2(k - 1) >= *denom {
        k -= 1;
    }
    Scalar::new(BigInt::one(), pow2(k))
}

/// Largest power of two `2^-k` whose square does not exceed `x`, for `0 < x ≤ 1`.
pub fn dyadic_sqrt_floor(x: &Scalar) -> Scalar {
    let f = dyadic_floor(x);
    // f = 2^-k; want largest j with 2^-2j ≤ x, i.e. j = ceil(k/2).
    let k = f.denom().bits() - 1;
    let j = k.div_ceil(2) as u32;
    Scalar::new(BigInt::one(), pow2(j))
}

/// Exact integer ceiling of the square root of a non-negative rational.
pub fn ceil_sqrt(x: &Scalar) -> BigInt {
    assert!(!x.is_negative());
    let c = x.ceil().to_integer();
    let (_, mag) = c.into_parts();
    let mut r: BigUint = mag.sqrt();
    if Scalar::from_integer(BigInt::from(r.clone()) * BigInt::from(r.clone())) < *x {
        r += 1u32;
    }
    BigInt::from_biguint(Sign::Plus, r)
}

/// Least common multiple of the denominators of `values`.
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Scalar>) -> BigInt {
    values.into_iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!(parse("3"), Some(int(3)));
        assert_eq!(parse("-6/4"), Some(ratio(-3, 2)));
        assert_eq!(parse(" 7/1 "), Some(int(7)));
        assert_eq!(parse("1/0"), None);
        assert_eq!(parse("x"), None);
        assert_eq!(parse("1.5"), None);
    }

    #[test]
    fn canonical_format() {
        assert_eq!(format(&ratio(4, 2)), "2");
        assert_eq!(format(&ratio(-2, 6)), "-1/3");
        let x = ratio(375, 8);
        assert_eq!(parse(&format(&x)), Some(x));
    }

    #[test]
    fn dyadic_floor_brackets() {
        assert_eq!(dyadic_floor(&ratio(1, 16)), ratio(1, 16));
        assert_eq!(dyadic_floor(&ratio(1, 15)), ratio(1, 16));
        assert_eq!(dyadic_floor(&ratio(1, 17)), ratio(1, 32));
        assert_eq!(dyadic_floor(&ratio(3, 4)), ratio(1, 2));
        assert_eq!(dyadic_floor(&int(5)), int(1));
    }

    #[test]
    fn dyadic_sqrt_floor_brackets() {
        assert_eq!(dyadic_sqrt_floor(&ratio(1, 16)), ratio(1, 4));
        // 1/8: largest 2^-j with 4^-j ≤ 1/8 is 1/4
        assert_eq!(dyadic_sqrt_floor(&ratio(1, 8)), ratio(1, 4));
        assert_eq!(dyadic_sqrt_floor(&ratio(1, 2)), ratio(1, 2));
        assert_eq!(dyadic_sqrt_floor(&int(1)), int(1));
        for (n, d) in [(3, 7), (1, 1000), (5, 9), (999, 1000)] {
            let x = ratio(n, d);
            let r = dyadic_sqrt_floor(&x);
            assert!(&r * &r <= x);
            let r2 = &r * int(2);
            assert!(&r2 * &r2 > x || r == int(1));
        }
    }

    #[test]
    fn ceil_sqrt_exact() {
        assert_eq!(ceil_sqrt(&int(4)), BigInt::from(2));
        assert_eq!(ceil_sqrt(&int(5)), BigInt::from(3));
        assert_eq!(ceil_sqrt(&ratio(9, 4)), BigInt::from(2));
        assert_eq!(ceil_sqrt(&int(0)), BigInt::from(0));
    }
}
