//! Closed-form vertex and edge bounds for cs 2-neighborly polytopes.

use num_bigint::{BigInt, BigUint};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::{self, Scalar};

/// Dimensions above this overflow the `u64` vertex counts.
pub const MAX_DIM: usize = 62;

fn check_dim(d: usize) -> Result<()> {
    if d < 3 {
        return Err(Error::InvalidParameter(format!("bounds are stated for d ≥ 3, got {d}")));
    }
    if d > MAX_DIM {
        return Err(Error::InvalidParameter(format!("dimension {d} exceeds {MAX_DIM}")));
    }
    Ok(())
}

/// Bracket `[2^(d-1) + 2, 2^d - 2]` for the maximum vertex count.
pub fn vertex_range(d: usize) -> Result<(u64, u64)> {
    check_dim(d)?;
    Ok(((1u64 << (d - 1)) + 2, (1u64 << d) - 2))
}

/// Lower and upper bounds on the maximum edge count of a cs d-polytope with
/// `n` vertices:
/// `(1 - 3^-⌊d/2 - 1⌋)·C(n, 2) ≤ f(d; n) ≤ (1 - 2^-d)·n²/2`.
///
/// At d = 3 the lower bound is 0.
pub fn edge_bounds(d: usize, n: u64) -> Result<(Scalar, Scalar)> {
    check_dim(d)?;
    if n < 2 || !n.is_multiple_of(2) {
        return Err(Error::InvalidParameter(format!(
            "vertex count must be even and at least 2, got {n}"
        )));
    }
    let exp3 = (d / 2 - 1) as u32;
    let three = Scalar::from_integer(BigInt::from(3).pow(exp3));
    let pairs = Scalar::from_integer(BigInt::from(n) * BigInt::from(n - 1) / 2);
    let one = scalar::int(1);
    let lower = (&one - one.clone() / three) * pairs;
    let two_d = Scalar::from_integer(scalar::pow2(d as u32));
    let nsq = Scalar::from_integer(BigInt::from(n) * BigInt::from(n));
    let upper = (&one - one.clone() / two_d) * nsq / scalar::int(2);
    Ok((lower, upper))
}

/// `⌈2√2 · 3^(d/2)⌉`: the least `n` with `n² ≥ 8·3^d`. A cs d-polytope with at
/// least this many vertices is not 3-neighborly.
pub fn three_neighborly_vertex_cap(d: usize) -> Result<BigUint> {
    check_dim(d)?;
    let target = BigUint::from(8u32) * BigUint::from(3u32).pow(d as u32);
    let mut r = target.sqrt();
    if &r * &r < target {
        r += 1u32;
    }
    Ok(r)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundsTable {
    pub d: usize,
    pub vertex_lower: u64,
    pub vertex_upper: u64,
    /// Known exact maximum; established only for d = 3 and d = 4.
    pub known_exact: Option<u64>,
    pub antipodal_max: u64,
    pub acute_max: u64,
    pub acute_lower: u64,
    #[serde(serialize_with = "ser_biguint")]
    pub three_neighborly_cap: BigUint,
}

fn ser_biguint<S: serde::Serializer>(v: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

pub fn bounds_table(d: usize) -> Result<BoundsTable> {
    let (vertex_lower, vertex_upper) = vertex_range(d)?;
    let known_exact = match d {
        3 => Some(6),
        4 => Some(10),
        _ => None,
    };
    Ok(BoundsTable {
        d,
        vertex_lower,
        vertex_upper,
        known_exact,
        antipodal_max: 1u64 << d,
        acute_max: (1u64 << d) - 1,
        acute_lower: (1u64 << (d - 1)) + 1,
        three_neighborly_cap: three_neighborly_vertex_cap(d)?,
    })
}
