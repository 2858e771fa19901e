//! Exact rational helpers: construction, `p/q` text form, and the affine
//! normalizations used when mapping value tables onto the unit interval.

use num::bigint::BigInt;
use num::{BigRational, One, Signed, Zero};

/// `n/d` as an exact rational.
pub fn rational(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// `n/1` as an exact rational.
pub fn integer(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Canonical `p/q` rendering (always with an explicit denominator).
pub fn format_ratio(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parse strict `p/q` form. Plain integers are rejected.
pub fn parse_ratio(s: &str) -> Option<BigRational> {
    let (num, den) = s.split_once('/')?;
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den <= BigInt::zero() {
        return None;
    }
    Some(BigRational::new(num, den))
}

/// True iff the denominator of `r` (in lowest terms) is a power of two.
pub fn is_dyadic(r: &BigRational) -> bool {
    let den = r.denom().magnitude();
    den.count_ones() == 1
}

/// Affine map of raw integer potentials onto `[0,1]`: the observed range is
/// sent onto the unit interval; a constant family is sent to `1/2`.
pub fn unit_rescale_ints(values: &[i64]) -> Vec<BigRational> {
    let min = values.iter().copied().min().unwrap_or(0);
    let max = values.iter().copied().max().unwrap_or(0);
    if min == max {
        return vec![rational(1, 2); values.len()];
    }
    let span = integer(max - min);
    values
        .iter()
        .map(|&v| integer(v - min) / span.clone())
        .collect()
}

/// Joint `[0,1]` normalization of the two tables of one function pair.
///
/// A pair already inside `[0,1]` is left untouched. Otherwise one affine map
/// (over the union of both tables' ranges) is applied to both tables, so every
/// comparison between `u`- and `v`-values is preserved; a constant pair whose
/// value lies outside `[0,1]` collapses to `1/2`.
pub fn pair_to_unit_interval(
    u: &[BigRational],
    v: &[BigRational],
) -> (Vec<BigRational>, Vec<BigRational>) {
    let all = u.iter().chain(v.iter());
    let min = all.clone().min().expect("nonempty tables").clone();
    let max = all.max().expect("nonempty tables").clone();
    if !min.is_negative() && max <= BigRational::one() {
        return (u.to_vec(), v.to_vec());
    }
    if min == max {
        let half = rational(1, 2);
        return (vec![half.clone(); u.len()], vec![half; v.len()]);
    }
    let span = max - min.clone();
    let map = |x: &BigRational| (x - min.clone()) / span.clone();
    (u.iter().map(map).collect(), v.iter().map(map).collect())
}
