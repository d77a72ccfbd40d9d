use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::QVector;
use crate::error::{Error, Result};

/// Scales `v` by the unique positive rational that makes it an integer
/// vector with coprime coordinates. Direction is preserved.
pub fn normalize_primitive(v: &QVector) -> Result<QVector> {
    primitive_ints(v)
        .map(|xs| QVector::from_bigints(&xs))
        .ok_or(Error::ZeroRay)
}

/// Clears denominators and divides by the content; `None` for the zero vector.
pub(crate) fn primitive_ints(v: &QVector) -> Option<Vec<BigInt>> {
    if v.is_zero() {
        return None;
    }
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    Some(make_primitive(ints))
}

pub(crate) fn make_primitive(mut xs: Vec<BigInt>) -> Vec<BigInt> {
    let g = xs.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in xs.iter_mut() {
            *x /= &g;
        }
    }
    xs
}

pub(crate) fn int_dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .fold(BigInt::zero(), |acc, (x, y)| acc + x * y)
}

/// `s * a - t * b`, made primitive.
pub(crate) fn int_combine(s: &BigInt, a: &[BigInt], t: &BigInt, b: &[BigInt]) -> Vec<BigInt> {
    make_primitive(a.iter().zip(b).map(|(x, y)| s * x - t * y).collect())
}

pub(crate) fn is_zero_ints(xs: &[BigInt]) -> bool {
    xs.iter().all(Zero::is_zero)
}

/// Flips sign so that the first nonzero coordinate is positive.
pub(crate) fn positive_leading(mut v: QVector) -> QVector {
    if v.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
        v = v.neg();
    }
    v
}
