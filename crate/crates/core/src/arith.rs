//! Exact rational and integer helpers shared by every module.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Q = BigRational;
pub type Z = BigInt;

pub fn q(n: i64) -> Q {
    Q::from_integer(Z::from(n))
}

pub fn qf(n: i64, d: i64) -> Q {
    Q::new(Z::from(n), Z::from(d))
}

pub fn zq(z: &Z) -> Q {
    Q::from_integer(z.clone())
}

pub fn zvec(v: &[i64]) -> Vec<Z> {
    v.iter().map(|&x| Z::from(x)).collect()
}

pub fn qvec(v: &[i64]) -> Vec<Q> {
    v.iter().map(|&x| q(x)).collect()
}

pub fn to_qvec(v: &[Z]) -> Vec<Q> {
    v.iter().map(zq).collect()
}

pub fn dot(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).fold(Q::zero(), |acc, (x, y)| acc + x * y)
}

pub fn dot_zq(a: &[Z], b: &[Q]) -> Q {
    a.iter()
        .zip(b)
        .fold(Q::zero(), |acc, (x, y)| acc + zq(x) * y)
}

pub fn dot_z(a: &[Z], b: &[Z]) -> Z {
    a.iter().zip(b).fold(Z::zero(), |acc, (x, y)| acc + x * y)
}

pub fn sub(a: &[Q], b: &[Q]) -> Vec<Q> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn add(a: &[Q], b: &[Q]) -> Vec<Q> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn scale(a: &[Q], s: &Q) -> Vec<Q> {
    a.iter().map(|x| x * s).collect()
}

pub fn is_zero_vec(a: &[Q]) -> bool {
    a.iter().all(Zero::is_zero)
}

pub fn gcd_all(v: &[Z]) -> Z {
    v.iter().fold(Z::zero(), |g, x| g.gcd(x))
}

pub fn lcm(a: &Z, b: &Z) -> Z {
    a.lcm(b)
}

/// Scales a rational vector to the primitive integer vector on the same ray.
/// The zero vector maps to the zero vector.
pub fn primitive(v: &[Q]) -> Vec<Z> {
    let den = v.iter().fold(Z::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<Z> = v.iter().map(|x| (x * zq(&den)).to_integer()).collect();
    primitive_z(&ints)
}

pub fn primitive_z(v: &[Z]) -> Vec<Z> {
    let g = gcd_all(v);
    if g.is_zero() {
        return v.to_vec();
    }
    v.iter().map(|x| x / &g).collect()
}

pub fn is_primitive(v: &[Z]) -> bool {
    gcd_all(v).is_one()
}

/// If `a` is a non-negative rational multiple of the non-zero vector `d`,
/// returns the multiplier.
pub fn multiple_of(a: &[Q], d: &[Q]) -> Option<Q> {
    let pivot = d.iter().position(|x| !x.is_zero())?;
    let t = &a[pivot] / &d[pivot];
    if a.iter().zip(d).all(|(x, y)| *x == &t * y) {
        Some(t)
    } else {
        None
    }
}

/// Parses `"p/q"`, `"p"`, or a plain JSON integer into a rational.
pub fn parse_q(s: &str) -> Option<Q> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: Z = n.trim().parse().ok()?;
            let d: Z = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Q::new(n, d))
            }
        }
        None => s.parse::<Z>().ok().map(Q::from_integer),
    }
}

pub fn fmt_q(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn abs_z(x: &Z) -> Z {
    x.abs()
}

/// Display adapter for rational vectors, e.g. `(1/2, 0)`.
pub struct QVec<'a>(pub &'a [Q]);

impl fmt::Display for QVec<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", fmt_q(x))?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primitive_scaling() {
        assert_eq!(primitive(&[qf(2, 3), q(0), qf(-4, 3)]), zvec(&[1, 0, -2]));
        assert_eq!(primitive(&[q(0), q(0)]), zvec(&[0, 0]));
    }

    #[test]
    fn parse_round_trip() {
        for s in ["1/2", "-3/7", "5", "0"] {
            assert_eq!(fmt_q(&parse_q(s).unwrap()), s);
        }
        assert!(parse_q("1/0").is_none());
        assert_eq!(parse_q("4/2").unwrap(), q(2));
    }

    #[test]
    fn multiple_detection() {
        assert_eq!(multiple_of(&qvec(&[2, 4]), &qvec(&[1, 2])), Some(q(2)));
        assert_eq!(multiple_of(&qvec(&[2, 3]), &qvec(&[1, 2])), None);
    }
}
