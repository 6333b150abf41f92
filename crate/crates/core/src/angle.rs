//! Exact rational angles on the circle `R/Z`, the covering map `θ ↦ dθ`,
//! and the circular-order predicates everything else is built on.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Neg;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// A rational point of the circle, stored as a reduced fraction in `[0, 1)`.
///
/// Structural equality coincides with equality on the circle because the
/// representation is canonical.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Angle {
    num: u64,
    den: u64,
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl Angle {
    pub const ZERO: Angle = Angle { num: 0, den: 1 };

    /// Reduced representative of `p/q mod 1`.
    pub fn new(p: i128, q: u128) -> Result<Angle> {
        if q == 0 {
            return Err(Error::MalformedAngle(format!("{p}/0 has zero denominator")));
        }
        let q_signed = i128::try_from(q)
            .map_err(|_| Error::Capacity(format!("denominator {q} too large")))?;
        let r = p.rem_euclid(q_signed) as u128;
        let g = gcd(r, q);
        let (num, den) = if r == 0 { (0, 1) } else { (r / g, q / g) };
        let den = u64::try_from(den)
            .map_err(|_| Error::Capacity(format!("denominator of {p}/{q} exceeds 64 bits")))?;
        Ok(Angle { num: num as u64, den })
    }

    pub fn numerator(self) -> u64 {
        self.num
    }

    pub fn denominator(self) -> u64 {
        self.den
    }

    pub fn is_zero(self) -> bool {
        self.num == 0
    }

    /// `k·θ mod 1`, failing instead of wrapping on overflow.
    pub fn times(self, k: u64) -> Result<Angle> {
        let prod = (self.num as u128)
            .checked_mul(k as u128)
            .ok_or_else(|| Error::Capacity(format!("{k}·{self} overflows")))?;
        Angle::new((prod % self.den as u128) as i128, self.den as u128)
    }

    pub fn checked_add(self, other: Angle) -> Result<Angle> {
        let overflow = || Error::Capacity(format!("{self} + {other} overflows"));
        let g = gcd(self.den as u128, other.den as u128);
        let den = (self.den as u128 / g)
            .checked_mul(other.den as u128)
            .ok_or_else(overflow)?;
        let lhs = self.num as u128 * (den / self.den as u128);
        let rhs = other.num as u128 * (den / other.den as u128);
        let num = lhs.checked_add(rhs).ok_or_else(overflow)?;
        let num = i128::try_from(num % den).map_err(|_| overflow())?;
        Angle::new(num, den)
    }

    pub fn checked_sub(self, other: Angle) -> Result<Angle> {
        self.checked_add(-other)
    }

    /// True when `k·θ ≡ 0 (mod 1)`.
    pub fn is_multiple_of_inverse(self, k: u64) -> bool {
        (self.num as u128 * k as u128).is_multiple_of(self.den as u128)
    }

    pub fn to_f64(self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl Neg for Angle {
    type Output = Angle;

    fn neg(self) -> Angle {
        if self.num == 0 {
            self
        } else {
            Angle { num: self.den - self.num, den: self.den }
        }
    }
}

impl Ord for Angle {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.num as u128 * other.den as u128).cmp(&(other.num as u128 * self.den as u128))
    }
}

impl PartialOrd for Angle {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl fmt::Debug for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl Serialize for Angle {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl FromStr for Angle {
    type Err = Error;

    /// Accepts `p/q` (reduced on input) or a bare integer.
    fn from_str(s: &str) -> Result<Angle> {
        let bad = || Error::MalformedAngle(format!("`{s}` is not a fraction p/q"));
        match s.split_once('/') {
            Some((p, q)) => {
                if q.starts_with(['+', '-']) {
                    return Err(bad());
                }
                let p: i128 = p.parse().map_err(|_| bad())?;
                let q: u128 = q.parse().map_err(|_| bad())?;
                Angle::new(p, q)
            }
            None => Angle::new(s.parse().map_err(|_| bad())?, 1),
        }
    }
}

/// The degree `d ≥ 2` of the covering map.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Degree(u32);

impl Degree {
    pub fn new(d: i64) -> Result<Degree> {
        if (2..=u32::MAX as i64).contains(&d) {
            Ok(Degree(d as u32))
        } else {
            Err(Error::InvalidDegree(d))
        }
    }

    pub fn get(self) -> u32 {
        self.0
    }

    /// `d^p - 1`, the common denominator of all angles of period dividing `p`.
    pub fn periodic_denominator(self, p: u32) -> Result<u64> {
        (self.0 as u64)
            .checked_pow(p)
            .map(|x| x - 1)
            .ok_or_else(|| Error::Capacity(format!("{}^{p} exceeds 64 bits", self.0)))
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

pub fn normalize_angle(p: i128, q: u128) -> Result<Angle> {
    Angle::new(p, q)
}

/// `f_d(θ) = dθ mod 1`.
pub fn map_angle(theta: Angle, d: Degree) -> Result<Angle> {
    theta.times(d.get() as u64)
}

/// The `d - 1` fixed points of `f_d`, sorted.
pub fn fixed_angles(d: Degree) -> Vec<Angle> {
    let q = d.get() as u128 - 1;
    (0..q)
        .map(|i| Angle::new(i as i128, q).expect("q >= 1"))
        .collect()
}

/// Whether `theta` lies strictly inside the counterclockwise open arc from `a` to `b`.
pub fn in_open_arc(theta: Angle, a: Angle, b: Angle) -> Result<bool> {
    match a.cmp(&b) {
        Ordering::Equal => Err(Error::DegenerateArc(a.to_string())),
        Ordering::Less => Ok(a < theta && theta < b),
        Ordering::Greater => Ok(theta > a || theta < b),
    }
}
