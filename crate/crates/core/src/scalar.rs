//! Numeric backends shared by the algebra modules.
//!
//! `Rational` is exact; `f64` is the floating-point backend. The backend is a
//! type parameter, so mixing the two is a compile error.

use std::fmt::Debug;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rational = BigRational;

pub trait Scalar:
    Clone
    + PartialEq
    + PartialOrd
    + Debug
    + Send
    + Sync
    + 'static
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + AddAssign
    + SubAssign
{
    fn from_i64(v: i64) -> Self;
    fn from_frac(num: i64, den: i64) -> Self;
    fn to_f64(&self) -> f64;
    /// Square root, or `None` when the backend cannot represent it
    /// (negative input, or a non-square rational).
    fn try_sqrt(&self) -> Option<Self>;
    fn abs_val(&self) -> Self;
    fn half() -> Self {
        Self::from_frac(1, 2)
    }
    /// `Σ x_i y_i`.
    fn dot(x: &[Self], y: &[Self]) -> Self {
        x.iter().zip(y).fold(Self::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
    }
    /// `out[k] = Σ s·x_i·y_j` over `table[i][j] = (s, k)`; the bilinear map of
    /// an algebra with a signed-permutation multiplication table.
    fn signed_products(x: &[Self; 8], y: &[Self; 8], table: &[[(i8, u8); 8]; 8]) -> [Self; 8] {
        let mut out: [Self; 8] = std::array::from_fn(|_| Self::zero());
        for i in 0..8 {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..8 {
                if y[j].is_zero() {
                    continue;
                }
                let (s, k) = table[i][j];
                let p = x[i].clone() * y[j].clone();
                if s > 0 {
                    out[k as usize] += p;
                } else {
                    out[k as usize] -= p;
                }
            }
        }
        out
    }
}

/// Integer numerators of `x` over the least common denominator.
fn over_common_denominator(x: &[Rational]) -> (Vec<BigInt>, BigInt) {
    let den = x.iter().fold(BigInt::one(), |l, v| l.lcm(v.denom()));
    let nums = x.iter().map(|v| v.numer() * (&den / v.denom())).collect();
    (nums, den)
}

impl Scalar for f64 {
    fn from_i64(v: i64) -> Self {
        v as f64
    }
    fn from_frac(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn try_sqrt(&self) -> Option<Self> {
        if *self < 0.0 {
            None
        } else {
            Some(self.sqrt())
        }
    }
    fn abs_val(&self) -> Self {
        self.abs()
    }
}

impl Scalar for Rational {
    fn from_i64(v: i64) -> Self {
        Rational::from_integer(BigInt::from(v))
    }
    fn from_frac(num: i64, den: i64) -> Self {
        Rational::new(BigInt::from(num), BigInt::from(den))
    }
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
    fn try_sqrt(&self) -> Option<Self> {
        if self.is_negative() {
            return None;
        }
        let n = self.numer().sqrt();
        let d = self.denom().sqrt();
        if &(&n * &n) == self.numer() && &(&d * &d) == self.denom() {
            Some(Rational::new(n, d))
        } else {
            None
        }
    }
    fn abs_val(&self) -> Self {
        self.abs()
    }
    fn dot(x: &[Self], y: &[Self]) -> Self {
        let (xn, xd) = over_common_denominator(x);
        let (yn, yd) = over_common_denominator(y);
        let acc = xn.iter().zip(&yn).fold(BigInt::zero(), |acc, (a, b)| if a.is_zero() { acc } else { acc + a * b });
        Rational::new(acc, xd * yd)
    }
    fn signed_products(x: &[Self; 8], y: &[Self; 8], table: &[[(i8, u8); 8]; 8]) -> [Self; 8] {
        let (xn, xd) = over_common_denominator(x);
        let (yn, yd) = over_common_denominator(y);
        let mut acc: [BigInt; 8] = std::array::from_fn(|_| BigInt::zero());
        for i in 0..8 {
            if xn[i].is_zero() {
                continue;
            }
            for j in 0..8 {
                if yn[j].is_zero() {
                    continue;
                }
                let (s, k) = table[i][j];
                let p = &xn[i] * &yn[j];
                if s > 0 {
                    acc[k as usize] += p;
                } else {
                    acc[k as usize] -= p;
                }
            }
        }
        let den = xd * yd;
        acc.map(|a| Rational::new(a, den.clone()))
    }
}

/// Shorthand for an exact rational `n/d`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::from_frac(n, d)
}

pub fn rat_to_string(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `p`, `-p` or `p/q` (decimal integers, optional leading sign).
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (s, None),
    };
    let n: BigInt = n.parse().ok()?;
    let d: BigInt = match d {
        Some(d) => {
            if d.starts_with(['+', '-']) {
                return None;
            }
            d.parse().ok()?
        }
        None => BigInt::one(),
    };
    if d.is_zero() {
        return None;
    }
    Some(Rational::new(n, d))
}
