//! Octonion arithmetic in the fixed basis e0..e7.
//!
//! The multiplication table below is the only description of the product in
//! the crate. Row `i`, column `j` holds the signed index of `e_i e_j`.
//!
//! The quaternion subalgebra used by [`cayley_dickson_mul`] is
//! `i = e1, j = e2, k = e4` with doubling unit `l = e3`.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{parse_rational, rat_to_string, Rational, Scalar};

/// Products of imaginary units, `IMAG[i-1][j-1] = ±k` meaning `e_i e_j = ±e_k`.
/// The diagonal entries stand for `e_i e_i = -1`.
const IMAG: [[i8; 7]; 7] = [
    [-0, 4, 7, -2, 6, -5, -3],
    [-4, -0, 5, 1, -3, 7, -6],
    [-7, -5, -0, 6, 2, -4, 1],
    [2, -1, -6, -0, 7, 3, -5],
    [-6, 3, -2, -7, -0, 1, 4],
    [5, -7, 4, -3, -1, -0, 2],
    [3, 6, -1, 5, -4, -2, -0],
];

const fn build_table() -> [[(i8, u8); 8]; 8] {
    let mut t = [[(1i8, 0u8); 8]; 8];
    let mut i = 0;
    while i < 8 {
        let mut j = 0;
        while j < 8 {
            t[i][j] = if i == 0 {
                (1, j as u8)
            } else if j == 0 {
                (1, i as u8)
            } else if i == j {
                (-1, 0)
            } else {
                let v = IMAG[i - 1][j - 1];
                if v > 0 {
                    (1, v as u8)
                } else {
                    (-1, (-v) as u8)
                }
            };
            j += 1;
        }
        i += 1;
    }
    t
}

/// `TABLE[i][j] = (s, k)` with `e_i e_j = s e_k`.
pub const TABLE: [[(i8, u8); 8]; 8] = build_table();

/// Basis indices of the quaternion units `1, i, j, k`.
pub const QUAT_UNITS: [usize; 4] = [0, 1, 2, 4];
/// Basis index of the Cayley–Dickson doubling unit `l`.
pub const L_UNIT: usize = 3;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Octonion<S> {
    pub c: [S; 8],
}

pub type OctQ = Octonion<Rational>;
pub type OctF = Octonion<f64>;

impl<S: Scalar> Octonion<S> {
    pub fn new(c: [S; 8]) -> Self {
        Octonion { c }
    }

    pub fn zero() -> Self {
        Octonion { c: std::array::from_fn(|_| S::zero()) }
    }

    pub fn one() -> Self {
        Self::real(S::one())
    }

    pub fn real(s: S) -> Self {
        let mut o = Self::zero();
        o.c[0] = s;
        o
    }

    /// The basis unit `e_k`.
    pub fn unit(k: usize) -> Self {
        let mut o = Self::zero();
        o.c[k] = S::one();
        o
    }

    pub fn from_i64s(v: [i64; 8]) -> Self {
        Octonion { c: v.map(S::from_i64) }
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|x| x.is_zero())
    }

    pub fn is_real(&self) -> bool {
        self.c[1..].iter().all(|x| x.is_zero())
    }

    pub fn re(&self) -> S {
        self.c[0].clone()
    }

    /// Imaginary part `q - re(q)`.
    pub fn im(&self) -> Self {
        let mut o = self.clone();
        o.c[0] = S::zero();
        o
    }

    pub fn conj(&self) -> Self {
        let mut o = self.clone();
        for x in o.c[1..].iter_mut() {
            *x = -x.clone();
        }
        o
    }

    pub fn norm_sq(&self) -> S {
        S::dot(&self.c, &self.c)
    }

    /// `re(x conj(y))`, the Euclidean inner product of the coordinates.
    pub fn inner(&self, other: &Self) -> S {
        S::dot(&self.c, &other.c)
    }

    pub fn scale(&self, s: &S) -> Self {
        Octonion { c: std::array::from_fn(|k| self.c[k].clone() * s.clone()) }
    }

    pub fn mul(&self, other: &Self) -> Self {
        Octonion { c: S::signed_products(&self.c, &other.c, &TABLE) }
    }

    pub fn inv(&self) -> Result<Self> {
        let n = self.norm_sq();
        if n.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let r = S::one() / n;
        Ok(self.conj().scale(&r))
    }

    /// `(ab)c - a(bc)`.
    pub fn associator(a: &Self, b: &Self, c: &Self) -> Self {
        &a.mul(b).mul(c) - &a.mul(&b.mul(c))
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Octonion<T> {
        Octonion { c: std::array::from_fn(|k| f(&self.c[k])) }
    }

    pub fn to_f64(&self) -> OctF {
        self.map(|x| x.to_f64())
    }
}

impl<S: Scalar> Default for Octonion<S> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<S: fmt::Debug> fmt::Debug for Octonion<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Oct{:?}", self.c)
    }
}

impl<S: Scalar> Add for &Octonion<S> {
    type Output = Octonion<S>;
    fn add(self, o: Self) -> Octonion<S> {
        Octonion { c: std::array::from_fn(|k| self.c[k].clone() + o.c[k].clone()) }
    }
}

impl<S: Scalar> Sub for &Octonion<S> {
    type Output = Octonion<S>;
    fn sub(self, o: Self) -> Octonion<S> {
        Octonion { c: std::array::from_fn(|k| self.c[k].clone() - o.c[k].clone()) }
    }
}

impl<S: Scalar> Mul for &Octonion<S> {
    type Output = Octonion<S>;
    fn mul(self, o: Self) -> Octonion<S> {
        Octonion::mul(self, o)
    }
}

impl<S: Scalar> Neg for &Octonion<S> {
    type Output = Octonion<S>;
    fn neg(self) -> Octonion<S> {
        Octonion { c: std::array::from_fn(|k| -self.c[k].clone()) }
    }
}

impl<S: Scalar> Add for Octonion<S> {
    type Output = Octonion<S>;
    fn add(self, o: Self) -> Octonion<S> {
        &self + &o
    }
}

impl<S: Scalar> Sub for Octonion<S> {
    type Output = Octonion<S>;
    fn sub(self, o: Self) -> Octonion<S> {
        &self - &o
    }
}

impl<S: Scalar> Neg for Octonion<S> {
    type Output = Octonion<S>;
    fn neg(self) -> Octonion<S> {
        -&self
    }
}

impl<S: Scalar> AddAssign<&Octonion<S>> for Octonion<S> {
    fn add_assign(&mut self, o: &Octonion<S>) {
        for k in 0..8 {
            self.c[k] += o.c[k].clone();
        }
    }
}

impl<S: Scalar> SubAssign<&Octonion<S>> for Octonion<S> {
    fn sub_assign(&mut self, o: &Octonion<S>) {
        for k in 0..8 {
            self.c[k] -= o.c[k].clone();
        }
    }
}

/// Quaternion `c0 + c1 i + c2 j + c3 k` with Hamilton's product.
#[derive(Clone, Debug, PartialEq)]
pub struct Quaternion<S> {
    pub c: [S; 4],
}

impl<S: Scalar> Quaternion<S> {
    pub fn new(c: [S; 4]) -> Self {
        Quaternion { c }
    }

    pub fn conj(&self) -> Self {
        let [a, b, c, d] = self.c.clone();
        Quaternion { c: [a, -b, -c, -d] }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let [a1, b1, c1, d1] = self.c.clone();
        let [a2, b2, c2, d2] = o.c.clone();
        Quaternion {
            c: [
                a1.clone() * a2.clone() - b1.clone() * b2.clone() - c1.clone() * c2.clone() - d1.clone() * d2.clone(),
                a1.clone() * b2.clone() + b1.clone() * a2.clone() + c1.clone() * d2.clone() - d1.clone() * c2.clone(),
                a1.clone() * c2.clone() - b1.clone() * d2.clone() + c1.clone() * a2.clone() + d1.clone() * b2.clone(),
                a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
            ],
        }
    }

    fn add(&self, o: &Self) -> Self {
        Quaternion { c: std::array::from_fn(|k| self.c[k].clone() + o.c[k].clone()) }
    }

    fn sub(&self, o: &Self) -> Self {
        Quaternion { c: std::array::from_fn(|k| self.c[k].clone() - o.c[k].clone()) }
    }

    /// The octonion `c0 + c1 e1 + c2 e2 + c3 e4`.
    pub fn embed(&self) -> Octonion<S> {
        let mut o = Octonion::zero();
        for (m, &u) in QUAT_UNITS.iter().enumerate() {
            o.c[u] = self.c[m].clone();
        }
        o
    }
}

/// `(x + y l)(w + z l) = (xw - conj(z) y) + (z x + y conj(w)) l`, returned as an
/// octonion in the standard basis.
pub fn cayley_dickson_mul<S: Scalar>(
    x: &Quaternion<S>,
    y: &Quaternion<S>,
    w: &Quaternion<S>,
    z: &Quaternion<S>,
) -> Octonion<S> {
    let a = x.mul(w).sub(&z.conj().mul(y));
    let b = z.mul(x).add(&y.mul(&w.conj()));
    let l = Octonion::unit(L_UNIT);
    &a.embed() + &b.embed().mul(&l)
}

/// Signed permutation taking standard coordinates to Cayley–Dickson
/// coordinates `(1, i, j, k, l, il, jl, kl)`: `e_n ↦ CD_SIGN[n] · f_{CD_PERM[n]}`.
pub const CD_PERM: [usize; 8] = [0, 1, 2, 4, 3, 6, 7, 5];
pub const CD_SIGN: [i8; 8] = [1, 1, 1, 1, 1, 1, -1, 1];

/// Coordinates of `q` in the Cayley–Dickson frame.
pub fn to_cd_frame<S: Scalar>(q: &Octonion<S>) -> Octonion<S> {
    let mut o = Octonion::zero();
    for n in 0..8 {
        let v = q.c[n].clone();
        o.c[CD_PERM[n]] = if CD_SIGN[n] > 0 { v } else { -v };
    }
    o
}

/// Inverse of [`to_cd_frame`].
pub fn from_cd_frame<S: Scalar>(q: &Octonion<S>) -> Octonion<S> {
    let mut o = Octonion::zero();
    for n in 0..8 {
        let v = q.c[CD_PERM[n]].clone();
        o.c[n] = if CD_SIGN[n] > 0 { v } else { -v };
    }
    o
}

impl fmt::Display for Octonion<Rational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for k in 0..8 {
            let v = &self.c[k];
            if v.is_zero() {
                continue;
            }
            let neg = v < &Rational::zero();
            let mag = if neg { -v.clone() } else { v.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            if k == 0 {
                write!(f, "{}", rat_to_string(&mag))?;
            } else if mag.is_one() {
                write!(f, "e{k}")?;
            } else {
                write!(f, "{}*e{k}", rat_to_string(&mag))?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Parses `a0 + a1*e1 + ... + a7*e7`. Terms may appear in any order, repeated
/// units accumulate, and a bare `e3` means coefficient 1. Columns in errors are
/// 1-based and relative to `s`.
pub fn parse_octonion(s: &str) -> Result<OctQ> {
    parse_octonion_at(s, 1, 1)
}

pub(crate) fn parse_octonion_at(s: &str, line: usize, col0: usize) -> Result<OctQ> {
    let chars: Vec<char> = s.chars().collect();
    let err = |pos: usize, msg: &str| Error::parse(line, col0 + pos, msg);
    let mut out = OctQ::zero();
    let mut pos = 0usize;
    let skip_ws = |pos: &mut usize| {
        while *pos < chars.len() && chars[*pos].is_whitespace() {
            *pos += 1;
        }
    };
    skip_ws(&mut pos);
    if pos == chars.len() {
        return Err(err(pos, "empty octonion"));
    }
    let mut first = true;
    while pos < chars.len() {
        let mut neg = false;
        if chars[pos] == '+' || chars[pos] == '-' {
            neg = chars[pos] == '-';
            pos += 1;
            skip_ws(&mut pos);
        } else if !first {
            return Err(err(pos, "expected '+' or '-'"));
        }
        first = false;
        let start = pos;
        let mut coef = Rational::one();
        if pos < chars.len() && chars[pos].is_ascii_digit() {
            while pos < chars.len() && chars[pos].is_ascii_digit() {
                pos += 1;
            }
            let mut text: String = chars[start..pos].iter().collect();
            let save = pos;
            skip_ws(&mut pos);
            if pos < chars.len() && chars[pos] == '/' {
                pos += 1;
                skip_ws(&mut pos);
                let d = pos;
                while pos < chars.len() && chars[pos].is_ascii_digit() {
                    pos += 1;
                }
                if d == pos {
                    return Err(err(d, "expected denominator"));
                }
                text.push('/');
                text.extend(&chars[d..pos]);
            } else {
                pos = save;
            }
            coef = parse_rational(&text).ok_or_else(|| err(start, "invalid rational"))?;
            skip_ws(&mut pos);
            if pos < chars.len() && chars[pos] == '*' {
                pos += 1;
                skip_ws(&mut pos);
                if pos >= chars.len() || chars[pos] != 'e' {
                    return Err(err(pos, "expected basis unit after '*'"));
                }
            } else {
                if neg {
                    coef = -coef;
                }
                out.c[0] += coef;
                continue;
            }
        }
        if pos < chars.len() && chars[pos] == 'e' {
            pos += 1;
            let d = pos;
            while pos < chars.len() && chars[pos].is_ascii_digit() {
                pos += 1;
            }
            let idx: usize = chars[d..pos]
                .iter()
                .collect::<String>()
                .parse()
                .map_err(|_| err(d, "expected unit index"))?;
            if idx > 7 {
                return Err(err(d, "unit index out of range 0..7"));
            }
            if neg {
                coef = -coef;
            }
            out.c[idx] += coef;
            skip_ws(&mut pos);
        } else {
            return Err(err(pos, "expected rational or basis unit"));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn e(k: usize) -> OctQ {
        OctQ::unit(k)
    }

    #[test]
    fn table_examples() {
        assert_eq!(e(1).mul(&e(2)), e(4));
        assert_eq!(e(2).mul(&e(1)), -e(4));
        let a = &e(1) + &e(2);
        let b = &e(1) - &e(2);
        assert_eq!(a.mul(&b), e(4).scale(&rat(-2, 1)));
        assert_eq!(OctQ::associator(&e(1), &e(2), &e(3)), e(6).scale(&rat(-2, 1)));
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(e(1).inv().unwrap(), -e(1));
        let q = &OctQ::one() + &e(1);
        assert_eq!(q.inv().unwrap(), (&OctQ::one() - &e(1)).scale(&rat(1, 2)));
        assert_eq!(OctQ::zero().inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn conj_norm_inner() {
        assert_eq!(e(3).conj(), -e(3));
        assert_eq!((&OctQ::one() + &e(1)).norm_sq(), rat(2, 1));
        assert_eq!(e(1).inner(&e(2)), rat(0, 1));
    }

    // Each oriented Fano line (a, b, c) gives e_a e_b = e_c and its cyclic shifts.
    #[test]
    fn fano_lines_consistent_with_table() {
        let mut lines = vec![];
        for a in 1..8 {
            for b in 1..8 {
                let (s, c) = TABLE[a][b];
                if a != b && s > 0 {
                    lines.push((a, b, c as usize));
                }
            }
        }
        assert_eq!(lines.len(), 21);
        for (a, b, c) in lines {
            assert_eq!(TABLE[b][c], (1, a as u8));
            assert_eq!(TABLE[c][a], (1, b as u8));
            assert_eq!(TABLE[b][a], (-1, c as u8));
        }
    }

    #[test]
    fn quaternion_units_close() {
        assert_eq!(e(1).mul(&e(2)), e(4));
        assert_eq!(e(2).mul(&e(4)), e(1));
        assert_eq!(e(4).mul(&e(1)), e(2));
    }

    #[test]
    fn cayley_dickson_examples() {
        let q = |c: [i64; 4]| Quaternion::<Rational>::new(c.map(|v| rat(v, 1)));
        let one = q([1, 0, 0, 0]);
        let zero = q([0, 0, 0, 0]);
        let i = q([0, 1, 0, 0]);
        assert_eq!(cayley_dickson_mul(&one, &zero, &one, &zero), OctQ::one());
        assert_eq!(cayley_dickson_mul(&i, &zero, &zero, &one), e(1).mul(&e(L_UNIT)));
        assert_eq!(cayley_dickson_mul(&zero, &one, &zero, &one), -OctQ::one());
    }

    #[test]
    fn cd_frame_round_trip() {
        let q = OctQ::from_i64s([1, 2, 3, 4, 5, 6, 7, 8]);
        assert_eq!(from_cd_frame(&to_cd_frame(&q)), q);
        assert_eq!(to_cd_frame(&e(6)), -e(7));
    }

    #[test]
    fn text_round_trip() {
        let q = parse_octonion("1/2 - 3*e1 + e7").unwrap();
        assert_eq!(q.c[0], rat(1, 2));
        assert_eq!(q.c[1], rat(-3, 1));
        assert_eq!(q.c[7], rat(1, 1));
        assert_eq!(q.to_string(), "1/2 - 3*e1 + e7");
        assert_eq!(parse_octonion(&q.to_string()).unwrap(), q);
        assert_eq!(parse_octonion("-e2").unwrap(), -e(2));
        assert_eq!(parse_octonion("0").unwrap(), OctQ::zero());
        assert_eq!(parse_octonion(" 2 * e3 ").unwrap(), e(3).scale(&rat(2, 1)));
        assert!(matches!(parse_octonion("1 + e9"), Err(Error::Parse { col: 6, .. })));
        assert!(parse_octonion("1 2").is_err());
        assert!(parse_octonion("").is_err());
    }
}
