//! Sparse polynomials with rational coefficients in the 16 real coordinates
//! `x1_0..x1_7, x2_0..x2_7`, and octonion-valued polynomials.
//!
//! Terms are kept in graded reverse lexicographic order with
//! `x1_0 > x1_1 > … > x2_7`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::octonion::{OctQ, Octonion, TABLE};
use crate::scalar::{parse_rational, rat_to_string, Rational, Scalar};

pub const NVARS: usize = 16;

/// Index of the coordinate `x{block}_{p}` (`block` is 1 or 2).
pub const fn var_index(block: usize, p: usize) -> usize {
    (block - 1) * 8 + p
}

pub fn var_name(i: usize) -> String {
    format!("x{}_{}", i / 8 + 1, i % 8)
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct Mono(pub [u8; NVARS]);

impl Mono {
    pub fn one() -> Self {
        Mono([0; NVARS])
    }

    pub fn var(i: usize) -> Self {
        let mut m = Mono::one();
        m.0[i] = 1;
        m
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn mul(&self, o: &Mono) -> Mono {
        Mono(std::array::from_fn(|i| self.0[i] + o.0[i]))
    }

    pub fn divides(&self, o: &Mono) -> bool {
        self.0.iter().zip(o.0.iter()).all(|(a, b)| a <= b)
    }

    /// `o / self`, assuming `self` divides `o`.
    pub fn quotient_of(&self, o: &Mono) -> Mono {
        Mono(std::array::from_fn(|i| o.0[i] - self.0[i]))
    }

    pub fn lcm(&self, o: &Mono) -> Mono {
        Mono(std::array::from_fn(|i| self.0[i].max(o.0[i])))
    }

    pub fn is_coprime(&self, o: &Mono) -> bool {
        self.0.iter().zip(o.0.iter()).all(|(a, b)| *a == 0 || *b == 0)
    }
}

/// Graded reverse lexicographic comparison.
pub fn grevlex(a: &Mono, b: &Mono) -> Ordering {
    match a.degree().cmp(&b.degree()) {
        Ordering::Equal => {}
        o => return o,
    }
    for i in (0..NVARS).rev() {
        if a.0[i] != b.0[i] {
            // The smaller exponent in the last differing variable wins.
            return b.0[i].cmp(&a.0[i]);
        }
    }
    Ordering::Equal
}

impl Ord for Mono {
    fn cmp(&self, o: &Self) -> Ordering {
        grevlex(self, o)
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly16 {
    terms: BTreeMap<Mono, Rational>,
}

impl fmt::Debug for Poly16 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly16({self})")
    }
}

impl Poly16 {
    pub fn zero() -> Self {
        Poly16::default()
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(Mono::one(), c)
    }

    pub fn from_i64(c: i64) -> Self {
        Self::constant(Rational::from_i64(c))
    }

    pub fn var(i: usize) -> Self {
        Self::monomial(Mono::var(i), Rational::one())
    }

    pub fn monomial(m: Mono, c: Rational) -> Self {
        let mut p = Poly16::zero();
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Mono, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Mono) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn leading(&self) -> Option<(&Mono, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    pub fn is_homogeneous(&self, d: u32) -> bool {
        self.terms.keys().all(|m| m.degree() == d)
    }

    pub fn add_term(&mut self, m: Mono, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, o: &Poly16) -> Poly16 {
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(*m, c.clone());
        }
        r
    }

    pub fn sub(&self, o: &Poly16) -> Poly16 {
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(*m, -c.clone());
        }
        r
    }

    pub fn neg(&self) -> Poly16 {
        Poly16 { terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect() }
    }

    pub fn scale(&self, s: &Rational) -> Poly16 {
        if s.is_zero() {
            return Poly16::zero();
        }
        Poly16 { terms: self.terms.iter().map(|(m, c)| (*m, c * s)).collect() }
    }

    pub fn mul(&self, o: &Poly16) -> Poly16 {
        let mut r = Poly16::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                r.add_term(m1.mul(m2), c1 * c2);
            }
        }
        r
    }

    pub fn mul_term(&self, m: &Mono, c: &Rational) -> Poly16 {
        Poly16 { terms: self.terms.iter().map(|(k, v)| (k.mul(m), v * c)).collect() }
    }

    pub fn deriv(&self, i: usize) -> Poly16 {
        let mut r = Poly16::zero();
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut m2 = *m;
            m2.0[i] -= 1;
            r.add_term(m2, c * Rational::from_i64(e as i64));
        }
        r
    }

    /// Directional derivative `Σ v_m ∂_m`.
    pub fn deriv_dir(&self, v: &[Rational]) -> Poly16 {
        let mut r = Poly16::zero();
        for (i, vi) in v.iter().enumerate() {
            if !vi.is_zero() {
                r = r.add(&self.deriv(i).scale(vi));
            }
        }
        r
    }

    pub fn eval(&self, x: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                for _ in 0..e {
                    t *= &x[i];
                }
            }
            acc += t;
        }
        acc
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&Mono::one())
    }

    pub fn eval_f64(&self, x: &[f64]) -> f64 {
        self.eval_jet(x).0
    }

    /// Value, gradient and Hessian at a floating-point point.
    pub fn eval_jet(&self, x: &[f64]) -> (f64, [f64; NVARS], [[f64; NVARS]; NVARS]) {
        let mut v = 0.0;
        let mut g = [0.0; NVARS];
        let mut h = [[0.0; NVARS]; NVARS];
        let pw = |xi: f64, e: i32| if e < 0 { 0.0 } else { xi.powi(e) };
        for (m, c) in &self.terms {
            let c = c.to_f64();
            let e: [i32; NVARS] = std::array::from_fn(|i| m.0[i] as i32);
            let vars: Vec<usize> = (0..NVARS).filter(|&i| e[i] > 0).collect();
            let p: [f64; NVARS] = std::array::from_fn(|i| pw(x[i], e[i]));
            let prod_except = |skip: &[usize]| -> f64 {
                vars.iter().filter(|i| !skip.contains(i)).map(|&i| p[i]).product()
            };
            v += c * prod_except(&[]);
            for &i in &vars {
                let di = e[i] as f64 * pw(x[i], e[i] - 1);
                g[i] += c * di * prod_except(&[i]);
                let dii = (e[i] * (e[i] - 1)) as f64 * pw(x[i], e[i] - 2);
                h[i][i] += c * dii * prod_except(&[i]);
                for &j in &vars {
                    if j <= i {
                        continue;
                    }
                    let dj = e[j] as f64 * pw(x[j], e[j] - 1);
                    let t = c * di * dj * prod_except(&[i, j]);
                    h[i][j] += t;
                    h[j][i] += t;
                }
            }
        }
        (v, g, h)
    }

    /// Substitutes `x_i ↦ sign[i] · x_{perm[i]}`.
    pub fn substitute_signed(&self, perm: &[usize; NVARS], sign: &[i8; NVARS]) -> Poly16 {
        let mut r = Poly16::zero();
        for (m, c) in &self.terms {
            let mut m2 = Mono::one();
            let mut neg = false;
            for i in 0..NVARS {
                m2.0[perm[i]] += m.0[i];
                if sign[i] < 0 && m.0[i] % 2 == 1 {
                    neg = !neg;
                }
            }
            r.add_term(m2, if neg { -c.clone() } else { c.clone() });
        }
        r
    }

    /// Largest absolute numerator and denominator over all coefficients.
    pub fn height(&self) -> (num_bigint::BigInt, num_bigint::BigInt) {
        let mut n = num_bigint::BigInt::zero();
        let mut d = num_bigint::BigInt::one();
        for c in self.terms.values() {
            n = n.max(c.numer().abs());
            d = d.max(c.denom().clone());
        }
        (n, d)
    }
}

impl fmt::Display for Poly16 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            write!(f, "{}", rat_to_string(&mag))?;
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    write!(f, "*{}^{}", var_name(i), e)?;
                }
            }
        }
        Ok(())
    }
}

struct Lexer<'a> {
    s: &'a [u8],
    pos: usize,
    line: usize,
    col0: usize,
}

impl<'a> Lexer<'a> {
    fn err(&self, msg: &str) -> Error {
        let pos = self.pos.min(self.s.len());
        match self.s[..pos].iter().rposition(|&b| b == b'\n') {
            Some(nl) => {
                let lines = self.s[..pos].iter().filter(|&&b| b == b'\n').count();
                Error::parse(self.line + lines, pos - nl, msg)
            }
            None => Error::parse(self.line, self.col0 + pos, msg),
        }
    }

    fn ws(&mut self) {
        while self.pos < self.s.len() && (self.s[self.pos] as char).is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.ws();
        self.s.get(self.pos).copied()
    }

    fn digits(&mut self) -> Option<&'a str> {
        self.ws();
        let st = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if st == self.pos {
            None
        } else {
            std::str::from_utf8(&self.s[st..self.pos]).ok()
        }
    }

    fn rational(&mut self) -> Result<Rational> {
        let n = self.digits().ok_or_else(|| self.err("expected number"))?;
        if self.peek() == Some(b'/') {
            self.pos += 1;
            let d = self.digits().ok_or_else(|| self.err("expected denominator"))?;
            parse_rational(&format!("{n}/{d}")).ok_or_else(|| self.err("zero denominator"))
        } else {
            Ok(parse_rational(n).expect("digits"))
        }
    }

    fn var(&mut self) -> Result<usize> {
        self.ws();
        let bad = |l: &Self| l.err("expected variable x1_0..x2_7");
        if self.s.get(self.pos) != Some(&b'x') {
            return Err(bad(self));
        }
        let st = self.pos;
        let ok = self.s.len() >= st + 4
            && matches!(self.s[st + 1], b'1' | b'2')
            && self.s[st + 2] == b'_'
            && (b'0'..=b'7').contains(&self.s[st + 3])
            && !self.s.get(st + 4).is_some_and(|c| c.is_ascii_digit());
        if !ok {
            return Err(bad(self));
        }
        self.pos += 4;
        Ok(((self.s[st + 1] - b'1') as usize) * 8 + (self.s[st + 3] - b'0') as usize)
    }
}

/// Parses the polynomial grammar
/// `poly := term (('+'|'-') term)*`, `term := rational ('*' var '^' nat)*`.
/// A leading sign, a missing coefficient and a missing `^1` are accepted.
pub fn parse_poly(s: &str) -> Result<Poly16> {
    parse_poly_at(s, 1, 1)
}

/// A polynomial spread over several lines; `#` starts a comment. Error
/// positions refer to the original text.
pub fn parse_poly_file(text: &str) -> Result<Poly16> {
    let blanked: String = text
        .lines()
        .map(|l| match l.find('#') {
            Some(i) => format!("{}{}", &l[..i], " ".repeat(l.len() - i)),
            None => l.to_string(),
        })
        .collect::<Vec<_>>()
        .join("\n");
    parse_poly(&blanked)
}

pub(crate) fn parse_poly_at(s: &str, line: usize, col0: usize) -> Result<Poly16> {
    let mut lx = Lexer { s: s.as_bytes(), pos: 0, line, col0 };
    let mut p = Poly16::zero();
    if lx.peek().is_none() {
        return Err(lx.err("empty polynomial"));
    }
    let mut first = true;
    while lx.peek().is_some() {
        let mut neg = false;
        match lx.peek() {
            Some(b'+') | Some(b'-') => {
                neg = lx.s[lx.pos] == b'-';
                lx.pos += 1;
            }
            _ if !first => return Err(lx.err("expected '+' or '-'")),
            _ => {}
        }
        first = false;
        let mut coef = Rational::one();
        let mut m = Mono::one();
        let mut need_factor = false;
        match lx.peek() {
            Some(c) if c.is_ascii_digit() => coef = lx.rational()?,
            Some(b'x') => need_factor = true,
            _ => return Err(lx.err("expected term")),
        }
        loop {
            if !need_factor {
                if lx.peek() != Some(b'*') {
                    break;
                }
                lx.pos += 1;
            }
            need_factor = false;
            let v = lx.var()?;
            let mut e: u32 = 1;
            if lx.peek() == Some(b'^') {
                lx.pos += 1;
                let d = lx.digits().ok_or_else(|| lx.err("expected exponent"))?;
                e = d.parse().map_err(|_| lx.err("exponent too large"))?;
            }
            let tot = m.0[v] as u32 + e;
            if tot > u8::MAX as u32 {
                return Err(lx.err("exponent too large"));
            }
            m.0[v] = tot as u8;
        }
        p.add_term(m, if neg { -coef } else { coef });
    }
    Ok(p)
}

/// Octonion-valued polynomial, one [`Poly16`] per basis component.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct OctPoly {
    pub c: [Poly16; 8],
}

impl OctPoly {
    pub fn zero() -> Self {
        OctPoly::default()
    }

    pub fn real(p: Poly16) -> Self {
        let mut o = OctPoly::zero();
        o.c[0] = p;
        o
    }

    pub fn constant(q: &OctQ) -> Self {
        OctPoly { c: std::array::from_fn(|k| Poly16::constant(q.c[k].clone())) }
    }

    /// `p · q` for a real polynomial `p` and constant octonion `q`.
    pub fn times_const(p: &Poly16, q: &OctQ) -> Self {
        OctPoly { c: std::array::from_fn(|k| p.scale(&q.c[k])) }
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|p| p.is_zero())
    }

    pub fn add(&self, o: &Self) -> Self {
        OctPoly { c: std::array::from_fn(|k| self.c[k].add(&o.c[k])) }
    }

    pub fn sub(&self, o: &Self) -> Self {
        OctPoly { c: std::array::from_fn(|k| self.c[k].sub(&o.c[k])) }
    }

    pub fn neg(&self) -> Self {
        OctPoly { c: std::array::from_fn(|k| self.c[k].neg()) }
    }

    pub fn conj(&self) -> Self {
        OctPoly { c: std::array::from_fn(|k| if k == 0 { self.c[0].clone() } else { self.c[k].neg() }) }
    }

    pub fn scale(&self, s: &Rational) -> Self {
        OctPoly { c: std::array::from_fn(|k| self.c[k].scale(s)) }
    }

    pub fn mul_poly(&self, p: &Poly16) -> Self {
        OctPoly { c: std::array::from_fn(|k| self.c[k].mul(p)) }
    }

    pub fn deriv(&self, i: usize) -> Self {
        OctPoly { c: std::array::from_fn(|k| self.c[k].deriv(i)) }
    }

    /// `± e_p · F` (`sign` applied to the result).
    pub fn left_unit(&self, p: usize, sign: i8) -> Self {
        let mut out = OctPoly::zero();
        for j in 0..8 {
            if self.c[j].is_zero() {
                continue;
            }
            let (s, k) = TABLE[p][j];
            let t = if s * sign > 0 { self.c[j].clone() } else { self.c[j].neg() };
            out.c[k as usize] = out.c[k as usize].add(&t);
        }
        out
    }

    /// `± F · e_p`.
    pub fn right_unit(&self, p: usize, sign: i8) -> Self {
        let mut out = OctPoly::zero();
        for j in 0..8 {
            if self.c[j].is_zero() {
                continue;
            }
            let (s, k) = TABLE[j][p];
            let t = if s * sign > 0 { self.c[j].clone() } else { self.c[j].neg() };
            out.c[k as usize] = out.c[k as usize].add(&t);
        }
        out
    }

    /// `q · F` for a constant octonion `q`.
    pub fn left_const(&self, q: &OctQ) -> Self {
        let mut out = OctPoly::zero();
        for p in 0..8 {
            if !q.c[p].is_zero() {
                out = out.add(&self.left_unit(p, 1).scale(&q.c[p]));
            }
        }
        out
    }

    /// `F · q` for a constant octonion `q`.
    pub fn right_const(&self, q: &OctQ) -> Self {
        let mut out = OctPoly::zero();
        for p in 0..8 {
            if !q.c[p].is_zero() {
                out = out.add(&self.right_unit(p, 1).scale(&q.c[p]));
            }
        }
        out
    }

    pub fn eval(&self, x: &[Rational]) -> OctQ {
        Octonion::new(std::array::from_fn(|k| self.c[k].eval(x)))
    }

    pub fn eval_f64(&self, x: &[f64]) -> Octonion<f64> {
        Octonion::new(std::array::from_fn(|k| self.c[k].eval_f64(x)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn file_errors_point_into_the_file() {
        let p = parse_poly_file("# header\nx1_0^2 +\n  3*x2_1 # tail\n").unwrap();
        assert_eq!(p, parse_poly("x1_0^2 + 3*x2_1").unwrap());
        match parse_poly_file("# header\nx1_0 + * x2_1") {
            Err(Error::Parse { line, col, .. }) => assert_eq!((line, col), (2, 8)),
            other => panic!("{other:?}"),
        }
    }
    use crate::scalar::rat;

    fn x(b: usize, p: usize) -> Poly16 {
        Poly16::var(var_index(b, p))
    }

    #[test]
    fn grevlex_order() {
        let a = Mono::var(0);
        let b = Mono::var(1);
        assert_eq!(grevlex(&a, &b), Ordering::Greater);
        // x0 x2 < x1^2 in grevlex (x2 appears in the smaller monomial).
        let m1 = Mono::var(0).mul(&Mono::var(2));
        let m2 = Mono::var(1).mul(&Mono::var(1));
        assert_eq!(grevlex(&m1, &m2), Ordering::Less);
        assert_eq!(grevlex(&Mono::var(15).mul(&Mono::var(15)), &Mono::var(0)), Ordering::Greater);
    }

    #[test]
    fn arithmetic_and_derivatives() {
        let p = x(1, 0).mul(&x(1, 0)).add(&x(2, 3).scale(&rat(3, 2)));
        assert_eq!(p.deriv(0), x(1, 0).scale(&rat(2, 1)));
        assert_eq!(p.deriv(11), Poly16::constant(rat(3, 2)));
        assert!(p.sub(&p).is_zero());
        let pt: Vec<Rational> = (0..16).map(|i| rat(i as i64, 1)).collect();
        assert_eq!(p.eval(&pt), rat(0, 1) + rat(33, 2));
    }

    #[test]
    fn jet_matches_symbolic() {
        let p = parse_poly("3*x1_0^2*x2_1^1 - 1/2*x1_3^3 + 2*x1_0^1*x1_3^1*x2_7^2 + 5").unwrap();
        let pt: Vec<f64> = (0..16).map(|i| 0.1 * i as f64 - 0.4).collect();
        let (v, g, h) = p.eval_jet(&pt);
        assert!((v - p.eval_f64(&pt)).abs() < 1e-12);
        for i in 0..16 {
            assert!((g[i] - p.deriv(i).eval_f64(&pt)).abs() < 1e-12);
            for j in 0..16 {
                assert!((h[i][j] - p.deriv(i).deriv(j).eval_f64(&pt)).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn text_round_trip() {
        let p = parse_poly("x1_0*x2_0 - 3/4 * x1_1^2 + 7").unwrap();
        let s = p.to_string();
        assert_eq!(s, "-3/4*x1_1^2 + 1*x1_0^1*x2_0^1 + 7");
        assert_eq!(parse_poly(&s).unwrap(), p);
        assert_eq!(parse_poly(&s).unwrap().to_string(), s);
        assert_eq!(Poly16::zero().to_string(), "0");
        assert_eq!(parse_poly("0").unwrap(), Poly16::zero());
    }

    #[test]
    fn parse_errors_have_columns() {
        match parse_poly("1 + x3_0") {
            Err(Error::Parse { line: 1, col: 5, .. }) => {}
            other => panic!("{other:?}"),
        }
        assert!(parse_poly("1 +").is_err());
        assert!(parse_poly("2 3").is_err());
        assert!(parse_poly("1/0").is_err());
        assert!(parse_poly("").is_err());
        assert!(parse_poly("x1_8").is_err());
    }

    #[test]
    fn oct_unit_multiplication() {
        let f = OctPoly::times_const(&x(1, 1), &OctQ::unit(2));
        // e2 · (−e1) = e4
        let g = f.right_unit(1, -1);
        assert_eq!(g, OctPoly::times_const(&x(1, 1), &OctQ::unit(4)));
        let h = f.left_const(&OctQ::unit(1));
        assert_eq!(h, OctPoly::times_const(&x(1, 1), &OctQ::unit(4)));
    }

    #[test]
    fn signed_substitution() {
        let mut perm = [0usize; 16];
        let mut sign = [1i8; 16];
        for i in 0..16 {
            perm[i] = (i + 1) % 16;
        }
        sign[0] = -1;
        let p = x(1, 0).mul(&x(1, 1));
        let q = p.substitute_signed(&perm, &sign);
        assert_eq!(q, x(1, 1).mul(&x(1, 2)).neg());
    }
}
