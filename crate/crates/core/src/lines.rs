//! Octonionic lines in 𝕆², the embedding `j` of Hermitian matrices into
//! quadratic forms on ℝ¹⁶ and its left inverse `θ`.
//!
//! Coordinates on ℝ¹⁶ are ordered `(x1_0..x1_7, x2_0..x2_7)` everywhere.

use std::fmt;


use crate::error::{Error, Result};
use crate::herm2::{HermMatrix2, OctVector2};
use crate::octonion::Octonion;
use crate::scalar::{parse_rational, rat_to_string, Rational, Scalar};

pub use crate::herm2::OctVector2 as Vector2;

/// `Slope(a)` is `{(q, a q)}`; `Infinity` is `{(0, q)}`.
#[derive(Clone, Debug, PartialEq)]
pub enum OctLine<S> {
    Slope(Octonion<S>),
    Infinity,
}

pub fn line_spanned<S: Scalar>(xi: &OctVector2<S>) -> Result<OctLine<S>> {
    if xi.is_zero() {
        return Err(Error::ZeroVector);
    }
    if xi.x1.is_zero() {
        return Ok(OctLine::Infinity);
    }
    Ok(OctLine::Slope(xi.x2.mul(&xi.x1.inv()?)))
}

/// Unit vectors lie on one line iff `ξξ* = ηη*`.
pub fn same_line<S: Scalar>(xi: &OctVector2<S>, eta: &OctVector2<S>) -> Result<bool> {
    if !xi.norm_sq().is_one() || !eta.norm_sq().is_one() {
        return Err(Error::NotUnit);
    }
    Ok(HermMatrix2::rank_one(xi) == HermMatrix2::rank_one(eta))
}

/// Symmetric 16×16 matrix `B` of the form `b(x) = xᵀ B x`.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadForm16<S> {
    m: Vec<S>,
}

impl<S: Scalar> QuadForm16<S> {
    pub fn zero() -> Self {
        QuadForm16 { m: vec![S::zero(); 256] }
    }

    pub fn identity() -> Self {
        let mut q = Self::zero();
        for i in 0..16 {
            q.m[i * 16 + i] = S::one();
        }
        q
    }

    /// Builds a form from a full matrix; fails unless it is symmetric.
    pub fn from_matrix(m: Vec<S>) -> Option<Self> {
        assert_eq!(m.len(), 256);
        let q = QuadForm16 { m };
        if (0..16).all(|i| (0..i).all(|j| q.get(i, j) == q.get(j, i))) {
            Some(q)
        } else {
            None
        }
    }

    pub fn get(&self, i: usize, j: usize) -> &S {
        &self.m[i * 16 + j]
    }

    /// Sets entries `(i, j)` and `(j, i)`.
    pub fn set_sym(&mut self, i: usize, j: usize, v: S) {
        self.m[i * 16 + j] = v.clone();
        self.m[j * 16 + i] = v;
    }

    pub fn entries(&self) -> &[S] {
        &self.m
    }

    pub fn bilinear(&self, x: &[S], y: &[S]) -> S {
        let by: Vec<S> = (0..16).map(|i| S::dot(&self.m[i * 16..(i + 1) * 16], y)).collect();
        S::dot(x, &by)
    }

    pub fn eval(&self, xi: &OctVector2<S>) -> S {
        let x = xi.coords();
        self.bilinear(&x, &x)
    }

    pub fn add(&self, o: &Self) -> Self {
        QuadForm16 { m: self.m.iter().zip(&o.m).map(|(a, b)| a.clone() + b.clone()).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        QuadForm16 { m: self.m.iter().zip(&o.m).map(|(a, b)| a.clone() - b.clone()).collect() }
    }

    pub fn scale(&self, s: &S) -> Self {
        QuadForm16 { m: self.m.iter().map(|a| a.clone() * s.clone()).collect() }
    }

    /// `Mᵀ B + B M` for a 16×16 row-major `M`.
    pub fn sym_action(&self, mat: &[S]) -> Self {
        let mut out = Self::zero();
        for i in 0..16 {
            for j in 0..16 {
                let mut v = S::zero();
                for k in 0..16 {
                    v += mat[k * 16 + i].clone() * self.get(k, j).clone();
                    v += self.get(i, k).clone() * mat[k * 16 + j].clone();
                }
                out.m[i * 16 + j] = v;
            }
        }
        out
    }
}

/// `j(A)(ξ) = re(ξ* A ξ)`.
pub fn j_map<S: Scalar>(a: &HermMatrix2<S>) -> QuadForm16<S> {
    let mut b = QuadForm16::zero();
    for p in 0..8 {
        b.set_sym(p, p, a.a.clone());
        b.set_sym(8 + p, 8 + p, a.b.clone());
    }
    // 2 re(conj(ξ1) q ξ2) = 2 Σ x1_r x2_s re(conj(e_r) q e_s)
    for r in 0..8 {
        let left = Octonion::<S>::unit(r).conj().mul(&a.q);
        for s in 0..8 {
            let v = left.mul(&Octonion::unit(s)).re();
            b.set_sym(r, 8 + s, v);
        }
    }
    b
}

/// `θ(B) = (1/16) Hess_𝕆(b)`: block traces over 8 on the diagonal and
/// `(1/8) Σ e_a C_ab conj(e_b)` off the diagonal, `C_ab = B[(1,a),(2,b)]`.
pub fn theta_map<S: Scalar>(b: &QuadForm16<S>) -> HermMatrix2<S> {
    let eighth = S::from_frac(1, 8);
    let mut t1 = S::zero();
    let mut t2 = S::zero();
    for p in 0..8 {
        t1 += b.get(p, p).clone();
        t2 += b.get(8 + p, 8 + p).clone();
    }
    let mut q = Octonion::zero();
    for a in 0..8 {
        for c in 0..8 {
            let v = b.get(a, 8 + c);
            if v.is_zero() {
                continue;
            }
            let prod = Octonion::<S>::unit(a).mul(&Octonion::unit(c).conj());
            q += &prod.scale(v);
        }
    }
    HermMatrix2::new(t1 * eighth.clone(), t2 * eighth.clone(), q.scale(&eighth))
}

/// Whether `B` lies in the image of `j`, i.e. `j(θ(B)) = B`.
pub fn is_in_h16_0<S: Scalar>(b: &QuadForm16<S>) -> bool {
    &j_map(&theta_map(b)) == b
}

/// Mean of `b` over the unit sphere of the line through `ξ`: one eighth of the
/// trace of `B` restricted to that line. The line is spanned by the orthogonal
/// vectors `(e_p, a e_p)` of common length² `1 + |a|²`, or `(0, e_p)`.
pub fn line_average<S: Scalar>(b: &QuadForm16<S>, xi: &OctVector2<S>) -> Result<S> {
    let line = line_spanned(xi)?;
    let mut tr = S::zero();
    let mut len_sq = S::one();
    for p in 0..8 {
        let ep = Octonion::<S>::unit(p);
        let w = match &line {
            OctLine::Slope(a) => OctVector2::new(ep.clone(), a.mul(&ep)),
            OctLine::Infinity => OctVector2::new(Octonion::zero(), ep),
        };
        if p == 0 {
            len_sq = w.norm_sq();
        }
        tr += b.eval(&w);
    }
    Ok(tr / (len_sq * S::from_i64(8)))
}

impl fmt::Display for QuadForm16<Rational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..16 {
            let row: Vec<String> = (0..16).map(|j| rat_to_string(self.get(i, j))).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

/// Reads 16 rows of 16 whitespace-separated rationals.
pub fn parse_quadform(s: &str) -> Result<QuadForm16<Rational>> {
    let mut m = Vec::with_capacity(256);
    let mut rows = 0;
    for (ln, line) in s.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        rows += 1;
        if rows > 16 {
            return Err(Error::parse(ln + 1, 1, "more than 16 rows"));
        }
        let mut count = 0;
        let mut col = 0;
        for tok in line.split_whitespace() {
            col = line[col..].find(tok).map(|c| c + col).unwrap_or(col);
            let v = parse_rational(tok).ok_or_else(|| Error::parse(ln + 1, col + 1, "invalid rational"))?;
            m.push(v);
            count += 1;
            col += tok.len();
        }
        if count != 16 {
            return Err(Error::parse(ln + 1, 1, format!("expected 16 entries, found {count}")));
        }
    }
    if rows != 16 {
        return Err(Error::parse(rows + 1, 1, "expected 16 rows"));
    }
    QuadForm16::from_matrix(m).ok_or_else(|| Error::parse(1, 1, "matrix is not symmetric"))
}
