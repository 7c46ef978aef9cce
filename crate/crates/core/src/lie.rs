//! Traceless octonionic 2×2 matrices acting on 𝕆² (as 16×16 real matrices)
//! and on Hermitian matrices (as 10×10 real matrices), plus evaluated words of
//! exponentials.
//!
//! The exponential is degree-13 diagonal Padé with scaling and squaring.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::herm2::{act_generator, HermF, HermMatrix2, OctMatrix2, OctVector2};
use crate::octonion::Octonion;
use crate::scalar::Scalar;

/// Row-major 16×16 matrix of `ξ ↦ A ξ`.
pub fn hat<S: Scalar>(a: &OctMatrix2<S>) -> Result<Vec<S>> {
    if !a.is_traceless() {
        return Err(Error::NotTraceless);
    }
    Ok(hat_unchecked(a))
}

pub(crate) fn hat_unchecked<S: Scalar>(a: &OctMatrix2<S>) -> Vec<S> {
    let mut m = vec![S::zero(); 256];
    for j in 0..16 {
        let mut v = vec![S::zero(); 16];
        v[j] = S::one();
        let img = a.apply(&OctVector2::from_coords(&v)).coords();
        for i in 0..16 {
            m[i * 16 + j] = img[i].clone();
        }
    }
    m
}

/// The basis `(a, b, q0..q7)` of Hermitian matrices.
pub fn herm_basis<S: Scalar>(k: usize) -> HermMatrix2<S> {
    let mut v = vec![S::zero(); 10];
    v[k] = S::one();
    HermMatrix2::from_vec10(&v)
}

/// Row-major 10×10 matrix of `X ↦ −A* X − X A` in the basis `(a, b, q0..q7)`.
pub fn rho_matrix<S: Scalar>(a: &OctMatrix2<S>) -> Result<Vec<S>> {
    let mut m = vec![S::zero(); 100];
    for j in 0..10 {
        let img = act_generator(a, &herm_basis(j))?.to_vec10();
        for i in 0..10 {
            m[i * 10 + j] = img[i].clone();
        }
    }
    Ok(m)
}

/// `½(ξ η* + η ξ*)`.
pub fn t_map<S: Scalar>(xi: &OctVector2<S>, eta: &OctVector2<S>) -> HermMatrix2<S> {
    let q = &xi.x1.mul(&eta.x2.conj()) + &eta.x1.mul(&xi.x2.conj());
    HermMatrix2::new(xi.x1.inner(&eta.x1), xi.x2.inner(&eta.x2), q.scale(&S::half()))
}

/// `(⟨ξ, Aη⟩, ⟨A*ξ, η⟩)`.
pub fn dual_check<S: Scalar>(a: &OctMatrix2<S>, xi: &OctVector2<S>, eta: &OctVector2<S>) -> (S, S) {
    (xi.inner(&a.apply(eta)), a.conj_transpose().apply(xi).inner(eta))
}

const PADE13: [f64; 14] = [
    64764752532480000.0,
    32382376266240000.0,
    7771770303897600.0,
    1187353796428800.0,
    129060195264000.0,
    10559470521600.0,
    670442572800.0,
    33522128640.0,
    1323241920.0,
    40840800.0,
    960960.0,
    16380.0,
    182.0,
    1.0,
];
const THETA13: f64 = 5.371920351148152;

fn norm1(a: &DMatrix<f64>) -> f64 {
    a.column_iter().map(|c| c.iter().map(|x| x.abs()).sum::<f64>()).fold(0.0, f64::max)
}

/// Matrix exponential by scaling and squaring with the [13/13] Padé approximant.
pub fn expm(a: &DMatrix<f64>) -> DMatrix<f64> {
    let n = a.nrows();
    let nrm = norm1(a);
    let s = if nrm > THETA13 { (nrm / THETA13).log2().ceil() as i32 } else { 0 };
    let a = a / 2f64.powi(s);
    let id = DMatrix::<f64>::identity(n, n);
    let a2 = &a * &a;
    let a4 = &a2 * &a2;
    let a6 = &a4 * &a2;
    let b = &PADE13;
    let u_in = &a6 * (&a6 * b[13] + &a4 * b[11] + &a2 * b[9]) + &a6 * b[7] + &a4 * b[5] + &a2 * b[3] + &id * b[1];
    let u = &a * u_in;
    let v = &a6 * (&a6 * b[12] + &a4 * b[10] + &a2 * b[8]) + &a6 * b[6] + &a4 * b[4] + &a2 * b[2] + &id * b[0];
    let p = &v + &u;
    let q = &v - &u;
    let mut r = q.lu().solve(&p).expect("Padé denominator is invertible for scaled input");
    for _ in 0..s {
        r = &r * &r;
    }
    r
}

/// A group element given as an evaluated word, in both representations.
#[derive(Clone, Debug)]
pub struct GroupElem {
    pub rep16: DMatrix<f64>,
    pub rep10: DMatrix<f64>,
}

impl GroupElem {
    pub fn identity() -> Self {
        GroupElem { rep16: DMatrix::identity(16, 16), rep10: DMatrix::identity(10, 10) }
    }

    pub fn apply16(&self, xi: &OctVector2<f64>) -> OctVector2<f64> {
        let v = nalgebra::DVector::from_vec(xi.coords().to_vec());
        let w = &self.rep16 * v;
        OctVector2::from_coords(w.as_slice())
    }

    pub fn apply10(&self, x: &HermF) -> HermF {
        let v = nalgebra::DVector::from_vec(x.to_vec10().to_vec());
        let w = &self.rep10 * v;
        HermMatrix2::from_vec10(w.as_slice())
    }
}

/// Real scalar `λ ≠ 0` acting as `λ·Id` on 𝕆² and `X ↦ λ⁻² X` on Hermitian
/// matrices, matching `X ↦ (g⁻¹)* X g⁻¹`.
pub fn scalar_elem(lambda: f64) -> GroupElem {
    GroupElem {
        rep16: DMatrix::identity(16, 16) * lambda,
        rep10: DMatrix::identity(10, 10) / (lambda * lambda),
    }
}

/// `∏ exp(t·hat(A))` in word order, paired with `∏ exp(t·rho(A))`.
pub fn exp_word(word: &[(OctMatrix2<f64>, f64)]) -> Result<GroupElem> {
    let mut g = GroupElem::identity();
    for (a, t) in word {
        let h = DMatrix::from_row_slice(16, 16, &hat(a)?) * *t;
        let r = DMatrix::from_row_slice(10, 10, &rho_matrix(a)?) * *t;
        g.rep16 = &g.rep16 * expm(&h);
        g.rep10 = &g.rep10 * expm(&r);
    }
    Ok(g)
}

pub fn dmatrix_from<S: Scalar>(n: usize, m: &[S]) -> DMatrix<f64> {
    DMatrix::from_row_slice(n, n, &m.iter().map(|x| x.to_f64()).collect::<Vec<_>>())
}

/// Traceless generator with the given off-diagonal entries and `diag(d, −d)`.
pub fn generator<S: Scalar>(d: Octonion<S>, upper: Octonion<S>, lower: Octonion<S>) -> OctMatrix2<S> {
    let neg = -&d;
    OctMatrix2::new([[d, upper], [lower, neg]])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::herm2::HermQ;
    use crate::octonion::{OctF, OctQ};
    use crate::scalar::{rat, Rational};

    #[test]
    fn hat_examples() {
        let a = OctMatrix2::<Rational>::diag(OctQ::one(), -OctQ::one());
        let h = hat(&a).unwrap();
        for i in 0..16 {
            for j in 0..16 {
                let v = if i != j { 0 } else if i < 8 { 1 } else { -1 };
                assert_eq!(h[i * 16 + j], rat(v, 1));
            }
        }
        assert!(hat(&OctMatrix2::<Rational>::zero()).unwrap().iter().all(|x| *x == rat(0, 1)));
        assert_eq!(hat(&OctMatrix2::<Rational>::identity()), Err(Error::NotTraceless));
    }

    #[test]
    fn rho_examples() {
        let a = OctMatrix2::<Rational>::diag(OctQ::one(), -OctQ::one());
        let r = rho_matrix(&a).unwrap();
        let x = HermQ::identity().to_vec10();
        let img: Vec<Rational> = (0..10).map(|i| (0..10).map(|j| r[i * 10 + j].clone() * x[j].clone()).sum()).collect();
        assert_eq!(HermMatrix2::from_vec10(&img), HermQ::diag(rat(-2, 1), rat(2, 1)));
        assert!(rho_matrix(&OctMatrix2::<Rational>::zero()).unwrap().iter().all(|x| *x == rat(0, 1)));
    }

    #[test]
    fn exp_examples() {
        assert_eq!(exp_word(&[]).unwrap().rep16, DMatrix::identity(16, 16));
        let a = OctMatrix2::<f64>::diag(OctF::one(), -OctF::one());
        let g = exp_word(&[(a, 0.7)]).unwrap();
        for i in 0..16 {
            let want = if i < 8 { 0.7f64.exp() } else { (-0.7f64).exp() };
            assert!((g.rep16[(i, i)] - want).abs() < 1e-13);
        }
    }

    #[test]
    fn expm_matches_series_on_nilpotent() {
        let mut n = DMatrix::<f64>::zeros(3, 3);
        n[(0, 1)] = 2.0;
        n[(1, 2)] = 3.0;
        let e = expm(&n);
        assert!((e[(0, 2)] - 3.0).abs() < 1e-14);
        assert!((e[(0, 1)] - 2.0).abs() < 1e-14);
        let big = DMatrix::<f64>::identity(2, 2) * 20.0;
        assert!((expm(&big)[(0, 0)] / 20f64.exp() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn t_map_examples() {
        let e0 = OctVector2::new(OctQ::one(), OctQ::zero());
        let e1 = OctVector2::new(OctQ::zero(), OctQ::one());
        assert_eq!(t_map(&e0, &e1), HermMatrix2::new(rat(0, 1), rat(0, 1), OctQ::real(rat(1, 2))));
        let xi = OctVector2::new(OctQ::one(), OctQ::unit(1));
        assert_eq!(t_map(&xi, &xi), HermQ::rank_one(&xi));
        assert_eq!(
            t_map(&xi, &e0),
            HermMatrix2::new(rat(1, 1), rat(0, 1), OctQ::unit(1).scale(&rat(-1, 2)))
        );
    }

    #[test]
    fn dual_examples() {
        let xi = OctVector2::new(OctQ::from_i64s([1, 2, 3, 0, 0, 1, 0, 0]), OctQ::from_i64s([0, 0, 1, 1, 0, 0, 2, 0]));
        let eta = OctVector2::new(OctQ::from_i64s([0, 1, 0, 0, 3, 0, 0, 1]), OctQ::from_i64s([2, 0, 0, 0, 0, 1, 0, 1]));
        let (l, r) = dual_check(&OctMatrix2::identity(), &xi, &eta);
        assert_eq!(l, r);
        let a = OctMatrix2::diag(OctQ::unit(1), OctQ::unit(2));
        let (l, r) = dual_check(&a, &xi, &eta);
        assert_eq!(l, r);
    }
}
