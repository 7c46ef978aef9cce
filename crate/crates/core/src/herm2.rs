//! 2×2 octonionic matrices: Hermitian matrices with real diagonal, general
//! matrices for generators and products, and column vectors.


use crate::error::{Error, Result};
use crate::octonion::{OctF, Octonion};
use crate::scalar::Scalar;

/// A column `(ξ1, ξ2)` in 𝕆².
#[derive(Clone, Debug, PartialEq)]
pub struct OctVector2<S> {
    pub x1: Octonion<S>,
    pub x2: Octonion<S>,
}

impl<S: Scalar> OctVector2<S> {
    pub fn new(x1: Octonion<S>, x2: Octonion<S>) -> Self {
        OctVector2 { x1, x2 }
    }

    pub fn zero() -> Self {
        Self::new(Octonion::zero(), Octonion::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.x1.is_zero() && self.x2.is_zero()
    }

    /// `re(ξ* η)`.
    pub fn inner(&self, o: &Self) -> S {
        self.x1.inner(&o.x1) + self.x2.inner(&o.x2)
    }

    pub fn norm_sq(&self) -> S {
        self.x1.norm_sq() + self.x2.norm_sq()
    }

    pub fn scale(&self, s: &S) -> Self {
        Self::new(self.x1.scale(s), self.x2.scale(s))
    }

    /// `(ξ1 u, ξ2 u)`.
    pub fn right_mul(&self, u: &Octonion<S>) -> Self {
        Self::new(self.x1.mul(u), self.x2.mul(u))
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::new(&self.x1 + &o.x1, &self.x2 + &o.x2)
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self::new(&self.x1 - &o.x1, &self.x2 - &o.x2)
    }

    /// Coordinates in the global order `(x1_0..x1_7, x2_0..x2_7)`.
    pub fn coords(&self) -> [S; 16] {
        std::array::from_fn(|i| if i < 8 { self.x1.c[i].clone() } else { self.x2.c[i - 8].clone() })
    }

    pub fn from_coords(v: &[S]) -> Self {
        assert_eq!(v.len(), 16);
        Self::new(
            Octonion::new(std::array::from_fn(|i| v[i].clone())),
            Octonion::new(std::array::from_fn(|i| v[8 + i].clone())),
        )
    }

    pub fn to_f64(&self) -> OctVector2<f64> {
        OctVector2::new(self.x1.to_f64(), self.x2.to_f64())
    }
}

/// Hermitian `[[a, q], [conj(q), b]]`.
#[derive(Clone, Debug, PartialEq)]
pub struct HermMatrix2<S> {
    pub a: S,
    pub b: S,
    pub q: Octonion<S>,
}

pub type HermQ = HermMatrix2<crate::scalar::Rational>;
pub type HermF = HermMatrix2<f64>;

impl<S: Scalar> HermMatrix2<S> {
    pub fn new(a: S, b: S, q: Octonion<S>) -> Self {
        HermMatrix2 { a, b, q }
    }

    pub fn zero() -> Self {
        Self::diag(S::zero(), S::zero())
    }

    pub fn identity() -> Self {
        Self::diag(S::one(), S::one())
    }

    pub fn diag(a: S, b: S) -> Self {
        Self::new(a, b, Octonion::zero())
    }

    pub fn det(&self) -> S {
        self.a.clone() * self.b.clone() - self.q.norm_sq()
    }

    /// Polarization of `det`: `½(a_A b_B + b_A a_B − 2 re(q_A conj(q_B)))`.
    pub fn mixed_det(&self, o: &Self) -> S {
        S::half()
            * (self.a.clone() * o.b.clone() + self.b.clone() * o.a.clone()
                - S::from_i64(2) * self.q.inner(&o.q))
    }

    pub fn tr(&self) -> S {
        self.a.clone() + self.b.clone()
    }

    pub fn adj(&self) -> Self {
        Self::new(self.b.clone(), self.a.clone(), -&self.q)
    }

    pub fn inverse(&self) -> Result<Self> {
        let d = self.det();
        if d.is_zero() {
            return Err(Error::SingularMatrix);
        }
        Ok(self.adj().scale(&(S::one() / d)))
    }

    pub fn is_positive_definite(&self) -> bool {
        self.a > S::zero() && self.det() > S::zero()
    }

    /// `min(a, det)`: positive exactly when Sylvester's criterion holds.
    pub fn sylvester_margin(&self) -> S {
        let d = self.det();
        if self.a < d {
            self.a.clone()
        } else {
            d
        }
    }

    pub fn scale(&self, s: &S) -> Self {
        Self::new(self.a.clone() * s.clone(), self.b.clone() * s.clone(), self.q.scale(s))
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::new(self.a.clone() + o.a.clone(), self.b.clone() + o.b.clone(), &self.q + &o.q)
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self::new(self.a.clone() - o.a.clone(), self.b.clone() - o.b.clone(), &self.q - &o.q)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero() && self.q.is_zero()
    }

    pub fn to_oct(&self) -> OctMatrix2<S> {
        OctMatrix2::new([
            [Octonion::real(self.a.clone()), self.q.clone()],
            [self.q.conj(), Octonion::real(self.b.clone())],
        ])
    }

    /// Hermitian part read from a general matrix: real parts of the diagonal
    /// and the (1,2) entry. Exact when `m` is Hermitian.
    pub fn from_oct(m: &OctMatrix2<S>) -> Self {
        Self::new(m.m[0][0].re(), m.m[1][1].re(), m.m[0][1].clone())
    }

    /// `re(ξ* A ξ) = a|ξ1|² + b|ξ2|² + 2 re(conj(ξ1) q ξ2)`.
    pub fn quad(&self, xi: &OctVector2<S>) -> S {
        self.a.clone() * xi.x1.norm_sq()
            + self.b.clone() * xi.x2.norm_sq()
            + S::from_i64(2) * xi.x1.conj().mul(&self.q).mul(&xi.x2).re()
    }

    /// `A ξ`.
    pub fn apply(&self, xi: &OctVector2<S>) -> OctVector2<S> {
        self.to_oct().apply(xi)
    }

    /// `ζ ζ*`, entries `ζ_i conj(ζ_j)`.
    pub fn rank_one(z: &OctVector2<S>) -> Self {
        Self::new(z.x1.norm_sq(), z.x2.norm_sq(), z.x1.mul(&z.x2.conj()))
    }

    /// Components `(a, b, q0..q7)`.
    pub fn to_vec10(&self) -> [S; 10] {
        std::array::from_fn(|i| match i {
            0 => self.a.clone(),
            1 => self.b.clone(),
            _ => self.q.c[i - 2].clone(),
        })
    }

    pub fn from_vec10(v: &[S]) -> Self {
        Self::new(v[0].clone(), v[1].clone(), Octonion::new(std::array::from_fn(|k| v[2 + k].clone())))
    }

    pub fn to_f64(&self) -> HermF {
        HermMatrix2::new(self.a.to_f64(), self.b.to_f64(), self.q.to_f64())
    }

    /// Roots `t1 <= t2` of `t² − (a+b)t + det`.
    pub fn spectrum(&self) -> Result<(S, S)> {
        let two = S::from_i64(2);
        let mid = (self.a.clone() + self.b.clone()) / two.clone();
        let h = (self.a.clone() - self.b.clone()) / two;
        let disc = h.clone() * h + self.q.norm_sq();
        let r = disc.try_sqrt().ok_or(Error::InexactSqrt)?;
        Ok((mid.clone() - r.clone(), mid + r))
    }
}

/// `X ↦ −A* X − X A` for traceless `A`.
pub fn act_generator<S: Scalar>(a: &OctMatrix2<S>, x: &HermMatrix2<S>) -> Result<HermMatrix2<S>> {
    if !a.is_traceless() {
        return Err(Error::NotTraceless);
    }
    let xm = x.to_oct();
    let m = a.conj_transpose().mul(&xm).add(&xm.mul(a)).neg();
    Ok(HermMatrix2::from_oct(&m))
}

/// A general 2×2 octonionic matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct OctMatrix2<S> {
    pub m: [[Octonion<S>; 2]; 2],
}

impl<S: Scalar> OctMatrix2<S> {
    pub fn new(m: [[Octonion<S>; 2]; 2]) -> Self {
        OctMatrix2 { m }
    }

    pub fn zero() -> Self {
        Self::new([[Octonion::zero(), Octonion::zero()], [Octonion::zero(), Octonion::zero()]])
    }

    pub fn identity() -> Self {
        Self::diag(Octonion::one(), Octonion::one())
    }

    pub fn diag(p: Octonion<S>, r: Octonion<S>) -> Self {
        Self::new([[p, Octonion::zero()], [Octonion::zero(), r]])
    }

    pub fn is_traceless(&self) -> bool {
        (&self.m[0][0] + &self.m[1][1]).is_zero()
    }

    pub fn trace(&self) -> Octonion<S> {
        &self.m[0][0] + &self.m[1][1]
    }

    pub fn conj_transpose(&self) -> Self {
        Self::new([
            [self.m[0][0].conj(), self.m[1][0].conj()],
            [self.m[0][1].conj(), self.m[1][1].conj()],
        ])
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::new(std::array::from_fn(|i| {
            std::array::from_fn(|j| &self.m[i][0].mul(&o.m[0][j]) + &self.m[i][1].mul(&o.m[1][j]))
        }))
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::new(std::array::from_fn(|i| std::array::from_fn(|j| &self.m[i][j] + &o.m[i][j])))
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self::new(std::array::from_fn(|i| std::array::from_fn(|j| &self.m[i][j] - &o.m[i][j])))
    }

    pub fn neg(&self) -> Self {
        Self::new(std::array::from_fn(|i| std::array::from_fn(|j| -&self.m[i][j])))
    }

    pub fn scale(&self, s: &S) -> Self {
        Self::new(std::array::from_fn(|i| std::array::from_fn(|j| self.m[i][j].scale(s))))
    }

    pub fn apply(&self, xi: &OctVector2<S>) -> OctVector2<S> {
        OctVector2::new(
            &self.m[0][0].mul(&xi.x1) + &self.m[0][1].mul(&xi.x2),
            &self.m[1][0].mul(&xi.x1) + &self.m[1][1].mul(&xi.x2),
        )
    }

    pub fn to_f64(&self) -> OctMatrix2<f64> {
        OctMatrix2::new(std::array::from_fn(|i| std::array::from_fn(|j| self.m[i][j].to_f64())))
    }
}

/// `re Tr(A⁻¹ B)`; the octonionic trace of a product of two Hermitian
/// matrices has an unambiguous real part.
pub fn trace_inv_times<S: Scalar>(a: &HermMatrix2<S>, b: &HermMatrix2<S>) -> Result<S> {
    let ai = a.inverse()?;
    Ok(ai.to_oct().mul(&b.to_oct()).trace().re())
}

/// `re Tr(A⁻¹ B A⁻¹ B)`, bracketed as `((A⁻¹B)A⁻¹)B`.
pub fn trace_inv_sq<S: Scalar>(a: &HermMatrix2<S>, b: &HermMatrix2<S>) -> Result<S> {
    let ai = a.inverse()?.to_oct();
    let bm = b.to_oct();
    Ok(ai.mul(&bm).mul(&ai).mul(&bm).trace().re())
}

/// Result of [`diagonalize`]: applying `g` as `X ↦ g X g*` takes `A` to a
/// diagonal matrix; when `swapped` is set the two diagonal entries are then
/// exchanged so that `d` is sorted descending.
#[derive(Clone, Debug)]
pub struct Diagonalization {
    pub d: HermF,
    pub g: OctMatrix2<f64>,
    pub swapped: bool,
}

fn cplx(re: f64, im: f64, s: &OctF) -> OctF {
    let mut o = s.scale(&im);
    o.c[0] += re;
    o
}

/// Unitary diagonalization inside the complex subfield spanned by `1` and
/// `s = Im(q)/|Im(q)|`. Eigenvalues come out in descending order.
pub fn diagonalize(a: &HermF) -> Diagonalization {
    if a.q.is_zero() {
        let swapped = a.a < a.b;
        let d = if swapped { HermF::diag(a.b, a.a) } else { a.clone() };
        return Diagonalization { d, g: OctMatrix2::identity(), swapped };
    }
    let im = a.q.im();
    let r = im.norm_sq().sqrt();
    let s = if r > 0.0 { im.scale(&(1.0 / r)) } else { OctF::unit(1) };
    // A restricted to the subfield is the complex Hermitian [[a, z], [z̄, b]].
    let (zr, zi) = (a.q.c[0], r);
    let (l2, l1) = a.spectrum().expect("float spectrum");
    // Eigenvector for l1: (z, l1 − a) or (l1 − b, z̄), whichever is larger.
    let u = [(zr, zi), (l1 - a.a, 0.0)];
    let w = [(l1 - a.b, 0.0), (zr, -zi)];
    let nu = u.iter().map(|(x, y)| x * x + y * y).sum::<f64>();
    let nw = w.iter().map(|(x, y)| x * x + y * y).sum::<f64>();
    let (v, n) = if nu >= nw { (u, nu.sqrt()) } else { (w, nw.sqrt()) };
    let v1 = [(v[0].0 / n, v[0].1 / n), (v[1].0 / n, v[1].1 / n)];
    // Orthogonal unit vector (−conj(v1_2), conj(v1_1)).
    let v2 = [(-v1[1].0, v1[1].1), (v1[0].0, -v1[0].1)];
    // g = V*, rows are the conjugated eigenvectors.
    let g = OctMatrix2::new([
        [cplx(v1[0].0, -v1[0].1, &s), cplx(v1[1].0, -v1[1].1, &s)],
        [cplx(v2[0].0, -v2[0].1, &s), cplx(v2[1].0, -v2[1].1, &s)],
    ]);
    Diagonalization { d: HermF::diag(l1, l2), g, swapped: false }
}

/// Kinds of primitive congruence moves recorded by [`simultaneous_reduce`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MoveKind {
    Unitary,
    Swap,
    Scale,
}

#[derive(Clone, Debug)]
pub struct Move {
    pub kind: MoveKind,
    pub m: OctMatrix2<f64>,
}

#[derive(Clone, Debug, Default)]
pub struct TransformRecord {
    pub moves: Vec<Move>,
}

impl TransformRecord {
    /// Applies every move `X ↦ M X M*` in order.
    pub fn apply(&self, x: &HermF) -> HermF {
        self.moves.iter().fold(x.clone(), |acc, mv| congruence(&mv.m, &acc))
    }

    fn push_diagonalization(&mut self, d: &Diagonalization) {
        self.moves.push(Move { kind: MoveKind::Unitary, m: d.g.clone() });
        if d.swapped {
            let p = OctMatrix2::new([[OctF::zero(), OctF::one()], [OctF::one(), OctF::zero()]]);
            self.moves.push(Move { kind: MoveKind::Swap, m: p });
        }
    }
}

/// `M X M*`, bracketed as `(M X) M*`.
pub fn congruence(m: &OctMatrix2<f64>, x: &HermF) -> HermF {
    HermF::from_oct(&m.mul(&x.to_oct()).mul(&m.conj_transpose()))
}

/// Simultaneous reduction of a positive definite `A` and Hermitian `B`:
/// returns `c = √det A`, the diagonal image of `B`, and the moves taking
/// `A ↦ c I` and `B` to that diagonal matrix.
pub fn simultaneous_reduce(a: &HermF, b: &HermF) -> Result<(f64, HermF, TransformRecord)> {
    if !a.is_positive_definite() {
        return Err(Error::NotPositiveDefinite(None));
    }
    let mut rec = TransformRecord::default();
    let d1 = diagonalize(a);
    rec.push_diagonalization(&d1);
    let (l1, l2) = (d1.d.a, d1.d.b);
    let r = (l2 / l1).powf(0.25);
    let sc = OctMatrix2::diag(OctF::real(r), OctF::real(1.0 / r));
    rec.moves.push(Move { kind: MoveKind::Scale, m: sc });
    let b2 = rec.apply(b);
    let d2 = diagonalize(&b2);
    rec.push_diagonalization(&d2);
    Ok(((l1 * l2).sqrt(), d2.d, rec))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::octonion::OctQ;
    use crate::scalar::{rat, Rational};

    fn e(k: usize) -> OctQ {
        OctQ::unit(k)
    }

    fn h(a: i64, b: i64, q: OctQ) -> HermQ {
        HermMatrix2::new(rat(a, 1), rat(b, 1), q)
    }

    #[test]
    fn det_examples() {
        assert_eq!(HermQ::identity().det(), rat(1, 1));
        assert_eq!(h(2, 3, e(1)).det(), rat(5, 1));
        let z = OctVector2::new(OctQ::from_i64s([1, 2, 0, -1, 0, 3, 0, 1]), OctQ::from_i64s([0, 1, 1, 0, 2, 0, -3, 1]));
        assert_eq!(HermQ::rank_one(&z).det(), rat(0, 1));
    }

    #[test]
    fn mixed_det_examples() {
        assert_eq!(h(1, 2, OctQ::zero()).mixed_det(&h(3, 4, OctQ::zero())), rat(5, 1));
        let b = h(3, 7, OctQ::from_i64s([1, 0, 2, 0, 0, 0, 0, 1]));
        assert_eq!(HermQ::identity().mixed_det(&b), b.tr() * rat(1, 2));
        assert_eq!(b.mixed_det(&b), b.det());
    }

    #[test]
    fn adj_inverse_examples() {
        assert_eq!(h(1, 2, OctQ::zero()).adj(), h(2, 1, OctQ::zero()));
        let a = h(2, 3, e(1));
        let inv = a.inverse().unwrap();
        assert_eq!(inv, HermMatrix2::new(rat(3, 5), rat(2, 5), (-e(1)).scale(&rat(1, 5))));
        let prod = a.to_oct().mul(&inv.to_oct());
        assert_eq!(prod, OctMatrix2::identity());
        let z = OctVector2::new(OctQ::one(), e(1));
        assert_eq!(HermQ::rank_one(&z).inverse(), Err(Error::SingularMatrix));
    }

    #[test]
    fn positivity_examples() {
        assert!(HermQ::identity().is_positive_definite());
        assert!(!h(1, 1, e(1).scale(&rat(2, 1))).is_positive_definite());
        assert!(!h(0, 1, OctQ::zero()).is_positive_definite());
    }

    #[test]
    fn spectrum_examples() {
        assert_eq!(h(3, 5, OctQ::zero()).spectrum().unwrap(), (rat(3, 1), rat(5, 1)));
        assert_eq!(h(0, 0, e(1)).spectrum().unwrap(), (rat(-1, 1), rat(1, 1)));
        assert_eq!(HermQ::identity().spectrum().unwrap(), (rat(1, 1), rat(1, 1)));
        assert_eq!(h(1, 2, e(1)).spectrum(), Err(Error::InexactSqrt));
    }

    #[test]
    fn rank_one_examples() {
        let one = OctVector2::new(OctQ::one(), OctQ::zero());
        assert_eq!(HermQ::rank_one(&one), h(1, 0, OctQ::zero()));
        let z = OctVector2::new(OctQ::one(), e(1));
        assert_eq!(HermQ::rank_one(&z), h(1, 1, -e(1)));
        assert_eq!(HermQ::rank_one(&OctVector2::zero()), HermQ::zero());
    }

    #[test]
    fn act_generator_examples() {
        let a = OctMatrix2::<Rational>::diag(OctQ::one(), -OctQ::one());
        assert_eq!(act_generator(&a, &HermQ::identity()).unwrap(), h(-2, 2, OctQ::zero()));
        assert_eq!(act_generator(&a, &HermQ::zero()).unwrap(), HermQ::zero());
        let lam = OctMatrix2::<Rational>::identity();
        let x = h(2, 5, OctQ::from_i64s([1, 2, 3, 4, 5, 6, 7, 8]));
        assert_eq!(act_generator(&lam, &x), Err(Error::NotTraceless));
        // A scalar acts as −2λ; checked through the unguarded formula.
        let xm = x.to_oct();
        let m = lam.conj_transpose().mul(&xm).add(&xm.mul(&lam)).neg();
        assert_eq!(HermMatrix2::from_oct(&m), x.scale(&rat(-2, 1)));
    }

    fn close(a: &HermF, b: &HermF, tol: f64) -> bool {
        (a.a - b.a).abs() < tol && (a.b - b.b).abs() < tol && (&a.q - &b.q).norm_sq().sqrt() < tol
    }

    fn apply_diag(d: &Diagonalization, a: &HermF) -> HermF {
        let mut x = congruence(&d.g, a);
        if d.swapped {
            x = HermF::diag(x.b, x.a);
        }
        x
    }

    #[test]
    fn diagonalize_examples() {
        let d = diagonalize(&HermF::diag(2.0, 7.0));
        assert_eq!(d.g, OctMatrix2::identity());
        assert!(d.swapped);
        assert_eq!(d.d, HermF::diag(7.0, 2.0));
        let a = HermF::new(0.0, 0.0, OctF::unit(1));
        let d = diagonalize(&a);
        assert!(close(&d.d, &HermF::diag(1.0, -1.0), 1e-14));
        assert!(close(&apply_diag(&d, &a), &d.d, 1e-14));
        let z = OctVector2::new(OctF::one(), OctF::unit(1));
        let r1 = HermF::rank_one(&z);
        let d = diagonalize(&r1);
        assert!(close(&d.d, &HermF::diag(2.0, 0.0), 1e-14));
        assert!(close(&apply_diag(&d, &r1), &d.d, 1e-14));
    }

    #[test]
    fn diagonalize_generic() {
        let a = HermF::new(1.5, -0.25, OctF::new([0.3, -0.2, 0.7, 0.1, 0.0, 0.5, -0.4, 0.9]));
        let d = diagonalize(&a);
        assert!(close(&apply_diag(&d, &a), &d.d, 1e-13));
        let g = &d.g;
        assert!(close(&HermF::from_oct(&g.mul(&g.conj_transpose())), &HermF::identity(), 1e-14));
    }

    #[test]
    fn simultaneous_reduce_examples() {
        let (c, d, _) = simultaneous_reduce(&HermF::identity(), &HermF::diag(1.0, 2.0)).unwrap();
        assert!((c - 1.0).abs() < 1e-15);
        assert!((d.a - 2.0).abs() < 1e-15 && (d.b - 1.0).abs() < 1e-15);
        let (c, _, _) = simultaneous_reduce(&HermF::diag(1.0, 4.0), &HermF::identity()).unwrap();
        assert!((c - 2.0).abs() < 1e-14);
        assert!(matches!(
            simultaneous_reduce(&HermF::diag(0.0, 1.0), &HermF::identity()),
            Err(Error::NotPositiveDefinite(_))
        ));
    }

    #[test]
    fn simultaneous_reduce_generic() {
        let a = HermF::new(3.0, 2.0, OctF::new([0.5, 0.2, -0.1, 0.3, 0.0, 0.4, 0.1, -0.2]));
        let b = HermF::new(-1.0, 0.5, OctF::new([0.1, -0.7, 0.2, 0.0, 0.9, -0.3, 0.4, 0.6]));
        let (c, d, rec) = simultaneous_reduce(&a, &b).unwrap();
        assert!((c - a.det().sqrt()).abs() < 1e-12);
        assert!(close(&rec.apply(&a), &HermF::identity().scale(&c), 1e-12));
        assert!(close(&rec.apply(&b), &d, 1e-12));
        assert!(d.q.is_zero());
    }
}
