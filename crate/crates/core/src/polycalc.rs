//! Octonionic differential operators on polynomials in the 16 coordinates.
//!
//! For `k ∈ {1, 2}` and an octonion-valued `F`:
//!
//! | operator              | formula                 |
//! |-----------------------|-------------------------|
//! | `d_bar_left(k, F)`    | `Σ_p e_p ∂F/∂x_k^p`     |
//! | `d_left(k, F)`        | `Σ_p conj(e_p) ∂F/∂x_k^p` |
//! | `d_right(k, F)`       | `Σ_p ∂F/∂x_k^p conj(e_p)` |
//! | `d_bar_right(k, F)`   | `Σ_p ∂F/∂x_k^p e_p`     |
//!
//! The octonionic Hessian has entries `∂̄_i(∂_j f)`.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::herm2::{HermF, HermMatrix2, HermQ, OctVector2};
use crate::lie::hat;
use crate::herm2::{act_generator, OctMatrix2};
use crate::lines::{theta_map, QuadForm16};
use crate::octonion::{OctQ, Octonion, CD_PERM, CD_SIGN};
use crate::poly::{var_index, Mono, OctPoly, Poly16, NVARS};
use crate::scalar::{Rational, Scalar};

fn check_block(k: usize) {
    assert!(k == 1 || k == 2, "block index must be 1 or 2");
}

pub fn d_bar_left(k: usize, f: &OctPoly) -> OctPoly {
    check_block(k);
    (0..8).fold(OctPoly::zero(), |acc, p| acc.add(&f.deriv(var_index(k, p)).left_unit(p, 1)))
}

pub fn d_left(k: usize, f: &OctPoly) -> OctPoly {
    check_block(k);
    (0..8).fold(OctPoly::zero(), |acc, p| {
        let d = f.deriv(var_index(k, p));
        acc.add(&if p == 0 { d } else { d.left_unit(p, -1) })
    })
}

pub fn d_right(k: usize, f: &OctPoly) -> OctPoly {
    check_block(k);
    (0..8).fold(OctPoly::zero(), |acc, p| {
        let d = f.deriv(var_index(k, p));
        acc.add(&if p == 0 { d } else { d.right_unit(p, -1) })
    })
}

pub fn d_bar_right(k: usize, f: &OctPoly) -> OctPoly {
    check_block(k);
    (0..8).fold(OctPoly::zero(), |acc, p| acc.add(&f.deriv(var_index(k, p)).right_unit(p, 1)))
}

/// Hermitian matrix of polynomials `[[d1, q], [conj(q), d2]]`.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct HermPolyMatrix {
    pub d1: Poly16,
    pub d2: Poly16,
    pub q: OctPoly,
}

impl HermPolyMatrix {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(a: &HermQ) -> Self {
        HermPolyMatrix { d1: Poly16::constant(a.a.clone()), d2: Poly16::constant(a.b.clone()), q: OctPoly::constant(&a.q) }
    }

    pub fn is_zero(&self) -> bool {
        self.d1.is_zero() && self.d2.is_zero() && self.q.is_zero()
    }

    pub fn eval(&self, x: &[Rational]) -> HermQ {
        HermMatrix2::new(self.d1.eval(x), self.d2.eval(x), self.q.eval(x))
    }

    pub fn eval_f64(&self, x: &[f64]) -> HermF {
        HermMatrix2::new(self.d1.eval_f64(x), self.d2.eval_f64(x), self.q.eval_f64(x))
    }

    /// Components `(d1, d2, q0..q7)`.
    pub fn components(&self) -> Vec<&Poly16> {
        let mut v = vec![&self.d1, &self.d2];
        v.extend(self.q.c.iter());
        v
    }

    pub fn from_components(c: Vec<Poly16>) -> Self {
        assert_eq!(c.len(), 10);
        let mut it = c.into_iter();
        let d1 = it.next().unwrap();
        let d2 = it.next().unwrap();
        let q = OctPoly { c: std::array::from_fn(|_| it.next().unwrap()) };
        HermPolyMatrix { d1, d2, q }
    }

    pub fn deriv(&self, i: usize) -> Self {
        HermPolyMatrix { d1: self.d1.deriv(i), d2: self.d2.deriv(i), q: self.q.deriv(i) }
    }

    pub fn sub(&self, o: &Self) -> Self {
        HermPolyMatrix { d1: self.d1.sub(&o.d1), d2: self.d2.sub(&o.d2), q: self.q.sub(&o.q) }
    }
}

/// Labels of [`HermPolyMatrix::components`] in the text form.
pub const COMPONENT_LABELS: [&str; 10] = ["d1", "d2", "q0", "q1", "q2", "q3", "q4", "q5", "q6", "q7"];

/// Text form: one `label: poly` line per nonzero component, labels from
/// [`COMPONENT_LABELS`]. Missing components are zero; `#` starts a comment line.
pub fn parse_herm_poly(text: &str) -> Result<HermPolyMatrix> {
    let mut comps = vec![Poly16::zero(); 10];
    let mut seen = [false; 10];
    for (ln, line) in text.lines().enumerate() {
        let t = line.trim_start();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        let lead = line.len() - t.len();
        let Some((label, rest)) = t.split_once(':') else {
            return Err(Error::parse(ln + 1, lead + 1, "expected 'label: polynomial'"));
        };
        let k = COMPONENT_LABELS
            .iter()
            .position(|l| *l == label.trim())
            .ok_or_else(|| Error::parse(ln + 1, lead + 1, format!("unknown component '{}'", label.trim())))?;
        if seen[k] {
            return Err(Error::parse(ln + 1, lead + 1, format!("component '{}' given twice", COMPONENT_LABELS[k])));
        }
        seen[k] = true;
        let col = lead + label.len() + 2 + (rest.len() - rest.trim_start().len());
        comps[k] = crate::poly::parse_poly_at(rest.trim(), ln + 1, col)?;
    }
    Ok(HermPolyMatrix::from_components(comps))
}

/// Inverse of [`parse_herm_poly`]; zero components are omitted.
pub fn format_herm_poly(h: &HermPolyMatrix) -> String {
    h.components()
        .iter()
        .zip(COMPONENT_LABELS)
        .filter(|(p, _)| !p.is_zero())
        .map(|(p, l)| format!("{l}: {p}\n"))
        .collect()
}

/// `Hess_𝕆(f)` with entries `∂̄_i(∂_j f)`.
pub fn hess_oct(f: &Poly16) -> HermPolyMatrix {
    let fr = OctPoly::real(f.clone());
    let d1 = d_bar_left(1, &d_right(1, &fr));
    let d2 = d_bar_left(2, &d_right(2, &fr));
    let q = d_bar_left(1, &d_right(2, &fr));
    HermPolyMatrix { d1: d1.c[0].clone(), d2: d2.c[0].clone(), q }
}

/// Entry `(i, j)` computed as `∂_j(∂̄_i f)` instead.
pub fn hess_entry_other_order(f: &Poly16, i: usize, j: usize) -> OctPoly {
    d_right(j, &d_bar_left(i, &OctPoly::real(f.clone())))
}

/// Checks that both operator orders give the same Hessian and that the
/// diagonal is real.
pub fn hess_orders_agree(f: &Poly16) -> bool {
    let fr = OctPoly::real(f.clone());
    (1..=2).all(|i| {
        (1..=2).all(|j| {
            let a = d_bar_left(i, &d_right(j, &fr));
            let b = hess_entry_other_order(f, i, j);
            a == b && (i != j || a.c[1..].iter().all(|p| p.is_zero()))
        })
    })
}

pub fn laplacian(k: usize, f: &Poly16) -> Poly16 {
    check_block(k);
    (0..8).fold(Poly16::zero(), |acc, p| {
        let v = var_index(k, p);
        acc.add(&f.deriv(v).deriv(v))
    })
}

fn check_line_vector(z: &OctVector2<Rational>) -> Result<()> {
    if !z.norm_sq().is_one() {
        return Err(Error::NotUnit);
    }
    if !z.x1.is_real() && !z.x2.is_real() {
        return Err(Error::NoRealCoordinate);
    }
    Ok(())
}

/// `re(ζ* Hess_𝕆(f) ζ)` for a unit `ζ` with a real coordinate.
pub fn laplacian_line(z: &OctVector2<Rational>, f: &Poly16) -> Result<Poly16> {
    check_line_vector(z)?;
    let h = hess_oct(f);
    let mut out = h.d1.scale(&z.x1.norm_sq()).add(&h.d2.scale(&z.x2.norm_sq()));
    let zc = z.x1.conj();
    for k in 0..8 {
        let w = zc.mul(&OctQ::unit(k)).mul(&z.x2).re() * Rational::from_i64(2);
        out = out.add(&h.q.c[k].scale(&w));
    }
    Ok(out)
}

/// `Σ_p ∂²f/∂v_p²` over the orthonormal basis `v_p = ζ e_p` of the line.
pub fn laplacian_line_direct(z: &OctVector2<Rational>, f: &Poly16) -> Result<Poly16> {
    check_line_vector(z)?;
    let mut out = Poly16::zero();
    for p in 0..8 {
        let v = z.right_mul(&OctQ::unit(p)).coords();
        out = out.add(&f.deriv_dir(&v).deriv_dir(&v));
    }
    Ok(out)
}

/// The two octonionic closed-current defects
/// `(T12 ∂̄2← − ∂̄1→ T22, T21 ∂̄1← − ∂̄2→ T11)`.
pub fn closed_current_residual(t: &HermPolyMatrix) -> (OctPoly, OctPoly) {
    let first = d_bar_right(2, &t.q).sub(&d_bar_left(1, &OctPoly::real(t.d2.clone())));
    let second = d_bar_right(1, &t.q.conj()).sub(&d_bar_left(2, &OctPoly::real(t.d1.clone())));
    (first, second)
}

/// Signed derivative tables of the scalar closed-current system, in the
/// Cayley–Dickson frame. Entry `±(m+1)` means `±∂/∂y_m` (first table) or
/// `±∂/∂x_m` (second table), applied to component `k` of `T12`.
const SCALAR_Y: [[i8; 8]; 8] = [
    [1, -2, -3, -4, -5, -6, -7, -8],
    [2, 1, 4, -3, 6, -5, -8, 7],
    [3, -4, 1, 2, 7, 8, -5, -6],
    [4, 3, -2, 1, 8, -7, 6, -5],
    [5, -6, -7, -8, 1, 2, 3, 4],
    [6, 5, -8, 7, -2, 1, -4, 3],
    [7, 8, 5, -6, -3, 4, 1, -2],
    [8, -7, 6, 5, -4, -3, 2, 1],
];
const SCALAR_X: [[i8; 8]; 8] = [
    [1, 2, 3, 4, 5, 6, 7, 8],
    [2, -1, -4, 3, -6, 5, 8, -7],
    [3, 4, -1, -2, -7, -8, 5, 6],
    [4, -3, 2, -1, -8, 7, -6, 5],
    [5, 6, 7, 8, -1, -2, -3, -4],
    [6, -5, 8, -7, 2, -1, 4, -3],
    [7, -8, -5, 6, 3, -4, -1, 2],
    [8, 7, -6, -5, 4, 3, -2, -1],
];

fn cd_substitution() -> ([usize; NVARS], [i8; NVARS]) {
    let mut perm = [0usize; NVARS];
    let mut sign = [1i8; NVARS];
    for b in 0..2 {
        for n in 0..8 {
            perm[b * 8 + n] = b * 8 + CD_PERM[n];
            sign[b * 8 + n] = CD_SIGN[n];
        }
    }
    (perm, sign)
}

fn inverse_substitution(perm: &[usize; NVARS], sign: &[i8; NVARS]) -> ([usize; NVARS], [i8; NVARS]) {
    let mut ip = [0usize; NVARS];
    let mut is = [1i8; NVARS];
    for i in 0..NVARS {
        ip[perm[i]] = i;
        is[perm[i]] = sign[i];
    }
    (ip, is)
}

/// Rewrites `T` in Cayley–Dickson coordinates: both the 16 variables and the
/// octonion components of the off-diagonal entry.
pub fn to_cd_coordinates(t: &HermPolyMatrix) -> HermPolyMatrix {
    // A polynomial P(x) becomes P'(x') = P(ψ⁻¹ x'), i.e. x_n ↦ sign_n x'_{perm n}.
    let (perm, sign) = cd_substitution();
    let sub = |p: &Poly16| p.substitute_signed(&perm, &sign);
    let q = OctPoly { c: std::array::from_fn(|k| sub(&t.q.c[k])) };
    let mut qc = OctPoly::zero();
    for n in 0..8 {
        qc.c[CD_PERM[n]] = if CD_SIGN[n] > 0 { q.c[n].clone() } else { q.c[n].neg() };
    }
    HermPolyMatrix { d1: sub(&t.d1), d2: sub(&t.d2), q: qc }
}

/// The 16 scalar first-order closed-current equations as defects, expressed
/// back in the standard coordinates: entries `0..8` are
/// `∂T22/∂x_p − Σ_k (±∂/∂y_m) T12^k` and entries `8..16` are
/// `∂T11/∂y_p − Σ_k (±∂/∂x_m) T12^k`, with `x = x1`, `y = x2` in the
/// Cayley–Dickson frame.
pub fn closed_current_residual_scalar(t: &HermPolyMatrix) -> Vec<Poly16> {
    let tc = to_cd_coordinates(t);
    let (perm, sign) = cd_substitution();
    let (ip, is) = inverse_substitution(&perm, &sign);
    let apply = |table: &[[i8; 8]; 8], p: usize, block: usize| -> Poly16 {
        let mut acc = Poly16::zero();
        for k in 0..8 {
            let e = table[p][k];
            let v = var_index(block, (e.unsigned_abs() - 1) as usize);
            let d = tc.q.c[k].deriv(v);
            acc = if e > 0 { acc.add(&d) } else { acc.sub(&d) };
        }
        acc
    };
    let mut out = Vec::with_capacity(16);
    for p in 0..8 {
        out.push(tc.d2.deriv(var_index(1, p)).sub(&apply(&SCALAR_Y, p, 2)));
    }
    for p in 0..8 {
        out.push(tc.d1.deriv(var_index(2, p)).sub(&apply(&SCALAR_X, p, 1)));
    }
    out.into_iter().map(|r| r.substitute_signed(&ip, &is)).collect()
}

/// Maps a polynomial written in Cayley–Dickson coordinates to the standard ones.
pub fn from_cd_variables(p: &Poly16) -> Poly16 {
    let (perm, sign) = cd_substitution();
    let (ip, is) = inverse_substitution(&perm, &sign);
    p.substitute_signed(&ip, &is)
}

/// Maps a polynomial in standard coordinates to Cayley–Dickson coordinates.
pub fn to_cd_variables(p: &Poly16) -> Poly16 {
    let (perm, sign) = cd_substitution();
    p.substitute_signed(&perm, &sign)
}

/// `det Hess_𝕆(u)`.
pub fn ma_det(u: &Poly16) -> Poly16 {
    herm_det(&hess_oct(u))
}

/// `D(Hess_𝕆 u, Hess_𝕆 v)`.
pub fn ma_mixed(u: &Poly16, v: &Poly16) -> Poly16 {
    herm_mixed(&hess_oct(u), &hess_oct(v))
}

pub fn herm_det(h: &HermPolyMatrix) -> Poly16 {
    let nq = h.q.c.iter().fold(Poly16::zero(), |acc, p| acc.add(&p.mul(p)));
    h.d1.mul(&h.d2).sub(&nq)
}

pub fn herm_mixed(a: &HermPolyMatrix, b: &HermPolyMatrix) -> Poly16 {
    let inner = a.q.c.iter().zip(b.q.c.iter()).fold(Poly16::zero(), |acc, (p, q)| acc.add(&p.mul(q)));
    let s = a.d1.mul(&b.d2).add(&a.d2.mul(&b.d1)).sub(&inner.scale(&Rational::from_i64(2)));
    s.scale(&Rational::from_frac(1, 2))
}

/// Symmetric 16×16 matrix of polynomial coefficients `a_mn` of the operator
/// `h ↦ det U · tr(U⁻¹ Hess h) = Σ a_mn ∂_m ∂_n h`, `U = Hess_𝕆(u)`.
#[derive(Clone, Debug, PartialEq)]
pub struct CoefMatrix {
    pub a: Vec<Poly16>,
}

impl CoefMatrix {
    pub fn get(&self, m: usize, n: usize) -> &Poly16 {
        &self.a[m * 16 + n]
    }

    pub fn get_mut(&mut self, m: usize, n: usize) -> &mut Poly16 {
        &mut self.a[m * 16 + n]
    }

    /// `Σ a_mn ∂_m ∂_n h`.
    pub fn apply(&self, h: &Poly16) -> Poly16 {
        let mut out = Poly16::zero();
        for m in 0..16 {
            let hm = h.deriv(m);
            if hm.is_zero() {
                continue;
            }
            for n in 0..16 {
                let c = self.get(m, n);
                if !c.is_zero() {
                    out = out.add(&c.mul(&hm.deriv(n)));
                }
            }
        }
        out
    }
}

/// `a_{(1r)(1r')} = δ u22`, `a_{(2s)(2s')} = δ u11`,
/// `a_{(1r)(2s)} = a_{(2s)(1r)} = −re(conj(e_r) u12 e_s)`.
pub fn coefficient_matrix(u: &Poly16) -> CoefMatrix {
    let h = hess_oct(u);
    let mut a = vec![Poly16::zero(); 256];
    for r in 0..8 {
        a[r * 16 + r] = h.d2.clone();
        a[(8 + r) * 16 + 8 + r] = h.d1.clone();
    }
    for r in 0..8 {
        for s in 0..8 {
            // re(conj(e_r) q e_s) = Σ_k q_k re(conj(e_r) e_k e_s)
            let mut acc = Poly16::zero();
            for k in 0..8 {
                let w = OctQ::unit(r).conj().mul(&OctQ::unit(k)).mul(&OctQ::unit(s)).re();
                if !w.is_zero() {
                    acc = acc.add(&h.q.c[k].scale(&w));
                }
            }
            let v = acc.neg();
            a[r * 16 + 8 + s] = v.clone();
            a[(8 + s) * 16 + r] = v;
        }
    }
    CoefMatrix { a }
}

/// `Σ_m ∂_m a_mn` for each `n`.
pub fn divergence_defect_of(c: &CoefMatrix) -> Vec<Poly16> {
    (0..16)
        .map(|n| (0..16).fold(Poly16::zero(), |acc, m| acc.add(&c.get(m, n).deriv(m))))
        .collect()
}

pub fn divergence_defect(u: &Poly16) -> Vec<Poly16> {
    divergence_defect_of(&coefficient_matrix(u))
}

fn laplacian_oct(k: usize, f: &OctPoly) -> OctPoly {
    OctPoly { c: std::array::from_fn(|c| laplacian(k, &f.c[c])) }
}

/// `(Δ_k Ψ − (Ψ ∂̄_k←) ∂_k←, Δ_k Ψ − (Ψ ∂_k←) ∂̄_k←)`.
pub fn psi_laplacian_identity(psi: &OctPoly, k: usize) -> (OctPoly, OctPoly) {
    let lap = laplacian_oct(k, psi);
    let a = lap.sub(&d_right(k, &d_bar_right(k, psi)));
    let b = lap.sub(&d_bar_right(k, &d_right(k, psi)));
    (a, b)
}

/// Symmetric matrix `B` of a homogeneous quadratic `f = xᵀ B x`.
pub fn quadform_of(f: &Poly16) -> Result<QuadForm16<Rational>> {
    if !f.is_homogeneous(2) {
        return Err(Error::NotQuadratic);
    }
    let mut b = QuadForm16::zero();
    let half = Rational::from_frac(1, 2);
    for (m, c) in f.terms() {
        let idx: Vec<usize> = (0..NVARS).flat_map(|i| std::iter::repeat_n(i, m.0[i] as usize)).collect();
        if idx[0] == idx[1] {
            b.set_sym(idx[0], idx[0], c.clone());
        } else {
            b.set_sym(idx[0], idx[1], c * &half);
        }
    }
    Ok(b)
}

pub fn poly_of_quadform(b: &QuadForm16<Rational>) -> Poly16 {
    let mut p = Poly16::zero();
    for i in 0..16 {
        for j in 0..16 {
            p.add_term(Mono::var(i).mul(&Mono::var(j)), b.get(i, j).clone());
        }
    }
    p
}

/// Infinitesimal equivariance of the Hessian: `θ(−(ÂᵀB + BÂ)) − ρ(A)θ(B)`
/// as a vector in the basis `(a, b, q0..q7)`; zero when the identity holds.
pub fn hessian_equivariance_defect(f: &Poly16, a: &OctMatrix2<Rational>) -> Result<[Rational; 10]> {
    let b = quadform_of(f)?;
    let h = hat(a)?;
    let lhs = theta_map(&b.sym_action(&h).scale(&Rational::from_i64(-1)));
    let rhs = act_generator(a, &theta_map(&b))?;
    Ok(lhs.sub(&rhs).to_vec10())
}

/// Both sides of the elementary inequality
/// `Σ_{p,i,k} |u_{k̄k x_i^p}|² / (u_īi u_k̄k) ≤ 4 Σ_{p,i,k,l} |u_{k̄i x_l^p}|² / (u_īi u_k̄k)`
/// at the origin, for `u` whose Hessian at the origin is diagonal and positive definite.
pub fn elementary_inequality_at_origin(u: &Poly16) -> Result<(Rational, Rational)> {
    let h = hess_oct(u);
    let origin = vec![Rational::zero(); NVARS];
    let h0 = h.eval(&origin);
    if !h0.q.is_zero() || !h0.is_positive_definite() {
        return Err(Error::NotPositiveDefinite(Some("Hessian at the origin must be diagonal and positive definite".into())));
    }
    let diag = [h0.a.clone(), h0.b.clone()];
    // |∂_v U_{ki}(0)|² for entry (k, i), k, i ∈ {0, 1}
    let entry_sq = |k: usize, i: usize, v: usize| -> Rational {
        match (k, i) {
            (0, 0) => h.d1.deriv(v).eval(&origin).pow(2),
            (1, 1) => h.d2.deriv(v).eval(&origin).pow(2),
            _ => h.q.deriv(v).eval(&origin).norm_sq(),
        }
    };
    let mut lhs = Rational::zero();
    let mut rhs = Rational::zero();
    for p in 0..8 {
        for i in 0..2 {
            for k in 0..2 {
                let w = &diag[i] * &diag[k];
                lhs += entry_sq(k, k, var_index(i + 1, p)) / &w;
                for l in 0..2 {
                    rhs += entry_sq(k, i, var_index(l + 1, p)) / &w;
                }
            }
        }
    }
    Ok((lhs, rhs * Rational::from_i64(4)))
}

/// Values and first/second derivatives of a polynomial Hermitian matrix at a
/// floating-point point.
pub struct HermJet {
    pub value: HermF,
    pub grad: Vec<HermF>,
    pub hess: Vec<Vec<HermF>>,
}

pub fn herm_jet(h: &HermPolyMatrix, x: &[f64]) -> HermJet {
    let jets: Vec<_> = h.components().iter().map(|p| p.eval_jet(x)).collect();
    let make = |f: &dyn Fn(usize) -> f64| HermMatrix2::from_vec10(&(0..10).map(f).collect::<Vec<_>>());
    let value = make(&|c| jets[c].0);
    let grad = (0..NVARS).map(|m| make(&|c| jets[c].1[m])).collect();
    let hess = (0..NVARS).map(|m| (0..NVARS).map(|n| make(&|c| jets[c].2[m][n])).collect()).collect();
    HermJet { value, grad, hess }
}

fn dir<T: Clone>(v: &[f64], f: impl Fn(usize) -> T, add: impl Fn(T, T) -> T, scale: impl Fn(&T, f64) -> T, zero: T) -> T {
    (0..v.len()).fold(zero, |acc, m| if v[m] == 0.0 { acc } else { add(acc, scale(&f(m), v[m])) })
}

/// `(tr(U⁻¹ Δ_L U), Δ_L log det U)` at `x`, where `Δ_L` is the Laplacian of
/// the line through `ζ` (orthonormal basis `ζ e_p`, `ζ` unit with a real coordinate).
pub fn line_laplacian_sides(u: &Poly16, x: &[f64], z: &OctVector2<f64>) -> Result<(f64, f64)> {
    let jet = herm_jet(&hess_oct(u), x);
    let uu = &jet.value;
    if !uu.is_positive_definite() {
        return Err(Error::NotPositiveDefinite(None));
    }
    let f = uu.det();
    let mut lhs = 0.0;
    let mut rhs = 0.0;
    for p in 0..8 {
        let v = z.right_mul(&Octonion::unit(p)).coords();
        let uv = dir(&v, |m| jet.grad[m].clone(), |a, b| a.add(&b), |a, s| a.scale(&s), HermF::zero());
        let uvv = dir(
            &v,
            |m| dir(&v, |n| jet.hess[m][n].clone(), |a, b| a.add(&b), |a, s| a.scale(&s), HermF::zero()),
            |a, b| a.add(&b),
            |a, s| a.scale(&s),
            HermF::zero(),
        );
        lhs += crate::herm2::trace_inv_times(uu, &uvv)?;
        let fv = 2.0 * uu.mixed_det(&uv);
        let fvv = 2.0 * uv.mixed_det(&uv) + 2.0 * uu.mixed_det(&uvv);
        rhs += fvv / f - (fv / f) * (fv / f);
    }
    Ok((lhs, rhs))
}

/// `(Tr(U⁻¹ΔU) − Σ Tr(U⁻¹U_m U⁻¹U_m), Δ log det U)` at `x`, `Δ` the flat
/// Laplacian in all 16 coordinates.
pub fn fourth_order_sides(u: &Poly16, x: &[f64]) -> Result<(f64, f64)> {
    let jet = herm_jet(&hess_oct(u), x);
    let uu = &jet.value;
    if !uu.is_positive_definite() {
        return Err(Error::NotPositiveDefinite(None));
    }
    let f = uu.det();
    let mut lhs = 0.0;
    let mut rhs = 0.0;
    for m in 0..NVARS {
        let um = &jet.grad[m];
        let umm = &jet.hess[m][m];
        lhs += crate::herm2::trace_inv_times(uu, umm)? - crate::herm2::trace_inv_sq(uu, um)?;
        let fm = 2.0 * uu.mixed_det(um);
        let fmm = 2.0 * um.mixed_det(um) + 2.0 * uu.mixed_det(umm);
        rhs += fmm / f - (fm / f) * (fm / f);
    }
    Ok((lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;
    use crate::scalar::rat;

    fn x(b: usize, p: usize) -> Poly16 {
        Poly16::var(var_index(b, p))
    }

    #[test]
    fn herm_poly_text_round_trip() {
        let h = hess_oct(&parse_poly("x1_0^2*x2_3 + 3/2*x1_1*x2_0").unwrap());
        let text = format_herm_poly(&h);
        assert_eq!(parse_herm_poly(&text).unwrap(), h);
        assert!(parse_herm_poly("# nothing\n").unwrap().is_zero());
        assert!(matches!(parse_herm_poly("d1: 1\nzz: x1_0"), Err(Error::Parse { line: 2, col: 1, .. })));
        assert!(matches!(parse_herm_poly("q3:  x1_0 +"), Err(Error::Parse { line: 1, .. })));
        assert!(parse_herm_poly("d1: 1\nd1: 2").is_err());
    }

    #[test]
    fn first_order_examples() {
        assert_eq!(d_bar_left(1, &OctPoly::real(x(1, 0))), OctPoly::constant(&OctQ::one()));
        assert_eq!(d_bar_left(1, &OctPoly::real(x(1, 1))), OctPoly::constant(&OctQ::unit(1)));
        let f = OctPoly::times_const(&x(1, 1), &OctQ::unit(2));
        assert_eq!(d_right(1, &f), OctPoly::constant(&OctQ::unit(4)));
    }

    #[test]
    fn hessian_examples() {
        let n1 = (0..8).fold(Poly16::zero(), |a, p| a.add(&x(1, p).mul(&x(1, p))));
        let h = hess_oct(&n1);
        assert_eq!(h, HermPolyMatrix::constant(&HermQ::diag(rat(16, 1), rat(0, 1))));
        let h = hess_oct(&x(1, 0).mul(&x(2, 0)));
        assert_eq!(h, HermPolyMatrix::constant(&HermMatrix2::new(rat(0, 1), rat(0, 1), OctQ::one())));
        assert!(hess_oct(&Poly16::from_i64(7)).is_zero());
    }

    #[test]
    fn hessian_orders_agree_on_sample() {
        let f = parse_poly("x1_1^2*x2_3 - 3*x1_0*x1_5*x2_2 + 1/2*x2_7^3*x1_4 + x1_2*x2_6").unwrap();
        assert!(hess_orders_agree(&f));
    }

    #[test]
    fn laplacian_examples() {
        let n1 = (0..8).fold(Poly16::zero(), |a, p| a.add(&x(1, p).mul(&x(1, p))));
        assert_eq!(laplacian(1, &n1), Poly16::from_i64(16));
        let f = parse_poly("x1_1^2*x2_3 + x1_0*x2_0^3").unwrap();
        let e = OctVector2::new(OctQ::one(), OctQ::zero());
        assert_eq!(laplacian_line(&e, &f).unwrap(), laplacian(1, &f));
        let n = (0..16).fold(Poly16::zero(), |a, i| a.add(&Poly16::var(i).mul(&Poly16::var(i))));
        let z = OctVector2::new(OctQ::real(rat(3, 5)), OctQ::unit(2).scale(&rat(4, 5)));
        assert_eq!(laplacian_line(&z, &n).unwrap(), Poly16::from_i64(16));
        assert_eq!(laplacian_line_direct(&z, &n).unwrap(), Poly16::from_i64(16));
        let bad = OctVector2::new(OctQ::unit(1).scale(&rat(3, 5)), OctQ::unit(2).scale(&rat(4, 5)));
        assert_eq!(laplacian_line(&bad, &n), Err(Error::NoRealCoordinate));
        assert_eq!(laplacian_line(&OctVector2::new(OctQ::real(rat(2, 1)), OctQ::zero()), &n), Err(Error::NotUnit));
    }

    #[test]
    fn closed_current_examples() {
        let f = parse_poly("x1_1^2*x2_3 - 3*x1_0*x1_5*x2_2 + x2_7^3*x1_4 + x1_2*x2_6^2*x1_7").unwrap();
        let (a, b) = closed_current_residual(&hess_oct(&f));
        assert!(a.is_zero() && b.is_zero());
        let c = HermPolyMatrix::constant(&HermMatrix2::new(rat(1, 1), rat(2, 1), OctQ::unit(3)));
        let (a, b) = closed_current_residual(&c);
        assert!(a.is_zero() && b.is_zero());
        let t = HermPolyMatrix { d2: x(1, 0), ..Default::default() };
        let (a, _) = closed_current_residual(&t);
        assert_eq!(a, OctPoly::constant(&OctQ::real(rat(-1, 1))));
    }

    #[test]
    fn scalar_closed_current_examples() {
        let f = parse_poly("x1_1^2*x2_3 - 3*x1_0*x1_5*x2_2 + x2_7^3*x1_4 + x1_2*x2_6^2*x1_7").unwrap();
        assert!(closed_current_residual_scalar(&hess_oct(&f)).iter().all(|p| p.is_zero()));
        assert!(closed_current_residual_scalar(&HermPolyMatrix::zero()).iter().all(|p| p.is_zero()));
        let t = HermPolyMatrix { d2: x(1, 0), ..Default::default() };
        assert!(closed_current_residual_scalar(&t).iter().any(|p| !p.is_zero()));
    }

    #[test]
    fn ma_examples() {
        let n1 = (0..8).fold(Poly16::zero(), |a, p| a.add(&x(1, p).mul(&x(1, p))));
        let n2 = (0..8).fold(Poly16::zero(), |a, p| a.add(&x(2, p).mul(&x(2, p))));
        assert_eq!(ma_det(&n1.add(&n2)), Poly16::from_i64(256));
        assert!(ma_det(&n1).is_zero());
        let u = parse_poly("x1_1^2*x2_3 + x1_0^2*x2_0^2 + x2_5^2").unwrap();
        assert_eq!(ma_mixed(&u, &u), ma_det(&u));
    }

    #[test]
    fn divergence_examples() {
        let u = parse_poly("x1_1^2*x2_3^2 - 2*x1_0*x1_5*x2_2*x2_4 + x2_7^3*x1_4 + x1_2*x2_6^2*x1_7").unwrap();
        assert!(divergence_defect(&u).iter().all(|p| p.is_zero()));
        let q = parse_poly("x1_1^2 + 3*x1_0*x2_5 - x2_2^2").unwrap();
        assert!(divergence_defect(&q).iter().all(|p| p.is_zero()));
        let mut c = coefficient_matrix(&u);
        *c.get_mut(0, 0) = c.get(0, 0).add(&x(1, 0));
        assert!(divergence_defect_of(&c).iter().any(|p| !p.is_zero()));
    }

    #[test]
    fn coefficient_operator_is_twice_mixed_det() {
        let u = parse_poly("x1_1^2*x2_3^2 + x1_0*x2_0^3 + x2_5^2*x1_6").unwrap();
        let h = parse_poly("x1_0^2*x2_1 - x1_3*x2_4*x2_7").unwrap();
        assert_eq!(coefficient_matrix(&u).apply(&h), ma_mixed(&u, &h).scale(&rat(2, 1)));
    }

    #[test]
    fn psi_identity_examples() {
        let psi = OctPoly::times_const(&x(1, 0).mul(&x(1, 1)), &OctQ::unit(2));
        for k in 1..=2 {
            let (a, b) = psi_laplacian_identity(&psi, k);
            assert!(a.is_zero() && b.is_zero());
        }
        let c = OctPoly::constant(&OctQ::unit(5));
        let (a, b) = psi_laplacian_identity(&c, 1);
        assert!(a.is_zero() && b.is_zero());
    }

    #[test]
    fn theta_compatibility_and_equivariance() {
        let f = parse_poly("x1_0^2 + 3*x1_2*x2_5 - 1/2*x2_1^2 + x1_3*x1_6").unwrap();
        let b = quadform_of(&f).unwrap();
        let h = hess_oct(&f);
        assert_eq!(h, HermPolyMatrix::constant(&theta_map(&b).scale(&rat(16, 1))));
        assert_eq!(poly_of_quadform(&b), f);
        let a = OctMatrix2::new([[OctQ::unit(1), OctQ::unit(2)], [OctQ::from_i64s([1, 0, 0, 3, 0, 0, 0, 0]), -OctQ::unit(1)]]);
        assert!(hessian_equivariance_defect(&f, &a).unwrap().iter().all(|v| v.is_zero()));
        assert!(hessian_equivariance_defect(&f, &OctMatrix2::zero()).unwrap().iter().all(|v| v.is_zero()));
        assert_eq!(hessian_equivariance_defect(&x(1, 0), &a), Err(Error::NotQuadratic));
        assert_eq!(hessian_equivariance_defect(&f, &OctMatrix2::identity()), Err(Error::NotTraceless));
    }

    #[test]
    fn elementary_inequality_sample() {
        let u = parse_poly("x1_0^2 + x1_1^2 + x1_2^2 + x1_3^2 + x1_4^2 + x1_5^2 + x1_6^2 + x1_7^2 + 2*x2_0^2 + 2*x2_1^2 + 2*x2_2^2 + 2*x2_3^2 + 2*x2_4^2 + 2*x2_5^2 + 2*x2_6^2 + 2*x2_7^2 + x1_0^3 - x1_2*x2_3^2 + 5*x2_1*x1_4*x1_5").unwrap();
        let (l, r) = elementary_inequality_at_origin(&u).unwrap();
        assert!(l <= r);
    }
}
