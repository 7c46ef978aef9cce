//! Seeded property suites. Each suite draws its own instances from
//! [`suite_rng`] and reports failures with the first failing case.

use std::time::Instant;

use nalgebra::DMatrix;
use num_traits::Zero;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::herm2::{diagonalize, congruence, simultaneous_reduce, trace_inv_sq, trace_inv_times, HermMatrix2, OctMatrix2, OctVector2};
use crate::lie::{dual_check, exp_word, hat, rho_matrix, t_map};
use crate::lines::{j_map, line_average, same_line, theta_map, QuadForm16};
use crate::monge_ampere::{cos_potential, ibp_defect, Discretization, Settings};
use crate::octonion::{OctQ, Octonion};
use crate::poly::{var_index, Poly16, NVARS};
use crate::polycalc::{
    closed_current_residual, closed_current_residual_scalar, coefficient_matrix, divergence_defect, elementary_inequality_at_origin,
    fourth_order_sides, hess_oct, hess_orders_agree, hessian_equivariance_defect, laplacian_line, laplacian_line_direct,
    line_laplacian_sides, ma_mixed, psi_laplacian_identity, quadform_of, HermPolyMatrix,
};
use crate::random::{self as rnd, suite_rng};
use crate::scalar::{rat, Rational, Scalar};
use crate::syzygy::{modules_equal, printed_kernel_matrix, syzygy_defects, syzygy_kernel, ten_quadrics};
use crate::trig::{freq1, TorusHermField, TrigPoly};

/// Arithmetic used by the algebraic suites.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    Exact,
    Float,
}

/// Float comparisons in the algebraic suites are relative to this.
pub const FLOAT_TOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteResult {
    pub name: String,
    pub cases: usize,
    pub checks: usize,
    pub failures: usize,
    /// Largest observed error of the toleranced checks; 0 for exact suites.
    pub max_error: f64,
    pub first_failure: Option<String>,
    /// Wall time; kept out of serialized reports so they are reproducible.
    #[serde(skip)]
    pub seconds: f64,
}

impl SuiteResult {
    pub fn passed(&self) -> bool {
        self.failures == 0 && self.checks > 0
    }
}

struct Tally {
    r: SuiteResult,
    case: usize,
}

impl Tally {
    fn new(name: &str) -> Self {
        Tally {
            r: SuiteResult {
                name: name.to_string(),
                cases: 0,
                checks: 0,
                failures: 0,
                max_error: 0.0,
                first_failure: None,
                seconds: 0.0,
            },
            case: 0,
        }
    }

    fn next_case(&mut self) {
        self.case = self.r.cases;
        self.r.cases += 1;
    }

    fn fail(&mut self, label: &str, detail: String) {
        self.r.failures += 1;
        if self.r.first_failure.is_none() {
            self.r.first_failure = Some(format!("case {}: {label}{}{detail}", self.case, if detail.is_empty() { "" } else { ": " }));
        }
    }

    fn check(&mut self, label: &str, ok: bool) {
        self.r.checks += 1;
        if !ok {
            self.fail(label, String::new());
        }
    }

    /// `err` must not exceed `tol`; NaN fails.
    fn within(&mut self, label: &str, err: f64, tol: f64) {
        self.r.checks += 1;
        if err.is_finite() {
            self.r.max_error = self.r.max_error.max(err);
        }
        if !(err <= tol) {
            self.fail(label, format!("error {err:e} > {tol:e}"));
        }
    }

    fn ok<T>(&mut self, label: &str, v: Result<T>) -> Option<T> {
        match v {
            Ok(v) => Some(v),
            Err(e) => {
                self.r.checks += 1;
                self.fail(label, e.to_string());
                None
            }
        }
    }

    fn finish(mut self, start: Instant) -> SuiteResult {
        self.r.seconds = start.elapsed().as_secs_f64();
        self.r
    }
}

/// Scalars the algebraic suites can run in, built from the rational samples.
pub trait SuiteScalar: Scalar {
    const EXACT: bool;
    fn from_q(r: &Rational) -> Self;
}

impl SuiteScalar for Rational {
    const EXACT: bool = true;
    fn from_q(r: &Rational) -> Self {
        r.clone()
    }
}

impl SuiteScalar for f64 {
    const EXACT: bool = false;
    fn from_q(r: &Rational) -> Self {
        r.to_f64()
    }
}

fn conv_oct<S: SuiteScalar>(q: &OctQ) -> Octonion<S> {
    q.map(S::from_q)
}

fn conv_vec<S: SuiteScalar>(v: &OctVector2<Rational>) -> OctVector2<S> {
    OctVector2::new(conv_oct(&v.x1), conv_oct(&v.x2))
}

fn conv_herm<S: SuiteScalar>(h: &HermMatrix2<Rational>) -> HermMatrix2<S> {
    HermMatrix2::new(S::from_q(&h.a), S::from_q(&h.b), conv_oct(&h.q))
}

fn conv_mat<S: SuiteScalar>(m: &OctMatrix2<Rational>) -> OctMatrix2<S> {
    OctMatrix2::new(std::array::from_fn(|i| std::array::from_fn(|j| conv_oct(&m.m[i][j]))))
}

/// Distance between two lists of scalars: 0 iff equal in the exact backend,
/// otherwise the largest difference relative to the largest magnitude.
fn dist<S: SuiteScalar>(a: &[S], b: &[S]) -> f64 {
    dist_scaled(a, b, 1.0)
}

/// As [`dist`], with `scale` as a lower bound on the magnitude; used where
/// both sides are small differences of large terms.
fn dist_scaled<S: SuiteScalar>(a: &[S], b: &[S], scale: f64) -> f64 {
    if a == b {
        return 0.0;
    }
    let mut diff = 0.0f64;
    let mut mag = scale.max(1.0);
    for (x, y) in a.iter().zip(b) {
        diff = diff.max((x.clone() - y.clone()).to_f64().abs());
        mag = mag.max(x.to_f64().abs()).max(y.to_f64().abs());
    }
    let d = diff / mag;
    if S::EXACT {
        d.max(f64::MIN_POSITIVE)
    } else {
        d
    }
}

fn tol<S: SuiteScalar>() -> f64 {
    if S::EXACT {
        0.0
    } else {
        FLOAT_TOL
    }
}

fn same<S: SuiteScalar>(t: &mut Tally, label: &str, a: &[S], b: &[S]) {
    t.within(label, dist(a, b), tol::<S>());
}

/// Octonion identity of total degree `deg` in inputs of norm at most `norm`.
fn same_oct_deg<S: SuiteScalar>(t: &mut Tally, label: &str, a: &Octonion<S>, b: &Octonion<S>, norm: f64, deg: i32) {
    t.within(label, dist_scaled(&a.c, &b.c, norm.powi(deg)), tol::<S>());
}

fn same_s_deg<S: SuiteScalar>(t: &mut Tally, label: &str, a: &S, b: &S, norm: f64, deg: i32) {
    t.within(label, dist_scaled(std::slice::from_ref(a), std::slice::from_ref(b), norm.powi(deg)), tol::<S>());
}

fn same_s<S: SuiteScalar>(t: &mut Tally, label: &str, a: &S, b: &S) {
    same(t, label, std::slice::from_ref(a), std::slice::from_ref(b));
}

fn mat_entries<S: Scalar>(m: &OctMatrix2<S>) -> Vec<S> {
    m.m.iter().flatten().flat_map(|o| o.c.iter().cloned()).collect()
}

fn assoc<S: Scalar>(a: &Octonion<S>, b: &Octonion<S>, c: &Octonion<S>) -> Octonion<S> {
    Octonion::associator(a, b, c)
}

pub fn octonion_suite<S: SuiteScalar>(rng: &mut ChaCha8Rng, n: usize) -> SuiteResult {
    let start = Instant::now();
    let mut t = Tally::new("octonion");
    for _ in 0..n {
        t.next_case();
        let [a, b, c, d, x, y, z, w]: [Octonion<S>; 8] = std::array::from_fn(|_| conv_oct(&rnd::oct(rng)));
        let (ab, bc) = (a.mul(&b), b.mul(&c));
        let nb = [&a, &b, &c, &d, &x, &y, &z, &w].iter().map(|q| q.norm_sq().to_f64().sqrt()).fold(1.0, f64::max);
        same_s_deg(&mut t, "norm multiplicativity", &ab.norm_sq(), &(a.norm_sq() * b.norm_sq()), nb, 4);
        same_oct_deg(&mut t, "conjugation is an involution", &a.conj().conj(), &a, nb, 1);
        same_oct_deg(&mut t, "conjugation is additive", &(&a + &b).conj(), &(&a.conj() + &b.conj()), nb, 1);
        same_oct_deg(&mut t, "conjugation reverses products", &ab.conj(), &b.conj().mul(&a.conj()), nb, 2);
        same_s_deg(&mut t, "real part of triple products", &ab.mul(&c).re(), &a.mul(&bc).re(), nb, 3);
        let abar_bbar = b.conj().mul(&a.conj());
        same_oct_deg(
            &mut t,
            "left conjugate identity",
            &(&a.mul(&bc) + &b.conj().mul(&a.conj().mul(&c))),
            &(&ab + &abar_bbar).mul(&c), nb, 3);
        same_oct_deg(
            &mut t,
            "right conjugate identity",
            &(&c.mul(&a).mul(&b) + &c.mul(&b.conj()).mul(&a.conj())),
            &c.mul(&(&ab + &abar_bbar)), nb, 3);
        let words = [
            a.clone(),
            b.clone(),
            a.conj(),
            b.conj(),
            ab.clone(),
            b.mul(&a),
            a.mul(&b.conj()),
            a.mul(&a),
            &ab.mul(&a) + &Octonion::one(),
        ];
        let pick: [usize; 3] = std::array::from_fn(|_| rng.gen_range(0..words.len()));
        same_oct_deg(
            &mut t,
            "two-generated subalgebra is associative",
            &assoc(&words[pick[0]], &words[pick[1]], &words[pick[2]]),
            &Octonion::zero(), nb, 9);
        same_s_deg(&mut t, "norm-weighted real part", &a.conj().mul(&b).mul(&c.mul(&a)).re(), &(a.norm_sq() * bc.re()), nb, 4);
        let xy = x.mul(&y);
        let m1 = z.mul(&x).mul(&y.mul(&z));
        let m2 = z.mul(&xy.mul(&z));
        let m3 = z.mul(&xy).mul(&z);
        same_oct_deg(&mut t, "middle Moufang identity", &m1, &m2, nb, 4);
        same_oct_deg(&mut t, "flexible Moufang identity", &m2, &m3, nb, 4);
        let p1 = &z.mul(&x).mul(&y.mul(&w)) + &w.mul(&x).mul(&y.mul(&z));
        let p2 = &z.mul(&xy.mul(&w)) + &w.mul(&xy.mul(&z));
        let p3 = &z.mul(&xy).mul(&w) + &w.mul(&xy).mul(&z);
        same_oct_deg(&mut t, "polarized middle Moufang", &p1, &p2, nb, 4);
        same_oct_deg(&mut t, "polarized flexible Moufang", &p2, &p3, nb, 4);
        let abc = assoc(&a, &b, &c);
        same_oct_deg(&mut t, "associator alternates in 1,2", &abc, &-assoc(&b, &a, &c), nb, 3);
        same_oct_deg(&mut t, "associator alternates in 2,3", &abc, &-assoc(&a, &c, &b), nb, 3);
        same_oct_deg(&mut t, "associator alternates in 1,3", &abc, &-assoc(&c, &b, &a), nb, 3);
        same_oct_deg(&mut t, "left alternativity", &assoc(&a, &a, &b), &Octonion::zero(), nb, 3);
        same_oct_deg(&mut t, "right alternativity", &assoc(&a, &b, &b), &Octonion::zero(), nb, 3);
        same_oct_deg(&mut t, "associator is additive", &assoc(&(&a + &d), &b, &c), &(&abc + &assoc(&d, &b, &c)), nb, 3);
        same_oct_deg(&mut t, "associator vanishes on reals", &assoc(&Octonion::real(a.re()), &b, &c), &Octonion::zero(), nb, 3);
        if !a.is_zero() {
            if let Some(ai) = t.ok("inverse", a.inv()) {
                same_oct_deg(&mut t, "inverse", &a.mul(&ai), &Octonion::one(), nb, 0);
            }
        }
    }
    t.finish(start)
}

pub fn mixed_det_suite<S: SuiteScalar>(rng: &mut ChaCha8Rng, n: usize) -> SuiteResult {
    let start = Instant::now();
    let mut t = Tally::new("mixed_det");
    let half = S::half();
    for _ in 0..n {
        t.next_case();
        let a: HermMatrix2<S> = conv_herm(&rnd::herm(rng));
        let b: HermMatrix2<S> = conv_herm(&rnd::herm(rng));
        same_s(&mut t, "D(A, A) = det A", &a.mixed_det(&a), &a.det());
        let tr = a.adj().to_oct().mul(&b.to_oct()).trace().re() * half.clone();
        same_s(&mut t, "D(A, B) = re Tr(adj(A) B)/2", &a.mixed_det(&b), &tr);
        same_s(&mut t, "D is symmetric", &a.mixed_det(&b), &b.mixed_det(&a));
        let expand = a.det() + S::from_i64(2) * a.mixed_det(&b) + b.det();
        same_s(&mut t, "det(A + B) expansion", &a.add(&b).det(), &expand);
        let adj_a = a.adj().to_oct().mul(&a.to_oct());
        let det_i = OctMatrix2::identity().scale(&a.det());
        same(&mut t, "adj(A) A = det(A) I", &mat_entries(&adj_a), &mat_entries(&det_i));
        let id = HermMatrix2::<S>::identity();
        same_s(&mut t, "D(I, B) = tr(B)/2", &id.mixed_det(&b), &(b.tr() * half.clone()));
        let p: HermMatrix2<S> = conv_herm(&rnd::pd_herm(rng));
        let r: HermMatrix2<S> = conv_herm(&rnd::pd_herm(rng));
        t.check("D(A, B) > 0 for positive definite A, B", p.mixed_det(&r) > S::zero());
    }
    t.finish(start)
}

pub fn lines_suite<S: SuiteScalar>(rng: &mut ChaCha8Rng, n: usize) -> SuiteResult {
    let start = Instant::now();
    let mut t = Tally::new("lines");
    for _ in 0..n {
        t.next_case();
        let a: HermMatrix2<S> = conv_herm(&rnd::herm(rng));
        same(&mut t, "theta(j(A)) = A", &theta_map(&j_map(&a)).to_vec10(), &a.to_vec10());
        let bq = rnd::quadform(rng);
        let b = QuadForm16::from_matrix(bq.entries().iter().map(S::from_q).collect()).expect("symmetric");
        let xi: OctVector2<S> = conv_vec(&rnd::vec2(rng));
        if xi.is_zero() {
            continue;
        }
        let jt = j_map(&theta_map(&b));
        if let Some(avg) = t.ok("line average", line_average(&b, &xi)) {
            same_s(&mut t, "j(theta(B)) is the line average", &jt.eval(&xi), &(avg * xi.norm_sq()));
        }
        same(&mut t, "j o theta is idempotent", j_map(&theta_map(&jt)).entries(), jt.entries());
        if S::EXACT {
            // ζu stays on the line of ζ when ζ has a real coordinate
            let z = rnd::unit_line_vector(rng);
            let u = rnd::unit_oct(rng);
            let zu = z.right_mul(&u);
            if let Some(on) = t.ok("same line", same_line(&z, &zu)) {
                t.check("zeta and zeta u span the same line", on);
            }
        }
    }
    t.finish(start)
}

fn outer<S: Scalar>(v: &OctVector2<S>, w: &OctVector2<S>) -> OctMatrix2<S> {
    let (v, w) = ([&v.x1, &v.x2], [&w.x1, &w.x2]);
    OctMatrix2::new(std::array::from_fn(|i| std::array::from_fn(|j| v[i].mul(&w[j].conj()))))
}

pub fn equivariance_suite<S: SuiteScalar>(rng: &mut ChaCha8Rng, n: usize) -> SuiteResult {
    let start = Instant::now();
    let mut t = Tally::new("equivariance");
    for _ in 0..n {
        t.next_case();
        let a: OctMatrix2<S> = conv_mat(&rnd::traceless(rng));
        let xi: OctVector2<S> = conv_vec(&rnd::vec2(rng));
        let eta: OctVector2<S> = conv_vec(&rnd::vec2(rng));
        let x: HermMatrix2<S> = conv_herm(&rnd::herm(rng));
        let ast = a.conj_transpose();
        let axi = ast.apply(&xi);
        let xx = outer(&xi, &xi);
        let lhs = outer(&axi, &xi).add(&outer(&xi, &axi));
        let rhs = ast.mul(&xx).add(&xx.mul(&a));
        same(&mut t, "T-map equivariance", &mat_entries(&lhs), &mat_entries(&rhs));
        let xm = x.to_oct();
        let l = xi.inner(&xm.mul(&a).apply(&xi));
        let r = xi.inner(&xm.apply(&a.apply(&xi)));
        same_s(&mut t, "j-equivariance", &l, &r);
        let (p, q) = dual_check(&a, &xi, &eta);
        same_s(&mut t, "adjoint pairing", &p, &q);
        if let (Some(h), Some(hs)) = (t.ok("hat", hat(&a)), t.ok("hat", hat(&ast))) {
            let ht: Vec<S> = (0..256).map(|k| h[(k % 16) * 16 + k / 16].clone()).collect();
            same(&mut t, "hat(A)^T = hat(A*)", &ht, &hs);
        }
        // the source action of A is ξ ↦ −A*ξ, so T(A*ξ, η) + T(ξ, A*η) = −rho(A) T(ξ, η)
        let dt = t_map(&ast.apply(&xi), &eta).add(&t_map(&xi, &ast.apply(&eta)));
        if let Some(rho) = t.ok("rho", rho_matrix(&a)) {
            let tv = t_map(&xi, &eta).to_vec10();
            let img: Vec<S> = (0..10).map(|i| (0..10).fold(S::zero(), |acc, j| acc + rho[i * 10 + j].clone() * tv[j].clone())).collect();
            let neg: Vec<S> = dt.to_vec10().iter().map(|v| -v.clone()).collect();
            same(&mut t, "T-map derivative", &img, &neg);
        }
    }
    t.finish(start)
}

pub fn herm_suite(rng: &mut ChaCha8Rng, n: usize) -> SuiteResult {
    let start = Instant::now();
    let mut t = Tally::new("herm");
    for _ in 0..n {
        t.next_case();
        let a = rnd::herm(rng);
        // (−q, a) gives ξ*Aξ = a·det A; (1, 0) gives a
        let witness = if a.a <= Rational::zero() {
            OctVector2::new(OctQ::one(), OctQ::zero())
        } else {
            OctVector2::new(-&a.q, OctQ::real(a.a.clone()))
        };
        if a.is_positive_definite() {
            let xi = rnd::vec2(rng);
            t.check("positive definite matrices are positive", xi.is_zero() || a.quad(&xi) > Rational::zero());
        } else {
            t.check("indefinite matrices have a nonpositive vector", a.quad(&witness) <= Rational::zero());
        }
        let p = rnd::pd_herm(rng);
        let md = p.mixed_det(&a);
        t.check("Aleksandrov inequality", &md * &md >= p.det() * a.det());
        let af = rnd::herm_f64(rng);
        let d = diagonalize(&af);
        let img = congruence(&d.g, &af);
        let scale = 1.0 + af.a.abs() + af.b.abs() + af.q.norm_sq().sqrt();
        let (s1, s2) = if d.swapped { (img.b, img.a) } else { (img.a, img.b) };
        let err = ((s1 - d.d.a).abs() + (s2 - d.d.b).abs() + img.q.norm_sq().sqrt()) / scale;
        t.within("diagonalization", err, 1e-12);
        if let Some((l1, l2)) = t.ok("spectrum", af.spectrum()) {
            t.within("diagonalization preserves the spectrum", ((l1 - d.d.b).abs() + (l2 - d.d.a).abs()) / scale, 1e-12);
        }
        let pf = rnd::pd_herm_f64(rng);
        if let Some((c, bd, rec)) = t.ok("simultaneous reduction", simultaneous_reduce(&pf, &af)) {
            let ai = rec.apply(&pf);
            let bi = rec.apply(&af);
            let s = 1.0 + c + bd.a.abs() + bd.b.abs();
            let err = ((ai.a - c).abs() + (ai.b - c).abs() + ai.q.norm_sq().sqrt() + bi.q.norm_sq().sqrt()) / s;
            t.within("simultaneous reduction", err, 1e-10);
            t.within("reduced determinant", (c * c - pf.det()).abs() / (1.0 + pf.det()), 1e-10);
        }
        // det(A + tB) is quadratic in t, so the central difference is exact
        // up to rounding and d/dt log det(A + tB) = 2 D(A, B) / det A
        let h = 1e-3;
        let dt = |s: f64| pf.add(&af.scale(&s)).det();
        let fd = (dt(h) - dt(-h)) / (2.0 * h);
        let exact = 2.0 * pf.mixed_det(&af);
        let scale = 1.0 + pf.det() / h + exact.abs();
        t.within("derivative of det", (fd - exact).abs() / scale, 1e-10);
    }
    t.finish(start)
}

fn op_norm1(m: &[f64], n: usize) -> f64 {
    (0..n).map(|j| (0..n).map(|i| m[i * n + j].abs()).sum::<f64>()).fold(0.0, f64::max)
}

pub fn group_suite(rng: &mut ChaCha8Rng, n: usize) -> SuiteResult {
    let start = Instant::now();
    let mut t = Tally::new("group");
    let tol = 1e-7;
    for _ in 0..n {
        t.next_case();
        let len = rng.gen_range(1..=3);
        let mut word = Vec::new();
        for _ in 0..len {
            let a = rnd::traceless_f64(rng);
            let Some(h) = t.ok("hat", hat(&a)) else { continue };
            let s = rnd::f64_unit(rng) * 4.0 / op_norm1(&h, 16).max(1e-12);
            word.push((a, s));
        }
        let Some(g) = t.ok("exponential word", exp_word(&word)) else { continue };
        t.within("det of the 16-dim representation", (g.rep16.determinant() - 1.0).abs(), tol);
        // two points (q, aq) of one line
        let slope = rnd::oct_f64(rng);
        let (q1, q2) = (rnd::unit_oct_f64(rng), rnd::unit_oct_f64(rng));
        let xi = OctVector2::new(q1.clone(), slope.mul(&q1));
        let eta = OctVector2::new(q2.clone(), slope.mul(&q2));
        let gx = g.apply16(&xi);
        let gy = g.apply16(&eta);
        let (nx, ny) = (gx.norm_sq() / xi.norm_sq(), gy.norm_sq() / eta.norm_sq());
        t.within("conformality", (nx - ny).abs() / nx, tol);
        let (nx, ny) = (gx.norm_sq(), gy.norm_sq());
        let lx = HermMatrix2::rank_one(&gx).scale(&(1.0 / nx));
        let ly = HermMatrix2::rank_one(&gy).scale(&(1.0 / ny));
        let diff = lx.sub(&ly).to_vec10().iter().fold(0.0f64, |m, v| m.max(v.abs()));
        t.within("lines map to lines", diff, tol);
        let x = rnd::pd_herm_f64(rng);
        let gxm = g.apply10(&x);
        t.check("cone preservation", gxm.is_positive_definite());
        // θ(G⁻ᵀ j(X) G⁻¹) against the 10-dim representation
        if let Some(gi) = g.rep16.clone().try_inverse() {
            let jb = DMatrix::from_row_slice(16, 16, j_map(&x).entries());
            let moved = gi.transpose() * jb * &gi;
            let moved = (&moved + moved.transpose()) * 0.5;
            let q = QuadForm16::from_matrix(moved.transpose().as_slice().to_vec()).expect("symmetrized");
            let th = theta_map(&q).to_vec10();
            let rv = gxm.to_vec10();
            let mag = rv.iter().fold(1.0f64, |m, v| m.max(v.abs()));
            let err = th.iter().zip(&rv).fold(0.0f64, |m, (p, q)| m.max((p - q).abs())) / mag;
            t.within("j-equivariance of the group action", err, tol);
        } else {
            t.check("group element is invertible", false);
        }
    }
    t.finish(start)
}

pub fn closed_current_suite(rng: &mut ChaCha8Rng, n: usize) -> SuiteResult {
    let start = Instant::now();
    let mut t = Tally::new("closed_current");
    for _ in 0..n {
        t.next_case();
        let u = rnd::poly(rng, 5, 40);
        let h = hess_oct(&u);
        let (r1, r2) = closed_current_residual(&h);
        t.check("octonionic residual of a Hessian", r1.is_zero() && r2.is_zero());
        t.check("scalar residuals of a Hessian", closed_current_residual_scalar(&h).iter().all(Poly16::is_zero));
    }
    t.finish(start)
}

fn random_current(rng: &mut ChaCha8Rng) -> HermPolyMatrix {
    let comps = (0..10).map(|_| if rng.gen_bool(0.3) { rnd::poly(rng, 3, 6) } else { Poly16::zero() }).collect();
    HermPolyMatrix::from_components(comps)
}

pub fn current_equivalence_suite(rng: &mut ChaCha8Rng, n: usize) -> SuiteResult {
    let start = Instant::now();
    let mut t = Tally::new("current_equivalence");
    for _ in 0..n {
        t.next_case();
        let u = rnd::poly(rng, 4, 10);
        let candidates = [random_current(rng), hess_oct(&u), {
            let mut c: Vec<Poly16> = hess_oct(&u).components().into_iter().cloned().collect();
            let k = rng.gen_range(0..10);
            let d = rng.gen_range(1..=2);
            c[k] = c[k].add(&rnd::homogeneous(rng, d, 3));
            HermPolyMatrix::from_components(c)
        }];
        for tc in &candidates {
            let (r1, r2) = closed_current_residual(tc);
            let oct_zero = r1.is_zero() && r2.is_zero();
            let scalar_zero = closed_current_residual_scalar(tc).iter().all(Poly16::is_zero);
            t.check("octonionic and scalar residuals vanish together", oct_zero == scalar_zero);
        }
    }
    t.finish(start)
}

pub fn divergence_suite(rng: &mut ChaCha8Rng, n: usize) -> SuiteResult {
    let start = Instant::now();
    let mut t = Tally::new("divergence");
    for _ in 0..n {
        t.next_case();
        let u = rnd::poly(rng, 4, 40);
        t.check("divergence defect vanishes", divergence_defect(&u).iter().all(Poly16::is_zero));
        let h = rnd::poly(rng, 3, 6);
        let lhs = coefficient_matrix(&u).apply(&h);
        t.check("coefficient matrix gives 2 D(U, Hess h)", lhs == ma_mixed(&u, &h).scale(&rat(2, 1)));
    }
    t.finish(start)
}

pub fn calculus_suite(rng: &mut ChaCha8Rng, n: usize) -> SuiteResult {
    let start = Instant::now();
    let mut t = Tally::new("calculus");
    for _ in 0..n {
        t.next_case();
        let u = rnd::poly(rng, 5, 15);
        t.check("operator orders agree", hess_orders_agree(&u));
        let psi = rnd::oct_poly(rng, 4, 6);
        let k = rng.gen_range(1..=2);
        let (d1, d2) = psi_laplacian_identity(&psi, k);
        t.check("Laplacian factorization", d1.is_zero() && d2.is_zero());
        let f = rnd::homogeneous(rng, 2, 20);
        if let Some(b) = t.ok("quadratic form", quadform_of(&f)) {
            let h = hess_oct(&f);
            let ok = h.components().iter().all(|p| p.degree().unwrap_or(0) == 0)
                && h.eval(&vec![Rational::zero(); NVARS]) == theta_map(&b).scale(&rat(16, 1));
            t.check("Hessian of a quadratic is 16 theta", ok);
        }
        let a = rnd::traceless(rng);
        if let Some(d) = t.ok("Hessian equivariance", hessian_equivariance_defect(&f, &a)) {
            t.check("Hessian equivariance", d.iter().all(Zero::is_zero));
        }
        let v = rnd::poly(rng, 4, 10);
        let z = rnd::unit_line_vector(rng);
        match (laplacian_line(&z, &v), laplacian_line_direct(&z, &v)) {
            (Ok(p), Ok(q)) => t.check("line Laplacian two ways", p == q),
            (Err(e), _) | (_, Err(e)) => t.ok::<()>("line Laplacian", Err(e)).unwrap_or(()),
        }
    }
    t.finish(start)
}

pub fn ibp_suite(rng: &mut ChaCha8Rng, n: usize) -> SuiteResult {
    let start = Instant::now();
    let mut t = Tally::new("ibp");
    for _ in 0..n {
        t.next_case();
        let coords = rnd::coords(rng, 2);
        let f = rnd::trig_poly(rng, &coords, 2, 1.0, 4);
        let v = rnd::trig_poly(rng, &coords, 2, 1.0, 4);
        let pot = rnd::trig_poly(rng, &coords, 1, 0.01, 3);
        let g0 = TorusHermField { constant: rnd::pd_herm_f64(rng), potential: Some(pot) };
        if let Some(d) = t.ok("integration by parts", ibp_defect(&f, &v, &g0)) {
            t.within("integration by parts", d.relative, 1e-10);
        }
    }
    t.finish(start)
}

/// `c1|x1|² + c2|x2|²` plus cubic and quartic terms.
fn diagonal_plus_higher(rng: &mut ChaCha8Rng) -> Poly16 {
    let mut u = Poly16::zero();
    let (c1, c2) = (rnd::positive_rational(rng), rnd::positive_rational(rng));
    for p in 0..8 {
        let (a, b) = (Poly16::var(var_index(1, p)), Poly16::var(var_index(2, p)));
        u = u.add(&a.mul(&a).scale(&c1)).add(&b.mul(&b).scale(&c2));
    }
    u.add(&rnd::homogeneous(rng, 3, 20)).add(&rnd::homogeneous(rng, 4, 10))
}

/// Strictly oPSH near the origin: `|x|²` plus a small perturbation.
fn near_euclidean(rng: &mut ChaCha8Rng) -> Poly16 {
    let mut u = Poly16::zero();
    for i in 0..NVARS {
        u = u.add(&Poly16::var(i).mul(&Poly16::var(i)));
    }
    u.add(&rnd::poly(rng, 4, 20).scale(&rat(1, 100)))
}

fn point(rng: &mut ChaCha8Rng, r: f64) -> Vec<f64> {
    (0..NVARS).map(|_| r * rnd::f64_unit(rng)).collect()
}

pub fn inequality_suite(rng: &mut ChaCha8Rng, n: usize) -> SuiteResult {
    let start = Instant::now();
    let mut t = Tally::new("inequalities");
    let tol = 1e-8;
    for i in 0..5 * n {
        t.next_case();
        let a = rnd::pd_herm_f64(rng);
        let b = rnd::pd_herm_f64(rng);
        if let Some(tr) = t.ok("trace", trace_inv_times(&a, &b)) {
            let (da, db) = (a.det().sqrt(), b.det().sqrt());
            let lhs = 2.0 - tr;
            let rhs = 2.0 / da * (da - db);
            t.within("trace bound", (lhs - rhs).max(0.0) / (1.0 + rhs.abs()), tol);
        }
        let h = rnd::herm_f64(rng);
        if let Some(s) = t.ok("trace of squares", trace_inv_sq(&a, &h)) {
            t.within("trace of squares is nonnegative", (-s).max(0.0), tol);
        }
        if i >= n {
            continue;
        }
        let u = diagonal_plus_higher(rng);
        if let Some((l, r)) = t.ok("elementary inequality", elementary_inequality_at_origin(&u)) {
            let gap = (l.to_f64() - r.to_f64()).max(0.0) / (1.0 + r.to_f64().abs());
            t.within("elementary inequality", if l <= r { 0.0 } else { gap.max(f64::MIN_POSITIVE) }, tol);
        }
        let u = near_euclidean(rng);
        let x = point(rng, 0.5);
        if !hess_oct(&u).eval_f64(&x).is_positive_definite() {
            continue;
        }
        let z = rnd::unit_line_vector(rng).to_f64();
        if let Some((l, r)) = t.ok("line Laplacian inequality", line_laplacian_sides(&u, &x, &z)) {
            t.within("line Laplacian inequality", (r - l).max(0.0) / (1.0 + l.abs() + r.abs()), tol);
        }
    }
    t.finish(start)
}

pub fn fourth_order_suite(rng: &mut ChaCha8Rng, n: usize) -> SuiteResult {
    let start = Instant::now();
    let mut t = Tally::new("fourth_order");
    for _ in 0..n {
        t.next_case();
        let u = near_euclidean(rng);
        let x = point(rng, 0.5);
        if !hess_oct(&u).eval_f64(&x).is_positive_definite() {
            continue;
        }
        if let Some((l, r)) = t.ok("fourth-order identity", fourth_order_sides(&u, &x)) {
            t.within("fourth-order identity", (l - r).abs() / (1.0 + l.abs() + r.abs()), 1e-8);
        }
    }
    t.finish(start)
}

pub fn normalization_suite(_rng: &mut ChaCha8Rng, _n: usize) -> SuiteResult {
    let start = Instant::now();
    let mut t = Tally::new("normalization");
    t.next_case();
    let disc = Discretization::new(&[0, 8], 2, &TorusHermField::identity(), None);
    let Some(disc) = t.ok("discretization", disc) else { return t.finish(start) };
    if let Some(a) = t.ok("normalization", disc.normalization_constant(&vec![0.0; disc.grid.len()])) {
        t.check("A = 1 for f = 0", a == 1.0);
    }
    for c in [-1.5, -0.3, 0.7, 2.0] {
        t.next_case();
        if let Some(a) = t.ok("normalization", disc.normalization_constant(&vec![c; disc.grid.len()])) {
            t.within("A = exp(-c) for constant f = c", (a - (-c).exp()).abs(), 1e-12);
        }
    }
    t.finish(start)
}

/// Manufactured solves, zero forcing and uniqueness.
pub fn monge_ampere_suite(rng: &mut ChaCha8Rng, _n: usize) -> SuiteResult {
    let start = Instant::now();
    let mut t = Tally::new("monge_ampere");
    let settings = Settings::default();
    let mut mixed = [0; NVARS];
    mixed[0] = 1;
    mixed[8] = 1;
    let cases = [
        ("single mode", vec![0], cos_potential(&[0], 0.01)),
        ("mixed mode", vec![0, 8], TrigPoly::cos_mode(&mixed, 0.005)),
    ];
    for (label, active, phi_star) in cases {
        t.next_case();
        let Some(disc) = t.ok(label, Discretization::new(&active, 2, &TorusHermField::identity(), None)) else { continue };
        let Some(m) = t.ok(label, disc.manufacture(&phi_star)) else { continue };
        let Some(r) = t.ok(label, disc.newton_solve(&m.f_nodal, &settings, None)) else { continue };
        t.within(&format!("{label}: sup error"), r.solution.max_coeff_diff(&phi_star), 1e-8);
        t.check(&format!("{label}: at most 10 iterations"), r.iterations <= 10);
        t.check(&format!("{label}: under a minute"), r.wall_time < 60.0);
        t.check(&format!("{label}: residual decreases"), r.residual_history.windows(2).all(|w| w[1] < w[0]));
        if let Some(j) = t.ok(label, disc.galerkin_matrix(&r.solution)) {
            let asym = (&j - j.transpose()).abs().max() / j.abs().max();
            t.within(&format!("{label}: Galerkin matrix is symmetric"), asym, 1e-9);
        }
        if let Some(a) = t.ok(label, disc.normalization_constant(&m.f_nodal)) {
            // G0 = I, so det G0 = 1
            let dev: Vec<f64> = m.f_nodal.iter().map(|f| a * f.exp() - 1.0).collect();
            t.within(&format!("{label}: renormalized forcing has mean zero"), disc.grid.mean(&dev).abs(), 1e-10);
        }
        let zero = vec![0.0; disc.grid.len()];
        if let Some(z) = t.ok(label, disc.newton_solve(&zero, &settings, None)) {
            t.within(&format!("{label}: zero forcing"), z.solution.max_coeff_diff(&TrigPoly::zero()), 1e-12);
        }
        // small enough that G0 + Hess(guess) stays positive definite
        let guess = rnd::trig_poly(rng, &active, 2, 0.0002, 4);
        if let Some(r2) = t.ok(label, disc.newton_solve(&m.f_nodal, &settings, Some(&guess))) {
            t.within(&format!("{label}: two initial guesses agree"), r2.solution.max_coeff_diff(&r.solution), 1e-8);
        }
    }
    t.next_case();
    if let Ok(disc) = Discretization::new(&[0], 3, &TorusHermField::identity(), None) {
        let psi = TrigPoly::cos_mode(&freq1(0, 2), 1.0);
        if let Some(v) = t.ok("linearization", disc.linearized_apply(&TrigPoly::zero(), &psi)) {
            let want = disc.sample(&psi.scale(-4.0 * crate::trig::FOUR_PI_SQ)).unwrap_or_default();
            let err = v.iter().zip(&want).fold(0.0f64, |m, (a, b)| m.max((a - b).abs()));
            t.within("linearization at zero", err / crate::trig::FOUR_PI_SQ, 1e-12);
        }
    }
    t.finish(start)
}

pub fn syzygy_suite(_rng: &mut ChaCha8Rng, _n: usize) -> SuiteResult {
    let start = Instant::now();
    let mut t = Tally::new("syzygy");
    t.next_case();
    let row = ten_quadrics();
    let printed = printed_kernel_matrix();
    t.check("printed columns are syzygies", syzygy_defects(&printed, &row).iter().all(Poly16::is_zero));
    let basis = syzygy_kernel(&row);
    t.check("computed generators are syzygies", syzygy_defects(&basis.generators, &row).iter().all(Poly16::is_zero));
    t.check("computed module equals the printed one", modules_equal(&basis.generators, &printed));
    t.finish(start)
}

pub type SuiteFn = fn(&mut ChaCha8Rng, usize) -> SuiteResult;

pub struct Suite {
    pub name: &'static str,
    pub default_count: usize,
    /// Whether `count` is ignored.
    pub fixed: bool,
    exact: SuiteFn,
    float: SuiteFn,
}

macro_rules! suite {
    ($name:expr, $n:expr, $fixed:expr, $f:expr) => {
        Suite { name: $name, default_count: $n, fixed: $fixed, exact: $f, float: $f }
    };
    ($name:expr, $n:expr, generic $f:ident) => {
        Suite { name: $name, default_count: $n, fixed: false, exact: $f::<Rational>, float: $f::<f64> }
    };
}

pub const SUITES: &[Suite] = &[
    suite!("octonion", 10_000, generic octonion_suite),
    suite!("mixed_det", 1000, generic mixed_det_suite),
    suite!("lines", 1000, generic lines_suite),
    suite!("equivariance", 1000, generic equivariance_suite),
    suite!("herm", 1000, false, herm_suite),
    suite!("group", 100, false, group_suite),
    suite!("closed_current", 500, false, closed_current_suite),
    suite!("current_equivalence", 200, false, current_equivalence_suite),
    suite!("divergence", 200, false, divergence_suite),
    suite!("calculus", 200, false, calculus_suite),
    suite!("ibp", 100, false, ibp_suite),
    suite!("inequalities", 200, false, inequality_suite),
    suite!("fourth_order", 100, false, fourth_order_suite),
    suite!("normalization", 1, true, normalization_suite),
    suite!("monge_ampere", 1, true, monge_ampere_suite),
    suite!("syzygy", 1, true, syzygy_suite),
];

pub fn suite_names() -> Vec<&'static str> {
    SUITES.iter().map(|s| s.name).collect()
}

/// Runs one suite; `count` overrides the default number of instances.
pub fn run_suite(name: &str, seed: u64, count: Option<usize>, backend: Backend) -> Result<SuiteResult> {
    let s = SUITES
        .iter()
        .find(|s| s.name == name)
        .ok_or_else(|| Error::Config(format!("unknown suite '{name}'; expected one of {}", suite_names().join(", "))))?;
    let mut rng = suite_rng(seed, name);
    let n = if s.fixed { s.default_count } else { count.unwrap_or(s.default_count) };
    let f = match backend {
        Backend::Exact => s.exact,
        Backend::Float => s.float,
    };
    Ok(f(&mut rng, n))
}
