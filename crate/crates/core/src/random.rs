//! Seeded generators for test instances.
//!
//! Rationals have numerator and denominator bounded by 100; random polynomials
//! have at most 40 terms.

use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::herm2::{HermF, HermMatrix2, HermQ, OctMatrix2, OctVector2};
use crate::lie::generator;
use crate::lines::QuadForm16;
use crate::octonion::{OctF, OctQ, Octonion};
use crate::poly::{Mono, OctPoly, Poly16, NVARS};
use crate::scalar::{rat, Rational};
use crate::trig::{Freq, TrigPoly};

pub const DEFAULT_SEED: u64 = 0xC0FFEE;

/// FNV-1a, so suite seeds do not depend on the standard library's hasher.
fn fnv1a(s: &str) -> u64 {
    s.bytes().fold(0xcbf29ce484222325u64, |h, b| (h ^ b as u64).wrapping_mul(0x100000001b3))
}

/// Generator for one named suite: independent of which other suites run.
pub fn suite_rng(seed: u64, suite: &str) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ fnv1a(suite))
}

pub fn rational(rng: &mut impl Rng) -> Rational {
    rat(rng.gen_range(-100..=100), rng.gen_range(1..=100))
}

pub fn positive_rational(rng: &mut impl Rng) -> Rational {
    rat(rng.gen_range(1..=100), rng.gen_range(1..=100))
}

pub fn oct(rng: &mut impl Rng) -> OctQ {
    Octonion::new(std::array::from_fn(|_| rational(rng)))
}

pub fn vec2(rng: &mut impl Rng) -> OctVector2<Rational> {
    OctVector2::new(oct(rng), oct(rng))
}

pub fn herm(rng: &mut impl Rng) -> HermQ {
    HermMatrix2::new(rational(rng), rational(rng), oct(rng))
}

/// Positive definite: `b = (|q|² + s)/a` with `a, s > 0`.
pub fn pd_herm(rng: &mut impl Rng) -> HermQ {
    let q = oct(rng);
    let a = positive_rational(rng);
    let s = positive_rational(rng);
    let b = (q.norm_sq() + s) / &a;
    HermMatrix2::new(a, b, q)
}

/// Traceless `[[d, u], [l, −d]]`.
pub fn traceless(rng: &mut impl Rng) -> OctMatrix2<Rational> {
    generator(oct(rng), oct(rng), oct(rng))
}

pub fn quadform(rng: &mut impl Rng) -> QuadForm16<Rational> {
    let mut b = QuadForm16::zero();
    for i in 0..16 {
        for j in i..16 {
            b.set_sym(i, j, rational(rng));
        }
    }
    b
}

/// Exact unit vector in `ℝⁿ` by inverse stereographic projection of a random
/// rational point of `ℝⁿ⁻¹`.
pub fn unit_vector(rng: &mut impl Rng, n: usize) -> Vec<Rational> {
    let w: Vec<Rational> = (0..n - 1).map(|_| rat(rng.gen_range(-9..=9), rng.gen_range(1..=9))).collect();
    let s = w.iter().fold(Rational::zero(), |acc, x| acc + x * x);
    let den = &s + rat(1, 1);
    let mut out = vec![(rat(1, 1) - &s) / &den];
    out.extend(w.iter().map(|x| x * rat(2, 1) / &den));
    out
}

pub fn unit_oct(rng: &mut impl Rng) -> OctQ {
    let v = unit_vector(rng, 8);
    Octonion::new(std::array::from_fn(|i| v[i].clone()))
}

/// Exact unit vector with a real coordinate: `(r, w)` or `(w, r)`.
pub fn unit_line_vector(rng: &mut impl Rng) -> OctVector2<Rational> {
    let v = unit_vector(rng, 9);
    let r = OctQ::real(v[0].clone());
    let w = Octonion::new(std::array::from_fn(|i| v[i + 1].clone()));
    if rng.gen_bool(0.5) {
        OctVector2::new(r, w)
    } else {
        OctVector2::new(w, r)
    }
}

/// Random monomial of total degree `d`.
pub fn mono(rng: &mut impl Rng, d: u32) -> Mono {
    let mut m = Mono::one();
    for _ in 0..d {
        m.0[rng.gen_range(0..NVARS)] += 1;
    }
    m
}

/// Up to `max_terms` terms of degree at most `max_deg`.
pub fn poly(rng: &mut impl Rng, max_deg: u32, max_terms: usize) -> Poly16 {
    let n = rng.gen_range(1..=max_terms);
    let mut p = Poly16::zero();
    for _ in 0..n {
        let d = rng.gen_range(0..=max_deg);
        p.add_term(mono(rng, d), rational(rng));
    }
    p
}

/// Homogeneous of degree `d`.
pub fn homogeneous(rng: &mut impl Rng, d: u32, max_terms: usize) -> Poly16 {
    let n = rng.gen_range(1..=max_terms);
    let mut p = Poly16::zero();
    for _ in 0..n {
        p.add_term(mono(rng, d), rational(rng));
    }
    p
}

pub fn oct_poly(rng: &mut impl Rng, max_deg: u32, max_terms: usize) -> OctPoly {
    OctPoly { c: std::array::from_fn(|_| if rng.gen_bool(0.5) { poly(rng, max_deg, max_terms) } else { Poly16::zero() }) }
}

pub fn f64_unit(rng: &mut impl Rng) -> f64 {
    rng.gen_range(-1.0..=1.0)
}

pub fn oct_f64(rng: &mut impl Rng) -> OctF {
    Octonion::new(std::array::from_fn(|_| f64_unit(rng)))
}

pub fn herm_f64(rng: &mut impl Rng) -> HermF {
    HermMatrix2::new(2.0 * f64_unit(rng), 2.0 * f64_unit(rng), oct_f64(rng))
}

/// Positive definite with `det ≥ 0.05·a`.
pub fn pd_herm_f64(rng: &mut impl Rng) -> HermF {
    let q = oct_f64(rng);
    let a = rng.gen_range(0.1..=3.0);
    let b = (q.norm_sq() + rng.gen_range(0.05..=3.0)) / a;
    HermMatrix2::new(a, b, q)
}

pub fn unit_oct_f64(rng: &mut impl Rng) -> OctF {
    loop {
        let q = oct_f64(rng);
        let n = q.norm_sq().sqrt();
        if n > 0.1 {
            return q.scale(&(1.0 / n));
        }
    }
}

pub fn traceless_f64(rng: &mut impl Rng) -> OctMatrix2<f64> {
    generator(oct_f64(rng), oct_f64(rng), oct_f64(rng))
}

/// Trigonometric polynomial with `|k_i| ≤ kmax` on `coords`, coefficients in
/// `[−amp, amp]`, and no constant term.
pub fn trig_poly(rng: &mut impl Rng, coords: &[usize], kmax: u32, amp: f64, terms: usize) -> TrigPoly {
    let mut t = TrigPoly::zero();
    for _ in 0..terms {
        let mut k: Freq = [0; NVARS];
        for &c in coords {
            k[c] = rng.gen_range(-(kmax as i32)..=kmax as i32);
        }
        if k.iter().all(|&v| v == 0) {
            continue;
        }
        t.add_mode(&k, amp * f64_unit(rng), amp * f64_unit(rng));
    }
    t
}

/// One or two distinct coordinates, drawn from both blocks.
pub fn coords(rng: &mut impl Rng, max: usize) -> Vec<usize> {
    let mut all: Vec<usize> = (0..NVARS).collect();
    all.shuffle(rng);
    let n = rng.gen_range(1..=max);
    let mut c = all[..n].to_vec();
    c.sort();
    c
}
