//! Real trigonometric polynomials on the flat torus `ℝ¹⁶/ℤ¹⁶` and tensor
//! quadrature grids over a subset of the coordinates.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::herm2::{HermF, HermMatrix2, OctVector2};
use crate::octonion::Octonion;
use crate::poly::NVARS;

pub type Freq = [i32; NVARS];

/// `4π²`.
pub const FOUR_PI_SQ: f64 = 4.0 * PI * PI;

/// Representative of `±k` whose first nonzero entry is positive, and the sign
/// picked up by the sine coefficient.
pub fn canonical(k: &Freq) -> (Freq, f64) {
    match k.iter().find(|&&v| v != 0) {
        Some(&v) if v < 0 => (k.map(|v| -v), -1.0),
        _ => (*k, 1.0),
    }
}

/// `κκ*` with `κ = (Σ_p k_p e_p, Σ_p k_{8+p} e_p)`; the Hessian of
/// `cos(2π k·x)` is `−4π² cos(2π k·x) κκ*`.
pub fn kappa_outer(k: &Freq) -> HermF {
    let x1 = Octonion::new(std::array::from_fn(|p| k[p] as f64));
    let x2 = Octonion::new(std::array::from_fn(|p| k[8 + p] as f64));
    HermMatrix2::rank_one(&OctVector2::new(x1, x2))
}

fn phase(k: &Freq, x: &[f64]) -> f64 {
    2.0 * PI * k.iter().zip(x).map(|(&a, &b)| a as f64 * b).sum::<f64>()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Mode {
    pub k: Freq,
    #[serde(default)]
    pub cos: f64,
    #[serde(default)]
    pub sin: f64,
}

/// `Σ_k c_k cos(2π k·x) + s_k sin(2π k·x)` over canonical frequencies.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Mode>", into = "Vec<Mode>")]
pub struct TrigPoly {
    modes: BTreeMap<Freq, (f64, f64)>,
}

impl TryFrom<Vec<Mode>> for TrigPoly {
    type Error = String;

    fn try_from(v: Vec<Mode>) -> std::result::Result<Self, String> {
        let mut t = TrigPoly::zero();
        for m in v {
            if m.k.iter().all(|&c| c == 0) && m.sin != 0.0 {
                return Err("the zero frequency has no sine coefficient".into());
            }
            if !m.cos.is_finite() || !m.sin.is_finite() {
                return Err("coefficients must be finite".into());
            }
            t.add_mode(&m.k, m.cos, m.sin);
        }
        Ok(t)
    }
}

impl From<TrigPoly> for Vec<Mode> {
    fn from(t: TrigPoly) -> Self {
        t.modes.into_iter().map(|(k, (cos, sin))| Mode { k, cos, sin }).collect()
    }
}

impl TrigPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: f64) -> Self {
        let mut t = Self::zero();
        t.add_mode(&[0; NVARS], c, 0.0);
        t
    }

    pub fn cos_mode(k: &Freq, amp: f64) -> Self {
        let mut t = Self::zero();
        t.add_mode(k, amp, 0.0);
        t
    }

    pub fn sin_mode(k: &Freq, amp: f64) -> Self {
        let mut t = Self::zero();
        t.add_mode(k, 0.0, amp);
        t
    }

    /// Adds `c cos(2π k·x) + s sin(2π k·x)`.
    pub fn add_mode(&mut self, k: &Freq, c: f64, s: f64) {
        let (kc, sg) = canonical(k);
        let zero = kc.iter().all(|&v| v == 0);
        let e = self.modes.entry(kc).or_insert((0.0, 0.0));
        e.0 += c;
        if !zero {
            e.1 += sg * s;
        }
        if e.0 == 0.0 && e.1 == 0.0 {
            self.modes.remove(&kc);
        }
    }

    pub fn modes(&self) -> impl Iterator<Item = (&Freq, &(f64, f64))> {
        self.modes.iter()
    }

    pub fn coeff(&self, k: &Freq) -> (f64, f64) {
        let (kc, sg) = canonical(k);
        self.modes.get(&kc).map_or((0.0, 0.0), |&(c, s)| (c, sg * s))
    }

    pub fn is_zero(&self) -> bool {
        self.modes.is_empty()
    }

    pub fn mean(&self) -> f64 {
        self.coeff(&[0; NVARS]).0
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut t = self.clone();
        for (k, &(c, s)) in &o.modes {
            t.add_mode(k, c, s);
        }
        t
    }

    pub fn scale(&self, a: f64) -> Self {
        let mut t = Self::zero();
        for (k, &(c, s)) in &self.modes {
            t.add_mode(k, a * c, a * s);
        }
        t
    }

    /// Largest `|k_i|` over all modes.
    pub fn max_freq(&self) -> u32 {
        self.modes.keys().flat_map(|k| k.iter()).map(|v| v.unsigned_abs()).max().unwrap_or(0)
    }

    /// Coordinates with a nonzero frequency in some mode.
    pub fn support(&self) -> Vec<usize> {
        (0..NVARS).filter(|&i| self.modes.keys().any(|k| k[i] != 0)).collect()
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        self.modes
            .iter()
            .map(|(k, &(c, s))| {
                let t = phase(k, x);
                c * t.cos() + s * t.sin()
            })
            .sum()
    }

    /// `Hess_𝕆` at `x`.
    pub fn hess(&self, x: &[f64]) -> HermF {
        let mut h = HermF::zero();
        for (k, &(c, s)) in &self.modes {
            if k.iter().all(|&v| v == 0) {
                continue;
            }
            let t = phase(k, x);
            let v = -FOUR_PI_SQ * (c * t.cos() + s * t.sin());
            h = h.add(&kappa_outer(k).scale(&v));
        }
        h
    }

    /// Largest absolute coefficient difference.
    pub fn max_coeff_diff(&self, o: &Self) -> f64 {
        let d = self.add(&o.scale(-1.0));
        d.modes.values().map(|&(c, s)| c.abs().max(s.abs())).fold(0.0, f64::max)
    }
}

/// Constant Hermitian matrix plus the octonionic Hessian of a trigonometric
/// potential, so locally a Hessian everywhere.
#[derive(Clone, Debug, PartialEq)]
pub struct TorusHermField {
    pub constant: HermF,
    pub potential: Option<TrigPoly>,
}

impl TorusHermField {
    pub fn constant(c: HermF) -> Self {
        TorusHermField { constant: c, potential: None }
    }

    pub fn identity() -> Self {
        Self::constant(HermF::identity())
    }

    pub fn eval(&self, x: &[f64]) -> HermF {
        match &self.potential {
            Some(p) => self.constant.add(&p.hess(x)),
            None => self.constant.clone(),
        }
    }

    pub fn max_freq(&self) -> u32 {
        self.potential.as_ref().map_or(0, |p| p.max_freq())
    }

    pub fn support(&self) -> Vec<usize> {
        self.potential.as_ref().map_or(Vec::new(), |p| p.support())
    }
}

/// Uniform tensor grid with `n` points per active coordinate; the other
/// coordinates are 0. The mean over the grid integrates exactly every
/// trigonometric polynomial with all `|k_i| < n`.
#[derive(Clone, Debug)]
pub struct Grid {
    pub active: Vec<usize>,
    pub n: usize,
    pub points: Vec<[f64; NVARS]>,
}

/// Largest grid size accepted.
pub const MAX_NODES: usize = 4_000_000;

impl Grid {
    pub fn new(active: &[usize], n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Config("grid needs at least one node per coordinate".into()));
        }
        let total = (0..active.len()).try_fold(1usize, |acc, _| acc.checked_mul(n));
        let total = match total {
            Some(t) if t <= MAX_NODES => t,
            _ => return Err(Error::Config(format!("grid of {n}^{} nodes is too large", active.len()))),
        };
        let mut points = Vec::with_capacity(total);
        for mut idx in 0..total {
            let mut x = [0.0; NVARS];
            for &a in active {
                x[a] = (idx % n) as f64 / n as f64;
                idx /= n;
            }
            points.push(x);
        }
        Ok(Grid { active: active.to_vec(), n, points })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Grid average of nodal values.
    pub fn mean(&self, v: &[f64]) -> f64 {
        pairwise_sum(v) / v.len() as f64
    }

    pub fn sample(&self, f: impl Fn(&[f64]) -> f64) -> Vec<f64> {
        self.points.iter().map(|x| f(x)).collect()
    }

    /// Discrete Fourier projection of nodal values onto the given canonical
    /// frequencies (plus the mean).
    pub fn project(&self, v: &[f64], freqs: &[Freq]) -> TrigPoly {
        let mut t = TrigPoly::constant(self.mean(v));
        for k in freqs {
            if k.iter().all(|&c| c == 0) {
                continue;
            }
            // Nyquist modes have no sine part on the grid and a doubled cosine weight.
            let nyquist = self.active.iter().all(|&a| (2 * k[a].unsigned_abs() as usize).is_multiple_of(self.n));
            let w = if nyquist { 1.0 } else { 2.0 };
            let c: Vec<f64> = self.points.iter().zip(v).map(|(x, f)| f * phase(k, x).cos()).collect();
            let s: Vec<f64> = self.points.iter().zip(v).map(|(x, f)| f * phase(k, x).sin()).collect();
            let sin = if nyquist { 0.0 } else { w * self.mean(&s) };
            t.add_mode(k, w * self.mean(&c), sin);
        }
        t
    }
}

/// Sum with error growth `O(log n)`, independent of any thread layout.
pub fn pairwise_sum(v: &[f64]) -> f64 {
    if v.len() <= 16 {
        return v.iter().sum();
    }
    let (a, b) = v.split_at(v.len() / 2);
    pairwise_sum(a) + pairwise_sum(b)
}

/// Canonical nonzero frequencies with support in `active` and `|k_i| ≤ kmax`,
/// in a fixed order.
pub fn frequency_box(active: &[usize], kmax: u32) -> Vec<Freq> {
    let side = 2 * kmax as i64 + 1;
    let total = side.pow(active.len() as u32);
    let mut out = Vec::new();
    for mut idx in 0..total {
        let mut k = [0i32; NVARS];
        for &a in active {
            k[a] = (idx % side - kmax as i64) as i32;
            idx /= side;
        }
        if k.iter().all(|&v| v == 0) {
            continue;
        }
        if canonical(&k).0 == k {
            out.push(k);
        }
    }
    out.sort();
    out
}

/// Union of supports of the factors.
pub fn joint_support(polys: &[&TrigPoly]) -> Vec<usize> {
    let mut s: Vec<usize> = polys.iter().flat_map(|p| p.support()).collect();
    s.sort();
    s.dedup();
    s
}

/// `∫ Π factors` over the torus, from a grid exact for the product's bandwidth.
pub fn integrate_torus(factors: &[&TrigPoly]) -> f64 {
    let active = joint_support(factors);
    let n = factors.iter().map(|p| p.max_freq() as usize).sum::<usize>() + 1;
    let grid = Grid::new(&active, n).expect("product grid within limits");
    let v = grid.sample(|x| factors.iter().map(|p| p.eval(x)).product());
    grid.mean(&v)
}

/// Parses a coordinate name `x1_0`..`x2_7`.
pub fn coord_index(name: &str) -> Result<usize> {
    let b = name.as_bytes();
    if b.len() == 4 && b[0] == b'x' && (b[1] == b'1' || b[1] == b'2') && b[2] == b'_' && (b'0'..=b'7').contains(&b[3]) {
        Ok((b[1] - b'1') as usize * 8 + (b[3] - b'0') as usize)
    } else {
        Err(Error::Config(format!("unknown coordinate '{name}'")))
    }
}

/// Frequency vector with a single nonzero entry.
pub fn freq1(coord: usize, k: i32) -> Freq {
    let mut f = [0; NVARS];
    f[coord] = k;
    f
}
