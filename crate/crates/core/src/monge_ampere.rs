//! Galerkin–Newton solver for `det(G₀ + Hess_𝕆 φ) = e^f det G₀` on the flat
//! torus, with `φ` a trigonometric polynomial in a few active coordinates.
//!
//! The unknowns are the cosine and sine coefficients of the nonconstant modes
//! with `|k_i| ≤ K`. The equations are `∫ ψ_m R = 0` for the same modes, where
//! `R = det(G₀ + Hess φ) − A e^f det G₀` is sampled on a tensor grid fine
//! enough that `∫ ψ_m det(G₀ + Hess φ)` and the Jacobian are computed exactly.

use std::f64::consts::PI;
use std::time::Instant;

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::herm2::{trace_inv_times, HermF, HermMatrix2};
use crate::octonion::Octonion;
use crate::trig::{coord_index, frequency_box, joint_support, kappa_outer, Freq, Grid, TorusHermField, TrigPoly, FOUR_PI_SQ};

/// Default quadrature size: exact for `ψ_m · det(G₀ + Hess φ)` and for the
/// Jacobian entries when `φ` has `|k_i| ≤ k` and the potential of `G₀` has
/// `|k_i| ≤ kg`.
pub fn default_nodes(k: u32, kg: u32) -> usize {
    (2 * k + 3).max(3 * k + 2 * kg + 1) as usize
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Part {
    Cos,
    Sin,
}

/// Sampled basis and background field on the quadrature grid.
#[derive(Clone, Debug)]
pub struct Discretization {
    pub grid: Grid,
    pub max_freq: u32,
    pub g0: TorusHermField,
    freqs: Vec<Freq>,
    basis: Vec<(usize, Part)>,
    /// `psi[m][node]`
    psi: Vec<Vec<f64>>,
    /// `κκ*` of each basis function's frequency.
    outer: Vec<HermF>,
    g0_nodes: Vec<HermF>,
    det_g0: Vec<f64>,
}

impl Discretization {
    pub fn new(active: &[usize], max_freq: u32, g0: &TorusHermField, nodes: Option<usize>) -> Result<Self> {
        let mut active = active.to_vec();
        active.sort();
        active.dedup();
        if active.is_empty() || max_freq == 0 {
            return Err(Error::Config("the frequency set must be nonempty".into()));
        }
        if let Some(&i) = g0.support().iter().find(|i| !active.contains(i)) {
            return Err(Error::Config(format!("G0 potential depends on inactive coordinate {}", crate::poly::var_name(i))));
        }
        let n = nodes.unwrap_or_else(|| default_nodes(max_freq, g0.max_freq()));
        let grid = Grid::new(&active, n)?;
        let freqs = frequency_box(&active, max_freq);
        let mut basis = Vec::with_capacity(2 * freqs.len());
        for i in 0..freqs.len() {
            basis.push((i, Part::Cos));
            basis.push((i, Part::Sin));
        }
        let psi = basis
            .iter()
            .map(|&(i, part)| {
                let t = match part {
                    Part::Cos => TrigPoly::cos_mode(&freqs[i], 1.0),
                    Part::Sin => TrigPoly::sin_mode(&freqs[i], 1.0),
                };
                grid.sample(|x| t.eval(x))
            })
            .collect();
        let outer = basis.iter().map(|&(i, _)| kappa_outer(&freqs[i])).collect();
        let g0_nodes: Vec<HermF> = grid.points.iter().map(|x| g0.eval(x)).collect();
        for (idx, g) in g0_nodes.iter().enumerate() {
            if !g.is_positive_definite() {
                return Err(Error::NotPositiveDefinite(Some(format!("G0 at node {:?}", node_coords(&grid, idx)))));
            }
        }
        let det_g0 = g0_nodes.iter().map(|g| g.det()).collect();
        Ok(Discretization { grid, max_freq, g0: g0.clone(), freqs, basis, psi, outer, g0_nodes, det_g0 })
    }

    pub fn unknowns(&self) -> usize {
        self.basis.len()
    }

    pub fn frequencies(&self) -> &[Freq] {
        &self.freqs
    }

    pub fn sample(&self, t: &TrigPoly) -> Result<Vec<f64>> {
        self.check_support(t, "function")?;
        Ok(self.grid.sample(|x| t.eval(x)))
    }

    fn check_support(&self, t: &TrigPoly, what: &str) -> Result<()> {
        match t.support().into_iter().find(|i| !self.grid.active.contains(i)) {
            Some(i) => Err(Error::Config(format!("{what} depends on inactive coordinate {}", crate::poly::var_name(i)))),
            None => Ok(()),
        }
    }

    /// Coefficient vector of the nonconstant part of `t` in the active box.
    fn coeffs_of(&self, t: &TrigPoly) -> Result<Vec<f64>> {
        self.check_support(t, "initial guess")?;
        if t.max_freq() > self.max_freq {
            return Err(Error::Config("initial guess has frequencies outside the active box".into()));
        }
        Ok(self
            .basis
            .iter()
            .map(|&(i, part)| {
                let (c, s) = t.coeff(&self.freqs[i]);
                if part == Part::Cos {
                    c
                } else {
                    s
                }
            })
            .collect())
    }

    fn trig_of(&self, c: &[f64]) -> TrigPoly {
        let mut t = TrigPoly::zero();
        for (&(i, part), &v) in self.basis.iter().zip(c) {
            match part {
                Part::Cos => t.add_mode(&self.freqs[i], v, 0.0),
                Part::Sin => t.add_mode(&self.freqs[i], 0.0, v),
            }
        }
        t
    }

    /// `G₀ + Hess φ` at every node for coefficient vector `c`.
    fn metric(&self, c: &[f64]) -> Vec<HermF> {
        (0..self.grid.len())
            .map(|j| {
                let mut u = self.g0_nodes[j].clone();
                for (m, &cm) in c.iter().enumerate() {
                    if cm != 0.0 {
                        u = u.add(&self.outer[m].scale(&(-FOUR_PI_SQ * cm * self.psi[m][j])));
                    }
                }
                u
            })
            .collect()
    }

    fn min_margin(u: &[HermF]) -> (f64, usize) {
        u.iter()
            .enumerate()
            .map(|(j, m)| (m.sylvester_margin(), j))
            .fold((f64::INFINITY, 0), |a, b| if b.0 < a.0 { b } else { a })
    }

    /// Galerkin residual `(∫ ψ_m R)_m` and nodal `R`.
    fn residual(&self, u: &[HermF], rhs: &[f64]) -> (Vec<f64>, Vec<f64>) {
        let r: Vec<f64> = u.iter().zip(rhs).map(|(m, b)| m.det() - b).collect();
        let g = self
            .psi
            .iter()
            .map(|p| self.grid.mean(&p.iter().zip(&r).map(|(a, b)| a * b).collect::<Vec<_>>()))
            .collect();
        (g, r)
    }

    /// `J_mn = ∫ ψ_m · 2 D(U, Hess ψ_n)`.
    fn jacobian(&self, u: &[HermF]) -> DMatrix<f64> {
        let nb = self.unknowns();
        let nn = self.grid.len() as f64;
        let mut j = DMatrix::zeros(nb, nb);
        for (node, um) in u.iter().enumerate() {
            let d: Vec<f64> = self.outer.iter().map(|k| um.mixed_det(k)).collect();
            for n in 0..nb {
                let w = -2.0 * FOUR_PI_SQ * self.psi[n][node] * d[n] / nn;
                if w == 0.0 {
                    continue;
                }
                for m in 0..nb {
                    j[(m, n)] += self.psi[m][node] * w;
                }
            }
        }
        j
    }

    /// Symmetric Galerkin matrix of the linearization at `φ`.
    pub fn galerkin_matrix(&self, phi: &TrigPoly) -> Result<DMatrix<f64>> {
        let u = self.metric(&self.coeffs_of(phi)?);
        Ok(self.jacobian(&u))
    }

    /// `2 D(G₀ + Hess φ, Hess ψ) / det G₀` at the nodes.
    pub fn linearized_apply(&self, phi: &TrigPoly, psi: &TrigPoly) -> Result<Vec<f64>> {
        self.check_support(psi, "direction")?;
        let u = self.metric(&self.coeffs_of(phi)?);
        let (margin, at) = Self::min_margin(&u);
        if margin <= 0.0 {
            return Err(self.not_pd(at));
        }
        Ok(self
            .grid
            .points
            .iter()
            .zip(&u)
            .zip(&self.det_g0)
            .map(|((x, m), d)| 2.0 * m.mixed_det(&psi.hess(x)) / d)
            .collect())
    }

    fn not_pd(&self, node: usize) -> Error {
        Error::NotPositiveDefinite(Some(format!("G0 + Hess phi at node {:?}", node_coords(&self.grid, node))))
    }

    /// `A = ∫ det G₀ / ∫ e^f det G₀`.
    pub fn normalization_constant(&self, f: &[f64]) -> Result<f64> {
        self.check_nodal(f)?;
        let num = self.grid.mean(&self.det_g0);
        let den: Vec<f64> = f.iter().zip(&self.det_g0).map(|(v, d)| v.exp() * d).collect();
        Ok(num / self.grid.mean(&den))
    }

    fn check_nodal(&self, f: &[f64]) -> Result<()> {
        if f.len() != self.grid.len() {
            return Err(Error::Config(format!("expected {} nodal values, found {}", self.grid.len(), f.len())));
        }
        if f.iter().any(|v| !v.is_finite()) {
            return Err(Error::Config("nodal values must be finite".into()));
        }
        Ok(())
    }

    /// Nodal `f = log(det(G₀ + Hess φ*) / det G₀)` and its projection onto the box.
    pub fn manufacture(&self, phi_star: &TrigPoly) -> Result<Manufactured> {
        self.check_support(phi_star, "phi_star")?;
        let u: Vec<HermF> =
            self.grid.points.iter().zip(&self.g0_nodes).map(|(x, g)| g.add(&phi_star.hess(x))).collect();
        let (margin, at) = Self::min_margin(&u);
        if margin <= 0.0 {
            return Err(self.not_pd(at));
        }
        let f: Vec<f64> = u.iter().zip(&self.det_g0).map(|(m, d)| (m.det() / d).ln()).collect();
        let (projected, projection_residual) = self.project(&f);
        Ok(Manufactured { f_nodal: f, f_projected: projected, projection_residual })
    }

    /// Projection onto the active box and its sup-distance to the nodal data.
    pub fn project(&self, f: &[f64]) -> (TrigPoly, f64) {
        let p = self.grid.project(f, &self.freqs);
        let res = self.grid.points.iter().zip(f).map(|(x, v)| (p.eval(x) - v).abs()).fold(0.0, f64::max);
        (p, res)
    }

    /// Newton's method from `init` (default 0) for nodal data `f`.
    pub fn newton_solve(&self, f: &[f64], settings: &Settings, init: Option<&TrigPoly>) -> Result<SolveReport> {
        let start = Instant::now();
        self.check_nodal(f)?;
        let mut c = match init {
            Some(t) => self.coeffs_of(t)?,
            None => vec![0.0; self.unknowns()],
        };
        let steps = settings.continuation.max(1);
        let mut history = Vec::new();
        let mut iterations = 0;
        let mut a_const = 1.0;
        for s in 1..=steps {
            let fs: Vec<f64> = f.iter().map(|v| v * s as f64 / steps as f64).collect();
            a_const = self.normalization_constant(&fs)?;
            let rhs: Vec<f64> = fs.iter().zip(&self.det_g0).map(|(v, d)| a_const * v.exp() * d).collect();
            iterations += self.newton_loop(&mut c, &rhs, settings, &mut history)?;
        }
        let rhs: Vec<f64> = f.iter().zip(&self.det_g0).map(|(v, d)| a_const * v.exp() * d).collect();
        let u = self.metric(&c);
        let (g, r) = self.residual(&u, &rhs);
        let mut phi = self.trig_of(&c);
        // ∫ φ det G₀ = 0
        let phi_nodes = self.grid.sample(|x| phi.eval(x));
        let w: Vec<f64> = phi_nodes.iter().zip(&self.det_g0).map(|(a, b)| a * b).collect();
        let shift = -self.grid.mean(&w) / self.grid.mean(&self.det_g0);
        phi = phi.add(&TrigPoly::constant(shift));
        let (_, projection_residual) = self.project(f);
        let diag = diagnostics(&phi, &self.g0, &self.g0.constant, 2 * self.grid.n)?;
        Ok(SolveReport {
            solution: phi,
            residual: sup(&g),
            nodal_residual: sup(&r),
            iterations,
            normalization_constant: a_const,
            sup_phi: diag.sup_phi,
            sup_laplacian: diag.sup_laplacian,
            min_margin: Self::min_margin(&u).0,
            projection_residual,
            residual_history: history,
            nodes_per_dim: self.grid.n,
            unknowns: self.unknowns(),
            wall_time: start.elapsed().as_secs_f64(),
        })
    }

    fn newton_loop(&self, c: &mut Vec<f64>, rhs: &[f64], st: &Settings, history: &mut Vec<f64>) -> Result<usize> {
        let mut u = self.metric(c);
        let (margin, at) = Self::min_margin(&u);
        if margin < st.margin {
            return Err(self.not_pd(at));
        }
        let (mut g, _) = self.residual(&u, rhs);
        let mut res = sup(&g);
        history.push(res);
        let mut it = 0;
        while res >= st.tol {
            if it == st.max_iter {
                return Err(Error::MaxIterations { iterations: it, residual: res });
            }
            it += 1;
            let delta = solve_newton(&self.jacobian(&u), &g)?;
            let mut t = 1.0;
            let mut accepted = false;
            let mut pd_failure = None;
            for _ in 0..=st.damping {
                let cand: Vec<f64> = c.iter().zip(&delta).map(|(a, d)| a - t * d).collect();
                let cu = self.metric(&cand);
                let (margin, at) = Self::min_margin(&cu);
                if margin >= st.margin {
                    let (cg, _) = self.residual(&cu, rhs);
                    let cres = sup(&cg);
                    if cres < res {
                        *c = cand;
                        u = cu;
                        g = cg;
                        res = cres;
                        accepted = true;
                        break;
                    }
                } else {
                    pd_failure = Some(at);
                }
                t *= 0.5;
            }
            if !accepted {
                return Err(match pd_failure {
                    Some(at) => self.not_pd(at),
                    None => Error::MaxIterations { iterations: it, residual: res },
                });
            }
            history.push(res);
        }
        Ok(it)
    }
}

fn solve_newton(j: &DMatrix<f64>, g: &[f64]) -> Result<Vec<f64>> {
    let n = j.nrows();
    let lu = j.clone().lu();
    let inv = lu.try_inverse();
    let cond = match &inv {
        Some(inv) => norm1(j) * norm1(inv),
        None => f64::INFINITY,
    };
    if !cond.is_finite() || cond > 1e14 {
        return Err(Error::SingularNewtonSystem { condition: cond });
    }
    let rhs = DVector::from_row_slice(g);
    let x = j.clone().lu().solve(&rhs).ok_or(Error::SingularNewtonSystem { condition: cond })?;
    Ok((0..n).map(|i| x[i]).collect())
}

fn norm1(m: &DMatrix<f64>) -> f64 {
    (0..m.ncols()).map(|c| m.column(c).iter().map(|v| v.abs()).sum::<f64>()).fold(0.0, f64::max)
}

fn sup(v: &[f64]) -> f64 {
    v.iter().map(|x| x.abs()).fold(0.0, f64::max)
}

fn node_coords(grid: &Grid, idx: usize) -> Vec<f64> {
    grid.active.iter().map(|&a| grid.points[idx][a]).collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct Manufactured {
    pub f_nodal: Vec<f64>,
    pub f_projected: TrigPoly,
    pub projection_residual: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Settings {
    /// Tolerance on the largest Galerkin residual.
    pub tol: f64,
    pub max_iter: usize,
    /// Maximal number of step halvings.
    pub damping: u32,
    /// Required Sylvester margin of every accepted iterate.
    pub margin: f64,
    /// Number of linear continuation steps in `f`.
    pub continuation: usize,
}

impl Default for Settings {
    fn default() -> Self {
        Settings { tol: 1e-10, max_iter: 30, damping: 20, margin: 1e-8, continuation: 1 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SolveReport {
    pub solution: TrigPoly,
    /// Largest Galerkin residual `|∫ ψ_m R|`.
    pub residual: f64,
    /// Largest `|R|` over the nodes.
    pub nodal_residual: f64,
    pub iterations: usize,
    pub normalization_constant: f64,
    pub sup_phi: f64,
    pub sup_laplacian: f64,
    pub min_margin: f64,
    pub projection_residual: f64,
    pub residual_history: Vec<f64>,
    pub nodes_per_dim: usize,
    pub unknowns: usize,
    #[serde(skip)]
    pub wall_time: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Diagnostics {
    pub sup_phi: f64,
    pub sup_laplacian: f64,
    pub min_margin: f64,
}

/// `sup|φ|`, `sup|tr(G₀₀⁻¹ Hess φ)|` and the smallest Sylvester margin of
/// `G₀ + Hess φ`, over a uniform grid with `n` points per coordinate.
pub fn diagnostics(phi: &TrigPoly, g0: &TorusHermField, g00: &HermF, n: usize) -> Result<Diagnostics> {
    if !g00.is_positive_definite() {
        return Err(Error::NotPositiveDefinite(Some("G00".into())));
    }
    let pot = g0.potential.clone().unwrap_or_default();
    let grid = Grid::new(&joint_support(&[phi, &pot]), n)?;
    let mut d = Diagnostics { sup_phi: 0.0, sup_laplacian: 0.0, min_margin: f64::INFINITY };
    for x in &grid.points {
        let h = phi.hess(x);
        d.sup_phi = d.sup_phi.max(phi.eval(x).abs());
        d.sup_laplacian = d.sup_laplacian.max(trace_inv_times(g00, &h)?.abs());
        d.min_margin = d.min_margin.min(g0.eval(x).add(&h).sylvester_margin());
    }
    Ok(d)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IbpDefect {
    /// `∫ f D(Hess v, G₀)`
    pub lhs: f64,
    /// `∫ v D(Hess f, G₀)`
    pub rhs: f64,
    /// `|lhs − rhs|` over the sum of the `L¹` norms of both integrands.
    pub relative: f64,
}

pub fn ibp_defect(f: &TrigPoly, v: &TrigPoly, g0: &TorusHermField) -> Result<IbpDefect> {
    let pot = g0.potential.clone().unwrap_or_default();
    let active = joint_support(&[f, v, &pot]);
    let n = (f.max_freq() + v.max_freq() + pot.max_freq()) as usize + 1;
    let grid = Grid::new(&active, n)?;
    let mut l = Vec::with_capacity(grid.len());
    let mut r = Vec::with_capacity(grid.len());
    for x in &grid.points {
        let g = g0.eval(x);
        l.push(f.eval(x) * v.hess(x).mixed_det(&g));
        r.push(v.eval(x) * f.hess(x).mixed_det(&g));
    }
    let lhs = grid.mean(&l);
    let rhs = grid.mean(&r);
    let scale = grid.mean(&l.iter().map(|a| a.abs()).collect::<Vec<_>>())
        + grid.mean(&r.iter().map(|a| a.abs()).collect::<Vec<_>>());
    let relative = if scale > 0.0 { (lhs - rhs).abs() / scale } else { 0.0 };
    Ok(IbpDefect { lhs, rhs, relative })
}

/// Hermitian matrix in JSON: `{a, b, q: [8]}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HermJson {
    pub a: f64,
    pub b: f64,
    #[serde(default)]
    pub q: [f64; 8],
}

impl From<&HermJson> for HermF {
    fn from(h: &HermJson) -> Self {
        HermMatrix2::new(h.a, h.b, Octonion::new(h.q))
    }
}

impl Default for HermJson {
    fn default() -> Self {
        HermJson { a: 1.0, b: 1.0, q: [0.0; 8] }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct G0Json {
    #[serde(default)]
    pub constant: HermJson,
    #[serde(default)]
    pub potential: Option<TrigPoly>,
}

impl G0Json {
    pub fn field(&self) -> TorusHermField {
        TorusHermField { constant: (&self.constant).into(), potential: self.potential.clone() }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum FJson {
    Trigpoly(TrigPoly),
    Nodal(Vec<f64>),
    /// Path to a file of whitespace-separated nodal values, relative to the config.
    NodalFile(String),
}

fn d_tol() -> f64 {
    1e-10
}
fn d_max_iter() -> usize {
    30
}
fn d_damping() -> u32 {
    20
}
fn d_margin() -> f64 {
    1e-8
}
fn d_cont() -> usize {
    1
}

/// Solver configuration document.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MaConfig {
    pub active_coords: Vec<String>,
    pub max_freq: u32,
    #[serde(default)]
    pub g0: G0Json,
    #[serde(default)]
    pub f: Option<FJson>,
    /// Exact solution used by `manufacture`.
    #[serde(default)]
    pub phi_star: Option<TrigPoly>,
    /// Potential examined by `diagnose`.
    #[serde(default)]
    pub phi: Option<TrigPoly>,
    #[serde(default)]
    pub initial_guess: Option<TrigPoly>,
    #[serde(default = "d_tol")]
    pub tol: f64,
    #[serde(default = "d_max_iter")]
    pub max_iter: usize,
    #[serde(default = "d_damping")]
    pub damping: u32,
    #[serde(default)]
    pub nodes: Option<usize>,
    #[serde(default = "d_margin")]
    pub margin: f64,
    #[serde(default = "d_cont")]
    pub continuation: usize,
}

impl MaConfig {
    pub fn active(&self) -> Result<Vec<usize>> {
        self.active_coords.iter().map(|s| coord_index(s)).collect()
    }

    pub fn settings(&self) -> Settings {
        Settings {
            tol: self.tol,
            max_iter: self.max_iter,
            damping: self.damping,
            margin: self.margin,
            continuation: self.continuation,
        }
    }

    pub fn discretization(&self) -> Result<Discretization> {
        Discretization::new(&self.active()?, self.max_freq, &self.g0.field(), self.nodes)
    }

    /// Nodal values of `f`; `nodal_file` must already have been resolved by the caller.
    pub fn f_nodal(&self, disc: &Discretization) -> Result<Vec<f64>> {
        match &self.f {
            None => Ok(vec![0.0; disc.grid.len()]),
            Some(FJson::Trigpoly(t)) => disc.sample(t),
            Some(FJson::Nodal(v)) => Ok(v.clone()),
            Some(FJson::NodalFile(p)) => Err(Error::Config(format!("unresolved nodal file '{p}'"))),
        }
    }
}

/// `φ = ε cos(2π x_c)` shorthand.
pub fn cos_potential(coords: &[usize], eps: f64) -> TrigPoly {
    let mut k = [0; crate::poly::NVARS];
    for &c in coords {
        k[c] = 1;
    }
    TrigPoly::cos_mode(&k, eps)
}

/// `Δφ` of `ε cos(2π x)` has sup `4π²ε`.
pub fn laplacian_bound_of_cos(eps: f64) -> f64 {
    4.0 * PI * PI * eps.abs()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trig::freq1;

    fn disc1() -> Discretization {
        Discretization::new(&[0], 3, &TorusHermField::identity(), None).unwrap()
    }

    #[test]
    fn manufactured_values() {
        let d = disc1();
        let m = d.manufacture(&TrigPoly::zero()).unwrap();
        assert!(m.f_nodal.iter().all(|v| *v == 0.0));
        let phi = cos_potential(&[0], 0.01);
        let m = d.manufacture(&phi).unwrap();
        for (x, f) in d.grid.points.iter().zip(&m.f_nodal) {
            let want = (1.0 - 0.04 * PI * PI * (2.0 * PI * x[0]).cos()).ln();
            assert!((f - want).abs() < 1e-14);
        }
        assert!(matches!(d.manufacture(&cos_potential(&[0], 0.1)), Err(Error::NotPositiveDefinite(_))));
    }

    #[test]
    fn normalization_examples() {
        let d = disc1();
        let zero = vec![0.0; d.grid.len()];
        assert_eq!(d.normalization_constant(&zero).unwrap(), 1.0);
        let c = vec![0.7; d.grid.len()];
        assert!((d.normalization_constant(&c).unwrap() - (-0.7f64).exp()).abs() < 1e-12);
    }

    #[test]
    fn linearization_examples() {
        let d = disc1();
        let psi = TrigPoly::cos_mode(&freq1(0, 1), 1.0);
        let v = d.linearized_apply(&TrigPoly::zero(), &psi).unwrap();
        for (x, val) in d.grid.points.iter().zip(&v) {
            assert!((val + FOUR_PI_SQ * (2.0 * PI * x[0]).cos()).abs() < 1e-10);
        }
        let v = d.linearized_apply(&TrigPoly::zero(), &TrigPoly::constant(2.0)).unwrap();
        assert!(v.iter().all(|x| *x == 0.0));
    }

    #[test]
    fn zero_forcing_gives_zero() {
        let d = disc1();
        let r = d.newton_solve(&vec![0.0; d.grid.len()], &Settings::default(), None).unwrap();
        assert_eq!(r.iterations, 0);
        assert!(r.solution.is_zero());
    }

    #[test]
    fn manufactured_solve_1d() {
        let d = disc1();
        let phi = cos_potential(&[0], 0.01);
        let m = d.manufacture(&phi).unwrap();
        let r = d.newton_solve(&m.f_nodal, &Settings::default(), None).unwrap();
        assert!(r.solution.max_coeff_diff(&phi) < 1e-10, "{r:?}");
        assert!(r.iterations <= 10);
    }

    #[test]
    fn diagnostics_examples() {
        let g = TorusHermField::identity();
        let d = diagnostics(&TrigPoly::zero(), &g, &HermF::identity(), 8).unwrap();
        assert_eq!((d.sup_phi, d.sup_laplacian), (0.0, 0.0));
        let d = diagnostics(&cos_potential(&[0], 0.01), &g, &HermF::identity(), 8).unwrap();
        assert!((d.sup_laplacian - laplacian_bound_of_cos(0.01)).abs() < 1e-12);
    }

    #[test]
    fn ibp_orthogonal_modes() {
        let f = TrigPoly::cos_mode(&freq1(0, 1), 1.0);
        let v = TrigPoly::cos_mode(&freq1(8, 1), 1.0);
        let r = ibp_defect(&f, &v, &TorusHermField::identity()).unwrap();
        assert!(r.lhs.abs() < 1e-14 && r.rhs.abs() < 1e-14);
    }

    #[test]
    fn config_defaults() {
        let c: MaConfig = serde_json::from_str(r#"{"active_coords": ["x1_0"], "max_freq": 3}"#).unwrap();
        assert_eq!(c.settings(), Settings::default());
        assert!(serde_json::from_str::<MaConfig>(r#"{"active_coords": [], "max_freq": 3, "bogus": 1}"#).is_err());
    }
}
