//! Gröbner bases of submodules of `A^r`, `A = ℚ[x1_0..x2_7]`, and syzygy
//! kernels of a row of polynomials.
//!
//! Module monomials are `m·e_c`. A [`ModuleOrder`] optionally singles out one
//! elimination component that dominates every other; the remaining components
//! are compared by weighted degree `deg m + w_c`, then grevlex on `m`, then
//! position (lower index first).

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::octonion::{cayley_dickson_mul, to_cd_frame, Quaternion};
use crate::poly::{parse_poly_at, var_index, Mono, Poly16};
use crate::scalar::Rational;

/// Element of the free module `A^r`.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct ModVec(pub Vec<Poly16>);

impl ModVec {
    pub fn zero(rank: usize) -> Self {
        ModVec(vec![Poly16::zero(); rank])
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|p| p.is_zero())
    }

    pub fn scale(&self, s: &Rational) -> Self {
        ModVec(self.0.iter().map(|p| p.scale(s)).collect())
    }

    pub fn add(&self, o: &Self) -> Self {
        ModVec(self.0.iter().zip(&o.0).map(|(a, b)| a.add(b)).collect())
    }

    /// `Σ_j v_j P_j`.
    pub fn dot(&self, row: &[Poly16]) -> Poly16 {
        assert_eq!(self.rank(), row.len(), "rank mismatch");
        self.0.iter().zip(row).fold(Poly16::zero(), |acc, (a, b)| acc.add(&a.mul(b)))
    }

    /// Largest total degree over all entries, `None` for the zero vector.
    pub fn degree(&self) -> Option<u32> {
        self.0.iter().filter_map(|p| p.degree()).max()
    }

    /// `Some(c)` when `self = c · o` for a nonzero rational `c`.
    pub fn ratio_to(&self, o: &Self) -> Option<Rational> {
        let mut ratio: Option<Rational> = None;
        for (a, b) in self.0.iter().zip(&o.0) {
            if a.len() != b.len() {
                return None;
            }
            for ((ma, ca), (mb, cb)) in a.terms().zip(b.terms()) {
                if ma != mb {
                    return None;
                }
                let r = ca / cb;
                match &ratio {
                    None => ratio = Some(r),
                    Some(q) if *q == r => {}
                    Some(_) => return None,
                }
            }
        }
        ratio
    }
}

impl fmt::Display for ModVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

/// One `ModVec` per non-empty line, entries comma separated. Lines starting
/// with `#` are comments.
pub fn parse_modvecs(text: &str) -> Result<Vec<ModVec>> {
    let mut out: Vec<ModVec> = Vec::new();
    for (ln, line) in text.lines().enumerate() {
        let t = line.trim_start();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        let mut entries = Vec::new();
        let mut col = 1;
        for part in line.split(',') {
            let lead = part.len() - part.trim_start().len();
            entries.push(parse_poly_at(part.trim(), ln + 1, col + lead)?);
            col += part.len() + 1;
        }
        if let Some(first) = out.first() {
            if first.rank() != entries.len() {
                return Err(Error::parse(
                    ln + 1,
                    1,
                    format!("expected {} entries, found {}", first.rank(), entries.len()),
                ));
            }
        }
        out.push(ModVec(entries));
    }
    Ok(out)
}

pub fn format_modvecs(v: &[ModVec]) -> String {
    v.iter().map(|m| format!("{m}\n")).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleOrder {
    /// Degree shift of each component.
    pub weights: Vec<u32>,
    /// Component ranked above all others (elimination).
    pub elim: Option<usize>,
}

impl ModuleOrder {
    pub fn plain(rank: usize) -> Self {
        ModuleOrder { weights: vec![0; rank], elim: None }
    }

    pub fn rank(&self) -> usize {
        self.weights.len()
    }

    fn term(&self, mono: Mono, comp: usize) -> MTerm {
        MTerm {
            elim: self.elim == Some(comp),
            wdeg: mono.degree() + self.weights[comp],
            mono,
            comp: comp as u16,
        }
    }

    fn poly(&self, v: &ModVec) -> MPoly {
        let mut m = MPoly::new();
        for (c, p) in v.0.iter().enumerate() {
            for (mono, coef) in p.terms() {
                m.insert(self.term(*mono, c), coef.clone());
            }
        }
        m
    }

    fn modvec(&self, p: &MPoly) -> ModVec {
        let mut v = ModVec::zero(self.rank());
        for (t, c) in p {
            v.0[t.comp as usize].add_term(t.mono, c.clone());
        }
        v
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
struct MTerm {
    elim: bool,
    wdeg: u32,
    mono: Mono,
    comp: u16,
}

impl MTerm {
    fn times(&self, m: &Mono) -> MTerm {
        MTerm { elim: self.elim, wdeg: self.wdeg + m.degree(), mono: self.mono.mul(m), comp: self.comp }
    }

    fn divides(&self, o: &MTerm) -> bool {
        self.comp == o.comp && self.mono.divides(&o.mono)
    }

    fn lcm(&self, o: &MTerm) -> MTerm {
        let mono = self.mono.lcm(&o.mono);
        MTerm { elim: self.elim, wdeg: self.wdeg + mono.degree() - self.mono.degree(), mono, comp: self.comp }
    }
}

impl Ord for MTerm {
    fn cmp(&self, o: &Self) -> Ordering {
        self.elim
            .cmp(&o.elim)
            .then(self.wdeg.cmp(&o.wdeg))
            .then_with(|| self.mono.cmp(&o.mono))
            .then(o.comp.cmp(&self.comp))
    }
}

impl PartialOrd for MTerm {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

/// Terms stored ascending; the leading term is the last entry.
type MPoly = BTreeMap<MTerm, Rational>;

fn lead(p: &MPoly) -> (&MTerm, &Rational) {
    p.iter().next_back().expect("nonzero module element")
}

fn make_monic(p: &mut MPoly) {
    let lc = lead(p).1.clone();
    if !lc.is_one() {
        for c in p.values_mut() {
            *c = &*c / &lc;
        }
    }
}

/// `p -= c · m · g`, skipping the leading term of `g` when `skip_lead`.
fn sub_mul(p: &mut MPoly, c: &Rational, m: &Mono, g: &MPoly, skip_lead: bool) {
    let n = if skip_lead { g.len() - 1 } else { g.len() };
    for (t, gc) in g.iter().take(n) {
        let key = t.times(m);
        let d = c * gc;
        match p.get_mut(&key) {
            Some(v) => {
                *v -= d;
                if v.is_zero() {
                    p.remove(&key);
                }
            }
            None => {
                p.insert(key, -d);
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GbStats {
    pub pairs_reduced: usize,
    pub pairs_skipped: usize,
    pub zero_reductions: usize,
}

/// Reduced Gröbner basis of a submodule; elements are monic.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    order: ModuleOrder,
    elems: Vec<MPoly>,
    by_comp: Vec<Vec<usize>>,
    pub stats: GbStats,
}

impl GroebnerBasis {
    pub fn order(&self) -> &ModuleOrder {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn elements(&self) -> Vec<ModVec> {
        self.elems.iter().map(|p| self.order.modvec(p)).collect()
    }

    fn index(order: &ModuleOrder, elems: &[MPoly]) -> Vec<Vec<usize>> {
        let mut by_comp = vec![Vec::new(); order.rank()];
        for (i, g) in elems.iter().enumerate() {
            by_comp[lead(g).0.comp as usize].push(i);
        }
        by_comp
    }

    fn reduce(&self, p: MPoly) -> MPoly {
        reduce_full(p, &self.elems, &self.by_comp)
    }

    pub fn normal_form(&self, v: &ModVec) -> ModVec {
        assert_eq!(v.rank(), self.order.rank(), "rank mismatch");
        self.order.modvec(&self.reduce(self.order.poly(v)))
    }

    pub fn is_member(&self, v: &ModVec) -> bool {
        self.normal_form(v).is_zero()
    }

    /// Every S-pair of the basis reduces to zero.
    pub fn satisfies_buchberger_criterion(&self) -> bool {
        for i in 0..self.elems.len() {
            for j in i + 1..self.elems.len() {
                let (ti, _) = lead(&self.elems[i]);
                let (tj, _) = lead(&self.elems[j]);
                if ti.comp != tj.comp {
                    continue;
                }
                if !self.reduce(spoly(&self.elems[i], &self.elems[j])).is_empty() {
                    return false;
                }
            }
        }
        true
    }
}

fn find_reducer(t: &MTerm, g: &[MPoly], by_comp: &[Vec<usize>]) -> Option<usize> {
    by_comp[t.comp as usize].iter().copied().find(|&i| lead(&g[i]).0.divides(t))
}

fn reduce_full(mut p: MPoly, g: &[MPoly], by_comp: &[Vec<usize>]) -> MPoly {
    let mut rem = MPoly::new();
    while let Some((t, c)) = p.pop_last() {
        match find_reducer(&t, g, by_comp) {
            Some(i) => {
                let (lt, lc) = lead(&g[i]);
                let q = lt.mono.quotient_of(&t.mono);
                let coef = if lc.is_one() { c } else { &c / lc };
                sub_mul(&mut p, &coef, &q, &g[i], true);
            }
            None => {
                rem.insert(t, c);
            }
        }
    }
    rem
}

fn spoly(f: &MPoly, g: &MPoly) -> MPoly {
    let (tf, cf) = lead(f);
    let (tg, cg) = lead(g);
    let l = tf.lcm(tg);
    let mf = tf.mono.quotient_of(&l.mono);
    let mg = tg.mono.quotient_of(&l.mono);
    let mut out = MPoly::new();
    sub_mul(&mut out, &(-(Rational::one() / cf)), &mf, f, true);
    sub_mul(&mut out, &(Rational::one() / cg), &mg, g, true);
    out
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: MTerm,
}

fn pair_key(p: &Pair) -> (u32, MTerm, usize, usize) {
    (p.lcm.wdeg, p.lcm, p.j, p.i)
}

/// Buchberger's algorithm with the normal selection strategy and the chain
/// criterion (Gebauer–Möller update).
///
/// Buchberger's coprime-leading-monomial criterion is not used: for modules it
/// only applies when both leading terms sit in different components, where no
/// pair is formed anyway.
pub fn groebner_module(gens: &[ModVec], order: &ModuleOrder) -> GroebnerBasis {
    let mut g: Vec<MPoly> = Vec::new();
    let mut by_comp: Vec<Vec<usize>> = vec![Vec::new(); order.rank()];
    let mut pairs: Vec<Pair> = Vec::new();
    let mut stats = GbStats::default();

    let mut inputs: Vec<MPoly> = gens.iter().map(|v| order.poly(v)).filter(|p| !p.is_empty()).collect();
    inputs.sort_by(|a, b| lead(a).0.cmp(lead(b).0));
    for p in inputs {
        let mut r = reduce_full(p, &g, &by_comp);
        if r.is_empty() {
            stats.zero_reductions += 1;
            continue;
        }
        make_monic(&mut r);
        add_element(&mut g, &mut by_comp, &mut pairs, r, &mut stats);
    }

    while !pairs.is_empty() {
        let (best, _) = pairs.iter().enumerate().min_by_key(|(_, p)| pair_key(p)).unwrap();
        let pr = pairs.swap_remove(best);
        stats.pairs_reduced += 1;
        let mut r = reduce_full(spoly(&g[pr.i], &g[pr.j]), &g, &by_comp);
        if r.is_empty() {
            stats.zero_reductions += 1;
            continue;
        }
        make_monic(&mut r);
        add_element(&mut g, &mut by_comp, &mut pairs, r, &mut stats);
    }

    let elems = interreduce(order, g);
    let by_comp = GroebnerBasis::index(order, &elems);
    GroebnerBasis { order: order.clone(), elems, by_comp, stats }
}

fn add_element(
    g: &mut Vec<MPoly>,
    by_comp: &mut [Vec<usize>],
    pairs: &mut Vec<Pair>,
    h: MPoly,
    stats: &mut GbStats,
) {
    let t = g.len();
    let th = *lead(&h).0;
    let comp = th.comp as usize;

    // Old pairs whose lcm is divisible by LT(h) without sharing it with the new pairs.
    let before = pairs.len();
    pairs.retain(|p| {
        let keep = !(th.divides(&p.lcm)
            && lead(&g[p.i]).0.lcm(&th) != p.lcm
            && lead(&g[p.j]).0.lcm(&th) != p.lcm);
        keep
    });
    stats.pairs_skipped += before - pairs.len();

    let mut new: Vec<Pair> = by_comp[comp]
        .iter()
        .map(|&i| Pair { i, j: t, lcm: lead(&g[i]).0.lcm(&th) })
        .collect();
    // Drop a new pair whose lcm is a proper multiple of another new pair's lcm;
    // among equal lcms keep the first.
    let n = new.len();
    let mut keep = vec![true; n];
    for a in 0..n {
        for b in 0..n {
            if a == b || !keep[b] {
                continue;
            }
            let (la, lb) = (&new[a].lcm, &new[b].lcm);
            if lb.divides(la) && (la != lb || b < a) {
                keep[a] = false;
                break;
            }
        }
    }
    let mut k = 0;
    new.retain(|_| {
        k += 1;
        keep[k - 1]
    });
    stats.pairs_skipped += n - new.len();
    pairs.extend(new);
    by_comp[comp].push(t);
    g.push(h);
}

fn interreduce(order: &ModuleOrder, g: Vec<MPoly>) -> Vec<MPoly> {
    // Minimal basis: drop elements whose leading term is divisible by another's.
    let mut idx: Vec<usize> = (0..g.len()).collect();
    idx.sort_by(|&a, &b| lead(&g[a]).0.cmp(lead(&g[b]).0));
    let mut minimal: Vec<MPoly> = Vec::new();
    for i in idx {
        let ti = lead(&g[i]).0;
        if !minimal.iter().any(|m| lead(m).0.divides(ti)) {
            minimal.retain(|m| !ti.divides(lead(m).0));
            minimal.push(g[i].clone());
        }
    }
    let by_comp = GroebnerBasis::index(order, &minimal);
    let mut out = Vec::with_capacity(minimal.len());
    for (i, p) in minimal.iter().enumerate() {
        let mut p = p.clone();
        let (lt, lc) = p.pop_last().unwrap();
        // Tail reduction against the others; leading terms are pairwise non-divisible.
        let others: Vec<Vec<usize>> =
            by_comp.iter().map(|v| v.iter().copied().filter(|&j| j != i).collect()).collect();
        let mut tail = reduce_full(p, &minimal, &others);
        tail.insert(lt, lc);
        make_monic(&mut tail);
        out.push(tail);
    }
    out.sort_by(|a, b| lead(a).0.cmp(lead(b).0));
    out
}

/// Generators of the syzygy module of a row, with the basis they came from.
#[derive(Clone, Debug)]
pub struct SyzygyBasis {
    pub generators: Vec<ModVec>,
    /// Kernel elements of the elimination basis before minimalization.
    pub kernel_gb: Vec<ModVec>,
    pub order: ModuleOrder,
    pub stats: GbStats,
}

/// Syzygies `{Q : Σ Q_j P_j = 0}` of a row of homogeneous or arbitrary
/// polynomials.
///
/// The submodule of `A^{1+J}` spanned by `(P_j, e_j)` is reduced under an order
/// in which component 0 dominates; basis elements without a component-0 part
/// generate the kernel. Weights `deg P_j` make homogeneous rows homogeneous.
pub fn syzygy_kernel(row: &[Poly16]) -> SyzygyBasis {
    let j = row.len();
    assert!(j >= 1, "empty row");
    let mut weights = vec![0u32];
    weights.extend(row.iter().map(|p| p.degree().unwrap_or(0)));
    let order = ModuleOrder { weights, elim: Some(0) };
    let gens: Vec<ModVec> = (0..j)
        .map(|k| {
            let mut v = ModVec::zero(j + 1);
            v.0[0] = row[k].clone();
            v.0[k + 1] = Poly16::from_i64(1);
            v
        })
        .collect();
    let gb = groebner_module(&gens, &order);
    let kernel_gb: Vec<ModVec> = gb
        .elements()
        .into_iter()
        .filter(|v| v.0[0].is_zero())
        .map(|v| ModVec(v.0[1..].to_vec()))
        .collect();
    let sub_order = ModuleOrder { weights: order.weights[1..].to_vec(), elim: None };
    let generators = minimalize(&kernel_gb, &sub_order);
    SyzygyBasis { generators, kernel_gb, order, stats: gb.stats }
}

fn lead_wdeg(v: &ModVec, order: &ModuleOrder) -> u32 {
    v.0.iter()
        .enumerate()
        .filter_map(|(c, p)| p.degree().map(|d| d + order.weights[c]))
        .max()
        .unwrap_or(0)
}

/// A minimal generating subset of a graded module given by generators.
///
/// Candidates are processed by increasing weighted degree. Within one degree,
/// a candidate is kept iff its normal form modulo the lower-degree generators
/// is linearly independent of the normal forms already kept at that degree.
/// Exact only for homogeneous generators.
pub fn minimalize(gens: &[ModVec], order: &ModuleOrder) -> Vec<ModVec> {
    let mut cands: Vec<(u32, &ModVec)> =
        gens.iter().filter(|v| !v.is_zero()).map(|v| (lead_wdeg(v, order), v)).collect();
    cands.sort_by_key(|(d, _)| *d);
    let mut kept: Vec<ModVec> = Vec::new();
    let mut i = 0;
    while i < cands.len() {
        let d = cands[i].0;
        let level_end = cands[i..].iter().position(|(e, _)| *e != d).map_or(cands.len(), |p| i + p);
        let gb = if kept.is_empty() { None } else { Some(groebner_module(&kept, order)) };
        let mut echelon: BTreeMap<MTerm, MPoly> = BTreeMap::new();
        for &(_, v) in &cands[i..level_end] {
            let mut p = order.poly(v);
            if let Some(gb) = &gb {
                p = gb.reduce(p);
            }
            if let Some(mut r) = echelon_insert(&echelon, p) {
                make_monic(&mut r);
                echelon.insert(*lead(&r).0, r);
                kept.push(v.clone());
            }
        }
        i = level_end;
    }
    kept
}

/// Reduces `p` against an echelon set keyed by leading term; returns the
/// remainder if nonzero.
fn echelon_insert(echelon: &BTreeMap<MTerm, MPoly>, mut p: MPoly) -> Option<MPoly> {
    let mut rem = MPoly::new();
    while let Some((t, c)) = p.pop_last() {
        match echelon.get(&t) {
            Some(e) => sub_mul(&mut p, &c, &Mono::one(), e, true),
            None => {
                rem.insert(t, c);
            }
        }
    }
    if rem.is_empty() {
        None
    } else {
        Some(rem)
    }
}

fn common_rank(a: &[ModVec], b: &[ModVec]) -> usize {
    let r = a.iter().chain(b).map(|v| v.rank()).next().unwrap_or(0);
    assert!(a.iter().chain(b).all(|v| v.rank() == r), "rank mismatch");
    r
}

/// Whether `a` and `b` generate the same submodule (mutual membership).
pub fn modules_equal(a: &[ModVec], b: &[ModVec]) -> bool {
    let r = common_rank(a, b);
    let order = ModuleOrder::plain(r);
    let ga = groebner_module(a, &order);
    if !b.iter().all(|v| ga.is_member(v)) {
        return false;
    }
    let gb = groebner_module(b, &order);
    a.iter().all(|v| gb.is_member(v))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MembershipReport {
    /// For each generator of `b`, whether it lies in the module of `a`.
    pub b_in_a: Vec<bool>,
    pub a_in_b: Vec<bool>,
    /// For each generator of `b`, the index of a generator of `a` equal to it
    /// up to a nonzero rational factor.
    pub matched: Vec<Option<usize>>,
}

impl MembershipReport {
    pub fn equal(&self) -> bool {
        self.b_in_a.iter().all(|&x| x) && self.a_in_b.iter().all(|&x| x)
    }

    pub fn all_matched(&self) -> bool {
        self.matched.iter().all(|m| m.is_some())
    }
}

pub fn compare_modules(a: &[ModVec], b: &[ModVec], order: &ModuleOrder) -> MembershipReport {
    common_rank(a, b);
    let ga = groebner_module(a, order);
    let gb = groebner_module(b, order);
    MembershipReport {
        b_in_a: b.iter().map(|v| ga.is_member(v)).collect(),
        a_in_b: a.iter().map(|v| gb.is_member(v)).collect(),
        matched: b.iter().map(|v| a.iter().position(|w| v.ratio_to(w).is_some())).collect(),
    }
}

/// Product `f_a · conj(f_b)` of Cayley–Dickson basis units, in Cayley–Dickson
/// coordinates.
fn cd_unit_product(a: usize, b: usize) -> [Rational; 8] {
    let half = |k: usize| -> (Quaternion<Rational>, Quaternion<Rational>) {
        let mut x = [Rational::zero(), Rational::zero(), Rational::zero(), Rational::zero()];
        let mut y = x.clone();
        if k < 4 {
            x[k] = Rational::one();
        } else {
            y[k - 4] = Rational::one();
        }
        (Quaternion::new(x), Quaternion::new(y))
    };
    let (xa, ya) = half(a);
    let (xb, yb) = half(b);
    // conj(x + y l) = conj(x) − y l
    let yb = Quaternion::new(yb.c.map(|c| -c));
    let prod = cayley_dickson_mul(&xa, &ya, &xb.conj(), &yb);
    to_cd_frame(&prod).c
}

/// The ten quadrics `|x|², |y|²` and the eight components of `x·conj(y)`, in
/// Cayley–Dickson coordinates `x = x1`, `y = x2`.
pub fn ten_quadrics() -> Vec<Poly16> {
    let x = |p| Poly16::var(var_index(1, p));
    let y = |p| Poly16::var(var_index(2, p));
    let mut out = vec![
        (0..8).fold(Poly16::zero(), |acc, p| acc.add(&x(p).mul(&x(p)))),
        (0..8).fold(Poly16::zero(), |acc, p| acc.add(&y(p).mul(&y(p)))),
    ];
    let mut comps = vec![Poly16::zero(); 8];
    for a in 0..8 {
        for b in 0..8 {
            let prod = cd_unit_product(a, b);
            for (k, c) in prod.iter().enumerate() {
                if !c.is_zero() {
                    comps[k] = comps[k].add(&x(a).mul(&y(b)).scale(c));
                }
            }
        }
    }
    out.extend(comps);
    out
}

const QUADRIC_LITERALS: [&str; 8] = [
    "x1_0*x2_0 + x1_1*x2_1 + x1_2*x2_2 + x1_3*x2_3 + x1_4*x2_4 + x1_5*x2_5 + x1_6*x2_6 + x1_7*x2_7",
    "x1_1*x2_0 - x1_0*x2_1 + x1_3*x2_2 - x1_2*x2_3 + x1_5*x2_4 - x1_4*x2_5 - x1_7*x2_6 + x1_6*x2_7",
    "x1_2*x2_0 - x1_3*x2_1 - x1_0*x2_2 + x1_1*x2_3 + x1_6*x2_4 + x1_7*x2_5 - x1_4*x2_6 - x1_5*x2_7",
    "x1_3*x2_0 + x1_2*x2_1 - x1_1*x2_2 - x1_0*x2_3 + x1_7*x2_4 - x1_6*x2_5 + x1_5*x2_6 - x1_4*x2_7",
    "x1_4*x2_0 - x1_5*x2_1 - x1_6*x2_2 - x1_7*x2_3 - x1_0*x2_4 + x1_1*x2_5 + x1_2*x2_6 + x1_3*x2_7",
    "x1_5*x2_0 + x1_4*x2_1 - x1_7*x2_2 + x1_6*x2_3 - x1_1*x2_4 - x1_0*x2_5 - x1_3*x2_6 + x1_2*x2_7",
    "x1_6*x2_0 + x1_7*x2_1 + x1_4*x2_2 - x1_5*x2_3 - x1_2*x2_4 + x1_3*x2_5 - x1_0*x2_6 - x1_1*x2_7",
    "x1_7*x2_0 - x1_6*x2_1 + x1_5*x2_2 + x1_4*x2_3 - x1_3*x2_4 - x1_2*x2_5 + x1_1*x2_6 - x1_0*x2_7",
];

/// The ten quadrics as written out term by term.
pub fn ten_quadrics_literal() -> Vec<Poly16> {
    let mut out = vec![
        crate::poly::parse_poly("x1_0^2 + x1_1^2 + x1_2^2 + x1_3^2 + x1_4^2 + x1_5^2 + x1_6^2 + x1_7^2").unwrap(),
        crate::poly::parse_poly("x2_0^2 + x2_1^2 + x2_2^2 + x2_3^2 + x2_4^2 + x2_5^2 + x2_6^2 + x2_7^2").unwrap(),
    ];
    out.extend(QUADRIC_LITERALS.iter().map(|s| crate::poly::parse_poly(s).unwrap()));
    out
}

/// Entry `(row, col)` of the printed 10×16 kernel matrix: `0`, or a signed
/// variable `±x_p` (block 1) / `±y_p` (block 2), encoded as
/// `sign · (8·(block−1) + p + 1)`.
const PRINTED_KERNEL: [[i8; 16]; 10] = {
    const X: i8 = 1;
    const Y: i8 = 9;
    [
        [0, 0, 0, 0, 0, 0, 0, 0, -Y, Y + 1, Y + 2, Y + 3, Y + 4, Y + 5, Y + 6, Y + 7],
        [X, X + 1, X + 2, X + 3, X + 4, X + 5, X + 6, X + 7, 0, 0, 0, 0, 0, 0, 0, 0],
        [-Y, -(Y + 1), -(Y + 2), -(Y + 3), -(Y + 4), -(Y + 5), -(Y + 6), -(Y + 7), X, -(X + 1), -(X + 2), -(X + 3), -(X + 4), -(X + 5), -(X + 6), -(X + 7)],
        [Y + 1, -Y, Y + 3, -(Y + 2), Y + 5, -(Y + 4), -(Y + 7), Y + 6, X + 1, X, -(X + 3), X + 2, -(X + 5), X + 4, X + 7, -(X + 6)],
        [Y + 2, -(Y + 3), -Y, Y + 1, Y + 6, Y + 7, -(Y + 4), -(Y + 5), X + 2, X + 3, X, -(X + 1), -(X + 6), -(X + 7), X + 4, X + 5],
        [Y + 3, Y + 2, -(Y + 1), -Y, Y + 7, -(Y + 6), Y + 5, -(Y + 4), X + 3, -(X + 2), X + 1, X, -(X + 7), X + 6, -(X + 5), X + 4],
        [Y + 4, -(Y + 5), -(Y + 6), -(Y + 7), -Y, Y + 1, Y + 2, Y + 3, X + 4, X + 5, X + 6, X + 7, X, -(X + 1), -(X + 2), -(X + 3)],
        [Y + 5, Y + 4, -(Y + 7), Y + 6, -(Y + 1), -Y, -(Y + 3), Y + 2, X + 5, -(X + 4), X + 7, -(X + 6), X + 1, X, X + 3, -(X + 2)],
        [Y + 6, Y + 7, Y + 4, -(Y + 5), -(Y + 2), Y + 3, -Y, -(Y + 1), X + 6, -(X + 7), -(X + 4), X + 5, X + 2, -(X + 3), X, X + 1],
        [Y + 7, -(Y + 6), Y + 5, Y + 4, -(Y + 3), -(Y + 2), Y + 1, -Y, X + 7, X + 6, -(X + 5), -(X + 4), X + 3, X + 2, -(X + 1), X],
    ]
};

/// The 16 columns of the printed kernel matrix of the ten quadrics.
pub fn printed_kernel_matrix() -> Vec<ModVec> {
    (0..16)
        .map(|col| {
            ModVec(
                (0..10)
                    .map(|row| {
                        let e = PRINTED_KERNEL[row][col];
                        if e == 0 {
                            Poly16::zero()
                        } else {
                            let v = Poly16::var(e.unsigned_abs() as usize - 1);
                            if e > 0 {
                                v
                            } else {
                                v.neg()
                            }
                        }
                    })
                    .collect(),
            )
        })
        .collect()
}

/// `Σ_j Q_j P_j` for each generator.
pub fn syzygy_defects(gens: &[ModVec], row: &[Poly16]) -> Vec<Poly16> {
    gens.iter().map(|g| g.dot(row)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;
    use crate::scalar::rat;

    fn p(s: &str) -> Poly16 {
        parse_poly(s).unwrap()
    }

    #[test]
    fn quadrics_generated_match_literals() {
        assert_eq!(ten_quadrics(), ten_quadrics_literal());
    }

    #[test]
    fn printed_kernel_columns_are_syzygies() {
        let m = printed_kernel_matrix();
        assert_eq!(m.len(), 16);
        assert!(m[..8].iter().all(|c| c.0[0].is_zero()));
        assert!(syzygy_defects(&m, &ten_quadrics()).iter().all(|d| d.is_zero()));
    }

    #[test]
    fn single_generator_is_normalized() {
        let v = ModVec(vec![p("3*x1_0 + x2_1")]);
        let gb = groebner_module(&[v], &ModuleOrder::plain(1));
        assert_eq!(gb.elements(), vec![ModVec(vec![p("x1_0 + 1/3*x2_1")])]);
    }

    #[test]
    fn koszul_examples() {
        let k = syzygy_kernel(&[p("x1_0")]);
        assert!(k.generators.is_empty());
        let k = syzygy_kernel(&[p("x1_0"), p("x2_0")]);
        assert_eq!(k.generators.len(), 1);
        let koszul = ModVec(vec![p("x2_0"), p("-x1_0")]);
        assert!(k.generators[0].ratio_to(&koszul).is_some());
        let gb = groebner_module(&k.generators, &ModuleOrder::plain(2));
        assert!(gb.is_member(&koszul));
        assert!(modules_equal(&k.generators, &[koszul.scale(&rat(3, 1))]));
    }

    #[test]
    fn plain_module_basis() {
        let a = ModVec(vec![p("x1_0"), Poly16::zero()]);
        let b = ModVec(vec![Poly16::zero(), p("x1_0")]);
        let gb = groebner_module(&[a.clone(), b.clone()], &ModuleOrder::plain(2));
        assert_eq!(gb.len(), 2);
        assert!(gb.is_member(&a) && gb.is_member(&b));
        assert!(!gb.is_member(&ModVec(vec![p("x1_1"), Poly16::zero()])));
        assert!(gb.satisfies_buchberger_criterion());
    }

    #[test]
    fn non_homogeneous_row() {
        let row = [p("x1_0^2 - x1_1"), p("x1_0*x1_1 - 1"), p("x1_1^2 - x1_0")];
        let k = syzygy_kernel(&row);
        assert!(!k.generators.is_empty());
        assert!(syzygy_defects(&k.kernel_gb, &row).iter().all(|d| d.is_zero()));
    }

    #[test]
    fn text_round_trip() {
        let m = printed_kernel_matrix();
        assert_eq!(parse_modvecs(&format_modvecs(&m)).unwrap(), m);
        match parse_modvecs("x1_0, x2_0\nx1_0, x2_0 +") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
    }
}
