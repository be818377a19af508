//! Length-two subschemes of a double surface at a point, in the local chart
//! `O_2 = Q[x, y, t]/(t^2)` at the origin: the ideals `(x + a t, y + b t)`,
//! their invariants `tau` and `lambda`, the resolution of the maximal ideal,
//! and the extensions of `m` by `m ⊗ I` they come from.
//!
//! Local questions are answered with polynomial representatives. Ideal
//! equality is decided modulo `(x, y)^N`, which is exact here because every
//! ideal involved contains `m_2^2`.

use num_traits::{One, Zero};

use crate::arith::{Monomial, Poly, Rational};
use crate::error::{Error, Result};
use crate::fpmod::cover;
use crate::fpmod::{is_balanced_at, subquotient, Extension, Grading, Locality, ModMap, PresMod};
use crate::groebner::Vector;
use crate::multiring::{TruncElem, TruncRing};
use crate::regseq::balanced_ideal;

pub const DEFAULT_JET_ORDER: u32 = 6;

/// `O_2` at the origin, with the jet order used for local comparisons.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalDoubleRing {
    ring: TruncRing,
    jet_order: u32,
}

impl Default for LocalDoubleRing {
    fn default() -> Self {
        Self::new(DEFAULT_JET_ORDER).expect("default jet order is valid")
    }
}

impl LocalDoubleRing {
    pub fn new(jet_order: u32) -> Result<Self> {
        if jet_order < 3 {
            return Err(Error::InvalidInput(format!("jet order must be at least 3, got {jet_order}")));
        }
        Ok(LocalDoubleRing { ring: TruncRing::new(&["x", "y"], 2)?, jet_order })
    }

    pub fn ring(&self) -> &TruncRing {
        &self.ring
    }

    pub fn jet_order(&self) -> u32 {
        self.jet_order
    }

    pub fn x(&self) -> TruncElem {
        TruncElem::from_full(&self.ring, &self.ring.var(0))
    }

    pub fn y(&self) -> TruncElem {
        TruncElem::from_full(&self.ring, &self.ring.var(1))
    }

    pub fn t(&self) -> TruncElem {
        TruncElem::from_full(&self.ring, &self.ring.t())
    }

    pub fn zero_elem(&self) -> TruncElem {
        self.ring.zero()
    }

    pub fn parse(&self, s: &str) -> Result<TruncElem> {
        self.ring.parse(s)
    }

    /// A polynomial in `x, y` only.
    pub fn parse_base(&self, s: &str) -> Result<Poly> {
        self.ring.parse_base(s)
    }

    fn base_const(&self, c: Rational) -> Poly {
        Poly::constant(self.ring.base(), c)
    }

    fn lift(&self, p: &Poly) -> TruncElem {
        TruncElem::from_base(&self.ring, p)
    }

    fn monomial(&self, i: u32, j: u32, k: u32) -> TruncElem {
        let m = Monomial::from_exponents(&[i, j, k]);
        TruncElem::from_full(&self.ring, &Poly::term(self.ring.full(), m, Rational::one()))
    }

    /// Generators of `(x, y)^N`.
    fn jets(&self) -> Vec<TruncElem> {
        let n = self.jet_order;
        (0..=n).map(|i| self.monomial(i, n - i, 0)).collect()
    }

    /// `m_2^2 = (x^2, xy, y^2, xt, yt)`.
    fn m2_squared(&self) -> Vec<TruncElem> {
        vec![
            self.monomial(2, 0, 0),
            self.monomial(1, 1, 0),
            self.monomial(0, 2, 0),
            self.monomial(1, 0, 1),
            self.monomial(0, 1, 1),
        ]
    }

    /// `m^2 I = t (x^2, xy, y^2)`.
    fn m2_i(&self) -> Vec<TruncElem> {
        vec![self.monomial(2, 0, 1), self.monomial(1, 1, 1), self.monomial(0, 2, 1)]
    }

    fn vec1(&self, f: &TruncElem) -> Vector {
        cover::from_elems(&self.ring, std::slice::from_ref(f))
    }

    fn vecs(&self, fs: &[TruncElem]) -> Vec<Vector> {
        fs.iter().map(|f| self.vec1(f)).collect()
    }

    fn check(&self, f: &TruncElem) -> Result<()> {
        if f.ring() != &self.ring {
            return Err(Error::RingMismatch(format!("{f} is not in {:?}", self.ring)));
        }
        Ok(())
    }

    fn check_base(&self, p: &Poly) -> Result<()> {
        if **p.ring() != **self.ring.base() {
            return Err(Error::RingMismatch(format!("{p} is not a polynomial in x, y")));
        }
        Ok(())
    }

    /// Equality of ideals in the jet ring `O_2 / (x, y)^N`.
    fn jet_ideals_equal(&self, f: &[TruncElem], g: &[TruncElem]) -> bool {
        let jets = self.jets();
        let with = |h: &[TruncElem]| {
            let mut v = self.vecs(h);
            v.extend(self.vecs(&jets));
            v
        };
        let (fv, gv) = (with(f), with(g));
        cover::membership(&self.ring, &fv, 1).contains_all(&gv) && cover::membership(&self.ring, &gv, 1).contains_all(&fv)
    }

    /// `dim_Q O_2 / (gens + (x, y)^N)`, counted by standard monomials.
    fn jet_colength(&self, gens: &[TruncElem]) -> usize {
        let mut v = self.vecs(gens);
        v.extend(self.vecs(&self.jets()));
        let mem = cover::membership(&self.ring, &v, 1);
        let leads: Vec<Monomial> = mem.gb().iter().filter_map(|g| g.lead().map(|l| l.mon.clone())).collect();
        let n = self.jet_order;
        let mut count = 0;
        for k in 0..2 {
            for d in 0..n {
                for i in 0..=d {
                    let m = Monomial::from_exponents(&[i, d - i, k]);
                    if !leads.iter().any(|l| l.divides(&m)) {
                        count += 1;
                    }
                }
            }
        }
        count
    }

    /// Class of an element of `m I` in `m I / m^2 I`, read off its normal
    /// form, in the basis `x t, y t`.
    fn class_in_mi(&self, e: &TruncElem) -> Result<TauClass> {
        self.check(e)?;
        if !e.u0().is_zero() || !e.coeff(1).evaluate_at_origin().is_zero() {
            return Err(Error::InvalidInput(format!("{e} is not in m I")));
        }
        let mem = cover::membership(&self.ring, &self.vecs(&self.m2_i()), 1);
        let nf = mem.normal_form(&self.vec1(e)).resort(&cover::top(&self.ring));
        let r = cover::to_elems(&self.ring, &nf, 1).remove(0);
        let mut c = [Rational::zero(), Rational::zero()];
        for (m, q) in r.coeff(1).terms() {
            match m.exponents() {
                [1, 0] => c[0] = q.clone(),
                [0, 1] => c[1] = q.clone(),
                _ => return Err(Error::cross("tau", format!("normal form {r} is not linear"))),
            }
        }
        if !r.u0().is_zero() {
            return Err(Error::cross("tau", format!("normal form {r} has a t-free part")));
        }
        let [c_x, c_y] = c;
        Ok(TauClass { c_x, c_y })
    }

    /// `e = (p x + q y) t` split into `p, q`.
    fn split_mi(&self, e: &TruncElem) -> Result<(Poly, Poly)> {
        self.check(e)?;
        let c = e.coeff(1);
        if !e.u0().is_zero() || !c.evaluate_at_origin().is_zero() {
            return Err(Error::InvalidInput(format!("{e} is not in m I")));
        }
        let base = self.ring.base();
        let mut p = Vec::new();
        let mut q = Vec::new();
        for (m, k) in c.terms() {
            let mut ex = m.exponents().to_vec();
            if ex[0] > 0 {
                ex[0] -= 1;
                p.push((Monomial::from_exponents(&ex), k.clone()));
            } else {
                ex[1] -= 1;
                q.push((Monomial::from_exponents(&ex), k.clone()));
            }
        }
        Ok((Poly::from_terms(base, p), Poly::from_terms(base, q)))
    }
}

/// The ideal `(x + a t, y + b t)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointIdeal {
    ring: LocalDoubleRing,
    a: Poly,
    b: Poly,
}

impl PointIdeal {
    pub fn new(ring: &LocalDoubleRing, a: &Poly, b: &Poly) -> Result<Self> {
        ring.check_base(a)?;
        ring.check_base(b)?;
        let j = PointIdeal { ring: ring.clone(), a: a.clone(), b: b.clone() };
        let mem = cover::membership(&ring.ring, &ring.vecs(&j.generators()), 1);
        if !mem.contains_all(&ring.vecs(&ring.m2_squared())) {
            return Err(Error::cross("point ideal", "ideal does not contain m_2^2"));
        }
        Ok(j)
    }

    /// From generators of the form `x + a t`, `y + b t`.
    pub fn from_generators(ring: &LocalDoubleRing, f: &TruncElem, g: &TruncElem) -> Result<Self> {
        ring.check(f)?;
        ring.check(g)?;
        if *f.u0() != ring.x().u0().clone() || *g.u0() != ring.y().u0().clone() {
            return Err(Error::InvalidInput(format!("generators must reduce to x and y, got {f}, {g}")));
        }
        Self::new(ring, f.coeff(1), g.coeff(1))
    }

    /// The ideal with constant `a`, `b`.
    pub fn constant(ring: &LocalDoubleRing, a: Rational, b: Rational) -> Result<Self> {
        Self::new(ring, &ring.base_const(a), &ring.base_const(b))
    }

    pub fn ring(&self) -> &LocalDoubleRing {
        &self.ring
    }

    pub fn a(&self) -> &Poly {
        &self.a
    }

    pub fn b(&self) -> &Poly {
        &self.b
    }

    /// `[x + a t, y + b t]`.
    pub fn generators(&self) -> [TruncElem; 2] {
        let r = &self.ring;
        let t = r.t();
        [
            r.x().add(&t.scale_base(&self.a)).unwrap(),
            r.y().add(&t.scale_base(&self.b)).unwrap(),
        ]
    }

    /// `dim_Q O_2 / (J + (x, y)^N)`; always 2, spanned by `1, t`.
    pub fn jet_colength(&self) -> usize {
        self.ring.jet_colength(&self.generators())
    }

    /// The generators reduce to the regular sequence `x, y`, so the ideal is
    /// a balanced module; both facts are checked.
    pub fn is_balanced(&self) -> Result<bool> {
        Ok(balanced_ideal(&self.generators(), Locality::Global).is_ok())
    }
}

/// A class `c_x (x ⊗ t) + c_y (y ⊗ t)` in `m I / m^2 I`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TauClass {
    pub c_x: Rational,
    pub c_y: Rational,
}

impl TauClass {
    pub fn is_zero(&self) -> bool {
        self.c_x.is_zero() && self.c_y.is_zero()
    }
}

/// A change of local generators `x' = alpha (x + u) + beta (y + v)`,
/// `y' = gamma (x + u) + delta (y + v)` with `u, v` in `I`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chart {
    pub alpha: Poly,
    pub beta: Poly,
    pub gamma: Poly,
    pub delta: Poly,
    pub u: TruncElem,
    pub v: TruncElem,
}

impl Chart {
    pub fn new(
        ring: &LocalDoubleRing,
        [alpha, beta, gamma, delta]: [Poly; 4],
        u: TruncElem,
        v: TruncElem,
    ) -> Result<Self> {
        for p in [&alpha, &beta, &gamma, &delta] {
            ring.check_base(p)?;
        }
        for w in [&u, &v] {
            ring.check(w)?;
            if !w.u0().is_zero() {
                return Err(Error::InvalidInput(format!("{w} is not in (t)")));
            }
        }
        let c = Chart { alpha, beta, gamma, delta, u, v };
        if c.det0().is_zero() {
            return Err(Error::NotUnit("chart matrix is singular at the origin".into()));
        }
        Ok(c)
    }

    pub fn standard(ring: &LocalDoubleRing) -> Self {
        let (one, zero) = (ring.base_const(Rational::one()), ring.base_const(Rational::zero()));
        Chart { alpha: one.clone(), beta: zero.clone(), gamma: zero, delta: one, u: ring.ring.zero(), v: ring.ring.zero() }
    }

    /// `x' = y`, `y' = x`.
    pub fn swap(ring: &LocalDoubleRing) -> Self {
        let (one, zero) = (ring.base_const(Rational::one()), ring.base_const(Rational::zero()));
        Chart { alpha: zero.clone(), beta: one.clone(), gamma: one, delta: zero, u: ring.ring.zero(), v: ring.ring.zero() }
    }

    /// `x' = x + u`, `y' = y + v`.
    pub fn translation(ring: &LocalDoubleRing, u: TruncElem, v: TruncElem) -> Result<Self> {
        let (one, zero) = (ring.base_const(Rational::one()), ring.base_const(Rational::zero()));
        Self::new(ring, [one.clone(), zero.clone(), zero, one], u, v)
    }

    /// The constant matrix `[[alpha, beta], [gamma, delta]]` at the origin.
    pub fn matrix0(&self) -> [[Rational; 2]; 2] {
        [
            [self.alpha.evaluate_at_origin(), self.beta.evaluate_at_origin()],
            [self.gamma.evaluate_at_origin(), self.delta.evaluate_at_origin()],
        ]
    }

    pub fn det0(&self) -> Rational {
        let m = self.matrix0();
        &m[0][0] * &m[1][1] - &m[0][1] * &m[1][0]
    }

    /// The new generators `x', y'`.
    pub fn generators(&self, ring: &LocalDoubleRing) -> Result<[TruncElem; 2]> {
        let xu = ring.x().add(&self.u)?;
        let yv = ring.y().add(&self.v)?;
        Ok([
            xu.scale_base(&self.alpha).add(&yv.scale_base(&self.beta))?,
            xu.scale_base(&self.gamma).add(&yv.scale_base(&self.delta))?,
        ])
    }
}

/// `lambda(J)` computed in `chart`. `coords` are always in the basis
/// `d/dx ⊗ t, d/dy ⊗ t` of the standard chart.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LambdaCoord {
    pub chart: Chart,
    pub coords: [Rational; 2],
}

impl LambdaCoord {
    /// Coordinates in the chart's own basis `d/dx' ⊗ t, d/dy' ⊗ t`.
    pub fn chart_coords(&self) -> [Rational; 2] {
        let m = self.chart.matrix0();
        let [vx, vy] = &self.coords;
        [&m[0][0] * vx + &m[0][1] * vy, &m[1][0] * vx + &m[1][1] * vy]
    }
}

/// `(dx∧dy)^{-1} ⊗ dx -> -d/dy`, `(dx∧dy)^{-1} ⊗ dy -> d/dx`.
fn orient(c: &TauClass) -> [Rational; 2] {
    [c.c_y.clone(), -c.c_x.clone()]
}

/// `tau(J)`, the class of `-y A + x B` in `m I / m^2 I` for `A = a t`,
/// `B = b t`: once from the constant terms and once by reduction.
pub fn tau(j: &PointIdeal) -> Result<TauClass> {
    let closed = TauClass { c_x: j.b.evaluate_at_origin(), c_y: -j.a.evaluate_at_origin() };
    let r = &j.ring;
    let t = r.t();
    let e = r.y().mul(&t.scale_base(&j.a))?.neg().add(&r.x().mul(&t.scale_base(&j.b))?)?;
    let reduced = r.class_in_mi(&e)?;
    if reduced != closed {
        return Err(Error::cross("tau", format!("closed form {closed:?}, reduction {reduced:?}")));
    }
    Ok(closed)
}

/// Whether two ideals coincide, decided by jet membership, by `tau`, and by
/// the constant terms of `a, b`.
pub fn ideals_equal(j1: &PointIdeal, j2: &PointIdeal) -> Result<bool> {
    if j1.ring != j2.ring {
        return Err(Error::RingMismatch("ideals over different local rings".into()));
    }
    let by_jets = j1.ring.jet_ideals_equal(&j1.generators(), &j2.generators());
    let by_tau = tau(j1)? == tau(j2)?;
    let by_constants =
        (&j1.a - &j2.a).evaluate_at_origin().is_zero() && (&j1.b - &j2.b).evaluate_at_origin().is_zero();
    if by_jets != by_tau || by_tau != by_constants {
        return Err(Error::cross("ideals_equal", format!("jets {by_jets}, tau {by_tau}, constants {by_constants}")));
    }
    Ok(by_jets)
}

/// `lambda(J)` in the standard chart: `(-a(0), -b(0))`.
pub fn lambda_coord(j: &PointIdeal) -> Result<LambdaCoord> {
    let coords = orient(&tau(j)?);
    Ok(LambdaCoord { chart: Chart::standard(&j.ring), coords })
}

/// The ideal with the given `lambda` coordinates in the standard chart.
pub fn ideal_from_lambda(ring: &LocalDoubleRing, coords: &[Rational; 2]) -> Result<PointIdeal> {
    let j = PointIdeal::constant(ring, -coords[0].clone(), -coords[1].clone())?;
    if lambda_coord(&j)?.coords != *coords {
        return Err(Error::cross("ideal_from_lambda", "roundtrip changed the coordinates"));
    }
    Ok(j)
}

/// `lambda(J)` in another chart. Computed directly, by rewriting `J` on the
/// new generators, and by the transformation law
/// `lambda' = lambda + (u_1(0), v_1(0))` for `u = u_1 t`, `v = v_1 t`.
pub fn change_chart(j: &PointIdeal, chart: &Chart) -> Result<LambdaCoord> {
    let r = &j.ring;
    let d0 = chart.det0();
    if d0.is_zero() {
        return Err(Error::NotUnit("chart matrix is singular at the origin".into()));
    }
    let m = chart.matrix0();
    let t = r.t();
    let aa = t.scale_base(&j.a).sub(&chart.u)?;
    let bb = t.scale_base(&j.b).sub(&chart.v)?;
    let k = |c: &Rational| r.base_const(c.clone());
    let a_new = aa.scale_base(&k(&m[0][0])).add(&bb.scale_base(&k(&m[0][1])))?;
    let b_new = aa.scale_base(&k(&m[1][0])).add(&bb.scale_base(&k(&m[1][1])))?;
    let [xp, yp] = chart.generators(r)?;
    let rewritten = [xp.add(&a_new)?, yp.add(&b_new)?];
    if !r.jet_ideals_equal(&j.generators(), &rewritten) {
        return Err(Error::cross("change_chart", "rewritten generators span another ideal"));
    }
    // tau' = -y'_0 A' + x'_0 B' in the basis x t, y t, then in x' t, y' t
    let x0 = r.lift(xp.u0());
    let y0 = r.lift(yp.u0());
    let e = y0.mul(&a_new)?.neg().add(&x0.mul(&b_new)?)?;
    let c = r.class_in_mi(&e)?;
    // (c_x, c_y) = M^T (c'_x, c'_y)
    let cx = (&m[1][1] * &c.c_x - &m[1][0] * &c.c_y) / &d0;
    let cy = (-&m[0][1] * &c.c_x + &m[0][0] * &c.c_y) / &d0;
    let [lx, ly] = orient(&TauClass { c_x: cx, c_y: cy });
    // back to the standard basis with M^{-1}
    let direct = [(&m[1][1] * &lx - &m[0][1] * &ly) / &d0, (-&m[1][0] * &lx + &m[0][0] * &ly) / &d0];

    let base = lambda_coord(j)?.coords;
    let u1 = chart.u.coeff(1).evaluate_at_origin();
    let v1 = chart.v.coeff(1).evaluate_at_origin();
    let by_law = [&base[0] + &u1, &base[1] + &v1];
    if direct != by_law {
        return Err(Error::cross("change_chart", format!("direct {direct:?}, transformation law {by_law:?}")));
    }
    Ok(LambdaCoord { chart: chart.clone(), coords: direct })
}

/// `lambda(J1) - lambda(J2)`, checked to be the same in every given chart.
pub fn affine_difference(j1: &PointIdeal, j2: &PointIdeal, charts: &[Chart]) -> Result<[Rational; 2]> {
    if j1.ring != j2.ring {
        return Err(Error::RingMismatch("ideals over different local rings".into()));
    }
    let diff = |p: [Rational; 2], q: [Rational; 2]| [&p[0] - &q[0], &p[1] - &q[1]];
    let d = diff(lambda_coord(j1)?.coords, lambda_coord(j2)?.coords);
    for c in charts {
        let dc = diff(change_chart(j1, c)?.coords, change_chart(j2, c)?.coords);
        if dc != d {
            return Err(Error::cross("affine_difference", format!("chart {c:?} gives {dc:?}, expected {d:?}")));
        }
    }
    Ok(d)
}

/// A matrix over `O_2`, by rows; column `j` is the image of `e_j`.
pub type Matrix = Vec<Vec<TruncElem>>;

fn matrix(ring: &LocalDoubleRing, rows: &[&[&str]]) -> Matrix {
    rows.iter().map(|row| row.iter().map(|s| ring.parse(s).expect("valid entry")).collect()).collect()
}

fn columns(ring: &LocalDoubleRing, m: &Matrix) -> Vec<Vector> {
    let ncols = m.first().map_or(0, Vec::len);
    (0..ncols)
        .map(|j| cover::from_elems(&ring.ring, &m.iter().map(|row| row[j].clone()).collect::<Vec<_>>()))
        .collect()
}

fn mat_mul(a: &Matrix, b: &Matrix) -> Result<Matrix> {
    let ring = a[0][0].ring().clone();
    let mut out = Vec::new();
    for row in a {
        let mut r = Vec::new();
        for j in 0..b[0].len() {
            let mut s = ring.zero();
            for (k, x) in row.iter().enumerate() {
                s = s.add(&x.mul(&b[k][j])?)?;
            }
            r.push(s);
        }
        out.push(r);
    }
    Ok(out)
}

/// One named assertion of a verification report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// Per-degree dimensions compared by a report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeRow {
    pub degree: i64,
    pub computed: i64,
    pub expected: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub degree_bound: u32,
    pub checks: Vec<Check>,
    pub degrees: Vec<DegreeRow>,
}

impl VerificationReport {
    fn new(degree_bound: u32) -> Self {
        VerificationReport { degree_bound, checks: Vec::new(), degrees: Vec::new() }
    }

    fn push(&mut self, name: &str, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check { name: name.into(), passed, detail: detail.into() });
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed) && self.degrees.iter().all(|d| d.computed == d.expected)
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }
}

/// `phi_0 = (x y)`, `phi_1`, `phi_2`: the free resolution of `m`.
pub fn resolution_matrices(ring: &LocalDoubleRing) -> [Matrix; 3] {
    [
        matrix(ring, &[&["x", "y"]]),
        matrix(ring, &[&["y", "t", "0"], &["-x", "0", "t"]]),
        matrix(ring, &[&["t", "0", "0"], &["-y", "t", "0"], &["x", "0", "t"]]),
    ]
}

pub fn verify_maximal_ideal_resolution(ring: &LocalDoubleRing, degree_bound: u32) -> Result<VerificationReport> {
    verify_resolution(ring, &resolution_matrices(ring), degree_bound)
}

/// Degrees of the columns of `m` given the degrees of its rows' basis.
fn column_degrees(m: &Matrix, row_degrees: &[i64]) -> Option<Vec<i64>> {
    let w = [1, 1, 1];
    let ncols = m.first().map_or(0, Vec::len);
    (0..ncols)
        .map(|j| {
            let mut deg = None;
            for (i, row) in m.iter().enumerate() {
                let p = row[j].to_full();
                if p.is_zero() {
                    continue;
                }
                if !p.is_homogeneous(&w) {
                    return None;
                }
                let d = p.weighted_degree(&w)? + row_degrees[i];
                if deg.is_some_and(|e| e != d) {
                    return None;
                }
                deg = Some(d);
            }
            deg
        })
        .collect()
}

/// `dim` of the degree `d` part of the span of `gens` in a graded free module.
fn span_dims(ring: &LocalDoubleRing, gens: &[Vector], degrees: &[i64], tw: i64, bound: u32) -> Option<Vec<i64>> {
    let g = Grading::standard(2, tw, degrees.to_vec());
    let q = subquotient(&ring.ring, degrees.len(), gens, &[], Some(&g)).ok()?;
    let h = q.hilbert_series().ok()?;
    Some((0..=bound as i64).map(|d| h.coefficient(d).try_into().unwrap_or(i64::MAX)).collect())
}

/// `phi_0` maps onto the maximal ideal of `O_1`. Checks that `phi_0 phi_1 = 0`, `phi_1 phi_2 = 0`, `ker phi_0 = im phi_1`,
/// `ker phi_1 = im phi_2`, and that `ker phi_0` is the module
/// `{(e y + c, -e x + d) : c, d in I}`.
pub fn verify_resolution(ring: &LocalDoubleRing, phis: &[Matrix; 3], degree_bound: u32) -> Result<VerificationReport> {
    if degree_bound < 2 {
        return Err(Error::InvalidInput(format!("degree bound must be at least 2, got {degree_bound}")));
    }
    let rg = &ring.ring;
    let mut rep = VerificationReport::new(degree_bound);
    for (k, name) in [(0, "phi0 * phi1 = 0"), (1, "phi1 * phi2 = 0")] {
        let p = mat_mul(&phis[k], &phis[k + 1])?;
        // phi0 lands in O_1 = O_2 / (t)
        let reduce = |e: &TruncElem| if k == 0 { ring.lift(e.u0()) } else { e.clone() };
        let bad: Vec<String> =
            p.iter().flatten().map(reduce).filter(|e| !e.is_zero()).map(|e| e.to_string()).collect();
        rep.push(name, bad.is_empty(), if bad.is_empty() { String::new() } else { format!("nonzero entries {bad:?}") });
    }

    let mut degrees = vec![vec![1i64, 1]];
    for k in 1..3 {
        let prev = degrees[k - 1].clone();
        degrees.push(column_degrees(&phis[k], &prev).unwrap_or_default());
    }
    for k in 0..2 {
        let width = phis[k].first().map_or(0, Vec::len);
        let ker = cover::kernel(rg, &columns(ring, &phis[k]), &target_rels(ring, k, phis[k].len()), phis[k].len());
        let im = columns(ring, &phis[k + 1]);
        let im_in_ker = cover::membership(rg, &ker, width);
        let ker_in_im = cover::membership(rg, &im, width);
        let missing: Vec<String> = ker.iter().filter(|v| !ker_in_im.contains(v)).map(|v| format!("{:?}", cover::to_elems(rg, v, width))).collect();
        let extra: Vec<String> = im.iter().filter(|v| !im_in_ker.contains(v)).map(|v| format!("{:?}", cover::to_elems(rg, v, width))).collect();
        rep.push(
            &format!("ker phi{} = im phi{}", k, k + 1),
            missing.is_empty() && extra.is_empty(),
            format!("kernel elements outside the image: {missing:?}; image elements outside the kernel: {extra:?}"),
        );
        if degrees[k].len() == width && degrees[k + 1].len() == im.len() && !degrees[k + 1].is_empty() {
            let dk = span_dims(ring, &ker, &degrees[k], 1, degree_bound);
            let di = span_dims(ring, &im, &degrees[k], 1, degree_bound);
            if let (Some(dk), Some(di)) = (dk, di) {
                let ok = dk == di;
                rep.push(&format!("graded dimensions of ker phi{k}"), ok, format!("kernel {dk:?}, image {di:?}"));
            }
        }
    }

    // K = {(e y + c, -e x + d)} from its description
    let k_gens = vec![
        cover::from_elems(rg, &[ring.y(), ring.x().neg()]),
        cover::from_elems(rg, &[ring.t(), rg.zero()]),
        cover::from_elems(rg, &[rg.zero(), ring.t()]),
    ];
    let ker0 = cover::kernel(rg, &columns(ring, &phis[0]), &target_rels(ring, 0, 1), 1);
    let ok = cover::membership(rg, &ker0, 2).contains_all(&k_gens) && cover::membership(rg, &k_gens, 2).contains_all(&ker0);
    rep.push("ker phi0 = K", ok, "");
    Ok(rep)
}

/// Relations of the target of `phi_k`: `O_1` for `k = 0`, free otherwise.
fn target_rels(ring: &LocalDoubleRing, k: usize, rank: usize) -> Vec<Vector> {
    if k > 0 {
        return Vec::new();
    }
    (0..rank).map(|j| cover::t_pow_times(&ring.ring, &cover::unit(&ring.ring, j), 1)).collect()
}

/// The maps `Psi_1 : (m I)^2 -> (m I)^3` and `Psi_2 : (m I)^3 -> (m I)^3`
/// computing `Ext^1(m, m ⊗ I)` from the resolution.
#[derive(Clone, Debug)]
pub struct ExtComplex {
    pub psi1: Matrix,
    pub psi2: Matrix,
}

impl ExtComplex {
    pub fn standard(ring: &LocalDoubleRing) -> Self {
        ExtComplex {
            psi1: matrix(ring, &[&["y", "-x"], &["0", "0"], &["0", "0"]]),
            psi2: matrix(ring, &[&["0", "-y", "x"], &["0", "0", "0"], &["0", "0", "0"]]),
        }
    }
}

pub fn ext_complex_check(ring: &LocalDoubleRing, degree_bound: u32) -> Result<VerificationReport> {
    verify_ext_complex(ring, &ExtComplex::standard(ring), degree_bound)
}

/// `dim` of the degree `d` part of `(m/m^2 ⊗ I) ⊕ O_1`, with `x, y` of
/// degree 1, `t` of degree 0, and `O_1` embedded as `f -> (x f t, y f t)`.
pub fn expected_ext_dimension(d: i64) -> i64 {
    let cotangent = if d == 1 { 2 } else { 0 };
    let o1 = if d >= 1 { d } else { 0 };
    cotangent + o1
}

/// Checks `im Psi_1 = m^2 I ⊕ 0 ⊕ 0`, `ker Psi_2 = m I ⊕ W` with
/// `W = {(x e, y e) : e in I}`, and the graded dimensions of their quotient.
pub fn verify_ext_complex(ring: &LocalDoubleRing, cx: &ExtComplex, degree_bound: u32) -> Result<VerificationReport> {
    if degree_bound < 2 {
        return Err(Error::InvalidInput(format!("degree bound must be at least 2, got {degree_bound}")));
    }
    let rg = &ring.ring;
    let mut rep = VerificationReport::new(degree_bound);
    let mi = [ring.monomial(1, 0, 1), ring.monomial(0, 1, 1)];
    let z = rg.zero();
    let slot = |k: usize, e: &TruncElem| {
        let mut c = vec![z.clone(); 3];
        c[k] = e.clone();
        cover::from_elems(rg, &c)
    };
    let apply = |m: &Matrix, comps: &[TruncElem]| -> Result<Vector> {
        let mut out = Vec::new();
        for row in m {
            let mut s = z.clone();
            for (a, c) in row.iter().zip(comps) {
                s = s.add(&a.mul(c)?)?;
            }
            out.push(s);
        }
        Ok(cover::from_elems(rg, &out))
    };

    // image of Psi_1 on (m I)^2
    let mut im = Vec::new();
    for k in 0..2 {
        for g in &mi {
            let mut c = vec![z.clone(); 2];
            c[k] = g.clone();
            let v = apply(&cx.psi1, &c)?;
            if !v.is_zero() {
                im.push(v);
            }
        }
    }
    let m2i: Vec<Vector> = ring.m2_i().iter().map(|g| slot(0, g)).collect();
    let a = cover::membership(rg, &m2i, 3).contains_all(&im);
    let b = cover::membership(rg, &im, 3).contains_all(&m2i);
    rep.push("im Psi1 ⊆ m^2 I", a, "");
    rep.push("m^2 I ⊆ im Psi1", b, "");

    // kernel of Psi_2 restricted to (m I)^3
    let cols: Vec<Vector> =
        (0..3).map(|j| cover::from_elems(rg, &cx.psi2.iter().map(|row| row[j].clone()).collect::<Vec<_>>())).collect();
    let ker_all = cover::kernel(rg, &cols, &[], 3);
    let mi3: Vec<Vector> = (0..3).flat_map(|k| mi.iter().map(move |g| (k, g))).map(|(k, g)| slot(k, g)).collect();
    let coeffs = cover::kernel(rg, &ker_all, &mi3, 3);
    let ker: Vec<Vector> =
        coeffs.iter().map(|c| cover::combine(rg, c, &ker_all)).filter(|v| !v.is_zero()).collect();
    let mut expected: Vec<Vector> = mi.iter().map(|g| slot(0, g)).collect();
    expected.push(cover::from_elems(rg, &[z.clone(), mi[0].clone(), mi[1].clone()]));
    let a = cover::membership(rg, &expected, 3).contains_all(&ker);
    let b = cover::membership(rg, &ker, 3).contains_all(&expected);
    rep.push("ker Psi2 ⊆ m I ⊕ W", a, "");
    rep.push("m I ⊕ W ⊆ ker Psi2", b, "");

    // graded dimensions of ker / im
    let g = Grading::standard(2, 0, vec![0, 0, 0]);
    match subquotient(rg, 3, &ker, &im, Some(&g)).and_then(|q| q.hilbert_series()) {
        Ok(h) => {
            for d in 0..=degree_bound as i64 {
                let computed = h.coefficient(d).try_into().unwrap_or(i64::MAX);
                rep.degrees.push(DegreeRow { degree: d, computed, expected: expected_ext_dimension(d) });
            }
        }
        Err(e) => rep.push("graded quotient", false, e.to_string()),
    }
    Ok(rep)
}

/// `0 -> m ⊗ I -> M -> m -> 0` for the class `(tau_bar, rho)`: `M` is the
/// quotient of `O_2^2 ⊕ (m ⊗ I)` by `(e y + c, -e x + d, e tau_bar +
/// rho (x c + y d))`. Generators `e_1, e_2, e_x, e_y`, where `e_x, e_y` stand
/// for `x ⊗ t, y ⊗ t`.
pub fn extension_sequence(ring: &LocalDoubleRing, tau_bar: &TruncElem, rho: &Poly) -> Result<Extension> {
    ring.check_base(rho)?;
    let (p, q) = ring.split_mi(tau_bar)?;
    let rg = &ring.ring;
    let (x, y, t, z) = (ring.x(), ring.y(), ring.t(), rg.zero());
    let (p, q, r) = (ring.lift(&p), ring.lift(&q), ring.lift(rho));
    let m_tensor_i = PresMod::new(rg, 2, &[vec![y.clone(), x.neg()], vec![t.clone(), z.clone()], vec![z.clone(), t.clone()]], None)?;
    let m = PresMod::new(rg, 2, &[vec![y.clone(), x.neg()], vec![t.clone(), z.clone()], vec![z.clone(), t.clone()]], None)?;
    let rels = vec![
        vec![y.clone(), x.neg(), p, q],
        vec![t.clone(), z.clone(), r.clone(), z.clone()],
        vec![z.clone(), t.clone(), z.clone(), r],
        vec![z.clone(), z.clone(), y, x.neg()],
        vec![z.clone(), z.clone(), t.clone(), z.clone()],
        vec![z.clone(), z.clone(), z.clone(), t],
    ];
    let module = PresMod::new(rg, 4, &rels, None)?;
    let inclusion = ModMap::from_vectors(&m_tensor_i, &module, vec![cover::unit(rg, 2), cover::unit(rg, 3)])?;
    let projection = ModMap::from_vectors(
        &module,
        &m,
        vec![cover::unit(rg, 0), cover::unit(rg, 1), Vector::zero(), Vector::zero()],
    )?;
    Ok(Extension { module, inclusion, projection })
}

pub fn extension_module(ring: &LocalDoubleRing, tau_bar: &TruncElem, rho: &Poly) -> Result<PresMod> {
    Ok(extension_sequence(ring, tau_bar, rho)?.module)
}

/// Balanced iff `rho` is a unit at the origin; checked against the
/// filtration test on the extension module, localized at the origin.
pub fn is_balanced_extension(ring: &LocalDoubleRing, tau_bar: &TruncElem, rho: &Poly) -> Result<bool> {
    ring.check_base(rho)?;
    let expected = !rho.evaluate_at_origin().is_zero();
    let m = extension_module(ring, tau_bar, rho)?;
    let (computed, _) = is_balanced_at(&m, Locality::AtOrigin)?;
    if computed != expected {
        return Err(Error::cross("is_balanced_extension", format!("rho(0) test {expected}, filtrations {computed}")));
    }
    Ok(expected)
}

/// The ideal `(x + A, y + B)` with `-y A + x B ≡ tau_bar` modulo `m^2 I`,
/// taking `A, B` constant multiples of `t`.
pub fn recover_ideal(ring: &LocalDoubleRing, tau_bar: &TruncElem) -> Result<PointIdeal> {
    let (p, q) = ring.split_mi(tau_bar)?;
    let j = PointIdeal::constant(ring, -q.evaluate_at_origin(), p.evaluate_at_origin())?;
    if tau(&j)? != ring.class_in_mi(tau_bar)? {
        return Err(Error::cross("recover_ideal", "tau of the recovered ideal differs from the input class"));
    }
    Ok(j)
}

/// The isomorphism from the extension module with `rho = -1` and
/// `tau_bar = -y A + x B` onto `J = (x + A, y + B)` inside `O_2`, checked to
/// be injective with image `J`.
pub fn ideal_isomorphism(j: &PointIdeal) -> Result<ModMap> {
    let r = &j.ring;
    let rg = &r.ring;
    let [f, g] = j.generators();
    let t = r.t();
    let tau_bar = r.y().mul(&t.scale_base(&j.a))?.neg().add(&r.x().mul(&t.scale_base(&j.b))?)?;
    let m = extension_module(r, &tau_bar, &r.base_const(-Rational::one()))?;
    let target = PresMod::free(rg, 1);
    let images = [f.clone(), g.clone(), r.monomial(1, 0, 1), r.monomial(0, 1, 1)];
    let psi = ModMap::from_vectors(&m, &target, r.vecs(&images))?;
    if !psi.is_injective(Locality::Global)? {
        return Err(Error::cross("ideal_isomorphism", "map onto the ideal is not injective"));
    }
    let image: Vec<Vector> = psi.image().vectors().to_vec();
    let jv = r.vecs(&[f, g]);
    let same = cover::membership(rg, &image, 1).contains_all(&jv) && cover::membership(rg, &jv, 1).contains_all(&image);
    if !same {
        return Err(Error::cross("ideal_isomorphism", "image is not the ideal"));
    }
    Ok(psi)
}
