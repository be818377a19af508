use std::cmp::Ordering;
use std::collections::HashMap;

use num_traits::{One, Zero};

use super::vector::{ModOrder, VTerm, Vector};
use crate::arith::{Monomial, Rational};

/// Lead-term lookup over a set of (monic or not) reducers.
pub(crate) struct Reducer<'a> {
    elems: Vec<&'a Vector>,
    by_comp: HashMap<u32, Vec<usize>>,
}

impl<'a> Reducer<'a> {
    pub(crate) fn new(elems: impl IntoIterator<Item = &'a Vector>) -> Self {
        let elems: Vec<&Vector> = elems.into_iter().filter(|v| !v.is_zero()).collect();
        let mut by_comp: HashMap<u32, Vec<usize>> = HashMap::new();
        for (i, v) in elems.iter().enumerate() {
            by_comp.entry(v.lead().unwrap().comp).or_default().push(i);
        }
        Reducer { elems, by_comp }
    }

    fn find(&self, m: &Monomial, comp: u32) -> Option<&'a Vector> {
        let cands = self.by_comp.get(&comp)?;
        let mut best: Option<&Vector> = None;
        for &i in cands {
            let g = self.elems[i];
            if g.lead().unwrap().mon.divides(m) && best.is_none_or(|b| g.terms.len() < b.terms.len()) {
                best = Some(g);
            }
        }
        best
    }

    /// Normal form. With `full = false` only the lead is reduced.
    pub(crate) fn reduce(&self, f: &Vector, ord: &ModOrder, full: bool) -> Vector {
        let mut rem: Vec<VTerm> = f.terms.clone();
        let mut start = 0usize;
        let mut out: Vec<VTerm> = Vec::new();
        while start < rem.len() {
            let lt = &rem[start];
            match self.find(&lt.mon, lt.comp) {
                Some(g) => {
                    let gl = g.lead().unwrap();
                    let q = lt.mon.div(&gl.mon).unwrap();
                    let c = -(&lt.coeff / &gl.coeff);
                    rem = reduce_step(&rem[start + 1..], &c, &q, &g.terms[1..], ord);
                    start = 0;
                }
                None => {
                    if !full {
                        break;
                    }
                    out.push(rem[start].clone());
                    start += 1;
                }
            }
        }
        out.extend(rem.drain(start..));
        Vector { terms: out }
    }
}

/// `a + c * q * b`, both sorted.
fn reduce_step(a: &[VTerm], c: &Rational, q: &Monomial, b: &[VTerm], ord: &ModOrder) -> Vec<VTerm> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    let mut bj: Option<Monomial> = b.first().map(|t| t.mon.mul(q));
    while i < a.len() && j < b.len() {
        let bm = bj.as_ref().unwrap();
        match ord.cmp((&a[i].mon, a[i].comp), (bm, b[j].comp)) {
            Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Less => {
                out.push(VTerm { mon: bj.take().unwrap(), comp: b[j].comp, coeff: &b[j].coeff * c });
                j += 1;
                bj = b.get(j).map(|t| t.mon.mul(q));
            }
            Ordering::Equal => {
                let s = &a[i].coeff + &b[j].coeff * c;
                if !s.is_zero() {
                    out.push(VTerm { mon: a[i].mon.clone(), comp: a[i].comp, coeff: s });
                }
                i += 1;
                j += 1;
                bj = b.get(j).map(|t| t.mon.mul(q));
            }
        }
    }
    out.extend(a[i..].iter().cloned());
    while j < b.len() {
        out.push(VTerm { mon: b[j].mon.mul(q), comp: b[j].comp, coeff: &b[j].coeff * c });
        j += 1;
    }
    out
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    comp: u32,
    sugar: i64,
}

fn sugar_of(v: &Vector) -> i64 {
    v.terms.iter().map(|t| t.mon.degree() as i64).max().unwrap_or(0)
}

pub(crate) fn s_vector(f: &Vector, g: &Vector, ord: &ModOrder) -> Vector {
    let (fl, gl) = (f.lead().unwrap(), g.lead().unwrap());
    debug_assert_eq!(fl.comp, gl.comp);
    let l = fl.mon.lcm(&gl.mon);
    let a = f.mul_term(&l.div(&fl.mon).unwrap(), &fl.coeff.recip());
    let b = g.mul_term(&l.div(&gl.mon).unwrap(), &gl.coeff.recip());
    a.sub(&b, ord)
}

struct State<'o> {
    ord: &'o ModOrder,
    ideal_mode: bool,
    elems: Vec<Vector>,
    sugar: Vec<i64>,
    active: Vec<usize>,
    pairs: Vec<Pair>,
}

impl State<'_> {
    fn lead(&self, i: usize) -> &VTerm {
        self.elems[i].lead().unwrap()
    }

    /// Gebauer-Moeller update for a new element `h`.
    fn update(&mut self, h: usize) {
        let hl = self.lead(h).clone();
        let cands: Vec<(usize, Monomial)> = self
            .active
            .iter()
            .copied()
            .filter(|&g| self.lead(g).comp == hl.comp)
            .map(|g| (g, self.lead(g).mon.lcm(&hl.mon)))
            .collect();
        let coprime = |s: &Self, g: usize| s.ideal_mode && s.lead(g).mon.coprime(&hl.mon);

        let mut kept: Vec<(usize, Monomial)> = Vec::new();
        for (a, (g1, l1)) in cands.iter().enumerate() {
            let dominated = cands[a + 1..].iter().any(|(_, l2)| l2.divides(l1))
                || kept.iter().any(|(_, l2)| l2.divides(l1));
            if coprime(self, *g1) || !dominated {
                kept.push((*g1, l1.clone()));
            }
        }
        kept.retain(|(g, _)| !coprime(self, *g));

        let hs = self.sugar[h];
        let elems = &self.elems;
        self.pairs.retain(|p| {
            if p.comp != hl.comp || !hl.mon.divides(&p.lcm) {
                return true;
            }
            let li = elems[p.i].lead().unwrap().mon.lcm(&hl.mon);
            let lj = elems[p.j].lead().unwrap().mon.lcm(&hl.mon);
            li == p.lcm || lj == p.lcm
        });
        for (g, l) in kept {
            let gl = self.lead(g);
            let sg = self.sugar[g] + l.degree() as i64 - gl.mon.degree() as i64;
            let sh = hs + l.degree() as i64 - hl.mon.degree() as i64;
            self.pairs.push(Pair { i: g, j: h, lcm: l, comp: hl.comp, sugar: sg.max(sh) });
        }
        let elems = &self.elems;
        self.active.retain(|&g| !(elems[g].lead().unwrap().comp == hl.comp && hl.mon.divides(&elems[g].lead().unwrap().mon)));
        self.active.push(h);
    }

    fn add(&mut self, v: Vector) {
        let v = v.monic();
        self.sugar.push(sugar_of(&v));
        self.elems.push(v);
        self.update(self.elems.len() - 1);
    }

    fn pop_pair(&mut self) -> Option<Pair> {
        if self.pairs.is_empty() {
            return None;
        }
        let ord = self.ord;
        let mut best = 0;
        for k in 1..self.pairs.len() {
            let (a, b) = (&self.pairs[k], &self.pairs[best]);
            let less = a.sugar.cmp(&b.sugar).then_with(|| ord.cmp((&a.lcm, a.comp), (&b.lcm, b.comp)));
            if less == Ordering::Less {
                best = k;
            }
        }
        Some(self.pairs.swap_remove(best))
    }

    fn normal_form(&self, f: &Vector) -> Vector {
        Reducer::new(self.active.iter().map(|&i| &self.elems[i])).reduce(f, self.ord, true)
    }
}

/// Reduced Groebner basis, sorted ascending by lead term.
///
/// Pair selection is by sugar degree, ties broken by the normal strategy
/// (smallest lcm first). On homogeneous input under a degree order this is the
/// normal strategy itself.
pub(crate) fn groebner(input: &[Vector], ord: &ModOrder, ideal_mode: bool) -> Vec<Vector> {
    let mut st = State { ord, ideal_mode, elems: Vec::new(), sugar: Vec::new(), active: Vec::new(), pairs: Vec::new() };
    let mut inputs: Vec<&Vector> = input.iter().filter(|v| !v.is_zero()).collect();
    inputs.sort_by(|a, b| {
        let (x, y) = (a.lead().unwrap(), b.lead().unwrap());
        ord.cmp((&x.mon, x.comp), (&y.mon, y.comp))
    });
    for f in inputs {
        let h = st.normal_form(f);
        if !h.is_zero() {
            st.add(h);
        }
    }
    while let Some(p) = st.pop_pair() {
        let s = s_vector(&st.elems[p.i], &st.elems[p.j], ord);
        let h = st.normal_form(&s);
        if !h.is_zero() {
            st.add(h);
        }
    }
    interreduce(st.active.iter().map(|&i| st.elems[i].clone()).collect(), ord)
}

/// Minimalizes and tail-reduces a Groebner basis; result is monic and sorted
/// ascending by lead.
pub(crate) fn interreduce(mut g: Vec<Vector>, ord: &ModOrder) -> Vec<Vector> {
    g.retain(|v| !v.is_zero());
    g.sort_by(|a, b| {
        let (x, y) = (a.lead().unwrap(), b.lead().unwrap());
        ord.cmp((&x.mon, x.comp), (&y.mon, y.comp))
    });
    let mut minimal: Vec<Vector> = Vec::new();
    for v in g {
        let l = v.lead().unwrap();
        if !minimal.iter().any(|w| {
            let wl = w.lead().unwrap();
            wl.comp == l.comp && wl.mon.divides(&l.mon)
        }) {
            minimal.push(v);
        }
    }
    for k in 0..minimal.len() {
        let reduced = {
            let others = Reducer::new(minimal.iter().enumerate().filter(|(j, _)| *j != k).map(|(_, v)| v));
            others.reduce(&minimal[k], ord, true)
        };
        minimal[k] = reduced.monic();
    }
    minimal
}

/// Buchberger criterion: every S-vector reduces to zero.
pub(crate) fn is_groebner(g: &[Vector], ord: &ModOrder) -> bool {
    let red = Reducer::new(g.iter());
    for i in 0..g.len() {
        for j in i + 1..g.len() {
            if g[i].lead().unwrap().comp != g[j].lead().unwrap().comp {
                continue;
            }
            if !red.reduce(&s_vector(&g[i], &g[j], ord), ord, false).is_zero() {
                return false;
            }
        }
    }
    true
}

pub(crate) fn unit_vector(nvars: usize, comp: usize) -> Vector {
    Vector { terms: vec![VTerm { mon: Monomial::one(nvars), comp: comp as u32, coeff: Rational::one() }] }
}
