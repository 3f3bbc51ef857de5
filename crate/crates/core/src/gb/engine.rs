//! Buchberger's algorithm with the Gebauer–Möller criteria; Mora's weak
//! normal form for non-global orders.

use alloc::vec::Vec;

use num_traits::{One, Zero};

use super::order::{Kind, ModuleOrder};
use super::vector::{Term, Vector};
use crate::algebra::{Monomial, Rational};

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    comp: u32,
    lcm: Monomial,
    deg: i64,
    sugar: i64,
}

#[inline]
fn divides(a: &Term, b: &Term) -> bool {
    a.comp == b.comp && a.mon.divides(&b.mon)
}

fn spoly(f: &Vector, g: &Vector, ord: &ModuleOrder) -> Vector {
    let (lf, lg) = (f.lead(), g.lead());
    let l = lf.mon.lcm(&lg.mon);
    let mf = lf.mon.quotient(&l).unwrap();
    let mg = lg.mon.quotient(&l).unwrap();
    // Both inputs are monic.
    let zero = Vector::default();
    let a = zero.sub_mul(&-Rational::one(), &mf, ord.mon_degree(&mf), f, ord);
    a.sub_mul(&Rational::one(), &mg, ord.mon_degree(&mg), g, ord)
}

/// Reducer for a single leading term.
#[inline]
fn reduce_step(h: &Vector, g: &Vector, ord: &ModuleOrder) -> (Rational, Monomial, Vector) {
    let (lh, lg) = (h.lead(), g.lead());
    let m = lg.mon.quotient(&lh.mon).unwrap();
    let c = &lh.coef / &lg.coef;
    let r = h.sub_mul(&c, &m, ord.mon_degree(&m), g, ord);
    (c, m, r)
}

/// Full normal form for global (well-founded) orders.
pub(crate) fn nf_global(f: &Vector, basis: &[&Vector], ord: &ModuleOrder, tail: bool) -> Vector {
    let mut h = f.clone();
    let mut rem: Vec<Term> = Vec::new();
    while !h.is_zero() {
        let lh = h.lead();
        match basis.iter().find(|g| divides(g.lead(), lh)) {
            Some(g) => h = reduce_step(&h, g, ord).2,
            None => {
                if !tail {
                    break;
                }
                rem.push(h.terms.remove(0));
            }
        }
    }
    if tail {
        Vector { terms: rem }
    } else {
        h
    }
}

/// Mora's weak normal form: `r` with `u · f - r` in the module generated by
/// `basis` for some unit `u` of the local ring.
///
/// Termination is guaranteed but can take very long when tails keep growing,
/// so callers pass a work budget and fall back to other methods on `None`.
pub(crate) fn nf_mora(f: &Vector, basis: &[&Vector], ord: &ModuleOrder, budget: usize) -> Option<Vector> {
    let mut h = f.clone();
    // Work is counted in terms touched, since intermediate vectors can grow.
    let mut work = 0usize;
    let ecarts: Vec<i64> = basis.iter().map(|g| g.ecart()).collect();
    // Elements of the working set beyond `basis`, with their ecarts.
    let mut extra: Vec<(Vector, i64)> = Vec::new();
    while !h.is_zero() {
        work = work.saturating_add(h.terms.len());
        if work > budget {
            return None;
        }
        let lh = h.lead().clone();
        let mut best: Option<(i64, usize)> = None;
        for (i, g) in basis.iter().enumerate() {
            if divides(g.lead(), &lh) && best.is_none_or(|(e, _)| ecarts[i] < e) {
                best = Some((ecarts[i], i));
                if ecarts[i] == 0 {
                    break;
                }
            }
        }
        if best.is_none_or(|(e, _)| e > 0) {
            for (k, (g, e)) in extra.iter().enumerate() {
                if divides(g.lead(), &lh) && best.is_none_or(|(b, _)| *e < b) {
                    best = Some((*e, basis.len() + k));
                }
            }
        }
        let Some((eg, idx)) = best else { break };
        let eh = h.ecart();
        if eg > eh {
            extra.push((h.clone(), eh));
        }
        let g = if idx < basis.len() { basis[idx] } else { &extra[idx - basis.len()].0 };
        h = reduce_step(&h, g, ord).2;
    }
    Some(h)
}

/// Normal form under either kind of order. For global orders the result is
/// fully reduced; for local orders it is Mora's weak normal form, or `None`
/// when the work budget runs out.
pub(crate) fn normal_form(f: &Vector, basis: &[&Vector], ord: &ModuleOrder, budget: usize) -> Option<Vector> {
    if ord.is_global() {
        Some(nf_global(f, basis, ord, true))
    } else {
        nf_mora(f, basis, ord, budget)
    }
}

struct Builder<'a> {
    ord: &'a ModuleOrder,
    store: Vec<Vector>,
    sugar: Vec<i64>,
    active: Vec<bool>,
    pairs: Vec<Pair>,
}

impl<'a> Builder<'a> {
    fn lcm_pair(&self, i: usize, j: usize) -> Pair {
        let (a, b) = (self.store[i].lead(), self.store[j].lead());
        let lcm = a.mon.lcm(&b.mon);
        let deg = self.ord.term_degree(a.comp, &lcm);
        let sugar = (self.sugar[i] + deg - a.deg).max(self.sugar[j] + deg - b.deg);
        Pair { i, j, comp: a.comp, lcm, deg, sugar }
    }

    fn coprime(&self, i: usize, j: usize) -> bool {
        // Only valid for ideals under a well-order.
        if self.ord.rank() != 1 || !self.ord.is_global() {
            return false;
        }
        let (a, b) = (&self.store[i].lead().mon, &self.store[j].lead().mon);
        a.mul(b) == a.lcm(b)
    }

    /// Gebauer–Möller update with the new element `h` at index `n`.
    fn update(&mut self, h: Vector, sugar: i64) {
        let n = self.store.len();
        let hl = h.lead().clone();
        self.sugar.push(sugar.max(h.terms.iter().map(|t| t.deg).max().unwrap()));
        self.store.push(h);
        self.active.push(true);

        let mut cands: Vec<(Pair, bool)> = Vec::new();
        for g in 0..n {
            if self.active[g] && self.store[g].lead().comp == hl.comp {
                let p = self.lcm_pair(g, n);
                let cp = self.coprime(g, n);
                cands.push((p, cp));
            }
        }
        // M and F criteria: keep a pair only if no other candidate's lcm
        // properly divides it, and keep one pair per lcm.
        let mut kept: Vec<(Pair, bool)> = Vec::new();
        for (k, (p, cp)) in cands.iter().enumerate() {
            let dominated = cands
                .iter()
                .enumerate()
                .any(|(l, (q, _))| l != k && q.lcm.divides(&p.lcm) && (q.lcm != p.lcm || l < k));
            let dup_coprime = cands.iter().any(|(q, qcp)| q.lcm == p.lcm && *qcp && !*cp);
            if !dominated && !dup_coprime {
                kept.push((p.clone(), *cp));
            }
        }
        // Chain criterion on old pairs.
        let store = &self.store;
        self.pairs.retain(|p| {
            if p.comp != hl.comp || !hl.mon.divides(&p.lcm) {
                return true;
            }
            let li = store[p.i].lead().mon.lcm(&hl.mon);
            let lj = store[p.j].lead().mon.lcm(&hl.mon);
            li == p.lcm || lj == p.lcm
        });
        for (p, cp) in kept {
            if !cp {
                self.pairs.push(p);
            }
        }
        for g in 0..n {
            if self.active[g] && divides(&hl, self.store[g].lead()) {
                self.active[g] = false;
            }
        }
    }

    fn pop_pair(&mut self) -> Option<Pair> {
        let best = self
            .pairs
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| {
                (a.sugar, a.deg)
                    .cmp(&(b.sugar, b.deg))
                    .then_with(|| (a.comp, a.lcm).cmp(&(b.comp, b.lcm)))
                    .then_with(|| (a.i, a.j).cmp(&(b.i, b.j)))
            })
            .map(|(k, _)| k)?;
        Some(self.pairs.swap_remove(best))
    }

    fn reducers(&self) -> Vec<&Vector> {
        self.store.iter().zip(self.active.iter()).filter(|(_, &a)| a).map(|(v, _)| v).collect()
    }
}

/// Standard basis of the module generated by `gens`. Under a global order the
/// result is the reduced Gröbner basis; under a local order it is a minimal
/// standard basis with monic leading terms. Output is sorted ascending by
/// leading term.
pub(crate) fn standard_basis(gens: &[Vector], ord: &ModuleOrder) -> Vec<Vector> {
    if ord.kind != Kind::Local {
        return buchberger(gens, ord, ord.kind == Kind::Global);
    }
    // Lazard: a Gröbner basis of the homogenized module under the
    // homogenized order dehomogenizes to a standard basis.
    let hord = ord.homogenized();
    let t = ord.nvars;
    let hgens: Vec<Vector> = gens
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| {
            let top = g.terms.iter().map(|x| x.deg).max().unwrap();
            let mut v = Vector {
                terms: g
                    .terms
                    .iter()
                    .map(|x| {
                        let mon = x.mon.mul(&Monomial::var_pow(t, (top - x.deg) as u16));
                        Term { comp: x.comp, mon, deg: top, coef: x.coef.clone() }
                    })
                    .collect(),
            };
            v.sort(&hord);
            v
        })
        .collect();
    let hb = buchberger(&hgens, &hord, false);
    let mut out: Vec<Vector> = Vec::with_capacity(hb.len());
    for h in hb {
        let mut terms: Vec<Term> = h
            .terms
            .into_iter()
            .map(|x| {
                let mut e = *x.mon.exponents();
                e[t] = 0;
                let mon = Monomial::from_exponents(&e);
                Term { comp: x.comp, mon, deg: ord.term_degree(x.comp, &mon), coef: x.coef }
            })
            .collect();
        terms.sort_by(|a, b| ord.cmp(b.comp, &b.mon, b.deg, a.comp, &a.mon, a.deg));
        let mut merged: Vec<Term> = Vec::with_capacity(terms.len());
        for x in terms {
            match merged.last_mut() {
                Some(l) if l.comp == x.comp && l.mon == x.mon => l.coef += x.coef,
                _ => merged.push(x),
            }
        }
        merged.retain(|x| !x.coef.is_zero());
        let mut v = Vector { terms: merged };
        if !v.is_zero() {
            v.make_monic();
            out.push(v);
        }
    }
    let out = minimalize(out);
    sorted(out, ord)
}

fn minimalize(v: Vec<Vector>) -> Vec<Vector> {
    let mut out = Vec::with_capacity(v.len());
    for (i, g) in v.iter().enumerate() {
        let li = g.lead();
        let redundant = v.iter().enumerate().any(|(j, h)| {
            let lj = h.lead();
            j != i && divides(lj, li) && (lj.mon != li.mon || j < i)
        });
        if !redundant {
            out.push(g.clone());
        }
    }
    out
}

fn sorted(mut out: Vec<Vector>, ord: &ModuleOrder) -> Vec<Vector> {
    out.sort_by(|x, y| {
        let (a, c) = (x.lead(), y.lead());
        ord.cmp(a.comp, &a.mon, a.deg, c.comp, &c.mon, c.deg)
    });
    out
}

/// Buchberger's algorithm for well-founded orders; `tails` requests the
/// reduced basis.
fn buchberger(gens: &[Vector], ord: &ModuleOrder, tails: bool) -> Vec<Vector> {
    let mut b = Builder { ord, store: Vec::new(), sugar: Vec::new(), active: Vec::new(), pairs: Vec::new() };
    let mut input: Vec<Vector> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
    input.sort_by(|x, y| {
        let (a, c) = (x.lead(), y.lead());
        ord.cmp(a.comp, &a.mon, a.deg, c.comp, &c.mon, c.deg)
    });
    for g in input {
        let reducers = b.reducers();
        let mut h = nf_global(&g, &reducers, ord, false);
        if !h.is_zero() {
            h.make_monic();
            b.update(h, i64::MIN);
        }
    }
    while let Some(p) = b.pop_pair() {
        let s = spoly(&b.store[p.i], &b.store[p.j], ord);
        if s.is_zero() {
            continue;
        }
        let reducers = b.reducers();
        let mut h = nf_global(&s, &reducers, ord, false);
        if !h.is_zero() {
            h.make_monic();
            b.update(h, p.sugar);
        }
    }
    let act: Vec<Vector> = (0..b.store.len()).filter(|&i| b.active[i]).map(|i| b.store[i].clone()).collect();
    let mut out = minimalize(act);
    if tails {
        for k in 0..out.len() {
            let head = out[k].terms[0].clone();
            let tail = Vector { terms: out[k].terms[1..].to_vec() };
            let others: Vec<&Vector> = out.iter().enumerate().filter(|(l, _)| *l != k).map(|(_, v)| v).collect();
            let t = nf_global(&tail, &others, ord, true);
            let mut terms = alloc::vec![head];
            terms.extend(t.terms);
            out[k] = Vector { terms };
        }
    }
    sorted(out, ord)
}

/// Every S-polynomial of `basis` reduces to zero. Membership of the
/// S-polynomials is decided independently of the construction: by division
/// for global orders and by Mora's normal form for local ones.
pub(crate) fn is_standard_basis(basis: &[Vector], ord: &ModuleOrder) -> bool {
    let refs: Vec<&Vector> = basis.iter().collect();
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            if basis[i].lead().comp != basis[j].lead().comp {
                continue;
            }
            let mut a = basis[i].clone();
            let mut b = basis[j].clone();
            a.make_monic();
            b.make_monic();
            let s = spoly(&a, &b, ord);
            match normal_form(&s, &refs, ord, usize::MAX) {
                Some(r) if r.is_zero() => {}
                _ => return false,
            }
        }
    }
    true
}
