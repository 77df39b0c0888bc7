//! Mora's tangent-cone standard basis algorithm over a generic field.
//!
//! Polynomials are sorted term lists with the leading (largest, i.e. lowest
//! degree) term first. Reduction uses the écart-driven normal form, so it
//! terminates for local orderings. When the leading ideal already contains
//! every monomial of some degree `D`, that power of the maximal ideal lies in
//! the ideal and all terms of degree `>= D` are discarded from then on.

use std::cmp::Ordering;

use super::OrderingKind;
use crate::error::{Error, Result};
use crate::field::Field;

pub(crate) const MAX_VARS: usize = 16;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub(crate) struct Exp {
    pub(crate) deg: u32,
    pub(crate) e: [u16; MAX_VARS],
}

impl Exp {
    pub(crate) fn one() -> Exp {
        Exp {
            deg: 0,
            e: [0; MAX_VARS],
        }
    }

    pub(crate) fn from_slice(exps: &[u32]) -> Result<Exp> {
        let mut e = [0u16; MAX_VARS];
        let mut deg = 0;
        for (i, &x) in exps.iter().enumerate() {
            e[i] = u16::try_from(x).map_err(|_| Error::BadInput("exponent too large".into()))?;
            deg += x;
        }
        Ok(Exp { deg, e })
    }

    fn mul(&self, o: &Exp) -> Exp {
        let mut e = self.e;
        for (a, b) in e.iter_mut().zip(&o.e) {
            *a += b;
        }
        Exp {
            deg: self.deg + o.deg,
            e,
        }
    }

    /// `self / o`, assuming `o` divides `self`.
    fn div(&self, o: &Exp) -> Exp {
        let mut e = self.e;
        for (a, b) in e.iter_mut().zip(&o.e) {
            *a -= b;
        }
        Exp {
            deg: self.deg - o.deg,
            e,
        }
    }

    pub(crate) fn divides(&self, o: &Exp) -> bool {
        self.deg <= o.deg && self.e.iter().zip(&o.e).all(|(a, b)| a <= b)
    }

    fn lcm(&self, o: &Exp) -> Exp {
        let mut e = [0u16; MAX_VARS];
        let mut deg = 0;
        for i in 0..MAX_VARS {
            e[i] = self.e[i].max(o.e[i]);
            deg += e[i] as u32;
        }
        Exp { deg, e }
    }

    fn coprime(&self, o: &Exp) -> bool {
        self.e.iter().zip(&o.e).all(|(a, b)| *a == 0 || *b == 0)
    }

    pub(crate) fn is_one(&self) -> bool {
        self.deg == 0
    }

    /// Index of the variable if this is a pure power `x_i^a`, `a > 0`.
    fn pure_power_var(&self) -> Option<usize> {
        let mut found = None;
        for (i, &x) in self.e.iter().enumerate() {
            if x > 0 {
                if found.is_some() {
                    return None;
                }
                found = Some(i);
            }
        }
        found
    }
}

/// Comparison in the local ordering: `Greater` means closer to `1`.
pub(crate) fn cmp_local(kind: OrderingKind, nv: usize, a: &Exp, b: &Exp) -> Ordering {
    if a.deg != b.deg {
        return b.deg.cmp(&a.deg);
    }
    match kind {
        OrderingKind::NegDegRevLex => {
            for i in (0..nv).rev() {
                if a.e[i] != b.e[i] {
                    return b.e[i].cmp(&a.e[i]);
                }
            }
            Ordering::Equal
        }
        OrderingKind::NegDegLex => {
            for i in 0..nv {
                if a.e[i] != b.e[i] {
                    return a.e[i].cmp(&b.e[i]);
                }
            }
            Ordering::Equal
        }
    }
}

pub(crate) type Terms<E> = Vec<(Exp, E)>;

#[derive(Clone, Debug)]
struct Elem<E> {
    poly: Terms<E>,
    ecart: u32,
    alive: bool,
    in_basis: bool,
}

impl<E> Elem<E> {
    fn lm(&self) -> &Exp {
        &self.poly[0].0
    }
}

fn ecart_of<E>(p: &Terms<E>) -> u32 {
    let top = p.iter().map(|(e, _)| e.deg).max().unwrap_or(0);
    top - p[0].0.deg
}

#[derive(Clone, Copy, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Exp,
}

pub(crate) struct Outcome<E> {
    pub(crate) basis: Vec<Terms<E>>,
    pub(crate) truncation: Option<u32>,
    pub(crate) steps: u64,
}

pub(crate) struct Mora<'a, F: Field> {
    field: &'a F,
    kind: OrderingKind,
    nv: usize,
    elems: Vec<Elem<F::Elem>>,
    pairs: Vec<Pair>,
    trunc: Option<u32>,
    steps: u64,
    max_steps: u64,
    unit: bool,
}

impl<'a, F: Field> Mora<'a, F> {
    pub(crate) fn new(field: &'a F, kind: OrderingKind, nv: usize, max_steps: u64) -> Self {
        Mora {
            field,
            kind,
            nv,
            elems: Vec::new(),
            pairs: Vec::new(),
            trunc: None,
            steps: 0,
            max_steps,
            unit: false,
        }
    }

    /// Works modulo `m^d` from the start: every term of degree `>= d` is
    /// dropped, so all reductions happen in a finite-dimensional space.
    pub(crate) fn with_truncation(mut self, d: u32) -> Self {
        self.trunc = Some(d);
        self
    }

    pub(crate) fn sort_terms(&self, p: &mut Terms<F::Elem>) {
        let (kind, nv) = (self.kind, self.nv);
        p.sort_by(|a, b| cmp_local(kind, nv, &b.0, &a.0));
    }

    fn cmp(&self, a: &Exp, b: &Exp) -> Ordering {
        cmp_local(self.kind, self.nv, a, b)
    }

    /// `h - c * m * g`, merging two sorted term lists.
    fn sub_mul(
        &self,
        h: &Terms<F::Elem>,
        c: &F::Elem,
        m: &Exp,
        g: &Terms<F::Elem>,
    ) -> Terms<F::Elem> {
        let f = self.field;
        let mut out = Vec::with_capacity(h.len() + g.len());
        let mut hi = h.iter().peekable();
        let mut gi = g.iter().map(|(e, a)| (e.mul(m), a)).peekable();
        loop {
            match (hi.peek(), gi.peek()) {
                (None, None) => break,
                (Some(_), None) => out.push(hi.next().unwrap().clone()),
                (None, Some(_)) => {
                    let (e, a) = gi.next().unwrap();
                    out.push((e, f.neg(&f.mul(c, a))));
                }
                (Some((he, _)), Some((ge, _))) => match self.cmp(he, ge) {
                    Ordering::Greater => out.push(hi.next().unwrap().clone()),
                    Ordering::Less => {
                        let (e, a) = gi.next().unwrap();
                        out.push((e, f.neg(&f.mul(c, a))));
                    }
                    Ordering::Equal => {
                        let (e, ha) = hi.next().unwrap();
                        let (_, ga) = gi.next().unwrap();
                        let v = f.sub(ha, &f.mul(c, ga));
                        if !f.is_zero(&v) {
                            out.push((*e, v));
                        }
                    }
                },
            }
        }
        if let Some(d) = self.trunc {
            out.retain(|(e, _)| e.deg < d);
        }
        out
    }

    fn make_monic(&self, p: &mut Terms<F::Elem>) {
        let inv = self.field.inv(&p[0].1);
        for t in p.iter_mut() {
            t.1 = self.field.mul(&t.1, &inv);
        }
    }

    fn tick(&mut self) -> Result<()> {
        self.steps += 1;
        if self.steps > self.max_steps {
            return Err(Error::ResourceLimit(self.max_steps));
        }
        Ok(())
    }

    /// Mora's weak normal form of `h` with respect to the alive elements.
    fn normal_form(&mut self, mut h: Terms<F::Elem>) -> Result<Terms<F::Elem>> {
        let mut extra: Vec<(Terms<F::Elem>, u32)> = Vec::new();
        loop {
            if let Some(d) = self.trunc {
                h.retain(|(e, _)| e.deg < d);
            }
            if h.is_empty() {
                return Ok(h);
            }
            let lm = h[0].0;
            // candidate reducer with minimal écart: (écart, source, index)
            let mut best: Option<(u32, bool, usize)> = None;
            for (idx, el) in self.elems.iter().enumerate() {
                if el.alive && el.lm().divides(&lm) && best.map_or(true, |b| el.ecart < b.0) {
                    best = Some((el.ecart, false, idx));
                }
            }
            for (idx, (p, ec)) in extra.iter().enumerate() {
                if p[0].0.divides(&lm) && best.map_or(true, |b| *ec < b.0) {
                    best = Some((*ec, true, idx));
                }
            }
            let Some((g_ecart, from_extra, idx)) = best else {
                return Ok(h);
            };
            self.tick()?;
            let h_ecart = ecart_of(&h);
            let g = if from_extra {
                extra[idx].0.clone()
            } else {
                self.elems[idx].poly.clone()
            };
            if g_ecart > h_ecart {
                extra.push((h.clone(), h_ecart));
            }
            let c = self.field.mul(&h[0].1, &self.field.inv(&g[0].1));
            let m = lm.div(&g[0].0);
            h = self.sub_mul(&h, &c, &m, &g);
        }
    }

    fn spoly(&self, p: &Pair) -> Terms<F::Elem> {
        let a = &self.elems[p.i].poly;
        let b = &self.elems[p.j].poly;
        // elements are monic
        let ma = p.lcm.div(&a[0].0);
        let mb = p.lcm.div(&b[0].0);
        let one = self.field.one();
        let zero: Terms<F::Elem> = Vec::new();
        let left = self.sub_mul(&zero, &self.field.neg(&one), &ma, a);
        self.sub_mul(&left, &one, &mb, b)
    }

    /// Gebauer–Möller pair update for a new element `h`.
    fn update_pairs(&mut self, h: usize) {
        let lm_h = *self.elems[h].lm();
        let basis: Vec<usize> = (0..h)
            .filter(|&i| self.elems[i].alive && self.elems[i].in_basis)
            .collect();
        let cands: Vec<(usize, Exp, bool)> = basis
            .iter()
            .map(|&g| {
                let lm = self.elems[g].lm();
                (g, lm_h.lcm(lm), lm_h.coprime(lm))
            })
            .collect();
        let n = cands.len();
        // chain criterion among the new pairs: a proper divisor of the lcm wins
        let mut keep: Vec<bool> = (0..n)
            .map(|a| !(0..n).any(|b| cands[b].1 != cands[a].1 && cands[b].1.divides(&cands[a].1)))
            .collect();
        // equal lcms: one representative survives, none if any is coprime
        for a in 0..n {
            if !keep[a] {
                continue;
            }
            let class: Vec<usize> = (0..n)
                .filter(|&b| keep[b] && cands[b].1 == cands[a].1)
                .collect();
            let drop_all = class.iter().any(|&b| cands[b].2);
            for &b in &class {
                keep[b] = !drop_all && b == class[0];
            }
        }
        // drop old pairs whose lcm is strictly divisible by lm(h)
        let elems = &self.elems;
        self.pairs.retain(|p| {
            if !elems[p.i].alive || !elems[p.j].alive {
                return false;
            }
            if !lm_h.divides(&p.lcm) {
                return true;
            }
            let li = lm_h.lcm(elems[p.i].lm());
            let lj = lm_h.lcm(elems[p.j].lm());
            li == p.lcm || lj == p.lcm
        });
        for (k, (g, l, coprime)) in cands.into_iter().enumerate() {
            if keep[k] && !coprime {
                self.pairs.push(Pair { i: g, j: h, lcm: l });
            }
        }
        for &g in &basis {
            if lm_h.divides(self.elems[g].lm()) {
                self.elems[g].in_basis = false;
            }
        }
    }

    fn insert(&mut self, mut h: Terms<F::Elem>) {
        self.make_monic(&mut h);
        if h[0].0.is_one() {
            self.unit = true;
            return;
        }
        let ecart = ecart_of(&h);
        self.elems.push(Elem {
            poly: h,
            ecart,
            alive: true,
            in_basis: true,
        });
        let idx = self.elems.len() - 1;
        self.update_pairs(idx);
        self.update_corner();
    }

    fn leading_monomials(&self) -> Vec<Exp> {
        self.elems
            .iter()
            .filter(|e| e.alive && e.in_basis)
            .map(|e| *e.lm())
            .collect()
    }

    /// Tightens the truncation degree once the staircase is finite.
    fn update_corner(&mut self) {
        let lms = self.leading_monomials();
        let Some((_, maxdeg)) = count_standard(&lms, self.nv, self.trunc, 1 << 20) else {
            return;
        };
        let d = maxdeg + 1;
        if self.trunc.map_or(true, |t| d < t) {
            self.trunc = Some(d);
            for el in self.elems.iter_mut().filter(|e| e.alive) {
                el.poly.retain(|(e, _)| e.deg < d);
                if el.poly.is_empty() {
                    el.alive = false;
                } else {
                    el.ecart = ecart_of(&el.poly);
                }
            }
        }
    }

    pub(crate) fn run(mut self, gens: Vec<Terms<F::Elem>>) -> Result<Outcome<F::Elem>> {
        let mut gens: Vec<Terms<F::Elem>> = gens.into_iter().filter(|g| !g.is_empty()).collect();
        gens.sort_by(|a, b| self.cmp(&b[0].0, &a[0].0).then(a.len().cmp(&b.len())));
        for g in gens {
            let h = self.normal_form(g)?;
            if !h.is_empty() {
                self.insert(h);
                if self.unit {
                    return Ok(self.unit_outcome());
                }
            }
        }
        while !self.pairs.is_empty() {
            let best = (0..self.pairs.len())
                .min_by(|&a, &b| {
                    let (pa, pb) = (&self.pairs[a], &self.pairs[b]);
                    pa.lcm
                        .deg
                        .cmp(&pb.lcm.deg)
                        .then_with(|| self.cmp(&pb.lcm, &pa.lcm))
                        .then_with(|| (pa.j, pa.i).cmp(&(pb.j, pb.i)))
                })
                .unwrap();
            let pair = self.pairs.swap_remove(best);
            if !self.elems[pair.i].alive || !self.elems[pair.j].alive {
                continue;
            }
            if let Some(d) = self.trunc {
                if pair.lcm.deg >= d {
                    continue;
                }
            }
            let s = self.spoly(&pair);
            let h = self.normal_form(s)?;
            if !h.is_empty() {
                self.insert(h);
                if self.unit {
                    return Ok(self.unit_outcome());
                }
            }
        }
        self.update_corner();
        let mut basis: Vec<Terms<F::Elem>> = self
            .elems
            .iter()
            .filter(|e| e.alive && e.in_basis)
            .map(|e| e.poly.clone())
            .collect();
        if let Some(d) = self.trunc {
            let lms: Vec<Exp> = basis.iter().map(|p| p[0].0).collect();
            for m in monomials_of_degree(self.nv, d) {
                if !lms.iter().any(|l| l.divides(&m)) {
                    basis.push(vec![(m, self.field.one())]);
                }
            }
        }
        // minimal: drop elements whose leading monomial is divisible by another's
        let lms: Vec<Exp> = basis.iter().map(|p| p[0].0).collect();
        let mut minimal = Vec::new();
        for (i, p) in basis.into_iter().enumerate() {
            let redundant = lms
                .iter()
                .enumerate()
                .any(|(j, l)| j != i && l.divides(&lms[i]) && (*l != lms[i] || j < i));
            if !redundant {
                minimal.push(p);
            }
        }
        minimal.sort_by(|a, b| self.cmp(&b[0].0, &a[0].0));
        Ok(Outcome {
            basis: minimal,
            truncation: self.trunc,
            steps: self.steps,
        })
    }

    fn unit_outcome(&self) -> Outcome<F::Elem> {
        Outcome {
            basis: vec![vec![(Exp::one(), self.field.one())]],
            truncation: None,
            steps: self.steps,
        }
    }
}

fn monomials_of_degree(nv: usize, d: u32) -> Vec<Exp> {
    fn rec(i: usize, nv: usize, left: u32, cur: &mut Exp, out: &mut Vec<Exp>) {
        if i + 1 == nv {
            cur.e[i] = left as u16;
            out.push(*cur);
            cur.e[i] = 0;
            return;
        }
        for a in (0..=left).rev() {
            cur.e[i] = a as u16;
            rec(i + 1, nv, left - a, cur, out);
        }
        cur.e[i] = 0;
    }
    let mut out = Vec::new();
    if nv == 0 {
        if d == 0 {
            out.push(Exp::one());
        }
        return out;
    }
    let mut cur = Exp::one();
    cur.deg = d;
    rec(0, nv, d, &mut cur, &mut out);
    out
}

/// Number and maximal degree of the standard monomials (not divisible by any
/// of `lms`, and of degree below `trunc` when given).
///
/// `None` when the staircase is infinite or larger than `cap`.
/// Number of monomials in `nv` variables of degree below `d`.
pub(crate) fn monomials_below(nv: usize, d: u32) -> u64 {
    // binomial(nv + d - 1, nv), saturating
    let mut acc: u128 = 1;
    for i in 1..=nv as u128 {
        acc = acc * (d as u128 - 1 + i) / i;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

pub(crate) fn count_standard(
    lms: &[Exp],
    nv: usize,
    trunc: Option<u32>,
    cap: u64,
) -> Option<(u64, u32)> {
    if lms.iter().any(Exp::is_one) {
        return Some((0, 0));
    }
    if trunc.is_none() {
        let mut has_power = vec![false; nv];
        for l in lms {
            if let Some(i) = l.pure_power_var() {
                has_power[i] = true;
            }
        }
        if has_power.iter().any(|h| !h) {
            return None;
        }
    }
    // each standard monomial is reached once by only raising variables with
    // index >= the last raised one; divisors of standard monomials are standard
    let mut count = 0u64;
    let mut maxdeg = 0u32;
    let mut stack = vec![(Exp::one(), 0usize)];
    while let Some((m, start)) = stack.pop() {
        count += 1;
        if count > cap {
            return None;
        }
        maxdeg = maxdeg.max(m.deg);
        for i in start..nv {
            let mut c = m;
            c.e[i] += 1;
            c.deg += 1;
            if trunc.map_or(false, |t| c.deg >= t) {
                continue;
            }
            if !lms.iter().any(|l| l.divides(&c)) {
                stack.push((c, i));
            }
        }
    }
    Some((count, maxdeg))
}
