//! Buchberger loop over fraction-free coefficients.
//!
//! Pairs are selected by the normal strategy (smallest sugar degree, then the
//! smaller lcm, then creation order). All pairs of the current degree form a
//! batch that is reduced against a frozen snapshot of the basis, possibly in
//! parallel; results are then committed one at a time in batch order, so the
//! output does not depend on the worker count.

use std::cmp::Ordering;
use std::sync::atomic::{AtomicBool, Ordering as AtomicOrdering};
use std::sync::Arc;
use std::time::Instant;

use rayon::prelude::*;

use crate::polyring::{Monomial, MonomialOrder, ReductionDomain};

use super::{GbError, GbOptions, GbStats, PairStrategy};

pub(crate) type Terms<C> = Vec<(Monomial, C)>;

pub(crate) struct Element<C> {
    pub terms: Terms<C>,
    pub mask: u64,
    pub sugar: u32,
    pub active: bool,
}

impl<C> Element<C> {
    fn lm(&self) -> &Monomial {
        &self.terms[0].0
    }
}

#[derive(Clone, Debug)]
enum Item {
    Input(usize),
    Pair(usize, usize),
}

#[derive(Clone, Debug)]
struct Pending {
    item: Item,
    lcm: Monomial,
    sugar: u32,
    seq: u64,
}

struct Reducer {
    mask: u64,
    idx: usize,
}

/// Budget checks shared with worker threads.
pub(crate) struct Budget {
    deadline: Option<Instant>,
    cancel: Option<Arc<AtomicBool>>,
    tripped: AtomicBool,
}

impl Budget {
    pub fn new(opts: &GbOptions) -> Self {
        Budget {
            deadline: opts.timeout.map(|d| Instant::now() + d),
            cancel: opts.cancel.clone(),
            tripped: AtomicBool::new(false),
        }
    }

    pub fn check(&self) -> Result<(), GbError> {
        if let Some(c) = &self.cancel {
            if c.load(AtomicOrdering::Relaxed) {
                self.tripped.store(true, AtomicOrdering::Relaxed);
                return Err(GbError::Cancelled);
            }
        }
        if let Some(d) = self.deadline {
            if Instant::now() >= d {
                self.tripped.store(true, AtomicOrdering::Relaxed);
                return Err(GbError::Timeout);
            }
        }
        Ok(())
    }

    fn tripped(&self) -> bool {
        self.tripped.load(AtomicOrdering::Relaxed)
    }
}

/// `a*p - b*m*g` where the leading terms of `p` and `m*g` are already removed.
fn sub_mul<D: ReductionDomain>(
    dom: &D,
    ord: MonomialOrder,
    a: Option<&D::C>,
    p: &[(Monomial, D::C)],
    b: &D::C,
    m: &Monomial,
    g: &[(Monomial, D::C)],
) -> Terms<D::C> {
    let mut out = Vec::with_capacity(p.len() + g.len());
    let scale = |c: &D::C| match a {
        Some(a) => dom.mul(a, c),
        None => c.clone(),
    };
    let (mut i, mut j) = (0, 0);
    let mut gm: Option<Monomial> = g.first().map(|t| t.0.mul(m));
    while i < p.len() {
        let Some(cur) = gm.as_ref() else { break };
        match ord.cmp(&p[i].0, cur) {
            Ordering::Greater => {
                out.push((p[i].0.clone(), scale(&p[i].1)));
                i += 1;
            }
            Ordering::Less => {
                out.push((gm.take().unwrap(), dom.neg(&dom.mul(b, &g[j].1))));
                j += 1;
                gm = g.get(j).map(|t| t.0.mul(m));
            }
            Ordering::Equal => {
                let c = dom.sub(&scale(&p[i].1), &dom.mul(b, &g[j].1));
                if !dom.is_zero(&c) {
                    out.push((gm.take().unwrap(), c));
                }
                i += 1;
                j += 1;
                gm = g.get(j).map(|t| t.0.mul(m));
            }
        }
    }
    for t in &p[i..] {
        out.push((t.0.clone(), scale(&t.1)));
    }
    if let Some(cur) = gm {
        out.push((cur, dom.neg(&dom.mul(b, &g[j].1))));
        for t in &g[j + 1..] {
            out.push((t.0.mul(m), dom.neg(&dom.mul(b, &t.1))));
        }
    }
    out
}

fn find_reducer<'a, C>(reducers: &[Reducer], elems: &'a [Element<C>], mon: &Monomial, mask: u64) -> Option<&'a Element<C>> {
    reducers
        .iter()
        .filter(|r| r.mask & !mask == 0)
        .map(|r| &elems[r.idx])
        .find(|e| e.lm().divides(mon))
}

/// Full reduction of `p` by the reducers; the result is primitive/monic.
/// Returns `None` when the budget tripped mid-way.
fn reduce_full<D: ReductionDomain>(
    dom: &D,
    ord: MonomialOrder,
    mut p: Terms<D::C>,
    reducers: &[Reducer],
    elems: &[Element<D::C>],
    budget: &Budget,
    steps: &mut u64,
) -> Option<Terms<D::C>> {
    let mut pos = 0;
    let mut scaled_since_normalize = 0u32;
    while pos < p.len() {
        let mask = p[pos].0.divmask();
        match find_reducer(reducers, elems, &p[pos].0, mask) {
            Some(g) => {
                let m = g.lm().quotient_of(&p[pos].0).expect("divisor");
                let (a, b) = dom.cancel(&p[pos].1, &g.terms[0].1);
                let tail = sub_mul(dom, ord, a.as_ref(), &p[pos + 1..], &b, &m, &g.terms[1..]);
                if let Some(a) = &a {
                    for t in &mut p[..pos] {
                        t.1 = dom.mul(&t.1, a);
                    }
                    scaled_since_normalize += 1;
                }
                p.truncate(pos);
                p.extend(tail);
                *steps += 1;
                if scaled_since_normalize >= 8 {
                    let mut coeffs: Vec<D::C> = p.iter().map(|t| t.1.clone()).collect();
                    dom.normalize(&mut coeffs);
                    for (t, c) in p.iter_mut().zip(coeffs) {
                        t.1 = c;
                    }
                    scaled_since_normalize = 0;
                }
                if (*steps).is_multiple_of(512) && (budget.tripped() || budget.check().is_err()) {
                    return None;
                }
            }
            None => pos += 1,
        }
    }
    normalize_terms(dom, &mut p);
    Some(p)
}

pub(crate) fn normalize_terms<D: ReductionDomain>(dom: &D, p: &mut Terms<D::C>) {
    let mut coeffs: Vec<D::C> = p.iter().map(|t| t.1.clone()).collect();
    dom.normalize(&mut coeffs);
    for (t, c) in p.iter_mut().zip(coeffs) {
        t.1 = c;
    }
}

fn spoly<D: ReductionDomain>(dom: &D, ord: MonomialOrder, f: &Element<D::C>, g: &Element<D::C>, lcm: &Monomial) -> Terms<D::C> {
    let mf = f.lm().quotient_of(lcm).expect("lcm");
    let mg = g.lm().quotient_of(lcm).expect("lcm");
    let (a, b) = dom.cancel(&f.terms[0].1, &g.terms[0].1);
    // a*mf*f - b*mg*g, leading terms cancel
    let fm: Terms<D::C> = f.terms[1..].iter().map(|t| (t.0.mul(&mf), t.1.clone())).collect();
    sub_mul(dom, ord, a.as_ref(), &fm, &b, &mg, &g.terms[1..])
}

pub(crate) struct Engine<D: ReductionDomain> {
    dom: D,
    ord: MonomialOrder,
    elems: Vec<Element<D::C>>,
    inputs: Vec<Terms<D::C>>,
    queue: Vec<Pending>,
    seq: u64,
    pub stats: GbStats,
}

impl<D: ReductionDomain> Engine<D> {
    pub fn new(dom: D, ord: MonomialOrder, inputs: Vec<Terms<D::C>>) -> Self {
        let mut eng = Engine {
            dom,
            ord,
            elems: Vec::new(),
            inputs: Vec::new(),
            queue: Vec::new(),
            seq: 0,
            stats: GbStats::default(),
        };
        for mut p in inputs {
            if p.is_empty() {
                continue;
            }
            normalize_terms(&eng.dom, &mut p);
            let sugar = p.iter().map(|t| t.0.degree()).max().unwrap_or(0);
            let lcm = p[0].0.clone();
            let idx = eng.inputs.len();
            eng.inputs.push(p);
            eng.push(Item::Input(idx), lcm, sugar);
        }
        eng
    }

    fn push(&mut self, item: Item, lcm: Monomial, sugar: u32) {
        self.queue.push(Pending {
            item,
            lcm,
            sugar,
            seq: self.seq,
        });
        self.seq += 1;
    }

    fn reducers(&self) -> Vec<Reducer> {
        self.elems
            .iter()
            .enumerate()
            .filter(|(_, e)| e.active)
            .map(|(idx, e)| Reducer { mask: e.mask, idx })
            .collect()
    }

    fn select_batch(&mut self, strategy: PairStrategy) -> Vec<Pending> {
        match strategy {
            PairStrategy::Normal => {
                let min = self.queue.iter().map(|p| p.sugar).min().expect("nonempty queue");
                let (mut batch, rest): (Vec<_>, Vec<_>) = self.queue.drain(..).partition(|p| p.sugar == min);
                self.queue = rest;
                let ord = self.ord;
                batch.sort_by(|a, b| ord.cmp(&a.lcm, &b.lcm).then(a.seq.cmp(&b.seq)));
                batch
            }
            PairStrategy::Fifo => {
                let pos = self
                    .queue
                    .iter()
                    .enumerate()
                    .min_by_key(|(_, p)| p.seq)
                    .map(|(i, _)| i)
                    .expect("nonempty queue");
                vec![self.queue.swap_remove(pos)]
            }
        }
    }

    fn materialize(&self, p: &Pending) -> Terms<D::C> {
        match p.item {
            Item::Input(i) => self.inputs[i].clone(),
            Item::Pair(i, j) => spoly(&self.dom, self.ord, &self.elems[i], &self.elems[j], &p.lcm),
        }
    }

    pub fn run(&mut self, opts: &GbOptions) -> Result<(), GbError> {
        let budget = Budget::new(opts);
        let pool = if opts.threads > 1 {
            Some(
                rayon::ThreadPoolBuilder::new()
                    .num_threads(opts.threads)
                    .build()
                    .map_err(|e| GbError::Internal(e.to_string()))?,
            )
        } else {
            None
        };
        while !self.queue.is_empty() {
            budget.check()?;
            let batch = self.select_batch(opts.strategy);
            let degree = batch[0].sugar;
            if let Some(cap) = opts.degree_cap {
                if degree > cap {
                    return Err(GbError::DegreeCapExceeded { cap, degree });
                }
            }
            self.stats.max_degree = self.stats.max_degree.max(degree);
            let reducers = self.reducers();
            let work = |p: &Pending| -> Option<(Terms<D::C>, u64)> {
                if budget.tripped() {
                    return None;
                }
                let mut steps = 0;
                let s = self.materialize(p);
                reduce_full(&self.dom, self.ord, s, &reducers, &self.elems, &budget, &mut steps).map(|r| (r, steps))
            };
            let reduced: Vec<Option<(Terms<D::C>, u64)>> = match &pool {
                Some(pool) if batch.len() > 1 => pool.install(|| batch.par_iter().map(work).collect()),
                _ => batch.iter().map(work).collect(),
            };
            if reduced.iter().any(|r| r.is_none()) {
                budget.check()?;
                return Err(GbError::Timeout);
            }
            self.stats.reductions += batch.len() as u64;
            for (pend, res) in batch.iter().zip(reduced) {
                let (mut r, steps) = res.expect("checked");
                self.stats.reduction_steps += steps;
                if !r.is_empty() && self.elems.len() > reducers.len() {
                    // re-reduce against elements committed earlier in this batch
                    let fresh = self.reducers();
                    let mut more = 0;
                    r = reduce_full(&self.dom, self.ord, r, &fresh, &self.elems, &budget, &mut more)
                        .ok_or(GbError::Timeout)?;
                    self.stats.reduction_steps += more;
                }
                if r.is_empty() {
                    self.stats.zero_reductions += 1;
                    continue;
                }
                self.insert(r, pend.sugar);
            }
        }
        Ok(())
    }

    /// Gebauer–Möller update.
    fn insert(&mut self, terms: Terms<D::C>, sugar: u32) {
        let new_idx = self.elems.len();
        let lm_h = terms[0].0.clone();
        let elem = Element {
            mask: lm_h.divmask(),
            terms,
            sugar,
            active: true,
        };

        // chain criterion on existing pairs
        let before = self.queue.len();
        let elems = &self.elems;
        self.queue.retain(|p| match p.item {
            Item::Input(_) => true,
            Item::Pair(i, j) => {
                !(lm_h.divides(&p.lcm)
                    && lm_h.lcm(elems[i].lm()) != p.lcm
                    && lm_h.lcm(elems[j].lm()) != p.lcm)
            }
        });
        self.stats.pairs_pruned += (before - self.queue.len()) as u64;

        // candidate pairs with the new element
        let cands: Vec<(usize, Monomial, bool)> = self
            .elems
            .iter()
            .enumerate()
            .filter(|(_, e)| e.active)
            .map(|(i, e)| (i, e.lm().lcm(&lm_h), e.lm().is_coprime(&lm_h)))
            .collect();
        // M: drop when another candidate's lcm properly divides this one
        let survivors: Vec<usize> = (0..cands.len())
            .filter(|&a| {
                !cands
                    .iter()
                    .any(|(_, l, _)| l != &cands[a].1 && l.divides(&cands[a].1))
            })
            .collect();
        // F: one pair per lcm class, none if the class holds a coprime pair
        let mut created = 0;
        let mut seen: Vec<&Monomial> = Vec::new();
        for &a in &survivors {
            let (i, lcm, _) = &cands[a];
            if seen.contains(&lcm) {
                continue;
            }
            seen.push(lcm);
            let class_coprime = survivors.iter().any(|&b| cands[b].1 == *lcm && cands[b].2);
            if class_coprime {
                continue;
            }
            let e = &self.elems[*i];
            let s = (e.sugar + lcm.degree() - e.lm().degree()).max(sugar + lcm.degree() - lm_h.degree());
            self.queue.push(Pending {
                item: Item::Pair(*i, new_idx),
                lcm: lcm.clone(),
                sugar: s,
                seq: self.seq,
            });
            self.seq += 1;
            created += 1;
        }
        self.stats.pairs_pruned += cands.len() as u64 - created;
        self.stats.pairs_created += created;

        for e in self.elems.iter_mut() {
            if e.active && lm_h.divides(e.lm()) {
                e.active = false;
            }
        }
        self.elems.push(elem);
    }

    /// Inter-reduces the active elements and returns them sorted by leading
    /// monomial, descending.
    pub fn finish(mut self, opts: &GbOptions) -> Result<(Vec<Terms<D::C>>, GbStats), GbError> {
        let budget = Budget::new(opts);
        let active: Vec<usize> = (0..self.elems.len()).filter(|&i| self.elems[i].active).collect();
        let mut out = Vec::with_capacity(active.len());
        for &i in &active {
            let others: Vec<Reducer> = active
                .iter()
                .filter(|&&j| j != i)
                .map(|&j| Reducer {
                    mask: self.elems[j].mask,
                    idx: j,
                })
                .collect();
            let mut steps = 0;
            let p = self.elems[i].terms.clone();
            let red = reduce_full(&self.dom, self.ord, p, &others, &self.elems, &budget, &mut steps)
                .ok_or(GbError::Timeout)?;
            self.stats.reduction_steps += steps;
            out.push(red);
        }
        let ord = self.ord;
        out.sort_by(|a, b| ord.cmp(&b[0].0, &a[0].0));
        self.stats.basis_size = out.len();
        Ok((out, self.stats))
    }
}
