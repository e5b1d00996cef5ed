//! Reduced Gröbner bases, normal forms and saturation.

mod engine;
mod monideal;
mod reduce;
mod saturate;

use std::sync::atomic::AtomicBool;
use std::sync::Arc;
use std::time::{Duration, Instant};

use serde::Serialize;
use thiserror::Error;

use crate::polyring::{Field, Monomial, PolyError, PolyRing, Polynomial, ReductionDomain, Term};

pub use monideal::MonomialIdeal;
pub use reduce::{is_groebner, reduce, GroebnerCheck};
pub use saturate::{saturate, saturate_by_smallest_variable};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GbError {
    #[error("pair of degree {degree} exceeds the degree cap {cap}")]
    DegreeCapExceeded { cap: u32, degree: u32 },
    #[error("time budget exhausted")]
    Timeout,
    #[error("cancelled")]
    Cancelled,
    #[error("cannot saturate by the zero polynomial")]
    ZeroSaturator,
    #[error("ring already carries auxiliary variables")]
    AuxInUse,
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("{0}")]
    Internal(String),
}

impl GbError {
    /// Budget-related failures; the computation might succeed with more resources.
    pub fn is_resource_limit(&self) -> bool {
        matches!(self, GbError::DegreeCapExceeded { .. } | GbError::Timeout | GbError::Cancelled)
    }
}

/// Order in which critical pairs are processed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum PairStrategy {
    /// Lowest sugar degree first, batched per degree.
    #[default]
    Normal,
    /// One pair at a time in creation order.
    Fifo,
}

#[derive(Clone, Debug)]
pub struct GbOptions {
    pub threads: usize,
    pub degree_cap: Option<u32>,
    pub timeout: Option<Duration>,
    pub cancel: Option<Arc<AtomicBool>>,
    pub strategy: PairStrategy,
    /// Re-check the output with an independent S-pair test.
    pub verify: bool,
}

impl Default for GbOptions {
    fn default() -> Self {
        GbOptions {
            threads: 1,
            degree_cap: None,
            timeout: None,
            cancel: None,
            strategy: PairStrategy::Normal,
            verify: false,
        }
    }
}

#[derive(Clone, Debug, Default, Serialize, PartialEq)]
pub struct GbStats {
    /// S-polynomials (and input generators) taken through full reduction.
    pub reductions: u64,
    pub zero_reductions: u64,
    pub reduction_steps: u64,
    pub pairs_created: u64,
    pub pairs_pruned: u64,
    pub basis_size: usize,
    pub max_degree: u32,
    pub wall_time: f64,
}

/// A reduced Gröbner basis, sorted by leading monomial (largest first).
#[derive(Clone, Debug)]
pub struct GroebnerBasis<F: Field> {
    ring: Arc<PolyRing<F>>,
    elements: Vec<Polynomial<F>>,
    verified: bool,
    stats: GbStats,
}

impl<F: Field> GroebnerBasis<F> {
    pub(crate) fn from_parts(ring: Arc<PolyRing<F>>, elements: Vec<Polynomial<F>>, stats: GbStats) -> Self {
        GroebnerBasis {
            ring,
            elements,
            verified: false,
            stats,
        }
    }

    pub fn ring(&self) -> &Arc<PolyRing<F>> {
        &self.ring
    }

    pub fn elements(&self) -> &[Polynomial<F>] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// True for the unit ideal.
    pub fn is_unit(&self) -> bool {
        self.elements.len() == 1 && self.elements[0].leading_monomial().is_some_and(Monomial::is_one)
    }

    pub fn stats(&self) -> &GbStats {
        &self.stats
    }

    /// Whether the independent S-pair check ran and passed.
    pub fn verified(&self) -> bool {
        self.verified
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.elements.iter().filter_map(|p| p.leading_monomial().cloned()).collect()
    }

    pub fn initial_ideal(&self) -> MonomialIdeal {
        MonomialIdeal::new(self.ring.nvars(), self.leading_monomials())
    }

    pub fn normal_form(&self, f: &Polynomial<F>) -> Result<Polynomial<F>, PolyError> {
        reduce(f, &self.elements)
    }

    pub fn contains(&self, f: &Polynomial<F>) -> Result<bool, PolyError> {
        Ok(self.normal_form(f)?.is_zero())
    }
}

/// Computes the reduced Gröbner basis of the ideal generated by `gens` with
/// respect to the order of their ring.
pub fn buchberger<F: Field>(
    ring: &Arc<PolyRing<F>>,
    gens: &[Polynomial<F>],
    opts: &GbOptions,
) -> Result<GroebnerBasis<F>, GbError> {
    let start = Instant::now();
    let field = ring.field().clone();
    let dom = field.domain();
    let mut inputs = Vec::with_capacity(gens.len());
    for g in gens {
        if !g.ring().same_as(ring) {
            return Err(PolyError::RingMismatch.into());
        }
        if g.is_zero() {
            continue;
        }
        let coeffs: Vec<F::Elem> = g.terms().iter().map(|t| t.coeff.clone()).collect();
        let lifted = field.lift(&coeffs);
        inputs.push(g.terms().iter().map(|t| t.mon.clone()).zip(lifted).collect::<Vec<_>>());
    }
    let mut eng = engine::Engine::new(dom, ring.order(), inputs);
    eng.run(opts)?;
    let (raw, mut stats) = eng.finish(opts)?;
    let elements = raw.into_iter().map(|terms| lower(ring, &field, terms)).collect();
    stats.wall_time = start.elapsed().as_secs_f64();
    let mut gb = GroebnerBasis::from_parts(ring.clone(), elements, stats);
    if opts.verify {
        match is_groebner(&gb.elements)? {
            GroebnerCheck::Yes => gb.verified = true,
            GroebnerCheck::No { .. } => return Err(GbError::Internal("output failed the S-pair check".into())),
        }
    }
    Ok(gb)
}

fn lower<F: Field>(
    ring: &Arc<PolyRing<F>>,
    field: &F,
    terms: Vec<(Monomial, <F::Domain as ReductionDomain>::C)>,
) -> Polynomial<F> {
    let (mons, coeffs): (Vec<Monomial>, Vec<_>) = terms.into_iter().unzip();
    let lowered = field.lower_monic(&coeffs);
    let terms = mons.into_iter().zip(lowered).map(|(mon, coeff)| Term { mon, coeff }).collect();
    Polynomial::from_sorted_terms(ring.clone(), terms)
}
