//! Saturation `I : f^∞`.

use std::sync::Arc;

use crate::polyring::{Field, Monomial, PolyError, PolyRing, Polynomial, VarId};

use super::{buchberger, GbError, GbOptions, GroebnerBasis};

/// Reduced Gröbner basis of `I : f^∞` in the ring of `gens`, computed by
/// eliminating `w` from `I + (1 - w f)`.
pub fn saturate<F: Field>(
    ring: &Arc<PolyRing<F>>,
    gens: &[Polynomial<F>],
    f: &Polynomial<F>,
    opts: &GbOptions,
) -> Result<GroebnerBasis<F>, GbError> {
    if f.is_zero() {
        return Err(GbError::ZeroSaturator);
    }
    if ring.aux_count() > 0 {
        return Err(GbError::AuxInUse);
    }
    let ext = ring.with_aux_elimination(1)?;
    let embed = |p: &Polynomial<F>| -> Result<Polynomial<F>, PolyError> {
        if !p.ring().same_as(ring) {
            return Err(PolyError::RingMismatch);
        }
        Ok(p.map_into(&ext, |m| Some(m.shifted(1))).expect("total map"))
    };
    let mut ext_gens = Vec::with_capacity(gens.len() + 1);
    for g in gens {
        ext_gens.push(embed(g)?);
    }
    let w = ext.variable(VarId::Aux(0))?;
    let one = Polynomial::one(ext.clone());
    ext_gens.push(&one - &(&w * &embed(f)?));
    let gb = buchberger(&ext, &ext_gens, opts)?;
    let kept: Vec<Polynomial<F>> = gb
        .elements()
        .iter()
        .filter(|p| p.terms().iter().all(|t| t.mon.exponent(0) == 0))
        .map(|p| p.map_into(ring, |m| m.unshifted(1)).expect("w-free"))
        .collect();
    let mut stats = gb.stats().clone();
    stats.basis_size = kept.len();
    // the kept elements already form the reduced basis for the restricted order
    Ok(GroebnerBasis::from_parts(ring.clone(), kept, stats))
}

/// Saturation by the smallest variable of a degrevlex ring, for homogeneous
/// input: divide every element of the Gröbner basis by the largest power of
/// that variable it is divisible by.
pub fn saturate_by_smallest_variable<F: Field>(
    ring: &Arc<PolyRing<F>>,
    gens: &[Polynomial<F>],
    opts: &GbOptions,
) -> Result<GroebnerBasis<F>, GbError> {
    if !ring.order().is_degree_compatible() || ring.aux_count() > 0 {
        return Err(GbError::AuxInUse);
    }
    if gens.iter().any(|g| !g.is_homogeneous()) {
        return Err(GbError::Internal("input is not homogeneous".into()));
    }
    let last = ring.nvars() - 1;
    let gb = buchberger(ring, gens, opts)?;
    let divided: Vec<Polynomial<F>> = gb
        .elements()
        .iter()
        .map(|p| {
            let e = p.terms().iter().map(|t| t.mon.exponent(last)).min().unwrap_or(0);
            let mut m = Monomial::one(ring.nvars());
            m.set_exponent(last, e);
            p.div_monomial(&m).expect("common power")
        })
        .collect();
    buchberger(ring, &divided, opts)
}
