use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::field::Field;
use super::monomial::Monomial;
use super::order::MonomialOrder;
use super::poly::Polynomial;
use super::PolyError;

/// A ring variable: either a jet coordinate `x[i,j,h]` or an auxiliary
/// variable used for elimination.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum VarId {
    Jet { i: u16, j: u16, h: u16 },
    Aux(u16),
}

impl VarId {
    pub fn jet(i: usize, j: usize, h: usize) -> Self {
        VarId::Jet {
            i: i as u16,
            j: j as u16,
            h: h as u16,
        }
    }

    /// Jet level, `None` for auxiliary variables.
    pub fn level(&self) -> Option<usize> {
        match self {
            VarId::Jet { h, .. } => Some(*h as usize),
            VarId::Aux(_) => None,
        }
    }
}

impl fmt::Display for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VarId::Jet { i, j, h } => write!(f, "x[{i},{j},{h}]"),
            VarId::Aux(u) => write!(f, "w[{u}]"),
        }
    }
}

/// `n` (matrix size) and `k` (number of jet levels) of a jet ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct JetShape {
    pub n: usize,
    pub k: usize,
}

/// Variable inventory, ranking, term order and coefficient field.
///
/// The position of a variable in `vars` is its rank: position 0 is the
/// largest variable.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyRing<F: Field> {
    vars: Vec<VarId>,
    index: HashMap<VarId, usize>,
    order: MonomialOrder,
    field: F,
    shape: Option<JetShape>,
    aux: usize,
}

/// The ranking used throughout: `x[1,2,k-1] > ... > x[n-1,n,k-1] > x[1,2,k-2] > ... > x[n-1,n,0]`.
pub fn jet_ranking(n: usize, k: usize) -> Vec<VarId> {
    let mut vars = Vec::with_capacity(k * n * (n - 1) / 2);
    for h in (0..k).rev() {
        for i in 1..=n {
            for j in i + 1..=n {
                vars.push(VarId::jet(i, j, h));
            }
        }
    }
    vars
}

/// Builds `K[x[i,j,h] : 1 <= i < j <= n, 0 <= h < k]` with the degrevlex order.
pub fn make_jet_ring<F: Field>(n: usize, k: usize, field: F) -> Result<Arc<PolyRing<F>>, PolyError> {
    if n < 2 {
        return Err(PolyError::BadShape(format!("matrix size n={n} must be at least 2")));
    }
    if k < 1 {
        return Err(PolyError::BadShape(format!("jet count k={k} must be at least 1")));
    }
    let mut ring = PolyRing::new(jet_ranking(n, k), MonomialOrder::DegRevLex, field)?;
    ring.shape = Some(JetShape { n, k });
    Ok(Arc::new(ring))
}

impl<F: Field> PolyRing<F> {
    pub fn new(vars: Vec<VarId>, order: MonomialOrder, field: F) -> Result<Self, PolyError> {
        let mut index = HashMap::with_capacity(vars.len());
        for (pos, v) in vars.iter().enumerate() {
            if index.insert(*v, pos).is_some() {
                return Err(PolyError::BadShape(format!("duplicate variable {v}")));
            }
            if let VarId::Jet { i, j, .. } = v {
                if i >= j || *i == 0 {
                    return Err(PolyError::BadShape(format!("invalid jet variable {v}")));
                }
            }
        }
        if let MonomialOrder::Elimination { block } = order {
            if block > vars.len() {
                return Err(PolyError::BadShape("elimination block larger than ring".into()));
            }
        }
        let aux = vars.iter().filter(|v| matches!(v, VarId::Aux(_))).count();
        Ok(PolyRing {
            vars,
            index,
            order,
            field,
            shape: None,
            aux,
        })
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn vars(&self) -> &[VarId] {
        &self.vars
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn shape(&self) -> Option<JetShape> {
        self.shape
    }

    pub fn aux_count(&self) -> usize {
        self.aux
    }

    pub fn var_index(&self, v: VarId) -> Option<usize> {
        self.index.get(&v).copied()
    }

    pub fn var_at(&self, idx: usize) -> VarId {
        self.vars[idx]
    }

    /// Compares two monomials, rejecting monomials from a ring of a different size.
    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Result<Ordering, PolyError> {
        if a.nvars() != self.nvars() || b.nvars() != self.nvars() {
            return Err(PolyError::RingMismatch);
        }
        Ok(self.order.cmp(a, b))
    }

    /// A copy of this ring with `count` auxiliary variables ranked above
    /// everything else and an elimination order for them.
    pub fn with_aux_elimination(&self, count: usize) -> Result<Arc<PolyRing<F>>, PolyError> {
        if self.aux > 0 {
            return Err(PolyError::BadShape("ring already has auxiliary variables".into()));
        }
        let mut vars: Vec<VarId> = (0..count).map(|u| VarId::Aux(u as u16)).collect();
        vars.extend_from_slice(&self.vars);
        let mut ring = PolyRing::new(vars, MonomialOrder::Elimination { block: count }, self.field.clone())?;
        ring.shape = self.shape;
        Ok(Arc::new(ring))
    }

    /// The same variables with the auxiliary block removed and degrevlex restored.
    pub fn without_aux(&self) -> Result<Arc<PolyRing<F>>, PolyError> {
        let vars: Vec<VarId> = self.vars[self.aux..].to_vec();
        let mut ring = PolyRing::new(vars, MonomialOrder::DegRevLex, self.field.clone())?;
        ring.shape = self.shape;
        Ok(Arc::new(ring))
    }

    /// The same variables under another order.
    pub fn with_order(&self, order: MonomialOrder) -> Result<Arc<PolyRing<F>>, PolyError> {
        let mut ring = PolyRing::new(self.vars.clone(), order, self.field.clone())?;
        ring.shape = self.shape;
        Ok(Arc::new(ring))
    }

    pub fn variable(self: &Arc<Self>, v: VarId) -> Result<Polynomial<F>, PolyError> {
        let idx = self.var_index(v).ok_or(PolyError::UnknownVariable(v))?;
        Ok(Polynomial::from_monomial(self.clone(), Monomial::variable(self.nvars(), idx)))
    }

    /// Shorthand for the jet variable `x[i,j,h]`. Panics if absent.
    pub fn x(self: &Arc<Self>, i: usize, j: usize, h: usize) -> Polynomial<F> {
        self.variable(VarId::jet(i, j, h)).expect("jet variable in ring")
    }

    pub fn monomial_of(&self, factors: &[(VarId, u16)]) -> Result<Monomial, PolyError> {
        let mut m = Monomial::one(self.nvars());
        for &(v, e) in factors {
            let idx = self.var_index(v).ok_or(PolyError::UnknownVariable(v))?;
            let cur = m.exponent(idx);
            m.set_exponent(idx, cur + e);
        }
        Ok(m)
    }

    /// Writes a monomial as `x[i,j,h]^e*...`; the constant monomial prints as `1`.
    pub fn format_monomial(&self, m: &Monomial) -> String {
        if m.is_one() {
            return "1".to_string();
        }
        let mut out = String::new();
        for (idx, e) in m.support() {
            if !out.is_empty() {
                out.push('*');
            }
            out.push_str(&self.vars[idx].to_string());
            if e > 1 {
                out.push('^');
                out.push_str(&e.to_string());
            }
        }
        out
    }

    pub(crate) fn same_as(&self, other: &PolyRing<F>) -> bool {
        std::ptr::eq(self, other) || self == other
    }
}
