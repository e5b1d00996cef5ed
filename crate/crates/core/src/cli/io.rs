//! Ideal files: a header line followed by one polynomial (or monomial) per line.
//!
//! ```text
//! pfaffian-jet n=5 k=3 r=2
//! x[1,4,0]*x[2,3,0] - x[1,3,0]*x[2,4,0] + x[1,2,0]*x[3,4,0]
//! ...
//! ```
//!
//! Optional header keys: `kind=generators|basis|monomial`, `order=paper|elim`,
//! `field=q|p:<m>`, `aux=<count>`.

use std::fmt::Write as _;
use std::sync::Arc;

use crate::polyring::{make_jet_ring, parse_monomial, parse_polynomial, Field, FieldTag, MonomialOrder, PolyRing, Polynomial};

use super::CliError;

pub const MAGIC: &str = "pfaffian-jet";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum IdealKind {
    #[default]
    Generators,
    Basis,
    Monomial,
}

impl IdealKind {
    fn name(self) -> &'static str {
        match self {
            IdealKind::Generators => "generators",
            IdealKind::Basis => "basis",
            IdealKind::Monomial => "monomial",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Header {
    pub n: usize,
    pub k: usize,
    pub r: Option<usize>,
    pub kind: IdealKind,
    pub order: Option<String>,
    pub field: Option<FieldTag>,
    pub aux: usize,
}

impl Header {
    pub fn parse(line: &str) -> Result<Header, CliError> {
        let mut tokens = line.split_whitespace();
        if tokens.next() != Some(MAGIC) {
            return Err(CliError::Format(format!("header must start with `{MAGIC}`")));
        }
        let mut h = Header::default();
        let (mut seen_n, mut seen_k) = (false, false);
        for tok in tokens {
            let (key, value) = tok
                .split_once('=')
                .ok_or_else(|| CliError::Format(format!("bad header token `{tok}`")))?;
            let num = || {
                value
                    .parse::<usize>()
                    .map_err(|_| CliError::Format(format!("`{key}` expects a number, got `{value}`")))
            };
            match key {
                "n" => {
                    h.n = num()?;
                    seen_n = true;
                }
                "k" => {
                    h.k = num()?;
                    seen_k = true;
                }
                "r" => h.r = Some(num()?),
                "aux" => h.aux = num()?,
                "kind" => {
                    h.kind = match value {
                        "generators" => IdealKind::Generators,
                        "basis" => IdealKind::Basis,
                        "monomial" => IdealKind::Monomial,
                        _ => return Err(CliError::Format(format!("unknown kind `{value}`"))),
                    }
                }
                "order" => h.order = Some(value.to_string()),
                "field" => h.field = Some(value.parse()?),
                _ => return Err(CliError::Format(format!("unknown header key `{key}`"))),
            }
        }
        if !seen_n || !seen_k {
            return Err(CliError::Format("header needs n= and k=".into()));
        }
        Ok(h)
    }

    pub fn render(&self) -> String {
        let mut s = format!("{MAGIC} n={} k={}", self.n, self.k);
        if let Some(r) = self.r {
            let _ = write!(s, " r={r}");
        }
        if self.kind != IdealKind::Generators {
            let _ = write!(s, " kind={}", self.kind.name());
        }
        if let Some(o) = &self.order {
            let _ = write!(s, " order={o}");
        }
        if let Some(f) = &self.field {
            let _ = write!(s, " field={f}");
        }
        if self.aux > 0 {
            let _ = write!(s, " aux={}", self.aux);
        }
        s
    }
}

/// Parses `paper` or `elim` into an order for a ring with `aux` leading auxiliary variables.
pub fn order_from_name(name: &str, aux: usize) -> Result<MonomialOrder, CliError> {
    match name {
        "paper" | "degrevlex" => Ok(MonomialOrder::DegRevLex),
        "elim" if aux > 0 => Ok(MonomialOrder::Elimination { block: aux }),
        "elim" => Err(CliError::Usage("order `elim` needs auxiliary variables (aux=1 in the header)".into())),
        _ => Err(CliError::Usage(format!("unknown order `{name}` (expected paper|elim)"))),
    }
}

/// Builds the ring a header describes.
pub fn ring_for<F: Field>(h: &Header, field: F) -> Result<Arc<PolyRing<F>>, CliError> {
    let base = make_jet_ring(h.n, h.k, field)?;
    let ring = if h.aux > 0 { base.with_aux_elimination(h.aux)? } else { base };
    let order = order_from_name(h.order.as_deref().unwrap_or(if h.aux > 0 { "elim" } else { "paper" }), h.aux)?;
    Ok(ring.with_order(order)?)
}

#[derive(Clone, Debug)]
pub struct IdealFile<F: Field> {
    pub header: Header,
    pub ring: Arc<PolyRing<F>>,
    pub polys: Vec<Polynomial<F>>,
}

/// Reads an ideal file into `field`; the header's own field tag, if any, is ignored.
pub fn read_ideal<F: Field>(text: &str, field: F) -> Result<IdealFile<F>, CliError> {
    read_ideal_as(text, field, None)
}

/// Like [`read_ideal`], with `order` (if given) replacing the header's order.
pub fn read_ideal_as<F: Field>(text: &str, field: F, order: Option<&str>) -> Result<IdealFile<F>, CliError> {
    let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
    let mut header = Header::parse(lines.next().ok_or_else(|| CliError::Format("empty ideal file".into()))?)?;
    if let Some(o) = order {
        header.order = Some(o.to_string());
    }
    let ring = ring_for(&header, field)?;
    let mut polys = Vec::new();
    for line in lines {
        let p = match header.kind {
            IdealKind::Monomial => Polynomial::from_monomial(ring.clone(), parse_monomial(&ring, line)?),
            _ => parse_polynomial(&ring, line)?,
        };
        polys.push(p);
    }
    Ok(IdealFile { header, ring, polys })
}

pub fn write_ideal<F: Field>(header: &Header, polys: &[Polynomial<F>]) -> String {
    let mut out = header.render();
    out.push('\n');
    for p in polys {
        if header.kind == IdealKind::Monomial {
            out.push_str(&p.ring().format_monomial(p.leading_monomial().expect("nonzero monomial")));
        } else {
            out.push_str(&p.to_string());
        }
        out.push('\n');
    }
    out
}
