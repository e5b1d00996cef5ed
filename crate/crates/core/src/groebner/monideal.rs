use crate::polyring::Monomial;

/// A monomial ideal held by its minimal generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialIdeal {
    nvars: usize,
    gens: Vec<Monomial>,
}

impl MonomialIdeal {
    /// Minimalizes `gens`; generators are kept sorted by degree, then exponents.
    pub fn new(nvars: usize, gens: impl IntoIterator<Item = Monomial>) -> Self {
        let mut all: Vec<Monomial> = gens.into_iter().collect();
        debug_assert!(all.iter().all(|m| m.nvars() == nvars));
        all.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| a.exponents().cmp(b.exponents())));
        all.dedup();
        let mut min: Vec<Monomial> = Vec::with_capacity(all.len());
        for m in all {
            if !min.iter().any(|g| g.divides(&m)) {
                min.push(m);
            }
        }
        MonomialIdeal { nvars, gens: min }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn gens(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.gens.iter().any(Monomial::is_one)
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.gens.iter().any(|g| g.divides(m))
    }

    /// Generators sorted as sets of exponent vectors, for comparisons.
    pub fn sorted_exponents(&self) -> Vec<Vec<u16>> {
        let mut v: Vec<Vec<u16>> = self.gens.iter().map(|m| m.exponents().to_vec()).collect();
        v.sort();
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u16]) -> Monomial {
        Monomial::from_exponents(e.iter().copied())
    }

    #[test]
    fn keeps_only_minimal_generators() {
        let i = MonomialIdeal::new(3, [m(&[2, 0, 0]), m(&[1, 0, 0]), m(&[1, 1, 0]), m(&[0, 0, 3]), m(&[0, 0, 3])]);
        assert_eq!(i.gens(), &[m(&[1, 0, 0]), m(&[0, 0, 3])]);
        assert!(i.contains(&m(&[1, 5, 0])));
        assert!(!i.contains(&m(&[0, 5, 2])));
        assert!(!i.is_unit());
        assert!(MonomialIdeal::new(3, [m(&[0, 0, 0]), m(&[1, 0, 0])]).is_unit());
    }
}
