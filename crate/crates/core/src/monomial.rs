//! Monomials and monomial orders.

use std::cmp::Ordering;

use crate::error::{Error, Result};

/// Exponent vector, one entry per ambient variable.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial { exps }
    }

    /// The constant monomial 1 in `nvars` variables.
    pub fn one(nvars: usize) -> Self {
        Monomial { exps: vec![0; nvars] }
    }

    /// x_i as a monomial.
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index out of range");
        let mut exps = vec![0; nvars];
        exps[i] = 1;
        Monomial { exps }
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn total_degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    /// Product of monomials; exponent overflow is a hard invariant violation.
    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        let exps = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| a.checked_add(*b).expect("monomial exponent overflow"))
            .collect();
        Monomial { exps }
    }

    /// Raise to the k-th power.
    pub fn pow(&self, k: u32) -> Monomial {
        let exps = self
            .exps
            .iter()
            .map(|e| e.checked_mul(k).expect("monomial exponent overflow"))
            .collect();
        Monomial { exps }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.len() == other.exps.len()
            && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// self / other, assuming other divides self.
    pub fn div(&self, other: &Monomial) -> Monomial {
        debug_assert!(other.divides(self));
        let exps = self.exps.iter().zip(&other.exps).map(|(a, b)| a - b).collect();
        Monomial { exps }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        let exps = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| *a.max(b))
            .collect();
        Monomial { exps }
    }
}

/// Which classical order to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrderKind {
    Lex,
    GrevLex,
}

/// A total monomial order: lex or graded reverse lex, composed with a
/// variable permutation. `perm[0]` is the most significant variable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialOrder {
    pub kind: OrderKind,
    perm: Vec<usize>,
}

impl MonomialOrder {
    /// Order with the declared variable sequence (identity permutation).
    pub fn new(kind: OrderKind, nvars: usize) -> Self {
        MonomialOrder { kind, perm: (0..nvars).collect() }
    }

    /// Order with an explicit precedence permutation; `perm[0]` ranks highest.
    pub fn with_permutation(kind: OrderKind, perm: Vec<usize>) -> Result<Self> {
        let n = perm.len();
        let mut seen = vec![false; n];
        for &i in &perm {
            if i >= n || seen[i] {
                return Err(Error::Domain("invalid variable permutation".into()));
            }
            seen[i] = true;
        }
        Ok(MonomialOrder { kind, perm })
    }

    pub fn nvars(&self) -> usize {
        self.perm.len()
    }

    /// Compare a and b; errors if the exponent lengths disagree with this
    /// order's variable count.
    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Result<Ordering> {
        if a.nvars() != self.nvars() || b.nvars() != self.nvars() {
            return Err(Error::VariableMismatch(format!(
                "monomials over {} and {} variables compared under a {}-variable order",
                a.nvars(),
                b.nvars(),
                self.nvars()
            )));
        }
        Ok(self.cmp_unchecked(a, b))
    }

    /// Comparison assuming lengths already match.
    pub fn cmp_unchecked(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self.kind {
            OrderKind::Lex => {
                for &i in &self.perm {
                    match a.exponents()[i].cmp(&b.exponents()[i]) {
                        Ordering::Equal => {}
                        ord => return ord,
                    }
                }
                Ordering::Equal
            }
            OrderKind::GrevLex => {
                match a.total_degree().cmp(&b.total_degree()) {
                    Ordering::Equal => {}
                    ord => return ord,
                }
                // Reverse lex tie-break: last variable first, inverted.
                for &i in self.perm.iter().rev() {
                    match a.exponents()[i].cmp(&b.exponents()[i]) {
                        Ordering::Equal => {}
                        ord => return ord.reverse(),
                    }
                }
                Ordering::Equal
            }
        }
    }
}

/// Three-way comparison of monomials under `ord`.
pub fn monomial_compare(a: &Monomial, b: &Monomial, ord: &MonomialOrder) -> Result<Ordering> {
    ord.compare(a, b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(exps: &[u32]) -> Monomial {
        Monomial::new(exps.to_vec())
    }

    #[test]
    fn lex_ignores_degree() {
        // x vs y^2 under lex x > y
        let ord = MonomialOrder::new(OrderKind::Lex, 2);
        assert_eq!(ord.compare(&m(&[1, 0]), &m(&[0, 2])).unwrap(), Ordering::Greater);
    }

    #[test]
    fn grevlex_compares_degree_first() {
        let ord = MonomialOrder::new(OrderKind::GrevLex, 2);
        assert_eq!(ord.compare(&m(&[1, 0]), &m(&[0, 2])).unwrap(), Ordering::Less);
    }

    #[test]
    fn reflexivity() {
        for kind in [OrderKind::Lex, OrderKind::GrevLex] {
            let ord = MonomialOrder::new(kind, 3);
            let a = m(&[2, 1, 3]);
            assert_eq!(ord.compare(&a, &a).unwrap(), Ordering::Equal);
        }
    }

    #[test]
    fn grevlex_classic_example() {
        // x*y^2*z vs x^2*z^2: degrees 4 = 4; grevlex compares the last
        // exponent inverted: z^1 vs z^2 means the first is larger.
        let ord = MonomialOrder::new(OrderKind::GrevLex, 3);
        assert_eq!(
            ord.compare(&m(&[1, 2, 1]), &m(&[2, 0, 2])).unwrap(),
            Ordering::Greater
        );
    }

    #[test]
    fn length_mismatch_is_an_error() {
        let ord = MonomialOrder::new(OrderKind::Lex, 2);
        assert!(matches!(
            ord.compare(&m(&[1]), &m(&[0, 2])),
            Err(Error::VariableMismatch(_))
        ));
    }

    #[test]
    fn one_is_minimal() {
        for kind in [OrderKind::Lex, OrderKind::GrevLex] {
            let ord = MonomialOrder::new(kind, 2);
            for other in [m(&[1, 0]), m(&[0, 1]), m(&[3, 2])] {
                assert_eq!(ord.compare(&Monomial::one(2), &other).unwrap(), Ordering::Less);
            }
        }
    }

    #[test]
    fn division_and_lcm() {
        let a = m(&[2, 1]);
        let b = m(&[1, 3]);
        assert!(!a.divides(&b));
        assert_eq!(a.lcm(&b), m(&[2, 3]));
        assert_eq!(m(&[2, 1]).div(&m(&[1, 0])), m(&[1, 1]));
    }
}
