//! Multivariate polynomials with exact rational coefficients.
//!
//! Terms live in a `BTreeMap` keyed by exponent vector, so iteration is
//! deterministic regardless of construction order. No zero coefficient is
//! ever stored.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::monomial::{Monomial, MonomialOrder, OrderKind};
use crate::rational::{self, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiPoly {
    vars: Vec<String>,
    terms: BTreeMap<Monomial, Rational>,
}

impl MultiPoly {
    pub fn zero(vars: Vec<String>) -> Self {
        MultiPoly { vars, terms: BTreeMap::new() }
    }

    pub fn constant(vars: Vec<String>, c: Rational) -> Self {
        let mut p = MultiPoly::zero(vars);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(p.vars.len()), c);
        }
        p
    }

    pub fn one(vars: Vec<String>) -> Self {
        Self::constant(vars, Rational::one())
    }

    /// The variable x_i as a polynomial.
    pub fn var(vars: Vec<String>, i: usize) -> Self {
        let n = vars.len();
        let mut p = MultiPoly::zero(vars);
        p.terms.insert(Monomial::var(n, i), Rational::one());
        p
    }

    pub fn from_terms<I>(vars: Vec<String>, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut p = MultiPoly::zero(vars);
        for (m, c) in terms {
            assert_eq!(m.nvars(), p.vars.len(), "term arity mismatch");
            p.add_term(m, c);
        }
        p
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::total_degree).max().unwrap_or(0)
    }

    /// The constant term.
    pub fn constant_term(&self) -> Rational {
        self.coeff(&Monomial::one(self.nvars()))
    }

    /// True iff the polynomial is a constant (including zero).
    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                *existing += c;
                if existing.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    fn check_vars(&self, other: &MultiPoly) -> Result<()> {
        if self.vars != other.vars {
            return Err(Error::VariableMismatch(format!(
                "[{}] vs [{}]",
                self.vars.join(", "),
                other.vars.join(", ")
            )));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_vars(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_vars(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_vars(other)?;
        let mut out = MultiPoly::zero(self.vars.clone());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn negate(&self) -> MultiPoly {
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(self.vars.clone());
        }
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, q)| (m.clone(), q * c)).collect(),
        }
    }

    /// self * c * m for a single scaling term.
    pub fn mul_term(&self, m: &Monomial, c: &Rational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(self.vars.clone());
        }
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(mm, q)| (mm.mul(m), q * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> MultiPoly {
        let mut acc = MultiPoly::one(self.vars.clone());
        for _ in 0..k {
            acc = acc.checked_mul(self).expect("same ring");
        }
        acc
    }

    /// Terms sorted descending under `ord` (leading term first).
    pub fn terms_desc(&self, ord: &MonomialOrder) -> Vec<(&Monomial, &Rational)> {
        let mut ts: Vec<_> = self.terms.iter().collect();
        ts.sort_by(|a, b| ord.cmp_unchecked(b.0, a.0));
        ts
    }

    /// Leading (monomial, coefficient) under `ord`; None for the zero polynomial.
    pub fn leading_term(&self, ord: &MonomialOrder) -> Option<(&Monomial, &Rational)> {
        self.terms
            .iter()
            .max_by(|a, b| ord.cmp_unchecked(a.0, b.0))
    }

    /// Exact evaluation at a rational point.
    pub fn eval(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.nvars(), "evaluation arity mismatch");
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.exponents().iter().enumerate() {
                for _ in 0..e {
                    t *= &point[i];
                }
            }
            acc += t;
        }
        acc
    }

    /// Floating evaluation at a complex point.
    pub fn eval_complex(&self, point: &[Complex64]) -> Complex64 {
        assert_eq!(point.len(), self.nvars(), "evaluation arity mismatch");
        let mut acc = Complex64::new(0.0, 0.0);
        for (m, c) in &self.terms {
            let mut t = Complex64::new(rational::to_f64(c), 0.0);
            for (i, &e) in m.exponents().iter().enumerate() {
                t *= point[i].powu(e);
            }
            acc += t;
        }
        acc
    }

    /// Largest coefficient magnitude as f64 (0.0 for the zero polynomial).
    pub fn max_abs_coeff(&self) -> f64 {
        self.terms
            .values()
            .map(|c| rational::to_f64(c).abs())
            .fold(0.0, f64::max)
    }

    /// Render under an explicit order, leading term first.
    pub fn to_string_ordered(&self, ord: &MonomialOrder) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (idx, (m, c)) in self.terms_desc(ord).into_iter().enumerate() {
            let neg = c < &Rational::zero();
            let mag = if neg { -c.clone() } else { c.clone() };
            if idx == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = render_monomial(m, &self.vars);
            if mono.is_empty() {
                out.push_str(&rational::to_string(&mag));
            } else if mag.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&rational::to_string(&mag));
                out.push('*');
                out.push_str(&mono);
            }
        }
        out
    }
}

fn render_monomial(m: &Monomial, vars: &[String]) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.exponents().iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(vars[i].clone()),
            _ => parts.push(format!("{}^{}", vars[i], e)),
        }
    }
    parts.join("*")
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ord = MonomialOrder::new(OrderKind::GrevLex, self.nvars());
        write!(f, "{}", self.to_string_ordered(&ord))
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: Self) -> MultiPoly {
        self.checked_add(rhs).expect("polynomial ring mismatch")
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: Self) -> MultiPoly {
        self.checked_sub(rhs).expect("polynomial ring mismatch")
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: Self) -> MultiPoly {
        self.checked_mul(rhs).expect("polynomial ring mismatch")
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.negate()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn xy() -> Vec<String> {
        vec!["x".into(), "y".into()]
    }

    fn x() -> Vec<String> {
        vec!["x".into()]
    }

    #[test]
    fn add_cancels() {
        // (x+1) + (x-1) = 2x
        let xv = MultiPoly::var(x(), 0);
        let a = &xv + &MultiPoly::one(x());
        let b = &xv - &MultiPoly::one(x());
        let sum = &a + &b;
        assert_eq!(sum, xv.scale(&rat(2)));
    }

    #[test]
    fn difference_of_squares() {
        let xv = MultiPoly::var(xy(), 0);
        let yv = MultiPoly::var(xy(), 1);
        let prod = &(&xv + &yv) * &(&xv - &yv);
        let expect = &(&xv * &xv) - &(&yv * &yv);
        assert_eq!(prod, expect);
    }

    #[test]
    fn multiply_by_zero_annihilates() {
        let xv = MultiPoly::var(x(), 0);
        let p = &(&xv * &xv) - &MultiPoly::constant(x(), rat(2));
        let z = MultiPoly::zero(x());
        assert!((&p * &z).is_zero());
    }

    #[test]
    fn variable_mismatch_rejected() {
        let a = MultiPoly::var(x(), 0);
        let b = MultiPoly::var(xy(), 0);
        assert!(matches!(a.checked_add(&b), Err(Error::VariableMismatch(_))));
    }

    #[test]
    fn display_round_shape() {
        let xv = MultiPoly::var(xy(), 0);
        let yv = MultiPoly::var(xy(), 1);
        let p = &(&xv * &xv).scale(&crate::rational::ratio(3, 2)) - &yv;
        assert_eq!(p.to_string(), "3/2*x^2 - y");
    }

    #[test]
    fn exact_eval() {
        let xv = MultiPoly::var(xy(), 0);
        let yv = MultiPoly::var(xy(), 1);
        let p = &(&xv * &yv) + &MultiPoly::one(xy());
        assert_eq!(p.eval(&[rat(2), rat(3)]), rat(7));
    }
}
