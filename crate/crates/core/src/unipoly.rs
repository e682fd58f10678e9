//! Univariate polynomials over Q: Euclidean arithmetic, Yun squarefree
//! decomposition, Sylvester resultants and discriminants.

use std::fmt;

use num_complex::Complex64;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::matrix::RationalMatrix;
use crate::monomial::Monomial;
use crate::multipoly::MultiPoly;
use crate::rational::{self, Rational};

/// Coefficient vector indexed by degree; the top entry is nonzero, the zero
/// polynomial is the empty vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        UniPoly { coeffs: vec![Rational::one()] }
    }

    pub fn constant(c: Rational) -> Self {
        UniPoly::from_coeffs(vec![c])
    }

    /// From low-to-high coefficients; trailing zeros are trimmed.
    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        UniPoly::from_coeffs(coeffs.iter().map(|&c| rational::rat(c)).collect())
    }

    /// x^k
    pub fn monomial(k: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = Rational::one();
        UniPoly { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn leading_coeff(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coeff().is_one()
    }

    pub fn monic(&self) -> UniPoly {
        if self.is_zero() {
            return UniPoly::zero();
        }
        let lc = self.leading_coeff();
        UniPoly {
            coeffs: self.coeffs.iter().map(|c| c / &lc).collect(),
        }
    }

    pub fn add(&self, other: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) + other.coeff(i)).collect();
        UniPoly::from_coeffs(coeffs)
    }

    pub fn sub(&self, other: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) - other.coeff(i)).collect();
        UniPoly::from_coeffs(coeffs)
    }

    pub fn neg(&self) -> UniPoly {
        UniPoly {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero();
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        UniPoly::from_coeffs(coeffs)
    }

    pub fn scale(&self, c: &Rational) -> UniPoly {
        if c.is_zero() {
            return UniPoly::zero();
        }
        UniPoly {
            coeffs: self.coeffs.iter().map(|q| q * c).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> UniPoly {
        let mut acc = UniPoly::one();
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Euclidean division; panics if divisor is zero.
    pub fn div_rem(&self, divisor: &UniPoly) -> (UniPoly, UniPoly) {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        let dlen = divisor.coeffs.len();
        if self.coeffs.len() < dlen {
            return (UniPoly::zero(), self.clone());
        }
        let lc = divisor.leading_coeff();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rational::zero(); self.coeffs.len() - dlen + 1];
        for i in (0..quot.len()).rev() {
            let q = &rem[i + dlen - 1] / &lc;
            if q.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                let sub = &q * d;
                rem[i + j] -= sub;
            }
            quot[i] = q;
        }
        (UniPoly::from_coeffs(quot), UniPoly::from_coeffs(rem))
    }

    pub fn derivative(&self) -> UniPoly {
        if self.coeffs.len() <= 1 {
            return UniPoly::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * Rational::from_integer(i.into()))
            .collect();
        UniPoly::from_coeffs(coeffs)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_complex(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            acc = acc * z + Complex64::new(rational::to_f64(c), 0.0);
        }
        acc
    }

    /// Max |coefficient| as f64.
    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs
            .iter()
            .map(|c| rational::to_f64(c).abs())
            .fold(0.0, f64::max)
    }

    /// View as a MultiPoly in the given single variable name.
    pub fn to_multipoly(&self, var: &str) -> MultiPoly {
        MultiPoly::from_terms(
            vec![var.to_string()],
            self.coeffs
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (Monomial::new(vec![i as u32]), c.clone())),
        )
    }

    /// Extract from a MultiPoly that uses at most one variable.
    pub fn from_multipoly(p: &MultiPoly) -> Result<UniPoly> {
        let mut used: Option<usize> = None;
        for (m, _) in p.terms() {
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    match used {
                        None => used = Some(i),
                        Some(j) if j == i => {}
                        Some(j) => {
                            return Err(Error::Domain(format!(
                                "polynomial uses more than one variable ({}, {})",
                                p.vars()[j],
                                p.vars()[i]
                            )))
                        }
                    }
                }
            }
        }
        let idx = used.unwrap_or(0);
        let mut coeffs = Vec::new();
        for (m, c) in p.terms() {
            let e = m.exponents().get(idx).copied().unwrap_or(0) as usize;
            if coeffs.len() <= e {
                coeffs.resize(e + 1, Rational::zero());
            }
            coeffs[e] = c.clone();
        }
        Ok(UniPoly::from_coeffs(coeffs))
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_multipoly("x"))
    }
}

/// Monic gcd by Euclid's algorithm; gcd(0, 0) = 0.
pub fn uni_gcd(a: &UniPoly, b: &UniPoly) -> UniPoly {
    let mut r0 = a.clone();
    let mut r1 = b.clone();
    while !r1.is_zero() {
        let (_, r) = r0.div_rem(&r1);
        r0 = r1;
        r1 = r;
    }
    r0.monic()
}

/// Yun's squarefree decomposition over Q.
///
/// Returns monic, squarefree, pairwise-coprime factors with strictly
/// increasing multiplicities; the input equals lc * prod factor^mult.
pub fn squarefree_decompose(a: &UniPoly) -> Result<Vec<(UniPoly, u32)>> {
    if a.is_zero() {
        return Err(Error::Domain("squarefree decomposition of zero".into()));
    }
    let f = a.monic();
    if f.degree() == Some(0) {
        return Ok(Vec::new());
    }
    let df = f.derivative();
    let g = uni_gcd(&f, &df);
    let mut b = f.div_rem(&g).0; // product of the distinct factors
    let c = df.div_rem(&g).0;
    let mut d = c.sub(&b.derivative());
    let mut out = Vec::new();
    let mut i = 1u32;
    while b.degree().unwrap_or(0) > 0 {
        let fac = uni_gcd(&b, &d); // factors of multiplicity exactly i
        if fac.degree().unwrap_or(0) > 0 {
            out.push((fac.clone(), i));
        }
        b = b.div_rem(&fac).0;
        let c_next = d.div_rem(&fac).0;
        d = c_next.sub(&b.derivative());
        i += 1;
    }
    Ok(out)
}

/// Sylvester-matrix resultant by exact Bareiss elimination.
pub fn resultant(a: &UniPoly, b: &UniPoly) -> Result<Rational> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::Domain("resultant of zero polynomial".into()));
    }
    let m = a.degree().unwrap();
    let n = b.degree().unwrap();
    if m == 0 && n == 0 {
        return Ok(Rational::one());
    }
    if m == 0 {
        // res(c, b) = c^deg(b)
        let mut acc = Rational::one();
        for _ in 0..n {
            acc *= a.coeff(0);
        }
        return Ok(acc);
    }
    if n == 0 {
        let mut acc = Rational::one();
        for _ in 0..m {
            acc *= b.coeff(0);
        }
        return Ok(acc);
    }
    let size = m + n;
    let mut s = RationalMatrix::zero(size, size);
    for row in 0..n {
        for (k, c) in a.coeffs().iter().enumerate() {
            // coefficient of degree m-k ... store descending
            s[(row, row + (m - k))] = c.clone();
        }
    }
    for row in 0..m {
        for (k, c) in b.coeffs().iter().enumerate() {
            s[(n + row, row + (n - k))] = c.clone();
        }
    }
    s.det_bareiss()
}

/// Discriminant of f: (-1)^{n(n-1)/2} res(f, f') / lc(f), deg f >= 1.
pub fn discriminant(f: &UniPoly) -> Result<Rational> {
    let n = match f.degree() {
        Some(n) if n >= 1 => n,
        _ => return Err(Error::Domain("discriminant needs degree >= 1".into())),
    };
    if n == 1 {
        return Ok(Rational::one());
    }
    let res = resultant(f, &f.derivative())?;
    let sign = if (n * (n - 1) / 2) % 2 == 0 { 1 } else { -1 };
    Ok(res * rational::rat(sign) / f.leading_coeff())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn gcd_examples() {
        // gcd(x^2-1, x-1) = x-1
        let a = UniPoly::from_ints(&[-1, 0, 1]);
        let b = UniPoly::from_ints(&[-1, 1]);
        assert_eq!(uni_gcd(&a, &b), b);
        // gcd(x^2+1, x^2-1) = 1 (Euclid: remainder 2)
        let c = UniPoly::from_ints(&[1, 0, 1]);
        assert_eq!(uni_gcd(&c, &a), UniPoly::one());
        // conventions
        assert_eq!(uni_gcd(&UniPoly::zero(), &UniPoly::zero()), UniPoly::zero());
        assert_eq!(uni_gcd(&a, &UniPoly::zero()), a.monic());
    }

    #[test]
    fn squarefree_already() {
        // x^3 - x is squarefree
        let p = UniPoly::from_ints(&[0, -1, 0, 1]);
        let d = squarefree_decompose(&p).unwrap();
        assert_eq!(d, vec![(p.monic(), 1)]);
    }

    #[test]
    fn squarefree_with_multiplicity() {
        // (x-1)^2 (x+2) = x^3 - 3x + 2
        let p = UniPoly::from_ints(&[2, -3, 0, 1]);
        let d = squarefree_decompose(&p).unwrap();
        assert_eq!(
            d,
            vec![
                (UniPoly::from_ints(&[2, 1]), 1),
                (UniPoly::from_ints(&[-1, 1]), 2),
            ]
        );
    }

    #[test]
    fn squarefree_pure_square() {
        let p = UniPoly::from_ints(&[0, 0, 1]); // x^2
        let d = squarefree_decompose(&p).unwrap();
        assert_eq!(d, vec![(UniPoly::from_ints(&[0, 1]), 2)]);
    }

    #[test]
    fn squarefree_reassembles() {
        // 3*(x-1)^2*(x+1)^3*x
        let xm1 = UniPoly::from_ints(&[-1, 1]);
        let xp1 = UniPoly::from_ints(&[1, 1]);
        let x = UniPoly::from_ints(&[0, 1]);
        let p = xm1.pow(2).mul(&xp1.pow(3)).mul(&x).scale(&rat(3));
        let d = squarefree_decompose(&p).unwrap();
        let mut re = UniPoly::constant(p.leading_coeff());
        for (f, m) in &d {
            re = re.mul(&f.pow(*m));
        }
        assert_eq!(re, p);
        let mults: Vec<u32> = d.iter().map(|(_, m)| *m).collect();
        let mut sorted = mults.clone();
        sorted.sort_unstable();
        assert_eq!(mults, sorted);
    }

    #[test]
    fn squarefree_zero_rejected() {
        assert!(squarefree_decompose(&UniPoly::zero()).is_err());
    }

    #[test]
    fn resultant_examples() {
        // res(x-1, x+1) = 2: eval of x+1 at root 1
        let a = UniPoly::from_ints(&[-1, 1]);
        let b = UniPoly::from_ints(&[1, 1]);
        assert_eq!(resultant(&a, &b).unwrap(), rat(2));
        // res(x^2+1, x): Sylvester det by hand = 1
        let c = UniPoly::from_ints(&[1, 0, 1]);
        let x = UniPoly::from_ints(&[0, 1]);
        assert_eq!(resultant(&c, &x).unwrap(), rat(1));
        // res(a, 1) = 1
        assert_eq!(resultant(&c, &UniPoly::one()).unwrap(), rat(1));
        assert!(resultant(&c, &UniPoly::zero()).is_err());
    }

    #[test]
    fn discriminants() {
        // b^2 - 4ac oracles
        assert_eq!(discriminant(&UniPoly::from_ints(&[1, 0, 1])).unwrap(), rat(-4));
        assert_eq!(discriminant(&UniPoly::from_ints(&[-2, 0, 1])).unwrap(), rat(8));
        // -4p^3 - 27q^2 oracle for x^3 + px + q
        assert_eq!(discriminant(&UniPoly::from_ints(&[-1, -1, 0, 1])).unwrap(), rat(-23));
        assert!(discriminant(&UniPoly::from_ints(&[5])).is_err());
    }

    #[test]
    fn division_round_trip() {
        let a = UniPoly::from_ints(&[1, 2, 0, 5, 3]);
        let b = UniPoly::from_ints(&[2, 0, 1]);
        let (q, r) = a.div_rem(&b);
        assert_eq!(q.mul(&b).add(&r), a);
        assert!(r.degree().unwrap_or(0) < b.degree().unwrap());
    }

    #[test]
    fn multipoly_round_trip() {
        let p = UniPoly::from_ints(&[1, 0, -3, 2]);
        let mp = p.to_multipoly("t");
        assert_eq!(UniPoly::from_multipoly(&mp).unwrap(), p);
    }

    #[test]
    fn multipoly_two_vars_rejected() {
        let vars = vec!["x".to_string(), "y".to_string()];
        let p = &MultiPoly::var(vars.clone(), 0) + &MultiPoly::var(vars, 1);
        assert!(UniPoly::from_multipoly(&p).is_err());
    }
}
