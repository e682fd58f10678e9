//! The quotient algebra A = Q[x_1..x_n]/I as a finite-dimensional vector
//! space: multiplication matrices, traces, determinants, characteristic
//! polynomials by two independent algorithms, and the numeric eigenvalue
//! solver that recovers solutions with exact multiplicities.
//!
//! Characteristic polynomials follow the convention det(M - x*I), so the
//! leading coefficient is (-1)^d. The Newton-identity route divides by the
//! step index and is therefore meaningful over Q only.

use std::collections::HashMap;

use num_complex::Complex64;
use num_traits::{One, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::groebner::{normal_form, standard_monomials, GroebnerBasis, QuotientBasis};
use crate::matrix::{RationalMatrix, RealMatrix};
use crate::monomial::Monomial;
use crate::multipoly::MultiPoly;
use crate::numeric;
use crate::rational::{self, Rational};
use crate::unipoly::{squarefree_decompose, UniPoly};

/// is_real tolerance: |Im| <= 1e-8 * (1 + |Re|).
const REALITY_TOL: f64 = 1e-8;
/// Residual and cross-check tolerance used to reject a non-separating form.
const VALIDATION_TOL: f64 = 1e-6;

/// A zero-dimensional quotient algebra with its standard-monomial basis and
/// the eagerly built basis-times-variable normal-form cache (the matrices of
/// multiplication by each variable).
#[derive(Debug, Clone)]
pub struct QuotientAlgebra {
    gb: GroebnerBasis,
    basis: QuotientBasis,
    index: HashMap<Monomial, usize>,
    var_matrices: Vec<RationalMatrix>,
}

impl QuotientAlgebra {
    /// Build from a reduced Groebner basis; errors if the ideal is not
    /// zero-dimensional. The unit ideal yields the dimension-0 algebra.
    pub fn new(gb: GroebnerBasis) -> Result<Self> {
        let basis = standard_monomials(&gb)?;
        let d = basis.dimension();
        let n = gb.vars().len();
        let index: HashMap<Monomial, usize> = basis
            .monomials()
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        let mut var_matrices = Vec::with_capacity(n);
        for k in 0..n {
            let mut m = RationalMatrix::zero(d, d);
            for (j, b) in basis.monomials().iter().enumerate() {
                let prod = crate::groebner::monomial_poly(
                    gb.vars().to_vec(),
                    b.mul(&Monomial::var(n, k)),
                );
                let nf = normal_form(&prod, &gb)?;
                for (mono, c) in nf.terms() {
                    let i = *index
                        .get(mono)
                        .ok_or_else(|| Error::Internal("normal form left the staircase".into()))?;
                    m[(i, j)] = c.clone();
                }
            }
            var_matrices.push(m);
        }
        Ok(QuotientAlgebra { gb, basis, index, var_matrices })
    }

    pub fn gb(&self) -> &GroebnerBasis {
        &self.gb
    }

    pub fn basis(&self) -> &QuotientBasis {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.dimension()
    }

    pub fn vars(&self) -> &[String] {
        self.gb.vars()
    }

    pub fn nvars(&self) -> usize {
        self.gb.vars().len()
    }

    /// Matrix of multiplication by x_k in the standard-monomial basis.
    pub fn var_matrix(&self, k: usize) -> &RationalMatrix {
        &self.var_matrices[k]
    }

    /// Coordinates of the normal form of f in the standard-monomial basis.
    pub fn nf_coords(&self, f: &MultiPoly) -> Result<Vec<Rational>> {
        let nf = normal_form(f, &self.gb)?;
        let mut v = vec![Rational::zero(); self.dim()];
        for (mono, c) in nf.terms() {
            let i = *self
                .index
                .get(mono)
                .ok_or_else(|| Error::Internal("normal form left the staircase".into()))?;
            v[i] = c.clone();
        }
        Ok(v)
    }

    /// Coordinates of NF(m) for a monomial, memoized across one computation.
    /// Reduction composes the cached variable matrices, so no division runs.
    pub(crate) fn monomial_nf_coords(
        &self,
        m: &Monomial,
        memo: &mut HashMap<Monomial, Vec<Rational>>,
    ) -> Vec<Rational> {
        if self.dim() == 0 {
            return Vec::new();
        }
        if let Some(v) = memo.get(m) {
            return v.clone();
        }
        let v = if let Some(&idx) = self.index.get(m) {
            let mut unit = vec![Rational::zero(); self.dim()];
            unit[idx] = Rational::one();
            unit
        } else {
            let k = m
                .exponents()
                .iter()
                .position(|&e| e > 0)
                .expect("a non-standard monomial has positive degree");
            let m_prime = m.div(&Monomial::var(m.nvars(), k));
            let inner = self.monomial_nf_coords(&m_prime, memo);
            self.var_matrices[k].matvec(&inner)
        };
        memo.insert(m.clone(), v.clone());
        v
    }

    /// Trace of the multiplication operator of a single monomial.
    pub(crate) fn monomial_trace(
        &self,
        m: &Monomial,
        memo: &mut HashMap<Monomial, Vec<Rational>>,
    ) -> Rational {
        let mut tr = Rational::zero();
        for (j, b) in self.basis.monomials().iter().enumerate() {
            let coords = self.monomial_nf_coords(&b.mul(m), memo);
            tr += coords[j].clone();
        }
        tr
    }

    /// Matrix of multiplication by f; column j holds the coordinates of
    /// NF(f * b_j). The dimension-0 algebra yields the 0x0 matrix.
    pub fn multiplication_matrix(&self, f: &MultiPoly) -> Result<RationalMatrix> {
        if f.vars() != self.vars() {
            return Err(Error::VariableMismatch(
                "polynomial is not in the algebra's ambient ring".into(),
            ));
        }
        let d = self.dim();
        let mut out = RationalMatrix::zero(d, d);
        let mut memo = HashMap::new();
        for (j, b) in self.basis.monomials().iter().enumerate() {
            for (mono, c) in f.terms() {
                let coords = self.monomial_nf_coords(&b.mul(mono), &mut memo);
                for i in 0..d {
                    if !coords[i].is_zero() {
                        out[(i, j)] += c * &coords[i];
                    }
                }
            }
        }
        Ok(out)
    }

    /// Trace of m_f, computed termwise through the memoized cache; equals
    /// the trace of `multiplication_matrix(f)`.
    pub fn trace_of(&self, f: &MultiPoly) -> Result<Rational> {
        if f.vars() != self.vars() {
            return Err(Error::VariableMismatch(
                "polynomial is not in the algebra's ambient ring".into(),
            ));
        }
        let mut memo = HashMap::new();
        let mut acc = Rational::zero();
        for (mono, c) in f.terms() {
            acc += c * self.monomial_trace(mono, &mut memo);
        }
        Ok(acc)
    }

    /// Determinant of m_f: the characteristic polynomial at 0 and the Bareiss
    /// determinant are both computed and must agree exactly.
    pub fn det_of(&self, f: &MultiPoly) -> Result<Rational> {
        let m = self.multiplication_matrix(f)?;
        let from_cp = char_poly_direct(&m)?.coeff(0);
        let from_bareiss = m.det_bareiss()?;
        if from_cp != from_bareiss {
            return Err(Error::Internal(
                "char-poly constant term disagrees with Bareiss determinant".into(),
            ));
        }
        Ok(from_bareiss)
    }
}

/// Exact characteristic polynomial det(M - x*I) by evaluation at the integer
/// points 0..=d followed by exact Lagrange interpolation. Independent of the
/// Newton-identity route.
pub fn char_poly_direct(m: &RationalMatrix) -> Result<UniPoly> {
    if !m.is_square() {
        return Err(Error::Shape(format!(
            "characteristic polynomial of {}x{} matrix",
            m.rows(),
            m.cols()
        )));
    }
    let d = m.rows();
    if d == 0 {
        return Ok(UniPoly::one());
    }
    let mut points = Vec::with_capacity(d + 1);
    for t in 0..=d {
        let tq = rational::rat(t as i64);
        let shifted = RationalMatrix::from_fn(d, d, |i, j| {
            if i == j {
                &m[(i, j)] - &tq
            } else {
                m[(i, j)].clone()
            }
        });
        points.push((tq, shifted.det_bareiss()?));
    }
    Ok(lagrange_interpolate(&points))
}

/// Exact Lagrange interpolation through distinct rational nodes.
fn lagrange_interpolate(points: &[(Rational, Rational)]) -> UniPoly {
    let mut acc = UniPoly::zero();
    for (i, (xi, yi)) in points.iter().enumerate() {
        if yi.is_zero() {
            continue;
        }
        let mut num = UniPoly::one();
        let mut den = Rational::one();
        for (j, (xj, _)) in points.iter().enumerate() {
            if i == j {
                continue;
            }
            num = num.mul(&UniPoly::from_coeffs(vec![-xj.clone(), Rational::one()]));
            den *= xi - xj;
        }
        acc = acc.add(&num.scale(&(yi / &den)));
    }
    acc
}

/// Characteristic polynomial det(M - x*I) recovered from the power traces
/// p_l = Tr(M^l), l = 1..=d, through Newton's identities. Valid over Q only:
/// step l divides by l.
pub fn char_poly_via_traces(power_traces: &[Rational], d: usize) -> UniPoly {
    assert!(power_traces.len() >= d, "need d power traces");
    // e_k = (1/k) * sum_{i=1..k} (-1)^(i-1) e_{k-i} p_i
    let mut e = vec![Rational::one()];
    for k in 1..=d {
        let mut acc = Rational::zero();
        let mut sign = Rational::one();
        for i in 1..=k {
            acc += &sign * &e[k - i] * &power_traces[i - 1];
            sign = -sign;
        }
        e.push(acc / rational::rat(k as i64));
    }
    // det(M - xI) = (-1)^d * (x^d - e1 x^{d-1} + e2 x^{d-2} - ...)
    let mut coeffs = vec![Rational::zero(); d + 1];
    let d_sign = if d % 2 == 0 { Rational::one() } else { -Rational::one() };
    for (k, ek) in e.iter().enumerate() {
        let k_sign = if k % 2 == 0 { Rational::one() } else { -Rational::one() };
        coeffs[d - k] = &d_sign * &k_sign * ek;
    }
    UniPoly::from_coeffs(coeffs)
}

/// Power traces Tr(M^l) for l = 1..=count.
pub fn power_traces(m: &RationalMatrix, count: usize) -> Vec<Rational> {
    let mut out = Vec::with_capacity(count);
    let mut acc = m.clone();
    for l in 1..=count {
        out.push(acc.trace());
        if l < count {
            acc = acc.matmul(m);
        }
    }
    out
}

/// One numeric solution with its exact multiplicity.
#[derive(Debug, Clone)]
pub struct SolutionPoint {
    pub coords: Vec<Complex64>,
    pub multiplicity: usize,
    pub is_real: bool,
}

/// All solutions of the system over the complex numbers.
#[derive(Debug, Clone)]
pub struct SolutionSet {
    pub points: Vec<SolutionPoint>,
    /// max |g_i(a)| over points and (monic) basis generators
    pub residual: f64,
}

impl SolutionSet {
    pub fn total_multiplicity(&self) -> usize {
        self.points.iter().map(|p| p.multiplicity).sum()
    }

    pub fn real_points(&self) -> impl Iterator<Item = &SolutionPoint> {
        self.points.iter().filter(|p| p.is_real)
    }

    pub fn num_real(&self) -> usize {
        self.real_points().count()
    }
}

/// Knobs for the numeric solver. The same seed always yields the same output.
#[derive(Debug, Clone)]
pub struct SolveOptions {
    pub tol: f64,
    pub seed: u64,
    pub retries: usize,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { tol: 1e-9, seed: 0, retries: 5 }
    }
}

impl QuotientAlgebra {
    /// Numeric solutions with exact multiplicities.
    ///
    /// Draws a random integer linear form g, takes the exact characteristic
    /// polynomial of M_g, reads multiplicities from its squarefree
    /// decomposition, root-finds the (simple-rooted) squarefree factors, and
    /// recovers coordinates from left eigenvectors of M_g — by component
    /// ratios against the coordinate of 1 for simple clusters, substituting
    /// normal-form coordinates when x_i is not a standard monomial, and by
    /// the mean Rayleigh quotient over the orthonormal eigenspace when the
    /// geometric multiplicity exceeds one. A residual check plus a
    /// char-poly product cross-check against a second independent form
    /// rejects non-separating g; up to `retries` fresh forms are drawn.
    pub fn solve_numeric(&self, opts: &SolveOptions) -> Result<SolutionSet> {
        let d = self.dim();
        let n = self.nvars();
        if d == 0 {
            return Ok(SolutionSet { points: Vec::new(), residual: 0.0 });
        }
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        // NF coordinates of each variable, for ratio reading.
        let nf_vars: Vec<Vec<Rational>> = (0..n)
            .map(|k| {
                let xk = MultiPoly::var(self.vars().to_vec(), k);
                self.nf_coords(&xk)
            })
            .collect::<Result<_>>()?;
        let nf_vars_f64: Vec<Vec<f64>> = nf_vars
            .iter()
            .map(|v| v.iter().map(rational::to_f64).collect())
            .collect();
        let var_real_t: Vec<RealMatrix> = (0..n)
            .map(|k| self.var_matrices[k].to_real().transpose())
            .collect();

        for _attempt in 0..opts.retries {
            let coeffs = draw_linear_form(&mut rng, n);
            let check_coeffs = draw_linear_form(&mut rng, n);
            match self.try_solve_with_form(&coeffs, &check_coeffs, &nf_vars_f64, &var_real_t) {
                Some(sols) => return Ok(sols),
                None => continue,
            }
        }
        Err(Error::Genericity { retries: opts.retries })
    }

    fn linear_form(&self, coeffs: &[i64]) -> MultiPoly {
        let mut g = MultiPoly::zero(self.vars().to_vec());
        for (k, &c) in coeffs.iter().enumerate() {
            if c != 0 {
                g.add_term(Monomial::var(self.nvars(), k), rational::rat(c));
            }
        }
        g
    }

    fn try_solve_with_form(
        &self,
        coeffs: &[i64],
        check_coeffs: &[i64],
        nf_vars_f64: &[Vec<f64>],
        var_real_t: &[RealMatrix],
    ) -> Option<SolutionSet> {
        let d = self.dim();
        let n = self.nvars();
        let g = self.linear_form(coeffs);
        let mg = self.multiplication_matrix(&g).ok()?;
        let cp = char_poly_direct(&mg).ok()?;
        let factors = squarefree_decompose(&cp).ok()?;
        let mg_t = mg.to_real().transpose();

        let mut points: Vec<SolutionPoint> = Vec::new();
        for (factor, mult) in &factors {
            let roots = numeric::poly_roots(factor);
            let mut i = 0;
            while i < roots.len() {
                let lambda = roots[i];
                let conj_partner = lambda.im != 0.0;
                let basis = numeric::eigenspace_basis(&mg_t, lambda, 1e-8);
                let s = basis.len();
                if s == 0 || s > *mult as usize {
                    return None; // numeric failure or eigenvalue collision
                }
                let coords: Vec<Complex64> = if s == 1 {
                    let v = &basis[0];
                    let denom = v[0]; // coordinate of the monomial 1
                    if denom.norm() < 1e-8 {
                        return None;
                    }
                    (0..n)
                        .map(|k| {
                            let num: Complex64 = nf_vars_f64[k]
                                .iter()
                                .zip(v)
                                .map(|(c, vi)| vi * *c)
                                .sum();
                            num / denom
                        })
                        .collect()
                } else {
                    (0..n)
                        .map(|k| numeric::mean_rayleigh(&var_real_t[k], &basis))
                        .collect()
                };
                let is_real = coords
                    .iter()
                    .all(|z| z.im.abs() <= REALITY_TOL * (1.0 + z.re.abs()));
                points.push(SolutionPoint {
                    coords: coords.clone(),
                    multiplicity: *mult as usize,
                    is_real,
                });
                if conj_partner {
                    // emit the structurally conjugate point
                    let cc: Vec<Complex64> = coords.iter().map(|z| z.conj()).collect();
                    points.push(SolutionPoint {
                        coords: cc,
                        multiplicity: *mult as usize,
                        is_real,
                    });
                    i += 2;
                } else {
                    i += 1;
                }
            }
        }

        if points.iter().map(|p| p.multiplicity).sum::<usize>() != d {
            return None;
        }

        // residual over the monic basis generators
        let mut residual: f64 = 0.0;
        for gen in self.gb.generators() {
            let scale = 1.0 + gen.max_abs_coeff();
            for pt in &points {
                let v = gen.eval_complex(&pt.coords).norm();
                if v > VALIDATION_TOL * scale {
                    return None;
                }
                residual = residual.max(v);
            }
        }

        // cross-check: the char-poly product identity for an independent form
        let g2 = self.linear_form(check_coeffs);
        let cp2 = char_poly_direct(&self.multiplication_matrix(&g2).ok()?).ok()?;
        if !product_matches(&cp2, &g2, &points) {
            return None;
        }

        points.sort_by(|a, b| {
            for (za, zb) in a.coords.iter().zip(&b.coords) {
                match za
                    .re
                    .partial_cmp(&zb.re)
                    .unwrap()
                    .then(za.im.partial_cmp(&zb.im).unwrap())
                {
                    std::cmp::Ordering::Equal => continue,
                    ord => return ord,
                }
            }
            std::cmp::Ordering::Equal
        });
        Some(SolutionSet { points, residual })
    }
}

/// Numeric check that cp(x) = prod (f(a) - x)^mu(a) at integer samples.
fn product_matches(cp: &UniPoly, f: &MultiPoly, points: &[SolutionPoint]) -> bool {
    let d = cp.degree().unwrap_or(0);
    let scale = 1.0 + cp.max_abs_coeff();
    for t in 0..=(d + 1) {
        let x = rational::rat(t as i64);
        let exact = rational::to_f64(&cp.eval(&x));
        let mut prod = Complex64::new(1.0, 0.0);
        for pt in points {
            let base = f.eval_complex(&pt.coords) - Complex64::new(t as f64, 0.0);
            prod *= base.powu(pt.multiplicity as u32);
        }
        let dev = (prod - Complex64::new(exact, 0.0)).norm();
        if dev > VALIDATION_TOL * scale * (1.0 + exact.abs()) {
            return false;
        }
    }
    true
}

fn draw_linear_form(rng: &mut ChaCha8Rng, n: usize) -> Vec<i64> {
    loop {
        let v: Vec<i64> = (0..n).map(|_| rng.gen_range(-99..=99)).collect();
        if v.iter().any(|&c| c != 0) {
            return v;
        }
    }
}

/// Outcome of comparing an exact characteristic polynomial against the
/// product over numeric solutions.
#[derive(Debug, Clone)]
pub struct LocalCheckReport {
    pub samples: usize,
    pub max_relative_deviation: f64,
    pub pass: bool,
}

impl QuotientAlgebra {
    /// Compare det(M_f - x*I) (exact) against prod (f(a) - x)^mu(a)
    /// (numeric, from `sols`) at integer sample points; passes when the
    /// relative deviation stays within `tol` scaled by coefficient magnitude.
    pub fn stickelberger_local_check(
        &self,
        f: &MultiPoly,
        sols: &SolutionSet,
        tol: f64,
    ) -> Result<LocalCheckReport> {
        let cp = char_poly_direct(&self.multiplication_matrix(f)?)?;
        let d = cp.degree().unwrap_or(0);
        let coeff_scale = 1.0 + cp.max_abs_coeff();
        let mut max_rel: f64 = 0.0;
        let samples = d + 2;
        for t in 0..samples {
            let x = rational::rat(t as i64);
            let exact = rational::to_f64(&cp.eval(&x));
            let mut prod = Complex64::new(1.0, 0.0);
            for pt in &sols.points {
                let base = f.eval_complex(&pt.coords) - Complex64::new(t as f64, 0.0);
                prod *= base.powu(pt.multiplicity as u32);
            }
            let dev = (prod - Complex64::new(exact, 0.0)).norm();
            let rel = dev / (1.0 + exact.abs());
            max_rel = max_rel.max(rel);
        }
        Ok(LocalCheckReport {
            samples,
            max_relative_deviation: max_rel,
            pass: max_rel <= tol * coeff_scale,
        })
    }
}
