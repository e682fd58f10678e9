//! The U-resultant: det(U_0*I + U_1*M_{x_1} + ... + U_n*M_{x_n}) as an exact
//! homogeneous polynomial of degree dim A in U_0..U_n, plus a sampling check
//! of its factorization into linear forms at the solutions.
//!
//! The determinant over Q[U_0..U_n] is evaluated, not expanded: fixing
//! integer values of U_1..U_n turns each evaluation into one exact
//! characteristic polynomial in U_0, and the remaining coefficients are
//! homogeneous of known degree, so they interpolate exactly on a principal
//! lattice after dehomogenizing by U_n.

use num_complex::Complex64;
use num_traits::Zero;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::matrix::RationalMatrix;
use crate::monomial::Monomial;
use crate::multipoly::MultiPoly;
use crate::par;
use crate::quotient::{char_poly_direct, QuotientAlgebra, SolutionSet};
use crate::rational::{self, Rational};

/// Variable names U0..Un for a system in n variables.
pub fn u_variable_names(n: usize) -> Vec<String> {
    (0..=n).map(|k| format!("U{k}")).collect()
}

/// Exponent vectors of all monomials of total degree <= bound in `nvars`
/// variables, in deterministic (graded-lexicographic) order.
fn monomials_up_to(nvars: usize, bound: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; nvars];
    fn rec(out: &mut Vec<Vec<u32>>, cur: &mut Vec<u32>, idx: usize, left: u32) {
        if idx == cur.len() {
            out.push(cur.clone());
            return;
        }
        for e in 0..=left {
            cur[idx] = e;
            rec(out, cur, idx + 1, left - e);
        }
        cur[idx] = 0;
    }
    rec(&mut out, &mut cur, 0, bound);
    out.sort_by_key(|e| (e.iter().sum::<u32>(), e.clone()));
    out
}

/// The exact U-resultant of the algebra. For the dimension-0 algebra this is
/// the empty determinant 1.
pub fn u_resultant(a: &QuotientAlgebra) -> Result<MultiPoly> {
    let d = a.dim();
    let n = a.nvars();
    let uvars = u_variable_names(n);
    if d == 0 {
        return Ok(MultiPoly::one(uvars));
    }

    // Evaluation grid: (U_1..U_{n-1}) on the principal lattice of degree d,
    // U_n pinned to 1.
    let lattice = monomials_up_to(n.saturating_sub(1), d as u32);
    // char poly of sum u_k M_k at each lattice point (exact, parallelizable)
    let cps: Vec<Result<Vec<Rational>>> = par::map_indexed(lattice.len(), |pt_idx| {
        let beta = &lattice[pt_idx];
        let mut m = RationalMatrix::zero(d, d);
        for (k_minus_1, &b) in beta.iter().enumerate() {
            if b != 0 {
                m = m.add(&a.var_matrix(k_minus_1).scale(&rational::rat(b as i64)));
            }
        }
        m = m.add(a.var_matrix(n - 1));
        let cp = char_poly_direct(&m)?;
        // det(U0*I + M) = cp(-U0): coefficient of U0^j is (-1)^j cp_j
        Ok((0..=d)
            .map(|j| {
                let c = cp.coeff(j);
                if j % 2 == 0 {
                    c
                } else {
                    -c
                }
            })
            .collect())
    });
    let cps: Vec<Vec<Rational>> = cps.into_iter().collect::<Result<_>>()?;

    let mut result = MultiPoly::zero(uvars.clone());
    for j in 0..=d {
        let k = (d - j) as u32; // homogeneous degree in U_1..U_n
        let support = monomials_up_to(n.saturating_sub(1), k);
        let count = support.len();
        // rows: lattice points with |beta| <= k (a prefix is not guaranteed,
        // filter explicitly)
        let rows: Vec<usize> = (0..lattice.len())
            .filter(|&i| lattice[i].iter().sum::<u32>() <= k)
            .take(count)
            .collect();
        if rows.len() < count {
            return Err(Error::Internal("interpolation lattice too small".into()));
        }
        let vandermonde = RationalMatrix::from_fn(count, count, |r, c| {
            let beta = &lattice[rows[r]];
            let alpha = &support[c];
            let mut acc = Rational::from_integer(1.into());
            for (bi, ai) in beta.iter().zip(alpha) {
                for _ in 0..*ai {
                    acc *= rational::rat(*bi as i64);
                }
            }
            acc
        });
        let rhs: Vec<Rational> = rows.iter().map(|&r| cps[r][j].clone()).collect();
        let coeffs = vandermonde.solve(&rhs)?;
        for (alpha, c) in support.iter().zip(coeffs) {
            if c.is_zero() {
                continue;
            }
            // rehomogenize: U0^j * U^alpha * Un^(k - |alpha|)
            let mut exps = vec![0u32; n + 1];
            exps[0] = j as u32;
            for (i, &e) in alpha.iter().enumerate() {
                exps[i + 1] = e;
            }
            exps[n] = k - alpha.iter().sum::<u32>();
            result.add_term(Monomial::new(exps), c);
        }
    }
    Ok(result)
}

/// Outcome of sampling the product factorization.
#[derive(Debug, Clone)]
pub struct ProductFormulaReport {
    pub samples: usize,
    pub worst_relative_deviation: f64,
    pub pass: bool,
}

/// Check R(u) = prod (u_0 + sum u_k a_k)^mu(a) at `samples` random integer
/// points u in [-9, 9]^(n+1); R is evaluated exactly, the product
/// numerically, and the relative deviation must stay within 1e-6.
pub fn verify_product_formula(
    a: &QuotientAlgebra,
    r: &MultiPoly,
    sols: &SolutionSet,
    samples: usize,
    seed: u64,
) -> Result<ProductFormulaReport> {
    let n = a.nvars();
    if r.nvars() != n + 1 {
        return Err(Error::VariableMismatch(
            "U-resultant arity does not match the system".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sample_points: Vec<Vec<i64>> = (0..samples)
        .map(|_| (0..=n).map(|_| rng.gen_range(-9..=9)).collect())
        .collect();
    let devs: Vec<f64> = par::map_indexed(samples, |s| {
        let u = &sample_points[s];
        let uq: Vec<Rational> = u.iter().map(|&c| rational::rat(c)).collect();
        let exact = rational::to_f64(&r.eval(&uq));
        let mut prod = Complex64::new(1.0, 0.0);
        for pt in &sols.points {
            let mut lin = Complex64::new(u[0] as f64, 0.0);
            for (k, z) in pt.coords.iter().enumerate() {
                lin += Complex64::new(u[k + 1] as f64, 0.0) * z;
            }
            prod *= lin.powu(pt.multiplicity as u32);
        }
        (prod - Complex64::new(exact, 0.0)).norm() / (1.0 + exact.abs())
    });
    let worst = devs.into_iter().fold(0.0f64, f64::max);
    Ok(ProductFormulaReport {
        samples,
        worst_relative_deviation: worst,
        pass: worst <= 1e-6,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groebner::buchberger;
    use crate::monomial::{MonomialOrder, OrderKind};
    use crate::parse::{parse_poly, parse_poly_infer};
    use crate::quotient::SolveOptions;
    use crate::rational::rat;

    fn algebra(gens: &[&str], vars: &[&str]) -> QuotientAlgebra {
        let vs: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
        let polys: Vec<MultiPoly> = gens.iter().map(|g| parse_poly(g, &vs).unwrap()).collect();
        let ord = MonomialOrder::new(OrderKind::GrevLex, vs.len());
        QuotientAlgebra::new(buchberger(&polys, &ord).unwrap()).unwrap()
    }

    #[test]
    fn sqrt2_resultant() {
        let a = algebra(&["x^2 - 2"], &["x"]);
        let r = u_resultant(&a).unwrap();
        let expect = parse_poly_infer("U0^2 - 2*U1^2").unwrap();
        assert_eq!(r, expect);
        // R(1, 1) = -1 = (1 + sqrt2)(1 - sqrt2)
        assert_eq!(r.eval(&[rat(1), rat(1)]), rat(-1));
    }

    #[test]
    fn single_rational_root() {
        let a = algebra(&["x - 5"], &["x"]);
        let r = u_resultant(&a).unwrap();
        let expect = parse_poly_infer("U0 + 5*U1").unwrap();
        assert_eq!(r, expect);
    }

    #[test]
    fn triple_point_cube() {
        let a = algebra(&["x^2", "x*y", "y^2"], &["x", "y"]);
        let r = u_resultant(&a).unwrap();
        assert_eq!(r.vars(), &["U0", "U1", "U2"]);
        assert_eq!(r.num_terms(), 1);
        assert_eq!(r.coeff(&Monomial::new(vec![3, 0, 0])), rat(1));
        // value at (2, 5, 7): 2^3
        assert_eq!(r.eval(&[rat(2), rat(5), rat(7)]), rat(8));
    }

    #[test]
    fn homogeneity_and_specializations() {
        let a = algebra(&["x^2 + y^2 - 1", "x*y"], &["x", "y"]);
        let d = a.dim() as u32;
        let r = u_resultant(&a).unwrap();
        for (m, _) in r.terms() {
            assert_eq!(m.total_degree(), d);
        }
        // U0 = t, others 0: det(tI) = t^d
        assert_eq!(r.eval(&[rat(3), rat(0), rat(0)]), rat(81));
        // U_j = 1, others 0 (j >= 1): det of M_{x_j}
        let det_mx = a
            .det_of(&parse_poly("x", &a.vars().to_vec()).unwrap())
            .unwrap();
        assert_eq!(r.eval(&[rat(0), rat(1), rat(0)]), det_mx);
    }

    #[test]
    fn unit_ideal_resultant_is_one() {
        let a = algebra(&["1"], &["x"]);
        let r = u_resultant(&a).unwrap();
        assert!(r.is_constant());
        assert_eq!(r.constant_term(), rat(1));
    }

    #[test]
    fn product_formula_samples() {
        for gens in [vec!["x^2 - 2"], vec!["x^2", "x*y", "y^2"], vec!["x^2 + 1"]] {
            let vars: Vec<&str> = if gens.len() > 1 { vec!["x", "y"] } else { vec!["x"] };
            let a = algebra(&gens, &vars);
            let r = u_resultant(&a).unwrap();
            let sols = a.solve_numeric(&SolveOptions::default()).unwrap();
            let rep = verify_product_formula(&a, &r, &sols, 12, 7).unwrap();
            assert!(rep.pass, "worst deviation {}", rep.worst_relative_deviation);
        }
    }
}
