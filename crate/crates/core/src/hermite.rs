//! Trace forms and exact signatures for real root counting.
//!
//! The Gram matrix of the weighted trace form has entries Tr(m_{b_i b_j h})
//! over the standard-monomial basis. Signatures are computed exactly: the
//! Gram matrix is symmetric, hence real-rooted, so Descartes' rule applied to
//! its characteristic polynomial counts positive and negative eigenvalues
//! with multiplicity — no floating-point thresholds enter the headline
//! counts.
//!
//! The base field here is Q while the counting statements are semantics over
//! R; that is sound because the signature of a rational symmetric matrix is
//! the same over Q and over R. The (n_pos, n_neg, n_zero) split recombines
//! three signatures (weights 1, h, h^2); the n_zero output is the standard
//! completion of the sign-counting identity, which by itself only separates
//! h > 0 from h < 0.

use std::collections::HashMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::matrix::RationalMatrix;
use crate::multipoly::MultiPoly;
use crate::par;
use crate::quotient::{char_poly_direct, QuotientAlgebra, SolveOptions};
use crate::rational::Rational;

/// Gram matrix of the symmetric bilinear form (a, b) -> Tr(m_{a b h}).
#[derive(Debug, Clone)]
pub struct TraceForm {
    pub gram: RationalMatrix,
    pub weight: MultiPoly,
}

/// Exact inertia of a trace form.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SignatureReport {
    pub positives: usize,
    pub negatives: usize,
    pub zeros: usize,
    pub signature: i64,
}

/// Weighted trace form of the algebra; weight 1 gives the plain trace form.
pub fn trace_form(a: &QuotientAlgebra, h: &MultiPoly) -> Result<TraceForm> {
    if h.vars() != a.vars() {
        return Err(Error::VariableMismatch(
            "weight polynomial is not in the algebra's ambient ring".into(),
        ));
    }
    let d = a.dim();
    let mut memo = HashMap::new();
    // u[m] = Tr(m_{b_m * h})
    let basis = a.basis().monomials();
    let mut u = vec![Rational::zero(); d];
    for (m_idx, b) in basis.iter().enumerate() {
        let mut acc = Rational::zero();
        for (mono, c) in h.terms() {
            acc += c * a.monomial_trace(&b.mul(mono), &mut memo);
        }
        u[m_idx] = acc;
    }
    // Tr(m_{b_i b_j h}) = sum_m NF(b_i b_j)_m * u_m
    let mut gram = RationalMatrix::zero(d, d);
    for i in 0..d {
        for j in 0..=i {
            let coords = a.monomial_nf_coords(&basis[i].mul(&basis[j]), &mut memo);
            let mut val = Rational::zero();
            for (m, c) in coords.iter().enumerate() {
                if !c.is_zero() {
                    val += c * &u[m];
                }
            }
            gram[(i, j)] = val.clone();
            gram[(j, i)] = val;
        }
    }
    Ok(TraceForm { gram, weight: h.clone() })
}

/// Exact inertia (p, q, zeros) of a symmetric rational matrix: Descartes'
/// rule on its characteristic polynomial, which is real-rooted by symmetry,
/// counts positive roots exactly (with multiplicity).
pub fn exact_signature(t: &TraceForm) -> Result<SignatureReport> {
    signature_of_gram(&t.gram)
}

pub(crate) fn signature_of_gram(gram: &RationalMatrix) -> Result<SignatureReport> {
    if !gram.is_symmetric() {
        return Err(Error::Shape("signature requires a symmetric matrix".into()));
    }
    let d = gram.rows();
    if d == 0 {
        return Ok(SignatureReport { positives: 0, negatives: 0, zeros: 0, signature: 0 });
    }
    let cp = char_poly_direct(gram)?;
    let coeffs = cp.coeffs();
    let zeros = coeffs
        .iter()
        .position(|c| !c.is_zero())
        .expect("characteristic polynomial is nonzero");
    let mut variations = 0usize;
    let mut last_sign = 0i8;
    for c in coeffs[zeros..].iter().filter(|c| !c.is_zero()) {
        let s = if c > &Rational::zero() { 1i8 } else { -1i8 };
        if last_sign != 0 && s != last_sign {
            variations += 1;
        }
        last_sign = s;
    }
    let positives = variations;
    let negatives = d - zeros - positives;
    Ok(SignatureReport {
        positives,
        negatives,
        zeros,
        signature: positives as i64 - negatives as i64,
    })
}

/// Number of real solutions: the signature of the plain trace form.
pub fn count_real(a: &QuotientAlgebra) -> Result<usize> {
    let sig = exact_signature(&trace_form(a, &MultiPoly::one(a.vars().to_vec()))?)?;
    if sig.signature < 0 {
        return Err(Error::Internal(
            "trace form signature is negative; the type theorem forbids this".into(),
        ));
    }
    Ok(sig.signature as usize)
}

/// Counts of real solutions with h > 0, h < 0, h = 0, from the three
/// signatures of the forms weighted by 1, h, h^2.
pub fn count_sign_conditions(
    a: &QuotientAlgebra,
    h: &MultiPoly,
) -> Result<(usize, usize, usize)> {
    let one = MultiPoly::one(a.vars().to_vec());
    let h2 = h.checked_mul(h)?;
    let ((s1, sh), sh2) = par::join(
        || {
            par::join(
                || trace_form(a, &one).and_then(|t| exact_signature(&t)),
                || trace_form(a, h).and_then(|t| exact_signature(&t)),
            )
        },
        || trace_form(a, &h2).and_then(|t| exact_signature(&t)),
    );
    let (s1, sh, sh2) = (s1?.signature, sh?.signature, sh2?.signature);
    // n_pos + n_neg + n_zero = s1; n_pos - n_neg = sh; n_pos + n_neg = sh2
    let two_pos = sh2 + sh;
    let two_neg = sh2 - sh;
    let zero = s1 - sh2;
    if two_pos < 0 || two_neg < 0 || zero < 0 || two_pos % 2 != 0 || two_neg % 2 != 0 {
        return Err(Error::Internal(format!(
            "sign-condition recombination produced an invalid triple from signatures ({s1}, {sh}, {sh2})"
        )));
    }
    Ok(((two_pos / 2) as usize, (two_neg / 2) as usize, zero as usize))
}

/// One local factor of the algebra over R.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LocalFactor {
    /// local multiplicity
    pub lambda: usize,
    /// residue field degree over R: 1 for R, 2 for C
    pub residue_degree: usize,
}

/// Shape of A over R: r1 real local factors, r2 complex-conjugate ones.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalFactorProfile {
    pub r1: usize,
    pub r2: usize,
    pub factors: Vec<LocalFactor>,
}

/// Recover (r1, r2) from the exact type of the trace form and per-factor
/// multiplicities from the numeric solver; the dimension identity
/// sum lambda_i * [L_i : R] = dim A is asserted.
pub fn local_profile(a: &QuotientAlgebra, opts: &SolveOptions) -> Result<LocalFactorProfile> {
    let sig = exact_signature(&trace_form(a, &MultiPoly::one(a.vars().to_vec()))?)?;
    // type (p, q) = (r1 + r2, r2)
    let r2 = sig.negatives;
    if sig.positives < r2 {
        return Err(Error::Internal("trace form type has p < q".into()));
    }
    let r1 = sig.positives - r2;

    let sols = a.solve_numeric(opts)?;
    let mut factors = Vec::new();
    let mut skip_next_conjugate: Vec<bool> = vec![false; sols.points.len()];
    for (i, pt) in sols.points.iter().enumerate() {
        if pt.is_real {
            factors.push(LocalFactor { lambda: pt.multiplicity, residue_degree: 1 });
        } else if !skip_next_conjugate[i] {
            // find and mark the conjugate partner
            let partner = sols.points.iter().enumerate().position(|(j, q)| {
                j > i
                    && !skip_next_conjugate[j]
                    && !q.is_real
                    && q.multiplicity == pt.multiplicity
                    && q.coords
                        .iter()
                        .zip(&pt.coords)
                        .all(|(zq, zp)| (zq.conj() - zp).norm() < 1e-6 * (1.0 + zp.norm()))
            });
            match partner {
                Some(j) => {
                    skip_next_conjugate[j] = true;
                    factors.push(LocalFactor { lambda: pt.multiplicity, residue_degree: 2 });
                }
                None => {
                    return Err(Error::Internal(
                        "non-real solution without a conjugate partner".into(),
                    ))
                }
            }
        }
    }
    let total: usize = factors.iter().map(|f| f.lambda * f.residue_degree).sum();
    if total != a.dim() {
        return Err(Error::Internal(format!(
            "local dimension identity failed: {} != {}",
            total,
            a.dim()
        )));
    }
    Ok(LocalFactorProfile { r1, r2, factors })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groebner::buchberger;
    use crate::monomial::{MonomialOrder, OrderKind};
    use crate::parse::parse_poly;
    use crate::rational::rat;

    fn algebra(gens: &[&str], vars: &[&str]) -> QuotientAlgebra {
        let vs: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
        let polys: Vec<MultiPoly> = gens.iter().map(|g| parse_poly(g, &vs).unwrap()).collect();
        let ord = MonomialOrder::new(OrderKind::GrevLex, vs.len());
        QuotientAlgebra::new(buchberger(&polys, &ord).unwrap()).unwrap()
    }

    fn p(src: &str, a: &QuotientAlgebra) -> MultiPoly {
        parse_poly(src, &a.vars().to_vec()).unwrap()
    }

    #[test]
    fn trace_form_power_sums() {
        // A = Q[x]/<x^3 - x>, basis {1, x, x^2}: entries are power sums of
        // {-1, 0, 1}
        let a = algebra(&["x^3 - x"], &["x"]);
        let t = trace_form(&a, &p("1", &a)).unwrap();
        let expect = RationalMatrix::from_rows(vec![
            vec![rat(3), rat(0), rat(2)],
            vec![rat(0), rat(2), rat(0)],
            vec![rat(2), rat(0), rat(2)],
        ]);
        assert_eq!(t.gram, expect);
    }

    #[test]
    fn trace_form_complex_block() {
        // A = Q[x]/<x^2 + 1> presents C: the trace form is diag(2, -2)
        let a = algebra(&["x^2 + 1"], &["x"]);
        let t = trace_form(&a, &p("1", &a)).unwrap();
        let expect = RationalMatrix::from_rows(vec![
            vec![rat(2), rat(0)],
            vec![rat(0), rat(-2)],
        ]);
        assert_eq!(t.gram, expect);
        let sig = exact_signature(&t).unwrap();
        assert_eq!((sig.positives, sig.negatives, sig.zeros, sig.signature), (1, 1, 0, 0));
    }

    #[test]
    fn trace_form_unit_ideal_is_empty() {
        let a = algebra(&["1"], &["x"]);
        let t = trace_form(&a, &p("1", &a)).unwrap();
        assert_eq!(t.gram.rows(), 0);
        let sig = exact_signature(&t).unwrap();
        assert_eq!((sig.positives, sig.negatives, sig.zeros, sig.signature), (0, 0, 0, 0));
    }

    #[test]
    fn signature_examples() {
        let dense = TraceForm {
            gram: RationalMatrix::from_rows(vec![
                vec![rat(3), rat(0), rat(2)],
                vec![rat(0), rat(2), rat(0)],
                vec![rat(2), rat(0), rat(2)],
            ]),
            weight: MultiPoly::one(vec!["x".into()]),
        };
        let sig = exact_signature(&dense).unwrap();
        assert_eq!((sig.positives, sig.negatives, sig.zeros, sig.signature), (3, 0, 0, 3));

        let zero2 = TraceForm {
            gram: RationalMatrix::zero(2, 2),
            weight: MultiPoly::one(vec!["x".into()]),
        };
        let sig0 = exact_signature(&zero2).unwrap();
        assert_eq!((sig0.positives, sig0.negatives, sig0.zeros, sig0.signature), (0, 0, 2, 0));
    }

    #[test]
    fn asymmetric_rejected() {
        let t = TraceForm {
            gram: RationalMatrix::from_rows(vec![
                vec![rat(0), rat(1)],
                vec![rat(2), rat(0)],
            ]),
            weight: MultiPoly::one(vec!["x".into()]),
        };
        assert!(matches!(exact_signature(&t), Err(Error::Shape(_))));
    }

    #[test]
    fn real_counts() {
        assert_eq!(count_real(&algebra(&["x^2 + 1"], &["x"])).unwrap(), 0);
        assert_eq!(count_real(&algebra(&["x^3 - x"], &["x"])).unwrap(), 3);
        assert_eq!(count_real(&algebra(&["x^2"], &["x"])).unwrap(), 1);
        assert_eq!(count_real(&algebra(&["1"], &["x"])).unwrap(), 0);
    }

    #[test]
    fn sign_conditions() {
        let a = algebra(&["x^3 - x"], &["x"]);
        assert_eq!(count_sign_conditions(&a, &p("x", &a)).unwrap(), (1, 1, 1));
        // h = 1 is positive everywhere
        assert_eq!(count_sign_conditions(&a, &p("1", &a)).unwrap(), (3, 0, 0));

        let b = algebra(&["x^2 - 2"], &["x"]);
        assert_eq!(count_sign_conditions(&b, &p("x", &b)).unwrap(), (1, 1, 0));
    }

    #[test]
    fn profiles() {
        let opts = SolveOptions::default();
        let a = algebra(&["x^2 + 1"], &["x"]);
        let prof = local_profile(&a, &opts).unwrap();
        assert_eq!((prof.r1, prof.r2), (0, 1));
        assert_eq!(prof.factors, vec![LocalFactor { lambda: 1, residue_degree: 2 }]);

        let b = algebra(&["x^3 - x"], &["x"]);
        let profb = local_profile(&b, &opts).unwrap();
        assert_eq!((profb.r1, profb.r2), (3, 0));

        let c = algebra(&["x^2"], &["x"]);
        let profc = local_profile(&c, &opts).unwrap();
        assert_eq!((profc.r1, profc.r2), (1, 0));
        assert_eq!(profc.factors, vec![LocalFactor { lambda: 2, residue_degree: 1 }]);
    }

    #[test]
    fn weighted_complex_block_shape() {
        // A = Q[x]/<x^2+1>, h with h(i) = u + iv: gram over {1, x} is
        // [[2u, -2v], [-2v, -2u]] exactly, eigenvalues +-2|h(i)|.
        let a = algebra(&["x^2 + 1"], &["x"]);
        let h = p("x^3 + 2*x + 5", &a); // h(i) = 5 + i
        let t = trace_form(&a, &h).unwrap();
        let (u, v) = (rat(5), rat(1));
        assert_eq!(t.gram[(0, 0)], rat(2) * &u);
        assert_eq!(t.gram[(0, 1)], rat(-2) * &v);
        assert_eq!(t.gram[(1, 0)], rat(-2) * &v);
        assert_eq!(t.gram[(1, 1)], rat(-2) * &u);
        let sig = exact_signature(&t).unwrap();
        assert_eq!(sig.signature, 0);
        // char poly x^2 - 4(u^2+v^2)
        let cp = char_poly_direct(&t.gram).unwrap();
        assert_eq!(cp, crate::unipoly::UniPoly::from_coeffs(vec![rat(-4) * (&u * &u + &v * &v), rat(0), rat(1)]));
    }
}
