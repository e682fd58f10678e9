//! Buchberger's algorithm, multivariate division, the zero-dimensionality
//! test, and the standard-monomial basis under the staircase.
//!
//! Pair selection is the normal strategy (smallest lcm first) with
//! Buchberger's product and chain criteria; a final interreduction pass makes
//! the output the reduced basis, so it is canonical for a fixed ideal and
//! order.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::One;

use crate::error::{Error, Result};
use crate::monomial::{Monomial, MonomialOrder};
use crate::multipoly::MultiPoly;
use crate::rational::Rational;

/// A reduced Groebner basis together with its order.
#[derive(Debug, Clone)]
pub struct GroebnerBasis {
    generators: Vec<MultiPoly>,
    order: MonomialOrder,
    vars: Vec<String>,
}

impl GroebnerBasis {
    pub fn generators(&self) -> &[MultiPoly] {
        &self.generators
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    /// Leading monomials of the generators.
    pub fn leading_monomials(&self) -> Vec<&Monomial> {
        self.generators
            .iter()
            .map(|g| g.leading_term(&self.order).expect("generators are nonzero").0)
            .collect()
    }

    /// True iff the basis is {1}.
    pub fn is_unit_ideal(&self) -> bool {
        self.generators.len() == 1 && self.generators[0].is_constant() && !self.generators[0].is_zero()
    }
}

/// The standard monomials under the staircase of a zero-dimensional ideal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientBasis {
    monomials: Vec<Monomial>,
}

impl QuotientBasis {
    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn dimension(&self) -> usize {
        self.monomials.len()
    }
}

/// Remainder of f on division by the basis: no term of the result is
/// divisible by any leading monomial, and f - result lies in the ideal.
pub fn normal_form(f: &MultiPoly, gb: &GroebnerBasis) -> Result<MultiPoly> {
    if f.vars() != gb.vars {
        return Err(Error::VariableMismatch(format!(
            "[{}] vs basis over [{}]",
            f.vars().join(", "),
            gb.vars.join(", ")
        )));
    }
    Ok(reduce(f, &gb.generators, &gb.order))
}

/// Division-algorithm remainder of f modulo `gens` (need not be a GB).
fn reduce(f: &MultiPoly, gens: &[MultiPoly], ord: &MonomialOrder) -> MultiPoly {
    let leading: Vec<(Monomial, Rational)> = gens
        .iter()
        .map(|g| {
            let (m, c) = g.leading_term(ord).expect("zero generator in reduction");
            (m.clone(), c.clone())
        })
        .collect();
    let mut work = f.clone();
    let mut rem = MultiPoly::zero(f.vars().to_vec());
    'outer: while !work.is_zero() {
        let (lm, lc) = {
            let (m, c) = work.leading_term(ord).unwrap();
            (m.clone(), c.clone())
        };
        for (i, (gm, gc)) in leading.iter().enumerate() {
            if gm.divides(&lm) {
                let qm = lm.div(gm);
                let qc = &lc / gc;
                let sub = gens[i].mul_term(&qm, &qc);
                work = &work - &sub;
                continue 'outer;
            }
        }
        // leading term is irreducible; move it to the remainder
        rem.add_term(lm.clone(), lc.clone());
        let mut single = MultiPoly::zero(f.vars().to_vec());
        single.add_term(lm, lc);
        work = &work - &single;
    }
    rem
}

fn s_polynomial(f: &MultiPoly, g: &MultiPoly, ord: &MonomialOrder) -> MultiPoly {
    let (fm, fc) = f.leading_term(ord).expect("nonzero");
    let (gm, gc) = g.leading_term(ord).expect("nonzero");
    let l = fm.lcm(gm);
    let a = f.mul_term(&l.div(fm), &(Rational::one() / fc));
    let b = g.mul_term(&l.div(gm), &(Rational::one() / gc));
    &a - &b
}

/// Reduced Groebner basis of the ideal generated by `gens` under `ord`.
pub fn buchberger(gens: &[MultiPoly], ord: &MonomialOrder) -> Result<GroebnerBasis> {
    let vars = gens
        .first()
        .map(|g| g.vars().to_vec())
        .ok_or_else(|| Error::Domain("empty generator list".into()))?;
    for g in gens {
        if g.vars() != vars {
            return Err(Error::VariableMismatch(
                "generators live in different rings".into(),
            ));
        }
    }
    if ord.nvars() != vars.len() {
        return Err(Error::VariableMismatch(
            "order arity differs from ring arity".into(),
        ));
    }
    let mut basis: Vec<MultiPoly> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
    if basis.is_empty() {
        return Err(Error::Domain("all generators are zero".into()));
    }

    // Pending pairs keyed by (lcm, i, j) so the smallest lcm pops first.
    let mut pending: BTreeMap<(u32, Monomial, usize, usize), ()> = BTreeMap::new();
    let mut alive: BTreeSet<(usize, usize)> = BTreeSet::new();
    let lm_of = |p: &MultiPoly| p.leading_term(ord).expect("nonzero").0.clone();
    let push_pairs = |basis: &[MultiPoly],
                          t: usize,
                          pending: &mut BTreeMap<(u32, Monomial, usize, usize), ()>,
                          alive: &mut BTreeSet<(usize, usize)>| {
        let lt = lm_of(&basis[t]);
        for i in 0..t {
            let l = lm_of(&basis[i]).lcm(&lt);
            pending.insert((l.total_degree(), l, i, t), ());
            alive.insert((i, t));
        }
    };
    for t in 0..basis.len() {
        push_pairs(&basis, t, &mut pending, &mut alive);
    }

    while let Some(((_, l, i, j), ())) = pending.pop_first() {
        alive.remove(&(i, j));
        let lmi = lm_of(&basis[i]);
        let lmj = lm_of(&basis[j]);
        // Product criterion: coprime leading monomials reduce to zero.
        if lmi.mul(&lmj) == l {
            continue;
        }
        // Chain criterion: some k with lm_k | lcm and both companion pairs
        // already handled.
        let chained = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && lm_of(&basis[k]).divides(&l)
                && !alive.contains(&(i.min(k), i.max(k)))
                && !alive.contains(&(j.min(k), j.max(k)))
        });
        if chained {
            continue;
        }
        let s = s_polynomial(&basis[i], &basis[j], ord);
        let r = reduce(&s, &basis, ord);
        if !r.is_zero() {
            basis.push(r);
            let t = basis.len() - 1;
            push_pairs(&basis, t, &mut pending, &mut alive);
        }
    }

    // Minimize: drop generators whose leading monomial another one divides.
    let mut keep: Vec<MultiPoly> = Vec::new();
    'outer: for (i, g) in basis.iter().enumerate() {
        let lm = lm_of(g);
        for (j, h) in basis.iter().enumerate() {
            if i == j {
                continue;
            }
            let lmh = lm_of(h);
            if lmh.divides(&lm) && (lmh != lm || j < i) {
                continue 'outer;
            }
        }
        keep.push(g.clone());
    }

    // Interreduce: fully reduce each generator against the others, make monic.
    let mut reduced: Vec<MultiPoly> = keep;
    loop {
        let mut changed = false;
        for i in 0..reduced.len() {
            let others: Vec<MultiPoly> = reduced
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, p)| p.clone())
                .collect();
            if others.is_empty() {
                break;
            }
            let r = reduce(&reduced[i], &others, ord);
            if r != reduced[i] {
                changed = true;
                if r.is_zero() {
                    reduced.remove(i);
                } else {
                    reduced[i] = r;
                }
                break;
            }
        }
        if !changed {
            break;
        }
    }
    let mut generators: Vec<MultiPoly> = reduced
        .into_iter()
        .map(|g| {
            let lc = g.leading_term(ord).expect("nonzero").1.clone();
            g.scale(&(Rational::one() / lc))
        })
        .collect();
    generators.sort_by(|a, b| {
        let am = a.leading_term(ord).unwrap().0;
        let bm = b.leading_term(ord).unwrap().0;
        ord.cmp_unchecked(am, bm)
    });

    Ok(GroebnerBasis { generators, order: ord.clone(), vars })
}

/// For every variable, some generator's leading monomial must be a pure power
/// of it; equivalently the quotient algebra is finite-dimensional.
pub fn is_zero_dimensional(gb: &GroebnerBasis) -> bool {
    let n = gb.vars.len();
    let lms = gb.leading_monomials();
    (0..n).all(|i| {
        lms.iter().any(|m| {
            m.exponents()
                .iter()
                .enumerate()
                .all(|(j, &e)| j == i || e == 0)
        })
    })
}

/// Monomials divisible by no leading monomial, ascending under the order.
pub fn standard_monomials(gb: &GroebnerBasis) -> Result<QuotientBasis> {
    if !is_zero_dimensional(gb) {
        return Err(Error::Dimension(
            "ideal is not zero-dimensional; the staircase is infinite".into(),
        ));
    }
    let n = gb.vars.len();
    let lms: Vec<Monomial> = gb.leading_monomials().into_iter().cloned().collect();
    let is_standard = |m: &Monomial| !lms.iter().any(|lm| lm.divides(m));

    let mut found: BTreeSet<Monomial> = BTreeSet::new();
    let mut queue = vec![Monomial::one(n)];
    while let Some(m) = queue.pop() {
        if found.contains(&m) || !is_standard(&m) {
            continue;
        }
        found.insert(m.clone());
        for i in 0..n {
            queue.push(m.mul(&Monomial::var(n, i)));
        }
    }
    let mut monomials: Vec<Monomial> = found.into_iter().collect();
    monomials.sort_by(|a, b| gb.order.cmp_unchecked(a, b));
    Ok(QuotientBasis { monomials })
}

/// Build a polynomial that is a single monomial.
pub fn monomial_poly(vars: Vec<String>, m: Monomial) -> MultiPoly {
    let mut p = MultiPoly::zero(vars);
    p.add_term(m, Rational::one());
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::OrderKind;
    use crate::parse::parse_poly;

    fn grevlex(n: usize) -> MonomialOrder {
        MonomialOrder::new(OrderKind::GrevLex, n)
    }

    fn lex(n: usize) -> MonomialOrder {
        MonomialOrder::new(OrderKind::Lex, n)
    }

    fn p(src: &str, vars: &[&str]) -> MultiPoly {
        let vs: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
        parse_poly(src, &vs).unwrap()
    }

    #[test]
    fn single_generator_is_its_own_basis() {
        let f = p("x^2 - 2", &["x"]);
        let gb = buchberger(&[f.clone()], &grevlex(1)).unwrap();
        assert_eq!(gb.generators(), &[f]);
    }

    #[test]
    fn linear_pair_already_groebner() {
        let f = p("x - y", &["x", "y"]);
        let g = p("y^2 - 1", &["x", "y"]);
        let gb = buchberger(&[f.clone(), g.clone()], &lex(2)).unwrap();
        assert_eq!(gb.generators().len(), 2);
        assert!(gb.generators().contains(&f));
        assert!(gb.generators().contains(&g));
    }

    #[test]
    fn unit_ideal() {
        let gb = buchberger(&[p("x", &["x"]), p("x - 1", &["x"])], &grevlex(1)).unwrap();
        assert!(gb.is_unit_ideal());
        assert_eq!(gb.generators(), &[p("1", &["x"])]);
    }

    #[test]
    fn all_zero_rejected() {
        let z = MultiPoly::zero(vec!["x".into()]);
        assert!(matches!(
            buchberger(&[z.clone(), z], &grevlex(1)),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn normal_form_examples() {
        let gb = buchberger(&[p("x^2 - 2", &["x"])], &grevlex(1)).unwrap();
        assert_eq!(normal_form(&p("x^2", &["x"]), &gb).unwrap(), p("2", &["x"]));
        assert_eq!(normal_form(&p("x^3", &["x"]), &gb).unwrap(), p("2*x", &["x"]));
        for g in gb.generators() {
            assert!(normal_form(g, &gb).unwrap().is_zero());
        }
    }

    #[test]
    fn zero_dimensionality() {
        let gb = buchberger(&[p("x^2 - 2", &["x"])], &grevlex(1)).unwrap();
        assert!(is_zero_dimensional(&gb));

        let gb2 = buchberger(&[p("x*y - 1", &["x", "y"])], &grevlex(2)).unwrap();
        assert!(!is_zero_dimensional(&gb2));

        let gb3 = buchberger(
            &[p("x - y", &["x", "y"]), p("y^2 - 1", &["x", "y"])],
            &lex(2),
        )
        .unwrap();
        assert!(is_zero_dimensional(&gb3));
    }

    #[test]
    fn staircases() {
        let gb = buchberger(&[p("x^2 - 2", &["x"])], &grevlex(1)).unwrap();
        let basis = standard_monomials(&gb).unwrap();
        assert_eq!(basis.dimension(), 2);

        let gb2 = buchberger(
            &[p("x - y", &["x", "y"]), p("y^2 - 1", &["x", "y"])],
            &lex(2),
        )
        .unwrap();
        let basis2 = standard_monomials(&gb2).unwrap();
        assert_eq!(basis2.dimension(), 2);
        // staircase {1, y} under lex x > y
        assert_eq!(
            basis2.monomials(),
            &[Monomial::one(2), Monomial::var(2, 1)]
        );

        let unit = buchberger(&[p("1", &["x"])], &grevlex(1)).unwrap();
        assert_eq!(standard_monomials(&unit).unwrap().dimension(), 0);
    }

    #[test]
    fn positive_dimensional_staircase_is_error() {
        let gb = buchberger(&[p("x*y - 1", &["x", "y"])], &grevlex(2)).unwrap();
        assert!(matches!(standard_monomials(&gb), Err(Error::Dimension(_))));
    }

    #[test]
    fn generator_permutation_invariance() {
        let gens = vec![
            p("x^2 + y^2 - 1", &["x", "y"]),
            p("x - y^3", &["x", "y"]),
            p("y^4 + x*y", &["x", "y"]),
        ];
        let ord = grevlex(2);
        let reference = buchberger(&gens, &ord).unwrap();
        let perms: Vec<Vec<usize>> = vec![vec![1, 0, 2], vec![2, 1, 0], vec![1, 2, 0]];
        for perm in perms {
            let shuffled: Vec<MultiPoly> = perm.iter().map(|&i| gens[i].clone()).collect();
            let gb = buchberger(&shuffled, &ord).unwrap();
            assert_eq!(gb.generators(), reference.generators());
        }
    }

    #[test]
    fn textbook_two_variable_basis() {
        // <x^2 + y^2 - 1, x*y> under grevlex: solutions are the four axis
        // points, dim A = 4.
        let gb = buchberger(
            &[p("x^2 + y^2 - 1", &["x", "y"]), p("x*y", &["x", "y"])],
            &grevlex(2),
        )
        .unwrap();
        assert!(is_zero_dimensional(&gb));
        assert_eq!(standard_monomials(&gb).unwrap().dimension(), 4);
        // every S-polynomial of the reduced basis reduces to zero
        for i in 0..gb.generators().len() {
            for j in (i + 1)..gb.generators().len() {
                let s = s_polynomial(&gb.generators()[i], &gb.generators()[j], gb.order());
                assert!(reduce(&s, gb.generators(), gb.order()).is_zero());
            }
        }
    }
}
