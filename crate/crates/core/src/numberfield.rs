//! Trace and discriminant checks in monogenic orders Z[theta] modulo primes.
//!
//! Everything here works in the finite algebra F_p[x]/(f mod p). That equals
//! O/pO for the ring of integers O of Q[x]/(f) whenever p does not divide the
//! index [O : Z[theta]]; the trace identity itself is a statement about any
//! finite F_p-algebra (finite residue fields are automatically separable), so
//! the verifications hold even at index primes. The parity check assumes
//! p does not divide disc(f), which forces p away from both the index and the
//! field discriminant, making the polynomial discriminant a faithful stand-in.
//!
//! Factorization mod p: squarefree decomposition (with the x^p descent),
//! distinct-degree splitting by repeated Frobenius, then Cantor-Zassenhaus
//! equal-degree splitting driven by a seeded generator.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::par;
use crate::rational;
use crate::unipoly::{discriminant, UniPoly};

/// Largest supported modulus; products of two residues must fit in u128.
const MAX_PRIME: u64 = 1 << 31;

fn mod_mul(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn mod_pow(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mod_mul(acc, base, p);
        }
        base = mod_mul(base, base, p);
        exp >>= 1;
    }
    acc
}

fn mod_inv(a: u64, p: u64) -> u64 {
    // p prime
    mod_pow(a, p - 2, p)
}

/// Deterministic trial-division primality; adequate below 2^31.
pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p % 2 == 0 {
        return p == 2;
    }
    let mut d = 3u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

fn check_prime(p: u64) -> Result<()> {
    if p >= MAX_PRIME {
        return Err(Error::Domain(format!("modulus {p} exceeds the machine-prime bound")));
    }
    if !is_prime(p) {
        return Err(Error::Domain(format!("{p} is not prime")));
    }
    Ok(())
}

/// Dense polynomial over F_p; coefficients in [0, p), no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct PrimeFieldPoly {
    coeffs: Vec<u64>,
    p: u64,
}

impl PrimeFieldPoly {
    pub fn new(p: u64, coeffs: Vec<u64>) -> Self {
        let mut c: Vec<u64> = coeffs.into_iter().map(|x| x % p).collect();
        while c.last() == Some(&0) {
            c.pop();
        }
        PrimeFieldPoly { coeffs: c, p }
    }

    pub fn zero(p: u64) -> Self {
        PrimeFieldPoly { coeffs: Vec::new(), p }
    }

    pub fn one(p: u64) -> Self {
        PrimeFieldPoly { coeffs: vec![1], p }
    }

    pub fn x(p: u64) -> Self {
        PrimeFieldPoly { coeffs: vec![0, 1], p }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> u64 {
        self.coeffs.get(k).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == 1
    }

    /// Reduce a rational-coefficient polynomial mod p; all coefficients must
    /// be integers.
    pub fn from_unipoly(f: &UniPoly, p: u64) -> Result<Self> {
        let mut coeffs = Vec::with_capacity(f.coeffs().len());
        for c in f.coeffs() {
            let n = rational::as_integer(c).ok_or_else(|| {
                Error::Domain("polynomial has a non-integer coefficient".into())
            })?;
            coeffs.push(bigint_mod(&n, p));
        }
        Ok(PrimeFieldPoly::new(p, coeffs))
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.p, other.p);
        let n = self.coeffs.len().max(other.coeffs.len());
        PrimeFieldPoly::new(
            self.p,
            (0..n).map(|i| (self.coeff(i) + other.coeff(i)) % self.p).collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        debug_assert_eq!(self.p, other.p);
        let n = self.coeffs.len().max(other.coeffs.len());
        PrimeFieldPoly::new(
            self.p,
            (0..n)
                .map(|i| (self.coeff(i) + self.p - other.coeff(i)) % self.p)
                .collect(),
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.p, other.p);
        if self.is_zero() || other.is_zero() {
            return PrimeFieldPoly::zero(self.p);
        }
        let mut out = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = (out[i + j] + mod_mul(a, b, self.p)) % self.p;
            }
        }
        PrimeFieldPoly::new(self.p, out)
    }

    pub fn scale(&self, c: u64) -> Self {
        PrimeFieldPoly::new(self.p, self.coeffs.iter().map(|&a| mod_mul(a, c, self.p)).collect())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() || self.is_monic() {
            return self.clone();
        }
        self.scale(mod_inv(self.leading(), self.p))
    }

    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        let p = self.p;
        let dlen = divisor.coeffs.len();
        if self.coeffs.len() < dlen {
            return (PrimeFieldPoly::zero(p), self.clone());
        }
        let inv_lc = mod_inv(divisor.leading(), p);
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0u64; self.coeffs.len() - dlen + 1];
        for i in (0..quot.len()).rev() {
            let q = mod_mul(rem[i + dlen - 1], inv_lc, p);
            if q == 0 {
                continue;
            }
            quot[i] = q;
            for (j, &dc) in divisor.coeffs.iter().enumerate() {
                let sub = mod_mul(q, dc, p);
                rem[i + j] = (rem[i + j] + p - sub) % p;
            }
        }
        (PrimeFieldPoly::new(p, quot), PrimeFieldPoly::new(p, rem))
    }

    pub fn rem(&self, modulus: &Self) -> Self {
        self.div_rem(modulus).1
    }

    /// Monic gcd.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return PrimeFieldPoly::zero(self.p);
        }
        PrimeFieldPoly::new(
            self.p,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| mod_mul(c, (i as u64) % self.p, self.p))
                .collect(),
        )
    }

    /// self^exp mod `modulus`, with an arbitrary-precision exponent.
    pub fn pow_mod(&self, exp: &BigUint, modulus: &Self) -> Self {
        let mut acc = PrimeFieldPoly::one(self.p);
        let mut base = self.rem(modulus);
        for i in 0..exp.bits() {
            if exp.bit(i) {
                acc = acc.mul(&base).rem(modulus);
            }
            base = base.mul(&base).rem(modulus);
        }
        acc
    }

    /// p-th root of a polynomial whose derivative vanishes: pick every p-th
    /// coefficient (Frobenius fixes F_p pointwise).
    fn pth_root(&self) -> Self {
        let p = self.p as usize;
        let coeffs: Vec<u64> = self
            .coeffs
            .iter()
            .step_by(p)
            .copied()
            .collect();
        PrimeFieldPoly::new(self.p, coeffs)
    }

    pub fn to_string_pretty(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let body = match (i, c) {
                (0, c) => format!("{c}"),
                (1, 1) => "x".to_string(),
                (1, c) => format!("{c}*x"),
                (k, 1) => format!("x^{k}"),
                (k, c) => format!("{c}*x^{k}"),
            };
            parts.push(body);
        }
        parts.join(" + ")
    }
}

fn bigint_mod(n: &BigInt, p: u64) -> u64 {
    let m = n % BigInt::from(p);
    let m = if m.is_negative() { m + BigInt::from(p) } else { m };
    m.to_u64().expect("residue fits u64")
}

/// Squarefree decomposition over F_p (monic input), handling the vanishing
/// derivative via p-th roots.
fn squarefree_modp(f: &PrimeFieldPoly) -> Vec<(PrimeFieldPoly, u32)> {
    let p = f.modulus();
    if f.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let d = f.derivative();
    if d.is_zero() {
        let root = f.pth_root();
        return squarefree_modp(&root)
            .into_iter()
            .map(|(g, e)| (g, e * p as u32))
            .collect();
    }
    let mut out = Vec::new();
    let mut c = f.gcd(&d);
    let mut w = f.div_rem(&c).0;
    let mut i = 1u32;
    while w.degree().unwrap_or(0) > 0 {
        let y = w.gcd(&c);
        let z = w.div_rem(&y).0;
        if z.degree().unwrap_or(0) > 0 {
            out.push((z, i));
        }
        i += 1;
        w = y;
        c = c.div_rem(&w).0;
    }
    if c.degree().unwrap_or(0) > 0 {
        let root = c.pth_root();
        for (g, e) in squarefree_modp(&root) {
            out.push((g, e * p as u32));
        }
    }
    out
}

/// Distinct-degree splitting of a monic squarefree polynomial: returns
/// (product of irreducibles of degree k, k) pairs.
fn distinct_degree(g: &PrimeFieldPoly) -> Vec<(PrimeFieldPoly, usize)> {
    let p = g.modulus();
    let mut g = g.clone();
    let mut out = Vec::new();
    let mut w = PrimeFieldPoly::x(p).rem(&g);
    let mut k = 0usize;
    while g.degree().unwrap_or(0) >= 2 * (k + 1) {
        k += 1;
        w = w.pow_mod(&BigUint::from(p), &g);
        let diff = w.sub(&PrimeFieldPoly::x(p).rem(&g));
        let fac = g.gcd(&diff);
        if fac.degree().unwrap_or(0) > 0 {
            g = g.div_rem(&fac).0;
            w = w.rem(&g);
            out.push((fac, k));
        }
    }
    if g.degree().unwrap_or(0) > 0 {
        let deg = g.degree().unwrap();
        out.push((g, deg));
    }
    out
}

/// Cantor-Zassenhaus equal-degree splitting: `g` is a monic squarefree
/// product of irreducibles all of degree `k`.
fn equal_degree(g: &PrimeFieldPoly, k: usize, rng: &mut ChaCha8Rng) -> Vec<PrimeFieldPoly> {
    let p = g.modulus();
    let deg = g.degree().unwrap_or(0);
    if deg == k {
        return vec![g.monic()];
    }
    loop {
        let r = PrimeFieldPoly::new(
            p,
            (0..deg).map(|_| rng.gen_range(0..p)).collect(),
        );
        if r.degree().unwrap_or(0) == 0 {
            continue;
        }
        let s = if p == 2 {
            // trace map: r + r^2 + r^4 + ... + r^(2^(k-1))
            let mut acc = PrimeFieldPoly::zero(p);
            let mut term = r.rem(g);
            for _ in 0..k {
                acc = acc.add(&term).rem(g);
                term = term.mul(&term).rem(g);
            }
            acc
        } else {
            let e = (BigUint::from(p).pow(k as u32) - BigUint::one()) / BigUint::from(2u32);
            let s = r.pow_mod(&e, g);
            s.sub(&PrimeFieldPoly::one(p))
        };
        let h = g.gcd(&s);
        let hd = h.degree().unwrap_or(0);
        if hd > 0 && hd < deg {
            let mut left = equal_degree(&h, k, rng);
            let right = equal_degree(&g.div_rem(&h).0, k, rng);
            left.extend(right);
            return left;
        }
    }
}

/// Complete factorization of a monic integer polynomial mod p.
#[derive(Debug, Clone)]
pub struct ModPFactorization {
    pub p: u64,
    /// (monic irreducible, multiplicity), sorted by degree then coefficients
    pub factors: Vec<(PrimeFieldPoly, u32)>,
}

impl ModPFactorization {
    /// Number of distinct prime factors (the m of the parity identity).
    pub fn distinct_count(&self) -> usize {
        self.factors.len()
    }

    /// Product of g_i^{e_i}.
    pub fn reassemble(&self) -> PrimeFieldPoly {
        let mut acc = PrimeFieldPoly::one(self.p);
        for (g, e) in &self.factors {
            for _ in 0..*e {
                acc = acc.mul(g);
            }
        }
        acc
    }
}

/// Factor a monic integer polynomial modulo a prime. Deterministic for a
/// fixed seed (the equal-degree stage draws from a seeded generator).
pub fn factor_mod_p(f: &UniPoly, p: u64, seed: u64) -> Result<ModPFactorization> {
    check_prime(p)?;
    match f.degree() {
        Some(d) if d >= 1 => {}
        _ => return Err(Error::Domain("factorization needs degree >= 1".into())),
    }
    if !f.is_monic() {
        return Err(Error::Domain("factorization requires a monic polynomial".into()));
    }
    let fbar = PrimeFieldPoly::from_unipoly(f, p)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut factors: Vec<(PrimeFieldPoly, u32)> = Vec::new();
    for (sq, mult) in squarefree_modp(&fbar) {
        for (prod, k) in distinct_degree(&sq) {
            for irr in equal_degree(&prod, k, &mut rng) {
                factors.push((irr, mult));
            }
        }
    }
    factors.sort_by(|a, b| {
        a.0.degree()
            .cmp(&b.0.degree())
            .then_with(|| a.0.coeffs().cmp(b.0.coeffs()))
    });
    let out = ModPFactorization { p, factors };
    if out.reassemble() != fbar {
        return Err(Error::Internal("mod-p factorization failed to reassemble".into()));
    }
    Ok(out)
}

/// Trace of multiplication by alpha on F_p[x]/(g); g monic of degree >= 1.
pub fn trace_mod(modulus: &PrimeFieldPoly, alpha: &PrimeFieldPoly) -> Result<u64> {
    let k = match modulus.degree() {
        Some(k) if k >= 1 && modulus.is_monic() => k,
        _ => {
            return Err(Error::Domain(
                "trace needs a monic modulus of degree >= 1".into(),
            ))
        }
    };
    let p = modulus.modulus();
    // trace = sum over j of coefficient j of (alpha * x^j mod g)
    let mut cur = alpha.rem(modulus);
    let mut tr = cur.coeff(0);
    let x = PrimeFieldPoly::x(p);
    for j in 1..k {
        cur = cur.mul(&x).rem(modulus);
        tr = (tr + cur.coeff(j)) % p;
    }
    Ok(tr)
}

/// The trace identity Tr_p(alpha) = sum e_i Tr_{p_i}(alpha) for one triple.
#[derive(Debug, Clone)]
pub struct TraceReport {
    pub p: u64,
    pub tr_p: u64,
    /// (trace in F_p[x]/(g_i), e_i, deg g_i)
    pub per_factor: Vec<(u64, u32, usize)>,
    pub combined: u64,
    pub pass: bool,
}

/// Verify the trace identity for (f, p, alpha): the trace on F_p[x]/(f mod p)
/// must equal the multiplicity-weighted sum of the traces on the residue
/// fields F_p[x]/(g_i).
pub fn verify_trace_formula(f: &UniPoly, p: u64, alpha: &UniPoly, seed: u64) -> Result<TraceReport> {
    let fact = factor_mod_p(f, p, seed)?;
    let fbar = PrimeFieldPoly::from_unipoly(f, p)?;
    let abar = PrimeFieldPoly::from_unipoly(alpha, p)?;
    let tr_p = trace_mod(&fbar, &abar)?;
    let mut per_factor = Vec::with_capacity(fact.factors.len());
    let mut combined = 0u64;
    for (g, e) in &fact.factors {
        let tr_i = trace_mod(g, &abar)?;
        combined = (combined + mod_mul(tr_i, *e as u64, p)) % p;
        per_factor.push((tr_i, *e, g.degree().unwrap_or(0)));
    }
    Ok(TraceReport { p, tr_p, per_factor, combined, pass: tr_p == combined })
}

/// Legendre symbol (a/p) by Euler's criterion; p must be an odd prime.
pub fn legendre(a: &BigInt, p: u64) -> Result<i32> {
    check_prime(p)?;
    if p == 2 {
        return Err(Error::Domain("Legendre symbol needs an odd prime".into()));
    }
    let r = bigint_mod(a, p);
    if r == 0 {
        return Ok(0);
    }
    let e = mod_pow(r, (p - 1) / 2, p);
    if e == 1 {
        Ok(1)
    } else if e == p - 1 {
        Ok(-1)
    } else {
        Err(Error::Internal("Euler criterion returned a non-unit".into()))
    }
}

/// Outcome of the parity identity (D/p) = (-1)^(n - m).
#[derive(Debug, Clone)]
pub struct ParityReport {
    pub p: u64,
    pub discriminant: BigInt,
    pub n: usize,
    pub m: usize,
    pub legendre_value: i32,
    pub parity: i32,
    pub pass: bool,
    pub skipped: bool,
}

/// Check (disc(f)/p) = (-1)^(n-m) where m counts the distinct irreducible
/// factors of f mod p. Skipped (vacuously passing) when p = 2 or p | D,
/// where the identity's hypothesis fails.
pub fn verify_parity(f: &UniPoly, p: u64, seed: u64) -> Result<ParityReport> {
    check_prime(p)?;
    let n = match f.degree() {
        Some(n) if n >= 1 => n,
        _ => return Err(Error::Domain("parity check needs degree >= 1".into())),
    };
    if !f.is_monic() {
        return Err(Error::Domain("parity check requires a monic polynomial".into()));
    }
    let d = discriminant(f)?;
    let d = rational::as_integer(&d)
        .ok_or_else(|| Error::Domain("discriminant is not an integer".into()))?;
    if d.is_zero() {
        return Err(Error::Domain("zero discriminant: polynomial is not squarefree".into()));
    }
    if p == 2 || bigint_mod(&d, p) == 0 {
        return Ok(ParityReport {
            p,
            discriminant: d,
            n,
            m: 0,
            legendre_value: 0,
            parity: 0,
            pass: true,
            skipped: true,
        });
    }
    let fact = factor_mod_p(f, p, seed)?;
    let m = fact.distinct_count();
    let leg = legendre(&d, p)?;
    let parity = if (n - m) % 2 == 0 { 1 } else { -1 };
    Ok(ParityReport {
        p,
        discriminant: d,
        n,
        m,
        legendre_value: leg,
        parity,
        pass: leg == parity,
        skipped: false,
    })
}

/// Outcome of the discriminant congruence D = 0 or 1 (mod 4).
#[derive(Debug, Clone)]
pub struct DiscReport {
    pub discriminant: BigInt,
    pub residue_mod4: u8,
    pub pass: bool,
}

/// Check disc(f) = 0 or 1 mod 4 for monic squarefree integer f.
pub fn disc_mod4_check(f: &UniPoly) -> Result<DiscReport> {
    match f.degree() {
        Some(n) if n >= 1 => {}
        _ => return Err(Error::Domain("discriminant check needs degree >= 1".into())),
    }
    if !f.is_monic() {
        return Err(Error::Domain("discriminant check requires a monic polynomial".into()));
    }
    let d = discriminant(f)?;
    let d = rational::as_integer(&d)
        .ok_or_else(|| Error::Domain("discriminant is not an integer".into()))?;
    if d.is_zero() {
        return Err(Error::Domain("zero discriminant: polynomial is not squarefree".into()));
    }
    let residue = bigint_mod(&d, 4) as u8;
    Ok(DiscReport { discriminant: d, residue_mod4: residue, pass: residue == 0 || residue == 1 })
}

/// The characteristic-p counterexample behind the characteristic-0
/// restriction of the Newton-identity route: lambda*I_p and the zero matrix
/// share every power trace over F_p, yet their characteristic polynomials
/// differ.
#[derive(Debug, Clone)]
pub struct TraceCounterexample {
    pub p: u64,
    pub lambda: u64,
    pub power_traces_equal: bool,
    pub char_polys_differ: bool,
}

pub fn char_poly_trace_counterexample(p: u64, lambda: u64) -> Result<TraceCounterexample> {
    check_prime(p)?;
    let lambda = lambda % p;
    if lambda == 0 {
        return Err(Error::Domain("lambda must be nonzero mod p".into()));
    }
    // Tr((lambda I_p)^l): p diagonal entries lambda^l summed mod p.
    let traces_equal = (1..=p).all(|l| {
        let diag = mod_pow(lambda, l, p);
        let tr = (0..p).fold(0u64, |acc, _| (acc + diag) % p);
        tr == 0 // the zero matrix's power traces are all 0
    });
    // char polys: (lambda - x)^p vs (0 - x)^p
    let lam_minus_x = PrimeFieldPoly::new(p, vec![lambda, p - 1]);
    let minus_x = PrimeFieldPoly::new(p, vec![0, p - 1]);
    let mut cp_lambda = PrimeFieldPoly::one(p);
    let mut cp_zero = PrimeFieldPoly::one(p);
    for _ in 0..p {
        cp_lambda = cp_lambda.mul(&lam_minus_x);
        cp_zero = cp_zero.mul(&minus_x);
    }
    Ok(TraceCounterexample {
        p,
        lambda,
        power_traces_equal: traces_equal,
        char_polys_differ: cp_lambda != cp_zero,
    })
}

// ---------------------------------------------------------------------------
// batch suites
// ---------------------------------------------------------------------------

/// One randomized trace-identity case.
#[derive(Debug, Clone)]
pub struct TraceCase {
    pub f: UniPoly,
    pub p: u64,
    pub alpha: UniPoly,
}

fn item_seed(seed: u64, i: usize) -> u64 {
    seed ^ (0x9E37_79B9_7F4A_7C15u64.wrapping_mul(i as u64 + 1))
}

fn sieve_primes(limit: u64) -> Vec<u64> {
    let mut is_comp = vec![false; limit as usize + 1];
    let mut out = Vec::new();
    for n in 2..=limit {
        if !is_comp[n as usize] {
            out.push(n);
            let mut k = n * n;
            while k <= limit {
                is_comp[k as usize] = true;
                k += n;
            }
        }
    }
    out
}

fn random_monic(rng: &mut ChaCha8Rng, deg: usize, bound: i64) -> UniPoly {
    let mut coeffs: Vec<i64> = (0..deg).map(|_| rng.gen_range(-bound..=bound)).collect();
    coeffs.push(1);
    UniPoly::from_ints(&coeffs)
}

fn random_squarefree_monic(rng: &mut ChaCha8Rng, deg: usize, bound: i64) -> UniPoly {
    loop {
        let f = random_monic(rng, deg, bound);
        if let Ok(d) = discriminant(&f) {
            if !d.is_zero() {
                return f;
            }
        }
    }
}

const SMALL_PRIMES: [u64; 6] = [2, 3, 5, 7, 11, 13];

fn trace_case(i: usize, seed: u64, primes: &[u64]) -> TraceCase {
    // fixed anchors first: split, inert and ramified shapes
    let anchors: [(&[i64], u64, &[i64]); 4] = [
        (&[1, 0, 1], 5, &[0, 1]),  // x^2+1 at 5: splits
        (&[1, 0, 1], 3, &[0, 1]),  // x^2+1 at 3: inert
        (&[1, 0, 1], 2, &[0, 1]),  // x^2+1 at 2: ramified
        (&[-2, 0, 1], 2, &[1, 1]), // x^2-2 at 2: ramified
    ];
    if i < anchors.len() {
        let (f, p, a) = anchors[i];
        return TraceCase { f: UniPoly::from_ints(f), p, alpha: UniPoly::from_ints(a) };
    }
    let mut rng = ChaCha8Rng::seed_from_u64(item_seed(seed, i));
    let deg = rng.gen_range(2..=6);
    let f = random_monic(&mut rng, deg, 30);
    // small primes often enough to exercise ramification
    let p = if rng.gen_range(0..5) == 0 {
        SMALL_PRIMES[rng.gen_range(0..SMALL_PRIMES.len())]
    } else {
        primes[rng.gen_range(0..primes.len())]
    };
    let alpha_deg = rng.gen_range(0..deg);
    let alpha: Vec<i64> = (0..=alpha_deg).map(|_| rng.gen_range(-30..=30)).collect();
    TraceCase { f, p, alpha: UniPoly::from_ints(&alpha) }
}

/// Randomized trace-identity suite; item i depends only on (seed, i), so the
/// parallel and sequential paths agree element-for-element.
pub fn batch_trace_suite(count: usize, seed: u64) -> Vec<(TraceCase, Result<TraceReport>)> {
    let primes = sieve_primes(9973);
    par::map_indexed(count, |i| {
        let case = trace_case(i, seed, &primes);
        let rep = verify_trace_formula(&case.f, case.p, &case.alpha, item_seed(seed, i));
        (case, rep)
    })
}

/// Sequential twin of [`batch_trace_suite`] (for benchmarks).
pub fn batch_trace_suite_seq(count: usize, seed: u64) -> Vec<(TraceCase, Result<TraceReport>)> {
    let primes = sieve_primes(9973);
    par::map_indexed_seq(count, |i| {
        let case = trace_case(i, seed, &primes);
        let rep = verify_trace_formula(&case.f, case.p, &case.alpha, item_seed(seed, i));
        (case, rep)
    })
}

/// One randomized parity case.
#[derive(Debug, Clone)]
pub struct ParityCase {
    pub f: UniPoly,
    pub p: u64,
}

fn parity_case(i: usize, seed: u64, primes: &[u64]) -> ParityCase {
    let anchors: [(&[i64], u64); 3] = [
        (&[1, 0, 1], 5), // (D/p) = (-4/5) = +1, m = 2
        (&[1, 0, 1], 3), // (-4/3) = -1, m = 1
        (&[1, 0, 1], 2), // skipped: p | D
    ];
    if i < anchors.len() {
        let (f, p) = anchors[i];
        return ParityCase { f: UniPoly::from_ints(f), p };
    }
    let mut rng = ChaCha8Rng::seed_from_u64(item_seed(seed, i).rotate_left(17));
    let deg = rng.gen_range(2..=6);
    let f = random_squarefree_monic(&mut rng, deg, 20);
    let p = if rng.gen_range(0..6) == 0 {
        SMALL_PRIMES[rng.gen_range(0..SMALL_PRIMES.len())]
    } else {
        primes[rng.gen_range(0..primes.len())]
    };
    ParityCase { f, p }
}

/// Randomized parity suite.
pub fn batch_parity_suite(count: usize, seed: u64) -> Vec<(ParityCase, Result<ParityReport>)> {
    let primes = sieve_primes(9973);
    par::map_indexed(count, |i| {
        let case = parity_case(i, seed, &primes);
        let rep = verify_parity(&case.f, case.p, item_seed(seed, i));
        (case, rep)
    })
}

/// Sequential twin of [`batch_parity_suite`].
pub fn batch_parity_suite_seq(count: usize, seed: u64) -> Vec<(ParityCase, Result<ParityReport>)> {
    let primes = sieve_primes(9973);
    par::map_indexed_seq(count, |i| {
        let case = parity_case(i, seed, &primes);
        let rep = verify_parity(&case.f, case.p, item_seed(seed, i));
        (case, rep)
    })
}

/// Randomized discriminant-congruence suite over monic squarefree inputs.
pub fn batch_disc_suite(count: usize, seed: u64) -> Vec<(UniPoly, Result<DiscReport>)> {
    par::map_indexed(count, |i| {
        let mut rng = ChaCha8Rng::seed_from_u64(item_seed(seed, i).rotate_left(33));
        let deg = rng.gen_range(1..=8);
        let f = random_squarefree_monic(&mut rng, deg, 25);
        let rep = disc_mod4_check(&f);
        (f, rep)
    })
}

/// Sequential twin of [`batch_disc_suite`].
pub fn batch_disc_suite_seq(count: usize, seed: u64) -> Vec<(UniPoly, Result<DiscReport>)> {
    par::map_indexed_seq(count, |i| {
        let mut rng = ChaCha8Rng::seed_from_u64(item_seed(seed, i).rotate_left(33));
        let deg = rng.gen_range(1..=8);
        let f = random_squarefree_monic(&mut rng, deg, 25);
        let rep = disc_mod4_check(&f);
        (f, rep)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pf(p: u64, coeffs: &[u64]) -> PrimeFieldPoly {
        PrimeFieldPoly::new(p, coeffs.to_vec())
    }

    #[test]
    fn factor_x2_plus_1_mod_5_splits() {
        let f = UniPoly::from_ints(&[1, 0, 1]);
        let fact = factor_mod_p(&f, 5, 0).unwrap();
        assert_eq!(fact.factors.len(), 2);
        assert_eq!(fact.factors[0].0, pf(5, &[2, 1])); // x + 2
        assert_eq!(fact.factors[1].0, pf(5, &[3, 1])); // x + 3
        assert!(fact.factors.iter().all(|(_, e)| *e == 1));
    }

    #[test]
    fn factor_x2_plus_1_mod_3_inert() {
        let f = UniPoly::from_ints(&[1, 0, 1]);
        let fact = factor_mod_p(&f, 3, 0).unwrap();
        assert_eq!(fact.factors.len(), 1);
        assert_eq!(fact.factors[0], (pf(3, &[1, 0, 1]), 1));
    }

    #[test]
    fn factor_x2_plus_1_mod_2_ramifies() {
        let f = UniPoly::from_ints(&[1, 0, 1]);
        let fact = factor_mod_p(&f, 2, 0).unwrap();
        assert_eq!(fact.factors.len(), 1);
        assert_eq!(fact.factors[0], (pf(2, &[1, 1]), 2)); // (x+1)^2
    }

    #[test]
    fn factor_rejects_bad_inputs() {
        let f = UniPoly::from_ints(&[1, 0, 2]); // not monic
        assert!(matches!(factor_mod_p(&f, 5, 0), Err(Error::Domain(_))));
        let g = UniPoly::from_ints(&[1, 0, 1]);
        assert!(matches!(factor_mod_p(&g, 6, 0), Err(Error::Domain(_))));
    }

    #[test]
    fn factor_larger_example_reassembles() {
        // (x^2+1)(x+3)^2 (x^4+x+1) mod 7, built exactly then refactored
        let f = UniPoly::from_ints(&[1, 0, 1])
            .mul(&UniPoly::from_ints(&[3, 1]).pow(2))
            .mul(&UniPoly::from_ints(&[1, 1, 0, 0, 1]));
        let fact = factor_mod_p(&f, 7, 0).unwrap();
        let re = fact.reassemble();
        assert_eq!(re, PrimeFieldPoly::from_unipoly(&f, 7).unwrap());
        let degsum: usize = fact
            .factors
            .iter()
            .map(|(g, e)| g.degree().unwrap() * *e as usize)
            .sum();
        assert_eq!(degsum, f.degree().unwrap());
    }

    #[test]
    fn trace_mod_examples() {
        // g = x^2+1 mod 5, alpha = x: matrix [[0,-1],[1,0]], trace 0
        assert_eq!(trace_mod(&pf(5, &[1, 0, 1]), &pf(5, &[0, 1])).unwrap(), 0);
        // g = x-2 mod 5: alpha = x acts as 2
        assert_eq!(trace_mod(&pf(5, &[3, 1]), &pf(5, &[0, 1])).unwrap(), 2);
        // alpha = 1 on degree k: trace = k mod p
        assert_eq!(trace_mod(&pf(3, &[1, 2, 0, 1]), &pf(3, &[1])).unwrap(), 0);
        assert_eq!(trace_mod(&pf(5, &[1, 2, 0, 1]), &pf(5, &[1])).unwrap(), 3);
    }

    #[test]
    fn trace_formula_spec_triples() {
        let f = UniPoly::from_ints(&[1, 0, 1]);
        let x = UniPoly::from_ints(&[0, 1]);
        let r5 = verify_trace_formula(&f, 5, &x, 0).unwrap();
        assert_eq!(r5.tr_p, 0);
        let mut traces: Vec<u64> = r5.per_factor.iter().map(|t| t.0).collect();
        traces.sort_unstable();
        assert_eq!(traces, vec![2, 3]);
        assert!(r5.pass);

        let r3 = verify_trace_formula(&f, 3, &x, 0).unwrap();
        assert_eq!(r3.tr_p, 0);
        assert!(r3.pass);

        let r2 = verify_trace_formula(&f, 2, &x, 0).unwrap();
        assert_eq!(r2.tr_p, 0);
        assert_eq!(r2.per_factor, vec![(1, 2, 1)]);
        assert!(r2.pass);
    }

    #[test]
    fn legendre_values() {
        assert_eq!(legendre(&BigInt::from(1), 7).unwrap(), 1);
        assert_eq!(legendre(&BigInt::from(-4), 5).unwrap(), 1);
        assert_eq!(legendre(&BigInt::from(-4), 3).unwrap(), -1);
        assert_eq!(legendre(&BigInt::from(21), 7).unwrap(), 0);
        assert!(legendre(&BigInt::from(3), 2).is_err());
        assert!(legendre(&BigInt::from(3), 9).is_err());
    }

    #[test]
    fn parity_spec_examples() {
        let f = UniPoly::from_ints(&[1, 0, 1]);
        let r5 = verify_parity(&f, 5, 0).unwrap();
        assert!(!r5.skipped && r5.pass);
        assert_eq!((r5.m, r5.legendre_value, r5.parity), (2, 1, 1));

        let r3 = verify_parity(&f, 3, 0).unwrap();
        assert!(!r3.skipped && r3.pass);
        assert_eq!((r3.m, r3.legendre_value, r3.parity), (1, -1, -1));

        let r2 = verify_parity(&f, 2, 0).unwrap();
        assert!(r2.skipped);
    }

    #[test]
    fn disc_mod4_examples() {
        let r = disc_mod4_check(&UniPoly::from_ints(&[1, 0, 1])).unwrap();
        assert_eq!(r.discriminant, BigInt::from(-4));
        assert_eq!(r.residue_mod4, 0);
        assert!(r.pass);

        let r2 = disc_mod4_check(&UniPoly::from_ints(&[-1, -1, 0, 1])).unwrap();
        assert_eq!(r2.discriminant, BigInt::from(-23));
        assert_eq!(r2.residue_mod4, 1);
        assert!(r2.pass);

        let r3 = disc_mod4_check(&UniPoly::from_ints(&[-2, 0, 1])).unwrap();
        assert_eq!(r3.discriminant, BigInt::from(8));
        assert!(r3.pass);

        // (x-1)^2 has zero discriminant
        assert!(disc_mod4_check(&UniPoly::from_ints(&[1, -2, 1])).is_err());
    }

    #[test]
    fn counterexample_shape() {
        for p in [2u64, 3, 5] {
            let c = char_poly_trace_counterexample(p, 1).unwrap();
            assert!(c.power_traces_equal);
            assert!(c.char_polys_differ);
        }
        assert!(char_poly_trace_counterexample(5, 0).is_err());
    }

    #[test]
    fn batch_suites_pass_and_match_seq() {
        let par = batch_trace_suite(24, 42);
        let seq = batch_trace_suite_seq(24, 42);
        assert_eq!(par.len(), seq.len());
        for ((cp, rp), (cs, rs)) in par.iter().zip(&seq) {
            assert_eq!(cp.f, cs.f);
            assert_eq!(cp.p, cs.p);
            let (rp, rs) = (rp.as_ref().unwrap(), rs.as_ref().unwrap());
            assert!(rp.pass);
            assert_eq!(rp.tr_p, rs.tr_p);
        }
        for (_, r) in batch_parity_suite(24, 7) {
            assert!(r.unwrap().pass);
        }
        for (_, r) in batch_disc_suite(24, 9) {
            assert!(r.unwrap().pass);
        }
    }
}
