//! Dense nonsymmetric eigenvalue machinery and complex kernel extraction.
//!
//! Eigenvalues come from the classical pipeline: Parlett–Reinsch balancing,
//! Householder reduction to upper Hessenberg form, then Francis double-shift
//! QR iteration (the EISPACK `hqr` scheme). Eigenvectors are recovered
//! separately as numeric null spaces of `M - lambda*I` by full-pivot complex
//! elimination, which also reports the geometric multiplicity. Univariate
//! root finding goes through the companion matrix plus Newton polishing.

use num_complex::Complex64;

use crate::matrix::RealMatrix;
use crate::rational::{self};
use crate::unipoly::UniPoly;

const EPS: f64 = 2.220446049250313e-16;

/// In-place Parlett–Reinsch balancing (radix-2 row/column scaling).
fn balance(a: &mut RealMatrix) {
    let n = a.rows();
    let radix: f64 = 2.0;
    let sq = radix * radix;
    loop {
        let mut converged = true;
        for i in 0..n {
            let mut c = 0.0;
            let mut r = 0.0;
            for j in 0..n {
                if j != i {
                    c += a[(j, i)].abs();
                    r += a[(i, j)].abs();
                }
            }
            if c == 0.0 || r == 0.0 {
                continue;
            }
            let s = c + r;
            let mut f = 1.0;
            let mut c2 = c;
            let mut g = r / radix;
            while c2 < g {
                f *= radix;
                c2 *= sq;
            }
            g = r * radix;
            while c2 > g {
                f /= radix;
                c2 /= sq;
            }
            if (c2 + r / f) / f < 0.95 * s && f != 1.0 {
                converged = false;
                for j in 0..n {
                    a[(i, j)] /= f;
                }
                for j in 0..n {
                    a[(j, i)] *= f;
                }
            }
        }
        if converged {
            break;
        }
    }
}

/// In-place Householder reduction to upper Hessenberg form.
fn hessenberg(h: &mut RealMatrix) {
    let n = h.rows();
    if n < 3 {
        return;
    }
    let high = n - 1;
    let mut ort = vec![0.0; n];
    for m in 1..high {
        let scale: f64 = (m..=high).map(|i| h[(i, m - 1)].abs()).sum();
        if scale == 0.0 {
            continue;
        }
        let mut hsum = 0.0;
        for i in (m..=high).rev() {
            ort[i] = h[(i, m - 1)] / scale;
            hsum += ort[i] * ort[i];
        }
        let mut g = hsum.sqrt();
        if ort[m] > 0.0 {
            g = -g;
        }
        let hh = hsum - ort[m] * g;
        ort[m] -= g;
        for j in m..n {
            let mut f = 0.0;
            for i in (m..=high).rev() {
                f += ort[i] * h[(i, j)];
            }
            f /= hh;
            for i in m..=high {
                h[(i, j)] -= f * ort[i];
            }
        }
        for i in 0..=high {
            let mut f = 0.0;
            for j in (m..=high).rev() {
                f += ort[j] * h[(i, j)];
            }
            f /= hh;
            for j in m..=high {
                h[(i, j)] -= f * ort[j];
            }
        }
        h[(m, m - 1)] = scale * g;
        for i in (m + 1)..=high {
            h[(i, m - 1)] = 0.0;
        }
    }
}

/// Francis double-shift QR on an upper Hessenberg matrix; returns (re, im)
/// per eigenvalue with complex pairs adjacent as (a+bi, a-bi).
#[allow(unused_assignments)]
fn hqr(h: &mut RealMatrix) -> Vec<(f64, f64)> {
    let nn = h.rows() as i64;
    if nn == 0 {
        return Vec::new();
    }
    let at = |h: &RealMatrix, i: i64, j: i64| h[(i as usize, j as usize)];
    macro_rules! set {
        ($h:ident, $i:expr, $j:expr, $v:expr) => {
            $h[($i as usize, $j as usize)] = $v
        };
    }
    let mut d = vec![0.0; nn as usize];
    let mut e = vec![0.0; nn as usize];
    let mut norm = 0.0;
    for i in 0..nn {
        for j in (i - 1).max(0)..nn {
            norm += at(h, i, j).abs();
        }
    }
    let mut n = nn - 1;
    let mut exshift = 0.0;
    let (mut p, mut q, mut r, mut s, mut z) = (0.0f64, 0.0f64, 0.0f64, 0.0f64, 0.0f64);
    let (mut x, mut y, mut w) = (0.0f64, 0.0f64, 0.0f64);
    let mut iter = 0usize;
    let mut total_iter = 0usize;
    let max_total = 60 * nn.max(4) as usize;

    while n >= 0 {
        if total_iter > max_total {
            // Convergence stall: emit the remaining diagonal as-is. With the
            // exceptional shifts this path is essentially unreachable.
            for i in 0..=n {
                d[i as usize] = at(h, i, i) + exshift;
                e[i as usize] = 0.0;
            }
            break;
        }
        // find a small subdiagonal element
        let mut l = n;
        while l > 0 {
            s = at(h, l - 1, l - 1).abs() + at(h, l, l).abs();
            if s == 0.0 {
                s = norm;
            }
            if at(h, l, l - 1).abs() < EPS * s {
                break;
            }
            l -= 1;
        }

        if l == n {
            // one root
            let v = at(h, n, n) + exshift;
            set!(h, n, n, v);
            d[n as usize] = v;
            e[n as usize] = 0.0;
            n -= 1;
            iter = 0;
        } else if l == n - 1 {
            // two roots
            w = at(h, n, n - 1) * at(h, n - 1, n);
            p = (at(h, n - 1, n - 1) - at(h, n, n)) / 2.0;
            q = p * p + w;
            z = q.abs().sqrt();
            set!(h, n, n, at(h, n, n) + exshift);
            set!(h, n - 1, n - 1, at(h, n - 1, n - 1) + exshift);
            x = at(h, n, n);
            if q >= 0.0 {
                z = if p >= 0.0 { p + z } else { p - z };
                d[(n - 1) as usize] = x + z;
                d[n as usize] = if z != 0.0 { x - w / z } else { x + z };
                e[(n - 1) as usize] = 0.0;
                e[n as usize] = 0.0;
            } else {
                d[(n - 1) as usize] = x + p;
                d[n as usize] = x + p;
                e[(n - 1) as usize] = z;
                e[n as usize] = -z;
            }
            n -= 2;
            iter = 0;
        } else {
            // form the shift
            x = at(h, n, n);
            y = at(h, n - 1, n - 1);
            w = at(h, n, n - 1) * at(h, n - 1, n);
            if iter == 10 || iter == 20 {
                // exceptional shift
                exshift += x;
                for i in 0..=n {
                    set!(h, i, i, at(h, i, i) - x);
                }
                s = at(h, n, n - 1).abs() + at(h, n - 1, n - 2).abs();
                x = 0.75 * s;
                y = x;
                w = -0.4375 * s * s;
            }
            iter += 1;
            total_iter += 1;

            // two consecutive small subdiagonals
            let mut m = n - 2;
            while m >= l {
                z = at(h, m, m);
                r = x - z;
                s = y - z;
                p = (r * s - w) / at(h, m + 1, m) + at(h, m, m + 1);
                q = at(h, m + 1, m + 1) - z - r - s;
                r = at(h, m + 2, m + 1);
                s = p.abs() + q.abs() + r.abs();
                p /= s;
                q /= s;
                r /= s;
                if m == l {
                    break;
                }
                if at(h, m, m - 1).abs() * (q.abs() + r.abs())
                    < EPS
                        * (p.abs()
                            * (at(h, m - 1, m - 1).abs() + z.abs() + at(h, m + 1, m + 1).abs()))
                {
                    break;
                }
                m -= 1;
            }
            for i in (m + 2)..=n {
                set!(h, i, i - 2, 0.0);
                if i > m + 2 {
                    set!(h, i, i - 3, 0.0);
                }
            }

            // double QR sweep on rows l..n, columns m..n
            for k in m..n {
                let notlast = k != n - 1;
                if k != m {
                    p = at(h, k, k - 1);
                    q = at(h, k + 1, k - 1);
                    r = if notlast { at(h, k + 2, k - 1) } else { 0.0 };
                    x = p.abs() + q.abs() + r.abs();
                    if x == 0.0 {
                        continue;
                    }
                    p /= x;
                    q /= x;
                    r /= x;
                }
                s = (p * p + q * q + r * r).sqrt();
                if p < 0.0 {
                    s = -s;
                }
                if s == 0.0 {
                    continue;
                }
                if k != m {
                    set!(h, k, k - 1, -s * x);
                } else if l != m {
                    set!(h, k, k - 1, -at(h, k, k - 1));
                }
                p += s;
                x = p / s;
                y = q / s;
                z = r / s;
                q /= p;
                r /= p;

                for j in k..nn {
                    p = at(h, k, j) + q * at(h, k + 1, j);
                    if notlast {
                        p += r * at(h, k + 2, j);
                        set!(h, k + 2, j, at(h, k + 2, j) - p * z);
                    }
                    set!(h, k, j, at(h, k, j) - p * x);
                    set!(h, k + 1, j, at(h, k + 1, j) - p * y);
                }
                for i in 0..=n.min(k + 3) {
                    p = x * at(h, i, k) + y * at(h, i, k + 1);
                    if notlast {
                        p += z * at(h, i, k + 2);
                        set!(h, i, k + 2, at(h, i, k + 2) - p * r);
                    }
                    set!(h, i, k, at(h, i, k) - p);
                    set!(h, i, k + 1, at(h, i, k + 1) - p * q);
                }
            }
        }
    }
    d.into_iter().zip(e).collect()
}

/// All complex eigenvalues of a square real matrix; conjugate pairs adjacent.
pub fn eigenvalues(m: &RealMatrix) -> Vec<Complex64> {
    assert!(m.is_square(), "eigenvalues of a non-square matrix");
    let n = m.rows();
    match n {
        0 => return Vec::new(),
        1 => return vec![Complex64::new(m[(0, 0)], 0.0)],
        _ => {}
    }
    let mut work = m.clone();
    balance(&mut work);
    hessenberg(&mut work);
    hqr(&mut work)
        .into_iter()
        .map(|(re, im)| Complex64::new(re, im))
        .collect()
}

/// Numeric roots of a univariate rational polynomial, via the companion
/// matrix with Newton polishing; conjugate pairs are emitted structurally.
pub fn poly_roots(p: &UniPoly) -> Vec<Complex64> {
    let deg = match p.degree() {
        None | Some(0) => return Vec::new(),
        Some(d) => d,
    };
    let lc = p.leading_coeff();
    let coeffs: Vec<f64> = (0..=deg)
        .map(|i| rational::to_f64(&(p.coeff(i) / lc.clone())))
        .collect();
    if deg == 1 {
        return vec![Complex64::new(-coeffs[0], 0.0)];
    }
    let mut comp = RealMatrix::zero(deg, deg);
    for i in 0..deg {
        comp[(i, deg - 1)] = -coeffs[i];
        if i + 1 < deg {
            comp[(i + 1, i)] = 1.0;
        }
    }
    let raw = eigenvalues(&comp);

    // Polish and re-enforce the conjugate structure reported by hqr.
    let horner = |z: Complex64| p.eval_complex(z);
    let dp = p.derivative();
    let horner_d = |z: Complex64| dp.eval_complex(z);
    let polish = |mut z: Complex64| {
        for _ in 0..4 {
            let f = horner(z);
            let df = horner_d(z);
            if df.norm() < 1e-280 {
                break;
            }
            let step = f / df;
            if !step.re.is_finite() || !step.im.is_finite() {
                break;
            }
            z -= step;
        }
        z
    };
    let mut out = Vec::with_capacity(deg);
    let mut i = 0;
    while i < raw.len() {
        if raw[i].im == 0.0 {
            let z = polish(raw[i]);
            out.push(Complex64::new(z.re, 0.0));
            i += 1;
        } else {
            let plus = if raw[i].im > 0.0 { raw[i] } else { raw[i].conj() };
            let z = polish(plus);
            out.push(z);
            out.push(z.conj());
            i += 2;
        }
    }
    out
}

/// Orthonormal basis of the numeric null space of (m - lambda*I), by
/// full-pivot complex Gaussian elimination. The tolerance is relative to the
/// matrix scale; it is widened a couple of times if no null direction shows
/// up at all (lambda is known to be an eigenvalue).
pub fn eigenspace_basis(m: &RealMatrix, lambda: Complex64, rel_tol: f64) -> Vec<Vec<Complex64>> {
    assert!(m.is_square());
    let n = m.rows();
    let scale = m.max_abs().max(lambda.norm()).max(1.0);
    let mut tol = rel_tol * scale;
    for _ in 0..3 {
        let mut a: Vec<Vec<Complex64>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let mut v = Complex64::new(m[(i, j)], 0.0);
                        if i == j {
                            v -= lambda;
                        }
                        v
                    })
                    .collect()
            })
            .collect();
        let basis = kernel_basis(&mut a, tol);
        if !basis.is_empty() {
            return basis;
        }
        tol *= 100.0;
    }
    Vec::new()
}

/// Kernel basis of an n x n complex matrix, destructively; columns whose
/// pivot falls below `tol` are treated as free.
fn kernel_basis(a: &mut [Vec<Complex64>], tol: f64) -> Vec<Vec<Complex64>> {
    let n = a.len();
    let mut col_perm: Vec<usize> = (0..n).collect();
    let mut rank = 0;
    for step in 0..n {
        // full pivot search
        let mut best = (step, step, 0.0);
        for i in step..n {
            for j in step..n {
                let mag = a[i][j].norm();
                if mag > best.2 {
                    best = (i, j, mag);
                }
            }
        }
        if best.2 <= tol {
            break;
        }
        let (pi, pj, _) = best;
        a.swap(step, pi);
        if pj != step {
            for row in a.iter_mut() {
                row.swap(step, pj);
            }
            col_perm.swap(step, pj);
        }
        let pivot = a[step][step];
        for j in step..n {
            a[step][j] /= pivot;
        }
        for i in 0..n {
            if i == step {
                continue;
            }
            let factor = a[i][step];
            if factor.norm() == 0.0 {
                continue;
            }
            for j in step..n {
                let sub = factor * a[step][j];
                a[i][j] -= sub;
            }
        }
        rank += 1;
    }
    let mut basis = Vec::new();
    for free in rank..n {
        let mut v = vec![Complex64::new(0.0, 0.0); n];
        v[col_perm[free]] = Complex64::new(1.0, 0.0);
        for r in 0..rank {
            v[col_perm[r]] = -a[r][free];
        }
        basis.push(v);
    }
    orthonormalize(&mut basis);
    basis
}

/// Modified Gram–Schmidt over C; drops near-dependent vectors.
fn orthonormalize(vs: &mut Vec<Vec<Complex64>>) {
    let mut out: Vec<Vec<Complex64>> = Vec::new();
    for v in vs.iter() {
        let mut w = v.clone();
        for u in &out {
            let proj: Complex64 = u.iter().zip(&w).map(|(a, b)| a.conj() * b).sum();
            for (wi, ui) in w.iter_mut().zip(u) {
                *wi -= proj * ui;
            }
        }
        let norm: f64 = w.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-12 {
            for wi in &mut w {
                *wi /= norm;
            }
            out.push(w);
        }
    }
    *vs = out;
}

/// Mean Rayleigh quotient of `m` over an orthonormal family: (1/s) sum of
/// v_i^H (m v_i). For an invariant subspace on which m has a single
/// eigenvalue this equals that eigenvalue.
pub fn mean_rayleigh(m: &RealMatrix, vs: &[Vec<Complex64>]) -> Complex64 {
    let n = m.rows();
    let mut acc = Complex64::new(0.0, 0.0);
    for v in vs {
        for i in 0..n {
            let mut mv = Complex64::new(0.0, 0.0);
            for j in 0..n {
                mv += m[(i, j)] * v[j];
            }
            acc += v[i].conj() * mv;
        }
    }
    acc / vs.len() as f64
}
