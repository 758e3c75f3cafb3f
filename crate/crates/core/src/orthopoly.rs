//! Jacobi polynomial evaluation and guaranteed root isolation for general
//! parameters alpha, beta > -1.
//!
//! Roots are isolated by sign scanning on a Chebyshev grid (densified until
//! all n sign changes are found), bracketed by bisection, polished by
//! safeguarded Newton on the polynomial, and finally driven onto the
//! electrostatic system the roots must satisfy:
//!
//!   2 (1 - z_i^2) Σ_{j != i} 1/(z_i - z_j) = b - b' + (b + b') z_i,
//!
//! with b = alpha + 1, b' = beta + 1. That system is the certificate the rest
//! of the crate relies on, so the final Newton sweeps minimize its residual
//! directly rather than the polynomial value.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum OrthopolyError {
    #[error("invalid Jacobi parameters: need alpha, beta > -1 and degree >= 1 (alpha={alpha}, beta={beta}, degree={degree})")]
    InvalidParams { alpha: f64, beta: f64, degree: usize },
    #[error("root isolation did not converge: {found} of {wanted} brackets, residual {residual:e}")]
    NonConvergence { wanted: usize, found: usize, residual: f64 },
    #[error("duplicate roots: |z_{i} - z_{j}| < 1e-14")]
    DuplicateRoots { i: usize, j: usize },
}

/// Parameters (alpha, beta, degree) of a Jacobi polynomial, alpha, beta > -1.
#[derive(Clone, Copy, Debug)]
pub struct JacobiParams {
    pub alpha: f64,
    pub beta: f64,
    pub degree: usize,
}

impl JacobiParams {
    pub fn new(alpha: f64, beta: f64, degree: usize) -> Result<Self, OrthopolyError> {
        // NaN fails both comparisons and is rejected
        if alpha <= -1.0 || beta <= -1.0 || alpha.is_nan() || beta.is_nan() {
            return Err(OrthopolyError::InvalidParams { alpha, beta, degree });
        }
        Ok(Self { alpha, beta, degree })
    }
}

/// The full root set of a Jacobi polynomial: strictly increasing, all in
/// (-1, 1), with the final residual of the electrostatic system.
#[derive(Clone, Debug)]
pub struct RootSet {
    roots: Vec<f64>,
    residual: f64,
}

impl RootSet {
    pub fn roots(&self) -> &[f64] {
        &self.roots
    }

    pub fn residual(&self) -> f64 {
        self.residual
    }
}

/// Value and first derivative of P_n^{(alpha,beta)} at t, by the three-term
/// recurrence differentiated in place.
pub fn jacobi_eval(params: &JacobiParams, t: f64) -> (f64, f64) {
    let (a, b, n) = (params.alpha, params.beta, params.degree);
    if n == 0 {
        return (1.0, 0.0);
    }
    let mut pm1 = 1.0;
    let mut dm1 = 0.0;
    let mut p = 0.5 * (a - b) + 0.5 * (a + b + 2.0) * t;
    let mut d = 0.5 * (a + b + 2.0);
    for k in 2..=n {
        let k = k as f64;
        let s = a + b;
        let c1 = 2.0 * k * (k + s) * (2.0 * k + s - 2.0);
        let c2 = (2.0 * k + s - 1.0) * (2.0 * k + s) * (2.0 * k + s - 2.0);
        let c3 = (2.0 * k + s - 1.0) * (a * a - b * b);
        let c4 = 2.0 * (k + a - 1.0) * (k + b - 1.0) * (2.0 * k + s);
        let pk = ((c2 * t + c3) * p - c4 * pm1) / c1;
        let dk = ((c2 * t + c3) * d + c2 * p - c4 * dm1) / c1;
        pm1 = p;
        dm1 = d;
        p = pk;
        d = dk;
    }
    (p, d)
}

/// Max-abs residual of the electrostatic system at the given points, with
/// system parameters (beta, beta_prime) = (alpha + 1, beta + 1) of the
/// polynomial whose zeros they claim to be.
pub fn jacobi_system_residual(
    roots: &[f64],
    beta: f64,
    beta_prime: f64,
) -> Result<f64, OrthopolyError> {
    for i in 0..roots.len() {
        for j in (i + 1)..roots.len() {
            if (roots[i] - roots[j]).abs() < 1e-14 {
                return Err(OrthopolyError::DuplicateRoots { i, j });
            }
        }
    }
    Ok(max_system_residual(roots, beta, beta_prime))
}

fn system_residual_at(roots: &[f64], i: usize, beta: f64, beta_prime: f64) -> f64 {
    let zi = roots[i];
    let mut sum = 0.0;
    for (j, &zj) in roots.iter().enumerate() {
        if j != i {
            sum += 1.0 / (zi - zj);
        }
    }
    2.0 * (1.0 - zi * zi) * sum - (beta - beta_prime) - (beta + beta_prime) * zi
}

fn max_system_residual(roots: &[f64], beta: f64, beta_prime: f64) -> f64 {
    (0..roots.len())
        .map(|i| system_residual_at(roots, i, beta, beta_prime).abs())
        .fold(0.0, f64::max)
}

/// All n real roots of P_n^{(alpha,beta)}, bracketed, Newton-polished, and
/// certified against the electrostatic system to 1e-12 absolute.
pub fn jacobi_roots(params: &JacobiParams) -> Result<RootSet, OrthopolyError> {
    let n = params.degree;
    if n == 0 {
        return Err(OrthopolyError::InvalidParams {
            alpha: params.alpha,
            beta: params.beta,
            degree: 0,
        });
    }
    let brackets = isolate_brackets(params)?;
    let mut roots: Vec<f64> = brackets
        .into_iter()
        .map(|(lo, hi)| polish_polynomial_root(params, lo, hi))
        .collect();

    // Newton sweeps on the electrostatic system itself.
    let beta_sys = params.alpha + 1.0;
    let beta_prime_sys = params.beta + 1.0;
    polish_on_system(&mut roots, beta_sys, beta_prime_sys);

    let residual = max_system_residual(&roots, beta_sys, beta_prime_sys);
    let monotone = roots.windows(2).all(|w| w[0] < w[1]);
    let inside = roots.iter().all(|&z| z > -1.0 && z < 1.0);
    if residual > 1e-12 || !monotone || !inside {
        return Err(OrthopolyError::NonConvergence {
            wanted: n,
            found: roots.len(),
            residual,
        });
    }
    Ok(RootSet { roots, residual })
}

/// Sign-scan on a Chebyshev grid (endpoints included), doubling the density
/// until exactly n sign changes are found.
fn isolate_brackets(params: &JacobiParams) -> Result<Vec<(f64, f64)>, OrthopolyError> {
    let n = params.degree;
    let mut k = (16 * n).max(64);
    loop {
        let grid: Vec<f64> = (0..=k)
            .map(|j| -((j as f64) * std::f64::consts::PI / (k as f64)).cos())
            .collect();
        let vals: Vec<f64> = grid.iter().map(|&t| jacobi_eval(params, t).0).collect();
        let mut brackets = Vec::with_capacity(n);
        for w in 0..k {
            if vals[w] == 0.0 {
                brackets.push((grid[w], grid[w]));
            } else if vals[w] * vals[w + 1] < 0.0 {
                brackets.push((grid[w], grid[w + 1]));
            }
        }
        if brackets.len() == n {
            return Ok(brackets);
        }
        if k > (1 << 21) {
            return Err(OrthopolyError::NonConvergence {
                wanted: n,
                found: brackets.len(),
                residual: f64::INFINITY,
            });
        }
        k *= 2;
    }
}

/// Safeguarded Newton inside a bracket: bisection whenever the Newton step
/// leaves the bracket or stalls.
fn polish_polynomial_root(params: &JacobiParams, mut lo: f64, mut hi: f64) -> f64 {
    if lo == hi {
        return lo;
    }
    let (flo, _) = jacobi_eval(params, lo);
    let mut sign_lo = flo.signum();
    if sign_lo == 0.0 {
        sign_lo = 1.0;
    }
    let mut x = 0.5 * (lo + hi);
    for _ in 0..120 {
        let (f, df) = jacobi_eval(params, x);
        if f == 0.0 {
            break;
        }
        if f.signum() == sign_lo {
            lo = x;
        } else {
            hi = x;
        }
        let newton = x - f / df;
        let next = if df != 0.0 && newton > lo && newton < hi {
            newton
        } else {
            0.5 * (lo + hi)
        };
        if (next - x).abs() < 1e-15 {
            x = next;
            break;
        }
        x = next;
    }
    x
}

/// Gauss-Seidel Newton sweeps on the electrostatic system; keeps the best
/// configuration seen (by max residual) and stops when it stops improving.
fn polish_on_system(roots: &mut [f64], beta: f64, beta_prime: f64) {
    let n = roots.len();
    if n == 0 {
        return;
    }
    let mut best = roots.to_vec();
    let mut best_res = max_system_residual(roots, beta, beta_prime);
    let mut stale = 0;
    for _ in 0..100 {
        for i in 0..n {
            let zi = roots[i];
            let mut s1 = 0.0;
            let mut s2 = 0.0;
            for (j, &zj) in roots.iter().enumerate() {
                if j != i {
                    let d = zi - zj;
                    s1 += 1.0 / d;
                    s2 += 1.0 / (d * d);
                }
            }
            let f = 2.0 * (1.0 - zi * zi) * s1 - (beta - beta_prime) - (beta + beta_prime) * zi;
            let df = -4.0 * zi * s1 - 2.0 * (1.0 - zi * zi) * s2 - (beta + beta_prime);
            if df == 0.0 {
                continue;
            }
            let mut step = -f / df;
            // keep the ordering: never move past the midpoint to a neighbour
            // or out of (-1, 1)
            let lo = if i > 0 { 0.5 * (zi + roots[i - 1]) } else { 0.5 * (zi - 1.0) };
            let hi = if i + 1 < n { 0.5 * (zi + roots[i + 1]) } else { 0.5 * (zi + 1.0) };
            let mut next = zi + step;
            if next <= lo || next >= hi {
                step *= 0.5;
                next = zi + step;
                if next <= lo || next >= hi {
                    next = zi.clamp(lo + 0.25 * (hi - lo), hi - 0.25 * (hi - lo));
                }
            }
            roots[i] = next;
        }
        let res = max_system_residual(roots, beta, beta_prime);
        if res < best_res {
            best_res = res;
            best.copy_from_slice(roots);
            stale = 0;
        } else {
            stale += 1;
            if stale >= 4 {
                break;
            }
        }
        if best_res == 0.0 {
            break;
        }
    }
    roots.copy_from_slice(&best);
}
