//! Chain lattice sites as certified equilibria of the scalar potential.
//!
//! The D_N sites pin the endpoints at 0 and π/2; the interior angles come
//! from the zeros of P_{N-2}^{(1,1)} through ξ = cos 2ϑ and are then polished
//! directly on the equilibrium system Σ_{j≠i} (cot ϑ_ij^- + cot ϑ_ij^+) = 0.
//! Every paired cotangent is evaluated in the combined form
//! 2 sin 2ϑ_i / (cos 2ϑ_j - cos 2ϑ_i), which is finite at the boundary sites
//! (ξ = ±1) and free of the cancellation the raw pair would suffer.

use std::f64::consts::FRAC_PI_2;

use thiserror::Error;

use crate::orthopoly::{jacobi_roots, JacobiParams, OrthopolyError};

#[derive(Debug, Error)]
pub enum LatticeError {
    #[error("invalid lattice parameters: {0}")]
    InvalidParams(String),
    #[error("singular site configuration: coincident cos 2θ values")]
    SingularConfiguration,
    #[error(transparent)]
    Roots(#[from] OrthopolyError),
}

/// D_N chain sites: ϑ_1 = 0 < ϑ_2 < ... < ϑ_N = π/2 with ξ_i = cos 2ϑ_i
/// strictly decreasing from 1 to -1.
#[derive(Clone, Debug)]
pub struct DnSites {
    n: usize,
    theta: Vec<f64>,
    xi: Vec<f64>,
    residual: f64,
}

impl DnSites {
    pub fn n(&self) -> usize {
        self.n
    }
    pub fn theta(&self) -> &[f64] {
        &self.theta
    }
    pub fn xi(&self) -> &[f64] {
        &self.xi
    }
    pub fn residual(&self) -> f64 {
        self.residual
    }
}

/// BC_N chain sites: θ_i = arccos(ζ_i)/2 with ζ the descending zeros of
/// P_N^{(β-1,β'-1)}. The stored residual is the electrostatic-system
/// certificate of the underlying root set.
#[derive(Clone, Debug)]
pub struct BcSites {
    n: usize,
    beta: f64,
    beta_prime: f64,
    theta: Vec<f64>,
    zeta: Vec<f64>,
    residual: f64,
}

impl BcSites {
    pub fn n(&self) -> usize {
        self.n
    }
    pub fn beta(&self) -> f64 {
        self.beta
    }
    pub fn beta_prime(&self) -> f64 {
        self.beta_prime
    }
    pub fn theta(&self) -> &[f64] {
        &self.theta
    }
    pub fn zeta(&self) -> &[f64] {
        &self.zeta
    }
    pub fn residual(&self) -> f64 {
        self.residual
    }
}

/// Max-abs equilibrium sum over the sites, every pair evaluated as
/// 2 sin 2ϑ_i / (cos 2ϑ_j - cos 2ϑ_i).
pub fn equilibrium_residual(theta: &[f64]) -> Result<f64, LatticeError> {
    let xi: Vec<f64> = theta.iter().map(|&t| (2.0 * t).cos()).collect();
    let sin2: Vec<f64> = theta.iter().map(|&t| (2.0 * t).sin()).collect();
    let mut worst: f64 = 0.0;
    for i in 0..theta.len() {
        let mut sum = 0.0;
        for j in 0..theta.len() {
            if j == i {
                continue;
            }
            let term = 2.0 * sin2[i] / (xi[j] - xi[i]);
            if !term.is_finite() {
                return Err(LatticeError::SingularConfiguration);
            }
            sum += term;
        }
        worst = worst.max(sum.abs());
    }
    Ok(worst)
}

/// Newton sweeps on the interior angles, endpoints held fixed. The residual
/// being minimized is exactly what `equilibrium_residual` reports.
fn polish_interior(theta: &mut [f64]) {
    let n = theta.len();
    let mut best = theta.to_vec();
    let mut best_res = equilibrium_residual(theta).unwrap_or(f64::INFINITY);
    let mut stale = 0;
    for _ in 0..60 {
        for i in 1..n - 1 {
            let ti = theta[i];
            let (si, ci) = (2.0 * ti).sin_cos();
            let xii = ci;
            let mut f = 0.0;
            let mut df = 0.0;
            for (j, &tj) in theta.iter().enumerate() {
                if j == i {
                    continue;
                }
                let d = (2.0 * tj).cos() - xii;
                f += 2.0 * si / d;
                df += 4.0 * ci / d - 4.0 * si * si / (d * d);
            }
            if df == 0.0 {
                continue;
            }
            let lo = 0.5 * (ti + theta[i - 1]);
            let hi = 0.5 * (ti + theta[i + 1]);
            let mut next = ti - f / df;
            if next <= lo || next >= hi {
                next = ti - 0.5 * f / df;
                if next <= lo || next >= hi {
                    next = ti;
                }
            }
            theta[i] = next;
        }
        let res = equilibrium_residual(theta).unwrap_or(f64::INFINITY);
        if res < best_res {
            best_res = res;
            best.copy_from_slice(theta);
            stale = 0;
        } else {
            stale += 1;
            if stale >= 4 {
                break;
            }
        }
    }
    theta.copy_from_slice(&best);
}

/// The N-site D_N lattice: endpoints 0 and π/2 plus the arccos-mapped zeros
/// of P_{N-2}^{(1,1)}, certified by the equilibrium residual.
pub fn dn_sites(n: usize) -> Result<DnSites, LatticeError> {
    if n < 3 {
        return Err(LatticeError::InvalidParams(format!("need N >= 3, got {n}")));
    }
    let params = JacobiParams::new(1.0, 1.0, n - 2)?;
    let roots = jacobi_roots(&params)?;
    let mut theta = Vec::with_capacity(n);
    theta.push(0.0);
    // roots ascend in t = cos 2ϑ, so ϑ descends: reverse
    for &t in roots.roots().iter().rev() {
        theta.push(0.5 * t.acos());
    }
    theta.push(FRAC_PI_2);
    polish_interior(&mut theta);

    let mut xi: Vec<f64> = theta.iter().map(|&t| (2.0 * t).cos()).collect();
    xi[0] = 1.0;
    xi[n - 1] = -1.0;
    let residual = equilibrium_residual(&theta)?;
    Ok(DnSites { n, theta, xi, residual })
}

/// The N-site BC_N lattice for couplings β, β' > 0.
pub fn bc_sites(n: usize, beta: f64, beta_prime: f64) -> Result<BcSites, LatticeError> {
    if n < 1 {
        return Err(LatticeError::InvalidParams(format!("need N >= 1, got {n}")));
    }
    if beta <= 0.0 || beta_prime <= 0.0 || beta.is_nan() || beta_prime.is_nan() {
        return Err(LatticeError::InvalidParams(format!(
            "need beta, beta' > 0, got ({beta}, {beta_prime})"
        )));
    }
    let params = JacobiParams::new(beta - 1.0, beta_prime - 1.0, n)?;
    let roots = jacobi_roots(&params)?;
    let zeta: Vec<f64> = roots.roots().iter().rev().copied().collect();
    let theta: Vec<f64> = zeta.iter().map(|&z| 0.5 * z.acos()).collect();
    Ok(BcSites {
        n,
        beta,
        beta_prime,
        theta,
        zeta,
        residual: roots.residual(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_4;

    #[test]
    fn three_sites_are_exact() {
        let s = dn_sites(3).unwrap();
        assert_eq!(s.theta()[0], 0.0);
        assert!((s.theta()[1] - FRAC_PI_4).abs() < 1e-15);
        assert_eq!(s.theta()[2], FRAC_PI_2);
        // each combined pair sum cancels exactly at (0, π/4, π/2)
        assert!(s.residual() < 1e-14);
    }

    #[test]
    fn four_sites_match_closed_form() {
        let s = dn_sites(4).unwrap();
        let r = 1.0 / 5f64.sqrt();
        let expect = [1.0, r, -r, -1.0];
        for (a, b) in s.xi().iter().zip(expect) {
            assert!((a - b).abs() < 1e-12, "{a} vs {b}");
        }
    }

    #[test]
    fn residual_certificate_through_n_30() {
        for n in 3..=30 {
            let s = dn_sites(n).unwrap();
            assert!(s.residual() < 1e-12, "N={n}: residual {:e}", s.residual());
            assert!(equilibrium_residual(s.theta()).unwrap() < 1e-12);
        }
    }

    #[test]
    fn perturbed_configuration_detected() {
        let theta = [0.0, FRAC_PI_4 + 0.01, FRAC_PI_2];
        let res = equilibrium_residual(&theta).unwrap();
        assert!(res > 1e-3);
        // finite-difference sensitivity: residual grows linearly in the bump
        let h = 1e-7;
        let slope = equilibrium_residual(&[0.0, FRAC_PI_4 + h, FRAC_PI_2]).unwrap() / h;
        assert!(res > 0.3 * slope * 0.01 && res < 3.0 * slope * 0.01);
    }

    #[test]
    fn coincident_sites_are_singular() {
        let theta = [0.0, 0.3, 0.3, FRAC_PI_2];
        assert!(matches!(
            equilibrium_residual(&theta),
            Err(LatticeError::SingularConfiguration)
        ));
    }

    #[test]
    fn reflection_symmetry() {
        for n in [3usize, 5, 8, 13, 21, 30] {
            let s = dn_sites(n).unwrap();
            for i in 0..n {
                assert!((s.theta()[i] + s.theta()[n - 1 - i] - FRAC_PI_2).abs() < 1e-12);
                assert!((s.xi()[i] + s.xi()[n - 1 - i]).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn xi_solves_both_transformed_systems() {
        for n in [4usize, 7, 12, 20, 30] {
            let s = dn_sites(n).unwrap();
            let xi = s.xi();
            // full system: (1 - ξ_i²) Σ_{j≠i} 1/(ξ_i - ξ_j) = 0
            for i in 0..n {
                let sum: f64 = (0..n)
                    .filter(|&j| j != i)
                    .map(|j| 1.0 / (xi[i] - xi[j]))
                    .sum();
                assert!(((1.0 - xi[i] * xi[i]) * sum).abs() < 1e-11, "N={n} i={i}");
            }
            // interior system: (1 - ξ_i²) Σ interior 1/(ξ_i - ξ_j) = 2 ξ_i
            for i in 1..n - 1 {
                let sum: f64 = (1..n - 1)
                    .filter(|&j| j != i)
                    .map(|j| 1.0 / (xi[i] - xi[j]))
                    .sum();
                let lhs = (1.0 - xi[i] * xi[i]) * sum;
                assert!((lhs - 2.0 * xi[i]).abs() < 1e-11, "N={n} i={i}");
            }
        }
    }

    #[test]
    fn bc_single_site() {
        let s = bc_sites(1, 1.0, 1.0).unwrap();
        assert!(s.zeta()[0].abs() < 1e-15);
        assert!((s.theta()[0] - FRAC_PI_4).abs() < 1e-15);
    }

    #[test]
    fn bc_limit_approaches_dn() {
        let d = dn_sites(3).unwrap();
        let b = bc_sites(3, 1e-3, 1e-3).unwrap();
        // the endpoint angles close at the square-root rate
        // θ_1 ≈ sqrt(β/(N(N-1))), so 1.3e-2 at β = 1e-3
        for i in 0..3 {
            assert!((b.theta()[i] - d.theta()[i]).abs() < 1.5e-2);
        }
        // in the ζ variables the gap is first order: 2β/(N(N-1)) ≈ 3.3e-4
        for i in 0..3 {
            assert!((b.zeta()[i] - d.xi()[i]).abs() < 5e-4);
        }
        // leading-root limit 2β/(1-ζ_1) -> N(N-1)
        let lim = 2.0 * 1e-3 / (1.0 - b.zeta()[0]);
        assert!((lim - 6.0).abs() < 0.05);
    }

    #[test]
    fn bc_to_dn_convergence_rates() {
        let n = 4;
        let d = dn_sites(n).unwrap();
        let gaps = |t: f64| -> (f64, f64) {
            let b = bc_sites(n, t, t).unwrap();
            let th = b
                .theta()
                .iter()
                .zip(d.theta())
                .map(|(a, b)| (a - b).abs())
                .fold(0.0f64, f64::max);
            let ze = b
                .zeta()
                .iter()
                .zip(d.xi())
                .map(|(a, b)| (a - b).abs())
                .fold(0.0f64, f64::max);
            (th, ze)
        };
        let (t2, z2) = gaps(1e-2);
        let (t3, z3) = gaps(1e-3);
        let (t4, z4) = gaps(1e-4);
        // ζ gaps shrink by ~10 per decade (first order), the empirical
        // constant steady within a factor of 2
        let (rz1, rz2) = (z2 / z3, z3 / z4);
        assert!(rz1 > 5.0 && rz1 < 20.0, "rz1={rz1}");
        assert!(rz2 / rz1 > 0.5 && rz2 / rz1 < 2.0, "{rz1} vs {rz2}");
        // θ gaps shrink by ~sqrt(10) per decade: the arccos map square-roots
        // the endpoint rate
        let (rt1, rt2) = (t2 / t3, t3 / t4);
        assert!(rt1 > 2.0 && rt1 < 5.0, "rt1={rt1}");
        assert!(rt2 / rt1 > 0.5 && rt2 / rt1 < 2.0, "{rt1} vs {rt2}");
    }

    #[test]
    fn bc_invalid_params() {
        assert!(bc_sites(3, 0.0, 1.0).is_err());
        assert!(bc_sites(3, 1.0, -0.2).is_err());
        assert!(bc_sites(0, 1.0, 1.0).is_err());
    }
}
