//! Dense symmetric eigensolver and conversion of an integer spectrum into an
//! exact q-polynomial.
//!
//! Householder reduction to tridiagonal form followed by implicit-shift QL
//! iteration, after the classic Algol/EISPACK procedures tred2/tql2. The
//! transformation matrix is accumulated so a backward-error check
//! ||A v - λ v|| <= tol ||A||_F can be run on sampled pairs.

use num_bigint::BigInt;
use thiserror::Error;

use crate::qseries::QPolynomial;
use crate::spinops::ChainMatrix;

#[derive(Debug, Error)]
pub enum EigenError {
    #[error("QL iteration failed to converge within 50 sweeps at index {index}")]
    IterationLimit { index: usize },
    #[error("backward error {error:e} exceeds tol * ||A||_F = {bound:e}")]
    BackwardError { error: f64, bound: f64 },
    #[error("eigenvalue {value} is {deviation:e} away from the nearest integer (tol {tol:e})")]
    NonIntegerSpectrum { value: f64, deviation: f64, tol: f64 },
    #[error("rounded eigenvalue {value} is negative")]
    NegativeEnergy { value: i64 },
    #[error("invalid integer tolerance {0}; need 0 < tol < 0.5")]
    InvalidTolerance(f64),
    #[error("empty spectrum")]
    EmptySpectrum,
}

/// Eigenvalues in ascending order.
#[derive(Clone, Debug)]
pub struct Spectrum {
    values: Vec<f64>,
}

impl Spectrum {
    pub fn values(&self) -> &[f64] {
        &self.values
    }
    pub fn dim(&self) -> usize {
        self.values.len()
    }
    pub fn min(&self) -> f64 {
        self.values.first().copied().unwrap_or(f64::NAN)
    }
}

// Householder reduction of the symmetric matrix stored in v (column-major,
// dim n) to tridiagonal form; d receives the diagonal, e the subdiagonal,
// and v the accumulated orthogonal transformation.
#[allow(clippy::needless_range_loop)]
fn tred2(n: usize, v: &mut [f64], d: &mut [f64], e: &mut [f64]) {
    let at = |i: usize, j: usize| j * n + i;
    for j in 0..n {
        d[j] = v[at(n - 1, j)];
    }
    for i in (1..n).rev() {
        let mut scale = 0.0;
        let mut h = 0.0;
        for item in d.iter().take(i) {
            scale += item.abs();
        }
        if scale == 0.0 {
            e[i] = d[i - 1];
            for j in 0..i {
                d[j] = v[at(i - 1, j)];
                v[at(i, j)] = 0.0;
                v[at(j, i)] = 0.0;
            }
        } else {
            for k in 0..i {
                d[k] /= scale;
                h += d[k] * d[k];
            }
            let mut f = d[i - 1];
            let mut g = h.sqrt();
            if f > 0.0 {
                g = -g;
            }
            e[i] = scale * g;
            h -= f * g;
            d[i - 1] = f - g;
            for j in 0..i {
                e[j] = 0.0;
            }
            for j in 0..i {
                f = d[j];
                v[at(j, i)] = f;
                g = e[j] + v[at(j, j)] * f;
                for k in (j + 1)..i {
                    g += v[at(k, j)] * d[k];
                    e[k] += v[at(k, j)] * f;
                }
                e[j] = g;
            }
            f = 0.0;
            for j in 0..i {
                e[j] /= h;
                f += e[j] * d[j];
            }
            let hh = f / (h + h);
            for j in 0..i {
                e[j] -= hh * d[j];
            }
            for j in 0..i {
                f = d[j];
                g = e[j];
                for k in j..i {
                    v[at(k, j)] -= f * e[k] + g * d[k];
                }
                d[j] = v[at(i - 1, j)];
                v[at(i, j)] = 0.0;
            }
        }
        d[i] = h;
    }
    for i in 0..n - 1 {
        v[at(n - 1, i)] = v[at(i, i)];
        v[at(i, i)] = 1.0;
        let h = d[i + 1];
        if h != 0.0 {
            for k in 0..=i {
                d[k] = v[at(k, i + 1)] / h;
            }
            for j in 0..=i {
                let mut g = 0.0;
                for k in 0..=i {
                    g += v[at(k, i + 1)] * v[at(k, j)];
                }
                for k in 0..=i {
                    v[at(k, j)] -= g * d[k];
                }
            }
        }
        for k in 0..=i {
            v[at(k, i + 1)] = 0.0;
        }
    }
    for j in 0..n {
        d[j] = v[at(n - 1, j)];
        v[at(n - 1, j)] = 0.0;
    }
    v[at(n - 1, n - 1)] = 1.0;
    e[0] = 0.0;
}

// Implicit-shift QL iteration on the tridiagonal (d, e), rotations applied
// to the accumulated transformation in v.
#[allow(clippy::needless_range_loop)]
fn tql2(n: usize, d: &mut [f64], e: &mut [f64], v: &mut [f64]) -> Result<(), EigenError> {
    let at = |i: usize, j: usize| j * n + i;
    for i in 1..n {
        e[i - 1] = e[i];
    }
    e[n - 1] = 0.0;
    let mut f = 0.0f64;
    let mut tst1 = 0.0f64;
    let eps = 2.0f64.powi(-52);
    for l in 0..n {
        tst1 = tst1.max(d[l].abs() + e[l].abs());
        let mut m = l;
        while m < n {
            if e[m].abs() <= eps * tst1 {
                break;
            }
            m += 1;
        }
        if m > l && m < n {
            let mut iter = 0;
            loop {
                iter += 1;
                if iter > 50 {
                    return Err(EigenError::IterationLimit { index: l });
                }
                let g = d[l];
                let mut p = (d[l + 1] - g) / (2.0 * e[l]);
                let mut r = p.hypot(1.0);
                if p < 0.0 {
                    r = -r;
                }
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                let dl1 = d[l + 1];
                let mut h = g - d[l];
                for i in (l + 2)..n {
                    d[i] -= h;
                }
                f += h;
                p = d[m];
                let mut c = 1.0;
                let mut c2 = c;
                let mut c3 = c;
                let el1 = e[l + 1];
                let mut s = 0.0;
                let mut s2 = 0.0;
                for i in (l..m).rev() {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    let g = c * e[i];
                    h = c * p;
                    r = p.hypot(e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * g;
                    d[i + 1] = h + s * (c * g + s * d[i]);
                    for k in 0..n {
                        h = v[at(k, i + 1)];
                        v[at(k, i + 1)] = s * v[at(k, i)] + c * h;
                        v[at(k, i)] = c * v[at(k, i)] - s * h;
                    }
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;
                if e[l].abs() <= eps * tst1 {
                    break;
                }
            }
        }
        d[l] += f;
        e[l] = 0.0;
    }
    // sort ascending, carrying eigenvector columns along
    for i in 0..n.saturating_sub(1) {
        let mut k = i;
        let mut p = d[i];
        for j in (i + 1)..n {
            if d[j] < p {
                k = j;
                p = d[j];
            }
        }
        if k != i {
            d.swap(k, i);
            for row in 0..n {
                let tmp = v[at(row, i)];
                v[at(row, i)] = v[at(row, k)];
                v[at(row, k)] = tmp;
            }
        }
    }
    Ok(())
}

fn frobenius(m: &ChainMatrix) -> f64 {
    m.data().iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// All eigenvalues of a symmetric matrix, ascending. The accumulated
/// eigenvectors are used for a backward-error spot check against
/// tol * ||A||_F on a sample of pairs.
pub fn sym_eigenvalues(matrix: &ChainMatrix, tol: f64) -> Result<Spectrum, EigenError> {
    assert!(tol > 0.0, "need tol > 0");
    let n = matrix.dim();
    if n == 0 {
        return Err(EigenError::EmptySpectrum);
    }
    let mut v = matrix.data().to_vec();
    let mut d = vec![0.0; n];
    let mut e = vec![0.0; n];
    if n == 1 {
        return Ok(Spectrum { values: vec![v[0]] });
    }
    tred2(n, &mut v, &mut d, &mut e);
    tql2(n, &mut d, &mut e, &mut v)?;

    let norm = frobenius(matrix);
    let bound = tol * norm.max(1e-300);
    let step = (n / 8).max(1);
    for idx in (0..n).step_by(step) {
        let lambda = d[idx];
        let mut err2 = 0.0;
        for row in 0..n {
            let mut av = 0.0;
            for k in 0..n {
                av += matrix.entry(row, k) * v[idx * n + k];
            }
            let r = av - lambda * v[idx * n + row];
            err2 += r * r;
        }
        let err = err2.sqrt();
        if err > bound {
            return Err(EigenError::BackwardError { error: err, bound });
        }
    }
    Ok(Spectrum { values: d })
}

/// Round every eigenvalue to the nearest integer and return Σ_j q^{E_j} as
/// an exact polynomial. Rejects spectra that are not integer to `int_tol`
/// or contain negative rounded energies.
pub fn spectral_qpoly(spec: &Spectrum, int_tol: f64) -> Result<QPolynomial, EigenError> {
    if !(int_tol > 0.0 && int_tol < 0.5) {
        return Err(EigenError::InvalidTolerance(int_tol));
    }
    if spec.values.is_empty() {
        return Err(EigenError::EmptySpectrum);
    }
    // report the worst offender, not the first
    let mut worst = (0.0f64, 0.0f64);
    for &v in &spec.values {
        let dev = (v - v.round()).abs();
        if dev > worst.1 {
            worst = (v, dev);
        }
    }
    if worst.1 > int_tol {
        return Err(EigenError::NonIntegerSpectrum {
            value: worst.0,
            deviation: worst.1,
            tol: int_tol,
        });
    }
    let mut poly = QPolynomial::zero();
    for &v in &spec.values {
        let r = v.round();
        if r < 0.0 {
            return Err(EigenError::NegativeEnergy { value: r as i64 });
        }
        poly.add_term(r as u64, BigInt::from(1));
    }
    Ok(poly)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::dn_sites;
    use crate::spinops::{build_dn_chain, global_reversal, SpinConfig};

    fn from_rows(rows: &[&[f64]]) -> ChainMatrix {
        ChainMatrix::from_fn(rows.len(), |r, c| rows[r][c])
    }

    #[test]
    fn diagonal_matrix() {
        let m = from_rows(&[&[3.0, 0.0, 0.0], &[0.0, 1.0, 0.0], &[0.0, 0.0, 2.0]]);
        let s = sym_eigenvalues(&m, 1e-9).unwrap();
        assert_eq!(s.values(), &[1.0, 2.0, 3.0]);
    }

    #[test]
    fn reflection_matrix() {
        let m = from_rows(&[&[0.0, 1.0], &[1.0, 0.0]]);
        let s = sym_eigenvalues(&m, 1e-9).unwrap();
        assert!((s.values()[0] + 1.0).abs() < 1e-14);
        assert!((s.values()[1] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn chain_eigenvalue_sum_matches_trace() {
        let sites = dn_sites(3).unwrap();
        let cfg = SpinConfig::new(2, 3).unwrap();
        let h = build_dn_chain(&sites, &cfg).unwrap();
        let s = sym_eigenvalues(&h, 1e-9).unwrap();
        let sum: f64 = s.values().iter().sum();
        assert!((sum - 60.0).abs() < 1e-9);
    }

    #[test]
    #[allow(clippy::needless_range_loop)]
    fn eigenvalue_sum_matches_trace_random() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let n = 40;
        let mut upper = vec![vec![0.0f64; n]; n];
        for i in 0..n {
            for j in 0..=i {
                let x = rng.gen_range(-1.0..1.0);
                upper[i][j] = x;
                upper[j][i] = x;
            }
        }
        let m = ChainMatrix::from_fn(n, |r, c| upper[r][c]);
        let s = sym_eigenvalues(&m, 1e-9).unwrap();
        let sum: f64 = s.values().iter().sum();
        let fro2: f64 = m.data().iter().map(|x| x * x).sum();
        let sum2: f64 = s.values().iter().map(|x| x * x).sum();
        assert!((sum - m.trace()).abs() < 1e-8 * frobenius(&m).max(1.0));
        assert!((fro2 - sum2).abs() < 1e-8 * fro2);
    }

    #[test]
    fn spectrum_invariant_under_basis_permutation() {
        let sites = dn_sites(3).unwrap();
        let cfg = SpinConfig::new(2, 3).unwrap();
        let h = build_dn_chain(&sites, &cfg).unwrap();
        let dim = h.dim();
        // conjugate by the global-reversal permutation
        let p = ChainMatrix::from_fn(dim, |r, c| {
            h.entry(global_reversal(&cfg, r), global_reversal(&cfg, c))
        });
        let s1 = sym_eigenvalues(&h, 1e-9).unwrap();
        let s2 = sym_eigenvalues(&p, 1e-9).unwrap();
        for (a, b) in s1.values().iter().zip(s2.values()) {
            assert!((a - b).abs() < 1e-9);
        }
    }

    #[test]
    fn chain_spectrum_nonnegative() {
        let sites = dn_sites(4).unwrap();
        let cfg = SpinConfig::new(2, 4).unwrap();
        let h = build_dn_chain(&sites, &cfg).unwrap();
        let s = sym_eigenvalues(&h, 1e-9).unwrap();
        assert!(s.min() >= -1e-9);
    }

    #[test]
    fn qpoly_conversion() {
        let s = Spectrum {
            values: vec![0.0, 0.0, 2.0],
        };
        let p = spectral_qpoly(&s, 1e-6).unwrap();
        let mut expect = QPolynomial::constant(2);
        expect.add_term(2, BigInt::from(1));
        assert_eq!(p, expect);
        assert_eq!(p.eval_one(), BigInt::from(3));
    }

    #[test]
    fn qpoly_single_state_chain() {
        let sites = dn_sites(3).unwrap();
        let cfg = SpinConfig::new(1, 3).unwrap();
        let h = build_dn_chain(&sites, &cfg).unwrap();
        let s = sym_eigenvalues(&h, 1e-9).unwrap();
        let p = spectral_qpoly(&s, 1e-6).unwrap();
        assert_eq!(p, QPolynomial::monomial(10, 1));
    }

    #[test]
    fn qpoly_guards() {
        let s = Spectrum { values: vec![1.4] };
        assert!(matches!(
            spectral_qpoly(&s, 0.3),
            Err(EigenError::NonIntegerSpectrum { .. })
        ));
        let s = Spectrum { values: vec![-2.0] };
        assert!(matches!(
            spectral_qpoly(&s, 0.1),
            Err(EigenError::NegativeEnergy { .. })
        ));
        let s = Spectrum { values: vec![1.0] };
        assert!(spectral_qpoly(&s, 0.6).is_err());
    }
}
