//! Exact freezing-trick combinatorics for the D_N chain.
//!
//! The chain partition function is assembled in two independent closed forms:
//! a rational form summed over all ordered compositions of N (which carries an
//! explicit factor 1/(1 + q^{N(N-1)/2}) that must divide exactly), and a
//! manifestly polynomial form built from the auxiliary polynomials Q_l. Both
//! are computed in exact big-integer arithmetic and cross-checked against each
//! other, against the large-coupling dynamical/scalar partition series, and
//! against brute-force enumeration of the underlying quantum numbers.

mod poly;
mod series;

pub use poly::QPolynomial;
pub use series::QSeries;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::par;

#[derive(Debug, Error)]
pub enum QseriesError {
    #[error("rational and polynomial closed forms disagree at exponent {exponent}")]
    FormMismatch { exponent: u64 },
    #[error("numerator of the rational closed form is not divisible by 1 + q^{divisor_exp}")]
    InexactDivision { divisor_exp: u64 },
    #[error("multiindex must be nonincreasing and nonnegative")]
    InvalidMultiindex,
    #[error("closed-form series disagrees with enumeration at exponent {exponent}")]
    EnumerationMismatch { exponent: usize },
    #[error("freezing quotient disagrees with the chain polynomial at exponent {exponent}")]
    FreezingMismatch { exponent: usize },
}

/// An ordered composition (k_1, ..., k_r) of a positive integer, together
/// with its prefix sums.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Composition {
    parts: Vec<u32>,
    kbar: Vec<u32>,
}

impl Composition {
    fn new(parts: Vec<u32>) -> Self {
        let mut kbar = Vec::with_capacity(parts.len());
        let mut acc = 0;
        for &p in &parts {
            acc += p;
            kbar.push(acc);
        }
        Self { parts, kbar }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// Prefix sums of the parts; the last entry equals the composition target.
    pub fn prefix_sums(&self) -> &[u32] {
        &self.kbar
    }

    pub fn target(&self) -> u32 {
        self.kbar.last().copied().unwrap_or(0)
    }
}

/// All 2^{target-1} ordered compositions of `target` in lexicographic order
/// of the part sequences. `target = 0` yields the single empty composition.
pub fn compositions(target: u32) -> Vec<Composition> {
    fn rec(n: u32, prefix: &mut Vec<u32>, out: &mut Vec<Composition>) {
        if n == 0 {
            out.push(Composition::new(prefix.clone()));
            return;
        }
        for first in 1..=n {
            prefix.push(first);
            rec(n - first, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(target, &mut Vec::new(), &mut out);
    out
}

/// Dispersion K(x) = x(2N - 1 - x) with the chain size N, evaluated on the
/// prefix sums of `comp` and on the complement {1, ..., l-1} \ {prefix sums}
/// (ascending), where l is the composition target.
pub fn k_exponents(comp: &Composition, n: u32) -> (Vec<u64>, Vec<u64>) {
    let disp = |x: u32| -> u64 { u64::from(x) * u64::from(2 * n - 1 - x) };
    let k: Vec<u64> = comp.kbar.iter().map(|&x| disp(x)).collect();
    let l = comp.target();
    let heads: &[u32] = if comp.kbar.is_empty() {
        &[]
    } else {
        &comp.kbar[..comp.kbar.len() - 1]
    };
    let kp: Vec<u64> = (1..l)
        .filter(|x| !heads.contains(x))
        .map(disp)
        .collect();
    (k, kp)
}

/// Binomial coefficient with the usual convention C(m, k) = 0 for k > m.
pub fn binomial(m: u64, k: u64) -> BigInt {
    if k > m {
        return BigInt::zero();
    }
    let mut c = BigInt::one();
    for i in 0..k {
        c = c * BigInt::from(m - i) / BigInt::from(i + 1);
    }
    c
}

/// Spin-space split m_ε = (m + ε·(m mod 2)) / 2.
pub fn m_eps(m: u32, eps: i8) -> u64 {
    let parity = u64::from(m % 2);
    let m = u64::from(m);
    if eps > 0 {
        (m + parity) / 2
    } else {
        (m - parity) / 2
    }
}

/// Auxiliary polynomial Q_l: a sum over the ordered compositions of l with
/// the dispersion taken at the full chain size N. Q_0 = 1.
pub fn q_l(l: u32, n: u32, m: u32) -> QPolynomial {
    let comps = compositions(l);
    par::map_reduce(
        &comps,
        QPolynomial::zero,
        |comp| {
            let (k, kp) = k_exponents(comp, n);
            let mut coeff = BigInt::one();
            for &part in comp.parts() {
                coeff *= binomial(u64::from(m), u64::from(part));
            }
            if coeff.is_zero() {
                return QPolynomial::zero();
            }
            let head_exp: u64 = k[..k.len().saturating_sub(1)].iter().sum();
            let mut term = QPolynomial::monomial(head_exp, coeff);
            for &e in &kp {
                term = term.mul(&QPolynomial::one_minus_q(e));
            }
            term
        },
        |a, b| a.add(&b),
    )
}

/// The curly-brace factor shared by both closed forms:
/// 2 C(m, k_r) q^{h} + [C(m_+, k_r) + C(m_-, k_r)] (1 - q^{h}),
/// with h = N(N-1)/2.
fn tail_factor(m: u32, k_r: u32, half: u64) -> QPolynomial {
    let two_binom = binomial(u64::from(m), u64::from(k_r)) * BigInt::from(2);
    let split = binomial(m_eps(m, 1), u64::from(k_r)) + binomial(m_eps(m, -1), u64::from(k_r));
    QPolynomial::monomial(half, two_binom)
        .add(&QPolynomial::one_minus_q(half).scale(&split))
}

/// Chain partition function in the manifestly polynomial closed form.
fn chain_partition_poly_form(n: u32, m: u32) -> QPolynomial {
    let half = u64::from(n) * u64::from(n - 1) / 2;
    let mut z = q_l(n - 1, n, m)
        .shift(2 * half)
        .scale(&BigInt::from(u64::from(m)));
    let lmax = m.min(n);
    for l in 2..=lmax {
        let (nl, ll) = (u64::from(n), u64::from(l));
        let mut term = QPolynomial::monomial((nl - ll) * (nl + ll - 1), BigInt::one());
        for i in 1..=i64::from(l) - 2 {
            let i = i as u64;
            term = term.mul(&QPolynomial::one_minus_q((nl - i - 1) * (nl + i)));
        }
        term = term.mul(&tail_factor(m, l, half));
        term = term.mul(&q_l(n - l, n, m));
        term = term.mul(&QPolynomial::one_minus_q(half));
        z = z.add(&term);
    }
    z
}

/// Chain partition function in the rational closed form: the composition sum
/// divided exactly by (1 + q^{N(N-1)/2}).
fn chain_partition_rational_form(n: u32, m: u32) -> Result<QPolynomial, QseriesError> {
    let half = u64::from(n) * u64::from(n - 1) / 2;
    let comps = compositions(n);
    let numerator = par::map_reduce(
        &comps,
        QPolynomial::zero,
        |comp| {
            let parts = comp.parts();
            let r = parts.len();
            let mut coeff = BigInt::one();
            for &part in &parts[..r - 1] {
                coeff *= binomial(u64::from(m), u64::from(part));
            }
            if coeff.is_zero() {
                return QPolynomial::zero();
            }
            let (k, kp) = k_exponents(comp, n);
            let head_exp: u64 = k[..r - 1].iter().sum();
            let mut term = QPolynomial::monomial(head_exp, coeff);
            term = term.mul(&tail_factor(m, parts[r - 1], half));
            for &e in &kp {
                term = term.mul(&QPolynomial::one_minus_q(e));
            }
            term
        },
        |a, b| a.add(&b),
    );
    numerator
        .div_exact(&QPolynomial::one_plus_q(half))
        .ok_or(QseriesError::InexactDivision { divisor_exp: half })
}

/// Exact partition function of the N-site su(m) chain. Both closed forms are
/// evaluated and must agree coefficient-for-coefficient; the rational form
/// must divide exactly.
pub fn chain_partition(n: u32, m: u32) -> Result<QPolynomial, QseriesError> {
    assert!(n >= 3 && m >= 1, "need n >= 3 and m >= 1");
    let poly_form = chain_partition_poly_form(n, m);
    let rational_form = chain_partition_rational_form(n, m)?;
    if poly_form != rational_form {
        let diff = poly_form.sub(&rational_form);
        let exponent = diff.terms().next().map(|(e, _)| e).unwrap_or(0);
        return Err(QseriesError::FormMismatch { exponent });
    }
    Ok(poly_form)
}

fn check_nonincreasing(nvec: &[u32]) -> Result<(), QseriesError> {
    if nvec.windows(2).any(|w| w[0] < w[1]) {
        return Err(QseriesError::InvalidMultiindex);
    }
    Ok(())
}

/// Spin degeneracy of the level labelled by the nonincreasing multiindex `n`
/// in the (delta, eps) sector: block sizes k_i come from the runs of equal
/// entries, and the last block uses the reduced count m_ε when it sits at
/// n = 0 in the delta = 0 sector.
pub fn degeneracy_count(
    nvec: &[u32],
    delta: u8,
    eps: i8,
    m: u32,
) -> Result<BigInt, QseriesError> {
    check_nonincreasing(nvec)?;
    let mut blocks: Vec<(u32, u64)> = Vec::new();
    for &v in nvec {
        match blocks.last_mut() {
            Some((val, len)) if *val == v => *len += 1,
            _ => blocks.push((v, 1)),
        }
    }
    let mut d = BigInt::one();
    let r = blocks.len();
    for (i, &(val, len)) in blocks.iter().enumerate() {
        let pool = if i + 1 == r && delta == 0 && val == 0 {
            m_eps(m, eps)
        } else {
            u64::from(m)
        };
        d *= binomial(pool, len);
    }
    Ok(d)
}

/// Brute-force count of the admissible spin vectors for (`n`, delta, eps):
/// s runs over all m^N product states; within every run of equal n the
/// components must strictly decrease, and on a trailing n = 0 block in the
/// delta = 0 sector they must be nonnegative (eps = +1) or positive
/// (eps = -1). Doubled spins 2s = 2d - (m-1) keep everything integral.
pub fn enumerate_degeneracy(nvec: &[u32], delta: u8, eps: i8, m: u32) -> BigInt {
    let nn = nvec.len();
    let m = m as usize;
    let mut count: u64 = 0;
    let mut digits = vec![0usize; nn];
    loop {
        let mut ok = true;
        'check: for i in 0..nn {
            // doubled spin at site i
            let si = 2 * digits[i] as i64 - (m as i64 - 1);
            if delta == 0 && nvec[i] == 0 {
                if eps > 0 && si < 0 {
                    ok = false;
                    break 'check;
                }
                if eps < 0 && si <= 0 {
                    ok = false;
                    break 'check;
                }
            }
            for j in (i + 1)..nn {
                if nvec[i] == nvec[j] {
                    let sj = 2 * digits[j] as i64 - (m as i64 - 1);
                    if si <= sj {
                        ok = false;
                        break 'check;
                    }
                }
            }
        }
        if ok {
            count += 1;
        }
        // next digit vector
        let mut pos = nn;
        loop {
            if pos == 0 {
                return BigInt::from(count);
            }
            pos -= 1;
            digits[pos] += 1;
            if digits[pos] < m {
                break;
            }
            digits[pos] = 0;
        }
    }
}

/// Visit every nonincreasing vector n_1 >= ... >= n_len >= min_last whose
/// normalized energy delta*Σw + Σ 2 n_i w_i (weights w_i = len - i, 1-based)
/// does not exceed `cutoff`.
fn visit_level_vectors<F: FnMut(&[u32], usize)>(
    len: usize,
    min_last: u32,
    delta: u8,
    cutoff: usize,
    visit: &mut F,
) {
    fn rec<F: FnMut(&[u32], usize)>(
        buf: &mut Vec<u32>,
        len: usize,
        min_last: u32,
        energy: usize,
        cutoff: usize,
        visit: &mut F,
    ) {
        if buf.len() == len {
            visit(buf, energy);
            return;
        }
        let idx = buf.len();
        let weight = 2 * (len - 1 - idx);
        let upper = buf.last().copied().unwrap_or(u32::MAX);
        let mut v = min_last;
        loop {
            if v > upper {
                break;
            }
            let e = energy + weight * v as usize;
            if e > cutoff && weight > 0 {
                break;
            }
            if e <= cutoff {
                buf.push(v);
                rec(buf, len, min_last, e, cutoff, visit);
                buf.pop();
            }
            if weight == 0 && v >= upper {
                break;
            }
            if weight == 0 && upper == u32::MAX {
                // unconstrained zero-weight head cannot happen (len >= 2)
                break;
            }
            v += 1;
        }
    }
    let base: usize = usize::from(delta) * (len * (len - 1) / 2);
    if base > cutoff {
        return;
    }
    rec(&mut Vec::with_capacity(len), len, min_last, base, cutoff, visit);
}

/// Large-coupling dynamical partition series from the closed form: the sum of
/// the delta = 0 sector (two chiralities) and the delta = 1 sector, every
/// geometric factor expanded to the cutoff.
pub fn dyn_partition_series(n: u32, m: u32, cutoff: usize) -> QSeries {
    let half = u64::from(n) * u64::from(n - 1) / 2;
    let comps = compositions(n);
    par::map_reduce(
        &comps,
        || QSeries::zero(cutoff),
        |comp| {
            let parts = comp.parts();
            let r = parts.len();
            let (k, _) = k_exponents(comp, n);
            let mut full_coeff = BigInt::one();
            for &part in parts {
                full_coeff *= binomial(u64::from(m), u64::from(part));
            }
            let mut head_coeff = BigInt::one();
            for &part in &parts[..r - 1] {
                head_coeff *= binomial(u64::from(m), u64::from(part));
            }
            let mut head = QSeries::one(cutoff);
            for &e in &k[..r - 1] {
                head = head.mul(&QSeries::geometric_frac(e, cutoff));
            }
            let split =
                binomial(m_eps(m, 1), u64::from(parts[r - 1])) + binomial(m_eps(m, -1), u64::from(parts[r - 1]));
            let last = binomial(u64::from(m), u64::from(parts[r - 1]));
            // delta = 0 sector
            let mut tail = QSeries::geometric_frac(k[r - 1], cutoff).scale(&(last * BigInt::from(2)));
            tail.add_term(0, split);
            let z0 = head.mul(&tail).scale(&head_coeff);
            // delta = 1 sector
            let mut z1 = head
                .mul(&QSeries::geometric_inv(k[r - 1], cutoff))
                .scale(&(full_coeff * BigInt::from(2)));
            z1 = shift_series(&z1, half as usize);
            z0.add(&z1)
        },
        |a, b| a.add(&b),
    )
}

fn shift_series(s: &QSeries, k: usize) -> QSeries {
    let cutoff = s.cutoff();
    let mut out = QSeries::zero(cutoff);
    for e in 0..=cutoff {
        if e + k <= cutoff {
            out.add_term(e + k, s.coeff(e).clone());
        }
    }
    out
}

/// Brute-force dynamical partition series: enumerate the level multiindices
/// in all four (delta, eps) sectors and count spin states by direct
/// enumeration. Fully independent of the composition machinery.
pub fn enumerate_spectrum_series(n: u32, m: u32, cutoff: usize) -> QSeries {
    let mut s = QSeries::zero(cutoff);
    for delta in [0u8, 1] {
        visit_level_vectors(n as usize, 0, delta, cutoff, &mut |nvec, energy| {
            for eps in [1i8, -1] {
                let d = enumerate_degeneracy(nvec, delta, eps, m);
                s.add_term(energy, d);
            }
        });
    }
    s
}

/// Large-coupling scalar partition series: the closed product form
/// (1 + q^{N(N-1)/2})^2 Π_{i=1..N} (1 - q^{i(2N-1-i)})^{-1}, verified
/// term-by-term against direct enumeration of the scalar quantum numbers.
pub fn scalar_partition_series(n: u32, cutoff: usize) -> Result<QSeries, QseriesError> {
    let half = (u64::from(n) * u64::from(n - 1) / 2) as usize;
    let mut s = QSeries::one(cutoff);
    for i in 1..=u64::from(n) {
        s = s.mul(&QSeries::geometric_inv(i * (2 * u64::from(n) - 1 - i), cutoff));
    }
    let mut sq = QSeries::one(cutoff);
    sq.add_term(half, BigInt::from(2));
    sq.add_term(2 * half, BigInt::one());
    s = s.mul(&sq);

    let mut enumerated = QSeries::zero(cutoff);
    for delta in [0u8, 1] {
        for eps in [1i8, -1] {
            let min_last = u32::from(delta == 0 && eps < 0);
            visit_level_vectors(n as usize, min_last, delta, cutoff, &mut |_, energy| {
                enumerated.add_term(energy, BigInt::one());
            });
        }
    }
    if let Some(exponent) = s.first_mismatch(&enumerated) {
        return Err(QseriesError::EnumerationMismatch { exponent });
    }
    Ok(s)
}

/// Report from the full freezing cross-check.
#[derive(Debug)]
pub struct FreezingReport {
    pub chain: QPolynomial,
    pub cutoff: usize,
}

/// Freezing quotient: the dynamical series divided by the scalar series must
/// reproduce the chain partition polynomial through deg + 5.
pub fn freezing_quotient_check(n: u32, m: u32) -> Result<FreezingReport, QseriesError> {
    let chain = chain_partition(n, m)?;
    let cutoff = chain.degree().unwrap_or(0) as usize + 5;
    let dyn_series = dyn_partition_series(n, m, cutoff);
    let scalar = scalar_partition_series(n, cutoff)?;
    let quotient = dyn_series.mul(&scalar.inverse().expect("scalar series has unit constant"));
    if let Some(exponent) = quotient.first_mismatch_poly(&chain) {
        return Err(QseriesError::FreezingMismatch { exponent });
    }
    Ok(FreezingReport { chain, cutoff })
}

/// Rearranged freezing identity: with Q = q^{N(N-1)/2},
/// Z·(1+Q)^2 - 2Q·Q_N equals the delta = 0 dynamical series multiplied by
/// Π_{i=1..N}(1 - q^{i(2N-1-i)}), through deg Z + 5.
pub fn remz_check(n: u32, m: u32) -> Result<FreezingReport, QseriesError> {
    let chain = chain_partition(n, m)?;
    let cutoff = chain.degree().unwrap_or(0) as usize + 5;
    let half = u64::from(n) * u64::from(n - 1) / 2;
    let lhs_poly = chain
        .mul(&QPolynomial::one_plus_q(half))
        .mul(&QPolynomial::one_plus_q(half))
        .sub(&q_l(n, n, m).shift(half).scale(&BigInt::from(2)));
    let lhs = QSeries::from_poly(&lhs_poly, cutoff);

    let z0 = dyn_z0_series(n, m, cutoff);
    let mut denom = QSeries::one(cutoff);
    for i in 1..=u64::from(n) {
        denom = denom.mul(&QSeries::from_poly(
            &QPolynomial::one_minus_q(i * (2 * u64::from(n) - 1 - i)),
            cutoff,
        ));
    }
    let rhs = z0.mul(&denom);
    if let Some(exponent) = lhs.first_mismatch(&rhs) {
        return Err(QseriesError::FreezingMismatch { exponent });
    }
    Ok(FreezingReport { chain, cutoff })
}

/// The delta = 0 part of the dynamical series on its own.
fn dyn_z0_series(n: u32, m: u32, cutoff: usize) -> QSeries {
    let comps = compositions(n);
    par::map_reduce(
        &comps,
        || QSeries::zero(cutoff),
        |comp| {
            let parts = comp.parts();
            let r = parts.len();
            let (k, _) = k_exponents(comp, n);
            let mut head_coeff = BigInt::one();
            for &part in &parts[..r - 1] {
                head_coeff *= binomial(u64::from(m), u64::from(part));
            }
            let mut head = QSeries::one(cutoff);
            for &e in &k[..r - 1] {
                head = head.mul(&QSeries::geometric_frac(e, cutoff));
            }
            let split = binomial(m_eps(m, 1), u64::from(parts[r - 1]))
                + binomial(m_eps(m, -1), u64::from(parts[r - 1]));
            let last = binomial(u64::from(m), u64::from(parts[r - 1]));
            let mut tail = QSeries::geometric_frac(k[r - 1], cutoff).scale(&(last * BigInt::from(2)));
            tail.add_term(0, split);
            head.mul(&tail).scale(&head_coeff)
        },
        |a, b| a.add(&b),
    )
}

/// Full freezing consistency: quotient and rearranged identity.
pub fn freezing_consistency(n: u32, m: u32) -> Result<FreezingReport, QseriesError> {
    let report = freezing_quotient_check(n, m)?;
    remz_check(n, m)?;
    Ok(report)
}
