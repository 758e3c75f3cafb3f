//! Symbolic Dunkl operators of D_N type and the triangularization of the
//! auxiliary operator H' = Σ_k J_k², with the coupling `a` kept as a formal
//! parameter throughout.
//!
//! Acting on the exponential basis φ_ν = e^{iν·x} (uniform-parity integer ν),
//! a single Dunkl operator is the monomial rule
//!
//!   J_k φ_ν / φ_ν = -ν_k - 2a(N-1)
//!                   + 2a [ Σ_{j<k} G(α_jk; ν_j - ν_k)
//!                        + Σ_{j>k} G(α_jk; ν_j - ν_k + 2)
//!                        + Σ_{j≠k} G(β_jk; 2 - ν_j - ν_k) ],
//!
//! where α_jk = z_j^{-1} z_k, β_jk = z_j z_k (z_j = e^{i x_j}) and, for even
//! d, G(x; d) = Σ_{r=0}^{d/2-1} x^{2r} if d > 0, 0 if d = 0, and
//! -Σ_{r=1}^{|d|/2} x^{-2r} if d < 0. A power α_jk^{2r} shifts ν by
//! 2r(e_k - e_j); a power β_jk^{2r} shifts it by 2r(e_j + e_k). Every output
//! index has sorted key ⪯ the input key, which makes truncation by
//! max_i |ν_i| self-consistent and H' triangular across key classes.
//!
//! Site indices are zero-based everywhere in this module; the diagonal
//! coefficient on the zero multiindex is 2a(N-1-k).

mod apoly;

pub use apoly::APoly;

use std::collections::BTreeMap;

use num_complex::Complex64;
use num_rational::Rational64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::par;

#[derive(Debug, Error)]
pub enum DunklError {
    #[error("multiindex components must share parity: {0:?}")]
    ParityViolation(Vec<i64>),
    #[error("multiindex must be nonincreasing and nonnegative: {0:?}")]
    NotSorted(Vec<i64>),
    #[error("action escapes the triangular order: {from:?} -> {to:?}")]
    TriangularityViolation { from: Vec<i64>, to: Vec<i64> },
    #[error("nonzero entry inside an equal-key class: {row:?} -> {col:?}")]
    EqualKeyViolation { row: Vec<i64>, col: Vec<i64> },
    #[error("diagonal at {nu:?} is {got} but the closed form gives {expected}")]
    DiagonalMismatch { nu: Vec<i64>, got: String, expected: String },
    #[error("collocation error {error:e} exceeds 1e-8")]
    ToleranceExceeded { error: f64 },
}

/// Integer multiindex with uniform component parity.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Multiindex {
    nu: Vec<i64>,
    delta: u8,
}

impl Multiindex {
    pub fn new(nu: Vec<i64>) -> Result<Self, DunklError> {
        let delta = (nu.first().copied().unwrap_or(0).rem_euclid(2)) as u8;
        if nu.iter().any(|&v| v.rem_euclid(2) as u8 != delta) {
            return Err(DunklError::ParityViolation(nu));
        }
        Ok(Self { nu, delta })
    }

    pub fn components(&self) -> &[i64] {
        &self.nu
    }

    pub fn delta(&self) -> u8 {
        self.delta
    }

    pub fn len(&self) -> usize {
        self.nu.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nu.is_empty()
    }

    /// Absolute values sorted descending.
    pub fn sorted_key(&self) -> Vec<i64> {
        sorted_key_of(&self.nu)
    }
}

/// Outcome of comparing two multiindices by their sorted keys.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KeyOrder {
    Less,
    Greater,
    EqualKey,
}

/// Absolute values sorted descending, for an arbitrary integer vector.
pub fn sorted_key_of(p: &[i64]) -> Vec<i64> {
    let mut key: Vec<i64> = p.iter().map(|v| v.abs()).collect();
    key.sort_unstable_by(|a, b| b.cmp(a));
    key
}

/// Lexicographic comparison of sorted keys: `Less` means the first
/// nonvanishing component of key(p) - key(q) is negative, i.e. p strictly
/// precedes q in the triangular order. Defined for arbitrary integer
/// vectors; parity plays no role in the ordering.
pub fn order_compare(p: &[i64], q: &[i64]) -> KeyOrder {
    assert_eq!(p.len(), q.len(), "multiindices must have equal length");
    match sorted_key_of(p).cmp(&sorted_key_of(q)) {
        std::cmp::Ordering::Less => KeyOrder::Less,
        std::cmp::Ordering::Greater => KeyOrder::Greater,
        std::cmp::Ordering::Equal => KeyOrder::EqualKey,
    }
}

/// Apply J_k to φ_ν; returns the map ν' -> coefficient (degree <= 1 in a).
pub fn dunkl_apply(k: usize, nu: &Multiindex) -> BTreeMap<Multiindex, APoly> {
    let n = nu.len();
    assert!(k < n, "site index out of range");
    let v = nu.components();
    let mut out: BTreeMap<Vec<i64>, APoly> = BTreeMap::new();
    let mut add = |target: Vec<i64>, coeff: APoly| {
        let entry = out.entry(target).or_insert_with(APoly::zero);
        *entry = entry.add(&coeff);
    };

    add(
        v.to_vec(),
        APoly::new(
            Rational64::from(-v[k]),
            Rational64::from(-2 * (n as i64 - 1)),
            Rational64::from(0),
        ),
    );

    // kernel G(x; d) contributes 2a per surviving power of x
    let mut kernel = |d: i64, shift_unit: (usize, i64, usize, i64)| {
        let (si, ci, sj, cj) = shift_unit;
        if d > 0 {
            for r in 0..d / 2 {
                let mut t = v.to_vec();
                t[si] += 2 * r * ci;
                t[sj] += 2 * r * cj;
                add(t, APoly::linear(2));
            }
        } else if d < 0 {
            for r in 1..=(-d) / 2 {
                let mut t = v.to_vec();
                t[si] -= 2 * r * ci;
                t[sj] -= 2 * r * cj;
                add(t, APoly::linear(-2));
            }
        }
    };

    for j in 0..n {
        if j == k {
            continue;
        }
        // α_jk powers shift ν along e_k - e_j
        let d = if j < k {
            v[j] - v[k]
        } else {
            v[j] - v[k] + 2
        };
        kernel(d, (k, 1, j, -1));
        // β_jk powers shift ν along e_j + e_k
        kernel(2 - v[j] - v[k], (k, 1, j, 1));
    }

    out.into_iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|(t, c)| (Multiindex::new(t).expect("shifts preserve parity"), c))
        .collect()
}

/// Closed-form diagonal coefficient λ_{ν,k} for a nonincreasing nonnegative
/// multiindex (zero-based k): -ν_k + 2a(2ℓ(ν_k) + #(ν_k) - k - N) for
/// ν_k > 0 and 2a(N - 1 - k) for ν_k = 0, where ℓ(s) is the first index
/// carrying the value s and #(s) its multiplicity.
pub fn lambda_nu_k(nu: &Multiindex, k: usize) -> Result<APoly, DunklError> {
    let v = nu.components();
    if v.windows(2).any(|w| w[0] < w[1]) || v.last().is_some_and(|&x| x < 0) {
        return Err(DunklError::NotSorted(v.to_vec()));
    }
    let n = v.len() as i64;
    let vk = v[k];
    if vk == 0 {
        return Ok(APoly::linear(2 * (n - 1 - k as i64)));
    }
    let first = v.iter().position(|&x| x == vk).unwrap() as i64;
    let count = v.iter().filter(|&&x| x == vk).count() as i64;
    Ok(APoly::new(
        Rational64::from(-vk),
        Rational64::from(2 * (2 * first + count - k as i64 - n)),
        Rational64::from(0),
    ))
}

/// Expected diagonal of H' at sorted key p: Σ_k (p_k + 2a(N-1-k))².
pub fn ende_poly(key: &[i64]) -> APoly {
    let n = key.len() as i64;
    let mut acc = APoly::zero();
    for (k, &p) in key.iter().enumerate() {
        let lin = APoly::new(Rational64::from(p), Rational64::from(2 * (n - 1 - k as i64)), Rational64::from(0));
        acc = acc.add(&lin.mul(&lin));
    }
    acc
}

/// The assembled and verified H' matrix over a truncation set.
/// `entries[(r, c)]` is the coefficient of basis element c in the image of
/// basis element r, so triangularity reads: every nonzero off-diagonal entry
/// has column key strictly preceding its row key.
#[derive(Debug)]
pub struct OperatorMatrix {
    basis: Vec<Multiindex>,
    entries: BTreeMap<(usize, usize), APoly>,
}

impl OperatorMatrix {
    pub fn basis(&self) -> &[Multiindex] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn entry(&self, row: usize, col: usize) -> APoly {
        self.entries
            .get(&(row, col))
            .copied()
            .unwrap_or_else(APoly::zero)
    }

    pub fn num_entries(&self) -> usize {
        self.entries.len()
    }
}

fn truncation_basis(bound: i64, delta: u8, n: usize) -> Vec<Multiindex> {
    let mut values = Vec::new();
    let mut v = -bound;
    while v <= bound {
        if v.rem_euclid(2) as u8 == delta {
            values.push(v);
        }
        v += 1;
    }
    let mut out: Vec<Vec<i64>> = vec![vec![]];
    for _ in 0..n {
        let mut next = Vec::with_capacity(out.len() * values.len());
        for stem in &out {
            for &val in &values {
                let mut s = stem.clone();
                s.push(val);
                next.push(s);
            }
        }
        out = next;
    }
    let mut basis: Vec<Multiindex> = out
        .into_iter()
        .map(|nu| Multiindex::new(nu).unwrap())
        .collect();
    // total order refining the key order; equal keys broken lexicographically
    basis.sort_by(|a, b| {
        a.sorted_key()
            .cmp(&b.sorted_key())
            .then_with(|| a.components().cmp(b.components()))
    });
    basis
}

/// Assemble H' = Σ_k J_k² over the truncation set {ν : max|ν_i| <= bound,
/// parity delta} and verify the triangular structure: (a) equal-key classes
/// carry no off-diagonal entries, (b) every other off-diagonal entry points
/// strictly down the key order, (c) each diagonal equals the closed form
/// Σ_k([ν]_k + 2a(N-1-k))² as a polynomial identity in a.
pub fn hprime_matrix(bound: i64, delta: u8, n: usize) -> Result<OperatorMatrix, DunklError> {
    let basis = truncation_basis(bound, delta, n);
    let dim = basis.len();
    let index: BTreeMap<Vec<i64>, usize> = basis
        .iter()
        .enumerate()
        .map(|(i, b)| (b.components().to_vec(), i))
        .collect();

    // J_k as indexed sparse rows; the truncation set is closed under the
    // action because output keys never exceed the input key
    let mut jk_rows: Vec<Vec<Vec<(usize, APoly)>>> = Vec::with_capacity(n);
    for k in 0..n {
        let rows: Vec<Result<Vec<(usize, APoly)>, DunklError>> = par::map_collect(dim, |r| {
            let image = dunkl_apply(k, &basis[r]);
            let mut row = Vec::with_capacity(image.len());
            for (target, coeff) in image {
                let Some(&c) = index.get(target.components()) else {
                    return Err(DunklError::TriangularityViolation {
                        from: basis[r].components().to_vec(),
                        to: target.components().to_vec(),
                    });
                };
                row.push((c, coeff));
            }
            Ok(row)
        });
        jk_rows.push(rows.into_iter().collect::<Result<_, _>>()?);
    }

    let row_entries: Vec<Vec<(usize, APoly)>> = par::map_collect(dim, |r| {
        let mut acc: BTreeMap<usize, APoly> = BTreeMap::new();
        for jk in &jk_rows {
            for &(mid, c1) in &jk[r] {
                for &(col, c2) in &jk[mid] {
                    let entry = acc.entry(col).or_insert_with(APoly::zero);
                    *entry = entry.add(&c1.mul(&c2));
                }
            }
        }
        acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
    });

    let mut entries = BTreeMap::new();
    for (r, row) in row_entries.into_iter().enumerate() {
        for (c, coeff) in row {
            if r != c {
                match order_compare(basis[c].components(), basis[r].components()) {
                    KeyOrder::Less => {}
                    KeyOrder::EqualKey => {
                        return Err(DunklError::EqualKeyViolation {
                            row: basis[r].components().to_vec(),
                            col: basis[c].components().to_vec(),
                        });
                    }
                    KeyOrder::Greater => {
                        return Err(DunklError::TriangularityViolation {
                            from: basis[r].components().to_vec(),
                            to: basis[c].components().to_vec(),
                        });
                    }
                }
            }
            entries.insert((r, c), coeff);
        }
    }

    for (r, b) in basis.iter().enumerate() {
        let expected = ende_poly(&b.sorted_key());
        let got = entries
            .get(&(r, r))
            .copied()
            .unwrap_or_else(APoly::zero);
        if got != expected {
            return Err(DunklError::DiagonalMismatch {
                nu: b.components().to_vec(),
                got: got.to_string(),
                expected: expected.to_string(),
            });
        }
    }

    Ok(OperatorMatrix { basis, entries })
}

/// Numerically validate the monomial rule against the gauge-transformed
/// differential-difference operator at random interior points, with `a` a
/// random rational in [1/2, 5] (or a pinned value). Returns the largest
/// relative error over the trials.
pub fn collocation_check(
    k: usize,
    nu: &Multiindex,
    trials: usize,
    seed: u64,
) -> Result<f64, DunklError> {
    collocation_check_at(k, nu, trials, seed, None)
}

pub fn collocation_check_at(
    k: usize,
    nu: &Multiindex,
    trials: usize,
    seed: u64,
    coupling: Option<Rational64>,
) -> Result<f64, DunklError> {
    assert!(trials >= 1);
    let n = nu.len();
    let expansion = dunkl_apply(k, nu);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst: f64 = 0.0;
    for _ in 0..trials {
        let x = sample_interior_point(n, &mut rng);
        let a = coupling.unwrap_or_else(|| random_coupling(&mut rng));
        let af = *a.numer() as f64 / *a.denom() as f64;

        let lhs = gauge_operator_apply(k, nu.components(), &x, af);
        let mut rhs = Complex64::new(0.0, 0.0);
        for (target, coeff) in &expansion {
            rhs += Complex64::from(coeff.eval_f64(af)) * plane_wave(target.components(), &x);
        }
        let err = (lhs - rhs).norm() / lhs.norm().max(rhs.norm()).max(1.0);
        worst = worst.max(err);
    }
    if worst > 1e-8 {
        return Err(DunklError::ToleranceExceeded { error: worst });
    }
    Ok(worst)
}

fn random_coupling(rng: &mut ChaCha8Rng) -> Rational64 {
    let q = rng.gen_range(1i64..=8);
    let p = rng.gen_range((q + 1) / 2..=5 * q);
    Rational64::new(p, q)
}

/// Uniform point in (-π/2, π/2)^N kept at distance >= 0.1 from every
/// hyperplane x_i ± x_j ∈ πZ.
fn sample_interior_point(n: usize, rng: &mut ChaCha8Rng) -> Vec<f64> {
    use std::f64::consts::PI;
    loop {
        let x: Vec<f64> = (0..n)
            .map(|_| rng.gen_range(-FRAC_PI_2_OPEN..FRAC_PI_2_OPEN))
            .collect();
        let mut ok = true;
        'outer: for i in 0..n {
            for j in (i + 1)..n {
                for v in [x[i] - x[j], x[i] + x[j]] {
                    let d = v.rem_euclid(PI);
                    if d.min(PI - d) < 0.1 {
                        ok = false;
                        break 'outer;
                    }
                }
            }
        }
        if ok {
            return x;
        }
    }
}

const FRAC_PI_2_OPEN: f64 = std::f64::consts::FRAC_PI_2 - 1e-9;

fn plane_wave(nu: &[i64], x: &[f64]) -> Complex64 {
    let phase: f64 = nu.iter().zip(x).map(|(&v, &xi)| v as f64 * xi).sum();
    Complex64::new(phase.cos(), phase.sin())
}

/// The gauge-transformed Dunkl operator ρ^{-1} J_k ρ applied to e^{iν·x}:
/// i∂_k plus the logarithmic-derivative drift of ρ, the reflection terms
/// with their cotangent weights, and the -2a Σ_{l<k} K_kl tail.
fn gauge_operator_apply(k: usize, nu: &[i64], x: &[f64], a: f64) -> Complex64 {
    let n = nu.len();
    let i_unit = Complex64::new(0.0, 1.0);
    let f = plane_wave(nu, x);

    // i ∂_k e^{iν·x} = -ν_k e^{iν·x}
    let mut acc = Complex64::from(-(nu[k] as f64)) * f;

    let swapped = |l: usize, negate: bool| -> Complex64 {
        let mut y = x.to_vec();
        y.swap(k, l);
        if negate {
            y[k] = -y[k];
            y[l] = -y[l];
        }
        plane_wave(nu, &y)
    };

    for l in 0..n {
        if l == k {
            continue;
        }
        let cot_m = 1.0 / (x[k] - x[l]).tan();
        let cot_p = 1.0 / (x[k] + x[l]).tan();
        // drift from ∂_k log ρ
        acc += i_unit * a * (cot_m + cot_p) * f;
        // reflection terms
        acc += a * (Complex64::from(1.0) - i_unit * cot_m) * swapped(l, false);
        acc += a * (Complex64::from(1.0) - i_unit * cot_p) * swapped(l, true);
        if l < k {
            acc -= 2.0 * a * swapped(l, false);
        }
    }
    acc
}
