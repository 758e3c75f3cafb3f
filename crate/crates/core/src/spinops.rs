//! su(m) spin operator algebra on the m^N product basis and dense assembly
//! of the chain Hamiltonians.
//!
//! Basis convention (frozen; serialized outputs depend on it): a product
//! state is a mixed-radix integer over digits d_0..d_{N-1}, each in [0, m),
//! with the digit of the *last* site varying fastest:
//! packed = Σ_i d_i m^{N-1-i}. Spins are s_i = d_i - (m-1)/2.
//!
//! All three operators are permutations of the basis, so the Hamiltonian is
//! assembled column by column: the identity parts accumulate on the diagonal
//! and every exchange/reversal contributes a single off-diagonal unit per
//! column. Columns are independent, which makes assembly data-parallel and
//! exactly symmetric (entry (r, c) and entry (c, r) accumulate the same
//! floats in the same pair order).

use thiserror::Error;

use crate::lattice::{BcSites, DnSites};

#[derive(Debug, Error)]
pub enum SpinopsError {
    #[error("site index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("m^N = {dim} exceeds the basis guard 2^20")]
    DimensionTooLarge { dim: u128 },
    #[error("invalid spin configuration: {0}")]
    InvalidConfig(String),
    #[error("site count mismatch: sites have N={sites}, config has N={config}")]
    SiteMismatch { sites: usize, config: usize },
    #[error("singular pair coefficient at sites ({i}, {j})")]
    SingularCoefficient { i: usize, j: usize },
}

/// Local dimension m, site count N, and the product dimension m^N.
#[derive(Clone, Debug)]
pub struct SpinConfig {
    m: usize,
    n: usize,
    dim: usize,
    /// stride[i] = m^{N-1-i}
    strides: Vec<usize>,
}

impl SpinConfig {
    pub fn new(m: usize, n: usize) -> Result<Self, SpinopsError> {
        if m < 1 || n < 1 {
            return Err(SpinopsError::InvalidConfig(format!("m={m}, n={n}")));
        }
        let dim = (m as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
        if dim > 1 << 20 {
            return Err(SpinopsError::DimensionTooLarge { dim });
        }
        let dim = dim as usize;
        let mut strides = vec![1usize; n];
        for i in (0..n.saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * m;
        }
        Ok(Self { m, n, dim, strides })
    }

    pub fn m(&self) -> usize {
        self.m
    }
    pub fn n(&self) -> usize {
        self.n
    }
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn digit(&self, state: usize, site: usize) -> usize {
        (state / self.strides[site]) % self.m
    }
}

/// A basis state in the packed mixed-radix encoding.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BasisIndex(pub usize);

/// The elementary spin operators: site exchange, single-site spin reversal,
/// and the twisted exchange (reverse both, then exchange). All site indices
/// are zero-based.
#[derive(Clone, Copy, Debug)]
pub enum SpinOp {
    Exchange(usize, usize),
    Reversal(usize),
    TwistedExchange(usize, usize),
}

fn exchange(cfg: &SpinConfig, state: usize, i: usize, j: usize) -> usize {
    let di = cfg.digit(state, i) as isize;
    let dj = cfg.digit(state, j) as isize;
    (state as isize + (dj - di) * cfg.strides[i] as isize + (di - dj) * cfg.strides[j] as isize)
        as usize
}

fn reversal(cfg: &SpinConfig, state: usize, i: usize) -> usize {
    let d = cfg.digit(state, i) as isize;
    let flipped = cfg.m as isize - 1 - d;
    (state as isize + (flipped - d) * cfg.strides[i] as isize) as usize
}

fn twisted_exchange(cfg: &SpinConfig, state: usize, i: usize, j: usize) -> usize {
    let s = exchange(cfg, state, i, j);
    let s = reversal(cfg, s, i);
    reversal(cfg, s, j)
}

/// Apply a spin operator to a basis state. Every operator is a pure
/// permutation (coefficient +1).
pub fn apply_spin_op(
    op: SpinOp,
    state: BasisIndex,
    cfg: &SpinConfig,
) -> Result<BasisIndex, SpinopsError> {
    let check_pair = |i: usize, j: usize| -> Result<(), SpinopsError> {
        if i >= j || j >= cfg.n {
            return Err(SpinopsError::IndexOutOfRange(format!(
                "pair ({i}, {j}) with N={}",
                cfg.n
            )));
        }
        Ok(())
    };
    if state.0 >= cfg.dim {
        return Err(SpinopsError::IndexOutOfRange(format!(
            "state {} with dim {}",
            state.0, cfg.dim
        )));
    }
    let out = match op {
        SpinOp::Exchange(i, j) => {
            check_pair(i, j)?;
            exchange(cfg, state.0, i, j)
        }
        SpinOp::TwistedExchange(i, j) => {
            check_pair(i, j)?;
            twisted_exchange(cfg, state.0, i, j)
        }
        SpinOp::Reversal(i) => {
            if i >= cfg.n {
                return Err(SpinopsError::IndexOutOfRange(format!(
                    "site {i} with N={}",
                    cfg.n
                )));
            }
            reversal(cfg, state.0, i)
        }
    };
    Ok(BasisIndex(out))
}

/// Global spin reversal Π = S_0 S_1 ... S_{N-1}.
pub fn global_reversal(cfg: &SpinConfig, state: usize) -> usize {
    (0..cfg.n).fold(state, |s, i| reversal(cfg, s, i))
}

/// Dense real symmetric matrix in column-major storage.
#[derive(Clone, Debug)]
pub struct ChainMatrix {
    dim: usize,
    data: Vec<f64>,
}

impl ChainMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![0.0; dim * dim],
        }
    }

    pub fn from_fn(dim: usize, f: impl Fn(usize, usize) -> f64) -> Self {
        let mut m = Self::zeros(dim);
        for c in 0..dim {
            for r in 0..dim {
                m.data[c * dim + r] = f(r, c);
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn entry(&self, row: usize, col: usize) -> f64 {
        self.data[col * self.dim + row]
    }

    pub fn column(&self, col: usize) -> &[f64] {
        &self.data[col * self.dim..(col + 1) * self.dim]
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn trace(&self) -> f64 {
        (0..self.dim).map(|i| self.entry(i, i)).sum()
    }

    pub fn is_symmetric_exact(&self) -> bool {
        for c in 0..self.dim {
            for r in 0..c {
                if self.entry(r, c).to_bits() != self.entry(c, r).to_bits() {
                    return false;
                }
            }
        }
        true
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |acc, v| acc.max(v.abs()))
    }
}

/// 1/sin² u through the combined form 2/(1 - cos 2u), guarded against the
/// singular set.
fn inv_sin_sq(u: f64, i: usize, j: usize) -> Result<f64, SpinopsError> {
    let denom = 1.0 - (2.0 * u).cos();
    if denom.abs() < 1e-12 {
        return Err(SpinopsError::SingularCoefficient { i, j });
    }
    Ok(2.0 / denom)
}

struct PairCoeffs {
    i: usize,
    j: usize,
    /// ½ sin^{-2}(ϑ_i - ϑ_j)
    half_minus: f64,
    /// ½ sin^{-2}(ϑ_i + ϑ_j)
    half_plus: f64,
}

fn pair_coeffs(theta: &[f64]) -> Result<Vec<PairCoeffs>, SpinopsError> {
    let n = theta.len();
    let mut pairs = Vec::with_capacity(n * (n - 1) / 2);
    for i in 0..n {
        for j in (i + 1)..n {
            pairs.push(PairCoeffs {
                i,
                j,
                half_minus: 0.5 * inv_sin_sq(theta[i] - theta[j], i, j)?,
                half_plus: 0.5 * inv_sin_sq(theta[i] + theta[j], i, j)?,
            });
        }
    }
    Ok(pairs)
}

fn assemble_pair_part(cfg: &SpinConfig, pairs: &[PairCoeffs]) -> ChainMatrix {
    let dim = cfg.dim;
    let mut h = ChainMatrix::zeros(dim);
    crate::par::for_each_column(&mut h.data, dim, |c, col| {
        for p in pairs {
            col[c] += p.half_minus + p.half_plus;
            col[exchange(cfg, c, p.i, p.j)] += p.half_minus;
            col[twisted_exchange(cfg, c, p.i, p.j)] += p.half_plus;
        }
    });
    h
}

/// D_N chain Hamiltonian
/// ½ Σ_{i<j} [sin^{-2}ϑ_ij^- (1 + S_ij) + sin^{-2}ϑ_ij^+ (1 + S̃_ij)].
pub fn build_dn_chain(sites: &DnSites, cfg: &SpinConfig) -> Result<ChainMatrix, SpinopsError> {
    if sites.n() != cfg.n {
        return Err(SpinopsError::SiteMismatch {
            sites: sites.n(),
            config: cfg.n,
        });
    }
    let pairs = pair_coeffs(sites.theta())?;
    Ok(assemble_pair_part(cfg, &pairs))
}

/// BC_N chain Hamiltonian: the pair part plus the boundary term
/// ¼ Σ_i (β sin^{-2}θ_i + β' cos^{-2}θ_i)(1 - ε S_i).
pub fn build_bc_chain(
    sites: &BcSites,
    cfg: &SpinConfig,
    epsilon: i8,
) -> Result<ChainMatrix, SpinopsError> {
    if sites.n() != cfg.n {
        return Err(SpinopsError::SiteMismatch {
            sites: sites.n(),
            config: cfg.n,
        });
    }
    let pairs = pair_coeffs(sites.theta())?;
    // sin^{-2}θ = 2/(1-ζ), cos^{-2}θ = 2/(1+ζ)
    let mut boundary = Vec::with_capacity(cfg.n);
    for (i, &z) in sites.zeta().iter().enumerate() {
        if (1.0 - z).abs() < 1e-12 || (1.0 + z).abs() < 1e-12 {
            return Err(SpinopsError::SingularCoefficient { i, j: i });
        }
        let w = 0.25 * (sites.beta() * 2.0 / (1.0 - z) + sites.beta_prime() * 2.0 / (1.0 + z));
        boundary.push(w);
    }
    let eps = f64::from(epsilon.signum());
    let dim = cfg.dim;
    let mut h = assemble_pair_part(cfg, &pairs);
    crate::par::for_each_column(&mut h.data, dim, |c, col| {
        for (i, &w) in boundary.iter().enumerate() {
            col[c] += w;
            col[reversal(cfg, c, i)] -= eps * w;
        }
    });
    Ok(h)
}

/// Max-abs entry of H_BC(β = β' = t) - H_DN - ½N(N-1)[1 - (ε/2)(S_first + S_last)].
/// The subtracted matrix is the boundary impurity that survives the t -> 0
/// limit; with it removed the difference must vanish linearly in t.
pub fn impurity_defect(
    n: usize,
    cfg: &SpinConfig,
    epsilon: i8,
    t: f64,
) -> Result<f64, SpinopsError> {
    impurity_defect_inner(n, cfg, epsilon, t, true)
}

/// Same difference but without subtracting the impurity term; stays O(1).
pub fn impurity_defect_uncorrected(
    n: usize,
    cfg: &SpinConfig,
    epsilon: i8,
    t: f64,
) -> Result<f64, SpinopsError> {
    impurity_defect_inner(n, cfg, epsilon, t, false)
}

fn impurity_defect_inner(
    n: usize,
    cfg: &SpinConfig,
    epsilon: i8,
    t: f64,
    subtract_correction: bool,
) -> Result<f64, SpinopsError> {
    assert!(t > 0.0, "need t > 0");
    let dn = crate::lattice::dn_sites(n).map_err(|e| SpinopsError::InvalidConfig(e.to_string()))?;
    let bc = crate::lattice::bc_sites(n, t, t)
        .map_err(|e| SpinopsError::InvalidConfig(e.to_string()))?;
    let h_dn = build_dn_chain(&dn, cfg)?;
    let h_bc = build_bc_chain(&bc, cfg, epsilon)?;
    let c = 0.5 * (n as f64) * (n as f64 - 1.0);
    let eps = f64::from(epsilon.signum());
    let dim = cfg.dim;
    let mut defect: f64 = 0.0;
    for col in 0..dim {
        for row in 0..dim {
            let mut v = h_bc.entry(row, col) - h_dn.entry(row, col);
            if subtract_correction {
                if row == col {
                    v -= c;
                }
                if row == reversal(cfg, col, 0) {
                    v += eps * c / 2.0;
                }
                if row == reversal(cfg, col, n - 1) {
                    v += eps * c / 2.0;
                }
            }
            defect = defect.max(v.abs());
        }
    }
    Ok(defect)
}
