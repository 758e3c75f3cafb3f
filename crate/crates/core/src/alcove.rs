//! Geometry of the D_N alcove, the Weyl-invariant extended domain, and the
//! coroot-lattice tiling.
//!
//! The alcove is A = {|x_1| < x_2 < ... < x_N < π - x_{N-1}}; its Weyl orbit
//! is the domain C = {0 < |x_i ± x_j| < π}, the N-dimensional generalization
//! of a rhombic dodecahedron. Translations by π·t with integer t of even sum
//! (the coroot lattice) tile space with copies of the closure of C.

use std::f64::consts::PI;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::par;

const SINGULAR_TOL: f64 = 1e-12;

#[derive(Debug, Error)]
pub enum AlcoveError {
    #[error("point lies on the singular set |x_i ± x_j| ∈ πZ")]
    SingularInput,
    #[error("point lies outside the extended domain")]
    OutsideDomain,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Classification {
    InAlcove,
    InDomainC,
    OnSingularSet,
    Outside,
}

/// Distance from v to the nearest multiple of π.
fn dist_to_pi_lattice(v: f64) -> f64 {
    let d = v.rem_euclid(PI);
    d.min(PI - d)
}

/// Classify a point against the alcove, the extended domain, and the
/// singular set (tolerance 1e-12 on the hyperplane distances).
pub fn classify(x: &[f64]) -> Classification {
    let n = x.len();
    for i in 0..n {
        for j in (i + 1)..n {
            for v in [x[i] - x[j], x[i] + x[j]] {
                if dist_to_pi_lattice(v) <= SINGULAR_TOL {
                    return Classification::OnSingularSet;
                }
            }
        }
    }
    let in_alcove = {
        let mut ok = x[0].abs() < x[1];
        for w in x.windows(2) {
            ok &= w[0] < w[1];
        }
        ok && x[n - 1] < PI - x[n - 2]
    };
    if in_alcove {
        return Classification::InAlcove;
    }
    let in_c = (0..n).all(|i| {
        ((i + 1)..n).all(|j| (x[i] - x[j]).abs() < PI && (x[i] + x[j]).abs() < PI)
    });
    if in_c {
        Classification::InDomainC
    } else {
        Classification::Outside
    }
}

/// An element of the D_N Weyl group: a coordinate permutation composed with
/// sign reversals of an even number of coordinates. Acts as
/// (w·x)_i = signs[i] · x[perm[i]].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylElement {
    perm: Vec<usize>,
    signs: Vec<i8>,
}

impl WeylElement {
    pub fn identity(n: usize) -> Self {
        Self {
            perm: (0..n).collect(),
            signs: vec![1; n],
        }
    }

    pub fn new(perm: Vec<usize>, signs: Vec<i8>) -> Self {
        let w = Self { perm, signs };
        debug_assert!(w.is_even());
        w
    }

    pub fn is_even(&self) -> bool {
        self.signs.iter().filter(|&&s| s < 0).count() % 2 == 0
    }

    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        (0..x.len())
            .map(|i| f64::from(self.signs[i]) * x[self.perm[i]])
            .collect()
    }

    pub fn inverse(&self) -> Self {
        let n = self.perm.len();
        let mut perm = vec![0usize; n];
        let mut signs = vec![1i8; n];
        for i in 0..n {
            perm[self.perm[i]] = i;
            signs[self.perm[i]] = self.signs[i];
        }
        Self { perm, signs }
    }
}

/// Reduce a point of the extended domain to the alcove: returns (w, a) with
/// a in the alcove and w·a = x exactly (the components of a are signed
/// copies of components of x, so the round trip is bit-exact).
pub fn reduce_to_alcove(x: &[f64]) -> Result<(WeylElement, Vec<f64>), AlcoveError> {
    match classify(x) {
        Classification::OnSingularSet => return Err(AlcoveError::SingularInput),
        Classification::Outside => return Err(AlcoveError::OutsideDomain),
        _ => {}
    }
    let n = x.len();
    // carry (value, original index, sign) through the reduction
    let mut items: Vec<(f64, usize, i8)> = x.iter().copied().zip(0..n).map(|(v, i)| (v, i, 1i8)).collect();

    // flip all negatives; if that is an odd count, unflip the smallest |value|
    let mut flips = 0usize;
    for it in items.iter_mut() {
        if it.0 < 0.0 {
            it.0 = -it.0;
            it.2 = -it.2;
            flips += 1;
        }
    }
    if flips % 2 == 1 {
        let k = (0..n)
            .min_by(|&a, &b| items[a].0.partial_cmp(&items[b].0).unwrap())
            .unwrap();
        items[k].0 = -items[k].0;
        items[k].2 = -items[k].2;
    }
    items.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());

    // swap-flip the lowest pair when its sum is negative, then re-sort
    if items[0].0 + items[1].0 < 0.0 {
        let (a, b) = (items[0], items[1]);
        items[0] = (-b.0, b.1, -b.2);
        items[1] = (-a.0, a.1, -a.2);
        items.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    }

    let a: Vec<f64> = items.iter().map(|it| it.0).collect();
    let v = WeylElement {
        perm: items.iter().map(|it| it.1).collect(),
        signs: items.iter().map(|it| it.2).collect(),
    };
    debug_assert!(v.is_even());
    debug_assert_eq!(classify(&a), Classification::InAlcove);
    Ok((v.inverse(), a))
}

/// Reference reduction: search all 2^{N-1} N! Weyl images for the one inside
/// the alcove. Exactly one exists for a nonsingular point of the domain.
pub fn reduce_to_alcove_exhaustive(x: &[f64]) -> Result<(WeylElement, Vec<f64>), AlcoveError> {
    match classify(x) {
        Classification::OnSingularSet => return Err(AlcoveError::SingularInput),
        Classification::Outside => return Err(AlcoveError::OutsideDomain),
        _ => {}
    }
    let n = x.len();
    let mut perms = Vec::new();
    permutations(n, &mut (0..n).collect::<Vec<_>>(), 0, &mut perms);
    let mut hits = Vec::new();
    for perm in &perms {
        for mask in 0..(1usize << n) {
            if (mask.count_ones() % 2) != 0 {
                continue;
            }
            let signs: Vec<i8> = (0..n).map(|i| if mask >> i & 1 == 1 { -1 } else { 1 }).collect();
            let w = WeylElement {
                perm: perm.clone(),
                signs,
            };
            let image = w.apply(x);
            if classify(&image) == Classification::InAlcove {
                hits.push((w, image));
            }
        }
    }
    assert_eq!(hits.len(), 1, "expected exactly one alcove image");
    let (v, a) = hits.pop().unwrap();
    Ok((v.inverse(), a))
}

fn permutations(n: usize, buf: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k == n {
        out.push(buf.clone());
        return;
    }
    for i in k..n {
        buf.swap(k, i);
        permutations(n, buf, k + 1, out);
        buf.swap(k, i);
    }
}

/// Result of folding a point into the closed extended domain.
#[derive(Clone, Debug)]
pub struct FoldResult {
    /// integer vector t with even component sum; x = rep + π t
    pub lattice: Vec<i64>,
    pub rep: Vec<f64>,
    /// set when the representative lies within 1e-12 of a face
    pub boundary: bool,
    /// number of pair translations performed
    pub steps: usize,
}

/// Fold x along the coroot lattice into the closure of the extended domain.
/// Coordinates are first reduced mod 2π (each shift is a product of two
/// generators), then the pair translation -ε'π(e_i + ε e_j) is applied while
/// some |x_i + ε x_j| exceeds π; each such step strictly decreases ‖x‖² by
/// 2π(|x_i + ε x_j| - π), which bounds the loop.
pub fn fold_to_domain(x: &[f64]) -> FoldResult {
    let n = x.len();
    let mut y = x.to_vec();
    let mut t = vec![0i64; n];
    for i in 0..n {
        let k = ((y[i] + PI) / (2.0 * PI)).floor();
        y[i] -= 2.0 * PI * k;
        t[i] += 2 * k as i64;
    }
    let norm0: f64 = y.iter().map(|v| v * v).sum();
    let budget = 10 * n * (1.0 + norm0.sqrt() / PI).powi(2).ceil() as usize + 16;
    let mut steps = 0usize;
    loop {
        // largest pair violation
        let mut best: Option<(usize, usize, f64, f64)> = None;
        for i in 0..n {
            for j in (i + 1)..n {
                for eps in [1.0f64, -1.0] {
                    let v = y[i] + eps * y[j];
                    if v.abs() > PI {
                        let excess = v.abs() - PI;
                        if best.is_none_or(|b| excess > b.3) {
                            best = Some((i, j, eps, excess));
                        }
                    }
                }
            }
        }
        let Some((i, j, eps, _)) = best else { break };
        let epsp = (y[i] + eps * y[j]).signum();
        y[i] -= epsp * PI;
        y[j] -= epsp * eps * PI;
        t[i] += epsp as i64;
        t[j] += (epsp * eps) as i64;
        steps += 1;
        if steps > budget {
            debug_assert!(false, "fold budget exceeded");
            break;
        }
    }
    let mut boundary = false;
    for i in 0..n {
        for j in (i + 1)..n {
            for v in [y[i] - y[j], y[i] + y[j]] {
                if v.abs() <= SINGULAR_TOL || (v.abs() - PI).abs() <= SINGULAR_TOL {
                    boundary = true;
                }
            }
        }
    }
    debug_assert_eq!(t.iter().sum::<i64>() % 2, 0);
    FoldResult {
        lattice: t,
        rep: y,
        boundary,
        steps,
    }
}

/// Whether e^{iν·x} is invariant under the coroot translation group: true
/// iff all components of ν share parity. On success the invariance is spot
/// checked numerically at random (point, generator) pairs; on failure a
/// violating generator (i, j, ε) is returned.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Periodicity {
    Periodic,
    Aperiodic { witness: (usize, usize, i8) },
}

pub fn periodic_exponent(nu: &[i64]) -> Periodicity {
    let n = nu.len();
    if n < 2 {
        return Periodicity::Periodic;
    }
    for i in 0..n {
        for j in (i + 1)..n {
            for eps in [1i64, -1] {
                if (nu[i] + eps * nu[j]).rem_euclid(2) != 0 {
                    return Periodicity::Aperiodic {
                        witness: (i, j, eps as i8),
                    };
                }
            }
        }
    }
    // numeric spot check of the invariance
    let mut rng = ChaCha8Rng::seed_from_u64(0x9e3779b9);
    for _ in 0..8 {
        let x: Vec<f64> = (0..n).map(|_| rng.gen_range(-PI..PI)).collect();
        let i = rng.gen_range(0..n);
        let j = (i + 1 + rng.gen_range(0..n - 1)) % n;
        let (i, j) = (i.min(j), i.max(j));
        let eps = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
        let epsp = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
        let mut shifted = x.clone();
        shifted[i] += epsp * PI;
        shifted[j] += epsp * eps * PI;
        let phase = |y: &[f64]| {
            let p: f64 = nu.iter().zip(y).map(|(&v, &c)| v as f64 * c).sum();
            (p.cos(), p.sin())
        };
        let (c0, s0) = phase(&x);
        let (c1, s1) = phase(&shifted);
        debug_assert!(
            ((c0 - c1).abs() + (s0 - s1).abs()) < 1e-10,
            "invariance check failed for uniform-parity exponent"
        );
    }
    Periodicity::Periodic
}

/// Counters from a tiling Monte Carlo run.
#[derive(Clone, Copy, Debug, Default)]
pub struct TilingReport {
    pub samples: usize,
    pub interior: usize,
    pub boundary: usize,
    pub failures: usize,
    pub max_steps: usize,
}

impl TilingReport {
    fn merge(mut self, other: Self) -> Self {
        self.samples += other.samples;
        self.interior += other.interior;
        self.boundary += other.boundary;
        self.failures += other.failures;
        self.max_steps = self.max_steps.max(other.max_steps);
        self
    }
}

fn in_closed_domain(y: &[f64], tol: f64) -> bool {
    let n = y.len();
    (0..n).all(|i| {
        ((i + 1)..n).all(|j| (y[i] - y[j]).abs() <= PI + tol && (y[i] + y[j]).abs() <= PI + tol)
    })
}

/// Monte Carlo verification of the tiling: every uniform point of
/// [-2π, 2π]^N folds to a representative in the closed domain, the lattice
/// equivalence is an even-sum integer vector, and interior representatives
/// are unique (all 2N(N-1) neighbouring coroot translates leave the domain).
pub fn tiling_check(n: usize, samples: usize, seed: u64) -> TilingReport {
    const STREAMS: usize = 64;
    let per_stream = samples.div_ceil(STREAMS);
    let streams: Vec<usize> = (0..STREAMS).collect();
    par::map_reduce(
        &streams,
        TilingReport::default,
        |&stream| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(stream as u64);
            let mut report = TilingReport::default();
            let todo = per_stream.min(samples.saturating_sub(stream * per_stream));
            for _ in 0..todo {
                let x: Vec<f64> = (0..n).map(|_| rng.gen_range(-2.0 * PI..2.0 * PI)).collect();
                report.samples += 1;
                let fold = fold_to_domain(&x);
                report.max_steps = report.max_steps.max(fold.steps);
                let mut ok = in_closed_domain(&fold.rep, SINGULAR_TOL);
                // equivalence: x - rep = π t with the returned integer vector
                ok &= fold
                    .lattice
                    .iter()
                    .zip(x.iter().zip(&fold.rep))
                    .all(|(&ti, (&xi, &ri))| (xi - ri - PI * ti as f64).abs() < 1e-9);
                ok &= fold.lattice.iter().sum::<i64>() % 2 == 0;
                if ok && !fold.boundary {
                    // uniqueness for interior points
                    'outer: for i in 0..n {
                        for j in (i + 1)..n {
                            for (eps, epsp) in [(1.0, 1.0), (1.0, -1.0), (-1.0, 1.0), (-1.0, -1.0)] {
                                let mut y = fold.rep.clone();
                                y[i] += epsp * PI;
                                y[j] += epsp * eps * PI;
                                if in_closed_domain(&y, -SINGULAR_TOL) {
                                    ok = false;
                                    break 'outer;
                                }
                            }
                        }
                    }
                }
                if !ok {
                    report.failures += 1;
                } else if fold.boundary {
                    report.boundary += 1;
                } else {
                    report.interior += 1;
                }
            }
            report
        },
        TilingReport::merge,
    )
}

/// Monte Carlo check that same-parity Fourier exponents are orthogonal over
/// the extended domain: returns (|sample mean|, standard error) for the pair
/// (ν, ν'). Statistical, so callers should allow ~5 standard errors.
pub fn fourier_orthogonality_mc(
    nu: &[i64],
    nu_prime: &[i64],
    samples: usize,
    seed: u64,
) -> (f64, f64) {
    let n = nu.len();
    let diff: Vec<i64> = nu.iter().zip(nu_prime).map(|(a, b)| a - b).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sum_re = 0.0;
    let mut sum_im = 0.0;
    let mut sum_re2 = 0.0;
    let mut sum_im2 = 0.0;
    let mut accepted = 0usize;
    while accepted < samples {
        let x: Vec<f64> = (0..n).map(|_| rng.gen_range(-PI..PI)).collect();
        if !matches!(
            classify(&x),
            Classification::InAlcove | Classification::InDomainC
        ) {
            continue;
        }
        accepted += 1;
        let phase: f64 = diff.iter().zip(&x).map(|(&v, &c)| v as f64 * c).sum();
        let (s, c) = phase.sin_cos();
        sum_re += c;
        sum_im += s;
        sum_re2 += c * c;
        sum_im2 += s * s;
    }
    let m = samples as f64;
    let mean_re = sum_re / m;
    let mean_im = sum_im / m;
    let var = (sum_re2 / m - mean_re * mean_re) + (sum_im2 / m - mean_im * mean_im);
    let mean_abs = mean_re.hypot(mean_im);
    (mean_abs, (var / m).sqrt())
}

/// Vertices and quad faces of the three-dimensional extended domain, the
/// rhombic dodecahedron {|x_i ± x_j| <= π}: six vertices of type π(±e_i)
/// and eight of type (π/2)(±1, ±1, ±1); one rhombic face per constraint
/// x_i + ε x_j = ε'π.
pub fn rhombic_dodecahedron() -> (Vec<[f64; 3]>, Vec<[usize; 4]>) {
    let mut vertices: Vec<[f64; 3]> = Vec::new();
    for axis in 0..3 {
        for sign in [1.0f64, -1.0] {
            let mut v = [0.0; 3];
            v[axis] = sign * PI;
            vertices.push(v);
        }
    }
    for sx in [1.0f64, -1.0] {
        for sy in [1.0f64, -1.0] {
            for sz in [1.0f64, -1.0] {
                vertices.push([sx * PI / 2.0, sy * PI / 2.0, sz * PI / 2.0]);
            }
        }
    }
    let mut faces = Vec::new();
    for i in 0..3usize {
        for j in (i + 1)..3 {
            for eps in [1.0f64, -1.0] {
                for epsp in [1.0f64, -1.0] {
                    let mut on_face: Vec<usize> = (0..vertices.len())
                        .filter(|&v| {
                            (vertices[v][i] + eps * vertices[v][j] - epsp * PI).abs() < 1e-9
                        })
                        .collect();
                    assert_eq!(on_face.len(), 4);
                    // order the quad by angle around the face centroid
                    let center = on_face.iter().fold([0.0f64; 3], |mut acc, &v| {
                        for (a, b) in acc.iter_mut().zip(vertices[v]) {
                            *a += b / 4.0;
                        }
                        acc
                    });
                    let k = 3 - i - j;
                    on_face.sort_by(|&a, &b| {
                        let ang = |v: usize| {
                            let d: Vec<f64> =
                                (0..3).map(|c| vertices[v][c] - center[c]).collect();
                            // coordinates in the face plane: the free axis and
                            // the in-plane combination of axes i and j
                            d[k].atan2(d[i] - eps * d[j])
                        };
                        ang(a).partial_cmp(&ang(b)).unwrap()
                    });
                    faces.push([on_face[0], on_face[1], on_face[2], on_face[3]]);
                }
            }
        }
    }
    (vertices, faces)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::Rng;

    #[test]
    fn classify_examples() {
        assert_eq!(
            classify(&[PI / 10.0, PI / 5.0, 3.0 * PI / 10.0]),
            Classification::InAlcove
        );
        assert_eq!(
            classify(&[PI / 5.0, PI / 10.0, 3.0 * PI / 10.0]),
            Classification::InDomainC
        );
        assert_eq!(
            classify(&[PI / 4.0, PI / 4.0, PI / 2.0]),
            Classification::OnSingularSet
        );
        assert_eq!(classify(&[3.0, 3.3, 0.1]), Classification::Outside);
    }

    #[test]
    fn bc_subdomain_is_contained() {
        // points of the open hypercube (-π/2, π/2)^N off the singular set
        // always classify inside the extended domain
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..200 {
            let x: Vec<f64> = (0..4).map(|_| rng.gen_range(-PI / 2.0..PI / 2.0)).collect();
            let c = classify(&x);
            assert!(
                matches!(
                    c,
                    Classification::InAlcove
                        | Classification::InDomainC
                        | Classification::OnSingularSet
                ),
                "{x:?} -> {c:?}"
            );
        }
    }

    #[test]
    fn reduce_traced_example() {
        let x = [-0.4 * PI, 0.1 * PI, 0.2 * PI];
        let (w, a) = reduce_to_alcove(&x).unwrap();
        let expect = [-0.1 * PI, 0.2 * PI, 0.4 * PI];
        for (got, want) in a.iter().zip(expect) {
            assert!((got - want).abs() < 1e-15);
        }
        // exact round trip
        assert_eq!(w.apply(&a), x.to_vec());
    }

    #[test]
    fn reduce_identity_on_alcove_points() {
        let x = [PI / 10.0, PI / 5.0, 3.0 * PI / 10.0];
        let (w, a) = reduce_to_alcove(&x).unwrap();
        assert_eq!(a, x.to_vec());
        assert_eq!(w, WeylElement::identity(3));
    }

    #[test]
    fn reduce_rejects_singular_points() {
        assert!(matches!(
            reduce_to_alcove(&[PI / 4.0, PI / 4.0, PI / 2.0]),
            Err(AlcoveError::SingularInput)
        ));
    }

    #[test]
    fn reduce_agrees_with_exhaustive_search() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in [3usize, 4] {
            let mut done = 0;
            while done < 200 {
                let x: Vec<f64> = (0..n).map(|_| rng.gen_range(-PI..PI)).collect();
                if !matches!(
                    classify(&x),
                    Classification::InAlcove | Classification::InDomainC
                ) {
                    continue;
                }
                done += 1;
                let (w1, a1) = reduce_to_alcove(&x).unwrap();
                let (w2, a2) = reduce_to_alcove_exhaustive(&x).unwrap();
                assert_eq!(a1, a2);
                assert_eq!(w1, w2);
                assert_eq!(w1.apply(&a1), x);
            }
        }
    }

    #[test]
    fn weyl_elements_preserve_domain_membership() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let n = 4;
        for _ in 0..100 {
            let x: Vec<f64> = (0..n).map(|_| rng.gen_range(-PI..PI)).collect();
            let class = classify(&x);
            if class == Classification::Outside {
                continue;
            }
            // a random even-sign permutation
            let mut perm: Vec<usize> = (0..n).collect();
            for i in (1..n).rev() {
                perm.swap(i, rng.gen_range(0..=i));
            }
            let mut signs: Vec<i8> = (0..n).map(|_| if rng.gen_bool(0.5) { 1 } else { -1 }).collect();
            if signs.iter().filter(|&&s| s < 0).count() % 2 == 1 {
                signs[0] = -signs[0];
            }
            let w = WeylElement::new(perm, signs);
            let y = w.apply(&x);
            let cy = classify(&y);
            let in_c = |c: Classification| {
                matches!(c, Classification::InAlcove | Classification::InDomainC)
            };
            assert_eq!(in_c(class), in_c(cy));
            assert_eq!(
                class == Classification::OnSingularSet,
                cy == Classification::OnSingularSet
            );
        }
    }

    #[test]
    fn fold_examples() {
        // mod-2π step only
        let x = [1.2 * PI, 0.1 * PI, 0.0];
        let f = fold_to_domain(&x);
        assert!((f.rep[0] + 0.8 * PI).abs() < 1e-12);
        assert!((f.rep[1] - 0.1 * PI).abs() < 1e-15);
        assert_eq!(f.lattice, vec![2, 0, 0]);

        // points of C fold to themselves
        let x = [PI / 10.0, PI / 5.0, 3.0 * PI / 10.0];
        let f = fold_to_domain(&x);
        assert_eq!(f.lattice, vec![0, 0, 0]);
        assert_eq!(f.rep, x.to_vec());

        // the origin lies on x_i ± x_j = 0
        let f = fold_to_domain(&[0.0, 0.0, 0.0]);
        assert_eq!(f.rep, vec![0.0, 0.0, 0.0]);
        assert!(f.boundary);
    }

    #[test]
    fn periodicity_parity() {
        assert_eq!(periodic_exponent(&[2, 0, 0]), Periodicity::Periodic);
        assert_eq!(periodic_exponent(&[1, 3, -1]), Periodicity::Periodic);
        match periodic_exponent(&[1, 0, 0]) {
            Periodicity::Aperiodic { witness } => assert_eq!(witness, (0, 1, 1)),
            p => panic!("expected aperiodic, got {p:?}"),
        }
    }

    #[test]
    fn tiling_small_runs() {
        for n in [3usize, 4] {
            let r = tiling_check(n, 3000, 42);
            assert_eq!(r.failures, 0, "N={n}: {r:?}");
            assert_eq!(r.samples, 3000);
            assert!(r.interior > 0);
        }
    }

    #[test]
    fn constructed_boundary_point_counts_as_boundary() {
        // a face point: x_1 + x_2 = π
        let x = [0.7 * PI, 0.3 * PI, 0.1 * PI];
        let f = fold_to_domain(&x);
        assert!(f.boundary);
    }

    #[test]
    fn fourier_orthogonality_statistical() {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        for trial in 0..10 {
            let nu: Vec<i64> = (0..3).map(|_| 2 * rng.gen_range(-3i64..=3)).collect();
            let mut nup = nu.clone();
            while nup == nu {
                nup = (0..3).map(|_| 2 * rng.gen_range(-3i64..=3)).collect();
            }
            let (mean, se) = fourier_orthogonality_mc(&nu, &nup, 20_000, 1000 + trial);
            assert!(mean <= 5.0 * se, "{nu:?} vs {nup:?}: mean {mean}, se {se}");
        }
    }

    // full-power version of the statistical check; ~minutes in debug builds
    #[test]
    #[ignore]
    fn fourier_orthogonality_full() {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        for trial in 0..10 {
            let nu: Vec<i64> = (0..3).map(|_| 2 * rng.gen_range(-3i64..=3)).collect();
            let mut nup = nu.clone();
            while nup == nu {
                nup = (0..3).map(|_| 2 * rng.gen_range(-3i64..=3)).collect();
            }
            let (mean, se) = fourier_orthogonality_mc(&nu, &nup, 1_000_000, 1000 + trial);
            assert!(mean <= 5.0 * se, "{nu:?} vs {nup:?}: mean {mean}, se {se}");
        }
    }

    #[test]
    fn dodecahedron_combinatorics() {
        let (vertices, faces) = rhombic_dodecahedron();
        assert_eq!(vertices.len(), 14);
        assert_eq!(faces.len(), 12);
        // every edge is shared by exactly two faces
        let mut edge_count = std::collections::BTreeMap::new();
        for f in &faces {
            for k in 0..4 {
                let (a, b) = (f[k], f[(k + 1) % 4]);
                *edge_count.entry((a.min(b), a.max(b))).or_insert(0) += 1;
            }
        }
        assert_eq!(edge_count.len(), 24);
        assert!(edge_count.values().all(|&c| c == 2));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn fold_postconditions(coords in proptest::collection::vec(-8.0f64..8.0, 3..6)) {
            let f = fold_to_domain(&coords);
            prop_assert!(in_closed_domain(&f.rep, SINGULAR_TOL));
            prop_assert_eq!(f.lattice.iter().sum::<i64>() % 2, 0);
            for ((&t, &x), &r) in f.lattice.iter().zip(&coords).zip(&f.rep) {
                prop_assert!((x - r - PI * t as f64).abs() < 1e-9);
            }
            // descent bound on the pair-translation loop
            let n = coords.len();
            let norm = coords.iter().map(|v| v * v).sum::<f64>().sqrt();
            let budget = 10 * n * ((1.0 + norm / PI).powi(2).ceil() as usize) + 16;
            prop_assert!(f.steps <= budget, "{} steps, budget {budget}", f.steps);
        }

        #[test]
        fn parity_decides_periodicity(nu in proptest::collection::vec(-6i64..=6, 3..5)) {
            let uniform = nu.iter().all(|v| v.rem_euclid(2) == nu[0].rem_euclid(2));
            let p = periodic_exponent(&nu);
            prop_assert_eq!(uniform, p == Periodicity::Periodic);
        }
    }
}
