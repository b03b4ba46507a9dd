//! Vector configurations, paths between them, and integrality gap instances.
//!
//! A configuration is a list of unit vectors together with a reference
//! vector `v0`. It is a `P`-configuration when some distribution on `P`
//! reproduces its first moments (`v_i·v0`) and second moments (`v_i·v_j`),
//! which is exactly what a zero-error SDP solution looks like on one
//! constraint.

use faer::linalg::solvers::SolveLstsq;
use faer::Mat;
use num_rational::Ratio;
use num_traits::ToPrimitive;

use crate::error::{invalid, Error, Result};
use crate::format::{parse_instance, serialize_instance};
use crate::instance::{brute_force_best, Constraint, Instance, Literal, Mode};
use crate::linalg::{self, dot, norm};
use crate::predicate::{make_ham, tuple_of, weight_of, Predicate, PredicatePair, Spin, Template, MAX_ARITY};
use crate::sdp::{build_basic_sdp, solve_basic_sdp, SdpSolution};

/// Tolerance for unit norms of stored vectors.
pub const UNIT_TOL: f64 = 1e-9;
/// Moment-matching tolerance of [`check_p_configuration`].
pub const MOMENT_TOL: f64 = 1e-7;
/// Largest accepted orthogonal alignment residual.
pub const ALIGN_TOL: f64 = 1e-7;

/// Ambient dimension used for configuration paths of `k` vectors.
pub fn path_dimension(k: usize) -> usize {
    4 * k + 4
}

#[derive(Clone, Debug, PartialEq)]
pub struct Configuration {
    v0: Vec<f64>,
    vectors: Vec<Vec<f64>>,
}

impl Configuration {
    pub fn new(v0: Vec<f64>, vectors: Vec<Vec<f64>>) -> Result<Self> {
        let d = v0.len();
        if d == 0 {
            return Err(Error::Dimension("empty ambient space".into()));
        }
        for (i, v) in std::iter::once(&v0).chain(&vectors).enumerate() {
            if v.len() != d {
                return Err(Error::Dimension(format!("vector {i} has length {} but v0 has length {d}", v.len())));
            }
            if v.iter().any(|x| !x.is_finite()) {
                return invalid(format!("vector {i} has a non-finite entry"));
            }
            if (norm(v) - 1.0).abs() > UNIT_TOL {
                return invalid(format!("vector {i} has norm {} instead of 1", norm(v)));
            }
        }
        Ok(Self { v0, vectors })
    }

    pub fn v0(&self) -> &[f64] {
        &self.v0
    }

    pub fn vectors(&self) -> &[Vec<f64>] {
        &self.vectors
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn dimension(&self) -> usize {
        self.v0.len()
    }

    pub fn first_moments(&self) -> Vec<f64> {
        self.vectors.iter().map(|v| dot(v, &self.v0)).collect()
    }

    pub fn gram(&self) -> Vec<Vec<f64>> {
        let vs = &self.vectors;
        vs.iter().map(|a| vs.iter().map(|b| dot(a, b)).collect()).collect()
    }

    /// Largest deviation of a pairwise inner product from `alpha`.
    pub fn alpha_deviation(&self, alpha: f64) -> f64 {
        let g = self.gram();
        let mut worst: f64 = 0.0;
        for i in 0..g.len() {
            for j in 0..i {
                worst = worst.max((g[i][j] - alpha).abs());
            }
        }
        worst
    }

    pub fn negated(&self) -> Self {
        Self { v0: self.v0.clone(), vectors: self.vectors.iter().map(|v| linalg::scale(v, -1.0)).collect() }
    }
}

/// Lawson–Hanson non-negative least squares: `min ‖Ax − b‖` over `x ≥ 0`.
fn nnls(a: &Mat<f64>, b: &[f64]) -> Vec<f64> {
    let (m, n) = (a.nrows(), a.ncols());
    let mut x = vec![0.0; n];
    let mut passive = vec![false; n];
    let residual = |x: &[f64]| -> Vec<f64> { (0..m).map(|i| b[i] - (0..n).map(|j| a[(i, j)] * x[j]).sum::<f64>()).collect() };
    let solve_passive = |passive: &[bool]| -> Vec<f64> {
        let cols: Vec<usize> = (0..n).filter(|&j| passive[j]).collect();
        let sub = Mat::from_fn(m, cols.len(), |i, c| a[(i, cols[c])]);
        let rhs = Mat::from_fn(m, 1, |i, _| b[i]);
        let sol = sub.col_piv_qr().solve_lstsq(&rhs);
        let mut z = vec![0.0; n];
        for (c, &j) in cols.iter().enumerate() {
            z[j] = sol[(c, 0)];
        }
        z
    };
    for _ in 0..3 * n + 10 {
        let r = residual(&x);
        let grad: Vec<f64> = (0..n).map(|j| (0..m).map(|i| a[(i, j)] * r[i]).sum()).collect();
        let Some((t, &g)) = grad
            .iter()
            .enumerate()
            .filter(|(j, _)| !passive[*j])
            .max_by(|p, q| p.1.total_cmp(q.1))
        else {
            break;
        };
        if g <= 1e-12 || passive.iter().filter(|&&p| p).count() >= m {
            break;
        }
        passive[t] = true;
        loop {
            let z = solve_passive(&passive);
            if (0..n).filter(|&j| passive[j]).all(|j| z[j] > 0.0) {
                x = z;
                break;
            }
            let mut step: f64 = 1.0;
            for j in (0..n).filter(|&j| passive[j] && z[j] <= 0.0) {
                step = step.min(x[j] / (x[j] - z[j]));
            }
            for j in 0..n {
                x[j] += step * (z[j] - x[j]);
                if passive[j] && x[j] <= 1e-15 {
                    passive[j] = false;
                    x[j] = 0.0;
                }
            }
            if !passive.iter().any(|&p| p) {
                break;
            }
        }
    }
    x
}

/// A distribution on `p` (indexed by tuple code) reproducing the moments of
/// `config`, or `None` when no distribution matches to [`MOMENT_TOL`].
pub fn check_p_configuration(config: &Configuration, p: &Predicate) -> Result<Option<Vec<f64>>> {
    let k = config.len();
    if p.arity() != k {
        return Err(Error::Dimension(format!("predicate arity {} but {k} vectors", p.arity())));
    }
    let mu = config.first_moments();
    let g = config.gram();
    let codes: Vec<u32> = p.codes().collect();
    let tuples: Vec<Vec<Spin>> = codes.iter().map(|&c| tuple_of(c, k)).collect();

    let mut rows: Vec<(Vec<f64>, f64)> = vec![(vec![1.0; codes.len()], 1.0)];
    for i in 0..k {
        rows.push((tuples.iter().map(|t| f64::from(t[i])).collect(), mu[i]));
    }
    for i in 0..k {
        for j in i + 1..k {
            rows.push((tuples.iter().map(|t| f64::from(t[i] * t[j])).collect(), g[i][j]));
        }
    }
    if codes.is_empty() {
        return Ok(None);
    }
    let a = Mat::from_fn(rows.len(), codes.len(), |i, j| rows[i].0[j]);
    let rhs: Vec<f64> = rows.iter().map(|r| r.1).collect();
    let x = nnls(&a, &rhs);
    let worst = rows
        .iter()
        .map(|(coeffs, target)| (dot(coeffs, &x) - target).abs())
        .fold(0.0, f64::max);
    if worst > MOMENT_TOL {
        return Ok(None);
    }
    let mut lambda = vec![0.0; p.cube_size() as usize];
    for (&c, &v) in codes.iter().zip(&x) {
        lambda[c as usize] = v;
    }
    Ok(Some(lambda))
}

/// The five symmetric template families used for hardness.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(tag = "family", rename_all = "lowercase")]
pub enum GapFamily {
    /// `Ham_k{k/2}` against `Q = all ∖ {b}`, `k` even.
    Gamma1 { k: usize },
    /// `Ham_k{l, (k+1)/2}`, `k` odd, `l ≤ (k−1)/2`.
    Gamma2 { k: usize, l: usize },
    /// `Ham_k{l, k}`, `0 < l ≤ (k−1)/2`.
    Gamma3 { k: usize, l: usize },
    /// `Ham_k{l}`, `1 ≤ l ≤ (k−1)/2`.
    Gamma4 { k: usize, l: usize },
    /// `Ham_k{1, k}`.
    Gamma5 { k: usize },
}

/// Closed-form moments of a family's configuration.
#[derive(Clone, Debug, PartialEq)]
pub struct FamilyMoments {
    /// `v_i·v0` per coordinate.
    pub first: Vec<f64>,
    /// Full `k × k` Gram matrix with unit diagonal.
    pub second: Vec<Vec<f64>>,
    /// Common pairwise inner product; for `Gamma4` the common first moment
    /// of coordinates `2..k`.
    pub alpha: f64,
    /// `Gamma4` only: inner product among coordinates `2..k`.
    pub beta: Option<f64>,
    /// `Gamma4` only: that inner product after removing the `v0` component
    /// and renormalizing.
    pub gamma: Option<f64>,
    /// Probability of each Hamming weight; the distribution is uniform
    /// within a weight. Empty for `Gamma4`.
    pub mixture: Vec<(usize, f64)>,
}

fn binom(n: usize, r: usize) -> f64 {
    (0..r).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

impl GapFamily {
    pub fn arity(&self) -> usize {
        match *self {
            GapFamily::Gamma1 { k }
            | GapFamily::Gamma2 { k, .. }
            | GapFamily::Gamma3 { k, .. }
            | GapFamily::Gamma4 { k, .. }
            | GapFamily::Gamma5 { k } => k,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let k = self.arity();
        if k > MAX_ARITY {
            return invalid(format!("arity {k} exceeds {MAX_ARITY}"));
        }
        let ok = match *self {
            GapFamily::Gamma1 { k } => k >= 4 && k % 2 == 0,
            GapFamily::Gamma2 { k, l } => k >= 3 && k % 2 == 1 && 2 * l < k,
            GapFamily::Gamma3 { k, l } => l >= 1 && 2 * l < k,
            GapFamily::Gamma4 { k, l } => k >= 3 && l >= 1 && 2 * l < k,
            GapFamily::Gamma5 { k } => k >= 3,
        };
        if ok { Ok(()) } else { invalid(format!("parameters out of range for {self:?}")) }
    }

    pub fn strong(&self) -> Result<Predicate> {
        self.validate()?;
        match *self {
            GapFamily::Gamma1 { k } => make_ham(k, &[k / 2]),
            GapFamily::Gamma2 { k, l } => make_ham(k, &[l, (k + 1) / 2]),
            GapFamily::Gamma3 { k, l } => make_ham(k, &[l, k]),
            GapFamily::Gamma4 { k, l } => make_ham(k, &[l]),
            GapFamily::Gamma5 { k } => make_ham(k, &[1, k]),
        }
    }

    /// Distribution over tuple codes realizing [`Self::moments`].
    pub fn distribution(&self) -> Result<Vec<f64>> {
        let k = self.arity();
        let m = self.moments()?;
        let mut lambda = vec![0.0; 1 << k];
        if let GapFamily::Gamma4 { .. } = self {
            let p = self.strong()?;
            for first in [1u32, 0] {
                let half: Vec<u32> = p.codes().filter(|c| (c >> (k - 1)) & 1 == first).collect();
                for &c in &half {
                    lambda[c as usize] += 0.5 / half.len() as f64;
                }
            }
            return Ok(lambda);
        }
        for &(w, prob) in &m.mixture {
            let count = binom(k, w);
            for c in (0..1u32 << k).filter(|&c| weight_of(c) == w) {
                lambda[c as usize] += prob / count;
            }
        }
        Ok(lambda)
    }

    pub fn moments(&self) -> Result<FamilyMoments> {
        self.validate()?;
        let k = self.arity();
        let kf = k as f64;
        // Pairwise moment of a uniform tuple of weight t.
        let pair_of_weight = |t: usize| -> f64 {
            let s = 2.0 * t as f64 - kf;
            (s * s - kf) / (kf * (kf - 1.0))
        };
        let symmetric = |mixture: Vec<(usize, f64)>, alpha: f64| -> FamilyMoments {
            let second = (0..k).map(|i| (0..k).map(|j| if i == j { 1.0 } else { alpha }).collect()).collect();
            FamilyMoments { first: vec![0.0; k], second, alpha, beta: None, gamma: None, mixture }
        };
        Ok(match *self {
            GapFamily::Gamma1 { k } => symmetric(vec![(k / 2, 1.0)], -1.0 / (kf - 1.0)),
            GapFamily::Gamma2 { k, l } => {
                let s = 2.0 * l as f64 - kf;
                let mix = vec![(l, 1.0 / (1.0 - s)), ((k + 1) / 2, -s / (1.0 - s))];
                let alpha = mix.iter().map(|&(t, p)| p * pair_of_weight(t)).sum();
                symmetric(mix, alpha)
            }
            GapFamily::Gamma3 { k, l } => {
                let s = 2.0 * l as f64 - kf;
                let mix = vec![(l, kf / (kf - s)), (k, -s / (kf - s))];
                let alpha = mix.iter().map(|&(t, p)| p * pair_of_weight(t)).sum();
                symmetric(mix, alpha)
            }
            GapFamily::Gamma5 { k } => {
                let mix = vec![(1, kf / (2.0 * kf - 2.0)), (k, (kf - 2.0) / (2.0 * kf - 2.0))];
                symmetric(mix, (kf - 3.0) / (kf - 1.0))
            }
            GapFamily::Gamma4 { l, .. } => {
                let s = 2.0 * l as f64 - kf;
                let alpha = s / (kf - 1.0);
                let cross = -1.0 / (kf - 1.0);
                let beta = (s * s - (kf - 2.0)) / ((kf - 1.0) * (kf - 2.0));
                let gamma = (beta - alpha * alpha) / (1.0 - alpha * alpha);
                let mut first = vec![alpha; k];
                first[0] = 0.0;
                let second = (0..k)
                    .map(|i| {
                        (0..k)
                            .map(|j| match (i, j) {
                                _ if i == j => 1.0,
                                (0, _) | (_, 0) => cross,
                                _ => beta,
                            })
                            .collect()
                    })
                    .collect();
                FamilyMoments { first, second, alpha, beta: Some(beta), gamma: Some(gamma), mixture: Vec::new() }
            }
        })
    }

    /// Vectors in `R^d` with `v0 = e_1` realizing the family's moments.
    pub fn configuration(&self, d: usize) -> Result<Configuration> {
        let m = self.moments()?;
        let k = self.arity();
        if d < k + 1 {
            return Err(Error::Dimension(format!("need d ≥ {} for {k} vectors", k + 1)));
        }
        let g = Mat::from_fn(k + 1, k + 1, |i, j| match (i, j) {
            (0, 0) => 1.0,
            (0, j) => m.first[j - 1],
            (i, 0) => m.first[i - 1],
            (i, j) => m.second[i - 1][j - 1],
        });
        let rows = linalg::psd_factor(&g)?;
        let h = linalg::reflect_to_first_axis(&unit(&rows[0]));
        let mut vs: Vec<Vec<f64>> = rows.iter().map(|r| linalg::resized(&unit(&linalg::apply(&h, r)), d)).collect();
        vs[0] = axis(0, d);
        let v0 = vs.remove(0);
        Configuration::new(v0, vs)
    }
}

fn unit(v: &[f64]) -> Vec<f64> {
    let n = norm(v);
    if n > 0.0 { linalg::scale(v, 1.0 / n) } else { v.to_vec() }
}

fn axis(i: usize, d: usize) -> Vec<f64> {
    let mut e = vec![0.0; d];
    e[i] = 1.0;
    e
}

/// `k` unit vectors with pairwise inner product `alpha`, orthogonal to
/// `v0 = e_1`, in `R^d`.
pub fn regular_simplex_vectors(k: usize, alpha: f64, d: usize) -> Result<Configuration> {
    if k == 0 {
        return invalid("need at least one vector");
    }
    if d < k + 1 {
        return Err(Error::Dimension(format!("need d ≥ {} for {k} vectors", k + 1)));
    }
    if k > 1 && alpha < -1.0 / (k as f64 - 1.0) - UNIT_TOL {
        return invalid(format!("alpha {alpha} is below the PSD threshold {}", -1.0 / (k as f64 - 1.0)));
    }
    if alpha > 1.0 {
        return invalid(format!("alpha {alpha} exceeds 1"));
    }
    let g = Mat::from_fn(k, k, |i, j| if i == j { 1.0 } else { alpha });
    let rows = linalg::psd_factor(&g)?;
    let vectors = rows
        .iter()
        .map(|r| {
            let mut v = vec![0.0; d];
            v[1..=k].copy_from_slice(r);
            unit(&v)
        })
        .collect();
    Configuration::new(axis(0, d), vectors)
}

/// One Gram matrix along a [`psd_path`].
#[derive(Clone, Debug, PartialEq)]
pub struct PsdPathStep {
    /// `(k+1) × (k+1)`; the last row and column belong to the target vector.
    pub matrix: Vec<Vec<f64>>,
    /// Base value of the last column as a multiple of the step size.
    pub level: usize,
    /// Number of leading entries of the last column raised by one step.
    pub raised: usize,
}

impl PsdPathStep {
    pub fn min_eigenvalue(&self) -> Result<f64> {
        linalg::min_eigenvalue(&linalg::from_rows(&self.matrix))
    }
}

fn path_matrix(k: usize, alpha: f64, (eps, levels): (f64, usize), level: usize, raised: usize) -> Vec<Vec<f64>> {
    // Values come from integer multiples so neighbouring levels agree bitwise;
    // the top level is exactly alpha.
    let at = |l: usize| if l == levels { alpha } else { l as f64 * eps };
    let (base, high) = (at(level), at(level + 1));
    (0..=k)
        .map(|i| {
            (0..=k)
                .map(|j| match (i, j) {
                    _ if i == j => 1.0,
                    _ if i < k && j < k => alpha,
                    _ => {
                        let p = i.min(j);
                        if p < raised { high } else { base }
                    }
                })
                .collect()
        })
        .collect()
}

/// Step size used by [`psd_path`]: the largest `ε ≤ (1−α)/k` dividing `α`.
pub fn path_step(k: usize, alpha: f64) -> (f64, usize) {
    if alpha <= 0.0 {
        return (0.0, 0);
    }
    let bound = (1.0 - alpha) / k as f64;
    let levels = (alpha / bound - 1e-12).ceil().max(1.0) as usize;
    (alpha / levels as f64, levels)
}

/// Gram matrices walking the last column of an `alpha`-configuration plus
/// an orthogonal unit vector from all zeros to all `alpha`, one entry at a
/// time. The first matrix has an all-zero last column.
pub fn psd_path(k: usize, alpha: f64) -> Result<Vec<PsdPathStep>> {
    if k == 0 {
        return invalid("need at least one vector");
    }
    if !(0.0..1.0).contains(&alpha) {
        return invalid(format!("alpha must lie in [0, 1), got {alpha}"));
    }
    let step = path_step(k, alpha);
    let mut out = vec![PsdPathStep { matrix: path_matrix(k, alpha, step, 0, 0), level: 0, raised: 0 }];
    for level in 0..step.1 {
        for raised in 1..=k {
            out.push(PsdPathStep { matrix: path_matrix(k, alpha, step, level, raised), level, raised });
        }
    }
    for s in &out {
        let lmin = s.min_eigenvalue()?;
        if lmin < -1e-8 {
            return Err(Error::Dimension(format!("path matrix lost PSD (min eigenvalue {lmin:.3e})")));
        }
    }
    Ok(out)
}

/// The single last-column position where two path matrices differ.
fn changed_entry(a: &[Vec<f64>], b: &[Vec<f64>]) -> Result<Option<usize>> {
    let k = a.len() - 1;
    let diffs: Vec<usize> = (0..k).filter(|&i| a[i][k] != b[i][k]).collect();
    for i in 0..k {
        for j in 0..k {
            if a[i][j] != b[i][j] {
                return invalid("path steps may change only the last row and column");
            }
        }
    }
    match diffs.len() {
        0 => Ok(None),
        1 => Ok(Some(diffs[0])),
        _ => invalid("path steps must change exactly one entry"),
    }
}

/// Core of [`realize_path_vectors`] on bare vectors. `anchors` stay fixed
/// and keep their inner products with every other vector.
fn realize_raw(
    path: &[PsdPathStep],
    u: &[Vec<f64>],
    w: &[f64],
    anchors: &[Vec<f64>],
) -> Result<Vec<Vec<Vec<f64>>>> {
    let k = u.len();
    let d = w.len();
    let mut out = vec![u.to_vec()];
    let Some(first) = path.first() else { return Ok(out) };
    if first.matrix.len() != k + 1 {
        return Err(Error::Dimension(format!("path is for {} vectors, configuration has {k}", first.matrix.len() - 1)));
    }
    let mut frame: Vec<Vec<f64>> = u.iter().cloned().chain(std::iter::once(w.to_vec())).chain(anchors.iter().cloned()).collect();
    let size = frame.len();
    for i in 0..=k {
        for j in 0..=k {
            if (dot(&frame[i], &frame[j]) - first.matrix[i][j]).abs() > ALIGN_TOL {
                return invalid("first path matrix does not match the configuration and target vector");
            }
        }
    }
    let anchor_gram: Vec<Vec<f64>> = frame.iter().map(|a| frame.iter().map(|b| dot(a, b)).collect()).collect();
    for t in 1..path.len() {
        let Some(j) = changed_entry(&path[t - 1].matrix, &path[t].matrix)? else {
            out.push(frame[..k].to_vec());
            continue;
        };
        let m = &path[t].matrix;
        let g = Mat::from_fn(size, size, |a, b| if a <= k && b <= k { m[a][b] } else { anchor_gram[a][b] });
        let factor: Vec<Vec<f64>> = linalg::psd_factor(&g)?.iter().map(|r| linalg::resized(r, d)).collect();
        let (src, dst): (Vec<Vec<f64>>, Vec<Vec<f64>>) =
            (0..size).filter(|&i| i != j).map(|i| (factor[i].clone(), frame[i].clone())).unzip();
        let h = linalg::procrustes(&src, &dst, d)?;
        let resid = src
            .iter()
            .zip(&dst)
            .map(|(a, b)| norm(&linalg::sub(&linalg::apply(&h, a), b)))
            .fold(0.0, f64::max);
        if resid > ALIGN_TOL {
            return Err(Error::Alignment(resid));
        }
        frame[j] = unit(&linalg::apply(&h, &factor[j]));
        out.push(frame[..k].to_vec());
    }
    let last = &path[path.len() - 1].matrix;
    let alpha = if k > 1 { last[0][1] } else { last[0][k] };
    if (0..k).all(|i| last[i][k] == alpha) {
        let mut swapped = frame[..k].to_vec();
        swapped[k - 1] = w.to_vec();
        out.push(swapped);
    }
    Ok(out)
}

/// Vectors for every matrix of `path`, starting from `u` with target `w`.
/// Each step re-realizes one vector and leaves the rest untouched. When the
/// path ends with the last column equal to the configuration's inner
/// product, a final configuration with `w` in the last slot is appended.
/// An empty path yields `[u]`.
pub fn realize_path_vectors(path: &[PsdPathStep], u: &Configuration, w: &[f64]) -> Result<Vec<Configuration>> {
    if w.len() != u.dimension() {
        return Err(Error::Dimension("target vector and configuration differ in dimension".into()));
    }
    if (norm(w) - 1.0).abs() > UNIT_TOL {
        return invalid("target vector must be a unit vector");
    }
    if u.vectors().iter().any(|v| dot(v, w).abs() > ALIGN_TOL) {
        return invalid("target vector must be orthogonal to the configuration");
    }
    let anchored = dot(u.v0(), w).abs() <= UNIT_TOL && u.first_moments().iter().all(|m| m.abs() <= UNIT_TOL);
    let anchors = if anchored { vec![u.v0().to_vec()] } else { Vec::new() };
    realize_raw(path, u.vectors(), w, &anchors)?
        .into_iter()
        .map(|vs| Configuration::new(u.v0().to_vec(), vs))
        .collect()
}

/// Path of `alpha`-configurations from `u` to `v`, one vector changed per
/// step. Both must be orthogonal to their shared `v0`, which every
/// intermediate configuration stays orthogonal to as well.
pub fn alpha_path(u: &Configuration, v: &Configuration, alpha: f64) -> Result<Vec<Configuration>> {
    let k = u.len();
    if k == 0 || v.len() != k {
        return invalid("configurations must have the same positive size");
    }
    if u.dimension() != v.dimension() || u.v0() != v.v0() {
        return Err(Error::Dimension("configurations must share v0 and dimension".into()));
    }
    if u.dimension() < path_dimension(k) {
        return Err(Error::Dimension(format!("dimension {} is below {} for {k} vectors", u.dimension(), path_dimension(k))));
    }
    if !(0.0..1.0).contains(&alpha) {
        return invalid(format!("alpha must lie in [0, 1), got {alpha}"));
    }
    for c in [u, v] {
        if c.alpha_deviation(alpha) > MOMENT_TOL {
            return invalid("endpoint is not an alpha-configuration");
        }
        if c.first_moments().iter().any(|m| m.abs() > MOMENT_TOL) {
            return invalid("endpoint is not orthogonal to v0");
        }
    }
    let raw = connect(u.vectors(), v.vectors(), alpha, &[u.v0().to_vec()])?;
    raw.into_iter().map(|vs| Configuration::new(u.v0().to_vec(), vs)).collect()
}

fn same(a: &[Vec<f64>], b: &[Vec<f64>]) -> bool {
    a.iter().zip(b).all(|(x, y)| x.iter().zip(y).all(|(p, q)| (p - q).abs() <= 1e-12))
}

fn connect(u: &[Vec<f64>], v: &[Vec<f64>], alpha: f64, anchors: &[Vec<f64>]) -> Result<Vec<Vec<Vec<f64>>>> {
    let k = u.len();
    let d = u[0].len();
    if same(u, v) {
        return Ok(vec![u.to_vec()]);
    }
    if k == 1 {
        return Ok(vec![u.to_vec(), v.to_vec()]);
    }
    let taken: Vec<Vec<f64>> = u.iter().chain(v).chain(anchors).cloned().collect();
    let Some(w) = linalg::complement_basis(&taken, d).into_iter().next() else {
        return Err(Error::Dimension(format!("no free direction left in dimension {d}")));
    };
    let steps = psd_path(k, alpha)?;
    let to_x = realize_raw(&steps, u, &w, anchors)?;
    let to_y = realize_raw(&steps, v, &w, anchors)?;
    let x = to_x.last().expect("nonempty");
    let y = to_y.last().expect("nonempty");

    // Inner problem: the other k−1 vectors, with the w component removed and
    // renormalized, expressed in coordinates of the complement of w.
    let basis = linalg::complement_basis(std::slice::from_ref(&w), d);
    let scale = (1.0 - alpha * alpha).sqrt();
    let project = |z: &[f64]| -> Vec<f64> {
        let r = linalg::sub(z, &linalg::scale(&w, dot(z, &w)));
        basis.iter().map(|b| dot(b, &r)).collect()
    };
    let lift = |c: &[f64]| -> Vec<f64> {
        let mut z = linalg::scale(&w, alpha);
        for (b, &ci) in basis.iter().zip(c) {
            for (zi, bi) in z.iter_mut().zip(b) {
                *zi += scale * ci * bi;
            }
        }
        z
    };
    let inner_u: Vec<Vec<f64>> = x[..k - 1].iter().map(|z| unit(&project(z))).collect();
    let inner_v: Vec<Vec<f64>> = y[..k - 1].iter().map(|z| unit(&project(z))).collect();
    let inner_anchors: Vec<Vec<f64>> = anchors.iter().map(|a| project(a)).collect();
    let inner = connect(&inner_u, &inner_v, alpha / (1.0 + alpha), &inner_anchors)?;

    let mut path = to_x.clone();
    let mut prev_inner = inner[0].clone();
    let mut prev = x.clone();
    for cfg in &inner[1..] {
        let mut next = prev.clone();
        for p in 0..k - 1 {
            if cfg[p] != prev_inner[p] {
                next[p] = unit(&lift(&cfg[p]));
            }
        }
        path.push(next.clone());
        prev = next;
        prev_inner = cfg.clone();
    }
    // The inner path ends at y's vectors up to rounding; snap to y exactly.
    if let Some(last) = path.last_mut() {
        *last = y.clone();
    }
    path.extend(to_y.iter().rev().skip(1).cloned());
    Ok(path)
}

/// Largest deviation from sharing `k − 1` vectors between consecutive
/// configurations, slot by slot.
pub fn path_step_defect(path: &[Configuration]) -> f64 {
    let mut worst: f64 = 0.0;
    for pair in path.windows(2) {
        let mut diffs: Vec<f64> = pair[0]
            .vectors()
            .iter()
            .zip(pair[1].vectors())
            .map(|(a, b)| norm(&linalg::sub(a, b)))
            .collect();
        diffs.sort_by(f64::total_cmp);
        diffs.pop();
        worst = worst.max(diffs.into_iter().fold(0.0, f64::max));
    }
    worst
}

/// The `Gamma5` gap instance together with the chains it contains.
#[derive(Clone, Debug, PartialEq)]
pub struct Gamma5Gap {
    pub instance: Instance,
    pub k: usize,
    pub b: usize,
    pub chain_length: usize,
    /// Base-variable subsets (zero-based) that received a chain.
    pub subsets: Vec<Vec<usize>>,
    /// Number of `k`-subsets of the base variables.
    pub total_subsets: usize,
}

impl Gamma5Gap {
    pub fn is_restricted(&self) -> bool {
        self.subsets.len() < self.total_subsets
    }

    pub fn describe(&self) -> String {
        let n = self.instance.num_vars();
        if self.is_restricted() {
            format!(
                "Gamma5 k={} b={} L={}: chains for the first {} of {} base {}-subsets in lexicographic order, {n} variables",
                self.k,
                self.b,
                self.chain_length,
                self.subsets.len(),
                self.total_subsets,
                self.k
            )
        } else {
            format!("Gamma5 k={} b={} L={}: all {} base subsets, {n} variables", self.k, self.b, self.chain_length, self.total_subsets)
        }
    }
}

fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// `(Ham_k{1,k}, all ∖ Ham_k{b})`.
pub fn gamma5_template(k: usize, b: usize) -> Result<Template> {
    if k < 3 || k > MAX_ARITY {
        return invalid(format!("k must lie in 3..={MAX_ARITY}"));
    }
    if b > k || b == 1 || b == k {
        return invalid(format!("b must lie in 0..={k} and differ from 1 and {k}"));
    }
    let strong = make_ham(k, &[1, k])?;
    let weak = make_ham(k, &(0..=k).filter(|&w| w != b).collect::<Vec<_>>())?;
    Ok(Template::single(PredicatePair::new(strong, weak)?))
}

/// The explicit `Gamma5` gap with a chain for every `k`-subset of the
/// `2k − 1` base variables.
pub fn build_gamma5_gap(k: usize, b: usize, chain_length: usize) -> Result<Gamma5Gap> {
    build_gamma5_gap_limited(k, b, chain_length, usize::MAX)
}

/// As [`build_gamma5_gap`], but keeps only as many chains (first subsets in
/// lexicographic order) as fit in `max_vars` variables.
pub fn build_gamma5_gap_limited(k: usize, b: usize, chain_length: usize, max_vars: usize) -> Result<Gamma5Gap> {
    let template = gamma5_template(k, b)?;
    if chain_length < k {
        return invalid(format!("chain length {chain_length} must be at least k = {k}"));
    }
    let base = 2 * k - 1;
    let all = k_subsets(base, k);
    let room = max_vars.saturating_sub(base) / chain_length;
    if room == 0 {
        return invalid(format!("not even one chain fits in {max_vars} variables"));
    }
    let subsets: Vec<Vec<usize>> = all.iter().take(room).cloned().collect();
    let mut constraints = Vec::new();
    let mut next = base;
    for s in &subsets {
        let mut seq: Vec<Literal> = s.iter().map(|&i| Literal::pos(i)).collect();
        seq.extend((0..chain_length).map(|i| Literal::pos(next + i)));
        seq.extend(s.iter().map(|&i| Literal::neg(i)));
        next += chain_length;
        for window in seq.windows(k) {
            constraints.push(Constraint::new(0, window.to_vec()));
        }
    }
    let instance = Instance::new(template, next, constraints)?;
    Ok(Gamma5Gap { instance, k, b, chain_length, subsets, total_subsets: all.len() })
}

/// Chain length from a measured configuration path between an
/// `alpha`-configuration and its negation, plus `k` slack.
pub fn gamma5_auto_length(k: usize) -> Result<usize> {
    let alpha = GapFamily::Gamma5 { k }.moments()?.alpha;
    let u = regular_simplex_vectors(k, alpha, path_dimension(k))?;
    let path = alpha_path(&u, &u.negated(), alpha)?;
    Ok(path.len() - 1 + k)
}

/// The two-constraint 3-LIN instance `{(x1,x2,x3), (¬x1,¬x2,¬x3)}`.
pub fn three_lin_gap_instance() -> Instance {
    let t = Template::single(PredicatePair::csp(crate::predicate::three_lin()));
    let lits = vec![Literal::pos(0), Literal::pos(1), Literal::pos(2)];
    let neg = lits.iter().map(|l| l.negated()).collect();
    Instance::new(t, 3, vec![Constraint::new(0, lits), Constraint::new(0, neg)]).expect("valid instance")
}

/// Evidence that an instance has zero SDP error but no weakly satisfying
/// assignment.
#[derive(Clone, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct GapCertificate {
    /// The instance in the text format, so it can be re-verified.
    pub instance: String,
    pub num_vars: usize,
    pub num_constraints: usize,
    pub sdp_objective: f64,
    pub sdp_iterations: usize,
    /// Best weakly satisfied fraction as `numerator / denominator`.
    pub weak_best: (u64, u64),
    pub tol: f64,
    pub verdict: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl GapCertificate {
    pub fn weak_best_fraction(&self) -> f64 {
        self.weak_best.0 as f64 / self.weak_best.1.max(1) as f64
    }

    /// The verdict implied by the stored numbers.
    pub fn recomputed_verdict(&self) -> bool {
        gap_verdict(self.sdp_objective, self.num_constraints, self.tol, self.weak_best)
    }

    /// Re-runs both checks on the embedded instance.
    pub fn reverify(&self, cap: usize) -> Result<GapCertificate> {
        let inst = parse_instance(&self.instance)?;
        let mut fresh = verify_gap(&inst, self.tol, cap)?;
        fresh.note.clone_from(&self.note);
        Ok(fresh)
    }
}

fn gap_verdict(objective: f64, m: usize, tol: f64, weak_best: (u64, u64)) -> bool {
    objective <= tol * (m.max(1) as f64) && weak_best.0 < weak_best.1
}

/// Solves the SDP and brute-forces the weak optimum.
pub fn verify_gap(inst: &Instance, tol: f64, cap: usize) -> Result<GapCertificate> {
    verify_gap_with_solution(inst, tol, cap).map(|(c, _)| c)
}

/// [`verify_gap`] that also hands back the SDP solution.
pub fn verify_gap_with_solution(inst: &Instance, tol: f64, cap: usize) -> Result<(GapCertificate, SdpSolution)> {
    if inst.num_vars() > cap {
        return Err(Error::BruteForceCap { vars: inst.num_vars(), cap });
    }
    let sol = solve_basic_sdp(&build_basic_sdp(inst), tol)?;
    let (_, best) = brute_force_best(inst, Mode::Weak, cap)?;
    let weak_best = ratio_parts(best);
    let m = inst.num_constraints();
    let cert = GapCertificate {
        instance: serialize_instance(inst),
        num_vars: inst.num_vars(),
        num_constraints: m,
        sdp_objective: sol.objective,
        sdp_iterations: sol.iterations,
        weak_best,
        tol,
        verdict: gap_verdict(sol.objective, m, tol, weak_best),
        note: None,
    };
    Ok((cert, sol))
}

fn ratio_parts(r: Ratio<u64>) -> (u64, u64) {
    (*r.numer(), *r.denom())
}

/// `f64` view of an exact fraction.
pub fn ratio_value(r: Ratio<u64>) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}
