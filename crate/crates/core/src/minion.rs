//! The SDP minion: families of pairwise orthogonal vectors whose squared
//! norms sum to one, with minors that add up vectors along a map of
//! coordinates.
//!
//! Vectors are finite prefixes of eventually-zero sequences. Shorter
//! vectors are padded with zeros whenever two elements meet.

use faer::Mat;

use crate::error::{invalid, Error, Result};
use crate::gaps;
use crate::instance::{Instance, Literal};
use crate::linalg::{self, dot, norm};
use crate::predicate::{tuple_of, Predicate};
use crate::sdp::SdpSolution;

/// Tolerance for orthogonality and total squared norm.
pub const ELEMENT_TOL: f64 = 1e-9;
/// Largest accepted gap between a variable element and the matching minor
/// of a constraint element.
pub const RELATION_TOL: f64 = 1e-6;

#[derive(Clone, Debug, PartialEq)]
pub struct SdpMinionElement {
    vectors: Vec<Vec<f64>>,
}

/// Validates orthogonality and normalization of `vectors`.
pub fn make_element(vectors: Vec<Vec<f64>>) -> Result<SdpMinionElement> {
    make_element_with(vectors, ELEMENT_TOL)
}

fn make_element_with(vectors: Vec<Vec<f64>>, tol: f64) -> Result<SdpMinionElement> {
    if vectors.is_empty() {
        return invalid("an element needs at least one coordinate");
    }
    let d = vectors.iter().map(Vec::len).max().unwrap_or(0);
    let vectors: Vec<Vec<f64>> = vectors.iter().map(|v| linalg::resized(v, d)).collect();
    if vectors.iter().flatten().any(|x| !x.is_finite()) {
        return invalid("element has a non-finite entry");
    }
    let mut problems = Vec::new();
    for i in 0..vectors.len() {
        for j in 0..i {
            let ip = dot(&vectors[i], &vectors[j]);
            if ip.abs() > tol {
                problems.push(format!("w{}·w{} = {ip:.3e}", j + 1, i + 1));
            }
        }
    }
    let total: f64 = vectors.iter().map(|v| dot(v, v)).sum();
    if (total - 1.0).abs() > tol {
        problems.push(format!("squared norms sum to {total}"));
    }
    if problems.is_empty() {
        Ok(SdpMinionElement { vectors })
    } else {
        invalid(format!("not a minion element: {}", problems.join(", ")))
    }
}

impl SdpMinionElement {
    pub fn arity(&self) -> usize {
        self.vectors.len()
    }

    pub fn vectors(&self) -> &[Vec<f64>] {
        &self.vectors
    }

    pub fn dimension(&self) -> usize {
        self.vectors[0].len()
    }

    /// Largest coordinatewise difference after padding both to a common length.
    pub fn distance(&self, other: &SdpMinionElement) -> f64 {
        if self.arity() != other.arity() {
            return f64::INFINITY;
        }
        let d = self.dimension().max(other.dimension());
        self.vectors
            .iter()
            .zip(&other.vectors)
            .flat_map(|(a, b)| {
                let (a, b) = (linalg::resized(a, d), linalg::resized(b, d));
                (0..d).map(move |i| (a[i] - b[i]).abs())
            })
            .fold(0.0, f64::max)
    }
}

/// A total map `[source] → [target]`, zero-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinorMap {
    target: usize,
    map: Vec<usize>,
}

impl MinorMap {
    pub fn new(target: usize, map: Vec<usize>) -> Result<Self> {
        if let Some(&bad) = map.iter().find(|&&i| i >= target) {
            return invalid(format!("image {bad} outside 0..{target}"));
        }
        Ok(Self { target, map })
    }

    pub fn identity(k: usize) -> Self {
        Self { target: k, map: (0..k).collect() }
    }

    pub fn source(&self) -> usize {
        self.map.len()
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn image(&self, i: usize) -> usize {
        self.map[i]
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &MinorMap) -> Result<MinorMap> {
        if next.source() != self.target {
            return invalid("maps do not compose");
        }
        Ok(MinorMap { target: next.target, map: self.map.iter().map(|&i| next.map[i]).collect() })
    }
}

fn sum_by(e: &SdpMinionElement, pi: &MinorMap) -> Vec<Vec<f64>> {
    let mut out = vec![vec![0.0; e.dimension()]; pi.target()];
    for (j, w) in e.vectors.iter().enumerate() {
        for (o, x) in out[pi.image(j)].iter_mut().zip(w) {
            *o += x;
        }
    }
    out
}

/// `w'_i = Σ_{π(j) = i} w_j`.
pub fn minor(e: &SdpMinionElement, pi: &MinorMap) -> Result<SdpMinionElement> {
    if pi.source() != e.arity() {
        return invalid(format!("map has source arity {} but the element has arity {}", pi.source(), e.arity()));
    }
    // Sums of orthogonal families stay orthogonal; rounding grows with the arity.
    make_element_with(sum_by(e, pi), ELEMENT_TOL * e.arity().max(1) as f64)
}

/// One minor relation checked by [`sdp_solution_to_elements`].
#[derive(Clone, Debug, PartialEq)]
pub struct MinorRelation {
    pub constraint: usize,
    pub position: usize,
    pub map: MinorMap,
    pub residual: f64,
}

/// Minion elements read off a zero-error SDP solution.
#[derive(Clone, Debug, PartialEq)]
pub struct SolutionElements {
    /// Per variable, `((v0 − v_x)/2, (v0 + v_x)/2)`: the `−1` part first.
    pub variables: Vec<SdpMinionElement>,
    /// Per constraint, one vector per tuple code.
    pub constraints: Vec<SdpMinionElement>,
    pub relations: Vec<MinorRelation>,
}

impl SolutionElements {
    pub fn max_residual(&self) -> f64 {
        self.relations.iter().map(|r| r.residual).fold(0.0, f64::max)
    }
}

fn boolean_split(v0: &[f64], v: &[f64]) -> Result<SdpMinionElement> {
    let minus = linalg::scale(&linalg::sub(v0, v), 0.5);
    let plus = linalg::scale(&linalg::add(v0, v), 0.5);
    make_element_with(vec![minus, plus], 1e-7)
}

/// Local distribution supported on `p` refitted to the realized vectors;
/// falls back to the solver's distribution when no exact fit exists.
fn refit_lambda(vectors: &[Vec<f64>], v0: &[f64], lambda: &[f64], p: &Predicate) -> Result<Vec<f64>> {
    let mut refit = lambda.to_vec();
    let normalized: Vec<Vec<f64>> = vectors.iter().map(|v| linalg::scale(v, 1.0 / norm(v))).collect();
    if let Ok(cfg) = gaps::Configuration::new(v0.to_vec(), normalized) {
        if let Some(l) = gaps::check_p_configuration(&cfg, p)? {
            refit = l;
        }
    }
    Ok(refit)
}

/// Turns a zero-error solution into minion elements and checks that every
/// literal's variable element is the matching minor of its constraint's
/// element.
///
/// Constraint vectors start as `√λ(f)` times fresh basis vectors, which
/// reproduces every moment, and are then rotated onto the solution's
/// vectors by the orthogonal map closest to the moment data.
pub fn sdp_solution_to_elements(sol: &SdpSolution, inst: &Instance, tol: f64) -> Result<SolutionElements> {
    let m = inst.num_constraints();
    if sol.objective > tol * m.max(1) as f64 {
        return Err(Error::NonzeroError(sol.objective));
    }
    if sol.num_vars() != inst.num_vars() || sol.lambda.len() != m {
        return Err(Error::Dimension("solution does not belong to this instance".into()));
    }
    let v0 = sol.v0().to_vec();
    let variables = (0..inst.num_vars()).map(|x| boolean_split(&v0, sol.var(x))).collect::<Result<Vec<_>>>()?;

    let mut constraints = Vec::with_capacity(m);
    let mut relations = Vec::new();
    for (j, c) in inst.constraints().iter().enumerate() {
        let k = c.literals.len();
        let size = 1usize << k;
        let dim = sol.dimension.max(size);
        let targets: Vec<Vec<f64>> = c.literals.iter().map(|&l| sol.literal(l)).collect();
        let lambda = refit_lambda(&targets, &v0, &sol.lambda[j], inst.pair_of(c).strong())?;

        let fresh: Vec<Vec<f64>> = (0..size)
            .map(|f| {
                let mut e = vec![0.0; dim];
                e[f] = lambda[f].max(0.0).sqrt();
                e
            })
            .collect();
        let signs: Vec<Vec<i8>> = (0..size as u32).map(|f| tuple_of(f, k)).collect();
        let mut src = vec![fresh.iter().fold(vec![0.0; dim], |acc, z| linalg::add(&acc, z))];
        let mut dst = vec![linalg::resized(&v0, dim)];
        for p in 0..k {
            let s = fresh
                .iter()
                .zip(&signs)
                .fold(vec![0.0; dim], |acc, (z, t)| linalg::add(&acc, &linalg::scale(z, f64::from(t[p]))));
            src.push(s);
            dst.push(linalg::resized(&targets[p], dim));
        }
        let h: Mat<f64> = linalg::procrustes(&src, &dst, dim)?;
        let align = src
            .iter()
            .zip(&dst)
            .map(|(a, b)| norm(&linalg::sub(&linalg::apply(&h, a), b)))
            .fold(0.0, f64::max);
        if align > RELATION_TOL {
            return Err(Error::Alignment(align));
        }
        let element = make_element_with(fresh.iter().map(|z| linalg::apply(&h, z)).collect(), 1e-7)?;

        for (p, &lit) in c.literals.iter().enumerate() {
            // Tuple code f maps to slot 1 when the literal's variable reads +1.
            let (reference, flip) = match lit {
                Literal::Var { var, sign } => (variables[var].clone(), sign < 0),
                Literal::Const(v) => (boolean_split(&v0, &linalg::scale(&v0, f64::from(v)))?, false),
            };
            let map = MinorMap::new(2, signs.iter().map(|t| usize::from((t[p] > 0) != flip)).collect())?;
            let image = make_element_with(sum_by(&element, &map), 1e-6)?;
            let residual = image.distance(&reference);
            if residual > RELATION_TOL {
                return Err(Error::Alignment(residual));
            }
            relations.push(MinorRelation { constraint: j, position: p, map, residual });
        }
        constraints.push(element);
    }
    Ok(SolutionElements { variables, constraints, relations })
}
