//! Rounding of basic SDP solutions: the exact sign rounder, CMM-style
//! Gaussian rounding, random-threshold rounding for dual-Horn clauses and
//! δ-grid rounding for weighted hyperplane templates, plus the full pipeline.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{invalid, Error, Result};
use crate::instance::{satisfied_fraction, Assignment, Instance, Literal, Mode};
use crate::linalg::dot;
use crate::poly::{separating_hyperplane, weighted_hyperplane_cover, Separation};
use crate::predicate::{k_sat, PredicatePair, Spin};
use crate::reduce::{apply_gadget, at_reduction, to_negform, ReductionTrace};
use crate::sdp::{build_basic_sdp, solve_basic_sdp, SdpSolution};

/// Arity up to which AT polymorphisms are checked before reducing.
pub const POLY_CHECK_ARITY: usize = 7;

/// Default AT grid exponents.
pub const DEFAULT_C1: f64 = 0.2;
pub const DEFAULT_C2: f64 = 0.05;

/// Index reserved for the uniform draw that picks a threshold or δ.
const CHOICE_INDEX: u64 = 1 << 40;

/// Normal and uniform draws addressed by `(seed, trial, index)`, so any
/// single value can be replayed without generating the ones before it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct KeyedGaussian {
    pub seed: u64,
}

impl KeyedGaussian {
    pub fn new(seed: u64) -> Self {
        Self { seed }
    }

    fn words(&self, trial: u64, index: u64) -> (u64, u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(trial);
        rng.set_word_pos(u128::from(index) * 4);
        (rng.next_u64(), rng.next_u64())
    }

    /// Uniform in `[0, 1)`.
    pub fn uniform(&self, trial: u64, index: u64) -> f64 {
        (self.words(trial, index).0 >> 11) as f64 / (1u64 << 53) as f64
    }

    /// Standard normal via Box–Muller.
    pub fn normal(&self, trial: u64, index: u64) -> f64 {
        let (a, b) = self.words(trial, index);
        let u1 = 1.0 - (a >> 11) as f64 / (1u64 << 53) as f64;
        let u2 = (b >> 11) as f64 / (1u64 << 53) as f64;
        (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
    }

    pub fn vector(&self, trial: u64, d: usize) -> Vec<f64> {
        (0..d as u64).map(|i| self.normal(trial, i)).collect()
    }

    /// Uniform pick among `len` options.
    pub fn choose(&self, trial: u64, len: usize) -> usize {
        ((self.uniform(trial, CHOICE_INDEX) * len as f64) as usize).min(len.saturating_sub(1))
    }
}

/// `ε` used by parameter schedules: average error floored at `10·tol`.
pub fn epsilon_schedule(objective: f64, m: usize, tol: f64) -> f64 {
    let avg = if m == 0 { 0.0 } else { objective / m as f64 };
    avg.max(10.0 * tol).min(1.0)
}

/// Signs of `⟨v_i, v0⟩`; near-zero projections are broken by a random hyperplane.
pub fn round_exact_2sat_style(sol: &SdpSolution, seed: u64, trial: u64, tol: f64) -> Assignment {
    let g = KeyedGaussian::new(seed).vector(trial, sol.dimension);
    let values = (0..sol.num_vars())
        .map(|i| {
            let mu = dot(sol.var(i), sol.v0());
            if mu > tol {
                1
            } else if mu < -tol {
                -1
            } else if dot(&g, sol.var(i)) >= 0.0 {
                1
            } else {
                -1
            }
        })
        .collect();
    Assignment::new(values).expect("signs are ±1")
}

#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct CmmParams {
    pub gamma: f64,
    pub seed: u64,
    pub trial: u64,
}

impl CmmParams {
    /// `γ = ε^{2/3}`.
    pub fn from_epsilon(eps: f64, seed: u64, trial: u64) -> Result<Self> {
        Self::new(eps.powf(2.0 / 3.0), seed, trial)
    }

    pub fn new(gamma: f64, seed: u64, trial: u64) -> Result<Self> {
        if !(gamma > 0.0 && gamma <= 1.0) {
            return invalid(format!("gamma {gamma} outside (0, 1]"));
        }
        Ok(Self { gamma, seed, trial })
    }
}

/// `+1` iff `ζ_i ≥ -μ_i/γ`, with `ζ_i = ⟨g, v_i⟩` for a standard Gaussian
/// `g`, so that `ζ ~ N(0, Σ)`.
pub fn round_cmm(sol: &SdpSolution, params: &CmmParams) -> Assignment {
    let g = KeyedGaussian::new(params.seed).vector(params.trial, sol.dimension);
    let values = (0..sol.num_vars())
        .map(|i| {
            let zeta = dot(&g, sol.var(i));
            let mu = dot(sol.var(i), sol.v0());
            if zeta >= -mu / params.gamma {
                1
            } else {
                -1
            }
        })
        .collect();
    Assignment::new(values).expect("signs are ±1")
}

#[derive(Clone, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct ThresholdParams {
    pub thresholds: Vec<f64>,
    pub seed: u64,
    pub trial: u64,
}

/// Geometric grid from `√ε` up to `1/K` whose ratio is the smallest value
/// `≥ K` that lands exactly on both endpoints.
pub fn threshold_grid(eps: f64, max_arity: usize) -> Vec<f64> {
    let k = max_arity.max(2) as f64;
    let lo = eps.sqrt();
    let hi = 1.0 / k;
    if lo >= hi {
        return vec![hi];
    }
    let steps = ((hi / lo).ln() / k.ln()).floor() as i32;
    if steps == 0 {
        return vec![lo];
    }
    let ratio = (hi / lo).powf(1.0 / f64::from(steps));
    let mut grid: Vec<f64> = (0..steps).map(|j| lo * ratio.powi(j)).collect();
    grid.push(hi);
    grid
}

impl ThresholdParams {
    pub fn from_epsilon(eps: f64, max_arity: usize, seed: u64, trial: u64) -> Self {
        Self { thresholds: threshold_grid(eps, max_arity), seed, trial }
    }
}

/// Checks that every pair is a clause pair `(P, k-SAT)` and every
/// constraint has at most one negated variable.
pub fn check_dual_horn(inst: &Instance) -> Result<()> {
    for (pi, pair) in inst.template().pairs().iter().enumerate() {
        if *pair.weak() != k_sat(pair.arity()) {
            return Err(Error::Shape(format!("pair {} is not a clause pair", pi + 1)));
        }
    }
    for (j, c) in inst.constraints().iter().enumerate() {
        let neg = c.literals.iter().filter(|l| matches!(l, Literal::Var { sign: -1, .. })).count();
        if neg > 1 {
            return Err(Error::Shape(format!("constraint {} has {neg} negated literals", j + 1)));
        }
    }
    Ok(())
}

/// `+1` iff `μ_i ≥ t - 1` for a threshold `t` drawn uniformly from the grid.
pub fn round_threshold(inst: &Instance, sol: &SdpSolution, params: &ThresholdParams) -> Result<Assignment> {
    check_dual_horn(inst)?;
    if params.thresholds.is_empty() {
        return invalid("empty threshold grid");
    }
    let pick = KeyedGaussian::new(params.seed).choose(params.trial, params.thresholds.len());
    let t = params.thresholds[pick];
    let values = (0..sol.num_vars())
        .map(|i| if dot(sol.var(i), sol.v0()) >= t - 1.0 { 1 } else { -1 })
        .collect();
    Ok(Assignment::new(values).expect("signs are ±1"))
}

#[derive(Clone, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct AtParams {
    pub c1: f64,
    pub c2: f64,
    pub grid: Vec<f64>,
    pub seed: u64,
    pub trial: u64,
}

/// `{p, rp, …, r^κ p}` with `p = ε^{c1}`, `r^κ p = ε^{c2}` and
/// `κ ≈ log(1/ε)/loglog(1/ε)`.
pub fn at_grid(eps: f64, c1: f64, c2: f64) -> Vec<f64> {
    let l = (1.0 / eps).ln();
    let kappa = if l <= 1.0 { 1 } else { ((l / l.ln().max(1.0)).round() as usize).max(1) };
    let p = eps.powf(c1);
    let last = eps.powf(c2);
    let r = (last / p).powf(1.0 / kappa as f64);
    let mut grid: Vec<f64> = (0..kappa).map(|j| p * r.powi(j as i32)).collect();
    grid.push(last);
    grid
}

impl AtParams {
    pub fn new(eps: f64, c1: f64, c2: f64, seed: u64, trial: u64) -> Result<Self> {
        if !(0.0 < c2 && c2 < c1 && c1 < 0.25) {
            return invalid(format!("need 0 < c2 < c1 < 0.25, got c1 = {c1}, c2 = {c2}"));
        }
        Ok(Self { c1, c2, grid: at_grid(eps, c1, c2), seed, trial })
    }

    pub fn from_epsilon(eps: f64, seed: u64, trial: u64) -> Self {
        Self::new(eps, DEFAULT_C1, DEFAULT_C2, seed, trial).expect("default constants are valid")
    }
}

fn is_pin_pair(pair: &PredicatePair) -> bool {
    pair.arity() == 1 && pair.strong().len() == 1 && pair.strong() == pair.weak()
}

/// Checks that every pair is a unary pin or a weighted hyperplane pair.
pub fn check_hyperplane_template(inst: &Instance) -> Result<()> {
    for (pi, pair) in inst.template().pairs().iter().enumerate() {
        if is_pin_pair(pair) {
            continue;
        }
        let missing: Vec<u32> = pair.weak().missing_codes().collect();
        let mask = pair.weak().cube_size() - 1;
        let shaped = missing.len() == 2 && missing[0] ^ missing[1] == mask && weighted_hyperplane_cover(pair).is_ok();
        if !shaped {
            return Err(Error::Shape(format!("pair {} is not a weighted hyperplane pair", pi + 1)));
        }
    }
    Ok(())
}

/// `-1` iff `⟨ζ, v'_i⟩ ≥ δ α_i |⟨ζ, v0⟩|`, where `v_i = α_i v0 + v'_i`.
pub fn round_at(inst: &Instance, sol: &SdpSolution, params: &AtParams) -> Result<Assignment> {
    check_hyperplane_template(inst)?;
    Ok(round_at_unchecked(sol, params))
}

/// The δ-grid rounder without the template check.
pub fn round_at_unchecked(sol: &SdpSolution, params: &AtParams) -> Assignment {
    let keyed = KeyedGaussian::new(params.seed);
    let zeta = keyed.vector(params.trial, sol.dimension);
    let delta = params.grid[keyed.choose(params.trial, params.grid.len())];
    let v0 = sol.v0();
    let z0 = dot(&zeta, v0);
    let values = (0..sol.num_vars())
        .map(|i| {
            let v = sol.var(i);
            let alpha = dot(v, v0);
            let proj = dot(&zeta, v) - alpha * z0;
            if proj >= delta * alpha * z0.abs() {
                -1
            } else {
                1
            }
        })
        .collect();
    Assignment::new(values).expect("signs are ±1")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Algorithm {
    Auto,
    Cmm,
    Threshold,
    At,
}

/// Parameters of the rounder that produced the reported assignment.
#[derive(Clone, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
#[serde(tag = "rounder", rename_all = "kebab-case")]
pub enum RoundingParameters {
    Exact { tol: f64 },
    Cmm { gamma: f64 },
    Threshold { thresholds: Vec<f64> },
    At { c1: f64, c2: f64, grid: Vec<f64> },
    None,
}

#[derive(Clone, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct RoundingReport {
    pub algorithm: Algorithm,
    pub assignment: Vec<Spin>,
    /// Weakly satisfied constraints of the input instance.
    pub satisfied: u64,
    pub total: u64,
    pub weak_fraction: f64,
    /// Per input constraint: not weakly satisfied.
    pub violated: Vec<bool>,
    pub parameters: RoundingParameters,
    pub sdp_objective: f64,
    pub sdp_constraints: usize,
    pub epsilon: f64,
    pub tol: f64,
    pub seed: u64,
    pub trials: u64,
    pub best_trial: u64,
    /// Weak fraction reached by every trial.
    pub trial_fractions: Vec<f64>,
    pub reduction: ReductionTrace,
}

impl RoundingReport {
    pub fn mean_violated(&self) -> f64 {
        if self.trial_fractions.is_empty() {
            return 0.0;
        }
        1.0 - self.trial_fractions.iter().sum::<f64>() / self.trial_fractions.len() as f64
    }
}

/// True when every pair of a negated-form instance has MAJ of all odd arities,
/// decided exactly by the separating hyperplane test.
pub fn negform_has_majority(inst: &Instance) -> Result<bool> {
    for pair in inst.template().pairs() {
        if matches!(separating_hyperplane(pair.strong())?, Separation::Witness(_)) {
            return Ok(false);
        }
    }
    Ok(true)
}

enum Plan {
    Cmm,
    Threshold,
    At,
}

/// Chooses the reduction for `algo`, returning the instance to relax.
fn plan(inst: &Instance, algo: Algorithm) -> Result<(Plan, Instance, ReductionTrace)> {
    let try_at = || -> Result<(Instance, ReductionTrace)> {
        let red = at_reduction(inst.template(), POLY_CHECK_ARITY)?;
        apply_gadget(inst, &red.gadgets)
    };
    let try_cmm = || -> Result<(Instance, ReductionTrace)> {
        let (neg, trace) = to_negform(inst)?;
        if neg.num_constraints() > 0 && !negform_has_majority(&neg)? {
            return Err(Error::NoAlgorithm("some pair lacks MAJ polymorphisms".into()));
        }
        Ok((neg, trace))
    };
    let try_threshold = || -> Result<(Instance, ReductionTrace)> {
        check_dual_horn(inst).map_err(|e| Error::NoAlgorithm(e.to_string()))?;
        Ok((inst.clone(), ReductionTrace::identity(inst.num_constraints())))
    };
    let lift = |e: Error| match e {
        Error::Cover(x) => Error::NoAlgorithm(format!("no hyperplane cover excludes {x}")),
        Error::FixedCoordinate(_) | Error::Shape(_) => Error::NoAlgorithm(e.to_string()),
        other => other,
    };
    match algo {
        Algorithm::At => try_at().map(|(i, t)| (Plan::At, i, t)).map_err(lift),
        Algorithm::Cmm => try_cmm().map(|(i, t)| (Plan::Cmm, i, t)).map_err(lift),
        Algorithm::Threshold => try_threshold().map(|(i, t)| (Plan::Threshold, i, t)).map_err(lift),
        Algorithm::Auto => {
            if let Ok((i, t)) = try_at() {
                return Ok((Plan::At, i, t));
            }
            if let Ok((i, t)) = try_cmm() {
                return Ok((Plan::Cmm, i, t));
            }
            if let Ok((i, t)) = try_threshold() {
                return Ok((Plan::Threshold, i, t));
            }
            Err(Error::NoAlgorithm("no AT, MAJ or dual-Horn structure found".into()))
        }
    }
}

/// Reduces, solves the basic SDP, rounds `trials` times and keeps the
/// assignment weakly satisfying the most constraints of `inst`.
pub fn robust_solve(inst: &Instance, algo: Algorithm, trials: u64, seed: u64, tol: f64) -> Result<RoundingReport> {
    if trials == 0 {
        return invalid("trials must be at least 1");
    }
    let (plan, reduced, trace) = plan(inst, algo)?;
    let chosen = match plan {
        Plan::Cmm => Algorithm::Cmm,
        Plan::Threshold => Algorithm::Threshold,
        Plan::At => Algorithm::At,
    };
    let n = inst.num_vars();
    let m_red = reduced.num_constraints();
    let (sol, objective) = if m_red == 0 {
        (None, 0.0)
    } else {
        let sol = solve_basic_sdp(&build_basic_sdp(&reduced), tol)?;
        let obj = sol.objective;
        (Some(sol), obj)
    };
    let eps = epsilon_schedule(objective, m_red, tol);
    let exact = matches!(plan, Plan::Cmm) && eps <= 10.0 * tol;

    let mut best: Option<(Assignment, u64, u64)> = None;
    let mut fractions = Vec::with_capacity(trials as usize);
    let mut parameters = RoundingParameters::None;
    for trial in 0..trials {
        let full = match &sol {
            None => Assignment::all(reduced.num_vars(), 1),
            Some(sol) => match plan {
                Plan::Cmm if exact => {
                    parameters = RoundingParameters::Exact { tol: 10.0 * tol };
                    round_exact_2sat_style(sol, seed, trial, 10.0 * tol)
                }
                Plan::Cmm => {
                    let p = CmmParams::from_epsilon(eps, seed, trial)?;
                    parameters = RoundingParameters::Cmm { gamma: p.gamma };
                    round_cmm(sol, &p)
                }
                Plan::Threshold => {
                    let p = ThresholdParams::from_epsilon(eps, reduced.template().max_arity(), seed, trial);
                    let a = round_threshold(&reduced, sol, &p)?;
                    parameters = RoundingParameters::Threshold { thresholds: p.thresholds };
                    a
                }
                Plan::At => {
                    let p = AtParams::from_epsilon(eps, seed, trial);
                    let a = round_at_unchecked(sol, &p);
                    parameters = RoundingParameters::At { c1: p.c1, c2: p.c2, grid: p.grid };
                    a
                }
            },
        };
        let a = Assignment::new(full.values()[..n].to_vec())?;
        let good = inst.satisfied_flags(&a, Mode::Weak).iter().filter(|&&f| f).count() as u64;
        let frac = satisfied_fraction(inst, &a, Mode::Weak);
        fractions.push(*frac.numer() as f64 / *frac.denom() as f64);
        if best.as_ref().is_none_or(|b| good > b.1) {
            best = Some((a, good, trial));
        }
    }
    let (a, good, best_trial) = best.expect("at least one trial");
    let flags = inst.satisfied_flags(&a, Mode::Weak);
    let total = inst.num_constraints() as u64;
    let satisfied = good;
    Ok(RoundingReport {
        algorithm: chosen,
        assignment: a.values().to_vec(),
        satisfied,
        total,
        weak_fraction: if total == 0 { 1.0 } else { satisfied as f64 / total as f64 },
        violated: flags.iter().map(|f| !f).collect(),
        parameters,
        sdp_objective: objective,
        sdp_constraints: m_red,
        epsilon: eps,
        tol,
        seed,
        trials,
        best_trial,
        trial_fractions: fractions,
        reduction: trace,
    })
}
