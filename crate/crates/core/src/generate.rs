//! Random and planted instances.

use rand::seq::{IndexedRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{invalid, Result};
use crate::instance::{Assignment, Constraint, Instance, Literal};
use crate::predicate::{tuple_of, Spin, Template};

/// Which sign patterns literals may take.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LiteralPolicy {
    #[default]
    Any,
    /// At most one negated literal per constraint.
    DualHorn,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PlantedSpec {
    pub num_vars: usize,
    pub num_constraints: usize,
    /// Fraction of constraints the planted assignment violates strongly.
    pub corruption: f64,
    pub seed: u64,
    pub policy: LiteralPolicy,
}

/// Instance whose planted assignment strongly satisfies all but
/// `round(corruption · m)` constraints; those are built so the planted
/// assignment lands outside `P`.
pub fn planted_instance(template: &Template, spec: PlantedSpec) -> Result<(Instance, Assignment)> {
    let n = spec.num_vars;
    if !(0.0..=1.0).contains(&spec.corruption) {
        return invalid("corruption must lie in [0, 1]");
    }
    if template.pairs().iter().any(|p| p.arity() > n) {
        return invalid("arity exceeds the number of variables");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let planted: Vec<Spin> = (0..n).map(|_| if rng.random_bool(0.5) { 1 } else { -1 }).collect();
    let bad = (spec.corruption * spec.num_constraints as f64).round() as usize;
    let mut order: Vec<bool> = (0..spec.num_constraints).map(|j| j < bad).collect();
    order.shuffle(&mut rng);
    let vars: Vec<usize> = (0..n).collect();

    let mut constraints = Vec::with_capacity(spec.num_constraints);
    for corrupt in order {
        let mut attempts = 0;
        loop {
            attempts += 1;
            if attempts > 10_000 {
                return invalid("could not place a constraint with the requested shape");
            }
            let pi = rng.random_range(0..template.pairs().len());
            let pair = template.pair(pi);
            let k = pair.arity();
            let chosen: Vec<usize> = vars.choose_multiple(&mut rng, k).copied().collect();
            let targets: Vec<u32> = if corrupt { pair.strong().missing_codes().collect() } else { pair.strong().codes().collect() };
            let allowed: Vec<Vec<Spin>> = targets
                .iter()
                .map(|&t| {
                    let tt = tuple_of(t, k);
                    chosen.iter().zip(&tt).map(|(&v, &x)| x * planted[v]).collect::<Vec<Spin>>()
                })
                .filter(|signs| spec.policy == LiteralPolicy::Any || signs.iter().filter(|&&s| s < 0).count() <= 1)
                .collect();
            let Some(signs) = allowed.choose(&mut rng) else { continue };
            let literals = chosen.iter().zip(signs).map(|(&var, &sign)| Literal::Var { var, sign }).collect();
            constraints.push(Constraint::new(pi, literals));
            break;
        }
    }
    Ok((Instance::new(template.clone(), n, constraints)?, Assignment::new(planted)?))
}

/// Constraints with uniformly random variables and signs.
pub fn random_instance(template: &Template, n: usize, m: usize, seed: u64) -> Result<Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let vars: Vec<usize> = (0..n).collect();
    let mut constraints = Vec::with_capacity(m);
    for _ in 0..m {
        let pi = rng.random_range(0..template.pairs().len());
        let k = template.pair(pi).arity();
        if k > n {
            return invalid("arity exceeds the number of variables");
        }
        let literals = vars
            .choose_multiple(&mut rng, k)
            .map(|&var| {
                if template.idempotent() && rng.random_bool(0.1) {
                    Literal::Const(if rng.random_bool(0.5) { 1 } else { -1 })
                } else {
                    Literal::Var { var, sign: if rng.random_bool(0.5) { 1 } else { -1 } }
                }
            })
            .collect();
        constraints.push(Constraint::new(pi, literals));
    }
    Instance::new(template.clone(), n, constraints)
}
