//! Instance and template transformations: the negated-form transform,
//! gadget substitution, constant pinning and the AT reduction.

use std::collections::{BTreeMap, HashMap};

use crate::error::{invalid, Error, Result};
use crate::instance::{Constraint, Instance, Literal};
use crate::poly::{check_up_to, weighted_hyperplane_cover, FamilyKind};
use crate::predicate::{k_sat, tuple_of, Predicate, PredicatePair, Spin, Template};

/// Largest `k + l` for which gadgets are checked exhaustively.
pub const GADGET_CHECK_LIMIT: usize = 20;

/// How a transformed instance relates to its source.
#[derive(Clone, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct ReductionTrace {
    /// Bound on the growth of the strongly violated fraction.
    pub completeness_loss: f64,
    /// Bound on the growth of the weakly violated fraction when mapping back.
    pub soundness_loss: f64,
    /// Source constraint of every output constraint; `None` for added pins.
    pub sources: Vec<Option<usize>>,
    pub source_count: usize,
    /// Fraction of source constraints that produced no output constraint.
    pub dropped_fraction: f64,
}

impl ReductionTrace {
    fn from_sources(sources: Vec<Option<usize>>, source_count: usize) -> Self {
        let mut children = vec![0usize; source_count];
        for s in sources.iter().flatten() {
            children[*s] += 1;
        }
        let kept = children.iter().filter(|&&c| c > 0).count();
        let widest = children.iter().copied().max().unwrap_or(0);
        let out = sources.len();
        let completeness_loss = if out == 0 { 1.0 } else { (widest * kept) as f64 / out as f64 };
        let soundness_loss = if source_count == 0 { 1.0 } else { out as f64 / source_count as f64 };
        let dropped = if source_count == 0 { 0.0 } else { (source_count - kept) as f64 / source_count as f64 };
        Self {
            completeness_loss: completeness_loss.max(1.0),
            soundness_loss: soundness_loss.max(1.0),
            sources,
            source_count,
            dropped_fraction: dropped,
        }
    }

    pub fn identity(m: usize) -> Self {
        Self::from_sources((0..m).map(Some).collect(), m)
    }

    /// Trace of applying `self` and then `next`.
    pub fn then(&self, next: &ReductionTrace) -> ReductionTrace {
        ReductionTrace {
            completeness_loss: self.completeness_loss * next.completeness_loss,
            soundness_loss: self.soundness_loss * next.soundness_loss,
            sources: next.sources.iter().map(|s| s.and_then(|s| self.sources[s])).collect(),
            source_count: self.source_count,
            dropped_fraction: 1.0 - (1.0 - self.dropped_fraction) * (1.0 - next.dropped_fraction),
        }
    }
}

/// Splits every constraint into one child per tuple missing from its weak
/// predicate, each with weak predicate `cube \ {(-1,…,-1)}`. Pairs whose
/// weak predicate is the full cube are dropped.
pub fn to_negform(inst: &Instance) -> Result<(Instance, ReductionTrace)> {
    let mut pairs: Vec<PredicatePair> = Vec::new();
    let mut index: HashMap<PredicatePair, usize> = HashMap::new();
    let mut constraints = Vec::new();
    let mut sources = Vec::new();
    for (j, c) in inst.constraints().iter().enumerate() {
        let pair = inst.pair_of(c);
        let k = pair.arity();
        for code in pair.weak().missing_codes() {
            let x = tuple_of(code, k);
            let flip: Vec<Spin> = x.iter().map(|v| -v).collect();
            let child = PredicatePair::new(pair.strong().flip(&flip), k_sat(k))?;
            let next = pairs.len();
            let pi = *index.entry(child.clone()).or_insert(next);
            if pi == next {
                pairs.push(child);
            }
            let literals = c.literals.iter().zip(&x).map(|(&l, &xp)| if xp > 0 { l.negated() } else { l }).collect();
            constraints.push(Constraint::new(pi, literals));
            sources.push(Some(j));
        }
    }
    let template = if pairs.is_empty() {
        // Nothing survives; keep a trivially satisfiable template for the empty instance.
        Template::new(vec![PredicatePair::csp(k_sat(1))], inst.template().idempotent())?
    } else {
        Template::new(pairs, inst.template().idempotent())?
    };
    let out = Instance::new(template, inst.num_vars(), constraints)?;
    Ok((out, ReductionTrace::from_sources(sources, inst.num_constraints())))
}

/// A positive primitive promise definition of `target` by the constraints of
/// `body`, over the `k` target coordinates followed by `aux` auxiliaries.
#[derive(Clone, Debug, PartialEq)]
pub struct Gadget {
    target: PredicatePair,
    aux: usize,
    body: Instance,
}

impl Gadget {
    /// Checks both defining conditions exhaustively: every strong tuple of the
    /// target extends to a strong solution of the body, and every weak solution
    /// of the body restricts to a weak tuple of the target.
    pub fn new(target: PredicatePair, aux: usize, body: Instance) -> Result<Self> {
        let k = target.arity();
        let n = k + aux;
        if body.num_vars() != n {
            return invalid(format!("gadget body has {} variables, expected {n}", body.num_vars()));
        }
        if n > GADGET_CHECK_LIMIT {
            return invalid(format!("gadget over {n} variables exceeds the check limit {GADGET_CHECK_LIMIT}"));
        }
        let compiled: Vec<(Vec<(Option<u32>, u32)>, &Predicate, &Predicate)> = body
            .constraints()
            .iter()
            .map(|c| {
                let pair = body.pair_of(c);
                let lits = c
                    .literals
                    .iter()
                    .map(|l| match *l {
                        Literal::Var { var, sign } => (Some((n - 1 - var) as u32), u32::from(sign < 0)),
                        Literal::Const(v) => (None, u32::from(v > 0)),
                    })
                    .collect();
                (lits, pair.strong(), pair.weak())
            })
            .collect();
        let mut extendable = vec![false; 1usize << k];
        for mask in 0..(1u64 << n) {
            let (mut strong, mut weak) = (true, true);
            for (lits, p, q) in &compiled {
                let mut code = 0u32;
                for &(shift, x) in lits {
                    let bit = match shift {
                        Some(s) => ((mask >> s) & 1) as u32 ^ x,
                        None => x,
                    };
                    code = (code << 1) | bit;
                }
                strong &= p.contains_code(code);
                weak &= q.contains_code(code);
                if !weak {
                    break;
                }
            }
            let head = (mask >> aux) as u32;
            if strong {
                extendable[head as usize] = true;
            }
            if weak && !target.weak().contains_code(head) {
                return Err(Error::Invalid(format!(
                    "gadget admits a weak solution outside the target: {}",
                    crate::predicate::tuple_string(&tuple_of(head, k))
                )));
            }
        }
        if let Some(c) = target.strong().codes().find(|&c| !extendable[c as usize]) {
            return Err(Error::Invalid(format!(
                "strong tuple {} has no strong extension in the gadget",
                crate::predicate::tuple_string(&tuple_of(c, k))
            )));
        }
        Ok(Self { target, aux, body })
    }

    /// The pair defined by itself: one constraint on the target coordinates.
    pub fn identity(pair: &PredicatePair) -> Result<Self> {
        let k = pair.arity();
        let body = Instance::new(
            Template::single(pair.clone()),
            k,
            vec![Constraint::new(0, (0..k).map(Literal::pos).collect())],
        )?;
        Self::new(pair.clone(), 0, body)
    }

    pub fn target(&self) -> &PredicatePair {
        &self.target
    }

    pub fn aux(&self) -> usize {
        self.aux
    }

    pub fn body(&self) -> &Instance {
        &self.body
    }
}

/// Replaces every constraint by a copy of its pair's gadget, with fresh
/// auxiliary variables per constraint. All gadgets must share one body template.
pub fn apply_gadget(inst: &Instance, gadgets: &BTreeMap<usize, Gadget>) -> Result<(Instance, ReductionTrace)> {
    let template = match gadgets.values().next() {
        Some(g) => g.body.template().clone(),
        None => return invalid("no gadgets given"),
    };
    for (pi, pair) in inst.template().pairs().iter().enumerate() {
        let g = gadgets.get(&pi).ok_or_else(|| Error::Invalid(format!("missing gadget for pair {}", pi + 1)))?;
        if g.target != *pair {
            return invalid(format!("gadget for pair {} defines a different pair", pi + 1));
        }
        if *g.body.template() != template {
            return invalid("gadgets use different body templates");
        }
    }
    let mut next_var = inst.num_vars();
    let mut constraints = Vec::new();
    let mut sources = Vec::new();
    for (j, c) in inst.constraints().iter().enumerate() {
        let g = &gadgets[&c.pair];
        let k = g.target.arity();
        let base = next_var;
        next_var += g.aux;
        for gc in g.body.constraints() {
            let literals = gc
                .literals
                .iter()
                .map(|l| match *l {
                    Literal::Var { var, sign } if var < k => match c.literals[var] {
                        Literal::Var { var: v, sign: s } => Literal::Var { var: v, sign: s * sign },
                        Literal::Const(x) => Literal::Const(x * sign),
                    },
                    Literal::Var { var, sign } => Literal::Var { var: base + var - k, sign },
                    konst => konst,
                })
                .collect();
            constraints.push(Constraint::new(gc.pair, literals));
            sources.push(Some(j));
        }
    }
    let out = Instance::new(template, next_var, constraints)?;
    Ok((out, ReductionTrace::from_sources(sources, inst.num_constraints())))
}

/// The unary pair `({+1}, {+1})`.
pub fn pin_pair() -> PredicatePair {
    let plus = Predicate::from_codes(1, [1]).expect("arity 1");
    PredicatePair::new(plus.clone(), plus).expect("equal predicates")
}

/// Replaces constants by literals of one fresh variable pinned to `+1` by an
/// appended unary constraint. The output template is not idempotent.
pub fn pin_constants(inst: &Instance) -> Result<(Instance, ReductionTrace)> {
    let pin = inst.num_vars();
    let mut pairs = inst.template().pairs().to_vec();
    pairs.push(pin_pair());
    let pin_index = pairs.len() - 1;
    let mut constraints: Vec<Constraint> = inst
        .constraints()
        .iter()
        .map(|c| {
            let literals = c
                .literals
                .iter()
                .map(|l| match *l {
                    Literal::Const(x) => Literal::Var { var: pin, sign: x },
                    v => v,
                })
                .collect();
            Constraint::new(c.pair, literals)
        })
        .collect();
    constraints.push(Constraint::new(pin_index, vec![Literal::pos(pin)]));
    let mut sources: Vec<Option<usize>> = (0..inst.num_constraints()).map(Some).collect();
    sources.push(None);
    let out = Instance::new(Template::new(pairs, false)?, pin + 1, constraints)?;
    Ok((out, ReductionTrace::from_sources(sources, inst.num_constraints())))
}

/// Result of reducing a template to weighted hyperplane pairs plus pins.
#[derive(Clone, Debug)]
pub struct AtReduction {
    pub template: Template,
    pub gadgets: BTreeMap<usize, Gadget>,
}

/// Defines every pair of `template` from weighted hyperplane pairs and the
/// unary pin `({+1}, {+1})`. Coordinates fixed by the strong predicate are
/// pinned; the rest are covered by hyperplanes through the strong predicate.
/// Each pair is first checked for AT polymorphisms up to `check_arity`.
pub fn at_reduction(template: &Template, check_arity: usize) -> Result<AtReduction> {
    let mut pairs: Vec<PredicatePair> = Vec::new();
    let mut index: HashMap<PredicatePair, usize> = HashMap::new();
    let mut intern = |p: PredicatePair| -> usize {
        let next = pairs.len();
        let i = *index.entry(p.clone()).or_insert(next);
        if i == next {
            pairs.push(p);
        }
        i
    };

    let mut bodies: Vec<Vec<Constraint>> = Vec::new();
    for (pi, pair) in template.pairs().iter().enumerate() {
        let k = pair.arity();
        let mut body = Vec::new();
        if pair.weak().is_full() {
            bodies.push(body);
            continue;
        }
        if let Some((l, _)) = check_up_to(pair, FamilyKind::At, check_arity)?.into_iter().find(|(_, v)| !v.holds()) {
            return Err(Error::NoAlgorithm(format!("pair {} lacks the AT polymorphism of arity {l}", pi + 1)));
        }
        let pins = pair.strong().fixed_coordinates();
        for &(i, v) in &pins {
            body.push(Constraint::new(intern(pin_pair()), vec![Literal::Var { var: i, sign: v }]));
        }
        let free: Vec<usize> = (0..k).filter(|i| !pins.iter().any(|p| p.0 == *i)).collect();
        if let (Some(p), Some(q)) = (pair.strong().restrict(&pins), pair.weak().restrict(&pins)) {
            if !q.is_full() {
                for hp in weighted_hyperplane_cover(&PredicatePair::new(p, q)?)? {
                    let c = Constraint::new(intern(hp.pair()?), free.iter().map(|&i| Literal::pos(i)).collect());
                    // Distinct excluded tuples can yield the same hyperplane.
                    if !body.contains(&c) {
                        body.push(c);
                    }
                }
            }
        }
        bodies.push(body);
    }
    if pairs.is_empty() {
        pairs.push(pin_pair());
    }
    let out = Template::new(pairs, template.idempotent())?;
    let mut gadgets = BTreeMap::new();
    for (pi, body) in bodies.into_iter().enumerate() {
        let pair = template.pair(pi);
        let inst = Instance::new(out.clone(), pair.arity(), body)?;
        gadgets.insert(pi, Gadget::new(pair.clone(), 0, inst)?);
    }
    Ok(AtReduction { template: out, gadgets })
}
