//! Instances, assignments, evaluation and the exhaustive oracle.

use num_rational::Ratio;

use crate::error::{invalid, Error, Result};
use crate::predicate::{code_of, PredicatePair, Spin, Template};

/// Default variable cap for exhaustive search.
pub const DEFAULT_BRUTE_CAP: usize = 24;

/// A variable occurrence with a sign, or a constant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Literal {
    /// Zero-based variable index with sign `+1` (plain) or `-1` (negated).
    Var { var: usize, sign: Spin },
    Const(Spin),
}

impl Literal {
    pub fn pos(var: usize) -> Self {
        Literal::Var { var, sign: 1 }
    }

    pub fn neg(var: usize) -> Self {
        Literal::Var { var, sign: -1 }
    }

    pub fn negated(self) -> Self {
        match self {
            Literal::Var { var, sign } => Literal::Var { var, sign: -sign },
            Literal::Const(c) => Literal::Const(-c),
        }
    }

    pub fn value(self, a: &Assignment) -> Spin {
        match self {
            Literal::Var { var, sign } => sign * a.0[var],
            Literal::Const(c) => c,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Constraint {
    pub pair: usize,
    pub literals: Vec<Literal>,
}

impl Constraint {
    pub fn new(pair: usize, literals: Vec<Literal>) -> Self {
        Self { pair, literals }
    }
}

/// A `±1` assignment to the variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Assignment(Vec<Spin>);

impl Assignment {
    pub fn new(values: Vec<Spin>) -> Result<Self> {
        if values.iter().any(|&x| x != 1 && x != -1) {
            return invalid("assignment entries must be -1 or +1");
        }
        Ok(Self(values))
    }

    pub fn all(n: usize, value: Spin) -> Self {
        Self(vec![if value > 0 { 1 } else { -1 }; n])
    }

    /// Assignment read from the low `n` bits of `mask`, variable 0 most significant.
    pub fn from_mask(mask: u64, n: usize) -> Self {
        Self((0..n).map(|i| if (mask >> (n - 1 - i)) & 1 == 1 { 1 } else { -1 }).collect())
    }

    pub fn values(&self) -> &[Spin] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn negated(&self) -> Self {
        Self(self.0.iter().map(|x| -x).collect())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Strong,
    Weak,
}

/// A finite set of constraints over `num_vars` variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Instance {
    template: Template,
    num_vars: usize,
    constraints: Vec<Constraint>,
}

impl Instance {
    pub fn new(template: Template, num_vars: usize, constraints: Vec<Constraint>) -> Result<Self> {
        for (j, c) in constraints.iter().enumerate() {
            let Some(pair) = template.pairs().get(c.pair) else {
                return invalid(format!("constraint {}: pair index {} out of range", j + 1, c.pair + 1));
            };
            if pair.arity() != c.literals.len() {
                return invalid(format!(
                    "constraint {}: {} literals for a pair of arity {}",
                    j + 1,
                    c.literals.len(),
                    pair.arity()
                ));
            }
            for lit in &c.literals {
                match *lit {
                    Literal::Var { var, sign } => {
                        if var >= num_vars {
                            return invalid(format!("constraint {}: variable {} out of range 1..={num_vars}", j + 1, var + 1));
                        }
                        if sign != 1 && sign != -1 {
                            return invalid(format!("constraint {}: bad literal sign", j + 1));
                        }
                    }
                    Literal::Const(v) => {
                        if !template.idempotent() {
                            return invalid(format!("constraint {}: constants need an idempotent template", j + 1));
                        }
                        if v != 1 && v != -1 {
                            return invalid(format!("constraint {}: bad constant", j + 1));
                        }
                    }
                }
            }
        }
        Ok(Self { template, num_vars, constraints })
    }

    pub fn template(&self) -> &Template {
        &self.template
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn num_constraints(&self) -> usize {
        self.constraints.len()
    }

    pub fn pair_of(&self, c: &Constraint) -> &PredicatePair {
        self.template.pair(c.pair)
    }

    /// Same instance with every variable occurrence negated.
    pub fn negate_occurrences(&self) -> Self {
        let constraints = self
            .constraints
            .iter()
            .map(|c| Constraint {
                pair: c.pair,
                literals: c
                    .literals
                    .iter()
                    .map(|l| match *l {
                        Literal::Var { var, sign } => Literal::Var { var, sign: -sign },
                        k => k,
                    })
                    .collect(),
            })
            .collect();
        Self { template: self.template.clone(), num_vars: self.num_vars, constraints }
    }

    /// Per-constraint satisfaction flags.
    pub fn satisfied_flags(&self, a: &Assignment, mode: Mode) -> Vec<bool> {
        self.constraints
            .iter()
            .map(|c| {
                let t = eval_literal_tuple(c, a);
                let pair = self.pair_of(c);
                match mode {
                    Mode::Strong => pair.strong().contains(&t),
                    Mode::Weak => pair.weak().contains(&t),
                }
            })
            .collect()
    }
}

/// Applies the literals of `c` to `a`.
pub fn eval_literal_tuple(c: &Constraint, a: &Assignment) -> Vec<Spin> {
    c.literals.iter().map(|l| l.value(a)).collect()
}

/// Exact fraction of satisfied constraints; `1` for an empty instance.
pub fn satisfied_fraction(inst: &Instance, a: &Assignment, mode: Mode) -> Ratio<u64> {
    let m = inst.num_constraints() as u64;
    if m == 0 {
        return Ratio::from_integer(1);
    }
    let good = inst.satisfied_flags(a, mode).iter().filter(|&&b| b).count() as u64;
    Ratio::new(good, m)
}

/// Exhaustive maximum over all `2^n` assignments. Ties go to the
/// lexicographically smallest assignment with `-1 < +1`.
pub fn brute_force_best(inst: &Instance, mode: Mode, cap: usize) -> Result<(Assignment, Ratio<u64>)> {
    let n = inst.num_vars();
    if n > cap || n > 40 {
        return Err(Error::BruteForceCap { vars: n, cap });
    }
    let m = inst.num_constraints();
    if m == 0 {
        return Ok((Assignment::all(n, -1), Ratio::from_integer(1)));
    }
    // Each literal becomes (shift, xor) so the tuple code is built from mask bits.
    struct Compiled<'a> {
        lits: Vec<(Option<u32>, u32)>,
        table: &'a crate::predicate::Predicate,
    }
    let compiled: Vec<Compiled> = inst
        .constraints()
        .iter()
        .map(|c| {
            let pair = inst.pair_of(c);
            let table = match mode {
                Mode::Strong => pair.strong(),
                Mode::Weak => pair.weak(),
            };
            let lits = c
                .literals
                .iter()
                .map(|l| match *l {
                    Literal::Var { var, sign } => (Some((n - 1 - var) as u32), u32::from(sign < 0)),
                    Literal::Const(v) => (None, u32::from(v > 0)),
                })
                .collect();
            Compiled { lits, table }
        })
        .collect();

    let mut best_mask = 0u64;
    let mut best = 0usize;
    for mask in 0..(1u64 << n) {
        let mut good = 0usize;
        for c in &compiled {
            let mut code = 0u32;
            for &(shift, x) in &c.lits {
                let bit = match shift {
                    Some(s) => ((mask >> s) & 1) as u32 ^ x,
                    None => x,
                };
                code = (code << 1) | bit;
            }
            good += usize::from(c.table.contains_code(code));
        }
        if good > best || mask == 0 {
            best = good;
            best_mask = mask;
            if best == m {
                break;
            }
        }
    }
    Ok((Assignment::from_mask(best_mask, n), Ratio::new(best as u64, m as u64)))
}

/// Code of the evaluated tuple of `c` under `a`.
pub fn eval_code(c: &Constraint, a: &Assignment) -> u32 {
    code_of(&eval_literal_tuple(c, a))
}
