//! Threshold polymorphisms and the exact LPs behind them.

use std::collections::HashMap;

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::lp::{q, LinearProgram, LpOutcome, Relation, Q};
use crate::predicate::{code_of, tuple_of, tuple_string, Predicate, PredicatePair, Spin};

/// Largest number of combinations a single check may enumerate.
pub const ENUMERATION_BUDGET: u128 = 50_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FamilyKind {
    Maj,
    At,
    Or,
    Parity,
}

/// One member of a threshold family, e.g. `MAJ_5`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub struct ThresholdFamily {
    pub kind: FamilyKind,
    pub arity: usize,
}

impl ThresholdFamily {
    pub fn new(kind: FamilyKind, arity: usize) -> Result<Self> {
        if arity == 0 {
            return Err(Error::Invalid("family arity must be at least 1".into()));
        }
        if kind != FamilyKind::Or && arity % 2 == 0 {
            return Err(Error::Invalid(format!("{kind:?} needs an odd arity, got {arity}")));
        }
        Ok(Self { kind, arity })
    }

    pub fn maj(l: usize) -> Self {
        Self::new(FamilyKind::Maj, l).expect("odd arity")
    }

    pub fn at(l: usize) -> Self {
        Self::new(FamilyKind::At, l).expect("odd arity")
    }

    /// Output on one column given the plain and alternating column sums.
    fn output(&self, sum: i32, alternating: i32) -> Spin {
        let l = self.arity as i32;
        let plus = match self.kind {
            FamilyKind::Maj => sum > 0,
            FamilyKind::At => alternating > 0,
            FamilyKind::Or => sum > -l,
            FamilyKind::Parity => ((sum + l) / 2) % 2 == 1,
        };
        if plus {
            1
        } else {
            -1
        }
    }
}

/// Applies the family coordinatewise to `rows`.
pub fn apply_threshold(fam: ThresholdFamily, rows: &[Vec<Spin>]) -> Result<Vec<Spin>> {
    if rows.len() != fam.arity {
        return Err(Error::Invalid(format!("{} rows for arity {}", rows.len(), fam.arity)));
    }
    let k = rows[0].len();
    if rows.iter().any(|r| r.len() != k) {
        return Err(Error::Invalid("rows have different lengths".into()));
    }
    Ok((0..k)
        .map(|i| {
            let sum: i32 = rows.iter().map(|r| i32::from(r[i])).sum();
            let alt: i32 = rows.iter().enumerate().map(|(j, r)| if j % 2 == 0 { i32::from(r[i]) } else { -i32::from(r[i]) }).sum();
            fam.output(sum, alt)
        })
        .collect())
}

/// Rows fed to a family together with the output that escaped `Q`.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct Counterexample {
    pub rows: Vec<Vec<Spin>>,
    pub output: Vec<Spin>,
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(tag = "verdict", rename_all = "lowercase")]
pub enum Verdict {
    Holds,
    Fails(Counterexample),
}

impl Verdict {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }
}

/// Column-sum vectors of all size-`t` multisets of `codes`, each with the
/// lexicographically smallest multiset (as sorted code list) reaching it.
fn multiset_sums(codes: &[u32], k: usize, t: usize, budget: u128) -> Result<Vec<(Vec<i32>, Vec<u32>)>> {
    let tuples: Vec<Vec<Spin>> = codes.iter().map(|&c| tuple_of(c, k)).collect();
    let mut level: HashMap<Vec<i32>, Vec<u32>> = HashMap::from([(vec![0; k], Vec::new())]);
    let mut work: u128 = 0;
    for _ in 0..t {
        work += level.len() as u128 * codes.len() as u128;
        if work > budget {
            return Err(Error::Budget { needed: work, budget });
        }
        let mut next: HashMap<Vec<i32>, Vec<u32>> = HashMap::with_capacity(level.len() * 2);
        for (s, rep) in &level {
            for (p, &c) in tuples.iter().zip(codes) {
                let sum: Vec<i32> = s.iter().zip(p).map(|(a, &b)| a + i32::from(b)).collect();
                let pos = rep.partition_point(|&x| x <= c);
                let mut cand = rep.clone();
                cand.insert(pos, c);
                match next.get_mut(&sum) {
                    Some(old) if *old <= cand => {}
                    Some(old) => *old = cand,
                    None => {
                        next.insert(sum, cand);
                    }
                }
            }
        }
        level = next;
    }
    let mut out: Vec<(Vec<i32>, Vec<u32>)> = level.into_iter().collect();
    out.sort_by(|a, b| a.1.cmp(&b.1));
    Ok(out)
}

fn rows_of(codes: &[u32], k: usize) -> Vec<Vec<Spin>> {
    codes.iter().map(|&c| tuple_of(c, k)).collect()
}

/// Checks whether `fam` maps strong tuples into weak tuples. Outputs depend
/// only on column sums (and, for AT, on the odd and even position sums
/// separately), so enumeration runs over multisets rather than sequences.
pub fn is_threshold_polymorphism(pair: &PredicatePair, fam: ThresholdFamily) -> Result<Verdict> {
    let k = pair.arity();
    let codes: Vec<u32> = pair.strong().codes().collect();
    if codes.is_empty() {
        return Err(Error::Invalid("strong predicate is empty".into()));
    }
    let weak = pair.weak();
    let l = fam.arity;
    match fam.kind {
        FamilyKind::At => {
            let odd = multiset_sums(&codes, k, (l + 1) / 2, ENUMERATION_BUDGET)?;
            let even = multiset_sums(&codes, k, (l - 1) / 2, ENUMERATION_BUDGET)?;
            let needed = odd.len() as u128 * even.len() as u128;
            if needed > ENUMERATION_BUDGET {
                return Err(Error::Budget { needed, budget: ENUMERATION_BUDGET });
            }
            for (so, ro) in &odd {
                for (se, re) in &even {
                    let out: Vec<Spin> = so.iter().zip(se).map(|(a, b)| fam.output(a + b, a - b)).collect();
                    if !weak.contains(&out) {
                        let mut rows = Vec::with_capacity(l);
                        for j in 0..l {
                            let c = if j % 2 == 0 { ro[j / 2] } else { re[j / 2] };
                            rows.push(tuple_of(c, k));
                        }
                        return Ok(Verdict::Fails(Counterexample { rows, output: out }));
                    }
                }
            }
            Ok(Verdict::Holds)
        }
        _ => {
            for (s, rep) in multiset_sums(&codes, k, l, ENUMERATION_BUDGET)? {
                let out: Vec<Spin> = s.iter().map(|&x| fam.output(x, 0)).collect();
                if !weak.contains(&out) {
                    return Ok(Verdict::Fails(Counterexample { rows: rows_of(&rep, k), output: out }));
                }
            }
            Ok(Verdict::Holds)
        }
    }
}

/// Reference check over all `|P|^L` ordered row sequences.
pub fn is_threshold_polymorphism_ordered(pair: &PredicatePair, fam: ThresholdFamily) -> Result<bool> {
    let tuples = pair.strong().tuples();
    let n = tuples.len() as u128;
    let needed = n.checked_pow(fam.arity as u32).unwrap_or(u128::MAX);
    if needed > ENUMERATION_BUDGET {
        return Err(Error::Budget { needed, budget: ENUMERATION_BUDGET });
    }
    let mut idx = vec![0usize; fam.arity];
    loop {
        let rows: Vec<Vec<Spin>> = idx.iter().map(|&i| tuples[i].clone()).collect();
        if !pair.weak().contains(&apply_threshold(fam, &rows)?) {
            return Ok(false);
        }
        let mut j = 0;
        loop {
            if j == idx.len() {
                return Ok(true);
            }
            idx[j] += 1;
            if idx[j] < tuples.len() {
                break;
            }
            idx[j] = 0;
            j += 1;
        }
    }
}

/// Checks `fam` at every odd arity up to `max_arity` and reports the first failure.
pub fn check_up_to(pair: &PredicatePair, kind: FamilyKind, max_arity: usize) -> Result<Vec<(usize, Verdict)>> {
    let step = if kind == FamilyKind::Or { 1 } else { 2 };
    let mut out = Vec::new();
    let mut l = 1;
    while l <= max_arity {
        let v = is_threshold_polymorphism(pair, ThresholdFamily::new(kind, l)?)?;
        let failed = !v.holds();
        out.push((l, v));
        if failed {
            break;
        }
        l += step;
    }
    Ok(out)
}

/// Union of the images of `fam` over all odd arities up to `max_arity`.
fn closure(p: &Predicate, kind: FamilyKind, max_arity: usize) -> Result<Predicate> {
    let k = p.arity();
    let codes: Vec<u32> = p.codes().collect();
    let mut out = Vec::new();
    let mut l = 1;
    while l <= max_arity {
        let fam = ThresholdFamily::new(kind, l)?;
        match kind {
            FamilyKind::At => {
                let odd = multiset_sums(&codes, k, (l + 1) / 2, ENUMERATION_BUDGET)?;
                let even = multiset_sums(&codes, k, (l - 1) / 2, ENUMERATION_BUDGET)?;
                for (so, _) in &odd {
                    for (se, _) in &even {
                        let t: Vec<Spin> = so.iter().zip(se).map(|(a, b)| fam.output(a + b, a - b)).collect();
                        out.push(code_of(&t));
                    }
                }
            }
            _ => {
                for (s, _) in multiset_sums(&codes, k, l, ENUMERATION_BUDGET)? {
                    let t: Vec<Spin> = s.iter().map(|&x| fam.output(x, 0)).collect();
                    out.push(code_of(&t));
                }
            }
        }
        l += 2;
    }
    Predicate::from_codes(k, out)
}

/// `O_MAJ(P)` truncated at arity `max_arity` (odd, at most 9).
pub fn o_maj_closure_bruteforce(p: &Predicate, max_arity: usize) -> Result<Predicate> {
    if max_arity > 9 {
        return Err(Error::Budget { needed: max_arity as u128, budget: 9 });
    }
    closure(p, FamilyKind::Maj, max_arity)
}

/// `O_AT(P)` truncated at arity `max_arity`.
pub fn o_at_closure_bruteforce(p: &Predicate, max_arity: usize) -> Result<Predicate> {
    closure(p, FamilyKind::At, max_arity)
}

/// A non-negative weight with `Σw = 1` and `min_{a∈P} w·a = margin`.
#[derive(Clone, Debug, PartialEq)]
pub struct SeparatingWeight {
    pub w: Vec<Q>,
    pub margin: Q,
}

/// Tuples of `P` with multiplicities plus one extra tuple whose coordinatewise
/// majority is the all-minus tuple.
#[derive(Clone, Debug, PartialEq)]
pub struct MajWitness {
    pub multiplicities: Vec<(Vec<Spin>, u64)>,
    pub extra: Vec<Spin>,
}

impl MajWitness {
    pub fn arity(&self) -> u64 {
        self.multiplicities.iter().map(|(_, m)| m).sum::<u64>() + 1
    }

    /// The witness expanded into explicit rows.
    pub fn rows(&self) -> Vec<Vec<Spin>> {
        let mut rows: Vec<Vec<Spin>> = self
            .multiplicities
            .iter()
            .flat_map(|(t, m)| std::iter::repeat_n(t.clone(), *m as usize))
            .collect();
        rows.push(self.extra.clone());
        rows
    }

    /// Coordinatewise majority computed from the multiplicities.
    pub fn majority(&self) -> Vec<Spin> {
        let k = self.extra.len();
        (0..k)
            .map(|i| {
                let s: i64 = self.multiplicities.iter().map(|(t, m)| i64::from(t[i]) * *m as i64).sum::<i64>() + i64::from(self.extra[i]);
                if s > 0 {
                    1
                } else {
                    -1
                }
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Separation {
    Weight(SeparatingWeight),
    Witness(MajWitness),
}

fn dot_q(w: &[Q], a: &[Spin]) -> Q {
    w.iter().zip(a).fold(Q::zero(), |acc, (x, &y)| acc + x * q(i64::from(y)))
}

/// Either a non-negative weight vector separating `P` from the origin
/// (`w·a ≥ 0` on `P`) or a MAJ witness producing the all-minus tuple.
pub fn separating_hyperplane(p: &Predicate) -> Result<Separation> {
    let k = p.arity();
    let tuples = p.tuples();
    if tuples.is_empty() {
        return Err(Error::Invalid("predicate is empty".into()));
    }
    // Primal: variables w_1..w_k >= 0 and a free margin.
    let mut lp = LinearProgram::new(k + 1);
    lp.free[k] = true;
    lp.objective[k] = q(1);
    let mut row = vec![q(1); k];
    row.push(q(0));
    lp.add_row(row, Relation::Eq, q(1));
    for a in &tuples {
        let mut row: Vec<Q> = a.iter().map(|&x| q(i64::from(x))).collect();
        row.push(q(-1));
        lp.add_row(row, Relation::Ge, q(0));
    }
    let LpOutcome::Optimal { x, value } = lp.solve() else {
        unreachable!("the separating LP is feasible and bounded");
    };
    if !value.is_negative() {
        return Ok(Separation::Weight(SeparatingWeight { w: x[..k].to_vec(), margin: value }));
    }

    // Dual: a distribution over P whose mean is negative in every coordinate.
    let np = tuples.len();
    let mut lp = LinearProgram::new(np + 1);
    lp.free[np] = true;
    lp.objective[np] = q(-1);
    let mut row = vec![q(1); np];
    row.push(q(0));
    lp.add_row(row, Relation::Eq, q(1));
    for i in 0..k {
        let mut row: Vec<Q> = tuples.iter().map(|a| q(-i64::from(a[i]))).collect();
        row.push(q(1));
        lp.add_row(row, Relation::Ge, q(0));
    }
    let LpOutcome::Optimal { x: lambda, .. } = lp.solve() else {
        unreachable!("the dual LP is feasible and bounded");
    };
    let lcm = lambda[..np].iter().fold(num_bigint::BigInt::one(), |acc, l| acc.lcm(l.denom()));
    let two_n = BigRational::from_integer(lcm * 2);
    let multiplicities = tuples
        .iter()
        .zip(&lambda[..np])
        .filter(|(_, l)| l.is_positive())
        .map(|(a, l)| {
            let m = (l * &two_n).to_integer().to_u64().expect("multiplicity fits in u64");
            (a.clone(), m)
        })
        .collect();
    Ok(Separation::Witness(MajWitness { multiplicities, extra: tuples[0].clone() }))
}

/// Affine hull of a predicate: a point of `P` plus a basis of the direction space.
#[derive(Clone, Debug, PartialEq)]
pub struct AffineHull {
    pub point: Vec<Q>,
    pub basis: Vec<Vec<Q>>,
}

impl AffineHull {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    /// Whether `x - point` lies in the span of the basis.
    pub fn contains(&self, x: &[Q]) -> bool {
        let mut rows = self.basis.clone();
        rows.push(x.iter().zip(&self.point).map(|(a, b)| a - b).collect());
        rank(rows) == self.basis.len()
    }
}

/// Row-reduces `rows` in place and returns the non-zero rows.
fn row_reduce(mut rows: Vec<Vec<Q>>) -> Vec<Vec<Q>> {
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for v in rows[r].iter_mut() {
            *v *= &inv;
        }
        let prow = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (v, pv) in row.iter_mut().zip(&prow) {
                    *v -= &f * pv;
                }
            }
        }
        r += 1;
    }
    rows.truncate(r);
    rows
}

fn rank(rows: Vec<Vec<Q>>) -> usize {
    row_reduce(rows).len()
}

pub fn affine_hull(p: &Predicate) -> Result<AffineHull> {
    let tuples = p.tuples();
    let Some(first) = tuples.first() else {
        return Err(Error::Invalid("predicate is empty".into()));
    };
    let point: Vec<Q> = first.iter().map(|&x| q(i64::from(x))).collect();
    let diffs: Vec<Vec<Q>> = tuples[1..]
        .iter()
        .map(|t| t.iter().zip(first).map(|(&a, &b)| q(i64::from(a - b))).collect())
        .collect();
    Ok(AffineHull { point, basis: row_reduce(diffs) })
}

fn require_nontrivial(p: &Predicate) -> Result<()> {
    match p.fixed_coordinates().first() {
        Some(&(i, _)) => Err(Error::FixedCoordinate(i)),
        None => Ok(()),
    }
}

/// Membership of `a` in `O_AT(P)`: some direction `z` of `Aff(P)` has
/// `a_i z_i ≥ 1` in every coordinate.
pub fn o_at_membership(p: &Predicate, a: &[Spin]) -> Result<bool> {
    require_nontrivial(p)?;
    let hull = affine_hull(p)?;
    Ok(o_at_member_with(&hull, a))
}

fn o_at_member_with(hull: &AffineHull, a: &[Spin]) -> bool {
    let r = hull.dimension();
    let mut lp = LinearProgram::new(r);
    lp.free = vec![true; r];
    for (i, &ai) in a.iter().enumerate() {
        let row: Vec<Q> = hull.basis.iter().map(|b| &b[i] * q(i64::from(ai))).collect();
        lp.add_row(row, Relation::Ge, q(1));
    }
    matches!(lp.solve(), LpOutcome::Optimal { .. })
}

/// `O_AT(P)` as a predicate, via the membership LP.
pub fn o_at_set(p: &Predicate) -> Result<Predicate> {
    require_nontrivial(p)?;
    let hull = affine_hull(p)?;
    let k = p.arity();
    Predicate::from_codes(k, (0..1u32 << k).filter(|&c| o_at_member_with(&hull, &tuple_of(c, k))))
}

/// The pair `({x : w·x = b}, cube \ {sgn w, -sgn w})`.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightedHyperplane {
    pub w: Vec<Q>,
    pub b: Q,
}

impl WeightedHyperplane {
    pub fn arity(&self) -> usize {
        self.w.len()
    }

    /// `sgn(w)` with zero mapped to `-1`.
    pub fn sign(&self) -> Vec<Spin> {
        self.w.iter().map(|x| if x.is_positive() { 1 } else { -1 }).collect()
    }

    pub fn strong(&self) -> Predicate {
        Predicate::from_fn(self.arity(), |x| dot_q(&self.w, x) == self.b).expect("valid arity")
    }

    pub fn weak(&self) -> Predicate {
        let s = self.sign();
        let neg: Vec<Spin> = s.iter().map(|x| -x).collect();
        Predicate::from_fn(self.arity(), |x| x != s.as_slice() && x != neg.as_slice()).expect("valid arity")
    }

    pub fn pair(&self) -> Result<PredicatePair> {
        PredicatePair::new(self.strong(), self.weak())
    }

    /// `w·sgn(w) > b > -w·sgn(w)` and no zero weights.
    pub fn is_valid(&self) -> bool {
        let l1 = self.w.iter().fold(Q::zero(), |a, x| a + x.abs());
        self.w.iter().all(|x| !x.is_zero()) && self.b < l1 && self.b > -l1
    }
}

/// For every tuple excluded from `Q`, a weighted hyperplane through `P`
/// whose weak predicate excludes that tuple.
pub fn weighted_hyperplane_cover(pair: &PredicatePair) -> Result<Vec<WeightedHyperplane>> {
    let p = pair.strong();
    require_nontrivial(p)?;
    let hull = affine_hull(p)?;
    let k = p.arity();
    let mut out = Vec::new();
    for code in pair.weak().missing_codes() {
        let x = tuple_of(code, k);
        if o_at_member_with(&hull, &x) {
            return Err(Error::Cover(tuple_string(&x)));
        }
        // Positive normal u of the flipped direction space, u_i >= 1, minimal sum.
        let mut lp = LinearProgram::new(k);
        lp.objective = vec![q(-1); k];
        for i in 0..k {
            let mut row = vec![q(0); k];
            row[i] = q(1);
            lp.add_row(row, Relation::Ge, q(1));
        }
        for h in &hull.basis {
            let row: Vec<Q> = (0..k).map(|i| &h[i] * q(i64::from(x[i]))).collect();
            lp.add_row(row, Relation::Eq, q(0));
        }
        let LpOutcome::Optimal { x: u, .. } = lp.solve() else {
            return Err(Error::Cover(tuple_string(&x)));
        };
        let w: Vec<Q> = u.iter().zip(&x).map(|(ui, &xi)| ui * q(i64::from(xi))).collect();
        let b = w.iter().zip(&hull.point).fold(Q::zero(), |a, (wi, pi)| a + wi * pi);
        let hp = WeightedHyperplane { w, b };
        debug_assert!(hp.is_valid() && p.is_subset(&hp.strong()));
        out.push(hp);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lp::q_frac;
    use crate::predicate::{k_sat, make_ham, nae, one_in, three_lin};

    #[test]
    fn apply_examples() {
        let rows = vec![vec![1], vec![1], vec![-1]];
        assert_eq!(apply_threshold(ThresholdFamily::maj(3), &rows).unwrap(), vec![1]);
        let rows = vec![vec![-1], vec![1], vec![-1]];
        assert_eq!(apply_threshold(ThresholdFamily::at(3), &rows).unwrap(), vec![-1]);
        let t = vec![vec![1, -1, 1]];
        assert_eq!(apply_threshold(ThresholdFamily::at(1), &t).unwrap(), t[0]);
        assert!(apply_threshold(ThresholdFamily::maj(3), &t).is_err());
    }

    #[test]
    fn known_polymorphisms() {
        let two_sat = PredicatePair::csp(k_sat(2));
        assert!(is_threshold_polymorphism(&two_sat, ThresholdFamily::maj(3)).unwrap().holds());
        let at_pair = PredicatePair::new(one_in(3), nae(3)).unwrap();
        assert!(is_threshold_polymorphism(&at_pair, ThresholdFamily::at(3)).unwrap().holds());
        let lin = PredicatePair::csp(three_lin());
        match is_threshold_polymorphism(&lin, ThresholdFamily::maj(3)).unwrap() {
            Verdict::Fails(c) => {
                assert_eq!(c.rows, vec![vec![-1, -1, 1], vec![-1, 1, -1], vec![1, -1, -1]]);
                assert_eq!(c.output, vec![-1, -1, -1]);
            }
            Verdict::Holds => panic!("MAJ_3 is not a polymorphism of 3-LIN"),
        }
    }

    #[test]
    fn separating_examples() {
        match separating_hyperplane(&make_ham(4, &[2, 3, 4]).unwrap()).unwrap() {
            Separation::Weight(sw) => {
                assert_eq!(sw.w, vec![q_frac(1, 4); 4]);
                assert!(!sw.margin.is_negative());
            }
            other => panic!("{other:?}"),
        }
        match separating_hyperplane(&make_ham(3, &[3]).unwrap()).unwrap() {
            Separation::Weight(sw) => assert_eq!(sw.margin, q(1)),
            other => panic!("{other:?}"),
        }
        match separating_hyperplane(&three_lin()).unwrap() {
            Separation::Witness(w) => {
                assert_eq!(w.arity() % 2, 1);
                let fam = ThresholdFamily::maj(w.arity() as usize);
                assert_eq!(apply_threshold(fam, &w.rows()).unwrap(), vec![-1, -1, -1]);
                assert_eq!(w.majority(), vec![-1, -1, -1]);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn hull_dimensions() {
        assert_eq!(affine_hull(&one_in(3)).unwrap().dimension(), 2);
        assert_eq!(affine_hull(&make_ham(3, &[0]).unwrap()).unwrap().dimension(), 0);
        assert_eq!(affine_hull(&Predicate::full(2).unwrap()).unwrap().dimension(), 2);
    }

    #[test]
    fn o_at_examples() {
        assert_eq!(o_at_set(&one_in(3)).unwrap(), nae(3));
        let p = make_ham(2, &[1]).unwrap();
        assert_eq!(o_at_set(&p).unwrap(), p);
        assert!(matches!(o_at_membership(&make_ham(2, &[2]).unwrap(), &[1, 1]), Err(Error::FixedCoordinate(0))));
    }

    #[test]
    fn closure_examples() {
        let c = o_maj_closure_bruteforce(&three_lin(), 3).unwrap();
        assert!(c.contains(&[-1, -1, -1]));
        let single = make_ham(3, &[0]).unwrap();
        assert_eq!(o_maj_closure_bruteforce(&single, 9).unwrap(), single);
        let p = make_ham(4, &[2]).unwrap();
        assert!(p.is_subset(&o_maj_closure_bruteforce(&p, 3).unwrap()));
    }

    #[test]
    fn one_in_three_cover() {
        let pair = PredicatePair::new(one_in(3), nae(3)).unwrap();
        let cover = weighted_hyperplane_cover(&pair).unwrap();
        assert_eq!(cover.len(), 2);
        assert_eq!(cover[0], WeightedHyperplane { w: vec![q(-1); 3], b: q(1) });
        assert_eq!(cover[1], WeightedHyperplane { w: vec![q(1); 3], b: q(-1) });
    }
}
