//! Dense two-phase simplex over exact rationals with Bland's rule.
//!
//! Sizes here are tiny (a few dozen rows), so a full tableau is fine and
//! Bland's rule rules out cycling.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    BigRational::from_integer(BigInt::from(n))
}

pub fn q_frac(n: i64, d: i64) -> Q {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

/// `maximize c·x` subject to linear rows; variables are non-negative unless marked free.
#[derive(Clone, Debug)]
pub struct LinearProgram {
    pub objective: Vec<Q>,
    pub free: Vec<bool>,
    pub rows: Vec<(Vec<Q>, Relation, Q)>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum LpOutcome {
    Optimal { x: Vec<Q>, value: Q },
    Infeasible,
    Unbounded,
}

impl LinearProgram {
    pub fn new(num_vars: usize) -> Self {
        Self { objective: vec![Q::zero(); num_vars], free: vec![false; num_vars], rows: Vec::new() }
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn add_row(&mut self, coeffs: Vec<Q>, rel: Relation, rhs: Q) {
        assert_eq!(coeffs.len(), self.num_vars(), "row length must match variable count");
        self.rows.push((coeffs, rel, rhs));
    }

    pub fn solve(&self) -> LpOutcome {
        let nv = self.num_vars();
        // Column layout: original (split free vars), slacks, artificials.
        let mut col_of: Vec<(usize, Option<usize>)> = Vec::with_capacity(nv);
        let mut ncols = 0;
        for j in 0..nv {
            if self.free[j] {
                col_of.push((ncols, Some(ncols + 1)));
                ncols += 2;
            } else {
                col_of.push((ncols, None));
                ncols += 1;
            }
        }
        let structural = ncols;
        let m = self.rows.len();
        let slack_count = self.rows.iter().filter(|r| r.1 != Relation::Eq).count();
        let first_art = structural + slack_count;
        let total = first_art + m;

        let mut tab: Vec<Vec<Q>> = vec![vec![Q::zero(); total + 1]; m];
        let mut basis = vec![0usize; m];
        let mut slack = structural;
        for (i, (coeffs, rel, rhs)) in self.rows.iter().enumerate() {
            let flip = rhs.is_negative();
            let s = if flip { -Q::one() } else { Q::one() };
            for j in 0..nv {
                let (p, neg) = col_of[j];
                tab[i][p] = &coeffs[j] * &s;
                if let Some(nc) = neg {
                    tab[i][nc] = -&coeffs[j] * &s;
                }
            }
            let rel = match (rel, flip) {
                (Relation::Le, true) => Relation::Ge,
                (Relation::Ge, true) => Relation::Le,
                (r, _) => *r,
            };
            match rel {
                Relation::Le => {
                    tab[i][slack] = Q::one();
                    slack += 1;
                }
                Relation::Ge => {
                    tab[i][slack] = -Q::one();
                    slack += 1;
                }
                Relation::Eq => {}
            }
            tab[i][first_art + i] = Q::one();
            tab[i][total] = rhs * &s;
            basis[i] = first_art + i;
        }

        // Phase 1: minimize the sum of artificials, i.e. maximize its negation.
        let mut cost = vec![Q::zero(); total];
        for c in cost.iter_mut().skip(first_art) {
            *c = -Q::one();
        }
        if !run_simplex(&mut tab, &mut basis, &cost, total) {
            unreachable!("phase one is bounded");
        }
        let infeas: Q = basis
            .iter()
            .enumerate()
            .filter(|(_, &b)| b >= first_art)
            .map(|(i, _)| tab[i][total].clone())
            .fold(Q::zero(), |a, b| a + b);
        if infeas.is_positive() {
            return LpOutcome::Infeasible;
        }
        // Drive remaining artificials out of the basis or drop redundant rows.
        let mut i = 0;
        while i < tab.len() {
            if basis[i] >= first_art {
                if let Some(j) = (0..first_art).find(|&j| !tab[i][j].is_zero()) {
                    pivot(&mut tab, &mut basis, i, j);
                    i += 1;
                } else {
                    tab.remove(i);
                    basis.remove(i);
                }
            } else {
                i += 1;
            }
        }
        for row in tab.iter_mut() {
            row.drain(first_art..total);
        }

        let mut cost = vec![Q::zero(); first_art];
        for j in 0..nv {
            let (p, neg) = col_of[j];
            cost[p] = self.objective[j].clone();
            if let Some(nc) = neg {
                cost[nc] = -self.objective[j].clone();
            }
        }
        if !run_simplex(&mut tab, &mut basis, &cost, first_art) {
            return LpOutcome::Unbounded;
        }
        let mut values = vec![Q::zero(); first_art];
        for (i, &b) in basis.iter().enumerate() {
            values[b] = tab[i][first_art].clone();
        }
        let x: Vec<Q> = (0..nv)
            .map(|j| {
                let (p, neg) = col_of[j];
                match neg {
                    Some(nc) => &values[p] - &values[nc],
                    None => values[p].clone(),
                }
            })
            .collect();
        let value = x.iter().zip(&self.objective).map(|(a, b)| a * b).fold(Q::zero(), |a, b| a + b);
        LpOutcome::Optimal { x, value }
    }
}

fn pivot(tab: &mut [Vec<Q>], basis: &mut [usize], r: usize, c: usize) {
    let inv = tab[r][c].recip();
    for v in tab[r].iter_mut() {
        *v *= &inv;
    }
    let prow = tab[r].clone();
    for (i, row) in tab.iter_mut().enumerate() {
        if i == r || row[c].is_zero() {
            continue;
        }
        let f = row[c].clone();
        for (v, p) in row.iter_mut().zip(&prow) {
            if !p.is_zero() {
                *v -= &f * p;
            }
        }
    }
    basis[r] = c;
}

/// Maximizes `cost·x` over the current tableau; the rhs sits in column `width`.
/// Returns false when unbounded.
fn run_simplex(tab: &mut [Vec<Q>], basis: &mut [usize], cost: &[Q], width: usize) -> bool {
    loop {
        // Reduced cost of column j: cost_j - sum_i cost_{basis_i} tab[i][j].
        let entering = (0..width).find(|&j| {
            if basis.contains(&j) {
                return false;
            }
            let mut rc = cost[j].clone();
            for (i, &b) in basis.iter().enumerate() {
                if !tab[i][j].is_zero() && !cost[b].is_zero() {
                    rc -= &cost[b] * &tab[i][j];
                }
            }
            rc.is_positive()
        });
        let Some(c) = entering else { return true };
        let mut best: Option<(usize, Q)> = None;
        for i in 0..tab.len() {
            if tab[i][c].is_positive() {
                let ratio = &tab[i][width] / &tab[i][c];
                let better = match &best {
                    None => true,
                    Some((bi, br)) => ratio < *br || (ratio == *br && basis[i] < basis[*bi]),
                };
                if better {
                    best = Some((i, ratio));
                }
            }
        }
        let Some((r, _)) = best else { return false };
        pivot(tab, basis, r, c);
    }
}
