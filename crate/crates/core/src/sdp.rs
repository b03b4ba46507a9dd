//! The basic SDP relaxation in Boolean folded form, and a dense
//! primal-dual interior-point solver for it.
//!
//! Variables are a Gram matrix `X` over `(v0, v1, .., vn)` and, per
//! constraint, a distribution `λ_j` over all `2^k` tuples. Moment rows tie
//! the two together; the objective is the total mass placed outside `P`.

use faer::Mat;

use crate::error::{Error, Result};
use crate::instance::{Instance, Literal};
use crate::linalg::{self, dot};
use crate::predicate::{tuple_of, Spin};

/// Default absolute accuracy per constraint.
pub const DEFAULT_TOL: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RowKind {
    Normalization,
    First(usize),
    Second(usize, usize),
    Diagonal(usize),
}

/// `coeff · X[entry] + Σ_f lambda_coeff(f) λ_block(f) = rhs`.
#[derive(Clone, Debug, PartialEq)]
pub struct Row {
    pub kind: RowKind,
    pub entry: Option<(usize, usize)>,
    pub coeff: f64,
    pub block: Option<usize>,
    pub rhs: f64,
}

/// One constraint's local distribution.
#[derive(Clone, Debug, PartialEq)]
pub struct Block {
    pub literals: Vec<Literal>,
    /// `in_strong[f]` for every tuple code `f`.
    pub in_strong: Vec<bool>,
    /// Offset of this block inside the concatenated λ vector.
    pub offset: usize,
    /// Rows of this block, as a contiguous range.
    pub rows: std::ops::Range<usize>,
}

impl Block {
    pub fn arity(&self) -> usize {
        self.literals.len()
    }

    pub fn size(&self) -> usize {
        self.in_strong.len()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SdpProgram {
    pub num_vars: usize,
    pub blocks: Vec<Block>,
    pub rows: Vec<Row>,
}

/// Value of the `f`-coefficient of a row inside its block.
fn lambda_coeff(kind: RowKind, f: u32, k: usize) -> f64 {
    let bit = |p: usize| -> f64 { if (f >> (k - 1 - p)) & 1 == 1 { 1.0 } else { -1.0 } };
    match kind {
        RowKind::Normalization => 1.0,
        RowKind::First(p) => -bit(p),
        RowKind::Second(p, q) => -bit(p) * bit(q),
        RowKind::Diagonal(_) => 0.0,
    }
}

/// Gram index and sign of a literal: constants live on `v0`.
fn literal_vector(l: Literal) -> (usize, f64) {
    match l {
        Literal::Var { var, sign } => (var + 1, f64::from(sign)),
        Literal::Const(c) => (0, f64::from(c)),
    }
}

/// Row for `s·X[a,b] = Σλ(...)`, folding known unit diagonal entries into the rhs.
fn moment_row(kind: RowKind, block: usize, a: usize, b: usize, s: f64) -> Row {
    if a == b {
        Row { kind, entry: None, coeff: 0.0, block: Some(block), rhs: -s }
    } else {
        Row { kind, entry: Some((a.min(b), a.max(b))), coeff: s, block: Some(block), rhs: 0.0 }
    }
}

pub fn build_basic_sdp(inst: &Instance) -> SdpProgram {
    let mut rows = Vec::new();
    let mut blocks = Vec::new();
    let mut offset = 0;
    for (j, c) in inst.constraints().iter().enumerate() {
        let k = c.literals.len();
        let start = rows.len();
        rows.push(Row { kind: RowKind::Normalization, entry: None, coeff: 0.0, block: Some(j), rhs: 1.0 });
        for p in 0..k {
            let (a, s) = literal_vector(c.literals[p]);
            rows.push(moment_row(RowKind::First(p), j, 0, a, s));
        }
        for p in 0..k {
            for q in p + 1..k {
                let (a, sa) = literal_vector(c.literals[p]);
                let (b, sb) = literal_vector(c.literals[q]);
                rows.push(moment_row(RowKind::Second(p, q), j, a, b, sa * sb));
            }
        }
        let pair = inst.pair_of(c);
        let in_strong = (0..1u32 << k).map(|f| pair.strong().contains_code(f)).collect();
        blocks.push(Block { literals: c.literals.clone(), in_strong, offset, rows: start..rows.len() });
        offset += 1 << k;
    }
    for i in 0..=inst.num_vars() {
        rows.push(Row { kind: RowKind::Diagonal(i), entry: Some((i, i)), coeff: 1.0, block: None, rhs: 1.0 });
    }
    SdpProgram { num_vars: inst.num_vars(), blocks, rows }
}

impl SdpProgram {
    pub fn num_constraints(&self) -> usize {
        self.blocks.len()
    }

    pub fn lambda_len(&self) -> usize {
        self.blocks.last().map_or(0, |b| b.offset + b.size())
    }

    fn block_coeffs(&self, b: &Block) -> Vec<Vec<f64>> {
        let k = b.arity();
        self.rows[b.rows.clone()]
            .iter()
            .map(|r| (0..b.size() as u32).map(|f| lambda_coeff(r.kind, f, k)).collect())
            .collect()
    }

    /// Residuals `rhs − (coeff·X + G λ)` for every row.
    pub fn residuals(&self, x: &Mat<f64>, lambda: &[f64]) -> Vec<f64> {
        let mut r: Vec<f64> = self
            .rows
            .iter()
            .map(|row| row.rhs - row.entry.map_or(0.0, |(a, b)| row.coeff * x[(a, b)]))
            .collect();
        for b in &self.blocks {
            let g = self.block_coeffs(b);
            for (i, gi) in b.rows.clone().zip(&g) {
                r[i] -= dot(gi, &lambda[b.offset..b.offset + b.size()]);
            }
        }
        r
    }
}

/// Solver settings.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SolverOptions {
    pub tol: f64,
    pub max_iterations: usize,
    pub feasibility_tol: f64,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self { tol: DEFAULT_TOL, max_iterations: 120, feasibility_tol: 1e-8 }
    }
}

impl SolverOptions {
    pub fn with_tol(tol: f64) -> Self {
        Self { tol, ..Self::default() }
    }
}

/// Realized vectors and local distributions.
#[derive(Clone, Debug, PartialEq)]
pub struct SdpSolution {
    /// Ambient dimension of every vector.
    pub dimension: usize,
    /// `vectors[0]` is `v0 = e_1`; `vectors[i]` is the vector of variable `i`.
    pub vectors: Vec<Vec<f64>>,
    pub lambda: Vec<Vec<f64>>,
    pub errors: Vec<f64>,
    pub objective: f64,
    pub iterations: usize,
}

impl SdpSolution {
    pub fn num_vars(&self) -> usize {
        self.vectors.len() - 1
    }

    pub fn v0(&self) -> &[f64] {
        &self.vectors[0]
    }

    /// Vector of variable `i` (zero-based).
    pub fn var(&self, i: usize) -> &[f64] {
        &self.vectors[i + 1]
    }

    /// Vector standing for a literal.
    pub fn literal(&self, l: Literal) -> Vec<f64> {
        match l {
            Literal::Var { var, sign } => linalg::scale(self.var(var), f64::from(sign)),
            Literal::Const(c) => linalg::scale(self.v0(), f64::from(c)),
        }
    }

    /// Replaces every variable vector by its negation.
    pub fn negated(&self) -> SdpSolution {
        let mut s = self.clone();
        for v in s.vectors.iter_mut().skip(1) {
            for x in v.iter_mut() {
                *x = -*x;
            }
        }
        s
    }
}

/// First moments `μ_i = v_i·v0` and Gram matrix of the variable vectors.
#[derive(Clone, Debug, PartialEq)]
pub struct MomentData {
    pub mu: Vec<f64>,
    pub sigma: Mat<f64>,
}

pub fn extract_moments(sol: &SdpSolution) -> MomentData {
    let n = sol.num_vars();
    let mu = (0..n).map(|i| dot(sol.var(i), sol.v0())).collect();
    let mut sigma = Mat::from_fn(n, n, |i, j| dot(sol.var(i), sol.var(j)));
    linalg::symmetrize(&mut sigma);
    MomentData { mu, sigma }
}

struct Iterate {
    x: Mat<f64>,
    lam: Vec<f64>,
    y: Vec<f64>,
    z: Mat<f64>,
    s: Vec<f64>,
}

struct Direction {
    dx: Mat<f64>,
    dlam: Vec<f64>,
    dy: Vec<f64>,
    dz: Mat<f64>,
    ds: Vec<f64>,
}

struct Solver<'a> {
    prog: &'a SdpProgram,
    g: Vec<Vec<Vec<f64>>>,
    cost: Vec<f64>,
    dim: usize,
    /// Rows that touch the Gram matrix, with their entry and coefficient.
    xrows: Vec<(usize, usize, usize, f64)>,
}

impl<'a> Solver<'a> {
    fn new(prog: &'a SdpProgram) -> Self {
        let g = prog.blocks.iter().map(|b| prog.block_coeffs(b)).collect();
        let mut cost = vec![0.0; prog.lambda_len()];
        for b in &prog.blocks {
            for (f, &inside) in b.in_strong.iter().enumerate() {
                cost[b.offset + f] = if inside { 0.0 } else { 1.0 };
            }
        }
        let xrows = prog
            .rows
            .iter()
            .enumerate()
            .filter_map(|(i, r)| r.entry.map(|(a, b)| (i, a, b, r.coeff)))
            .collect();
        Self { prog, g, cost, dim: prog.num_vars + 1, xrows }
    }

    /// `A(M)`: the Gram part of every row applied to a symmetric matrix.
    fn a_op(&self, m: &Mat<f64>) -> Vec<f64> {
        let mut out = vec![0.0; self.prog.rows.len()];
        for &(i, a, b, c) in &self.xrows {
            out[i] = c * m[(a, b)];
        }
        out
    }

    /// `A*(y)` as a symmetric matrix.
    fn a_adj(&self, y: &[f64]) -> Mat<f64> {
        let mut m = Mat::<f64>::zeros(self.dim, self.dim);
        for &(i, a, b, c) in &self.xrows {
            if a == b {
                m[(a, a)] += c * y[i];
            } else {
                m[(a, b)] += 0.5 * c * y[i];
                m[(b, a)] += 0.5 * c * y[i];
            }
        }
        m
    }

    fn g_op(&self, lam: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.prog.rows.len()];
        for (b, g) in self.prog.blocks.iter().zip(&self.g) {
            let l = &lam[b.offset..b.offset + b.size()];
            for (i, gi) in b.rows.clone().zip(g) {
                out[i] = dot(gi, l);
            }
        }
        out
    }

    fn g_adj(&self, y: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.prog.lambda_len()];
        for (b, g) in self.prog.blocks.iter().zip(&self.g) {
            for (i, gi) in b.rows.clone().zip(g) {
                for (f, c) in gi.iter().enumerate() {
                    out[b.offset + f] += c * y[i];
                }
            }
        }
        out
    }

    fn schur(&self, w: &Mat<f64>, x: &Mat<f64>, d: &[f64]) -> Mat<f64> {
        let nr = self.prog.rows.len();
        let n = self.dim;
        let wf: Vec<f64> = (0..n * n).map(|t| w[(t / n, t % n)]).collect();
        let xf: Vec<f64> = (0..n * n).map(|t| x[(t / n, t % n)]).collect();
        // Only the lower triangle is filled; the Cholesky reads nothing else.
        let mut m = Mat::<f64>::zeros(nr, nr);
        for (jj, &(j, r, s, cj)) in self.xrows.iter().enumerate() {
            let col = m.col_mut(j).try_as_col_major_mut().expect("contiguous column").as_slice_mut();
            let (wr, ws) = (&wf[r * n..(r + 1) * n], &wf[s * n..(s + 1) * n]);
            let (xr, xs) = (&xf[r * n..(r + 1) * n], &xf[s * n..(s + 1) * n]);
            for &(i, p, q, ci) in &self.xrows[jj..] {
                let h = wr[p] * xs[q] + ws[p] * xr[q] + wr[q] * xs[p] + ws[q] * xr[p];
                col[i] = 0.25 * ci * cj * h;
            }
        }
        for (b, g) in self.prog.blocks.iter().zip(&self.g) {
            let db = &d[b.offset..b.offset + b.size()];
            for (ri, gi) in b.rows.clone().zip(g) {
                for (rj, gj) in b.rows.clone().zip(g) {
                    let v: f64 = gi.iter().zip(gj).zip(db).map(|((a, c), e)| a * c * e).sum();
                    m[(ri, rj)] += v;
                }
            }
        }
        m
    }

    fn solve(&self, opts: SolverOptions) -> Result<(Mat<f64>, Vec<f64>, usize)> {
        let prog = self.prog;
        let n = self.dim;
        let nl = prog.lambda_len();
        let nr = prog.rows.len();
        let b: Vec<f64> = prog.rows.iter().map(|r| r.rhs).collect();
        let m = prog.num_constraints();
        let scale_m = (m as f64).max(1.0);
        let gap_target = 0.05 * opts.tol * scale_m;

        let mut it = Iterate {
            x: Mat::identity(n, n),
            lam: prog.blocks.iter().flat_map(|bl| vec![1.0 / bl.size() as f64; bl.size()]).collect(),
            y: vec![0.0; nr],
            z: Mat::identity(n, n),
            s: vec![1.0; nl],
        };
        let dof = (n + nl) as f64;
        let bnorm = 1.0 + b.iter().map(|v| v * v).sum::<f64>().sqrt();

        let mut last = (f64::NAN, f64::NAN, f64::NAN);
        for iter in 0..opts.max_iterations {
            let ax = self.a_op(&it.x);
            let gl = self.g_op(&it.lam);
            let rp: Vec<f64> = (0..nr).map(|i| b[i] - ax[i] - gl[i]).collect();
            let mut rd_mat = self.a_adj(&it.y);
            for i in 0..n {
                for j in 0..n {
                    rd_mat[(i, j)] = -rd_mat[(i, j)] - it.z[(i, j)];
                }
            }
            let gty = self.g_adj(&it.y);
            let rd: Vec<f64> = (0..nl).map(|i| self.cost[i] - gty[i] - it.s[i]).collect();

            let gap = frob_dot(&it.x, &it.z) + dot(&it.lam, &it.s);
            let pinf = rp.iter().map(|v| v * v).sum::<f64>().sqrt() / bnorm;
            let dinf = (frob_norm(&rd_mat).powi(2) + rd.iter().map(|v| v * v).sum::<f64>()).sqrt() / (1.0 + (nl as f64).sqrt());
            last = (pinf, dinf, gap);
            if gap <= gap_target && pinf <= opts.feasibility_tol && dinf <= opts.feasibility_tol {
                return Ok((it.x, it.lam, iter));
            }
            let mu = gap / dof;

            let w = linalg::spd_inverse(&it.z).map_err(|_| Error::Sdp { iterations: iter, primal: pinf, dual: dinf, gap })?;
            let d: Vec<f64> = (0..nl).map(|i| it.lam[i] / it.s[i]).collect();
            let mut schur = self.schur(&w, &it.x, &d);
            for i in 0..nr {
                schur[(i, i)] += 1e-14 * schur[(i, i)].abs().max(1e-30);
            }
            let llt = schur
                .llt(faer::Side::Lower)
                .map_err(|_| Error::Sdp { iterations: iter, primal: pinf, dual: dinf, gap })?;

            let dir_for = |target: &Mat<f64>, tlam: &[f64]| -> Direction {
                // target = desired ΔX before the ΔZ coupling; tlam likewise for Δλ.
                let xrw = sym(&(&(&it.x * &rd_mat) * &w));
                let mut t = target.clone();
                for i in 0..n {
                    for j in 0..n {
                        t[(i, j)] -= xrw[(i, j)];
                    }
                }
                let at = self.a_op(&t);
                let tl: Vec<f64> = (0..nl).map(|i| tlam[i] - d[i] * rd[i]).collect();
                let gt = self.g_op(&tl);
                let mut rhs = Mat::<f64>::from_fn(nr, 1, |i, _| rp[i] - at[i] - gt[i]);
                use faer::linalg::solvers::Solve;
                llt.solve_in_place(rhs.as_mut());
                let dy: Vec<f64> = (0..nr).map(|i| rhs[(i, 0)]).collect();
                let ady = self.a_adj(&dy);
                let mut dz = rd_mat.clone();
                for i in 0..n {
                    for j in 0..n {
                        dz[(i, j)] -= ady[(i, j)];
                    }
                }
                let xdzw = sym(&(&(&it.x * &dz) * &w));
                let mut dx = target.clone();
                for i in 0..n {
                    for j in 0..n {
                        dx[(i, j)] -= xdzw[(i, j)];
                    }
                }
                let gdy = self.g_adj(&dy);
                let ds: Vec<f64> = (0..nl).map(|i| rd[i] - gdy[i]).collect();
                let dlam: Vec<f64> = (0..nl).map(|i| tlam[i] - d[i] * ds[i]).collect();
                Direction { dx, dlam, dy, dz, ds }
            };

            let breakdown = |_| Error::Sdp { iterations: iter, primal: pinf, dual: dinf, gap };

            // Predictor.
            let mut target = it.x.clone();
            for i in 0..n {
                for j in 0..n {
                    target[(i, j)] = -target[(i, j)];
                }
            }
            let tlam: Vec<f64> = it.lam.iter().map(|v| -v).collect();
            let aff = dir_for(&target, &tlam);
            let ap = linalg::psd_step(&it.x, &aff.dx, 1.0).map_err(breakdown)?.min(vec_step(&it.lam, &aff.dlam, 1.0));
            let ad = linalg::psd_step(&it.z, &aff.dz, 1.0).map_err(breakdown)?.min(vec_step(&it.s, &aff.ds, 1.0));
            let mut x_aff = it.x.clone();
            let mut z_aff = it.z.clone();
            for i in 0..n {
                for j in 0..n {
                    x_aff[(i, j)] += ap * aff.dx[(i, j)];
                    z_aff[(i, j)] += ad * aff.dz[(i, j)];
                }
            }
            let gap_aff = frob_dot(&x_aff, &z_aff)
                + (0..nl).map(|i| (it.lam[i] + ap * aff.dlam[i]) * (it.s[i] + ad * aff.ds[i])).sum::<f64>();
            let sigma = (gap_aff / gap).clamp(0.0, 1.0).powi(3);

            // Corrector.
            let dd = sym(&(&(&aff.dx * &aff.dz) * &w));
            let mut target = Mat::<f64>::zeros(n, n);
            for i in 0..n {
                for j in 0..n {
                    target[(i, j)] = sigma * mu * w[(i, j)] - it.x[(i, j)] - dd[(i, j)];
                }
            }
            let tlam: Vec<f64> = (0..nl).map(|i| (sigma * mu - aff.dlam[i] * aff.ds[i]) / it.s[i] - it.lam[i]).collect();
            let dir = dir_for(&target, &tlam);
            let ap = linalg::psd_step(&it.x, &dir.dx, 0.95).map_err(breakdown)?.min(vec_step(&it.lam, &dir.dlam, 0.95));
            let ad = linalg::psd_step(&it.z, &dir.dz, 0.95).map_err(breakdown)?.min(vec_step(&it.s, &dir.ds, 0.95));
            for i in 0..n {
                for j in 0..n {
                    it.x[(i, j)] += ap * dir.dx[(i, j)];
                    it.z[(i, j)] += ad * dir.dz[(i, j)];
                }
            }
            linalg::symmetrize(&mut it.x);
            linalg::symmetrize(&mut it.z);
            for i in 0..nl {
                it.lam[i] += ap * dir.dlam[i];
                it.s[i] += ad * dir.ds[i];
            }
            for i in 0..nr {
                it.y[i] += ad * dir.dy[i];
            }
        }
        Err(Error::Sdp { iterations: opts.max_iterations, primal: last.0, dual: last.1, gap: last.2 })
    }
}

fn sym(m: &Mat<f64>) -> Mat<f64> {
    Mat::from_fn(m.nrows(), m.ncols(), |i, j| 0.5 * (m[(i, j)] + m[(j, i)]))
}

fn frob_dot(a: &Mat<f64>, b: &Mat<f64>) -> f64 {
    let mut s = 0.0;
    for j in 0..a.ncols() {
        for i in 0..a.nrows() {
            s += a[(i, j)] * b[(i, j)];
        }
    }
    s
}

fn frob_norm(a: &Mat<f64>) -> f64 {
    frob_dot(a, a).sqrt()
}

fn vec_step(v: &[f64], dv: &[f64], fraction: f64) -> f64 {
    let mut a = 1.0f64;
    for (x, d) in v.iter().zip(dv) {
        if *d < 0.0 {
            a = a.min(-fraction * x / d);
        }
    }
    a
}

/// Solves the program and realizes vectors with `v0` as the first axis.
pub fn solve_basic_sdp(prog: &SdpProgram, tol: f64) -> Result<SdpSolution> {
    solve_basic_sdp_with(prog, SolverOptions::with_tol(tol))
}

pub fn solve_basic_sdp_with(prog: &SdpProgram, opts: SolverOptions) -> Result<SdpSolution> {
    if !(opts.tol > 0.0) {
        return Err(Error::Invalid("tol must be positive".into()));
    }
    let solver = Solver::new(prog);
    let (mut x, lam, iterations) = solver.solve(opts)?;
    linalg::symmetrize(&mut x);
    let mut vectors = linalg::psd_factor(&x)?;
    for v in vectors.iter_mut() {
        let nv = linalg::norm(v);
        if nv > 0.0 {
            for c in v.iter_mut() {
                *c /= nv;
            }
        }
    }
    let h = linalg::reflect_to_first_axis(&vectors[0]);
    let mut vectors: Vec<Vec<f64>> = vectors.iter().map(|v| linalg::apply(&h, v)).collect();
    vectors[0] = {
        let mut e = vec![0.0; prog.num_vars + 1];
        e[0] = 1.0;
        e
    };
    let mut lambda = Vec::with_capacity(prog.blocks.len());
    let mut errors = Vec::with_capacity(prog.blocks.len());
    for b in &prog.blocks {
        let mut l: Vec<f64> = lam[b.offset..b.offset + b.size()].iter().map(|v| v.max(0.0)).collect();
        let total: f64 = l.iter().sum();
        for v in l.iter_mut() {
            *v /= total;
        }
        let err: f64 = l.iter().zip(&b.in_strong).filter(|(_, &inside)| !inside).map(|(v, _)| v).sum();
        errors.push(err.clamp(0.0, 1.0));
        lambda.push(l);
    }
    let objective = errors.iter().sum();
    Ok(SdpSolution { dimension: prog.num_vars + 1, vectors, lambda, errors, objective, iterations })
}

/// Largest violation of any moment row by the realized vectors and λ.
pub fn moment_residual(prog: &SdpProgram, sol: &SdpSolution) -> f64 {
    let n = prog.num_vars + 1;
    let x = Mat::from_fn(n, n, |i, j| dot(&sol.vectors[i], &sol.vectors[j]));
    let flat: Vec<f64> = sol.lambda.iter().flatten().copied().collect();
    prog.residuals(&x, &flat).iter().fold(0.0, |a, r| a.max(r.abs()))
}

/// Second moment implied by `λ` for positions `p, q` of a block.
pub fn lambda_moment(lambda: &[f64], k: usize, p: usize, q: Option<usize>) -> f64 {
    lambda
        .iter()
        .enumerate()
        .map(|(f, l)| {
            let t = tuple_of(f as u32, k);
            let v: Spin = match q {
                Some(q) => t[p] * t[q],
                None => t[p],
            };
            l * f64::from(v)
        })
        .sum()
}

fn fmt17(x: f64) -> String {
    format!("{x:.16e}")
}

/// Text dump: dimension, vectors row by row, then `λ` and `ε` per constraint.
pub fn serialize_solution(sol: &SdpSolution) -> String {
    let mut out = String::from("sdp-solution v1\n");
    out.push_str(&format!("dimension {}\n", sol.dimension));
    out.push_str(&format!("objective {}\n", fmt17(sol.objective)));
    out.push_str(&format!("vectors {}\n", sol.vectors.len()));
    for v in &sol.vectors {
        let row: Vec<String> = v.iter().map(|&x| fmt17(x)).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out.push_str(&format!("constraints {}\n", sol.lambda.len()));
    for (l, e) in sol.lambda.iter().zip(&sol.errors) {
        let row: Vec<String> = l.iter().map(|&x| fmt17(x)).collect();
        out.push_str(&format!("{} | {}\n", fmt17(*e), row.join(" ")));
    }
    out
}

pub fn parse_solution(text: &str) -> Result<SdpSolution> {
    let bad = |line: usize, msg: &str| Error::Parse { line, message: msg.to_string() };
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty());
    let mut next = |what: &str| lines.next().ok_or_else(|| bad(0, &format!("missing {what}")));
    let num = |line: usize, s: &str| s.parse::<f64>().map_err(|_| bad(line, &format!("bad number `{s}`")));
    let header = |(line, l): (usize, &str), key: &str| -> Result<String> {
        l.strip_prefix(key).map(|r| r.trim().to_string()).ok_or_else(|| bad(line, &format!("expected `{key}`")))
    };
    let (hl, h) = next("header")?;
    if h != "sdp-solution v1" {
        return Err(bad(hl, "expected header `sdp-solution v1`"));
    }
    let l = next("dimension")?;
    let dimension: usize = header(l, "dimension")?.parse().map_err(|_| bad(l.0, "bad dimension"))?;
    let l = next("objective")?;
    let objective = num(l.0, &header(l, "objective")?)?;
    let l = next("vectors")?;
    let nv: usize = header(l, "vectors")?.parse().map_err(|_| bad(l.0, "bad vector count"))?;
    let mut vectors = Vec::with_capacity(nv);
    for _ in 0..nv {
        let (line, row) = next("vector")?;
        let v = row.split_whitespace().map(|s| num(line, s)).collect::<Result<Vec<_>>>()?;
        if v.len() != dimension {
            return Err(bad(line, "vector length differs from dimension"));
        }
        vectors.push(v);
    }
    let l = next("constraints")?;
    let nc: usize = header(l, "constraints")?.parse().map_err(|_| bad(l.0, "bad constraint count"))?;
    let mut lambda = Vec::with_capacity(nc);
    let mut errors = Vec::with_capacity(nc);
    for _ in 0..nc {
        let (line, row) = next("constraint")?;
        let (e, ls) = row.split_once('|').ok_or_else(|| bad(line, "expected `<eps> | <lambda...>`"))?;
        errors.push(num(line, e.trim())?);
        lambda.push(ls.split_whitespace().map(|s| num(line, s)).collect::<Result<Vec<_>>>()?);
    }
    Ok(SdpSolution { dimension, vectors, lambda, errors, objective, iterations: 0 })
}
