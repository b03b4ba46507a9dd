//! Small dense helpers on top of `faer`.

use faer::linalg::solvers::{DenseSolveCore, Solve};
use faer::{Mat, Side};

use crate::error::{Error, Result};

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

pub fn scale(a: &[f64], s: f64) -> Vec<f64> {
    a.iter().map(|x| x * s).collect()
}

pub fn add(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Pads or truncates `v` to length `d`.
pub fn resized(v: &[f64], d: usize) -> Vec<f64> {
    let mut out = v.to_vec();
    out.resize(d, 0.0);
    out
}

/// Gram matrix of a list of vectors.
pub fn gram(vs: &[Vec<f64>]) -> Mat<f64> {
    Mat::from_fn(vs.len(), vs.len(), |i, j| dot(&vs[i], &vs[j]))
}

pub fn from_rows(rows: &[Vec<f64>]) -> Mat<f64> {
    let c = rows.first().map_or(0, Vec::len);
    Mat::from_fn(rows.len(), c, |i, j| rows[i][j])
}

pub fn to_rows(m: &Mat<f64>) -> Vec<Vec<f64>> {
    (0..m.nrows()).map(|i| (0..m.ncols()).map(|j| m[(i, j)]).collect()).collect()
}

pub fn symmetrize(m: &mut Mat<f64>) {
    for i in 0..m.nrows() {
        for j in 0..i {
            let v = 0.5 * (m[(i, j)] + m[(j, i)]);
            m[(i, j)] = v;
            m[(j, i)] = v;
        }
    }
}

/// Eigenvalues in increasing order and the matching orthonormal eigenvectors as columns.
pub fn sym_eigen(m: &Mat<f64>) -> Result<(Vec<f64>, Mat<f64>)> {
    let e = m
        .self_adjoint_eigen(Side::Lower)
        .map_err(|_| Error::Dimension("symmetric eigendecomposition did not converge".into()))?;
    let vals = e.S().column_vector().iter().copied().collect();
    Ok((vals, e.U().to_owned()))
}

pub fn min_eigenvalue(m: &Mat<f64>) -> Result<f64> {
    let vals = m
        .self_adjoint_eigenvalues(Side::Lower)
        .map_err(|_| Error::Dimension("symmetric eigendecomposition did not converge".into()))?;
    Ok(vals.first().copied().unwrap_or(0.0))
}

/// Rows `v_i` with `v_i·v_j ≈ m_ij`, from the eigendecomposition with
/// negative eigenvalues clipped to zero. Row length equals the matrix size.
pub fn psd_factor(m: &Mat<f64>) -> Result<Vec<Vec<f64>>> {
    let (vals, u) = sym_eigen(m)?;
    let n = m.nrows();
    Ok((0..n)
        .map(|i| (0..n).map(|j| u[(i, j)] * vals[j].max(0.0).sqrt()).collect())
        .collect())
}

/// Orthogonal polar factor `U Vᵀ` of a square matrix.
pub fn polar(m: &Mat<f64>) -> Result<Mat<f64>> {
    let s = m.svd().map_err(|_| Error::Dimension("svd did not converge".into()))?;
    Ok(s.U() * s.V().transpose())
}

/// Orthogonal `H` minimizing `‖H a_j − b_j‖` over column pairs, with `a`, `b`
/// given as lists of vectors of length `d`.
pub fn procrustes(a: &[Vec<f64>], b: &[Vec<f64>], d: usize) -> Result<Mat<f64>> {
    let mut cross = Mat::<f64>::zeros(d, d);
    for (x, y) in a.iter().zip(b) {
        for i in 0..d {
            if y[i] == 0.0 {
                continue;
            }
            for j in 0..d {
                cross[(i, j)] += y[i] * x[j];
            }
        }
    }
    polar(&cross)
}

pub fn apply(h: &Mat<f64>, v: &[f64]) -> Vec<f64> {
    (0..h.nrows()).map(|i| (0..h.ncols()).map(|j| h[(i, j)] * v[j]).sum()).collect()
}

/// Reflection mapping unit vector `v` to the first basis vector.
pub fn reflect_to_first_axis(v: &[f64]) -> Mat<f64> {
    let d = v.len();
    let mut u = v.to_vec();
    u[0] -= 1.0;
    let nu = dot(&u, &u);
    if nu < 1e-30 {
        return Mat::identity(d, d);
    }
    Mat::from_fn(d, d, |i, j| f64::from(u8::from(i == j)) - 2.0 * u[i] * u[j] / nu)
}

/// Orthonormal basis of the orthogonal complement of `vs` in `R^d`.
pub fn complement_basis(vs: &[Vec<f64>], d: usize) -> Vec<Vec<f64>> {
    let mut basis: Vec<Vec<f64>> = Vec::new();
    let mut taken: Vec<Vec<f64>> = Vec::new();
    for v in vs {
        let mut r = v.clone();
        for b in &taken {
            let c = dot(&r, b);
            r = sub(&r, &scale(b, c));
        }
        let nr = norm(&r);
        if nr > 1e-10 {
            taken.push(scale(&r, 1.0 / nr));
        }
    }
    for i in 0..d {
        let mut r = vec![0.0; d];
        r[i] = 1.0;
        for _ in 0..2 {
            for b in taken.iter().chain(&basis) {
                let c = dot(&r, b);
                r = sub(&r, &scale(b, c));
            }
        }
        let nr = norm(&r);
        if nr > 1e-6 {
            basis.push(scale(&r, 1.0 / nr));
        }
    }
    basis
}

/// Cholesky solve with a tiny diagonal shift as fallback.
pub fn spd_solve(m: &Mat<f64>, rhs: &mut Mat<f64>) -> Result<()> {
    if let Ok(l) = m.llt(Side::Lower) {
        l.solve_in_place(rhs.as_mut());
        return Ok(());
    }
    let maxd = (0..m.nrows()).map(|i| m[(i, i)].abs()).fold(0.0, f64::max).max(1e-300);
    let mut shifted = m.clone();
    for i in 0..m.nrows() {
        shifted[(i, i)] += 1e-13 * maxd;
    }
    let l = shifted
        .llt(Side::Lower)
        .map_err(|_| Error::Dimension("matrix is not positive definite".into()))?;
    l.solve_in_place(rhs.as_mut());
    Ok(())
}

/// Inverse of a symmetric positive definite matrix.
pub fn spd_inverse(m: &Mat<f64>) -> Result<Mat<f64>> {
    let l = m.llt(Side::Lower).map_err(|_| Error::Dimension("matrix is not positive definite".into()))?;
    let mut inv = l.inverse();
    symmetrize(&mut inv);
    Ok(inv)
}

/// Largest step `a ≤ 1` with `x + a·dx ⪰ 0`, damped by `fraction`.
pub fn psd_step(x: &Mat<f64>, dx: &Mat<f64>, fraction: f64) -> Result<f64> {
    let l = x.llt(Side::Lower).map_err(|_| Error::Dimension("iterate lost positive definiteness".into()))?;
    let lm = l.L();
    // L⁻¹ dX L⁻ᵀ via two triangular solves.
    let mut t = dx.clone();
    faer::linalg::triangular_solve::solve_lower_triangular_in_place(lm, t.as_mut(), faer::Par::Seq);
    let mut t = t.transpose().to_owned();
    faer::linalg::triangular_solve::solve_lower_triangular_in_place(lm, t.as_mut(), faer::Par::Seq);
    symmetrize(&mut t);
    let lmin = min_eigenvalue(&t)?;
    Ok(if lmin >= 0.0 { 1.0 } else { (fraction * -1.0 / lmin).min(1.0) })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factor_reproduces_gram() {
        let vs = vec![vec![1.0, 0.0, 0.0], vec![0.6, 0.8, 0.0], vec![0.0, 0.6, 0.8]];
        let g = gram(&vs);
        let f = psd_factor(&g).unwrap();
        let g2 = gram(&f);
        for i in 0..3 {
            for j in 0..3 {
                assert!((g[(i, j)] - g2[(i, j)]).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn reflection_and_procrustes() {
        let v = vec![0.0, 0.6, 0.8];
        let h = reflect_to_first_axis(&v);
        let r = apply(&h, &v);
        assert!((r[0] - 1.0).abs() < 1e-12 && r[1].abs() < 1e-12 && r[2].abs() < 1e-12);

        let a = vec![vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 0.0]];
        let b: Vec<Vec<f64>> = a.iter().map(|x| apply(&h, x)).collect();
        let q = procrustes(&a, &b, 3).unwrap();
        for (x, y) in a.iter().zip(&b) {
            assert!(norm(&sub(&apply(&q, x), y)) < 1e-12);
        }
    }

    #[test]
    fn step_to_boundary() {
        let x = Mat::<f64>::identity(2, 2);
        let dx = Mat::from_fn(2, 2, |i, j| if i == j { -2.0 } else { 0.0 });
        assert!((psd_step(&x, &dx, 1.0).unwrap() - 0.5).abs() < 1e-12);
    }

    #[test]
    fn complement_is_orthogonal() {
        let vs = vec![vec![1.0, 1.0, 0.0, 0.0]];
        let c = complement_basis(&vs, 4);
        assert_eq!(c.len(), 3);
        for b in &c {
            assert!(dot(b, &vs[0]).abs() < 1e-12);
        }
    }
}
