//! Small dense linear algebra on `f64` slices.
//!
//! [`nnls`] (Lawson–Hanson nonnegative least squares) is the workhorse: cone
//! membership, separation certificates, Carathéodory supports and the width
//! of a body at an outside direction are all read off its solution.

use nalgebra::{DMatrix, DVector};

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

/// `a + s * b`
pub fn axpy(a: &[f64], s: f64, b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x + s * y).collect()
}

pub fn sub(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale(a: &[f64], s: f64) -> Vec<f64> {
    a.iter().map(|x| x * s).collect()
}

/// Returns `a / |a|`, or `None` when `|a|` is below `1e-300`.
pub fn normalized(a: &[f64]) -> Option<Vec<f64>> {
    let n = norm(a);
    if n > 1e-300 && n.is_finite() {
        Some(scale(a, 1.0 / n))
    } else {
        None
    }
}

/// Solution of a nonnegative least-squares problem `min |A x - b|, x >= 0`.
#[derive(Debug, Clone)]
pub struct NnlsSolution {
    /// Nonnegative coefficients, one per column.
    pub weights: Vec<f64>,
    /// `b - A x` at the optimum.
    pub residual: Vec<f64>,
    pub residual_norm: f64,
    /// Indices of the strictly positive coefficients (the passive set).
    pub support: Vec<usize>,
}

impl NnlsSolution {
    /// `A x` at the optimum.
    pub fn fitted(&self, b: &[f64]) -> Vec<f64> {
        sub(b, &self.residual)
    }
}

fn least_squares(cols: &[&[f64]], passive: &[usize], b: &[f64]) -> Vec<f64> {
    let m = b.len();
    let a = DMatrix::from_fn(m, passive.len(), |i, j| cols[passive[j]][i]);
    let rhs = DVector::from_column_slice(b);
    let svd = a.svd(true, true);
    match svd.solve(&rhs, 1e-13) {
        Ok(x) => x.iter().copied().collect(),
        Err(_) => vec![0.0; passive.len()],
    }
}

/// Lawson–Hanson active-set NNLS. Columns are given as slices of equal length
/// `b.len()`. The passive set stays linearly independent, so at most `b.len()`
/// coefficients are positive.
pub fn nnls(cols: &[&[f64]], b: &[f64]) -> NnlsSolution {
    let n = cols.len();
    let m = b.len();
    let col_scale = cols
        .iter()
        .map(|c| norm(c))
        .fold(0.0_f64, f64::max)
        .max(1e-300);
    let tol = 1e-13 * col_scale * norm(b).max(1.0);

    let mut x = vec![0.0; n];
    let mut in_passive = vec![false; n];
    // columns whose entry was immediately undone by round-off; skipped until
    // the passive set changes
    let mut blocked = vec![false; n];
    let mut passive: Vec<usize> = Vec::with_capacity(m + 1);
    let mut residual = b.to_vec();
    let max_outer = 3 * n + 30;

    for _ in 0..max_outer {
        // dual vector w = A^T r restricted to the active set
        let mut best = None;
        let mut best_w = tol;
        for j in 0..n {
            if !in_passive[j] && !blocked[j] {
                let w = dot(cols[j], &residual);
                if w > best_w {
                    best_w = w;
                    best = Some(j);
                }
            }
        }
        let Some(entering) = best else { break };
        in_passive[entering] = true;
        passive.push(entering);

        let mut inner_guard = 0;
        loop {
            inner_guard += 1;
            let s = least_squares(cols, &passive, b);
            if s.iter().all(|&v| v > 0.0) || inner_guard > 3 * m + 10 {
                for (k, &j) in passive.iter().enumerate() {
                    x[j] = s[k].max(0.0);
                }
                break;
            }
            let mut alpha = f64::INFINITY;
            for (k, &j) in passive.iter().enumerate() {
                if s[k] <= 0.0 {
                    let denom = x[j] - s[k];
                    let a = if denom > 0.0 { x[j] / denom } else { 0.0 };
                    alpha = alpha.min(a);
                }
            }
            for (k, &j) in passive.iter().enumerate() {
                x[j] += alpha * (s[k] - x[j]);
            }
            let mut kept = Vec::with_capacity(passive.len());
            for &j in &passive {
                if x[j] <= 1e-15 {
                    x[j] = 0.0;
                    in_passive[j] = false;
                } else {
                    kept.push(j);
                }
            }
            // every passive coefficient hit zero
            if kept.is_empty() {
                passive.clear();
                break;
            }
            passive = kept;
        }
        if in_passive[entering] {
            blocked.iter_mut().for_each(|b| *b = false);
        } else {
            blocked[entering] = true;
        }

        residual = b.to_vec();
        for &j in &passive {
            for i in 0..m {
                residual[i] -= x[j] * cols[j][i];
            }
        }
    }

    let residual_norm = norm(&residual);
    let support = passive.into_iter().filter(|&j| x[j] > 0.0).collect();
    NnlsSolution {
        weights: x,
        residual,
        residual_norm,
        support,
    }
}

/// Least-distance programming: the minimum-norm `m` with `<m, v_i> >= 1` for
/// every column `v_i`, or `None` when no such `m` exists (the columns do not
/// lie in an open half-space).
pub fn least_distance(cols: &[&[f64]]) -> Option<Vec<f64>> {
    let m = cols.first()?.len();
    let augmented: Vec<Vec<f64>> = cols
        .iter()
        .map(|c| {
            let mut v = c.to_vec();
            v.push(1.0);
            v
        })
        .collect();
    let refs: Vec<&[f64]> = augmented.iter().map(|v| v.as_slice()).collect();
    let mut f = vec![0.0; m + 1];
    f[m] = 1.0;
    let sol = nnls(&refs, &f);
    // r = E u - f
    let r: Vec<f64> = sol.residual.iter().map(|v| -v).collect();
    if sol.residual_norm < 1e-12 || r[m] > -1e-14 {
        return None;
    }
    Some(r[..m].iter().map(|v| v / -r[m]).collect())
}

/// Orthonormal basis of the orthogonal complement of `span(vectors)` in
/// `R^dim`. Vectors of (numerically) dependent input are skipped.
pub fn orthonormal_complement(vectors: &[&[f64]], dim: usize) -> Vec<Vec<f64>> {
    let mut basis: Vec<Vec<f64>> = Vec::new();
    let push = |basis: &mut Vec<Vec<f64>>, v: &[f64], thresh: f64| -> bool {
        let mut w = v.to_vec();
        for _ in 0..2 {
            for b in basis.iter() {
                let c = dot(&w, b);
                for i in 0..w.len() {
                    w[i] -= c * b[i];
                }
            }
        }
        let n = norm(&w);
        if n > thresh {
            basis.push(scale(&w, 1.0 / n));
            true
        } else {
            false
        }
    };
    for v in vectors {
        let n = norm(v);
        push(&mut basis, v, 1e-10 * n.max(1e-300));
    }
    let span_rank = basis.len();
    for i in 0..dim {
        if basis.len() == dim {
            break;
        }
        let mut e = vec![0.0; dim];
        e[i] = 1.0;
        push(&mut basis, &e, 1e-6);
    }
    basis.split_off(span_rank)
}

/// Numerical rank of a set of vectors.
pub fn rank(vectors: &[&[f64]], dim: usize) -> usize {
    dim - orthonormal_complement(vectors, dim).len()
}

/// Unit normal of the hyperplane spanned by `dim - 1` vectors in `R^dim`,
/// or `None` when they are dependent.
pub fn hyperplane_normal(vectors: &[&[f64]], dim: usize) -> Option<Vec<f64>> {
    let comp = orthonormal_complement(vectors, dim);
    if comp.len() == 1 {
        comp.into_iter().next()
    } else {
        None
    }
}

/// Orthogonal projection of `x` onto `span(basis)` for an orthonormal basis.
pub fn project(x: &[f64], basis: &[Vec<f64>]) -> Vec<f64> {
    let mut out = vec![0.0; x.len()];
    for b in basis {
        let c = dot(x, b);
        for i in 0..out.len() {
            out[i] += c * b[i];
        }
    }
    out
}

/// QR-orthonormalization of a square matrix given column-major; used to turn
/// a Gaussian matrix into a random orthogonal one.
pub fn orthonormalize_square(cols: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let n = cols.len();
    let a = DMatrix::from_fn(n, n, |i, j| cols[j][i]);
    let qr = a.qr();
    let q = qr.q();
    let r = qr.r();
    (0..n)
        .map(|j| {
            // sign fix so the distribution is Haar
            let s = if r[(j, j)] < 0.0 { -1.0 } else { 1.0 };
            (0..n).map(|i| s * q[(i, j)]).collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nnls_interior_point_has_zero_residual() {
        let e1 = [1.0, 0.0, 0.0];
        let e2 = [0.0, 1.0, 0.0];
        let e3 = [0.0, 0.0, 1.0];
        let cols: Vec<&[f64]> = vec![&e1, &e2, &e3];
        let s = nnls(&cols, &[0.2, 0.3, 0.5]);
        assert!(s.residual_norm < 1e-14);
        assert!((s.weights[0] - 0.2).abs() < 1e-14);
        assert_eq!(s.support.len(), 3);
    }

    #[test]
    fn nnls_outside_point_gives_separating_residual() {
        let e1 = [1.0, 0.0, 0.0];
        let e2 = [0.0, 1.0, 0.0];
        let cols: Vec<&[f64]> = vec![&e1, &e2];
        let b = [-1.0, 0.5, 0.25];
        let s = nnls(&cols, &b);
        assert!((s.weights[0]).abs() < 1e-15);
        assert!((s.weights[1] - 0.5).abs() < 1e-14);
        // KKT: A^T r <= 0 and <r, b> = |r|^2 > 0
        assert!(dot(&e1, &s.residual) <= 1e-14);
        assert!(dot(&e2, &s.residual) <= 1e-14);
        assert!((dot(&s.residual, &b) - s.residual_norm.powi(2)).abs() < 1e-14);
    }

    #[test]
    fn least_distance_finds_positive_direction() {
        let a = [1.0, 0.0];
        let b = [0.0, 1.0];
        let m = least_distance(&[&a, &b]).unwrap();
        assert!((m[0] - 1.0).abs() < 1e-12 && (m[1] - 1.0).abs() < 1e-12);
        let c = [-1.0, 0.0];
        assert!(least_distance(&[&a, &c]).is_none());
    }

    #[test]
    fn complement_and_normal() {
        let a = [1.0, 0.0, 0.0, 0.0];
        let b = [0.0, 1.0, 0.0, 0.0];
        let comp = orthonormal_complement(&[&a, &b], 4);
        assert_eq!(comp.len(), 2);
        for c in &comp {
            assert!(dot(c, &a).abs() < 1e-15 && dot(c, &b).abs() < 1e-15);
        }
        let c = [0.0, 0.0, 1.0, 0.0];
        let n = hyperplane_normal(&[&a, &b, &c], 4).unwrap();
        assert!((n[3].abs() - 1.0).abs() < 1e-15);
        assert_eq!(rank(&[&a, &b, &a], 4), 2);
    }
}
