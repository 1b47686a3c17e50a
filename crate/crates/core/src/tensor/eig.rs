//! Hermitian eigendecomposition by cyclic complex Jacobi sweeps.
//!
//! The input is first split into the connected components of its nonzero
//! pattern. Every such component is an exact invariant block, so Jacobi runs
//! on each block separately. Operators built from permutations of tensor
//! factors decompose into very small blocks this way.

use crate::error::{Error, Result};

use super::matrix::{ComplexMatrix, C64};
use super::HERMITIAN_TOL;

/// Off-diagonal Frobenius tolerance, relative to `max(1, ‖block‖_F)`.
pub const JACOBI_TOL: f64 = 1e-12;
pub const MAX_SWEEPS: usize = 100;

/// Eigenvalues in ascending order with matching orthonormal eigenvector columns.
#[derive(Debug, Clone)]
pub struct SpectralDecomposition {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: ComplexMatrix,
}

impl SpectralDecomposition {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    /// `Σ_k λ_k v_k v_k†`
    pub fn reconstruct(&self) -> ComplexMatrix {
        let n = self.dim();
        let mut out = ComplexMatrix::zeros(n, n);
        for (k, &lambda) in self.eigenvalues.iter().enumerate() {
            add_outer(&mut out, &self.eigenvectors, k, lambda);
        }
        out
    }

    /// Sum of the eigenvalues strictly above `tol`.
    pub fn positive_sum(&self, tol: f64) -> f64 {
        self.eigenvalues.iter().filter(|&&l| l > tol).sum()
    }

    pub fn count(&self, pred: impl Fn(f64) -> bool) -> usize {
        self.eigenvalues.iter().filter(|&&l| pred(l)).count()
    }

    pub fn min(&self) -> f64 {
        self.eigenvalues.first().copied().unwrap_or(0.0)
    }

    pub fn max(&self) -> f64 {
        self.eigenvalues.last().copied().unwrap_or(0.0)
    }
}

/// Which side of zero an eigenvalue must lie on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SignSelector {
    Positive,
    Negative,
}

/// Orthogonal projector onto the span of eigenvectors with `λ > tol`
/// (or `λ < -tol`). An empty selection yields the zero matrix.
pub fn projector_onto_eigenspace(
    spectrum: &SpectralDecomposition,
    selector: SignSelector,
    tol: f64,
) -> ComplexMatrix {
    match selector {
        SignSelector::Positive => projector_where(spectrum, |l| l > tol),
        SignSelector::Negative => projector_where(spectrum, |l| l < -tol),
    }
}

pub fn projector_where(spectrum: &SpectralDecomposition, pred: impl Fn(f64) -> bool) -> ComplexMatrix {
    let n = spectrum.dim();
    let mut out = ComplexMatrix::zeros(n, n);
    for (k, &lambda) in spectrum.eigenvalues.iter().enumerate() {
        if pred(lambda) {
            add_outer(&mut out, &spectrum.eigenvectors, k, 1.0);
        }
    }
    out
}

fn add_outer(out: &mut ComplexMatrix, vecs: &ComplexMatrix, k: usize, weight: f64) {
    let support: Vec<(usize, C64)> = (0..vecs.rows())
        .map(|i| (i, vecs[(i, k)]))
        .filter(|(_, z)| z.re != 0.0 || z.im != 0.0)
        .collect();
    for &(i, vi) in &support {
        let wvi = vi * weight;
        for &(j, vj) in &support {
            out[(i, j)] += wvi * vj.conj();
        }
    }
}

pub fn hermitian_eig(h: &ComplexMatrix) -> Result<SpectralDecomposition> {
    if !h.is_square() {
        return Err(Error::DimensionMismatch {
            expected: h.rows(),
            found: h.cols(),
        });
    }
    let deviation = h.hermitian_deviation();
    if deviation > HERMITIAN_TOL {
        return Err(Error::NotHermitian { deviation });
    }
    let n = h.rows();
    let mut pairs: Vec<(f64, Vec<(usize, C64)>)> = Vec::with_capacity(n);
    for block in components(h) {
        let (values, vectors) = jacobi_block(h, &block)?;
        let m = block.len();
        for (k, value) in values.into_iter().enumerate() {
            let column = (0..m).map(|i| (block[i], vectors[i * m + k])).collect();
            pairs.push((value, column));
        }
    }
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));

    let mut eigenvectors = ComplexMatrix::zeros(n, n);
    let mut eigenvalues = Vec::with_capacity(n);
    for (k, (value, column)) in pairs.into_iter().enumerate() {
        eigenvalues.push(value);
        for (i, z) in column {
            eigenvectors[(i, k)] = z;
        }
    }
    Ok(SpectralDecomposition {
        eigenvalues,
        eigenvectors,
    })
}

/// Connected components of the graph with an edge wherever `h[i][j] != 0`.
fn components(h: &ComplexMatrix) -> Vec<Vec<usize>> {
    let n = h.rows();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for i in 0..n {
        for j in (i + 1)..n {
            let z = h[(i, j)];
            let w = h[(j, i)];
            if z.re != 0.0 || z.im != 0.0 || w.re != 0.0 || w.im != 0.0 {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                if ri != rj {
                    parent[ri.max(rj)] = ri.min(rj);
                }
            }
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut slot = vec![usize::MAX; n];
    for i in 0..n {
        let r = find(&mut parent, i);
        if slot[r] == usize::MAX {
            slot[r] = groups.len();
            groups.push(Vec::new());
        }
        groups[slot[r]].push(i);
    }
    groups
}

/// Diagonalizes the principal submatrix on `idx`; eigenvectors are returned
/// row-major as an `m × m` array of columns.
fn jacobi_block(h: &ComplexMatrix, idx: &[usize]) -> Result<(Vec<f64>, Vec<C64>)> {
    let m = idx.len();
    let mut a = vec![C64::new(0.0, 0.0); m * m];
    for (r, &i) in idx.iter().enumerate() {
        for (c, &j) in idx.iter().enumerate() {
            // symmetrize so that rounding asymmetry never stalls a rotation
            a[r * m + c] = (h[(i, j)] + h[(j, i)].conj()) * 0.5;
        }
        a[r * m + r] = C64::new(a[r * m + r].re, 0.0);
    }
    let mut v = vec![C64::new(0.0, 0.0); m * m];
    for r in 0..m {
        v[r * m + r] = C64::new(1.0, 0.0);
    }
    if m == 1 {
        return Ok((vec![a[0].re], v));
    }

    let scale = a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt().max(1.0);
    let tol = JACOBI_TOL * scale;
    let off_norm = |a: &[C64]| -> f64 {
        let mut s = 0.0;
        for r in 0..m {
            for c in 0..m {
                if r != c {
                    s += a[r * m + c].norm_sqr();
                }
            }
        }
        s.sqrt()
    };

    let mut sweeps = 0;
    loop {
        let off = off_norm(&a);
        if off <= tol {
            break;
        }
        if sweeps == MAX_SWEEPS {
            return Err(Error::NoConvergence {
                sweeps,
                residual: off,
            });
        }
        sweeps += 1;
        for p in 0..m {
            for q in (p + 1)..m {
                rotate(&mut a, &mut v, m, p, q);
            }
        }
    }
    Ok(((0..m).map(|r| a[r * m + r].re).collect(), v))
}

/// One complex Jacobi rotation annihilating `a[p][q]`.
fn rotate(a: &mut [C64], v: &mut [C64], m: usize, p: usize, q: usize) {
    let z = a[p * m + q];
    let r = z.norm();
    if r == 0.0 {
        return;
    }
    let phase = z / r; // e^{iφ}
    let app = a[p * m + p].re;
    let aqq = a[q * m + q].re;
    let theta = (aqq - app) / (2.0 * r);
    let t = if theta.abs() > 1e150 {
        0.5 / theta
    } else {
        theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
    };
    let t = if theta == 0.0 { 1.0 } else { t };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;
    // G = [[c, s], [-s e^{-iφ}, c e^{-iφ}]] acting on coordinates (p, q)
    let g_qp = -phase.conj() * s;
    let g_qq = phase.conj() * c;

    for k in 0..m {
        let akp = a[k * m + p];
        let akq = a[k * m + q];
        a[k * m + p] = akp * c + akq * g_qp;
        a[k * m + q] = akp * s + akq * g_qq;
        let vkp = v[k * m + p];
        let vkq = v[k * m + q];
        v[k * m + p] = vkp * c + vkq * g_qp;
        v[k * m + q] = vkp * s + vkq * g_qq;
    }
    for k in 0..m {
        let apk = a[p * m + k];
        let aqk = a[q * m + k];
        a[p * m + k] = apk * c + aqk * g_qp.conj();
        a[q * m + k] = apk * s + aqk * g_qq.conj();
    }
    a[p * m + q] = C64::new(0.0, 0.0);
    a[q * m + p] = C64::new(0.0, 0.0);
    a[p * m + p] = C64::new(app - t * r, 0.0);
    a[q * m + q] = C64::new(aqq + t * r, 0.0);
}
