#![allow(dead_code)]

use locc_ident::tensor::{ComplexMatrix, C64};
use locc_ident::PriorPair;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn p(eta1: f64) -> PriorPair {
    PriorPair::from_eta1(eta1).unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_complex<R: Rng>(rng: &mut R) -> C64 {
    C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
}

pub fn random_matrix<R: Rng>(n: usize, rng: &mut R) -> ComplexMatrix {
    let data = (0..n * n).map(|_| random_complex(rng)).collect();
    ComplexMatrix::from_vec(n, n, data).unwrap()
}

pub fn random_hermitian<R: Rng>(n: usize, rng: &mut R) -> ComplexMatrix {
    let m = random_matrix(n, rng);
    (&m + &m.adjoint()).scale(0.5)
}

/// Determinant by Gaussian elimination with partial pivoting.
#[allow(clippy::needless_range_loop)]
pub fn determinant(m: &ComplexMatrix) -> C64 {
    let n = m.rows();
    let mut a: Vec<Vec<C64>> = (0..n).map(|i| m.row(i).to_vec()).collect();
    let mut det = C64::new(1.0, 0.0);
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| a[i][col].norm().total_cmp(&a[j][col].norm()))
            .unwrap();
        if a[pivot][col].norm() == 0.0 {
            return C64::new(0.0, 0.0);
        }
        if pivot != col {
            a.swap(pivot, col);
            det = -det;
        }
        det *= a[col][col];
        for r in col + 1..n {
            let f = a[r][col] / a[col][col];
            for c in col..n {
                let v = a[col][c];
                a[r][c] -= f * v;
            }
        }
    }
    det
}

/// Plain triple-loop product, no sparsity shortcuts.
pub fn naive_matmul(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let mut out = ComplexMatrix::zeros(a.rows(), b.cols());
    for i in 0..a.rows() {
        for j in 0..b.cols() {
            let mut s = C64::new(0.0, 0.0);
            for k in 0..a.cols() {
                s += a[(i, k)] * b[(k, j)];
            }
            out[(i, j)] = s;
        }
    }
    out
}

/// Basis permutation built from explicit digit manipulation: factor `j`
/// of `|i_0 … i_{n-1}>` moves to slot `perm[j]`.
pub fn brute_force_permutation(d: usize, n: usize, perm: &[usize]) -> ComplexMatrix {
    let dim = d.pow(n as u32);
    let mut out = ComplexMatrix::zeros(dim, dim);
    for old in 0..dim {
        let mut digits = vec![0; n];
        let mut x = old;
        for slot in (0..n).rev() {
            digits[slot] = x % d;
            x /= d;
        }
        let mut moved = vec![0; n];
        for j in 0..n {
            moved[perm[j]] = digits[j];
        }
        let new = moved.iter().fold(0, |acc, &v| acc * d + v);
        out[(new, old)] = C64::new(1.0, 0.0);
    }
    out
}

/// Sorted real eigenvalues compared as multisets.
pub fn multiset_distance(mut a: Vec<f64>, mut b: Vec<f64>) -> f64 {
    assert_eq!(a.len(), b.len());
    a.sort_by(f64::total_cmp);
    b.sort_by(f64::total_cmp);
    a.iter().zip(&b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}
