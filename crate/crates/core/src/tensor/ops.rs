use crate::error::{Error, Result};

use super::matrix::{ComplexMatrix, C64};

/// Kronecker product `a ⊗ b`, with `a`'s index as the most significant digit.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let (ar, ac) = (a.rows(), a.cols());
    let (br, bc) = (b.rows(), b.cols());
    let mut out = ComplexMatrix::zeros(ar * br, ac * bc);
    for i in 0..ar {
        for j in 0..ac {
            let aij = a[(i, j)];
            if aij.re == 0.0 && aij.im == 0.0 {
                continue;
            }
            for k in 0..br {
                for l in 0..bc {
                    out[(i * br + k, j * bc + l)] = aij * b[(k, l)];
                }
            }
        }
    }
    out
}

fn check_permutation(perm: &[usize]) -> Result<()> {
    let mut seen = vec![false; perm.len()];
    for &p in perm {
        if p >= perm.len() || std::mem::replace(&mut seen[p], true) {
            return Err(Error::InvalidPermutation {
                perm: perm.to_vec(),
                len: perm.len(),
            });
        }
    }
    Ok(())
}

/// Sign of a permutation as +1 / -1.
pub fn permutation_parity(perm: &[usize]) -> Result<i32> {
    check_permutation(perm)?;
    let mut visited = vec![false; perm.len()];
    let mut sign = 1;
    for start in 0..perm.len() {
        let mut len = 0;
        let mut j = start;
        while !visited[j] {
            visited[j] = true;
            j = perm[j];
            len += 1;
        }
        if len > 0 && len % 2 == 0 {
            sign = -sign;
        }
    }
    Ok(sign)
}

/// Basis relabelling induced by moving tensor factor `j` to position `perm[j]`.
///
/// Returns `map` with `map[old_index] = new_index`; factor dimensions may differ.
pub fn factor_permutation_indices(dims: &[usize], perm: &[usize]) -> Result<Vec<usize>> {
    if perm.len() != dims.len() {
        return Err(Error::InvalidPermutation {
            perm: perm.to_vec(),
            len: dims.len(),
        });
    }
    check_permutation(perm)?;
    let n = dims.len();
    let mut new_dims = vec![0; n];
    for j in 0..n {
        new_dims[perm[j]] = dims[j];
    }
    let total: usize = dims.iter().product();
    let mut digits = vec![0usize; n];
    let mut new_digits = vec![0usize; n];
    let mut map = Vec::with_capacity(total);
    for mut idx in 0..total {
        for j in (0..n).rev() {
            digits[j] = idx % dims[j];
            idx /= dims[j];
        }
        for j in 0..n {
            new_digits[perm[j]] = digits[j];
        }
        let mut new_idx = 0;
        for j in 0..n {
            new_idx = new_idx * new_dims[j] + new_digits[j];
        }
        map.push(new_idx);
    }
    Ok(map)
}

/// Permutation operator on `(C^d)^{⊗n}` sending `|i_0 … i_{n-1}>` to
/// `|i_{perm⁻¹(0)} … i_{perm⁻¹(n-1)}>`, i.e. factor `j` lands in slot `perm[j]`.
pub fn permutation_operator(d: usize, n: usize, perm: &[usize]) -> Result<ComplexMatrix> {
    if perm.len() != n {
        return Err(Error::InvalidPermutation {
            perm: perm.to_vec(),
            len: n,
        });
    }
    let map = factor_permutation_indices(&vec![d; n], perm)?;
    let mut out = ComplexMatrix::zeros(map.len(), map.len());
    for (old, &new) in map.iter().enumerate() {
        out[(new, old)] = C64::new(1.0, 0.0);
    }
    Ok(out)
}

/// Conjugates `m` by the permutation matrix `W` defined by `map`: returns `W m W†`.
pub fn permute_basis(m: &ComplexMatrix, map: &[usize]) -> ComplexMatrix {
    assert_eq!(m.rows(), map.len());
    assert_eq!(m.cols(), map.len());
    let mut out = ComplexMatrix::zeros(m.rows(), m.cols());
    for (i, &ni) in map.iter().enumerate() {
        for (j, &nj) in map.iter().enumerate() {
            out[(ni, nj)] = m[(i, j)];
        }
    }
    out
}

/// Traces out every factor not listed in `keep` (strictly increasing factor
/// positions). The result keeps the surviving factors in their original order.
pub fn partial_trace(m: &ComplexMatrix, dims: &[usize], keep: &[usize]) -> Result<ComplexMatrix> {
    let total: usize = dims.iter().product();
    if !m.is_square() || m.rows() != total {
        return Err(Error::DimensionMismatch {
            expected: total,
            found: m.rows(),
        });
    }
    if keep.windows(2).any(|w| w[0] >= w[1]) || keep.iter().any(|&k| k >= dims.len()) {
        return Err(Error::InvalidLayout(format!(
            "kept factors {keep:?} must be strictly increasing positions below {}",
            dims.len()
        )));
    }
    let kept_dim: usize = keep.iter().map(|&k| dims[k]).product();
    let traced_dim = total / kept_dim;

    // compose[k * traced_dim + t] = full index with kept digits k and traced digits t
    let mut compose = vec![0usize; total];
    let n = dims.len();
    let mut digits = vec![0usize; n];
    for full in 0..total {
        let mut rest = full;
        for j in (0..n).rev() {
            digits[j] = rest % dims[j];
            rest /= dims[j];
        }
        let (mut k, mut t) = (0usize, 0usize);
        for j in 0..n {
            if keep.contains(&j) {
                k = k * dims[j] + digits[j];
            } else {
                t = t * dims[j] + digits[j];
            }
        }
        compose[k * traced_dim + t] = full;
    }

    let mut out = ComplexMatrix::zeros(kept_dim, kept_dim);
    for ki in 0..kept_dim {
        for kj in 0..kept_dim {
            let mut acc = C64::new(0.0, 0.0);
            for t in 0..traced_dim {
                acc += m[(compose[ki * traced_dim + t], compose[kj * traced_dim + t])];
            }
            out[(ki, kj)] = acc;
        }
    }
    Ok(out)
}
