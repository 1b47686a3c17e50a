//! Permutation-symmetry projectors on `(C^d)^{⊗3}` and the `D`, `A` operators.
//!
//! `S3` and `A3` are the symmetrizer and antisymmetrizer over all six
//! permutations of the three systems; the mixed sector `M3` is their
//! complement. Sector dimensions come from traces and are cross-checked
//! against the closed-form polynomials.

use crate::error::{Error, Result};
use crate::tensor::{permutation_operator, permutation_parity, ComplexMatrix};

/// Tolerance on the distance of a sector trace from an integer.
pub const TRACE_INTEGRALITY_TOL: f64 = 1e-6;

/// `binomial(n + d - 1, d - 1)`: dimension of the symmetric subspace of `(C^d)^{⊗n}`.
pub fn symmetrizer_dim(n: usize, d: usize) -> u64 {
    assert!(n >= 1 && d >= 1);
    let (top, k) = ((n + d - 1) as u64, (d - 1) as u64);
    let k = k.min(top - k);
    (0..k).fold(1u64, |acc, i| acc * (top - i) / (i + 1))
}

/// `d(d+1)(d+2)/6`
pub fn dim_symmetric(d: u64) -> u64 {
    d * (d + 1) * (d + 2) / 6
}

/// `d(d-1)(d-2)/6`
pub fn dim_antisymmetric(d: u64) -> u64 {
    if d < 2 {
        0
    } else {
        d * (d - 1) * (d - 2) / 6
    }
}

/// `2d(d²-1)/3`
pub fn dim_mixed(d: u64) -> u64 {
    2 * d * (d * d - 1) / 3
}

/// All permutations of `0..n` in lexicographic order.
pub fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    fn extend(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                extend(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    extend(&mut Vec::with_capacity(n), &mut vec![false; n], &mut out);
    out
}

fn averaged_permutations(d: usize, n: usize, signed: bool) -> ComplexMatrix {
    let perms = all_permutations(n);
    let dim = d.pow(n as u32);
    // integer-valued sum first, one division at the end keeps d = 1 exact
    let mut out = ComplexMatrix::zeros(dim, dim);
    for p in &perms {
        let op = permutation_operator(d, n, p).expect("generated permutations are valid");
        let sign = if signed {
            permutation_parity(p).expect("valid permutation") as f64
        } else {
            1.0
        };
        out.axpy(sign, &op);
    }
    let count = perms.len() as f64;
    for z in out.as_mut_slice() {
        *z /= count;
    }
    out
}

/// Projector onto the totally symmetric subspace of `(C^d)^{⊗n}`.
pub fn symmetrizer(n: usize, d: usize) -> ComplexMatrix {
    averaged_permutations(d, n, false)
}

/// Projector onto the totally antisymmetric subspace of `(C^d)^{⊗n}`.
pub fn antisymmetrizer(n: usize, d: usize) -> ComplexMatrix {
    averaged_permutations(d, n, true)
}

/// Swap of systems 0 and 1 on `(C^d)^{⊗3}`.
pub fn transposition_01(d: usize) -> ComplexMatrix {
    permutation_operator(d, 3, &[1, 0, 2]).expect("fixed transposition")
}

/// Swap of systems 0 and 2 on `(C^d)^{⊗3}`.
pub fn transposition_02(d: usize) -> ComplexMatrix {
    permutation_operator(d, 3, &[2, 1, 0]).expect("fixed transposition")
}

/// Swap of systems 1 and 2 on `(C^d)^{⊗3}`.
pub fn transposition_12(d: usize) -> ComplexMatrix {
    permutation_operator(d, 3, &[0, 2, 1]).expect("fixed transposition")
}

fn integral_trace(m: &ComplexMatrix, sector: &'static str) -> Result<u64> {
    let trace = m.trace().re;
    let rounded = trace.round();
    if (trace - rounded).abs() > TRACE_INTEGRALITY_TOL || rounded < 0.0 {
        return Err(Error::NonIntegralTrace { sector, trace });
    }
    Ok(rounded as u64)
}

/// The decomposition `V = V_S ⊕ V_A ⊕ V_M` of `(C^d)^{⊗3}`.
#[derive(Debug, Clone)]
pub struct SymmetrySectors {
    pub d: usize,
    pub s3: ComplexMatrix,
    pub a3: ComplexMatrix,
    pub m3: ComplexMatrix,
    pub dim_s: u64,
    pub dim_a: u64,
    pub dim_m: u64,
}

impl SymmetrySectors {
    pub fn build(d: usize) -> Result<Self> {
        assert!(d >= 1, "dimension must be positive");
        let s3 = symmetrizer(3, d);
        let a3 = antisymmetrizer(3, d);
        let m3 = &(&ComplexMatrix::identity(d.pow(3)) - &s3) - &a3;
        let dim_s = integral_trace(&s3, "S3")?;
        let dim_a = integral_trace(&a3, "A3")?;
        let dim_m = integral_trace(&m3, "M3")?;
        Ok(Self {
            d,
            s3,
            a3,
            m3,
            dim_s,
            dim_a,
            dim_m,
        })
    }

    pub fn dims(&self) -> (u64, u64, u64) {
        (self.dim_s, self.dim_a, self.dim_m)
    }

    /// The three projectors in the order (S, A, M).
    pub fn projectors(&self) -> [&ComplexMatrix; 3] {
        [&self.s3, &self.a3, &self.m3]
    }
}

/// `S(01)` and `S(02)`: symmetrizers of one pair of systems, embedded in the triple space.
#[derive(Debug, Clone)]
pub struct PairSymmetrizer {
    pub d: usize,
    pub s01: ComplexMatrix,
    pub s02: ComplexMatrix,
}

impl PairSymmetrizer {
    pub fn build(d: usize) -> Self {
        let id = ComplexMatrix::identity(d.pow(3));
        let s01 = (&id + &transposition_01(d)).scale(0.5);
        let s02 = (&id + &transposition_02(d)).scale(0.5);
        Self { d, s01, s02 }
    }
}

/// `D = (T(01) - T(02))/2` and `A = (T(01) + T(02))/2`.
pub fn build_d_a(d: usize) -> (ComplexMatrix, ComplexMatrix) {
    let t01 = transposition_01(d);
    let t02 = transposition_02(d);
    ((&t01 - &t02).scale(0.5), (&t01 + &t02).scale(0.5))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::hermitian_eig;

    #[test]
    fn symmetrizer_dimensions() {
        assert_eq!(symmetrizer_dim(2, 2), 3);
        assert_eq!(symmetrizer_dim(3, 2), 4);
        for d in 1..10 {
            assert_eq!(symmetrizer_dim(1, d), d as u64);
            assert_eq!(symmetrizer_dim(2, d), (d * (d + 1) / 2) as u64);
            assert_eq!(symmetrizer_dim(3, d), dim_symmetric(d as u64));
        }
    }

    #[test]
    fn dimension_polynomials_partition_the_space() {
        for d in 1..=9u64 {
            assert_eq!(dim_symmetric(d) + dim_antisymmetric(d) + dim_mixed(d), d.pow(3));
        }
    }

    #[test]
    fn sector_dimensions_small_cases() {
        assert_eq!(SymmetrySectors::build(2).unwrap().dims(), (4, 0, 4));
        assert_eq!(SymmetrySectors::build(4).unwrap().dims(), (20, 4, 40));
        let one = SymmetrySectors::build(1).unwrap();
        assert_eq!(one.dims(), (1, 0, 0));
        assert_eq!(one.s3, ComplexMatrix::identity(1));
    }

    #[test]
    fn sectors_are_complete_orthogonal_projectors() {
        for d in 1..=3 {
            let s = SymmetrySectors::build(d).unwrap();
            let id = ComplexMatrix::identity(d.pow(3));
            let sum = &(&s.s3 + &s.a3) + &s.m3;
            assert!(sum.max_abs_diff(&id) <= 1e-12);
            for p in s.projectors() {
                assert!(p.idempotency_residual() <= 1e-12);
                assert!(p.is_hermitian(1e-12));
            }
            let [ps, pa, pm] = s.projectors();
            for (x, y) in [(ps, pa), (ps, pm), (pa, pm)] {
                assert!(x.matmul(y).max_abs() <= 1e-12);
            }
            assert_eq!(s.dim_s, dim_symmetric(d as u64));
            assert_eq!(s.dim_a, dim_antisymmetric(d as u64));
            assert_eq!(s.dim_m, dim_mixed(d as u64));
        }
    }

    #[test]
    fn pair_symmetrizer_is_a_projector() {
        for d in 1..=3 {
            let p = PairSymmetrizer::build(d);
            assert!(p.s01.idempotency_residual() <= 1e-12);
            assert!(p.s02.idempotency_residual() <= 1e-12);
            let expected = (d * d * (d + 1)) as f64 / 2.0;
            assert!((p.s01.trace().re - expected).abs() < 1e-12);
        }
    }

    #[test]
    fn d_and_a_identities() {
        for d in 1..=4 {
            let s = SymmetrySectors::build(d).unwrap();
            let (dop, aop) = build_d_a(d);
            let id = ComplexMatrix::identity(d.pow(3));
            let d2 = dop.matmul(&dop);
            assert!(d2.max_abs_diff(&s.m3.scale(0.75)) <= 1e-10);
            let anti = &dop.matmul(&aop) + &aop.matmul(&dop);
            assert!(anti.max_abs() <= 1e-10);
            assert!(aop.matmul(&aop).max_abs_diff(&(&id - &d2)) <= 1e-10);
            assert!(dop.is_hermitian(1e-14) && aop.is_hermitian(1e-14));
        }
    }

    #[test]
    fn d_vanishes_off_the_mixed_sector() {
        for d in 2..=3 {
            let s = SymmetrySectors::build(d).unwrap();
            let (dop, aop) = build_d_a(d);
            assert!(s.s3.matmul(&dop).max_abs() <= 1e-10);
            assert!(s.a3.matmul(&dop).max_abs() <= 1e-10);
            assert!(s.s3.matmul(&aop).max_abs_diff(&s.s3) <= 1e-10);
            assert!((&s.a3.matmul(&aop).matmul(&s.a3) + &s.a3).max_abs() <= 1e-10);
            assert!((&s.a3.matmul(&aop) + &s.a3).max_abs() <= 1e-10);
        }
    }

    #[test]
    fn d_spectrum_on_mixed_sector() {
        let root = 3f64.sqrt() / 2.0;
        for d in 2..=3 {
            let s = SymmetrySectors::build(d).unwrap();
            let (dop, _) = build_d_a(d);
            let compressed = s.m3.matmul(&dop).matmul(&s.m3);
            let spectrum = hermitian_eig(&compressed).unwrap();
            let half = (s.dim_m / 2) as usize;
            assert_eq!(spectrum.count(|l| (l - root).abs() < 1e-9), half);
            assert_eq!(spectrum.count(|l| (l + root).abs() < 1e-9), half);
        }
    }

    #[test]
    fn a_maps_plus_eigenvectors_to_unit_minus_eigenvectors() {
        let root = 3f64.sqrt() / 2.0;
        for d in 2..=3 {
            let (dop, aop) = build_d_a(d);
            let spectrum = hermitian_eig(&dop).unwrap();
            let mut seen = 0;
            for (k, &l) in spectrum.eigenvalues.iter().enumerate() {
                if (l - root).abs() > 1e-9 {
                    continue;
                }
                seen += 1;
                let plus = spectrum.eigenvectors.column(k);
                let minus: Vec<_> = aop.apply(&plus).into_iter().map(|z| z * 2.0).collect();
                let norm: f64 = minus.iter().map(|z| z.norm_sqr()).sum();
                assert!((norm - 1.0).abs() < 1e-10);
                let dm = dop.apply(&minus);
                for (x, y) in dm.iter().zip(&minus) {
                    assert!((x + y * root).norm() < 1e-10);
                }
            }
            assert_eq!(seen as u64, dim_mixed(d as u64) / 2);
        }
    }
}
