//! Optimal global identification measurement.
//!
//! With the reference states averaged out, the success probability of a POVM
//! `{E1, 1 - E1}` is `η2 + tr[E1 Δ] / (d_1 d_2)` where
//! `Δ = η1 S(01) - η2 S(02)`. It is maximized by the projector onto the
//! positive eigenspace of `Δ`.

use rand::Rng;

use crate::error::{Error, Result};
use crate::sectors::{symmetrizer, symmetrizer_dim, PairSymmetrizer};
use crate::tensor::{
    haar_random_state, hermitian_eig, projector_onto_eigenspace, ComplexMatrix, SignSelector, C64,
};

/// An eigenvalue counts as positive iff it exceeds this.
pub const POSITIVE_EIG_TOL: f64 = 1e-9;
/// Allowed spectral slack for a POVM element outside `[0, 1]`.
pub const POVM_SPECTRUM_TOL: f64 = 1e-9;
/// Allowed deviation of `E1 + E2` from the identity.
pub const POVM_COMPLETENESS_TOL: f64 = 1e-10;

const PRIOR_SUM_TOL: f64 = 1e-12;

/// A priori probabilities of the two reference states.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PriorPair {
    eta1: f64,
    eta2: f64,
}

impl PriorPair {
    pub fn new(eta1: f64, eta2: f64) -> Result<Self> {
        let valid = eta1.is_finite()
            && eta2.is_finite()
            && eta1 >= 0.0
            && eta2 >= 0.0
            && (eta1 + eta2 - 1.0).abs() <= PRIOR_SUM_TOL;
        if !valid {
            return Err(Error::InvalidPriors { eta1, eta2 });
        }
        Ok(Self { eta1, eta2 })
    }

    /// `(η1, 1 - η1)`
    pub fn from_eta1(eta1: f64) -> Result<Self> {
        Self::new(eta1, 1.0 - eta1)
    }

    pub fn eta1(&self) -> f64 {
        self.eta1
    }

    pub fn eta2(&self) -> f64 {
        self.eta2
    }

    /// `η1 - η2`
    pub fn bias(&self) -> f64 {
        self.eta1 - self.eta2
    }

    pub fn swapped(&self) -> Self {
        Self {
            eta1: self.eta2,
            eta2: self.eta1,
        }
    }
}

/// Two-outcome POVM `{E1, E2}` on the triple space.
#[derive(Debug, Clone)]
pub struct PovmPair {
    pub e1: ComplexMatrix,
    pub e2: ComplexMatrix,
}

/// Outcome of [`PovmPair::validate`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PovmValidity {
    pub hermitian: bool,
    pub complete: bool,
    pub e1_spectrum: (f64, f64),
    pub e2_spectrum: (f64, f64),
}

impl PovmValidity {
    pub fn is_valid(&self) -> bool {
        let in_range = |(lo, hi): (f64, f64)| lo >= -POVM_SPECTRUM_TOL && hi <= 1.0 + POVM_SPECTRUM_TOL;
        self.hermitian && self.complete && in_range(self.e1_spectrum) && in_range(self.e2_spectrum)
    }
}

impl PovmPair {
    pub fn from_e1(e1: ComplexMatrix) -> Self {
        let e2 = &ComplexMatrix::identity(e1.rows()) - &e1;
        Self { e1, e2 }
    }

    pub fn validate(&self) -> Result<PovmValidity> {
        let n = self.e1.rows();
        let hermitian =
            self.e1.is_hermitian(POVM_COMPLETENESS_TOL) && self.e2.is_hermitian(POVM_COMPLETENESS_TOL);
        let complete =
            (&self.e1 + &self.e2).max_abs_diff(&ComplexMatrix::identity(n)) <= POVM_COMPLETENESS_TOL;
        if !hermitian {
            return Ok(PovmValidity {
                hermitian,
                complete,
                e1_spectrum: (f64::NAN, f64::NAN),
                e2_spectrum: (f64::NAN, f64::NAN),
            });
        }
        let s1 = hermitian_eig(&self.e1)?;
        let s2 = hermitian_eig(&self.e2)?;
        Ok(PovmValidity {
            hermitian,
            complete,
            e1_spectrum: (s1.min(), s1.max()),
            e2_spectrum: (s2.min(), s2.max()),
        })
    }
}

/// `Δ = η1 S(01) - η2 S(02)` on `(C^d)^{⊗3}`.
pub fn delta_operator(d: usize, priors: PriorPair) -> ComplexMatrix {
    let pair = PairSymmetrizer::build(d);
    let mut delta = pair.s01.scale(priors.eta1);
    delta.axpy(-priors.eta2, &pair.s02);
    delta
}

/// The two eigenvalues of `Δ` inside the mixed sector, `(λ+, λ-)`.
pub fn lambda_pm(priors: PriorPair) -> (f64, f64) {
    let bias = priors.bias();
    let root = (1.0 - priors.eta1 * priors.eta2).sqrt();
    ((bias + root) / 2.0, (bias - root) / 2.0)
}

/// `d_1 · d_2 = d · d(d+1)/2`, the normalization of `tr[E1 Δ]`.
pub fn success_normalization(d: usize) -> f64 {
    (symmetrizer_dim(1, d) * symmetrizer_dim(2, d)) as f64
}

/// `1/2 + (d+2)/(6d)|η1-η2| + (d-1)/(3d)√(1-η1η2)`
pub fn p_max_closed_form(d: usize, priors: PriorPair) -> f64 {
    let d = d as f64;
    0.5 + (d + 2.0) / (6.0 * d) * priors.bias().abs()
        + (d - 1.0) / (3.0 * d) * (1.0 - priors.eta1 * priors.eta2).sqrt()
}

/// `η2 + tr[E1 Δ] / (d_1 d_2)` for a given guess-1 element.
pub fn mean_success_probability(e1: &ComplexMatrix, d: usize, priors: PriorPair) -> Result<f64> {
    let dim = d.pow(3);
    if e1.rows() != dim || e1.cols() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: e1.rows(),
        });
    }
    let spectrum = hermitian_eig(e1)?;
    let (min, max) = (spectrum.min(), spectrum.max());
    if min < -POVM_SPECTRUM_TOL || max > 1.0 + POVM_SPECTRUM_TOL {
        return Err(Error::InvalidPovmElement { min, max });
    }
    let delta = delta_operator(d, priors);
    Ok(success_from_trace(e1.trace_product(&delta).re, d, priors))
}

/// `η2 + t / (d_1 d_2)`
pub fn success_from_trace(trace_e1_delta: f64, d: usize, priors: PriorPair) -> f64 {
    priors.eta2 + trace_e1_delta / success_normalization(d)
}

/// Everything known about the global optimum at one `(d, priors)` point.
#[derive(Debug, Clone)]
pub struct GlobalSolution {
    pub priors: PriorPair,
    pub d: usize,
    pub delta: ComplexMatrix,
    pub delta_eigenvalues: Vec<f64>,
    pub lambda_plus: f64,
    pub lambda_minus: f64,
    pub povm: PovmPair,
    /// `tr[P+ Δ]`: the sum of positive eigenvalues of `Δ`.
    pub positive_trace: f64,
    pub p_max_spectral: f64,
    pub p_max_closed: f64,
}

impl GlobalSolution {
    pub fn rank_e1(&self) -> usize {
        self.delta_eigenvalues
            .iter()
            .filter(|&&l| l > POSITIVE_EIG_TOL)
            .count()
    }
}

pub fn optimal_global_povm(d: usize, priors: PriorPair) -> Result<GlobalSolution> {
    let delta = delta_operator(d, priors);
    let spectrum = hermitian_eig(&delta)?;
    let e1 = projector_onto_eigenspace(&spectrum, SignSelector::Positive, POSITIVE_EIG_TOL);
    let positive_trace = spectrum.positive_sum(POSITIVE_EIG_TOL);
    let (lambda_plus, lambda_minus) = lambda_pm(priors);
    Ok(GlobalSolution {
        priors,
        d,
        delta,
        delta_eigenvalues: spectrum.eigenvalues,
        lambda_plus,
        lambda_minus,
        povm: PovmPair::from_e1(e1),
        positive_trace,
        p_max_spectral: success_from_trace(positive_trace, d, priors),
        p_max_closed: p_max_closed_form(d, priors),
    })
}

/// Monte Carlo estimate of `⟨ρ^{⊗n}⟩` over Haar-random pure states, returned as
/// the max-entry distance to `S_n / d_n`.
pub fn haar_average_check<R: Rng + ?Sized>(n: usize, d: usize, samples: usize, rng: &mut R) -> f64 {
    assert!(n >= 1 && samples >= 1);
    let dim = d.pow(n as u32);
    let mut acc = ComplexMatrix::zeros(dim, dim);
    for _ in 0..samples {
        let psi = haar_random_state(d, rng);
        let mut power = vec![C64::new(1.0, 0.0)];
        for _ in 0..n {
            power = power
                .iter()
                .flat_map(|a| psi.amplitudes().iter().map(move |b| a * b))
                .collect();
        }
        let slice = acc.as_mut_slice();
        for (i, vi) in power.iter().enumerate() {
            for (j, vj) in power.iter().enumerate() {
                slice[i * dim + j] += vi * vj.conj();
            }
        }
    }
    let empirical = acc.scale(1.0 / samples as f64);
    let target = symmetrizer(n, d).scale(1.0 / symmetrizer_dim(n, d) as f64);
    empirical.max_abs_diff(&target)
}
