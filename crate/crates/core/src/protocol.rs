//! Monte Carlo simulation of the identification game.
//!
//! Each trial draws two Haar-random reference states, picks the true label
//! from the priors, and measures `|φ_label> ⊗ |φ1> ⊗ |φ2>` either with the
//! global POVM or with the sequential local protocol. Trial `i` uses its own
//! ChaCha stream `(seed, i)`, so results do not depend on the thread count.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::global::{optimal_global_povm, p_max_closed_form, GlobalSolution, PovmPair, PriorPair};
use crate::locc::{build_e1_locc, LoccPovm, Party};
use crate::tensor::{haar_random_state, ComplexMatrix, HilbertLayout, PureState, C64};

/// Branches below this probability are never selected.
pub const MIN_BRANCH_PROBABILITY: f64 = 1e-14;
const COMPLETENESS_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Global,
    Locc,
}

impl Mode {
    pub fn name(&self) -> &'static str {
        match self {
            Mode::Global => "global",
            Mode::Locc => "locc",
        }
    }
}

/// Per-trial random stream derived from `(seed, index)`.
pub fn trial_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// One identification instance.
#[derive(Debug, Clone)]
pub struct Instance {
    pub layout: HilbertLayout,
    pub true_label: u8,
    pub phi1: PureState,
    pub phi2: PureState,
    /// `|φ_label> ⊗ |φ1> ⊗ |φ2>` in canonical factor order.
    pub joint_state: PureState,
}

impl Instance {
    pub fn from_states(layout: HilbertLayout, true_label: u8, phi1: PureState, phi2: PureState) -> Self {
        assert!(true_label == 1 || true_label == 2);
        let input = if true_label == 1 { &phi1 } else { &phi2 };
        let joint_state = input.tensor(&phi1).tensor(&phi2);
        Self {
            layout,
            true_label,
            phi1,
            phi2,
            joint_state,
        }
    }
}

pub fn prepare_instance<R: Rng + ?Sized>(layout: HilbertLayout, priors: PriorPair, rng: &mut R) -> Instance {
    let phi1 = haar_random_state(layout.d(), rng);
    let phi2 = haar_random_state(layout.d(), rng);
    let true_label = if rng.random::<f64>() < priors.eta1() { 1 } else { 2 };
    Instance::from_states(layout, true_label, phi1, phi2)
}

/// Who performed a measurement round.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Actor {
    Alice,
    Bob,
    Joint,
}

impl From<Party> for Actor {
    fn from(p: Party) -> Self {
        match p {
            Party::Alice => Actor::Alice,
            Party::Bob => Actor::Bob,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MeasurementKind {
    /// `{S3, A3, M3}`: outcome 0, 1, 2.
    Symmetry,
    /// `{P+, P-}` inside the mixed sector: outcome 0 = +, 1 = -.
    PBasis,
    /// `{Q+, Q-}` inside the mixed sector: outcome 0 = +, 1 = -.
    QBasis,
    /// `{E1, E2}` on the whole space: outcome 0 = guess 1.
    Global,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Round {
    pub actor: Actor,
    pub measurement: MeasurementKind,
    pub outcome: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TrialRecord {
    pub true_label: u8,
    pub transcript: Vec<Round>,
    pub guess: u8,
    pub success: bool,
}

impl TrialRecord {
    fn new(true_label: u8, transcript: Vec<Round>, guess: u8) -> Self {
        Self {
            true_label,
            transcript,
            guess,
            success: guess == true_label,
        }
    }
}

/// Anything that can act as a projector on a state vector.
pub trait Projection {
    fn project(&self, v: &[C64]) -> Vec<C64>;
}

impl Projection for ComplexMatrix {
    fn project(&self, v: &[C64]) -> Vec<C64> {
        self.apply(v)
    }
}

impl<T: Projection + ?Sized> Projection for &T {
    fn project(&self, v: &[C64]) -> Vec<C64> {
        (**self).project(v)
    }
}

/// An operator on one party's three factors, acting on a joint vector in
/// interleaved order (Alice index major, Bob index minor).
#[derive(Debug, Clone, Copy)]
pub struct LocalOperator<'a> {
    pub party: Party,
    pub op: &'a ComplexMatrix,
    pub alice_dim: usize,
    pub bob_dim: usize,
}

impl Projection for LocalOperator<'_> {
    fn project(&self, v: &[C64]) -> Vec<C64> {
        let (na, nb) = (self.alice_dim, self.bob_dim);
        debug_assert_eq!(v.len(), na * nb);
        let mut out = vec![C64::new(0.0, 0.0); v.len()];
        match self.party {
            Party::Alice => {
                for i in 0..na {
                    let row = self.op.row(i);
                    for (k, &o) in row.iter().enumerate() {
                        if o.re == 0.0 && o.im == 0.0 {
                            continue;
                        }
                        for j in 0..nb {
                            out[i * nb + j] += o * v[k * nb + j];
                        }
                    }
                }
            }
            Party::Bob => {
                for i in 0..na {
                    let src = &v[i * nb..(i + 1) * nb];
                    for j in 0..nb {
                        out[i * nb + j] = self.op.row(j).iter().zip(src).map(|(a, b)| a * b).sum();
                    }
                }
            }
        }
        out
    }
}

/// Born-rule projective measurement. Returns the outcome index and the
/// normalized post-measurement state.
pub fn projective_measure<P: Projection, R: Rng + ?Sized>(
    state: &PureState,
    projectors: &[P],
    rng: &mut R,
) -> Result<(usize, PureState)> {
    let branches: Vec<Vec<C64>> = projectors.iter().map(|p| p.project(state.amplitudes())).collect();
    let probs: Vec<f64> = branches
        .iter()
        .map(|b| b.iter().map(|z| z.norm_sqr()).sum())
        .collect();
    let total: f64 = probs.iter().sum();
    if (total - 1.0).abs() > COMPLETENESS_TOL {
        return Err(Error::IncompleteMeasurement { total });
    }
    let valid_total: f64 = probs.iter().filter(|&&p| p >= MIN_BRANCH_PROBABILITY).sum();
    if valid_total <= 0.0 {
        return Err(Error::DegenerateOutcome);
    }
    let mut u = rng.random::<f64>() * valid_total;
    let mut chosen = None;
    for (k, &p) in probs.iter().enumerate() {
        if p < MIN_BRANCH_PROBABILITY {
            continue;
        }
        chosen = Some(k);
        if u < p {
            break;
        }
        u -= p;
    }
    let k = chosen.ok_or(Error::DegenerateOutcome)?;
    let collapsed = PureState::normalized(branches.into_iter().nth(k).expect("index in range"))?;
    Ok((k, collapsed))
}

/// Draws a guess with probability `<ψ|E_μ|ψ>`.
pub fn run_global<R: Rng + ?Sized>(
    instance: &Instance,
    solution: &GlobalSolution,
    rng: &mut R,
) -> TrialRecord {
    assert_eq!(
        instance.layout.d(),
        solution.d,
        "instance and solution disagree on d"
    );
    let p1 = solution
        .povm
        .e1
        .expectation(instance.joint_state.amplitudes())
        .re
        .clamp(0.0, 1.0);
    let guess = if rng.random::<f64>() < p1 { 1 } else { 2 };
    let transcript = vec![Round {
        actor: Actor::Joint,
        measurement: MeasurementKind::Global,
        outcome: (guess - 1) as usize,
    }];
    TrialRecord::new(instance.true_label, transcript, guess)
}

const SYM: usize = 0;
const ANTI: usize = 1;
const MIXED: usize = 2;
const PLUS: usize = 0;
const MINUS: usize = 1;

/// Runs the local protocol: both parties measure their permutation sector
/// (Alice first), then a party holding a mixed outcome measures `{P±}` when
/// the other did not, or both measure `{Q±}` when both did.
pub fn run_locc<R: Rng + ?Sized>(instance: &Instance, locc: &LoccPovm, rng: &mut R) -> Result<TrialRecord> {
    if instance.layout != locc.layout {
        return Err(Error::InvalidLayout(format!(
            "instance layout {:?} does not match measurement layout {:?}",
            instance.layout, locc.layout
        )));
    }
    let layout = locc.layout;
    let family = |party: Party| match party {
        Party::Alice => &locc.alice,
        Party::Bob => &locc.bob,
    };

    let mut state = PureState::normalized(
        locc.interleave
            .state_to_interleaved(instance.joint_state.amplitudes()),
    )?;
    let mut transcript = Vec::with_capacity(4);
    let mut measure = |party: Party, kind: MeasurementKind, ops: &[&ComplexMatrix], state: &mut PureState| {
        let projectors: Vec<LocalOperator> = ops
            .iter()
            .map(|&op| LocalOperator {
                party,
                op,
                alice_dim: layout.alice_dim(),
                bob_dim: layout.bob_dim(),
            })
            .collect();
        let (k, next) = projective_measure(state, &projectors, rng)?;
        *state = next;
        transcript.push(Round {
            actor: party.into(),
            measurement: kind,
            outcome: k,
        });
        Ok::<usize, Error>(k)
    };

    let mut sector = [0usize; 2];
    for (slot, party) in [Party::Alice, Party::Bob].into_iter().enumerate() {
        let ops = family(party).sectors.projectors();
        sector[slot] = measure(party, MeasurementKind::Symmetry, &ops, &mut state)?;
    }

    let vote = match (sector[0], sector[1]) {
        (MIXED, MIXED) => {
            let a = measure(
                Party::Alice,
                MeasurementKind::QBasis,
                &[&locc.alice.q_plus, &locc.alice.q_minus],
                &mut state,
            )?;
            let b = measure(
                Party::Bob,
                MeasurementKind::QBasis,
                &[&locc.bob.q_plus, &locc.bob.q_minus],
                &mut state,
            )?;
            a != b
        }
        (MIXED, other) | (other, MIXED) => {
            let party = if sector[0] == MIXED {
                Party::Alice
            } else {
                Party::Bob
            };
            let f = family(party);
            let k = measure(
                party,
                MeasurementKind::PBasis,
                &[&f.p_plus, &f.p_minus],
                &mut state,
            )?;
            (other == SYM && k == PLUS) || (other == ANTI && k == MINUS)
        }
        _ => false,
    };
    let guess = if vote {
        locc.vote_label
    } else {
        3 - locc.vote_label
    };
    Ok(TrialRecord::new(instance.true_label, transcript, guess))
}

/// Success probability of a POVM on fixed reference states, averaged over
/// the true label only: `η1 <φ1φ1φ2|E1|φ1φ1φ2> + η2 <φ2φ1φ2|E2|φ2φ1φ2>`.
pub fn exact_success_probability(
    phi1: &PureState,
    phi2: &PureState,
    priors: PriorPair,
    povm: &PovmPair,
) -> f64 {
    let pair = phi1.tensor(phi2);
    let s1 = phi1.tensor(&pair);
    let s2 = phi2.tensor(&pair);
    priors.eta1() * povm.e1.expectation(s1.amplitudes()).re
        + priors.eta2() * povm.e2.expectation(s2.amplitudes()).re
}

/// Aggregate statistics of a Monte Carlo run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunSummary {
    pub mode: Mode,
    pub trials: u64,
    pub successes: u64,
    pub empirical_p: f64,
    pub std_error: f64,
    pub reference_p: f64,
    pub z_score: f64,
}

impl RunSummary {
    pub fn new(mode: Mode, trials: u64, successes: u64, reference_p: f64) -> Self {
        let empirical_p = successes as f64 / trials as f64;
        let std_error = (empirical_p * (1.0 - empirical_p) / trials as f64).sqrt();
        let diff = empirical_p - reference_p;
        let z_score = if std_error > 0.0 {
            diff / std_error
        } else if diff.abs() <= 1e-12 {
            0.0
        } else {
            diff.signum() * f64::INFINITY
        };
        Self {
            mode,
            trials,
            successes,
            empirical_p,
            std_error,
            reference_p,
            z_score,
        }
    }
}

/// Prebuilt measurement operators for one `(layout, priors)` point.
#[derive(Debug, Clone)]
pub struct Simulator {
    pub layout: HilbertLayout,
    pub priors: PriorPair,
    pub global: GlobalSolution,
    pub locc: LoccPovm,
}

impl Simulator {
    pub fn new(layout: HilbertLayout, priors: PriorPair) -> Result<Self> {
        let (global, locc) = rayon::join(
            || optimal_global_povm(layout.d(), priors),
            || build_e1_locc(layout, priors),
        );
        Ok(Self {
            layout,
            priors,
            global: global?,
            locc: locc?,
        })
    }

    pub fn reference_p(&self) -> f64 {
        p_max_closed_form(self.layout.d(), self.priors)
    }

    pub fn trial(&self, mode: Mode, seed: u64, index: u64) -> Result<TrialRecord> {
        let mut rng = trial_rng(seed, index);
        let instance = prepare_instance(self.layout, self.priors, &mut rng);
        match mode {
            Mode::Global => Ok(run_global(&instance, &self.global, &mut rng)),
            Mode::Locc => run_locc(&instance, &self.locc, &mut rng),
        }
    }

    pub fn run(&self, mode: Mode, trials: u64, seed: u64) -> Result<RunSummary> {
        assert!(trials >= 1, "at least one trial");
        let successes = (0..trials)
            .into_par_iter()
            .map(|i| self.trial(mode, seed, i).map(|r| r.success as u64))
            .try_reduce(|| 0, |a, b| Ok(a + b))?;
        Ok(RunSummary::new(mode, trials, successes, self.reference_p()))
    }

    /// Mean and standard error of the exact per-instance success probability
    /// over `instances` sampled reference pairs.
    pub fn exact_mean(&self, mode: Mode, instances: u64, seed: u64) -> (f64, f64) {
        let povm = match mode {
            Mode::Global => &self.global.povm,
            Mode::Locc => &self.locc.povm,
        };
        let values: Vec<f64> = (0..instances)
            .into_par_iter()
            .map(|i| {
                let mut rng = trial_rng(seed, i);
                let phi1 = haar_random_state(self.layout.d(), &mut rng);
                let phi2 = haar_random_state(self.layout.d(), &mut rng);
                exact_success_probability(&phi1, &phi2, self.priors, povm)
            })
            .collect();
        let n = values.len() as f64;
        let mean = values.iter().sum::<f64>() / n;
        let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0).max(1.0);
        (mean, (var / n).sqrt())
    }
}

pub fn monte_carlo(
    mode: Mode,
    layout: HilbertLayout,
    priors: PriorPair,
    trials: u64,
    seed: u64,
) -> Result<RunSummary> {
    Simulator::new(layout, priors)?.run(mode, trials, seed)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(eta1: f64) -> PriorPair {
        PriorPair::from_eta1(eta1).unwrap()
    }

    #[test]
    fn certain_outcome() {
        let mut rng = trial_rng(1, 0);
        let e0 = PureState::basis(3, 0);
        let proj0 = ComplexMatrix::from_diagonal(&[1.0, 0.0, 0.0]);
        let rest = ComplexMatrix::from_diagonal(&[0.0, 1.0, 1.0]);
        for _ in 0..20 {
            let (k, out) = projective_measure(&e0, &[&proj0, &rest], &mut rng).unwrap();
            assert_eq!(k, 0);
            assert_eq!(out, e0);
        }
    }

    #[test]
    fn fair_coin_statistics() {
        let mut rng = trial_rng(2, 0);
        let h = 0.5f64.sqrt();
        let plus = PureState::new(vec![C64::new(h, 0.0), C64::new(h, 0.0)]).unwrap();
        let p0 = ComplexMatrix::from_diagonal(&[1.0, 0.0]);
        let p1 = ComplexMatrix::from_diagonal(&[0.0, 1.0]);
        let n = 10_000;
        let zeros = (0..n)
            .filter(|_| projective_measure(&plus, &[&p0, &p1], &mut rng).unwrap().0 == 0)
            .count();
        let sigma = (n as f64 * 0.25).sqrt();
        assert!((zeros as f64 - n as f64 / 2.0).abs() <= 3.0 * sigma);
    }

    #[test]
    fn collapsed_state_is_fixed_by_its_projector() {
        let mut rng = trial_rng(3, 0);
        let psi = haar_random_state(4, &mut rng);
        let p0 = ComplexMatrix::from_diagonal(&[1.0, 1.0, 0.0, 0.0]);
        let p1 = ComplexMatrix::from_diagonal(&[0.0, 0.0, 1.0, 1.0]);
        let projectors = [p0, p1];
        for _ in 0..50 {
            let (k, out) = projective_measure(&psi, &projectors, &mut rng).unwrap();
            assert!((out.norm_sqr() - 1.0).abs() < 1e-10);
            let again = projectors[k].apply(out.amplitudes());
            for (a, b) in again.iter().zip(out.amplitudes()) {
                assert!((a - b).norm() < 1e-10);
            }
        }
    }

    #[test]
    fn incomplete_and_degenerate_measurements() {
        let mut rng = trial_rng(4, 0);
        let e0 = PureState::basis(2, 0);
        let only1 = ComplexMatrix::from_diagonal(&[0.0, 1.0]);
        assert!(matches!(
            projective_measure(&e0, &[&only1], &mut rng),
            Err(Error::IncompleteMeasurement { .. })
        ));
        let zero = ComplexMatrix::zeros(2, 2);
        let all = ComplexMatrix::identity(2);
        for _ in 0..20 {
            assert_eq!(projective_measure(&e0, &[&zero, &all], &mut rng).unwrap().0, 1);
        }
    }

    #[test]
    fn local_operator_matches_full_kron() {
        use crate::tensor::kron;
        let layout = HilbertLayout::new(2, 3).unwrap();
        let mut rng = trial_rng(5, 0);
        let psi = haar_random_state(layout.joint_dim(), &mut rng);
        let sa = crate::sectors::SymmetrySectors::build(2).unwrap();
        let sb = crate::sectors::SymmetrySectors::build(3).unwrap();
        let alice = LocalOperator {
            party: Party::Alice,
            op: &sa.m3,
            alice_dim: 8,
            bob_dim: 27,
        };
        let bob = LocalOperator {
            party: Party::Bob,
            op: &sb.a3,
            alice_dim: 8,
            bob_dim: 27,
        };
        let full_a = kron(&sa.m3, &ComplexMatrix::identity(27));
        let full_b = kron(&ComplexMatrix::identity(8), &sb.a3);
        for (local, full) in [
            (alice.project(psi.amplitudes()), full_a.apply(psi.amplitudes())),
            (bob.project(psi.amplitudes()), full_b.apply(psi.amplitudes())),
        ] {
            for (x, y) in local.iter().zip(&full) {
                assert!((x - y).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn certain_label() {
        let layout = HilbertLayout::new(1, 2).unwrap();
        let mut rng = trial_rng(6, 0);
        for _ in 0..50 {
            let inst = prepare_instance(layout, p(1.0), &mut rng);
            assert_eq!(inst.true_label, 1);
            assert!((inst.joint_state.norm_sqr() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn single_trial_summary() {
        let layout = HilbertLayout::new(2, 2).unwrap();
        let s = monte_carlo(Mode::Locc, layout, p(0.3), 1, 9).unwrap();
        assert!(s.empirical_p == 0.0 || s.empirical_p == 1.0);
        assert_eq!(s.std_error, 0.0);
    }

    #[test]
    fn summary_z_score() {
        let s = RunSummary::new(Mode::Global, 100, 70, 0.7);
        assert_eq!(s.z_score, 0.0);
        assert!((s.std_error - (0.21f64 / 100.0).sqrt()).abs() < 1e-15);
        let s = RunSummary::new(Mode::Global, 10, 10, 1.0);
        assert_eq!((s.std_error, s.z_score), (0.0, 0.0));
    }
}
