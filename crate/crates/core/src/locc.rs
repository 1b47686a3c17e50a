//! LOCC-implementable identification measurement.
//!
//! Each system splits as `C^{d_a} ⊗ C^{d_b}`. Every operator below is built
//! on Alice's three factors or Bob's three factors separately, combined by
//! a Kronecker product in the interleaved order `(0a,1a,2a,0b,1b,2b)`, and
//! mapped back to the canonical order `(0a,0b,1a,1b,2a,2b)` once, at assembly.
//!
//! The local construction assumes `η1 ≤ η2`. For `η1 > η2` the two reference
//! systems are exchanged: local `D` flips sign, the priors swap, and the
//! assembled element votes for label 2 instead of 1.

use crate::error::{Error, Result};
use crate::global::{delta_operator, lambda_pm, PovmPair, PriorPair};
use crate::sectors::{build_d_a, dim_antisymmetric, dim_mixed, dim_symmetric, SymmetrySectors};
use crate::tensor::{
    factor_permutation_indices, hermitian_eig, kron, permute_basis, projector_where, ComplexMatrix,
    HilbertLayout, C64,
};

/// Window around `λ±` used to pick local eigenvectors.
pub const LOCAL_EIG_WINDOW: f64 = 1e-8;
/// Bound on `‖Q² - Q‖` for the algebraically built `Q±`.
pub const PROJECTOR_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Party {
    Alice,
    Bob,
}

impl Party {
    pub fn label(&self) -> &'static str {
        match self {
            Party::Alice => "alice",
            Party::Bob => "bob",
        }
    }
}

/// Basis permutation `W` from canonical to interleaved factor order.
#[derive(Debug, Clone)]
pub struct InterleaveMap {
    layout: HilbertLayout,
    forward: Vec<usize>,
    backward: Vec<usize>,
}

/// Slot of each canonical factor in the interleaved order.
const INTERLEAVE: [usize; 6] = [0, 3, 1, 4, 2, 5];

pub fn interleave_isomorphism(layout: HilbertLayout) -> InterleaveMap {
    let forward = factor_permutation_indices(&layout.factor_dims(), &INTERLEAVE)
        .expect("fixed interleaving is a permutation");
    let mut backward = vec![0; forward.len()];
    for (old, &new) in forward.iter().enumerate() {
        backward[new] = old;
    }
    InterleaveMap {
        layout,
        forward,
        backward,
    }
}

impl InterleaveMap {
    pub fn layout(&self) -> HilbertLayout {
        self.layout
    }

    /// The 0/1 matrix of `W`.
    pub fn matrix(&self) -> ComplexMatrix {
        let n = self.forward.len();
        let mut w = ComplexMatrix::zeros(n, n);
        for (old, &new) in self.forward.iter().enumerate() {
            w[(new, old)] = C64::new(1.0, 0.0);
        }
        w
    }

    /// `W m W†`
    pub fn to_interleaved(&self, m: &ComplexMatrix) -> ComplexMatrix {
        permute_basis(m, &self.forward)
    }

    /// `W† m W`
    pub fn from_interleaved(&self, m: &ComplexMatrix) -> ComplexMatrix {
        permute_basis(m, &self.backward)
    }

    pub fn state_to_interleaved(&self, v: &[C64]) -> Vec<C64> {
        let mut out = vec![C64::new(0.0, 0.0); v.len()];
        for (old, &new) in self.forward.iter().enumerate() {
            out[new] = v[old];
        }
        out
    }

    pub fn state_from_interleaved(&self, v: &[C64]) -> Vec<C64> {
        let mut out = vec![C64::new(0.0, 0.0); v.len()];
        for (old, &new) in self.forward.iter().enumerate() {
            out[old] = v[new];
        }
        out
    }
}

/// Max-entry residuals of `D = D_a⊗A_b + A_a⊗D_b` and `A = D_a⊗D_b + A_a⊗A_b`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FactorizationResiduals {
    pub d_residual: f64,
    pub a_residual: f64,
}

pub fn local_factorization_check(layout: HilbertLayout) -> FactorizationResiduals {
    let w = interleave_isomorphism(layout);
    let (d_glob, a_glob) = build_d_a(layout.d());
    let (da, aa) = build_d_a(layout.d_a());
    let (db, ab) = build_d_a(layout.d_b());
    let d_local = &kron(&da, &ab) + &kron(&aa, &db);
    let a_local = &kron(&da, &db) + &kron(&aa, &ab);
    FactorizationResiduals {
        d_residual: w.to_interleaved(&d_glob).max_abs_diff(&d_local),
        a_residual: w.to_interleaved(&a_glob).max_abs_diff(&a_local),
    }
}

/// Angle that diagonalizes `Δ` in the index of the `X_i` operators.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RotationAngle {
    pub theta: f64,
    pub cos2theta: f64,
    pub sin2theta: f64,
}

pub fn rotation_angle(priors: PriorPair) -> RotationAngle {
    let root = (1.0 - priors.eta1() * priors.eta2()).sqrt();
    let cos2theta = priors.bias() / (2.0 * root);
    let sin2theta = 3f64.sqrt() / (2.0 * root);
    RotationAngle {
        theta: sin2theta.atan2(cos2theta) / 2.0,
        cos2theta,
        sin2theta,
    }
}

/// One party's sector projectors and the measurement projectors built inside
/// its mixed sector.
#[derive(Debug, Clone)]
pub struct LocalFamily {
    pub party: Party,
    pub dim: usize,
    pub sectors: SymmetrySectors,
    /// Sign-adjusted `D`; negated when the family is built for the mirrored branch.
    pub d_op: ComplexMatrix,
    pub a_op: ComplexMatrix,
    pub x1: ComplexMatrix,
    pub x2: ComplexMatrix,
    pub y1: ComplexMatrix,
    pub y2: ComplexMatrix,
    /// `(1/2)(η1-η2 + D + (η1-η2)A)`
    pub delta_local: ComplexMatrix,
    pub p_plus: ComplexMatrix,
    pub p_minus: ComplexMatrix,
    pub q_plus: ComplexMatrix,
    pub q_minus: ComplexMatrix,
    pub angle: RotationAngle,
    pub mirrored: bool,
}

/// Builds the family for priors with `η1 ≤ η2`.
pub fn build_local_family(party: Party, d_k: usize, priors: PriorPair) -> Result<LocalFamily> {
    if priors.eta1() > priors.eta2() {
        return Err(Error::PriorOrder {
            eta1: priors.eta1(),
            eta2: priors.eta2(),
        });
    }
    LocalFamily::build(party, d_k, priors, false)
}

impl LocalFamily {
    /// `priors` are the oriented priors (`η1 ≤ η2` for the optimality
    /// argument, though the algebra holds for any pair); `mirrored` negates `D`.
    fn build(party: Party, d_k: usize, priors: PriorPair, mirrored: bool) -> Result<Self> {
        let sectors = SymmetrySectors::build(d_k)?;
        let (d_raw, a_op) = build_d_a(d_k);
        let d_op = if mirrored { d_raw.scale(-1.0) } else { d_raw };
        let n = d_k.pow(3);
        let id = ComplexMatrix::identity(n);
        let m3 = &sectors.m3;

        let x1 = d_op.scale(2.0 / 3f64.sqrt());
        let x2 = a_op.scale(2.0);
        let angle = rotation_angle(priors);
        let (c, s) = (angle.theta.cos(), angle.theta.sin());
        let y1 = &x1.scale(c) + &x2.scale(s);
        let y2 = &x2.scale(c) - &x1.scale(s);

        let bias = priors.bias();
        let mut delta_local = id.scale(bias);
        delta_local.axpy(1.0, &d_op);
        delta_local.axpy(bias, &a_op);
        let delta_local = delta_local.scale(0.5);

        // Restrict Δ_local to V_M and push the complement to a sentinel
        // eigenvalue that cannot collide with λ±.
        let (lambda_plus, lambda_minus) = lambda_pm(priors);
        let sentinel = lambda_plus + 1.0;
        let mut compressed = m3.matmul(&delta_local).matmul(m3);
        compressed.axpy(sentinel, &(&id - m3));
        let spectrum = hermitian_eig(&compressed)?;
        let half = (sectors.dim_m / 2) as usize;
        let near = |target: f64| move |l: f64| (l - target).abs() <= LOCAL_EIG_WINDOW;
        for (what, target) in [("P+", lambda_plus), ("P-", lambda_minus)] {
            let found = spectrum.count(near(target));
            if found != half {
                return Err(Error::MultiplicityMismatch {
                    what,
                    expected: half,
                    found,
                });
            }
        }
        let p_plus = projector_where(&spectrum, near(lambda_plus));
        let p_minus = projector_where(&spectrum, near(lambda_minus));

        let y2_m = m3.matmul(&y2).matmul(m3);
        let q_plus = (m3 + &y2_m).scale(0.5);
        let q_minus = (m3 - &y2_m).scale(0.5);
        for (what, q) in [("Q+ idempotency", &q_plus), ("Q- idempotency", &q_minus)] {
            let residual = q.idempotency_residual();
            if residual > PROJECTOR_TOL {
                return Err(Error::CheckFailed {
                    check: what,
                    residual,
                });
            }
        }

        Ok(Self {
            party,
            dim: d_k,
            sectors,
            d_op,
            a_op,
            x1,
            x2,
            y1,
            y2,
            delta_local,
            p_plus,
            p_minus,
            q_plus,
            q_minus,
            angle,
            mirrored,
        })
    }

    pub fn dim_m(&self) -> u64 {
        self.sectors.dim_m
    }
}

/// The separable guess element and its six Kronecker summands.
#[derive(Debug, Clone)]
pub struct LoccPovm {
    pub layout: HilbertLayout,
    pub priors: PriorPair,
    /// True when `η1 > η2` and the construction runs on swapped reference systems.
    pub mirrored: bool,
    /// The six summands in canonical order, in the order
    /// `S⊗P+, A⊗P-, P+⊗S, P-⊗A, Q+⊗Q-, Q-⊗Q+` (Alice ⊗ Bob).
    pub summands: Vec<ComplexMatrix>,
    /// Label the summands vote for: 1, or 2 on the mirrored branch.
    pub vote_label: u8,
    pub povm: PovmPair,
    pub alice: LocalFamily,
    pub bob: LocalFamily,
    pub interleave: InterleaveMap,
}

impl LoccPovm {
    pub fn e1(&self) -> &ComplexMatrix {
        &self.povm.e1
    }

    pub fn e2(&self) -> &ComplexMatrix {
        &self.povm.e2
    }

    /// Sum of the six summands, i.e. the element voting for `vote_label`.
    pub fn vote_element(&self) -> &ComplexMatrix {
        if self.vote_label == 1 {
            &self.povm.e1
        } else {
            &self.povm.e2
        }
    }
}

/// Local `(Alice, Bob)` operator pairs of the six summands, interleaved order.
pub fn summand_factors<'a>(
    alice: &'a LocalFamily,
    bob: &'a LocalFamily,
) -> [(&'a ComplexMatrix, &'a ComplexMatrix); 6] {
    [
        (&alice.sectors.s3, &bob.p_plus),
        (&alice.sectors.a3, &bob.p_minus),
        (&alice.p_plus, &bob.sectors.s3),
        (&alice.p_minus, &bob.sectors.a3),
        (&alice.q_plus, &bob.q_minus),
        (&alice.q_minus, &bob.q_plus),
    ]
}

pub fn build_e1_locc(layout: HilbertLayout, priors: PriorPair) -> Result<LoccPovm> {
    let mirrored = priors.eta1() > priors.eta2();
    let oriented = if mirrored { priors.swapped() } else { priors };
    let (alice, bob) = rayon::join(
        || LocalFamily::build(Party::Alice, layout.d_a(), oriented, mirrored),
        || LocalFamily::build(Party::Bob, layout.d_b(), oriented, mirrored),
    );
    let (alice, bob) = (alice?, bob?);
    let interleave = interleave_isomorphism(layout);

    let n = layout.joint_dim();
    let mut vote = ComplexMatrix::zeros(n, n);
    let mut summands = Vec::with_capacity(6);
    for (a, b) in summand_factors(&alice, &bob) {
        let term = interleave.from_interleaved(&kron(a, b));
        vote.axpy(1.0, &term);
        summands.push(term);
    }
    let (vote_label, povm) = if mirrored {
        let e1 = &ComplexMatrix::identity(n) - &vote;
        (2, PovmPair { e1, e2: vote })
    } else {
        (1, PovmPair::from_e1(vote))
    };
    Ok(LoccPovm {
        layout,
        priors,
        mirrored,
        summands,
        vote_label,
        povm,
        alice,
        bob,
        interleave,
    })
}

/// Residual of the rotated ("diagonal") form of `Δ` on `V_M^(a) ⊗ V_M^(b)`:
/// `Δ = (1/2)(η1-η2 + λ+ Y1⊗Y1 + λ- Y2⊗Y2)` there.
pub fn diagonal_form_residual(layout: HilbertLayout, priors: PriorPair) -> Result<f64> {
    let alice = LocalFamily::build(Party::Alice, layout.d_a(), priors, false)?;
    let bob = LocalFamily::build(Party::Bob, layout.d_b(), priors, false)?;
    let (lambda_plus, lambda_minus) = lambda_pm(priors);
    let w = interleave_isomorphism(layout);
    let delta = w.to_interleaved(&delta_operator(layout.d(), priors));
    let mut rhs = ComplexMatrix::identity(layout.joint_dim()).scale(priors.bias());
    rhs.axpy(lambda_plus, &kron(&alice.y1, &bob.y1));
    rhs.axpy(lambda_minus, &kron(&alice.y2, &bob.y2));
    let rhs = rhs.scale(0.5);
    let mm = kron(&alice.sectors.m3, &bob.sectors.m3);
    let diff = &delta - &rhs;
    Ok(mm.matmul(&diff).matmul(&mm).max_abs())
}

/// The five summands of the mixed-sector dimension decomposition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DimIdentity {
    pub dim_m: u64,
    /// `S_a·M_b, M_a·S_b, A_a·M_b, M_a·A_b, M_a·M_b/2`
    pub terms: [u64; 5],
    pub holds: bool,
}

pub fn dim_identity_check(layout: HilbertLayout) -> DimIdentity {
    let (a, b) = (layout.d_a() as u64, layout.d_b() as u64);
    let (sa, aa, ma) = (dim_symmetric(a), dim_antisymmetric(a), dim_mixed(a));
    let (sb, ab, mb) = (dim_symmetric(b), dim_antisymmetric(b), dim_mixed(b));
    let dim_m = dim_mixed(a * b);
    let linear = sa * mb + ma * sb + aa * mb + ma * ab;
    // compare doubled sides so the half-product needs no division
    let holds = 2 * dim_m == 2 * linear + ma * mb;
    DimIdentity {
        dim_m,
        terms: [sa * mb, ma * sb, aa * mb, ma * ab, ma * mb / 2],
        holds,
    }
}

/// Per-summand traces `tr[term · Δ]` and the closed-form totals they must match.
#[derive(Debug, Clone, PartialEq)]
pub struct BranchReport {
    pub summand_traces: [f64; 6],
    pub sa_total: f64,
    pub sa_expected: f64,
    pub mm_total: f64,
    pub mm_expected: f64,
    /// `tr[Q+ Y1], tr[Q- Y1]` for Alice then Bob.
    pub q_y1_traces: [f64; 4],
}

impl BranchReport {
    pub fn total(&self) -> f64 {
        self.sa_total + self.mm_total
    }
}

pub fn branch_contribution_report(layout: HilbertLayout, priors: PriorPair) -> Result<BranchReport> {
    if priors.eta1() > priors.eta2() {
        return Err(Error::PriorOrder {
            eta1: priors.eta1(),
            eta2: priors.eta2(),
        });
    }
    let locc = build_e1_locc(layout, priors)?;
    let delta = delta_operator(layout.d(), priors);
    let mut summand_traces = [0.0; 6];
    for (t, term) in summand_traces.iter_mut().zip(&locc.summands) {
        *t = term.trace_product(&delta).re;
    }
    let (lambda_plus, _) = lambda_pm(priors);
    let (a, b) = (&locc.alice.sectors, &locc.bob.sectors);
    let (sa, aa, ma) = (a.dim_s as f64, a.dim_a as f64, a.dim_m as f64);
    let (sb, ab, mb) = (b.dim_s as f64, b.dim_a as f64, b.dim_m as f64);
    let q_y1 = |f: &LocalFamily| {
        [
            f.q_plus.trace_product(&f.y1).re,
            f.q_minus.trace_product(&f.y1).re,
        ]
    };
    let (qa, qb) = (q_y1(&locc.alice), q_y1(&locc.bob));
    Ok(BranchReport {
        summand_traces,
        sa_total: summand_traces[..4].iter().sum(),
        sa_expected: lambda_plus / 2.0 * (sa * mb + aa * mb + ma * sb + ma * ab),
        mm_total: summand_traces[4..].iter().sum(),
        mm_expected: lambda_plus / 4.0 * ma * mb,
        q_y1_traces: [qa[0], qa[1], qb[0], qb[1]],
    })
}

/// `Δ'^(b) = (1/2)(η1-η2 - D - (η1-η2)A)`: Bob's effective operator once Alice
/// has found her factors totally antisymmetric.
pub fn antisymmetric_branch_operator(d_b: usize, priors: PriorPair) -> ComplexMatrix {
    let (dop, aop) = build_d_a(d_b);
    let bias = priors.bias();
    let mut out = ComplexMatrix::identity(d_b.pow(3)).scale(bias);
    out.axpy(-1.0, &dop);
    out.axpy(-bias, &aop);
    out.scale(0.5)
}

/// `Δ^(b) = (1/2)(η1-η2 + D + (η1-η2)A)` on a single party.
pub fn local_delta(d_k: usize, priors: PriorPair) -> ComplexMatrix {
    let (dop, aop) = build_d_a(d_k);
    let bias = priors.bias();
    let mut out = ComplexMatrix::identity(d_k.pow(3)).scale(bias);
    out.axpy(1.0, &dop);
    out.axpy(bias, &aop);
    out.scale(0.5)
}
