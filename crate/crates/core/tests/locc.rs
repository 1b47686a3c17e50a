mod common;

use common::p;
use locc_ident::global::{delta_operator, lambda_pm, optimal_global_povm};
use locc_ident::locc::{
    antisymmetric_branch_operator, branch_contribution_report, build_local_family, diagonal_form_residual,
    dim_identity_check, interleave_isomorphism, local_delta, local_factorization_check, rotation_angle,
};
use locc_ident::sectors::{transposition_01, PairSymmetrizer};
use locc_ident::tensor::{kron, partial_trace, ComplexMatrix, HilbertLayout};
use locc_ident::{build_e1_locc, Error, Party, SymmetrySectors};
use proptest::prelude::*;

fn layout(a: usize, b: usize) -> HilbertLayout {
    HilbertLayout::new(a, b).unwrap()
}

#[test]
fn interleave_trivial_layout() {
    let w = interleave_isomorphism(layout(1, 1));
    assert_eq!(w.matrix(), ComplexMatrix::identity(1));
}

#[test]
fn interleave_is_unitary_permutation() {
    for (a, b) in [(2, 2), (2, 3), (3, 1)] {
        let w = interleave_isomorphism(layout(a, b));
        let m = w.matrix();
        let n = m.rows();
        assert_eq!(m.matmul(&m.adjoint()), ComplexMatrix::identity(n));
        assert!(m
            .as_slice()
            .iter()
            .all(|z| z.im == 0.0 && (z.re == 0.0 || z.re == 1.0)));
        let x = common::random_matrix(n, &mut common::rng(a as u64 * 10 + b as u64));
        assert_eq!(w.from_interleaved(&w.to_interleaved(&x)), x);
        let v = x.column(0);
        assert_eq!(w.state_from_interleaved(&w.state_to_interleaved(&v)), v);
    }
}

#[test]
fn transpositions_factor_across_parties() {
    for (a, b) in [(2, 2), (2, 3), (1, 3)] {
        let lay = layout(a, b);
        let w = interleave_isomorphism(lay);
        let t = w.to_interleaved(&transposition_01(lay.d()));
        assert!(t.max_abs_diff(&kron(&transposition_01(a), &transposition_01(b))) <= 1e-12);

        let s01 = w.to_interleaved(&PairSymmetrizer::build(lay.d()).s01);
        let product = (&ComplexMatrix::identity(lay.joint_dim())
            + &kron(&transposition_01(a), &transposition_01(b)))
            .scale(0.5);
        assert!(s01.max_abs_diff(&product) <= 1e-12);
        assert!((s01.trace() - PairSymmetrizer::build(lay.d()).s01.trace()).norm() <= 1e-12);
    }
}

#[test]
fn local_factorization() {
    for (a, b) in [(2, 2), (2, 3), (1, 2), (1, 3)] {
        let r = local_factorization_check(layout(a, b));
        assert!(r.d_residual <= 1e-10 && r.a_residual <= 1e-10);
    }
}

#[test]
fn rotation_angle_examples() {
    let eq = rotation_angle(p(0.5));
    assert!(eq.cos2theta.abs() < 1e-15);
    assert!((eq.sin2theta - 1.0).abs() < 1e-15);
    assert!((eq.theta - std::f64::consts::FRAC_PI_4).abs() < 1e-15);
    let r = rotation_angle(p(0.3));
    assert!((r.cos2theta + 0.225018).abs() < 1e-6);
    assert!((r.sin2theta - 0.974355).abs() < 1e-6);
    let root = 0.79f64.sqrt();
    assert!((r.cos2theta - (-0.4 / (2.0 * root))).abs() < 1e-15);
    assert!((r.sin2theta - 3f64.sqrt() / (2.0 * root)).abs() < 1e-15);
}

#[test]
fn diagonal_form_holds() {
    for (a, b) in [(2, 2), (2, 3)] {
        for eta1 in [0.0, 0.2, 0.5] {
            assert!(diagonal_form_residual(layout(a, b), p(eta1)).unwrap() <= 1e-10);
        }
    }
}

#[test]
fn local_family_projectors() {
    for d in [2, 3] {
        for eta1 in [0.0, 0.3, 0.5] {
            let f = build_local_family(Party::Bob, d, p(eta1)).unwrap();
            let m3 = &f.sectors.m3;
            let half = (f.sectors.dim_m / 2) as f64;
            assert!((&f.p_plus + &f.p_minus).max_abs_diff(m3) <= 1e-10);
            assert!((&f.q_plus + &f.q_minus).max_abs_diff(m3) <= 1e-10);
            for proj in [&f.p_plus, &f.p_minus, &f.q_plus, &f.q_minus] {
                assert!(proj.idempotency_residual() <= 1e-10);
                assert!(proj.is_hermitian(1e-10));
                assert!((proj.trace().re - half).abs() <= 1e-9);
            }
            let on_m = |x: &ComplexMatrix| m3.matmul(x).matmul(m3);
            for x in [&f.x1, &f.x2, &f.y1, &f.y2] {
                assert!(on_m(&x.matmul(x)).max_abs_diff(m3) <= 1e-10);
            }
            assert!(on_m(&(&f.x1.matmul(&f.x2) + &f.x2.matmul(&f.x1))).max_abs() <= 1e-10);
            assert!(on_m(&(&f.y1.matmul(&f.y2) + &f.y2.matmul(&f.y1))).max_abs() <= 1e-10);
            let transported = on_m(&f.y1.matmul(&f.q_minus).matmul(&f.y1));
            assert!(transported.max_abs_diff(&f.q_plus) <= 1e-10);
            let (lp, lm) = lambda_pm(p(eta1));
            let dl = local_delta(d, p(eta1));
            assert!(dl.matmul(&f.p_plus).max_abs_diff(&f.p_plus.scale(lp)) <= 1e-10);
            assert!(dl.matmul(&f.p_minus).max_abs_diff(&f.p_minus.scale(lm)) <= 1e-10);
        }
    }
    let q2 = build_local_family(Party::Alice, 2, p(0.4)).unwrap();
    assert!((q2.q_plus.trace().re - 2.0).abs() < 1e-9);
    let q3 = build_local_family(Party::Alice, 3, p(0.4)).unwrap();
    assert!((q3.q_plus.trace().re - 8.0).abs() < 1e-9);
    assert!(matches!(
        build_local_family(Party::Alice, 2, p(0.6)),
        Err(Error::PriorOrder { .. })
    ));
}

#[test]
fn certificate_examples() {
    for (a, b, eta1) in [
        (2, 2, 0.3),
        (2, 3, 0.1),
        (2, 3, 0.5),
        (2, 2, 0.7),
        (1, 2, 0.25),
        (1, 3, 0.9),
    ] {
        let lay = layout(a, b);
        let locc = build_e1_locc(lay, p(eta1)).unwrap();
        let global = optimal_global_povm(lay.d(), p(eta1)).unwrap();
        let gap = (locc.e1().trace_product(&global.delta).re - global.positive_trace).abs();
        assert!(gap <= 1e-9, "({a},{b}) eta1={eta1}: gap {gap}");
        assert!(locc.e1().idempotency_residual() <= 1e-10);
        assert!(locc.povm.validate().unwrap().is_valid());
        assert_eq!(locc.mirrored, eta1 > 0.5);
    }
}

#[test]
fn summands_are_orthogonal_products() {
    for (a, b, eta1) in [(2, 2, 0.3), (2, 3, 0.5), (2, 2, 0.8)] {
        let lay = layout(a, b);
        let locc = build_e1_locc(lay, p(eta1)).unwrap();
        let w = interleave_isomorphism(lay);
        let dims = lay.factor_dims();
        for (i, s) in locc.summands.iter().enumerate() {
            let tr = s.trace().re;
            if tr.abs() < 1e-9 {
                assert!(s.max_abs() <= 1e-12, "empty summand {i} is not zero");
                continue;
            }
            let ta = partial_trace(s, &dims, &HilbertLayout::alice_factors()).unwrap();
            let tb = partial_trace(s, &dims, &HilbertLayout::bob_factors()).unwrap();
            let product = kron(&ta, &tb).scale(1.0 / tr);
            assert!(w.to_interleaved(s).max_abs_diff(&product) <= 1e-12, "summand {i}");
            for t in &locc.summands[i + 1..] {
                assert!(s.matmul(t).max_abs() <= 1e-10);
            }
        }
        let mut sum = ComplexMatrix::zeros(lay.joint_dim(), lay.joint_dim());
        for s in &locc.summands {
            sum.axpy(1.0, s);
        }
        assert!(sum.max_abs_diff(locc.vote_element()) <= 1e-12);
    }
}

#[test]
fn dim_identity_examples() {
    let i22 = dim_identity_check(layout(2, 2));
    assert_eq!(i22.dim_m, 40);
    assert_eq!(i22.terms, [16, 16, 0, 0, 8]);
    assert!(i22.holds);
    let i23 = dim_identity_check(layout(2, 3));
    assert_eq!(i23.dim_m, 140);
    assert_eq!(i23.terms, [64, 40, 0, 4, 32]);
    assert!(i23.holds);
    for b in 1..=6 {
        let i = dim_identity_check(layout(1, b));
        assert!(i.holds);
        assert_eq!(i.dim_m, SymmetrySectors::build(b).unwrap().dim_m);
    }
    for a in 1..=4 {
        for b in 1..=4 {
            assert!(dim_identity_check(layout(a, b)).holds);
        }
    }
}

#[test]
fn branch_contributions_at_equal_priors() {
    let r = branch_contribution_report(layout(2, 2), p(0.5)).unwrap();
    let root3 = 3f64.sqrt();
    assert!((r.mm_total - root3).abs() <= 1e-10);
    assert!((r.mm_expected - root3).abs() <= 1e-12);
    assert!((r.sa_total - 4.0 * root3).abs() <= 1e-10);
    assert!((r.sa_expected - 4.0 * root3).abs() <= 1e-12);
    assert!(r.q_y1_traces.iter().all(|t| t.abs() <= 1e-10));
    for eta1 in [0.1, 0.3] {
        let r = branch_contribution_report(layout(2, 3), p(eta1)).unwrap();
        assert!((r.sa_total - r.sa_expected).abs() <= 1e-9);
        assert!((r.mm_total - r.mm_expected).abs() <= 1e-9);
    }
    assert!(branch_contribution_report(layout(2, 2), p(0.6)).is_err());
}

#[test]
fn antisymmetric_branch_reduction() {
    let lay = layout(3, 2);
    let pr = p(0.3);
    let alice = SymmetrySectors::build(3).unwrap();
    let w = interleave_isomorphism(lay);
    let delta = w.to_interleaved(&delta_operator(lay.d(), pr));
    let weighted = kron(&alice.a3, &ComplexMatrix::identity(lay.bob_dim())).matmul(&delta);
    let reduced = partial_trace(&weighted, &[lay.alice_dim(), lay.bob_dim()], &[1]).unwrap();
    let expected = antisymmetric_branch_operator(2, pr).scale(alice.dim_a as f64);
    assert_eq!(alice.dim_a, 1);
    assert!(reduced.max_abs_diff(&expected) <= 1e-10);
}

#[test]
fn antisymmetric_branch_spectrum() {
    let pr = p(0.3);
    let (lp, lm) = lambda_pm(pr);
    let bob = build_local_family(Party::Bob, 3, pr).unwrap();
    let op = antisymmetric_branch_operator(3, pr);
    let s = &bob.sectors;
    assert!(op.matmul(&s.s3).max_abs() <= 1e-10);
    assert!(op.matmul(&s.a3).max_abs_diff(&s.a3.scale(pr.bias())) <= 1e-10);
    assert!(op.matmul(&bob.p_plus).max_abs_diff(&bob.p_plus.scale(lm)) <= 1e-10);
    assert!(op.matmul(&bob.p_minus).max_abs_diff(&bob.p_minus.scale(lp)) <= 1e-10);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn rotation_is_normalized(eta1 in 0.0f64..=1.0) {
        let r = rotation_angle(p(eta1));
        prop_assert!((r.cos2theta.powi(2) + r.sin2theta.powi(2) - 1.0).abs() <= 1e-12);
        prop_assert!(r.sin2theta > 0.0);
        prop_assert!(((2.0 * r.theta).cos() - r.cos2theta).abs() <= 1e-12);
    }

    #[test]
    fn certificate_on_random_priors(eta1 in 0.0f64..=1.0) {
        let lay = layout(2, 2);
        let locc = build_e1_locc(lay, p(eta1)).unwrap();
        let global = optimal_global_povm(lay.d(), p(eta1)).unwrap();
        let gap = (locc.e1().trace_product(&global.delta).re - global.positive_trace).abs();
        prop_assert!(gap <= 1e-8);
        prop_assert!(locc.e1().idempotency_residual() <= 1e-10);
    }
}
