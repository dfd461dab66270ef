use super::*;
use crate::field::FieldSpec;
use crate::freelie::{normalize, Generator};
use crate::tuples::Verdict;

fn ints(t: &[i64]) -> Vec<Degree> {
    t.iter().map(|&x| Degree::Int(x)).collect()
}

fn u1(p: u64) -> ThinAlgebra {
    ThinAlgebra::u1(FieldSpec::from_characteristic(p).unwrap())
}

#[test]
fn kernel_examples() {
    let a = u1(0);
    let k = identity_kernel(&ints(&[0, 1, 2]), &a, 5).unwrap();
    assert_eq!((k.ambient_dim(), k.rank()), (2, 1));
    let amb = Ambient::for_degrees(&ints(&[0, 1, 2]));
    let f = Generator::Triple { a: 0, b: 1, c: 2 }.build(FieldSpec::Rational).unwrap();
    assert!(is_member(&f, &amb, &k).unwrap());
    assert_eq!(identity_kernel(&ints(&[1, 1]), &a, 5).unwrap().rank(), 1);
    assert_eq!(identity_kernel(&ints(&[1, 2]), &a, 5).unwrap().rank(), 0);
    assert!(matches!(
        identity_kernel(&ints(&[1; 6]), &a, 5),
        Err(TidealError::BoundExceeded { n: 6, bound: 5 })
    ));
    assert!(matches!(
        identity_kernel(&ints(&[1; 7]), &a, 9),
        Err(TidealError::BoundExceeded { n: 7, bound: 6 })
    ));
}

#[test]
fn span_examples() {
    let a = u1(0);
    let q = FieldSpec::Rational;
    let g = ints(&[1, 1, 2]);
    let s = consequence_span(&g, &a, &[Family::CommPair], None);
    assert!(s.unsound.is_empty());
    let inner = crate::freelie::BracketExpr::left_normed(vec![
        crate::freelie::BracketExpr::var(1, Degree::Int(1)),
        crate::freelie::BracketExpr::var(2, Degree::Int(1)),
        crate::freelie::BracketExpr::var(3, Degree::Int(2)),
    ]);
    let p = normalize(&[(q.one(), inner)]).unwrap();
    assert!(is_member(&p, &Ambient::for_degrees(&g), &s.span).unwrap());

    let g = ints(&[0, 1, 2]);
    let s = consequence_span(&g, &a, &[Family::Triple], None);
    let k = identity_kernel(&g, &a, 5).unwrap();
    assert!(s.span.equals(&k));

    let s = consequence_span(&g, &a, &[], None);
    assert_eq!(s.span.rank(), 0);
    let zero = crate::freelie::MultilinearPoly::zero(q, Ambient::for_degrees(&g).vars().to_vec());
    assert!(is_member(&zero, &Ambient::for_degrees(&g), &s.span).unwrap());

    let m = normalize(&[(q.one(), crate::freelie::Monomial::from_degrees(&ints(&[1, 2])).to_expr())]).unwrap();
    let g2 = ints(&[1, 2]);
    let s = consequence_span(&g2, &a, &FamilySet::u1(), None);
    assert!(!is_member(&m, &Ambient::for_degrees(&g2), &s.span).unwrap());
}

#[test]
fn verify_examples() {
    let v = verify_tuple(&ints(&[0, 1, 2]), &u1(0), &FamilySet::u1(), VerifyOptions::default()).unwrap();
    assert!(v.verified);
    assert_eq!((v.dim_ambient, v.dim_kernel, v.dim_span), (2, 1, 1));
    assert_eq!(v.equivalence, Some(true));

    let v = verify_tuple(&ints(&[2, 2, 2]), &u1(0), &FamilySet::u1(), VerifyOptions::default()).unwrap();
    assert_eq!(v.class, Verdict::Bad);
    assert!(v.verified);
    assert_eq!(v.dim_span, 2);

    let v = verify_tuple(&ints(&[1, 6, 2]), &u1(5), &FamilySet::u1(), VerifyOptions::default()).unwrap();
    assert!(v.verified);
}

#[test]
fn exhaustive_mode_checks_every_row() {
    let opts = VerifyOptions {
        exhaustive: true,
        ..VerifyOptions::default()
    };
    let v = verify_tuple(&ints(&[-1, 1, 1, 1]), &u1(0), &FamilySet::u1(), opts).unwrap();
    assert!(v.verified && !v.stopped_early);
    assert!(v.rows_generated > v.dim_span);
}

#[test]
fn wrong_generator_is_caught_as_unsound() {
    // [x^1, x^2] is not an identity of U_1.
    let fam = Family::CommPairAt(vec![(1, 2)]);
    let opts = VerifyOptions {
        exhaustive: true,
        ..VerifyOptions::default()
    };
    let v = verify_tuple(&ints(&[1, 2]), &u1(0), &[fam], opts).unwrap();
    assert!(!v.span_subset_kernel);
    assert!(!v.verified);
}

#[test]
fn missing_generator_leaves_a_gap() {
    let v = verify_tuple(&ints(&[0, 1, 2]), &u1(0), &FamilySet::monomial_only(), VerifyOptions::default()).unwrap();
    assert!(v.span_subset_kernel);
    assert!(!v.kernel_subset_span);
}

#[test]
fn small_sweeps_pass() {
    for p in [0, 3] {
        let cfg = SweepConfig::integer(u1(p), FamilySet::u1(), 3, -2, 2);
        let r = sweep(&cfg).unwrap();
        assert!(r.passed, "{:?}", r.counterexamples);
        assert_eq!(r.tuples_checked, 5 + 15 + 35);
    }
    let w1 = ThinAlgebra::w1(FieldSpec::Rational);
    let r = sweep(&SweepConfig::integer(w1, FamilySet::w1(), 3, -2, 3)).unwrap();
    assert!(r.passed, "{:?}", r.counterexamples);
    assert!(r.flags.contains(FLAG_SUPPORT_AT_MINUS_TWO));
}

#[test]
fn pauli_sweep_q2() {
    let a = ThinAlgebra::pauli(2, FieldSpec::Rational).unwrap();
    let r = sweep(&SweepConfig::finite_group(a, FamilySet::pauli(), 4)).unwrap();
    assert!(r.passed, "{:?}", r.counterexamples);
}

#[test]
fn sequential_and_parallel_agree() {
    let mut cfg = SweepConfig::integer(u1(0), FamilySet::u1(), 3, -1, 2);
    cfg.execution = crate::exec::Execution::Sequential;
    let a = serde_json::to_string(&sweep(&cfg).unwrap()).unwrap();
    cfg.execution = crate::exec::Execution::Parallel;
    let b = serde_json::to_string(&sweep(&cfg).unwrap()).unwrap();
    assert_eq!(a, b);
}
