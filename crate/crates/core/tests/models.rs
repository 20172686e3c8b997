use filiform::catalog::{make_model, quasi_to_adapted, ModelSpec};
use filiform::derivations::{
    derivation_space, diagonal_torus_rank, is_characteristically_nilpotent, is_derivation,
};
use filiform::linalg::{rat, unit_vector, RatMatrix};
use filiform::special::{dixmier_lister, n74};
use filiform::Error;

#[test]
fn graded_algebra_of_deformed_models() {
    let a = make_model(&ModelSpec::a(6, 1, vec![rat(1)])).unwrap();
    let l = make_model(&ModelSpec::l(6)).unwrap();
    assert_eq!(a.associated_graded().unwrap().table(), l.table());
    let b = make_model(&ModelSpec::b(6, 1, vec![rat(1)])).unwrap();
    let q = make_model(&ModelSpec::q(6)).unwrap();
    assert_eq!(b.associated_graded().unwrap().table(), q.table());
}

#[test]
fn lower_central_series_dims() {
    let dims = |a: &filiform::LieAlgebra| {
        a.lower_central_series()
            .iter()
            .map(|s| s.dim())
            .collect::<Vec<_>>()
    };
    assert_eq!(dims(&make_model(&ModelSpec::l(4)).unwrap()), vec![4, 2, 1, 0]);
    assert_eq!(
        dims(&make_model(&ModelSpec::q(6)).unwrap()),
        vec![6, 4, 3, 2, 1, 0]
    );
    for n in 3..=9 {
        let a = make_model(&ModelSpec::l(n)).unwrap();
        assert!(a.is_central_filtration(&a.lower_central_series()));
    }
}

#[test]
fn quasi_adapted_conversion() {
    let q = make_model(&ModelSpec::q(6)).unwrap();
    let m = quasi_to_adapted(&q).unwrap();
    let mut expected = RatMatrix::identity(6);
    expected[(1, 0)] = rat(-1);
    assert_eq!(m, expected);
    let l = make_model(&ModelSpec::l(7)).unwrap();
    assert_eq!(quasi_to_adapted(&l).unwrap(), RatMatrix::identity(7));
}

#[test]
fn characteristic_vectors_survive_automorphisms() {
    let a = make_model(&ModelSpec::l(6)).unwrap();
    let x1 = unit_vector(6, 0);
    assert!(a.is_characteristic_vector(&x1).unwrap());
    assert!(!a.is_characteristic_vector(&unit_vector(6, 1)).unwrap());
    assert!(!a.is_characteristic_vector(&unit_vector(6, 2)).unwrap());
    // exp(ad X2) is an automorphism; it must keep X1 characteristic
    let phi = a.inner_automorphism(&unit_vector(6, 1)).unwrap();
    assert!(a.is_automorphism(&phi));
    assert!(a.is_characteristic_vector(&phi.mul_vec(&x1)).unwrap());
}

#[test]
fn special_algebras() {
    let n = n74();
    assert!(is_characteristically_nilpotent(&n));
    assert_eq!(derivation_space(&n).dim(), 10);
    assert_eq!(diagonal_torus_rank(&n).unwrap(), 0);
    let dl = dixmier_lister();
    let info = dl.is_filiform();
    assert!(!info.filiform);
    assert_eq!(info.nilindex, Some(3));
    assert!(is_characteristically_nilpotent(&dl));
    assert!(matches!(diagonal_torus_rank(&dl), Err(Error::NotFiliform)));
}

#[test]
fn derivation_bases_satisfy_leibniz() {
    for a in [
        make_model(&ModelSpec::q(8)).unwrap(),
        make_model(&ModelSpec::b(8, 1, vec![rat(1), rat(-2)])).unwrap(),
    ] {
        let space = derivation_space(&a);
        assert!(space.basis.iter().all(|d| is_derivation(&a, d)));
        assert!(!is_characteristically_nilpotent(&a));
    }
}

#[test]
fn jacobi_failing_parameters_are_reported() {
    match make_model(&ModelSpec::b(8, 1, vec![rat(1), rat(0)])) {
        Err(Error::JacobiViolation(v)) => assert!(!v.is_empty()),
        other => panic!("expected a Jacobi violation, got {other:?}"),
    }
}
