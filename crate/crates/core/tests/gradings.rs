use filiform::catalog::{make_model, ModelSpec};
use filiform::classify::classify;
use filiform::enumerate::enumerate_factor_gradings;
use filiform::grading::{coarsen, standard_grading, universal_group, verify_grading, Grading, GroupHom};
use filiform::group::{is_quotient_of, FGAbelianGroup, GroupElement};
use filiform::linalg::rat;

#[test]
fn standard_degrees() {
    let l5 = standard_grading(&ModelSpec::l(5)).unwrap();
    let free: Vec<Vec<i64>> = l5.degrees().iter().map(|d| d.free.clone()).collect();
    assert_eq!(
        free,
        vec![vec![1, 0], vec![0, 1], vec![1, 1], vec![2, 1], vec![3, 1]]
    );
    assert_eq!(verify_grading(&l5), Ok(()));
    let a61 = standard_grading(&ModelSpec::a(6, 1, vec![rat(1)])).unwrap();
    let d: Vec<i64> = a61.degrees().iter().map(|d| d.free[0]).collect();
    assert_eq!(d, vec![1, 2, 3, 4, 5, 6]);
    let b81 = standard_grading(&ModelSpec::b(8, 1, vec![rat(1), rat(-2)])).unwrap();
    assert_eq!(b81.degrees()[7].free, vec![9]);
}

#[test]
fn universal_groups_of_coarsenings() {
    let st = standard_grading(&ModelSpec::l(7)).unwrap();
    assert_eq!(universal_group(&st).unwrap().0, FGAbelianGroup::free(2));
    for k in 2..6 {
        let g = coarsen(&st, &GroupHom::free_quotient(2, &[vec![k, 0]])).unwrap();
        let (u, _) = universal_group(&g).unwrap();
        assert_eq!(u, FGAbelianGroup::from_factors(&[k], 1));
        assert!(is_quotient_of(&FGAbelianGroup::free(2), &u));
    }
}

#[test]
fn identity_coarsening_is_a_no_op() {
    let st = standard_grading(&ModelSpec::q(6)).unwrap();
    let same = coarsen(&st, &GroupHom::identity(st.group())).unwrap();
    assert_eq!(same.degrees(), st.degrees());
}

#[test]
fn enumeration_counts_for_l() {
    for n in 4..=8 {
        assert_eq!(
            enumerate_factor_gradings(&ModelSpec::l(n)).unwrap().len(),
            (n - 1) * (n + 2) / 2
        );
    }
}

#[test]
fn every_representative_is_enumerated_and_verifies() {
    for spec in [ModelSpec::l(6), ModelSpec::q(6), ModelSpec::a(7, 2, vec![rat(1)])] {
        let c = classify(&spec).unwrap();
        for r in &c.representatives {
            assert_eq!(verify_grading(&r.grading), Ok(()), "{}", r.name);
            assert!(r.enumerated.is_some(), "{} missing", r.name);
        }
        assert!(c.coinciding().is_empty());
    }
}

#[test]
fn q_enumeration_has_one_unlisted_grading() {
    // the unlisted class merges Y_i with Y_{i+n-2} and has universal group Z_{n-2}
    for n in [6, 8] {
        let c = classify(&ModelSpec::q(n)).unwrap();
        let missing = c.unlisted();
        assert_eq!(missing.len(), 1);
        let f = &c.enumerated[missing[0]];
        assert_eq!(f.universal, FGAbelianGroup::cyclic(n as i64 - 2));
    }
}

#[test]
fn violation_witness() {
    let a = make_model(&ModelSpec::l(4)).unwrap();
    let z = FGAbelianGroup::free(1);
    let deg = [0, 0, 0, 1]
        .iter()
        .map(|&x| GroupElement {
            torsion: vec![],
            free: vec![x],
        })
        .collect();
    let v = verify_grading(&Grading::new(a, z, deg).unwrap()).unwrap_err();
    assert_eq!((v.i, v.j, v.witness), (0, 2, 3));
}
