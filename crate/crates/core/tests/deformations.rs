use filiform::cohomology::{
    cn_z2_grading, cn_zk_grading, deformation, dim9_family, dim9_family_terms, h2_weight_dims, sill_algebra,
    PsiTerm, Z2Decomposition,
};
use filiform::derivations::is_characteristically_nilpotent;
use filiform::linalg::rat;
use filiform::Error;

fn t(k: usize, s: usize) -> PsiTerm {
    PsiTerm::unit(k, s)
}

#[test]
fn parity_decompositions() {
    let even = deformation(7, &[t(1, 4), t(1, 6)]).unwrap();
    assert!(cn_z2_grading(&even, Z2Decomposition::EvenS).is_ok());
    assert!(cn_z2_grading(&even, Z2Decomposition::OddS).is_err());
    let odd = deformation(7, &[t(1, 5), t(1, 7)]).unwrap();
    assert!(cn_z2_grading(&odd, Z2Decomposition::OddS).is_ok());
}

#[test]
fn jacobi_needs_a_closing_term() {
    // the obstruction only appears once e_8 exists
    assert!(deformation(7, &[t(1, 4), t(2, 6)]).is_ok());
    assert!(matches!(
        deformation(8, &[t(1, 4), t(2, 6)]),
        Err(Error::JacobiViolation(_))
    ));
    assert!(deformation(8, &[t(2, 6), PsiTerm::new(3, 8, rat(3))]).is_ok());
}

#[test]
fn dim9_family_is_characteristically_nilpotent() {
    for alpha in [1, 2, 3, -1] {
        let a = dim9_family(&rat(alpha)).unwrap();
        assert!(is_characteristically_nilpotent(&a), "alpha = {alpha}");
    }
    assert_eq!(dim9_family_terms(&rat(1)).unwrap()[3].coeff, rat(1));
}

#[test]
fn dim9_sill_keeps_weight_one() {
    let a = dim9_family(&rat(1)).unwrap();
    let weight_one: Vec<PsiTerm> = dim9_family_terms(&rat(1))
        .unwrap()
        .into_iter()
        .filter(|p| p.weight() == 1)
        .collect();
    assert_eq!(weight_one.len(), 3);
    assert_eq!(sill_algebra(&a).unwrap(), deformation(8, &weight_one).unwrap());
}

#[test]
fn zk_single_term_any_k() {
    let a = deformation(9, &[t(1, 4)]).unwrap();
    for k in 3..7 {
        assert!(cn_zk_grading(&a, k).is_ok());
    }
    assert!(cn_zk_grading(&a, 7).is_err());
}

#[test]
fn h2_dimensions() {
    let r = h2_weight_dims(7).unwrap();
    assert_eq!(r.psi_basis.len(), 7);
    assert_eq!(r.f1_dim(), 6);
    assert!(r.independent);
    assert!(r.dims.iter().filter(|(p, _)| **p > 4).all(|(_, d)| *d == 0));
}
