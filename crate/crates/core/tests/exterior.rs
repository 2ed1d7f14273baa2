mod common;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::*;
use invkahler_core::exterior::{d_one, d_two, is_closed, is_nondegenerate, OneForm, TwoForm};
use invkahler_core::lie::LieAlgebra;
use invkahler_core::scalar::Scalar;

/// ω∧ω / 2 coefficient on e^{1234}.
fn wedge_square(w: &TwoForm) -> Scalar {
    let c = |i: usize, j: usize| w.coeff(i - 1, j - 1);
    &(&c(1, 2) * &c(3, 4)) - &(&c(1, 3) * &c(2, 4)) + &c(1, 4) * &c(2, 3)
}

#[test]
fn d_one_examples() {
    let rh3 = entry("rh3", &[]).algebra;
    assert_eq!(d_one(&rh3, &OneForm::dual_basis(4, 2)), TwoForm::from_int_terms(4, &[(1, 2, -1)]));
    assert!(d_one(&rh3, &OneForm(invkahler_core::linalg::Vector::zeros(4))).is_zero());
    let r2r2 = entry("r2r2", &[]).algebra;
    assert_eq!(d_one(&r2r2, &OneForm::dual_basis(4, 1)), TwoForm::from_int_terms(4, &[(1, 2, -1)]));
}

#[test]
fn d_two_examples() {
    let w = TwoForm::from_int_terms(4, &[(1, 2, 3), (1, 3, -1), (2, 4, 5), (3, 4, 1)]);
    assert!(d_two(&LieAlgebra::abelian(4), &w).is_zero());
    let rh3 = entry("rh3", &[]).algebra;
    assert!(d_two(&rh3, &TwoForm::from_int_terms(4, &[(1, 3, 1)])).is_zero());
    let r2p = entry("affC", &[]).algebra;
    assert!(!d_two(&r2p, &TwoForm::from_int_terms(4, &[(1, 3, 1), (2, 4, 1)])).is_zero());
}

#[test]
fn nondegeneracy_examples() {
    assert!(is_nondegenerate(&TwoForm::from_int_terms(4, &[(1, 2, 1), (3, 4, 1)])));
    assert!(!is_nondegenerate(&TwoForm::from_int_terms(4, &[(1, 2, 1)])));
    let w = TwoForm::from_int_terms(4, &[(1, 2, 5), (1, 3, 1), (2, 4, 1)]);
    assert!(is_nondegenerate(&w));
}

#[test]
fn d_squared_vanishes_on_catalog() {
    for (name, p) in invkahler_core::catalog::scan_instances() {
        let g = invkahler_core::catalog::get(name, &p).unwrap().algebra;
        for i in 0..4 {
            assert!(d_two(&g, &d_one(&g, &OneForm::dual_basis(4, i))).is_zero(), "{name} e^{}", i + 1);
        }
    }
}

#[test]
fn nondegenerate_iff_wedge_square() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..200 {
        let mut terms = Vec::new();
        for (i, j) in [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)] {
            terms.push((i, j, rng.gen_range(-2..=2)));
        }
        let w = TwoForm::from_int_terms(4, &terms);
        assert_eq!(is_nondegenerate(&w), wedge_square(&w) != z(0), "{w}");
    }
}

#[test]
fn table_forms_closed_and_perturbations_not() {
    for (label, g, id, _, fam) in kahler_pairs() {
        for p in family_points(&fam) {
            assert!(is_closed(&g, &fam.form(&p).unwrap()), "{label} {id} {p:?}");
        }
        if g.is_abelian() {
            continue;
        }
        let base = fam.generators()[0].clone();
        let off_span = [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]
            .iter()
            .filter(|&&(i, j)| !is_closed(&g, &base.add(&TwoForm::from_int_terms(4, &[(i, j, 1)]))))
            .count();
        assert!(off_span > 0, "{label} {id}");
    }
}
