mod common;

use common::{family_points, kahler_pairs};
use invkahler_core::catalog;
use invkahler_core::complex::{is_compatible, AlmostComplexStructure};
use invkahler_core::exterior::{d_one, d_two, is_closed, is_nondegenerate, OneForm, TwoForm};
use invkahler_core::lie::LieAlgebra;
use invkahler_core::linalg::{Matrix, Vector};
use invkahler_core::riemann::{curvature, is_parallel, levi_civita, metric_from_pair, ricci, MetricTensor};
use invkahler_core::scalar::{self, Scalar};
use proptest::prelude::*;
use std::sync::OnceLock;

type Pair = (String, LieAlgebra, String, AlmostComplexStructure, catalog::FormFamily);

fn algebras() -> &'static [LieAlgebra] {
    static ALGS: OnceLock<Vec<LieAlgebra>> = OnceLock::new();
    ALGS.get_or_init(|| {
        catalog::scan_instances()
            .into_iter()
            .map(|(name, p)| catalog::get(name, &p).unwrap().algebra)
            .collect()
    })
}

fn pairs() -> &'static [Pair] {
    static PAIRS: OnceLock<Vec<Pair>> = OnceLock::new();
    PAIRS.get_or_init(kahler_pairs)
}

fn rational() -> impl Strategy<Value = Scalar> {
    (-4i64..=4, 1i64..=3).prop_map(|(p, q)| scalar::frac(p, q))
}

fn symmetric(entries: &[Scalar]) -> Matrix {
    let mut m = Matrix::zeros(4, 4);
    let mut it = entries.iter();
    for i in 0..4 {
        for j in i..4 {
            let c = it.next().unwrap().clone();
            m[(i, j)] = c.clone();
            m[(j, i)] = c;
        }
    }
    m
}

/// Checks the identities every Levi-Civita connection of a left-invariant
/// metric must satisfy; returns the first failure.
fn check_identities(g: &LieAlgebra, m: &MetricTensor) -> Result<(), String> {
    let n = g.dim();
    let conn = levi_civita(g, m).map_err(|e| e.to_string())?;
    let basis: Vec<Vector> = (0..n).map(|i| Vector::basis(n, i)).collect();
    for i in 0..n {
        for j in 0..n {
            let c = g.basis_bracket(i, j);
            for k in 0..n {
                if conn.christoffel(k, i, j) - conn.christoffel(k, j, i) != c[k] {
                    return Err(format!("torsion at ({i},{j},{k})"));
                }
                let lhs = m.eval(conn.nabla_basis(i, j), &basis[k]) + m.eval(&basis[j], conn.nabla_basis(i, k));
                if lhs != scalar::zero() {
                    return Err(format!("nabla g at ({i},{j},{k})"));
                }
            }
        }
    }
    let r = curvature(g, &conn);
    for i in 0..n {
        for j in 0..n {
            if r.operator(i, j) != &-(r.operator(j, i)) {
                return Err(format!("R antisymmetry at ({i},{j})"));
            }
            for k in 0..n {
                let (x, y, z) = (&basis[i], &basis[j], &basis[k]);
                let cyc = &(&r.apply(x, y, z) + &r.apply(y, z, x)) + &r.apply(z, x, y);
                if !cyc.is_zero() {
                    return Err(format!("Bianchi at ({i},{j},{k})"));
                }
                for (l, w) in basis.iter().enumerate() {
                    if m.eval(&r.apply(x, y, z), w) != -m.eval(&r.apply(x, y, w), z) {
                        return Err(format!("pair skew at ({i},{j},{k},{l})"));
                    }
                }
            }
        }
    }
    if !ricci(&r).is_symmetric() {
        return Err("ricci not symmetric".into());
    }
    Ok(())
}

/// `g(x, y) = ω(Jx, y)` without the closedness precondition.
fn raw_metric(j: &AlmostComplexStructure, w: &TwoForm) -> Option<MetricTensor> {
    let n = j.dim();
    let g = Matrix::from_fn(n, n, |a, b| w.eval(&j.apply(&Vector::basis(n, a)), &Vector::basis(n, b)));
    MetricTensor::new(g).ok()
}

/// Averages a two-form over `J`, giving a compatible one.
fn compatible_part(j: &AlmostComplexStructure, s: &TwoForm) -> TwoForm {
    let jm = j.matrix();
    let gram = s.gram();
    let pulled = &(&jm.transpose() * &gram) * jm;
    let avg = (&gram + &pulled).scale(&scalar::frac(1, 2));
    TwoForm::from_gram(&avg).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(160))]

    #[test]
    fn levi_civita_identities_for_random_metrics(
        idx in 0usize..16,
        entries in proptest::collection::vec(rational(), 10),
    ) {
        let algs = algebras();
        let g = &algs[idx % algs.len()];
        let gm = symmetric(&entries);
        prop_assume!(gm.determinant() != scalar::zero());
        let m = MetricTensor::new(gm).unwrap();
        if let Err(msg) = check_identities(g, &m) {
            prop_assert!(false, "{msg}");
        }
    }

    #[test]
    fn d_squared_vanishes(idx in 0usize..16, coeffs in proptest::collection::vec(-5i64..=5, 4)) {
        let algs = algebras();
        let g = &algs[idx % algs.len()];
        let alpha = OneForm(Vector::from_ints(&coeffs));
        let da = d_one(g, &alpha);
        prop_assert!(d_two(g, &da).is_zero());
        prop_assert!(is_closed(g, &da));
    }

    #[test]
    fn kahler_iff_parallel_at_family_points(
        pair in 0usize..64,
        coeffs in proptest::collection::vec(-3i64..=3, 6),
    ) {
        let pairs = pairs();
        let (label, g, id, j, fam) = &pairs[pair % pairs.len()];
        let point: catalog::Params =
            fam.params().iter().cloned().zip(coeffs.iter().map(|&c| scalar::int(c))).collect();
        let w = fam.form(&point).unwrap();
        prop_assume!(is_nondegenerate(&w));
        prop_assert!(is_closed(g, &w));
        let m = metric_from_pair(g, j, &w).unwrap();
        let conn = levi_civita(g, &m).unwrap();
        prop_assert!(is_parallel(&conn, j), "{label} {id}");
    }

    #[test]
    fn kahler_iff_parallel_under_perturbation(
        pair in 0usize..64,
        terms in proptest::collection::vec(-2i64..=2, 6),
    ) {
        let pairs = pairs();
        let (label, g, id, j, fam) = &pairs[pair % pairs.len()];
        let base = fam.form(&family_points(fam)[0]).unwrap();
        let raw = TwoForm::from_coordinates(4, &Vector::from_ints(&terms));
        let w = base.add(&compatible_part(j, &raw));
        prop_assert!(is_compatible(&w, j));
        prop_assume!(is_nondegenerate(&w));
        let Some(m) = raw_metric(j, &w) else {
            return Err(TestCaseError::reject("degenerate metric"));
        };
        let conn = levi_civita(g, &m).unwrap();
        prop_assert_eq!(is_closed(g, &w), is_parallel(&conn, j), "{} {}", label, id);
    }
}

#[test]
fn catalog_metrics_satisfy_identities() {
    let mut seen = 0;
    for (label, g, id, j, fam) in kahler_pairs() {
        for p in family_points(&fam) {
            let w = fam.form(&p).unwrap();
            if !is_nondegenerate(&w) {
                continue;
            }
            let m = metric_from_pair(&g, &j, &w).unwrap();
            check_identities(&g, &m).unwrap_or_else(|msg| panic!("{label} {id} {p:?}: {msg}"));
            seen += 1;
        }
    }
    assert!(seen >= 30, "only {seen} catalog metrics");
}

#[test]
fn perturbation_reaches_non_closed_forms() {
    // the equivalence test above is vacuous if no perturbation ever breaks closedness
    let mut broken = 0;
    for (_, g, _, j, fam) in kahler_pairs() {
        let base = fam.form(&family_points(&fam)[0]).unwrap();
        for t in 0..6 {
            let raw = TwoForm::from_coordinates(4, &Vector::basis(6, t));
            let w = base.add(&compatible_part(&j, &raw));
            if !is_nondegenerate(&w) || is_closed(&g, &w) {
                continue;
            }
            let m = raw_metric(&j, &w).unwrap();
            assert!(!is_parallel(&levi_civita(&g, &m).unwrap(), &j));
            broken += 1;
        }
    }
    assert!(broken > 10, "{broken}");
}
