#![allow(dead_code)]

use invkahler_core::catalog::{self, CatalogEntry, Params};
use invkahler_core::complex::AlmostComplexStructure;
use invkahler_core::exterior::TwoForm;
use invkahler_core::lie::LieAlgebra;
use invkahler_core::linalg::{Matrix, Vector};
use invkahler_core::riemann::{
    curvature, levi_civita, metric_from_pair, ricci, Connection, CurvatureTensor, MetricTensor, SymmetricBilinear,
};
use invkahler_core::scalar::{self, Scalar};

pub fn q(p: i64, r: i64) -> Scalar {
    scalar::frac(p, r)
}

pub fn z(n: i64) -> Scalar {
    scalar::int(n)
}

pub fn e(n: usize, label: usize) -> Vector {
    Vector::basis(n, label - 1)
}

pub fn vec4(xs: [Scalar; 4]) -> Vector {
    Vector::new(xs.to_vec())
}

pub fn params(vals: &[(&str, Scalar)]) -> Params {
    catalog::params(vals)
}

pub fn entry(name: &str, vals: &[(&str, Scalar)]) -> CatalogEntry {
    catalog::get(name, &params(vals)).unwrap_or_else(|err| panic!("{name}: {err}"))
}

/// Every object computed from a catalog `(algebra, J, ω-family point)`.
pub struct Geo {
    pub g: LieAlgebra,
    pub j: AlmostComplexStructure,
    pub w: TwoForm,
    pub m: MetricTensor,
    pub conn: Connection,
    pub r: CurvatureTensor,
    pub ric: SymmetricBilinear,
}

pub fn geo_of(g: LieAlgebra, j: AlmostComplexStructure, w: TwoForm) -> Geo {
    let m = metric_from_pair(&g, &j, &w).expect("valid Kähler data");
    let conn = levi_civita(&g, &m).unwrap();
    let r = curvature(&g, &conn);
    let ric = ricci(&r);
    Geo { g, j, w, m, conn, r, ric }
}

pub fn geo(name: &str, fixed: &[(&str, Scalar)], j_id: &str, point: &[(&str, Scalar)]) -> Geo {
    let ent = entry(name, fixed);
    let s = ent.structure(j_id).unwrap();
    let w = s.family().expect("Kähler family").form(&params(point)).unwrap();
    geo_of(ent.algebra.clone(), s.j.clone(), w)
}

pub fn matrix4(rows: [[Scalar; 4]; 4]) -> Matrix {
    Matrix::from_rows(rows.into_iter().map(|r| r.to_vec()).collect()).unwrap()
}

/// Compares a bilinear formula against the connection on all basis pairs.
pub fn connection_matches(conn: &Connection, f: impl Fn(&[Scalar], &[Scalar]) -> Vec<Scalar>) -> bool {
    let n = conn.dim();
    (1..=n).all(|a| {
        (1..=n).all(|b| {
            let (za, yb) = (e(n, a), e(n, b));
            Vector::new(f(za.as_slice(), yb.as_slice())) == conn.nabla(&za, &yb)
        })
    })
}

/// Compares a formula for `R(X,Y)Z` on all basis triples.
pub fn curvature_matches(r: &CurvatureTensor, f: impl Fn(&[Scalar], &[Scalar], &[Scalar]) -> Vec<Scalar>) -> bool {
    let n = r.dim();
    (1..=n).all(|a| {
        (1..=n).all(|b| {
            (1..=n).all(|c| {
                let (x, y, zz) = (e(n, a), e(n, b), e(n, c));
                Vector::new(f(x.as_slice(), y.as_slice(), zz.as_slice())) == r.apply(&x, &y, &zz)
            })
        })
    })
}

/// Compares a formula for `ric(X,Y)` on all basis pairs.
pub fn bilinear_matches(b: &SymmetricBilinear, f: impl Fn(&[Scalar], &[Scalar]) -> Scalar) -> bool {
    let n = b.matrix().rows();
    (1..=n).all(|i| (1..=n).all(|k| f(e(n, i).as_slice(), e(n, k).as_slice()) == b.eval(&e(n, i), &e(n, k))))
}

/// Algebra, structure and family for every registered Kähler pair of the scan instances.
pub fn kahler_pairs() -> Vec<(String, LieAlgebra, String, AlmostComplexStructure, catalog::FormFamily)> {
    let mut out = Vec::new();
    for (name, p) in catalog::scan_instances() {
        let ent = catalog::get(name, &p).unwrap();
        for s in &ent.structures {
            if let Some(f) = s.family() {
                out.push((ent.label(), ent.algebra.clone(), s.id.clone(), s.j.clone(), f.clone()));
            }
        }
    }
    out
}

/// Small integer family points in a fixed order; the first few are the
/// unit vectors, then mixed combinations.
pub fn family_points(f: &catalog::FormFamily) -> Vec<Params> {
    let k = f.params().len();
    let patterns: Vec<Vec<i64>> = {
        let mut v: Vec<Vec<i64>> = (0..k).map(|i| (0..k).map(|t| i64::from(t == i)).collect()).collect();
        v.push(vec![1; k]);
        v.push((0..k).map(|t| if t % 2 == 0 { 2 } else { -1 }).collect());
        v.push((0..k).map(|t| 3 - t as i64).collect());
        v
    };
    patterns
        .into_iter()
        .map(|pat| f.params().iter().cloned().zip(pat.into_iter().map(scalar::int)).collect())
        .collect()
}
