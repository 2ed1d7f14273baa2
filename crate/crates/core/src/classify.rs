//! Verdicts on computed geometry: flatness, Einstein condition, isotropic
//! ideals, totally geodesic subspaces, Walker and hypersymplectic data.

use num_traits::{One, Zero};

use crate::complex::AlmostComplexStructure;
use crate::error::{Error, Result};
use crate::exterior::{is_closed, is_nondegenerate, TwoForm};
use crate::lie::{LieAlgebra, Subspace};
use crate::linalg::{Matrix, Vector};
use crate::riemann::{levi_civita, Connection, CurvatureTensor, MetricTensor, SymmetricBilinear};
use crate::scalar::Scalar;

pub fn is_flat(r: &CurvatureTensor) -> bool {
    r.is_zero()
}

/// Outcome of comparing `ric` with `ν g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EinsteinVerdict {
    /// `ric = ν g` with `ν ≠ 0`.
    Einstein(Scalar),
    RicciFlat,
    /// First entry (1-based, row-major) where `ric - ν g` is nonzero, with
    /// `ν` read off the first nonzero metric entry.
    NotEinstein { witness: (usize, usize) },
}

impl EinsteinVerdict {
    pub fn nu(&self) -> Option<Scalar> {
        match self {
            EinsteinVerdict::Einstein(nu) => Some(nu.clone()),
            EinsteinVerdict::RicciFlat => Some(Scalar::zero()),
            EinsteinVerdict::NotEinstein { .. } => None,
        }
    }

    pub fn is_einstein(&self) -> bool {
        !matches!(self, EinsteinVerdict::NotEinstein { .. })
    }
}

pub fn einstein_verdict(ric: &SymmetricBilinear, m: &MetricTensor) -> Result<EinsteinVerdict> {
    if !m.is_nondegenerate() {
        return Err(Error::DegenerateMetric);
    }
    if ric.is_zero() {
        return Ok(EinsteinVerdict::RicciFlat);
    }
    let (g, r) = (m.matrix(), ric.matrix());
    let n = g.rows();
    let first = (0..n * n).map(|p| (p / n, p % n)).find(|&(a, b)| !g[(a, b)].is_zero());
    let (a, b) = first.expect("nondegenerate metric has a nonzero entry");
    let nu = &r[(a, b)] / &g[(a, b)];
    for i in 0..n {
        for j in 0..n {
            if r[(i, j)] != &nu * &g[(i, j)] {
                return Ok(EinsteinVerdict::NotEinstein {
                    witness: (i + 1, j + 1),
                });
            }
        }
    }
    Ok(EinsteinVerdict::Einstein(nu))
}

/// `{y : B(s, y) = 0 for all s ∈ S}` for a bilinear form with matrix `b`.
pub fn orthogonal_complement(b: &Matrix, s: &Subspace) -> Subspace {
    let n = b.rows();
    if s.is_zero() {
        return Subspace::whole(n);
    }
    let rows: Vec<Vec<Scalar>> = s
        .basis()
        .iter()
        .map(|v| b.transpose().mul_vec(v).into_inner())
        .collect();
    let m = Matrix::from_rows(rows).expect("rectangular");
    Subspace::span(n, m.nullspace()).expect("same ambient dimension")
}

pub fn is_isotropic(w: &TwoForm, s: &Subspace) -> bool {
    let b = s.basis();
    b.iter()
        .enumerate()
        .all(|(i, x)| b[i + 1..].iter().all(|y| w.eval(x, y).is_zero()))
}

/// Isotropic of half dimension for a nondegenerate ω.
pub fn is_lagrangian(w: &TwoForm, s: &Subspace) -> bool {
    is_nondegenerate(w) && 2 * s.dim() == w.dim() && is_isotropic(w, s)
}

/// Metric-side lagrangian test `J h = h^⊥`.
pub fn is_lagrangian_by_metric(m: &MetricTensor, j: &AlmostComplexStructure, h: &Subspace) -> bool {
    h.image(j.matrix()) == orthogonal_complement(m.matrix(), h)
}

/// `h = h^⊥` for the metric, i.e. `h` is null of half dimension.
pub fn is_self_orthogonal(m: &MetricTensor, h: &Subspace) -> bool {
    &orthogonal_complement(m.matrix(), h) == h
}

/// Clauses for an isotropic ideal `h` of a Kähler algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsotropicIdealReport {
    pub h_abelian: bool,
    pub jh_subalgebra: bool,
    pub jh_isotropic: bool,
    /// `h ∩ Jh` is an ideal of `h + Jh`.
    pub intersection_ideal: bool,
}

impl IsotropicIdealReport {
    pub fn all(&self) -> bool {
        self.h_abelian && self.jh_subalgebra && self.jh_isotropic && self.intersection_ideal
    }
}

pub fn lemma_tota_check(
    g: &LieAlgebra,
    j: &AlmostComplexStructure,
    w: &TwoForm,
    h: &Subspace,
) -> Result<IsotropicIdealReport> {
    if !g.is_ideal(h)? {
        return Err(Error::PreconditionFailed("h is not an ideal".into()));
    }
    if !is_isotropic(w, h) {
        return Err(Error::PreconditionFailed("h is not isotropic".into()));
    }
    let jh = h.image(j.matrix());
    let inter = h.intersection(&jh);
    let sum = h.sum(&jh);
    Ok(IsotropicIdealReport {
        h_abelian: g.is_abelian_subspace(h)?,
        jh_subalgebra: g.is_subalgebra(&jh)?,
        jh_isotropic: is_isotropic(w, &jh),
        intersection_ideal: inter.contains_subspace(&g.bracket_subspaces(&sum, &inter)),
    })
}

/// `∇_x y ∈ S` for all `x, y ∈ S`.
pub fn is_totally_geodesic(conn: &Connection, s: &Subspace) -> bool {
    s.basis()
        .iter()
        .all(|x| s.basis().iter().all(|y| s.contains(&conn.nabla(x, y))))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WalkerWitness {
    pub subspace: Subspace,
    /// `g(W, W) = 0`
    pub null: bool,
    /// `∇_y W ⊆ W` for every `y`
    pub parallel: bool,
}

impl WalkerWitness {
    pub fn is_walker(&self) -> bool {
        self.null && self.parallel && !self.subspace.is_zero()
    }
}

pub fn is_walker(m: &MetricTensor, conn: &Connection, w: &Subspace) -> WalkerWitness {
    let b = w.basis();
    let null = b.iter().all(|x| b.iter().all(|y| m.eval(x, y).is_zero()));
    let n = conn.dim();
    let parallel = (0..n).all(|i| {
        let ei = Vector::basis(n, i);
        b.iter().all(|x| w.contains(&conn.nabla(&ei, x)))
    });
    WalkerWitness {
        subspace: w.clone(),
        null,
        parallel,
    }
}

/// Spans of basis-vector pairs, then the derived algebra and its image
/// under `J`, without repeats.
pub fn default_walker_candidates(g: &LieAlgebra, j: &AlmostComplexStructure) -> Vec<Subspace> {
    let n = g.dim();
    let mut out: Vec<Subspace> = Vec::new();
    for a in 1..=n {
        for b in a + 1..=n {
            out.push(Subspace::coordinate(n, &[a, b]).expect("labels in range"));
        }
    }
    let derived = g.derived_algebra();
    let jd = derived.image(j.matrix());
    for s in [derived, jd] {
        if !s.is_zero() && !out.contains(&s) {
            out.push(s);
        }
    }
    out
}

/// The candidates that are null and parallel, in input order.
pub fn walker_search(m: &MetricTensor, conn: &Connection, candidates: &[Subspace]) -> Vec<WalkerWitness> {
    candidates
        .iter()
        .map(|w| is_walker(m, conn, w))
        .filter(WalkerWitness::is_walker)
        .collect()
}

/// Product structure built from a Walker plane, with the three closed forms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hypersymplectic {
    /// `+1` on `W`, `-1` on `JW`.
    pub e: Matrix,
    /// Gram matrices of `g(J·,·)`, `g(E·,·)`, `g(JE·,·)`.
    pub forms: [TwoForm; 3],
}

pub const HYPERSYMPLECTIC_FORMS: [&str; 3] = ["g(J.,.)", "g(E.,.)", "g(JE.,.)"];

pub fn walker_to_hypersymplectic(
    g: &LieAlgebra,
    j: &AlmostComplexStructure,
    m: &MetricTensor,
    w: &Subspace,
) -> Result<Hypersymplectic> {
    let n = g.dim();
    let conn = levi_civita(g, m)?;
    let wit = is_walker(m, &conn, w);
    if !wit.is_walker() {
        return Err(Error::NotWalker {
            null: wit.null,
            parallel: wit.parallel,
        });
    }
    let jw = w.image(j.matrix());
    if w.dim() + jw.dim() != n || w.sum(&jw).dim() != n {
        return Err(Error::NotDirectSum);
    }
    let cols: Vec<Vector> = w.basis().iter().chain(jw.basis()).cloned().collect();
    let b = Matrix::from_columns(n, &cols);
    let d = Matrix::from_fn(n, n, |r, c| match (r == c, r < w.dim()) {
        (true, true) => Scalar::one(),
        (true, false) => -Scalar::one(),
        _ => Scalar::zero(),
    });
    let e = &(&b * &d) * &b.inverse()?;
    let id = Matrix::identity(n);
    let jm = j.matrix();
    let gm = m.matrix();
    if &e * &e != id {
        return Err(Error::HypersymplecticCheck("E^2 = I".into()));
    }
    if &e * jm != -&(jm * &e) {
        return Err(Error::HypersymplecticCheck("EJ = -JE".into()));
    }
    if &(&e.transpose() * gm) * &e != -gm {
        return Err(Error::HypersymplecticCheck("g(E.,E.) = -g".into()));
    }
    let je = jm * &e;
    let mut forms = Vec::with_capacity(3);
    for (name, op) in HYPERSYMPLECTIC_FORMS.iter().zip([jm, &e, &je]) {
        let gram = &op.transpose() * gm;
        let form = TwoForm::from_gram(&gram)
            .map_err(|_| Error::HypersymplecticCheck(format!("{name} is not skew")))?;
        if !is_closed(g, &form) {
            return Err(Error::ClosednessFailed((*name).into()));
        }
        forms.push(form);
    }
    let forms: [TwoForm; 3] = forms.try_into().expect("three forms");
    Ok(Hypersymplectic { e, forms })
}
