//! Linear space of closed `J`-compatible 2-forms and its nondegenerate locus.

use crate::complex::{integrability_defect, AlmostComplexStructure};
use crate::error::{Error, Result};
use crate::exterior::{d_two_at, is_nondegenerate, pairs, triples, TwoForm};
use crate::lie::LieAlgebra;
use crate::linalg::{Matrix, Vector};
use crate::poly::{pfaffian, MultiPoly};
use crate::scalar::{self, Scalar};

/// Linear space of 2-forms with a reduced echelon basis in the coordinates
/// `e^{12}, e^{13}, ..., e^{(n-1)n}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormSpace {
    n: usize,
    basis: Vec<TwoForm>,
}

impl FormSpace {
    /// Span of the given forms, re-normalized to echelon form.
    pub fn span(n: usize, forms: &[TwoForm]) -> Self {
        if forms.is_empty() {
            return FormSpace { n, basis: Vec::new() };
        }
        let rows = forms.iter().map(|f| f.coordinates().into_inner()).collect();
        let (r, pivots) = Matrix::from_rows(rows).expect("equal lengths").rref();
        FormSpace {
            n,
            basis: (0..pivots.len())
                .map(|i| TwoForm::from_coordinates(n, &r.row(i)))
                .collect(),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[TwoForm] {
        &self.basis
    }

    /// `Σ c_t basis_t`.
    pub fn combination(&self, coeffs: &[Scalar]) -> TwoForm {
        assert_eq!(coeffs.len(), self.basis.len());
        self.basis
            .iter()
            .zip(coeffs)
            .fold(TwoForm::zero(self.n), |acc, (b, c)| acc.add(&b.scale(c)))
    }

    pub fn contains(&self, w: &TwoForm) -> bool {
        let mut forms = self.basis.clone();
        forms.push(w.clone());
        FormSpace::span(self.n, &forms).dimension() == self.dimension()
    }
}

/// Closed forms `ω` with `ω(J·, J·) = ω`.
pub fn compatible_closed_forms(g: &LieAlgebra, j: &AlmostComplexStructure) -> Result<FormSpace> {
    if let Some((a, b)) = integrability_defect(g, j)? {
        return Err(Error::NotIntegrable { i: a, j: b });
    }
    let n = g.dim();
    let unknowns: Vec<TwoForm> = pairs(n)
        .enumerate()
        .map(|(p, _)| {
            let mut v = Vector::zeros(n * (n - 1) / 2);
            v[p] = Scalar::from_integer(1.into());
            TwoForm::from_coordinates(n, &v)
        })
        .collect();
    let jm = j.matrix();
    let jt = jm.transpose();
    let defects: Vec<Matrix> = unknowns
        .iter()
        .map(|u| {
            let gm = u.gram();
            &(&(&jt * &gm) * jm) - &gm
        })
        .collect();
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for (a, b, c) in triples(n) {
        rows.push(unknowns.iter().map(|u| d_two_at(g, u, a, b, c)).collect());
    }
    for (a, b) in pairs(n) {
        rows.push(defects.iter().map(|d| d[(a, b)].clone()).collect());
    }
    let system = Matrix::from_rows(rows).expect("rectangular system");
    let solutions: Vec<TwoForm> = system
        .nullspace()
        .iter()
        .map(|v| TwoForm::from_coordinates(n, v))
        .collect();
    Ok(FormSpace::span(n, &solutions))
}

/// Pfaffian of `Σ c_t basis_t` as a polynomial in `c_1..c_k`.
pub fn pfaffian_polynomial(fs: &FormSpace) -> MultiPoly {
    let k = fs.dimension();
    let entry = |i: usize, j: usize| -> MultiPoly {
        let coeffs: Vec<Scalar> = fs.basis.iter().map(|b| b.coeff(i, j)).collect();
        MultiPoly::linear(&coeffs)
    };
    pfaffian(fs.n, &entry, k)
}

/// Search order key for one coordinate: `1, -1, 2, -2, ...`, zero last.
fn rank(c: i64) -> u64 {
    match c.cmp(&0) {
        std::cmp::Ordering::Greater => 2 * c as u64 - 1,
        std::cmp::Ordering::Less => 2 * c.unsigned_abs(),
        std::cmp::Ordering::Equal => u64::MAX,
    }
}

/// Integer coefficient vectors in `[-r, r]^k` with L1 norm `s`.
fn with_norm(k: usize, r: i64, s: i64) -> Vec<Vec<i64>> {
    fn rec(k: usize, r: i64, s: i64, prefix: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if k == 0 {
            if s == 0 {
                out.push(prefix.clone());
            }
            return;
        }
        if s > r * k as i64 {
            return;
        }
        for a in 0..=s.min(r) {
            let signs: &[i64] = if a == 0 { &[1] } else { &[1, -1] };
            for &sg in signs {
                prefix.push(sg * a);
                rec(k - 1, r, s - a, prefix, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(k, r, s, &mut Vec::with_capacity(k), &mut out);
    out.sort_by_key(|v| v.iter().map(|&c| rank(c)).collect::<Vec<_>>());
    out
}

/// First nondegenerate element of the box `[-r, r]^k`, scanning by
/// increasing L1 norm and then by the coordinate order `1, -1, 2, -2, ..., 0`.
/// Does not consult the Pfaffian.
pub fn search_box(fs: &FormSpace, r: i64) -> Option<TwoForm> {
    let k = fs.dimension();
    (1..=r * k as i64).find_map(|s| {
        with_norm(k, r, s).into_iter().find_map(|c| {
            let coeffs: Vec<Scalar> = c.iter().map(|&x| scalar::int(x)).collect();
            let w = fs.combination(&coeffs);
            is_nondegenerate(&w).then_some(w)
        })
    })
}

/// Box radius large enough that a nonzero Pfaffian (degree `n/2`) cannot
/// vanish on the whole box.
pub fn search_radius(n: usize) -> i64 {
    (n.div_ceil(2) as i64).max(2)
}

/// A nondegenerate element, or `None` when the Pfaffian vanishes
/// identically on the span.
pub fn sample_nondegenerate(fs: &FormSpace) -> Option<TwoForm> {
    if fs.dimension() == 0 || fs.n % 2 == 1 || pfaffian_polynomial(fs).is_zero() {
        return None;
    }
    let w = search_box(fs, search_radius(fs.n));
    debug_assert!(w.is_some(), "nonzero Pfaffian must be nonzero somewhere on the box");
    w
}

/// Per-structure outcome of a scan.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ScanOutcome {
    NotIntegrable { i: usize, j: usize },
    Forms {
        space: FormSpace,
        pfaffian: MultiPoly,
        sample: Option<TwoForm>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanEntry {
    pub id: String,
    pub outcome: ScanOutcome,
}

impl ScanEntry {
    pub fn is_kaehler(&self) -> bool {
        matches!(&self.outcome, ScanOutcome::Forms { sample: Some(_), .. })
    }
}

pub fn kahler_scan(g: &LieAlgebra, structures: &[(String, AlmostComplexStructure)]) -> Result<Vec<ScanEntry>> {
    structures
        .iter()
        .map(|(id, j)| {
            let outcome = match compatible_closed_forms(g, j) {
                Ok(space) => {
                    let pfaffian = pfaffian_polynomial(&space);
                    let sample = sample_nondegenerate(&space);
                    ScanOutcome::Forms {
                        space,
                        pfaffian,
                        sample,
                    }
                }
                Err(Error::NotIntegrable { i, j }) => ScanOutcome::NotIntegrable { i, j },
                Err(e) => return Err(e),
            };
            Ok(ScanEntry {
                id: id.clone(),
                outcome,
            })
        })
        .collect()
}
