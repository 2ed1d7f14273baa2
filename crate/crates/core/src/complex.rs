//! Almost complex structures, integrability and compatibility with 2-forms.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exterior::TwoForm;
use crate::lie::LieAlgebra;
use crate::linalg::{Matrix, Vector};
use crate::scalar::Scalar;

/// Endomorphism `J` with `J² = -I`; column `j` is `J e_j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AlmostComplexStructure(Matrix);

impl AlmostComplexStructure {
    pub fn new(j: Matrix) -> Result<Self> {
        if !j.is_square() {
            return Err(Error::DimensionMismatch {
                expected: j.rows(),
                found: j.cols(),
            });
        }
        let sq = &j * &j;
        let n = j.rows();
        for r in 0..n {
            for c in 0..n {
                let want = if r == c { -Scalar::one() } else { Scalar::zero() };
                if sq[(r, c)] != want {
                    return Err(Error::NotAlmostComplex { row: r + 1, col: c + 1 });
                }
            }
        }
        Ok(AlmostComplexStructure(j))
    }

    /// From relations `J e_i = v` (1-based `i`), each completed by `J v = -e_i`.
    /// The vectors `e_i` and `v` over all relations must form a basis.
    pub fn from_relations(n: usize, relations: &[(usize, Vector)]) -> Result<Self> {
        let mut domain = Vec::with_capacity(n);
        let mut images = Vec::with_capacity(n);
        for (i, v) in relations {
            if *i == 0 || *i > n {
                return Err(Error::IndexOutOfRange { index: *i, dim: n });
            }
            if v.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: v.len(),
                });
            }
            let ei = Vector::basis(n, i - 1);
            domain.push(ei.clone());
            images.push(v.clone());
            domain.push(v.clone());
            images.push(-&ei);
        }
        if domain.len() != n {
            return Err(Error::BadRelations(format!(
                "{} relations give {} vectors, need {}",
                relations.len(),
                domain.len(),
                n
            )));
        }
        let b = Matrix::from_columns(n, &domain);
        let binv = b
            .inverse()
            .map_err(|_| Error::BadRelations("relations do not span the algebra".into()))?;
        let j = &Matrix::from_columns(n, &images) * &binv;
        Self::new(j)
    }

    /// The standard structure `J e_{2k-1} = e_{2k}`.
    pub fn standard(n: usize) -> Result<Self> {
        if n % 2 == 1 {
            return Err(Error::BadRelations("odd dimension".into()));
        }
        let rels: Vec<_> = (0..n / 2)
            .map(|k| (2 * k + 1, Vector::basis(n, 2 * k + 1)))
            .collect();
        Self::from_relations(n, &rels)
    }

    pub fn matrix(&self) -> &Matrix {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.rows()
    }

    pub fn apply(&self, x: &Vector) -> Vector {
        self.0.mul_vec(x)
    }

    pub fn neg(&self) -> Self {
        AlmostComplexStructure(-&self.0)
    }
}

fn check(g: &LieAlgebra, j: &AlmostComplexStructure) -> Result<()> {
    if g.dim() != j.dim() {
        return Err(Error::DimensionMismatch {
            expected: g.dim(),
            found: j.dim(),
        });
    }
    Ok(())
}

/// `N_J(x,y) = [Jx,Jy] - [x,y] - J[Jx,y] - J[x,Jy]`.
pub fn nijenhuis(g: &LieAlgebra, j: &AlmostComplexStructure, x: &Vector, y: &Vector) -> Result<Vector> {
    check(g, j)?;
    let (jx, jy) = (j.apply(x), j.apply(y));
    let a = g.bracket(&jx, &jy)?;
    let b = g.bracket(x, y)?;
    let c = j.apply(&g.bracket(&jx, y)?);
    let d = j.apply(&g.bracket(x, &jy)?);
    Ok(&(&(&a - &b) - &c) - &d)
}

/// First basis pair (1-based) where the Nijenhuis tensor is nonzero.
pub fn integrability_defect(g: &LieAlgebra, j: &AlmostComplexStructure) -> Result<Option<(usize, usize)>> {
    check(g, j)?;
    let n = g.dim();
    for a in 0..n {
        for b in a + 1..n {
            let v = nijenhuis(g, j, &Vector::basis(n, a), &Vector::basis(n, b))?;
            if !v.is_zero() {
                return Ok(Some((a + 1, b + 1)));
            }
        }
    }
    Ok(None)
}

pub fn is_integrable(g: &LieAlgebra, j: &AlmostComplexStructure) -> bool {
    matches!(integrability_defect(g, j), Ok(None))
}

fn all_pairs(n: usize, mut f: impl FnMut(&Vector, &Vector) -> bool) -> bool {
    (0..n).all(|a| (0..n).all(|b| f(&Vector::basis(n, a), &Vector::basis(n, b))))
}

/// `[Jx, Jy] = [x, y]` for all x, y.
pub fn is_abelian_complex_structure(g: &LieAlgebra, j: &AlmostComplexStructure) -> bool {
    check(g, j).is_ok()
        && all_pairs(g.dim(), |x, y| {
            g.bracket_unchecked(&j.apply(x), &j.apply(y)) == g.bracket_unchecked(x, y)
        })
}

/// `J [x, y] = [Jx, y]` for all x, y.
pub fn is_complex_lie_structure(g: &LieAlgebra, j: &AlmostComplexStructure) -> bool {
    check(g, j).is_ok()
        && all_pairs(g.dim(), |x, y| {
            j.apply(&g.bracket_unchecked(x, y)) == g.bracket_unchecked(&j.apply(x), y)
        })
}

/// `Jᵀ G J = G` for the Gram matrix `G` of ω.
pub fn is_compatible(w: &TwoForm, j: &AlmostComplexStructure) -> bool {
    if w.dim() != j.dim() {
        return false;
    }
    let gm = w.gram();
    let jm = j.matrix();
    &(&jm.transpose() * &gm) * jm == gm
}

/// `A J1 = J2 A` for an automorphism `A`.
pub fn intertwines(
    g: &LieAlgebra,
    a: &Matrix,
    j1: &AlmostComplexStructure,
    j2: &AlmostComplexStructure,
) -> Result<bool> {
    check(g, j1)?;
    check(g, j2)?;
    match g.is_automorphism(a) {
        Ok(true) => {}
        Ok(false) | Err(Error::SingularMatrix) => return Err(Error::NotAnAutomorphism),
        Err(e) => return Err(e),
    }
    Ok(a * j1.matrix() == j2.matrix() * a)
}
