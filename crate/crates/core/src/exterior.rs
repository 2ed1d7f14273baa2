//! Chevalley–Eilenberg forms of degree one to three.
//!
//! Sign convention: `dα(x,y) = -α([x,y])`, and for 2-forms
//! `dω(x,y,z) = -ω([x,y],z) + ω([x,z],y) - ω([y,z],x)`.

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::lie::LieAlgebra;
use crate::linalg::{Matrix, Vector};
use crate::scalar::{self, Scalar};

/// Coefficients on the dual basis `e^1..e^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OneForm(pub Vector);

impl OneForm {
    pub fn dual_basis(n: usize, i: usize) -> Self {
        OneForm(Vector::basis(n, i))
    }

    pub fn eval(&self, x: &Vector) -> Scalar {
        self.0.dot(x)
    }
}

/// 2-form stored by its coefficients `w_{ij}`, `i < j`, so that
/// `e^{ij}(e_i, e_j) = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TwoForm {
    n: usize,
    coeffs: Vec<Scalar>,
}

/// Upper-triangle index pairs `(i, j)`, `i < j`, in row order.
pub fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |i| (i + 1..n).map(move |j| (i, j)))
}

pub fn triples(n: usize) -> impl Iterator<Item = (usize, usize, usize)> {
    (0..n).flat_map(move |i| {
        (i + 1..n).flat_map(move |j| (j + 1..n).map(move |k| (i, j, k)))
    })
}

fn pair_index(n: usize, i: usize, j: usize) -> usize {
    i * n - i * (i + 1) / 2 + (j - i - 1)
}

impl TwoForm {
    pub fn zero(n: usize) -> Self {
        TwoForm {
            n,
            coeffs: vec![Scalar::zero(); n * n.saturating_sub(1) / 2],
        }
    }

    /// `Σ c e^{ij}` from 1-based `(i, j, c)` terms; `i > j` contributes `-c e^{ji}`.
    pub fn from_terms(n: usize, terms: &[(usize, usize, Scalar)]) -> Result<Self> {
        let mut w = Self::zero(n);
        for (i, j, c) in terms {
            for &index in [i, j] {
                if index == 0 || index > n {
                    return Err(Error::IndexOutOfRange { index, dim: n });
                }
            }
            if i == j {
                return Err(Error::BadBracketOrder { i: *i, j: *j });
            }
            let (a, b, c) = if i < j {
                (*i - 1, *j - 1, c.clone())
            } else {
                (*j - 1, *i - 1, -c)
            };
            w.coeffs[pair_index(n, a, b)] += c;
        }
        Ok(w)
    }

    /// Integer shorthand for tests and fixtures.
    pub fn from_int_terms(n: usize, terms: &[(usize, usize, i64)]) -> Self {
        let t: Vec<_> = terms.iter().map(|&(i, j, c)| (i, j, scalar::int(c))).collect();
        Self::from_terms(n, &t).expect("valid integer terms")
    }

    /// The form whose Gram matrix is `g`, which must be antisymmetric.
    pub fn from_gram(g: &Matrix) -> Result<Self> {
        if !g.is_antisymmetric() {
            return Err(Error::Schema("2-form Gram matrix is not antisymmetric".into()));
        }
        let n = g.rows();
        Ok(TwoForm {
            n,
            coeffs: pairs(n).map(|(i, j)| g[(i, j)].clone()).collect(),
        })
    }

    /// Coordinates in the basis `{e^{ij}}_{i<j}` in row order.
    pub fn from_coordinates(n: usize, v: &Vector) -> Self {
        assert_eq!(v.len(), n * (n - 1) / 2);
        TwoForm {
            n,
            coeffs: v.as_slice().to_vec(),
        }
    }

    pub fn coordinates(&self) -> Vector {
        Vector::new(self.coeffs.clone())
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// `ω(e_i, e_j)` for 0-based indices.
    pub fn coeff(&self, i: usize, j: usize) -> Scalar {
        use std::cmp::Ordering::*;
        match i.cmp(&j) {
            Less => self.coeffs[pair_index(self.n, i, j)].clone(),
            Greater => -&self.coeffs[pair_index(self.n, j, i)],
            Equal => Scalar::zero(),
        }
    }

    /// Nonzero terms as 1-based `(i, j, w)`, `i < j`.
    pub fn terms(&self) -> Vec<(usize, usize, Scalar)> {
        pairs(self.n)
            .zip(&self.coeffs)
            .filter(|(_, c)| !c.is_zero())
            .map(|((i, j), c)| (i + 1, j + 1, c.clone()))
            .collect()
    }

    pub fn gram(&self) -> Matrix {
        Matrix::from_fn(self.n, self.n, |i, j| self.coeff(i, j))
    }

    pub fn eval(&self, x: &Vector, y: &Vector) -> Scalar {
        let mut acc = Scalar::zero();
        for (p, (i, j)) in pairs(self.n).enumerate() {
            let c = &self.coeffs[p];
            if c.is_zero() {
                continue;
            }
            let m = &x[i] * &y[j] - &x[j] * &y[i];
            if !m.is_zero() {
                acc += c * m;
            }
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &TwoForm) -> TwoForm {
        assert_eq!(self.n, other.n);
        TwoForm {
            n: self.n,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> TwoForm {
        TwoForm {
            n: self.n,
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn neg(&self) -> TwoForm {
        self.scale(&-Scalar::one())
    }
}

impl fmt::Display for TwoForm {
    /// Prints as e.g. `e12 - 1/2 e34`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms();
        if terms.is_empty() {
            return write!(f, "0");
        }
        let label = |i: usize, j: usize| {
            if self.n < 10 {
                format!("e{i}{j}")
            } else {
                format!("e{i},{j}")
            }
        };
        for (t, (i, j, c)) in terms.iter().enumerate() {
            let neg = c.is_negative();
            match (t, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let a = c.abs();
            if a.is_one() {
                write!(f, "{}", label(*i, *j))?;
            } else {
                write!(f, "{} {}", scalar::format(&a), label(*i, *j))?;
            }
        }
        Ok(())
    }
}

/// 3-form stored by coefficients `t_{ijk}`, `i < j < k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThreeForm {
    n: usize,
    coeffs: Vec<((usize, usize, usize), Scalar)>,
}

impl ThreeForm {
    /// Value on `(e_i, e_j, e_k)` for 0-based `i < j < k`.
    pub fn coeff(&self, i: usize, j: usize, k: usize) -> Scalar {
        self.coeffs
            .iter()
            .find(|(t, _)| *t == (i, j, k))
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Scalar::zero)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Nonzero coefficients as 1-based `(i, j, k, t)`.
    pub fn terms(&self) -> Vec<(usize, usize, usize, Scalar)> {
        self.coeffs
            .iter()
            .map(|((i, j, k), c)| (i + 1, j + 1, k + 1, c.clone()))
            .collect()
    }
}

pub fn d_one(g: &LieAlgebra, alpha: &OneForm) -> TwoForm {
    let n = g.dim();
    TwoForm {
        n,
        coeffs: pairs(n)
            .map(|(i, j)| -alpha.eval(&g.basis_bracket(i, j)))
            .collect(),
    }
}

/// `dω` on the basis triple `(i, j, k)` (0-based).
pub(crate) fn d_two_at(g: &LieAlgebra, w: &TwoForm, i: usize, j: usize, k: usize) -> Scalar {
    let e = |t| Vector::basis(g.dim(), t);
    -w.eval(&g.basis_bracket(i, j), &e(k)) + w.eval(&g.basis_bracket(i, k), &e(j))
        - w.eval(&g.basis_bracket(j, k), &e(i))
}

pub fn d_two(g: &LieAlgebra, w: &TwoForm) -> ThreeForm {
    let n = g.dim();
    assert_eq!(n, w.dim(), "form and algebra dimensions differ");
    ThreeForm {
        n,
        coeffs: triples(n)
            .map(|t| (t, d_two_at(g, w, t.0, t.1, t.2)))
            .filter(|(_, c)| !c.is_zero())
            .collect(),
    }
}

pub fn is_closed(g: &LieAlgebra, w: &TwoForm) -> bool {
    triples(g.dim()).all(|(i, j, k)| d_two_at(g, w, i, j, k).is_zero())
}

/// First basis triple (1-based) on which `dω` is nonzero.
pub fn closedness_defect(g: &LieAlgebra, w: &TwoForm) -> Option<(usize, usize, usize)> {
    triples(g.dim())
        .find(|&(i, j, k)| !d_two_at(g, w, i, j, k).is_zero())
        .map(|(i, j, k)| (i + 1, j + 1, k + 1))
}

/// Maximal rank; always false in odd dimension.
pub fn is_nondegenerate(w: &TwoForm) -> bool {
    w.dim().is_multiple_of(2) && w.dim() > 0 && !w.gram().determinant().is_zero()
}
