//! JSON documents for algebras, forms, complex structures, associative
//! algebras and computed tensors. Scalars are canonical fraction strings and
//! labels are 1-based.

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::affine::{AssociativeAlgebra, ComplexAlgebraRealification};
use crate::complex::AlmostComplexStructure;
use crate::error::{Error, Result};
use crate::exterior::TwoForm;
use crate::lie::{BracketEntry, LieAlgebra, Subspace};
use crate::linalg::{Matrix, Vector};
use crate::riemann::{Connection, CurvatureTensor, MetricTensor};
use crate::scalar::{self, Scalar};

/// Parses a document, mapping syntax and schema errors to positioned errors.
pub fn parse<T: DeserializeOwned>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

/// Canonical pretty-printed form followed by a newline.
pub fn emit<T: Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("documents serialize");
    s.push('\n');
    s
}

pub fn matrix_to_strings(m: &Matrix) -> Vec<Vec<String>> {
    m.to_rows()
        .iter()
        .map(|r| r.iter().map(scalar::format).collect())
        .collect()
}

pub fn matrix_from_strings(rows: &[Vec<String>]) -> Result<Matrix> {
    let parsed = rows
        .iter()
        .map(|r| r.iter().map(|t| scalar::parse(t)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    if parsed.is_empty() {
        return Err(Error::Schema("empty matrix".into()));
    }
    Matrix::from_rows(parsed)
}

pub fn vector_to_strings(v: &Vector) -> Vec<String> {
    v.iter().map(scalar::format).collect()
}

pub fn vector_from_strings(v: &[String]) -> Result<Vector> {
    v.iter().map(|t| scalar::parse(t)).collect::<Result<Vec<_>>>().map(Vector::new)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketDoc {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    #[serde(with = "scalar::serde_str")]
    pub c: Scalar,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraDoc {
    pub dim: usize,
    pub brackets: Vec<BracketDoc>,
}

impl AlgebraDoc {
    pub fn from_algebra(g: &LieAlgebra) -> Self {
        AlgebraDoc {
            dim: g.dim(),
            brackets: g
                .structure_constants()
                .into_iter()
                .map(|b| BracketDoc {
                    i: b.i,
                    j: b.j,
                    k: b.k,
                    c: b.c,
                })
                .collect(),
        }
    }

    pub fn entries(&self) -> Vec<BracketEntry> {
        self.brackets
            .iter()
            .map(|b| BracketEntry::new(b.i, b.j, b.k, b.c.clone()))
            .collect()
    }

    pub fn to_algebra(&self) -> Result<LieAlgebra> {
        LieAlgebra::new(self.dim, &self.entries())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FormCoeff {
    pub i: usize,
    pub j: usize,
    #[serde(with = "scalar::serde_str")]
    pub w: Scalar,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormDoc {
    pub coeffs: Vec<FormCoeff>,
}

impl FormDoc {
    pub fn from_form(w: &TwoForm) -> Self {
        FormDoc {
            coeffs: w
                .terms()
                .into_iter()
                .map(|(i, j, w)| FormCoeff { i, j, w })
                .collect(),
        }
    }

    /// The form in dimension `n`; indices must satisfy `i < j <= n` and
    /// appear at most once.
    pub fn to_form(&self, n: usize) -> Result<TwoForm> {
        let mut seen = std::collections::BTreeSet::new();
        let mut terms = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            if c.i >= c.j {
                return Err(Error::BadBracketOrder { i: c.i, j: c.j });
            }
            if !seen.insert((c.i, c.j)) {
                return Err(Error::Schema(format!("coefficient ({},{}) given twice", c.i, c.j)));
            }
            terms.push((c.i, c.j, c.w.clone()));
        }
        TwoForm::from_terms(n, &terms)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JDoc {
    #[serde(rename = "J")]
    pub j: Vec<Vec<String>>,
}

impl JDoc {
    pub fn from_structure(j: &AlmostComplexStructure) -> Self {
        JDoc {
            j: matrix_to_strings(j.matrix()),
        }
    }

    /// Validates `J² = -I` on load.
    pub fn to_structure(&self) -> Result<AlmostComplexStructure> {
        AlmostComplexStructure::new(matrix_from_strings(&self.j)?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AssociativeDoc {
    pub dim: usize,
    pub products: Vec<BracketDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub iota: Option<Vec<Vec<String>>>,
}

/// Either a real algebra or a realified complex one, as loaded.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LoadedAssociative {
    Real(AssociativeAlgebra),
    Complex(ComplexAlgebraRealification),
}

impl AssociativeDoc {
    pub fn from_algebra(a: &AssociativeAlgebra, iota: Option<&Matrix>) -> Self {
        AssociativeDoc {
            dim: a.dim(),
            products: a
                .products()
                .into_iter()
                .map(|(i, j, k, c)| BracketDoc { i, j, k, c })
                .collect(),
            iota: iota.map(matrix_to_strings),
        }
    }

    pub fn load(&self) -> Result<LoadedAssociative> {
        let products: Vec<_> = self
            .products
            .iter()
            .map(|p| (p.i, p.j, p.k, p.c.clone()))
            .collect();
        let a = AssociativeAlgebra::new(self.dim, &products)?;
        match &self.iota {
            None => Ok(LoadedAssociative::Real(a)),
            Some(rows) => Ok(LoadedAssociative::Complex(ComplexAlgebraRealification::new(
                a,
                matrix_from_strings(rows)?,
            )?)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MetricDoc {
    pub g: Vec<Vec<String>>,
}

impl MetricDoc {
    pub fn from_metric(m: &MetricTensor) -> Self {
        MetricDoc {
            g: matrix_to_strings(m.matrix()),
        }
    }

    pub fn to_metric(&self) -> Result<MetricTensor> {
        MetricTensor::new(matrix_from_strings(&self.g)?)
    }
}

/// `∇_{e_i} e_j = Σ_k c e_k`, nonzero coefficients only.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConnectionDoc {
    pub dim: usize,
    pub coeffs: Vec<BracketDoc>,
}

impl ConnectionDoc {
    pub fn from_connection(c: &Connection) -> Self {
        ConnectionDoc {
            dim: c.dim(),
            coeffs: c
                .nonzero_coefficients()
                .into_iter()
                .map(|(k, i, j, c)| BracketDoc { i, j, k, c })
                .collect(),
        }
    }

    pub fn to_connection(&self) -> Result<Connection> {
        let n = self.dim;
        let mut table = vec![vec![Vector::zeros(n); n]; n];
        for e in &self.coeffs {
            for index in [e.i, e.j, e.k] {
                if index == 0 || index > n {
                    return Err(Error::IndexOutOfRange { index, dim: n });
                }
            }
            table[e.i - 1][e.j - 1][e.k - 1] += &e.c;
        }
        Ok(Connection::from_fn(n, |i, j| table[i][j].clone()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurvatureComponent {
    pub l: usize,
    pub k: usize,
    pub i: usize,
    pub j: usize,
    #[serde(with = "scalar::serde_str")]
    pub c: Scalar,
}

/// Sparse `R^l_{kij}`, the `e_l` component of `R(e_i, e_j) e_k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurvatureDoc {
    pub dim: usize,
    pub components: Vec<CurvatureComponent>,
}

impl CurvatureDoc {
    pub fn from_curvature(r: &CurvatureTensor) -> Self {
        CurvatureDoc {
            dim: r.dim(),
            components: r
                .nonzero_components()
                .into_iter()
                .map(|(l, k, i, j, c)| CurvatureComponent { l, k, i, j, c })
                .collect(),
        }
    }
}

/// A subspace as its echelon basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubspaceDoc {
    pub basis: Vec<Vec<String>>,
}

impl SubspaceDoc {
    pub fn from_subspace(s: &Subspace) -> Self {
        SubspaceDoc {
            basis: s.basis().iter().map(vector_to_strings).collect(),
        }
    }

    pub fn to_subspace(&self, ambient: usize) -> Result<Subspace> {
        let vs = self
            .basis
            .iter()
            .map(|v| vector_from_strings(v))
            .collect::<Result<Vec<_>>>()?;
        if vs.iter().any(|v| v.len() != ambient) {
            return Err(Error::DimensionMismatch {
                expected: ambient,
                found: vs.iter().map(Vector::len).find(|&l| l != ambient).unwrap_or(0),
            });
        }
        Subspace::new(ambient, vs)
    }
}
