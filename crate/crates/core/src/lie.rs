//! Finite-dimensional real Lie algebras given by structure constants.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::{Matrix, Vector};
use crate::poly::characteristic_polynomial;
use crate::scalar::{self, Scalar};

/// One structure constant `c^k_{ij}` with 1-based labels and `i < j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BracketEntry {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub c: Scalar,
}

impl BracketEntry {
    pub fn new(i: usize, j: usize, k: usize, c: Scalar) -> Self {
        BracketEntry { i, j, k, c }
    }
}

/// Linear subspace of `R^n`, kept with a reduced row-echelon basis so that
/// equal subspaces compare equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vector>,
}

impl Subspace {
    /// Fails with `LinearlyDependent` unless the vectors are independent.
    pub fn new(ambient: usize, vectors: Vec<Vector>) -> Result<Self> {
        let k = vectors.len();
        let s = Self::span(ambient, vectors)?;
        if s.dim() < k {
            return Err(Error::LinearlyDependent);
        }
        Ok(s)
    }

    /// Span of arbitrary vectors.
    pub fn span(ambient: usize, vectors: Vec<Vector>) -> Result<Self> {
        if let Some(v) = vectors.iter().find(|v| v.len() != ambient) {
            return Err(Error::DimensionMismatch {
                expected: ambient,
                found: v.len(),
            });
        }
        if vectors.is_empty() {
            return Ok(Self::zero(ambient));
        }
        let rows = vectors.into_iter().map(Vector::into_inner).collect();
        let (r, pivots) = Matrix::from_rows(rows)?.rref();
        Ok(Subspace {
            ambient,
            basis: (0..pivots.len()).map(|i| r.row(i)).collect(),
        })
    }

    /// Span of basis vectors given by 1-based labels.
    pub fn coordinate(ambient: usize, labels: &[usize]) -> Result<Self> {
        let mut vs = Vec::with_capacity(labels.len());
        for &l in labels {
            if l == 0 || l > ambient {
                return Err(Error::IndexOutOfRange {
                    index: l,
                    dim: ambient,
                });
            }
            vs.push(Vector::basis(ambient, l - 1));
        }
        Self::new(ambient, vs)
    }

    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Vec::new(),
        }
    }

    pub fn whole(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: (0..ambient).map(|i| Vector::basis(ambient, i)).collect(),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    pub fn contains(&self, v: &Vector) -> bool {
        if v.len() != self.ambient {
            return false;
        }
        // reduce v against the echelon basis
        let mut r = v.clone();
        for b in &self.basis {
            let p = b.iter().position(|c| !c.is_zero()).unwrap();
            if !r[p].is_zero() {
                let c = -r[p].clone();
                r.axpy(&c, b);
            }
        }
        r.is_zero()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let vs = self.basis.iter().chain(&other.basis).cloned().collect();
        Self::span(self.ambient, vs).expect("same ambient dimension")
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        let (a, b) = (self.dim(), other.dim());
        if a == 0 || b == 0 {
            return Self::zero(self.ambient);
        }
        let n = self.ambient;
        let m = Matrix::from_fn(n, a + b, |i, j| {
            if j < a {
                self.basis[j][i].clone()
            } else {
                -other.basis[j - a][i].clone()
            }
        });
        let vs = m
            .nullspace()
            .into_iter()
            .map(|c| {
                let mut v = Vector::zeros(n);
                for (t, bt) in self.basis.iter().enumerate() {
                    v.axpy(&c[t], bt);
                }
                v
            })
            .collect();
        Self::span(n, vs).expect("same ambient dimension")
    }

    /// Image under a linear map.
    pub fn image(&self, a: &Matrix) -> Subspace {
        let vs = self.basis.iter().map(|v| a.mul_vec(v)).collect();
        Self::span(a.rows(), vs).expect("matrix image")
    }

    /// Basis vectors as the columns of an `n x dim` matrix.
    pub fn matrix(&self) -> Matrix {
        Matrix::from_columns(self.ambient, &self.basis)
    }
}

/// Lie algebra on `R^n` with basis `e_1..e_n`. Only the brackets `[e_i, e_j]`
/// with `i < j` are stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebra {
    dim: usize,
    table: Vec<Vector>,
}

fn pair_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < n);
    i * n - i * (i + 1) / 2 + (j - i - 1)
}

/// Weights of the fixed combination used by the real-spectrum test.
fn generic_weights(n: usize) -> Vector {
    (0..n).map(|i| scalar::int((i * i + 2 * i + 2) as i64)).collect()
}

impl LieAlgebra {
    /// Builds and validates an algebra from structure constants with 1-based
    /// labels and `i < j`. Repeated entries accumulate.
    pub fn new(dim: usize, brackets: &[BracketEntry]) -> Result<Self> {
        let g = Self::assemble(dim, brackets)?;
        g.check_jacobi()?;
        Ok(g)
    }

    /// Every basis triple `i < j < k` (1-based) on which the given
    /// constants violate the Jacobi identity.
    pub fn jacobi_violations(dim: usize, brackets: &[BracketEntry]) -> Result<Vec<(usize, usize, usize)>> {
        let g = Self::assemble(dim, brackets)?;
        let n = g.dim;
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    if !g.jacobiator(i, j, k).is_zero() {
                        out.push((i + 1, j + 1, k + 1));
                    }
                }
            }
        }
        Ok(out)
    }

    fn assemble(dim: usize, brackets: &[BracketEntry]) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Schema("dimension must be positive".into()));
        }
        let mut table = vec![Vector::zeros(dim); dim * (dim - 1) / 2];
        for b in brackets {
            for index in [b.i, b.j, b.k] {
                if index == 0 || index > dim {
                    return Err(Error::IndexOutOfRange { index, dim });
                }
            }
            if b.i >= b.j {
                return Err(Error::BadBracketOrder { i: b.i, j: b.j });
            }
            table[pair_index(dim, b.i - 1, b.j - 1)][b.k - 1] += &b.c;
        }
        Ok(LieAlgebra { dim, table })
    }

    /// Builds from relations `[e_i, e_j] = v` written in any order (`i != j`,
    /// 1-based), as the brackets are usually printed.
    pub fn from_relations(dim: usize, relations: &[(usize, usize, Vector)]) -> Result<Self> {
        let mut entries = Vec::new();
        for (i, j, v) in relations {
            if v.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: v.len(),
                });
            }
            if i == j {
                return Err(Error::BadBracketOrder { i: *i, j: *j });
            }
            let (a, b, sign) = if i < j { (*i, *j, 1) } else { (*j, *i, -1) };
            for (k, c) in v.iter().enumerate() {
                if !c.is_zero() {
                    entries.push(BracketEntry::new(a, b, k + 1, c * scalar::int(sign)));
                }
            }
        }
        Self::new(dim, &entries)
    }

    pub fn abelian(dim: usize) -> Self {
        Self::new(dim, &[]).expect("abelian algebra")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Nonzero structure constants, 1-based, `i < j`, sorted.
    pub fn structure_constants(&self) -> Vec<BracketEntry> {
        let n = self.dim;
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                for (k, c) in self.table[pair_index(n, i, j)].iter().enumerate() {
                    if !c.is_zero() {
                        out.push(BracketEntry::new(i + 1, j + 1, k + 1, c.clone()));
                    }
                }
            }
        }
        out
    }

    /// `[e_i, e_j]` for 0-based indices.
    pub fn basis_bracket(&self, i: usize, j: usize) -> Vector {
        use std::cmp::Ordering::*;
        match i.cmp(&j) {
            Less => self.table[pair_index(self.dim, i, j)].clone(),
            Greater => -&self.table[pair_index(self.dim, j, i)],
            Equal => Vector::zeros(self.dim),
        }
    }

    fn check_dim(&self, v: &Vector) -> Result<()> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: v.len(),
            });
        }
        Ok(())
    }

    pub fn bracket(&self, x: &Vector, y: &Vector) -> Result<Vector> {
        self.check_dim(x)?;
        self.check_dim(y)?;
        Ok(self.bracket_unchecked(x, y))
    }

    pub(crate) fn bracket_unchecked(&self, x: &Vector, y: &Vector) -> Vector {
        let n = self.dim;
        let mut out = Vector::zeros(n);
        for i in 0..n {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if i == j || y[j].is_zero() {
                    continue;
                }
                let c = &x[i] * &y[j];
                out.axpy(&c, &self.basis_bracket(i, j));
            }
        }
        out
    }

    /// `ad_x` as a matrix: column `j` is `[x, e_j]`.
    pub fn ad(&self, x: &Vector) -> Result<Matrix> {
        self.check_dim(x)?;
        let cols: Vec<Vector> = (0..self.dim)
            .map(|j| self.bracket_unchecked(x, &Vector::basis(self.dim, j)))
            .collect();
        Ok(Matrix::from_columns(self.dim, &cols))
    }

    fn ad_basis(&self, i: usize) -> Matrix {
        let cols: Vec<Vector> = (0..self.dim).map(|j| self.basis_bracket(i, j)).collect();
        Matrix::from_columns(self.dim, &cols)
    }

    /// Cyclic sum `[[x,y],z] + [[y,z],x] + [[z,x],y]` on basis vectors (0-based).
    pub fn jacobiator(&self, i: usize, j: usize, k: usize) -> Vector {
        let e = |t| Vector::basis(self.dim, t);
        let a = self.bracket_unchecked(&self.basis_bracket(i, j), &e(k));
        let b = self.bracket_unchecked(&self.basis_bracket(j, k), &e(i));
        let c = self.bracket_unchecked(&self.basis_bracket(k, i), &e(j));
        &(&a + &b) + &c
    }

    fn check_jacobi(&self) -> Result<()> {
        let n = self.dim;
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    if !self.jacobiator(i, j, k).is_zero() {
                        return Err(Error::JacobiViolation {
                            i: i + 1,
                            j: j + 1,
                            k: k + 1,
                        });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn is_abelian(&self) -> bool {
        self.table.iter().all(Vector::is_zero)
    }

    /// Span of `[a, b]` over basis vectors of the two subspaces.
    pub fn bracket_subspaces(&self, s: &Subspace, t: &Subspace) -> Subspace {
        let vs = s
            .basis()
            .iter()
            .flat_map(|a| t.basis().iter().map(move |b| (a, b)))
            .map(|(a, b)| self.bracket_unchecked(a, b))
            .collect();
        Subspace::span(self.dim, vs).expect("same ambient dimension")
    }

    /// The commutator ideal.
    pub fn derived_algebra(&self) -> Subspace {
        Subspace::span(self.dim, self.table.clone()).expect("same ambient dimension")
    }

    pub fn is_unimodular(&self) -> bool {
        (0..self.dim).all(|i| self.ad_basis(i).trace().is_zero())
    }

    pub fn derived_series(&self) -> Vec<Subspace> {
        let mut series = vec![Subspace::whole(self.dim)];
        loop {
            let last = series.last().unwrap();
            let next = self.bracket_subspaces(last, last);
            if next.dim() == last.dim() {
                return series;
            }
            let done = next.is_zero();
            series.push(next);
            if done {
                return series;
            }
        }
    }

    pub fn lower_central_series(&self) -> Vec<Subspace> {
        let whole = Subspace::whole(self.dim);
        let mut series = vec![whole.clone()];
        loop {
            let last = series.last().unwrap();
            let next = self.bracket_subspaces(&whole, last);
            if next.dim() == last.dim() {
                return series;
            }
            let done = next.is_zero();
            series.push(next);
            if done {
                return series;
            }
        }
    }

    pub fn is_solvable(&self) -> bool {
        self.derived_series().last().unwrap().is_zero()
    }

    pub fn is_nilpotent(&self) -> bool {
        self.lower_central_series().last().unwrap().is_zero()
    }

    /// Solvable, and `ad_x` has only real eigenvalues for every basis vector
    /// and for one fixed generic combination of them.
    pub fn is_completely_solvable(&self) -> bool {
        if !self.is_solvable() {
            return false;
        }
        let generic = self
            .ad(&generic_weights(self.dim))
            .expect("weights have the algebra's dimension");
        (0..self.dim)
            .map(|i| self.ad_basis(i))
            .chain(std::iter::once(generic))
            .all(|m| characteristic_polynomial(&m).has_only_real_roots())
    }

    pub fn is_subalgebra(&self, s: &Subspace) -> Result<bool> {
        self.check_subspace(s)?;
        Ok(s.contains_subspace(&self.bracket_subspaces(s, s)))
    }

    pub fn is_ideal(&self, s: &Subspace) -> Result<bool> {
        self.check_subspace(s)?;
        let whole = Subspace::whole(self.dim);
        Ok(s.contains_subspace(&self.bracket_subspaces(&whole, s)))
    }

    /// `[s, s] = 0`.
    pub fn is_abelian_subspace(&self, s: &Subspace) -> Result<bool> {
        self.check_subspace(s)?;
        Ok(self.bracket_subspaces(s, s).is_zero())
    }

    fn check_subspace(&self, s: &Subspace) -> Result<()> {
        if s.ambient_dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: s.ambient_dim(),
            });
        }
        Ok(())
    }

    fn check_square(&self, a: &Matrix) -> Result<()> {
        if a.rows() != self.dim || a.cols() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: if a.rows() != self.dim { a.rows() } else { a.cols() },
            });
        }
        Ok(())
    }

    pub fn is_automorphism(&self, a: &Matrix) -> Result<bool> {
        self.is_isomorphism(self, a)
    }

    /// True iff `A [x, y]_self = [Ax, Ay]_target` on basis pairs.
    pub fn is_isomorphism(&self, target: &LieAlgebra, a: &Matrix) -> Result<bool> {
        self.check_square(a)?;
        target.check_square(a)?;
        if a.determinant().is_zero() {
            return Err(Error::SingularMatrix);
        }
        let n = self.dim;
        let cols: Vec<Vector> = (0..n).map(|i| a.column(i)).collect();
        Ok((0..n).all(|i| {
            (i + 1..n).all(|j| {
                a.mul_vec(&self.basis_bracket(i, j)) == target.bracket_unchecked(&cols[i], &cols[j])
            })
        }))
    }
}

/// Shorthand for [`LieAlgebra::new`].
pub fn new_lie_algebra(dim: usize, brackets: &[BracketEntry]) -> Result<LieAlgebra> {
    LieAlgebra::new(dim, brackets)
}
