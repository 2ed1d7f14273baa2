//! Left-invariant pseudo-Riemannian geometry: metric from a compatible pair,
//! Levi-Civita connection, curvature, Ricci tensor and geodesic field.

use std::fmt;
use std::sync::OnceLock;

use num_traits::{Signed, Zero};

use crate::complex::{integrability_defect, AlmostComplexStructure};
use crate::error::{Error, Result};
use crate::exterior::{closedness_defect, is_nondegenerate, TwoForm};
use crate::lie::LieAlgebra;
use crate::linalg::{Matrix, Vector};
use crate::scalar::{self, Scalar};

/// Symmetric bilinear form used as a metric. The inverse is computed on
/// first use and cached.
pub struct MetricTensor {
    m: Matrix,
    inv: OnceLock<Option<Matrix>>,
}

impl MetricTensor {
    pub fn new(m: Matrix) -> Result<Self> {
        if !m.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        Ok(MetricTensor {
            m,
            inv: OnceLock::new(),
        })
    }

    pub fn matrix(&self) -> &Matrix {
        &self.m
    }

    pub fn dim(&self) -> usize {
        self.m.rows()
    }

    pub fn eval(&self, x: &Vector, y: &Vector) -> Scalar {
        self.m.bilinear(x, y)
    }

    pub fn inverse(&self) -> Result<&Matrix> {
        self.inv
            .get_or_init(|| self.m.inverse().ok())
            .as_ref()
            .ok_or(Error::DegenerateMetric)
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.inverse().is_ok()
    }

    pub fn signature(&self) -> (usize, usize) {
        signature(&self.m)
    }
}

impl Clone for MetricTensor {
    fn clone(&self) -> Self {
        MetricTensor {
            m: self.m.clone(),
            inv: self.inv.clone(),
        }
    }
}

impl PartialEq for MetricTensor {
    fn eq(&self, other: &Self) -> bool {
        self.m == other.m
    }
}

impl Eq for MetricTensor {}

impl fmt::Debug for MetricTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MetricTensor({:?})", self.m)
    }
}

/// Symmetric, possibly degenerate, bilinear form (the Ricci tensor).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetricBilinear(pub Matrix);

impl SymmetricBilinear {
    pub fn matrix(&self) -> &Matrix {
        &self.0
    }

    pub fn eval(&self, x: &Vector, y: &Vector) -> Scalar {
        self.0.bilinear(x, y)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_symmetric(&self) -> bool {
        self.0.is_symmetric()
    }
}

/// `g(x, y) = ω(Jx, y)`, i.e. the matrix `Jᵀ G`.
pub fn metric_from_pair(
    g: &LieAlgebra,
    j: &AlmostComplexStructure,
    w: &TwoForm,
) -> Result<MetricTensor> {
    if let Some((i, k)) = integrability_defect(g, j)? {
        return Err(Error::NotIntegrable { i, j: k });
    }
    if w.dim() != g.dim() {
        return Err(Error::DimensionMismatch {
            expected: g.dim(),
            found: w.dim(),
        });
    }
    if let Some((a, b, c)) = closedness_defect(g, w) {
        return Err(Error::NotClosed { i: a, j: b, k: c });
    }
    if !crate::complex::is_compatible(w, j) {
        return Err(Error::NotCompatible);
    }
    if !is_nondegenerate(w) {
        return Err(Error::Degenerate);
    }
    MetricTensor::new(&j.matrix().transpose() * &w.gram())
}

/// `(p, q)`: numbers of positive and negative squares after congruence
/// diagonalization; `p + q` is the rank.
pub fn signature(m: &Matrix) -> (usize, usize) {
    assert!(m.is_square());
    let mut a = m.clone();
    let mut active: Vec<usize> = (0..a.rows()).collect();
    let (mut p, mut q) = (0, 0);
    while !active.is_empty() {
        let piv = active.iter().copied().find(|&i| !a[(i, i)].is_zero());
        let piv = match piv {
            Some(i) => i,
            None => {
                // only off-diagonal entries remain: fold x_j into x_i
                let found = active.iter().copied().find_map(|i| {
                    active
                        .iter()
                        .copied()
                        .find(|&j| j != i && !a[(i, j)].is_zero())
                        .map(|j| (i, j))
                });
                let Some((i, j)) = found else { break };
                for r in 0..a.rows() {
                    let v = &a[(r, i)] + &a[(r, j)];
                    a[(r, i)] = v;
                }
                for c in 0..a.cols() {
                    let v = &a[(i, c)] + &a[(j, c)];
                    a[(i, c)] = v;
                }
                i
            }
        };
        let d = a[(piv, piv)].clone();
        if d.is_positive() {
            p += 1;
        } else {
            q += 1;
        }
        active.retain(|&t| t != piv);
        for &r in &active {
            if a[(r, piv)].is_zero() {
                continue;
            }
            let f = &a[(r, piv)] / &d;
            for &c in &active {
                let v = &a[(r, c)] - &f * &a[(piv, c)];
                a[(r, c)] = v;
            }
        }
        for &r in &active {
            a[(r, piv)] = Scalar::zero();
            a[(piv, r)] = Scalar::zero();
        }
    }
    (p, q)
}

/// Left-invariant connection: `∇_{e_i} e_j = Σ_k Γ^k_{ij} e_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Connection {
    n: usize,
    gamma: Vec<Vector>,
}

impl Connection {
    /// `f(i, j)` gives `∇_{e_i} e_j` (0-based).
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Vector) -> Self {
        let mut gamma = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                gamma.push(f(i, j));
            }
        }
        Connection { n, gamma }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn nabla_basis(&self, i: usize, j: usize) -> &Vector {
        &self.gamma[i * self.n + j]
    }

    /// `Γ^k_{ij}` (0-based).
    pub fn christoffel(&self, k: usize, i: usize, j: usize) -> &Scalar {
        &self.gamma[i * self.n + j][k]
    }

    pub fn nabla(&self, x: &Vector, y: &Vector) -> Vector {
        let mut out = Vector::zeros(self.n);
        for i in 0..self.n {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..self.n {
                if y[j].is_zero() {
                    continue;
                }
                out.axpy(&(&x[i] * &y[j]), self.nabla_basis(i, j));
            }
        }
        out
    }

    /// `∇_{e_i}` as a matrix: column `m` is `∇_{e_i} e_m`.
    pub fn operator(&self, i: usize) -> Matrix {
        Matrix::from_fn(self.n, self.n, |l, m| self.christoffel(l, i, m).clone())
    }

    pub fn operator_of(&self, x: &Vector) -> Matrix {
        let mut out = Matrix::zeros(self.n, self.n);
        for i in 0..self.n {
            if !x[i].is_zero() {
                out = &out + &self.operator(i).scale(&x[i]);
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.gamma.iter().all(Vector::is_zero)
    }

    /// Nonzero `Γ^k_{ij}` as 1-based `(k, i, j, value)`.
    pub fn nonzero_coefficients(&self) -> Vec<(usize, usize, usize, Scalar)> {
        let n = self.n;
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for (k, c) in self.nabla_basis(i, j).iter().enumerate() {
                    if !c.is_zero() {
                        out.push((k + 1, i + 1, j + 1, c.clone()));
                    }
                }
            }
        }
        out
    }
}

/// Koszul formula: `2g(∇_x y, z) = g([x,y],z) - g([y,z],x) + g([z,x],y)`.
pub fn levi_civita(g: &LieAlgebra, m: &MetricTensor) -> Result<Connection> {
    let n = g.dim();
    if m.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: m.dim(),
        });
    }
    let minv = m.inverse()?;
    let half = scalar::frac(1, 2);
    let e = |t| Vector::basis(n, t);
    Ok(Connection::from_fn(n, |i, j| {
        let rhs: Vector = (0..n)
            .map(|k| {
                let a = m.eval(&g.basis_bracket(i, j), &e(k));
                let b = m.eval(&g.basis_bracket(j, k), &e(i));
                let c = m.eval(&g.basis_bracket(k, i), &e(j));
                (a - b + c) * &half
            })
            .collect();
        minv.mul_vec(&rhs)
    }))
}

/// `∇_{e_i} (J e_j) = J ∇_{e_i} e_j` for all i, j.
pub fn is_parallel(conn: &Connection, j: &AlmostComplexStructure) -> bool {
    let jm = j.matrix();
    (0..conn.dim()).all(|i| {
        let l = conn.operator(i);
        &l * jm == jm * &l
    })
}

/// `R(e_i, e_j)` stored as matrices; entry `(l, k)` of the `(i, j)` matrix
/// is `R^l_{kij}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurvatureTensor {
    n: usize,
    ops: Vec<Matrix>,
}

impl CurvatureTensor {
    pub fn dim(&self) -> usize {
        self.n
    }

    /// `R(e_i, e_j)` as a matrix (0-based).
    pub fn operator(&self, i: usize, j: usize) -> &Matrix {
        &self.ops[i * self.n + j]
    }

    /// `R^l_{kij}` (0-based).
    pub fn component(&self, l: usize, k: usize, i: usize, j: usize) -> &Scalar {
        &self.ops[i * self.n + j][(l, k)]
    }

    pub fn apply(&self, x: &Vector, y: &Vector, z: &Vector) -> Vector {
        let n = self.n;
        let mut op = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let c = &x[i] * &y[j];
                if !c.is_zero() {
                    op = &op + &self.operator(i, j).scale(&c);
                }
            }
        }
        op.mul_vec(z)
    }

    pub fn is_zero(&self) -> bool {
        self.ops.iter().all(Matrix::is_zero)
    }

    /// Nonzero `R^l_{kij}` as 1-based `(l, k, i, j, value)`.
    pub fn nonzero_components(&self) -> Vec<(usize, usize, usize, usize, Scalar)> {
        let n = self.n;
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let op = self.operator(i, j);
                for l in 0..n {
                    for k in 0..n {
                        if !op[(l, k)].is_zero() {
                            out.push((l + 1, k + 1, i + 1, j + 1, op[(l, k)].clone()));
                        }
                    }
                }
            }
        }
        out
    }
}

/// `R(x,y) = [∇_x, ∇_y] - ∇_{[x,y]}`.
pub fn curvature(g: &LieAlgebra, conn: &Connection) -> CurvatureTensor {
    let n = g.dim();
    let ls: Vec<Matrix> = (0..n).map(|i| conn.operator(i)).collect();
    let mut ops = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let comm = &(&ls[i] * &ls[j]) - &(&ls[j] * &ls[i]);
            let br = conn.operator_of(&g.basis_bracket(i, j));
            ops.push(&comm - &br);
        }
    }
    CurvatureTensor { n, ops }
}

/// `ric(x, y) = tr(z ↦ R(z, x) y)`.
pub fn ricci(r: &CurvatureTensor) -> SymmetricBilinear {
    let n = r.dim();
    SymmetricBilinear(Matrix::from_fn(n, n, |a, b| {
        (0..n).fold(Scalar::zero(), |acc, c| acc + r.component(c, b, c, a))
    }))
}

/// `g(R(v,w)w, v)`.
pub fn plane_curvature(r: &CurvatureTensor, m: &MetricTensor, v: &Vector, w: &Vector) -> Scalar {
    m.eval(&r.apply(v, w, w), v)
}

/// The geodesic vector field `x ↦ -∇_x x`.
pub fn geodesic_field(conn: &Connection, x: &Vector) -> Vector {
    -&conn.nabla(x, x)
}

/// One sample of an approximate trajectory.
#[derive(Clone, Debug, PartialEq)]
pub struct GeodesicSample {
    pub t: f64,
    pub x: Vec<f64>,
}

/// Classical fixed-step RK4 for `x' = -∇_x x` in double precision. Returns
/// `steps + 1` samples including the initial point.
pub fn integrate_geodesic(conn: &Connection, x0: &[f64], t_end: f64, steps: usize) -> Vec<GeodesicSample> {
    let n = conn.dim();
    assert_eq!(x0.len(), n, "initial point has the wrong dimension");
    let steps = steps.max(1);
    let gamma: Vec<Vec<f64>> = (0..n * n)
        .map(|p| conn.nabla_basis(p / n, p % n).to_f64())
        .collect();
    let field = |x: &[f64]| -> Vec<f64> {
        let mut out = vec![0.0; n];
        for i in 0..n {
            for j in 0..n {
                let c = x[i] * x[j];
                if c == 0.0 {
                    continue;
                }
                for (k, o) in out.iter_mut().enumerate() {
                    *o -= c * gamma[i * n + j][k];
                }
            }
        }
        out
    };
    let h = t_end / steps as f64;
    let mut x = x0.to_vec();
    let mut samples = vec![GeodesicSample { t: 0.0, x: x.clone() }];
    let shift = |x: &[f64], k: &[f64], s: f64| -> Vec<f64> {
        x.iter().zip(k).map(|(a, b)| a + s * b).collect()
    };
    for step in 1..=steps {
        let k1 = field(&x);
        let k2 = field(&shift(&x, &k1, h / 2.0));
        let k3 = field(&shift(&x, &k2, h / 2.0));
        let k4 = field(&shift(&x, &k3, h));
        for t in 0..n {
            x[t] += h / 6.0 * (k1[t] + 2.0 * k2[t] + 2.0 * k3[t] + k4[t]);
        }
        samples.push(GeodesicSample {
            t: h * step as f64,
            x: x.clone(),
        });
    }
    samples
}
