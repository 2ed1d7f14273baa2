//! `aff(A) = A ⊕ A` for a commutative associative algebra `A`, with bracket
//! `[(a,b),(c,d)] = (ac - ca, ad - cb)`.
//!
//! Basis convention: for `A` of dimension `m` with basis `f_1..f_m`, the Lie
//! algebra basis is `v_i = (f_i, 0)` (labels `1..m`) followed by
//! `w_i = (0, f_i)` (labels `m+1..2m`).

use num_traits::Zero;
use sha2::{Digest, Sha256};

use crate::catalog::{self, CatalogEntry, FormFamily, Params, RegisteredStructure, StructureKind, Witness, WitnessKind};
use crate::complex::{is_compatible, is_integrable, AlmostComplexStructure};
use crate::error::{Error, Result};
use crate::exterior::{is_closed, is_nondegenerate, TwoForm};
use crate::lie::{BracketEntry, LieAlgebra, Subspace};
use crate::linalg::{Matrix, Vector};
use crate::riemann::{curvature, is_parallel, levi_civita, ricci, Connection, MetricTensor};
use crate::scalar::{self, Scalar};

/// Finite-dimensional real algebra given by `f_i f_j = Σ_k m^k_{ij} f_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AssociativeAlgebra {
    m: usize,
    /// `table[i][j] = f_i f_j`
    table: Vec<Vec<Vector>>,
}

impl AssociativeAlgebra {
    /// From 1-based entries `(i, j, k, c)`; repeated `(i, j, k)` are summed.
    /// Checks commutativity and associativity on all basis elements.
    pub fn new(m: usize, products: &[(usize, usize, usize, Scalar)]) -> Result<Self> {
        if m == 0 {
            return Err(Error::Schema("algebra dimension must be positive".into()));
        }
        let mut table = vec![vec![Vector::zeros(m); m]; m];
        for (i, j, k, c) in products {
            for &l in [i, j, k].iter() {
                if *l == 0 || *l > m {
                    return Err(Error::IndexOutOfRange { index: *l, dim: m });
                }
            }
            table[i - 1][j - 1][k - 1] += c;
        }
        let a = AssociativeAlgebra { m, table };
        a.check()?;
        Ok(a)
    }

    /// Entries listed once for `i <= j` and mirrored.
    pub fn commutative(m: usize, products: &[(usize, usize, usize, Scalar)]) -> Result<Self> {
        let mut all = products.to_vec();
        for (i, j, k, c) in products {
            if i != j {
                all.push((*j, *i, *k, c.clone()));
            }
        }
        Self::new(m, &all)
    }

    /// `ℝ^m` with componentwise product.
    pub fn product_of_reals(m: usize) -> Self {
        let p: Vec<_> = (1..=m).map(|i| (i, i, i, scalar::one())).collect();
        Self::new(m, &p).expect("componentwise product is commutative and associative")
    }

    fn check(&self) -> Result<()> {
        let m = self.m;
        for i in 0..m {
            for j in 0..m {
                if self.table[i][j] != self.table[j][i] {
                    return Err(Error::NotCommutative { i: i + 1, j: j + 1 });
                }
            }
        }
        for i in 0..m {
            for j in 0..m {
                for k in 0..m {
                    let left = self.mul(&self.table[i][j], &Vector::basis(m, k));
                    let right = self.mul(&Vector::basis(m, i), &self.table[j][k]);
                    if left != right {
                        return Err(Error::NotAssociative {
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

    pub fn dim(&self) -> usize {
        self.m
    }

    pub fn basis_product(&self, i: usize, j: usize) -> &Vector {
        &self.table[i][j]
    }

    pub fn mul(&self, x: &Vector, y: &Vector) -> Vector {
        let mut out = Vector::zeros(self.m);
        for (i, xi) in x.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (j, yj) in y.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                out.axpy(&(xi * yj), &self.table[i][j]);
            }
        }
        out
    }

    /// Nonzero structure constants `(i, j, k, c)`, 1-based, sorted.
    pub fn products(&self) -> Vec<(usize, usize, usize, Scalar)> {
        let mut out = Vec::new();
        for i in 0..self.m {
            for j in 0..self.m {
                for (k, c) in self.table[i][j].iter().enumerate() {
                    if !c.is_zero() {
                        out.push((i + 1, j + 1, k + 1, c.clone()));
                    }
                }
            }
        }
        out
    }

    fn canonical_text(&self, iota: Option<&Matrix>) -> String {
        let mut s = format!("dim={}", self.m);
        for (i, j, k, c) in self.products() {
            s.push_str(&format!(";{i},{j},{k}:{}", scalar::format(&c)));
        }
        if let Some(t) = iota {
            s.push_str(";iota=");
            let rows: Vec<String> = t
                .to_rows()
                .iter()
                .map(|r| r.iter().map(scalar::format).collect::<Vec<_>>().join(","))
                .collect();
            s.push_str(&rows.join("|"));
        }
        s
    }
}

/// Stable short digest of the input data, used in `aff:<hash>` names.
pub fn spec_hash(a: &AssociativeAlgebra, iota: Option<&Matrix>) -> String {
    digest(&a.canonical_text(iota))
}

fn digest(text: &str) -> String {
    let digest = Sha256::digest(text.as_bytes());
    digest.iter().take(6).map(|b| format!("{b:02x}")).collect()
}

/// A commutative complex algebra seen as a real algebra of dimension `2m`
/// together with the operator `ι` of multiplication by `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexAlgebraRealification {
    algebra: AssociativeAlgebra,
    iota: Matrix,
    /// Real-basis coordinates of `x ↦ Σ_k Re x^k` for some complex basis.
    re_trace: Vector,
}

impl ComplexAlgebraRealification {
    pub fn new(algebra: AssociativeAlgebra, iota: Matrix) -> Result<Self> {
        let n = algebra.dim();
        let bad = |m: &str| Err(Error::InvalidRealification(m.to_string()));
        if n % 2 == 1 {
            return bad("odd real dimension");
        }
        if iota.rows() != n || iota.cols() != n {
            return bad("iota has the wrong size");
        }
        if &iota * &iota != -&Matrix::identity(n) {
            return bad("iota^2 != -id");
        }
        for i in 0..n {
            for j in 0..n {
                let lhs = iota.mul_vec(algebra.basis_product(i, j));
                let rhs = algebra.mul(&iota.column(i), &Vector::basis(n, j));
                if lhs != rhs {
                    return bad(&format!("iota(e{} e{}) != (iota e{}) e{}", i + 1, j + 1, i + 1, j + 1));
                }
            }
        }
        // Complex basis: greedily take standard vectors outside the complex
        // span collected so far.
        let mut cols: Vec<Vector> = Vec::with_capacity(n);
        let mut first: Vec<bool> = Vec::with_capacity(n);
        for k in 0..n {
            let ek = Vector::basis(n, k);
            let mut trial = cols.clone();
            trial.push(ek.clone());
            if Matrix::from_columns(n, &trial).rank() == trial.len() {
                cols.push(ek.clone());
                cols.push(iota.mul_vec(&ek));
                first.extend([true, false]);
            }
            if cols.len() == n {
                break;
            }
        }
        let binv = Matrix::from_columns(n, &cols).inverse()?;
        // Σ_k Re x^k is the sum of the coordinates on the f_k (not ι f_k).
        let re_trace: Vector = (0..n)
            .map(|j| {
                (0..n)
                    .filter(|&r| first[r])
                    .fold(Scalar::zero(), |acc, r| acc + &binv[(r, j)])
            })
            .collect();
        Ok(ComplexAlgebraRealification {
            algebra,
            iota,
            re_trace,
        })
    }

    /// From complex structure constants `f_i f_j = Σ (p + q i) f_k`
    /// (1-based, listed once for `i <= j`). The real basis is
    /// `f_1, i f_1, f_2, i f_2, ...`.
    pub fn from_complex(m: usize, products: &[(usize, usize, usize, Scalar, Scalar)]) -> Result<Self> {
        let n = 2 * m;
        let mut real = Vec::new();
        for (i, j, k, p, q) in products {
            let (ri, rj) = (2 * i - 1, 2 * j - 1);
            let (re_k, im_k) = (2 * k - 1, 2 * k);
            // f_i f_j, (i f_i) f_j, f_i (i f_j), (i f_i)(i f_j)
            for (a, b, sign, rot) in [(ri, rj, 1, 0), (ri + 1, rj, 1, 1), (ri, rj + 1, 1, 1), (ri + 1, rj + 1, -1, 2)] {
                let s = scalar::int(sign);
                // multiply p + q i by i^rot
                let (pr, qr) = match rot {
                    0 => (p.clone(), q.clone()),
                    1 => (-q.clone(), p.clone()),
                    _ => (p.clone(), q.clone()),
                };
                real.push((a, b, re_k, &s * &pr));
                real.push((a, b, im_k, &s * &qr));
                if i != j {
                    real.push((b, a, re_k, &s * &pr));
                    real.push((b, a, im_k, &s * &qr));
                }
            }
        }
        let real: Vec<_> = real.into_iter().filter(|e| !e.3.is_zero()).collect();
        let algebra = AssociativeAlgebra::new(n, &real)?;
        let standard = AlmostComplexStructure::standard(n)?;
        Self::new(algebra, standard.matrix().clone())
    }

    pub fn algebra(&self) -> &AssociativeAlgebra {
        &self.algebra
    }

    pub fn iota(&self) -> &Matrix {
        &self.iota
    }

    pub fn re_trace(&self, x: &Vector) -> Scalar {
        self.re_trace.dot(x)
    }
}

fn aff_brackets(a: &AssociativeAlgebra) -> Result<LieAlgebra> {
    let m = a.dim();
    let mut entries = Vec::new();
    // [v_i, w_j] = w(f_i f_j); [v_i, v_j] = v(f_i f_j - f_j f_i) = 0
    for i in 0..m {
        for j in 0..m {
            for (k, c) in a.basis_product(i, j).iter().enumerate() {
                if !c.is_zero() {
                    entries.push(BracketEntry::new(i + 1, m + j + 1, m + k + 1, c.clone()));
                }
            }
        }
    }
    LieAlgebra::new(2 * m, &entries)
}

fn construction(what: &str) -> Error {
    Error::ConstructionCheck(what.to_string())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Aff {
    pub algebra: LieAlgebra,
    /// `K(a, b) = (b, -a)`
    pub k: AlmostComplexStructure,
    /// `ω(v_i, w_j) = P_ij` for a symmetric pairing `P`
    pub omega: TwoForm,
}

/// `aff(A)` with `K` and `ω = Σ v^i ∧ w^i`.
///
/// This `ω` is closed exactly when every multiplication operator of `A` is
/// symmetric in the chosen basis (for instance componentwise products on
/// `ℝ^m`); otherwise the build fails with a construction error and
/// [`build_aff_traced`] gives a closed form.
pub fn build_aff(a: &AssociativeAlgebra) -> Result<Aff> {
    finish_aff(a, Matrix::identity(a.dim()))
}

/// `aff(A)` with `K` and `ω_τ((a,b),(c,d)) = τ(ad - bc)` for a linear
/// functional `τ` (given by its values on the basis). Closed for every
/// commutative `A`; nondegenerate when `(x, y) ↦ τ(xy)` is.
pub fn build_aff_traced(a: &AssociativeAlgebra, tau: &Vector) -> Result<Aff> {
    let m = a.dim();
    if tau.len() != m {
        return Err(Error::DimensionMismatch {
            expected: m,
            found: tau.len(),
        });
    }
    finish_aff(a, Matrix::from_fn(m, m, |i, j| tau.dot(a.basis_product(i, j))))
}

fn finish_aff(a: &AssociativeAlgebra, pairing: Matrix) -> Result<Aff> {
    let m = a.dim();
    let n = 2 * m;
    let algebra = aff_brackets(a)?;
    let k = Matrix::from_fn(n, n, |r, c| {
        // column c is K e_c: K v_i = -w_i, K w_i = v_i
        if c < m && r == c + m {
            -scalar::one()
        } else if c >= m && r + m == c {
            scalar::one()
        } else {
            Scalar::zero()
        }
    });
    let k = AlmostComplexStructure::new(k)?;
    let gram = Matrix::from_fn(n, n, |r, c| match (r < m, c < m) {
        (true, false) => pairing[(r, c - m)].clone(),
        (false, true) => -pairing[(r - m, c)].clone(),
        _ => Scalar::zero(),
    });
    let omega = TwoForm::from_gram(&gram)?;
    if !is_integrable(&algebra, &k) {
        return Err(construction("K is not integrable"));
    }
    if !is_closed(&algebra, &omega) {
        return Err(construction("omega is not closed"));
    }
    if !is_compatible(&omega, &k) {
        return Err(construction("omega is not K-compatible"));
    }
    if !is_nondegenerate(&omega) {
        return Err(construction("omega is degenerate"));
    }
    Ok(Aff { algebra, k, omega })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffComplex {
    pub algebra: LieAlgebra,
    /// `J(a, b) = (-ιa, ιb)`
    pub j: AlmostComplexStructure,
    /// `g((a,b),(c,d)) = Σ Re (ad + bc)^k`
    pub metric: MetricTensor,
    /// `∇_(a,b) (c,d) = (-ac, ad)`
    pub connection: Connection,
}

impl AffComplex {
    /// The Kähler form of `(g, J)`, i.e. `ω` with `g(x,y) = ω(Jx,y)`.
    pub fn kahler_form(&self) -> TwoForm {
        let gram = -&(&self.j.matrix().transpose() * self.metric.matrix());
        TwoForm::from_gram(&gram).expect("g(-J., .) is skew for compatible data")
    }
}

pub fn build_aff_complex(ar: &ComplexAlgebraRealification) -> Result<AffComplex> {
    let a = ar.algebra();
    let m = a.dim();
    let n = 2 * m;
    let algebra = aff_brackets(a)?;
    let iota = ar.iota();
    let jm = Matrix::from_fn(n, n, |r, c| match (r < m, c < m) {
        (true, true) => -iota[(r, c)].clone(),
        (false, false) => iota[(r - m, c - m)].clone(),
        _ => Scalar::zero(),
    });
    let j = AlmostComplexStructure::new(jm)?;
    let gm = Matrix::from_fn(n, n, |r, c| match (r < m, c < m) {
        (true, false) => ar.re_trace(a.basis_product(r, c - m)),
        (false, true) => ar.re_trace(a.basis_product(r - m, c)),
        _ => Scalar::zero(),
    });
    let metric = MetricTensor::new(gm)?;
    if !metric.is_nondegenerate() {
        return Err(construction("Re-trace pairing is degenerate"));
    }
    let connection = Connection::from_fn(n, |i, k| {
        let mut out = Vector::zeros(n);
        if i < m {
            if k < m {
                // ∇_{v_i} v_k = (-f_i f_k, 0)
                for (r, c) in a.basis_product(i, k).iter().enumerate() {
                    out[r] = -c.clone();
                }
            } else {
                // ∇_{v_i} w_k = (0, f_i f_k)
                for (r, c) in a.basis_product(i, k - m).iter().enumerate() {
                    out[m + r] = c.clone();
                }
            }
        }
        out
    });
    let built = AffComplex {
        algebra,
        j,
        metric,
        connection,
    };
    check_aff_complex(&built)?;
    Ok(built)
}

fn check_aff_complex(b: &AffComplex) -> Result<()> {
    let n = b.algebra.dim();
    let (g, conn) = (&b.algebra, &b.connection);
    for x in 0..n {
        for y in 0..n {
            let (ex, ey) = (Vector::basis(n, x), Vector::basis(n, y));
            let torsion = &(&conn.nabla(&ex, &ey) - &conn.nabla(&ey, &ex)) - &g.basis_bracket(x, y);
            if !torsion.is_zero() {
                return Err(construction("connection has torsion"));
            }
            for z in 0..n {
                // (∇_x g)(y, z) = -g(∇_x y, z) - g(y, ∇_x z)
                let ez = Vector::basis(n, z);
                let d = b.metric.eval(&conn.nabla(&ex, &ey), &ez) + b.metric.eval(&ey, &conn.nabla(&ex, &ez));
                if !d.is_zero() {
                    return Err(construction("connection is not metric"));
                }
            }
        }
    }
    if levi_civita(g, &b.metric)? != *conn {
        return Err(construction("connection differs from Levi-Civita"));
    }
    let r = curvature(g, conn);
    if !r.is_zero() {
        return Err(construction("connection is not flat"));
    }
    if !is_parallel(conn, &b.j) {
        return Err(construction("J is not parallel"));
    }
    if !ricci(&r).is_zero() {
        return Err(construction("Ricci tensor is nonzero"));
    }
    if b.metric.signature() != (n / 2, n / 2) {
        return Err(construction("metric is not neutral"));
    }
    Ok(())
}

/// Registers a built `aff(A)` as `aff:<hash>` with structure `K`.
/// Returns the catalog name.
pub fn register_aff(a: &AssociativeAlgebra, aff: Aff) -> Result<String> {
    // the form is part of the key: one algebra may carry several
    let name = format!("aff:{}", digest(&format!("{};omega={}", a.canonical_text(None), aff.omega)));
    let k = RegisteredStructure {
        id: "K".into(),
        j: aff.k,
        kind: StructureKind::Kahler(FormFamily::new(&["a"], vec![aff.omega])),
        witnesses: Vec::new(),
    };
    catalog::register(CatalogEntry {
        name,
        family: "aff".into(),
        params: Params::new(),
        algebra: aff.algebra,
        structures: vec![k],
    })
}

/// Registers `aff(A)` for complex `A` with structures `K` (using the
/// `Re`-trace form) and `J` (the flat neutral Kähler pair).
pub fn register_aff_complex(ar: &ComplexAlgebraRealification) -> Result<String> {
    let aff = build_aff_traced(ar.algebra(), &ar.re_trace)?;
    let c = build_aff_complex(ar)?;
    let m = ar.algebra().dim();
    let name = format!("aff:{}", spec_hash(ar.algebra(), Some(ar.iota())));
    let w_half = Subspace::coordinate(2 * m, &(m + 1..=2 * m).collect::<Vec<_>>())?;
    let structures = vec![
        RegisteredStructure {
            id: "K".into(),
            j: aff.k,
            kind: StructureKind::Kahler(FormFamily::new(&["a"], vec![aff.omega])),
            witnesses: Vec::new(),
        },
        RegisteredStructure {
            id: "J".into(),
            j: c.j.clone(),
            kind: StructureKind::Kahler(FormFamily::new(&["a"], vec![c.kahler_form()])),
            witnesses: vec![Witness {
                kind: WitnessKind::Walker,
                subspace: w_half,
                at: Some(catalog::params(&[("a", scalar::one())])),
            }],
        },
    ];
    catalog::register(CatalogEntry {
        name,
        family: "aff".into(),
        params: Params::new(),
        algebra: c.algebra,
        structures,
    })
}

pub fn complex_numbers() -> ComplexAlgebraRealification {
    let one = scalar::one();
    ComplexAlgebraRealification::from_complex(1, &[(1, 1, 1, one, Scalar::zero())]).expect("C is a field")
}

/// `ℂ × ℂ` with componentwise product.
pub fn complex_pair() -> ComplexAlgebraRealification {
    let (one, z) = (scalar::one(), Scalar::zero());
    ComplexAlgebraRealification::from_complex(2, &[(1, 1, 1, one.clone(), z.clone()), (2, 2, 2, one, z)])
        .expect("product of fields")
}

/// `ℂ[x]/(x²)` with basis `1, x`.
pub fn complex_dual_numbers() -> ComplexAlgebraRealification {
    let (one, z) = (scalar::one(), Scalar::zero());
    ComplexAlgebraRealification::from_complex(2, &[(1, 1, 1, one.clone(), z.clone()), (1, 2, 2, one, z)])
        .expect("truncated polynomial ring")
}

/// `ℝ[x]/(x²)` with basis `1, x`.
pub fn real_dual_numbers() -> AssociativeAlgebra {
    let one = scalar::one();
    AssociativeAlgebra::commutative(2, &[(1, 1, 1, one.clone()), (1, 2, 2, one)]).expect("truncated polynomial ring")
}

/// `aff(ℂ)` with `J(a,b) = (ia, ib)` and `g((a,b),(c,d)) = Re(a d̄ + b c̄)`:
/// a compatible metric for which `J` is not parallel, together with the
/// closed-form Levi-Civita connection
/// `∇_(a,b)(c,d) = (-Re(a c̄), a Re d - i c Im b)` and the null plane
/// `W = {(0, b)}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WalkerExample {
    pub algebra: LieAlgebra,
    pub j: AlmostComplexStructure,
    pub metric: MetricTensor,
    pub connection: Connection,
    pub w: Subspace,
}

pub fn walker_example() -> WalkerExample {
    let c = complex_numbers();
    let algebra = aff_brackets(c.algebra()).expect("aff(C) satisfies Jacobi");
    // real basis v1 = (1,0), v2 = (i,0), w1 = (0,1), w2 = (0,i)
    let e = |l: usize| Vector::basis(4, l - 1);
    let j = AlmostComplexStructure::from_relations(4, &[(1, e(2)), (3, e(4))]).expect("standard");
    let metric = MetricTensor::new(Matrix::from_int_rows(&[&[0, 0, 1, 0], &[0, 0, 0, 1], &[1, 0, 0, 0], &[0, 1, 0, 0]]))
        .expect("symmetric");
    // (a, b) = (a1 + a2 i, b1 + b2 i) acting on (c, d)
    let nabla = |x: &Vector, y: &Vector| -> Vector {
        let (a1, a2, b2) = (&x[0], &x[1], &x[3]);
        let (c1, c2, d1) = (&y[0], &y[1], &y[2]);
        let re_ac = a1 * c1 + a2 * c2;
        // a Re d - i c Im b = (a1 d1 + c2 b2) + (a2 d1 - c1 b2) i
        Vector::new(vec![-re_ac, Scalar::zero(), a1 * d1 + c2 * b2, a2 * d1 - c1 * b2])
    };
    let connection = Connection::from_fn(4, |i, k| nabla(&e(i + 1), &e(k + 1)));
    WalkerExample {
        algebra,
        j,
        metric,
        connection,
        w: Subspace::coordinate(4, &[3, 4]).expect("labels in range"),
    }
}
