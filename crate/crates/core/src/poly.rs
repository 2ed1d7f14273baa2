//! Exact polynomials: univariate (characteristic polynomials, Sturm counts)
//! and multivariate (Pfaffians over linear families of forms).

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::linalg::Matrix;
use crate::scalar::{self, Scalar};

/// Univariate polynomial, coefficients from the constant term upwards.
/// Trailing zeros are always trimmed, so the zero polynomial is empty.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct UniPoly(Vec<Scalar>);

impl UniPoly {
    pub fn new(mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly(coeffs)
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| scalar::int(c)).collect())
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    fn lead(&self) -> Option<&Scalar> {
        self.0.last()
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        self.0
            .iter()
            .rev()
            .fold(Scalar::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> UniPoly {
        UniPoly::new(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * scalar::int(k as i64))
                .collect(),
        )
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &UniPoly) -> (UniPoly, UniPoly) {
        let dd = d.degree().expect("division by the zero polynomial");
        let dl = d.lead().unwrap().clone();
        let mut r = self.0.clone();
        let mut q = vec![Scalar::zero(); self.0.len().saturating_sub(dd)];
        while r.len() > dd && !r.is_empty() {
            let k = r.len() - 1 - dd;
            let c = r.last().unwrap() / &dl;
            for (i, di) in d.0.iter().enumerate() {
                r[k + i] -= &c * di;
            }
            q[k] = c;
            r.pop();
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
        }
        (UniPoly::new(q), UniPoly::new(r))
    }

    fn monic(&self) -> UniPoly {
        match self.lead() {
            Some(l) => {
                let inv = l.recip();
                UniPoly(self.0.iter().map(|c| c * &inv).collect())
            }
            None => self.clone(),
        }
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Same roots, each with multiplicity one.
    pub fn square_free_part(&self) -> UniPoly {
        if self.degree().unwrap_or(0) == 0 {
            return self.clone();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0
    }

    pub fn sturm_sequence(&self) -> Vec<UniPoly> {
        let mut seq = vec![self.clone(), self.derivative()];
        loop {
            let n = seq.len();
            if seq[n - 1].is_zero() {
                seq.pop();
                break;
            }
            let r = seq[n - 2].div_rem(&seq[n - 1]).1;
            if r.is_zero() {
                break;
            }
            seq.push(UniPoly(r.0.iter().map(|c| -c).collect()));
        }
        seq
    }

    /// Number of distinct real roots, by Sturm's theorem on the whole line.
    pub fn count_distinct_real_roots(&self) -> usize {
        if self.degree().unwrap_or(0) == 0 {
            return 0;
        }
        let seq = self.sturm_sequence();
        let signs = |at_plus: bool| -> Vec<bool> {
            seq.iter()
                .filter_map(|p| {
                    let l = p.lead()?;
                    let deg_odd = p.degree().unwrap() % 2 == 1;
                    let pos = l.is_positive();
                    Some(if at_plus || !deg_odd { pos } else { !pos })
                })
                .collect()
        };
        let changes = |s: Vec<bool>| s.windows(2).filter(|w| w[0] != w[1]).count();
        changes(signs(false)) - changes(signs(true))
    }

    /// True iff every complex root is real.
    pub fn has_only_real_roots(&self) -> bool {
        let q = self.square_free_part();
        q.count_distinct_real_roots() == q.degree().unwrap_or(0)
    }
}

/// Characteristic polynomial `det(t I - A)` by the Faddeev–LeVerrier recursion.
pub fn characteristic_polynomial(a: &Matrix) -> UniPoly {
    assert!(a.is_square());
    let n = a.rows();
    let mut c = vec![Scalar::zero(); n + 1];
    c[n] = Scalar::one();
    let mut m = Matrix::zeros(n, n);
    let id = Matrix::identity(n);
    for k in 1..=n {
        m = &(a * &m) + &id.scale(&c[n - k + 1]);
        let am = a * &m;
        c[n - k] = -am.trace() / scalar::int(k as i64);
    }
    UniPoly::new(c)
}

/// Polynomial in `nvars` variables; monomials are exponent vectors.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Scalar>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Scalar) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut p = Self::zero(nvars);
        p.terms.insert(e, Scalar::one());
        p
    }

    /// The linear form `Σ c_i x_i`.
    pub fn linear(coeffs: &[Scalar]) -> Self {
        let n = coeffs.len();
        let mut p = Self::zero(n);
        for (i, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                let mut e = vec![0; n];
                e[i] = 1;
                p.terms.insert(e, c.clone());
            }
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &Scalar)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    fn add_term(&mut self, e: Vec<u32>, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e).or_insert_with(Scalar::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &MultiPoly) -> MultiPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> MultiPoly {
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }

    pub fn eval(&self, x: &[Scalar]) -> Scalar {
        assert_eq!(x.len(), self.nvars);
        self.terms.iter().fold(Scalar::zero(), |acc, (e, c)| {
            let m = e
                .iter()
                .zip(x)
                .fold(c.clone(), |m, (&k, xi)| m * num_traits::pow(xi.clone(), k as usize));
            acc + m
        })
    }
}

impl fmt::Display for MultiPoly {
    /// Variables print as `c1, c2, ...`; highest monomials first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| {
                    if k == 1 {
                        format!("c{}", i + 1)
                    } else {
                        format!("c{}^{}", i + 1, k)
                    }
                })
                .collect();
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            if mono.is_empty() {
                write!(f, "{}", scalar::format(&abs))?;
            } else if abs.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{}*{}", scalar::format(&abs), mono.join("*"))?;
            }
        }
        Ok(())
    }
}

/// Pfaffian of the antisymmetric matrix whose upper entries are `a(i, j)`,
/// `i < j`, expanded along the first row.
pub fn pfaffian(n: usize, a: &dyn Fn(usize, usize) -> MultiPoly, nvars: usize) -> MultiPoly {
    fn rec(idx: &[usize], a: &dyn Fn(usize, usize) -> MultiPoly, nvars: usize) -> MultiPoly {
        if idx.is_empty() {
            return MultiPoly::constant(nvars, Scalar::one());
        }
        let mut out = MultiPoly::zero(nvars);
        for t in 1..idx.len() {
            let entry = a(idx[0], idx[t]);
            if entry.is_zero() {
                continue;
            }
            let rest: Vec<usize> = idx[1..]
                .iter()
                .enumerate()
                .filter(|&(s, _)| s + 1 != t)
                .map(|(_, &v)| v)
                .collect();
            let term = entry.mul(&rec(&rest, a, nvars));
            out = if t % 2 == 1 { out.add(&term) } else { out.sub(&term) };
        }
        out
    }
    if n % 2 == 1 {
        return MultiPoly::zero(nvars);
    }
    let idx: Vec<usize> = (0..n).collect();
    rec(&idx, a, nvars)
}
