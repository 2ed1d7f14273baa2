//! Named four dimensional solvable Lie algebras with their registered complex
//! structures, compatible form families and witness subspaces.
//!
//! Families carry rational parameter slots whose admissible ranges are the
//! normal-form constraints of the classification, so a fixture can never be a
//! disguised copy of another row.

use std::collections::BTreeMap;
use std::sync::{OnceLock, RwLock};

use num_traits::{One, Signed, Zero};

use crate::compat::{compatible_closed_forms, FormSpace};
use crate::complex::{is_compatible, is_integrable, AlmostComplexStructure};
use crate::error::{Error, Result};
use crate::exterior::{is_closed, TwoForm};
use crate::lie::{LieAlgebra, Subspace};
use crate::linalg::Vector;
use crate::scalar::{self, Scalar};

pub type Params = BTreeMap<String, Scalar>;

/// Builds a parameter map from `(name, value)` pairs.
pub fn params(values: &[(&str, Scalar)]) -> Params {
    values.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

/// Canonical ASCII name of a parameter (`λ` becomes `lambda`, and so on).
pub fn canonical_param(name: &str) -> &str {
    match name {
        "λ" => "lambda",
        "γ" => "gamma",
        "μ" => "mu",
        "α" => "alpha",
        "β" => "beta",
        "δ" => "delta",
        other => other,
    }
}

/// Linear family `ω(p) = Σ p_k ω_k` of closed compatible forms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormFamily {
    params: Vec<String>,
    generators: Vec<TwoForm>,
}

impl FormFamily {
    pub fn new(params: &[&str], generators: Vec<TwoForm>) -> Self {
        assert_eq!(params.len(), generators.len());
        FormFamily {
            params: params.iter().map(|s| s.to_string()).collect(),
            generators,
        }
    }

    pub fn params(&self) -> &[String] {
        &self.params
    }

    pub fn generators(&self) -> &[TwoForm] {
        &self.generators
    }

    pub fn dim(&self) -> usize {
        self.generators[0].dim()
    }

    /// The form at the given parameter values; every slot must be given.
    pub fn form(&self, values: &Params) -> Result<TwoForm> {
        for k in values.keys() {
            if !self.params.contains(k) {
                return Err(Error::UnexpectedParam {
                    name: "omega".into(),
                    param: k.clone(),
                });
            }
        }
        let mut w = TwoForm::zero(self.dim());
        for (p, g) in self.params.iter().zip(&self.generators) {
            let c = values.get(p).ok_or_else(|| Error::MissingParam {
                name: "omega".into(),
                param: p.clone(),
            })?;
            w = w.add(&g.scale(c));
        }
        Ok(w)
    }

    pub fn space(&self) -> FormSpace {
        FormSpace::span(self.dim(), &self.generators)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StructureKind {
    /// Integrable, with a family of compatible symplectic forms.
    Kahler(FormFamily),
    /// Integrable, registered for negative results.
    Complex,
    /// Almost complex only; registered to exercise the integrability check.
    Probe,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum WitnessKind {
    /// Abelian-model ideal with `Jh = h` and orthogonal complement a subalgebra.
    InvariantIdeal,
    /// Ideal with `h = h^⊥` and `h ∩ Jh = 0`.
    LagrangianIdeal,
    /// Null subspace invariant under the Levi-Civita connection.
    Walker,
}

impl WitnessKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            WitnessKind::InvariantIdeal => "invariant_ideal",
            WitnessKind::LagrangianIdeal => "lagrangian_ideal",
            WitnessKind::Walker => "walker",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub kind: WitnessKind,
    pub subspace: Subspace,
    /// Family parameters at which the witness holds; `None` for every point.
    pub at: Option<Params>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegisteredStructure {
    pub id: String,
    pub j: AlmostComplexStructure,
    pub kind: StructureKind,
    pub witnesses: Vec<Witness>,
}

impl RegisteredStructure {
    pub fn family(&self) -> Option<&FormFamily> {
        match &self.kind {
            StructureKind::Kahler(f) => Some(f),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    /// Name as requested (may be a specialization or alias).
    pub name: String,
    /// Underlying family key.
    pub family: String,
    pub params: Params,
    pub algebra: LieAlgebra,
    pub structures: Vec<RegisteredStructure>,
}

impl CatalogEntry {
    pub fn structure(&self, id: &str) -> Result<&RegisteredStructure> {
        self.structures
            .iter()
            .find(|s| s.id == id)
            .ok_or_else(|| Error::UnknownStructure {
                name: self.name.clone(),
                id: id.to_string(),
            })
    }

    /// `name` or `name[k=v,...]`.
    pub fn label(&self) -> String {
        label(&self.name, &self.params_beyond_name())
    }

    fn params_beyond_name(&self) -> Params {
        match specialization(&self.name) {
            Some(sp) => {
                let fixed: Vec<&str> = sp.fixed.iter().map(|f| f.0).collect();
                self.params
                    .iter()
                    .filter(|(k, _)| !fixed.contains(&k.as_str()))
                    .map(|(k, v)| (k.clone(), v.clone()))
                    .collect()
            }
            None => self.params.clone(),
        }
    }

    /// Re-runs the fixture invariants: integrability of every non-probe
    /// structure and closedness, compatibility and containment of every
    /// registered family.
    pub fn verify(&self) -> Result<()> {
        let fail = |what: String| Err(Error::FixtureCheck(format!("{}: {}", self.label(), what)));
        let n = self.algebra.dim();
        for s in &self.structures {
            if s.j.dim() != n {
                return fail(format!("{} has wrong dimension", s.id));
            }
            if !matches!(s.kind, StructureKind::Probe) && !is_integrable(&self.algebra, &s.j) {
                return fail(format!("{} is not integrable", s.id));
            }
            if let StructureKind::Kahler(f) = &s.kind {
                for (p, w) in f.params().iter().zip(f.generators()) {
                    if !is_closed(&self.algebra, w) {
                        return fail(format!("{}: generator {p} is not closed", s.id));
                    }
                    if !is_compatible(w, &s.j) {
                        return fail(format!("{}: generator {p} is not compatible", s.id));
                    }
                }
                let space = compatible_closed_forms(&self.algebra, &s.j)?;
                if !f.generators().iter().all(|w| space.contains(w)) {
                    return fail(format!("{}: family escapes the compatible space", s.id));
                }
            }
            for w in &s.witnesses {
                if w.subspace.ambient_dim() != n {
                    return fail(format!("{}: witness in wrong dimension", s.id));
                }
            }
        }
        Ok(())
    }
}

pub fn label(name: &str, params: &Params) -> String {
    if params.is_empty() {
        return name.to_string();
    }
    let inner: Vec<String> = params
        .iter()
        .map(|(k, v)| format!("{k}={}", scalar::format(v)))
        .collect();
    format!("{name}[{}]", inner.join(","))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParamSlot {
    pub name: String,
    pub range: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EntryKind {
    Family,
    Specialization { target: String, fixed: Params },
    Builder,
    Registered,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EntryInfo {
    pub name: String,
    pub params: Vec<ParamSlot>,
    pub kind: EntryKind,
}

type Built = (LieAlgebra, Vec<RegisteredStructure>);

/// `(parameter label, human-readable range, predicate)`
type Range = (&'static str, &'static str, fn(&Params) -> bool);

struct FamilyDef {
    key: &'static str,
    params: &'static [&'static str],
    range: Option<Range>,
    build: fn(&Params) -> Result<Built>,
}

struct SpecDef {
    name: &'static str,
    target: &'static str,
    fixed: &'static [(&'static str, i64, i64)],
}

pub const AFF_BUILDER: &str = "aff_A_builder";

const FAMILIES: &[FamilyDef] = &[
    FamilyDef { key: "rh3", params: &[], range: None, build: build_rh3 },
    FamilyDef { key: "rr3", params: &[], range: None, build: build_rr3 },
    FamilyDef {
        key: "rr3_lambda",
        params: &["lambda"],
        range: Some(("lambda", "-1 <= lambda <= 1", |p| {
            let l = &p["lambda"];
            *l >= -Scalar::one() && *l <= Scalar::one()
        })),
        build: build_rr3_lambda,
    },
    FamilyDef {
        key: "rr3p_gamma",
        params: &["gamma"],
        range: Some(("gamma", "gamma >= 0", |p| !p["gamma"].is_negative())),
        build: build_rr3p_gamma,
    },
    FamilyDef { key: "r2r2", params: &[], range: None, build: build_r2r2 },
    FamilyDef { key: "r2p", params: &[], range: None, build: build_r2p },
    FamilyDef { key: "n4", params: &[], range: None, build: build_n4 },
    FamilyDef { key: "r4", params: &[], range: None, build: build_r4 },
    FamilyDef { key: "r4_mu", params: &["mu"], range: None, build: build_r4_mu },
    FamilyDef {
        key: "r4_abc",
        params: &["alpha", "beta"],
        range: Some((
            "alpha,beta",
            "-1 < alpha <= beta <= 1 with alpha*beta != 0, or -1 = alpha <= beta <= 0",
            r4_abc_admissible,
        )),
        build: build_r4_abc,
    },
    FamilyDef {
        key: "r4p_gd",
        params: &["gamma", "delta"],
        range: Some(("delta", "delta > 0", |p| scalar::is_positive(&p["delta"]))),
        build: build_r4p_gd,
    },
    FamilyDef { key: "d4", params: &[], range: None, build: build_d4 },
    FamilyDef {
        key: "d4_lambda",
        params: &["lambda"],
        range: Some(("lambda", "lambda >= 1/2", |p| p["lambda"] >= scalar::frac(1, 2))),
        build: build_d4_lambda,
    },
    FamilyDef {
        key: "d4p_delta",
        params: &["delta"],
        range: Some(("delta", "delta >= 0", |p| !p["delta"].is_negative())),
        build: build_d4p_delta,
    },
    FamilyDef { key: "h4", params: &[], range: None, build: build_h4 },
    FamilyDef { key: "R4_abelian", params: &[], range: None, build: build_r4_abelian },
];

const SPECIALIZATIONS: &[SpecDef] = &[
    SpecDef { name: "rxh3", target: "rh3", fixed: &[] },
    SpecDef { name: "rxe2", target: "rr3p_gamma", fixed: &[("gamma", 0, 1)] },
    SpecDef { name: "r2xaffR", target: "rr3_lambda", fixed: &[("lambda", 0, 1)] },
    SpecDef { name: "affR2", target: "r2r2", fixed: &[] },
    SpecDef { name: "affC", target: "r2p", fixed: &[] },
    SpecDef { name: "aff_C", target: "r2p", fixed: &[] },
    SpecDef { name: "r4_m1m1", target: "r4_abc", fixed: &[("alpha", -1, 1), ("beta", -1, 1)] },
    SpecDef { name: "r4p_0_delta", target: "r4p_gd", fixed: &[("gamma", 0, 1)] },
    SpecDef { name: "d4_1", target: "d4_lambda", fixed: &[("lambda", 1, 1)] },
    SpecDef { name: "d4_2", target: "d4_lambda", fixed: &[("lambda", 2, 1)] },
    SpecDef { name: "d4_half", target: "d4_lambda", fixed: &[("lambda", 1, 2)] },
];

fn r4_abc_admissible(p: &Params) -> bool {
    let (a, b) = (&p["alpha"], &p["beta"]);
    let one = Scalar::one();
    let generic = *a > -one.clone() && a <= b && *b <= one && !a.is_zero() && !b.is_zero();
    let boundary = *a == -one && a <= b && *b <= Scalar::zero();
    generic || boundary
}

fn family_def(key: &str) -> Option<&'static FamilyDef> {
    FAMILIES.iter().find(|f| f.key == key)
}

fn specialization(name: &str) -> Option<&'static SpecDef> {
    SPECIALIZATIONS.iter().find(|s| s.name == name)
}

fn fixed_params(sp: &SpecDef) -> Params {
    sp.fixed
        .iter()
        .map(|&(k, p, q)| (k.to_string(), scalar::frac(p, q)))
        .collect()
}

fn registry() -> &'static RwLock<BTreeMap<String, CatalogEntry>> {
    static REGISTRY: OnceLock<RwLock<BTreeMap<String, CatalogEntry>>> = OnceLock::new();
    REGISTRY.get_or_init(|| RwLock::new(BTreeMap::new()))
}

/// Adds a constructed entry under its own name (which must start with
/// `aff:`). Re-registering the same name replaces the entry.
pub fn register(entry: CatalogEntry) -> Result<String> {
    if !entry.name.starts_with("aff:") {
        return Err(Error::Schema(format!("registered names start with \"aff:\", got {:?}", entry.name)));
    }
    entry.verify()?;
    let name = entry.name.clone();
    registry()
        .write()
        .expect("catalog registry poisoned")
        .insert(name.clone(), entry);
    Ok(name)
}

/// Every name `get` accepts, in a stable order: the classification rows,
/// the abelian algebra, named specializations, the `aff` builder hook and
/// then any registered constructions.
pub fn list() -> Vec<EntryInfo> {
    let slots = |def: &FamilyDef, skip: &[&str]| -> Vec<ParamSlot> {
        def.params
            .iter()
            .filter(|p| !skip.contains(p))
            .map(|p| ParamSlot {
                name: p.to_string(),
                range: def
                    .range
                    .filter(|r| r.0.split(',').any(|x| x == *p))
                    .map(|r| r.1.to_string()),
            })
            .collect()
    };
    let mut out: Vec<EntryInfo> = FAMILIES
        .iter()
        .map(|f| EntryInfo {
            name: f.key.to_string(),
            params: slots(f, &[]),
            kind: EntryKind::Family,
        })
        .collect();
    for sp in SPECIALIZATIONS {
        let def = family_def(sp.target).expect("specialization targets a family");
        let fixed: Vec<&str> = sp.fixed.iter().map(|f| f.0).collect();
        out.push(EntryInfo {
            name: sp.name.to_string(),
            params: slots(def, &fixed),
            kind: EntryKind::Specialization {
                target: sp.target.to_string(),
                fixed: fixed_params(sp),
            },
        });
    }
    out.push(EntryInfo {
        name: AFF_BUILDER.to_string(),
        params: Vec::new(),
        kind: EntryKind::Builder,
    });
    for name in registry().read().expect("catalog registry poisoned").keys() {
        out.push(EntryInfo {
            name: name.clone(),
            params: Vec::new(),
            kind: EntryKind::Registered,
        });
    }
    out
}

/// Builds and checks the named entry.
pub fn get(name: &str, values: &Params) -> Result<CatalogEntry> {
    let values: Params = values
        .iter()
        .map(|(k, v)| (canonical_param(k).to_string(), v.clone()))
        .collect();
    if name == AFF_BUILDER {
        return Err(Error::NotAFixture(name.to_string()));
    }
    if name.starts_with("aff:") {
        let reg = registry().read().expect("catalog registry poisoned");
        let entry = reg.get(name).ok_or_else(|| Error::UnknownName(name.to_string()))?;
        if let Some(k) = values.keys().next() {
            return Err(Error::UnexpectedParam {
                name: name.to_string(),
                param: k.clone(),
            });
        }
        return Ok(entry.clone());
    }
    let (def, full) = if let Some(def) = family_def(name) {
        (def, values)
    } else if let Some(sp) = specialization(name) {
        let mut full = fixed_params(sp);
        for (k, v) in values {
            if full.contains_key(&k) {
                return Err(Error::UnexpectedParam {
                    name: name.to_string(),
                    param: k,
                });
            }
            full.insert(k, v);
        }
        (family_def(sp.target).expect("specialization targets a family"), full)
    } else {
        return Err(Error::UnknownName(name.to_string()));
    };
    for k in full.keys() {
        if !def.params.contains(&k.as_str()) {
            return Err(Error::UnexpectedParam {
                name: name.to_string(),
                param: k.clone(),
            });
        }
    }
    for p in def.params {
        if !full.contains_key(*p) {
            return Err(Error::MissingParam {
                name: name.to_string(),
                param: p.to_string(),
            });
        }
    }
    if let Some((param, range, ok)) = def.range {
        if !ok(&full) {
            return Err(Error::ParamOutOfRange {
                name: name.to_string(),
                param: param.to_string(),
                range: range.to_string(),
            });
        }
    }
    let (algebra, structures) = (def.build)(&full)?;
    let entry = CatalogEntry {
        name: name.to_string(),
        family: def.key.to_string(),
        params: full,
        algebra,
        structures,
    };
    entry.verify()?;
    Ok(entry)
}

/// The instances swept by the scan: one per Kähler row of the
/// classification table, then negative rows and the abelian algebra.
pub fn scan_instances() -> Vec<(&'static str, Params)> {
    let one = |k: &str, p: i64, q: i64| params(&[(k, scalar::frac(p, q))]);
    vec![
        ("rxh3", Params::new()),
        ("r2xaffR", Params::new()),
        ("rxe2", Params::new()),
        ("affR2", Params::new()),
        ("affC", Params::new()),
        ("r4_m1m1", Params::new()),
        ("r4p_0_delta", one("delta", 1, 1)),
        ("d4_1", Params::new()),
        ("d4_2", Params::new()),
        ("d4_half", Params::new()),
        ("d4p_delta", one("delta", 1, 1)),
        ("n4", Params::new()),
        ("h4", Params::new()),
        ("d4_lambda", one("lambda", 3, 4)),
        ("d4_lambda", one("lambda", 5, 1)),
        ("R4_abelian", Params::new()),
    ]
}

// ---- construction helpers ----

fn e(l: usize) -> Vector {
    Vector::basis(4, l - 1)
}

fn comb(terms: &[(usize, Scalar)]) -> Vector {
    let mut v = Vector::zeros(4);
    for (l, c) in terms {
        v.axpy(c, &e(*l));
    }
    v
}

fn int(n: i64) -> Scalar {
    scalar::int(n)
}

fn alg(rels: &[(usize, usize, Vector)]) -> Result<LieAlgebra> {
    LieAlgebra::from_relations(4, rels)
}

fn acs(rels: &[(usize, Vector)]) -> Result<AlmostComplexStructure> {
    AlmostComplexStructure::from_relations(4, rels)
}

/// Form with integer coefficients, negated: the registered families are
/// `-Σ p_k T_k` for the tabulated generators `T_k`, which is the sign that
/// makes `g(x,y) = ω(Jx,y)` reproduce the tabulated metrics.
fn neg_form(terms: &[(usize, usize, i64)]) -> TwoForm {
    TwoForm::from_int_terms(4, terms).neg()
}

fn structure(id: &str, j: AlmostComplexStructure, kind: StructureKind, witnesses: Vec<Witness>) -> RegisteredStructure {
    RegisteredStructure {
        id: id.to_string(),
        j,
        kind,
        witnesses,
    }
}

fn plane(a: usize, b: usize) -> Subspace {
    Subspace::coordinate(4, &[a, b]).expect("labels in range")
}

fn witness(kind: WitnessKind, a: usize, b: usize, at: Option<&[(&str, i64)]>) -> Witness {
    Witness {
        kind,
        subspace: plane(a, b),
        at: at.map(|vals| vals.iter().map(|&(k, v)| (k.to_string(), int(v))).collect()),
    }
}

fn kahler(params: &[&str], gens: Vec<TwoForm>) -> StructureKind {
    StructureKind::Kahler(FormFamily::new(params, gens))
}

fn diag_pair_family(x: (usize, usize), y: (usize, usize)) -> StructureKind {
    let px = format!("a{}{}", x.0, x.1);
    let py = format!("a{}{}", y.0, y.1);
    StructureKind::Kahler(FormFamily::new(
        &[&px, &py],
        vec![neg_form(&[(x.0, x.1, 1)]), neg_form(&[(y.0, y.1, 1)])],
    ))
}

// ---- builders ----

fn build_rh3(_: &Params) -> Result<Built> {
    let g = alg(&[(1, 2, e(3))])?;
    let j = acs(&[(1, e(2)), (3, e(4))])?;
    let fam = kahler(
        &["a12", "a13", "a14"],
        vec![
            neg_form(&[(1, 2, 1)]),
            neg_form(&[(1, 3, 1), (2, 4, 1)]),
            neg_form(&[(1, 4, 1), (2, 3, -1)]),
        ],
    );
    let at: &[(&str, i64)] = &[("a12", 0), ("a13", 0), ("a14", 1)];
    let wits = vec![
        witness(WitnessKind::LagrangianIdeal, 2, 3, Some(at)),
        witness(WitnessKind::Walker, 2, 3, Some(at)),
        witness(WitnessKind::Walker, 3, 4, None),
    ];
    Ok((g, vec![structure("J", j, fam, wits)]))
}

fn build_rr3(_: &Params) -> Result<Built> {
    Ok((alg(&[(1, 2, e(2)), (1, 3, &e(2) + &e(3))])?, Vec::new()))
}

fn build_rr3_lambda(p: &Params) -> Result<Built> {
    let l = &p["lambda"];
    let g = alg(&[(1, 2, e(2)), (1, 3, e(3).scale(l))])?;
    let mut s = Vec::new();
    if l.is_zero() {
        let j = acs(&[(1, e(2)), (3, e(4))])?;
        let wits = vec![witness(WitnessKind::InvariantIdeal, 1, 2, None)];
        s.push(structure("J", j, diag_pair_family((1, 2), (3, 4)), wits));
    }
    Ok((g, s))
}

fn build_rr3p_gamma(p: &Params) -> Result<Built> {
    let c = &p["gamma"];
    let g = alg(&[
        (1, 2, comb(&[(2, c.clone()), (3, int(-1))])),
        (1, 3, comb(&[(2, int(1)), (3, c.clone())])),
    ])?;
    let mut s = Vec::new();
    if c.is_zero() {
        let j = acs(&[(1, e(4)), (2, e(3))])?;
        let wits = vec![witness(WitnessKind::InvariantIdeal, 2, 3, None)];
        s.push(structure("J", j, diag_pair_family((1, 4), (2, 3)), wits));
    }
    Ok((g, s))
}

fn build_r2r2(_: &Params) -> Result<Built> {
    let g = alg(&[(1, 2, e(2)), (3, 4, e(4))])?;
    let j = acs(&[(1, e(2)), (3, e(4))])?;
    let wits = vec![witness(WitnessKind::InvariantIdeal, 1, 2, None)];
    Ok((g, vec![structure("J", j, diag_pair_family((1, 2), (3, 4)), wits)]))
}

fn build_r2p(_: &Params) -> Result<Built> {
    let g = alg(&[(1, 3, e(3)), (1, 4, e(4)), (2, 3, e(4)), (2, 4, -&e(3))])?;
    let t13 = || neg_form(&[(1, 3, 1), (2, 4, -1)]);
    let t14 = || neg_form(&[(1, 4, 1), (2, 3, 1)]);
    let j1 = acs(&[(1, e(3)), (2, e(4))])?;
    let j2 = acs(&[(1, -&e(2)), (3, e(4))])?;
    let jc = acs(&[(1, e(2)), (3, e(4))])?;
    Ok((
        g,
        vec![
            structure("J1", j1, kahler(&["a13", "a14"], vec![t13(), t14()]), Vec::new()),
            structure(
                "J2",
                j2,
                kahler(&["s", "a13", "a14"], vec![neg_form(&[(1, 2, 1)]), t13(), t14()]),
                vec![witness(WitnessKind::Walker, 3, 4, None)],
            ),
            structure("Jc", jc, StructureKind::Complex, Vec::new()),
        ],
    ))
}

fn build_n4(_: &Params) -> Result<Built> {
    let g = alg(&[(4, 1, e(2)), (4, 2, e(3))])?;
    let probes = [
        acs(&[(4, e(1)), (2, e(3))])?,
        acs(&[(1, e(2)), (3, e(4))])?,
        acs(&[(4, e(3)), (1, e(2))])?,
    ];
    let s = probes
        .into_iter()
        .enumerate()
        .map(|(i, j)| structure(&format!("J{}", i + 1), j, StructureKind::Probe, Vec::new()))
        .collect();
    Ok((g, s))
}

fn build_r4(_: &Params) -> Result<Built> {
    let g = alg(&[(4, 1, e(1)), (4, 2, &e(1) + &e(2)), (4, 3, &e(2) + &e(3))])?;
    Ok((g, Vec::new()))
}

fn build_r4_mu(p: &Params) -> Result<Built> {
    let m = &p["mu"];
    let g = alg(&[
        (4, 1, e(1)),
        (4, 2, e(2).scale(m)),
        (4, 3, comb(&[(2, int(1)), (3, m.clone())])),
    ])?;
    Ok((g, Vec::new()))
}

fn build_r4_abc(p: &Params) -> Result<Built> {
    let (a, b) = (&p["alpha"], &p["beta"]);
    let g = alg(&[(4, 1, e(1)), (4, 2, e(2).scale(a)), (4, 3, e(3).scale(b))])?;
    let mut s = Vec::new();
    if *a == int(-1) && *b == int(-1) {
        let j = acs(&[(4, e(1)), (2, e(3))])?;
        let fam = kahler(
            &["s", "a12", "a13"],
            vec![
                neg_form(&[(1, 4, 1)]),
                neg_form(&[(1, 2, 1), (3, 4, 1)]),
                neg_form(&[(1, 3, 1), (2, 4, -1)]),
            ],
        );
        let at: &[(&str, i64)] = &[("s", 0), ("a12", 0), ("a13", 1)];
        let wits = vec![
            witness(WitnessKind::LagrangianIdeal, 1, 3, Some(at)),
            witness(WitnessKind::Walker, 1, 3, Some(at)),
            witness(WitnessKind::Walker, 2, 3, None),
        ];
        s.push(structure("J", j, fam, wits));
    }
    Ok((g, s))
}

fn build_r4p_gd(p: &Params) -> Result<Built> {
    let (c, d) = (&p["gamma"], &p["delta"]);
    let g = alg(&[
        (4, 1, e(1)),
        (4, 2, comb(&[(2, c.clone()), (3, -d.clone())])),
        (4, 3, comb(&[(2, d.clone()), (3, c.clone())])),
    ])?;
    let mut s = Vec::new();
    if c.is_zero() {
        let j1 = acs(&[(4, e(1)), (2, e(3))])?;
        let j2 = acs(&[(4, e(1)), (2, -&e(3))])?;
        let wits = || vec![witness(WitnessKind::InvariantIdeal, 2, 3, None)];
        s.push(structure("J1", j1, diag_pair_family((1, 4), (2, 3)), wits()));
        // the tabulated metric for J2 is +ω(J·,·), so this family keeps the printed sign
        let plus = kahler(
            &["a14", "a23"],
            vec![TwoForm::from_int_terms(4, &[(1, 4, 1)]), TwoForm::from_int_terms(4, &[(2, 3, 1)])],
        );
        s.push(structure("J2", j2, plus, wits()));
    }
    Ok((g, s))
}

fn build_d4(_: &Params) -> Result<Built> {
    Ok((alg(&[(1, 2, e(3)), (4, 1, e(1)), (4, 2, -&e(2))])?, Vec::new()))
}

fn build_d4_lambda(p: &Params) -> Result<Built> {
    let l = &p["lambda"];
    let one = Scalar::one();
    let g = alg(&[
        (1, 2, e(3)),
        (4, 3, e(3)),
        (4, 1, e(1).scale(l)),
        (4, 2, e(2).scale(&(&one - l))),
    ])?;
    let mut s = Vec::new();
    if *l == int(1) {
        let j = acs(&[(1, e(4)), (2, e(3))])?;
        let fam = kahler(&["a12", "a14"], vec![neg_form(&[(1, 2, 1), (3, 4, -1)]), neg_form(&[(1, 4, 1)])]);
        s.push(structure("J", j, fam, Vec::new()));
    } else if *l == int(2) {
        let j1 = acs(&[(4, -&e(2)), (1, e(3))])?;
        let fam1 = kahler(&["a14", "s"], vec![neg_form(&[(1, 4, 1), (2, 3, 1)]), neg_form(&[(2, 4, 1)])]);
        let at: &[(&str, i64)] = &[("a14", 1), ("s", 0)];
        let wits = vec![
            witness(WitnessKind::LagrangianIdeal, 2, 3, Some(at)),
            witness(WitnessKind::Walker, 2, 3, Some(at)),
            witness(WitnessKind::Walker, 1, 3, None),
        ];
        s.push(structure("J1", j1, fam1, wits));
        let j2 = acs(&[(4, e(1).scale(&int(-2))), (2, e(3))])?;
        s.push(structure("J2", j2, diag_pair_family((1, 4), (2, 3)), Vec::new()));
    } else if *l == scalar::frac(1, 2) {
        let fam = || kahler(&["a12"], vec![neg_form(&[(1, 2, 1), (3, 4, -1)])]);
        s.push(structure("J1", acs(&[(4, e(3)), (1, e(2))])?, fam(), Vec::new()));
        s.push(structure("J2", acs(&[(4, e(3)), (1, -&e(2))])?, fam(), Vec::new()));
    } else {
        let ja = acs(&[(4, e(1).scale(l)), (2, -&e(3))])?;
        let jb = acs(&[(4, e(2).scale(&(l - &one))), (1, -&e(3))])?;
        s.push(structure("Ja", ja, StructureKind::Complex, Vec::new()));
        s.push(structure("Jb", jb, StructureKind::Complex, Vec::new()));
    }
    Ok((g, s))
}

fn build_d4p_delta(p: &Params) -> Result<Built> {
    let d = &p["delta"];
    let half = d * scalar::frac(1, 2);
    let g = alg(&[
        (1, 2, e(3)),
        (4, 1, comb(&[(1, half.clone()), (2, int(-1))])),
        (4, 3, e(3).scale(d)),
        (4, 2, comb(&[(1, int(1)), (2, half)])),
    ])?;
    let relations: [(&str, [(usize, Vector); 2]); 4] = [
        ("J1", [(4, e(3)), (1, e(2))]),
        ("J2", [(4, -&e(3)), (1, e(2))]),
        ("J3", [(4, -&e(3)), (1, -&e(2))]),
        ("J4", [(1, -&e(2)), (4, e(3))]),
    ];
    let mut s = Vec::new();
    for (id, rels) in relations {
        let j = acs(&rels)?;
        let kind = if d.is_zero() {
            StructureKind::Complex
        } else {
            let gen = TwoForm::from_terms(4, &[(1, 2, int(1)), (3, 4, -d.clone())])?.neg();
            kahler(&["a12"], vec![gen])
        };
        s.push(structure(id, j, kind, Vec::new()));
    }
    Ok((g, s))
}

fn build_h4(_: &Params) -> Result<Built> {
    let half = scalar::frac(1, 2);
    let g = alg(&[
        (1, 2, e(3)),
        (4, 3, e(3)),
        (4, 1, e(1).scale(&half)),
        (4, 2, comb(&[(1, int(1)), (2, half)])),
    ])?;
    let j = acs(&[(4, -&e(2)), (1, e(3).scale(&int(-2)))])?;
    Ok((g, vec![structure("J", j, StructureKind::Complex, Vec::new())]))
}

fn build_r4_abelian(_: &Params) -> Result<Built> {
    let j = AlmostComplexStructure::standard(4)?;
    Ok((LieAlgebra::abelian(4), vec![structure("J", j, diag_pair_family((1, 2), (3, 4)), Vec::new())]))
}
