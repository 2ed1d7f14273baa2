//! End-to-end analyses: resolve an (algebra, J, ω) request, compute the
//! geometry and summarize the verdicts; sweep the catalog; validate input
//! documents.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::catalog::{self, CatalogEntry, Params, RegisteredStructure, WitnessKind};
use crate::classify::{
    default_walker_candidates, einstein_verdict, is_flat, is_self_orthogonal, is_totally_geodesic, walker_search,
    EinsteinVerdict,
};
use crate::compat::{compatible_closed_forms, kahler_scan, sample_nondegenerate, ScanOutcome};
use crate::complex::{integrability_defect, is_compatible, AlmostComplexStructure};
use crate::error::{Error, Result};
use crate::exterior::{closedness_defect, is_nondegenerate, TwoForm};
use crate::json::{self, AlgebraDoc, FormDoc, JDoc, SubspaceDoc};
use crate::lie::LieAlgebra;
use crate::riemann::{curvature, levi_civita, metric_from_pair, ricci, Connection, MetricTensor};
use crate::scalar::{self, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlgebraSource {
    Catalog { name: String, params: Params },
    Inline { label: String, algebra: LieAlgebra },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum JSource {
    Registered(String),
    Inline(AlmostComplexStructure),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OmegaSource {
    /// Values for the registered family of the chosen `J`.
    Params(Params),
    Explicit(TwoForm),
    /// First nondegenerate element of the compatible closed forms.
    Solve,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnalysisRequest {
    pub algebra: AlgebraSource,
    pub j: JSource,
    pub omega: OmegaSource,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EinsteinDoc {
    #[serde(with = "scalar::serde_str")]
    pub nu: Scalar,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub algebra: String,
    #[serde(rename = "J")]
    pub j: String,
    pub omega_params: BTreeMap<String, String>,
    pub signature: (usize, usize),
    pub flat: bool,
    pub ricci_flat: bool,
    pub einstein: Option<EinsteinDoc>,
    pub walker: Vec<SubspaceDoc>,
    pub totally_geodesic_commutator: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub lagrangian_ideals: Vec<SubspaceDoc>,
}

/// Key used for explicit form coefficients in `omega_params`, e.g. `w1_3`.
pub fn coefficient_key(i: usize, j: usize) -> String {
    format!("w{i}_{j}")
}

fn form_params(w: &TwoForm) -> BTreeMap<String, String> {
    w.terms()
        .into_iter()
        .map(|(i, j, c)| (coefficient_key(i, j), scalar::format(&c)))
        .collect()
}

struct ResolvedAlgebra {
    label: String,
    algebra: LieAlgebra,
    entry: Option<CatalogEntry>,
}

fn resolve_algebra(src: &AlgebraSource) -> Result<ResolvedAlgebra> {
    match src {
        AlgebraSource::Catalog { name, params } => {
            let entry = catalog::get(name, params)?;
            Ok(ResolvedAlgebra {
                label: entry.label(),
                algebra: entry.algebra.clone(),
                entry: Some(entry),
            })
        }
        AlgebraSource::Inline { label, algebra } => Ok(ResolvedAlgebra {
            label: label.clone(),
            algebra: algebra.clone(),
            entry: None,
        }),
    }
}

/// A request with every source resolved and the metric geometry computed.
#[derive(Clone, Debug)]
pub struct Geometry {
    pub label: String,
    pub algebra: LieAlgebra,
    pub j_label: String,
    pub j: AlmostComplexStructure,
    pub omega: TwoForm,
    pub omega_params: BTreeMap<String, String>,
    pub metric: MetricTensor,
    pub connection: Connection,
    registered: Option<RegisteredStructure>,
    family_point: Option<Params>,
}

pub fn resolve(req: &AnalysisRequest) -> Result<Geometry> {
    let r = resolve_algebra(&req.algebra)?;
    let (j_label, j, registered) = match &req.j {
        JSource::Registered(id) => {
            let entry = r.entry.as_ref().ok_or_else(|| {
                Error::PreconditionFailed(format!("structure {id:?} requested for an inline algebra"))
            })?;
            let s = entry.structure(id)?;
            (id.clone(), s.j.clone(), Some(s.clone()))
        }
        JSource::Inline(j) => ("inline".to_string(), j.clone(), None),
    };
    let (omega, omega_params, family_point) = match &req.omega {
        OmegaSource::Params(p) => {
            let s = registered
                .as_ref()
                .ok_or_else(|| Error::PreconditionFailed("family parameters need a registered J".into()))?;
            let fam = s
                .family()
                .ok_or_else(|| Error::PreconditionFailed(format!("{} has no compatible form family", s.id)))?;
            let w = fam.form(p)?;
            let shown = p.iter().map(|(k, v)| (k.clone(), scalar::format(v))).collect();
            (w, shown, Some(p.clone()))
        }
        OmegaSource::Explicit(w) => (w.clone(), form_params(w), None),
        OmegaSource::Solve => {
            let space = compatible_closed_forms(&r.algebra, &j)?;
            let w = sample_nondegenerate(&space).ok_or(Error::Degenerate)?;
            let shown = form_params(&w);
            (w, shown, None)
        }
    };
    let metric = metric_from_pair(&r.algebra, &j, &omega)?;
    let connection = levi_civita(&r.algebra, &metric)?;
    Ok(Geometry {
        label: r.label,
        algebra: r.algebra,
        j_label,
        j,
        omega,
        omega_params,
        metric,
        connection,
        registered,
        family_point,
    })
}

pub fn analyze(req: &AnalysisRequest) -> Result<ClassificationReport> {
    let geo = resolve(req)?;
    let g = &geo.algebra;
    let m = &geo.metric;
    let conn = &geo.connection;
    let rt = curvature(g, conn);
    let ric = ricci(&rt);
    let verdict = einstein_verdict(&ric, m)?;

    let mut candidates = default_walker_candidates(g, &geo.j);
    let mut lagrangian_ideals = Vec::new();
    if let Some(s) = &geo.registered {
        for w in &s.witnesses {
            let applies = match (&w.at, &geo.family_point) {
                (None, _) => true,
                (Some(at), Some(p)) => at == p,
                (Some(_), None) => false,
            };
            if !applies {
                continue;
            }
            match w.kind {
                WitnessKind::Walker if !candidates.contains(&w.subspace) => candidates.push(w.subspace.clone()),
                WitnessKind::LagrangianIdeal => {
                    let h = &w.subspace;
                    if g.is_ideal(h)? && is_self_orthogonal(m, h) && h.intersection(&h.image(geo.j.matrix())).is_zero() {
                        lagrangian_ideals.push(SubspaceDoc::from_subspace(&w.subspace));
                    }
                }
                _ => {}
            }
        }
    }
    let walker = walker_search(m, conn, &candidates)
        .into_iter()
        .map(|w| SubspaceDoc::from_subspace(&w.subspace))
        .collect();
    let commutator = g.derived_algebra();
    Ok(ClassificationReport {
        algebra: geo.label,
        j: geo.j_label,
        omega_params: geo.omega_params,
        signature: m.signature(),
        flat: is_flat(&rt),
        ricci_flat: ric.is_zero(),
        einstein: match verdict {
            EinsteinVerdict::NotEinstein { .. } => None,
            v => Some(EinsteinDoc {
                nu: v.nu().expect("Einstein verdicts carry nu"),
            }),
        },
        walker,
        totally_geodesic_commutator: !commutator.is_zero() && is_totally_geodesic(conn, &commutator),
        lagrangian_ideals,
    })
}

fn subspace_text(s: &SubspaceDoc) -> String {
    let vs: Vec<String> = s.basis.iter().map(|v| format!("({})", v.join(","))).collect();
    format!("span{{{}}}", vs.join(", "))
}

/// Line-oriented `key: value` rendering of a report.
pub fn render_text(r: &ClassificationReport) -> String {
    let params: Vec<String> = r.omega_params.iter().map(|(k, v)| format!("{k}={v}")).collect();
    let spans = |xs: &[SubspaceDoc]| -> String {
        if xs.is_empty() {
            "none".into()
        } else {
            xs.iter().map(subspace_text).collect::<Vec<_>>().join("; ")
        }
    };
    let mut out = String::new();
    out.push_str(&format!("algebra: {}\n", r.algebra));
    out.push_str(&format!("J: {}\n", r.j));
    out.push_str(&format!("omega_params: {}\n", params.join(",")));
    out.push_str(&format!("signature: ({},{})\n", r.signature.0, r.signature.1));
    out.push_str(&format!("flat: {}\n", r.flat));
    out.push_str(&format!("ricci_flat: {}\n", r.ricci_flat));
    match &r.einstein {
        Some(e) => out.push_str(&format!("einstein: nu={}\n", scalar::format(&e.nu))),
        None => out.push_str("einstein: no\n"),
    }
    out.push_str(&format!("walker: {}\n", spans(&r.walker)));
    out.push_str(&format!("totally_geodesic_commutator: {}\n", r.totally_geodesic_commutator));
    if !r.lagrangian_ideals.is_empty() {
        out.push_str(&format!("lagrangian_ideals: {}\n", spans(&r.lagrangian_ideals)));
    }
    out
}

// ---- scan ----

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScanStatus {
    Kahler,
    Degenerate,
    NotIntegrable,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanRow {
    pub algebra: String,
    #[serde(rename = "J")]
    pub j: String,
    pub status: ScanStatus,
    pub dimension: Option<usize>,
    pub basis: Vec<FormDoc>,
    pub pfaffian: Option<String>,
    pub sample: Option<FormDoc>,
    /// First basis pair with nonzero Nijenhuis tensor.
    pub nijenhuis_at: Option<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanReport {
    pub rows: Vec<ScanRow>,
    /// Non-abelian algebras with at least one Kähler row.
    pub kahler_algebras: Vec<String>,
    /// Algebras none of whose registered structures admits a compatible
    /// symplectic form.
    pub no_compatible_pair: Vec<String>,
}

fn scan_entry(entry: &CatalogEntry) -> Result<Vec<ScanRow>> {
    let structures: Vec<(String, AlmostComplexStructure)> =
        entry.structures.iter().map(|s| (s.id.clone(), s.j.clone())).collect();
    let label = entry.label();
    Ok(kahler_scan(&entry.algebra, &structures)?
        .into_iter()
        .map(|row| match row.outcome {
            ScanOutcome::NotIntegrable { i, j } => ScanRow {
                algebra: label.clone(),
                j: row.id,
                status: ScanStatus::NotIntegrable,
                dimension: None,
                basis: Vec::new(),
                pfaffian: None,
                sample: None,
                nijenhuis_at: Some((i, j)),
            },
            ScanOutcome::Forms { space, pfaffian, sample } => ScanRow {
                algebra: label.clone(),
                j: row.id,
                status: if sample.is_some() {
                    ScanStatus::Kahler
                } else {
                    ScanStatus::Degenerate
                },
                dimension: Some(space.dimension()),
                basis: space.basis().iter().map(FormDoc::from_form).collect(),
                pfaffian: Some(pfaffian.to_string()),
                sample: sample.as_ref().map(FormDoc::from_form),
                nijenhuis_at: None,
            },
        })
        .collect())
}

/// Sweeps [`catalog::scan_instances`], one worker thread per entry.
pub fn scan() -> Result<ScanReport> {
    let instances = catalog::scan_instances();
    let entries = instances
        .iter()
        .map(|(name, p)| catalog::get(name, p))
        .collect::<Result<Vec<_>>>()?;
    let per_entry: Vec<Result<Vec<ScanRow>>> = std::thread::scope(|s| {
        let handles: Vec<_> = entries.iter().map(|e| s.spawn(move || scan_entry(e))).collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("scan worker panicked"))
            .collect()
    });
    let mut rows = Vec::new();
    let mut kahler = Vec::new();
    let mut none = Vec::new();
    for (entry, result) in entries.iter().zip(per_entry) {
        let entry_rows = result?;
        let any = entry_rows.iter().any(|r| r.status == ScanStatus::Kahler);
        if any && !entry.algebra.is_abelian() {
            kahler.push(entry.label());
        }
        if !any {
            none.push(entry.label());
        }
        rows.extend(entry_rows);
    }
    Ok(ScanReport {
        rows,
        kahler_algebras: kahler,
        no_compatible_pair: none,
    })
}

fn form_text(f: &FormDoc) -> String {
    let n = f.coeffs.iter().map(|c| c.j).max().unwrap_or(2);
    match f.to_form(n) {
        Ok(w) => w.to_string(),
        Err(_) => "?".into(),
    }
}

pub fn render_scan_text(r: &ScanReport) -> String {
    let mut out = String::new();
    for row in &r.rows {
        let status = match row.status {
            ScanStatus::Kahler => "kahler",
            ScanStatus::Degenerate => "degenerate",
            ScanStatus::NotIntegrable => "not_integrable",
        };
        out.push_str(&format!("{} {} {}", row.algebra, row.j, status));
        if let Some((i, j)) = row.nijenhuis_at {
            out.push_str(&format!(" nijenhuis_at=({i},{j})"));
        }
        if let Some(d) = row.dimension {
            let basis: Vec<String> = row.basis.iter().map(form_text).collect();
            out.push_str(&format!(" dim={d} basis=[{}]", basis.join("; ")));
        }
        if let Some(p) = &row.pfaffian {
            out.push_str(&format!(" pfaffian={p}"));
        }
        if let Some(s) = &row.sample {
            out.push_str(&format!(" sample={}", form_text(s)));
        }
        out.push('\n');
    }
    out.push_str(&format!("kahler algebras: {}\n", r.kahler_algebras.len()));
    for a in &r.kahler_algebras {
        out.push_str(&format!("  {a}\n"));
    }
    for a in &r.no_compatible_pair {
        out.push_str(&format!("{a}: no compatible pair\n"));
    }
    out
}

// ---- validation ----

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Diagnostic {
    pub check: String,
    pub message: String,
}

fn diag(check: &str, message: String) -> Diagnostic {
    Diagnostic {
        check: check.to_string(),
        message,
    }
}

fn sub_doc<T: serde::de::DeserializeOwned>(v: &Value, keys: &[&str]) -> Result<T> {
    let mut obj = serde_json::Map::new();
    for k in keys {
        if let Some(x) = v.get(*k) {
            obj.insert(k.to_string(), x.clone());
        }
    }
    serde_json::from_value(Value::Object(obj)).map_err(|e| Error::Schema(format!("field {}: {e}", keys.join("/"))))
}

/// Checks a document holding any of an algebra (`dim`, `brackets`), a
/// complex structure (`J`) and a form (`coeffs`): Jacobi on every triple,
/// `J² = -I`, integrability, closedness, compatibility and nondegeneracy.
/// An empty list means every present check passed.
pub fn validate(text: &str) -> Result<Vec<Diagnostic>> {
    let v: Value = json::parse(text)?;
    if !v.is_object() {
        return Err(Error::Schema("top level must be an object".into()));
    }
    let mut out = Vec::new();
    let mut algebra = None;
    if v.get("brackets").is_some() {
        let doc: AlgebraDoc = sub_doc(&v, &["dim", "brackets"])?;
        let violations = LieAlgebra::jacobi_violations(doc.dim, &doc.entries())?;
        for (i, j, k) in &violations {
            out.push(diag("jacobi", format!("Jacobi identity fails on ({i},{j},{k})")));
        }
        if violations.is_empty() {
            algebra = Some(doc.to_algebra()?);
        }
    }
    let mut j = None;
    if v.get("J").is_some() {
        let doc: JDoc = sub_doc(&v, &["J"])?;
        match doc.to_structure() {
            Ok(s) => j = Some(s),
            Err(e @ Error::NotAlmostComplex { .. }) => out.push(diag("J^2=-I", e.to_string())),
            Err(e) => return Err(e),
        }
    }
    if let (Some(g), Some(s)) = (&algebra, &j) {
        if let Some((a, b)) = integrability_defect(g, s)? {
            out.push(diag("integrability", format!("Nijenhuis tensor nonzero on (e_{a}, e_{b})")));
        }
    }
    if v.get("coeffs").is_some() {
        let doc: FormDoc = sub_doc(&v, &["coeffs"])?;
        let n = algebra
            .as_ref()
            .map(LieAlgebra::dim)
            .or(j.as_ref().map(AlmostComplexStructure::dim))
            .or(v.get("dim").and_then(Value::as_u64).map(|d| d as usize))
            .unwrap_or_else(|| doc.coeffs.iter().map(|c| c.j).max().unwrap_or(0));
        let w = doc.to_form(n)?;
        if let Some(g) = &algebra {
            if let Some((a, b, c)) = closedness_defect(g, &w) {
                out.push(diag("closedness", format!("d omega nonzero on ({a},{b},{c})")));
            }
        }
        if let Some(s) = &j {
            if !is_compatible(&w, s) {
                out.push(diag("compatibility", "omega(J.,J.) != omega".into()));
            }
        }
        if !is_nondegenerate(&w) {
            out.push(diag("nondegeneracy", "omega is degenerate".into()));
        }
    }
    Ok(out)
}
