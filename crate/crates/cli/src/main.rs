use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use invkahler_core::affine;
use invkahler_core::catalog::{self, CatalogEntry, EntryKind, Params, StructureKind};
use invkahler_core::error::Error;
use invkahler_core::exterior::TwoForm;
use invkahler_core::json::{
    self as docs, AlgebraDoc, AssociativeDoc, ConnectionDoc, FormDoc, JDoc, LoadedAssociative, MetricDoc, SubspaceDoc,
};
use invkahler_core::report::{self, AlgebraSource, AnalysisRequest, JSource, OmegaSource};
use invkahler_core::riemann::integrate_geodesic;
use invkahler_core::scalar;

#[derive(Parser)]
#[command(name = "invkahler", version, about = "Invariant pseudo-Kähler structures on Lie algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Default, ValueEnum)]
enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Check an algebra / J / ω document and list every failing condition.
    Validate { file: PathBuf },
    /// Metric, curvature and Walker analysis of one (algebra, J, ω) triple.
    Analyze {
        #[command(flatten)]
        source: SourceArgs,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Compatible closed forms for every registered structure in the catalog.
    Scan {
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    #[command(subcommand)]
    Catalog(CatalogCommand),
    #[command(subcommand)]
    Aff(AffCommand),
    /// RK4 integration of the geodesic field. Floating point; outputs are approximate.
    DemoGeodesic {
        #[command(flatten)]
        source: SourceArgs,
        /// Initial velocity, comma separated. Defaults to (1, 0, ..., 0).
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        x0: Vec<f64>,
        #[arg(long, default_value_t = 0.5)]
        t_end: f64,
        #[arg(long, default_value_t = 1000)]
        steps: usize,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
}

#[derive(Subcommand)]
enum CatalogCommand {
    List,
    Get {
        name: String,
        /// `key=value`, repeatable or comma separated.
        #[arg(long = "param", value_delimiter = ',')]
        params: Vec<String>,
    },
}

#[derive(Subcommand)]
enum AffCommand {
    /// Build aff(A) from an associative algebra document; `iota` selects the complex construction.
    Build {
        file: PathBuf,
        /// Pairing functional for ω on real A, comma separated (default: ω = Σ vⁱ∧wⁱ).
        #[arg(long, value_delimiter = ',')]
        tau: Vec<String>,
        /// Also print the analysis report of the built structure.
        #[arg(long)]
        analyze: bool,
    },
}

#[derive(Args, Default)]
struct SourceArgs {
    /// Catalog name (`catalog list`).
    #[arg(long)]
    catalog: Option<String>,
    #[arg(long = "param", value_delimiter = ',')]
    params: Vec<String>,
    /// Algebra document instead of a catalog name.
    #[arg(long, conflicts_with = "catalog")]
    algebra: Option<PathBuf>,
    /// Registered structure id.
    #[arg(long = "J")]
    j: Option<String>,
    /// J document instead of a registered id.
    #[arg(long = "J-file", conflicts_with = "j")]
    j_file: Option<PathBuf>,
    /// Family values `a12=1,...`, explicit coefficients `w1_3=1,...`, or `solve`.
    #[arg(long)]
    omega: Option<String>,
    /// Form document instead of `--omega`.
    #[arg(long, conflicts_with = "omega")]
    omega_file: Option<PathBuf>,
}

enum Failure {
    Core(Error),
    Io(String),
    /// Diagnostics already printed.
    Invalid,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Core(e) => match (e, e.module()) {
                (Error::ConstructionCheck(_), _) => 3,
                (_, "pseudo_riemannian" | "classification") => 3,
                _ => 2,
            },
            Failure::Io(_) => 4,
            Failure::Invalid => 2,
        }
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn key_values(items: &[String]) -> CliResult<Params> {
    let mut out = Params::new();
    for item in items.iter().filter(|s| !s.is_empty()) {
        let (k, v) = item
            .split_once('=')
            .ok_or_else(|| Error::Schema(format!("expected key=value, got {item:?}")))?;
        out.insert(catalog::canonical_param(k.trim()).to_string(), scalar::parse(v.trim())?);
    }
    Ok(out)
}

fn explicit_key(k: &str) -> Option<(usize, usize)> {
    let (i, j) = k.strip_prefix('w')?.split_once('_')?;
    Some((i.parse().ok()?, j.parse().ok()?))
}

impl SourceArgs {
    fn request(&self) -> CliResult<Option<AnalysisRequest>> {
        let algebra = match (&self.catalog, &self.algebra) {
            (Some(name), _) => AlgebraSource::Catalog {
                name: name.clone(),
                params: key_values(&self.params)?,
            },
            (None, Some(path)) => {
                let doc: AlgebraDoc = docs::parse(&read(path)?)?;
                AlgebraSource::Inline {
                    label: path.display().to_string(),
                    algebra: doc.to_algebra()?,
                }
            }
            (None, None) => return Ok(None),
        };
        let n = match &algebra {
            AlgebraSource::Catalog { name, params } => catalog::get(name, params)?.algebra.dim(),
            AlgebraSource::Inline { algebra, .. } => algebra.dim(),
        };
        let j = match (&self.j, &self.j_file) {
            (Some(id), _) => JSource::Registered(id.clone()),
            (None, Some(path)) => JSource::Inline(docs::parse::<JDoc>(&read(path)?)?.to_structure()?),
            (None, None) => return Err(Error::Schema("one of --J or --J-file is required".into()).into()),
        };
        let omega = match (&self.omega, &self.omega_file) {
            (_, Some(path)) => {
                let doc: FormDoc = docs::parse(&read(path)?)?;
                OmegaSource::Explicit(doc.to_form(n)?)
            }
            (Some(s), None) if s.trim() == "solve" => OmegaSource::Solve,
            (Some(s), None) => {
                let items: Vec<String> = s.split(',').map(str::to_string).collect();
                let values = key_values(&items)?;
                if !values.is_empty() && values.keys().all(|k| explicit_key(k).is_some()) {
                    let terms: Vec<_> = values
                        .iter()
                        .map(|(k, v)| {
                            let (i, j) = explicit_key(k).expect("checked");
                            (i, j, v.clone())
                        })
                        .collect();
                    OmegaSource::Explicit(TwoForm::from_terms(n, &terms)?)
                } else {
                    OmegaSource::Params(values)
                }
            }
            (None, None) => OmegaSource::Solve,
        };
        Ok(Some(AnalysisRequest { algebra, j, omega }))
    }
}

fn params_json(p: &Params) -> Value {
    Value::Object(p.iter().map(|(k, v)| (k.clone(), json!(scalar::format(v)))).collect())
}

fn entry_json(e: &CatalogEntry) -> Value {
    let structures: Vec<Value> = e
        .structures
        .iter()
        .map(|s| {
            let (kind, family) = match &s.kind {
                StructureKind::Kahler(f) => (
                    "kahler",
                    json!({
                        "params": f.params(),
                        "generators": f.generators().iter().map(FormDoc::from_form).collect::<Vec<_>>(),
                    }),
                ),
                StructureKind::Complex => ("complex", Value::Null),
                StructureKind::Probe => ("probe", Value::Null),
            };
            let witnesses: Vec<Value> = s
                .witnesses
                .iter()
                .map(|w| {
                    json!({
                        "kind": w.kind.as_str(),
                        "basis": SubspaceDoc::from_subspace(&w.subspace).basis,
                        "at": w.at.as_ref().map(params_json),
                    })
                })
                .collect();
            json!({
                "id": s.id,
                "kind": kind,
                "J": JDoc::from_structure(&s.j).j,
                "family": family,
                "witnesses": witnesses,
            })
        })
        .collect();
    let algebra = AlgebraDoc::from_algebra(&e.algebra);
    json!({
        "name": e.name,
        "label": e.label(),
        "family": e.family,
        "params": params_json(&e.params),
        "dim": algebra.dim,
        "brackets": algebra.brackets,
        "structures": structures,
    })
}

fn catalog_list_json() -> Value {
    let entries: Vec<Value> = catalog::list()
        .into_iter()
        .map(|info| {
            let params: Vec<Value> = info
                .params
                .iter()
                .map(|p| json!({"name": p.name, "range": p.range}))
                .collect();
            let mut v = json!({"name": info.name, "params": params});
            let kind = match &info.kind {
                EntryKind::Family => "family",
                EntryKind::Specialization { target, fixed } => {
                    v["target"] = json!(target);
                    v["fixed"] = params_json(fixed);
                    "specialization"
                }
                EntryKind::Builder => "builder",
                EntryKind::Registered => "registered",
            };
            v["kind"] = json!(kind);
            v
        })
        .collect();
    Value::Array(entries)
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

fn golden_check(file: &str, output: &str) -> CliResult<()> {
    let Some(dir) = std::env::var_os("INVKAHLER_GOLDEN_DIR") else {
        return Ok(());
    };
    let path = Path::new(&dir).join(file);
    let expected = read(&path)?;
    if let Some((n, (a, b))) = expected
        .lines()
        .zip(output.lines())
        .enumerate()
        .find(|(_, (a, b))| a != b)
    {
        eprintln!("golden mismatch in {} at line {}:\n  expected: {a}\n  actual:   {b}", path.display(), n + 1);
        return Err(Failure::Invalid);
    }
    if expected.lines().count() != output.lines().count() {
        eprintln!("golden mismatch in {}: line counts differ", path.display());
        return Err(Failure::Invalid);
    }
    eprintln!("golden: {} matches", path.display());
    Ok(())
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Validate { file } => {
            let diagnostics = report::validate(&read(&file)?)?;
            if diagnostics.is_empty() {
                println!("OK");
                return Ok(());
            }
            for d in &diagnostics {
                println!("{}: {}", d.check, d.message);
            }
            Err(Failure::Invalid)
        }
        Command::Analyze { source, format } => {
            let req = source
                .request()?
                .ok_or_else(|| Error::Schema("one of --catalog or --algebra is required".into()))?;
            let r = report::analyze(&req)?;
            match format {
                Format::Text => print!("{}", report::render_text(&r)),
                Format::Json => print!("{}", docs::emit(&r)),
            }
            Ok(())
        }
        Command::Scan { format } => {
            let r = report::scan()?;
            let (text, file) = match format {
                Format::Text => (report::render_scan_text(&r), "scan.txt"),
                Format::Json => (docs::emit(&r), "scan.json"),
            };
            print!("{text}");
            golden_check(file, &text)
        }
        Command::Catalog(CatalogCommand::List) => {
            print!("{}", pretty(&catalog_list_json()));
            Ok(())
        }
        Command::Catalog(CatalogCommand::Get { name, params }) => {
            let entry = catalog::get(&name, &key_values(&params)?)?;
            print!("{}", pretty(&entry_json(&entry)));
            Ok(())
        }
        Command::Aff(AffCommand::Build { file, tau, analyze }) => {
            let doc: AssociativeDoc = docs::parse(&read(&file)?)?;
            let (out, name, j_id) = match doc.load()? {
                LoadedAssociative::Real(a) => {
                    let aff = if tau.is_empty() {
                        affine::build_aff(&a)?
                    } else {
                        let t = docs::vector_from_strings(&tau)?;
                        affine::build_aff_traced(&a, &t)?
                    };
                    let algebra = AlgebraDoc::from_algebra(&aff.algebra);
                    let out = json!({
                        "dim": algebra.dim,
                        "brackets": algebra.brackets,
                        "K": JDoc::from_structure(&aff.k).j,
                        "omega": FormDoc::from_form(&aff.omega),
                    });
                    (out, affine::register_aff(&a, aff)?, "K")
                }
                LoadedAssociative::Complex(ar) => {
                    let c = affine::build_aff_complex(&ar)?;
                    let algebra = AlgebraDoc::from_algebra(&c.algebra);
                    let out = json!({
                        "dim": algebra.dim,
                        "brackets": algebra.brackets,
                        "J": JDoc::from_structure(&c.j).j,
                        "g": MetricDoc::from_metric(&c.metric).g,
                        "connection": ConnectionDoc::from_connection(&c.connection).coeffs,
                        "omega": FormDoc::from_form(&c.kahler_form()),
                    });
                    (out, affine::register_aff_complex(&ar)?, "J")
                }
            };
            let mut out = out;
            out["name"] = json!(name);
            if analyze {
                let req = AnalysisRequest {
                    algebra: AlgebraSource::Catalog {
                        name: name.clone(),
                        params: Params::new(),
                    },
                    j: JSource::Registered(j_id.into()),
                    omega: OmegaSource::Params(catalog::params(&[("a", scalar::one())])),
                };
                out["report"] = serde_json::to_value(report::analyze(&req)?).expect("reports serialize");
            }
            print!("{}", pretty(&out));
            Ok(())
        }
        Command::DemoGeodesic {
            source,
            x0,
            t_end,
            steps,
            format,
        } => {
            let (label, conn) = match source.request()? {
                Some(req) => {
                    let geo = report::resolve(&req)?;
                    (geo.label, geo.connection)
                }
                None => ("aff(C)".to_string(), affine::build_aff_complex(&affine::complex_numbers())?.connection),
            };
            let n = conn.dim();
            let x0 = if x0.is_empty() {
                let mut v = vec![0.0; n];
                v[0] = 1.0;
                v
            } else {
                x0
            };
            if x0.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: x0.len(),
                }
                .into());
            }
            let samples = integrate_geodesic(&conn, &x0, t_end, steps);
            let stride = (steps / 10).max(1);
            let shown: Vec<_> = samples
                .iter()
                .enumerate()
                .filter(|(k, _)| k % stride == 0 || *k == samples.len() - 1)
                .map(|(_, s)| s)
                .collect();
            match format {
                Format::Json => {
                    let v = json!({
                        "approximate": true,
                        "method": "rk4",
                        "algebra": label,
                        "steps": steps,
                        "samples": shown.iter().map(|s| json!({"t": s.t, "x": s.x})).collect::<Vec<_>>(),
                    });
                    print!("{}", pretty(&v));
                }
                Format::Text => {
                    println!("approximate geodesic x' = -nabla_x x on {label} (RK4, {steps} steps)");
                    for s in shown {
                        let xs: Vec<String> = s.x.iter().map(|x| format!("{x:.9}")).collect();
                        println!("t={:.4} x=({})", s.t, xs.join(", "));
                    }
                }
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            match &f {
                Failure::Core(e) => eprintln!("error[{}]: {e}", e.module()),
                Failure::Io(msg) => eprintln!("error[io]: {msg}"),
                Failure::Invalid => {}
            }
            ExitCode::from(f.code())
        }
    }
}
