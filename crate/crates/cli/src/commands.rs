use std::fmt;
use std::fs;
use std::path::Path;

use serde_json::{json, Value};

use hallcount::cluster::{cluster_variable, grc_from_count, verify_cluster_multiplication, PrincipalFrame};
use hallcount::count::{flag_moduli_count, grassmannian_moduli_count, moduli_count, transfer_matrix_grassmannian};
use hallcount::dilog::verify_dynkin_identity;
use hallcount::lambdaring::moduli_series;
use hallcount::oracle::checks::run_suite;
use hallcount::oracle::Oracle;
use hallcount::quiver::{parse_quiver_file, DimVector, Quiver, QuiverFile, Slope, SlopeValue, Weight};
use hallcount::Error;

use crate::cache::Cache;
use crate::{Command, Format, QuiverArgs};

pub const EXIT_VERIFY: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_BUDGET: u8 = 3;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Lib(Error),
}

impl CliError {
    pub fn status(&self) -> u8 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Lib(Error::Budget { .. }) => EXIT_BUDGET,
            CliError::Lib(
                Error::Parse { .. }
                | Error::DimensionMismatch(_)
                | Error::InvalidArgument(_)
                | Error::NotDynkin(_)
                | Error::MissingEntry(_),
            ) => EXIT_USAGE,
            CliError::Lib(_) => EXIT_VERIFY,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "{m}"),
            CliError::Lib(e) => write!(f, "{e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

type Res<T> = std::result::Result<T, CliError>;

pub struct Output {
    pub text: String,
    pub status: u8,
}

fn load_quiver(spec: &str) -> Res<QuiverFile> {
    let path = Path::new(spec);
    if path.exists() {
        let src = fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{spec}: {e}")))?;
        return parse_quiver_file(&src).map_err(|e| match e {
            Error::Parse { pos, msg } => CliError::Usage(format!("{spec}:{pos}: {msg}")),
            e => CliError::Usage(format!("{spec}: {e}")),
        });
    }
    match Quiver::named(&spec.to_uppercase()) {
        Ok(quiver) => Ok(QuiverFile { quiver, sigma: None, theta: None }),
        Err(_) => Err(CliError::Usage(format!("{spec}: no such file and not a built-in quiver name"))),
    }
}

struct Setup {
    quiver: Quiver,
    /// Canonical text of the bare quiver, used for cache keys.
    canonical: String,
    sigma: Weight,
    theta: Weight,
}

impl Setup {
    fn new(args: &QuiverArgs) -> Res<Setup> {
        let file = load_quiver(&args.quiver)?;
        let n = file.quiver.num_vertices();
        let sigma = args.sigma.clone().map(Weight).or(file.sigma.clone()).unwrap_or(Weight(vec![0; n]));
        let theta = args.theta.clone().map(Weight).or(file.theta.clone()).unwrap_or(Weight(vec![1; n]));
        for (name, w) in [("sigma", &sigma), ("theta", &theta)] {
            if w.0.len() != n {
                return Err(CliError::Usage(format!("--{name} has {} entries, quiver has {n} vertices", w.0.len())));
            }
        }
        let canonical = QuiverFile { quiver: file.quiver.clone(), sigma: None, theta: None }.to_text();
        Ok(Setup { quiver: file.quiver, canonical, sigma, theta })
    }

    fn slope(&self) -> Res<Slope> {
        Ok(Slope::new(self.sigma.clone(), self.theta.clone())?)
    }

    fn dim(&self, flag: &str, v: &[u32]) -> Res<DimVector> {
        let n = self.quiver.num_vertices();
        if v.len() != n {
            return Err(CliError::Usage(format!("--{flag} has {} entries, quiver has {n} vertices", v.len())));
        }
        Ok(DimVector(v.to_vec()))
    }

    fn params(&self, extra: Value) -> Value {
        let mut p = json!({ "sigma": self.sigma.0, "theta": self.theta.0 });
        if let (Some(p), Value::Object(e)) = (p.as_object_mut(), extra) {
            p.extend(e);
        }
        p
    }
}

/// Execute one command; the report is rendered from its JSON form so cached and
/// fresh runs print identical bytes.
pub fn run(cmd: &Command, format: Format, use_cache: bool) -> Res<Output> {
    let (name, cacheable) = match cmd {
        Command::Moduli { .. } => ("moduli", true),
        Command::Grass { .. } => ("grass", true),
        Command::Flag { .. } => ("flag", true),
        Command::ClusterVar { verify, .. } => ("cluster-var", verify.is_none()),
        Command::Series { .. } => ("series", true),
        Command::Dilog { .. } => ("dilog", false),
        Command::Verify { .. } => ("verify", false),
    };
    let report = match (cacheable && use_cache, prepare(cmd)?) {
        (true, (setup, params)) => {
            let cache = Cache::from_env();
            let key = Cache::key(name, &setup.canonical, &params);
            match cache.as_ref().and_then(|c| c.get(&key)) {
                Some(r) => r,
                None => {
                    let r = compute(cmd, &setup)?;
                    if let Some(c) = &cache {
                        c.put(&key, &r);
                    }
                    r
                }
            }
        }
        (false, (setup, _)) => compute(cmd, &setup)?,
    };
    let status = if report.get("passed") == Some(&Value::Bool(false)) { EXIT_VERIFY } else { 0 };
    let text = match format {
        Format::Json => serde_json::to_string_pretty(&report).expect("serializable") + "\n",
        Format::Text => render_text(name, &report),
    };
    Ok(Output { text, status })
}

fn prepare(cmd: &Command) -> Res<(Setup, Value)> {
    Ok(match cmd {
        Command::Moduli { q, alpha } => {
            let s = Setup::new(q)?;
            let p = s.params(json!({ "alpha": s.dim("alpha", alpha)?.0 }));
            (s, p)
        }
        Command::Grass { q, alpha, gamma, transfer } => {
            let s = Setup::new(q)?;
            let p = s.params(json!({ "alpha": s.dim("alpha", alpha)?.0, "gamma": s.dim("gamma", gamma)?.0, "transfer": transfer }));
            (s, p)
        }
        Command::Flag { q, parts } => {
            let s = Setup::new(q)?;
            let parts: Vec<Vec<u32>> = parts.iter().map(|v| s.dim("part", v).map(|d| d.0)).collect::<Res<_>>()?;
            let p = s.params(json!({ "parts": parts }));
            (s, p)
        }
        Command::ClusterVar { q, alpha, verify } => {
            let s = Setup::new(q)?;
            let p = s.params(json!({ "alpha": s.dim("alpha", alpha)?.0, "verify": verify }));
            (s, p)
        }
        Command::Series { q, mu0, truncation } => {
            let s = Setup::new(q)?;
            let p = s.params(json!({ "mu0": parse_mu0(mu0)?.to_string(), "truncation": truncation }));
            (s, p)
        }
        Command::Dilog { quiver, truncation } => {
            let s = Setup::new(&QuiverArgs { quiver: quiver.clone(), sigma: None, theta: None })?;
            (s, json!({ "truncation": truncation }))
        }
        Command::Verify { q, fields, max_dim } => {
            let s = Setup::new(q)?;
            let p = s.params(json!({ "q": fields, "max_dim": max_dim }));
            (s, p)
        }
    })
}

fn parse_mu0(s: &str) -> Res<SlopeValue> {
    s.trim().parse().map_err(|_| CliError::Usage(format!("--mu0: cannot parse '{s}' as a rational")))
}

fn compute(cmd: &Command, s: &Setup) -> Res<Value> {
    let q = &s.quiver;
    match cmd {
        Command::Moduli { alpha, .. } => {
            let a = s.dim("alpha", alpha)?;
            let mut r = moduli_count(q, &a, &s.slope()?)?.to_json();
            r["alpha"] = json!(a.0);
            Ok(r)
        }
        Command::Grass { alpha, gamma, transfer, .. } => {
            let (a, c) = (s.dim("alpha", alpha)?, s.dim("gamma", gamma)?);
            let mu = s.slope()?;
            let res = grassmannian_moduli_count(q, &a, &c, &mu)?;
            let mut r = res.to_json();
            r["alpha"] = json!(a.0);
            r["gamma"] = json!(c.0);
            if *transfer {
                let t = transfer_matrix_grassmannian(q, &a, &c, &mu)?;
                r["transfer"] = json!(t.to_string());
                r["passed"] = json!(t == res.raw);
            }
            Ok(r)
        }
        Command::Flag { parts, .. } => {
            let parts: Vec<DimVector> = parts.iter().map(|v| s.dim("part", v)).collect::<Res<_>>()?;
            let mut r = flag_moduli_count(q, &parts, &s.slope()?)?.to_json();
            r["parts"] = json!(parts.iter().map(|d| d.0.clone()).collect::<Vec<_>>());
            Ok(r)
        }
        Command::ClusterVar { alpha, verify, .. } => {
            let a = s.dim("alpha", alpha)?;
            let frame = PrincipalFrame::new(q)?;
            let x = cluster_variable(&frame, &a, &grc_from_count(q, &a, &s.sigma)?)?;
            let mut r = json!({ "alpha": a.0, "element": x.to_json(), "display": x.to_string() });
            if let Some(p) = verify {
                let o = Oracle::new(q, *p)?;
                let n = q.num_vertices();
                let mut rows = Vec::new();
                let mut all = true;
                for i in 0..n {
                    for j in 0..n {
                        if i != j {
                            let ok = verify_cluster_multiplication(&frame, &o, &o.simple(i), &o.simple(j))?;
                            all &= ok;
                            rows.push(json!({ "u": q.names()[i], "v": q.names()[j], "passed": ok }));
                        }
                    }
                }
                r["multiplication"] = json!({ "q": p, "pairs": rows });
                r["passed"] = json!(all);
            }
            Ok(r)
        }
        Command::Series { mu0, truncation, .. } => {
            let m0 = parse_mu0(mu0)?;
            let ms = moduli_series(q, &s.slope()?, m0, *truncation)?;
            let rows: Vec<Value> = ms
                .table()
                .into_iter()
                .map(|(k, r, a, m)| json!({ "alpha": k, "r": r.to_string(), "a": a.to_string(), "m": m.to_string() }))
                .collect();
            Ok(json!({ "mu0": m0.to_string(), "truncation": truncation, "rows": rows }))
        }
        Command::Dilog { truncation, .. } => {
            let rep = verify_dynkin_identity(q, *truncation)?;
            let first = rep
                .first_difference
                .as_ref()
                .map(|(k, a, b)| json!({ "key": k, "left": a.to_string(), "right": b.to_string() }));
            Ok(json!({ "truncation": truncation, "terms": rep.direct.len(), "passed": rep.passed(), "first_difference": first }))
        }
        Command::Verify { fields, max_dim, .. } => {
            let mu = s.slope()?;
            let mut checks = Vec::new();
            let mut all = true;
            for &p in fields {
                let o = Oracle::new(q, p)?;
                for c in run_suite(&o, &mu, *max_dim)? {
                    all &= c.passed;
                    checks.push(json!({ "name": c.name, "passed": c.passed, "detail": c.detail }));
                }
            }
            Ok(json!({ "max_dim": max_dim, "q": fields, "checks": checks, "passed": all }))
        }
    }
}

fn field(r: &Value, k: &str) -> String {
    match r.get(k) {
        Some(Value::String(s)) => s.clone(),
        Some(Value::Null) | None => "-".to_string(),
        Some(v) => v.to_string(),
    }
}

fn render_text(name: &str, r: &Value) -> String {
    let mut out = String::new();
    let mut line = |s: String| {
        out.push_str(&s);
        out.push('\n');
    };
    match name {
        "moduli" | "grass" | "flag" => {
            for k in ["alpha", "gamma", "parts", "raw", "normalized", "coprime", "nonneg", "transfer", "passed"] {
                if r.get(k).is_some() {
                    line(format!("{k:<11}{}", field(r, k)));
                }
            }
        }
        "cluster-var" => {
            line(format!("X({}) = {}", field(r, "alpha"), field(r, "display")));
            if let Some(pairs) = r.pointer("/multiplication/pairs").and_then(Value::as_array) {
                for p in pairs {
                    let tag = if p["passed"] == json!(true) { "PASS" } else { "FAIL" };
                    line(format!("{tag} X(S_{})X(S_{})", field(p, "u"), field(p, "v")));
                }
            }
        }
        "series" => {
            let rows = r["rows"].as_array().cloned().unwrap_or_default();
            let cells: Vec<[String; 4]> = rows.iter().map(|x| [field(x, "alpha"), field(x, "r"), field(x, "a"), field(x, "m")]).collect();
            let head = ["alpha".to_string(), "r".to_string(), "a".to_string(), "m".to_string()];
            let mut w = [0usize; 4];
            for row in std::iter::once(&head).chain(&cells) {
                for (i, c) in row.iter().enumerate() {
                    w[i] = w[i].max(c.len());
                }
            }
            for row in std::iter::once(&head).chain(&cells) {
                line(format!("{:<w0$}  {:<w1$}  {:<w2$}  {}", row[0], row[1], row[2], row[3], w0 = w[0], w1 = w[1], w2 = w[2]).trim_end().to_string());
            }
        }
        "dilog" => match r.get("first_difference") {
            Some(d) if !d.is_null() => {
                line(format!("FAIL first difference at {}: {} vs {}", field(d, "key"), field(d, "left"), field(d, "right")))
            }
            _ => line(format!("PASS identity holds to degree {} ({} terms)", field(r, "truncation"), field(r, "terms"))),
        },
        "verify" => {
            let checks = r["checks"].as_array().cloned().unwrap_or_default();
            let failed = checks.iter().filter(|c| c["passed"] != json!(true)).count();
            for c in &checks {
                if c["passed"] == json!(true) {
                    line(format!("PASS {}", field(c, "name")));
                } else {
                    line(format!("FAIL {}: {}", field(c, "name"), field(c, "detail")));
                }
            }
            line(format!("{} checks, {failed} failed", checks.len()));
        }
        _ => line(r.to_string()),
    }
    out
}
