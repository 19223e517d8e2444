use std::fmt::{self, Write as _};
use std::path::{Path, PathBuf};

use posetdim::dimension::peel_identity;
use posetdim::ff::{self, dimension_conflicts, format_rational, CountConfig};
use posetdim::format::{dot_export, parse_poset_file, PosetFile};
use posetdim::forms::tits_argument;
use posetdim::{
    admissibility, euler_form, frobenius_factors, generic_sum_dim, incidence_inverse,
    incidence_matrix, iteration_sequence, mobius_matrix, summand_scan as scan, tits_form,
    tits_matrix, variety_dim, variety_dim_recursive_with, DimVector, Error, IntMatrix, PeelOrder,
    Poset, ScanVerdict,
};
use serde_json::{json, Map, Value};

const FIT_NOTE: &str =
    "experimental: counts are assumed polynomial in q, so CONSISTENT is evidence rather than proof";

#[derive(Debug)]
pub enum CliError {
    Core(Error),
    Io { path: PathBuf, message: String },
    Input(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io { path, message } => {
                write!(f, "cannot read {}: {message}", path.display())
            }
            CliError::Input(m) => f.write_str(m),
        }
    }
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(e) => match e {
                Error::NotAdmissible(_)
                | Error::HypothesisViolated(_)
                | Error::NotMaximal(_)
                | Error::InvalidDimensions { .. }
                | Error::EmptyVariety => 2,
                Error::Overflow => 3,
                Error::SearchSpaceTooLarge { .. } | Error::BudgetExceeded { .. } => 4,
                Error::InternalInconsistency(_) => 5,
                _ => 1,
            },
            CliError::Io { .. } | CliError::Input(_) => 1,
        }
    }

    pub fn json_text(&self) -> String {
        let mut err = Map::new();
        err.insert("exit_code".into(), json!(self.exit_code()));
        err.insert("message".into(), json!(self.to_string()));
        if let CliError::Core(Error::NotAdmissible(v)) = self {
            err.insert("certificate".into(), json!(v.to_string()));
        }
        pretty(&json!({ "error": err }))
    }
}

type Result<T> = std::result::Result<T, CliError>;

/// Rendered result of one command.
pub struct Output {
    pub text: String,
    pub json: Value,
    pub warnings: Vec<String>,
}

impl Output {
    fn new(text: String, json: Value) -> Self {
        Output {
            text,
            json,
            warnings: Vec::new(),
        }
    }

    pub fn json_text(&self) -> String {
        pretty(&self.json)
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

/// A poset file together with the selected dimension vector.
pub struct Work {
    pub file: PosetFile,
    pub name: String,
    pub alpha: DimVector,
}

impl Work {
    fn poset(&self) -> &Poset {
        &self.file.poset
    }
}

pub fn load(path: &Path) -> Result<PosetFile> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io {
        path: path.to_path_buf(),
        message: e.to_string(),
    })?;
    Ok(parse_poset_file(&text)?)
}

pub fn select<'a>(file: &'a PosetFile, name: Option<&str>) -> Result<&'a DimVector> {
    match name {
        Some(n) => file
            .vector(n)
            .ok_or_else(|| CliError::Input(format!("no dimension vector named `{n}`"))),
        None => file
            .vectors
            .first()
            .map(|(_, v)| v)
            .ok_or_else(|| CliError::Input("the file has no `dim` line".into())),
    }
}

pub fn load_with(path: &Path, name: Option<&str>) -> Result<Work> {
    let file = load(path)?;
    let alpha = select(&file, name)?.clone();
    let name = match name {
        Some(n) => n.to_string(),
        None => file.vectors[0].0.clone(),
    };
    Ok(Work { file, name, alpha })
}

fn labels(p: &Poset, elements: &[usize]) -> Vec<String> {
    elements.iter().map(|&s| p.label(s).to_string()).collect()
}

fn by_label(p: &Poset, values: &[i64]) -> Value {
    let map: Map<String, Value> = (0..p.len())
        .map(|s| (p.label(s).to_string(), json!(values[s])))
        .collect();
    Value::Object(map)
}

fn labelled(p: &Poset, values: &[i64]) -> String {
    let parts: Vec<String> = (0..p.len())
        .map(|s| format!("{}:{}", p.label(s), values[s]))
        .collect();
    parts.join(" ")
}

fn vector_json(p: &Poset, v: &DimVector) -> Value {
    json!({ "alpha0": v.alpha0, "alpha": by_label(p, &v.alpha) })
}

pub fn validate(file: &PosetFile) -> Result<Output> {
    let p = &file.poset;
    let covers = p.hasse_covers();
    let names: Vec<&str> = file.vectors.iter().map(|(n, _)| n.as_str()).collect();
    let mut text = format!(
        "{} elements, height {}, {} relations, {} covers\n",
        p.len(),
        p.height(),
        p.relations().len(),
        covers.len()
    );
    if !names.is_empty() {
        writeln!(text, "vectors: {}", names.join(" ")).unwrap();
    }
    let json = json!({
        "elements": labels(p, &(0..p.len()).collect::<Vec<_>>()),
        "height": p.height(),
        "relations": p.relations().len(),
        "covers": covers.iter().map(|&(s, t)| [p.label(s), p.label(t)]).collect::<Vec<_>>(),
        "vectors": names,
    });
    Ok(Output::new(text, json))
}

pub fn levels(file: &PosetFile) -> Result<Output> {
    let p = &file.poset;
    let h = p.height();
    let mut text = String::new();
    let mut parts = Vec::new();
    for (i, part) in p.level_partition().iter().enumerate() {
        let level = h - i;
        let names = labels(p, part);
        writeln!(text, "T{level}: {}", names.join(" ")).unwrap();
        parts.push(json!({ "level": level, "elements": names }));
    }
    Ok(Output::new(text, json!({ "height": h, "levels": parts })))
}

fn matrix_output(p: &Poset, m: &IntMatrix) -> Output {
    let json = json!({
        "order": labels(p, p.level_order()),
        "matrix": m.to_rows(),
    });
    Output::new(m.to_string(), json)
}

pub fn incidence(file: &PosetFile) -> Result<Output> {
    Ok(matrix_output(&file.poset, &incidence_matrix(&file.poset)))
}

pub fn inverse(file: &PosetFile) -> Result<Output> {
    Ok(matrix_output(&file.poset, &incidence_inverse(&file.poset)?))
}

pub fn mobius(file: &PosetFile) -> Result<Output> {
    Ok(matrix_output(&file.poset, &mobius_matrix(&file.poset)?))
}

pub fn factors(file: &PosetFile) -> Result<Output> {
    let p = &file.poset;
    let mut text = String::new();
    let mut list = Vec::new();
    for f in frobenius_factors(p) {
        if !text.is_empty() {
            text.push('\n');
        }
        write!(
            text,
            "F{0}\n{1}\nF{0}^-1\n{2}",
            f.level, f.factor, f.inverse
        )
        .unwrap();
        list.push(json!({
            "level": f.level,
            "factor": f.factor.to_rows(),
            "inverse": f.inverse.to_rows(),
        }));
    }
    if list.is_empty() {
        text.push_str("no factors: height is at most 1\n");
    }
    let json = json!({ "order": labels(p, p.level_order()), "factors": list });
    Ok(Output::new(text, json))
}

/// `Q`, `c` and cone membership of the selected vector.
fn forms_report(w: &Work) -> Result<(Value, i64, posetdim::Admissibility)> {
    let p = w.poset();
    let q = euler_form(p, &w.alpha)?;
    let adm = admissibility(p, &w.alpha)?;
    let json = json!({
        "vector": w.name,
        "alpha0": w.alpha.alpha0,
        "alpha": by_label(p, &w.alpha.alpha),
        "Q": q,
        "c": by_label(p, &adm.coords.c),
        "admissible": adm.is_admissible(),
        "violations": adm.violations.iter().map(ToString::to_string).collect::<Vec<_>>(),
    });
    Ok((json, q, adm))
}

pub fn euler(w: &Work) -> Result<Output> {
    let (json, q, _) = forms_report(w)?;
    Ok(Output::new(format!("Q = {q}\n"), json))
}

pub fn coordinate(w: &Work) -> Result<Output> {
    let (json, _, adm) = forms_report(w)?;
    Ok(Output::new(
        format!("c = {}\n", labelled(w.poset(), &adm.coords.c)),
        json,
    ))
}

pub fn admissible(w: &Work) -> Result<Output> {
    let (json, _, adm) = forms_report(w)?;
    let mut text = String::from(if adm.is_admissible() {
        "admissible\n"
    } else {
        "not admissible\n"
    });
    for v in &adm.violations {
        writeln!(text, "  {v}").unwrap();
    }
    Ok(Output::new(text, json))
}

pub fn tits(w: &Work, raw: bool) -> Result<Output> {
    let p = w.poset();
    let beta = if raw {
        w.alpha.clone()
    } else {
        tits_argument(p, &w.alpha)?
    };
    let m = tits_matrix(p);
    let value = tits_form(p, &beta)?;
    let mut order = vec!["0".to_string()];
    order.extend(labels(p, p.level_order()));
    let text = format!("{m}\nQ^{beta} = {value}\n");
    let json = json!({
        "order": order,
        "matrix": m.to_rows(),
        "beta0": beta.alpha0,
        "beta": by_label(p, &beta.alpha),
        "value": value,
    });
    Ok(Output::new(text, json))
}

pub fn iterate(w: &Work) -> Result<Output> {
    let p = w.poset();
    let trace = iteration_sequence(p, &w.alpha)?;
    let order = labels(p, p.level_order());
    let mut text = format!("order: {}\n", order.join(" "));
    for (k, v) in trace.vectors.iter().enumerate() {
        let row: Vec<String> = v.iter().map(i64::to_string).collect();
        writeln!(text, "alpha({}) = {}", k + 1, row.join(" ")).unwrap();
    }
    let json = json!({ "order": order, "iterates": trace.vectors });
    Ok(Output::new(text, json))
}

pub fn dim(w: &Work, recursive: Option<PeelOrder>, trace: bool) -> Result<Output> {
    let p = w.poset();
    let report = match recursive {
        Some(order) => variety_dim_recursive_with(p, &w.alpha, order)?,
        None => variety_dim(p, &w.alpha)?,
    };
    let mut text = String::new();
    let mut json = Map::new();
    if trace {
        let steps = report.trace.as_deref().unwrap_or_default();
        for s in steps {
            writeln!(
                text,
                "peel {}: X = {}, fiber Gr({}, {}) of dim {}, rest {}",
                s.x, s.sum_dim, s.fiber[0], s.fiber[1], s.fiber_dim, s.rest_dim
            )
            .unwrap();
        }
        json.insert(
            "steps".into(),
            serde_json::to_value(steps).expect("steps serialize"),
        );
    }
    writeln!(
        text,
        "dim R = {}, Q = {}, dim GL = {}",
        report.dim_variety, report.q_value, report.gl_dim
    )
    .unwrap();
    json.insert("dim".into(), json!(report.dim_variety));
    json.insert("Q".into(), json!(report.q_value));
    json.insert("gl_dim".into(), json!(report.gl_dim));
    json.insert(
        "method".into(),
        serde_json::to_value(report.method).expect("method serializes"),
    );
    Ok(Output::new(text, Value::Object(json)))
}

pub fn sum_dim(w: &Work, below: Option<&str>, q: Option<u64>) -> Result<Output> {
    let p = w.poset();
    let (sub, alpha) = match below {
        Some(label) => {
            let x = p.index_of(label)?;
            let sub = p.induced_subposet(&p.down_set(x));
            let alpha = w.alpha.restrict(p, &sub)?;
            (sub, alpha)
        }
        None => (p.clone(), w.alpha.clone()),
    };
    let value = match q {
        Some(q) => ff::max_sum_dim_empirical(&sub, &alpha, q, CountConfig::default())?,
        None => generic_sum_dim(&sub, &alpha)?,
    };
    let json = json!({
        "X": value,
        "method": if q.is_some() { "empirical" } else { "generic" },
        "q": q,
        "below": below,
    });
    Ok(Output::new(format!("X = {value}\n"), json))
}

pub fn peel_check(w: &Work, x: &str) -> Result<Output> {
    let p = w.poset();
    let id = peel_identity(p, p.index_of(x)?, &w.alpha)?;
    let defect = id.defect()?;
    let text = format!(
        "x = {x}: lhs = {}, rhs = {}, defect = {defect}\n",
        id.lhs, id.rhs
    );
    let json = json!({ "x": x, "lhs": id.lhs, "rhs": id.rhs, "defect": defect });
    Ok(Output::new(text, json))
}

pub fn summand_scan(w: &Work, budget: u128) -> Result<Output> {
    let p = w.poset();
    let (text, json) = match scan(p, &w.alpha, budget)? {
        ScanVerdict::Pass { checked } => (
            format!(
                "PASS: Q >= 1 on {checked} vector{}\n",
                if checked == 1 { "" } else { "s" }
            ),
            json!({ "verdict": "PASS", "checked": checked, "witness": null, "Q": null }),
        ),
        ScanVerdict::Fail { witness, q } => (
            format!("FAIL: Q = {q} at {witness}\n"),
            json!({ "verdict": "FAIL", "checked": null, "witness": vector_json(p, &witness), "Q": q }),
        ),
    };
    Ok(Output::new(text, json))
}

pub fn count(w: &Work, q: u64) -> Result<Output> {
    let p = w.poset();
    let n = ff::count_points(p, &w.alpha, q)?;
    let warnings = dimension_conflicts(p, &w.alpha);
    let json = json!({ "q": q, "count": n, "warnings": warnings });
    Ok(Output {
        text: format!("{n}\n"),
        json,
        warnings,
    })
}

pub fn fit_dim(w: &Work, primes: &[u64], claimed: Option<usize>) -> Result<Output> {
    let p = w.poset();
    let d = match claimed {
        Some(d) => d,
        None => {
            let q = euler_form(p, &w.alpha)?;
            let expected = w
                .alpha
                .alpha0
                .checked_mul(w.alpha.alpha0)
                .and_then(|g| g.checked_sub(q))
                .ok_or(Error::Overflow)?;
            usize::try_from(expected).map_err(|_| {
                Error::HypothesisViolated(format!(
                    "alpha0^2 - Q = {expected} is negative; pass --claimed"
                ))
            })?
        }
    };
    let r = ff::fit_dimension(p, &w.alpha, primes, d, CountConfig::default())?;
    let counts: Map<String, Value> = r
        .counts
        .iter()
        .map(|&(q, c)| (q.to_string(), json!(c)))
        .collect();
    let poly: Vec<String> = r.poly.iter().map(format_rational).collect();
    let residuals: Map<String, Value> = r
        .residuals
        .iter()
        .map(|(q, v)| (q.to_string(), json!(format_rational(v))))
        .collect();
    let verdict = serde_json::to_value(r.verdict).expect("verdict serializes");
    let mut text = format!(
        "{} (claimed dim {}, fitted degree {})\n",
        verdict.as_str().unwrap_or_default(),
        d,
        r.degree.map_or("none".to_string(), |g| g.to_string())
    );
    let shown: Vec<String> = r.counts.iter().map(|(q, c)| format!("{q}:{c}")).collect();
    writeln!(text, "counts: {}", shown.join(" ")).unwrap();
    writeln!(text, "poly: {}", poly.join(" ")).unwrap();
    for (q, v) in &r.residuals {
        if format_rational(v) != "0" {
            writeln!(text, "residual at {q}: {}", format_rational(v)).unwrap();
        }
    }
    writeln!(text, "note: {FIT_NOTE}").unwrap();
    let json = json!({
        "counts": counts,
        "poly": poly,
        "degree": r.degree,
        "residuals": residuals,
        "verdict": verdict,
        "claimed_dim": d,
        "note": FIT_NOTE,
    });
    Ok(Output::new(text, json))
}

pub fn dot(file: &PosetFile, alpha: Option<&DimVector>) -> Result<Output> {
    let text = dot_export(&file.poset, alpha);
    let json = json!({ "dot": text });
    Ok(Output::new(text, json))
}
