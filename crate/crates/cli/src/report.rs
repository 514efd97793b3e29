//! Structured command output and its text and JSON renderings.
//!
//! Both renderings walk the same ordered tree, so field order is fixed by
//! the command that built the report and identical inputs give identical
//! bytes. Nothing time- or machine-dependent is recorded.

use dweb::symweb::SymForm;
use dweb::QPoly;
use num_complex::Complex64;
use serde_json::{json, Map, Number, Value as Json};

/// Version tag written as the top-level `schema` key.
pub const SCHEMA: &str = "dweb.report/1";

/// The fixed exponent slots of a term array.
const SLOTS: [&str; 4] = ["x", "y", "dx", "dy"];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exit {
    /// Success or a positive verdict.
    Ok = 0,
    /// A negative verdict or a failed property.
    Negative = 1,
    /// Unreadable input.
    Input = 2,
    /// The elimination budget ran out.
    Budget = 3,
}

impl Exit {
    pub fn code(self) -> i32 {
        self as i32
    }
}

#[derive(Clone, Debug)]
pub enum Value {
    Poly(QPoly),
    Form(SymForm),
    Text(String),
    Real(f64),
    Complex(Complex64),
    Int(i64),
    Bool(bool),
    List(Vec<Value>),
    Record(Vec<(String, Value)>),
}

impl Value {
    pub fn record<K: Into<String>>(fields: impl IntoIterator<Item = (K, Value)>) -> Value {
        Value::Record(fields.into_iter().map(|(k, v)| (k.into(), v)).collect())
    }

    pub fn text(s: impl Into<String>) -> Value {
        Value::Text(s.into())
    }
}

#[derive(Clone, Debug)]
pub struct Report {
    /// The command line, echoed.
    pub command: String,
    pub fields: Vec<(String, Value)>,
    pub verdict: Option<String>,
    pub exit: Exit,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Self {
        Report {
            command: command.into(),
            fields: Vec::new(),
            verdict: None,
            exit: Exit::Ok,
        }
    }

    pub fn push(&mut self, key: &str, value: Value) {
        self.fields.push((key.to_string(), value));
    }

    pub fn get(&self, key: &str) -> Option<&Value> {
        self.fields.iter().find(|(k, _)| k == key).map(|(_, v)| v)
    }

    pub fn verdict(mut self, text: impl Into<String>, exit: Exit) -> Self {
        self.verdict = Some(text.into());
        self.exit = exit;
        self
    }
}

/// Renders a report as text or as a single JSON document.
pub fn emit(report: &Report, json: bool) -> String {
    if json {
        let mut out = serde_json::to_string(&to_json(report)).expect("serializable");
        out.push('\n');
        out
    } else {
        to_text(report)
    }
}

/// Shortest readable rendering of a double: plain notation for moderate
/// magnitudes, scientific otherwise.
pub fn fmt_real(v: f64) -> String {
    if v == 0.0 {
        return "0".to_string();
    }
    if !v.is_finite() {
        return v.to_string();
    }
    let a = v.abs();
    if (1e-4..1e7).contains(&a) {
        let s = format!("{v:.10}");
        let s = s.trim_end_matches('0').trim_end_matches('.');
        if s == "-0" {
            "0".to_string()
        } else {
            s.to_string()
        }
    } else {
        format!("{v:.6e}")
    }
}

pub fn fmt_complex(z: Complex64) -> String {
    if z.im == 0.0 {
        return fmt_real(z.re);
    }
    let im = fmt_real(z.im.abs());
    if z.re == 0.0 {
        let sign = if z.im < 0.0 { "-" } else { "" };
        return format!("{sign}{im}i");
    }
    let sign = if z.im < 0.0 { '-' } else { '+' };
    format!("{} {sign} {im}i", fmt_real(z.re))
}

fn to_text(r: &Report) -> String {
    let mut out = format!("command: {}\n", r.command);
    for (k, v) in &r.fields {
        text_field(&mut out, 0, k, v);
    }
    if let Some(v) = &r.verdict {
        out.push_str(&format!("verdict: {v}\n"));
    }
    out
}

fn scalar_text(v: &Value) -> Option<String> {
    Some(match v {
        Value::Poly(p) => p.to_string(),
        Value::Form(w) => w.to_string(),
        Value::Text(s) => s.clone(),
        Value::Real(x) => fmt_real(*x),
        Value::Complex(z) => fmt_complex(*z),
        Value::Int(n) => n.to_string(),
        Value::Bool(b) => b.to_string(),
        Value::List(items) if items.is_empty() => "(none)".to_string(),
        Value::List(_) | Value::Record(_) => return None,
    })
}

fn text_field(out: &mut String, indent: usize, key: &str, v: &Value) {
    let pad = "  ".repeat(indent);
    if let Some(s) = scalar_text(v) {
        out.push_str(&format!("{pad}{key}: {s}\n"));
        return;
    }
    out.push_str(&format!("{pad}{key}:\n"));
    match v {
        Value::List(items) => {
            for item in items {
                text_item(out, indent + 1, item);
            }
        }
        Value::Record(fields) => {
            for (k, v) in fields {
                text_field(out, indent + 1, k, v);
            }
        }
        _ => unreachable!("scalars handled above"),
    }
}

fn text_item(out: &mut String, indent: usize, v: &Value) {
    let pad = "  ".repeat(indent);
    if let Some(s) = scalar_text(v) {
        out.push_str(&format!("{pad}- {s}\n"));
        return;
    }
    match v {
        Value::Record(fields) => {
            // First field on the dash line, the rest aligned under it.
            let mut first = true;
            for (k, v) in fields {
                let mut chunk = String::new();
                text_field(&mut chunk, indent + 1, k, v);
                if first {
                    let inner = "  ".repeat(indent + 1);
                    out.push_str(&format!("{pad}- {}", &chunk[inner.len()..]));
                    first = false;
                } else {
                    out.push_str(&chunk);
                }
            }
        }
        Value::List(items) => {
            out.push_str(&format!("{pad}-\n"));
            for item in items {
                text_item(out, indent + 1, item);
            }
        }
        _ => unreachable!("scalars handled above"),
    }
}

fn to_json(r: &Report) -> Json {
    let mut m = Map::new();
    m.insert("schema".into(), json!(SCHEMA));
    m.insert("command".into(), json!(r.command));
    let mut result = Map::new();
    for (k, v) in &r.fields {
        result.insert(k.clone(), value_json(v));
    }
    m.insert("result".into(), Json::Object(result));
    m.insert(
        "verdict".into(),
        r.verdict.as_ref().map_or(Json::Null, |v| json!(v)),
    );
    m.insert("exit_code".into(), json!(r.exit.code()));
    Json::Object(m)
}

fn real_json(v: f64) -> Json {
    Number::from_f64(v).map_or(Json::Null, Json::Number)
}

fn value_json(v: &Value) -> Json {
    match v {
        Value::Poly(p) => poly_json(p),
        Value::Form(w) => {
            let mut m = match poly_json(&w.to_poly()) {
                Json::Object(m) => m,
                _ => unreachable!("polynomials are objects"),
            };
            m.insert("display".into(), json!(w.to_string()));
            m.insert("degree".into(), json!(w.degree()));
            Json::Object(m)
        }
        Value::Text(s) => json!(s),
        Value::Real(x) => real_json(*x),
        Value::Complex(z) => json!({ "re": real_json(z.re), "im": real_json(z.im) }),
        Value::Int(n) => json!(n),
        Value::Bool(b) => json!(b),
        Value::List(items) => Json::Array(items.iter().map(value_json).collect()),
        Value::Record(fields) => Json::Object(
            fields
                .iter()
                .map(|(k, v)| (k.clone(), value_json(v)))
                .collect(),
        ),
    }
}

fn big(n: &num_bigint::BigInt) -> Json {
    Json::Number(n.to_string().parse().expect("integer literal"))
}

/// `{"display": .., "terms": [[[ex, ey, edx, edy], num, den], ..]}` with
/// terms in descending graded-lex order. Polynomials in other variables
/// also carry a `vars` list giving the exponent slots.
pub fn poly_json(p: &QPoly) -> Json {
    let vars: Vec<String> = p.vars().iter().cloned().collect();
    let standard = vars.iter().all(|v| SLOTS.contains(&v.as_str()));
    let slots: Vec<String> = if standard {
        SLOTS.iter().map(|s| s.to_string()).collect()
    } else {
        vars.clone()
    };
    let terms: Vec<Json> = p
        .terms()
        .rev()
        .map(|(m, c)| {
            let e = m.exponents();
            let exps: Vec<u32> = slots
                .iter()
                .map(|s| vars.iter().position(|v| v == s).map_or(0, |i| e[i]))
                .collect();
            json!([exps, big(c.numer()), big(c.denom())])
        })
        .collect();
    let mut m = Map::new();
    m.insert("display".into(), json!(p.to_string()));
    if !standard {
        m.insert("vars".into(), json!(slots));
    }
    m.insert("terms".into(), Json::Array(terms));
    Json::Object(m)
}

/// Reads a polynomial back from its term array.
pub fn poly_from_json(v: &Json) -> Option<QPoly> {
    let slots: Vec<String> = match v.get("vars") {
        Some(vars) => vars
            .as_array()?
            .iter()
            .map(|s| s.as_str().map(str::to_string))
            .collect::<Option<_>>()?,
        None => SLOTS.iter().map(|s| s.to_string()).collect(),
    };
    let mut terms = Vec::new();
    for t in v.get("terms")?.as_array()? {
        let t = t.as_array()?;
        let exps: Vec<u32> = t
            .first()?
            .as_array()?
            .iter()
            .map(|e| e.as_u64().map(|e| e as u32))
            .collect::<Option<_>>()?;
        let num: num_bigint::BigInt = t.get(1)?.to_string().parse().ok()?;
        let den: num_bigint::BigInt = t.get(2)?.to_string().parse().ok()?;
        terms.push((exps, dweb::Rational::new(num, den)));
    }
    Some(QPoly::from_terms(&slots, terms))
}
