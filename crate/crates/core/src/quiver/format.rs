//! Quiver description files.
//!
//! Text form, one key per line, `#` starts a comment:
//!
//! ```text
//! vertices: 1 2 3
//! arrows: 1->2 *4, 2->3
//! sigma: 4 -3 0
//! theta: 1 1 1
//! ```
//!
//! The same keys are accepted as a JSON object, with `vertices` a list of names
//! (strings or integers), `arrows` a list of `"1->2 *4"` strings or
//! `{"tail": .., "head": .., "mult": ..}` objects, and optional integer lists
//! `sigma` and `theta`.

use serde_json::Value;

use super::{Quiver, Weight};
use crate::error::{Error, Result};

/// A parsed quiver file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuiverFile {
    pub quiver: Quiver,
    pub sigma: Option<Weight>,
    pub theta: Option<Weight>,
}

fn perr<T>(line: usize, msg: impl Into<String>) -> Result<T> {
    Err(Error::Parse { pos: line, msg: msg.into() })
}

fn parse_arrow(names: &[String], spec: &str, line: usize, out: &mut Vec<(usize, usize)>) -> Result<()> {
    let (edge, mult) = match spec.split_once('*') {
        Some((e, m)) => match m.trim().parse::<usize>() {
            Ok(k) => (e.trim(), k),
            Err(_) => return perr(line, format!("bad multiplicity in '{spec}'")),
        },
        None => (spec.trim(), 1),
    };
    let Some((t, h)) = edge.split_once("->") else {
        return perr(line, format!("expected 'tail->head', got '{spec}'"));
    };
    let idx = |s: &str| names.iter().position(|n| n == s.trim());
    match (idx(t), idx(h)) {
        (Some(t), Some(h)) => {
            out.extend(std::iter::repeat_n((t, h), mult));
            Ok(())
        }
        _ => perr(line, format!("unknown vertex in '{spec}'")),
    }
}

fn parse_weight(s: &str, line: usize) -> Result<Weight> {
    s.split_whitespace()
        .map(|t| t.parse::<i64>().or_else(|_| perr(line, format!("bad integer '{t}'"))))
        .collect::<Result<Vec<_>>>()
        .map(Weight)
}

fn finish(names: Vec<String>, arrows: Vec<(usize, usize)>, sigma: Option<Weight>, theta: Option<Weight>) -> Result<QuiverFile> {
    let n = names.len();
    for w in [&sigma, &theta].into_iter().flatten() {
        if w.0.len() != n {
            return Err(Error::DimensionMismatch(format!("weight of length {} for {n} vertices", w.0.len())));
        }
    }
    Ok(QuiverFile { quiver: Quiver::with_names(names, arrows)?, sigma, theta })
}

fn parse_text(src: &str) -> Result<QuiverFile> {
    let mut names: Option<Vec<String>> = None;
    let mut arrow_specs: Vec<(usize, String)> = Vec::new();
    let (mut sigma, mut theta) = (None, None);
    for (i, raw) in src.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap().trim();
        if content.is_empty() {
            continue;
        }
        let Some((key, rest)) = content.split_once(':') else {
            return perr(line, "expected 'key: value'");
        };
        match key.trim() {
            "vertices" => names = Some(rest.split_whitespace().map(str::to_string).collect()),
            "arrows" => arrow_specs.extend(rest.split(',').filter(|s| !s.trim().is_empty()).map(|s| (line, s.to_string()))),
            "sigma" => sigma = Some(parse_weight(rest, line)?),
            "theta" => theta = Some(parse_weight(rest, line)?),
            other => return perr(line, format!("unknown key '{other}'")),
        }
    }
    let Some(names) = names else {
        return perr(0, "missing 'vertices' line");
    };
    let mut arrows = Vec::new();
    for (line, s) in &arrow_specs {
        parse_arrow(&names, s, *line, &mut arrows)?;
    }
    finish(names, arrows, sigma, theta)
}

fn parse_json(src: &str) -> Result<QuiverFile> {
    let v: Value = serde_json::from_str(src).or_else(|e| perr(e.line(), e.to_string()))?;
    let name_of = |x: &Value| match x {
        Value::String(s) => Some(s.clone()),
        Value::Number(n) => Some(n.to_string()),
        _ => None,
    };
    let names: Vec<String> = match v.get("vertices") {
        Some(Value::Array(xs)) => xs.iter().map(name_of).collect::<Option<_>>().ok_or_else(|| Error::Parse { pos: 0, msg: "bad vertex name".into() })?,
        _ => return perr(0, "missing 'vertices' array"),
    };
    let mut arrows = Vec::new();
    if let Some(Value::Array(xs)) = v.get("arrows") {
        for x in xs {
            match x {
                Value::String(s) => parse_arrow(&names, s, 0, &mut arrows)?,
                Value::Object(o) => {
                    let (Some(t), Some(h)) = (o.get("tail").and_then(name_of), o.get("head").and_then(name_of)) else {
                        return perr(0, "arrow objects need 'tail' and 'head'");
                    };
                    let m = o.get("mult").and_then(Value::as_u64).unwrap_or(1);
                    parse_arrow(&names, &format!("{t}->{h} *{m}"), 0, &mut arrows)?;
                }
                _ => return perr(0, "bad arrow entry"),
            }
        }
    }
    let weight = |key: &str| -> Result<Option<Weight>> {
        match v.get(key) {
            None | Some(Value::Null) => Ok(None),
            Some(Value::Array(xs)) => xs
                .iter()
                .map(|x| x.as_i64().ok_or_else(|| Error::Parse { pos: 0, msg: format!("bad entry in '{key}'") }))
                .collect::<Result<Vec<_>>>()
                .map(|w| Some(Weight(w))),
            _ => perr(0, format!("'{key}' must be an integer array")),
        }
    };
    finish(names, arrows, weight("sigma")?, weight("theta")?)
}

/// Parse a quiver description in text or JSON form.
pub fn parse_quiver_file(src: &str) -> Result<QuiverFile> {
    if src.trim_start().starts_with('{') {
        parse_json(src)
    } else {
        parse_text(src)
    }
}

impl QuiverFile {
    /// Canonical text rendering; parses back to the same value.
    pub fn to_text(&self) -> String {
        let q = &self.quiver;
        let mut s = format!("vertices: {}\n", q.names().join(" "));
        let mut groups: Vec<((usize, usize), usize)> = Vec::new();
        for &a in q.arrows() {
            match groups.last_mut() {
                Some((b, k)) if *b == a => *k += 1,
                _ => groups.push((a, 1)),
            }
        }
        let arrows: Vec<String> = groups
            .iter()
            .map(|&((t, h), k)| {
                let base = format!("{}->{}", q.names()[t], q.names()[h]);
                if k == 1 { base } else { format!("{base} *{k}") }
            })
            .collect();
        s += &format!("arrows: {}\n", arrows.join(", "));
        let join = |w: &Weight| w.0.iter().map(i64::to_string).collect::<Vec<_>>().join(" ");
        if let Some(w) = &self.sigma {
            s += &format!("sigma: {}\n", join(w));
        }
        if let Some(w) = &self.theta {
            s += &format!("theta: {}\n", join(w));
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_format() {
        let f = parse_quiver_file("# four arrows\nvertices: 1 2 3\narrows: 1->2 *4, 2->3\nsigma: 4 -3 0\n").unwrap();
        assert_eq!(f.quiver.arrows().len(), 5);
        assert_eq!(f.quiver.arrow_count(0, 1), 4);
        assert_eq!(f.sigma, Some(Weight(vec![4, -3, 0])));
        assert_eq!(f.theta, None);
        assert_eq!(parse_quiver_file(&f.to_text()).unwrap(), f);
    }

    #[test]
    fn json_format() {
        let f = parse_quiver_file(r#"{"vertices": [1, 2], "arrows": ["1->2 *2", {"tail": 2, "head": 1}], "theta": [1, 2]}"#).unwrap();
        assert_eq!(f.quiver.arrows(), &[(0, 1), (0, 1), (1, 0)]);
        assert_eq!(f.theta, Some(Weight(vec![1, 2])));
        assert!(!f.quiver.is_acyclic());
    }

    #[test]
    fn errors() {
        assert!(parse_quiver_file("vertices: 1 2\narrows: 1->3\n").is_err());
        assert!(parse_quiver_file("arrows: 1->2\n").is_err());
        assert!(parse_quiver_file("vertices: 1 2\nsigma: 1\n").is_err());
        assert!(parse_quiver_file("vertices: 1 2\nfoo: 1\n").is_err());
        assert!(parse_quiver_file("vertices: 1 1\n").is_err());
    }
}
