//! Line-oriented text formats for complexes, certificates and matchings.
//!
//! Face list:
//! ```text
//! # comment
//! 1 2 3               one maximal face per line
//! @label e(x1) 2 3    named face
//! @path p(x1) 1 2, 2 3
//! ```
//! Certificate:
//! ```text
//! @start k.cplx
//! 1 -> 1 2 3
//! @target
//! 2 3
//! ```
//! Matching: `sigma -> tau` lines, then `@critical` and one face per line.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write;

use crate::collapse::{CollapseCertificate, CollapseStep};
use crate::complex::{Face, LabeledComplex, SimplicialComplex};
use crate::error::Error;
use crate::morse::MorseMatching;
use crate::Result;

fn perr(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn strip(line: &str) -> &str {
    line.split('#').next().unwrap_or("").trim()
}

fn parse_face(s: &str, line: usize) -> Result<Face> {
    let vs = s
        .split_whitespace()
        .map(|t| t.parse::<u32>().map_err(|_| perr(line, format!("bad vertex `{t}`"))))
        .collect::<Result<Vec<_>>>()?;
    Face::from_unsorted(vs).map_err(|e| perr(line, e.to_string()))
}

pub fn write_complex(k: &SimplicialComplex) -> String {
    let mut s = String::new();
    for f in k.maximal_faces() {
        writeln!(s, "{f}").unwrap();
    }
    s
}

pub fn write_labeled(lc: &LabeledComplex) -> String {
    let mut s = write_complex(&lc.complex);
    for (name, f) in &lc.face_labels {
        writeln!(s, "@label {name} {f}").unwrap();
    }
    for (name, edges) in &lc.path_labels {
        let parts: Vec<String> = edges.iter().map(Face::to_string).collect();
        writeln!(s, "@path {name} {}", parts.join(", ")).unwrap();
    }
    s
}

pub fn parse_labeled(text: &str) -> Result<LabeledComplex> {
    let mut faces = Vec::new();
    let mut labels = BTreeMap::new();
    let mut paths = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let n = i + 1;
        let line = strip(raw);
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("@label") {
            let rest = rest.trim_start();
            let (name, verts) = rest.split_once(char::is_whitespace).ok_or_else(|| perr(n, "label needs a name and a face"))?;
            labels.insert(name.to_string(), parse_face(verts, n)?);
        } else if let Some(rest) = line.strip_prefix("@path") {
            let rest = rest.trim_start();
            let (name, edges) = rest.split_once(char::is_whitespace).ok_or_else(|| perr(n, "path needs a name and edges"))?;
            let edges = edges.split(',').map(|e| parse_face(e, n)).collect::<Result<Vec<_>>>()?;
            paths.insert(name.to_string(), edges);
        } else if line.starts_with('@') {
            return Err(perr(n, format!("unknown directive `{line}`")));
        } else {
            faces.push(parse_face(line, n)?);
        }
    }
    let mut lc = LabeledComplex::new(crate::complex::close_downward(&faces));
    for (name, f) in labels {
        lc.label_face(&name, f)?;
    }
    for (name, p) in paths {
        lc.label_path(&name, p)?;
    }
    Ok(lc)
}

pub fn parse_complex(text: &str) -> Result<SimplicialComplex> {
    Ok(parse_labeled(text)?.complex)
}

pub fn write_certificate(cert: &CollapseCertificate, start: &str) -> String {
    let mut s = format!("@start {start}\n");
    for step in &cert.steps {
        writeln!(s, "{} -> {}", step.sigma, step.tau).unwrap();
    }
    s.push_str("@target\n");
    s.push_str(&write_complex(&cert.target));
    s
}

/// Returns the start-file name from the header and the certificate.
pub fn parse_certificate(text: &str) -> Result<(Option<String>, CollapseCertificate)> {
    let mut start = None;
    let mut steps = Vec::new();
    let mut target = Vec::new();
    let mut in_target = false;
    for (i, raw) in text.lines().enumerate() {
        let n = i + 1;
        let line = strip(raw);
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("@start") {
            start = Some(rest.trim().to_string());
        } else if line == "@target" {
            in_target = true;
        } else if in_target {
            target.push(parse_face(line, n)?);
        } else {
            let (a, b) = line.split_once("->").ok_or_else(|| perr(n, "expected `sigma -> tau`"))?;
            steps.push(CollapseStep::new(parse_face(a, n)?, parse_face(b, n)?));
        }
    }
    if !in_target {
        return Err(perr(0, "missing @target block"));
    }
    Ok((start, CollapseCertificate { steps, target: crate::complex::close_downward(&target) }))
}

pub fn write_matching(m: &MorseMatching) -> String {
    let mut s = String::new();
    for (a, b) in &m.pairs {
        writeln!(s, "{a} -> {b}").unwrap();
    }
    s.push_str("@critical\n");
    for f in &m.critical {
        writeln!(s, "{f}").unwrap();
    }
    s
}

pub fn parse_matching(text: &str) -> Result<MorseMatching> {
    let mut pairs = BTreeSet::new();
    let mut critical = BTreeSet::new();
    let mut in_critical = false;
    for (i, raw) in text.lines().enumerate() {
        let n = i + 1;
        let line = strip(raw);
        if line.is_empty() {
            continue;
        }
        if line == "@critical" {
            in_critical = true;
        } else if in_critical {
            critical.insert(parse_face(line, n)?);
        } else {
            let (a, b) = line.split_once("->").ok_or_else(|| perr(n, "expected `sigma -> tau`"))?;
            pairs.insert((parse_face(a, n)?, parse_face(b, n)?));
        }
    }
    Ok(MorseMatching { pairs, critical })
}
