use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::Path;

use num_bigint::BigUint;
use partition_shelling::labeling::{self, lambda_labels, lex_shelling_order};
use partition_shelling::spherecount::{certificate, CountMethod, CountTable};
use partition_shelling::vecpart::build_pi;
use partition_shelling::{Budget, EdgeLabel, ElReport, PosetError, Sabotage, ShellingReport};
use serde::Serialize;

use crate::error::CliError;
use crate::{Format, Method};

fn emit(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => fs::write(p, text)?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn json<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("plain data serializes");
    text.push('\n');
    text
}

#[derive(Serialize)]
struct BuildJson<'a> {
    n: usize,
    s: usize,
    elements: &'a [String],
    covers: Vec<[usize; 2]>,
    bottom: usize,
    top: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    labels: Option<&'a [EdgeLabel]>,
}

pub fn build(
    n: usize,
    s: usize,
    budget: Budget,
    format: Format,
    with_labels: bool,
    out: Option<&Path>,
) -> Result<(), CliError> {
    let vp = build_pi(n, s, budget.max_elements)?;
    let p = vp.poset();
    let labels = if with_labels {
        Some(lambda_labels(&vp, None)?)
    } else {
        None
    };
    let text = match format {
        Format::Json => {
            let pj = p.to_json();
            json(&BuildJson {
                n,
                s,
                elements: &pj.elements,
                covers: pj.covers.clone(),
                bottom: pj.bottom,
                top: pj.top,
                labels: labels.as_deref(),
            })
        }
        Format::Dot => match &labels {
            Some(l) => p.to_dot(Some(&|id: usize| l[id].to_string())),
            None => p.to_dot(None),
        },
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let mut header = vec!["lower", "upper"];
            if labels.is_some() {
                header.extend(["k", "i", "j"]);
            }
            w.write_record(&header).map_err(csv_err)?;
            for (id, &(a, b)) in p.covers().iter().enumerate() {
                let mut row = vec![p.key(a).to_string(), p.key(b).to_string()];
                if let Some(l) = &labels {
                    let EdgeLabel { k, i, j } = &l[id];
                    row.extend([k.to_string(), i.to_string(), j.to_string()]);
                }
                w.write_record(&row).map_err(csv_err)?;
            }
            String::from_utf8(w.into_inner().map_err(|e| CliError::Io(e.into_error()))?)
                .expect("csv output is utf-8")
        }
        Format::Text => {
            let mut t = String::new();
            writeln!(
                t,
                "{} elements, {} covers, height {}",
                p.len(),
                p.covers().len(),
                p.height()
            )
            .unwrap();
            for x in 0..p.len() {
                writeln!(t, "{}\t{}", p.rank(x), p.key(x)).unwrap();
            }
            for (id, &(a, b)) in p.covers().iter().enumerate() {
                match &labels {
                    Some(l) => writeln!(t, "{} < {}\t{}", p.key(a), p.key(b), l[id]).unwrap(),
                    None => writeln!(t, "{} < {}", p.key(a), p.key(b)).unwrap(),
                }
            }
            t
        }
    };
    emit(out, &text)
}

fn csv_err(e: csv::Error) -> CliError {
    CliError::Io(std::io::Error::other(e))
}

#[derive(Serialize)]
struct VerifyJson<'a> {
    n: usize,
    s: usize,
    sabotage: Option<String>,
    el: &'a ElReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    counterexample_elements: Option<[&'a str; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    shelling: Option<&'a ShellingReport>,
}

pub fn verify_el(
    n: usize,
    s: usize,
    budget: Budget,
    sabotage: Option<Sabotage>,
    shelling: bool,
    format: Format,
    out: Option<&Path>,
) -> Result<(), CliError> {
    let vp = build_pi(n, s, budget.max_elements)?;
    let p = vp.poset();
    let labels = lambda_labels(&vp, sabotage)?;
    let report = labeling::verify_el(p, &labels)?;
    let shell_report = if shelling && p.height() >= 2 {
        let required = p.count_maximal_chains(p.bottom(), p.top())?;
        if required > BigUint::from(budget.max_chains) {
            return Err(PosetError::ResourceLimit {
                what: "chain",
                limit: budget.max_chains,
                required,
            }
            .into());
        }
        let order = lex_shelling_order(p, &labels)?;
        let positions: Vec<usize> = (0..order.facets.len()).collect();
        Some(
            order
                .complex()
                .verify_shelling(&positions)
                .map_err(|e| CliError::BadInput(e.to_string()))?,
        )
    } else {
        None
    };
    let keys = report
        .counterexample
        .as_ref()
        .map(|c| [p.key(c.lower), p.key(c.upper)]);
    let text = match format {
        Format::Json => json(&VerifyJson {
            n,
            s,
            sabotage: sabotage.map(|s| s.to_string()),
            el: &report,
            counterexample_elements: keys,
            shelling: shell_report.as_ref(),
        }),
        Format::Text => {
            let mut t = String::new();
            write!(
                t,
                "n = {n}, s = {s}: {} elements, {} covers",
                p.len(),
                p.covers().len()
            )
            .unwrap();
            if let Some(sb) = sabotage {
                write!(t, ", sabotage {sb}").unwrap();
            }
            t.push('\n');
            match (&report.counterexample, keys) {
                (Some(c), Some([lo, hi])) => {
                    writeln!(t, "EL: FAIL on [{lo}, {hi}]: {}", c.diagnosis).unwrap()
                }
                _ => writeln!(t, "EL: ok ({} intervals)", report.intervals_checked).unwrap(),
            }
            if let Some(r) = &shell_report {
                match r.failing_index {
                    Some(i) => writeln!(t, "shelling: FAIL at facet {i}").unwrap(),
                    None => writeln!(
                        t,
                        "shelling: ok, {} homology facets",
                        r.homology_facets.len()
                    )
                    .unwrap(),
                }
            }
            t
        }
        other => {
            return Err(CliError::BadInput(format!(
                "verify-el cannot write {other:?}"
            )))
        }
    };
    emit(out, &text)?;
    let shelling_ok = shell_report.as_ref().is_none_or(|r| r.valid);
    if report.ok && shelling_ok {
        Ok(())
    } else {
        Err(CliError::Verification(match report.counterexample {
            Some(c) => format!("interval ({}, {}): {}", c.lower, c.upper, c.diagnosis),
            None => "lexicographic order is not a shelling".into(),
        }))
    }
}

pub fn count(
    n: usize,
    s: usize,
    budget: Budget,
    method: Method,
    format: Format,
    out: Option<&Path>,
) -> Result<(), CliError> {
    let methods: Vec<CountMethod> = match method {
        Method::All => CountMethod::ALL.to_vec(),
        Method::Enumerate => vec![CountMethod::Enumerate],
        Method::Recursion => vec![CountMethod::Recursion],
        Method::Mobius => vec![CountMethod::Mobius],
        Method::Homology => vec![CountMethod::Homology],
        Method::Euler => vec![CountMethod::Euler],
    };
    let cert = certificate(n, s, budget, &methods)?;
    let text = match format {
        Format::Json => json(&cert),
        Format::Text => {
            let mut t = String::new();
            for (m, v) in cert.values() {
                writeln!(t, "{m}\t{v}").unwrap();
            }
            for note in &cert.notes {
                writeln!(t, "note\t{note}").unwrap();
            }
            t
        }
        other => return Err(CliError::BadInput(format!("count cannot write {other:?}"))),
    };
    emit(out, &text)?;
    if cert.agree {
        Ok(())
    } else {
        Err(CliError::Mismatch(cert.notes.join("; ")))
    }
}

pub fn sequence(s: usize, max_n: usize, out: Option<&Path>) -> Result<(), CliError> {
    if s == 0 || max_n == 0 {
        return Err(CliError::BadInput("s and max-n must be at least 1".into()));
    }
    let mut table = CountTable::new();
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header = vec!["n", "count"];
    if s == 1 {
        header.push("nonambiguous");
    }
    w.write_record(&header).map_err(csv_err)?;
    let mut mismatch = None;
    for n in 1..=max_n {
        let count = table.total(n, s);
        let mut row = vec![n.to_string(), count.to_string()];
        if s == 1 {
            let b = table.nonambiguous(n - 1);
            if b != count && mismatch.is_none() {
                mismatch = Some(format!("n = {n}: recursion {count}, b = {b}"));
            }
            row.push(b.to_string());
        }
        w.write_record(&row).map_err(csv_err)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Io(e.into_error()))?;
    emit(out, &String::from_utf8(bytes).expect("csv output is utf-8"))?;
    match mismatch {
        Some(m) => Err(CliError::Mismatch(m)),
        None => Ok(()),
    }
}
