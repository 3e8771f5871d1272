use std::fs;
use std::ops::ControlFlow;
use std::path::Path;

use anyhow::Context;
use schur_rainbow::analysis::{
    evaluate, interval_lemma_suite, lemma_ids, lemma_statement, Analysis, LemmaVerdict, StructureReport, YMode,
};
use schur_rainbow::constructions::{lower_bound_coloring, valuation_coloring};
use schur_rainbow::search::{enumerate_rainbow_free, exists_rainbow_free, verify_certificate};
use schur_rainbow::{Certificate, Coloring, GridDims, SearchError, SolutionIndex, Space};

use crate::{usage, BudgetArgs, Status, Which};

const INTERVAL_LEMMAS: [&str; 2] = ["doubling-gaps", "power-bound"];

fn write_cert(path: &Path, cert: &Certificate) -> anyhow::Result<()> {
    fs::write(path, cert.to_json() + "\n").with_context(|| format!("writing {}", path.display()))
}

fn emit(cert: &Certificate, json: bool, out: Option<&Path>) -> anyhow::Result<()> {
    if json {
        println!("{}", cert.to_json());
    } else if let Some(c) = &cert.coloring {
        print!("{}", c.render());
    }
    if let Some(path) = out {
        write_cert(path, cert)?;
        if !json {
            println!("wrote {}", path.display());
        }
    }
    Ok(())
}

pub fn witness(
    m: usize,
    n: usize,
    colors: usize,
    budget: &BudgetArgs,
    json: bool,
    out: Option<&Path>,
) -> anyhow::Result<Status> {
    let dims = GridDims::new(m, n).map_err(|e| usage(e.to_string()))?;
    match exists_rainbow_free(dims, colors, &budget.budget()?) {
        Ok(cert) if cert.is_witness() => {
            emit(&cert, json, out)?;
            Ok(Status::Ok)
        }
        Ok(cert) => {
            if json {
                println!("{}", cert.to_json());
            } else {
                println!("none (exhaustion)");
            }
            if let Some(path) = out {
                write_cert(path, &cert)?;
            }
            Ok(Status::Ok)
        }
        Err(e @ SearchError::ColorCount { .. }) => Err(usage(e.to_string())),
        Err(SearchError::Indeterminate { nodes, .. }) => {
            println!("undetermined (budget exhausted after {nodes} nodes)");
            Ok(Status::Indeterminate)
        }
        Err(e) => Err(e.into()),
    }
}

pub fn construct(m: Option<usize>, n: usize, which: Which, json: bool, out: Option<&Path>) -> anyhow::Result<Status> {
    let (space, coloring) = match which {
        Which::Lower => {
            let m = m.ok_or_else(|| usage("--which lower needs --m"))?;
            let dims = GridDims::new(m, n).map_err(|e| usage(e.to_string()))?;
            (
                Space::Grid(dims),
                lower_bound_coloring(dims).map_err(|e| usage(e.to_string()))?,
            )
        }
        Which::Valuation => {
            if m.is_some_and(|m| m != 1) {
                return Err(usage("--which valuation colors the interval [n]; drop --m"));
            }
            if n == 0 {
                return Err(usage("--n must be positive"));
            }
            (
                Space::Interval(n),
                valuation_coloring(n).map_err(|e| usage(e.to_string()))?,
            )
        }
    };
    let cert = Certificate::witness(space, coloring, 0);
    if let Err(e) = cert.check_witness() {
        eprintln!("FALSIFICATION: construction for {space} failed its check: {e}");
        return Ok(Status::Mismatch);
    }
    emit(&cert, json, out)?;
    if !json {
        println!("rainbow-free exact {}-coloring of {space}: verified", cert.r);
    }
    Ok(Status::Ok)
}

/// Byte offset of the first difference, with a short excerpt of each side.
fn first_difference(expected: &str, found: &str) -> String {
    let at = expected.bytes().zip(found.bytes()).take_while(|(a, b)| a == b).count();
    let excerpt = |s: &str| {
        let start = s.floor_char_boundary(at.saturating_sub(20));
        let end = s.ceil_char_boundary((at + 20).min(s.len()));
        s[start..end].to_string()
    };
    format!(
        "first difference at byte {at}\n  expected: ...{}...\n  found:    ...{}...",
        excerpt(expected),
        excerpt(found)
    )
}

pub fn verify(file: &Path, budget: &BudgetArgs) -> anyhow::Result<Status> {
    let text = fs::read_to_string(file).with_context(|| format!("reading {}", file.display()))?;
    let body = text.strip_suffix('\n').unwrap_or(&text);
    let cert = match Certificate::from_json(body) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("bad certificate: {e}");
            return Ok(Status::Mismatch);
        }
    };
    let canonical = cert.to_json();
    if canonical != body {
        eprintln!(
            "certificate is not in canonical form; {}",
            first_difference(&canonical, body)
        );
        return Ok(Status::Mismatch);
    }
    match verify_certificate(&cert, &budget.budget()?) {
        Ok(c) => {
            let kind = if c.is_witness() { "witness" } else { "exhaustion" };
            println!("ok: {kind} for {} with r={} ({})", c.space, c.r, c.engine);
            Ok(Status::Ok)
        }
        Err(SearchError::Indeterminate { nodes, .. }) => {
            println!("undetermined (budget exhausted after {nodes} nodes)");
            Ok(Status::Indeterminate)
        }
        Err(e) => {
            eprintln!("certificate rejected: {e}");
            Ok(Status::Mismatch)
        }
    }
}

fn read_coloring(file: &Path) -> anyhow::Result<(Space, Coloring)> {
    let text = fs::read_to_string(file).with_context(|| format!("reading {}", file.display()))?;
    if text.trim_start().starts_with('{') {
        let cert = Certificate::from_json(text.trim()).map_err(|e| usage(format!("{}: {e}", file.display())))?;
        let c = cert
            .coloring
            .ok_or_else(|| usage("an exhaustion certificate has no coloring to analyze"))?;
        Ok((cert.space, c))
    } else {
        let c: Coloring = text.parse().map_err(|e| usage(format!("{}: {e}", file.display())))?;
        Ok((Space::Grid(c.dims()), c))
    }
}

fn report_violations<'a>(verdicts: impl Iterator<Item = &'a LemmaVerdict>) -> Status {
    let mut status = Status::Ok;
    for v in verdicts.filter(|v| v.is_violation()) {
        let detail = v.counterexample.as_ref().map_or("", |c| c.detail.as_str());
        eprintln!("FALSIFICATION: {} fails: {detail}", v.id);
        status = Status::Mismatch;
    }
    status
}

pub fn analyze(file: &Path, mode: YMode) -> anyhow::Result<Status> {
    let (space, c) = read_coloring(file)?;
    if let Space::Interval(_) = space {
        let verdicts = interval_lemma_suite(&c);
        println!("{}", serde_json::to_string_pretty(&verdicts)?);
        return Ok(report_violations(verdicts.iter()));
    }
    let report = StructureReport::new(&c, mode);
    println!("{}", report.to_json());
    Ok(report_violations(report.violations()))
}

#[derive(Default)]
struct Tally {
    checked: u64,
    applicable: u64,
    failures: u64,
    first: Option<(Coloring, LemmaVerdict)>,
    complete: bool,
}

pub fn lemma(
    name: &str,
    m: Option<usize>,
    n: usize,
    r: Option<usize>,
    interval: bool,
    mode: YMode,
    budget: &BudgetArgs,
) -> anyhow::Result<Status> {
    let known = if interval {
        INTERVAL_LEMMAS.contains(&name)
    } else {
        lemma_statement(name).is_some()
    };
    if !known {
        let ids = if interval {
            INTERVAL_LEMMAS.to_vec()
        } else {
            lemma_ids()
        };
        return Err(usage(format!("unknown lemma `{name}`; known: {}", ids.join(", "))));
    }
    let space = if interval {
        if n == 0 {
            return Err(usage("--n must be positive"));
        }
        Space::Interval(n)
    } else {
        Space::Grid(GridDims::new(m.unwrap_or(0), n).map_err(|e| usage(e.to_string()))?)
    };
    let index = SolutionIndex::new(space);
    let budget = budget.budget()?;
    let rs: Vec<usize> = match r {
        Some(r) => vec![r],
        None => (1..=space.cell_count().min(64)).collect(),
    };
    let mut t = Tally {
        complete: true,
        ..Tally::default()
    };
    for r in rs {
        let run = enumerate_rainbow_free(&index, r, &budget, |c| {
            let v = if interval {
                interval_lemma_suite(c)
                    .into_iter()
                    .find(|v| v.id == name)
                    .expect("known interval lemma")
            } else {
                evaluate(name, &Analysis::with_mode(c, mode)).expect("known lemma")
            };
            t.checked += 1;
            t.applicable += v.applicable as u64;
            if v.is_violation() {
                t.failures += 1;
                t.first.get_or_insert_with(|| (c.clone(), v));
            }
            ControlFlow::Continue(())
        });
        match run {
            Ok(e) => t.complete &= e.exhaustive,
            Err(e @ SearchError::ColorCount { .. }) => return Err(usage(e.to_string())),
            Err(e) => return Err(e.into()),
        }
        if !t.complete {
            break;
        }
    }
    println!("{} counterexamples / {} colorings checked", t.failures, t.checked);
    println!("hypothesis held for {} of them", t.applicable);
    if let Some((c, v)) = &t.first {
        let detail = v.counterexample.as_ref().map_or("", |x| x.detail.as_str());
        println!("first counterexample (r={}): {detail}", c.r());
        print!("{}", c.render());
    }
    if !t.complete {
        println!("incomplete: budget exhausted");
        return Ok(Status::Indeterminate);
    }
    Ok(if t.failures > 0 { Status::Mismatch } else { Status::Ok })
}
