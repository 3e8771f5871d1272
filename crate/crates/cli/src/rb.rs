use std::fs;
use std::path::{Path, PathBuf};

use anyhow::Context;
use schur_rainbow::constructions::{closed_form_rb_grid, closed_form_rb_interval};
use schur_rainbow::search::{rb_search_in, verify_certificate};
use schur_rainbow::{
    Certificate, CertificateStore, GridDims, RbOutcome, RbStrategy, SearchBudget, SearchError, SolutionIndex, Space,
};
use serde::Serialize;
use serde_json::value::RawValue;

use crate::{usage, BudgetArgs, CacheArgs, Status};

pub fn rb_grid(
    m: usize,
    n: usize,
    budget: &BudgetArgs,
    cache: &CacheArgs,
    json: bool,
    out: &Path,
) -> anyhow::Result<Status> {
    let dims = GridDims::new(m, n).map_err(|e| usage(e.to_string()))?;
    run(Space::Grid(dims), budget, cache, json, out)
}

pub fn rb_interval(n: usize, budget: &BudgetArgs, cache: &CacheArgs, json: bool, out: &Path) -> anyhow::Result<Status> {
    if n == 0 {
        return Err(usage("--n must be positive"));
    }
    run(Space::Interval(n), budget, cache, json, out)
}

fn closed_form(space: Space) -> (usize, &'static str) {
    match space {
        Space::Grid(d) if d.m() == 1 => (closed_form_rb_grid(d), "convention"),
        Space::Grid(d) => (closed_form_rb_grid(d), "matches m+n+1"),
        Space::Interval(n) if n <= 2 => (closed_form_rb_interval(n), "convention"),
        Space::Interval(n) => (closed_form_rb_interval(n), "matches floor(log2 n)+2"),
    }
}

fn file_name(space: Space, cert: &Certificate) -> String {
    let kind = if cert.is_witness() { "witness" } else { "exhaustion" };
    match space {
        Space::Grid(d) => format!("rb_m{}_n{}_r{}_{kind}.json", d.m(), d.n(), cert.r),
        Space::Interval(n) => format!("rb_interval_n{n}_r{}_{kind}.json", cert.r),
    }
}

struct Answer {
    rb: usize,
    witness: Option<Certificate>,
    exhaustion: Option<Certificate>,
    nodes: u64,
    cached: bool,
}

/// Answers from the cache when it holds a witness at `rb - 1` and an
/// exhaustion at `rb` (or a witness using every cell). Witnesses are always
/// re-checked; exhaustion claims are re-searched unless trusted.
fn from_cache(store: &CertificateStore, space: Space, trust: bool, budget: &SearchBudget) -> Option<Answer> {
    let (lo, hi) = store.bounds(space);
    let lo = lo?;
    let closes = match hi {
        Some(hi) => hi.r == lo.r + 1,
        None => lo.r == space.cell_count(),
    };
    if !closes {
        return None;
    }
    let mut witness = lo.clone();
    if let Err(e) = witness.check_witness() {
        eprintln!("warning: cached witness at r={} rejected: {e}", witness.r);
        return None;
    }
    witness.verified = true;
    let exhaustion = match hi {
        Some(hi) if trust => Some(hi.clone()),
        Some(hi) => match verify_certificate(hi, budget) {
            Ok(c) => Some(c),
            Err(e) => {
                eprintln!("warning: cached exhaustion at r={} not confirmed: {e}", hi.r);
                return None;
            }
        },
        None => None,
    };
    let nodes = witness.nodes + exhaustion.as_ref().map_or(0, |c| c.nodes);
    Some(Answer {
        rb: lo.r + 1,
        witness: Some(witness),
        exhaustion,
        nodes,
        cached: true,
    })
}

#[derive(Serialize)]
struct Report {
    domain: &'static str,
    m: usize,
    n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    rb: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    lower: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    upper: Option<usize>,
    closed_form: usize,
    status: &'static str,
    cached: bool,
    nodes: u64,
    witness: Option<Box<RawValue>>,
    exhaustion: Option<Box<RawValue>>,
    files: Vec<PathBuf>,
}

fn raw(cert: &Option<Certificate>) -> Option<Box<RawValue>> {
    cert.as_ref()
        .map(|c| RawValue::from_string(c.to_json()).expect("certificate JSON is valid"))
}

fn run(space: Space, budget: &BudgetArgs, cache: &CacheArgs, json: bool, out: &Path) -> anyhow::Result<Status> {
    let budget = budget.budget()?;
    let index = SolutionIndex::new(space);
    let mut store = match &cache.cache {
        Some(p) => {
            let s = CertificateStore::open(p).with_context(|| format!("opening cache {}", p.display()))?;
            for w in s.warnings() {
                eprintln!("warning: {w}");
            }
            if s.stale_count() > 0 {
                eprintln!(
                    "note: ignoring {} cache entries from other engine versions",
                    s.stale_count()
                );
            }
            Some(s)
        }
        None => None,
    };
    let (expected, label) = closed_form(space);
    let dims = space.storage_dims();
    let (domain, m) = match space {
        Space::Grid(d) => ("grid", d.m()),
        Space::Interval(_) => ("interval", 1),
    };
    let mut report = Report {
        domain,
        m,
        n: dims.n(),
        rb: None,
        lower: None,
        upper: None,
        closed_form: expected,
        status: "indeterminate",
        cached: false,
        nodes: 0,
        witness: None,
        exhaustion: None,
        files: Vec::new(),
    };

    let cached = store
        .as_ref()
        .and_then(|s| from_cache(s, space, cache.trust_cache, &budget));
    let answer = match cached {
        Some(a) => a,
        None => match rb_search_in(&index, &budget, RbStrategy::Scan) {
            Ok(RbOutcome::Exact(r)) => Answer {
                rb: r.rb,
                witness: r.witness,
                exhaustion: r.exhaustion,
                nodes: r.nodes,
                cached: false,
            },
            Ok(RbOutcome::Bracketed {
                lower, upper, nodes, ..
            }) => {
                report.lower = Some(lower);
                report.upper = Some(upper);
                report.nodes = nodes;
                if json {
                    println!("{}", serde_json::to_string(&report)?);
                } else {
                    println!("rb undetermined: {lower} <= rb <= {upper} (budget exhausted after {nodes} nodes)");
                }
                return Ok(Status::Indeterminate);
            }
            Err(e @ SearchError::ColorCount { .. }) => return Err(usage(e.to_string())),
            Err(e) => return Err(e.into()),
        },
    };

    fs::create_dir_all(out).with_context(|| format!("creating {}", out.display()))?;
    for cert in answer.witness.iter().chain(answer.exhaustion.iter()) {
        let path = out.join(file_name(space, cert));
        fs::write(&path, cert.to_json() + "\n").with_context(|| format!("writing {}", path.display()))?;
        report.files.push(path);
        if let Some(s) = store.as_mut() {
            s.put(cert)
                .with_context(|| format!("appending to {}", s.path().display()))?;
        }
    }

    let matches = answer.rb == expected;
    report.rb = Some(answer.rb);
    report.status = if matches { "match" } else { "mismatch" };
    report.cached = answer.cached;
    report.nodes = answer.nodes;
    report.witness = raw(&answer.witness);
    report.exhaustion = raw(&answer.exhaustion);
    if json {
        println!("{}", serde_json::to_string(&report)?);
    } else {
        let note = if answer.cached { " [cached]" } else { "" };
        if matches {
            println!("rb={} ({label}){note}", answer.rb);
        } else {
            println!("rb={} (MISMATCH: closed form gives {expected}){note}", answer.rb);
        }
        for f in &report.files {
            println!("wrote {}", f.display());
        }
        println!("nodes: {}", answer.nodes);
    }
    if !matches {
        eprintln!(
            "FALSIFICATION: search gives rb({space}) = {} but the closed form is {expected}",
            answer.rb
        );
        return Ok(Status::Mismatch);
    }
    Ok(Status::Ok)
}
