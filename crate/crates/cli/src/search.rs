//! Parallel, checkpointed gadget search.
//!
//! Classes are processed in chunks on a rayon pool. After each chunk the
//! finished class codes are appended to the resume file and the running
//! best is written to `<resume>.best`, whose `done` count says how many
//! resume lines are covered by it.

use std::fs::{self, OpenOptions};
use std::io::Write as _;
use std::path::{Path, PathBuf};

use arborize_core::gadgets::{search_class, search_classes, GadgetCandidate, SearchError, SearchParams, SimpleClass};
use arborize_core::Multigraph;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::CliError;
use crate::json::{input_from_json, multigraph_to_json, parse_json, rat, read_file, Graph, GraphJson};

const CHUNK: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CheckpointParams {
    t: usize,
    max_vertices: usize,
    max_total_mult: usize,
    target: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    restrict_to: Option<GraphJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Checkpoint {
    params: CheckpointParams,
    /// Resume-file lines covered by this checkpoint.
    done: usize,
    evaluated: usize,
    best: Option<GraphJson>,
}

#[derive(Debug, Clone)]
pub struct SearchRun {
    pub best: Option<GadgetCandidate>,
    pub meets_target: bool,
    pub classes: usize,
    /// Classes skipped because the resume file already listed them.
    pub resumed: usize,
    pub evaluated: usize,
}

fn search_error(e: SearchError) -> CliError {
    match e {
        SearchError::TooLarge { .. } => CliError::refused(e.to_string()),
        SearchError::BadT | SearchError::BadRestriction(_) => CliError::usage(e.to_string()),
    }
}

fn io_error(path: &Path, e: std::io::Error) -> CliError {
    CliError::usage(format!("cannot write {}: {e}", path.display()))
}

fn best_path(resume: &Path) -> PathBuf {
    let mut s = resume.as_os_str().to_owned();
    s.push(".best");
    PathBuf::from(s)
}

fn checkpoint_params(p: &SearchParams) -> CheckpointParams {
    CheckpointParams {
        t: p.t,
        max_vertices: p.max_vertices,
        max_total_mult: p.max_total_mult,
        target: rat(&p.target),
        restrict_to: p.restrict_to.as_ref().map(|g| multigraph_to_json(g, None)),
    }
}

/// Worker count: `ARBORIZE_THREADS` if set, otherwise rayon's default.
pub fn thread_count() -> Result<usize, CliError> {
    match std::env::var("ARBORIZE_THREADS") {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(n),
            _ => Err(CliError::usage(format!("ARBORIZE_THREADS={v:?} is not a positive integer"))),
        },
        Err(_) => Ok(rayon::current_num_threads()),
    }
}

fn merge(best: &mut Option<GadgetCandidate>, c: Option<GadgetCandidate>) {
    if let Some(c) = c {
        if best.as_ref().is_none_or(|b| c.better_than(b)) {
            *best = Some(c);
        }
    }
}

/// Re-derives a checkpointed best graph through the search itself, so a
/// hand-edited checkpoint cannot smuggle in an unverified ratio.
fn resolve(g: &Multigraph, params: &SearchParams) -> Result<GadgetCandidate, CliError> {
    let p = SearchParams { restrict_to: Some(g.clone()), ..params.clone() };
    let classes = search_classes(&p).map_err(search_error)?;
    let mut best = None;
    for c in &classes {
        merge(&mut best, search_class(c, &p).best);
    }
    best.ok_or_else(|| CliError::usage("checkpoint best graph is not an admissible search candidate"))
}

fn load(resume: &Path, params: &SearchParams) -> Result<(Vec<String>, usize, Option<GadgetCandidate>), CliError> {
    let bp = best_path(resume);
    if !bp.exists() {
        return Ok((Vec::new(), 0, None));
    }
    let cp: Checkpoint = parse_json(&read_file(&bp)?, &bp.display().to_string())?;
    if cp.params != checkpoint_params(params) {
        return Err(CliError::usage(format!("{} was written with different search parameters", bp.display())));
    }
    let text = if resume.exists() { read_file(resume)? } else { String::new() };
    let done: Vec<String> = text.lines().map(str::trim).filter(|l| !l.is_empty()).map(String::from).collect();
    if done.len() < cp.done {
        return Err(CliError::usage(format!(
            "{} lists {} classes but its checkpoint covers {}",
            resume.display(),
            done.len(),
            cp.done
        )));
    }
    let best = match &cp.best {
        Some(gj) => match input_from_json(gj)?.graph {
            Graph::Undirected(g) => Some(resolve(&g, params)?),
            Graph::Directed(_) => return Err(CliError::usage("checkpoint best graph must be undirected")),
        },
        None => None,
    };
    Ok((done.into_iter().take(cp.done).collect(), cp.evaluated, best))
}

fn save(
    resume: &Path,
    params: &SearchParams,
    codes: &[String],
    done: usize,
    evaluated: usize,
    best: &Option<GadgetCandidate>,
) -> Result<(), CliError> {
    if !codes.is_empty() {
        let mut file = OpenOptions::new().create(true).append(true).open(resume).map_err(|e| io_error(resume, e))?;
        let mut lines = String::new();
        for c in codes {
            lines.push_str(c);
            lines.push('\n');
        }
        file.write_all(lines.as_bytes()).map_err(|e| io_error(resume, e))?;
        file.sync_data().map_err(|e| io_error(resume, e))?;
    }
    let cp = Checkpoint {
        params: checkpoint_params(params),
        done,
        evaluated,
        best: best.as_ref().map(|b| multigraph_to_json(&b.graph, None)),
    };
    let bp = best_path(resume);
    let tmp = best_path(&best_path(resume));
    let body = serde_json::to_string_pretty(&cp).expect("checkpoint serializes") + "\n";
    fs::write(&tmp, body).map_err(|e| io_error(&tmp, e))?;
    fs::rename(&tmp, &bp).map_err(|e| io_error(&bp, e))
}

pub fn run(params: &SearchParams, resume: Option<&Path>) -> Result<SearchRun, CliError> {
    let classes = search_classes(params).map_err(search_error)?;
    let (done, mut evaluated, mut best) = match resume {
        Some(r) => load(r, params)?,
        None => (Vec::new(), 0, None),
    };
    // a truncated resume file (crash between append and checkpoint) leaves
    // lines beyond `done`; those classes are simply redone
    if let Some(r) = resume {
        save_truncated(r, &done)?;
    }
    let done_set: std::collections::BTreeSet<&str> = done.iter().map(String::as_str).collect();
    let todo: Vec<&SimpleClass> = classes.iter().filter(|c| !done_set.contains(c.code().as_str())).collect();
    let resumed = classes.len() - todo.len();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(thread_count()?)
        .build()
        .map_err(|e| CliError::refused(format!("cannot start worker pool: {e}")))?;
    let mut finished = done.len();
    for chunk in todo.chunks(CHUNK) {
        let outcomes: Vec<_> = pool.install(|| chunk.par_iter().map(|c| search_class(c, params)).collect());
        let mut codes = Vec::with_capacity(chunk.len());
        for (class, out) in chunk.iter().zip(outcomes) {
            evaluated += out.evaluated;
            merge(&mut best, out.best);
            codes.push(class.code());
        }
        finished += codes.len();
        if let Some(r) = resume {
            save(r, params, &codes, finished, evaluated, &best)?;
        }
    }
    let meets_target = best.as_ref().is_some_and(|b| b.ratio >= params.target);
    Ok(SearchRun { best, meets_target, classes: classes.len(), resumed, evaluated })
}

fn save_truncated(resume: &Path, done: &[String]) -> Result<(), CliError> {
    if !resume.exists() {
        return Ok(());
    }
    let mut body = String::new();
    for c in done {
        body.push_str(c);
        body.push('\n');
    }
    if read_file(resume)? != body {
        fs::write(resume, body).map_err(|e| io_error(resume, e))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use arborize_core::gadgets::gadget_search;
    use arborize_core::Rational;

    fn params(v: usize, m: usize) -> SearchParams {
        SearchParams { t: 2, max_vertices: v, max_total_mult: m, target: Rational::new(9.into(), 8.into()), restrict_to: None }
    }

    #[test]
    fn parallel_matches_sequential() {
        let p = params(5, 8);
        let seq = gadget_search(&p).unwrap();
        let par = run(&p, None).unwrap();
        assert_eq!(par.best.map(|b| b.code), seq.best.map(|b| b.code));
        assert_eq!((par.classes, par.evaluated), (seq.classes, seq.evaluated));
    }

    #[test]
    fn resume_skips_finished_classes() {
        let dir = tempfile::tempdir().unwrap();
        let resume = dir.path().join("progress");
        let p = params(5, 8);
        let first = run(&p, Some(&resume)).unwrap();
        assert_eq!(first.resumed, 0);
        let again = run(&p, Some(&resume)).unwrap();
        assert_eq!(again.resumed, again.classes);
        assert_eq!(again.best.map(|b| b.code), first.best.map(|b| b.code));
        assert_eq!(again.evaluated, first.evaluated);
        // a checkpoint from other parameters is rejected
        assert!(run(&params(4, 8), Some(&resume)).is_err());
    }

    #[test]
    fn unchecked_lines_are_redone() {
        let dir = tempfile::tempdir().unwrap();
        let resume = dir.path().join("progress");
        let p = params(4, 8);
        let full = run(&p, Some(&resume)).unwrap();
        fs::write(&resume, fs::read_to_string(&resume).unwrap() + "4:junk\n").unwrap();
        let again = run(&p, Some(&resume)).unwrap();
        assert_eq!(again.resumed, full.classes);
        assert!(!fs::read_to_string(&resume).unwrap().contains("junk"));
    }
}
